//! Complexes paired with positive vertex weights.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::rational::{frac, int, to_f64, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedComplex {
    pub complex: Complex,
    /// ω indexed by vertex position.
    pub weights: Vec<Rational>,
}

impl WeightedComplex {
    pub fn new(complex: Complex, weights: Vec<Rational>) -> Result<WeightedComplex> {
        if weights.len() != complex.n() {
            let missing = complex.labels().get(weights.len()).cloned().unwrap_or_default();
            return Err(Error::MissingWeight(missing));
        }
        for (w, l) in weights.iter().zip(complex.labels()) {
            if *w <= Rational::zero() {
                return Err(Error::NonPositiveWeight(l.clone()));
            }
        }
        Ok(WeightedComplex { complex, weights })
    }

    pub fn uniform(complex: Complex) -> WeightedComplex {
        let weights = vec![Rational::one(); complex.n()];
        WeightedComplex { complex, weights }
    }

    /// Weights p/q with p, q drawn uniformly from 1..=16.
    pub fn random_weights<R: Rng>(complex: Complex, rng: &mut R) -> WeightedComplex {
        let weights = (0..complex.n()).map(|_| random_weight(rng)).collect();
        WeightedComplex { complex, weights }
    }

    pub fn n(&self) -> usize {
        self.complex.n()
    }

    /// ω(σ) = ∏_{v∈σ} ω(v), with ω(∅) = 1.
    pub fn simplex_weight(&self, sigma: &[usize]) -> Rational {
        sigma.iter().fold(Rational::one(), |acc, &v| acc * &self.weights[v])
    }

    /// Σ_{v∈S} ω(v).
    pub fn vertex_sum(&self, vs: &[usize]) -> Rational {
        vs.iter().fold(Rational::zero(), |acc, &v| acc + &self.weights[v])
    }

    /// Σ_{v∈V} ω(v) over the whole vertex list.
    pub fn total_weight(&self) -> Rational {
        self.weights.iter().fold(Rational::zero(), |acc, w| acc + w)
    }

    pub fn total_weight_f64(&self) -> f64 {
        to_f64(&self.total_weight())
    }

    /// Grouping tolerance 1e−8·max(1, Σω).
    pub fn tol(&self) -> f64 {
        1e-8 * self.total_weight_f64().max(1.0)
    }

    /// Same weights on a different complex over the same vertex list.
    pub fn with_complex(&self, complex: Complex) -> WeightedComplex {
        assert_eq!(complex.labels(), self.complex.labels(), "vertex lists differ");
        WeightedComplex { complex, weights: self.weights.clone() }
    }

    pub fn weight_of_label(&self, label: &str) -> Result<&Rational> {
        let i = self.complex.vertex_index(label)?;
        Ok(&self.weights[i])
    }
}

pub fn random_weight<R: Rng>(rng: &mut R) -> Rational {
    let p: i64 = rng.random_range(1..=16);
    let q: i64 = rng.random_range(1..=16);
    frac(p, q)
}

/// Random weights from a ChaCha8 stream seeded with `seed`.
pub fn seeded_weights(complex: Complex, seed: u64) -> WeightedComplex {
    WeightedComplex::random_weights(complex, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn constant_weights(n: usize, c: i64) -> Vec<Rational> {
    vec![int(c); n]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn simplex_weights() {
        let x = Complex::from_facets(&["a", "b"], &[vec!["a", "b"]]).unwrap();
        let w = WeightedComplex::new(x, vec![int(1), int(2)]).unwrap();
        assert_eq!(w.simplex_weight(&[0, 1]), int(2));
        assert_eq!(w.simplex_weight(&[]), int(1));
        assert_eq!(w.total_weight(), int(3));
        let u = WeightedComplex::uniform(w.complex.clone());
        assert_eq!(u.simplex_weight(&[0, 1]), int(1));
    }

    #[test]
    fn rejects_bad_weights() {
        let x = Complex::from_facets::<&str>(&["a", "b"], &[]).unwrap();
        assert_eq!(
            WeightedComplex::new(x.clone(), vec![int(1), int(0)]).unwrap_err(),
            Error::NonPositiveWeight("b".into())
        );
        assert_eq!(WeightedComplex::new(x, vec![int(1)]).unwrap_err(), Error::MissingWeight("b".into()));
    }
}
