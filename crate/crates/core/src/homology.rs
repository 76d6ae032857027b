//! Exact reduced Betti numbers and the Hodge kernel cross-check.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::complex::Complex;
use crate::constructions::alexander_dual;
use crate::error::{Error, Result};
use crate::operators::{coboundary, full_laplacian};
use crate::spectra::spectrum_of;
use crate::weighted::WeightedComplex;

/// Rank over ℚ of an integer matrix by fraction-free (Bareiss) elimination.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for j in c + 1..cols {
                let v = &a[r][j] * &a[rank][c] - &a[r][c] * &a[rank][j];
                a[r][j] = v / &prev;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

fn integer_matrix(w: &WeightedComplex, k: isize) -> Result<Vec<Vec<BigInt>>> {
    let d = coboundary(w, k)?;
    Ok(d.entries
        .to_dense()
        .into_iter()
        .map(|row| row.into_iter().map(|q| q.to_integer()).collect())
        .collect())
}

/// Reduced Betti numbers b_k for k in −1..=dim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiVector {
    pub b: BTreeMap<isize, usize>,
}

impl BettiVector {
    /// b_k, zero outside −1..=dim.
    pub fn get(&self, k: isize) -> usize {
        self.b.get(&k).copied().unwrap_or(0)
    }
}

/// Ranks of d_{−1}, …, d_{dim−1}; b_k = f_k − rank d_k − rank d_{k−1}.
pub fn betti_exact(x: &Complex) -> Result<BettiVector> {
    if x.is_void() {
        return Err(Error::VoidComplex);
    }
    let w = WeightedComplex::uniform(x.clone());
    let dim = x.dim();
    let mut ranks: BTreeMap<isize, usize> = BTreeMap::new();
    for k in -1..dim {
        ranks.insert(k, bareiss_rank(integer_matrix(&w, k)?));
    }
    let mut b = BTreeMap::new();
    for k in -1..=dim {
        let r_out = ranks.get(&k).copied().unwrap_or(0);
        let r_in = ranks.get(&(k - 1)).copied().unwrap_or(0);
        b.insert(k, x.f(k) - r_out - r_in);
    }
    Ok(BettiVector { b })
}

/// Number of eigenvalues of L_k^ω below `tol`.
pub fn betti_hodge(w: &WeightedComplex, k: isize, tol: f64) -> Result<usize> {
    let spec = spectrum_of(&full_laplacian(w, k)?, w.tol())?;
    Ok(spec.kernel_dim(tol))
}

/// Kernel threshold 1e−9·Σω.
pub fn kernel_tol(w: &WeightedComplex) -> f64 {
    1e-9 * w.total_weight_f64()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlexanderRow {
    pub k: isize,
    pub dual: usize,
    pub primal: usize,
}

/// Rows (k, b_{k−1}(X^∨), b_{n−2−k}(X)) for 0 ≤ k ≤ n−1; a void side counts as zeros.
pub fn alexander_table(x: &Complex) -> Result<Vec<AlexanderRow>> {
    let n = x.n() as isize;
    if n < 2 {
        return Err(Error::InvalidParameter("Alexander duality needs n ≥ 2".into()));
    }
    let dual = alexander_dual(x)?;
    let bx = if x.is_void() { None } else { Some(betti_exact(x)?) };
    let bd = if dual.is_void() { None } else { Some(betti_exact(&dual)?) };
    let at = |b: &Option<BettiVector>, k: isize| b.as_ref().map_or(0, |b| b.get(k));
    Ok((0..n)
        .map(|k| AlexanderRow { k, dual: at(&bd, k - 1), primal: at(&bx, n - 2 - k) })
        .collect())
}

pub fn alexander_check(x: &Complex) -> Result<bool> {
    Ok(alexander_table(x)?.iter().all(|r| r.dual == r.primal))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{simplex, skeleton_simplex, sphere_boundary};
    use crate::verify::random_weighted_complex;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn bv(pairs: &[(isize, usize)]) -> BettiVector {
        BettiVector { b: pairs.iter().copied().collect() }
    }

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(bareiss_rank(big(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(bareiss_rank(big(&[&[0, 1], &[1, 0]])), 2);
        assert_eq!(bareiss_rank(big(&[&[0, 0, 0]])), 0);
        assert_eq!(bareiss_rank(big(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])), 2);
        assert_eq!(bareiss_rank(big(&[&[0, 2, 1], &[0, 1, 3], &[5, 0, 0]])), 3);
        assert_eq!(bareiss_rank(Vec::new()), 0);
    }

    #[test]
    fn betti_examples() {
        assert_eq!(betti_exact(&sphere_boundary(2).unwrap()).unwrap(), bv(&[(-1, 0), (0, 0), (1, 1)]));
        let full = betti_exact(&simplex(4).unwrap()).unwrap();
        assert!(full.b.values().all(|&b| b == 0));
        let empty = Complex::from_generators::<_, Vec<usize>>(Complex::simplex_labels(2), []).unwrap();
        assert_eq!(betti_exact(&empty).unwrap(), bv(&[(-1, 1)]));
        assert!(betti_exact(&Complex::void(vec![]).unwrap()).is_err());
        let two = skeleton_simplex(2, 0).unwrap();
        assert_eq!(betti_exact(&two).unwrap(), bv(&[(-1, 0), (0, 1)]));
    }

    #[test]
    fn hodge_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let tri = WeightedComplex::random_weights(sphere_boundary(2).unwrap(), &mut rng);
        assert_eq!(betti_hodge(&tri, 1, kernel_tol(&tri)).unwrap(), 1);
        let sk = WeightedComplex::random_weights(skeleton_simplex(5, 3).unwrap(), &mut rng);
        for k in -1..3 {
            assert_eq!(betti_hodge(&sk, k, kernel_tol(&sk)).unwrap(), 0);
        }
    }

    #[test]
    fn alexander_examples() {
        let tri = sphere_boundary(2).unwrap();
        let t = alexander_table(&tri).unwrap();
        assert_eq!(t[0], AlexanderRow { k: 0, dual: 1, primal: 1 });
        assert!(alexander_check(&tri).unwrap());
        assert!(alexander_check(&skeleton_simplex(2, 0).unwrap()).unwrap());
        assert!(alexander_check(&simplex(3).unwrap()).unwrap());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn euler_characteristic(seed in any::<u64>(), n in 1usize..8) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let w = random_weighted_complex(n, &mut rng);
            let x = &w.complex;
            let b = betti_exact(x).unwrap();
            let mut chi_f = 0i64;
            let mut chi_b = 0i64;
            for k in -1..=x.dim() {
                let s = if (k + 1) % 2 == 0 { 1 } else { -1 };
                chi_f += s * x.f(k) as i64;
                chi_b += s * b.get(k) as i64;
            }
            prop_assert_eq!(chi_f, chi_b);
        }

        #[test]
        fn duality_on_random_complexes(seed in any::<u64>(), n in 2usize..7) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let w = random_weighted_complex(n, &mut rng);
            prop_assert!(alexander_check(&w.complex).unwrap());
        }
    }
}
