//! Joins, complement-type complexes, Alexander duals and named fixtures.

use std::collections::{HashMap, HashSet};

use num_traits::Zero;

use crate::complex::{binomial_basis, face_of, mask_of, Complex, Face};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::weighted::WeightedComplex;

/// A join together with the source block of every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinedComplex {
    pub result: WeightedComplex,
    pub block_map: Vec<usize>,
}

/// X₁ * X₂: vertices of X₁ then X₂, faces F₁ ∪ F₂.
pub fn join(w1: &WeightedComplex, w2: &WeightedComplex) -> Result<JoinedComplex> {
    let l1 = w1.complex.labels();
    let l2 = w2.complex.labels();
    let seen: HashSet<&str> = l1.iter().map(String::as_str).collect();
    if let Some(dup) = l2.iter().find(|l| seen.contains(l.as_str())) {
        return Err(Error::LabelCollision(dup.clone()));
    }
    let labels: Vec<String> = l1.iter().chain(l2).cloned().collect();
    let mut weights = w1.weights.clone();
    weights.extend(w2.weights.iter().cloned());
    let block_map = (0..l1.len()).map(|_| 0).chain((0..l2.len()).map(|_| 1)).collect();
    let (x1, x2) = (&w1.complex, &w2.complex);
    let complex = if x1.is_void() || x2.is_void() {
        Complex::void(labels)?
    } else {
        let shift = l1.len();
        let f2 = x2.facets();
        let mut gens = Vec::new();
        for a in x1.facets() {
            for b in &f2 {
                let mut g = a.clone();
                g.extend(b.iter().map(|v| v + shift));
                gens.push(g);
            }
        }
        Complex::from_generators(labels, gens)?
    };
    Ok(JoinedComplex { result: WeightedComplex { complex, weights }, block_map })
}

fn prefixed(w: &WeightedComplex, prefix: &str) -> Result<WeightedComplex> {
    let labels: Vec<String> = w.complex.labels().iter().map(|l| format!("{prefix}{l}")).collect();
    let x = &w.complex;
    let complex = if x.is_void() {
        Complex::void(labels)?
    } else {
        Complex::from_generators(labels, x.facets())?
    };
    Ok(WeightedComplex { complex, weights: w.weights.clone() })
}

/// Join after prefixing labels with the block index (`0.`, `1.`), so label
/// sets never collide.
pub fn join_namespaced(w1: &WeightedComplex, w2: &WeightedComplex) -> Result<JoinedComplex> {
    join(&prefixed(w1, "0.")?, &prefixed(w2, "1.")?)
}

/// Join of several complexes, namespaced by position.
pub fn join_all(parts: &[WeightedComplex]) -> Result<JoinedComplex> {
    let mut acc: Option<JoinedComplex> = None;
    for (i, p) in parts.iter().enumerate() {
        let p = prefixed(p, &format!("{i}."))?;
        acc = Some(match acc {
            None => JoinedComplex { block_map: vec![i; p.n()], result: p },
            Some(prev) => {
                let j = join(&prev.result, &p)?;
                let mut map = prev.block_map;
                map.extend(std::iter::repeat_n(i, p.n()));
                JoinedComplex { result: j.result, block_map: map }
            }
        });
    }
    acc.ok_or_else(|| Error::InvalidParameter("empty join".into()))
}

/// X*_k = {τ ⊆ V∖σ : σ ∈ X(k)}.
pub fn star_complex(x: &Complex, k: isize) -> Result<Complex> {
    if x.f(k) == 0 {
        return Err(Error::EmptyGenerators(format!("X({k}) is empty")));
    }
    let full = (1u64 << x.n()) - 1;
    let gens: Vec<Face> = x.faces(k).iter().map(|s| face_of(full & !mask_of(s))).collect();
    Complex::from_generators(x.labels().to_vec(), gens)
}

/// X^c_k: closure of the (k+1)-subsets of V that are not k-faces of X.
pub fn complement_complex(x: &Complex, k: isize) -> Result<Complex> {
    if k < -1 || k >= x.n() as isize {
        return Err(Error::DimensionOutOfRange { k, lo: -1, hi: x.n() as isize - 1 });
    }
    let gens: Vec<Face> = binomial_basis(x.n(), (k + 1) as usize)
        .into_iter()
        .filter(|s| !x.contains(s))
        .collect();
    if gens.is_empty() {
        return Err(Error::EmptyGenerators(format!("every {}-subset of V is a face", k + 1)));
    }
    Complex::from_generators(x.labels().to_vec(), gens)
}

/// X^∨ = {V∖σ : σ ∉ X}; void when X is the full simplex.
pub fn alexander_dual(x: &Complex) -> Result<Complex> {
    let n = x.n();
    if n > 26 {
        return Err(Error::InvalidParameter("Alexander dual enumerates 2^n subsets; n ≤ 26".into()));
    }
    let full = (1u64 << n) - 1;
    let masks: HashSet<u64> =
        (0..=full).filter(|&m| !x.contains_mask(m)).map(|m| full & !m).collect();
    if masks.is_empty() {
        return Complex::void(x.labels().to_vec());
    }
    Ok(Complex::from_masks(x.labels().to_vec(), masks))
}

/// Closure of the k-faces alone (the pure part generated by dimension k).
pub fn pure_part(x: &Complex, k: isize) -> Result<Complex> {
    if x.f(k) == 0 {
        return Complex::void(x.labels().to_vec());
    }
    Complex::from_generators(x.labels().to_vec(), x.faces(k).to_vec())
}

/// (Δ_d^{(d−1)})^{*t} * Δ_{r−1} with its block structure.
#[derive(Clone, Debug)]
pub struct ExtremalFamily {
    pub weighted: WeightedComplex,
    pub d: usize,
    pub t: usize,
    pub r: usize,
    /// The t blocks of d+1 vertices, then the r-vertex simplex block.
    pub blocks: Vec<Vec<usize>>,
}

impl ExtremalFamily {
    pub fn n(&self) -> usize {
        (self.d + 1) * self.t + self.r
    }

    pub fn dim(&self) -> isize {
        (self.d * self.t + self.r) as isize - 1
    }

    /// ϑ_k: ⌊(k+1)/d⌋ for k ≤ dt−2, and t for dt−1 ≤ k ≤ dt+r−1.
    pub fn theta(&self, k: isize) -> usize {
        let dt = (self.d * self.t) as isize;
        if k <= dt - 2 {
            ((k + 1) / self.d as isize) as usize
        } else {
            self.t
        }
    }

    pub fn block_sums(&self) -> Vec<Rational> {
        self.blocks.iter().map(|b| self.weighted.vertex_sum(b)).collect()
    }

    /// min over (t−ϑ_k)-subsets of block sums, plus the weight of the simplex block.
    pub fn closed_form_gap(&self, k: isize) -> Rational {
        let mut sums = self.block_sums();
        let tail = sums.pop().unwrap_or_else(Rational::zero);
        sums.sort();
        let take = self.t - self.theta(k);
        sums.iter().take(take).fold(tail, |acc, s| acc + s)
    }

    /// (d+1)(t − ⌊(k+1)/d⌋) + r, the ω ≡ 1 value for k ≤ dt−1.
    pub fn uniform_gap(&self, k: isize) -> Option<i64> {
        let dt = (self.d * self.t) as isize;
        if k > dt - 1 {
            return None;
        }
        let fl = (k + 1).div_euclid(self.d as isize) as i64;
        Some((self.d as i64 + 1) * (self.t as i64 - fl) + self.r as i64)
    }
}

fn extremal_complex(d: usize, t: usize, r: usize) -> Result<(Complex, Vec<Vec<usize>>)> {
    if d == 0 || t == 0 || r == 0 {
        return Err(Error::InvalidParameter(format!("need d, t, r ≥ 1, got ({d}, {t}, {r})")));
    }
    let n = (d + 1) * t + r;
    if n > crate::complex::MAX_VERTICES {
        return Err(Error::InvalidParameter(format!("{n} vertices is too many")));
    }
    let mut labels = Vec::with_capacity(n);
    let mut blocks = Vec::with_capacity(t + 1);
    for i in 0..t {
        blocks.push((0..=d).map(|j| i * (d + 1) + j).collect::<Vec<_>>());
        labels.extend((0..=d).map(|j| format!("b{i}.{j}")));
    }
    blocks.push(((d + 1) * t..n).collect());
    labels.extend((0..r).map(|j| format!("s.{j}")));
    // facets drop exactly one vertex from every boundary block
    let tail = mask_of(&blocks[t]);
    let mut facets = vec![tail];
    for b in &blocks[..t] {
        let bm = mask_of(b);
        facets = facets
            .into_iter()
            .flat_map(|f| b.iter().map(move |&v| f | (bm ^ (1u64 << v))))
            .collect();
    }
    let gens: Vec<Face> = facets.into_iter().map(face_of).collect();
    Ok((Complex::from_generators(labels, gens)?, blocks))
}

/// Extremal family with weight `block_weights[i]` on every vertex of block i
/// and per-vertex `tail_weights` on the simplex block.
pub fn extremal_family(
    d: usize,
    t: usize,
    r: usize,
    block_weights: &[Rational],
    tail_weights: &[Rational],
) -> Result<ExtremalFamily> {
    if block_weights.len() != t || tail_weights.len() != r {
        return Err(Error::InvalidParameter(format!(
            "expected {t} block weights and {r} simplex weights"
        )));
    }
    let (complex, blocks) = extremal_complex(d, t, r)?;
    let mut weights = Vec::with_capacity(complex.n());
    for c in block_weights {
        weights.extend(std::iter::repeat_n(c.clone(), d + 1));
    }
    weights.extend(tail_weights.iter().cloned());
    Ok(ExtremalFamily { weighted: WeightedComplex::new(complex, weights)?, d, t, r, blocks })
}

/// Extremal family with arbitrary per-vertex weights.
pub fn extremal_family_weighted(d: usize, t: usize, r: usize, weights: Vec<Rational>) -> Result<ExtremalFamily> {
    let (complex, blocks) = extremal_complex(d, t, r)?;
    Ok(ExtremalFamily { weighted: WeightedComplex::new(complex, weights)?, d, t, r, blocks })
}

pub fn extremal_uniform(d: usize, t: usize, r: usize) -> Result<ExtremalFamily> {
    extremal_family(d, t, r, &vec![int(1); t], &vec![int(1); r])
}

/// Whether `x` is the equality-case structure at dimension k: dim X = k,
/// the minimal non-faces are n−k−1 pairwise disjoint (d+1)-sets, every set
/// avoiding all of them is a face, and ω is constant on each of them.
pub fn is_extremal_equality_case(w: &WeightedComplex, k: isize, d: usize) -> Result<bool> {
    let x = &w.complex;
    let n = x.n() as isize;
    if x.dim() != k {
        return Ok(false);
    }
    let t = n - k - 1;
    let r = (d as isize + 1) * (k + 1) - d as isize * n;
    if t < 0 || r < 0 {
        return Ok(false);
    }
    let missing = x.missing_faces()?;
    if missing.len() != t as usize || missing.iter().any(|m| m.len() != d + 1) {
        return Ok(false);
    }
    let mut used = 0u64;
    for m in &missing {
        let mm = mask_of(m);
        if used & mm != 0 {
            return Ok(false);
        }
        used |= mm;
    }
    // with disjoint blocks, X is determined: count faces of the expected join
    let free = (n - t * (d as isize + 1)) as u32;
    let per_block = (1u64 << (d + 1)) - 1;
    let expected = per_block.pow(t as u32) << free;
    if x.num_faces() as u64 != expected {
        return Ok(false);
    }
    Ok(missing.iter().all(|m| m.iter().all(|&v| w.weights[v] == w.weights[m[0]])))
}

/// Δ_{n−1}: the full simplex on n vertices.
pub fn simplex(n: usize) -> Result<Complex> {
    Complex::from_generators(Complex::simplex_labels(n), [(0..n).collect::<Vec<_>>()])
}

/// Δ_{n−1}^{(p)}: the p-skeleton of the simplex on n vertices.
pub fn skeleton_simplex(n: usize, p: isize) -> Result<Complex> {
    if p < -1 {
        return Err(Error::InvalidParameter(format!("skeleton dimension {p} < −1")));
    }
    Ok(simplex(n)?.skeleton(p))
}

/// CP(n): clique complex of K_{2n} minus the perfect matching {2i, 2i+1}.
pub fn cocktail_party(n: usize) -> Result<Complex> {
    if n == 0 {
        return Err(Error::InvalidParameter("cocktail party needs n ≥ 1".into()));
    }
    let labels: Vec<String> = (0..n).flat_map(|i| [format!("a{i}"), format!("b{i}")]).collect();
    // maximal cliques pick one vertex from each matched pair
    let gens: Vec<Face> = (0..1u64 << n)
        .map(|choice| (0..n).map(|i| 2 * i + ((choice >> i) & 1) as usize).collect())
        .collect();
    Complex::from_generators(labels, gens)
}

/// F_n: n triangles sharing one common vertex.
pub fn friendship(n: usize) -> Result<Complex> {
    if n == 0 {
        return Err(Error::InvalidParameter("friendship graph needs n ≥ 1".into()));
    }
    let labels: Vec<String> = std::iter::once("c".to_string())
        .chain((0..n).flat_map(|i| [format!("p{i}"), format!("q{i}")]))
        .collect();
    let gens: Vec<Face> = (0..n).map(|i| vec![0, 2 * i + 1, 2 * i + 2]).collect();
    Complex::from_generators(labels, gens)
}

/// Δ_k^{(k−1)}: boundary of the k-simplex.
pub fn sphere_boundary(k: usize) -> Result<Complex> {
    skeleton_simplex(k + 1, k as isize - 1)
}

/// Parses `simplex:N`, `skeleton:N:P`, `cp:N`, `friendship:N`, `sphere:K`.
pub fn fixture_from_str(name: &str) -> Result<Complex> {
    let parts: Vec<&str> = name.split(':').collect();
    let num = |i: usize| -> Result<isize> {
        parts
            .get(i)
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::InvalidParameter(format!("bad fixture `{name}`")))
    };
    let unsigned = |i: usize| -> Result<usize> {
        usize::try_from(num(i)?).map_err(|_| Error::InvalidParameter(format!("bad fixture `{name}`")))
    };
    match parts[0] {
        "simplex" => simplex(unsigned(1)?),
        "skeleton" => skeleton_simplex(unsigned(1)?, num(2)?),
        "cp" | "cocktail" => cocktail_party(unsigned(1)?),
        "friendship" => friendship(unsigned(1)?),
        "sphere" => sphere_boundary(unsigned(1)?),
        _ => Err(Error::InvalidParameter(format!("unknown fixture `{name}`"))),
    }
}

/// Index of every vertex label in `x`.
pub fn label_positions(x: &Complex) -> HashMap<String, usize> {
    x.labels().iter().enumerate().map(|(i, l)| (l.clone(), i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::binomial;

    fn point(l: &str) -> WeightedComplex {
        WeightedComplex::uniform(Complex::from_facets::<&str>(&[l], &[]).unwrap())
    }

    fn s0(a: &str, b: &str) -> WeightedComplex {
        WeightedComplex::uniform(Complex::from_facets::<&str>(&[a, b], &[]).unwrap())
    }

    #[test]
    fn joins() {
        let e = join(&point("a"), &point("b")).unwrap();
        assert_eq!(e.result.complex.f_vector(), vec![1, 2, 1]);
        assert_eq!(e.block_map, vec![0, 1]);
        let c = join(&s0("a", "c"), &s0("b", "d")).unwrap().result.complex;
        let c4 = Complex::from_facets(
            &["a", "c", "b", "d"],
            &[vec!["a", "b"], vec!["b", "c"], vec!["c", "d"], vec!["a", "d"]],
        )
        .unwrap();
        assert_eq!(c, c4);
        assert_eq!(join(&point("a"), &point("a")).unwrap_err(), Error::LabelCollision("a".into()));
        let ns = join_namespaced(&point("a"), &point("a")).unwrap();
        assert_eq!(ns.result.complex.labels(), &["0.a".to_string(), "1.a".to_string()]);
    }

    #[test]
    fn star_examples() {
        let tri = sphere_boundary(2).unwrap();
        let s = star_complex(&tri, 1).unwrap();
        assert_eq!(s.f_vector(), vec![1, 3]);
        for n in 2..6 {
            let x = skeleton_simplex(n, 1).unwrap();
            assert_eq!(star_complex(&x, 0).unwrap(), skeleton_simplex(n, n as isize - 2).unwrap());
        }
        assert!(star_complex(&tri, 2).is_err());
    }

    #[test]
    fn complement_examples() {
        let c4 = cocktail_party(2).unwrap();
        let c = complement_complex(&c4, 1).unwrap();
        assert_eq!(c.f_vector(), vec![1, 4, 2]);
        assert_eq!(c.faces(1), &[vec![0, 1], vec![2, 3]]);
        assert!(matches!(complement_complex(&skeleton_simplex(4, 1).unwrap(), 1), Err(Error::EmptyGenerators(_))));
    }

    #[test]
    fn dual_examples() {
        let tri = sphere_boundary(2).unwrap();
        let d = alexander_dual(&tri).unwrap();
        assert_eq!(d.f_vector(), vec![1]);
        assert!(alexander_dual(&simplex(3).unwrap()).unwrap().is_void());
        let v = Complex::void(Complex::simplex_labels(2)).unwrap();
        assert_eq!(alexander_dual(&v).unwrap(), simplex(2).unwrap());
    }

    #[test]
    fn extremal_examples() {
        let e = extremal_uniform(1, 2, 1).unwrap();
        assert_eq!(e.n(), 5);
        let x = &e.weighted.complex;
        // cone over the 4-cycle
        assert_eq!(x.f_vector(), vec![1, 5, 8, 4]);
        assert_eq!(x.h().unwrap(), Some(1));
        assert_eq!(e.uniform_gap(0), Some(3));
        assert_eq!(e.closed_form_gap(0), int(3));
        for (d, t, r) in [(2, 2, 1), (3, 1, 2), (2, 3, 2)] {
            let e = extremal_uniform(d, t, r).unwrap();
            assert_eq!(e.weighted.complex.h().unwrap(), Some(d));
            assert_eq!(e.weighted.complex.dim(), e.dim());
        }
        assert!(extremal_uniform(0, 1, 1).is_err());
    }

    #[test]
    fn equality_structure() {
        // t = n−k−1 blocks and r = (d+1)(k+1) − dn free vertices
        let e = extremal_uniform(2, 2, 1).unwrap();
        let k = e.dim();
        assert!(is_extremal_equality_case(&e.weighted, k, 2).unwrap());
        let mut w = e.weighted.clone();
        w.weights[0] = int(2);
        assert!(!is_extremal_equality_case(&w, k, 2).unwrap());
        assert!(!is_extremal_equality_case(&e.weighted, k - 1, 2).unwrap());
    }

    #[test]
    fn fixtures() {
        let cp = cocktail_party(2).unwrap();
        assert_eq!(cp.f_vector(), vec![1, 4, 4]);
        assert!(cp.is_clique_complex());
        assert_eq!(friendship(2).unwrap().f_vector(), vec![1, 5, 6, 2]);
        assert!(friendship(3).unwrap().is_clique_complex());
        for k in 1..5usize {
            let s = sphere_boundary(k).unwrap();
            for j in 0..k as isize {
                assert_eq!(s.f(j) as u128, binomial(k + 1, (j + 1) as usize));
            }
            assert_eq!(s.f(k as isize), 0);
        }
        assert_eq!(fixture_from_str("skeleton:4:1").unwrap(), skeleton_simplex(4, 1).unwrap());
        assert!(fixture_from_str("nope:3").is_err());
    }

    #[test]
    fn skeleton_identity_holds_on_pure_part() {
        // X = triangle boundary plus an isolated vertex, k = 1
        let x = Complex::from_generators(Complex::simplex_labels(4), [vec![0, 1], vec![1, 2], vec![0, 2], vec![3]])
            .unwrap();
        let n = x.n() as isize;
        let k = 1;
        let dual = alexander_dual(&x).unwrap();
        let lhs = star_complex(&complement_complex(&x, k).unwrap(), k).unwrap();
        let rhs = complement_complex(&star_complex(&x, k).unwrap(), n - k - 2).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, pure_part(&dual, n - k - 2).unwrap());
        // the full (n−k−2)-skeleton of the dual also holds {v3}, which no
        // top face of the other two complexes covers
        assert_ne!(lhs, dual.skeleton(n - k - 2));
        assert!(dual.skeleton(n - k - 2).contains(&[3]) && !lhs.contains(&[3]));
    }
}
