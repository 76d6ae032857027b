//! Symmetric eigensolver, spectrum multisets, additive compounds and subset sums.

use itertools::Itertools;
use serde::Serialize;

use crate::complex::{binomial, binomial_basis, mask_of, sign_between};
use crate::error::{Error, Result};
use crate::matrix::DMatrix;
use crate::operators::OperatorMatrix;

const SWEEP_BUDGET: usize = 100;
const SUMSET_GUARD: u128 = 2_000_000;

/// Eigenvalues in weakly decreasing order, plus the grouping tolerance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub tol: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Group {
    pub value: f64,
    pub multiplicity: usize,
}

impl Spectrum {
    pub fn new(mut values: Vec<f64>, tol: f64) -> Spectrum {
        values.sort_by(|a, b| b.total_cmp(a));
        Spectrum { values, tol }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// λ_i^↓, 1-based.
    pub fn largest(&self, i: usize) -> Result<f64> {
        self.values
            .get(i.wrapping_sub(1))
            .copied()
            .ok_or(Error::IndexOutOfRange { index: i, len: self.len() })
    }

    /// λ_i^↑, 1-based.
    pub fn smallest(&self, i: usize) -> Result<f64> {
        if i == 0 || i > self.len() {
            return Err(Error::IndexOutOfRange { index: i, len: self.len() });
        }
        Ok(self.values[self.len() - i])
    }

    pub fn ascending(&self) -> Vec<f64> {
        self.values.iter().rev().copied().collect()
    }

    pub fn multiplicity(&self, lambda: f64) -> usize {
        multiplicity(&self.values, lambda, self.tol)
    }

    /// Clusters of values whose consecutive gaps are within `tol`.
    pub fn grouped(&self) -> Vec<Group> {
        let mut out: Vec<(f64, usize)> = Vec::new();
        let mut last = f64::NAN;
        for &v in &self.values {
            match out.last_mut() {
                Some((sum, m)) if (last - v).abs() <= self.tol => {
                    *sum += v;
                    *m += 1;
                }
                _ => out.push((v, 1)),
            }
            last = v;
        }
        out.into_iter().map(|(s, m)| Group { value: s / m as f64, multiplicity: m }).collect()
    }

    pub fn nonzero(&self) -> Vec<f64> {
        self.values.iter().copied().filter(|x| x.abs() > self.tol).collect()
    }

    /// Values below the tolerance count as kernel.
    pub fn kernel_dim(&self, tol: f64) -> usize {
        self.values.iter().filter(|x| x.abs() < tol).count()
    }
}

pub fn multiplicity(values: &[f64], lambda: f64, tol: f64) -> usize {
    values.iter().filter(|x| (*x - lambda).abs() <= tol).count()
}

/// Eigen-decomposition with eigenvalues descending; `vectors` columns match.
#[derive(Clone, Debug)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Option<DMatrix>,
}

fn jacobi_in_place(a: &mut DMatrix, mut v: Option<&mut DMatrix>) -> Result<()> {
    let n = a.nrows();
    let norm = a.frobenius();
    if norm == 0.0 {
        return Ok(());
    }
    let target = 1e-14 * norm;
    for _ in 0..SWEEP_BUDGET {
        let mut off = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off += a[(i, j)] * a[(i, j)];
                }
            }
        }
        if off.sqrt() < target {
            return Ok(());
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                if let Some(v) = v.as_deref_mut() {
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = c * vkp - s * vkq;
                        v[(k, q)] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }
    Err(Error::NoConvergence(SWEEP_BUDGET))
}

fn check_symmetric(a: &DMatrix) -> Result<()> {
    if !a.is_square() {
        return Err(Error::NotSymmetric(f64::INFINITY));
    }
    let asym = a.asymmetry();
    if asym > 1e-12 * a.max_abs().max(1.0) {
        return Err(Error::NotSymmetric(asym));
    }
    Ok(())
}

/// Cyclic Jacobi; converged once the off-diagonal Frobenius mass drops below
/// 1e−14·‖A‖_F.
pub fn eigen_symmetric(a: &DMatrix, want_vectors: bool) -> Result<Eigen> {
    check_symmetric(a)?;
    let n = a.nrows();
    let mut work = a.clone();
    let mut vecs = want_vectors.then(|| DMatrix::identity(n));
    jacobi_in_place(&mut work, vecs.as_mut())?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| work[(j, j)].total_cmp(&work[(i, i)]));
    let values = order.iter().map(|&i| work[(i, i)]).collect();
    let vectors = vecs.map(|v| v.columns(&order));
    Ok(Eigen { values, vectors })
}

pub fn eigenvalues_symmetric(a: &DMatrix) -> Result<Spectrum> {
    let e = eigen_symmetric(a, false)?;
    let scale = a.max_abs().max(1.0);
    Ok(Spectrum { values: e.values, tol: 1e-8 * scale })
}

/// Connected components of the off-diagonal sparsity pattern.
fn components(a: &DMatrix) -> Vec<Vec<usize>> {
    let n = a.nrows();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut c = x;
        while p[c] != r {
            let next = p[c];
            p[c] = r;
            c = next;
        }
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if a[(i, j)] != 0.0 {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }
    groups
}

/// Spectrum of a symmetric matrix, solved block by block over the connected
/// components of its off-diagonal pattern.
pub fn block_eigenvalues(a: &DMatrix) -> Result<Vec<f64>> {
    check_symmetric(a)?;
    let mut values = Vec::with_capacity(a.nrows());
    for comp in components(a) {
        if comp.len() == 1 {
            values.push(a[(comp[0], comp[0])]);
        } else {
            values.extend(eigen_symmetric(&a.principal(&comp), false)?.values);
        }
    }
    values.sort_by(|x, y| y.total_cmp(x));
    Ok(values)
}

/// Spectrum of a weighted-symmetric operator. Values in (−tol, 0) are clamped
/// to zero, since every operator built here is positive semidefinite or J-like.
pub fn spectrum_of(m: &OperatorMatrix, tol: f64) -> Result<Spectrum> {
    let s = m.symmetrize()?;
    let values = block_eigenvalues(&s)?
        .into_iter()
        .map(|x| if x < 0.0 && x > -tol { 0.0 } else { x })
        .collect();
    Ok(Spectrum::new(values, tol))
}

/// Equality of the nonzero parts (|x| > tol) after sorting, pairwise within tol.
pub fn multiset_equal_nonzero(a: &Spectrum, b: &Spectrum, tol: f64) -> bool {
    nonzero_residual(&a.values, &b.values, tol).is_some_and(|r| r <= tol)
}

/// Largest pairwise gap between the sorted nonzero parts, `None` if their sizes differ.
pub fn nonzero_residual(a: &[f64], b: &[f64], tol: f64) -> Option<f64> {
    let pick = |v: &[f64]| {
        let mut out: Vec<f64> = v.iter().copied().filter(|x| x.abs() > tol).collect();
        out.sort_by(|x, y| y.total_cmp(x));
        out
    };
    sorted_residual(&pick(a), &pick(b))
}

/// Largest pairwise gap after sorting both, `None` if the lengths differ.
pub fn sorted_residual(a: &[f64], b: &[f64]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(|x, y| y.total_cmp(x));
    b.sort_by(|x, y| y.total_cmp(x));
    Some(a.iter().zip(&b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs())))
}

pub fn multiset_union(a: &Spectrum, b: &Spectrum) -> Spectrum {
    let mut v = a.values.clone();
    v.extend_from_slice(&b.values);
    Spectrum::new(v, a.tol.max(b.tol))
}

/// M^{[k]} on k-subsets of the index set: diagonal Σ_{i∈σ} M_ii and
/// (−1)^ε M_ij when σ∖τ = {i}, τ∖σ = {j}.
pub fn additive_compound(m: &DMatrix, k: usize) -> Result<DMatrix> {
    let n = m.nrows();
    if !m.is_square() || k == 0 || k > n {
        return Err(Error::DimensionOutOfRange { k: k as isize, lo: 1, hi: n as isize });
    }
    let basis = binomial_basis(n, k);
    let masks: Vec<u64> = basis.iter().map(|f| mask_of(f)).collect();
    let pos: std::collections::HashMap<u64, usize> =
        masks.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut out = DMatrix::zeros(basis.len(), basis.len());
    for (r, sigma) in basis.iter().enumerate() {
        let sm = masks[r];
        out[(r, r)] = sigma.iter().map(|&i| m[(i, i)]).sum();
        for &i in sigma {
            let shared = sm ^ (1u64 << i);
            for j in (0..n).filter(|&j| sm & (1u64 << j) == 0) {
                let c = pos[&(shared | (1u64 << j))];
                let s = sign_between(shared, 1u64 << i, 1u64 << j) as f64;
                out[(r, c)] = s * m[(i, j)];
            }
        }
    }
    Ok(out)
}

/// All sums of `i` eigenvalues, ascending.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SumSet {
    pub i: usize,
    pub sums: Vec<f64>,
}

impl SumSet {
    /// S_{i,m}^↑, 1-based.
    pub fn s_up(&self, m: usize) -> Result<f64> {
        if m == 0 || m > self.sums.len() {
            return Err(Error::IndexOutOfRange { index: m, len: self.sums.len() });
        }
        Ok(self.sums[m - 1])
    }

    /// S_{i,m}^↓, 1-based.
    pub fn s_down(&self, m: usize) -> Result<f64> {
        if m == 0 || m > self.sums.len() {
            return Err(Error::IndexOutOfRange { index: m, len: self.sums.len() });
        }
        Ok(self.sums[self.sums.len() - m])
    }

    /// Number of sums at most `bound`.
    pub fn count_at_most(&self, bound: f64) -> usize {
        self.sums.partition_point(|&x| x <= bound)
    }
}

pub fn sum_set(s: &[f64], i: usize) -> Result<SumSet> {
    if i == 0 || i > s.len() {
        return Err(Error::IndexOutOfRange { index: i, len: s.len() });
    }
    let count = binomial(s.len(), i);
    if count > SUMSET_GUARD {
        return Err(Error::SumSetTooLarge(count));
    }
    let mut sums: Vec<f64> = s.iter().combinations(i).map(|c| c.into_iter().sum()).collect();
    sums.sort_by(|a, b| a.total_cmp(b));
    Ok(SumSet { i, sums })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Interlacing {
    pub holds: bool,
    /// First 1-based index i at which λ_{n−m+i}(A) ≤ λ_i(B) ≤ λ_i(A) fails.
    pub violation: Option<usize>,
    pub worst: f64,
}

/// Cauchy interlacing for the principal submatrix on `subset`.
pub fn interlacing_check(m: &OperatorMatrix, subset: &[usize], tol: f64) -> Result<Interlacing> {
    let a = spectrum_of(m, tol)?.values;
    let b = spectrum_of(&m.principal(subset), tol)?.values;
    let (n, k) = (a.len(), b.len());
    let mut worst = 0.0f64;
    let mut violation = None;
    for i in 0..k {
        let lo = a[n - k + i] - b[i];
        let hi = b[i] - a[i];
        let excess = lo.max(hi);
        worst = worst.max(excess);
        if excess > tol && violation.is_none() {
            violation = Some(i + 1);
        }
    }
    Ok(Interlacing { holds: violation.is_none(), violation, worst })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Complex;
    use crate::operators::full_laplacian;
    use crate::weighted::WeightedComplex;
    use proptest::prelude::*;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        sorted_residual(a, b).is_some_and(|r| r < tol)
    }

    #[test]
    fn jacobi_examples() {
        let s = eigenvalues_symmetric(&DMatrix::diag(&[1.0, 2.0, 3.0])).unwrap();
        assert_eq!(s.values, vec![3.0, 2.0, 1.0]);
        let s = eigenvalues_symmetric(&DMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]])).unwrap();
        assert!(close(&s.values, &[1.0, -1.0], 1e-14));
        let c4 = Complex::from_facets(
            &["a", "b", "c", "d"],
            &[vec!["a", "b"], vec!["b", "c"], vec!["c", "d"], vec!["a", "d"]],
        )
        .unwrap();
        let l = full_laplacian(&WeightedComplex::uniform(c4), 0).unwrap();
        let s = eigenvalues_symmetric(&l.symmetrize().unwrap()).unwrap();
        assert!(close(&s.values, &[4.0, 4.0, 2.0, 2.0], 1e-12));
        assert!(matches!(
            eigenvalues_symmetric(&DMatrix::from_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]])),
            Err(Error::NotSymmetric(_))
        ));
    }

    #[test]
    fn eigenvectors_diagonalize() {
        let a = DMatrix::from_rows(&[
            vec![4.0, 1.0, 0.5],
            vec![1.0, 3.0, -1.0],
            vec![0.5, -1.0, 2.0],
        ]);
        let e = eigen_symmetric(&a, true).unwrap();
        let v = e.vectors.unwrap();
        let d = v.transpose().mul(&a).mul(&v);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { e.values[i] } else { 0.0 };
                assert!((d[(i, j)] - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn multiset_examples() {
        let a = Spectrum::new(vec![3.0, 0.0], 1e-9);
        let b = Spectrum::new(vec![3.0, 0.0, 0.0], 1e-9);
        assert!(multiset_equal_nonzero(&a, &b, 1e-9));
        let u = multiset_union(&Spectrum::new(vec![2.0, 1.0], 1e-9), &Spectrum::new(vec![1.0], 1e-9));
        assert_eq!(u.values, vec![2.0, 1.0, 1.0]);
        let s = Spectrum::new(vec![4.0, 4.0, 2.0, 2.0], 1e-9);
        assert_eq!(s.multiplicity(4.0), 2);
        assert_eq!(
            s.grouped(),
            vec![Group { value: 4.0, multiplicity: 2 }, Group { value: 2.0, multiplicity: 2 }]
        );
        assert_eq!(s.smallest(1).unwrap(), 2.0);
        assert!(s.largest(5).is_err());
    }

    #[test]
    fn compound_examples() {
        let d = DMatrix::diag(&[1.0, 2.0, 3.0]);
        assert_eq!(additive_compound(&d, 2).unwrap(), DMatrix::diag(&[3.0, 4.0, 5.0]));
        let m = DMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]);
        assert_eq!(additive_compound(&m, 1).unwrap(), m);
        assert!(additive_compound(&m, 3).is_err());
        assert!(additive_compound(&m, 0).is_err());
    }

    #[test]
    fn sumset_examples() {
        let s = sum_set(&[1.0, 2.0, 3.0], 2).unwrap();
        assert_eq!(s.sums, vec![3.0, 4.0, 5.0]);
        assert_eq!(s.s_up(1).unwrap(), 3.0);
        assert_eq!(s.s_down(1).unwrap(), 5.0);
        assert!(sum_set(&[0.0; 4], 3).unwrap().sums.iter().all(|&x| x == 0.0));
        assert!(s.s_up(4).is_err());
        assert!(sum_set(&[1.0], 2).is_err());
        assert!(matches!(sum_set(&vec![0.0; 40], 20), Err(Error::SumSetTooLarge(_))));
    }

    #[test]
    fn block_split_matches_whole() {
        let a = DMatrix::from_rows(&[
            vec![2.0, 0.0, 1.0, 0.0],
            vec![0.0, 5.0, 0.0, 0.0],
            vec![1.0, 0.0, 2.0, 0.0],
            vec![0.0, 0.0, 0.0, -1.0],
        ]);
        let whole = eigen_symmetric(&a, false).unwrap().values;
        assert!(close(&block_eigenvalues(&a).unwrap(), &whole, 1e-13));
    }

    fn arb_sym(max_n: usize) -> impl Strategy<Value = DMatrix> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(-5.0f64..5.0, n * n).prop_map(move |v| {
                let mut m = DMatrix::zeros(n, n);
                for i in 0..n {
                    for j in 0..=i {
                        m[(i, j)] = v[i * n + j];
                        m[(j, i)] = v[i * n + j];
                    }
                }
                m
            })
        })
    }

    proptest! {
        #[test]
        fn compound_spectrum_is_subset_sums(m in arb_sym(5)) {
            let base = eigen_symmetric(&m, false).unwrap().values;
            for k in 1..=m.nrows() {
                let c = additive_compound(&m, k).unwrap();
                let got = eigen_symmetric(&c, false).unwrap().values;
                let want = sum_set(&base, k).unwrap().sums;
                prop_assert!(sorted_residual(&got, &want).unwrap() < 1e-9);
            }
        }

        #[test]
        fn trace_and_min_sum(m in arb_sym(6)) {
            let e = eigen_symmetric(&m, false).unwrap().values;
            let trace: f64 = (0..m.nrows()).map(|i| m[(i, i)]).sum();
            prop_assert!((e.iter().sum::<f64>() - trace).abs() < 1e-10);
            let ss = sum_set(&e, 2.min(e.len())).unwrap();
            let mut asc = e.clone();
            asc.sort_by(|a, b| a.total_cmp(b));
            prop_assert!((ss.s_up(1).unwrap() - asc[..2.min(e.len())].iter().sum::<f64>()).abs() < 1e-12);
        }
    }
}
