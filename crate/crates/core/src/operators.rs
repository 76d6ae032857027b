//! Weighted coboundaries and Laplacians as exact rational matrices.
//!
//! Bases are the faces of one dimension in canonical (lexicographic) order;
//! graph operators use the whole vertex list.

use std::collections::HashMap;

use num_traits::One;

use crate::complex::{binomial_basis, mask_of, sign_between, Complex, Face};
use crate::error::{Error, Result};
use crate::matrix::{DMatrix, QMatrix};
use crate::rational::{to_f64, Rational};
use crate::weighted::WeightedComplex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorMatrix {
    pub entries: QMatrix,
    pub row_basis: Vec<Face>,
    pub col_basis: Vec<Face>,
    pub row_weights: Vec<Rational>,
    pub col_weights: Vec<Rational>,
}

impl OperatorMatrix {
    fn square(entries: QMatrix, basis: Vec<Face>, weights: Vec<Rational>) -> OperatorMatrix {
        OperatorMatrix {
            entries,
            row_basis: basis.clone(),
            col_basis: basis,
            row_weights: weights.clone(),
            col_weights: weights,
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn is_square(&self) -> bool {
        self.entries.nrows() == self.entries.ncols()
    }

    /// Weights of the (row) basis.
    pub fn basis_weights(&self) -> &[Rational] {
        &self.row_weights
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.entries.get(i, j)
    }

    pub fn add(&self, other: &OperatorMatrix) -> OperatorMatrix {
        assert_eq!(self.row_basis, other.row_basis, "bases differ");
        assert_eq!(self.col_basis, other.col_basis, "bases differ");
        OperatorMatrix { entries: self.entries.add(&other.entries), ..self.clone() }
    }

    pub fn mul(&self, other: &OperatorMatrix) -> OperatorMatrix {
        OperatorMatrix {
            entries: self.entries.mul(&other.entries),
            row_basis: self.row_basis.clone(),
            col_basis: other.col_basis.clone(),
            row_weights: self.row_weights.clone(),
            col_weights: other.col_weights.clone(),
        }
    }

    pub fn principal(&self, idx: &[usize]) -> OperatorMatrix {
        let basis: Vec<Face> = idx.iter().map(|&i| self.row_basis[i].clone()).collect();
        let weights = idx.iter().map(|&i| self.row_weights[i].clone()).collect();
        OperatorMatrix::square(self.entries.principal(idx), basis, weights)
    }

    /// Exact test of W M = Mᵀ W.
    pub fn is_weighted_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let w = &self.row_weights;
        (0..self.dim()).all(|i| {
            self.entries.row(i).all(|(j, v)| w[i].clone() * v == &w[j] * self.entries.get(j, i))
        })
    }

    /// W^{1/2} M W^{−1/2} in floating point.
    pub fn symmetrize(&self) -> Result<DMatrix> {
        if !self.is_weighted_symmetric() {
            return Err(Error::NotSymmetrizable);
        }
        let n = self.dim();
        let sw: Vec<f64> = self.row_weights.iter().map(|w| to_f64(w).sqrt()).collect();
        let mut s = DMatrix::zeros(n, n);
        for i in 0..n {
            for (j, v) in self.entries.row(i) {
                s[(i, j)] = to_f64(v) * sw[i] / sw[j];
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let avg = 0.5 * (s[(i, j)] + s[(j, i)]);
                s[(i, j)] = avg;
                s[(j, i)] = avg;
            }
        }
        Ok(s)
    }
}

fn check_k(x: &Complex, k: isize) -> Result<()> {
    let hi = x.n() as isize - 1;
    if k < -1 || k > hi {
        return Err(Error::DimensionOutOfRange { k, lo: -1, hi });
    }
    Ok(())
}

fn face_weights(w: &WeightedComplex, faces: &[Face]) -> Vec<Rational> {
    faces.iter().map(|f| w.simplex_weight(f)).collect()
}

/// ω(σ) = ∏_{v∈σ} ω(v); σ need not be a face.
pub fn simplex_weight(w: &WeightedComplex, sigma: &[usize]) -> Rational {
    w.simplex_weight(sigma)
}

fn coboundary_any(w: &WeightedComplex, k: isize) -> OperatorMatrix {
    let x = &w.complex;
    let rows = x.faces(k + 1);
    let cols = x.faces(k);
    let mut m = QMatrix::zeros(rows.len(), cols.len());
    let one = Rational::one();
    for (i, sigma) in rows.iter().enumerate() {
        let sm = mask_of(sigma);
        for (j, &v) in sigma.iter().enumerate() {
            let col = x.position_mask(sm ^ (1u64 << v)).expect("closed under subsets");
            m.set(i, col, if j % 2 == 0 { one.clone() } else { -one.clone() });
        }
    }
    OperatorMatrix {
        entries: m,
        row_basis: rows.to_vec(),
        col_basis: cols.to_vec(),
        row_weights: face_weights(w, rows),
        col_weights: face_weights(w, cols),
    }
}

/// d_k : C^k → C^{k+1}, an f_{k+1} × f_k matrix, for −1 ≤ k ≤ dim−1.
pub fn coboundary(w: &WeightedComplex, k: isize) -> Result<OperatorMatrix> {
    let dim = w.complex.dim();
    if k < -1 || k > dim - 1 {
        return Err(Error::DimensionOutOfRange { k, lo: -1, hi: dim - 1 });
    }
    Ok(coboundary_any(w, k))
}

fn adjoint_any(w: &WeightedComplex, k: isize) -> OperatorMatrix {
    let d = coboundary_any(w, k);
    let inv: Vec<Rational> = d.col_weights.iter().map(|x| x.recip()).collect();
    let entries = d.entries.transpose().scale_cols(&d.row_weights).scale_rows(&inv);
    OperatorMatrix {
        entries,
        row_basis: d.col_basis,
        col_basis: d.row_basis,
        row_weights: d.col_weights,
        col_weights: d.row_weights,
    }
}

/// d_k^{ω*} = W_k^{−1} d_kᵀ W_{k+1}.
pub fn adjoint_coboundary(w: &WeightedComplex, k: isize) -> Result<OperatorMatrix> {
    coboundary(w, k)?;
    Ok(adjoint_any(w, k))
}

/// d_{k−1} d_{k−1}^{ω*} assembled as a product (reference construction).
pub fn down_by_product(w: &WeightedComplex, k: isize) -> Result<OperatorMatrix> {
    check_k(&w.complex, k)?;
    let faces = w.complex.faces(k).to_vec();
    if k == -1 {
        let n = faces.len();
        return Ok(OperatorMatrix::square(QMatrix::zeros(n, n), faces.clone(), face_weights(w, &faces)));
    }
    Ok(coboundary_any(w, k - 1).mul(&adjoint_any(w, k - 1)))
}

/// d_k^{ω*} d_k assembled as a product (reference construction).
pub fn up_by_product(w: &WeightedComplex, k: isize) -> Result<OperatorMatrix> {
    check_k(&w.complex, k)?;
    Ok(adjoint_any(w, k).mul(&coboundary_any(w, k)))
}

/// Down Laplacian: diagonal Σ_{v∈σ}ω(v), off-diagonal (−1)^ε ω(τ∖σ) for |σ∩τ| = k.
pub fn down_laplacian(w: &WeightedComplex, k: isize) -> Result<OperatorMatrix> {
    check_k(&w.complex, k)?;
    let x = &w.complex;
    let faces = x.faces(k);
    let n = x.n();
    let mut m = QMatrix::zeros(faces.len(), faces.len());
    for (i, sigma) in faces.iter().enumerate() {
        let sm = mask_of(sigma);
        m.set(i, i, w.vertex_sum(sigma));
        for &u in sigma {
            let eta = sm ^ (1u64 << u);
            for v in (0..n).filter(|&v| sm & (1u64 << v) == 0) {
                if let Some(j) = x.position_mask(eta | (1u64 << v)) {
                    let s = sign_between(eta, 1u64 << u, 1u64 << v);
                    let val = &w.weights[v];
                    m.set(i, j, if s > 0 { val.clone() } else { -val.clone() });
                }
            }
        }
    }
    Ok(OperatorMatrix::square(m, faces.to_vec(), face_weights(w, faces)))
}

fn up_entries(
    w: &WeightedComplex,
    k: isize,
    basis_pos: &dyn Fn(u64) -> Option<usize>,
    size: usize,
) -> QMatrix {
    let x = &w.complex;
    let mut m = QMatrix::zeros(size, size);
    for sigma in x.faces(k) {
        let sm = mask_of(sigma);
        let i = basis_pos(sm).expect("face in basis");
        let lk = x.link_unchecked(sigma);
        m.set(i, i, w.vertex_sum(&lk));
        for &u in &lk {
            for &v in sigma {
                let shared = sm ^ (1u64 << v);
                let j = basis_pos(shared | (1u64 << u)).expect("face in basis");
                let s = sign_between(shared, 1u64 << v, 1u64 << u);
                let val = &w.weights[u];
                m.set(i, j, if s > 0 { -val.clone() } else { val.clone() });
            }
        }
    }
    m
}

/// Up Laplacian on X(k): diagonal Σ_{u∈lk σ}ω(u), off-diagonal −(−1)^ε ω(τ∖σ) when σ∪τ ∈ X.
pub fn up_laplacian_restricted(w: &WeightedComplex, k: isize) -> Result<OperatorMatrix> {
    check_k(&w.complex, k)?;
    let x = &w.complex;
    let faces = x.faces(k);
    let m = up_entries(w, k, &|mask| x.position_mask(mask), faces.len());
    Ok(OperatorMatrix::square(m, faces.to_vec(), face_weights(w, faces)))
}

/// Up Laplacian on the full binomial basis of (k+1)-subsets of V.
pub fn up_laplacian_extended(w: &WeightedComplex, k: isize) -> Result<OperatorMatrix> {
    check_k(&w.complex, k)?;
    let basis = binomial_basis(w.n(), (k + 1) as usize);
    let pos: HashMap<u64, usize> = basis.iter().enumerate().map(|(i, f)| (mask_of(f), i)).collect();
    let m = up_entries(w, k, &|mask| pos.get(&mask).copied(), basis.len());
    let weights = face_weights(w, &basis);
    Ok(OperatorMatrix::square(m, basis, weights))
}

/// Full Laplacian: diagonal Σ_{lk σ}ω + Σ_σ ω, off-diagonal (−1)^ε ω(τ∖σ) when
/// |σ∩τ| = k and σ∪τ ∉ X.
pub fn full_laplacian(w: &WeightedComplex, k: isize) -> Result<OperatorMatrix> {
    check_k(&w.complex, k)?;
    let x = &w.complex;
    let faces = x.faces(k);
    let n = x.n();
    let mut m = QMatrix::zeros(faces.len(), faces.len());
    for (i, sigma) in faces.iter().enumerate() {
        let sm = mask_of(sigma);
        let lk = x.link_unchecked(sigma);
        m.set(i, i, w.vertex_sum(&lk) + w.vertex_sum(sigma));
        for &u in sigma {
            let eta = sm ^ (1u64 << u);
            for v in (0..n).filter(|&v| sm & (1u64 << v) == 0) {
                if x.contains_mask(sm | (1u64 << v)) {
                    continue;
                }
                if let Some(j) = x.position_mask(eta | (1u64 << v)) {
                    let s = sign_between(eta, 1u64 << u, 1u64 << v);
                    let val = &w.weights[v];
                    m.set(i, j, if s > 0 { val.clone() } else { -val.clone() });
                }
            }
        }
    }
    Ok(OperatorMatrix::square(m, faces.to_vec(), face_weights(w, faces)))
}

fn vertex_basis(w: &WeightedComplex) -> (Vec<Face>, Vec<Rational>) {
    ((0..w.n()).map(|v| vec![v]).collect(), w.weights.clone())
}

/// L^ω(G_X) on all of V: diagonal Σ_{N(u)}ω, off-diagonal −ω(v) for edges.
pub fn graph_laplacian(w: &WeightedComplex) -> OperatorMatrix {
    let n = w.n();
    let mut m = QMatrix::zeros(n, n);
    for u in 0..n {
        let nb = w.complex.neighbours(u);
        m.set(u, u, w.vertex_sum(&nb));
        for v in nb {
            m.set(u, v, -w.weights[v].clone());
        }
    }
    let (basis, weights) = vertex_basis(w);
    OperatorMatrix::square(m, basis, weights)
}

/// J^ω with every entry (u, v) equal to ω(v).
pub fn j_matrix(w: &WeightedComplex) -> OperatorMatrix {
    let n = w.n();
    let mut m = QMatrix::zeros(n, n);
    for u in 0..n {
        for v in 0..n {
            m.set(u, v, w.weights[v].clone());
        }
    }
    let (basis, weights) = vertex_basis(w);
    OperatorMatrix::square(m, basis, weights)
}

/// L^ω(G_X) + J^ω.
pub fn graph_plus_j(w: &WeightedComplex) -> OperatorMatrix {
    graph_laplacian(w).add(&j_matrix(w))
}

/// Gershgorin radius bound: max over rows of diagonal plus off-diagonal magnitudes.
pub fn gershgorin_upper(m: &OperatorMatrix) -> f64 {
    (0..m.dim())
        .map(|i| {
            m.entries.row(i).map(|(j, v)| if i == j { to_f64(v) } else { to_f64(v).abs() }).sum::<f64>()
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use num_traits::Zero;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn edge(w0: i64, w1: i64) -> WeightedComplex {
        let x = Complex::from_facets(&["a", "b"], &[vec!["a", "b"]]).unwrap();
        WeightedComplex::new(x, vec![int(w0), int(w1)]).unwrap()
    }

    fn tri() -> WeightedComplex {
        let x = Complex::from_facets(&["a", "b", "c"], &[vec!["a", "b"], vec!["b", "c"], vec!["a", "c"]])
            .unwrap();
        WeightedComplex::uniform(x)
    }

    fn c4() -> WeightedComplex {
        let x = Complex::from_facets(
            &["a", "b", "c", "d"],
            &[vec!["a", "b"], vec!["b", "c"], vec!["c", "d"], vec!["a", "d"]],
        )
        .unwrap();
        WeightedComplex::uniform(x)
    }

    fn dense(m: &OperatorMatrix) -> Vec<Vec<Rational>> {
        m.entries.to_dense()
    }

    #[test]
    fn coboundary_examples() {
        let t = tri();
        let d = coboundary(&t, -1).unwrap();
        assert_eq!(dense(&d), vec![vec![int(1)], vec![int(1)], vec![int(1)]]);
        let d0 = coboundary(&t, 0).unwrap();
        // edge {a,b}: −1 at a, +1 at b
        assert_eq!(dense(&d0)[0], vec![int(-1), int(1), int(0)]);
        let full = WeightedComplex::uniform(
            Complex::from_generators(Complex::simplex_labels(3), [[0, 1, 2]]).unwrap(),
        );
        let d0 = coboundary(&full, 0).unwrap();
        let d1 = coboundary(&full, 1).unwrap();
        assert!(d1.entries.mul(&d0.entries).is_zero());
        assert!(coboundary(&t, 1).is_err());
    }

    #[test]
    fn adjoint_examples() {
        let e = edge(1, 2);
        let a = adjoint_coboundary(&e, -1).unwrap();
        assert_eq!(dense(&a), vec![vec![int(1), int(2)]]);
        let t = tri();
        let d = coboundary(&t, 0).unwrap();
        assert_eq!(adjoint_coboundary(&t, 0).unwrap().entries, d.entries.transpose());
    }

    #[test]
    fn down_examples() {
        let e = edge(1, 2);
        let d0 = down_laplacian(&e, 0).unwrap();
        assert_eq!(dense(&d0), vec![vec![int(1), int(2)], vec![int(1), int(2)]]);
        assert_eq!(dense(&down_laplacian(&e, 1).unwrap()), vec![vec![int(3)]]);
        assert_eq!(dense(&down_laplacian(&e, -1).unwrap()), vec![vec![int(0)]]);
    }

    #[test]
    fn up_examples() {
        let e = edge(1, 2);
        assert_eq!(dense(&up_laplacian_restricted(&e, -1).unwrap()), vec![vec![int(3)]]);
        let t = tri();
        let u = up_laplacian_restricted(&t, 0).unwrap();
        for i in 0..3 {
            assert_eq!(u.get(i, i), int(2));
            for j in 0..3 {
                if i != j {
                    assert_eq!(u.get(i, j), int(-1));
                }
            }
        }
        assert!(up_laplacian_restricted(&t, 1).unwrap().entries.is_zero());
        let ext = up_laplacian_extended(&c4(), 1).unwrap();
        assert_eq!(ext.dim(), 6);
        let diag_rows = [vec![0, 2], vec![1, 3]];
        for f in &diag_rows {
            let i = ext.row_basis.iter().position(|b| b == f).unwrap();
            assert_eq!(ext.entries.row(i).count(), 0);
        }
    }

    #[test]
    fn full_examples() {
        let e = edge(1, 2);
        assert_eq!(dense(&full_laplacian(&e, 0).unwrap()), vec![vec![int(3), int(0)], vec![int(0), int(3)]]);
        let l = full_laplacian(&c4(), 0).unwrap();
        let expect = |i: usize, j: usize| match (i, j) {
            _ if i == j => int(3),
            (0, 2) | (2, 0) | (1, 3) | (3, 1) => int(1),
            _ => int(0),
        };
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(l.get(i, j), expect(i, j));
            }
        }
        let p = WeightedComplex::new(Complex::from_facets::<&str>(&["a"], &[]).unwrap(), vec![frac(5, 3)])
            .unwrap();
        assert_eq!(dense(&full_laplacian(&p, 0).unwrap()), vec![vec![frac(5, 3)]]);
    }

    #[test]
    fn symmetrize_examples() {
        let e = edge(1, 2);
        let s = down_laplacian(&e, 0).unwrap().symmetrize().unwrap();
        let r2 = 2f64.sqrt();
        assert!((s[(0, 1)] - r2).abs() < 1e-15 && (s[(1, 0)] - r2).abs() < 1e-15);
        assert!((s[(0, 0)] - 1.0).abs() < 1e-15 && (s[(1, 1)] - 2.0).abs() < 1e-15);
        let l = full_laplacian(&c4(), 0).unwrap();
        assert_eq!(l.symmetrize().unwrap(), l.entries.to_f64());
        let mut bad = l.clone();
        bad.entries.set(0, 1, int(7));
        assert_eq!(bad.symmetrize().unwrap_err(), Error::NotSymmetrizable);
    }

    #[test]
    fn graph_operators() {
        let k4 = WeightedComplex::new(
            Complex::from_generators(Complex::simplex_labels(4), [[0, 1, 2, 3]]).unwrap().skeleton(1),
            vec![int(1), frac(1, 2), int(3), frac(7, 4)],
        )
        .unwrap();
        let s = graph_plus_j(&k4);
        let total = k4.total_weight();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(s.get(i, j), if i == j { total.clone() } else { int(0) });
            }
        }
    }

    #[test]
    fn independence_identity() {
        let w = WeightedComplex::new(
            Complex::from_facets(&["a", "b", "c", "d"], &[vec!["a", "b"], vec!["b", "c"]]).unwrap(),
            vec![int(2), frac(1, 3), int(1), frac(5, 2)],
        )
        .unwrap();
        let n = w.n();
        let comp_edges: Vec<Face> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| vec![a, b]))
            .filter(|e| !w.complex.contains(e))
            .chain((0..n).map(|v| vec![v]))
            .collect();
        let wc = w.with_complex(Complex::from_generators(w.complex.labels().to_vec(), comp_edges).unwrap());
        let lhs = graph_plus_j(&wc).entries;
        let total = w.total_weight();
        let g = graph_laplacian(&w).entries;
        for i in 0..n {
            for j in 0..n {
                let id = if i == j { total.clone() } else { int(0) };
                assert_eq!(lhs.get(i, j), id - g.get(i, j));
            }
        }
    }

    pub(crate) fn arb_weighted(max_n: usize) -> impl Strategy<Value = WeightedComplex> {
        (1..=max_n, any::<u64>()).prop_map(|(n, seed)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            crate::verify::random_weighted_complex(n, &mut rng)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn explicit_forms_match_products(w in arb_weighted(6)) {
            let x = &w.complex;
            for k in -1..=x.dim() {
                let down = down_laplacian(&w, k).unwrap();
                let up = up_laplacian_restricted(&w, k).unwrap();
                let full = full_laplacian(&w, k).unwrap();
                prop_assert_eq!(&down, &down_by_product(&w, k).unwrap());
                prop_assert_eq!(&up, &up_by_product(&w, k).unwrap());
                prop_assert_eq!(&full.entries, &down.entries.add(&up.entries));
                prop_assert!(down.is_weighted_symmetric());
                prop_assert!(up.is_weighted_symmetric());
                prop_assert!(full.is_weighted_symmetric());
                prop_assert!(up.entries.mul(&down.entries).is_zero());
                prop_assert!(down.entries.mul(&up.entries).is_zero());
                let ext = up_laplacian_extended(&w, k).unwrap();
                let idx: Vec<usize> = x.faces(k).iter()
                    .map(|f| ext.row_basis.iter().position(|b| b == f).unwrap()).collect();
                prop_assert_eq!(&ext.entries.principal(&idx), &up.entries);
                prop_assert_eq!(ext.entries.nnz(), up.entries.nnz());
            }
            for k in -1..x.dim() - 1 {
                let d0 = coboundary(&w, k).unwrap();
                let d1 = coboundary(&w, k + 1).unwrap();
                prop_assert!(d1.entries.mul(&d0.entries).is_zero());
            }
        }

        #[test]
        fn adjoint_relation(w in arb_weighted(5), seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for k in -1..w.complex.dim() {
                let d = coboundary(&w, k).unwrap();
                let a = adjoint_coboundary(&w, k).unwrap();
                let x: Vec<Rational> = (0..d.entries.ncols()).map(|_| crate::weighted::random_weight(&mut rng)).collect();
                let y: Vec<Rational> = (0..d.entries.nrows()).map(|_| crate::weighted::random_weight(&mut rng)).collect();
                let dx = d.entries.mul_vec(&x);
                let ay = a.entries.mul_vec(&y);
                let lhs = dx.iter().zip(&y).zip(&d.row_weights).fold(Rational::zero(), |s, ((a, b), c)| s + a * b * c);
                let rhs = x.iter().zip(&ay).zip(&d.col_weights).fold(Rational::zero(), |s, ((a, b), c)| s + a * b * c);
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
