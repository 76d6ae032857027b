//! Cross-checks against independent computations: nalgebra for eigenvalues and
//! ranks, hand enumeration for small complexes.

use nalgebra::DMatrix as NMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vwlap_core::constructions::{alexander_dual, cocktail_party, extremal_uniform, simplex, star_complex};
use vwlap_core::homology::{bareiss_rank, betti_exact};
use vwlap_core::operators::{
    coboundary, down_laplacian, full_laplacian, graph_plus_j, up_laplacian_extended, up_laplacian_restricted,
};
use vwlap_core::rational::{int, to_f64};
use vwlap_core::spectra::{eigenvalues_symmetric, spectrum_of};
use vwlap_core::verify::random_weighted_complex;
use vwlap_core::{Complex, DMatrix, WeightedComplex};

fn oracle_eigs(m: &DMatrix) -> Vec<f64> {
    let n = m.nrows();
    let nm = NMatrix::from_fn(n, n, |i, j| m[(i, j)]);
    let mut v: Vec<f64> = nm.symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

fn c4() -> Complex {
    Complex::from_facets(&["a", "b", "c", "d"], &[vec!["a", "b"], vec!["b", "c"], vec!["c", "d"], vec!["a", "d"]])
        .unwrap()
}

#[test]
fn jacobi_agrees_with_nalgebra_on_random_laplacians() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..60 {
        let w = random_weighted_complex(7, &mut rng);
        for k in -1..=w.complex.dim() {
            for m in [full_laplacian(&w, k).unwrap(), up_laplacian_restricted(&w, k).unwrap(), down_laplacian(&w, k).unwrap()] {
                let sym = m.symmetrize().unwrap();
                let ours = eigenvalues_symmetric(&sym).unwrap().values;
                let theirs = oracle_eigs(&sym);
                for (a, b) in ours.iter().zip(&theirs) {
                    assert!((a - b).abs() < 1e-9 * w.total_weight_f64().max(1.0), "{ours:?} vs {theirs:?}");
                }
            }
        }
    }
}

#[test]
fn bareiss_agrees_with_nalgebra_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..60 {
        let x = random_weighted_complex(7, &mut rng).complex;
        let w = WeightedComplex::uniform(x.clone());
        for k in -1..x.dim() {
            let d = coboundary(&w, k).unwrap().entries.to_dense();
            let (r, c) = (d.len(), d.first().map_or(0, Vec::len));
            let nm = NMatrix::from_fn(r, c, |i, j| to_f64(&d[i][j]));
            let expected = if r == 0 || c == 0 { 0 } else { nm.rank(1e-9) };
            let big = d.iter().map(|row| row.iter().map(|q| q.to_integer()).collect()).collect();
            assert_eq!(bareiss_rank(big), expected);
        }
    }
}

#[test]
fn four_cycle_values() {
    let w = WeightedComplex::uniform(c4());
    let l = full_laplacian(&w, 0).unwrap();
    // 3I plus the adjacency of the two diagonals
    for i in 0..4 {
        assert_eq!(l.get(i, i), int(3));
    }
    assert_eq!(l.get(0, 2), int(1));
    assert_eq!(l.get(0, 1), int(0));
    let s = spectrum_of(&l, w.tol()).unwrap();
    assert_eq!(s.grouped().iter().map(|g| g.multiplicity).collect::<Vec<_>>(), vec![2, 2]);
    assert!((s.values[0] - 4.0).abs() < 1e-12 && (s.values[3] - 2.0).abs() < 1e-12);
    assert_eq!(c4().missing_faces().unwrap(), vec![vec![0, 2], vec![1, 3]]);
    let cp = cocktail_party(2).unwrap();
    assert_eq!(cp.f_vector(), vec![1, 4, 4]);
    assert_eq!(cp.missing_faces().unwrap().len(), 2);
}

#[test]
fn rank_one_extended_up_at_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let w = WeightedComplex::random_weights(simplex(4).unwrap(), &mut rng);
    let m = up_laplacian_extended(&w, -1).unwrap();
    assert_eq!(m.dim(), 1);
    let m = up_laplacian_extended(&w, 0).unwrap();
    let s = spectrum_of(&m, w.tol()).unwrap();
    let total = w.total_weight_f64();
    assert_eq!(s.multiplicity(total), 3);
    assert_eq!(s.multiplicity(0.0), 1);
    let s = spectrum_of(&graph_plus_j(&w), w.tol()).unwrap();
    assert_eq!(s.multiplicity(total), 4);
}

#[test]
fn small_constructions_by_hand() {
    let tri = Complex::from_facets(&["a", "b", "c"], &[vec!["a", "b"], vec!["b", "c"], vec!["a", "c"]]).unwrap();
    let star = star_complex(&tri, 1).unwrap();
    assert_eq!(star.f_vector(), vec![1, 3]);
    let dual = alexander_dual(&tri).unwrap();
    assert_eq!(dual.f_vector(), vec![1]);
    assert_eq!(betti_exact(&dual).unwrap().get(-1), 1);
    let cone = extremal_uniform(1, 2, 1).unwrap().weighted.complex;
    assert_eq!(cone.f_vector(), vec![1, 5, 8, 4]);
    assert_eq!(cone.h().unwrap(), Some(1));
    let two = Complex::from_facets(&["a", "b"], &[]).unwrap();
    assert_eq!(betti_exact(&two).unwrap().get(0), 1);
    let d2 = alexander_dual(&two).unwrap();
    assert_eq!(betti_exact(&d2).unwrap().get(-1), 1);
}
