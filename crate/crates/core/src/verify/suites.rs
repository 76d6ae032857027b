use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{random_weighted_complex, seeded_instance, Check};
use crate::bounds::{
    cohom_dim_upper, eig_lower_sumset_all, gap_bound_link, gap_bound_weak, gap_condition, link_weight_sides,
    max_eigen_bounds, subcomplex_condition, subcomplex_shift,
};
use crate::complex::{binomial_basis, binomial_i, Complex};
use crate::constructions::{
    alexander_dual, complement_complex, extremal_family, extremal_uniform, join_namespaced, pure_part,
    simplex, skeleton_simplex, star_complex,
};
use crate::error::{Error, Result};
use crate::homology::{alexander_check, betti_exact, betti_hodge, kernel_tol};
use crate::matrix::DMatrix;
use crate::operators::{
    down_by_product, down_laplacian, full_laplacian, gershgorin_upper, up_by_product, up_laplacian_extended,
    up_laplacian_restricted, OperatorMatrix,
};
use crate::rational::{to_f64, Rational};
use crate::spectra::{
    additive_compound, eigen_symmetric, eigenvalues_symmetric, interlacing_check, multiset_union,
    nonzero_residual, sorted_residual, spectrum_of, sum_set, Spectrum,
};
use crate::weighted::{random_weight, WeightedComplex};

fn spectrum_at(w: &WeightedComplex, m: Result<OperatorMatrix>) -> Result<Spectrum> {
    spectrum_of(&m?, w.tol())
}

pub(super) fn union(seed: u64, max_n: usize) -> Result<Check> {
    let (_, w) = seeded_instance(seed, max_n);
    let tol = w.tol();
    let mut c = Check::new("union", seed, &w, tol);
    for k in -1..=w.complex.dim() {
        let full = spectrum_at(&w, full_laplacian(&w, k))?;
        let u = multiset_union(&spectrum_at(&w, up_laplacian_restricted(&w, k))?, &spectrum_at(&w, down_laplacian(&w, k))?);
        c.residual_opt(k, nonzero_residual(&full.values, &u.values, tol), || {
            format!("full {:?} vs up∪down {:?}", full.values, u.values)
        });
    }
    Ok(c)
}

pub(super) fn up_down(seed: u64, max_n: usize) -> Result<Check> {
    let (_, w) = seeded_instance(seed, max_n);
    let tol = w.tol();
    let mut c = Check::new("up-down", seed, &w, tol);
    for k in 0..=w.complex.dim() {
        let down = spectrum_at(&w, down_laplacian(&w, k))?;
        let up = spectrum_at(&w, up_laplacian_restricted(&w, k - 1))?;
        c.residual_opt(k, nonzero_residual(&down.values, &up.values, tol), || {
            format!("down {:?} vs up(k-1) {:?}", down.values, up.values)
        });
    }
    Ok(c)
}

pub(super) fn explicit_forms(seed: u64, max_n: usize) -> Result<Check> {
    let (_, w) = seeded_instance(seed, max_n);
    let mut c = Check::new("explicit-forms", seed, &w, 0.0);
    let x = &w.complex;
    for k in -1..=x.dim() {
        let down = down_laplacian(&w, k)?;
        let up = up_laplacian_restricted(&w, k)?;
        let full = full_laplacian(&w, k)?;
        c.require(k, down == down_by_product(&w, k)?, || "down entries differ from the product".into());
        c.require(k, up == up_by_product(&w, k)?, || "up entries differ from the product".into());
        c.require(k, full.entries.sub(&down.entries.add(&up.entries)).is_zero(), || "full ≠ down + up".into());
        let ext = up_laplacian_extended(&w, k)?;
        let idx: Vec<usize> =
            x.faces(k).iter().filter_map(|f| ext.row_basis.iter().position(|b| b == f)).collect();
        c.require(k, idx.len() == x.f(k) && ext.entries.principal(&idx) == up.entries, || {
            "extended operator does not restrict to the restricted one".into()
        });
        c.require(k, ext.entries.nnz() == up.entries.nnz(), || "extended operator has entries off X(k)".into());
    }
    Ok(c)
}

pub(super) fn gershgorin(seed: u64, max_n: usize) -> Result<Check> {
    let (_, w) = seeded_instance(seed, max_n);
    let tol = w.tol();
    let mut c = Check::new("gershgorin", seed, &w, tol);
    for k in -1..=w.complex.dim() {
        for m in [full_laplacian(&w, k)?, up_laplacian_restricted(&w, k)?, down_laplacian(&w, k)?] {
            let s = spectrum_of(&m, tol)?;
            if let Ok(top) = s.largest(1) {
                let g = gershgorin_upper(&m);
                c.residual(k, top - g, || format!("λ_1 = {top} above row bound {g}"));
            }
        }
    }
    Ok(c)
}

pub(super) fn interlacing(seed: u64, max_n: usize) -> Result<Check> {
    let (mut rng, w) = seeded_instance(seed, max_n);
    let tol = w.tol();
    let mut c = Check::new("interlacing", seed, &w, tol);
    for k in -1..=w.complex.dim() {
        let m = full_laplacian(&w, k)?;
        let dim = m.dim();
        let mut subset: Vec<usize> = (0..dim).filter(|_| rng.random_bool(0.5)).collect();
        if subset.is_empty() {
            subset.push(rng.random_range(0..dim));
        }
        let r = interlacing_check(&m, &subset, tol)?;
        c.residual(k, r.worst, || format!("subset {subset:?} violates at index {:?}", r.violation));
    }
    Ok(c)
}

fn outer(u: &DMatrix) -> DMatrix {
    u.mul(&u.transpose())
}

/// Builds A = [[B, E], [Eᵀ, C]] with E orthogonal to the bottom eigenspace of B
/// and C shifted so the smallest eigenvalue of A is that of B; then looks for
/// an eigenvector of A supported on B's indices.
pub(super) fn eigvec_support(seed: u64, max_n: usize) -> Result<Check> {
    let (mut rng, w) = seeded_instance(seed, max_n);
    let tol = w.tol();
    let mut c = Check::new("eigvec-support", seed, &w, tol);
    let x = &w.complex;
    let k = rng.random_range(-1..=x.dim() as i64) as isize;
    let b = full_laplacian(&w, k)?.symmetrize()?;
    let m = b.nrows();
    let eb = eigen_symmetric(&b, true)?;
    let lam = eb.values[m - 1];
    let bottom: Vec<usize> = (0..m).filter(|&i| (eb.values[i] - lam).abs() <= tol).collect();
    let next = eb.values.iter().copied().filter(|&v| v > lam + tol).fold(f64::INFINITY, f64::min);
    let vecs = eb.vectors.expect("requested");
    let y = vecs.columns(&bottom);
    let p = rng.random_range(1..=3);
    let mut e = DMatrix::zeros(m, p);
    for i in 0..m {
        for j in 0..p {
            e[(i, j)] = rng.random_range(-1.0..1.0);
        }
    }
    // E ← (I − Y Yᵀ) E
    let proj = outer(&y).mul(&e);
    for i in 0..m {
        for j in 0..p {
            e[(i, j)] -= proj[(i, j)];
        }
    }
    let gap = if next.is_finite() { next - lam } else { 1.0 };
    let shift = e.frobenius().powi(2) / gap + 1.0;
    let mut g = DMatrix::zeros(p, p);
    for i in 0..p {
        for j in 0..p {
            g[(i, j)] = rng.random_range(-1.0..1.0);
        }
    }
    let d = outer(&g);
    let size = m + p;
    let mut a = DMatrix::zeros(size, size);
    for i in 0..m {
        for j in 0..m {
            a[(i, j)] = b[(i, j)];
        }
        for j in 0..p {
            a[(i, m + j)] = e[(i, j)];
            a[(m + j, i)] = e[(i, j)];
        }
    }
    for i in 0..p {
        for j in 0..p {
            a[(m + i, m + j)] = d[(i, j)] + if i == j { lam + shift } else { 0.0 };
        }
    }
    let ea = eigen_symmetric(&a, true)?;
    let amin = ea.values[size - 1];
    c.residual(k, (amin - lam).abs(), || format!("λ_min(A) = {amin}, λ_min(B) = {lam}"));
    let a_bottom: Vec<usize> = (0..size).filter(|&i| (ea.values[i] - amin).abs() <= tol).collect();
    c.require(k, a_bottom.len() == bottom.len(), || {
        format!("multiplicity {} in A against {} in B", a_bottom.len(), bottom.len())
    });
    let u = ea.vectors.expect("requested").columns(&a_bottom);
    let outside: Vec<usize> = (m..size).collect();
    let u_out = u.rows_of(&outside);
    let gram = u_out.transpose().mul(&u_out);
    let smallest = eigenvalues_symmetric(&gram)?.values.last().copied().unwrap_or(0.0);
    let resid = smallest.max(0.0).sqrt();
    c.residual(k, resid, || format!("no eigenvector vanishes off the block (σ_min = {resid:e})"));
    Ok(c)
}

pub(super) fn compound(seed: u64, max_n: usize) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=max_n.max(1));
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v: f64 = rng.random_range(-1.0..1.0);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    let w = WeightedComplex::uniform(simplex(n)?);
    let mut c = Check::new("compound", seed, &w, 1e-9);
    let eig = eigenvalues_symmetric(&m)?;
    for k in 1..=n {
        let comp = additive_compound(&m, k)?;
        let lhs = eigenvalues_symmetric(&comp)?;
        let rhs = sum_set(&eig.values, k)?;
        c.residual_opt(k as isize, sorted_residual(&lhs.values, &rhs.sums), || {
            format!("compound spectrum {:?} vs sums {:?}", lhs.values, rhs.sums)
        });
    }
    Ok(c)
}

pub(super) fn duality(seed: u64, max_n: usize) -> Result<Check> {
    let (_, w) = seeded_instance(seed, max_n);
    let tol = w.tol();
    let total = w.total_weight_f64();
    let mut c = Check::new("duality", seed, &w, tol);
    let x = &w.complex;
    let n = x.n() as isize;
    for k in -1..=x.dim() {
        let fk = x.f(k);
        let star = w.with_complex(star_complex(x, k)?);
        let a = spectrum_at(&w, down_laplacian(&w, k))?.values;
        let b = spectrum_at(&star, down_laplacian(&star, n - k - 2))?.values;
        if b.len() < fk {
            c.require(k, false, || format!("f(X*_k) = {} below f_k = {fk}", b.len()));
            continue;
        }
        let r = (0..fk).map(|i| (a[i] + b[fk - 1 - i] - total).abs()).fold(0.0, f64::max);
        c.residual(k, r, || format!("down {a:?} and dual down {b:?} do not pair to {total}"));
    }
    Ok(c)
}

/// Full spectra of the complete p-skeleton on n vertices against the closed
/// forms: Σω with multiplicity C(n,k+1) below p, and Σω^(C(n−1,k)), 0^(C(n−1,k+1)) at p.
pub fn skeleton_check(n: usize, p: isize, weights: Vec<Rational>, seed: u64) -> Result<super::CheckResult> {
    let w = WeightedComplex::new(skeleton_simplex(n, p)?, weights)?;
    let tol = w.tol();
    let total = w.total_weight_f64();
    let mut c = Check::new("skeleton", seed, &w, tol);
    for k in -1..=p {
        let s = spectrum_at(&w, full_laplacian(&w, k))?;
        let (top, zeros) = if k < p {
            (binomial_i(n, k + 1), 0)
        } else {
            (binomial_i(n - 1, k), binomial_i(n - 1, k + 1))
        };
        let mut want = vec![total; top];
        want.extend(std::iter::repeat_n(0.0, zeros));
        c.residual_opt(k, sorted_residual(&s.values, &want), || format!("{:?} vs {want:?}", s.values));
        c.require(k, s.multiplicity(total) == top && s.multiplicity(0.0) == zeros, || {
            format!("multiplicities ({}, {}) vs ({top}, {zeros})", s.multiplicity(total), s.multiplicity(0.0))
        });
    }
    Ok(c.finish())
}

pub(super) fn skeleton(seed: u64, max_n: usize) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=max_n.clamp(1, 6));
    let p = rng.random_range(0..n as i64) as isize;
    let weights = (0..n).map(|_| random_weight(&mut rng)).collect::<Vec<_>>();
    let r = skeleton_check(n, p, weights.clone(), seed)?;
    let w = WeightedComplex::new(skeleton_simplex(n, p)?, weights)?;
    let mut c = Check::new("skeleton", seed, &w, r.tolerance);
    c.residual(r.instance.k.unwrap_or(-1), r.max_residual, || r.witness.clone().unwrap_or_default());
    Ok(c)
}

/// X^c_{k+1} weighted like X, or `None` when every (k+2)-set is a face.
fn complement_of(w: &WeightedComplex, k: isize) -> Result<Option<WeightedComplex>> {
    match complement_complex(&w.complex, k + 1) {
        Ok(xc) => Ok(Some(w.with_complex(xc))),
        Err(Error::EmptyGenerators(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

pub(super) fn complement(seed: u64, max_n: usize) -> Result<Check> {
    let (_, w) = seeded_instance(seed, max_n);
    let tol = w.tol();
    let total = w.total_weight_f64();
    let mut c = Check::new("complement", seed, &w, tol);
    let n = w.n();
    for k in -1..=n as isize - 2 {
        let len = binomial_i(n, k + 1);
        let half = binomial_i(n - 1, k + 1);
        let a = spectrum_at(&w, up_laplacian_extended(&w, k))?.values;
        let b = match complement_of(&w, k)? {
            Some(wc) => spectrum_at(&wc, up_laplacian_extended(&wc, k))?.values,
            None => vec![0.0; len],
        };
        if a.len() != len || b.len() != len {
            c.require(k, false, || "extended operators are not on the binomial basis".into());
            continue;
        }
        let pair = (0..half).map(|i| (a[i] + b[half - 1 - i] - total).abs()).fold(0.0, f64::max);
        c.residual(k, pair, || format!("up {a:?} and complement up {b:?} do not pair to {total}"));
        let tail = (half..len).map(|i| a[i].abs().max(b[i].abs())).fold(0.0, f64::max);
        c.residual(k, tail, || format!("nonzero tail beyond index {half}: {a:?} / {b:?}"));
    }
    Ok(c)
}

pub(super) fn complement_commute(seed: u64, max_n: usize) -> Result<Check> {
    let (_, w) = seeded_instance(seed, max_n);
    let mut c = Check::new("complement-commute", seed, &w, 0.0);
    let n = w.n();
    for k in -1..=n as isize - 2 {
        let a = up_laplacian_extended(&w, k)?.entries;
        let full = Complex::from_generators(w.complex.labels().to_vec(), binomial_basis(n, (k + 2) as usize))?;
        let d = up_laplacian_extended(&w.with_complex(full), k)?.entries;
        let b = match complement_of(&w, k)? {
            Some(wc) => up_laplacian_extended(&wc, k)?.entries,
            None => crate::matrix::QMatrix::zeros(a.nrows(), a.ncols()),
        };
        c.require(k, a.add(&b).sub(&d).is_zero(), || "up(X) + up(X^c) ≠ up(skeleton)".into());
        for (p, q, name) in [(&a, &b, "X, X^c"), (&a, &d, "X, skeleton"), (&b, &d, "X^c, skeleton")] {
            c.require(k, p.mul(q).sub(&q.mul(p)).is_zero(), || format!("{name} do not commute"));
        }
    }
    Ok(c)
}

pub(super) fn max_eigen(seed: u64, max_n: usize) -> Result<Check> {
    let (_, w) = seeded_instance(seed, max_n);
    let tol = w.tol();
    let total = w.total_weight_f64();
    let mut c = Check::new("max-eigen", seed, &w, tol);
    for k in -1..=w.complex.dim() {
        let s = spectrum_at(&w, full_laplacian(&w, k))?;
        let top = s.largest(1)?;
        c.residual(k, top - total, || format!("λ_1 = {top} above Σω = {total}"));
        let (_, lower) = max_eigen_bounds(&w, k)?;
        let got = s.multiplicity(total);
        c.require(k, got >= lower, || format!("multiplicity {got} of Σω below the bound {lower}"));
    }
    Ok(c)
}

pub(super) fn alexander(seed: u64, max_n: usize) -> Result<Check> {
    let (_, w) = seeded_instance(seed, max_n);
    let mut c = Check::new("alexander", seed, &w, 0.0);
    c.require(-1, alexander_check(&w.complex)?, || "Betti numbers of X and X^∨ disagree".into());
    Ok(c)
}

pub(super) fn alexander_spectra(seed: u64, max_n: usize) -> Result<Check> {
    let (_, w) = seeded_instance(seed, max_n);
    let tol = w.tol();
    let total = w.total_weight_f64();
    let mut c = Check::new("alexander-spectra", seed, &w, tol);
    let x = &w.complex;
    let n = x.n() as isize;
    let dual = w.with_complex(alexander_dual(x)?);
    for k in -1..=n - 2 {
        let a = spectrum_at(&w, full_laplacian(&w, k))?;
        let b = spectrum_at(&dual, full_laplacian(&dual, n - k - 3))?;
        let below = |s: &Spectrum| s.values.iter().copied().filter(|&v| v < total - tol).collect::<Vec<_>>();
        let (la, lb) = (below(&a), below(&b));
        c.residual_opt(k, sorted_residual(&la, &lb), || format!("below Σω: {la:?} vs dual {lb:?}"));
        let diff = a.multiplicity(total) as i64 - b.multiplicity(total) as i64;
        let want = x.f(k) as i64 + x.f(k + 1) as i64 - binomial_i(n as usize, k + 2) as i64;
        c.require(k, diff == want, || format!("multiplicity difference at Σω is {diff}, expected {want}"));
    }
    Ok(c)
}

pub(super) fn dual_skeleta(seed: u64, max_n: usize) -> Result<Check> {
    let (_, w) = seeded_instance(seed, max_n);
    let mut c = Check::new("dual-skeleta", seed, &w, 0.0);
    let x = &w.complex;
    let n = x.n() as isize;
    let dual = alexander_dual(x)?;
    for k in 0..n {
        let xc = match complement_complex(x, k) {
            Ok(xc) => xc,
            Err(Error::EmptyGenerators(_)) => continue,
            Err(e) => return Err(e),
        };
        if x.f(k) == 0 {
            continue;
        }
        let lhs = star_complex(&xc, k)?;
        let rhs = complement_complex(&star_complex(x, k)?, n - k - 2)?;
        c.require(k, lhs == rhs, || "(X^c_k)*_k ≠ (X*_k)^c".into());
        c.require(k, lhs == pure_part(&dual, n - k - 2)?, || "(X^c_k)*_k ≠ pure part of X^∨".into());
    }
    Ok(c)
}

/// Spectra s_k of a join for k = −1..=dim, indexed by k+1, composed from the
/// measured factor spectra.
pub fn composed_join_spectra(parts: &[WeightedComplex]) -> Result<Vec<Vec<f64>>> {
    let factor = |w: &WeightedComplex| -> Result<Vec<Vec<f64>>> {
        (-1..=w.complex.dim()).map(|k| Ok(spectrum_at(w, full_laplacian(w, k))?.values)).collect()
    };
    let mut acc: Option<Vec<Vec<f64>>> = None;
    for p in parts {
        let f = factor(p)?;
        acc = Some(match acc {
            None => f,
            Some(prev) => {
                let mut out = vec![Vec::new(); prev.len() + f.len() - 1];
                for (a, sa) in prev.iter().enumerate() {
                    for (b, sb) in f.iter().enumerate() {
                        for x in sa {
                            out[a + b].extend(sb.iter().map(|y| x + y));
                        }
                    }
                }
                out
            }
        });
    }
    let mut out = acc.ok_or_else(|| Error::InvalidParameter("empty join".into()))?;
    for s in &mut out {
        s.sort_by(|a, b| b.total_cmp(a));
    }
    Ok(out)
}

pub(super) fn join(seed: u64, max_n: usize) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total_n = max_n.max(2);
    let n1 = rng.random_range(1..total_n);
    let n2 = rng.random_range(1..=total_n - n1);
    let w1 = random_weighted_complex(n1, &mut rng);
    let w2 = random_weighted_complex(n2, &mut rng);
    let w = join_namespaced(&w1, &w2)?.result;
    let tol = w.tol();
    let mut c = Check::new("join", seed, &w, tol);
    let composed = composed_join_spectra(&[w1, w2])?;
    for k in -1..=w.complex.dim() {
        let s = spectrum_at(&w, full_laplacian(&w, k))?;
        let want = composed.get((k + 1) as usize).cloned().unwrap_or_default();
        c.residual_opt(k, sorted_residual(&s.values, &want), || format!("{:?} vs composed {want:?}", s.values));
    }
    Ok(c)
}

pub(super) fn hodge(seed: u64, max_n: usize) -> Result<Check> {
    let (mut rng, w) = seeded_instance(seed, max_n);
    let mut c = Check::new("hodge", seed, &w, 0.0);
    let betti = betti_exact(&w.complex)?;
    let second = WeightedComplex::random_weights(w.complex.clone(), &mut rng);
    for wc in [&w, &second] {
        for k in -1..=wc.complex.dim() {
            let h = betti_hodge(wc, k, kernel_tol(wc))?;
            c.require(k, h == betti.get(k), || format!("kernel {h} vs exact Betti {}", betti.get(k)));
        }
    }
    Ok(c)
}

fn gap_of(w: &WeightedComplex, k: isize) -> Result<f64> {
    spectrum_at(w, full_laplacian(w, k))?.smallest(1)
}

pub(super) fn gap(seed: u64, max_n: usize) -> Result<Check> {
    let (_, w) = seeded_instance(seed, max_n);
    let tol = w.tol();
    let mut c = Check::new("gap", seed, &w, tol);
    let x = &w.complex;
    if x.h()?.is_none() {
        return Ok(c);
    }
    let betti = betti_exact(x)?;
    for k in -1..=x.dim() {
        let g = gap_of(&w, k)?;
        let strong = gap_bound_link(&w, k)?.value;
        let weak = gap_bound_weak(&w, k)?.value;
        let sf = to_f64(&strong);
        c.residual(k, sf - g, || format!("bound {sf} above gap {g}"));
        c.require(k, weak <= strong, || "weak bound above the link bound".into());
        if gap_condition(&w, k)? == Some(true) {
            c.require(k, betti.get(k) == 0, || format!("gap condition fired with b_k = {}", betti.get(k)));
        }
    }
    Ok(c)
}

/// Measured gap against the closed form and the link bound for every k, and
/// the ω ≡ 1 formula for k ≤ dt−1.
pub fn extremal_check(d: usize, t: usize, r: usize, seed: u64) -> Result<super::CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let blocks: Vec<Rational> = (0..t).map(|_| random_weight(&mut rng)).collect();
    let tail: Vec<Rational> = (0..r).map(|_| random_weight(&mut rng)).collect();
    let e = extremal_family(d, t, r, &blocks, &tail)?;
    let w = &e.weighted;
    let tol = w.tol();
    let mut c = Check::new("extremal", seed, w, tol);
    for k in -1..=e.dim() {
        let g = gap_of(w, k)?;
        let closed = to_f64(&e.closed_form_gap(k));
        let bound = to_f64(&gap_bound_link(w, k)?.value);
        c.residual(k, (g - closed).abs(), || format!("gap {g} vs closed form {closed}"));
        c.residual(k, (g - bound).abs(), || format!("gap {g} vs link bound {bound}"));
    }
    let u = extremal_uniform(d, t, r)?;
    for k in -1..=(d * t) as isize - 1 {
        let g = gap_of(&u.weighted, k)?;
        let want = u.uniform_gap(k).map_or(f64::NAN, |v| v as f64);
        c.residual(k, (g - want).abs(), || format!("ω ≡ 1 gap {g} vs {want}"));
    }
    Ok(c.finish())
}

pub(super) fn extremal(seed: u64, _max_n: usize) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (d, t, r) = (rng.random_range(1..=2), rng.random_range(1..=2), rng.random_range(1..=2));
    let res = extremal_check(d, t, r, seed)?;
    let e = extremal_uniform(d, t, r)?;
    let mut c = Check::new("extremal", seed, &e.weighted, res.tolerance);
    c.residual(res.instance.k.unwrap_or(-1), res.max_residual, || res.witness.clone().unwrap_or_default());
    Ok(c)
}

pub(super) fn equality_case(seed: u64, max_n: usize) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let variant = seed % 3;
    let (d, t, r) = (rng.random_range(1..=2), rng.random_range(1..=2), rng.random_range(1..=2));
    let w = match variant {
        0 | 1 => {
            let blocks: Vec<Rational> = (0..t).map(|_| random_weight(&mut rng)).collect();
            let tail: Vec<Rational> = (0..r).map(|_| random_weight(&mut rng)).collect();
            let mut w = extremal_family(d, t, r, &blocks, &tail)?.weighted;
            if variant == 1 {
                let v = rng.random_range(0..(d + 1) * t);
                w.weights[v] += crate::rational::frac(1, 7);
            }
            w
        }
        _ => random_weighted_complex(rng.random_range(2..=max_n.max(2)), &mut rng),
    };
    let mut c = Check::new("equality-case", seed, &w, 0.0);
    let Some(h) = w.complex.h()? else { return Ok(c) };
    let k = w.complex.dim();
    if k < -1 || w.complex.f(k) == 0 {
        return Ok(c);
    }
    let weak = to_f64(&gap_bound_weak(&w, k)?.value);
    let g = gap_of(&w, k)?;
    let attained = (weak - g).abs() <= 1e-10 * w.total_weight_f64().max(1.0);
    if variant == 0 {
        c.require(k, attained, || format!("extremal family misses the weak bound: {weak} vs {g}"));
    }
    if attained {
        c.require(k, crate::constructions::is_extremal_equality_case(&w, k, h)?, || {
            format!("weak bound {weak} attained without the extremal structure")
        });
    }
    Ok(c)
}

pub(super) fn link_sum(seed: u64, max_n: usize) -> Result<Check> {
    let (_, w) = seeded_instance(seed, max_n);
    let mut c = Check::new("link-sum", seed, &w, 0.0);
    if w.complex.h()?.is_none() {
        return Ok(c);
    }
    for s in w.complex.all_faces().filter(|f| !f.is_empty()) {
        let (lhs, rhs) = link_weight_sides(&w, s)?;
        let k = s.len() as isize - 1;
        c.require(k, lhs <= rhs, || format!("σ = {s:?}: {lhs} > {rhs}"));
    }
    Ok(c)
}

pub(super) fn eig_lower(seed: u64, max_n: usize) -> Result<Check> {
    let (_, w) = seeded_instance(seed, max_n);
    let tol = w.tol();
    let mut c = Check::new("eig-lower", seed, &w, tol);
    for k in 0..=w.complex.dim() {
        let asc = spectrum_at(&w, full_laplacian(&w, k))?.ascending();
        let lows = eig_lower_sumset_all(&w, k)?;
        for (i, (lo, got)) in lows.iter().zip(&asc).enumerate() {
            c.residual(k, lo - got, || format!("i={}: bound {lo} above λ_i = {got}", i + 1));
        }
    }
    Ok(c)
}

pub(super) fn cohomology(seed: u64, max_n: usize) -> Result<Check> {
    let (_, w) = seeded_instance(seed, max_n);
    let mut c = Check::new("cohomology", seed, &w, 0.0);
    let betti = betti_exact(&w.complex)?;
    for k in 0..=w.complex.dim() {
        let bound = cohom_dim_upper(&w, k)?;
        c.require(k, bound >= betti.get(k), || format!("count {bound} below b_k = {}", betti.get(k)));
    }
    Ok(c)
}

pub(super) fn subcomplex(seed: u64, max_n: usize) -> Result<Check> {
    let (mut rng, w) = seeded_instance(seed, max_n);
    let tol = w.tol();
    let mut c = Check::new("subcomplex", seed, &w, tol);
    let mut sub = w.complex.clone();
    for _ in 0..rng.random_range(1..=2) {
        let facets: Vec<_> = sub.facets().into_iter().filter(|f| !f.is_empty()).collect();
        if facets.is_empty() {
            break;
        }
        let f = &facets[rng.random_range(0..facets.len())];
        sub = sub.delete_face(f)?;
    }
    let ws = w.with_complex(sub.clone());
    let betti_sub = betti_exact(&sub)?;
    for k in 0..=sub.dim() {
        let shift = to_f64(&subcomplex_shift(&w, &sub, k)?);
        let big = spectrum_at(&w, full_laplacian(&w, k))?.ascending();
        let small = spectrum_at(&ws, full_laplacian(&ws, k))?.ascending();
        for (i, s) in small.iter().enumerate() {
            let bound = big[i] - (k + 2) as f64 * shift;
            c.residual(k, bound - s, || format!("i={}: bound {bound} above λ_i(X') = {s}", i + 1));
        }
        if subcomplex_condition(&w, &sub, k)? {
            c.require(k, betti_sub.get(k) == 0, || format!("condition fired with b_k(X') = {}", betti_sub.get(k)));
        }
    }
    Ok(c)
}
