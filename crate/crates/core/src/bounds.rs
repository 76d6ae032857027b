//! Closed-form spectral bounds and their measured counterparts.

use num_traits::Zero;
use serde::Serialize;

use crate::complex::{binomial_i, Complex, Face};
use crate::error::{Error, Result};
use crate::homology::betti_exact;
use crate::operators::{full_laplacian, graph_plus_j};
use crate::rational::{format_rational, int, to_f64, Rational};
use crate::spectra::{spectrum_of, sum_set, Spectrum};
use crate::weighted::WeightedComplex;

/// An exact bound value with the face that realises it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witnessed {
    pub value: Rational,
    pub witness: Face,
}

fn require_faces(w: &WeightedComplex, k: isize) -> Result<()> {
    if w.complex.f(k) == 0 {
        return Err(Error::Inapplicable(format!("X({k}) is empty")));
    }
    Ok(())
}

fn require_nonneg_k(w: &WeightedComplex, k: isize) -> Result<()> {
    let dim = w.complex.dim();
    if k < 0 || k > dim {
        return Err(Error::DimensionOutOfRange { k, lo: 0, hi: dim });
    }
    Ok(())
}

/// h(X), or inapplicable for the full simplex.
pub fn h_defined(x: &Complex) -> Result<usize> {
    x.h()?.ok_or_else(|| Error::Inapplicable("h(X) is undefined for the full simplex".into()))
}

fn min_over_faces<F: Fn(&Face) -> Rational>(w: &WeightedComplex, k: isize, f: F) -> Result<Witnessed> {
    require_faces(w, k)?;
    let mut best: Option<Witnessed> = None;
    for s in w.complex.faces(k) {
        let v = f(s);
        if best.as_ref().is_none_or(|b| v < b.value) {
            best = Some(Witnessed { value: v, witness: s.clone() });
        }
    }
    Ok(best.expect("nonempty"))
}

/// m_k = min_{σ∈X(k)} Σ_{v∈σ∪lk σ} ω(v).
pub fn m_k(w: &WeightedComplex, k: isize) -> Result<Witnessed> {
    min_over_faces(w, k, |s| w.vertex_sum(s) + w.vertex_sum(&w.complex.link_unchecked(s)))
}

/// (d+1)·m_k − d·Σω with d = h(X).
pub fn gap_bound_link(w: &WeightedComplex, k: isize) -> Result<Witnessed> {
    let d = int(h_defined(&w.complex)? as i64);
    let m = m_k(w, k)?;
    let value = (&d + int(1)) * &m.value - d * w.total_weight();
    Ok(Witnessed { value, witness: m.witness })
}

/// (d+1)·min_σ Σ_{v∈σ} ω(v) − d·Σω.
pub fn gap_bound_weak(w: &WeightedComplex, k: isize) -> Result<Witnessed> {
    let d = int(h_defined(&w.complex)? as i64);
    let m = min_over_faces(w, k, |s| w.vertex_sum(s))?;
    let value = (&d + int(1)) * &m.value - d * w.total_weight();
    Ok(Witnessed { value, witness: m.witness })
}

/// Upper bound Σω on λ_1^↓(L_k^ω) and the lower bound on the multiplicity of Σω.
pub fn max_eigen_bounds(w: &WeightedComplex, k: isize) -> Result<(Rational, usize)> {
    let dim = w.complex.dim();
    if k < -1 || k > dim {
        return Err(Error::DimensionOutOfRange { k, lo: -1, hi: dim });
    }
    let x = &w.complex;
    let n = x.n();
    let (fk, fk1) = (x.f(k) as i64, x.f(k + 1) as i64);
    let c = |a: usize, b: isize| binomial_i(a, b) as i64;
    let lower = [
        fk + fk1 - c(n, k + 2),
        fk - c(n.saturating_sub(1), k + 1),
        fk1 - c(n.saturating_sub(1), k + 2),
        0,
    ]
    .into_iter()
    .max()
    .unwrap_or(0);
    Ok((w.total_weight(), lower as usize))
}

/// max_{σ∈X(k)} Σ_j (j+1)·Σ_{u∈σ[j]} ω(u).
pub fn sigma_penalty(w: &WeightedComplex, k: isize) -> Result<Rational> {
    require_nonneg_k(w, k)?;
    let mut best = Rational::zero();
    for s in w.complex.faces(k) {
        let classes = w.complex.sigma_classes(s)?;
        let p = classes
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (j, c)| acc + int(j as i64 + 1) * w.vertex_sum(c));
        if p > best {
            best = p;
        }
    }
    Ok(best)
}

/// Spectrum of L^ω(G_X) + J^ω.
pub fn graph_spectrum(w: &WeightedComplex) -> Result<Spectrum> {
    spectrum_of(&graph_plus_j(w), w.tol())
}

/// Lower bounds on λ_i^↑(L_k^ω) for i = 1..=f_k.
pub fn eig_lower_sumset_all(w: &WeightedComplex, k: isize) -> Result<Vec<f64>> {
    require_nonneg_k(w, k)?;
    let spec = graph_spectrum(w)?;
    let sums = sum_set(&spec.values, (k + 1) as usize)?;
    let shift = k as f64 * w.total_weight_f64() + to_f64(&sigma_penalty(w, k)?);
    (1..=w.complex.f(k)).map(|i| Ok(sums.s_up(i)? - shift)).collect()
}

/// S^↑_{k+1,i}(L^ω(G_X)+J^ω) − kΣω − penalty.
pub fn eig_lower_sumset(w: &WeightedComplex, k: isize, i: usize) -> Result<f64> {
    let fk = w.complex.f(k);
    if i == 0 || i > fk {
        return Err(Error::IndexOutOfRange { index: i, len: fk });
    }
    Ok(eig_lower_sumset_all(w, k)?[i - 1])
}

/// Number of (k+1)-subsets of eigenvalues of L^ω(G_X)+J^ω whose sum is at most
/// kΣω + penalty (within `tol`).
pub fn cohom_dim_upper(w: &WeightedComplex, k: isize) -> Result<usize> {
    require_nonneg_k(w, k)?;
    let spec = graph_spectrum(w)?;
    let sums = sum_set(&spec.values, (k + 1) as usize)?;
    let bound = k as f64 * w.total_weight_f64() + to_f64(&sigma_penalty(w, k)?);
    Ok(sums.count_at_most(bound + w.tol()))
}

/// S_k^ω(X, X') = max_{σ∈X'(k)} Σ_{v ∈ lk_X σ ∖ lk_{X'} σ} ω(v); X' must share X's vertex list.
pub fn subcomplex_shift(w: &WeightedComplex, sub: &Complex, k: isize) -> Result<Rational> {
    if !w.complex.contains_complex(sub) {
        return Err(Error::NotSubcomplex("some face of X' is not a face of X".into()));
    }
    if sub.f(k) == 0 {
        return Err(Error::Inapplicable(format!("X'({k}) is empty")));
    }
    let mut best = Rational::zero();
    for s in sub.faces(k) {
        let lx = w.complex.link_unchecked(s);
        let ls = sub.link_unchecked(s);
        let diff: Vec<usize> = lx.into_iter().filter(|v| !ls.contains(v)).collect();
        let v = w.vertex_sum(&diff);
        if v > best {
            best = v;
        }
    }
    Ok(best)
}

/// λ_i^↑(L_k^ω(X)) − (k+2)·S_k^ω(X, X').
pub fn subcomplex_bound(w: &WeightedComplex, sub: &Complex, k: isize, i: usize) -> Result<f64> {
    let shift = subcomplex_shift(w, sub, k)?;
    let spec = spectrum_of(&full_laplacian(w, k)?, w.tol())?;
    Ok(spec.smallest(i)? - (k + 2) as f64 * to_f64(&shift))
}

/// The two sides of the link-sum inequality for σ ∈ X(k), k ≥ 0.
pub fn link_weight_sides(w: &WeightedComplex, sigma: &[usize]) -> Result<(Rational, Rational)> {
    let x = &w.complex;
    let d = int(h_defined(x)? as i64);
    if sigma.is_empty() || !x.contains(sigma) {
        return Err(Error::FaceNotInComplex(x.label_of(sigma)));
    }
    let k = sigma.len() as i64 - 1;
    let mut lhs = Rational::zero();
    for &u in sigma {
        let eta: Face = sigma.iter().copied().filter(|&v| v != u).collect();
        lhs += w.vertex_sum(&x.link_unchecked(&eta));
    }
    let lk = x.link_unchecked(sigma);
    let rhs = &d * w.total_weight() - (&d - int(1)) * w.vertex_sum(sigma) + (int(k + 1) - d) * w.vertex_sum(&lk);
    Ok((lhs, rhs))
}

/// Which vanishing conditions fire at k, together with the exact Betti numbers.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VanishingReport {
    pub k: isize,
    /// m_k > d/(d+1)·Σω, evaluated exactly; `None` when h(X) is undefined or X(k) is empty.
    pub gap_condition: Option<bool>,
    /// The subcomplex criterion; `None` without a subcomplex.
    pub subcomplex_condition: Option<bool>,
    pub betti: usize,
    pub betti_sub: Option<usize>,
    /// No condition fired while the corresponding Betti number is nonzero.
    pub consistent: bool,
}

pub fn gap_condition(w: &WeightedComplex, k: isize) -> Result<Option<bool>> {
    let Some(d) = w.complex.h()? else { return Ok(None) };
    if w.complex.f(k) == 0 {
        return Ok(None);
    }
    let m = m_k(w, k)?.value;
    let d = int(d as i64);
    Ok(Some(m * (&d + int(1)) > d * w.total_weight()))
}

/// λ_1^↑(L^ω(G_X)+J^ω) > (kΣω + penalty + (k+2)·S)/(k+1), with a `tol` margin.
pub fn subcomplex_condition(w: &WeightedComplex, sub: &Complex, k: isize) -> Result<bool> {
    require_nonneg_k(w, k)?;
    if sub.f(k) == 0 {
        return Ok(false);
    }
    let shift = to_f64(&subcomplex_shift(w, sub, k)?);
    let pen = to_f64(&sigma_penalty(w, k)?);
    let total = w.total_weight_f64();
    let lam = graph_spectrum(w)?.smallest(1)?;
    let kf = k as f64;
    let rhs = (kf * total + pen + (kf + 2.0) * shift) / (kf + 1.0);
    Ok(lam > rhs + w.tol())
}

pub fn vanishing_checks(w: &WeightedComplex, k: isize, sub: Option<&Complex>) -> Result<VanishingReport> {
    require_nonneg_k(w, k)?;
    let betti = betti_exact(&w.complex)?.get(k);
    let gap = gap_condition(w, k)?;
    let (subcond, betti_sub) = match sub {
        Some(s) => {
            let fired = subcomplex_condition(w, s, k)?;
            let b = if s.is_void() { 0 } else { betti_exact(s)?.get(k) };
            (Some(fired), Some(b))
        }
        None => (None, None),
    };
    let consistent = !(gap == Some(true) && betti != 0) && !(subcond == Some(true) && betti_sub != Some(0));
    Ok(VanishingReport { k, gap_condition: gap, subcomplex_condition: subcond, betti, betti_sub, consistent })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Measured {
    pub spectrum: Vec<f64>,
    pub gap: Option<f64>,
    pub max: Option<f64>,
    pub max_multiplicity: usize,
    pub betti: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubcomplexReport {
    pub shift: f64,
    pub shift_exact: String,
    /// Lower bounds λ_i^↑(X) − (k+2)·S for i = 1..=f_k(X').
    pub eig_lower: Vec<f64>,
    pub measured: Vec<f64>,
}

/// Every bound at one dimension, next to the measured spectrum.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub k: isize,
    pub n: usize,
    pub total_weight: f64,
    pub d: Option<usize>,
    pub m_k: Option<f64>,
    pub gap_link: Option<f64>,
    pub gap_link_exact: Option<String>,
    pub gap_link_witness: Option<Vec<String>>,
    pub gap_weak: Option<f64>,
    pub max_upper: Option<f64>,
    pub max_mult_lower: Option<usize>,
    pub sigma_penalty: Option<f64>,
    pub eig_lower: Option<Vec<f64>>,
    pub cohom_dim_upper: Option<usize>,
    pub subcomplex: Option<SubcomplexReport>,
    pub vanishing: Option<VanishingReport>,
    pub measured: Measured,
    /// Reasons for bounds that do not apply here.
    pub inapplicable: Vec<String>,
}

fn keep<T>(r: Result<T>, notes: &mut Vec<String>, name: &str) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::Inapplicable(why)) => {
            notes.push(format!("{name}: {why}"));
            Ok(None)
        }
        Err(Error::DimensionOutOfRange { .. }) => {
            notes.push(format!("{name}: needs k ≥ 0"));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

impl BoundReport {
    pub fn evaluate(w: &WeightedComplex, k: isize, sub: Option<&Complex>) -> Result<BoundReport> {
        let x = &w.complex;
        if k < -1 || k > x.dim() {
            return Err(Error::DimensionOutOfRange { k, lo: -1, hi: x.dim() });
        }
        let mut notes = Vec::new();
        let spec = spectrum_of(&full_laplacian(w, k)?, w.tol())?;
        let total = w.total_weight_f64();
        let betti = betti_exact(x)?.get(k);
        let measured = Measured {
            gap: spec.smallest(1).ok(),
            max: spec.largest(1).ok(),
            max_multiplicity: spec.multiplicity(total),
            spectrum: spec.values.clone(),
            betti,
        };
        let d = x.h()?;
        let link_gap = keep(gap_bound_link(w, k), &mut notes, "gap_link")?;
        let weak = keep(gap_bound_weak(w, k), &mut notes, "gap_weak")?;
        let mk = keep(m_k(w, k), &mut notes, "m_k")?;
        let maxb = keep(max_eigen_bounds(w, k), &mut notes, "max_eigen")?;
        let pen = keep(sigma_penalty(w, k), &mut notes, "sigma_penalty")?;
        let lower = keep(eig_lower_sumset_all(w, k), &mut notes, "eig_lower")?;
        let cohom = keep(cohom_dim_upper(w, k), &mut notes, "cohom_dim_upper")?;
        let vanishing = keep(vanishing_checks(w, k, sub), &mut notes, "vanishing")?;
        let subcomplex = match sub {
            None => None,
            Some(s) => match subcomplex_shift(w, s, k) {
                Ok(shift) => {
                    let sspec = spectrum_of(&full_laplacian(&w.with_complex(s.clone()), k)?, w.tol())?;
                    let asc = spec.ascending();
                    let sh = to_f64(&shift);
                    let eig_lower =
                        (0..sspec.len()).map(|i| asc[i] - (k + 2) as f64 * sh).collect();
                    Some(SubcomplexReport {
                        shift: sh,
                        shift_exact: format_rational(&shift),
                        eig_lower,
                        measured: sspec.ascending(),
                    })
                }
                Err(Error::Inapplicable(why)) => {
                    notes.push(format!("subcomplex: {why}"));
                    None
                }
                Err(e) => return Err(e),
            },
        };
        Ok(BoundReport {
            k,
            n: x.n(),
            total_weight: total,
            d,
            m_k: mk.map(|m| to_f64(&m.value)),
            gap_link: link_gap.as_ref().map(|b| to_f64(&b.value)),
            gap_link_exact: link_gap.as_ref().map(|b| format_rational(&b.value)),
            gap_link_witness: link_gap
                .as_ref()
                .map(|b| b.witness.iter().map(|&v| x.labels()[v].clone()).collect()),
            gap_weak: weak.map(|b| to_f64(&b.value)),
            max_upper: maxb.as_ref().map(|m| to_f64(&m.0)),
            max_mult_lower: maxb.map(|m| m.1),
            sigma_penalty: pen.map(|p| to_f64(&p)),
            eig_lower: lower,
            cohom_dim_upper: cohom,
            subcomplex,
            vanishing,
            measured,
            inapplicable: notes,
        })
    }
}
