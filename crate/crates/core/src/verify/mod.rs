//! Seeded property suites, one per identity or inequality, with replayable results.

mod suites;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::complex::{Complex, Face};
use crate::error::{Error, Result};
use crate::rational::format_rational;
use crate::weighted::WeightedComplex;

pub use suites::{composed_join_spectra, extremal_check, skeleton_check};

/// Residual recorded for a failed exact or combinatorial check.
pub const MISMATCH: f64 = f64::MAX;

/// Random complex on `n` vertices: up to n+1 random facets, mostly small, and
/// vertices left uncovered may stay absent from X(0). Weights are p/q with
/// p, q in 1..=16.
pub fn random_weighted_complex<R: Rng>(n: usize, rng: &mut R) -> WeightedComplex {
    let labels = Complex::simplex_labels(n);
    let mut gens: Vec<Face> = Vec::new();
    let mut verts: Vec<usize> = (0..n).collect();
    if n > 0 {
        for _ in 0..rng.random_range(1..=n + 1) {
            let size = if rng.random_bool(0.2) { rng.random_range(1..=n) } else { rng.random_range(1..=n.min(4)) };
            verts.shuffle(rng);
            let mut f = verts[..size].to_vec();
            f.sort_unstable();
            gens.push(f);
        }
        for v in 0..n {
            if rng.random_bool(0.8) {
                gens.push(vec![v]);
            }
        }
    }
    let complex = Complex::from_generators(labels, gens).expect("indices in range");
    WeightedComplex::random_weights(complex, rng)
}

/// Random complex on 2..=max_n vertices (1 when max_n is 1), seeded.
pub fn seeded_instance(seed: u64, max_n: usize) -> (ChaCha8Rng, WeightedComplex) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(2.min(max_n).max(1)..=max_n.max(1));
    let w = random_weighted_complex(n, &mut rng);
    (rng, w)
}

/// First 16 hex digits of SHA-256 over the comma-joined weights.
pub fn weights_digest(weights: &[crate::rational::Rational]) -> String {
    let text: Vec<String> = weights.iter().map(format_rational).collect();
    let digest = Sha256::digest(text.join(",").as_bytes());
    hex::encode(digest)[..16].to_string()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Instance {
    pub seed: u64,
    pub n: usize,
    /// Dimension of the worst cell, when the check ranges over k.
    pub k: Option<isize>,
    pub weights_digest: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub theorem: String,
    pub instance: Instance,
    pub pass: bool,
    pub max_residual: f64,
    pub tolerance: f64,
    pub witness: Option<String>,
}

/// Accumulates the worst residual of one instance.
pub(crate) struct Check {
    theorem: &'static str,
    seed: u64,
    n: usize,
    digest: String,
    tol: f64,
    worst: f64,
    worst_k: Option<isize>,
    witness: Option<String>,
}

impl Check {
    pub(crate) fn new(theorem: &'static str, seed: u64, w: &WeightedComplex, tol: f64) -> Check {
        Check {
            theorem,
            seed,
            n: w.n(),
            digest: weights_digest(&w.weights),
            tol,
            worst: 0.0,
            worst_k: None,
            witness: None,
        }
    }

    pub(crate) fn residual(&mut self, k: isize, r: f64, what: impl FnOnce() -> String) {
        let r = if r.is_nan() { MISMATCH } else { r.max(0.0) };
        if r > self.worst || self.worst_k.is_none() {
            self.worst = self.worst.max(r);
            self.worst_k = Some(k);
        }
        if r > self.tol && self.witness.is_none() {
            self.witness = Some(format!("k={k}: {}", what()));
        }
    }

    pub(crate) fn residual_opt(&mut self, k: isize, r: Option<f64>, what: impl FnOnce() -> String) {
        self.residual(k, r.unwrap_or(MISMATCH), what);
    }

    pub(crate) fn require(&mut self, k: isize, ok: bool, what: impl FnOnce() -> String) {
        self.residual(k, if ok { 0.0 } else { MISMATCH }, what);
    }

    pub(crate) fn finish(self) -> CheckResult {
        CheckResult {
            theorem: self.theorem.to_string(),
            instance: Instance { seed: self.seed, n: self.n, k: self.worst_k, weights_digest: self.digest },
            pass: self.worst <= self.tol,
            max_residual: self.worst,
            tolerance: self.tol,
            witness: self.witness,
        }
    }
}

type SuiteFn = fn(u64, usize) -> Result<Check>;

pub struct Suite {
    pub name: &'static str,
    pub about: &'static str,
    run: SuiteFn,
}

impl Suite {
    pub fn run_one(&self, seed: u64, max_n: usize) -> CheckResult {
        match (self.run)(seed, max_n) {
            Ok(c) => c.finish(),
            Err(e) => CheckResult {
                theorem: self.name.to_string(),
                instance: Instance { seed, n: 0, k: None, weights_digest: String::new() },
                pass: false,
                max_residual: MISMATCH,
                tolerance: 0.0,
                witness: Some(format!("error: {e}")),
            },
        }
    }
}

pub static SUITES: &[Suite] = &[
    Suite { name: "union", about: "full spectrum is the union of up and down spectra", run: suites::union },
    Suite { name: "up-down", about: "nonzero down(k) spectrum equals nonzero up(k-1) spectrum", run: suites::up_down },
    Suite { name: "explicit-forms", about: "closed-form operator entries equal coboundary products", run: suites::explicit_forms },
    Suite { name: "gershgorin", about: "largest eigenvalue within the Gershgorin row bound", run: suites::gershgorin },
    Suite { name: "interlacing", about: "principal submatrices interlace", run: suites::interlacing },
    Suite { name: "eigvec-support", about: "shared smallest eigenvalue gives a supported eigenvector", run: suites::eigvec_support },
    Suite { name: "compound", about: "additive compound spectrum equals subset sums", run: suites::compound },
    Suite { name: "duality", about: "down spectra of X and X*_k pair to the total weight", run: suites::duality },
    Suite { name: "skeleton", about: "closed-form spectra of complete skeleta", run: suites::skeleton },
    Suite { name: "complement", about: "up spectra of X and X^c_{k+1} pair to the total weight", run: suites::complement },
    Suite { name: "complement-commute", about: "up operators of X, X^c and the skeleton sum and commute", run: suites::complement_commute },
    Suite { name: "max-eigen", about: "largest eigenvalue and multiplicity of the total weight", run: suites::max_eigen },
    Suite { name: "alexander", about: "Betti numbers of X and its Alexander dual", run: suites::alexander },
    Suite { name: "alexander-spectra", about: "Laplacian multiplicities of X and its Alexander dual", run: suites::alexander_spectra },
    Suite { name: "dual-skeleta", about: "skeleta of the Alexander dual versus star and complement", run: suites::dual_skeleta },
    Suite { name: "join", about: "join spectrum is the composed sum multiset", run: suites::join },
    Suite { name: "hodge", about: "kernel dimension equals the exact Betti number", run: suites::hodge },
    Suite { name: "gap", about: "gap lower bounds and the gap vanishing condition", run: suites::gap },
    Suite { name: "extremal", about: "extremal family attains the gap bound", run: suites::extremal },
    Suite { name: "equality-case", about: "attained weak bound forces the extremal structure", run: suites::equality_case },
    Suite { name: "link-sum", about: "link-sum inequality", run: suites::link_sum },
    Suite { name: "eig-lower", about: "eigenvalue lower bounds from graph sum sets", run: suites::eig_lower },
    Suite { name: "cohomology", about: "sum-set count bounds the Betti number", run: suites::cohomology },
    Suite { name: "subcomplex", about: "subcomplex eigenvalue shift and its vanishing condition", run: suites::subcomplex },
];

pub fn suite(name: &str) -> Result<&'static Suite> {
    SUITES.iter().find(|s| s.name == name).ok_or_else(|| Error::UnknownSuite(name.to_string()))
}

/// Runs seeds 0..seeds of one suite, or of every suite for `all`. Results are
/// in registry order, then seed order.
pub fn run_suite(name: &str, seeds: u64, max_n: usize) -> Result<Vec<CheckResult>> {
    let chosen: Vec<&Suite> = if name == "all" { SUITES.iter().collect() } else { vec![suite(name)?] };
    let cells: Vec<(&Suite, u64)> = chosen.iter().flat_map(|s| (0..seeds).map(move |seed| (*s, seed))).collect();
    Ok(cells.par_iter().map(|(s, seed)| s.run_one(*seed, max_n)).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteSummary {
    pub suite: String,
    pub instances: usize,
    pub failures: usize,
    pub max_residual: f64,
}

pub fn summarize(results: &[CheckResult]) -> Vec<SuiteSummary> {
    let mut out: Vec<SuiteSummary> = Vec::new();
    for r in results {
        if out.last().is_none_or(|s| s.suite != r.theorem) {
            out.push(SuiteSummary { suite: r.theorem.clone(), instances: 0, failures: 0, max_residual: 0.0 });
        }
        let s = out.last_mut().expect("pushed");
        s.instances += 1;
        s.failures += usize::from(!r.pass);
        s.max_residual = s.max_residual.max(r.max_residual);
    }
    out
}

pub fn summary_table(results: &[CheckResult]) -> String {
    let mut out = format!("{:<20} {:>9} {:>8} {:>12}\n", "suite", "instances", "failures", "max resid");
    for s in summarize(results) {
        let resid = if s.max_residual == MISMATCH { "mismatch".to_string() } else { format!("{:.3e}", s.max_residual) };
        out.push_str(&format!("{:<20} {:>9} {:>8} {:>12}\n", s.suite, s.instances, s.failures, resid));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn registry_covers_every_property() {
        let want: BTreeSet<&str> = [
            "union",
            "up-down",
            "explicit-forms",
            "gershgorin",
            "interlacing",
            "eigvec-support",
            "compound",
            "duality",
            "skeleton",
            "complement",
            "complement-commute",
            "max-eigen",
            "alexander",
            "alexander-spectra",
            "dual-skeleta",
            "join",
            "hodge",
            "gap",
            "extremal",
            "equality-case",
            "link-sum",
            "eig-lower",
            "cohomology",
            "subcomplex",
        ]
        .into_iter()
        .collect();
        let have: BTreeSet<&str> = SUITES.iter().map(|s| s.name).collect();
        assert_eq!(have, want);
        assert_eq!(have.len(), SUITES.len(), "duplicate suite names");
    }

    #[test]
    fn unknown_suite_errors() {
        assert!(matches!(run_suite("nope", 1, 4), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn runs_are_deterministic() {
        let a = serde_json::to_string(&run_suite("duality", 6, 6).unwrap()).unwrap();
        let b = serde_json::to_string(&run_suite("duality", 6, 6).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn every_suite_passes_small() {
        for s in SUITES {
            for seed in 0..4 {
                let r = s.run_one(seed, 5);
                assert!(r.pass, "{} seed {seed}: {:?}", s.name, r.witness);
            }
        }
    }

    #[test]
    fn random_complexes_are_deterministic() {
        let (_, a) = seeded_instance(9, 7);
        let (_, b) = seeded_instance(9, 7);
        assert_eq!(a, b);
    }
}
