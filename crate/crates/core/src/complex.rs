//! Finite abstract simplicial complexes over an ordered vertex list.
//!
//! Faces are strictly increasing index tuples into the vertex list. Per
//! dimension they are kept in lexicographic order, which fixes the row and
//! column layout of every assembled operator.

use std::collections::{HashMap, HashSet};

use itertools::Itertools;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Sorted vertex-index tuple.
pub type Face = Vec<usize>;

/// Largest supported vertex count; faces are also tracked as `u64` bitmasks.
pub const MAX_VERTICES: usize = 63;

pub(crate) fn mask_of(face: &[usize]) -> u64 {
    face.iter().fold(0u64, |m, &v| m | (1u64 << v))
}

pub(crate) fn face_of(mask: u64) -> Face {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        out.push(v);
        m &= m - 1;
    }
    out
}

pub(crate) fn face_label(labels: &[String], face: &[usize]) -> String {
    format!("{{{}}}", face.iter().map(|&v| labels[v].as_str()).join(","))
}

/// All `size`-subsets of `0..n` in lexicographic order.
pub fn binomial_basis(n: usize, size: usize) -> Vec<Face> {
    (0..n).combinations(size).collect()
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Signed binomial used where the lower index may be negative or exceed `n`.
pub fn binomial_i(n: usize, k: isize) -> usize {
    if k < 0 {
        0
    } else {
        binomial(n, k as usize) as usize
    }
}

#[derive(Clone, Debug)]
pub struct Complex {
    labels: Vec<String>,
    /// `faces[k + 1]` holds the k-faces, sorted.
    faces: Vec<Vec<Face>>,
    /// bitmask -> position within its dimension
    index: HashMap<u64, usize>,
    void: bool,
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.void == other.void && self.faces == other.faces
    }
}
impl Eq for Complex {}

impl Complex {
    fn check_labels(labels: &[String]) -> Result<()> {
        if labels.len() > MAX_VERTICES {
            return Err(Error::InvalidParameter(format!(
                "at most {MAX_VERTICES} vertices are supported"
            )));
        }
        let mut seen = HashSet::new();
        for l in labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(())
    }

    pub(crate) fn from_masks(labels: Vec<String>, masks: HashSet<u64>) -> Complex {
        let mut by_dim: Vec<Vec<Face>> = Vec::new();
        for &m in &masks {
            let size = m.count_ones() as usize;
            if by_dim.len() <= size {
                by_dim.resize(size + 1, Vec::new());
            }
            by_dim[size].push(face_of(m));
        }
        let mut index = HashMap::with_capacity(masks.len());
        for layer in by_dim.iter_mut() {
            layer.sort_unstable();
            for (i, f) in layer.iter().enumerate() {
                index.insert(mask_of(f), i);
            }
        }
        Complex { labels, faces: by_dim, index, void: false }
    }

    /// Downward closure of the given index sets, always containing the empty face.
    pub fn from_generators<I, F>(labels: Vec<String>, generators: I) -> Result<Complex>
    where
        I: IntoIterator<Item = F>,
        F: AsRef<[usize]>,
    {
        Self::check_labels(&labels)?;
        let n = labels.len();
        let mut seen: HashSet<u64> = HashSet::new();
        seen.insert(0);
        let mut stack = Vec::new();
        for g in generators {
            let g = g.as_ref();
            if let Some(&bad) = g.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidParameter(format!("vertex index {bad} out of range")));
            }
            let m = mask_of(g);
            if seen.insert(m) {
                stack.push(m);
            }
        }
        while let Some(m) = stack.pop() {
            let mut rest = m;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest ^= bit;
                let sub = m ^ bit;
                if seen.insert(sub) {
                    stack.push(sub);
                }
            }
        }
        Ok(Self::from_masks(labels, seen))
    }

    /// Closure of labelled facets; every listed vertex becomes a 0-face.
    pub fn from_facets<S: AsRef<str>>(vertices: &[S], facets: &[Vec<S>]) -> Result<Complex> {
        let labels: Vec<String> = vertices.iter().map(|s| s.as_ref().to_string()).collect();
        Self::check_labels(&labels)?;
        let pos: HashMap<&str, usize> =
            labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let mut gens: Vec<Face> = (0..labels.len()).map(|v| vec![v]).collect();
        for facet in facets {
            let mut f = Vec::with_capacity(facet.len());
            for l in facet {
                let l = l.as_ref();
                f.push(*pos.get(l).ok_or_else(|| Error::UnknownLabel(l.to_string()))?);
            }
            f.sort_unstable();
            f.dedup();
            gens.push(f);
        }
        Self::from_generators(labels, gens)
    }

    /// The complex with no faces at all, not even the empty one.
    pub fn void(labels: Vec<String>) -> Result<Complex> {
        Self::check_labels(&labels)?;
        Ok(Complex { labels, faces: Vec::new(), index: HashMap::new(), void: true })
    }

    pub fn simplex_labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("v{i}")).collect()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn is_void(&self) -> bool {
        self.void
    }

    /// Largest k with a k-face; −1 for `{∅}` and −2 for the void complex.
    pub fn dim(&self) -> isize {
        self.faces.len() as isize - 2
    }

    /// k-faces in canonical order; empty slice when k is outside −1..=dim.
    pub fn faces(&self, k: isize) -> &[Face] {
        let slot = k + 1;
        if slot < 0 || slot as usize >= self.faces.len() {
            &[]
        } else {
            &self.faces[slot as usize]
        }
    }

    pub fn f(&self, k: isize) -> usize {
        self.faces(k).len()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    pub fn num_faces(&self) -> usize {
        self.index.len()
    }

    pub fn contains(&self, face: &[usize]) -> bool {
        self.index.contains_key(&mask_of(face))
    }

    pub(crate) fn contains_mask(&self, mask: u64) -> bool {
        self.index.contains_key(&mask)
    }

    /// Row index of a face within its dimension.
    pub fn position(&self, face: &[usize]) -> Option<usize> {
        self.index.get(&mask_of(face)).copied()
    }

    pub(crate) fn position_mask(&self, mask: u64) -> Option<usize> {
        self.index.get(&mask).copied()
    }

    pub fn all_faces(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().flatten()
    }

    /// Vertices that are 0-faces.
    pub fn vertex_support(&self) -> Vec<usize> {
        self.faces(0).iter().map(|f| f[0]).collect()
    }

    /// Inclusion-maximal faces.
    pub fn facets(&self) -> Vec<Face> {
        let mut out = Vec::new();
        for f in self.all_faces() {
            let m = mask_of(f);
            let maximal = (0..self.n())
                .filter(|v| m & (1u64 << v) == 0)
                .all(|v| !self.contains_mask(m | (1u64 << v)));
            if maximal {
                out.push(f.clone());
            }
        }
        out
    }

    pub fn label_of(&self, face: &[usize]) -> String {
        face_label(&self.labels, face)
    }

    pub fn vertex_index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    fn require(&self, face: &[usize]) -> Result<()> {
        if self.contains(face) {
            Ok(())
        } else {
            Err(Error::FaceNotInComplex(self.label_of(face)))
        }
    }

    /// lk(σ) = {v ∉ σ : σ ∪ {v} ∈ X}.
    pub fn link(&self, sigma: &[usize]) -> Result<Vec<usize>> {
        self.require(sigma)?;
        Ok(self.link_unchecked(sigma))
    }

    pub(crate) fn link_unchecked(&self, sigma: &[usize]) -> Vec<usize> {
        let m = mask_of(sigma);
        (0..self.n())
            .filter(|&v| m & (1u64 << v) == 0 && self.contains_mask(m | (1u64 << v)))
            .collect()
    }

    /// Non-faces whose proper subsets are all faces.
    pub fn missing_faces(&self) -> Result<Vec<Face>> {
        if self.void {
            return Err(Error::VoidComplex);
        }
        let n = self.n();
        let mut out = Vec::new();
        // every missing face is some face plus one vertex above its maximum
        for tau in self.all_faces() {
            let start = tau.last().map_or(0, |&v| v + 1);
            let tm = mask_of(tau);
            for v in start..n {
                let m = tm | (1u64 << v);
                if self.contains_mask(m) {
                    continue;
                }
                let closed = tau.iter().all(|&u| self.contains_mask(m ^ (1u64 << u)));
                if closed {
                    out.push(face_of(m));
                }
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(out)
    }

    /// Largest dimension of a missing face, `None` for the full simplex.
    pub fn h(&self) -> Result<Option<usize>> {
        Ok(self.missing_faces()?.iter().map(|f| f.len() - 1).max())
    }

    /// (N_σ(v), M_σ(v)) for σ ∈ X(k), k ≥ 0, v ∉ σ.
    pub fn n_sets(&self, sigma: &[usize], v: usize) -> Result<(Vec<Face>, Vec<usize>)> {
        self.require(sigma)?;
        if sigma.is_empty() {
            return Err(Error::InvalidParameter("σ must have dimension ≥ 0".into()));
        }
        if sigma.contains(&v) {
            return Err(Error::VertexInFace(v));
        }
        Ok(self.n_sets_unchecked(sigma, v))
    }

    fn n_sets_unchecked(&self, sigma: &[usize], v: usize) -> (Vec<Face>, Vec<usize>) {
        let m = mask_of(sigma);
        let mut ns = Vec::new();
        let mut ms = Vec::new();
        for &w in sigma {
            let eta = m ^ (1u64 << w);
            if self.contains_mask(eta | (1u64 << v)) {
                ns.push(face_of(eta));
                ms.push(w);
            }
        }
        (ns, ms)
    }

    /// σ[j] for j = 0..=k+1, partitioning ∩_{v∈σ} lk(v) ∖ lk(σ) by |N_σ(u)|.
    pub fn sigma_classes(&self, sigma: &[usize]) -> Result<Vec<Vec<usize>>> {
        self.require(sigma)?;
        if sigma.is_empty() {
            return Err(Error::InvalidParameter("σ must have dimension ≥ 0".into()));
        }
        let m = mask_of(sigma);
        let mut classes = vec![Vec::new(); sigma.len() + 1];
        for u in 0..self.n() {
            if m & (1u64 << u) != 0 || self.contains_mask(m | (1u64 << u)) {
                continue;
            }
            let adjacent = sigma.iter().all(|&v| self.contains_mask((1u64 << v) | (1u64 << u)));
            if !adjacent {
                continue;
            }
            let (ns, _) = self.n_sets_unchecked(sigma, u);
            classes[ns.len()].push(u);
        }
        Ok(classes)
    }

    fn filtered<P: Fn(&Face) -> bool>(&self, keep: P) -> Complex {
        if self.void {
            return self.clone();
        }
        let masks: HashSet<u64> = self.all_faces().filter(|f| keep(f)).map(|f| mask_of(f)).collect();
        Self::from_masks(self.labels.clone(), masks)
    }

    /// Faces of dimension at most p.
    pub fn skeleton(&self, p: isize) -> Complex {
        self.filtered(|f| (f.len() as isize) <= p + 1)
    }

    /// X[U], keeping the full vertex list so indices stay comparable.
    pub fn induced(&self, u: &[usize]) -> Complex {
        let um = mask_of(u);
        self.filtered(|f| mask_of(f) & !um == 0)
    }

    /// X[U] relabelled onto the vertices of U alone.
    pub fn induced_compact(&self, u: &[usize]) -> Result<Complex> {
        let mut u = u.to_vec();
        u.sort_unstable();
        u.dedup();
        let pos: HashMap<usize, usize> = u.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let labels = u.iter().map(|&v| self.labels[v].clone()).collect();
        let gens: Vec<Face> = self
            .all_faces()
            .filter(|f| f.iter().all(|v| pos.contains_key(v)))
            .map(|f| f.iter().map(|v| pos[v]).collect())
            .collect();
        Self::from_generators(labels, gens)
    }

    pub fn delete_face(&self, sigma: &[usize]) -> Result<Complex> {
        self.require(sigma)?;
        let m = mask_of(sigma);
        if !self.link_unchecked(sigma).is_empty() {
            return Err(Error::NotMaximal(self.label_of(sigma)));
        }
        Ok(self.filtered(|f| mask_of(f) != m))
    }

    pub fn underlying_graph(&self) -> Complex {
        self.skeleton(1)
    }

    /// Neighbours of v in G_X.
    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        if !self.contains(&[v]) {
            return Vec::new();
        }
        self.link_unchecked(&[v])
    }

    /// Clique complex of the underlying graph, on the same vertex list.
    pub fn clique_complex_of_graph(&self) -> Complex {
        let n = self.n();
        let adj: Vec<u64> = (0..n)
            .map(|v| self.neighbours(v).iter().fold(0u64, |m, &u| m | (1u64 << u)))
            .collect();
        let mut masks: HashSet<u64> = HashSet::new();
        if self.void {
            return self.clone();
        }
        masks.insert(0);
        // grow cliques one vertex at a time, always appending larger indices
        let mut frontier: Vec<(u64, u64)> = self
            .vertex_support()
            .into_iter()
            .map(|v| (1u64 << v, adj[v] & !((2u64 << v) - 1)))
            .collect();
        while let Some((m, cand)) = frontier.pop() {
            masks.insert(m);
            let mut c = cand;
            while c != 0 {
                let u = c.trailing_zeros() as usize;
                c &= c - 1;
                frontier.push((m | (1u64 << u), cand & adj[u] & !((2u64 << u) - 1)));
            }
        }
        Self::from_masks(self.labels.clone(), masks)
    }

    pub fn is_clique_complex(&self) -> bool {
        !self.void && self.clique_complex_of_graph() == *self
    }

    /// Whether every face of `other` (same vertex list) is a face of `self`.
    pub fn contains_complex(&self, other: &Complex) -> bool {
        self.labels == other.labels && other.all_faces().all(|f| self.contains(f))
    }

    /// Re-index `other` onto this complex's vertex list by label.
    pub fn reindex(&self, other: &Complex) -> Result<Complex> {
        let map: Vec<usize> = other
            .labels
            .iter()
            .map(|l| self.vertex_index(l))
            .collect::<Result<_>>()?;
        if other.void {
            return Self::void(self.labels.clone());
        }
        let gens: Vec<Face> = other
            .all_faces()
            .map(|f| {
                let mut g: Face = f.iter().map(|&v| map[v]).collect();
                g.sort_unstable();
                g
            })
            .collect();
        Self::from_generators(self.labels.clone(), gens)
    }
}

/// Random complex on `n` vertices: each (k+1)-subset is a facet with probability
/// `density`, then closed downward; all vertices are 0-faces. Uses ChaCha8 seeded
/// from the 64-bit seed.
pub fn random_complex(n: usize, k: usize, density: f64, seed: u64) -> Result<Complex> {
    if n == 0 || k >= n {
        return Err(Error::InvalidParameter(format!("need 0 ≤ k < n, got k={k}, n={n}")));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidParameter(format!("density {density} not in [0,1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gens: Vec<Face> = (0..n).map(|v| vec![v]).collect();
    for f in (0..n).combinations(k + 1) {
        if rng.random::<f64>() < density {
            gens.push(f);
        }
    }
    Complex::from_generators(Complex::simplex_labels(n), gens)
}

/// (−1)^ε where ε counts shared vertices strictly between the two differing ones.
pub fn sign_eps(sigma: &[usize], tau: &[usize]) -> Result<i32> {
    if sigma.len() != tau.len() {
        return Err(Error::NotAdjacent(format!("{sigma:?}"), format!("{tau:?}")));
    }
    let sm = mask_of(sigma);
    let tm = mask_of(tau);
    let (a, b) = (sm & !tm, tm & !sm);
    if a.count_ones() != 1 || b.count_ones() != 1 {
        return Err(Error::NotAdjacent(format!("{sigma:?}"), format!("{tau:?}")));
    }
    Ok(sign_between(sm & tm, a, b))
}

/// Sign for the shared mask and the two single-bit differing masks.
#[inline]
pub(crate) fn sign_between(shared: u64, a: u64, b: u64) -> i32 {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    // bits strictly between lo and hi
    let between = (hi - 1) & !(lo | (lo - 1));
    if (shared & between).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// (−1)^{j−1} for a 1-based removal position j.
pub fn boundary_sign(sigma: &[usize], j: usize) -> Result<i32> {
    if j == 0 || j > sigma.len() {
        return Err(Error::PositionOutOfRange(j, sigma.len()));
    }
    Ok(if j % 2 == 1 { 1 } else { -1 })
}
