//! Eigenvalue multisets with tolerance-aware equality.
//!
//! A [`SpectrumMultiset`] is kept in canonical form: representatives are
//! pairwise farther apart than the effective threshold, each carries a
//! multiplicity, and they are ordered by argument in `[0, 2π)` and then by
//! decreasing modulus.
//!
//! Two constructors exist. [`SpectrumMultiset::from_values`] merges by
//! single linkage at the effective threshold and nothing else; use it for
//! prescribed values. [`SpectrumMultiset::from_computed`] is for solver
//! output: on top of single linkage it recognises the ring of radius
//! `~(ε‖T‖)^{1/m}` into which an `m`-fold defective eigenvalue splits and
//! replaces the ring by its centroid, which is accurate to `O(ε‖T‖)`.

use num_complex::Complex;

use crate::eigen::eigenvalues;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{arg_positive, is_finite, Real};
use crate::tolerance::Tolerance;

/// Largest cluster size recognised as a split defective eigenvalue.
pub const MAX_DEFECT_ORDER: usize = 4;
/// Backward error, in units of machine epsilon, assumed when sizing the
/// ring of a split defective eigenvalue.
const DEFECT_BACKWARD_ULPS: f64 = 1e4;
const DEFECT_RADIUS_FACTOR: f64 = 4.0;

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumMultiset<T> {
    values: Vec<(Complex<T>, usize)>,
    scale: T,
}

impl<T: Real> SpectrumMultiset<T> {
    pub fn empty() -> Self {
        Self {
            values: Vec::new(),
            scale: T::zero(),
        }
    }

    /// Canonical multiset of `values`, each with multiplicity one before
    /// merging.
    pub fn from_values(values: &[Complex<T>], tol: Tolerance<T>) -> Result<Self> {
        let pairs: Vec<_> = values.iter().map(|&z| (z, 1)).collect();
        Self::from_weighted(&pairs, tol)
    }

    /// Canonical multiset from `(value, multiplicity)` pairs.
    pub fn from_weighted(pairs: &[(Complex<T>, usize)], tol: Tolerance<T>) -> Result<Self> {
        check_finite(pairs.iter().map(|p| p.0))?;
        if pairs.iter().any(|p| p.1 == 0) {
            return Err(Error::InvalidParameter("multiplicity must be at least 1".into()));
        }
        let thr = tol.threshold(max_modulus(pairs.iter().map(|p| p.0)));
        Ok(Self::canonical(merge_close(pairs.to_vec(), thr), tol))
    }

    /// Canonical multiset from eigensolver or root-finder output.
    ///
    /// `reference_scale` is the norm of the matrix the values came from; it
    /// sizes the rings recognised as split defective eigenvalues.
    pub fn from_computed(values: &[Complex<T>], tol: Tolerance<T>, reference_scale: T) -> Result<Self> {
        check_finite(values.iter().copied())?;
        if values.is_empty() {
            return Ok(Self::empty());
        }
        let thr = tol.threshold(max_modulus(values.iter().copied()));
        let clusters = divisive_clusters(values, thr, reference_scale);
        let pairs = clusters
            .into_iter()
            .map(|members| {
                let m = members.len();
                let c = members.iter().map(|&i| values[i]).sum::<Complex<T>>() / T::of_usize(m);
                (c, m)
            })
            .collect();
        Ok(Self::canonical(merge_close(pairs, thr), tol))
    }

    fn canonical(mut pairs: Vec<(Complex<T>, usize)>, tol: Tolerance<T>) -> Self {
        // merging can move centroids; iterate to a fixed point
        loop {
            let scale = max_modulus(pairs.iter().map(|p| p.0));
            let before = pairs.len();
            pairs = merge_close(pairs, tol.threshold(scale));
            if pairs.len() == before {
                break;
            }
        }
        pairs.sort_by(|a, b| canonical_order(a.0, b.0));
        let scale = max_modulus(pairs.iter().map(|p| p.0));
        Self { values: pairs, scale }
    }

    /// `(eigenvalue, multiplicity)` pairs in canonical order.
    pub fn values(&self) -> &[(Complex<T>, usize)] {
        &self.values
    }

    /// Largest modulus in the multiset; zero when empty.
    pub fn scale(&self) -> T {
        self.scale
    }

    pub fn distinct_len(&self) -> usize {
        self.values.len()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.values.iter().map(|p| p.1).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Every eigenvalue repeated by its multiplicity, canonical order.
    pub fn expanded(&self) -> Vec<Complex<T>> {
        self.values
            .iter()
            .flat_map(|&(z, m)| std::iter::repeat_n(z, m))
            .collect()
    }

    /// Multiplicity of the representative within threshold of `z`, or 0.
    pub fn multiplicity_of(&self, z: Complex<T>, tol: Tolerance<T>) -> usize {
        let thr = tol.threshold(self.scale.max(z.norm()));
        self.values
            .iter()
            .filter(|p| (p.0 - z).norm() <= thr)
            .map(|p| p.1)
            .sum()
    }

    /// Whether `z` counts as zero at this multiset's scale.
    pub fn is_negligible(&self, z: Complex<T>, tol: Tolerance<T>) -> bool {
        z.norm() <= tol.threshold(self.scale)
    }

    /// Total multiplicity of (numerically) zero eigenvalues.
    pub fn zero_multiplicity(&self, tol: Tolerance<T>) -> usize {
        self.values
            .iter()
            .filter(|p| self.is_negligible(p.0, tol))
            .map(|p| p.1)
            .sum()
    }

    /// The multiset with zero eigenvalues removed. Scale is kept so the
    /// remaining values are still compared at the original magnitude.
    pub fn nonzero_part(&self, tol: Tolerance<T>) -> Self {
        Self {
            values: self
                .values
                .iter()
                .copied()
                .filter(|p| !self.is_negligible(p.0, tol))
                .collect(),
            scale: self.scale,
        }
    }

    /// Every eigenvalue multiplied by `c`; canonical form is preserved up to
    /// reordering.
    pub fn scaled(&self, c: Complex<T>) -> Self {
        let mut values: Vec<_> = self.values.iter().map(|&(z, m)| (z * c, m)).collect();
        values.sort_by(|a, b| canonical_order(a.0, b.0));
        Self {
            values,
            scale: self.scale * c.norm(),
        }
    }

    /// `Σ m_i λ_i^n`.
    pub fn power_sum(&self, n: u32) -> Complex<T> {
        self.values.iter().map(|&(z, m)| z.powu(n) * T::of_usize(m)).sum()
    }

    /// `Σ m_i |λ_i|`.
    pub fn l1_mass(&self) -> T {
        self.values.iter().map(|&(z, m)| z.norm() * T::of_usize(m)).sum()
    }
}

/// Outcome of [`multiset_equal`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matching<T> {
    pub equal: bool,
    /// An eigenvalue left without a partner when `equal` is false.
    pub witness: Option<Complex<T>>,
}

/// Multiplicity-respecting equality of two canonical multisets.
///
/// True iff every eigenvalue unit of `a` can be paired with a distinct unit
/// of `b` within the effective threshold at `max(a.scale, b.scale)`, using
/// up all of `b`. On failure the witness is an unmatched unit of `a` if
/// one exists, else an unmatched unit of `b`.
pub fn multiset_equal<T: Real>(a: &SpectrumMultiset<T>, b: &SpectrumMultiset<T>, tol: Tolerance<T>) -> Matching<T> {
    let thr = tol.threshold(a.scale.max(b.scale));
    let (ua, ub) = (a.expanded(), b.expanded());
    let assignment = match_units(&ua, &ub, thr);
    if let Some(i) = assignment.iter().position(Option::is_none) {
        return Matching {
            equal: false,
            witness: Some(ua[i]),
        };
    }
    if ua.len() != ub.len() {
        let mut used = vec![false; ub.len()];
        for j in assignment.iter().flatten() {
            used[*j] = true;
        }
        let j = used.iter().position(|u| !u).expect("b has spare units");
        return Matching {
            equal: false,
            witness: Some(ub[j]),
        };
    }
    Matching {
        equal: true,
        witness: None,
    }
}

/// Maximum matching of `a` units into `b` units with edges for distance
/// `<= thr`. Greedy nearest-neighbour first; any unit greedy leaves
/// unmatched gets an augmenting-path search, so the result is a maximum
/// matching. Entry `i` is the partner of `a[i]`.
pub(crate) fn match_units<T: Real>(a: &[Complex<T>], b: &[Complex<T>], thr: T) -> Vec<Option<usize>> {
    let mut a_to_b: Vec<Option<usize>> = vec![None; a.len()];
    let mut b_to_a: Vec<Option<usize>> = vec![None; b.len()];
    for (i, &x) in a.iter().enumerate() {
        let best = b
            .iter()
            .enumerate()
            .filter(|(j, _)| b_to_a[*j].is_none())
            .map(|(j, &y)| (j, (x - y).norm()))
            .filter(|&(_, d)| d <= thr)
            .min_by(|p, q| p.1.partial_cmp(&q.1).unwrap_or(std::cmp::Ordering::Equal));
        if let Some((j, _)) = best {
            a_to_b[i] = Some(j);
            b_to_a[j] = Some(i);
        }
    }
    if a_to_b.iter().all(Option::is_some) {
        return a_to_b;
    }
    let adjacency: Vec<Vec<usize>> = a
        .iter()
        .map(|&x| (0..b.len()).filter(|&j| (x - b[j]).norm() <= thr).collect())
        .collect();
    for i in 0..a.len() {
        if a_to_b[i].is_some() || adjacency[i].is_empty() {
            continue;
        }
        let mut visited = vec![false; b.len()];
        augment(i, &adjacency, &mut visited, &mut a_to_b, &mut b_to_a);
    }
    a_to_b
}

fn augment(
    i: usize,
    adjacency: &[Vec<usize>],
    visited: &mut [bool],
    a_to_b: &mut [Option<usize>],
    b_to_a: &mut [Option<usize>],
) -> bool {
    for &j in &adjacency[i] {
        if visited[j] {
            continue;
        }
        visited[j] = true;
        let free = match b_to_a[j] {
            None => true,
            Some(k) => augment(k, adjacency, visited, a_to_b, b_to_a),
        };
        if free {
            a_to_b[i] = Some(j);
            b_to_a[j] = Some(i);
            return true;
        }
    }
    false
}

/// Eigenvalues of `t` as a canonical multiset; total multiplicity equals
/// `t.dim()`.
pub fn spectrum_of<T: Real>(t: &Matrix<T>, tol: Tolerance<T>) -> Result<SpectrumMultiset<T>> {
    let eig = eigenvalues(t)?;
    let reference = t.frobenius_norm().max(max_modulus(eig.iter().copied()));
    SpectrumMultiset::from_computed(&eig, tol, reference)
}

pub(crate) fn canonical_order<T: Real>(a: Complex<T>, b: Complex<T>) -> std::cmp::Ordering {
    let key = |z: Complex<T>| (arg_positive(z), -z.norm());
    let (ka, kb) = (key(a), key(b));
    ka.0.partial_cmp(&kb.0)
        .unwrap_or(std::cmp::Ordering::Equal)
        .then(ka.1.partial_cmp(&kb.1).unwrap_or(std::cmp::Ordering::Equal))
}

fn max_modulus<T: Real>(values: impl Iterator<Item = Complex<T>>) -> T {
    values.map(|z| z.norm()).fold(T::zero(), T::max)
}

fn check_finite<T: Real>(mut values: impl Iterator<Item = Complex<T>>) -> Result<()> {
    match values.position(|z| !is_finite(z)) {
        Some(k) => Err(Error::NonFinite(format!("eigenvalue {k}"))),
        None => Ok(()),
    }
}

/// Single-linkage merge of weighted points at `thr`; each cluster becomes
/// its weighted centroid.
fn merge_close<T: Real>(pairs: Vec<(Complex<T>, usize)>, thr: T) -> Vec<(Complex<T>, usize)> {
    let n = pairs.len();
    let mut uf = UnionFind::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if (pairs[i].0 - pairs[j].0).norm() <= thr {
                uf.union(i, j);
            }
        }
    }
    let mut acc: Vec<Option<(Complex<T>, usize)>> = vec![None; n];
    for (i, &(z, m)) in pairs.iter().enumerate() {
        let r = uf.find(i);
        let w = T::of_usize(m);
        acc[r] = Some(match acc[r] {
            None => (z * w, m),
            Some((s, k)) => (s + z * w, k + m),
        });
    }
    acc.into_iter()
        .flatten()
        .map(|(s, m)| (s / T::of_usize(m), m))
        .collect()
}

/// Divisive single linkage over the minimum spanning tree of `points`.
///
/// A component is kept whole if its spanning-tree edges are all within
/// `thr`, or if it has at most [`MAX_DEFECT_ORDER`] members lying within
/// the defective-ring radius of their centroid. Otherwise its longest
/// edge is cut and both halves are examined.
fn divisive_clusters<T: Real>(points: &[Complex<T>], thr: T, reference: T) -> Vec<Vec<usize>> {
    let edges = minimum_spanning_tree(points);
    let mut out = Vec::new();
    let mut stack = vec![((0..points.len()).collect::<Vec<_>>(), edges)];
    while let Some((members, edges)) = stack.pop() {
        if accept_cluster(points, &members, &edges, thr, reference) {
            out.push(members);
            continue;
        }
        let (cut, _) = edges
            .iter()
            .enumerate()
            .max_by(|p, q| {
                p.1 .2
                    .partial_cmp(&q.1 .2)
                    .unwrap_or(std::cmp::Ordering::Equal)
                    .then(q.0.cmp(&p.0))
            })
            .expect("a rejected cluster has an edge");
        let rest: Vec<_> = edges
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != cut)
            .map(|(_, e)| *e)
            .collect();
        let mut uf = UnionFind::new(points.len());
        for &(u, v, _) in &rest {
            uf.union(u, v);
        }
        let root = uf.find(edges[cut].0);
        let (left, right): (Vec<usize>, Vec<usize>) = members.iter().partition(|&&i| uf.find(i) == root);
        let (le, re): (Vec<_>, Vec<_>) = rest.into_iter().partition(|e| uf.find(e.0) == root);
        stack.push((right, re));
        stack.push((left, le));
    }
    out.sort_by_key(|m| m[0]);
    out
}

fn accept_cluster<T: Real>(
    points: &[Complex<T>],
    members: &[usize],
    edges: &[(usize, usize, T)],
    thr: T,
    reference: T,
) -> bool {
    if edges.iter().all(|e| e.2 <= thr) {
        return true;
    }
    let m = members.len();
    if m > MAX_DEFECT_ORDER {
        return false;
    }
    let centroid = members.iter().map(|&i| points[i]).sum::<Complex<T>>() / T::of_usize(m);
    let spread = members
        .iter()
        .map(|&i| (points[i] - centroid).norm())
        .fold(T::zero(), T::max);
    spread <= defect_radius(m, reference)
}

/// Radius of the ring an `m`-fold defective eigenvalue of a matrix with
/// norm `reference` is expected to split into.
pub fn defect_radius<T: Real>(m: usize, reference: T) -> T {
    let u = T::of(DEFECT_BACKWARD_ULPS) * T::epsilon();
    T::of(DEFECT_RADIUS_FACTOR) * reference * u.powf(T::one() / T::of_usize(m))
}

/// Prim's algorithm on the complete Euclidean graph.
fn minimum_spanning_tree<T: Real>(points: &[Complex<T>]) -> Vec<(usize, usize, T)> {
    let n = points.len();
    let mut in_tree = vec![false; n];
    let mut best: Vec<(T, usize)> = vec![(T::infinity(), 0); n];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    if n == 0 {
        return edges;
    }
    in_tree[0] = true;
    for j in 1..n {
        best[j] = ((points[0] - points[j]).norm(), 0);
    }
    for _ in 1..n {
        let next = (0..n)
            .filter(|&j| !in_tree[j])
            .min_by(|&x, &y| best[x].0.partial_cmp(&best[y].0).unwrap_or(std::cmp::Ordering::Equal))
            .expect("vertices remain");
        in_tree[next] = true;
        edges.push((best[next].1, next, best[next].0));
        for j in 0..n {
            if !in_tree[j] {
                let d = (points[next] - points[j]).norm();
                if d < best[j].0 {
                    best[j] = (d, next);
                }
            }
        }
    }
    edges
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, i: usize) -> usize {
        let mut r = i;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut k = i;
        while self.parent[k] != r {
            let next = self.parent[k];
            self.parent[k] = r;
            k = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

impl<T: Real> Default for SpectrumMultiset<T> {
    fn default() -> Self {
        Self::empty()
    }
}
