//! Preference-based systems and the ranking algebra.
//!
//! Every query takes 1-based node labels. Preferences are strict total orders:
//! for edge-mark kinds, a node ranks its candidates by the lexicographic key
//! `(mark, min(i, j), max(i, j))`, so equal marks are broken towards the lower
//! label on both endpoints and the tie-broken marks stay symmetric.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{invalid, Error, Result};

/// Norm used to combine per-coordinate torus offsets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Norm {
    /// Sum of coordinate offsets.
    #[default]
    Taxicab,
    /// Largest coordinate offset.
    Max,
}

impl Norm {
    pub fn name(self) -> &'static str {
        match self {
            Norm::Taxicab => "taxicab",
            Norm::Max => "max",
        }
    }

    /// Largest possible distance between two points of the unit `dim`-torus.
    pub fn diameter(self, dim: usize) -> f64 {
        match self {
            Norm::Taxicab => 0.5 * dim as f64,
            Norm::Max => 0.5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PreferenceKind {
    /// Intrinsic node values; label 1 is globally best.
    NodeBased,
    /// Uniform points on the unit `dim`-torus, marks are torus distances.
    Geometric { dim: usize, norm: Norm },
    /// Independent uniform marks on every pair.
    RandomAcyclic,
    /// Marks read from a user-supplied (latency) matrix.
    ExternalMatrix,
}

impl PreferenceKind {
    pub fn name(&self) -> &'static str {
        match self {
            PreferenceKind::NodeBased => "node",
            PreferenceKind::Geometric { .. } => "torus",
            PreferenceKind::RandomAcyclic => "acyclic",
            PreferenceKind::ExternalMatrix => "matrix",
        }
    }
}

/// Symmetric matrix with an empty diagonal, packed as its strict upper triangle.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            data: alloc::vec![0.0; n * n.saturating_sub(1) / 2],
        }
    }

    /// Builds the matrix from `f(i, j)` evaluated on 0-based pairs `i < j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in (i + 1)..n {
                data.push(f(i, j));
            }
        }
        SymMatrix { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn slot(&self, i: usize, j: usize) -> usize {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        debug_assert!(a != b && b < self.n);
        a * (2 * self.n - a - 1) / 2 + (b - a - 1)
    }

    /// Entry for 0-based `i != j`.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[self.slot(i, j)]
    }

    /// Sets both `(i, j)` and `(j, i)`; 0-based, `i != j`.
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        let s = self.slot(i, j);
        self.data[s] = value;
    }

    /// Restriction to the given 0-based rows/columns, in that order.
    pub fn restrict(&self, keep: &[usize]) -> SymMatrix {
        SymMatrix::from_fn(keep.len(), |a, b| self.get(keep[a], keep[b]))
    }
}

/// Mark storage. Node-based marks are the labels themselves and are never
/// materialized.
#[derive(Debug, Clone, PartialEq)]
pub enum Marks {
    Labels,
    Points {
        dim: usize,
        norm: Norm,
        /// Row-major `N x dim` coordinates in `[0, 1)`.
        coords: Vec<f64>,
    },
    Matrix(SymMatrix),
}

/// Per-coordinate wrapped offset on the unit circle.
#[inline]
pub fn torus_offset(a: f64, b: f64) -> f64 {
    let d = libm::fabs(a - b);
    if d > 0.5 {
        1.0 - d
    } else {
        d
    }
}

/// Distance between two points of the unit torus under `norm`.
pub fn torus_distance(a: &[f64], b: &[f64], norm: Norm) -> f64 {
    let offsets = a.iter().zip(b).map(|(&x, &y)| torus_offset(x, y));
    match norm {
        Norm::Taxicab => offsets.sum(),
        Norm::Max => offsets.fold(0.0, f64::max),
    }
}

/// Undirected, loop-free acceptance graph in compressed adjacency form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcceptanceGraph {
    n: usize,
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
}

impl AcceptanceGraph {
    /// Builds the graph from 0-based pairs. Self-loops and out-of-range
    /// endpoints are rejected; duplicate pairs are collapsed.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut degree = alloc::vec![0usize; n];
        for &(i, j) in edges {
            if i == j {
                return Err(invalid(alloc::format!("self-loop on node {}", i + 1)));
            }
            if i >= n || j >= n {
                return Err(Error::NodeOutOfRange {
                    node: i.max(j) + 1,
                    n,
                });
            }
            degree[i] += 1;
            degree[j] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets.clone();
        let mut neighbors = alloc::vec![0u32; offsets[n]];
        for &(i, j) in edges {
            neighbors[fill[i]] = j as u32;
            fill[i] += 1;
            neighbors[fill[j]] = i as u32;
            fill[j] += 1;
        }
        let mut graph = AcceptanceGraph {
            n,
            offsets,
            neighbors,
        };
        graph.sort_and_dedup();
        Ok(graph)
    }

    fn sort_and_dedup(&mut self) {
        let mut offsets = Vec::with_capacity(self.n + 1);
        let mut neighbors = Vec::with_capacity(self.neighbors.len());
        offsets.push(0);
        for i in 0..self.n {
            let row = &mut self.neighbors[self.offsets[i]..self.offsets[i + 1]];
            row.sort_unstable();
            let start = neighbors.len();
            for &v in row.iter() {
                if neighbors.len() == start || *neighbors.last().unwrap() != v {
                    neighbors.push(v);
                }
            }
            offsets.push(neighbors.len());
        }
        self.offsets = offsets;
        self.neighbors = neighbors;
    }

    pub fn empty(n: usize) -> Self {
        AcceptanceGraph {
            n,
            offsets: alloc::vec![0; n + 1],
            neighbors: Vec::new(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in (i + 1)..n {
                edges.push((i, j));
            }
        }
        Self::from_edges(n, &edges).expect("complete graph is well formed")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    /// Sorted 0-based neighbors of 0-based node `i`.
    #[inline]
    pub fn neighbors(&self, i: usize) -> &[u32] {
        &self.neighbors[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    /// 0-based adjacency test.
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        let (a, b) = if self.degree(i) <= self.degree(j) {
            (i, j)
        } else {
            (j, i)
        };
        self.neighbors(a).binary_search(&(b as u32)).is_ok()
    }

    /// Edges as 0-based pairs `(i, j)` with `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| {
            self.neighbors(i)
                .iter()
                .map(|&j| j as usize)
                .filter(move |&j| j > i)
                .map(move |j| (i, j))
        })
    }
}

/// Totally ordered preference key of an unordered pair.
///
/// For a fixed node `i`, `key(i, j) < key(i, k)` iff `i` prefers `j` to `k`,
/// and `key(i, j) == key(j, i)`. Edge-mark kinds use `(mark, min, max)`;
/// node-based systems use the composite `N * min + max` on 1-based labels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeKey {
    pub mark: f64,
    pub lo: u32,
    pub hi: u32,
}

impl Eq for EdgeKey {}

impl PartialOrd for EdgeKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for EdgeKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.mark
            .total_cmp(&other.mark)
            .then(self.lo.cmp(&other.lo))
            .then(self.hi.cmp(&other.hi))
    }
}

/// A preference-based system `(G, m, b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    n: usize,
    quota: Vec<u32>,
    kind: PreferenceKind,
    marks: Marks,
    acceptance: AcceptanceGraph,
    edge_prob: Option<f64>,
}

impl Instance {
    /// Assembles and validates an instance.
    pub fn new(
        kind: PreferenceKind,
        marks: Marks,
        acceptance: AcceptanceGraph,
        quota: Vec<u32>,
    ) -> Result<Self> {
        let n = acceptance.n();
        if n < 2 {
            return Err(invalid("an instance needs at least 2 nodes"));
        }
        if quota.len() != n {
            return Err(invalid(alloc::format!(
                "quota vector has {} entries for {n} nodes",
                quota.len()
            )));
        }
        if quota.contains(&0) {
            return Err(invalid("quotas must be positive"));
        }
        match (&kind, &marks) {
            (PreferenceKind::NodeBased, Marks::Labels) => {}
            (
                PreferenceKind::Geometric { dim, norm },
                Marks::Points {
                    dim: d,
                    norm: m,
                    coords,
                },
            ) => {
                if dim != d || norm != m || *dim == 0 || coords.len() != n * dim {
                    return Err(invalid("point coordinates do not match the torus kind"));
                }
                if coords.iter().any(|c| !(0.0..1.0).contains(c)) {
                    return Err(invalid("torus coordinates must lie in [0, 1)"));
                }
            }
            (PreferenceKind::RandomAcyclic | PreferenceKind::ExternalMatrix, Marks::Matrix(m)) => {
                if m.n() != n {
                    return Err(invalid("mark matrix size differs from the node count"));
                }
                if m.data.iter().any(|v| v.is_nan() || *v == f64::NEG_INFINITY) {
                    return Err(invalid("marks must not be NaN or negative infinity"));
                }
            }
            _ => {
                return Err(Error::KindMismatch(alloc::format!(
                    "{} preferences cannot use these marks",
                    kind.name()
                )))
            }
        }
        Ok(Instance {
            n,
            quota,
            kind,
            marks,
            acceptance,
            edge_prob: None,
        })
    }

    /// Records the Erdős–Rényi edge probability the graph was drawn with.
    pub fn with_edge_prob(mut self, p: f64) -> Self {
        self.edge_prob = Some(p);
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> PreferenceKind {
        self.kind
    }

    pub fn marks(&self) -> &Marks {
        &self.marks
    }

    pub fn acceptance(&self) -> &AcceptanceGraph {
        &self.acceptance
    }

    pub fn quotas(&self) -> &[u32] {
        &self.quota
    }

    /// Quota of 1-based node `i`.
    pub fn quota(&self, i: usize) -> Result<u32> {
        self.check(i)?;
        Ok(self.quota[i - 1])
    }

    pub fn edge_prob(&self) -> Option<f64> {
        self.edge_prob
    }

    /// Expected acceptance degree `d = p (N - 1)`, when `p` is known.
    pub fn expected_degree(&self) -> Option<f64> {
        self.edge_prob.map(|p| p * (self.n - 1) as f64)
    }

    fn check(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            Err(Error::NodeOutOfRange { node: i, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Raw mark `m(i, j)` on 0-based indices. Node-based marks are labels.
    #[inline]
    pub(crate) fn mark0(&self, i: usize, j: usize) -> f64 {
        match &self.marks {
            Marks::Labels => (j + 1) as f64,
            Marks::Points { dim, norm, coords } => torus_distance(
                &coords[i * dim..(i + 1) * dim],
                &coords[j * dim..(j + 1) * dim],
                *norm,
            ),
            Marks::Matrix(m) => m.get(i, j),
        }
    }

    /// Mark `m(i, j)` on 1-based labels.
    pub fn mark(&self, i: usize, j: usize) -> Result<f64> {
        self.check(i)?;
        self.check(j)?;
        if i == j {
            return Err(Error::Reflexive { node: i });
        }
        Ok(self.mark0(i - 1, j - 1))
    }

    /// Torus distance between the points of two geometric nodes (1-based).
    pub fn distance(&self, i: usize, j: usize) -> Result<f64> {
        match self.marks {
            Marks::Points { .. } => self.mark(i, j),
            _ => Err(Error::KindMismatch(
                "distances need geometric preferences".into(),
            )),
        }
    }

    /// Preference key of the 0-based pair `{i, j}`.
    #[inline]
    pub(crate) fn key0(&self, i: usize, j: usize) -> EdgeKey {
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        let (lo, hi) = (lo as u32 + 1, hi as u32 + 1);
        let mark = match &self.marks {
            Marks::Labels => (self.n as u64 * lo as u64 + hi as u64) as f64,
            _ => self.mark0(i, j),
        };
        EdgeKey { mark, lo, hi }
    }

    /// 0-based strict preference of `i` for `j` over `k`.
    #[inline]
    pub(crate) fn prefers0(&self, i: usize, j: usize, k: usize) -> bool {
        match self.marks {
            Marks::Labels => j < k,
            _ => self.key0(i, j) < self.key0(i, k),
        }
    }

    /// Whether node `i` ranks `j` strictly better than `k`.
    pub fn prefers(&self, i: usize, j: usize, k: usize) -> Result<bool> {
        self.check(i)?;
        self.check(j)?;
        self.check(k)?;
        if j == i || k == i {
            return Err(Error::Reflexive { node: i });
        }
        Ok(self.prefers0(i - 1, j - 1, k - 1))
    }

    /// 0-based complete rank, returned 1-based.
    pub(crate) fn complete_rank0(&self, i: usize, j: usize) -> usize {
        match self.marks {
            Marks::Labels => {
                if j < i {
                    j + 1
                } else {
                    j
                }
            }
            _ => {
                let target = self.key0(i, j);
                1 + (0..self.n)
                    .filter(|&k| k != i && k != j && self.key0(i, k) < target)
                    .count()
            }
        }
    }

    /// Rank `R_i(j)` of `j` in `i`'s preference over all other nodes, in
    /// `1..=N-1`.
    pub fn complete_rank(&self, i: usize, j: usize) -> Result<usize> {
        self.check(i)?;
        self.check(j)?;
        if i == j {
            return Err(Error::Reflexive { node: i });
        }
        Ok(self.complete_rank0(i - 1, j - 1))
    }

    /// 0-based acceptable rank of an accepted neighbor, returned 1-based.
    pub(crate) fn acceptable_rank0(&self, i: usize, j: usize) -> usize {
        1 + self
            .acceptance
            .neighbors(i)
            .iter()
            .filter(|&&k| k as usize != j && self.prefers0(i, k as usize, j))
            .count()
    }

    /// Rank `r_i(j)` of `j` among `i`'s acceptance-graph neighbors, or `None`
    /// when `{i, j}` is not acceptable.
    pub fn acceptable_rank(&self, i: usize, j: usize) -> Result<Option<usize>> {
        self.check(i)?;
        self.check(j)?;
        if i == j {
            return Err(Error::Reflexive { node: i });
        }
        if !self.acceptance.has_edge(i - 1, j - 1) {
            return Ok(None);
        }
        Ok(Some(self.acceptable_rank0(i - 1, j - 1)))
    }

    /// Whether `{i, j}` (1-based) is an acceptance edge.
    pub fn is_acceptable(&self, i: usize, j: usize) -> Result<bool> {
        self.check(i)?;
        self.check(j)?;
        Ok(i != j && self.acceptance.has_edge(i - 1, j - 1))
    }
}

/// A b-matching: for each node, its mates ordered best-first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    mates: Vec<Vec<u32>>,
}

impl Configuration {
    pub fn unmatched(n: usize) -> Self {
        Configuration {
            mates: alloc::vec![Vec::new(); n],
        }
    }

    /// Builds a configuration from 1-based pairs, ordering every mate list by
    /// the instance's preferences. Quota and acceptance are not checked here;
    /// [`crate::verify_stability`] reports violations.
    pub fn from_pairs(instance: &Instance, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = instance.n();
        let mut mates = alloc::vec![Vec::new(); n];
        for &(i, j) in pairs {
            instance.check(i)?;
            instance.check(j)?;
            if i == j {
                return Err(Error::Reflexive { node: i });
            }
            mates[i - 1].push((j - 1) as u32);
            mates[j - 1].push((i - 1) as u32);
        }
        for (i, list) in mates.iter_mut().enumerate() {
            list.sort_by_key(|&a| instance.key0(i, a as usize));
        }
        Ok(Configuration { mates })
    }

    /// Raw mate lists (1-based labels, expected best-first). Nothing is
    /// validated, so this is the way to hand arbitrary data to the checker.
    pub fn from_mate_lists(lists: &[Vec<usize>]) -> Self {
        Configuration {
            mates: lists
                .iter()
                .map(|l| l.iter().map(|&j| j.wrapping_sub(1) as u32).collect())
                .collect(),
        }
    }

    pub(crate) fn from_raw(mates: Vec<Vec<u32>>) -> Self {
        Configuration { mates }
    }

    pub fn n(&self) -> usize {
        self.mates.len()
    }

    /// 0-based mate list of 0-based node `i`.
    #[inline]
    pub fn mates0(&self, i: usize) -> &[u32] {
        &self.mates[i]
    }

    /// Mates of 1-based node `i`, best first, as 1-based labels.
    pub fn mates(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.mates[i - 1].iter().map(|&j| j as usize + 1)
    }

    /// The `c`-th best mate (both 1-based) of node `i`, if any.
    pub fn mate(&self, i: usize, c: usize) -> Option<usize> {
        if c == 0 {
            return None;
        }
        self.mates.get(i - 1)?.get(c - 1).map(|&j| j as usize + 1)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.mates[i - 1].len()
    }

    pub fn is_mated(&self, i: usize, j: usize) -> bool {
        self.mates[i - 1].contains(&((j - 1) as u32))
    }

    /// Stable pairs as 1-based `(i, j)` with `i < j`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.mates.iter().enumerate().flat_map(|(i, l)| {
            l.iter()
                .map(|&j| j as usize)
                .filter(move |&j| j > i)
                .map(move |j| (i + 1, j + 1))
        })
    }

    pub fn pair_count(&self) -> usize {
        self.mates.iter().map(Vec::len).sum::<usize>() / 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn node_based(n: usize, edges: &[(usize, usize)]) -> Instance {
        let e: Vec<_> = edges.iter().map(|&(i, j)| (i - 1, j - 1)).collect();
        Instance::new(
            PreferenceKind::NodeBased,
            Marks::Labels,
            AcceptanceGraph::from_edges(n, &e).unwrap(),
            vec![1; n],
        )
        .unwrap()
    }

    fn geometric_1d(points: &[f64]) -> Instance {
        let n = points.len();
        Instance::new(
            PreferenceKind::Geometric {
                dim: 1,
                norm: Norm::Taxicab,
            },
            Marks::Points {
                dim: 1,
                norm: Norm::Taxicab,
                coords: points.to_vec(),
            },
            AcceptanceGraph::complete(n),
            vec![1; n],
        )
        .unwrap()
    }

    #[test]
    fn node_based_complete_ranks() {
        let inst = node_based(5, &[]);
        assert_eq!(inst.complete_rank(3, 1).unwrap(), 1);
        assert_eq!(inst.complete_rank(1, 5).unwrap(), 4);
        assert_eq!(inst.complete_rank(3, 4).unwrap(), 3);
        assert!(matches!(
            inst.complete_rank(2, 2),
            Err(Error::Reflexive { node: 2 })
        ));
    }

    #[test]
    fn geometric_complete_rank_by_torus_distance() {
        let inst = geometric_1d(&[0.0, 0.1, 0.4]);
        assert_eq!(inst.complete_rank(1, 2).unwrap(), 1);
        assert_eq!(inst.complete_rank(1, 3).unwrap(), 2);
    }

    #[test]
    fn acceptable_rank_over_neighbors() {
        let inst = node_based(4, &[(4, 1), (4, 3), (1, 2)]);
        assert_eq!(inst.acceptable_rank(4, 1).unwrap(), Some(1));
        assert_eq!(inst.acceptable_rank(4, 3).unwrap(), Some(2));
        assert_eq!(inst.acceptable_rank(4, 2).unwrap(), None);
        assert_eq!(inst.acceptable_rank(2, 1).unwrap(), Some(1));
        assert!(inst.acceptable_rank(3, 3).is_err());
    }

    #[test]
    fn acceptable_equals_complete_on_complete_graph() {
        let inst = geometric_1d(&[0.05, 0.3, 0.62, 0.9, 0.47]);
        for i in 1..=5 {
            for j in (1..=5).filter(|&j| j != i) {
                assert_eq!(
                    inst.acceptable_rank(i, j).unwrap(),
                    Some(inst.complete_rank(i, j).unwrap())
                );
            }
        }
    }

    #[test]
    fn prefers_basics() {
        let inst = node_based(5, &[]);
        assert!(inst.prefers(5, 2, 3).unwrap());
        assert!(!inst.prefers(5, 3, 3).unwrap());
        assert!(inst.prefers(5, 5, 3).is_err());
    }

    #[test]
    fn equal_marks_break_toward_lower_label() {
        // Node 2 sits at 0.5; nodes 1 and 3 are both 0.25 away.
        let inst = geometric_1d(&[0.25, 0.5, 0.75]);
        assert_eq!(inst.mark(2, 1).unwrap(), inst.mark(2, 3).unwrap());
        assert!(inst.prefers(2, 1, 3).unwrap());
        assert!(!inst.prefers(2, 3, 1).unwrap());
    }

    #[test]
    fn torus_wraps() {
        assert!((torus_distance(&[0.1], &[0.9], Norm::Taxicab) - 0.2).abs() < 1e-15);
        assert_eq!(torus_distance(&[0.0, 0.0], &[0.5, 0.5], Norm::Taxicab), 1.0);
        assert_eq!(torus_distance(&[0.0, 0.0], &[0.5, 0.25], Norm::Max), 0.5);
    }

    #[test]
    fn sym_matrix_is_symmetric() {
        let mut m = SymMatrix::zeros(4);
        m.set(3, 1, 2.5);
        assert_eq!(m.get(1, 3), 2.5);
        let r = m.restrict(&[3, 1]);
        assert_eq!(r.get(0, 1), 2.5);
    }

    #[test]
    fn acceptance_graph_rejects_loops_and_dedups() {
        assert!(AcceptanceGraph::from_edges(3, &[(1, 1)]).is_err());
        let g = AcceptanceGraph::from_edges(3, &[(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(1, 0) && g.has_edge(2, 1) && !g.has_edge(0, 2));
        assert_eq!(AcceptanceGraph::complete(5).edge_count(), 10);
    }

    #[test]
    fn instance_validation() {
        let g = AcceptanceGraph::complete(3);
        assert!(Instance::new(
            PreferenceKind::NodeBased,
            Marks::Labels,
            g.clone(),
            vec![1, 0, 1]
        )
        .is_err());
        assert!(Instance::new(
            PreferenceKind::RandomAcyclic,
            Marks::Labels,
            g.clone(),
            vec![1; 3]
        )
        .is_err());
        let mut m = SymMatrix::zeros(3);
        m.set(0, 1, f64::NAN);
        assert!(Instance::new(
            PreferenceKind::ExternalMatrix,
            Marks::Matrix(m),
            g,
            vec![1; 3]
        )
        .is_err());
    }

    #[test]
    fn configuration_orders_mates_best_first() {
        let inst = node_based(4, &[]);
        let conf = Configuration::from_pairs(&inst, &[(4, 3), (4, 1)]).unwrap();
        assert_eq!(conf.mates(4).collect::<Vec<_>>(), vec![1, 3]);
        assert_eq!(conf.mate(4, 2), Some(3));
        assert_eq!(conf.mate(4, 3), None);
        assert_eq!(conf.pairs().collect::<Vec<_>>(), vec![(1, 4), (3, 4)]);
    }
}
