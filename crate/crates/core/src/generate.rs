//! Seeded construction of preference-based systems.
//!
//! Every random draw comes from a ChaCha8 stream seeded with a 64-bit value.
//! Campaigns derive one stream per instance with [`stream_seed`], and each
//! instance splits its stream into independent sub-streams for the acceptance
//! graph, the marks, and matrix subsampling. The rule is part of the output
//! contract (see [`SEED_RULE`]) so any instance of a run can be replayed alone.

use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::distributions::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::instance::{AcceptanceGraph, Instance, Marks, Norm, PreferenceKind, SymMatrix};

/// Identifier of the per-instance seed derivation, echoed in run manifests.
pub const SEED_RULE: &str = "splitmix64-xor-v1";

const SALT_ACCEPTANCE: u64 = 0x6163_6365_7074_0001;
const SALT_MARKS: u64 = 0x6d61_726b_7300_0002;
const SALT_SUBSAMPLE: u64 = 0x7375_6273_6d70_0003;

/// SplitMix64 finalizer.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of instance `index` in a campaign seeded with `campaign_seed`:
/// `splitmix64(campaign_seed ^ splitmix64(index))`.
pub fn stream_seed(campaign_seed: u64, index: u64) -> u64 {
    splitmix64(campaign_seed ^ splitmix64(index))
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Preference kind plus whatever data it needs to be generated.
#[derive(Debug, Clone, PartialEq)]
pub enum KindSpec {
    NodeBased,
    Geometric {
        dim: usize,
        norm: Norm,
    },
    RandomAcyclic,
    /// Marks are a random `N`-node restriction of this (latency) matrix.
    Matrix(Arc<SymMatrix>),
}

impl KindSpec {
    pub fn kind(&self) -> PreferenceKind {
        match self {
            KindSpec::NodeBased => PreferenceKind::NodeBased,
            KindSpec::Geometric { dim, norm } => PreferenceKind::Geometric {
                dim: *dim,
                norm: *norm,
            },
            KindSpec::RandomAcyclic => PreferenceKind::RandomAcyclic,
            KindSpec::Matrix(_) => PreferenceKind::ExternalMatrix,
        }
    }
}

/// Parameters of a family of random instances.
#[derive(Debug, Clone, PartialEq)]
pub struct GenSpec {
    pub n_nodes: usize,
    pub edge_prob: f64,
    pub quota: u32,
    pub kind: KindSpec,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(
        n_nodes: usize,
        edge_prob: f64,
        quota: u32,
        kind: KindSpec,
        seed: u64,
    ) -> Result<Self> {
        let spec = GenSpec {
            n_nodes,
            edge_prob,
            quota,
            kind,
            seed,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Same as [`GenSpec::new`] with the edge probability given as an
    /// expected degree, `p = d / (N - 1)`.
    pub fn with_degree(
        n_nodes: usize,
        degree: f64,
        quota: u32,
        kind: KindSpec,
        seed: u64,
    ) -> Result<Self> {
        if n_nodes < 2 {
            return Err(invalid("N must be at least 2"));
        }
        Self::new(n_nodes, degree / (n_nodes - 1) as f64, quota, kind, seed)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_nodes < 2 {
            return Err(invalid("N must be at least 2"));
        }
        if !(0.0..=1.0).contains(&self.edge_prob) {
            return Err(invalid(alloc::format!(
                "edge probability {} outside [0, 1]",
                self.edge_prob
            )));
        }
        if self.quota == 0 {
            return Err(invalid("quota must be at least 1"));
        }
        match &self.kind {
            KindSpec::Geometric { dim: 0, .. } => {
                Err(invalid("torus dimension must be at least 1"))
            }
            KindSpec::Matrix(m) if m.n() < self.n_nodes => Err(invalid(alloc::format!(
                "cannot draw {} nodes from a {}-node matrix",
                self.n_nodes,
                m.n()
            ))),
            _ => Ok(()),
        }
    }

    pub fn expected_degree(&self) -> f64 {
        self.edge_prob * (self.n_nodes - 1) as f64
    }

    /// The `index`-th instance of the campaign.
    pub fn instance(&self, index: u64) -> Result<Instance> {
        self.validate()?;
        let stream = stream_seed(self.seed, index);
        let n = self.n_nodes;
        let acceptance = gen_acceptance(n, self.edge_prob, splitmix64(stream ^ SALT_ACCEPTANCE))?;
        let marks = match &self.kind {
            KindSpec::Matrix(full) => {
                let (m, _) = subsample(full, n, splitmix64(stream ^ SALT_SUBSAMPLE))?;
                Marks::Matrix(m)
            }
            other => gen_marks(n, other.kind(), splitmix64(stream ^ SALT_MARKS))?,
        };
        Ok(Instance::new(
            self.kind.kind(),
            marks,
            acceptance,
            alloc::vec![self.quota; n],
        )?
        .with_edge_prob(self.edge_prob))
    }
}

/// Erdős–Rényi `G(N, p)`: every unordered pair is an edge independently with
/// probability `p`.
pub fn gen_acceptance(n: usize, p: f64, seed: u64) -> Result<AcceptanceGraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(alloc::format!(
            "edge probability {p} outside [0, 1]"
        )));
    }
    let mut rng = rng(seed);
    let mut edges =
        Vec::with_capacity((p * (n * n.saturating_sub(1)) as f64 / 2.0 * 1.1) as usize + 16);
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    AcceptanceGraph::from_edges(n, &edges)
}

/// Marks for `N` nodes of the given kind.
///
/// Geometric marks draw `N` uniform points of `[0, 1)^dim`; random acyclic
/// marks draw the strict upper triangle i.i.d. uniform on `(0, 1)` and mirror
/// it. External matrices cannot be generated.
pub fn gen_marks(n: usize, kind: PreferenceKind, seed: u64) -> Result<Marks> {
    let mut rng = rng(seed);
    match kind {
        PreferenceKind::NodeBased => Ok(Marks::Labels),
        PreferenceKind::Geometric { dim, norm } => {
            if dim == 0 {
                return Err(invalid("torus dimension must be at least 1"));
            }
            let coords = (0..n * dim).map(|_| rng.gen::<f64>()).collect();
            Ok(Marks::Points { dim, norm, coords })
        }
        PreferenceKind::RandomAcyclic => Ok(Marks::Matrix(SymMatrix::from_fn(n, |_, _| {
            rng.sample(Open01)
        }))),
        PreferenceKind::ExternalMatrix => Err(Error::KindMismatch(
            "external marks are loaded, not generated".into(),
        )),
    }
}

/// Parses a square numeric matrix (one row per line, cells separated by
/// whitespace and/or commas) into symmetrized marks
/// `m(i, j) = (raw(i, j) + raw(j, i)) / 2`. The diagonal is ignored.
pub fn parse_latency_matrix(text: &str) -> Result<SymMatrix> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        for (c, cell) in line
            .split(|ch: char| ch == ',' || ch.is_whitespace())
            .filter(|c| !c.is_empty())
            .enumerate()
        {
            let v: f64 = cell.parse().map_err(|_| Error::Load {
                row: line_no + 1,
                col: Some(c + 1),
                message: alloc::format!("non-numeric cell {cell:?}"),
            })?;
            if v.is_nan() || v == f64::NEG_INFINITY {
                return Err(Error::Load {
                    row: line_no + 1,
                    col: Some(c + 1),
                    message: alloc::format!("invalid mark {cell:?}"),
                });
            }
            row.push(v);
        }
        rows.push(row);
    }
    let n = rows.len();
    if n < 2 {
        return Err(Error::Load {
            row: n,
            col: None,
            message: alloc::format!("need at least 2 rows, found {n}"),
        });
    }
    for (r, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Load {
                row: r + 1,
                col: None,
                message: alloc::format!(
                    "matrix is not square: {n} rows but row {} has {} columns",
                    r + 1,
                    row.len()
                ),
            });
        }
    }
    Ok(SymMatrix::from_fn(n, |i, j| {
        0.5 * (rows[i][j] + rows[j][i])
    }))
}

/// Restriction of `marks` to `k` distinct nodes drawn uniformly without
/// replacement. Returns the matrix and the chosen 0-based indices, in the
/// order they index the new matrix.
pub fn subsample(marks: &SymMatrix, k: usize, seed: u64) -> Result<(SymMatrix, Vec<usize>)> {
    let n = marks.n();
    if k < 2 || k > n {
        return Err(invalid(alloc::format!(
            "subsample size {k} outside 2..={n}"
        )));
    }
    let mut rng = rng(seed);
    let keep = rand::seq::index::sample(&mut rng, n, k).into_vec();
    Ok((marks.restrict(&keep), keep))
}
