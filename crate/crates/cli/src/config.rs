//! Experiment configuration: command-line arguments resolved into a
//! validated model description.

use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{bail, ensure, Context, Result};
use clap::{ArgGroup, Args, ValueEnum};
use serde::Serialize;
use stabmatch_core::generate::parse_latency_matrix;
use stabmatch_core::{GenSpec, KindSpec, Norm, SymMatrix};

use crate::curve::Format;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KindArg {
    /// Global ranking by node label.
    Node,
    /// Distances between uniform points of the unit torus.
    Torus,
    /// Independent uniform marks per pair.
    Acyclic,
    /// Marks read from a latency matrix (`--latency-file`).
    Matrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NormArg {
    Taxicab,
    Max,
}

impl From<NormArg> for Norm {
    fn from(n: NormArg) -> Norm {
        match n {
            NormArg::Taxicab => Norm::Taxicab,
            NormArg::Max => Norm::Max,
        }
    }
}

/// The curves a run can emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveArg {
    /// Complete rank of the mate, one curve per slot.
    Rank,
    /// Mate distribution of the nodes given by `--nodes` (node kind only).
    Pair,
    /// Torus distance to the mate (torus kind only).
    Distance,
    /// Rank of the first mate among acceptable nodes.
    AcceptableRank,
    /// Shortest path length and clustering per instance.
    GraphStats,
}

#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("density").required(true).args(["p", "d"])))]
pub struct ModelArgs {
    /// Number of nodes (defaults to the matrix size with --kind matrix).
    #[arg(long)]
    pub n: Option<usize>,
    /// Edge probability of the acceptance graph.
    #[arg(long)]
    pub p: Option<f64>,
    /// Expected degree, converted with p = d / (N - 1).
    #[arg(long)]
    pub d: Option<f64>,
    /// Quota of every node.
    #[arg(long, default_value_t = 1)]
    pub b: u32,
    #[arg(long, value_enum, default_value_t = KindArg::Acyclic)]
    pub kind: KindArg,
    /// Torus dimension.
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    /// Torus norm.
    #[arg(long, value_enum, default_value_t = NormArg::Taxicab)]
    pub norm: NormArg,
    /// Whitespace or comma separated square latency matrix.
    #[arg(long)]
    pub latency_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output directory (created if missing).
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Curves to emit.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "rank")]
    pub curves: Vec<CurveArg>,
    /// Nodes whose mate distribution is emitted by the `pair` curve.
    #[arg(long, value_delimiter = ',')]
    pub nodes: Vec<usize>,
    /// Number of uniform distance bins over the torus diameter.
    #[arg(long, default_value_t = stabmatch_core::metrics::DEFAULT_DISTANCE_BINS)]
    pub bins: usize,
}

/// A resolved, validated model.
#[derive(Debug, Clone, Serialize)]
pub struct Model {
    pub n: usize,
    pub p: f64,
    pub d: f64,
    pub b: u32,
    pub kind: KindArg,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub norm: Option<NormArg>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub latency_file: Option<PathBuf>,
    #[serde(skip)]
    pub matrix: Option<Arc<SymMatrix>>,
}

impl ModelArgs {
    pub fn resolve(&self) -> Result<Model> {
        let matrix = match (self.kind, &self.latency_file) {
            (KindArg::Matrix, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading latency file {}", path.display()))?;
                let m = parse_latency_matrix(&text)
                    .with_context(|| format!("parsing latency file {}", path.display()))?;
                Some(Arc::new(m))
            }
            (KindArg::Matrix, None) => bail!("--kind matrix needs --latency-file"),
            (_, Some(_)) => bail!("--latency-file only applies to --kind matrix"),
            _ => None,
        };
        let n = match (self.n, &matrix) {
            (Some(n), _) => n,
            (None, Some(m)) => m.n(),
            (None, None) => bail!("--n is required unless --kind matrix supplies it"),
        };
        ensure!(n >= 2, "--n must be at least 2, got {n}");
        if let Some(m) = &matrix {
            ensure!(
                n <= m.n(),
                "--n {n} exceeds the {}-node latency matrix",
                m.n()
            );
        }
        ensure!(self.b >= 1, "--b must be at least 1");
        let span = (n - 1) as f64;
        let (p, d) = match (self.p, self.d) {
            (Some(p), None) => (p, p * span),
            (None, Some(d)) => (d / span, d),
            _ => unreachable!("clap enforces exactly one of --p and --d"),
        };
        ensure!(
            (0.0..=1.0).contains(&p),
            "edge probability {p} outside [0, 1]; with --d the degree must be at most N - 1 = {span}"
        );
        let torus = self.kind == KindArg::Torus;
        if torus {
            ensure!(self.dim >= 1, "--dim must be at least 1");
        }
        Ok(Model {
            n,
            p,
            d,
            b: self.b,
            kind: self.kind,
            dim: torus.then_some(self.dim),
            norm: torus.then_some(self.norm),
            latency_file: self.latency_file.clone(),
            matrix,
        })
    }
}

impl Model {
    pub fn kind_spec(&self) -> KindSpec {
        match self.kind {
            KindArg::Node => KindSpec::NodeBased,
            KindArg::Acyclic => KindSpec::RandomAcyclic,
            KindArg::Torus => KindSpec::Geometric {
                dim: self.dim.unwrap_or(1),
                norm: self.norm.unwrap_or(NormArg::Taxicab).into(),
            },
            KindArg::Matrix => {
                KindSpec::Matrix(self.matrix.clone().expect("matrix kind has a matrix"))
            }
        }
    }

    pub fn gen_spec(&self, seed: u64) -> Result<GenSpec> {
        Ok(GenSpec::new(
            self.n,
            self.p,
            self.b,
            self.kind_spec(),
            seed,
        )?)
    }

    /// Checks that every requested curve makes sense for this model.
    pub fn check_curves(&self, out: &OutputArgs) -> Result<()> {
        for c in &out.curves {
            match c {
                CurveArg::Pair => {
                    ensure!(self.kind == KindArg::Node, "pair curves need --kind node");
                    ensure!(
                        !out.nodes.is_empty(),
                        "pair curves need --nodes, e.g. --nodes 6,25"
                    );
                    for &i in &out.nodes {
                        ensure!(
                            (1..=self.n).contains(&i),
                            "--nodes entry {i} outside 1..={}",
                            self.n
                        );
                    }
                }
                CurveArg::Distance => {
                    ensure!(
                        self.kind == KindArg::Torus,
                        "distance curves need --kind torus"
                    );
                    ensure!(out.bins >= 1, "--bins must be at least 1");
                }
                _ => {}
            }
        }
        Ok(())
    }
}
