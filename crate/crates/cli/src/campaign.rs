//! Parallel Monte Carlo campaigns with mergeable accumulators.

use anyhow::{Context, Result};
use rayon::prelude::*;
use stabmatch_core::metrics::{
    AcceptableRankHistogram, DistanceHistogram, GraphStats, PairHistogram, RankHistogram,
};
use stabmatch_core::{stable_configuration, GenSpec};

/// What to measure over a campaign.
#[derive(Debug, Clone)]
pub struct CampaignPlan {
    pub spec: GenSpec,
    pub instances: u64,
    pub rank: bool,
    pub pair_nodes: Vec<usize>,
    /// Distance bins, when distance curves are wanted.
    pub distance_bins: Option<usize>,
    pub acceptable_rank: bool,
    pub graph_stats: bool,
}

/// Merged measurements. Histograms are integer counts, so the result does
/// not depend on how instances were scheduled.
#[derive(Debug, Clone)]
pub struct CampaignResult {
    pub rank: Option<RankHistogram>,
    /// `pairs[k][c - 1]` is node `pair_nodes[k]`, slot `c`.
    pub pairs: Vec<Vec<PairHistogram>>,
    /// One histogram per slot.
    pub distance: Vec<DistanceHistogram>,
    /// One histogram per slot.
    pub acceptable: Vec<AcceptableRankHistogram>,
    /// Per-instance statistics, sorted by instance index.
    pub graph: Vec<(u64, GraphStats)>,
}

impl CampaignResult {
    fn empty(plan: &CampaignPlan) -> Self {
        let slots = plan.spec.quota as usize;
        CampaignResult {
            rank: plan.rank.then(RankHistogram::new),
            pairs: plan
                .pair_nodes
                .iter()
                .map(|&i| (1..=slots).map(|c| PairHistogram::new(i, c)).collect())
                .collect(),
            distance: plan
                .distance_bins
                .map(|bins| {
                    (1..=slots)
                        .map(|c| DistanceHistogram::new(c, bins))
                        .collect()
                })
                .unwrap_or_default(),
            acceptable: if plan.acceptable_rank {
                (1..=slots).map(AcceptableRankHistogram::new).collect()
            } else {
                Vec::new()
            },
            graph: Vec::new(),
        }
    }

    fn merge(mut self, other: CampaignResult) -> Result<Self> {
        if let (Some(a), Some(b)) = (&mut self.rank, &other.rank) {
            a.merge(b)?;
        }
        for (row_a, row_b) in self.pairs.iter_mut().zip(&other.pairs) {
            for (a, b) in row_a.iter_mut().zip(row_b) {
                a.merge(b)?;
            }
        }
        for (a, b) in self.distance.iter_mut().zip(&other.distance) {
            a.merge(b)?;
        }
        for (a, b) in self.acceptable.iter_mut().zip(&other.acceptable) {
            a.merge(b)?;
        }
        self.graph.extend(other.graph);
        Ok(self)
    }

    fn observe(plan: &CampaignPlan, index: u64) -> Result<Self> {
        let inst = plan
            .spec
            .instance(index)
            .with_context(|| format!("generating instance {index}"))?;
        let conf = stable_configuration(&inst);
        let mut r = CampaignResult::empty(plan);
        if let Some(h) = &mut r.rank {
            h.observe(&inst, &conf)?;
        }
        for h in r.pairs.iter_mut().flatten() {
            h.observe(&inst, &conf)?;
        }
        for h in &mut r.distance {
            h.observe(&inst, &conf)?;
        }
        for h in &mut r.acceptable {
            h.observe(&inst, &conf)?;
        }
        if plan.graph_stats {
            r.graph
                .push((index, GraphStats::of(&conf, plan.spec.quota)));
        }
        Ok(r)
    }
}

/// Runs the campaign on at most `jobs` threads (0 means one per core).
pub fn run(plan: &CampaignPlan, jobs: usize) -> Result<CampaignResult> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .context("starting worker threads")?;
    let mut result = pool.install(|| {
        (0..plan.instances)
            .into_par_iter()
            .map(|k| CampaignResult::observe(plan, k))
            .try_reduce(|| CampaignResult::empty(plan), CampaignResult::merge)
    })?;
    result.graph.sort_by_key(|(k, _)| *k);
    Ok(result)
}
