//! Empirical curves and tables from a finished campaign.

use std::collections::BTreeMap;

use anyhow::Result;
use serde_json::json;
use stabmatch_core::metrics::EmpiricalCurve;

use crate::campaign::{CampaignPlan, CampaignResult};
use crate::config::{CurveArg, Model, OutputArgs};
use crate::curve::{Curve, Table};
use crate::naming;

pub fn plan(model: &Model, out: &OutputArgs, instances: u64, seed: u64) -> Result<CampaignPlan> {
    let wants = |c: CurveArg| out.curves.contains(&c);
    let mut nodes = if wants(CurveArg::Pair) {
        out.nodes.clone()
    } else {
        Vec::new()
    };
    nodes.sort_unstable();
    nodes.dedup();
    Ok(CampaignPlan {
        spec: model.gen_spec(seed)?,
        instances,
        rank: wants(CurveArg::Rank),
        pair_nodes: nodes,
        distance_bins: wants(CurveArg::Distance).then_some(out.bins),
        acceptable_rank: wants(CurveArg::AcceptableRank),
        graph_stats: wants(CurveArg::GraphStats),
    })
}

/// CCDF and PMF curves of one empirical distribution. The PMF lives on the
/// support points that carry mass.
fn emit(curves: &mut Vec<Curve>, base: &str, support_kind: &str, e: &EmpiricalCurve) {
    let ccdf = Curve::new(
        naming::ccdf(base, "empirical"),
        support_kind,
        "ccdf",
        "empirical",
        e.support.clone(),
        e.ccdf.clone(),
    );
    let pmf = Curve::new(
        naming::pmf(base, "empirical"),
        support_kind,
        "pmf",
        "empirical",
        e.support[..e.mass.len()].to_vec(),
        e.mass.clone(),
    );
    for c in [ccdf, pmf] {
        curves.push(
            c.with_param("unmatched", e.unmatched)
                .with_param("samples", e.n_samples)
                .with_param("instances", e.instances),
        );
    }
}

pub fn curves(model: &Model, plan: &CampaignPlan, result: &CampaignResult) -> Result<Vec<Curve>> {
    let mut curves = Vec::new();
    let slots = model.b as usize;
    if let Some(h) = &result.rank {
        for c in 1..=slots {
            let start = curves.len();
            emit(&mut curves, &naming::rank(c), "rank", &h.curve(c)?);
            tag(&mut curves[start..], &[("slot", c)]);
        }
    }
    for (row, &i) in result.pairs.iter().zip(&plan.pair_nodes) {
        for (k, h) in row.iter().enumerate() {
            let start = curves.len();
            emit(&mut curves, &naming::pair(i, k + 1), "node", &h.curve());
            tag(&mut curves[start..], &[("node", i), ("slot", k + 1)]);
        }
    }
    for (k, h) in result.distance.iter().enumerate() {
        let start = curves.len();
        emit(
            &mut curves,
            &naming::distance(k + 1),
            "distance",
            &h.curve(),
        );
        tag(&mut curves[start..], &[("slot", k + 1)]);
        for c in &mut curves[start..] {
            c.meta
                .params
                .insert("bins".into(), json!(plan.distance_bins));
        }
    }
    for (k, h) in result.acceptable.iter().enumerate() {
        let start = curves.len();
        emit(
            &mut curves,
            &naming::acceptable(k + 1),
            "acceptable_rank",
            &h.curve(),
        );
        tag(&mut curves[start..], &[("slot", k + 1)]);
    }
    let mut params = naming::model_params(model);
    params.insert("seed".into(), json!(plan.spec.seed));
    Ok(curves.into_iter().map(|c| c.with_params(&params)).collect())
}

fn tag(curves: &mut [Curve], keys: &[(&str, usize)]) {
    for c in curves {
        for (k, v) in keys {
            c.meta.params.insert((*k).into(), json!(v));
        }
    }
}

pub const GRAPH_COLUMNS: [&str; 8] = [
    "instance",
    "aspl",
    "mean_eccentricity",
    "connected_pairs",
    "disconnected_pairs",
    "transitivity",
    "mean_local_clustering",
    "baseline",
];

/// One row per instance, plus a final mean row with `instance = -1`.
/// Graphs without any connected pair report NaN path statistics.
pub fn graph_table(model: &Model, result: &CampaignResult) -> Table {
    let mut rows: Vec<Vec<f64>> = result
        .graph
        .iter()
        .map(|(k, g)| {
            let (mean, ecc, conn, disc) = match g.aspl {
                Some(a) => (
                    a.mean,
                    a.mean_eccentricity,
                    a.connected_pairs as f64,
                    a.disconnected_pairs as f64,
                ),
                None => (f64::NAN, f64::NAN, 0.0, (model.n * (model.n - 1)) as f64),
            };
            vec![
                *k as f64,
                mean,
                ecc,
                conn,
                disc,
                g.transitivity,
                g.mean_local_clustering,
                g.baseline,
            ]
        })
        .collect();
    if !rows.is_empty() {
        let width = rows[0].len();
        let mut mean = vec![-1.0];
        for col in 1..width {
            mean.push(rows.iter().map(|r| r[col]).sum::<f64>() / rows.len() as f64);
        }
        rows.push(mean);
    }
    let mut meta = BTreeMap::new();
    for (k, v) in naming::model_params(model) {
        meta.insert(k, v);
    }
    meta.insert("name".into(), json!("graph_stats"));
    Table {
        meta,
        columns: GRAPH_COLUMNS.iter().map(|s| s.to_string()).collect(),
        rows,
    }
}
