//! Analytic curves (mean-field, exact, fluid and closed-form approximations)
//! on the same supports and under the same names as the simulated curves.

use anyhow::{bail, Result};
use stabmatch_core::fluid::{
    acceptable_rank_ccdf, fluid_node_bmatch, fluid_rank_bmatch, pair_prob_approx, s_distance,
    s_inf_node, s_rank_approx,
};
use stabmatch_core::meanfield::{solve_node_bmatch, solve_node_exact_b1, solve_rank_bmatch};
use stabmatch_core::PairDistribution;

use crate::config::{CurveArg, KindArg, Model, OutputArgs};
use crate::curve::Curve;
use crate::naming;

/// Curves for every requested output of `out`; `grid` is the fluid grid
/// size.
pub fn analytic_curves(model: &Model, out: &OutputArgs, grid: usize) -> Result<Vec<Curve>> {
    let mut curves = Vec::new();
    let mut requested = out.curves.clone();
    requested.sort();
    requested.dedup();
    for c in requested {
        match c {
            CurveArg::Rank => rank_curves(model, grid, &mut curves)?,
            CurveArg::Pair => pair_curves(model, &out.nodes, grid, &mut curves)?,
            CurveArg::Distance => distance_curves(model, out.bins, &mut curves)?,
            CurveArg::AcceptableRank => acceptable_curves(model, &mut curves)?,
            CurveArg::GraphStats => {
                bail!("graph statistics have no analytic counterpart; use `simulate --curves graph-stats`")
            }
        }
    }
    let params = naming::model_params(model);
    Ok(curves.into_iter().map(|c| c.with_params(&params)).collect())
}

fn ranks(n: usize) -> Vec<f64> {
    (1..=n).map(|k| k as f64).collect()
}

fn rank_curves(model: &Model, grid: usize, curves: &mut Vec<Curve>) -> Result<()> {
    if model.kind == KindArg::Node {
        bail!("rank curves model homogeneous kinds; for --kind node use the pair curves");
    }
    let n = model.n;
    let meanfield = solve_rank_bmatch(n, model.p, model.b)?;
    let fluid = fluid_rank_bmatch(model.d, model.b, grid)?;
    let scale = (n - 1) as f64;
    for (c, (mf, fl)) in meanfield.iter().zip(&fluid).enumerate() {
        let base = naming::rank(c + 1);
        curves.push(
            Curve::new(
                naming::ccdf(&base, "meanfield"),
                "rank",
                "ccdf",
                "meanfield",
                ranks(n),
                mf.s_vals().to_vec(),
            )
            .with_param("slot", c + 1),
        );
        curves.push(
            Curve::new(
                naming::pmf(&base, "meanfield"),
                "rank",
                "pmf",
                "meanfield",
                ranks(n - 1),
                mf.d_vals().to_vec(),
            )
            .with_param("slot", c + 1),
        );
        let values = (1..=n).map(|k| fl.at((k - 1) as f64 / scale)).collect();
        curves.push(
            Curve::new(
                naming::ccdf(&base, "fluid"),
                "rank",
                "ccdf",
                "fluid",
                ranks(n),
                values,
            )
            .with_param("slot", c + 1)
            .with_param("grid", grid),
        );
    }
    if model.b == 1 {
        let values = (1..=n).map(|k| s_rank_approx(k as f64, model.p)).collect();
        curves.push(
            Curve::new(
                naming::ccdf(&naming::rank(1), "approx"),
                "rank",
                "ccdf",
                "approx",
                ranks(n),
                values,
            )
            .with_param("slot", 1),
        );
    }
    Ok(())
}

/// Scaled position of `j` in `i`'s preference list, which skips `i` itself.
/// `j = N + 1` (past the end) maps to 1.
fn list_position(i: usize, j: usize, n: usize) -> f64 {
    let pos = if j <= i { j - 1 } else { j - 2 };
    pos as f64 / (n - 1) as f64
}

fn push_pair_rows(
    curves: &mut Vec<Curve>,
    pd: &PairDistribution,
    source: &str,
    i: usize,
    slots: usize,
) {
    let n = pd.n;
    for c in 1..=slots {
        let base = naming::pair(i, c);
        curves.push(
            Curve::new(
                naming::ccdf(&base, source),
                "node",
                "ccdf",
                source,
                ranks(n + 1),
                pd.s_row(c, i).to_vec(),
            )
            .with_param("node", i)
            .with_param("slot", c),
        );
        curves.push(
            Curve::new(
                naming::pmf(&base, source),
                "node",
                "pmf",
                source,
                ranks(n),
                pd.d_row(c, i).to_vec(),
            )
            .with_param("node", i)
            .with_param("slot", c),
        );
    }
}

fn pair_curves(model: &Model, nodes: &[usize], grid: usize, curves: &mut Vec<Curve>) -> Result<()> {
    if model.kind != KindArg::Node {
        bail!("pair curves need --kind node");
    }
    if nodes.is_empty() {
        bail!("pair curves need --nodes, e.g. --nodes 6,25");
    }
    let (n, p, d, b) = (model.n, model.p, model.d, model.b);
    let slots = b as usize;
    let meanfield = solve_node_bmatch(n, p, b)?;
    let exact = if b == 1 {
        Some(solve_node_exact_b1(n, p)?)
    } else {
        None
    };
    let surface = if b > 1 {
        Some(fluid_node_bmatch(d, b, grid)?)
    } else {
        None
    };
    for &i in nodes {
        if !(1..=n).contains(&i) {
            bail!("--nodes entry {i} outside 1..={n}");
        }
        push_pair_rows(curves, &meanfield, "meanfield", i, slots);
        if let Some(ex) = &exact {
            push_pair_rows(curves, ex, "exact", i, slots);
        }
        let alpha = (i - 1) as f64 / (n - 1) as f64;
        for c in 1..=slots {
            let base = naming::pair(i, c);
            let values = (1..=n + 1)
                .map(|j| {
                    let beta = list_position(i, j, n);
                    match &surface {
                        Some(s) => Ok(s.s(c, alpha, beta)),
                        None => s_inf_node(alpha, beta, d),
                    }
                })
                .collect::<Result<Vec<f64>, _>>()?;
            let mut fluid = Curve::new(
                naming::ccdf(&base, "fluid"),
                "node",
                "ccdf",
                "fluid",
                ranks(n + 1),
                values,
            )
            .with_param("node", i)
            .with_param("slot", c);
            if surface.is_some() {
                fluid = fluid.with_param("grid", grid);
            }
            curves.push(fluid);
        }
        if b == 1 {
            let base = naming::pair(i, 1);
            let pmf: Vec<f64> = (1..=n)
                .map(|j| {
                    if j == i {
                        0.0
                    } else {
                        pair_prob_approx(i, j, p)
                    }
                })
                .collect();
            let mut tail = 1.0;
            let mut ccdf = vec![tail];
            for v in &pmf {
                tail -= v;
                ccdf.push(tail);
            }
            curves.push(
                Curve::new(
                    naming::ccdf(&base, "approx"),
                    "node",
                    "ccdf",
                    "approx",
                    ranks(n + 1),
                    ccdf,
                )
                .with_param("node", i)
                .with_param("slot", 1),
            );
            curves.push(
                Curve::new(
                    naming::pmf(&base, "approx"),
                    "node",
                    "pmf",
                    "approx",
                    ranks(n),
                    pmf,
                )
                .with_param("node", i)
                .with_param("slot", 1),
            );
        }
    }
    Ok(())
}

fn distance_curves(model: &Model, bins: usize, curves: &mut Vec<Curve>) -> Result<()> {
    let (Some(dim), Some(norm)) = (model.dim, model.norm) else {
        bail!("distance curves need --kind torus");
    };
    if model.b > 1 {
        bail!("the distance law is only known for --b 1");
    }
    let norm = norm.into();
    let width = stabmatch_core::Norm::diameter(norm, dim) / bins as f64;
    let support: Vec<f64> = (0..=bins).map(|k| k as f64 * width).collect();
    let values = support
        .iter()
        .map(|&x| s_distance(x, model.d, dim, norm))
        .collect::<Result<Vec<f64>, _>>()?;
    curves.push(
        Curve::new(
            naming::ccdf(&naming::distance(1), "fluid"),
            "distance",
            "ccdf",
            "fluid",
            support,
            values,
        )
        .with_param("slot", 1)
        .with_param("bins", bins),
    );
    Ok(())
}

fn acceptable_curves(model: &Model, curves: &mut Vec<Curve>) -> Result<()> {
    let n = model.n;
    let base = naming::acceptable(1);
    for (adjusted, source) in [(false, "approx"), (true, "adjusted")] {
        let dist = acceptable_rank_ccdf(n, model.p, adjusted)?;
        curves.push(
            Curve::new(
                naming::ccdf(&base, source),
                "acceptable_rank",
                "ccdf",
                source,
                ranks(n),
                dist.s_vals().to_vec(),
            )
            .with_param("slot", 1),
        );
        curves.push(
            Curve::new(
                naming::pmf(&base, source),
                "acceptable_rank",
                "pmf",
                source,
                ranks(n - 1),
                dist.d_vals().to_vec(),
            )
            .with_param("slot", 1),
        );
    }
    Ok(())
}
