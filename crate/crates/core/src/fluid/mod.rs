//! Fluid limits under constant-degree scaling (`d = p (N - 1)` fixed).
//!
//! Node-based systems are described on the unit square by the scaled ranks
//! `alpha = (i - 1) / N` and `beta = (j - 1) / N`; homogeneous kinds by a
//! single scaled rank `alpha = (K - 1) / (N - 1)`.

pub mod special;

use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::instance::Norm;
use crate::meanfield::{solve_node_bmatch, PairDistribution, RankDistribution};

pub use special::{dr1_constant, exp_integral_e1, reg_inc_beta};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    /// Starts at 1 and is non-increasing.
    Ccdf,
    /// Non-negative density.
    Density,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FluidMeta {
    pub d: f64,
    pub b: u32,
    pub slot: u32,
    pub kind: CurveKind,
    pub function: &'static str,
}

/// A continuous-limit function sampled on a sorted grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FluidCurve {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub meta: FluidMeta,
}

impl FluidCurve {
    /// Right-continuous step evaluation at `x`.
    pub fn at(&self, x: f64) -> f64 {
        let idx = self.grid.partition_point(|&g| g <= x);
        self.values[idx.saturating_sub(1)]
    }
}

fn check_degree(d: f64) -> Result<()> {
    if d > 0.0 && d.is_finite() {
        Ok(())
    } else {
        Err(invalid(alloc::format!("degree must be positive, got {d}")))
    }
}

/// `S(alpha, beta) = 1 / (1 - e^{-d alpha} + e^{d (beta - alpha)})`, the
/// limit CCDF of node-based simple matchings.
pub fn s_inf_node(alpha: f64, beta: f64, d: f64) -> Result<f64> {
    check_degree(d)?;
    Ok(1.0 / (1.0 - libm::exp(-d * alpha) + libm::exp(d * (beta - alpha))))
}

/// Limit mate density `d e^{d|beta-alpha|} / (1 - e^{-d min} + e^{d|beta-alpha|})^2`.
pub fn d_inf_node(alpha: f64, beta: f64, d: f64) -> Result<f64> {
    check_degree(d)?;
    let gap = libm::exp(d * libm::fabs(beta - alpha));
    let den = 1.0 - libm::exp(-d * alpha.min(beta)) + gap;
    Ok(d * gap / (den * den))
}

/// Probability that a node of scaled rank `alpha` has no mate, taken as the
/// limit CCDF at the far end, `S(alpha, 1)`.
pub fn unmatched_prob_node(alpha: f64, d: f64) -> Result<f64> {
    s_inf_node(alpha, 1.0, d)
}

/// Discrete approximation of `D(i, j)` read off the node-based limit:
/// `p e^{p|j-i|} / (1 - e^{-p min(i,j)} + e^{p|j-i|})^2` (1-based labels).
pub fn pair_prob_approx(i: usize, j: usize, p: f64) -> f64 {
    let gap = libm::exp(p * (i as f64 - j as f64).abs());
    let den = 1.0 - libm::exp(-p * i.min(j) as f64) + gap;
    p * gap / (den * den)
}

/// Limit complete-rank CCDF of homogeneous kinds, `1 / (d alpha + 1)`.
pub fn s_inf_rank(alpha: f64, d: f64) -> Result<f64> {
    check_degree(d)?;
    Ok(1.0 / (d * alpha + 1.0))
}

/// Discrete reading of the limit, `S_R(K) = 1 / (p (K - 1) + 1)`.
pub fn s_rank_approx(k: f64, p: f64) -> f64 {
    1.0 / (p * (k - 1.0) + 1.0)
}

/// Fraction of the unit `dim`-torus within distance `x` of a point.
///
/// Max norm: `min((2x)^dim, 1)`. Taxicab is only available for `dim` 1 and 3,
/// since other dimensions need the self-overlap of the ball worked out.
pub fn ball_volume(x: f64, dim: usize, norm: Norm) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(invalid(alloc::format!(
            "radius must be non-negative, got {x}"
        )));
    }
    match (norm, dim) {
        (_, 0) => Err(invalid("torus dimension must be at least 1")),
        (Norm::Max, n) => Ok(libm::pow(2.0 * x, n as f64).min(1.0)),
        (Norm::Taxicab, 1) => Ok((2.0 * x).min(1.0)),
        (Norm::Taxicab, 3) => {
            let cube = |t: f64| t * t * t;
            Ok(if x <= 0.5 {
                4.0 / 3.0 * cube(x)
            } else if x <= 1.0 {
                4.0 / 3.0 * cube(x) - 4.0 * cube(x - 0.5)
            } else if x <= 1.5 {
                1.0 - 4.0 / 3.0 * cube(1.5 - x)
            } else {
                1.0
            })
        }
        (Norm::Taxicab, n) => Err(Error::UnsupportedBall {
            dim: n,
            norm: Norm::Taxicab.name(),
        }),
    }
}

/// Limit CCDF of the distance to the mate, `1 / (d B(x) + 1)`.
pub fn s_distance(x: f64, d: f64, dim: usize, norm: Norm) -> Result<f64> {
    check_degree(d)?;
    Ok(1.0 / (d * ball_volume(x, dim, norm)? + 1.0))
}

/// Rough acceptable-rank distribution with `n = N - 1` potential neighbors:
/// `D_r(k) = S_r(k) (1 - I_{1-p}(n - k + 1, k)) / (k + 1)`.
///
/// With `adjusted`, `D_r(1)` is replaced by `e E1(1)` and the recursion
/// continues from `S_r(2) = 1 - D_r(1)`.
pub fn acceptable_rank_ccdf(n_nodes: usize, p: f64, adjusted: bool) -> Result<RankDistribution> {
    if n_nodes < 2 {
        return Err(invalid("N must be at least 2"));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(invalid(alloc::format!("p = {p} outside (0, 1]")));
    }
    let n = n_nodes - 1;
    let mut s = Vec::with_capacity(n_nodes);
    let mut cur = 1.0;
    for k in 1..=n {
        s.push(cur);
        let dk = if adjusted && k == 1 {
            dr1_constant()
        } else {
            let enough = 1.0 - reg_inc_beta(1.0 - p, (n - k + 1) as f64, k as f64)?;
            cur * enough / (k as f64 + 1.0)
        };
        cur -= dk;
    }
    s.push(cur);
    Ok(RankDistribution::from_ccdf(n_nodes, p, 1, 1, s))
}

/// Classical fixed-step fourth-order Runge–Kutta on `y' = f(y)` from
/// `t = 0` to `t = 1` in `steps` steps; returns the state at every grid point.
pub fn rk4_autonomous(y0: &[f64], steps: usize, f: impl Fn(&[f64], &mut [f64])) -> Vec<Vec<f64>> {
    let m = y0.len();
    let h = 1.0 / steps as f64;
    let mut out = Vec::with_capacity(steps + 1);
    let mut y = y0.to_vec();
    let (mut k1, mut k2, mut k3, mut k4) = (
        alloc::vec![0.0; m],
        alloc::vec![0.0; m],
        alloc::vec![0.0; m],
        alloc::vec![0.0; m],
    );
    let mut tmp = alloc::vec![0.0; m];
    out.push(y.clone());
    for _ in 0..steps {
        f(&y, &mut k1);
        for q in 0..m {
            tmp[q] = y[q] + 0.5 * h * k1[q];
        }
        f(&tmp, &mut k2);
        for q in 0..m {
            tmp[q] = y[q] + 0.5 * h * k2[q];
        }
        f(&tmp, &mut k3);
        for q in 0..m {
            tmp[q] = y[q] + h * k3[q];
        }
        f(&tmp, &mut k4);
        for q in 0..m {
            y[q] += h / 6.0 * (k1[q] + 2.0 * k2[q] + 2.0 * k3[q] + k4[q]);
        }
        out.push(y.clone());
    }
    out
}

/// Limit complete-rank CCDFs of homogeneous b-matchings, one curve per slot:
/// `S_1' = -d S_1 S_b`, `S_c' = -d (S_c - S_{c-1}) S_b`, `S_c(0) = 1`,
/// integrated on `[0, 1]` with step `1 / grid_size`.
pub fn fluid_rank_bmatch(d: f64, b: u32, grid_size: usize) -> Result<Vec<FluidCurve>> {
    check_degree(d)?;
    if b == 0 {
        return Err(invalid("quota must be at least 1"));
    }
    if grid_size < 100 {
        return Err(invalid("grid size must be at least 100"));
    }
    let slots = b as usize;
    let states = rk4_autonomous(&alloc::vec![1.0; slots], grid_size, |y, dy| {
        let full = y[slots - 1];
        for c in 0..slots {
            let free = if c == 0 { y[0] } else { y[c] - y[c - 1] };
            dy[c] = -d * free * full;
        }
    });
    let grid: Vec<f64> = (0..=grid_size)
        .map(|k| k as f64 / grid_size as f64)
        .collect();
    Ok((0..slots)
        .map(|c| FluidCurve {
            grid: grid.clone(),
            values: states.iter().map(|y| y[c]).collect(),
            meta: FluidMeta {
                d,
                b,
                slot: c as u32 + 1,
                kind: CurveKind::Ccdf,
                function: "fluid_rank_bmatch",
            },
        })
        .collect())
}

/// Node-based b-matching limit sampled on a square grid.
///
/// The coupled system `d_beta S_c(alpha, beta) = -d (S_c - S_{c-1})(alpha,
/// beta) S_b(beta, alpha)` with `S_c(alpha, 0) = 1` is solved by the discrete
/// mean-field recursion on `grid_size + 1` nodes with `p = d / grid_size`,
/// which is its natural difference scheme. Node `ia + 1` sits at
/// `alpha = ia / grid_size`, and `beta` is the scaled position in that node's
/// own preference list, so the node itself is skipped.
#[derive(Debug, Clone, PartialEq)]
pub struct FluidSurface {
    pub d: f64,
    pub b: u32,
    pub grid_size: usize,
    pairs: PairDistribution,
}

impl FluidSurface {
    /// `S_c` at `alpha = ia / grid_size`, `beta = ib / grid_size`, both
    /// indices in `0..=grid_size`.
    pub fn s_at(&self, c: usize, ia: usize, ib: usize) -> f64 {
        let i = ia + 1;
        let j = if ib + 1 < i { ib + 1 } else { ib + 2 };
        self.pairs.s(c, i, j)
    }

    /// `S_c(alpha, beta)` at the grid cell containing the point.
    pub fn s(&self, c: usize, alpha: f64, beta: f64) -> f64 {
        let g = self.grid_size as f64;
        let cell = |x: f64| ((x * g) as usize).min(self.grid_size);
        self.s_at(c, cell(alpha), cell(beta))
    }

    pub fn grid(&self) -> Vec<f64> {
        (0..=self.grid_size)
            .map(|k| k as f64 / self.grid_size as f64)
            .collect()
    }

    /// The underlying discrete solution on `grid_size + 1` nodes.
    pub fn pairs(&self) -> &PairDistribution {
        &self.pairs
    }

    /// The `beta` section of slot `c` at row `ia`, as a CCDF curve.
    pub fn section(&self, c: usize, ia: usize) -> FluidCurve {
        FluidCurve {
            grid: self.grid(),
            values: (0..=self.grid_size)
                .map(|ib| self.s_at(c, ia, ib))
                .collect(),
            meta: FluidMeta {
                d: self.d,
                b: self.b,
                slot: c as u32,
                kind: CurveKind::Ccdf,
                function: "fluid_node_bmatch",
            },
        }
    }
}

pub fn fluid_node_bmatch(d: f64, b: u32, grid_size: usize) -> Result<FluidSurface> {
    check_degree(d)?;
    if grid_size < 100 {
        return Err(invalid("grid size must be at least 100"));
    }
    let p = d / grid_size as f64;
    if p > 1.0 {
        return Err(invalid(alloc::format!(
            "grid of {grid_size} cells is too coarse for d = {d}"
        )));
    }
    Ok(FluidSurface {
        d,
        b,
        grid_size,
        pairs: solve_node_bmatch(grid_size + 1, p, b)?,
    })
}
