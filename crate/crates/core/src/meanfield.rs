//! Discrete analytical solvers.
//!
//! All recursions here are triangular: every right-hand term has a strictly
//! smaller index (or index sum), so a single ordered pass computes them
//! exactly and no fixed-point iteration or convergence tolerance is involved.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::stable_configuration;
use crate::error::{invalid, Result};
use crate::instance::{AcceptanceGraph, Instance, Marks, PreferenceKind};

/// A discrete rank distribution `D(K)`, `K = 1..N-1`, and its CCDF `S(K)`,
/// `K = 1..N`, for one mate slot.
///
/// `S(K)` is the probability that the slot holds a mate of rank `>= K` or is
/// empty, so `S(N)` is the probability that the slot is unfilled.
#[derive(Debug, Clone, PartialEq)]
pub struct RankDistribution {
    pub n: usize,
    pub p: f64,
    pub b: u32,
    /// 1-based slot index.
    pub slot: u32,
    d_vals: Vec<f64>,
    s_vals: Vec<f64>,
}

impl RankDistribution {
    /// Builds the distribution from its CCDF `S(1..=N)`.
    pub fn from_ccdf(n: usize, p: f64, b: u32, slot: u32, s_vals: Vec<f64>) -> Self {
        assert_eq!(s_vals.len(), n, "CCDF must have N entries");
        let d_vals = s_vals.windows(2).map(|w| w[0] - w[1]).collect();
        RankDistribution {
            n,
            p,
            b,
            slot,
            d_vals,
            s_vals,
        }
    }

    /// `D(K)` for `K` in `1..N`.
    pub fn d(&self, k: usize) -> f64 {
        self.d_vals[k - 1]
    }

    /// `S(K)` for `K` in `1..=N`.
    pub fn s(&self, k: usize) -> f64 {
        self.s_vals[k - 1]
    }

    pub fn d_vals(&self) -> &[f64] {
        &self.d_vals
    }

    pub fn s_vals(&self) -> &[f64] {
        &self.s_vals
    }

    /// Probability that the slot stays empty, `S(N)`.
    pub fn unmatched(&self) -> f64 {
        *self.s_vals.last().unwrap()
    }
}

/// Mate probabilities `D_c(i, j)` of node-based systems, with CCDFs
/// `S_c(i, j) = 1 - sum_{k<j} D_c(i, k)` for `j = 1..=N+1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairDistribution {
    pub n: usize,
    pub p: f64,
    pub b: u32,
    /// Per slot, row-major `N x N`.
    d: Vec<Vec<f64>>,
    /// Per slot, row-major `N x (N + 1)`.
    s: Vec<Vec<f64>>,
}

impl PairDistribution {
    fn from_d(n: usize, p: f64, b: u32, d: Vec<Vec<f64>>) -> Self {
        let s = d
            .iter()
            .map(|slot| {
                let mut s = Vec::with_capacity(n * (n + 1));
                for row in slot.chunks_exact(n) {
                    let mut acc = 1.0;
                    s.push(acc);
                    for &v in row {
                        acc -= v;
                        s.push(acc);
                    }
                }
                s
            })
            .collect();
        PairDistribution { n, p, b, d, s }
    }

    /// `D_c(i, j)`, all indices 1-based.
    pub fn d(&self, c: usize, i: usize, j: usize) -> f64 {
        self.d[c - 1][(i - 1) * self.n + (j - 1)]
    }

    /// `S_c(i, j)` for `j` in `1..=N+1`.
    pub fn s(&self, c: usize, i: usize, j: usize) -> f64 {
        self.s[c - 1][(i - 1) * (self.n + 1) + (j - 1)]
    }

    /// Row `D_c(i, 1..=N)`.
    pub fn d_row(&self, c: usize, i: usize) -> &[f64] {
        &self.d[c - 1][(i - 1) * self.n..i * self.n]
    }

    /// Row `S_c(i, 1..=N+1)`.
    pub fn s_row(&self, c: usize, i: usize) -> &[f64] {
        let w = self.n + 1;
        &self.s[c - 1][(i - 1) * w..i * w]
    }

    /// Probability that slot `c` of node `i` stays empty.
    pub fn unmatched(&self, c: usize, i: usize) -> f64 {
        self.s(c, i, self.n + 1)
    }
}

fn check_np(n: usize, p: f64) -> Result<()> {
    if n < 2 {
        return Err(invalid("N must be at least 2"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(alloc::format!("p = {p} outside [0, 1]")));
    }
    Ok(())
}

/// Mean-field node-based mate distribution for simple matchings:
/// `D(i, j) = p S(i, j) S(j, i)` off the diagonal.
pub fn solve_node_b1(n: usize, p: f64) -> Result<PairDistribution> {
    solve_node_bmatch(n, p, 1)
}

/// Mean-field node-based b-matching system,
/// `D_1(i, j) = p S_1(i, j) S_b(j, i)` and
/// `D_c(i, j) = p (S_c - S_{c-1})(i, j) S_b(j, i)` for `c > 1`.
///
/// Evaluated by anti-diagonals `i + j = const`: the CCDFs on a diagonal only
/// need the previous diagonal, and the masses on a diagonal only need the
/// CCDFs of the same diagonal.
pub fn solve_node_bmatch(n: usize, p: f64, b: u32) -> Result<PairDistribution> {
    check_np(n, p)?;
    if b == 0 {
        return Err(invalid("quota must be at least 1"));
    }
    let slots = b as usize;
    let w = n + 1;
    let mut d = alloc::vec![alloc::vec![0.0f64; n * n]; slots];
    let mut s = alloc::vec![alloc::vec![0.0f64; n * w]; slots];

    for sum in 0..=(2 * n - 2) {
        let lo = sum.saturating_sub(n - 1);
        let hi = sum.min(n - 1);
        for i in lo..=hi {
            let j = sum - i;
            for c in 0..slots {
                s[c][i * w + j] = if j == 0 {
                    1.0
                } else {
                    s[c][i * w + j - 1] - d[c][i * n + j - 1]
                };
            }
        }
        for i in lo..=hi {
            let j = sum - i;
            if i == j {
                continue;
            }
            let partner_full = s[slots - 1][j * w + i];
            for c in 0..slots {
                let free = if c == 0 {
                    s[0][i * w + j]
                } else {
                    s[c][i * w + j] - s[c - 1][i * w + j]
                };
                d[c][i * n + j] = p * free * partner_full;
            }
        }
    }
    for c in 0..slots {
        for i in 0..n {
            s[c][i * w + n] = s[c][i * w + n - 1] - d[c][i * n + n - 1];
        }
    }
    Ok(PairDistribution { n, p, b, d, s })
}

/// Exact node-based distribution for simple matchings, from conditioning on
/// the mate of node 1:
///
/// `D(1, k) = p (1-p)^{k-2}` and, for `1 < i < j`,
/// `D(i, j) = A(i) D(i-2, j-2) + B(i, j) D(i-1, j-2) + C(j) D(i-1, j-1)`
/// with `A(i) = 1 - (1-p)^{i-2}`, `B(i, j) = (1-p)^{i-1} - (1-p)^{j-2}`,
/// `C(j) = (1-p)^{j-1}`. The lower triangle follows by symmetry.
pub fn solve_node_exact_b1(n: usize, p: f64) -> Result<PairDistribution> {
    check_np(n, p)?;
    let q = 1.0 - p;
    // q_pow[k] = (1-p)^k by repeated multiplication.
    let mut q_pow = Vec::with_capacity(n + 1);
    q_pow.push(1.0f64);
    for k in 1..=n {
        q_pow.push(q_pow[k - 1] * q);
    }
    let mut d = alloc::vec![0.0f64; n * n];
    // 1-based accessor; a first index of 0 only occurs multiplied by A(2) = 0.
    let at = |d: &[f64], i: usize, j: usize| -> f64 {
        if i == 0 {
            0.0
        } else {
            d[(i - 1) * n + (j - 1)]
        }
    };
    for k in 2..=n {
        d[k - 1] = p * q_pow[k - 2];
    }
    for i in 2..=n {
        let a = 1.0 - q_pow[i - 2];
        for j in (i + 1)..=n {
            let bij = q_pow[i - 1] - q_pow[j - 2];
            let cj = q_pow[j - 1];
            let v =
                a * at(&d, i - 2, j - 2) + bij * at(&d, i - 1, j - 2) + cj * at(&d, i - 1, j - 1);
            d[(i - 1) * n + (j - 1)] = v;
        }
    }
    for i in 0..n {
        for j in 0..i {
            d[i * n + j] = d[j * n + i];
        }
    }
    Ok(PairDistribution::from_d(n, p, 1, alloc::vec![d]))
}

/// How [`brute_force_node_b1`] covers the space of acceptance graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Enumeration {
    /// Every one of the `2^{N(N-1)/2}` graphs, weighted by its probability.
    Exhaustive,
    /// Seeded sampling of `samples` graphs from `G(N, p)`.
    Sampled { samples: u64, seed: u64 },
}

/// Largest `N` for which exhaustive enumeration is allowed.
pub const EXHAUSTIVE_MAX_N: usize = 7;
/// Largest `N` accepted at all by the brute-force oracle.
pub const BRUTE_FORCE_MAX_N: usize = 12;

/// Mate probabilities of node-based simple matchings computed from the
/// stable configurations themselves: `D(i, j) = sum_G P(G) 1[i <-> j in C(G)]`.
pub fn brute_force_node_b1(n: usize, p: f64, mode: Enumeration) -> Result<PairDistribution> {
    check_np(n, p)?;
    if n > BRUTE_FORCE_MAX_N {
        return Err(invalid(alloc::format!(
            "brute force is limited to N <= {BRUTE_FORCE_MAX_N}"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let mut d = alloc::vec![0.0f64; n * n];
    let mut accumulate = |edges: &[(usize, usize)], weight: f64| {
        let inst = Instance::new(
            PreferenceKind::NodeBased,
            Marks::Labels,
            AcceptanceGraph::from_edges(n, edges).expect("pairs are valid"),
            alloc::vec![1; n],
        )
        .expect("valid node-based instance");
        for (i, j) in stable_configuration(&inst).pairs() {
            d[(i - 1) * n + (j - 1)] += weight;
            d[(j - 1) * n + (i - 1)] += weight;
        }
    };
    match mode {
        Enumeration::Exhaustive => {
            if n > EXHAUSTIVE_MAX_N {
                return Err(invalid(alloc::format!(
                    "exhaustive enumeration is limited to N <= {EXHAUSTIVE_MAX_N}; request sampling above"
                )));
            }
            let m = pairs.len();
            let mut edges = Vec::with_capacity(m);
            for mask in 0u64..(1u64 << m) {
                edges.clear();
                edges.extend((0..m).filter(|&e| mask >> e & 1 == 1).map(|e| pairs[e]));
                let k = edges.len() as i32;
                let weight = libm::pow(p, k as f64) * libm::pow(1.0 - p, (m as i32 - k) as f64);
                if weight > 0.0 {
                    accumulate(&edges, weight);
                }
            }
        }
        Enumeration::Sampled { samples, seed } => {
            if samples == 0 {
                return Err(invalid("sampling needs at least one sample"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let weight = 1.0 / samples as f64;
            let mut edges = Vec::with_capacity(pairs.len());
            for _ in 0..samples {
                edges.clear();
                edges.extend(pairs.iter().copied().filter(|_| rng.gen_bool(p)));
                accumulate(&edges, weight);
            }
        }
    }
    Ok(PairDistribution::from_d(n, p, 1, alloc::vec![d]))
}

/// Homogeneous complete-rank recursion for simple matchings:
/// `S(1) = 1`, `S(K) = S(K-1) - p S(K-1)^2`.
pub fn solve_rank_b1(n: usize, p: f64) -> Result<RankDistribution> {
    Ok(solve_rank_bmatch(n, p, 1)?.remove(0))
}

/// Homogeneous complete-rank recursion for b-matchings, one distribution per
/// slot: `D_{R,1}(K) = p S_{R,1}(K) S_{R,b}(K)` and
/// `D_{R,c}(K) = p (S_{R,c} - S_{R,c-1})(K) S_{R,b}(K)`, all slots advanced
/// together from `S_{R,c}(1) = 1`.
pub fn solve_rank_bmatch(n: usize, p: f64, b: u32) -> Result<Vec<RankDistribution>> {
    check_np(n, p)?;
    if b == 0 {
        return Err(invalid("quota must be at least 1"));
    }
    let slots = b as usize;
    let mut s: Vec<Vec<f64>> = (0..slots).map(|_| Vec::with_capacity(n)).collect();
    let mut cur = alloc::vec![1.0f64; slots];
    for _k in 1..n {
        for c in 0..slots {
            s[c].push(cur[c]);
        }
        let full = cur[slots - 1];
        let mut next = cur.clone();
        for c in 0..slots {
            let free = if c == 0 { cur[0] } else { cur[c] - cur[c - 1] };
            next[c] = cur[c] - p * free * full;
        }
        cur = next;
    }
    for c in 0..slots {
        s[c].push(cur[c]);
    }
    Ok(s.into_iter()
        .enumerate()
        .map(|(c, sv)| RankDistribution::from_ccdf(n, p, b, c as u32 + 1, sv))
        .collect())
}
