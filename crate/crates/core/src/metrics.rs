//! Empirical estimators over campaigns of stable configurations, and
//! small-world statistics of a single configuration.
//!
//! Histograms hold integer counts only, so merging per-instance partials is
//! associative and commutative and a parallel reduction gives bit-identical
//! curves regardless of scheduling.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::instance::{Configuration, Instance, Marks, PreferenceKind};

/// An empirical distribution with its CCDF.
///
/// `ccdf[k]` is the fraction of observations whose value is `>= support[k]`
/// or which are unmatched; `mass` holds the per-point (or per-bin) matched
/// fractions, so `sum(mass) + unmatched = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCurve {
    pub support: Vec<f64>,
    pub mass: Vec<f64>,
    pub ccdf: Vec<f64>,
    pub unmatched: f64,
    /// Observations (node, slot) contributing to the curve.
    pub n_samples: u64,
    pub instances: u64,
}

impl EmpiricalCurve {
    fn from_counts(support: Vec<f64>, counts: &[u64], unmatched: u64, instances: u64) -> Self {
        let total = counts.iter().sum::<u64>() + unmatched;
        let norm = if total == 0 { 0.0 } else { 1.0 / total as f64 };
        let mut ccdf = alloc::vec![0.0; support.len()];
        let mut tail = unmatched;
        // support may have one more point than counts (the "unmatched" end).
        for k in (0..support.len()).rev() {
            if k < counts.len() {
                tail += counts[k];
            }
            ccdf[k] = if total == 0 { 1.0 } else { tail as f64 * norm };
        }
        EmpiricalCurve {
            support,
            mass: counts.iter().map(|&c| c as f64 * norm).collect(),
            ccdf,
            unmatched: unmatched as f64 * norm,
            n_samples: total,
            instances,
        }
    }
}

/// Identity of a campaign, used to refuse mixing instances.
#[derive(Debug, Clone, PartialEq)]
struct CampaignKey {
    n: usize,
    kind: PreferenceKind,
    quota: Vec<u32>,
}

impl CampaignKey {
    fn of(inst: &Instance) -> Self {
        CampaignKey {
            n: inst.n(),
            kind: inst.kind(),
            quota: inst.quotas().to_vec(),
        }
    }

    fn check(&self, inst: &Instance) -> Result<()> {
        if self.n != inst.n() || self.kind != inst.kind() || self.quota != inst.quotas() {
            return Err(invalid(
                "instances of one campaign must share N, kind and quota",
            ));
        }
        Ok(())
    }
}

fn merge_keys(a: &mut Option<CampaignKey>, b: &Option<CampaignKey>) -> Result<()> {
    match (a.as_ref(), b) {
        (_, None) => Ok(()),
        (None, Some(k)) => {
            *a = Some(k.clone());
            Ok(())
        }
        (Some(x), Some(y)) if x == y => Ok(()),
        _ => Err(invalid("cannot merge histograms of different campaigns")),
    }
}

fn check_slot(inst: &Instance, slot: usize) -> Result<()> {
    let max_b = inst.quotas().iter().copied().max().unwrap_or(0) as usize;
    if slot == 0 || slot > max_b {
        return Err(invalid(alloc::format!("slot {slot} outside 1..={max_b}")));
    }
    Ok(())
}

fn check_conf(inst: &Instance, conf: &Configuration) -> Result<()> {
    if inst.n() != conf.n() {
        return Err(Error::MalformedConfiguration(alloc::format!(
            "{} mate lists for {} nodes",
            conf.n(),
            inst.n()
        )));
    }
    Ok(())
}

/// Complete ranks of all of `i`'s mates (0-based), in one pass over nodes.
fn mate_complete_ranks(inst: &Instance, conf: &Configuration, i: usize, out: &mut Vec<usize>) {
    out.clear();
    let mates = conf.mates0(i);
    if mates.is_empty() {
        return;
    }
    if let Marks::Labels = inst.marks() {
        out.extend(mates.iter().map(|&j| inst.complete_rank0(i, j as usize)));
        return;
    }
    let keys: Vec<_> = mates.iter().map(|&j| inst.key0(i, j as usize)).collect();
    out.resize(mates.len(), 1);
    for k in (0..inst.n()).filter(|&k| k != i) {
        let kk = inst.key0(i, k);
        for (r, key) in out.iter_mut().zip(&keys) {
            if kk < *key {
                *r += 1;
            }
        }
    }
}

/// Histograms of the complete rank of the mate in every slot.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RankHistogram {
    key: Option<CampaignKey>,
    /// Per slot, counts for ranks `1..N`.
    counts: Vec<Vec<u64>>,
    unmatched: Vec<u64>,
    instances: u64,
}

impl RankHistogram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn observe(&mut self, inst: &Instance, conf: &Configuration) -> Result<()> {
        check_conf(inst, conf)?;
        match &self.key {
            Some(k) => k.check(inst)?,
            None => {
                let slots = inst.quotas().iter().copied().max().unwrap_or(0) as usize;
                self.key = Some(CampaignKey::of(inst));
                self.counts = alloc::vec![alloc::vec![0; inst.n() - 1]; slots];
                self.unmatched = alloc::vec![0; slots];
            }
        }
        let mut ranks = Vec::new();
        for i in 0..inst.n() {
            mate_complete_ranks(inst, conf, i, &mut ranks);
            for (c, counts) in self.counts.iter_mut().enumerate() {
                match ranks.get(c) {
                    Some(&r) => counts[r - 1] += 1,
                    None => self.unmatched[c] += 1,
                }
            }
        }
        self.instances += 1;
        Ok(())
    }

    pub fn merge(&mut self, other: &RankHistogram) -> Result<()> {
        merge_keys(&mut self.key, &other.key)?;
        if self.counts.is_empty() {
            self.counts = other.counts.clone();
            self.unmatched = other.unmatched.clone();
        } else if !other.counts.is_empty() {
            for (a, b) in self.counts.iter_mut().zip(&other.counts) {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            }
            for (a, b) in self.unmatched.iter_mut().zip(&other.unmatched) {
                *a += b;
            }
        }
        self.instances += other.instances;
        Ok(())
    }

    /// Number of slots observed (the largest quota).
    pub fn slots(&self) -> usize {
        self.counts.len()
    }

    /// Curve over ranks `K = 1..=N` for the 1-based `slot`; `ccdf[N-1]` is
    /// the unmatched fraction.
    pub fn curve(&self, slot: usize) -> Result<EmpiricalCurve> {
        if slot == 0 || slot > self.slots() {
            return Err(invalid(alloc::format!(
                "slot {slot} outside 1..={}",
                self.slots()
            )));
        }
        let counts = &self.counts[slot - 1];
        let support = (1..=counts.len() + 1).map(|k| k as f64).collect();
        Ok(EmpiricalCurve::from_counts(
            support,
            counts,
            self.unmatched[slot - 1],
            self.instances,
        ))
    }
}

/// Histogram of the acceptable rank of the `slot`-th mate.
#[derive(Debug, Clone, PartialEq)]
pub struct AcceptableRankHistogram {
    slot: usize,
    key: Option<CampaignKey>,
    counts: Vec<u64>,
    unmatched: u64,
    instances: u64,
}

impl AcceptableRankHistogram {
    pub fn new(slot: usize) -> Self {
        AcceptableRankHistogram {
            slot,
            key: None,
            counts: Vec::new(),
            unmatched: 0,
            instances: 0,
        }
    }

    pub fn observe(&mut self, inst: &Instance, conf: &Configuration) -> Result<()> {
        check_conf(inst, conf)?;
        check_slot(inst, self.slot)?;
        match &self.key {
            Some(k) => k.check(inst)?,
            None => {
                self.key = Some(CampaignKey::of(inst));
                self.counts = alloc::vec![0; inst.n() - 1];
            }
        }
        for i in 0..inst.n() {
            match conf.mates0(i).get(self.slot - 1) {
                Some(&j) => self.counts[inst.acceptable_rank0(i, j as usize) - 1] += 1,
                None => self.unmatched += 1,
            }
        }
        self.instances += 1;
        Ok(())
    }

    pub fn merge(&mut self, other: &AcceptableRankHistogram) -> Result<()> {
        if self.slot != other.slot {
            return Err(invalid("cannot merge histograms of different slots"));
        }
        merge_keys(&mut self.key, &other.key)?;
        if self.counts.is_empty() {
            self.counts = other.counts.clone();
        } else {
            for (a, b) in self.counts.iter_mut().zip(&other.counts) {
                *a += b;
            }
        }
        self.unmatched += other.unmatched;
        self.instances += other.instances;
        Ok(())
    }

    /// Curve over acceptable ranks `k = 1..=N`.
    pub fn curve(&self) -> EmpiricalCurve {
        let support = (1..=self.counts.len() + 1).map(|k| k as f64).collect();
        EmpiricalCurve::from_counts(support, &self.counts, self.unmatched, self.instances)
    }
}

/// Frequency that node `node`'s `slot`-th mate is each `j` (node-based only).
#[derive(Debug, Clone, PartialEq)]
pub struct PairHistogram {
    node: usize,
    slot: usize,
    key: Option<CampaignKey>,
    counts: Vec<u64>,
    unmatched: u64,
    instances: u64,
}

impl PairHistogram {
    /// `node` is a 1-based label.
    pub fn new(node: usize, slot: usize) -> Self {
        PairHistogram {
            node,
            slot,
            key: None,
            counts: Vec::new(),
            unmatched: 0,
            instances: 0,
        }
    }

    pub fn observe(&mut self, inst: &Instance, conf: &Configuration) -> Result<()> {
        check_conf(inst, conf)?;
        if inst.kind() != PreferenceKind::NodeBased {
            return Err(Error::KindMismatch(
                "pair distributions need node-based preferences".into(),
            ));
        }
        check_slot(inst, self.slot)?;
        if self.node == 0 || self.node > inst.n() {
            return Err(Error::NodeOutOfRange {
                node: self.node,
                n: inst.n(),
            });
        }
        match &self.key {
            Some(k) => k.check(inst)?,
            None => {
                self.key = Some(CampaignKey::of(inst));
                self.counts = alloc::vec![0; inst.n()];
            }
        }
        match conf.mate(self.node, self.slot) {
            Some(j) => self.counts[j - 1] += 1,
            None => self.unmatched += 1,
        }
        self.instances += 1;
        Ok(())
    }

    pub fn merge(&mut self, other: &PairHistogram) -> Result<()> {
        if (self.node, self.slot) != (other.node, other.slot) {
            return Err(invalid(
                "cannot merge pair histograms of different nodes or slots",
            ));
        }
        merge_keys(&mut self.key, &other.key)?;
        if self.counts.is_empty() {
            self.counts = other.counts.clone();
        } else {
            for (a, b) in self.counts.iter_mut().zip(&other.counts) {
                *a += b;
            }
        }
        self.unmatched += other.unmatched;
        self.instances += other.instances;
        Ok(())
    }

    /// Curve over `j = 1..=N+1`; `mass[j-1]` estimates `D_c(i, j)` and
    /// `ccdf[j-1]` estimates `S_c(i, j)`.
    pub fn curve(&self) -> EmpiricalCurve {
        let n = self.counts.len();
        let support = (1..=n + 1).map(|k| k as f64).collect();
        EmpiricalCurve::from_counts(support, &self.counts, self.unmatched, self.instances)
    }
}

/// Default number of distance bins.
pub const DEFAULT_DISTANCE_BINS: usize = 200;

/// Histogram of the torus distance to the `slot`-th mate on uniform bins
/// covering `[0, diameter]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceHistogram {
    slot: usize,
    bins: usize,
    key: Option<CampaignKey>,
    diameter: f64,
    counts: Vec<u64>,
    unmatched: u64,
    instances: u64,
}

impl DistanceHistogram {
    pub fn new(slot: usize, bins: usize) -> Self {
        DistanceHistogram {
            slot,
            bins: bins.max(1),
            key: None,
            diameter: 0.0,
            counts: Vec::new(),
            unmatched: 0,
            instances: 0,
        }
    }

    pub fn observe(&mut self, inst: &Instance, conf: &Configuration) -> Result<()> {
        check_conf(inst, conf)?;
        let PreferenceKind::Geometric { dim, norm } = inst.kind() else {
            return Err(Error::KindMismatch(
                "distance curves need geometric preferences".into(),
            ));
        };
        check_slot(inst, self.slot)?;
        match &self.key {
            Some(k) => k.check(inst)?,
            None => {
                self.key = Some(CampaignKey::of(inst));
                self.diameter = norm.diameter(dim);
                self.counts = alloc::vec![0; self.bins];
            }
        }
        let width = self.diameter / self.bins as f64;
        for i in 0..inst.n() {
            match conf.mates0(i).get(self.slot - 1) {
                Some(&j) => {
                    let x = inst.mark0(i, j as usize);
                    let bin = ((x / width) as usize).min(self.bins - 1);
                    self.counts[bin] += 1;
                }
                None => self.unmatched += 1,
            }
        }
        self.instances += 1;
        Ok(())
    }

    pub fn merge(&mut self, other: &DistanceHistogram) -> Result<()> {
        if (self.slot, self.bins) != (other.slot, other.bins) {
            return Err(invalid(
                "cannot merge distance histograms with different layouts",
            ));
        }
        merge_keys(&mut self.key, &other.key)?;
        if self.counts.is_empty() {
            self.counts = other.counts.clone();
            self.diameter = other.diameter;
        } else {
            for (a, b) in self.counts.iter_mut().zip(&other.counts) {
                *a += b;
            }
        }
        self.unmatched += other.unmatched;
        self.instances += other.instances;
        Ok(())
    }

    /// Curve on the bin edges `x_k = k * diameter / bins`, `k = 0..=bins`.
    /// `ccdf[k]` is the fraction with distance `>= x_k` or unmatched.
    pub fn curve(&self) -> EmpiricalCurve {
        let width = self.diameter / self.bins as f64;
        let support = (0..=self.bins).map(|k| k as f64 * width).collect();
        EmpiricalCurve::from_counts(support, &self.counts, self.unmatched, self.instances)
    }
}

/// Complete-rank distribution of the `slot`-th mate over a campaign.
pub fn empirical_rank_dist<'a>(
    samples: impl IntoIterator<Item = (&'a Instance, &'a Configuration)>,
    slot: usize,
) -> Result<EmpiricalCurve> {
    let mut h = RankHistogram::new();
    for (inst, conf) in samples {
        h.observe(inst, conf)?;
    }
    h.curve(slot)
}

/// Distribution of node `node`'s `slot`-th mate over a node-based campaign.
pub fn empirical_pair_dist<'a>(
    samples: impl IntoIterator<Item = (&'a Instance, &'a Configuration)>,
    node: usize,
    slot: usize,
) -> Result<EmpiricalCurve> {
    let mut h = PairHistogram::new(node, slot);
    for (inst, conf) in samples {
        h.observe(inst, conf)?;
    }
    Ok(h.curve())
}

/// Distance-to-mate CCDF over a geometric campaign (first mate).
pub fn empirical_distance_ccdf<'a>(
    samples: impl IntoIterator<Item = (&'a Instance, &'a Configuration)>,
    bins: usize,
) -> Result<EmpiricalCurve> {
    let mut h = DistanceHistogram::new(1, bins);
    for (inst, conf) in samples {
        h.observe(inst, conf)?;
    }
    Ok(h.curve())
}

/// Acceptable-rank distribution of the first mate over a campaign.
pub fn empirical_acceptable_rank<'a>(
    samples: impl IntoIterator<Item = (&'a Instance, &'a Configuration)>,
) -> Result<EmpiricalCurve> {
    let mut h = AcceptableRankHistogram::new(1);
    for (inst, conf) in samples {
        h.observe(inst, conf)?;
    }
    Ok(h.curve())
}

/// Average shortest path length of a configuration graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aspl {
    pub mean: f64,
    /// Ordered pairs of distinct, mutually reachable nodes.
    pub connected_pairs: u64,
    /// Ordered pairs of distinct nodes with no path between them.
    pub disconnected_pairs: u64,
    /// Mean over non-isolated nodes of the largest BFS distance reached.
    pub mean_eccentricity: f64,
}

/// Mean BFS distance over connected ordered pairs; `None` when no pair is
/// connected.
pub fn aspl(conf: &Configuration) -> Option<Aspl> {
    let n = conf.n();
    let mut dist = alloc::vec![u32::MAX; n];
    let mut queue = VecDeque::with_capacity(n);
    let mut total: u64 = 0;
    let mut connected: u64 = 0;
    let mut ecc_total: u64 = 0;
    let mut non_isolated: u64 = 0;
    for src in 0..n {
        dist.iter_mut().for_each(|d| *d = u32::MAX);
        dist[src] = 0;
        queue.clear();
        queue.push_back(src);
        let mut ecc = 0;
        while let Some(u) = queue.pop_front() {
            let du = dist[u];
            for &v in conf.mates0(u) {
                let v = v as usize;
                if dist[v] == u32::MAX {
                    dist[v] = du + 1;
                    ecc = du + 1;
                    total += (du + 1) as u64;
                    connected += 1;
                    queue.push_back(v);
                }
            }
        }
        if ecc > 0 {
            ecc_total += ecc as u64;
            non_isolated += 1;
        }
    }
    let all = (n as u64) * (n as u64).saturating_sub(1);
    (connected > 0).then(|| Aspl {
        mean: total as f64 / connected as f64,
        connected_pairs: connected,
        disconnected_pairs: all - connected,
        mean_eccentricity: ecc_total as f64 / non_isolated as f64,
    })
}

/// Per-node closed-triangle counts and wedge counts.
fn triangles(conf: &Configuration) -> (Vec<u64>, Vec<u64>) {
    let n = conf.n();
    let mut tri = alloc::vec![0u64; n];
    let mut wedges = alloc::vec![0u64; n];
    let mut mark = alloc::vec![false; n];
    for i in 0..n {
        let nb = conf.mates0(i);
        let k = nb.len() as u64;
        wedges[i] = k * k.saturating_sub(1) / 2;
        for &j in nb {
            mark[j as usize] = true;
        }
        let mut closed = 0u64;
        for &j in nb {
            closed += conf
                .mates0(j as usize)
                .iter()
                .filter(|&&w| mark[w as usize])
                .count() as u64;
        }
        tri[i] = closed / 2;
        for &j in nb {
            mark[j as usize] = false;
        }
    }
    (tri, wedges)
}

/// Global transitivity: `3 * triangles / paths of length 2`, 0 without any
/// length-2 path.
pub fn clustering(conf: &Configuration) -> f64 {
    let (tri, wedges) = triangles(conf);
    let w: u64 = wedges.iter().sum();
    if w == 0 {
        0.0
    } else {
        tri.iter().sum::<u64>() as f64 / w as f64
    }
}

/// Mean of the local clustering coefficients, nodes of degree < 2 counting
/// as 0.
pub fn mean_local_clustering(conf: &Configuration) -> f64 {
    let (tri, wedges) = triangles(conf);
    let n = conf.n();
    if n == 0 {
        return 0.0;
    }
    tri.iter()
        .zip(&wedges)
        .map(|(&t, &w)| if w == 0 { 0.0 } else { t as f64 / w as f64 })
        .sum::<f64>()
        / n as f64
}

/// Clustering of a random graph with the same degree budget, `b / (N - 1)`.
pub fn clustering_baseline(b: u32, n: usize) -> f64 {
    b as f64 / (n as f64 - 1.0)
}

/// Small-world statistics of one configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphStats {
    pub aspl: Option<Aspl>,
    pub transitivity: f64,
    pub mean_local_clustering: f64,
    pub baseline: f64,
}

impl GraphStats {
    pub fn of(conf: &Configuration, b: u32) -> Self {
        GraphStats {
            aspl: aspl(conf),
            transitivity: clustering(conf),
            mean_local_clustering: mean_local_clustering(conf),
            baseline: clustering_baseline(b, conf.n()),
        }
    }
}

/// `max_k |a_k - b_k|` over the common prefix.
pub fn sup_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| libm::fabs(x - y))
        .fold(0.0, f64::max)
}
