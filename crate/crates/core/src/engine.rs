//! Stable configuration of an acyclic system and an independent checker.
//!
//! With symmetric marks, the acceptance edge with the smallest key is the
//! first choice of both its endpoints, so it belongs to every stable
//! configuration. Scanning edges by increasing key and accepting each one
//! whose endpoints still have quota repeats that argument and yields the
//! unique stable b-matching in `O(E log E)`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::instance::{Configuration, Instance};

pub use crate::instance::EdgeKey;

/// Preference key of the acceptable pair `{i, j}` (1-based).
pub fn symmetric_edge_key(instance: &Instance, i: usize, j: usize) -> Result<EdgeKey> {
    if !instance.is_acceptable(i, j)? {
        return Err(Error::NotAcceptable { i, j });
    }
    Ok(instance.key0(i - 1, j - 1))
}

/// The unique stable configuration, by greedy scan of sorted edges.
pub fn stable_configuration(instance: &Instance) -> Configuration {
    let n = instance.n();
    let mut edges: Vec<(EdgeKey, u32, u32)> = instance
        .acceptance()
        .edges()
        .map(|(i, j)| (instance.key0(i, j), i as u32, j as u32))
        .collect();
    edges.sort_unstable_by_key(|e| e.0);

    let mut residual: Vec<u32> = instance.quotas().to_vec();
    let mut mates: Vec<Vec<u32>> = (0..n)
        .map(|i| Vec::with_capacity(residual[i].min(8) as usize))
        .collect();
    for (_, i, j) in edges {
        let (iu, ju) = (i as usize, j as usize);
        if residual[iu] > 0 && residual[ju] > 0 {
            residual[iu] -= 1;
            residual[ju] -= 1;
            // Keys arrive in increasing order, which is each endpoint's
            // preference order, so the lists come out best-first.
            mates[iu].push(j);
            mates[ju].push(i);
        }
    }
    Configuration::from_raw(mates)
}

fn check_well_formed(instance: &Instance, conf: &Configuration) -> Result<()> {
    let n = instance.n();
    let bad = |msg: alloc::string::String| Err(Error::MalformedConfiguration(msg));
    if conf.n() != n {
        return bad(alloc::format!("{} mate lists for {n} nodes", conf.n()));
    }
    for i in 0..n {
        let list = conf.mates0(i);
        if list.len() > instance.quotas()[i] as usize {
            return bad(alloc::format!(
                "node {} has {} mates, quota {}",
                i + 1,
                list.len(),
                instance.quotas()[i]
            ));
        }
        for (pos, &j) in list.iter().enumerate() {
            let j = j as usize;
            if j >= n {
                return bad(alloc::format!(
                    "node {} lists a mate outside 1..={n}",
                    i + 1
                ));
            }
            if j == i {
                return bad(alloc::format!("node {} is mated with itself", i + 1));
            }
            if list[..pos].contains(&(j as u32)) {
                return bad(alloc::format!("node {} lists mate {} twice", i + 1, j + 1));
            }
            if !conf.mates0(j).contains(&(i as u32)) {
                return bad(alloc::format!(
                    "node {} lists {} but not the reverse",
                    i + 1,
                    j + 1
                ));
            }
            if !instance.acceptance().has_edge(i, j) {
                return bad(alloc::format!(
                    "pair {{{}, {}}} is not acceptable",
                    i + 1,
                    j + 1
                ));
            }
        }
    }
    Ok(())
}

/// All blocking pairs of `conf`, as 1-based `(i, j)` with `i < j`.
///
/// A blocking pair is an acceptable, unmated pair whose endpoints each have
/// spare quota or prefer the other to their current worst mate. An empty list
/// means the configuration is stable. Quota, mutuality, and acceptance
/// violations are reported as [`Error::MalformedConfiguration`].
pub fn verify_stability(instance: &Instance, conf: &Configuration) -> Result<Vec<(usize, usize)>> {
    check_well_formed(instance, conf)?;
    let n = instance.n();
    // Worst current mate per node, found from the keys rather than trusting
    // the list order.
    let worst: Vec<Option<usize>> = (0..n)
        .map(|i| {
            conf.mates0(i)
                .iter()
                .map(|&j| j as usize)
                .max_by(|&a, &b| instance.key0(i, a).cmp(&instance.key0(i, b)))
        })
        .collect();
    let wants = |i: usize, j: usize| -> bool {
        conf.mates0(i).len() < instance.quotas()[i] as usize
            || worst[i].is_some_and(|w| instance.prefers0(i, j, w))
    };
    let blocking = instance
        .acceptance()
        .edges()
        .filter(|&(i, j)| !conf.mates0(i).contains(&(j as u32)))
        .filter(|&(i, j)| wants(i, j) && wants(j, i))
        .map(|(i, j)| (i + 1, j + 1))
        .collect();
    Ok(blocking)
}
