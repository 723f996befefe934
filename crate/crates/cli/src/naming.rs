//! File names shared by simulated and analytic outputs, so that
//! `<base>_ccdf` (empirical) pairs with `<base>_ccdf_<source>` (analytic).

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::config::Model;

pub fn rank(slot: usize) -> String {
    format!("rank_slot{slot}")
}

pub fn pair(node: usize, slot: usize) -> String {
    format!("pair_node{node}_slot{slot}")
}

pub fn distance(slot: usize) -> String {
    format!("distance_slot{slot}")
}

pub fn acceptable(slot: usize) -> String {
    format!("acceptable_rank_slot{slot}")
}

pub fn ccdf(base: &str, source: &str) -> String {
    with_source(base, "ccdf", source)
}

pub fn pmf(base: &str, source: &str) -> String {
    with_source(base, "pmf", source)
}

fn with_source(base: &str, quantity: &str, source: &str) -> String {
    if source == "empirical" {
        format!("{base}_{quantity}")
    } else {
        format!("{base}_{quantity}_{source}")
    }
}

pub fn model_params(model: &Model) -> BTreeMap<String, Value> {
    let mut m = BTreeMap::new();
    m.insert("n".into(), json!(model.n));
    m.insert("p".into(), json!(model.p));
    m.insert("d".into(), json!(model.d));
    m.insert("b".into(), json!(model.b));
    m.insert("kind".into(), json!(model.kind));
    if let Some(dim) = model.dim {
        m.insert("dim".into(), json!(dim));
    }
    if let Some(norm) = model.norm {
        m.insert("norm".into(), json!(norm));
    }
    m
}
