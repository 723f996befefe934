//! Distance between two curve files.

use anyhow::{bail, Result};
use serde::Serialize;

use crate::curve::Curve;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Residual {
    pub support: f64,
    pub a: f64,
    pub b: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub a: String,
    pub b: String,
    pub support: String,
    pub quantity: String,
    pub points: usize,
    pub sup_distance: f64,
    pub mean_abs_distance: f64,
    pub residuals: Vec<Residual>,
}

/// Aligns both curves as right-continuous step functions on the coarser of
/// the two supports (the one with fewer points; `a` on ties) and reports
/// `a - b` at every point of it.
pub fn compare(a: &Curve, b: &Curve) -> Result<Comparison> {
    if a.meta.support != b.meta.support || a.meta.quantity != b.meta.quantity {
        bail!(
            "incompatible curves: {} is {} over {}, {} is {} over {}",
            a.meta.name,
            a.meta.quantity,
            a.meta.support,
            b.meta.name,
            b.meta.quantity,
            b.meta.support
        );
    }
    if a.support.is_empty() || b.support.is_empty() {
        bail!("cannot compare empty curves");
    }
    let grid = if b.support.len() < a.support.len() {
        &b.support
    } else {
        &a.support
    };
    let residuals: Vec<Residual> = grid
        .iter()
        .map(|&x| {
            let (va, vb) = (a.step_at(x), b.step_at(x));
            Residual {
                support: x,
                a: va,
                b: vb,
                residual: va - vb,
            }
        })
        .collect();
    let sup = residuals
        .iter()
        .map(|r| r.residual.abs())
        .fold(0.0, f64::max);
    let mean = residuals.iter().map(|r| r.residual.abs()).sum::<f64>() / residuals.len() as f64;
    Ok(Comparison {
        a: a.meta.name.clone(),
        b: b.meta.name.clone(),
        support: a.meta.support.clone(),
        quantity: a.meta.quantity.clone(),
        points: residuals.len(),
        sup_distance: sup,
        mean_abs_distance: mean,
        residuals,
    })
}
