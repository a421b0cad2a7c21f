//! Dispersion sheets: band-condition roots at each Bloch point of a grid.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use super::bands::{scan_points, EnergyWindow};
use super::condition::reduce;
use super::{bloch_param, BlochPoint, LatticeModel, Side};
use crate::error::{Error, Result};
use crate::numerics::{roots_on_grid, ToleranceConfig};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SheetPoint {
    pub theta1: f64,
    pub theta2: f64,
    /// Position in the energy-ordered list of roots at this Bloch point.
    pub branch: usize,
    /// Signed momentum (`k`, or `−κ` below zero).
    pub momentum: f64,
    pub energy: f64,
    /// `|a − b·p|` relative to the size of its terms.
    pub residual: f64,
}

fn is_flat_momentum(model: &LatticeModel, k: f64) -> bool {
    let m = (k * model.edge_length / PI).round();
    (k - model.flat_momentum(m as usize)).abs() <= 1e-9 * k.max(1.0)
}

fn side_roots(
    model: &LatticeModel,
    side: Side,
    span: (f64, f64),
    p: f64,
    tol: &ToleranceConfig,
) -> Result<Vec<(f64, f64)>> {
    let (qa, qb) = span;
    if !(qb > qa) {
        return Ok(Vec::new());
    }
    let n = scan_points(model, qa, qb, tol).max(2);
    let roots = roots_on_grid(|q| reduce(model, side, q).residual(p), qa, qb, n, tol)?;
    Ok(roots
        .into_iter()
        .filter(|&q| q > 1e-9 && !(side == Side::Positive && is_flat_momentum(model, q)))
        .map(|q| {
            let r = reduce(model, side, q);
            (side.signed(q), r.residual(p).abs() / r.scale(p).max(1.0))
        })
        .collect())
}

/// All band-condition roots at each point of the `grid_n × grid_n` torus
/// grid with energy in `window`, ordered by `(θ₁, θ₂, branch)`.
pub fn dispersion_sheets(
    model: &LatticeModel,
    grid_n: usize,
    window: &EnergyWindow,
    tol: &ToleranceConfig,
) -> Result<Vec<SheetPoint>> {
    tol.validate()?;
    if grid_n < 2 {
        return Err(Error::InvalidInterval {
            lo: 0.0,
            hi: grid_n as f64,
        });
    }
    let neg = if window.lo < 0.0 {
        ((window.hi.min(0.0)).abs().sqrt(), (-window.lo).sqrt())
    } else {
        (0.0, 0.0)
    };
    let pos = if window.hi > 0.0 {
        (window.lo.max(0.0).sqrt(), window.hi.sqrt())
    } else {
        (0.0, 0.0)
    };
    let per_point = (0..grid_n * grid_n)
        .into_par_iter()
        .map(|idx| {
            let bp = BlochPoint::on_grid(idx / grid_n, idx % grid_n, grid_n);
            let p = bloch_param(model.kind, &bp);
            let mut roots = side_roots(model, Side::Negative, neg, p, tol)?;
            roots.extend(side_roots(model, Side::Positive, pos, p, tol)?);
            roots.sort_by(|a, b| a.0.total_cmp(&b.0));
            Ok(roots
                .into_iter()
                .enumerate()
                .map(|(branch, (q, residual))| SheetPoint {
                    theta1: bp.theta1,
                    theta2: bp.theta2,
                    branch,
                    momentum: q,
                    energy: q * q.abs(),
                    residual,
                })
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(per_point.into_iter().flatten().collect())
}
