//! Edge lengths at which an ac band shrinks to a point.

use serde::Serialize;

use super::bands::side_bands;
use super::condition::{member_at, param_range, RangeMode};
use super::{LatticeKind, LatticeModel, Side};
use crate::error::{Error, Result};
use crate::numerics::{minimize_golden, roots_on_grid, ToleranceConfig};

/// Degenerate-band lengths found two ways.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegenerateLengths {
    pub kind: LatticeKind,
    pub l_lo: f64,
    pub l_hi: f64,
    /// Lengths where the `k = 1` identity holds and the point is isolated.
    pub mechanism: Vec<f64>,
    /// Lengths where the narrowest interior band in `k ∈ (0, 4)` has width
    /// below `degenerate_width`.
    pub scan: Vec<f64>,
}

const SCAN_K_MAX: f64 = 4.0;

/// Value of `a(1; ℓ)`: zero iff every Bloch point solves the condition at
/// `k = 1`.
fn unit_identity(kind: LatticeKind, l: f64) -> f64 {
    match kind {
        LatticeKind::Square => 2.0 * l.cos(),
        LatticeKind::Hexagonal => 16.0 * (2.0 * l).cos() + 8.0,
    }
}

fn narrowest_band(kind: LatticeKind, l: f64, mode: RangeMode, tol: &ToleranceConfig) -> Result<f64> {
    let model = LatticeModel::new(kind, l)?;
    let range = param_range(kind, mode);
    let bands = side_bands(&model, Side::Positive, 0.0, SCAN_K_MAX, &range, tol)?;
    Ok(bands
        .iter()
        .filter(|(a, b)| *a > 0.0 && *b < SCAN_K_MAX)
        .map(|(a, b)| b * b - a * a)
        .fold(f64::INFINITY, f64::min))
}

/// Degenerate-band lengths in `[l_lo, l_hi]` (derived parameter range).
pub fn degenerate_band_lengths(
    kind: LatticeKind,
    l_lo: f64,
    l_hi: f64,
    tol: &ToleranceConfig,
) -> Result<DegenerateLengths> {
    tol.validate()?;
    if !(l_lo > 0.0 && l_lo < l_hi && l_hi.is_finite()) {
        return Err(Error::InvalidInterval { lo: l_lo, hi: l_hi });
    }
    let mode = RangeMode::Derived;
    let range = param_range(kind, mode);
    let n = (((l_hi - l_lo) * 64.0).ceil() as usize).max(64);

    let mut mechanism = Vec::new();
    for l in roots_on_grid(|l| unit_identity(kind, l), l_lo, l_hi, n, tol)? {
        let model = LatticeModel::new(kind, l)?;
        let isolated = [1.0 - 1e-6, 1.0 + 1e-6]
            .iter()
            .all(|&k| !member_at(&model, Side::Positive, k, &range, tol));
        if isolated {
            mechanism.push(l);
        }
    }

    let ls: Vec<f64> = (0..n)
        .map(|i| l_lo + (l_hi - l_lo) * i as f64 / (n - 1) as f64)
        .collect();
    let widths = ls
        .iter()
        .map(|&l| narrowest_band(kind, l, mode, tol))
        .collect::<Result<Vec<f64>>>()?;
    let mut scan: Vec<f64> = Vec::new();
    for i in 1..n - 1 {
        if !(widths[i] <= widths[i - 1] && widths[i] <= widths[i + 1]) || !widths[i].is_finite() {
            continue;
        }
        let mut failure = None;
        let (l, w) = minimize_golden(
            |l| match narrowest_band(kind, l, mode, tol) {
                Ok(w) => w,
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::INFINITY
                }
            },
            ls[i - 1],
            ls[i + 1],
        );
        if let Some(e) = failure {
            return Err(e);
        }
        if w < tol.degenerate_width && scan.last().is_none_or(|&prev| l - prev > 1e-6) {
            scan.push(l);
        }
    }
    Ok(DegenerateLengths {
        kind,
        l_lo,
        l_hi,
        mechanism,
        scan,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn close(found: &[f64], expected: &[f64], eps: f64) -> bool {
        found.len() == expected.len() && found.iter().zip(expected).all(|(a, b)| (a - b).abs() < eps)
    }

    #[test]
    fn hexagonal_lengths() {
        let d = degenerate_band_lengths(LatticeKind::Hexagonal, 0.05, 2.0 * PI, &ToleranceConfig::default()).unwrap();
        let expected = [PI / 3.0, 2.0 * PI / 3.0, PI / 3.0 + PI, 2.0 * PI / 3.0 + PI];
        assert!(close(&d.mechanism, &expected, 1e-10), "{:?}", d.mechanism);
        assert!(close(&d.scan, &expected, 1e-6), "{:?}", d.scan);
    }

    #[test]
    fn square_lengths() {
        let d = degenerate_band_lengths(LatticeKind::Square, 0.05, 2.0 * PI, &ToleranceConfig::default()).unwrap();
        let expected = [PI / 2.0, 1.5 * PI];
        assert!(close(&d.mechanism, &expected, 1e-10), "{:?}", d.mechanism);
        assert!(close(&d.scan, &expected, 1e-6), "{:?}", d.scan);
    }

    #[test]
    fn invalid_window() {
        let t = ToleranceConfig::default();
        assert!(degenerate_band_lengths(LatticeKind::Square, 0.0, 1.0, &t).is_err());
        assert!(degenerate_band_lengths(LatticeKind::Square, 2.0, 1.0, &t).is_err());
    }
}
