//! Band conditions in cleared-denominator form.
//!
//! At fixed momentum every band condition is affine in the Bloch
//! parameter `p` (`c_θ` or `d_θ`):
//!
//! | lattice | side | `a(q)` | `b(q)` |
//! |---|---|---|---|
//! | square | `E = k²` | `(1 + k²) cos kℓ` | `1 − k²` |
//! | square | `E = −κ²` | `(1 − κ²) cosh κℓ` | `1 + κ²` |
//! | hexagonal | `E = k²` | `(k² + 3)² cos 2kℓ − (k⁴ − 6k² − 3)` | `4(1 − k²)` |
//! | hexagonal | `E = −κ²` | `(κ² − 3)² cosh 2κℓ − (κ⁴ + 6κ² − 3)` | `4(1 + κ²)` |
//!
//! and the energy belongs to the band spectrum iff `a − b·p = 0` for some
//! `p` in the range swept over the Brillouin zone. Written this way the
//! only singularity left is `b = 0` at `k = 1`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use super::{BlochPoint, LatticeKind, LatticeModel, Side};
use crate::error::{Error, Result};
use crate::numerics::{compass_minimize, ToleranceConfig};

/// `c_θ` for the square lattice, `d_θ` for the hexagonal one.
pub fn bloch_param(kind: LatticeKind, p: &BlochPoint) -> f64 {
    let (t1, t2) = (p.theta1, p.theta2);
    match kind {
        LatticeKind::Square => (0.5 * (t1 + t2)).cos() * (0.5 * (t1 - t2)).cos(),
        LatticeKind::Hexagonal => t1.cos() + (t1 - t2).cos() + t2.cos(),
    }
}

/// Where the Bloch-parameter range comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RangeMode {
    /// Computed by sampling the torus and refining the extrema.
    Derived,
    /// The published range (`[−1, 1]` square, `[−1, 3]` hexagonal).
    #[serde(rename = "paper")]
    Published,
}

impl RangeMode {
    pub fn name(self) -> &'static str {
        match self {
            RangeMode::Derived => "derived",
            RangeMode::Published => "paper",
        }
    }
}

/// Closed interval swept by the Bloch parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParamRange {
    pub lo: f64,
    pub hi: f64,
    pub provenance: RangeMode,
}

impl ParamRange {
    pub(crate) fn contains(&self, p: f64, slack: f64) -> bool {
        p >= self.lo - slack && p <= self.hi + slack
    }
}

const RANGE_GRID: usize = 2000;

fn sampled_range(kind: LatticeKind) -> (f64, f64) {
    let n = RANGE_GRID;
    let (lo_val, lo_at, hi_val, hi_at) = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut best = (f64::INFINITY, (i, 0), f64::NEG_INFINITY, (i, 0));
            for j in 0..n {
                let v = bloch_param(kind, &BlochPoint::on_grid(i, j, n));
                if v < best.0 {
                    best.0 = v;
                    best.1 = (i, j);
                }
                if v > best.2 {
                    best.2 = v;
                    best.3 = (i, j);
                }
            }
            best
        })
        .reduce(
            || (f64::INFINITY, (0, 0), f64::NEG_INFINITY, (0, 0)),
            |a, b| {
                let lo = if b.0 < a.0 { (b.0, b.1) } else { (a.0, a.1) };
                let hi = if b.2 > a.2 { (b.2, b.3) } else { (a.2, a.3) };
                (lo.0, lo.1, hi.0, hi.1)
            },
        );
    let step = 2.0 * PI / n as f64;
    let refine = |(i, j): (usize, usize), sign: f64| {
        let start = BlochPoint::on_grid(i, j, n);
        let (_, v) = compass_minimize(
            |x| sign * bloch_param(kind, &BlochPoint::new(x[0], x[1])),
            [start.theta1, start.theta2],
            step,
            1e-13,
        );
        sign * v
    };
    let lo = refine(lo_at, 1.0).min(lo_val);
    let hi = refine(hi_at, -1.0).max(hi_val);
    (lo, hi)
}

/// Range of the Bloch parameter over the Brillouin zone.
pub fn param_range(kind: LatticeKind, mode: RangeMode) -> ParamRange {
    static SQUARE: OnceLock<(f64, f64)> = OnceLock::new();
    static HEXAGONAL: OnceLock<(f64, f64)> = OnceLock::new();
    let (lo, hi) = match (kind, mode) {
        (LatticeKind::Square, RangeMode::Published) => (-1.0, 1.0),
        (LatticeKind::Hexagonal, RangeMode::Published) => (-1.0, 3.0),
        (LatticeKind::Square, RangeMode::Derived) => {
            *SQUARE.get_or_init(|| sampled_range(LatticeKind::Square))
        }
        (LatticeKind::Hexagonal, RangeMode::Derived) => {
            *HEXAGONAL.get_or_init(|| sampled_range(LatticeKind::Hexagonal))
        }
    };
    ParamRange {
        lo,
        hi,
        provenance: mode,
    }
}

/// Cleared band condition `a − b·p` at one momentum.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Reduced {
    pub a: f64,
    pub b: f64,
    /// Magnitude of the individual terms making up `a`.
    pub a_scale: f64,
}

impl Reduced {
    pub(crate) fn residual(&self, p: f64) -> f64 {
        self.a - self.b * p
    }

    /// Scale for judging `a − b·p ≈ 0`.
    pub(crate) fn scale(&self, p: f64) -> f64 {
        self.a_scale + (self.b * p).abs()
    }
}

pub(crate) fn reduce(model: &LatticeModel, side: Side, q: f64) -> Reduced {
    let l = model.edge_length;
    let q2 = q * q;
    match (model.kind, side) {
        (LatticeKind::Square, Side::Positive) => {
            let s = 1.0 + q2;
            Reduced {
                a: s * (q * l).cos(),
                b: 1.0 - q2,
                a_scale: s,
            }
        }
        (LatticeKind::Square, Side::Negative) => {
            let t = (1.0 - q2) * (q * l).cosh();
            Reduced {
                a: t,
                b: 1.0 + q2,
                a_scale: t.abs(),
            }
        }
        (LatticeKind::Hexagonal, Side::Positive) => {
            let w = (q2 + 3.0) * (q2 + 3.0);
            let poly = q2 * q2 - 6.0 * q2 - 3.0;
            Reduced {
                a: w * (2.0 * q * l).cos() - poly,
                b: 4.0 * (1.0 - q2),
                a_scale: w + poly.abs(),
            }
        }
        (LatticeKind::Hexagonal, Side::Negative) => {
            let w = (q2 - 3.0) * (q2 - 3.0);
            let osc = if w == 0.0 { 0.0 } else { w * (2.0 * q * l).cosh() };
            let poly = q2 * q2 + 6.0 * q2 - 3.0;
            Reduced {
                a: osc - poly,
                b: 4.0 * (1.0 + q2),
                a_scale: osc.abs() + poly.abs(),
            }
        }
    }
}

/// Solution of the band condition for the Bloch parameter at one energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RequiredParam {
    /// The unique parameter value solving the condition.
    Value(f64),
    /// The parameter drops out and the remaining identity holds: every
    /// Bloch point solves the condition.
    AllPass,
    /// The parameter drops out and the identity fails.
    NoPass,
}

pub(crate) fn required_param_at(
    model: &LatticeModel,
    side: Side,
    q: f64,
    tol: &ToleranceConfig,
) -> RequiredParam {
    let r = reduce(model, side, q);
    if r.b.abs() <= f64::EPSILON * (1.0 + q * q) {
        if r.a.abs() <= tol.residual_zero * r.a_scale.max(1.0) {
            RequiredParam::AllPass
        } else {
            RequiredParam::NoPass
        }
    } else {
        RequiredParam::Value(r.a / r.b)
    }
}

/// Bloch parameter required for energy `e` to lie in a band.
pub fn required_param(model: &LatticeModel, e: f64, tol: &ToleranceConfig) -> Result<RequiredParam> {
    let (side, q) = Side::of_energy(e).ok_or(Error::ZeroEnergy)?;
    Ok(required_param_at(model, side, q, tol))
}

pub(crate) fn member_at(
    model: &LatticeModel,
    side: Side,
    q: f64,
    range: &ParamRange,
    tol: &ToleranceConfig,
) -> bool {
    match required_param_at(model, side, q, tol) {
        RequiredParam::Value(p) => range.contains(p, tol.residual_zero),
        RequiredParam::AllPass => true,
        RequiredParam::NoPass => false,
    }
}

/// Distance `|E − (πm/ℓ)²|` to the nearest flat band is below a relative
/// rounding threshold.
pub(crate) fn is_flat_energy(model: &LatticeModel, e: f64) -> bool {
    if e == 0.0 {
        return true;
    }
    if e < 0.0 {
        return false;
    }
    let m = (e.sqrt() * model.edge_length / PI).round();
    let flat = (PI * m / model.edge_length).powi(2);
    (e - flat).abs() <= 1e-12 * e.max(1.0)
}

/// Spectrum membership: flat-band energy, all-pass momentum, or a required
/// parameter inside the range.
pub fn is_member(model: &LatticeModel, e: f64, mode: RangeMode, tol: &ToleranceConfig) -> bool {
    if is_flat_energy(model, e) {
        return true;
    }
    let (side, q) = Side::of_energy(e).expect("non-zero energy");
    member_at(model, side, q, &param_range(model.kind, mode), tol)
}
