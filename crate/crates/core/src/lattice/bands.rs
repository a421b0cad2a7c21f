//! Band-structure assembly.
//!
//! Each half of the energy axis is handled in its own momentum variable
//! (`k` above zero, `κ` below). Band edges are the roots of
//! `a(q) − b(q)·p` at the two ends of the parameter range; between
//! consecutive edges membership is constant, so one probe per interval
//! decides it.

use serde::Serialize;

use super::condition::{member_at, param_range, ParamRange, RangeMode};
use super::{LatticeModel, Side};
use crate::error::{Error, Result};
use crate::numerics::{roots_on_grid, ToleranceConfig};

/// Closed energy interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyWindow {
    pub lo: f64,
    pub hi: f64,
}

impl EnergyWindow {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Ok(EnergyWindow { lo, hi })
    }

    pub fn contains(&self, e: f64) -> bool {
        e >= self.lo && e <= self.hi
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SegmentKind {
    Flat,
    Ac,
}

impl SegmentKind {
    pub fn name(self) -> &'static str {
        match self {
            SegmentKind::Flat => "flat",
            SegmentKind::Ac => "ac",
        }
    }
}

/// One piece of the spectrum. Momenta are signed: `k` for `E ≥ 0` and
/// `−κ` for `E < 0`, so `E = q|q|` at both ends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralSegment {
    pub e_lo: f64,
    pub e_hi: f64,
    pub kind: SegmentKind,
    pub degenerate: bool,
    pub momentum_lo: f64,
    pub momentum_hi: f64,
}

impl SpectralSegment {
    pub fn width(&self) -> f64 {
        self.e_hi - self.e_lo
    }

    fn from_momenta(kind: SegmentKind, q_lo: f64, q_hi: f64, degenerate_width: f64) -> Self {
        let e_lo = q_lo * q_lo.abs();
        let e_hi = q_hi * q_hi.abs();
        SpectralSegment {
            e_lo,
            e_hi,
            kind,
            degenerate: kind == SegmentKind::Ac && e_hi - e_lo < degenerate_width,
            momentum_lo: q_lo,
            momentum_hi: q_hi,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BandStructure {
    pub model: LatticeModel,
    pub window: EnergyWindow,
    pub range: ParamRange,
    /// Sorted by `e_lo`, flat before ac at equal energies.
    pub segments: Vec<SpectralSegment>,
}

impl BandStructure {
    pub fn ac(&self) -> impl Iterator<Item = &SpectralSegment> {
        self.segments.iter().filter(|s| s.kind == SegmentKind::Ac)
    }

    pub fn flat(&self) -> impl Iterator<Item = &SpectralSegment> {
        self.segments.iter().filter(|s| s.kind == SegmentKind::Flat)
    }

    /// Gaps between consecutive ac segments, as `(e_lo, e_hi)` pairs.
    pub fn gaps(&self) -> Vec<(f64, f64)> {
        let ac: Vec<_> = self.ac().collect();
        ac.windows(2)
            .filter(|w| w[1].e_lo > w[0].e_hi)
            .map(|w| (w[0].e_hi, w[1].e_lo))
            .collect()
    }
}

/// Flat bands `E = (πm/ℓ)²`, `m = 0, 1, …`, inside the window.
pub fn flat_bands(model: &LatticeModel, window: &EnergyWindow) -> Vec<SpectralSegment> {
    let mut out = Vec::new();
    if window.hi < 0.0 {
        return out;
    }
    let m_lo = if window.lo <= 0.0 {
        0
    } else {
        (window.lo.sqrt() * model.edge_length / std::f64::consts::PI).floor() as usize
    };
    let mut m = m_lo;
    loop {
        let k = model.flat_momentum(m);
        let e = k * k;
        if e > window.hi {
            break;
        }
        if e >= window.lo {
            out.push(SpectralSegment::from_momenta(SegmentKind::Flat, k, k, 0.0));
        }
        m += 1;
    }
    out
}

/// Grid size for scanning `[qa, qb]`: step at most
/// `min(π/(density·c·ℓ), 1/density)`.
pub(crate) fn scan_points(model: &LatticeModel, qa: f64, qb: f64, tol: &ToleranceConfig) -> usize {
    let density = tol.scan_density as f64;
    let step = (std::f64::consts::PI / (density * model.kind.oscillation() * model.edge_length))
        .min(1.0 / density);
    ((qb - qa) / step).ceil() as usize + 1
}

/// Band intervals `(q_lo, q_hi)` of one side inside `[qa, qb]`, ascending in
/// the unsigned momentum.
pub(crate) fn side_bands(
    model: &LatticeModel,
    side: Side,
    qa: f64,
    qb: f64,
    range: &ParamRange,
    tol: &ToleranceConfig,
) -> Result<Vec<(f64, f64)>> {
    if !(qb > qa) {
        return Ok(Vec::new());
    }
    let n = scan_points(model, qa, qb, tol).max(2);
    let edge = |p: f64| {
        move |q: f64| super::condition::reduce(model, side, q).residual(p)
    };
    let mut points = roots_on_grid(edge(range.lo), qa, qb, n, tol)?;
    points.extend(roots_on_grid(edge(range.hi), qa, qb, n, tol)?);
    let singular = side == Side::Positive && qa < 1.0 && 1.0 < qb;
    for p in points.iter_mut() {
        if singular && (*p - 1.0).abs() <= 4.0 * tol.root_abs {
            *p = 1.0;
        }
    }
    let mut tagged: Vec<(f64, bool)> = points.iter().map(|&q| (q, true)).collect();
    tagged.push((qa, false));
    tagged.push((qb, false));
    if singular {
        tagged.push((1.0, false));
    }
    tagged.retain(|&(q, _)| q >= qa && q <= qb);
    tagged.sort_by(|a, b| a.0.total_cmp(&b.0));
    // Merge coincident candidates, keeping the root tag if any copy has it.
    let mut cand: Vec<(f64, bool)> = Vec::with_capacity(tagged.len());
    for (q, is_root) in tagged {
        match cand.last_mut() {
            Some(last) if q - last.0 <= 2.0 * tol.root_abs => {
                last.1 |= is_root;
                if q == 1.0 || q == qa || q == qb {
                    last.0 = q;
                }
            }
            _ => cand.push((q, is_root)),
        }
    }

    let member = |q: f64| member_at(model, side, q, range, tol);
    let intervals: Vec<bool> = cand
        .windows(2)
        .map(|w| member(0.5 * (w[0].0 + w[1].0)))
        .collect();
    let points_in: Vec<bool> = cand
        .iter()
        .enumerate()
        .map(|(i, &(q, is_root))| {
            let left = i > 0 && intervals[i - 1];
            let right = i < intervals.len() && intervals[i];
            if left || right {
                true
            } else if q == 0.0 {
                false
            } else {
                is_root || member(q)
            }
        })
        .collect();

    let mut out = Vec::new();
    let mut i = 0;
    while i < cand.len() {
        if !points_in[i] {
            i += 1;
            continue;
        }
        let start = cand[i].0;
        let mut j = i;
        while j < intervals.len() && intervals[j] {
            j += 1;
        }
        out.push((start, cand[j].0));
        i = j + 1;
    }
    Ok(out)
}

fn momentum_span(side: Side, window: &EnergyWindow) -> Option<(f64, f64)> {
    match side {
        Side::Negative if window.lo < 0.0 => {
            let qa = if window.hi < 0.0 { (-window.hi).sqrt() } else { 0.0 };
            Some((qa, (-window.lo).sqrt()))
        }
        Side::Positive if window.hi > 0.0 => {
            Some((window.lo.max(0.0).sqrt(), window.hi.sqrt()))
        }
        _ => None,
    }
}

fn ac_segments(
    model: &LatticeModel,
    window: &EnergyWindow,
    range: &ParamRange,
    tol: &ToleranceConfig,
) -> Result<Vec<SpectralSegment>> {
    let mut neg = Vec::new();
    if let Some((qa, qb)) = momentum_span(Side::Negative, window) {
        for (a, b) in side_bands(model, Side::Negative, qa, qb, range, tol)? {
            neg.push(SpectralSegment::from_momenta(
                SegmentKind::Ac,
                Side::Negative.signed(b),
                Side::Negative.signed(a),
                tol.degenerate_width,
            ));
        }
        neg.reverse();
    }
    let mut pos = Vec::new();
    if let Some((qa, qb)) = momentum_span(Side::Positive, window) {
        for (a, b) in side_bands(model, Side::Positive, qa, qb, range, tol)? {
            pos.push(SpectralSegment::from_momenta(SegmentKind::Ac, a, b, tol.degenerate_width));
        }
    }
    if let (Some(last), Some(first)) = (neg.last().copied(), pos.first().copied()) {
        if last.e_hi == 0.0 && first.e_lo == 0.0 {
            neg.pop();
            pos.remove(0);
            neg.push(SpectralSegment::from_momenta(
                SegmentKind::Ac,
                last.momentum_lo,
                first.momentum_hi,
                tol.degenerate_width,
            ));
        }
    }
    neg.extend(pos);
    Ok(neg)
}

/// Spectrum inside `window`: flat bands plus ac bands whose edges solve the
/// band condition at an end of the parameter range.
pub fn band_structure(
    model: &LatticeModel,
    window: &EnergyWindow,
    mode: RangeMode,
    tol: &ToleranceConfig,
) -> Result<BandStructure> {
    tol.validate()?;
    let range = param_range(model.kind, mode);
    let mut segments = flat_bands(model, window);
    segments.extend(ac_segments(model, window, &range, tol)?);
    segments.sort_by(|a, b| {
        a.e_lo
            .total_cmp(&b.e_lo)
            .then((a.kind == SegmentKind::Ac).cmp(&(b.kind == SegmentKind::Ac)))
            .then(a.e_hi.total_cmp(&b.e_hi))
    });
    Ok(BandStructure {
        model: *model,
        window: *window,
        range,
        segments,
    })
}

const INFIMUM_KAPPA_CAP: f64 = 1e8;

/// Lowest edge of the spectrum. Searches `κ ∈ [0, 4]` and then successive
/// decades `[4·10^j, 4·10^{j+1}]` until one contains no band.
pub fn spectral_infimum(model: &LatticeModel, mode: RangeMode, tol: &ToleranceConfig) -> Result<f64> {
    tol.validate()?;
    let range = param_range(model.kind, mode);
    let (mut qa, mut qb) = (0.0, 4.0);
    let mut lowest: Option<f64> = None;
    loop {
        let bands = side_bands(model, Side::Negative, qa, qb, &range, tol)?;
        match bands.last() {
            Some(&(_, top)) => lowest = Some(top),
            None if lowest.is_some() => break,
            None => {}
        }
        if qb >= INFIMUM_KAPPA_CAP {
            return Err(Error::SearchExhausted(-qb * qb));
        }
        qa = qb;
        qb *= 10.0;
    }
    let kappa = lowest.expect("loop exits with a band");
    Ok(-kappa * kappa)
}
