//! Root bracketing, bisection and small dense complex linear algebra.

mod matrix;

pub use matrix::{det_complex, CMatrix};

use crate::error::{Error, Result};

/// Numerical tolerances shared by every spectral computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    /// Absolute accuracy of located roots, in momentum units.
    pub root_abs: f64,
    /// Values with smaller magnitude are treated as exact zeros.
    pub residual_zero: f64,
    /// Bands narrower than this (energy units) are reported as degenerate.
    pub degenerate_width: f64,
    /// Grid points per oscillation of the fastest cosine term.
    pub scan_density: usize,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            root_abs: 1e-12,
            residual_zero: 1e-9,
            degenerate_width: 1e-8,
            scan_density: 16,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(self.root_abs) {
            return Err(Error::InvalidTolerance(format!("root_abs = {}", self.root_abs)));
        }
        if !positive(self.residual_zero) {
            return Err(Error::InvalidTolerance(format!(
                "residual_zero = {}",
                self.residual_zero
            )));
        }
        if !positive(self.degenerate_width) {
            return Err(Error::InvalidTolerance(format!(
                "degenerate_width = {}",
                self.degenerate_width
            )));
        }
        if self.scan_density < 4 {
            return Err(Error::InvalidTolerance(format!(
                "scan_density = {} (minimum 4)",
                self.scan_density
            )));
        }
        Ok(())
    }
}

/// An interval on which a function changes sign (or vanishes at an end).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self> {
        let ok = lo < hi
            && lo.is_finite()
            && hi.is_finite()
            && !f_lo.is_nan()
            && !f_hi.is_nan()
            && f_lo * f_hi <= 0.0;
        if ok {
            Ok(Bracket { lo, hi, f_lo, f_hi })
        } else {
            Err(Error::InvalidBracket { lo, hi, f_lo, f_hi })
        }
    }

    /// Evaluates `f` at both ends and builds the bracket.
    pub fn from_fn(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64) -> Result<Self> {
        let (f_lo, f_hi) = (f(lo), f(hi));
        Bracket::new(lo, hi, f_lo, f_hi)
    }
}

const MAX_ROOT_ITERATIONS: usize = 400;

/// Locates a sign change of `f` inside `bracket` to within `tol.root_abs`.
///
/// Bisection and false-position steps alternate, so the bracket at least
/// halves every second iteration whatever the shape of `f`.
pub fn find_root(
    mut f: impl FnMut(f64) -> f64,
    bracket: &Bracket,
    tol: &ToleranceConfig,
) -> Result<f64> {
    let Bracket {
        mut lo,
        mut hi,
        mut f_lo,
        mut f_hi,
    } = *bracket;
    if !(lo < hi) || f_lo.is_nan() || f_hi.is_nan() || f_lo * f_hi > 0.0 {
        return Err(Error::InvalidBracket { lo, hi, f_lo, f_hi });
    }
    for iteration in 0..MAX_ROOT_ITERATIONS {
        if f_lo == 0.0 {
            return Ok(lo);
        }
        if f_hi == 0.0 {
            return Ok(hi);
        }
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 2.0 * tol.root_abs || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let mut x = mid;
        if iteration % 2 == 1 && f_lo.is_finite() && f_hi.is_finite() {
            let secant = hi - f_hi * (hi - lo) / (f_hi - f_lo);
            let margin = 1e-3 * (hi - lo);
            if secant.is_finite() && secant > lo + margin && secant < hi - margin {
                x = secant;
            }
        }
        let fx = f(x);
        if fx.is_nan() {
            return Err(Error::NotFinite { x, fx });
        }
        if fx == 0.0 {
            return Ok(x);
        }
        if (fx < 0.0) == (f_lo < 0.0) {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
            f_hi = fx;
        }
    }
    Err(Error::NonConvergence {
        lo,
        hi,
        iterations: MAX_ROOT_ITERATIONS,
    })
}

/// Evenly spaced grid of `n` points covering `[lo, hi]` inclusively.
pub(crate) fn grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n).map(move |i| if i + 1 == n { hi } else { lo + step * i as f64 })
}

/// Brackets every sign change of `f` between consecutive points of an
/// `n`-point grid on `[lo, hi]`.
///
/// Grid values with `|f| < residual_zero` count as exact zeros, so
/// tangential zeros (no sign change) still produce a bracket whose lower
/// end carries `f_lo = 0`. Brackets come out ordered by `lo`.
pub fn scan_sign_changes(
    mut f: impl FnMut(f64) -> f64,
    lo: f64,
    hi: f64,
    n: usize,
    residual_zero: f64,
) -> Result<Vec<Bracket>> {
    if !(lo < hi) || n < 2 || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidInterval { lo, hi });
    }
    let points: Vec<(f64, f64)> = grid(lo, hi, n)
        .map(|x| {
            let fx = f(x);
            (x, if fx.abs() < residual_zero { 0.0 } else { fx })
        })
        .collect();
    Ok(brackets_from_samples(&points))
}

fn brackets_from_samples(points: &[(f64, f64)]) -> Vec<Bracket> {
    let mut out = Vec::new();
    let last = points.len() - 1;
    for i in 0..last {
        let (x0, f0) = points[i];
        let (x1, f1) = points[i + 1];
        if f0.is_nan() || f1.is_nan() {
            continue;
        }
        let emit = if f0 == 0.0 {
            true
        } else if f1 == 0.0 {
            i + 1 == last
        } else {
            (f0 < 0.0) != (f1 < 0.0)
        };
        if emit {
            out.push(Bracket {
                lo: x0,
                hi: x1,
                f_lo: f0,
                f_hi: f1,
            });
        }
    }
    out
}

/// Golden-section search for a minimum of `f` on `[a, b]`.
pub(crate) fn minimize_golden(mut f: impl FnMut(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (a, b);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if b - a <= 1e-15 * (1.0 + a.abs().max(b.abs())) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Compass (pattern) search for a local minimum of a function of two
/// variables, starting from `start` with step `step`, halving the step
/// until it drops below `min_step`.
pub(crate) fn compass_minimize(
    mut f: impl FnMut([f64; 2]) -> f64,
    start: [f64; 2],
    mut step: f64,
    min_step: f64,
) -> ([f64; 2], f64) {
    let mut x = start;
    let mut fx = f(x);
    const DIRECTIONS: [[f64; 2]; 8] = [
        [1.0, 0.0],
        [-1.0, 0.0],
        [0.0, 1.0],
        [0.0, -1.0],
        [1.0, 1.0],
        [-1.0, -1.0],
        [1.0, -1.0],
        [-1.0, 1.0],
    ];
    let mut evaluations = 0;
    while step >= min_step && evaluations < 100_000 {
        let mut improved = false;
        for d in DIRECTIONS {
            let y = [x[0] + step * d[0], x[1] + step * d[1]];
            let fy = f(y);
            evaluations += 1;
            if fy < fx {
                x = y;
                fx = fy;
                improved = true;
                break;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (x, fx)
}

/// All roots of `f` on `[lo, hi]` found from an `n`-point scan.
///
/// Besides plain sign changes, every grid point where `|f|` has a local
/// minimum without a sign change is probed for a hidden pair of roots
/// inside the two adjacent cells.
pub(crate) fn roots_on_grid(
    mut f: impl FnMut(f64) -> f64,
    lo: f64,
    hi: f64,
    n: usize,
    tol: &ToleranceConfig,
) -> Result<Vec<f64>> {
    if !(lo < hi) || n < 2 {
        return Err(Error::InvalidInterval { lo, hi });
    }
    let points: Vec<(f64, f64)> = grid(lo, hi, n)
        .map(|x| {
            let fx = f(x);
            (x, if fx.abs() < tol.residual_zero { 0.0 } else { fx })
        })
        .collect();
    let mut brackets = brackets_from_samples(&points);

    for i in 1..points.len() - 1 {
        let (xa, fa) = points[i - 1];
        let (xm, fm) = points[i];
        let (xb, fb) = points[i + 1];
        if !(fa.is_finite() && fm.is_finite() && fb.is_finite()) || fm == 0.0 {
            continue;
        }
        let same_sign = (fa > 0.0) == (fm > 0.0) && (fb > 0.0) == (fm > 0.0);
        if !same_sign || fa == 0.0 || fb == 0.0 || fm.abs() > fa.abs() || fm.abs() > fb.abs() {
            continue;
        }
        let sign = fm.signum();
        let (x_ext, g_ext) = minimize_golden(|x| sign * f(x), xa, xb);
        let f_ext = sign * g_ext;
        if f_ext.abs() < tol.residual_zero {
            brackets.push(Bracket {
                lo: x_ext,
                hi: x_ext.max(xm).max(x_ext + f64::EPSILON * x_ext.abs().max(1.0)),
                f_lo: 0.0,
                f_hi: fm,
            });
        } else if (f_ext > 0.0) != (fm > 0.0) && x_ext > xa && x_ext < xb {
            brackets.push(Bracket {
                lo: xa,
                hi: x_ext,
                f_lo: fa,
                f_hi: f_ext,
            });
            brackets.push(Bracket {
                lo: x_ext,
                hi: xb,
                f_lo: f_ext,
                f_hi: fb,
            });
        }
    }

    let mut roots = brackets
        .iter()
        .map(|b| find_root(&mut f, b, tol))
        .collect::<Result<Vec<f64>>>()?;
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() <= 2.0 * tol.root_abs);
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn default_tolerances_validate() {
        assert!(tol().validate().is_ok());
        let bad = ToleranceConfig {
            scan_density: 3,
            ..tol()
        };
        assert!(bad.validate().is_err());
        let bad = ToleranceConfig {
            root_abs: 0.0,
            ..tol()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn root_of_quadratic_is_sqrt_two() {
        let b = Bracket::from_fn(|x| x * x - 2.0, 1.0, 2.0).unwrap();
        let x = find_root(|x| x * x - 2.0, &b, &tol()).unwrap();
        assert!((x - 2f64.sqrt()).abs() <= 1e-12);
    }

    #[test]
    fn root_of_cosine_is_half_pi() {
        let b = Bracket::from_fn(f64::cos, 1.0, 2.0).unwrap();
        let x = find_root(f64::cos, &b, &tol()).unwrap();
        assert!((x - std::f64::consts::FRAC_PI_2).abs() <= 1e-12);
    }

    #[test]
    fn root_matches_dense_scan_oracle() {
        // Independent oracle: last sign change on a 10^6-point grid around
        // κ = 1, then linear interpolation inside the final cell.
        let f = |k: f64| (1.0 - k * k) * (10.0 * k).cosh() - (1.0 + k * k);
        let (lo, hi) = (0.99, 1.0);
        let n = 1_000_000;
        let h = (hi - lo) / n as f64;
        let mut oracle = None;
        let mut prev = f(lo);
        for i in 1..=n {
            let x = lo + h * i as f64;
            let fx = f(x);
            if prev * fx <= 0.0 {
                let x0 = x - h;
                oracle = Some(x0 + h * prev / (prev - fx));
                break;
            }
            prev = fx;
        }
        let oracle = oracle.expect("oracle found no sign change");
        let b = Bracket::from_fn(f, lo, hi).unwrap();
        let root = find_root(f, &b, &tol()).unwrap();
        assert!((root - oracle).abs() < 1e-10, "{root} vs {oracle}");
    }

    #[test]
    fn invalid_bracket_is_rejected() {
        assert!(Bracket::new(1.0, 2.0, 1.0, 1.0).is_err());
        assert!(Bracket::new(2.0, 1.0, -1.0, 1.0).is_err());
        let fake = Bracket {
            lo: 0.0,
            hi: 1.0,
            f_lo: 1.0,
            f_hi: 2.0,
        };
        assert!(find_root(|x| x + 1.0, &fake, &tol()).is_err());
    }

    #[test]
    fn nan_during_search_is_reported() {
        let b = Bracket::new(0.0, 1.0, -1.0, 1.0).unwrap();
        let err = find_root(|_| f64::NAN, &b, &tol()).unwrap_err();
        assert!(err.is_numeric());
    }

    #[test]
    fn sine_zeros_are_bracketed() {
        let brackets = scan_sign_changes(f64::sin, 0.1, 9.5, 100, 1e-9).unwrap();
        assert_eq!(brackets.len(), 3);
        for (b, m) in brackets.iter().zip(1..) {
            let z = m as f64 * std::f64::consts::PI;
            assert!(b.lo <= z && z <= b.hi);
        }
    }

    #[test]
    fn constant_has_no_brackets() {
        assert!(scan_sign_changes(|_| 1.0, 0.0, 1.0, 10, 1e-9)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn tangency_is_detected() {
        let f = |x: f64| (x - 0.5) * (x - 0.5);
        let brackets = scan_sign_changes(f, 0.0, 1.0, 11, 1e-9).unwrap();
        assert_eq!(brackets.len(), 1);
        assert_eq!(brackets[0].lo, 0.5);
    }

    #[test]
    fn bracket_count_matches_denser_scan() {
        let f = |k: f64| (1.5 * k).cos() - (1.0 - k * k) / (1.0 + k * k);
        let density = tol().scan_density as f64;
        let (lo, hi) = (1e-6, 10.0);
        let step = std::f64::consts::PI / (density * 1.5);
        let n = ((hi - lo) / step).ceil() as usize + 1;
        let coarse = scan_sign_changes(f, lo, hi, n, 1e-9).unwrap();
        let dense = scan_sign_changes(f, lo, hi, 100 * n, 1e-9).unwrap();
        assert_eq!(coarse.len(), dense.len());
    }

    #[test]
    fn compass_search_finds_quadratic_minimum() {
        let f = |x: [f64; 2]| (x[0] - 0.3).powi(2) + 2.0 * (x[1] + 1.2).powi(2) + (x[0] - 0.3) * (x[1] + 1.2);
        let (x, fx) = compass_minimize(f, [0.0, 0.0], 0.5, 1e-12);
        assert!((x[0] - 0.3).abs() < 1e-9 && (x[1] + 1.2).abs() < 1e-9);
        assert!(fx < 1e-18);
    }

    #[test]
    fn hidden_root_pair_is_found() {
        // Two roots 1e-6 apart inside a single grid cell.
        let f = |x: f64| (x - 0.3) * (x - 0.300001) * 1e6;
        let roots = roots_on_grid(f, 0.0, 1.0, 8, &tol()).unwrap();
        assert_eq!(roots.len(), 2, "{roots:?}");
        assert!((roots[0] - 0.3).abs() < 1e-11);
        assert!((roots[1] - 0.300001).abs() < 1e-11);
    }

    proptest! {
        #[test]
        fn refining_never_loses_brackets(a in -3.0f64..3.0, w in 0.5f64..6.0, n in 2usize..40) {
            let f = move |x: f64| (w * x).sin() + 0.3 * (x - a);
            let coarse = scan_sign_changes(f, -5.0, 5.0, n, 1e-12).unwrap();
            let fine = scan_sign_changes(f, -5.0, 5.0, 2 * n - 1, 1e-12).unwrap();
            for b in &coarse {
                prop_assert!(fine.iter().any(|c| c.lo >= b.lo && c.hi <= b.hi));
            }
        }

        #[test]
        fn residual_bounded_by_slope(c in 0.5f64..4.0, s in 0.1f64..20.0) {
            let f = move |x: f64| s * (x - c) + (x - c).powi(3);
            let b = Bracket::from_fn(f, 0.0, 5.0).unwrap();
            let t = tol();
            let x = find_root(f, &b, &t).unwrap();
            let slope = s + 3.0 * (x - c).powi(2);
            prop_assert!(f(x).abs() <= 2.0 * slope * t.root_abs + 1e-14);
        }
    }
}
