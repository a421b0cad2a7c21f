//! Brute-force membership test over the Brillouin zone.
//!
//! Evaluates the band condition in its original fractional form at every
//! point of an `n × n` torus grid and looks for a sign change or a
//! near-zero value. The two grid points extremizing the Bloch parameter are
//! polished by a compass search, so range ends that fall between grid
//! points are still reached.

use std::f64::consts::PI;

use rayon::prelude::*;

use super::condition::is_flat_energy;
use super::{bloch_param, BlochPoint, LatticeKind, LatticeModel, Side};
use crate::numerics::{compass_minimize, ToleranceConfig};

#[derive(Debug, Clone)]
pub struct BrillouinOracle {
    kind: LatticeKind,
    grid_n: usize,
    params: Vec<f64>,
}

impl BrillouinOracle {
    /// Samples the Bloch parameter on the grid. `grid_n` is raised to 64 if
    /// smaller.
    pub fn new(kind: LatticeKind, grid_n: usize) -> Self {
        let n = grid_n.max(64);
        let mut params: Vec<f64> = (0..n * n)
            .into_par_iter()
            .map(|idx| bloch_param(kind, &BlochPoint::on_grid(idx / n, idx % n, n)))
            .collect();
        let step = 2.0 * PI / n as f64;
        for sign in [1.0, -1.0] {
            let (at, _) = params
                .iter()
                .enumerate()
                .min_by(|a, b| (sign * a.1).total_cmp(&(sign * b.1)))
                .expect("non-empty grid");
            let start = BlochPoint::on_grid(at / n, at % n, n);
            let (x, _) = compass_minimize(
                |x| sign * bloch_param(kind, &BlochPoint::new(x[0], x[1])),
                [start.theta1, start.theta2],
                step,
                1e-12,
            );
            params.push(bloch_param(kind, &BlochPoint::new(x[0], x[1])));
        }
        BrillouinOracle {
            kind,
            grid_n: n,
            params,
        }
    }

    pub fn grid_n(&self) -> usize {
        self.grid_n
    }

    /// Membership of `e` in the spectrum of `model`, which must be of this
    /// oracle's lattice kind.
    pub fn contains(&self, model: &LatticeModel, e: f64, tol: &ToleranceConfig) -> bool {
        assert_eq!(model.kind, self.kind, "oracle built for another lattice");
        if is_flat_energy(model, e) {
            return true;
        }
        let (side, q) = Side::of_energy(e).expect("non-zero energy");
        let (lhs, coef) = raw_condition(model, side, q);
        // g(p) = lhs − coef·p
        let mut saw_pos = false;
        let mut saw_neg = false;
        for &p in &self.params {
            let tp = coef * p;
            let g = lhs - tp;
            if g.is_nan() {
                continue;
            }
            let scale = lhs.abs() + if tp.is_finite() { tp.abs() } else { 0.0 };
            if g.is_finite() && g.abs() <= tol.residual_zero * scale.max(1.0) {
                return true;
            }
            saw_pos |= g > 0.0;
            saw_neg |= g < 0.0;
            if saw_pos && saw_neg {
                return true;
            }
        }
        false
    }
}

/// `(lhs, coef)` of the fractional condition `lhs = coef·p`.
fn raw_condition(model: &LatticeModel, side: Side, q: f64) -> (f64, f64) {
    let l = model.edge_length;
    let q2 = q * q;
    match (model.kind, side) {
        (LatticeKind::Square, Side::Positive) => ((q * l).cos(), (1.0 - q2) / (1.0 + q2)),
        (LatticeKind::Square, Side::Negative) => ((q * l).cosh(), (1.0 + q2) / (1.0 - q2)),
        (LatticeKind::Hexagonal, Side::Positive) => {
            let w = (q2 + 3.0) * (q2 + 3.0);
            (
                (2.0 * q * l).cos() - (q2 * q2 - 6.0 * q2 - 3.0) / w,
                -4.0 * (q2 - 1.0) / w,
            )
        }
        (LatticeKind::Hexagonal, Side::Negative) => {
            let w = (q2 - 3.0) * (q2 - 3.0);
            (
                (2.0 * q * l).cosh() - (q2 * q2 + 6.0 * q2 - 3.0) / w,
                4.0 * (q2 + 1.0) / w,
            )
        }
    }
}

/// One-shot form of [`BrillouinOracle::contains`] with default tolerances.
pub fn brillouin_membership_oracle(model: &LatticeModel, e: f64, grid_n: usize) -> bool {
    BrillouinOracle::new(model.kind, grid_n).contains(model, e, &ToleranceConfig::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_examples() {
        for l in [0.25, 1.0, 10.0] {
            let m = LatticeModel::square(l).unwrap();
            assert!(brillouin_membership_oracle(&m, -1.0, 64));
        }
        let m = LatticeModel::square(10.0).unwrap();
        assert!(!brillouin_membership_oracle(&m, -0.5, 128));
    }

    #[test]
    fn flat_energies_are_members() {
        let m = LatticeModel::square(2.0).unwrap();
        let oracle = BrillouinOracle::new(LatticeKind::Square, 64);
        let tol = ToleranceConfig::default();
        for j in 0..5 {
            let k = m.flat_momentum(j);
            assert!(oracle.contains(&m, k * k, &tol));
        }
    }

    #[test]
    fn hexagonal_minimum_reached_between_grid_points() {
        let m = LatticeModel::hexagonal(1.3).unwrap();
        assert!(brillouin_membership_oracle(&m, -3.0, 100));
    }

    #[test]
    fn small_grids_are_raised() {
        assert_eq!(BrillouinOracle::new(LatticeKind::Square, 3).grid_n(), 64);
    }
}
