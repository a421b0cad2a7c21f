//! Floquet–Bloch analysis of periodic lattices built from cyclic vertices.
//!
//! Two lattices are supported, both with edges of length `ℓ`:
//!
//! - the square lattice (degree-4 vertices, one per cell), whose
//!   absolutely continuous spectrum at `E = k²` solves
//!   `(1 + k²) cos kℓ = (1 − k²) c_θ`,
//! - the hexagonal lattice (degree-3 vertices, two per cell), with
//!   `(k² + 3)² cos 2kℓ = k⁴ − 6k² − 3 − 4 d_θ (k² − 1)`.
//!
//! Negative energies `E = −κ²` follow from `k = iκ`. Besides the bands both
//! lattices carry flat bands at momenta `πm/ℓ` (loop-supported states).
//!
//! Bloch phases `ω_j = e^{iθ_j}` enter only through the scalar parameter
//! `c_θ = cos((θ₁+θ₂)/2) cos((θ₁−θ₂)/2)` (square) or
//! `d_θ = cos θ₁ + cos(θ₁ − θ₂) + cos θ₂` (hexagonal).

mod bands;
mod condition;
mod degenerate;
mod dispersion;
mod oracle;
mod secular;

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use bands::{
    band_structure, flat_bands, spectral_infimum, BandStructure, EnergyWindow, SegmentKind,
    SpectralSegment,
};
pub use condition::{
    bloch_param, is_member, param_range, required_param, ParamRange, RangeMode, RequiredParam,
};
pub use degenerate::{degenerate_band_lengths, DegenerateLengths};
pub use dispersion::{dispersion_sheets, SheetPoint};
pub use oracle::{brillouin_membership_oracle, BrillouinOracle};
pub use secular::{factored_determinant, secular_determinant, secular_matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeKind {
    Square,
    Hexagonal,
}

impl LatticeKind {
    /// Multiplier of `kℓ` in the oscillating term of the band condition.
    pub(crate) fn oscillation(self) -> f64 {
        match self {
            LatticeKind::Square => 1.0,
            LatticeKind::Hexagonal => 2.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LatticeKind::Square => "square",
            LatticeKind::Hexagonal => "hexagonal",
        }
    }
}

impl fmt::Display for LatticeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LatticeKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "square" => Ok(LatticeKind::Square),
            "hex" | "hexagonal" => Ok(LatticeKind::Hexagonal),
            other => Err(format!("unknown lattice `{other}` (expected square or hex)")),
        }
    }
}

/// Lattice geometry and edge length `ℓ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LatticeModel {
    pub kind: LatticeKind,
    pub edge_length: f64,
}

impl LatticeModel {
    pub fn new(kind: LatticeKind, edge_length: f64) -> Result<Self> {
        if !(edge_length > 0.0) || !edge_length.is_finite() {
            return Err(Error::InvalidLength(edge_length));
        }
        Ok(LatticeModel { kind, edge_length })
    }

    pub fn square(edge_length: f64) -> Result<Self> {
        LatticeModel::new(LatticeKind::Square, edge_length)
    }

    pub fn hexagonal(edge_length: f64) -> Result<Self> {
        LatticeModel::new(LatticeKind::Hexagonal, edge_length)
    }

    /// Momenta `πm/ℓ` of the flat bands.
    pub fn flat_momentum(&self, m: usize) -> f64 {
        PI * m as f64 / self.edge_length
    }
}

/// Quasimomentum phases `(θ₁, θ₂)` on the torus `(−π, π]²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlochPoint {
    pub theta1: f64,
    pub theta2: f64,
}

impl BlochPoint {
    /// Wraps both phases into `(−π, π]`.
    pub fn new(theta1: f64, theta2: f64) -> Self {
        BlochPoint {
            theta1: wrap_phase(theta1),
            theta2: wrap_phase(theta2),
        }
    }

    /// Point `(i, j)` of the `n × n` torus grid `θ = −π + 2π(i + 1)/n`.
    pub fn on_grid(i: usize, j: usize, n: usize) -> Self {
        let t = |idx: usize| -PI + 2.0 * PI * (idx + 1) as f64 / n as f64;
        BlochPoint {
            theta1: t(i),
            theta2: t(j),
        }
    }
}

fn wrap_phase(theta: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut t = theta.rem_euclid(two_pi);
    if t > PI {
        t -= two_pi;
    }
    if t <= -PI {
        t += two_pi;
    }
    t
}

/// Which half of the energy axis a momentum variable parametrizes:
/// `E = k²` on the positive side, `E = −κ²` on the negative side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Side {
    Positive,
    Negative,
}

impl Side {
    /// Signed momentum: `k` for positive energies, `−κ` for negative ones,
    /// so that `E = q|q|` is monotone in it.
    pub(crate) fn signed(self, q: f64) -> f64 {
        match self {
            Side::Positive => q,
            Side::Negative if q == 0.0 => 0.0,
            Side::Negative => -q,
        }
    }

    pub(crate) fn of_energy(e: f64) -> Option<(Side, f64)> {
        if e > 0.0 {
            Some((Side::Positive, e.sqrt()))
        } else if e < 0.0 {
            Some((Side::Negative, (-e).sqrt()))
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phases_wrap_into_torus() {
        let p = BlochPoint::new(3.0 * PI, -PI);
        assert!((p.theta1 - PI).abs() < 1e-12);
        assert!((p.theta2 - PI).abs() < 1e-12);
        let q = BlochPoint::new(-0.5, 7.0);
        assert!((q.theta1 + 0.5).abs() < 1e-15);
        assert!((q.theta2 - (7.0 - 2.0 * PI)).abs() < 1e-12);
    }

    #[test]
    fn grid_covers_half_open_torus() {
        let first = BlochPoint::on_grid(0, 0, 4);
        let last = BlochPoint::on_grid(3, 3, 4);
        assert!((first.theta1 + PI / 2.0).abs() < 1e-15);
        assert_eq!(last.theta1, PI);
    }

    #[test]
    fn nonpositive_length_rejected() {
        assert!(LatticeModel::square(0.0).is_err());
        assert!(LatticeModel::hexagonal(f64::NAN).is_err());
        assert!(LatticeModel::hexagonal(1.0).is_ok());
    }

    #[test]
    fn lattice_names_parse() {
        assert_eq!("hex".parse::<LatticeKind>(), Ok(LatticeKind::Hexagonal));
        assert_eq!("square".parse::<LatticeKind>(), Ok(LatticeKind::Square));
        assert!("kagome".parse::<LatticeKind>().is_err());
    }
}
