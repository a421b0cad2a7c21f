//! Bound states of the star graph with the cyclic coupling.
//!
//! An `L²` solution `ψ_j(x) = c_j e^{−κx}` exists iff
//! `(κ − i)^N + (−1)^{N−1}(κ + i)^N = 0`, whose positive roots are
//! `κ_m = tan(πm/N)` for `m = 1, …, ⌈N/2⌉ − 1`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{find_root, Bracket, ToleranceConfig};

/// Negative spectrum of the degree-`N` star graph.
#[derive(Debug, Clone, PartialEq)]
pub struct StarSpectrum {
    pub degree: usize,
    /// Decay rates, strictly increasing.
    pub kappas: Vec<f64>,
    /// Eigenvalues `−κ²`, in the same order as `kappas`.
    pub energies: Vec<f64>,
}

/// Real reduction of the spectral polynomial: `2 Re (κ + i)^N` for odd `N`,
/// `2 Im (κ + i)^N` for even `N`.
pub fn spectral_polynomial(n: usize, kappa: f64) -> f64 {
    let z = Complex64::new(kappa, 1.0).powu(n as u32);
    if n % 2 == 1 {
        2.0 * z.re
    } else {
        2.0 * z.im
    }
}

/// Number of bound states: `(N − 1)/2` for odd `N`, `N/2 − 1` for even `N`.
pub fn bound_state_count(n: usize) -> usize {
    if n % 2 == 1 {
        (n - 1) / 2
    } else {
        n / 2 - 1
    }
}

/// Closed-form decay rates `tan(πm/N)`.
pub fn closed_form_kappas(n: usize) -> Vec<f64> {
    (1..=bound_state_count(n))
        .map(|m| (PI * m as f64 / n as f64).tan())
        .collect()
}

/// Bound states located by bisection on the spectral polynomial.
///
/// Each root is searched in `(tan(π(m − ½)/N), tan(π(m + ½)/N))`; the
/// polynomial divided by `(1 + κ²)^{N/2}` is `2cos Nφ` or `2sin Nφ` with
/// `κ = cot φ`, so exactly one sign change lies in each window. The
/// result is cross-checked against [`closed_form_kappas`].
pub fn bound_states(n: usize, tol: &ToleranceConfig) -> Result<StarSpectrum> {
    if n < 3 {
        return Err(Error::InvalidDegree(n));
    }
    let normalized = |kappa: f64| {
        let z = Complex64::new(kappa, 1.0);
        let w = (z / z.norm()).powu(n as u32);
        if n % 2 == 1 {
            2.0 * w.re
        } else {
            2.0 * w.im
        }
    };
    let nf = n as f64;
    let mut kappas = Vec::with_capacity(bound_state_count(n));
    for m in 1..=bound_state_count(n) {
        let lo = (PI * (m as f64 - 0.5) / nf).tan().max(tol.root_abs);
        let hi = if 2 * m + 1 >= n {
            2.0 * (PI * m as f64 / nf).tan() + 1.0
        } else {
            (PI * (m as f64 + 0.5) / nf).tan()
        };
        let bracket = Bracket::from_fn(normalized, lo, hi)?;
        kappas.push(find_root(normalized, &bracket, tol)?);
    }
    debug_assert!(kappas
        .iter()
        .zip(closed_form_kappas(n))
        .all(|(a, b)| (a - b).abs() <= 1e-10));
    let energies = kappas.iter().map(|k| -k * k).collect();
    Ok(StarSpectrum {
        degree: n,
        kappas,
        energies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn polynomial_values() {
        assert!(spectral_polynomial(3, 3f64.sqrt()).abs() < 1e-12);
        assert!((spectral_polynomial(3, 1.0) + 4.0).abs() < 1e-12);
        assert!(spectral_polynomial(4, 1.0).abs() < 1e-12);
        // 2κ(κ² − 3) and 8κ(κ² − 1)
        for kappa in [0.3, 1.7, 4.2] {
            let k: f64 = kappa;
            assert!((spectral_polynomial(3, k) - 2.0 * k * (k * k - 3.0)).abs() < 1e-10);
            assert!((spectral_polynomial(4, k) - 8.0 * k * (k * k - 1.0)).abs() < 1e-10);
        }
    }

    #[test]
    fn degree_three_and_four() {
        let s3 = bound_states(3, &tol()).unwrap();
        assert_eq!(s3.energies.len(), 1);
        assert!((s3.energies[0] + 3.0).abs() < 1e-10);
        let s4 = bound_states(4, &tol()).unwrap();
        assert_eq!(s4.energies.len(), 1);
        assert!((s4.energies[0] + 1.0).abs() < 1e-10);
    }

    #[test]
    fn degree_five() {
        let s = bound_states(5, &tol()).unwrap();
        let sqrt5 = 5f64.sqrt();
        let expected = [-(5.0 - 2.0 * sqrt5), -(5.0 + 2.0 * sqrt5)];
        assert_eq!(s.energies.len(), 2);
        for (e, x) in s.energies.iter().zip(expected) {
            assert!((e - x).abs() < 1e-9, "{e} vs {x}");
        }
    }

    #[test]
    fn degree_two_rejected() {
        assert!(bound_states(2, &tol()).is_err());
    }

    #[test]
    fn closed_form_and_root_finder_agree() {
        for n in 3..=20 {
            let s = bound_states(n, &tol()).unwrap();
            assert_eq!(s.kappas.len(), bound_state_count(n));
            assert!(!s.kappas.is_empty());
            assert!(s.kappas.windows(2).all(|w| w[0] < w[1]));
            for (a, b) in s.kappas.iter().zip(closed_form_kappas(n)) {
                assert!((a - b).abs() <= 1e-10, "n={n}: {a} vs {b}");
                let scale = (1.0 + a * a).powf(n as f64 / 2.0);
                assert!(spectral_polynomial(n, *a).abs() / scale < 1e-10);
            }
        }
    }
}
