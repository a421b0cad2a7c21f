//! The rotation-preferring vertex coupling and its scattering matrix.
//!
//! A vertex of degree `N` joins edges `1..N` in a fixed cyclic order. With
//! `U` the cyclic shift (row `j` has its single 1 in column `j + 1 mod N`)
//! the matching conditions `(U − I)Ψ + i(U + I)Ψ' = 0` read
//!
//! ```text
//! (ψ_{j+1} − ψ_j) + i(ψ'_{j+1} + ψ'_j) = 0,   j mod N,
//! ```
//!
//! with derivatives taken in the direction away from the vertex. The
//! coupling is not invariant under the edge reversal `j ↦ N + 1 − j`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::CMatrix;

const UNITARY_TOL: f64 = 1e-12;

/// Degree and unitary matrix `U` of a vertex coupling.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexCoupling {
    degree: usize,
    u: CMatrix,
}

impl VertexCoupling {
    /// The cyclic-shift coupling of degree `n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidDegree(n));
        }
        let u = CMatrix::from_fn(n, n, |i, j| {
            if j == (i + 1) % n {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        Ok(VertexCoupling { degree: n, u })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn u(&self) -> &CMatrix {
        &self.u
    }

    /// The matrices `A = U − I` and `B = i(U + I)` of the conditions
    /// `AΨ(0+) + BΨ'(0+) = 0`.
    pub fn boundary_pair(&self) -> BoundaryPair {
        let id = CMatrix::identity(self.degree);
        BoundaryPair {
            a: &self.u - &id,
            b: (&self.u + &id).scale(Complex64::i()),
        }
    }
}

/// Free function form of [`VertexCoupling::cyclic`].
pub fn cyclic_coupling(n: usize) -> Result<VertexCoupling> {
    VertexCoupling::cyclic(n)
}

/// Free function form of [`VertexCoupling::boundary_pair`].
pub fn boundary_pair(c: &VertexCoupling) -> BoundaryPair {
    c.boundary_pair()
}

/// Boundary matrices `(A, B)` of a self-adjoint vertex condition.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryPair {
    pub a: CMatrix,
    pub b: CMatrix,
}

impl BoundaryPair {
    /// Rank of the `N × 2N` block `(A | B)`.
    pub fn rank(&self) -> usize {
        self.a.hstack(&self.b).rank(1e-12)
    }

    /// `‖A*B − (A*B)*‖_max`; zero for a self-adjoint coupling.
    pub fn hermiticity_residual(&self) -> f64 {
        let p = &self.a.adjoint() * &self.b;
        p.max_abs_diff(&p.adjoint())
    }

    /// Full rank and Hermitian `A*B`.
    pub fn is_admissible(&self) -> bool {
        self.rank() == self.a.rows() && self.hermiticity_residual() < UNITARY_TOL
    }
}

/// On-shell scattering matrix at momentum `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringMatrix {
    pub k: f64,
    pub s: CMatrix,
}

impl ScatteringMatrix {
    pub fn degree(&self) -> usize {
        self.s.rows()
    }

    pub fn unitarity_residual(&self) -> f64 {
        self.s.unitarity_residual()
    }

    /// Largest deviation from the circulant pattern `S_ij = S_{i+1, j+1}`.
    pub fn circulant_residual(&self) -> f64 {
        let n = self.degree();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let d = self.s[(i, j)] - self.s[((i + 1) % n, (j + 1) % n)];
                worst = worst.max(d.norm());
            }
        }
        worst
    }
}

/// `S(k) = (k − 1 + (k + 1)U) / (k + 1 + (k − 1)U)`, by solving the
/// linear system `(k + 1 + (k − 1)U)·S = k − 1 + (k + 1)U`.
///
/// At `k = 1` the matrix is exactly `U`.
pub fn s_matrix(c: &VertexCoupling, k: f64) -> Result<ScatteringMatrix> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(Error::InvalidMomentum(k));
    }
    if k == 1.0 {
        return Ok(ScatteringMatrix {
            k,
            s: c.u.clone(),
        });
    }
    let id = CMatrix::identity(c.degree);
    let re = |x: f64| Complex64::new(x, 0.0);
    let lhs = &id.scale(re(k + 1.0)) + &c.u.scale(re(k - 1.0));
    let rhs = &id.scale(re(k - 1.0)) + &c.u.scale(re(k + 1.0));
    // k + 1 + (k − 1)λ with |λ| = 1 vanishes only for k = 0.
    let s = lhs.solve(&rhs).ok_or(Error::InvalidMomentum(k))?;
    Ok(ScatteringMatrix { k, s })
}

/// Entry-wise closed form of `S(k)` in terms of `η = (1 − k)/(1 + k)`:
///
/// ```text
/// S_ii = −η(1 − η^{N−2}) / (1 − η^N)
/// S_ij = (1 − η²)/(1 − η^N) · η^{(j − i − 1) mod N},   i ≠ j
/// ```
pub fn s_matrix_closed_form(n: usize, k: f64) -> Result<ScatteringMatrix> {
    if n < 3 {
        return Err(Error::InvalidDegree(n));
    }
    if !(k > 0.0) || !k.is_finite() {
        return Err(Error::InvalidMomentum(k));
    }
    let eta = (1.0 - k) / (1.0 + k);
    let eta_n = eta.powi(n as i32);
    let denom = 1.0 - eta_n;
    let diagonal = -eta * (1.0 - eta.powi(n as i32 - 2)) / denom;
    let prefactor = (1.0 - eta * eta) / denom;
    let s = CMatrix::from_fn(n, n, |i, j| {
        let value = if i == j {
            diagonal
        } else {
            let power = (j + 2 * n - i - 1) % n;
            prefactor * eta.powi(power as i32)
        };
        Complex64::new(value, 0.0)
    });
    Ok(ScatteringMatrix { k, s })
}

/// Which end of the energy axis a limit is taken at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergyEnd {
    Low,
    High,
}

/// Spectral projection of the cyclic shift onto its eigenvalue
/// `λ = e^{2πi·index/n}`: `P_{il} = λ^{−((l − i) mod n)} / n`.
fn shift_projection(n: usize, index: usize) -> CMatrix {
    CMatrix::from_fn(n, n, |i, l| {
        let d = (l + n - i) % n;
        let phase = -2.0 * PI * (index * d % n) as f64 / n as f64;
        Complex64::from_polar(1.0 / n as f64, phase)
    })
}

/// Limit of `S(k)` as `k → 0` (`−I + 2P₊₁`) or `k → ∞` (`I − 2P₋₁`),
/// where `P_{±1}` project onto the `±1` eigenspaces of `U`.
///
/// Substituting `η = ±1` into the closed form is not used: it is `0/0`
/// whenever `η^N = 1`.
pub fn energy_limit(n: usize, end: EnergyEnd) -> Result<CMatrix> {
    if n < 3 {
        return Err(Error::InvalidDegree(n));
    }
    let id = CMatrix::identity(n);
    let two = Complex64::new(2.0, 0.0);
    Ok(match end {
        EnergyEnd::Low => &shift_projection(n, 0).scale(two) - &id,
        EnergyEnd::High if n % 2 == 0 => &id - &shift_projection(n, n / 2).scale(two),
        EnergyEnd::High => id,
    })
}

/// The edge-reversal permutation `j ↦ N + 1 − j`.
pub fn reversal(n: usize) -> CMatrix {
    CMatrix::from_fn(n, n, |i, j| {
        if i + j + 1 == n {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn real_matrix(rows: &[&[f64]]) -> CMatrix {
        CMatrix::from_real_rows(rows)
    }

    #[test]
    fn degree_three_shift() {
        let c = VertexCoupling::cyclic(3).unwrap();
        let expected = real_matrix(&[&[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0], &[1.0, 0.0, 0.0]]);
        assert_eq!(c.u(), &expected);
        assert!(c.u().unitarity_residual() < 1e-12);
    }

    #[test]
    fn shift_acts_as_rotation() {
        let c = VertexCoupling::cyclic(5).unwrap();
        let v: Vec<Complex64> = (1..=5).map(|x| Complex64::new(x as f64, 0.0)).collect();
        let w: Vec<f64> = c.u().mul_vec(&v).iter().map(|z| z.re).collect();
        assert_eq!(w, vec![2.0, 3.0, 4.0, 5.0, 1.0]);
    }

    #[test]
    fn degree_below_three_is_rejected() {
        assert_eq!(VertexCoupling::cyclic(2), Err(Error::InvalidDegree(2)));
        assert!(s_matrix_closed_form(2, 1.0).is_err());
    }

    #[test]
    fn first_condition_row_matches_component_form() {
        // Row 0 of AΨ + BΨ' must read (ψ2 − ψ1) + i(ψ'2 + ψ'1).
        let p = VertexCoupling::cyclic(3).unwrap().boundary_pair();
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::i();
        assert_eq!(p.a.row(0), &[-one, one, Complex64::new(0.0, 0.0)]);
        assert_eq!(p.b.row(0), &[i, i, Complex64::new(0.0, 0.0)]);
    }

    #[test]
    fn boundary_pairs_are_admissible() {
        for n in 3..=6 {
            let p = VertexCoupling::cyclic(n).unwrap().boundary_pair();
            assert_eq!(p.rank(), n);
            assert!(p.hermiticity_residual() < 1e-12);
            assert!(p.is_admissible());
        }
    }

    #[test]
    fn maximal_rotation_at_unit_momentum() {
        for n in 3..=8 {
            let c = VertexCoupling::cyclic(n).unwrap();
            assert_eq!(s_matrix(&c, 1.0).unwrap().s, *c.u());
        }
    }

    #[test]
    fn degree_three_at_k_three() {
        let c = VertexCoupling::cyclic(3).unwrap();
        let s = s_matrix(&c, 3.0).unwrap();
        let (a, b) = (2.0 / 3.0, -1.0 / 3.0);
        let expected = real_matrix(&[&[a, a, b], &[b, a, a], &[a, b, a]]);
        assert!(s.s.max_abs_diff(&expected) < 1e-12);
        let closed = s_matrix_closed_form(3, 3.0).unwrap();
        assert!((closed.s[(0, 0)].re - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn degree_three_low_momentum() {
        let c = VertexCoupling::cyclic(3).unwrap();
        let s = s_matrix(&c, 1e-6).unwrap();
        let (a, b) = (-1.0 / 3.0, 2.0 / 3.0);
        let expected = real_matrix(&[&[a, b, b], &[b, a, b], &[b, b, a]]);
        assert!(s.s.max_abs_diff(&expected) < 1e-5);
    }

    #[test]
    fn nonpositive_momentum_is_rejected() {
        let c = VertexCoupling::cyclic(4).unwrap();
        assert!(s_matrix(&c, 0.0).is_err());
        assert!(s_matrix(&c, -1.0).is_err());
    }

    #[test]
    fn degree_four_closed_form_pattern() {
        // Rows are cyclic shifts of (−η, 1, η, η²) / (1 + η²).
        let k = 0.4;
        let eta = (1.0 - k) / (1.0 + k);
        let s = s_matrix_closed_form(4, k).unwrap();
        let base = [-eta, 1.0, eta, eta * eta];
        for i in 0..4 {
            for j in 0..4 {
                let expected = base[(j + 4 - i) % 4] / (1.0 + eta * eta);
                assert!((s.s[(i, j)].re - expected).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn degree_five_closed_form_matches_inverse() {
        let c = VertexCoupling::cyclic(5).unwrap();
        let diff = s_matrix(&c, 2.0)
            .unwrap()
            .s
            .max_abs_diff(&s_matrix_closed_form(5, 2.0).unwrap().s);
        assert!(diff < 1e-12);
    }

    #[test]
    fn high_energy_limits() {
        assert_eq!(energy_limit(3, EnergyEnd::High).unwrap(), CMatrix::identity(3));
        let h = energy_limit(4, EnergyEnd::High).unwrap();
        let expected = real_matrix(&[
            &[1.0, 1.0, -1.0, 1.0],
            &[1.0, 1.0, 1.0, -1.0],
            &[-1.0, 1.0, 1.0, 1.0],
            &[1.0, -1.0, 1.0, 1.0],
        ])
        .scale(Complex64::new(0.5, 0.0));
        assert!(h.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn low_energy_limit_degree_four() {
        let l = energy_limit(4, EnergyEnd::Low).unwrap();
        let expected = real_matrix(&[
            &[-1.0, 1.0, 1.0, 1.0],
            &[1.0, -1.0, 1.0, 1.0],
            &[1.0, 1.0, -1.0, 1.0],
            &[1.0, 1.0, 1.0, -1.0],
        ])
        .scale(Complex64::new(0.5, 0.0));
        assert!(l.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn limits_agree_with_extreme_momenta() {
        for n in 3..=8 {
            let c = VertexCoupling::cyclic(n).unwrap();
            let hi = s_matrix(&c, 1e6).unwrap().s;
            let lo = s_matrix(&c, 1e-6).unwrap().s;
            assert!(hi.max_abs_diff(&energy_limit(n, EnergyEnd::High).unwrap()) < 1e-5);
            assert!(lo.max_abs_diff(&energy_limit(n, EnergyEnd::Low).unwrap()) < 1e-5);
            // The naive limit −I is wrong on the constant vector.
            let ones = vec![Complex64::new(1.0, 0.0); n];
            assert!(lo.mul_vec(&ones).iter().all(|z| (z - 1.0).norm() < 1e-6));
        }
    }

    #[test]
    fn reversal_breaks_symmetry() {
        for n in 3..=8 {
            let c = VertexCoupling::cyclic(n).unwrap();
            let s = s_matrix(&c, 1.0).unwrap().s;
            let r = reversal(n);
            let mirrored = &(&r * &s) * &r;
            assert!(mirrored.max_abs_diff(&s) >= 1.0);
        }
    }

    #[test]
    fn closed_form_cross_check_up_to_degree_64() {
        for n in [3, 9, 17, 32, 64] {
            let c = VertexCoupling::cyclic(n).unwrap();
            for k in [0.05, 0.7, 1.0, 1.3, 9.0] {
                let a = s_matrix(&c, k).unwrap().s;
                let b = s_matrix_closed_form(n, k).unwrap().s;
                assert!(a.max_abs_diff(&b) < 1e-10, "n={n} k={k}");
            }
        }
    }

    proptest! {
        #[test]
        fn scattering_invariants(n in 3usize..=8, k in 1e-3f64..100.0) {
            let c = VertexCoupling::cyclic(n).unwrap();
            let sm = s_matrix(&c, k).unwrap();
            prop_assert!(sm.unitarity_residual() < 1e-10);
            prop_assert!(sm.circulant_residual() < 1e-12);
            let commutator = (&sm.s * c.u()).max_abs_diff(&(c.u() * &sm.s));
            prop_assert!(commutator < 1e-10);
            let ones = vec![Complex64::new(1.0, 0.0); n];
            for z in sm.s.mul_vec(&ones) {
                prop_assert!((z - 1.0).norm() < 1e-10);
            }
        }

        #[test]
        fn closed_form_equals_inverse_form(n in 3usize..=8, k in 1e-3f64..100.0) {
            let c = VertexCoupling::cyclic(n).unwrap();
            let diff = s_matrix(&c, k).unwrap().s.max_abs_diff(&s_matrix_closed_form(n, k).unwrap().s);
            prop_assert!(diff < 1e-10);
        }
    }
}
