//! Secular determinants of the elementary cells.
//!
//! Square cell: one vertex with edges ordered right, up, left, down.
//! Unknowns `(a₁, b₁, a₂, b₂)` parametrize `f_j(x) = a_j e^{ikx} + b_j e^{−ikx}`
//! on the right (`j = 1`) and up (`j = 2`) edges; the left and down edges are
//! their translates, carrying the Bloch factors `ω₁`, `ω₂` and evaluated at
//! `x = ℓ` with outward derivative `−f'_j(ℓ)`.
//!
//! Hexagonal cell: three edges run from vertex A (`x = 0`) to vertex B
//! (`x = ℓ`), edge `j` carrying `ω̄_j` at B with `ω̄₀ = 1`. Both vertices list
//! the edges in the same cyclic order.
//!
//! Every row is a row of `A·Ψ + B·Ψ'` with `A = U − I`, `B = i(U + I)`.

use num_complex::Complex64;

use super::{bloch_param, BlochPoint, LatticeKind, LatticeModel};
use crate::numerics::{det_complex, CMatrix};
use crate::vertex::VertexCoupling;

type Form = Vec<Complex64>;

fn form(dim: usize, at: usize, a: Complex64, b: Complex64) -> Form {
    let mut v = vec![Complex64::new(0.0, 0.0); dim];
    v[at] = a;
    v[at + 1] = b;
    v
}

fn vertex_rows(values: &[Form], derivatives: &[Form]) -> Vec<Form> {
    let n = values.len();
    let pair = VertexCoupling::cyclic(n)
        .expect("degree at least 3")
        .boundary_pair();
    let dim = values[0].len();
    (0..n)
        .map(|r| {
            (0..dim)
                .map(|c| {
                    (0..n)
                        .map(|j| pair.a[(r, j)] * values[j][c] + pair.b[(r, j)] * derivatives[j][c])
                        .sum()
                })
                .collect()
        })
        .collect()
}

/// Coefficient matrix of the matching conditions at momentum `k` and Bloch
/// point `p` (4×4 square, 6×6 hexagonal).
pub fn secular_matrix(model: &LatticeModel, k: f64, p: &BlochPoint) -> CMatrix {
    let l = model.edge_length;
    let ik = Complex64::new(0.0, k);
    let e = Complex64::from_polar(1.0, k * l);
    let one = Complex64::new(1.0, 0.0);
    let rows = match model.kind {
        LatticeKind::Square => {
            let w1 = Complex64::from_polar(1.0, p.theta1);
            let w2 = Complex64::from_polar(1.0, p.theta2);
            let values = vec![
                form(4, 0, one, one),
                form(4, 2, one, one),
                form(4, 0, w1 * e, w1 / e),
                form(4, 2, w2 * e, w2 / e),
            ];
            let derivatives = vec![
                form(4, 0, ik, -ik),
                form(4, 2, ik, -ik),
                form(4, 0, -ik * w1 * e, ik * w1 / e),
                form(4, 2, -ik * w2 * e, ik * w2 / e),
            ];
            vertex_rows(&values, &derivatives)
        }
        LatticeKind::Hexagonal => {
            let phases = [
                one,
                Complex64::from_polar(1.0, -p.theta1),
                Complex64::from_polar(1.0, -p.theta2),
            ];
            let val_a: Vec<Form> = (0..3).map(|j| form(6, 2 * j, one, one)).collect();
            let der_a: Vec<Form> = (0..3).map(|j| form(6, 2 * j, ik, -ik)).collect();
            let val_b: Vec<Form> = (0..3)
                .map(|j| form(6, 2 * j, phases[j] * e, phases[j] / e))
                .collect();
            let der_b: Vec<Form> = (0..3)
                .map(|j| form(6, 2 * j, -ik * phases[j] * e, ik * phases[j] / e))
                .collect();
            let mut rows = vertex_rows(&val_a, &der_a);
            rows.extend(vertex_rows(&val_b, &der_b));
            rows
        }
    };
    CMatrix::from_rows(&rows)
}

/// Determinant of [`secular_matrix`].
pub fn secular_determinant(model: &LatticeModel, k: f64, p: &BlochPoint) -> Complex64 {
    det_complex(&secular_matrix(model, k, p))
}

/// Closed factored forms of the secular determinant:
///
/// - square: `16i e^{i(θ₁+θ₂)} k sin kℓ [(k² − 1)(cos θ₁ + cos θ₂) + 2(k² + 1) cos kℓ]`
/// - hexagonal: `16i e^{−i(θ₁+θ₂)} k² sin kℓ [3 + 6k² − k⁴ + 4d_θ(k² − 1) + (k² + 3)² cos 2kℓ]`
pub fn factored_determinant(model: &LatticeModel, k: f64, p: &BlochPoint) -> Complex64 {
    let l = model.edge_length;
    let k2 = k * k;
    let (t1, t2) = (p.theta1, p.theta2);
    let (phase, bracket) = match model.kind {
        LatticeKind::Square => (
            Complex64::from_polar(16.0 * k, t1 + t2),
            (k2 - 1.0) * (t1.cos() + t2.cos()) + 2.0 * (k2 + 1.0) * (k * l).cos(),
        ),
        LatticeKind::Hexagonal => {
            let d = bloch_param(LatticeKind::Hexagonal, p);
            (
                Complex64::from_polar(16.0 * k2, -(t1 + t2)),
                3.0 + 6.0 * k2 - k2 * k2
                    + 4.0 * d * (k2 - 1.0)
                    + (k2 + 3.0).powi(2) * (2.0 * k * l).cos(),
            )
        }
    };
    Complex64::i() * phase * ((k * l).sin() * bracket)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::condition::{reduce, RangeMode};
    use crate::lattice::{param_range, Side};
    use crate::numerics::{find_root, Bracket, ToleranceConfig};
    use rand::{Rng, SeedableRng};
    use rand::rngs::StdRng;
    use std::f64::consts::PI;

    #[test]
    fn assembled_equals_factored() {
        let mut rng = StdRng::seed_from_u64(11);
        for kind in [LatticeKind::Square, LatticeKind::Hexagonal] {
            for _ in 0..200 {
                let model = LatticeModel::new(kind, rng.gen_range(0.2..4.0)).unwrap();
                let k = rng.gen_range(0.05..5.0);
                let p = BlochPoint::new(rng.gen_range(-PI..PI), rng.gen_range(-PI..PI));
                let m = secular_matrix(&model, k, &p);
                let diff = (secular_determinant(&model, k, &p) - factored_determinant(&model, k, &p)).norm();
                assert!(diff <= 1e-10 * m.hadamard_bound(), "{kind:?} k={k} diff={diff}");
            }
        }
    }

    #[test]
    fn flat_momenta_annihilate_square_determinant() {
        let model = LatticeModel::square(1.7).unwrap();
        for m in 1..6 {
            let k = model.flat_momentum(m);
            for p in [BlochPoint::new(0.3, -2.0), BlochPoint::new(PI, 1.1)] {
                let mat = secular_matrix(&model, k, &p);
                assert!(secular_determinant(&model, k, &p).norm() < 1e-10 * mat.hadamard_bound());
            }
        }
    }

    #[test]
    fn determinant_vanishes_on_band_condition() {
        let tol = ToleranceConfig::default();
        let mut rng = StdRng::seed_from_u64(5);
        for kind in [LatticeKind::Square, LatticeKind::Hexagonal] {
            let range = param_range(kind, RangeMode::Derived);
            let mut found = 0;
            while found < 30 {
                let model = LatticeModel::new(kind, rng.gen_range(0.3..3.0)).unwrap();
                let p = BlochPoint::new(rng.gen_range(-PI..PI), rng.gen_range(-PI..PI));
                let c = bloch_param(kind, &p);
                assert!(c >= range.lo - 1e-12 && c <= range.hi + 1e-12);
                let f = |k: f64| {
                    let r = reduce(&model, Side::Positive, k);
                    r.residual(c)
                };
                let lo = rng.gen_range(0.1..4.0);
                let hi = lo + 0.05;
                let Ok(bracket) = Bracket::from_fn(f, lo, hi) else { continue };
                let k = find_root(f, &bracket, &tol).unwrap();
                let mat = secular_matrix(&model, k, &p);
                let det = secular_determinant(&model, k, &p).norm();
                assert!(det < 1e-8 * mat.hadamard_bound(), "{kind:?} k={k} det={det}");
                found += 1;
            }
        }
    }
}
