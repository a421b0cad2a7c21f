use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

/// Small dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    /// Builds a matrix from nested rows; panics on ragged input.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        CMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        CMatrix::from_fn(rows.len(), cols, |i, j| Complex64::new(rows[i][j], 0.0))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn adjoint(&self) -> Self {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Side-by-side concatenation `(self | other)`.
    pub fn hstack(&self, other: &CMatrix) -> Self {
        assert_eq!(self.rows, other.rows);
        CMatrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)]
            } else {
                other[(i, j - self.cols)]
            }
        })
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `‖M*M − I‖_max`.
    pub fn unitarity_residual(&self) -> f64 {
        let p = &self.adjoint() * self;
        p.max_abs_diff(&CMatrix::identity(self.cols))
    }

    /// Product of the Euclidean row norms; bounds `|det|` from above.
    pub fn hadamard_bound(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
            .product()
    }

    /// Numerical rank by Gaussian elimination with partial pivoting.
    pub fn rank(&self, tol: f64) -> usize {
        let mut a = self.clone();
        let scale = a.max_abs().max(f64::MIN_POSITIVE);
        let mut rank = 0;
        for col in 0..a.cols {
            if rank == a.rows {
                break;
            }
            let pivot = (rank..a.rows)
                .max_by(|&x, &y| a[(x, col)].norm().total_cmp(&a[(y, col)].norm()))
                .unwrap();
            if a[(pivot, col)].norm() <= tol * scale {
                continue;
            }
            a.swap_rows(rank, pivot);
            let p = a[(rank, col)];
            for r in rank + 1..a.rows {
                let factor = a[(r, col)] / p;
                for c in col..a.cols {
                    let v = a[(rank, c)];
                    a[(r, c)] -= factor * v;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Solves `self · X = rhs` by LU with partial pivoting.
    ///
    /// Returns `None` when a pivot vanishes exactly.
    pub fn solve(&self, rhs: &CMatrix) -> Option<CMatrix> {
        assert!(self.is_square() && rhs.rows == self.rows);
        let n = self.rows;
        let mut a = self.clone();
        let mut b = rhs.clone();
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| a[(x, col)].norm().total_cmp(&a[(y, col)].norm()))
                .unwrap();
            if a[(pivot, col)].norm() == 0.0 {
                return None;
            }
            a.swap_rows(col, pivot);
            b.swap_rows(col, pivot);
            let p = a[(col, col)];
            for r in col + 1..n {
                let factor = a[(r, col)] / p;
                if factor.norm() == 0.0 {
                    continue;
                }
                for c in col..n {
                    let v = a[(col, c)];
                    a[(r, c)] -= factor * v;
                }
                for c in 0..b.cols {
                    let v = b[(col, c)];
                    b[(r, c)] -= factor * v;
                }
            }
        }
        for c in 0..b.cols {
            for r in (0..n).rev() {
                let mut acc = b[(r, c)];
                for k in r + 1..n {
                    acc -= a[(r, k)] * b[(k, c)];
                }
                b[(r, c)] = acc / a[(r, r)];
            }
        }
        Some(b)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows);
        CMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).map(|k| self[(i, k)] * rhs[(k, j)]).sum()
        })
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Determinant of a square matrix by Gaussian elimination with partial
/// pivoting. Dimensions 1 and 2 use the explicit formula.
///
/// Intended for the 4×4 and 6×6 secular systems; singular input returns
/// (numerically) zero.
pub fn det_complex(m: &CMatrix) -> Complex64 {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows;
    match n {
        0 => return Complex64::new(1.0, 0.0),
        1 => return m[(0, 0)],
        2 => return m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)],
        _ => {}
    }
    let mut a = m.clone();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| a[(x, col)].norm().total_cmp(&a[(y, col)].norm()))
            .unwrap();
        let p = a[(pivot, col)];
        if p.norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            a.swap_rows(col, pivot);
            det = -det;
        }
        det *= p;
        for r in col + 1..n {
            let factor = a[(r, col)] / p;
            for c in col + 1..n {
                let v = a[(col, c)];
                a[(r, c)] -= factor * v;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_matrix(rng: &mut StdRng, n: usize) -> CMatrix {
        CMatrix::from_fn(n, n, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    }

    /// Laplace expansion along the first row.
    fn cofactor_det(m: &CMatrix) -> Complex64 {
        let n = m.rows();
        if n == 1 {
            return m[(0, 0)];
        }
        let mut acc = c(0.0, 0.0);
        for j in 0..n {
            let minor = CMatrix::from_fn(n - 1, n - 1, |r, s| m[(r + 1, if s < j { s } else { s + 1 })]);
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            acc += m[(0, j)] * cofactor_det(&minor) * sign;
        }
        acc
    }

    #[test]
    fn identity_has_unit_determinant() {
        assert_eq!(det_complex(&CMatrix::identity(4)), c(1.0, 0.0));
    }

    #[test]
    fn diagonal_i_squared() {
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 0)] = c(0.0, 1.0);
        m[(1, 1)] = c(0.0, 1.0);
        assert_eq!(det_complex(&m), c(-1.0, 0.0));
    }

    #[test]
    fn random_six_by_six_matches_cofactor_expansion() {
        let mut rng = StdRng::seed_from_u64(6);
        for _ in 0..20 {
            let m = random_matrix(&mut rng, 6);
            let (lu, cof) = (det_complex(&m), cofactor_det(&m));
            assert!((lu - cof).norm() <= 1e-10 * cof.norm().max(1e-300), "{lu} vs {cof}");
        }
    }

    #[test]
    fn singular_matrix_has_zero_determinant() {
        let m = CMatrix::from_real_rows(&[&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0], &[0.0, 1.0, 5.0]]);
        assert!(det_complex(&m).norm() < 1e-14);
        assert_eq!(m.rank(1e-12), 2);
    }

    #[test]
    fn solve_recovers_known_solution() {
        let mut rng = StdRng::seed_from_u64(11);
        let a = random_matrix(&mut rng, 5);
        let x = random_matrix(&mut rng, 5);
        let b = &a * &x;
        let solved = a.solve(&b).unwrap();
        assert!(solved.max_abs_diff(&x) < 1e-10);
    }

    proptest! {
        #[test]
        fn determinant_is_multiplicative(seed in 0u64..1000, n in 1usize..=6) {
            let mut rng = StdRng::seed_from_u64(seed);
            let a = random_matrix(&mut rng, n);
            let b = random_matrix(&mut rng, n);
            let lhs = det_complex(&(&a * &b));
            let rhs = det_complex(&a) * det_complex(&b);
            prop_assert!((lhs - rhs).norm() <= 1e-9 * rhs.norm().max(1e-12));
        }
    }
}
