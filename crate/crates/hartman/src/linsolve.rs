//! Dense complex linear solver for the small boundary-matching systems
//! (4x4 for one channel, 8x8 for two). LU with partial pivoting, plus an
//! infinity-norm condition estimate so degenerate parameter sets surface as
//! [`Error::SingularMatching`] instead of garbage amplitudes.

use num_complex::Complex64;

use crate::error::Error;

/// Condition number above which a matching system is declared singular.
pub const CONDITION_LIMIT: f64 = 1e12;

/// Square complex matrix in row-major storage.
#[derive(Debug, Clone)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self {
            n,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    fn norm_inf(&self) -> f64 {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

struct LuFactors {
    n: usize,
    lu: Vec<Complex64>,
    perm: Vec<usize>,
}

impl LuFactors {
    fn factorize(m: &CMatrix) -> Option<Self> {
        let n = m.n;
        let mut lu = m.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for col in 0..n {
            let (pivot_row, pivot_mag) = (col..n)
                .map(|r| (r, lu[r * n + col].norm()))
                .max_by(|a, b| a.1.total_cmp(&b.1))?;
            if pivot_mag == 0.0 || !pivot_mag.is_finite() {
                return None;
            }
            if pivot_row != col {
                for j in 0..n {
                    lu.swap(col * n + j, pivot_row * n + j);
                }
                perm.swap(col, pivot_row);
            }
            let pivot = lu[col * n + col];
            for r in (col + 1)..n {
                let factor = lu[r * n + col] / pivot;
                lu[r * n + col] = factor;
                for j in (col + 1)..n {
                    let sub = factor * lu[col * n + j];
                    lu[r * n + j] -= sub;
                }
            }
        }
        Some(Self { n, lu, perm })
    }

    fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 1..n {
            for j in 0..i {
                let sub = self.lu[i * n + j] * x[j];
                x[i] -= sub;
            }
        }
        for i in (0..n).rev() {
            for j in (i + 1)..n {
                let sub = self.lu[i * n + j] * x[j];
                x[i] -= sub;
            }
            x[i] /= self.lu[i * n + i];
        }
        x
    }
}

/// Solution of `A x = b` together with the condition estimate of `A`.
#[derive(Debug, Clone)]
pub struct Solved {
    pub x: Vec<Complex64>,
    pub condition: f64,
}

/// Solve `A x = b`, rejecting systems with infinity-norm condition number
/// above [`CONDITION_LIMIT`].
pub fn solve_with_condition(a: &CMatrix, b: &[Complex64]) -> Result<Solved, Error> {
    assert_eq!(a.n, b.len());
    let factors = LuFactors::factorize(a).ok_or(Error::SingularMatching {
        condition: f64::INFINITY,
    })?;
    // ||A^-1||_inf via explicit inverse columns; the systems here are tiny.
    let n = a.n;
    let mut inv_norm_rows = vec![0.0_f64; n];
    for col in 0..n {
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        e[col] = Complex64::new(1.0, 0.0);
        let inv_col = factors.solve(&e);
        for (row, v) in inv_col.iter().enumerate() {
            inv_norm_rows[row] += v.norm();
        }
    }
    let condition = a.norm_inf() * inv_norm_rows.iter().fold(0.0_f64, |m, &v| m.max(v));
    if !condition.is_finite() || condition > CONDITION_LIMIT {
        return Err(Error::SingularMatching { condition });
    }
    Ok(Solved {
        x: factors.solve(b),
        condition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn solves_known_system() {
        // A x = b with x chosen first, b computed by hand multiplication.
        let a = CMatrix::from_rows(&[
            vec![c(2.0, 1.0), c(0.0, -1.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(3.0, 0.0), c(-1.0, 2.0)],
            vec![c(1.0, -1.0), c(0.5, 0.0), c(4.0, 0.0)],
        ]);
        let x_true = [c(1.0, 1.0), c(-2.0, 0.5), c(0.0, -3.0)];
        let mut b = vec![c(0.0, 0.0); 3];
        for i in 0..3 {
            for j in 0..3 {
                b[i] += a.get(i, j) * x_true[j];
            }
        }
        let sol = solve_with_condition(&a, &b).unwrap();
        for (got, want) in sol.x.iter().zip(x_true.iter()) {
            assert!((got - want).norm() < 1e-12);
        }
        assert!(sol.condition < 1e3);
    }

    #[test]
    fn rejects_singular_matrix() {
        let a = CMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(2.0, 0.0)],
            vec![c(2.0, 0.0), c(4.0, 0.0)],
        ]);
        let b = vec![c(1.0, 0.0), c(2.0, 0.0)];
        assert!(matches!(
            solve_with_condition(&a, &b),
            Err(Error::SingularMatching { .. })
        ));
    }

    #[test]
    fn rejects_ill_conditioned_matrix() {
        let a = CMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(1.0 + 1e-14, 0.0)],
        ]);
        let b = vec![c(1.0, 0.0), c(1.0, 0.0)];
        assert!(matches!(
            solve_with_condition(&a, &b),
            Err(Error::SingularMatching { .. })
        ));
    }
}
