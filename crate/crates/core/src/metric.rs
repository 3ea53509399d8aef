//! Exact rational matrices, the `O(d,d)` form `η` and the generalized
//! metric built from a metric `G` and a two-form `B`.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Mul, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::Rational;
use crate::report::VerificationReport;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("G is singular")]
    Singular,
    #[error("G is not symmetric")]
    NotSymmetric,
    #[error("B is not antisymmetric")]
    NotAntisymmetric,
    #[error("shape mismatch: expected {expected}x{expected}, got {rows}x{cols}")]
    Shape { expected: usize, rows: usize, cols: usize },
}

/// Dense row-major matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: alloc::vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
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

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square() && *self == -&self.transpose()
    }

    /// Gauss–Jordan inverse; `None` for singular or non-square input.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            a.swap_rows(pivot, col);
            inv.swap_rows(pivot, col);
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] = &a[(col, j)] / &p;
                inv[(col, j)] = &inv[(col, j)] / &p;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone();
                for j in 0..n {
                    let da = &factor * &a[(col, j)];
                    let di = &factor * &inv[(col, j)];
                    a[(r, j)] -= da;
                    inv[(r, j)] -= di;
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Assembles `[[a, b], [c, d]]` from four equally sized square blocks.
    pub fn blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let n = a.rows;
        let mut m = Self::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = a[(i, j)].clone();
                m[(i, j + n)] = b[(i, j)].clone();
                m[(i + n, j)] = c[(i, j)].clone();
                m[(i + n, j + n)] = d[(i, j)].clone();
            }
        }
        m
    }
}

impl core::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul<&RatMatrix> for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = RatMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Sub<&RatMatrix> for &RatMatrix {
    type Output = RatMatrix;
    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix shape mismatch");
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &RatMatrix {
    type Output = RatMatrix;
    fn neg(self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// `η = [[0, 1], [1, 0]]` in `d + d` block form.
pub fn eta(d: usize) -> RatMatrix {
    let zero = RatMatrix::zeros(d, d);
    let id = RatMatrix::identity(d);
    RatMatrix::blocks(&zero, &id, &id, &zero)
}

/// `H(G, B) = [[G − B G⁻¹ B, B G⁻¹], [−G⁻¹ B, G⁻¹]]`.
pub fn generalized_metric(g: &RatMatrix, b: &RatMatrix) -> Result<RatMatrix, MetricError> {
    let d = g.rows();
    for m in [g, b] {
        if m.rows() != d || m.cols() != d {
            return Err(MetricError::Shape {
                expected: d,
                rows: m.rows(),
                cols: m.cols(),
            });
        }
    }
    if !g.is_symmetric() {
        return Err(MetricError::NotSymmetric);
    }
    if !b.is_antisymmetric() {
        return Err(MetricError::NotAntisymmetric);
    }
    let g_inv = g.inverse().ok_or(MetricError::Singular)?;
    let b_ginv = b * &g_inv;
    let top_left = g - &(&b_ginv * b);
    let bottom_left = -&(&g_inv * b);
    Ok(RatMatrix::blocks(&top_left, &b_ginv, &bottom_left, &g_inv))
}

/// Checks `H η H = η` exactly.
pub fn check_odd_compat(h: &RatMatrix) -> VerificationReport {
    assert!(h.is_square() && h.rows().is_multiple_of(2), "H must be 2d x 2d");
    let e = eta(h.rows() / 2);
    let lhs = &(h * &e) * h;
    VerificationReport::matrix("metric.odd_compat", &lhs - &e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use alloc::vec;

    #[test]
    fn identity_metric() {
        let h = generalized_metric(&RatMatrix::identity(3), &RatMatrix::zeros(3, 3)).unwrap();
        assert_eq!(h, RatMatrix::identity(6));
        assert!(check_odd_compat(&h).passed());
    }

    #[test]
    fn diag_metric_with_b_field() {
        let g = RatMatrix::from_rows(vec![vec![rat(2), rat(0)], vec![rat(0), rat(1)]]);
        let b = RatMatrix::from_rows(vec![vec![rat(0), rat(1)], vec![rat(-1), rat(0)]]);
        let h = generalized_metric(&g, &b).unwrap();
        // G − B G⁻¹ B = diag(2,1) + diag(1, 1/2)
        assert_eq!(h[(0, 0)], rat(3));
        assert_eq!(h[(1, 1)], Rational::new(3.into(), 2.into()));
        assert!(h.is_symmetric());
        assert!(check_odd_compat(&h).passed());
    }

    #[test]
    fn eta_squares_to_identity() {
        let e = eta(3);
        assert_eq!(&e * &e, RatMatrix::identity(6));
        assert!(check_odd_compat(&e).passed());
    }

    #[test]
    fn rejects_bad_input() {
        let g = RatMatrix::from_rows(vec![vec![rat(1), rat(1)], vec![rat(1), rat(1)]]);
        assert_eq!(generalized_metric(&g, &RatMatrix::zeros(2, 2)), Err(MetricError::Singular));
        let g = RatMatrix::from_rows(vec![vec![rat(1), rat(2)], vec![rat(0), rat(1)]]);
        assert_eq!(generalized_metric(&g, &RatMatrix::zeros(2, 2)), Err(MetricError::NotSymmetric));
        assert_eq!(
            generalized_metric(&RatMatrix::identity(2), &RatMatrix::identity(2)),
            Err(MetricError::NotAntisymmetric)
        );
    }

    #[test]
    fn non_metric_fails_compat() {
        let h = RatMatrix::from_rows(vec![vec![rat(2), rat(0)], vec![rat(0), rat(1)]]);
        assert!(!check_odd_compat(&h).passed());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = RatMatrix::from_rows(vec![
            vec![rat(0), rat(1), rat(2)],
            vec![rat(1), rat(0), rat(3)],
            vec![rat(4), rat(-3), rat(8)],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, RatMatrix::identity(3));
    }
}
