//! Dense 8x8 matrices over [`Scalar`], with exact determinants and
//! inverses. Eight is the only dimension this crate ever needs.

use crate::scalar::{Scalar, ScalarMode};
use std::fmt;

pub type Vec8 = [Scalar; 8];

pub fn vec8_zero(mode: ScalarMode) -> Vec8 {
    std::array::from_fn(|_| Scalar::zero(mode))
}

pub fn vec8_eq_eps(a: &Vec8, b: &Vec8, eps: f64) -> bool {
    a.iter().zip(b.iter()).all(|(x, y)| x.eq_eps(y, eps))
}

#[derive(Clone, PartialEq)]
pub struct Mat8 {
    rows: [[Scalar; 8]; 8],
}

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum LinalgError {
    #[error("matrix is singular")]
    Singular,
}

impl Mat8 {
    pub fn from_rows(rows: [[Scalar; 8]; 8]) -> Self {
        Mat8 { rows }
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        Mat8 {
            rows: std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))),
        }
    }

    pub fn identity(mode: ScalarMode) -> Self {
        Self::from_fn(|i, j| {
            if i == j {
                Scalar::one(mode)
            } else {
                Scalar::zero(mode)
            }
        })
    }

    pub fn mode(&self) -> ScalarMode {
        self.rows[0][0].mode()
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.rows[i][j] = v;
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_fn(|i, j| {
            let mut acc = &self.rows[i][0] * &other.rows[0][j];
            for k in 1..8 {
                acc = &acc + &(&self.rows[i][k] * &other.rows[k][j]);
            }
            acc
        })
    }

    pub fn matvec(&self, v: &Vec8) -> Vec8 {
        std::array::from_fn(|i| {
            let mut acc = &self.rows[i][0] * &v[0];
            for k in 1..8 {
                acc = &acc + &(&self.rows[i][k] * &v[k]);
            }
            acc
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.rows[j][i].clone())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_fn(|i, j| c * &self.rows[i][j])
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one(self.mode()))
    }

    pub fn eq_eps(&self, other: &Self, eps: f64) -> bool {
        (0..8).all(|i| (0..8).all(|j| self.rows[i][j].eq_eps(&other.rows[i][j], eps)))
    }

    pub fn is_identity(&self, eps: f64) -> bool {
        self.eq_eps(&Self::identity(self.mode()), eps)
    }

    /// Exact determinant by Gaussian elimination. Complex mode pivots on
    /// the entry of largest magnitude for stability; exact modes take the
    /// first nonzero pivot.
    pub fn det(&self) -> Scalar {
        let mode = self.mode();
        let mut m = self.rows.clone();
        let mut det = Scalar::one(mode);
        for col in 0..8 {
            let pivot = match self.pick_pivot(&m, col) {
                Some(p) => p,
                None => return Scalar::zero(mode),
            };
            if pivot != col {
                m.swap(pivot, col);
                det = -det;
            }
            det = &det * &m[col][col];
            let inv = m[col][col].inv().expect("pivot is nonzero");
            for r in (col + 1)..8 {
                if m[r][col].is_zero() {
                    continue;
                }
                let f = &m[r][col] * &inv;
                for c in col..8 {
                    let delta = &f * &m[col][c];
                    m[r][c] = &m[r][c] - &delta;
                }
            }
        }
        det
    }

    fn pick_pivot(&self, m: &[[Scalar; 8]; 8], col: usize) -> Option<usize> {
        match self.mode() {
            ScalarMode::Complex => {
                let mut best: Option<(usize, f64)> = None;
                for (r, row) in m.iter().enumerate().skip(col) {
                    let mag = row[col].as_complex().map(|z| z.norm()).unwrap_or(0.0);
                    if mag > 0.0 && best.map_or(true, |(_, b)| mag > b) {
                        best = Some((r, mag));
                    }
                }
                best.map(|(r, _)| r)
            }
            _ => (col..8).find(|&r| !m[r][col].is_zero()),
        }
    }

    pub fn inverse(&self) -> Result<Self, LinalgError> {
        let mode = self.mode();
        let mut m = self.rows.clone();
        let mut inv = Self::identity(mode).rows;
        for col in 0..8 {
            let pivot = self.pick_pivot(&m, col).ok_or(LinalgError::Singular)?;
            if pivot != col {
                m.swap(pivot, col);
                inv.swap(pivot, col);
            }
            let piv_inv = m[col][col].inv().expect("pivot is nonzero");
            for c in 0..8 {
                m[col][c] = &m[col][c] * &piv_inv;
                inv[col][c] = &inv[col][c] * &piv_inv;
            }
            for r in 0..8 {
                if r == col || m[r][col].is_zero() {
                    continue;
                }
                let f = m[r][col].clone();
                for c in 0..8 {
                    let dm = &f * &m[col][c];
                    m[r][c] = &m[r][c] - &dm;
                    let di = &f * &inv[col][c];
                    inv[r][c] = &inv[r][c] - &di;
                }
            }
        }
        Ok(Mat8 { rows: inv })
    }
}

impl fmt::Debug for Mat8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat8 [")?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rmat(seed: u64) -> Mat8 {
        // deterministic small-entry matrix, invertible for these seeds
        let mut state = seed;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 11) as i64 - 5
        };
        Mat8::from_fn(|i, j| {
            let off = if i == j { 7 } else { 0 };
            Scalar::from_i64(next() + off, ScalarMode::Rational)
        })
    }

    #[test]
    fn identity_properties() {
        let id = Mat8::identity(ScalarMode::Rational);
        assert!(id.is_identity(0.0));
        assert_eq!(id.det(), Scalar::one(ScalarMode::Rational));
    }

    #[test]
    fn inverse_round_trip() {
        for seed in 1..5u64 {
            let m = rmat(seed);
            let inv = m.inverse().unwrap();
            assert!(m.mul(&inv).is_identity(0.0));
            assert!(inv.mul(&m).is_identity(0.0));
        }
    }

    #[test]
    fn det_is_multiplicative() {
        let a = rmat(10);
        let b = rmat(11);
        assert_eq!(a.mul(&b).det(), &a.det() * &b.det());
    }

    #[test]
    fn singular_matrix_has_zero_det() {
        let mut m = rmat(3);
        for j in 0..8 {
            let v = m.at(0, j).clone();
            m.set(1, j, v);
        }
        assert!(m.det().is_zero());
        assert_eq!(m.inverse(), Err(LinalgError::Singular));
    }
}
