//! Split octonions as Zorn vector matrices, the para-octonion product,
//! and the reflection machinery for the associated quadratic space.
//!
//! An element is written `(a, v; w, b)` with scalars `a`, `b` and vectors
//! `v`, `w` in the rank-3 module, multiplied by
//!
//! ```text
//! (a1,v1;w1,b1)(a2,v2;w2,b2) =
//!   (a1*a2 + v1.w2,  a1*v2 + b2*v1 - w1 x w2;
//!    a2*w1 + b1*w2 + v1 x v2,  b1*b2 + w1.v2)
//! ```
//!
//! The norm form is `N(x) = a*b - v.w`, which is multiplicative for this
//! product. The para-octonion product `x * y = conj(x) conj(y)` makes the
//! same space a symmetric composition algebra: the bilinear form of `N`
//! satisfies `b(x*y, z) = b(x, y*z)` and the biquadratic identities
//! `(x*y)*x = x*(y*x) = N(x) y` hold.
//!
//! Coordinates are always taken in the frozen basis
//! `e, u1, u2, u3, u1*, u2*, u3*, e'` where `e = (1,0;0,0)`,
//! `ui = (0,ei;0,0)`, `ui* = (0,0;ei,0)` and `e' = (0,0;0,1)`, so the
//! unit is `e + e'` with coordinate vector `(1,0,0,0,0,0,0,1)`.

use crate::linalg::{Mat8, Vec8};
use crate::scalar::{Scalar, ScalarError, ScalarMode};

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum OctonionError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("isotropic vector: the norm vanishes, so no reflection is defined")]
    IsotropicVector,
    #[error("matrix is not a similitude of the norm form")]
    NotASimilitude,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Octonion {
    pub a: Scalar,
    pub v: [Scalar; 3],
    pub w: [Scalar; 3],
    pub b: Scalar,
}

fn dot(x: &[Scalar; 3], y: &[Scalar; 3]) -> Scalar {
    let mut acc = &x[0] * &y[0];
    for i in 1..3 {
        acc = &acc + &(&x[i] * &y[i]);
    }
    acc
}

fn cross(x: &[Scalar; 3], y: &[Scalar; 3]) -> [Scalar; 3] {
    [
        &(&x[1] * &y[2]) - &(&x[2] * &y[1]),
        &(&x[2] * &y[0]) - &(&x[0] * &y[2]),
        &(&x[0] * &y[1]) - &(&x[1] * &y[0]),
    ]
}

fn vadd(x: &[Scalar; 3], y: &[Scalar; 3]) -> [Scalar; 3] {
    std::array::from_fn(|i| &x[i] + &y[i])
}

fn vscale(c: &Scalar, x: &[Scalar; 3]) -> [Scalar; 3] {
    std::array::from_fn(|i| c * &x[i])
}

impl Octonion {
    pub fn new(a: Scalar, v: [Scalar; 3], w: [Scalar; 3], b: Scalar) -> Result<Self, OctonionError> {
        let x = Octonion { a, v, w, b };
        let mode = x.a.mode();
        for c in x.coords() {
            if c.mode() != mode {
                return Err(OctonionError::Scalar(ScalarError::ModeMismatch {
                    left: mode,
                    right: c.mode(),
                }));
            }
        }
        Ok(x)
    }

    pub fn zero(mode: ScalarMode) -> Self {
        Self::from_vec(&crate::linalg::vec8_zero(mode))
    }

    pub fn one(mode: ScalarMode) -> Self {
        let mut v = crate::linalg::vec8_zero(mode);
        v[0] = Scalar::one(mode);
        v[7] = Scalar::one(mode);
        Self::from_vec(&v)
    }

    /// The `i`-th frozen basis element, `0..8`.
    pub fn basis(i: usize, mode: ScalarMode) -> Self {
        let mut v = crate::linalg::vec8_zero(mode);
        v[i] = Scalar::one(mode);
        Self::from_vec(&v)
    }

    pub fn mode(&self) -> ScalarMode {
        self.a.mode()
    }

    pub fn coords(&self) -> [&Scalar; 8] {
        [
            &self.a, &self.v[0], &self.v[1], &self.v[2], &self.w[0], &self.w[1], &self.w[2],
            &self.b,
        ]
    }

    pub fn to_vec(&self) -> Vec8 {
        std::array::from_fn(|i| self.coords()[i].clone())
    }

    pub fn from_vec(c: &Vec8) -> Self {
        Octonion {
            a: c[0].clone(),
            v: [c[1].clone(), c[2].clone(), c[3].clone()],
            w: [c[4].clone(), c[5].clone(), c[6].clone()],
            b: c[7].clone(),
        }
    }

    pub fn add(&self, y: &Self) -> Self {
        Octonion {
            a: &self.a + &y.a,
            v: vadd(&self.v, &y.v),
            w: vadd(&self.w, &y.w),
            b: &self.b + &y.b,
        }
    }

    pub fn sub(&self, y: &Self) -> Self {
        self.add(&y.scale(&-Scalar::one(y.mode())))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Octonion {
            a: c * &self.a,
            v: vscale(c, &self.v),
            w: vscale(c, &self.w),
            b: c * &self.b,
        }
    }

    /// Zorn vector-matrix product (the split octonion multiplication).
    pub fn mul(&self, y: &Self) -> Result<Self, OctonionError> {
        self.a.require_same_mode(&y.a)?;
        Ok(self.mul_unchecked(y))
    }

    fn mul_unchecked(&self, y: &Self) -> Self {
        let a = &(&self.a * &y.a) + &dot(&self.v, &y.w);
        let v = vadd(
            &vadd(&vscale(&self.a, &y.v), &vscale(&y.b, &self.v)),
            &vscale(&-Scalar::one(self.mode()), &cross(&self.w, &y.w)),
        );
        let w = vadd(
            &vadd(&vscale(&y.a, &self.w), &vscale(&self.b, &y.w)),
            &cross(&self.v, &y.v),
        );
        let b = &(&self.b * &y.b) + &dot(&self.w, &y.v);
        Octonion { a, v, w, b }
    }

    pub fn conj(&self) -> Self {
        let m = -Scalar::one(self.mode());
        Octonion {
            a: self.b.clone(),
            v: vscale(&m, &self.v),
            w: vscale(&m, &self.w),
            b: self.a.clone(),
        }
    }

    /// Para-octonion product `x * y = conj(x) conj(y)`.
    pub fn para_mul(&self, y: &Self) -> Result<Self, OctonionError> {
        self.a.require_same_mode(&y.a)?;
        Ok(self.conj().mul_unchecked(&y.conj()))
    }

    pub fn norm(&self) -> Scalar {
        &(&self.a * &self.b) - &dot(&self.v, &self.w)
    }

    /// Polarized bilinear form `b(x, y) = N(x+y) - N(x) - N(y)`.
    pub fn bilinear(&self, y: &Self) -> Scalar {
        &(&self.add(y).norm() - &self.norm()) - &y.norm()
    }

    pub fn is_isotropic(&self, eps: f64) -> bool {
        self.norm().eq_eps(&Scalar::zero(self.mode()), eps)
    }

    pub fn eq_eps(&self, y: &Self, eps: f64) -> bool {
        self.coords()
            .iter()
            .zip(y.coords().iter())
            .all(|(a, b)| a.eq_eps(b, eps))
    }
}

/// Gram matrix `G[i][j] = b(basis_i, basis_j)` of the norm form in the
/// frozen basis, computed from the model rather than written down.
pub fn gram(mode: ScalarMode) -> Mat8 {
    let basis: Vec<Octonion> = (0..8).map(|i| Octonion::basis(i, mode)).collect();
    Mat8::from_fn(|i, j| basis[i].bilinear(&basis[j]))
}

/// Matrix of the linear map `y -> f(y)` in the frozen basis.
pub fn matrix_of(mode: ScalarMode, f: impl Fn(&Octonion) -> Octonion) -> Mat8 {
    let cols: Vec<Vec8> = (0..8)
        .map(|j| f(&Octonion::basis(j, mode)).to_vec())
        .collect();
    Mat8::from_fn(|i, j| cols[j][i].clone())
}

/// Reflection `y -> y - (b(x,y)/N(x)) x` in the hyperplane orthogonal to
/// an anisotropic `x`, as an 8x8 matrix.
pub fn reflection_matrix(x: &Octonion, eps: f64) -> Result<Mat8, OctonionError> {
    let n = x.norm();
    if n.eq_eps(&Scalar::zero(x.mode()), eps) {
        return Err(OctonionError::IsotropicVector);
    }
    let n_inv = n.inv()?;
    Ok(matrix_of(x.mode(), |y| {
        let c = &x.bilinear(y) * &n_inv;
        y.sub(&x.scale(&c))
    }))
}

/// The similitude factor `lambda` with `M^T G M = lambda G`, when one
/// exists.
pub fn similitude_factor(m: &Mat8, eps: f64) -> Result<Scalar, OctonionError> {
    let g = gram(m.mode());
    let congruent = m.transpose().mul(&g).mul(m);
    // G has a 1 in the corner pair (0,7) of the frozen basis
    let lambda = congruent.at(0, 7).clone();
    if congruent.eq_eps(&g.scale(&lambda), eps) {
        Ok(lambda)
    } else {
        Err(OctonionError::NotASimilitude)
    }
}

/// Membership in SO(N): an isometry of the norm form with determinant 1.
pub fn is_special_orthogonal(m: &Mat8, eps: f64) -> bool {
    let one = Scalar::one(m.mode());
    matches!(similitude_factor(m, eps), Ok(l) if l.eq_eps(&one, eps))
        && m.det().eq_eps(&one, eps)
}
