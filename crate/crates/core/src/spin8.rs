//! Spin(8) realized as triples of rotations tied together by the
//! para-octonion product.
//!
//! A spin triple is `(g1, g2, g3)` with each component in SO(N) and
//!
//! ```text
//! g1(x * y) = g2(x) * g3(y)       for all octonions x, y
//! ```
//!
//! checked on the 64 basis pairs, which suffices by bilinearity. The
//! triality automorphism rotates the components left,
//! `theta(g1,g2,g3) = (g2,g3,g1)`, so the coordinate projections satisfy
//! `rho_j . theta = rho_{j+1}` with indices cycling 1 -> 2 -> 3 -> 1.
//!
//! The center consists of the four sign triples `(e1 I, e2 I, e3 I)` with
//! `e1 = e2 e3`; each projection kills exactly one nontrivial central
//! element. The fixed points of triality are the automorphisms of the
//! para-product, a group of type G2.

use crate::linalg::Mat8;
use crate::octonion::{
    gram, is_special_orthogonal, matrix_of, reflection_matrix, Octonion, OctonionError,
};
use crate::scalar::{Scalar, ScalarError, ScalarMode};

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum SpinError {
    #[error(transparent)]
    Octonion(#[from] OctonionError),
    #[error("reflection pair does not lift over the scalar field: N(x)N(y) = {value} is not a square")]
    NormProductNotSquare { value: String },
    #[error("component index {0} out of range 1..=3")]
    BadComponentIndex(usize),
}

/// Why a candidate triple failed validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TripleDefect {
    NotSpecialOrthogonal { component: usize },
    RelationFailed { i: usize, j: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpinTriple {
    g: [Mat8; 3],
}

impl SpinTriple {
    pub fn new(g1: Mat8, g2: Mat8, g3: Mat8) -> Self {
        SpinTriple { g: [g1, g2, g3] }
    }

    pub fn identity(mode: ScalarMode) -> Self {
        let id = Mat8::identity(mode);
        SpinTriple {
            g: [id.clone(), id.clone(), id],
        }
    }

    /// The central candidate `(s1 I, s2 I, s3 I)` for signs `si = +-1`.
    pub fn sign_triple(signs: [i8; 3], mode: ScalarMode) -> Self {
        let comp = |s: i8| Mat8::identity(mode).scale(&Scalar::from_i64(s as i64, mode));
        SpinTriple {
            g: [comp(signs[0]), comp(signs[1]), comp(signs[2])],
        }
    }

    pub fn mode(&self) -> ScalarMode {
        self.g[0].mode()
    }

    /// Coordinate projection `rho_j`, `j` in `1..=3`.
    pub fn rho(&self, j: usize) -> Result<&Mat8, SpinError> {
        match j {
            1..=3 => Ok(&self.g[j - 1]),
            _ => Err(SpinError::BadComponentIndex(j)),
        }
    }

    pub fn components(&self) -> (&Mat8, &Mat8, &Mat8) {
        (&self.g[0], &self.g[1], &self.g[2])
    }

    pub fn validate(&self, eps: f64) -> Result<(), TripleDefect> {
        for (k, m) in self.g.iter().enumerate() {
            if !is_special_orthogonal(m, eps) {
                return Err(TripleDefect::NotSpecialOrthogonal { component: k + 1 });
            }
        }
        let mode = self.mode();
        let basis: Vec<Octonion> = (0..8).map(|i| Octonion::basis(i, mode)).collect();
        let g2_cols: Vec<Octonion> = basis
            .iter()
            .map(|b| Octonion::from_vec(&self.g[1].matvec(&b.to_vec())))
            .collect();
        let g3_cols: Vec<Octonion> = basis
            .iter()
            .map(|b| Octonion::from_vec(&self.g[2].matvec(&b.to_vec())))
            .collect();
        for i in 0..8 {
            for j in 0..8 {
                let prod = basis[i].para_mul(&basis[j]).expect("uniform mode");
                let lhs = Octonion::from_vec(&self.g[0].matvec(&prod.to_vec()));
                let rhs = g2_cols[i].para_mul(&g3_cols[j]).expect("uniform mode");
                if !lhs.eq_eps(&rhs, eps) {
                    return Err(TripleDefect::RelationFailed { i, j });
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self, eps: f64) -> bool {
        self.validate(eps).is_ok()
    }

    /// Componentwise product; spin triples form a group.
    pub fn mul(&self, other: &Self) -> Self {
        SpinTriple {
            g: std::array::from_fn(|k| self.g[k].mul(&other.g[k])),
        }
    }

    /// Componentwise inverse, using that each component is an isometry:
    /// `m^{-1} = G m^T G` for the Gram matrix `G` (which squares to the
    /// identity in the frozen basis).
    pub fn inv(&self) -> Self {
        let g = gram(self.mode());
        SpinTriple {
            g: std::array::from_fn(|k| g.mul(&self.g[k].transpose()).mul(&g)),
        }
    }

    /// Triality: rotate components left, so `rho_j(theta(a)) = rho_{j+1}(a)`.
    pub fn theta(&self) -> Self {
        SpinTriple {
            g: [self.g[1].clone(), self.g[2].clone(), self.g[0].clone()],
        }
    }

    pub fn theta_inv(&self) -> Self {
        SpinTriple {
            g: [self.g[2].clone(), self.g[0].clone(), self.g[1].clone()],
        }
    }

    /// Fixed points of triality are automorphisms of the para-product.
    pub fn is_triality_fixed(&self, eps: f64) -> bool {
        self.g[0].eq_eps(&self.g[1], eps) && self.g[0].eq_eps(&self.g[2], eps)
    }

    pub fn eq_eps(&self, other: &Self, eps: f64) -> bool {
        self.g
            .iter()
            .zip(other.g.iter())
            .all(|(a, b)| a.eq_eps(b, eps))
    }
}

/// Scans all eight sign patterns and returns those that are genuine spin
/// triples: exactly the four with `s1 = s2 s3`.
pub fn center_sign_patterns(mode: ScalarMode, eps: f64) -> Vec<[i8; 3]> {
    let mut out = Vec::new();
    for bits in 0..8u8 {
        let signs: [i8; 3] = std::array::from_fn(|k| if bits & (1 << k) == 0 { 1 } else { -1 });
        if SpinTriple::sign_triple(signs, mode).is_valid(eps) {
            out.push(signs);
        }
    }
    out
}

pub fn center_enumerate(mode: ScalarMode, eps: f64) -> Vec<SpinTriple> {
    center_sign_patterns(mode, eps)
        .into_iter()
        .map(|signs| SpinTriple::sign_triple(signs, mode))
        .collect()
}

/// The nontrivial central element killed by `rho_j`: sign `+` in slot `j`
/// and `-` in the other two.
pub fn central_element(j: usize, mode: ScalarMode) -> Result<SpinTriple, SpinError> {
    if !(1..=3).contains(&j) {
        return Err(SpinError::BadComponentIndex(j));
    }
    let signs: [i8; 3] = std::array::from_fn(|k| if k + 1 == j { 1 } else { -1 });
    Ok(SpinTriple::sign_triple(signs, mode))
}

/// Central elements mapped to the identity by `rho_j`; always the
/// identity and the sign triple with `+` in slot `j`.
pub fn kernel_of_rho(j: usize, mode: ScalarMode, eps: f64) -> Result<Vec<SpinTriple>, SpinError> {
    if !(1..=3).contains(&j) {
        return Err(SpinError::BadComponentIndex(j));
    }
    Ok(center_enumerate(mode, eps)
        .into_iter()
        .filter(|z| z.rho(j).expect("index checked").is_identity(eps))
        .collect())
}

/// Lifts the rotation `sigma_x sigma_y` (a product of two hyperplane
/// reflections in anisotropic vectors) to a spin triple with
/// `rho_1 = sigma_x sigma_y`.
///
/// The construction composes two instances of the reflection identity
/// `sigma_x(u * v) = -(v * x) * (x * u) / N(x)` of the para-product,
/// giving companions `u -> (y*u)*x / s` and `v -> x*(v*y) / s` with
/// `s^2 = N(x) N(y)`. The scale `s` must be an exact square root in the
/// scalar field: over Q this is the classical obstruction to lifting a
/// rotation with nontrivial spinor norm, and the error reports it rather
/// than leaving the field.
pub fn lift_reflection_pair(x: &Octonion, y: &Octonion, eps: f64) -> Result<SpinTriple, SpinError> {
    let zero = Scalar::zero(x.mode());
    if x.norm().eq_eps(&zero, eps) || y.norm().eq_eps(&zero, eps) {
        return Err(SpinError::Octonion(OctonionError::IsotropicVector));
    }
    let g1 = reflection_matrix(x, eps)?.mul(&reflection_matrix(y, eps)?);
    let prod = &x.norm() * &y.norm();
    let s = prod.sqrt().map_err(|e| match e {
        ScalarError::NoExactSqrt { value, .. } => SpinError::NormProductNotSquare { value },
        other => SpinError::Octonion(OctonionError::Scalar(other)),
    })?;
    let s_inv = s.inv().map_err(OctonionError::Scalar)?;
    let mode = x.mode();
    let g2 = matrix_of(mode, |u| {
        y.para_mul(u)
            .and_then(|yu| yu.para_mul(x))
            .expect("uniform mode")
            .scale(&s_inv)
    });
    let g3 = matrix_of(mode, |v| {
        x.para_mul(&v.para_mul(y).expect("uniform mode"))
            .expect("uniform mode")
            .scale(&s_inv)
    });
    Ok(SpinTriple::new(g1, g2, g3))
}
