//! The similitude extension of Spin(8) with three independent scaling
//! directions, one for each nontrivial central element.
//!
//! Elements are classes of pairs `(t, s)` where `t` is a triple of
//! invertible scalars indexed by the labels `1..=3` of the nontrivial
//! central elements (label `j` marks the central element killed by
//! `rho_j`) and `s` is a spin triple. The class identifies `(t, s)` with
//! `(iota(z) t, z s)` for central `z`, where `iota` sends the central
//! element of label `j` to the sign vector with `+1` in slot `j` and
//! `-1` elsewhere.
//!
//! Triality extends to these classes by rotating the scaling slots along
//! the cycle it induces on the center labels. For each label `j` there is
//! an embedding `j_e` of the single-scaling spin similitude group and a
//! projection `rho_e` to the orthogonal similitude group:
//!
//! * `j_e(t, s)` has slot `j` equal to `1` and the other two slots `t`;
//! * `rho_e(t, s) = (t_{e'} / t_{e''}) rho_j(s)` where `e'` and `e''` are
//!   the triality images of the label-`j` central element.
//!
//! These satisfy `rho_e = rho_{e'} . theta`, intertwine as
//! `theta . j_e = j_{e'} . theta`, and compose to the scalar-preserving
//! or scalar-multiplying maps checked in the tests.

use crate::linalg::Mat8;
use crate::scalar::{Scalar, ScalarError, ScalarMode};
use crate::spin8::{central_element, SpinError, SpinTriple};

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum TriSpinError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Spin(#[from] SpinError),
    #[error("scaling coordinate {slot} is zero")]
    ZeroScaling { slot: usize },
}

/// Image of center label `j` under triality: with components rotating
/// left, `theta` sends label 1 -> 3 -> 2 -> 1.
pub fn theta_center_label(j: usize) -> usize {
    match j {
        1 => 3,
        2 => 1,
        3 => 2,
        _ => panic!("center label out of range"),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TriSpinElement {
    t: [Scalar; 3],
    s: SpinTriple,
}

impl TriSpinElement {
    pub fn new(t: [Scalar; 3], s: SpinTriple) -> Result<Self, TriSpinError> {
        for (k, c) in t.iter().enumerate() {
            if c.is_zero() {
                return Err(TriSpinError::ZeroScaling { slot: k + 1 });
            }
            c.require_same_mode(&Scalar::one(s.mode()))?;
        }
        Ok(TriSpinElement { t, s })
    }

    pub fn mode(&self) -> ScalarMode {
        self.s.mode()
    }

    /// Scaling coordinate at center label `j`.
    pub fn t(&self, j: usize) -> &Scalar {
        &self.t[j - 1]
    }

    pub fn spin(&self) -> &SpinTriple {
        &self.s
    }

    pub fn is_valid(&self, eps: f64) -> bool {
        self.t.iter().all(|c| !c.is_zero()) && self.s.is_valid(eps)
    }

    /// Triality on classes: scaling slots and spin components rotate
    /// together. Slot `j` of the result carries the old slot of the label
    /// mapping to `j`.
    pub fn theta(&self) -> Self {
        TriSpinElement {
            t: [self.t[1].clone(), self.t[2].clone(), self.t[0].clone()],
            s: self.s.theta(),
        }
    }

    pub fn theta_inv(&self) -> Self {
        TriSpinElement {
            t: [self.t[2].clone(), self.t[0].clone(), self.t[1].clone()],
            s: self.s.theta_inv(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        TriSpinElement {
            t: std::array::from_fn(|k| &self.t[k] * &other.t[k]),
            s: self.s.mul(&other.s),
        }
    }

    /// Multiplies by the identified pair `(iota(e_j), e_j)`; stays in the
    /// same class.
    pub fn central_twist(&self, j: usize) -> Result<Self, TriSpinError> {
        let z = central_element(j, self.mode())?;
        let t = std::array::from_fn(|k| {
            if k + 1 == j {
                self.t[k].clone()
            } else {
                -&self.t[k]
            }
        });
        Ok(TriSpinElement {
            t,
            s: self.s.mul(&z),
        })
    }

    /// Canonical class representative: twist by central elements until
    /// the first entry of `g2` and then of `g1` with nonzero sign key is
    /// positive. The two twist directions act independently on those two
    /// signs, so the representative is unique.
    pub fn canonical_form(&self, eps: f64) -> Self {
        let mut out = self.clone();
        if lead_sign(out.s.rho(2).expect("valid index"), eps) < 0 {
            // label 1 flips g2 and g3 only
            out = out.central_twist(1).expect("valid label");
        }
        if lead_sign(out.s.rho(1).expect("valid index"), eps) < 0 {
            // label 2 flips g1 and g3 only
            out = out.central_twist(2).expect("valid label");
        }
        out
    }

    /// Equality of classes: canonical forms agree componentwise.
    pub fn eq_class(&self, other: &Self, eps: f64) -> bool {
        let a = self.canonical_form(eps);
        let b = other.canonical_form(eps);
        a.s.eq_eps(&b.s, eps) && a.t.iter().zip(b.t.iter()).all(|(x, y)| x.eq_eps(y, eps))
    }
}

fn lead_sign(m: &Mat8, eps: f64) -> i8 {
    for i in 0..8 {
        for j in 0..8 {
            let s = m.at(i, j).sign_key(eps);
            if s != 0 {
                return s;
            }
        }
    }
    0
}

/// Embedding of the label-`j` spin similitude group: slot `j` is `1`,
/// the other two slots carry the scalar.
pub fn trispin_j(j: usize, t: &Scalar, s: &SpinTriple) -> Result<TriSpinElement, TriSpinError> {
    if !(1..=3).contains(&j) {
        return Err(TriSpinError::Spin(SpinError::BadComponentIndex(j)));
    }
    let coords = std::array::from_fn(|k| {
        if k + 1 == j {
            Scalar::one(s.mode())
        } else {
            t.clone()
        }
    });
    TriSpinElement::new(coords, s.clone())
}

/// Projection at center label `j`: the matrix `(t_{e'} / t_{e''}) rho_j(s)`
/// where `e' = theta(e_j)` and `e'' = theta^2(e_j)`. The result is an
/// orthogonal similitude; on classes it is well defined.
pub fn trispin_rho(j: usize, z: &TriSpinElement) -> Result<Mat8, TriSpinError> {
    let e1 = theta_center_label(j);
    let e2 = theta_center_label(e1);
    let ratio = &(z.t(e1).clone()) * &z.t(e2).inv()?;
    Ok(z.spin().rho(j)?.scale(&ratio))
}

/// The similitude extension of `rho_j` on single-scaling pairs: sends the
/// scalar to multiplication by itself, `(t, s) -> t rho_j(s)`.
pub fn gspin_rho_scaled(j: usize, t: &Scalar, s: &SpinTriple) -> Result<Mat8, TriSpinError> {
    Ok(s.rho(j)?.scale(t))
}
