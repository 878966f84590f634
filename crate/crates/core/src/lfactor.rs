//! Local L-factors and their global bookkeeping.
//!
//! The finite-place object is the reciprocal factor `det(1 - c T)` with
//! `T = p^{-s}`: an exact polynomial whose roots are the inverses of the
//! eigenvalue multiset `c`. The module multiplies and compares factors,
//! checks the palindromy forced by inverse-closed multisets, verifies
//! the two factorization identities (the G2 zeta-times-standard identity
//! and the constituent-product identity of isobaric shapes), evaluates
//! archimedean gamma products, predicts epsilon signs from declared
//! self-duality data, and numerically multiplies truncated Euler
//! products with an explicit tail report.

use crate::arthur::{param_satake_at_p, ArthurError, ArthurParam, SelfDualType};
use crate::satake::{g2_test, ArchWeightParam, EigenMultiset, GSpinOddParam, SatakeError};
use crate::scalar::{Scalar, ScalarError};
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum LFactorError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Satake(#[from] SatakeError),
    #[error(transparent)]
    Arthur(#[from] ArthurError),
    #[error("factors at primes {left} and {right} cannot be combined")]
    PrimeMismatch { left: u64, right: u64 },
    #[error("parameter is not of G2 type: the spin multiset does not contain 1")]
    NotG2Type,
    #[error("pole at s = {re} + {im}i")]
    PoleAt { re: f64, im: f64 },
    #[error("constituent {label:?} has no declared self-duality type")]
    MissingSelfdualType { label: String },
    #[error("symplectic constituent {label:?} has no declared epsilon sign")]
    MissingEpsilon { label: String },
    #[error("scalar {value} has no numeric value")]
    NonNumericScalar { value: String },
}

/// Coefficients of `prod_lambda (1 - lambda T)`, lowest degree first.
/// The constant coefficient is always 1.
pub fn det_one_minus_t(eigen: &EigenMultiset) -> Vec<Scalar> {
    let mode = eigen
        .entries()
        .first()
        .map(|e| e.mode())
        .unwrap_or(crate::scalar::ScalarMode::Rational);
    let mut coeffs = vec![Scalar::one(mode)];
    for lambda in eigen.iter() {
        let mut next = Vec::with_capacity(coeffs.len() + 1);
        next.push(coeffs[0].clone());
        for k in 1..=coeffs.len() {
            let carry = &coeffs[k - 1] * lambda;
            if k < coeffs.len() {
                next.push(&coeffs[k] - &carry);
            } else {
                next.push(-&carry);
            }
        }
        coeffs = next;
    }
    coeffs
}

/// The reciprocal local factor at one prime.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalFactor {
    p: u64,
    coeffs: Vec<Scalar>,
}

impl LocalFactor {
    pub fn from_eigen(eigen: &EigenMultiset, p: u64) -> Self {
        LocalFactor {
            p,
            coeffs: det_one_minus_t(eigen),
        }
    }

    pub fn from_coeffs(p: u64, coeffs: Vec<Scalar>) -> Self {
        LocalFactor { p, coeffs }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Product of factors at the same prime (union of eigenvalue
    /// multisets).
    pub fn mul(&self, other: &Self) -> Result<Self, LFactorError> {
        if self.p != other.p {
            return Err(LFactorError::PrimeMismatch {
                left: self.p,
                right: other.p,
            });
        }
        let mode = self.coeffs[0].mode();
        let mut coeffs = vec![Scalar::zero(mode); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Ok(LocalFactor { p: self.p, coeffs })
    }

    pub fn eq_eps(&self, other: &Self, eps: f64) -> bool {
        self.p == other.p && coeffs_eq_eps(&self.coeffs, &other.coeffs, eps)
    }

    /// Checks `c_{N-k} = sign * c_k` for a single sign; inverse-closed
    /// eigenvalue multisets always satisfy it with the sign
    /// `(-1)^N * prod(lambda)`.
    pub fn palindromy_sign(&self, eps: f64) -> Option<i8> {
        let n = self.coeffs.len();
        'sign: for sign in [1i8, -1] {
            for k in 0..n {
                let mirrored = if sign == 1 {
                    self.coeffs[n - 1 - k].clone()
                } else {
                    -&self.coeffs[n - 1 - k]
                };
                if !self.coeffs[k].eq_eps(&mirrored, eps) {
                    continue 'sign;
                }
            }
            return Some(sign);
        }
        None
    }

    /// Value of the polynomial at `T = p^{-s}`.
    pub fn eval(&self, s: Complex64) -> Result<Complex64, LFactorError> {
        let t = Complex64::new(self.p as f64, 0.0).powc(-s);
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            let c = c.as_complex().ok_or_else(|| LFactorError::NonNumericScalar {
                value: c.to_string(),
            })?;
            acc = acc * t + c;
        }
        Ok(acc)
    }
}

fn coeffs_eq_eps(a: &[Scalar], b: &[Scalar], eps: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b.iter()).all(|(x, y)| x.eq_eps(y, eps))
}

/// Exact check of the zeta-times-standard factorization for a G2-type
/// rank-3 parameter: `det(1 - spin T) = (1 - T) det(1 - std T)`.
/// Parameters failing the G2 membership test are rejected.
pub fn g2_euler_identity_check(c: &GSpinOddParam, eps: f64) -> Result<bool, LFactorError> {
    if !g2_test(c, eps)? {
        return Err(LFactorError::NotG2Type);
    }
    let spin = det_one_minus_t(&c.spin_eigen());
    let one = EigenMultiset::new(vec![Scalar::one(c.mode())]);
    let zeta_std = det_one_minus_t(&one.union(&c.std_eigen()));
    Ok(coeffs_eq_eps(&spin, &zeta_std, eps))
}

/// Checks that an independently supplied spin multiset factors as the
/// product of the shape's constituent factors at one prime.
pub fn constituent_product_check(
    spin: &EigenMultiset,
    shape: &ArthurParam,
    prime: u64,
    q: &Scalar,
    eps: f64,
) -> Result<bool, LFactorError> {
    let lhs = LocalFactor::from_eigen(spin, prime);
    let mut rhs = LocalFactor::from_coeffs(prime, vec![Scalar::one(q.mode())]);
    for s in shape.summands() {
        let single = ArthurParam::new(vec![s.clone()]);
        let eval = param_satake_at_p(&single, prime, q)?;
        rhs = rhs.mul(&LocalFactor::from_eigen(&eval, prime))?;
    }
    Ok(lhs.eq_eps(&rhs, eps))
}

/// The doubled gamma function `2 (2 pi)^{-s} Gamma(s)`, with poles at
/// the nonpositive integers.
pub fn gamma_c(s: Complex64, eps: f64) -> Result<Complex64, LFactorError> {
    if is_nonpositive_integer(s, eps) {
        return Err(LFactorError::PoleAt { re: s.re, im: s.im });
    }
    let two_pi = Complex64::new(2.0 * PI, 0.0);
    Ok(2.0 * two_pi.powc(-s) * complex_gamma(s))
}

fn is_nonpositive_integer(s: Complex64, eps: f64) -> bool {
    let tol = eps.max(f64::EPSILON);
    s.im.abs() <= tol && s.re <= tol && (s.re - s.re.round()).abs() <= tol
}

/// Lanczos approximation (g = 7, 9 terms), with the reflection formula
/// for the left half-plane; accurate to roughly 1e-13 relative error.
fn complex_gamma(z: Complex64) -> Complex64 {
    const G: f64 = 7.0;
    const COEFFS: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_59,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if z.re < 0.5 {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        let pi = Complex64::new(PI, 0.0);
        return pi / ((pi * z).sin() * complex_gamma(Complex64::new(1.0, 0.0) - z));
    }
    let z = z - Complex64::new(1.0, 0.0);
    let mut x = Complex64::new(COEFFS[0], 0.0);
    for (i, &c) in COEFFS.iter().enumerate().skip(1) {
        x += Complex64::new(c, 0.0) / (z + Complex64::new(i as f64, 0.0));
    }
    let t = z + Complex64::new(G + 0.5, 0.0);
    let sqrt_two_pi = (2.0 * PI).sqrt();
    sqrt_two_pi * t.powc(z + Complex64::new(0.5, 0.0)) * (-t).exp() * x
}

/// The archimedean factor of a spin L-function: the product of doubled
/// gamma functions at the four weight shifts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaProduct {
    shifts: Vec<i64>,
}

impl GammaProduct {
    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }
}

pub fn gamma_factor(wp: &ArchWeightParam) -> GammaProduct {
    GammaProduct {
        shifts: wp.w().to_vec(),
    }
}

pub fn gamma_eval(gp: &GammaProduct, s: Complex64, eps: f64) -> Result<Complex64, LFactorError> {
    let mut out = Complex64::new(1.0, 0.0);
    for &w in &gp.shifts {
        out *= gamma_c(s + Complex64::new(w as f64, 0.0), eps)?;
    }
    Ok(out)
}

/// Default convergence abscissa for a degree-8 family with tempered
/// eigenvalue bounds `|lambda| <= q^{1/2}`.
pub const DEFAULT_ABSCISSA: f64 = 1.5;

#[derive(Clone, Debug, PartialEq)]
pub struct EulerReport {
    pub value: Complex64,
    pub cutoff: u64,
    pub primes_used: usize,
    /// `|1/f_p(p^{-s}) - 1|` at the largest prime that contributed.
    pub tail_estimate: f64,
    pub warning: Option<String>,
}

/// Truncated Euler product `prod_{p <= cutoff} 1 / f_p(p^{-s})` over the
/// primes where the family supplies a factor, multiplied in ascending
/// prime order. Evaluation below the declared abscissa is reported, not
/// refused.
pub fn euler_eval<F>(
    mut family: F,
    s: Complex64,
    cutoff: u64,
    abscissa: f64,
) -> Result<EulerReport, LFactorError>
where
    F: FnMut(u64) -> Option<LocalFactor>,
{
    let mut value = Complex64::new(1.0, 0.0);
    let mut tail_estimate = 0.0;
    let mut primes_used = 0;
    for p in primes_up_to(cutoff) {
        let Some(factor) = family(p) else { continue };
        let det = factor.eval(s)?;
        if det.norm() == 0.0 {
            return Err(LFactorError::PoleAt { re: s.re, im: s.im });
        }
        let term = det.inv();
        value *= term;
        tail_estimate = (term - Complex64::new(1.0, 0.0)).norm();
        primes_used += 1;
    }
    let warning = if s.re < abscissa {
        Some(format!(
            "Re(s) = {} is below the declared convergence abscissa {abscissa}",
            s.re
        ))
    } else {
        None
    };
    Ok(EulerReport {
        value,
        cutoff,
        primes_used,
        tail_estimate,
        warning,
    })
}

/// Sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for p in 2..=n {
        if composite[p] {
            continue;
        }
        out.push(p as u64);
        let mut m = p * p;
        while m <= n {
            composite[m] = true;
            m += p;
        }
    }
    out
}

/// Sign of the functional equation predicted from declared self-duality
/// data: orthogonal constituents contribute `+1`; a symplectic
/// constituent contributes its declared sign raised to the dimension of
/// its SL(2) factor (so a full `S_2` chain squares the sign away). The
/// returned trace records one line per summand.
pub fn epsilon_sign(p: &ArthurParam) -> Result<(i8, Vec<String>), LFactorError> {
    let mut sign = 1i8;
    let mut trace = Vec::new();
    for s in p.summands() {
        match s.pi.selfdual() {
            SelfDualType::Orthogonal => {
                trace.push(format!(
                    "{:?} is orthogonal: contributes +1",
                    s.pi.label()
                ));
            }
            SelfDualType::Symplectic => {
                let e = s.pi.epsilon().ok_or_else(|| LFactorError::MissingEpsilon {
                    label: s.pi.label().to_string(),
                })?;
                let contribution = if s.d % 2 == 0 { 1 } else { e };
                trace.push(format!(
                    "{:?} is symplectic with declared sign {e:+}: contributes {e:+}^{} = {contribution:+}",
                    s.pi.label(),
                    s.d
                ));
                sign *= contribution;
            }
            SelfDualType::NotSelfDual => {
                return Err(LFactorError::MissingSelfdualType {
                    label: s.pi.label().to_string(),
                });
            }
        }
    }
    Ok((sign, trace))
}
