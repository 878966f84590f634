//! Pluggable exact scalars.
//!
//! Every algebraic object in this crate is generic over a scalar "mode":
//!
//! * [`ScalarMode::Rational`] — exact arithmetic in Q,
//! * [`ScalarMode::QHalf`] — exact arithmetic in the rational-function
//!   field Q(u), where `u` plays the role of q^(1/2) for a residue
//!   cardinality q (so `q = u^2` and half-integral powers of q are exact),
//! * [`ScalarMode::Complex`] — double-precision complex numbers compared
//!   with a relative tolerance.
//!
//! Mixing modes in one computation is an error, reported at the API
//! boundary of each operation. No square roots are ever taken implicitly:
//! operations that would need one either find an exact root in the scalar
//! field or fail.

mod parse;
mod poly;
mod ratfun;

pub use parse::parse_ratfun;
pub use poly::{rational_sqrt, RatPoly};
pub use ratfun::RatFun;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Default relative tolerance for complex-mode comparisons.
pub const DEFAULT_EPS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScalarMode {
    Rational,
    QHalf,
    Complex,
}

impl fmt::Display for ScalarMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ScalarMode::Rational => "rational",
            ScalarMode::QHalf => "qhalf",
            ScalarMode::Complex => "complex",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum ScalarError {
    #[error("scalar mode mismatch: {left} vs {right}")]
    ModeMismatch { left: ScalarMode, right: ScalarMode },
    #[error("division by zero scalar")]
    DivisionByZero,
    #[error("no exact square root of {value} in {mode} mode")]
    NoExactSqrt { value: String, mode: ScalarMode },
    #[error("half-integral power of q is not expressible in rational mode; use qhalf or complex mode")]
    HalfIntegralPower,
    #[error("parse error at byte {pos} in {input:?}: {msg}")]
    Parse { input: String, pos: usize, msg: String },
    #[error("variable u is not allowed in rational mode")]
    VariableInRationalMode,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Rat(BigRational),
    QHalf(RatFun),
    Cpx(Complex64),
}

impl Scalar {
    pub fn mode(&self) -> ScalarMode {
        match self {
            Scalar::Rat(_) => ScalarMode::Rational,
            Scalar::QHalf(_) => ScalarMode::QHalf,
            Scalar::Cpx(_) => ScalarMode::Complex,
        }
    }

    pub fn zero(mode: ScalarMode) -> Self {
        Scalar::from_i64(0, mode)
    }

    pub fn one(mode: ScalarMode) -> Self {
        Scalar::from_i64(1, mode)
    }

    pub fn from_i64(n: i64, mode: ScalarMode) -> Self {
        match mode {
            ScalarMode::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            ScalarMode::QHalf => Scalar::QHalf(RatFun::constant(BigRational::from_integer(
                BigInt::from(n),
            ))),
            ScalarMode::Complex => Scalar::Cpx(Complex64::new(n as f64, 0.0)),
        }
    }

    pub fn from_ratio(num: i64, den: i64, mode: ScalarMode) -> Self {
        assert!(den != 0, "zero denominator");
        match mode {
            ScalarMode::Rational => {
                Scalar::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
            }
            ScalarMode::QHalf => Scalar::QHalf(RatFun::constant(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
            ScalarMode::Complex => Scalar::Cpx(Complex64::new(num as f64 / den as f64, 0.0)),
        }
    }

    /// The formal half-power of q; only the qhalf mode has one.
    pub fn u() -> Self {
        Scalar::QHalf(RatFun::u())
    }

    /// The residue cardinality `q = u^2` of the qhalf mode.
    pub fn q_symbolic() -> Self {
        Scalar::QHalf(RatFun::u().mul(&RatFun::u()))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::QHalf(f) => f.is_zero(),
            Scalar::Cpx(z) => z.re == 0.0 && z.im == 0.0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::QHalf(f) => f.is_one(),
            Scalar::Cpx(z) => z.re == 1.0 && z.im == 0.0,
        }
    }

    /// Mode-aware equality: exact in the exact modes, relative tolerance
    /// `|a-b| <= eps * max(1, |a|, |b|)` in complex mode.
    pub fn eq_eps(&self, other: &Self, eps: f64) -> bool {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a == b,
            (Scalar::QHalf(a), Scalar::QHalf(b)) => a == b,
            (Scalar::Cpx(a), Scalar::Cpx(b)) => {
                let scale = 1f64.max(a.norm()).max(b.norm());
                (a - b).norm() <= eps * scale
            }
            _ => false,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ScalarError> {
        self.require_same_mode(other)?;
        Ok(self + other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.require_same_mode(other)?;
        Ok(self * other)
    }

    pub fn require_same_mode(&self, other: &Self) -> Result<(), ScalarError> {
        if self.mode() == other.mode() {
            Ok(())
        } else {
            Err(ScalarError::ModeMismatch {
                left: self.mode(),
                right: other.mode(),
            })
        }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        match self {
            Scalar::Rat(r) => {
                if r.is_zero() {
                    Err(ScalarError::DivisionByZero)
                } else {
                    Ok(Scalar::Rat(BigRational::one() / r))
                }
            }
            Scalar::QHalf(f) => f
                .inv()
                .map(Scalar::QHalf)
                .ok_or(ScalarError::DivisionByZero),
            Scalar::Cpx(z) => {
                if self.is_zero() {
                    Err(ScalarError::DivisionByZero)
                } else {
                    Ok(Scalar::Cpx(z.inv()))
                }
            }
        }
    }

    pub fn pow(&self, k: i64) -> Result<Self, ScalarError> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        match self {
            Scalar::Rat(r) => {
                let mut out = BigRational::one();
                let mut base = r.clone();
                let mut k = k as u64;
                while k > 0 {
                    if k & 1 == 1 {
                        out *= &base;
                    }
                    base = &base * &base;
                    k >>= 1;
                }
                Ok(Scalar::Rat(out))
            }
            Scalar::QHalf(f) => Ok(Scalar::QHalf(f.pow(k).expect("nonnegative power"))),
            Scalar::Cpx(z) => Ok(Scalar::Cpx(z.powi(k as i32))),
        }
    }

    /// `self^{k/2}`: even `k` never needs a root, odd `k` requires an
    /// exact square root of `self` and reports `HalfIntegralPower` when
    /// the mode has none (the rational mode with a non-square base).
    pub fn pow_half(&self, k: i64) -> Result<Self, ScalarError> {
        if k % 2 == 0 {
            self.pow(k / 2)
        } else {
            let root = self.sqrt().map_err(|e| match e {
                ScalarError::NoExactSqrt { .. } => ScalarError::HalfIntegralPower,
                other => other,
            })?;
            root.pow(k)
        }
    }

    /// Exact square root in the scalar field. Complex mode returns the
    /// principal root; exact modes fail unless the value is a perfect
    /// square.
    pub fn sqrt(&self) -> Result<Self, ScalarError> {
        let fail = || ScalarError::NoExactSqrt {
            value: self.to_string(),
            mode: self.mode(),
        };
        match self {
            Scalar::Rat(r) => rational_sqrt(r).map(Scalar::Rat).ok_or_else(fail),
            Scalar::QHalf(f) => f.sqrt().map(Scalar::QHalf).ok_or_else(fail),
            Scalar::Cpx(z) => Ok(Scalar::Cpx(z.sqrt())),
        }
    }

    /// Deterministic sign used for canonical representatives: the sign of
    /// a rational, of the leading numerator coefficient of a rational
    /// function, or of the real part (imaginary as tie-break) of a complex
    /// number.
    pub fn sign_key(&self, eps: f64) -> i8 {
        match self {
            Scalar::Rat(r) => {
                if r.is_zero() {
                    0
                } else if r.is_positive() {
                    1
                } else {
                    -1
                }
            }
            Scalar::QHalf(f) => f.sign(),
            Scalar::Cpx(z) => {
                if z.re.abs() > eps {
                    if z.re > 0.0 {
                        1
                    } else {
                        -1
                    }
                } else if z.im.abs() > eps {
                    if z.im > 0.0 {
                        1
                    } else {
                        -1
                    }
                } else {
                    0
                }
            }
        }
    }

    /// Total order within a mode, used for deterministic sorting of
    /// eigenvalue multisets. Across modes, orders by mode tag.
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        fn tag(s: &Scalar) -> u8 {
            match s {
                Scalar::Rat(_) => 0,
                Scalar::QHalf(_) => 1,
                Scalar::Cpx(_) => 2,
            }
        }
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a.cmp(b),
            (Scalar::QHalf(a), Scalar::QHalf(b)) => a.cmp_canonical(b),
            (Scalar::Cpx(a), Scalar::Cpx(b)) => a
                .re
                .total_cmp(&b.re)
                .then_with(|| a.im.total_cmp(&b.im)),
            _ => tag(self).cmp(&tag(other)),
        }
    }

    pub fn as_complex(&self) -> Option<Complex64> {
        match self {
            Scalar::Cpx(z) => Some(*z),
            Scalar::Rat(r) => {
                let num = r.numer().to_f64()?;
                let den = r.denom().to_f64()?;
                Some(Complex64::new(num / den, 0.0))
            }
            Scalar::QHalf(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            _ => None,
        }
    }

    /// Parses the string form of an exact scalar. Rational mode accepts
    /// any constant expression (`-3/4`, `(2+1)/6`); qhalf mode accepts
    /// rational functions in `u`.
    pub fn parse(input: &str, mode: ScalarMode) -> Result<Self, ScalarError> {
        match mode {
            ScalarMode::Rational => {
                let f = parse_ratfun(input)?;
                match f.as_constant() {
                    Some(c) => Ok(Scalar::Rat(c)),
                    None => Err(ScalarError::VariableInRationalMode),
                }
            }
            ScalarMode::QHalf => Ok(Scalar::QHalf(parse_ratfun(input)?)),
            ScalarMode::Complex => Err(ScalarError::Parse {
                input: input.to_string(),
                pos: 0,
                msg: "complex scalars are written as [re, im], not strings".to_string(),
            }),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => f.write_str(&parse::format_rational(r)),
            Scalar::QHalf(rf) => f.write_str(&parse::format_ratfun(rf)),
            Scalar::Cpx(z) => {
                if z.im == 0.0 {
                    write!(f, "{}", z.re)
                } else {
                    write!(f, "{}{:+}i", z.re, z.im)
                }
            }
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $ratop:tt, $funmethod:ident) => {
        impl std::ops::$trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a $ratop b),
                    (Scalar::QHalf(a), Scalar::QHalf(b)) => Scalar::QHalf(a.$funmethod(b)),
                    (Scalar::Cpx(a), Scalar::Cpx(b)) => Scalar::Cpx(a $ratop b),
                    (a, b) => panic!(
                        "scalar mode mismatch in arithmetic: {} vs {}",
                        a.mode(),
                        b.mode()
                    ),
                }
            }
        }
        impl std::ops::$trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
    };
}

scalar_binop!(Add, add, +, add);
scalar_binop!(Sub, sub, -, sub);
scalar_binop!(Mul, mul, *, mul);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a.clone()),
            Scalar::QHalf(a) => Scalar::QHalf(a.neg()),
            Scalar::Cpx(a) => Scalar::Cpx(-a),
        }
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
