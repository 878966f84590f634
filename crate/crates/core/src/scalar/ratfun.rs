//! Rational functions in one variable `u` over exact rationals.
//!
//! Canonical form: numerator and denominator coprime, denominator monic and
//! nonzero. Equality of canonical forms is therefore structural equality.

use super::poly::RatPoly;
use num_rational::BigRational;
use num_traits::One;
use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFun {
    num: RatPoly,
    den: RatPoly,
}

impl RatFun {
    /// Builds `num/den` in canonical form; panics when `den` is zero.
    pub fn new(num: RatPoly, den: RatPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFun {
                num: RatPoly::zero(),
                den: RatPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (mut num, _) = num.div_rem(&g);
        let (mut den, _) = den.div_rem(&g);
        let lead = den.leading().expect("nonzero denominator").clone();
        if !lead.is_one() {
            let inv = BigRational::one() / lead;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFun { num, den }
    }

    pub fn from_poly(p: RatPoly) -> Self {
        RatFun {
            num: p,
            den: RatPoly::one(),
        }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(RatPoly::constant(c))
    }

    pub fn zero() -> Self {
        Self::constant(BigRational::from_integer(0.into()))
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The variable `u`.
    pub fn u() -> Self {
        Self::from_poly(RatPoly::monomial(BigRational::one(), 1))
    }

    pub fn num(&self) -> &RatPoly {
        &self.num
    }

    pub fn den(&self) -> &RatPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        // den is monic, so den == 1 whenever it is constant
        if self.den.degree() == Some(0) {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> Self {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::new(self.den.clone(), self.num.clone()))
        }
    }

    pub fn pow(&self, k: i64) -> Option<Self> {
        if k < 0 {
            return self.inv().map(|i| i.pow_unsigned(k.unsigned_abs()));
        }
        Some(self.pow_unsigned(k as u64))
    }

    fn pow_unsigned(&self, k: u64) -> Self {
        let mut out = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = out.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        out
    }

    /// Exact square root in Q(u), when one exists.
    pub fn sqrt(&self) -> Option<Self> {
        let n = self.num.sqrt()?;
        let d = self.den.sqrt()?;
        Some(Self::new(n, d))
    }

    /// Sign of the leading numerator coefficient (denominator is monic).
    pub fn sign(&self) -> i8 {
        use num_traits::Signed;
        match self.num.leading() {
            None => 0,
            Some(l) if l.is_positive() => 1,
            _ => -1,
        }
    }

    /// Total order on canonical forms, used for deterministic sorting.
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        self.den
            .cmp_canonical(&other.den)
            .then_with(|| self.num.cmp_canonical(&other.num))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn poly(cs: &[i64]) -> RatPoly {
        RatPoly::from_coeffs(cs.iter().map(|&c| rat(c, 1)).collect())
    }

    #[test]
    fn canonical_reduction() {
        // (u^2 - 1)/(u - 1) == u + 1
        let f = RatFun::new(poly(&[-1, 0, 1]), poly(&[-1, 1]));
        assert_eq!(f, RatFun::from_poly(poly(&[1, 1])));
    }

    #[test]
    fn denominator_made_monic() {
        // u / (2u) == 1/2
        let f = RatFun::new(poly(&[0, 1]), poly(&[0, 2]));
        assert_eq!(f.as_constant(), Some(rat(1, 2)));
    }

    #[test]
    fn field_ops() {
        let u = RatFun::u();
        let f = u.mul(&u).sub(&RatFun::one()); // u^2 - 1
        let g = u.add(&RatFun::one()); // u + 1
        let q = f.mul(&g.inv().unwrap());
        assert_eq!(q, u.sub(&RatFun::one()));
        assert_eq!(u.pow(-2).unwrap().mul(&u.pow(2).unwrap()), RatFun::one());
    }

    #[test]
    fn sqrt_detects_squares() {
        let u = RatFun::u();
        assert_eq!(u.pow(4).unwrap().sqrt(), Some(u.pow(2).unwrap()));
        assert_eq!(u.pow(3).unwrap().sqrt(), None);
        assert_eq!(RatFun::constant(rat(9, 4)).sqrt(), Some(RatFun::constant(rat(3, 2))));
    }
}
