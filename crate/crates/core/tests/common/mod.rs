//! Deterministic random generators shared by the integration suites.
//!
//! Everything is driven by a seeded ChaCha stream so failures reproduce
//! exactly; values stay small to keep exact arithmetic fast.

// Not every suite uses every generator.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trispin::octonion::Octonion;
use trispin::satake::GSpinOddParam;
use trispin::scalar::{Scalar, ScalarMode};
use trispin::spin8::{lift_reflection_pair, SpinTriple};
use trispin::trispin::TriSpinElement;

pub const MODE: ScalarMode = ScalarMode::Rational;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rational(rng: &mut ChaCha8Rng) -> Scalar {
    let num = rng.gen_range(-9i64..=9);
    let den = rng.gen_range(1i64..=6);
    Scalar::from_ratio(num, den, MODE)
}

pub fn nonzero_rational(rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let s = rational(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn octonion(rng: &mut ChaCha8Rng) -> Octonion {
    let coords: [Scalar; 8] = std::array::from_fn(|_| rational(rng));
    Octonion::from_vec(&coords)
}

/// A vector with nonvanishing norm, i.e. one that defines a reflection.
pub fn anisotropic(rng: &mut ChaCha8Rng) -> Octonion {
    loop {
        let x = octonion(rng);
        if !x.norm().is_zero() {
            return x;
        }
    }
}

/// A pair `(x, y)` of anisotropic vectors whose norm product is a
/// nonzero rational square, so their reflection pair lifts over Q: the
/// last coordinate of `y` is solved from a prescribed norm `k^2 / N(x)`.
pub fn square_norm_pair(rng: &mut ChaCha8Rng) -> (Octonion, Octonion) {
    let x = anisotropic(rng);
    loop {
        let a = nonzero_rational(rng);
        let v: [Scalar; 3] = std::array::from_fn(|_| rational(rng));
        let w: [Scalar; 3] = std::array::from_fn(|_| rational(rng));
        let k = nonzero_rational(rng);
        let target = &(&k * &k) * &x.norm().inv().expect("anisotropic");
        let dot = v
            .iter()
            .zip(w.iter())
            .fold(Scalar::zero(MODE), |acc, (p, q)| &acc + &(p * q));
        let b = &(&target + &dot) * &a.inv().expect("nonzero");
        let y = Octonion::new(a, v, w, b).expect("coordinates share one mode");
        if !y.norm().is_zero() {
            return (x, y);
        }
    }
}

pub fn triple(rng: &mut ChaCha8Rng) -> SpinTriple {
    let (x, y) = square_norm_pair(rng);
    lift_reflection_pair(&x, &y, 0.0).expect("pair was built to lift")
}

pub fn trispin(rng: &mut ChaCha8Rng) -> TriSpinElement {
    let t: [Scalar; 3] = std::array::from_fn(|_| nonzero_rational(rng));
    TriSpinElement::new(t, triple(rng)).expect("scalings are nonzero")
}

/// An unconstrained rank-n odd parameter.
pub fn odd_param(rng: &mut ChaCha8Rng, n: usize) -> GSpinOddParam {
    let chi = (0..n).map(|_| nonzero_rational(rng)).collect();
    GSpinOddParam::new(chi, nonzero_rational(rng)).expect("entries are nonzero")
}

/// A rank-3 parameter with trivial central character `mu^2 x1 x2 x3 = 1`:
/// the third coordinate is solved from the first two and `mu`.
pub fn constrained_param(rng: &mut ChaCha8Rng) -> GSpinOddParam {
    let x1 = nonzero_rational(rng);
    let x2 = nonzero_rational(rng);
    let mu = nonzero_rational(rng);
    let x3 = (&(&(&mu * &mu) * &x1) * &x2).inv().expect("nonzero product");
    GSpinOddParam::new(vec![x1, x2, x3], mu).expect("entries are nonzero")
}

/// A constrained rank-3 parameter whose spin multiset contains 1:
/// `mu = 1/x1` puts 1 in the spin multiset and `x3 = x1/x2` restores
/// the central-character constraint.
pub fn g2_param(rng: &mut ChaCha8Rng) -> GSpinOddParam {
    let x1 = nonzero_rational(rng);
    let x2 = nonzero_rational(rng);
    let x3 = &x1 * &x2.inv().expect("nonzero");
    let mu = x1.inv().expect("nonzero");
    GSpinOddParam::new(vec![x1, x2, x3], mu).expect("entries are nonzero")
}
