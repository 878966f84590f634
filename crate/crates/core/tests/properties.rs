//! Randomized law checks across module boundaries. Everything here runs
//! in exact rational arithmetic, so "approximately" never appears: a law
//! either holds on the nose or the case is a counterexample.

mod common;

use proptest::array::{uniform3, uniform8};
use proptest::prelude::*;
use trispin::lfactor::LocalFactor;
use trispin::octonion::Octonion;
use trispin::satake::{
    embed_spin_torus, EigenMultiset, EmbedCase, GSpinEvenParam, GSpinOddParam, GSpinParam,
    HalfSpinSign,
};
use trispin::scalar::{Scalar, ScalarMode};

const R: ScalarMode = ScalarMode::Rational;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=6).prop_map(|(num, den)| Scalar::from_ratio(num, den, R))
}

fn nonzero_scalar() -> impl Strategy<Value = Scalar> {
    (prop_oneof![-9i64..=-1, 1i64..=9], 1i64..=6)
        .prop_map(|(num, den)| Scalar::from_ratio(num, den, R))
}

fn octonion() -> impl Strategy<Value = Octonion> {
    uniform8(scalar()).prop_map(|coords| Octonion::from_vec(&coords))
}

fn odd3() -> impl Strategy<Value = GSpinOddParam> {
    (uniform3(nonzero_scalar()), nonzero_scalar())
        .prop_map(|(chi, mu)| GSpinOddParam::new(chi.to_vec(), mu).unwrap())
}

fn even_param(n: usize) -> impl Strategy<Value = GSpinEvenParam> {
    (proptest::collection::vec(nonzero_scalar(), n), nonzero_scalar())
        .prop_map(|(chi, mu)| GSpinEvenParam::new(chi, mu).unwrap())
}

fn multiset(max_len: usize) -> impl Strategy<Value = EigenMultiset> {
    proptest::collection::vec(nonzero_scalar(), 1..=max_len).prop_map(EigenMultiset::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn norm_is_multiplicative(x in octonion(), y in octonion()) {
        let xy = x.mul(&y).unwrap();
        prop_assert_eq!(xy.norm(), &x.norm() * &y.norm());
        let para = x.para_mul(&y).unwrap();
        prop_assert_eq!(para.norm(), &x.norm() * &y.norm());
    }

    #[test]
    fn bilinear_form_is_associative_for_the_para_product(
        x in octonion(),
        y in octonion(),
        z in octonion(),
    ) {
        let left = x.para_mul(&y).unwrap().bilinear(&z);
        let right = x.bilinear(&y.para_mul(&z).unwrap());
        prop_assert_eq!(left, right);
    }

    #[test]
    fn conjugation_reverses_products(x in octonion(), y in octonion()) {
        let lhs = x.mul(&y).unwrap().conj();
        let rhs = y.conj().mul(&x.conj()).unwrap();
        prop_assert!(lhs.eq_eps(&rhs, 0.0));
        prop_assert_eq!(x.conj().norm(), x.norm());
    }

    #[test]
    fn weyl_moves_fix_odd_multisets(c in odd3(), i in 0usize..3, swap in 0usize..3) {
        let mut perm = [0usize, 1, 2];
        perm.swap(i, swap);
        let moved = c.weyl_permuted(&perm).unwrap();
        prop_assert_eq!(moved.std_eigen(), c.std_eigen());
        prop_assert_eq!(moved.spin_eigen(), c.spin_eigen());
        let inverted = c.weyl_inverted(i).unwrap();
        prop_assert_eq!(inverted.std_eigen(), c.std_eigen());
        prop_assert_eq!(inverted.spin_eigen(), c.spin_eigen());
        prop_assert_eq!(inverted.central_char(), c.central_char());
    }

    #[test]
    fn even_weyl_pair_inversion_fixes_halfspins(
        c in even_param(3),
        i in 0usize..3,
        j in 0usize..3,
    ) {
        prop_assume!(i != j);
        let moved = c.weyl_pair_inverted(i, j).unwrap();
        prop_assert_eq!(moved.std_eigen(), c.std_eigen());
        prop_assert_eq!(
            moved.halfspin_eigen(HalfSpinSign::Plus),
            c.halfspin_eigen(HalfSpinSign::Plus)
        );
        prop_assert_eq!(
            moved.halfspin_eigen(HalfSpinSign::Minus),
            c.halfspin_eigen(HalfSpinSign::Minus)
        );
    }

    #[test]
    fn odd_odd_embedding_branches(a in odd3(), b in odd3()) {
        let embedded = embed_spin_torus(
            EmbedCase::OddOdd,
            &GSpinParam::Odd(a.clone()),
            &GSpinParam::Odd(b.clone()),
        ).unwrap();
        let GSpinParam::Even(target) = embedded else { panic!("odd+odd lands even") };
        let spin_product = a.spin_eigen().tensor(&b.spin_eigen());
        prop_assert_eq!(target.halfspin_eigen(HalfSpinSign::Plus), spin_product.clone());
        prop_assert_eq!(target.halfspin_eigen(HalfSpinSign::Minus), spin_product);
        prop_assert_eq!(
            target.std_eigen(),
            a.std_eigen().union(&b.std_eigen())
        );
    }

    #[test]
    fn local_factor_is_multiplicative(a in multiset(4), b in multiset(4), p in 2u64..100) {
        let fa = LocalFactor::from_eigen(&a, p);
        let fb = LocalFactor::from_eigen(&b, p);
        prop_assert_eq!(
            fa.mul(&fb).unwrap(),
            LocalFactor::from_eigen(&a.union(&b), p)
        );
    }

    #[test]
    fn inverse_closed_multisets_give_palindromic_factors(pairs in uniform3(nonzero_scalar())) {
        // {x, 1/x} pairs: inverse-closed of even degree with product 1
        let mut entries = Vec::new();
        for x in pairs.iter() {
            entries.push(x.clone());
            entries.push(x.inv().unwrap());
        }
        let f = LocalFactor::from_eigen(&EigenMultiset::new(entries), 2);
        prop_assert_eq!(f.palindromy_sign(0.0), Some(1));
    }

    #[test]
    fn central_twists_do_not_move_the_class(seed in 0u64..256, j in 1usize..=3) {
        let mut rng = common::rng(seed);
        let z = common::trispin(&mut rng);
        let twisted = z.central_twist(j).unwrap();
        prop_assert!(z.eq_class(&twisted, 0.0));
        prop_assert_eq!(
            trispin::trispin::trispin_rho(j, &twisted).unwrap(),
            trispin::trispin::trispin_rho(j, &z).unwrap()
        );
    }
}
