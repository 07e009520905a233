use proptest::prelude::*;

use super::*;
use crate::int::Int;

fn small_poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(((-2i32..3, -2i32..3, -1i32..3), -4i64..5), 0..6).prop_map(|ts| {
        LaurentPoly::from_terms(ts.into_iter().map(|((a, q, t), c)| (Monomial::new(a, q, t), Int::from(c))))
    })
}

fn small_rational() -> impl Strategy<Value = StructuredRational> {
    (small_poly(), 0u32..3, 0u32..3).prop_map(|(p, q, t)| StructuredRational::new(p, q, t))
}

proptest! {
    #[test]
    fn ring_axioms(p in small_poly(), q in small_poly(), r in small_poly()) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p * &LaurentPoly::one(), p.clone());
    }

    #[test]
    fn exact_div_round_trip(p in small_poly(), q in small_poly()) {
        prop_assume!(!q.is_zero());
        prop_assert_eq!((&p * &q).exact_div(&q).unwrap(), p);
    }

    #[test]
    fn level_division_round_trip(p in small_poly(), q in -3i32..3) {
        let m = Monomial::new(1, q, 0);
        let prod = p.mul_one_plus(m);
        prop_assert_eq!(prod.try_div_one_plus(m), Some(p.clone()));
        // A perturbed product is no longer a multiple.
        let off = &prod + &LaurentPoly::one();
        prop_assert_eq!(off.try_div_one_plus(m), None);
    }

    #[test]
    fn monomial_normalize_is_shift_invariant(p in small_poly(), a in -3i32..4, q in -3i32..4, t in -3i32..4) {
        prop_assume!(!p.is_zero());
        let m = Monomial::new(a, q, t);
        prop_assert_eq!(p.shift(m).monomial_normalize().unwrap(), p.monomial_normalize().unwrap());
    }

    #[test]
    fn normalization_is_canonical(x in small_rational(), extra_q in 0u32..3, extra_t in 0u32..3) {
        let mut again = x.clone();
        again.normalize();
        prop_assert_eq!(&again, &x);
        // The same rational function, written over a larger denominator.
        let inflated = StructuredRational::new(
            x.numerator_over(x.qpow() + extra_q, x.tpow() + extra_t),
            x.qpow() + extra_q,
            x.tpow() + extra_t,
        );
        prop_assert_eq!(inflated, x);
    }

    #[test]
    fn rational_field_laws(x in small_rational(), y in small_rational(), z in small_rational()) {
        prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert!(x.sub(&x).is_zero());
    }
}
