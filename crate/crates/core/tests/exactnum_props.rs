use negq::exactnum::{cyclotomic, eval_at_primitive_root, reduce_mod_cyclotomic};
use negq::LaurentPoly;
use num_bigint::BigInt;
use proptest::prelude::*;

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-8i64..12, -20i64..20), 0..8).prop_map(LaurentPoly::from_terms)
}

fn nonzero_laurent() -> impl Strategy<Value = LaurentPoly> {
    laurent().prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #[test]
    fn product_divides_back(a in laurent(), b in nonzero_laurent()) {
        let prod = &a * &b;
        prop_assert_eq!(prod.div_exact(&b).unwrap(), a);
    }

    #[test]
    fn ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in laurent(), b in laurent(), x in prop::sample::select(vec![-1i64, 1])) {
        let lhs = (&a * &b).eval_i64(x).unwrap();
        prop_assert_eq!(lhs, a.eval_i64(x).unwrap() * b.eval_i64(x).unwrap());
    }

    #[test]
    fn substitution_commutes_with_products(a in laurent(), b in laurent(), m in -3i64..4) {
        prop_assert_eq!((&a * &b).substitute_power(m), &a.substitute_power(m) * &b.substitute_power(m));
    }

    #[test]
    fn cyclotomic_multiples_vanish(a in laurent(), order in 1u64..25) {
        let phi = cyclotomic(order).poly;
        let p = &a * &phi;
        prop_assert!(reduce_mod_cyclotomic(&p, order).is_zero());
        prop_assert_eq!(eval_at_primitive_root(&p, order).unwrap(), BigInt::from(0));
    }

    #[test]
    fn reduction_preserves_residue(a in laurent(), order in 1u64..25) {
        let r = reduce_mod_cyclotomic(&a, order);
        let diff = &a - &r;
        prop_assert!(reduce_mod_cyclotomic(&diff, order).is_zero());
        if let Some(d) = r.max_degree() {
            prop_assert!((d as u64) < cyclotomic(order).degree());
            prop_assert!(r.min_degree().unwrap() >= 0);
        }
    }

    #[test]
    fn json_round_trip(a in laurent()) {
        let s = serde_json::to_string(&a).unwrap();
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn reflect_is_an_involution(a in laurent(), d in -10i64..10) {
        prop_assert_eq!(a.reflect(d).reflect(d), a);
    }
}

#[test]
fn cyclotomic_products_give_x_n_minus_one() {
    for n in 1..=30u64 {
        let factors: Vec<LaurentPoly> = (1..=n).filter(|d| n % d == 0).map(|d| cyclotomic(d).poly).collect();
        assert_eq!(LaurentPoly::product(&factors), -LaurentPoly::one_minus_x_pow(n as i64), "n = {n}");
    }
}

#[test]
fn cyclotomic_values_at_one() {
    // Φ_n(1) is p for prime powers n = p^a and 1 otherwise (n > 1)
    let expect = |n: u64| -> i64 {
        if let Some(p) = (2..=n).find(|p| n.is_multiple_of(*p)) {
            let mut r = n;
            while r.is_multiple_of(p) {
                r /= p;
            }
            if r == 1 {
                p as i64
            } else {
                1
            }
        } else {
            0
        }
    };
    for n in 2..=40 {
        assert_eq!(cyclotomic(n).poly.value_at_one(), BigInt::from(expect(n)), "n = {n}");
    }
}
