//! Property-based tests for the algebraic invariants that the engine relies
//! on everywhere: ring axioms for the exact coefficient types, exactness of
//! polynomial division, associativity of the shuffle product, and
//! serialization round-trips.

use proptest::prelude::*;
use shuffle_core::mpoly::{MultiLaurent, VarId};
use shuffle_core::ring::{qbinom, ULaurent, VRatFunc, Q};
use shuffle_core::rootsys::RootSystem;
use shuffle_core::shuffle::{Flavor, ShuffleContext, ShuffleElement};

fn small_q() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Q::new(n.into(), d.into()))
}

fn laurent() -> impl Strategy<Value = ULaurent> {
    prop::collection::vec((small_q(), -4i64..=4), 0..5).prop_map(|terms| {
        terms
            .into_iter()
            .fold(ULaurent::zero(), |acc, (c, e)| &acc + &ULaurent::monomial(c, e))
    })
}

fn rat_func() -> impl Strategy<Value = VRatFunc> {
    (laurent(), laurent()).prop_map(|(n, d)| {
        let num = VRatFunc::from_laurent(n);
        let den = VRatFunc::from_laurent(d);
        match num.div(&den) {
            Ok(q) => q,
            Err(_) => num,
        }
    })
}

fn mpoly() -> impl Strategy<Value = MultiLaurent> {
    prop::collection::vec((small_q(), 0i64..=3, 0i64..=3, -2i64..=2), 0..5).prop_map(|terms| {
        terms.into_iter().fold(MultiLaurent::zero(), |acc, (c, e1, e2, e3)| {
            let m = &(&MultiLaurent::var_pow(VarId::x(1, 1), e1)
                * &MultiLaurent::var_pow(VarId::x(1, 2), e2))
                * &MultiLaurent::var_pow(VarId::x(2, 1), e3);
            &acc + &m.scale(&VRatFunc::from_q(c))
        })
    })
}

/// A small shuffle element: a product of up to two generators of B_2.
fn shuffle_elt(flavor: Flavor) -> impl Strategy<Value = ShuffleElement> {
    prop::collection::vec((1usize..=2, 0i64..=1), 1..=2).prop_map(move |gens| {
        let ctx = ShuffleContext { rs: RootSystem::b(2), flavor };
        let mut acc = ShuffleElement::unit(ctx.clone());
        for (i, r) in gens {
            let g = ShuffleElement::generator(ctx.clone(), i, r).expect("generator");
            acc = acc.shuffle_product(&g).expect("product");
        }
        acc
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
    }

    #[test]
    fn laurent_parse_roundtrip(a in laurent()) {
        let text = a.to_string();
        prop_assert_eq!(ULaurent::parse(&text).unwrap(), a);
    }

    #[test]
    fn rat_func_field_axioms(a in rat_func(), b in rat_func()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !b.is_zero() {
            let q = a.div(&b).unwrap();
            prop_assert_eq!(&q * &b, a);
        }
    }

    #[test]
    fn qbinom_is_laurent_polynomial(l in 0u64..=6, m in 0u64..=6, z in 1i64..=3) {
        if m <= l {
            // Quantum binomials are Laurent polynomials with integer
            // coefficients, never proper rational functions.
            let b = qbinom(l, m, z).unwrap();
            for (_, c) in b.iter() {
                prop_assert!(c.is_integer());
            }
        }
    }

    #[test]
    fn mpoly_exact_division(a in mpoly(), b in mpoly()) {
        if !b.is_zero() {
            let prod = &a * &b;
            let q = prod
                .div_exact_laurent(&b)
                .expect("division is well-defined")
                .expect("constructed multiple divides");
            prop_assert_eq!(q, a);
        }
    }

    #[test]
    fn mpoly_symmetrize_is_symmetric(a in mpoly()) {
        // Symmetrizing over the same-color variables x_{1,1}, x_{1,2} yields
        // a polynomial fixed by the swap.
        let sym = a.symmetrize(&[vec![VarId::x(1, 1), VarId::x(1, 2)]]);
        let mut swap = std::collections::BTreeMap::new();
        swap.insert(VarId::x(1, 1), VarId::x(1, 2));
        swap.insert(VarId::x(1, 2), VarId::x(1, 1));
        prop_assert_eq!(sym.rename(&swap), sym);
    }

    #[test]
    fn shuffle_product_associative(
        a in shuffle_elt(Flavor::Trig),
        b in shuffle_elt(Flavor::Trig),
        c in shuffle_elt(Flavor::Trig),
    ) {
        let left = a.shuffle_product(&b).unwrap().shuffle_product(&c).unwrap();
        let right = a.shuffle_product(&b.shuffle_product(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn shuffle_product_bilinear(a in shuffle_elt(Flavor::Rational), c in rat_func()) {
        let b = ShuffleElement::generator(a.ctx.clone(), 1, 0).unwrap();
        let lhs = a.scale(&c).shuffle_product(&b).unwrap();
        let rhs = a.shuffle_product(&b).unwrap().scale(&c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn shuffle_element_json_roundtrip(a in shuffle_elt(Flavor::Trig)) {
        let text = serde_json::to_string(&a).unwrap();
        let back: ShuffleElement = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(a, back);
    }
}
