//! Laurent polynomial arithmetic against a naive dense-map oracle.

use std::collections::BTreeMap;

use proptest::prelude::*;
use youngwall::qlaurent::LaurentError;
use youngwall::{quantum_binomial, quantum_factorial, quantum_int, Poly, SmallPoly};

fn arb_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((-6i64..=6, -5i64..=5), 0..6).prop_map(|t| Poly::from_i64_terms(&t))
}

/// Naive exponent -> coefficient map, zero entries removed.
fn dense(p: &Poly) -> BTreeMap<i64, i128> {
    let mut m = BTreeMap::new();
    for (e, c) in p.terms() {
        m.insert(*e, i128::try_from(c.clone()).unwrap());
    }
    m
}

fn naive_mul(a: &BTreeMap<i64, i128>, b: &BTreeMap<i64, i128>) -> BTreeMap<i64, i128> {
    let mut m: BTreeMap<i64, i128> = BTreeMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *m.entry(ea + eb).or_default() += ca * cb;
        }
    }
    m.retain(|_, c| *c != 0);
    m
}

fn naive_add(a: &BTreeMap<i64, i128>, b: &BTreeMap<i64, i128>, sign: i128) -> BTreeMap<i64, i128> {
    let mut m = a.clone();
    for (e, c) in b {
        *m.entry(*e).or_default() += sign * c;
    }
    m.retain(|_, c| *c != 0);
    m
}

proptest! {
    #[test]
    fn arithmetic_matches_dense_oracle(a in arb_poly(), b in arb_poly()) {
        prop_assert_eq!(dense(&(&a * &b)), naive_mul(&dense(&a), &dense(&b)));
        prop_assert_eq!(dense(&(&a + &b)), naive_add(&dense(&a), &dense(&b), 1));
        prop_assert_eq!(dense(&(&a - &b)), naive_add(&dense(&a), &dense(&b), -1));
    }

    #[test]
    fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &Poly::zero(), a.clone());
        prop_assert_eq!(&a * &Poly::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn normalized_storage(a in arb_poly(), b in arb_poly()) {
        let p = &a * &b;
        prop_assert!(p.terms().iter().all(|(_, c)| *c != 0.into()));
        prop_assert!(p.terms().windows(2).all(|w| w[0].0 < w[1].0));
    }

    #[test]
    fn bar_is_a_ring_involution(a in arb_poly(), b in arb_poly()) {
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
    }

    #[test]
    fn exact_division_inverts_multiplication(a in arb_poly(), b in arb_poly()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn gamma_symmetrization(a in arb_poly()) {
        let g = a.gamma_symmetrize();
        prop_assert!(g.is_bar_invariant());
        prop_assert!((&a - &g).in_q_zq());
    }

    #[test]
    fn text_and_json_round_trip(a in arb_poly()) {
        prop_assert_eq!(a.to_string().parse::<Poly>().unwrap(), a.clone());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Poly>(&json).unwrap(), a);
    }

    #[test]
    fn small_and_big_coefficients_agree(t in prop::collection::vec((-6i64..=6, -5i64..=5), 0..6),
                                        u in prop::collection::vec((-6i64..=6, -5i64..=5), 0..6)) {
        let small = &SmallPoly::from_i64_terms(&t) * &SmallPoly::from_i64_terms(&u);
        let big = &Poly::from_i64_terms(&t) * &Poly::from_i64_terms(&u);
        prop_assert_eq!(small.to_string(), big.to_string());
    }

    #[test]
    fn q_pascal_rule(m in 1i64..9, s in 1i64..4, k in 1i64..8) {
        prop_assume!(k < m);
        // [m, k] = q_i^{-k} [m-1, k] + q_i^{m-k} [m-1, k-1]
        let lhs: Poly = quantum_binomial(m, k, s).unwrap();
        let a: Poly = quantum_binomial(m - 1, k - 1, s).unwrap();
        let b: Poly = quantum_binomial(m - 1, k, s).unwrap();
        prop_assert_eq!(lhs, &b.shift(-s * k) + &a.shift(s * (m - k)));
    }
}

#[test]
fn trivial_examples() {
    let q = Poly::q();
    let one = Poly::one();
    assert_eq!(&(&q + &one) * &(&q - &one), "q^2 - 1".parse::<Poly>().unwrap());
    assert_eq!(&Poly::q_pow(-1) * &q, one);
    assert_eq!(Poly::q_pow(3).bar(), Poly::q_pow(-3));
}

#[test]
fn quantum_integers() {
    // [n]_s = q^{s(n-1)} + q^{s(n-3)} + ... + q^{-s(n-1)}, checked via (q^s - q^-s)[n]_s = q^{sn} - q^{-sn}.
    for s in 1..4 {
        for n in 0..8 {
            let qn: Poly = quantum_int(n, s).unwrap();
            let lhs = &(&Poly::q_pow(s) - &Poly::q_pow(-s)) * &qn;
            assert_eq!(lhs, &Poly::q_pow(s * n) - &Poly::q_pow(-s * n));
        }
    }
    assert_eq!(quantum_int::<num_bigint::BigInt>(3, 1).unwrap(), "q^-2 + 1 + q^2".parse().unwrap());
    let f3: Poly = quantum_factorial(3, 1).unwrap();
    assert_eq!(f3, "q^-3 + 2*q^-1 + 2*q + q^3".parse().unwrap());
    assert!(matches!(quantum_int::<num_bigint::BigInt>(-1, 1), Err(LaurentError::OutOfRange(_))));
}

#[test]
fn non_divisible_quotient_is_reported() {
    let a: Poly = "1 + q".parse().unwrap();
    let b: Poly = "1 + q^2".parse().unwrap();
    assert!(matches!(a.exact_div(&b), Err(LaurentError::NotDivisible { .. })));
    assert!(matches!(a.exact_div(&Poly::zero()), Err(LaurentError::DivisionByZero)));
}
