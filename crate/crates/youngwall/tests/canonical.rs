//! Global basis: characterization checks independent of the recursion.
//!
//! `G(Y)` is the unique vector that is (a) a combination of the `A(W)` with
//! bar-invariant coefficients and (b) equal to `Y` modulo `qZ[q]`.  The
//! tests re-derive the expansion in the `A`-basis by triangular elimination
//! and check both properties.

use std::cmp::Ordering;

use proptest::prelude::*;
use youngwall::canonical::{AWord, BasisTable, GlobalCache, TieBreak};
use youngwall::{AlgebraTag, FockVector, Space, Weight};

fn sweep_spaces() -> Vec<Space> {
    ["A2even:1", "B1:3", "A1:2", "A2odd:3", "D2:2", "D1:4", "A2even:2"]
        .iter()
        .map(|s| s.parse::<AlgebraTag>().unwrap())
        .flat_map(|t| t.supported_weights().into_iter().map(move |l| Space::new(t, l).unwrap()))
        .collect()
}

/// Express `g` in the basis `{A(W)}` of the table; returns the coefficients
/// or an error if a residual remains.
fn a_basis_expansion(sp: &Space, table: &BasisTable, g: &FockVector) -> Result<Vec<youngwall::Poly>, String> {
    let mut order: Vec<usize> = (0..table.elements.len()).collect();
    order.sort_by(|&a, &b| sp.total_cmp(&table.elements[b].head, &table.elements[a].head));
    let mut residual = g.clone();
    let mut coeffs = vec![youngwall::Poly::zero(); table.elements.len()];
    for idx in order {
        let head = &table.elements[idx].head;
        let c = residual.coeff(head);
        if !c.is_zero() {
            residual = residual.sub(&table.a_vectors[idx].scale(&c));
            coeffs[idx] = c;
        }
    }
    if residual.is_zero() {
        Ok(coeffs)
    } else {
        Err(format!("residual {:?}", residual.terms))
    }
}

fn check_weight(sp: &Space, w: &Weight) {
    let table = sp.llt_weight_basis(w).unwrap();
    assert_eq!(table.elements.len(), sp.enumerate_reduced(w).len());
    for (g, a) in table.elements.iter().zip(&table.a_vectors) {
        let y = &g.head;
        assert_eq!(g.expansion.coeff(y), youngwall::Poly::one());
        for (z, c) in &g.expansion.terms {
            if z != y {
                assert!(c.in_q_zq(), "{} G({y}) at {z} = {c}", sp.tag());
            }
        }
        let coeffs = a_basis_expansion(sp, &table, &g.expansion).unwrap_or_else(|e| panic!("{} G({y}): {e}", sp.tag()));
        for c in coeffs {
            assert!(c.is_bar_invariant(), "{} G({y}) uses non bar-invariant coefficient {c}", sp.tag());
        }
        // A(Y) is the word applied to the vacuum.
        let word = sp.a_word(y).unwrap();
        let direct = sp.apply_word(&word, &FockVector::from_wall(sp, &sp.ground())).unwrap();
        assert!(direct.same_terms(a));
    }
}

#[test]
fn global_basis_is_characterized() {
    for sp in sweep_spaces() {
        let d = if sp.data.size() > 4 { 1 } else { 2 };
        for w in sp.weights_up_to_delta(d) {
            check_weight(&sp, &w);
        }
    }
}

#[test]
fn tie_break_does_not_matter() {
    for sp in sweep_spaces() {
        for w in sp.weights_up_to_delta(2) {
            let a = sp.llt_weight_basis_with(&w, TieBreak::Standard).unwrap();
            let b = sp.llt_weight_basis_with(&w, TieBreak::Reversed).unwrap();
            for g in &a.elements {
                let h = b.elements.iter().find(|h| h.head == g.head).unwrap();
                assert!(g.expansion.same_terms(&h.expansion), "{} G({})", sp.tag(), g.head);
            }
        }
    }
}

#[test]
fn modified_recursion_agrees() {
    for sp in sweep_spaces() {
        let mut cache = GlobalCache::new();
        for w in sp.weights_up_to_delta(2) {
            let table = sp.llt_weight_basis(&w).unwrap();
            for g in &table.elements {
                let m = sp.llt_modified(&g.head, &mut cache).unwrap();
                assert!(m.expansion.same_terms(&g.expansion), "{} G({})", sp.tag(), g.head);
            }
        }
    }
}

#[test]
fn aword_display() {
    assert_eq!(AWord(vec![]).to_string(), "1");
    assert_eq!(AWord(vec![(0, 4), (1, 1)]).to_string(), "f_0^(4) f_1");
    let sp = Space::new("A2even:2".parse().unwrap(), 0).unwrap();
    assert!(sp.a_word(&sp.ground()).unwrap().is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn a_vectors_are_unitriangular(idx in 0usize..64, steps in 0usize..12, seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let all = sweep_spaces();
        let sp = &all[idx % all.len()];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut y = sp.ground();
        for _ in 0..steps {
            if let Some(z) = sp.kashiwara_f(&y, rng.gen_range(0..sp.data.size())) {
                y = z;
            }
        }
        let a = sp.a_vector(&y).unwrap();
        prop_assert!(sp.check_a_vector(&y, &a).is_ok());
        for z in a.terms.keys() {
            if z != &y && sp.is_reduced(z) {
                prop_assert_eq!(sp.total_cmp(z, &y), Ordering::Less);
            }
        }
    }
}
