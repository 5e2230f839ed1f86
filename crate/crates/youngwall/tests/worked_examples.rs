//! Regression tests against the hand-transcribed worked examples in
//! `tests/fixtures/worked_examples.json`.

mod common;

use common::*;
use youngwall::wall::LadderOrder;
use youngwall::FockVector;

#[test]
fn fock_action_examples() {
    for e in fixture("worked_examples.json")["fock_action"].as_array().unwrap() {
        let sp = space_of(e);
        let y = wall(&sp, e["wall"].as_str().unwrap());
        let i = e["color"].as_u64().unwrap() as usize;
        let v = match e["op"].as_str().unwrap() {
            "e" => sp.e_wall(&y, i),
            _ => sp.f_wall(&y, i),
        };
        assert!(vector_matches(&sp, &v, &e["terms"]), "{e}: got {:?}", v.terms);
    }
}

#[test]
fn divided_power_example() {
    for e in fixture("worked_examples.json")["divided_power"].as_array().unwrap() {
        let sp = space_of(e);
        let y = wall(&sp, e["wall"].as_str().unwrap());
        let z = wall(&sp, e["target"].as_str().unwrap());
        let i = e["color"].as_u64().unwrap() as usize;
        let r = e["power"].as_u64().unwrap() as usize;
        let expected = poly(e["coeff"].as_str().unwrap());
        let v = sp.f_divided(&FockVector::from_wall(&sp, &y), i, r).unwrap();
        assert_eq!(v.coeff(&z), expected);
        assert_eq!(sp.q_closed_form(&y, &z, i, r).unwrap(), expected);
        let chains = sp.closed_form_chains(&y, &z, i, r);
        assert_eq!(chains.len(), 1);
        let factors: Vec<_> = chains[0].iter().map(|m| m.factor.clone()).collect();
        let want: Vec<_> = e["step_factors"].as_array().unwrap().iter().map(|s| poly(s.as_str().unwrap())).collect();
        assert_eq!(factors, want);
    }
}

#[test]
fn bar_step_examples() {
    for e in fixture("worked_examples.json")["bar_step"].as_array().unwrap() {
        let sp = space_of(e);
        let y = wall(&sp, e["wall"].as_str().unwrap());
        let (bar, i, r) = sp.bar_step(&y).unwrap();
        assert_eq!(bar, wall(&sp, e["result"].as_str().unwrap()), "{e}");
        assert_eq!(i as u64, e["color"].as_u64().unwrap());
        assert_eq!(r as u64, e["count"].as_u64().unwrap());
        assert!(sp.is_reduced(&bar));
    }
}

#[test]
fn reduced_form_example() {
    for e in fixture("worked_examples.json")["reduced_form"].as_array().unwrap() {
        let sp = space_of(e);
        let y = wall(&sp, e["wall"].as_str().unwrap());
        let want = wall(&sp, e["result"].as_str().unwrap());
        assert_eq!(sp.reduced_form(&y).unwrap(), want);
        assert_eq!(sp.reduced_form_with_order(&y, LadderOrder::TopDown).unwrap(), want);
        assert!(sp.partition_of(&want).dominates(&sp.partition_of(&y)));
    }
}

#[test]
fn a_word_examples() {
    for e in fixture("worked_examples.json")["a_word"].as_array().unwrap() {
        let sp = space_of(e);
        let y = wall(&sp, e["wall"].as_str().unwrap());
        assert_eq!(sp.a_word(&y).unwrap().to_string(), e["word"].as_str().unwrap(), "{e}");
    }
}

#[test]
fn a_vector_examples() {
    for e in fixture("worked_examples.json")["a_vector"].as_array().unwrap() {
        let sp = space_of(e);
        let y = wall(&sp, e["wall"].as_str().unwrap());
        let a = sp.a_vector(&y).unwrap();
        assert!(vector_matches(&sp, &a, &e["terms"]), "{e}: got {:?}", a.terms);
    }
}

#[test]
fn global_basis_examples() {
    for e in fixture("worked_examples.json")["global_basis"].as_array().unwrap() {
        let sp = space_of(e);
        let y = wall(&sp, e["head"].as_str().unwrap());
        let table = sp.llt_weight_basis(&sp.weight(&y)).unwrap();
        let g = table.elements.iter().find(|g| g.head == y).expect("head is reduced");
        assert!(vector_matches(&sp, &g.expansion, &e["terms"]), "{e}: got {:?}", g.expansion.terms);
    }
}
