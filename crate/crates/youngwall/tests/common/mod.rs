//! Shared helpers for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use serde_json::Value;
use youngwall::{FockVector, Poly, Space, Wall};

pub fn fixture(name: &str) -> Value {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(path).expect("fixture exists")).expect("fixture is JSON")
}

pub fn space_of(entry: &Value) -> Space {
    let tag = entry["alg"].as_str().unwrap().parse().unwrap();
    Space::new(tag, entry["lambda"].as_u64().unwrap() as usize).unwrap()
}

pub fn wall(space: &Space, compact: &str) -> Wall {
    let w = Wall::parse_compact(space.tag(), space.lambda(), compact).unwrap();
    space.ensure_proper(&w).unwrap();
    w
}

pub fn poly(s: &str) -> Poly {
    s.parse().unwrap()
}

/// `[[wall, coeff], ...]` as a map.
pub fn expected_terms(space: &Space, terms: &Value) -> BTreeMap<Wall, Poly> {
    terms
        .as_array()
        .unwrap()
        .iter()
        .map(|t| (wall(space, t[0].as_str().unwrap()), poly(t[1].as_str().unwrap())))
        .collect()
}

pub fn vector_matches(space: &Space, v: &FockVector, terms: &Value) -> bool {
    v.terms == expected_terms(space, terms)
}

/// A proper wall reached by `steps` random single-block additions.
pub fn random_wall<R: rand::Rng>(space: &Space, steps: usize, rng: &mut R) -> Wall {
    let mut y = space.ground();
    for _ in 0..steps {
        let slots: Vec<_> = (0..space.data.size()).flat_map(|i| space.addable_slots(&y, i)).collect();
        let b = slots[rng.gen_range(0..slots.len())];
        y = space.add_block(&y, &b).unwrap();
    }
    y
}
