//! Crystal structure on reduced walls.

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use youngwall::cartan::sample_tags;
use youngwall::{AlgebraTag, Space, Wall};

fn spaces() -> Vec<Space> {
    sample_tags()
        .into_iter()
        .flat_map(|t| t.supported_weights().into_iter().map(move |l| Space::new(t, l).unwrap()))
        .collect()
}

fn random_reduced(sp: &Space, steps: usize, seed: u64) -> Wall {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut y = sp.ground();
    for _ in 0..steps {
        if let Some(z) = sp.kashiwara_f(&y, rng.gen_range(0..sp.data.size())) {
            y = z;
        }
    }
    y
}

/// Partitions of `d` whose consecutive differences (including the last part
/// against 0) are at most `n`, counted by direct recursion over parts.
fn restricted_partitions(d: usize, n: usize) -> usize {
    fn rec(left: usize, prev: usize, n: usize) -> usize {
        if left == 0 {
            return usize::from(prev <= n);
        }
        (1..=prev.min(left)).filter(|&p| prev - p <= n).map(|p| rec(left - p, p, n)).sum()
    }
    (1..=d).map(|first| rec(d - first, first, n)).sum::<usize>() + usize::from(d == 0)
}

#[test]
fn a1_vertex_counts() {
    for n in 1..=3 {
        let tag: AlgebraTag = format!("A1:{n}").parse().unwrap();
        let sp = Space::new(tag, 0).unwrap();
        let g = sp.crystal_graph(9);
        for d in 0..=9 {
            let got = g.vertices.iter().filter(|y| sp.counts(y).iter().sum::<u32>() as usize == d).count();
            assert_eq!(got, restricted_partitions(d, n), "{tag} depth {d}");
        }
    }
}

#[test]
fn graph_reaches_every_reduced_wall() {
    for sp in spaces() {
        let max = 7;
        let g = sp.crystal_graph(max);
        let vertices: BTreeSet<&Wall> = g.vertices.iter().collect();
        let reduced: BTreeSet<Wall> = (0..=max)
            .flat_map(|d| sp.enumerate_by_size(d))
            .filter(|y| sp.is_reduced(y))
            .collect();
        assert_eq!(vertices, reduced.iter().collect(), "{} L{}", sp.tag(), sp.lambda());
        for &(a, i, b) in &g.edges {
            assert_eq!(sp.kashiwara_f(&g.vertices[a], i).as_ref(), Some(&g.vertices[b]));
        }
        assert!(g.vertices[g.root].is_ground());
    }
}

#[test]
fn graph_output_is_deterministic() {
    let sp = Space::new("B1:3".parse().unwrap(), 0).unwrap();
    let a = sp.crystal_graph(8);
    let b = sp.crystal_graph(8);
    assert_eq!(a.to_dot(), b.to_dot());
    assert_eq!(a.to_json(), b.to_json());
}

#[test]
fn highest_weight_vectors_of_small_depth() {
    for sp in spaces() {
        assert!(sp.is_highest_weight(&sp.ground()));
        assert_eq!(sp.maximal_vector_count(0), 1);
        assert_eq!(sp.maximal_vector_count(1), 1);
    }
}

proptest! {
    #[test]
    fn axioms_on_random_reduced_walls(idx in 0usize..64, steps in 0usize..20, seed in any::<u64>()) {
        let all = spaces();
        let sp = &all[idx % all.len()];
        let y = random_reduced(sp, steps, seed);
        prop_assert!(sp.is_reduced(&y));
        prop_assert!(sp.check_crystal_axioms(&y).is_ok(), "{:?}", sp.check_crystal_axioms(&y));
        for i in 0..sp.data.size() {
            let sig = sp.signature(&y, i);
            prop_assert_eq!(sig.eps(), sp.eps(&y, i));
            prop_assert_eq!(sig.phi(), sp.phi(&y, i));
            let reduced = sig.reduced_string();
            // Reduced signatures read as a block of '-' followed by '+'.
            prop_assert!(!reduced.contains("+-"));
        }
    }

    #[test]
    fn kashiwara_operators_preserve_reducedness(idx in 0usize..64, steps in 0usize..14, seed in any::<u64>(), i in 0usize..8) {
        let all = spaces();
        let sp = &all[idx % all.len()];
        let y = random_reduced(sp, steps, seed);
        let i = i % sp.data.size();
        if let Some(z) = sp.kashiwara_f(&y, i) {
            prop_assert!(sp.is_reduced(&z));
        }
        if let Some(z) = sp.kashiwara_e(&y, i) {
            prop_assert!(sp.is_reduced(&z));
        }
    }
}
