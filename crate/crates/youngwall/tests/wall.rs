//! Wall value type: codecs, properness against a brute-force enumeration,
//! reducedness, reduced forms and the bar-reduction step.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use youngwall::cartan::sample_tags;
use youngwall::wall::{LadderOrder, WallPartition};
use youngwall::{Column, Family, Space, TopState, Wall};

fn spaces() -> Vec<Space> {
    sample_tags()
        .into_iter()
        .flat_map(|t| t.supported_weights().into_iter().map(move |l| Space::new(t, l).unwrap()))
        .collect()
}

fn space_and_wall(idx: usize, steps: usize, seed: u64) -> (Space, Wall) {
    let all = spaces();
    let sp = all[idx % all.len()].clone();
    let y = sp.random_wall(steps, &mut ChaCha8Rng::seed_from_u64(seed));
    (sp, y)
}

/// Properness read directly off the wall rules: block counts weakly
/// decrease to the left, no two full columns (flat top, at least one added
/// block) share a height unless the family is `A_n^(1)`, and two lone
/// half-thickness tops at the same height must be the same half.
fn oracle_proper(sp: &Space, cols: &[Column]) -> bool {
    let counts: Vec<u32> = cols.iter().map(|c| sp.count(*c)).collect();
    if counts.windows(2).any(|w| w[1] > w[0]) {
        return false;
    }
    for a in 0..cols.len() {
        for b in a + 1..cols.len() {
            if counts[a] != counts[b] || counts[a] == 0 {
                continue;
            }
            let (x, y) = (cols[a], cols[b]);
            if sp.tag().family != Family::A1 && x.top == TopState::Flat && y.top == TopState::Flat {
                return false;
            }
            let lone = |t: TopState| matches!(t, TopState::FrontIII | TopState::BackIII);
            if lone(x.top) && lone(y.top) && x.top != y.top {
                return false;
            }
        }
    }
    true
}

/// Every weakly decreasing count sequence summing to `n`, column states
/// chosen freely, filtered by the oracle.
fn brute_force(sp: &Space, n: u32) -> BTreeSet<Wall> {
    fn rec(sp: &Space, left: u32, max: u32, cols: &mut Vec<Column>, out: &mut BTreeSet<Wall>) {
        if left == 0 {
            if oracle_proper(sp, cols) {
                out.insert(Wall::new(sp.tag(), sp.lambda(), cols.clone()));
            }
            return;
        }
        for part in (1..=max.min(left)).rev() {
            for col in sp.columns_with_count(part) {
                cols.push(col);
                rec(sp, left - part, part, cols, out);
                cols.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    rec(sp, n, n, &mut Vec::new(), &mut out);
    out
}

#[test]
fn proper_walls_match_brute_force() {
    for sp in spaces() {
        for n in 0..=7 {
            let brute = brute_force(&sp, n);
            let built: BTreeSet<Wall> = sp.enumerate_by_size(n as usize).into_iter().collect();
            assert_eq!(built, brute, "{} L{} with {n} blocks", sp.tag(), sp.lambda());
            if sp.tag().family == Family::A1 {
                assert_eq!(brute.len(), youngwall::cli::partition_count(n as usize));
            }
            for y in &brute {
                assert!(sp.is_proper(y));
            }
        }
    }
}

#[test]
fn a1_reduced_walls_are_restricted_partitions() {
    // For A_n^(1) a wall is a partition and reduced means every difference
    // of neighbouring column heights (the last against 0) is at most n.
    for tag in ["A1:1", "A1:2", "A1:3"] {
        let tag: youngwall::AlgebraTag = tag.parse().unwrap();
        let sp = Space::new(tag, 0).unwrap();
        for n in 0..=8 {
            for y in sp.enumerate_by_size(n) {
                let mut c = sp.counts(&y);
                c.push(0);
                let restricted = c.windows(2).all(|w| (w[0] - w[1]) as usize <= tag.n);
                assert_eq!(sp.is_reduced(&y), restricted, "{tag} {y}");
            }
        }
    }
}

#[test]
fn compact_form_errors() {
    let tag = "B1:3".parse().unwrap();
    assert!(Wall::parse_compact(tag, 0, "4.sideways").is_err());
    assert!(Wall::parse_compact(tag, 0, "x.flat").is_err());
    assert!(Wall::parse_compact(tag, 0, "4").is_err());
    let sp = Space::new(tag, 0).unwrap();
    let not_proper = Wall::parse_compact(tag, 0, "2.flat/3.flat").unwrap();
    assert!(sp.ensure_proper(&not_proper).is_err());
    assert_eq!(Wall::parse_compact(tag, 0, "ground").unwrap(), sp.ground());
}

fn naive_dominates(a: &[u32], b: &[u32]) -> bool {
    // Tail sums from the leftmost (highest-index) column.
    let len = a.len().max(b.len());
    let get = |v: &[u32], k: usize| v.get(k).copied().unwrap_or(0) as u64;
    (0..len).all(|l| (l..len).map(|k| get(a, k)).sum::<u64>() >= (l..len).map(|k| get(b, k)).sum::<u64>())
}

proptest! {
    #[test]
    fn codecs_round_trip(idx in 0usize..64, steps in 0usize..16, seed in any::<u64>()) {
        let (sp, y) = space_and_wall(idx, steps, seed);
        prop_assert!(sp.is_proper(&y));
        prop_assert_eq!(Wall::parse_compact(sp.tag(), sp.lambda(), &y.compact()).unwrap(), y.clone());
        let json = serde_json::to_string(&y.to_json()).unwrap();
        prop_assert_eq!(serde_json::from_str::<Wall>(&json).unwrap(), y.clone());
        prop_assert_eq!(sp.counts(&y).iter().sum::<u32>() as usize, steps);
        prop_assert_eq!(sp.weight(&y).depth() as usize, steps);
    }

    #[test]
    fn reduced_form_properties(idx in 0usize..64, steps in 0usize..16, seed in any::<u64>()) {
        let (sp, y) = space_and_wall(idx, steps, seed);
        let r = sp.reduced_form(&y).unwrap();
        prop_assert!(sp.is_reduced(&r));
        prop_assert!(sp.is_proper(&r));
        prop_assert!(sp.partition_of(&r).dominates(&sp.partition_of(&y)));
        prop_assert_eq!(sp.reduced_form_with_order(&y, LadderOrder::TopDown).unwrap(), r.clone());
        prop_assert_eq!(sp.reduced_form(&r).unwrap(), r.clone());
        if sp.is_reduced(&y) {
            prop_assert_eq!(r, y);
        }
    }

    #[test]
    fn bar_step_properties(idx in 0usize..64, steps in 1usize..16, seed in any::<u64>()) {
        let (sp, y) = space_and_wall(idx, steps, seed);
        let y = sp.reduced_form(&y).unwrap();
        prop_assume!(!y.is_ground());
        let (bar, i, r) = sp.bar_step(&y).unwrap();
        prop_assert!(sp.is_reduced(&bar));
        prop_assert!(r >= 1);
        let mut k = sp.weight(&bar).k;
        k[i] += r as i64;
        prop_assert_eq!(k, sp.weight(&y).k);
    }

    #[test]
    fn dominance_matches_tail_sums(a in prop::collection::vec(0u32..6, 0..6), b in prop::collection::vec(0u32..6, 0..6)) {
        let mut a = a; a.sort_by(|x, y| y.cmp(x));
        let mut b = b; b.sort_by(|x, y| y.cmp(x));
        prop_assert_eq!(WallPartition::new(a.clone()).dominates(&WallPartition::new(b.clone())), naive_dominates(&a, &b));
    }

    #[test]
    fn total_order_is_consistent(idx in 0usize..64, steps in 0usize..12, s1 in any::<u64>(), s2 in any::<u64>()) {
        let (sp, y) = space_and_wall(idx, steps, s1);
        let (_, z) = space_and_wall(idx, steps, s2);
        prop_assert_eq!(sp.total_cmp(&y, &z), sp.total_cmp(&z, &y).reverse());
        prop_assert_eq!(sp.total_cmp(&y, &z).is_eq(), y == z);
    }
}
