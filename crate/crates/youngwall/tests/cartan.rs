//! Cartan data checked against structural properties of affine Cartan
//! matrices computed independently in the test.

#![allow(clippy::needless_range_loop)]

use proptest::prelude::*;
use youngwall::cartan::{parse_weight_name, CartanError};
use youngwall::{cartan_data, AlgebraTag, Family, Weight};

/// Determinant by fraction-free Gaussian elimination (Bareiss).
fn det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn minor(m: &[Vec<i64>], skip: usize) -> Vec<Vec<i64>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != skip)
        .map(|(_, r)| r.iter().enumerate().filter(|(j, _)| *j != skip).map(|(_, x)| *x).collect())
        .collect()
}

fn tags_up_to(max_n: usize) -> Vec<AlgebraTag> {
    Family::ALL
        .into_iter()
        .flat_map(|f| (f.min_rank()..=max_n).map(move |n| AlgebraTag::new(f, n).unwrap()))
        .collect()
}

#[test]
fn generalized_cartan_matrix_of_affine_type() {
    for tag in tags_up_to(7) {
        let d = cartan_data(tag);
        let a = &d.cartan_matrix;
        let size = tag.size();
        assert_eq!(a.len(), size);
        for i in 0..size {
            assert_eq!(a[i][i], 2, "{tag}");
            for j in 0..size {
                if i != j {
                    assert!(a[i][j] <= 0, "{tag}");
                    assert_eq!(a[i][j] == 0, a[j][i] == 0, "{tag}");
                    assert_eq!(d.symmetrizers[i] * a[i][j], d.symmetrizers[j] * a[j][i], "{tag}: s·A symmetric");
                }
            }
        }
        // Affine: singular, and every proper principal minor is of finite type.
        assert_eq!(det(a), 0, "{tag}");
        for skip in 0..size {
            let m = minor(a, skip);
            for k in 1..=m.len() {
                let lead: Vec<Vec<i64>> = m[..k].iter().map(|r| r[..k].to_vec()).collect();
                assert!(det(&lead) > 0, "{tag}: minor without node {skip} is not positive definite");
            }
        }
        // δ is the positive, primitive kernel vector.
        for i in 0..size {
            let s: i64 = (0..size).map(|j| a[i][j] * d.null_root[j]).sum();
            assert_eq!(s, 0, "{tag}: A·d ≠ 0");
        }
        assert!(d.null_root.iter().all(|&x| x > 0));
        let g = d.null_root.iter().fold(0, |g, &x| num_integer::gcd(g, x));
        assert_eq!(g, 1, "{tag}");
    }
}

#[test]
fn block_counts_and_volumes() {
    for tag in tags_up_to(7) {
        let d = cartan_data(tag);
        let expect: Vec<i64> = if tag.family == Family::D2 {
            d.null_root.iter().map(|x| 2 * x).collect()
        } else {
            d.null_root.clone()
        };
        assert_eq!(d.block_counts, expect, "{tag}");
        let n = tag.n;
        let table = match tag.family {
            Family::A1 => n + 1,
            Family::A2odd | Family::B1 => 2 * n - 2,
            Family::D1 => 2 * n - 4,
            Family::A2even | Family::D2 => 2 * n,
        };
        assert_eq!(d.delta_volume, table, "{tag}");
        let step = if tag.family == Family::A1 { table - 1 } else { table };
        assert_eq!(d.ladder_step, step, "{tag}");
        assert_eq!(cartan_data(tag), d, "pure lookup");
    }
}

#[test]
fn documented_examples() {
    let b13: AlgebraTag = "B1:3".parse().unwrap();
    let d = cartan_data(b13);
    assert_eq!((d.delta_volume, d.ladder_step), (4, 4));
    assert_eq!(d.delta_multiple(&Weight { lambda: 0, k: vec![1, 1, 2, 2] }), Some(1));
    assert_eq!(d.delta_multiple(&Weight { lambda: 0, k: vec![0; 4] }), Some(0));
    assert_eq!(d.delta_multiple(&Weight { lambda: 0, k: vec![1, 0, 0, 0] }), None);

    let d2 = cartan_data("D2:2".parse().unwrap());
    assert_eq!(d2.block_counts, vec![2, 2, 2]);
    assert_eq!(d2.null_root, vec![1, 1, 1]);

    let a2 = cartan_data("A1:2".parse().unwrap());
    assert_eq!(a2.pairing(&Weight { lambda: 0, k: vec![1, 1, 1] }, 0), 1);
}

#[test]
fn tag_and_weight_syntax() {
    for tag in tags_up_to(6) {
        assert_eq!(tag.to_string().parse::<AlgebraTag>().unwrap(), tag);
        let json = serde_json::to_string(&tag).unwrap();
        assert_eq!(serde_json::from_str::<AlgebraTag>(&json).unwrap(), tag);
    }
    assert!(matches!("B1:2".parse::<AlgebraTag>(), Err(CartanError::RankOutOfBounds { .. })));
    assert!("E8:1".parse::<AlgebraTag>().is_err());
    assert!("B13".parse::<AlgebraTag>().is_err());
    assert_eq!(parse_weight_name("L3").unwrap(), 3);
    assert!(parse_weight_name("3").is_err());
    let a2e: AlgebraTag = "A2even:2".parse().unwrap();
    assert!(matches!(a2e.check_weight(1), Err(CartanError::UnsupportedWeight { .. })));
    assert!(a2e.check_weight(0).is_ok());
}

proptest! {
    #[test]
    fn pairing_is_linear(fam in 0usize..6, n_off in 0usize..3, lambda_sel in 0usize..4,
                         k in prop::collection::vec(0i64..5, 9), i in 0usize..9, j in 0usize..9) {
        let family = Family::ALL[fam];
        let tag = AlgebraTag::new(family, family.min_rank() + n_off).unwrap();
        let size = tag.size();
        let weights = tag.supported_weights();
        let lambda = weights[lambda_sel % weights.len()];
        let (i, j) = (i % size, j % size);
        let d = cartan_data(tag);
        let w = Weight { lambda, k: k[..size].to_vec() };
        prop_assert_eq!(d.pairing(&w.minus_alpha(j), i), d.pairing(&w, i) - d.cartan_matrix[i][j]);
        prop_assert_eq!(d.pairing(&Weight::top(lambda, size), i), i64::from(i == lambda));
        // Pairing with δ vanishes.
        let shifted = Weight { lambda, k: w.k.iter().zip(&d.null_root).map(|(a, b)| a + b).collect() };
        prop_assert_eq!(d.pairing(&shifted, i), d.pairing(&w, i));
    }
}
