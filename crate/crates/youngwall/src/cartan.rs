//! Affine Cartan data for the six classical families and level-1 weight
//! bookkeeping.
//!
//! Weights are never stored as abstract lattice vectors: a [`Weight`] is the
//! pair `(Λ, k)` representing `Λ - Σ k_i α_i`, which is exactly what adding and
//! removing colored blocks changes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors for tag parsing and table lookup.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CartanError {
    #[error("RankOutOfBounds: family {family} requires n >= {min}, got {n}")]
    RankOutOfBounds { family: Family, min: usize, n: usize },
    #[error("ParseError: {0}")]
    Parse(String),
    #[error("UnsupportedWeight: Λ_{lambda} is not available for {tag}")]
    UnsupportedWeight { tag: AlgebraTag, lambda: usize },
}

/// The six affine families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// `A_n^(1)`
    A1,
    /// `A_{2n-1}^(2)`
    A2odd,
    /// `D_n^(1)`
    D1,
    /// `A_{2n}^(2)`
    A2even,
    /// `D_{n+1}^(2)`
    D2,
    /// `B_n^(1)`
    B1,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::A1,
        Family::A2odd,
        Family::D1,
        Family::A2even,
        Family::D2,
        Family::B1,
    ];

    /// Smallest admissible rank parameter.
    pub fn min_rank(self) -> usize {
        match self {
            Family::A1 | Family::A2even => 1,
            Family::D2 => 2,
            Family::A2odd | Family::B1 => 3,
            Family::D1 => 4,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Family::A1 => "A1",
            Family::A2odd => "A2odd",
            Family::D1 => "D1",
            Family::A2even => "A2even",
            Family::D2 => "D2",
            Family::B1 => "B1",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A family together with its rank parameter, e.g. `B1:3` for `B_3^(1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraTag {
    pub family: Family,
    pub n: usize,
}

impl AlgebraTag {
    /// Validated constructor.
    pub fn new(family: Family, n: usize) -> Result<Self, CartanError> {
        if n < family.min_rank() {
            return Err(CartanError::RankOutOfBounds { family, min: family.min_rank(), n });
        }
        Ok(AlgebraTag { family, n })
    }

    /// Number of simple roots, `|I| = n + 1`.
    pub fn size(&self) -> usize {
        self.n + 1
    }

    /// Weight indices with a transcribed wall pattern.
    pub fn supported_weights(&self) -> Vec<usize> {
        let n = self.n;
        match self.family {
            Family::A1 => (0..=n).collect(),
            Family::A2odd => vec![0, 1],
            Family::D1 => vec![0, 1, n - 1, n],
            Family::A2even => vec![0],
            Family::D2 => vec![0, n],
            Family::B1 => vec![0, 1, n],
        }
    }

    /// Fails with `UnsupportedWeight` unless `lambda` has a pattern.
    pub fn check_weight(&self, lambda: usize) -> Result<(), CartanError> {
        if self.supported_weights().contains(&lambda) {
            Ok(())
        } else {
            Err(CartanError::UnsupportedWeight { tag: *self, lambda })
        }
    }
}

impl fmt::Display for AlgebraTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.family, self.n)
    }
}

impl FromStr for AlgebraTag {
    type Err = CartanError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (fam, n) = s
            .split_once(':')
            .ok_or_else(|| CartanError::Parse(format!("expected FAMILY:n, got {s:?}")))?;
        let family = Family::ALL
            .into_iter()
            .find(|f| f.name() == fam)
            .ok_or_else(|| CartanError::Parse(format!("unknown family {fam:?}")))?;
        let n: usize = n
            .parse()
            .map_err(|_| CartanError::Parse(format!("bad rank {n:?}")))?;
        AlgebraTag::new(family, n)
    }
}

impl Serialize for AlgebraTag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for AlgebraTag {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One small representative of each family, used by the randomized
/// self-checks: `A1:2`, `A2odd:3`, `D1:4`, `A2even:2`, `D2:2`, `B1:3`.
pub fn sample_tags() -> Vec<AlgebraTag> {
    [(Family::A1, 2), (Family::A2odd, 3), (Family::D1, 4), (Family::A2even, 2), (Family::D2, 2), (Family::B1, 3)]
        .into_iter()
        .map(|(f, n)| AlgebraTag { family: f, n })
        .collect()
}

/// Parse a weight name `L0`, `L1`, ...
pub fn parse_weight_name(s: &str) -> Result<usize, CartanError> {
    s.strip_prefix('L')
        .and_then(|r| r.parse().ok())
        .ok_or_else(|| CartanError::Parse(format!("expected weight like L0, got {s:?}")))
}

/// Static tables for one algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanData {
    pub tag: AlgebraTag,
    /// `a[i][j] = a_ij = <h_i, α_j>`.
    pub cartan_matrix: Vec<Vec<i64>>,
    /// Symmetrizers `s_i`, with `q_i = q^{s_i}`.
    pub symmetrizers: Vec<i64>,
    /// Null root coefficients, `δ = Σ d_i α_i`.
    pub null_root: Vec<i64>,
    /// Number of `i`-blocks in a δ-column.
    pub block_counts: Vec<i64>,
    /// Number of cube levels in one vertical period of the wall pattern.
    pub delta_volume: usize,
    /// Vertical step between consecutive ladder cells.
    pub ladder_step: usize,
    pub supported_weights: Vec<usize>,
}

/// Cartan data lookup for a (validated) tag.
pub fn cartan_data(tag: AlgebraTag) -> CartanData {
    let n = tag.n;
    let size = n + 1;
    let mut a = vec![vec![0i64; size]; size];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    let (s, d): (Vec<i64>, Vec<i64>);
    match tag.family {
        Family::A1 => {
            if n == 1 {
                link(0, 1, -2, -2);
            } else {
                for i in 0..size {
                    link(i, (i + 1) % size, -1, -1);
                }
            }
            s = vec![1; size];
            d = vec![1; size];
        }
        Family::A2odd => {
            link(0, 2, -1, -1);
            link(1, 2, -1, -1);
            for i in 2..n - 1 {
                link(i, i + 1, -1, -1);
            }
            link(n - 1, n, -2, -1);
            s = (0..size).map(|i| if i == n { 2 } else { 1 }).collect();
            d = (0..size).map(|i| if i <= 1 || i == n { 1 } else { 2 }).collect();
        }
        Family::D1 => {
            link(0, 2, -1, -1);
            link(1, 2, -1, -1);
            for i in 2..n - 2 {
                link(i, i + 1, -1, -1);
            }
            link(n - 2, n - 1, -1, -1);
            link(n - 2, n, -1, -1);
            s = vec![1; size];
            d = (0..size).map(|i| if i <= 1 || i >= n - 1 { 1 } else { 2 }).collect();
        }
        Family::A2even => {
            if n == 1 {
                link(0, 1, -4, -1);
                s = vec![1, 4];
            } else {
                link(0, 1, -2, -1);
                for i in 1..n - 1 {
                    link(i, i + 1, -1, -1);
                }
                link(n - 1, n, -2, -1);
                s = (0..size)
                    .map(|i| if i == 0 { 1 } else if i == n { 4 } else { 2 })
                    .collect();
            }
            d = (0..size).map(|i| if i == n { 1 } else { 2 }).collect();
        }
        Family::D2 => {
            link(0, 1, -2, -1);
            for i in 1..n - 1 {
                link(i, i + 1, -1, -1);
            }
            link(n - 1, n, -1, -2);
            s = (0..size).map(|i| if i == 0 || i == n { 1 } else { 2 }).collect();
            d = vec![1; size];
        }
        Family::B1 => {
            link(0, 2, -1, -1);
            link(1, 2, -1, -1);
            for i in 2..n - 1 {
                link(i, i + 1, -1, -1);
            }
            link(n - 1, n, -1, -2);
            s = (0..size).map(|i| if i == n { 1 } else { 2 }).collect();
            d = (0..size).map(|i| if i <= 1 { 1 } else { 2 }).collect();
        }
    }
    let block_counts: Vec<i64> = if tag.family == Family::D2 {
        d.iter().map(|x| 2 * x).collect()
    } else {
        d.clone()
    };
    // For A_n^(1) one δ-column is a full cycle of n+1 colors and a ladder
    // climbs n levels per column; otherwise the ladder climbs a full period.
    let (delta_volume, ladder_step) = match tag.family {
        Family::A1 => (n + 1, n),
        Family::A2odd | Family::D1 | Family::B1 => {
            let v = if tag.family == Family::D1 { 2 * n - 4 } else { 2 * n - 2 };
            (v, v)
        }
        Family::A2even | Family::D2 => (2 * n, 2 * n),
    };
    CartanData {
        tag,
        cartan_matrix: a,
        symmetrizers: s,
        null_root: d,
        block_counts,
        delta_volume,
        ladder_step,
        supported_weights: tag.supported_weights(),
    }
}

impl CartanData {
    pub fn size(&self) -> usize {
        self.tag.size()
    }

    /// Total number of blocks in one δ-column, `N_δ = Σ a_i`.
    pub fn blocks_per_delta(&self) -> i64 {
        self.block_counts.iter().sum()
    }

    /// `<h_i, Λ - Σ k_j α_j> = δ_{i,Λ} - Σ_j k_j a_ij`.
    pub fn pairing(&self, w: &Weight, i: usize) -> i64 {
        let base = i64::from(w.lambda == i);
        base - w
            .k
            .iter()
            .enumerate()
            .map(|(j, kj)| kj * self.cartan_matrix[i][j])
            .sum::<i64>()
    }

    /// `Some(m)` when `k = m·d`, i.e. the weight is `Λ - mδ`.
    pub fn delta_multiple(&self, w: &Weight) -> Option<i64> {
        let m = w.k[0] / self.null_root[0];
        let ok = w
            .k
            .iter()
            .zip(&self.null_root)
            .all(|(k, d)| *k == m * d);
        ok.then_some(m)
    }

    /// The weight `Λ - mδ`.
    pub fn delta_weight(&self, lambda: usize, m: i64) -> Weight {
        Weight {
            lambda,
            k: self.null_root.iter().map(|d| m * d).collect(),
        }
    }
}

/// The weight `Λ_lambda - Σ k_i α_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub lambda: usize,
    pub k: Vec<i64>,
}

impl Weight {
    /// The dominant weight `Λ_lambda` itself.
    pub fn top(lambda: usize, size: usize) -> Self {
        Weight { lambda, k: vec![0; size] }
    }

    /// `self - α_i` (one more `i`-block).
    pub fn minus_alpha(&self, i: usize) -> Self {
        let mut w = self.clone();
        w.k[i] += 1;
        w
    }

    /// `self + α_i` (one fewer `i`-block).
    pub fn plus_alpha(&self, i: usize) -> Self {
        let mut w = self.clone();
        w.k[i] -= 1;
        w
    }

    /// Total number of blocks.
    pub fn depth(&self) -> i64 {
        self.k.iter().sum()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L{}", self.lambda)?;
        for (i, k) in self.k.iter().enumerate() {
            if *k != 0 {
                write!(f, " - {k}a{i}")?;
            }
        }
        Ok(())
    }
}
