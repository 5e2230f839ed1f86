//! Wall-building patterns: which colored block sits at each position above the
//! ground-state wall.
//!
//! Patterns are hand-transcribed static data.  Every table is periodic
//! horizontally (period 1, 2 or `n+1` columns) and vertically (period `Δ` cube
//! levels).  Level 0 is the first cube level above the ground line; the ground
//! may already occupy half of level 0 (a lower half or a back half).
//!
//! The transcription checksum — each color `i` occurs on exactly `a_i` blocks
//! per vertical period — is enforced by [`PatternTable::checksum`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cartan::{cartan_data, AlgebraTag, CartanError, Family};

/// Contents of one unit cube of the pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CubeSpec {
    /// A single type-I block.
    Whole(usize),
    /// Two type-II half-height blocks.
    SplitHoriz { lower: usize, upper: usize },
    /// Two type-III half-thickness blocks.
    SplitVert { front: usize, back: usize },
}

/// The geometric kind of a cube level (identical for every column).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CubeKind {
    Whole,
    SplitHoriz,
    SplitVert,
}

impl CubeSpec {
    pub fn kind(&self) -> CubeKind {
        match self {
            CubeSpec::Whole(_) => CubeKind::Whole,
            CubeSpec::SplitHoriz { .. } => CubeKind::SplitHoriz,
            CubeSpec::SplitVert { .. } => CubeKind::SplitVert,
        }
    }

    /// Colors of the blocks in this cube (one or two entries).
    pub fn colors(&self) -> Vec<usize> {
        match *self {
            CubeSpec::Whole(c) => vec![c],
            CubeSpec::SplitHoriz { lower, upper } => vec![lower, upper],
            CubeSpec::SplitVert { front, back } => vec![front, back],
        }
    }
}

impl fmt::Display for CubeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CubeSpec::Whole(c) => write!(f, "{c}"),
            CubeSpec::SplitHoriz { lower, upper } => write!(f, "[{upper}/{lower}]"),
            CubeSpec::SplitVert { front, back } => write!(f, "<front {front}|back {back}>"),
        }
    }
}

/// What the ground-state wall contributes to level 0 of each column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroundPrefill {
    /// Level 0 starts empty.
    None,
    /// The lower half of the level-0 horizontal split is part of the ground.
    LowerHalfOfLevel0,
    /// The back half of the level-0 vertical split is part of the ground.
    BackHalfOfLevel0,
    /// The ground is a complete strip below level 0 (type `A_n^(1)`).
    FullStrip,
}

impl GroundPrefill {
    /// Whether one half of level 0 is already occupied.
    pub fn occupies_level0(self) -> bool {
        matches!(self, GroundPrefill::LowerHalfOfLevel0 | GroundPrefill::BackHalfOfLevel0)
    }
}

/// A transcribed periodic pattern for one `(tag, Λ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternTable {
    pub tag: AlgebraTag,
    pub lambda: usize,
    pub horiz_period: usize,
    pub vert_period: usize,
    /// `cubes[class][level]` for `class < horiz_period`, `level < vert_period`.
    pub cubes: Vec<Vec<CubeSpec>>,
    pub ground_prefill: Vec<GroundPrefill>,
}

use CubeSpec::{SplitHoriz as SH, SplitVert as SV, Whole as W};

fn sh(c: usize) -> CubeSpec {
    SH { lower: c, upper: c }
}

/// `Whole(from), Whole(from±1), ..., Whole(to)` inclusive, in either direction.
fn run(from: usize, to: usize) -> Vec<CubeSpec> {
    if from <= to {
        (from..=to).map(W).collect()
    } else {
        (to..=from).rev().map(W).collect()
    }
}

/// Concatenate level lists.
fn cat(pieces: Vec<Vec<CubeSpec>>) -> Vec<CubeSpec> {
    pieces.into_iter().flatten().collect()
}

/// Two column classes built from the class-0 level list; class 1 swaps the
/// front and back colors of every `SplitVert` row.
fn checkerboard(levels: Vec<CubeSpec>) -> Vec<Vec<CubeSpec>> {
    let swapped = levels
        .iter()
        .map(|c| match *c {
            SV { front, back } => SV { front: back, back: front },
            other => other,
        })
        .collect();
    vec![levels, swapped]
}

/// The transcribed pattern for `(tag, Λ_lambda)`.
pub fn pattern_table(tag: AlgebraTag, lambda: usize) -> Result<PatternTable, CartanError> {
    tag.check_weight(lambda)?;
    let n = tag.n;
    let delta = cartan_data(tag).delta_volume;
    let (cubes, prefill): (Vec<Vec<CubeSpec>>, GroundPrefill) = match tag.family {
        Family::A1 => {
            // Colors increase by one going up a column and decrease by one per
            // column to the left: color(k, l) = Λ + l - k (mod n+1).
            let m = n + 1;
            let classes = (0..m)
                .map(|k| (0..m).map(|l| W((lambda + l + m - k) % m)).collect())
                .collect();
            (classes, GroundPrefill::FullStrip)
        }
        Family::A2odd => {
            let (f0, b0) = if lambda == 0 { (0, 1) } else { (1, 0) };
            let levels = cat(vec![
                vec![SV { front: f0, back: b0 }],
                run(2, n),
                run(n - 1, 2),
            ]);
            (checkerboard(levels), GroundPrefill::BackHalfOfLevel0)
        }
        Family::D1 => {
            let spin_up = run(2, n - 2);
            let spin_down = run(n - 2, 2);
            let levels = if lambda <= 1 {
                let (f0, b0) = if lambda == 0 { (0, 1) } else { (1, 0) };
                cat(vec![
                    vec![SV { front: f0, back: b0 }],
                    spin_up,
                    vec![SV { front: n - 1, back: n }],
                    spin_down,
                ])
            } else {
                let (f0, b0) = if lambda == n - 1 { (n - 1, n) } else { (n, n - 1) };
                cat(vec![
                    vec![SV { front: f0, back: b0 }],
                    spin_down,
                    vec![SV { front: 0, back: 1 }],
                    spin_up,
                ])
            };
            (checkerboard(levels), GroundPrefill::BackHalfOfLevel0)
        }
        Family::A2even => {
            let levels = if n == 1 {
                vec![sh(0), W(1)]
            } else {
                cat(vec![vec![sh(0)], run(1, n), run(n - 1, 1)])
            };
            (vec![levels], GroundPrefill::LowerHalfOfLevel0)
        }
        Family::D2 => {
            let (bottom, middle) = if lambda == 0 { (0, n) } else { (n, 0) };
            let (up, down) = if lambda == 0 {
                (run(1, n - 1), run(n - 1, 1))
            } else {
                (run(n - 1, 1), run(1, n - 1))
            };
            let levels = cat(vec![vec![sh(bottom)], up, vec![sh(middle)], down]);
            (vec![levels], GroundPrefill::LowerHalfOfLevel0)
        }
        Family::B1 => {
            if lambda == n {
                let levels = cat(vec![
                    vec![sh(n)],
                    run(n - 1, 2),
                    vec![SV { front: 0, back: 1 }],
                    run(2, n - 1),
                ]);
                (checkerboard(levels), GroundPrefill::LowerHalfOfLevel0)
            } else {
                let (f0, b0) = if lambda == 0 { (0, 1) } else { (1, 0) };
                let levels = cat(vec![
                    vec![SV { front: f0, back: b0 }],
                    run(2, n - 1),
                    vec![sh(n)],
                    run(n - 1, 2),
                ]);
                (checkerboard(levels), GroundPrefill::BackHalfOfLevel0)
            }
        }
    };
    let horiz_period = cubes.len();
    let table = PatternTable {
        tag,
        lambda,
        horiz_period,
        vert_period: delta,
        ground_prefill: vec![prefill; horiz_period],
        cubes,
    };
    debug_assert!(table.cubes.iter().all(|c| c.len() == delta), "period mismatch for {tag}");
    Ok(table)
}

impl PatternTable {
    /// The cube at column `k`, level `l` (periodic lookup).
    pub fn cube_at(&self, k: usize, l: usize) -> CubeSpec {
        self.cubes[k % self.horiz_period][l % self.vert_period]
    }

    /// The kind of cube level `l` (the same in every column).
    pub fn kind_at(&self, l: usize) -> CubeKind {
        self.cubes[0][l % self.vert_period].kind()
    }

    /// Ground contribution (identical for all column classes).
    pub fn prefill(&self) -> GroundPrefill {
        self.ground_prefill[0]
    }

    /// Per-color number of blocks in one vertical period of column class `c`
    /// (halves counted once each).
    pub fn color_counts(&self, class: usize) -> Vec<i64> {
        let mut counts = vec![0i64; self.tag.size()];
        for cube in &self.cubes[class] {
            for c in cube.colors() {
                counts[c] += 1;
            }
        }
        counts
    }

    /// Total block volume of one period, halves counting 1/2, as a doubled
    /// integer (so the value is `2Δ` for a correct table).
    pub fn doubled_volume(&self, class: usize) -> usize {
        self.cubes[class]
            .iter()
            .map(|c| match c.kind() {
                // A whole block has volume 1; each half block has volume 1/2.
                CubeKind::Whole => 2,
                CubeKind::SplitHoriz | CubeKind::SplitVert => 1 + 1,
            })
            .sum()
    }

    /// Verify the transcription invariants; returns a description of the
    /// first violation.
    pub fn checksum(&self) -> Result<(), String> {
        let data = cartan_data(self.tag);
        if self.vert_period != data.delta_volume {
            return Err(format!("vertical period {} != Δ {}", self.vert_period, data.delta_volume));
        }
        let kinds: Vec<CubeKind> = self.cubes[0].iter().map(|c| c.kind()).collect();
        for class in 0..self.horiz_period {
            if self.cubes[class].len() != self.vert_period {
                return Err(format!("class {class} has {} levels", self.cubes[class].len()));
            }
            let k2: Vec<CubeKind> = self.cubes[class].iter().map(|c| c.kind()).collect();
            if k2 != kinds {
                return Err(format!("class {class} has different level kinds"));
            }
            let counts = self.color_counts(class);
            if counts != data.block_counts {
                return Err(format!(
                    "class {class} color counts {counts:?} != block counts {:?}",
                    data.block_counts
                ));
            }
            if self.doubled_volume(class) != 2 * data.delta_volume {
                return Err(format!("class {class} volume mismatch"));
            }
        }
        // Vertical splits alternate front/back between neighboring classes.
        for l in 0..self.vert_period {
            for class in 0..self.horiz_period {
                let next = (class + 1) % self.horiz_period;
                if let (SV { front, back }, SV { front: f2, back: b2 }) =
                    (self.cubes[class][l], self.cubes[next][l])
                {
                    if front != b2 || back != f2 {
                        return Err(format!("level {l}: split not checkerboarded"));
                    }
                }
            }
        }
        let ok_prefill = match (self.prefill(), kinds[0]) {
            (GroundPrefill::LowerHalfOfLevel0, CubeKind::SplitHoriz) => true,
            (GroundPrefill::BackHalfOfLevel0, CubeKind::SplitVert) => true,
            (GroundPrefill::FullStrip, _) => self.tag.family == Family::A1,
            (GroundPrefill::None, _) => true,
            _ => false,
        };
        if !ok_prefill {
            return Err("ground prefill does not match level 0".into());
        }
        Ok(())
    }

    /// Human-readable dump: one line per level per column class, top level
    /// first, for reviewing the transcription.
    pub fn dump(&self) -> String {
        let mut out = format!(
            "pattern {} Λ_{} (horizontal period {}, vertical period {}, ground {:?})\n",
            self.tag,
            self.lambda,
            self.horiz_period,
            self.vert_period,
            self.prefill()
        );
        for class in 0..self.horiz_period {
            out.push_str(&format!("column class {class}:\n"));
            for l in (0..self.vert_period).rev() {
                out.push_str(&format!("  level {l:>2}: {}\n", self.cubes[class][l]));
            }
        }
        out
    }
}
