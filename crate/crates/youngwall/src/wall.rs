//! Young walls: columns of colored blocks stacked on a ground-state wall.
//!
//! A [`Wall`] is a plain value (tag, Λ, finite column list).  All geometry —
//! which block may be added or removed, properness, reducedness, ladders —
//! needs the pattern, so it lives on [`Space`], which bundles the Cartan data
//! and the pattern table of one `(tag, Λ)`.
//!
//! Column `0` is the rightmost column; columns beyond the stored list are
//! ground-state columns.  A column is stored as the number of completely
//! filled cube levels plus the state of the partially filled top level.

use std::cmp::{Ordering, Reverse};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cartan::{cartan_data, AlgebraTag, CartanData, CartanError, Weight};
use crate::pattern::{pattern_table, CubeKind, CubeSpec, GroundPrefill, PatternTable};

/// Errors raised by wall construction and manipulation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WallError {
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error("IllegalBlock: {0}")]
    IllegalBlock(String),
    #[error("NothingToRemove: the ground-state wall has no blocks")]
    NothingToRemove,
    #[error("NotProper: {0}")]
    NotProper(String),
    #[error("NotReduced: {0}")]
    NotReduced(String),
    #[error("Mismatch: {0}")]
    Mismatch(String),
    #[error("ParseError: {0}")]
    Parse(String),
}

/// State of the partially filled level on top of a column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TopState {
    /// No partial level: the column ends at a cube boundary.
    Flat,
    /// Only the lower half of a horizontally split level is present.
    HalfII,
    /// Only the front half of a vertically split level is present.
    FrontIII,
    /// Only the back half of a vertically split level is present.
    BackIII,
}

impl TopState {
    /// Tie-break code: `Flat < HalfII < FrontIII < BackIII`.
    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn name(self) -> &'static str {
        match self {
            TopState::Flat => "flat",
            TopState::HalfII => "half2",
            TopState::FrontIII => "front3",
            TopState::BackIII => "back3",
        }
    }

    fn is_lone_iii(self) -> bool {
        matches!(self, TopState::FrontIII | TopState::BackIII)
    }
}

impl FromStr for TopState {
    type Err = WallError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "flat" => Ok(TopState::Flat),
            "half2" => Ok(TopState::HalfII),
            "front3" => Ok(TopState::FrontIII),
            "back3" => Ok(TopState::BackIII),
            other => Err(WallError::Parse(format!("unknown top state {other:?}"))),
        }
    }
}

impl Serialize for TopState {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for TopState {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// One column: completely filled cube levels plus the top partial state.
///
/// The ground contribution to level 0 is implicit: a ground-state column is
/// always `{cubes: 0, top: Flat}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Column {
    pub cubes: u32,
    pub top: TopState,
}

impl Column {
    pub const GROUND: Column = Column { cubes: 0, top: TopState::Flat };

    pub fn new(cubes: u32, top: TopState) -> Self {
        Column { cubes, top }
    }

    pub fn is_ground(&self) -> bool {
        *self == Column::GROUND
    }
}

/// Which part of a cube a block occupies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Part {
    Whole,
    Lower,
    Upper,
    Front,
    Back,
}

/// A block position: column, cube level, part, and its pattern color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BlockRef {
    pub column: usize,
    pub level: usize,
    pub part: Part,
    pub color: usize,
}

/// A Young wall above the ground-state wall of `Λ_lambda`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Wall {
    pub tag: AlgebraTag,
    pub lambda: usize,
    /// Column 0 first; trailing ground columns are never stored.
    pub columns: Vec<Column>,
}

impl Wall {
    /// Build a wall, dropping trailing ground columns.
    pub fn new(tag: AlgebraTag, lambda: usize, columns: Vec<Column>) -> Self {
        let mut w = Wall { tag, lambda, columns };
        w.trim();
        w
    }

    /// The ground-state wall (no added blocks).
    pub fn ground(tag: AlgebraTag, lambda: usize) -> Self {
        Wall { tag, lambda, columns: Vec::new() }
    }

    pub fn is_ground(&self) -> bool {
        self.columns.is_empty()
    }

    /// Column `k`, ground beyond the stored list.
    pub fn column(&self, k: usize) -> Column {
        self.columns.get(k).copied().unwrap_or(Column::GROUND)
    }

    fn trim(&mut self) {
        while self.columns.last().is_some_and(|c| c.is_ground()) {
            self.columns.pop();
        }
    }

    fn with_column(&self, k: usize, col: Column) -> Wall {
        let mut w = self.clone();
        if k >= w.columns.len() {
            w.columns.resize(k + 1, Column::GROUND);
        }
        w.columns[k] = col;
        w.trim();
        w
    }

    /// Compact text form `c0.t0/c1.t1/...` (column 0 first); the ground
    /// wall is written `ground`.
    pub fn compact(&self) -> String {
        if self.columns.is_empty() {
            return "ground".to_string();
        }
        self.columns
            .iter()
            .map(|c| format!("{}.{}", c.cubes, c.top.name()))
            .collect::<Vec<_>>()
            .join("/")
    }

    /// Parse the compact text form for a given tag and Λ.
    pub fn parse_compact(tag: AlgebraTag, lambda: usize, s: &str) -> Result<Wall, WallError> {
        let s = s.trim();
        if s.is_empty() || s == "ground" {
            return Ok(Wall::ground(tag, lambda));
        }
        let mut columns = Vec::new();
        for piece in s.split('/') {
            let (c, t) = piece
                .split_once('.')
                .ok_or_else(|| WallError::Parse(format!("column {piece:?} is not CUBES.TOP")))?;
            let cubes = c
                .parse()
                .map_err(|_| WallError::Parse(format!("bad cube count {c:?}")))?;
            columns.push(Column::new(cubes, t.parse()?));
        }
        Ok(Wall::new(tag, lambda, columns))
    }

    /// Canonical JSON value.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("walls serialize")
    }
}

impl fmt::Display for Wall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.compact())
    }
}

/// Block counts `(|y_0|, |y_1|, ...)` without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WallPartition(pub Vec<u32>);

impl WallPartition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        WallPartition(parts)
    }

    fn get(&self, k: usize) -> u32 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&x| u64::from(x)).sum()
    }

    /// Dominance `self ⊵ other`: every tail sum `Σ_{k>=l}` of `self` is at
    /// least the corresponding tail sum of `other`.
    pub fn dominates(&self, other: &WallPartition) -> bool {
        let len = self.0.len().max(other.0.len());
        let (mut a, mut b) = (0u64, 0u64);
        for k in (0..len).rev() {
            a += u64::from(self.get(k));
            b += u64::from(other.get(k));
            if a < b {
                return false;
            }
        }
        true
    }

    /// The column-wise total order: the larger count at the highest
    /// differing column index wins.
    pub fn column_cmp(&self, other: &WallPartition) -> Ordering {
        let len = self.0.len().max(other.0.len());
        for k in (0..len).rev() {
            match self.get(k).cmp(&other.get(k)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

/// `P ⊵ Q` on partitions.
pub fn dominance_ge(p: &WallPartition, q: &WallPartition) -> bool {
    p.dominates(q)
}

/// A contiguous range of columns `lo..=hi` (`hi = None` means unbounded to
/// the left).  Legality inside a window ignores columns outside it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub lo: usize,
    pub hi: Option<usize>,
}

impl Window {
    pub const ALL: Window = Window { lo: 0, hi: None };

    pub fn contains(&self, k: usize) -> bool {
        k >= self.lo && self.hi.is_none_or(|h| k <= h)
    }

    /// Whether the window contains no column at all.
    pub fn is_empty(&self) -> bool {
        self.hi.is_some_and(|h| h < self.lo)
    }

    /// Columns that can carry a signature symbol for a wall with `len`
    /// stored columns: an unbounded window stops at its first column beyond
    /// the stored ones, since a ground column whose right neighbour is also
    /// ground can never take a block.
    pub fn scan(&self, len: usize) -> std::ops::RangeInclusive<usize> {
        match self.hi {
            Some(h) => self.lo..=h,
            None => self.lo..=len.max(self.lo),
        }
    }
}

/// A single legal change to one column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColumnMove {
    pub block: BlockRef,
    pub result: Column,
}

/// Order in which `reduced_form` sweeps ladders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderOrder {
    /// Ascending bottom level, then descending bottom column.
    BottomUp,
    /// The reverse of `BottomUp`.
    TopDown,
}

/// Geometry and combinatorics of walls for one `(tag, Λ)`.
#[derive(Debug, Clone)]
pub struct Space {
    pub data: CartanData,
    pub pattern: PatternTable,
    /// Blocks per cube level, ignoring the ground prefill, for one period.
    raw_slots: Vec<u32>,
    period_blocks: u32,
    prefilled: bool,
}

impl Space {
    pub fn new(tag: AlgebraTag, lambda: usize) -> Result<Space, WallError> {
        let pattern = pattern_table(tag, lambda)?;
        let data = cartan_data(tag);
        let raw_slots: Vec<u32> = (0..pattern.vert_period)
            .map(|l| if pattern.kind_at(l) == CubeKind::Whole { 1 } else { 2 })
            .collect();
        let period_blocks = raw_slots.iter().sum();
        let prefilled = pattern.prefill().occupies_level0();
        Ok(Space { data, pattern, raw_slots, period_blocks, prefilled })
    }

    /// Space for the tag and Λ of `wall`.
    pub fn of(wall: &Wall) -> Result<Space, WallError> {
        Space::new(wall.tag, wall.lambda)
    }

    pub fn tag(&self) -> AlgebraTag {
        self.data.tag
    }

    pub fn lambda(&self) -> usize {
        self.pattern.lambda
    }

    pub fn ground(&self) -> Wall {
        Wall::ground(self.tag(), self.lambda())
    }

    fn check_wall(&self, y: &Wall) -> Result<(), WallError> {
        if y.tag != self.tag() || y.lambda != self.lambda() {
            return Err(WallError::Mismatch(format!(
                "wall for {} Λ_{} used with {} Λ_{}",
                y.tag,
                y.lambda,
                self.tag(),
                self.lambda()
            )));
        }
        Ok(())
    }

    /// `q_i = q^{s_i}` exponent.
    pub fn s(&self, i: usize) -> i64 {
        self.data.symmetrizers[i]
    }

    /// The block type (I, II or III) of color `i` as the cube kind carrying it.
    pub fn color_kind(&self, i: usize) -> CubeKind {
        for cube in &self.pattern.cubes[0] {
            if cube.colors().contains(&i) {
                return cube.kind();
            }
        }
        // Colors absent from class 0 only happen for A_n^(1).
        for class in &self.pattern.cubes {
            for cube in class {
                if cube.colors().contains(&i) {
                    return cube.kind();
                }
            }
        }
        unreachable!("color {i} missing from the pattern")
    }

    fn level_prefilled(&self, l: usize) -> bool {
        self.prefilled && l == 0
    }

    /// Number of added blocks strictly below cube level `c`.
    fn blocks_below(&self, c: u32) -> u32 {
        let delta = self.raw_slots.len() as u32;
        let full = (c / delta) * self.period_blocks;
        let part: u32 = self.raw_slots[..(c % delta) as usize].iter().sum();
        full + part - u32::from(self.prefilled && c > 0)
    }

    /// `|y|`: the number of added blocks in a column.
    pub fn count(&self, col: Column) -> u32 {
        self.blocks_below(col.cubes) + u32::from(col.top != TopState::Flat)
    }

    /// Every valid column state holding exactly `n` added blocks.
    pub fn columns_with_count(&self, n: u32) -> Vec<Column> {
        let mut out = Vec::new();
        for cubes in 0..=n + 1 {
            for top in [TopState::Flat, TopState::HalfII, TopState::FrontIII, TopState::BackIII] {
                let col = Column::new(cubes, top);
                if self.column_valid(col) && self.count(col) == n {
                    out.push(col);
                }
            }
        }
        out
    }

    /// Block counts of all stored columns.
    pub fn counts(&self, y: &Wall) -> Vec<u32> {
        y.columns.iter().map(|c| self.count(*c)).collect()
    }

    pub fn partition_of(&self, y: &Wall) -> WallPartition {
        WallPartition::new(self.counts(y))
    }

    /// Whether a column state is consistent with the pattern.
    pub fn column_valid(&self, col: Column) -> bool {
        let l = col.cubes as usize;
        match col.top {
            TopState::Flat => true,
            TopState::HalfII => {
                self.pattern.kind_at(l) == CubeKind::SplitHoriz && !self.level_prefilled(l)
            }
            TopState::FrontIII | TopState::BackIII => {
                self.pattern.kind_at(l) == CubeKind::SplitVert && !self.level_prefilled(l)
            }
        }
    }

    fn block(&self, k: usize, level: usize, part: Part) -> BlockRef {
        let color = match (self.pattern.cube_at(k, level), part) {
            (CubeSpec::Whole(c), Part::Whole) => c,
            (CubeSpec::SplitHoriz { lower, .. }, Part::Lower) => lower,
            (CubeSpec::SplitHoriz { upper, .. }, Part::Upper) => upper,
            (CubeSpec::SplitVert { front, .. }, Part::Front) => front,
            (CubeSpec::SplitVert { back, .. }, Part::Back) => back,
            (cube, part) => panic!("part {part:?} does not fit cube {cube:?}"),
        };
        BlockRef { column: k, level, part, color }
    }

    /// Blocks that could be stacked next on column `k` (ignoring neighbours).
    pub fn next_slots(&self, k: usize, col: Column) -> Vec<ColumnMove> {
        let l = col.cubes as usize;
        let c = col.cubes;
        let mv = |part, cubes, top| ColumnMove {
            block: self.block(k, l, part),
            result: Column::new(cubes, top),
        };
        match col.top {
            TopState::Flat => match self.pattern.kind_at(l) {
                CubeKind::Whole => vec![mv(Part::Whole, c + 1, TopState::Flat)],
                CubeKind::SplitHoriz if self.level_prefilled(l) => {
                    vec![mv(Part::Upper, c + 1, TopState::Flat)]
                }
                CubeKind::SplitHoriz => vec![mv(Part::Lower, c, TopState::HalfII)],
                CubeKind::SplitVert if self.level_prefilled(l) => {
                    vec![mv(Part::Front, c + 1, TopState::Flat)]
                }
                CubeKind::SplitVert => vec![
                    mv(Part::Front, c, TopState::FrontIII),
                    mv(Part::Back, c, TopState::BackIII),
                ],
            },
            TopState::HalfII => vec![mv(Part::Upper, c + 1, TopState::Flat)],
            TopState::FrontIII => vec![mv(Part::Back, c + 1, TopState::Flat)],
            TopState::BackIII => vec![mv(Part::Front, c + 1, TopState::Flat)],
        }
    }

    /// Blocks that could be taken off the top of column `k` (ignoring
    /// neighbours).
    pub fn top_blocks(&self, k: usize, col: Column) -> Vec<ColumnMove> {
        let c = col.cubes;
        match col.top {
            TopState::Flat => {
                if c == 0 {
                    return Vec::new();
                }
                let l = (c - 1) as usize;
                let mv = |part, cubes, top| ColumnMove {
                    block: self.block(k, l, part),
                    result: Column::new(cubes, top),
                };
                match self.pattern.kind_at(l) {
                    CubeKind::Whole => vec![mv(Part::Whole, c - 1, TopState::Flat)],
                    CubeKind::SplitHoriz if self.level_prefilled(l) => {
                        vec![mv(Part::Upper, 0, TopState::Flat)]
                    }
                    CubeKind::SplitHoriz => vec![mv(Part::Upper, c - 1, TopState::HalfII)],
                    CubeKind::SplitVert if self.level_prefilled(l) => {
                        vec![mv(Part::Front, 0, TopState::Flat)]
                    }
                    CubeKind::SplitVert => vec![
                        mv(Part::Front, c - 1, TopState::BackIII),
                        mv(Part::Back, c - 1, TopState::FrontIII),
                    ],
                }
            }
            top => {
                let part = match top {
                    TopState::HalfII => Part::Lower,
                    TopState::FrontIII => Part::Front,
                    _ => Part::Back,
                };
                vec![ColumnMove {
                    block: self.block(k, c as usize, part),
                    result: Column::new(c, TopState::Flat),
                }]
            }
        }
    }

    /// All added blocks of column `k`, bottom to top.
    pub fn column_blocks(&self, k: usize, col: Column) -> Vec<BlockRef> {
        let mut out = Vec::new();
        for l in 0..col.cubes as usize {
            match self.pattern.cube_at(k, l).kind() {
                CubeKind::Whole => out.push(self.block(k, l, Part::Whole)),
                CubeKind::SplitHoriz => {
                    if !self.level_prefilled(l) {
                        out.push(self.block(k, l, Part::Lower));
                    }
                    out.push(self.block(k, l, Part::Upper));
                }
                CubeKind::SplitVert => {
                    if !self.level_prefilled(l) {
                        out.push(self.block(k, l, Part::Back));
                    }
                    out.push(self.block(k, l, Part::Front));
                }
            }
        }
        let l = col.cubes as usize;
        match col.top {
            TopState::Flat => {}
            TopState::HalfII => out.push(self.block(k, l, Part::Lower)),
            TopState::FrontIII => out.push(self.block(k, l, Part::Front)),
            TopState::BackIII => out.push(self.block(k, l, Part::Back)),
        }
        out
    }

    /// The weight `Λ - Σ k_i α_i` of a wall.
    pub fn weight(&self, y: &Wall) -> Weight {
        let mut w = Weight::top(self.lambda(), self.data.size());
        for (k, col) in y.columns.iter().enumerate() {
            for b in self.column_blocks(k, *col) {
                w.k[b.color] += 1;
            }
        }
        w
    }

    /// Whether two horizontally adjacent columns are compatible:
    /// `left` is column `k+1`, `right` is column `k`.
    pub fn pair_ok(&self, left: Column, right: Column) -> bool {
        let (cl, cr) = (self.count(left), self.count(right));
        if cl > cr {
            return false;
        }
        if cl == cr && cl > 0 {
            // Equal counts force the same level and the same partial-ness.
            if left.top == TopState::Flat && self.tag().family != crate::cartan::Family::A1 {
                return false;
            }
            if left.top.is_lone_iii() && right.top.is_lone_iii() && left.top != right.top {
                return false;
            }
        }
        true
    }

    /// Whether replacing column `k` by `new` keeps every adjacent pair inside
    /// `window` compatible.
    pub fn change_ok(&self, y: &Wall, k: usize, new: Column, window: Window) -> bool {
        if !self.column_valid(new) {
            return false;
        }
        if window.contains(k + 1) && !self.pair_ok(y.column(k + 1), new) {
            return false;
        }
        if k >= 1 && window.contains(k - 1) && !self.pair_ok(new, y.column(k - 1)) {
            return false;
        }
        true
    }

    /// Whether `y` is a proper Young wall for this space.
    pub fn is_proper(&self, y: &Wall) -> bool {
        self.proper_violation(y).is_none()
    }

    /// A description of the first violated wall rule, if any.
    pub fn proper_violation(&self, y: &Wall) -> Option<String> {
        if y.tag != self.tag() || y.lambda != self.lambda() {
            return Some("tag or weight mismatch".into());
        }
        if y.columns.last().is_some_and(|c| c.is_ground()) {
            return Some("trailing ground column stored".into());
        }
        for (k, col) in y.columns.iter().enumerate() {
            if !self.column_valid(*col) {
                return Some(format!("column {k} has an impossible top {:?}", col.top));
            }
        }
        for k in 0..y.columns.len() {
            if !self.pair_ok(y.column(k + 1), y.column(k)) {
                return Some(format!("columns {} and {k} are incompatible", k + 1));
            }
        }
        None
    }

    /// Fail unless `y` is proper.
    pub fn ensure_proper(&self, y: &Wall) -> Result<(), WallError> {
        self.check_wall(y)?;
        match self.proper_violation(y) {
            None => Ok(()),
            Some(msg) => Err(WallError::NotProper(msg)),
        }
    }

    /// Legal single-block additions of color `i` in column `k` w.r.t. `window`.
    pub fn column_additions(&self, y: &Wall, k: usize, i: usize, window: Window) -> Vec<ColumnMove> {
        self.next_slots(k, y.column(k))
            .into_iter()
            .filter(|m| m.block.color == i && self.change_ok(y, k, m.result, window))
            .collect()
    }

    /// Legal single-block removals of color `i` in column `k` w.r.t. `window`.
    pub fn column_removals(&self, y: &Wall, k: usize, i: usize, window: Window) -> Vec<ColumnMove> {
        self.top_blocks(k, y.column(k))
            .into_iter()
            .filter(|m| m.block.color == i && self.change_ok(y, k, m.result, window))
            .collect()
    }

    /// All admissible `i`-slots of a proper wall.
    pub fn addable_slots(&self, y: &Wall, i: usize) -> Vec<BlockRef> {
        Window::ALL
            .scan(y.columns.len())
            .flat_map(|k| self.column_additions(y, k, i, Window::ALL))
            .map(|m| m.block)
            .collect()
    }

    /// All removable `i`-blocks of a proper wall.
    pub fn removable_blocks(&self, y: &Wall, i: usize) -> Vec<BlockRef> {
        (0..y.columns.len())
            .flat_map(|k| self.column_removals(y, k, i, Window::ALL))
            .map(|m| m.block)
            .collect()
    }

    /// A proper wall reached from the ground by `steps` uniformly chosen
    /// admissible block additions (any color).
    pub fn random_wall<R: rand::Rng + ?Sized>(&self, steps: usize, rng: &mut R) -> Wall {
        let mut y = self.ground();
        for _ in 0..steps {
            let slots: Vec<BlockRef> =
                (0..self.data.size()).flat_map(|i| self.addable_slots(&y, i)).collect();
            let b = slots[rng.gen_range(0..slots.len())];
            y = self.add_block(&y, &b).expect("addable slots are legal");
        }
        y
    }

    /// `Y ↙ b` for a legal slot `b`.
    pub fn add_block(&self, y: &Wall, b: &BlockRef) -> Result<Wall, WallError> {
        self.check_wall(y)?;
        self.next_slots(b.column, y.column(b.column))
            .into_iter()
            .find(|m| m.block == *b && self.change_ok(y, b.column, m.result, Window::ALL))
            .map(|m| y.with_column(b.column, m.result))
            .ok_or_else(|| WallError::IllegalBlock(format!("cannot add {b:?} to {y}")))
    }

    /// `Y ↗ b` for a removable block `b`.
    pub fn remove_block(&self, y: &Wall, b: &BlockRef) -> Result<Wall, WallError> {
        self.check_wall(y)?;
        self.top_blocks(b.column, y.column(b.column))
            .into_iter()
            .find(|m| m.block == *b && self.change_ok(y, b.column, m.result, Window::ALL))
            .map(|m| y.with_column(b.column, m.result))
            .ok_or_else(|| WallError::IllegalBlock(format!("cannot remove {b:?} from {y}")))
    }

    /// Replace one column without any legality check.
    pub fn set_column(&self, y: &Wall, k: usize, col: Column) -> Wall {
        y.with_column(k, col)
    }

    /// The column state after removing one vertical period (a δ-column)
    /// from the top of `col`, if that is geometrically possible.
    fn drop_period(&self, col: Column) -> Option<Column> {
        let delta = self.pattern.vert_period as u32;
        if col.cubes < delta {
            return None;
        }
        let cubes = col.cubes - delta;
        if cubes == 0 && self.prefilled && col.top != TopState::Flat {
            // The remaining half of level 0 must be the ground's own half.
            let ground_half = match self.pattern.prefill() {
                GroundPrefill::LowerHalfOfLevel0 => TopState::HalfII,
                _ => TopState::BackIII,
            };
            return (col.top == ground_half).then_some(Column::GROUND);
        }
        if cubes == 0 && col.top == TopState::Flat && self.prefilled {
            // The δ-column would have to include the ground half.
            return None;
        }
        Some(Column::new(cubes, col.top))
    }

    /// Whether column `k` of `y` ends in a removable δ-column.
    pub fn has_removable_delta(&self, y: &Wall, k: usize) -> bool {
        match self.drop_period(y.column(k)) {
            Some(new) => {
                debug_assert_eq!(
                    i64::from(self.count(y.column(k)) - self.count(new)),
                    self.data.blocks_per_delta()
                );
                self.change_ok(y, k, new, Window::ALL)
            }
            None => false,
        }
    }

    /// A proper wall is reduced when no column has a removable δ-column.
    pub fn is_reduced(&self, y: &Wall) -> bool {
        (0..y.columns.len()).all(|k| !self.has_removable_delta(y, k))
    }

    /// `Y ≻ Z` total order: column-wise partition order, then block counts
    /// lexicographically from column 0, then top-state codes from column 0.
    pub fn total_cmp(&self, y: &Wall, z: &Wall) -> Ordering {
        let (py, pz) = (self.partition_of(y), self.partition_of(z));
        py.column_cmp(&pz)
            .then_with(|| py.0.cmp(&pz.0))
            .then_with(|| {
                let len = y.columns.len().max(z.columns.len());
                (0..len)
                    .map(|k| y.column(k).top.code().cmp(&z.column(k).top.code()))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            })
    }

    /// The ladder at `(k, l)`: `(k, l), (k-1, l+Δ'), ..., (0, l+kΔ')`.
    pub fn ladder(&self, k: usize, l: usize) -> Vec<(usize, usize)> {
        ladder((k, l), &self.data)
    }

    /// Occupied added-block positions, per column.
    fn occupancy(&self, y: &Wall) -> BTreeMap<usize, Vec<BlockRef>> {
        y.columns
            .iter()
            .enumerate()
            .map(|(k, c)| (k, self.column_blocks(k, *c)))
            .collect()
    }

    /// Rebuild a wall from occupied positions; fails if some column is not
    /// a legal stack.
    fn wall_from_occupancy(&self, occ: &BTreeMap<usize, Vec<BlockRef>>) -> Result<Wall, WallError> {
        let width = occ.keys().next_back().map_or(0, |k| k + 1);
        let mut columns = Vec::with_capacity(width);
        for k in 0..width {
            let blocks = occ.get(&k).cloned().unwrap_or_default();
            let mut col = Column::GROUND;
            let mut remaining: Vec<BlockRef> = blocks;
            while !remaining.is_empty() {
                let next = self.next_slots(k, col).into_iter().find_map(|m| {
                    remaining.iter().position(|b| *b == m.block).map(|p| (p, m))
                });
                match next {
                    Some((p, m)) => {
                        remaining.swap_remove(p);
                        col = m.result;
                    }
                    None => {
                        return Err(WallError::IllegalBlock(format!(
                            "column {k} is not a legal stack"
                        )))
                    }
                }
            }
            columns.push(col);
        }
        Ok(Wall::new(self.tag(), self.lambda(), columns))
    }

    /// The color-`i` positions (excluding ground halves) of the cube at
    /// `(k, l)`, bottom half first.
    fn color_positions(&self, k: usize, l: usize, i: usize) -> Vec<BlockRef> {
        let parts: &[Part] = match self.pattern.cube_at(k, l).kind() {
            CubeKind::Whole => &[Part::Whole],
            CubeKind::SplitHoriz => &[Part::Lower, Part::Upper],
            CubeKind::SplitVert => &[Part::Back, Part::Front],
        };
        parts
            .iter()
            .filter(|p| {
                !(self.level_prefilled(l) && matches!(p, Part::Lower | Part::Back))
            })
            .map(|p| self.block(k, l, *p))
            .filter(|b| b.color == i)
            .collect()
    }

    /// The reduced form `Y^R`, sweeping ladders in the default order.
    pub fn reduced_form(&self, y: &Wall) -> Result<Wall, WallError> {
        self.reduced_form_with_order(y, LadderOrder::BottomUp)
    }

    /// The reduced form `Y^R`: on every ladder, slide each color's blocks
    /// down to the lowest positions of that color; repeat to a fixpoint.
    pub fn reduced_form_with_order(&self, y: &Wall, order: LadderOrder) -> Result<Wall, WallError> {
        self.ensure_proper(y)?;
        let step = self.data.ladder_step;
        let size = self.data.size();
        let mut occ = self.occupancy(y);
        loop {
            let top_level = occ
                .values()
                .flat_map(|bs| bs.iter().map(|b| b.level))
                .max()
                .unwrap_or(0);
            let width = occ.keys().next_back().map_or(0, |k| k + 1);
            // Maximal ladders start below level Δ'; a ladder can only meet a
            // block if its bottom column is within reach of the wall.
            let max_bottom = width + top_level / step + 1;
            let mut ladders: Vec<(usize, usize)> = (0..=max_bottom)
                .flat_map(|k| (0..step).map(move |l| (k, l)))
                .collect();
            ladders.sort_by_key(|&(k, l)| (l, Reverse(k)));
            if order == LadderOrder::TopDown {
                ladders.reverse();
            }
            let mut changed = false;
            for (k0, l0) in ladders {
                let cells = ladder((k0, l0), &self.data);
                for i in 0..size {
                    let positions: Vec<BlockRef> = cells
                        .iter()
                        .flat_map(|&(k, l)| self.color_positions(k, l, i))
                        .collect();
                    if positions.is_empty() {
                        continue;
                    }
                    let occupied: Vec<bool> = positions
                        .iter()
                        .map(|b| occ.get(&b.column).is_some_and(|v| v.contains(b)))
                        .collect();
                    let r = occupied.iter().filter(|x| **x).count();
                    if occupied.iter().take(r).all(|x| *x) {
                        continue;
                    }
                    for (idx, b) in positions.iter().enumerate() {
                        let entry = occ.entry(b.column).or_default();
                        entry.retain(|x| x != b);
                        if idx < r {
                            entry.push(*b);
                        }
                    }
                    changed = true;
                }
            }
            occ.retain(|_, v| !v.is_empty());
            if !changed {
                break;
            }
        }
        let out = self.wall_from_occupancy(&occ)?;
        self.ensure_proper(&out)?;
        Ok(out)
    }

    /// The top block of the leftmost nonempty column (the front half when a
    /// full vertically split cube is on top).
    pub fn leftmost_top_block(&self, y: &Wall) -> Result<BlockRef, WallError> {
        let k = y.columns.len().checked_sub(1).ok_or(WallError::NothingToRemove)?;
        let col = y.column(k);
        let tops = self.top_blocks(k, col);
        tops.iter()
            .find(|m| m.block.part == Part::Front)
            .or_else(|| tops.first())
            .map(|m| m.block)
            .ok_or(WallError::NothingToRemove)
    }

    /// One bar-reduction step: remove every `i`-block on the ladder through
    /// the top block of the leftmost column.  Returns `(Ȳ, i, r)`.
    pub fn bar_step(&self, y: &Wall) -> Result<(Wall, usize, usize), WallError> {
        self.ensure_proper(y)?;
        let b = self.leftmost_top_block(y)?;
        let i = b.color;
        let cells = ladder((b.column, b.level), &self.data);
        let mut occ = self.occupancy(y);
        let mut removed = 0;
        for (k, l) in cells {
            for pos in self.color_positions(k, l, i) {
                if let Some(v) = occ.get_mut(&k) {
                    let before = v.len();
                    v.retain(|x| *x != pos);
                    removed += before - v.len();
                }
            }
        }
        occ.retain(|_, v| !v.is_empty());
        let out = self.wall_from_occupancy(&occ)?;
        self.ensure_proper(&out)?;
        Ok((out, i, removed))
    }

    /// Whether `y` consists only of columns that are whole multiples of the
    /// δ-column (the shape of the maximal vectors).
    pub fn is_delta_stack(&self, y: &Wall) -> bool {
        let n_delta = self.data.blocks_per_delta() as u32;
        y.columns.iter().all(|c| {
            let mut col = *c;
            while !col.is_ground() {
                match self.drop_period(col) {
                    Some(next) => col = next,
                    None => return false,
                }
            }
            self.count(*c).is_multiple_of(n_delta)
        })
    }
}

/// The ladder at coordinate `c = (k, l)`.
pub fn ladder(c: (usize, usize), data: &CartanData) -> Vec<(usize, usize)> {
    let (k, l) = c;
    (0..=k).map(|j| (k - j, l + j * data.ladder_step)).collect()
}
