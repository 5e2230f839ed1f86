//! The Fock space action of `e_i`, `f_i` and `K_i` on proper walls.
//!
//! For a wall `Y` and color `i`:
//!
//! * `f_i Y = Σ_b q_i^{L_i(b;Y)} (Y ↙ b)` and `e_i Y = Σ_b q_i^{-R_i(b;Y)} (Y ↗ b)`,
//!   where `L`/`R` are signed signature sums of the part of the wall strictly
//!   left/right of `b`, computed as a standalone wall.
//! * Half-height (type II) colors skip the run of equal-height columns
//!   containing `b` and may carry the factor `q^{-1}(1 - (-q^2)^{l+1})`.
//! * Half-thickness (type III) colors also act through *virtual* slots and
//!   blocks, which shift a run of `l+1` lone halves front↔back with the
//!   scalar `(-q_i)^l`.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::cartan::{AlgebraTag, Weight};
use crate::pattern::CubeKind;
use crate::qlaurent::{quantum_factorial, LaurentError, Poly};
use crate::wall::{BlockRef, Column, Part, Space, TopState, Wall, WallError, Window};

/// Errors of the Fock space layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FockError {
    #[error(transparent)]
    Wall(#[from] WallError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error("Unreachable: {0}")]
    Unreachable(String),
    #[error("InvariantViolation: {0}")]
    Invariant(String),
}

/// One term produced by `e_i` or `f_i` on a single wall.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FockMove {
    pub target: Wall,
    /// Full coefficient of `target`.
    pub coeff: Poly,
    /// The (possibly virtual) slot or block; for virtual moves this is the
    /// position at the end of the shifted run.
    pub block: BlockRef,
    /// The part of the coefficient that is not a power of `q_i`: the
    /// type-II factor, `(-q_i)^l` for virtual moves, or `1`.
    pub factor: Poly,
    /// Number of shifted columns `l(b)` for virtual moves and type-II factors.
    pub shift: usize,
    pub is_virtual: bool,
}

/// `q^{-1}(1 - (-q^2)^{l+1})`.
pub fn half_height_factor(l: usize) -> Poly {
    let sign = if (l + 1).is_multiple_of(2) { -1 } else { 1 };
    Poly::from_i64_terms(&[(-1, 1), (2 * l as i64 + 1, sign)])
}

/// `(-q^s)^l`.
fn neg_q_pow(s: i64, l: usize) -> Poly {
    let sign = if l.is_multiple_of(2) { 1 } else { -1 };
    Poly::from_i64_terms(&[(s * l as i64, sign)])
}

fn window_left_of(k: usize) -> Window {
    Window { lo: k + 1, hi: None }
}

fn window_right_of(k: usize) -> Window {
    match k.checked_sub(1) {
        Some(h) => Window { lo: 0, hi: Some(h) },
        None => Window { lo: 1, hi: Some(0) },
    }
}

const EMPTY: Window = Window { lo: 1, hi: Some(0) };

/// A maximal run `lo..=hi` of at least two equal-height columns each topped
/// by a lone half-thickness block.
#[derive(Debug, Clone, Copy)]
struct LoneRun {
    lo: usize,
    hi: usize,
}

impl Space {
    fn lone_runs(&self, y: &Wall) -> Vec<LoneRun> {
        let counts = self.counts(y);
        let lone = |k: usize| {
            matches!(y.column(k).top, TopState::FrontIII | TopState::BackIII) && counts[k] > 0
        };
        let mut runs = Vec::new();
        let mut k = 0;
        while k < counts.len() {
            if !lone(k) {
                k += 1;
                continue;
            }
            let mut hi = k;
            while hi + 1 < counts.len() && lone(hi + 1) && counts[hi + 1] == counts[k] {
                hi += 1;
            }
            if hi > k {
                runs.push(LoneRun { lo: k, hi });
            }
            k = hi + 1;
        }
        runs
    }

    fn q_i_pow(&self, i: usize, e: i64) -> Poly {
        Poly::q_pow(self.s(i) * e)
    }

    /// All terms of `f_i Y`, before merging equal targets.
    pub fn f_moves(&self, y: &Wall, i: usize) -> Vec<FockMove> {
        let kind = self.color_kind(i);
        let counts = self.counts(y);
        let count = |k: usize| counts.get(k).copied().unwrap_or(0);
        let mut out = Vec::new();
        for k in Window::ALL.scan(y.columns.len()) {
            for mv in self.column_additions(y, k, i, Window::ALL) {
                let target = self.set_column(y, k, mv.result);
                let (window, factor, shift) = match kind {
                    CubeKind::SplitHoriz => {
                        // Skip the run of equal-height columns to the left;
                        // a run of empty columns never ends.
                        let mut run_left = k;
                        while count(k) > 0 && count(run_left + 1) == count(k) {
                            run_left += 1;
                        }
                        let window = if count(k) == 0 { EMPTY } else { window_left_of(run_left) };
                        if y.column(k).top == TopState::HalfII {
                            let l = run_left - k;
                            (window, half_height_factor(l), l)
                        } else {
                            (window, Poly::one(), 0)
                        }
                    }
                    _ => (window_left_of(k), Poly::one(), 0),
                };
                let l_exp = self.signature_sum(y, i, window);
                out.push(FockMove {
                    coeff: &self.q_i_pow(i, l_exp) * &factor,
                    target,
                    block: mv.block,
                    factor,
                    shift,
                    is_virtual: false,
                });
            }
        }
        if kind == CubeKind::SplitVert {
            for run in self.lone_runs(y) {
                let top = y.column(run.hi);
                let level = top.cubes as usize;
                let (slot_part, flipped) = match top.top {
                    TopState::BackIII => (Part::Front, TopState::FrontIII),
                    _ => (Part::Back, TopState::BackIII),
                };
                let slot = self
                    .next_slots(run.hi, top)
                    .into_iter()
                    .find(|m| m.block.part == slot_part)
                    .expect("a lone half leaves the other half open");
                if slot.block.color != i {
                    continue;
                }
                let mut target = y.clone();
                for c in run.lo + 1..=run.hi {
                    target = self.set_column(&target, c, Column::new(level as u32, flipped));
                }
                target = self.set_column(&target, run.lo, Column::new(level as u32 + 1, TopState::Flat));
                if !self.is_proper(&target) {
                    continue;
                }
                let l = run.hi - run.lo;
                let factor = neg_q_pow(self.s(i), l);
                let l_exp = self.signature_sum(y, i, window_left_of(run.hi));
                out.push(FockMove {
                    coeff: &self.q_i_pow(i, l_exp) * &factor,
                    target,
                    block: slot.block,
                    factor,
                    shift: l,
                    is_virtual: true,
                });
            }
        }
        out
    }

    /// All terms of `e_i Y`, before merging equal targets.
    pub fn e_moves(&self, y: &Wall, i: usize) -> Vec<FockMove> {
        let kind = self.color_kind(i);
        let counts = self.counts(y);
        let count = |k: usize| counts.get(k).copied().unwrap_or(0);
        let mut out = Vec::new();
        for k in 0..y.columns.len() {
            for mv in self.column_removals(y, k, i, Window::ALL) {
                let target = self.set_column(y, k, mv.result);
                let (window, factor, shift) = match kind {
                    CubeKind::SplitHoriz => {
                        // Skip the run of equal-height columns to the right.
                        let mut m = k;
                        while m >= 1 && count(m - 1) == count(k) {
                            m -= 1;
                        }
                        let window = window_right_of(m);
                        if y.column(k).top == TopState::HalfII {
                            let l = k - m;
                            (window, half_height_factor(l), l)
                        } else {
                            (window, Poly::one(), 0)
                        }
                    }
                    _ => (window_right_of(k), Poly::one(), 0),
                };
                let r_exp = self.signature_sum(y, i, window);
                out.push(FockMove {
                    coeff: &self.q_i_pow(i, -r_exp) * &factor,
                    target,
                    block: mv.block,
                    factor,
                    shift,
                    is_virtual: false,
                });
            }
        }
        if kind == CubeKind::SplitVert {
            for run in self.lone_runs(y) {
                let bottom = y.column(run.lo);
                let level = bottom.cubes as usize;
                let flipped = match bottom.top {
                    TopState::BackIII => TopState::FrontIII,
                    _ => TopState::BackIII,
                };
                let block = self.top_blocks(run.lo, bottom)[0].block;
                if block.color != i {
                    continue;
                }
                let mut target = y.clone();
                for c in run.lo..run.hi {
                    target = self.set_column(&target, c, Column::new(level as u32, flipped));
                }
                target = self.set_column(&target, run.hi, Column::new(level as u32, TopState::Flat));
                if !self.is_proper(&target) {
                    continue;
                }
                let l = run.hi - run.lo;
                let factor = neg_q_pow(self.s(i), l);
                let r_exp = self.signature_sum(y, i, window_right_of(run.lo));
                out.push(FockMove {
                    coeff: &self.q_i_pow(i, -r_exp) * &factor,
                    target,
                    block,
                    factor,
                    shift: l,
                    is_virtual: true,
                });
            }
        }
        out
    }

    /// `f_i Y` as a vector.
    pub fn f_wall(&self, y: &Wall, i: usize) -> FockVector {
        let mut v = FockVector::zero(self.tag(), self.lambda());
        for m in self.f_moves(y, i) {
            v.add_term(m.target, &m.coeff);
        }
        v.weight = Some(self.weight(y).minus_alpha(i));
        v
    }

    /// `e_i Y` as a vector.
    pub fn e_wall(&self, y: &Wall, i: usize) -> FockVector {
        let mut v = FockVector::zero(self.tag(), self.lambda());
        for m in self.e_moves(y, i) {
            v.add_term(m.target, &m.coeff);
        }
        v.weight = Some(self.weight(y).plus_alpha(i));
        v
    }

    /// Linear extension of `f_i`.
    pub fn f_apply(&self, v: &FockVector, i: usize) -> FockVector {
        self.apply_linear(v, |y| self.f_wall(y, i))
    }

    /// Linear extension of `e_i`.
    pub fn e_apply(&self, v: &FockVector, i: usize) -> FockVector {
        self.apply_linear(v, |y| self.e_wall(y, i))
    }

    fn apply_linear<F: Fn(&Wall) -> FockVector>(&self, v: &FockVector, op: F) -> FockVector {
        let mut out = FockVector::zero(v.tag, v.lambda);
        for (y, c) in &v.terms {
            let image = op(y);
            out.add_scaled(&image, c);
            if out.weight.is_none() {
                out.weight = image.weight.clone();
            }
        }
        out
    }

    /// `⟨h_i, wt⟩` of a homogeneous vector (0 for the zero vector).
    pub fn qh_exponent(&self, v: &FockVector, i: usize) -> i64 {
        v.terms
            .keys()
            .next()
            .map_or(0, |y| self.data.pairing(&self.weight(y), i))
    }

    /// `K_i v = q_i^{⟨h_i, wt⟩} v`, term by term.
    pub fn k_apply(&self, v: &FockVector, i: usize) -> FockVector {
        let mut out = FockVector::zero(v.tag, v.lambda);
        for (y, c) in &v.terms {
            let e = self.data.pairing(&self.weight(y), i);
            out.add_term(y.clone(), &(c * &self.q_i_pow(i, e)));
        }
        out.weight = v.weight.clone();
        out
    }

    /// `f_i^{(r)} v = f_i^r v / [r]_i!`, with exact division.
    pub fn f_divided(&self, v: &FockVector, i: usize, r: usize) -> Result<FockVector, FockError> {
        self.divided(v, i, r, false)
    }

    /// `(e_i f_j - f_j e_i) Y == δ_ij [⟨h_i, wt Y⟩]_i Y`.
    pub fn check_commutator(&self, y: &Wall, i: usize, j: usize) -> bool {
        let v = FockVector::from_wall(self, y);
        let lhs = self
            .e_apply(&self.f_apply(&v, j), i)
            .sub(&self.f_apply(&self.e_apply(&v, i), j));
        let mut rhs = FockVector::zero(v.tag, v.lambda);
        if i == j {
            let h = self.data.pairing(&self.weight(y), i);
            rhs.add_term(y.clone(), &crate::qlaurent::qint(h, self.s(i)));
        }
        lhs.same_terms(&rhs)
    }

    /// Quantum Serre relations at `Y` for `i ≠ j`:
    /// `Σ_k (-1)^k x_i^{(1-a_ij-k)} x_j x_i^{(k)} Y = 0` for `x = f` and `x = e`.
    pub fn check_serre(&self, y: &Wall, i: usize, j: usize) -> Result<bool, FockError> {
        if i == j {
            return Ok(true);
        }
        let v = FockVector::from_wall(self, y);
        let n = (1 - self.data.cartan_matrix[i][j]) as usize;
        for raising in [false, true] {
            let mut total = FockVector::zero(v.tag, v.lambda);
            for k in 0..=n {
                let mut cur = self.divided(&v, i, k, raising)?;
                cur = if raising { self.e_apply(&cur, j) } else { self.f_apply(&cur, j) };
                cur = self.divided(&cur, i, n - k, raising)?;
                let sign = if k % 2 == 0 { 1 } else { -1 };
                total.add_scaled(&cur, &Poly::constant(sign));
            }
            if !total.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `e_i^{(r)} v = e_i^r v / [r]_i!`, with exact division.
    pub fn e_divided(&self, v: &FockVector, i: usize, r: usize) -> Result<FockVector, FockError> {
        self.divided(v, i, r, true)
    }

    fn divided(&self, v: &FockVector, i: usize, r: usize, raising: bool) -> Result<FockVector, FockError> {
        let mut cur = v.clone();
        for _ in 0..r {
            cur = if raising { self.e_apply(&cur, i) } else { self.f_apply(&cur, i) };
        }
        let fact = quantum_factorial::<num_bigint::BigInt>(r as i64, self.s(i))?;
        let mut out = FockVector::zero(v.tag, v.lambda);
        out.weight = cur.weight.clone();
        for (y, c) in cur.terms {
            out.add_term(y, &c.exact_div(&fact)?);
        }
        Ok(out)
    }

    /// The closed-form coefficient of `Z` in `f_i^{(r)} Y`, built from the
    /// unique chain `Y = Y_0, ..., Y_r = Z` whose added (or virtually added)
    /// slots move upward or rightward.
    pub fn q_closed_form(&self, y: &Wall, z: &Wall, i: usize, r: usize) -> Result<Poly, FockError> {
        let chains = self.closed_form_chains(y, z, i, r);
        let chain = match chains.as_slice() {
            [] => {
                return Err(FockError::Unreachable(format!(
                    "no ordered f_{i} chain of length {r} from {y} to {z}"
                )))
            }
            [c] => c,
            _ => {
                return Err(FockError::Invariant(format!(
                    "{} ordered f_{i} chains from {y} to {z}",
                    chains.len()
                )))
            }
        };
        let mut q_circ = Poly::one();
        for m in chain {
            q_circ = &q_circ * &m.coeff;
        }
        let r64 = r as i64;
        if self.color_kind(i) != CubeKind::SplitHoriz {
            return Ok(&q_circ * &self.q_i_pow(i, r64 * (r64 - 1) / 2));
        }
        // Half-height colors: classify each added half in Z.
        let b: Vec<BlockRef> = chain.iter().map(|m| m.block).collect();
        let beneath_prev = |k: usize| {
            k >= 1
                && b[k].part == Part::Upper
                && b[k - 1].part == Part::Lower
                && b[k - 1].column == b[k].column
                && b[k - 1].level == b[k].level
        };
        let mut j1 = Vec::new();
        let mut j2 = Vec::new();
        let mut j3 = Vec::new();
        for (k, block) in b.iter().enumerate().take(r) {
            if beneath_prev(k) {
                j1.push(k);
            } else if block.part == Part::Upper {
                j2.push(k);
            } else if !(k + 1 < r && beneath_prev(k + 1)) {
                j3.push(k);
            }
        }
        // b_k (in J2) and b_{k-1} share an i-component of Z when b_{k-1} is
        // a lone lower half on the same level and every column between them
        // holds a lone lower half on that level too.
        let same_component = |k: usize| {
            if k == 0 || !j3.contains(&(k - 1)) {
                return false;
            }
            let (prev, cur) = (b[k - 1], b[k]);
            prev.level == cur.level
                && prev.column > cur.column
                && (cur.column + 1..prev.column).all(|c| {
                    z.column(c) == Column::new(cur.level as u32, TopState::HalfII)
                })
        };
        let s_set: Vec<usize> = j2.iter().copied().filter(|&k| same_component(k)).collect();
        let (l, m, n) = (j1.len() as i64, j2.len() as i64, j3.len() as i64);
        let c2 = |x: i64| x * (x - 1) / 2;
        let sigma = 4 * c2(l) + c2(m) + c2(n) + 2 * l * (m + n) + m * n;
        let mut denom = crate::qlaurent::qint(2, 1).pow(l as u32);
        for &k in &s_set {
            denom = &denom * &chain[k].factor.shift(1);
        }
        Ok((&q_circ * &Poly::q_pow(sigma)).exact_div(&denom)?)
    }

    /// Every chain of single `f_i` moves from `y` to `z` in which each slot
    /// lies on top of, or to the right of, the previous one.
    pub fn closed_form_chains(&self, y: &Wall, z: &Wall, i: usize, r: usize) -> Vec<Vec<FockMove>> {
        let mut found = Vec::new();
        let mut path = Vec::new();
        self.chain_search(y, z, i, r, &mut path, &mut found);
        found
    }

    fn chain_search(
        &self,
        cur: &Wall,
        z: &Wall,
        i: usize,
        left: usize,
        path: &mut Vec<FockMove>,
        found: &mut Vec<Vec<FockMove>>,
    ) {
        if left == 0 {
            if cur == z {
                found.push(path.clone());
            }
            return;
        }
        for m in self.f_moves(cur, i) {
            if let Some(prev) = path.last() {
                if !slot_follows(&prev.block, &m.block) {
                    continue;
                }
            }
            path.push(m.clone());
            self.chain_search(&m.target, z, i, left - 1, path, found);
            path.pop();
        }
    }
}

/// Whether `next` lies on top of `prev` (same column, higher) or strictly to
/// its right.
fn slot_follows(prev: &BlockRef, next: &BlockRef) -> bool {
    if next.column < prev.column {
        return true;
    }
    if next.column > prev.column {
        return false;
    }
    next.level > prev.level
        || (next.level == prev.level && prev.part == Part::Lower && next.part == Part::Upper)
        || (next.level == prev.level
            && matches!(
                (prev.part, next.part),
                (Part::Front, Part::Back) | (Part::Back, Part::Front)
            ))
}

/// A finite `Z[q, q^-1]`-combination of proper walls of one `(tag, Λ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FockVector {
    pub tag: AlgebraTag,
    pub lambda: usize,
    /// Common weight of all terms (`None` for a zero vector of unknown weight).
    pub weight: Option<Weight>,
    pub terms: BTreeMap<Wall, Poly>,
}

impl FockVector {
    pub fn zero(tag: AlgebraTag, lambda: usize) -> Self {
        FockVector { tag, lambda, weight: None, terms: BTreeMap::new() }
    }

    /// The vector `1·Y`.
    pub fn from_wall(space: &Space, y: &Wall) -> Self {
        let mut v = FockVector::zero(y.tag, y.lambda);
        v.add_term(y.clone(), &Poly::one());
        v.weight = Some(space.weight(y));
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `y` (zero if absent).
    pub fn coeff(&self, y: &Wall) -> Poly {
        self.terms.get(y).cloned().unwrap_or_else(Poly::zero)
    }

    /// `self += c·y`.
    pub fn add_term(&mut self, y: Wall, c: &Poly) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(y).or_insert_with(Poly::zero);
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    /// `self += c·other`.
    pub fn add_scaled(&mut self, other: &FockVector, c: &Poly) {
        for (y, d) in &other.terms {
            self.add_term(y.clone(), &(d * c));
        }
        if self.weight.is_none() {
            self.weight = other.weight.clone();
        }
    }

    /// `self - other`.
    pub fn sub(&self, other: &FockVector) -> FockVector {
        let mut out = self.clone();
        out.add_scaled(other, &Poly::constant(-1));
        out
    }

    /// `c·self`.
    pub fn scale(&self, c: &Poly) -> FockVector {
        let mut out = FockVector::zero(self.tag, self.lambda);
        out.add_scaled(self, c);
        out.weight = self.weight.clone();
        out
    }

    /// Equality of the term maps (weights of zero vectors are ignored).
    pub fn same_terms(&self, other: &FockVector) -> bool {
        self.terms == other.terms
    }

    /// Terms sorted descending by the total order.
    pub fn sorted_terms(&self, space: &Space) -> Vec<(&Wall, &Poly)> {
        let mut v: Vec<(&Wall, &Poly)> = self.terms.iter().collect();
        v.sort_by(|a, b| space.total_cmp(b.0, a.0));
        v
    }

    /// Canonical JSON: `{weight, terms: [{wall, coeff}]}`, terms descending.
    pub fn to_json(&self, space: &Space) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .sorted_terms(space)
            .into_iter()
            .map(|(w, c)| serde_json::json!({ "wall": w.to_json(), "coeff": c }))
            .collect();
        serde_json::json!({ "weight": self.weight, "terms": terms })
    }

    /// Parse the canonical JSON form.
    pub fn from_json(space: &Space, value: &serde_json::Value) -> Result<FockVector, FockError> {
        let bad = |m: &str| FockError::Wall(WallError::Parse(m.to_string()));
        let terms = value
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| bad("missing terms array"))?;
        let mut v = FockVector::zero(space.tag(), space.lambda());
        for t in terms {
            let wall: Wall = serde_json::from_value(t.get("wall").cloned().unwrap_or_default())
                .map_err(|e| bad(&e.to_string()))?;
            let coeff: Poly = serde_json::from_value(t.get("coeff").cloned().unwrap_or_default())
                .map_err(|e| bad(&e.to_string()))?;
            if v.weight.is_none() {
                v.weight = Some(space.weight(&wall));
            }
            v.add_term(wall, &coeff);
        }
        Ok(v)
    }
}
