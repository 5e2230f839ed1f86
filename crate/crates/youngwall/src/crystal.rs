//! `i`-signatures, Kashiwara operators and the crystal of reduced proper walls.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use crate::cartan::Weight;
use crate::wall::{BlockRef, ColumnMove, Space, Wall, WallError, Window};

/// The signature symbols of one column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignatureEntry {
    pub column: usize,
    /// Number of `-` symbols (successively removable `i`-blocks).
    pub minus: usize,
    /// Number of `+` symbols (successively admissible `i`-slots).
    pub plus: usize,
    /// The blocks realizing the `-` symbols, top block first.
    pub removals: Vec<BlockRef>,
    /// The slots realizing the `+` symbols, lowest slot first.
    pub additions: Vec<BlockRef>,
}

impl SignatureEntry {
    /// `"−−"`, `"−+"`, `"+"`, ... (ASCII `-`).
    pub fn symbols(&self) -> String {
        "-".repeat(self.minus) + &"+".repeat(self.plus)
    }
}

/// A signed symbol of the reduced signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ReducedSymbol {
    pub column: usize,
    pub plus: bool,
}

/// Raw per-column signature and its `(+,-)`-cancelled reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Signature {
    /// Nonempty entries, leftmost column (largest index) first.
    pub raw: Vec<SignatureEntry>,
    /// Remaining `-`'s followed by remaining `+`'s, in reading order.
    pub reduced: Vec<ReducedSymbol>,
}

impl Signature {
    pub fn reduced_string(&self) -> String {
        self.reduced.iter().map(|s| if s.plus { '+' } else { '-' }).collect()
    }

    pub fn raw_string(&self) -> String {
        self.raw.iter().map(|e| e.symbols()).collect::<Vec<_>>().join(",")
    }

    /// `ε_i`: number of `-` in the reduced signature.
    pub fn eps(&self) -> usize {
        self.reduced.iter().filter(|s| !s.plus).count()
    }

    /// `φ_i`: number of `+` in the reduced signature.
    pub fn phi(&self) -> usize {
        self.reduced.iter().filter(|s| s.plus).count()
    }
}

/// A directed, colored crystal graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrystalGraph {
    /// Vertices sorted descending by the total order; index 0 is the root
    /// only when it is the largest, so the root is recorded separately.
    pub vertices: Vec<Wall>,
    /// `(source index, color, target index)`, sorted.
    pub edges: Vec<(usize, usize, usize)>,
    pub root: usize,
}

impl Space {
    /// Signature entry of column `k` relative to `window`.
    pub fn column_signature(&self, y: &Wall, k: usize, i: usize, window: Window) -> SignatureEntry {
        let mut removals = Vec::new();
        let mut cur = y.clone();
        while removals.len() < 2 {
            match self.column_removals(&cur, k, i, window).first() {
                Some(ColumnMove { block, result }) => {
                    removals.push(*block);
                    cur = self.set_column(&cur, k, *result);
                }
                None => break,
            }
        }
        let mut additions = Vec::new();
        let mut cur = y.clone();
        while additions.len() < 2 {
            match self.column_additions(&cur, k, i, window).first() {
                Some(ColumnMove { block, result }) => {
                    additions.push(*block);
                    cur = self.set_column(&cur, k, *result);
                }
                None => break,
            }
        }
        SignatureEntry {
            column: k,
            minus: removals.len(),
            plus: additions.len(),
            removals,
            additions,
        }
    }

    /// Raw signature entries over a window, leftmost column first.
    pub fn raw_signature(&self, y: &Wall, i: usize, window: Window) -> Vec<SignatureEntry> {
        if window.is_empty() {
            return Vec::new();
        }
        let mut out: Vec<SignatureEntry> = window
            .scan(y.columns.len())
            .map(|k| self.column_signature(y, k, i, window))
            .filter(|e| e.minus + e.plus > 0)
            .collect();
        out.reverse();
        out
    }

    /// `Σ (#+ − #−)` of the raw signature over `window`; equals `φ_i − ε_i`
    /// of the part of the wall inside the window.
    pub fn signature_sum(&self, y: &Wall, i: usize, window: Window) -> i64 {
        self.raw_signature(y, i, window)
            .iter()
            .map(|e| e.plus as i64 - e.minus as i64)
            .sum()
    }

    /// The `i`-signature of a proper wall.
    pub fn signature(&self, y: &Wall, i: usize) -> Signature {
        let raw = self.raw_signature(y, i, Window::ALL);
        let mut minus: Vec<ReducedSymbol> = Vec::new();
        let mut plus: Vec<ReducedSymbol> = Vec::new();
        for e in &raw {
            for _ in 0..e.minus {
                if plus.pop().is_none() {
                    minus.push(ReducedSymbol { column: e.column, plus: false });
                }
            }
            for _ in 0..e.plus {
                plus.push(ReducedSymbol { column: e.column, plus: true });
            }
        }
        minus.extend(plus);
        Signature { raw, reduced: minus }
    }

    pub fn eps(&self, y: &Wall, i: usize) -> usize {
        self.signature(y, i).eps()
    }

    pub fn phi(&self, y: &Wall, i: usize) -> usize {
        self.signature(y, i).phi()
    }

    /// `F̃_i Y`: add an `i`-block at the leftmost unmatched `+`.
    pub fn kashiwara_f(&self, y: &Wall, i: usize) -> Option<Wall> {
        let sig = self.signature(y, i);
        let k = sig.reduced.iter().find(|s| s.plus)?.column;
        let mv = *self.column_additions(y, k, i, Window::ALL).first()?;
        Some(self.set_column(y, k, mv.result))
    }

    /// `Ẽ_i Y`: remove the `i`-block at the rightmost unmatched `-`.
    pub fn kashiwara_e(&self, y: &Wall, i: usize) -> Option<Wall> {
        let sig = self.signature(y, i);
        let k = sig.reduced.iter().rev().find(|s| !s.plus)?.column;
        let mv = *self.column_removals(y, k, i, Window::ALL).first()?;
        Some(self.set_column(y, k, mv.result))
    }

    /// Breadth-first closure of the ground wall under all `F̃_i`, truncated
    /// at `max_blocks` added blocks.
    pub fn crystal_graph(&self, max_blocks: usize) -> CrystalGraph {
        let size = self.data.size();
        let root = self.ground();
        let mut seen: HashSet<Wall> = HashSet::from([root.clone()]);
        let mut queue = VecDeque::from([(root.clone(), 0usize)]);
        let mut raw_edges: Vec<(Wall, usize, Wall)> = Vec::new();
        while let Some((y, depth)) = queue.pop_front() {
            if depth == max_blocks {
                continue;
            }
            for i in 0..size {
                if let Some(z) = self.kashiwara_f(&y, i) {
                    raw_edges.push((y.clone(), i, z.clone()));
                    if seen.insert(z.clone()) {
                        queue.push_back((z, depth + 1));
                    }
                }
            }
        }
        let mut vertices: Vec<Wall> = seen.into_iter().collect();
        vertices.sort_by(|a, b| self.total_cmp(b, a));
        let index: BTreeMap<&Wall, usize> = vertices.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut edges: Vec<(usize, usize, usize)> = raw_edges
            .iter()
            .map(|(a, i, b)| (index[a], *i, index[b]))
            .collect();
        edges.sort();
        edges.dedup();
        let root_idx = index[&root];
        CrystalGraph { vertices, edges, root: root_idx }
    }

    /// All proper walls of the given weight, sorted descending by the total
    /// order.
    pub fn enumerate_proper(&self, weight: &Weight) -> Vec<Wall> {
        let target = &weight.k;
        let total: i64 = target.iter().sum();
        let mut level: BTreeSet<Wall> = BTreeSet::from([self.ground()]);
        for _ in 0..total {
            let mut next = BTreeSet::new();
            for y in &level {
                let w = self.weight(y);
                for (i, limit) in target.iter().enumerate() {
                    if w.k[i] >= *limit {
                        continue;
                    }
                    for b in self.addable_slots(y, i) {
                        next.insert(self.add_block(y, &b).expect("addable slot is legal"));
                    }
                }
            }
            level = next;
        }
        let mut out: Vec<Wall> = level.into_iter().collect();
        out.sort_by(|a, b| self.total_cmp(b, a));
        out
    }

    /// All proper walls with exactly `blocks` added blocks.
    pub fn enumerate_by_size(&self, blocks: usize) -> Vec<Wall> {
        let mut level: BTreeSet<Wall> = BTreeSet::from([self.ground()]);
        for _ in 0..blocks {
            let mut next = BTreeSet::new();
            for y in &level {
                for i in 0..self.data.size() {
                    for b in self.addable_slots(y, i) {
                        next.insert(self.add_block(y, &b).expect("addable slot is legal"));
                    }
                }
            }
            level = next;
        }
        let mut out: Vec<Wall> = level.into_iter().collect();
        out.sort_by(|a, b| self.total_cmp(b, a));
        out
    }

    /// All proper walls with `k_i ≤ bound_i` for every color, grouped by
    /// weight; each group is sorted descending by the total order.
    pub fn enumerate_bounded(&self, bound: &[i64]) -> BTreeMap<Vec<i64>, Vec<Wall>> {
        let mut groups: BTreeMap<Vec<i64>, Vec<Wall>> = BTreeMap::new();
        let mut level: BTreeSet<Wall> = BTreeSet::from([self.ground()]);
        while !level.is_empty() {
            let mut next = BTreeSet::new();
            for y in &level {
                let w = self.weight(y);
                for (i, limit) in bound.iter().enumerate() {
                    if w.k[i] >= *limit {
                        continue;
                    }
                    for b in self.addable_slots(y, i) {
                        next.insert(self.add_block(y, &b).expect("addable slot is legal"));
                    }
                }
                groups.entry(w.k).or_default().push(y.clone());
            }
            level = next;
        }
        for walls in groups.values_mut() {
            walls.sort_by(|a, b| self.total_cmp(b, a));
        }
        groups
    }

    /// Weights `Λ - Σ k_i α_i` with `k ≤ d·δ` componentwise that carry at
    /// least one reduced proper wall, in increasing size.
    pub fn weights_up_to_delta(&self, d: i64) -> Vec<Weight> {
        let bound: Vec<i64> = self.data.null_root.iter().map(|x| d * x).collect();
        let mut out: Vec<Weight> = self
            .enumerate_bounded(&bound)
            .into_iter()
            .filter(|(_, walls)| walls.iter().any(|y| self.is_reduced(y)))
            .map(|(k, _)| Weight { lambda: self.lambda(), k })
            .collect();
        out.sort_by_key(|w| (w.depth(), w.k.clone()));
        out
    }

    /// Reduced proper walls of the given weight, descending.
    pub fn enumerate_reduced(&self, weight: &Weight) -> Vec<Wall> {
        self.enumerate_proper(weight)
            .into_iter()
            .filter(|y| self.is_reduced(y))
            .collect()
    }

    /// Whether `Ẽ_i Y` is undefined for every color.
    pub fn is_highest_weight(&self, y: &Wall) -> bool {
        (0..self.data.size()).all(|i| self.kashiwara_e(y, i).is_none())
    }

    /// The weight used for the multiplicity count at `m`: `Λ - mδ`, doubled
    /// for `D_{n+1}^(2)` whose δ-column holds two copies of each color.
    pub fn multiplicity_weight(&self, m: i64) -> Weight {
        let mut w = self.data.delta_weight(self.lambda(), m);
        if self.tag().family == crate::cartan::Family::D2 {
            for k in &mut w.k {
                *k *= 2;
            }
        }
        w
    }

    /// Number of proper walls of weight `Λ - mδ` (`Λ - 2mδ` for `D_{n+1}^(2)`)
    /// annihilated by every `Ẽ_i`.
    pub fn maximal_vector_count(&self, m: i64) -> usize {
        let w = self.multiplicity_weight(m);
        self.enumerate_proper(&w)
            .iter()
            .filter(|y| self.is_highest_weight(y))
            .count()
    }

    /// Check the crystal axioms at `y` for every color:
    /// `φ_i - ε_i = <h_i, wt>`, the weight and `ε/φ` shifts under `Ẽ_i`
    /// and `F̃_i`, `F̃_i Ẽ_i y = y` and `Ẽ_i F̃_i y = y`, and that `ε_i`/`φ_i`
    /// equal the lengths of the `Ẽ_i`/`F̃_i` strings through `y`.
    pub fn check_crystal_axioms(&self, y: &Wall) -> Result<(), String> {
        let wt = self.weight(y);
        for i in 0..self.data.size() {
            let (eps, phi) = (self.eps(y, i) as i64, self.phi(y, i) as i64);
            let h = self.data.pairing(&wt, i);
            if phi - eps != h {
                return Err(format!("{y}: φ_{i} - ε_{i} = {} but <h_{i}, wt> = {h}", phi - eps));
            }
            if let Some(e) = self.kashiwara_e(y, i) {
                if self.weight(&e) != wt.plus_alpha(i) {
                    return Err(format!("{y}: Ẽ_{i} does not raise the weight by α_{i}"));
                }
                if self.eps(&e, i) as i64 != eps - 1 || self.phi(&e, i) as i64 != phi + 1 {
                    return Err(format!("{y}: ε/φ do not shift under Ẽ_{i}"));
                }
                if self.kashiwara_f(&e, i).as_ref() != Some(y) {
                    return Err(format!("{y}: F̃_{i} Ẽ_{i} is not the identity"));
                }
            } else if eps != 0 {
                return Err(format!("{y}: Ẽ_{i} undefined but ε_{i} = {eps}"));
            }
            if let Some(f) = self.kashiwara_f(y, i) {
                if self.weight(&f) != wt.minus_alpha(i) {
                    return Err(format!("{y}: F̃_{i} does not lower the weight by α_{i}"));
                }
                if self.eps(&f, i) as i64 != eps + 1 || self.phi(&f, i) as i64 != phi - 1 {
                    return Err(format!("{y}: ε/φ do not shift under F̃_{i}"));
                }
                if self.kashiwara_e(&f, i).as_ref() != Some(y) {
                    return Err(format!("{y}: Ẽ_{i} F̃_{i} is not the identity"));
                }
            }
            let string_len = |step: &dyn Fn(&Wall) -> Option<Wall>| {
                let mut n = 0;
                let mut cur = y.clone();
                while let Some(next) = step(&cur) {
                    n += 1;
                    cur = next;
                }
                n
            };
            if string_len(&|w| self.kashiwara_e(w, i)) != eps {
                return Err(format!("{y}: ε_{i} differs from the Ẽ_{i}-string length"));
            }
            if string_len(&|w| self.kashiwara_f(w, i)) != phi {
                return Err(format!("{y}: φ_{i} differs from the F̃_{i}-string length"));
            }
        }
        Ok(())
    }

    /// `F̃_i` applied `n` times, if defined throughout.
    pub fn kashiwara_f_pow(&self, y: &Wall, i: usize, n: usize) -> Result<Wall, WallError> {
        let mut cur = y.clone();
        for _ in 0..n {
            cur = self
                .kashiwara_f(&cur, i)
                .ok_or_else(|| WallError::IllegalBlock(format!("F̃_{i} undefined on {cur}")))?;
        }
        Ok(cur)
    }
}

impl CrystalGraph {
    /// DOT rendering with compact wall labels and color-labelled edges.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph crystal {\n");
        for (idx, v) in self.vertices.iter().enumerate() {
            out.push_str(&format!("  v{idx} [label=\"{}\"];\n", v.compact()));
        }
        for (a, i, b) in &self.edges {
            out.push_str(&format!("  v{a} -> v{b} [label=\"{i}\"];\n"));
        }
        out.push_str("}\n");
        out
    }

    /// JSON rendering: walls and `{source, color, target}` edges.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "root": self.root,
            "vertices": self.vertices.iter().map(|w| w.to_json()).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|(a, i, b)| serde_json::json!({
                "source": a, "color": i, "target": b
            })).collect::<Vec<_>>(),
        })
    }
}
