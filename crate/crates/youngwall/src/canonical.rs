//! Bar-reduction words, A-vectors and the generalized LLT algorithm.
//!
//! For a reduced proper wall `Y`, repeatedly stripping the colored blocks on
//! the ladder through the leftmost top block gives a word
//! `A(Y) = f_{i_1}^{(r_1)} ... f_{i_N}^{(r_N)} Y_Λ` whose Fock expansion is
//! bar-invariant with leading term `Y`.  Peeling the `A`-vectors of one
//! weight space in decreasing order produces the global basis `G(Y)`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::cartan::Weight;
use crate::fock::{FockError, FockVector};
use crate::wall::{Space, Wall, WallError};

/// Errors of the canonical-basis layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonicalError {
    #[error(transparent)]
    Fock(#[from] FockError),
    #[error(transparent)]
    Wall(#[from] WallError),
    #[error("InvariantViolation: {0}")]
    Invariant(String),
}

/// `(color, multiplicity)` pairs, outermost divided power first.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct AWord(pub Vec<(usize, usize)>);

impl AWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for AWord {
    /// `f_0^(4) f_1^(2) f_2 ...`; the empty word is written `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(i, r)| if r == 1 { format!("f_{i}") } else { format!("f_{i}^({r})") })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// A global basis element `G(Y)` with its Fock expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalBasisElement {
    pub head: Wall,
    pub expansion: FockVector,
}

impl GlobalBasisElement {
    /// `{head, terms}` JSON with terms in descending total order.
    pub fn to_json(&self, space: &Space) -> serde_json::Value {
        let v = self.expansion.to_json(space);
        serde_json::json!({ "head": self.head.to_json(), "weight": v["weight"], "terms": v["terms"] })
    }
}

/// The global basis of one weight space together with the `A`-vectors it
/// was computed from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisTable {
    pub weight: Weight,
    /// Elements in descending total order of their heads.
    pub elements: Vec<GlobalBasisElement>,
    /// `A(Y)` for each head, in the same order.
    pub a_vectors: Vec<FockVector>,
}

impl BasisTable {
    /// JSON array of the elements.
    pub fn to_json(&self, space: &Space) -> serde_json::Value {
        serde_json::json!({
            "weight": self.weight,
            "elements": self.elements.iter().map(|g| g.to_json(space)).collect::<Vec<_>>(),
        })
    }

    /// Plain-text matrix of `G_{Y,Z}(q)`: one row per wall `Z` in some
    /// support, one column per head `Y`, both in descending order.
    pub fn to_table(&self, space: &Space) -> String {
        let mut rows: Vec<&Wall> = self
            .elements
            .iter()
            .flat_map(|g| g.expansion.terms.keys())
            .collect();
        rows.sort_by(|a, b| space.total_cmp(b, a));
        rows.dedup();
        let mut out = format!("# weight {}\n", self.weight);
        for (idx, g) in self.elements.iter().enumerate() {
            out.push_str(&format!("# Y{} = {}\n", idx + 1, g.head));
        }
        let header: Vec<String> = (1..=self.elements.len()).map(|k| format!("Y{k}")).collect();
        out.push_str(&format!("Z\t{}\n", header.join("\t")));
        for z in rows {
            let cells: Vec<String> = self
                .elements
                .iter()
                .map(|g| g.expansion.coeff(z).to_string())
                .collect();
            out.push_str(&format!("{z}\t{}\n", cells.join("\t")));
        }
        out
    }
}

/// Tie-break used among walls with equal block-count partitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    /// The crate-wide [`Space::total_cmp`].
    #[default]
    Standard,
    /// Reverses the comparison of walls that share a partition.
    Reversed,
}

/// Memo of global basis elements (for the modified algorithm) and of the
/// reduced walls of each weight.
#[derive(Debug, Clone, Default)]
pub struct GlobalCache {
    elements: HashMap<Wall, FockVector>,
    heads: HashMap<Vec<i64>, Vec<Wall>>,
}

impl GlobalCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

impl Space {
    /// The order used to peel: [`Space::total_cmp`], optionally with the
    /// tie-break reversed.
    pub fn cmp_with(&self, y: &Wall, z: &Wall, tie: TieBreak) -> Ordering {
        match tie {
            TieBreak::Standard => self.total_cmp(y, z),
            TieBreak::Reversed => {
                let (py, pz) = (self.partition_of(y), self.partition_of(z));
                if py == pz {
                    self.total_cmp(z, y)
                } else {
                    self.total_cmp(y, z)
                }
            }
        }
    }

    fn ensure_reduced(&self, y: &Wall) -> Result<(), CanonicalError> {
        self.ensure_proper(y)?;
        if !self.is_reduced(y) {
            return Err(WallError::NotReduced(format!("{y} has a removable δ-column")).into());
        }
        Ok(())
    }

    /// The bar-reduction word of a reduced proper wall.
    pub fn a_word(&self, y: &Wall) -> Result<AWord, CanonicalError> {
        self.ensure_reduced(y)?;
        let mut word = Vec::new();
        let mut cur = y.clone();
        while !cur.is_ground() {
            let (next, i, r) = self.bar_step(&cur)?;
            if r == 0 {
                return Err(CanonicalError::Invariant(format!("bar step removed nothing from {cur}")));
            }
            word.push((i, r));
            cur = next;
        }
        Ok(AWord(word))
    }

    /// Apply the divided powers of a word (innermost last) to a vector.
    pub fn apply_word(&self, word: &AWord, v: &FockVector) -> Result<FockVector, CanonicalError> {
        let mut cur = v.clone();
        for &(i, r) in word.0.iter().rev() {
            cur = self.f_divided(&cur, i, r)?;
        }
        Ok(cur)
    }

    /// `A(Y)`: the word of `Y` applied to the ground wall.
    pub fn a_vector(&self, y: &Wall) -> Result<FockVector, CanonicalError> {
        let word = self.a_word(y)?;
        let ground = FockVector::from_wall(self, &self.ground());
        self.apply_word(&word, &ground)
    }

    /// The global basis of one weight space by peeling `A`-vectors.
    pub fn llt_weight_basis(&self, weight: &Weight) -> Result<BasisTable, CanonicalError> {
        self.llt_weight_basis_with(weight, TieBreak::Standard)
    }

    /// [`Space::llt_weight_basis`] with a chosen tie-break.
    pub fn llt_weight_basis_with(&self, weight: &Weight, tie: TieBreak) -> Result<BasisTable, CanonicalError> {
        let mut heads = self.enumerate_reduced(weight);
        heads.sort_by(|a, b| self.cmp_with(b, a, tie));
        let a_vectors: Vec<FockVector> =
            heads.iter().map(|y| self.a_vector(y)).collect::<Result<_, _>>()?;
        for (y, a) in heads.iter().zip(&a_vectors) {
            self.check_a_vector(y, a)?;
        }
        let l = heads.len();
        let mut g: Vec<Option<FockVector>> = vec![None; l];
        for k in (0..l).rev() {
            let mut residual = a_vectors[k].clone();
            for s in k + 1..l {
                let gamma = residual.coeff(&heads[s]).gamma_symmetrize();
                if !gamma.is_zero() {
                    let gs = g[s].as_ref().expect("smaller heads are computed first");
                    residual.add_scaled(gs, &-gamma);
                }
            }
            self.check_global(&heads[k], &residual)?;
            g[k] = Some(residual);
        }
        let elements = heads
            .into_iter()
            .zip(g)
            .map(|(head, e)| GlobalBasisElement { head, expansion: e.expect("all computed") })
            .collect();
        Ok(BasisTable { weight: weight.clone(), elements, a_vectors })
    }

    fn heads_of(&self, weight: &Weight, cache: &mut GlobalCache) -> Vec<Wall> {
        cache
            .heads
            .entry(weight.k.clone())
            .or_insert_with(|| self.enumerate_reduced(weight))
            .clone()
    }

    /// `G(Y)` by the modified algorithm: `C(Y) = f_i^{(r)} G(Ȳ)` peeled by
    /// the global basis elements of smaller heads of the same weight.
    pub fn llt_modified(&self, y: &Wall, cache: &mut GlobalCache) -> Result<GlobalBasisElement, CanonicalError> {
        self.ensure_reduced(y)?;
        let expansion = self.modified_rec(y, cache)?;
        Ok(GlobalBasisElement { head: y.clone(), expansion })
    }

    fn modified_rec(&self, y: &Wall, cache: &mut GlobalCache) -> Result<FockVector, CanonicalError> {
        if let Some(v) = cache.elements.get(y) {
            return Ok(v.clone());
        }
        if y.is_ground() {
            let v = FockVector::from_wall(self, y);
            cache.elements.insert(y.clone(), v.clone());
            return Ok(v);
        }
        let (bar, i, r) = self.bar_step(y)?;
        let g_bar = self.modified_rec(&bar, cache)?;
        let mut residual = self.f_divided(&g_bar, i, r)?;
        let weight = self.weight(y);
        let mut smaller: Vec<Wall> = self
            .heads_of(&weight, cache)
            .into_iter()
            .filter(|z| self.total_cmp(z, y) == Ordering::Less)
            .collect();
        smaller.sort_by(|a, b| self.total_cmp(b, a));
        for z in smaller {
            let zeta = residual.coeff(&z).gamma_symmetrize();
            if !zeta.is_zero() {
                let gz = self.modified_rec(&z, cache)?;
                residual.add_scaled(&gz, &-zeta);
            }
        }
        self.check_global(y, &residual)?;
        cache.elements.insert(y.clone(), residual.clone());
        Ok(residual)
    }

    /// `A(Y)` must have `A_{Y,Y} = 1`, be supported on `Z` with
    /// `|Y| ⊵ |Z^R|`, and meet `|Z| = |Y|` only at `Z = Y`.
    pub fn check_a_vector(&self, y: &Wall, a: &FockVector) -> Result<(), CanonicalError> {
        if !a.coeff(y).is_one() {
            return Err(CanonicalError::Invariant(format!(
                "A({y}) has leading coefficient {}",
                a.coeff(y)
            )));
        }
        let py = self.partition_of(y);
        for z in a.terms.keys() {
            let zr = self.reduced_form(z)?;
            if !py.dominates(&self.partition_of(&zr)) {
                return Err(CanonicalError::Invariant(format!(
                    "A({y}) contains {z} whose reduced form {zr} is not dominated"
                )));
            }
            if z != y && self.partition_of(z) == py {
                return Err(CanonicalError::Invariant(format!(
                    "A({y}) contains {z} with the same partition"
                )));
            }
        }
        Ok(())
    }

    /// `G_{Y,Y} = 1`, `G_{Y,Z} ∈ qZ[q]` otherwise, and `|Y| ⊵ |Z^R|` on the
    /// support.
    pub fn check_global(&self, y: &Wall, g: &FockVector) -> Result<(), CanonicalError> {
        if !g.coeff(y).is_one() {
            return Err(CanonicalError::Invariant(format!(
                "G({y}) has leading coefficient {}",
                g.coeff(y)
            )));
        }
        let py = self.partition_of(y);
        for (z, c) in &g.terms {
            if z == y {
                continue;
            }
            if !c.in_q_zq() {
                return Err(CanonicalError::Invariant(format!(
                    "G({y}) has coefficient {c} at {z}, outside qZ[q]"
                )));
            }
            let zr = self.reduced_form(z)?;
            if !py.dominates(&self.partition_of(&zr)) {
                return Err(CanonicalError::Invariant(format!(
                    "G({y}) contains {z} whose reduced form {zr} is not dominated"
                )));
            }
        }
        Ok(())
    }
}
