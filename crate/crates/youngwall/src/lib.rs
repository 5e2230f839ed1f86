//! Exact Young-wall Fock spaces and generalized LLT bases for the affine
//! families `A_n^(1)`, `A_{2n-1}^(2)`, `D_n^(1)`, `A_{2n}^(2)`, `D_{n+1}^(2)`
//! and `B_n^(1)`.
//!
//! The crate is layered bottom-up:
//!
//! * [`qlaurent`] — exact Laurent polynomials in `q` and quantum integers;
//! * [`cartan`] — Cartan data, weights and algebra tags;
//! * [`pattern`] — Young-wall coloring patterns and ground-state walls;
//! * [`wall`] — walls, properness, ladders, reduced forms and orderings;
//! * [`crystal`] — signatures, Kashiwara operators and crystal graphs;
//! * [`fock`] — the quantum-group action on the Fock space;
//! * [`canonical`] — A-words, A-vectors and the LLT-type global bases;
//! * [`cli`] — the `youngwall` command-line front end.

pub mod canonical;
pub mod cartan;
pub mod cli;
pub mod crystal;
pub mod fock;
pub mod pattern;
pub mod qlaurent;
pub mod wall;

pub use cartan::{cartan_data, AlgebraTag, CartanData, Family, Weight};
pub use fock::{FockError, FockMove, FockVector};
pub use pattern::{pattern_table, CubeKind, CubeSpec, GroundPrefill, PatternTable};
pub use qlaurent::{quantum_binomial, quantum_factorial, quantum_int, Coefficient, LaurentPoly};
pub use wall::{BlockRef, Column, Part, Space, TopState, Wall, WallError};

/// Laurent polynomials with arbitrary-precision integer coefficients (the
/// coefficient ring used throughout the higher layers) and with machine
/// integer coefficients.
pub use qlaurent::{Poly, SmallPoly};
