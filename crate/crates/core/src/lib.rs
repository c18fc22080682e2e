//! Exact computer algebra for curves over finite fields in small
//! characteristic: Sugiyama-Yasuda symbols, pseudotameness, constructive
//! lifting of pseudotame functions to tame morphisms to the projective line,
//! conic-fiber analysis of elliptic curves in characteristic two, the
//! odd-characteristic simply-ramified sieve, and tame Belyi maps branched
//! over {0, 1, infinity}.
//!
//! Everything is exact: field arithmetic, valuations, local expansions and
//! residues all run over GF(p^m) with no floating point anywhere. Randomized
//! searches take explicit seeds and are reproducible bit for bit.

pub mod curve;
pub mod error;
pub mod field;
pub mod linalg;
pub mod poly;
pub mod ratfunc;
pub mod series;
pub mod symbol;
pub mod text;

pub use error::{Error, Result};
