//! Dyadic patterns, admissible sets below a pattern, Brin group elements,
//! contraction graphs, pushing maps and small order complexes for `2V` and
//! `3V`.

pub mod boxes;
pub mod complex;
pub mod error;
pub mod fragments;
pub mod gamma;
pub mod group;
pub mod pushing;
pub mod snf;
pub mod text;

pub use boxes::{Address, Colour, DyadicBox, Pattern};
pub use error::{Error, Result};
pub use fragments::{BelowSet, Fragment, LeafId, SimpleContraction, Term};
pub use gamma::{ColouredGraph, Component, ComponentShape, Edge};
pub use group::GroupElement;
pub use pushing::{Chain, EdgeChoice, PushReport};

/// Boundary matrices over machine integers.
pub type IntMatrix = snf::SparseMatrix<i64>;
/// Boundary matrices over arbitrary-precision integers.
pub type BigMatrix = snf::SparseMatrix<num_bigint::BigInt>;
