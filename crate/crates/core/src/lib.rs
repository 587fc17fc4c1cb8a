//! Exact analysis of simple games: extremal coalitions, duals,
//! weightedness, and dimension/codimension with witness representations.
//!
//! Players are numbered from 1. Games are restricted to at most
//! [`N_MAX`] players so that every coalition can be enumerated.

pub mod coalition;
pub mod dimension;
pub mod error;
pub mod game;
pub mod generators;
pub mod lp;
pub mod structure;

/// Largest supported player count.
pub const N_MAX: usize = 24;

pub use coalition::Coalition;
pub use dimension::{
    canonical_intersection, canonical_union, co_realizable, codimension, convert, dimension,
    is_weighted, realizable, ConvertMode, DimensionWitness, COVER_MAX,
};
pub use error::{GameError, Result};
pub use game::{Combination, ExplicitMode, GameForm, SimpleGame, TruthTable, WeightedGame};
pub use generators::{
    gen_example1, gen_random_monotone, gen_ssp, gen_unanimity_composition, SspInstance,
};
pub use structure::{
    dual, equivalent, extremal_sets, is_self_dual, maximal_losing, minimal_winning, ExtremalSets,
};
