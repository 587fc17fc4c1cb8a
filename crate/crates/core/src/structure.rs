//! Extremal coalitions, duals and equivalence.

use crate::coalition::{full_mask, Coalition};
use crate::game::{ExplicitMode, GameForm, SimpleGame};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalSets {
    pub minimal_winning: Vec<Coalition>,
    pub maximal_losing: Vec<Coalition>,
}

/// Both extremal families from one pass over the truth table.
pub fn extremal_sets(game: &SimpleGame) -> ExtremalSets {
    let n = game.n();
    let table = game.truth_table();
    let full = full_mask(n);
    let mut minimal_winning = Vec::new();
    let mut maximal_losing = Vec::new();
    for raw in 0u32..(1u32 << n) {
        let bits = raw << 1;
        if table.wins_bits(bits) {
            if members(bits).all(|b| !table.wins_bits(bits ^ b)) {
                minimal_winning.push(Coalition::from_bits_unchecked(n, bits));
            }
        } else if members(full & !bits).all(|b| table.wins_bits(bits | b)) {
            maximal_losing.push(Coalition::from_bits_unchecked(n, bits));
        }
    }
    ExtremalSets { minimal_winning, maximal_losing }
}

fn members(bits: u32) -> impl Iterator<Item = u32> {
    let mut rest = bits;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let low = rest & rest.wrapping_neg();
            rest ^= low;
            Some(low)
        }
    })
}

/// Minimal winning coalitions sorted by mask.
pub fn minimal_winning(game: &SimpleGame) -> Vec<Coalition> {
    match game.form() {
        GameForm::Explicit(mwc) => mwc.clone(),
        _ => extremal_sets(game).minimal_winning,
    }
}

/// Maximal losing coalitions sorted by mask.
pub fn maximal_losing(game: &SimpleGame) -> Vec<Coalition> {
    extremal_sets(game).maximal_losing
}

/// The dual game, in the dual representation form.
///
/// Weighted and composite forms are converted part by part without any
/// enumeration; only the explicit form walks the coalition lattice.
pub fn dual(game: &SimpleGame) -> SimpleGame {
    use crate::game::Combination;
    match game.form() {
        GameForm::Explicit(_) => {
            let mwc = maximal_losing(game).iter().map(Coalition::complement).collect();
            SimpleGame::explicit(game.n(), mwc, ExplicitMode::MinimalGiven)
                .expect("complements of maximal losing coalitions form a proper antichain")
        }
        GameForm::Weighted(g) => SimpleGame::weighted(g.dual()),
        GameForm::Intersection(parts) => {
            SimpleGame::combine(Combination::Union, parts.iter().map(|p| p.dual()).collect())
                .expect("parts share a player count")
        }
        GameForm::Union(parts) => {
            SimpleGame::combine(Combination::Intersection, parts.iter().map(|p| p.dual()).collect())
                .expect("parts share a player count")
        }
    }
}

/// Same player set and same winning family.
pub fn equivalent(a: &SimpleGame, b: &SimpleGame) -> bool {
    if a.n() != b.n() {
        return false;
    }
    if let (GameForm::Explicit(x), GameForm::Explicit(y)) = (a.form(), b.form()) {
        return x == y;
    }
    a.truth_table() == b.truth_table()
}

pub fn is_self_dual(game: &SimpleGame) -> bool {
    equivalent(game, &dual(game))
}
