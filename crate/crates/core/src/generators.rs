//! Instance families with known dimension and codimension, plus seeded
//! random monotone games.

use crate::coalition::{full_mask, minimal_elements, Coalition};
use crate::error::{GameError, Result};
use crate::game::{Combination, ExplicitMode, SimpleGame, WeightedGame};
use crate::N_MAX;

/// `n` disjoint pairs `{2i-1, 2i}`; a coalition wins iff it meets every pair.
pub fn gen_example1(n: usize) -> Result<SimpleGame> {
    if n == 0 {
        return Err(GameError::NoPlayers);
    }
    if 2 * n > N_MAX {
        return Err(GameError::TooManyPlayers(2 * n));
    }
    let parts = (0..n)
        .map(|i| {
            let mut weights = vec![0u64; 2 * n];
            weights[2 * i] = 1;
            weights[2 * i + 1] = 1;
            WeightedGame::from_unsigned(1, weights).expect("pair weight covers the quota")
        })
        .collect();
    SimpleGame::combine(Combination::Intersection, parts)
}

/// Subset-sum instance: target `b`, items `a`, and `d` gadget pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SspInstance {
    pub b: u64,
    pub a: Vec<u64>,
    pub d: usize,
}

impl SspInstance {
    pub fn new(b: u64, a: Vec<u64>, d: usize) -> Result<Self> {
        let inst = Self { b, a, d };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        if self.b < 1 {
            return Err(GameError::InvalidInstance("target b must be positive".into()));
        }
        if self.a.is_empty() {
            return Err(GameError::InvalidInstance("item list is empty".into()));
        }
        if let Some(i) = self.a.iter().position(|&x| x < 1) {
            return Err(GameError::InvalidInstance(format!("item a_{} must be positive", i + 1)));
        }
        if self.d < 2 {
            return Err(GameError::InvalidInstance("need at least two gadget pairs (d >= 2)".into()));
        }
        let players = self.a.len() + 2 * self.d;
        if players > N_MAX {
            return Err(GameError::TooManyPlayers(players));
        }
        Ok(())
    }

    /// Whether some subset of the items sums to exactly `b`.
    pub fn has_solution(&self) -> bool {
        let target = self.b as usize;
        let mut reachable = vec![false; target + 1];
        reachable[0] = true;
        for &x in &self.a {
            let x = x as usize;
            if x > target {
                continue;
            }
            for s in (x..=target).rev() {
                if reachable[s - x] {
                    reachable[s] = true;
                }
            }
        }
        reachable[target]
    }
}

/// Intersection of `d` games `[3b+1; 3a_1, ..., 3a_n, gadget_j]` where gadget
/// `j` puts weight 1 on players `n+2j-1` and `n+2j`.
pub fn gen_ssp(instance: &SspInstance) -> Result<SimpleGame> {
    instance.validate()?;
    let n = instance.a.len();
    let players = n + 2 * instance.d;
    let parts = (0..instance.d)
        .map(|j| {
            let mut weights: Vec<u64> = instance.a.iter().map(|&x| 3 * x).collect();
            weights.resize(players, 0);
            weights[n + 2 * j] = 1;
            weights[n + 2 * j + 1] = 1;
            WeightedGame::from_unsigned(3 * instance.b + 1, weights)
        })
        .collect::<Result<Vec<_>>>()?;
    SimpleGame::combine(Combination::Intersection, parts)
}

/// Union of one unanimity game per block.
pub fn gen_unanimity_composition(blocks: &[Coalition]) -> Result<SimpleGame> {
    let n = blocks.first().ok_or(GameError::NoParts)?.n();
    let mut seen = 0u32;
    for b in blocks {
        if b.n() != n {
            return Err(GameError::PlayerCountMismatch { expected: n, found: b.n() });
        }
        if b.is_empty() {
            return Err(GameError::EmptyWinningCoalition);
        }
        let overlap = seen & b.bits();
        if overlap != 0 {
            return Err(GameError::OverlappingBlocks(overlap.trailing_zeros() as usize));
        }
        seen |= b.bits();
    }
    let parts = blocks
        .iter()
        .map(|b| {
            let weights = (1..=n).map(|p| u64::from(b.contains(p))).collect();
            WeightedGame::from_unsigned(b.len() as u64, weights).expect("block is nonempty")
        })
        .collect();
    SimpleGame::combine(Combination::Union, parts)
}

/// SplitMix64 (Steele, Lea, Flood), the reference stream for random corpora.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

pub const RANDOM_MAX_PLAYERS: usize = 12;

/// Upward closure of `m` seeded draws, reduced to its minimal antichain.
///
/// Draw `k` is the coalition with mask `(1 + x_k mod (2^n - 2)) << 1`, i.e. a
/// nonempty proper subset, where `x_k` is the `k`-th SplitMix64 output. With
/// a single player the only nonempty coalition is drawn.
pub fn gen_random_monotone(n: usize, m: usize, seed: u64) -> Result<SimpleGame> {
    if n == 0 {
        return Err(GameError::NoPlayers);
    }
    if n > RANDOM_MAX_PLAYERS {
        return Err(GameError::TooManyPlayers(n));
    }
    if m == 0 {
        return Err(GameError::NoCoalitions);
    }
    let mut rng = SplitMix64::new(seed);
    let span = (1u64 << n) - 2;
    let draws = (0..m)
        .map(|_| {
            let bits = if span == 0 {
                full_mask(n)
            } else {
                ((1 + rng.next_u64() % span) << 1) as u32
            };
            Coalition::from_bits_unchecked(n, bits)
        })
        .collect();
    // Every draw is nonempty, so the grand coalition always wins.
    SimpleGame::explicit(n, minimal_elements(draws), ExplicitMode::MinimalGiven)
}
