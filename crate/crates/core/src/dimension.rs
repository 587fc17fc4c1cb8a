//! Dimension, codimension and weightedness.
//!
//! Computing the dimension amounts to partitioning the maximal losing
//! coalitions into as few blocks as possible, where a block is admissible if
//! a single weighted game wins on every minimal winning coalition while
//! losing on every coalition of the block. Admissibility is decided by an
//! exact LP and is closed under taking subsets, so the search is a
//! graph-colouring style exact cover over an LP-defined predicate.
//! Codimension is the same search with the roles of winning and losing
//! swapped.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::RwLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::coalition::Coalition;
use crate::error::{GameError, Result};
use crate::game::{Combination, SimpleGame, WeightedGame};
use crate::lp::{solve_feasibility, FeasibilityResult, LinearProgram, Relation};
use crate::structure::{equivalent, extremal_sets};

/// Largest number of target coalitions the partition search accepts.
pub const COVER_MAX: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionWitness {
    pub value: usize,
    pub parts: Vec<WeightedGame>,
    pub kind: Combination,
}

impl DimensionWitness {
    pub fn to_game(&self) -> SimpleGame {
        SimpleGame::combine(self.kind, self.parts.clone()).expect("witness parts are nonempty")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConvertMode {
    Canonical,
    Minimal,
}

/// LP in the variables `w_1..w_n, q` (all nonnegative) asking for a weighted
/// game that wins on `winning`, loses on `losing`, has `q >= 1` and lets the
/// grand coalition win.
pub fn separation_lp(n: usize, winning: &[Coalition], losing: &[Coalition]) -> LinearProgram {
    let mut lp = LinearProgram::new(n + 1);
    lp.set_all_nonneg();
    let row = |c: u32| -> Vec<BigRational> {
        let mut coeffs: Vec<BigRational> = (1..=n)
            .map(|p| if c & (1 << p) != 0 { BigRational::one() } else { BigRational::zero() })
            .collect();
        coeffs.push(-BigRational::one());
        coeffs
    };
    let zero = BigRational::zero();
    for s in winning {
        lp.add(row(s.bits()), Relation::Ge, zero.clone()).expect("row has n+1 entries");
    }
    for t in losing {
        lp.add(row(t.bits()), Relation::Le, -BigRational::one()).expect("row has n+1 entries");
    }
    let mut quota = vec![BigRational::zero(); n + 1];
    quota[n] = BigRational::one();
    lp.add(quota, Relation::Ge, BigRational::one()).expect("row has n+1 entries");
    let full = (((1u64 << n) - 1) << 1) as u32;
    lp.add(row(full), Relation::Ge, zero).expect("row has n+1 entries");
    lp
}

/// Scale a rational `(w, q)` point to coprime integers.
fn integer_game(point: &[BigRational]) -> WeightedGame {
    let lcm = point.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<BigInt> = point.iter().map(|x| (x * &lcm).to_integer()).collect();
    let gcd = scaled.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let to_u64 = |x: &BigInt| (x / &gcd).to_u64().expect("certificate entry fits in u64");
    let (quota, weights) = scaled.split_last().expect("point has a quota entry");
    WeightedGame::from_unsigned(to_u64(quota), weights.iter().map(to_u64).collect())
        .expect("LP forces q >= 1 and w(N) >= q")
}

/// A weighted game winning on all of `winning` and losing on all of `losing`.
pub fn separating_game(
    n: usize,
    winning: &[Coalition],
    losing: &[Coalition],
) -> Option<WeightedGame> {
    let lp = separation_lp(n, winning, losing);
    match solve_feasibility(&lp) {
        FeasibilityResult::Feasible { point } => {
            let game = integer_game(&point);
            debug_assert!(winning.iter().all(|s| game.weight_of(s) >= game.quota()));
            debug_assert!(losing.iter().all(|t| game.weight_of(t) < game.quota()));
            Some(game)
        }
        FeasibilityResult::Infeasible { .. } => None,
    }
}

/// An intersection factor: wins on every minimal winning coalition, loses on
/// every coalition in `blocked`.
pub fn co_realizable(n: usize, mwc: &[Coalition], blocked: &[Coalition]) -> Option<WeightedGame> {
    separating_game(n, mwc, blocked)
}

/// A union factor: loses on every maximal losing coalition, wins on every
/// coalition in `accepted`.
pub fn realizable(n: usize, mlc: &[Coalition], accepted: &[Coalition]) -> Option<WeightedGame> {
    separating_game(n, accepted, mlc)
}

/// Memoized admissibility of target subsets, keyed by bitmask over targets.
///
/// Safe to query from several threads; racing writers store identical
/// values.
pub struct SeparationOracle {
    n: usize,
    fixed: Vec<Coalition>,
    /// `true`: fixed coalitions must win and targets lose.
    fixed_win: bool,
    targets: Vec<Coalition>,
    cache: RwLock<HashMap<u32, Option<WeightedGame>>>,
    infeasible: RwLock<Vec<u32>>,
    lp_calls: AtomicUsize,
}

impl SeparationOracle {
    pub fn new(n: usize, fixed: Vec<Coalition>, fixed_win: bool, targets: Vec<Coalition>) -> Self {
        assert!(targets.len() <= COVER_MAX);
        Self {
            n,
            fixed,
            fixed_win,
            targets,
            cache: RwLock::new(HashMap::new()),
            infeasible: RwLock::new(Vec::new()),
            lp_calls: AtomicUsize::new(0),
        }
    }

    pub fn targets(&self) -> &[Coalition] {
        &self.targets
    }

    pub fn lp_calls(&self) -> usize {
        self.lp_calls.load(Ordering::Relaxed)
    }

    pub fn check(&self, mask: u32) -> Option<WeightedGame> {
        if let Some(hit) = self.cache.read().unwrap().get(&mask) {
            return hit.clone();
        }
        if self.infeasible.read().unwrap().iter().any(|&bad| bad & !mask == 0) {
            return None;
        }
        let chosen: Vec<Coalition> = self
            .targets
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, c)| *c)
            .collect();
        self.lp_calls.fetch_add(1, Ordering::Relaxed);
        let result = if self.fixed_win {
            separating_game(self.n, &self.fixed, &chosen)
        } else {
            separating_game(self.n, &chosen, &self.fixed)
        };
        if result.is_none() {
            self.infeasible.write().unwrap().push(mask);
        }
        self.cache.write().unwrap().insert(mask, result.clone());
        result
    }

    pub fn is_feasible(&self, mask: u32) -> bool {
        self.check(mask).is_some()
    }

    /// Snapshot of every cached decision.
    pub fn cached(&self) -> Vec<(u32, bool)> {
        let mut v: Vec<(u32, bool)> =
            self.cache.read().unwrap().iter().map(|(&k, v)| (k, v.is_some())).collect();
        v.sort();
        v
    }
}

/// Fewest admissible blocks partitioning all targets of `oracle`.
pub fn minimum_partition(oracle: &SeparationOracle) -> Vec<u32> {
    PartitionSearch::new(oracle).solve()
}

struct PartitionSearch<'a> {
    oracle: &'a SeparationOracle,
    count: usize,
    /// `compat[i]`: targets that can share a block with `i` (excluding `i`).
    compat: Vec<u32>,
    order: Vec<usize>,
    /// Remaining sets already shown to need more than the stored number of blocks.
    lower: HashMap<u32, usize>,
}

impl<'a> PartitionSearch<'a> {
    fn new(oracle: &'a SeparationOracle) -> Self {
        let count = oracle.targets().len();
        let pairs: Vec<(usize, usize)> =
            (0..count).flat_map(|i| (i + 1..count).map(move |j| (i, j))).collect();
        let verdicts: Vec<bool> =
            pairs.par_iter().map(|&(i, j)| oracle.is_feasible(1 << i | 1 << j)).collect();
        let mut compat = vec![0u32; count];
        for (&(i, j), ok) in pairs.iter().zip(verdicts) {
            if ok {
                compat[i] |= 1 << j;
                compat[j] |= 1 << i;
            }
        }
        let mut order: Vec<usize> = (0..count).collect();
        let incompat = |i: usize| count - 1 - compat[i].count_ones() as usize;
        order.sort_by_key(|&i| (std::cmp::Reverse(incompat(i)), i));
        Self { oracle, count, compat, order, lower: HashMap::new() }
    }

    fn all(&self) -> u32 {
        if self.count == 32 {
            u32::MAX
        } else {
            (1u32 << self.count) - 1
        }
    }

    /// Greedy clique of pairwise-incompatible targets inside `rem`.
    fn clique_bound(&self, rem: u32) -> usize {
        let mut clique = 0u32;
        for &i in &self.order {
            if rem & (1 << i) != 0 && clique & self.compat[i] == 0 {
                clique |= 1 << i;
            }
        }
        clique.count_ones() as usize
    }

    fn solve(mut self) -> Vec<u32> {
        let all = self.all();
        let mut budget = self.clique_bound(all).max(usize::from(self.count > 0));
        loop {
            if let Some(blocks) = self.cover(all, budget) {
                return blocks;
            }
            budget += 1;
            assert!(budget <= self.count, "singleton blocks are always admissible");
        }
    }

    fn cover(&mut self, rem: u32, budget: usize) -> Option<Vec<u32>> {
        if rem == 0 {
            return Some(Vec::new());
        }
        if budget == 0 || self.lower.get(&rem).is_some_and(|&lb| lb > budget) {
            return None;
        }
        if self.clique_bound(rem) > budget {
            return None;
        }
        let first = *self.order.iter().find(|&&i| rem & (1 << i) != 0).unwrap();
        let candidates: Vec<usize> = self
            .order
            .iter()
            .copied()
            .filter(|&c| c != first && rem & (1 << c) != 0 && self.compat[first] & (1 << c) != 0)
            .collect();
        let mut blocks = Vec::new();
        self.maximal_blocks(1 << first, &candidates, 0, 0, &mut blocks);
        blocks.sort_by_key(|b| std::cmp::Reverse(b.count_ones()));
        for block in blocks {
            if let Some(mut rest) = self.cover(rem & !block, budget - 1) {
                rest.push(block);
                return Some(rest);
            }
        }
        self.lower.insert(rem, budget + 1);
        None
    }

    fn joinable(&self, block: u32, c: usize) -> bool {
        block & !self.compat[c] == 0
    }

    /// Maximal admissible supersets of `block` using `candidates[idx..]`.
    ///
    /// Restricting to maximal blocks loses nothing: admissibility is closed
    /// under subsets, so any cover using a smaller block can be rewritten.
    fn maximal_blocks(
        &self,
        block: u32,
        candidates: &[usize],
        idx: usize,
        excluded: u32,
        out: &mut Vec<u32>,
    ) {
        let open: u32 = candidates[idx..]
            .iter()
            .filter(|&&c| self.joinable(block, c))
            .fold(0, |acc, &c| acc | 1 << c);
        // Everything left fits at once, so that union is the only maximal extension.
        if open != 0 && open.count_ones() > 1 && self.pairwise(open) && self.oracle.is_feasible(block | open) {
            if self.is_maximal(block | open, excluded) {
                out.push(block | open);
            }
            return;
        }
        let Some(pos) = (idx..candidates.len()).find(|&k| open & (1 << candidates[k]) != 0) else {
            if self.is_maximal(block, excluded) {
                out.push(block);
            }
            return;
        };
        let c = candidates[pos];
        let next = block | 1 << c;
        if self.oracle.is_feasible(next) {
            self.maximal_blocks(next, candidates, pos + 1, excluded, out);
        }
        self.maximal_blocks(block, candidates, pos + 1, excluded | 1 << c, out);
    }

    fn pairwise(&self, set: u32) -> bool {
        let mut rest = set;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if set & !(1 << i) & !self.compat[i] != 0 {
                return false;
            }
        }
        true
    }

    fn is_maximal(&self, block: u32, excluded: u32) -> bool {
        let mut rest = excluded;
        while rest != 0 {
            let c = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.joinable(block, c) && self.oracle.is_feasible(block | 1 << c) {
                return false;
            }
        }
        true
    }
}

fn solve_cover(
    game: &SimpleGame,
    fixed: Vec<Coalition>,
    targets: Vec<Coalition>,
    kind: Combination,
) -> Result<DimensionWitness> {
    if targets.len() > COVER_MAX {
        return Err(GameError::TooManyTargets { count: targets.len(), max: COVER_MAX });
    }
    let oracle = SeparationOracle::new(game.n(), fixed, kind == Combination::Intersection, targets);
    let blocks = minimum_partition(&oracle);
    let parts: Vec<WeightedGame> = blocks
        .iter()
        .rev()
        .map(|&b| oracle.check(b).expect("blocks in a partition are admissible"))
        .collect();
    let witness = DimensionWitness { value: parts.len(), parts, kind };
    assert!(
        equivalent(&witness.to_game(), game),
        "witness does not reproduce the input game"
    );
    Ok(witness)
}

/// Least number of weighted games whose intersection is `game`.
pub fn dimension(game: &SimpleGame) -> Result<DimensionWitness> {
    let ext = extremal_sets(game);
    solve_cover(game, ext.minimal_winning, ext.maximal_losing, Combination::Intersection)
}

/// Least number of weighted games whose union is `game`.
pub fn codimension(game: &SimpleGame) -> Result<DimensionWitness> {
    let ext = extremal_sets(game);
    solve_cover(game, ext.maximal_losing, ext.minimal_winning, Combination::Union)
}

pub fn is_weighted(game: &SimpleGame) -> Option<WeightedGame> {
    let ext = extremal_sets(game);
    separating_game(game.n(), &ext.minimal_winning, &ext.maximal_losing)
}

/// One quota-1 game per maximal losing coalition, weight 1 exactly off it.
pub fn canonical_intersection(game: &SimpleGame) -> Vec<WeightedGame> {
    let n = game.n();
    extremal_sets(game)
        .maximal_losing
        .iter()
        .map(|t| {
            let weights = (1..=n).map(|p| u64::from(!t.contains(p))).collect();
            WeightedGame::from_unsigned(1, weights).expect("a maximal losing coalition is not N")
        })
        .collect()
}

/// One unanimity game per minimal winning coalition.
pub fn canonical_union(game: &SimpleGame) -> Vec<WeightedGame> {
    let n = game.n();
    extremal_sets(game)
        .minimal_winning
        .iter()
        .map(|s| {
            let weights = (1..=n).map(|p| u64::from(s.contains(p))).collect();
            WeightedGame::from_unsigned(s.len() as u64, weights)
                .expect("a minimal winning coalition is nonempty")
        })
        .collect()
}

pub fn convert(game: &SimpleGame, to: Combination, mode: ConvertMode) -> Result<Vec<WeightedGame>> {
    match (to, mode) {
        (Combination::Intersection, ConvertMode::Canonical) => Ok(canonical_intersection(game)),
        (Combination::Union, ConvertMode::Canonical) => Ok(canonical_union(game)),
        (Combination::Intersection, ConvertMode::Minimal) => Ok(dimension(game)?.parts),
        (Combination::Union, ConvertMode::Minimal) => Ok(codimension(game)?.parts),
    }
}
