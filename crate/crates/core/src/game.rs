//! Simple games in their four supported representations.
//!
//! Every game is proper: the empty coalition loses and the grand coalition
//! wins. Construction rejects anything else.

use std::fmt;
use std::sync::OnceLock;

use crate::coalition::{check_player_count, full_mask, minimal_elements, Coalition};
use crate::error::{GameError, Result};

/// Integer weighted majority game `[q; w_1, ..., w_n]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeightedGame {
    quota: u64,
    weights: Vec<u64>,
}

impl WeightedGame {
    pub fn new(quota: i64, weights: &[i64]) -> Result<Self> {
        check_player_count(weights.len())?;
        if quota < 1 {
            return Err(GameError::QuotaTooSmall(quota));
        }
        if let Some((i, &w)) = weights.iter().enumerate().find(|(_, &w)| w < 0) {
            return Err(GameError::NegativeWeight { player: i + 1, weight: w });
        }
        Self::from_unsigned(quota as u64, weights.iter().map(|&w| w as u64).collect())
    }

    pub fn from_unsigned(quota: u64, weights: Vec<u64>) -> Result<Self> {
        check_player_count(weights.len())?;
        if quota < 1 {
            return Err(GameError::QuotaTooSmall(0));
        }
        let total = weights.iter().sum::<u64>();
        if total < quota {
            return Err(GameError::QuotaExceedsTotal { quota, total });
        }
        Ok(Self { quota, weights })
    }

    #[inline]
    pub fn quota(&self) -> u64 {
        self.quota
    }

    #[inline]
    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub fn weight_of(&self, coalition: &Coalition) -> u64 {
        self.weight_of_bits(coalition.bits())
    }

    #[inline]
    pub(crate) fn weight_of_bits(&self, bits: u32) -> u64 {
        let mut rest = bits;
        let mut total = 0;
        while rest != 0 {
            let p = rest.trailing_zeros() as usize;
            total += self.weights[p - 1];
            rest &= rest - 1;
        }
        total
    }

    #[inline]
    pub(crate) fn wins_bits(&self, bits: u32) -> bool {
        self.weight_of_bits(bits) >= self.quota
    }

    /// The dual game `[w(N) - q + 1; w]`.
    pub fn dual(&self) -> WeightedGame {
        WeightedGame {
            quota: self.total_weight() - self.quota + 1,
            weights: self.weights.clone(),
        }
    }
}

impl fmt::Debug for WeightedGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for WeightedGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{};", self.quota)?;
        for (i, w) in self.weights.iter().enumerate() {
            write!(f, "{}{w}", if i == 0 { " " } else { "," })?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Combination {
    Intersection,
    Union,
}

impl Combination {
    pub fn flipped(self) -> Combination {
        match self {
            Combination::Intersection => Combination::Union,
            Combination::Union => Combination::Intersection,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExplicitMode {
    /// The list is already the antichain of minimal winning coalitions.
    MinimalGiven,
    /// Any winning coalitions; non-minimal ones are discarded.
    ArbitraryWinning,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GameForm {
    /// Minimal winning coalitions, sorted by mask.
    Explicit(Vec<Coalition>),
    Weighted(WeightedGame),
    Intersection(Vec<WeightedGame>),
    Union(Vec<WeightedGame>),
}

/// Winning/losing flag for every coalition, indexed by `mask >> 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruthTable {
    n: usize,
    words: Vec<u64>,
}

impl TruthTable {
    fn zeroed(n: usize) -> Self {
        let len = (1usize << n).div_ceil(64);
        Self { n, words: vec![0; len] }
    }

    #[inline]
    fn set(&mut self, index: usize) {
        self.words[index >> 6] |= 1 << (index & 63);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn wins_bits(&self, bits: u32) -> bool {
        let index = (bits >> 1) as usize;
        self.words[index >> 6] >> (index & 63) & 1 == 1
    }

    pub fn count_winning(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TruthTable")
            .field("n", &self.n)
            .field("winning", &self.count_winning())
            .finish()
    }
}

/// A proper simple game over players `1..=n`.
///
/// Immutable once built. The truth table is computed on first use and then
/// shared; concurrent first calls may both compute it, only one is kept.
#[derive(Clone)]
pub struct SimpleGame {
    n: usize,
    form: GameForm,
    table: OnceLock<TruthTable>,
}

impl fmt::Debug for SimpleGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimpleGame")
            .field("n", &self.n)
            .field("form", &self.form)
            .finish()
    }
}

impl SimpleGame {
    pub fn explicit(n: usize, coalitions: Vec<Coalition>, mode: ExplicitMode) -> Result<Self> {
        check_player_count(n)?;
        if coalitions.is_empty() {
            return Err(GameError::NoCoalitions);
        }
        for c in &coalitions {
            if c.n() != n {
                return Err(GameError::PlayerCountMismatch { expected: n, found: c.n() });
            }
            if c.is_empty() {
                return Err(GameError::EmptyWinningCoalition);
            }
        }
        let antichain = match mode {
            ExplicitMode::ArbitraryWinning => minimal_elements(coalitions),
            ExplicitMode::MinimalGiven => {
                for (i, a) in coalitions.iter().enumerate() {
                    for b in &coalitions[i + 1..] {
                        if a.is_subset_of(b) || b.is_subset_of(a) {
                            return Err(GameError::NotAntichain(a.to_string(), b.to_string()));
                        }
                    }
                }
                let mut sorted = coalitions;
                sorted.sort();
                sorted
            }
        };
        Ok(Self::from_form(n, GameForm::Explicit(antichain)))
    }

    pub fn weighted(game: WeightedGame) -> Self {
        Self::from_form(game.n(), GameForm::Weighted(game))
    }

    pub fn combine(kind: Combination, parts: Vec<WeightedGame>) -> Result<Self> {
        let first = parts.first().ok_or(GameError::NoParts)?;
        let n = first.n();
        if let Some(p) = parts.iter().find(|p| p.n() != n) {
            return Err(GameError::PlayerCountMismatch { expected: n, found: p.n() });
        }
        let form = match kind {
            Combination::Intersection => GameForm::Intersection(parts),
            Combination::Union => GameForm::Union(parts),
        };
        Ok(Self::from_form(n, form))
    }

    fn from_form(n: usize, form: GameForm) -> Self {
        Self { n, form, table: OnceLock::new() }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn form(&self) -> &GameForm {
        &self.form
    }

    pub fn grand_coalition(&self) -> Coalition {
        Coalition::from_bits_unchecked(self.n, full_mask(self.n))
    }

    pub fn is_winning(&self, coalition: &Coalition) -> Result<bool> {
        if coalition.n() != self.n {
            return Err(GameError::PlayerCountMismatch {
                expected: self.n,
                found: coalition.n(),
            });
        }
        Ok(self.wins_bits(coalition.bits()))
    }

    /// Evaluate a raw mask; uses the truth table once it exists.
    #[inline]
    pub(crate) fn wins_bits(&self, bits: u32) -> bool {
        if let Some(t) = self.table.get() {
            return t.wins_bits(bits);
        }
        match &self.form {
            GameForm::Explicit(mwc) => mwc.iter().any(|s| s.bits() & !bits == 0),
            GameForm::Weighted(g) => g.wins_bits(bits),
            GameForm::Intersection(parts) => parts.iter().all(|g| g.wins_bits(bits)),
            GameForm::Union(parts) => parts.iter().any(|g| g.wins_bits(bits)),
        }
    }

    pub fn has_truth_table(&self) -> bool {
        self.table.get().is_some()
    }

    pub fn truth_table(&self) -> &TruthTable {
        self.table.get_or_init(|| self.build_truth_table())
    }

    fn build_truth_table(&self) -> TruthTable {
        match &self.form {
            GameForm::Explicit(mwc) => upward_closure(self.n, mwc),
            GameForm::Weighted(g) => threshold_table(self.n, std::slice::from_ref(g), true),
            GameForm::Intersection(parts) => threshold_table(self.n, parts, true),
            GameForm::Union(parts) => threshold_table(self.n, parts, false),
        }
    }
}

fn upward_closure(n: usize, mwc: &[Coalition]) -> TruthTable {
    let size = 1usize << n;
    let mut win = vec![false; size];
    for s in mwc {
        win[(s.bits() >> 1) as usize] = true;
    }
    for j in 0..n {
        let bit = 1usize << j;
        for idx in 0..size {
            if idx & bit != 0 && win[idx ^ bit] {
                win[idx] = true;
            }
        }
    }
    let mut table = TruthTable::zeroed(n);
    for (idx, _) in win.iter().enumerate().filter(|(_, &w)| w) {
        table.set(idx);
    }
    table
}

/// Walk all coalitions in Gray-code order keeping one running weight per part.
fn threshold_table(n: usize, parts: &[WeightedGame], all: bool) -> TruthTable {
    let mut table = TruthTable::zeroed(n);
    let mut sums = vec![0u64; parts.len()];
    let mut index = 0usize;
    for step in 0..(1usize << n) {
        if step > 0 {
            let j = step.trailing_zeros() as usize;
            index ^= 1 << j;
            let adding = index & (1 << j) != 0;
            for (sum, part) in sums.iter_mut().zip(parts) {
                if adding {
                    *sum += part.weights()[j];
                } else {
                    *sum -= part.weights()[j];
                }
            }
        }
        let mut results = sums.iter().zip(parts).map(|(s, p)| *s >= p.quota());
        let wins = if all { results.all(|b| b) } else { results.any(|b| b) };
        if wins {
            table.set(index);
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wg(q: i64, w: &[i64]) -> WeightedGame {
        WeightedGame::new(q, w).unwrap()
    }

    fn c(n: usize, players: &[usize]) -> Coalition {
        Coalition::new(n, players.iter().copied()).unwrap()
    }

    fn example1_n2() -> SimpleGame {
        SimpleGame::combine(
            Combination::Intersection,
            vec![wg(1, &[1, 1, 0, 0]), wg(1, &[0, 0, 1, 1])],
        )
        .unwrap()
    }

    #[test]
    fn weighted_validation() {
        assert!(WeightedGame::new(2, &[1, 1, 1]).is_ok());
        assert_eq!(WeightedGame::new(0, &[1, 1]), Err(GameError::QuotaTooSmall(0)));
        assert_eq!(
            WeightedGame::new(1, &[1, -1]),
            Err(GameError::NegativeWeight { player: 2, weight: -1 })
        );
        assert_eq!(
            WeightedGame::new(5, &[1, 1]),
            Err(GameError::QuotaExceedsTotal { quota: 5, total: 2 })
        );
        assert!(WeightedGame::new(10, &[3, 6, 9, 1, 1, 0, 0]).is_ok());
        assert_eq!(WeightedGame::new(1, &[]), Err(GameError::NoPlayers));
    }

    #[test]
    fn explicit_modes() {
        let g = SimpleGame::explicit(2, vec![c(2, &[1])], ExplicitMode::MinimalGiven).unwrap();
        assert!(g.is_winning(&c(2, &[1])).unwrap());
        assert!(g.is_winning(&c(2, &[1, 2])).unwrap());
        assert!(!g.is_winning(&c(2, &[2])).unwrap());
        assert!(!g.is_winning(&c(2, &[])).unwrap());

        let g = SimpleGame::explicit(
            2,
            vec![c(2, &[1]), c(2, &[1, 2])],
            ExplicitMode::ArbitraryWinning,
        )
        .unwrap();
        assert_eq!(g.form(), &GameForm::Explicit(vec![c(2, &[1])]));

        assert!(matches!(
            SimpleGame::explicit(2, vec![c(2, &[1]), c(2, &[1, 2])], ExplicitMode::MinimalGiven),
            Err(GameError::NotAntichain(..))
        ));
        assert_eq!(
            SimpleGame::explicit(2, vec![c(2, &[])], ExplicitMode::ArbitraryWinning).unwrap_err(),
            GameError::EmptyWinningCoalition
        );
        assert_eq!(
            SimpleGame::explicit(2, vec![], ExplicitMode::ArbitraryWinning).unwrap_err(),
            GameError::NoCoalitions
        );
        assert_eq!(
            SimpleGame::explicit(25, vec![], ExplicitMode::ArbitraryWinning).unwrap_err(),
            GameError::TooManyPlayers(25)
        );
        assert!(matches!(
            SimpleGame::explicit(3, vec![c(2, &[1])], ExplicitMode::MinimalGiven),
            Err(GameError::PlayerCountMismatch { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn explicit_matches_pair_rule() {
        let g = SimpleGame::explicit(
            4,
            vec![c(4, &[1, 3]), c(4, &[1, 4]), c(4, &[2, 3]), c(4, &[2, 4])],
            ExplicitMode::MinimalGiven,
        )
        .unwrap();
        let reference = example1_n2();
        for bits in (0u32..16).map(|r| r << 1) {
            let s = Coalition::from_bits(4, bits).unwrap();
            let rule = (bits & 0b0110 != 0) && (bits & 0b11000 != 0);
            assert_eq!(g.is_winning(&s).unwrap(), rule, "{s}");
            assert_eq!(reference.is_winning(&s).unwrap(), rule, "{s}");
        }
    }

    #[test]
    fn composite_evaluation() {
        let g = example1_n2();
        assert!(g.is_winning(&c(4, &[1, 3])).unwrap());
        assert!(!g.is_winning(&c(4, &[1, 2])).unwrap());
        assert!(!g.is_winning(&c(4, &[])).unwrap());
        assert!(g.is_winning(&c(4, &[1, 2, 3, 4])).unwrap());
        assert!(g.is_winning(&c(3, &[1])).is_err());

        let u = SimpleGame::combine(
            Combination::Union,
            vec![wg(2, &[1, 1, 0, 0]), wg(2, &[0, 0, 1, 1])],
        )
        .unwrap();
        assert!(u.is_winning(&c(4, &[1, 2])).unwrap());
        assert!(!u.is_winning(&c(4, &[1, 3])).unwrap());

        assert_eq!(SimpleGame::combine(Combination::Union, vec![]).unwrap_err(), GameError::NoParts);
        assert!(matches!(
            SimpleGame::combine(Combination::Union, vec![wg(1, &[1]), wg(1, &[1, 1])]),
            Err(GameError::PlayerCountMismatch { .. })
        ));
    }

    #[test]
    fn truth_table_agrees_with_direct_evaluation() {
        let games = vec![
            example1_n2(),
            SimpleGame::weighted(wg(3, &[2, 1, 1, 1, 0])),
            SimpleGame::combine(Combination::Union, vec![wg(3, &[2, 1, 1, 1, 0]), wg(2, &[0, 0, 0, 1, 1])])
                .unwrap(),
            SimpleGame::explicit(5, vec![c(5, &[1, 2]), c(5, &[3, 4, 5])], ExplicitMode::MinimalGiven)
                .unwrap(),
        ];
        for g in games {
            let direct: Vec<bool> = (0u32..1 << g.n()).map(|r| g.wins_bits(r << 1)).collect();
            let table = g.truth_table().clone();
            assert!(g.has_truth_table());
            for (r, &w) in direct.iter().enumerate() {
                assert_eq!(table.wins_bits((r as u32) << 1), w);
            }
        }
    }

    #[test]
    fn weighted_dual_quota() {
        assert_eq!(wg(2, &[1, 1, 1]).dual(), wg(2, &[1, 1, 1]));
        assert_eq!(wg(1, &[1, 0]).dual(), wg(1, &[1, 0]));
        assert_eq!(wg(1, &[1, 1, 0, 0]).dual(), wg(2, &[1, 1, 0, 0]));
        assert_eq!(wg(2, &[1, 1, 1]).to_string(), "[2; 1,1,1]");
    }
}
