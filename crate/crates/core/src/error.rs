use thiserror::Error;

use crate::N_MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("player count must be at least 1")]
    NoPlayers,
    #[error("{0} players exceeds the supported maximum of {N_MAX}")]
    TooManyPlayers(usize),
    #[error("player {player} is outside 1..={n}")]
    PlayerOutOfRange { player: usize, n: usize },
    #[error("the empty coalition cannot be winning")]
    EmptyWinningCoalition,
    #[error("coalition list is empty")]
    NoCoalitions,
    #[error("coalitions {0} and {1} are comparable, not an antichain")]
    NotAntichain(String, String),
    #[error("quota {0} must be at least 1")]
    QuotaTooSmall(i64),
    #[error("weight of player {player} is negative ({weight})")]
    NegativeWeight { player: usize, weight: i64 },
    #[error("total weight {total} is below quota {quota}")]
    QuotaExceedsTotal { quota: u64, total: u64 },
    #[error("player count mismatch: expected {expected}, found {found}")]
    PlayerCountMismatch { expected: usize, found: usize },
    #[error("no weighted games to combine")]
    NoParts,
    #[error("blocks overlap on player {0}")]
    OverlappingBlocks(usize),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("{count} target coalitions exceeds the search limit of {max}")]
    TooManyTargets { count: usize, max: usize },
}

impl GameError {
    /// Errors caused by a configured size ceiling rather than malformed input.
    pub fn is_size_limit(&self) -> bool {
        matches!(
            self,
            GameError::TooManyPlayers(_) | GameError::TooManyTargets { .. }
        )
    }
}

pub type Result<T, E = GameError> = std::result::Result<T, E>;
