use std::fmt;

use crate::error::{GameError, Result};
use crate::N_MAX;

/// A set of players drawn from `1..=n`.
///
/// Player `j` is stored in bit `j` of the mask; bit 0 is always clear. The
/// derived ordering compares masks first, so sorting a list of coalitions
/// over the same player set orders them by mask value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coalition {
    bits: u32,
    n: u8,
}

pub(crate) fn check_player_count(n: usize) -> Result<()> {
    if n == 0 {
        Err(GameError::NoPlayers)
    } else if n > N_MAX {
        Err(GameError::TooManyPlayers(n))
    } else {
        Ok(())
    }
}

/// Mask with bits `1..=n` set.
#[inline]
pub(crate) fn full_mask(n: usize) -> u32 {
    (((1u64 << n) - 1) << 1) as u32
}

impl Coalition {
    pub fn new(n: usize, players: impl IntoIterator<Item = usize>) -> Result<Self> {
        check_player_count(n)?;
        let mut bits = 0u32;
        for p in players {
            if p == 0 || p > n {
                return Err(GameError::PlayerOutOfRange { player: p, n });
            }
            bits |= 1 << p;
        }
        Ok(Self { bits, n: n as u8 })
    }

    pub fn from_bits(n: usize, bits: u32) -> Result<Self> {
        check_player_count(n)?;
        let stray = bits & !full_mask(n);
        if stray != 0 {
            let player = stray.trailing_zeros() as usize;
            return Err(GameError::PlayerOutOfRange { player, n });
        }
        Ok(Self { bits, n: n as u8 })
    }

    /// Caller guarantees `n` is in range and `bits` only uses bits `1..=n`.
    #[inline]
    pub(crate) fn from_bits_unchecked(n: usize, bits: u32) -> Self {
        debug_assert!(bits & !full_mask(n) == 0);
        Self { bits, n: n as u8 }
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::from_bits(n, 0)
    }

    pub fn grand(n: usize) -> Result<Self> {
        check_player_count(n)?;
        Ok(Self { bits: full_mask(n), n: n as u8 })
    }

    #[inline]
    pub fn bits(&self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn contains(&self, player: usize) -> bool {
        player < 32 && self.bits & (1 << player) != 0
    }

    #[inline]
    pub fn is_subset_of(&self, other: &Coalition) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn complement(&self) -> Coalition {
        Coalition { bits: full_mask(self.n()) & !self.bits, n: self.n }
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.n()).filter(move |&p| self.contains(p))
    }

    /// Membership string of length `n`, leftmost character is player 1.
    pub fn to_bitstring(&self) -> String {
        (1..=self.n())
            .map(|p| if self.contains(p) { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members()).finish()
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.members().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// Drop every coalition that strictly contains another one in the list.
pub(crate) fn minimal_elements(mut sets: Vec<Coalition>) -> Vec<Coalition> {
    sets.sort_by_key(|c| (c.len(), c.bits));
    sets.dedup();
    let mut kept: Vec<Coalition> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| k.is_subset_of(&s)) {
            kept.push(s);
        }
    }
    kept.sort();
    kept
}
