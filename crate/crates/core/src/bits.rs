// SPDX-License-Identifier: Apache-2.0
//! Fixed-width bit vectors used for gate and circuit evaluation.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Widest vector representable by [`BitVector`].
pub const MAX_WIDTH: usize = 64;

/// A fixed-width vector of bits.
///
/// Index 0 is the leftmost line (input `A` of a gate). The packed form
/// returned by [`BitVector::index`] stores index 0 in the most significant
/// position, so counting upward through `0..2^width` enumerates rows in the
/// usual ascending truth-table order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BitVector {
    width: u8,
    word: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BitsError {
    #[error("bit vector of width {0} exceeds the {MAX_WIDTH}-bit limit")]
    TooWide(usize),
    #[error("invalid bit character {0:?} (expected '0' or '1')")]
    InvalidChar(char),
}

impl BitVector {
    /// All-zero vector. Panics if `width > MAX_WIDTH`.
    pub fn zeros(width: usize) -> Self {
        assert!(width <= MAX_WIDTH, "bit vector width {width} too large");
        BitVector {
            width: width as u8,
            word: 0,
        }
    }

    /// Row `index` of a `width`-wide truth table. Bits of `index` above
    /// `width` are discarded.
    pub fn from_index(index: u64, width: usize) -> Self {
        let mut v = Self::zeros(width);
        v.word = index & mask(width);
        v
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self, BitsError> {
        if bits.len() > MAX_WIDTH {
            return Err(BitsError::TooWide(bits.len()));
        }
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        Ok(v)
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    pub fn is_empty(&self) -> bool {
        self.width == 0
    }

    /// Packed row index (index 0 is the most significant bit).
    pub fn index(&self) -> u64 {
        self.word
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.width(), "bit index {i} out of range");
        (self.word >> self.shift(i)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.width(), "bit index {i} out of range");
        let bit = 1u64 << self.shift(i);
        if value {
            self.word |= bit;
        } else {
            self.word &= !bit;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.width()).map(move |i| self.get(i))
    }

    pub fn to_vec(&self) -> Vec<bool> {
        self.iter().collect()
    }

    fn shift(&self, i: usize) -> usize {
        self.width() - 1 - i
    }
}

fn mask(width: usize) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

/// Parses a string of `0`/`1` characters, leftmost character first.
/// Whitespace, `_` and `,` separators are ignored.
impl FromStr for BitVector {
    type Err = BitsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bits = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '_' && *c != ',')
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(BitsError::InvalidChar(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_bits(&bits)
    }
}
