//! Permutations, dashed (generalized) patterns and occurrence counting.
//!
//! A generalized pattern is written as digit blocks separated by dashes, e.g.
//! `23-1` or `1-3-2`. Letters inside one block must land on adjacent
//! positions of the host permutation; a dash allows any gap.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use thiserror::Error;

/// A permutation of `1..=n` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    values: Vec<u32>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermutationError {
    #[error("value {value} at index {index} is outside 1..={len}")]
    OutOfRange {
        index: usize,
        value: u32,
        len: usize,
    },
    #[error("value {value} repeated at index {index}")]
    Repeated { index: usize, value: u32 },
}

impl Permutation {
    pub fn new(values: Vec<u32>) -> Result<Self, PermutationError> {
        let len = values.len();
        let mut seen = vec![false; len];
        for (index, &value) in values.iter().enumerate() {
            if value == 0 || value as usize > len {
                return Err(PermutationError::OutOfRange { index, value, len });
            }
            if std::mem::replace(&mut seen[value as usize - 1], true) {
                return Err(PermutationError::Repeated { index, value });
            }
        }
        Ok(Permutation { values })
    }

    /// Wraps values already known to form a permutation.
    pub(crate) fn from_trusted(values: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation { values }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            values: (1..=n as u32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let single_digits = self.values.iter().all(|&v| v < 10);
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 && !single_digits {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = String;

    /// Accepts compact digit strings (`35421`) or whitespace/comma separated values.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let values: Result<Vec<u32>, _> = if s.contains([' ', ',']) {
            s.split([' ', ','])
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u32>().map_err(|e| e.to_string()))
                .collect()
        } else {
            s.chars()
                .map(|c| c.to_digit(10).ok_or_else(|| format!("not a digit: {c:?}")))
                .collect()
        };
        Permutation::new(values?).map_err(|e| e.to_string())
    }
}

/// Why a pattern string was rejected; `position` is a 0-based character index.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("position {position}: {found:?} is not a digit or '-'")]
    NonDigit { position: usize, found: char },
    #[error("position {position}: empty block")]
    EmptyBlock { position: usize },
    #[error("position {position}: letter {letter} appears twice")]
    Duplicate { position: usize, letter: u32 },
    #[error("position {position}: letter {letter} outside 1..={len}")]
    OutOfRange {
        position: usize,
        letter: u32,
        len: usize,
    },
}

/// A dashed pattern: ordered non-empty blocks whose concatenation is a
/// permutation of `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneralizedPattern {
    letters: Vec<u32>,
    /// `glued[j]` is true when letter `j` shares a block with letter `j - 1`.
    glued: Vec<bool>,
}

impl GeneralizedPattern {
    /// Builds a pattern from explicit blocks. Letters are not limited to one digit here.
    pub fn from_blocks(blocks: &[Vec<u32>]) -> Result<Self, PatternError> {
        let k: usize = blocks.iter().map(Vec::len).sum();
        let mut letters = Vec::with_capacity(k);
        let mut glued = Vec::with_capacity(k);
        let mut seen = vec![false; k + 1];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(PatternError::EmptyBlock { position: b });
            }
            for (i, &letter) in block.iter().enumerate() {
                let position = letters.len();
                if letter == 0 || letter as usize > k {
                    return Err(PatternError::OutOfRange {
                        position,
                        letter,
                        len: k,
                    });
                }
                if std::mem::replace(&mut seen[letter as usize], true) {
                    return Err(PatternError::Duplicate { position, letter });
                }
                letters.push(letter);
                glued.push(i > 0);
            }
        }
        Ok(GeneralizedPattern { letters, glued })
    }

    /// Parses the dash syntax, e.g. `"23-1"`. The empty string is the empty pattern.
    pub fn parse(text: &str) -> Result<Self, PatternError> {
        if text.is_empty() {
            return Ok(GeneralizedPattern {
                letters: Vec::new(),
                glued: Vec::new(),
            });
        }
        let mut letters = Vec::new();
        let mut glued = Vec::new();
        let mut positions = Vec::new();
        let mut block_len = 0usize;
        for (position, c) in text.chars().enumerate() {
            match c {
                '-' => {
                    if block_len == 0 {
                        return Err(PatternError::EmptyBlock { position });
                    }
                    block_len = 0;
                }
                '0'..='9' => {
                    letters.push(c.to_digit(10).unwrap());
                    glued.push(block_len > 0);
                    positions.push(position);
                    block_len += 1;
                }
                found => return Err(PatternError::NonDigit { position, found }),
            }
        }
        if block_len == 0 {
            return Err(PatternError::EmptyBlock {
                position: text.chars().count(),
            });
        }
        let k = letters.len();
        let mut seen = [false; 10];
        for (&letter, &position) in letters.iter().zip(&positions) {
            if letter == 0 || letter as usize > k {
                return Err(PatternError::OutOfRange {
                    position,
                    letter,
                    len: k,
                });
            }
            if std::mem::replace(&mut seen[letter as usize], true) {
                return Err(PatternError::Duplicate { position, letter });
            }
        }
        Ok(GeneralizedPattern { letters, glued })
    }

    /// The pattern `1-2-...-k` with every letter in its own block.
    pub fn classical(letters: &[u32]) -> Result<Self, PatternError> {
        let blocks: Vec<Vec<u32>> = letters.iter().map(|&l| vec![l]).collect();
        Self::from_blocks(&blocks)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn blocks(&self) -> Vec<Vec<u32>> {
        let mut blocks: Vec<Vec<u32>> = Vec::new();
        for (&letter, &glued) in self.letters.iter().zip(&self.glued) {
            match blocks.last_mut() {
                Some(block) if glued => block.push(letter),
                _ => blocks.push(vec![letter]),
            }
        }
        blocks
    }

    /// True when every block is a single letter.
    pub fn is_classical(&self) -> bool {
        !self.glued.iter().any(|&g| g)
    }

    /// Merges the block ending at letter `j - 1` with the block starting at letter `j`.
    /// Returns `None` if they are already in the same block or `j` is out of range.
    pub fn glue_at(&self, j: usize) -> Option<Self> {
        if j == 0 || j >= self.len() || self.glued[j] {
            return None;
        }
        let mut glued = self.glued.clone();
        glued[j] = true;
        Some(GeneralizedPattern {
            letters: self.letters.clone(),
            glued,
        })
    }

    /// Number of occurrences in a raw value slice (assumed pairwise distinct).
    ///
    /// Each occurrence is visited once by the search, so the total never
    /// outgrows `u64` for any search that terminates.
    pub fn count_in(&self, values: &[u32]) -> u64 {
        let k = self.letters.len();
        if k == 0 {
            return 1;
        }
        if values.len() < k {
            return 0;
        }
        let mut chosen = vec![0usize; k];
        self.search(values, 0, 0, &mut chosen)
    }

    fn search(&self, values: &[u32], j: usize, start: usize, chosen: &mut [usize]) -> u64 {
        let k = self.letters.len();
        if j == k {
            return 1;
        }
        // leave room for the k - j - 1 letters still to place
        let last = values.len() - (k - j);
        let (lo, hi) = if self.glued[j] {
            (start, start)
        } else {
            (start, last)
        };
        let mut total = 0;
        for i in lo..=hi.min(last) {
            let v = values[i];
            let letter = self.letters[j];
            let consistent = (0..j).all(|t| (values[chosen[t]] < v) == (self.letters[t] < letter));
            if consistent {
                chosen[j] = i;
                total += self.search(values, j + 1, i + 1, chosen);
            }
        }
        total
    }
}

impl fmt::Display for GeneralizedPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, (&letter, &glued)) in self.letters.iter().zip(&self.glued).enumerate() {
            if j > 0 && !glued {
                f.write_str("-")?;
            }
            if letter < 10 {
                write!(f, "{letter}")?;
            } else {
                write!(f, "({letter})")?;
            }
        }
        Ok(())
    }
}

impl FromStr for GeneralizedPattern {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GeneralizedPattern::parse(s)
    }
}

pub fn parse_pattern(text: &str) -> Result<GeneralizedPattern, PatternError> {
    GeneralizedPattern::parse(text)
}

/// Number of occurrences of `pat` in `perm`. The empty pattern occurs once.
pub fn count_occurrences(perm: &Permutation, pat: &GeneralizedPattern) -> BigUint {
    BigUint::from(pat.count_in(perm.values()))
}

pub fn avoids(perm: &Permutation, pat: &GeneralizedPattern) -> bool {
    pat.count_in(perm.values()) == 0
}
