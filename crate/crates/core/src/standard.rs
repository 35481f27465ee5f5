//! Standard words and their children. A directive sequence (d0, d1, ...,
//! d_{m-1}) grows words s_0 = b, s_1 = a, s_{i+1} = s_i^{d_{i-1}} s_{i-1};
//! the result s_{m+1} is the standard word of order m+1. The all-ones
//! directive yields the Fibonacci words. Plus-words append one letter chosen
//! by the parity of the order.

use std::fmt;
use std::str::FromStr;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::word::{Word, A, B};

/// Hard ceiling on generated word length (64 Mi letters).
pub const GENERATION_LIMIT: usize = 1 << 26;

/// Directive entries: the first may be zero, the rest must be positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DirectiveSequence {
    entries: Vec<u32>,
}

impl DirectiveSequence {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyDirective);
        }
        if entries[1..].iter().any(|&d| d == 0) {
            return Err(Error::NonPositiveDirectiveEntry);
        }
        Ok(DirectiveSequence { entries })
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Order of the standard word this directive generates.
    pub fn order(&self) -> usize {
        self.entries.len() + 1
    }

    /// The all-ones directive generating the Fibonacci word s_i.
    pub fn ones(i: usize) -> Result<Self> {
        if i < 1 {
            return Err(Error::EmptyDirective);
        }
        DirectiveSequence::new(vec![1; i - 1])
    }
}

impl fmt::Display for DirectiveSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for DirectiveSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for token in s.split(',') {
            let token = token.trim();
            entries.push(
                token
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidDirectiveEntry(token.to_string()))?,
            );
        }
        DirectiveSequence::new(entries)
    }
}

impl Serialize for DirectiveSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DirectiveSequence {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// F_0 = F_1 = 1, F_{i+1} = F_i + F_{i-1}.
///
/// Panics if the value overflows u64 (i > 91).
pub fn fibonacci_number(i: usize) -> u64 {
    let (mut prev, mut cur) = (1u64, 1u64);
    for _ in 1..i {
        let next = prev
            .checked_add(cur)
            .expect("fibonacci number overflows u64");
        prev = cur;
        cur = next;
    }
    cur
}

/// The Fibonacci word s_i, of length F_i.
pub fn fibonacci_word(i: usize) -> Result<Word> {
    match i {
        0 => Ok(Word::from_raw(vec![B])),
        1 => Ok(Word::from_raw(vec![A])),
        _ => standard_word(&DirectiveSequence::ones(i)?),
    }
}

/// Run the directive recurrence to its end.
pub fn standard_word(directive: &DirectiveSequence) -> Result<Word> {
    let mut prev = vec![B];
    let mut cur = vec![A];
    for &d in directive.entries() {
        let next_len = d as u128 * cur.len() as u128 + prev.len() as u128;
        if next_len > GENERATION_LIMIT as u128 {
            return Err(Error::GenerationLimit {
                limit: GENERATION_LIMIT,
            });
        }
        let mut next = Vec::with_capacity(next_len as usize);
        for _ in 0..d {
            next.extend_from_slice(&cur);
        }
        next.extend_from_slice(&prev);
        prev = cur;
        cur = next;
    }
    Ok(Word::from_raw(cur))
}

/// x_i: the Fibonacci word s_i with its last two letters removed. A
/// palindrome; x_2 is empty.
pub fn palindromic_prefix(i: usize) -> Result<Word> {
    if i < 2 {
        return Err(Error::OrderTooSmall { order: i, min: 2 });
    }
    let s = fibonacci_word(i)?;
    Ok(Word::from_raw(s.as_bytes()[..s.len() - 2].to_vec()))
}

/// s_{2k}b (even) or s_{2k+1}a (odd): the Fibonacci word of even or odd
/// order with one letter appended.
pub fn fibonacci_plus(k: usize, parity: Parity) -> Result<Word> {
    if k < 2 {
        return Err(Error::KTooSmall { k });
    }
    let (order, extra) = match parity {
        Parity::Even => (2 * k, B),
        Parity::Odd => (2 * k + 1, A),
    };
    let mut word = fibonacci_word(order)?;
    word.push(extra);
    Ok(word)
}

/// The standard word of the directive with b appended (even order) or a
/// appended (odd order). Directives starting with 0 generate b-initial
/// words; those are rejected — exchange the letters instead.
pub fn standard_plus(directive: &DirectiveSequence) -> Result<Word> {
    if directive.entries()[0] == 0 {
        return Err(Error::LeadingZeroDirective);
    }
    let order = directive.order();
    if order < 4 {
        return Err(Error::OrderTooSmall { order, min: 4 });
    }
    let mut word = standard_word(directive)?;
    word.push(if order % 2 == 0 { B } else { A });
    Ok(word)
}
