//! Run-length encoded words, printed in the style `b^13 a^20 b a`.

use std::fmt;
use std::str::FromStr;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::word::{Word, A, B};

/// A word as a sequence of maximal (letter, length) runs. Adjacent runs
/// always carry distinct letters and positive lengths.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct RleString {
    runs: Vec<(u8, usize)>,
}

impl RleString {
    pub fn new() -> Self {
        RleString { runs: Vec::new() }
    }

    pub fn encode(word: &Word) -> Self {
        let mut out = RleString::new();
        for &c in word.as_bytes() {
            out.push_run(c, 1);
        }
        out
    }

    /// Append a run, merging with the trailing run when letters match.
    /// A zero-length run is a no-op.
    pub fn push_run(&mut self, letter: u8, len: usize) {
        debug_assert!(letter == A || letter == B);
        if len == 0 {
            return;
        }
        match self.runs.last_mut() {
            Some((c, l)) if *c == letter => *l += len,
            _ => self.runs.push((letter, len)),
        }
    }

    pub fn runs(&self) -> &[(u8, usize)] {
        &self.runs
    }

    pub fn count_runs(&self) -> usize {
        self.runs.len()
    }

    pub fn total_len(&self) -> usize {
        self.runs.iter().map(|&(_, l)| l).sum()
    }

    pub fn count_letter(&self, letter: u8) -> usize {
        self.runs
            .iter()
            .filter(|&&(c, _)| c == letter)
            .map(|&(_, l)| l)
            .sum()
    }

    pub fn expand(&self) -> Word {
        let mut letters = Vec::with_capacity(self.total_len());
        for &(c, l) in &self.runs {
            letters.extend(std::iter::repeat(c).take(l));
        }
        Word::from_raw(letters)
    }
}

impl fmt::Display for RleString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(c, l)) in self.runs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if l == 1 {
                write!(f, "{}", c as char)?;
            } else {
                write!(f, "{}^{}", c as char, l)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RleString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RleString({})", self)
    }
}

impl FromStr for RleString {
    type Err = Error;

    /// Parse whitespace-separated tokens of the form `a`, `b`, `a^5`, `b^13`.
    fn from_str(s: &str) -> Result<Self> {
        let mut out = RleString::new();
        for token in s.split_whitespace() {
            let bad = || Error::InvalidRle(token.to_string());
            let mut chars = token.splitn(2, '^');
            let letter = match chars.next().unwrap_or("") {
                "a" => A,
                "b" => B,
                _ => return Err(bad()),
            };
            let len = match chars.next() {
                None => 1,
                Some(exp) => exp.parse::<usize>().map_err(|_| bad())?,
            };
            if len == 0 {
                return Err(bad());
            }
            out.push_run(letter, len);
        }
        Ok(out)
    }
}

impl Serialize for RleString {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RleString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn encode_and_display() {
        let r = RleString::encode(&w("bbaaba"));
        assert_eq!(r.to_string(), "b^2 a^2 b a");
        assert_eq!(r.count_runs(), 4);
        assert_eq!(r.total_len(), 6);
        assert_eq!(RleString::encode(&Word::empty()).to_string(), "");
    }

    #[test]
    fn round_trip() {
        for s in ["", "a", "ab", "bbaaba", "aaabbbab"] {
            let word = w(s);
            assert_eq!(word.rle().expand(), word);
        }
    }

    #[test]
    fn push_run_merges() {
        let mut r = RleString::new();
        r.push_run(B, 2);
        r.push_run(B, 3);
        r.push_run(A, 0);
        r.push_run(A, 1);
        assert_eq!(r.to_string(), "b^5 a");
        assert_eq!(r.count_runs(), 2);
    }

    #[test]
    fn parse() {
        let r: RleString = "b^13 a^20 b a".parse().unwrap();
        assert_eq!(r.count_runs(), 4);
        assert_eq!(r.total_len(), 35);
        assert_eq!(r.to_string(), "b^13 a^20 b a");
        // adjacent equal letters merge on parse
        let r: RleString = "a^2 a".parse().unwrap();
        assert_eq!(r.to_string(), "a^3");
        assert!("c^2".parse::<RleString>().is_err());
        assert!("a^0".parse::<RleString>().is_err());
        assert!("a^x".parse::<RleString>().is_err());
    }

    #[test]
    fn count_runs_matches_word() {
        for s in ["a", "ab", "bbaaba", "abaababa"] {
            assert_eq!(w(s).rle().count_runs(), w(s).count_runs());
        }
    }
}
