//! Words over the alphabet {a, b}: rotations, predicates, and circular-factor
//! machinery. All public indices are 1-based; internals are 0-based.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rle::RleString;

pub const A: u8 = b'a';
pub const B: u8 = b'b';

/// A finite word over {a, b}. Ordering is lexicographic with a < b.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<u8>,
}

impl Word {
    pub fn empty() -> Self {
        Word {
            letters: Vec::new(),
        }
    }

    /// Build from ASCII bytes, rejecting anything outside {a, b}.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        for &c in bytes {
            if c != A && c != B {
                return Err(Error::InvalidLetter(c as char));
            }
        }
        Ok(Word {
            letters: bytes.to_vec(),
        })
    }

    /// Internal constructor for letters already known to be valid.
    pub(crate) fn from_raw(letters: Vec<u8>) -> Self {
        debug_assert!(letters.iter().all(|&c| c == A || c == B));
        Word { letters }
    }

    /// Unpack the low `n` bits of `bits` (most significant of the n first;
    /// 0 = a, 1 = b) into a word. Used by the exhaustive search.
    pub fn from_bits(bits: u64, n: usize) -> Self {
        assert!(n <= 64);
        let letters = (0..n)
            .map(|i| if bits >> (n - 1 - i) & 1 == 0 { A } else { B })
            .collect();
        Word { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.letters
    }

    pub fn count_a(&self) -> usize {
        self.letters.iter().filter(|&&c| c == A).count()
    }

    pub fn count_b(&self) -> usize {
        self.len() - self.count_a()
    }

    pub(crate) fn push(&mut self, letter: u8) {
        debug_assert!(letter == A || letter == B);
        self.letters.push(letter);
    }

    pub fn reverse(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word { letters }
    }

    /// Swap a <-> b.
    pub fn exchange(&self) -> Word {
        let letters = self
            .letters
            .iter()
            .map(|&c| if c == A { B } else { A })
            .collect();
        Word { letters }
    }

    /// The i-th rotation w[i..n]w[1..i-1], 1-based; conjugate(w, 1) = w.
    pub fn conjugate(&self, i: usize) -> Result<Word> {
        let n = self.len();
        if i == 0 || i > n {
            return Err(Error::RotationIndex { index: i, len: n });
        }
        let mut letters = self.letters.clone();
        letters.rotate_left(i - 1);
        Ok(Word { letters })
    }

    /// Longest common prefix.
    pub fn lcp(&self, other: &Word) -> Word {
        let k = self
            .letters
            .iter()
            .zip(&other.letters)
            .take_while(|(x, y)| x == y)
            .count();
        Word {
            letters: self.letters[..k].to_vec(),
        }
    }

    /// w repeated k times.
    pub fn power(&self, k: usize) -> Word {
        Word {
            letters: self.letters.repeat(k),
        }
    }

    /// True iff w is not a proper power, i.e. has |w| distinct rotations.
    pub fn is_primitive(&self) -> Result<bool> {
        let n = self.len();
        if n == 0 {
            return Err(Error::EmptyWord);
        }
        let p = smallest_period(&self.letters);
        Ok(!(p < n && n % p == 0))
    }

    /// True iff w is primitive and strictly smaller than every other rotation.
    pub fn is_lyndon(&self) -> Result<bool> {
        let n = self.len();
        if n == 0 {
            return Err(Error::EmptyWord);
        }
        for i in 1..n {
            if rotation_cmp(&self.letters, 0, i) != Ordering::Less {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The lexicographically least rotation and the smallest 1-based index
    /// achieving it.
    pub fn lyndon_rotation(&self) -> Result<(Word, usize)> {
        let n = self.len();
        if n == 0 {
            return Err(Error::EmptyWord);
        }
        let p = least_rotation_start(&self.letters);
        let mut letters = self.letters.clone();
        letters.rotate_left(p);
        Ok((Word { letters }, p + 1))
    }

    /// How many rotations of w have u as a prefix.
    pub fn circular_factor_occurrences(&self, u: &Word) -> Result<usize> {
        let n = self.len();
        let m = u.len();
        if m == 0 || m > n {
            return Err(Error::FactorLength {
                factor_len: m,
                word_len: n,
            });
        }
        let count = (0..n)
            .filter(|&p| (0..m).all(|j| self.letters[(p + j) % n] == u.letters[j]))
            .count();
        Ok(count)
    }

    /// All circular factors u with 1 <= |u| <= max_len such that both a·u and
    /// b·u occur circularly, sorted by length then lexicographically. The
    /// empty factor is excluded.
    pub fn left_special_circular_factors(&self, max_len: usize) -> Result<Vec<Word>> {
        let n = self.len();
        if max_len > n {
            return Err(Error::MaxLenRange {
                max_len,
                word_len: n,
            });
        }
        if n == 0 || max_len == 0 {
            return Ok(Vec::new());
        }
        let mut starts: Vec<usize> = (0..n).collect();
        starts.sort_by(|&x, &y| rotation_cmp(&self.letters, x, y).then(x.cmp(&y)));
        // LCP between neighbouring sorted rotations, capped at n.
        let adj_lcp: Vec<usize> = starts
            .windows(2)
            .map(|pair| {
                (0..n)
                    .take_while(|&j| {
                        self.letters[(pair[0] + j) % n] == self.letters[(pair[1] + j) % n]
                    })
                    .count()
            })
            .collect();
        // The letter circularly preceding each rotation.
        let prec: Vec<u8> = starts
            .iter()
            .map(|&p| self.letters[(p + n - 1) % n])
            .collect();
        let mut out = Vec::new();
        for len in 1..=max_len {
            let mut lo = 0;
            for hi in 0..n {
                // rows lo..=hi share their first `len` letters
                if hi + 1 == n || adj_lcp[hi] < len {
                    let mut seen = [false; 2];
                    for &c in &prec[lo..=hi] {
                        seen[(c == B) as usize] = true;
                    }
                    if seen[0] && seen[1] {
                        let p = starts[lo];
                        let factor: Vec<u8> = (0..len).map(|j| self.letters[(p + j) % n]).collect();
                        out.push(Word { letters: factor });
                    }
                    lo = hi + 1;
                }
            }
        }
        Ok(out)
    }

    /// True iff every pair of equal-length circular factors differs by at
    /// most 1 in each letter count.
    pub fn is_balanced_circular(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return true;
        }
        // prefix[i] = #a among the first i letters of w·w
        let mut prefix = vec![0usize; 2 * n + 1];
        for i in 0..2 * n {
            prefix[i + 1] = prefix[i] + (self.letters[i % n] == A) as usize;
        }
        for len in 1..=n {
            let mut min = usize::MAX;
            let mut max = 0;
            for p in 0..n {
                let count = prefix[p + len] - prefix[p];
                min = min.min(count);
                max = max.max(count);
            }
            if max - min > 1 {
                return false;
            }
        }
        true
    }

    /// Number of maximal blocks of equal letters, counted linearly.
    pub fn count_runs(&self) -> usize {
        let mut runs = 0;
        let mut prev = 0u8;
        for &c in &self.letters {
            if c != prev {
                runs += 1;
                prev = c;
            }
        }
        runs
    }

    pub fn rle(&self) -> RleString {
        RleString::encode(self)
    }
}

/// Compare the rotations of `letters` starting at 0-based positions p and q.
pub(crate) fn rotation_cmp(letters: &[u8], p: usize, q: usize) -> Ordering {
    let n = letters.len();
    for j in 0..n {
        let ord = letters[(p + j) % n].cmp(&letters[(q + j) % n]);
        if ord != Ordering::Equal {
            return ord;
        }
    }
    Ordering::Equal
}

/// Smallest 0-based start of the lexicographically least rotation.
pub(crate) fn least_rotation_start(letters: &[u8]) -> usize {
    let n = letters.len();
    debug_assert!(n > 0);
    let at = |i: usize| letters[i % n];
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        match at(i + k).cmp(&at(j + k)) {
            Ordering::Equal => k += 1,
            Ordering::Less => {
                j += k + 1;
                if i == j {
                    j += 1;
                }
                k = 0;
            }
            Ordering::Greater => {
                i += k + 1;
                if i == j {
                    i += 1;
                }
                k = 0;
            }
        }
    }
    i.min(j)
}

/// Smallest period of `letters` in the border sense (KMP failure function).
fn smallest_period(letters: &[u8]) -> usize {
    let n = letters.len();
    let mut fail = vec![0usize; n];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && letters[i] != letters[k] {
            k = fail[k - 1];
        }
        if letters[i] == letters[k] {
            k += 1;
        }
        fail[i] = k;
    }
    n - fail[n - 1]
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(std::str::from_utf8(&self.letters).expect("ascii"))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self)
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Word::from_bytes(s.as_bytes())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}
