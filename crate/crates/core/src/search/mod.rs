//! Exhaustive maximum runs-ratio search. Words are enumerated one conjugacy
//! class at a time (necklaces), then classes related by reversal or by an
//! order-reversing relabeling — the symmetries the ratio is invariant under
//! — are deduplicated, and the ratio of each surviving representative is
//! computed on packed machine words.

pub mod necklace;
mod packed;

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::bwt::{bwt_runs, rho, RhoValue};
use crate::error::{Error, Result};
use crate::standard::{fibonacci_plus, fibonacci_word, standard_plus, DirectiveSequence, Parity};
use crate::word::{Word, B};

/// Lengths above this are refused without `force`.
pub const DEFAULT_SEARCH_CAP: usize = 30;
/// Binary words must fit 63 bits, ternary words 31 two-bit groups.
pub const MAX_BINARY_LEN: usize = 63;
pub const MAX_TERNARY_LEN: usize = 31;

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Worker threads; None uses the global pool.
    pub jobs: Option<usize>,
    /// Allow lengths above `cap`.
    pub force: bool,
    pub cap: usize,
    /// Alphabet size: 2 or 3.
    pub alphabet: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            jobs: None,
            force: false,
            cap: DEFAULT_SEARCH_CAP,
            alphabet: 2,
        }
    }
}

/// Result of one exhaustive sweep at a fixed length.
#[derive(Clone, Debug)]
pub struct RhoReport {
    pub n: usize,
    pub rho: RhoValue,
    /// Canonical representatives attaining the maximum, sorted.
    pub witnesses: Vec<String>,
    /// Representatives whose ratio was evaluated.
    pub words_scanned: u64,
    pub elapsed: Duration,
}

// Equality disregards timing, so reruns compare equal.
impl PartialEq for RhoReport {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.rho == other.rho
            && self.witnesses == other.witnesses
            && self.words_scanned == other.words_scanned
    }
}

impl Eq for RhoReport {}

impl Serialize for RhoReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("RhoReport", 6)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("rho_decimal", &self.rho.decimal())?;
        st.serialize_field("rho_exact", &self.rho.exact())?;
        st.serialize_field("witnesses", &self.witnesses)?;
        st.serialize_field("words_scanned", &self.words_scanned)?;
        st.serialize_field("seconds", &self.elapsed.as_secs_f64())?;
        st.end()
    }
}

/// Result of maximizing over the standard plus-words of a fixed length.
#[derive(Clone, Debug)]
pub struct StdPlusReport {
    pub n: usize,
    /// None when no standard plus-word has length n.
    pub rho: Option<RhoValue>,
    pub directive: Option<DirectiveSequence>,
    pub word: Option<Word>,
    pub words_scanned: u64,
    pub elapsed: Duration,
}

impl Serialize for StdPlusReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("StdPlusReport", 7)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("rho_decimal", &self.rho.map(|r| r.decimal()))?;
        st.serialize_field("rho_exact", &self.rho.map(|r| r.exact()))?;
        st.serialize_field("directive", &self.directive)?;
        st.serialize_field("word", &self.word)?;
        st.serialize_field("words_scanned", &self.words_scanned)?;
        st.serialize_field("seconds", &self.elapsed.as_secs_f64())?;
        st.end()
    }
}

/// Prepending a b to the reversed Fibonacci word s_{2k} blows the run count
/// up from 2 to 2k.
#[derive(Clone, Debug, Serialize)]
pub struct CatastropheReport {
    pub k: usize,
    pub base: Word,
    pub extended: Word,
    pub r_base: usize,
    pub r_extended: usize,
    pub ratio_num: u64,
    pub ratio_den: u64,
}

impl CatastropheReport {
    pub fn ratio(&self) -> RhoValue {
        RhoValue::from_counts(self.r_extended, self.r_base)
    }
}

/// The least word in the full symmetry orbit of w: rotations, reversal, and
/// the letter exchange. Empty in, empty out.
pub fn canonical_representative(word: &Word) -> Word {
    if word.is_empty() {
        return Word::empty();
    }
    let rev = word.reverse();
    [
        word.lyndon_rotation().unwrap().0,
        rev.lyndon_rotation().unwrap().0,
        word.exchange().lyndon_rotation().unwrap().0,
        rev.exchange().lyndon_rotation().unwrap().0,
    ]
    .into_iter()
    .min()
    .unwrap()
}

fn validate(n: usize, opts: &SearchOptions) -> Result<usize> {
    let max = match opts.alphabet {
        2 => MAX_BINARY_LEN,
        3 => MAX_TERNARY_LEN,
        other => return Err(Error::AlphabetSize(other)),
    };
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    if n > max {
        return Err(Error::SearchWidth { n, max });
    }
    if n > opts.cap && !opts.force {
        return Err(Error::SearchCap { n, cap: opts.cap });
    }
    Ok(max)
}

/// Maximum runs-ratio over all length-n words, with the witnesses attaining
/// it.
pub fn rho_max(n: usize, opts: &SearchOptions) -> Result<RhoReport> {
    validate(n, opts)?;
    let started = Instant::now();
    let acc = with_pool(opts.jobs, || match opts.alphabet {
        2 => sweep::<1>(n, 2),
        _ => sweep::<2>(n, 3),
    });
    let mut witnesses = acc.witnesses;
    witnesses.sort_unstable(); // packed order = lex order at fixed length
    let to_string = |w: &u64| -> String {
        let letters = if opts.alphabet == 2 {
            packed::unpack::<1>(*w, n)
        } else {
            packed::unpack::<2>(*w, n)
        };
        letters.iter().map(|&l| (b'a' + l) as char).collect()
    };
    Ok(RhoReport {
        n,
        rho: RhoValue::from_counts(acc.hi as usize, acc.lo as usize),
        witnesses: witnesses.iter().map(to_string).collect(),
        words_scanned: acc.scanned,
        elapsed: started.elapsed(),
    })
}

/// One row per length in from..=to.
pub fn rho_table(from: usize, to: usize, opts: &SearchOptions) -> Result<Vec<RhoReport>> {
    if from > to {
        return Err(Error::EmptyRange { from, to });
    }
    validate(to, opts)?;
    validate(from, opts)?;
    let mut inner = opts.clone();
    inner.force = true;
    (from..=to).map(|n| rho_max(n, &inner)).collect()
}

struct Acc {
    hi: u32,
    lo: u32,
    witnesses: Vec<u64>,
    scanned: u64,
}

impl Acc {
    fn empty() -> Acc {
        Acc {
            hi: 0,
            lo: 1,
            witnesses: Vec::new(),
            scanned: 0,
        }
    }

    fn absorb(&mut self, w: u64, r1: u32, r2: u32) {
        self.scanned += 1;
        let (hi, lo) = if r1 >= r2 { (r1, r2) } else { (r2, r1) };
        match (hi as u64 * self.lo as u64).cmp(&(self.hi as u64 * lo as u64)) {
            std::cmp::Ordering::Greater => {
                self.hi = hi;
                self.lo = lo;
                self.witnesses.clear();
                self.witnesses.push(w);
            }
            std::cmp::Ordering::Equal => self.witnesses.push(w),
            std::cmp::Ordering::Less => {}
        }
    }

    fn merge(mut self, other: Acc) -> Acc {
        self.scanned += other.scanned;
        match (other.hi as u64 * self.lo as u64).cmp(&(self.hi as u64 * other.lo as u64)) {
            std::cmp::Ordering::Greater => {
                self.hi = other.hi;
                self.lo = other.lo;
                self.witnesses = other.witnesses;
            }
            std::cmp::Ordering::Equal => {
                if other.hi != 0 {
                    self.witnesses.extend(other.witnesses);
                }
            }
            std::cmp::Ordering::Less => {}
        }
        self
    }
}

/// Ratio of w if w is its orbit's representative, None otherwise. The orbit
/// is rotations x {id, reversal} x {id, order-reversing relabel} — the
/// symmetries that provably preserve the ratio. Larger relabeling groups
/// (e.g. all ternary permutations) do NOT preserve it: ρ(cbaa) = 4/3 but
/// swapping a and b gives ρ(cabb) = 1.
fn canonical_runs<const B: usize>(w: u64, n: usize) -> Option<(u32, u32)> {
    let rev = packed::reverse::<B>(w, n);
    if packed::least_rotation::<B>(rev, n) < w {
        return None;
    }
    let (ex, ex_rev) = if B == 1 {
        (
            packed::exchange_binary(w, n),
            packed::exchange_binary(rev, n),
        )
    } else {
        (
            packed::apply_perm(w, n, [2, 1, 0]),
            packed::apply_perm(rev, n, [2, 1, 0]),
        )
    };
    if packed::least_rotation::<B>(ex, n) < w || packed::least_rotation::<B>(ex_rev, n) < w {
        return None;
    }
    Some((
        packed::bwt_run_count::<B>(w, n),
        packed::bwt_run_count::<B>(rev, n),
    ))
}

fn sweep<const B: usize>(n: usize, m: u8) -> Acc {
    let split_depth = if m == 2 { 13 } else { 8 };
    if n <= split_depth + 3 {
        let mut acc = Acc::empty();
        necklace::for_each_necklace(n, m, &mut |letters| {
            let w = packed::pack::<B>(letters);
            if let Some((r1, r2)) = canonical_runs::<B>(w, n) {
                acc.absorb(w, r1, r2);
            }
        });
        acc
    } else {
        necklace::split_tasks(n, m, split_depth)
            .into_par_iter()
            .map(|task| {
                let mut acc = Acc::empty();
                necklace::run_task(n, m, &task, &mut |letters| {
                    let w = packed::pack::<B>(letters);
                    if let Some((r1, r2)) = canonical_runs::<B>(w, n) {
                        acc.absorb(w, r1, r2);
                    }
                });
                acc
            })
            .reduce(Acc::empty, Acc::merge)
    }
}

fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs {
        None => f(),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .expect("worker pool")
            .install(f),
    }
}

/// Maximum runs-ratio over the standard plus-words of length n, enumerating
/// every directive whose standard word has length n-1 (order at least 4,
/// first entry at least 1). The witness is the first maximizer in
/// depth-first directive order.
pub fn stdplus_rho_max(n: usize, opts: &SearchOptions) -> Result<StdPlusReport> {
    if n < 6 {
        return Err(Error::LengthTooSmall { n, min: 6 });
    }
    if n > opts.cap && !opts.force {
        return Err(Error::SearchCap { n, cap: opts.cap });
    }
    let started = Instant::now();
    let mut best: Option<(RhoValue, DirectiveSequence, Word)> = None;
    let mut scanned = 0u64;
    let mut entries = Vec::new();
    directive_dfs(n - 1, 1, 1, &mut entries, &mut scanned, &mut best)?;
    let (rho, directive, word) = match best {
        Some((r, d, w)) => (Some(r), Some(d), Some(w)),
        None => (None, None, None),
    };
    Ok(StdPlusReport {
        n,
        rho,
        directive,
        word,
        words_scanned: scanned,
        elapsed: started.elapsed(),
    })
}

fn directive_dfs(
    target: usize,
    len_prev: usize,
    len_cur: usize,
    entries: &mut Vec<u32>,
    scanned: &mut u64,
    best: &mut Option<(RhoValue, DirectiveSequence, Word)>,
) -> Result<()> {
    if len_cur == target && entries.len() >= 3 {
        let directive = DirectiveSequence::new(entries.clone())?;
        let word = standard_plus(&directive)?;
        *scanned += 1;
        let ratio = rho(&word);
        if best.as_ref().map_or(true, |(b, _, _)| ratio > *b) {
            *best = Some((ratio, directive, word));
        }
        return Ok(());
    }
    if len_cur >= target {
        return Ok(());
    }
    let mut d = 1u32;
    loop {
        let next = d as usize * len_cur + len_prev;
        if next > target {
            return Ok(());
        }
        entries.push(d);
        directive_dfs(target, len_cur, next, entries, scanned, best)?;
        entries.pop();
        d += 1;
    }
}

/// The one-bit catastrophe at scale k: u = reverse(s_{2k}) has a 2-run
/// transform, and prepending a single b multiplies the run count by k.
pub fn one_bit_catastrophe(k: usize) -> Result<CatastropheReport> {
    if k < 2 {
        return Err(Error::KTooSmall { k });
    }
    let base = fibonacci_word(2 * k)?.reverse();
    let extended = fibonacci_plus(k, Parity::Even)?.reverse();
    debug_assert_eq!(extended.as_bytes()[0], B);
    debug_assert_eq!(&extended.as_bytes()[1..], base.as_bytes());
    let r_base = bwt_runs(&base);
    let r_extended = bwt_runs(&extended);
    let ratio = RhoValue::from_counts(r_extended, r_base);
    Ok(CatastropheReport {
        k,
        base,
        extended,
        r_base,
        r_extended,
        ratio_num: ratio.num(),
        ratio_den: ratio.den(),
    })
}
