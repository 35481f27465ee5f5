//! Predicted transforms for plus-words, and the structural facts behind
//! them. Every predicted shape carries arithmetic self-checks (letter counts
//! and run counts must add up before any transform is computed), and
//! [`verify_closed_forms`] replays predictions against the engine.

use std::collections::HashMap;
use std::fmt;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::bwt::{bwt_fast, bwt_runs};
use crate::error::{Error, Result};
use crate::rle::RleString;
use crate::standard::{
    fibonacci_number, fibonacci_plus, fibonacci_word, palindromic_prefix, standard_plus,
    DirectiveSequence, Parity,
};
use crate::word::{Word, A, B};

fn fib(i: usize) -> usize {
    fibonacci_number(i) as usize
}

/// Predicted transform of s_{2k}b (even) or s_{2k+1}a (odd): four runs.
pub fn predicted_bwt_fibplus(k: usize, parity: Parity) -> Result<RleString> {
    if k < 2 {
        return Err(Error::KTooSmall { k });
    }
    let mut out = RleString::new();
    match parity {
        Parity::Even => {
            // b^{F_{2k-2}} a^{F_{2k-1}-1} b a
            out.push_run(B, fib(2 * k - 2));
            out.push_run(A, fib(2 * k - 1) - 1);
            out.push_run(B, 1);
            out.push_run(A, 1);
            assert_eq!(out.total_len(), fib(2 * k) + 1);
            assert_eq!(out.count_letter(B), fib(2 * k - 2) + 1);
        }
        Parity::Odd => {
            // b a b^{F_{2k-1}-1} a^{F_{2k}}
            out.push_run(B, 1);
            out.push_run(A, 1);
            out.push_run(B, fib(2 * k - 1) - 1);
            out.push_run(A, fib(2 * k));
            assert_eq!(out.total_len(), fib(2 * k + 1) + 1);
            assert_eq!(out.count_letter(B), fib(2 * k - 1));
        }
    }
    assert_eq!(out.count_runs(), 4);
    Ok(out)
}

/// Predicted transform of the reversal: 2k runs, the run lengths walking the
/// even-index Fibonacci numbers.
pub fn predicted_bwt_fibplus_rev(k: usize, parity: Parity) -> Result<RleString> {
    if k < 2 {
        return Err(Error::KTooSmall { k });
    }
    let mut out = RleString::new();
    match parity {
        Parity::Even => {
            // b^{F_{2k-2}-k+1} (a^{F_{2i-2}} b)_{i=1..k-1} b a^{F_{2k-2}},
            // the two adjacent b-runs merging into one
            out.push_run(B, fib(2 * k - 2) - k + 1);
            for i in 1..k {
                out.push_run(A, fib(2 * i - 2));
                out.push_run(B, 1);
            }
            out.push_run(B, 1);
            out.push_run(A, fib(2 * k - 2));
            assert_eq!(out.total_len(), fib(2 * k) + 1);
            assert_eq!(out.count_letter(A), fib(2 * k - 1));
        }
        Parity::Odd => {
            // b^{F_{2k-2}} a^2 (b^{F_{2j}} a)_{j=k-2..1} b a^{F_{2k}-k+1}
            out.push_run(B, fib(2 * k - 2));
            out.push_run(A, 2);
            for j in (1..=k - 2).rev() {
                out.push_run(B, fib(2 * j));
                out.push_run(A, 1);
            }
            out.push_run(B, 1);
            out.push_run(A, fib(2 * k) - k + 1);
            assert_eq!(out.total_len(), fib(2 * k + 1) + 1);
            assert_eq!(out.count_letter(A), fib(2 * k) + 1);
        }
    }
    assert_eq!(out.count_runs(), 2 * k);
    Ok(out)
}

fn validate_stdplus_even(directive: &DirectiveSequence) -> Result<usize> {
    if directive.entries()[0] == 0 {
        return Err(Error::LeadingZeroDirective);
    }
    let order = directive.order();
    if order < 4 {
        return Err(Error::OrderTooSmall { order, min: 4 });
    }
    if order % 2 != 0 {
        return Err(Error::OddOrderUnsupported { order });
    }
    Ok(order / 2)
}

/// Run count of the transform of an even-order standard plus-word: always 4.
pub fn predicted_runs_stdplus(directive: &DirectiveSequence) -> Result<usize> {
    validate_stdplus_even(directive)?;
    Ok(4)
}

/// Run count for the reversal: 2k when the directive starts with 1, else
/// 2k + 2, where 2k is the order.
pub fn predicted_runs_stdplus_rev(directive: &DirectiveSequence) -> Result<usize> {
    let k = validate_stdplus_even(directive)?;
    Ok(if directive.entries()[0] == 1 {
        2 * k
    } else {
        2 * k + 2
    })
}

/// The b-runs of the computed reverse transform must cover the directive
/// entries d_3, d_5, ..., d_{2k-3} as a multiset.
pub fn stdplus_rev_b_runs_consistent(
    directive: &DirectiveSequence,
    computed_rev: &RleString,
) -> bool {
    let k = directive.order() / 2;
    let mut have: HashMap<usize, usize> = HashMap::new();
    for &(c, l) in computed_rev.runs() {
        if c == B {
            *have.entry(l).or_default() += 1;
        }
    }
    for j in (3..2 * k - 2).step_by(2) {
        let need = directive.entries()[j] as usize;
        match have.get_mut(&need) {
            Some(c) if *c > 0 => *c -= 1,
            _ => return false,
        }
    }
    true
}

/// The three bands of the sorted rotation matrix of (s_{2k}b) reversed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixPartition {
    pub top_rows: RangeInclusive<usize>,
    pub mid_rows: RangeInclusive<usize>,
    pub bot_rows: RangeInclusive<usize>,
    /// Rotations opening each band: a x_{2k} bb, then x_{2k} bba, then
    /// b a x_{2k} b.
    pub boundary_rotations: [Word; 3],
}

/// Partition the sorted rotations of w = (s_{2k}b)^rev = bba x_{2k} into the
/// top band (transform all b), middle band (a^{F_0} b a^{F_2} b ...), and
/// bottom band (b then all a). Asserts every structural claim along the way;
/// works from the row array without materializing the matrix.
pub fn partition_rev_matrix(k: usize) -> Result<MatrixPartition> {
    if k < 2 {
        return Err(Error::KTooSmall { k });
    }
    let v = fibonacci_plus(k, Parity::Even)?;
    let w = v.reverse();
    let n = w.len();
    let result = bwt_fast(&w);
    let mut rank_of = vec![0usize; n + 1];
    for (row0, &idx) in result.bw_array.iter().enumerate() {
        rank_of[idx] = row0 + 1;
    }
    let top_len = fib(2 * k - 2) - k + 1;
    let mid_len = fib(2 * k - 3) + k - 1;
    assert_eq!(top_len + mid_len + fib(2 * k - 2) + 1, n);
    let top = 1..=top_len;
    let mid = top_len + 1..=top_len + mid_len;
    let bot = top_len + mid_len + 1..=n;
    // the four marked rotations of w = b b a x_{2k} sort as
    // a x bb < x bba < b a x b < b b a x
    let conj1 = w.clone();
    let conj2 = w.conjugate(2)?;
    let conj3 = w.conjugate(3)?;
    let conj4 = w.conjugate(4)?;
    assert!(conj3 < conj4 && conj4 < conj2 && conj2 < conj1);
    assert_eq!(rank_of[3], 1, "a x bb opens the matrix");
    assert_eq!(rank_of[4], *mid.start(), "x bba opens the middle band");
    assert_eq!(rank_of[2], *bot.start(), "b a x b opens the bottom band");
    assert_eq!(rank_of[1], n, "w itself closes the matrix");
    // band-by-band transform content
    let t = result.transformed.as_bytes();
    assert!(t[..top_len].iter().all(|&c| c == B));
    let mut mid_expect = RleString::new();
    for i in 1..k {
        mid_expect.push_run(A, fib(2 * i - 2));
        mid_expect.push_run(B, 1);
    }
    assert_eq!(
        &t[top_len..top_len + mid_len],
        mid_expect.expand().as_bytes()
    );
    assert_eq!(t[top_len + mid_len], B);
    assert!(t[top_len + mid_len + 1..].iter().all(|&c| c == A));
    // the bottom band holds exactly the rotations that start with b
    let letters = w.as_bytes();
    for (row0, &idx) in result.bw_array.iter().enumerate() {
        assert_eq!(letters[idx - 1] == B, row0 + 1 >= *bot.start());
    }
    Ok(MatrixPartition {
        top_rows: top,
        mid_rows: mid,
        bot_rows: bot,
        boundary_rotations: [conj3, conj4, conj2],
    })
}

/// Count circular occurrences of a x_{2(k-i)} b and a x_{2(k-i)-1} b in
/// s_{2k}; they come out as (F_{2i}, F_{2i+1}), asserted before returning.
pub fn occurrence_counts_lemma(k: usize, i: usize) -> Result<(usize, usize)> {
    if k < 2 {
        return Err(Error::KTooSmall { k });
    }
    if i > k - 2 {
        return Err(Error::IndexOutOfRange { i, max: k - 2 });
    }
    let s = fibonacci_word(2 * k)?;
    let wrap = |x: Word| {
        let mut v = Vec::with_capacity(x.len() + 2);
        v.push(A);
        v.extend_from_slice(x.as_bytes());
        v.push(B);
        Word::from_raw(v)
    };
    let even_factor = wrap(palindromic_prefix(2 * (k - i))?);
    let odd_factor = wrap(palindromic_prefix(2 * (k - i) - 1)?);
    let even_count = s.circular_factor_occurrences(&even_factor)?;
    let odd_count = s.circular_factor_occurrences(&odd_factor)?;
    assert_eq!(even_count, fib(2 * i));
    assert_eq!(odd_count, fib(2 * i + 1));
    Ok((even_count, odd_count))
}

/// For s = s_{2k}: every rotation starting at an a preceded by a b is at
/// most x_{2k}ab = s, there are F_{2k-2} such rotations, and x ab and x ba
/// sit at sorted ranks F_{2k-2} and F_{2k-2}+1.
pub fn check_rotation_ordering(k: usize) -> Result<bool> {
    if k < 2 {
        return Err(Error::KTooSmall { k });
    }
    let s = fibonacci_word(2 * k)?;
    let n = s.len();
    let letters = s.as_bytes();
    let x = palindromic_prefix(2 * k)?;
    let xab = s.clone();
    let xba = {
        let mut v = x.as_bytes().to_vec();
        v.extend_from_slice(b"ba");
        Word::from_raw(v)
    };
    let mut qualifying = 0usize;
    for h in 1..=n {
        if letters[h - 1] == A && letters[(h + n - 2) % n] == B {
            qualifying += 1;
            if s.conjugate(h)? > xab {
                return Ok(false);
            }
        }
    }
    let expected = fib(2 * k - 2);
    if qualifying != expected {
        return Ok(false);
    }
    let result = bwt_fast(&s);
    let mut rank_of = vec![0usize; n + 1];
    for (row0, &idx) in result.bw_array.iter().enumerate() {
        rank_of[idx] = row0 + 1;
    }
    let Some(h_xba) = (1..=n).find(|&h| s.conjugate(h).unwrap() == xba) else {
        return Ok(false);
    };
    Ok(rank_of[1] == expected && rank_of[h_xba] == expected + 1)
}

/// One replayed prediction.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "family")]
pub enum VerificationCase {
    #[serde(rename = "fibonacci-plus")]
    FibonacciPlus {
        k: usize,
        parity: Parity,
        predicted: RleString,
        computed: RleString,
        predicted_rev: RleString,
        computed_rev: RleString,
        #[serde(rename = "match")]
        matched: bool,
    },
    #[serde(rename = "standard-plus")]
    StandardPlus {
        directive: DirectiveSequence,
        predicted_r: usize,
        computed_r: usize,
        predicted_r_rev: usize,
        computed_r_rev: usize,
        b_runs_consistent: bool,
        #[serde(rename = "match")]
        matched: bool,
    },
}

impl VerificationCase {
    pub fn matched(&self) -> bool {
        match *self {
            VerificationCase::FibonacciPlus { matched, .. } => matched,
            VerificationCase::StandardPlus { matched, .. } => matched,
        }
    }

    pub fn label(&self) -> String {
        match self {
            VerificationCase::FibonacciPlus { k, parity, .. } => {
                format!("fibonacci-plus k={k} {parity}")
            }
            VerificationCase::StandardPlus { directive, .. } => {
                format!("standard-plus {directive}")
            }
        }
    }
}

impl fmt::Display for VerificationCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerificationCase::FibonacciPlus {
                predicted,
                computed,
                predicted_rev,
                computed_rev,
                matched,
                ..
            } => {
                if *matched {
                    write!(
                        f,
                        "{}: ok — bwt {}, reverse {}",
                        self.label(),
                        computed,
                        computed_rev
                    )
                } else {
                    write!(
                        f,
                        "{}: MISMATCH — predicted {} / {}, computed {} / {}",
                        self.label(),
                        predicted,
                        predicted_rev,
                        computed,
                        computed_rev
                    )
                }
            }
            VerificationCase::StandardPlus {
                predicted_r,
                computed_r,
                predicted_r_rev,
                computed_r_rev,
                b_runs_consistent,
                matched,
                ..
            } => {
                if *matched {
                    write!(
                        f,
                        "{}: ok — r={}, reverse r={}",
                        self.label(),
                        computed_r,
                        computed_r_rev
                    )
                } else {
                    write!(
                        f,
                        "{}: MISMATCH — predicted r={}/{}, computed r={}/{}, b-runs consistent: {}",
                        self.label(),
                        predicted_r,
                        predicted_r_rev,
                        computed_r,
                        computed_r_rev,
                        b_runs_consistent
                    )
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub cases: Vec<VerificationCase>,
}

impl VerificationReport {
    pub fn total(&self) -> usize {
        self.cases.len()
    }

    pub fn matched(&self) -> usize {
        self.cases.iter().filter(|c| c.matched()).count()
    }

    pub fn all_match(&self) -> bool {
        self.matched() == self.total()
    }

    pub fn summary(&self) -> String {
        format!("{}/{} closed forms match", self.matched(), self.total())
    }
}

impl Serialize for VerificationReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("VerificationReport", 4)?;
        st.serialize_field("cases", &self.cases)?;
        st.serialize_field("matched", &self.matched())?;
        st.serialize_field("total", &self.total())?;
        st.serialize_field("all_match", &self.all_match())?;
        st.end()
    }
}

/// Replay predictions against the engine: fibonacci-plus for every
/// k = 2..=k_max and requested parity, then every standard-plus directive.
pub fn verify_closed_forms(
    k_max: usize,
    parities: &[Parity],
    directives: &[DirectiveSequence],
) -> Result<VerificationReport> {
    enum Input<'a> {
        Fib(usize, Parity),
        Std(&'a DirectiveSequence),
    }
    let mut inputs = Vec::new();
    for k in 2..=k_max {
        for &parity in parities {
            inputs.push(Input::Fib(k, parity));
        }
    }
    for directive in directives {
        inputs.push(Input::Std(directive));
    }
    let cases = inputs
        .into_par_iter()
        .map(|input| match input {
            Input::Fib(k, parity) => fibplus_case(k, parity),
            Input::Std(directive) => stdplus_case(directive),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport { cases })
}

fn fibplus_case(k: usize, parity: Parity) -> Result<VerificationCase> {
    let v = fibonacci_plus(k, parity)?;
    let predicted = predicted_bwt_fibplus(k, parity)?;
    let computed = bwt_fast(&v).transformed.rle();
    let predicted_rev = predicted_bwt_fibplus_rev(k, parity)?;
    let computed_rev = bwt_fast(&v.reverse()).transformed.rle();
    let matched = predicted == computed && predicted_rev == computed_rev;
    Ok(VerificationCase::FibonacciPlus {
        k,
        parity,
        predicted,
        computed,
        predicted_rev,
        computed_rev,
        matched,
    })
}

fn stdplus_case(directive: &DirectiveSequence) -> Result<VerificationCase> {
    let v = standard_plus(directive)?;
    let predicted_r = predicted_runs_stdplus(directive)?;
    let computed_r = bwt_runs(&v);
    let predicted_r_rev = predicted_runs_stdplus_rev(directive)?;
    let computed_rev = bwt_fast(&v.reverse()).transformed.rle();
    let computed_r_rev = computed_rev.count_runs();
    let b_runs_consistent = stdplus_rev_b_runs_consistent(directive, &computed_rev);
    let matched =
        predicted_r == computed_r && predicted_r_rev == computed_r_rev && b_runs_consistent;
    Ok(VerificationCase::StandardPlus {
        directive: directive.clone(),
        predicted_r,
        computed_r,
        predicted_r_rev,
        computed_r_rev,
        b_runs_consistent,
        matched,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dir(s: &str) -> DirectiveSequence {
        s.parse().unwrap()
    }

    #[test]
    fn predicted_small_cases() {
        assert_eq!(
            predicted_bwt_fibplus(2, Parity::Even).unwrap().to_string(),
            "b^2 a^2 b a"
        );
        assert_eq!(
            predicted_bwt_fibplus(2, Parity::Odd).unwrap().to_string(),
            "b a b^2 a^5"
        );
        assert_eq!(
            predicted_bwt_fibplus_rev(2, Parity::Even)
                .unwrap()
                .to_string(),
            "b a b^2 a^2"
        );
        assert_eq!(
            predicted_bwt_fibplus_rev(2, Parity::Odd)
                .unwrap()
                .to_string(),
            "b^2 a^2 b a^4"
        );
        assert!(predicted_bwt_fibplus(1, Parity::Even).is_err());
    }

    #[test]
    fn predictions_match_engine_small() {
        for k in 2..=8 {
            for parity in [Parity::Even, Parity::Odd] {
                let v = fibonacci_plus(k, parity).unwrap();
                assert_eq!(
                    predicted_bwt_fibplus(k, parity).unwrap(),
                    bwt_fast(&v).transformed.rle(),
                    "k={k} {parity}"
                );
                assert_eq!(
                    predicted_bwt_fibplus_rev(k, parity).unwrap(),
                    bwt_fast(&v.reverse()).transformed.rle(),
                    "k={k} {parity} rev"
                );
            }
        }
    }

    #[test]
    fn stdplus_run_predictions() {
        let d = dir("2,3,1,2,1");
        assert_eq!(predicted_runs_stdplus(&d).unwrap(), 4);
        assert_eq!(predicted_runs_stdplus_rev(&d).unwrap(), 8);
        let v = standard_plus(&d).unwrap();
        assert_eq!(bwt_fast(&v).transformed.rle().to_string(), "b^15 a^33 b a");
        let rev_rle = bwt_fast(&v.reverse()).transformed.rle();
        assert_eq!(rev_rle.to_string(), "b^10 a b^2 a^3 b^3 a^15 b a^15");
        assert!(stdplus_rev_b_runs_consistent(&d, &rev_rle));

        // directive starting with 1: reverse drops to 2k runs
        let ones = dir("1,1,1,1,1");
        assert_eq!(predicted_runs_stdplus_rev(&ones).unwrap(), 6);
        assert_eq!(predicted_runs_stdplus(&dir("1,2,3")).unwrap(), 4);
        assert_eq!(
            predicted_runs_stdplus(&dir("0,1,1")),
            Err(Error::LeadingZeroDirective)
        );
        assert_eq!(
            predicted_runs_stdplus(&dir("1,1")),
            Err(Error::OrderTooSmall { order: 3, min: 4 })
        );
        assert_eq!(
            predicted_runs_stdplus_rev(&dir("1,1,1,1")),
            Err(Error::OddOrderUnsupported { order: 5 })
        );
    }

    #[test]
    fn b_runs_consistency_detects_mismatch() {
        let d = dir("2,3,1,4,1");
        // needs a b-run of length 4, which this transform lacks
        let fake: RleString = "b^10 a b^2 a^3 b^3 a^15 b a^15".parse().unwrap();
        assert!(!stdplus_rev_b_runs_consistent(&d, &fake));
    }

    #[test]
    fn partition_small() {
        let p = partition_rev_matrix(2).unwrap();
        assert_eq!(p.top_rows, 1..=1);
        assert_eq!(p.mid_rows, 2..=3);
        assert_eq!(p.bot_rows, 4..=6);
        let rot = |s: &str| s.parse::<Word>().unwrap();
        assert_eq!(
            p.boundary_rotations,
            [rot("aababb"), rot("ababba"), rot("baabab")]
        );
        assert!(partition_rev_matrix(1).is_err());
    }

    #[test]
    fn partition_k4_bands() {
        let p = partition_rev_matrix(4).unwrap();
        assert_eq!(p.top_rows, 1..=10);
        assert_eq!(p.mid_rows, 11..=21);
        assert_eq!(p.bot_rows, 22..=35);
    }

    #[test]
    fn occurrence_counts() {
        assert_eq!(occurrence_counts_lemma(4, 0).unwrap(), (1, 1));
        assert_eq!(occurrence_counts_lemma(4, 1).unwrap(), (2, 3));
        assert_eq!(occurrence_counts_lemma(5, 2).unwrap(), (5, 8));
        assert_eq!(
            occurrence_counts_lemma(4, 3),
            Err(Error::IndexOutOfRange { i: 3, max: 2 })
        );
    }

    #[test]
    fn eq1_holds() {
        assert!(check_rotation_ordering(2).unwrap());
        assert!(check_rotation_ordering(3).unwrap());
        assert!(check_rotation_ordering(1).is_err());
    }

    #[test]
    fn verification_report() {
        let report =
            verify_closed_forms(3, &[Parity::Even, Parity::Odd], &[dir("2,3,1,2,1")]).unwrap();
        assert_eq!(report.total(), 5);
        assert!(report.all_match());
        assert_eq!(report.summary(), "5/5 closed forms match");
        for case in &report.cases {
            assert!(case.to_string().contains("ok"));
        }
    }

    #[test]
    fn report_serializes_with_family_tag() {
        let report = verify_closed_forms(2, &[Parity::Even], &[]).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["total"], 1);
        assert_eq!(json["all_match"], true);
        assert_eq!(json["cases"][0]["family"], "fibonacci-plus");
        assert_eq!(json["cases"][0]["match"], true);
    }
}
