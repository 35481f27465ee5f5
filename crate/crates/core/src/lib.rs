//! Burrows-Wheeler transforms of circular words.
//!
//! The transform here is the rotation-sorting one: sort all rotations of a
//! word, read the last column. No sentinel, so conjugate words share a
//! transform, and the interesting statistic is the run count r(w) of that
//! last column together with the runs-ratio
//! ρ(w) = max(r(w), r(w̃)) / min(r(w), r(w̃)) against the reversal w̃.
//!
//! The crate provides:
//!
//! - [`word`]: the two-letter [`Word`] type and circular-word combinatorics
//!   (rotations, Lyndon rotations, primitivity, circular factors, balance);
//! - [`bwt`]: naive and O(n log n) transforms, inversion, run counts, ρ;
//! - [`standard`]: directive sequences, standard and Fibonacci words, and
//!   the plus-word families that extremize ρ;
//! - [`closed_form`]: predicted transforms for plus-words with arithmetic
//!   self-checks, and the verifier replaying them against the engine;
//! - [`search`]: exhaustive maximum-ρ sweeps over canonicalized words (up
//!   to 63 binary / 31 ternary letters), plus-word tables, and the one-bit
//!   catastrophe.

pub mod bwt;
pub mod closed_form;
pub mod error;
pub mod rle;
pub mod search;
pub mod standard;
pub mod word;

pub use bwt::{
    bwt_fast, bwt_invert, bwt_matrix, bwt_naive, bwt_runs, render_matrix, rho, BwtResult, RhoValue,
    WordRecord, DEFAULT_MATRIX_LIMIT,
};
pub use closed_form::{
    check_rotation_ordering, occurrence_counts_lemma, partition_rev_matrix, predicted_bwt_fibplus,
    predicted_bwt_fibplus_rev, predicted_runs_stdplus, predicted_runs_stdplus_rev,
    stdplus_rev_b_runs_consistent, verify_closed_forms, MatrixPartition, VerificationCase,
    VerificationReport,
};
pub use error::{Error, Result};
pub use rle::RleString;
pub use search::{
    canonical_representative, one_bit_catastrophe, rho_max, rho_table, stdplus_rho_max,
    CatastropheReport, RhoReport, SearchOptions, StdPlusReport, DEFAULT_SEARCH_CAP,
};
pub use standard::{
    fibonacci_number, fibonacci_plus, fibonacci_word, palindromic_prefix, standard_plus,
    standard_word, DirectiveSequence, Parity, GENERATION_LIMIT,
};
pub use word::Word;
