//! The Burrows-Wheeler transform of a circular word: sort all rotations
//! lexicographically (equal rotations tie-broken by rotation index) and read
//! off the last letter of each. No sentinel is involved, so the transform of
//! a word and of any of its rotations coincide.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{Word, A, B};

/// Transform plus the row array: `bw_array[i] = k` means the rotation
/// starting at position k (1-based) sits in row i of the sorted matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BwtResult {
    pub transformed: Word,
    pub bw_array: Vec<usize>,
}

/// Reference implementation: materialize nothing, but compare rotations via
/// the doubled word. Quadratic in the worst case; kept as the oracle the
/// fast version is tested against.
pub fn bwt_naive(word: &Word) -> BwtResult {
    let n = word.len();
    if n == 0 {
        return BwtResult {
            transformed: Word::empty(),
            bw_array: Vec::new(),
        };
    }
    let mut doubled = Vec::with_capacity(2 * n);
    doubled.extend_from_slice(word.as_bytes());
    doubled.extend_from_slice(word.as_bytes());
    let mut starts: Vec<usize> = (0..n).collect();
    // stable sort keeps equal rotations in rotation-index order
    starts.sort_by(|&x, &y| doubled[x..x + n].cmp(&doubled[y..y + n]));
    finish(word, starts.into_iter())
}

/// Cyclic rank doubling with counting sorts: O(n log n), linear memory.
pub fn bwt_fast(word: &Word) -> BwtResult {
    let n = word.len();
    if n == 0 {
        return BwtResult {
            transformed: Word::empty(),
            bw_array: Vec::new(),
        };
    }
    let letters = word.as_bytes();
    let mut p = vec![0u32; n];
    let mut c = vec![0u32; n];
    // round 0: stable counting sort by letter
    let count_b = word.count_b();
    let mut pos = [0usize, n - count_b];
    for (i, &l) in letters.iter().enumerate() {
        let bucket = (l == B) as usize;
        p[pos[bucket]] = i as u32;
        pos[bucket] += 1;
    }
    let mut classes: u32 = 1;
    for i in 1..n {
        if letters[p[i] as usize] != letters[p[i - 1] as usize] {
            classes += 1;
        }
        c[p[i] as usize] = classes - 1;
    }
    // each round sorts rotations by their first 2*len letters
    let mut pn = vec![0u32; n];
    let mut cn = vec![0u32; n];
    let mut len = 1usize;
    while len < n && (classes as usize) < n {
        for i in 0..n {
            pn[i] = ((p[i] as usize + n - len) % n) as u32;
        }
        let mut bucket = vec![0u32; classes as usize + 1];
        for &x in pn.iter() {
            bucket[c[x as usize] as usize + 1] += 1;
        }
        for k in 1..=classes as usize {
            bucket[k] += bucket[k - 1];
        }
        for &x in pn.iter() {
            let cls = c[x as usize] as usize;
            p[bucket[cls] as usize] = x;
            bucket[cls] += 1;
        }
        classes = 1;
        cn[p[0] as usize] = 0;
        for i in 1..n {
            let cur = p[i] as usize;
            let prev = p[i - 1] as usize;
            if (c[cur], c[(cur + len) % n]) != (c[prev], c[(prev + len) % n]) {
                classes += 1;
            }
            cn[cur] = classes - 1;
        }
        std::mem::swap(&mut c, &mut cn);
        len *= 2;
    }
    // order by final class; scanning positions in ascending order makes equal
    // rotations come out in rotation-index order
    let mut bucket = vec![0u32; classes as usize + 1];
    for i in 0..n {
        bucket[c[i] as usize + 1] += 1;
    }
    for k in 1..=classes as usize {
        bucket[k] += bucket[k - 1];
    }
    let mut order = vec![0u32; n];
    for i in 0..n {
        let cls = c[i] as usize;
        order[bucket[cls] as usize] = i as u32;
        bucket[cls] += 1;
    }
    finish(word, order.into_iter().map(|x| x as usize))
}

fn finish(word: &Word, sorted_starts: impl Iterator<Item = usize>) -> BwtResult {
    let n = word.len();
    let letters = word.as_bytes();
    let mut transformed = Vec::with_capacity(n);
    let mut bw_array = Vec::with_capacity(n);
    for start in sorted_starts {
        transformed.push(letters[(start + n - 1) % n]);
        bw_array.push(start + 1);
    }
    BwtResult {
        transformed: Word::from_raw(transformed),
        bw_array,
    }
}

/// Number of maximal runs in the transform.
pub fn bwt_runs(word: &Word) -> usize {
    bwt_fast(word).transformed.count_runs()
}

/// The runs-ratio max(r(w)/r(rev w), r(rev w)/r(w)) as a reduced fraction.
///
/// Panics on the empty word.
pub fn rho(word: &Word) -> RhoValue {
    assert!(!word.is_empty(), "runs-ratio of the empty word");
    RhoValue::from_counts(bwt_runs(word), bwt_runs(&word.reverse()))
}

/// A reduced fraction num/den with num >= den >= 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct RhoValue {
    num: u64,
    den: u64,
}

impl RhoValue {
    /// Ratio of the larger count to the smaller.
    pub fn from_counts(r1: usize, r2: usize) -> RhoValue {
        assert!(r1 > 0 && r2 > 0, "run counts must be positive");
        let (hi, lo) = if r1 >= r2 {
            (r1 as u64, r2 as u64)
        } else {
            (r2 as u64, r1 as u64)
        };
        let g = gcd(hi, lo);
        RhoValue {
            num: hi / g,
            den: lo / g,
        }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// `"num/den"`, or just `"num"` for whole values.
    pub fn exact(&self) -> String {
        if self.den == 1 {
            format!("{}", self.num)
        } else {
            format!("{}/{}", self.num, self.den)
        }
    }

    /// Rounded to two decimals (half up), trailing zeros trimmed: `1.5`,
    /// `2`, `2.67`.
    pub fn decimal(&self) -> String {
        let scaled = (200 * self.num + self.den) / (2 * self.den);
        let whole = scaled / 100;
        let frac = scaled % 100;
        if frac == 0 {
            format!("{whole}")
        } else if frac % 10 == 0 {
            format!("{whole}.{}", frac / 10)
        } else {
            format!("{whole}.{frac:02}")
        }
    }
}

impl Ord for RhoValue {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for RhoValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RhoValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.decimal())
    }
}

impl fmt::Debug for RhoValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RhoValue({}/{})", self.num, self.den)
    }
}

fn gcd(mut x: u64, mut y: u64) -> u64 {
    while y != 0 {
        let t = x % y;
        x = y;
        y = t;
    }
    x
}

/// Invert the transform: reconstruct the lexicographically least word whose
/// transform is `t`, or report that no word maps to `t`.
pub fn bwt_invert(t: &Word) -> Result<Word> {
    let n = t.len();
    if n == 0 {
        return Ok(Word::empty());
    }
    let letters = t.as_bytes();
    let total_a = t.count_a();
    // Row i of the sorted matrix holds some rotation; the rotation shifted
    // right by one sits in row pi[i]: the k-th a of the transform matches the
    // k-th row beginning with a, and likewise for b.
    let mut pi = Vec::with_capacity(n);
    let (mut seen_a, mut seen_b) = (0usize, 0usize);
    for &l in letters {
        if l == A {
            pi.push(seen_a);
            seen_a += 1;
        } else {
            pi.push(total_a + seen_b);
            seen_b += 1;
        }
    }
    // each cycle of pi spells one primitive word, read backwards
    let mut visited = vec![false; n];
    let mut spelled: Vec<Vec<u8>> = Vec::new();
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut row = start;
        loop {
            visited[row] = true;
            cycle.push(letters[row]);
            row = pi[row];
            if row == start {
                break;
            }
        }
        cycle.reverse();
        spelled.push(cycle);
    }
    let m = spelled[0].len();
    if spelled.iter().any(|u| u.len() != m) {
        return Err(Error::NotABwtImage(
            "row permutation has cycles of unequal length".into(),
        ));
    }
    if spelled.iter().any(|u| *u != spelled[0]) {
        return Err(Error::NotABwtImage("cycles spell different words".into()));
    }
    let mut candidate = Vec::with_capacity(n);
    for _ in 0..spelled.len() {
        candidate.extend_from_slice(&spelled[0]);
    }
    let candidate = Word::from_raw(candidate);
    if bwt_fast(&candidate).transformed != *t {
        return Err(Error::NotABwtImage("round-trip check failed".into()));
    }
    Ok(candidate)
}

pub const DEFAULT_MATRIX_LIMIT: usize = 64;

/// The sorted rotation matrix as (rotation index, rotation) rows. Refused
/// above `limit` rows — use [`bwt_fast`] for large words instead.
pub fn bwt_matrix(word: &Word, limit: usize) -> Result<Vec<(usize, Word)>> {
    let n = word.len();
    if n > limit {
        return Err(Error::MatrixLimit { len: n, limit });
    }
    let result = bwt_naive(word);
    Ok(result
        .bw_array
        .iter()
        .map(|&i| (i, word.conjugate(i).expect("index from bw_array")))
        .collect())
}

/// Plain-text table of matrix rows: rank, rotation index, rotation, and the
/// last letter repeated as its own column.
pub fn render_matrix(rows: &[(usize, Word)]) -> String {
    let rank_width = rows.len().to_string().len();
    let idx_width = rows
        .iter()
        .map(|(i, _)| i.to_string().len())
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    for (rank, (idx, rotation)) in rows.iter().enumerate() {
        let last = *rotation.as_bytes().last().expect("non-empty row") as char;
        out.push_str(&format!(
            "{:>rank_width$}  {:>idx_width$}  {}  {}\n",
            rank + 1,
            idx,
            rotation,
            last,
        ));
    }
    out
}

/// One word's worth of workbench output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WordRecord {
    pub word: Word,
    pub bwt: Word,
    pub bw_array: Vec<usize>,
    pub r: usize,
    pub r_rev: usize,
    pub rho_num: u64,
    pub rho_den: u64,
}

impl WordRecord {
    pub fn compute(word: &Word) -> Result<WordRecord> {
        if word.is_empty() {
            return Err(Error::EmptyWord);
        }
        let forward = bwt_fast(word);
        let r = forward.transformed.count_runs();
        let r_rev = bwt_runs(&word.reverse());
        let ratio = RhoValue::from_counts(r, r_rev);
        Ok(WordRecord {
            word: word.clone(),
            bwt: forward.transformed,
            bw_array: forward.bw_array,
            r,
            r_rev,
            rho_num: ratio.num(),
            rho_den: ratio.den(),
        })
    }

    pub fn rho(&self) -> RhoValue {
        RhoValue::from_counts(self.r, self.r_rev)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn known_transforms() {
        let res = bwt_naive(&w("abaab"));
        assert_eq!(res.transformed, w("bbaaa"));
        assert_eq!(res.bw_array, vec![3, 1, 4, 2, 5]);
        assert_eq!(bwt_fast(&w("abaab")), res);

        assert_eq!(bwt_fast(&w("abaabb")).transformed, w("bbaaba"));
        assert_eq!(bwt_fast(&w("a")).transformed, w("a"));
        assert!(bwt_fast(&Word::empty()).transformed.is_empty());
    }

    #[test]
    fn non_primitive_ties_by_rotation_index() {
        let res = bwt_fast(&w("abab"));
        assert_eq!(res.transformed, w("bbaa"));
        assert_eq!(res.bw_array, vec![1, 3, 2, 4]);
        let res = bwt_fast(&w("aaaa"));
        assert_eq!(res.transformed, w("aaaa"));
        assert_eq!(res.bw_array, vec![1, 2, 3, 4]);
    }

    #[test]
    fn fast_matches_naive_exhaustively() {
        for n in 1..=10usize {
            for bits in 0..1u64 << n {
                let x = Word::from_bits(bits, n);
                assert_eq!(bwt_fast(&x), bwt_naive(&x), "{x}");
            }
        }
    }

    #[test]
    fn transform_is_rotation_invariant() {
        let x = w("aababbab");
        let base = bwt_fast(&x).transformed;
        for i in 2..=x.len() {
            assert_eq!(bwt_fast(&x.conjugate(i).unwrap()).transformed, base);
        }
    }

    #[test]
    fn invert_known_values() {
        assert_eq!(bwt_invert(&w("bbaaa")).unwrap(), w("aabab"));
        assert_eq!(bwt_invert(&w("bbaa")).unwrap(), w("abab"));
        assert_eq!(bwt_invert(&w("baba")).unwrap(), w("aabb"));
        assert!(matches!(
            bwt_invert(&w("abab")),
            Err(Error::NotABwtImage(_))
        ));
        assert!(matches!(bwt_invert(&w("ab")), Err(Error::NotABwtImage(_))));
        assert_eq!(bwt_invert(&Word::empty()).unwrap(), Word::empty());
    }

    #[test]
    fn invert_round_trips_exhaustively() {
        for n in 1..=10usize {
            for bits in 0..1u64 << n {
                let x = Word::from_bits(bits, n);
                let t = bwt_fast(&x).transformed;
                let back = bwt_invert(&t).unwrap();
                assert_eq!(back, x.lyndon_rotation().unwrap().0, "{x}");
                assert_eq!(bwt_fast(&back).transformed, t);
            }
        }
    }

    #[test]
    fn rho_values() {
        assert_eq!(rho(&w("ab")), RhoValue::from_counts(1, 1));
        let v = RhoValue::from_counts(3, 2);
        assert_eq!((v.num(), v.den()), (3, 2));
        assert_eq!(RhoValue::from_counts(2, 3), v);
        assert_eq!(RhoValue::from_counts(4, 8).exact(), "2");
        assert_eq!(RhoValue::from_counts(8, 3).exact(), "8/3");
    }

    #[test]
    fn rho_decimal_strings() {
        let d = |a, b| RhoValue::from_counts(a, b).decimal();
        assert_eq!(d(3, 2), "1.5");
        assert_eq!(d(2, 1), "2");
        assert_eq!(d(8, 3), "2.67");
        assert_eq!(d(5, 2), "2.5");
        assert_eq!(d(1, 1), "1");
    }

    #[test]
    fn rho_ordering() {
        let v = |a, b| RhoValue::from_counts(a, b);
        assert!(v(8, 3) > v(5, 2));
        assert!(v(3, 2) < v(2, 1));
        assert_eq!(v(4, 2), v(2, 1));
    }

    #[test]
    fn matrix_rows() {
        let rows = bwt_matrix(&w("abaab"), DEFAULT_MATRIX_LIMIT).unwrap();
        assert_eq!(rows.len(), 5);
        assert_eq!(rows[0], (3, w("aabab")));
        assert_eq!(rows[4], (5, w("babaa")));
        assert!(matches!(
            bwt_matrix(&w("abaab"), 4),
            Err(Error::MatrixLimit { len: 5, limit: 4 })
        ));
        let rendered = render_matrix(&rows);
        assert!(rendered.starts_with("1  3  aabab  b\n"));
        assert_eq!(rendered.lines().count(), 5);
    }

    #[test]
    fn word_record_fields() {
        let rec = WordRecord::compute(&w("abaabb")).unwrap();
        assert_eq!(rec.bwt, w("bbaaba"));
        assert_eq!(rec.r, 4);
        assert_eq!(rec.rho(), RhoValue::from_counts(rec.r, rec.r_rev));
        assert!(WordRecord::compute(&Word::empty()).is_err());
    }
}
