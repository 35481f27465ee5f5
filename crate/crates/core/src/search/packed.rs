//! Words packed into a u64 for the exhaustive sweep: B bits per letter,
//! first letter in the most significant group, so numeric order on packed
//! values is lexicographic order on words. B = 1 covers binary words up to
//! 63 letters, B = 2 ternary words up to 31.

pub fn mask<const B: usize>(n: usize) -> u64 {
    debug_assert!(B * n < 64);
    (1u64 << (B * n)) - 1
}

#[inline]
pub fn get_letter<const B: usize>(w: u64, n: usize, i: usize) -> u8 {
    ((w >> (B * (n - 1 - i))) & ((1 << B) - 1)) as u8
}

pub fn pack<const B: usize>(letters: &[u8]) -> u64 {
    let mut w = 0u64;
    for &l in letters {
        debug_assert!((l as u64) < (1 << B));
        w = (w << B) | l as u64;
    }
    w
}

pub fn unpack<const B: usize>(w: u64, n: usize) -> Vec<u8> {
    (0..n).map(|i| get_letter::<B>(w, n, i)).collect()
}

/// Rotate left by one letter.
#[inline]
fn rot_left_one<const B: usize>(w: u64, n: usize, m: u64) -> u64 {
    ((w << B) | (w >> (B * (n - 1)))) & m
}

pub fn reverse<const B: usize>(w: u64, n: usize) -> u64 {
    let lmask = (1u64 << B) - 1;
    let mut out = 0u64;
    for i in 0..n {
        out = (out << B) | ((w >> (B * i)) & lmask);
    }
    out
}

/// Binary a <-> b.
#[inline]
pub fn exchange_binary(w: u64, n: usize) -> u64 {
    !w & mask::<1>(n)
}

/// Relabel ternary letters: letter l becomes perm[l].
pub fn apply_perm(w: u64, n: usize, perm: [u8; 3]) -> u64 {
    let mut out = 0u64;
    for i in 0..n {
        let l = ((w >> (2 * i)) & 3) as usize;
        out |= (perm[l] as u64) << (2 * i);
    }
    out
}

/// Packed value of the lexicographically least rotation.
pub fn least_rotation<const B: usize>(w: u64, n: usize) -> u64 {
    let m = mask::<B>(n);
    let mut cur = w & m;
    let mut best = cur;
    for _ in 1..n {
        cur = rot_left_one::<B>(cur, n, m);
        best = best.min(cur);
    }
    best
}

/// Run count of the transform: sort all rotations (numeric order = lex
/// order) and count maximal blocks among their last letters.
pub fn bwt_run_count<const B: usize>(w: u64, n: usize) -> u32 {
    let m = mask::<B>(n);
    let mut rots = [0u64; 64];
    let mut cur = w & m;
    for slot in rots[..n].iter_mut() {
        *slot = cur;
        cur = rot_left_one::<B>(cur, n, m);
    }
    rots[..n].sort_unstable();
    let lmask = (1u64 << B) - 1;
    let mut runs = 0u32;
    let mut prev = u64::MAX;
    for &r in &rots[..n] {
        let last = r & lmask;
        if last != prev {
            runs += 1;
            prev = last;
        }
    }
    runs
}
