//! Fredricksen–Kessler–Maiorana enumeration: visit the lexicographically
//! least rotation of every length-n conjugacy class over an m-letter
//! alphabet (periodic classes included), in lexicographic order, amortized
//! O(1) per class. Letters are 0..m-1.
//!
//! The recursion can be cut at a fixed depth into independently resumable
//! tasks, which is how the sweep fans out across threads.

/// A suspended enumeration: the prenecklace prefix written so far plus the
/// current period.
#[derive(Clone, Debug)]
pub struct NecklaceTask {
    prefix: Vec<u8>,
    p: usize,
}

/// Visit every necklace of length n over letters 0..m-1.
pub fn for_each_necklace<F: FnMut(&[u8])>(n: usize, m: u8, visit: &mut F) {
    debug_assert!(n >= 1 && m >= 2);
    let mut a = vec![0u8; n + 1];
    step(&mut a, n, m, 1, 1, visit);
}

fn step<F: FnMut(&[u8])>(a: &mut [u8], n: usize, m: u8, t: usize, p: usize, visit: &mut F) {
    if t > n {
        if n % p == 0 {
            visit(&a[1..=n]);
        }
        return;
    }
    a[t] = a[t - p];
    step(a, n, m, t + 1, p, visit);
    for v in a[t - p] + 1..m {
        a[t] = v;
        step(a, n, m, t + 1, t, visit);
    }
}

/// Cut the recursion at `depth` letters: the returned tasks partition the
/// full enumeration, in order.
pub fn split_tasks(n: usize, m: u8, depth: usize) -> Vec<NecklaceTask> {
    assert!(depth >= 1 && depth <= n);
    let mut tasks = Vec::new();
    let mut a = vec![0u8; depth + 1];
    collect(&mut a, m, 1, 1, depth, &mut tasks);
    tasks
}

fn collect(a: &mut [u8], m: u8, t: usize, p: usize, depth: usize, out: &mut Vec<NecklaceTask>) {
    if t > depth {
        out.push(NecklaceTask {
            prefix: a[1..=depth].to_vec(),
            p,
        });
        return;
    }
    a[t] = a[t - p];
    collect(a, m, t + 1, p, depth, out);
    for v in a[t - p] + 1..m {
        a[t] = v;
        collect(a, m, t + 1, t, depth, out);
    }
}

/// Resume one task, visiting the necklaces in its subtree.
pub fn run_task<F: FnMut(&[u8])>(n: usize, m: u8, task: &NecklaceTask, visit: &mut F) {
    let depth = task.prefix.len();
    debug_assert!(depth <= n);
    let mut a = vec![0u8; n + 1];
    a[1..=depth].copy_from_slice(&task.prefix);
    step(&mut a, n, m, depth + 1, task.p, visit);
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn all(n: usize, m: u8) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        for_each_necklace(n, m, &mut |w| out.push(w.to_vec()));
        out
    }

    #[test]
    fn counts() {
        let binary = [2usize, 3, 4, 6, 8, 14, 20, 36, 60, 108, 188, 352];
        for (i, &expect) in binary.iter().enumerate() {
            assert_eq!(all(i + 1, 2).len(), expect, "binary n={}", i + 1);
        }
        let ternary = [3usize, 6, 11, 24, 51, 130, 315];
        for (i, &expect) in ternary.iter().enumerate() {
            assert_eq!(all(i + 1, 3).len(), expect, "ternary n={}", i + 1);
        }
    }

    #[test]
    fn lex_order_and_least_rotations() {
        for n in 1..=10usize {
            let words = all(n, 2);
            assert!(words.windows(2).all(|p| p[0] < p[1]), "lex order n={n}");
            // every word visited is the least among its rotations, and every
            // class is hit exactly once
            let mut seen = HashSet::new();
            for w in &words {
                let least = (0..n)
                    .map(|p| (0..n).map(|j| w[(p + j) % n]).collect::<Vec<_>>())
                    .min()
                    .unwrap();
                assert_eq!(*w, least);
                assert!(seen.insert(w.clone()));
            }
            let classes: HashSet<Vec<u8>> = (0..1u64 << n)
                .map(|bits| {
                    let w: Vec<u8> = (0..n).map(|i| (bits >> (n - 1 - i) & 1) as u8).collect();
                    (0..n)
                        .map(|p| (0..n).map(|j| w[(p + j) % n]).collect::<Vec<_>>())
                        .min()
                        .unwrap()
                })
                .collect();
            assert_eq!(seen, classes);
        }
    }

    #[test]
    fn tasks_partition_the_enumeration() {
        for (n, m, depth) in [(10, 2, 1), (10, 2, 3), (10, 2, 7), (10, 2, 10), (7, 3, 3)] {
            let mut via_tasks = Vec::new();
            for task in split_tasks(n, m, depth) {
                run_task(n, m, &task, &mut |w| via_tasks.push(w.to_vec()));
            }
            assert_eq!(via_tasks, all(n, m), "n={n} m={m} depth={depth}");
        }
    }
}
