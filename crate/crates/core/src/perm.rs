//! Small helpers for permutations stored as image vectors.

use alloc::vec::Vec;

/// True iff `p` is a permutation of `0..p.len()`.
pub fn is_permutation(p: &[usize]) -> bool {
    let mut seen = alloc::vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

pub fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

pub fn inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = alloc::vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// `outer ∘ inner`, i.e. `x ↦ outer[inner[x]]`.
pub fn compose(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    inner.iter().map(|&x| outer[x]).collect()
}

/// Advances `p` to the next permutation in lexicographic order.
/// Returns false (leaving `p` sorted ascending) after the last one.
pub fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        p.reverse();
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Fisher–Yates shuffle of `0..n` driven by `rng`.
pub fn random_permutation<R: rand::Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p = identity(n);
    p.shuffle(rng);
    p
}
