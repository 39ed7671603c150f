//! Cube words and cube generating sequences.
//!
//! For a sequence `S = (s₀, …, s_k)` in a quasigroup and an exponent vector
//! `e ∈ {0,1}^k`, the cube word is `s₀ s₁^{e₁} ⋯ s_k^{e_k}`: the factors with
//! `e_i = 0` are dropped and the remaining word is evaluated by a balanced
//! binary tree. Each level combines neighbours left to right, and an odd
//! trailing element passes up unchanged. Both sides of every comparison use
//! this same tree, which is all that matters for non-associative tables.
//!
//! Exponent vectors are stored as bit masks: bit `i − 1` holds `e_i`.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::search::Budget;
use crate::LatinSquare;

/// Which square of a pair failed a precondition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl core::fmt::Display for Side {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CubeError {
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("squares have different orders {left} and {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("sequence length k = {k} exceeds the cap {cap}")]
    CapExceeded { k: usize, cap: usize },
    #[error("no cube generating sequence found in {0} trials")]
    NotFound(u32),
    #[error("{0} sequence does not cube-generate its square")]
    NotGenerating(Side),
    #[error("empty sequence or symbol out of range")]
    BadSequence,
}

/// A sequence `(s₀, s₁, …, s_k)` of symbols of some square.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CubeSequence {
    elements: Vec<usize>,
}

impl CubeSequence {
    /// Wraps a nonempty sequence whose symbols are below `order`.
    pub fn new(elements: Vec<usize>, order: usize) -> Result<Self, CubeError> {
        if elements.is_empty() || elements.iter().any(|&s| s >= order) {
            return Err(CubeError::BadSequence);
        }
        Ok(CubeSequence { elements })
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    /// Number of optional factors, i.e. length minus one.
    pub fn k(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl core::fmt::Display for CubeSequence {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for (i, s) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// `⌈log₂ n⌉`, with `ceil_log2(1) = 0`.
pub fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// Default cap on `k` for enumerating operations: `2⌈log₂ n⌉ + 4`.
pub fn default_cap(n: usize) -> usize {
    2 * ceil_log2(n) + 4
}

/// Worst-case length budget `4⌈log₂ n⌉` for cube generating sequences.
pub fn length_budget(n: usize) -> usize {
    4 * ceil_log2(n)
}

/// Largest cap any operation accepts; keeps `2^k` enumeration in memory.
pub const HARD_CAP: usize = 24;

/// Evaluates a word in place with the balanced tree. The word must be nonempty.
pub fn eval_word(l: &LatinSquare, word: &mut Vec<usize>) -> usize {
    while word.len() > 1 {
        let half = word.len().div_ceil(2);
        for i in 0..half {
            word[i] = if 2 * i + 1 < word.len() {
                l.mul(word[2 * i], word[2 * i + 1])
            } else {
                word[2 * i]
            };
        }
        word.truncate(half);
    }
    word[0]
}

/// Evaluates the cube word of `seq` for the exponent mask `mask`.
pub(crate) fn eval_mask(l: &LatinSquare, seq: &[usize], mask: u64, buf: &mut Vec<usize>) -> usize {
    buf.clear();
    buf.push(seq[0]);
    for (i, &s) in seq[1..].iter().enumerate() {
        if mask >> i & 1 == 1 {
            buf.push(s);
        }
    }
    eval_word(l, buf)
}

/// Value of `s₀ s₁^{e₁} ⋯ s_k^{e_k}`.
pub fn cube_eval(l: &LatinSquare, seq: &CubeSequence, e: &[bool]) -> Result<usize, CubeError> {
    if e.len() != seq.k() {
        return Err(CubeError::LengthMismatch {
            expected: seq.k(),
            got: e.len(),
        });
    }
    let mut buf = Vec::with_capacity(seq.len());
    buf.push(seq.elements[0]);
    buf.extend(seq.elements[1..].iter().zip(e).filter(|(_, &b)| b).map(|(&s, _)| s));
    Ok(eval_word(l, &mut buf))
}

/// Table of cube values indexed by exponent mask.
fn word_table(l: &LatinSquare, seq: &[usize]) -> Vec<usize> {
    let k = seq.len() - 1;
    let mut buf = Vec::with_capacity(seq.len());
    (0..1u64 << k).map(|m| eval_mask(l, seq, m, &mut buf)).collect()
}

/// `Cube(S)` as a sorted symbol list. Fails if `k` exceeds `cap`.
pub fn cube_set(l: &LatinSquare, seq: &CubeSequence, cap: usize) -> Result<Vec<usize>, CubeError> {
    let cap = cap.min(HARD_CAP);
    if seq.k() > cap {
        return Err(CubeError::CapExceeded { k: seq.k(), cap });
    }
    let mut hit = vec![false; l.order()];
    for s in word_table(l, &seq.elements) {
        hit[s] = true;
    }
    Ok((0..l.order()).filter(|&s| hit[s]).collect())
}

fn covers(l: &LatinSquare, seq: &[usize]) -> bool {
    let n = l.order();
    let mut hit = vec![false; n];
    let mut count = 0;
    let mut buf = Vec::with_capacity(seq.len());
    for m in 0..1u64 << (seq.len() - 1) {
        let s = eval_mask(l, seq, m, &mut buf);
        if !hit[s] {
            hit[s] = true;
            count += 1;
            if count == n {
                return true;
            }
        }
    }
    false
}

/// Finds a cube generating sequence with `k ≤ cap`.
///
/// Orders up to 6 are searched exhaustively in length order, so the result
/// there is the lexicographically least among the shortest. Larger orders use
/// greedy growth: from a random `s₀`, repeatedly append the symbol that
/// enlarges `Cube(S)` the most, breaking ties by the smallest symbol. Restarts
/// run `budget.trials` times and the shortest, then lexicographically least,
/// sequence wins. The result is always re-verified.
pub fn find_cube_sequence(l: &LatinSquare, budget: &Budget, cap: usize) -> Result<CubeSequence, CubeError> {
    let n = l.order();
    if n == 0 {
        return Err(CubeError::BadSequence);
    }
    let cap = cap.min(HARD_CAP);
    let found = if n <= 6 {
        exhaustive_sequence(l, cap)
    } else {
        greedy_sequence(l, budget, cap)
    };
    let elements = found.ok_or(CubeError::NotFound(budget.trials))?;
    assert!(covers(l, &elements), "cube sequence failed re-verification");
    Ok(CubeSequence { elements })
}

fn exhaustive_sequence(l: &LatinSquare, cap: usize) -> Option<Vec<usize>> {
    let n = l.order();
    for len in 1..=cap + 1 {
        if (1usize << (len - 1)) < n {
            continue;
        }
        let mut seq = vec![0; len];
        loop {
            if covers(l, &seq) {
                return Some(seq);
            }
            if !next_tuple(&mut seq, n) {
                break;
            }
        }
    }
    None
}

fn greedy_sequence(l: &LatinSquare, budget: &Budget, cap: usize) -> Option<Vec<usize>> {
    let n = l.order();
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut best: Option<Vec<usize>> = None;
    let floor = ceil_log2(n) + 1;
    for _ in 0..budget.trials.max(1) {
        let start = rng.gen_range(0..n);
        if let Some(seq) = greedy_from(l, start, cap) {
            let better = match &best {
                None => true,
                Some(b) => (seq.len(), &seq) < (b.len(), b),
            };
            if better {
                best = Some(seq);
            }
        }
        if best.as_ref().is_some_and(|b| b.len() <= floor) {
            break;
        }
    }
    best
}

fn greedy_from(l: &LatinSquare, start: usize, cap: usize) -> Option<Vec<usize>> {
    let n = l.order();
    let mut seq = vec![start];
    // Words of the current cube, one per exponent mask.
    let mut words: Vec<Vec<usize>> = vec![vec![start]];
    let mut hit = vec![false; n];
    hit[start] = true;
    let mut size = 1;
    let mut buf = Vec::new();
    while size < n {
        if seq.len() > cap {
            return None;
        }
        let mut best = (0usize, 0usize);
        let mut fresh = vec![false; n];
        for s in 0..n {
            fresh.fill(false);
            let mut gain = 0;
            for w in &words {
                buf.clear();
                buf.extend_from_slice(w);
                buf.push(s);
                let x = eval_word(l, &mut buf);
                if !hit[x] && !fresh[x] {
                    fresh[x] = true;
                    gain += 1;
                }
            }
            if gain > best.0 {
                best = (gain, s);
            }
        }
        let s = best.1;
        seq.push(s);
        let extended: Vec<Vec<usize>> = words
            .iter()
            .map(|w| {
                let mut w = w.clone();
                w.push(s);
                w
            })
            .collect();
        for w in &extended {
            buf.clear();
            buf.extend_from_slice(w);
            let x = eval_word(l, &mut buf);
            if !hit[x] {
                hit[x] = true;
                size += 1;
            }
        }
        words.extend(extended);
    }
    Some(seq)
}

/// Advances `t` as a base-`n` counter, last position fastest. Returns false
/// (leaving all zeros) after the final tuple.
pub(crate) fn next_tuple(t: &mut [usize], n: usize) -> bool {
    for x in t.iter_mut().rev() {
        *x += 1;
        if *x < n {
            return true;
        }
        *x = 0;
    }
    false
}

/// True iff `pairs` is a well-defined bijection between `0..size_a` and
/// `0..size_b`: every element of A has exactly one image (repeated identical
/// pairs are fine) and every element of B is hit exactly once.
pub fn is_bijection_relation(pairs: &[(usize, usize)], size_a: usize, size_b: usize) -> bool {
    if size_a != size_b {
        return false;
    }
    let mut image = vec![usize::MAX; size_a];
    for &(a, b) in pairs {
        if a >= size_a || b >= size_b {
            return false;
        }
        if image[a] == usize::MAX {
            image[a] = b;
        } else if image[a] != b {
            return false;
        }
    }
    let mut hit = vec![false; size_b];
    for &b in &image {
        if b == usize::MAX || hit[b] {
            return false;
        }
        hit[b] = true;
    }
    true
}

/// A bijection obtained by matching cube words of two sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeMap {
    /// Image of each symbol of the source square.
    pub table: Vec<usize>,
    /// For each source symbol `g`, an exponent mask `e` with
    /// `cube_eval(L₁, S, e) = g` and `cube_eval(L₂, T, e) = table[g]`.
    pub witness: Vec<u64>,
}

/// Decides whether `s_i ↦ t_i` extends along cube words to a bijection.
///
/// Both sequences must cube-generate their squares. Returns the map iff the
/// relation `{(cube(L₁,S,e), cube(L₂,T,e))}` is a bijection.
pub fn extend_cube_map(
    l1: &LatinSquare,
    l2: &LatinSquare,
    s: &CubeSequence,
    t: &CubeSequence,
) -> Result<Option<CubeMap>, CubeError> {
    if l1.order() != l2.order() {
        return Err(CubeError::OrderMismatch {
            left: l1.order(),
            right: l2.order(),
        });
    }
    extend_raw(l1, l2, &s.elements, &t.elements)
}

pub(crate) fn extend_raw(
    l1: &LatinSquare,
    l2: &LatinSquare,
    s: &[usize],
    t: &[usize],
) -> Result<Option<CubeMap>, CubeError> {
    if s.len() != t.len() {
        return Err(CubeError::LengthMismatch {
            expected: s.len(),
            got: t.len(),
        });
    }
    if s.is_empty() {
        return Err(CubeError::BadSequence);
    }
    if s.len() - 1 > HARD_CAP {
        return Err(CubeError::CapExceeded {
            k: s.len() - 1,
            cap: HARD_CAP,
        });
    }
    let n = l1.order();
    let left = word_table(l1, s);
    let right = word_table(l2, t);
    let mut table = vec![usize::MAX; n];
    let mut witness = vec![0u64; n];
    let mut right_hit = vec![false; n];
    let mut ok = true;
    for (m, (&g, &h)) in left.iter().zip(&right).enumerate() {
        right_hit[h] = true;
        if table[g] == usize::MAX {
            table[g] = h;
            witness[g] = m as u64;
        } else if table[g] != h {
            ok = false;
        }
    }
    if table.contains(&usize::MAX) {
        return Err(CubeError::NotGenerating(Side::Left));
    }
    if right_hit.contains(&false) {
        return Err(CubeError::NotGenerating(Side::Right));
    }
    let pairs: Vec<(usize, usize)> = left.iter().copied().zip(right.iter().copied()).collect();
    if !ok || !is_bijection_relation(&pairs, n, n) {
        return Ok(None);
    }
    // The witness table reproduces exactly the enumerated cube set.
    let mut buf = Vec::new();
    for g in 0..n {
        debug_assert_eq!(eval_mask(l1, s, witness[g], &mut buf), g);
        debug_assert_eq!(eval_mask(l2, t, witness[g], &mut buf), table[g]);
    }
    Ok(Some(CubeMap { table, witness }))
}

/// Formats an exponent mask of length `k` as a 0/1 string, `e₁` first.
pub fn format_exponents(mask: u64, k: usize) -> alloc::string::String {
    (0..k).map(|i| if mask >> i & 1 == 1 { '1' } else { '0' }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    fn seq(v: &[usize], n: usize) -> CubeSequence {
        CubeSequence::new(v.to_vec(), n).unwrap()
    }

    #[test]
    fn evaluates_examples() {
        let z3 = LatinSquare::cyclic(3);
        let s = seq(&[1, 1, 1], 3);
        assert_eq!(cube_eval(&z3, &s, &[false, false]), Ok(1));
        assert_eq!(cube_eval(&z3, &s, &[true, true]), Ok(0));
        assert_eq!(cube_eval(&z3, &s, &[true, false]), Ok(2));
        assert!(matches!(cube_eval(&z3, &s, &[true]), Err(CubeError::LengthMismatch { .. })));
    }

    #[test]
    fn cube_set_examples() {
        let z3 = LatinSquare::cyclic(3);
        assert_eq!(cube_set(&z3, &seq(&[2], 3), 8).unwrap(), [2]);
        assert_eq!(cube_set(&z3, &seq(&[1, 1, 1], 3), 8).unwrap(), [0, 1, 2]);
        assert_eq!(cube_set(&LatinSquare::cyclic(2), &seq(&[0, 1], 2), 8).unwrap(), [0, 1]);
        assert!(matches!(
            cube_set(&z3, &seq(&[1, 1, 1], 3), 1),
            Err(CubeError::CapExceeded { k: 2, cap: 1 })
        ));
    }

    #[test]
    fn balanced_tree_shape() {
        // Word of length 5: ((a b)(c d)) e.
        let l = gen::random_latin_square(6, 3);
        let w = [1, 2, 3, 4, 5];
        let mut buf = w.to_vec();
        let expect = l.mul(l.mul(l.mul(1, 2), l.mul(3, 4)), 5);
        assert_eq!(eval_word(&l, &mut buf), expect);
    }

    #[test]
    fn finds_sequences() {
        assert_eq!(find_cube_sequence(&LatinSquare::cyclic(1), &Budget::default(), 4).unwrap().elements(), [0]);
        let z3 = LatinSquare::cyclic(3);
        let s = find_cube_sequence(&z3, &Budget::default(), 4).unwrap();
        assert!(s.len() <= 3);
        assert_eq!(cube_set(&z3, &s, 4).unwrap(), [0, 1, 2]);
        // Two factors give at most two words, never three symbols.
        assert_eq!(s.len(), 3);
        for n in [7, 9, 12, 16] {
            let l = gen::random_latin_square(n, n as u64);
            let s = find_cube_sequence(&l, &Budget::with_seed(5), default_cap(n)).unwrap();
            assert!(s.k() <= length_budget(n));
            assert_eq!(cube_set(&l, &s, HARD_CAP).unwrap().len(), n);
        }
    }

    #[test]
    fn bijection_relation_examples() {
        assert!(is_bijection_relation(&[(0, 1), (1, 0)], 2, 2));
        assert!(!is_bijection_relation(&[(0, 0), (1, 0)], 2, 2));
        assert!(!is_bijection_relation(&[(0, 0), (0, 1), (1, 0)], 2, 2));
        assert!(is_bijection_relation(&[(0, 1), (1, 0), (0, 1)], 2, 2));
        assert!(!is_bijection_relation(&[(0, 0)], 1, 2));
    }

    #[test]
    fn extends_automorphism_of_z4() {
        let z4 = LatinSquare::cyclic(4);
        let s = find_cube_sequence(&z4, &Budget::default(), 6).unwrap();
        let same = extend_cube_map(&z4, &z4, &s, &s).unwrap().unwrap();
        assert_eq!(same.table, [0, 1, 2, 3]);
        let t = seq(&s.elements().iter().map(|&x| 3 * x % 4).collect::<Vec<_>>(), 4);
        let m = extend_cube_map(&z4, &z4, &s, &t).unwrap().unwrap();
        assert_eq!(m.table, [0, 3, 2, 1]);
    }

    #[test]
    fn never_claims_z4_klein_isomorphism() {
        let z4 = LatinSquare::cyclic(4);
        let v4 = gen::group_square("Z2xZ2").unwrap();
        let s = find_cube_sequence(&z4, &Budget::default(), 6).unwrap();
        let mut t = vec![0; s.len()];
        loop {
            if let Ok(Some(m)) = extend_raw(&z4, &v4, s.elements(), &t) {
                assert!(!z4.is_isomorphism(&v4, &m.table));
            }
            if !next_tuple(&mut t, 4) {
                break;
            }
        }
    }

    #[test]
    fn groups_ignore_parenthesization() {
        for spec in ["Z8", "Z2xZ4", "Z2xZ2xZ2", "D4", "Q8", "S3", "Z7"] {
            let g = gen::group_square(spec).unwrap();
            let s: Vec<usize> = (0..g.order()).rev().take(5).collect();
            let mut buf = Vec::new();
            for m in 0..1u64 << 4 {
                let balanced = eval_mask(&g, &s, m, &mut buf);
                let mut fold = s[0];
                for i in 0..4 {
                    if m >> i & 1 == 1 {
                        fold = g.mul(fold, s[i + 1]);
                    }
                }
                assert_eq!(balanced, fold, "{spec}");
            }
        }
    }

    #[test]
    fn helpers() {
        assert_eq!((ceil_log2(1), ceil_log2(2), ceil_log2(5), ceil_log2(16)), (0, 1, 3, 4));
        assert_eq!(default_cap(16), 12);
        assert_eq!(format_exponents(0b01, 3), "100");
    }
}
