use alloc::collections::BTreeMap;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DesignError {
    #[error("parameters must satisfy 1 <= t <= k <= v (got t={t} k={k} v={v})")]
    BadParameters { t: usize, k: usize, v: usize },
    #[error("block {block} has {len} points, expected {k}")]
    BlockSize { block: usize, len: usize, k: usize },
    #[error("block {block} mentions point {point} outside 0..{v}")]
    PointOutOfRange { block: usize, point: usize, v: usize },
    #[error("block {0} repeats a point")]
    RepeatedPoint(usize),
    #[error("duplicate block {0:?}")]
    DuplicateBlock(Vec<usize>),
    #[error("{t}-subset {subset:?} lies in more than one block")]
    OverCovered { t: usize, subset: Vec<usize> },
    #[error("only {covered} of {expected} {t}-subsets are covered")]
    UnderCovered { t: usize, covered: u128, expected: u128 },
}

/// `C(n, r)` in 128-bit arithmetic.
pub fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// A Steiner `(t, k, v)`-design: every `t`-subset of the `v` points lies in
/// exactly one `k`-point block.
///
/// Blocks are stored ascending and the block list is sorted, so equal designs
/// compare equal and serialize identically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SteinerDesign {
    v: usize,
    t: usize,
    k: usize,
    blocks: Vec<Vec<usize>>,
}

impl SteinerDesign {
    pub fn new(v: usize, t: usize, k: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self, DesignError> {
        if t == 0 || t > k || k > v {
            return Err(DesignError::BadParameters { t, k, v });
        }
        for (i, b) in blocks.iter_mut().enumerate() {
            if b.len() != k {
                return Err(DesignError::BlockSize { block: i, len: b.len(), k });
            }
            if let Some(&p) = b.iter().find(|&&p| p >= v) {
                return Err(DesignError::PointOutOfRange { block: i, point: p, v });
            }
            b.sort_unstable();
            if b.windows(2).any(|w| w[0] == w[1]) {
                return Err(DesignError::RepeatedPoint(i));
            }
        }
        blocks.sort();
        if let Some(w) = blocks.windows(2).find(|w| w[0] == w[1]) {
            return Err(DesignError::DuplicateBlock(w[0].clone()));
        }
        let mut covered = alloc::collections::BTreeSet::new();
        let mut subset = Vec::with_capacity(t);
        for b in &blocks {
            let mut ok = true;
            for_each_subset(b, t, &mut subset, &mut |s| {
                if ok && !covered.insert(s.to_vec()) {
                    ok = false;
                }
            });
            if !ok {
                // Recompute the offending subset for the report.
                let mut first = None;
                let mut seen = alloc::collections::BTreeSet::new();
                for b in &blocks {
                    for_each_subset(b, t, &mut subset, &mut |s| {
                        if first.is_none() && !seen.insert(s.to_vec()) {
                            first = Some(s.to_vec());
                        }
                    });
                }
                return Err(DesignError::OverCovered { t, subset: first.unwrap_or_default() });
            }
        }
        let expected = binomial(v, t);
        if covered.len() as u128 != expected {
            return Err(DesignError::UnderCovered {
                t,
                covered: covered.len() as u128,
                expected,
            });
        }
        Ok(SteinerDesign { v, t, k, blocks })
    }

    pub fn points(&self) -> usize {
        self.v
    }

    pub fn strength(&self) -> usize {
        self.t
    }

    pub fn block_size(&self) -> usize {
        self.k
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn is_sts(&self) -> bool {
        self.t == 2 && self.k == 3
    }

    /// Indices of the blocks through point `p`.
    pub fn blocks_through(&self, p: usize) -> Vec<usize> {
        (0..self.blocks.len()).filter(|&i| self.blocks[i].binary_search(&p).is_ok()).collect()
    }

    /// Block index keyed by sorted point list.
    pub fn block_index(&self) -> BTreeMap<Vec<usize>, usize> {
        self.blocks.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect()
    }

    /// The design with point `p` renamed to `map[p]`.
    pub fn relabeled(&self, map: &[usize]) -> SteinerDesign {
        let mut blocks: Vec<Vec<usize>> = self
            .blocks
            .iter()
            .map(|b| {
                let mut nb: Vec<usize> = b.iter().map(|&p| map[p]).collect();
                nb.sort_unstable();
                nb
            })
            .collect();
        blocks.sort();
        SteinerDesign {
            v: self.v,
            t: self.t,
            k: self.k,
            blocks,
        }
    }

    /// True iff `map` is a point bijection carrying blocks onto blocks.
    pub fn is_isomorphism(&self, other: &SteinerDesign, map: &[usize]) -> bool {
        (self.v, self.t, self.k) == (other.v, other.t, other.k)
            && self.blocks.len() == other.blocks.len()
            && map.len() == self.v
            && crate::perm::is_permutation(map)
            && self.relabeled(map).blocks == other.blocks
    }
}

/// Calls `f` on every `r`-subset of the sorted slice `items`.
pub(crate) fn for_each_subset(items: &[usize], r: usize, buf: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    fn rec(items: &[usize], start: usize, r: usize, buf: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if buf.len() == r {
            f(buf);
            return;
        }
        let need = r - buf.len();
        for i in start..=items.len().saturating_sub(need) {
            if i >= items.len() {
                break;
            }
            buf.push(items[i]);
            rec(items, i + 1, r, buf, f);
            buf.pop();
        }
    }
    buf.clear();
    rec(items, 0, r, buf, f);
}
