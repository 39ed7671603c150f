//! Brute-force reference searches for small instances.
//!
//! These are deliberately plain: exhaustive enumeration with only the
//! simplest consistency pruning. Every witness is re-verified against the
//! defining predicate before it is returned.

use alloc::vec;
use alloc::vec::Vec;

use crate::perm;
use crate::{Graph, Isotopy, LatinSquare, SteinerDesign};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("instance of size {size} exceeds the oracle limit {limit}")]
pub struct TooLarge {
    pub size: usize,
    pub limit: usize,
}

pub const ISOTOPY_LIMIT: usize = 6;
pub const GRAPH_LIMIT: usize = 10;
pub const DESIGN_LIMIT: usize = 15;

/// Exhaustive isotopy search for `n ≤ 6`.
///
/// Every isotopy is pinned down by `α(0)` and `β`: row 0 then fixes `γ`, and
/// column 0 fixes the rest of `α`. So the oracle runs over the `n · n!`
/// choices of `(α(0), β)`, derives the other two maps and checks all cells.
pub fn isotopy_brute(l1: &LatinSquare, l2: &LatinSquare) -> Result<Option<Isotopy>, TooLarge> {
    let n = l1.order();
    if n > ISOTOPY_LIMIT {
        return Err(TooLarge { size: n, limit: ISOTOPY_LIMIT });
    }
    if l2.order() != n {
        return Ok(None);
    }
    if n == 0 {
        return Ok(Some(Isotopy::identity(0)));
    }
    let mut beta = perm::identity(n);
    loop {
        for a0 in 0..n {
            let mut gamma = vec![0; n];
            for b in 0..n {
                gamma[l1.get(0, b)] = l2.get(a0, beta[b]);
            }
            let col = l2.right_division_table(beta[0]);
            let alpha: Vec<usize> = (0..n).map(|a| col[gamma[l1.get(a, 0)]]).collect();
            let iso = Isotopy {
                alpha,
                beta: beta.clone(),
                gamma,
            };
            if iso.is_isotopy(l1, l2) {
                return Ok(Some(iso));
            }
        }
        if !perm::next_permutation(&mut beta) {
            return Ok(None);
        }
    }
}

/// Exhaustive graph isomorphism for `n ≤ 10`: vertex-by-vertex backtracking
/// that matches degrees and adjacency to every earlier vertex.
pub fn graph_iso_brute(g: &Graph, h: &Graph) -> Result<Option<Vec<usize>>, TooLarge> {
    let n = g.order();
    if n > GRAPH_LIMIT {
        return Err(TooLarge { size: n, limit: GRAPH_LIMIT });
    }
    if h.order() != n || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if graph_extend(g, h, 0, &mut map, &mut used) {
        assert!(g.is_isomorphism(h, &map));
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

fn graph_extend(g: &Graph, h: &Graph, u: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    if u == g.order() {
        return true;
    }
    for v in 0..h.order() {
        if used[v] || g.degree(u) != h.degree(v) {
            continue;
        }
        if (0..u).any(|w| g.adjacent(u, w) != h.adjacent(v, map[w])) {
            continue;
        }
        map[u] = v;
        used[v] = true;
        if graph_extend(g, h, u + 1, map, used) {
            return true;
        }
        used[v] = false;
        map[u] = usize::MAX;
    }
    false
}

/// Exhaustive point-bijection search for designs with `v ≤ 15`.
///
/// Points are mapped in order. Whenever the mapped points of a block reach
/// `t`, their images must lie in one block of the other design, and the same
/// holds backwards, which prunes almost every branch after `t` points.
pub fn design_iso_brute(d1: &SteinerDesign, d2: &SteinerDesign) -> Result<Option<Vec<usize>>, TooLarge> {
    let v = d1.points();
    if v > DESIGN_LIMIT {
        return Err(TooLarge { size: v, limit: DESIGN_LIMIT });
    }
    if (d2.points(), d2.strength(), d2.block_size(), d2.blocks().len()) != (v, d1.strength(), d1.block_size(), d1.blocks().len()) {
        return Ok(None);
    }
    let through1: Vec<Vec<usize>> = (0..v).map(|p| d1.blocks_through(p)).collect();
    let through2: Vec<Vec<usize>> = (0..v).map(|p| d2.blocks_through(p)).collect();
    let mut s = DesignSearch {
        d1,
        d2,
        through1,
        through2,
        map: vec![usize::MAX; v],
        inv: vec![usize::MAX; v],
    };
    if s.extend(0) {
        assert!(d1.is_isomorphism(d2, &s.map));
        Ok(Some(s.map))
    } else {
        Ok(None)
    }
}

struct DesignSearch<'a> {
    d1: &'a SteinerDesign,
    d2: &'a SteinerDesign,
    through1: Vec<Vec<usize>>,
    through2: Vec<Vec<usize>>,
    map: Vec<usize>,
    inv: Vec<usize>,
}

impl DesignSearch<'_> {
    /// Checks the blocks through `p` in `a` against `b` under `f`.
    fn consistent(a: &SteinerDesign, b: &SteinerDesign, through_a: &[Vec<usize>], through_b: &[Vec<usize>], f: &[usize], p: usize) -> bool {
        let t = a.strength();
        for &bi in &through_a[p] {
            let images: Vec<usize> = a.blocks()[bi].iter().filter(|&&x| f[x] != usize::MAX).map(|&x| f[x]).collect();
            if images.len() < t {
                continue;
            }
            let common = through_b[images[0]]
                .iter()
                .any(|&bj| images.iter().all(|y| b.blocks()[bj].binary_search(y).is_ok()));
            if !common {
                return false;
            }
        }
        true
    }

    fn extend(&mut self, p: usize) -> bool {
        let v = self.d1.points();
        if p == v {
            return true;
        }
        for q in 0..v {
            if self.inv[q] != usize::MAX {
                continue;
            }
            self.map[p] = q;
            self.inv[q] = p;
            if Self::consistent(self.d1, self.d2, &self.through1, &self.through2, &self.map, p)
                && Self::consistent(self.d2, self.d1, &self.through2, &self.through1, &self.inv, q)
                && self.extend(p + 1)
            {
                return true;
            }
            self.map[p] = usize::MAX;
            self.inv[q] = usize::MAX;
        }
        false
    }
}
