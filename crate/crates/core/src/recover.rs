//! Strongly regular graphs of Latin squares, nets and Steiner 2-designs,
//! and reconstruction of the structures from those graphs.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::isotopy::{main_class_equivalent, IsotopyError, IsotopyMethod};
use crate::oracle;
use crate::search::{Budget, Verdict};
use crate::structures::{srg_check, SrgParams};
use crate::{Graph, LatinSquare, Net, SteinerDesign};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RecoverError {
    #[error("not a Latin square graph (step {step}: {detail})")]
    NotLsg { step: u8, detail: &'static str },
    #[error("not a net graph: {0}")]
    NotNetGraph(&'static str),
    #[error("not a block graph: {0}")]
    NotBlockGraph(&'static str),
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
    #[error(transparent)]
    Isotopy(#[from] IsotopyError),
}

/// Vertex `r·n + c` is the cell `(r, c, L[r][c])`; two cells are adjacent iff
/// they agree in row, column or symbol.
pub fn latin_square_graph(l: &LatinSquare) -> Graph {
    let n = l.order();
    Graph::from_fn(n * n, |u, v| {
        let (r1, c1, r2, c2) = (u / n, u % n, v / n, v % n);
        r1 == r2 || c1 == c2 || l.get(r1, c1) == l.get(r2, c2)
    })
}

fn isqrt(x: usize) -> Option<usize> {
    let mut r = 0;
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    (r * r == x).then_some(r)
}

/// Recovers a Latin square whose graph is `g`.
pub fn recover_latin_square(g: &Graph) -> Result<LatinSquare, RecoverError> {
    recover_latin_square_with_map(g).map(|(l, _)| l)
}

/// Like [`recover_latin_square`], also returning the cell `r·n + c` of each
/// vertex. The map is checked to be a graph isomorphism onto the graph of
/// the recovered square.
pub fn recover_latin_square_with_map(g: &Graph) -> Result<(LatinSquare, Vec<usize>), RecoverError> {
    let v = g.order();
    let n = isqrt(v).ok_or(RecoverError::NotLsg {
        step: 0,
        detail: "vertex count is not a square",
    })?;
    let small = match n {
        0 => Some(LatinSquare::cyclic(0)),
        1 => Some(LatinSquare::cyclic(1)),
        2 => Some(LatinSquare::cyclic(2)),
        _ => None,
    };
    if let Some(l) = small {
        // Orders 0..=2 have one square each and a complete graph.
        if g.edge_count() != v * v.saturating_sub(1) / 2 {
            return Err(RecoverError::NotLsg {
                step: 0,
                detail: "small graph is not complete",
            });
        }
        return Ok((l, (0..v).collect()));
    }
    if g.is_regular() != Some(3 * (n - 1)) {
        return Err(RecoverError::NotLsg {
            step: 0,
            detail: "degree is not 3(n-1)",
        });
    }
    let mut err = RecoverError::NotLsg {
        step: 1,
        detail: "no usable starting edge",
    };
    let start = (0..v).find(|&u| g.degree(u) > 0).unwrap_or(0);
    for &x2 in g.neighbors(start) {
        let x1 = start;
        let common = g.common_neighbors(x1, x2);
        if common.len() != n {
            return Err(RecoverError::NotLsg {
                step: 1,
                detail: "adjacent pair without n common neighbours",
            });
        }
        for (line, others) in line_splits(g, &common, n - 2) {
            for y2 in [others[0], others[1]] {
                match build_from(g, n, x1, x2, &line, y2) {
                    Ok(found) => return Ok(found),
                    Err(e) => err = e,
                }
            }
        }
    }
    Err(err)
}

/// Ways to split `set` into a clique of size `size` and the remaining
/// vertices, none of which is adjacent to the clique.
fn line_splits(g: &Graph, set: &[usize], size: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    let m = set.len();
    let rest = m - size;
    // Choose the excluded vertices; `rest` is 2 here.
    let mut pick = (0..rest).collect::<Vec<usize>>();
    loop {
        let others: Vec<usize> = pick.iter().map(|&i| set[i]).collect();
        let line: Vec<usize> = set.iter().copied().filter(|x| !others.contains(x)).collect();
        if g.is_clique(&line) && others.iter().all(|&o| line.iter().all(|&l| !g.adjacent(o, l))) {
            out.push((line, others));
        }
        // Next combination of `rest` indices out of `m`.
        let mut i = rest;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if pick[i] < m - rest + i {
                pick[i] += 1;
                for j in i + 1..rest {
                    pick[j] = pick[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn fail(step: u8, detail: &'static str) -> RecoverError {
    RecoverError::NotLsg { step, detail }
}

/// Steps 2 to 7 for one choice of `x₁, x₂`, the line through them and `y₂`.
/// `x_j` becomes cell `(0, j)` with symbol `j`, `y_i` becomes `(i, 0)` with
/// symbol `i`.
fn build_from(g: &Graph, n: usize, x1: usize, x2: usize, line: &[usize], y2: usize) -> Result<(LatinSquare, Vec<usize>), RecoverError> {
    let mut xs = vec![x1, x2];
    xs.extend_from_slice(line);
    // Step 3: the line through x₁ and y₂.
    let common = g.common_neighbors(x1, y2);
    let splits = line_splits(g, &common, n - 2);
    let mut last = fail(3, "no line through x1 and y2");
    for (col_line, _) in splits {
        if col_line.iter().any(|c| xs.contains(c)) {
            continue;
        }
        match finish(g, n, &xs, y2, &col_line) {
            Ok(r) => return Ok(r),
            Err(e) => last = e,
        }
    }
    Err(last)
}

fn finish(g: &Graph, n: usize, xs: &[usize], y2: usize, col_line: &[usize]) -> Result<(LatinSquare, Vec<usize>), RecoverError> {
    let v = n * n;
    // Step 4: order the column so that y_i ~ x_i.
    let mut ys = vec![usize::MAX; n];
    ys[0] = xs[0];
    ys[1] = y2;
    for &y in col_line {
        let hits: Vec<usize> = (2..n).filter(|&i| g.adjacent(y, xs[i])).collect();
        if hits.len() != 1 || ys[hits[0]] != usize::MAX {
            return Err(fail(4, "column vertex does not match a unique row vertex"));
        }
        ys[hits[0]] = y;
    }
    // Step 5: first row and column.
    let mut cell_of = vec![usize::MAX; v];
    let mut cells = vec![usize::MAX; v];
    for j in 0..n {
        cell_of[xs[j]] = j;
        cells[j] = j;
    }
    for i in 1..n {
        if cell_of[ys[i]] != usize::MAX {
            return Err(fail(5, "column meets the first row twice"));
        }
        cell_of[ys[i]] = i * n;
        cells[i * n] = i;
    }
    // Step 6: every other vertex from its neighbours among the x's and y's.
    let mut ambiguous: Vec<(usize, usize, usize)> = Vec::new();
    for z in 0..v {
        if cell_of[z] != usize::MAX {
            continue;
        }
        let xa: Vec<usize> = (1..n).filter(|&j| g.adjacent(z, xs[j])).collect();
        let ya: Vec<usize> = (1..n).filter(|&i| g.adjacent(z, ys[i])).collect();
        let (i, j, s) = if g.adjacent(z, xs[0]) {
            if xa.len() != 1 || ya.len() != 1 {
                return Err(fail(6, "symbol-0 vertex with wrong neighbours"));
            }
            (ya[0], xa[0], 0)
        } else {
            if xa.len() != 2 || ya.len() != 2 {
                return Err(fail(6, "vertex without two row and two column neighbours"));
            }
            if xa == ya {
                ambiguous.push((z, xa[0], xa[1]));
                continue;
            }
            let shared: Vec<usize> = xa.iter().copied().filter(|x| ya.contains(x)).collect();
            if shared.len() != 1 {
                return Err(fail(6, "no unique shared index"));
            }
            let k = shared[0];
            let j = xa.iter().copied().find(|&x| x != k).unwrap();
            let i = ya.iter().copied().find(|&y| y != k).unwrap();
            (i, j, k)
        };
        if cells[i * n + j] != usize::MAX {
            return Err(fail(6, "cell filled twice"));
        }
        cells[i * n + j] = s;
        cell_of[z] = i * n + j;
    }
    // Step 7: diagonal cells take the symbol missing from their row.
    let mut missing = vec![usize::MAX; n];
    for (i, m) in missing.iter_mut().enumerate() {
        if cells[i * n + i] == usize::MAX {
            let mut seen = vec![false; n];
            for j in 0..n {
                if cells[i * n + j] != usize::MAX {
                    seen[cells[i * n + j]] = true;
                }
            }
            let free: Vec<usize> = (0..n).filter(|&s| !seen[s]).collect();
            if free.len() != 1 {
                return Err(fail(7, "row misses more than its diagonal"));
            }
            *m = free[0];
        }
    }
    for &(z, a, b) in &ambiguous {
        let mut options: Vec<usize> = Vec::new();
        for (d, other) in [(a, b), (b, a)] {
            if cells[d * n + d] == usize::MAX && missing[d] == other {
                options.push(d);
            }
        }
        // Prefer the diagonal cell whose adjacency matches the placed vertices.
        let fits = |d: usize| {
            let s = missing[d];
            (0..v).filter(|&w| cell_of[w] != usize::MAX).all(|w| {
                let (r, c) = (cell_of[w] / n, cell_of[w] % n);
                g.adjacent(z, w) == (r == d || c == d || cells[cell_of[w]] == s)
            })
        };
        let d = match options.as_slice() {
            [d] => *d,
            [d, e] => {
                if fits(*d) {
                    *d
                } else {
                    *e
                }
            }
            _ => return Err(fail(7, "diagonal vertex fits no cell")),
        };
        cells[d * n + d] = missing[d];
        cell_of[z] = d * n + d;
    }
    if cells.contains(&usize::MAX) {
        return Err(fail(7, "cells left empty"));
    }
    let l = LatinSquare::from_cells(n, cells).map_err(|_| fail(7, "table is not Latin"))?;
    let lsg = latin_square_graph(&l);
    if !g.is_isomorphism(&lsg, &cell_of) {
        return Err(fail(7, "recovered square does not reproduce the graph"));
    }
    Ok((l, cell_of))
}

/// Graph isomorphism between Latin square graphs via main-class equivalence
/// of the recovered squares. Falls back to the brute-force oracle on graphs
/// of at most 10 vertices when recovery fails.
pub fn lsg_iso(g: &Graph, h: &Graph, budget: &Budget) -> Result<Verdict<Vec<usize>>, RecoverError> {
    if g.order() != h.order() || g.edge_count() != h.edge_count() {
        return Ok(Verdict::Absent);
    }
    let (rg, rh) = (recover_latin_square_with_map(g), recover_latin_square_with_map(h));
    let ((lg, mg), (lh, mh)) = match (rg, rh) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            if g.order() <= oracle::GRAPH_LIMIT {
                let found = oracle::graph_iso_brute(g, h).expect("size checked");
                return Ok(found.map_or(Verdict::Absent, Verdict::Found));
            }
            if srg_check(g) != srg_check(h) {
                return Ok(Verdict::Absent);
            }
            return Err(e);
        }
    };
    let n = lg.order();
    let verdict = main_class_equivalent(&lg, &lh, IsotopyMethod::NormalForm, budget)?;
    Ok(verdict.map(|(conj, iso)| {
        let cell_to_h = crate::perm::inverse(&mh);
        let map: Vec<usize> = (0..g.order())
            .map(|u| {
                let cell = mg[u];
                let [r, c, _] = conj.apply([cell / n, cell % n, lg.get(cell / n, cell % n)]);
                cell_to_h[iso.alpha[r] * n + iso.beta[c]]
            })
            .collect();
        assert!(g.is_isomorphism(h, &map), "unverified graph isomorphism");
        map
    }))
}

/// Points are vertices; two points are adjacent iff some line holds both.
pub fn net_graph(net: &Net) -> Graph {
    let k = net.degree();
    Graph::from_fn(net.point_count(), |u, v| (0..k).any(|c| net.line_of(c, u) == net.line_of(c, v)))
}

/// Vertices of `set` forming the distinguished clique of size `size`.
///
/// Vertices are ranked by degree inside `set`; those strictly above the
/// `size`-th degree are taken and the tie at the boundary is resolved by
/// trying every completion. Returns the clique only when exactly one
/// completion works.
fn degree_clique(g: &Graph, set: &[usize], size: usize) -> Option<Vec<usize>> {
    if size == 0 {
        return Some(Vec::new());
    }
    if size > set.len() {
        return None;
    }
    let deg = g.induced_degrees(set);
    let mut order: Vec<usize> = (0..set.len()).collect();
    order.sort_by(|&a, &b| deg[b].cmp(&deg[a]));
    let cut = deg[order[size - 1]];
    let sure: Vec<usize> = order.iter().copied().filter(|&i| deg[i] > cut).map(|i| set[i]).collect();
    let tied: Vec<usize> = order.iter().copied().filter(|&i| deg[i] == cut).map(|i| set[i]).collect();
    let need = size - sure.len();
    if need == tied.len() || tied.len() <= 1 {
        let mut c = sure;
        c.extend_from_slice(&tied[..need]);
        return g.is_clique(&c).then_some(c);
    }
    if binomial_small(tied.len(), need) > 2000 {
        return None;
    }
    let mut found: Option<Vec<usize>> = None;
    let mut pick: Vec<usize> = (0..need).collect();
    loop {
        let mut c = sure.clone();
        c.extend(pick.iter().map(|&i| tied[i]));
        if g.is_clique(&c) {
            if found.is_some() {
                return None;
            }
            found = Some(c);
        }
        let mut i = need;
        loop {
            if i == 0 {
                return found;
            }
            i -= 1;
            if pick[i] < tied.len() - need + i {
                pick[i] += 1;
                for j in i + 1..need {
                    pick[j] = pick[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn binomial_small(n: usize, r: usize) -> u128 {
    crate::structures::binomial(n, r)
}

/// Collects the maximal cliques `{u, v} ∪ C` found edge by edge, skipping
/// edges whose clique is ambiguous. Every edge must end up covered.
fn edge_cliques(g: &Graph, size: usize) -> Option<Vec<Vec<usize>>> {
    let mut cliques: BTreeSet<Vec<usize>> = BTreeSet::new();
    let n = g.order();
    let mut covered = vec![false; n * n];
    for (u, v) in g.edges() {
        if covered[u * n + v] {
            continue;
        }
        let common = g.common_neighbors(u, v);
        let Some(mut c) = degree_clique(g, &common, size - 2) else {
            continue;
        };
        c.push(u);
        c.push(v);
        c.sort_unstable();
        for &a in &c {
            for &b in &c {
                covered[a * n + b] = true;
            }
        }
        cliques.insert(c);
    }
    g.edges().all(|(u, v)| covered[u * n + v]).then(|| cliques.into_iter().collect())
}

/// Recovers a net of order `n` and degree `k` from its graph. Requires
/// `n > (k−1)²`, where lines are separated from the rest of a common
/// neighbourhood by their induced degree.
pub fn recover_net(g: &Graph, n: usize, k: usize) -> Result<Net, RecoverError> {
    if k >= 1 && n <= (k - 1) * (k - 1) {
        return Err(RecoverError::PreconditionViolated("need n > (k-1)^2"));
    }
    if g.order() != n * n {
        return Err(RecoverError::NotNetGraph("vertex count is not n^2"));
    }
    if g.is_regular().unwrap_or(0) != k * n.saturating_sub(1) && g.order() > 0 {
        return Err(RecoverError::NotNetGraph("degree is not k(n-1)"));
    }
    let lines = match (k, n) {
        (0, _) => Vec::new(),
        (_, 1) => vec![vec![0]; k],
        _ => edge_cliques(g, n).ok_or(RecoverError::NotNetGraph("some edge lies on no recoverable line"))?,
    };
    if lines.len() != k * n {
        return Err(RecoverError::NotNetGraph("wrong number of lines"));
    }
    let net = if n == 1 { Net::new(1, vec![vec![vec![0]]; k]) } else { Net::from_lines(n, lines) }
        .map_err(|_| RecoverError::NotNetGraph("lines do not form a net"))?;
    if net.degree() != k || net_graph(&net) != *g {
        return Err(RecoverError::NotNetGraph("recovered net does not reproduce the graph"));
    }
    Ok(net)
}

/// Vertex `i` is block `i` of the design; blocks are adjacent iff they meet.
pub fn block_graph(d: &SteinerDesign) -> Graph {
    let blocks = d.blocks();
    Graph::from_fn(blocks.len(), |u, v| blocks[u].iter().any(|p| blocks[v].binary_search(p).is_ok()))
}

/// Recovers a Steiner 2-design with `v` points and block size `k` from its
/// block graph. Each point is the clique of the `R = (v−1)/(k−1)` blocks
/// through it, which stands out by degree when `R − 2 > (k−1)²`.
pub fn recover_steiner2(g: &Graph, v: usize, k: usize) -> Result<SteinerDesign, RecoverError> {
    if k < 2 || v < k || !(v - 1).is_multiple_of(k - 1) || !(v * (v - 1)).is_multiple_of(k * (k - 1)) {
        return Err(RecoverError::PreconditionViolated("inadmissible (v, k)"));
    }
    let r = (v - 1) / (k - 1);
    if r < 2 || r - 2 <= (k - 1) * (k - 1) {
        return Err(RecoverError::PreconditionViolated("need R-2 > (k-1)^2"));
    }
    let b = v * (v - 1) / (k * (k - 1));
    if g.order() != b {
        return Err(RecoverError::NotBlockGraph("vertex count is not the block count"));
    }
    let points = edge_cliques(g, r).ok_or(RecoverError::NotBlockGraph("some edge lies on no recoverable point"))?;
    if points.len() != v {
        return Err(RecoverError::NotBlockGraph("wrong number of points"));
    }
    let mut blocks = vec![Vec::new(); b];
    for (p, clique) in points.iter().enumerate() {
        for &bl in clique {
            blocks[bl].push(p);
        }
    }
    let d = SteinerDesign::new(v, 2, k, blocks.clone()).map_err(|_| RecoverError::NotBlockGraph("points do not form a Steiner 2-design"))?;
    // Vertex i of g is the block `blocks[i]`; compare adjacency directly.
    let meets = |a: &Vec<usize>, c: &Vec<usize>| a.iter().any(|p| c.contains(p));
    if !(0..b).all(|u| (u + 1..b).all(|w| g.adjacent(u, w) == meets(&blocks[u], &blocks[w]))) {
        return Err(RecoverError::NotBlockGraph("recovered design does not reproduce the graph"));
    }
    Ok(d)
}

/// Parameter family a strongly regular graph matches, with whether the
/// size is past the point where every such graph is genuine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PseudoFamily {
    /// `(m², 3(m−1), m, 6)`; genuine for `m > 23`.
    LatinSquare { m: usize, genuine: bool },
    /// `(m², d(m−1), m−2+(d−1)(d−2), d(d−1))`; genuine for `d > 1` and `m > p(d−1)`.
    Net { m: usize, d: usize, genuine: bool },
    /// `(v(v−1)/6, 3(v−3)/2, (v+3)/2, 9)`; genuine above 67 vertices.
    SteinerTriple { v: usize, genuine: bool },
    /// `(n, (n−1)/2, (n−5)/4, (n−1)/4)`.
    Conference { n: usize },
}

/// `p(x) = (x⁴ + 2x³ + 2x² + 3x) / 2`, the net genuineness bound.
pub fn net_bound(x: usize) -> usize {
    (x.pow(4) + 2 * x.pow(3) + 2 * x * x + 3 * x) / 2
}

/// Every parameter family `p` belongs to; empty means "other".
pub fn pseudo_thresholds(p: SrgParams) -> Vec<PseudoFamily> {
    let mut out = Vec::new();
    if let Some(m) = isqrt(p.n).filter(|&m| m >= 2) {
        if p.k.is_multiple_of(m - 1) {
            let d = p.k / (m - 1);
            if d >= 1 && SrgParams::net_graph(m, d) == p {
                if d == 3 {
                    out.push(PseudoFamily::LatinSquare { m, genuine: m > 23 });
                }
                out.push(PseudoFamily::Net {
                    m,
                    d,
                    genuine: d > 1 && m > net_bound(d - 1),
                });
            }
        }
    }
    if (2 * p.k).is_multiple_of(3) {
        let v = 2 * p.k / 3 + 3;
        if (v % 6 == 1 || v % 6 == 3)
            && SrgParams::sts_block_graph(v) == p {
                out.push(PseudoFamily::SteinerTriple { v, genuine: p.n > 67 });
            }
    }
    if p.is_conference() {
        out.push(PseudoFamily::Conference { n: p.n });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{gen, perm};
    use rand::SeedableRng;

    fn params(g: &Graph) -> Option<(usize, usize, usize, usize)> {
        srg_check(g).map(|p| (p.n, p.k, p.lambda, p.mu))
    }

    #[test]
    fn latin_square_graphs() {
        assert_eq!(latin_square_graph(&LatinSquare::cyclic(1)).edge_count(), 0);
        assert_eq!(params(&latin_square_graph(&LatinSquare::cyclic(3))), Some((9, 6, 3, 6)));
        assert_eq!(params(&latin_square_graph(&LatinSquare::cyclic(4))), Some((16, 9, 4, 6)));
    }

    #[test]
    fn recovers_small_squares_exhaustively() {
        for n in 1..=4 {
            for l in gen::all_latin_squares(n).unwrap() {
                let g = latin_square_graph(&l);
                let (back, map) = recover_latin_square_with_map(&g).unwrap();
                assert!(g.is_isomorphism(&latin_square_graph(&back), &map));
                let same = main_class_equivalent(&l, &back, IsotopyMethod::NormalForm, &Budget::default()).unwrap();
                assert!(same.is_found());
            }
        }
    }

    #[test]
    fn recovers_random_squares() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for (n, seed) in [(5, 0), (6, 1), (7, 2), (9, 3), (12, 4)] {
            let l = gen::random_latin_square(n, seed);
            let g = latin_square_graph(&l).relabeled(&perm::random_permutation(n * n, &mut rng));
            let back = recover_latin_square(&g).unwrap();
            assert!(main_class_equivalent(&l, &back, IsotopyMethod::NormalForm, &Budget::default()).unwrap().is_found());
        }
    }

    #[test]
    fn rejects_non_lsgs() {
        let petersen = Graph::from_fn(10, |u, v| {
            let sets: Vec<[usize; 2]> = (0..5).flat_map(|a| (a + 1..5).map(move |b| [a, b])).collect();
            let (a, b) = (sets[u], sets[v]);
            a[0] != b[0] && a[0] != b[1] && a[1] != b[0] && a[1] != b[1]
        });
        assert!(matches!(recover_latin_square(&petersen), Err(RecoverError::NotLsg { step: 0, .. })));
        assert!(recover_latin_square(&Graph::cycle(9)).is_err());
        // Paley(9)-like: the 3x3 rook's graph has the wrong degree.
        let rook = Graph::from_fn(9, |u, v| u / 3 == v / 3 || u % 3 == v % 3);
        assert!(recover_latin_square(&rook).is_err());
    }

    #[test]
    fn lsg_isomorphism() {
        let z4 = latin_square_graph(&LatinSquare::cyclic(4));
        let v4 = latin_square_graph(&gen::group_square("Z2xZ2").unwrap());
        assert!(lsg_iso(&z4, &z4, &Budget::default()).unwrap().is_found());
        assert!(lsg_iso(&z4, &v4, &Budget::default()).unwrap().is_absent());
        let l = gen::random_latin_square(6, 9);
        let t = latin_square_graph(&l.transpose());
        assert!(lsg_iso(&latin_square_graph(&l), &t, &Budget::default()).unwrap().is_found());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let g = latin_square_graph(&l);
        let h = g.relabeled(&perm::random_permutation(36, &mut rng));
        let w = lsg_iso(&g, &h, &Budget::default()).unwrap().into_witness().unwrap();
        assert!(g.is_isomorphism(&h, &w));
    }

    #[test]
    fn net_graphs_and_recovery() {
        let z3 = Net::from_latin_square(&LatinSquare::cyclic(3));
        assert_eq!(net_graph(&z3), latin_square_graph(&LatinSquare::cyclic(3)));
        let ag5 = gen::affine_plane(5).unwrap();
        let sub = Net::new(5, ag5.classes()[..3].to_vec()).unwrap();
        let g = net_graph(&sub);
        assert_eq!(params(&g), Some((25, 12, 5, 6)));
        let back = recover_net(&g, 5, 3).unwrap();
        assert!(crate::designs::net_iso(&sub, &back, &Budget::default()).unwrap().is_found());
        assert_eq!(recover_net(&net_graph(&z3), 3, 3), Err(RecoverError::PreconditionViolated("need n > (k-1)^2")));
        let one = Net::new(5, ag5.classes()[..1].to_vec()).unwrap();
        assert!(recover_net(&net_graph(&one), 5, 1).is_ok());
    }

    #[test]
    fn block_graphs_and_recovery() {
        assert_eq!(block_graph(&gen::fano()), Graph::complete(7));
        let s15 = gen::sts(15).unwrap();
        let g = block_graph(&s15);
        assert_eq!(params(&g), Some((35, 18, 9, 9)));
        let back = recover_steiner2(&g, 15, 3).unwrap();
        assert!(crate::designs::sts_iso(&s15, &back, &Budget::default()).unwrap().is_found());
        assert!(matches!(recover_steiner2(&block_graph(&gen::sts(13).unwrap()), 13, 3), Err(RecoverError::PreconditionViolated(_))));
    }

    #[test]
    fn classifies_parameters() {
        assert_eq!(
            pseudo_thresholds(SrgParams::new(9, 6, 3, 6))[0],
            PseudoFamily::LatinSquare { m: 3, genuine: false }
        );
        assert!(pseudo_thresholds(SrgParams::new(35, 18, 9, 9)).contains(&PseudoFamily::SteinerTriple { v: 15, genuine: false }));
        assert_eq!(net_bound(2), 23);
        let p = SrgParams::net_graph(40, 3);
        assert!(pseudo_thresholds(p).contains(&PseudoFamily::Net { m: 40, d: 3, genuine: true }));
        assert!(pseudo_thresholds(SrgParams::new(13, 6, 2, 3)).contains(&PseudoFamily::Conference { n: 13 }));
        assert!(pseudo_thresholds(SrgParams::new(10, 3, 0, 1)).is_empty());
    }
}
