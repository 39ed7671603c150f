//! Color refinement, distinguishing sets and conference graph isomorphism.
//!
//! A refinement round replaces each vertex color by the signature
//! `(old color, neighbour colors)`, where the neighbour colors form a
//! multiset (counting variant) or a set (count-free variant). New ids are
//! the ranks of the distinct signatures in sorted order, so two graphs
//! refined together in one disjoint union get directly comparable colors.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cube::ceil_log2;
use crate::search::{Budget, Nodes, Verdict};
use crate::structures::srg_check;
use crate::Graph;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RefineError {
    #[error("first graph is not a conference graph")]
    NotConferenceGraph,
    #[error("coloring has {got} entries for {n} vertices")]
    BadColoring { n: usize, got: usize },
}

/// How many refinement rounds to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounds {
    Fixed(usize),
    /// Until a round no longer splits any class.
    Stable,
}

/// A vertex coloring with its refinement history.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub colors: Vec<usize>,
    pub round: usize,
    /// Colors after each round, starting with the initial coloring.
    pub history: Vec<Vec<usize>>,
}

/// Ranks of `keys` among their sorted distinct values.
fn canonical_ids<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).unwrap()).collect()
}

impl Coloring {
    /// A coloring from arbitrary labels, canonicalized to ranks.
    pub fn from_colors(colors: &[usize]) -> Self {
        let colors = canonical_ids(colors);
        Coloring {
            history: vec![colors.clone()],
            colors,
            round: 0,
        }
    }

    pub fn uniform(n: usize) -> Self {
        Coloring::from_colors(&vec![0; n])
    }

    pub fn by_degree(g: &Graph) -> Self {
        Coloring::from_colors(&(0..g.order()).map(|u| g.degree(u)).collect::<Vec<_>>())
    }

    /// Vertices of `seq` get colors `1, 2, …` in order; all others color 0.
    pub fn individualized(n: usize, seq: &[usize]) -> Self {
        let mut colors = vec![0; n];
        for (i, &s) in seq.iter().enumerate() {
            colors[s] = i + 1;
        }
        Coloring::from_colors(&colors)
    }

    pub fn class_count(&self) -> usize {
        let mut c = self.colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    pub fn is_discrete(&self) -> bool {
        self.class_count() == self.colors.len()
    }
}

fn refine_round(g: &Graph, colors: &[usize], counting: bool) -> Vec<usize> {
    let sigs: Vec<(usize, Vec<usize>)> = (0..g.order())
        .map(|u| {
            let mut nb: Vec<usize> = g.neighbors(u).iter().map(|&v| colors[v]).collect();
            nb.sort_unstable();
            if !counting {
                nb.dedup();
            }
            (colors[u], nb)
        })
        .collect();
    canonical_ids(&sigs)
}

fn classes(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Refines `initial` on `g`.
pub fn color_refine(g: &Graph, initial: &Coloring, rounds: Rounds, counting: bool) -> Result<Coloring, RefineError> {
    if initial.colors.len() != g.order() {
        return Err(RefineError::BadColoring {
            n: g.order(),
            got: initial.colors.len(),
        });
    }
    let mut out = initial.clone();
    loop {
        if let Rounds::Fixed(r) = rounds {
            if out.round >= initial.round + r {
                break;
            }
        }
        let next = refine_round(g, &out.colors, counting);
        if rounds == Rounds::Stable && classes(&next) == classes(&out.colors) {
            break;
        }
        out.round += 1;
        out.history.push(next.clone());
        out.colors = next;
    }
    Ok(out)
}

/// True iff all vertices outside `set` have pairwise distinct neighbourhoods
/// inside `set`.
pub fn is_distinguishing(g: &Graph, set: &[usize]) -> bool {
    let n = g.order();
    let mut in_set = vec![false; n];
    for &s in set {
        in_set[s] = true;
    }
    let mut traces: Vec<Vec<bool>> = (0..n)
        .filter(|&u| !in_set[u])
        .map(|u| set.iter().map(|&s| g.adjacent(u, s)).collect())
        .collect();
    traces.sort_unstable();
    traces.windows(2).all(|w| w[0] != w[1])
}

/// Default distinguishing-set size `⌈4 log₂ n⌉`, capped at `n`.
pub fn default_target(n: usize) -> usize {
    (4 * ceil_log2(n)).min(n)
}

/// A distinguishing set: random `target`-subsets are tried `budget.trials`
/// times, then greedy set cover takes over, which always succeeds.
pub fn find_distinguishing_set(g: &Graph, target: usize, budget: &Budget) -> Vec<usize> {
    let n = g.order();
    let target = target.min(n);
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    for _ in 0..budget.trials {
        let mut s = sample(&mut rng, n, target).into_vec();
        s.sort_unstable();
        if is_distinguishing(g, &s) {
            return s;
        }
    }
    greedy_distinguishing_set(g)
}

/// Greedy set cover: add the vertex that separates the most pairs with
/// equal traces, smallest vertex on ties.
pub fn greedy_distinguishing_set(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut set: Vec<usize> = Vec::new();
    let mut in_set = vec![false; n];
    // Trace class of every vertex outside the set.
    let mut class = vec![0usize; n];
    loop {
        let pairs_after = |w: usize| -> usize {
            let mut keys: Vec<(usize, bool)> = (0..n)
                .filter(|&u| !in_set[u] && u != w)
                .map(|u| (class[u], w < n && g.adjacent(u, w)))
                .collect();
            keys.sort_unstable();
            let mut total = 0;
            let mut i = 0;
            while i < keys.len() {
                let mut j = i;
                while j < keys.len() && keys[j] == keys[i] {
                    j += 1;
                }
                total += (j - i) * (j - i - 1) / 2;
                i = j;
            }
            total
        };
        let current = pairs_after(usize::MAX);
        if current == 0 {
            return set;
        }
        let best = (0..n).filter(|&w| !in_set[w]).min_by_key(|&w| (pairs_after(w), w)).unwrap();
        in_set[best] = true;
        set.push(best);
        let keys: Vec<(usize, bool)> = (0..n).map(|u| (class[u], g.adjacent(u, best))).collect();
        class = canonical_ids(&keys);
    }
}

/// Colors of the disjoint union `g ⊔ h` (vertices of `h` shifted by `|g|`).
struct Joint {
    union: Graph,
    ng: usize,
}

impl Joint {
    fn new(g: &Graph, h: &Graph) -> Self {
        Joint {
            union: g.disjoint_union(h),
            ng: g.order(),
        }
    }

    /// Individualizes `seq_g[i]` and `seq_h[i]` with color `i + 1` and refines.
    fn refine(&self, seq_g: &[usize], seq_h: &[usize], rounds: Rounds, counting: bool) -> Vec<usize> {
        let mut colors = vec![0; self.union.order()];
        for (i, (&a, &b)) in seq_g.iter().zip(seq_h).enumerate() {
            colors[a] = i + 1;
            colors[self.ng + b] = i + 1;
        }
        color_refine(&self.union, &Coloring::from_colors(&colors), rounds, counting)
            .expect("coloring sized to the union")
            .colors
    }

    /// Per-color class sizes agree on both sides.
    fn balanced(&self, colors: &[usize]) -> bool {
        let count = colors.iter().max().map_or(0, |m| m + 1);
        let mut diff = vec![0i64; count];
        for (v, &c) in colors.iter().enumerate() {
            diff[c] += if v < self.ng { 1 } else { -1 };
        }
        diff.iter().all(|&d| d == 0)
    }

    /// The map induced by a discrete balanced coloring, if it is an isomorphism.
    fn induced_map(&self, g: &Graph, h: &Graph, colors: &[usize]) -> Option<Vec<usize>> {
        let nh = self.union.order() - self.ng;
        if nh != self.ng || !self.balanced(colors) {
            return None;
        }
        let mut by_color = vec![usize::MAX; self.union.order()];
        for v in 0..nh {
            by_color[colors[self.ng + v]] = v;
        }
        let mut map = vec![0; self.ng];
        let mut seen = vec![false; self.union.order()];
        for u in 0..self.ng {
            let c = colors[u];
            if seen[c] || by_color[c] == usize::MAX {
                return None;
            }
            seen[c] = true;
            map[u] = by_color[c];
        }
        g.is_isomorphism(h, &map).then_some(map)
    }
}

/// Options for [`conference_iso_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConferenceOptions {
    /// Reject at once when the parameters of `h` differ from those of `g`.
    pub screen: bool,
    /// Size of the random distinguishing sets; `None` uses [`default_target`].
    pub target: Option<usize>,
}

impl Default for ConferenceOptions {
    fn default() -> Self {
        ConferenceOptions { screen: true, target: None }
    }
}

/// Isomorphism from a conference graph `g` to an arbitrary graph `h`.
pub fn conference_iso(g: &Graph, h: &Graph, budget: &Budget) -> Result<Verdict<Vec<usize>>, RefineError> {
    conference_iso_with(g, h, budget, ConferenceOptions::default())
}

/// A sequence whose individualization makes two count-free rounds discrete.
///
/// Starts from a distinguishing set and drops members while the property
/// survives; the final sequence is checked, not assumed.
pub fn two_round_sequence(g: &Graph, target: usize, budget: &Budget) -> Vec<usize> {
    let discretizes = |s: &[usize]| {
        color_refine(g, &Coloring::individualized(g.order(), s), Rounds::Fixed(2), false)
            .expect("sized coloring")
            .is_discrete()
    };
    let mut seq = find_distinguishing_set(g, target, budget);
    assert!(discretizes(&seq), "distinguishing set failed to discretize in two rounds");
    let mut i = seq.len();
    while i > 0 {
        i -= 1;
        let mut shorter = seq.clone();
        shorter.remove(i);
        if discretizes(&shorter) {
            seq = shorter;
        }
    }
    seq
}

pub fn conference_iso_with(g: &Graph, h: &Graph, budget: &Budget, opts: ConferenceOptions) -> Result<Verdict<Vec<usize>>, RefineError> {
    let pg = srg_check(g).filter(|p| p.is_conference()).ok_or(RefineError::NotConferenceGraph)?;
    let n = g.order();
    if h.order() != n || h.edge_count() != g.edge_count() {
        return Ok(Verdict::Absent);
    }
    if opts.screen && srg_check(h) != Some(pg) {
        return Ok(Verdict::Absent);
    }
    let seq = two_round_sequence(g, opts.target.unwrap_or(default_target(n)), budget);
    let joint = Joint::new(g, h);
    let mut nodes = Nodes::new(budget.node_limit);
    let mut image = Vec::with_capacity(seq.len());
    let mut used = vec![false; n];
    Ok(match conference_dfs(&joint, g, h, &seq, &mut image, &mut used, &mut nodes) {
        Some(Some(map)) => Verdict::Found(map),
        Some(None) => Verdict::Absent,
        None => Verdict::Unknown,
    })
}

/// `Some(Some(map))` on success, `Some(None)` when the subtree is exhausted,
/// `None` when the budget ran out.
fn conference_dfs(
    joint: &Joint,
    g: &Graph,
    h: &Graph,
    seq: &[usize],
    image: &mut Vec<usize>,
    used: &mut [bool],
    nodes: &mut Nodes,
) -> Option<Option<Vec<usize>>> {
    let depth = image.len();
    let colors = joint.refine(&seq[..depth], image, Rounds::Fixed(2), false);
    if !joint.balanced(&colors) {
        return Some(None);
    }
    if depth == seq.len() {
        return Some(joint.induced_map(g, h, &colors));
    }
    let want = colors[seq[depth]];
    for v in 0..h.order() {
        if used[v] || colors[joint.ng + v] != want {
            continue;
        }
        if !nodes.tick() {
            return None;
        }
        used[v] = true;
        image.push(v);
        let r = conference_dfs(joint, g, h, seq, image, used, nodes);
        image.pop();
        used[v] = false;
        match r {
            Some(None) => {}
            other => return other,
        }
    }
    Some(None)
}

/// Default individualization depth for [`individualize_and_refine`].
pub const DEFAULT_DEPTH: usize = 3;

/// Backtracking individualize-and-refine on the pair `(g, h)`.
///
/// After each stable joint refinement the smallest ambiguous color class of
/// `g` is split by individualizing its first vertex against every vertex of
/// `h` in that class. Reports `Unknown` when some branch needs more than
/// `depth` individualizations.
pub fn individualize_and_refine(g: &Graph, h: &Graph, depth: usize, counting: bool) -> Verdict<Vec<usize>> {
    if g.order() != h.order() || g.edge_count() != h.edge_count() {
        return Verdict::Absent;
    }
    let joint = Joint::new(g, h);
    let mut sg = Vec::new();
    let mut sh = Vec::new();
    ir_branch(&joint, g, h, &mut sg, &mut sh, depth, counting)
}

fn ir_branch(joint: &Joint, g: &Graph, h: &Graph, sg: &mut Vec<usize>, sh: &mut Vec<usize>, depth: usize, counting: bool) -> Verdict<Vec<usize>> {
    let colors = joint.refine(sg, sh, Rounds::Stable, counting);
    if !joint.balanced(&colors) {
        return Verdict::Absent;
    }
    let ng = joint.ng;
    let mut size = vec![0usize; colors.iter().max().map_or(0, |m| m + 1)];
    for &c in &colors[..ng] {
        size[c] += 1;
    }
    let cell = (0..ng).filter(|&u| size[colors[u]] > 1).min_by_key(|&u| (size[colors[u]], colors[u], u));
    let Some(u) = cell else {
        return joint.induced_map(g, h, &colors).map_or(Verdict::Absent, Verdict::Found);
    };
    if sg.len() >= depth {
        return Verdict::Unknown;
    }
    let mut unknown = false;
    for v in 0..h.order() {
        if colors[ng + v] != colors[u] {
            continue;
        }
        sg.push(u);
        sh.push(v);
        let r = ir_branch(joint, g, h, sg, sh, depth, counting);
        sg.pop();
        sh.pop();
        match r {
            Verdict::Found(m) => return Verdict::Found(m),
            Verdict::Unknown => unknown = true,
            Verdict::Absent => {}
        }
    }
    if unknown {
        Verdict::Unknown
    } else {
        Verdict::Absent
    }
}
