use alloc::vec;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} is outside 0..{n}")]
    VertexOutOfRange { vertex: usize, n: usize },
}

/// Undirected simple graph on vertices `0..n`.
///
/// Adjacency is kept both as bitset rows (for common-neighbour counts) and
/// as sorted neighbour lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    nbrs: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            bits: vec![0; n * words],
            nbrs: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list. Repeated edges collapse.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.set(u, v);
            g.set(v, u);
        }
        g.rebuild_lists();
        Ok(g)
    }

    /// Builds a graph from a symmetric predicate evaluated on pairs `u < v`.
    pub fn from_fn(n: usize, adjacent: impl Fn(usize, usize) -> bool) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    g.set(u, v);
                    g.set(v, u);
                }
            }
        }
        g.rebuild_lists();
        g
    }

    fn set(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
    }

    fn rebuild_lists(&mut self) {
        for u in 0..self.n {
            self.nbrs[u] = (0..self.n).filter(|&v| self.adjacent(u, v)).collect();
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.nbrs[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.nbrs[u].len()
    }

    pub fn edge_count(&self) -> usize {
        self.nbrs.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.nbrs[u].iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    pub fn common_neighbor_count(&self, u: usize, v: usize) -> usize {
        self.row(u).iter().zip(self.row(v)).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn common_neighbors(&self, u: usize, v: usize) -> Vec<usize> {
        self.nbrs[u].iter().copied().filter(|&w| self.adjacent(v, w)).collect()
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter().enumerate().all(|(i, &a)| vs[i + 1..].iter().all(|&b| self.adjacent(a, b)))
    }

    /// Degree of each vertex of `vs` inside the subgraph induced by `vs`.
    pub fn induced_degrees(&self, vs: &[usize]) -> Vec<usize> {
        vs.iter().map(|&a| vs.iter().filter(|&&b| self.adjacent(a, b)).count()).collect()
    }

    pub fn complement(&self) -> Graph {
        Graph::from_fn(self.n, |u, v| !self.adjacent(u, v))
    }

    /// The graph with vertex `v` renamed to `map[v]`.
    pub fn relabeled(&self, map: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.set(map[u], map[v]);
            g.set(map[v], map[u]);
        }
        g.rebuild_lists();
        g
    }

    /// Disjoint union; vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n;
        let edges = self.edges().chain(other.edges().map(|(u, v)| (u + n, v + n)));
        Graph::from_edges(n + other.n, edges).expect("shifted edges are in range")
    }

    /// True iff `map` is a bijection with `u ~ v ⇔ map[u] ~ map[v]`.
    pub fn is_isomorphism(&self, other: &Graph, map: &[usize]) -> bool {
        self.n == other.n
            && map.len() == self.n
            && crate::perm::is_permutation(map)
            && (0..self.n).all(|u| (u + 1..self.n).all(|v| self.adjacent(u, v) == other.adjacent(map[u], map[v])))
    }

    pub fn is_regular(&self) -> Option<usize> {
        let d = self.nbrs.first().map_or(0, Vec::len);
        self.nbrs.iter().all(|l| l.len() == d).then_some(d)
    }

    pub fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are in range")
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_fn(n, |_, _| true)
    }
}
