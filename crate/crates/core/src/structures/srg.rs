use super::Graph;

/// Parameters `(n, k, λ, μ)` of a strongly regular graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SrgParams {
    pub n: usize,
    pub k: usize,
    pub lambda: usize,
    pub mu: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SrgError {
    #[error("complement parameters of {0:?} would be negative")]
    ComplementInfeasible(SrgParams),
}

impl SrgParams {
    pub const fn new(n: usize, k: usize, lambda: usize, mu: usize) -> Self {
        SrgParams { n, k, lambda, mu }
    }

    /// `k(k − λ − 1) = (n − k − 1)μ`.
    pub fn is_feasible(&self) -> bool {
        let (n, k, l, m) = (self.n as i128, self.k as i128, self.lambda as i128, self.mu as i128);
        k * (k - l - 1) == (n - k - 1) * m
    }

    /// Latin square graph of order `m`: `(m², 3(m−1), m, 6)`.
    pub fn latin_square_graph(m: usize) -> Self {
        Self::net_graph(m, 3)
    }

    /// Net graph of order `m` and degree `d`: `(m², d(m−1), m−2+(d−1)(d−2), d(d−1))`.
    pub fn net_graph(m: usize, d: usize) -> Self {
        SrgParams {
            n: m * m,
            k: d * (m - 1),
            lambda: m + (d - 1) * (d.saturating_sub(2)) - 2,
            mu: d * (d - 1),
        }
    }

    /// Block graph of an STS(v): `(v(v−1)/6, 3(v−3)/2, (v+3)/2, 9)`.
    pub fn sts_block_graph(v: usize) -> Self {
        SrgParams {
            n: v * (v - 1) / 6,
            k: 3 * (v - 3) / 2,
            lambda: (v + 3) / 2,
            mu: 9,
        }
    }

    /// Conference graph on `n` vertices: `(n, (n−1)/2, (n−5)/4, (n−1)/4)`.
    pub fn conference(n: usize) -> Self {
        SrgParams {
            n,
            k: (n - 1) / 2,
            lambda: (n - 5) / 4,
            mu: (n - 1) / 4,
        }
    }

    pub fn is_conference(&self) -> bool {
        self.n % 4 == 1 && self.n >= 5 && *self == Self::conference(self.n)
    }
}

/// Returns `(n, k, λ, μ)` if `g` is strongly regular.
///
/// Complete and edgeless graphs are rejected: one of λ, μ is vacuous there.
pub fn srg_check(g: &Graph) -> Option<SrgParams> {
    let n = g.order();
    let k = g.is_regular()?;
    if n < 2 || k == 0 || k == n - 1 {
        return None;
    }
    let mut lambda = None;
    let mut mu = None;
    for u in 0..n {
        for v in u + 1..n {
            let c = g.common_neighbor_count(u, v);
            let slot = if g.adjacent(u, v) { &mut lambda } else { &mut mu };
            match *slot {
                None => *slot = Some(c),
                Some(x) if x != c => return None,
                _ => {}
            }
        }
    }
    let p = SrgParams {
        n,
        k,
        lambda: lambda?,
        mu: mu?,
    };
    debug_assert!(p.is_feasible());
    Some(p)
}

/// Parameters of the complement: `(n, n−k−1, n−2−2k+μ, n−2k+λ)`.
pub fn srg_complement_params(p: SrgParams) -> Result<SrgParams, SrgError> {
    let (n, k, l, m) = (p.n as i64, p.k as i64, p.lambda as i64, p.mu as i64);
    let out = [n, n - k - 1, n - 2 - 2 * k + m, n - 2 * k + l];
    if out.iter().any(|&x| x < 0) {
        return Err(SrgError::ComplementInfeasible(p));
    }
    Ok(SrgParams {
        n: out[0] as usize,
        k: out[1] as usize,
        lambda: out[2] as usize,
        mu: out[3] as usize,
    })
}
