//! Deterministic and seeded instance generators.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Graph, LatinSquare, Net, SteinerDesign};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("unknown group spec {0:?}")]
    UnknownSpec(String),
    #[error("size {size} exceeds the limit {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("no Steiner triple system of order {0}")]
    InadmissibleOrder(usize),
    #[error("{0} is not a prime")]
    NotPrime(usize),
    #[error("{0} is not a prime congruent to 1 mod 4")]
    Inadmissible(usize),
}

/// Largest order accepted by the Latin square generators.
pub const MAX_ORDER: usize = 64;

pub fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Multiplication table of a small group.
///
/// Accepts `Zn`, `Dn` (dihedral of order `2n`), `S3`, `Q8` and direct
/// products of those joined by `x`, e.g. `Z2xZ4` or `Z2 x Z2 x Z2`.
/// Products order their elements lexicographically, first factor slowest.
/// Every factor lists its identity as element 0.
pub fn group_square(spec: &str) -> Result<LatinSquare, GenError> {
    let compact: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    let unknown = || GenError::UnknownSpec(spec.to_string());
    let mut table: Option<LatinSquare> = None;
    for factor in compact.split(['x', 'X']) {
        let f = group_factor(factor).ok_or_else(unknown)?;
        table = Some(match table {
            None => f,
            Some(t) => {
                let size = t.order() * f.order();
                if size > MAX_ORDER {
                    return Err(GenError::TooLarge { size, limit: MAX_ORDER });
                }
                direct_product(&t, &f)
            }
        });
    }
    table.ok_or_else(unknown)
}

fn group_factor(s: &str) -> Option<LatinSquare> {
    let (kind, rest) = s.split_at(s.find(|c: char| c.is_ascii_digit())?);
    let m: usize = rest.parse().ok()?;
    match kind {
        "Z" | "C" if (1..=MAX_ORDER).contains(&m) => Some(LatinSquare::cyclic(m)),
        "D" if (1..=MAX_ORDER / 2).contains(&m) => Some(dihedral(m)),
        "S" if m == 3 => Some(dihedral(3)),
        "Q" if m == 8 => Some(quaternion()),
        _ => None,
    }
}

/// Element `i + m·j` stands for `r^i s^j`.
fn dihedral(m: usize) -> LatinSquare {
    let n = 2 * m;
    LatinSquare::from_cells_unchecked(
        n,
        (0..n * n)
            .map(|idx| {
                let (a, b) = (idx / n, idx % n);
                let (i, j) = (a % m, a / m);
                let (k, l) = (b % m, b / m);
                let rot = if j == 0 { (i + k) % m } else { (i + m - k) % m };
                rot + m * ((j + l) % 2)
            })
            .collect(),
    )
}

/// Element `u + 4·s` stands for `(−1)^s · u` with units `1, i, j, k`.
fn quaternion() -> LatinSquare {
    // (unit, sign) of products of units.
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (1, 0), (2, 0), (3, 0)],
        [(1, 0), (0, 1), (3, 0), (2, 1)],
        [(2, 0), (3, 1), (0, 1), (1, 0)],
        [(3, 0), (2, 0), (1, 1), (0, 1)],
    ];
    LatinSquare::from_cells_unchecked(
        8,
        (0..64)
            .map(|idx| {
                let (a, b) = (idx / 8, idx % 8);
                let (u, s) = UNIT[a % 4][b % 4];
                u + 4 * ((s + a / 4 + b / 4) % 2)
            })
            .collect(),
    )
}

fn direct_product(a: &LatinSquare, b: &LatinSquare) -> LatinSquare {
    let (p, q) = (a.order(), b.order());
    let n = p * q;
    LatinSquare::from_cells_unchecked(
        n,
        (0..n * n)
            .map(|idx| {
                let (x, y) = (idx / n, idx % n);
                a.mul(x / q, y / q) * q + b.mul(x % q, y % q)
            })
            .collect(),
    )
}

/// Specs of all groups of order at most 8, one per isomorphism class.
pub const SMALL_GROUPS: [&str; 14] = [
    "Z1", "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "S3", "Z7", "Z8", "Z2xZ4", "Z2xZ2xZ2", "D4", "Q8",
];

/// A random Latin square from a Jacobson–Matthews walk of `10·n³` steps
/// started at the cyclic square. The walk runs on the ±1 incidence cube, so
/// it mixes even where plain intercalate flips get stuck (cyclic squares of
/// odd order have no intercalates at all).
pub fn random_latin_square(n: usize, seed: u64) -> LatinSquare {
    assert!(n <= MAX_ORDER, "order {n} exceeds {MAX_ORDER}");
    if n <= 1 {
        return LatinSquare::cyclic(n);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let idx = |r: usize, c: usize, s: usize| (r * n + c) * n + s;
    let mut cube = vec![0i8; n * n * n];
    for r in 0..n {
        for c in 0..n {
            cube[idx(r, c, (r + c) % n)] = 1;
        }
    }
    let mut improper: Option<(usize, usize, usize)> = None;
    let steps = 10 * n * n * n;
    let mut step = 0;
    while step < steps || improper.is_some() {
        step += 1;
        let (x, y, z, x1, y1, z1);
        match improper {
            None => {
                let (a, b, c) = loop {
                    let t = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                    if cube[idx(t.0, t.1, t.2)] == 0 {
                        break t;
                    }
                };
                (x, y, z) = (a, b, c);
                x1 = (0..n).find(|&i| cube[idx(i, y, z)] == 1).unwrap();
                y1 = (0..n).find(|&i| cube[idx(x, i, z)] == 1).unwrap();
                z1 = (0..n).find(|&i| cube[idx(x, y, i)] == 1).unwrap();
            }
            Some((a, b, c)) => {
                (x, y, z) = (a, b, c);
                let pick = |rng: &mut ChaCha8Rng, f: &dyn Fn(usize) -> bool| {
                    let two: Vec<usize> = (0..n).filter(|&i| f(i)).collect();
                    two[rng.gen_range(0..two.len())]
                };
                x1 = pick(&mut rng, &|i| cube[idx(i, y, z)] == 1);
                y1 = pick(&mut rng, &|i| cube[idx(x, i, z)] == 1);
                z1 = pick(&mut rng, &|i| cube[idx(x, y, i)] == 1);
            }
        }
        cube[idx(x, y, z)] += 1;
        cube[idx(x, y1, z1)] += 1;
        cube[idx(x1, y, z1)] += 1;
        cube[idx(x1, y1, z)] += 1;
        cube[idx(x1, y, z)] -= 1;
        cube[idx(x, y1, z)] -= 1;
        cube[idx(x, y, z1)] -= 1;
        cube[idx(x1, y1, z1)] -= 1;
        improper = (cube[idx(x1, y1, z1)] < 0).then_some((x1, y1, z1));
    }
    let cells = (0..n * n)
        .map(|rc| (0..n).find(|&s| cube[rc * n + s] == 1).unwrap())
        .collect();
    LatinSquare::from_cells(n, cells).expect("walk ends on a proper square")
}

/// Every Latin square of order `n ≤ 4`, filled row by row in lexicographic order.
pub fn all_latin_squares(n: usize) -> Result<Vec<LatinSquare>, GenError> {
    if n > 4 {
        return Err(GenError::TooLarge { size: n, limit: 4 });
    }
    let mut out = Vec::new();
    let mut cells = vec![usize::MAX; n * n];
    fill_cells(n, 0, &mut cells, &mut out, |i| i);
    Ok(out)
}

/// Same enumeration filled column by column; used to cross-check counts.
pub fn all_latin_squares_by_column(n: usize) -> Result<Vec<LatinSquare>, GenError> {
    if n > 4 {
        return Err(GenError::TooLarge { size: n, limit: 4 });
    }
    let mut out = Vec::new();
    let mut cells = vec![usize::MAX; n * n];
    fill_cells(n, 0, &mut cells, &mut out, |i| (i % n.max(1)) * n + i / n.max(1));
    Ok(out)
}

fn fill_cells(n: usize, pos: usize, cells: &mut [usize], out: &mut Vec<LatinSquare>, order: impl Fn(usize) -> usize + Copy) {
    if pos == n * n {
        out.push(LatinSquare::from_cells_unchecked(n, cells.to_vec()));
        return;
    }
    let cell = order(pos);
    let (r, c) = (cell / n, cell % n);
    for s in 0..n {
        let clash = (0..n).any(|j| cells[r * n + j] == s) || (0..n).any(|i| cells[i * n + c] == s);
        if !clash {
            cells[cell] = s;
            fill_cells(n, pos + 1, cells, out, order);
            cells[cell] = usize::MAX;
        }
    }
}

/// A Steiner triple system of order `v ≡ 1, 3 (mod 6)`, `v ≤ 99`: the Bose
/// construction for `v ≡ 3` and the Skolem construction for `v ≡ 1`.
pub fn sts(v: usize) -> Result<SteinerDesign, GenError> {
    if v > 99 {
        return Err(GenError::TooLarge { size: v, limit: 99 });
    }
    let blocks = match v % 6 {
        3 => bose(v / 3),
        1 if v >= 7 => skolem(v / 6),
        1 if v == 1 => Vec::new(),
        _ => return Err(GenError::InadmissibleOrder(v)),
    };
    if v == 1 {
        return Err(GenError::InadmissibleOrder(v));
    }
    Ok(SteinerDesign::new(v, 2, 3, blocks).expect("construction yields a Steiner triple system"))
}

/// Points `x + m·i` for `x ∈ Z_m` (m odd), `i ∈ Z_3`.
fn bose(m: usize) -> Vec<Vec<usize>> {
    let half = m.div_ceil(2);
    let op = |x: usize, y: usize| (x + y) * half % m;
    let pt = |x: usize, i: usize| x + m * (i % 3);
    let mut blocks: Vec<Vec<usize>> = (0..m).map(|x| vec![pt(x, 0), pt(x, 1), pt(x, 2)]).collect();
    for i in 0..3 {
        for x in 0..m {
            for y in x + 1..m {
                blocks.push(vec![pt(x, i), pt(y, i), pt(op(x, y), i + 1)]);
            }
        }
    }
    blocks
}

/// Points `x + 2m·i` for `x ∈ Z_2m`, `i ∈ Z_3`, plus the point `6m`.
fn skolem(m: usize) -> Vec<Vec<usize>> {
    let two = 2 * m;
    // Half-idempotent commutative quasigroup: (x, x) and (x+m, x+m) give x.
    let op = |x: usize, y: usize| {
        let s = (x + y) % two;
        if s.is_multiple_of(2) {
            s / 2
        } else {
            (s - 1) / 2 + m
        }
    };
    let pt = |x: usize, i: usize| x + two * (i % 3);
    let inf = 3 * two;
    let mut blocks: Vec<Vec<usize>> = (0..m).map(|x| vec![pt(x, 0), pt(x, 1), pt(x, 2)]).collect();
    for i in 0..3 {
        for x in 0..m {
            blocks.push(vec![inf, pt(x + m, i), pt(x, i + 1)]);
        }
        for x in 0..two {
            for y in x + 1..two {
                blocks.push(vec![pt(x, i), pt(y, i), pt(op(x, y), i + 1)]);
            }
        }
    }
    blocks
}

/// The Fano plane with lines `{0,1,2}, {0,3,4}, …`.
pub fn fano() -> SteinerDesign {
    SteinerDesign::new(
        7,
        2,
        3,
        vec![
            vec![0, 1, 2],
            vec![0, 3, 4],
            vec![0, 5, 6],
            vec![1, 3, 5],
            vec![1, 4, 6],
            vec![2, 3, 6],
            vec![2, 4, 5],
        ],
    )
    .expect("the Fano plane is an STS(7)")
}

/// The cyclic STS(13) developed from base blocks `{0,1,4}` and `{0,2,7}`.
pub fn cyclic_sts13() -> SteinerDesign {
    let mut blocks = Vec::new();
    for base in [[0, 1, 4], [0, 2, 7]] {
        for s in 0..13 {
            blocks.push(base.iter().map(|&x| (x + s) % 13).collect());
        }
    }
    SteinerDesign::new(13, 2, 3, blocks).expect("difference family mod 13")
}

/// Pasch configurations: four blocks on six points, each point in two blocks.
fn pasch_configurations(d: &SteinerDesign) -> Vec<[usize; 4]> {
    let blocks = d.blocks();
    let third = |a: usize, b: usize| -> Option<usize> {
        let p = if a < b { [a, b] } else { [b, a] };
        blocks
            .iter()
            .position(|bl| bl.contains(&p[0]) && bl.contains(&p[1]))
    };
    let mut found = BTreeSet::new();
    for (i, b1) in blocks.iter().enumerate() {
        for (j, b2) in blocks.iter().enumerate().skip(i + 1) {
            let shared: Vec<usize> = b1.iter().copied().filter(|p| b2.contains(p)).collect();
            if shared.len() != 1 {
                continue;
            }
            let a = shared[0];
            let x: Vec<usize> = b1.iter().copied().filter(|&p| p != a).collect();
            let y: Vec<usize> = b2.iter().copied().filter(|&p| p != a).collect();
            // Pasch needs blocks {x0,y0,f} and {x1,y1,f}, or the crossed pairing.
            for (p, q) in [((x[0], y[0]), (x[1], y[1])), ((x[0], y[1]), (x[1], y[0]))] {
                let (Some(k), Some(l)) = (third(p.0, p.1), third(q.0, q.1)) else {
                    continue;
                };
                let f1: Vec<usize> = blocks[k].iter().copied().filter(|&z| z != p.0 && z != p.1).collect();
                let f2: Vec<usize> = blocks[l].iter().copied().filter(|&z| z != q.0 && z != q.1).collect();
                if f1 == f2 && f1[0] != a {
                    let mut set = [i, j, k, l];
                    set.sort_unstable();
                    found.insert(set);
                }
            }
        }
    }
    found.into_iter().collect()
}

/// Number of Pasch configurations, an isomorphism invariant.
pub fn pasch_count(d: &SteinerDesign) -> usize {
    pasch_configurations(d).len()
}

/// Replaces the first Pasch configuration `{a,b,c} {a,d,e} {f,b,d} {f,c,e}`
/// by its opposite `{a,b,d} {a,c,e} {f,b,c} {f,d,e}`. Returns `None` when
/// the system is anti-Pasch.
pub fn pasch_switch(d: &SteinerDesign) -> Option<SteinerDesign> {
    let conf = *pasch_configurations(d).first()?;
    let blocks = d.blocks();
    let quad: Vec<&Vec<usize>> = conf.iter().map(|&i| &blocks[i]).collect();
    let mut new_blocks: Vec<Vec<usize>> = blocks
        .iter()
        .enumerate()
        .filter(|(i, _)| !conf.contains(i))
        .map(|(_, b)| b.clone())
        .collect();
    let points: BTreeSet<usize> = quad.iter().flat_map(|b| b.iter().copied()).collect();
    // Point opposite to p: the one not sharing a block with p.
    let opposite = |p: usize| -> usize {
        *points
            .iter()
            .find(|&&q| q != p && !quad.iter().any(|b| b.contains(&p) && b.contains(&q)))
            .unwrap()
    };
    // The six points form three opposite pairs. Of the eight transversal
    // triples, four are the configuration and the other four its switch.
    let mut pairs: Vec<[usize; 2]> = Vec::new();
    for &p in &points {
        let q = opposite(p);
        if p < q {
            pairs.push([p, q]);
        }
    }
    let in_conf = |t: &Vec<usize>| quad.contains(&t);
    for mask in 0..8u32 {
        let mut t: Vec<usize> = (0..3).map(|i| pairs[i][(mask >> i & 1) as usize]).collect();
        t.sort_unstable();
        if !in_conf(&t) {
            new_blocks.push(t);
        }
    }
    Some(SteinerDesign::new(d.points(), 2, 3, new_blocks).expect("a Pasch switch preserves the Steiner property"))
}

/// AG(2, q) for a prime `q ≤ 13`. Point `x·q + y` is `(x, y)`. Class `m < q`
/// holds the lines `y = m·x + b`; class `q` holds the verticals.
pub fn affine_plane(q: usize) -> Result<Net, GenError> {
    if !is_prime(q) {
        return Err(GenError::NotPrime(q));
    }
    if q > 13 {
        return Err(GenError::TooLarge { size: q, limit: 13 });
    }
    let mut classes = Vec::new();
    for m in 0..q {
        classes.push((0..q).map(|b| (0..q).map(|x| x * q + (m * x + b) % q).collect()).collect());
    }
    classes.push((0..q).map(|x| (0..q).map(|y| x * q + y).collect()).collect());
    Ok(Net::new(q, classes).expect("AG(2,q) is an affine plane"))
}

/// The Steiner (3,4,8)-design on `F₂³`: all 4-sets whose elements XOR to zero.
pub fn s348() -> SteinerDesign {
    let mut blocks = Vec::new();
    for a in 0..8 {
        for b in a + 1..8 {
            for c in b + 1..8 {
                let d = a ^ b ^ c;
                if d > c {
                    blocks.push(vec![a, b, c, d]);
                }
            }
        }
    }
    SteinerDesign::new(8, 3, 4, blocks).expect("S(3,4,8)")
}

/// Paley graph on `Z_q` for a prime `q ≡ 1 (mod 4)`, `q ≤ 101`.
pub fn paley_conference(q: usize) -> Result<Graph, GenError> {
    if !is_prime(q) || q % 4 != 1 || q > 101 {
        return Err(GenError::Inadmissible(q));
    }
    let mut square = vec![false; q];
    for x in 1..q {
        square[x * x % q] = true;
    }
    Ok(Graph::from_fn(q, |u, v| square[(v + q - u) % q]))
}

/// A copy of `g` with `swaps` random degree-preserving double-edge swaps
/// `{a,b},{c,d} → {a,d},{c,b}`.
pub fn edge_swapped(g: &Graph, swaps: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.order();
    let mut adj: Vec<Vec<bool>> = (0..n).map(|u| (0..n).map(|v| g.adjacent(u, v)).collect()).collect();
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    if edges.len() < 2 {
        return g.clone();
    }
    let mut done = 0;
    let mut attempts = 0;
    while done < swaps && attempts < 1000 * (swaps + 1) {
        attempts += 1;
        let i = rng.gen_range(0..edges.len());
        let j = rng.gen_range(0..edges.len());
        let (a, b) = edges[i];
        let (c, d) = if rng.gen_bool(0.5) { edges[j] } else { (edges[j].1, edges[j].0) };
        if i == j || a == c || a == d || b == c || b == d || adj[a][d] || adj[c][b] {
            continue;
        }
        adj[a][b] = false;
        adj[b][a] = false;
        adj[c][d] = false;
        adj[d][c] = false;
        adj[a][d] = true;
        adj[d][a] = true;
        adj[c][b] = true;
        adj[b][c] = true;
        edges[i] = (a.min(d), a.max(d));
        edges[j] = (c.min(b), c.max(b));
        done += 1;
    }
    Graph::from_fn(n, |u, v| adj[u][v])
}
