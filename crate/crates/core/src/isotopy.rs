//! Quasigroup isomorphism and Latin square isotopy.
//!
//! Both isotopy methods reduce to loop isomorphism. Fix a cell `(x₀, y₀)` of
//! `L₁` and form the loop `u ∘ v = (u / y₀)·(x₀ \ v)`. Every isotopy
//! `(α, β, γ): L₁ → L₂` makes `γ` an isomorphism from that loop onto the loop
//! of `L₂` at `(α(x₀), β(y₀))`, and conversely every such isomorphism yields
//! an isotopy. Trying all `n²` target cells is therefore complete.
//!
//! The cube method finds isomorphisms by guessing images of a cube
//! generating sequence and extending them with [`extend_cube_map`]; the
//! isotopy is then assembled as `(φ_A, φ_B, φ_C)` with `φ_C` read off the
//! relation `{(xy, φ_A(x)φ_B(y))}`. The normal-form method relabels both
//! squares so the first row and column read `0, 1, …, n−1` and tests the
//! normalized tables for isomorphism.

use alloc::vec;
use alloc::vec::Vec;

use crate::cube::{self, extend_raw, is_bijection_relation, CubeError};
use crate::perm;
use crate::search::{Budget, Exhaust, Nodes, Verdict};
use crate::structures::Conjugate;
use crate::{Isotopy, LatinSquare};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IsotopyError {
    #[error("squares have different orders {left} and {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error(transparent)]
    Cube(#[from] CubeError),
}

/// Which reduction an isotopy test uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IsotopyMethod {
    Cube,
    #[default]
    NormalForm,
}

fn check_orders(l1: &LatinSquare, l2: &LatinSquare) -> Result<(), IsotopyError> {
    if l1.order() != l2.order() {
        return Err(IsotopyError::OrderMismatch {
            left: l1.order(),
            right: l2.order(),
        });
    }
    Ok(())
}

/// Backtracking over images of a generating sequence.
///
/// Each assignment is closed under multiplication: whenever `x` and `y` are
/// mapped, `xy` is forced to `φ(x)φ(y)`. Since the generators reach every
/// symbol through products, a leaf is a total map that already satisfies
/// `φ(xy) = φ(x)φ(y)` on all pairs.
struct IsoSearch<'a> {
    l1: &'a LatinSquare,
    l2: &'a LatinSquare,
    gens: &'a [usize],
    map: Vec<usize>,
    inv: Vec<usize>,
    assigned: Vec<usize>,
}

const FREE: usize = usize::MAX;

impl<'a> IsoSearch<'a> {
    fn new(l1: &'a LatinSquare, l2: &'a LatinSquare, gens: &'a [usize]) -> Self {
        let n = l1.order();
        IsoSearch {
            l1,
            l2,
            gens,
            map: vec![FREE; n],
            inv: vec![FREE; n],
            assigned: Vec::with_capacity(n),
        }
    }

    fn undo(&mut self, mark: usize) {
        while self.assigned.len() > mark {
            let x = self.assigned.pop().unwrap();
            self.inv[self.map[x]] = FREE;
            self.map[x] = FREE;
        }
    }

    /// Assigns `x ↦ y` and propagates; false on a contradiction.
    fn assign(&mut self, x: usize, y: usize) -> bool {
        if self.map[x] != FREE {
            return self.map[x] == y;
        }
        if self.inv[y] != FREE {
            return false;
        }
        self.map[x] = y;
        self.inv[y] = x;
        self.assigned.push(x);
        let mut head = self.assigned.len() - 1;
        while head < self.assigned.len() {
            let z = self.assigned[head];
            head += 1;
            let fz = self.map[z];
            for i in 0..head {
                let w = self.assigned[i];
                let fw = self.map[w];
                for (p, q) in [(self.l1.mul(z, w), self.l2.mul(fz, fw)), (self.l1.mul(w, z), self.l2.mul(fw, fz))] {
                    if self.map[p] == FREE {
                        if self.inv[q] != FREE {
                            return false;
                        }
                        self.map[p] = q;
                        self.inv[q] = p;
                        self.assigned.push(p);
                    } else if self.map[p] != q {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, depth: usize, nodes: &mut Nodes, visit: &mut dyn FnMut(&[usize]) -> bool) -> Exhaust {
        if depth == self.gens.len() {
            let image: Vec<usize> = self.gens.iter().map(|&g| self.map[g]).collect();
            let extended = extend_raw(self.l1, self.l2, self.gens, &image)
                .expect("generating sequence covers the square")
                .expect("closure yields a bijection");
            assert_eq!(extended.table, self.map, "cube extension disagrees with closure");
            return if visit(&self.map) { Exhaust::Stopped } else { Exhaust::Complete };
        }
        let g = self.gens[depth];
        let n = self.l1.order();
        let candidates: Vec<usize> = if self.map[g] != FREE { vec![self.map[g]] } else { (0..n).filter(|&y| self.inv[y] == FREE).collect() };
        let mut outcome = Exhaust::Complete;
        for y in candidates {
            if !nodes.tick() {
                return Exhaust::OutOfBudget;
            }
            let mark = self.assigned.len();
            if self.assign(g, y) {
                match self.run(depth + 1, nodes, visit) {
                    Exhaust::Complete => {}
                    other => outcome = other,
                }
            }
            self.undo(mark);
            if outcome != Exhaust::Complete {
                return outcome;
            }
        }
        outcome
    }
}

/// Calls `visit` on every isomorphism `L₁ → L₂`, in ascending order of the
/// generator images, until it returns true.
pub(crate) fn for_each_isomorphism(
    l1: &LatinSquare,
    l2: &LatinSquare,
    gens: &[usize],
    nodes: &mut Nodes,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> Exhaust {
    IsoSearch::new(l1, l2, gens).run(0, nodes, visit)
}

fn exhaust_verdict<W>(found: Option<W>, how: Exhaust) -> Verdict<W> {
    match (found, how) {
        (Some(w), _) => Verdict::Found(w),
        (None, Exhaust::OutOfBudget) => Verdict::Unknown,
        (None, _) => Verdict::Absent,
    }
}

fn generators(l: &LatinSquare, budget: &Budget) -> Result<Option<Vec<usize>>, IsotopyError> {
    match cube::find_cube_sequence(l, budget, cube::default_cap(l.order())) {
        Ok(s) => Ok(Some(s.elements().to_vec())),
        Err(CubeError::NotFound(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

/// Finds an isomorphism `φ` with `φ(xy) = φ(x)φ(y)`.
pub fn quasigroup_iso(l1: &LatinSquare, l2: &LatinSquare, budget: &Budget) -> Result<Verdict<Vec<usize>>, IsotopyError> {
    check_orders(l1, l2)?;
    if l1.order() == 0 {
        return Ok(Verdict::Found(Vec::new()));
    }
    let Some(gens) = generators(l1, budget)? else {
        return Ok(Verdict::Unknown);
    };
    let mut nodes = Nodes::new(budget.node_limit);
    Ok(quasigroup_iso_with(l1, l2, &gens, &mut nodes))
}

fn quasigroup_iso_with(l1: &LatinSquare, l2: &LatinSquare, gens: &[usize], nodes: &mut Nodes) -> Verdict<Vec<usize>> {
    let mut found = None;
    let how = for_each_isomorphism(l1, l2, gens, nodes, &mut |m| {
        found = Some(m.to_vec());
        true
    });
    if let Some(phi) = &found {
        assert!(l1.is_isomorphism(l2, phi), "unverified isomorphism");
    }
    exhaust_verdict(found, how)
}

/// The loop `u ∘ v = (u / y₀)·(x₀ \ v)` with identity `x₀·y₀`.
pub fn principal_loop(l: &LatinSquare, x0: usize, y0: usize) -> LatinSquare {
    let n = l.order();
    let right = l.right_division_table(y0);
    let left = l.left_division_table(x0);
    LatinSquare::from_cells_unchecked(n, (0..n * n).map(|i| l.mul(right[i / n], left[i % n])).collect())
}

/// Calls `visit` on every isotopy `L₁ → L₂` until it returns true.
///
/// Isotopies are produced by the cube method: for each target cell `(a, b)`
/// and each loop isomorphism `γ`, the row and column maps are
/// `α(x) = γ(x·y₀) / b` and `β(y) = a \ γ(x₀·y)` with `x₀ = y₀ = 0`, and the
/// symbol map is read off the relation `{(xy, α(x)β(y))}`.
pub(crate) fn for_each_isotopy(
    l1: &LatinSquare,
    l2: &LatinSquare,
    budget: &Budget,
    nodes: &mut Nodes,
    visit: &mut dyn FnMut(&Isotopy) -> bool,
) -> Result<Exhaust, IsotopyError> {
    check_orders(l1, l2)?;
    let n = l1.order();
    if n == 0 {
        return Ok(if visit(&Isotopy::identity(0)) { Exhaust::Stopped } else { Exhaust::Complete });
    }
    let p1 = principal_loop(l1, 0, 0);
    let Some(gens) = generators(&p1, budget)? else {
        return Ok(Exhaust::OutOfBudget);
    };
    let mut pairs = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let p2 = principal_loop(l2, a, b);
            let right_b = l2.right_division_table(b);
            let left_a = l2.left_division_table(a);
            let how = for_each_isomorphism(&p1, &p2, &gens, nodes, &mut |gamma| {
                let alpha: Vec<usize> = (0..n).map(|x| right_b[gamma[l1.mul(x, 0)]]).collect();
                let beta: Vec<usize> = (0..n).map(|y| left_a[gamma[l1.mul(0, y)]]).collect();
                pairs.clear();
                for x in 0..n {
                    for y in 0..n {
                        pairs.push((l1.mul(x, y), l2.mul(alpha[x], beta[y])));
                    }
                }
                if !is_bijection_relation(&pairs, n, n) {
                    return false;
                }
                let mut phi_c = vec![0; n];
                for &(p, q) in &pairs {
                    phi_c[p] = q;
                }
                let iso = Isotopy { alpha, beta, gamma: phi_c };
                assert!(iso.is_isotopy(l1, l2), "unverified isotopy");
                visit(&iso)
            });
            if how != Exhaust::Complete {
                return Ok(how);
            }
        }
    }
    Ok(Exhaust::Complete)
}

/// Isotopy test by cube generating sequences.
pub fn isotopy_cube(l1: &LatinSquare, l2: &LatinSquare, budget: &Budget) -> Result<Verdict<Isotopy>, IsotopyError> {
    let mut nodes = Nodes::new(budget.node_limit);
    isotopy_cube_with(l1, l2, budget, &mut nodes)
}

fn isotopy_cube_with(l1: &LatinSquare, l2: &LatinSquare, budget: &Budget, nodes: &mut Nodes) -> Result<Verdict<Isotopy>, IsotopyError> {
    let mut found = None;
    let how = for_each_isotopy(l1, l2, budget, nodes, &mut |iso| {
        found = Some(iso.clone());
        true
    })?;
    Ok(exhaust_verdict(found, how))
}

/// The normal form of `L` at cell `(r, c)` together with the isotopy
/// `L → N`. `N` has first row and first column `0, 1, …, n−1`; its row 0 is
/// row `r` of `L`, its column 0 is column `c`, and the remaining columns keep
/// their relative order.
pub fn normal_form(l: &LatinSquare, r: usize, c: usize) -> (LatinSquare, Isotopy) {
    let n = l.order();
    let mut cols = vec![c];
    cols.extend((0..n).filter(|&j| j != c));
    // τ sends the symbol in row r, column cols[j] to j.
    let mut tau = vec![0; n];
    for (j, &col) in cols.iter().enumerate() {
        tau[l.get(r, col)] = j;
    }
    // Row i of N is the row whose column-c entry maps to i.
    let mut rows = vec![0; n];
    for row in 0..n {
        rows[tau[l.get(row, c)]] = row;
    }
    let iso = Isotopy {
        alpha: perm::inverse(&rows),
        beta: perm::inverse(&cols),
        gamma: tau,
    };
    let nf = l.isotope(&iso);
    debug_assert!((0..n).all(|j| nf.get(0, j) == j && nf.get(j, 0) == j));
    (nf, iso)
}

/// Isotopy test through the `n²` normal forms of `L₂`.
pub fn isotopy_normal_form(l1: &LatinSquare, l2: &LatinSquare, budget: &Budget) -> Result<Verdict<Isotopy>, IsotopyError> {
    let mut nodes = Nodes::new(budget.node_limit);
    isotopy_normal_form_with(l1, l2, budget, &mut nodes)
}

fn isotopy_normal_form_with(l1: &LatinSquare, l2: &LatinSquare, budget: &Budget, nodes: &mut Nodes) -> Result<Verdict<Isotopy>, IsotopyError> {
    check_orders(l1, l2)?;
    let n = l1.order();
    if n == 0 {
        return Ok(Verdict::Found(Isotopy::identity(0)));
    }
    let (n1, iso1) = normal_form(l1, 0, 0);
    let Some(gens) = generators(&n1, budget)? else {
        return Ok(Verdict::Unknown);
    };
    let mut unknown = false;
    for r in 0..n {
        for c in 0..n {
            let (n2, iso2) = normal_form(l2, r, c);
            match quasigroup_iso_with(&n1, &n2, &gens, nodes) {
                Verdict::Found(phi) => {
                    let iso = iso1.then(&Isotopy::from_isomorphism(&phi)).then(&iso2.inverse());
                    assert!(iso.is_isotopy(l1, l2), "unverified isotopy");
                    return Ok(Verdict::Found(iso));
                }
                Verdict::Unknown => {
                    unknown = true;
                    break;
                }
                Verdict::Absent => {}
            }
        }
        if unknown {
            break;
        }
    }
    Ok(if unknown { Verdict::Unknown } else { Verdict::Absent })
}

/// Isotopy test with the chosen method.
pub fn isotopy(l1: &LatinSquare, l2: &LatinSquare, method: IsotopyMethod, budget: &Budget) -> Result<Verdict<Isotopy>, IsotopyError> {
    match method {
        IsotopyMethod::Cube => isotopy_cube(l1, l2, budget),
        IsotopyMethod::NormalForm => isotopy_normal_form(l1, l2, budget),
    }
}

/// Main-class test: is some conjugate of `L₁` isotopic to `L₂`?
///
/// Conjugates are tried in [`Conjugate::ALL`] order and the first match is
/// returned with its isotopy from that conjugate to `L₂`.
pub fn main_class_equivalent(
    l1: &LatinSquare,
    l2: &LatinSquare,
    method: IsotopyMethod,
    budget: &Budget,
) -> Result<Verdict<(Conjugate, Isotopy)>, IsotopyError> {
    check_orders(l1, l2)?;
    let mut nodes = Nodes::new(budget.node_limit);
    let mut unknown = false;
    for conj in Conjugate::ALL {
        let c1 = l1.conjugate(conj);
        let v = match method {
            IsotopyMethod::Cube => isotopy_cube_with(&c1, l2, budget, &mut nodes)?,
            IsotopyMethod::NormalForm => isotopy_normal_form_with(&c1, l2, budget, &mut nodes)?,
        };
        match v {
            Verdict::Found(iso) => return Ok(Verdict::Found((conj, iso))),
            Verdict::Unknown => unknown = true,
            Verdict::Absent => {}
        }
    }
    Ok(if unknown { Verdict::Unknown } else { Verdict::Absent })
}
