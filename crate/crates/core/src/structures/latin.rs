use alloc::vec;
use alloc::vec::Vec;

use crate::perm;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatinError {
    #[error("table is not square")]
    NotSquare,
    #[error("symbol {symbol} at ({row}, {col}) is outside 0..{order}")]
    SymbolOutOfRange {
        row: usize,
        col: usize,
        symbol: usize,
        order: usize,
    },
    #[error("row {0} repeats a symbol")]
    RowRepeats(usize),
    #[error("column {0} repeats a symbol")]
    ColumnRepeats(usize),
}

/// The multiplication table of a finite quasigroup.
///
/// Row `r`, column `c` holds the product `r·c`. Every row and every column
/// is a permutation of `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatinSquare {
    n: usize,
    cells: Vec<usize>,
}

/// Validates an `n × n` table and wraps it as a [`LatinSquare`].
pub fn validate_latin_square<R: AsRef<[usize]>>(rows: &[R]) -> Result<LatinSquare, LatinError> {
    let n = rows.len();
    let mut cells = Vec::with_capacity(n * n);
    for row in rows {
        let row = row.as_ref();
        if row.len() != n {
            return Err(LatinError::NotSquare);
        }
        cells.extend_from_slice(row);
    }
    LatinSquare::from_cells(n, cells)
}

impl LatinSquare {
    /// Builds a square from row-major cells, validating the Latin property.
    pub fn from_cells(n: usize, cells: Vec<usize>) -> Result<Self, LatinError> {
        if cells.len() != n * n {
            return Err(LatinError::NotSquare);
        }
        for (i, &s) in cells.iter().enumerate() {
            if s >= n {
                return Err(LatinError::SymbolOutOfRange {
                    row: i / n,
                    col: i % n,
                    symbol: s,
                    order: n,
                });
            }
        }
        let mut seen = vec![false; n];
        for r in 0..n {
            seen.fill(false);
            for c in 0..n {
                let s = cells[r * n + c];
                if seen[s] {
                    return Err(LatinError::RowRepeats(r));
                }
                seen[s] = true;
            }
        }
        for c in 0..n {
            seen.fill(false);
            for r in 0..n {
                let s = cells[r * n + c];
                if seen[s] {
                    return Err(LatinError::ColumnRepeats(c));
                }
                seen[s] = true;
            }
        }
        Ok(LatinSquare { n, cells })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self, LatinError> {
        let cells = (0..n * n).map(|i| f(i / n, i % n)).collect();
        Self::from_cells(n, cells)
    }

    /// Caller guarantees the Latin property.
    pub(crate) fn from_cells_unchecked(n: usize, cells: Vec<usize>) -> Self {
        debug_assert!(Self::from_cells(n, cells.clone()).is_ok());
        LatinSquare { n, cells }
    }

    /// The table of `Z_n`: `r·c = (r + c) mod n`.
    pub fn cyclic(n: usize) -> Self {
        Self::from_cells_unchecked(n, (0..n * n).map(|i| (i / n + i % n) % n).collect())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> usize {
        self.cells[r * self.n + c]
    }

    /// Quasigroup product `a·b`.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cells[a * self.n + b]
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn row(&self, r: usize) -> &[usize] {
        &self.cells[r * self.n..(r + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[usize]> {
        self.cells.chunks(self.n.max(1)).take(self.n)
    }

    /// For fixed `a`, the map `c ↦ x` with `a·x = c`.
    pub fn left_division_table(&self, a: usize) -> Vec<usize> {
        let mut inv = vec![0; self.n];
        for x in 0..self.n {
            inv[self.mul(a, x)] = x;
        }
        inv
    }

    /// For fixed `b`, the map `c ↦ x` with `x·b = c`.
    pub fn right_division_table(&self, b: usize) -> Vec<usize> {
        let mut inv = vec![0; self.n];
        for x in 0..self.n {
            inv[self.mul(x, b)] = x;
        }
        inv
    }

    pub fn transpose(&self) -> Self {
        Self::from_cells_unchecked(self.n, (0..self.n * self.n).map(|i| self.get(i % self.n, i / self.n)).collect())
    }

    /// Applies the role permutation to every triple `(r, c, L[r][c])`.
    pub fn conjugate(&self, conj: Conjugate) -> Self {
        let n = self.n;
        let mut cells = vec![0; n * n];
        for r in 0..n {
            for c in 0..n {
                let t = [r, c, self.get(r, c)];
                let [a, b, s] = conj.apply(t);
                cells[a * n + b] = s;
            }
        }
        Self::from_cells_unchecked(n, cells)
    }

    /// The square `L'` with `L'[α(r)][β(c)] = γ(L[r][c])`.
    pub fn isotope(&self, iso: &Isotopy) -> Self {
        let n = self.n;
        let mut cells = vec![0; n * n];
        for r in 0..n {
            for c in 0..n {
                cells[iso.alpha[r] * n + iso.beta[c]] = iso.gamma[self.get(r, c)];
            }
        }
        Self::from_cells_unchecked(n, cells)
    }

    pub fn is_idempotent(&self) -> bool {
        (0..self.n).all(|x| self.mul(x, x) == x)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|x| (0..x).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn is_associative(&self) -> bool {
        let n = self.n;
        (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))))
        })
    }

    /// True iff `phi` is an isomorphism onto `other`: `φ(xy) = φ(x)φ(y)`.
    pub fn is_isomorphism(&self, other: &LatinSquare, phi: &[usize]) -> bool {
        self.n == other.n
            && phi.len() == self.n
            && perm::is_permutation(phi)
            && (0..self.n).all(|x| (0..self.n).all(|y| phi[self.mul(x, y)] == other.mul(phi[x], phi[y])))
    }
}

/// One of the six role permutations of (row, column, symbol).
///
/// `Conjugate([i, j, k])` sends the triple `t` to `(t[i], t[j], t[k])`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Conjugate(pub [usize; 3]);

impl Conjugate {
    pub const IDENTITY: Conjugate = Conjugate([0, 1, 2]);
    pub const TRANSPOSE: Conjugate = Conjugate([1, 0, 2]);
    pub const ALL: [Conjugate; 6] = [
        Conjugate([0, 1, 2]),
        Conjugate([1, 0, 2]),
        Conjugate([0, 2, 1]),
        Conjugate([2, 1, 0]),
        Conjugate([1, 2, 0]),
        Conjugate([2, 0, 1]),
    ];

    pub fn apply(self, t: [usize; 3]) -> [usize; 3] {
        [t[self.0[0]], t[self.0[1]], t[self.0[2]]]
    }
}

impl core::fmt::Display for Conjugate {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        const ROLE: [char; 3] = ['r', 'c', 's'];
        write!(f, "({},{},{})", ROLE[self.0[0]], ROLE[self.0[1]], ROLE[self.0[2]])
    }
}

/// A triple of bijections `(α, β, γ)` between the symbol sets of two squares.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Isotopy {
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
    pub gamma: Vec<usize>,
}

impl Isotopy {
    pub fn identity(n: usize) -> Self {
        Isotopy {
            alpha: perm::identity(n),
            beta: perm::identity(n),
            gamma: perm::identity(n),
        }
    }

    /// An isomorphism `φ` viewed as the isotopy `(φ, φ, φ)`.
    pub fn from_isomorphism(phi: &[usize]) -> Self {
        Isotopy {
            alpha: phi.to_vec(),
            beta: phi.to_vec(),
            gamma: phi.to_vec(),
        }
    }

    /// Componentwise bijections and `α(a)β(b) = γ(ab)` for all `a, b`.
    pub fn is_isotopy(&self, l1: &LatinSquare, l2: &LatinSquare) -> bool {
        let n = l1.order();
        if l2.order() != n || [&self.alpha, &self.beta, &self.gamma].iter().any(|p| p.len() != n || !perm::is_permutation(p)) {
            return false;
        }
        (0..n).all(|a| (0..n).all(|b| l2.mul(self.alpha[a], self.beta[b]) == self.gamma[l1.mul(a, b)]))
    }

    /// `then ∘ self`: first `self`, then `then`.
    pub fn then(&self, then: &Isotopy) -> Isotopy {
        Isotopy {
            alpha: perm::compose(&then.alpha, &self.alpha),
            beta: perm::compose(&then.beta, &self.beta),
            gamma: perm::compose(&then.gamma, &self.gamma),
        }
    }

    pub fn inverse(&self) -> Isotopy {
        Isotopy {
            alpha: perm::inverse(&self.alpha),
            beta: perm::inverse(&self.beta),
            gamma: perm::inverse(&self.gamma),
        }
    }
}
