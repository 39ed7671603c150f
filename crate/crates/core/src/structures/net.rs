use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::LatinSquare;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NetError {
    #[error("degree {k} exceeds n + 1 = {}", n + 1)]
    DegreeTooLarge { n: usize, k: usize },
    #[error("class {class} has {lines} lines, expected {n}")]
    ClassSize { class: usize, lines: usize, n: usize },
    #[error("class {class} line {line} has {len} points, expected {n}")]
    LineSize { class: usize, line: usize, len: usize, n: usize },
    #[error("point {point} is outside 0..{points}")]
    PointOutOfRange { point: usize, points: usize },
    #[error("class {0} is not a partition of the points")]
    NotParallel(usize),
    #[error("lines from classes {0} and {1} do not meet in exactly one point")]
    BadIntersection(usize, usize),
    #[error("lines cannot be grouped into parallel classes")]
    NoClassStructure,
}

/// A net of order `n` and degree `k`: `n²` points and `k` parallel classes,
/// each a partition of the points into `n` lines of `n` points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Net {
    n: usize,
    k: usize,
    classes: Vec<Vec<Vec<usize>>>,
    /// `line_of[c][p]` is the index within class `c` of the line through `p`.
    line_of: Vec<Vec<usize>>,
}

impl Net {
    pub fn new(n: usize, mut classes: Vec<Vec<Vec<usize>>>) -> Result<Self, NetError> {
        let k = classes.len();
        let points = n * n;
        if k > n + 1 {
            return Err(NetError::DegreeTooLarge { n, k });
        }
        let mut line_of = vec![vec![usize::MAX; points]; k];
        for (ci, class) in classes.iter_mut().enumerate() {
            if class.len() != n {
                return Err(NetError::ClassSize { class: ci, lines: class.len(), n });
            }
            for (li, line) in class.iter_mut().enumerate() {
                if line.len() != n {
                    return Err(NetError::LineSize { class: ci, line: li, len: line.len(), n });
                }
                line.sort_unstable();
                for &p in line.iter() {
                    if p >= points {
                        return Err(NetError::PointOutOfRange { point: p, points });
                    }
                    if line_of[ci][p] != usize::MAX {
                        return Err(NetError::NotParallel(ci));
                    }
                    line_of[ci][p] = li;
                }
            }
        }
        // Each class covers n·n distinct points, so it partitions them.
        for a in 0..k {
            for b in a + 1..k {
                let mut seen = vec![false; n * n];
                for p in 0..points {
                    let key = line_of[a][p] * n + line_of[b][p];
                    if seen[key] {
                        return Err(NetError::BadIntersection(a, b));
                    }
                    seen[key] = true;
                }
            }
        }
        Ok(Net { n, k, classes, line_of })
    }

    /// Recovers the class structure from a bare line list: two lines are
    /// classmates iff they are disjoint.
    pub fn from_lines(n: usize, lines: Vec<Vec<usize>>) -> Result<Self, NetError> {
        let sets: Vec<BTreeSet<usize>> = lines.iter().map(|l| l.iter().copied().collect()).collect();
        let m = lines.len();
        let mut class_of = vec![usize::MAX; m];
        let mut classes: Vec<Vec<Vec<usize>>> = Vec::new();
        for i in 0..m {
            if class_of[i] != usize::MAX {
                continue;
            }
            let c = classes.len();
            let mut members = vec![i];
            class_of[i] = c;
            let mut head = 0;
            while head < members.len() {
                let a = members[head];
                head += 1;
                for b in 0..m {
                    if class_of[b] == usize::MAX && sets[a].is_disjoint(&sets[b]) {
                        class_of[b] = c;
                        members.push(b);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members.into_iter().map(|i| lines[i].clone()).collect());
        }
        for class in &classes {
            for (i, a) in class.iter().enumerate() {
                for b in &class[i + 1..] {
                    if a.iter().any(|p| b.contains(p)) {
                        return Err(NetError::NoClassStructure);
                    }
                }
            }
        }
        Net::new(n, classes)
    }

    /// The degree-3 net of rows, columns and symbols; point `r·n + c` is cell `(r, c)`.
    pub fn from_latin_square(l: &LatinSquare) -> Net {
        let n = l.order();
        let rows = (0..n).map(|r| (0..n).map(|c| r * n + c).collect()).collect();
        let cols = (0..n).map(|c| (0..n).map(|r| r * n + c).collect()).collect();
        let mut syms = vec![Vec::new(); n];
        for r in 0..n {
            for c in 0..n {
                syms[l.get(r, c)].push(r * n + c);
            }
        }
        Net::new(n, vec![rows, cols, syms]).expect("a Latin square yields a 3-net")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn point_count(&self) -> usize {
        self.n * self.n
    }

    pub fn classes(&self) -> &[Vec<Vec<usize>>] {
        &self.classes
    }

    pub fn line_of(&self, class: usize, point: usize) -> usize {
        self.line_of[class][point]
    }

    /// All lines with their class id, class by class.
    pub fn lines(&self) -> impl Iterator<Item = (usize, &[usize])> {
        self.classes.iter().enumerate().flat_map(|(c, cl)| cl.iter().map(move |l| (c, l.as_slice())))
    }

    /// Latin square of three distinct classes: rows are lines of `classes[0]`,
    /// columns lines of `classes[1]`, and the symbol is the `classes[2]` line
    /// through their intersection. Also returns the intersection point table.
    pub fn latin_square(&self, classes: [usize; 3]) -> (LatinSquare, Vec<usize>) {
        let n = self.n;
        let [a, b, c] = classes;
        let mut point_at = vec![0; n * n];
        for p in 0..n * n {
            point_at[self.line_of[a][p] * n + self.line_of[b][p]] = p;
        }
        let cells = point_at.iter().map(|&p| self.line_of[c][p]).collect();
        (LatinSquare::from_cells_unchecked(n, cells), point_at)
    }

    /// The net with point `p` renamed to `map[p]`.
    pub fn relabeled(&self, map: &[usize]) -> Net {
        let classes = self
            .classes
            .iter()
            .map(|cl| cl.iter().map(|l| l.iter().map(|&p| map[p]).collect()).collect())
            .collect();
        Net::new(self.n, classes).expect("relabeling preserves the net axioms")
    }

    /// True iff `map` is a point bijection carrying lines onto lines.
    pub fn is_isomorphism(&self, other: &Net, map: &[usize]) -> bool {
        if (self.n, self.k) != (other.n, other.k) || map.len() != self.point_count() || !crate::perm::is_permutation(map) {
            return false;
        }
        let targets: BTreeSet<Vec<usize>> = other.lines().map(|(_, l)| l.to_vec()).collect();
        self.lines().all(|(_, l)| {
            let mut img: Vec<usize> = l.iter().map(|&p| map[p]).collect();
            img.sort_unstable();
            targets.contains(&img)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn latin_square_net_round_trips() {
        let l = LatinSquare::cyclic(4);
        let net = Net::from_latin_square(&l);
        assert_eq!((net.order(), net.degree()), (4, 3));
        let (back, point_at) = net.latin_square([0, 1, 2]);
        assert_eq!(back, l);
        assert_eq!(point_at, (0..16).collect::<Vec<_>>());
    }

    #[test]
    fn recovers_classes_from_shuffled_lines() {
        let net = Net::from_latin_square(&LatinSquare::cyclic(3));
        let mut lines: Vec<Vec<usize>> = net.lines().map(|(_, l)| l.to_vec()).collect();
        lines.reverse();
        let back = Net::from_lines(3, lines).unwrap();
        let all: BTreeSet<Vec<usize>> = back.lines().map(|(_, l)| l.to_vec()).collect();
        let orig: BTreeSet<Vec<usize>> = net.lines().map(|(_, l)| l.to_vec()).collect();
        assert_eq!(all, orig);
        assert_eq!(back.degree(), 3);
    }

    #[test]
    fn rejects_broken_nets() {
        let rows: Vec<Vec<usize>> = vec![vec![0, 1], vec![2, 3]];
        assert!(matches!(Net::new(2, vec![rows.clone(), rows.clone()]), Err(NetError::BadIntersection(0, 1))));
        assert!(matches!(
            Net::new(2, vec![vec![vec![0, 1], vec![1, 3]]]),
            Err(NetError::NotParallel(0))
        ));
        assert!(matches!(
            Net::new(1, vec![vec![vec![0]]; 3]),
            Err(NetError::DegreeTooLarge { .. })
        ));
    }
}
