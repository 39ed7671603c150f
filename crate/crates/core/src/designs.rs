//! Steiner designs as quasigroups, derived designs, and isomorphism tests
//! for Steiner `(t, t+1)`-designs and nets.

use alloc::vec;
use alloc::vec::Vec;

use crate::isotopy::{for_each_isomorphism, for_each_isotopy, quasigroup_iso, IsotopyError};
use crate::search::{Budget, Exhaust, Nodes, Verdict};
use crate::cube;
use crate::structures::DesignError;
use crate::{LatinSquare, Net, SteinerDesign};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DesignsError {
    #[error("design is not a Steiner triple system")]
    NotSts,
    #[error("designs have different parameters")]
    SizeMismatch,
    #[error("subset of size {size} is not smaller than t = {t}")]
    TooLarge { size: usize, t: usize },
    #[error("point {0} is out of range or repeated")]
    PointOutOfRange(usize),
    #[error("derived design has block size {0}; only 3 is supported")]
    UnsupportedDerivedBlockSize(usize),
    #[error("nets have different order or degree")]
    ParamMismatch,
    #[error("net is not an affine plane (need k = n + 1)")]
    NotAffinePlane,
    #[error("design is not a projective plane")]
    NotProjectivePlane,
    #[error("block index {0} is out of range")]
    NoSuchBlock(usize),
    #[error(transparent)]
    Isotopy(#[from] IsotopyError),
    #[error(transparent)]
    Design(#[from] DesignError),
}

/// The idempotent commutative quasigroup of an STS: `x·x = x` and
/// `a·b = c` for every block `{a, b, c}`.
pub fn sts_to_quasigroup(d: &SteinerDesign) -> Result<LatinSquare, DesignsError> {
    if !d.is_sts() {
        return Err(DesignsError::NotSts);
    }
    let v = d.points();
    let mut cells = vec![0; v * v];
    for x in 0..v {
        cells[x * v + x] = x;
    }
    for b in d.blocks() {
        let [a, b, c] = [b[0], b[1], b[2]];
        for (x, y, z) in [(a, b, c), (b, c, a), (a, c, b)] {
            cells[x * v + y] = z;
            cells[y * v + x] = z;
        }
    }
    Ok(LatinSquare::from_cells(v, cells).expect("an STS defines a quasigroup"))
}

/// Point isomorphism between two Steiner triple systems.
///
/// Isomorphisms of the systems are exactly the isomorphisms of their
/// quasigroups, so the verdict of the quasigroup search carries over.
pub fn sts_iso(d1: &SteinerDesign, d2: &SteinerDesign, budget: &Budget) -> Result<Verdict<Vec<usize>>, DesignsError> {
    if !d1.is_sts() || !d2.is_sts() {
        return Err(DesignsError::NotSts);
    }
    if d1.points() != d2.points() {
        return Err(DesignsError::SizeMismatch);
    }
    let q1 = sts_to_quasigroup(d1)?;
    let q2 = sts_to_quasigroup(d2)?;
    let v = quasigroup_iso(&q1, &q2, budget)?;
    if let Verdict::Found(phi) = &v {
        assert!(d1.is_isomorphism(d2, phi), "unverified design isomorphism");
    }
    Ok(v)
}

/// A derived design with its point renumbering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derived {
    pub design: SteinerDesign,
    /// `original[i]` is the old index of new point `i`.
    pub original: Vec<usize>,
}

/// The design on `X ∖ A` with blocks `{B ∖ A : A ⊊ B}`, a Steiner
/// `(t−|A|, k−|A|, v−|A|)`-design. Remaining points are renumbered in
/// ascending order of their old index.
pub fn derived_design(d: &SteinerDesign, subset: &[usize]) -> Result<Derived, DesignsError> {
    let t = d.strength();
    if subset.len() >= t {
        return Err(DesignsError::TooLarge { size: subset.len(), t });
    }
    let mut removed = vec![false; d.points()];
    for &p in subset {
        if p >= d.points() || removed[p] {
            return Err(DesignsError::PointOutOfRange(p));
        }
        removed[p] = true;
    }
    let original: Vec<usize> = (0..d.points()).filter(|&p| !removed[p]).collect();
    let mut renumber = vec![usize::MAX; d.points()];
    for (i, &p) in original.iter().enumerate() {
        renumber[p] = i;
    }
    let blocks = d
        .blocks()
        .iter()
        .filter(|b| subset.iter().all(|p| b.binary_search(p).is_ok()))
        .map(|b| b.iter().filter(|&&p| !removed[p]).map(|&p| renumber[p]).collect())
        .collect();
    let s = subset.len();
    let design = SteinerDesign::new(original.len(), t - s, d.block_size() - s, blocks)?;
    Ok(Derived { design, original })
}

/// Isomorphism of Steiner `(t, t+1)`-designs by reduction to triple systems.
///
/// The first `t − 2` points of `d₁` form `A`. For each ordered `(t−2)`-tuple
/// `B` of `d₂`, every isomorphism `ψ` of the derived triple systems is lifted
/// to `ψ̂` (which also sends `A` to `B` pointwise) and checked on all blocks.
pub fn steiner_t_iso(d1: &SteinerDesign, d2: &SteinerDesign, budget: &Budget) -> Result<Verdict<Vec<usize>>, DesignsError> {
    let (v, t, k) = (d1.points(), d1.strength(), d1.block_size());
    if (d2.points(), d2.strength(), d2.block_size()) != (v, t, k) {
        return Err(DesignsError::SizeMismatch);
    }
    if t < 2 || k != t + 1 {
        return Err(DesignsError::UnsupportedDerivedBlockSize(k + 2 - t.min(k + 2)));
    }
    let a: Vec<usize> = (0..t - 2).collect();
    let da = derived_design(d1, &a)?;
    let q1 = sts_to_quasigroup(&da.design)?;
    let gens = match cube::find_cube_sequence(&q1, budget, cube::default_cap(q1.order())) {
        Ok(s) => s.elements().to_vec(),
        Err(cube::CubeError::NotFound(_)) => return Ok(Verdict::Unknown),
        Err(e) => return Err(IsotopyError::from(e).into()),
    };
    let mut nodes = Nodes::new(budget.node_limit);
    let mut b = vec![0usize; t - 2];
    let mut found = None;
    loop {
        let distinct = b.iter().enumerate().all(|(i, x)| !b[..i].contains(x));
        if distinct {
            let db = derived_design(d2, &b)?;
            let q2 = sts_to_quasigroup(&db.design)?;
            let how = for_each_isomorphism(&q1, &q2, &gens, &mut nodes, &mut |psi| {
                let mut lift = vec![0; v];
                for (i, &p) in a.iter().enumerate() {
                    lift[p] = b[i];
                }
                for (i, &p) in da.original.iter().enumerate() {
                    lift[p] = db.original[psi[i]];
                }
                if d1.is_isomorphism(d2, &lift) {
                    found = Some(lift);
                    true
                } else {
                    false
                }
            });
            match how {
                Exhaust::Stopped => break,
                Exhaust::OutOfBudget => return Ok(Verdict::Unknown),
                Exhaust::Complete => {}
            }
        }
        if !cube::next_tuple(&mut b, v) {
            break;
        }
    }
    Ok(found.map_or(Verdict::Absent, Verdict::Found))
}

/// Point isomorphism between nets.
///
/// Degrees up to 2 are decided by the parameters alone. Otherwise classes
/// 0, 1, 2 of the first net form a Latin square; every ordered class triple
/// of the second net gives another, and each isotopy between them induces a
/// point map that is accepted iff it sends all lines to lines.
pub fn net_iso(n1: &Net, n2: &Net, budget: &Budget) -> Result<Verdict<Vec<usize>>, DesignsError> {
    let (n, k) = (n1.order(), n1.degree());
    if (n2.order(), n2.degree()) != (n, k) {
        return Err(DesignsError::ParamMismatch);
    }
    let points = n * n;
    if k <= 2 {
        let map: Vec<usize> = match k {
            0 => (0..points).collect(),
            1 => {
                let mut map = vec![0; points];
                for (l1, l2) in n1.classes()[0].iter().zip(&n2.classes()[0]) {
                    for (&p, &q) in l1.iter().zip(l2) {
                        map[p] = q;
                    }
                }
                map
            }
            _ => {
                let mut at = vec![0; points];
                for q in 0..points {
                    at[n2.line_of(0, q) * n + n2.line_of(1, q)] = q;
                }
                (0..points).map(|p| at[n1.line_of(0, p) * n + n1.line_of(1, p)]).collect()
            }
        };
        assert!(n1.is_isomorphism(n2, &map));
        return Ok(Verdict::Found(map));
    }
    let (l1, _) = n1.latin_square([0, 1, 2]);
    let mut nodes = Nodes::new(budget.node_limit);
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                if a == b || b == c || a == c {
                    continue;
                }
                let (l2, at2) = n2.latin_square([a, b, c]);
                let mut found = None;
                let how = for_each_isotopy(&l1, &l2, budget, &mut nodes, &mut |iso| {
                    let map: Vec<usize> = (0..points)
                        .map(|p| at2[iso.alpha[n1.line_of(0, p)] * n + iso.beta[n1.line_of(1, p)]])
                        .collect();
                    if n1.is_isomorphism(n2, &map) {
                        found = Some(map);
                        true
                    } else {
                        false
                    }
                })?;
                match how {
                    Exhaust::Stopped => return Ok(found.map_or(Verdict::Unknown, Verdict::Found)),
                    Exhaust::OutOfBudget => return Ok(Verdict::Unknown),
                    Exhaust::Complete => {}
                }
            }
        }
    }
    Ok(Verdict::Absent)
}

/// Projective completion of an affine plane: point `n² + i` is added to
/// every line of class `i`, and those `n + 1` points form the new line.
pub fn affine_to_projective(net: &Net) -> Result<SteinerDesign, DesignsError> {
    let n = net.order();
    if net.degree() != n + 1 || n < 2 {
        return Err(DesignsError::NotAffinePlane);
    }
    let base = n * n;
    let mut blocks: Vec<Vec<usize>> = net
        .lines()
        .map(|(c, l)| {
            let mut b = l.to_vec();
            b.push(base + c);
            b
        })
        .collect();
    blocks.push((base..base + n + 1).collect());
    Ok(SteinerDesign::new(base + n + 1, 2, n + 1, blocks)?)
}

/// Removes block `line` and its points from a projective plane. The
/// remaining points are renumbered ascending; the lines through each
/// removed point form one parallel class, in the order of the removed points.
pub fn projective_to_affine(d: &SteinerDesign, line: usize) -> Result<Net, DesignsError> {
    let k = d.block_size();
    if d.strength() != 2 || k < 3 {
        return Err(DesignsError::NotProjectivePlane);
    }
    let q = k - 1;
    if d.points() != q * q + q + 1 {
        return Err(DesignsError::NotProjectivePlane);
    }
    let removed = d.blocks().get(line).ok_or(DesignsError::NoSuchBlock(line))?.clone();
    let mut renumber = vec![usize::MAX; d.points()];
    let mut next = 0;
    for (p, slot) in renumber.iter_mut().enumerate() {
        if removed.binary_search(&p).is_err() {
            *slot = next;
            next += 1;
        }
    }
    let classes = removed
        .iter()
        .map(|&p| {
            d.blocks_through(p)
                .into_iter()
                .filter(|&bi| bi != line)
                .map(|bi| d.blocks()[bi].iter().filter(|&&x| x != p).map(|&x| renumber[x]).collect())
                .collect()
        })
        .collect();
    Net::new(q, classes).map_err(|_| DesignsError::NotProjectivePlane)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{gen, oracle, perm};
    use rand::SeedableRng;

    #[test]
    fn sts_quasigroups() {
        let q3 = sts_to_quasigroup(&gen::sts(3).unwrap()).unwrap();
        assert_eq!(q3.cells(), [0, 2, 1, 2, 1, 0, 1, 0, 2]);
        for d in [gen::fano(), gen::sts(9).unwrap(), gen::sts(13).unwrap()] {
            let q = sts_to_quasigroup(&d).unwrap();
            assert!(q.is_idempotent() && q.is_commutative());
        }
        assert_eq!(sts_to_quasigroup(&gen::s348()), Err(DesignsError::NotSts));
    }

    #[test]
    fn sts_isomorphisms() {
        let fano = gen::fano();
        assert!(sts_iso(&fano, &fano, &Budget::default()).unwrap().is_found());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let pi = perm::random_permutation(7, &mut rng);
        let img = fano.relabeled(&pi);
        let w = sts_iso(&fano, &img, &Budget::default()).unwrap().into_witness().unwrap();
        assert!(fano.is_isomorphism(&img, &w));
        assert!(fano.is_isomorphism(&img, &pi));
        let c13 = gen::cyclic_sts13();
        let s13 = gen::pasch_switch(&c13).unwrap();
        assert!(sts_iso(&c13, &s13, &Budget::default()).unwrap().is_absent());
        assert!(sts_iso(&gen::fano(), &gen::sts(7).unwrap(), &Budget::default()).unwrap().is_found());
    }

    #[test]
    fn derived_designs() {
        let fano = gen::fano();
        assert_eq!(derived_design(&fano, &[]).unwrap().design, fano);
        let m = derived_design(&fano, &[0]).unwrap();
        assert_eq!((m.design.strength(), m.design.block_size(), m.design.points()), (1, 2, 6));
        assert_eq!(m.design.blocks().len(), 3);
        assert_eq!(m.original, [1, 2, 3, 4, 5, 6]);
        let s = gen::s348();
        for p in 0..8 {
            let d = derived_design(&s, &[p]).unwrap().design;
            assert!(sts_iso(&d, &fano, &Budget::default()).unwrap().is_found());
        }
        assert!(matches!(derived_design(&fano, &[0, 1]), Err(DesignsError::TooLarge { .. })));
        assert!(matches!(derived_design(&fano, &[9]), Err(DesignsError::PointOutOfRange(9))));
    }

    #[test]
    fn t_design_isomorphisms() {
        let s = gen::s348();
        assert!(steiner_t_iso(&s, &s, &Budget::default()).unwrap().is_found());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        for _ in 0..3 {
            let pi = perm::random_permutation(8, &mut rng);
            let img = s.relabeled(&pi);
            let w = steiner_t_iso(&s, &img, &Budget::default()).unwrap().into_witness().unwrap();
            assert!(s.is_isomorphism(&img, &w));
        }
        let fano = gen::fano();
        assert!(steiner_t_iso(&fano, &fano, &Budget::default()).unwrap().is_found());
        let c13 = gen::cyclic_sts13();
        assert!(steiner_t_iso(&c13, &gen::pasch_switch(&c13).unwrap(), &Budget::default()).unwrap().is_absent());
    }

    #[test]
    fn net_isomorphisms() {
        let z3 = Net::from_latin_square(&LatinSquare::cyclic(3));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let pi = perm::random_permutation(9, &mut rng);
        let img = z3.relabeled(&pi);
        let w = net_iso(&z3, &img, &Budget::default()).unwrap().into_witness().unwrap();
        assert!(z3.is_isomorphism(&img, &w));

        let z4 = Net::from_latin_square(&LatinSquare::cyclic(4));
        let v4 = Net::from_latin_square(&gen::group_square("Z2xZ2").unwrap());
        assert!(net_iso(&z4, &v4, &Budget::default()).unwrap().is_absent());

        let one = |n: usize| Net::new(n, vec![gen::affine_plane(5).unwrap().classes()[0].clone()]).unwrap();
        assert!(net_iso(&one(5), &one(5), &Budget::default()).unwrap().is_found());

        let ag5 = gen::affine_plane(5).unwrap();
        let pi = perm::random_permutation(25, &mut rng);
        assert!(net_iso(&ag5, &ag5.relabeled(&pi), &Budget::default()).unwrap().is_found());
    }

    #[test]
    fn net_iso_matches_point_brute_force() {
        // Nets of order 3 as designs: lines of three classes, compared with
        // the design oracle on the 9 points.
        for a in gen::all_latin_squares(3).unwrap().iter().step_by(5) {
            for b in gen::all_latin_squares(3).unwrap().iter().step_by(4) {
                let (na, nb) = (Net::from_latin_square(a), Net::from_latin_square(b));
                let fast = net_iso(&na, &nb, &Budget::default()).unwrap();
                let brute = net_brute(&na, &nb);
                assert_eq!(fast.is_found(), brute);
            }
        }
    }

    fn net_brute(a: &Net, b: &Net) -> bool {
        let mut p: Vec<usize> = (0..9).collect();
        loop {
            if a.is_isomorphism(b, &p) {
                return true;
            }
            if !perm::next_permutation(&mut p) {
                return false;
            }
        }
    }

    #[test]
    fn planes() {
        let ag2 = gen::affine_plane(2).unwrap();
        let fano_like = affine_to_projective(&ag2).unwrap();
        assert!(sts_iso(&fano_like, &gen::fano(), &Budget::default()).unwrap().is_found());
        let ag3 = gen::affine_plane(3).unwrap();
        let pg = affine_to_projective(&ag3).unwrap();
        assert_eq!((pg.points(), pg.blocks().len(), pg.block_size()), (13, 13, 4));
        let new_line = pg.blocks().iter().position(|b| *b == [9, 10, 11, 12]).unwrap();
        let back = projective_to_affine(&pg, new_line).unwrap();
        assert!(net_iso(&ag3, &back, &Budget::default()).unwrap().is_found());
        assert!(oracle::design_iso_brute(&pg, &pg).unwrap().is_some());
        assert_eq!(affine_to_projective(&Net::from_latin_square(&LatinSquare::cyclic(4))), Err(DesignsError::NotAffinePlane));
        assert_eq!(projective_to_affine(&gen::sts(9).unwrap(), 0), Err(DesignsError::NotProjectivePlane));
    }
}
