//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Runs without the libtest harness so the lines always
//! reach stdout.

use std::collections::BTreeSet;
use std::sync::Mutex;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use isokit_core::cube::{ceil_log2, cube_eval, cube_set, extend_cube_map, find_cube_sequence, length_budget, CubeSequence};
use isokit_core::designs::{derived_design, net_iso, steiner_t_iso, sts_iso, sts_to_quasigroup};
use isokit_core::isotopy::{isotopy, isotopy_cube, isotopy_normal_form, main_class_equivalent, quasigroup_iso, IsotopyMethod};
use isokit_core::oracle::{self, DESIGN_LIMIT, GRAPH_LIMIT, ISOTOPY_LIMIT};
use isokit_core::recover::{block_graph, latin_square_graph, net_graph, recover_latin_square, recover_net, recover_steiner2};
use isokit_core::refine::{
    color_refine, conference_iso, conference_iso_with, default_target, find_distinguishing_set, is_distinguishing, Coloring,
    ConferenceOptions, Rounds,
};
use isokit_core::structures::{srg_check, Conjugate, SrgParams};
use isokit_core::{gen, perm, Budget, Graph, Isotopy, LatinSquare, Net, SteinerDesign, Verdict};

/// A fast-path verdict small enough for an oracle to replay.
enum Claim {
    Isotopic(LatinSquare, LatinSquare, bool),
    MainClass(LatinSquare, LatinSquare, bool),
    GraphIso(Graph, Graph, bool),
    DesignIso(SteinerDesign, SteinerDesign, bool),
}

#[derive(Default)]
struct Ledger {
    claims: Mutex<Vec<(u8, Claim)>>,
}

impl Ledger {
    fn isotopic(&self, from: u8, a: &LatinSquare, b: &LatinSquare, yes: bool) {
        if a.order() <= ISOTOPY_LIMIT {
            self.push(from, Claim::Isotopic(a.clone(), b.clone(), yes));
        }
    }

    fn main_class(&self, from: u8, a: &LatinSquare, b: &LatinSquare, yes: bool) {
        if a.order() <= ISOTOPY_LIMIT {
            self.push(from, Claim::MainClass(a.clone(), b.clone(), yes));
        }
    }

    fn graph(&self, from: u8, a: &Graph, b: &Graph, yes: bool) {
        if a.order() <= GRAPH_LIMIT {
            self.push(from, Claim::GraphIso(a.clone(), b.clone(), yes));
        }
    }

    fn design(&self, from: u8, a: &SteinerDesign, b: &SteinerDesign, yes: bool) {
        if a.points() <= DESIGN_LIMIT {
            self.push(from, Claim::DesignIso(a.clone(), b.clone(), yes));
        }
    }

    fn push(&self, from: u8, c: Claim) {
        self.claims.lock().unwrap().push((from, c));
    }
}

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn decided<W>(v: &Verdict<W>) -> Option<bool> {
    match v {
        Verdict::Found(_) => Some(true),
        Verdict::Absent => Some(false),
        Verdict::Unknown => None,
    }
}

fn isotopy_completeness(ledger: &Ledger) -> Outcome {
    let mut pairs: Vec<(LatinSquare, LatinSquare)> = Vec::new();
    for n in 1..=3 {
        let all = gen::all_latin_squares(n).map_err(|e| e.to_string())?;
        for a in &all {
            for b in &all {
                pairs.push((a.clone(), b.clone()));
            }
        }
    }
    let four = gen::all_latin_squares(4).map_err(|e| e.to_string())?;
    let mut r = rng(1);
    let mut chosen = BTreeSet::new();
    while pairs.len() + chosen.len() < 5000 {
        chosen.insert((r.gen_range(0..four.len()), r.gen_range(0..four.len())));
    }
    pairs.extend(chosen.into_iter().map(|(i, j)| (four[i].clone(), four[j].clone())));

    let budget = Budget::default();
    let results: Vec<Result<bool, String>> = pairs
        .par_iter()
        .map(|(a, b)| {
            let cube = isotopy_cube(a, b, &budget).map_err(|e| e.to_string())?;
            let normal = isotopy_normal_form(a, b, &budget).map_err(|e| e.to_string())?;
            let brute = oracle::isotopy_brute(a, b).map_err(|e| e.to_string())?;
            for (name, v) in [("cube", &cube), ("normal form", &normal)] {
                if let Verdict::Found(iso) = v {
                    check(iso.is_isotopy(a, b), || format!("{name} witness fails verification"))?;
                }
            }
            let want = brute.is_some();
            check(decided(&cube) == Some(want), || format!("cube says {:?}, brute force says {want}", cube.kind()))?;
            check(decided(&normal) == Some(want), || format!("normal form says {:?}, brute force says {want}", normal.kind()))?;
            ledger.isotopic(1, a, b, want);
            Ok(want)
        })
        .collect();
    let mut yes = 0;
    for r in &results {
        yes += usize::from(*r.as_ref().map_err(|e| e.clone())?);
    }
    Ok(format!("{} pairs (n<=4), {} isotopic, {} not, 3 methods agree", pairs.len(), yes, pairs.len() - yes))
}

fn group_isotopy(ledger: &Ledger) -> Outcome {
    let groups: Vec<(&str, LatinSquare)> = gen::SMALL_GROUPS
        .iter()
        .map(|&s| gen::group_square(s).map(|l| (s, l)).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let budget = Budget::default();
    let mut compared = 0;
    for (sa, a) in &groups {
        for (sb, b) in &groups {
            if a.order() != b.order() {
                continue;
            }
            compared += 1;
            let iso = decided(&quasigroup_iso(a, b, &budget).map_err(|e| e.to_string())?);
            for method in [IsotopyMethod::Cube, IsotopyMethod::NormalForm] {
                let v = isotopy(a, b, method, &budget).map_err(|e| e.to_string())?;
                if let Verdict::Found(w) = &v {
                    check(w.is_isotopy(a, b), || format!("{sa} vs {sb}: bad witness"))?;
                }
                check(iso.is_some() && decided(&v) == iso, || format!("{sa} vs {sb} ({method:?}): isotopy {:?}, isomorphism {iso:?}", v.kind()))?;
            }
            check(iso == Some(sa == sb), || format!("{sa} vs {sb}: isomorphism verdict {iso:?}"))?;
            ledger.isotopic(2, a, b, iso == Some(true));
        }
    }
    let z4 = gen::group_square("Z4").unwrap();
    let v4 = gen::group_square("Z2xZ2").unwrap();
    check(isotopy(&z4, &v4, IsotopyMethod::Cube, &budget).unwrap().is_absent(), || "Z4 isotopic to Z2xZ2".into())?;
    Ok(format!("{} groups, {compared} same-order pairs, Z4 vs Z2xZ2 non-isotopic", groups.len()))
}

fn lsg_round_trip(ledger: &Ledger) -> Outcome {
    let mut squares: Vec<LatinSquare> = Vec::new();
    for n in 1..=4 {
        squares.extend(gen::all_latin_squares(n).unwrap());
    }
    for n in [5usize, 6, 7] {
        squares.extend((0..100u64).map(|s| gen::random_latin_square(n, 1000 * n as u64 + s)));
    }
    let results: Vec<Result<(), String>> = squares
        .par_iter()
        .enumerate()
        .map(|(i, l)| {
            let n = l.order();
            let g = latin_square_graph(l);
            let p = srg_check(&g);
            if n >= 3 {
                let want = SrgParams::new(n * n, 3 * (n - 1), n, 6);
                check(p == Some(want), || format!("square {i} (n={n}): parameters {p:?}"))?;
            } else {
                check(p.is_none() && g.edge_count() == n * n * (n * n - 1) / 2, || format!("n={n}: expected a complete graph"))?;
            }
            let pi = perm::random_permutation(n * n, &mut rng(i as u64));
            let h = g.relabeled(&pi);
            let rec = recover_latin_square(&h).map_err(|e| format!("square {i} (n={n}): {e}"))?;
            let v = main_class_equivalent(&rec, l, IsotopyMethod::NormalForm, &Budget::default()).map_err(|e| e.to_string())?;
            let Verdict::Found((c, iso)) = v else {
                return Err(format!("square {i} (n={n}): recovered square not main-class equivalent ({:?})", v.kind()));
            };
            check(iso.is_isotopy(&rec.conjugate(c), l), || format!("square {i}: witness fails"))?;
            ledger.main_class(3, &rec, l, true);
            ledger.graph(3, &latin_square_graph(&rec), &h, true);
            Ok(())
        })
        .collect();
    for r in results {
        r?;
    }
    Ok(format!("{} squares (591 exhaustive n<=4, 300 random n=5..7), all recovered", squares.len()))
}

fn steiner_recovery(ledger: &Ledger) -> Outcome {
    let mut notes = Vec::new();
    for v in [15usize, 19, 21, 25] {
        let d = gen::sts(v).map_err(|e| e.to_string())?;
        let g = block_graph(&d);
        let want = SrgParams::new(v * (v - 1) / 6, 3 * (v - 3) / 2, (v + 3) / 2, 9);
        check(srg_check(&g) == Some(want), || format!("v={v}: parameters {:?}", srg_check(&g)))?;
        let pi = perm::random_permutation(g.order(), &mut rng(v as u64));
        let h = g.relabeled(&pi);
        let rec = recover_steiner2(&h, v, 3).map_err(|e| format!("v={v}: {e}"))?;
        let w = sts_iso(&rec, &d, &Budget::default()).map_err(|e| e.to_string())?;
        let Verdict::Found(map) = w else {
            return Err(format!("v={v}: recovered design not isomorphic ({:?})", w.kind()));
        };
        check(rec.is_isomorphism(&d, &map), || format!("v={v}: witness fails"))?;
        ledger.design(4, &rec, &d, true);
        notes.push(format!("v={v}"));
    }
    Ok(format!("{} recovered and isomorphic", notes.join(", ")))
}

fn net_recovery() -> Outcome {
    let mut count = 0;
    for q in [5usize, 7, 11] {
        let ag = gen::affine_plane(q).map_err(|e| e.to_string())?;
        let mut r = rng(q as u64);
        for trial in 0..5 {
            let mut idx: Vec<usize> = (0..=q).collect();
            idx.shuffle(&mut r);
            let classes = idx[..3].iter().map(|&c| ag.classes()[c].clone()).collect();
            let net = Net::new(q, classes).map_err(|e| e.to_string())?;
            let g = net_graph(&net);
            let k = 3;
            let want = SrgParams::new(q * q, k * (q - 1), q - 2 + (k - 1) * (k - 2), k * (k - 1));
            check(srg_check(&g) == Some(want), || format!("q={q}: parameters {:?}", srg_check(&g)))?;
            let h = g.relabeled(&perm::random_permutation(q * q, &mut r));
            let rec = recover_net(&h, q, k).map_err(|e| format!("q={q} trial {trial}: {e}"))?;
            let v = net_iso(&rec, &net, &Budget::default()).map_err(|e| e.to_string())?;
            let Verdict::Found(map) = v else {
                return Err(format!("q={q} trial {trial}: recovered net not isomorphic ({:?})", v.kind()));
            };
            check(rec.is_isomorphism(&net, &map), || format!("q={q}: witness fails"))?;
            count += 1;
        }
    }
    Ok(format!("{count} degree-3 subnets of AG(2,q), q in {{5,7,11}}, recovered"))
}

fn two_round_discreteness() -> Outcome {
    let mut notes = Vec::new();
    for q in [5usize, 13, 17, 29] {
        let g = gen::paley_conference(q).map_err(|e| e.to_string())?;
        // The library default caps at q for q <= 17, where every vertex is
        // picked; a smaller target keeps the sets proper.
        let target = (2 * ceil_log2(q)).min(default_target(q));
        let ok: Vec<Result<usize, String>> = (0..50u64)
            .into_par_iter()
            .map(|t| {
                let set = find_distinguishing_set(&g, target, &Budget::with_seed(t));
                check(is_distinguishing(&g, &set), || format!("q={q} trial {t}: set not distinguishing"))?;
                let c = color_refine(&g, &Coloring::individualized(q, &set), Rounds::Fixed(2), false).map_err(|e| e.to_string())?;
                check(c.is_discrete(), || format!("q={q} trial {t}: {} classes after 2 rounds", c.class_count()))?;
                Ok(set.len())
            })
            .collect();
        let mut sizes = Vec::new();
        for r in ok {
            sizes.push(r?);
        }
        let proper = sizes.iter().filter(|&&s| s < q).count();
        notes.push(format!("q={q} 50/50 (|S|<={}, {proper} proper)", sizes.iter().max().unwrap()));
    }
    Ok(notes.join(", "))
}

/// A degree-preserving edge-swapped copy that is certainly not isomorphic.
fn foil(g: &Graph, seed: u64) -> Graph {
    let params = srg_check(g);
    (1..)
        .map(|swaps| gen::edge_swapped(g, swaps, seed))
        .find(|h| srg_check(h) != params)
        .unwrap()
}

fn conference_correctness() -> Outcome {
    let mut notes = Vec::new();
    for q in [13usize, 17, 29] {
        let g = gen::paley_conference(q).map_err(|e| e.to_string())?;
        let copies: Vec<Result<(), String>> = (0..20u64)
            .into_par_iter()
            .map(|s| {
                let h = g.relabeled(&perm::random_permutation(q, &mut rng(100 + s)));
                match conference_iso(&g, &h, &Budget::with_seed(s)).map_err(|e| e.to_string())? {
                    Verdict::Found(w) => check(g.is_isomorphism(&h, &w), || format!("q={q} copy {s}: witness fails")),
                    other => Err(format!("q={q} copy {s}: {:?}", other.kind())),
                }
            })
            .collect();
        for r in copies {
            r?;
        }
        // Foils go through the full search as well as the parameter screen.
        let foils: Vec<Result<bool, String>> = (0..20u64)
            .into_par_iter()
            .map(|s| {
                let h = foil(&g, 200 + s);
                let degrees_kept = (0..q).all(|u| h.degree(u) == g.degree(u));
                check(degrees_kept, || format!("q={q} foil {s}: degrees changed"))?;
                let mut absent = true;
                for screen in [true, false] {
                    let opts = ConferenceOptions { screen, ..ConferenceOptions::default() };
                    let v = conference_iso_with(&g, &h, &Budget::with_seed(s), opts).map_err(|e| e.to_string())?;
                    if let Verdict::Found(w) = &v {
                        return Err(format!("q={q} foil {s}: reported isomorphic (witness valid: {})", g.is_isomorphism(&h, w)));
                    }
                    absent &= v.is_absent();
                }
                Ok(absent)
            })
            .collect();
        let mut decided_absent = 0;
        for r in foils {
            decided_absent += usize::from(r?);
        }
        notes.push(format!("q={q} copies 20/20, foils 0 false positives ({decided_absent}/20 absent)"));
    }
    Ok(notes.join(", "))
}

fn cube_machinery() -> Outcome {
    let results: Vec<Result<usize, String>> = (0..200u64)
        .into_par_iter()
        .map(|i| {
            let n = 2 + (i as usize) % 15;
            let l = gen::random_latin_square(n, 7000 + i);
            let budget = Budget::with_seed(i);
            let limit = length_budget(n);
            let seq = find_cube_sequence(&l, &budget, limit - 1).map_err(|e| format!("square {i} (n={n}): {e}"))?;
            check(seq.len() <= limit, || format!("square {i}: length {} > {limit}", seq.len()))?;
            let cube = cube_set(&l, &seq, limit).map_err(|e| e.to_string())?;
            check(cube.len() == n, || format!("square {i}: Cube(S) has {} of {n} symbols", cube.len()))?;

            let mut r = rng(i);
            let phi = perm::random_permutation(n, &mut r);
            let copy = l.isotope(&Isotopy::from_isomorphism(&phi));
            let image = CubeSequence::new(seq.elements().iter().map(|&s| phi[s]).collect(), n).map_err(|e| e.to_string())?;
            let m = extend_cube_map(&l, &copy, &seq, &image)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| format!("square {i}: no extension along an isomorphism"))?;
            check(m.table == phi, || format!("square {i}: extension differs from the isomorphism"))?;
            let image_set: BTreeSet<usize> = m.table.iter().copied().collect();
            let cube2: BTreeSet<usize> = cube_set(&copy, &image, limit).map_err(|e| e.to_string())?.into_iter().collect();
            check(image_set == cube2, || format!("square {i}: witness-table image differs from Cube(T)"))?;
            for _ in 0..4 {
                let g = r.gen_range(0..n);
                let e: Vec<bool> = (0..seq.k()).map(|b| m.witness[g] >> b & 1 == 1).collect();
                check(cube_eval(&l, &seq, &e).unwrap() == g, || format!("square {i}: witness word misses {g}"))?;
                check(cube_eval(&copy, &image, &e).unwrap() == m.table[g], || format!("square {i}: image word misses"))?;
            }
            Ok(seq.len())
        })
        .collect();
    let mut longest = 0;
    for r in results {
        longest = longest.max(r?);
    }
    Ok(format!("200/200 squares (n=2..16) within 4*ceil(log2 n), longest {longest}; witness tables match"))
}

fn design_reductions(ledger: &Ledger) -> Outcome {
    let mut systems: Vec<SteinerDesign> = [7, 9, 13, 15, 19, 21, 25, 27, 31, 33, 37, 39, 43, 45]
        .iter()
        .map(|&v| gen::sts(v).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    systems.push(gen::fano());
    systems.push(gen::cyclic_sts13());
    systems.push(gen::pasch_switch(&gen::cyclic_sts13()).ok_or("no Pasch configuration")?);
    for d in &systems {
        let q = sts_to_quasigroup(d).map_err(|e| e.to_string())?;
        check(q.is_idempotent() && q.is_commutative(), || format!("v={}: quasigroup not idempotent and commutative", d.points()))?;
    }
    let s348 = gen::s348();
    let fano = gen::fano();
    for p in 0..8 {
        let der = derived_design(&s348, &[p]).map_err(|e| e.to_string())?;
        let v = sts_iso(&der.design, &fano, &Budget::default()).map_err(|e| e.to_string())?;
        match v {
            Verdict::Found(w) => check(der.design.is_isomorphism(&fano, &w), || format!("point {p}: witness fails"))?,
            other => return Err(format!("derived design at {p}: {:?}", other.kind())),
        }
        ledger.design(9, &der.design, &fano, true);
    }
    let mut r = rng(348);
    for i in 0..10 {
        let copy = s348.relabeled(&perm::random_permutation(8, &mut r));
        match steiner_t_iso(&s348, &copy, &Budget::with_seed(i)).map_err(|e| e.to_string())? {
            Verdict::Found(w) => check(s348.is_isomorphism(&copy, &w), || format!("copy {i}: witness fails"))?,
            other => return Err(format!("copy {i}: {:?}", other.kind())),
        }
        ledger.design(9, &s348, &copy, true);
    }
    Ok(format!("{} STS give idempotent commutative quasigroups; derived S(3,4,8) Fano 8/8; S(3,4,8) copies 10/10", systems.len()))
}

fn oracle_replay(ledger: &Ledger) -> Outcome {
    let claims = std::mem::take(&mut *ledger.claims.lock().unwrap());
    let failures: Vec<String> = claims
        .par_iter()
        .filter_map(|(from, claim)| {
            let (kind, truth, claimed) = match claim {
                Claim::Isotopic(a, b, y) => ("isotopy", oracle::isotopy_brute(a, b).map(|w| w.is_some()), *y),
                Claim::MainClass(a, b, y) => {
                    let any = Conjugate::ALL
                        .iter()
                        .map(|&c| oracle::isotopy_brute(&a.conjugate(c), b).map(|w| w.is_some()))
                        .try_fold(false, |acc, r| r.map(|x| acc || x));
                    ("main class", any, *y)
                }
                Claim::GraphIso(a, b, y) => ("graph", oracle::graph_iso_brute(a, b).map(|w| w.is_some()), *y),
                Claim::DesignIso(a, b, y) => ("design", oracle::design_iso_brute(a, b).map(|w| w.is_some()), *y),
            };
            match truth {
                Ok(t) if t == claimed => None,
                Ok(t) => Some(format!("criterion {from} {kind}: fast path {claimed}, oracle {t}")),
                Err(e) => Some(format!("criterion {from} {kind}: {e}")),
            }
        })
        .collect();
    if let Some(f) = failures.first() {
        return Err(format!("{} disagreements, first: {f}", failures.len()));
    }
    let mut per: std::collections::BTreeMap<u8, usize> = Default::default();
    for (from, _) in &claims {
        *per.entry(*from).or_default() += 1;
    }
    let detail: Vec<String> = per.iter().map(|(k, v)| format!("#{k}: {v}")).collect();
    Ok(format!("{} verdicts replayed, all agree ({})", claims.len(), detail.join(", ")))
}

fn main() {
    let ledger = Ledger::default();
    let criteria: [(u8, &str, &dyn Fn() -> Outcome); 10] = [
        (1, "isotopy completeness", &|| isotopy_completeness(&ledger)),
        (2, "group isotopy equals isomorphism", &|| group_isotopy(&ledger)),
        (3, "Latin square graph round trip", &|| lsg_round_trip(&ledger)),
        (4, "Steiner triple system recovery", &|| steiner_recovery(&ledger)),
        (5, "net recovery", &net_recovery),
        (6, "two count-free rounds discretize", &two_round_discreteness),
        (7, "conference graph isomorphism", &conference_correctness),
        (8, "cube generating sequences", &cube_machinery),
        (9, "design reductions", &|| design_reductions(&ledger)),
        (10, "oracle replay", &|| oracle_replay(&ledger)),
    ];
    let mut failed = 0;
    for (id, name, run) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {id:>2} {name}: {detail} [{secs:.1}s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {id:>2} {name}: {detail} [{secs:.1}s]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
