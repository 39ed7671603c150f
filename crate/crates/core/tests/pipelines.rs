use isokit_core::designs::{derived_design, net_iso, steiner_t_iso, sts_iso, sts_to_quasigroup};
use isokit_core::isotopy::{isotopy, main_class_equivalent, quasigroup_iso, IsotopyMethod};
use isokit_core::recover::{block_graph, latin_square_graph, lsg_iso, net_graph, recover_latin_square, recover_net, recover_steiner2};
use isokit_core::refine::{conference_iso, individualize_and_refine, DEFAULT_DEPTH};
use isokit_core::structures::{srg_check, SrgParams};
use isokit_core::{gen, oracle, perm, Budget, Isotopy, Net, Verdict};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn isotopes_are_found_by_both_methods() {
    let mut r = rng(1);
    for n in [5, 8, 11] {
        let l = gen::random_latin_square(n, n as u64);
        let iso = Isotopy {
            alpha: perm::random_permutation(n, &mut r),
            beta: perm::random_permutation(n, &mut r),
            gamma: perm::random_permutation(n, &mut r),
        };
        let m = l.isotope(&iso);
        for method in [IsotopyMethod::Cube, IsotopyMethod::NormalForm] {
            let found = isotopy(&l, &m, method, &Budget::default()).unwrap().into_witness().unwrap();
            assert!(found.is_isotopy(&l, &m));
        }
    }
}

#[test]
fn sts_quasigroups_and_block_graphs() {
    for v in [7, 9, 13, 15] {
        let d = gen::sts(v).unwrap();
        let q = sts_to_quasigroup(&d).unwrap();
        assert!(q.is_idempotent() && q.is_commutative());
        let g = block_graph(&d);
        if v > 7 {
            assert_eq!(srg_check(&g), Some(SrgParams::sts_block_graph(v)));
        }
        let pi = perm::random_permutation(v, &mut rng(v as u64));
        let w = sts_iso(&d, &d.relabeled(&pi), &Budget::default()).unwrap().into_witness().unwrap();
        assert!(d.is_isomorphism(&d.relabeled(&pi), &w));
    }
    let d = gen::sts(15).unwrap();
    let back = recover_steiner2(&block_graph(&d), 15, 3).unwrap();
    assert!(sts_iso(&back, &d, &Budget::default()).unwrap().is_found());
}

#[test]
fn switched_sts13_is_a_different_system() {
    let a = gen::cyclic_sts13();
    let b = gen::pasch_switch(&a).unwrap();
    assert!(sts_iso(&a, &b, &Budget::default()).unwrap().is_absent());
    assert_eq!(oracle::design_iso_brute(&a, &b).unwrap(), None);
    let qa = sts_to_quasigroup(&a).unwrap();
    let qb = sts_to_quasigroup(&b).unwrap();
    assert!(quasigroup_iso(&qa, &qb, &Budget::default()).unwrap().is_absent());
}

#[test]
fn latin_square_graph_round_trip_and_iso() {
    for n in [5, 6, 7] {
        let l = gen::random_latin_square(n, 40 + n as u64);
        let g = latin_square_graph(&l);
        let back = recover_latin_square(&g).unwrap();
        assert!(main_class_equivalent(&back, &l, IsotopyMethod::NormalForm, &Budget::default()).unwrap().is_found());
        let pi = perm::random_permutation(n * n, &mut rng(n as u64));
        let h = g.relabeled(&pi);
        let map = lsg_iso(&g, &h, &Budget::default()).unwrap().into_witness().unwrap();
        assert!(g.is_isomorphism(&h, &map));
    }
}

#[test]
fn nets_from_planes() {
    let ag = gen::affine_plane(11).unwrap();
    let sub = Net::new(11, ag.classes()[2..6].to_vec()).unwrap();
    let g = net_graph(&sub);
    assert_eq!(srg_check(&g), Some(SrgParams::net_graph(11, 4)));
    let back = recover_net(&g, 11, 4).unwrap();
    let map = net_iso(&back, &sub, &Budget::default()).unwrap().into_witness().unwrap();
    assert!(back.is_isomorphism(&sub, &map));
}

#[test]
fn derived_designs_of_s348() {
    let d = gen::s348();
    for p in 0..8 {
        let der = derived_design(&d, &[p]).unwrap();
        assert!(sts_iso(&der.design, &gen::fano(), &Budget::default()).unwrap().is_found());
    }
    let pi = perm::random_permutation(8, &mut rng(9));
    let w = steiner_t_iso(&d, &d.relabeled(&pi), &Budget::default()).unwrap().into_witness().unwrap();
    assert!(d.is_isomorphism(&d.relabeled(&pi), &w));
}

#[test]
fn conference_graph_agrees_with_refinement_search() {
    let g = gen::paley_conference(17).unwrap();
    let h = g.relabeled(&perm::random_permutation(17, &mut rng(17)));
    let a = conference_iso(&g, &h, &Budget::with_seed(4)).unwrap();
    let b = individualize_and_refine(&g, &h, DEFAULT_DEPTH, true);
    assert!(a.is_found());
    assert!(!b.is_absent());
    let foil = gen::edge_swapped(&g, 10, 3);
    assert!(matches!(conference_iso(&g, &foil, &Budget::with_seed(4)).unwrap(), Verdict::Absent | Verdict::Unknown));
}
