//! Completion, filler search, fundamental groups and homotopy comparison,
//! cross-checked against the exact homology oracle.

use deltakit::ainf::fixtures::dual_numbers;
use deltakit::kan::homology::{homology, induces_homology_iso, Ring};
use deltakit::kan::homotopy::{homotopic, hurewicz_class, HomotopyClass};
use deltakit::kan::pi1::pi1_presentation;
use deltakit::kan::{
    basepoint_simplex, certify, find_filler, is_kan, kan_complete, visit_horns, KanCertificate,
    KanReport,
};
use deltakit::nerve::nerve;
use deltakit::simplicial::{glue, standard_simplex, Cell, Simplex, SimplicialSet};
use deltakit::spheres::{build_d4_mod, build_s3_mod, build_s4_mod};

fn circle() -> SimplicialSet {
    let interval = standard_simplex(1).unwrap();
    let v0 = Simplex::nondegenerate(interval.cell_by_name(0, "0").unwrap());
    let v1 = Simplex::nondegenerate(interval.cell_by_name(0, "1").unwrap());
    glue(&interval, &[(v0, v1)]).unwrap().quotient
}

#[test]
fn filler_results_verify_against_the_assignment() {
    let x = standard_simplex(2).unwrap();
    visit_horns(&x, 2, &mut |p| {
        if let Some(z) = find_filler(&x, p) {
            for (i, f) in &p.facets {
                assert_eq!(&x.face(&z, *i), f);
            }
        }
        true
    });
}

#[test]
fn group_nerve_horns_have_unique_fillers() {
    // the maximal Kan subcomplex of the dual-numbers nerve is the nerve of
    // the order-2 group of invertibles
    let nc = nerve(&dual_numbers(), 3).unwrap();
    let bdeltakit = nc.maximal_kan_subcomplex().unwrap().to_simplicial_set();
    assert!(bdeltakit.validate().is_valid());
    // inner 3-horns fill uniquely (group nerves are Kan with unique inner
    // fillers)
    let mut seen = 0;
    visit_horns(&bdeltakit, 3, &mut |p| {
        if p.n == 3 && p.k == 1 {
            let fillers: Vec<Simplex> = bdeltakit
                .all_simplices(3)
                .into_iter()
                .filter(|z| p.facets.iter().all(|(i, f)| &bdeltakit.face(z, *i) == f))
                .collect();
            assert_eq!(fillers.len(), 1, "inner horn of a group nerve");
            seen += 1;
        }
        true
    });
    assert!(seen > 0);
    assert!(is_kan(&bdeltakit, 2, 100_000).is_kan());
}

#[test]
fn already_kan_complexes_are_left_alone() {
    let point = standard_simplex(0).unwrap();
    let (out, _, report) = kan_complete(&point, 3, 100);
    assert_eq!(report.attachments, 0);
    assert!(report.certified);
    assert_eq!(out.nondegenerate_cell_count(), 1);
}

#[test]
fn completion_grows_the_circle_preserving_homology() {
    let c = circle();
    let before = homology(&c, 2, Ring::Integers);
    assert_eq!(before[1].free_rank, 1);
    let (completed, inclusion, report) = kan_complete(&c, 2, 25);
    assert_eq!(report.attachments, 25);
    assert!(completed.nondegenerate_cell_count() > c.nondegenerate_cell_count());
    for n in 0..=1 {
        assert!(induces_homology_iso(&inclusion, n).unwrap(), "degree {n}");
    }
}

#[test]
fn completion_of_the_sphere_models_preserves_homology() {
    for (set, top) in [
        (build_s3_mod().unwrap(), 3usize),
        (build_d4_mod().unwrap(), 4),
        (build_s4_mod().unwrap().s4, 4),
    ] {
        let (_, inclusion, _) = kan_complete(&set, top, 12);
        for n in 0..top {
            assert!(
                induces_homology_iso(&inclusion, n).unwrap(),
                "degree {n} of a sphere model"
            );
        }
    }
}

#[test]
fn kan_classification_of_the_interval_and_point() {
    let point = standard_simplex(0).unwrap();
    assert!(is_kan(&point, 2, 10_000).is_kan());
    let interval = standard_simplex(1).unwrap();
    match is_kan(&interval, 2, 100_000) {
        KanReport::NotKan { problem, .. } => {
            assert!(problem.k == 0 || problem.k == problem.n, "outer horn fails");
        }
        other => panic!("interval must fail, got {other:?}"),
    }
}

#[test]
fn budget_exhaustion_is_inconclusive() {
    let x = standard_simplex(2).unwrap();
    match is_kan(&x, 3, 3) {
        KanReport::Inconclusive { problems_examined } => {
            assert_eq!(problems_examined, 3);
        }
        other => panic!("expected budget stop, got {other:?}"),
    }
}

#[test]
fn pi1_of_simply_connected_fixtures_is_trivial() {
    for set in [
        standard_simplex(2).unwrap(),
        standard_simplex(3).unwrap(),
        build_s3_mod().unwrap(),
        build_d4_mod().unwrap(),
    ] {
        let p = pi1_presentation(&set, Cell { dim: 0, idx: 0 }, 1_000).unwrap();
        assert!(p.is_trivial(), "{p}");
    }
}

#[test]
fn pi1_of_the_circle_is_free_of_rank_one() {
    let p = pi1_presentation(&circle(), Cell { dim: 0, idx: 0 }, 1_000).unwrap();
    assert!(p.is_free_of_rank(1), "{p}");
}

#[test]
fn equal_classes_are_homotopic_by_the_constant_homotopy() {
    let s3 = build_s3_mod().unwrap();
    let basepoint = Cell { dim: 0, idx: 0 };
    let rep = Simplex::nondegenerate(Cell { dim: 3, idx: 0 });
    let a = HomotopyClass::new(&s3, basepoint, rep).unwrap();
    let cert = KanCertificate::asserted(4);
    let verdict = homotopic(&s3, &a, &a, &cert, 10_000).unwrap();
    assert!(verdict.is_yes());
}

#[test]
fn degenerate_representative_survives_filler_attachment() {
    let s3 = build_s3_mod().unwrap();
    let (completed, _, _) = kan_complete(&s3, 4, 6);
    let basepoint = Cell { dim: 0, idx: 0 };
    let rep = basepoint_simplex(basepoint, 3);
    let a = HomotopyClass::new(&completed, basepoint, rep).unwrap();
    let cert = KanCertificate::asserted(4);
    assert!(homotopic(&completed, &a, &a, &cert, 10_000).unwrap().is_yes());
}

#[test]
fn distinct_h3_classes_separate_by_hurewicz_degree() {
    let s3 = build_s3_mod().unwrap();
    let (completed, _, _) = kan_complete(&s3, 4, 8);
    let basepoint = Cell { dim: 0, idx: 0 };
    let top = HomotopyClass::new(
        &completed,
        basepoint,
        Simplex::nondegenerate(Cell { dim: 3, idx: 0 }),
    )
    .unwrap();
    let constant =
        HomotopyClass::new(&completed, basepoint, basepoint_simplex(basepoint, 3)).unwrap();
    let cert = KanCertificate::asserted(4);
    // the bounded search cannot identify them...
    let verdict = homotopic(&completed, &top, &constant, &cert, 20_000).unwrap();
    assert!(!verdict.is_yes());
    // ...and the chain-level degree tells them apart for sure
    let d_top = hurewicz_class(&completed, &top).unwrap();
    let d_const = hurewicz_class(&completed, &constant).unwrap();
    assert_ne!(d_top, d_const);
    assert_eq!(d_const, vec![0]);
    assert_eq!(d_top[0].abs(), 1);
}

#[test]
fn search_finds_a_nontrivial_homotopy_through_a_triangle() {
    // one vertex, loops u and w, a triangle exhibiting u . const = w
    let mut x = SimplicialSet::new(6);
    let v = x.add_cell(0, "v");
    let u = x.add_cell(1, "u");
    let w = x.add_cell(1, "w");
    let q = x.add_cell(2, "q");
    let vv = Simplex::nondegenerate(v);
    x.set_faces(u, vec![vv.clone(), vv.clone()]);
    x.set_faces(w, vec![vv.clone(), vv.clone()]);
    x.set_faces(
        q,
        vec![
            deltakit::kan::basepoint_simplex(v, 1),
            Simplex::nondegenerate(w),
            Simplex::nondegenerate(u),
        ],
    );
    assert!(x.validate().is_valid());
    let cls_u = HomotopyClass::new(&x, v, Simplex::nondegenerate(u)).unwrap();
    let cls_w = HomotopyClass::new(&x, v, Simplex::nondegenerate(w)).unwrap();
    let cert = KanCertificate::asserted(2);
    // the one-sided triangle suffices for u ~ w ...
    let verdict = homotopic(&x, &cls_u, &cls_w, &cert, 5_000_000).unwrap();
    assert!(verdict.is_yes());
    // ... but not for the reverse search on this non-Kan complex, and a
    // failed search is only "no within budget"
    let verdict = homotopic(&x, &cls_w, &cls_u, &cert, 5_000_000).unwrap();
    assert!(!verdict.is_yes());
}

#[test]
fn homotopic_refuses_without_certification() {
    let s3 = build_s3_mod().unwrap();
    let basepoint = Cell { dim: 0, idx: 0 };
    let rep = Simplex::nondegenerate(Cell { dim: 3, idx: 0 });
    let a = HomotopyClass::new(&s3, basepoint, rep).unwrap();
    let cert = KanCertificate::asserted(2);
    assert!(homotopic(&s3, &a, &a, &cert, 10_000).is_err());
    // honest certification succeeds on the point up to dimension 3
    let point = standard_simplex(0).unwrap();
    assert!(certify(&point, 3, 100_000).is_some());
}

#[test]
fn group_nerve_homology_detects_torsion() {
    // the maximal Kan subcomplex of the dual-numbers nerve presents the
    // classifying space of the order-2 group of invertibles: H_1 = Z/2
    let nc = nerve(&dual_numbers(), 3).unwrap();
    let set = nc.maximal_kan_subcomplex().unwrap().to_simplicial_set();
    let h = homology(&set, 2, Ring::Integers);
    assert_eq!(h[0].free_rank, 1);
    assert!(h[0].torsion.is_empty());
    assert_eq!(h[1].free_rank, 0);
    assert_eq!(h[1].torsion, vec![2]);
    // even positive degrees vanish over Z ...
    assert!(h[2].is_trivial());
    // ... but carry rank over F2 through the torsion below
    let h2 = homology(&set, 2, Ring::F2);
    assert_eq!(h2[1].free_rank, 1);
    assert_eq!(h2[2].free_rank, 1);
}

#[test]
fn tietze_elimination_trivializes_the_sphere_boundary() {
    // boundary of the 3-simplex: 3 non-tree edges, 4 triangle relations
    let (sphere, _) = deltakit::simplicial::boundary(3).unwrap();
    let p = pi1_presentation(&sphere, Cell { dim: 0, idx: 0 }, 1_000).unwrap();
    assert!(p.is_trivial(), "{p}");
}

#[test]
fn euler_characteristic_matches_alternating_betti_sum() {
    for set in [
        build_s3_mod().unwrap(),
        build_d4_mod().unwrap(),
        build_s4_mod().unwrap().s4,
        circle(),
    ] {
        let chi = set.euler_characteristic();
        let betti = deltakit::kan::homology::euler_from_betti(&set, 5);
        assert_eq!(chi, betti);
    }
}
