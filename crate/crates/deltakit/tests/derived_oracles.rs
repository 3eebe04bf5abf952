//! Derived-value oracles: the triple product solved out of the linear
//! system it must satisfy, homology-category composition laws, survival of
//! the skip generators, filler absence on the bare circle, and the
//! four-simplex residual reduced to its closed form.

use std::collections::BTreeMap;

use deltakit::ainf::fixtures::{dual_numbers, obstruction_fixture, triple_product};
use deltakit::ainf::homology_category;
use deltakit::gf2::{from_columns, Gf2Matrix, Gf2Vec};
use deltakit::kan::{find_filler, HornProblem};
use deltakit::nerve::{coherence_residual, Subset};
use deltakit::simplicial::{glue, standard_simplex, Cell, Simplex};

/// With mu^1 = 0, unit-law mu^2 and mu^4 = 0, the arity-4 associativity
/// relation is linear in the entries of a candidate mu^3 on the non-unit
/// arguments. Solving that system recovers a solution space containing the
/// fixture's nonzero table.
#[test]
fn triple_product_solves_the_arity_four_linear_system() {
    let fixture = triple_product();
    let dim = 3usize; // basis {e, x, z}, unit at index 0
    const NON_UNIT: [u8; 2] = [1, 2];
    let mut arg_tuples: Vec<[u8; 3]> = Vec::new();
    for a in NON_UNIT {
        for b in NON_UNIT {
            for c in NON_UNIT {
                arg_tuples.push([a, b, c]);
            }
        }
    }
    let unknown = |t: &[u8; 3], bit: usize| -> usize {
        arg_tuples.iter().position(|u| u == t).unwrap() * dim + bit
    };
    let n_unknowns = arg_tuples.len() * dim;

    let mu2 = |a: u64, b: u64| fixture.mu_eval(&[0, 0, 0], &[a, b]);
    let pair = |p: u8, q: u8| -> Option<u8> {
        let m = mu2(1 << p, 1 << q);
        (m != 0).then(|| m.trailing_zeros() as u8)
    };

    // one row per (arity-4 basis tuple, output bit): the residual must be 0
    let mut rows: Vec<Gf2Vec> = Vec::new();
    for a in 0..dim as u8 {
        for b in 0..dim as u8 {
            for c in 0..dim as u8 {
                for d in 0..dim as u8 {
                    for out_bit in 0..dim {
                        let mut coeffs = Gf2Vec::zeros(n_unknowns);
                        // toggle the unknown coefficients a term contributes
                        let add_term =
                            |inner: [u8; 3], route: Option<(bool, u8)>, coeffs: &mut Gf2Vec| {
                                if inner.contains(&0) {
                                    return; // mu3 with a unit argument is zero
                                }
                                for bit in 0..dim {
                                    let routed = match route {
                                        None => 1u64 << bit,
                                        Some((left, other)) => {
                                            if left {
                                                mu2(1 << bit, 1 << other)
                                            } else {
                                                mu2(1 << other, 1 << bit)
                                            }
                                        }
                                    };
                                    if routed >> out_bit & 1 == 1 {
                                        let u = unknown(&inner, bit);
                                        coeffs.set(u, !coeffs.get(u));
                                    }
                                }
                            };
                        // mu3 with mu2 inserted
                        if let Some(ab) = pair(a, b) {
                            add_term([ab, c, d], None, &mut coeffs);
                        }
                        if let Some(bc) = pair(b, c) {
                            add_term([a, bc, d], None, &mut coeffs);
                        }
                        if let Some(cd) = pair(c, d) {
                            add_term([a, b, cd], None, &mut coeffs);
                        }
                        // mu2 with mu3 inserted
                        add_term([a, b, c], Some((true, d)), &mut coeffs);
                        add_term([b, c, d], Some((false, a)), &mut coeffs);
                        if !coeffs.is_zero() {
                            rows.push(coeffs);
                        }
                    }
                }
            }
        }
    }
    let matrix = Gf2Matrix::from_rows(rows.clone(), n_unknowns);
    let zero_rhs = Gf2Vec::zeros(rows.len());

    // the fixture's table as an unknown vector
    let mut fixture_vec = Gf2Vec::zeros(n_unknowns);
    for t in &arg_tuples {
        let out = fixture.mu_eval(&[0, 0, 0, 0], &[1 << t[0], 1 << t[1], 1 << t[2]]);
        for bit in 0..dim {
            if out >> bit & 1 == 1 {
                fixture_vec.set(unknown(t, bit), true);
            }
        }
    }
    assert!(!fixture_vec.is_zero(), "the fixture's mu3 is nonzero");
    assert_eq!(matrix.apply(&fixture_vec), zero_rhs, "fixture solves the system");
    // the solver's kernel contains the fixture
    let kernel = matrix.kernel_basis();
    assert!(!kernel.is_empty());
    let kernel_matrix = from_columns(&kernel, n_unknowns);
    assert!(kernel_matrix.solve(&fixture_vec).is_some(), "fixture in the solution space");
}

#[test]
fn zero_differential_homology_composition_is_mu2() {
    let cat = dual_numbers();
    let hc = homology_category(&cat).unwrap();
    let space = hc.space(0, 0).unwrap();
    assert_eq!(space.dim_hom, 2);
    for i in 0..2usize {
        for j in 0..2usize {
            let mut ci = Gf2Vec::zeros(2);
            ci.set(i, true);
            let mut cj = Gf2Vec::zeros(2);
            cj.set(j, true);
            let composed = hc.compose(0, 0, 0, &ci, &cj).unwrap();
            let direct = cat.mu_eval(&[0, 0, 0], &[space.rep_of(&ci), space.rep_of(&cj)]);
            assert_eq!(space.class_of(direct).unwrap(), composed);
        }
    }
}

#[test]
fn skip_generators_survive_to_homology() {
    let cat = obstruction_fixture(6, true).category;
    let hc = homology_category(&cat).unwrap();
    for i in 0..5usize {
        for j in i + 1..5usize {
            // each forward hom keeps its generator; hom(L0, L4) may carry
            // extra classes from the padded degrees
            assert!(hc.dim(i, j) >= 1, "hom({i},{j})");
            if (i, j) != (0, 4) {
                assert_eq!(hc.dim(i, j), 1);
            }
        }
    }
}

#[test]
fn acyclic_complex_collapses_homology() {
    let cat = deltakit::ainf::fixtures::acyclic_two_dim();
    let hc = homology_category(&cat).unwrap();
    assert_eq!(hc.dim(0, 0), 0);
}

#[test]
fn the_two_cell_free_circle_has_no_inner_filler() {
    // circle with one vertex and one edge, nothing above dimension 1
    let interval = standard_simplex(1).unwrap();
    let v0 = Simplex::nondegenerate(interval.cell_by_name(0, "0").unwrap());
    let v1 = Simplex::nondegenerate(interval.cell_by_name(0, "1").unwrap());
    let circle = glue(&interval, &[(v0, v1)]).unwrap().quotient;
    let e = Simplex::nondegenerate(Cell { dim: 1, idx: 0 });
    let p = HornProblem::new(2, 1, vec![(0, e.clone()), (2, e)]);
    assert!(find_filler(&circle, &p).is_none(), "no 2-cells, no filler");
}

#[test]
fn four_simplex_residual_reduces_to_its_closed_form() {
    // on the distinguished boundary the full residual collapses to
    // mu1(candidate) + mu4(edge generators)
    for seed in [0u64, 3, 8] {
        let fixture = obstruction_fixture(seed, false);
        let cat = &fixture.category;
        let vertices: Vec<usize> = (0..5).collect();
        let mut data: BTreeMap<Subset, u64> = BTreeMap::new();
        for a in 0..5usize {
            for b in a + 1..5 {
                data.insert((1u32 << a) | (1u32 << b), fixture.gamma[a][b]);
            }
        }
        let v4 = cat.mu_eval(
            &[0, 1, 2, 3, 4],
            &[
                fixture.gamma[0][1],
                fixture.gamma[1][2],
                fixture.gamma[2][3],
                fixture.gamma[3][4],
            ],
        );
        let dim = cat.hom_dim(0, 4);
        for candidate_bit in 0..dim {
            let x = 1u64 << candidate_bit;
            let lhs = coherence_residual(cat, &vertices, &data, 0b11111, x);
            let rhs = cat.d1(0, 4, x) ^ v4;
            assert_eq!(lhs, rhs, "seed {seed} candidate bit {candidate_bit}");
        }
    }
}

#[test]
fn sphere_model_cell_breakdown() {
    let bundle = deltakit::spheres::build_s4_mod().unwrap();
    let counts: Vec<usize> = (0..=4).map(|d| bundle.s4.cell_count(d)).collect();
    // two cone points + the shared vertex, two cone edges, the shared
    // 3-cell, two 4-cells
    assert_eq!(counts, vec![3, 2, 0, 1, 2]);
}

#[test]
fn family_maximum_scales_with_loop_speed() {
    use deltakit::hofer::{family_max, optimal_family, PolePath};
    let family = optimal_family(0, 64);
    let (base, _) = family_max(&family).unwrap();
    let mut tripled = family.clone();
    for l in tripled.loops.iter_mut() {
        let mut samples = Vec::new();
        for _ in 0..3 {
            samples.extend_from_slice(&l.samples);
        }
        *l = PolePath { samples, closed: true };
    }
    let (fast, _) = family_max(&tripled).unwrap();
    assert!((fast - 3.0 * base).abs() < 1e-9);
}
