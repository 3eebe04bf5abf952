//! Cross-cutting invariants: representative-independence in the homology
//! category, exact-perturbation invariance of c-isomorphisms, cyclic-start
//! independence of the end-closing construction, and reparameterization
//! invariance of the Hofer length.

use deltakit::ainf::fixtures::{dual_numbers, obstruction_fixture};
use deltakit::ainf::{homology_category, is_c_isomorphism, AInfinityCategory};
use deltakit::hofer::{family_max, l_plus, optimal_family, PolePath};
use deltakit::maslov::{
    fredholm_index, linear_sweep, BoundarySegment, OrientationSign, SurfaceEndData,
};

#[test]
fn c_isomorphism_is_invariant_under_exact_perturbations() {
    // pick a seed whose differential on hom(L0, L4) is nonzero
    let fixture = (0..20u64)
        .map(|seed| obstruction_fixture(seed, true))
        .find(|f| {
            (0..f.category.hom_dim(0, 4)).any(|i| f.category.d1(0, 4, 1 << i) != 0)
        })
        .expect("some seed has a nonzero differential");
    let cat = &fixture.category;
    // exact elements of hom(L0, L4): images of mu1
    let exacts: Vec<u64> = (0..cat.hom_dim(0, 4))
        .map(|i| cat.d1(0, 4, 1 << i))
        .filter(|&b| b != 0)
        .collect();
    assert!(!exacts.is_empty());
    let f = fixture.gamma[0][4];
    let base = is_c_isomorphism(cat, 0, 4, f).unwrap();
    for &b in &exacts {
        assert_eq!(is_c_isomorphism(cat, 0, 4, f ^ b).unwrap(), base);
    }
    // and on an endomorphism hom with nontrivial homology
    let dn = dual_numbers();
    let unit = dn.units[&0];
    assert!(is_c_isomorphism(&dn, 0, 0, unit).unwrap());
}

/// Rebuilds a category with one hom's basis permuted, remapping every table
/// entry through the permutation.
fn permute_hom_basis(
    cat: &AInfinityCategory,
    src: usize,
    dst: usize,
    perm: &[usize],
) -> AInfinityCategory {
    let mut out = cat.clone();
    let hom = cat.hom(src, dst).unwrap().clone();
    assert_eq!(perm.len(), hom.dim());
    let mut basis = hom.basis.clone();
    for (new, &old) in perm.iter().enumerate() {
        basis[new] = hom.basis[old].clone();
    }
    out.set_hom(src, dst, basis);
    // old index -> new index
    let mut inverse = vec![0usize; perm.len()];
    for (new, &old) in perm.iter().enumerate() {
        inverse[old] = new;
    }
    let remap_mask = |m: u64| -> u64 {
        let mut r = 0u64;
        for old in 0..perm.len() {
            if m >> old & 1 == 1 {
                r |= 1 << inverse[old];
            }
        }
        r
    };
    let mu = out.mu.clone();
    out.mu.clear();
    for (chain, table) in mu {
        for (tuple, value) in table {
            let mut new_tuple = tuple.clone();
            for (k, slot) in new_tuple.iter_mut().enumerate() {
                if (chain[k], chain[k + 1]) == (src, dst) {
                    *slot = inverse[*slot as usize] as u8;
                }
            }
            let new_value = if (chain[0], *chain.last().unwrap()) == (src, dst) {
                remap_mask(value)
            } else {
                value
            };
            out.set_mu_entry(chain.clone(), new_tuple, new_value);
        }
    }
    if let Some(&u) = cat.units.get(&src) {
        if src == dst {
            out.units.insert(src, remap_mask(u));
        }
    }
    out
}

#[test]
fn homology_composition_is_independent_of_the_section_choice() {
    // permuting the chosen basis changes the sections; compositions of
    // corresponding classes must correspond
    let cat = obstruction_fixture(3, false).category;
    let perm = vec![2, 0, 1, 3, 4, 5, 6][..cat.hom_dim(0, 4)].to_vec();
    let permuted = permute_hom_basis(&cat, 0, 4, &perm);
    assert!(deltakit::ainf::check_relations(&permuted, 5).passed());
    let hc1 = homology_category(&cat).unwrap();
    let hc2 = homology_category(&permuted).unwrap();
    // same homology dimensions everywhere
    for (&k, s) in hc1.spaces.iter() {
        assert_eq!(s.dim_hom, hc2.space(k.0, k.1).unwrap().dim_hom);
    }
    // compositions through hom(0,4) agree as elements (masks), computed
    // from either section and compared through the permutation
    let remap = |m: u64| -> u64 {
        let mut inverse = vec![0usize; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        let mut r = 0u64;
        for old in 0..perm.len() {
            if m >> old & 1 == 1 {
                r |= 1 << inverse[old];
            }
        }
        r
    };
    let s1 = hc1.space(0, 4).unwrap();
    let s2 = hc2.space(0, 4).unwrap();
    for ci in 0..s1.dim_hom {
        let mut class = deltakit::gf2::Gf2Vec::zeros(s1.dim_hom);
        class.set(ci, true);
        let rep1 = s1.rep_of(&class);
        // the class of the permuted representative in the permuted category
        let c2 = s2.class_of(remap(rep1)).unwrap();
        let rep2 = s2.rep_of(&c2);
        // both representatives have the same class back in the original
        let back = s1.class_of(rep2_to_original(rep2, &perm)).unwrap();
        assert_eq!(back, class);
    }
}

fn rep2_to_original(mask: u64, perm: &[usize]) -> u64 {
    let mut r = 0u64;
    for (new, &old) in perm.iter().enumerate() {
        if mask >> new & 1 == 1 {
            r |= 1 << old;
        }
    }
    r
}

#[test]
fn close_off_total_is_independent_of_the_cyclic_start() {
    use std::f64::consts::PI;
    let segments = vec![
        BoundarySegment::Arc(linear_sweep(0.0, PI / 2.0, 4)),
        BoundarySegment::EndPath(linear_sweep(PI / 2.0, PI, 3)),
        BoundarySegment::Arc(linear_sweep(PI, 2.0 * PI, 5)),
        BoundarySegment::EndPath(linear_sweep(2.0 * PI, 2.0 * PI, 2)),
    ];
    let totals: Vec<i64> = (0..segments.len())
        .map(|start| {
            let mut rotated = segments[start..].to_vec();
            rotated.extend_from_slice(&segments[..start]);
            let data = SurfaceEndData {
                euler_char_closed: 1,
                components: vec![rotated],
                orientation_sign: OrientationSign::default(),
            };
            data.total_maslov().unwrap()
        })
        .collect();
    assert!(totals.windows(2).all(|w| w[0] == w[1]), "{totals:?}");
}

#[test]
fn fredholm_index_is_linear_in_each_argument() {
    for r in -2..=2 {
        for chi in -2..=2 {
            for m in -3..=3 {
                assert_eq!(
                    fredholm_index(r, chi, m + 1) - fredholm_index(r, chi, m),
                    1
                );
                assert_eq!(
                    fredholm_index(r, chi + 1, m) - fredholm_index(r, chi, m),
                    r
                );
                assert_eq!(
                    fredholm_index(r + 1, chi, m) - fredholm_index(r, chi, m),
                    chi
                );
            }
        }
    }
}

#[test]
fn l_plus_is_invariant_under_resampling_along_segments() {
    let quarter = {
        let pts = (0..65)
            .map(|i| {
                let t = std::f64::consts::FRAC_PI_2 * i as f64 / 64.0;
                [t.sin(), 0.0, t.cos()]
            })
            .collect();
        PolePath::new(pts, false).unwrap()
    };
    let base = l_plus(&quarter).unwrap();
    // halving every segment through geodesic interpolation keeps the length
    let refined: Vec<_> = (0..=128)
        .map(|i| quarter.at(i as f64 / 128.0))
        .collect();
    let refined = PolePath::new(refined, false).unwrap();
    assert!((l_plus(&refined).unwrap() - base).abs() < 1e-12);
}

#[test]
fn optimal_family_max_is_two_pi_across_meshes() {
    for subdivisions in 0..=2 {
        for samples in [48, 96, 192] {
            let family = optimal_family(subdivisions, samples);
            let (max, _) = family_max(&family).unwrap();
            assert!(
                (max - std::f64::consts::TAU).abs() < 1e-9,
                "subdivisions {subdivisions} samples {samples}: {max}"
            );
        }
    }
}
