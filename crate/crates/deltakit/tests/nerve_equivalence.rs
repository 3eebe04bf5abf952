//! The nerve against two independent oracles: the classical monoid nerve
//! (cell-for-cell, faces included) and a from-scratch brute-force
//! enumerator for the 4-simplex extension problem.

use std::collections::BTreeMap;

use deltakit::ainf::fixtures::{dual_numbers, field_f2, obstruction_fixture};
use deltakit::ainf::{full_subcategory, AInfinityCategory};
use deltakit::nerve::{
    coherence_residual, extend_simplex, nerve, obstruction_check, NerveSimplex, Subset,
};

/// The multiplication table of the 4-element monoid of the dual numbers,
/// written down independently: elements are masks over {e, t}.
fn monoid_mul(a: u64, b: u64) -> u64 {
    // (a0 e + a1 t)(b0 e + b1 t) = a0 b0 e + (a0 b1 + a1 b0) t over F2
    let (a0, a1) = (a & 1, a >> 1 & 1);
    let (b0, b1) = (b & 1, b >> 1 & 1);
    (a0 & b0) | (((a0 & b1) ^ (a1 & b0)) << 1)
}

/// Classical nerve of the monoid: n-cells are arrow tuples, the i-th face
/// multiplies (or drops) at position i.
fn classical_nerve_cells(n: usize) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..4u64).map(move |m| {
                    let mut t2 = t.clone();
                    t2.push(m);
                    t2
                })
            })
            .collect();
    }
    out.sort();
    out
}

fn classical_face(tuple: &[u64], i: usize) -> Vec<u64> {
    let n = tuple.len();
    let mut out = Vec::with_capacity(n - 1);
    if i == 0 {
        out.extend_from_slice(&tuple[1..]);
    } else if i == n {
        out.extend_from_slice(&tuple[..n - 1]);
    } else {
        out.extend_from_slice(&tuple[..i - 1]);
        out.push(monoid_mul(tuple[i - 1], tuple[i]));
        out.extend_from_slice(&tuple[i + 1..]);
    }
    out
}

/// Consecutive edge data of a nerve simplex, which is the classical tuple.
fn tuple_of(simplex: &NerveSimplex) -> Vec<u64> {
    let n = simplex.dim();
    (0..n)
        .map(|i| simplex.datum(((1u32 << i) | (1u32 << (i + 1))) as Subset))
        .collect()
}

#[test]
fn dg_nerve_matches_the_monoid_nerve_cell_for_cell() {
    let cat = dual_numbers();
    let nc = nerve(&cat, 3).unwrap();
    for n in 0..=3usize {
        let classical = classical_nerve_cells(n);
        let mut ours: Vec<Vec<u64>> = nc.simplices[n].iter().map(tuple_of).collect();
        ours.sort();
        assert_eq!(ours, classical, "dimension {n}");
        // faces agree through the bijection
        if n >= 1 {
            for simplex in &nc.simplices[n] {
                for i in 0..=n {
                    assert_eq!(
                        tuple_of(&simplex.face(i)),
                        classical_face(&tuple_of(simplex), i),
                        "face {i} in dimension {n}"
                    );
                }
            }
        }
    }
    // and on the presented simplicial set, nondegenerate cells are the
    // tuples avoiding the identity
    let set = nc.to_simplicial_set();
    for n in 0..=3usize {
        let expected = if n == 0 { 1 } else { 3usize.pow(n as u32) };
        assert_eq!(set.cell_count(n), expected);
    }
}

#[test]
fn one_object_one_dim_nerve_counts_match_the_two_element_monoid() {
    let cat = field_f2();
    let nc = nerve(&cat, 2).unwrap();
    // 1-simplices are the closed degree-0 elements {0, e}
    assert_eq!(nc.simplices[1].len(), 2);
    // 2-simplices are pairs (f01, f12) with f02 forced
    assert_eq!(nc.simplices[2].len(), 4);
}

#[test]
fn every_face_of_an_enumerated_simplex_is_enumerated() {
    for cat in [dual_numbers(), full_subcategory(&obstruction_fixture(2, true).category, &[0, 1, 2]).unwrap()]
    {
        let nc = nerve(&cat, 2).unwrap();
        for n in 1..=2usize {
            for s in &nc.simplices[n] {
                for i in 0..=n {
                    let f = s.face(i);
                    assert!(
                        nc.simplices[n - 1].contains(&f),
                        "missing face of an enumerated simplex"
                    );
                }
            }
        }
    }
}

#[test]
fn maximal_kan_subcomplex_is_idempotent_and_monotone() {
    let cat = dual_numbers();
    let nc = nerve(&cat, 3).unwrap();
    let once = nc.maximal_kan_subcomplex().unwrap();
    let twice = once.maximal_kan_subcomplex().unwrap();
    for n in 0..=3 {
        assert_eq!(once.simplices[n], twice.simplices[n], "idempotence at {n}");
    }
    // monotone under full-subcategory restriction
    let big = obstruction_fixture(4, true).category;
    let small = full_subcategory(&big, &[0, 1]).unwrap();
    let sub_big = nerve(&big, 1).unwrap().maximal_kan_subcomplex().unwrap();
    let sub_small = nerve(&small, 1).unwrap().maximal_kan_subcomplex().unwrap();
    // every surviving edge of the small category survives in the big one
    for s in &sub_small.simplices[1] {
        let lifted = NerveSimplex { vertices: s.vertices.clone(), data: s.data.clone() };
        assert!(
            sub_big.simplices[1].contains(&lifted),
            "restriction must not grow the Kan subcomplex"
        );
    }
}

#[test]
fn zero_edges_between_nonzero_objects_are_dropped() {
    let cat = dual_numbers();
    let nc = nerve(&cat, 2).unwrap();
    let sub = nc.maximal_kan_subcomplex().unwrap();
    // edges: {0, e, t, e+t}; c-isomorphisms: {e, e+t} (the unit coset)
    assert_eq!(nc.simplices[1].len(), 4);
    assert_eq!(sub.simplices[1].len(), 2);
    for s in &sub.simplices[1] {
        let f = s.datum(0b11);
        assert_eq!(f & 1, 1, "surviving edges lie in the unit coset");
    }
}

/// Independent brute-force enumerator for the extension problem: evaluate
/// the full 4-simplex equation from the structure tables, for every
/// candidate top element, with its own decomposition bookkeeping.
fn brute_force_top_solutions(cat: &AInfinityCategory, gamma: &[[u64; 5]; 5]) -> Vec<u64> {
    let hom = cat.hom(0, 4).expect("hom(0,4)");
    let dim = hom.dim();
    let degree3: u64 = hom.degree_mask(3);
    let mut data: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    for a in 0..5usize {
        for b in a + 1..5 {
            data.insert(vec![a, b], gamma[a][b]);
        }
    }
    // all decompositions of [4] into consecutive blocks, written out by hand
    let decompositions: Vec<Vec<Vec<usize>>> = vec![
        vec![vec![0, 1], vec![1, 2, 3, 4]],
        vec![vec![0, 1, 2], vec![2, 3, 4]],
        vec![vec![0, 1, 2, 3], vec![3, 4]],
        vec![vec![0, 1], vec![1, 2], vec![2, 3, 4]],
        vec![vec![0, 1], vec![1, 2, 3], vec![3, 4]],
        vec![vec![0, 1, 2], vec![2, 3], vec![3, 4]],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4]],
    ];
    let mut solutions = Vec::new();
    for candidate in 0u64..(1 << dim) {
        if candidate & !degree3 != 0 {
            continue; // the top datum has degree 3
        }
        let mut residual = cat.mu_eval(&[0, 4], &[candidate]);
        // interior deletions of [4] leave hom(0,4) data, all zero here by
        // the boundary choice, so only the decompositions contribute
        for blocks in &decompositions {
            let chain: Vec<usize> = std::iter::once(blocks[0][0])
                .chain(blocks.iter().map(|b| *b.last().unwrap()))
                .collect();
            let args: Vec<u64> = blocks
                .iter()
                .map(|b| {
                    if b.len() == 2 {
                        data[&vec![b[0], b[1]]]
                    } else {
                        0 // higher boundary data is zero in these fixtures
                    }
                })
                .collect();
            residual ^= cat.mu_eval(&chain, &args);
        }
        if residual == 0 {
            solutions.push(candidate);
        }
    }
    solutions
}

#[test]
fn obstruction_check_agrees_with_the_brute_force_oracle() {
    for seed in 0..25u64 {
        for zero in [true, false] {
            let fixture = obstruction_fixture(seed, zero);
            let outcome = obstruction_check(&fixture).unwrap();
            let brute = brute_force_top_solutions(&fixture.category, &fixture.gamma);
            assert_eq!(
                outcome.simplex_exists,
                !brute.is_empty(),
                "seed {seed} zero {zero}"
            );
            assert_eq!(outcome.solutions.count(), brute.len() as u64);
            for x in outcome.solutions.iter() {
                assert!(brute.contains(&x));
            }
            assert!(outcome.holds());
        }
    }
}

#[test]
fn solution_cosets_differ_by_kernel_elements() {
    let fixture = obstruction_fixture(9, true);
    let cat = &fixture.category;
    let vertices: Vec<usize> = (0..5).collect();
    let mut data = BTreeMap::new();
    for a in 0..5usize {
        for b in a + 1..5 {
            data.insert(((1u32 << a) | (1u32 << b)) as Subset, fixture.gamma[a][b]);
        }
    }
    let sol = extend_simplex(cat, &vertices, &data, 0b11111);
    let members: Vec<u64> = sol.iter().collect();
    for w in members.windows(2) {
        assert_eq!(cat.d1(0, 4, w[0] ^ w[1]), 0);
    }
    // the residual machinery agrees with membership
    for x in members {
        assert_eq!(coherence_residual(cat, &vertices, &data, 0b11111, x), 0);
    }
}
