//! Fixture library: small hand-built categories plus a seeded generator for
//! the five-object obstruction fixtures.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{AInfinityCategory, BasisElement, Chain};

fn be(name: &str, degree: i64) -> BasisElement {
    BasisElement { name: name.to_string(), degree }
}

/// One object, hom = F2 in degree 0, mu^2 = field multiplication.
pub fn field_f2() -> AInfinityCategory {
    let mut cat = AInfinityCategory::new(vec!["A".into()], 5);
    cat.set_hom(0, 0, vec![be("e", 0)]);
    cat.set_mu_entry(vec![0, 0, 0], vec![0, 0], 0b1);
    cat.units.insert(0, 0b1);
    cat
}

/// One object, basis {e, t} with t^2 = 0: the dual numbers F2[t]/(t^2).
pub fn dual_numbers() -> AInfinityCategory {
    let mut cat = AInfinityCategory::new(vec!["A".into()], 5);
    cat.set_hom(0, 0, vec![be("e", 0), be("t", 0)]);
    // unit laws and t*t = 0
    cat.set_mu_entry(vec![0, 0, 0], vec![0, 0], 0b01);
    cat.set_mu_entry(vec![0, 0, 0], vec![0, 1], 0b10);
    cat.set_mu_entry(vec![0, 0, 0], vec![1, 0], 0b10);
    cat.units.insert(0, 0b01);
    cat
}

/// One object, hom = F2^2 with mu^1 mapping the first basis vector to the
/// second: an acyclic complex with zero products and no unit.
pub fn acyclic_two_dim() -> AInfinityCategory {
    let mut cat = AInfinityCategory::new(vec!["A".into()], 5);
    cat.set_hom(0, 0, vec![be("x", 1), be("y", 0)]);
    cat.set_mu_entry(vec![0, 0], vec![0], 0b10);
    cat
}

/// One object with a nonzero mu^3 and vanishing products outside the unit
/// laws. mu^3(x,x,x) = z is the only higher entry; every associativity
/// relation closes because the triple bracket's output multiplies to zero.
pub fn triple_product() -> AInfinityCategory {
    let mut cat = AInfinityCategory::new(vec!["A".into()], 5);
    cat.set_hom(0, 0, vec![be("e", 0), be("x", 0), be("z", 1)]);
    // strict unit rows
    for i in 0..3u8 {
        cat.set_mu_entry(vec![0, 0, 0], vec![0, i], 1 << i);
        if i != 0 {
            cat.set_mu_entry(vec![0, 0, 0], vec![i, 0], 1 << i);
        }
    }
    cat.set_mu_entry(vec![0, 0, 0, 0], vec![1, 1, 1], 0b100);
    cat.units.insert(0, 0b001);
    cat
}

/// One obstruction fixture: objects L0..L4, one degree-0 generator per
/// forward hom, consecutive generators composing to the skip generators, a
/// differential on hom(L0, L4) from degree 3 to degree 2, and a single
/// mu^4 entry on the edge generators.
pub struct ObstructionFixture {
    pub category: AInfinityCategory,
    /// gamma[i][j] = mask of the generator of hom(Li, Lj), i < j
    pub gamma: [[u64; 5]; 5],
    /// covector of the correlator pairing on hom(L0, L4)
    pub pairing: u64,
    /// the seeded choice: whether the correlator was made to vanish
    pub correlator_zero: bool,
}

/// Seeded generator. `correlator_zero` controls whether the mu^4 value is
/// placed inside the image of the differential (correlator 0, extension
/// exists) or off it by the pairing vector (correlator 1, no extension).
/// Total dimension of hom(L0, L4) stays at most 12.
pub fn obstruction_fixture(seed: u64, correlator_zero: bool) -> ObstructionFixture {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let deg3_dim: usize = rng.random_range(1..=5);
    let deg2_dim: usize = rng.random_range(1..=5);

    let names: Vec<String> = (0..5).map(|i| format!("L{i}")).collect();
    let mut cat = AInfinityCategory::new(names, 5);

    // identity homs
    for i in 0..5usize {
        cat.set_hom(i, i, vec![be(&format!("e{i}"), 0)]);
        cat.units.insert(i, 0b1);
    }
    // forward homs: a single generator except hom(L0, L4)
    let mut gamma = [[0u64; 5]; 5];
    for i in 0..5usize {
        for j in i + 1..5usize {
            if (i, j) == (0, 4) {
                continue;
            }
            cat.set_hom(i, j, vec![be(&format!("g{i}{j}"), 0)]);
            gamma[i][j] = 0b1;
        }
    }
    // hom(L0, L4): the edge generator, a degree-2 block, a degree-3 block
    let mut basis = vec![be("g04", 0)];
    for k in 0..deg2_dim {
        basis.push(be(&format!("w{}", k + 1), 2));
    }
    for k in 0..deg3_dim {
        basis.push(be(&format!("u{}", k + 1), 3));
    }
    cat.set_hom(0, 4, basis);
    gamma[0][4] = 0b1;
    let w_mask = |k: usize| 1u64 << (1 + k);
    let u_index = |k: usize| (1 + deg2_dim + k) as u8;
    let pairing = w_mask(0);

    // unit laws on every declared hom
    for i in 0..5usize {
        for j in i..5usize {
            let dim = cat.hom_dim(i, j);
            if dim == 0 {
                continue;
            }
            for b in 0..dim as u8 {
                cat.set_mu_entry(vec![i, i, j], vec![0, b], 1 << b);
                cat.set_mu_entry(vec![i, j, j], vec![b, 0], 1 << b);
            }
        }
    }
    // consecutive and skip compositions: g(i,j) . g(j,k) = g(i,k)
    for i in 0..5usize {
        for j in i + 1..5usize {
            for k in j + 1..5usize {
                cat.set_mu_entry(vec![i, j, k], vec![0, 0], gamma[i][k]);
            }
        }
    }
    // differential on hom(L0, L4): degree 3 lands in the degree-2 block,
    // avoiding the pairing coordinate
    let mut image_accum = 0u64;
    for k in 0..deg3_dim {
        let mut target = 0u64;
        for w in 1..deg2_dim {
            if rng.random_bool(0.5) {
                target ^= w_mask(w);
            }
        }
        cat.set_mu_entry(vec![0, 4], vec![u_index(k)], target);
        image_accum |= target;
    }
    let _ = image_accum;
    // the single higher operation on the edge generators
    let mut v = 0u64;
    for k in 0..deg3_dim {
        if rng.random_bool(0.5) {
            v ^= cat.mu_eval(&[0, 4], &[1u64 << u_index(k)]);
        }
    }
    if !correlator_zero {
        v ^= pairing;
    }
    if v != 0 {
        cat.set_mu_entry(vec![0, 1, 2, 3, 4], vec![0, 0, 0, 0], v);
    }

    cat.tags.insert("pairing".into(), "w1".into());
    for i in 0..5usize {
        for j in i + 1..5usize {
            cat.tags
                .insert(format!("gamma{i}{j}"), cat.homs[&(i, j)].basis[0].name.clone());
        }
    }
    ObstructionFixture { category: cat, gamma, pairing, correlator_zero }
}

/// A single-entry structure-table corruption: one output bit of one
/// (chain, tuple) cell flipped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fault {
    pub chain: Chain,
    pub tuple: Vec<u8>,
    pub bit: u8,
}

/// All possible single-entry corruptions of tables up to the arity bound,
/// over declared chains, in deterministic order.
pub fn fault_sites(cat: &AInfinityCategory, max_arity: usize) -> Vec<Fault> {
    let mut out = Vec::new();
    for arity in 1..=max_arity {
        for chain in cat.chains(arity) {
            let out_dim = cat.hom_dim(chain[0], *chain.last().unwrap());
            if out_dim == 0 {
                continue;
            }
            let dims: Vec<usize> =
                (0..arity).map(|i| cat.hom_dim(chain[i], chain[i + 1])).collect();
            let mut tuple = vec![0u8; arity];
            enumerate_tuples(&dims, 0, &mut tuple, &mut |t| {
                for bit in 0..out_dim as u8 {
                    out.push(Fault { chain: chain.clone(), tuple: t.to_vec(), bit });
                }
            });
        }
    }
    out
}

fn enumerate_tuples(dims: &[usize], at: usize, tuple: &mut Vec<u8>, f: &mut impl FnMut(&[u8])) {
    if at == dims.len() {
        f(tuple);
        return;
    }
    for b in 0..dims[at] {
        tuple[at] = b as u8;
        enumerate_tuples(dims, at + 1, tuple, f);
    }
}

/// Applies a fault, returning the corrupted category.
pub fn inject_fault(cat: &AInfinityCategory, fault: &Fault) -> AInfinityCategory {
    let mut out = cat.clone();
    let current = out
        .mu
        .get(&fault.chain)
        .and_then(|t| t.get(&fault.tuple))
        .copied()
        .unwrap_or(0);
    out.set_mu_entry(fault.chain.clone(), fault.tuple.clone(), current ^ (1 << fault.bit));
    out
}
