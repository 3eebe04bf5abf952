//! The A-infinity nerve of a finite category, its coherence solver, the
//! maximal Kan subcomplex, and the 4-simplex obstruction check.
//!
//! An n-simplex assigns to every vertex an object and to every vertex subset
//! J with |J| >= 2 an element f_J of hom(min J, max J) of degree |J| - 2
//! (edges are mu1-closed degree-0 elements). The data must satisfy, for
//! every such J,
//!
//! ```text
//! mu1(f_J) + sum_{j interior in J} f_{J \ j}
//!          + sum_{s >= 2} sum_{J = J_1 ∪ ... ∪ J_s} mu^s(f_{J_1}, ..., f_{J_s}) = 0
//! ```
//!
//! where the inner sum is over order-preserving decompositions of J into s
//! consecutive blocks overlapping in single vertices, every block carrying
//! at least one edge. Since the equation is F2-affine in the top datum, the
//! extension problem is exact linear algebra: the full solution set is an
//! affine coset.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::ainf::fixtures::ObstructionFixture;
use crate::ainf::{homology_category, is_c_isomorphism, AInfinityCategory, AinfError};
use crate::gf2::{from_columns, Gf2Vec};
use crate::simplicial::{Cell, DegWord, Simplex, SimplicialSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NerveError {
    #[error("category error: {0}")]
    Category(#[from] AinfError),
    #[error("degeneracies need a declared unit for object {0}; nerve refused above dimension 0")]
    MissingUnits(String),
    #[error("missing face data for subset {0:#b}")]
    MissingFaceData(u32),
    #[error("fixture precondition violated: {0}")]
    Precondition(String),
    #[error("boundary family is not coherent at subset {0:#b}")]
    IncoherentBoundary(u32),
}

/// Vertex subsets of [n] are bitmasks; data is indexed by subsets with at
/// least two elements.
pub type Subset = u32;

fn subset_members(j: Subset) -> Vec<usize> {
    (0..32).filter(|&b| j >> b & 1 == 1).collect()
}

/// An n-simplex of the nerve: objects at the vertices and hom elements on
/// the subsets.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct NerveSimplex {
    pub vertices: Vec<usize>,
    pub data: BTreeMap<Subset, u64>,
}

impl NerveSimplex {
    pub fn vertex(object: usize) -> Self {
        NerveSimplex { vertices: vec![object], data: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn datum(&self, j: Subset) -> u64 {
        self.data.get(&j).copied().unwrap_or(0)
    }

    /// The i-th face: delete vertex i and reindex the subsets.
    pub fn face(&self, i: usize) -> NerveSimplex {
        let n = self.dim();
        assert!(n >= 1 && i <= n);
        let mut vertices = self.vertices.clone();
        vertices.remove(i);
        let mut data = BTreeMap::new();
        for j_new in subsets_with_min_size(n - 1, 2) {
            let j_old = insert_gap(j_new, i);
            let v = self.datum(j_old);
            if v != 0 {
                data.insert(j_new, v);
            }
        }
        NerveSimplex { vertices, data }
    }

    /// The i-th degeneracy: duplicate vertex i, put the unit on the doubled
    /// edge, zero on every other subset containing both copies.
    pub fn degeneracy(&self, i: usize, cat: &AInfinityCategory) -> Option<NerveSimplex> {
        let n = self.dim();
        assert!(i <= n);
        let unit = unit_of(cat, self.vertices[i])?;
        let mut vertices = self.vertices.clone();
        vertices.insert(i, self.vertices[i]);
        let mut data = BTreeMap::new();
        let doubled: Subset = (1 << i) | (1 << (i + 1));
        for j in subsets_with_min_size(n + 1, 2) {
            let value = if j == doubled {
                unit
            } else if j & doubled == doubled {
                0
            } else {
                self.datum(collapse_gap(j, i))
            };
            if value != 0 {
                data.insert(j, value);
            }
        }
        Some(NerveSimplex { vertices, data })
    }
}

/// The unit representative; zero homs are unital through the zero element.
fn unit_of(cat: &AInfinityCategory, object: usize) -> Option<u64> {
    match cat.units.get(&object) {
        Some(&u) => Some(u),
        None if cat.hom_dim(object, object) == 0 => Some(0),
        None => None,
    }
}

/// Subsets of {0..=n} with at least `min` elements, ordered by (size, value).
fn subsets_with_min_size(n: usize, min: usize) -> Vec<Subset> {
    let all: Subset = ((1u64 << (n + 1)) - 1) as Subset;
    let mut out: Vec<Subset> = (0..=all).filter(|j| j.count_ones() as usize >= min).collect();
    out.sort_by_key(|j| (j.count_ones(), *j));
    out
}

/// Reindex a subset of [n-1] into [n] by skipping position i.
fn insert_gap(j: Subset, i: usize) -> Subset {
    let low = j & ((1 << i) - 1);
    let high = (j >> i) << (i + 1);
    low | high
}

/// Reindex a subset of [n+1] not meeting both i, i+1 down to [n] by merging
/// the two positions.
fn collapse_gap(j: Subset, i: usize) -> Subset {
    let low = j & ((1 << i) - 1);
    let merged = if j >> i & 1 == 1 || j >> (i + 1) & 1 == 1 { 1 << i } else { 0 };
    let high = (j >> (i + 2)) << (i + 1);
    low | merged | high
}

/// Decompositions of the member list of J into s >= 2 consecutive blocks
/// overlapping in single vertices, each block with at least one edge.
/// Blocks are (start, end) index ranges into the member list.
fn block_decompositions(members: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let m = members.len() - 1;
    if m < 2 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for cuts in 1u32..(1 << (m - 1)) {
        let cut_positions: Vec<usize> =
            (1..m).filter(|&p| cuts >> (p - 1) & 1 == 1).collect();
        let mut blocks = Vec::new();
        let mut start = 0;
        for &c in &cut_positions {
            blocks.push((start, c));
            start = c;
        }
        blocks.push((start, m));
        out.push(blocks);
    }
    out.sort();
    out
}

/// The J-coherence residual with an explicit candidate for the top datum.
/// Lives in hom(min J, max J); zero iff the candidate closes the subset.
pub fn coherence_residual(
    cat: &AInfinityCategory,
    vertices: &[usize],
    data: &BTreeMap<Subset, u64>,
    j: Subset,
    candidate: u64,
) -> u64 {
    let members = subset_members(j);
    assert!(members.len() >= 2);
    let src = vertices[members[0]];
    let dst = vertices[*members.last().unwrap()];
    let mut residual = cat.mu_eval(&[src, dst], &[candidate]);
    // interior single-vertex deletions
    for t in 1..members.len() - 1 {
        let jj = j & !(1 << members[t]);
        residual ^= data.get(&jj).copied().unwrap_or(0);
    }
    // block decompositions
    for blocks in block_decompositions(&members) {
        let chain: Vec<usize> = std::iter::once(vertices[members[blocks[0].0]])
            .chain(blocks.iter().map(|&(_, e)| vertices[members[e]]))
            .collect();
        let args: Vec<u64> = blocks
            .iter()
            .map(|&(s, e)| {
                let mut sub: Subset = 0;
                for t in s..=e {
                    sub |= 1 << members[t];
                }
                if sub == j {
                    candidate
                } else {
                    data.get(&sub).copied().unwrap_or(0)
                }
            })
            .collect();
        residual ^= cat.mu_eval(&chain, &args);
    }
    residual
}

/// Affine solution set of an F2-linear system, kept as a coset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionCoset {
    pub particular: Option<u64>,
    pub kernel: Vec<u64>,
}

impl SolutionCoset {
    pub fn empty() -> Self {
        SolutionCoset { particular: None, kernel: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.particular.is_none()
    }

    pub fn count(&self) -> u64 {
        if self.is_empty() {
            0
        } else {
            1u64 << self.kernel.len()
        }
    }

    /// All members, in a deterministic order.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        let base = self.particular;
        (0..self.count()).map(move |combo| {
            let mut v = base.unwrap_or(0);
            for (b, k) in self.kernel.iter().enumerate() {
                if combo >> b & 1 == 1 {
                    v ^= k;
                }
            }
            v
        })
    }

    /// Difference of any two members lies in the kernel span.
    pub fn contains(&self, value: u64) -> bool {
        let Some(p) = self.particular else {
            return false;
        };
        let mut v = value ^ p;
        let mut echelon: Vec<u64> = Vec::new();
        for &k in &self.kernel {
            let mut r = k;
            for &e in &echelon {
                let lead = 63 - e.leading_zeros();
                if r >> lead & 1 == 1 {
                    r ^= e;
                }
            }
            if r != 0 {
                echelon.push(r);
            }
        }
        for &e in &echelon {
            let lead = 63 - e.leading_zeros();
            if v >> lead & 1 == 1 {
                v ^= e;
            }
        }
        v == 0
    }
}

/// Solves the J-coherence equation for the top datum over the
/// degree-(|J|-2) subspace of hom(min J, max J), returning the full coset.
pub fn extend_simplex(
    cat: &AInfinityCategory,
    vertices: &[usize],
    data: &BTreeMap<Subset, u64>,
    j: Subset,
) -> SolutionCoset {
    let members = subset_members(j);
    let src = vertices[members[0]];
    let dst = vertices[*members.last().unwrap()];
    let degree = members.len() as i64 - 2;
    let rhs = coherence_residual(cat, vertices, data, j, 0);
    let dim = cat.hom_dim(src, dst);
    let free: Vec<usize> = match cat.hom(src, dst) {
        Some(h) => (0..dim).filter(|&i| h.basis[i].degree == degree).collect(),
        None => Vec::new(),
    };
    // Residual is affine in the candidate: residual(x) = mu1(x) + rhs.
    let cols: Vec<Gf2Vec> = free
        .iter()
        .map(|&i| Gf2Vec::from_mask(cat.d1(src, dst, 1 << i), dim.max(1)))
        .collect();
    let m = from_columns(&cols, dim.max(1));
    let b = Gf2Vec::from_mask(rhs, dim.max(1));
    let Some(x) = m.solve(&b) else {
        return SolutionCoset::empty();
    };
    let unpack = |v: &Gf2Vec| -> u64 {
        let mut mask = 0u64;
        for (pos, &i) in free.iter().enumerate() {
            if v.get(pos) {
                mask |= 1 << i;
            }
        }
        mask
    };
    let kernel = m.kernel_basis().iter().map(&unpack).collect();
    SolutionCoset { particular: Some(unpack(&x)), kernel }
}

/// The nerve up to the given dimension, enumerated simplex by simplex.
pub struct NerveComplex {
    pub category: AInfinityCategory,
    pub max_dim: usize,
    pub simplices: Vec<Vec<NerveSimplex>>,
}

pub fn nerve(cat: &AInfinityCategory, max_dim: usize) -> Result<NerveComplex, NerveError> {
    if max_dim >= 1 {
        for o in 0..cat.objects.len() {
            if cat.hom_dim(o, o) > 0 && !cat.units.contains_key(&o) {
                return Err(NerveError::MissingUnits(cat.objects[o].clone()));
            }
        }
    }
    let mut simplices: Vec<Vec<NerveSimplex>> = Vec::new();
    simplices.push((0..cat.objects.len()).map(NerveSimplex::vertex).collect());
    for n in 1..=max_dim {
        let mut level = Vec::new();
        let mut tuple = vec![0usize; n + 1];
        enumerate_tuples(cat.objects.len(), 0, &mut tuple, &mut |vs| {
            let subsets = subsets_with_min_size(n, 2);
            let mut data = BTreeMap::new();
            extend_rec(cat, vs, &subsets, 0, &mut data, &mut level);
        });
        level.sort();
        simplices.push(level);
    }
    Ok(NerveComplex { category: cat.clone(), max_dim, simplices })
}

fn enumerate_tuples(
    objects: usize,
    at: usize,
    tuple: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if at == tuple.len() {
        f(tuple);
        return;
    }
    for o in 0..objects {
        tuple[at] = o;
        enumerate_tuples(objects, at + 1, tuple, f);
    }
}

fn extend_rec(
    cat: &AInfinityCategory,
    vertices: &[usize],
    subsets: &[Subset],
    at: usize,
    data: &mut BTreeMap<Subset, u64>,
    out: &mut Vec<NerveSimplex>,
) {
    if at == subsets.len() {
        out.push(NerveSimplex { vertices: vertices.to_vec(), data: data.clone() });
        return;
    }
    let j = subsets[at];
    // A zero hom between distinct objects carries no edges: without this,
    // the nerve of the category with no morphisms would not be discrete.
    if j.count_ones() == 2 {
        let m = subset_members(j);
        let (src, dst) = (vertices[m[0]], vertices[m[1]]);
        if src != dst && cat.hom_dim(src, dst) == 0 {
            return;
        }
    }
    let coset = extend_simplex(cat, vertices, data, j);
    for value in coset.iter() {
        if value != 0 {
            data.insert(j, value);
        } else {
            data.remove(&j);
        }
        extend_rec(cat, vertices, subsets, at + 1, data, out);
    }
    data.remove(&j);
}

impl NerveComplex {
    /// Number of simplices (including degenerate ones) per dimension.
    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(|v| v.len()).collect()
    }

    fn is_degenerate(&self, s: &NerveSimplex) -> bool {
        self.strip_one(s).is_some()
    }

    fn strip_one(&self, s: &NerveSimplex) -> Option<(usize, NerveSimplex)> {
        for i in 0..s.dim() {
            if s.vertices[i] == s.vertices[i + 1] {
                let face = s.face(i);
                if let Some(back) = face.degeneracy(i, &self.category) {
                    if &back == s {
                        return Some((i, face));
                    }
                }
            }
        }
        None
    }

    fn canonical(&self, s: &NerveSimplex) -> (NerveSimplex, DegWord) {
        match self.strip_one(s) {
            None => (s.clone(), DegWord::identity()),
            Some((i, inner)) => {
                let (core, word) = self.canonical(&inner);
                (core, word.prepend(i))
            }
        }
    }

    /// Converts the enumerated nerve into a finitely presented simplicial
    /// set (nondegenerate simplices become cells).
    pub fn to_simplicial_set(&self) -> SimplicialSet {
        let bound = self.max_dim.max(crate::simplicial::DEFAULT_DIMENSION_BOUND);
        let mut set = SimplicialSet::new(bound);
        let mut index: Vec<BTreeMap<&NerveSimplex, Cell>> = Vec::new();
        for (d, level) in self.simplices.iter().enumerate() {
            let mut map = BTreeMap::new();
            for s in level.iter() {
                if !self.is_degenerate(s) {
                    let cell = set.add_cell(d, format!("n{}_{}", d, map.len()));
                    map.insert(s, cell);
                }
            }
            index.push(map);
        }
        for d in 1..self.simplices.len() {
            let entries: Vec<(&NerveSimplex, Cell)> =
                index[d].iter().map(|(s, c)| (*s, *c)).collect();
            for (s, cell) in entries {
                let faces = (0..=d)
                    .map(|i| {
                        let f = s.face(i);
                        let (core, word) = self.canonical(&f);
                        let target = index[core.dim()]
                            .get(&core)
                            .copied()
                            .expect("face of an enumerated simplex is enumerated");
                        Simplex { cell: target, word }
                    })
                    .collect();
                set.set_faces(cell, faces);
            }
        }
        set
    }

    /// Largest subcomplex all of whose edge data are c-isomorphisms.
    pub fn maximal_kan_subcomplex(&self) -> Result<NerveComplex, NerveError> {
        // verdicts are per (src, dst, element); the homology category is
        // shared through the category itself
        homology_category(&self.category)?;
        let mut cache: BTreeMap<(usize, usize, u64), bool> = BTreeMap::new();
        let mut keep_edge = |src: usize, dst: usize, f: u64| -> Result<bool, NerveError> {
            if let Some(&v) = cache.get(&(src, dst, f)) {
                return Ok(v);
            }
            let v = is_c_isomorphism(&self.category, src, dst, f)?;
            cache.insert((src, dst, f), v);
            Ok(v)
        };
        let mut simplices: Vec<Vec<NerveSimplex>> = Vec::new();
        for level in &self.simplices {
            let mut kept = Vec::new();
            'simplex: for s in level {
                for a in 0..s.vertices.len() {
                    for b in a + 1..s.vertices.len() {
                        let j: Subset = (1u32 << a) | (1u32 << b);
                        if !keep_edge(s.vertices[a], s.vertices[b], s.datum(j))? {
                            continue 'simplex;
                        }
                    }
                }
                kept.push(s.clone());
            }
            simplices.push(kept);
        }
        Ok(NerveComplex {
            category: self.category.clone(),
            max_dim: self.max_dim,
            simplices,
        })
    }
}

/// Outcome of the 4-simplex obstruction check on an obstruction fixture.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionOutcome {
    pub correlator: u8,
    pub simplex_exists: bool,
    pub solutions: SolutionCoset,
}

impl ObstructionOutcome {
    /// The biconditional the check certifies: the simplex exists iff the
    /// correlator vanishes.
    pub fn holds(&self) -> bool {
        self.simplex_exists == (self.correlator == 0)
    }
}

/// Checks the extension problem for the distinguished 4-simplex boundary of
/// an obstruction fixture against the correlator pairing.
pub fn obstruction_check(fixture: &ObstructionFixture) -> Result<ObstructionOutcome, NerveError> {
    let cat = &fixture.category;
    // preconditions: consecutive compositions close onto the skip
    // generators, and mu^3 vanishes on composable generator triples
    for i in 0..5usize {
        for j in i + 1..5 {
            for k in j + 1..5 {
                let prod = cat.mu_eval(&[i, j, k], &[fixture.gamma[i][j], fixture.gamma[j][k]]);
                if prod != fixture.gamma[i][k] {
                    return Err(NerveError::Precondition(format!(
                        "mu2(g{i}{j}, g{j}{k}) != g{i}{k}"
                    )));
                }
                for l in k + 1..5 {
                    let triple = cat.mu_eval(
                        &[i, j, k, l],
                        &[fixture.gamma[i][j], fixture.gamma[j][k], fixture.gamma[k][l]],
                    );
                    if triple != 0 {
                        return Err(NerveError::Precondition(format!(
                            "mu3(g{i}{j}, g{j}{k}, g{k}{l}) != 0"
                        )));
                    }
                }
            }
        }
    }
    let vertices: Vec<usize> = (0..5).collect();
    let mut data: BTreeMap<Subset, u64> = BTreeMap::new();
    for a in 0..5usize {
        for b in a + 1..5 {
            let j: Subset = (1u32 << a) | (1u32 << b);
            data.insert(j, fixture.gamma[a][b]);
        }
    }
    // boundary coherence at every proper subset
    for j in subsets_with_min_size(4, 2) {
        if j == 0b11111 {
            continue;
        }
        let top = data.get(&j).copied().unwrap_or(0);
        let rest: BTreeMap<Subset, u64> =
            data.iter().filter(|(&k, _)| k != j).map(|(&k, &v)| (k, v)).collect();
        if coherence_residual(cat, &vertices, &rest, j, top) != 0 {
            return Err(NerveError::IncoherentBoundary(j));
        }
    }
    let solutions = extend_simplex(cat, &vertices, &data, 0b11111);
    let v = cat.mu_eval(
        &[0, 1, 2, 3, 4],
        &[
            fixture.gamma[0][1],
            fixture.gamma[1][2],
            fixture.gamma[2][3],
            fixture.gamma[3][4],
        ],
    );
    let correlator = ((v & fixture.pairing).count_ones() % 2) as u8;
    Ok(ObstructionOutcome {
        correlator,
        simplex_exists: !solutions.is_empty(),
        solutions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainf::fixtures;

    #[test]
    fn residual_at_dimension_one_is_the_differential() {
        let cat = fixtures::acyclic_two_dim();
        let vertices = vec![0, 0];
        let data = BTreeMap::new();
        // x is not closed, y is
        assert_eq!(coherence_residual(&cat, &vertices, &data, 0b11, 0b01), 0b10);
        assert_eq!(coherence_residual(&cat, &vertices, &data, 0b11, 0b10), 0);
    }

    #[test]
    fn residual_at_dimension_two_matches_the_hand_expansion() {
        // dg fixture: residual = mu1 f_[2] + f_02 + mu2(f_01, f_12)
        let cat = fixtures::dual_numbers();
        let vertices = vec![0, 0, 0];
        let mut data = BTreeMap::new();
        data.insert(0b011u32, 0b10); // f_01 = t
        data.insert(0b110u32, 0b01); // f_12 = e
        data.insert(0b101u32, 0b10); // f_02 = t = t*e
        assert_eq!(coherence_residual(&cat, &vertices, &data, 0b111, 0), 0);
        data.insert(0b101u32, 0b01); // f_02 = e != t*e
        assert_eq!(coherence_residual(&cat, &vertices, &data, 0b111, 0), 0b11);
    }

    #[test]
    fn extension_solves_or_fails_with_mu1_zero() {
        let cat = fixtures::dual_numbers();
        let vertices = vec![0, 0, 0];
        let mut data = BTreeMap::new();
        data.insert(0b011u32, 0b10);
        data.insert(0b110u32, 0b10); // t * t = 0
        data.insert(0b101u32, 0b00);
        // consistent boundary, mu1 = 0: solutions = degree-1 kernel = {0}
        let sol = extend_simplex(&cat, &vertices, &data, 0b111);
        assert!(!sol.is_empty());
        assert_eq!(sol.count(), 1);
        // inconsistent boundary: empty
        data.insert(0b101u32, 0b01);
        let sol = extend_simplex(&cat, &vertices, &data, 0b111);
        assert!(sol.is_empty());
    }

    #[test]
    fn obstruction_matches_correlator_for_both_seidings() {
        for seed in 0..20u64 {
            for zero in [false, true] {
                let fixture = fixtures::obstruction_fixture(seed, zero);
                let out = obstruction_check(&fixture).unwrap();
                assert_eq!(out.correlator == 0, zero, "seed {seed}");
                assert!(out.holds(), "seed {seed} zero {zero}");
            }
        }
    }

    #[test]
    fn nerve_of_discrete_category_is_discrete() {
        // two objects, no homs at all
        let cat = AInfinityCategory::new(vec!["A".into(), "B".into()], 5);
        let nc = nerve(&cat, 2).unwrap();
        let set = nc.to_simplicial_set();
        assert_eq!(set.cell_count(0), 2);
        assert_eq!(set.cell_count(1), 0);
        assert_eq!(set.cell_count(2), 0);
    }

    #[test]
    fn solution_cosets_are_affine() {
        let fixture = fixtures::obstruction_fixture(1, true);
        let cat = &fixture.category;
        let vertices: Vec<usize> = (0..5).collect();
        let mut data = BTreeMap::new();
        for a in 0..5usize {
            for b in a + 1..5 {
                data.insert(((1 << a) | (1 << b)) as Subset, fixture.gamma[a][b]);
            }
        }
        let sol = extend_simplex(cat, &vertices, &data, 0b11111);
        if let Some(p) = sol.particular {
            for x in sol.iter() {
                assert_eq!(cat.d1(0, 4, x ^ p), 0);
            }
        }
    }
}
