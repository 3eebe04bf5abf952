//! Finite-dimensional A-infinity categories over F2.
//!
//! Hom complexes are finite graded F2 vector spaces with a chosen basis (at
//! most 64 elements per hom), elements are bitmasks over that basis, and the
//! structure maps are sparse multilinear tables. Gradings are bookkeeping:
//! the associativity relations are checked ungraded, with all coefficients
//! in F2.

pub mod fixtures;
pub mod format;

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::gf2::{from_columns, Gf2Matrix, Gf2Vec};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AinfError {
    #[error("unknown object {0}")]
    UnknownObject(String),
    #[error("object subset must be nonempty")]
    EmptyObjectSubset,
    #[error("element is not mu1-closed")]
    NotClosed,
    #[error("no declared unit for object {0}")]
    MissingUnit(String),
    #[error("A-infinity relations fail: {0}")]
    RelationsFail(String),
    #[error("homology composition ill-defined: {0}")]
    IllDefined(String),
    #[error("bad element: {0}")]
    BadElement(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub name: String,
    pub degree: i64,
}

/// A finite-dimensional graded F2 vector space with a chosen basis.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HomSpace {
    pub basis: Vec<BasisElement>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree_mask(&self, degree: i64) -> u64 {
        let mut m = 0u64;
        for (i, b) in self.basis.iter().enumerate() {
            if b.degree == degree {
                m |= 1 << i;
            }
        }
        m
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    /// Renders a mask as a sum of basis names ("0" for the zero element).
    pub fn render(&self, mask: u64) -> String {
        if mask == 0 {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, b) in self.basis.iter().enumerate() {
            if mask >> i & 1 == 1 {
                parts.push(b.name.clone());
            }
        }
        parts.join(" + ")
    }
}

/// Key of a structure-map table: the composable object chain o_0, ..., o_d.
pub type Chain = Vec<usize>;

/// Sparse multilinear table: basis-index tuples to output masks.
pub type MuTable = BTreeMap<Vec<u8>, u64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AInfinityCategory {
    pub objects: Vec<String>,
    pub homs: BTreeMap<(usize, usize), HomSpace>,
    pub mu: BTreeMap<Chain, MuTable>,
    pub units: BTreeMap<usize, u64>,
    pub arity_bound: usize,
    /// free-form annotations carried by the textual format
    pub tags: BTreeMap<String, String>,
}

impl AInfinityCategory {
    pub fn new(objects: Vec<String>, arity_bound: usize) -> Self {
        AInfinityCategory {
            objects,
            homs: BTreeMap::new(),
            mu: BTreeMap::new(),
            units: BTreeMap::new(),
            arity_bound,
            tags: BTreeMap::new(),
        }
    }

    pub fn object_index(&self, name: &str) -> Result<usize, AinfError> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| AinfError::UnknownObject(name.to_string()))
    }

    pub fn hom(&self, src: usize, dst: usize) -> Option<&HomSpace> {
        self.homs.get(&(src, dst))
    }

    pub fn hom_dim(&self, src: usize, dst: usize) -> usize {
        self.hom(src, dst).map_or(0, |h| h.dim())
    }

    pub fn set_hom(&mut self, src: usize, dst: usize, basis: Vec<BasisElement>) {
        assert!(basis.len() <= 64, "hom dimension capped at 64");
        self.homs.insert((src, dst), HomSpace { basis });
    }

    pub fn set_mu_entry(&mut self, chain: Chain, tuple: Vec<u8>, output: u64) {
        assert!(chain.len() >= 2);
        assert_eq!(chain.len(), tuple.len() + 1);
        if output == 0 {
            if let Some(table) = self.mu.get_mut(&chain) {
                table.remove(&tuple);
                if table.is_empty() {
                    self.mu.remove(&chain);
                }
            }
        } else {
            self.mu.entry(chain).or_default().insert(tuple, output);
        }
    }

    /// Multilinear evaluation of mu^d on element masks along a chain.
    pub fn mu_eval(&self, chain: &[usize], args: &[u64]) -> u64 {
        assert_eq!(chain.len(), args.len() + 1);
        let Some(table) = self.mu.get(chain) else {
            return 0;
        };
        let mut out = 0u64;
        let mut tuple = vec![0u8; args.len()];
        fn rec(
            args: &[u64],
            at: usize,
            tuple: &mut Vec<u8>,
            table: &MuTable,
            out: &mut u64,
        ) {
            if at == args.len() {
                if let Some(v) = table.get(tuple) {
                    *out ^= v;
                }
                return;
            }
            let mut m = args[at];
            while m != 0 {
                let i = m.trailing_zeros() as u8;
                m &= m - 1;
                tuple[at] = i;
                rec(args, at + 1, tuple, table, out);
            }
        }
        rec(args, 0, &mut tuple, table, &mut out);
        out
    }

    /// mu^1 applied to a single hom element.
    pub fn d1(&self, src: usize, dst: usize, mask: u64) -> u64 {
        self.mu_eval(&[src, dst], &[mask])
    }

    /// Matrix of mu^1 on hom(src, dst) in the chosen basis.
    pub fn d1_matrix(&self, src: usize, dst: usize) -> Gf2Matrix {
        let dim = self.hom_dim(src, dst);
        let cols: Vec<Gf2Vec> = (0..dim)
            .map(|i| Gf2Vec::from_mask(self.d1(src, dst, 1 << i), dim))
            .collect();
        from_columns(&cols, dim)
    }

    /// All composable chains of the given arity, in lexicographic order.
    /// A chain is composable when every consecutive hom is declared nonzero.
    pub fn chains(&self, arity: usize) -> Vec<Chain> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(arity + 1);
        fn rec(
            cat: &AInfinityCategory,
            remaining: usize,
            cur: &mut Chain,
            out: &mut Vec<Chain>,
        ) {
            if remaining == 0 {
                out.push(cur.clone());
                return;
            }
            let last = *cur.last().unwrap();
            for next in 0..cat.objects.len() {
                if cat.hom_dim(last, next) > 0 {
                    cur.push(next);
                    rec(cat, remaining - 1, cur, out);
                    cur.pop();
                }
            }
        }
        for start in 0..self.objects.len() {
            cur.push(start);
            rec(self, arity, &mut cur, &mut out);
            cur.pop();
        }
        out
    }

    /// Residual of the A-infinity relation of total arity `n` on one basis
    /// tuple: the F2 sum over all ways of inserting an inner mu into an
    /// outer one.
    pub fn relation_residual(&self, chain: &[usize], tuple: &[u8]) -> u64 {
        let n = tuple.len();
        let mut residual = 0u64;
        for s in 1..=n {
            for i in 0..=n - s {
                let inner_chain = &chain[i..=i + s];
                let inner_args: Vec<u64> =
                    tuple[i..i + s].iter().map(|&b| 1u64 << b).collect();
                let inner = self.mu_eval(inner_chain, &inner_args);
                if inner == 0 {
                    continue;
                }
                let mut outer_chain: Chain = chain[..=i].to_vec();
                outer_chain.extend_from_slice(&chain[i + s..]);
                let mut outer_args: Vec<u64> = Vec::with_capacity(n - s + 1);
                for &b in &tuple[..i] {
                    outer_args.push(1u64 << b);
                }
                outer_args.push(inner);
                for &b in &tuple[i + s..] {
                    outer_args.push(1u64 << b);
                }
                residual ^= self.mu_eval(&outer_chain, &outer_args);
            }
        }
        residual
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationViolation {
    pub arity: usize,
    pub chain: Chain,
    pub tuple: Vec<u8>,
    pub residual: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub max_arity: usize,
    pub tuples_checked: u64,
    pub violation: Option<RelationViolation>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

impl fmt::Display for RelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => write!(
                f,
                "relations hold through arity {} ({} tuples)",
                self.max_arity, self.tuples_checked
            ),
            Some(v) => write!(
                f,
                "relation fails at arity {} on chain {:?} tuple {:?}",
                v.arity, v.chain, v.tuple
            ),
        }
    }
}

/// Evaluates every A-infinity relation of total arity <= max_arity on all
/// basis tuples, reporting the first violating tuple in scan order.
pub fn check_relations(cat: &AInfinityCategory, max_arity: usize) -> RelationReport {
    let mut tuples_checked = 0u64;
    for arity in 1..=max_arity {
        let chains = cat.chains(arity);
        // parallel over chains; the first violation in index order wins
        let results: Vec<Option<RelationViolation>> = chains
            .par_iter()
            .map(|chain| {
                let dims: Vec<usize> =
                    (0..arity).map(|i| cat.hom_dim(chain[i], chain[i + 1])).collect();
                let mut tuple = vec![0u8; arity];
                first_violation(cat, chain, &dims, 0, &mut tuple)
            })
            .collect();
        for (chain, res) in chains.iter().zip(&results) {
            let dims: u64 = (0..arity)
                .map(|i| cat.hom_dim(chain[i], chain[i + 1]) as u64)
                .product();
            if let Some(v) = res {
                return RelationReport {
                    max_arity,
                    tuples_checked,
                    violation: Some(v.clone()),
                };
            }
            tuples_checked += dims;
        }
    }
    RelationReport { max_arity, tuples_checked, violation: None }
}

fn first_violation(
    cat: &AInfinityCategory,
    chain: &[usize],
    dims: &[usize],
    at: usize,
    tuple: &mut Vec<u8>,
) -> Option<RelationViolation> {
    if at == dims.len() {
        let residual = cat.relation_residual(chain, tuple);
        if residual != 0 {
            return Some(RelationViolation {
                arity: dims.len(),
                chain: chain.to_vec(),
                tuple: tuple.clone(),
                residual,
            });
        }
        return None;
    }
    for b in 0..dims[at] {
        tuple[at] = b as u8;
        if let Some(v) = first_violation(cat, chain, dims, at + 1, tuple) {
            return Some(v);
        }
    }
    None
}

/// One hom of the homology category: independent boundary columns, a chosen
/// section of coset representatives, and the solver used to take classes.
#[derive(Clone, Debug)]
pub struct HomologySpace {
    pub dim_hom: usize,
    /// masks of the chosen coset representatives, one per homology basis
    /// class
    pub section: Vec<u64>,
    boundary_basis: Vec<u64>,
    solver: Gf2Matrix,
    d1: Gf2Matrix,
}

impl HomologySpace {
    fn new(cat: &AInfinityCategory, src: usize, dst: usize) -> Self {
        let dim = cat.hom_dim(src, dst);
        let d1 = cat.d1_matrix(src, dst);
        let kernel = d1.kernel_basis();
        // independent boundaries
        let mut boundary_basis: Vec<u64> = Vec::new();
        let mut echelon: Vec<u64> = Vec::new();
        for i in 0..dim {
            let b = cat.d1(src, dst, 1 << i);
            if reduce_against(&echelon, b) != 0 {
                let r = reduce_against(&echelon, b);
                echelon.push(r);
                boundary_basis.push(b);
            }
        }
        // complete to a basis of the kernel
        let mut section = Vec::new();
        for k in kernel {
            let m = k.to_mask();
            if reduce_against(&echelon, m) != 0 {
                let r = reduce_against(&echelon, m);
                echelon.push(r);
                section.push(m);
            }
        }
        let cols: Vec<Gf2Vec> = boundary_basis
            .iter()
            .chain(section.iter())
            .map(|&m| Gf2Vec::from_mask(m, dim))
            .collect();
        let solver = from_columns(&cols, dim);
        HomologySpace { dim_hom: section.len(), section, boundary_basis, solver, d1 }
    }

    /// Class coordinates of a cycle in the homology basis.
    pub fn class_of(&self, mask: u64) -> Option<Gf2Vec> {
        let dim = self.d1.cols();
        if !self.d1.apply(&Gf2Vec::from_mask(mask, dim)).is_zero() {
            return None;
        }
        let x = self.solver.solve(&Gf2Vec::from_mask(mask, dim))?;
        let nb = self.boundary_basis.len();
        let mut out = Gf2Vec::zeros(self.dim_hom);
        for j in 0..self.dim_hom {
            out.set(j, x.get(nb + j));
        }
        Some(out)
    }

    /// A representative of a class given in homology coordinates.
    pub fn rep_of(&self, class: &Gf2Vec) -> u64 {
        let mut m = 0u64;
        for (j, &s) in self.section.iter().enumerate() {
            if class.get(j) {
                m ^= s;
            }
        }
        m
    }
}

fn reduce_against(echelon: &[u64], mut v: u64) -> u64 {
    for &e in echelon {
        if e != 0 {
            let lead = 63 - e.leading_zeros();
            if v >> lead & 1 == 1 {
                v ^= e;
            }
        }
    }
    v
}

/// The homology (Donaldson–Fukaya) category: homology of every hom with the
/// composition induced by mu^2.
pub struct HomologyCategory {
    pub objects: Vec<String>,
    pub spaces: BTreeMap<(usize, usize), HomologySpace>,
    cat: AInfinityCategory,
}

impl HomologyCategory {
    pub fn space(&self, src: usize, dst: usize) -> Option<&HomologySpace> {
        self.spaces.get(&(src, dst))
    }

    pub fn dim(&self, src: usize, dst: usize) -> usize {
        self.space(src, dst).map_or(0, |s| s.dim_hom)
    }

    /// Induced composition on classes: [a] . [b] = [mu2(a, b)].
    pub fn compose(
        &self,
        a: usize,
        b: usize,
        c: usize,
        f: &Gf2Vec,
        g: &Gf2Vec,
    ) -> Result<Gf2Vec, AinfError> {
        let fa = self.spaces.get(&(a, b)).map_or(0, |s| s.rep_of(f));
        let gb = self.spaces.get(&(b, c)).map_or(0, |s| s.rep_of(g));
        let prod = self.cat.mu_eval(&[a, b, c], &[fa, gb]);
        match self.spaces.get(&(a, c)) {
            Some(s) => s
                .class_of(prod)
                .ok_or_else(|| AinfError::IllDefined("product is not a cycle".into())),
            None => Ok(Gf2Vec::zeros(0)),
        }
    }

    pub fn unit_class(&self, obj: usize) -> Result<Gf2Vec, AinfError> {
        let unit = *self
            .cat
            .units
            .get(&obj)
            .ok_or_else(|| AinfError::MissingUnit(self.cat.objects[obj].clone()))?;
        match self.spaces.get(&(obj, obj)) {
            Some(s) => s
                .class_of(unit)
                .ok_or_else(|| AinfError::IllDefined("unit is not a cycle".into())),
            None => Ok(Gf2Vec::zeros(0)),
        }
    }
}

/// Builds the homology category. Requires the relations through arity 3 (so
/// that mu^2 descends); verifies representative-independence of the induced
/// composition on basis cosets.
pub fn homology_category(cat: &AInfinityCategory) -> Result<HomologyCategory, AinfError> {
    let report = check_relations(cat, 3.min(cat.arity_bound));
    if let Some(v) = report.violation {
        return Err(AinfError::RelationsFail(format!(
            "arity {} on chain {:?}",
            v.arity, v.chain
        )));
    }
    let mut spaces = BTreeMap::new();
    for &(src, dst) in cat.homs.keys() {
        spaces.insert((src, dst), HomologySpace::new(cat, src, dst));
    }
    let hc = HomologyCategory { objects: cat.objects.clone(), spaces, cat: cat.clone() };

    // Independence of representatives on basis cosets: perturbing either
    // argument by a boundary must not change the induced composition.
    for (&(a, b), sab) in hc.spaces.iter() {
        for (&(b2, c), sbc) in hc.spaces.iter() {
            if b2 != b {
                continue;
            }
            let Some(sac) = hc.spaces.get(&(a, c)) else {
                continue;
            };
            for fi in 0..sab.dim_hom {
                for gi in 0..sbc.dim_hom {
                    let f = sab.section[fi];
                    let g = sbc.section[gi];
                    let base = sac
                        .class_of(hc.cat.mu_eval(&[a, b, c], &[f, g]))
                        .ok_or_else(|| AinfError::IllDefined("product not a cycle".into()))?;
                    for bd in sab
                        .boundary_basis
                        .iter()
                        .map(|&x| (x, 0))
                        .chain(sbc.boundary_basis.iter().map(|&x| (0, x)))
                    {
                        let perturbed = hc
                            .cat
                            .mu_eval(&[a, b, c], &[f ^ bd.0, g ^ bd.1]);
                        let cls = sac.class_of(perturbed).ok_or_else(|| {
                            AinfError::IllDefined("perturbed product not a cycle".into())
                        })?;
                        if cls != base {
                            return Err(AinfError::IllDefined(format!(
                                "composition depends on representatives at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        }
    }
    Ok(hc)
}

/// Whether a mu1-closed element projects to an isomorphism in the homology
/// category, decided by solving the two-sided-inverse linear system over F2.
pub fn is_c_isomorphism(
    cat: &AInfinityCategory,
    src: usize,
    dst: usize,
    f: u64,
) -> Result<bool, AinfError> {
    if cat.d1(src, dst, f) != 0 {
        return Err(AinfError::NotClosed);
    }
    let hc = homology_category(cat)?;
    let h_src = hc.dim(src, src);
    let h_dst = hc.dim(dst, dst);
    if h_src == 0 && h_dst == 0 {
        // both endomorphism homologies vanish: the zero objects are
        // isomorphic through anything
        return Ok(true);
    }
    // homological unitality is required only where the homology is nonzero
    for (obj, dim) in [(src, h_src), (dst, h_dst)] {
        if dim > 0 && !cat.units.contains_key(&obj) {
            return Err(AinfError::MissingUnit(cat.objects[obj].clone()));
        }
    }
    let unit_src =
        if h_src > 0 { hc.unit_class(src)? } else { Gf2Vec::zeros(0) };
    let unit_dst =
        if h_dst > 0 { hc.unit_class(dst)? } else { Gf2Vec::zeros(0) };
    let back = hc.dim(dst, src);
    // columns: for each candidate basis class g of H(dst,src), the pair of
    // compositions ([f.g], [g.f]); rhs: the two unit classes
    if f != 0 && hc.space(src, dst).is_none() {
        return Err(AinfError::BadElement("element of a zero hom".into()));
    }
    let rows = h_src + h_dst;
    let mut cols = Vec::new();
    for gi in 0..back {
        let mut g = Gf2Vec::zeros(back);
        g.set(gi, true);
        let fg = hc.compose(src, dst, src, &hc_class(hc.space(src, dst), f), &g)?;
        let gf = hc.compose(dst, src, dst, &g, &hc_class(hc.space(src, dst), f))?;
        let mut col = Gf2Vec::zeros(rows);
        for i in 0..h_src {
            col.set(i, fg.get(i));
        }
        for i in 0..h_dst {
            col.set(h_src + i, gf.get(i));
        }
        cols.push(col);
    }
    let mut rhs = Gf2Vec::zeros(rows);
    for i in 0..h_src {
        rhs.set(i, unit_src.get(i));
    }
    for i in 0..h_dst {
        rhs.set(h_src + i, unit_dst.get(i));
    }
    let m = from_columns(&cols, rows);
    Ok(m.solve(&rhs).is_some())
}

fn hc_class(space: Option<&HomologySpace>, mask: u64) -> Gf2Vec {
    match space {
        Some(s) => s.class_of(mask).unwrap_or_else(|| Gf2Vec::zeros(s.dim_hom)),
        None => Gf2Vec::zeros(0),
    }
}

/// The opposite category: homs transposed, arguments reversed.
pub fn opposite(cat: &AInfinityCategory) -> AInfinityCategory {
    let mut out = AInfinityCategory::new(cat.objects.clone(), cat.arity_bound);
    for (&(a, b), h) in cat.homs.iter() {
        out.homs.insert((b, a), h.clone());
    }
    for (chain, table) in cat.mu.iter() {
        let rev_chain: Chain = chain.iter().rev().copied().collect();
        let rev_table: MuTable = table
            .iter()
            .map(|(t, &v)| (t.iter().rev().copied().collect(), v))
            .collect();
        out.mu.insert(rev_chain, rev_table);
    }
    out.units = cat.units.clone();
    out
}

/// Full subcategory on a nonempty object subset.
pub fn full_subcategory(
    cat: &AInfinityCategory,
    objects: &[usize],
) -> Result<AInfinityCategory, AinfError> {
    if objects.is_empty() {
        return Err(AinfError::EmptyObjectSubset);
    }
    let names = objects.iter().map(|&o| cat.objects[o].clone()).collect();
    let reindex: BTreeMap<usize, usize> =
        objects.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let mut out = AInfinityCategory::new(names, cat.arity_bound);
    for (&(a, b), h) in cat.homs.iter() {
        if let (Some(&na), Some(&nb)) = (reindex.get(&a), reindex.get(&b)) {
            out.homs.insert((na, nb), h.clone());
        }
    }
    for (chain, table) in cat.mu.iter() {
        if chain.iter().all(|o| reindex.contains_key(o)) {
            let new_chain: Chain = chain.iter().map(|o| reindex[o]).collect();
            out.mu.insert(new_chain, table.clone());
        }
    }
    for (&o, &u) in cat.units.iter() {
        if let Some(&no) = reindex.get(&o) {
            out.units.insert(no, u);
        }
    }
    Ok(out)
}
