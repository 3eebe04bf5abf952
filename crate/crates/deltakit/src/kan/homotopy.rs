//! Budgeted homotopy-class comparison on the cylinder.
//!
//! Two pointed n-classes are compared by searching for a simplicial map
//! `Δⁿ × Δ¹ → X` restricting to the two representatives on the caps and
//! collapsing `∂Δⁿ × Δ¹` to the basepoint. A successful search returns the
//! homotopy itself as a certificate; a failed search within the node budget
//! is reported as "no within budget" and is not a proof of non-homotopy.

use std::collections::BTreeMap;

use crate::simplicial::{
    product_with_interval, standard_simplex, Cell, Simplex, SimplicialMap, SimplicialSet,
};

use super::homology::{chain_of, HomologyBasis};
use super::{basepoint_simplex, KanCertificate, KanError};

/// A pointed homotopy class representative: an n-simplex all of whose faces
/// are the collapsed basepoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyClass {
    pub basepoint: Cell,
    pub n: usize,
    pub representative: Simplex,
}

impl HomotopyClass {
    pub fn new(
        x: &SimplicialSet,
        basepoint: Cell,
        representative: Simplex,
    ) -> Result<Self, KanError> {
        let n = representative.dim();
        if n == 0 {
            return Err(KanError::InvalidClass("dimension must be at least 1".into()));
        }
        let collapsed = basepoint_simplex(basepoint, n - 1);
        for i in 0..=n {
            if x.face(&representative, i) != collapsed {
                return Err(KanError::InvalidClass(format!(
                    "face {i} of the representative does not collapse to the basepoint"
                )));
            }
        }
        Ok(HomotopyClass { basepoint, n, representative })
    }
}

#[derive(Debug)]
pub enum HomotopyVerdict {
    /// A homotopy was found; the map is the certificate.
    Yes(Box<SimplicialMap>),
    /// The search budget ran out. Not a proof of non-homotopy.
    NoWithinBudget { nodes_explored: u64 },
}

impl HomotopyVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, HomotopyVerdict::Yes(_))
    }
}

/// The face of the representative over a vertex subset of [n].
fn face_of_subset(x: &SimplicialSet, rep: &Simplex, n: usize, subset: &[usize]) -> Simplex {
    let mut s = rep.clone();
    for i in (0..=n).rev() {
        if !subset.contains(&i) {
            s = x.face(&s, i);
        }
    }
    s
}

/// Searches for a simplicial homotopy between two classes of the same
/// dimension and basepoint. Requires a Kan certificate reaching dimension
/// n+1.
pub fn homotopic(
    x: &SimplicialSet,
    a: &HomotopyClass,
    b: &HomotopyClass,
    cert: &KanCertificate,
    budget: u64,
) -> Result<HomotopyVerdict, KanError> {
    if a.n != b.n || a.basepoint != b.basepoint {
        return Err(KanError::InvalidClass(
            "classes must share dimension and basepoint".into(),
        ));
    }
    let n = a.n;
    if cert.max_dim < n + 1 {
        return Err(KanError::NotCertified { needed: n + 1, have: cert.max_dim });
    }

    let simplex = standard_simplex(n).expect("n within bound");
    let cyl = product_with_interval(&simplex).expect("cylinder within bound");
    let cylinder = &cyl.product;

    // Prescribed values: caps carry the two representatives, the side
    // ∂Δⁿ × Δ¹ collapses to the basepoint.
    let mut constraints: BTreeMap<Cell, Simplex> = BTreeMap::new();
    for d in 0..=cylinder.max_dim() {
        for c in cylinder.cells(d) {
            let px = cyl.proj_x.image_of_cell(c);
            let py = cyl.proj_y.image_of_cell(c);
            if px.cell.dim < n {
                // side: collapse to the basepoint
                constraints.insert(c, basepoint_simplex(a.basepoint, d));
            } else if px.word.is_empty() && py.cell.dim == 0 {
                // caps: interval vertex "0" is the bottom, "1" the top
                let rep = if simplex_interval_vertex(&cyl.proj_y.target, py.cell) == 0 {
                    &a.representative
                } else {
                    &b.representative
                };
                constraints.insert(c, rep.clone());
            }
        }
    }

    // Fast path: the constant homotopy when the representatives agree.
    if a.representative == b.representative {
        let assignment: Vec<Vec<Simplex>> = (0..=cylinder.max_dim())
            .map(|d| {
                cylinder
                    .cells(d)
                    .map(|c| {
                        let proj = cyl.proj_x.image_of_cell(c);
                        let base = face_of_subset_cell(&simplex, x, &a.representative, n, proj.cell);
                        Simplex { cell: base.cell, word: proj.word.then(&base.word) }
                    })
                    .collect()
            })
            .collect();
        let h = SimplicialMap::new(cylinder.clone(), x.clone(), assignment);
        h.verify().map_err(|e| KanError::InvalidClass(e.to_string()))?;
        return Ok(HomotopyVerdict::Yes(Box::new(h)));
    }

    // Backtracking over the unconstrained cells, dimension by dimension.
    let mut order: Vec<Cell> = Vec::new();
    for d in 0..=cylinder.max_dim() {
        for c in cylinder.cells(d) {
            if !constraints.contains_key(&c) {
                order.push(c);
            }
        }
    }
    let mut assigned: BTreeMap<Cell, Simplex> = constraints.clone();
    let mut nodes = 0u64;
    let found = search(x, cylinder, &order, 0, &mut assigned, &mut nodes, budget);
    if let Some(done) = found {
        let assignment: Vec<Vec<Simplex>> = (0..=cylinder.max_dim())
            .map(|d| cylinder.cells(d).map(|c| done[&c].clone()).collect())
            .collect();
        let h = SimplicialMap::new(cylinder.clone(), x.clone(), assignment);
        h.verify().map_err(|e| KanError::InvalidClass(e.to_string()))?;
        return Ok(HomotopyVerdict::Yes(Box::new(h)));
    }
    Ok(HomotopyVerdict::NoWithinBudget { nodes_explored: nodes })
}

/// The classifying image of a cell of Δⁿ under the map defined by a
/// representative simplex.
fn face_of_subset_cell(
    simplex: &SimplicialSet,
    x: &SimplicialSet,
    rep: &Simplex,
    n: usize,
    cell: Cell,
) -> Simplex {
    let name = simplex.name(cell);
    let subset: Vec<usize> = name.chars().map(|ch| ch.to_digit(10).unwrap() as usize).collect();
    face_of_subset(x, rep, n, &subset)
}

fn simplex_interval_vertex(interval: &SimplicialSet, cell: Cell) -> usize {
    interval.name(cell).parse().expect("interval vertex name")
}

fn search(
    x: &SimplicialSet,
    cylinder: &SimplicialSet,
    order: &[Cell],
    at: usize,
    assigned: &mut BTreeMap<Cell, Simplex>,
    nodes: &mut u64,
    budget: u64,
) -> Option<BTreeMap<Cell, Simplex>> {
    if at == order.len() {
        return Some(assigned.clone());
    }
    let cell = order[at];
    let candidates = x.all_simplices(cell.dim);
    for cand in candidates {
        *nodes += 1;
        if *nodes > budget {
            return None;
        }
        if cell.dim >= 1 {
            let mut ok = true;
            for i in 0..=cell.dim {
                let f = cylinder.face(&Simplex::nondegenerate(cell), i);
                if let Some(img) = assigned.get(&f.cell) {
                    let expected = Simplex { cell: img.cell, word: f.word.then(&img.word) };
                    if x.face(&cand, i) != expected {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
        }
        assigned.insert(cell, cand);
        if let Some(done) = search(x, cylinder, order, at + 1, assigned, nodes, budget) {
            return Some(done);
        }
        assigned.remove(&cell);
    }
    None
}

/// Coordinates of the class of a representative in the free part of H_n,
/// the chain-level Hurewicz pairing used to tell classes apart.
pub fn hurewicz_class(x: &SimplicialSet, class: &HomotopyClass) -> Option<Vec<i128>> {
    let hb = HomologyBasis::new(x, class.n);
    hb.class_of(&chain_of(x, &class.representative))
}
