//! Kan condition checking, horn-filler search and budgeted Kan completion.
//!
//! A horn problem records the images of the facets of `Λ^n_k`; a filler is any
//! n-simplex (degenerate ones allowed) whose faces match the assignment away
//! from slot k. Searches are exhaustive over the finite simplex set, so "no
//! filler" is a proof for the complex at hand.

pub mod homology;
pub mod homotopy;
pub mod pi1;

use std::fmt;

use thiserror::Error;

use crate::simplicial::{Cell, DegWord, Simplex, SimplicialMap, SimplicialSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KanError {
    #[error("complex is not connected")]
    Disconnected,
    #[error("horn assignment is not simplicial: {0}")]
    InvalidHorn(String),
    #[error("invalid homotopy class: {0}")]
    InvalidClass(String),
    #[error("complex not Kan-certified up to dimension {needed} (have {have})")]
    NotCertified { needed: usize, have: usize },
    #[error("homology computation unsupported here: {0}")]
    Unsupported(String),
}

/// A horn-filling problem: images in the ambient complex for every facet of
/// `Λ^n_k` except the missing k-th one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HornProblem {
    pub n: usize,
    pub k: usize,
    /// facet images, indexed by face index i != k, ascending
    pub facets: Vec<(usize, Simplex)>,
}

impl HornProblem {
    pub fn new(n: usize, k: usize, facets: Vec<(usize, Simplex)>) -> Self {
        HornProblem { n, k, facets }
    }

    pub fn facet(&self, i: usize) -> Option<&Simplex> {
        self.facets.iter().find(|(j, _)| *j == i).map(|(_, s)| s)
    }

    /// Checks the gluing conditions d_i F_j = d_{j-1} F_i for i < j.
    pub fn validate(&self, x: &SimplicialSet) -> Result<(), KanError> {
        for (i, fi) in &self.facets {
            if fi.dim() + 1 != self.n {
                return Err(KanError::InvalidHorn(format!(
                    "facet {i} has dimension {}",
                    fi.dim()
                )));
            }
            for (j, fj) in &self.facets {
                if i < j && x.face(fj, *i) != x.face(fi, *j - 1) {
                    return Err(KanError::InvalidHorn(format!(
                        "facets {i} and {j} do not glue"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn describe(&self, x: &SimplicialSet) -> String {
        let slots: Vec<String> = (0..=self.n)
            .map(|i| match self.facet(i) {
                Some(s) => x.describe(s),
                None => "-".to_string(),
            })
            .collect();
        format!("Λ^{}_{} @ {}", self.n, self.k, slots.join(", "))
    }

    /// One report line in the fixed "Λ^n_k @ cells… : filled|unfilled" shape.
    pub fn report_line(&self, x: &SimplicialSet, filled: bool) -> String {
        format!(
            "{} : {}",
            self.describe(x),
            if filled { "filled" } else { "unfilled" }
        )
    }
}

/// Exhaustive filler search over all simplices of the complex.
pub fn find_filler(x: &SimplicialSet, p: &HornProblem) -> Option<Simplex> {
    p.validate(x).ok()?;
    x.all_simplices(p.n).into_iter().find(|z| fills(x, p, z))
}

fn fills(x: &SimplicialSet, p: &HornProblem, z: &Simplex) -> bool {
    p.facets.iter().all(|(i, f)| &x.face(z, *i) == f)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KanReport {
    Kan { problems_examined: u64 },
    NotKan { problem: HornProblem, problems_examined: u64 },
    /// The enumeration budget ran out before every horn problem was seen.
    Inconclusive { problems_examined: u64 },
}

impl KanReport {
    pub fn is_kan(&self) -> bool {
        matches!(self, KanReport::Kan { .. })
    }

    pub fn render(&self, x: &SimplicialSet) -> String {
        match self {
            KanReport::Kan { problems_examined } => {
                format!("kan (checked {problems_examined} horn problems)")
            }
            KanReport::NotKan { problem, problems_examined } => format!(
                "{} : unfilled (after {problems_examined} problems)",
                problem.describe(x)
            ),
            KanReport::Inconclusive { problems_examined } => {
                format!("inconclusive (budget after {problems_examined} horn problems)")
            }
        }
    }
}

impl fmt::Display for KanReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KanReport::Kan { problems_examined } => {
                write!(f, "kan (checked {problems_examined} horn problems)")
            }
            KanReport::NotKan { problem, problems_examined } => write!(
                f,
                "L^{}_{} unfilled (after {} problems)",
                problem.n, problem.k, problems_examined
            ),
            KanReport::Inconclusive { problems_examined } => {
                write!(f, "inconclusive (budget after {problems_examined} horn problems)")
            }
        }
    }
}

/// Enumerates every horn problem with n <= max_dim in canonical order and
/// reports the first unfillable one. `budget` caps the number of problems
/// examined.
pub fn is_kan(x: &SimplicialSet, max_dim: usize, budget: u64) -> KanReport {
    let mut examined = 0u64;
    let mut first_failure: Option<HornProblem> = None;
    let exhausted = for_each_horn(x, max_dim, &mut |p| {
        examined += 1;
        if examined > budget {
            return ControlFlow::Stop;
        }
        if find_filler_unchecked(x, p).is_none() {
            first_failure = Some(p.clone());
            return ControlFlow::Stop;
        }
        ControlFlow::Continue
    });
    match (first_failure, exhausted) {
        (Some(problem), _) => KanReport::NotKan { problem, problems_examined: examined },
        (None, true) => KanReport::Kan { problems_examined: examined },
        (None, false) => KanReport::Inconclusive { problems_examined: examined.min(budget) },
    }
}

enum ControlFlow {
    Continue,
    Stop,
}

/// Visits horn problems in canonical order until the callback returns false
/// or the enumeration finishes.
pub fn visit_horns(
    x: &SimplicialSet,
    max_dim: usize,
    visit: &mut impl FnMut(&HornProblem) -> bool,
) {
    for_each_horn(x, max_dim, &mut |p| {
        if visit(p) {
            ControlFlow::Continue
        } else {
            ControlFlow::Stop
        }
    });
}

/// Filler search for an assignment already known to satisfy the gluing
/// conditions.
fn find_filler_unchecked(x: &SimplicialSet, p: &HornProblem) -> Option<Simplex> {
    x.all_simplices(p.n).into_iter().find(|z| fills(x, p, z))
}

/// Visits all valid horn problems in lexicographic (n, k, assignment) order.
/// Returns true when the enumeration ran to completion.
fn for_each_horn(
    x: &SimplicialSet,
    max_dim: usize,
    visit: &mut impl FnMut(&HornProblem) -> ControlFlow,
) -> bool {
    for n in 1..=max_dim {
        let candidates = x.all_simplices(n - 1);
        for k in 0..=n {
            let slots: Vec<usize> = (0..=n).filter(|&i| i != k).collect();
            let mut chosen: Vec<(usize, Simplex)> = Vec::new();
            if !assign_slots(x, &candidates, &slots, 0, &mut chosen, k, n, visit) {
                return false;
            }
        }
    }
    true
}

#[allow(clippy::too_many_arguments)]
fn assign_slots(
    x: &SimplicialSet,
    candidates: &[Simplex],
    slots: &[usize],
    at: usize,
    chosen: &mut Vec<(usize, Simplex)>,
    k: usize,
    n: usize,
    visit: &mut impl FnMut(&HornProblem) -> ControlFlow,
) -> bool {
    if at == slots.len() {
        let p = HornProblem::new(n, k, chosen.clone());
        return matches!(visit(&p), ControlFlow::Continue);
    }
    let i = slots[at];
    'cand: for cand in candidates {
        // gluing against already-chosen facets
        for (j, fj) in chosen.iter() {
            // j < i here since slots ascend
            if x.face(cand, *j) != x.face(fj, i - 1) {
                continue 'cand;
            }
        }
        chosen.push((i, cand.clone()));
        let ok = assign_slots(x, candidates, slots, at + 1, chosen, k, n, visit);
        chosen.pop();
        if !ok {
            return false;
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionReport {
    pub attachments: u64,
    /// true when a final scan found every horn fillable up to max_dim
    pub certified: bool,
}

/// Iteratively attaches free fillers for unfillable horns of dimension <=
/// max_dim, up to `budget` attachments. Deterministic: horns are scanned in
/// canonical order and the scan restarts after each attachment.
pub fn kan_complete(
    x: &SimplicialSet,
    max_dim: usize,
    budget: u64,
) -> (SimplicialSet, SimplicialMap, CompletionReport) {
    let mut current = x.clone();
    let mut attachments = 0u64;
    let mut fresh = 0usize;
    let certified = loop {
        let mut failing: Option<HornProblem> = None;
        for_each_horn(&current, max_dim, &mut |p| {
            if find_filler_unchecked(&current, p).is_none() {
                failing = Some(p.clone());
                ControlFlow::Stop
            } else {
                ControlFlow::Continue
            }
        });
        let Some(p) = failing else {
            break true;
        };
        if attachments == budget {
            break false;
        }
        attach_filler(&mut current, &p, &mut fresh);
        attachments += 1;
    };
    let assignment = (0..=if x.is_cell_empty() { 0 } else { x.max_dim() })
        .map(|d| x.cells(d).map(Simplex::nondegenerate).collect())
        .collect();
    let inclusion = SimplicialMap::new(x.clone(), current.clone(), assignment);
    (current, inclusion, CompletionReport { attachments, certified })
}

/// Pushout against Delta^n along the horn inclusion: one free (n-1)-cell for
/// the missing face and one free n-cell filling the horn.
fn attach_filler(x: &mut SimplicialSet, p: &HornProblem, fresh: &mut usize) {
    let n = p.n;
    let k = p.k;
    // faces of the new missing facet, forced by the simplicial identities:
    // d_j (d_k z) = d_{k-1}(F_j) for j < k, d_k(F_{j+1}) for j >= k.
    let w_faces: Vec<Simplex> = if n >= 2 {
        (0..n)
            .map(|j| {
                if j < k {
                    x.face(p.facet(j).unwrap(), k - 1)
                } else {
                    x.face(p.facet(j + 1).unwrap(), k)
                }
            })
            .collect()
    } else {
        Vec::new()
    };
    let w_name = format!("hf{}d{}", *fresh, n - 1);
    let z_name = format!("hf{}d{}", *fresh, n);
    *fresh += 1;
    let w = x.add_cell(n - 1, w_name);
    if n >= 2 {
        x.set_faces(w, w_faces);
    }
    let z = x.add_cell(n, z_name);
    let z_faces: Vec<Simplex> = (0..=n)
        .map(|i| {
            if i == k {
                Simplex::nondegenerate(w)
            } else {
                p.facet(i).unwrap().clone()
            }
        })
        .collect();
    x.set_faces(z, z_faces);
}

/// A certificate that the complex is Kan up to the recorded dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KanCertificate {
    pub max_dim: usize,
}

impl KanCertificate {
    /// Caller-supplied certification, for complexes known to be Kan on
    /// grounds the budgeted checker cannot reach (e.g. the idealized limit
    /// of a completion).
    pub fn asserted(max_dim: usize) -> Self {
        KanCertificate { max_dim }
    }
}

/// Runs the Kan check and issues a certificate on success.
pub fn certify(x: &SimplicialSet, max_dim: usize, budget: u64) -> Option<KanCertificate> {
    match is_kan(x, max_dim, budget) {
        KanReport::Kan { .. } => Some(KanCertificate { max_dim }),
        _ => None,
    }
}

/// Basepoint-collapsed degeneracy of the given dimension.
pub fn basepoint_simplex(basepoint: Cell, dim: usize) -> Simplex {
    Simplex { cell: basepoint, word: DegWord::full_collapse(dim) }
}
