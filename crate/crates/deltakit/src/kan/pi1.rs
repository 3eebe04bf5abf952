//! Edge-path presentation of the fundamental group, with Tietze
//! simplification under a move budget.
//!
//! Generators are the nondegenerate 1-cells outside a spanning tree;
//! relations come from the nondegenerate 2-cells (boundary word
//! `d_2 · d_0 · d_1^{-1}`, with degenerate and tree edges contributing
//! nothing).

use std::collections::VecDeque;
use std::fmt;

use crate::simplicial::{Cell, SimplicialSet};

use super::KanError;

pub type Letter = (usize, bool); // (generator index, inverted)
pub type Word = Vec<Letter>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relations: Vec<Word>,
}

impl Presentation {
    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    /// Free of the given rank: that many generators and no relations.
    pub fn is_free_of_rank(&self, rank: usize) -> bool {
        self.generators.len() == rank && self.relations.is_empty()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self
            .relations
            .iter()
            .map(|w| {
                w.iter()
                    .map(|&(g, inv)| {
                        if inv {
                            format!("{}^-1", self.generators[g])
                        } else {
                            self.generators[g].clone()
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "< {} | {} >", self.generators.join(", "), rels.join(", "))
    }
}

/// Edge-path group presentation at the given basepoint vertex.
pub fn pi1_presentation(
    x: &SimplicialSet,
    basepoint: Cell,
    tietze_budget: u64,
) -> Result<Presentation, KanError> {
    assert_eq!(basepoint.dim, 0);
    let vertices = x.cell_count(0);
    let edges: Vec<Cell> = x.cells(1).collect();
    let endpoints: Vec<(usize, usize)> = edges
        .iter()
        .map(|&e| {
            let fs = x.cell_faces(e);
            // vertex 0 of the edge is d_1, vertex 1 is d_0
            (fs[1].cell.idx, fs[0].cell.idx)
        })
        .collect();

    // BFS spanning tree from the basepoint.
    let mut in_tree = vec![false; edges.len()];
    let mut seen = vec![false; vertices];
    seen[basepoint.idx] = true;
    let mut queue = VecDeque::from([basepoint.idx]);
    while let Some(v) = queue.pop_front() {
        for (ei, &(a, b)) in endpoints.iter().enumerate() {
            let other = if a == v && !seen[b] {
                Some(b)
            } else if b == v && !seen[a] {
                Some(a)
            } else {
                None
            };
            if let Some(w) = other {
                in_tree[ei] = true;
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(KanError::Disconnected);
    }

    let mut gen_of_edge: Vec<Option<usize>> = vec![None; edges.len()];
    let mut generators = Vec::new();
    for (ei, &e) in edges.iter().enumerate() {
        if !in_tree[ei] {
            gen_of_edge[ei] = Some(generators.len());
            generators.push(x.name(e).to_string());
        }
    }

    let mut relations: Vec<Word> = Vec::new();
    for c in x.cells(2) {
        let fs = x.cell_faces(c);
        let letter = |s: &crate::simplicial::Simplex, inv: bool| -> Option<Letter> {
            if s.is_degenerate() {
                return None;
            }
            gen_of_edge[s.cell.idx].map(|g| (g, inv))
        };
        // boundary word: (0->1) (1->2) (0->2)^-1
        let mut w = Word::new();
        if let Some(l) = letter(&fs[2], false) {
            w.push(l);
        }
        if let Some(l) = letter(&fs[0], false) {
            w.push(l);
        }
        if let Some(l) = letter(&fs[1], true) {
            w.push(l);
        }
        relations.push(w);
    }

    Ok(simplify(Presentation { generators, relations }, tietze_budget))
}

fn reduce(word: &mut Word) {
    // free reduction
    let mut out: Word = Vec::new();
    for &l in word.iter() {
        if let Some(&last) = out.last() {
            if last.0 == l.0 && last.1 != l.1 {
                out.pop();
                continue;
            }
        }
        out.push(l);
    }
    // cyclic reduction
    while out.len() >= 2 {
        let (first, last) = (out[0], *out.last().unwrap());
        if first.0 == last.0 && first.1 != last.1 {
            out.remove(0);
            out.pop();
        } else {
            break;
        }
    }
    *word = out;
}

fn invert(word: &[Letter]) -> Word {
    word.iter().rev().map(|&(g, inv)| (g, !inv)).collect()
}

fn substitute(word: &Word, gen: usize, replacement: &[Letter]) -> Word {
    let inv_replacement = invert(replacement);
    let mut out = Word::new();
    for &(g, inv) in word {
        if g == gen {
            out.extend(if inv { inv_replacement.clone() } else { replacement.to_vec() });
        } else {
            out.push((g, inv));
        }
    }
    out
}

/// Tietze simplification: kill generators defined by relations in which they
/// appear exactly once, drop trivial relations, stop when stable or when the
/// move budget runs out.
pub fn simplify(p: Presentation, budget: u64) -> Presentation {
    let mut gens_alive: Vec<bool> = vec![true; p.generators.len()];
    let mut relations = p.relations.clone();
    let mut moves = 0u64;

    loop {
        for w in relations.iter_mut() {
            reduce(w);
        }
        relations.retain(|w| !w.is_empty());
        relations.sort();
        relations.dedup();

        if moves >= budget {
            break;
        }
        // a relation in which some generator occurs exactly once lets us
        // eliminate that generator
        let mut eliminated = false;
        'outer: for ri in 0..relations.len() {
            let w = relations[ri].clone();
            for (pos, &(g, inv)) in w.iter().enumerate() {
                let occurrences =
                    w.iter().filter(|&&(h, _)| h == g).count();
                if occurrences != 1 {
                    continue;
                }
                // w = u g^e v = 1  =>  g^e = u^-1 v^-1  =>
                // g = (u^-1 v^-1) or (v u) depending on e
                let u = &w[..pos];
                let v = &w[pos + 1..];
                let mut rhs: Word = if !inv {
                    let mut r = invert(u);
                    r.extend(invert(v));
                    r
                } else {
                    let mut r = v.to_vec();
                    r.extend_from_slice(u);
                    r
                };
                reduce(&mut rhs);
                relations.remove(ri);
                for other in relations.iter_mut() {
                    *other = substitute(other, g, &rhs);
                    reduce(other);
                }
                gens_alive[g] = false;
                moves += 1;
                eliminated = true;
                break 'outer;
            }
        }
        if !eliminated {
            break;
        }
    }

    // renumber the surviving generators
    let mut remap = vec![usize::MAX; gens_alive.len()];
    let mut generators = Vec::new();
    for (g, alive) in gens_alive.iter().enumerate() {
        if *alive {
            remap[g] = generators.len();
            generators.push(p.generators[g].clone());
        }
    }
    let relations = relations
        .into_iter()
        .map(|w| w.into_iter().map(|(g, inv)| (remap[g], inv)).collect())
        .collect();
    Presentation { generators, relations }
}
