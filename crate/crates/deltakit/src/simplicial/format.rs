//! Textual model format for simplicial sets.
//!
//! ```text
//! simplicial_set
//! dimension_bound 6
//! dim 0 : v
//! dim 3 : t
//! face t.0 = s_1 s_0 v
//! face t.1 = s_1 s_0 v
//! face t.2 = s_1 s_0 v
//! face t.3 = s_1 s_0 v
//! label 0 v = basepoint
//! end
//! ```
//!
//! Printing is canonical (dimensions ascending, cells in index order, faces in
//! index order) so `print ∘ parse = id` and `parse ∘ print = id` hold
//! bit-exactly on canonical documents.

use std::fmt::Write as _;

use thiserror::Error;

use super::{Cell, DegWord, Simplex, SimplicialSet};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct FormatError {
    pub line: usize,
    pub msg: String,
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError { line, msg: msg.into() })
}

pub fn print(x: &SimplicialSet) -> String {
    let mut out = String::new();
    out.push_str("simplicial_set\n");
    let _ = writeln!(out, "dimension_bound {}", x.dimension_bound());
    let top = if x.is_cell_empty() { None } else { Some(x.max_dim()) };
    if let Some(top) = top {
        for d in 0..=top {
            if x.cell_count(d) == 0 {
                continue;
            }
            let names: Vec<&str> = x.cells(d).map(|c| x.name(c)).collect();
            let _ = writeln!(out, "dim {} : {}", d, names.join(" "));
        }
        for d in 1..=top {
            for c in x.cells(d) {
                for (i, f) in x.cell_faces(c).iter().enumerate() {
                    let _ = writeln!(out, "face {}.{} = {}", x.name(c), i, x.describe(f));
                }
            }
        }
        for (cell, text) in x.labels() {
            let _ = writeln!(out, "label {} {} = {}", cell.dim, x.name(*cell), text);
        }
    }
    out.push_str("end\n");
    out
}

pub fn parse(input: &str) -> Result<SimplicialSet, FormatError> {
    let mut lines = input.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let mut header_seen = false;
    let mut set: Option<SimplicialSet> = None;
    let mut pending_faces: Vec<(usize, String, usize, String)> = Vec::new();
    let mut pending_labels: Vec<(usize, usize, String, String)> = Vec::new();
    let mut ended = false;

    for (ln, line) in &mut lines {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if ended {
            return err(ln, "content after end");
        }
        if !header_seen {
            if line != "simplicial_set" {
                return err(ln, "expected header 'simplicial_set'");
            }
            header_seen = true;
            continue;
        }
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("dimension_bound") => {
                let b: usize = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or(FormatError { line: ln, msg: "bad dimension_bound".into() })?;
                if set.is_some() {
                    return err(ln, "duplicate dimension_bound");
                }
                set = Some(SimplicialSet::new(b));
            }
            Some("dim") => {
                let Some(set) = set.as_mut() else {
                    return err(ln, "dim before dimension_bound");
                };
                let d: usize = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or(FormatError { line: ln, msg: "bad dimension".into() })?;
                match tokens.next() {
                    Some(":") => {}
                    _ => return err(ln, "expected ':'"),
                }
                for name in tokens {
                    if set.cell_by_name(d, name).is_some() {
                        return err(ln, format!("duplicate cell {name} in dimension {d}"));
                    }
                    set.add_cell(d, name);
                }
            }
            Some("face") => {
                let Some(head) = tokens.next() else {
                    return err(ln, "bad face line");
                };
                let Some((cell_name, face_idx)) = head.rsplit_once('.') else {
                    return err(ln, "expected cell.index");
                };
                let face_idx: usize = match face_idx.parse() {
                    Ok(i) => i,
                    Err(_) => return err(ln, "bad face index"),
                };
                match tokens.next() {
                    Some("=") => {}
                    _ => return err(ln, "expected '='"),
                }
                let rest: Vec<&str> = tokens.collect();
                if rest.is_empty() {
                    return err(ln, "missing face target");
                }
                pending_faces.push((ln, cell_name.to_string(), face_idx, rest.join(" ")));
            }
            Some("label") => {
                let d: usize = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or(FormatError { line: ln, msg: "bad label dimension".into() })?;
                let Some(name) = tokens.next() else {
                    return err(ln, "bad label line");
                };
                match tokens.next() {
                    Some("=") => {}
                    _ => return err(ln, "expected '='"),
                }
                let text: Vec<&str> = tokens.collect();
                pending_labels.push((ln, d, name.to_string(), text.join(" ")));
            }
            Some("end") => {
                ended = true;
            }
            Some(other) => return err(ln, format!("unknown directive '{other}'")),
            None => unreachable!(),
        }
    }
    if !ended {
        return err(0, "missing 'end'");
    }
    let mut set = set.ok_or(FormatError { line: 0, msg: "missing dimension_bound".into() })?;

    // Resolve faces now that every cell is known.
    let mut faces_by_cell: std::collections::HashMap<(usize, usize), Vec<Option<Simplex>>> =
        std::collections::HashMap::new();
    for (ln, cell_name, face_idx, target) in &pending_faces {
        let (dim, cell) = match locate(&set, cell_name) {
            Some(x) => x,
            None => return err(*ln, format!("unknown cell {cell_name}")),
        };
        if dim == 0 {
            return err(*ln, "0-cells have no faces");
        }
        if *face_idx > dim {
            return err(*ln, format!("face index {face_idx} out of range for {dim}-cell"));
        }
        let simplex = parse_simplex(&set, target, dim - 1)
            .ok_or(FormatError { line: *ln, msg: format!("bad face target '{target}'") })?;
        let slot = faces_by_cell
            .entry((dim, cell.idx))
            .or_insert_with(|| vec![None; dim + 1]);
        if slot[*face_idx].is_some() {
            return err(*ln, "duplicate face entry");
        }
        slot[*face_idx] = Some(simplex);
    }
    let top = if set.is_cell_empty() { 0 } else { set.max_dim() };
    for d in 1..=top {
        for c in set.cells(d).collect::<Vec<_>>() {
            let entry = faces_by_cell.remove(&(d, c.idx));
            let faces: Vec<Simplex> = match entry {
                Some(v) if v.iter().all(|f| f.is_some()) => {
                    v.into_iter().map(|f| f.unwrap()).collect()
                }
                _ => {
                    return err(
                        0,
                        format!("cell {} is missing face entries", set.name(c)),
                    )
                }
            };
            set.set_faces(c, faces);
        }
    }
    for (ln, d, name, text) in pending_labels {
        let Some(cell) = set.cell_by_name(d, &name) else {
            return err(ln, format!("unknown cell {name} in dimension {d}"));
        };
        set.set_label(cell, text);
    }
    Ok(set)
}

/// Finds the unique dimension holding a cell with this name; face lines refer
/// to cells whose dimension is recoverable from context, but cell names are
/// unique per dimension only, so prefer the unique global match.
fn locate(set: &SimplicialSet, name: &str) -> Option<(usize, Cell)> {
    let mut found = None;
    let top = if set.is_cell_empty() { 0 } else { set.max_dim() };
    for d in 0..=top {
        if let Some(c) = set.cell_by_name(d, name) {
            if found.is_some() {
                return None; // ambiguous
            }
            found = Some((d, c));
        }
    }
    found
}

/// Parses "s_j1 s_j2 ... name" as a simplex of the given dimension.
fn parse_simplex(set: &SimplicialSet, text: &str, dim: usize) -> Option<Simplex> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let mut word = Vec::new();
    let mut it = tokens.iter().peekable();
    while let Some(tok) = it.peek() {
        if let Some(j) = tok.strip_prefix("s_") {
            word.push(j.parse::<usize>().ok()?);
            it.next();
        } else {
            break;
        }
    }
    let name = it.next()?;
    if it.next().is_some() {
        return None;
    }
    if word.len() > dim {
        return None;
    }
    let cell_dim = dim - word.len();
    let cell = set.cell_by_name(cell_dim, name)?;
    if !word.windows(2).all(|w| w[0] > w[1]) {
        return None;
    }
    let w = DegWord::from_canonical(word);
    if !w.valid_over(cell_dim) {
        return None;
    }
    Some(Simplex { cell, word: w })
}
