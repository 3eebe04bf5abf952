//! Textual category format.
//!
//! ```text
//! ainfinity_category
//! arity_bound 5
//! objects L0 L1
//! hom L0 L0 : e:0 x:0 z:1
//! unit L0 = e
//! mu 2 (L0 L0 L0) : (x,x) -> z
//! tag pairing = w1
//! end
//! ```
//!
//! Only nonzero table entries are listed. Printing is canonical (homs by
//! object index, tables by arity then chain then tuple, tags by key), so the
//! round trip is bit-exact on canonical documents.

use std::fmt::Write as _;

use thiserror::Error;

use super::{AInfinityCategory, BasisElement, HomSpace};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct FormatError {
    pub line: usize,
    pub msg: String,
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError { line, msg: msg.into() })
}

pub fn print(cat: &AInfinityCategory) -> String {
    let mut out = String::new();
    out.push_str("ainfinity_category\n");
    let _ = writeln!(out, "arity_bound {}", cat.arity_bound);
    let _ = writeln!(out, "objects {}", cat.objects.join(" "));
    for (&(src, dst), hom) in cat.homs.iter() {
        let basis: Vec<String> =
            hom.basis.iter().map(|b| format!("{}:{}", b.name, b.degree)).collect();
        let _ = writeln!(
            out,
            "hom {} {} : {}",
            cat.objects[src],
            cat.objects[dst],
            basis.join(" ")
        );
    }
    for (&obj, &mask) in cat.units.iter() {
        let hom = &cat.homs[&(obj, obj)];
        let _ = writeln!(out, "unit {} = {}", cat.objects[obj], render_sum(hom, mask));
    }
    let mut mu_lines: Vec<(usize, Vec<usize>, Vec<u8>, String)> = Vec::new();
    for (chain, table) in cat.mu.iter() {
        let arity = chain.len() - 1;
        let out_hom = &cat.homs[&(chain[0], *chain.last().unwrap())];
        for (tuple, &value) in table.iter() {
            if value == 0 {
                continue;
            }
            let chain_names: Vec<&str> =
                chain.iter().map(|&o| cat.objects[o].as_str()).collect();
            let tuple_names: Vec<String> = tuple
                .iter()
                .enumerate()
                .map(|(k, &b)| {
                    cat.homs[&(chain[k], chain[k + 1])].basis[b as usize].name.clone()
                })
                .collect();
            mu_lines.push((
                arity,
                chain.clone(),
                tuple.clone(),
                format!(
                    "mu {} ({}) : ({}) -> {}",
                    arity,
                    chain_names.join(" "),
                    tuple_names.join(","),
                    render_sum(out_hom, value)
                ),
            ));
        }
    }
    mu_lines.sort();
    for (_, _, _, line) in mu_lines {
        let _ = writeln!(out, "{line}");
    }
    for (k, v) in cat.tags.iter() {
        let _ = writeln!(out, "tag {k} = {v}");
    }
    out.push_str("end\n");
    out
}

fn render_sum(hom: &HomSpace, mask: u64) -> String {
    hom.render(mask)
}

pub fn parse(input: &str) -> Result<AInfinityCategory, FormatError> {
    let mut cat: Option<AInfinityCategory> = None;
    let mut arity_bound: Option<usize> = None;
    let mut header_seen = false;
    let mut ended = false;
    let mut pending_units: Vec<(usize, String, String)> = Vec::new();
    let mut pending_mu: Vec<(usize, String)> = Vec::new();

    for (ln, raw) in input.lines().enumerate() {
        let ln = ln + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if ended {
            return err(ln, "content after end");
        }
        if !header_seen {
            if line != "ainfinity_category" {
                return err(ln, "expected header 'ainfinity_category'");
            }
            header_seen = true;
            continue;
        }
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("arity_bound") => {
                arity_bound = Some(
                    tokens
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or(FormatError { line: ln, msg: "bad arity_bound".into() })?,
                );
            }
            Some("objects") => {
                let Some(bound) = arity_bound else {
                    return err(ln, "objects before arity_bound");
                };
                let names: Vec<String> = tokens.map(|t| t.to_string()).collect();
                if names.is_empty() {
                    return err(ln, "empty object list");
                }
                cat = Some(AInfinityCategory::new(names, bound));
            }
            Some("hom") => {
                let Some(cat) = cat.as_mut() else {
                    return err(ln, "hom before objects");
                };
                let (Some(a), Some(b), Some(colon)) =
                    (tokens.next(), tokens.next(), tokens.next())
                else {
                    return err(ln, "bad hom line");
                };
                if colon != ":" {
                    return err(ln, "expected ':'");
                }
                let src = cat.object_index(a).map_err(|e| FormatError {
                    line: ln,
                    msg: e.to_string(),
                })?;
                let dst = cat.object_index(b).map_err(|e| FormatError {
                    line: ln,
                    msg: e.to_string(),
                })?;
                let mut basis = Vec::new();
                for tok in tokens {
                    let Some((name, deg)) = tok.rsplit_once(':') else {
                        return err(ln, format!("bad basis element '{tok}'"));
                    };
                    let degree: i64 = deg
                        .parse()
                        .map_err(|_| FormatError { line: ln, msg: "bad degree".into() })?;
                    if basis.iter().any(|b: &BasisElement| b.name == name) {
                        return err(ln, format!("duplicate basis name '{name}'"));
                    }
                    basis.push(BasisElement { name: name.to_string(), degree });
                }
                if basis.len() > 64 {
                    return err(ln, "hom dimension capped at 64");
                }
                cat.set_hom(src, dst, basis);
            }
            Some("unit") => {
                let (Some(obj), Some(eq)) = (tokens.next(), tokens.next()) else {
                    return err(ln, "bad unit line");
                };
                if eq != "=" {
                    return err(ln, "expected '='");
                }
                let rest: Vec<&str> = tokens.collect();
                pending_units.push((ln, obj.to_string(), rest.join(" ")));
            }
            Some("mu") => {
                pending_mu.push((ln, line.to_string()));
            }
            Some("tag") => {
                let Some(cat) = cat.as_mut() else {
                    return err(ln, "tag before objects");
                };
                let (Some(key), Some(eq)) = (tokens.next(), tokens.next()) else {
                    return err(ln, "bad tag line");
                };
                if eq != "=" {
                    return err(ln, "expected '='");
                }
                let value: Vec<&str> = tokens.collect();
                cat.tags.insert(key.to_string(), value.join(" "));
            }
            Some("end") => ended = true,
            Some(other) => return err(ln, format!("unknown directive '{other}'")),
            None => unreachable!(),
        }
    }
    if !ended {
        return err(0, "missing 'end'");
    }
    let mut cat = cat.ok_or(FormatError { line: 0, msg: "missing objects".into() })?;

    for (ln, obj, sum) in pending_units {
        let o = cat
            .object_index(&obj)
            .map_err(|e| FormatError { line: ln, msg: e.to_string() })?;
        let hom = cat
            .hom(o, o)
            .ok_or(FormatError { line: ln, msg: "unit needs hom(o,o)".into() })?;
        let mask = parse_sum(hom, &sum)
            .ok_or(FormatError { line: ln, msg: format!("bad element '{sum}'") })?;
        cat.units.insert(o, mask);
    }
    for (ln, line) in pending_mu {
        parse_mu_line(&mut cat, ln, &line)?;
    }
    Ok(cat)
}

fn parse_mu_line(
    cat: &mut AInfinityCategory,
    ln: usize,
    line: &str,
) -> Result<(), FormatError> {
    // mu d (o0 .. od) : (b1,..,bd) -> sum
    let rest = line.strip_prefix("mu").unwrap().trim();
    let (arity_str, rest) = rest
        .split_once('(')
        .ok_or(FormatError { line: ln, msg: "bad mu line".into() })?;
    let arity: usize = arity_str
        .trim()
        .parse()
        .map_err(|_| FormatError { line: ln, msg: "bad arity".into() })?;
    let (chain_str, rest) = rest
        .split_once(')')
        .ok_or(FormatError { line: ln, msg: "missing chain".into() })?;
    let chain: Vec<usize> = {
        let mut v = Vec::new();
        for name in chain_str.split_whitespace() {
            v.push(
                cat.object_index(name)
                    .map_err(|e| FormatError { line: ln, msg: e.to_string() })?,
            );
        }
        v
    };
    if chain.len() != arity + 1 {
        return err(ln, format!("chain length {} does not match arity {arity}", chain.len()));
    }
    let rest = rest.trim().strip_prefix(':').map(str::trim).unwrap_or(rest);
    let (tuple_str, out_str) = rest
        .split_once("->")
        .ok_or(FormatError { line: ln, msg: "missing '->'".into() })?;
    let tuple_str = tuple_str.trim().trim_start_matches('(').trim_end_matches(|c: char| {
        c == ')' || c.is_whitespace()
    });
    let mut tuple = Vec::new();
    for (k, name) in tuple_str.split(',').enumerate() {
        let name = name.trim();
        if k >= arity {
            return err(ln, "too many tuple entries");
        }
        let hom = cat
            .hom(chain[k], chain[k + 1])
            .ok_or(FormatError { line: ln, msg: "tuple over an undeclared hom".into() })?;
        let idx = hom
            .index_of(name)
            .ok_or(FormatError { line: ln, msg: format!("unknown basis name '{name}'") })?;
        tuple.push(idx as u8);
    }
    if tuple.len() != arity {
        return err(ln, "tuple length does not match arity");
    }
    let out_hom = cat
        .hom(chain[0], *chain.last().unwrap())
        .ok_or(FormatError { line: ln, msg: "output hom undeclared".into() })?;
    let mask = parse_sum(out_hom, out_str.trim())
        .ok_or(FormatError { line: ln, msg: format!("bad output '{}'", out_str.trim()) })?;
    cat.set_mu_entry(chain, tuple, mask);
    Ok(())
}

fn parse_sum(hom: &HomSpace, text: &str) -> Option<u64> {
    if text == "0" {
        return Some(0);
    }
    let mut mask = 0u64;
    for part in text.split('+') {
        let name = part.trim();
        let idx = hom.index_of(name)?;
        mask ^= 1 << idx;
    }
    Some(mask)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures;
    use super::*;

    #[test]
    fn roundtrip_fixture_library() {
        for cat in [
            fixtures::field_f2(),
            fixtures::dual_numbers(),
            fixtures::acyclic_two_dim(),
            fixtures::triple_product(),
            fixtures::obstruction_fixture(5, false).category,
            fixtures::obstruction_fixture(5, true).category,
        ] {
            let text = print(&cat);
            let parsed = parse(&text).unwrap();
            assert_eq!(cat, parsed);
            assert_eq!(print(&parsed), text);
        }
    }

    #[test]
    fn rejects_unknown_basis_names() {
        let text = "ainfinity_category\narity_bound 3\nobjects A\nhom A A : e:0\nmu 1 (A A) : (zz) -> e\nend\n";
        assert!(parse(text).is_err());
    }
}
