//! Path and family file formats.
//!
//! Path files: one sample per line, "t x y z", parameters ascending. Family
//! files: a triangulation header followed by per-vertex path blocks.

use std::fmt::Write as _;

use thiserror::Error;

use super::{normalize, PolePath, SphereFamily, Vec3};
use crate::report::fmt_f64;

#[derive(Debug, Error, PartialEq)]
#[error("line {line}: {msg}")]
pub struct FormatError {
    pub line: usize,
    pub msg: String,
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError { line, msg: msg.into() })
}

pub fn print_path(path: &PolePath) -> String {
    let mut out = String::new();
    if path.closed {
        out.push_str("# closed\n");
    }
    let m = path.samples.len();
    for (i, s) in path.samples.iter().enumerate() {
        let t = if m == 1 { 0.0 } else { i as f64 / (m - 1) as f64 };
        let _ = writeln!(
            out,
            "{} {} {} {}",
            fmt_f64(t),
            fmt_f64(s[0]),
            fmt_f64(s[1]),
            fmt_f64(s[2])
        );
    }
    out
}

pub fn parse_path(input: &str) -> Result<PolePath, FormatError> {
    let mut samples: Vec<Vec3> = Vec::new();
    let mut closed = false;
    for (ln, raw) in input.lines().enumerate() {
        let line = raw.trim();
        if line == "# closed" {
            closed = true;
            continue;
        }
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let nums: Vec<f64> = line
            .split_whitespace()
            .map(|t| t.parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|_| FormatError { line: ln + 1, msg: "bad number".into() })?;
        if nums.len() != 4 {
            return err(ln + 1, "expected 't x y z'");
        }
        samples.push(normalize([nums[1], nums[2], nums[3]]));
    }
    PolePath::new(samples, closed).map_err(|e| FormatError { line: 0, msg: e.to_string() })
}

pub fn print_family(family: &SphereFamily) -> String {
    let mut out = String::new();
    out.push_str("sphere_family\n");
    let _ = writeln!(
        out,
        "basepoint {} {} {}",
        fmt_f64(family.basepoint[0]),
        fmt_f64(family.basepoint[1]),
        fmt_f64(family.basepoint[2])
    );
    let _ = writeln!(out, "mesh_tol {}", fmt_f64(family.mesh_tol));
    let _ = writeln!(out, "vertices {}", family.vertices.len());
    let _ = writeln!(out, "triangles {}", family.triangles.len());
    for v in &family.vertices {
        let _ = writeln!(out, "v {} {} {}", fmt_f64(v[0]), fmt_f64(v[1]), fmt_f64(v[2]));
    }
    for t in &family.triangles {
        let _ = writeln!(out, "t {} {} {}", t[0], t[1], t[2]);
    }
    for (i, l) in family.loops.iter().enumerate() {
        let _ = writeln!(out, "path {i}");
        for s in &l.samples {
            let _ = writeln!(out, "{} {} {}", fmt_f64(s[0]), fmt_f64(s[1]), fmt_f64(s[2]));
        }
        out.push_str("end_path\n");
    }
    out.push_str("end\n");
    out
}

pub fn parse_family(input: &str) -> Result<SphereFamily, FormatError> {
    let mut lines = input.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let Some((_, header)) = lines.next() else {
        return err(0, "empty family file");
    };
    if header != "sphere_family" {
        return err(1, "expected header 'sphere_family'");
    }
    let mut basepoint: Option<Vec3> = None;
    let mut mesh_tol = 0.0;
    let mut vertices: Vec<Vec3> = Vec::new();
    let mut triangles: Vec<[usize; 3]> = Vec::new();
    let mut loops: Vec<PolePath> = Vec::new();
    let mut current_path: Option<Vec<Vec3>> = None;
    let mut ended = false;
    for (ln, line) in lines {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if ended {
            return err(ln, "content after end");
        }
        let mut tokens = line.split_whitespace();
        let head = tokens.next().unwrap();
        match head {
            "basepoint" => {
                let nums = parse_floats(&mut tokens, 3, ln)?;
                basepoint = Some(normalize([nums[0], nums[1], nums[2]]));
            }
            "mesh_tol" => {
                mesh_tol = parse_floats(&mut tokens, 1, ln)?[0];
            }
            "vertices" | "triangles" => { /* counts are advisory */ }
            "v" => {
                let nums = parse_floats(&mut tokens, 3, ln)?;
                vertices.push(normalize([nums[0], nums[1], nums[2]]));
            }
            "t" => {
                let a: Vec<usize> = (0..3)
                    .map(|_| {
                        tokens
                            .next()
                            .and_then(|t| t.parse().ok())
                            .ok_or(FormatError { line: ln, msg: "bad triangle".into() })
                    })
                    .collect::<Result<_, _>>()?;
                triangles.push([a[0], a[1], a[2]]);
            }
            "path" => {
                if current_path.is_some() {
                    return err(ln, "nested path block");
                }
                current_path = Some(Vec::new());
            }
            "end_path" => {
                let Some(samples) = current_path.take() else {
                    return err(ln, "end_path outside a path block");
                };
                let path = PolePath::new(samples, true)
                    .map_err(|e| FormatError { line: ln, msg: e.to_string() })?;
                loops.push(path);
            }
            "end" => ended = true,
            _ => {
                // inside a path block: "x y z" sample
                let Some(samples) = current_path.as_mut() else {
                    return err(ln, format!("unknown directive '{head}'"));
                };
                let first: f64 = head
                    .parse()
                    .map_err(|_| FormatError { line: ln, msg: "bad number".into() })?;
                let rest = parse_floats(&mut tokens, 2, ln)?;
                samples.push(normalize([first, rest[0], rest[1]]));
            }
        }
    }
    if !ended {
        return err(0, "missing 'end'");
    }
    let basepoint = basepoint.ok_or(FormatError { line: 0, msg: "missing basepoint".into() })?;
    if loops.len() != vertices.len() {
        return err(0, "one path block per vertex required");
    }
    let family = SphereFamily { vertices, triangles, loops, basepoint, mesh_tol };
    family
        .validate()
        .map_err(|e| FormatError { line: 0, msg: e.to_string() })?;
    Ok(family)
}

fn parse_floats<'a>(
    tokens: &mut impl Iterator<Item = &'a str>,
    n: usize,
    ln: usize,
) -> Result<Vec<f64>, FormatError> {
    (0..n)
        .map(|_| {
            tokens
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or(FormatError { line: ln, msg: "bad number".into() })
        })
        .collect()
}
