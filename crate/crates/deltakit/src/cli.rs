//! Command-line dispatcher.
//!
//! One thin binary over the library: subcommands `simplicial`, `kan`,
//! `spheres`, `ainf`, `nerve`, `maslov`, `hofer`. Reports are deterministic
//! (stable ordering, 9-significant-digit floats). Exit codes: 0 success,
//! 1 domain error, 2 usage error. Every error prints one machine-parsable
//! line `error: ...`.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::ainf::{self, fixtures};
use crate::config::RunConfig;
use crate::hofer;
use crate::kan::{self, homology::Ring};
use crate::maslov;
use crate::nerve;
use crate::report::fmt_f64;
use crate::simplicial::{self, SimplicialSet};
use crate::spheres;

#[derive(Parser)]
#[command(name = "deltakit", disable_help_subcommand = true)]
struct Cli {
    /// optional key = value configuration file
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simplicial set constructors and checks
    Simplicial {
        #[command(subcommand)]
        cmd: SimplicialCmd,
    },
    /// Kan condition, completion, homology and pi1
    Kan {
        #[command(subcommand)]
        cmd: KanCmd,
    },
    /// Sphere and disk models
    Spheres {
        #[command(subcommand)]
        cmd: SpheresCmd,
    },
    /// A-infinity categories over F2
    Ainf {
        #[command(subcommand)]
        cmd: AinfCmd,
    },
    /// The A-infinity nerve and its obstruction
    Nerve {
        #[command(subcommand)]
        cmd: NerveCmd,
    },
    /// Maslov numbers and index arithmetic
    Maslov {
        #[command(subcommand)]
        cmd: MaslovCmd,
    },
    /// Hofer lengths, coupling-form areas and the family minimax
    Hofer {
        #[command(subcommand)]
        cmd: HoferCmd,
    },
}

#[derive(Subcommand)]
enum SimplicialCmd {
    /// Build the standard n-simplex
    Standard {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the boundary of the n-simplex
    Boundary {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the horn obtained by omitting face k
    Horn {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cone on a model file
    Cone {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Product with the interval
    ProductInterval {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive simplicial-identity check
    Validate {
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Euler characteristic from nondegenerate cells
    Euler {
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum KanCmd {
    /// Enumerate horn problems and report the first unfillable one
    Check {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        max_dim: usize,
        #[arg(long)]
        budget: Option<u64>,
        /// print one line per horn problem
        #[arg(long)]
        lines: bool,
    },
    /// Budgeted Kan completion
    Complete {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        max_dim: usize,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact homology of the normalized chain complex
    Homology {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long, default_value = "z")]
        ring: String,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    /// Edge-path presentation of the fundamental group
    Pi1 {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        basepoint: Option<String>,
    },
}

#[derive(Subcommand)]
enum SpheresCmd {
    /// Build the three models, write them out, and report their homology
    Build {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum AinfCmd {
    /// Check the A-infinity relations
    Check {
        #[arg(long)]
        category: Option<PathBuf>,
        #[arg(long)]
        max_arity: Option<usize>,
    },
    /// Dimensions of the homology category
    Homology {
        #[arg(long)]
        category: Option<PathBuf>,
    },
    /// Decide whether an element is a c-isomorphism
    Ciso {
        #[arg(long)]
        category: Option<PathBuf>,
        #[arg(long)]
        src: String,
        #[arg(long)]
        dst: String,
        /// element as a '+'-joined sum of basis names
        #[arg(long)]
        element: String,
    },
    /// Generate a seeded obstruction fixture
    GenFixture {
        #[arg(long)]
        seed: u64,
        /// target correlator value (0 or 1)
        #[arg(long)]
        correlator: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum NerveCmd {
    /// Enumerate the nerve and report nondegenerate cell counts
    Build {
        #[arg(long)]
        category: Option<PathBuf>,
        #[arg(long)]
        max_dim: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximal Kan subcomplex of the nerve
    KanSub {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        max_dim: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The 4-simplex obstruction: correlator value and simplex existence
    Obstruct {
        #[arg(long)]
        category: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SignArg {
    /// orientation convention (the default makes a counterclockwise
    /// degree-1 loop count -2)
    #[arg(long, default_value = "negative")]
    sign: String,
}

#[derive(Subcommand)]
enum MaslovCmd {
    /// Maslov number of a closed loop from an angle file
    Loop {
        #[arg(long)]
        angles: Option<PathBuf>,
        #[command(flatten)]
        sign: SignArg,
    },
    /// Fredholm index r * chi + maslov
    Index {
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        #[arg(long, allow_hyphen_values = true)]
        chi: i64,
        #[arg(long, allow_hyphen_values = true)]
        maslov: i64,
    },
    /// Expected dimension of the arity-d moduli problem
    Dim {
        #[arg(long)]
        d: usize,
        #[arg(long, allow_hyphen_values = true)]
        maslov: i64,
        /// comma-separated generator degrees
        #[arg(long, allow_hyphen_values = true)]
        degs: String,
    },
}

#[derive(Subcommand)]
enum HoferCmd {
    /// Positive Hofer length of a pole path
    Lplus {
        #[arg(long)]
        path: Option<PathBuf>,
    },
    /// Coupling-form area of the disk over a path
    Area {
        #[arg(long)]
        path: Option<PathBuf>,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long)]
        fiber_grid: Option<usize>,
    },
    /// Family maximum, optionally after curve-shortening descent
    Minimax {
        #[arg(long)]
        family: Option<PathBuf>,
        #[arg(long)]
        descend: Option<usize>,
        #[arg(long, default_value_t = 0.3)]
        step_size: f64,
    },
}

/// Runs one invocation; returns the process exit code.
pub fn dispatch(args: &[String], out: &mut dyn Write) -> i32 {
    let mut argv = vec!["deltakit".to_string()];
    argv.extend(args.iter().cloned());
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            // help/version requests are not errors
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let _ = writeln!(out, "error: usage: {}", first_line(&e.to_string()));
            return 2;
        }
    };
    let config = match &cli.config {
        None => RunConfig::default(),
        Some(path) => match RunConfig::from_file(path) {
            Ok(c) => c,
            Err(e) => {
                let _ = writeln!(out, "error: config: {e}");
                return 1;
            }
        },
    };
    match run(cli.command, &config, out) {
        Ok(()) => 0,
        Err(msg) => {
            let _ = writeln!(out, "error: {}", first_line(&msg));
            1
        }
    }
}

fn first_line(s: &str) -> &str {
    s.lines().next().unwrap_or("")
}

type CmdResult = Result<(), String>;

fn run(cmd: Command, config: &RunConfig, out: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Simplicial { cmd } => run_simplicial(cmd, config, out),
        Command::Kan { cmd } => run_kan(cmd, config, out),
        Command::Spheres { cmd } => run_spheres(cmd, config, out),
        Command::Ainf { cmd } => run_ainf(cmd, config, out),
        Command::Nerve { cmd } => run_nerve(cmd, config, out),
        Command::Maslov { cmd } => run_maslov(cmd, config, out),
        Command::Hofer { cmd } => run_hofer(cmd, config, out),
    }
}

/// A subcommand's input path: the flag, or the config fallback.
fn resolve_input(flag: Option<PathBuf>, config: &RunConfig) -> Result<PathBuf, String> {
    flag.or_else(|| config.input.clone())
        .ok_or_else(|| "missing input path (pass the flag or set 'input' in the config)".into())
}

fn resolve_output(flag: Option<PathBuf>, config: &RunConfig) -> Option<PathBuf> {
    flag.or_else(|| config.output.clone())
}

fn estr(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn read_model(path: &Path) -> Result<SimplicialSet, String> {
    let text = std::fs::read_to_string(path).map_err(estr)?;
    simplicial::parse(&text).map_err(estr)
}

fn emit_model(set: &SimplicialSet, out: &mut dyn Write, dest: &Option<PathBuf>) -> CmdResult {
    let text = simplicial::print(set);
    match dest {
        Some(path) => std::fs::write(path, text).map_err(estr),
        None => out.write_all(text.as_bytes()).map_err(estr),
    }
}

fn cell_summary(set: &SimplicialSet) -> String {
    let top = if set.is_cell_empty() { 0 } else { set.max_dim() };
    let counts: Vec<String> =
        (0..=top).map(|d| format!("{}:{}", d, set.cell_count(d))).collect();
    format!(
        "cells {} (total {}) euler {}",
        counts.join(" "),
        set.nondegenerate_cell_count(),
        set.euler_characteristic()
    )
}

fn run_simplicial(cmd: SimplicialCmd, config: &RunConfig, out: &mut dyn Write) -> CmdResult {
    match cmd {
        SimplicialCmd::Standard { n, out: dest } => {
            let set = simplicial::standard_simplex(n).map_err(estr)?;
            writeln!(out, "{}", cell_summary(&set)).map_err(estr)?;
            emit_model(&set, out, &resolve_output(dest, config))
        }
        SimplicialCmd::Boundary { n, out: dest } => {
            let (set, _) = simplicial::boundary(n).map_err(estr)?;
            writeln!(out, "{}", cell_summary(&set)).map_err(estr)?;
            emit_model(&set, out, &resolve_output(dest, config))
        }
        SimplicialCmd::Horn { n, k, out: dest } => {
            let (set, _) = simplicial::horn(n, k).map_err(estr)?;
            writeln!(out, "{}", cell_summary(&set)).map_err(estr)?;
            emit_model(&set, out, &resolve_output(dest, config))
        }
        SimplicialCmd::Cone { input, out: dest } => {
            let base = read_model(&resolve_input(input, config)?)?;
            let result = simplicial::cone(&base).map_err(estr)?;
            writeln!(out, "{}", cell_summary(&result.cone)).map_err(estr)?;
            emit_model(&result.cone, out, &resolve_output(dest, config))
        }
        SimplicialCmd::ProductInterval { input, out: dest } => {
            let base = read_model(&resolve_input(input, config)?)?;
            let result = simplicial::product_with_interval(&base).map_err(estr)?;
            writeln!(out, "{}", cell_summary(&result.product)).map_err(estr)?;
            emit_model(&result.product, out, &resolve_output(dest, config))
        }
        SimplicialCmd::Validate { input } => {
            let set = read_model(&resolve_input(input, config)?)?;
            let report = set.validate();
            writeln!(out, "{report}").map_err(estr)?;
            if report.is_valid() {
                Ok(())
            } else {
                Err("validation failed".into())
            }
        }
        SimplicialCmd::Euler { input } => {
            let set = read_model(&resolve_input(input, config)?)?;
            writeln!(out, "{}", set.euler_characteristic()).map_err(estr)
        }
    }
}

fn run_kan(cmd: KanCmd, config: &RunConfig, out: &mut dyn Write) -> CmdResult {
    match cmd {
        KanCmd::Check { input, max_dim, budget, lines } => {
            let set = read_model(&resolve_input(input, config)?)?;
            let budget = budget.unwrap_or(config.kan_budget);
            if lines {
                // one line per horn problem, capped by the budget
                let mut seen = 0u64;
                let mut lines_out: Vec<String> = Vec::new();
                kan::visit_horns(&set, max_dim, &mut |p| {
                    seen += 1;
                    if seen > budget {
                        return false;
                    }
                    let filled = kan::find_filler(&set, p).is_some();
                    lines_out.push(p.report_line(&set, filled));
                    true
                });
                for l in lines_out {
                    writeln!(out, "{l}").map_err(estr)?;
                }
            }
            let report = kan::is_kan(&set, max_dim, budget);
            writeln!(out, "{}", report.render(&set)).map_err(estr)
        }
        KanCmd::Complete { input, max_dim, budget, out: dest } => {
            let set = read_model(&resolve_input(input, config)?)?;
            let (completed, _, report) =
                kan::kan_complete(&set, max_dim, budget.unwrap_or(config.kan_budget));
            writeln!(
                out,
                "attachments {} certified {}",
                report.attachments, report.certified
            )
            .map_err(estr)?;
            writeln!(out, "{}", cell_summary(&completed)).map_err(estr)?;
            emit_model(&completed, out, &resolve_output(dest, config))
        }
        KanCmd::Homology { input, ring, max_degree } => {
            let set = read_model(&resolve_input(input, config)?)?;
            let ring = match ring.as_str() {
                "z" | "Z" => Ring::Integers,
                "f2" | "F2" => Ring::F2,
                other => return Err(format!("unknown ring '{other}'")),
            };
            let groups = kan::homology::homology(&set, max_degree, ring);
            for (k, g) in groups.iter().enumerate() {
                writeln!(out, "H_{k} = {g}").map_err(estr)?;
            }
            Ok(())
        }
        KanCmd::Pi1 { input, basepoint } => {
            let set = read_model(&resolve_input(input, config)?)?;
            let bp = match basepoint {
                Some(name) => set
                    .cell_by_name(0, &name)
                    .ok_or(format!("no vertex named {name}"))?,
                None => crate::simplicial::Cell { dim: 0, idx: 0 },
            };
            let p = kan::pi1::pi1_presentation(&set, bp, 1_000).map_err(estr)?;
            writeln!(out, "{p}").map_err(estr)
        }
    }
}

fn run_spheres(cmd: SpheresCmd, config: &RunConfig, out: &mut dyn Write) -> CmdResult {
    match cmd {
        SpheresCmd::Build { out: dir } => {
            let dir = resolve_output(dir, config)
                .ok_or("missing output directory (pass --out or set 'output')".to_string())?;
            std::fs::create_dir_all(&dir).map_err(estr)?;
            let s3 = spheres::build_s3_mod().map_err(estr)?;
            let d4 = spheres::build_d4_mod().map_err(estr)?;
            let bundle = spheres::build_s4_mod().map_err(estr)?;
            for (name, set) in
                [("s3_mod", &s3), ("d4_mod", &d4), ("s4_mod", &bundle.s4)]
            {
                let path = dir.join(format!("{name}.sset"));
                std::fs::write(&path, simplicial::print(set)).map_err(estr)?;
                writeln!(out, "{name}: {}", cell_summary(set)).map_err(estr)?;
                let groups = kan::homology::homology(set, 4, Ring::Integers);
                for (k, g) in groups.iter().enumerate() {
                    writeln!(out, "{name}: H_{k} = {g}").map_err(estr)?;
                }
            }
            Ok(())
        }
    }
}

fn read_category(path: &Path) -> Result<ainf::AInfinityCategory, String> {
    let text = std::fs::read_to_string(path).map_err(estr)?;
    ainf::format::parse(&text).map_err(estr)
}

fn run_ainf(cmd: AinfCmd, config: &RunConfig, out: &mut dyn Write) -> CmdResult {
    match cmd {
        AinfCmd::Check { category, max_arity } => {
            let cat = read_category(&resolve_input(category, config)?)?;
            let arity = max_arity.unwrap_or(cat.arity_bound);
            let report = ainf::check_relations(&cat, arity);
            writeln!(out, "{report}").map_err(estr)?;
            if report.passed() {
                Ok(())
            } else {
                Err("relations fail".into())
            }
        }
        AinfCmd::Homology { category } => {
            let cat = read_category(&resolve_input(category, config)?)?;
            let hc = ainf::homology_category(&cat).map_err(estr)?;
            for (&(src, dst), space) in hc.spaces.iter() {
                writeln!(
                    out,
                    "H hom({}, {}) dim {}",
                    cat.objects[src], cat.objects[dst], space.dim_hom
                )
                .map_err(estr)?;
            }
            Ok(())
        }
        AinfCmd::Ciso { category, src, dst, element } => {
            let cat = read_category(&resolve_input(category, config)?)?;
            let s = cat.object_index(&src).map_err(estr)?;
            let d = cat.object_index(&dst).map_err(estr)?;
            let hom = cat.hom(s, d).ok_or("zero hom".to_string())?;
            let mut mask = 0u64;
            if element != "0" {
                for part in element.split('+') {
                    let idx = hom
                        .index_of(part.trim())
                        .ok_or(format!("unknown basis name '{}'", part.trim()))?;
                    mask ^= 1 << idx;
                }
            }
            let verdict = ainf::is_c_isomorphism(&cat, s, d, mask).map_err(estr)?;
            writeln!(out, "c_isomorphism={verdict}").map_err(estr)
        }
        AinfCmd::GenFixture { seed, correlator, out: dest } => {
            let fixture = fixtures::obstruction_fixture(seed, correlator == 0);
            let text = ainf::format::print(&fixture.category);
            match resolve_output(dest, config) {
                Some(path) => std::fs::write(path, text).map_err(estr),
                None => out.write_all(text.as_bytes()).map_err(estr),
            }
        }
    }
}

fn run_nerve(cmd: NerveCmd, config: &RunConfig, out: &mut dyn Write) -> CmdResult {
    match cmd {
        NerveCmd::Build { category, max_dim, out: dest } => {
            let cat = read_category(&resolve_input(category, config)?)?;
            let nc = nerve::nerve(&cat, max_dim).map_err(estr)?;
            let set = nc.to_simplicial_set();
            writeln!(out, "{}", cell_summary(&set)).map_err(estr)?;
            emit_model(&set, out, &resolve_output(dest, config))
        }
        NerveCmd::KanSub { input, max_dim, out: dest } => {
            let cat = read_category(&resolve_input(input, config)?)?;
            let nc = nerve::nerve(&cat, max_dim).map_err(estr)?;
            let sub = nc.maximal_kan_subcomplex().map_err(estr)?;
            let set = sub.to_simplicial_set();
            writeln!(out, "{}", cell_summary(&set)).map_err(estr)?;
            emit_model(&set, out, &resolve_output(dest, config))
        }
        NerveCmd::Obstruct { category } => {
            let cat = read_category(&resolve_input(category, config)?)?;
            let fixture = fixture_from_category(cat)?;
            let outcome = nerve::obstruction_check(&fixture).map_err(estr)?;
            writeln!(
                out,
                "correlator={} simplex_exists={}",
                outcome.correlator, outcome.simplex_exists
            )
            .map_err(estr)
        }
    }
}

/// Recovers the distinguished data of an obstruction fixture from the tags
/// of a category file.
pub fn fixture_from_category(
    cat: ainf::AInfinityCategory,
) -> Result<fixtures::ObstructionFixture, String> {
    let mut gamma = [[0u64; 5]; 5];
    if cat.objects.len() != 5 {
        return Err("obstruction fixtures have five objects".into());
    }
    for i in 0..5usize {
        for j in i + 1..5 {
            let tag = cat
                .tags
                .get(&format!("gamma{i}{j}"))
                .ok_or(format!("missing tag gamma{i}{j}"))?;
            let hom = cat.hom(i, j).ok_or(format!("missing hom L{i} L{j}"))?;
            let idx = hom
                .index_of(tag)
                .ok_or(format!("tag gamma{i}{j} names no basis element"))?;
            gamma[i][j] = 1 << idx;
        }
    }
    let pairing_name =
        cat.tags.get("pairing").ok_or("missing tag pairing".to_string())?;
    let hom04 = cat.hom(0, 4).ok_or("missing hom L0 L4".to_string())?;
    let mut pairing = 0u64;
    for part in pairing_name.split('+') {
        let idx = hom04
            .index_of(part.trim())
            .ok_or(format!("pairing names unknown element '{}'", part.trim()))?;
        pairing ^= 1 << idx;
    }
    Ok(fixtures::ObstructionFixture { category: cat, gamma, pairing, correlator_zero: false })
}

fn run_maslov(cmd: MaslovCmd, config: &RunConfig, out: &mut dyn Write) -> CmdResult {
    match cmd {
        MaslovCmd::Loop { angles, sign } => {
            let text =
                std::fs::read_to_string(resolve_input(angles, config)?).map_err(estr)?;
            let mut samples = Vec::new();
            let nums: Vec<f64> = text
                .split_whitespace()
                .map(|t| t.parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|_| "bad number in angle file".to_string())?;
            if nums.len() % 2 != 0 || nums.is_empty() {
                return Err("angle files hold whitespace-separated (t, theta) pairs".into());
            }
            for pair in nums.chunks(2) {
                samples.push((pair[0], pair[1]));
            }
            let sign = match sign.sign.as_str() {
                "negative" => maslov::OrientationSign::Negative,
                "positive" => maslov::OrientationSign::Positive,
                other => return Err(format!("unknown sign '{other}'")),
            };
            let l = maslov::LagrangianLoop::new(samples, true)
                .map_err(estr)?
                .with_sign(sign);
            let m = maslov::maslov_of_loop(&l).map_err(estr)?;
            writeln!(out, "{m}").map_err(estr)
        }
        MaslovCmd::Index { r, chi, maslov: m } => {
            writeln!(out, "{}", maslov::fredholm_index(r, chi, m)).map_err(estr)
        }
        MaslovCmd::Dim { d, maslov: m, degs } => {
            let degrees: Vec<i64> = degs
                .split(',')
                .map(|t| t.trim().parse::<i64>())
                .collect::<Result<_, _>>()
                .map_err(|_| "bad degree list".to_string())?;
            if degrees.len() != d {
                return Err(format!("expected {d} degrees, got {}", degrees.len()));
            }
            let dim = maslov::expected_dimension(d, m, &degrees).map_err(estr)?;
            writeln!(out, "{dim}").map_err(estr)
        }
    }
}

fn run_hofer(cmd: HoferCmd, config: &RunConfig, out: &mut dyn Write) -> CmdResult {
    match cmd {
        HoferCmd::Lplus { path } => {
            let text =
                std::fs::read_to_string(resolve_input(path, config)?).map_err(estr)?;
            let p = hofer::format::parse_path(&text).map_err(estr)?;
            let len = hofer::l_plus(&p).map_err(estr)?;
            writeln!(out, "{}", fmt_f64(config.lplus_scale * len)).map_err(estr)
        }
        HoferCmd::Area { path, delta, grid, fiber_grid } => {
            let text =
                std::fs::read_to_string(resolve_input(path, config)?).map_err(estr)?;
            let p = hofer::format::parse_path(&text).map_err(estr)?;
            let mut spec = hofer::area::CouplingFormSpec::new(
                p,
                delta.unwrap_or(config.delta),
                grid.unwrap_or(config.grid),
                fiber_grid.unwrap_or(config.fiber_grid),
            );
            spec.holonomy_tol = config.tolerance("holonomy");
            let area = hofer::area::area_functional(&spec).map_err(estr)?;
            writeln!(out, "{}", fmt_f64(config.lplus_scale * area)).map_err(estr)
        }
        HoferCmd::Minimax { family, descend, step_size } => {
            let text =
                std::fs::read_to_string(resolve_input(family, config)?).map_err(estr)?;
            let fam = hofer::format::parse_family(&text).map_err(estr)?;
            let (max0, argmax) = hofer::family_max(&fam).map_err(estr)?;
            writeln!(
                out,
                "family_max {} at vertex {argmax}",
                fmt_f64(config.lplus_scale * max0)
            )
            .map_err(estr)?;
            if let Some(steps) = descend {
                let stall = config.tolerance("stall");
                let (_, report) =
                    hofer::descend_family(&fam, steps, step_size, stall).map_err(estr)?;
                writeln!(
                    out,
                    "descent steps {} stalled {} final_max {}",
                    report.steps_taken,
                    report.stalled,
                    fmt_f64(config.lplus_scale * report.final_max)
                )
                .map_err(estr)?;
                writeln!(
                    out,
                    "note: the stall value exhibits the minimax; it is not a \
                     proof of the lower bound"
                )
                .map_err(estr)?;
            }
            Ok(())
        }
    }
}
