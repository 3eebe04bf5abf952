//! Dispatcher behavior: deterministic byte-identical reports, exit codes,
//! and single-line machine-parsable errors.

use deltakit::cli::dispatch;

fn run(args: &[&str]) -> (i32, String) {
    let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    let mut out = Vec::new();
    let code = dispatch(&args, &mut out);
    (code, String::from_utf8(out).unwrap())
}

#[test]
fn identical_invocations_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    let (c1, out1) = run(&["spheres", "build", "--out", a.to_str().unwrap()]);
    let (c2, out2) = run(&["spheres", "build", "--out", b.to_str().unwrap()]);
    assert_eq!(c1, 0);
    assert_eq!(c2, 0);
    let norm1 = out1.replace(a.to_str().unwrap(), "DIR");
    let norm2 = out2.replace(b.to_str().unwrap(), "DIR");
    assert_eq!(norm1, norm2);
    for name in ["s3_mod.sset", "d4_mod.sset", "s4_mod.sset"] {
        let f1 = std::fs::read(a.join(name)).unwrap();
        let f2 = std::fs::read(b.join(name)).unwrap();
        assert_eq!(f1, f2, "{name}");
    }
}

#[test]
fn sphere_build_report_names_h4() {
    let tmp = tempfile::tempdir().unwrap();
    let (code, out) = run(&["spheres", "build", "--out", tmp.path().join("m").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("s4_mod: H_4 = Z"), "{out}");
    assert!(out.contains("s3_mod: H_3 = Z"));
}

#[test]
fn usage_errors_exit_2() {
    let (code, out) = run(&["frobnicate"]);
    assert_eq!(code, 2);
    assert_eq!(out.lines().count(), 1);
    assert!(out.starts_with("error: "));

    let (code, _) = run(&["maslov", "index", "--r", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn domain_errors_exit_1_with_one_line() {
    let (code, out) = run(&["hofer", "lplus", "--path", "/nonexistent/path.poles"]);
    assert_eq!(code, 1);
    assert_eq!(out.lines().count(), 1);
    assert!(out.starts_with("error: "));
}

#[test]
fn index_and_dimension_arithmetic() {
    assert_eq!(run(&["maslov", "index", "--r", "1", "--chi", "1", "--maslov", "-2"]), (0, "-1\n".into()));
    assert_eq!(run(&["maslov", "index", "--r", "2", "--chi", "0", "--maslov", "4"]), (0, "4\n".into()));
    assert_eq!(
        run(&["maslov", "dim", "--d", "4", "--maslov", "-2", "--degs", "1,1,1,1"]),
        (0, "1\n".into())
    );
}

#[test]
fn obstruct_prints_the_fixed_report_shape() {
    let (code, out) = run(&[
        "nerve",
        "obstruct",
        "--category",
        concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/obstruction_k1.acat"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, "correlator=1 simplex_exists=false\n");
    let (code, out) = run(&[
        "nerve",
        "obstruct",
        "--category",
        concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/obstruction_k0.acat"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, "correlator=0 simplex_exists=true\n");
}

#[test]
fn model_files_round_trip_through_the_cli() {
    let tmp = tempfile::tempdir().unwrap();
    let model = tmp.path().join("triangle.sset");
    let (code, _) = run(&["simplicial", "standard", "--n", "2", "--out", model.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (code, out) = run(&["simplicial", "validate", "--in", model.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out, "valid\n");
    let (code, out) = run(&["simplicial", "euler", "--in", model.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out, "1\n");
    let (code, out) = run(&["kan", "homology", "--in", model.to_str().unwrap(), "--max-degree", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out, "H_0 = Z\nH_1 = 0\nH_2 = 0\n");
}

#[test]
fn kan_check_reports_horn_lines() {
    let tmp = tempfile::tempdir().unwrap();
    let model = tmp.path().join("interval.sset");
    run(&["simplicial", "standard", "--n", "1", "--out", model.to_str().unwrap()]);
    let (code, out) = run(&[
        "kan", "check", "--in", model.to_str().unwrap(), "--max-dim", "2", "--lines",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains(" : filled"));
    assert!(out.contains(" : unfilled"));
    assert!(out.lines().any(|l| l.starts_with("Λ^")));
}

#[test]
fn nerve_and_completion_outputs_are_deterministic() {
    let tmp = tempfile::tempdir().unwrap();
    let fixture = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/obstruction_k0.acat");
    let n1 = tmp.path().join("n1.sset");
    let n2 = tmp.path().join("n2.sset");
    for out in [&n1, &n2] {
        let (code, _) = run(&[
            "nerve", "build", "--category", fixture, "--max-dim", "2", "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
    }
    assert_eq!(std::fs::read(&n1).unwrap(), std::fs::read(&n2).unwrap());

    // completion output of the circle model is reproducible too
    let circle = tmp.path().join("circle.sset");
    std::fs::write(
        &circle,
        "simplicial_set\ndimension_bound 6\ndim 0 : v\ndim 1 : e\nface e.0 = v\nface e.1 = v\nend\n",
    )
    .unwrap();
    let c1 = tmp.path().join("c1.sset");
    let c2 = tmp.path().join("c2.sset");
    for out in [&c1, &c2] {
        let (code, _) = run(&[
            "kan", "complete", "--in", circle.to_str().unwrap(), "--max-dim", "2",
            "--budget", "12", "--out", out.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
    }
    assert_eq!(std::fs::read(&c1).unwrap(), std::fs::read(&c2).unwrap());
}

#[test]
fn golden_sphere_models_match_the_builders() {
    let golden_dir = concat!(env!("CARGO_MANIFEST_DIR"), "/golden");
    let tmp = tempfile::tempdir().unwrap();
    run(&["spheres", "build", "--out", tmp.path().to_str().unwrap()]);
    for name in ["s3_mod.sset", "d4_mod.sset", "s4_mod.sset"] {
        let fresh = std::fs::read_to_string(tmp.path().join(name)).unwrap();
        let golden = std::fs::read_to_string(format!("{golden_dir}/{name}")).unwrap();
        assert_eq!(fresh, golden, "golden file {name} out of date");
    }
}

#[test]
fn angle_and_path_files_drive_the_binary_surface() {
    let tmp = tempfile::tempdir().unwrap();
    // counterclockwise degree-1 loop as (t, theta) pairs
    let angles = tmp.path().join("loop.angles");
    let pi = std::f64::consts::PI;
    std::fs::write(&angles, format!("0 0\n0.25 {}\n0.5 {}\n1 {pi}\n", pi / 4.0, pi / 2.0)).unwrap();
    let (code, out) = run(&["maslov", "loop", "--angles", angles.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, "-2\n"));
    let (_, out) = run(&[
        "maslov", "loop", "--angles", angles.to_str().unwrap(), "--sign", "positive",
    ]);
    assert_eq!(out, "2\n");

    // quarter rotation pole path
    let poles = tmp.path().join("quarter.poles");
    let mut text = String::new();
    for i in 0..2000 {
        let t = i as f64 / 1999.0;
        let a = pi / 2.0 * t;
        text.push_str(&format!("{t} {} 0 {}\n", a.sin(), a.cos()));
    }
    std::fs::write(&poles, text).unwrap();
    let (code, out) = run(&["hofer", "lplus", "--path", poles.to_str().unwrap()]);
    assert_eq!(code, 0);
    let len: f64 = out.trim().parse().unwrap();
    assert!((len - pi / 2.0).abs() < 1e-6);
}

#[test]
fn config_file_supplies_fallback_paths_and_scale() {
    let tmp = tempfile::tempdir().unwrap();
    let fixture = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/obstruction_k0.acat");
    let conf = tmp.path().join("run.conf");
    std::fs::write(&conf, format!("input = {fixture}\n")).unwrap();
    let (code, out) = run(&["--config", conf.to_str().unwrap(), "nerve", "obstruct"]);
    assert_eq!(code, 0);
    assert_eq!(out, "correlator=0 simplex_exists=true\n");
    // missing input without the config is a domain error
    let (code, out) = run(&["nerve", "obstruct"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("error: "));
}

#[test]
fn config_seed_controls_fixture_generation() {
    let tmp = tempfile::tempdir().unwrap();
    let f1 = tmp.path().join("f1.acat");
    let f2 = tmp.path().join("f2.acat");
    let f3 = tmp.path().join("f3.acat");
    run(&["ainf", "gen-fixture", "--seed", "5", "--correlator", "1", "--out", f1.to_str().unwrap()]);
    run(&["ainf", "gen-fixture", "--seed", "5", "--correlator", "1", "--out", f2.to_str().unwrap()]);
    run(&["ainf", "gen-fixture", "--seed", "6", "--correlator", "1", "--out", f3.to_str().unwrap()]);
    let a = std::fs::read(&f1).unwrap();
    let b = std::fs::read(&f2).unwrap();
    let c = std::fs::read(&f3).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
}
