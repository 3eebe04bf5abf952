//! Numerical laws of the Hofer toolkit: the flow-transport oracle for the
//! generating Hamiltonian, length additivity, the area-equals-length
//! identity on random paths, and descent safety.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use deltakit::hofer::area::{area_functional, CouplingFormSpec};
use deltakit::hofer::{
    add, arc_distance, cross, descend_family, dot, family_max, generating_hamiltonian, l_plus,
    norm, normalize, optimal_family, perturb_family, rotation_loop, scale, sub, PolePath, Vec3,
};

/// A smooth random path: a base point swept by two incommensurate rotations
/// with seeded axes and rates, densely sampled.
pub fn random_smooth_path(seed: u64, samples: usize) -> PolePath {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let axis1 = normalize([
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
    ]);
    let axis2 = normalize([
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
    ]);
    let rate1: f64 = rng.random_range(0.5..2.5);
    let rate2: f64 = rng.random_range(0.5..2.5);
    let start = normalize([
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
    ]);
    let pts = (0..samples)
        .map(|i| {
            let t = i as f64 / (samples - 1) as f64;
            let p = deltakit::hofer::rotate_about(axis1, rate1 * t, start);
            deltakit::hofer::rotate_about(axis2, rate2 * t.sin(), p)
        })
        .collect();
    PolePath::new(pts, false).unwrap()
}

/// Integrates the flow of the generating Hamiltonian and checks it
/// transports the great circle of the starting pole onto the moving one.
fn flow_transport_deviation(path: &PolePath, circle_points: usize, steps: usize) -> f64 {
    let p0 = path.at(0.0);
    // orthonormal frame of the starting circle
    let seed = if p0[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let e1 = normalize(sub(seed, scale(p0, dot(seed, p0))));
    let e2 = cross(p0, e1);
    let mut points: Vec<Vec3> = (0..circle_points)
        .map(|k| {
            let phi = 2.0 * std::f64::consts::PI * k as f64 / circle_points as f64;
            add(scale(e1, phi.cos()), scale(e2, phi.sin()))
        })
        .collect();
    let field = |t: f64, x: Vec3| -> Vec3 {
        let ham = generating_hamiltonian(path, t.clamp(0.0, 1.0)).unwrap();
        cross(x, ham.angular_velocity())
    };
    let h = 1.0 / steps as f64;
    let mut worst = 0.0f64;
    for s in 0..steps {
        let t = s as f64 * h;
        for x in points.iter_mut() {
            let k1 = field(t, *x);
            let k2 = field(t + 0.5 * h, add(*x, scale(k1, 0.5 * h)));
            let k3 = field(t + 0.5 * h, add(*x, scale(k2, 0.5 * h)));
            let k4 = field(t + h, add(*x, scale(k3, h)));
            let incr = add(add(k1, scale(k2, 2.0)), add(scale(k3, 2.0), k4));
            *x = normalize(add(*x, scale(incr, h / 6.0)));
        }
        let pole = path.at(t + h);
        for x in points.iter() {
            worst = worst.max(dot(*x, pole).abs());
        }
    }
    worst
}

#[test]
fn the_flow_transports_the_circle_along_the_path() {
    let quarter = quarter_rotation(4_000);
    let deviation = flow_transport_deviation(&quarter, 12, 2_000);
    assert!(deviation < 1e-6, "transport deviation {deviation}");
}

#[test]
fn hamiltonian_maximum_equals_pole_speed_on_a_fine_grid() {
    let quarter = quarter_rotation(4_000);
    for t in [0.1, 0.35, 0.62, 0.9] {
        let ham = generating_hamiltonian(&quarter, t).unwrap();
        let (_, grid_max) = ham.sample_grid(3_000);
        assert!(
            (grid_max - ham.speed).abs() < 1e-6,
            "grid max {grid_max} vs speed {}",
            ham.speed
        );
    }
}

#[test]
fn length_is_additive_under_concatenation() {
    let a = quarter_rotation(600);
    let l_a = l_plus(&a).unwrap();
    // continue the rotation a quarter further
    let b = PolePath::new(
        (0..600)
            .map(|i| {
                let t = std::f64::consts::FRAC_PI_2 * (1.0 + i as f64 / 599.0);
                [t.sin(), 0.0, t.cos()]
            })
            .collect(),
        false,
    )
    .unwrap();
    let l_b = l_plus(&b).unwrap();
    let mut joined = a.samples.clone();
    joined.extend_from_slice(&b.samples[1..]);
    let l_ab = l_plus(&PolePath::new(joined, false).unwrap()).unwrap();
    assert!((l_ab - (l_a + l_b)).abs() < 1e-12);
}

#[test]
fn area_equals_length_on_random_paths() {
    for seed in 0..4u64 {
        let path = random_smooth_path(seed, 1024);
        let len = l_plus(&path).unwrap();
        let spec = CouplingFormSpec::new(path, 0.05, 128, 160);
        let area = area_functional(&spec).unwrap();
        assert!(
            (area - len).abs() < 1e-3,
            "seed {seed}: area {area} vs length {len}"
        );
    }
}

#[test]
fn traversing_a_loop_repeatedly_scales_its_length() {
    let one = rotation_loop([1.0, 0.0, 0.0], [0.0, 0.0, 1.0], 256);
    let mut thrice_samples = Vec::new();
    for _ in 0..3 {
        thrice_samples.extend_from_slice(&one.samples);
    }
    let thrice = PolePath { samples: thrice_samples, closed: true };
    let l1 = l_plus(&one).unwrap();
    let l3 = l_plus(&thrice).unwrap();
    assert!((l3 - 3.0 * l1).abs() < 1e-9);
}

#[test]
fn descent_never_increases_the_maximum_and_pins_the_basepoint() {
    let family = optimal_family(1, 64);
    let noisy = perturb_family(&family, 11, 1e-2);
    let (m0, _) = family_max(&noisy).unwrap();
    let (out, report) = descend_family(&noisy, 60, 0.3, 1e-7).unwrap();
    assert!(report.final_max <= m0 + 1e-9);
    for l in &out.loops {
        assert_eq!(l.samples[0], family.basepoint);
    }
}

#[test]
fn padded_families_descend_below_the_optimum_plus_slack() {
    // wiggle each loop to inflate its length well past 2 pi + 1
    let family = optimal_family(0, 96);
    let mut padded = family.clone();
    for l in padded.loops.iter_mut() {
        for (i, s) in l.samples.iter_mut().enumerate().skip(1) {
            let wiggle = 0.35 * ((i as f64) * 2.1).sin();
            let axis = normalize(cross(*s, [0.3, 0.2, 0.9]));
            *s = deltakit::hofer::rotate_about(axis, wiggle, *s);
        }
    }
    padded.mesh_tol = 4.0;
    let (m0, _) = family_max(&padded).unwrap();
    assert!(m0 > 2.0 * std::f64::consts::PI + 1.0, "padded start {m0}");
    let (_, report) = descend_family(&padded, 400, 0.4, 1e-7).unwrap();
    assert!(
        report.final_max < 2.0 * std::f64::consts::PI + 0.1,
        "stalled too high: {}",
        report.final_max
    );
}

#[test]
fn under_resolved_paths_are_rejected() {
    let p = PolePath::new(vec![[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]], false);
    assert!(p.is_err());
    let q = PolePath::new(vec![[0.0, 0.0, 2.0]], false);
    assert!(q.is_err());
}

fn quarter_rotation(samples: usize) -> PolePath {
    let pts = (0..samples)
        .map(|i| {
            let t = std::f64::consts::FRAC_PI_2 * i as f64 / (samples - 1) as f64;
            [t.sin(), 0.0, t.cos()]
        })
        .collect();
    PolePath::new(pts, false).unwrap()
}

#[test]
fn length_dominates_endpoint_distance_on_random_paths() {
    for seed in 10..30u64 {
        let p = random_smooth_path(seed, 256);
        let d = arc_distance(p.samples[0], *p.samples.last().unwrap());
        assert!(l_plus(&p).unwrap() + 1e-12 >= d);
        assert!(norm(p.samples[17]) - 1.0 < 1e-9);
    }
}
