//! The coupling-form area functional on the disk.
//!
//! The coupling form `omega - d(eta(rad) * H dtheta)` induces the connection
//! whose theta-transport is the flow of eta(rad) * X_H; its curvature over a
//! (rad, theta) plaquette is the zero-mean fiber function
//! `eta'(rad) * H(x, theta)`. The area functional integrates the fiberwise
//! maximum of the curvature over the disk, which reproduces the positive
//! Hofer length of the underlying path: the rad-profile telescopes to
//! eta(1) - eta(0) = 1 and the fiber maximum at angle theta is the pole
//! speed.
//!
//! Curvature is taken per plaquette from the infinitesimal holonomy
//! (difference of the transport generators on the two rad-edges); a sampled
//! check integrates the actual plaquette holonomy and verifies it against
//! the curvature prediction, rejecting grids whose residual is above
//! tolerance.

use super::{
    add, cross, dot, generating_hamiltonian, scale, sub, GeneratingHamiltonian, HoferError,
    PolePath, Vec3,
};

/// The rad-profile: rad^2 below 1 - 2*delta, constantly 1 above 1 - delta,
/// and a monotone C^1 cubic in between.
#[derive(Clone, Debug, PartialEq)]
pub struct EtaProfile {
    pub delta: f64,
}

impl EtaProfile {
    pub fn new(delta: f64) -> Self {
        assert!(delta > 0.0 && delta < 0.5);
        let p = EtaProfile { delta };
        // monotonicity spot check of the middle band
        let mut last = p.eta(1.0 - 2.0 * delta);
        for i in 1..=64 {
            let r = 1.0 - 2.0 * delta + delta * i as f64 / 64.0;
            let v = p.eta(r);
            assert!(v + 1e-12 >= last, "eta must be monotone");
            last = v;
        }
        p
    }

    fn band(&self) -> (f64, f64) {
        (1.0 - 2.0 * self.delta, 1.0 - self.delta)
    }

    pub fn eta(&self, rad: f64) -> f64 {
        let (x0, x1) = self.band();
        if rad <= x0 {
            rad * rad
        } else if rad >= x1 {
            1.0
        } else {
            // Hermite data: value/slope x0^2, 2 x0 at the left, 1, 0 at the
            // right
            let h = x1 - x0;
            let t = (rad - x0) / h;
            let (v0, s0, v1, s1) = (x0 * x0, 2.0 * x0 * h, 1.0, 0.0);
            let h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
            let h10 = t * (1.0 - t) * (1.0 - t);
            let h01 = t * t * (3.0 - 2.0 * t);
            let h11 = t * t * (t - 1.0);
            h00 * v0 + h10 * s0 + h01 * v1 + h11 * s1
        }
    }

    pub fn eta_prime(&self, rad: f64) -> f64 {
        let (x0, x1) = self.band();
        if rad <= x0 {
            2.0 * rad
        } else if rad >= x1 {
            0.0
        } else {
            let h = x1 - x0;
            let t = (rad - x0) / h;
            let (v0, s0, v1, s1) = (x0 * x0, 2.0 * x0 * h, 1.0, 0.0);
            let d00 = 6.0 * t * t - 6.0 * t;
            let d10 = 3.0 * t * t - 4.0 * t + 1.0;
            let d01 = -6.0 * t * t + 6.0 * t;
            let d11 = 3.0 * t * t - 2.0 * t;
            (d00 * v0 + d10 * s0 + d01 * v1 + d11 * s1) / h
        }
    }
}

/// Discretization of the coupling form for one path.
#[derive(Clone, Debug, PartialEq)]
pub struct CouplingFormSpec {
    pub profile: EtaProfile,
    pub path: PolePath,
    /// cells along each of rad and theta
    pub grid: usize,
    /// latitude resolution of the fiber grid used for maxima
    pub fiber_grid: usize,
    /// tolerance for the sampled holonomy residual
    pub holonomy_tol: f64,
}

impl CouplingFormSpec {
    pub fn new(path: PolePath, delta: f64, grid: usize, fiber_grid: usize) -> Self {
        CouplingFormSpec {
            profile: EtaProfile::new(delta),
            path,
            grid,
            fiber_grid,
            holonomy_tol: 1e-6,
        }
    }
}

/// Maximum of <x, axis> over the latitude-longitude fiber grid.
fn grid_max_height(axis: Vec3, n: usize) -> f64 {
    if axis == [0.0, 0.0, 0.0] {
        return 0.0;
    }
    let mut max = f64::NEG_INFINITY;
    for i in 0..n {
        let theta = std::f64::consts::PI * (i as f64 + 0.5) / n as f64;
        let (st, ct) = theta.sin_cos();
        for j in 0..2 * n {
            let phi = std::f64::consts::PI * j as f64 / n as f64;
            let x = [st * phi.cos(), st * phi.sin(), ct];
            let v = dot(x, axis);
            if v > max {
                max = v;
            }
        }
    }
    max
}

/// Integral over the disk of the fiberwise maximum of the plaquette
/// curvature. Errors out when the sampled holonomy residual exceeds the
/// discretization's tolerance.
pub fn area_functional(spec: &CouplingFormSpec) -> Result<f64, HoferError> {
    spec.path.validate()?;
    let n = spec.grid;
    let profile = &spec.profile;

    holonomy_residual_check(spec)?;

    // fiber maxima per theta cell
    use rayon::prelude::*;
    let theta_max: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|j| {
            let theta_mid = (j as f64 + 0.5) / n as f64;
            let ham = generating_hamiltonian(&spec.path, theta_mid)
                .expect("path validated");
            ham.speed * grid_max_height(ham.axis, spec.fiber_grid)
        })
        .collect();

    let mut total = 0.0;
    let dtheta = 1.0 / n as f64;
    for i in 0..n {
        let r0 = i as f64 / n as f64;
        let r1 = (i + 1) as f64 / n as f64;
        let deta = profile.eta(r1) - profile.eta(r0);
        for tm in &theta_max {
            total += deta * tm * dtheta;
        }
    }
    Ok(total)
}

/// Integrates the transport of a handful of fiber points around sampled
/// plaquettes and compares the displacement against the curvature
/// prediction.
fn holonomy_residual_check(spec: &CouplingFormSpec) -> Result<(), HoferError> {
    let n = spec.grid;
    let probes: [Vec3; 4] = [
        [1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0],
        super::normalize([1.0, 1.0, 1.0]),
    ];
    let mut worst = 0.0f64;
    for pi in 0..3usize {
        for pj in 0..3usize {
            let i = (pi * n) / 4 + n / 8;
            let j = (pj * n) / 4 + n / 8;
            let r0 = i as f64 / n as f64;
            let r1 = (i + 1) as f64 / n as f64;
            let t0 = j as f64 / n as f64;
            let t1 = (j + 1) as f64 / n as f64;
            let deta = spec.profile.eta(r1) - spec.profile.eta(r0);
            let ham_mid = generating_hamiltonian(&spec.path, 0.5 * (t0 + t1))?;
            for &x in &probes {
                // around the plaquette: up along theta at r1, back at r0
                let up = transport(spec, r1, t0, t1, x);
                let around = transport(spec, r0, t1, t0, up);
                let displacement = sub(around, x);
                let predicted = scale(
                    hamiltonian_field(&ham_mid, x),
                    deta * (t1 - t0),
                );
                let residual = super::norm(sub(displacement, predicted));
                worst = worst.max(residual);
            }
        }
    }
    if worst > spec.holonomy_tol {
        return Err(HoferError::GridTooCoarse(worst));
    }
    Ok(())
}

/// X_H at x for the height Hamiltonian: the rotation field x × u.
fn hamiltonian_field(ham: &GeneratingHamiltonian, x: Vec3) -> Vec3 {
    cross(x, ham.angular_velocity())
}

/// Parallel transport along the theta-direction at fixed rad: RK4 on the
/// scaled rotation field.
fn transport(spec: &CouplingFormSpec, rad: f64, from: f64, to: f64, x: Vec3) -> Vec3 {
    let eta = spec.profile.eta(rad);
    let steps = 16;
    let h = (to - from) / steps as f64;
    let mut y = x;
    let field = |t: f64, y: Vec3| -> Vec3 {
        let ham = generating_hamiltonian(&spec.path, t.clamp(0.0, 1.0))
            .expect("path validated");
        scale(hamiltonian_field(&ham, y), eta)
    };
    for s in 0..steps {
        let t = from + s as f64 * h;
        let k1 = field(t, y);
        let k2 = field(t + 0.5 * h, add(y, scale(k1, 0.5 * h)));
        let k3 = field(t + 0.5 * h, add(y, scale(k2, 0.5 * h)));
        let k4 = field(t + h, add(y, scale(k3, h)));
        let incr = add(add(k1, scale(k2, 2.0)), add(scale(k3, 2.0), k4));
        y = super::normalize(add(y, scale(incr, h / 6.0)));
    }
    y
}
