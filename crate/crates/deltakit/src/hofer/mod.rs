//! Hofer-length computations on the two-sphere.
//!
//! Oriented great circles are identified with their unit pole vectors, so
//! paths of equatorial Lagrangians become pole paths on the unit sphere. The
//! positive Hofer length of such a path equals its spherical arc length
//! (unit radius, standard area form, total area 4π): the optimal generating
//! Hamiltonian at each moment is the zero-mean height function aligned with
//! the instantaneous rotation axis, whose maximum is exactly the pole speed.
//! The flow-transport oracle in the tests pins that normalization down.

pub mod area;
pub mod format;

use thiserror::Error;

pub type Vec3 = [f64; 3];

pub fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

pub fn scale(a: Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

pub fn add(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn normalize(a: Vec3) -> Vec3 {
    scale(a, 1.0 / norm(a))
}

/// Well-conditioned spherical distance between unit vectors.
pub fn arc_distance(a: Vec3, b: Vec3) -> f64 {
    norm(cross(a, b)).atan2(dot(a, b))
}

/// Rodrigues rotation of v about the unit axis by the given angle.
pub fn rotate_about(axis: Vec3, angle: f64, v: Vec3) -> Vec3 {
    let (s, c) = angle.sin_cos();
    add(
        add(scale(v, c), scale(cross(axis, v), s)),
        scale(axis, dot(axis, v) * (1.0 - c)),
    )
}

/// Geodesic interpolation between unit vectors.
pub fn slerp(a: Vec3, b: Vec3, t: f64) -> Vec3 {
    let omega = arc_distance(a, b);
    if omega < 1e-14 {
        return a;
    }
    let s = omega.sin();
    add(
        scale(a, ((1.0 - t) * omega).sin() / s),
        scale(b, (t * omega).sin() / s),
    )
}

#[derive(Debug, Error, PartialEq)]
pub enum HoferError {
    #[error("pole path needs at least one sample")]
    EmptyPath,
    #[error("sample {0} is not a unit vector")]
    NotUnit(usize),
    #[error("under-resolved path: samples {0} and {1} are more than pi/2 apart")]
    UnderResolved(usize, usize),
    #[error("loop sample 0 must equal the family basepoint")]
    BasepointMismatch(usize),
    #[error("family loop {0} must be closed")]
    NotClosed(usize),
    #[error("adjacent loops {0} and {1} exceed the mesh tolerance ({2:.3e})")]
    ContinuityViolated(usize, usize, f64),
    #[error("grid too coarse: holonomy residual {0:.3e} above tolerance")]
    GridTooCoarse(f64),
    #[error("descent step size underflowed while restoring the invariants")]
    StepUnderflow,
    #[error("triangulation references a missing vertex")]
    BadTriangulation,
}

/// A discretized path (or loop) of oriented great circles, stored by unit
/// pole samples at uniform parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct PolePath {
    pub samples: Vec<Vec3>,
    pub closed: bool,
}

impl PolePath {
    pub fn new(samples: Vec<Vec3>, closed: bool) -> Result<Self, HoferError> {
        let p = PolePath { samples, closed };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), HoferError> {
        if self.samples.is_empty() {
            return Err(HoferError::EmptyPath);
        }
        for (i, s) in self.samples.iter().enumerate() {
            if (norm(*s) - 1.0).abs() > 1e-12 {
                return Err(HoferError::NotUnit(i));
            }
        }
        let m = self.samples.len();
        let pairs = if self.closed { m } else { m - 1 };
        for i in 0..pairs {
            let j = (i + 1) % m;
            if arc_distance(self.samples[i], self.samples[j]) > std::f64::consts::FRAC_PI_2 {
                return Err(HoferError::UnderResolved(i, j));
            }
        }
        Ok(())
    }

    /// Number of segments (wrapping for loops).
    pub fn segments(&self) -> usize {
        if self.closed {
            self.samples.len()
        } else {
            self.samples.len() - 1
        }
    }

    fn segment_endpoints(&self, i: usize) -> (Vec3, Vec3) {
        let m = self.samples.len();
        (self.samples[i % m], self.samples[(i + 1) % m])
    }

    /// Pole position at parameter t in [0, 1], geodesic between samples.
    pub fn at(&self, t: f64) -> Vec3 {
        let segs = self.segments().max(1);
        let x = (t.clamp(0.0, 1.0)) * segs as f64;
        let i = (x.floor() as usize).min(segs - 1);
        let (a, b) = self.segment_endpoints(i);
        slerp(a, b, x - i as f64)
    }

    /// Instantaneous pole velocity at t by central differences on the
    /// interpolated path.
    pub fn velocity(&self, t: f64) -> Vec3 {
        let h = 0.5 / (self.segments().max(1) as f64);
        let (t0, t1) = if self.closed {
            (t - h, t + h)
        } else {
            ((t - h).max(0.0), (t + h).min(1.0))
        };
        let p0 = self.at(wrap01(t0, self.closed));
        let p1 = self.at(wrap01(t1, self.closed));
        scale(sub(p1, p0), 1.0 / (t1 - t0))
    }
}

fn wrap01(t: f64, closed: bool) -> f64 {
    if closed {
        t.rem_euclid(1.0)
    } else {
        t
    }
}

/// Positive Hofer length: spherical arc length of the pole path.
pub fn l_plus(path: &PolePath) -> Result<f64, HoferError> {
    path.validate()?;
    let mut total = 0.0;
    for i in 0..path.segments() {
        let (a, b) = path.segment_endpoints(i);
        total += arc_distance(a, b);
    }
    Ok(total)
}

/// The optimal generating Hamiltonian at one moment: the zero-mean height
/// function aligned with the instantaneous rotation axis.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratingHamiltonian {
    /// unit rotation axis (zero vector at stationary moments)
    pub axis: Vec3,
    /// instantaneous pole speed |p'(t)|, the maximum of the Hamiltonian
    pub speed: f64,
}

impl GeneratingHamiltonian {
    /// H(x) = speed * <x, axis>.
    pub fn value(&self, x: Vec3) -> f64 {
        self.speed * dot(x, self.axis)
    }

    /// Angular-velocity vector driving d/dt x = omega × x; transports the
    /// great circle with the path's pole.
    pub fn angular_velocity(&self) -> Vec3 {
        scale(self.axis, self.speed)
    }

    /// Samples on a latitude-longitude grid, with the grid maximum.
    pub fn sample_grid(&self, n: usize) -> (Vec<(Vec3, f64)>, f64) {
        let mut out = Vec::with_capacity(n * n);
        let mut max = f64::NEG_INFINITY;
        for i in 0..n {
            let theta = std::f64::consts::PI * (i as f64 + 0.5) / n as f64;
            for j in 0..2 * n {
                let phi = std::f64::consts::PI * j as f64 / n as f64;
                let x = [
                    theta.sin() * phi.cos(),
                    theta.sin() * phi.sin(),
                    theta.cos(),
                ];
                let v = self.value(x);
                max = max.max(v);
                out.push((x, v));
            }
        }
        (out, max)
    }
}

/// Generating Hamiltonian of a pole path at parameter t. A stationary
/// moment yields the zero function.
///
/// With the sign convention that H = <x, u> generates the field x × u, the
/// transporting axis is v × p: the flow then moves the pole along the path.
pub fn generating_hamiltonian(path: &PolePath, t: f64) -> Result<GeneratingHamiltonian, HoferError> {
    path.validate()?;
    let p = path.at(t);
    let v = path.velocity(t);
    // remove any radial component left by the finite differences
    let v_tan = sub(v, scale(p, dot(v, p)));
    let speed = norm(v_tan);
    if speed < 1e-14 {
        return Ok(GeneratingHamiltonian { axis: [0.0, 0.0, 0.0], speed: 0.0 });
    }
    let axis = normalize(cross(v_tan, p));
    Ok(GeneratingHamiltonian { axis, speed })
}

/// A triangulated family of based pole loops over a parameter sphere.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereFamily {
    pub vertices: Vec<Vec3>,
    pub triangles: Vec<[usize; 3]>,
    pub loops: Vec<PolePath>,
    pub basepoint: Vec3,
    pub mesh_tol: f64,
}

impl SphereFamily {
    pub fn validate(&self) -> Result<(), HoferError> {
        for t in &self.triangles {
            if t.iter().any(|&v| v >= self.vertices.len()) {
                return Err(HoferError::BadTriangulation);
            }
        }
        for (i, l) in self.loops.iter().enumerate() {
            l.validate()?;
            if !l.closed {
                return Err(HoferError::NotClosed(i));
            }
            if arc_distance(l.samples[0], self.basepoint) > 1e-9 {
                return Err(HoferError::BasepointMismatch(i));
            }
        }
        for &(a, b) in self.edges().iter() {
            let d = loop_distance(&self.loops[a], &self.loops[b]);
            if d > self.mesh_tol {
                return Err(HoferError::ContinuityViolated(a, b, d));
            }
        }
        Ok(())
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges = std::collections::BTreeSet::new();
        for t in &self.triangles {
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
                edges.insert((a.min(b), a.max(b)));
            }
        }
        edges.into_iter().collect()
    }
}

/// Sup distance between two equally sampled loops.
pub fn loop_distance(a: &PolePath, b: &PolePath) -> f64 {
    assert_eq!(a.samples.len(), b.samples.len());
    a.samples
        .iter()
        .zip(&b.samples)
        .map(|(&x, &y)| arc_distance(x, y))
        .fold(0.0, f64::max)
}

/// Maximum of the positive Hofer length over the family, with the argmax
/// vertex.
pub fn family_max(family: &SphereFamily) -> Result<(f64, usize), HoferError> {
    family.validate()?;
    let mut best = (0.0f64, 0usize);
    for (i, l) in family.loops.iter().enumerate() {
        let len = l_plus(l)?;
        if len > best.0 {
            best = (len, i);
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DescentReport {
    pub steps_taken: usize,
    pub initial_max: f64,
    pub final_max: f64,
    pub stalled: bool,
    pub final_step_size: f64,
}

/// Discrete curve-shortening descent of every loop, keeping the basepoint
/// sample fixed and the family continuity invariant intact. Steps that break
/// an invariant are rejected and retried at half the step size. Stops early
/// once the decrease per step falls below `stall_tol`.
pub fn descend_family(
    family: &SphereFamily,
    steps: usize,
    step_size: f64,
    stall_tol: f64,
) -> Result<(SphereFamily, DescentReport), HoferError> {
    family.validate()?;
    let mut current = family.clone();
    let mut lambda = step_size;
    let (initial_max, _) = family_max(&current)?;
    let mut last_max = initial_max;
    let mut taken = 0;
    let mut stalled = false;
    for _ in 0..steps {
        let mut halvings = 0;
        let next = loop {
            let candidate = shorten_step(&current, lambda);
            match candidate.validate() {
                Ok(()) => break candidate,
                Err(_) if halvings < 20 => {
                    lambda *= 0.5;
                    halvings += 1;
                }
                Err(e) => return Err(e),
            }
        };
        if lambda < 1e-12 {
            return Err(HoferError::StepUnderflow);
        }
        let (new_max, _) = family_max(&next)?;
        current = next;
        taken += 1;
        if (last_max - new_max).abs() < stall_tol {
            last_max = new_max;
            stalled = true;
            break;
        }
        last_max = new_max;
    }
    let report = DescentReport {
        steps_taken: taken,
        initial_max,
        final_max: last_max,
        stalled,
        final_step_size: lambda,
    };
    Ok((current, report))
}

fn shorten_step(family: &SphereFamily, lambda: f64) -> SphereFamily {
    let mut out = family.clone();
    for l in out.loops.iter_mut() {
        let m = l.samples.len();
        if m < 3 {
            continue;
        }
        let old = l.samples.clone();
        for i in 1..m {
            // sample 0 is the basepoint and never moves
            let prev = old[(i + m - 1) % m];
            let next = old[(i + 1) % m];
            let mid = scale(add(prev, next), 0.5);
            let moved = add(old[i], scale(sub(mid, old[i]), lambda));
            l.samples[i] = normalize(moved);
        }
    }
    out
}

/// The explicit family attaining the minimax: the loop at parameter s
/// rotates the basepoint pole once around the axis s. At parameters
/// orthogonal to the basepoint the loop sweeps a great circle through the
/// antipode; everywhere else it is a latitude circle.
pub fn optimal_family(subdivisions: usize, loop_samples: usize) -> SphereFamily {
    let (vertices, triangles) = octahedron_sphere(subdivisions);
    let basepoint: Vec3 = [0.0, 0.0, 1.0];
    let loops: Vec<PolePath> = vertices
        .iter()
        .map(|&s| rotation_loop(s, basepoint, loop_samples))
        .collect();
    let mut family = SphereFamily {
        vertices,
        triangles,
        loops,
        basepoint,
        mesh_tol: 0.0,
    };
    let mesh = family
        .edges()
        .iter()
        .map(|&(a, b)| loop_distance(&family.loops[a], &family.loops[b]))
        .fold(0.0, f64::max);
    family.mesh_tol = mesh * 1.25 + 1e-6;
    family
}

/// The loop t -> R_axis(2πt) basepoint.
pub fn rotation_loop(axis: Vec3, basepoint: Vec3, samples: usize) -> PolePath {
    let pts = (0..samples)
        .map(|i| {
            let angle = 2.0 * std::f64::consts::PI * i as f64 / samples as f64;
            normalize(rotate_about(axis, angle, basepoint))
        })
        .collect();
    PolePath { samples: pts, closed: true }
}

/// Octahedron refined by midpoint subdivision and reprojection.
pub fn octahedron_sphere(subdivisions: usize) -> (Vec<Vec3>, Vec<[usize; 3]>) {
    let mut vertices: Vec<Vec3> = vec![
        [1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0],
    ];
    let mut triangles: Vec<[usize; 3]> = vec![
        [0, 2, 4],
        [2, 1, 4],
        [1, 3, 4],
        [3, 0, 4],
        [2, 0, 5],
        [1, 2, 5],
        [3, 1, 5],
        [0, 3, 5],
    ];
    for _ in 0..subdivisions {
        let mut midpoint: std::collections::BTreeMap<(usize, usize), usize> =
            std::collections::BTreeMap::new();
        let mut new_triangles = Vec::new();
        for &[a, b, c] in &triangles {
            let mut mid = |u: usize, v: usize, vertices: &mut Vec<Vec3>| -> usize {
                let key = (u.min(v), u.max(v));
                *midpoint.entry(key).or_insert_with(|| {
                    let m = normalize(scale(add(vertices[u], vertices[v]), 0.5));
                    vertices.push(m);
                    vertices.len() - 1
                })
            };
            let ab = mid(a, b, &mut vertices);
            let bc = mid(b, c, &mut vertices);
            let ca = mid(c, a, &mut vertices);
            new_triangles.extend_from_slice(&[
                [a, ab, ca],
                [ab, b, bc],
                [ca, bc, c],
                [ab, bc, ca],
            ]);
        }
        triangles = new_triangles;
    }
    (vertices, triangles)
}

/// Seeded tangential perturbation of a family (the basepoint samples stay
/// exactly put).
pub fn perturb_family(family: &SphereFamily, seed: u64, magnitude: f64) -> SphereFamily {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = family.clone();
    for l in out.loops.iter_mut() {
        for i in 1..l.samples.len() {
            let noise: Vec3 = [
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            ];
            let p = l.samples[i];
            let tangential = sub(noise, scale(p, dot(noise, p)));
            l.samples[i] = normalize(add(p, scale(tangential, magnitude)));
        }
    }
    out.mesh_tol = family.mesh_tol + 2.5 * magnitude;
    out
}
