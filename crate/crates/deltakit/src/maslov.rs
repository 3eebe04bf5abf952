//! Maslov numbers of loops and paths of Lagrangian lines in the plane, the
//! end-closing construction for surfaces with boundary punctures, and the
//! index arithmetic built on them.
//!
//! A line through the origin is recorded by a continuous angle lift theta(t)
//! (the line spanned by (cos theta, sin theta)); a loop closes when the
//! total turn is a multiple of pi. With the default orientation convention a
//! counterclockwise degree-1 loop has Maslov number -2.

use std::fmt;

use thiserror::Error;

/// Tolerance for closure and matching checks on angle lifts (radians).
pub const ANGLE_TOL: f64 = 1e-7;

#[derive(Debug, Error, PartialEq)]
pub enum MaslovError {
    #[error("angle path needs at least one sample")]
    EmptyPath,
    #[error("angle samples must have nondecreasing parameters")]
    NotSorted,
    #[error("loop does not close modulo pi (defect {defect:.3e})")]
    NotClosed { defect: f64 },
    #[error("segment {index} does not match its neighbor modulo pi (defect {defect:.3e})")]
    MatchingFailed { index: usize, defect: f64 },
    #[error("expected dimension needs arity d >= 2 (got {0})")]
    ArityTooSmall(usize),
    #[error("winding is not integral (residual {0:.3e})")]
    NonIntegralWinding(f64),
}

/// Orientation convention selector. The default (`Negative`) makes the
/// counterclockwise degree-1 loop of lines count as -2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OrientationSign {
    Positive,
    #[default]
    Negative,
}

impl OrientationSign {
    pub fn factor(self) -> i64 {
        match self {
            OrientationSign::Positive => 1,
            OrientationSign::Negative => -1,
        }
    }
}

/// A piecewise-linear path of Lagrangian lines, stored as an angle lift.
#[derive(Clone, Debug, PartialEq)]
pub struct LagrangianLoop {
    /// (t, theta) samples with t nondecreasing on [0, 1]
    pub samples: Vec<(f64, f64)>,
    pub closed: bool,
    pub orientation_sign: OrientationSign,
}

impl LagrangianLoop {
    pub fn new(samples: Vec<(f64, f64)>, closed: bool) -> Result<Self, MaslovError> {
        let l = LagrangianLoop { samples, closed, orientation_sign: OrientationSign::default() };
        l.check()?;
        Ok(l)
    }

    pub fn with_sign(mut self, sign: OrientationSign) -> Self {
        self.orientation_sign = sign;
        self
    }

    fn check(&self) -> Result<(), MaslovError> {
        if self.samples.is_empty() {
            return Err(MaslovError::EmptyPath);
        }
        if self.samples.windows(2).any(|w| w[1].0 < w[0].0) {
            return Err(MaslovError::NotSorted);
        }
        if self.closed {
            let defect = mod_pi_defect(self.total_turn());
            if defect > ANGLE_TOL {
                return Err(MaslovError::NotClosed { defect });
            }
        }
        Ok(())
    }

    pub fn start_angle(&self) -> f64 {
        self.samples.first().expect("nonempty").1
    }

    pub fn end_angle(&self) -> f64 {
        self.samples.last().expect("nonempty").1
    }

    /// Net rotation of the line's angle lift.
    pub fn total_turn(&self) -> f64 {
        self.end_angle() - self.start_angle()
    }

    /// Orientation-reversed path.
    pub fn reverse(&self) -> LagrangianLoop {
        let t1 = self.samples.last().expect("nonempty").0;
        let t0 = self.samples[0].0;
        let samples = self
            .samples
            .iter()
            .rev()
            .map(|&(t, a)| (t0 + (t1 - t), a))
            .collect();
        LagrangianLoop { samples, closed: self.closed, orientation_sign: self.orientation_sign }
    }

    /// Concatenation; the second path's angles are shifted by a multiple of
    /// pi to match continuously.
    pub fn concat(&self, other: &LagrangianLoop) -> Result<LagrangianLoop, MaslovError> {
        let join = self.end_angle();
        let defect = mod_pi_defect(other.start_angle() - join);
        if defect > ANGLE_TOL {
            return Err(MaslovError::MatchingFailed { index: 1, defect });
        }
        // align the second lift by the nearest multiple of pi
        let k = ((join - other.start_angle()) / std::f64::consts::PI).round();
        let shift = k * std::f64::consts::PI;
        let t_off = self.samples.last().expect("nonempty").0;
        let t_base = other.samples[0].0;
        let mut samples = self.samples.clone();
        for &(t, a) in &other.samples {
            samples.push((t_off + (t - t_base), a + shift));
        }
        Ok(LagrangianLoop {
            samples,
            closed: self.closed && other.closed,
            orientation_sign: self.orientation_sign,
        })
    }
}

fn mod_pi_defect(x: f64) -> f64 {
    let k = (x / std::f64::consts::PI).round();
    (x - k * std::f64::consts::PI).abs()
}

/// Maslov number of a closed loop of lines: with the default convention
/// (orientation sign -1) a counterclockwise degree-1 loop gives -2.
///
/// The angle-doubled loop winds twice per pi of rotation, so the number is
/// sign * 2 * (total turn) / pi, always an even integer.
pub fn maslov_of_loop(l: &LagrangianLoop) -> Result<i64, MaslovError> {
    l.check()?;
    if !l.closed {
        let defect = mod_pi_defect(l.total_turn());
        if defect > ANGLE_TOL {
            return Err(MaslovError::NotClosed { defect });
        }
    }
    let winding = 2.0 * l.total_turn() / std::f64::consts::PI;
    let rounded = winding.round();
    if (winding - rounded).abs() > 1e-6 {
        return Err(MaslovError::NonIntegralWinding(winding - rounded));
    }
    Ok(l.orientation_sign.factor() * rounded as i64)
}

/// One segment of boundary data: either a boundary arc of the surface or
/// the limiting path at a puncture.
#[derive(Clone, Debug, PartialEq)]
pub enum BoundarySegment {
    Arc(LagrangianLoop),
    EndPath(LagrangianLoop),
}

impl BoundarySegment {
    fn path(&self) -> &LagrangianLoop {
        match self {
            BoundarySegment::Arc(p) | BoundarySegment::EndPath(p) => p,
        }
    }
}

/// Rank-1 surface data: per boundary component, the cyclic alternation of
/// boundary arcs and end paths, plus the Euler characteristic of the
/// closed-off pair.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceEndData {
    pub euler_char_closed: i64,
    pub components: Vec<Vec<BoundarySegment>>,
    pub orientation_sign: OrientationSign,
}

impl SurfaceEndData {
    /// Closes each end with the constant extension over the glued half-disk
    /// and concatenates each boundary component into a loop.
    pub fn close_off(&self) -> Result<Vec<LagrangianLoop>, MaslovError> {
        let mut loops = Vec::new();
        for comp in &self.components {
            assert!(!comp.is_empty());
            let mut acc = comp[0].path().clone().with_sign(self.orientation_sign);
            for (k, seg) in comp.iter().enumerate().skip(1) {
                acc = acc.concat(seg.path()).map_err(|e| match e {
                    MaslovError::MatchingFailed { defect, .. } => {
                        MaslovError::MatchingFailed { index: k, defect }
                    }
                    other => other,
                })?;
            }
            // cyclic closure back to the start of the component
            let defect = mod_pi_defect(acc.total_turn());
            if defect > ANGLE_TOL {
                return Err(MaslovError::NotClosed { defect });
            }
            acc.closed = true;
            loops.push(acc);
        }
        Ok(loops)
    }

    /// Total Maslov number of the closed-off boundary loops.
    pub fn total_maslov(&self) -> Result<i64, MaslovError> {
        let mut total = 0;
        for l in self.close_off()? {
            total += maslov_of_loop(&l)?;
        }
        Ok(total)
    }

    /// Fredholm index of the rank-1 closed-off pair.
    pub fn fredholm(&self) -> Result<i64, MaslovError> {
        Ok(fredholm_index(1, self.euler_char_closed, self.total_maslov()?))
    }
}

/// Index of a real-linear Cauchy-Riemann operator on a rank-r bundle pair.
pub fn fredholm_index(rank: i64, chi: i64, maslov: i64) -> i64 {
    rank * chi + maslov
}

/// Euler characteristic of a closed-off genus-g surface with b boundary
/// circles (ends do not change it: each closing half-disk restores the
/// compact surface).
pub fn chi_from_genus_boundary(genus: i64, boundary_components: i64) -> i64 {
    2 - 2 * genus - boundary_components
}

/// Expected dimension of the arity-d moduli problem: the index term
/// 1 + maslov + sum(1 - deg) plus the dimension d - 2 of the domain moduli.
pub fn expected_dimension(
    d: usize,
    maslov_vert: i64,
    degrees: &[i64],
) -> Result<i64, MaslovError> {
    if d < 2 {
        return Err(MaslovError::ArityTooSmall(d));
    }
    assert_eq!(degrees.len(), d);
    let section: i64 = degrees.iter().map(|&g| 1 - g).sum();
    Ok(1 + maslov_vert + section + (d as i64 - 2))
}

impl fmt::Display for LagrangianLoop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "angle path ({} samples, turn {:.6})",
            self.samples.len(),
            self.total_turn()
        )
    }
}

/// Straight angle sweep from a to b over [0, 1].
pub fn linear_sweep(a: f64, b: f64, samples: usize) -> LagrangianLoop {
    assert!(samples >= 2);
    let pts = (0..samples)
        .map(|i| {
            let t = i as f64 / (samples - 1) as f64;
            (t, a + (b - a) * t)
        })
        .collect();
    LagrangianLoop {
        samples: pts,
        closed: false,
        orientation_sign: OrientationSign::default(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn constant_loop_is_zero() {
        let mut l = linear_sweep(0.3, 0.3, 5);
        l.closed = true;
        assert_eq!(maslov_of_loop(&l).unwrap(), 0);
    }

    #[test]
    fn counterclockwise_degree_one_loop_is_minus_two() {
        let mut l = linear_sweep(0.0, PI, 10);
        l.closed = true;
        assert_eq!(maslov_of_loop(&l).unwrap(), -2);
        // the opposite convention flips it
        assert_eq!(maslov_of_loop(&l.with_sign(OrientationSign::Positive)).unwrap(), 2);
    }

    #[test]
    fn concatenation_adds_and_reversal_negates() {
        let mut a = linear_sweep(0.0, PI, 7);
        a.closed = true;
        let b = a.clone();
        let both = a.concat(&b).unwrap();
        assert_eq!(maslov_of_loop(&both).unwrap(), -4);
        assert_eq!(maslov_of_loop(&a.reverse()).unwrap(), 2);
    }

    #[test]
    fn fredholm_values() {
        assert_eq!(fredholm_index(1, 1, -2), -1);
        assert_eq!(fredholm_index(1, 1, 0), 1);
        assert_eq!(fredholm_index(2, 0, 4), 4);
    }

    #[test]
    fn expected_dimension_forces_minus_two() {
        // target dimension 1 at arity 4 with vanishing section term
        for m in -4..=2 {
            let dim = expected_dimension(4, m, &[1, 1, 1, 1]).unwrap();
            assert_eq!(dim == 1, m == -2);
        }
        assert_eq!(expected_dimension(2, 0, &[1, 1]).unwrap(), 1);
        assert_eq!(expected_dimension(3, -2, &[1, 1, 1]).unwrap(), 0);
        assert!(expected_dimension(1, 0, &[1]).is_err());
    }

    #[test]
    fn closing_off_sums_segment_turns() {
        // all arcs and end paths constant
        let comp = vec![
            BoundarySegment::Arc(linear_sweep(0.1, 0.1, 3)),
            BoundarySegment::EndPath(linear_sweep(0.1, 0.1, 3)),
        ];
        let data = SurfaceEndData {
            euler_char_closed: 1,
            components: vec![comp],
            orientation_sign: OrientationSign::default(),
        };
        assert_eq!(data.total_maslov().unwrap(), 0);
        assert_eq!(data.fredholm().unwrap(), 1);

        // one arc sweeping 0 -> pi, ends constant
        let comp = vec![
            BoundarySegment::Arc(linear_sweep(0.0, PI, 5)),
            BoundarySegment::EndPath(linear_sweep(PI, PI, 2)),
        ];
        let data = SurfaceEndData {
            euler_char_closed: 1,
            components: vec![comp],
            orientation_sign: OrientationSign::default(),
        };
        assert_eq!(data.total_maslov().unwrap(), -2);

        // strip whose end paths cancel the arc sweep
        let comp = vec![
            BoundarySegment::Arc(linear_sweep(0.0, PI / 2.0, 4)),
            BoundarySegment::EndPath(linear_sweep(PI / 2.0, 0.0, 4)),
        ];
        let data = SurfaceEndData {
            euler_char_closed: 1,
            components: vec![comp],
            orientation_sign: OrientationSign::default(),
        };
        assert_eq!(data.total_maslov().unwrap(), 0);
    }

    #[test]
    fn mismatched_segments_are_rejected() {
        let comp = vec![
            BoundarySegment::Arc(linear_sweep(0.0, 0.4, 3)),
            BoundarySegment::EndPath(linear_sweep(1.3, 1.3, 2)),
        ];
        let data = SurfaceEndData {
            euler_char_closed: 1,
            components: vec![comp],
            orientation_sign: OrientationSign::default(),
        };
        match data.total_maslov() {
            Err(MaslovError::MatchingFailed { index, .. }) => assert_eq!(index, 1),
            other => panic!("expected matching failure, got {other:?}"),
        }
    }
}
