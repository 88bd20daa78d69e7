//! Constructive joint-measurability oracle.
//!
//! A joint observable for binary effects `A`, `B` on the 2×2 outcome grid is
//! fixed by its `++` effect `G₊₊ = g0·I + g·σ`; the other three follow from
//! the margin constraints:
//!
//! ```text
//! G₊₋ = A − G₊₊,  G₋₊ = B − G₊₊,  G₋₋ = I − A − B + G₊₊
//! ```
//!
//! A qubit operator `c0·I + c·σ` is positive iff `|c| ≤ c0`, so the pair is
//! jointly measurable iff `min over (g0, g) of max_k (|c_k| − c_k0) ≤ 0`.
//! The objective is convex (a max of affine-composed cone distances), so a
//! coarse grid followed by simplex refinement finds the global minimum.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, UnsharpError};
use crate::jm::{grid_pom, Verdict};
use crate::operator::{bloch_operator, DiscretePom, Effect, QubitEffect, Vec3};
use crate::optimize::{self, SimplexOptions};

/// Default feasibility tolerance on the positivity defect.
pub const DEFAULT_TOL: f64 = 1e-7;

/// Grid points per axis in the coarse stage.
pub const GRID_POINTS: usize = 21;

/// A free `++` effect together with its worst positivity defect.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct JointObservableCandidate {
    pub g0: f64,
    pub g: [f64; 3],
    /// `max_k (|c_k| − c_k0)₊` over the four grid effects.
    pub max_violation: f64,
}

impl JointObservableCandidate {
    /// Bloch coordinates `(c0, c)` of the four grid effects in `++, +-, -+, --` order.
    pub fn grid_coordinates(&self, qa: &QubitEffect, qb: &QubitEffect) -> [(f64, Vec3); 4] {
        grid_coordinates([self.g0, self.g[0], self.g[1], self.g[2]], qa, qb)
    }

    /// The joint POM; fails if the candidate violates positivity beyond tolerance.
    pub fn joint_pom(&self, qa: &QubitEffect, qb: &QubitEffect) -> Result<DiscretePom> {
        let coords = self.grid_coordinates(qa, qb);
        let effects = coords.map(|(c0, c)| Effect::new(bloch_operator(c0, &c)));
        let [e0, e1, e2, e3] = effects;
        grid_pom([e0?, e1?, e2?, e3?])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub verdict: Verdict,
    pub candidate: JointObservableCandidate,
    /// Unclipped minimum of `max_k (|c_k| − c_k0)`; negative means strictly feasible.
    pub objective: f64,
    pub evaluations: usize,
}

fn grid_coordinates(p: [f64; 4], qa: &QubitEffect, qb: &QubitEffect) -> [(f64, Vec3); 4] {
    let g0 = p[0];
    let g = Vec3::new(p[1], p[2], p[3]);
    let (a0, a, b0, b) = (qa.a0(), qa.a(), qb.a0(), qb.a());
    [
        (g0, g),
        (a0 - g0, a - g),
        (b0 - g0, b - g),
        (1.0 - a0 - b0 + g0, g - a - b),
    ]
}

/// `max_k (|c_k| − c_k0)` over the four grid effects.
pub fn positivity_defect(p: [f64; 4], qa: &QubitEffect, qb: &QubitEffect) -> f64 {
    grid_coordinates(p, qa, qb)
        .iter()
        .map(|(c0, c)| c.norm() - c0)
        .fold(f64::NEG_INFINITY, f64::max)
}

fn grid_point(index: usize) -> [f64; 4] {
    let n = GRID_POINTS;
    let step = 1.0 / (n - 1) as f64;
    let i0 = index / (n * n * n);
    let i1 = (index / (n * n)) % n;
    let i2 = (index / n) % n;
    let i3 = index % n;
    [
        i0 as f64 * step,
        -0.5 + i1 as f64 * step,
        -0.5 + i2 as f64 * step,
        -0.5 + i3 as f64 * step,
    ]
}

/// Best grid point over `g0 ∈ [0, 1]`, `g ∈ [−½, ½]³`. Ties resolve to the
/// lowest index, so the result does not depend on evaluation order.
pub fn grid_search(qa: &QubitEffect, qb: &QubitEffect) -> ([f64; 4], f64) {
    let total = GRID_POINTS.pow(4);
    let (f, idx) = (0..total)
        .into_par_iter()
        .map(|i| (positivity_defect(grid_point(i), qa, qb), i))
        .reduce(
            || (f64::INFINITY, usize::MAX),
            |x, y| match x.0.total_cmp(&y.0) {
                std::cmp::Ordering::Less => x,
                std::cmp::Ordering::Greater => y,
                std::cmp::Ordering::Equal => {
                    if x.1 <= y.1 {
                        x
                    } else {
                        y
                    }
                }
            },
        );
    (grid_point(idx), f)
}

/// Searches for a joint observable of `qa` and `qb`.
///
/// Verdicts: `JointlyMeasurable` if the minimal defect is `≤ tol`,
/// `NotJointlyMeasurable` if it exceeds `10·tol`, `Boundary` in between.
pub fn jm_oracle(qa: &QubitEffect, qb: &QubitEffect, tol: f64) -> Result<OracleResult> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(UnsharpError::InvalidParameter(format!("oracle tolerance {tol}")));
    }
    let (start, grid_best) = grid_search(qa, qb);
    let opts = SimplexOptions {
        initial_step: 0.5 / (GRID_POINTS - 1) as f64,
        ..SimplexOptions::default()
    };
    let refined = optimize::minimize(|p: &[f64; 4]| positivity_defect(*p, qa, qb), start, &opts);
    let (p, f) = if refined.f <= grid_best {
        (refined.x, refined.f)
    } else {
        (start, grid_best)
    };
    if !refined.converged && f > tol {
        return Err(UnsharpError::NoConvergence {
            iterations: refined.iterations,
            best: f,
        });
    }
    let verdict = if f <= tol {
        Verdict::JointlyMeasurable
    } else if f > 10.0 * tol {
        Verdict::NotJointlyMeasurable
    } else {
        Verdict::Boundary
    };
    Ok(OracleResult {
        verdict,
        candidate: JointObservableCandidate {
            g0: p[0],
            g: [p[1], p[2], p[3]],
            max_violation: f.max(0.0),
        },
        objective: f,
        evaluations: refined.evaluations + GRID_POINTS.pow(4),
    })
}

/// Closed-form verdict, falling back to the oracle inside the boundary band.
pub fn decide(qa: &QubitEffect, qb: &QubitEffect) -> Result<Verdict> {
    let report = crate::jm::jm_closed_form(qa, qb)?;
    if report.verdict != Verdict::Boundary {
        return Ok(report.verdict);
    }
    Ok(jm_oracle(qa, qb, DEFAULT_TOL)?.verdict)
}
