//! Joint measurability (coexistence) of binary qubit observables.
//!
//! Two effects `A = a0·I + a·σ` and `B = b0·I + b·σ` are jointly measurable
//! iff
//!
//! ```text
//! ½[F(2 − B) + B(2 − F)] + (xy − 4 a·b)² ≥ 1
//! ```
//!
//! with `F = φ(A)² + φ(B)²`, `B = β(A)² + β(B)²`, `x = 2a0 − 1`,
//! `y = 2b0 − 1`, unsharpness `φ = √(a0² − |a|²) + √((1 − a0)² − |a|²)` and
//! bias `β = √(a0² − |a|²) − √((1 − a0)² − |a|²)`. For unbiased effects this
//! reduces to `16|a×b|² ≤ (1 − 4|a|²)(1 − 4|b|²)`, equivalently
//! `|a + b| + |a − b| ≤ 1`.
//!
//! [`crate::oracle`] decides the same question constructively.

use serde::{Deserialize, Serialize};

use crate::error::{Result, UnsharpError};
use crate::operator::{tol, DiscretePom, Effect, QubitEffect, Vec3};

/// Half-width of the band around zero margin reported as [`Verdict::Boundary`].
pub const BOUNDARY_BAND: f64 = 1e-9;

/// Outcome labels of a joint observable on the 2×2 grid, in canonical order.
pub const GRID_LABELS: [&str; 4] = ["++", "+-", "-+", "--"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    JointlyMeasurable,
    NotJointlyMeasurable,
    Boundary,
}

impl Verdict {
    fn from_margin(margin: f64) -> Self {
        if margin >= BOUNDARY_BAND {
            Verdict::JointlyMeasurable
        } else if margin <= -BOUNDARY_BAND {
            Verdict::NotJointlyMeasurable
        } else {
            Verdict::Boundary
        }
    }
}

/// Every intermediate quantity of the closed-form coexistence criterion.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct JmReport {
    #[serde(rename = "phiA")]
    pub phi_a: f64,
    #[serde(rename = "phiB")]
    pub phi_b: f64,
    #[serde(rename = "betaA")]
    pub beta_a: f64,
    #[serde(rename = "betaB")]
    pub beta_b: f64,
    #[serde(rename = "F")]
    pub f: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub x: f64,
    pub y: f64,
    pub dot_ab: f64,
    /// Left-hand side minus one.
    pub margin: f64,
    pub verdict: Verdict,
}

/// The two square roots `(√(a0² − |a|²), √((1 − a0)² − |a|²))`.
fn radicals(q: &QubitEffect) -> Result<(f64, f64)> {
    let r = q.a().norm();
    let a0 = q.a0();
    // factored forms keep the radicands accurate near sharp effects
    let lower = (a0 - r) * (a0 + r);
    let upper = (1.0 - a0 - r) * (1.0 - a0 + r);
    for radicand in [lower, upper] {
        if radicand < -tol::POS {
            return Err(UnsharpError::InvalidQubitEffect {
                norm: r,
                bound: a0.min(1.0 - a0),
            });
        }
    }
    Ok((lower.max(0.0).sqrt(), upper.max(0.0).sqrt()))
}

/// Unsharpness `φ(A) ∈ [0, 1]`; zero exactly for sharp projections.
pub fn unsharpness(q: &QubitEffect) -> Result<f64> {
    radicals(q).map(|(s, t)| s + t)
}

/// Bias `β(A) ∈ [−1, 1]`; zero exactly for unbiased effects (`a0 = ½`).
pub fn bias(q: &QubitEffect) -> Result<f64> {
    radicals(q).map(|(s, t)| s - t)
}

/// Closed-form coexistence test with a three-valued verdict.
pub fn jm_closed_form(qa: &QubitEffect, qb: &QubitEffect) -> Result<JmReport> {
    let (sa, ta) = radicals(qa)?;
    let (sb, tb) = radicals(qb)?;
    let (phi_a, beta_a) = (sa + ta, sa - ta);
    let (phi_b, beta_b) = (sb + tb, sb - tb);
    let f = phi_a * phi_a + phi_b * phi_b;
    let b = beta_a * beta_a + beta_b * beta_b;
    let x = 2.0 * qa.a0() - 1.0;
    let y = 2.0 * qb.a0() - 1.0;
    let dot_ab = qa.a().dot(&qb.a());
    let cross = x * y - 4.0 * dot_ab;
    let margin = 0.5 * (f * (2.0 - b) + b * (2.0 - f)) + cross * cross - 1.0;
    Ok(JmReport {
        phi_a,
        phi_b,
        beta_a,
        beta_b,
        f,
        b,
        x,
        y,
        dot_ab,
        margin,
        verdict: Verdict::from_margin(margin),
    })
}

fn check_unbiased_vector(v: &Vec3) -> Result<()> {
    let length = v.norm();
    if !(length <= 0.5 + tol::POS) {
        return Err(UnsharpError::VectorTooLong { length, limit: 0.5 });
    }
    Ok(())
}

/// Unbiased criterion `16|a×b|² ≤ (1 − 4|a|²)(1 − 4|b|²)`.
/// Returns whether it holds and the margin `RHS − LHS`.
pub fn jm_unbiased_vector_form(a: &Vec3, b: &Vec3) -> Result<(bool, f64)> {
    check_unbiased_vector(a)?;
    check_unbiased_vector(b)?;
    let rhs = (1.0 - 4.0 * a.norm_squared()) * (1.0 - 4.0 * b.norm_squared());
    let lhs = 16.0 * a.cross(b).norm_squared();
    let margin = rhs - lhs;
    Ok((margin >= 0.0, margin))
}

/// Unbiased criterion `|a + b| + |a − b| ≤ 1`. Returns whether it holds and
/// the left-hand side.
pub fn jm_unbiased_sum_form(a: &Vec3, b: &Vec3) -> Result<(bool, f64)> {
    check_unbiased_vector(a)?;
    check_unbiased_vector(b)?;
    let value = (a + b).norm() + (a - b).norm();
    Ok((value <= 1.0, value))
}

/// Assembles a POM on the 2×2 outcome grid from effects in [`GRID_LABELS`] order.
pub fn grid_pom(effects: [Effect; 4]) -> Result<DiscretePom> {
    DiscretePom::new(GRID_LABELS.iter().map(|s| s.to_string()).collect(), effects.to_vec())
}

/// Marginals of a joint observable on the 2×2 grid:
/// first `(G₊₊ + G₊₋, G₋₊ + G₋₋)`, second `(G₊₊ + G₋₊, G₊₋ + G₋₋)`.
pub fn margins_of_joint(g: &DiscretePom) -> Result<(DiscretePom, DiscretePom)> {
    if g.len() != 4 {
        return Err(UnsharpError::MalformedGrid(format!(
            "expected 4 outcomes, found {}",
            g.len()
        )));
    }
    let get = |label: &str| {
        g.effect(label)
            .ok_or_else(|| UnsharpError::MalformedGrid(format!("missing outcome {label}")))
    };
    let (pp, pm, mp, mm) = (get("++")?, get("+-")?, get("-+")?, get("--")?);
    let sum = |x: &Effect, y: &Effect| Effect::new(x.matrix() + y.matrix());
    let binary = |plus: Effect, minus: Effect| DiscretePom::new(vec!["+".into(), "-".into()], vec![plus, minus]);
    let first = binary(sum(pp, pm)?, sum(mp, mm)?)?;
    let second = binary(sum(pp, mp)?, sum(pm, mm)?)?;
    Ok((first, second))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{projector, ComplexMatrix};
    use crate::sampling;

    fn q(a0: f64, a: Vec3) -> QubitEffect {
        QubitEffect::new(a0, a).unwrap()
    }

    #[test]
    fn unsharpness_examples() {
        assert!(unsharpness(&q(0.5, Vec3::z() * 0.5)).unwrap().abs() < 1e-15);
        // 2·√(¼ − 1/16) = √3/2
        let v = unsharpness(&q(0.5, Vec3::z() * 0.25)).unwrap();
        assert!((v - 3f64.sqrt() / 2.0).abs() < 1e-15);
        assert!((unsharpness(&q(0.5, Vec3::zeros())).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bias_examples() {
        assert!(bias(&q(0.5, Vec3::new(0.1, 0.2, 0.3))).unwrap().abs() < 1e-15);
        assert!((bias(&q(0.75, Vec3::zeros())).unwrap() - 0.5).abs() < 1e-15);
        assert!((bias(&q(1.0, Vec3::zeros())).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn closed_form_examples() {
        let a = q(0.5, Vec3::z() * 0.25);
        let b = q(0.5, Vec3::x() * 0.25);
        assert_eq!(jm_closed_form(&a, &b).unwrap().verdict, Verdict::JointlyMeasurable);

        let sa = q(0.5, Vec3::z() * 0.5);
        let sb = q(0.5, Vec3::x() * 0.5);
        let r = jm_closed_form(&sa, &sb).unwrap();
        assert_eq!(r.verdict, Verdict::NotJointlyMeasurable);
        assert!((r.margin + 1.0).abs() < 1e-15);

        let c = q(0.3, Vec3::new(0.1, -0.05, 0.1));
        assert_eq!(jm_closed_form(&c, &c).unwrap().verdict, Verdict::JointlyMeasurable);
    }

    #[test]
    fn sharp_commuting_pair_sits_on_boundary() {
        let p = q(0.5, Vec3::z() * 0.5);
        assert_eq!(jm_closed_form(&p, &p).unwrap().verdict, Verdict::Boundary);
    }

    #[test]
    fn vector_form_examples() {
        let (ok, margin) = jm_unbiased_vector_form(&(Vec3::z() * 0.25), &(Vec3::x() * 0.25)).unwrap();
        assert!(ok && (margin - 0.5).abs() < 1e-15);
        let (ok, _) = jm_unbiased_vector_form(&(Vec3::z() * 0.4), &(Vec3::z() * -0.2)).unwrap();
        assert!(ok);
        let (ok, _) = jm_unbiased_vector_form(&(Vec3::z() * 0.5), &(Vec3::x() * 0.5)).unwrap();
        assert!(!ok);
        assert!(matches!(
            jm_unbiased_vector_form(&(Vec3::z() * 0.6), &Vec3::zeros()),
            Err(UnsharpError::VectorTooLong { .. })
        ));
    }

    #[test]
    fn sum_form_examples() {
        let (ok, v) = jm_unbiased_sum_form(&(Vec3::z() * 0.25), &(Vec3::x() * 0.25)).unwrap();
        assert!(ok && (v - 2f64.sqrt() / 2.0).abs() < 1e-15);
        let a = Vec3::new(0.3, 0.0, 0.4);
        let (ok, v) = jm_unbiased_sum_form(&a, &a).unwrap();
        assert!(ok && (v - 1.0).abs() < 1e-15);
        let (ok, v) = jm_unbiased_sum_form(&(Vec3::z() * 0.5), &(Vec3::x() * 0.5)).unwrap();
        assert!(!ok && (v - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn margins_of_product_with_coin() {
        // G(i, j) = ½ A_i: margins are A and the coin toss {½I, ½I}
        let a = q(0.3, Vec3::new(0.1, 0.0, 0.2)).to_effect();
        let ac = a.complement();
        let half = |e: &Effect| Effect::new(e.matrix().scale(0.5)).unwrap();
        let g = grid_pom([half(&a), half(&a), half(&ac), half(&ac)]).unwrap();
        let (m1, m2) = margins_of_joint(&g).unwrap();
        assert!(m1.max_abs_diff(&DiscretePom::binary(a)) < 1e-15);
        let coin = DiscretePom::binary(Effect::new(ComplexMatrix::identity(2).scale(0.5)).unwrap());
        assert!(m2.max_abs_diff(&coin) < 1e-15);
    }

    #[test]
    fn margins_of_commuting_projections() {
        // P and Q commute when both are diagonal in the same basis (dim 3)
        let diag = |d: &[f64]| Effect::new(ComplexMatrix::from_real_diagonal(d).unwrap()).unwrap();
        let p = [diag(&[1.0, 1.0, 0.0]), diag(&[0.0, 0.0, 1.0])];
        let qq = [diag(&[1.0, 0.0, 1.0]), diag(&[0.0, 1.0, 0.0])];
        let prod = |x: &Effect, y: &Effect| Effect::new(x.matrix() * y.matrix()).unwrap();
        let g = grid_pom([
            prod(&p[0], &qq[0]),
            prod(&p[0], &qq[1]),
            prod(&p[1], &qq[0]),
            prod(&p[1], &qq[1]),
        ])
        .unwrap();
        let (m1, m2) = margins_of_joint(&g).unwrap();
        assert!(m1.max_abs_diff(&DiscretePom::binary(p[0].clone())) < 1e-15);
        assert!(m2.max_abs_diff(&DiscretePom::binary(qq[0].clone())) < 1e-15);
    }

    #[test]
    fn margins_reject_malformed_grid() {
        let pom = DiscretePom::binary(projector(&Vec3::z()).unwrap());
        assert!(matches!(margins_of_joint(&pom), Err(UnsharpError::MalformedGrid(_))));
        let e = Effect::new(ComplexMatrix::identity(2).scale(0.25)).unwrap();
        let wrong = DiscretePom::new(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            vec![e.clone(), e.clone(), e.clone(), e],
        )
        .unwrap();
        assert!(matches!(margins_of_joint(&wrong), Err(UnsharpError::MalformedGrid(_))));
    }

    #[test]
    fn phi_zero_exactly_for_sharp_effects() {
        // grid over (a0, |a|) inside the cone
        let steps = 40;
        for i in 0..=steps {
            let a0 = i as f64 / steps as f64;
            let bound = a0.min(1.0 - a0);
            for j in 0..=steps {
                let r = bound * j as f64 / steps as f64;
                let e = q(a0, Vec3::x() * r);
                let sharp = (a0 - 0.5).abs() < 1e-15 && (r - 0.5).abs() < 1e-15;
                let phi = unsharpness(&e).unwrap();
                assert_eq!(phi.abs() < 1e-12, sharp, "a0 = {a0}, |a| = {r}, φ = {phi}");
            }
        }
    }

    #[test]
    fn report_serializes_flat() {
        let r = jm_closed_form(&q(0.5, Vec3::z() * 0.25), &q(0.5, Vec3::x() * 0.25)).unwrap();
        let v = serde_json::to_value(r).unwrap();
        for key in [
            "phiA", "phiB", "betaA", "betaB", "F", "B", "x", "y", "dot_ab", "margin", "verdict",
        ] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["verdict"], "JointlyMeasurable");
    }

    #[test]
    fn x_equals_phi_beta_for_random_effects() {
        let mut rng = sampling::seeded_rng(11);
        for _ in 0..10_000 {
            let e = sampling::qubit_effect(&mut rng);
            let prod = unsharpness(&e).unwrap() * bias(&e).unwrap();
            assert!((prod - (2.0 * e.a0() - 1.0)).abs() < 1e-12);
            let phi = unsharpness(&e).unwrap();
            let beta = bias(&e).unwrap();
            assert!(phi >= beta.abs() - 1e-15 && (0.0..=1.0 + 1e-15).contains(&phi));
        }
    }
}
