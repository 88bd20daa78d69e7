//! Sequential measurement at qubit scale: an unsharp Lüders measurement along
//! `n` followed by a sharp measurement along `m`.
//!
//! The sequence is a joint measurement with grid effects
//! `G(i, j) = √A_i B_j √A_i`. Its first margin is the first observable, its
//! second margin the distorted observable `G2(j) = Σᵢ √A_i B_j √A_i`. For
//! orthogonal axes the Bloch part of `G2(±)` shrinks to `±½√(1 − λ²)·m`, and
//! the margin pair sits exactly on the unbiased coexistence boundary.

use crate::error::{Result, UnsharpError};
use crate::jm::{grid_pom, jm_unbiased_sum_form};
use crate::operator::{
    bloch_coordinates, bloch_operator, born_probability, check_unit, sharp_spin, ComplexMatrix, DensityOperator,
    DiscretePom, Effect, Vec3,
};

/// Lüders instrument `ρ ↦ √E_i ρ √E_i` for a discrete POM.
#[derive(Clone, Debug, PartialEq)]
pub struct LudersInstrument {
    pom: DiscretePom,
    sqrt_effects: Vec<ComplexMatrix>,
}

impl LudersInstrument {
    pub fn new(pom: DiscretePom) -> Result<Self> {
        let sqrt_effects = pom
            .effects()
            .iter()
            .map(|e| {
                let root = if e.dim() == 2 {
                    e.matrix().psd_sqrt_2x2()?
                } else {
                    e.matrix().psd_sqrt()?
                };
                let defect = (&root * &root).max_abs_diff(e.matrix());
                if defect > 1e-10 {
                    return Err(UnsharpError::NotHermitian { defect });
                }
                Ok(root)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { pom, sqrt_effects })
    }

    pub fn pom(&self) -> &DiscretePom {
        &self.pom
    }

    pub fn sqrt_effects(&self) -> &[ComplexMatrix] {
        &self.sqrt_effects
    }

    /// Unnormalized post-measurement operator `√E_i ρ √E_i` for outcome `i`.
    pub fn branch(&self, rho: &DensityOperator, outcome: usize) -> Result<ComplexMatrix> {
        let root = self
            .sqrt_effects
            .get(outcome)
            .ok_or_else(|| UnsharpError::InvalidParameter(format!("outcome {outcome} out of range")))?;
        if rho.dim() != root.dim() {
            return Err(UnsharpError::DimensionMismatch {
                expected: root.dim(),
                found: rho.dim(),
            });
        }
        Ok(&(root * rho.matrix()) * root)
    }

    /// Outcome probability and normalized post-measurement state; the state
    /// is `None` for outcomes of probability zero.
    pub fn update(&self, rho: &DensityOperator, outcome: usize) -> Result<(f64, Option<DensityOperator>)> {
        let branch = self.branch(rho, outcome)?;
        let p = branch.trace().re;
        if p <= 1e-15 {
            return Ok((p.max(0.0), None));
        }
        Ok((p, Some(DensityOperator::new(branch.scale(1.0 / p))?)))
    }
}

/// Unsharp Lüders measurement of `{½(I ± λ n·σ)}` followed by the sharp
/// spin observable along `m`.
#[derive(Clone, Debug, PartialEq)]
pub struct SequentialScheme {
    first: LudersInstrument,
    second: DiscretePom,
    first_axis: Vec3,
    second_axis: Vec3,
    sharpness: f64,
}

impl SequentialScheme {
    pub fn new(first_axis: Vec3, sharpness: f64, second_axis: Vec3) -> Result<Self> {
        check_unit(&first_axis)?;
        check_unit(&second_axis)?;
        if !(0.0..=1.0).contains(&sharpness) {
            return Err(UnsharpError::InvalidParameter(format!(
                "sharpness {sharpness} outside [0, 1]"
            )));
        }
        let plus = Effect::new(bloch_operator(0.5, &(first_axis * (0.5 * sharpness))))?;
        let first = LudersInstrument::new(DiscretePom::binary(plus))?;
        Ok(Self {
            first,
            second: sharp_spin(&second_axis)?,
            first_axis,
            second_axis,
            sharpness,
        })
    }

    pub fn first(&self) -> &LudersInstrument {
        &self.first
    }

    pub fn second(&self) -> &DiscretePom {
        &self.second
    }

    pub fn first_axis(&self) -> Vec3 {
        self.first_axis
    }

    pub fn second_axis(&self) -> Vec3 {
        self.second_axis
    }

    pub fn sharpness(&self) -> f64 {
        self.sharpness
    }
}

fn conjugate(root: &ComplexMatrix, e: &Effect) -> ComplexMatrix {
    &(root * e.matrix()) * root
}

/// Joint POM `G(i, j) = √A_i B_j √A_i` of the whole sequence on the 2×2 grid.
pub fn effective_joint_pom(s: &SequentialScheme) -> Result<DiscretePom> {
    let roots = s.first.sqrt_effects();
    let b = s.second.effects();
    let cell = |i: usize, j: usize| Effect::new(conjugate(&roots[i], &b[j]));
    grid_pom([cell(0, 0)?, cell(0, 1)?, cell(1, 0)?, cell(1, 1)?])
}

/// The second observable as seen through the first measurement:
/// `G2(j) = Σᵢ √A_i B_j √A_i`.
pub fn distorted_second_observable(s: &SequentialScheme) -> Result<DiscretePom> {
    let roots = s.first.sqrt_effects();
    let effects = s
        .second
        .effects()
        .iter()
        .map(|bj| {
            let sum = roots
                .iter()
                .fold(ComplexMatrix::zeros(bj.dim()), |acc, r| &acc + &conjugate(r, bj));
            Effect::new(sum)
        })
        .collect::<Result<Vec<_>>>()?;
    DiscretePom::new(s.second.labels().to_vec(), effects)
}

/// Grid probabilities `[p(+,+), p(+,−), p(−,+), p(−,−)]` from the two-step
/// process: Lüders update on the first outcome, then the second measurement.
pub fn simulate_two_step(s: &SequentialScheme, rho: &DensityOperator) -> Result<[f64; 4]> {
    let mut out = [0.0; 4];
    for i in 0..2 {
        let (p, post) = s.first.update(rho, i)?;
        if let Some(post) = post {
            for j in 0..2 {
                out[2 * i + j] = p * born_probability(&post, &s.second.effects()[j])?;
            }
        }
    }
    Ok(out)
}

/// One row of the accuracy/disturbance scan.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TradeoffRow {
    pub lambda: f64,
    /// Bloch length of the first margin's `+` effect (`λ/2`).
    pub first_acc: f64,
    /// Bloch length of the distorted second observable's `+` effect (`½√(1 − λ²)`).
    pub second_acc: f64,
    /// `|a + b| + |a − b|` for the two margin Bloch vectors.
    pub jm_sum: f64,
}

/// Sweeps the first measurement's sharpness for orthogonal axes `n ⊥ m`.
pub fn disturbance_tradeoff_scan(n: &Vec3, m: &Vec3, lambdas: &[f64]) -> Result<Vec<TradeoffRow>> {
    check_unit(n)?;
    check_unit(m)?;
    let dot = n.dot(m);
    if dot.abs() > 1e-9 {
        return Err(UnsharpError::NonOrthogonalAxes { dot });
    }
    if lambdas.is_empty() {
        return Err(UnsharpError::InvalidParameter("empty sharpness list".into()));
    }
    lambdas
        .iter()
        .map(|&lambda| {
            let scheme = SequentialScheme::new(*n, lambda, *m)?;
            let joint = effective_joint_pom(&scheme)?;
            let (first, _) = crate::jm::margins_of_joint(&joint)?;
            let g2 = distorted_second_observable(&scheme)?;
            let (_, a) = bloch_coordinates(first.effects()[0].matrix())?;
            let (_, b) = bloch_coordinates(g2.effects()[0].matrix())?;
            let (_, jm_sum) = jm_unbiased_sum_form(&a, &b)?;
            Ok(TradeoffRow {
                lambda,
                first_acc: a.norm(),
                second_acc: b.norm(),
                jm_sum,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jm::margins_of_joint;
    use crate::operator::projector;
    use crate::sampling;

    fn half_identity() -> ComplexMatrix {
        ComplexMatrix::identity(2).scale(0.5)
    }

    #[test]
    fn trivial_first_measurement() {
        let s = SequentialScheme::new(Vec3::z(), 0.0, Vec3::x()).unwrap();
        let g = effective_joint_pom(&s).unwrap();
        let b = s.second().effects();
        for (k, e) in g.effects().iter().enumerate() {
            assert!(e.matrix().max_abs_diff(&b[k % 2].matrix().scale(0.5)) < 1e-15);
        }
        let (_, second) = margins_of_joint(&g).unwrap();
        assert!(second.max_abs_diff(s.second()) < 1e-15);
        assert!(distorted_second_observable(&s).unwrap().max_abs_diff(s.second()) < 1e-15);
    }

    #[test]
    fn repeatable_sharp_chain() {
        let s = SequentialScheme::new(Vec3::z(), 1.0, Vec3::z()).unwrap();
        let g = effective_joint_pom(&s).unwrap();
        let up = projector(&Vec3::z()).unwrap();
        let down = projector(&-Vec3::z()).unwrap();
        let zero = ComplexMatrix::zeros(2);
        assert!(g.effects()[0].matrix().max_abs_diff(up.matrix()) < 1e-15);
        assert!(g.effects()[1].matrix().max_abs_diff(&zero) < 1e-15);
        assert!(g.effects()[2].matrix().max_abs_diff(&zero) < 1e-15);
        assert!(g.effects()[3].matrix().max_abs_diff(down.matrix()) < 1e-15);
    }

    #[test]
    fn sharp_orthogonal_chain_gives_coin_toss() {
        let s = SequentialScheme::new(Vec3::z(), 1.0, Vec3::x()).unwrap();
        let (_, second) = margins_of_joint(&effective_joint_pom(&s).unwrap()).unwrap();
        for e in second.effects() {
            assert!(e.matrix().max_abs_diff(&half_identity()) < 1e-15);
        }
        let g2 = distorted_second_observable(&s).unwrap();
        for e in g2.effects() {
            assert!(e.matrix().max_abs_diff(&half_identity()) < 1e-15);
        }
    }

    #[test]
    fn distorted_bloch_length_at_lambda_point_six() {
        // √A± = pI ± q n·σ with p² − q² = ½√(1 − λ²); direct arithmetic gives 0.4
        let s = SequentialScheme::new(Vec3::z(), 0.6, Vec3::x()).unwrap();
        let g2 = distorted_second_observable(&s).unwrap();
        let (c0, c) = bloch_coordinates(g2.effects()[0].matrix()).unwrap();
        assert!((c0 - 0.5).abs() < 1e-15);
        assert!((c - Vec3::x() * 0.4).norm() < 1e-15);
        let (_, c) = bloch_coordinates(g2.effects()[1].matrix()).unwrap();
        assert!((c + Vec3::x() * 0.4).norm() < 1e-15);
    }

    #[test]
    fn scan_examples() {
        let rows = disturbance_tradeoff_scan(&Vec3::z(), &Vec3::x(), &[1.0, 0.0, 0.8]).unwrap();
        let expected = [(0.5, 0.0), (0.0, 0.5), (0.4, 0.3)];
        for (row, (first, second)) in rows.iter().zip(expected) {
            assert!((row.first_acc - first).abs() < 1e-12);
            assert!((row.second_acc - second).abs() < 1e-12);
            assert!((row.jm_sum - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn scan_errors() {
        assert!(matches!(
            disturbance_tradeoff_scan(&Vec3::z(), &Vec3::new(0.6, 0.0, 0.8), &[0.5]),
            Err(UnsharpError::NonOrthogonalAxes { .. })
        ));
        assert!(disturbance_tradeoff_scan(&Vec3::z(), &Vec3::x(), &[]).is_err());
        assert!(disturbance_tradeoff_scan(&Vec3::z(), &Vec3::x(), &[1.5]).is_err());
    }

    #[test]
    fn first_margin_is_undisturbed() {
        let mut rng = sampling::seeded_rng(17);
        for k in 0..=20 {
            let lambda = k as f64 / 20.0;
            let n = sampling::unit_vector(&mut rng);
            let m = sampling::unit_vector(&mut rng);
            let s = SequentialScheme::new(n, lambda, m).unwrap();
            let (first, _) = margins_of_joint(&effective_joint_pom(&s).unwrap()).unwrap();
            assert!(first.max_abs_diff(s.first().pom()) < 1e-12);
        }
    }

    #[test]
    fn grid_probabilities_match_two_step_simulation() {
        let mut rng = sampling::seeded_rng(23);
        for _ in 0..200 {
            let lambda: f64 = rand::Rng::random(&mut rng);
            let s = SequentialScheme::new(sampling::unit_vector(&mut rng), lambda, sampling::unit_vector(&mut rng))
                .unwrap();
            let rho = sampling::qubit_state(&mut rng);
            let direct = effective_joint_pom(&s).unwrap().probabilities(&rho).unwrap();
            let simulated = simulate_two_step(&s, &rho).unwrap();
            for (a, b) in direct.iter().zip(simulated) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn instrument_is_trace_preserving() {
        let s = SequentialScheme::new(Vec3::y(), 0.7, Vec3::x()).unwrap();
        let mut rng = sampling::seeded_rng(2);
        let rho = sampling::qubit_state(&mut rng);
        let total: f64 = (0..2).map(|i| s.first().branch(&rho, i).unwrap().trace().re).sum();
        assert!((total - 1.0).abs() < 1e-14);
        for (root, e) in s.first().sqrt_effects().iter().zip(s.first().pom().effects()) {
            assert!((root * root).max_abs_diff(e.matrix()) < 1e-10);
        }
        assert!(s.first().branch(&rho, 2).is_err());
    }

    #[test]
    fn eigenstate_is_not_disturbed_by_sharp_luders() {
        let s = SequentialScheme::new(Vec3::z(), 1.0, Vec3::x()).unwrap();
        let up = crate::operator::pure_state(&Vec3::z()).unwrap();
        let (p, post) = s.first().update(&up, 0).unwrap();
        assert!((p - 1.0).abs() < 1e-15);
        assert!(post.unwrap().matrix().max_abs_diff(up.matrix()) < 1e-15);
        let (p, post) = s.first().update(&up, 1).unwrap();
        assert!(p.abs() < 1e-15 && post.is_none());
    }
}
