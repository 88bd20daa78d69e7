//! Classical representations of the qubit statistical model.
//!
//! Two constructions live here:
//!
//! - the embedding `ρ ↦ (tr[ρ A_i])ᵢ` through an informationally complete
//!   observable, with its dual, the quantization `f ↦ Σᵢ fᵢ A_i`. The
//!   embedding is injective, but not every effect is the image of a
//!   `[0, 1]`-valued function;
//! - the barycentric (Misra) reduction of a measure on pure states,
//!   `μ ↦ ∫ ω dμ(ω)`, with dual `E ↦ f_E(ω) = tr[ωE]`. The reduction is
//!   surjective, every effect becomes a fuzzy set, and the functions `f_E`
//!   do not separate classical states with the same barycenter.
//!
//! Measures are finite atomic; continuous densities are discretized on a
//! [`SphereMesh`].

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector, Rotation3, Unit};

use crate::error::{Result, UnsharpError};
use crate::operator::{
    bloch_coordinates, born_probability, check_unit, matrix_to_qubit_effect, tol, ComplexMatrix, DensityOperator,
    DiscretePom, Effect, QubitEffect, Vec3,
};
use crate::sphere::SphereMesh;

/// Residual allowed when checking that a probability vector is in the range
/// of the embedding, or that a linear solve is exact.
pub const RESIDUAL_TOL: f64 = 1e-8;

/// A pure qubit state, labelled by its unit Bloch vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PurePoint {
    bloch: Vec3,
}

impl PurePoint {
    pub fn new(bloch: Vec3) -> Result<Self> {
        check_unit(&bloch)?;
        Ok(Self { bloch })
    }

    pub fn bloch(&self) -> Vec3 {
        self.bloch
    }

    pub fn state(&self) -> DensityOperator {
        DensityOperator::from_bloch(&self.bloch).expect("unit Bloch vector")
    }
}

/// Finite atomic probability measure on the pure states.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalState {
    atoms: Vec<(PurePoint, f64)>,
}

impl ClassicalState {
    pub fn new(atoms: Vec<(PurePoint, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(UnsharpError::InvalidClassicalState("no atoms".into()));
        }
        if let Some((_, w)) = atoms.iter().find(|(_, w)| !(*w > 0.0) || !w.is_finite()) {
            return Err(UnsharpError::InvalidClassicalState(format!("non-positive weight {w}")));
        }
        let total: f64 = atoms.iter().map(|(_, w)| w).sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(UnsharpError::InvalidClassicalState(format!("weights sum to {total}")));
        }
        Ok(Self { atoms })
    }

    /// Dirac measure at a single pure state.
    pub fn dirac(point: PurePoint) -> Self {
        Self {
            atoms: vec![(point, 1.0)],
        }
    }

    /// Discretizes a nonnegative density on the sphere: cell weights are
    /// `density(center)·solid_angle`, renormalized.
    pub fn from_mesh_density<F: Fn(&Vec3) -> f64>(mesh: &SphereMesh, density: F) -> Result<Self> {
        let raw: Vec<(PurePoint, f64)> = mesh
            .cells()
            .iter()
            .map(|c| Ok((PurePoint::new(c.center)?, density(&c.center) * c.solid_angle)))
            .collect::<Result<_>>()?;
        if let Some((_, w)) = raw.iter().find(|(_, w)| *w < 0.0 || !w.is_finite()) {
            return Err(UnsharpError::InvalidClassicalState(format!("density weight {w}")));
        }
        let total: f64 = raw.iter().map(|(_, w)| w).sum();
        if !(total > 0.0) {
            return Err(UnsharpError::InvalidClassicalState("density integrates to zero".into()));
        }
        let atoms = raw
            .into_iter()
            .filter(|(_, w)| *w > 0.0)
            .map(|(p, w)| (p, w / total))
            .collect();
        Ok(Self { atoms })
    }

    pub fn atoms(&self) -> &[(PurePoint, f64)] {
        &self.atoms
    }

    /// Weighted mean of the atoms' Bloch vectors.
    pub fn barycenter(&self) -> Vec3 {
        self.atoms.iter().map(|(p, w)| p.bloch * *w).sum()
    }
}

/// Fuzzy set on the pure states, `ω ↦ offset + slope·bloch(ω)`.
///
/// Every dual `f_E` of a qubit effect has this affine form. An effect is
/// proper when its values over the whole sphere lie in `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassicalEffect {
    pub offset: f64,
    pub slope: Vec3,
}

impl ClassicalEffect {
    pub fn evaluate(&self, point: &PurePoint) -> f64 {
        self.offset + self.slope.dot(&point.bloch)
    }

    /// `(min, max)` of the function over the sphere.
    pub fn range(&self) -> (f64, f64) {
        let r = self.slope.norm();
        (self.offset - r, self.offset + r)
    }

    pub fn is_proper(&self) -> bool {
        let (lo, hi) = self.range();
        lo >= -tol::POS && hi <= 1.0 + tol::POS
    }
}

/// Qubit POM whose statistics determine the state.
#[derive(Clone, Debug, PartialEq)]
pub struct IcObservable {
    pom: DiscretePom,
    /// Row `i` holds `(α_i0, α_i)` with `A_i = α_i0·I + α_i·σ`, so that
    /// `p_i = frame · (1, r)` when `ρ = ½(I + r·σ)`.
    frame: DMatrix<f64>,
}

impl IcObservable {
    pub fn new(pom: DiscretePom) -> Result<Self> {
        if pom.dim() != 2 {
            return Err(UnsharpError::DimensionMismatch {
                expected: 2,
                found: pom.dim(),
            });
        }
        let k = pom.len();
        let mut frame = DMatrix::zeros(k, 4);
        for (i, e) in pom.effects().iter().enumerate() {
            let (c0, c) = bloch_coordinates(e.matrix())?;
            frame[(i, 0)] = c0;
            frame[(i, 1)] = c.x;
            frame[(i, 2)] = c.y;
            frame[(i, 3)] = c.z;
        }
        let rank = frame.rank(1e-10);
        if rank < 4 {
            return Err(UnsharpError::RankDeficient { rank });
        }
        Ok(Self { pom, frame })
    }

    /// IC observable from a list of qubit effects summing to the identity.
    pub fn from_qubit_effects(effects: &[QubitEffect]) -> Result<Self> {
        let labels = (1..=effects.len()).map(|i| format!("A{i}")).collect();
        Self::new(DiscretePom::new(
            labels,
            effects.iter().map(QubitEffect::to_effect).collect(),
        )?)
    }

    /// `A_i = ¼(I + t_i·σ)` with `t1 = ẑ` and `t2..t4` at `z = −⅓`, 120° apart.
    pub fn tetrahedral() -> Self {
        Self::from_qubit_effects(&tetrahedron_directions().map(|t| QubitEffect::new(0.25, t * 0.25).unwrap()))
            .expect("tetrahedral POM is informationally complete")
    }

    pub fn pom(&self) -> &DiscretePom {
        &self.pom
    }

    pub fn frame_matrix(&self) -> &DMatrix<f64> {
        &self.frame
    }

    pub fn len(&self) -> usize {
        self.pom.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pom.is_empty()
    }
}

impl Default for IcObservable {
    fn default() -> Self {
        Self::tetrahedral()
    }
}

/// Vertex directions of the default tetrahedron.
pub fn tetrahedron_directions() -> [Vec3; 4] {
    let r = 8f64.sqrt() / 3.0;
    let at = |phi: f64| Vec3::new(r * phi.cos(), r * phi.sin(), -1.0 / 3.0);
    [Vec3::z(), at(0.0), at(2.0 * PI / 3.0), at(4.0 * PI / 3.0)]
}

/// Outcome distribution `p_i = tr[ρ A_i]`.
pub fn embed(rho: &DensityOperator, a: &IcObservable) -> Result<Vec<f64>> {
    a.pom.probabilities(rho)
}

/// Inverts [`embed`]: the unique state with the given outcome distribution.
pub fn reconstruct(p: &[f64], a: &IcObservable) -> Result<DensityOperator> {
    if p.len() != a.len() {
        return Err(UnsharpError::DimensionMismatch {
            expected: a.len(),
            found: p.len(),
        });
    }
    if p.iter().any(|v| !v.is_finite()) {
        return Err(UnsharpError::NonFinite);
    }
    let rhs = DVector::from_column_slice(p);
    let svd = a.frame.clone().svd(true, true);
    let x = svd
        .solve(&rhs, 1e-12)
        .map_err(|e| UnsharpError::InvalidParameter(e.to_string()))?;
    let residual = (&a.frame * &x - &rhs).norm().max((x[0] - 1.0).abs());
    if residual > RESIDUAL_TOL {
        return Err(UnsharpError::InconsistentProbabilities { residual });
    }
    let mut r = Vec3::new(x[1], x[2], x[3]);
    let len = r.norm();
    if len > 1.0 + RESIDUAL_TOL {
        return Err(UnsharpError::InconsistentProbabilities { residual: len - 1.0 });
    }
    if len > 1.0 {
        r /= len;
    }
    DensityOperator::from_bloch(&r)
}

/// Which bounds of `[0, 1]` a coefficient vector violates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BoundViolation {
    pub below_zero: bool,
    pub above_one: bool,
}

impl BoundViolation {
    fn of(f: &[f64]) -> Self {
        Self {
            below_zero: f.iter().any(|&v| v < -tol::POS),
            above_one: f.iter().any(|&v| v > 1.0 + tol::POS),
        }
    }

    pub fn is_proper(&self) -> bool {
        !self.below_zero && !self.above_one
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Quantization {
    pub operator: ComplexMatrix,
    /// The operator as an effect, when its spectrum lies in `[0, 1]`.
    pub effect: Option<Effect>,
    /// Whether the input function itself had values in `[0, 1]`.
    pub f_proper: bool,
    pub violation: BoundViolation,
}

/// Quantization `f ↦ Σᵢ fᵢ A_i`, defined for arbitrary real `f`.
pub fn quantize(f: &[f64], a: &IcObservable) -> Result<Quantization> {
    if f.len() != a.len() {
        return Err(UnsharpError::DimensionMismatch {
            expected: a.len(),
            found: f.len(),
        });
    }
    if f.iter().any(|v| !v.is_finite()) {
        return Err(UnsharpError::NonFinite);
    }
    let operator = a
        .pom
        .effects()
        .iter()
        .zip(f)
        .fold(ComplexMatrix::zeros(2), |acc, (e, &fi)| &acc + &e.matrix().scale(fi));
    let violation = BoundViolation::of(f);
    Ok(Quantization {
        effect: Effect::new(operator.clone()).ok(),
        operator,
        f_proper: violation.is_proper(),
        violation,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SurjectivityWitness {
    pub f: Vec<f64>,
    pub proper: bool,
    pub violation: BoundViolation,
}

/// Solves `Σᵢ fᵢ A_i = target` (minimum-norm for more than four outcomes).
/// `proper` reports whether the target is the quantization of a
/// `[0, 1]`-valued function through this solution.
pub fn surjectivity_witness(target: &Effect, a: &IcObservable) -> Result<SurjectivityWitness> {
    let (t0, t) = bloch_coordinates(target.matrix())?;
    let rhs = DVector::from_column_slice(&[t0, t.x, t.y, t.z]);
    let system = a.frame.transpose();
    let f = system
        .clone()
        .svd(true, true)
        .solve(&rhs, 1e-12)
        .map_err(|e| UnsharpError::InvalidParameter(e.to_string()))?;
    let residual = (&system * &f - &rhs).norm();
    if residual > RESIDUAL_TOL {
        return Err(UnsharpError::InconsistentProbabilities { residual });
    }
    let f: Vec<f64> = f.iter().copied().collect();
    let violation = BoundViolation::of(&f);
    Ok(SurjectivityWitness {
        proper: violation.is_proper(),
        f,
        violation,
    })
}

/// Barycenter map `μ ↦ Σₖ wₖ·½(I + bₖ·σ)`.
pub fn misra_reduce(mu: &ClassicalState) -> DensityOperator {
    DensityOperator::from_bloch(&mu.barycenter()).expect("barycenter lies in the Bloch ball")
}

/// Dual of the barycenter map: `E ↦ f_E(ω) = tr[ωE] = a0 + a·bloch(ω)`.
pub fn misra_dual(e: &Effect) -> Result<ClassicalEffect> {
    let q = matrix_to_qubit_effect(e)?;
    Ok(ClassicalEffect {
        offset: q.a0(),
        slope: q.a(),
    })
}

/// Two-atom classical state built from the eigendecomposition of `ρ`;
/// [`misra_reduce`] maps it back to `ρ`.
pub fn misra_decomposition(rho: &DensityOperator) -> Result<ClassicalState> {
    let r = rho.bloch_vector()?;
    let len = r.norm();
    let axis = if len > 1e-15 { r / len } else { Vec3::z() };
    let up = 0.5 * (1.0 + len);
    let mut atoms = vec![(PurePoint::new(axis)?, up)];
    if 1.0 - up > 0.0 {
        atoms.push((PurePoint::new(-axis)?, 1.0 - up));
    }
    ClassicalState::new(atoms)
}

/// Invertible relabeling of the pure states.
pub trait PointMap {
    fn apply(&self, p: &Vec3) -> Vec3;
    fn inverse(&self, p: &Vec3) -> Vec3;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct IdentityMap;

impl PointMap for IdentityMap {
    fn apply(&self, p: &Vec3) -> Vec3 {
        *p
    }
    fn inverse(&self, p: &Vec3) -> Vec3 {
        *p
    }
}

/// `ω ↦ −ω`.
#[derive(Clone, Copy, Debug, Default)]
pub struct AntipodalMap;

impl PointMap for AntipodalMap {
    fn apply(&self, p: &Vec3) -> Vec3 {
        -p
    }
    fn inverse(&self, p: &Vec3) -> Vec3 {
        -p
    }
}

/// Rigid rotation of the Bloch sphere.
#[derive(Clone, Copy, Debug)]
pub struct SphereRotation(pub Rotation3<f64>);

impl SphereRotation {
    pub fn from_axis_angle(axis: &Vec3, angle: f64) -> Result<Self> {
        check_unit(axis)?;
        Ok(Self(Rotation3::from_axis_angle(&Unit::new_unchecked(*axis), angle)))
    }
}

impl PointMap for SphereRotation {
    fn apply(&self, p: &Vec3) -> Vec3 {
        self.0 * p
    }
    fn inverse(&self, p: &Vec3) -> Vec3 {
        self.0.inverse() * p
    }
}

/// Reduction after relabeling: `Ψ(μ) = Ψ_M(μ∘ι⁻¹)`, so that
/// `tr[Ψ(μ)E] = ∫ tr[ι(ω)E] μ(dω)`.
pub fn relabeled_reduce(mu: &ClassicalState, iota: &dyn PointMap) -> Result<DensityOperator> {
    let atoms = mu
        .atoms()
        .iter()
        .map(|(p, w)| {
            let image = iota.apply(&p.bloch);
            let defect = (iota.inverse(&image) - p.bloch).norm();
            if defect > 1e-12 {
                return Err(UnsharpError::NonInvertibleMap { defect });
            }
            let image = PurePoint::new(image).map_err(|_| UnsharpError::NonInvertibleMap {
                defect: (image.norm() - 1.0).abs(),
            })?;
            Ok((image, *w))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(misra_reduce(&ClassicalState { atoms }))
}

/// Both sides of `tr[ρ_μ E] = ∫ f_E dμ`.
pub fn duality_check(mu: &ClassicalState, e: &Effect) -> Result<(f64, f64)> {
    let lhs = born_probability(&misra_reduce(mu), e)?;
    let f = misra_dual(e)?;
    let rhs = mu.atoms().iter().map(|(p, w)| w * f.evaluate(p)).sum();
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{projector, pure_state};
    use crate::sampling;
    use rand::Rng;

    fn point(v: Vec3) -> PurePoint {
        PurePoint::new(v).unwrap()
    }

    #[test]
    fn tetrahedron_is_regular() {
        let t = tetrahedron_directions();
        for i in 0..4 {
            assert!((t[i].norm() - 1.0).abs() < 1e-15);
            for j in (i + 1)..4 {
                assert!((t[i].dot(&t[j]) + 1.0 / 3.0).abs() < 1e-15);
            }
        }
        assert!(t.iter().sum::<Vec3>().norm() < 1e-15);
    }

    #[test]
    fn embed_examples() {
        let a = IcObservable::tetrahedral();
        let p = embed(&DensityOperator::maximally_mixed(2), &a).unwrap();
        assert!(p.iter().all(|v| (v - 0.25).abs() < 1e-15));
        let p = embed(&pure_state(&Vec3::z()).unwrap(), &a).unwrap();
        assert!((p[0] - 0.5).abs() < 1e-15);
        assert!(p[1..].iter().all(|v| (v - 1.0 / 6.0).abs() < 1e-15));
        let mut rng = sampling::seeded_rng(1);
        for _ in 0..50 {
            let p = embed(&sampling::qubit_state(&mut rng), &a).unwrap();
            assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-14);
            assert!(p.iter().all(|&v| v >= -1e-15));
        }
        assert!(embed(&DensityOperator::maximally_mixed(3), &a).is_err());
    }

    #[test]
    fn reconstruct_examples() {
        let a = IcObservable::tetrahedral();
        let rho = reconstruct(&[0.25; 4], &a).unwrap();
        assert!(rho.matrix().max_abs_diff(DensityOperator::maximally_mixed(2).matrix()) < 1e-15);
        let up = pure_state(&Vec3::z()).unwrap();
        let back = reconstruct(&embed(&up, &a).unwrap(), &a).unwrap();
        assert!(back.trace_distance(&up).unwrap() < 1e-12);
        assert!(matches!(
            reconstruct(&[0.3; 4], &a),
            Err(UnsharpError::InconsistentProbabilities { .. })
        ));
        assert!(reconstruct(&[0.5, 0.5, 0.0], &a).is_err());
        // sums to one but lies outside the Bloch ball
        assert!(matches!(
            reconstruct(&[1.0, 0.0, 0.0, 0.0], &a),
            Err(UnsharpError::InconsistentProbabilities { .. })
        ));
    }

    #[test]
    fn rank_deficient_frame_rejected() {
        let pom = crate::operator::sharp_spin(&Vec3::z()).unwrap();
        assert!(matches!(
            IcObservable::new(pom),
            Err(UnsharpError::RankDeficient { .. })
        ));
        // four outcomes, all in the x-z plane
        let effects: Vec<QubitEffect> = [Vec3::x(), -Vec3::x(), Vec3::z(), -Vec3::z()]
            .iter()
            .map(|t| QubitEffect::new(0.25, t * 0.25).unwrap())
            .collect();
        assert!(matches!(
            IcObservable::from_qubit_effects(&effects),
            Err(UnsharpError::RankDeficient { rank: 3 })
        ));
    }

    #[test]
    fn quantize_examples() {
        let a = IcObservable::tetrahedral();
        let q = quantize(&[1.0; 4], &a).unwrap();
        assert!(q.operator.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);
        assert!(q.f_proper && q.effect.is_some());

        let q = quantize(&[2.0, 0.0, 0.0, 0.0], &a).unwrap();
        assert!(q.operator.max_abs_diff(projector(&Vec3::z()).unwrap().matrix()) < 1e-15);
        assert!(!q.f_proper && q.effect.is_some());
        assert_eq!(
            q.violation,
            BoundViolation {
                below_zero: false,
                above_one: true
            }
        );

        for i in 0..4 {
            let mut f = [0.0; 4];
            f[i] = 1.0;
            let q = quantize(&f, &a).unwrap();
            assert!(q.operator.max_abs_diff(a.pom().effects()[i].matrix()) < 1e-15);
        }
        assert!(quantize(&[1.0, 2.0], &a).is_err());
    }

    #[test]
    fn witness_examples() {
        let a = IcObservable::tetrahedral();
        let w = surjectivity_witness(&projector(&Vec3::z()).unwrap(), &a).unwrap();
        let expected = [2.0, 0.0, 0.0, 0.0];
        assert!(w.f.iter().zip(expected).all(|(x, y)| (x - y).abs() < 1e-12));
        assert!(!w.proper && w.violation.above_one && !w.violation.below_zero);

        let w = surjectivity_witness(&a.pom().effects()[0], &a).unwrap();
        assert!(w.f.iter().zip([1.0, 0.0, 0.0, 0.0]).all(|(x, y)| (x - y).abs() < 1e-12));
        assert!(w.proper);

        let half = Effect::new(ComplexMatrix::identity(2).scale(0.5)).unwrap();
        let w = surjectivity_witness(&half, &a).unwrap();
        assert!(w.f.iter().all(|x| (x - 0.5).abs() < 1e-12));
        assert!(w.proper);
    }

    #[test]
    fn witness_can_violate_nonnegativity() {
        // P(−ẑ) = −A1 + A2 + A3 + A4
        let a = IcObservable::tetrahedral();
        let w = surjectivity_witness(&projector(&-Vec3::z()).unwrap(), &a).unwrap();
        assert!(w
            .f
            .iter()
            .zip([-1.0, 1.0, 1.0, 1.0])
            .all(|(x, y)| (x - y).abs() < 1e-12));
        assert!(w.violation.below_zero && !w.violation.above_one);
    }

    #[test]
    fn misra_reduce_examples() {
        let up = misra_reduce(&ClassicalState::dirac(point(Vec3::z())));
        assert!(up.matrix().max_abs_diff(projector(&Vec3::z()).unwrap().matrix()) < 1e-16);

        let mix = ClassicalState::new(vec![(point(Vec3::z()), 0.5), (point(-Vec3::z()), 0.5)]).unwrap();
        assert!(
            misra_reduce(&mix)
                .matrix()
                .max_abs_diff(DensityOperator::maximally_mixed(2).matrix())
                < 1e-16
        );

        let mix = ClassicalState::new(vec![(point(Vec3::z()), 0.5), (point(Vec3::x()), 0.5)]).unwrap();
        let r = misra_reduce(&mix).bloch_vector().unwrap();
        assert!((r - (Vec3::z() + Vec3::x()) / 2.0).norm() < 1e-16);
    }

    #[test]
    fn classical_state_validation() {
        assert!(ClassicalState::new(vec![]).is_err());
        assert!(ClassicalState::new(vec![(point(Vec3::z()), 0.6)]).is_err());
        assert!(ClassicalState::new(vec![(point(Vec3::z()), 1.5), (point(Vec3::x()), -0.5)]).is_err());
        assert!(PurePoint::new(Vec3::new(0.0, 0.0, 0.9)).is_err());
    }

    #[test]
    fn misra_dual_examples() {
        let f = misra_dual(&projector(&Vec3::z()).unwrap()).unwrap();
        for k in 0..=12 {
            let theta = PI * k as f64 / 12.0;
            let w = point(Vec3::new(theta.sin(), 0.0, theta.cos()));
            assert!((f.evaluate(&w) - (theta / 2.0).cos().powi(2)).abs() < 1e-15);
        }
        let half = misra_dual(&Effect::new(ComplexMatrix::identity(2).scale(0.5)).unwrap()).unwrap();
        let mut rng = sampling::seeded_rng(3);
        for _ in 0..10 {
            assert_eq!(half.evaluate(&point(sampling::unit_vector(&mut rng))), 0.5);
        }
        let n = Vec3::new(1.0, 1.0, 1.0).normalize();
        let fp = misra_dual(&projector(&n).unwrap()).unwrap();
        assert!((fp.evaluate(&point(n)) - 1.0).abs() < 1e-15);
        assert!(fp.evaluate(&point(-n)).abs() < 1e-15);
        assert!(fp.is_proper());
    }

    #[test]
    fn misra_dual_is_affine_and_unital() {
        let mut rng = sampling::seeded_rng(6);
        let one = misra_dual(&Effect::identity(2)).unwrap();
        for _ in 0..100 {
            let e = sampling::qubit_effect(&mut rng).to_effect();
            let g = sampling::qubit_effect(&mut rng).to_effect();
            let lambda: f64 = rng.random();
            let mixed = Effect::new(&e.matrix().scale(lambda) + &g.matrix().scale(1.0 - lambda)).unwrap();
            let (fe, fg, fm) = (
                misra_dual(&e).unwrap(),
                misra_dual(&g).unwrap(),
                misra_dual(&mixed).unwrap(),
            );
            let w = point(sampling::unit_vector(&mut rng));
            assert!((fm.evaluate(&w) - (lambda * fe.evaluate(&w) + (1.0 - lambda) * fg.evaluate(&w))).abs() < 1e-14);
            assert!((one.evaluate(&w) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn relabeled_reduce_examples() {
        let mut rng = sampling::seeded_rng(13);
        let atoms: Vec<(PurePoint, f64)> = (0..5).map(|_| (point(sampling::unit_vector(&mut rng)), 0.2)).collect();
        let mu = ClassicalState::new(atoms).unwrap();
        let same = relabeled_reduce(&mu, &IdentityMap).unwrap();
        assert!(same.matrix().max_abs_diff(misra_reduce(&mu).matrix()) < 1e-16);

        let axis = Vec3::new(1.0, -2.0, 2.0) / 3.0;
        let rot = SphereRotation::from_axis_angle(&axis, 0.9).unwrap();
        let w = sampling::unit_vector(&mut rng);
        let rotated = relabeled_reduce(&ClassicalState::dirac(point(w)), &rot).unwrap();
        assert!((rotated.bloch_vector().unwrap() - rot.0 * w).norm() < 1e-12);

        let sym = ClassicalState::new(vec![(point(Vec3::z()), 0.5), (point(-Vec3::z()), 0.5)]).unwrap();
        let flipped = relabeled_reduce(&sym, &AntipodalMap).unwrap();
        assert!(
            flipped
                .matrix()
                .max_abs_diff(DensityOperator::maximally_mixed(2).matrix())
                < 1e-16
        );
    }

    #[test]
    fn relabeled_reduce_rejects_non_invertible_map() {
        struct Collapse;
        impl PointMap for Collapse {
            fn apply(&self, _: &Vec3) -> Vec3 {
                Vec3::z()
            }
            fn inverse(&self, p: &Vec3) -> Vec3 {
                *p
            }
        }
        let mu = ClassicalState::dirac(point(Vec3::x()));
        assert!(matches!(
            relabeled_reduce(&mu, &Collapse),
            Err(UnsharpError::NonInvertibleMap { .. })
        ));
    }

    #[test]
    fn duality_examples() {
        let (l, r) = duality_check(
            &ClassicalState::dirac(point(Vec3::z())),
            &projector(&Vec3::z()).unwrap(),
        )
        .unwrap();
        assert!((l - 1.0).abs() < 1e-15 && (r - 1.0).abs() < 1e-15);
        let mu = ClassicalState::new(vec![(point(Vec3::z()), 0.5), (point(Vec3::x()), 0.5)]).unwrap();
        let (l, r) = duality_check(&mu, &projector(&Vec3::z()).unwrap()).unwrap();
        assert!((l - 0.75).abs() < 1e-15 && (r - 0.75).abs() < 1e-15);
    }

    #[test]
    fn mesh_density_discretization() {
        let mesh = SphereMesh::default();
        let uniform = ClassicalState::from_mesh_density(&mesh, |_| 1.0).unwrap();
        assert_eq!(uniform.atoms().len(), mesh.len());
        assert!(misra_reduce(&uniform).bloch_vector().unwrap().norm() < 1e-12);
        // density ∝ 1 + z has barycenter ẑ/3
        let tilted = ClassicalState::from_mesh_density(&mesh, |n| 1.0 + n.z).unwrap();
        let r = misra_reduce(&tilted).bloch_vector().unwrap();
        assert!((r - Vec3::z() / 3.0).norm() < 1e-3, "{r}");
        assert!(ClassicalState::from_mesh_density(&mesh, |_| 0.0).is_err());
        assert!(ClassicalState::from_mesh_density(&mesh, |n| n.z).is_err());
    }
}
