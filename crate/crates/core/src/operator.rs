//! Finite-dimensional operator algebra: complex matrices, effects, density
//! operators, discrete POMs and the Born rule.
//!
//! Every validated type checks its invariants once, at construction. Code
//! downstream of a constructor may assume validity.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, Vector3};
use num_complex::Complex64;

use crate::error::{Result, UnsharpError};

/// Real 3-vector used for Bloch vectors, axes and sphere points.
pub type Vec3 = Vector3<f64>;

/// Numerical tolerances shared by the validating constructors.
pub mod tol {
    /// Hermiticity defect allowed in `M - M†` (max-abs entry).
    pub const HERM: f64 = 1e-9;
    /// Slack on spectra (effects in `[-POS, 1 + POS]`, states `>= -POS`).
    pub const POS: f64 = 1e-9;
    /// Allowed deviation of a POM's effect sum from the identity.
    pub const SUM: f64 = 1e-9;
    /// Allowed deviation of a density operator's trace from one.
    pub const TRACE: f64 = 1e-9;
    /// Operator-norm threshold below which `ρ1 ρ2` counts as zero.
    pub const ORTH: f64 = 1e-9;
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Square complex matrix with finite entries.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<Complex64>);

impl ComplexMatrix {
    pub fn new(m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(UnsharpError::NotSquare {
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        if m.nrows() == 0 {
            return Err(UnsharpError::Empty);
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(UnsharpError::NonFinite);
        }
        Ok(Self(m))
    }

    /// Builds a matrix from row vectors.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(UnsharpError::NotSquare {
                rows: n,
                cols: bad.len(),
            });
        }
        Self::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Result<Self> {
        let n = diag.len();
        Self::new(DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(diag[i], 0.0)
            } else {
                ZERO
            }
        }))
    }

    pub fn identity(dim: usize) -> Self {
        Self(DMatrix::identity(dim, dim))
    }

    pub fn zeros(dim: usize) -> Self {
        Self(DMatrix::zeros(dim, dim))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<Complex64> {
        self.0
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[(row, col)]
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self(self.0.map(|z| z * factor))
    }

    /// `self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0 - &other.0 * &self.0)
    }

    /// Largest absolute entry of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest absolute entry of `M − M†`.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.dim();
        let mut defect: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                defect = defect.max((self.0[(i, j)] - self.0[(j, i)].conj()).norm());
            }
        }
        defect
    }

    /// Operator norm (largest singular value).
    pub fn op_norm(&self) -> f64 {
        if self.hermitian_defect() <= tol::HERM {
            return self
                .hermitian_eigenvalues()
                .into_iter()
                .map(f64::abs)
                .fold(0.0, f64::max);
        }
        self.0
            .clone()
            .svd(false, false)
            .singular_values
            .iter()
            .copied()
            .fold(0.0, f64::max)
    }

    /// Eigenvalues of the Hermitian part, ascending.
    ///
    /// Two-dimensional inputs take the trace/determinant closed form; larger
    /// ones go through the Hermitian eigensolver.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        if self.dim() == 2 {
            let (lo, hi) = eigenvalues_2x2(&self.0);
            return vec![lo, hi];
        }
        let mut vals: Vec<f64> = self.hermitian_part().symmetric_eigenvalues().iter().copied().collect();
        vals.sort_by(f64::total_cmp);
        vals
    }

    /// Eigenvalues through the general Hermitian eigensolver, ascending.
    /// Used to cross-check the closed-form qubit path.
    pub fn hermitian_eigenvalues_solver(&self) -> Vec<f64> {
        let mut vals: Vec<f64> = self.hermitian_part().symmetric_eigenvalues().iter().copied().collect();
        vals.sort_by(f64::total_cmp);
        vals
    }

    fn hermitian_part(&self) -> DMatrix<Complex64> {
        (&self.0 + self.0.adjoint()).map(|z| z * 0.5)
    }

    /// Square root of a positive semidefinite Hermitian matrix.
    ///
    /// Eigenvalues in `[-tol::POS, SQRT_CLIP)` are set to zero; anything more
    /// negative is rejected.
    pub fn psd_sqrt(&self) -> Result<Self> {
        let h = self.hermitian_part();
        let eig = h.symmetric_eigen();
        let mut sqrt_vals = Vec::with_capacity(self.dim());
        for &lambda in eig.eigenvalues.iter() {
            if lambda < -tol::POS {
                return Err(UnsharpError::SpectrumOutOfRange {
                    eigenvalue: lambda,
                    lo: 0.0,
                    hi: f64::INFINITY,
                });
            }
            sqrt_vals.push(Complex64::new(clip_for_sqrt(lambda).sqrt(), 0.0));
        }
        let v = &eig.eigenvectors;
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(sqrt_vals));
        Ok(Self(v * d * v.adjoint()))
    }

    /// Square root of a positive semidefinite 2×2 matrix via
    /// `√A = (A + √det·I) / √(tr A + 2√det)`.
    pub fn psd_sqrt_2x2(&self) -> Result<Self> {
        if self.dim() != 2 {
            return Err(UnsharpError::DimensionMismatch {
                expected: 2,
                found: self.dim(),
            });
        }
        let (lo, hi) = eigenvalues_2x2(&self.0);
        if lo < -tol::POS {
            return Err(UnsharpError::SpectrumOutOfRange {
                eigenvalue: lo,
                lo: 0.0,
                hi: f64::INFINITY,
            });
        }
        let (lo, hi) = (clip_for_sqrt(lo), clip_for_sqrt(hi));
        let s = (lo * hi).sqrt();
        let denom = (lo + hi + 2.0 * s).sqrt();
        if denom == 0.0 {
            return Ok(Self::zeros(2));
        }
        let h = Self(self.hermitian_part());
        Ok((&h + &Self::identity(2).scale(s)).scale(1.0 / denom))
    }
}

/// Eigenvalues below this are treated as exact zeros before taking square
/// roots; otherwise rounding noise `ε` on a null eigenvalue turns into `√ε`.
pub const SQRT_CLIP: f64 = 1e-12;

fn clip_for_sqrt(lambda: f64) -> f64 {
    if lambda < SQRT_CLIP {
        0.0
    } else {
        lambda
    }
}

fn eigenvalues_2x2(m: &DMatrix<Complex64>) -> (f64, f64) {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b = (m[(0, 1)] + m[(1, 0)].conj()) * 0.5;
    let mean = 0.5 * (a + d);
    let radius = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    (mean - radius, mean + radius)
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexMatrix{}", self.0)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: Self) -> ComplexMatrix {
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: Self) -> ComplexMatrix {
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: Self) -> ComplexMatrix {
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

/// The Pauli matrices σx, σy, σz.
pub fn pauli() -> [ComplexMatrix; 3] {
    let m = |a, b, c, d| ComplexMatrix(DMatrix::from_row_slice(2, 2, &[a, b, c, d]));
    [m(ZERO, ONE, ONE, ZERO), m(ZERO, -I, I, ZERO), m(ONE, ZERO, ZERO, -ONE)]
}

/// `c0·I + c·σ` as a 2×2 matrix.
pub fn bloch_operator(c0: f64, c: &Vec3) -> ComplexMatrix {
    let (x, y, z) = (c.x, c.y, c.z);
    ComplexMatrix(DMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::new(c0 + z, 0.0),
            Complex64::new(x, -y),
            Complex64::new(x, y),
            Complex64::new(c0 - z, 0.0),
        ],
    ))
}

/// Real Bloch coordinates `(c0, c)` of the Hermitian part of a 2×2 matrix,
/// so that `M ≈ c0·I + c·σ`.
pub fn bloch_coordinates(m: &ComplexMatrix) -> Result<(f64, Vec3)> {
    if m.dim() != 2 {
        return Err(UnsharpError::DimensionMismatch {
            expected: 2,
            found: m.dim(),
        });
    }
    let a = m.get(0, 0).re;
    let d = m.get(1, 1).re;
    let off = (m.get(1, 0) + m.get(0, 1).conj()) * 0.5;
    Ok((0.5 * (a + d), Vec3::new(off.re, off.im, 0.5 * (a - d))))
}

/// Checks that `n` has unit length within `1e-12`.
pub fn check_unit(n: &Vec3) -> Result<()> {
    let norm = n.norm();
    if !norm.is_finite() || (norm - 1.0).abs() > 1e-12 {
        return Err(UnsharpError::NotUnitVector { norm });
    }
    Ok(())
}

/// Spin-½ rotation `exp(−i·angle/2·axis·σ)`.
pub fn spin_rotation(axis: &Vec3, angle: f64) -> Result<ComplexMatrix> {
    check_unit(axis)?;
    let (s, c) = (0.5 * angle).sin_cos();
    let generator = bloch_operator(0.0, axis);
    Ok(&ComplexMatrix::identity(2).scale(c) + &ComplexMatrix(generator.0.map(|z| z * Complex64::new(0.0, -s))))
}

/// Hermitian operator with spectrum in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Effect {
    matrix: ComplexMatrix,
}

impl Effect {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let defect = matrix.hermitian_defect();
        if defect > tol::HERM {
            return Err(UnsharpError::NotHermitian { defect });
        }
        let eig = matrix.hermitian_eigenvalues();
        let (lo, hi) = (eig[0], eig[eig.len() - 1]);
        if lo < -tol::POS {
            return Err(UnsharpError::SpectrumOutOfRange {
                eigenvalue: lo,
                lo: 0.0,
                hi: 1.0,
            });
        }
        if hi > 1.0 + tol::POS {
            return Err(UnsharpError::SpectrumOutOfRange {
                eigenvalue: hi,
                lo: 0.0,
                hi: 1.0,
            });
        }
        Ok(Self { matrix })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim),
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::zeros(dim),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// `I − E`.
    pub fn complement(&self) -> Self {
        Self {
            matrix: &ComplexMatrix::identity(self.dim()) - &self.matrix,
        }
    }

    /// Largest entry of `E² − E`; zero for projections.
    pub fn projection_defect(&self) -> f64 {
        (&self.matrix * &self.matrix).max_abs_diff(&self.matrix)
    }
}

/// Positive semidefinite operator of unit trace.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
}

impl DensityOperator {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let defect = matrix.hermitian_defect();
        if defect > tol::HERM {
            return Err(UnsharpError::NotHermitian { defect });
        }
        let lo = matrix.hermitian_eigenvalues()[0];
        if lo < -tol::POS {
            return Err(UnsharpError::SpectrumOutOfRange {
                eigenvalue: lo,
                lo: 0.0,
                hi: 1.0,
            });
        }
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > tol::TRACE {
            return Err(UnsharpError::TraceNotOne { trace });
        }
        Ok(Self { matrix })
    }

    /// Qubit state `½(I + r·σ)` with `|r| ≤ 1`.
    pub fn from_bloch(r: &Vec3) -> Result<Self> {
        let length = r.norm();
        if !(length <= 1.0 + tol::POS) {
            return Err(UnsharpError::VectorTooLong { length, limit: 1.0 });
        }
        Ok(Self {
            matrix: bloch_operator(0.5, &(r * 0.5)),
        })
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim).scale(1.0 / dim as f64),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Bloch vector `r` with `ρ = ½(I + r·σ)`; qubits only.
    pub fn bloch_vector(&self) -> Result<Vec3> {
        bloch_coordinates(&self.matrix).map(|(_, c)| c * 2.0)
    }

    /// Convex mixture `λ·self + (1 − λ)·other`.
    pub fn mix(&self, other: &Self, lambda: f64) -> Result<Self> {
        check_dims(self.dim(), other.dim())?;
        Self::new(&self.matrix.scale(lambda) + &other.matrix.scale(1.0 - lambda))
    }

    /// Trace distance `½‖ρ − σ‖₁`.
    pub fn trace_distance(&self, other: &Self) -> Result<f64> {
        check_dims(self.dim(), other.dim())?;
        let diff = &self.matrix - &other.matrix;
        Ok(0.5 * diff.hermitian_eigenvalues().iter().map(|v| v.abs()).sum::<f64>())
    }
}

/// Sharp projection `P(n) = ½(I + n·σ)` onto the spin-up state along `n`.
pub fn projector(n: &Vec3) -> Result<Effect> {
    check_unit(n)?;
    Ok(Effect {
        matrix: bloch_operator(0.5, &(n * 0.5)),
    })
}

/// Pure qubit state with Bloch vector `n`.
pub fn pure_state(n: &Vec3) -> Result<DensityOperator> {
    check_unit(n)?;
    DensityOperator::from_bloch(n)
}

/// Bloch parametrization `A = a0·I + a·σ` of a qubit effect.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitEffect {
    a0: f64,
    a: Vec3,
}

impl QubitEffect {
    /// Validates `|a| ≤ min(a0, 1 − a0)` up to `tol::POS`.
    pub fn new(a0: f64, a: Vec3) -> Result<Self> {
        if !a0.is_finite() || a.iter().any(|c| !c.is_finite()) {
            return Err(UnsharpError::NonFinite);
        }
        let norm = a.norm();
        let bound = a0.min(1.0 - a0);
        if norm > bound + tol::POS {
            return Err(UnsharpError::InvalidQubitEffect { norm, bound });
        }
        Ok(Self { a0, a })
    }

    pub fn a0(&self) -> f64 {
        self.a0
    }

    pub fn a(&self) -> Vec3 {
        self.a
    }

    /// `I − A`, i.e. `(1 − a0, −a)`.
    pub fn complement(&self) -> Self {
        Self {
            a0: 1.0 - self.a0,
            a: -self.a,
        }
    }

    /// Eigenvalues `a0 − |a|` and `a0 + |a|`.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let r = self.a.norm();
        (self.a0 - r, self.a0 + r)
    }

    pub fn to_effect(&self) -> Effect {
        qubit_effect_to_matrix(self)
    }
}

/// `a0·I + aₓσₓ + a_yσ_y + a_zσ_z`.
pub fn qubit_effect_to_matrix(q: &QubitEffect) -> Effect {
    Effect {
        matrix: bloch_operator(q.a0, &q.a),
    }
}

/// Reads back the Bloch parametrization of a 2×2 effect.
pub fn matrix_to_qubit_effect(e: &Effect) -> Result<QubitEffect> {
    let (a0, a) = bloch_coordinates(e.matrix())?;
    QubitEffect::new(a0, a)
}

/// Finite-outcome POM: labelled effects summing to the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscretePom {
    labels: Vec<String>,
    effects: Vec<Effect>,
}

impl DiscretePom {
    pub fn new(labels: Vec<String>, effects: Vec<Effect>) -> Result<Self> {
        if effects.is_empty() {
            return Err(UnsharpError::EmptyPom);
        }
        if labels.len() != effects.len() {
            return Err(UnsharpError::LabelCount {
                labels: labels.len(),
                effects: effects.len(),
            });
        }
        let dim = effects[0].dim();
        let mut sum = ComplexMatrix::zeros(dim);
        for e in &effects {
            check_dims(dim, e.dim())?;
            sum = &sum + e.matrix();
        }
        let defect = sum.max_abs_diff(&ComplexMatrix::identity(dim));
        if defect > tol::SUM {
            return Err(UnsharpError::NotNormalized { defect });
        }
        Ok(Self { labels, effects })
    }

    /// Two-outcome POM `{E, I − E}` labelled `+` and `−`.
    pub fn binary(e: Effect) -> Self {
        let complement = e.complement();
        Self {
            labels: vec!["+".into(), "-".into()],
            effects: vec![e, complement],
        }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn effects(&self) -> &[Effect] {
        &self.effects
    }

    pub fn len(&self) -> usize {
        self.effects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.effects.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.effects[0].dim()
    }

    pub fn effect(&self, label: &str) -> Option<&Effect> {
        self.labels.iter().position(|l| l == label).map(|i| &self.effects[i])
    }

    /// Outcome probabilities `tr[ρ E_i]` in label order.
    pub fn probabilities(&self, rho: &DensityOperator) -> Result<Vec<f64>> {
        self.effects.iter().map(|e| born_probability(rho, e)).collect()
    }

    /// Largest projection defect over the effects.
    pub fn projection_defect(&self) -> f64 {
        self.effects.iter().map(Effect::projection_defect).fold(0.0, f64::max)
    }

    /// Largest entry-wise difference to another POM with the same outcome count.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.len() != other.len() || self.dim() != other.dim() {
            return f64::INFINITY;
        }
        self.effects
            .iter()
            .zip(&other.effects)
            .map(|(a, b)| a.matrix().max_abs_diff(b.matrix()))
            .fold(0.0, f64::max)
    }
}

fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(UnsharpError::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Born rule `tr[ρE]`.
pub fn born_probability(rho: &DensityOperator, e: &Effect) -> Result<f64> {
    check_dims(rho.dim(), e.dim())?;
    let (r, m) = (rho.matrix().as_matrix(), e.matrix().as_matrix());
    let n = rho.dim();
    let mut acc = ZERO;
    for i in 0..n {
        for j in 0..n {
            acc += r[(i, j)] * m[(j, i)];
        }
    }
    debug_assert!(acc.im.abs() < tol::HERM, "tr[ρE] has imaginary part {}", acc.im);
    Ok(acc.re)
}

/// True iff the supports of `ρ1` and `ρ2` are orthogonal, i.e. a single
/// measurement can tell them apart with certainty.
pub fn single_shot_distinguishable(rho1: &DensityOperator, rho2: &DensityOperator) -> Result<bool> {
    check_dims(rho1.dim(), rho2.dim())?;
    Ok((rho1.matrix() * rho2.matrix()).op_norm() <= tol::ORTH)
}

/// Checks a row-stochastic matrix with `rows` rows.
fn check_stochastic(kernel: &[Vec<f64>], rows: usize) -> Result<usize> {
    if kernel.len() != rows {
        return Err(UnsharpError::NotStochastic(format!(
            "expected {rows} rows, found {}",
            kernel.len()
        )));
    }
    let cols = kernel.first().map_or(0, Vec::len);
    if cols == 0 {
        return Err(UnsharpError::NotStochastic("empty rows".into()));
    }
    for (i, row) in kernel.iter().enumerate() {
        if row.len() != cols {
            return Err(UnsharpError::NotStochastic(format!("row {i} has length {}", row.len())));
        }
        if let Some(v) = row.iter().find(|v| !(-tol::SUM..=1.0 + tol::SUM).contains(*v)) {
            return Err(UnsharpError::NotStochastic(format!(
                "entry {v} in row {i} outside [0, 1]"
            )));
        }
        let s: f64 = row.iter().sum();
        if (s - 1.0).abs() > tol::SUM {
            return Err(UnsharpError::NotStochastic(format!("row {i} sums to {s}")));
        }
    }
    Ok(cols)
}

/// Classical post-processing: output effect `j = Σᵢ kernel[i][j]·E_i`.
///
/// Output outcomes are labelled by their column index.
pub fn post_process(pom: &DiscretePom, kernel: &[Vec<f64>]) -> Result<DiscretePom> {
    let cols = check_stochastic(kernel, pom.len())?;
    let dim = pom.dim();
    let effects = (0..cols)
        .map(|j| {
            let m = pom
                .effects()
                .iter()
                .zip(kernel)
                .fold(ComplexMatrix::zeros(dim), |acc, (e, row)| {
                    &acc + &e.matrix().scale(row[j])
                });
            Effect::new(m)
        })
        .collect::<Result<Vec<_>>>()?;
    let labels = if cols == pom.len() {
        pom.labels().to_vec()
    } else {
        (0..cols).map(|j| j.to_string()).collect()
    };
    DiscretePom::new(labels, effects)
}

/// Smears a sharp binary observable with a 2×2 row-stochastic confusion matrix.
pub fn smear_binary(sharp: &DiscretePom, confusion: [[f64; 2]; 2]) -> Result<DiscretePom> {
    if sharp.len() != 2 {
        return Err(UnsharpError::NotBinary(sharp.len()));
    }
    let defect = sharp.projection_defect();
    if defect > tol::POS {
        return Err(UnsharpError::NotProjective { defect });
    }
    post_process(sharp, &[confusion[0].to_vec(), confusion[1].to_vec()])
}

/// Sharp spin observable `{P(n), P(−n)}`.
pub fn sharp_spin(n: &Vec3) -> Result<DiscretePom> {
    Ok(DiscretePom::binary(projector(n)?))
}
