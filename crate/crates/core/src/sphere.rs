//! The rotation-covariant spin POM on the unit sphere,
//! `G(Z) = (1/2π) ∫_Z ½(I + n·σ) dΩ(n)`, evaluated on caps, hemispheres and
//! mesh cells.
//!
//! Caps have a closed form: by axial symmetry `∫_cap dΩ = 2π(1 − cos θ)` and
//! `∫_cap n dΩ = π sin²θ · m`, so `G(cap) = ½(1 − cos θ)·I + ¼ sin²θ·(m·σ)`.
//! Icosahedral mesh quadrature and Monte Carlo sampling give two independent
//! numerical routes to the same integral.

use std::f64::consts::PI;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Result, UnsharpError};
use crate::jm::{grid_pom, jm_closed_form, JmReport};
use crate::operator::{
    bloch_operator, check_unit, projector, smear_binary, tol, DiscretePom, Effect, QubitEffect, Vec3,
};
use crate::sampling;

/// Subdivision level of the default mesh (`20·4³ = 1280` cells).
pub const DEFAULT_MESH_LEVEL: u32 = 3;

/// Default number of Monte Carlo samples.
pub const DEFAULT_MC_SAMPLES: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeshCell {
    pub vertices: [Vec3; 3],
    /// Normalized centroid of the vertices.
    pub center: Vec3,
    /// Exact solid angle of the spherical triangle, in steradians.
    pub solid_angle: f64,
}

/// Icosahedral subdivision of the unit sphere into spherical triangles.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereMesh {
    cells: Vec<MeshCell>,
}

impl SphereMesh {
    /// Subdivides the icosahedron `level` times (`20·4^level` cells).
    pub fn icosahedral(level: u32) -> Self {
        let mut tris = icosahedron();
        for _ in 0..level {
            tris = tris
                .into_iter()
                .flat_map(|[a, b, c]| {
                    let ab = (a + b).normalize();
                    let bc = (b + c).normalize();
                    let ca = (c + a).normalize();
                    [[a, ab, ca], [ab, b, bc], [ca, bc, c], [ab, bc, ca]]
                })
                .collect();
        }
        let cells = tris
            .into_iter()
            .map(|vertices| {
                let [a, b, c] = vertices;
                MeshCell {
                    vertices,
                    center: (a + b + c).normalize(),
                    solid_angle: triangle_solid_angle(&a, &b, &c),
                }
            })
            .collect();
        Self { cells }
    }

    pub fn cells(&self) -> &[MeshCell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn total_solid_angle(&self) -> f64 {
        self.cells.iter().map(|c| c.solid_angle).sum()
    }

    /// Indices of cells whose centers satisfy `pred`.
    pub fn select<F: Fn(&Vec3) -> bool>(&self, pred: F) -> Vec<usize> {
        (0..self.cells.len()).filter(|&i| pred(&self.cells[i].center)).collect()
    }

    /// Quadrature `(1/2π) Σ ½(I + nᵢ·σ) wᵢ` over the given cells.
    pub fn covariant_effect(&self, cells: &[usize]) -> Result<Effect> {
        let mut seen = vec![false; self.cells.len()];
        let mut weight = 0.0;
        let mut moment = Vec3::zeros();
        for &i in cells {
            let cell = self
                .cells
                .get(i)
                .ok_or_else(|| UnsharpError::InvalidRegion(format!("cell index {i} out of range")))?;
            if std::mem::replace(&mut seen[i], true) {
                return Err(UnsharpError::InvalidRegion(format!("cell index {i} repeated")));
            }
            weight += cell.solid_angle;
            moment += cell.center * cell.solid_angle;
        }
        Effect::new(bloch_operator(weight / (4.0 * PI), &(moment / (4.0 * PI))))
    }
}

impl Default for SphereMesh {
    fn default() -> Self {
        Self::icosahedral(DEFAULT_MESH_LEVEL)
    }
}

fn icosahedron() -> Vec<[Vec3; 3]> {
    let t = (1.0 + 5f64.sqrt()) / 2.0;
    let v: Vec<Vec3> = [
        (-1.0, t, 0.0),
        (1.0, t, 0.0),
        (-1.0, -t, 0.0),
        (1.0, -t, 0.0),
        (0.0, -1.0, t),
        (0.0, 1.0, t),
        (0.0, -1.0, -t),
        (0.0, 1.0, -t),
        (t, 0.0, -1.0),
        (t, 0.0, 1.0),
        (-t, 0.0, -1.0),
        (-t, 0.0, 1.0),
    ]
    .iter()
    .map(|&(x, y, z)| Vec3::new(x, y, z).normalize())
    .collect();
    const FACES: [[usize; 3]; 20] = [
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    FACES.iter().map(|f| [v[f[0]], v[f[1]], v[f[2]]]).collect()
}

/// Solid angle of the spherical triangle with unit vertices `a, b, c`:
/// `tan(Ω/2) = |a·(b×c)| / (1 + a·b + b·c + c·a)`.
pub fn triangle_solid_angle(a: &Vec3, b: &Vec3, c: &Vec3) -> f64 {
    let num = a.dot(&b.cross(c)).abs();
    let den = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
    2.0 * num.atan2(den)
}

/// A Borel subset of the unit sphere on which `G` can be evaluated.
#[derive(Clone, Debug, PartialEq)]
pub enum SphereRegion {
    /// Points within `half_angle` of `axis`.
    Cap { axis: Vec3, half_angle: f64 },
    /// Points with `n·axis ≥ 0`.
    Hemisphere { axis: Vec3 },
    /// A union of cells of a mesh.
    MeshCells { mesh: Arc<SphereMesh>, cells: Vec<usize> },
}

impl SphereRegion {
    pub fn cap(axis: Vec3, half_angle: f64) -> Result<Self> {
        let region = SphereRegion::Cap { axis, half_angle };
        region.validate()?;
        Ok(region)
    }

    pub fn hemisphere(axis: Vec3) -> Result<Self> {
        let region = SphereRegion::Hemisphere { axis };
        region.validate()?;
        Ok(region)
    }

    /// The whole sphere, as a cap of half-angle π.
    pub fn full_sphere() -> Self {
        SphereRegion::Cap {
            axis: Vec3::z(),
            half_angle: PI,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SphereRegion::Cap { axis, half_angle } => {
                check_unit(axis).map_err(|e| UnsharpError::InvalidRegion(e.to_string()))?;
                if !(0.0..=PI).contains(half_angle) {
                    return Err(UnsharpError::InvalidRegion(format!(
                        "half angle {half_angle} outside [0, π]"
                    )));
                }
                Ok(())
            }
            SphereRegion::Hemisphere { axis } => {
                check_unit(axis).map_err(|e| UnsharpError::InvalidRegion(e.to_string()))
            }
            SphereRegion::MeshCells { mesh, cells } => {
                if let Some(i) = cells.iter().find(|&&i| i >= mesh.len()) {
                    return Err(UnsharpError::InvalidRegion(format!("cell index {i} out of range")));
                }
                Ok(())
            }
        }
    }

    /// Membership test for the analytic regions; mesh regions have no
    /// point-location and return an error.
    pub fn contains(&self, n: &Vec3) -> Result<bool> {
        match self {
            SphereRegion::Cap { axis, half_angle } => Ok(n.dot(axis) >= half_angle.cos()),
            SphereRegion::Hemisphere { axis } => Ok(n.dot(axis) >= 0.0),
            SphereRegion::MeshCells { .. } => Err(UnsharpError::InvalidRegion(
                "mesh regions do not support point membership".into(),
            )),
        }
    }
}

/// Evaluates `G` on a region: closed form for caps and hemispheres,
/// quadrature for mesh cells.
pub fn covariant_effect(region: &SphereRegion) -> Result<Effect> {
    region.validate()?;
    match region {
        SphereRegion::Cap { axis, half_angle } => {
            let (s, c) = half_angle.sin_cos();
            Effect::new(bloch_operator(0.5 * (1.0 - c), &(axis * (0.25 * s * s))))
        }
        SphereRegion::Hemisphere { axis } => Effect::new(bloch_operator(0.5, &(axis * 0.25))),
        SphereRegion::MeshCells { mesh, cells } => mesh.covariant_effect(cells),
    }
}

/// Monte Carlo estimate of `G(Z) = E[(I + n·σ)·1_Z(n)]` for uniform `n`, with
/// per-coordinate standard errors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonteCarloEstimate {
    pub c0: f64,
    pub c: Vec3,
    pub stderr_c0: f64,
    pub stderr_c: Vec3,
    pub samples: usize,
}

impl MonteCarloEstimate {
    /// Largest deviation from `(c0, c)` measured in standard errors.
    /// Coordinates with zero spread must match to `1e-12`.
    pub fn max_sigma_deviation(&self, c0: f64, c: &Vec3) -> f64 {
        let pairs = [
            (self.c0 - c0, self.stderr_c0),
            (self.c.x - c.x, self.stderr_c.x),
            (self.c.y - c.y, self.stderr_c.y),
            (self.c.z - c.z, self.stderr_c.z),
        ];
        pairs
            .iter()
            .map(|&(d, se)| {
                if se > 0.0 {
                    d.abs() / se
                } else if d.abs() <= 1e-12 {
                    0.0
                } else {
                    f64::INFINITY
                }
            })
            .fold(0.0, f64::max)
    }
}

pub fn monte_carlo_effect(region: &SphereRegion, samples: usize, seed: u64) -> Result<MonteCarloEstimate> {
    region.validate()?;
    if samples < 2 {
        return Err(UnsharpError::InvalidParameter(format!("{samples} Monte Carlo samples")));
    }
    let mut rng = sampling::seeded_rng(seed);
    let mut sum = [0.0f64; 4];
    let mut sum_sq = [0.0f64; 4];
    for _ in 0..samples {
        let n = sampling::unit_vector(&mut rng);
        if region.contains(&n)? {
            let v = [1.0, n.x, n.y, n.z];
            for k in 0..4 {
                sum[k] += v[k];
                sum_sq[k] += v[k] * v[k];
            }
        }
    }
    let m = samples as f64;
    let mean = sum.map(|s| s / m);
    let mut se = [0.0; 4];
    for k in 0..4 {
        let var = (sum_sq[k] / m - mean[k] * mean[k]).max(0.0) * m / (m - 1.0);
        se[k] = (var / m).sqrt();
    }
    Ok(MonteCarloEstimate {
        c0: mean[0],
        c: Vec3::new(mean[1], mean[2], mean[3]),
        stderr_c0: se[0],
        stderr_c: Vec3::new(se[1], se[2], se[3]),
        samples,
    })
}

/// `samples` uniform points on the sphere.
pub fn sphere_sample<R: Rng + ?Sized>(rng: &mut R, samples: usize) -> Vec<Vec3> {
    (0..samples).map(|_| sampling::unit_vector(rng)).collect()
}

fn normalized(n0: &Vec3) -> Result<Vec3> {
    let norm = n0.norm();
    if !(norm > tol::POS) || !norm.is_finite() {
        return Err(UnsharpError::NotUnitVector { norm });
    }
    Ok(n0 / norm)
}

/// The simple observable `{G(Z(n0)), G(Z(−n0))} = {½(I ± ½n0·σ)}`.
/// Nonzero axes are normalized.
pub fn hemisphere_binary_pom(n0: &Vec3) -> Result<DiscretePom> {
    let n = normalized(n0)?;
    let plus = covariant_effect(&SphereRegion::Hemisphere { axis: n })?;
    Ok(DiscretePom::binary(plus))
}

/// Checks `½(I + ½n0·σ) = ¾P(n0) + ¼P(−n0)` (and its complement) to `1e-12`.
pub fn verify_smearing(n0: &Vec3) -> bool {
    let check = || -> Result<bool> {
        let n = normalized(n0)?;
        let sharp = DiscretePom::binary(projector(&n)?);
        let smeared = smear_binary(&sharp, [[0.75, 0.25], [0.25, 0.75]])?;
        Ok(hemisphere_binary_pom(&n)?.max_abs_diff(&smeared) <= 1e-12)
    };
    check().unwrap_or(false)
}

/// Closed-form coexistence report for two hemisphere effects.
pub fn pairwise_hemisphere_jm(n0: &Vec3, n0p: &Vec3) -> Result<JmReport> {
    let (n, m) = (normalized(n0)?, normalized(n0p)?);
    let a = QubitEffect::new(0.5, n * 0.25)?;
    let b = QubitEffect::new(0.5, m * 0.25)?;
    jm_closed_form(&a, &b)
}

/// `G` coarse-grained to the four hemisphere intersections
/// `Z(±n0) ∩ Z(±n0′)`, in closed form.
///
/// A lune of dihedral angle `α` has solid angle `2α` and first moment
/// `π sin(α/2)` along its bisector, which gives
/// `G(s, t) = (α_st / 2π)·I + ⅛(s·n0 + t·n0′)·σ` with `α₊₊ = α₋₋ = π − γ`,
/// `α₊₋ = α₋₊ = γ` and `γ` the angle between the axes.
pub fn lune_joint_pom(n0: &Vec3, n0p: &Vec3) -> Result<DiscretePom> {
    let (n, m) = (normalized(n0)?, normalized(n0p)?);
    let gamma = n.dot(&m).clamp(-1.0, 1.0).acos();
    let cell = |s: f64, t: f64, angle: f64| Effect::new(bloch_operator(angle / (2.0 * PI), &((n * s + m * t) / 8.0)));
    grid_pom([
        cell(1.0, 1.0, PI - gamma)?,
        cell(1.0, -1.0, gamma)?,
        cell(-1.0, 1.0, gamma)?,
        cell(-1.0, -1.0, PI - gamma)?,
    ])
}

/// Mesh version of [`lune_joint_pom`]: cells are assigned to a quadrant by
/// the signs of `center·n0` and `center·n0′`.
pub fn mesh_lune_joint_pom(mesh: &SphereMesh, n0: &Vec3, n0p: &Vec3) -> Result<DiscretePom> {
    let (n, m) = (normalized(n0)?, normalized(n0p)?);
    let mut buckets: [Vec<usize>; 4] = Default::default();
    for (i, cell) in mesh.cells().iter().enumerate() {
        let first = cell.center.dot(&n) >= 0.0;
        let second = cell.center.dot(&m) >= 0.0;
        let slot = match (first, second) {
            (true, true) => 0,
            (true, false) => 1,
            (false, true) => 2,
            (false, false) => 3,
        };
        buckets[slot].push(i);
    }
    let [b0, b1, b2, b3] = buckets;
    grid_pom([
        mesh.covariant_effect(&b0)?,
        mesh.covariant_effect(&b1)?,
        mesh.covariant_effect(&b2)?,
        mesh.covariant_effect(&b3)?,
    ])
}
