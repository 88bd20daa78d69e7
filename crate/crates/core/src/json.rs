//! JSON wire formats.
//!
//! - complex entry: `[re, im]`; matrix: array of rows
//! - qubit effect: `{"a0": number, "a": [x, y, z]}`
//! - region: `{"cap": {"axis": [x, y, z], "half_angle_deg": d}}`,
//!   `{"hemisphere": {"axis": [x, y, z]}}` or
//!   `{"mesh_cells": {"level": n, "cells": [i, ...]}}`
//! - classical state: `{"atoms": [{"bloch": [x, y, z], "w": number}, ...]}`
//!
//! Region axes may have any nonzero length and are normalized on input.
//! Atom Bloch vectors must be unit length.

use std::sync::Arc;

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::classical::{ClassicalState, PurePoint};
use crate::error::{Result, UnsharpError};
use crate::operator::{ComplexMatrix, DensityOperator, Effect, QubitEffect, Vec3};
use crate::sphere::{SphereMesh, SphereRegion};

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.dim();
        let rows: Vec<Vec<[f64; 2]>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let z = self.get(i, j);
                        [z.re, z.im]
                    })
                    .collect()
            })
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<[f64; 2]>>::deserialize(d)?;
        let rows: Vec<Vec<Complex64>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
            .collect();
        ComplexMatrix::from_rows(&rows).map_err(D::Error::custom)
    }
}

impl Serialize for Effect {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.matrix().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Effect {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Effect::new(ComplexMatrix::deserialize(d)?).map_err(D::Error::custom)
    }
}

impl Serialize for DensityOperator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.matrix().serialize(s)
    }
}

impl<'de> Deserialize<'de> for DensityOperator {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        DensityOperator::new(ComplexMatrix::deserialize(d)?).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QubitEffectRepr {
    a0: f64,
    a: [f64; 3],
}

impl Serialize for QubitEffect {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let a = self.a();
        QubitEffectRepr {
            a0: self.a0(),
            a: [a.x, a.y, a.z],
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QubitEffect {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = QubitEffectRepr::deserialize(d)?;
        QubitEffect::new(r.a0, Vec3::from(r.a)).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum RegionRepr {
    Cap { axis: [f64; 3], half_angle_deg: f64 },
    Hemisphere { axis: [f64; 3] },
    MeshCells { level: u32, cells: Vec<usize> },
}

/// Largest mesh level accepted from JSON (`20·4⁷ ≈ 3.3·10⁵` cells).
pub const MAX_JSON_MESH_LEVEL: u32 = 7;

fn unit_axis(axis: [f64; 3]) -> Result<Vec3> {
    let v = Vec3::from(axis);
    let norm = v.norm();
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(UnsharpError::InvalidRegion(format!("axis {axis:?} has no direction")));
    }
    Ok(v / norm)
}

impl TryFrom<RegionRepr> for SphereRegion {
    type Error = UnsharpError;

    fn try_from(r: RegionRepr) -> Result<Self> {
        match r {
            RegionRepr::Cap { axis, half_angle_deg } => {
                SphereRegion::cap(unit_axis(axis)?, half_angle_deg.to_radians())
            }
            RegionRepr::Hemisphere { axis } => SphereRegion::hemisphere(unit_axis(axis)?),
            RegionRepr::MeshCells { level, cells } => {
                if level > MAX_JSON_MESH_LEVEL {
                    return Err(UnsharpError::InvalidRegion(format!(
                        "mesh level {level} above {MAX_JSON_MESH_LEVEL}"
                    )));
                }
                let region = SphereRegion::MeshCells {
                    mesh: Arc::new(SphereMesh::icosahedral(level)),
                    cells,
                };
                region.validate()?;
                Ok(region)
            }
        }
    }
}

/// Parses a region from its JSON form.
pub fn region_from_json(value: serde_json::Value) -> Result<SphereRegion> {
    let repr: RegionRepr = serde_json::from_value(value).map_err(|e| UnsharpError::InvalidRegion(e.to_string()))?;
    repr.try_into()
}

/// JSON form of an analytic region; mesh regions are written with the level
/// inferred from their cell count.
pub fn region_to_json(region: &SphereRegion) -> serde_json::Value {
    let repr = match region {
        SphereRegion::Cap { axis, half_angle } => RegionRepr::Cap {
            axis: [axis.x, axis.y, axis.z],
            half_angle_deg: half_angle.to_degrees(),
        },
        SphereRegion::Hemisphere { axis } => RegionRepr::Hemisphere {
            axis: [axis.x, axis.y, axis.z],
        },
        SphereRegion::MeshCells { mesh, cells } => RegionRepr::MeshCells {
            level: ((mesh.len() / 20) as f64).log(4.0).round() as u32,
            cells: cells.clone(),
        },
    };
    serde_json::to_value(repr).expect("region serializes")
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AtomRepr {
    bloch: [f64; 3],
    w: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassicalStateRepr {
    atoms: Vec<AtomRepr>,
}

impl Serialize for ClassicalState {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ClassicalStateRepr {
            atoms: self
                .atoms()
                .iter()
                .map(|(p, w)| {
                    let b = p.bloch();
                    AtomRepr {
                        bloch: [b.x, b.y, b.z],
                        w: *w,
                    }
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ClassicalState {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = ClassicalStateRepr::deserialize(d)?;
        let atoms = repr
            .atoms
            .into_iter()
            .map(|a| Ok((PurePoint::new(Vec3::from(a.bloch))?, a.w)))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        ClassicalState::new(atoms).map_err(D::Error::custom)
    }
}
