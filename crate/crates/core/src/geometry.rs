//! Poincaré-disk geometry: points, isometries, reflections and regular polygons.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of the open unit disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiskPoint {
    pub x: f64,
    pub y: f64,
}

impl DiskPoint {
    pub const ORIGIN: DiskPoint = DiskPoint { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        DiskPoint { x, y }
    }

    pub fn z(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }
}

impl From<Complex64> for DiskPoint {
    fn from(z: Complex64) -> Self {
        DiskPoint { x: z.re, y: z.im }
    }
}

/// `z -> (a w + b) / (conj(b) w + conj(a))` with `w = z`, or `w = conj(z)` when
/// reflecting; `|a|^2 - |b|^2 = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskIsometry {
    pub a: Complex64,
    pub b: Complex64,
    pub reflecting: bool,
}

impl DiskIsometry {
    pub fn identity() -> Self {
        DiskIsometry { a: Complex64::new(1.0, 0.0), b: Complex64::new(0.0, 0.0), reflecting: false }
    }

    /// Rotation about the origin by `theta` radians.
    pub fn rotation(theta: f64) -> Self {
        DiskIsometry {
            a: Complex64::from_polar(1.0, theta / 2.0),
            b: Complex64::new(0.0, 0.0),
            reflecting: false,
        }
    }

    /// Mirror across the diameter at angle `theta`.
    pub fn mirror(theta: f64) -> Self {
        DiskIsometry {
            a: Complex64::from_polar(1.0, theta),
            b: Complex64::new(0.0, 0.0),
            reflecting: true,
        }
    }

    /// Direct isometry sending `p` to the origin, fixing the diameter through `p`.
    pub fn to_origin(p: DiskPoint) -> Self {
        let z = p.z();
        let s = (1.0 - z.norm_sqr()).sqrt();
        DiskIsometry { a: Complex64::new(1.0 / s, 0.0), b: -z / s, reflecting: false }
    }

    pub fn apply(&self, p: DiskPoint) -> DiskPoint {
        self.apply_z(p.z()).into()
    }

    pub fn apply_z(&self, z: Complex64) -> Complex64 {
        let w = if self.reflecting { z.conj() } else { z };
        (self.a * w + self.b) / (self.b.conj() * w + self.a.conj())
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &DiskIsometry) -> DiskIsometry {
        let (a2, b2) = if self.reflecting { (other.a.conj(), other.b.conj()) } else { (other.a, other.b) };
        let a = self.a * a2 + self.b * b2.conj();
        let b = self.a * b2 + self.b * a2.conj();
        DiskIsometry { a, b, reflecting: self.reflecting != other.reflecting }.normalized()
    }

    pub fn invert(&self) -> DiskIsometry {
        if self.reflecting {
            DiskIsometry { a: self.a, b: -self.b.conj(), reflecting: true }
        } else {
            DiskIsometry { a: self.a.conj(), b: -self.b, reflecting: false }
        }
    }

    /// Rescales so that `|a|^2 - |b|^2 = 1`, absorbing rounding drift. Far
    /// from the origin that difference cancels out, so scale to `|a| = 1` instead.
    fn normalized(self) -> DiskIsometry {
        let det = self.a.norm_sqr() - self.b.norm_sqr();
        let s = if det > 1e-8 * self.a.norm_sqr() { det.sqrt() } else { self.a.norm() };
        DiskIsometry { a: self.a / s, b: self.b / s, reflecting: self.reflecting }
    }
}

/// Reflection across the geodesic through two distinct points.
pub fn reflect(p: DiskPoint, q: DiskPoint) -> Result<DiskIsometry> {
    if (p.z() - q.z()).norm() < 1e-12 {
        return Err(Error::CoincidentPoints);
    }
    let t = DiskIsometry::to_origin(p);
    let theta = t.apply(q).angle();
    let r = DiskIsometry::mirror(theta);
    Ok(t.invert().compose(&r).compose(&t))
}

pub fn hyperbolic_distance(u: DiskPoint, v: DiskPoint) -> f64 {
    let d2 = (u.z() - v.z()).norm_sqr();
    let denom = (1.0 - u.z().norm_sqr()) * (1.0 - v.z().norm_sqr());
    (1.0 + 2.0 * d2 / denom).acosh()
}

/// True iff `{p,q}` tiles the hyperbolic plane: `1/p + 1/q < 1/2`.
pub fn validate_schlafli(p: u32, q: u32) -> bool {
    p >= 3 && q >= 3 && (p - 2) * (q - 2) > 4
}

/// A polygon of the tiling realized in the disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TilePatch {
    /// Counterclockwise in canonical pose (a reflecting transport reverses it).
    pub vertices: Vec<DiskPoint>,
    pub center: DiskPoint,
}

impl TilePatch {
    pub fn transformed(&self, m: &DiskIsometry) -> TilePatch {
        TilePatch {
            vertices: self.vertices.iter().map(|&v| m.apply(v)).collect(),
            center: m.apply(self.center),
        }
    }

    /// Edge `i` runs from vertex `i` to vertex `i + 1`.
    pub fn edge(&self, i: usize) -> (DiskPoint, DiskPoint) {
        let n = self.vertices.len();
        (self.vertices[i % n], self.vertices[(i + 1) % n])
    }

    /// Interior angle at each vertex, measured between the tangents of the
    /// two incident geodesic edges.
    pub fn interior_angles(&self) -> Vec<f64> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let t = DiskIsometry::to_origin(self.vertices[i]);
                // geodesics through the origin are diameters, so tangents are chords
                let prev = t.apply_z(self.vertices[(i + n - 1) % n].z());
                let next = t.apply_z(self.vertices[(i + 1) % n].z());
                (next / prev).arg().abs()
            })
            .collect()
    }
}

/// Hyperbolic circumradius of the regular `{p,q}` polygon: `cosh R = cot(π/p) cot(π/q)`.
pub fn circumradius(p: u32, q: u32) -> Result<f64> {
    if !validate_schlafli(p, q) {
        return Err(Error::NotHyperbolic { p, q });
    }
    let c = 1.0 / (PI / p as f64).tan() / (PI / q as f64).tan();
    Ok(c.acosh())
}

/// Regular `{p,q}` polygon centered at the origin with vertex 0 on the positive x-axis.
pub fn base_polygon(p: u32, q: u32) -> Result<TilePatch> {
    let r = (circumradius(p, q)? / 2.0).tanh();
    let vertices = (0..p)
        .map(|i| Complex64::from_polar(r, 2.0 * PI * i as f64 / p as f64).into())
        .collect();
    Ok(TilePatch { vertices, center: DiskPoint::ORIGIN })
}
