use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point or vector in R^3.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, rhs: Vec3) -> f64 {
        self.x * rhs.x + self.y * rhs.y + self.z * rhs.z
    }

    pub fn cross(self, rhs: Vec3) -> Vec3 {
        Vec3::new(
            self.y * rhs.z - self.z * rhs.y,
            self.z * rhs.x - self.x * rhs.z,
            self.x * rhs.y - self.y * rhs.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn normalized(self) -> Option<Vec3> {
        let n = self.norm();
        if n > 0.0 && n.is_finite() {
            Some(self * (1.0 / n))
        } else {
            None
        }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Some unit vector orthogonal to `self` (which must be nonzero).
    pub fn any_orthonormal(self) -> Vec3 {
        let candidate = if self.x.abs() <= self.y.abs() && self.x.abs() <= self.z.abs() {
            Vec3::new(0.0, -self.z, self.y)
        } else if self.y.abs() <= self.z.abs() {
            Vec3::new(-self.z, 0.0, self.x)
        } else {
            Vec3::new(-self.y, self.x, 0.0)
        };
        candidate.normalized().unwrap_or(Vec3::new(1.0, 0.0, 0.0))
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

/// A unit vector on S^2. Construction normalizes; the invariant |u| = 1
/// holds to 1e-12 thereafter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Direction(Vec3);

impl Direction {
    pub fn new(v: Vec3) -> Result<Direction> {
        if !v.is_finite() {
            return Err(Error::InvalidDirection("components must be finite".into()));
        }
        match v.normalized() {
            Some(u) => Ok(Direction(u)),
            None => Err(Error::InvalidDirection("direction must be non-zero".into())),
        }
    }

    pub fn vec(self) -> Vec3 {
        self.0
    }

    pub fn flipped(self) -> Direction {
        Direction(-self.0)
    }

    /// Rotate by `angle` about `axis` (Rodrigues). `axis` must be unit.
    pub fn rotated_about(self, axis: Vec3, angle: f64) -> Direction {
        let (sin, cos) = angle.sin_cos();
        let u = self.0;
        let v = u * cos + axis.cross(u) * sin + axis * (axis.dot(u) * (1.0 - cos));
        // Renormalize to keep the unit invariant against rounding drift.
        Direction(v.normalized().expect("rotation preserves the norm"))
    }
}
