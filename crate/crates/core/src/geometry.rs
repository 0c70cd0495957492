//! Points in the image plane and unit directions.
//!
//! Coordinates follow the image convention: the first axis runs down the page
//! (rows) and the second runs left to right (columns). Pixel `(i, j)` sits at
//! the Cartesian point `(i, j)` with 1-based indices.

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// A point `[row, col]` in the image plane.
pub type Point = [f64; 2];

const UNIT_TOLERANCE: f64 = 1e-12;

/// A unit vector in the image plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Direction {
    components: [f64; 2],
}

impl Direction {
    /// Builds a direction from components that must already have unit length.
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !x.is_finite() || !y.is_finite() || ((x * x + y * y).sqrt() - 1.0).abs() > UNIT_TOLERANCE {
            return Err(Error::NotUnit(x, y));
        }
        Ok(Self { components: [x, y] })
    }

    /// Normalises `(x, y)`; fails on the zero vector.
    pub fn normalized(x: f64, y: f64) -> Result<Self> {
        let norm = x.hypot(y);
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::NotUnit(x, y));
        }
        if (norm - 1.0).abs() <= UNIT_TOLERANCE {
            return Ok(Self { components: [x, y] });
        }
        Ok(Self { components: [x / norm, y / norm] })
    }

    /// `(cos θ, sin θ)`.
    pub fn from_angle(theta: f64) -> Self {
        Self { components: [theta.cos(), theta.sin()] }
    }

    pub(crate) const fn from_components_unchecked(x: f64, y: f64) -> Self {
        Self { components: [x, y] }
    }

    pub fn x(&self) -> f64 {
        self.components[0]
    }

    pub fn y(&self) -> f64 {
        self.components[1]
    }

    pub fn components(&self) -> [f64; 2] {
        self.components
    }

    /// Rotation by +π/2 in the `(row, col)` frame: `(x, y) ↦ (−y, x)`.
    pub fn perp(&self) -> Self {
        Self { components: [-self.components[1], self.components[0]] }
    }

    /// The opposite direction. Negation is exact, so heights negate exactly.
    pub fn opposite(&self) -> Self {
        Self { components: [-self.components[0], -self.components[1]] }
    }

    /// The height `p · v`.
    ///
    /// Along the two diagonals the coordinate sum is formed first (it is
    /// exact for half-integer coordinates) and scaled once, so points whose
    /// heights agree mathematically get bit-identical heights. On the axes
    /// the plain product is already exact.
    pub fn height(&self, p: Point) -> f64 {
        let [x, y] = self.components;
        if x.abs() == y.abs() {
            (p[0] * x.signum() + p[1] * y.signum()) * x.abs()
        } else {
            p[0] * x + p[1] * y
        }
    }

    /// `(h_v(p), h_{v⊥}(p))`. Lexicographic order on these keys is the order
    /// induced by an infinitesimal anticlockwise rotation of `v`.
    pub fn tie_break_key(&self, p: Point) -> (f64, f64) {
        (self.height(p), self.perp().height(p))
    }

    /// Strict total order on distinct points given by [`Self::tie_break_key`].
    pub fn cmp_points(&self, a: Point, b: Point) -> Ordering {
        let (ha, pa) = self.tie_break_key(a);
        let (hb, pb) = self.tie_break_key(b);
        ha.total_cmp(&hb).then_with(|| pa.total_cmp(&pb))
    }
}

/// `DET(a, b)` for the 2×2 matrix with columns `a` and `b`.
pub fn det(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

pub fn sub(a: Point, b: Point) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

/// Rotation by +π/2 in the `(row, col)` frame.
pub fn rotate_quarter(a: [f64; 2]) -> [f64; 2] {
    [-a[1], a[0]]
}
