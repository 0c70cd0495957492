//! The transform: one extended diagram per direction on an even grid.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::boundary::{boundary_curves, signed_area2, BoundaryCurve};
use crate::diagram::ExtendedDiagram;
use crate::error::{Error, Result};
use crate::geometry::Direction;
use crate::image::BinaryImage;
use crate::persistence::xph_from_boundary;

/// `K` unit directions `(cos(2πi/K), sin(2πi/K))`.
///
/// The grid is built so that its symmetries hold bit for bit: slot `i + K/2`
/// is the exact negation of slot `i`, and when `K` is a multiple of four,
/// slot `i + K/4` is the exact quarter turn of slot `i`. The two diagonals
/// use `1/√2` for both components.
pub fn directions(count: usize, centered: bool) -> Result<Vec<Direction>> {
    if count < 2 || !count.is_multiple_of(2) {
        return Err(Error::InvalidDirectionCount { count, reason: "must be even and at least 2" });
    }
    if centered && !count.is_multiple_of(4) {
        return Err(Error::InvalidDirectionCount { count, reason: "centring needs a multiple of four" });
    }
    let angle = |i: usize| 2.0 * PI * i as f64 / count as f64;
    let mut dirs = Vec::with_capacity(count);
    if count.is_multiple_of(4) {
        let quarter = count / 4;
        for i in 0..quarter {
            let (x, y) = match (2 * i).cmp(&quarter) {
                std::cmp::Ordering::Less => (angle(i).cos(), angle(i).sin()),
                std::cmp::Ordering::Equal => (FRAC_1_SQRT_2, FRAC_1_SQRT_2),
                std::cmp::Ordering::Greater => {
                    let mirror = angle(quarter - i);
                    (mirror.sin(), mirror.cos())
                }
            };
            dirs.push(Direction::from_components_unchecked(x, y));
        }
        for i in quarter..2 * quarter {
            dirs.push(dirs[i - quarter].perp());
        }
    } else {
        for i in 0..count / 2 {
            dirs.push(Direction::from_angle(angle(i)));
        }
    }
    for i in count / 2..count {
        dirs.push(dirs[i - count / 2].opposite());
    }
    Ok(dirs)
}

/// Translates the curves so the area centroid of the enclosed foreground is
/// at the origin. Returns the curves and the translation applied.
///
/// Interior curves carry negative signed area, so summing the shoelace
/// moments over all curves subtracts the holes.
pub fn center(curves: &[BoundaryCurve]) -> Result<(Vec<BoundaryCurve>, [f64; 2])> {
    let centroid = area_centroid(curves)?;
    let offset = [-centroid[0], -centroid[1]];
    Ok((curves.iter().map(|c| c.translated(offset)).collect(), offset))
}

/// Area centroid of the region bounded by `curves`.
pub fn area_centroid(curves: &[BoundaryCurve]) -> Result<[f64; 2]> {
    let mut area2 = 0.0;
    let mut moment = [0.0; 2];
    for curve in curves {
        let v = &curve.vertices;
        area2 += signed_area2(v);
        for k in 0..v.len() {
            let (p, q) = (v[k], v[(k + 1) % v.len()]);
            let cross = p[0] * q[1] - p[1] * q[0];
            moment[0] += (p[0] + q[0]) * cross;
            moment[1] += (p[1] + q[1]) * cross;
        }
    }
    if area2.abs() < 1e-12 {
        return Err(Error::ZeroArea);
    }
    Ok([moment[0] / (3.0 * area2), moment[1] / (3.0 * area2)])
}

/// The transform of one shape.
#[derive(Clone, Debug, PartialEq)]
pub struct Xpht {
    pub directions: Vec<Direction>,
    /// `diagrams[i]` belongs to `directions[i]`.
    pub diagrams: Vec<ExtendedDiagram>,
    pub source: String,
    pub centered: bool,
    /// Offset added to every vertex before filtering.
    pub translation: [f64; 2],
    /// Number of directions actually filtered; the rest come from duality.
    pub filtration_passes: usize,
}

impl Xpht {
    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }
}

/// Computes the transform of `img` on a grid of `count` directions.
///
/// Only the first half of the grid is filtered; the opposite directions are
/// filled in with [`ExtendedDiagram::dual`].
pub fn compute_xpht(img: &BinaryImage, count: usize, centered: bool) -> Result<Xpht> {
    if img.foreground_count() == 0 {
        return Err(Error::EmptyForeground);
    }
    compute_xpht_from_curves(&boundary_curves(img), count, centered)
}

/// [`compute_xpht`] for curves that were already traced.
pub fn compute_xpht_from_curves(curves: &[BoundaryCurve], count: usize, centered: bool) -> Result<Xpht> {
    if curves.is_empty() {
        return Err(Error::EmptyForeground);
    }
    let dirs = directions(count, centered)?;
    let (curves, translation) = if centered { center(curves)? } else { (curves.to_vec(), [0.0, 0.0]) };

    let passes = AtomicUsize::new(0);
    let half: Vec<ExtendedDiagram> = dirs[..count / 2]
        .par_iter()
        .map(|&v| {
            passes.fetch_add(1, Ordering::Relaxed);
            xph_from_boundary(&curves, v)
        })
        .collect::<Result<_>>()?;
    let passes = passes.into_inner();
    assert_eq!(passes, count / 2, "every filtered direction runs exactly once");

    let mut diagrams = half.clone();
    diagrams.extend(half.iter().map(ExtendedDiagram::dual));
    Ok(Xpht { directions: dirs, diagrams, source: String::new(), centered, translation, filtration_passes: passes })
}
