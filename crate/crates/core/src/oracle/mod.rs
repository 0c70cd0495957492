//! Slow, independent recomputation of everything the fast path produces.
//!
//! The foreground is triangulated cell by cell ([`complex`]) and its extended
//! persistence is read off a reduced boundary matrix ([`reduction`]).
//! Transport costs are found by trying every plan ([`transport`]). None of
//! this goes through the boundary tracer, the union-find shortcut, duality,
//! or the assignment solvers.

pub mod complex;
pub mod decomposition;
pub mod reduction;
pub mod transport;

pub use complex::{curve_complex, triangulate_region, Complex, Side};
pub use decomposition::{check_decomposition, Decomposition};
pub use reduction::{extended_persistence_reduction, extended_persistence_reduction_with, ph0_reduction};
pub use transport::{brute_force_joint, brute_force_wasserstein, BRUTE_FORCE_CAP};

use crate::error::{Error, Result};
use crate::image::BinaryImage;
use crate::transform::{directions, Xpht};

/// The transform computed by reduction in every direction, with no use of
/// duality. Centring moves the triangulation's own area centroid to the
/// origin.
pub fn xpht_by_reduction(img: &BinaryImage, count: usize, centered: bool) -> Result<Xpht> {
    if img.foreground_count() == 0 {
        return Err(Error::EmptyForeground);
    }
    let dirs = directions(count, centered)?;
    let mut region = triangulate_region(img, Side::Foreground);
    let mut translation = [0.0, 0.0];
    if centered {
        let c = region.centroid().ok_or(Error::ZeroArea)?;
        translation = [-c[0], -c[1]];
        region = region.translated(translation);
    }
    let diagrams = dirs.iter().map(|&v| extended_persistence_reduction(&region, v)).collect::<Result<Vec<_>>>()?;
    Ok(Xpht { directions: dirs, diagrams, source: String::new(), centered, translation, filtration_passes: count })
}
