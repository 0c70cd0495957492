//! Extended persistent homology transform (XPHT) of shapes in binary images.
//!
//! The foreground of a binary image is bounded by oriented polygons
//! ([`boundary`]). For every direction `v`, its extended persistence diagram
//! follows from 0-dimensional persistence on those polygons plus a local test
//! at each birth vertex ([`persistence`]). Sweeping `v` around the circle
//! gives the transform ([`transform`]), and Wasserstein distances between
//! diagrams integrate into a distance between shapes ([`metric`]).
//!
//! ```
//! use xpht::{BinaryImage, Direction, boundary_curves, xph_from_boundary, Interval};
//!
//! let img = BinaryImage::parse_text("111\n101\n111").unwrap();
//! let curves = boundary_curves(&img);
//! let diagram = xph_from_boundary(&curves, Direction::new(1.0, 0.0).unwrap()).unwrap();
//! assert_eq!(diagram.dims[0].ess_pos, vec![Interval::ess(1.5, 4.5)]);
//! assert_eq!(diagram.dims[1].ess_neg, vec![Interval::ess(3.5, 2.5)]);
//! ```
//!
//! The [`oracle`] module recomputes everything the slow way, by boundary
//! matrix reduction on a triangulation, and is used to cross-check the fast
//! path.

pub mod assignment;
pub mod boundary;
pub mod diagram;
pub mod error;
pub mod geometry;
pub mod image;
pub mod json;
pub mod mds;
pub mod metric;
pub mod oracle;
pub mod persistence;
pub mod transform;

pub use boundary::{boundary_curves, classify_curves, label_components, trace_curves, BoundaryCurve, CurveKind};
pub use diagram::{dual_diagram, BarType, DimDiagram, ExtParam, ExtendedDiagram, Interval, Phase};
pub use error::{Error, Result};
pub use geometry::{Direction, Point};
pub use image::{load_image, load_path, BinaryImage, ImageFormat};
pub use metric::{wasserstein, xpht_distance, Norm};
pub use persistence::{classify_critical, curve_ph0, xph_from_boundary, Criticality, CurvePersistence};
pub use transform::{center, compute_xpht, directions, Xpht};

#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!(concat!("../../../book/src/", $path))]
            mod $name {}
        };
    }
    chapter!(introduction, "introduction.md");
    chapter!(images, "images.md");
    chapter!(extended, "extended-persistence.md");
    chapter!(shortcut, "boundary-shortcut.md");
    chapter!(transform, "transform.md");
    chapter!(distances, "distances.md");
    chapter!(verification, "verification.md");

    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
