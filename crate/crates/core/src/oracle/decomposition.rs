//! The decomposition identity relating a shape, its complement in a box,
//! and their common boundary.
//!
//! For a foreground region `A`, the background `B` inside the box of pixel
//! centres, and their common boundary `X`:
//!
//! ```text
//! XPH_0(X) ⊕ XPH_0(A ∪ B) = XPH_0(A) ⊕ XPH_0(B)
//! XPH_1(X)                = XPH_1(A) ⊕ XPH_1(B)
//! ```

use crate::diagram::{BarType, DimDiagram, ExtendedDiagram};
use crate::error::{Error, Result};
use crate::geometry::Direction;
use crate::image::BinaryImage;

use super::complex::{triangulate_region, Side};
use super::reduction::extended_persistence_reduction;

/// The four diagrams entering the identity.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub boundary: ExtendedDiagram,
    pub whole: ExtendedDiagram,
    pub foreground: ExtendedDiagram,
    pub background: ExtendedDiagram,
}

impl Decomposition {
    pub fn compute(img: &BinaryImage, v: Direction) -> Result<Self> {
        if img.foreground_count() == 0 {
            return Err(Error::EmptyForeground);
        }
        let a = triangulate_region(img, Side::Foreground);
        Ok(Self {
            boundary: extended_persistence_reduction(&a.boundary_complex(), v)?,
            whole: extended_persistence_reduction(&triangulate_region(img, Side::Both), v)?,
            foreground: extended_persistence_reduction(&a, v)?,
            background: extended_persistence_reduction(&triangulate_region(img, Side::Background), v)?,
        })
    }

    /// Whether both identities hold with endpoint values within `tolerance`.
    pub fn holds(&self, tolerance: f64) -> bool {
        let lhs0 = direct_sum(self.boundary.dim(0), self.whole.dim(0));
        let rhs0 = direct_sum(self.foreground.dim(0), self.background.dim(0));
        let rhs1 = direct_sum(self.foreground.dim(1), self.background.dim(1));
        let wrap = |d0: DimDiagram, d1: DimDiagram| ExtendedDiagram { dims: [d0, d1] };
        wrap(lhs0, self.boundary.dim(1).clone()).approx_eq(&wrap(rhs0, rhs1), tolerance)
    }
}

fn direct_sum(a: &DimDiagram, b: &DimDiagram) -> DimDiagram {
    let mut out = a.clone();
    for ty in BarType::ALL {
        out.bars_mut(ty).extend_from_slice(b.bars(ty));
    }
    out
}

/// Checks the decomposition identity for `img` in direction `v`.
pub fn check_decomposition(img: &BinaryImage, v: Direction) -> Result<bool> {
    Ok(Decomposition::compute(img, v)?.holds(1e-9))
}
