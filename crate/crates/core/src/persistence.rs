//! Extended persistence of the foreground from its boundary curves.
//!
//! For a direction `v`, the 0-dimensional persistence of `h_v` on each
//! boundary curve is computed with union-find. Every finite bar is then
//! routed by the criticality of its birth vertex: a vertex that is a local
//! minimum of the foreground gives an ordinary 0-bar, any other gives a
//! relative 1-bar with its endpoints swapped. Essential bars come straight
//! from the extremes of each curve.

use crate::boundary::{BoundaryCurve, CurveKind};
use crate::diagram::{ExtendedDiagram, Interval};
use crate::error::{Error, Result};
use crate::geometry::{det, rotate_quarter, sub, Direction, Point};

/// A finite 0-bar of a curve together with its birth vertex.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FinitePair {
    pub birth_vertex: usize,
    pub birth: f64,
    pub death: f64,
}

/// The bar that never dies: the curve's minimum and maximum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EssentialRecord {
    pub min_vertex: usize,
    pub min: f64,
    pub max: f64,
}

/// 0-dimensional persistence of the height function on one closed curve.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvePersistence {
    pub finite_pairs: Vec<FinitePair>,
    pub essential: EssentialRecord,
}

impl CurvePersistence {
    /// Finite pairs sorted by birth vertex, for order-independent comparison.
    pub fn sorted(mut self) -> Self {
        self.finite_pairs.sort_by_key(|p| p.birth_vertex);
        self
    }
}

struct UnionFind {
    parent: Vec<usize>,
    /// Birth vertex of the component rooted here: its oldest vertex.
    oldest: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), oldest: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }
}

/// Union-find persistence of `h_v` on a closed polygon, vertices entering in
/// tie-broken order.
///
/// When two components meet, the one whose birth vertex entered later dies
/// at the height of the meeting vertex. The survivor becomes the essential
/// record.
pub fn curve_ph0(curve: &[Point], v: Direction) -> CurvePersistence {
    let n = curve.len();
    assert!(n >= 3, "a closed curve needs at least three vertices");
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| v.cmp_points(curve[a], curve[b]));
    let mut rank = vec![0; n];
    for (r, &k) in order.iter().enumerate() {
        rank[k] = r;
    }

    let mut uf = UnionFind::new(n);
    let mut active = vec![false; n];
    let mut finite_pairs = Vec::new();
    for &k in &order {
        active[k] = true;
        let height = v.height(curve[k]);
        for nb in [(k + n - 1) % n, (k + 1) % n] {
            if !active[nb] {
                continue;
            }
            let (a, b) = (uf.find(k), uf.find(nb));
            if a == b {
                continue;
            }
            let (elder, younger) = if rank[uf.oldest[a]] < rank[uf.oldest[b]] { (a, b) } else { (b, a) };
            // The entering vertex's own singleton dies on arrival: zero length.
            if uf.oldest[younger] != k {
                let birth_vertex = uf.oldest[younger];
                let birth = v.height(curve[birth_vertex]);
                debug_assert!(birth <= height, "a component died below its birth");
                finite_pairs.push(FinitePair { birth_vertex, birth, death: height });
            }
            uf.parent[younger] = elder;
        }
    }

    let min_vertex = order[0];
    CurvePersistence {
        finite_pairs,
        essential: EssentialRecord { min_vertex, min: v.height(curve[min_vertex]), max: v.height(curve[order[n - 1]]) },
    }
}

/// Sign of a birth vertex with respect to the foreground.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Criticality {
    /// The foreground lies locally above the vertex: a local minimum of the
    /// region.
    Plus,
    /// The foreground lies locally below.
    Minus,
}

const DET_EPSILON: f64 = 1e-9;

/// Decides whether the birth vertex `index` of an oriented boundary curve is
/// a local minimum of the foreground in direction `v`.
///
/// When the vertex starts a flat run or its neighbours are nearly collinear,
/// the inward normal of the outgoing edge decides; otherwise the turn at the
/// vertex (the sign of `DET(x_{i+1} − x_i, x_{i−1} − x_i)`) does.
pub fn classify_critical(curve: &[Point], index: usize, v: Direction) -> Result<Criticality> {
    let n = curve.len();
    let (prev, here, next) = (curve[(index + n - 1) % n], curve[index], curve[(index + 1) % n]);
    let outgoing = sub(next, here);
    let turn = det(outgoing, sub(prev, here));
    let flat = v.height(next) == v.height(here);
    if flat || turn.abs() < DET_EPSILON {
        let w = rotate_quarter(outgoing);
        let into = w[0] * v.x() + w[1] * v.y();
        if into > 0.0 {
            Ok(Criticality::Plus)
        } else if into < 0.0 {
            Ok(Criticality::Minus)
        } else {
            Err(Error::CorruptedCurve(index))
        }
    } else if turn > 0.0 {
        Ok(Criticality::Plus)
    } else {
        Ok(Criticality::Minus)
    }
}

/// Extended persistence diagram of the region bounded by `curves` in
/// direction `v`.
pub fn xph_from_boundary(curves: &[BoundaryCurve], v: Direction) -> Result<ExtendedDiagram> {
    let mut diagram = ExtendedDiagram::default();
    for curve in curves {
        let persistence = curve_ph0(&curve.vertices, v);
        for pair in persistence.finite_pairs.iter().filter(|p| p.birth < p.death) {
            match classify_critical(&curve.vertices, pair.birth_vertex, v)? {
                Criticality::Plus => diagram.dims[0].ord.push(Interval::ord(pair.birth, pair.death)),
                Criticality::Minus => diagram.dims[1].rel.push(Interval::rel(pair.death, pair.birth)),
            }
        }
        let EssentialRecord { min, max, .. } = persistence.essential;
        match curve.kind {
            CurveKind::Exterior => diagram.dims[0].ess_pos.push(Interval::ess(min, max)),
            CurveKind::Interior => diagram.dims[1].ess_neg.push(Interval::ess(max, min)),
        }
    }
    Ok(diagram)
}
