//! Simplicial complexes built from the cells of a binary image.

use std::collections::{BTreeMap, BTreeSet};

use crate::geometry::Point;
use crate::image::BinaryImage;

/// A simplicial complex in the plane, closed under faces. Vertices are
/// indexed into `vertices`; each simplex lists its vertices in ascending
/// index order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Complex {
    pub vertices: Vec<Point>,
    pub edges: Vec<[usize; 2]>,
    pub triangles: Vec<[usize; 3]>,
}

impl Complex {
    /// The closure of the given triangles and extra edges.
    pub fn from_facets(vertices: Vec<Point>, triangles: &[[usize; 3]], extra_edges: &[[usize; 2]]) -> Self {
        let mut tris = BTreeSet::new();
        let mut edges = BTreeSet::new();
        for t in triangles {
            let mut t = *t;
            t.sort_unstable();
            assert!(t[0] != t[1] && t[1] != t[2], "degenerate triangle");
            tris.insert(t);
            edges.extend([[t[0], t[1]], [t[0], t[2]], [t[1], t[2]]]);
        }
        for e in extra_edges {
            let mut e = *e;
            e.sort_unstable();
            assert!(e[0] != e[1], "degenerate edge");
            edges.insert(e);
        }
        Self { vertices, edges: edges.into_iter().collect(), triangles: tris.into_iter().collect() }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }

    /// Edges that are a face of exactly one triangle.
    pub fn boundary_edges(&self) -> Vec<[usize; 2]> {
        let mut count: BTreeMap<[usize; 2], usize> = BTreeMap::new();
        for t in &self.triangles {
            for e in [[t[0], t[1]], [t[0], t[2]], [t[1], t[2]]] {
                *count.entry(e).or_default() += 1;
            }
        }
        count.into_iter().filter(|&(_, c)| c == 1).map(|(e, _)| e).collect()
    }

    /// The 1-complex formed by the boundary edges, keeping only the vertices
    /// they use.
    pub fn boundary_complex(&self) -> Self {
        let edges = self.boundary_edges();
        let used: BTreeSet<usize> = edges.iter().flatten().copied().collect();
        let remap: BTreeMap<usize, usize> = used.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let vertices = used.iter().map(|&i| self.vertices[i]).collect();
        let edges: Vec<[usize; 2]> = edges.iter().map(|e| [remap[&e[0]], remap[&e[1]]]).collect();
        Self::from_facets(vertices, &[], &edges)
    }

    /// Total area of the triangles.
    pub fn area(&self) -> f64 {
        self.triangles.iter().map(|t| self.triangle_area(t)).sum()
    }

    /// Area-weighted centroid of the triangles.
    pub fn centroid(&self) -> Option<Point> {
        let mut total = 0.0;
        let mut moment = [0.0; 2];
        for t in &self.triangles {
            let a = self.triangle_area(t);
            let [p, q, r] = t.map(|i| self.vertices[i]);
            total += a;
            moment[0] += a * (p[0] + q[0] + r[0]) / 3.0;
            moment[1] += a * (p[1] + q[1] + r[1]) / 3.0;
        }
        (total > 0.0).then(|| [moment[0] / total, moment[1] / total])
    }

    fn triangle_area(&self, t: &[usize; 3]) -> f64 {
        let [p, q, r] = t.map(|i| self.vertices[i]);
        ((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])).abs() / 2.0
    }

    /// A copy with every vertex moved by `offset`.
    pub fn translated(&self, offset: [f64; 2]) -> Self {
        let mut out = self.clone();
        for p in &mut out.vertices {
            p[0] += offset[0];
            p[1] += offset[1];
        }
        out
    }
}

/// Which side of the boundary a region covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// The closure of the foreground region.
    Foreground,
    /// The rest of the box spanned by the pixel centres.
    Background,
    /// The whole box.
    Both,
}

/// Triangulates one side of the boundary curves.
///
/// Each cell between four neighbouring pixel centres is cut along the
/// segments joining midpoints of edges whose two pixels differ. The piece
/// on the foreground side is the polygon visiting the foreground corners and
/// those midpoints in order around the cell; it is always convex and is
/// fanned into triangles. When only two diagonal corners are foreground the
/// two foreground pixels are joined through the cell, so the background
/// piece is two corner triangles.
pub fn triangulate_region(img: &BinaryImage, side: Side) -> Complex {
    let mut index: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    let mut vertices = Vec::new();
    let mut triangles = Vec::new();
    let mut vertex = |p: (i64, i64)| -> usize {
        *index.entry(p).or_insert_with(|| {
            vertices.push([p.0 as f64 / 2.0, p.1 as f64 / 2.0]);
            vertices.len() - 1
        })
    };
    for i in 1..img.rows() {
        for j in 1..img.cols() {
            let (i2, j2) = (2 * i as i64, 2 * j as i64);
            // Corners clockwise on the page: top-left, top-right, bottom-right, bottom-left.
            let corners = [(i2, j2), (i2, j2 + 2), (i2 + 2, j2 + 2), (i2 + 2, j2)];
            let fg = [img.get(i, j), img.get(i, j + 1), img.get(i + 1, j + 1), img.get(i + 1, j)];
            let pieces: Vec<Vec<(i64, i64)>> = match side {
                Side::Both => vec![corners.to_vec()],
                Side::Foreground => vec![cell_walk(&corners, &fg, true)],
                Side::Background if fg == [true, false, true, false] || fg == [false, true, false, true] => (0..4)
                    .filter(|&k| !fg[k])
                    .map(|k| {
                        vec![
                            midpoint(corners[(k + 3) % 4], corners[k]),
                            corners[k],
                            midpoint(corners[k], corners[(k + 1) % 4]),
                        ]
                    })
                    .collect(),
                Side::Background => vec![cell_walk(&corners, &fg, false)],
            };
            for piece in pieces.into_iter().filter(|p| p.len() >= 3) {
                let ids: Vec<usize> = piece.into_iter().map(&mut vertex).collect();
                for k in 1..ids.len() - 1 {
                    triangles.push([ids[0], ids[k], ids[k + 1]]);
                }
            }
        }
    }
    Complex::from_facets(vertices, &triangles, &[])
}

fn midpoint(a: (i64, i64), b: (i64, i64)) -> (i64, i64) {
    ((a.0 + b.0) / 2, (a.1 + b.1) / 2)
}

fn cell_walk(corners: &[(i64, i64); 4], fg: &[bool; 4], want: bool) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for k in 0..4 {
        if fg[k] == want {
            out.push(corners[k]);
        }
        if fg[k] != fg[(k + 1) % 4] {
            out.push(midpoint(corners[k], corners[(k + 1) % 4]));
        }
    }
    out
}

/// The closed curve as a 1-complex: one vertex per curve vertex, one edge per
/// consecutive pair.
pub fn curve_complex(curve: &[Point]) -> Complex {
    let n = curve.len();
    let edges: Vec<[usize; 2]> = (0..n).map(|k| [k, (k + 1) % n]).collect();
    Complex::from_facets(curve.to_vec(), &[], &edges)
}
