//! Boundary curves of the foreground of a binary image.
//!
//! Foreground pixels are 8-connected and background pixels 4-connected.
//! Boundary points sit halfway between 4-adjacent foreground/background
//! pixel pairs and are joined by a lookup over every 2×2 pixel patch. The
//! result is a disjoint family of simple closed polygons, each oriented so
//! that the tangent rotated by +π/2 points into the foreground.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::geometry::Point;
use crate::image::BinaryImage;

/// Edge midpoints of a 2×2 patch whose top-left pixel is `(i, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Mid {
    /// Between `(i, j)` and `(i, j+1)`.
    Top,
    /// Between `(i, j+1)` and `(i+1, j+1)`.
    Right,
    /// Between `(i+1, j)` and `(i+1, j+1)`.
    Bottom,
    /// Between `(i, j)` and `(i+1, j)`.
    Left,
}

use Mid::{Bottom as B, Left as L, Right as R, Top as T};

impl Mid {
    /// Doubled coordinates, so every boundary point is an integer pair.
    pub(crate) fn doubled(self, i: usize, j: usize) -> (i64, i64) {
        let (i, j) = (2 * i as i64, 2 * j as i64);
        match self {
            Mid::Top => (i, j + 1),
            Mid::Right => (i + 1, j + 2),
            Mid::Bottom => (i + 2, j + 1),
            Mid::Left => (i + 1, j),
        }
    }
}

/// Oriented boundary edges for each patch value, keyed by
/// `TL | TR << 1 | BR << 2 | BL << 3`. The two diagonal patches cut off the
/// background corners, so diagonal foreground stays connected.
pub(crate) const PATCH_TABLE: [&[(Mid, Mid)]; 16] = [
    &[],               // 0000
    &[(L, T)],         // TL
    &[(T, R)],         // TR
    &[(L, R)],         // TL TR
    &[(R, B)],         // BR
    &[(R, T), (L, B)], // TL BR
    &[(T, B)],         // TR BR
    &[(L, B)],         // TL TR BR
    &[(B, L)],         // BL
    &[(B, T)],         // TL BL
    &[(T, L), (B, R)], // TR BL
    &[(B, R)],         // TL TR BL
    &[(R, L)],         // BR BL
    &[(R, T)],         // TL BR BL
    &[(T, L)],         // TR BR BL
    &[],               // 1111
];

/// Patch value of the 2×2 block with top-left pixel `(i, j)`.
pub(crate) fn patch_code(img: &BinaryImage, i: usize, j: usize) -> usize {
    img.get(i, j) as usize
        | (img.get(i, j + 1) as usize) << 1
        | (img.get(i + 1, j + 1) as usize) << 2
        | (img.get(i + 1, j) as usize) << 3
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveKind {
    /// Bounds a hole: the foreground lies outside the loop.
    Interior,
    /// The foreground lies inside the loop.
    Exterior,
}

/// An oriented simple closed boundary polygon.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryCurve {
    pub vertices: Vec<Point>,
    pub kind: CurveKind,
    /// Label of the foreground component this curve bounds.
    pub component: usize,
}

impl BoundaryCurve {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Copy of the curve with every vertex shifted by `offset`.
    pub fn translated(&self, offset: [f64; 2]) -> Self {
        Self { vertices: self.vertices.iter().map(|p| [p[0] + offset[0], p[1] + offset[1]]).collect(), ..self.clone() }
    }

    /// Twice the signed shoelace area: positive for exterior curves.
    pub fn doubled_signed_area(&self) -> f64 {
        signed_area2(&self.vertices)
    }
}

pub(crate) fn signed_area2(vertices: &[Point]) -> f64 {
    let n = vertices.len();
    (0..n)
        .map(|k| {
            let (p, q) = (vertices[k], vertices[(k + 1) % n]);
            p[0] * q[1] - p[1] * q[0]
        })
        .sum()
}

/// Connected-component labels of both pixel classes.
#[derive(Clone, Debug)]
pub struct ComponentLabels {
    rows: usize,
    cols: usize,
    foreground: Vec<Option<usize>>,
    background: Vec<Option<usize>>,
    foreground_count: usize,
    background_count: usize,
}

impl ComponentLabels {
    fn index(&self, i: usize, j: usize) -> Option<usize> {
        (i >= 1 && j >= 1 && i <= self.rows && j <= self.cols).then(|| (i - 1) * self.cols + (j - 1))
    }

    /// Foreground label of pixel `(i, j)` (1-based), if it is foreground.
    pub fn foreground(&self, i: usize, j: usize) -> Option<usize> {
        self.index(i, j).and_then(|k| self.foreground[k])
    }

    pub fn background(&self, i: usize, j: usize) -> Option<usize> {
        self.index(i, j).and_then(|k| self.background[k])
    }

    pub fn foreground_count(&self) -> usize {
        self.foreground_count
    }

    pub fn background_count(&self) -> usize {
        self.background_count
    }

    /// The background component containing pixel `(1, 1)`.
    pub fn outer_background(&self) -> usize {
        self.background(1, 1).expect("padding ring is background")
    }
}

/// Labels foreground components under 8-adjacency and background components
/// under 4-adjacency. Labels are assigned in raster order.
pub fn label_components(img: &BinaryImage) -> ComponentLabels {
    let (rows, cols) = (img.rows(), img.cols());
    let mut foreground = vec![None; rows * cols];
    let mut background = vec![None; rows * cols];
    let mut counts = [0usize; 2];
    const FOUR: [(i64, i64); 4] = [(-1, 0), (1, 0), (0, -1), (0, 1)];
    const EIGHT: [(i64, i64); 8] = [(-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)];

    for start in 0..rows * cols {
        let value = img.get(start / cols + 1, start % cols + 1);
        let (labels, count, steps) = if value {
            (&mut foreground, &mut counts[0], &EIGHT[..])
        } else {
            (&mut background, &mut counts[1], &FOUR[..])
        };
        if labels[start].is_some() {
            continue;
        }
        let label = *count;
        *count += 1;
        labels[start] = Some(label);
        let mut queue = VecDeque::from([start]);
        while let Some(k) = queue.pop_front() {
            let (r, c) = ((k / cols) as i64, (k % cols) as i64);
            for &(dr, dc) in steps {
                let (nr, nc) = (r + dr, c + dc);
                if nr < 0 || nc < 0 || nr >= rows as i64 || nc >= cols as i64 {
                    continue;
                }
                let nk = nr as usize * cols + nc as usize;
                if labels[nk].is_none() && img.get(nr as usize + 1, nc as usize + 1) == value {
                    labels[nk] = Some(label);
                    queue.push_back(nk);
                }
            }
        }
    }

    ComponentLabels { rows, cols, foreground, background, foreground_count: counts[0], background_count: counts[1] }
}

/// Boundary points of all 4-adjacent foreground/background pairs, in doubled
/// coordinates.
pub(crate) fn boundary_points(img: &BinaryImage) -> Vec<(i64, i64)> {
    let mut points = Vec::new();
    for i in 1..=img.rows() {
        for j in 1..=img.cols() {
            if i < img.rows() && img.get(i, j) != img.get(i + 1, j) {
                points.push((2 * i as i64 + 1, 2 * j as i64));
            }
            if j < img.cols() && img.get(i, j) != img.get(i, j + 1) {
                points.push((2 * i as i64, 2 * j as i64 + 1));
            }
        }
    }
    points.sort_unstable();
    points
}

/// Traces the oriented boundary polygons of the foreground.
///
/// Each polygon starts at its lexicographically smallest vertex and curves
/// are listed in order of those starting vertices.
///
/// # Panics
///
/// Panics if some boundary point does not have exactly one incoming and one
/// outgoing edge, which would mean the patch table is inconsistent.
pub fn trace_curves(img: &BinaryImage) -> Vec<Vec<Point>> {
    let mut successor: BTreeMap<(i64, i64), (i64, i64)> = BTreeMap::new();
    let mut in_degree: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    for i in 1..img.rows() {
        for j in 1..img.cols() {
            for &(from, to) in PATCH_TABLE[patch_code(img, i, j)] {
                let (a, b) = (from.doubled(i, j), to.doubled(i, j));
                let previous = successor.insert(a, b);
                assert!(previous.is_none(), "boundary point {a:?} has two outgoing edges");
                *in_degree.entry(b).or_default() += 1;
            }
        }
    }

    let emitted = boundary_points(img);
    assert!(
        emitted.iter().copied().eq(successor.keys().copied()),
        "patch edges do not cover exactly the boundary points"
    );
    assert!(
        in_degree.len() == successor.len() && in_degree.values().all(|&d| d == 1),
        "boundary point without degree two"
    );

    let mut used = BTreeMap::new();
    let mut curves = Vec::new();
    for &start in successor.keys() {
        if used.contains_key(&start) {
            continue;
        }
        let mut curve = Vec::new();
        let mut at = start;
        loop {
            used.insert(at, ());
            curve.push([at.0 as f64 / 2.0, at.1 as f64 / 2.0]);
            at = successor[&at];
            if at == start {
                break;
            }
        }
        curves.push(curve);
    }
    curves
}

/// Even-odd point-in-polygon test.
pub(crate) fn point_in_polygon(p: Point, polygon: &[Point]) -> bool {
    let n = polygon.len();
    let mut inside = false;
    for k in 0..n {
        let (a, b) = (polygon[k], polygon[(k + 1) % n]);
        if (a[0] > p[0]) != (b[0] > p[0]) {
            let t = (p[0] - a[0]) / (b[0] - a[0]);
            let crossing = a[1] + t * (b[1] - a[1]);
            if p[1] < crossing {
                inside = !inside;
            }
        }
    }
    inside
}

/// Marks each traced curve as interior or exterior and records the
/// foreground component it bounds.
///
/// The foreground pixel next to the curve's smallest vertex decides: if it
/// lies inside the polygon the curve is exterior.
pub fn classify_curves(curves: Vec<Vec<Point>>, labels: &ComponentLabels) -> Vec<BoundaryCurve> {
    curves
        .into_iter()
        .map(|vertices| {
            let p = vertices
                .iter()
                .copied()
                .min_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])))
                .expect("non-empty curve");
            let candidates = if p[0].fract() != 0.0 {
                [[p[0] - 0.5, p[1]], [p[0] + 0.5, p[1]]]
            } else {
                [[p[0], p[1] - 0.5], [p[0], p[1] + 0.5]]
            };
            let (pixel, component) = candidates
                .iter()
                .find_map(|q| labels.foreground(q[0] as usize, q[1] as usize).map(|c| (*q, c)))
                .expect("boundary point touches a foreground pixel");
            let kind = if point_in_polygon(pixel, &vertices) { CurveKind::Exterior } else { CurveKind::Interior };
            BoundaryCurve { vertices, kind, component }
        })
        .collect()
}

/// Traces and classifies the boundary curves of `img`.
pub fn boundary_curves(img: &BinaryImage) -> Vec<BoundaryCurve> {
    let labels = label_components(img);
    classify_curves(trace_curves(img), &labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn img(text: &str) -> BinaryImage {
        BinaryImage::parse_text(text).unwrap()
    }

    #[test]
    fn diagonal_pixels_are_one_component() {
        let labels = label_components(&img("10\n01"));
        assert_eq!(labels.foreground_count(), 1);
        assert_eq!(labels.background_count(), 1);
    }

    #[test]
    fn checkerboard_labels() {
        let labels = label_components(&img("101\n010\n101"));
        assert_eq!(labels.foreground_count(), 1);
        assert_eq!(labels.background_count(), 1);
        assert_eq!(labels.outer_background(), 0);
    }

    #[test]
    fn all_background() {
        let image = img("000\n000");
        let labels = label_components(&image);
        assert_eq!((labels.foreground_count(), labels.background_count()), (0, 1));
        assert!(trace_curves(&image).is_empty());
    }

    #[test]
    fn single_pixel_diamond() {
        let curves = boundary_curves(&img("1"));
        assert_eq!(curves.len(), 1);
        assert_eq!(curves[0].vertices, vec![[1.5, 2.0], [2.0, 1.5], [2.5, 2.0], [2.0, 2.5]]);
        assert_eq!(curves[0].kind, CurveKind::Exterior);
        assert_eq!(curves[0].component, 0);
    }

    #[test]
    fn block_is_octagon() {
        let curves = trace_curves(&img("11\n11"));
        assert_eq!(curves.len(), 1);
        assert_eq!(curves[0].len(), 8);
        let diagonal_edges = (0..8)
            .filter(|&k| {
                let (p, q) = (curves[0][k], curves[0][(k + 1) % 8]);
                p[0] != q[0] && p[1] != q[1]
            })
            .count();
        assert_eq!(diagonal_edges, 4);
    }

    #[test]
    fn annulus_has_outer_and_hole() {
        let curves = boundary_curves(&img("111\n101\n111"));
        assert_eq!(curves.len(), 2);
        assert_eq!(curves[0].len(), 12);
        assert_eq!(curves[0].kind, CurveKind::Exterior);
        assert_eq!(curves[1].len(), 4);
        assert_eq!(curves[1].kind, CurveKind::Interior);
        let mut hole = curves[1].vertices.clone();
        hole.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(hole, vec![[2.5, 3.0], [3.0, 2.5], [3.0, 3.5], [3.5, 3.0]]);
        assert!(curves[0].doubled_signed_area() > 0.0);
        assert!(curves[1].doubled_signed_area() < 0.0);
    }

    #[test]
    fn point_in_polygon_square() {
        let sq = [[0.0, 0.0], [0.0, 2.0], [2.0, 2.0], [2.0, 0.0]];
        assert!(point_in_polygon([1.0, 1.0], &sq));
        assert!(!point_in_polygon([3.0, 1.0], &sq));
        assert!(!point_in_polygon([1.0, -1.0], &sq));
    }

    fn segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool {
        let orient = |p: Point, q: Point, r: Point| (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]);
        let (d1, d2) = (orient(c, d, a), orient(c, d, b));
        let (d3, d4) = (orient(a, b, c), orient(a, b, d));
        d1 * d2 < 0.0 && d3 * d4 < 0.0
    }

    /// For every patch value, a point just off each edge along the rotated
    /// tangent reaches a foreground corner without crossing any patch edge.
    #[test]
    fn every_patch_edge_has_foreground_on_its_normal_side() {
        let corners: [Point; 4] = [[0.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 0.0]];
        let mid = |m: Mid| -> Point {
            let (r, c) = m.doubled(0, 0);
            [r as f64 / 2.0, c as f64 / 2.0]
        };
        for (code, patch) in PATCH_TABLE.iter().enumerate() {
            let edges: Vec<(Point, Point)> = patch.iter().map(|&(a, b)| (mid(a), mid(b))).collect();
            for &(p, q) in &edges {
                let tangent = [q[0] - p[0], q[1] - p[1]];
                let normal = [-tangent[1], tangent[0]];
                let centre = [(p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0];
                for (side, sample) in [
                    (true, [centre[0] + 0.05 * normal[0], centre[1] + 0.05 * normal[1]]),
                    (false, [centre[0] - 0.05 * normal[0], centre[1] - 0.05 * normal[1]]),
                ] {
                    let reachable: Vec<bool> = (0..4)
                        .filter(|&k| !edges.iter().any(|&(a, b)| segments_cross(sample, corners[k], a, b)))
                        .map(|k| code & (1 << k) != 0)
                        .collect();
                    assert!(!reachable.is_empty());
                    assert!(reachable.iter().all(|&fg| fg == side), "patch {code:04b} edge {p:?}->{q:?}");
                }
            }
        }
    }

    #[test]
    fn every_patch_balances_degrees() {
        for (code, patch) in PATCH_TABLE.iter().enumerate() {
            let mids: Vec<Mid> = [(T, 0, 1), (R, 1, 2), (B, 3, 2), (L, 0, 3)]
                .into_iter()
                .filter(|&(_, a, b)| (code >> a) & 1 != (code >> b) & 1)
                .map(|(m, _, _)| m)
                .collect();
            for m in mids.iter() {
                let touches = patch.iter().filter(|&&(a, b)| a == *m || b == *m).count();
                assert_eq!(touches, 1, "patch {code:04b}");
            }
            assert_eq!(patch.len() * 2, mids.len());
        }
    }
}
