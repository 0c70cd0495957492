mod common;

use std::collections::{HashSet, VecDeque};

use proptest::prelude::*;
use xpht::oracle::{triangulate_region, Side};
use xpht::{boundary_curves, label_components, BinaryImage, BoundaryCurve, CurveKind, Point};

/// Marks every quarter-pixel sample point lying on a curve.
fn walls(curves: &[BoundaryCurve]) -> HashSet<(i64, i64)> {
    let mut out = HashSet::new();
    for c in curves {
        let n = c.vertices.len();
        for k in 0..n {
            let (p, q) = (c.vertices[k], c.vertices[(k + 1) % n]);
            for t in 0..=4 {
                let t = t as f64 / 4.0;
                let x = p[0] + (q[0] - p[0]) * t;
                let y = p[1] + (q[1] - p[1]) * t;
                out.insert(((4.0 * x).round() as i64, (4.0 * y).round() as i64));
            }
        }
    }
    out
}

/// Flood fills the quarter-pixel grid of the box around the pixel centres,
/// blocked by the curves. Returns the number of regions and whether every
/// region holds pixel centres of a single value.
fn separate(img: &BinaryImage) -> (usize, bool) {
    let curves = boundary_curves(img);
    let wall = walls(&curves);
    let (rmax, cmax) = (4 * img.rows() as i64, 4 * img.cols() as i64);
    let mut seen = HashSet::new();
    let mut regions = 0;
    let mut pure = true;
    for r in 4..=rmax {
        for c in 4..=cmax {
            if wall.contains(&(r, c)) || !seen.insert((r, c)) {
                continue;
            }
            regions += 1;
            let mut values = HashSet::new();
            let mut queue = VecDeque::from([(r, c)]);
            while let Some((a, b)) = queue.pop_front() {
                if a % 4 == 0 && b % 4 == 0 {
                    values.insert(img.get((a / 4) as usize, (b / 4) as usize));
                }
                for (da, db) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                    let next = (a + da, b + db);
                    if next.0 < 4 || next.0 > rmax || next.1 < 4 || next.1 > cmax || wall.contains(&next) {
                        continue;
                    }
                    if seen.insert(next) {
                        queue.push_back(next);
                    }
                }
            }
            pure &= values.len() == 1;
        }
    }
    (regions, pure)
}

fn in_triangle(q: Point, t: [Point; 3]) -> bool {
    let side = |a: Point, b: Point| (b[0] - a[0]) * (q[1] - a[1]) - (b[1] - a[1]) * (q[0] - a[0]);
    let s = [side(t[0], t[1]), side(t[1], t[2]), side(t[2], t[0])];
    s.iter().all(|&x| x >= 0.0) || s.iter().all(|&x| x <= 0.0)
}

#[test]
fn fixture_curve_counts() {
    for (text, exterior, interior) in
        [("1", 1, 0), ("111\n101\n111", 1, 1), (common::TWO_COMBS, 2, 1), ("101\n010\n101", 1, 0)]
    {
        let curves = boundary_curves(&BinaryImage::parse_text(text).unwrap());
        assert_eq!(curves.iter().filter(|c| c.kind == CurveKind::Exterior).count(), exterior);
        assert_eq!(curves.iter().filter(|c| c.kind == CurveKind::Interior).count(), interior);
    }
}

#[test]
fn triangulated_region_is_bounded_by_the_curves() {
    let mut rng = common::rng(40);
    for _ in 0..40 {
        let img = common::random_image(&mut rng, 8, 8, 0.5);
        let region = triangulate_region(&img, Side::Foreground);
        let mut from_region: Vec<[[i64; 2]; 2]> = region
            .boundary_edges()
            .iter()
            .map(|e| {
                let mut pts = e.map(|i| region.vertices[i].map(|x| (2.0 * x) as i64));
                pts.sort();
                pts
            })
            .collect();
        let mut from_curves: Vec<[[i64; 2]; 2]> = boundary_curves(&img)
            .iter()
            .flat_map(|c| {
                let n = c.vertices.len();
                (0..n).map(move |k| {
                    let mut pts = [c.vertices[k], c.vertices[(k + 1) % n]].map(|p| p.map(|x| (2.0 * x) as i64));
                    pts.sort();
                    pts
                })
            })
            .collect();
        from_region.sort();
        from_curves.sort();
        assert_eq!(from_region, from_curves, "{}", img.to_text());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn curves_separate_foreground_from_background(img in common::image_strategy(8)) {
        let labels = label_components(&img);
        let (regions, pure) = separate(&img);
        prop_assert!(pure, "{}", img.to_text());
        prop_assert_eq!(regions, labels.foreground_count() + labels.background_count());
    }

    #[test]
    fn one_exterior_curve_per_component_one_interior_per_hole(img in common::image_strategy(10)) {
        let labels = label_components(&img);
        let curves = boundary_curves(&img);
        let exterior: Vec<_> = curves.iter().filter(|c| c.kind == CurveKind::Exterior).collect();
        prop_assert_eq!(exterior.len(), labels.foreground_count());
        let components: HashSet<usize> = exterior.iter().map(|c| c.component).collect();
        prop_assert_eq!(components.len(), labels.foreground_count());
        let interior = curves.len() - exterior.len();
        prop_assert_eq!(interior, labels.background_count() - 1);
        for c in &curves {
            let area = c.doubled_signed_area();
            let positive = area > 0.0;
            prop_assert_eq!(positive, c.kind == CurveKind::Exterior);
            prop_assert!(area != 0.0);
        }
    }

    #[test]
    fn foreground_is_on_the_normal_side_of_every_edge(img in common::image_strategy(8)) {
        let region = triangulate_region(&img, Side::Foreground);
        let triangles: Vec<[Point; 3]> = region.triangles.iter().map(|t| t.map(|i| region.vertices[i])).collect();
        for c in boundary_curves(&img) {
            let n = c.vertices.len();
            for k in 0..n {
                let (p, q) = (c.vertices[k], c.vertices[(k + 1) % n]);
                let mid = [(p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0];
                // Tangent rotated a quarter turn: (a, b) -> (-b, a).
                let normal = [-(q[1] - p[1]), q[0] - p[0]];
                let inside = [mid[0] + 0.1 * normal[0], mid[1] + 0.1 * normal[1]];
                let outside = [mid[0] - 0.1 * normal[0], mid[1] - 0.1 * normal[1]];
                prop_assert!(triangles.iter().any(|&t| in_triangle(inside, t)));
                prop_assert!(!triangles.iter().any(|&t| in_triangle(outside, t)));
            }
        }
    }

    #[test]
    fn extra_padding_only_translates(img in common::image_strategy(10)) {
        let once = boundary_curves(&img);
        let twice: Vec<BoundaryCurve> = boundary_curves(&img.padded()).iter().map(|c| c.translated([-1.0, -1.0])).collect();
        prop_assert_eq!(once, twice);
    }
}
