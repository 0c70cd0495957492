mod common;

use xpht::{boundary_curves, dual_diagram, xph_from_boundary, BinaryImage, CurveKind, Direction};

#[test]
fn two_combs_counts_and_dual_signs() {
    let img = BinaryImage::parse_text(common::TWO_COMBS).unwrap();
    let curves = boundary_curves(&img);
    assert_eq!(curves.iter().filter(|c| c.kind == CurveKind::Exterior).count(), 2);
    assert_eq!(curves.iter().filter(|c| c.kind == CurveKind::Interior).count(), 1);

    let v = Direction::new(1.0, 0.0).unwrap();
    let d = xph_from_boundary(&curves, v).unwrap();
    let [d0, d1] = &d.dims;
    assert_eq!((d0.ord.len(), d1.rel.len(), d0.ess_pos.len(), d1.ess_neg.len()), (4, 2, 2, 1));
    assert_eq!(d.len(), 9);

    let back = xph_from_boundary(&curves, v.opposite()).unwrap();
    assert_eq!(dual_diagram(&d).canonical(), back.canonical());
    let [b0, b1] = &back.dims;
    assert_eq!((b0.ord.len(), b1.rel.len(), b0.ess_pos.len(), b1.ess_neg.len()), (2, 4, 2, 1));
    // Ordinary bars in -v are the relative bars of v, negated.
    for (o, r) in b0.ord.iter().zip(&d1.rel) {
        assert_eq!((o.birth.value, o.death.value), (-r.birth.value, -r.death.value));
    }
    for bar in &b0.ess_pos {
        assert!(bar.birth.value < 0.0 && bar.death.value < 0.0 && bar.birth.value < bar.death.value);
    }
    for bar in &b1.ess_neg {
        assert!(bar.birth.value > bar.death.value);
    }
}
