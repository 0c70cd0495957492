#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use xpht::{BinaryImage, DimDiagram, ExtendedDiagram, Interval};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A `rows × cols` interior with each pixel foreground with probability
/// `density`, padded by the constructor.
pub fn random_image(rng: &mut impl Rng, rows: usize, cols: usize, density: f64) -> BinaryImage {
    let pixels: Vec<bool> = (0..rows * cols).map(|_| rng.gen_bool(density)).collect();
    BinaryImage::from_grid(rows, cols, &pixels).unwrap()
}

/// Random image with at least one foreground pixel.
pub fn random_nonempty_image(rng: &mut impl Rng, rows: usize, cols: usize, density: f64) -> BinaryImage {
    loop {
        let img = random_image(rng, rows, cols, density);
        if img.foreground_count() > 0 {
            return img;
        }
    }
}

/// The pixels of a `size × size` grid whose centres fall within the given
/// radii of the grid's centre.
pub fn ring(size: usize, inner: f64, outer: f64, offset: (f64, f64)) -> BinaryImage {
    let c = (size as f64 - 1.0) / 2.0;
    let pixels: Vec<bool> = (0..size * size)
        .map(|k| {
            let (i, j) = ((k / size) as f64 - c - offset.0, (k % size) as f64 - c - offset.1);
            let r = i.hypot(j);
            r <= outer && r >= inner
        })
        .collect();
    BinaryImage::from_grid(size, size, &pixels).unwrap()
}

pub fn disk(size: usize, radius: f64) -> BinaryImage {
    ring(size, -1.0, radius, (0.0, 0.0))
}

pub fn annulus(size: usize, inner: f64, outer: f64) -> BinaryImage {
    ring(size, inner, outer, (0.0, 0.0))
}

/// Moves every pixel of `img` by `(a, b)`, growing the canvas to fit.
pub fn translate(img: &BinaryImage, a: usize, b: usize) -> BinaryImage {
    // Interior of the padded image, shifted.
    let (rows, cols) = (img.rows() - 2 + a, img.cols() - 2 + b);
    let mut pixels = vec![false; rows * cols];
    for i in 2..img.rows() {
        for j in 2..img.cols() {
            pixels[(i - 2 + a) * cols + (j - 2 + b)] = img.get(i, j);
        }
    }
    BinaryImage::from_grid(rows, cols, &pixels).unwrap()
}

pub fn random_interval_set(
    rng: &mut impl Rng,
    max_len: usize,
    make: fn(f64, f64) -> Interval,
    sign: f64,
) -> Vec<Interval> {
    let n = rng.gen_range(0..=max_len);
    (0..n)
        .map(|_| {
            let a = (rng.gen_range(-20..20) as f64) / 4.0;
            let l = (rng.gen_range(1..16) as f64) / 4.0;
            make(a, a + sign * l)
        })
        .collect()
}

/// Random diagram using the four bar types a planar shape produces, with up
/// to `max_len` bars of each.
pub fn random_diagram(rng: &mut impl Rng, max_len: usize) -> ExtendedDiagram {
    let mut d = ExtendedDiagram::default();
    d.dims[0] = DimDiagram {
        ord: random_interval_set(rng, max_len, Interval::ord, 1.0),
        ess_pos: random_interval_set(rng, max_len, Interval::ess, 1.0),
        ..DimDiagram::default()
    };
    d.dims[1] = DimDiagram {
        rel: random_interval_set(rng, max_len, Interval::rel, -1.0),
        ess_neg: random_interval_set(rng, max_len, Interval::ess, -1.0),
        ..DimDiagram::default()
    };
    d
}

/// Proptest strategy for images with up to `max × max` interior pixels.
pub fn image_strategy(max: usize) -> impl proptest::strategy::Strategy<Value = BinaryImage> {
    use proptest::prelude::*;
    (1..=max, 1..=max, 0.1f64..0.9)
        .prop_flat_map(|(r, c, density)| {
            (Just(r), Just(c), proptest::collection::vec(proptest::bool::weighted(density), r * c))
        })
        .prop_map(|(r, c, pixels)| BinaryImage::from_grid(r, c, &pixels).unwrap())
}

/// Two components, one of them with a hole. Each has three prongs pointing
/// to small rows and an arch opening towards large rows.
pub const TWO_COMBS: &str = "\
101010010101
101010010101
111110011111
100010011111
111110011111
110110011011
110110011011";

/// Recovers the exact coordinate sum behind a height in one of the eight
/// axis or diagonal directions and applies `shift` to it, returning the
/// height the shifted point must have.
pub fn shifted_height(value: f64, v: xpht::Direction, shift: (f64, f64)) -> f64 {
    let [x, y] = v.components();
    let moved = v.height([shift.0, shift.1]);
    if x == 0.0 || y == 0.0 {
        value + moved
    } else {
        assert_eq!(x.abs(), y.abs(), "not an axis or diagonal direction");
        // Heights along a diagonal are (half-integer sum) × |x|, rounded once.
        let level = (2.0 * value / x.abs()).round() / 2.0;
        assert_eq!(level * x.abs(), value, "height is not a rounded half-integer multiple");
        let shift_level = shift.0 * x.signum() + shift.1 * y.signum();
        (level + shift_level) * x.abs()
    }
}
