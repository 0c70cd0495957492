use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

fn xpht(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xpht")).args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = xpht(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn shape(size: usize, inside: impl Fn(f64) -> bool) -> Vec<Vec<bool>> {
    let c = (size as f64 - 1.0) / 2.0;
    (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    let (di, dj) = (i as f64 - c, j as f64 - c);
                    inside((di * di + dj * dj).sqrt())
                })
                .collect()
        })
        .collect()
}

fn write_text(dir: &Path, name: &str, grid: &[Vec<bool>]) -> PathBuf {
    let text: String = grid
        .iter()
        .map(|row| row.iter().map(|&b| if b { '1' } else { '0' }).chain(['\n']).collect::<String>())
        .collect();
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn corpus(dir: &Path) -> [PathBuf; 3] {
    [
        write_text(dir, "disk.txt", &shape(15, |r| r <= 4.5)),
        write_text(dir, "annulus.txt", &shape(15, |r| (2.5..=5.5).contains(&r))),
        write_text(dir, "big.txt", &shape(15, |r| r <= 6.5)),
    ]
}

fn parse_matrix(csv: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = csv.lines();
    let names = lines.next().unwrap().split(',').map(str::to_owned).collect();
    let rows = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    (names, rows)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn identical_inputs_are_at_distance_zero() {
    let dir = TempDir::new().unwrap();
    let [disk, ..] = corpus(dir.path());
    let copy = dir.path().join("copy.txt");
    fs::copy(&disk, &copy).unwrap();
    let (names, m) = parse_matrix(&ok(&["dist", "-K", "8", s(&disk), s(&copy)]));
    assert_eq!(names, [s(&disk), s(&copy)]);
    assert!(m.iter().flatten().all(|&d| d == 0.0), "{m:?}");
}

#[test]
fn distance_matrix_is_a_metric() {
    let dir = TempDir::new().unwrap();
    let [a, b, c] = corpus(dir.path());
    let (_, m) = parse_matrix(&ok(&["dist", "--p", "2", "--directions", "8", s(&a), s(&b), s(&c)]));
    assert_eq!(m.len(), 3);
    for i in 0..3 {
        assert_eq!(m[i][i], 0.0);
        for j in 0..3 {
            assert_eq!(m[i][j], m[j][i]);
            if i != j {
                assert!(m[i][j] > 0.0);
            }
            for k in 0..3 {
                assert!(m[i][k] <= m[i][j] + m[j][k] + 1e-7);
            }
        }
    }
}

#[test]
fn transforms_on_disk_match_direct_distances() {
    let dir = TempDir::new().unwrap();
    let [a, b, c] = corpus(dir.path());
    let out = dir.path().join("xs");
    ok(&["transform", "-K", "8", "--center", s(&a), s(&b), s(&c), "-o", s(&out)]);
    let jsons: Vec<PathBuf> = ["disk", "annulus", "big"].iter().map(|n| out.join(format!("{n}.json"))).collect();
    let from_json = ok(&["dist", "--p", "inf", s(&jsons[0]), s(&jsons[1]), s(&jsons[2])]);
    let direct = ok(&["dist", "--p", "inf", "-K", "8", "--center", s(&a), s(&b), s(&c)]);
    assert_eq!(parse_matrix(&from_json).1, parse_matrix(&direct).1);
}

#[test]
fn oracle_agrees_with_fast_engine() {
    let dir = TempDir::new().unwrap();
    let [a, b, c] = corpus(dir.path());
    let out = dir.path().join("ref");
    let status = xpht(&["oracle", "-K", "8", "--engine", "reduction", s(&a), s(&b), s(&c), "-o", s(&out)]);
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    assert!(out.join("annulus.json").exists());
}

#[test]
fn oracle_agrees_on_random_images() {
    let dir = TempDir::new().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let paths: Vec<PathBuf> = (0..12)
        .map(|n| {
            let mut grid: Vec<Vec<bool>> = (0..7).map(|_| (0..7).map(|_| rng.gen_bool(0.5)).collect()).collect();
            grid[3][3] = true;
            write_text(dir.path(), &format!("r{n}.txt"), &grid)
        })
        .collect();
    let mut args = vec!["oracle", "-K", "8", "--center", "-o", s(dir.path())];
    args.extend(paths.iter().map(|p| s(p)));
    let out = xpht(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let [a, b, c] = corpus(dir.path());
    let args = ["dist", "--p", "1", "-K", "16", s(&a), s(&b), s(&c)];
    let first = ok(&args);
    let single = Command::new(env!("CARGO_BIN_EXE_xpht")).args(args).env("XPHT_THREADS", "1").output().unwrap();
    assert_eq!(first, String::from_utf8(single.stdout).unwrap());
    assert_eq!(first, ok(&args));
    let t = ["transform", "-K", "12", s(&b)];
    assert_eq!(ok(&t), ok(&t));
}

#[test]
fn failures_leave_no_partial_outputs() {
    let dir = TempDir::new().unwrap();
    let [a, ..] = corpus(dir.path());
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "01x\n").unwrap();
    let out = dir.path().join("batch");
    let res = xpht(&["transform", "-K", "8", s(&a), s(&bad), "-o", s(&out)]);
    assert!(!res.status.success());
    assert!(!String::from_utf8_lossy(&res.stderr).is_empty());
    assert!(!out.exists());

    let single = dir.path().join("odd.json");
    assert!(!xpht(&["transform", "-K", "7", s(&a), "-o", s(&single)]).status.success());
    assert!(!single.exists());

    let empty = write_text(dir.path(), "empty.txt", &vec![vec![false; 3]; 3]);
    let csv = dir.path().join("d.csv");
    assert!(!xpht(&["dist", "-K", "8", s(&a), s(&empty), "-o", s(&csv)]).status.success());
    assert!(!csv.exists());
}

#[test]
fn image_formats_agree() {
    let dir = TempDir::new().unwrap();
    let grid = shape(9, |r| (1.5..=3.5).contains(&r));
    let txt = write_text(dir.path(), "ring.txt", &grid);

    let mut pbm = format!("P1\n# ring\n{} {}\n", grid[0].len(), grid.len());
    for row in &grid {
        pbm += &row.iter().map(|&b| if b { "1" } else { "0" }).collect::<Vec<_>>().join(" ");
        pbm.push('\n');
    }
    let pbm_path = dir.path().join("ring.data");
    fs::write(&pbm_path, pbm).unwrap();

    let png_path = dir.path().join("ring.png");
    let img = image::GrayImage::from_fn(grid[0].len() as u32, grid.len() as u32, |x, y| {
        image::Luma([if grid[y as usize][x as usize] { 0 } else { 255 }])
    });
    img.save(&png_path).unwrap();

    let expected = ok(&["boundary", s(&txt)]);
    assert_eq!(ok(&["boundary", "--format", "txt", s(&txt)]), expected);
    assert_eq!(ok(&["boundary", "--format", "pbm", s(&pbm_path)]), expected);
    assert_eq!(ok(&["boundary", "--format", "png", s(&png_path)]), expected);
    assert_eq!(expected.matches("\"exterior\"").count(), 1);
    assert_eq!(expected.matches("\"interior\"").count(), 1);
}

#[test]
fn diagram_engines_agree_on_a_ring() {
    let dir = TempDir::new().unwrap();
    let ring = write_text(dir.path(), "ring.txt", &shape(11, |r| (1.5..=4.5).contains(&r)));
    let fast = ok(&["diagram", "--direction", "3,-4", s(&ring)]);
    assert_eq!(fast, ok(&["diagram", "--direction", "3,-4", "--engine", "reduction", s(&ring)]));
    assert!(fast.starts_with("{\"direction\":[0.6,-0.8]"), "{fast}");
}

#[test]
fn mds_places_the_equal_pair_together() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("d.csv");
    fs::write(&csv, "a,b,c\n0,0,5\n0,0,5\n5,5,0\n").unwrap();
    let out = ok(&["mds", s(&csv)]);
    let rows: Vec<Vec<String>> = out.lines().map(|l| l.split(',').map(str::to_owned).collect()).collect();
    assert_eq!(rows[0], ["name", "x", "y"]);
    let point = |r: &Vec<String>| (r[1].parse::<f64>().unwrap(), r[2].parse::<f64>().unwrap());
    let (a, b, c) = (point(&rows[1]), point(&rows[2]), point(&rows[3]));
    assert!((a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9);
    assert!(((a.0 - c.0).hypot(a.1 - c.1) - 5.0).abs() < 1e-6);

    fs::write(&csv, "a,b\n0,1\n").unwrap();
    assert!(!xpht(&["mds", s(&csv)]).status.success());
}

#[test]
fn unknown_norm_is_rejected() {
    let dir = TempDir::new().unwrap();
    let [a, b, _] = corpus(dir.path());
    assert!(!xpht(&["dist", "--p", "0.5", "-K", "8", s(&a), s(&b)]).status.success());
}
