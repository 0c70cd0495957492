//! Classical multidimensional scaling.

use crate::error::{Error, Result};

/// Eigenvalues and eigenvectors of a symmetric matrix by cyclic Jacobi
/// rotations. Returns pairs sorted by decreasing eigenvalue; eigenvectors
/// have unit length.
#[allow(clippy::needless_range_loop)]
pub fn symmetric_eigen(matrix: &[Vec<f64>]) -> Vec<(f64, Vec<f64>)> {
    let n = matrix.len();
    let mut a: Vec<Vec<f64>> = matrix.to_vec();
    let mut v: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| f64::from(u8::from(i == j))).collect()).collect();
    let scale: f64 = a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off.sqrt() <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for row in a.iter_mut() {
                    let (akp, akq) = (row[p], row[q]);
                    row[p] = c * akp - s * akq;
                    row[q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vkp, vkq) = (row[p], row[q]);
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut pairs: Vec<(f64, Vec<f64>)> = (0..n).map(|j| (a[j][j], v.iter().map(|row| row[j]).collect())).collect();
    pairs.sort_by(|x, y| y.0.total_cmp(&x.0));
    pairs
}

/// Embeds points with the given pairwise distances into `dims` dimensions:
/// double-centre the squared distances and scale the top eigenvectors by
/// the square roots of their (non-negative parts of) eigenvalues.
pub fn classical_mds(distances: &[Vec<f64>], dims: usize) -> Result<Vec<Vec<f64>>> {
    let n = distances.len();
    if distances.iter().any(|row| row.len() != n) {
        return Err(Error::DimensionMismatch("distance matrix is not square".into()));
    }
    if distances.iter().flatten().any(|d| !d.is_finite()) {
        return Err(Error::Incompatible("distance matrix has non-finite entries".into()));
    }
    let sq: Vec<Vec<f64>> = distances.iter().map(|row| row.iter().map(|d| d * d).collect()).collect();
    let row_mean: Vec<f64> = sq.iter().map(|r| r.iter().sum::<f64>() / n as f64).collect();
    let total_mean = row_mean.iter().sum::<f64>() / n.max(1) as f64;
    let gram: Vec<Vec<f64>> =
        (0..n).map(|i| (0..n).map(|j| -0.5 * (sq[i][j] - row_mean[i] - row_mean[j] + total_mean)).collect()).collect();
    let eigen = symmetric_eigen(&gram);
    Ok((0..n)
        .map(|i| (0..dims).map(|k| eigen.get(k).map_or(0.0, |(lambda, vec)| lambda.max(0.0).sqrt() * vec[i])).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dist(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
    }

    #[test]
    fn eigen_of_small_matrix() {
        let m = vec![vec![2.0, 1.0], vec![1.0, 2.0]];
        let e = symmetric_eigen(&m);
        assert!((e[0].0 - 3.0).abs() < 1e-12 && (e[1].0 - 1.0).abs() < 1e-12);
        let v = &e[0].1;
        assert!((v[0].abs() - v[1].abs()).abs() < 1e-12);
    }

    #[test]
    fn recovers_planar_configuration() {
        let points = [[0.0, 0.0], [3.0, 0.0], [0.0, 4.0], [3.0, 4.0], [1.0, 2.0]];
        let d: Vec<Vec<f64>> = points.iter().map(|p| points.iter().map(|q| dist(p, q)).collect()).collect();
        let emb = classical_mds(&d, 2).unwrap();
        for i in 0..points.len() {
            for j in 0..points.len() {
                assert!((dist(&emb[i], &emb[j]) - d[i][j]).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn rejects_ragged_input() {
        assert!(classical_mds(&[vec![0.0, 1.0], vec![1.0]], 2).is_err());
    }
}
