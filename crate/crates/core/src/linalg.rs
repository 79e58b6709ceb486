//! Dense linear algebra for the handful of tiny systems the plasticity
//! equations need (at most a few unknowns).

#![allow(clippy::needless_range_loop)]

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;

/// Row-major dense matrix.
pub type Matrix = Vec<Vec<f64>>;

/// Gaussian elimination with partial pivoting. `SingularSystem` when a pivot
/// falls below `1e-13` relative to the largest entry.
pub fn solve_square(mut a: Matrix, mut b: Vec<f64>) -> Result<Vec<f64>> {
    let n = b.len();
    let scale = a
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0_f64, |m, x| m.max(math::abs(*x)));
    if scale == 0.0 {
        return Err(Error::SingularSystem);
    }
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| math::abs(a[i][col]).total_cmp(&math::abs(a[j][col])))
            .unwrap_or(col);
        if math::abs(a[pivot][col]) < 1e-13 * scale {
            return Err(Error::SingularSystem);
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            if f == 0.0 {
                continue;
            }
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let tail: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - tail) / a[row][row];
    }
    Ok(x)
}

/// Cyclic Jacobi eigen-decomposition of a symmetric matrix.
/// Returns eigenvalues and the matrix whose columns are the eigenvectors.
pub fn symmetric_eigen(mut a: Matrix) -> (Vec<f64>, Matrix) {
    let n = a.len();
    let mut v: Matrix = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if math::abs(a[p][q]) < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (math::abs(theta) + math::sqrt(theta * theta + 1.0));
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / math::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
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
    ((0..n).map(|i| a[i][i]).collect(), v)
}

/// Minimum-norm least-squares solution of `rows · x = rhs`, via the
/// pseudo-inverse of the normal matrix. Eigenvalues below `rel_tol` times the
/// largest are treated as zero. Returns the solution and the numerical rank.
pub fn lstsq_min_norm(rows: &[Vec<f64>], rhs: &[f64], rel_tol: f64) -> (Vec<f64>, usize) {
    let n = rows.first().map_or(0, Vec::len);
    let mut ata = vec![vec![0.0; n]; n];
    let mut atb = vec![0.0; n];
    for (row, &b) in rows.iter().zip(rhs) {
        for i in 0..n {
            atb[i] += row[i] * b;
            for j in 0..n {
                ata[i][j] += row[i] * row[j];
            }
        }
    }
    let (vals, vecs) = symmetric_eigen(ata);
    let top = vals.iter().fold(0.0_f64, |m, x| m.max(math::abs(*x)));
    let mut x = vec![0.0; n];
    let mut rank = 0;
    for (k, &lambda) in vals.iter().enumerate() {
        if lambda <= rel_tol * top {
            continue;
        }
        rank += 1;
        let coeff: f64 = (0..n).map(|i| vecs[i][k] * atb[i]).sum::<f64>() / lambda;
        for i in 0..n {
            x[i] += coeff * vecs[i][k];
        }
    }
    (x, rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_system() {
        let a = vec![
            vec![2.0, 1.0, 0.0],
            vec![1.0, 3.0, 1.0],
            vec![0.0, 1.0, 4.0],
        ];
        let x = solve_square(a.clone(), vec![3.0, 5.0, 5.0]).unwrap();
        for (row, b) in a.iter().zip([3.0, 5.0, 5.0]) {
            let lhs: f64 = row.iter().zip(&x).map(|(p, q)| p * q).sum();
            assert!((lhs - b).abs() < 1e-14);
        }
        assert_eq!(
            solve_square(vec![vec![1.0, 2.0], vec![2.0, 4.0]], vec![1.0, 2.0]),
            Err(Error::SingularSystem)
        );
    }

    #[test]
    fn eigen_reconstructs() {
        let a = vec![
            vec![4.0, 1.0, -2.0, 0.5],
            vec![1.0, 3.0, 0.0, 1.0],
            vec![-2.0, 0.0, 5.0, 0.0],
            vec![0.5, 1.0, 0.0, 2.0],
        ];
        let (vals, vecs) = symmetric_eigen(a.clone());
        for k in 0..4 {
            for i in 0..4 {
                let av: f64 = (0..4).map(|j| a[i][j] * vecs[j][k]).sum();
                assert!((av - vals[k] * vecs[i][k]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn min_norm_on_rank_deficient() {
        // x + y = 2 has minimum-norm solution (1, 1)
        let (x, rank) = lstsq_min_norm(&[vec![1.0, 1.0]], &[2.0], 1e-12);
        assert_eq!(rank, 1);
        assert!((x[0] - 1.0).abs() < 1e-14 && (x[1] - 1.0).abs() < 1e-14);
    }
}
