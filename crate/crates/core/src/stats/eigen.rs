use serde::{Deserialize, Serialize};

use super::{fix_sign, Matrix};
use crate::error::{Error, Result};

pub const MAX_SWEEPS: usize = 100;
const SYMMETRY_TOL: f64 = 1e-9;
const OFF_TOL: f64 = 1e-12;

/// Eigenpairs of a symmetric matrix, eigenvalues descending. Column `i` of
/// `vectors` belongs to `values[i]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Matrix,
    pub sweeps: usize,
}

impl Eigen {
    pub fn vector(&self, i: usize) -> Vec<f64> {
        self.vectors.column(i)
    }
}

/// Cyclic Jacobi rotations. Each eigenvector's largest-magnitude entry is
/// made positive.
pub fn symmetric_eigen(a: &Matrix) -> Result<Eigen> {
    if a.rows != a.cols {
        return Err(Error::InvalidMatrix(format!("{}x{} is not square", a.rows, a.cols)));
    }
    if a.data.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidMatrix("non-finite entry".into()));
    }
    let d = a.rows;
    let scale = a.data.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let mut s = a.clone();
    for i in 0..d {
        for j in i + 1..d {
            let gap = (a[(i, j)] - a[(j, i)]).abs();
            if gap > SYMMETRY_TOL * scale {
                return Err(Error::InvalidMatrix(format!("asymmetric at ({i},{j}) by {gap:e}")));
            }
            let mean = 0.5 * (a[(i, j)] + a[(j, i)]);
            s[(i, j)] = mean;
            s[(j, i)] = mean;
        }
    }

    let tol = OFF_TOL * s.norm_frobenius();
    let mut v = Matrix::identity(d);
    let mut sweeps = 0;
    loop {
        let off = off_norm(&s);
        if off <= tol {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { off_norm: off, sweeps });
        }
        sweeps += 1;
        for p in 0..d {
            for q in p + 1..d {
                rotate(&mut s, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| s[(j, j)].total_cmp(&s[(i, i)]).then(i.cmp(&j)));
    let values = order.iter().map(|&i| s[(i, i)]).collect();
    let mut vectors = Matrix::zeros(d, d);
    for (col, &src) in order.iter().enumerate() {
        let mut vec = v.column(src);
        fix_sign(&mut vec);
        for (row, x) in vec.into_iter().enumerate() {
            vectors[(row, col)] = x;
        }
    }
    Ok(Eigen { values, vectors, sweeps })
}

fn off_norm(s: &Matrix) -> f64 {
    let mut sum = 0.0;
    for i in 0..s.rows {
        for j in 0..s.cols {
            if i != j {
                sum += s[(i, j)] * s[(i, j)];
            }
        }
    }
    sum.sqrt()
}

/// Zeroes `s[p][q]` with the rotation J: s <- Jᵀ s J, v <- v J.
fn rotate(s: &mut Matrix, v: &mut Matrix, p: usize, q: usize) {
    let apq = s[(p, q)];
    if apq == 0.0 {
        return;
    }
    let theta = (s[(q, q)] - s[(p, p)]) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let sn = t * c;
    let d = s.rows;
    for k in 0..d {
        let (kp, kq) = (s[(k, p)], s[(k, q)]);
        s[(k, p)] = c * kp - sn * kq;
        s[(k, q)] = sn * kp + c * kq;
    }
    for k in 0..d {
        let (pk, qk) = (s[(p, k)], s[(q, k)]);
        s[(p, k)] = c * pk - sn * qk;
        s[(q, k)] = sn * pk + c * qk;
    }
    s[(p, q)] = 0.0;
    s[(q, p)] = 0.0;
    for k in 0..d {
        let (kp, kq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = c * kp - sn * kq;
        v[(k, q)] = sn * kp + c * kq;
    }
}
