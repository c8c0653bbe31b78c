//! Exact linear algebra over Q: Bareiss determinants, Gaussian elimination,
//! kernels, and linear solves.

use crate::arith::{Int, Rat};
use crate::error::{Error, Result};
use num_integer::Integer;
use num_traits::{One, Zero};

pub type Mat = Vec<Vec<Rat>>;

/// Exact determinant: clear denominators, then fraction-free Bareiss.
pub fn det_exact(m: &Mat) -> Result<Rat> {
    let n = m.len();
    if n == 0 {
        return Err(Error::Dimension("empty matrix".into()));
    }
    for row in m {
        if row.len() != n {
            return Err(Error::Dimension(format!(
                "matrix is {}x{}, expected square",
                n,
                row.len()
            )));
        }
    }
    // common denominator over the whole matrix
    let mut l = Int::one();
    for row in m {
        for e in row {
            l = l.lcm(e.denom());
        }
    }
    let mut a: Vec<Vec<Int>> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| e.numer() * (&l / e.denom()))
                .collect()
        })
        .collect();
    let mut sign = 1i64;
    let mut prev = Int::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(Rat::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
            a[i][k] = Int::zero();
        }
        prev = a[k][k].clone();
    }
    let det_scaled = a[n - 1][n - 1].clone() * Int::from(sign);
    let mut denom = Int::one();
    for _ in 0..n {
        denom *= &l;
    }
    Ok(Rat::new(det_scaled, denom))
}

/// Row-reduce in place; returns pivot column indices.
pub fn rref(a: &mut Mat) -> Vec<usize> {
    let rows = a.len();
    if rows == 0 {
        return vec![];
    }
    let cols = a[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].clone();
        for j in 0..cols {
            a[r][j] = &a[r][j] / &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let t = &f * &a[r][j];
                    a[i][j] = &a[i][j] - t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Mat) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Basis of the right kernel of m.
pub fn kernel(m: &Mat) -> Vec<Vec<Rat>> {
    if m.is_empty() {
        return vec![];
    }
    let cols = m[0].len();
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Solve m x = b; None when inconsistent (returns one solution).
pub fn solve(m: &Mat, b: &[Rat]) -> Option<Vec<Rat>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a: Mat = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut a);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = a[r][cols].clone();
    }
    Some(x)
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![Rat::zero(); m]; n];
    for i in 0..n {
        for j in 0..m {
            let mut s = Rat::zero();
            for l in 0..k {
                s += &a[i][l] * &b[l][j];
            }
            out[i][j] = s;
        }
    }
    out
}

pub fn transpose(a: &Mat) -> Mat {
    let n = a.len();
    let m = a[0].len();
    (0..m)
        .map(|j| (0..n).map(|i| a[i][j].clone()).collect())
        .collect()
}

pub fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect()
}
