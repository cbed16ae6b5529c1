//! Plain Gauss-Jordan elimination over the rationals. No fraction-free tricks,
//! no shared code with the library's eliminator.

use fischer_core::Rational;
use num_traits::{One, Zero};

pub struct Rref {
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
}

/// Reduced row echelon form, pivoting on the first nonzero entry of each column.
pub fn rref(m: &[Vec<Rational>], cols: usize) -> Rref {
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let factor = a[i][c].clone();
                for j in 0..cols {
                    let sub = &factor * &a[r][j];
                    a[i][j] = &a[i][j] - sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { rows: a, pivots }
}

pub fn rank(m: &[Vec<Rational>], cols: usize) -> usize {
    rref(m, cols).pivots.len()
}

/// Solution with every free variable set to zero, or `None` if inconsistent.
pub fn solve(m: &[Vec<Rational>], cols: usize, b: &[Rational]) -> Option<Vec<Rational>> {
    let aug: Vec<Vec<Rational>> = m
        .iter()
        .zip(b)
        .map(|(row, v)| {
            let mut r = row.clone();
            r.push(v.clone());
            r
        })
        .collect();
    let e = rref(&aug, cols + 1);
    if e.pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &p) in e.pivots.iter().enumerate() {
        x[p] = e.rows[i][cols].clone();
    }
    Some(x)
}

/// One kernel vector per free column: that entry 1, other free entries 0.
pub fn nullspace(m: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let e = rref(m, cols);
    (0..cols)
        .filter(|c| !e.pivots.contains(c))
        .map(|f| {
            let mut x = vec![Rational::zero(); cols];
            x[f] = Rational::one();
            for (i, &p) in e.pivots.iter().enumerate() {
                x[p] = -e.rows[i][f].clone();
            }
            x
        })
        .collect()
}

pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for i in c + 1..n {
            let factor = &a[i][c] / &a[c][c];
            for j in c..n {
                let sub = &factor * &a[c][j];
                a[i][j] = &a[i][j] - sub;
            }
        }
    }
    det
}

pub fn mul_vec(m: &[Vec<Rational>], x: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}
