//! Graded monomial bases and exact dense linear algebra over ℚ.
//!
//! Elimination is fraction-free (Bareiss): each row is scaled to integers,
//! then forward elimination keeps every intermediate entry a minor of the
//! scaled matrix, so all divisions are exact. Pivots are the first nonzero
//! entry of each column scanning rows top to bottom. Free variables are set to
//! zero, which makes every solution deterministic.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};
use crate::rational::Rational;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DegreeSpec {
    /// Homogeneous polynomials of exactly this degree.
    Exact(u32),
    /// All polynomials of degree at most this bound.
    UpTo(u32),
}

/// Ordered monomial basis. Degrees ascend; within a degree monomials run in
/// descending lexicographic order (`x², xy, y²`).
#[derive(Clone, Debug)]
pub struct GradedBasis {
    dim: usize,
    spec: DegreeSpec,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

fn push_degree(dim: usize, n: u32, out: &mut Vec<Monomial>) {
    fn rec(prefix: &mut Vec<u32>, remaining_vars: usize, n: u32, out: &mut Vec<Monomial>) {
        if remaining_vars == 1 {
            prefix.push(n);
            out.push(Monomial::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=n).rev() {
            prefix.push(e);
            rec(prefix, remaining_vars - 1, n - e, out);
            prefix.pop();
        }
    }
    rec(&mut Vec::with_capacity(dim), dim, n, out);
}

impl GradedBasis {
    pub fn new(dim: usize, spec: DegreeSpec) -> Self {
        assert!(dim >= 1, "basis needs at least one variable");
        let mut monomials = Vec::new();
        match spec {
            DegreeSpec::Exact(n) => push_degree(dim, n, &mut monomials),
            DegreeSpec::UpTo(n) => {
                for k in 0..=n {
                    push_degree(dim, k, &mut monomials);
                }
            }
        }
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        GradedBasis {
            dim,
            spec,
            monomials,
            index,
        }
    }

    /// `C(n+d−1, d−1)` for exact degree `n`, `C(N+d, d)` for degree `≤ N`.
    pub fn expected_len(dim: usize, spec: DegreeSpec) -> usize {
        let d = dim as u64;
        match spec {
            DegreeSpec::Exact(n) => binomial(n as u64 + d - 1, d - 1) as usize,
            DegreeSpec::UpTo(n) => binomial(n as u64 + d, d) as usize,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn spec(&self) -> DegreeSpec {
        self.spec
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn to_coords(&self, p: &Polynomial) -> Result<Vec<Rational>> {
        if p.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: p.dim(),
            });
        }
        let mut v = vec![Rational::zero(); self.len()];
        for (m, c) in p.terms() {
            let i = self.index_of(m).ok_or_else(|| Error::OutOfBasis {
                monomial: m.to_string(),
            })?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn from_coords(&self, coords: &[Rational]) -> Result<Polynomial> {
        if coords.len() != self.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} coordinates for a basis of length {}",
                coords.len(),
                self.len()
            )));
        }
        Polynomial::from_terms(
            self.dim,
            self.monomials
                .iter()
                .zip(coords)
                .map(|(m, c)| (m.exponents().to_vec(), c.clone())),
        )
    }
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(ExactMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix whose `j`-th column is `columns[j]` (each of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let cols = columns.len();
        let mut m = Self::zeros(rows, cols);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, v) in col.iter().enumerate() {
                m.data[i * cols + j] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// Copy with columns reordered: column `k` of the result is column `order[k]`.
    pub fn permute_columns(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.cols, "permutation length");
        let mut m = Self::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for (k, &j) in order.iter().enumerate() {
                m.set(i, k, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
}

/// Row-echelon form over ℤ produced by Bareiss elimination.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    swaps: usize,
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    row.iter()
        .map(|v| v.numer() * (&lcm / v.denom()))
        .collect()
}

/// Fraction-free forward elimination, choosing pivots among the first
/// `pivot_cols` columns only (trailing columns are carried along, e.g. a
/// right-hand side).
fn bareiss(mut a: Vec<Vec<BigInt>>, pivot_cols: usize) -> Echelon {
    let m = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            swaps += 1;
        }
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = &pivot_row[c];
        for row in tail.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..ncols {
                let v = pivot * &row[j] - &factor * &pivot_row[j];
                debug_assert!((&v % &prev).is_zero(), "Bareiss division must be exact");
                row[j] = v / &prev;
            }
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    Echelon {
        rows: a,
        pivots,
        swaps,
    }
}

fn echelon_of(m: &ExactMatrix) -> Echelon {
    let rows = (0..m.rows).map(|i| integer_row(m.row(i))).collect();
    bareiss(rows, m.cols)
}

/// Back-substitution on the pivot rows. `rhs[r]` is the right-hand side of row
/// `r`; `x` holds the already-fixed free variables and receives pivots.
fn back_substitute(e: &Echelon, rhs: &[BigInt], x: &mut [Rational]) {
    for (r, &pc) in e.pivots.iter().enumerate().rev() {
        let row = &e.rows[r];
        let mut acc = Rational::from_integer(rhs[r].clone());
        for (j, xj) in x.iter().enumerate().skip(pc + 1) {
            if !xj.is_zero() && !row[j].is_zero() {
                acc -= xj * Rational::from_integer(row[j].clone());
            }
        }
        x[pc] = acc / Rational::from_integer(row[pc].clone());
    }
}

pub fn rank(m: &ExactMatrix) -> usize {
    echelon_of(m).pivots.len()
}

/// One exact solution of `m·x = b` (free variables zero), or `None` when the
/// system is inconsistent.
pub fn solve(m: &ExactMatrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if b.len() != m.rows {
        return Err(Error::ShapeMismatch(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            m.rows
        )));
    }
    let n = m.cols;
    let rows: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|i| {
            let mut row: Vec<Rational> = m.row(i).to_vec();
            row.push(b[i].clone());
            integer_row(&row)
        })
        .collect();
    let e = bareiss(rows, n);
    let rank = e.pivots.len();
    if e.rows[rank..].iter().any(|row| !row[n].is_zero()) {
        return Ok(None);
    }
    let rhs: Vec<BigInt> = e.rows[..rank].iter().map(|row| row[n].clone()).collect();
    let mut x = vec![Rational::zero(); n];
    back_substitute(&e, &rhs, &mut x);
    debug_assert_eq!(m.mul_vec(&x).ok().as_deref(), Some(b));
    Ok(Some(x))
}

/// Basis of the kernel: one vector per free column (that entry 1, other free
/// entries 0), in column order.
pub fn nullspace_basis(m: &ExactMatrix) -> Vec<Vec<Rational>> {
    let e = echelon_of(m);
    let n = m.cols;
    let rank = e.pivots.len();
    let mut is_pivot = vec![false; n];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            // Move the free column to the right-hand side.
            let rhs: Vec<BigInt> = e.rows[..rank].iter().map(|row| -row[f].clone()).collect();
            let mut x = vec![Rational::zero(); n];
            back_substitute(&e, &rhs, &mut x);
            x[f] = Rational::one();
            x
        })
        .collect()
}

pub fn determinant(m: &ExactMatrix) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch(format!(
            "determinant of a {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(Rational::one());
    }
    let scale: BigInt = (0..n)
        .map(|i| {
            m.row(i)
                .iter()
                .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
        })
        .product();
    let e = echelon_of(m);
    if e.pivots.len() < n {
        return Ok(Rational::zero());
    }
    let mut det = e.rows[n - 1][n - 1].clone();
    if e.swaps % 2 == 1 {
        det = -det;
    }
    Ok(Rational::new(det, scale))
}

/// Leading principal minors all positive.
pub fn is_positive_definite(a: &[Vec<Rational>]) -> bool {
    let n = a.len();
    (1..=n).all(|k| {
        let sub: Vec<Vec<Rational>> = a[..k].iter().map(|r| r[..k].to_vec()).collect();
        ExactMatrix::from_rows(sub)
            .and_then(|m| determinant(&m))
            .is_ok_and(|d| d.is_positive())
    })
}
