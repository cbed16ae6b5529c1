//! Sparse multivariate polynomials over ℚ.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded lexicographic with `x1 > x2 > … > xd`. Stored coefficients are never
//! zero, so structural equality is mathematical equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, DegreeSpec, ExactMatrix, GradedBasis};
use crate::rational::{format_rational, Rational};

/// Exponent vector of a monomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(dim: usize) -> Self {
        Monomial(vec![0; dim])
    }

    /// The monomial `x_var`.
    pub fn var(dim: usize, var: usize) -> Self {
        let mut e = vec![0; dim];
        e[var] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Variable names used for printing: `x, y, z` up to three variables,
/// `x1 … xd` beyond.
pub fn variable_name(dim: usize, var: usize) -> String {
    if dim <= 3 {
        ["x", "y", "z"][var].to_string()
    } else {
        format!("x{}", var + 1)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dim = self.dim();
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(&variable_name(dim, i))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Multiplicity of a zero; the zero polynomial vanishes to infinite order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Multiplicity {
    Finite(u32),
    Infinite,
}

impl Multiplicity {
    pub fn at_least(self, n: u32) -> bool {
        match self {
            Multiplicity::Finite(m) => m >= n,
            Multiplicity::Infinite => true,
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(m) => write!(f, "{m}"),
            Multiplicity::Infinite => f.write_str("infinite"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<Monomial, Rational>,
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

impl Polynomial {
    pub fn zero(dim: usize) -> Self {
        assert!(dim >= 1, "polynomials need at least one variable");
        Polynomial {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        Self::monomial(dim, Monomial::one(dim), c)
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Rational::one())
    }

    /// The coordinate function `x_var` (zero-based).
    pub fn var(dim: usize, var: usize) -> Self {
        Self::monomial(dim, Monomial::var(dim, var), Rational::one())
    }

    pub fn monomial(dim: usize, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.dim(), dim, "monomial dimension");
        let mut p = Self::zero(dim);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(dim);
        for (e, c) in terms {
            check_dim(dim, e.len())?;
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Lowest total degree of a nonzero term.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn is_constant(&self) -> bool {
        self.degree().is_none_or(|d| d == 0)
    }

    pub fn is_homogeneous(&self) -> bool {
        match (self.min_degree(), self.degree()) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        check_dim(self.dim, other.dim)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        check_dim(self.dim, other.dim)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        check_dim(self.dim, other.dim)?;
        let mut out = Polynomial::zero(self.dim);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.dim);
        }
        Polynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut out = Polynomial::one(self.dim);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Partial derivative with respect to `x_var`.
    pub fn derivative(&self, var: usize) -> Polynomial {
        assert!(var < self.dim, "variable index out of range");
        let mut out = Polynomial::zero(self.dim);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] -= 1;
            out.add_term(Monomial(exps), c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// `∂_i ∂_j` of the polynomial.
    pub fn second_derivative(&self, i: usize, j: usize) -> Polynomial {
        assert!(i < self.dim && j < self.dim, "variable index out of range");
        let mut out = Polynomial::zero(self.dim);
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            let a = exps[i];
            if a == 0 {
                continue;
            }
            exps[i] -= 1;
            let b = exps[j];
            if b == 0 {
                continue;
            }
            exps[j] -= 1;
            let factor = BigInt::from(a) * BigInt::from(b);
            out.add_term(Monomial(exps), c * Rational::from_integer(factor));
        }
        out
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        check_dim(self.dim, point.len())?;
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Homogeneous components keyed by degree; zero components are omitted.
    pub fn homogeneous_components(&self) -> Result<BTreeMap<u32, Polynomial>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.components_unchecked())
    }

    fn components_unchecked(&self) -> BTreeMap<u32, Polynomial> {
        let mut parts: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts
                .entry(m.degree())
                .or_insert_with(|| Polynomial::zero(self.dim))
                .terms
                .insert(m.clone(), c.clone());
        }
        parts
    }

    /// Homogeneous component of degree `n`, possibly zero.
    pub fn component(&self, n: u32) -> Polynomial {
        Polynomial {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Lowest-degree nonzero homogeneous component.
    pub fn initial_part(&self) -> Result<Polynomial> {
        let t = self.min_degree().ok_or(Error::ZeroPolynomial)?;
        Ok(self.component(t))
    }

    /// Highest-degree nonzero homogeneous component.
    pub fn principal_part(&self) -> Result<Polynomial> {
        let m = self.degree().ok_or(Error::ZeroPolynomial)?;
        Ok(self.component(m))
    }

    /// `φ(x) = p(x − x0)`, expanded exactly.
    pub fn translate(&self, x0: &[Rational]) -> Result<Polynomial> {
        check_dim(self.dim, x0.len())?;
        if x0.iter().all(Zero::is_zero) {
            return Ok(self.clone());
        }
        // (x_i − a)^e = Σ_k C(e,k) x_i^k (−a)^(e−k), one variable at a time.
        let mut out = self.clone();
        for (var, a) in x0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let shift = -a.clone();
            let mut next = Polynomial::zero(self.dim);
            for (m, c) in &out.terms {
                let e = m.0[var];
                let mut pow = Rational::one();
                let mut pows = Vec::with_capacity(e as usize + 1);
                for _ in 0..=e {
                    pows.push(pow.clone());
                    pow *= &shift;
                }
                for k in 0..=e {
                    let coef = Rational::from_integer(binomial(BigInt::from(e), BigInt::from(k)))
                        * &pows[(e - k) as usize]
                        * c;
                    let mut exps = m.0.clone();
                    exps[var] = k;
                    next.add_term(Monomial(exps), coef);
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// Order of vanishing at `x0`: the lowest total degree of the polynomial
    /// re-expanded around `x0` (Taylor's theorem).
    pub fn multiplicity_at(&self, x0: &[Rational]) -> Result<Multiplicity> {
        check_dim(self.dim, x0.len())?;
        let neg: Vec<Rational> = x0.iter().map(|a| -a.clone()).collect();
        let centred = self.translate(&neg)?;
        Ok(match centred.min_degree() {
            Some(t) => Multiplicity::Finite(t),
            None => Multiplicity::Infinite,
        })
    }

    /// Returns `q` with `self = divisor · q` if it exists, by solving the
    /// linear system on the coefficients of `q`.
    pub fn exact_divide(&self, divisor: &Polynomial) -> Result<Option<Polynomial>> {
        check_dim(self.dim, divisor.dim)?;
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let Some(dg) = self.degree() else {
            return Ok(Some(Polynomial::zero(self.dim)));
        };
        if dg < dd {
            return Ok(None);
        }
        let domain = GradedBasis::new(self.dim, DegreeSpec::UpTo(dg - dd));
        let codomain = GradedBasis::new(self.dim, DegreeSpec::UpTo(dg));
        let columns: Vec<Vec<Rational>> = domain
            .monomials()
            .iter()
            .map(|m| {
                let prod = divisor * &Polynomial::monomial(self.dim, m.clone(), Rational::one());
                codomain.to_coords(&prod)
            })
            .collect::<Result<_>>()?;
        let matrix = ExactMatrix::from_columns(codomain.len(), &columns);
        let rhs = codomain.to_coords(self)?;
        Ok(match linalg::solve(&matrix, &rhs)? {
            Some(x) => {
                let q = domain.from_coords(&x)?;
                debug_assert_eq!(&(divisor * &q), self);
                Some(q)
            }
            None => None,
        })
    }

    pub fn negated(&self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let is_const = m.degree() == 0;
            if is_const {
                f.write_str(&format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&abs))?;
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            /// Panics on dimension mismatch; use the `checked_*` form for fallible input.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomial dimension mismatch")
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.negated()
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.negated()
    }
}

/// Constant-coefficient second-order operator `Σ C_ij ∂_i ∂_j` with `C`
/// symmetric. `C = I` is the Laplacian.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadraticOperator {
    dim: usize,
    coeffs: Vec<Vec<Rational>>,
}

impl QuadraticOperator {
    pub fn new(coeffs: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = coeffs.len();
        if dim == 0 {
            return Err(Error::InvalidOperator("empty coefficient matrix".into()));
        }
        for row in &coeffs {
            if row.len() != dim {
                return Err(Error::InvalidOperator(format!(
                    "coefficient matrix is not square ({dim} rows, a row of length {})",
                    row.len()
                )));
            }
        }
        for i in 0..dim {
            for j in 0..i {
                if coeffs[i][j] != coeffs[j][i] {
                    return Err(Error::InvalidOperator(format!(
                        "coefficient matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(QuadraticOperator { dim, coeffs })
    }

    pub fn laplacian(dim: usize) -> Self {
        Self::diagonal((0..dim).map(|_| Rational::one()).collect())
    }

    pub fn diagonal(diag: Vec<Rational>) -> Self {
        let dim = diag.len();
        assert!(dim >= 1, "operator needs at least one variable");
        let mut coeffs = vec![vec![Rational::zero(); dim]; dim];
        for (i, d) in diag.into_iter().enumerate() {
            coeffs[i][i] = d;
        }
        QuadraticOperator { dim, coeffs }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[Vec<Rational>] {
        &self.coeffs
    }

    pub fn is_laplacian(&self) -> bool {
        *self == Self::laplacian(self.dim)
    }

    /// `Σ C_ij ∂_i ∂_j p`.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        check_dim(self.dim, p.dim())?;
        let mut out = Polynomial::zero(self.dim);
        for (m, c) in &p.terms {
            for i in 0..self.dim {
                for j in 0..self.dim {
                    let cij = &self.coeffs[i][j];
                    if cij.is_zero() {
                        continue;
                    }
                    let mut exps = m.0.clone();
                    let a = exps[i];
                    if a == 0 {
                        continue;
                    }
                    exps[i] -= 1;
                    let b = exps[j];
                    if b == 0 {
                        continue;
                    }
                    exps[j] -= 1;
                    let factor = Rational::from_integer(BigInt::from(a) * BigInt::from(b));
                    out.add_term(Monomial(exps), c * cij * factor);
                }
            }
        }
        Ok(out)
    }

    /// The symbol `Σ C_ij x_i x_j` as a polynomial.
    pub fn symbol(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let m = Monomial::var(self.dim, i).mul(&Monomial::var(self.dim, j));
                out.add_term(m, self.coeffs[i][j].clone());
            }
        }
        out
    }

    /// Exact positive-definiteness via leading principal minors.
    pub fn is_positive_definite(&self) -> bool {
        linalg::is_positive_definite(&self.coeffs)
    }
}

impl fmt::Display for QuadraticOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .coeffs
            .iter()
            .map(|r| r.iter().map(format_rational).collect::<Vec<_>>().join(", "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use crate::text::parse_polynomial;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, Some(2)).unwrap()
    }

    fn p1(s: &str) -> Polynomial {
        parse_polynomial(s, Some(1)).unwrap()
    }

    #[test]
    fn ring_examples() {
        assert!((p("x") + p("-x")).is_zero());
        assert_eq!(p("x + y") * p("x - y"), p("x^2 - y^2"));
        assert_eq!(p("x*y") * p("x*y"), p("x^2*y^2"));
        assert_eq!(p("x").scale(&frac(1, 2)), p("1/2*x"));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = Polynomial::var(2, 0);
        let b = Polynomial::var(3, 0);
        assert_eq!(
            a.checked_add(&b),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        );
        assert!(a.checked_mul(&b).is_err());
        assert!(a.evaluate(&[int(1)]).is_err());
        assert!(QuadraticOperator::laplacian(3).apply(&a).is_err());
    }

    #[test]
    fn operator_examples() {
        let lap = QuadraticOperator::laplacian(2);
        assert_eq!(lap.apply(&p("x^2 + y^2")).unwrap(), p("4"));
        assert!(lap.apply(&p("x^3*y - x*y^3")).unwrap().is_zero());
        let sheared = QuadraticOperator::diagonal(vec![int(1), frac(1, 3)]);
        assert_eq!(
            sheared.apply(&p("x*y - y^2 - x^2*y + y^3")).unwrap(),
            p("-2/3")
        );
    }

    #[test]
    fn operator_validation() {
        assert!(QuadraticOperator::new(vec![vec![int(1), int(2)], vec![int(3), int(1)]]).is_err());
        assert!(QuadraticOperator::new(vec![vec![int(1)], vec![int(1)]]).is_err());
        let mixed = QuadraticOperator::new(vec![vec![int(0), int(1)], vec![int(1), int(0)]]).unwrap();
        // 2 ∂x∂y (x y) = 2
        assert_eq!(mixed.apply(&p("x*y")).unwrap(), p("2"));
        assert!(QuadraticOperator::laplacian(3).is_positive_definite());
        assert!(!mixed.is_positive_definite());
    }

    #[test]
    fn homogeneous_parts() {
        let parts = p("1 + x + x*y").homogeneous_components().unwrap();
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[&0], p("1"));
        assert_eq!(parts[&1], p("x"));
        assert_eq!(parts[&2], p("x*y"));
        let sq = p("(x+1)^2").homogeneous_components().unwrap();
        assert_eq!(sq[&1], p("2*x"));
        assert_eq!(p("x^2 + y^2").homogeneous_components().unwrap().len(), 1);
        assert_eq!(Polynomial::zero(2).homogeneous_components(), Err(Error::ZeroPolynomial));

        assert_eq!(p1("x^2 + x^5").initial_part().unwrap(), p1("x^2"));
        assert_eq!(p1("x^2 + x^5").principal_part().unwrap(), p1("x^5"));
        assert_eq!(p1("3").initial_part().unwrap(), p1("3"));
        assert!(Polynomial::zero(1).principal_part().is_err());
    }

    #[test]
    fn translation_examples() {
        assert_eq!(p1("x^2").translate(&[int(1)]).unwrap(), p1("x^2 - 2*x + 1"));
        assert_eq!(p("x^3 + y").translate(&[int(0), int(0)]).unwrap(), p("x^3 + y"));
        assert_eq!(p("x + y").translate(&[int(1), int(2)]).unwrap(), p("x + y - 3"));
        assert!(p("x").translate(&[int(1)]).is_err());
    }

    #[test]
    fn multiplicity_examples() {
        let o = [int(0), int(0)];
        assert_eq!(p("x^2 + y^2").multiplicity_at(&o).unwrap(), Multiplicity::Finite(2));
        assert_eq!(p("x").multiplicity_at(&o).unwrap(), Multiplicity::Finite(1));
        assert_eq!(
            p("x*(x^2 + y^2)").multiplicity_at(&o).unwrap(),
            Multiplicity::Finite(3)
        );
        assert_eq!(p("x + 1").multiplicity_at(&o).unwrap(), Multiplicity::Finite(0));
        assert_eq!(
            Polynomial::zero(2).multiplicity_at(&o).unwrap(),
            Multiplicity::Infinite
        );
        // zero at (1, 0) of (x − 1)^2 y
        assert_eq!(
            p("(x - 1)^2*y").multiplicity_at(&[int(1), int(0)]).unwrap(),
            Multiplicity::Finite(3)
        );
    }

    /// Largest N with every ∂^α p(x0) = 0 for |α| ≤ N − 1, by enumerating
    /// derivatives directly.
    fn multiplicity_by_derivatives(p: &Polynomial, x0: &[Rational], cap: u32) -> u32 {
        let mut frontier = vec![p.clone()];
        for order in 0..=cap {
            if frontier.iter().any(|q| !q.evaluate(x0).unwrap().is_zero()) {
                return order;
            }
            let mut next = Vec::new();
            for q in &frontier {
                for v in 0..p.dim() {
                    next.push(q.derivative(v));
                }
            }
            frontier = next;
        }
        cap + 1
    }

    #[test]
    fn multiplicity_matches_derivative_characterisation() {
        let cases = [
            ("x^2 + y^2", (0, 0)),
            ("x*y*(1 - x - y)", (0, 0)),
            ("x*y*(1 - x - y)", (1, 0)),
            ("(x - 1)^3 + y^2*(x - 1)", (1, 0)),
            ("x^2 - y^3 + 2", (0, 0)),
            ("(x + y - 2)^2*(x - y)", (1, 1)),
            ("x^4*y^2 + y^5", (0, 0)),
        ];
        for (s, (a, b)) in cases {
            let q = p(s);
            let x0 = [int(a), int(b)];
            let Multiplicity::Finite(m) = q.multiplicity_at(&x0).unwrap() else {
                panic!("finite expected")
            };
            assert_eq!(m, multiplicity_by_derivatives(&q, &x0, 8), "{s} at ({a},{b})");
        }
    }

    #[test]
    fn division_examples() {
        assert_eq!(p("x^2 - y^2").exact_divide(&p("x + y")).unwrap(), Some(p("x - y")));
        assert_eq!(p("x^2 + y^2").exact_divide(&p("x")).unwrap(), None);
        assert_eq!(Polynomial::zero(2).exact_divide(&p("x + 1")).unwrap(), Some(Polynomial::zero(2)));
        assert_eq!(p("x").exact_divide(&p("x^2")).unwrap(), None);
        assert_eq!(p("x").exact_divide(&Polynomial::zero(2)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(p("x^2 + y^2").evaluate(&[int(3), int(4)]).unwrap(), int(25));
        assert_eq!(p("1").evaluate(&[frac(7, 3), int(-9)]).unwrap(), int(1));
        assert_eq!(p("x - y").evaluate(&[frac(1, 2), frac(1, 3)]).unwrap(), frac(1, 6));
    }

    #[test]
    fn grlex_order() {
        let x2 = Monomial::new(vec![2, 0]);
        let xy = Monomial::new(vec![1, 1]);
        let y3 = Monomial::new(vec![0, 3]);
        assert!(x2 > xy);
        assert!(y3 > x2);
        assert_eq!(p("y^2 + x^2").to_string(), "x^2 + y^2");
    }
}
