//! Deterministic fixtures shared by the benchmarks.

use fischer_core::domains::QuadricSpec;
use fischer_core::linalg::ExactMatrix;
use fischer_core::rational::{frac, int};
use fischer_core::{parse_polynomial, FischerProblem, Polynomial, QuadraticOperator, Rational};

/// Dense `n × n` matrix with small rational entries and full rank.
pub fn dense_matrix(n: usize) -> ExactMatrix {
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let v = ((i * 7 + j * 3) % 11) as i64 - 5;
                    if i == j {
                        frac(v + 13, 1)
                    } else {
                        frac(v, (j % 3 + 1) as i64)
                    }
                })
                .collect()
        })
        .collect();
    ExactMatrix::from_rows(rows).expect("square rows")
}

pub fn rhs(n: usize) -> Vec<Rational> {
    (0..n).map(|i| frac(i as i64 - 2, 3)).collect()
}

pub fn ellipsoid(dim: usize) -> QuadricSpec {
    let axes: Vec<Rational> = (1..=dim).map(|i| int(i as i64)).collect();
    QuadricSpec::ellipsoid(&axes).expect("positive semiaxes")
}

pub fn poly(text: &str, dim: usize) -> Polynomial {
    parse_polynomial(text, Some(dim)).expect("fixture parses")
}

/// Data of degree `deg` in two variables touching every monomial.
pub fn dense_data(deg: u32) -> Polynomial {
    let terms = (0..=deg)
        .flat_map(|n| (0..=n).map(move |i| (vec![n - i, i], frac((n + i) as i64 % 5 - 2, 1))))
        .collect::<Vec<_>>();
    Polynomial::from_terms(2, terms).expect("two variables")
}

pub fn cubic_problem() -> FischerProblem {
    FischerProblem::laplacian(poly("x^3 - 2*x*y^2 + x^2 + y^2 - y", 2)).expect("nonconstant")
}

pub fn laplacian(dim: usize) -> QuadraticOperator {
    QuadraticOperator::laplacian(dim)
}
