//! Harmonicity and harmonic divisors.
//!
//! `f` is a harmonic divisor for `L` when some nonzero `q` makes `L(f·q) = 0`.
//! Searches are bounded by `deg q ≤ M`; a failed search is reported as such
//! and never as a global negative. The one global negative accepted is a
//! caller-supplied nonnegativity certificate for nonconstant `f`: a harmonic
//! divisor must take both signs.

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::fischer::multiplier_map;
use crate::linalg::{self, DegreeSpec, GradedBasis};
use crate::poly::{Polynomial, QuadraticOperator};
use crate::rational::Rational;

pub fn is_harmonic(p: &Polynomial, op: &QuadraticOperator) -> Result<bool> {
    Ok(op.apply(p)?.is_zero())
}

/// Basis of the homogeneous degree-`n` solutions of `L(p) = 0`.
pub fn harmonic_basis(dim: usize, n: u32, op: &QuadraticOperator) -> Result<Vec<Polynomial>> {
    if op.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: op.dim(),
            found: dim,
        });
    }
    let domain = GradedBasis::new(dim, DegreeSpec::Exact(n));
    if n < 2 {
        return domain
            .monomials()
            .iter()
            .map(|m| Ok(Polynomial::monomial(dim, m.clone(), Rational::one())))
            .collect();
    }
    let codomain = GradedBasis::new(dim, DegreeSpec::Exact(n - 2));
    let one = Polynomial::one(dim);
    let map = multiplier_map(&one, op, domain, codomain)?;
    linalg::nullspace_basis(&map.matrix)
        .iter()
        .map(|v| map.domain.from_coords(v))
        .collect()
}

/// A checked pair `(f, q)` with `q ≠ 0` and `L(f·q) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct DivisorWitness {
    pub divisor: Polynomial,
    pub witness: Polynomial,
    pub operator: QuadraticOperator,
}

impl DivisorWitness {
    pub fn new(divisor: Polynomial, witness: Polynomial, operator: QuadraticOperator) -> Result<Self> {
        let w = DivisorWitness {
            divisor,
            witness,
            operator,
        };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        if self.witness.is_zero() {
            return Err(Error::InvalidWitness("witness q is zero".into()));
        }
        let prod = self.divisor.checked_mul(&self.witness)?;
        if !self.operator.apply(&prod)?.is_zero() {
            return Err(Error::InvalidWitness(format!(
                "L(f·q) ≠ 0 for f = {}, q = {}",
                self.divisor, self.witness
            )));
        }
        Ok(())
    }
}

/// Evidence that `f ≥ 0` everywhere.
#[derive(Clone, Debug, PartialEq)]
pub enum NonnegativityCertificate {
    /// `f = Σ c_i g_i²` with every `c_i > 0`; checked exactly.
    SumOfSquares(Vec<(Rational, Polynomial)>),
    /// Caller vouches for nonnegativity; recorded as unverified.
    Asserted,
}

impl NonnegativityCertificate {
    fn check(&self, f: &Polynomial) -> Result<&'static str> {
        match self {
            NonnegativityCertificate::Asserted => Ok("caller-asserted"),
            NonnegativityCertificate::SumOfSquares(terms) => {
                let mut total = Polynomial::zero(f.dim());
                for (c, g) in terms {
                    if !c.is_positive() {
                        return Err(Error::InvalidCertificate(
                            "sum-of-squares weights must be positive".into(),
                        ));
                    }
                    total = total.checked_add(&g.checked_mul(g)?.scale(c))?;
                }
                if total != *f {
                    return Err(Error::InvalidCertificate(format!(
                        "sum of squares {total} differs from {f}"
                    )));
                }
                Ok("verified sum of squares")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum DivisorSearch {
    Found(DivisorWitness),
    NotFoundAtBound { bound: u32 },
    Never { reason: String },
}

/// Bounded search for a nonzero `q ∈ P^{≤bound}` with `L(f·q) = 0`. The first
/// nullspace vector is reported.
pub fn is_harmonic_divisor(
    f: &Polynomial,
    bound: u32,
    op: &QuadraticOperator,
    nonnegativity: Option<&NonnegativityCertificate>,
) -> Result<DivisorSearch> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.dim() != op.dim() {
        return Err(Error::DimensionMismatch {
            expected: op.dim(),
            found: f.dim(),
        });
    }
    if let Some(cert) = nonnegativity {
        let kind = cert.check(f)?;
        if !f.is_constant() {
            return Ok(DivisorSearch::Never {
                reason: format!(
                    "f is nonnegative ({kind}) and nonconstant, but every nonconstant harmonic divisor takes both positive and negative values"
                ),
            });
        }
    }
    let top = (bound + f.degree().expect("nonzero")).saturating_sub(2);
    let map = multiplier_map(
        f,
        op,
        GradedBasis::new(f.dim(), DegreeSpec::UpTo(bound)),
        GradedBasis::new(f.dim(), DegreeSpec::UpTo(top)),
    )?;
    match linalg::nullspace_basis(&map.matrix).first() {
        Some(v) => {
            let q = map.domain.from_coords(v)?;
            let w = DivisorWitness::new(f.clone(), q, op.clone())
                .map_err(|e| Error::VerificationFailed(e.to_string()))?;
            Ok(DivisorSearch::Found(w))
        }
        None => Ok(DivisorSearch::NotFoundAtBound { bound }),
    }
}

/// Checks that the lowest and highest homogeneous parts of a witness
/// relation also vanish: `L(f_t q_T) = 0` and `L(f_m q_M) = 0`.
pub fn parts_are_divisors_check(w: &DivisorWitness) -> Result<bool> {
    w.validate()?;
    let op = &w.operator;
    let low = w
        .divisor
        .initial_part()?
        .checked_mul(&w.witness.initial_part()?)?;
    let high = w
        .divisor
        .principal_part()?
        .checked_mul(&w.witness.principal_part()?)?;
    Ok(op.apply(&low)?.is_zero() && op.apply(&high)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::text::parse_polynomial;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, Some(2)).unwrap()
    }

    fn lap(d: usize) -> QuadraticOperator {
        QuadraticOperator::laplacian(d)
    }

    #[test]
    fn harmonic_examples() {
        assert!(is_harmonic(&p("x^2 - y^2"), &lap(2)).unwrap());
        assert!(!is_harmonic(&p("x^2 + y^2"), &lap(2)).unwrap());
        assert!(is_harmonic(&p("x^3*y - x*y^3"), &lap(2)).unwrap());
    }

    #[test]
    fn basis_examples() {
        let b = harmonic_basis(2, 3, &lap(2)).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b, vec![p("-1/3*x^3 + x*y^2"), p("-3*x^2*y + y^3")]);
        assert_eq!(harmonic_basis(2, 0, &lap(2)).unwrap(), vec![p("1")]);
        let b3 = harmonic_basis(3, 2, &lap(3)).unwrap();
        assert_eq!(b3.len(), 5);
        assert!(b3.iter().all(|h| is_harmonic(h, &lap(3)).unwrap()));
    }

    #[test]
    fn divisor_examples() {
        match is_harmonic_divisor(&p("x"), 0, &lap(2), None).unwrap() {
            DivisorSearch::Found(w) => assert_eq!(w.witness, p("1")),
            other => panic!("{other:?}"),
        }
        match is_harmonic_divisor(&p("x*(x + y)"), 2, &lap(2), None).unwrap() {
            DivisorSearch::Found(w) => assert_eq!(w.witness, p("y^2 - x*y")),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            is_harmonic_divisor(&p("x*(x + y)"), 1, &lap(2), None).unwrap(),
            DivisorSearch::NotFoundAtBound { bound: 1 }
        );
        let sos = NonnegativityCertificate::SumOfSquares(vec![(int(1), p("x")), (int(1), p("y"))]);
        assert!(matches!(
            is_harmonic_divisor(&p("x^2 + y^2"), 8, &lap(2), Some(&sos)).unwrap(),
            DivisorSearch::Never { .. }
        ));
        assert!(matches!(
            is_harmonic_divisor(&p("x^2 + y^2"), 8, &lap(2), Some(&NonnegativityCertificate::Asserted)).unwrap(),
            DivisorSearch::Never { .. }
        ));
        let bad = NonnegativityCertificate::SumOfSquares(vec![(int(1), p("x"))]);
        assert!(is_harmonic_divisor(&p("x^2 + y^2"), 2, &lap(2), Some(&bad)).is_err());
        assert!(is_harmonic_divisor(&Polynomial::zero(2), 2, &lap(2), None).is_err());
    }

    #[test]
    fn positive_constants_are_still_divisors() {
        let r = is_harmonic_divisor(&p("2"), 0, &lap(2), Some(&NonnegativityCertificate::Asserted)).unwrap();
        assert!(matches!(r, DivisorSearch::Found(_)));
    }

    #[test]
    fn parts_check() {
        let f = p("x^2 - 3*y^2 + 1");
        let DivisorSearch::Found(w) = is_harmonic_divisor(&f, 1, &lap(2), None).unwrap() else {
            panic!("x is a witness for x^2 - 3*y^2 + 1");
        };
        assert!(parts_are_divisors_check(&w).unwrap());

        // principal part x^4 is nonnegative, so no witness at any bound
        assert_eq!(
            is_harmonic_divisor(&p("x*(x + y) + x^4"), 4, &lap(2), None).unwrap(),
            DivisorSearch::NotFoundAtBound { bound: 4 }
        );

        let homog = DivisorWitness::new(p("x*(x + y)"), p("y^2 - x*y"), lap(2)).unwrap();
        assert!(parts_are_divisors_check(&homog).unwrap());

        assert!(DivisorWitness::new(p("x^2 + y^2"), p("1"), lap(2)).is_err());
        let forged = DivisorWitness {
            divisor: p("x^2 + y^2"),
            witness: p("1"),
            operator: lap(2),
        };
        assert!(parts_are_divisors_check(&forged).is_err());
    }
}
