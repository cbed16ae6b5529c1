//! Fischer operators `F_ψ(q) = L(ψ·q)`.
//!
//! Everything here is exact but bounded: a truncated solve over `P^{≤M}` that
//! fails says nothing about larger degrees. The only global negative this
//! module issues is the high-multiplicity argument: if `ψ` vanishes to order
//! at least 3 at `x0`, every second derivative of `ψq` vanishes there, so
//! `L(ψq)(x0) = 0` for all `q` and no `f` with `f(x0) ≠ 0` is in the image.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{self, DegreeSpec, ExactMatrix, GradedBasis};
use crate::poly::{Monomial, Multiplicity, Polynomial, QuadraticOperator};
use crate::rational::{format_point, Rational};

/// `ψ` together with the second-order operator `L`.
#[derive(Clone, Debug, PartialEq)]
pub struct FischerProblem {
    psi: Polynomial,
    op: QuadraticOperator,
}

impl FischerProblem {
    pub fn new(psi: Polynomial, op: QuadraticOperator) -> Result<Self> {
        if psi.dim() != op.dim() {
            return Err(Error::DimensionMismatch {
                expected: op.dim(),
                found: psi.dim(),
            });
        }
        if psi.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if psi.is_constant() {
            return Err(Error::InvalidInput("ψ must be nonconstant".into()));
        }
        Ok(FischerProblem { psi, op })
    }

    pub fn laplacian(psi: Polynomial) -> Result<Self> {
        let op = QuadraticOperator::laplacian(psi.dim());
        Self::new(psi, op)
    }

    pub fn psi(&self) -> &Polynomial {
        &self.psi
    }

    pub fn operator(&self) -> &QuadraticOperator {
        &self.op
    }

    pub fn dim(&self) -> usize {
        self.psi.dim()
    }

    pub fn degree(&self) -> u32 {
        self.psi.degree().expect("ψ is nonzero")
    }

    /// `L(ψ·q)`.
    pub fn apply(&self, q: &Polynomial) -> Result<Polynomial> {
        self.op.apply(&self.psi.checked_mul(q)?)
    }

    /// Same operator, `ψ` replaced by `x ↦ ψ(x − x0)`.
    pub fn translated(&self, x0: &[Rational]) -> Result<Self> {
        Ok(FischerProblem {
            psi: self.psi.translate(x0)?,
            op: self.op.clone(),
        })
    }

    /// Translation moving `x0` to the origin: `x ↦ ψ(x + x0)`.
    pub fn recentred(&self, x0: &[Rational]) -> Result<Self> {
        let neg: Vec<Rational> = x0.iter().map(|a| -a.clone()).collect();
        self.translated(&neg)
    }
}

/// Convenience for [`FischerProblem::apply`].
pub fn fischer_apply(prob: &FischerProblem, q: &Polynomial) -> Result<Polynomial> {
    prob.apply(q)
}

/// Convenience for [`FischerProblem::translated`].
pub fn translated_problem(prob: &FischerProblem, x0: &[Rational]) -> Result<FischerProblem> {
    prob.translated(x0)
}

/// Matrix of a linear map between two monomial bases.
#[derive(Clone, Debug)]
pub struct LinearMap {
    pub matrix: ExactMatrix,
    pub domain: GradedBasis,
    pub codomain: GradedBasis,
}

/// Matrix of `q ↦ L(ψ q)` from `domain` into `P^{≤ codomain_bound}`.
pub(crate) fn multiplier_map(
    psi: &Polynomial,
    op: &QuadraticOperator,
    domain: GradedBasis,
    codomain: GradedBasis,
) -> Result<LinearMap> {
    let dim = psi.dim();
    let columns: Vec<Vec<Rational>> = domain
        .monomials()
        .iter()
        .map(|m| {
            let shifted = psi.checked_mul(&Polynomial::monomial(dim, m.clone(), Rational::one()))?;
            codomain.to_coords(&op.apply(&shifted)?)
        })
        .collect::<Result<_>>()?;
    Ok(LinearMap {
        matrix: ExactMatrix::from_columns(codomain.len(), &columns),
        domain,
        codomain,
    })
}

/// `F_ψ` restricted to `P^{≤bound}`, landing in `P^{≤max(bound+deg ψ−2, min_codomain)}`.
pub fn truncated_map(prob: &FischerProblem, bound: u32, min_codomain: u32) -> Result<LinearMap> {
    let top = (bound + prob.degree()).saturating_sub(2).max(min_codomain);
    multiplier_map(
        &prob.psi,
        &prob.op,
        GradedBasis::new(prob.dim(), DegreeSpec::UpTo(bound)),
        GradedBasis::new(prob.dim(), DegreeSpec::UpTo(top)),
    )
}

/// Matrix of `q_n ↦ L(ψ_k q_n)` from degree-`n` to degree-`(n+k−2)` forms.
pub fn graded_fischer_matrix(psi_k: &Polynomial, op: &QuadraticOperator, n: u32) -> Result<LinearMap> {
    let k = psi_k.degree().ok_or(Error::ZeroPolynomial)?;
    if !psi_k.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if k < 2 {
        return Err(Error::InvalidInput(format!(
            "graded Fischer matrices need degree ≥ 2, got {k}"
        )));
    }
    if psi_k.dim() != op.dim() {
        return Err(Error::DimensionMismatch {
            expected: op.dim(),
            found: psi_k.dim(),
        });
    }
    multiplier_map(
        psi_k,
        op,
        GradedBasis::new(psi_k.dim(), DegreeSpec::Exact(n)),
        GradedBasis::new(psi_k.dim(), DegreeSpec::Exact(n + k - 2)),
    )
}

/// Exact status of the square graded block at one degree.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedEntry {
    pub degree: u32,
    pub size: usize,
    pub rank: usize,
    /// First kernel vector when the block is singular.
    pub kernel: Option<Polynomial>,
}

impl GradedEntry {
    pub fn is_invertible(&self) -> bool {
        self.kernel.is_none()
    }
}

fn graded_entry(psi2: &Polynomial, op: &QuadraticOperator, n: u32) -> Result<GradedEntry> {
    let map = graded_fischer_matrix(psi2, op, n)?;
    let rank = linalg::rank(&map.matrix);
    let kernel = if rank < map.domain.len() {
        let v = linalg::nullspace_basis(&map.matrix)
            .into_iter()
            .next()
            .expect("rank deficit implies a kernel vector");
        Some(map.domain.from_coords(&v)?)
    } else {
        None
    };
    Ok(GradedEntry {
        degree: n,
        size: map.domain.len(),
        rank,
        kernel,
    })
}

/// Invertibility of `q_n ↦ L(ψ₂ q_n)` for every `n ≤ n_max`.
pub fn graded_bijectivity_table(
    psi2: &Polynomial,
    op: &QuadraticOperator,
    n_max: u32,
) -> Result<Vec<GradedEntry>> {
    if psi2.degree() != Some(2) || !psi2.is_homogeneous() {
        return Err(Error::InvalidInput(
            "bijectivity tables need a homogeneous quadratic".into(),
        ));
    }
    (0..=n_max)
        .into_par_iter()
        .map(|n| graded_entry(psi2, op, n))
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SolveStatus {
    Solved,
    InfeasibleAtBound,
    GloballyInfeasible,
    SeriesTruncated,
}

impl SolveStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveStatus::Solved => "SOLVED",
            SolveStatus::InfeasibleAtBound => "INFEASIBLE_AT_BOUND",
            SolveStatus::GloballyInfeasible => "GLOBALLY_INFEASIBLE",
            SolveStatus::SeriesTruncated => "SERIES_TRUNCATED",
        }
    }
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Why an outcome has the status it has.
#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    /// Witness re-checked with `L(ψq) = f`.
    ExactCheck { bound: u32 },
    /// No solution in `P^{≤bound}`; the truncated map has the given rank.
    BoundExhausted { bound: u32, rank: usize, columns: usize },
    /// `ψ` vanishes to order ≥ 3 at `point` while `f(point) ≠ 0`.
    HighMultiplicityZero {
        point: Vec<Rational>,
        multiplicity: Multiplicity,
        target_value: Rational,
    },
    /// Graded recursion produced `window` vanishing pieces past `last_degree`.
    SeriesTerminated { last_degree: u32, window: u32 },
    /// Graded recursion stopped at the cutoff; the witness is a partial sum.
    SeriesCutoff { cutoff: u32 },
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::ExactCheck { bound } => {
                write!(f, "witness verified exactly (degree bound {bound})")
            }
            Certificate::BoundExhausted { bound, rank, columns } => write!(
                f,
                "no solution of degree ≤ {bound} (truncated map rank {rank} of {columns} columns); no global claim"
            ),
            Certificate::HighMultiplicityZero {
                point,
                multiplicity,
                target_value,
            } => write!(
                f,
                "ψ has a zero of multiplicity {multiplicity} ≥ 3 at {}, so every L(ψq) vanishes there, but the target takes the value {}",
                format_point(point),
                crate::rational::format_rational(target_value)
            ),
            Certificate::SeriesTerminated { last_degree, window } => write!(
                f,
                "graded pieces vanish for {window} consecutive degrees up to {last_degree}; all later pieces vanish"
            ),
            Certificate::SeriesCutoff { cutoff } => {
                write!(f, "graded recursion truncated at degree {cutoff}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    /// Solution for `Solved`, partial sum for `SeriesTruncated`.
    pub witness: Option<Polynomial>,
    pub certificate: Certificate,
}

/// Order in which unknowns are presented to the eliminator. Changing it changes
/// which variables end up free, hence which particular solution is returned.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum ColumnOrder {
    #[default]
    Standard,
    Reversed,
}

fn solve_in_order(m: &ExactMatrix, b: &[Rational], order: ColumnOrder) -> Result<Option<Vec<Rational>>> {
    match order {
        ColumnOrder::Standard => linalg::solve(m, b),
        ColumnOrder::Reversed => {
            let n = m.cols();
            let perm: Vec<usize> = (0..n).rev().collect();
            Ok(linalg::solve(&m.permute_columns(&perm), b)?.map(|mut x| {
                x.reverse();
                x
            }))
        }
    }
}

/// Solves `L(ψq) = f` over `q ∈ P^{≤bound}`.
///
/// A failure is upgraded to `GloballyInfeasible` only if some hint point is a
/// zero of `ψ` of multiplicity ≥ 3 at which `f` does not vanish.
pub fn truncated_image_solve(
    prob: &FischerProblem,
    f: &Polynomial,
    bound: u32,
    hints: &[Vec<Rational>],
) -> Result<SolveOutcome> {
    truncated_image_solve_with(prob, f, bound, hints, ColumnOrder::Standard)
}

pub fn truncated_image_solve_with(
    prob: &FischerProblem,
    f: &Polynomial,
    bound: u32,
    hints: &[Vec<Rational>],
    order: ColumnOrder,
) -> Result<SolveOutcome> {
    if f.dim() != prob.dim() {
        return Err(Error::DimensionMismatch {
            expected: prob.dim(),
            found: f.dim(),
        });
    }
    for h in hints {
        if h.len() != prob.dim() {
            return Err(Error::DimensionMismatch {
                expected: prob.dim(),
                found: h.len(),
            });
        }
    }
    let map = truncated_map(prob, bound, f.degree().unwrap_or(0))?;
    let rhs = map.codomain.to_coords(f)?;
    if let Some(x) = solve_in_order(&map.matrix, &rhs, order)? {
        let q = map.domain.from_coords(&x)?;
        if prob.apply(&q)? != *f {
            return Err(Error::VerificationFailed(format!(
                "truncated solve returned q = {q} with L(ψq) ≠ {f}"
            )));
        }
        return Ok(SolveOutcome {
            status: SolveStatus::Solved,
            witness: Some(q),
            certificate: Certificate::ExactCheck { bound },
        });
    }
    for point in hints {
        let multiplicity = prob.psi.multiplicity_at(point)?;
        let target_value = f.evaluate(point)?;
        if multiplicity.at_least(3) && !target_value.is_zero() {
            return Ok(SolveOutcome {
                status: SolveStatus::GloballyInfeasible,
                witness: None,
                certificate: Certificate::HighMultiplicityZero {
                    point: point.clone(),
                    multiplicity,
                    target_value,
                },
            });
        }
    }
    Ok(SolveOutcome {
        status: SolveStatus::InfeasibleAtBound,
        witness: None,
        certificate: Certificate::BoundExhausted {
            bound,
            rank: linalg::rank(&map.matrix),
            columns: map.domain.len(),
        },
    })
}

/// Basis of `{q ∈ P^{≤bound} : L(ψq) = 0}`.
pub fn kernel_up_to(prob: &FischerProblem, bound: u32) -> Result<Vec<Polynomial>> {
    let map = truncated_map(prob, bound, 0)?;
    linalg::nullspace_basis(&map.matrix)
        .iter()
        .map(|v| map.domain.from_coords(v))
        .collect()
}

/// `dim(F_ψ(P^{≤bound}) ∩ P^{≤n})`, computed as
/// `rank A + dim P^{≤n} − rank [A | E_n]` with `E_n` the inclusion of `P^{≤n}`.
pub fn image_coverage(prob: &FischerProblem, bound: u32, n: u32) -> Result<usize> {
    let map = truncated_map(prob, bound, n)?;
    let small = GradedBasis::new(prob.dim(), DegreeSpec::UpTo(n));
    let mut columns: Vec<Vec<Rational>> = (0..map.matrix.cols()).map(|j| map.matrix.column(j)).collect();
    for m in small.monomials() {
        let e = Polynomial::monomial(prob.dim(), m.clone(), Rational::one());
        columns.push(map.codomain.to_coords(&e)?);
    }
    let joined = ExactMatrix::from_columns(map.codomain.len(), &columns);
    Ok(linalg::rank(&map.matrix) + small.len() - linalg::rank(&joined))
}

/// `f = ψ·q + h` with `L(h) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct FischerDecomposition {
    pub q: Polynomial,
    pub h: Polynomial,
}

/// Fischer decomposition with `deg q ≤ bound`, found by solving
/// `L(ψq) = L(f)`. `None` means no such `q` exists below the bound.
pub fn fischer_decompose(
    prob: &FischerProblem,
    f: &Polynomial,
    bound: u32,
) -> Result<Option<FischerDecomposition>> {
    fischer_decompose_with(prob, f, bound, ColumnOrder::Standard)
}

pub fn fischer_decompose_with(
    prob: &FischerProblem,
    f: &Polynomial,
    bound: u32,
    order: ColumnOrder,
) -> Result<Option<FischerDecomposition>> {
    let target = prob.op.apply(f)?;
    let outcome = truncated_image_solve_with(prob, &target, bound, &[], order)?;
    let Some(q) = outcome.witness else {
        return Ok(None);
    };
    let h = f.checked_sub(&prob.psi.checked_mul(&q)?)?;
    if !prob.op.apply(&h)?.is_zero() {
        return Err(Error::VerificationFailed(format!(
            "decomposition remainder {h} is not harmonic"
        )));
    }
    Ok(Some(FischerDecomposition { q, h }))
}

/// Solves `L(ψq) = f` one homogeneous degree at a time for `ψ` vanishing to
/// order exactly 2 at the origin:
///
/// `q_n = G_n⁻¹ (f_n − Σ_{k≥3} L(ψ_k q_{n+2−k}))`, with `G_n` the graded block
/// of the quadratic initial part `ψ₂`.
///
/// Each correction reads only the previous `deg ψ − 2` pieces, so once that
/// many consecutive pieces past `deg f` vanish, every later piece does too and
/// the series is an exact polynomial.
pub fn graded_recursive_solve(prob: &FischerProblem, f: &Polynomial, cutoff: u32) -> Result<SolveOutcome> {
    if f.dim() != prob.dim() {
        return Err(Error::DimensionMismatch {
            expected: prob.dim(),
            found: f.dim(),
        });
    }
    let origin = vec![Rational::zero(); prob.dim()];
    let mult = prob.psi.multiplicity_at(&origin)?;
    if mult != Multiplicity::Finite(2) {
        return Err(Error::WrongMultiplicity {
            found: mult.to_string(),
        });
    }
    let parts = prob.psi.homogeneous_components()?;
    let psi2 = &parts[&2];
    let top = prob.degree();
    let window = top - 2;
    let f_deg = f.degree().unwrap_or(0);

    let mut pieces: Vec<Polynomial> = Vec::new();
    for n in 0..=cutoff {
        let mut rhs = f.component(n);
        for (&k, psi_k) in parts.range(3..) {
            let Some(j) = (n + 2).checked_sub(k) else { continue };
            let qj = &pieces[j as usize];
            if !qj.is_zero() {
                rhs = rhs.checked_sub(&prob.op.apply(&psi_k.checked_mul(qj)?)?)?;
            }
        }
        let map = graded_fischer_matrix(psi2, &prob.op, n)?;
        let coords = map.codomain.to_coords(&rhs)?;
        let entry_rank = linalg::rank(&map.matrix);
        if entry_rank < map.domain.len() {
            let v = &linalg::nullspace_basis(&map.matrix)[0];
            return Err(Error::SingularGradedMatrix {
                degree: n,
                kernel: map.domain.from_coords(v)?.to_string(),
            });
        }
        let x = linalg::solve(&map.matrix, &coords)?
            .expect("invertible square block always solves");
        pieces.push(map.domain.from_coords(&x)?);

        let done = if window == 0 {
            n >= f_deg
        } else {
            n >= f_deg + window
                && pieces[(n + 1 - window) as usize..=n as usize]
                    .iter()
                    .all(Polynomial::is_zero)
        };
        if done {
            let q = sum(prob.dim(), &pieces);
            if prob.apply(&q)? != *f {
                return Err(Error::VerificationFailed(format!(
                    "graded recursion produced q = {q} with L(ψq) ≠ {f}"
                )));
            }
            return Ok(SolveOutcome {
                status: SolveStatus::Solved,
                witness: Some(q),
                certificate: Certificate::SeriesTerminated {
                    last_degree: n,
                    window,
                },
            });
        }
    }
    Ok(SolveOutcome {
        status: SolveStatus::SeriesTruncated,
        witness: Some(sum(prob.dim(), &pieces)),
        certificate: Certificate::SeriesCutoff { cutoff },
    })
}

fn sum(dim: usize, ps: &[Polynomial]) -> Polynomial {
    ps.iter().fold(Polynomial::zero(dim), |acc, p| &acc + p)
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum ObstructionRule {
    /// At least three nonconstant factors, two of which share a zero.
    ThreeFactorsCommonZero,
    /// At least two factors, one of which vanishes to order ≥ 2 somewhere.
    TwoFactorMult2,
    /// The product vanishes to order ≥ 3 somewhere: constants are not in the image.
    MultiplicityGe3,
    /// No rule applied. Not a surjectivity certificate.
    NoneFound,
}

impl ObstructionRule {
    pub fn as_str(self) -> &'static str {
        match self {
            ObstructionRule::ThreeFactorsCommonZero => "THREE_FACTORS_COMMON_ZERO",
            ObstructionRule::TwoFactorMult2 => "TWO_FACTOR_MULT2",
            ObstructionRule::MultiplicityGe3 => "MULTIPLICITY_GE_3",
            ObstructionRule::NoneFound => "NONE_FOUND",
        }
    }

    fn conclusion(self) -> &'static str {
        match self {
            ObstructionRule::ThreeFactorsCommonZero => {
                "F_ψ is not surjective: ψ has at least three nonconstant factors and two of them share a zero"
            }
            ObstructionRule::TwoFactorMult2 => {
                "F_ψ is not surjective: ψ = ψ1·ψ2 with both factors nonconstant and ψ1 vanishing to order ≥ 2"
            }
            ObstructionRule::MultiplicityGe3 => {
                "F_ψ is not surjective: ψ vanishes to order ≥ 3, so no function nonzero there (e.g. 1) is in the image"
            }
            ObstructionRule::NoneFound => {
                "no structural obstruction found; this is not evidence of surjectivity"
            }
        }
    }
}

impl fmt::Display for ObstructionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ObstructionWitness {
    pub point: Vec<Rational>,
    /// Factors involved: the factors vanishing at `point`, or for
    /// [`ObstructionRule::TwoFactorMult2`] the single high-multiplicity factor.
    pub factor_indices: Vec<usize>,
    /// Multiplicity of the involved factors' product at `point`.
    pub multiplicity: Multiplicity,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ObstructionVerdict {
    pub rule: ObstructionRule,
    pub witnesses: Vec<ObstructionWitness>,
    /// Every rule that fired, in priority order; `rule` is the first.
    pub fired: Vec<ObstructionRule>,
    pub conclusion: String,
}

impl ObstructionVerdict {
    /// Re-checks every witness against `factors` by exact evaluation.
    pub fn verify(&self, factors: &[Polynomial]) -> Result<()> {
        let fail = |msg: String| Err(Error::VerificationFailed(msg));
        if self.rule != ObstructionRule::NoneFound && self.witnesses.is_empty() {
            return fail(format!("{} verdict without witnesses", self.rule));
        }
        for w in &self.witnesses {
            let mut product = Polynomial::one(factors[0].dim());
            for &i in &w.factor_indices {
                let Some(fi) = factors.get(i) else {
                    return fail(format!("factor index {i} out of range"));
                };
                product = &product * fi;
            }
            let m = product.multiplicity_at(&w.point)?;
            if m != w.multiplicity {
                return fail(format!(
                    "claimed multiplicity {} at {}, found {m}",
                    w.multiplicity,
                    format_point(&w.point)
                ));
            }
            let ok = match self.rule {
                ObstructionRule::ThreeFactorsCommonZero => {
                    factors.len() >= 3
                        && w.factor_indices.len() >= 2
                        && w.factor_indices
                            .iter()
                            .all(|&i| factors[i].evaluate(&w.point).is_ok_and(|v| v.is_zero()))
                }
                ObstructionRule::TwoFactorMult2 => factors.len() >= 2 && m.at_least(2),
                ObstructionRule::MultiplicityGe3 => m.at_least(3),
                ObstructionRule::NoneFound => false,
            };
            if !ok {
                return fail(format!(
                    "{} witness at {} does not check out",
                    self.rule,
                    format_point(&w.point)
                ));
            }
        }
        Ok(())
    }
}

/// Exact intersection point of two affine-linear factors, if any.
fn linear_intersection(a: &Polynomial, b: &Polynomial) -> Result<Option<Vec<Rational>>> {
    let dim = a.dim();
    let row = |p: &Polynomial| -> (Vec<Rational>, Rational) {
        let lin = (0..dim).map(|i| p.coeff(&Monomial::var(dim, i))).collect();
        (lin, -p.coeff(&Monomial::one(dim)))
    };
    let (ra, ca) = row(a);
    let (rb, cb) = row(b);
    let m = ExactMatrix::from_rows(vec![ra, rb])?;
    linalg::solve(&m, &[ca, cb])
}

/// Structural non-surjectivity rules applied to `ψ = Π factors`.
///
/// Candidate points are the caller's hints plus, for affine-linear factors,
/// their pairwise intersections. A hint that is not a zero of any factor is an
/// error. `NoneFound` makes no claim about surjectivity.
pub fn structural_obstruction(factors: &[Polynomial], hints: &[Vec<Rational>]) -> Result<ObstructionVerdict> {
    let Some(first) = factors.first() else {
        return Err(Error::InvalidInput("no factors given".into()));
    };
    let dim = first.dim();
    for f in factors {
        if f.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: f.dim(),
            });
        }
        if f.is_constant() {
            return Err(Error::InvalidInput(format!("factor {f} is constant")));
        }
    }
    let mut points: Vec<Vec<Rational>> = Vec::new();
    for h in hints {
        if h.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: h.len(),
            });
        }
        let vanishes = factors
            .iter()
            .map(|f| f.evaluate(h).map(|v| v.is_zero()))
            .collect::<Result<Vec<_>>>()?;
        if !vanishes.iter().any(|&z| z) {
            return Err(Error::HintNotAZero {
                point: format_point(h),
            });
        }
        if !points.contains(h) {
            points.push(h.clone());
        }
    }
    for i in 0..factors.len() {
        for j in i + 1..factors.len() {
            if factors[i].degree() != Some(1) || factors[j].degree() != Some(1) {
                continue;
            }
            if let Some(p) = linear_intersection(&factors[i], &factors[j])? {
                if !points.contains(&p) {
                    points.push(p);
                }
            }
        }
    }

    let mut by_rule: BTreeMap<ObstructionRule, Vec<ObstructionWitness>> = BTreeMap::new();
    for point in &points {
        let mults: Vec<Multiplicity> = factors
            .iter()
            .map(|f| f.multiplicity_at(point))
            .collect::<Result<_>>()?;
        let zeros: Vec<usize> = (0..factors.len())
            .filter(|&i| mults[i].at_least(1))
            .collect();
        let total = zeros.iter().fold(Multiplicity::Finite(0), |acc, &i| match (acc, mults[i]) {
            (Multiplicity::Finite(a), Multiplicity::Finite(b)) => Multiplicity::Finite(a + b),
            _ => Multiplicity::Infinite,
        });
        if factors.len() >= 3 && zeros.len() >= 2 {
            by_rule
                .entry(ObstructionRule::ThreeFactorsCommonZero)
                .or_default()
                .push(ObstructionWitness {
                    point: point.clone(),
                    factor_indices: zeros.clone(),
                    multiplicity: total,
                });
        }
        if factors.len() >= 2 {
            for &i in &zeros {
                if mults[i].at_least(2) {
                    by_rule
                        .entry(ObstructionRule::TwoFactorMult2)
                        .or_default()
                        .push(ObstructionWitness {
                            point: point.clone(),
                            factor_indices: vec![i],
                            multiplicity: mults[i],
                        });
                }
            }
        }
        if total.at_least(3) {
            by_rule
                .entry(ObstructionRule::MultiplicityGe3)
                .or_default()
                .push(ObstructionWitness {
                    point: point.clone(),
                    factor_indices: zeros.clone(),
                    multiplicity: total,
                });
        }
    }
    let fired: Vec<ObstructionRule> = by_rule.keys().copied().collect();
    let (rule, witnesses) = by_rule
        .into_iter()
        .next()
        .unwrap_or((ObstructionRule::NoneFound, Vec::new()));
    let verdict = ObstructionVerdict {
        rule,
        witnesses,
        fired,
        conclusion: rule.conclusion().to_string(),
    };
    verdict.verify(factors)?;
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use crate::text::parse_polynomial;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, Some(2)).unwrap()
    }

    fn lap(s: &str) -> FischerProblem {
        FischerProblem::laplacian(p(s)).unwrap()
    }

    fn sheared() -> QuadraticOperator {
        QuadraticOperator::diagonal(vec![int(1), frac(1, 3)])
    }

    fn origin() -> Vec<Rational> {
        vec![int(0), int(0)]
    }

    #[test]
    fn problem_validation() {
        assert!(FischerProblem::laplacian(p("3")).is_err());
        assert!(FischerProblem::laplacian(Polynomial::zero(2)).is_err());
        assert!(FischerProblem::new(p("x"), QuadraticOperator::laplacian(3)).is_err());
    }

    #[test]
    fn apply_examples() {
        assert_eq!(lap("x^2 + y^2").apply(&p("1")).unwrap(), p("4"));
        assert!(lap("x*y").apply(&p("1")).unwrap().is_zero());
        assert_eq!(lap("x^2*y^2").apply(&p("1")).unwrap(), p("2*x^2 + 2*y^2"));
        assert!(lap("x").apply(&Polynomial::one(3)).is_err());
    }

    #[test]
    fn graded_matrix_examples() {
        let l = QuadraticOperator::laplacian(2);
        let m = graded_fischer_matrix(&p("x^2 + y^2"), &l, 0).unwrap().matrix;
        assert_eq!(m, ExactMatrix::from_rows(vec![vec![int(4)]]).unwrap());
        let m = graded_fischer_matrix(&p("x*y"), &l, 0).unwrap().matrix;
        assert_eq!(m, ExactMatrix::from_rows(vec![vec![int(0)]]).unwrap());
        let m = graded_fischer_matrix(&p("x^2 + y^2"), &l, 1).unwrap().matrix;
        assert_eq!(
            m,
            ExactMatrix::from_rows(vec![vec![int(8), int(0)], vec![int(0), int(8)]]).unwrap()
        );
        // cubic ψ_k: 2 columns into 3 rows
        let m = graded_fischer_matrix(&p("x^3"), &l, 1).unwrap().matrix;
        assert_eq!((m.rows(), m.cols()), (3, 2));
        assert_eq!(
            graded_fischer_matrix(&p("x^2 + y"), &l, 1).unwrap_err(),
            Error::NotHomogeneous
        );
        assert!(graded_fischer_matrix(&p("x"), &l, 1).is_err());
    }

    #[test]
    fn bijectivity_table_examples() {
        let l = QuadraticOperator::laplacian(2);
        let t = graded_bijectivity_table(&p("x^2 + y^2"), &l, 10).unwrap();
        assert_eq!(t.len(), 11);
        assert!(t.iter().all(GradedEntry::is_invertible));

        let t = graded_bijectivity_table(&p("x*y"), &l, 3).unwrap();
        assert_eq!(t[0].kernel, Some(p("1")));

        let t = graded_bijectivity_table(&p("x*(x + y)"), &l, 3).unwrap();
        assert!(t[0].is_invertible() && t[1].is_invertible());
        assert_eq!(t[2].kernel, Some(p("y^2 - x*y")));
        assert!(graded_bijectivity_table(&p("x^3"), &l, 2).is_err());
    }

    #[test]
    fn truncated_solve_examples() {
        let out = truncated_image_solve(&lap("x^2 + y^2 - 1"), &p("1"), 0, &[]).unwrap();
        assert_eq!(out.status, SolveStatus::Solved);
        assert_eq!(out.witness, Some(p("1/4")));

        let cubic = lap("x*(x^2 + y^2)");
        let out = truncated_image_solve(&cubic, &p("1"), 3, &[origin()]).unwrap();
        assert_eq!(out.status, SolveStatus::GloballyInfeasible);
        assert!(matches!(
            out.certificate,
            Certificate::HighMultiplicityZero { multiplicity: Multiplicity::Finite(3), .. }
        ));
        let out = truncated_image_solve(&cubic, &p("1"), 3, &[]).unwrap();
        assert_eq!(out.status, SolveStatus::InfeasibleAtBound);

        let tri = FischerProblem::new(p("x*y - y^2 - x^2*y + y^3"), sheared()).unwrap();
        let out = truncated_image_solve(&tri, &p("1"), 0, &[]).unwrap();
        assert_eq!(out.status, SolveStatus::Solved);
        assert_eq!(out.witness, Some(p("-3/2")));
    }

    #[test]
    fn hint_without_high_multiplicity_does_not_upgrade() {
        // xy vanishes to order 2 at the origin only.
        let out = truncated_image_solve(&lap("x*y"), &p("x^7"), 1, &[origin()]).unwrap();
        assert_eq!(out.status, SolveStatus::InfeasibleAtBound);
    }

    #[test]
    fn coverage_examples() {
        let circle = FischerProblem::laplacian(p("x^2 + y^2 - 1")).unwrap();
        for m in 0..4 {
            assert_eq!(image_coverage(&circle, m, m).unwrap(), (m as usize + 1) * (m as usize + 2) / 2);
        }
        let cubic = FischerProblem::laplacian(p("x*(x^2 + y^2)")).unwrap();
        // L(ψ) = 8x: the constants are missed, x is hit
        assert_eq!(image_coverage(&cubic, 0, 0).unwrap(), 0);
        assert_eq!(image_coverage(&cubic, 0, 1).unwrap(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_up_to(&lap("x*y"), 0).unwrap(), vec![p("1")]);
        assert!(kernel_up_to(&lap("x^2 + y^2"), 4).unwrap().is_empty());
        let prob = FischerProblem::new(p("y*(x - y)"), sheared()).unwrap();
        assert_eq!(kernel_up_to(&prob, 1).unwrap(), vec![p("x + y")]);
    }

    #[test]
    fn decomposition_examples() {
        let d = fischer_decompose(&lap("x^2 + y^2 - 1"), &p("x^2"), 2).unwrap().unwrap();
        assert_eq!(d.q, p("1/2"));
        assert_eq!(d.h, p("1/2*x^2 - 1/2*y^2 + 1/2"));

        let d = fischer_decompose(&lap("x*y*(1 - x - y)"), &p("x^3 - 3*x*y^2"), 3)
            .unwrap()
            .unwrap();
        assert!(d.q.is_zero());
        assert_eq!(d.h, p("x^3 - 3*x*y^2"));

        let d = fischer_decompose(&lap("1/4*x^2 + y^2 - 1"), &p("x^2"), 2).unwrap().unwrap();
        assert_eq!(d.q, p("4/5"));
        assert_eq!(d.h, p("4/5*x^2 - 4/5*y^2 + 4/5"));
    }

    #[test]
    fn recursive_solve_examples() {
        let out = graded_recursive_solve(&lap("x^2 + y^2"), &p("1"), 10).unwrap();
        assert_eq!(out.status, SolveStatus::Solved);
        assert_eq!(out.witness, Some(p("1/4")));

        let out = graded_recursive_solve(&lap("x^2 + y^2 + x^3"), &p("1"), 1).unwrap();
        assert_eq!(out.status, SolveStatus::SeriesTruncated);
        assert_eq!(out.witness, Some(p("1/4 - 3/16*x")));

        let tri = FischerProblem::new(p("y*(x - y)*(1 - x - y)"), sheared()).unwrap();
        match graded_recursive_solve(&tri, &p("1"), 6) {
            Err(Error::SingularGradedMatrix { degree, kernel }) => {
                assert_eq!(degree, 1);
                assert_eq!(kernel, "x + y");
            }
            other => panic!("expected singular block, got {other:?}"),
        }

        assert!(matches!(
            graded_recursive_solve(&lap("x^2 + y^2 + 1"), &p("1"), 3),
            Err(Error::WrongMultiplicity { .. })
        ));
        assert!(matches!(
            graded_recursive_solve(&lap("x*(x^2 + y^2)"), &p("1"), 3),
            Err(Error::WrongMultiplicity { .. })
        ));
    }

    #[test]
    fn recursion_terminates_on_polynomial_solutions() {
        // f = L(ψq) for a known q; every graded block of x² + y² is invertible,
        // so the recursion must recover q and stop.
        let prob = lap("(x^2 + y^2)*(1 + x)");
        let q = p("1 - 2*x + x*y");
        let f = prob.apply(&q).unwrap();
        let out = graded_recursive_solve(&prob, &f, 20).unwrap();
        assert_eq!(out.status, SolveStatus::Solved);
        assert_eq!(out.witness, Some(q));
    }

    #[test]
    fn obstruction_examples() {
        let tri = [p("x"), p("y"), p("1 - x - y")];
        let v = structural_obstruction(&tri, &[]).unwrap();
        assert_eq!(v.rule, ObstructionRule::ThreeFactorsCommonZero);
        let pts: Vec<Vec<Rational>> = v.witnesses.iter().map(|w| w.point.clone()).collect();
        assert!(pts.contains(&origin()));
        assert!(pts.contains(&vec![int(1), int(0)]));
        assert!(pts.contains(&vec![int(0), int(1)]));

        let v = structural_obstruction(&[p("x^2"), p("y + 1")], &[origin()]).unwrap();
        assert_eq!(v.rule, ObstructionRule::TwoFactorMult2);
        assert_eq!(v.witnesses[0].factor_indices, vec![0]);

        let v = structural_obstruction(&[p("x^2 + y^2 - 1")], &[vec![int(1), int(0)]]).unwrap();
        assert_eq!(v.rule, ObstructionRule::NoneFound);
        assert!(v.witnesses.is_empty());

        let v = structural_obstruction(&[p("x*(x^2 + y^2)")], &[origin()]).unwrap();
        assert_eq!(v.rule, ObstructionRule::MultiplicityGe3);

        assert!(matches!(
            structural_obstruction(&[p("x"), p("y")], &[vec![int(1), int(1)]]),
            Err(Error::HintNotAZero { .. })
        ));
        assert!(structural_obstruction(&[p("x"), p("2")], &[]).is_err());
        assert!(structural_obstruction(&[], &[]).is_err());
    }

    #[test]
    fn parallel_lines_have_no_intersection() {
        let v = structural_obstruction(&[p("x"), p("x - 1"), p("x - 2")], &[]).unwrap();
        assert_eq!(v.rule, ObstructionRule::NoneFound);
    }

    #[test]
    fn verdict_verification_rejects_tampering() {
        let tri = [p("x"), p("y"), p("1 - x - y")];
        let mut v = structural_obstruction(&tri, &[]).unwrap();
        v.witnesses[0].point = vec![int(5), int(5)];
        assert!(v.verify(&tri).is_err());
    }

    #[test]
    fn translated_problem_examples() {
        let prob = FischerProblem::laplacian(parse_polynomial("(x - 1)^2", None).unwrap()).unwrap();
        let moved = translated_problem(&prob, &[int(-1)]).unwrap();
        assert_eq!(moved.psi(), &parse_polynomial("x^2", None).unwrap());
        assert_eq!(prob.recentred(&[int(1)]).unwrap(), moved);
        assert_eq!(translated_problem(&prob, &[int(0)]).unwrap(), prob);

        let tri = lap("x*y*(1 - x - y)");
        let at_vertex = tri.recentred(&[int(1), int(0)]).unwrap();
        // edges through (1,0): y and 1 − x − y; x is 1 there
        assert_eq!(at_vertex.psi().initial_part().unwrap(), p("-x*y - y^2"));
    }
}
