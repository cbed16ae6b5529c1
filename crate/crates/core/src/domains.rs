//! Domain-level applications: quadrics and ellipsoids, polygons, and the
//! triangle identity `L(ψ) = const`.
//!
//! Domains exist here only through their defining polynomial `ψ` (and, for
//! polygons, their vertices).
//!
//! An equilateral triangle has no rational embedding. Its rational model is
//! the sheared triangle `(0,0), (1,0), (1/2,1/2)` paired with the operator
//! `∂x² + (1/3)∂y²`, which is the Laplacian pushed forward along
//! `(x, y) ↦ (x, y/√3)`.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fischer::{
    fischer_decompose_with, kernel_up_to, structural_obstruction, ColumnOrder, FischerProblem,
    ObstructionVerdict,
};
use crate::linalg::{self, ExactMatrix};
use crate::poly::{Monomial, Multiplicity, Polynomial, QuadraticOperator};
use crate::rational::{format_point, frac, int, Rational};

/// `ψ(x) = xᵀAx + bᵀx + c` with `A` symmetric.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadricSpec {
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    c: Rational,
}

impl QuadricSpec {
    pub fn new(a: Vec<Vec<Rational>>, b: Vec<Rational>, c: Rational) -> Result<Self> {
        let d = a.len();
        if d == 0 || b.len() != d || a.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidQuadric("inconsistent shapes".into()));
        }
        for i in 0..d {
            for j in 0..i {
                if a[i][j] != a[j][i] {
                    return Err(Error::InvalidQuadric(format!("A is not symmetric at ({i}, {j})")));
                }
            }
        }
        let spec = QuadricSpec { a, b, c };
        if spec.psi().is_constant() {
            return Err(Error::InvalidQuadric("ψ is constant".into()));
        }
        Ok(spec)
    }

    /// Reads `A`, `b`, `c` off a polynomial of degree ≤ 2.
    pub fn from_polynomial(p: &Polynomial) -> Result<Self> {
        let d = p.dim();
        if p.degree().is_none_or(|k| k > 2) {
            return Err(Error::InvalidQuadric(format!("{p} is not of degree ≤ 2")));
        }
        let mut a = vec![vec![Rational::zero(); d]; d];
        let mut b = vec![Rational::zero(); d];
        for (m, coef) in p.terms() {
            let e = m.exponents();
            let vars: Vec<usize> = (0..d).filter(|&i| e[i] > 0).collect();
            match (m.degree(), vars.as_slice()) {
                (1, [i]) => b[*i] = coef.clone(),
                (2, [i]) => a[*i][*i] = coef.clone(),
                (2, [i, j]) => {
                    a[*i][*j] = coef / int(2);
                    a[*j][*i] = coef / int(2);
                }
                _ => {}
            }
        }
        let c = p.coeff(&Monomial::one(d));
        Self::new(a, b, c)
    }

    /// `Σ x_i²/a_i² − 1`.
    pub fn ellipsoid(semiaxes: &[Rational]) -> Result<Self> {
        if semiaxes.is_empty() {
            return Err(Error::InvalidQuadric("no semiaxes".into()));
        }
        if let Some(bad) = semiaxes.iter().find(|s| !s.is_positive()) {
            return Err(Error::InvalidQuadric(format!(
                "semiaxis {bad} is not positive"
            )));
        }
        let d = semiaxes.len();
        let mut a = vec![vec![Rational::zero(); d]; d];
        for (i, s) in semiaxes.iter().enumerate() {
            a[i][i] = (s * s).recip();
        }
        Self::new(a, vec![Rational::zero(); d], -Rational::one())
    }

    pub fn dim(&self) -> usize {
        self.b.len()
    }

    pub fn psi(&self) -> Polynomial {
        let d = self.dim();
        let mut terms = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let mut e = vec![0; d];
                e[i] += 1;
                e[j] += 1;
                terms.push((e, self.a[i][j].clone()));
            }
            let mut e = vec![0; d];
            e[i] = 1;
            terms.push((e, self.b[i].clone()));
        }
        terms.push((vec![0; d], self.c.clone()));
        Polynomial::from_terms(d, terms).expect("consistent dimensions")
    }

    /// Checks `A ≻ 0` and that `{ψ < 0}` is nonempty (ψ is negative at its minimum).
    pub fn validate_for_dirichlet(&self) -> Result<()> {
        if !linalg::is_positive_definite(&self.a) {
            return Err(Error::InvalidQuadric("A is not positive definite".into()));
        }
        let m = ExactMatrix::from_rows(self.a.clone())?;
        let rhs: Vec<Rational> = self.b.iter().map(|v| -v / int(2)).collect();
        let centre = linalg::solve(&m, &rhs)?.expect("positive definite A is invertible");
        let min = self.psi().evaluate(&centre)?;
        if !min.is_negative() {
            return Err(Error::InvalidQuadric(format!(
                "ψ ≥ 0 everywhere (minimum {min} at {}), so the domain is empty",
                format_point(&centre)
            )));
        }
        Ok(())
    }
}

/// Harmonic extension of polynomial data: `f = ψ·q + h`, `L(h) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct DirichletSolution {
    pub h: Polynomial,
    pub q: Polynomial,
}

/// Solves the Dirichlet problem on `{ψ < 0}` for polynomial data `f`. The
/// witness degree bound is `deg f`.
pub fn dirichlet_solve_quadric(
    spec: &QuadricSpec,
    f: &Polynomial,
    op: &QuadraticOperator,
) -> Result<DirichletSolution> {
    dirichlet_solve_quadric_with(spec, f, op, ColumnOrder::Standard)
}

pub fn dirichlet_solve_quadric_with(
    spec: &QuadricSpec,
    f: &Polynomial,
    op: &QuadraticOperator,
    order: ColumnOrder,
) -> Result<DirichletSolution> {
    spec.validate_for_dirichlet()?;
    if !op.is_positive_definite() {
        return Err(Error::InvalidOperator("operator is not elliptic (positive definite)".into()));
    }
    let psi = spec.psi();
    let prob = FischerProblem::new(psi.clone(), op.clone())?;
    let bound = f.degree().unwrap_or(0);
    let Some(dec) = fischer_decompose_with(&prob, f, bound, order)? else {
        return Err(Error::DecompositionInfeasible { bound });
    };
    let diff = f.checked_sub(&dec.h)?;
    match diff.exact_divide(&psi)? {
        Some(q) if q == dec.q => Ok(DirichletSolution { h: dec.h, q }),
        _ => Err(Error::VerificationFailed(format!(
            "f − h = {diff} is not ψ·q for q = {}",
            dec.q
        ))),
    }
}

pub type Point2 = [Rational; 2];

fn cross(o: &Point2, a: &Point2, b: &Point2) -> Rational {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

fn on_segment(p: &Point2, a: &Point2, b: &Point2) -> bool {
    let within = |i: usize| {
        let (lo, hi) = if a[i] <= b[i] { (&a[i], &b[i]) } else { (&b[i], &a[i]) };
        lo <= &p[i] && &p[i] <= hi
    };
    cross(a, b, p).is_zero() && within(0) && within(1)
}

/// Closed segments `ab` and `cd` share a point.
fn segments_meet(a: &Point2, b: &Point2, c: &Point2, d: &Point2) -> bool {
    let d1 = cross(c, d, a).signum();
    let d2 = cross(c, d, b).signum();
    let d3 = cross(a, b, c).signum();
    let d4 = cross(a, b, d).signum();
    if d1 * &d2 < Rational::zero() && d3 * &d4 < Rational::zero() {
        return true;
    }
    on_segment(a, c, d) || on_segment(b, c, d) || on_segment(c, a, b) || on_segment(d, a, b)
}

/// Simple counterclockwise polygon with rational vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct PolygonSpec {
    vertices: Vec<Point2>,
}

impl PolygonSpec {
    pub fn new(vertices: Vec<Point2>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::DegeneratePolygon(format!("{n} vertices, need at least 3")));
        }
        for i in 0..n {
            let (a, b, c) = (&vertices[i], &vertices[(i + 1) % n], &vertices[(i + 2) % n]);
            if a == b {
                return Err(Error::DegeneratePolygon(format!("vertex {} repeats", (i + 1) % n)));
            }
            if cross(a, b, c).is_zero() {
                return Err(Error::DegeneratePolygon(format!(
                    "vertices {i}, {}, {} are collinear",
                    (i + 1) % n,
                    (i + 2) % n
                )));
            }
        }
        for i in 0..n {
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (a, b) = (&vertices[i], &vertices[(i + 1) % n]);
                let (c, d) = (&vertices[j], &vertices[(j + 1) % n]);
                if segments_meet(a, b, c, d) {
                    return Err(Error::DegeneratePolygon(format!(
                        "edges {i} and {j} intersect"
                    )));
                }
            }
        }
        let twice_area: Rational = (0..n)
            .map(|i| {
                let (a, b) = (&vertices[i], &vertices[(i + 1) % n]);
                &a[0] * &b[1] - &b[0] * &a[1]
            })
            .sum();
        if !twice_area.is_positive() {
            return Err(Error::DegeneratePolygon(
                "vertices must be listed counterclockwise".into(),
            ));
        }
        Ok(PolygonSpec { vertices })
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Right triangle `(0,0), (1,0), (0,1)`.
    pub fn unit_right_triangle() -> Self {
        Self::new(vec![[int(0), int(0)], [int(1), int(0)], [int(0), int(1)]]).expect("valid")
    }

    /// Rational model of the equilateral triangle and its transported Laplacian.
    pub fn sheared_equilateral() -> (Self, QuadraticOperator) {
        let spec = Self::new(vec![
            [int(0), int(0)],
            [int(1), int(0)],
            [frac(1, 2), frac(1, 2)],
        ])
        .expect("valid");
        (spec, QuadraticOperator::diagonal(vec![int(1), frac(1, 3)]))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolygonVertex {
    pub point: Point2,
    /// Indices of the incoming and outgoing edge.
    pub edges: (usize, usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolygonPsi {
    /// Edge `k` joins vertex `k` to vertex `k+1`; positive inside.
    pub edges: Vec<Polynomial>,
    pub psi: Polynomial,
    pub vertices: Vec<PolygonVertex>,
}

/// Edge forms, their product, and vertex/edge incidence.
pub fn polygon_psi(spec: &PolygonSpec) -> PolygonPsi {
    let n = spec.len();
    let vs = &spec.vertices;
    let edges: Vec<Polynomial> = (0..n)
        .map(|k| {
            let (v, w) = (&vs[k], &vs[(k + 1) % n]);
            let ex = &w[0] - &v[0];
            let ey = &w[1] - &v[1];
            // ex·(y − vy) − ey·(x − vx) is positive to the left of v → w.
            let cx = -ey.clone();
            let cy = ex.clone();
            let c0 = &ey * &v[0] - &ex * &v[1];
            let lead = if cx.is_zero() { cy.abs() } else { cx.abs() };
            Polynomial::from_terms(
                2,
                [
                    (vec![1, 0], cx / &lead),
                    (vec![0, 1], cy / &lead),
                    (vec![0, 0], c0 / &lead),
                ],
            )
            .expect("dimension 2")
        })
        .collect();
    let psi = edges
        .iter()
        .fold(Polynomial::one(2), |acc, e| &acc * e);
    let vertices = (0..n)
        .map(|k| PolygonVertex {
            point: vs[k].clone(),
            edges: ((k + n - 1) % n, k),
        })
        .collect();
    PolygonPsi {
        edges,
        psi,
        vertices,
    }
}

/// Local analysis at one polygon vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexFinding {
    pub index: usize,
    pub point: Point2,
    pub edges: (usize, usize),
    /// Order of vanishing of `ψ` at the vertex.
    pub multiplicity: Multiplicity,
    /// Initial part of `ψ` re-expanded at the vertex.
    pub initial_part: Polynomial,
    pub bound: u32,
    /// Basis of `{q : deg q ≤ bound, L(initial_part·q) = 0}`.
    pub kernel: Vec<Polynomial>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VolkovResult {
    pub psi: Polynomial,
    /// `L(ψ)`.
    pub applied: Polynomial,
    /// `L(ψ)` when it is a nonzero constant `c`; then `u = ψ/c` solves
    /// `L u = 1` with `u = 0` on the boundary, i.e. `F_ψ(1/c) = 1`.
    pub constant: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DomainReport {
    pub description: String,
    pub factors: Vec<Polynomial>,
    pub psi: Polynomial,
    pub operator: QuadraticOperator,
    pub verdict: ObstructionVerdict,
    pub vertices: Vec<VertexFinding>,
    pub volkov: Option<VolkovResult>,
}

impl DomainReport {
    /// Re-derives every claim from the carried witnesses.
    pub fn verify(&self) -> Result<()> {
        let fail = |m: String| Err(Error::VerificationFailed(m));
        let product = self.factors.iter().fold(Polynomial::one(2), |a, f| &a * f);
        if product != self.psi {
            return fail("ψ differs from the product of its factors".into());
        }
        self.verdict.verify(&self.factors)?;
        for v in &self.vertices {
            for (k, &edge) in [v.edges.0, v.edges.1].iter().enumerate() {
                if !self.factors[edge].evaluate(&v.point)?.is_zero() {
                    return fail(format!("edge {edge} (side {k}) misses vertex {}", v.index));
                }
            }
            let local = self.psi.translate(&[-v.point[0].clone(), -v.point[1].clone()])?;
            if local.initial_part()? != v.initial_part {
                return fail(format!("initial part at vertex {} does not re-derive", v.index));
            }
            for q in &v.kernel {
                if q.is_zero() || !self.operator.apply(&(&v.initial_part * q))?.is_zero() {
                    return fail(format!("kernel witness {q} at vertex {} fails", v.index));
                }
            }
        }
        if let Some(vk) = &self.volkov {
            if self.operator.apply(&vk.psi)? != vk.applied {
                return fail("L(ψ) does not re-derive".into());
            }
        }
        Ok(())
    }
}

/// Per-vertex initial parts and kernels plus the structural verdict.
pub fn vertex_obstruction_report(
    spec: &PolygonSpec,
    op: &QuadraticOperator,
    bound: u32,
) -> Result<DomainReport> {
    if op.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: op.dim(),
        });
    }
    let pp = polygon_psi(spec);
    let hints: Vec<Vec<Rational>> = pp.vertices.iter().map(|v| v.point.to_vec()).collect();
    let verdict = structural_obstruction(&pp.edges, &hints)?;
    let mut vertices = Vec::with_capacity(pp.vertices.len());
    for (index, v) in pp.vertices.iter().enumerate() {
        let local = pp.psi.translate(&[-v.point[0].clone(), -v.point[1].clone()])?;
        let initial = local.initial_part()?;
        let multiplicity = Multiplicity::Finite(local.min_degree().expect("nonzero"));
        let kernel = kernel_up_to(&FischerProblem::new(initial.clone(), op.clone())?, bound)?;
        vertices.push(VertexFinding {
            index,
            point: v.point.clone(),
            edges: v.edges,
            multiplicity,
            initial_part: initial,
            bound,
            kernel,
        });
    }
    let volkov = if spec.len() == 3 {
        Some(volkov_check(spec, op)?)
    } else {
        None
    };
    let report = DomainReport {
        description: format!(
            "polygon with {} vertices {}",
            spec.len(),
            spec.vertices
                .iter()
                .map(|p| format_point(p))
                .collect::<Vec<_>>()
                .join(" ")
        ),
        factors: pp.edges,
        psi: pp.psi,
        operator: op.clone(),
        verdict,
        vertices,
        volkov,
    };
    report.verify()?;
    Ok(report)
}

/// `L(ℓ₁ℓ₂ℓ₃)` for a triangle, with the constant extracted when it is one.
pub fn volkov_check(spec: &PolygonSpec, op: &QuadraticOperator) -> Result<VolkovResult> {
    if spec.len() != 3 {
        return Err(Error::InvalidInput(format!(
            "expected a triangle, got {} vertices",
            spec.len()
        )));
    }
    let psi = polygon_psi(spec).psi;
    let applied = op.apply(&psi)?;
    let constant = match applied.degree() {
        Some(0) => Some(applied.coeff(&Monomial::one(2))),
        _ => None,
    };
    Ok(VolkovResult {
        psi,
        applied,
        constant,
    })
}
