use std::time::Instant;

use fischer_core::domains::{
    dirichlet_solve_quadric, polygon_psi, vertex_obstruction_report, volkov_check, PolygonSpec,
    QuadricSpec,
};
use fischer_core::fischer::{
    fischer_decompose, graded_bijectivity_table, graded_recursive_solve, kernel_up_to,
    structural_obstruction, truncated_image_solve, truncated_map, Certificate,
};
use fischer_core::harmonic::{is_harmonic_divisor, parts_are_divisors_check, DivisorSearch};
use fischer_core::linalg;
use fischer_core::rational::{format_point, format_rational};
use fischer_core::{
    parse_polynomial, Error as CoreError, FischerProblem, Multiplicity, ObstructionVerdict,
    Polynomial, Rational, SolveOutcome,
};
use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::report::{timed, CommandResult};
use crate::scenario::Scenario;

fn certificate_json(c: &Certificate) -> Value {
    let kind = match c {
        Certificate::ExactCheck { .. } => "exact_check",
        Certificate::BoundExhausted { .. } => "bound_exhausted",
        Certificate::HighMultiplicityZero { .. } => "high_multiplicity_zero",
        Certificate::SeriesTerminated { .. } => "series_terminated",
        Certificate::SeriesCutoff { .. } => "series_cutoff",
    };
    let mut v = json!({"kind": kind, "detail": c.to_string()});
    match c {
        Certificate::HighMultiplicityZero {
            point,
            multiplicity,
            target_value,
        } => {
            v["point"] = json!(format_point(point));
            v["multiplicity"] = json!(multiplicity.to_string());
            v["target_value"] = json!(format_rational(target_value));
        }
        Certificate::BoundExhausted { bound, rank, columns } => {
            v["bound"] = json!(bound);
            v["rank"] = json!(rank);
            v["columns"] = json!(columns);
        }
        _ => {}
    }
    v
}

fn outcome_into(r: &mut CommandResult, out: &SolveOutcome) -> CliResult<()> {
    r.status(out.status.as_str());
    if let Some(q) = &out.witness {
        r.witness("q", q)?;
    }
    r.certificate(certificate_json(&out.certificate));
    Ok(())
}

fn verdict_into(r: &mut CommandResult, v: &ObstructionVerdict, factors: &[Polynomial]) {
    r.status(v.rule.as_str());
    r.certificate(json!({
        "kind": "structural_obstruction",
        "rule": v.rule.as_str(),
        "fired": v.fired.iter().map(|f| f.as_str()).collect::<Vec<_>>(),
        "conclusion": v.conclusion,
    }));
    for w in &v.witnesses {
        r.certificate(json!({
            "kind": "obstruction_witness",
            "point": format_point(&w.point),
            "factor_indices": w.factor_indices,
            "factors": w.factor_indices.iter().map(|&i| factors[i].to_string()).collect::<Vec<_>>(),
            "multiplicity": w.multiplicity.to_string(),
        }));
    }
}

fn require_dim(s: &Scenario, dim: usize, what: &str) -> CliResult<()> {
    if s.dim != dim {
        return Err(CliError::input(format!("{what} needs dim {dim}, scenario has {}", s.dim)));
    }
    Ok(())
}

pub fn analyze(s: &Scenario) -> CliResult<Vec<CommandResult>> {
    let op = s.operator()?;
    let factors = s.factors()?;
    let psi = s.psi_product()?;
    let hints = s.hint_points()?;
    let targets = s.target_polys()?;
    let prob = FischerProblem::new(psi.clone(), op)?;
    let (m, n_max, cutoff) = (s.m(), s.n_max(), s.series_cutoff());
    let dim = s.dim;

    let mut out = vec![timed(|| {
        let mut r = CommandResult::new("analyze.obstruction", "psi", dim);
        let v = structural_obstruction(&factors, &hints)?;
        verdict_into(&mut r, &v, &factors);
        r.witness("psi", &psi)?;
        Ok(r)
    })?];

    let tables: Vec<CliResult<CommandResult>> = hints
        .par_iter()
        .map(|h| timed(|| graded_table_at(&prob, h, n_max)))
        .collect();
    for t in tables {
        out.push(t?);
    }

    out.push(timed(|| {
        let mut r = CommandResult::new("analyze.kernel", format!("deg q <= {m}"), dim);
        for b in 0..=m {
            r.ranks.insert(b, linalg::rank(&truncated_map(&prob, b, 0)?.matrix));
        }
        let kernel = kernel_up_to(&prob, m)?;
        r.status(if kernel.is_empty() { "TRIVIAL_KERNEL" } else { "NONTRIVIAL_KERNEL" });
        for (i, k) in kernel.iter().enumerate() {
            r.witness(format!("kernel[{i}]"), k)?;
        }
        Ok(r)
    })?);

    let origin = vec![Rational::zero(); dim];
    let series = prob.psi().multiplicity_at(&origin)? == Multiplicity::Finite(2);
    let solves: Vec<CliResult<Vec<CommandResult>>> = targets
        .par_iter()
        .zip(&s.targets)
        .map(|(f, text)| {
            let mut rs = vec![timed(|| {
                let mut r = CommandResult::new("analyze.solve", format!("target {text}"), dim);
                outcome_into(&mut r, &truncated_image_solve(&prob, f, m, &hints)?)?;
                Ok(r)
            })?];
            if series {
                rs.push(timed(|| series_result(&prob, f, text, cutoff))?);
            }
            Ok(rs)
        })
        .collect();
    for s in solves {
        out.extend(s?);
    }
    Ok(out)
}

fn graded_table_at(prob: &FischerProblem, h: &[Rational], n_max: u32) -> CliResult<CommandResult> {
    let dim = prob.dim();
    let mut r = CommandResult::new("analyze.graded_table", format!("hint {}", format_point(h)), dim);
    let local = prob.recentred(h)?;
    let mult = local.psi().min_degree().expect("nonzero");
    if mult != 2 {
        r.status(if mult == 0 { "NOT_A_ZERO".to_string() } else { format!("MULTIPLICITY_{mult}") });
        r.certificate(json!({
            "kind": "multiplicity",
            "point": format_point(h),
            "multiplicity": mult,
            "detail": "graded tables are formed for zeros of multiplicity exactly 2",
        }));
        return Ok(r);
    }
    let psi2 = local.psi().initial_part()?;
    r.witness("initial_part", &psi2)?;
    let table = graded_bijectivity_table(&psi2, prob.operator(), n_max)?;
    let mut singular = Vec::new();
    for e in &table {
        r.ranks.insert(e.degree, e.rank);
        if let Some(k) = &e.kernel {
            singular.push(e.degree);
            r.witness(format!("kernel_degree_{}", e.degree), k)?;
        }
    }
    r.status(if singular.is_empty() { "BIJECTIVE_UP_TO_N_MAX" } else { "SINGULAR" });
    r.certificate(json!({
        "kind": "graded_table",
        "n_max": n_max,
        "sizes": table.iter().map(|e| e.size).collect::<Vec<_>>(),
        "singular_degrees": singular,
    }));
    Ok(r)
}

fn series_result(prob: &FischerProblem, f: &Polynomial, text: &str, cutoff: u32) -> CliResult<CommandResult> {
    let mut r = CommandResult::new("analyze.series", format!("target {text}"), prob.dim());
    match graded_recursive_solve(prob, f, cutoff) {
        Ok(out) => outcome_into(&mut r, &out)?,
        Err(CoreError::SingularGradedMatrix { degree, kernel }) => {
            r.status("SINGULAR_GRADED_MATRIX");
            let k = parse_polynomial(&kernel, Some(prob.dim()))
                .map_err(|e| CoreError::VerificationFailed(format!("kernel {kernel:?}: {e}")))?;
            r.witness(format!("kernel_degree_{degree}"), &k)?;
            r.certificate(json!({"kind": "singular_graded_matrix", "degree": degree}));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(r)
}

pub fn dirichlet(s: &Scenario) -> CliResult<Vec<CommandResult>> {
    let op = s.operator()?;
    let spec = match s.semiaxis_values()? {
        Some(axes) => {
            if axes.len() != s.dim {
                return Err(CliError::input(format!("{} semiaxes for dim {}", axes.len(), s.dim)));
            }
            QuadricSpec::ellipsoid(&axes)?
        }
        None => QuadricSpec::from_polynomial(&s.psi_product()?)?,
    };
    spec.validate_for_dirichlet()?;
    let psi = spec.psi();
    let targets = s.target_polys()?;
    let results: Vec<CliResult<CommandResult>> = targets
        .par_iter()
        .zip(&s.targets)
        .map(|(f, text)| {
            timed(|| {
                let mut r = CommandResult::new("dirichlet", format!("data {text}"), s.dim);
                r.witness("psi", &psi)?;
                match dirichlet_solve_quadric(&spec, f, &op) {
                    Ok(sol) => {
                        r.status("SOLVED");
                        r.witness("h", &sol.h)?;
                        r.witness("q", &sol.q)?;
                        r.certificate(json!({
                            "kind": "exact_division",
                            "detail": "L(h) = 0 and f - h = psi*q, checked by exact division",
                        }));
                    }
                    Err(CoreError::DecompositionInfeasible { bound }) => {
                        r.status("INFEASIBLE_AT_BOUND");
                        r.certificate(json!({"kind": "bound_exhausted", "bound": bound}));
                    }
                    Err(e) => return Err(e.into()),
                }
                Ok(r)
            })
        })
        .collect();
    results.into_iter().collect()
}

pub fn polygon(s: &Scenario) -> CliResult<Vec<CommandResult>> {
    require_dim(s, 2, "polygon")?;
    let op = s.operator()?;
    let spec = PolygonSpec::new(s.vertex_points()?)?;
    let m = s.m();
    let start = Instant::now();
    let report = vertex_obstruction_report(&spec, &op, m)?;
    let mut out = Vec::new();

    let mut r = CommandResult::new("polygon.obstruction", report.description.clone(), 2);
    verdict_into(&mut r, &report.verdict, &report.factors);
    for (k, e) in report.factors.iter().enumerate() {
        r.witness(format!("edge[{k}]"), e)?;
    }
    r.witness("psi", &report.psi)?;
    r.stamp(start);
    out.push(r);

    for v in &report.vertices {
        let mut r = CommandResult::new(
            "polygon.vertex",
            format!("vertex {} {}", v.index, format_point(&v.point)),
            2,
        );
        r.status(if v.kernel.is_empty() { "KERNEL_EMPTY_AT_BOUND" } else { "KERNEL_FOUND" });
        r.witness("initial_part", &v.initial_part)?;
        for (i, k) in v.kernel.iter().enumerate() {
            r.witness(format!("kernel[{i}]"), k)?;
        }
        r.certificate(json!({
            "kind": "vertex",
            "edges": [v.edges.0, v.edges.1],
            "multiplicity": v.multiplicity.to_string(),
            "bound": v.bound,
        }));
        r.stamp(start);
        out.push(r);
    }
    if report.volkov.is_some() {
        out.extend(volkov(s)?);
    }
    Ok(out)
}

pub fn volkov(s: &Scenario) -> CliResult<Vec<CommandResult>> {
    require_dim(s, 2, "volkov")?;
    let op = s.operator()?;
    let spec = PolygonSpec::new(s.vertex_points()?)?;
    let start = Instant::now();
    let pp = polygon_psi(&spec);
    let res = volkov_check(&spec, &op)?;
    let mut r = CommandResult::new("volkov", format!("operator {op}"), 2);
    r.witness("psi", &res.psi)?;
    r.witness("L(psi)", &res.applied)?;
    match &res.constant {
        Some(c) if !c.is_zero() => {
            let q = Polynomial::constant(2, c.recip());
            let prob = FischerProblem::new(pp.psi.clone(), op.clone())?;
            if prob.apply(&q)? != Polynomial::one(2) {
                return Err(CoreError::VerificationFailed("F_psi(1/c) != 1".into()).into());
            }
            r.status("CONSTANT");
            r.witness("q", &q)?;
            r.certificate(json!({
                "kind": "volkov",
                "constant": format_rational(c),
                "detail": format!("L(psi) = {}, so F_psi({}) = 1", format_rational(c), format_rational(&c.recip())),
            }));
        }
        _ => {
            r.status("NONCONSTANT");
            r.certificate(json!({"kind": "volkov", "detail": "L(psi) is not a nonzero constant"}));
        }
    }
    r.stamp(start);
    Ok(vec![r])
}

pub fn harmonic_divisor(s: &Scenario) -> CliResult<Vec<CommandResult>> {
    let op = s.operator()?;
    let targets = s.target_polys()?;
    let cert = s.nonnegativity_certificate()?;
    let m = s.m();
    targets
        .iter()
        .zip(&s.targets)
        .map(|(f, text)| {
            timed(|| {
                let mut r = CommandResult::new("harmonic-divisor", format!("f = {text}"), s.dim);
                match is_harmonic_divisor(f, m, &op, cert.as_ref())? {
                    DivisorSearch::Found(w) => {
                        r.status("FOUND");
                        r.witness("q", &w.witness)?;
                        if !parts_are_divisors_check(&w)? {
                            return Err(CoreError::VerificationFailed(format!(
                                "lowest/highest parts of f = {f}, q = {} are not divisor pairs",
                                w.witness
                            ))
                            .into());
                        }
                        r.certificate(json!({
                            "kind": "parts_check",
                            "detail": "L(f_low q_low) = 0 and L(f_top q_top) = 0",
                        }));
                    }
                    DivisorSearch::NotFoundAtBound { bound } => {
                        r.status("NOT_FOUND_AT_BOUND");
                        r.certificate(json!({"kind": "bound_exhausted", "bound": bound}));
                    }
                    DivisorSearch::Never { reason } => {
                        r.status("NEVER");
                        r.certificate(json!({"kind": "nonnegativity", "detail": reason}));
                    }
                }
                Ok(r)
            })
        })
        .collect()
}

pub fn decompose(s: &Scenario) -> CliResult<Vec<CommandResult>> {
    let op = s.operator()?;
    let prob = FischerProblem::new(s.psi_product()?, op)?;
    let targets = s.target_polys()?;
    targets
        .iter()
        .zip(&s.targets)
        .map(|(f, text)| {
            timed(|| {
                let bound = s.bounds.m.unwrap_or_else(|| f.degree().unwrap_or(0));
                let mut r = CommandResult::new("decompose", format!("f = {text}"), s.dim);
                match fischer_decompose(&prob, f, bound)? {
                    Some(d) => {
                        r.status("SOLVED");
                        r.witness("q", &d.q)?;
                        r.witness("h", &d.h)?;
                        r.certificate(json!({"kind": "exact_check", "bound": bound, "detail": "f = psi*q + h with L(h) = 0"}));
                    }
                    None => {
                        r.status("INFEASIBLE_AT_BOUND");
                        r.certificate(json!({"kind": "bound_exhausted", "bound": bound}));
                    }
                }
                Ok(r)
            })
        })
        .collect()
}
