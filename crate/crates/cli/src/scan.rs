//! Randomized evidence for the conjecture that `F_ψ` is surjective only when
//! `deg ψ ≤ 2`. Evidence only: a sample with no defect inside the bounds is
//! flagged for follow-up, never reported as a counterexample.

use fischer_core::domains::QuadricSpec;
use fischer_core::fischer::{image_coverage, kernel_up_to, truncated_map};
use fischer_core::linalg::{self, DegreeSpec, GradedBasis};
use fischer_core::rational::frac;
use fischer_core::{FischerProblem, Polynomial, QuadraticOperator, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::error::{CliError, CliResult};
use crate::report::{timed, CommandResult};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanSpec {
    pub dim: usize,
    pub degree: u32,
    pub coeff_range: i64,
    pub samples: usize,
    pub seed: u64,
    pub bound: u32,
}

impl ScanSpec {
    pub fn validate(&self) -> CliResult<()> {
        if self.degree < 3 {
            return Err(CliError::input("scan-cs needs degree >= 3"));
        }
        if self.dim == 0 || self.coeff_range < 1 {
            return Err(CliError::input("scan-cs needs dim >= 1 and coeff-range >= 1"));
        }
        Ok(())
    }
}

/// Integer coefficients in `[-r, r]`, each monomial present with probability
/// 1/2, top degree forced nonzero.
pub fn random_psi(rng: &mut ChaCha8Rng, dim: usize, degree: u32, r: i64) -> Polynomial {
    let basis = GradedBasis::new(dim, DegreeSpec::UpTo(degree));
    loop {
        let terms: Vec<(Vec<u32>, Rational)> = basis
            .monomials()
            .iter()
            .filter_map(|m| {
                let c = rng.random_range(-r..=r);
                rng.random_bool(0.5).then(|| (m.exponents().to_vec(), frac(c, 1)))
            })
            .collect();
        let p = Polynomial::from_terms(dim, terms).expect("dimension");
        if p.degree() == Some(degree) {
            return p;
        }
    }
}

fn evidence(prob: &FischerProblem, bound: u32, r: &mut CommandResult) -> CliResult<bool> {
    let mut defect = false;
    for m in 0..=bound {
        let map = truncated_map(prob, m, 0)?;
        let rank = linalg::rank(&map.matrix);
        let columns = map.domain.len();
        let coverage = image_coverage(prob, m, m)?;
        let target = GradedBasis::expected_len(prob.dim(), DegreeSpec::UpTo(m));
        defect |= rank < columns || coverage < target;
        r.ranks.insert(m, rank);
        r.certificate(json!({
            "kind": "truncated_evidence",
            "bound": m,
            "rank": rank,
            "columns": columns,
            "kernel_dim": columns - rank,
            "coverage": coverage,
            "target_dim": target,
        }));
    }
    if let Some(k) = kernel_up_to(prob, bound)?.first() {
        r.witness("kernel[0]", k)?;
    }
    Ok(defect)
}

pub fn scan_cs(spec: &ScanSpec) -> CliResult<Vec<CommandResult>> {
    spec.validate()?;
    let lap = QuadraticOperator::laplacian(spec.dim);
    let mut master = ChaCha8Rng::seed_from_u64(spec.seed);
    let seeds: Vec<u64> = (0..spec.samples).map(|_| master.random()).collect();
    let control_seed: u64 = master.random();

    let samples: Vec<CliResult<CommandResult>> = seeds
        .par_iter()
        .enumerate()
        .map(|(i, &seed)| {
            timed(|| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let psi = random_psi(&mut rng, spec.dim, spec.degree, spec.coeff_range);
                let prob = FischerProblem::new(psi.clone(), lap.clone())?;
                let mut r = CommandResult::new("scan-cs.sample", format!("sample {i}"), spec.dim);
                r.witness("psi", &psi)?;
                let defect = evidence(&prob, spec.bound, &mut r)?;
                r.status(if defect { "DEFECT_WITHIN_BOUNDS" } else { "NO_DEFECT_FOLLOW_UP" });
                Ok(r)
            })
        })
        .collect();
    let mut out: Vec<CommandResult> = samples.into_iter().collect::<CliResult<_>>()?;

    out.push(timed(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(control_seed);
        let axes: Vec<Rational> = (0..spec.dim)
            .map(|_| frac(rng.random_range(1..=4), rng.random_range(1..=3)))
            .collect();
        let psi = QuadricSpec::ellipsoid(&axes)?.psi();
        let prob = FischerProblem::new(psi.clone(), lap.clone())?;
        let mut r = CommandResult::new("scan-cs.control", "ellipsoid", spec.dim);
        r.witness("psi", &psi)?;
        let defect = evidence(&prob, spec.bound, &mut r)?;
        r.status(if defect { "DEFECT_WITHIN_BOUNDS" } else { "FULL_RANK" });
        Ok(r)
    })?);
    Ok(out)
}
