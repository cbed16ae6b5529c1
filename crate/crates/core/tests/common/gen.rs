//! Seeded generators for randomized checks.

use std::cmp::Ordering;

use fischer_core::rational::frac;
use fischer_core::{Polynomial, Rational};
use num_traits::{Signed, Zero};
use rand::Rng;

pub fn rational<R: Rng>(rng: &mut R, num: i64, den: i64) -> Rational {
    frac(rng.random_range(-num..=num), rng.random_range(1..=den))
}

pub fn nonzero_rational<R: Rng>(rng: &mut R, num: i64, den: i64) -> Rational {
    loop {
        let r = rational(rng, num, den);
        if !r.is_zero() {
            return r;
        }
    }
}

pub fn positive_rational<R: Rng>(rng: &mut R, num: i64, den: i64) -> Rational {
    frac(rng.random_range(1..=num), rng.random_range(1..=den))
}

pub fn point<R: Rng>(rng: &mut R, dim: usize, num: i64, den: i64) -> Vec<Rational> {
    (0..dim).map(|_| rational(rng, num, den)).collect()
}

fn exponents<R: Rng>(rng: &mut R, dim: usize, degree: u32) -> Vec<u32> {
    let mut e = vec![0; dim];
    for _ in 0..degree {
        e[rng.random_range(0..dim)] += 1;
    }
    e
}

/// Up to `terms` random terms of degree ≤ `max_degree`; may be zero.
pub fn polynomial<R: Rng>(rng: &mut R, dim: usize, max_degree: u32, terms: usize, num: i64) -> Polynomial {
    let ts: Vec<(Vec<u32>, Rational)> = (0..terms)
        .map(|_| {
            let d = rng.random_range(0..=max_degree);
            (exponents(rng, dim, d), rational(rng, num, 4))
        })
        .collect();
    Polynomial::from_terms(dim, ts).expect("consistent dimension")
}

/// Random polynomial of degree exactly `degree`.
pub fn polynomial_of_degree<R: Rng>(rng: &mut R, dim: usize, degree: u32, terms: usize, num: i64) -> Polynomial {
    loop {
        let lead = Polynomial::from_terms(
            dim,
            [(exponents(rng, dim, degree), nonzero_rational(rng, num, 4))],
        )
        .expect("consistent dimension");
        let low = polynomial(rng, dim, degree, terms, num);
        let p = &lead + &low;
        if p.degree() == Some(degree) {
            return p;
        }
    }
}

/// Random matrix with a fair share of zero entries and repeated rows.
pub fn matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    if rng.random_bool(0.3) {
                        Rational::zero()
                    } else {
                        rational(rng, 9, 5)
                    }
                })
                .collect()
        })
        .collect();
    if rows >= 2 && rng.random_bool(0.3) {
        let (i, j) = (rng.random_range(0..rows), rng.random_range(0..rows));
        let c = rational(rng, 3, 2);
        let scaled: Vec<Rational> = m[j].iter().map(|v| v * &c).collect();
        m[i] = scaled;
    }
    m
}

fn half(p: &[Rational; 2]) -> u8 {
    if p[1].is_positive() || (p[1].is_zero() && p[0].is_positive()) {
        0
    } else {
        1
    }
}

fn by_angle(a: &[Rational; 2], b: &[Rational; 2]) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| {
        let cross = &a[0] * &b[1] - &a[1] * &b[0];
        if cross.is_positive() {
            Ordering::Less
        } else if cross.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// Star-shaped polygon: random points sorted by angle around their mean, with
/// no two on a common ray. Counterclockwise; may still be degenerate (callers
/// validate and retry).
pub fn star_polygon<R: Rng>(rng: &mut R, n: usize, range: i64) -> Vec<[Rational; 2]> {
    loop {
        let pts: Vec<[Rational; 2]> = (0..n)
            .map(|_| [rational(rng, range, 3), rational(rng, range, 3)])
            .collect();
        let count = Rational::from_integer((n as i64).into());
        let cx: Rational = pts.iter().map(|p| p[0].clone()).sum::<Rational>() / &count;
        let cy: Rational = pts.iter().map(|p| p[1].clone()).sum::<Rational>() / &count;
        let mut rel: Vec<([Rational; 2], [Rational; 2])> = pts
            .into_iter()
            .map(|p| ([&p[0] - &cx, &p[1] - &cy], p))
            .collect();
        if rel.iter().any(|(r, _)| r[0].is_zero() && r[1].is_zero()) {
            continue;
        }
        rel.sort_by(|a, b| by_angle(&a.0, &b.0));
        if rel.windows(2).any(|w| by_angle(&w[0].0, &w[1].0) == Ordering::Equal) {
            continue;
        }
        return rel.into_iter().map(|(_, p)| p).collect();
    }
}
