//! Uniqueness sets for lacunary polynomial spaces `P(M)`, `#M = N`.
//!
//! A point set `X` with `#X = N` is a uniqueness set for `P(M)` exactly when
//! `V(X; M)` is invertible, so verification is an exhaustive sweep of exact
//! determinants over all `M ⊂ {0, …, cap}`.

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gamma::GammaSet;
use crate::lacunary::LacunaryPolynomial;
use crate::rational::{self, Rational};
use crate::vandermonde::GeneralizedVandermonde;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// `S`: first point negative.
    Plus,
    /// `-S`: first point positive.
    Minus,
}

impl Orientation {
    pub fn from_sign(sign: i32) -> Result<Self> {
        match sign {
            1 => Ok(Orientation::Plus),
            -1 => Ok(Orientation::Minus),
            _ => Err(Error::Precondition(format!("sign must be +1 or -1, got {sign}"))),
        }
    }

    pub fn sign(self) -> i64 {
        match self {
            Orientation::Plus => 1,
            Orientation::Minus => -1,
        }
    }
}

/// `±{(-1)^k t_k}_{k=1..N}` for `0 < t_1 < … < t_N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingSet {
    pub generators: Vec<Rational>,
    pub orientation: Orientation,
    pub points: Vec<Rational>,
}

pub fn build_alternating(ts: &[Rational], orientation: Orientation) -> Result<AlternatingSet> {
    if ts.is_empty() {
        return Err(Error::InvalidPoints("no generators".into()));
    }
    if let Some(t) = ts.iter().find(|t| !rational::is_positive(t)) {
        return Err(Error::InvalidPoints(format!("generator {t} is not positive")));
    }
    if ts.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidPoints("generators are not strictly increasing".into()));
    }
    let points = ts
        .iter()
        .enumerate()
        .map(|(i, t)| {
            // k = i + 1, so (-1)^k is negative for even i
            let parity = if i % 2 == 0 { -1 } else { 1 };
            t * rational::int(parity * orientation.sign())
        })
        .collect();
    Ok(AlternatingSet {
        generators: ts.to_vec(),
        orientation,
        points,
    })
}

/// An exponent set on which the points fail, with the vanishing polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniquenessFailure {
    pub points: Vec<Rational>,
    pub exponents: GammaSet,
    pub polynomial: LacunaryPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniquenessVerdict {
    pub unique: bool,
    /// Number of exponent sets examined.
    pub checked: usize,
    pub witness: Option<UniquenessFailure>,
}

fn check_points(points: &[Rational], cap: u32) -> Result<()> {
    if points.is_empty() {
        return Err(Error::InvalidPoints("empty point set".into()));
    }
    let mut sorted = points.to_vec();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidPoints("points are not pairwise distinct".into()));
    }
    let needed = points.len() as u32 - 1;
    if cap < needed {
        return Err(Error::ExponentCap { cap, needed });
    }
    Ok(())
}

fn failure_at(points: &[Rational], m: &GammaSet) -> Option<UniquenessFailure> {
    let v = GeneralizedVandermonde::new(points.to_vec(), m.clone()).expect("square by construction");
    if v.is_invertible() {
        return None;
    }
    let polynomial = v.witness_polynomial().expect("singular matrix has a null vector");
    Some(UniquenessFailure {
        points: points.to_vec(),
        exponents: m.clone(),
        polynomial,
    })
}

/// Checks every `M ⊂ {0, …, cap}` with `#M = #points`; stops at the first
/// failure in lexicographic order of `M`.
pub fn is_uniqueness_set(points: &[Rational], cap: u32) -> Result<UniquenessVerdict> {
    check_points(points, cap)?;
    let sets = GammaSet::subsets_of_range(cap, points.len());
    let witness = sets.par_iter().find_map_first(|m| failure_at(points, m));
    Ok(UniquenessVerdict {
        unique: witness.is_none(),
        checked: sets.len(),
        witness,
    })
}

/// Every failing exponent set, in lexicographic order.
pub fn all_failures(points: &[Rational], cap: u32) -> Result<Vec<UniquenessFailure>> {
    check_points(points, cap)?;
    let sets = GammaSet::subsets_of_range(cap, points.len());
    Ok(sets.par_iter().filter_map(|m| failure_at(points, m)).collect())
}

fn is_alternating(signs: &[i64]) -> bool {
    signs.windows(2).all(|w| w[0] != w[1])
}

/// Random positive generators `0 < t_1 < … < t_n` with a shared small
/// denominator, so that coincidences like `{-1, 1, 2}` are reachable.
pub fn random_generators<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Rational> {
    let den: i64 = rng.gen_range(1..=6);
    let pool: Vec<i64> = (1..=(4 * n as i64 + 8)).collect();
    let mut nums: Vec<i64> = pool.choose_multiple(rng, n).copied().collect();
    nums.sort_unstable();
    nums.into_iter().map(|k| rational::ratio(k, den)).collect()
}

/// Random non-alternating sign patterns over random positive generators.
///
/// Patterns equal to the alternating form or its negation are redrawn.
/// The output depends only on the state of `rng`.
pub fn search_counterexample<R: Rng + ?Sized>(
    n: usize,
    cap: u32,
    trials: usize,
    rng: &mut R,
) -> Result<Vec<UniquenessFailure>> {
    if n < 2 {
        return Err(Error::Precondition("search needs n >= 2".into()));
    }
    if cap < n as u32 - 1 {
        return Err(Error::ExponentCap { cap, needed: n as u32 - 1 });
    }
    let mut failures = Vec::new();
    for _ in 0..trials {
        let ts = random_generators(rng, n);
        let signs: Vec<i64> = loop {
            let s: Vec<i64> = (0..n).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
            if !is_alternating(&s) {
                break s;
            }
        };
        let points: Vec<Rational> = ts
            .iter()
            .zip(&signs)
            .map(|(t, s)| t * rational::int(*s))
            .collect();
        failures.extend(all_failures(&points, cap)?);
    }
    Ok(failures)
}
