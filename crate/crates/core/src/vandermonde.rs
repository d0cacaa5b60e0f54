//! Generalized Vandermonde matrices `V(x; Γ)` with entries `x_j^{γ_i}`.
//!
//! Exact determinants go through Bareiss elimination; the determinant of
//! `V((s, s+1, …, s+N-1); Γ)` as a polynomial in `s` is expanded symbolically.
//! Singular values are a separate, floating operation.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::GammaSet;
use crate::lacunary::LacunaryPolynomial;
use crate::linalg;
use crate::rational::{self, Rational};
use crate::sturm::{IntPoly, IsolatedRoot, SturmChain};

/// Square matrix: row `i` is exponent `γ_i`, column `j` is node `x_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralizedVandermonde {
    nodes: Vec<Rational>,
    exponents: GammaSet,
}

impl GeneralizedVandermonde {
    pub fn new(nodes: Vec<Rational>, exponents: GammaSet) -> Result<Self> {
        if nodes.len() != exponents.len() {
            return Err(Error::NotSquare {
                rows: exponents.len(),
                cols: nodes.len(),
            });
        }
        Ok(GeneralizedVandermonde { nodes, exponents })
    }

    /// Nodes `(s, s+1, …, s+N-1)`.
    pub fn unit_spaced(s: &Rational, exponents: GammaSet) -> Self {
        let nodes = (0..exponents.len())
            .map(|j| s + rational::int(j as i64))
            .collect();
        GeneralizedVandermonde { nodes, exponents }
    }

    pub fn nodes(&self) -> &[Rational] {
        &self.nodes
    }

    pub fn exponents(&self) -> &GammaSet {
        &self.exponents
    }

    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> Rational {
        rational::pow(&self.nodes[j], self.exponents.exponents()[i])
    }

    pub fn matrix(&self) -> Vec<Vec<Rational>> {
        (0..self.size())
            .map(|i| (0..self.size()).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    pub fn det_exact(&self) -> Rational {
        linalg::rational_det(&self.matrix())
    }

    pub fn is_invertible(&self) -> bool {
        !self.det_exact().is_zero()
    }

    /// Nonzero `a` with `Σ_i a_i x_j^{γ_i} = 0` for every node, if singular.
    ///
    /// Normalized to coprime integers with the highest-exponent nonzero
    /// coefficient positive.
    pub fn null_vector(&self) -> Option<Vec<Rational>> {
        let n = self.size();
        let transpose: Vec<Vec<Rational>> = (0..n)
            .map(|j| (0..n).map(|i| self.entry(i, j)).collect())
            .collect();
        let basis = linalg::null_space(&transpose, n);
        let v = basis.into_iter().next()?;
        let mut v = linalg::primitive_integer(&v);
        if v.iter().rev().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            v.iter_mut().for_each(|x| *x = -x.clone());
        }
        Some(v)
    }

    /// The lacunary polynomial in `P(Γ)` built from [`null_vector`](Self::null_vector).
    pub fn witness_polynomial(&self) -> Option<LacunaryPolynomial> {
        self.null_vector()
            .map(|a| LacunaryPolynomial::from_exponent_set(&self.exponents, &a))
    }

    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Rational {
        let sub: Vec<Vec<Rational>> = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| self.entry(i, j)).collect())
            .collect();
        linalg::rational_det(&sub)
    }

    /// Whether every minor of order `≤ max_order` is strictly positive.
    ///
    /// Requires strictly positive, strictly increasing nodes.
    pub fn verify_total_positivity(&self, max_order: usize) -> Result<bool> {
        if let Some(x) = self.nodes.iter().find(|x| !x.is_positive()) {
            return Err(Error::TotalPositivityHypothesis(format!("node {x} is not positive")));
        }
        if self.nodes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::TotalPositivityHypothesis(
                "nodes are not strictly increasing".into(),
            ));
        }
        let n = self.size();
        if max_order > n {
            return Err(Error::Precondition(format!(
                "minor order {max_order} exceeds matrix size {n}"
            )));
        }
        let work: Vec<(Vec<usize>, usize)> = (1..=max_order)
            .flat_map(|k| combinations(n, k).into_iter().map(move |rows| (rows, k)))
            .collect();
        Ok(work.par_iter().all(|(rows, k)| {
            combinations(n, *k)
                .iter()
                .all(|cols| self.minor(rows, cols).is_positive())
        }))
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// `det V((s, s+1, …, s+N-1); Γ)` as an integer polynomial in `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetPolynomial {
    pub gamma: GammaSet,
    pub poly: IntPoly,
}

impl DetPolynomial {
    pub fn eval(&self, s: &Rational) -> Rational {
        self.poly.eval(s)
    }

    pub fn coefficients(&self) -> &[BigInt] {
        self.poly.coeffs()
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }
}

impl std::fmt::Display for DetPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms = self.poly.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero());
        let lp = LacunaryPolynomial::from_terms(
            terms.map(|(i, c)| (i as u32, Rational::from_integer(c.clone()))),
        );
        write!(f, "{}", lp.to_string().replace('x', "s"))
    }
}

/// Symbolic determinant by Laplace expansion over column subsets.
///
/// `det(rows 0..|S|, cols S) = Σ_{j∈S} (-1)^{#{c∈S : c>j}} a[|S|-1][j] det(rows, S∖j)`.
fn symbolic_det(entries: &[Vec<IntPoly>]) -> IntPoly {
    let n = entries.len();
    let mut level: HashMap<u32, IntPoly> = HashMap::new();
    level.insert(0, IntPoly::constant(BigInt::one()));
    for row in 0..n {
        let mut next: HashMap<u32, IntPoly> = HashMap::new();
        for (mask, d) in &level {
            for j in 0..n {
                if mask & (1 << j) != 0 {
                    continue;
                }
                let greater = (mask >> (j + 1)).count_ones();
                let mut term = d.mul(&entries[row][j]);
                if greater % 2 == 1 {
                    term = term.neg();
                }
                let slot = next.entry(mask | (1 << j)).or_insert_with(IntPoly::zero);
                *slot = slot.add(&term);
            }
        }
        level = next;
    }
    level.remove(&((1u32 << n) - 1)).unwrap_or_else(IntPoly::zero)
}

/// `det V((s, …, s+N-1); Γ)` for `#Γ ≤ cap`.
pub fn det_in_s(gamma: &GammaSet, cap: usize) -> Result<DetPolynomial> {
    let n = gamma.len();
    if n > cap {
        return Err(Error::DetCap { size: n, cap });
    }
    let entries: Vec<Vec<IntPoly>> = gamma
        .iter()
        .map(|g| (0..n).map(|j| IntPoly::shifted_power(j as i64, g)).collect())
        .collect();
    Ok(DetPolynomial {
        gamma: gamma.clone(),
        poly: symbolic_det(&entries),
    })
}

/// Real roots of `det_in_s(Γ)` inside the open window `(lo, hi)`.
pub fn exceptional_set(
    gamma: &GammaSet,
    lo: &Rational,
    hi: &Rational,
    cap: usize,
    width: &Rational,
) -> Result<Vec<IsolatedRoot>> {
    let det = det_in_s(gamma, cap)?;
    if det.poly.is_constant() {
        return Ok(Vec::new());
    }
    Ok(SturmChain::new(&det.poly).isolate_open(lo, hi, width))
}

/// gcd over all `k`-element `Γ' ⊂ Γ` of `det V((s, …, s+k-1); Γ')`.
///
/// Its real roots are exactly the shifts `s` where the `#Γ × k` matrix with
/// entries `(s+j)^{γ_i}` loses column rank.
pub fn rank_drop_polynomial(gamma: &GammaSet, k: usize, cap: usize) -> Result<IntPoly> {
    let n = gamma.len();
    if n > cap {
        return Err(Error::DetCap { size: n, cap });
    }
    assert!((1..=n).contains(&k), "column count out of range");
    let mut g = IntPoly::zero();
    for rows in combinations(n, k) {
        let sub = GammaSet::new(rows.iter().map(|&i| gamma.exponents()[i]).collect())
            .expect("subset of a gap set is a gap set");
        let d = det_in_s(&sub, cap)?.poly;
        g = g.gcd(&d);
        if g.is_constant() {
            break;
        }
    }
    Ok(g)
}

/// Default isolation width `2^-bits`.
pub fn isolation_width(bits: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << bits as usize)
}

/// Extreme singular values of the `#Γ × k` matrix with entries `node_j^{γ_i}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingularExtremes {
    pub sigma_min: f64,
    pub sigma_max: f64,
}

pub fn singular_extremes(nodes: &[f64], gamma: &GammaSet) -> Result<SingularExtremes> {
    let k = nodes.len();
    let n = gamma.len();
    if k == 0 || k > n {
        return Err(Error::Precondition(format!(
            "need 1 <= k <= #Γ nodes, got k = {k}, #Γ = {n}"
        )));
    }
    let mut m = DMatrix::<f64>::zeros(n, k);
    for (i, g) in gamma.iter().enumerate() {
        for (j, x) in nodes.iter().enumerate() {
            m[(i, j)] = x.powi(g as i32);
        }
    }
    let scale = m.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return Err(Error::Precondition("matrix entries are not finite".into()));
    }
    m /= scale;
    let sv = linalg::singular_values(&m);
    Ok(SingularExtremes {
        sigma_min: sv[k - 1] * scale,
        sigma_max: sv[0] * scale,
    })
}
