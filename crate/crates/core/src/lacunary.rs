//! Sparse real polynomials `P(x) = Σ c_j x^{m_j}` over an exponent set `M`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::gamma::GammaSet;
use crate::rational::{self, Rational};
use crate::sturm::{IntPoly, IsolatedRoot, SturmChain};

/// Canonical sparse polynomial: exponents strictly increasing, no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LacunaryPolynomial {
    terms: Vec<(u32, Rational)>,
}

impl LacunaryPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Merges repeated exponents and drops zero coefficients.
    pub fn from_terms(terms: impl IntoIterator<Item = (u32, Rational)>) -> Self {
        let mut terms: Vec<(u32, Rational)> = terms.into_iter().collect();
        terms.sort_by_key(|(e, _)| *e);
        let mut merged: Vec<(u32, Rational)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match merged.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => merged.push((e, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        LacunaryPolynomial { terms: merged }
    }

    /// `Σ coeffs[j] x^{M[j]}`.
    pub fn from_exponent_set(m: &GammaSet, coeffs: &[Rational]) -> Self {
        assert_eq!(m.len(), coeffs.len(), "one coefficient per exponent");
        Self::from_terms(m.iter().zip(coeffs.iter().cloned()))
    }

    pub fn terms(&self) -> &[(u32, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.last().map(|(e, _)| *e)
    }

    pub fn exponents(&self) -> Vec<u32> {
        self.terms.iter().map(|(e, _)| *e).collect()
    }

    /// Whether `P ∈ P(M)`.
    pub fn in_space(&self, m: &GammaSet) -> bool {
        self.terms.iter().all(|(e, _)| m.exponents().binary_search(e).is_ok())
    }

    /// `P(-x)`.
    pub fn reflect(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(e, c)| (*e, if e % 2 == 1 { -c.clone() } else { c.clone() })),
        )
    }

    /// Exact value, with `0^0 = 1`.
    pub fn evaluate(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        let mut power = rational::int(1);
        let mut current = 0u32;
        for (e, c) in &self.terms {
            power *= rational::pow(x, e - current);
            current = *e;
            acc += c * &power;
        }
        acc
    }

    pub fn evaluate_f64(&self, x: f64) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| rational::to_f64(c) * x.powi(*e as i32))
            .sum()
    }

    /// Sign changes in the coefficient sequence ordered by exponent.
    pub fn descartes_bound(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let changes = self
            .terms
            .windows(2)
            .filter(|w| w[0].1.is_positive() != w[1].1.is_positive())
            .count();
        Ok(changes)
    }

    /// Dense integer polynomial with the same roots and signs.
    pub fn to_dense(&self) -> IntPoly {
        let Some(deg) = self.degree() else {
            return IntPoly::zero();
        };
        let mut dense = vec![Rational::zero(); deg as usize + 1];
        for (e, c) in &self.terms {
            dense[*e as usize] = c.clone();
        }
        IntPoly::from_rationals(&dense)
    }

    fn positive_chain(&self, degree_cap: u32) -> Result<SturmChain> {
        let deg = self.degree().ok_or(Error::ZeroPolynomial)?;
        if deg > degree_cap {
            return Err(Error::DegreeCap { degree: deg, cap: degree_cap });
        }
        Ok(SturmChain::new(&self.to_dense().strip_zero_roots()))
    }

    /// Exact number of distinct roots in `(0, ∞)` via a Sturm chain.
    pub fn count_positive_roots(&self, degree_cap: u32) -> Result<usize> {
        Ok(self.positive_chain(degree_cap)?.count_above(&Rational::zero()))
    }

    /// Isolating intervals for the distinct positive roots.
    pub fn positive_root_intervals(&self, degree_cap: u32, width: &Rational) -> Result<Vec<IsolatedRoot>> {
        let chain = self.positive_chain(degree_cap)?;
        let bound = chain.root_bound();
        Ok(chain.isolate_open(&Rational::zero(), &bound, width))
    }

    pub fn vanishes_on(&self, points: &[Rational]) -> bool {
        points.iter().all(|x| self.evaluate(x).is_zero())
    }
}

impl fmt::Display for LacunaryPolynomial {
    /// `c0*x^m0 + c1*x^m1 - …`, coefficients as `p/q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let magnitude = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-{magnitude}*x^{e}")?,
                (0, false) => write!(f, "{magnitude}*x^{e}")?,
                (_, true) => write!(f, " - {magnitude}*x^{e}")?,
                (_, false) => write!(f, " + {magnitude}*x^{e}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for LacunaryPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "polynomial",
            input: s.to_string(),
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        // Split into signed terms at '+'/'-' that start a new term.
        let bytes = compact.as_bytes();
        let mut pieces = Vec::new();
        let mut start = 0;
        for i in 1..bytes.len() {
            let c = bytes[i];
            let prev = bytes[i - 1];
            let starts_term = (c == b'+' || c == b'-')
                && !matches!(prev, b'e' | b'E' | b'^' | b'/' | b'*' | b'+' | b'-');
            if starts_term {
                pieces.push(&compact[start..i]);
                start = i;
            }
        }
        pieces.push(&compact[start..]);

        let mut terms = Vec::new();
        for piece in pieces {
            let (sign, body) = match piece.as_bytes()[0] {
                b'-' => (-1, &piece[1..]),
                b'+' => (1, &piece[1..]),
                _ => (1, piece),
            };
            if body.is_empty() {
                return Err(err());
            }
            let (coef, exp) = match body.find('x') {
                Some(pos) => {
                    let coef_text = body[..pos].trim_end_matches('*');
                    let coef = if coef_text.is_empty() {
                        rational::int(1)
                    } else {
                        rational::parse_rational(coef_text).map_err(|_| err())?
                    };
                    let rest = &body[pos + 1..];
                    let exp = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .ok_or_else(err)?
                            .parse::<u32>()
                            .map_err(|_| err())?
                    };
                    (coef, exp)
                }
                None => (rational::parse_rational(body).map_err(|_| err())?, 0),
            };
            terms.push((exp, coef * rational::int(sign)));
        }
        Ok(Self::from_terms(terms))
    }
}

/// Equality cases of Descartes' bound are useful in reports.
pub fn descartes_is_sharp(p: &LacunaryPolynomial, degree_cap: u32) -> Result<bool> {
    Ok(p.count_positive_roots(degree_cap)?.cmp(&p.descartes_bound()?) == Ordering::Equal)
}
