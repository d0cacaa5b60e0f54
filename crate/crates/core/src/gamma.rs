//! Gap sets `Γ ⊂ ℕ₀`, their parity split and the half-integer invariant `r(Γ)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A finite, nonempty, strictly increasing set of nonnegative exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaSet(Vec<u32>);

/// The two parity classes of a gap set. Either class may be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParitySplit {
    pub even: Vec<u32>,
    pub odd: Vec<u32>,
}

impl GammaSet {
    pub fn new(exponents: Vec<u32>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::InvalidGamma("empty".into()));
        }
        if let Some(w) = exponents.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGamma(format!(
                "not strictly increasing at {} -> {}",
                w[0], w[1]
            )));
        }
        Ok(GammaSet(exponents))
    }

    /// `{0, 1, …, n-1}`.
    pub fn consecutive(n: u32) -> Self {
        assert!(n >= 1, "consecutive gap set needs at least one exponent");
        GammaSet((0..n).collect())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains_zero(&self) -> bool {
        self.0[0] == 0
    }

    pub fn max(&self) -> u32 {
        *self.0.last().expect("nonempty")
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn parity_split(&self) -> ParitySplit {
        let (even, odd) = self.0.iter().partition(|&&g| g % 2 == 0);
        ParitySplit { even, odd }
    }

    /// `r(Γ) = #Γ_odd + 1/2` if `#Γ_odd < #Γ_even`, else `#Γ_even`.
    pub fn r_gamma(&self) -> Rational {
        let split = self.parity_split();
        let (e, o) = (split.even.len() as i64, split.odd.len() as i64);
        if o < e {
            Rational::new(BigInt::from(2 * o + 1), BigInt::from(2))
        } else {
            Rational::from_integer(BigInt::from(e))
        }
    }

    /// `#Γ / 2`.
    pub fn half_cardinality(&self) -> Rational {
        Rational::new(BigInt::from(self.len()), BigInt::from(2))
    }

    /// Every subset of `{0, …, cap}` with `size` elements, in lexicographic order.
    pub fn subsets_of_range(cap: u32, size: usize) -> Vec<GammaSet> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(size);
        fn rec(start: u32, cap: u32, size: usize, cur: &mut Vec<u32>, out: &mut Vec<GammaSet>) {
            if cur.len() == size {
                out.push(GammaSet(cur.clone()));
                return;
            }
            let remaining = (size - cur.len()) as u32;
            let mut v = start;
            while v + remaining <= cap + 1 {
                cur.push(v);
                rec(v + 1, cap, size, cur, out);
                cur.pop();
                v += 1;
            }
        }
        if size > 0 {
            rec(0, cap, size, &mut current, &mut out);
        }
        out
    }
}

impl fmt::Display for GammaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for GammaSet {
    type Err = Error;

    /// Comma-separated ascending integers, e.g. `"0,2,5"`.
    fn from_str(s: &str) -> Result<Self> {
        let exps = s
            .split(',')
            .map(|t| {
                t.trim().parse::<u32>().map_err(|_| Error::Parse {
                    what: "gap set",
                    input: s.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        GammaSet::new(exps)
    }
}

impl Serialize for GammaSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GammaSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
