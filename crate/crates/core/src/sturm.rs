//! Dense integer polynomials, Sturm chains and exact real-root isolation.
//!
//! Coefficients are stored low-to-high. Every transformation used here
//! (primitive parts, sign-corrected pseudo-remainders) rescales by positive
//! factors only, so signs at every point are preserved along the chain.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    /// `x` as a polynomial.
    pub fn x() -> Self {
        IntPoly::new(vec![BigInt::zero(), BigInt::one()])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Clears denominators with their (positive) lcm.
    pub fn from_rationals(coeffs: &[Rational]) -> Self {
        let lcm = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        IntPoly::new(
            coeffs
                .iter()
                .map(|c| c.numer() * (&lcm / c.denom()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + rational::to_f64(&Rational::from_integer(c.clone())))
    }

    /// Sign of `p(x)` using only integer arithmetic.
    pub fn sign_at(&self, x: &Rational) -> Ordering {
        let Some(d) = self.degree() else {
            return Ordering::Equal;
        };
        let (p, q) = (x.numer(), x.denom());
        let mut acc = self.coeffs[d].clone();
        let mut qpow = BigInt::one();
        for i in (0..d).rev() {
            qpow *= q;
            acc = acc * p + &self.coeffs[i] * &qpow;
        }
        acc.sign_ordering()
    }

    pub fn sign_at_pos_inf(&self) -> Ordering {
        self.leading().map_or(Ordering::Equal, |c| c.sign_ordering())
    }

    pub fn sign_at_neg_inf(&self) -> Ordering {
        match (self.leading(), self.degree()) {
            (Some(c), Some(d)) => {
                let s = c.sign_ordering();
                if d % 2 == 1 {
                    s.reverse()
                } else {
                    s
                }
            }
            _ => Ordering::Equal,
        }
    }

    pub fn derivative(&self) -> Self {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigInt::zero();
        IntPoly::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero)
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// `(x + shift)^e` expanded with binomial coefficients.
    pub fn shifted_power(shift: i64, e: u32) -> Self {
        let mut coeffs = Vec::with_capacity(e as usize + 1);
        let mut binom = BigInt::one();
        let s = BigInt::from(shift);
        for i in 0..=e {
            // coefficient of x^i is C(e,i) * shift^(e-i)
            coeffs.push(&binom * num_traits::pow(s.clone(), (e - i) as usize));
            binom = binom * BigInt::from(e - i) / BigInt::from(i + 1);
        }
        IntPoly::new(coeffs)
    }

    /// gcd of the coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides by the positive content; signs are unchanged.
    pub fn primitive(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPoly::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Pseudo-division `lc(b)^k · a = q·b + r` with `k = deg a - deg b + 1`.
    fn pseudo_div(&self, b: &Self) -> (Self, Self, BigInt, usize) {
        let db = b.degree().expect("division by zero polynomial");
        let lc = b.leading().unwrap().clone();
        let Some(da) = self.degree() else {
            return (IntPoly::zero(), IntPoly::zero(), lc, 0);
        };
        if da < db {
            return (IntPoly::zero(), self.clone(), lc, 0);
        }
        let k = da - db + 1;
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); da - db + 1];
        for step in (0..=da - db).rev() {
            // Multiply everything by lc, then cancel the top term.
            for c in r.iter_mut() {
                *c *= &lc;
            }
            for c in q.iter_mut() {
                *c *= &lc;
            }
            let top = r[step + db].clone() / &lc;
            q[step] += &top;
            for (j, bc) in b.coeffs.iter().enumerate() {
                r[step + j] -= &top * bc;
            }
        }
        (IntPoly::new(q), IntPoly::new(r), lc, k)
    }

    /// Remainder of `self` by `b`, rescaled by a positive factor only.
    pub fn positive_rem(&self, b: &Self) -> Self {
        let (_, r, lc, k) = self.pseudo_div(b);
        if lc.is_negative() && k % 2 == 1 {
            r.neg()
        } else {
            r
        }
    }

    /// Exact quotient up to a positive factor, assuming `b` divides `self`.
    pub fn positive_quotient(&self, b: &Self) -> Self {
        let (q, r, lc, k) = self.pseudo_div(b);
        debug_assert!(r.is_zero(), "positive_quotient: not a divisor");
        let q = if lc.is_negative() && k % 2 == 1 { q.neg() } else { q };
        q.primitive()
    }

    /// Primitive gcd with positive leading coefficient; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.is_zero() {
            return b.normalize_sign();
        }
        while !b.is_zero() {
            let r = a.positive_rem(&b).primitive();
            a = b;
            b = r;
        }
        a.normalize_sign()
    }

    fn normalize_sign(self) -> Self {
        if self.leading().is_some_and(|c| c.is_negative()) {
            self.neg()
        } else {
            self
        }
    }

    /// `p / gcd(p, p')`: same distinct roots, all simple.
    pub fn square_free(&self) -> Self {
        if self.is_constant() {
            return self.primitive();
        }
        let g = self.gcd(&self.derivative());
        if g.is_constant() {
            self.primitive()
        } else {
            self.positive_quotient(&g)
        }
    }

    /// Removes factors of `x` (roots at zero).
    pub fn strip_zero_roots(&self) -> Self {
        let skip = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        IntPoly::new(self.coeffs[skip..].to_vec())
    }
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

/// A real root located in `[lo, hi]`; `lo == hi` means the root is exact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsolatedRoot {
    #[serde(with = "rational::serde_str")]
    pub lo: Rational,
    #[serde(with = "rational::serde_str")]
    pub hi: Rational,
}

impl IsolatedRoot {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / rational::int(2)
    }

    pub fn approx(&self) -> f64 {
        rational::to_f64(&self.midpoint())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

/// Sturm sequence of the square-free part of a polynomial.
#[derive(Debug, Clone)]
pub struct SturmChain {
    seq: Vec<IntPoly>,
}

impl SturmChain {
    /// Builds the chain of `p`'s square-free part. `p` must be nonzero.
    pub fn new(p: &IntPoly) -> Self {
        assert!(!p.is_zero(), "Sturm chain of the zero polynomial");
        let p0 = p.square_free();
        let mut seq = vec![p0.clone()];
        if p0.is_constant() {
            return SturmChain { seq };
        }
        let mut prev = p0;
        let mut cur = prev.derivative().primitive();
        while !cur.is_zero() {
            let next = prev.positive_rem(&cur).neg().primitive();
            seq.push(cur.clone());
            prev = cur;
            cur = next;
        }
        SturmChain { seq }
    }

    pub fn polynomial(&self) -> &IntPoly {
        &self.seq[0]
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    fn count_changes(signs: impl Iterator<Item = Ordering>) -> usize {
        let mut last = Ordering::Equal;
        let mut changes = 0;
        for s in signs.filter(|s| *s != Ordering::Equal) {
            if last != Ordering::Equal && s != last {
                changes += 1;
            }
            last = s;
        }
        changes
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        Self::count_changes(self.seq.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        Self::count_changes(self.seq.iter().map(|p| p.sign_at_pos_inf()))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        Self::count_changes(self.seq.iter().map(|p| p.sign_at_neg_inf()))
    }

    /// Number of distinct roots in the half-open interval `(a, b]`.
    pub fn count_half_open(&self, a: &Rational, b: &Rational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    /// Number of distinct roots in `(a, +∞)`.
    pub fn count_above(&self, a: &Rational) -> usize {
        self.variations_at(a)
            .saturating_sub(self.variations_at_pos_inf())
    }

    /// Distinct real roots anywhere on the line.
    pub fn count_real(&self) -> usize {
        self.variations_at_neg_inf()
            .saturating_sub(self.variations_at_pos_inf())
    }

    /// Distinct roots in the closed interval `[a, b]`.
    pub fn count_closed(&self, a: &Rational, b: &Rational) -> usize {
        let at_a = usize::from(self.polynomial().sign_at(a) == Ordering::Equal);
        self.count_half_open(a, b) + at_a
    }

    /// Isolates every root in the open interval `(lo, hi)` to width `width`.
    pub fn isolate_open(&self, lo: &Rational, hi: &Rational, width: &Rational) -> Vec<IsolatedRoot> {
        if lo >= hi {
            return Vec::new();
        }
        let p = self.polynomial();
        let two = rational::int(2);
        let mut out = Vec::new();
        let mut stack = vec![(lo.clone(), hi.clone(), self.count_half_open(lo, hi))];
        while let Some((a, b, count)) = stack.pop() {
            if count == 0 {
                continue;
            }
            if count == 1 {
                if p.sign_at(&b) == Ordering::Equal {
                    out.push(IsolatedRoot { lo: b.clone(), hi: b });
                    continue;
                }
                if &b - &a <= *width {
                    out.push(IsolatedRoot { lo: a, hi: b });
                    continue;
                }
            }
            let mid = (&a + &b) / &two;
            let left = self.count_half_open(&a, &mid);
            stack.push((mid.clone(), b, count - left));
            stack.push((a, mid, left));
        }
        out.retain(|r| !(r.is_exact() && &r.lo == hi));
        out.sort_by(|x, y| x.lo.cmp(&y.lo));
        out
    }

    /// Isolates every root in the closed interval `[lo, hi]`.
    pub fn isolate_closed(&self, lo: &Rational, hi: &Rational, width: &Rational) -> Vec<IsolatedRoot> {
        let p = self.polynomial();
        let mut out = Vec::new();
        if p.sign_at(lo) == Ordering::Equal {
            out.push(IsolatedRoot { lo: lo.clone(), hi: lo.clone() });
        }
        if lo < hi {
            out.extend(self.isolate_open(lo, hi, width));
            if p.sign_at(hi) == Ordering::Equal {
                out.push(IsolatedRoot { lo: hi.clone(), hi: hi.clone() });
            }
        }
        out
    }

    /// A rational bound `B` with every real root in `(-B, B)` (Cauchy).
    pub fn root_bound(&self) -> Rational {
        let p = self.polynomial();
        let Some(lc) = p.leading() else {
            return rational::int(1);
        };
        let lc_abs = Rational::from_integer(lc.abs());
        let max = p.coeffs()[..p.coeffs().len() - 1]
            .iter()
            .map(|c| Rational::from_integer(c.abs()))
            .max()
            .unwrap_or_else(Rational::zero);
        rational::int(1) + max / lc_abs + rational::int(1)
    }
}
