//! Frame bounds, completeness decisions and radius scans.
//!
//! For `F ∈ L²(a,b)` write `F_j(t) = F(t+j)` on `(a, a+1)`. Then
//! `Σ_n Σ_γ |⟨F, t^γ e^{2πint}⟩|² = ∫_a^{a+1} ‖V_k(t) (F_0(t), …, F_{k-1}(t))‖² dt`
//! where `V_k(t)` is the `#Γ × k` matrix with entries `(t+j)^{γ_i}`. Frame
//! bounds are therefore extremes of `σ(V_k(t))²` over `t`, and frame failure
//! happens exactly where `V_k(t)` loses column rank.

use nalgebra::DMatrix;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::gamma::GammaSet;
use crate::linalg;
use crate::quadrature::{pairwise_sum_complex, unit_phase, CompositeRule};
use crate::rational::{self, int, ratio, Rational};
use crate::sturm::{IsolatedRoot, SturmChain};
use crate::vandermonde::{isolation_width, rank_drop_polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    #[serde(with = "rational::serde_str")]
    pub a: Rational,
    #[serde(with = "rational::serde_str")]
    pub b: Rational,
}

impl Interval {
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        if a >= b {
            return Err(Error::Precondition(format!("interval needs a < b, got ({a}, {b})")));
        }
        Ok(Interval { a, b })
    }

    /// `(-h, h)`.
    pub fn symmetric(h: Rational) -> Result<Self> {
        Interval::new(-h.clone(), h)
    }

    pub fn length(&self) -> Rational {
        &self.b - &self.a
    }
}

impl std::str::FromStr for Interval {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let v = rational::parse_rational_list(s)?;
        if v.len() != 2 {
            return Err(Error::Parse { what: "interval", input: s.to_string() });
        }
        let mut it = v.into_iter();
        Interval::new(it.next().unwrap(), it.next().unwrap())
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{},{}", self.a, self.b)
    }
}

/// Complete in `L²(a,b)` iff `b - a ≤ #Γ`.
pub fn complete_l2(gamma: &GammaSet, iv: &Interval) -> bool {
    iv.length() <= int(gamma.len() as i64)
}

/// Complete in `C([-a,a])` iff `a < r(Γ)`.
pub fn complete_c_symmetric(gamma: &GammaSet, a: &Rational) -> Result<bool> {
    if !gamma.contains_zero() {
        return Err(Error::InvalidGamma("0 must belong to Γ".into()));
    }
    Ok(*a < gamma.r_gamma())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Frame,
    NoFrame,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Frame => "frame",
            Verdict::NoFrame => "no_frame",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// A `t`-range on which `V_k(t)` with `columns` columns is scanned.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Regime {
    #[serde(with = "rational::serde_str")]
    pub lo: Rational,
    #[serde(with = "rational::serde_str")]
    pub hi: Rational,
    pub columns: usize,
    pub lower: f64,
    pub upper: f64,
    pub min_location: f64,
}

/// Exact shift where the regime matrix loses column rank.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub columns: usize,
    /// The rank-drop polynomial in the shift variable `s`.
    pub polynomial: String,
    pub root: IsolatedRoot,
    pub sigma_min_at_root: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameEstimate {
    pub lower: f64,
    pub upper: f64,
    pub grid_step: f64,
    pub min_location: f64,
    pub verdict: Verdict,
    pub regimes: Vec<Regime>,
    /// `None` when `#Γ` exceeds the symbolic cap and no exact search ran.
    pub certificates: Option<Vec<Certificate>>,
    pub reason: String,
}

/// `(σ_min, σ_max)` of the `#Γ × k` matrix `((t+j)^{γ_i})`.
pub fn sigma_extremes(gamma: &GammaSet, t: f64, k: usize) -> (f64, f64) {
    let n = gamma.len();
    let mut m = DMatrix::<f64>::zeros(n, k);
    for (i, g) in gamma.iter().enumerate() {
        for j in 0..k {
            m[(i, j)] = (t + j as f64).powi(g as i32);
        }
    }
    let scale = m.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    if scale == 0.0 {
        return (0.0, 0.0);
    }
    m /= scale;
    let sv = linalg::singular_values(&m);
    let min = if k <= n { sv[k - 1] } else { 0.0 };
    (min * scale, sv[0] * scale)
}

fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step).ceil().max(1.0) as usize;
    (0..=n).map(|i| if i == n { hi } else { lo + step * i as f64 }).collect()
}

/// Deterministic scan: returns `(min σ_min², argmin, max σ_max²)`.
fn scan(gamma: &GammaSet, pts: &[f64], k: usize) -> (f64, f64, f64) {
    let vals: Vec<(f64, f64)> = pts.par_iter().map(|&t| sigma_extremes(gamma, t, k)).collect();
    let mut lower = f64::INFINITY;
    let mut at = pts[0];
    let mut upper = 0.0f64;
    for (&t, &(smin, smax)) in pts.iter().zip(&vals) {
        if smin * smin < lower {
            lower = smin * smin;
            at = t;
        }
        upper = upper.max(smax * smax);
    }
    (lower, at, upper)
}

fn scan_regime(gamma: &GammaSet, lo: &Rational, hi: &Rational, k: usize, step: f64, refinements: u32) -> Regime {
    let (flo, fhi) = (rational::to_f64(lo), rational::to_f64(hi));
    let (mut lower, mut at, upper) = scan(gamma, &grid(flo, fhi, step), k);
    let mut h = step;
    for _ in 0..refinements {
        let (a, b) = ((at - h).max(flo), (at + h).min(fhi));
        h /= 3.0;
        let (l, t, _) = scan(gamma, &grid(a, b, h), k);
        if l < lower {
            lower = l;
            at = t;
        }
    }
    Regime {
        lo: lo.clone(),
        hi: hi.clone(),
        columns: k,
        lower,
        upper,
        min_location: at,
    }
}

/// `(t-range, columns)` pairs of the decomposition of `(a, b)`.
pub fn regimes(iv: &Interval) -> Vec<(Rational, Rational, usize)> {
    let len = iv.length();
    let k = rational::ceil(&len);
    let k: usize = k.try_into().expect("interval length fits in usize");
    let a = iv.a.clone();
    if len.is_integer() {
        return vec![(a.clone(), a + int(1), k)];
    }
    let delta = &len - int(k as i64 - 1);
    let mid = &a + &delta;
    let mut out = vec![(a.clone(), mid.clone(), k)];
    if k > 1 {
        out.push((mid, a + int(1), k - 1));
    }
    out
}

/// Lower and upper frame bounds of `E(ℤ,Γ)` on `L²(a,b)`.
pub fn frame_bounds(gamma: &GammaSet, iv: &Interval, grid_step: f64, cfg: &Config) -> FrameEstimate {
    let n = gamma.len();
    let parts = regimes(iv);
    let mut regs: Vec<Regime> = parts
        .iter()
        .map(|(lo, hi, k)| scan_regime(gamma, lo, hi, *k, grid_step, cfg.grid_refinements))
        .collect();

    let too_long = iv.length() > int(n as i64);
    let certificates = if n <= cfg.det_in_s_cap && !too_long {
        let width = isolation_width(cfg.root_width_log2);
        let mut certs = Vec::new();
        for (reg, (lo, hi, k)) in regs.iter_mut().zip(&parts) {
            let p = rank_drop_polynomial(gamma, *k, cfg.det_in_s_cap).expect("size checked against cap");
            if p.is_constant() {
                continue;
            }
            let chain = SturmChain::new(&p);
            for root in chain.isolate_closed(lo, hi, &width) {
                let t = root.approx();
                let (smin, _) = sigma_extremes(gamma, t, *k);
                if smin * smin < reg.lower {
                    reg.lower = smin * smin;
                    reg.min_location = t;
                }
                certs.push(Certificate {
                    columns: *k,
                    polynomial: poly_in_s(&p),
                    root,
                    sigma_min_at_root: smin,
                });
            }
        }
        Some(certs)
    } else {
        None
    };

    let (mut lower, mut min_location) = (f64::INFINITY, 0.0);
    let mut upper = 0.0f64;
    for r in &regs {
        if r.lower < lower {
            lower = r.lower;
            min_location = r.min_location;
        }
        upper = upper.max(r.upper);
    }
    if too_long {
        lower = 0.0;
    }

    let (verdict, reason) = if too_long {
        (Verdict::NoFrame, format!("length exceeds #Γ = {n}: not complete"))
    } else if let Some(certs) = &certificates {
        if certs.is_empty() {
            (Verdict::Frame, "no rank drop on the closed regime windows".to_string())
        } else if lower < cfg.failure_threshold * upper {
            (Verdict::NoFrame, format!("{} exact rank-drop shift(s) in range", certs.len()))
        } else {
            (Verdict::Inconclusive, "certified root but grid minimum not small".to_string())
        }
    } else if lower < cfg.failure_threshold * upper {
        (Verdict::NoFrame, "grid minimum below failure threshold".to_string())
    } else if lower >= cfg.frame_threshold * upper {
        (Verdict::Frame, "grid minimum above frame threshold".to_string())
    } else {
        (Verdict::Inconclusive, "grid minimum between thresholds".to_string())
    };

    FrameEstimate {
        lower,
        upper,
        grid_step,
        min_location,
        verdict,
        regimes: regs,
        certificates,
        reason,
    }
}

fn poly_in_s(p: &crate::sturm::IntPoly) -> String {
    let lp = crate::lacunary::LacunaryPolynomial::from_terms(
        p.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u32, Rational::from_integer(c.clone()))),
    );
    lp.to_string().replace('x', "s")
}

/// `σ_min(V_k(t))` sampled on each regime, for plotting.
pub fn sigma_min_profile(gamma: &GammaSet, iv: &Interval, grid_step: f64) -> Vec<(usize, Vec<(f64, f64)>)> {
    regimes(iv)
        .into_iter()
        .map(|(lo, hi, k)| {
            let pts = grid(rational::to_f64(&lo), rational::to_f64(&hi), grid_step);
            let vals = pts.par_iter().map(|&t| (t, sigma_extremes(gamma, t, k).0)).collect();
            (k, vals)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadiusScan {
    /// Largest tested half-length with verdict `frame`.
    #[serde(with = "rational::serde_str")]
    pub radius: Rational,
    /// Smallest tested half-length without verdict `frame`.
    #[serde(with = "rational::serde_str")]
    pub upper: Rational,
    pub steps: usize,
    pub inconclusive: usize,
}

/// Bisection on `a` of `frame_bounds(Γ, (-a, a))`.
///
/// The search runs over dyadic rationals in `[0, 2^m]` with `2^m > #Γ/2`,
/// so half-integer radii are hit exactly.
pub fn frame_radius_scan(gamma: &GammaSet, resolution: f64, cfg: &Config) -> Result<RadiusScan> {
    if !gamma.contains_zero() {
        return Err(Error::InvalidGamma("0 must belong to Γ".into()));
    }
    if !(resolution > 0.0) {
        return Err(Error::Precondition("resolution must be positive".into()));
    }
    let half = gamma.half_cardinality();
    let mut hi = Rational::one();
    while hi <= half {
        hi *= int(2);
    }
    let mut lo = Rational::zero();
    let res = rational::from_f64(resolution).expect("finite resolution");
    let (mut steps, mut inconclusive) = (0, 0);
    while &hi - &lo > res {
        let mid = (&lo + &hi) / int(2);
        let est = frame_bounds(gamma, &Interval::symmetric(mid.clone())?, cfg.grid_step, cfg);
        steps += 1;
        match est.verdict {
            Verdict::Frame => lo = mid,
            Verdict::NoFrame => hi = mid,
            Verdict::Inconclusive => {
                inconclusive += 1;
                hi = mid;
            }
        }
    }
    Ok(RadiusScan { radius: lo, upper: hi, steps, inconclusive })
}

/// `sup{a : complete in L²(-a, a)}`, found by a breakpoint scan on
/// half-integers (the decision only changes there).
pub fn cr_scan(gamma: &GammaSet) -> Rational {
    let mut h = Rational::zero();
    loop {
        let next = &h + ratio(1, 2);
        let iv = Interval::symmetric(next.clone()).expect("positive half-length");
        if !complete_l2(gamma, &iv) {
            return h;
        }
        h = next;
    }
}

/// `sup{a : complete in C([-a, a])}`, by the same breakpoint scan.
pub fn crc_scan(gamma: &GammaSet) -> Result<Rational> {
    let mut h = Rational::zero();
    while complete_c_symmetric(gamma, &h)? {
        h += ratio(1, 2);
    }
    Ok(h)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessSample {
    pub t: f64,
    /// `F_0(t), …, F_N(t)`.
    pub components: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pairing {
    pub gamma: u32,
    pub n: i64,
    pub re: f64,
    pub im: f64,
}

/// `F(u) = Σ_{j=0}^{N} F_j(u - j)` with `F_N = 1_I` and the other components
/// solving `V(t) (F_0, …, F_{N-1})ᵀ = -((t+N)^γ)_γ` on `I`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseWitness {
    pub gamma: GammaSet,
    pub interval: Interval,
    pub base: (f64, f64),
    pub delta: f64,
    /// The subinterval `I` carrying every component.
    pub support: (f64, f64),
    pub det_max: f64,
    pub samples: Vec<WitnessSample>,
    pub pairings: Vec<Pairing>,
    pub max_pairing: f64,
    pub norm: f64,
    pub norm_last: f64,
}

fn square_matrix(gamma: &GammaSet, t: f64) -> DMatrix<f64> {
    let n = gamma.len();
    DMatrix::from_fn(n, n, |i, j| (t + j as f64).powi(gamma.exponents()[i] as i32))
}

/// `(F_0(t), …, F_{N-1}(t), 1)` for `t ∈ I`.
fn components(gamma: &GammaSet, t: f64) -> Option<Vec<f64>> {
    let n = gamma.len();
    let rhs = nalgebra::DVector::from_fn(n, |i, _| -(t + n as f64).powi(gamma.exponents()[i] as i32));
    let sol = square_matrix(gamma, t).lu().solve(&rhs)?;
    let mut v: Vec<f64> = sol.iter().copied().collect();
    v.push(1.0);
    Some(v)
}

impl PiecewiseWitness {
    /// `F(u)` in the original variable.
    pub fn eval(&self, u: f64) -> f64 {
        let (lo, hi) = self.support;
        let n = self.gamma.len();
        for j in 0..=n {
            let t = u - j as f64;
            if t >= lo && t <= hi {
                return components(&self.gamma, t).map_or(0.0, |c| c[j]);
            }
        }
        0.0
    }
}

/// Builds a nonzero `F ∈ L²(a,b)` orthogonal to `E(ℤ,Γ)` when `b - a > #Γ`.
pub fn noncompleteness_witness(gamma: &GammaSet, iv: &Interval, cfg: &Config) -> Result<PiecewiseWitness> {
    let n = gamma.len();
    let excess = iv.length() - int(n as i64);
    if excess <= Rational::zero() {
        return Err(Error::Precondition(format!("need b - a > #Γ = {n}")));
    }
    let delta = if excess >= Rational::one() { 0.5 } else { rational::to_f64(&excess) };
    let a = rational::to_f64(&iv.a);

    // |det V(t)| on the window (a, a+δ).
    let step = cfg.witness_grid_step.min(delta / 8.0);
    let pts = grid(a, a + delta, step);
    let dets: Vec<f64> = pts.par_iter().map(|&t| square_matrix(gamma, t).determinant().abs()).collect();
    let det_max = dets.iter().cloned().fold(0.0, f64::max);
    if det_max == 0.0 {
        return Err(Error::GridTooCoarse("determinant vanishes on every sample".into()));
    }

    // Largest dyadic subinterval of the window on which every sample keeps
    // |det| ≥ max/2.
    let mut support = None;
    'outer: for q in 0..30u32 {
        let len = delta / f64::from(1u32 << q.min(31));
        if len < 4.0 * step {
            break;
        }
        for p in 0..(1u64 << q) {
            let lo = a + len * p as f64;
            let hi = lo + len;
            let inside: Vec<f64> = pts
                .iter()
                .zip(&dets)
                .filter(|(t, _)| **t >= lo && **t <= hi)
                .map(|(_, d)| *d)
                .collect();
            if inside.len() >= 2 && inside.iter().all(|d| *d >= 0.5 * det_max) {
                support = Some((lo, hi));
                break 'outer;
            }
        }
    }
    let support = support.ok_or_else(|| Error::GridTooCoarse("no dyadic subinterval keeps |det| >= max/2".into()))?;

    let samples: Vec<WitnessSample> = grid(support.0, support.1, step)
        .into_iter()
        .filter_map(|t| components(gamma, t).map(|c| WitnessSample { t, components: c }))
        .collect();

    let mut w = PiecewiseWitness {
        gamma: gamma.clone(),
        interval: iv.clone(),
        base: (a, a + 1.0),
        delta,
        support,
        det_max,
        samples,
        pairings: Vec::new(),
        max_pairing: 0.0,
        norm: 0.0,
        norm_last: 0.0,
    };

    // Gauss–Legendre on each translate I + j, in the original variable.
    let rule = CompositeRule::new(cfg.quad_nodes_per_unit);
    let (lo, hi) = support;
    let mut norm_sq = 0.0;
    for j in 0..=n {
        let s = j as f64;
        norm_sq += rule.integrate(lo + s, hi + s, 1, |u| w.eval(u).powi(2));
    }
    w.norm = norm_sq.sqrt();
    w.norm_last = (hi - lo).sqrt();

    let n_range = 10i64;
    for g in gamma.iter() {
        for m in -n_range..=n_range {
            let parts: Vec<num_complex::Complex64> = (0..=n)
                .map(|j| {
                    let s = j as f64;
                    rule.integrate_complex(lo + s, hi + s, 1, |u| {
                        unit_phase(-(m as f64) * u) * (w.eval(u) * u.powi(g as i32))
                    })
                })
                .collect();
            let z = pairwise_sum_complex(&parts);
            w.max_pairing = w.max_pairing.max(z.norm());
            w.pairings.push(Pairing { gamma: g, n: m, re: z.re, im: z.im });
        }
    }
    Ok(w)
}
