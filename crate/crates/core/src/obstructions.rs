//! Objects witnessing non-completeness and frame failure.
//!
//! Transform convention: `μ̂(x) = ∫ e^{-2πixt} dμ(t)`. A discrete measure
//! `Σ w_j δ_{t_j}` therefore represents `g(x) = Σ w_j e^{-2πixt_j}`, and
//! `g^{(γ)}(n) = Σ w_j (-2πit_j)^γ e^{-2πint_j}`.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::GammaSet;
use crate::linalg;
use crate::quadrature::{pairwise_sum, unit_phase, CompositeRule};
use crate::rational::{self, int, ratio, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParityCase {
    /// `#Γ_odd < #Γ_even`: `f = sin(πx) + Σ α_k sin((2k+1)πx)`.
    OddDeficient,
    /// `#Γ_odd ≥ #Γ_even`: `f = 1 + Σ α_k cos(2πkx)`.
    EvenDeficient,
}

impl std::fmt::Display for ParityCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ParityCase::OddDeficient => "odd_deficient",
            ParityCase::EvenDeficient => "even_deficient",
        })
    }
}

/// Trigonometric polynomial whose `Γ`-derivatives vanish on `ℤ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrigObstruction {
    pub parity_case: ParityCase,
    #[serde(with = "rational::serde_str_vec")]
    pub alphas: Vec<Rational>,
    pub gamma: GammaSet,
}

/// One term `c · trig(2πνx)` of the expansion.
#[derive(Debug, Clone, Copy)]
struct Wave {
    coeff: f64,
    /// Frequency `ν` in cycles per unit (`ω = 2πν`).
    nu: f64,
    sine: bool,
}

impl TrigObstruction {
    fn waves(&self) -> Vec<Wave> {
        let a = self.alphas.iter().map(rational::to_f64);
        match self.parity_case {
            ParityCase::EvenDeficient => std::iter::once(Wave { coeff: 1.0, nu: 0.0, sine: false })
                .chain(a.enumerate().map(|(k, c)| Wave { coeff: c, nu: (k + 1) as f64, sine: false }))
                .collect(),
            ParityCase::OddDeficient => std::iter::once(Wave { coeff: 1.0, nu: 0.5, sine: true })
                .chain(a.enumerate().map(|(k, c)| Wave {
                    coeff: c,
                    nu: (2 * k + 3) as f64 / 2.0,
                    sine: true,
                }))
                .collect(),
        }
    }

    /// `f^{(order)}(x)` from the closed-form expansion.
    pub fn derivative(&self, order: u32, x: f64) -> f64 {
        let terms: Vec<f64> = self
            .waves()
            .iter()
            .map(|w| {
                if w.nu == 0.0 {
                    return if order == 0 { w.coeff } else { 0.0 };
                }
                // d^m trig(ωx) = ω^m trig(ωx + mπ/2); phases in cycles.
                let theta = w.nu * x + order as f64 / 4.0 - if w.sine { 0.25 } else { 0.0 };
                let z = unit_phase(theta);
                w.coeff * (2.0 * PI * w.nu).powi(order as i32) * z.re
            })
            .collect();
        pairwise_sum(&terms)
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        self.derivative(0, x)
    }

    /// `Σ |c| ω^order`, the scale used to normalize residuals.
    pub fn derivative_scale(&self, order: u32) -> f64 {
        self.waves()
            .iter()
            .map(|w| {
                let base = if w.nu == 0.0 && order == 0 { 1.0 } else { (2.0 * PI * w.nu).powi(order as i32) };
                w.coeff.abs() * base
            })
            .sum()
    }

    /// Half-width of the spectral support.
    pub fn support_radius(&self) -> Rational {
        let m = self.alphas.len() as i64;
        match self.parity_case {
            ParityCase::EvenDeficient => int(m),
            ParityCase::OddDeficient => ratio(2 * m + 1, 2),
        }
    }

    /// Exact representing measure.
    pub fn rational_measure(&self) -> RationalMeasure {
        let half = ratio(1, 2);
        let mut atoms = Vec::new();
        match self.parity_case {
            ParityCase::EvenDeficient => {
                atoms.push(RationalAtom::real(Rational::zero(), Rational::one()));
                for (k, a) in self.alphas.iter().enumerate() {
                    let nu = int(k as i64 + 1);
                    atoms.push(RationalAtom::real(nu.clone(), a * &half));
                    atoms.push(RationalAtom::real(-nu, a * &half));
                }
            }
            ParityCase::OddDeficient => {
                // sin(2πνx) = (e^{2πiνx} - e^{-2πiνx}) / 2i: weight i/2 at +ν, -i/2 at -ν.
                let coeffs = std::iter::once(Rational::one()).chain(self.alphas.iter().cloned());
                for (k, a) in coeffs.enumerate() {
                    let nu = ratio(2 * k as i64 + 1, 2);
                    atoms.push(RationalAtom::imaginary(nu.clone(), &a * &half));
                    atoms.push(RationalAtom::imaginary(-nu, -(&a * &half)));
                }
            }
        }
        atoms.retain(|a| !(a.re.is_zero() && a.im.is_zero()));
        atoms.sort_by(|x, y| x.location.cmp(&y.location));
        RationalMeasure { atoms }
    }
}

/// Solves the interpolation system making `f^{(γ)}(n) = 0` for `γ ∈ Γ`,
/// `n ∈ ℤ`. Powers of `2π` factor out of each row, leaving an exact
/// generalized Vandermonde system in positive integer nodes.
pub fn solve_obstruction(gamma: &GammaSet) -> Result<TrigObstruction> {
    if !gamma.contains_zero() {
        return Err(Error::InvalidGamma("0 must belong to Γ".into()));
    }
    let split = gamma.parity_split();
    let (case, rows, nodes, rhs): (ParityCase, Vec<u32>, Vec<i64>, Box<dyn Fn(u32) -> Rational>) =
        if split.odd.len() < split.even.len() {
            let m = split.odd.len() as i64;
            (
                ParityCase::OddDeficient,
                split.odd.clone(),
                (1..=m).map(|k| 2 * k + 1).collect(),
                Box::new(|_| int(-1)),
            )
        } else {
            let m = split.even.len() as i64;
            (
                ParityCase::EvenDeficient,
                split.even.clone(),
                (1..=m).collect(),
                Box::new(|g| if g == 0 { int(-1) } else { Rational::zero() }),
            )
        };
    let a: Vec<Vec<Rational>> = rows
        .iter()
        .map(|&g| nodes.iter().map(|&k| rational::pow(&int(k), g)).collect())
        .collect();
    let b: Vec<Rational> = rows.iter().map(|&g| rhs(g)).collect();
    let alphas = if a.is_empty() {
        Vec::new()
    } else {
        debug_assert!(!linalg::rational_det(&a).is_zero());
        linalg::solve(&a, &b).ok_or_else(|| Error::Precondition("singular interpolation system".into()))?
    };
    Ok(TrigObstruction {
        parity_case: case,
        alphas,
        gamma: gamma.clone(),
    })
}

/// `max_{γ∈Γ, |n|≤n_range} |f^{(γ)}(n)| / Σ_k |α_k| ω_k^γ`.
pub fn residual_interpolation(f: &TrigObstruction, n_range: i64) -> f64 {
    let mut worst = 0.0f64;
    for g in f.gamma.iter() {
        let scale = f.derivative_scale(g);
        if scale == 0.0 {
            continue;
        }
        for n in -n_range..=n_range {
            worst = worst.max(f.derivative(g, n as f64).abs() / scale);
        }
    }
    worst
}

pub fn to_measure(f: &TrigObstruction) -> DiscreteMeasure {
    f.rational_measure().to_discrete()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub location: f64,
    pub weight: Complex64,
}

/// Finite sum of point masses with complex weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscreteMeasure {
    pub atoms: Vec<Atom>,
}

impl DiscreteMeasure {
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        let mut locs: Vec<f64> = atoms.iter().map(|a| a.location).collect();
        locs.sort_by(|a, b| a.total_cmp(b));
        if locs.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Precondition("atom locations must be distinct".into()));
        }
        if locs.iter().any(|x| !x.is_finite()) {
            return Err(Error::Precondition("atom locations must be finite".into()));
        }
        Ok(DiscreteMeasure { atoms })
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.iter().all(|a| a.weight == Complex64::new(0.0, 0.0))
    }

    pub fn support_radius(&self) -> f64 {
        self.atoms.iter().fold(0.0, |acc, a| acc.max(a.location.abs()))
    }

    /// `g^{(order)}(x) = Σ w_j (-2πit_j)^order e^{-2πixt_j}`.
    pub fn transform_derivative(&self, order: u32, x: f64) -> Complex64 {
        let terms: Vec<Complex64> = self
            .atoms
            .iter()
            .map(|a| {
                let factor = Complex64::new(0.0, -2.0 * PI * a.location).powu(order);
                a.weight * factor * unit_phase(-x * a.location)
            })
            .collect();
        crate::quadrature::pairwise_sum_complex(&terms)
    }
}

/// Exact counterpart of [`Atom`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalAtom {
    #[serde(with = "rational::serde_str")]
    pub location: Rational,
    #[serde(with = "rational::serde_str")]
    pub re: Rational,
    #[serde(with = "rational::serde_str")]
    pub im: Rational,
}

impl RationalAtom {
    pub fn real(location: Rational, re: Rational) -> Self {
        RationalAtom { location, re, im: Rational::zero() }
    }

    pub fn imaginary(location: Rational, im: Rational) -> Self {
        RationalAtom { location, re: Rational::zero(), im }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalMeasure {
    pub atoms: Vec<RationalAtom>,
}

impl RationalMeasure {
    pub fn to_discrete(&self) -> DiscreteMeasure {
        DiscreteMeasure {
            atoms: self
                .atoms
                .iter()
                .map(|a| Atom {
                    location: rational::to_f64(&a.location),
                    weight: Complex64::new(rational::to_f64(&a.re), rational::to_f64(&a.im)),
                })
                .collect(),
        }
    }

    pub fn support_radius(&self) -> Rational {
        self.atoms
            .iter()
            .map(|a| a.location.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Exact moments `Σ_j w_j t_j^γ` (real and imaginary parts) for `γ ∈ Γ`.
    pub fn moments(&self, gamma: &GammaSet) -> Vec<(Rational, Rational)> {
        gamma
            .iter()
            .map(|g| {
                self.atoms.iter().fold((Rational::zero(), Rational::zero()), |(re, im), a| {
                    let p = rational::pow(&a.location, g);
                    (re + &a.re * &p, im + &a.im * &p)
                })
            })
            .collect()
    }

    /// For atoms on a unit-spaced grid `α + j`, `e^{-2πin(α+j)}` is a common
    /// factor, so vanishing moments give orthogonality for every `n`.
    pub fn exact_residual_is_zero(&self, gamma: &GammaSet) -> bool {
        self.moments(gamma).iter().all(|(re, im)| re.is_zero() && im.is_zero())
    }
}

/// `max_{γ, |n|≤n_range} |Σ_j w_j t_j^γ e^{-2πint_j}| / Σ_j |w_j| |t_j|^γ`.
pub fn orthogonality_residual(m: &DiscreteMeasure, gamma: &GammaSet, n_range: i64) -> f64 {
    let mut worst = 0.0f64;
    for g in gamma.iter() {
        let scale: f64 = m.atoms.iter().map(|a| a.weight.norm() * a.location.abs().powi(g as i32)).sum();
        if scale == 0.0 {
            continue;
        }
        for n in -n_range..=n_range {
            let terms: Vec<Complex64> = m
                .atoms
                .iter()
                .map(|a| a.weight * a.location.powi(g as i32) * unit_phase(-(n as f64) * a.location))
                .collect();
            worst = worst.max(crate::quadrature::pairwise_sum_complex(&terms).norm() / scale);
        }
    }
    worst
}

/// Nonzero measure on `{α, α+1, …, α+N}` annihilating `t^γ`, `γ ∈ Γ`.
///
/// Weights are the first null-space basis vector of the exact `N × (N+1)`
/// system, scaled to coprime integers with positive leading entry.
pub fn grid_null_measure(gamma: &GammaSet, alpha: &Rational) -> RationalMeasure {
    let n = gamma.len();
    let points: Vec<Rational> = (0..=n as i64).map(|j| alpha + int(j)).collect();
    let a: Vec<Vec<Rational>> = gamma
        .iter()
        .map(|g| points.iter().map(|p| rational::pow(p, g)).collect())
        .collect();
    let basis = linalg::null_space(&a, n + 1);
    let w = linalg::primitive_integer(basis.first().expect("N x (N+1) system has a null vector"));
    RationalMeasure {
        atoms: points.into_iter().zip(w).map(|(p, x)| RationalAtom::real(p, x)).collect(),
    }
}

/// `s^{(m)}(y)` for `s(y) = sin(y)/y`.
pub fn sinc_derivative_unscaled(m: u32, y: f64) -> f64 {
    if y.abs() <= 40.0 {
        // s(y) = ∫_0^1 cos(yu) du, so s^{(m)}(y) = ∫_0^1 u^m cos(yu + mπ/2) du.
        thread_local! {
            static RULE: CompositeRule = CompositeRule::new(64);
        }
        RULE.with(|q| {
            q.integrate(0.0, 1.0, 1, |u| u.powi(m as i32) * (y * u + m as f64 * PI / 2.0).cos())
        })
    } else {
        let mut sum = 0.0;
        let mut binom = 1.0;
        let mut fact = 1.0;
        for j in 0..=m {
            if j > 0 {
                binom *= (m - j + 1) as f64 / j as f64;
                fact *= j as f64;
            }
            let trig = (y + (m - j) as f64 * PI / 2.0).sin();
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sum += binom * trig * sign * fact / y.powi(j as i32 + 1);
        }
        sum
    }
}

/// `φ^{(m)}(x)` for `φ(x) = sin(πrx)/(πrx)`.
pub fn sinc_derivative(m: u32, r: f64, x: f64) -> f64 {
    let c = PI * r;
    c.powi(m as i32) * sinc_derivative_unscaled(m, c * x)
}

/// `Σ_{|n|≤n_range} |φ^{(j)}(n)|²`.
pub fn sinc_derivative_energy(j: u32, r: f64, n_range: i64) -> f64 {
    let terms: Vec<f64> = (-n_range..=n_range).map(|n| sinc_derivative(j, r, n as f64).powi(2)).collect();
    pairwise_sum(&terms)
}

/// Full-lattice value `Σ_{n∈ℤ} |φ^{(j)}(n)|² = ‖φ^{(j)}‖² = (πr)^{2j} / ((2j+1) r)`,
/// valid for `0 < r < 1`.
pub fn sinc_derivative_energy_exact(j: u32, r: f64) -> f64 {
    (PI * r).powi(2 * j as i32) / ((2 * j + 1) as f64 * r)
}

/// Fitted constants for `Σ_{|n|≤n_range} |φ^{(j)}(n)|² ≤ C^j r^j`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SincEnergyFit {
    /// `(j, r, energy, (energy / r^j)^{1/j})` rows.
    pub rows: Vec<(u32, f64, f64, f64)>,
    pub fitted_c: f64,
}

pub fn fit_sinc_energy(orders: &[u32], radii: &[f64], n_range: i64) -> SincEnergyFit {
    let mut rows = Vec::new();
    let mut fitted_c = 0.0f64;
    for &j in orders.iter().filter(|&&j| j > 0) {
        for &r in radii {
            let e = sinc_derivative_energy(j, r, n_range);
            let c = (e / r.powi(j as i32)).powf(1.0 / j as f64);
            fitted_c = fitted_c.max(c);
            rows.push((j, r, e, c));
        }
    }
    SincEnergyFit { rows, fitted_c }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MollifiedRatio {
    pub r: f64,
    pub n_range: i64,
    pub ratio: f64,
    /// `Σ_{|n|≤n_range} Σ_{γ∈Γ} |(gφ)^{(γ)}(n)|²`.
    pub numerator: f64,
    /// `‖gφ‖²` via Plancherel.
    pub norm_sq: f64,
    /// `∫_{-L}^{L} |gφ|²` by composite Gauss–Legendre.
    pub norm_sq_quadrature: f64,
    /// Truncation half-width `L`.
    pub truncation: f64,
    /// Upper bound for `∫_{|x|>L} |gφ|²`.
    pub tail_bound: f64,
    pub orthogonality_residual: f64,
}

/// Frame-lower-bound ratio for `f = gφ`, where `g` is the transform of an
/// orthogonal measure and `φ(x) = sin(πrx)/(πrx)`.
///
/// `(gφ)^{(γ)}(n) = Σ_i C(γ,i) g^{(i)}(n) φ^{(γ-i)}(n)`; terms with `i ∈ Γ`
/// vanish by orthogonality and are dropped.
pub fn mollified_frame_ratio(
    m: &DiscreteMeasure,
    gamma: &GammaSet,
    r: f64,
    n_range: i64,
    tolerance: f64,
) -> Result<MollifiedRatio> {
    if !(r > 0.0 && r < 0.5) {
        return Err(Error::Precondition(format!("need 0 < r < 1/2, got {r}")));
    }
    let resid = orthogonality_residual(m, gamma, n_range.max(8));
    if !(resid <= tolerance) {
        return Err(Error::NotOrthogonal(resid));
    }
    let mut terms = Vec::new();
    for n in -n_range..=n_range {
        let x = n as f64;
        for g in gamma.iter() {
            let mut acc = Complex64::new(0.0, 0.0);
            let mut binom = 1.0;
            for i in 0..=g {
                if i > 0 {
                    binom *= (g - i + 1) as f64 / i as f64;
                }
                if gamma.exponents().binary_search(&i).is_ok() {
                    continue;
                }
                acc += m.transform_derivative(i, x) * binom * sinc_derivative(g - i, r, x);
            }
            terms.push(acc.norm_sqr());
        }
    }
    let numerator = pairwise_sum(&terms);

    // Plancherel: gφ is the transform of Σ w_j 1_{|t - t_j| < r/2} / r.
    let mut norm_sq = 0.0;
    for a in &m.atoms {
        for b in &m.atoms {
            let overlap = (r - (a.location - b.location).abs()).max(0.0);
            norm_sq += (a.weight * b.weight.conj()).re * overlap;
        }
    }
    norm_sq /= r * r;

    // |gφ(x)|² ≤ W² / (πrx)², so the tail beyond L is at most 2W² / (π²r²L).
    let w: f64 = m.atoms.iter().map(|a| a.weight.norm()).sum();
    let target = 1e-2 * norm_sq;
    let truncation = (2.0 * w * w / (PI * PI * r * r * target)).ceil().max(1.0);
    let tail_bound = 2.0 * w * w / (PI * PI * r * r * truncation);
    let rule = CompositeRule::new(16);
    let pieces = (2.0 * truncation * (1.0 + m.support_radius())).ceil() as usize;
    let norm_sq_quadrature = rule.integrate(-truncation, truncation, pieces, |x| {
        (m.transform_derivative(0, x) * sinc_derivative(0, r, x)).norm_sqr()
    });

    Ok(MollifiedRatio {
        r,
        n_range,
        ratio: numerator / norm_sq,
        numerator,
        norm_sq,
        norm_sq_quadrature,
        truncation,
        tail_bound,
        orthogonality_residual: resid,
    })
}
