//! Composite Gauss–Legendre quadrature and deterministic summation.

use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;

/// Gauss–Legendre rule on `[-1, 1]`, applied piecewise.
#[derive(Debug, Clone)]
pub struct CompositeRule {
    pairs: Vec<(f64, f64)>,
}

impl CompositeRule {
    pub fn new(nodes: usize) -> Self {
        let n = NonZeroUsize::new(nodes.max(2)).expect("nonzero");
        let rule = GaussLegendre::new(n);
        CompositeRule {
            pairs: rule.as_node_weight_pairs().to_vec(),
        }
    }

    pub fn nodes(&self) -> usize {
        self.pairs.len()
    }

    /// Nodes and weights mapped onto `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.pairs.iter().map(move |&(x, w)| (mid + half * x, half * w))
    }

    /// `∫_a^b f` split into `pieces` equal subintervals.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, pieces: usize, mut f: F) -> f64 {
        let pieces = pieces.max(1);
        let h = (b - a) / pieces as f64;
        let parts: Vec<f64> = (0..pieces)
            .map(|p| {
                let lo = a + h * p as f64;
                let vals: Vec<f64> = self.mapped(lo, lo + h).map(|(x, w)| w * f(x)).collect();
                pairwise_sum(&vals)
            })
            .collect();
        pairwise_sum(&parts)
    }

    pub fn integrate_complex<F: FnMut(f64) -> Complex64>(
        &self,
        a: f64,
        b: f64,
        pieces: usize,
        mut f: F,
    ) -> Complex64 {
        let pieces = pieces.max(1);
        let h = (b - a) / pieces as f64;
        let parts: Vec<Complex64> = (0..pieces)
            .map(|p| {
                let lo = a + h * p as f64;
                let vals: Vec<Complex64> = self.mapped(lo, lo + h).map(|(x, w)| f(x) * w).collect();
                pairwise_sum_complex(&vals)
            })
            .collect();
        pairwise_sum_complex(&parts)
    }
}

/// Pairwise summation; the reduction tree depends only on the length.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    match v.len() {
        0 => 0.0,
        1..=8 => v.iter().sum(),
        n => pairwise_sum(&v[..n / 2]) + pairwise_sum(&v[n / 2..]),
    }
}

pub fn pairwise_sum_complex(v: &[Complex64]) -> Complex64 {
    match v.len() {
        0 => Complex64::new(0.0, 0.0),
        1..=8 => v.iter().sum(),
        n => pairwise_sum_complex(&v[..n / 2]) + pairwise_sum_complex(&v[n / 2..]),
    }
}

/// `e^{2πiθ}` with `θ` reduced modulo 1 first.
pub fn unit_phase(theta: f64) -> Complex64 {
    let r = theta - theta.round();
    let a = std::f64::consts::TAU * r;
    Complex64::new(a.cos(), a.sin())
}
