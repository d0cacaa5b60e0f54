use std::f64::consts::PI;

use lacunaria::Error;
use lacunaria::GammaSet;
use lacunaria::Rational;
use lacunaria::linalg;
use lacunaria::obstructions::*;
use lacunaria::rational::{int, ratio};
use lacunaria::rational;
use num_complex::Complex64;
use num_traits::Zero;
use proptest::prelude::*;

fn g(s: &str) -> GammaSet {
    s.parse().unwrap()
}

fn q(s: &str) -> Rational {
    rational::parse_rational(s).unwrap()
}

#[test]
fn obstruction_examples() {
    let f = solve_obstruction(&g("0,1")).unwrap();
    assert_eq!(f.parity_case, ParityCase::EvenDeficient);
    assert_eq!(f.alphas, vec![int(-1)]);

    let f = solve_obstruction(&g("0,1,2,3")).unwrap();
    assert_eq!(f.parity_case, ParityCase::EvenDeficient);
    assert_eq!(f.alphas, vec![ratio(-4, 3), ratio(1, 3)]);

    let f = solve_obstruction(&g("0,2")).unwrap();
    assert_eq!(f.parity_case, ParityCase::OddDeficient);
    assert!(f.alphas.is_empty());

    let f = solve_obstruction(&g("0,1,2")).unwrap();
    assert_eq!(f.parity_case, ParityCase::OddDeficient);
    assert_eq!(f.alphas, vec![ratio(-1, 3)]);

    assert!(solve_obstruction(&g("1,2")).is_err());
}

#[test]
fn two_by_two_elimination_oracle() {
    // α₁ + α₂ = -1 and 4π²α₁ + 16π²α₂ = 0, eliminated by hand.
    // second row gives α₁ = -4α₂, so -3α₂ = -1.
    let a2 = 1.0 / 3.0;
    let a1 = -4.0 * a2;
    let f = solve_obstruction(&g("0,1,2,3")).unwrap();
    assert!((rational::to_f64(&f.alphas[0]) - a1).abs() < 1e-15);
    assert!((rational::to_f64(&f.alphas[1]) - a2).abs() < 1e-15);
    assert!(f.evaluate(0.0).abs() < 1e-15);
    assert!(f.derivative(2, 0.0).abs() < 1e-12);
}

#[test]
fn residual_examples() {
    assert!(residual_interpolation(&solve_obstruction(&g("0,2")).unwrap(), 5) <= 1e-12);
    assert!(residual_interpolation(&solve_obstruction(&g("0,1,2,3")).unwrap(), 5) <= 1e-9);
    assert!(residual_interpolation(&solve_obstruction(&g("0,1")).unwrap(), 8) <= 1e-12);
}

#[test]
fn residual_detects_wrong_coefficients() {
    let mut f = solve_obstruction(&g("0,1,2,3")).unwrap();
    f.alphas[1] = ratio(1, 2);
    assert!(residual_interpolation(&f, 3) > 1e-2);
}

#[test]
fn derivative_matches_finite_differences() {
    let f = solve_obstruction(&g("0,1,2,4,5")).unwrap();
    let h = 1e-5;
    for &x in &[0.1, 0.37, 1.9] {
        for order in 0..3 {
            let fd = (f.derivative(order, x + h) - f.derivative(order, x - h)) / (2.0 * h);
            let exact = f.derivative(order + 1, x);
            assert!((fd - exact).abs() < 1e-5 * (1.0 + exact.abs()), "{order} {x}");
        }
    }
}

#[test]
fn measure_examples() {
    let m = solve_obstruction(&g("0,1")).unwrap().rational_measure();
    let expect = vec![
        RationalAtom::real(int(-1), ratio(-1, 2)),
        RationalAtom::real(int(0), int(1)),
        RationalAtom::real(int(1), ratio(-1, 2)),
    ];
    assert_eq!(m.atoms, expect);
    assert_eq!(m.support_radius(), g("0,1").r_gamma());

    let m = solve_obstruction(&g("0,2")).unwrap().rational_measure();
    assert_eq!(
        m.atoms,
        vec![
            RationalAtom::imaginary(ratio(-1, 2), ratio(-1, 2)),
            RationalAtom::imaginary(ratio(1, 2), ratio(1, 2)),
        ]
    );

    let m = solve_obstruction(&g("0,1,2,3")).unwrap().rational_measure();
    let locs: Vec<Rational> = m.atoms.iter().map(|a| a.location.clone()).collect();
    assert_eq!(locs, vec![int(-2), int(-1), int(0), int(1), int(2)]);
    let w: Vec<Rational> = m.atoms.iter().map(|a| a.re.clone()).collect();
    assert_eq!(w, vec![ratio(1, 6), ratio(-2, 3), int(1), ratio(-2, 3), ratio(1, 6)]);
}

#[test]
fn measure_reproduces_function() {
    for s in ["0,1,2,3", "0,2", "0,1,2", "0,2,3,4,6"] {
        let f = solve_obstruction(&g(s)).unwrap();
        let m = to_measure(&f);
        for &x in &[0.0, 0.3, -1.7, 2.25] {
            let z = m.transform_derivative(0, x);
            assert!((z.re - f.evaluate(x)).abs() < 1e-12, "{s} {x}");
            assert!(z.im.abs() < 1e-12);
        }
    }
}

#[test]
fn orthogonality_examples() {
    for a in ["1/3", "0", "-2/7", "5"] {
        let al = rational::to_f64(&q(a));
        let m = DiscreteMeasure::new(vec![
            Atom { location: al, weight: Complex64::new(1.0, 0.0) },
            Atom { location: al + 1.0, weight: Complex64::new(-1.0, 0.0) },
        ])
        .unwrap();
        assert!(orthogonality_residual(&m, &g("0"), 10) < 1e-12, "{a}");
    }
    let m = to_measure(&solve_obstruction(&g("0,2")).unwrap());
    assert!(orthogonality_residual(&m, &g("0,2"), 10) <= 1e-12);
    let delta = DiscreteMeasure::new(vec![Atom { location: 0.0, weight: Complex64::new(1.0, 0.0) }]).unwrap();
    assert_eq!(orthogonality_residual(&delta, &g("0"), 10), 1.0);
}

#[test]
fn discrete_measure_rejects_duplicates() {
    let a = Atom { location: 0.5, weight: Complex64::new(1.0, 0.0) };
    assert!(DiscreteMeasure::new(vec![a, a]).is_err());
}

#[test]
fn grid_measure_examples() {
    let m = grid_null_measure(&g("0"), &ratio(1, 3));
    assert_eq!(
        m.atoms,
        vec![RationalAtom::real(ratio(1, 3), int(1)), RationalAtom::real(ratio(4, 3), int(-1))]
    );
    for a in ["0", "1/3", "-5/2", "7"] {
        let m = grid_null_measure(&g("0,1"), &q(a));
        let w: Vec<Rational> = m.atoms.iter().map(|x| x.re.clone()).collect();
        assert_eq!(w, vec![int(1), int(-2), int(1)], "{a}");
    }
    let m = grid_null_measure(&g("0,2"), &int(0));
    let w: Vec<Rational> = m.atoms.iter().map(|x| x.re.clone()).collect();
    assert_eq!(w, vec![int(3), int(-4), int(1)]);
    assert!(m.exact_residual_is_zero(&g("0,2")));
}

#[test]
fn exceptional_shift_measure() {
    // det-in-s of {0,2} is 2s+1; at s = -1/2 the nodes ±1/2 carry a
    // null vector c with Σ (s+j)^γ c_j = 0.
    let v = lacunaria::vandermonde::GeneralizedVandermonde::unit_spaced(&ratio(-1, 2), g("0,2"));
    let c = linalg::null_space(&v.matrix(), 2).pop().expect("singular at the exceptional shift");
    let m = RationalMeasure {
        atoms: v.nodes().iter().cloned().zip(c).map(|(t, w)| RationalAtom::real(t, w)).collect(),
    };
    assert!(m.exact_residual_is_zero(&g("0,2")));
    assert!(orthogonality_residual(&m.to_discrete(), &g("0,2"), 10) < 1e-12);
}

#[test]
fn sinc_derivatives_match_series() {
    // Taylor series oracle: s(y) = Σ (-1)^k y^{2k} / (2k+1)!.
    fn series(m: u32, y: f64) -> f64 {
        let mut sum = 0.0;
        let mut fact = 1.0; // (2k+1)!
        for k in 0..80u32 {
            if k > 0 {
                fact *= (2 * k) as f64 * (2 * k + 1) as f64;
            }
            let p = 2 * k;
            if p < m {
                continue;
            }
            let mut falling = 1.0;
            for i in 0..m {
                falling *= (p - i) as f64;
            }
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * falling * y.powi((p - m) as i32) / fact;
        }
        sum
    }
    for m in 0..5 {
        for &y in &[0.0, 0.3, -2.0, 7.5, 15.0] {
            let a = sinc_derivative_unscaled(m, y);
            assert!((a - series(m, y)).abs() < 1e-9, "{m} {y}");
        }
    }
    // continuity across the branch switch
    for m in 0..5 {
        let lo = sinc_derivative_unscaled(m, 40.0);
        let hi = sinc_derivative_unscaled(m, 40.0 + 1e-9);
        assert!((lo - hi).abs() < 1e-9, "{m}");
    }
    assert_eq!(sinc_derivative(0, 0.1, 0.0), 1.0);
}

#[test]
fn sinc_energy_against_plancherel() {
    for j in 1..=4u32 {
        for &r in &[0.2, 0.1, 0.05] {
            let partial = sinc_derivative_energy(j, r, 64);
            let full = sinc_derivative_energy_exact(j, r);
            // |φ^{(j)}(n)| ≤ (πr)^j Σ_i C(j,i) i!/(πr|n|)^{i+1}; the
            // leading i = 0 tail beyond 64 is ≤ 2(πr)^{2j-2}/(π²r²·64).
            let tail = 4.0 * (PI * r).powi(2 * j as i32 - 2) / (PI * PI * r * r * 64.0);
            assert!(partial <= full * (1.0 + 1e-12), "{j} {r}");
            assert!(partial >= full - tail, "{j} {r} {partial} {full}");
        }
    }
    let fit = fit_sinc_energy(&[0, 1, 2, 3, 4], &[0.2, 0.1, 0.05], 64);
    assert_eq!(fit.rows.len(), 12);
    for (j, r, e, _) in &fit.rows {
        assert!(*e <= fit.fitted_c.powi(*j as i32) * r.powi(*j as i32) * (1.0 + 1e-12));
    }
    assert!(fit.fitted_c.is_finite() && fit.fitted_c < 20.0);
}

#[test]
fn mollified_ratio_rejects_non_orthogonal() {
    // (δ_{1/4} - δ_{-1/4}) / 2i transforms to sin(πx/2), which is 1 at x = 1.
    let m = DiscreteMeasure::new(vec![
        Atom { location: 0.25, weight: Complex64::new(0.0, -0.5) },
        Atom { location: -0.25, weight: Complex64::new(0.0, 0.5) },
    ])
    .unwrap();
    assert!((m.transform_derivative(0, 1.0).re.abs() - 1.0).abs() < 1e-15);
    let err = mollified_frame_ratio(&m, &g("0"), 0.1, 16, 1e-9).unwrap_err();
    assert!(matches!(err, Error::NotOrthogonal(_)));
    let ok = to_measure(&solve_obstruction(&g("0,2")).unwrap());
    assert!(mollified_frame_ratio(&ok, &g("0,2"), 0.5, 16, 1e-9).is_err());
    assert!(mollified_frame_ratio(&ok, &g("0,2"), 0.0, 16, 1e-9).is_err());
}

#[test]
fn mollified_norm_cross_check() {
    for s in ["0,2", "0,1,2,3"] {
        let m = to_measure(&solve_obstruction(&g(s)).unwrap());
        let res = mollified_frame_ratio(&m, &g(s), 0.2, 16, 1e-9).unwrap();
        assert!(res.norm_sq > 0.0);
        let gap = res.norm_sq - res.norm_sq_quadrature;
        assert!(gap >= -1e-9 * res.norm_sq && gap <= res.tail_bound + 1e-9 * res.norm_sq, "{s} {gap}");
    }
}

#[test]
fn mollified_ratio_decays_for_nontrivial_gamma() {
    for s in ["0,2", "0,2,4"] {
        let m = to_measure(&solve_obstruction(&g(s)).unwrap());
        let rs = [0.2, 0.1, 0.05];
        let v: Vec<f64> = rs
            .iter()
            .map(|&r| mollified_frame_ratio(&m, &g(s), r, 64, 1e-9).unwrap().ratio)
            .collect();
        assert!(v.iter().all(|x| *x > 0.0));
        assert!(v[1] / v[0] <= 0.75 && v[2] / v[1] <= 0.75, "{s} {v:?}");
    }
}

proptest! {
    #[test]
    fn obstruction_residual_and_support(mask in 0u32..(1 << 12), extra in 0usize..3) {
        let mut e: Vec<u32> = (1..=12).filter(|i| mask & (1 << (i - 1)) != 0).take(5 + extra).collect();
        e.truncate(5);
        e.insert(0, 0);
        let gamma = GammaSet::new(e).unwrap();
        let f = solve_obstruction(&gamma).unwrap();
        prop_assert!(residual_interpolation(&f, 8) <= 1e-9);
        let m = f.rational_measure();
        prop_assert!(m.support_radius() <= gamma.r_gamma());
        prop_assert_eq!(f.support_radius(), gamma.r_gamma());
        let d = to_measure(&f);
        let a = orthogonality_residual(&d, &gamma, 8);
        let b = residual_interpolation(&f, 8);
        prop_assert!((a - b).abs() <= 1e-10, "{} vs {}", a, b);
    }

    #[test]
    fn grid_measure_exact(mask in 0u32..(1 << 10), num in -20i64..20, den in 1i64..9) {
        let mut e: Vec<u32> = (1..=10).filter(|i| mask & (1 << (i - 1)) != 0).take(4).collect();
        e.insert(0, 0);
        let gamma = GammaSet::new(e).unwrap();
        let alpha = ratio(num, den);
        let m = grid_null_measure(&gamma, &alpha);
        prop_assert_eq!(m.atoms.len(), gamma.len() + 1);
        prop_assert!(m.atoms.iter().any(|a| !a.re.is_zero()));
        prop_assert!(m.exact_residual_is_zero(&gamma));
    }

    #[test]
    fn mollified_ratio_nonnegative(r in 0.01f64..0.49) {
        let gamma = g("0,1,2,3");
        let m = to_measure(&solve_obstruction(&gamma).unwrap());
        let res = mollified_frame_ratio(&m, &gamma, r, 8, 1e-9).unwrap();
        prop_assert!(res.ratio >= 0.0 && res.numerator >= 0.0);
    }
}
