
use lacunaria::quadrature::*;
use num_complex::Complex64;

#[test]
fn polynomials_are_exact() {
    let q = CompositeRule::new(8);
    // degree 15 is integrated exactly by 8 nodes
    let v = q.integrate(0.0, 2.0, 1, |x| x.powi(15));
    assert!((v - 2f64.powi(16) / 16.0).abs() < 1e-9);
    let v = q.integrate(-1.0, 3.0, 5, |x| 3.0 * x * x - 1.0);
    assert!((v - (27.0 + 1.0 - 4.0)).abs() < 1e-12);
}

#[test]
fn oscillatory_integral() {
    let q = CompositeRule::new(64);
    let v = q.integrate_complex(0.0, 1.0, 4, |t| unit_phase(3.0 * t));
    assert!(v.norm() < 1e-13);
    let v = q.integrate(0.0, std::f64::consts::PI, 3, f64::sin);
    assert!((v - 2.0).abs() < 1e-13);
}

#[test]
fn pairwise_matches_naive() {
    let v: Vec<f64> = (1..=1000).map(|k| 1.0 / k as f64).collect();
    let naive: f64 = v.iter().sum();
    assert!((pairwise_sum(&v) - naive).abs() < 1e-12);
    assert_eq!(pairwise_sum(&[]), 0.0);
}

#[test]
fn phase_reduction() {
    let a = unit_phase(1e9 + 0.25);
    assert!((a - Complex64::new(0.0, 1.0)).norm() < 1e-6);
    assert!((unit_phase(-0.5) - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
}
