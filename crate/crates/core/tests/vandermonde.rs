use lacunaria::Error;
use lacunaria::GammaSet;
use lacunaria::Rational;
use lacunaria::rational::{int, ratio};
use lacunaria::rational;
use lacunaria::sturm::{IntPoly, IsolatedRoot};
use lacunaria::vandermonde::*;
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn g(s: &str) -> GammaSet {
    s.parse().unwrap()
}

fn v(nodes: &[Rational], gamma: &str) -> GeneralizedVandermonde {
    GeneralizedVandermonde::new(nodes.to_vec(), g(gamma)).unwrap()
}

#[test]
fn det_examples() {
    assert_eq!(v(&[int(1), int(2), int(3)], "0,1,2").det_exact(), int(2));
    assert_eq!(v(&[int(1), int(2)], "0,2").det_exact(), int(3));
    assert_eq!(v(&[int(-1), int(1)], "0,2").det_exact(), int(0));
    assert!(GeneralizedVandermonde::new(vec![int(1)], g("0,1")).is_err());
}

#[test]
fn invertibility_examples() {
    assert!(v(&[int(1), int(2)], "0,2").is_invertible());
    assert!(!v(&[int(-1), int(1)], "0,2").is_invertible());
    assert!(!v(&[ratio(1, 3), int(5), ratio(1, 3)], "0,4,9").is_invertible());
}

#[test]
fn null_vector_examples() {
    let m = v(&[int(-1), int(1)], "0,2");
    assert_eq!(m.null_vector(), Some(vec![int(-1), int(1)]));
    assert_eq!(m.witness_polynomial().unwrap().to_string(), "-1*x^0 + 1*x^2");
    assert_eq!(v(&[int(1), int(2)], "0,2").null_vector(), None);
    assert_eq!(v(&[int(-2), int(1)], "0,2").det_exact(), int(-3));
    assert_eq!(v(&[int(-2), int(1)], "0,2").null_vector(), None);
}

#[test]
fn total_positivity_examples() {
    assert_eq!(v(&[int(1), int(2), int(3)], "0,2,5").verify_total_positivity(3), Ok(true));
    assert_eq!(v(&[int(1), int(2)], "0,1").verify_total_positivity(2), Ok(true));
    assert!(matches!(
        v(&[int(-1), int(1)], "0,2").verify_total_positivity(2),
        Err(Error::TotalPositivityHypothesis(_))
    ));
    assert!(matches!(
        v(&[int(2), int(1)], "0,1").verify_total_positivity(2),
        Err(Error::TotalPositivityHypothesis(_))
    ));
    assert!(v(&[int(1), int(2)], "0,1").verify_total_positivity(3).is_err());
}

#[test]
fn det_in_s_examples() {
    assert_eq!(det_in_s(&g("0,1"), 6).unwrap().poly, IntPoly::from_i64(&[1]));
    assert_eq!(det_in_s(&g("0,2"), 6).unwrap().poly, IntPoly::from_i64(&[1, 2]));
    assert_eq!(det_in_s(&g("0,1,2"), 6).unwrap().poly, IntPoly::from_i64(&[2]));
    assert_eq!(det_in_s(&g("0,1,2,3,4,5,6"), 6), Err(Error::DetCap { size: 7, cap: 6 }));
    assert_eq!(det_in_s(&g("0,2"), 6).unwrap().to_string(), "1*s^0 + 2*s^1");
}

#[test]
fn det_in_s_agrees_with_instantiated_determinant() {
    for gamma in ["0,2,5", "0,1,3,7", "1,4,6", "0,3,4,8,9"] {
        let dp = det_in_s(&g(gamma), 6).unwrap();
        for s in [ratio(-7, 3), ratio(-1, 2), int(0), ratio(5, 4), int(3)] {
            let m = GeneralizedVandermonde::unit_spaced(&s, g(gamma));
            assert_eq!(dp.eval(&s), m.det_exact(), "Γ={gamma}, s={s}");
        }
    }
}

#[test]
fn exceptional_set_examples() {
    let w = isolation_width(40);
    let roots = exceptional_set(&g("0,2"), &int(-1), &int(0), 6, &w).unwrap();
    assert_eq!(roots, vec![IsolatedRoot { lo: ratio(-1, 2), hi: ratio(-1, 2) }]);
    assert!(exceptional_set(&g("0,1"), &int(-100), &int(100), 6, &w).unwrap().is_empty());
    assert!(exceptional_set(&g("0,1,2,3"), &int(-2), &int(-1), 6, &w).unwrap().is_empty());
}

#[test]
fn rank_drop_polynomial_detects_rectangular_dependence() {
    // columns (1, s^2, s^4) and (1, (s+1)^2, (s+1)^4) coincide at s = -1/2
    let p = rank_drop_polynomial(&g("0,2,4"), 2, 6).unwrap();
    assert_eq!(p, IntPoly::from_i64(&[1, 2]));
    // {0,1,3,5} with nodes (-1, 0, 1) is rank deficient
    let p = rank_drop_polynomial(&g("0,1,3,5"), 3, 6).unwrap();
    assert!(p.eval(&int(-1)).is_zero());
    // k = 1 never drops rank when 0 ∈ Γ
    assert!(rank_drop_polynomial(&g("0,2,4"), 1, 6).unwrap().is_constant());
}

#[test]
fn singular_extremes_examples() {
    let e = singular_extremes(&[3.7], &g("0")).unwrap();
    assert_eq!((e.sigma_min, e.sigma_max), (1.0, 1.0));
    let e = singular_extremes(&[-0.5, 0.5], &g("0,2")).unwrap();
    assert!(e.sigma_min < 1e-15);
    for t in [-3.0, -1.25, -0.5, 0.0, 0.7, 2.0] {
        let e = singular_extremes(&[t, t + 1.0], &g("0,1")).unwrap();
        assert!(e.sigma_min > 0.0, "t = {t}");
        // det ≡ 1 ⇒ σ_min σ_max = 1 for 2×2
        assert!((e.sigma_min * e.sigma_max - 1.0).abs() < 1e-12);
    }
    assert!(singular_extremes(&[], &g("0")).is_err());
    assert!(singular_extremes(&[1.0, 2.0], &g("0")).is_err());
}

#[test]
fn classical_vandermonde_product_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 1..=6u32 {
        for _ in 0..8 {
            let nodes: Vec<Rational> = (0..n)
                .map(|_| ratio(rng.gen_range(-30..=30), rng.gen_range(1..=9)))
                .collect();
            let m = GeneralizedVandermonde::new(nodes.clone(), GammaSet::consecutive(n)).unwrap();
            let mut prod = int(1);
            for i in 0..nodes.len() {
                for j in i + 1..nodes.len() {
                    prod *= &nodes[j] - &nodes[i];
                }
            }
            assert_eq!(m.det_exact(), prod);
        }
    }
}

#[test]
fn unit_spaced_nonvanishing_for_nonnegative_shift() {
    // exhaustive over Γ ∋ 0, #Γ ≤ 4, exponents ≤ 10; random s ≥ 0
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 2..=4usize {
        for rest in GammaSet::subsets_of_range(9, n - 1) {
            let gamma =
                GammaSet::new(std::iter::once(0).chain(rest.iter().map(|x| x + 1)).collect()).unwrap();
            for _ in 0..3 {
                let s = ratio(rng.gen_range(0..=40), rng.gen_range(1..=7));
                let m = GeneralizedVandermonde::unit_spaced(&s, gamma.clone());
                assert!(m.is_invertible(), "Γ={gamma}, s={s}");
            }
        }
    }
}

#[test]
fn unit_spaced_nonvanishing_on_alternating_window() {
    // s ∈ (-N/2, -N/2+1) ∖ ½ℤ
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in 2..=4usize {
        for rest in GammaSet::subsets_of_range(9, n - 1) {
            let gamma =
                GammaSet::new(std::iter::once(0).chain(rest.iter().map(|x| x + 1)).collect()).unwrap();
            for _ in 0..3 {
                let s = loop {
                    let d: i64 = rng.gen_range(3..=41);
                    let num: i64 = rng.gen_range(1..d);
                    let frac = ratio(num, d);
                    if frac != ratio(1, 2) {
                        break rational::int(-(n as i64)) / rational::int(2) + frac;
                    }
                };
                let m = GeneralizedVandermonde::unit_spaced(&s, gamma.clone());
                assert!(m.is_invertible(), "Γ={gamma}, s={s}");
            }
        }
    }
}

#[test]
fn square_singular_values_track_invertibility() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let cases = ["0,2", "0,1,3", "0,2,4", "0,1,2", "1,2,5"];
    for gamma in cases {
        let gs = g(gamma);
        let n = gs.len();
        for _ in 0..30 {
            let nodes: Vec<Rational> = (0..n)
                .map(|_| ratio(rng.gen_range(-8..=8), rng.gen_range(1..=4)))
                .collect();
            let m = GeneralizedVandermonde::new(nodes.clone(), gs.clone()).unwrap();
            let det = rational::to_f64(&m.det_exact());
            let fl: Vec<f64> = nodes.iter().map(rational::to_f64).collect();
            let e = singular_extremes(&fl, &gs).unwrap();
            if det == 0.0 {
                assert!(e.sigma_min <= 1e-10 * e.sigma_max, "Γ={gamma} nodes={fl:?}");
            } else if det.abs() > 1e-6 * e.sigma_max.powi(n as i32) {
                assert!(e.sigma_min > 1e-10 * e.sigma_max, "Γ={gamma} nodes={fl:?}");
            }
        }
    }
}

fn arb_tp_instance() -> impl Strategy<Value = GeneralizedVandermonde> {
    (1usize..=4).prop_flat_map(|n| {
        (
            proptest::collection::btree_set(1i64..60, n),
            1i64..=6,
            proptest::collection::btree_set(0u32..9, n),
        )
            .prop_map(|(nums, den, exps)| {
                let nodes = nums.into_iter().map(|x| ratio(x, den)).collect();
                let gamma = GammaSet::new(exps.into_iter().collect()).unwrap();
                GeneralizedVandermonde::new(nodes, gamma).unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn positive_increasing_nodes_are_totally_positive(m in arb_tp_instance()) {
        prop_assert_eq!(m.verify_total_positivity(m.size()), Ok(true));
    }

    #[test]
    fn singular_iff_witness_vanishes(
        nodes in proptest::collection::vec((-4i64..=4, 1i64..=2), 3),
        exps in proptest::collection::btree_set(0u32..7, 3),
    ) {
        let nodes: Vec<Rational> = nodes.into_iter().map(|(n, d)| ratio(n, d)).collect();
        let gamma = GammaSet::new(exps.into_iter().collect()).unwrap();
        let m = GeneralizedVandermonde::new(nodes.clone(), gamma.clone()).unwrap();
        let singular = m.det_exact().is_zero();
        let witness = m.witness_polynomial();
        prop_assert_eq!(singular, witness.is_some());
        if let Some(w) = witness {
            prop_assert!(!w.is_zero());
            prop_assert!(w.in_space(&gamma));
            prop_assert!(w.vanishes_on(&nodes));
        }
    }
}
