use lacunaria::Error;
use lacunaria::GammaSet;
use lacunaria::lacunary::*;
use lacunaria::rational::{int, ratio};
use num_traits::Zero;
use proptest::prelude::*;

fn p(s: &str) -> LacunaryPolynomial {
    s.parse().unwrap()
}

#[test]
fn evaluate_examples() {
    let q = p("x^2 - 1");
    assert_eq!(q.evaluate(&int(2)), int(3));
    assert_eq!(q.evaluate(&int(-1)), int(0));
    assert_eq!(p("1").evaluate(&int(0)), int(1));
    assert_eq!(p("1*x^0 + 1*x^3").evaluate(&int(0)), int(1));
    assert_eq!(p("1/2*x^3 - 3/4*x").evaluate(&ratio(1, 2)), ratio(1, 16) - ratio(3, 8));
}

#[test]
fn descartes_examples() {
    assert_eq!(p("1 - x^2").descartes_bound().unwrap(), 1);
    assert_eq!(p("1 - 2*x^3 + x^7").descartes_bound().unwrap(), 2);
    assert_eq!(p("1 + x").descartes_bound().unwrap(), 0);
    assert_eq!(LacunaryPolynomial::zero().descartes_bound(), Err(Error::ZeroPolynomial));
}

#[test]
fn positive_root_examples() {
    assert_eq!(p("x^2 - 1").count_positive_roots(64).unwrap(), 1);
    assert_eq!(p("x^4 - 5*x^2 + 4").count_positive_roots(64).unwrap(), 2);
    // (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6
    assert_eq!(p("x^3 - 6*x^2 + 11*x - 6").count_positive_roots(64).unwrap(), 3);
    assert_eq!(p("x^5 - x^3").count_positive_roots(64).unwrap(), 1);
    assert_eq!(
        p("x^65 - 1").count_positive_roots(64),
        Err(Error::DegreeCap { degree: 65, cap: 64 })
    );
    assert_eq!(LacunaryPolynomial::zero().count_positive_roots(64), Err(Error::ZeroPolynomial));
}

#[test]
fn vanishes_on_examples() {
    assert!(p("x^2 - 1").vanishes_on(&[int(-1), int(1)]));
    assert!(!p("x^2 - 1").vanishes_on(&[int(-1), int(2)]));
    assert!(LacunaryPolynomial::zero().vanishes_on(&[int(3), ratio(1, 7)]));
}

#[test]
fn parse_and_display() {
    let q = p("1*x^0 - 2*x^3 + 1*x^7");
    assert_eq!(q.to_string(), "1*x^0 - 2*x^3 + 1*x^7");
    assert_eq!(p("-3/4*x^2+x^2").to_string(), "1/4*x^2");
    assert_eq!(p("2x - 1e-1").terms(), &[(0, ratio(-1, 10)), (1, int(2))]);
    assert!("x^".parse::<LacunaryPolynomial>().is_err());
    assert!("1 + + x".parse::<LacunaryPolynomial>().is_err());
    assert!("".parse::<LacunaryPolynomial>().is_err());
    let m: GammaSet = "0,3,7".parse().unwrap();
    assert!(q.in_space(&m));
    assert!(!p("x^2").in_space(&m));
}

fn arb_sparse() -> impl Strategy<Value = LacunaryPolynomial> {
    proptest::collection::btree_map(0u32..=64, (-9i64..=9, 1i64..=4), 1..7).prop_map(|m| {
        LacunaryPolynomial::from_terms(m.into_iter().map(|(e, (n, d))| (e, ratio(n, d))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn descartes_bounds_positive_roots(q in arb_sparse()) {
        prop_assume!(!q.is_zero());
        let roots = q.count_positive_roots(64).unwrap();
        let bound = q.descartes_bound().unwrap();
        prop_assert!(roots <= bound);
        prop_assert!(roots < q.terms().len());
    }

    #[test]
    fn isolated_positive_roots_bracket_a_sign_change(q in arb_sparse()) {
        prop_assume!(!q.is_zero());
        let width = ratio(1, 1 << 20);
        for iso in q.positive_root_intervals(64, &width).unwrap() {
            if iso.is_exact() {
                prop_assert!(q.evaluate(&iso.lo).is_zero());
            } else {
                let dense = q.to_dense().square_free();
                prop_assert_ne!(dense.sign_at(&iso.lo), dense.sign_at(&iso.hi));
            }
        }
    }

    #[test]
    fn display_parse_round_trip(q in arb_sparse()) {
        prop_assume!(!q.is_zero());
        prop_assert_eq!(q.to_string().parse::<LacunaryPolynomial>().unwrap(), q);
    }
}
