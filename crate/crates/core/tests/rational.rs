use lacunaria::rational::*;
use num_bigint::BigInt;

#[test]
fn parses_all_forms() {
    assert_eq!(parse_rational("3").unwrap(), int(3));
    assert_eq!(parse_rational("-3/4").unwrap(), ratio(-3, 4));
    assert_eq!(parse_rational("6/8").unwrap(), ratio(3, 4));
    assert_eq!(parse_rational("-0.6").unwrap(), ratio(-3, 5));
    assert_eq!(parse_rational("1e-3").unwrap(), ratio(1, 1000));
    assert_eq!(parse_rational("2.5E1").unwrap(), int(25));
    assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
    assert!(parse_rational("1/0").is_err());
    assert!(parse_rational("abc").is_err());
    assert!(parse_rational("").is_err());
    assert!(parse_rational("-").is_err());
}

#[test]
fn canonical_form() {
    let q = ratio(4, -6);
    assert_eq!(q.numer(), &BigInt::from(-2));
    assert_eq!(q.denom(), &BigInt::from(3));
    assert_eq!(format(&q), "-2/3");
    assert_eq!(format(&int(2)), "2");
}

#[test]
fn zero_to_the_zero_is_one() {
    assert_eq!(pow(&int(0), 0), int(1));
    assert_eq!(pow(&int(0), 3), int(0));
}

#[test]
fn huge_ratio_to_f64() {
    let big = Rational::new(BigInt::from(3) << 3000usize, BigInt::from(2) << 3000usize);
    assert!((to_f64(&big) - 1.5).abs() < 1e-15);
}
