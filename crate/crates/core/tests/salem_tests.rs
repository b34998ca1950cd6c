use braidcert::ball::{Dyadic, PrecisionPolicy};
use braidcert::salem::{salem_check, IntPoly, SalemError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Signed, Zero};
use proptest::prelude::*;

fn lehmer() -> IntPoly {
    IntPoly::from_desc_i64(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
}

fn eval(coeffs_desc: &[i64], x: &BigRational) -> BigRational {
    coeffs_desc.iter().fold(BigRational::zero(), |acc, &c| acc * x + BigRational::from_integer(BigInt::from(c)))
}

/// Root of a polynomial in `(lo, hi)` with a sign change, by rational bisection.
fn bisect(coeffs_desc: &[i64], mut lo: BigRational, mut hi: BigRational, steps: usize) -> (BigRational, BigRational) {
    let s_lo = eval(coeffs_desc, &lo).is_positive();
    for _ in 0..steps {
        let mid = (&lo + &hi) / BigRational::from_integer(2.into());
        if eval(coeffs_desc, &mid).is_positive() == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn lehmer_is_certified() {
    let c = salem_check(&lehmer(), &PrecisionPolicy::default()).unwrap();
    assert_eq!(c.degree(), 10);
    assert_eq!(c.arg_balls().len(), 4);
    let s = c.s_ball();
    assert!(s.lo().to_rational() > rat(117, 100) && s.hi().to_rational() < rat(118, 100));
    assert!(s.width().to_rational() < BigRational::new(1.into(), BigInt::from(10).pow(20u32)));
    // Independent enclosure of the real root above 1.
    let (lo, hi) = bisect(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1], rat(117, 100), rat(118, 100), 90);
    assert!(s.lo().to_rational() <= hi && lo <= s.hi().to_rational());
}

#[test]
fn quadratic_salem_numbers() {
    for n in 3..=10i64 {
        let c = salem_check(&IntPoly::from_desc_i64(&[1, -n, 1]), &PrecisionPolicy::default()).unwrap();
        assert_eq!(c.degree(), 2);
        assert!(c.arg_balls().is_empty());
        let (lo, hi) = bisect(&[1, -n, 1], rat(2, 1), BigRational::from_integer(n.into()), 100);
        let s = c.s_ball();
        assert!(s.lo().to_rational() <= hi && lo <= s.hi().to_rational(), "n = {n}");
        let prod = s.mul(c.s_inv_ball(), 256);
        assert!(prod.contains(&Dyadic::one()));
    }
}

#[test]
fn non_salem_inputs_are_rejected() {
    let p = PrecisionPolicy::default();
    assert!(salem_check(&IntPoly::from_desc_i64(&[1, -2, 1]), &p).is_err());
    assert_eq!(salem_check(&IntPoly::from_desc_i64(&[1, 0, 0, -2]), &p).unwrap_err(), SalemError::NotReciprocal);
    assert_eq!(salem_check(&IntPoly::from_desc_i64(&[2, -5, 2]), &p).unwrap_err(), SalemError::NotMonic);
    // Two roots above 1.
    let prod = IntPoly::from_desc_i64(&[1, -3, 1]).mul(&IntPoly::from_desc_i64(&[1, -4, 1]));
    assert!(matches!(salem_check(&prod, &p), Err(SalemError::RootLocationFails(_))));
    // Root location holds but a cyclotomic factor splits off.
    let prod = IntPoly::from_desc_i64(&[1, -3, 1]).mul(&IntPoly::from_desc_i64(&[1, 0, 1]));
    assert!(matches!(salem_check(&prod, &p), Err(SalemError::Reducible(_))));
    // Cyclotomic: every root on the circle.
    assert!(salem_check(&IntPoly::from_desc_i64(&[1, 1, 1]), &p).is_err());
}

#[test]
fn expression_and_coefficient_syntax_agree() {
    let a = IntPoly::parse("x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1").unwrap();
    assert_eq!(a, lehmer());
    assert_eq!(IntPoly::parse("1 1 0 -1 -1 -1 -1 -1 0 1 1").unwrap(), lehmer());
}

#[test]
fn conjugate_points_lie_on_the_circle() {
    let c = salem_check(&lehmer(), &PrecisionPolicy::default()).unwrap();
    let pts = c.conjugate_points(1);
    assert_eq!(pts.len(), 10);
    for z in &pts[2..] {
        assert!(z.norm_sqr(256).contains(&Dyadic::one()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn powers_stay_salem(m in 1u32..=12) {
        let policy = PrecisionPolicy::default();
        let c = salem_check(&lehmer(), &policy).unwrap();
        let p = c.power(m, &policy).unwrap();
        prop_assert_eq!(p.degree(), 10);
        let sm = c.s_ball().pow(m, 512);
        prop_assert!(p.s_ball().overlaps(&sm));
    }

    #[test]
    fn reduced_arguments_track_integer_multiples(m in 1u32..=60) {
        let c = salem_check(&lehmer(), &PrecisionPolicy::default()).unwrap();
        for j in 0..c.arg_balls().len() {
            let theta = c.arg_balls()[j].to_f64();
            let expect = (m as f64 * theta).rem_euclid(std::f64::consts::TAU);
            let expect = if expect > std::f64::consts::PI { expect - std::f64::consts::TAU } else { expect };
            let got = c.reduced_arg(j, m).to_f64();
            prop_assert!((got - expect).abs() < 1e-9, "j={} m={} got {} expected {}", j, m, got, expect);
        }
    }
}
