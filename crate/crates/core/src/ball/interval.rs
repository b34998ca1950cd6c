use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::dyadic::{Dyadic, Round};
use super::BallError;

/// Closed real interval with dyadic endpoints.
///
/// Every operation rounds outward to the requested precision, so the true
/// result of the exact operation on any members of the inputs is contained
/// in the output.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(v: Dyadic) -> Self {
        Interval { lo: v.clone(), hi: v }
    }

    pub fn zero() -> Self {
        Interval::point(Dyadic::zero())
    }

    pub fn one() -> Self {
        Interval::point(Dyadic::one())
    }

    pub fn from_int<T: Into<BigInt>>(v: T) -> Self {
        Interval::point(Dyadic::from_int(v))
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        Interval {
            lo: Dyadic::from_rational(q, prec, Round::Down),
            hi: Dyadic::from_rational(q, prec, Round::Up),
        }
    }

    /// Ball `center ± radius`.
    pub fn from_center_radius(center: Dyadic, radius: Dyadic) -> Self {
        let r = radius.abs();
        Interval { lo: center.sub(&r), hi: center.add(&r) }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn mid(&self) -> Dyadic {
        self.lo.add(&self.hi).mul_pow2(-1)
    }

    pub fn radius(&self) -> Dyadic {
        self.width().mul_pow2(-1)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: &Dyadic) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        &self.lo.to_rational() <= q && q <= &self.hi.to_rational()
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// Certified sign, or `None` when the interval straddles or touches zero.
    pub fn sign(&self) -> Option<Ordering> {
        if self.is_positive() {
            Some(Ordering::Greater)
        } else if self.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Certified comparison: `Some` only when every member compares the same way.
    pub fn certainly_lt(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn certainly_gt(&self, other: &Interval) -> bool {
        self.lo > other.hi
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: Dyadic::min(&self.lo, &other.lo),
            hi: Dyadic::max(&self.hi, &other.hi),
        }
    }

    /// Largest absolute value of any member.
    pub fn mag(&self) -> Dyadic {
        Dyadic::max(&self.lo.abs(), &self.hi.abs())
    }

    /// Smallest absolute value of any member.
    pub fn mig(&self) -> Dyadic {
        if self.contains_zero() {
            Dyadic::zero()
        } else {
            Dyadic::min(&self.lo.abs(), &self.hi.abs())
        }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: self.hi.neg(), hi: self.lo.neg() }
    }

    pub fn abs(&self) -> Interval {
        Interval { lo: self.mig(), hi: self.mag() }
    }

    fn rounded(lo: Dyadic, hi: Dyadic, prec: u32) -> Interval {
        Interval { lo: lo.round(prec, Round::Down), hi: hi.round(prec, Round::Up) }
    }

    pub fn round(&self, prec: u32) -> Interval {
        Interval::rounded(self.lo.clone(), self.hi.clone(), prec)
    }

    pub fn add(&self, other: &Interval, prec: u32) -> Interval {
        Interval::rounded(self.lo.add(&other.lo), self.hi.add(&other.hi), prec)
    }

    pub fn sub(&self, other: &Interval, prec: u32) -> Interval {
        Interval::rounded(self.lo.sub(&other.hi), self.hi.sub(&other.lo), prec)
    }

    pub fn mul(&self, other: &Interval, prec: u32) -> Interval {
        let products = [
            self.lo.mul(&other.lo),
            self.lo.mul(&other.hi),
            self.hi.mul(&other.lo),
            self.hi.mul(&other.hi),
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Interval::rounded(lo, hi, prec)
    }

    pub fn mul_pow2(&self, e: i64) -> Interval {
        Interval { lo: self.lo.mul_pow2(e), hi: self.hi.mul_pow2(e) }
    }

    pub fn sqr(&self, prec: u32) -> Interval {
        let a = self.mig();
        let b = self.mag();
        Interval::rounded(a.mul(&a), b.mul(&b), prec)
    }

    pub fn recip(&self, prec: u32) -> Result<Interval, BallError> {
        if self.contains_zero() {
            return Err(BallError::DivisionByZero);
        }
        let one = Dyadic::one();
        Ok(Interval {
            lo: one.div(&self.hi, prec, Round::Down),
            hi: one.div(&self.lo, prec, Round::Up),
        })
    }

    pub fn div(&self, other: &Interval, prec: u32) -> Result<Interval, BallError> {
        if other.contains_zero() {
            return Err(BallError::DivisionByZero);
        }
        let mut lo: Option<Dyadic> = None;
        let mut hi: Option<Dyadic> = None;
        for a in [&self.lo, &self.hi] {
            for b in [&other.lo, &other.hi] {
                let d = a.div(b, prec, Round::Down);
                let u = a.div(b, prec, Round::Up);
                lo = Some(match lo {
                    Some(l) if l <= d => l,
                    _ => d,
                });
                hi = Some(match hi {
                    Some(h) if h >= u => h,
                    _ => u,
                });
            }
        }
        Ok(Interval { lo: lo.unwrap(), hi: hi.unwrap() })
    }

    /// Square root; fails when the interval has a certified negative member.
    pub fn sqrt(&self, prec: u32) -> Result<Interval, BallError> {
        if self.lo.is_negative() {
            return Err(BallError::Domain("square root of negative interval"));
        }
        Ok(Interval {
            lo: self.lo.sqrt(prec, Round::Down),
            hi: self.hi.sqrt(prec, Round::Up),
        })
    }

    pub fn pow(&self, n: u32, prec: u32) -> Interval {
        if n == 0 {
            return Interval::one();
        }
        if n % 2 == 0 {
            let half = self.pow(n / 2, prec);
            return half.sqr(prec);
        }
        self.pow(n - 1, prec).mul(self, prec)
    }

    pub fn powi(&self, n: i64, prec: u32) -> Result<Interval, BallError> {
        let p = self.pow(n.unsigned_abs() as u32, prec);
        if n < 0 {
            p.recip(prec)
        } else {
            Ok(p)
        }
    }

    /// Widen symmetrically by `err`.
    pub fn inflate(&self, err: &Dyadic) -> Interval {
        let e = err.abs();
        Interval { lo: self.lo.sub(&e), hi: self.hi.add(&e) }
    }

    /// Integers contained in the interval, if there is exactly one.
    pub fn unique_integer(&self) -> Option<BigInt> {
        let c = self.lo.ceil();
        let f = self.hi.floor();
        if c == f {
            Some(c)
        } else {
            None
        }
    }

    /// True when the interval contains no integer.
    pub fn excludes_integers(&self) -> bool {
        self.lo.ceil() > self.hi.floor()
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64()
    }

    /// Approximate rational midpoint.
    pub fn mid_rational(&self) -> BigRational {
        self.mid().to_rational()
    }

    pub fn is_finite_width_below(&self, bound: &Dyadic) -> bool {
        &self.width() < bound
    }

    pub fn is_zero(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo.to_f64(), self.hi.to_f64())
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.radius();
        write!(f, "{:.17} +/- {:.3e}", self.mid().to_f64(), r.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rational(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn iv(a: f64, b: f64) -> Interval {
        Interval::new(Dyadic::from_f64(a).unwrap(), Dyadic::from_f64(b).unwrap())
    }

    #[test]
    fn mul_mixed_signs() {
        let p = iv(-1.0, 2.0).mul(&iv(-3.0, 0.5), 64);
        assert_eq!(p, iv(-6.0, 3.0));
    }

    #[test]
    fn sqr_straddling_zero_is_nonnegative() {
        assert_eq!(iv(-2.0, 1.0).sqr(64), iv(0.0, 4.0));
    }

    #[test]
    fn recip_rejects_zero() {
        assert!(iv(-1.0, 1.0).recip(64).is_err());
        let r = iv(2.0, 4.0).recip(64).unwrap();
        assert_eq!(r, iv(0.25, 0.5));
    }

    #[test]
    fn division_encloses_third() {
        let q = Interval::one().div(&Interval::from_int(3), 80).unwrap();
        assert!(q.contains_rational(&rational(1, 3)));
        assert!(q.width() < Dyadic::pow2(-78));
    }

    #[test]
    fn unique_integer_detection() {
        assert_eq!(iv(2.6, 3.4).unique_integer(), Some(BigInt::from(3)));
        assert_eq!(iv(2.6, 4.4).unique_integer(), None);
        assert!(iv(2.1, 2.9).excludes_integers());
    }

    #[test]
    fn negative_powers() {
        let v = iv(2.0, 2.0).powi(-3, 64).unwrap();
        assert_eq!(v, iv(0.125, 0.125));
    }
}
