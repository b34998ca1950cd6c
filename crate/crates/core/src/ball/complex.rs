use std::fmt;

use num_bigint::BigInt;

use super::dyadic::Dyadic;
use super::interval::Interval;
use super::BallError;

/// Rectangular complex enclosure: a real and an imaginary interval.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ComplexBall {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexBall {
    pub fn new(re: Interval, im: Interval) -> Self {
        ComplexBall { re, im }
    }

    pub fn real(re: Interval) -> Self {
        ComplexBall { re, im: Interval::zero() }
    }

    pub fn zero() -> Self {
        ComplexBall::real(Interval::zero())
    }

    pub fn one() -> Self {
        ComplexBall::real(Interval::one())
    }

    pub fn i() -> Self {
        ComplexBall { re: Interval::zero(), im: Interval::one() }
    }

    pub fn from_int<T: Into<BigInt>>(v: T) -> Self {
        ComplexBall::real(Interval::from_int(v))
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn is_exact(&self) -> bool {
        self.re.is_point() && self.im.is_point()
    }

    /// Upper bound on the distance from the center to any member.
    pub fn radius(&self) -> Dyadic {
        self.re.radius().add(&self.im.radius())
    }

    pub fn neg(&self) -> Self {
        ComplexBall { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn conj(&self) -> Self {
        ComplexBall { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn add(&self, o: &Self, prec: u32) -> Self {
        ComplexBall { re: self.re.add(&o.re, prec), im: self.im.add(&o.im, prec) }
    }

    pub fn sub(&self, o: &Self, prec: u32) -> Self {
        ComplexBall { re: self.re.sub(&o.re, prec), im: self.im.sub(&o.im, prec) }
    }

    pub fn mul(&self, o: &Self, prec: u32) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return ComplexBall::real(self.re.mul(&o.re, prec));
        }
        let re = self.re.mul(&o.re, prec).sub(&self.im.mul(&o.im, prec), prec);
        let im = self.re.mul(&o.im, prec).add(&self.im.mul(&o.re, prec), prec);
        ComplexBall { re, im }
    }

    pub fn scale(&self, s: &Interval, prec: u32) -> Self {
        ComplexBall { re: self.re.mul(s, prec), im: self.im.mul(s, prec) }
    }

    pub fn norm_sqr(&self, prec: u32) -> Interval {
        self.re.sqr(prec).add(&self.im.sqr(prec), prec)
    }

    pub fn recip(&self, prec: u32) -> Result<Self, BallError> {
        if self.im.is_zero() {
            return Ok(ComplexBall::real(self.re.recip(prec)?));
        }
        let n = self.norm_sqr(prec);
        let inv = n.recip(prec)?;
        Ok(self.conj().scale(&inv, prec))
    }

    pub fn div(&self, o: &Self, prec: u32) -> Result<Self, BallError> {
        Ok(self.mul(&o.recip(prec)?, prec))
    }

    pub fn pow(&self, n: u64, prec: u32) -> Self {
        let mut result = ComplexBall::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base, prec);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, prec);
            }
        }
        result
    }

    pub fn powi(&self, n: i64, prec: u32) -> Result<Self, BallError> {
        let p = self.pow(n.unsigned_abs(), prec);
        if n < 0 {
            p.recip(prec)
        } else {
            Ok(p)
        }
    }

    pub fn overlaps(&self, o: &Self) -> bool {
        self.re.overlaps(&o.re) && self.im.overlaps(&o.im)
    }

    pub fn contains(&self, o: &Self) -> bool {
        self.re.contains_interval(&o.re) && self.im.contains_interval(&o.im)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Debug for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?}i)", self.re, self.im)
    }
}

impl fmt::Display for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})i", self.re, self.im)
    }
}
