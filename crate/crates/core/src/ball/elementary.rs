//! Certified elementary functions on intervals: pi, atan, acos, cos, sin.
//!
//! Series are evaluated in interval arithmetic with guard bits and the
//! truncation error is bounded by the first omitted term (all series used
//! here are alternating with decreasing terms on the reduced range).

use num_bigint::BigInt;

use super::complex::ComplexBall;
use super::dyadic::{Dyadic, Round};
use super::interval::Interval;

const GUARD: u32 = 24;

fn small(wp: u32) -> Dyadic {
    Dyadic::pow2(-(wp as i64))
}

/// atan by Taylor series; requires |x| <= 1/2.
fn atan_series(x: &Interval, wp: u32) -> Interval {
    let x2 = x.sqr(wp);
    let mut power = x.clone();
    let mut sum = Interval::zero();
    let mut k: u64 = 0;
    loop {
        let term = power.div(&Interval::from_int(2 * k + 1), wp).expect("odd divisor");
        sum = if k % 2 == 0 { sum.add(&term, wp) } else { sum.sub(&term, wp) };
        power = power.mul(&x2, wp);
        k += 1;
        let bound = power.mag().div(&Dyadic::from_int(2 * k + 1), 30, Round::Up);
        if bound < small(wp) || power.mag().is_zero() {
            return sum.inflate(&bound);
        }
    }
}

/// Enclosure of pi at `prec` bits (Machin's formula).
pub fn pi(prec: u32) -> Interval {
    let wp = prec + GUARD;
    let fifth = Interval::one().div(&Interval::from_int(5), wp).unwrap();
    let inv239 = Interval::one().div(&Interval::from_int(239), wp).unwrap();
    let a = atan_series(&fifth, wp).mul_pow2(4);
    let b = atan_series(&inv239, wp).mul_pow2(2);
    a.sub(&b, wp).round(prec)
}

/// atan on an interval with |x| <= 1.
fn atan_reduced(x: &Interval, wp: u32) -> Interval {
    // Three argument halvings: atan(x) = 2 atan(x / (1 + sqrt(1 + x^2))).
    let mut y = x.clone();
    for _ in 0..3 {
        let r = Interval::one().add(&y.sqr(wp), wp).sqrt(wp).expect("positive");
        let d = Interval::one().add(&r, wp);
        y = y.div(&d, wp).expect("denominator >= 2");
    }
    atan_series(&y, wp).mul_pow2(3)
}

fn atan_point(x: &Dyadic, wp: u32) -> Interval {
    let one = Dyadic::one();
    if x.abs() <= one {
        return atan_reduced(&Interval::point(x.clone()), wp);
    }
    let inv = Interval::point(x.clone()).recip(wp).expect("nonzero");
    let half_pi = pi(wp).mul_pow2(-1);
    let inner = atan_reduced(&inv, wp);
    if x.is_positive() {
        half_pi.sub(&inner, wp)
    } else {
        half_pi.neg().sub(&inner, wp)
    }
}

/// Arctangent of an interval (monotone, so evaluated at the endpoints).
pub fn atan(x: &Interval, prec: u32) -> Interval {
    let wp = prec + GUARD;
    let lo = atan_point(x.lo(), wp);
    let hi = atan_point(x.hi(), wp);
    Interval::new(lo.lo().clone(), hi.hi().clone()).round(prec)
}

fn acos_point(c: &Dyadic, wp: u32) -> Interval {
    let one = Dyadic::one();
    if c >= &one {
        return Interval::zero();
    }
    if c <= &one.neg() {
        return pi(wp);
    }
    let ci = Interval::point(c.clone());
    let s = Interval::one().sub(&ci.sqr(wp), wp).sqrt(wp).expect("|c| < 1");
    let half_pi = pi(wp).mul_pow2(-1);
    if c.is_zero() {
        return half_pi;
    }
    // acos(c) = pi/2 - atan(c / sqrt(1 - c^2)); the quotient is evaluated as
    // an interval, so take atan of its endpoints.
    let q = ci.div(&s, wp).expect("s > 0");
    let a = Interval::new(atan_point(q.lo(), wp).lo().clone(), atan_point(q.hi(), wp).hi().clone());
    half_pi.sub(&a, wp)
}

/// Arccosine of an interval; members outside [-1, 1] are clamped.
pub fn acos(c: &Interval, prec: u32) -> Interval {
    let wp = prec + GUARD;
    let lo = acos_point(c.hi(), wp);
    let hi = acos_point(c.lo(), wp);
    Interval::new(lo.lo().clone(), hi.hi().clone()).round(prec)
}

fn sin_cos_series(r: &Interval, wp: u32) -> (Interval, Interval) {
    let r2 = r.sqr(wp);
    // cos
    let mut term = Interval::one();
    let mut cos = Interval::zero();
    let mut k: u64 = 0;
    loop {
        cos = if k % 2 == 0 { cos.add(&term, wp) } else { cos.sub(&term, wp) };
        term = term.mul(&r2, wp).div(&Interval::from_int((2 * k + 1) * (2 * k + 2)), wp).unwrap();
        k += 1;
        if term.mag() < small(wp) {
            cos = cos.inflate(&term.mag());
            break;
        }
    }
    let mut term = r.clone();
    let mut sin = Interval::zero();
    let mut k: u64 = 0;
    loop {
        sin = if k % 2 == 0 { sin.add(&term, wp) } else { sin.sub(&term, wp) };
        term = term.mul(&r2, wp).div(&Interval::from_int((2 * k + 2) * (2 * k + 3)), wp).unwrap();
        k += 1;
        if term.mag() < small(wp) {
            sin = sin.inflate(&term.mag());
            break;
        }
    }
    (sin, cos)
}

fn clamp_unit(v: Interval) -> Interval {
    let one = Dyadic::one();
    let lo = Dyadic::max(v.lo(), &one.neg());
    let hi = Dyadic::min(v.hi(), &one);
    if lo > hi {
        return v;
    }
    Interval::new(lo, hi)
}

/// Simultaneous enclosures of (sin x, cos x).
pub fn sin_cos(x: &Interval, prec: u32) -> (Interval, Interval) {
    let unit = Interval::new(Dyadic::from_int(-1), Dyadic::one());
    if x.width() > Dyadic::from_int(2) {
        return (unit.clone(), unit);
    }
    let extra = x.mag().magnitude_exp().max(0) as u32;
    let wp = prec + GUARD + extra;
    let half_pi = pi(wp).mul_pow2(-1);
    let q = x.mid().div(&half_pi.mid(), 64, Round::Down);
    let k: BigInt = q.add(&Dyadic::new(1.into(), -1)).floor();
    let r = x.sub(&half_pi.mul(&Interval::from_int(k.clone()), wp), wp);
    let (s, c) = sin_cos_series(&r, wp);
    let quadrant = {
        let m: BigInt = ((k % 4) + 4) % 4;
        u8::try_from(m).unwrap()
    };
    let (s, c) = match quadrant {
        0 => (s, c),
        1 => (c, s.neg()),
        2 => (s.neg(), c.neg()),
        _ => (c.neg(), s),
    };
    (clamp_unit(s.round(prec)), clamp_unit(c.round(prec)))
}

pub fn sin(x: &Interval, prec: u32) -> Interval {
    sin_cos(x, prec).0
}

pub fn cos(x: &Interval, prec: u32) -> Interval {
    sin_cos(x, prec).1
}

/// `e^{i x}` for real `x`.
pub fn expi(x: &Interval, prec: u32) -> ComplexBall {
    let (s, c) = sin_cos(x, prec);
    ComplexBall::new(c, s)
}

/// Reduce an angle to the representative in (-pi, pi] (the enclosure may
/// poke slightly past +-pi when the angle lies near the cut).
pub fn reduce_angle(x: &Interval, prec: u32) -> Interval {
    let extra = x.mag().magnitude_exp().max(0) as u32;
    let wp = prec + GUARD + extra;
    let two_pi = pi(wp).mul_pow2(1);
    let q = x.mid().div(&two_pi.mid(), 64, Round::Down);
    let k: BigInt = q.add(&Dyadic::new(1.into(), -1)).floor();
    x.sub(&two_pi.mul(&Interval::from_int(k), wp), wp).round(prec)
}
