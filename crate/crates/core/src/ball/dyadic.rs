use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact binary fraction `man * 2^exp`.
///
/// Kept normalized: the mantissa is odd, or zero with exponent zero. Two
/// equal values therefore have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    man: BigInt,
    exp: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

impl Dyadic {
    pub fn new(man: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { man, exp };
        d.normalize();
        d
    }

    fn normalize(&mut self) {
        if self.man.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.man.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.man >>= tz;
            self.exp += tz as i64;
        }
    }

    pub fn zero() -> Self {
        Dyadic { man: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { man: BigInt::one(), exp: 0 }
    }

    pub fn from_int<T: Into<BigInt>>(v: T) -> Self {
        Dyadic::new(v.into(), 0)
    }

    /// Exact conversion; every finite double is a dyadic rational.
    pub fn from_f64(v: f64) -> Option<Self> {
        if !v.is_finite() {
            return None;
        }
        if v == 0.0 {
            return Some(Dyadic::zero());
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (man, exp) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Some(Dyadic::new(BigInt::from(man) * sign, exp))
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Self {
        Dyadic { man: BigInt::one(), exp: e }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.man.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.man.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.man.is_positive()
    }

    /// Number of significant mantissa bits.
    pub fn bits(&self) -> u64 {
        self.man.bits()
    }

    /// Position of the most significant bit: `2^(msb-1) <= |self| < 2^msb`.
    pub fn magnitude_exp(&self) -> i64 {
        self.exp + self.man.bits() as i64
    }

    pub fn neg(&self) -> Self {
        Dyadic { man: -&self.man, exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        Dyadic { man: self.man.abs(), exp: self.exp }
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.man << (self.exp - e) as usize;
        let b = &other.man << (other.exp - e) as usize;
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic::new(&self.man * &other.man, self.exp + other.exp)
    }

    pub fn mul_pow2(&self, e: i64) -> Dyadic {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic { man: self.man.clone(), exp: self.exp + e }
    }

    /// Rounds to at most `prec` significant bits in the given direction.
    pub fn round(&self, prec: u32, dir: Round) -> Dyadic {
        let bits = self.man.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        // BigInt shifts round toward negative infinity.
        let floor = &self.man >> shift as usize;
        let man = match dir {
            Round::Down => floor,
            Round::Up => -((-&self.man) >> shift as usize),
        };
        Dyadic::new(man, self.exp + shift as i64)
    }

    /// `self / other` rounded to `prec` bits in direction `dir`.
    pub fn div(&self, other: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        // Scale the numerator so the integer quotient carries `prec + 2` bits.
        let want = prec as i64 + 2;
        let have = self.man.bits() as i64 - other.man.bits() as i64;
        let shift = (want - have).max(0);
        let num = &self.man << shift as usize;
        let (q, r) = num.div_mod_floor(&other.man);
        let q = if dir == Round::Up && !r.is_zero() { q + 1 } else { q };
        Dyadic::new(q, self.exp - other.exp - shift).round(prec, dir)
    }

    /// Square root of a nonnegative value, rounded to `prec` bits.
    pub fn sqrt(&self, prec: u32, dir: Round) -> Dyadic {
        assert!(!self.is_negative(), "square root of a negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let mut shift = (2 * prec as i64 + 4 - self.man.bits() as i64).max(0);
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let scaled: BigInt = &self.man << shift as usize;
        let r = scaled.sqrt();
        let r = if dir == Round::Up && &r * &r != scaled { r + 1 } else { r };
        Dyadic::new(r, (self.exp - shift) / 2).round(prec, dir)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.man << self.exp as usize)
        } else {
            BigRational::new(self.man.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    /// Directed rounding of a rational to `prec` bits.
    pub fn from_rational(q: &BigRational, prec: u32, dir: Round) -> Dyadic {
        Dyadic::from_int(q.numer().clone()).div(&Dyadic::from_int(q.denom().clone()), prec, dir)
    }

    /// Floor of the value as an integer.
    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.man << self.exp as usize
        } else {
            &self.man >> (-self.exp) as usize
        }
    }

    pub fn ceil(&self) -> BigInt {
        -(self.neg().floor())
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.man.bits() as i64;
        let drop = (bits - 60).max(0);
        let m = (&self.man >> drop as usize).to_f64().unwrap_or(f64::NAN);
        let e = self.exp + drop;
        if e > 2000 {
            return m.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0;
        }
        // Split the scaling so subnormal results do not underflow early.
        let half = (e / 2) as i32;
        m * 2f64.powi(half) * 2f64.powi(e as i32 - half)
    }

    pub fn min(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a <= b { a.clone() } else { b.clone() }
    }

    pub fn max(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a >= b { a.clone() } else { b.clone() }
    }

    /// Hexadecimal float notation, e.g. `-0x1b3p-7`; parsed back exactly by
    /// [`Dyadic::parse_hex`].
    pub fn to_hex(&self) -> String {
        let sign = if self.man.is_negative() { "-" } else { "" };
        format!("{}0x{}p{}", sign, self.man.abs().to_str_radix(16), self.exp)
    }

    /// Decimal string with `digits` fractional digits, rounded toward minus infinity.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = BigInt::from(10).pow(digits as u32);
        let q = self.to_rational() * BigRational::from_integer(scale);
        let v = q.floor().to_integer();
        let neg = v.is_negative();
        let s = v.abs().to_string();
        let s = if s.len() <= digits { format!("{}{}", "0".repeat(digits + 1 - s.len()), s) } else { s };
        let (ip, fp) = s.split_at(s.len() - digits);
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{ip}")
        } else {
            format!("{sign}{ip}.{fp}")
        }
    }

    pub fn parse_hex(s: &str) -> Option<Dyadic> {
        let s = s.trim();
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let body = body.strip_prefix("0x")?;
        let (m, e) = body.split_once('p')?;
        let man = BigInt::parse_bytes(m.as_bytes(), 16)?;
        let exp: i64 = e.parse().ok()?;
        Some(Dyadic::new(if neg { -man } else { man }, exp))
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let e = self.exp.min(other.exp);
        let a = &self.man << (self.exp - e) as usize;
        let b = &other.man << (other.exp - e) as usize;
        a.cmp(&b)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.to_hex(), self.to_f64())
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_right_is_floor() {
        let a = BigInt::from(-5);
        assert_eq!(&a >> 1usize, BigInt::from(-3));
    }

    #[test]
    fn rounding_brackets_value() {
        let third = BigRational::new(1.into(), 3.into());
        let lo = Dyadic::from_rational(&third, 53, Round::Down);
        let hi = Dyadic::from_rational(&third, 53, Round::Up);
        assert!(lo.to_rational() < third && third < hi.to_rational());
        assert_eq!(hi.sub(&lo), Dyadic::pow2(lo.exponent()));
    }

    #[test]
    fn sqrt_two_brackets() {
        let two = Dyadic::from_int(2);
        let lo = two.sqrt(100, Round::Down);
        let hi = two.sqrt(100, Round::Up);
        assert!(lo.mul(&lo) < two && two < hi.mul(&hi));
        let four = Dyadic::from_int(4);
        assert_eq!(four.sqrt(10, Round::Up), Dyadic::from_int(2));
    }

    #[test]
    fn hex_round_trip() {
        for v in [0.0, 1.5, -0.1, 1e300, 3.0e-310] {
            let d = Dyadic::from_f64(v).unwrap();
            assert_eq!(Dyadic::parse_hex(&d.to_hex()).unwrap(), d);
            assert_eq!(d.to_f64(), v);
        }
    }

    #[test]
    fn negative_round_up_and_down() {
        let v = Dyadic::new(BigInt::from(-0b10111), 0);
        assert_eq!(v.round(2, Round::Down), Dyadic::from_int(-24));
        assert_eq!(v.round(2, Round::Up), Dyadic::from_int(-16));
        assert_eq!(v.floor(), BigInt::from(-23));
        assert_eq!(Dyadic::new(BigInt::from(-3), -1).ceil(), BigInt::from(-1));
    }
}
