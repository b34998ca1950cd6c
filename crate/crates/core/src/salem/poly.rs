use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ball::{Dyadic, Interval};
use crate::ring::{parse_laurent, Var};

/// Dense univariate polynomial with integer coefficients, stored in
/// ascending order of degree. Never the zero polynomial.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyParseError(pub String);

impl fmt::Display for PolyParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for PolyParseError {}

impl IntPoly {
    /// From coefficients in ascending order; `None` for the zero polynomial.
    pub fn from_ascending(mut coeffs: Vec<BigInt>) -> Option<Self> {
        while coeffs.last().map(Zero::is_zero).unwrap_or(false) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            None
        } else {
            Some(IntPoly { coeffs })
        }
    }

    /// From coefficients with the leading one first and the constant term last.
    pub fn from_descending(mut coeffs: Vec<BigInt>) -> Option<Self> {
        coeffs.reverse();
        IntPoly::from_ascending(coeffs)
    }

    pub fn from_desc_i64(coeffs: &[i64]) -> Self {
        IntPoly::from_descending(coeffs.iter().map(|&c| BigInt::from(c)).collect()).expect("nonzero polynomial")
    }

    pub fn constant(c: BigInt) -> Option<Self> {
        IntPoly::from_ascending(vec![c])
    }

    /// `x - c`.
    pub fn linear_root(c: BigInt) -> Self {
        IntPoly { coeffs: vec![-c, BigInt::one()] }
    }

    /// Parse either whitespace-separated integers (leading coefficient first)
    /// or an expression in a single variable such as `x^10+x^9-x^7+1`.
    pub fn parse(src: &str) -> Result<Self, PolyParseError> {
        let src = src.trim();
        let looks_numeric = src.split_whitespace().all(|t| t.parse::<BigInt>().is_ok());
        if looks_numeric && !src.is_empty() {
            let coeffs = src.split_whitespace().map(|t| t.parse::<BigInt>().unwrap()).collect();
            return IntPoly::from_descending(coeffs).ok_or_else(|| PolyParseError("zero polynomial".into()));
        }
        let p = parse_laurent(src).map_err(|e| PolyParseError(format!("{e}")))?;
        let vars = p.vars();
        if vars.len() > 1 {
            return Err(PolyParseError("polynomial must be univariate".into()));
        }
        let v = vars.into_iter().next().unwrap_or_else(|| Var::new("x"));
        if p.min_exp(v) < 0 {
            return Err(PolyParseError("negative exponent in polynomial".into()));
        }
        let deg = p.max_exp(v).max(0) as usize;
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        for (m, c) in p.terms() {
            coeffs[m.exp(v) as usize] = c.clone();
        }
        IntPoly::from_ascending(coeffs).ok_or_else(|| PolyParseError("zero polynomial".into()))
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().unwrap()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn is_reciprocal(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|k| self.coeffs[k] == self.coeffs[n - 1 - k])
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn derivative(&self) -> Option<IntPoly> {
        IntPoly::from_ascending(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * BigInt::from(k)).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly { coeffs: out }
    }

    /// Exact quotient over the integers, if `d` divides `self`.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        if d.degree() > self.degree() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dl = d.leading();
        let mut q = vec![BigInt::zero(); self.degree() - d.degree() + 1];
        for k in (0..q.len()).rev() {
            let top = &rem[k + d.degree()];
            let (c, r) = top.div_rem(dl);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            q[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        IntPoly::from_ascending(q)
    }

    /// Exact value at a dyadic point.
    pub fn eval_dyadic(&self, x: &Dyadic) -> Dyadic {
        let mut acc = Dyadic::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&Dyadic::from_int(c.clone()));
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_interval(&self, x: &Interval, prec: u32) -> Interval {
        let mut acc = Interval::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x, prec).add(&Interval::from_int(c.clone()), prec);
        }
        acc
    }

    /// The degree-`d` trace polynomial `Q` with `p(x) = x^d Q(x + 1/x)`, for
    /// a reciprocal polynomial of even degree `2d`.
    pub fn trace_polynomial(&self) -> Option<IntPoly> {
        if !self.is_reciprocal() || self.degree() % 2 != 0 {
            return None;
        }
        let d = self.degree() / 2;
        // D_k(y) = x^k + x^-k as polynomials in y = x + 1/x.
        let mut dk: Vec<Vec<BigInt>> = vec![vec![BigInt::from(2)], vec![BigInt::zero(), BigInt::one()]];
        for k in 2..=d {
            let mut next = vec![BigInt::zero(); k + 1];
            for (i, c) in dk[k - 1].iter().enumerate() {
                next[i + 1] += c;
            }
            for (i, c) in dk[k - 2].iter().enumerate() {
                next[i] -= c;
            }
            dk.push(next);
        }
        let mut q = vec![BigInt::zero(); d + 1];
        q[0] = self.coeffs[d].clone();
        for k in 1..=d {
            let a = &self.coeffs[d + k];
            for (i, c) in dk[k].iter().enumerate() {
                q[i] += a * c;
            }
        }
        IntPoly::from_ascending(q)
    }

    /// Inverse of [`IntPoly::trace_polynomial`]: `x^d Q(x + 1/x)`.
    pub fn from_trace(q: &IntPoly) -> IntPoly {
        let d = q.degree();
        // (x^2 + 1)^i x^(d-i) summed with coefficients q_i.
        let mut out = vec![BigInt::zero(); 2 * d + 1];
        let mut pow = vec![BigInt::one()];
        for i in 0..=d {
            for (j, c) in pow.iter().enumerate() {
                out[j + d - i] += &q.coeffs[i] * c;
            }
            let mut next = vec![BigInt::zero(); pow.len() + 2];
            for (j, c) in pow.iter().enumerate() {
                next[j] += c;
                next[j + 2] += c;
            }
            pow = next;
        }
        IntPoly::from_ascending(out).expect("nonzero")
    }

    pub fn to_desc_string(&self) -> String {
        self.coeffs.iter().rev().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Display for IntPoly {
    /// Expression form in `x`, highest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            match (k, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{abs}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{abs}*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_both_syntaxes() {
        let a = IntPoly::parse("1 1 0 -1 -1 -1 -1 -1 0 1 1").unwrap();
        let b = IntPoly::parse("x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.degree(), 10);
        assert_eq!(b.to_string(), "x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1");
        assert!(IntPoly::parse("x^-1+1").is_err());
        assert!(IntPoly::parse("x*y").is_err());
    }

    #[test]
    fn trace_polynomial_round_trip() {
        let lehmer = IntPoly::from_desc_i64(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        let q = lehmer.trace_polynomial().unwrap();
        assert_eq!(q.degree(), 5);
        assert_eq!(IntPoly::from_trace(&q), lehmer);
        let quad = IntPoly::from_desc_i64(&[1, -3, 1]);
        assert_eq!(quad.trace_polynomial().unwrap(), IntPoly::from_desc_i64(&[1, -3]));
    }

    #[test]
    fn exact_division() {
        let a = IntPoly::from_desc_i64(&[1, 0, -1]);
        let b = IntPoly::from_desc_i64(&[1, 1]);
        assert_eq!(a.div_exact(&b).unwrap(), IntPoly::from_desc_i64(&[1, -1]));
        assert!(a.div_exact(&IntPoly::from_desc_i64(&[1, 2])).is_none());
    }
}
