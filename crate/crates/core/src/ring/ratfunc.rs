use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::gcd::{gcd, strip_monomial};
use super::laurent::{EvalFailure, LaurentPoly, Monomial};
use super::var::Var;
use crate::ball::ComplexBall;

/// Element of the fraction field of the Laurent ring, kept in canonical form:
/// the denominator is an ordinary polynomial with no monomial factor and a
/// positive leading coefficient, coprime to the numerator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RatEvalFailure {
    Missing(Var),
    DenominatorVanishes,
}

impl From<EvalFailure> for RatEvalFailure {
    fn from(e: EvalFailure) -> Self {
        match e {
            EvalFailure::MissingVariable(v) => RatEvalFailure::Missing(v),
            EvalFailure::ZeroBase(_) => RatEvalFailure::DenominatorVanishes,
        }
    }
}

impl RatFunc {
    /// Build `num / den`; panics if `den` is zero.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        Self::try_new(num, den).expect("zero denominator")
    }

    pub fn try_new(num: LaurentPoly, den: LaurentPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(RatFunc::zero());
        }
        let dm = den.min_monomial();
        let den = strip_monomial(&den);
        let num = num.mul_monomial(&dm.inv());
        let g = if den.is_constant() {
            LaurentPoly::constant(num_integer::Integer::gcd(&num.content(), den.as_constant().unwrap()))
        } else {
            gcd(&num, &den)
        };
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        Some(RatFunc::fix_sign(num, den))
    }

    fn fix_sign(num: LaurentPoly, den: LaurentPoly) -> Self {
        if den.leading_coeff().is_negative() {
            RatFunc { num: -&num, den: -&den }
        } else {
            RatFunc { num, den }
        }
    }

    pub fn zero() -> Self {
        RatFunc { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        RatFunc::from_poly(LaurentPoly::one())
    }

    pub fn from_int<T: Into<BigInt>>(c: T) -> Self {
        RatFunc::from_poly(LaurentPoly::constant(c))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RatFunc { num: p, den: LaurentPoly::one() }
    }

    pub fn var(v: Var) -> Self {
        RatFunc::from_poly(LaurentPoly::var(v))
    }

    pub fn monomial(v: Var, e: i32) -> Self {
        RatFunc::from_poly(LaurentPoly::term(Monomial::var(v, e), BigInt::one()))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The Laurent polynomial this equals, if the denominator is trivial.
    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v
    }

    /// Rough size used to pick elimination pivots.
    pub fn weight(&self) -> u64 {
        self.num.weight() + self.den.weight() + self.num.num_terms() as u64 + self.den.num_terms() as u64
    }

    pub fn inv(&self) -> Option<RatFunc> {
        if self.is_zero() {
            return None;
        }
        // Both parts are already coprime, so only units need adjusting.
        let nm = self.num.min_monomial();
        let num = self.den.mul_monomial(&nm.inv());
        let den = strip_monomial(&self.num);
        Some(RatFunc::fix_sign(num, den))
    }

    pub fn pow(&self, k: i64) -> Option<RatFunc> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let e = k.unsigned_abs() as u32;
        Some(RatFunc { num: base.num.pow(e), den: base.den.pow(e) })
    }

    pub fn scale_int(&self, c: &BigInt) -> RatFunc {
        RatFunc::new(self.num.scale(c), self.den.clone())
    }

    /// Apply `v -> v^{-1}` to each listed variable.
    pub fn invert_vars(&self, vars: &BTreeSet<Var>) -> RatFunc {
        if vars.is_empty() || self.vars().is_disjoint(vars) {
            return self.clone();
        }
        let num = self.num.invert_vars(vars);
        let den = self.den.invert_vars(vars);
        // Coprimality survives the ring automorphism; only units move.
        let dm = den.min_monomial();
        let num = num.mul_monomial(&dm.inv());
        let den = den.mul_monomial(&dm.inv());
        RatFunc::fix_sign(num, den)
    }

    pub fn substitute_monomial(&self, v: Var, m: &Monomial) -> RatFunc {
        RatFunc::new(self.num.substitute_monomial(v, m), self.den.substitute_monomial(v, m))
    }

    pub fn eval(&self, point: &BTreeMap<Var, ComplexBall>, prec: u32) -> Result<ComplexBall, RatEvalFailure> {
        let n = self.num.eval(point, prec)?;
        if self.den.is_one() {
            return Ok(n);
        }
        let d = self.den.eval(point, prec)?;
        n.div(&d, prec).map_err(|_| RatEvalFailure::DenominatorVanishes)
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num + &rhs.num);
        }
        let g = gcd(&self.den, &rhs.den);
        let b = self.den.div_exact(&g).unwrap();
        let d = rhs.den.div_exact(&g).unwrap();
        let num = &(&self.num * &d) + &(&rhs.num * &b);
        RatFunc::new(num, &self.den * &d)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        // Cross-cancel; inputs are reduced so the result is too.
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let a = self.num.div_exact(&g1).unwrap();
        let d = rhs.den.div_exact(&g1).unwrap();
        let c = rhs.num.div_exact(&g2).unwrap();
        let b = self.den.div_exact(&g2).unwrap();
        RatFunc::fix_sign(&a * &c, &b * &d)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero; use [`RatFunc::inv`] to check.
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self * &rhs.inv().expect("division by zero rational function")
    }
}

impl fmt::Display for RatFunc {
    /// Parseable form: `num` or `(num)/(den)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
