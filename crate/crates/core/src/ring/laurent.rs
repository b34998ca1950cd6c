use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::var::Var;
use crate::ball::{ComplexBall, Interval};

/// A Laurent monomial: sorted `(variable, nonzero exponent)` pairs.
///
/// Ordered lexicographically on exponent vectors, variables taken in name
/// order, missing variables counting as exponent zero. This is a group order
/// compatible with multiplication.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(Var, i32); 2]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var, e: i32) -> Self {
        let mut m = Monomial::one();
        if e != 0 {
            m.0.push((v, e));
        }
        m
    }

    pub fn from_pairs<I: IntoIterator<Item = (Var, i32)>>(pairs: I) -> Self {
        let mut acc: BTreeMap<Var, i32> = BTreeMap::new();
        for (v, e) in pairs {
            *acc.entry(v).or_insert(0) += e;
        }
        Monomial(acc.into_iter().filter(|(_, e)| *e != 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(Var, i32)] {
        &self.0
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.0.iter().find(|(w, _)| *w == v).map(|(_, e)| *e).unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out: SmallVec<[(Var, i32); 2]> = SmallVec::new();
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push(b[j]);
                j += 1;
            } else {
                let e = a[i].1 + b[j].1;
                if e != 0 {
                    out.push((a[i].0, e));
                }
                i += 1;
                j += 1;
            }
        }
        Monomial(out)
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|&(v, e)| (v, -e)).collect())
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: i32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(v, e)| (v, e * k)).collect())
    }

    /// Sum of absolute exponents.
    pub fn weight(&self) -> u64 {
        self.0.iter().map(|(_, e)| e.unsigned_abs() as u64).sum()
    }

    fn invert_vars(&self, vars: &BTreeSet<Var>) -> Monomial {
        Monomial(self.0.iter().map(|&(v, e)| if vars.contains(&v) { (v, -e) } else { (v, e) }).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, e)), None) => return e.cmp(&0),
                (None, Some(&(_, e))) => return 0.cmp(&e),
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return ea.cmp(&0),
                    Ordering::Greater => return 0.cmp(&eb),
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        write_monomial(f, self)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    for (k, (v, e)) in m.0.iter().enumerate() {
        if k > 0 {
            f.write_str("*")?;
        }
        if *e == 1 {
            write!(f, "{v}")?;
        } else {
            write!(f, "{v}^{e}")?;
        }
    }
    Ok(())
}

/// Multivariate Laurent polynomial with integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        LaurentPoly::constant(BigInt::one())
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        LaurentPoly::term(Monomial::one(), c.into())
    }

    pub fn var(v: Var) -> Self {
        LaurentPoly::term(Monomial::var(v, 1), BigInt::one())
    }

    pub fn term(m: Monomial, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(it: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn as_constant(&self) -> Option<&BigInt> {
        match self.terms.len() {
            0 => None,
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                if m.is_one() {
                    Some(c)
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || self.as_constant().is_some()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(BigInt::zero)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.0.iter().map(|(v, _)| *v)).collect()
    }

    pub fn min_exp(&self, v: Var) -> i32 {
        self.terms.keys().map(|m| m.exp(v)).min().unwrap_or(0)
    }

    pub fn max_exp(&self, v: Var) -> i32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    /// Componentwise minimum exponent over all terms: the largest monomial
    /// dividing every term.
    pub fn min_monomial(&self) -> Monomial {
        Monomial::from_pairs(self.vars().into_iter().map(|v| (v, self.min_exp(v))))
    }

    /// Largest total weight of any term, used for pivot selection.
    pub fn weight(&self) -> u64 {
        self.terms.keys().map(Monomial::weight).max().unwrap_or(0)
    }

    /// Positive gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn scale(&self, c: &BigInt) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    /// Divide every coefficient by `c`; `None` if some coefficient is not divisible.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Option<LaurentPoly> {
        let mut terms = BTreeMap::new();
        for (m, k) in &self.terms {
            let (q, r) = k.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            terms.insert(m.clone(), q);
        }
        Some(LaurentPoly { terms })
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut result = LaurentPoly::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact quotient in the Laurent ring, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        if d.is_monomial() {
            let (dm, dc) = d.leading_term().unwrap();
            let inv = dm.inv();
            return self.div_scalar_exact(dc).map(|p| p.mul_monomial(&inv));
        }
        // Every quotient exponent of v lies in [min_v(self) - min_v(d), max_v(self) - max_v(d)].
        let vars: BTreeSet<Var> = self.vars().union(&d.vars()).copied().collect();
        let mut bounds = BTreeMap::new();
        for &v in &vars {
            let lo = self.min_exp(v) - d.min_exp(v);
            let hi = self.max_exp(v) - d.max_exp(v);
            if lo > hi {
                return None;
            }
            bounds.insert(v, (lo, hi));
        }
        let (dm, dc) = d.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some((rm, rc)) = rem.leading_term() {
            let (qc, r) = rc.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            let qm = rm.div(&dm);
            for (&v, &(lo, hi)) in &bounds {
                let e = qm.exp(v);
                if e < lo || e > hi {
                    return None;
                }
            }
            for (m, c) in &d.terms {
                rem.add_term(m.mul(&qm), -(c * &qc));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Replace every inverted variable `v` by `v^{-1}`.
    pub fn invert_vars(&self, vars: &BTreeSet<Var>) -> LaurentPoly {
        if vars.is_empty() {
            return self.clone();
        }
        LaurentPoly::from_terms(self.terms.iter().map(|(m, c)| (m.invert_vars(vars), c.clone())))
    }

    /// Substitute `v -> replacement` where the replacement is a monomial.
    pub fn substitute_monomial(&self, v: Var, replacement: &Monomial) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(m, c)| {
            let e = m.exp(v);
            let rest = m.div(&Monomial::var(v, e));
            (rest.mul(&replacement.pow(e)), c.clone())
        }))
    }

    /// Substitute an arbitrary Laurent polynomial for `v` (exponents of `v` must be nonnegative).
    pub fn substitute(&self, v: Var, replacement: &LaurentPoly) -> Option<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e < 0 {
                return None;
            }
            let rest = LaurentPoly::term(m.div(&Monomial::var(v, e)), c.clone());
            out = &out + &(&rest * &replacement.pow(e as u32));
        }
        Some(out)
    }

    /// Evaluate at a complex point. Missing variables are an error.
    pub fn eval(&self, point: &BTreeMap<Var, ComplexBall>, prec: u32) -> Result<ComplexBall, EvalFailure> {
        let mut powers: HashMap<(Var, i32), ComplexBall> = HashMap::new();
        let mut acc = ComplexBall::zero();
        for (m, c) in &self.terms {
            let mut t = ComplexBall::real(Interval::from_int(c.clone()));
            for &(v, e) in m.pairs() {
                let z = match powers.get(&(v, e)) {
                    Some(z) => z.clone(),
                    None => {
                        let base = point.get(&v).ok_or(EvalFailure::MissingVariable(v))?;
                        let z = base.powi(e as i64, prec).map_err(|_| EvalFailure::ZeroBase(v))?;
                        powers.insert((v, e), z.clone());
                        z
                    }
                };
                t = t.mul(&z, prec);
            }
            acc = acc.add(&t, prec);
        }
        Ok(acc)
    }

    /// Coefficients as a polynomial in `v` (exponents of `v` must be >= 0):
    /// entry `k` is the coefficient of `v^k`.
    pub(crate) fn to_univariate(&self, v: Var) -> Vec<LaurentPoly> {
        let deg = self.max_exp(v).max(0) as usize;
        let mut out = vec![LaurentPoly::zero(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exp(v);
            debug_assert!(e >= 0);
            let rest = m.div(&Monomial::var(v, e));
            out[e as usize].add_term(rest, c.clone());
        }
        out
    }

    pub(crate) fn from_univariate(coeffs: &[LaurentPoly], v: Var) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            let m = Monomial::var(v, k as i32);
            for (cm, cc) in &c.terms {
                out.add_term(cm.mul(&m), cc.clone());
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalFailure {
    MissingVariable(Var),
    ZeroBase(Var),
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl fmt::Display for LaurentPoly {
    /// Terms in descending order, e.g. `x^2+1+x^-2` or `-2*a*L^-1+3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if neg {
                f.write_str("-")?;
            } else if k > 0 {
                f.write_str("+")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> LaurentPoly {
        LaurentPoly::var(Var::new("x"))
    }
    fn y() -> LaurentPoly {
        LaurentPoly::var(Var::new("y"))
    }

    #[test]
    fn monomial_order_is_multiplicative() {
        let a = Monomial::from_pairs([(Var::new("x"), 2), (Var::new("y"), -1)]);
        let b = Monomial::from_pairs([(Var::new("x"), 1), (Var::new("y"), 5)]);
        let c = Monomial::from_pairs([(Var::new("y"), 3)]);
        assert!(a > b);
        assert!(a.mul(&c) > b.mul(&c));
        assert!(Monomial::one() > Monomial::var(Var::new("x"), -1));
    }

    #[test]
    fn display_orders_descending() {
        let xinv = LaurentPoly::term(Monomial::var(Var::new("x"), -1), BigInt::one());
        let p = &(&x() + &xinv) - &LaurentPoly::constant(3);
        assert_eq!(p.to_string(), "x-3+x^-1");
        let q = &(&x() * &y()).scale(&BigInt::from(-2)) + &LaurentPoly::one();
        assert_eq!(q.to_string(), "-2*x*y+1");
    }

    #[test]
    fn exact_division() {
        let a = &(&x() + &y()) * &(&x() - &LaurentPoly::one());
        let q = a.div_exact(&(&x() + &y())).unwrap();
        assert_eq!(q, &x() - &LaurentPoly::one());
        assert!(a.div_exact(&(&x() + &LaurentPoly::constant(2))).is_none());
        let xinv = LaurentPoly::term(Monomial::var(Var::new("x"), -1), BigInt::one());
        let b = &a * &xinv;
        assert_eq!(b.div_exact(&(&x() - &LaurentPoly::one())).unwrap(), &(&x() + &y()) * &xinv);
    }

    #[test]
    fn involution_is_involutive() {
        let vars: BTreeSet<Var> = [Var::new("x")].into_iter().collect();
        let p = &(&x().pow(3) * &y()) + &LaurentPoly::constant(7);
        assert_eq!(p.invert_vars(&vars).invert_vars(&vars), p);
        assert_ne!(p.invert_vars(&vars), p);
    }
}
