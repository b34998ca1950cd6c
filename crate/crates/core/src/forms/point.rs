//! Evaluation points that can be recomputed at any precision.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::FormError;
use crate::ball::elementary::{expi, pi, reduce_angle};
use crate::ball::{ComplexBall, Dyadic, Interval, PrecisionPolicy, Round};
use crate::ring::Var;
use crate::salem::{salem_check, IntPoly, SalemCert};

/// Which conjugate of a Salem number `s` to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Embedding {
    /// `s` itself.
    Real,
    /// `1/s`.
    Inverse,
    /// `e^{i theta_j}` (or `e^{-i theta_j}` when `lower`), `j` indexing
    /// [`SalemCert::arg_balls`].
    Circle { j: usize, lower: bool },
}

impl Embedding {
    /// All embeddings of a Salem field of degree `d`.
    pub fn all(d: usize) -> Vec<Embedding> {
        let mut out = vec![Embedding::Real, Embedding::Inverse];
        for j in 0..d / 2 - 1 {
            out.push(Embedding::Circle { j, lower: false });
            out.push(Embedding::Circle { j, lower: true });
        }
        out
    }

    /// The unit-circle embeddings with positive imaginary part, one for each
    /// real place of `Q(s + 1/s)` at which `(s - 1/s)^2` is negative.
    pub fn upper_circle(d: usize) -> Vec<Embedding> {
        (0..d / 2 - 1).map(|j| Embedding::Circle { j, lower: false }).collect()
    }
}

impl fmt::Display for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Embedding::Real => f.write_str("s"),
            Embedding::Inverse => f.write_str("1/s"),
            Embedding::Circle { j, lower: false } => write!(f, "e^(+i*theta{})", j + 1),
            Embedding::Circle { j, lower: true } => write!(f, "e^(-i*theta{})", j + 1),
        }
    }
}

/// A value assigned to one variable.
#[derive(Clone, Debug)]
pub enum Value {
    /// `re + im*i` with rational parts.
    Exact { re: BigRational, im: BigRational },
    /// `e^{i (pi_mult*pi + offset)}`.
    UnitAngle { pi_mult: BigRational, offset: BigRational },
    /// `sigma(s)^exp`; see [`Exponent`] for the branch.
    Salem { cert: Arc<SalemCert>, exp: Exponent, embedding: Embedding },
}

/// An exponent `p/q` of a Salem number, kept unreduced: `s^(p/q)` means the
/// principal `q`-th root of `s^p`, i.e. angle `reduce(p theta)/q` on the unit
/// circle and the positive root on the real line. So `s^(16/2)` at a circle
/// conjugate is `e^{i reduce(16 theta)/2}`, which may differ in sign from
/// `e^{8 i theta}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Exponent {
    pub num: i64,
    pub den: u32,
}

impl Exponent {
    pub fn new(num: i64, den: u32) -> Self {
        assert!(den > 0, "exponent denominator must be positive");
        Exponent { num, den }
    }

    pub fn int(num: i64) -> Self {
        Exponent { num, den: 1 }
    }

    pub fn parse(src: &str) -> Option<Exponent> {
        let s = src.trim().trim_start_matches('(').trim_end_matches(')');
        let (n, d) = s.split_once('/').unwrap_or((s, "1"));
        let den: u32 = d.trim().parse().ok()?;
        (den > 0).then_some(())?;
        Some(Exponent { num: n.trim().parse().ok()?, den })
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl Value {
    pub fn int(v: i64) -> Value {
        Value::Exact { re: BigRational::from_integer(v.into()), im: BigRational::zero() }
    }

    pub fn i() -> Value {
        Value::Exact { re: BigRational::zero(), im: BigRational::one() }
    }

    /// `e^{i x}` for rational `x`.
    pub fn expi(x: BigRational) -> Value {
        Value::UnitAngle { pi_mult: BigRational::zero(), offset: x }
    }

    pub fn eval(&self, prec: u32) -> Result<ComplexBall, FormError> {
        match self {
            Value::Exact { re, im } => {
                Ok(ComplexBall::new(Interval::from_rational(re, prec), Interval::from_rational(im, prec)))
            }
            Value::UnitAngle { pi_mult, offset } => {
                let wp = prec + 16;
                let a = pi(wp)
                    .mul(&Interval::from_rational(pi_mult, wp), wp)
                    .add(&Interval::from_rational(offset, wp), wp);
                Ok(expi(&a, prec))
            }
            Value::Salem { cert, exp, embedding } => salem_power(cert, exp, *embedding, prec),
        }
    }
}

fn salem_power(cert: &SalemCert, exp: &Exponent, e: Embedding, prec: u32) -> Result<ComplexBall, FormError> {
    let wp = prec + 16;
    let c = cert.with_precision(wp.max(cert.precision_bits()));
    let (p, q) = (exp.num, exp.den);
    match e {
        Embedding::Real | Embedding::Inverse => {
            let base = if e == Embedding::Real { c.s_ball() } else { c.s_inv_ball() };
            let v = base.powi(p, wp).map_err(|_| FormError::InvalidPoint("singular power".into()))?;
            Ok(ComplexBall::real(nth_root(&v, q, wp).round(prec)))
        }
        Embedding::Circle { j, lower } => {
            if j >= c.arg_balls().len() {
                return Err(FormError::InvalidPoint(format!("no conjugate {}", j + 1)));
            }
            let theta = if lower { c.arg_balls()[j].neg() } else { c.arg_balls()[j].clone() };
            let a = reduce_angle(&theta.mul(&Interval::from_int(p), wp), wp);
            let a = a.div(&Interval::from_int(q), wp).expect("q > 0");
            Ok(expi(&a, prec))
        }
    }
}

/// Enclosure of the positive `q`-th root of a positive interval.
fn nth_root(v: &Interval, q: u32, prec: u32) -> Interval {
    if q == 1 {
        return v.clone();
    }
    if q == 2 {
        return v.sqrt(prec).expect("positive");
    }
    let root = |x: &Dyadic, dir: Round| -> Dyadic {
        // Bisection for r with r^q = x, bracketed by [0, max(1, x)].
        let mut lo = Dyadic::zero();
        let mut hi = Dyadic::max(&Dyadic::one(), x);
        let eps = Dyadic::pow2(-(prec as i64) + hi.magnitude_exp());
        while hi.sub(&lo) > eps {
            let mid = lo.add(&hi).mul_pow2(-1);
            let mut pw = Dyadic::one();
            for _ in 0..q {
                pw = pw.mul(&mid);
            }
            if &pw <= x {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        match dir {
            Round::Down => lo,
            _ => hi,
        }
    };
    Interval::new(root(v.lo(), Round::Down), root(v.hi(), Round::Up))
}

/// An assignment of values to variables.
#[derive(Clone, Debug, Default)]
pub struct Point {
    values: BTreeMap<Var, Value>,
}

impl Point {
    pub fn new() -> Self {
        Point::default()
    }

    pub fn with(mut self, v: &str, value: Value) -> Self {
        self.values.insert(Var::new(v), value);
        self
    }

    pub fn insert(&mut self, v: Var, value: Value) {
        self.values.insert(v, value);
    }

    pub fn values(&self) -> &BTreeMap<Var, Value> {
        &self.values
    }

    pub fn eval(&self, prec: u32) -> Result<BTreeMap<Var, ComplexBall>, FormError> {
        self.values.iter().map(|(v, val)| Ok((*v, val.eval(prec)?))).collect()
    }

    /// The same point with every Salem value moved to embedding `e`.
    pub fn at_embedding(&self, e: Embedding) -> Point {
        let values = self
            .values
            .iter()
            .map(|(v, val)| {
                let val = match val {
                    Value::Salem { cert, exp, .. } => Value::Salem { cert: cert.clone(), exp: *exp, embedding: e },
                    other => other.clone(),
                };
                (*v, val)
            })
            .collect();
        Point { values }
    }

    /// The Salem certificate used by this point, if any.
    pub fn salem(&self) -> Option<&Arc<SalemCert>> {
        self.values.values().find_map(|v| match v {
            Value::Salem { cert, .. } => Some(cert),
            _ => None,
        })
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .values
            .iter()
            .map(|(v, val)| match val {
                Value::Exact { re, im } if im.is_zero() => format!("{v}={re}"),
                Value::Exact { re, im } => format!("{v}={re}+{im}*i"),
                Value::UnitAngle { pi_mult, offset } => format!("{v}=exp(i*({pi_mult}*pi+{offset}))"),
                Value::Salem { exp, embedding, .. } => format!("{v}=({embedding})^({exp})"),
            })
            .collect();
        f.write_str(&parts.join(","))
    }
}

/// Rational exponents of a Salem number assigned to variables: `v = s^e_v`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Specialization {
    exps: BTreeMap<Var, Exponent>,
}

impl Specialization {
    pub fn new() -> Self {
        Specialization::default()
    }

    pub fn with(mut self, v: &str, num: i64, den: u32) -> Self {
        self.exps.insert(Var::new(v), Exponent::new(num, den));
        self
    }

    /// `x = s^{m/2}`, i.e. `t = x^2 = s^m` for the Squier form.
    pub fn squier(m: u32) -> Self {
        Specialization::new().with("x", m as i64, 2)
    }

    pub fn exps(&self) -> &BTreeMap<Var, Exponent> {
        &self.exps
    }

    pub fn point(&self, cert: &Arc<SalemCert>, e: Embedding) -> Point {
        let values = self
            .exps
            .iter()
            .map(|(v, x)| (*v, Value::Salem { cert: cert.clone(), exp: *x, embedding: e }))
            .collect();
        Point { values }
    }

    /// Least common denominator of the exponents.
    pub fn denominator(&self) -> u32 {
        self.exps.values().fold(1u32, |acc, x| acc.lcm(&x.den))
    }
}

impl fmt::Display for Specialization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exps.iter().map(|(v, e)| format!("{v}={e}")).collect();
        f.write_str(&parts.join(","))
    }
}

impl Specialization {
    /// Parse `x=3/2,a=15`: each variable equals `s` to the given exponent.
    pub fn parse(src: &str) -> Result<Specialization, FormError> {
        let mut out = Specialization::new();
        for piece in src.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let bad = || FormError::InvalidPoint(format!("expected name=exponent, found '{piece}'"));
            let (name, e) = piece.split_once('=').ok_or_else(bad)?;
            let name = name.trim();
            if !Var::is_valid_name(name) {
                return Err(bad());
            }
            let e = Exponent::parse(e).ok_or_else(bad)?;
            out.exps.insert(Var::new(name), e);
        }
        Ok(out)
    }
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((a, b)) = s.split_once('/') {
        let n = parse_decimal(a)?;
        let d = parse_decimal(b)?;
        return if d.is_zero() { None } else { Some(n / d) };
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
    if ip.is_empty() && fp.is_empty() || !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{ip}{fp}");
    let n: BigInt = digits.parse().ok()?;
    let q = BigRational::new(n, BigInt::from(10).pow(fp.len() as u32));
    Some(if neg { -q } else { q })
}

/// Parse `c1*sym + c0` with rational or decimal coefficients, e.g.
/// `pi/2+0.02` or `-i`. Returns `(c1, c0)`.
pub fn parse_linear(src: &str, sym: &str) -> Option<(BigRational, BigRational)> {
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    let s = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')).map(str::to_string).unwrap_or(s);
    let mut terms = Vec::new();
    let mut cur = String::new();
    for (k, ch) in s.chars().enumerate() {
        if (ch == '+' || ch == '-') && k > 0 {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    let (mut c1, mut c0) = (BigRational::zero(), BigRational::zero());
    for t in terms {
        let (neg, body) = match t.strip_prefix('-') {
            Some(r) => (true, r.to_string()),
            None => (false, t.strip_prefix('+').unwrap_or(&t).to_string()),
        };
        let (coef, is_sym) = if let Some(pos) = body.find(sym) {
            let before = body[..pos].trim_end_matches('*');
            let after = &body[pos + sym.len()..];
            let mut c = if before.is_empty() { BigRational::one() } else { parse_decimal(before)? };
            if let Some(d) = after.strip_prefix('/') {
                let d = parse_decimal(d)?;
                if d.is_zero() {
                    return None;
                }
                c /= d;
            } else if !after.is_empty() {
                return None;
            }
            (c, true)
        } else {
            (parse_decimal(&body)?, false)
        };
        let coef = if neg { -coef } else { coef };
        if is_sym {
            c1 += coef;
        } else {
            c0 += coef;
        }
    }
    Some((c1, c0))
}

/// Parse one value: `exp(i*<angle>)`, `salem(<poly>)^<k>`, `i`, or a rational.
pub fn parse_value(src: &str, policy: &PrecisionPolicy) -> Result<Value, FormError> {
    let s = src.trim();
    let bad = || FormError::InvalidPoint(format!("cannot parse value '{s}'"));
    if let Some(inner) = s.strip_prefix("exp(").and_then(|r| r.strip_suffix(')')) {
        let inner = inner.trim();
        let angle = inner.strip_prefix("i*").or_else(|| inner.strip_suffix("*i")).ok_or_else(bad)?;
        let (pi_mult, offset) = parse_linear(angle, "pi").ok_or_else(bad)?;
        return Ok(Value::UnitAngle { pi_mult, offset });
    }
    if let Some(rest) = s.strip_prefix("salem(") {
        let close = rest.find(')').ok_or_else(bad)?;
        let poly = IntPoly::parse(&rest[..close]).map_err(|e| FormError::InvalidPoint(e.to_string()))?;
        let cert = salem_check(&poly, policy).map_err(|e| FormError::InvalidPoint(e.to_string()))?;
        let tail = rest[close + 1..].trim();
        let exp = if tail.is_empty() {
            Exponent::int(1)
        } else {
            Exponent::parse(tail.strip_prefix('^').ok_or_else(bad)?).ok_or_else(bad)?
        };
        return Ok(Value::Salem { cert: Arc::new(cert), exp, embedding: Embedding::Real });
    }
    let (im, re) = parse_linear(s, "i").ok_or_else(bad)?;
    Ok(Value::Exact { re, im })
}

/// Parse `a=i,L=1` style assignments.
pub fn parse_point(src: &str, policy: &PrecisionPolicy) -> Result<Point, FormError> {
    let mut p = Point::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut pieces = Vec::new();
    for (k, ch) in src.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                pieces.push(&src[start..k]);
                start = k + 1;
            }
            _ => {}
        }
    }
    pieces.push(&src[start..]);
    for piece in pieces {
        let (name, val) = piece
            .split_once('=')
            .ok_or_else(|| FormError::InvalidPoint(format!("expected name=value, found '{piece}'")))?;
        let name = name.trim();
        if !Var::is_valid_name(name) {
            return Err(FormError::InvalidPoint(format!("invalid variable name '{name}'")));
        }
        p.insert(Var::new(name), parse_value(val, policy)?);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn linear_forms() {
        assert_eq!(parse_linear("pi/2+0.02", "pi"), Some((q(1, 2), q(1, 50))));
        assert_eq!(parse_linear("-i", "i"), Some((q(-1, 1), q(0, 1))));
        assert_eq!(parse_linear("0.1", "pi"), Some((q(0, 1), q(1, 10))));
        assert_eq!(parse_linear("3/4*pi", "pi"), Some((q(3, 4), q(0, 1))));
        assert_eq!(parse_linear("x", "pi"), None);
    }

    #[test]
    fn assignments() {
        let policy = PrecisionPolicy::default();
        let p = parse_point("a=i,L=1", &policy).unwrap();
        let v = p.eval(64).unwrap();
        assert!(v[&Var::new("a")].contains(&ComplexBall::i()));
        let p = parse_point("t=exp(i*0.1)", &policy).unwrap();
        let (re, im) = p.eval(64).unwrap()[&Var::new("t")].to_f64();
        assert!((re - 0.1f64.cos()).abs() < 1e-15 && (im - 0.1f64.sin()).abs() < 1e-15);
        let p = parse_point("x=salem(1 1 0 -1 -1 -1 -1 -1 0 1 1)^(1/2)", &policy).unwrap();
        let (re, _) = p.eval(128).unwrap()[&Var::new("x")].to_f64();
        assert!((re - 1.17628081826f64.sqrt()).abs() < 1e-10);
        assert!(parse_point("x", &policy).is_err());
    }

    #[test]
    fn roots() {
        let r = nth_root(&Interval::from_int(8), 3, 80);
        assert!(r.contains(&Dyadic::from_int(2)));
        assert!(r.width() < Dyadic::pow2(-70));
    }
}
