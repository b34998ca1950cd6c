//! Salem numbers: exact certification, root enclosures, powers, and the
//! search for powers whose unit-circle conjugates lie in an arc about 1.

mod poly;
mod relation;
mod sturm;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::ball::elementary::{acos, cos, expi, pi, reduce_angle};
use crate::ball::{ComplexBall, Dyadic, Interval, PrecisionPolicy};
use crate::ring::{gcd, LaurentPoly, Monomial, Var};

pub use poly::{IntPoly, PolyParseError};
pub use relation::{integer_relation, minimal_polynomial_candidate};
pub use sturm::SturmChain;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SalemError {
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is not reciprocal")]
    NotReciprocal,
    #[error("polynomial is reducible: factor {0}")]
    Reducible(String),
    #[error("root location fails: {0}")]
    RootLocationFails(String),
    #[error("precision insufficient at {0} bits")]
    PrecisionInsufficient(u32),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// A certified Salem polynomial with enclosures of all its roots.
///
/// The trace polynomial `Q` (with `p(x) = x^d Q(x + 1/x)`) has one root
/// `y_0 = s + 1/s > 2` and `d - 1` roots `y_j = 2 cos(theta_j)` in `(-2, 2)`;
/// those are isolated exactly and everything else is derived from them.
#[derive(Clone, Debug)]
pub struct SalemCert {
    poly: IntPoly,
    trace: IntPoly,
    /// `[y_0, y_1, ..., y_{d-1}]` with `y_1 > y_2 > ...`, as dyadic brackets.
    trace_roots: Vec<(Dyadic, Dyadic)>,
    precision_bits: u32,
    s_ball: Interval,
    s_inv_ball: Interval,
    arg_balls: Vec<Interval>,
}

/// Outcome for one exponent in [`SalemCert::power_in_arc`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcStatus {
    Certified,
    Unknown,
}

impl SalemCert {
    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn trace_poly(&self) -> &IntPoly {
        &self.trace
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn s_ball(&self) -> &Interval {
        &self.s_ball
    }

    pub fn s_inv_ball(&self) -> &Interval {
        &self.s_inv_ball
    }

    /// Arguments in `(0, pi)` of the unit-circle roots with positive
    /// imaginary part, in increasing order.
    pub fn arg_balls(&self) -> &[Interval] {
        &self.arg_balls
    }

    pub fn trace_root_balls(&self) -> Vec<Interval> {
        self.trace_roots.iter().map(|(a, b)| Interval::new(a.clone(), b.clone())).collect()
    }

    fn build(poly: IntPoly, trace: IntPoly, roots: Vec<(Dyadic, Dyadic)>, bits: u32) -> SalemCert {
        let chain_bits = bits + 8;
        let roots: Vec<(Dyadic, Dyadic)> =
            roots.iter().map(|(a, b)| sturm::refine(&trace, a, b, chain_bits)).collect();
        let y0 = Interval::new(roots[0].0.clone(), roots[0].1.clone());
        let disc = y0.sqr(chain_bits).sub(&Interval::from_int(4), chain_bits);
        // y0 > 2, so only rounding can make the lower end negative.
        let disc = Interval::new(Dyadic::max(disc.lo(), &Dyadic::zero()), disc.hi().clone());
        let root = disc.sqrt(chain_bits).expect("nonnegative");
        let s_ball = y0.add(&root, chain_bits).mul_pow2(-1).round(bits);
        let s_inv_ball = s_ball.recip(bits).expect("s > 1");
        let arg_balls = roots[1..]
            .iter()
            .map(|(a, b)| acos(&Interval::new(a.clone(), b.clone()).mul_pow2(-1), bits))
            .collect();
        SalemCert { poly, trace, trace_roots: roots, precision_bits: bits, s_ball, s_inv_ball, arg_balls }
    }

    /// The same certificate with enclosures recomputed at `bits` precision.
    pub fn with_precision(&self, bits: u32) -> SalemCert {
        if bits == self.precision_bits {
            return self.clone();
        }
        SalemCert::build(self.poly.clone(), self.trace.clone(), self.trace_roots.clone(), bits)
    }

    /// Certified enclosures of the conjugates of `s^m`: `s^m`, `s^-m`, then
    /// `e^{i m theta_j}` and `e^{-i m theta_j}` for each `j`.
    pub fn conjugate_points(&self, m: u32) -> Vec<ComplexBall> {
        let prec = self.precision_bits;
        let sm = self.s_ball.pow(m, prec);
        let sim = self.s_inv_ball.pow(m, prec);
        let mut out = vec![ComplexBall::real(sm), ComplexBall::real(sim)];
        for theta in &self.arg_balls {
            let z = expi(&theta.mul(&Interval::from_int(m), prec), prec);
            out.push(z.clone());
            out.push(z.conj());
        }
        out
    }

    /// `m * theta_j` reduced to `(-pi, pi]`.
    pub fn reduced_arg(&self, j: usize, m: u32) -> Interval {
        let prec = self.precision_bits;
        reduce_angle(&self.arg_balls[j].mul(&Interval::from_int(m), prec), prec)
    }

    /// Certificate for `s^m`, reconstructed from certified powered roots.
    ///
    /// For a genuine Salem number the degree never drops, but if the
    /// reconstructed trace polynomial has repeated roots its squarefree part
    /// is certified instead, so the returned degree is the true one.
    pub fn power(&self, m: u32, policy: &PrecisionPolicy) -> Result<SalemCert, SalemError> {
        if m == 0 {
            return Err(SalemError::InvalidInput("power must be positive".into()));
        }
        if m == 1 {
            return Ok(self.clone());
        }
        let mut found: Option<IntPoly> = None;
        let mut last_bits = policy.start_bits;
        for bits in policy.schedule() {
            last_bits = bits;
            let c = self.with_precision(bits.max(self.precision_bits));
            if let Some(q) = c.powered_trace(m) {
                found = Some(q);
                break;
            }
        }
        let qm = found.ok_or(SalemError::PrecisionInsufficient(last_bits))?;
        let qm = squarefree_part(&qm);
        let pm = IntPoly::from_trace(&qm);
        salem_check(&pm, policy)
    }

    /// Trace polynomial of `s^m` if every coefficient is pinned to an integer.
    fn powered_trace(&self, m: u32) -> Option<IntPoly> {
        let prec = self.precision_bits;
        let mut ys = vec![self.s_ball.pow(m, prec).add(&self.s_inv_ball.pow(m, prec), prec)];
        for theta in &self.arg_balls {
            ys.push(cos(&theta.mul(&Interval::from_int(m), prec), prec).mul_pow2(1));
        }
        let coeffs = product_coefficients(&ys, prec);
        let ints = pin_integers(&coeffs)?;
        IntPoly::from_ascending(ints)
    }

    /// Exponents `m <= m_max` for which every unit-circle conjugate of `s^m`
    /// lies in the open arc `(-half_width, half_width)` about argument 0.
    ///
    /// Exponents certified outside are omitted; exponents still undecided at
    /// the precision cap are reported `Unknown`.
    pub fn power_in_arc(
        &self,
        half_width: &Interval,
        m_max: u32,
        policy: &PrecisionPolicy,
    ) -> Result<Vec<(u32, ArcStatus)>, SalemError> {
        if !half_width.is_positive() || half_width.certainly_gt(&pi(64)) {
            return Err(SalemError::InvalidInput("half width must lie in (0, pi]".into()));
        }
        if m_max == 0 {
            return Ok(Vec::new());
        }
        if self.arg_balls.is_empty() {
            return Ok((1..=m_max).map(|m| (m, ArcStatus::Certified)).collect());
        }
        // radius * m_max < 1e-3 * half_width needs about this many bits.
        let hw = half_width.lo().to_f64().max(1e-300);
        let need = ((m_max as f64) * 1000.0 / hw).log2().ceil().max(0.0) as u32 + 8;
        let mut pending: Vec<u32> = (1..=m_max).collect();
        let mut result: Vec<(u32, ArcStatus)> = Vec::new();
        for bits in policy.schedule() {
            if bits < need && bits < policy.cap_bits {
                continue;
            }
            let c = self.with_precision(bits.max(self.precision_bits));
            let two_pi = pi(bits + 16).mul_pow2(1);
            let mut undecided = Vec::new();
            for &m in &pending {
                match c.arc_class(m, half_width, &two_pi) {
                    Class::Inside => result.push((m, ArcStatus::Certified)),
                    Class::Outside => {}
                    Class::Straddle => undecided.push(m),
                }
            }
            pending = undecided;
            if pending.is_empty() {
                break;
            }
        }
        result.extend(pending.into_iter().map(|m| (m, ArcStatus::Unknown)));
        result.sort_by_key(|(m, _)| *m);
        Ok(result)
    }

    fn arc_class(&self, m: u32, hw: &Interval, two_pi: &Interval) -> Class {
        let prec = self.precision_bits;
        let mut all_inside = true;
        for j in 0..self.arg_balls.len() {
            let a = self.reduced_arg(j, m);
            let inside = a.lo() > &hw.lo().neg() && a.hi() < hw.lo();
            if inside {
                continue;
            }
            all_inside = false;
            let outside = [a.clone(), a.sub(two_pi, prec), a.add(two_pi, prec)]
                .iter()
                .all(|r| r.lo() >= hw.hi() || r.hi() <= &hw.hi().neg());
            if outside {
                return Class::Outside;
            }
        }
        if all_inside {
            Class::Inside
        } else {
            Class::Straddle
        }
    }
}

enum Class {
    Inside,
    Outside,
    Straddle,
}

/// Coefficients (ascending) of `prod (y - r_i)` in interval arithmetic.
fn product_coefficients(roots: &[Interval], prec: u32) -> Vec<Interval> {
    let mut c = vec![Interval::one()];
    for r in roots {
        let mut next = vec![Interval::zero(); c.len() + 1];
        for (k, a) in c.iter().enumerate() {
            next[k + 1] = next[k + 1].add(a, prec);
            next[k] = next[k].sub(&a.mul(r, prec), prec);
        }
        c = next;
    }
    c
}

enum Pinned {
    Value(BigInt),
    NoInteger,
    Ambiguous,
}

fn pin(c: &Interval) -> Pinned {
    if c.excludes_integers() {
        return Pinned::NoInteger;
    }
    if c.radius() < Dyadic::new(BigInt::one(), -1) {
        if let Some(v) = c.unique_integer() {
            return Pinned::Value(v);
        }
    }
    Pinned::Ambiguous
}

fn pin_integers(coeffs: &[Interval]) -> Option<Vec<BigInt>> {
    coeffs
        .iter()
        .map(|c| match pin(c) {
            Pinned::Value(v) => Some(v),
            _ => None,
        })
        .collect()
}

fn to_laurent(p: &IntPoly, v: Var) -> LaurentPoly {
    LaurentPoly::from_terms(p.coeffs().iter().enumerate().map(|(k, c)| (Monomial::var(v, k as i32), c.clone())))
}

fn squarefree_part(q: &IntPoly) -> IntPoly {
    let Some(dq) = q.derivative() else { return q.clone() };
    let v = Var::new("y");
    let lq = to_laurent(q, v);
    let g = gcd(&lq, &to_laurent(&dq, v));
    if g.is_constant() {
        return q.clone();
    }
    let part = lq.div_exact(&g).expect("gcd divides");
    let deg = part.max_exp(v) as usize;
    let mut coeffs = vec![BigInt::zero(); deg + 1];
    for (m, c) in part.terms() {
        coeffs[m.exp(v) as usize] = c.clone();
    }
    IntPoly::from_ascending(coeffs).expect("nonzero")
}

/// Exact Salem certification of a monic polynomial.
pub fn salem_check(p: &IntPoly, policy: &PrecisionPolicy) -> Result<SalemCert, SalemError> {
    if p.degree() < 2 {
        return Err(SalemError::InvalidInput("degree must be at least 2".into()));
    }
    if !p.is_monic() {
        return Err(SalemError::NotMonic);
    }
    if !p.is_reciprocal() {
        return Err(SalemError::NotReciprocal);
    }
    if p.degree() % 2 == 1 {
        return Err(SalemError::RootLocationFails("odd reciprocal polynomial has the root -1".into()));
    }
    let q = p.trace_polynomial().expect("reciprocal of even degree");
    let d = q.degree();
    let two = Dyadic::from_int(2);
    if q.eval_dyadic(&two).is_zero() {
        return Err(SalemError::RootLocationFails("root at x = 1".into()));
    }
    if q.eval_dyadic(&two.neg()).is_zero() {
        return Err(SalemError::RootLocationFails("root at x = -1".into()));
    }
    let chain = SturmChain::new(&q);
    if !chain.is_squarefree() {
        return Err(SalemError::RootLocationFails("repeated roots".into()));
    }
    let r2 = sturm::rational(2);
    let above = chain.count_above(&r2);
    let inside = chain.count_between(&sturm::rational(-2), &r2);
    if above != 1 {
        return Err(SalemError::RootLocationFails(format!("{above} real roots above 1 (need exactly 1)")));
    }
    if inside != d - 1 {
        return Err(SalemError::RootLocationFails(format!(
            "{} of {} conjugate pairs on the unit circle",
            inside,
            d - 1
        )));
    }
    let bound = sturm::root_bound(&q);
    let mut roots = sturm::isolate(&q, &chain, &two, &Dyadic::max(&bound, &Dyadic::from_int(4)));
    let mut unit = sturm::isolate(&q, &chain, &two.neg(), &two);
    unit.reverse();
    roots.extend(unit);
    debug_assert_eq!(roots.len(), d);
    check_irreducible(&q, &roots, policy)?;
    Ok(SalemCert::build(p.clone(), q, roots, policy.start_bits))
}

/// `Q` is irreducible iff `p` is: a factorization of `Q` lifts to one of `p`,
/// and when `Q` is irreducible every root of `p` is a conjugate of `s`.
/// Candidate monic factors are products over subsets of the real roots of `Q`.
fn check_irreducible(q: &IntPoly, roots: &[(Dyadic, Dyadic)], policy: &PrecisionPolicy) -> Result<(), SalemError> {
    let d = roots.len();
    if d < 2 {
        return Ok(());
    }
    let q0 = q.coeff(0);
    let subsets: Vec<Vec<usize>> = (1u64..(1 << d))
        .filter(|mask| {
            let k = mask.count_ones() as usize;
            // Complements give the cofactor, so half the sizes suffice.
            2 * k < d || (2 * k == d && mask & 1 == 1)
        })
        .map(|mask| (0..d).filter(|i| mask >> i & 1 == 1).collect())
        .collect();
    let mut open: Vec<Vec<usize>> = subsets;
    for bits in policy.schedule() {
        let balls: Vec<Interval> = roots
            .iter()
            .map(|(a, b)| {
                let (lo, hi) = sturm::refine(q, a, b, bits);
                Interval::new(lo, hi)
            })
            .collect();
        let mut still = Vec::new();
        for subset in open {
            let rs: Vec<Interval> = subset.iter().map(|&i| balls[i].clone()).collect();
            let coeffs = product_coefficients(&rs, bits);
            let mut ints = Vec::with_capacity(coeffs.len());
            let mut rejected = false;
            let mut ambiguous = false;
            for c in &coeffs {
                match pin(c) {
                    Pinned::Value(v) => ints.push(v),
                    Pinned::NoInteger => {
                        rejected = true;
                        break;
                    }
                    Pinned::Ambiguous => ambiguous = true,
                }
            }
            if rejected {
                continue;
            }
            if ambiguous {
                still.push(subset);
                continue;
            }
            if !ints[0].is_zero() && (&q0 % &ints[0]).is_zero() {
                let f = IntPoly::from_ascending(ints).expect("monic");
                if q.div_exact(&f).is_some() {
                    return Err(SalemError::Reducible(IntPoly::from_trace(&f).to_string()));
                }
            }
        }
        open = still;
        if open.is_empty() {
            return Ok(());
        }
    }
    Err(SalemError::PrecisionInsufficient(policy.cap_bits))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lehmer() -> IntPoly {
        IntPoly::from_desc_i64(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
    }

    #[test]
    fn lehmer_certifies() {
        let c = salem_check(&lehmer(), &PrecisionPolicy::default()).unwrap();
        assert_eq!(c.degree(), 10);
        assert_eq!(c.arg_balls().len(), 4);
        let s = c.s_ball();
        assert!(s.lo().to_f64() > 1.17 && s.hi().to_f64() < 1.18);
        assert!(s.width() < Dyadic::from_f64(1e-20).unwrap());
    }

    #[test]
    fn rejects_non_salem() {
        let pol = PrecisionPolicy::default();
        assert_eq!(salem_check(&IntPoly::from_desc_i64(&[1, -2, 1]), &pol).unwrap_err(), SalemError::RootLocationFails("root at x = 1".into()));
        assert_eq!(salem_check(&IntPoly::from_desc_i64(&[1, 0, 0, -2]), &pol).unwrap_err(), SalemError::NotReciprocal);
        assert_eq!(salem_check(&IntPoly::from_desc_i64(&[2, 1, 2]), &pol).unwrap_err(), SalemError::NotMonic);
        // (x^2 - 3x + 1)(x^2 + x + 1) has the right root pattern but factors.
        let red = IntPoly::from_desc_i64(&[1, -3, 1]).mul(&IntPoly::from_desc_i64(&[1, 1, 1]));
        assert!(matches!(salem_check(&red, &pol), Err(SalemError::Reducible(_))));
    }

    #[test]
    fn quadratic_power() {
        let pol = PrecisionPolicy::default();
        let c = salem_check(&IntPoly::from_desc_i64(&[1, -3, 1]), &pol).unwrap();
        let c2 = c.power(2, &pol).unwrap();
        assert_eq!(c2.poly(), &IntPoly::from_desc_i64(&[1, -7, 1]));
        assert_eq!(c.power(1, &pol).unwrap().poly(), c.poly());
    }
}
