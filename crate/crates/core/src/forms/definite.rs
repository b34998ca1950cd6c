//! Certified positive definiteness and signatures of evaluated forms.

use super::point::Point;
use super::FormError;
use crate::ball::{ComplexBall, Dyadic, Interval, PrecisionPolicy};
use crate::ring::{BallMatrix, RingError, RingMatrix};

/// A Hermitian matrix of complex balls. The stored entries are the average
/// of the evaluated matrix and its conjugate transpose, which still encloses
/// the true (exactly Hermitian) matrix.
#[derive(Clone, Debug)]
pub struct HermitianEval {
    dim: usize,
    entries: Vec<ComplexBall>,
    hermitian_defect: Dyadic,
}

impl HermitianEval {
    /// Fails if the enclosure certifies that the matrix is not Hermitian.
    pub fn new(m: &BallMatrix, prec: u32) -> Result<Self, FormError> {
        let n = m.dim();
        let defect = m.hermitian_defect(prec);
        let ct = m.conj_transpose();
        if !m.overlaps(&ct) {
            return Err(FormError::NotHermitian);
        }
        let half = Interval::point(Dyadic::new(1.into(), -1));
        let entries = m.entries().iter().zip(ct.entries()).map(|(a, b)| a.add(b, prec).scale(&half, prec)).collect();
        Ok(HermitianEval { dim: n, entries, hermitian_defect: defect })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &ComplexBall {
        &self.entries[i * self.dim + j]
    }

    pub fn hermitian_defect(&self) -> &Dyadic {
        &self.hermitian_defect
    }
}

/// A certified yes/no answer, or an honest failure to decide.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Certified(bool),
    PrecisionInsufficient,
}

/// Positive definiteness with its evidence.
#[derive(Clone, Debug)]
pub struct PosDefReport {
    pub verdict: Verdict,
    /// Precision of the deciding (or last) attempt.
    pub bits: u32,
    /// Enclosures of the leading principal minors computed at that precision,
    /// up to the first one that was not certified positive.
    pub minors: Vec<Interval>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SigStatus {
    Certified,
    PrecisionInsufficient,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignatureResult {
    pub positives: usize,
    pub negatives: usize,
    pub status: SigStatus,
}

impl SignatureResult {
    pub fn is_certified(&self) -> bool {
        self.status == SigStatus::Certified
    }
}

enum Minors {
    AllPositive(Vec<Interval>),
    NotPositive(Vec<Interval>),
    Undecided(Vec<Interval>),
}

/// Gaussian elimination in order; pivot `k` is the ratio of consecutive
/// leading principal minors, so the minors are the running products.
fn leading_minors(h: &HermitianEval, prec: u32) -> Minors {
    let n = h.dim;
    let mut a = h.entries.clone();
    let mut minors = Vec::with_capacity(n);
    let mut det = Interval::one();
    for k in 0..n {
        let p = a[k * n + k].re.clone();
        det = det.mul(&p, prec);
        minors.push(det.clone());
        if p.is_positive() {
        } else if p.hi() <= &Dyadic::zero() {
            return Minors::NotPositive(minors);
        } else {
            return Minors::Undecided(minors);
        }
        let pc = ComplexBall::real(p);
        for i in k + 1..n {
            let f = a[i * n + k].div(&pc, prec).expect("positive pivot");
            for j in k + 1..n {
                let t = f.mul(&a[k * n + j], prec);
                a[i * n + j] = a[i * n + j].sub(&t, prec);
            }
        }
    }
    Minors::AllPositive(minors)
}

fn real_part_sign(z: &ComplexBall) -> Option<bool> {
    if z.re.is_positive() {
        Some(true)
    } else if z.re.is_negative() {
        Some(false)
    } else {
        None
    }
}

enum Inertia {
    Done(usize, usize),
    Undecided,
    Degenerate,
}

/// Congruence diagonalization with symmetric pivoting: 1x1 pivots with a
/// certified sign, or 2x2 pivots with certified negative determinant (one
/// positive and one negative eigenvalue).
fn inertia(h: &HermitianEval, prec: u32) -> Inertia {
    let n = h.dim;
    let mut a = h.entries.clone();
    let mut alive: Vec<usize> = (0..n).collect();
    let (mut pos, mut neg) = (0, 0);
    while !alive.is_empty() {
        let best = alive
            .iter()
            .copied()
            .filter(|&i| real_part_sign(&a[i * n + i]).is_some())
            .max_by(|&i, &j| a[i * n + i].re.mig().cmp(&a[j * n + j].re.mig()));
        if let Some(k) = best {
            let p = a[k * n + k].re.clone();
            if p.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            alive.retain(|&i| i != k);
            let pc = ComplexBall::real(p);
            for &i in &alive {
                let f = a[i * n + k].div(&pc, prec).expect("nonzero pivot");
                for &j in &alive {
                    let t = f.mul(&a[k * n + j], prec);
                    a[i * n + j] = a[i * n + j].sub(&t, prec);
                }
            }
            continue;
        }
        let mut pair = None;
        'search: for (x, &i) in alive.iter().enumerate() {
            for &j in &alive[x + 1..] {
                let d = a[i * n + i].re.mul(&a[j * n + j].re, prec).sub(&a[i * n + j].norm_sqr(prec), prec);
                if d.is_negative() {
                    pair = Some((i, j, d));
                    break 'search;
                }
            }
        }
        let Some((i, j, d)) = pair else {
            let all_exact_zero = alive.iter().all(|&i| alive.iter().all(|&j| a[i * n + j].is_exact() && a[i * n + j].contains_zero()));
            return if all_exact_zero { Inertia::Degenerate } else { Inertia::Undecided };
        };
        pos += 1;
        neg += 1;
        alive.retain(|&r| r != i && r != j);
        // Block inverse [[a_ii, a_ij], [a_ji, a_jj]]^-1 = adj / d.
        let dc = ComplexBall::real(d);
        let inv = [
            a[j * n + j].div(&dc, prec).unwrap(),
            a[i * n + j].neg().div(&dc, prec).unwrap(),
            a[j * n + i].neg().div(&dc, prec).unwrap(),
            a[i * n + i].div(&dc, prec).unwrap(),
        ];
        let snapshot = a.clone();
        for &r in &alive {
            let u = [&snapshot[r * n + i], &snapshot[r * n + j]];
            let left = [
                u[0].mul(&inv[0], prec).add(&u[1].mul(&inv[2], prec), prec),
                u[0].mul(&inv[1], prec).add(&u[1].mul(&inv[3], prec), prec),
            ];
            for &c in &alive {
                let t = left[0].mul(&snapshot[i * n + c], prec).add(&left[1].mul(&snapshot[j * n + c], prec), prec);
                a[r * n + c] = snapshot[r * n + c].sub(&t, prec);
            }
        }
    }
    Inertia::Done(pos, neg)
}

fn evaluate(j: &RingMatrix, point: &Point, prec: u32) -> Result<HermitianEval, FormError> {
    let values = point.eval(prec)?;
    let m = j.evaluate(&values, prec).map_err(|e| match e {
        RingError::DenominatorVanishes => FormError::DenominatorVanishes,
        RingError::PrecisionInsufficient => FormError::DenominatorVanishes,
        other => FormError::Ring(other),
    })?;
    HermitianEval::new(&m, prec)
}

/// Positive definiteness of a fixed evaluated matrix at one precision.
pub fn posdef_of_eval(h: &HermitianEval, prec: u32) -> PosDefReport {
    match leading_minors(h, prec) {
        Minors::AllPositive(minors) => PosDefReport { verdict: Verdict::Certified(true), bits: prec, minors },
        Minors::NotPositive(minors) => PosDefReport { verdict: Verdict::Certified(false), bits: prec, minors },
        Minors::Undecided(minors) => PosDefReport { verdict: Verdict::PrecisionInsufficient, bits: prec, minors },
    }
}

/// Certified positive definiteness via leading principal minors, escalating
/// precision along the policy schedule.
pub fn is_positive_definite_at(j: &RingMatrix, point: &Point, policy: &PrecisionPolicy) -> Result<PosDefReport, FormError> {
    let mut last = None;
    for bits in policy.schedule() {
        let h = match evaluate(j, point, bits) {
            Ok(h) => h,
            // A denominator ball containing zero may clear up at higher precision.
            Err(FormError::DenominatorVanishes) => continue,
            Err(e) => return Err(e),
        };
        let report = posdef_of_eval(&h, bits);
        if report.verdict != Verdict::PrecisionInsufficient {
            return Ok(report);
        }
        last = Some(report);
    }
    last.ok_or(FormError::DenominatorVanishes)
}

/// Certified signature (positives, negatives), escalating precision.
pub fn signature_at(j: &RingMatrix, point: &Point, policy: &PrecisionPolicy) -> Result<SignatureResult, FormError> {
    let mut saw_eval = false;
    for bits in policy.schedule() {
        let h = match evaluate(j, point, bits) {
            Ok(h) => h,
            Err(FormError::DenominatorVanishes) => continue,
            Err(e) => return Err(e),
        };
        saw_eval = true;
        match inertia(&h, bits) {
            Inertia::Done(p, n) => return Ok(SignatureResult { positives: p, negatives: n, status: SigStatus::Certified }),
            Inertia::Degenerate => return Err(FormError::DegenerateAtPoint),
            Inertia::Undecided => {}
        }
    }
    if !saw_eval {
        return Err(FormError::DenominatorVanishes);
    }
    Ok(SignatureResult { positives: 0, negatives: 0, status: SigStatus::PrecisionInsufficient })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::point::Value;
    use crate::reps::{bmw_b4_form, squier_form};
    use crate::ring::{parse_ratfunc, Involution, RatFunc};
    use num_rational::BigRational;

    fn diag(v: &[i64]) -> RingMatrix {
        RingMatrix::diagonal(v.iter().map(|&c| RatFunc::from_int(c)).collect(), Involution::trivial()).unwrap()
    }

    #[test]
    fn squier_at_one_and_at_i() {
        let policy = PrecisionPolicy::new(64, 512);
        let j = squier_form(3);
        let r = is_positive_definite_at(&j, &Point::new().with("x", Value::int(1)), &policy).unwrap();
        assert_eq!(r.verdict, Verdict::Certified(true));
        // t = i means x = e^{i pi/4}; the determinant vanishes there.
        let x = Value::UnitAngle { pi_mult: BigRational::new(1.into(), 4.into()), offset: BigRational::from_integer(0.into()) };
        let r = is_positive_definite_at(&j, &Point::new().with("x", x), &policy).unwrap();
        assert_ne!(r.verdict, Verdict::Certified(true));
        assert!(r.minors.last().unwrap().contains_zero());
    }

    #[test]
    fn signatures() {
        let policy = PrecisionPolicy::new(64, 256);
        let s = signature_at(&diag(&[1, -1, 1]), &Point::new(), &policy).unwrap();
        assert_eq!((s.positives, s.negatives, s.status), (2, 1, SigStatus::Certified));
        let j = squier_form(3);
        let x = Value::expi(BigRational::new(1.into(), 20.into()));
        let s = signature_at(&j, &Point::new().with("x", x), &policy).unwrap();
        assert_eq!((s.positives, s.negatives), (3, 0));
        // Zero diagonal needs a 2x2 pivot.
        let inv = Involution::trivial();
        let hyp = RingMatrix::from_rows(
            vec![
                vec![RatFunc::zero(), RatFunc::one(), RatFunc::zero()],
                vec![RatFunc::one(), RatFunc::zero(), RatFunc::zero()],
                vec![RatFunc::zero(), RatFunc::zero(), parse_ratfunc("-3").unwrap()],
            ],
            inv,
        )
        .unwrap();
        let s = signature_at(&hyp, &Point::new(), &policy).unwrap();
        assert_eq!((s.positives, s.negatives), (1, 2));
        assert_eq!(signature_at(&diag(&[1, 0, 1]), &Point::new(), &policy), Err(FormError::DegenerateAtPoint));
    }

    #[test]
    fn bmw_form_at_i_one() {
        let policy = PrecisionPolicy::new(64, 256);
        let p = Point::new().with("a", Value::i()).with("L", Value::int(1));
        let r = is_positive_definite_at(&bmw_b4_form(), &p, &policy).unwrap();
        assert_eq!(r.verdict, Verdict::Certified(true));
    }
}
