//! Exact real root counting and isolation by Sturm sequences over the rationals.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::poly::IntPoly;
use crate::ball::Dyadic;

type QPoly = Vec<BigRational>;

fn to_q(p: &IntPoly) -> QPoly {
    p.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

fn trim(p: &mut QPoly) {
    while p.last().map(Zero::is_zero).unwrap_or(false) {
        p.pop();
    }
}

fn rem(a: &QPoly, b: &QPoly) -> QPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    while r.len() > db && !r.is_empty() {
        let f = r.last().unwrap() / lb;
        let shift = r.len() - 1 - db;
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &f * c;
        }
        trim(&mut r);
    }
    r
}

fn eval(p: &QPoly, x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn sign(q: &BigRational) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

fn changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0;
    let mut n = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// Sturm chain `p, p', -rem(p, p'), ...` of a polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<QPoly>,
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> Self {
        let p0 = to_q(p);
        let mut chain = vec![p0.clone()];
        if let Some(d) = p.derivative() {
            let mut a = p0;
            let mut b = to_q(&d);
            loop {
                chain.push(b.clone());
                let r = rem(&a, &b);
                if r.is_empty() {
                    break;
                }
                a = b;
                b = r.into_iter().map(|c| -c).collect();
            }
        }
        SturmChain { chain }
    }

    /// True when the last chain element is constant, i.e. `p` is squarefree.
    pub fn is_squarefree(&self) -> bool {
        self.chain.last().map(|p| p.len() == 1).unwrap_or(true)
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        changes(self.chain.iter().map(|p| sign(&eval(p, x))))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        changes(self.chain.iter().map(|p| sign(p.last().unwrap())))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        changes(self.chain.iter().map(|p| {
            let s = sign(p.last().unwrap());
            if (p.len() - 1) % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Number of distinct roots in `(a, b)`; neither endpoint may be a root.
    pub fn count_between(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations_at(a) - self.variations_at(b)
    }

    pub fn count_above(&self, a: &BigRational) -> usize {
        self.variations_at(a) - self.variations_at_pos_inf()
    }

    pub fn count_below(&self, a: &BigRational) -> usize {
        self.variations_at_neg_inf() - self.variations_at(a)
    }
}

/// Cauchy bound: every root has absolute value below `1 + max|a_i/a_n|`,
/// rounded up to a power of two.
pub fn root_bound(p: &IntPoly) -> Dyadic {
    let lead = p.leading().abs();
    let max = p.coeffs().iter().map(|c| c.abs()).max().unwrap();
    let bound = (max / &lead) + BigInt::from(2);
    Dyadic::pow2(bound.bits() as i64)
}

/// Isolating intervals with dyadic endpoints for the real roots of a
/// squarefree polynomial in `(lo, hi)`, in increasing order. Neither bound
/// may be a root.
pub fn isolate(p: &IntPoly, chain: &SturmChain, lo: &Dyadic, hi: &Dyadic) -> Vec<(Dyadic, Dyadic)> {
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone())];
    while let Some((a, b)) = stack.pop() {
        let count = chain.count_between(&a.to_rational(), &b.to_rational());
        match count {
            0 => {}
            1 => out.push((a, b)),
            _ => {
                // Split near the middle at a point that is not itself a root.
                let step = b.sub(&a).mul_pow2(-10);
                let mut mid = a.add(&b).mul_pow2(-1);
                while p.eval_dyadic(&mid).is_zero() {
                    mid = mid.add(&step);
                }
                stack.push((mid.clone(), b));
                stack.push((a, mid));
            }
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

/// Bisect an isolating interval (sign change at the ends) to width below `2^-bits`.
pub fn refine(p: &IntPoly, lo: &Dyadic, hi: &Dyadic, bits: u32) -> (Dyadic, Dyadic) {
    let (mut a, mut b) = (lo.clone(), hi.clone());
    if a == b {
        return (a, b);
    }
    let sa = p.eval_dyadic(&a).signum();
    let target = Dyadic::pow2(-(bits as i64));
    while b.sub(&a) >= target {
        let mid = a.add(&b).mul_pow2(-1);
        let sm = p.eval_dyadic(&mid).signum();
        match sm.cmp(&0) {
            Ordering::Equal => return (mid.clone(), mid),
            _ if sm == sa => a = mid,
            _ => b = mid,
        }
    }
    (a, b)
}

pub(crate) fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_for_cubic() {
        // (y - 3)(y - 1)(y + 1)
        let p = IntPoly::from_desc_i64(&[1, -3, -1, 3]);
        let c = SturmChain::new(&p);
        assert!(c.is_squarefree());
        assert_eq!(c.count_above(&rational(2)), 1);
        assert_eq!(c.count_between(&rational(-2), &rational(2)), 2);
        assert_eq!(c.count_below(&rational(-2)), 0);
    }

    #[test]
    fn detects_square_factor() {
        let p = IntPoly::from_desc_i64(&[1, -2, 1]);
        assert!(!SturmChain::new(&p).is_squarefree());
    }

    #[test]
    fn isolation_and_refinement() {
        let p = IntPoly::from_desc_i64(&[1, 0, -2]);
        let c = SturmChain::new(&p);
        let b = root_bound(&p);
        let roots = isolate(&p, &c, &b.neg(), &b);
        assert_eq!(roots.len(), 2);
        let (lo, hi) = refine(&p, &roots[1].0, &roots[1].1, 60);
        assert!(hi.sub(&lo) < Dyadic::pow2(-60));
        assert!((lo.to_f64() - 2f64.sqrt()).abs() < 1e-15);
        let exact = IntPoly::from_desc_i64(&[1, 0, -1]);
        let r = isolate(&exact, &SturmChain::new(&exact), &Dyadic::from_int(-4), &Dyadic::from_int(4));
        assert_eq!(r.len(), 2);
    }
}
