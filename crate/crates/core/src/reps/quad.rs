use std::fmt;

use crate::ring::{parse_ratfunc, Involution, RatFunc};

/// `a + b r` with `r^2 = disc`, where the involution is extended by `r -> -r`.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadElem {
    a: RatFunc,
    b: RatFunc,
    disc: RatFunc,
}

impl QuadElem {
    pub fn new(a: RatFunc, b: RatFunc, disc: RatFunc) -> Self {
        QuadElem { a, b, disc }
    }

    pub fn rational(a: RatFunc, disc: RatFunc) -> Self {
        QuadElem { a, b: RatFunc::zero(), disc }
    }

    pub fn a(&self) -> &RatFunc {
        &self.a
    }

    pub fn b(&self) -> &RatFunc {
        &self.b
    }

    pub fn mul(&self, other: &QuadElem) -> QuadElem {
        assert_eq!(self.disc, other.disc, "elements of different extensions");
        let a = &(&self.a * &other.a) + &(&(&self.b * &other.b) * &self.disc);
        let b = &(&self.a * &other.b) + &(&self.b * &other.a);
        QuadElem { a, b, disc: self.disc.clone() }
    }

    /// Apply the involution to the coefficients and send `r` to `-r`; `disc`
    /// must be fixed by the involution.
    pub fn conj(&self, inv: &Involution) -> QuadElem {
        QuadElem { a: inv.apply(&self.a), b: -&inv.apply(&self.b), disc: self.disc.clone() }
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// A `1 x 1` representation `g -> self` preserves the form `(1)` iff
    /// `self * conj(self) = 1`.
    pub fn is_unitary(&self, inv: &Involution) -> bool {
        self.mul(&self.conj(inv)).is_one()
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})*sqrt({})", self.a, self.b, self.disc)
    }
}

impl fmt::Debug for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The three one-dimensional BMW representations of `B_2`: `1/l` and
/// `(m -+ sqrt(m^2-4))/2`.
pub fn bmw_one_dim_reps() -> Vec<(&'static str, QuadElem)> {
    let disc = parse_ratfunc("m^2-4").unwrap();
    let half_m = parse_ratfunc("m/2").unwrap();
    let half = parse_ratfunc("1/2").unwrap();
    vec![
        ("phi1", QuadElem::rational(parse_ratfunc("l^-1").unwrap(), disc.clone())),
        ("rho1", QuadElem::new(half_m.clone(), -&half, disc.clone())),
        ("rho2", QuadElem::new(half_m, half, disc)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::bmw_involution;

    #[test]
    fn one_dim_reps_are_unitary() {
        let inv = bmw_involution();
        for (name, v) in bmw_one_dim_reps() {
            assert!(v.is_unitary(&inv), "{name}");
        }
    }

    #[test]
    fn eigenvalue_relation() {
        // rho satisfies g^2 - m g + 1 = 0.
        let (_, r) = bmw_one_dim_reps().remove(1);
        let sq = r.mul(&r);
        let m = parse_ratfunc("m").unwrap();
        let lhs = QuadElem::new(&(sq.a() - &(&m * r.a())) + &RatFunc::one(), sq.b() - &(&m * r.b()), parse_ratfunc("m^2-4").unwrap());
        assert!(lhs.a().is_zero() && lhs.b().is_zero());
    }
}
