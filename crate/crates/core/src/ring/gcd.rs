//! Multivariate gcd over the integers by recursive primitive remainder sequences.

use num_integer::Integer;
use num_traits::Signed;

use super::laurent::LaurentPoly;

/// Greatest common divisor in the Laurent ring, normalized to an ordinary
/// polynomial without monomial factors and with positive leading coefficient.
/// `gcd(0, 0) = 0`.
pub fn gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => LaurentPoly::zero(),
        (true, false) => normalize_unit(&strip_monomial(b)),
        (false, true) => normalize_unit(&strip_monomial(a)),
        (false, false) => poly_gcd(&strip_monomial(a), &strip_monomial(b)),
    }
}

/// Divide out the largest monomial factor so all exponents are nonnegative
/// and each variable has minimum exponent zero.
pub fn strip_monomial(p: &LaurentPoly) -> LaurentPoly {
    let m = p.min_monomial();
    if m.is_one() {
        p.clone()
    } else {
        p.mul_monomial(&m.inv())
    }
}

fn normalize_unit(p: &LaurentPoly) -> LaurentPoly {
    if p.leading_coeff().is_negative() {
        -p
    } else {
        p.clone()
    }
}

/// gcd of two nonzero ordinary polynomials.
fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if let (Some(x), Some(y)) = (a.as_constant(), b.as_constant()) {
        return LaurentPoly::constant(x.gcd(y));
    }
    if a.is_constant() || b.is_constant() {
        let g = a.content().gcd(&b.content());
        return LaurentPoly::constant(g);
    }
    if a == b {
        return normalize_unit(a);
    }
    let main = *a.vars().union(&b.vars()).next().expect("nonconstant input has a variable");
    let ua = a.to_univariate(main);
    let ub = b.to_univariate(main);
    let ca = content_of(&ua);
    let cb = content_of(&ub);
    let c = poly_gcd(&ca, &cb);
    if ua.len() == 1 || ub.len() == 1 {
        return c;
    }
    let pa = divide_all(&ua, &ca);
    let pb = divide_all(&ub, &cb);
    let g = primitive_prs(pa, pb);
    let g = LaurentPoly::from_univariate(&g, main);
    normalize_unit(&(&c * &g))
}

/// gcd of the coefficients of a univariate polynomial, itself a polynomial
/// in the remaining variables.
fn content_of(u: &[LaurentPoly]) -> LaurentPoly {
    let mut g = LaurentPoly::zero();
    for c in u.iter().filter(|c| !c.is_zero()) {
        g = if g.is_zero() { normalize_unit(c) } else { poly_gcd(&g, c) };
        if g.is_one() {
            break;
        }
    }
    g
}

fn divide_all(u: &[LaurentPoly], c: &LaurentPoly) -> Vec<LaurentPoly> {
    u.iter()
        .map(|x| x.div_exact(c).expect("content divides every coefficient"))
        .collect()
}

fn primitive_part(u: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let c = content_of(u);
    let mut v = divide_all(u, &c);
    if v.last().map(|l| l.leading_coeff().is_negative()).unwrap_or(false) {
        for x in v.iter_mut() {
            *x = -&*x;
        }
    }
    v
}

fn trim(u: &mut Vec<LaurentPoly>) {
    while u.last().map(|c| c.is_zero()).unwrap_or(false) {
        u.pop();
    }
}

/// Pseudo-remainder of `a` by `b` (both nonzero, `deg a >= deg b`).
fn pseudo_rem(a: &[LaurentPoly], b: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let mut r = a.to_vec();
    let lb = b.last().unwrap().clone();
    let db = b.len() - 1;
    while r.len() > db && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] = &r[i + shift] - &(&lr * bc);
        }
        trim(&mut r);
    }
    r
}

fn primitive_prs(a: Vec<LaurentPoly>, b: Vec<LaurentPoly>) -> Vec<LaurentPoly> {
    let (mut a, mut b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    loop {
        let r = pseudo_rem(&a, &b);
        if r.is_empty() {
            return primitive_part(&b);
        }
        if r.len() == 1 {
            return vec![LaurentPoly::one()];
        }
        a = b;
        b = primitive_part(&r);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse::parse_laurent;

    fn p(s: &str) -> LaurentPoly {
        parse_laurent(s).unwrap()
    }

    #[test]
    fn univariate_gcd() {
        let g = gcd(&p("x^2-1"), &p("x^2+2*x+1"));
        assert_eq!(g, p("x+1"));
        let g = gcd(&p("6*x^2-6"), &p("4*x-4"));
        assert_eq!(g, p("2*x-2"));
    }

    #[test]
    fn multivariate_gcd() {
        let f = p("x*y+x+y^2+2*y+1");
        let a = &f * &p("x-y");
        let b = &f * &p("x^3+y+3");
        assert_eq!(gcd(&a, &b), f);
    }

    #[test]
    fn laurent_units_are_ignored() {
        let g = gcd(&p("x^-3*(x^2-1)"), &p("-x^5*(x-1)"));
        assert_eq!(g, p("x-1"));
    }

    #[test]
    fn coprime_gives_one() {
        assert!(gcd(&p("x+y"), &p("x-y")).is_one());
        assert!(gcd(&p("2*x+2"), &p("3")).is_one());
    }
}
