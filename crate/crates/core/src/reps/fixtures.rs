//! Built-in generators and forms.

use num_bigint::BigInt;

use super::{RepError, Representation};
use crate::ring::{parse_ratfunc, Involution, LaurentPoly, Monomial, RatFunc, RingMatrix, Var};

fn x() -> Var {
    Var::new("x")
}

fn mono(v: Var, e: i32, c: i64) -> RatFunc {
    RatFunc::from_poly(LaurentPoly::term(Monomial::var(v, e), BigInt::from(c)))
}

fn expr(s: &str) -> RatFunc {
    parse_ratfunc(s).expect("fixture expression parses")
}

fn matrix(rows: &[&[&str]], inv: &Involution) -> RingMatrix {
    let rows = rows.iter().map(|r| r.iter().map(|e| expr(e)).collect()).collect();
    RingMatrix::from_rows(rows, inv.clone()).expect("fixture matrix is well formed")
}

/// Involution for the Burau fixtures: `x` inverted, with `t = x^2`.
pub fn burau_involution() -> Involution {
    Involution::inverting(&["x"])
}

/// Reduced Burau generators of `B_{n+1}` as `n x n` matrices in `x`, `t = x^2`.
///
/// Generator `i` is the identity except for row `i`, which reads
/// `x, -x^2, x` in columns `i-1, i, i+1` (truncated at the border). This is
/// the textbook reduced Burau matrix conjugated by `diag(x^-1, ..., x^-n)`;
/// it is the convention in which the tridiagonal Squier form is invariant.
pub fn burau_generators(n: usize) -> Representation {
    assert!(n >= 1, "Burau needs n >= 1");
    let inv = burau_involution();
    let gens = (0..n)
        .map(|i| {
            let mut e = vec![RatFunc::zero(); n * n];
            for k in 0..n {
                e[k * n + k] = RatFunc::one();
            }
            e[i * n + i] = mono(x(), 2, -1);
            if i > 0 {
                e[i * n + i - 1] = mono(x(), 1, 1);
            }
            if i + 1 < n {
                e[i * n + i + 1] = mono(x(), 1, 1);
            }
            RingMatrix::new(n, e, inv.clone()).expect("valid")
        })
        .collect();
    Representation::new_unchecked(format!("burau:{n}"), gens, inv)
}

/// Textbook reduced Burau generators in `t`: row `i` is `t, -t, 1` in
/// columns `i-1, i, i+1`. Satisfies the braid relations but does not
/// preserve the Squier form; kept as a reference point.
pub fn burau_generators_textbook(n: usize) -> Representation {
    assert!(n >= 1, "Burau needs n >= 1");
    let t = Var::new("t");
    let inv = Involution::inverting(&["t"]);
    let gens = (0..n)
        .map(|i| {
            let mut e = vec![RatFunc::zero(); n * n];
            for k in 0..n {
                e[k * n + k] = RatFunc::one();
            }
            e[i * n + i] = mono(t, 1, -1);
            if i > 0 {
                e[i * n + i - 1] = mono(t, 1, 1);
            }
            if i + 1 < n {
                e[i * n + i + 1] = RatFunc::one();
            }
            RingMatrix::new(n, e, inv.clone()).expect("valid")
        })
        .collect();
    Representation::new_unchecked(format!("burau-textbook:{n}"), gens, inv)
}

/// Squier's form: tridiagonal, `x + 1/x` on the diagonal and `-1` beside it.
pub fn squier_form(n: usize) -> RingMatrix {
    assert!(n >= 1, "Squier form needs n >= 1");
    let mut e = vec![RatFunc::zero(); n * n];
    let diag = &mono(x(), 1, 1) + &mono(x(), -1, 1);
    for i in 0..n {
        e[i * n + i] = diag.clone();
        if i + 1 < n {
            e[i * n + i + 1] = RatFunc::from_int(-1);
            e[(i + 1) * n + i] = RatFunc::from_int(-1);
        }
    }
    RingMatrix::new(n, e, burau_involution()).expect("valid")
}

/// `(x^{2n+2} - 1) / (x^n (x^2 - 1))`, which is a Laurent polynomial.
pub fn det_squier_closed_form(n: usize) -> LaurentPoly {
    let num = &LaurentPoly::var(x()).pow(2 * n as u32 + 2) - &LaurentPoly::one();
    let xn = LaurentPoly::term(Monomial::var(x(), n as i32), BigInt::from(1));
    let den = &xn * &(&LaurentPoly::var(x()).pow(2) - &LaurentPoly::one());
    num.div_exact(&den).expect("closed form divides exactly")
}

/// Exact comparison of the closed form with the determinant of the Squier form.
pub fn verify_det_formula(n: usize) -> bool {
    let det = squier_form(n).determinant();
    det.as_poly() == Some(&det_squier_closed_form(n))
}

/// Involution for the two-parameter BMW fixtures: `l` inverted, `m` fixed.
pub fn bmw_involution() -> Involution {
    Involution::new([Var::new("l")], [Var::new("m")]).expect("disjoint")
}

/// The two `3 x 3` BMW generators of `B_3` attached to the one-box diagram.
pub fn bmw_b3_generators() -> Result<Representation, RepError> {
    let inv = bmw_involution();
    let s1 = matrix(&[&["l^-1", "m", "0"], &["0", "m", "1"], &["0", "-1", "0"]], &inv);
    let s2 = matrix(&[&["0", "0", "-1"], &["0", "l^-1", "l^-1*m"], &["1", "0", "m"]], &inv);
    let rep = Representation::new_unchecked("bmw-b3".into(), vec![s1, s2], inv);
    rep.verify_braid_relations().map_err(|e| RepError::FixtureInconsistent(format!("BMW B3 generators: {e}")))?;
    Ok(rep)
}

/// Involution for the BMW `B_4` form: both `a` and `L` inverted.
pub fn bmw_b4_involution() -> Involution {
    Involution::inverting(&["a", "L"])
}

/// The diagonal BMW `B_4` form in the variables `a` and `L`.
pub fn bmw_b4_form() -> RingMatrix {
    const DIAG: [&str; 6] = [
        "2",
        "-(2*a*(L^2+1)*(2*a^2*L-a*L^2-a+2*L))/((a-L)^2*(a*L-1)^2)",
        "(2*(L^2+1)*(a^3+L)*(a^3*L+1))/(a*(a-L)*(a*L-1)*(2*a^2*L-a*L^2-a+2*L))",
        "(2*(a+L)*(a^5*L^2+a^4*L-a^3*L^2-a^3+a^2*L^3+a^2*L-a*L^2-L))/(a*(L^2+1)*(a^3+L)*(a*L-1))",
        "(2*(a+L)*(a*L+1)*(a^3*L+1)*(2*a^3*L^2+a^3+a^2*L+a*L^2+L^3+2*L))/(a*(L^2+1)*(a*L-1)*(a^5*L^2+a^4*L-a^3*L^2-a^3+a^2*L^3+a^2*L-a*L^2-L))",
        "-(2*(a^5-L)*(a+L)*(a*L+1)*(a^3*L+1))/(a^3*(a*L-1)*(2*a^3*L^2+a^3+a^2*L+a*L^2+L^3+2*L))",
    ];
    RingMatrix::diagonal(DIAG.iter().map(|s| expr(s)).collect(), bmw_b4_involution()).expect("valid")
}

/// The `5 x 5` invariant form of the Jones representation for the shape (2,2,2).
pub fn jones_rect_form() -> RingMatrix {
    let inv = Involution::inverting(&["q"]);
    matrix(
        &[
            &["(1+q)^2/q", "-1-q", "2", "-1-q", "-1-q"],
            &["-(1+q)/q", "(1+q+q^2)/q", "-(1+q)/q", "1", "1"],
            &["2", "-1-q", "(1+q)^2/q", "-1-q", "-1-q"],
            &["-(1+q)/q", "1", "-(1+q)/q", "(1+q+q^2)/q", "1"],
            &["-(1+q)/q", "1", "-(1+q)/q", "1", "(1+q+q^2)/q"],
        ],
        &inv,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_closed_forms() {
        assert_eq!(det_squier_closed_form(1), crate::ring::parse_laurent("x+x^-1").unwrap());
        assert_eq!(det_squier_closed_form(2), crate::ring::parse_laurent("x^2+1+x^-2").unwrap());
        for n in 1..=4 {
            assert!(verify_det_formula(n));
        }
    }

    #[test]
    fn burau_one_strand_pair() {
        let rep = burau_generators(1);
        assert_eq!(rep.generators()[0].get(0, 0), &expr("-x^2"));
        assert!(rep.verify_invariance(&squier_form(1)).unwrap());
    }

    #[test]
    fn textbook_convention_is_not_squier_invariant() {
        let rep = burau_generators_textbook(3);
        assert!(rep.verify_braid_relations().is_ok());
        let j = squier_form(3).with_involution(&Involution::inverting(&["t"])).unwrap();
        let gens: Vec<RingMatrix> = rep
            .generators()
            .iter()
            .map(|g| g.substitute_monomial(Var::new("t"), &Monomial::var(Var::new("x"), 2), Involution::inverting(&["x", "t"])).unwrap())
            .collect();
        let any_fails = gens.iter().any(|g| !g.star().mul(&j).unwrap().mul(g).unwrap().same_entries(&j));
        assert!(any_fails);
    }

    #[test]
    fn bmw_b3_is_consistent() {
        let rep = bmw_b3_generators().unwrap();
        assert_eq!(rep.generators()[0].get(0, 0), &expr("l^-1"));
    }
}
