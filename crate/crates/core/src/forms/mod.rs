//! Invariant sesquilinear forms: exact solving, hermitianization, and
//! certified definiteness, signature and equivalence verdicts.

mod definite;
mod point;

use std::sync::Arc;

use num_traits::ToPrimitive;
use thiserror::Error;

pub use definite::{
    is_positive_definite_at, posdef_of_eval, signature_at, HermitianEval, PosDefReport, SigStatus, SignatureResult, Verdict,
};
pub use point::{Exponent, parse_linear, parse_point, parse_value, Embedding, Point, Specialization, Value};

use crate::ball::PrecisionPolicy;
use crate::reps::Representation;
use crate::ring::{nullspace, Involution, Monomial, RatFunc, RingError, RingMatrix, Var};
use crate::salem::SalemCert;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("hermitianized form is singular for this choice of beta")]
    DegenerateResult,
    #[error("form is singular at the evaluation point")]
    DegenerateAtPoint,
    #[error("evaluated matrix is certainly not Hermitian")]
    NotHermitian,
    #[error("a denominator vanishes at the evaluation point")]
    DenominatorVanishes,
    #[error("singular input")]
    SingularInput,
    #[error("even dimension {0}: only odd dimensions are classified")]
    EvenDimension(usize),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Basis of the space of matrices `B` with `star(g) B g = B` for every
/// generator `g`, each normalized so its first nonzero entry is 1.
#[derive(Clone, Debug)]
pub struct FormSolution {
    pub basis: Vec<RingMatrix>,
    pub dim_solution_space: usize,
}

/// Solve `J g = star(g)^-1 J` for every generator, entries of `J` unknown.
pub fn solve_invariant_form(rep: &Representation) -> Result<FormSolution, FormError> {
    let m = rep.dim();
    let inv = rep.involution().clone();
    let mut rows: Vec<Vec<RatFunc>> = Vec::new();
    for g in rep.generators() {
        let h = g.star().inverse()?;
        for i in 0..m {
            for j in 0..m {
                let mut row = vec![RatFunc::zero(); m * m];
                for k in 0..m {
                    let idx = i * m + k;
                    row[idx] = &row[idx] + g.get(k, j);
                    let idx = k * m + j;
                    row[idx] = &row[idx] - h.get(i, k);
                }
                if row.iter().any(|e| !e.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let basis = nullspace(&rows, m * m)
        .into_iter()
        .map(|v| {
            let lead = v.iter().find(|e| !e.is_zero()).expect("nonzero vector").clone();
            let entries = v.iter().map(|e| e / &lead).collect();
            RingMatrix::new(m, entries, inv.clone())
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FormSolution { dim_solution_space: basis.len(), basis })
}

/// `beta J + star(beta) star(J)`, which is fixed by `star`.
pub fn hermitianize(j: &RingMatrix, beta: &RatFunc) -> Result<RingMatrix, FormError> {
    let beta_bar = j.involution().apply(beta);
    let r = j.scale(beta)?.add(&j.star().scale(&beta_bar)?)?;
    if r.determinant().is_zero() {
        return Err(FormError::DegenerateResult);
    }
    Ok(r)
}

/// `lambda = det(J1) / det(J2)` for odd-dimensional forms, so that
/// `det(lambda J2) / det(J1) = lambda^(n-1)` is a square.
pub fn determinant_class_scaling(j1: &RingMatrix, j2: &RingMatrix) -> Result<RatFunc, FormError> {
    if j1.dim() != j2.dim() {
        return Err(FormError::Ring(RingError::DimensionMismatch(j1.dim(), j2.dim())));
    }
    if j1.dim() % 2 == 0 {
        return Err(FormError::EvenDimension(j1.dim()));
    }
    let d1 = j1.determinant();
    let d2 = j2.determinant();
    if d1.is_zero() || d2.is_zero() {
        return Err(FormError::SingularInput);
    }
    Ok(&d1 / &d2)
}

/// A square root of `det(lambda J2) / det(J1)`, checked exactly.
pub fn det_ratio_square_root(j1: &RingMatrix, j2: &RingMatrix, lambda: &RatFunc) -> Option<RatFunc> {
    let n = j2.dim();
    let ratio = &j2.scale(lambda).ok()?.determinant() / &j1.determinant();
    let root = lambda.pow(((n - 1) / 2) as i64)?;
    (&root * &root == ratio).then_some(root)
}

/// Name of the variable `u` with `s = u^q` used for symbolic specializations.
pub const ROOT_VAR: &str = "s_root";

/// Substitute `v = s^e_v` symbolically, with `s = u^q` for the least common
/// denominator `q` of the exponents. Returns the matrix in `u` and `q`.
pub fn specialize_symbolic(j: &RingMatrix, spec: &Specialization) -> Result<(RingMatrix, u32), FormError> {
    let q = spec.denominator();
    let u = Var::new(ROOT_VAR);
    let inv = j.involution().merge(&Involution::inverting(&[ROOT_VAR]))?;
    let mut out = j.with_involution(&inv)?;
    for (v, e) in spec.exps() {
        let k = (e.num * (q / e.den) as i64).to_i32().ok_or_else(|| FormError::InvalidPoint("exponent too large".into()))?;
        out = out.substitute_monomial(*v, &Monomial::var(u, k), inv.clone())?;
    }
    if let Some(v) = out.entries().iter().flat_map(|e| e.vars()).find(|v| *v != u) {
        return Err(FormError::InvalidPoint(format!("variable '{v}' is not specialized")));
    }
    Ok((out, q))
}

/// Result of [`forms_equivalent_salem`].
#[derive(Clone, Debug)]
pub struct Equivalence {
    pub verdict: Verdict,
    /// `det(J1)/det(J2)` in the variable [`ROOT_VAR`].
    pub lambda: RatFunc,
    /// Signatures of both forms at each unit-circle embedding.
    pub table: Vec<(Embedding, SignatureResult, SignatureResult)>,
}

/// Equivalence of two odd-dimensional forms specialized at powers of a Salem
/// number: equal dimension, determinant classes matched by scaling, and equal
/// signatures at every real place where `(s - 1/s)^2 < 0`.
///
/// Those places are the unit-circle pairs `{e^{i theta}, e^{-i theta}}`;
/// evaluating at the lower member gives the entrywise conjugate matrix, which
/// has the same signature, so one member per pair is checked.
pub fn forms_equivalent_salem(
    j1: &RingMatrix,
    spec1: &Specialization,
    j2: &RingMatrix,
    spec2: &Specialization,
    cert: &Arc<SalemCert>,
    policy: &PrecisionPolicy,
) -> Result<Equivalence, FormError> {
    if j1.dim() % 2 == 0 {
        return Err(FormError::EvenDimension(j1.dim()));
    }
    if j2.dim() % 2 == 0 {
        return Err(FormError::EvenDimension(j2.dim()));
    }
    if j1.dim() != j2.dim() {
        return Ok(Equivalence { verdict: Verdict::Certified(false), lambda: RatFunc::zero(), table: Vec::new() });
    }
    let (s1, q1) = specialize_symbolic(j1, spec1)?;
    let (s2, q2) = specialize_symbolic(j2, spec2)?;
    // Bring both to the same root of s.
    let q = num_integer::lcm(q1, q2);
    let u = Var::new(ROOT_VAR);
    let inv = s1.involution().clone();
    let s1 = s1.substitute_monomial(u, &Monomial::var(u, (q / q1) as i32), inv.clone())?;
    let s2 = s2.substitute_monomial(u, &Monomial::var(u, (q / q2) as i32), inv)?;
    let lambda = determinant_class_scaling(&s1, &s2)?;

    let mut table = Vec::new();
    let mut verdict = Verdict::Certified(true);
    for e in Embedding::upper_circle(cert.degree()) {
        let a = signature_at(j1, &spec1.point(cert, e), policy)?;
        let b = signature_at(j2, &spec2.point(cert, e), policy)?;
        if !a.is_certified() || !b.is_certified() {
            if verdict == Verdict::Certified(true) {
                verdict = Verdict::PrecisionInsufficient;
            }
        } else if (a.positives, a.negatives) != (b.positives, b.negatives) {
            verdict = Verdict::Certified(false);
        }
        table.push((e, a, b));
    }
    Ok(Equivalence { verdict, lambda, table })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::{bmw_b3_generators, burau_generators, squier_form};
    use crate::ring::parse_ratfunc;

    #[test]
    fn burau_form_is_squier_up_to_scalar() {
        let sol = solve_invariant_form(&burau_generators(3)).unwrap();
        assert_eq!(sol.dim_solution_space, 1);
        let h = hermitianize(&sol.basis[0], &RatFunc::one()).unwrap();
        assert!(h.proportional_to(&squier_form(3)).is_some());
        assert!(sol.basis[0].proportional_to(&squier_form(3)).is_some());
    }

    #[test]
    fn unconstrained_and_bmw() {
        let triv = Representation::trivial(3, 1);
        assert_eq!(solve_invariant_form(&triv).unwrap().dim_solution_space, 9);
        let sol = solve_invariant_form(&bmw_b3_generators().unwrap()).unwrap();
        assert_eq!(sol.dim_solution_space, 1);
    }

    #[test]
    fn hermitianize_cases() {
        let j = squier_form(2);
        let h = hermitianize(&j, &RatFunc::one()).unwrap();
        assert_eq!(h, j.scale(&RatFunc::from_int(2)).unwrap());
        let inv = Involution::inverting(&["x"]);
        let x = parse_ratfunc("x").unwrap();
        let skew = RingMatrix::from_rows(
            vec![vec![RatFunc::zero(), x.clone()], vec![-&parse_ratfunc("x^-1").unwrap(), RatFunc::zero()]],
            inv,
        )
        .unwrap();
        assert_eq!(hermitianize(&skew, &RatFunc::one()), Err(FormError::DegenerateResult));
    }

    #[test]
    fn determinant_scaling() {
        let id = RingMatrix::identity(3, Involution::trivial());
        let two = RingMatrix::diagonal(vec![RatFunc::from_int(2); 3], Involution::trivial()).unwrap();
        let l = determinant_class_scaling(&id, &two).unwrap();
        assert_eq!(l, parse_ratfunc("1/8").unwrap());
        assert!(det_ratio_square_root(&id, &two, &l).is_some());
        assert_eq!(determinant_class_scaling(&id, &id).unwrap(), RatFunc::one());
        assert_eq!(determinant_class_scaling(&squier_form(2), &squier_form(2)), Err(FormError::EvenDimension(2)));
    }
}
