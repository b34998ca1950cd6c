//! Resolving command-line operands: polynomials, representations, forms and
//! specializations.

use std::path::Path;
use std::sync::Arc;

use braidcert::ball::PrecisionPolicy;
use braidcert::forms::{hermitianize, solve_invariant_form, Exponent, FormError, Specialization};
use braidcert::reps::{bmw_b3_generators, bmw_b4_form, burau_generators, jones_rect_form, squier_form, Repz, Representation};
use braidcert::ring::{RatFunc, RingMatrix, Var};
use braidcert::salem::{salem_check, IntPoly, SalemCert, SalemError};

use crate::CliError;

const NAMED: [(&str, &str); 3] = [
    ("lehmer", "1 1 0 -1 -1 -1 -1 -1 0 1 1"),
    ("ex29b", "1 0 0 0 -1 -1 -1 0 0 0 1"),
    ("bmw-s", "1 -2 1 -2 1"),
];

pub fn poly(src: &str) -> Result<IntPoly, CliError> {
    let s = src.trim();
    let s = NAMED.iter().find(|(n, _)| *n == s).map(|(_, p)| *p).unwrap_or(s);
    IntPoly::parse(s).map_err(|e| CliError::Usage(format!("polynomial: {e}")))
}

pub fn salem(src: &str, policy: &PrecisionPolicy) -> Result<Arc<SalemCert>, CliError> {
    let p = poly(src)?;
    match salem_check(&p, policy) {
        Ok(c) => Ok(Arc::new(c)),
        Err(SalemError::PrecisionInsufficient(b)) => Err(CliError::Unknown(format!("Salem check undecided at {b} bits"))),
        Err(e) => Err(CliError::Fail(format!("{p} is not a Salem polynomial: {e}"))),
    }
}

fn builtin_size(src: &str, prefix: &str) -> Result<Option<usize>, CliError> {
    match src.strip_prefix(prefix) {
        None => Ok(None),
        Some(n) => {
            let n: usize = n.parse().map_err(|_| CliError::Usage(format!("bad size in '{src}'")))?;
            if n == 0 || n > 64 {
                return Err(CliError::Usage(format!("size out of range in '{src}'")));
            }
            Ok(Some(n))
        }
    }
}

fn read_repz(path: &str) -> Result<Repz, CliError> {
    Repz::load(Path::new(path)).map_err(|e| CliError::Usage(format!("{path}: {e}")))
}

/// `burau:<n>`, `bmw-b3`, or a REPZ file.
pub fn representation(src: &str, verify: bool) -> Result<Representation, CliError> {
    if let Some(n) = builtin_size(src, "burau:")? {
        return Ok(burau_generators(n));
    }
    if src == "bmw-b3" {
        return bmw_b3_generators().map_err(|e| CliError::Fail(e.to_string()));
    }
    read_repz(src)?.representation(verify).map_err(|e| match e {
        braidcert::reps::RepError::RelationFailure(r) => CliError::Fail(format!("{src}: relation fails: {r}")),
        other => CliError::Usage(format!("{src}: {other}")),
    })
}

/// `squier:<n>`, `bmw-b4`, `jones-rect`, or the form section of a REPZ file.
pub fn form(src: &str) -> Result<RingMatrix, CliError> {
    if let Some(n) = builtin_size(src, "squier:")? {
        return Ok(squier_form(n));
    }
    match src {
        "bmw-b4" => return Ok(bmw_b4_form()),
        "jones-rect" => return Ok(jones_rect_form()),
        _ => {}
    }
    read_repz(src)?.form.ok_or_else(|| CliError::Usage(format!("{src}: no form section")))
}

/// The form named by `src`, or for `solve` the hermitianized solution of the
/// invariance equations (which must be unique up to scaling).
pub fn form_for(src: &str, rep: &Representation) -> Result<RingMatrix, CliError> {
    if src != "solve" {
        return form(src);
    }
    let sol = solve_invariant_form(rep).map_err(|e| CliError::Fail(e.to_string()))?;
    if sol.dim_solution_space != 1 {
        return Err(CliError::Fail(format!("invariant forms span a space of dimension {}", sol.dim_solution_space)));
    }
    let mut betas = vec![RatFunc::one()];
    betas.extend(rep.involution().inverted().iter().map(|v| RatFunc::var(*v)));
    for beta in betas {
        match hermitianize(&sol.basis[0], &beta) {
            Ok(h) => return Ok(h),
            Err(FormError::DegenerateResult) => continue,
            Err(e) => return Err(CliError::Fail(e.to_string())),
        }
    }
    Err(CliError::Fail("hermitianization is singular for every tried beta".into()))
}

/// Multipliers `v=p/q`: at exponent `m`, variable `v` is `s^(m p / q)`.
/// The default is `x=1/2` (so that `t = x^2 = s^m`) and `1` for any other
/// variable of the form.
pub struct Params(Vec<(Var, Exponent)>);

impl Params {
    pub fn parse(src: Option<&str>, j: &RingMatrix) -> Result<Params, CliError> {
        match src {
            Some(s) => {
                let spec = Specialization::parse(s).map_err(|e| CliError::Usage(e.to_string()))?;
                Ok(Params(spec.exps().iter().map(|(v, e)| (*v, *e)).collect()))
            }
            None => Ok(Params(
                j.involution()
                    .declared()
                    .into_iter()
                    .map(|v| (v, if v.name() == "x" { Exponent::new(1, 2) } else { Exponent::int(1) }))
                    .collect(),
            )),
        }
    }

    pub fn at(&self, m: u32) -> Specialization {
        self.0
            .iter()
            .fold(Specialization::new(), |s, (v, e)| s.with(v.name(), e.num * m as i64, e.den))
    }
}

pub fn exps(src: &str) -> Result<(u32, u32), CliError> {
    let bad = || CliError::Usage(format!("expected n,m, found '{src}'"));
    let (a, b) = src.split_once(',').ok_or_else(bad)?;
    let n: u32 = a.trim().parse().map_err(|_| bad())?;
    let m: u32 = b.trim().parse().map_err(|_| bad())?;
    if n == 0 || m == 0 {
        return Err(bad());
    }
    Ok((n, m))
}
