//! Discreteness and commensurability certificates.
//!
//! A discreteness certificate verifies the hypotheses under which a
//! sesquilinear representation specialized at a Salem number has discrete
//! image: the form is invariant (C1), fixed by `star` (C2), and positive
//! definite at every unit-circle conjugate of the specialization (C3). It
//! does not verify discreteness itself.

mod emit;

use std::fmt;
use std::sync::Arc;

pub use emit::{parse_kv, recheck, Recheck};

use crate::ball::{Interval, PrecisionPolicy};
use crate::forms::{
    forms_equivalent_salem, is_positive_definite_at, Embedding, FormError, SignatureResult, Specialization, Verdict,
};
use crate::reps::{Repz, Representation};
use crate::ring::RingMatrix;
use crate::salem::SalemCert;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Unknown => "UNKNOWN",
        })
    }
}

impl Status {
    pub fn parse(s: &str) -> Option<Status> {
        match s {
            "PASS" => Some(Status::Pass),
            "FAIL" => Some(Status::Fail),
            "UNKNOWN" => Some(Status::Unknown),
            _ => None,
        }
    }
}

/// One verified condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub evidence: String,
    /// Working precision of the deciding attempt, for numerical checks.
    pub bits: Option<u32>,
    /// Leading principal minor enclosures, for definiteness checks.
    pub minors: Vec<Interval>,
}

impl Check {
    fn exact(id: &str, ok: bool, evidence: &str) -> Check {
        Check {
            id: id.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            evidence: evidence.into(),
            bits: None,
            minors: Vec::new(),
        }
    }

    fn error(id: String, e: &FormError) -> Check {
        let status = match e {
            FormError::DegenerateAtPoint => Status::Fail,
            _ => Status::Unknown,
        };
        Check { id, status, evidence: e.to_string(), bits: None, minors: Vec::new() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Overall {
    Pass,
    Fail(String),
    Unknown(String),
}

impl Overall {
    /// Pass only if every check passed; otherwise the first failing check,
    /// else the first undecided one.
    pub fn from_checks(checks: &[Check]) -> Overall {
        if let Some(c) = checks.iter().find(|c| c.status == Status::Fail) {
            return Overall::Fail(c.id.clone());
        }
        if let Some(c) = checks.iter().find(|c| c.status == Status::Unknown) {
            return Overall::Unknown(c.id.clone());
        }
        Overall::Pass
    }

    pub fn is_pass(&self) -> bool {
        *self == Overall::Pass
    }

    pub fn status(&self) -> Status {
        match self {
            Overall::Pass => Status::Pass,
            Overall::Fail(_) => Status::Fail,
            Overall::Unknown(_) => Status::Unknown,
        }
    }
}

impl fmt::Display for Overall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Overall::Pass => f.write_str("PASS"),
            Overall::Fail(c) => write!(f, "FAIL {c}"),
            Overall::Unknown(c) => write!(f, "UNKNOWN {c}"),
        }
    }
}

fn embedding_tag(e: Embedding) -> String {
    match e {
        Embedding::Real => "s".into(),
        Embedding::Inverse => "1/s".into(),
        Embedding::Circle { j, lower } => format!("circle{}{}", j + 1, if lower { '-' } else { '+' }),
    }
}

/// C3: positive definiteness at every unit-circle conjugate (both members of
/// each complex pair), the id prefixed by `prefix`.
pub fn posdef_battery(
    j: &RingMatrix,
    cert: &Arc<SalemCert>,
    spec: &Specialization,
    prefix: &str,
    policy: &PrecisionPolicy,
) -> Vec<Check> {
    let d = cert.degree();
    Embedding::all(d)
        .into_iter()
        .filter(|e| matches!(e, Embedding::Circle { .. }))
        .map(|e| {
            let id = format!("{prefix}[{}]", embedding_tag(e));
            match is_positive_definite_at(j, &spec.point(cert, e), policy) {
                Ok(r) => {
                    let status = match r.verdict {
                        Verdict::Certified(true) => Status::Pass,
                        Verdict::Certified(false) => Status::Fail,
                        Verdict::PrecisionInsufficient => Status::Unknown,
                    };
                    let lows: Vec<String> = r.minors.iter().map(|m| format!("{:.3e}", m.lo().to_f64())).collect();
                    let evidence = format!("{} bits, minors >= [{}]", r.bits, lows.join(", "));
                    Check { id, status, evidence, bits: Some(r.bits), minors: r.minors }
                }
                Err(e) => Check::error(id, &e),
            }
        })
        .collect()
}

/// Inputs and results of a discreteness check.
#[derive(Clone, Debug)]
pub struct DiscretenessCertificate {
    pub rep_name: String,
    pub form_id: String,
    pub salem_poly: String,
    pub specialization: Specialization,
    pub policy: PrecisionPolicy,
    /// Canonical REPZ text holding the generators and the form.
    pub repz: String,
    pub checks: Vec<Check>,
    pub overall: Overall,
}

fn exact_checks(rep: &Representation, j: &RingMatrix) -> Vec<Check> {
    let c1 = match rep.verify_invariance(j) {
        Ok(ok) => Check::exact("C1", ok, if ok { "star(g) J g = J exactly for every generator" } else { "star(g) J g != J" }),
        Err(e) => Check { id: "C1".into(), status: Status::Fail, evidence: e.to_string(), bits: None, minors: Vec::new() },
    };
    let herm = j.star().same_entries(j);
    let c2 = Check::exact("C2", herm, if herm { "star(J) = J exactly" } else { "star(J) != J" });
    vec![c1, c2]
}

fn assemble(
    rep: &Representation,
    j: &RingMatrix,
    form_id: &str,
    cert: &Arc<SalemCert>,
    spec: &Specialization,
    policy: &PrecisionPolicy,
    mut checks: Vec<Check>,
) -> DiscretenessCertificate {
    checks.extend(posdef_battery(j, cert, spec, "C3", policy));
    let overall = Overall::from_checks(&checks);
    DiscretenessCertificate {
        rep_name: rep.name().to_string(),
        form_id: form_id.to_string(),
        salem_poly: cert.poly().to_desc_string(),
        specialization: spec.clone(),
        policy: *policy,
        repz: Repz::from_parts(Some(rep), Some(j)).to_text(),
        checks,
        overall,
    }
}

/// Check the discreteness hypotheses for `rep` with form `j` at the
/// specialization `spec` of the Salem number in `cert`.
pub fn certify_discrete(
    rep: &Representation,
    j: &RingMatrix,
    form_id: &str,
    cert: &Arc<SalemCert>,
    spec: &Specialization,
    policy: &PrecisionPolicy,
) -> DiscretenessCertificate {
    assemble(rep, j, form_id, cert, spec, policy, exact_checks(rep, j))
}

/// Certificates for every exponent `m = 1..=m_max` with specialization
/// `make_spec(m)`, sorted by exponent. The exact checks are shared; each
/// exponent gets its own definiteness battery, run in parallel.
pub fn search_discrete_powers<F>(
    rep: &Representation,
    j: &RingMatrix,
    form_id: &str,
    cert: &Arc<SalemCert>,
    m_max: u32,
    make_spec: F,
    policy: &PrecisionPolicy,
) -> Vec<(u32, DiscretenessCertificate)>
where
    F: Fn(u32) -> Specialization + Sync,
{
    let exact = exact_checks(rep, j);
    let ms: Vec<u32> = (1..=m_max).collect();
    let threads = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1).min(ms.len().max(1));
    let mut out: Vec<(u32, DiscretenessCertificate)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let ms = &ms;
                let exact = &exact;
                let make_spec = &make_spec;
                scope.spawn(move || {
                    ms.iter()
                        .skip(t)
                        .step_by(threads)
                        .map(|&m| (m, assemble(rep, j, form_id, cert, &make_spec(m), policy, exact.clone())))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("search worker panicked")).collect()
    });
    out.sort_by_key(|(m, _)| *m);
    out
}

/// Exponents among `results` whose certificate passed.
pub fn passing(results: &[(u32, DiscretenessCertificate)]) -> Vec<u32> {
    results.iter().filter(|(_, c)| c.overall.is_pass()).map(|(m, _)| *m).collect()
}

/// Inputs and results of a commensurability check.
#[derive(Clone, Debug)]
pub struct CommensurabilityCertificate {
    pub form_id: String,
    pub salem_poly: String,
    pub spec_n: Specialization,
    pub spec_m: Specialization,
    pub dimension: usize,
    pub policy: PrecisionPolicy,
    pub repz: String,
    pub checks: Vec<Check>,
    /// Signatures of the two specializations at each unit-circle place.
    pub signatures: Vec<(Embedding, SignatureResult, SignatureResult)>,
    pub overall: Overall,
}

/// The two specializations of `j` give commensurable discrete groups when
/// both are positive definite at every unit-circle conjugate (so both groups
/// are discrete) and the forms are equivalent (equal signatures at those
/// places; the determinant class is matched by scaling in odd dimension).
pub fn certify_commensurable(
    j: &RingMatrix,
    form_id: &str,
    cert: &Arc<SalemCert>,
    spec_n: &Specialization,
    spec_m: &Specialization,
    policy: &PrecisionPolicy,
) -> Result<CommensurabilityCertificate, FormError> {
    if j.dim() % 2 == 0 {
        return Err(FormError::EvenDimension(j.dim()));
    }
    let herm = j.star().same_entries(j);
    let mut checks = vec![Check::exact("C2", herm, if herm { "star(J) = J exactly" } else { "star(J) != J" })];
    checks.extend(posdef_battery(j, cert, spec_n, "C3n", policy));
    checks.extend(posdef_battery(j, cert, spec_m, "C3m", policy));
    let eq = forms_equivalent_salem(j, spec_n, j, spec_m, cert, policy)?;
    let status = match eq.verdict {
        Verdict::Certified(true) => Status::Pass,
        Verdict::Certified(false) => Status::Fail,
        Verdict::PrecisionInsufficient => Status::Unknown,
    };
    let sigs: Vec<String> = eq
        .table
        .iter()
        .map(|(e, a, b)| format!("{}:({},{})/({},{})", embedding_tag(*e), a.positives, a.negatives, b.positives, b.negatives))
        .collect();
    checks.push(Check {
        id: "EQ".into(),
        status,
        evidence: format!("dim {}, lambda = {}, signatures {}", j.dim(), eq.lambda, sigs.join(" ")),
        bits: None,
        minors: Vec::new(),
    });
    let overall = Overall::from_checks(&checks);
    Ok(CommensurabilityCertificate {
        form_id: form_id.to_string(),
        salem_poly: cert.poly().to_desc_string(),
        spec_n: spec_n.clone(),
        spec_m: spec_m.clone(),
        dimension: j.dim(),
        policy: *policy,
        repz: Repz::from_parts(None, Some(j)).to_text(),
        checks,
        signatures: eq.table,
        overall,
    })
}

/// Human-readable report: one `CHECK` line per condition and a `VERDICT` line.
pub fn render_checks(checks: &[Check], overall: &Overall) -> String {
    let mut out = String::new();
    for c in checks {
        out.push_str(&format!("CHECK {} {} {}\n", c.id, c.status, c.evidence));
    }
    out.push_str(&format!("VERDICT {overall}\n"));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::PrecisionPolicy;
    use crate::reps::{burau_generators, squier_form};
    use crate::ring::Involution;
    use crate::salem::{salem_check, IntPoly};

    fn lehmer() -> Arc<SalemCert> {
        let p = IntPoly::from_desc_i64(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        Arc::new(salem_check(&p, &PrecisionPolicy::default()).unwrap())
    }

    #[test]
    fn lehmer_16_passes_and_1_fails() {
        let policy = PrecisionPolicy::default();
        let c = lehmer();
        let rep = burau_generators(3);
        let j = squier_form(3);
        let ok = certify_discrete(&rep, &j, "squier:3", &c, &Specialization::squier(16), &policy);
        assert_eq!(ok.overall, Overall::Pass, "{}", render_checks(&ok.checks, &ok.overall));
        let bad = certify_discrete(&rep, &j, "squier:3", &c, &Specialization::squier(1), &policy);
        assert!(matches!(bad.overall, Overall::Fail(ref id) if id.starts_with("C3")));
    }

    #[test]
    fn trivial_rep_passes() {
        let policy = PrecisionPolicy::default();
        let rep = Representation::trivial(3, 2);
        let j = RingMatrix::identity(3, Involution::trivial());
        let cert = certify_discrete(&rep, &j, "id", &lehmer(), &Specialization::squier(5), &policy);
        assert!(cert.overall.is_pass());
    }

    #[test]
    fn low_precision_is_never_pass_when_unknown() {
        let policy = PrecisionPolicy::new(16, 16);
        let cert = certify_discrete(&burau_generators(3), &squier_form(3), "squier:3", &lehmer(), &Specialization::squier(16), &policy);
        if cert.checks.iter().any(|c| c.status == Status::Unknown) {
            assert!(!cert.overall.is_pass());
        }
    }

    #[test]
    fn even_dimension_rejected() {
        let r = certify_commensurable(&squier_form(2), "squier:2", &lehmer(), &Specialization::squier(16), &Specialization::squier(16), &PrecisionPolicy::default());
        assert!(matches!(r, Err(FormError::EvenDimension(2))));
    }
}
