//! Machine-readable `key = value` certificates with hexadecimal ball
//! endpoints, and a checker that recomputes them from the recorded inputs.

use std::sync::Arc;

use super::{certify_commensurable, certify_discrete, Check, CommensurabilityCertificate, DiscretenessCertificate, Overall};
use crate::ball::{Dyadic, Interval, PrecisionPolicy};
use crate::forms::Specialization;
use crate::reps::parse_repz;
use crate::salem::{salem_check, IntPoly};

fn push(out: &mut String, key: &str, value: impl std::fmt::Display) {
    out.push_str(&format!("{key} = {value}\n"));
}

fn push_checks(out: &mut String, checks: &[Check]) {
    for c in checks {
        let k = format!("check.{}", c.id);
        push(out, &format!("{k}.status"), c.status);
        push(out, &format!("{k}.evidence"), &c.evidence);
        if let Some(b) = c.bits {
            push(out, &format!("{k}.bits"), b);
        }
        for (i, m) in c.minors.iter().enumerate() {
            push(out, &format!("{k}.minor.{}", i + 1), format!("{} {}", m.lo().to_hex(), m.hi().to_hex()));
        }
    }
}

fn push_common(out: &mut String, salem: &str, policy: &PrecisionPolicy, repz: &str) {
    push(out, "salem", salem);
    push(out, "precision.start", policy.start_bits);
    push(out, "precision.cap", policy.cap_bits);
    for line in repz.lines() {
        push(out, "repz", line);
    }
}

fn verdict_line(o: &Overall) -> String {
    match o {
        Overall::Pass => "PASS".into(),
        Overall::Fail(c) => format!("FAIL {c}"),
        Overall::Unknown(c) => format!("UNKNOWN {c}"),
    }
}

impl DiscretenessCertificate {
    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        push(&mut out, "kind", "discrete");
        push(&mut out, "rep", &self.rep_name);
        push(&mut out, "form", &self.form_id);
        push(&mut out, "spec", &self.specialization);
        push_common(&mut out, &self.salem_poly, &self.policy, &self.repz);
        push_checks(&mut out, &self.checks);
        push(&mut out, "verdict", verdict_line(&self.overall));
        out
    }
}

impl CommensurabilityCertificate {
    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        push(&mut out, "kind", "commensurable");
        push(&mut out, "form", &self.form_id);
        push(&mut out, "spec.n", &self.spec_n);
        push(&mut out, "spec.m", &self.spec_m);
        push(&mut out, "dimension", self.dimension);
        push_common(&mut out, &self.salem_poly, &self.policy, &self.repz);
        push_checks(&mut out, &self.checks);
        for (e, a, b) in &self.signatures {
            push(&mut out, &format!("signature.{}", super::embedding_tag(*e)), format!("{} {} {} {}", a.positives, a.negatives, b.positives, b.negatives));
        }
        push(&mut out, "verdict", verdict_line(&self.overall));
        out
    }
}

/// `key = value` pairs in file order.
pub fn parse_kv(text: &str) -> Result<Vec<(String, String)>, String> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| {
            l.split_once(" = ")
                .map(|(k, v)| (k.trim().to_string(), v.to_string()))
                .ok_or_else(|| format!("line {}: expected 'key = value'", i + 1))
        })
        .collect()
}

/// Outcome of rechecking an emitted certificate.
#[derive(Clone, Debug)]
pub struct Recheck {
    pub recorded: String,
    pub recomputed: Overall,
    /// Differences between the file and the recomputation; empty when they agree.
    pub mismatches: Vec<String>,
}

impl Recheck {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn get<'a>(kv: &'a [(String, String)], key: &str) -> Result<&'a str, String> {
    kv.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str()).ok_or_else(|| format!("missing key '{key}'"))
}

fn parse_interval(s: &str) -> Option<Interval> {
    let (a, b) = s.split_once(' ')?;
    let (lo, hi) = (Dyadic::parse_hex(a)?, Dyadic::parse_hex(b)?);
    (lo <= hi).then(|| Interval::new(lo, hi))
}

fn compare(kv: &[(String, String)], checks: &[Check], overall: &Overall) -> Vec<String> {
    let mut bad = Vec::new();
    let recorded: Vec<(&str, &str)> = kv
        .iter()
        .filter_map(|(k, v)| k.strip_prefix("check.").and_then(|r| r.strip_suffix(".status")).map(|id| (id, v.as_str())))
        .collect();
    if recorded.len() != checks.len() {
        bad.push(format!("{} checks recorded, {} recomputed", recorded.len(), checks.len()));
    }
    for c in checks {
        let k = format!("check.{}", c.id);
        match get(kv, &format!("{k}.status")) {
            Ok(s) if s == c.status.to_string() => {}
            Ok(s) => bad.push(format!("{}: recorded {s}, recomputed {}", c.id, c.status)),
            Err(e) => bad.push(e),
        }
        if let Some(b) = c.bits {
            if get(kv, &format!("{k}.bits")).ok() != Some(b.to_string().as_str()) {
                bad.push(format!("{}: precision differs", c.id));
            }
        }
        for (i, m) in c.minors.iter().enumerate() {
            let rec = get(kv, &format!("{k}.minor.{}", i + 1)).ok().and_then(parse_interval);
            if rec.as_ref() != Some(m) {
                bad.push(format!("{}: minor {} differs", c.id, i + 1));
            }
        }
    }
    match get(kv, "verdict") {
        Ok(v) if v == verdict_line(overall) => {}
        Ok(v) => bad.push(format!("verdict: recorded {v}, recomputed {}", verdict_line(overall))),
        Err(e) => bad.push(e),
    }
    bad
}

/// Recompute a certificate from the inputs recorded in `text` and compare
/// every status, precision, minor enclosure and the verdict.
pub fn recheck(text: &str) -> Result<Recheck, String> {
    let kv = parse_kv(text)?;
    let policy = PrecisionPolicy::new(
        get(&kv, "precision.start")?.parse().map_err(|_| "bad precision.start")?,
        get(&kv, "precision.cap")?.parse().map_err(|_| "bad precision.cap")?,
    );
    let poly = IntPoly::parse(get(&kv, "salem")?).map_err(|e| e.to_string())?;
    let cert = Arc::new(salem_check(&poly, &policy).map_err(|e| e.to_string())?);
    let repz_text: String = kv.iter().filter(|(k, _)| k == "repz").map(|(_, v)| format!("{v}\n")).collect();
    let repz = parse_repz(&repz_text).map_err(|e| e.to_string())?;
    let form = repz.form.clone().ok_or("certificate has no form")?;
    let recorded = get(&kv, "verdict")?.to_string();
    let form_id = get(&kv, "form")?;
    let (checks, overall) = match get(&kv, "kind")? {
        "discrete" => {
            let spec = Specialization::parse(get(&kv, "spec")?).map_err(|e| e.to_string())?;
            let rep = repz.representation(false).map_err(|e| e.to_string())?;
            let c = certify_discrete(&rep, &form, form_id, &cert, &spec, &policy);
            (c.checks, c.overall)
        }
        "commensurable" => {
            let n = Specialization::parse(get(&kv, "spec.n")?).map_err(|e| e.to_string())?;
            let m = Specialization::parse(get(&kv, "spec.m")?).map_err(|e| e.to_string())?;
            let c = certify_commensurable(&form, form_id, &cert, &n, &m, &policy).map_err(|e| e.to_string())?;
            (c.checks, c.overall)
        }
        other => return Err(format!("unknown certificate kind '{other}'")),
    };
    let mismatches = compare(&kv, &checks, &overall);
    Ok(Recheck { recorded, recomputed: overall, mismatches })
}
