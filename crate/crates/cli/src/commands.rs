use std::path::Path;

use braidcert::ball::elementary::pi;
use braidcert::ball::{Dyadic, Interval, PrecisionPolicy};
use braidcert::certify::{
    certify_commensurable, certify_discrete, parse_kv, passing, recheck, render_checks, search_discrete_powers, Overall, Status,
};
use braidcert::forms::{
    forms_equivalent_salem, is_positive_definite_at, parse_linear, parse_point, signature_at, solve_invariant_form, FormError,
    Point, Verdict,
};
use braidcert::reps::{burau_generators, squier_form, Repz};
use braidcert::salem::{salem_check, ArcStatus, SalemError};
use braidcert::young::{bmw_neighbors, dimension_bmw, dimension_hecke, reconstruct, subdiagrams, YoungDiagram};

use crate::inputs::{self, Params};
use crate::{emission, rerun, CertifyCmd, CliError, Cmd, FormCmd, Outcome, RepCmd, SalemCmd, YoungCmd};

const DIGITS: usize = 30;

pub fn dispatch(cmd: &Cmd, policy: &PrecisionPolicy) -> Result<Outcome, CliError> {
    match cmd {
        Cmd::Salem(c) => salem(c, policy),
        Cmd::Rep(c) => rep(c),
        Cmd::Form(c) => form(c, policy),
        Cmd::Certify(c) => certify(c, policy),
        Cmd::Young(c) => young(c),
        Cmd::Check { file } => check(file),
    }
}

fn upper(d: &Dyadic) -> String {
    let s = d.neg().to_decimal(DIGITS);
    match s.strip_prefix('-') {
        Some(r) => r.to_string(),
        None if s.chars().all(|c| c == '0' || c == '.') => s,
        None => format!("-{s}"),
    }
}

/// Outward-rounded decimal enclosure.
fn dec(i: &Interval) -> String {
    format!("[{}, {}]", i.lo().to_decimal(DIGITS), upper(i.hi()))
}

fn hex(i: &Interval) -> String {
    format!("{} {}", i.lo().to_hex(), i.hi().to_hex())
}

fn verdict_status(v: Verdict) -> Status {
    match v {
        Verdict::Certified(true) => Status::Pass,
        Verdict::Certified(false) => Status::Fail,
        Verdict::PrecisionInsufficient => Status::Unknown,
    }
}

fn form_error(e: FormError) -> CliError {
    match e {
        FormError::InvalidPoint(m) => CliError::Usage(m),
        FormError::EvenDimension(_) | FormError::Ring(_) => CliError::Usage(e.to_string()),
        other => CliError::Fail(other.to_string()),
    }
}

fn poly_operand(words: &[String]) -> Result<String, CliError> {
    let src = words.join(" ");
    if words.len() == 1 && Path::new(&src).is_file() {
        let text = std::fs::read_to_string(&src).map_err(|e| CliError::Usage(format!("{src}: {e}")))?;
        let body: Vec<&str> = text.lines().map(|l| l.split('#').next().unwrap_or("")).collect();
        return Ok(body.join(" "));
    }
    Ok(src)
}

fn salem(cmd: &SalemCmd, policy: &PrecisionPolicy) -> Result<Outcome, CliError> {
    match cmd {
        SalemCmd::Check { poly } => {
            let p = inputs::poly(&poly_operand(poly)?)?;
            let mut out = Outcome::new(Status::Pass);
            out.line(format!("polynomial {}", p.to_desc_string()));
            out.kv("poly", p.to_desc_string());
            match salem_check(&p, policy) {
                Ok(c) => {
                    out.line(format!("degree {}", c.degree()));
                    out.line(format!("trace polynomial {}", c.trace_poly().to_desc_string()));
                    out.line(format!("s in {}", dec(c.s_ball())));
                    out.line(format!("1/s in {}", dec(c.s_inv_ball())));
                    out.line(format!("unit-circle conjugate pairs {}", c.arg_balls().len()));
                    out.kv("degree", c.degree());
                    out.kv("trace", c.trace_poly().to_desc_string());
                    out.kv("s", hex(c.s_ball()));
                    out.kv("s_inv", hex(c.s_inv_ball()));
                    for (j, a) in c.arg_balls().iter().enumerate() {
                        out.line(format!("theta{} in {}", j + 1, dec(a)));
                        out.kv(format!("theta.{}", j + 1), hex(a));
                    }
                    out.line(format!("precision {} bits", c.precision_bits()));
                    out.kv("bits", c.precision_bits());
                    out.line("VERDICT PASS salem");
                }
                Err(SalemError::InvalidInput(m)) => return Err(CliError::Usage(m)),
                Err(e) => {
                    out.status = if matches!(e, SalemError::PrecisionInsufficient(_)) { Status::Unknown } else { Status::Fail };
                    out.line(format!("VERDICT {} {e}", out.status));
                    out.kv("reason", e.to_string());
                }
            }
            Ok(out)
        }
        SalemCmd::Powers { poly, arc, max_m } => {
            let cert = inputs::salem(&poly_operand(poly)?, policy)?;
            let (c1, c0) = parse_linear(arc, "pi").ok_or_else(|| CliError::Usage(format!("cannot parse arc '{arc}'")))?;
            let prec = 256;
            let hw = pi(prec)
                .mul(&Interval::from_rational(&c1, prec), prec)
                .add(&Interval::from_rational(&c0, prec), prec);
            let res = cert.power_in_arc(&hw, *max_m, policy).map_err(|e| CliError::Usage(e.to_string()))?;
            let inside: Vec<String> = res.iter().filter(|(_, s)| *s == ArcStatus::Certified).map(|(m, _)| m.to_string()).collect();
            let unknown: Vec<String> = res.iter().filter(|(_, s)| *s == ArcStatus::Unknown).map(|(m, _)| m.to_string()).collect();
            let mut out = Outcome::new(if unknown.is_empty() { Status::Pass } else { Status::Unknown });
            out.line(format!("polynomial {}", cert.poly().to_desc_string()));
            out.line(format!("half width {} in {}", arc, dec(&hw)));
            out.line(format!("IN_ARC {}", inside.join(" ")));
            out.line(format!("UNKNOWN {}", unknown.join(" ")));
            out.kv("poly", cert.poly().to_desc_string());
            out.kv("half_width", hex(&hw));
            out.kv("in_arc", inside.join(" "));
            out.kv("unknown", unknown.join(" "));
            Ok(out)
        }
    }
}

fn repz_outcome(repz: &Repz) -> Outcome {
    let mut out = Outcome::new(Status::Pass);
    let text = repz.to_text();
    out.text.push_str(&text);
    for l in text.lines() {
        out.kv("repz", l);
    }
    out
}

fn rep(cmd: &RepCmd) -> Result<Outcome, CliError> {
    match cmd {
        RepCmd::Burau { n } => {
            if *n == 0 || *n > 64 {
                return Err(CliError::Usage("n must lie in 1..=64".into()));
            }
            Ok(repz_outcome(&Repz::from_parts(Some(&burau_generators(*n)), Some(&squier_form(*n)))))
        }
        RepCmd::Show { file } => Ok(repz_outcome(&Repz::load(Path::new(file)).map_err(|e| CliError::Usage(format!("{file}: {e}")))?)),
        RepCmd::Verify { file, form } => {
            let repz = Repz::load(Path::new(file)).map_err(|e| CliError::Usage(format!("{file}: {e}")))?;
            let rep = repz.representation(false).map_err(|e| CliError::Usage(format!("{file}: {e}")))?;
            let mut out = Outcome::new(Status::Pass);
            let check = |out: &mut Outcome, id: &str, ok: bool, evidence: String| {
                let s = if ok { Status::Pass } else { Status::Fail };
                if !ok && out.status == Status::Pass {
                    out.status = Status::Fail;
                }
                out.line(format!("CHECK {id} {s} {evidence}"));
                out.kv(format!("check.{id}"), format!("{s} {evidence}"));
            };
            match rep.verify_braid_relations() {
                Ok(()) => check(&mut out, "braid", true, format!("{} generators satisfy the braid relations", rep.generators().len())),
                Err(e) => check(&mut out, "braid", false, e.to_string()),
            }
            let j = match form {
                Some(f) => Some(inputs::form(f)?),
                None => repz.form.clone(),
            };
            if let Some(j) = j {
                let ok = rep.verify_invariance(&j).map_err(|e| CliError::Usage(e.to_string()))?;
                check(&mut out, "invariance", ok, if ok { "star(g) J g = J for every generator".into() } else { "star(g) J g != J".into() });
            }
            out.line(format!("VERDICT {}", out.status));
            Ok(out)
        }
    }
}

fn point(at: &str, policy: &PrecisionPolicy) -> Result<Point, CliError> {
    parse_point(at, policy).map_err(|e| CliError::Usage(e.to_string()))
}

fn form(cmd: &FormCmd, policy: &PrecisionPolicy) -> Result<Outcome, CliError> {
    match cmd {
        FormCmd::Solve { rep } => {
            let r = inputs::representation(rep, true)?;
            let sol = solve_invariant_form(&r).map_err(form_error)?;
            let mut out = Outcome::new(Status::Pass);
            out.line(format!("solution space dimension {}", sol.dim_solution_space));
            out.kv("dimension", sol.dim_solution_space);
            for (k, b) in sol.basis.iter().enumerate() {
                out.line(format!("# basis {}", k + 1));
                let text = Repz::from_parts(None, Some(b)).to_text();
                out.text.push_str(&text);
                for l in text.lines() {
                    out.kv(format!("basis.{}", k + 1), l);
                }
            }
            if sol.dim_solution_space == 1 {
                let h = inputs::form_for("solve", &r)?;
                out.line("# hermitianized");
                let text = Repz::from_parts(None, Some(&h)).to_text();
                out.text.push_str(&text);
                for l in text.lines() {
                    out.kv("hermitian", l);
                }
            }
            Ok(out)
        }
        FormCmd::Posdef { form, at } => {
            let j = inputs::form(form)?;
            let p = point(at, policy)?;
            let mut out = Outcome::new(Status::Pass);
            out.line(format!("point {p}"));
            match is_positive_definite_at(&j, &p, policy) {
                Ok(r) => {
                    out.status = verdict_status(r.verdict);
                    for (k, m) in r.minors.iter().enumerate() {
                        out.line(format!("minor {} in {}", k + 1, dec(m)));
                        out.kv(format!("minor.{}", k + 1), hex(m));
                    }
                    out.line(format!("precision {} bits", r.bits));
                    out.kv("bits", r.bits);
                    let v = match r.verdict {
                        Verdict::Certified(true) => "positive definite",
                        Verdict::Certified(false) => "not positive definite",
                        Verdict::PrecisionInsufficient => "undecided at the precision cap",
                    };
                    out.line(format!("VERDICT {} {v}", out.status));
                }
                Err(FormError::InvalidPoint(m)) => return Err(CliError::Usage(m)),
                Err(e) => {
                    out.status = Status::Fail;
                    out.line(format!("VERDICT FAIL {e}"));
                    out.kv("reason", e.to_string());
                }
            }
            Ok(out)
        }
        FormCmd::Sig { form, at } => {
            let j = inputs::form(form)?;
            let p = point(at, policy)?;
            let mut out = Outcome::new(Status::Pass);
            out.line(format!("point {p}"));
            match signature_at(&j, &p, policy) {
                Ok(s) => {
                    if s.is_certified() {
                        out.line(format!("signature ({}, {})", s.positives, s.negatives));
                        out.kv("positives", s.positives);
                        out.kv("negatives", s.negatives);
                        out.line("VERDICT PASS certified");
                    } else {
                        out.status = Status::Unknown;
                        out.line("VERDICT UNKNOWN undecided at the precision cap");
                    }
                }
                Err(FormError::InvalidPoint(m)) => return Err(CliError::Usage(m)),
                Err(e) => {
                    out.status = Status::Fail;
                    out.line(format!("VERDICT FAIL {e}"));
                    out.kv("reason", e.to_string());
                }
            }
            Ok(out)
        }
        FormCmd::Equiv { f1, f2, s, exps } => {
            let j1 = inputs::form(f1)?;
            let j2 = inputs::form(f2)?;
            let (n, m) = inputs::exps(exps)?;
            let cert = inputs::salem(&s.salem, policy)?;
            let params = Params::parse(s.param.as_deref(), &j1)?;
            let (sn, sm) = (params.at(n), params.at(m));
            let eq = forms_equivalent_salem(&j1, &sn, &j2, &sm, &cert, policy).map_err(form_error)?;
            let mut out = Outcome::new(verdict_status(eq.verdict));
            out.line(format!("first {sn}, second {sm}"));
            out.line(format!("lambda {}", eq.lambda));
            out.kv("spec.n", &sn);
            out.kv("spec.m", &sm);
            out.kv("lambda", &eq.lambda);
            for (e, a, b) in &eq.table {
                out.line(format!("signature at {e}: ({}, {}) and ({}, {})", a.positives, a.negatives, b.positives, b.negatives));
                out.kv(format!("signature.{e}"), format!("{} {} {} {}", a.positives, a.negatives, b.positives, b.negatives));
            }
            let v = match eq.verdict {
                Verdict::Certified(true) => "equivalent",
                Verdict::Certified(false) => "not equivalent",
                Verdict::PrecisionInsufficient => "undecided at the precision cap",
            };
            out.line(format!("VERDICT {} {v}", out.status));
            Ok(out)
        }
    }
}

fn kv_outcome(kv_text: &str, text: String, status: Status) -> Outcome {
    let mut out = Outcome::new(status);
    out.text = text;
    out.kv = parse_kv(kv_text).expect("emitted certificate parses");
    out
}

fn certify(cmd: &CertifyCmd, policy: &PrecisionPolicy) -> Result<Outcome, CliError> {
    match cmd {
        CertifyCmd::Discrete { rep, form, s, power } => {
            if *power == 0 {
                return Err(CliError::Usage("--power must be positive".into()));
            }
            let r = inputs::representation(rep, true)?;
            let j = inputs::form_for(form, &r)?;
            let spec = Params::parse(s.param.as_deref(), &j)?.at(*power);
            let cert = inputs::salem(&s.salem, policy)?;
            let c = certify_discrete(&r, &j, form, &cert, &spec, policy);
            let text = format!(
                "representation {}\nform {form}\nsalem {}\nspecialization {spec}\n{}",
                r.name(),
                c.salem_poly,
                render_checks(&c.checks, &c.overall)
            );
            Ok(kv_outcome(&c.to_kv(), text, c.overall.status()))
        }
        CertifyCmd::Commensurable { form, s, exps } => {
            let j = inputs::form(form)?;
            let (n, m) = inputs::exps(exps)?;
            let params = Params::parse(s.param.as_deref(), &j)?;
            let cert = inputs::salem(&s.salem, policy)?;
            let c = certify_commensurable(&j, form, &cert, &params.at(n), &params.at(m), policy).map_err(form_error)?;
            let text = format!(
                "form {form}\nsalem {}\nspecializations {} and {}\n{}",
                c.salem_poly,
                c.spec_n,
                c.spec_m,
                render_checks(&c.checks, &c.overall)
            );
            Ok(kv_outcome(&c.to_kv(), text, c.overall.status()))
        }
        CertifyCmd::Search { rep, form, s, max_m } => {
            let r = inputs::representation(rep, true)?;
            let j = inputs::form_for(form, &r)?;
            let params = Params::parse(s.param.as_deref(), &j)?;
            let cert = inputs::salem(&s.salem, policy)?;
            let results = search_discrete_powers(&r, &j, form, &cert, *max_m, |m| params.at(m), policy);
            let pass: Vec<String> = passing(&results).iter().map(|m| m.to_string()).collect();
            let mut out = Outcome::new(Status::Pass);
            out.line(format!("representation {} form {form} salem {}", r.name(), cert.poly().to_desc_string()));
            out.kv("salem", cert.poly().to_desc_string());
            for (m, c) in &results {
                out.line(format!("m={m} {} {}", c.specialization, c.overall));
                out.kv(format!("m.{m}"), format!("{} {}", c.specialization, c.overall));
                if matches!(c.overall, Overall::Unknown(_)) {
                    out.status = Status::Unknown;
                }
            }
            out.line(format!("PASS {}", pass.join(" ")));
            out.kv("pass", pass.join(" "));
            Ok(out)
        }
    }
}

fn diagram(s: &str) -> Result<YoungDiagram, CliError> {
    YoungDiagram::parse(s).map_err(|e| CliError::Usage(e.to_string()))
}

fn young(cmd: &YoungCmd) -> Result<Outcome, CliError> {
    let mut out = Outcome::new(Status::Pass);
    match cmd {
        YoungCmd::Subs { rows } => {
            let l = diagram(rows)?;
            let subs: Vec<String> = subdiagrams(&l).iter().map(|d| d.to_string()).collect();
            out.line(subs.join(" "));
            out.kv("subdiagrams", subs.join(" "));
            let nb: Vec<String> = bmw_neighbors(&l).iter().map(|d| d.to_string()).collect();
            out.kv("bmw_neighbors", nb.join(" "));
        }
        YoungCmd::Dim { rows } => {
            let d = dimension_hecke(&diagram(rows)?);
            out.line(d.to_string());
            out.kv("dimension", d);
        }
        YoungCmd::Bmwdim { rows, row } => {
            let d = dimension_bmw(&diagram(rows)?, *row).map_err(|e| CliError::Usage(e.to_string()))?;
            out.line(d.to_string());
            out.kv("dimension", d);
        }
        YoungCmd::Reconstruct { parts } => {
            let joined = parts.join(" ");
            let (a, b) = joined
                .split_once('/')
                .ok_or_else(|| CliError::Usage("expected two diagrams separated by '/'".into()))?;
            let mu = reconstruct(&diagram(a)?, &diagram(b)?).map_err(|e| CliError::Usage(e.to_string()))?;
            out.line(mu.to_string());
            out.kv("diagram", mu);
        }
    }
    Ok(out)
}

fn check(file: &Path) -> Result<Outcome, CliError> {
    let text = std::fs::read_to_string(file).map_err(|e| CliError::Usage(format!("{}: {e}", file.display())))?;
    let kv = parse_kv(&text).map_err(CliError::Usage)?;
    let get = |k: &str| kv.iter().find(|(key, _)| key == k).map(|(_, v)| v.clone());
    let bits = |k: &str| -> Result<u32, CliError> {
        get(k).and_then(|v| v.parse().ok()).ok_or_else(|| CliError::Usage(format!("missing or bad '{k}'")))
    };
    let policy = PrecisionPolicy::new(bits("config.precision")?, bits("config.precision_cap")?);
    let args: Vec<String> = kv.iter().filter(|(k, _)| k == "arg").map(|(_, v)| v.clone()).collect();
    if args.is_empty() {
        return Err(CliError::Usage("no recorded arguments".into()));
    }
    let mut out = Outcome::new(Status::Pass);
    let mut mismatches = Vec::new();
    match rerun(&args, &policy) {
        Ok(re) => {
            let expected = parse_kv(&emission(&args, &policy, &re)).expect("emission parses");
            if expected.len() != kv.len() {
                mismatches.push(format!("{} entries recorded, {} recomputed", kv.len(), expected.len()));
            }
            for (a, b) in kv.iter().zip(&expected) {
                if a != b {
                    mismatches.push(format!("{}: recorded '{}', recomputed {} = '{}'", a.0, a.1, b.0, b.1));
                }
            }
        }
        Err(e) => mismatches.push(format!("re-running the recorded command failed: {}", e.message())),
    }
    if matches!(get("kind").as_deref(), Some("discrete" | "commensurable")) {
        match recheck(&text) {
            Ok(r) => mismatches.extend(r.mismatches.iter().map(|m| format!("certificate: {m}"))),
            Err(e) => mismatches.push(format!("certificate: {e}")),
        }
    }
    out.line(format!("command: {}", args.join(" ")));
    for m in &mismatches {
        out.line(format!("MISMATCH {m}"));
    }
    if mismatches.is_empty() {
        out.line(format!("VERDICT PASS recorded {} reproduced", get("status").unwrap_or_default()));
    } else {
        out.status = Status::Fail;
        out.line(format!("VERDICT FAIL {} mismatches", mismatches.len()));
    }
    out.kv("file_status", get("status").unwrap_or_default());
    out.kv("mismatches", mismatches.len());
    Ok(out)
}
