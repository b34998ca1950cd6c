//! The REPZ text format.
//!
//! ```text
//! name burau:2
//! dim 2
//! vars x!
//! gen 1
//! -x^2; x
//! 0; 1
//! form
//! x+x^-1; -1
//! -1; x+x^-1
//! ```
//!
//! `!` marks a variable inverted by the involution; other declared variables
//! are fixed. Blank lines and lines starting with `#` are ignored.

use std::path::Path;

use super::{RepError, Representation};
use crate::ring::{parse_ratfunc, Involution, RatFunc, RingMatrix, Var};

/// Contents of a REPZ file: generators (possibly none) and an optional form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Repz {
    pub name: String,
    pub dim: usize,
    pub involution: Involution,
    pub generators: Vec<RingMatrix>,
    pub form: Option<RingMatrix>,
}

enum Section {
    Header,
    Gen(usize),
    Form,
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> RepError {
    RepError::Parse { line, column, message: message.into() }
}

struct Block {
    line: usize,
    rows: Vec<Vec<RatFunc>>,
}

fn parse_row(raw: &str, lineno: usize, dim: usize, inv: &Involution) -> Result<Vec<RatFunc>, RepError> {
    let mut out = Vec::with_capacity(dim);
    let mut offset = 0;
    for piece in raw.split(';') {
        let start = offset + piece.len() - piece.trim_start().len();
        let col = raw[..start].chars().count() + 1;
        offset += piece.len() + 1;
        let text = piece.trim();
        if text.is_empty() {
            return Err(perr(lineno, col, "empty entry"));
        }
        let r = parse_ratfunc(text).map_err(|e| perr(lineno, col + e.column - 1, e.message))?;
        if let Some(v) = r.vars().into_iter().find(|v| !inv.declares(*v)) {
            return Err(perr(lineno, col, format!("undeclared variable '{v}'")));
        }
        out.push(r);
    }
    if out.len() != dim {
        return Err(perr(lineno, 1, format!("expected {dim} entries, found {}", out.len())));
    }
    Ok(out)
}

/// Parse REPZ text. Does not check any relations.
pub fn parse_repz(src: &str) -> Result<Repz, RepError> {
    let mut name = String::new();
    let mut dim: Option<usize> = None;
    let mut inv = Involution::trivial();
    let mut gens: Vec<Block> = Vec::new();
    let mut form: Option<Block> = None;
    let mut section = Section::Header;

    for (idx, raw) in src.lines().enumerate() {
        let lineno = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let indent = raw.len() - raw.trim_start().len();
        let mut words = trimmed.split_whitespace();
        let head = words.next().unwrap();
        let rest_col = |w: &str| raw.find(w).map(|p| raw[..p].chars().count() + 1).unwrap_or(1);
        match head {
            "name" => {
                name = trimmed["name".len()..].trim().to_string();
                section = Section::Header;
            }
            "dim" => {
                if dim.is_some() {
                    return Err(perr(lineno, indent + 1, "duplicate dim line"));
                }
                let w = words.next().ok_or_else(|| perr(lineno, indent + 4, "missing dimension"))?;
                let n: usize = w.parse().map_err(|_| perr(lineno, rest_col(w), format!("bad dimension '{w}'")))?;
                if n == 0 {
                    return Err(perr(lineno, rest_col(w), "dimension must be positive"));
                }
                dim = Some(n);
                section = Section::Header;
            }
            "vars" => {
                let mut inverted = Vec::new();
                let mut fixed = Vec::new();
                for w in words {
                    let (nm, is_inv) = match w.strip_suffix('!') {
                        Some(nm) => (nm, true),
                        None => (w, false),
                    };
                    if !Var::is_valid_name(nm) {
                        return Err(perr(lineno, rest_col(w), format!("invalid variable name '{nm}'")));
                    }
                    if is_inv {
                        inverted.push(Var::new(nm));
                    } else {
                        fixed.push(Var::new(nm));
                    }
                }
                inv = inv.merge(&Involution::new(inverted, fixed)?).map_err(|e| perr(lineno, indent + 1, e.to_string()))?;
                section = Section::Header;
            }
            "gen" => {
                if dim.is_none() {
                    return Err(perr(lineno, indent + 1, "gen before dim"));
                }
                let w = words.next().ok_or_else(|| perr(lineno, indent + 4, "missing generator index"))?;
                let k: usize = w.parse().map_err(|_| perr(lineno, rest_col(w), format!("bad generator index '{w}'")))?;
                if k != gens.len() + 1 {
                    return Err(perr(lineno, rest_col(w), format!("expected generator {}, found {k}", gens.len() + 1)));
                }
                gens.push(Block { line: lineno, rows: Vec::new() });
                section = Section::Gen(k - 1);
            }
            "form" => {
                if dim.is_none() {
                    return Err(perr(lineno, indent + 1, "form before dim"));
                }
                if form.is_some() {
                    return Err(perr(lineno, indent + 1, "duplicate form section"));
                }
                form = Some(Block { line: lineno, rows: Vec::new() });
                section = Section::Form;
            }
            _ => {
                let n = dim.ok_or_else(|| perr(lineno, indent + 1, format!("unexpected '{head}'")))?;
                let block = match section {
                    Section::Header => return Err(perr(lineno, indent + 1, "matrix row outside gen or form section")),
                    Section::Gen(k) => &mut gens[k],
                    Section::Form => form.as_mut().unwrap(),
                };
                if block.rows.len() == n {
                    return Err(perr(lineno, indent + 1, format!("too many rows (dimension {n})")));
                }
                block.rows.push(parse_row(raw, lineno, n, &inv)?);
            }
        }
    }

    let dim = dim.ok_or_else(|| perr(1, 1, "missing dim line"))?;
    let finish = |b: Block| -> Result<RingMatrix, RepError> {
        if b.rows.len() != dim {
            return Err(perr(b.line, 1, format!("expected {dim} rows, found {}", b.rows.len())));
        }
        Ok(RingMatrix::from_rows(b.rows, inv.clone())?)
    };
    let generators = gens.into_iter().map(finish).collect::<Result<Vec<_>, _>>()?;
    let form = form.map(finish).transpose()?;
    Ok(Repz { name, dim, involution: inv, generators, form })
}

/// Read a representation from a REPZ file, verifying the braid relations
/// unless `verify` is false.
pub fn load_representation(path: &Path, verify: bool) -> Result<Representation, RepError> {
    Repz::load(path)?.representation(verify)
}

fn write_matrix(out: &mut String, m: &RingMatrix) {
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
        out.push_str(&cells.join("; "));
        out.push('\n');
    }
}

impl Repz {
    pub fn load(path: &Path) -> Result<Repz, RepError> {
        let text = std::fs::read_to_string(path).map_err(|e| RepError::Io(format!("{}: {e}", path.display())))?;
        parse_repz(&text)
    }

    pub fn from_parts(rep: Option<&Representation>, form: Option<&RingMatrix>) -> Repz {
        let mut inv = rep.map(|r| r.involution().clone()).unwrap_or_default();
        if let Some(f) = form {
            inv = inv.merge(f.involution()).expect("compatible involutions");
        }
        Repz {
            name: rep.map(|r| r.name().to_string()).unwrap_or_default(),
            dim: rep.map(|r| r.dim()).or(form.map(|f| f.dim())).unwrap_or(0),
            involution: inv,
            generators: rep.map(|r| r.generators().to_vec()).unwrap_or_default(),
            form: form.cloned(),
        }
    }

    /// The generators as a representation.
    pub fn representation(&self, verify: bool) -> Result<Representation, RepError> {
        if verify {
            Representation::new(self.name.clone(), self.generators.clone(), self.involution.clone())
        } else {
            Ok(Representation::new_unchecked(self.name.clone(), self.generators.clone(), self.involution.clone()))
        }
    }

    /// Canonical text; parsing it back gives an equal value.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if !self.name.is_empty() {
            out.push_str(&format!("name {}\n", self.name));
        }
        out.push_str(&format!("dim {}\n", self.dim));
        let vars: Vec<String> = self
            .involution
            .declared()
            .into_iter()
            .map(|v| if self.involution.is_inverted(v) { format!("{v}!") } else { v.to_string() })
            .collect();
        if !vars.is_empty() {
            out.push_str(&format!("vars {}\n", vars.join(" ")));
        }
        for (k, g) in self.generators.iter().enumerate() {
            out.push_str(&format!("gen {}\n", k + 1));
            write_matrix(&mut out, g);
        }
        if let Some(f) = &self.form {
            out.push_str("form\n");
            write_matrix(&mut out, f);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::{burau_generators, squier_form};

    #[test]
    fn canonical_round_trip() {
        let rep = burau_generators(3);
        let text = Repz::from_parts(Some(&rep), Some(&squier_form(3))).to_text();
        let back = parse_repz(&text).unwrap();
        assert_eq!(back.to_text(), text);
        let rep2 = back.representation(true).unwrap();
        assert!(rep2.generators().iter().zip(rep.generators()).all(|(a, b)| a.same_entries(b)));
        assert!(back.form.unwrap().same_entries(&squier_form(3)));
    }

    #[test]
    fn error_positions() {
        let err = parse_repz("dim 1\nvars x!\ngen 1\n  x^^2\n").unwrap_err();
        match err {
            RepError::Parse { line, column, .. } => {
                assert_eq!(line, 4);
                assert!(column >= 4);
            }
            e => panic!("{e:?}"),
        }
        let err = parse_repz("dim 2\nvars x!\ngen 1\n1; y\n0; 1\n").unwrap_err();
        assert_eq!(err, RepError::Parse { line: 4, column: 4, message: "undeclared variable 'y'".into() });
        assert!(matches!(parse_repz("dim 2\ngen 1\n1; 0\n"), Err(RepError::Parse { line: 2, .. })));
    }
}
