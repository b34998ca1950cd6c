//! Braid group representations over the fraction field, built-in fixtures,
//! and the REPZ text format.

mod fixtures;
mod quad;
mod repz;

use std::fmt;

use thiserror::Error;

use crate::ring::{Involution, RingError, RingMatrix};

pub use fixtures::{
    bmw_b3_generators, bmw_b4_form, bmw_b4_involution, bmw_involution, burau_generators, burau_generators_textbook,
    burau_involution, det_squier_closed_form, jones_rect_form, squier_form, verify_det_formula,
};
pub use quad::{bmw_one_dim_reps, QuadElem};
pub use repz::{load_representation, parse_repz, Repz};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("fixture inconsistent: {0}")]
    FixtureInconsistent(String),
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("relation fails: {0}")]
    RelationFailure(String),
    #[error("generator {0} is not invertible")]
    NotInvertible(usize),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Images of the standard generators `s1, ..., sk` of a braid group.
#[derive(Clone, PartialEq, Eq)]
pub struct Representation {
    name: String,
    dim: usize,
    generators: Vec<RingMatrix>,
    involution: Involution,
}

impl Representation {
    /// Checked constructor: equal sizes, invertible generators, braid relations.
    pub fn new(name: String, generators: Vec<RingMatrix>, involution: Involution) -> Result<Self, RepError> {
        let rep = Representation::build(name, generators, involution)?;
        for (k, g) in rep.generators.iter().enumerate() {
            if g.determinant().is_zero() {
                return Err(RepError::NotInvertible(k + 1));
            }
        }
        rep.verify_braid_relations()?;
        Ok(rep)
    }

    /// No relation check; only the sizes and declarations must agree.
    pub fn new_unchecked(name: String, generators: Vec<RingMatrix>, involution: Involution) -> Self {
        Representation::build(name, generators, involution).expect("consistent generator sizes")
    }

    fn build(name: String, generators: Vec<RingMatrix>, involution: Involution) -> Result<Self, RepError> {
        let dim = generators.first().map(|g| g.dim()).unwrap_or(0);
        let generators = generators
            .into_iter()
            .map(|g| {
                if g.dim() != dim {
                    return Err(RepError::Ring(RingError::DimensionMismatch(dim, g.dim())));
                }
                Ok(g.with_involution(&involution)?)
            })
            .collect::<Result<Vec<_>, RepError>>()?;
        Ok(Representation { name, dim, generators, involution })
    }

    /// `k` copies of the identity of size `dim`.
    pub fn trivial(dim: usize, k: usize) -> Self {
        let inv = Involution::trivial();
        let gens = vec![RingMatrix::identity(dim, inv.clone()); k];
        Representation::new_unchecked(format!("trivial:{dim}"), gens, inv)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[RingMatrix] {
        &self.generators
    }

    pub fn involution(&self) -> &Involution {
        &self.involution
    }

    /// Exact check of far commutation and the braid relation; the error names
    /// the first violated relation.
    pub fn verify_braid_relations(&self) -> Result<(), RepError> {
        let g = &self.generators;
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                if j == i + 1 {
                    let lhs = g[i].mul(&g[j])?.mul(&g[i])?;
                    let rhs = g[j].mul(&g[i])?.mul(&g[j])?;
                    if !lhs.same_entries(&rhs) {
                        let (a, b) = (i + 1, j + 1);
                        return Err(RepError::RelationFailure(format!("s{a} s{b} s{a} = s{b} s{a} s{b}")));
                    }
                } else {
                    let lhs = g[i].mul(&g[j])?;
                    let rhs = g[j].mul(&g[i])?;
                    if !lhs.same_entries(&rhs) {
                        let (a, b) = (i + 1, j + 1);
                        return Err(RepError::RelationFailure(format!("s{a} s{b} = s{b} s{a}")));
                    }
                }
            }
        }
        Ok(())
    }

    /// True iff `star(g) J g = J` exactly for every generator.
    pub fn verify_invariance(&self, j: &RingMatrix) -> Result<bool, RepError> {
        if j.dim() != self.dim {
            return Err(RepError::Ring(RingError::DimensionMismatch(self.dim, j.dim())));
        }
        for g in &self.generators {
            if !g.star().mul(j)?.mul(g)?.same_entries(j) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Representation({}, dim {}, {} generators)", self.name, self.dim, self.generators.len())
    }
}
