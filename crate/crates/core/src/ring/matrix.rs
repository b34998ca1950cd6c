use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::gcd::gcd;
use super::laurent::LaurentPoly;
use super::ratfunc::{RatEvalFailure, RatFunc};
use super::var::Var;
use super::RingError;
use crate::ball::{ComplexBall, Dyadic};

/// The bar involution: inverts the listed variables, fixes the others.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Involution {
    inverted: BTreeSet<Var>,
    fixed: BTreeSet<Var>,
}

impl Involution {
    pub fn new<I, J>(inverted: I, fixed: J) -> Result<Self, RingError>
    where
        I: IntoIterator<Item = Var>,
        J: IntoIterator<Item = Var>,
    {
        let inverted: BTreeSet<Var> = inverted.into_iter().collect();
        let fixed: BTreeSet<Var> = fixed.into_iter().collect();
        if let Some(v) = inverted.intersection(&fixed).next() {
            return Err(RingError::InvolutionConflict(v.to_string()));
        }
        Ok(Involution { inverted, fixed })
    }

    /// No variables at all.
    pub fn trivial() -> Self {
        Involution::default()
    }

    /// Every named variable inverted.
    pub fn inverting(names: &[&str]) -> Self {
        Involution { inverted: names.iter().map(|n| Var::new(n)).collect(), fixed: BTreeSet::new() }
    }

    pub fn inverted(&self) -> &BTreeSet<Var> {
        &self.inverted
    }

    pub fn fixed(&self) -> &BTreeSet<Var> {
        &self.fixed
    }

    pub fn declared(&self) -> BTreeSet<Var> {
        self.inverted.union(&self.fixed).copied().collect()
    }

    pub fn declares(&self, v: Var) -> bool {
        self.inverted.contains(&v) || self.fixed.contains(&v)
    }

    pub fn is_inverted(&self, v: Var) -> bool {
        self.inverted.contains(&v)
    }

    pub fn apply(&self, r: &RatFunc) -> RatFunc {
        r.invert_vars(&self.inverted)
    }

    pub fn apply_poly(&self, p: &LaurentPoly) -> LaurentPoly {
        p.invert_vars(&self.inverted)
    }

    /// Union of two compatible declarations.
    pub fn merge(&self, other: &Involution) -> Result<Involution, RingError> {
        Involution::new(
            self.inverted.union(&other.inverted).copied(),
            self.fixed.union(&other.fixed).copied(),
        )
    }
}

/// Square matrix over the fraction field, carrying its involution.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingMatrix {
    dim: usize,
    entries: Vec<RatFunc>,
    involution: Involution,
}

impl RingMatrix {
    pub fn new(dim: usize, entries: Vec<RatFunc>, involution: Involution) -> Result<Self, RingError> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(RingError::DimensionMismatch(dim * dim, entries.len()));
        }
        for e in &entries {
            for v in e.vars() {
                if !involution.declares(v) {
                    return Err(RingError::UndeclaredVariable(v.to_string()));
                }
            }
        }
        Ok(RingMatrix { dim, entries, involution })
    }

    pub fn from_rows(rows: Vec<Vec<RatFunc>>, involution: Involution) -> Result<Self, RingError> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(RingError::DimensionMismatch(dim, bad.len()));
        }
        RingMatrix::new(dim, rows.into_iter().flatten().collect(), involution)
    }

    pub fn identity(dim: usize, involution: Involution) -> Self {
        RingMatrix::diagonal(vec![RatFunc::one(); dim], involution).expect("constant entries")
    }

    pub fn diagonal(diag: Vec<RatFunc>, involution: Involution) -> Result<Self, RingError> {
        let dim = diag.len();
        let mut entries = vec![RatFunc::zero(); dim * dim];
        for (i, d) in diag.into_iter().enumerate() {
            entries[i * dim + i] = d;
        }
        RingMatrix::new(dim, entries, involution)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[RatFunc] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[RatFunc]> {
        self.entries.chunks(self.dim)
    }

    pub fn involution(&self) -> &Involution {
        &self.involution
    }

    /// Same entries under a wider, compatible declaration.
    pub fn with_involution(&self, inv: &Involution) -> Result<Self, RingError> {
        let merged = self.involution.merge(inv)?;
        Ok(RingMatrix { dim: self.dim, entries: self.entries.clone(), involution: merged })
    }

    fn map(&self, f: impl Fn(&RatFunc) -> RatFunc) -> Self {
        RingMatrix { dim: self.dim, entries: self.entries.iter().map(f).collect(), involution: self.involution.clone() }
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let entries = (0..n * n).map(|k| self.entries[(k % n) * n + k / n].clone()).collect();
        RingMatrix { dim: n, entries, involution: self.involution.clone() }
    }

    /// Transpose with the involution applied entrywise.
    pub fn star(&self) -> Self {
        self.transpose().map(|e| self.involution.apply(e))
    }

    fn combine(&self, other: &RingMatrix) -> Result<Involution, RingError> {
        if self.dim != other.dim {
            return Err(RingError::DimensionMismatch(self.dim, other.dim));
        }
        if self.involution == other.involution {
            return Ok(self.involution.clone());
        }
        self.involution.merge(&other.involution)
    }

    pub fn mul(&self, other: &RingMatrix) -> Result<Self, RingError> {
        let involution = self.combine(other)?;
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = RatFunc::zero();
                for k in 0..n {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                entries.push(acc);
            }
        }
        Ok(RingMatrix { dim: n, entries, involution })
    }

    pub fn add(&self, other: &RingMatrix) -> Result<Self, RingError> {
        let involution = self.combine(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(RingMatrix { dim: self.dim, entries, involution })
    }

    pub fn sub(&self, other: &RingMatrix) -> Result<Self, RingError> {
        let involution = self.combine(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(RingMatrix { dim: self.dim, entries, involution })
    }

    pub fn scale(&self, lambda: &RatFunc) -> Result<Self, RingError> {
        for v in lambda.vars() {
            if !self.involution.declares(v) {
                return Err(RingError::UndeclaredVariable(v.to_string()));
            }
        }
        Ok(self.map(|e| e * lambda))
    }

    pub fn neg(&self) -> Self {
        self.map(|e| -e)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RatFunc::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, e)| if i == j { e.is_one() } else { e.is_zero() }))
    }

    /// Equality of entries, ignoring declared-but-unused variables.
    pub fn same_entries(&self, other: &RingMatrix) -> bool {
        self.dim == other.dim && self.entries == other.entries
    }

    /// Leading `k x k` block.
    pub fn leading_block(&self, k: usize) -> Self {
        self.principal_submatrix(&(0..k).collect::<Vec<_>>())
    }

    pub fn principal_submatrix(&self, idx: &[usize]) -> Self {
        let entries = idx.iter().flat_map(|&i| idx.iter().map(move |&j| (i, j))).map(|(i, j)| self.get(i, j).clone()).collect();
        RingMatrix { dim: idx.len(), entries, involution: self.involution.clone() }
    }

    /// Exact determinant by fraction-free elimination after clearing row
    /// denominators.
    pub fn determinant(&self) -> RatFunc {
        let n = self.dim;
        let mut scale = LaurentPoly::one();
        let mut rows: Vec<Vec<LaurentPoly>> = Vec::with_capacity(n);
        for row in self.rows() {
            let (prow, l) = clear_denominators(row);
            scale = &scale * &l;
            rows.push(prow);
        }
        let det = bareiss_det(rows);
        RatFunc::new(det, scale)
    }

    /// Inverse by Gauss-Jordan elimination over the fraction field.
    pub fn inverse(&self) -> Result<Self, RingError> {
        let n = self.dim;
        let mut a: Vec<Vec<RatFunc>> = self.rows().map(|r| r.to_vec()).collect();
        let mut b: Vec<Vec<RatFunc>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { RatFunc::one() } else { RatFunc::zero() }).collect())
            .collect();
        for k in 0..n {
            let p = (k..n)
                .filter(|&i| !a[i][k].is_zero())
                .min_by_key(|&i| (a[i][k].weight(), i))
                .ok_or(RingError::SingularMatrix)?;
            a.swap(k, p);
            b.swap(k, p);
            let inv = a[k][k].inv().unwrap();
            for j in 0..n {
                a[k][j] = &a[k][j] * &inv;
                b[k][j] = &b[k][j] * &inv;
            }
            for i in 0..n {
                if i == k || a[i][k].is_zero() {
                    continue;
                }
                let f = a[i][k].clone();
                for j in 0..n {
                    if !a[k][j].is_zero() {
                        a[i][j] = &a[i][j] - &(&f * &a[k][j]);
                    }
                    if !b[k][j].is_zero() {
                        b[i][j] = &b[i][j] - &(&f * &b[k][j]);
                    }
                }
            }
        }
        Ok(RingMatrix { dim: n, entries: b.into_iter().flatten().collect(), involution: self.involution.clone() })
    }

    /// `Some(lambda)` with `self = lambda * other`, if the matrices are proportional.
    pub fn proportional_to(&self, other: &RingMatrix) -> Option<RatFunc> {
        if self.dim != other.dim {
            return None;
        }
        let mut lambda: Option<RatFunc> = None;
        for (a, b) in self.entries.iter().zip(&other.entries) {
            match (a.is_zero(), b.is_zero()) {
                (true, true) => continue,
                (false, false) => {}
                _ => return None,
            }
            let q = a / b;
            match &lambda {
                None => lambda = Some(q),
                Some(l) if *l == q => {}
                Some(_) => return None,
            }
        }
        lambda
    }

    /// Apply a monomial substitution to every entry (e.g. `t -> x^2`).
    pub fn substitute_monomial(&self, v: Var, m: &super::Monomial, involution: Involution) -> Result<Self, RingError> {
        RingMatrix::new(self.dim, self.entries.iter().map(|e| e.substitute_monomial(v, m)).collect(), involution)
    }

    /// Entrywise evaluation at a complex point.
    pub fn evaluate(&self, point: &BTreeMap<Var, ComplexBall>, prec: u32) -> Result<BallMatrix, RingError> {
        let entries = self
            .entries
            .iter()
            .map(|e| {
                e.eval(point, prec).map_err(|f| match f {
                    RatEvalFailure::Missing(v) => RingError::MissingValue(v.to_string()),
                    RatEvalFailure::DenominatorVanishes => RingError::DenominatorVanishes,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BallMatrix { dim: self.dim, entries })
    }
}

impl fmt::Display for RingMatrix {
    /// One row per line, entries separated by `; `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let parts: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            write!(f, "{}", parts.join("; "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for RingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingMatrix({}x{}) [\n{}\n]", self.dim, self.dim, self)
    }
}

fn lcm(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_one() {
        return b.clone();
    }
    if b.is_one() {
        return a.clone();
    }
    let g = gcd(a, b);
    (a * b).div_exact(&g).expect("gcd divides the product")
}

/// Multiply a row by the lcm of its denominators; returns the polynomial row
/// and the multiplier.
pub(crate) fn clear_denominators(row: &[RatFunc]) -> (Vec<LaurentPoly>, LaurentPoly) {
    let mut l = LaurentPoly::one();
    for e in row {
        if !e.is_zero() {
            l = lcm(&l, e.den());
        }
    }
    let out = row
        .iter()
        .map(|e| if e.is_zero() { LaurentPoly::zero() } else { e.num() * &l.div_exact(e.den()).unwrap() })
        .collect();
    (out, l)
}

fn pivot_key(p: &LaurentPoly) -> (u64, usize) {
    (p.weight(), p.num_terms())
}

/// Bareiss determinant of a polynomial matrix. Pivot: smallest entry by
/// degree then term count, ties to the lowest row.
fn bareiss_det(mut a: Vec<Vec<LaurentPoly>>) -> LaurentPoly {
    let n = a.len();
    let mut prev = LaurentPoly::one();
    let mut negate = false;
    for k in 0..n {
        let p = match (k..n).filter(|&i| !a[i][k].is_zero()).min_by_key(|&i| (pivot_key(&a[i][k]), i)) {
            Some(p) => p,
            None => return LaurentPoly::zero(),
        };
        if p != k {
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = LaurentPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}

/// Basis of the right nullspace of a rectangular matrix over the fraction
/// field. Each basis vector has a 1 in one free column and 0 in the others.
pub fn nullspace(rows: &[Vec<RatFunc>], ncols: usize) -> Vec<Vec<RatFunc>> {
    let mut a: Vec<Vec<LaurentPoly>> = rows.iter().map(|r| primitive_row(clear_denominators(r).0)).collect();
    a.retain(|r| r.iter().any(|e| !e.is_zero()));
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let p = match (r..a.len()).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| (pivot_key(&a[i][c]), i)) {
            Some(p) => p,
            None => continue,
        };
        a.swap(r, p);
        for i in 0..a.len() {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let g = gcd(&a[r][c], &a[i][c]);
            let pr = a[r][c].div_exact(&g).unwrap();
            let qi = a[i][c].div_exact(&g).unwrap();
            let row: Vec<LaurentPoly> = (0..ncols).map(|j| &(&a[i][j] * &pr) - &(&a[r][j] * &qi)).collect();
            a[i] = primitive_row(row);
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![RatFunc::zero(); ncols];
            v[f] = RatFunc::one();
            for (k, &pc) in pivots.iter().enumerate() {
                if !a[k][f].is_zero() {
                    v[pc] = -&RatFunc::new(a[k][f].clone(), a[k][pc].clone());
                }
            }
            v
        })
        .collect()
}

fn primitive_row(row: Vec<LaurentPoly>) -> Vec<LaurentPoly> {
    let mut g = LaurentPoly::zero();
    for e in row.iter().filter(|e| !e.is_zero()) {
        g = gcd(&g, e);
        if g.is_one() {
            return row;
        }
    }
    if g.is_zero() {
        return row;
    }
    row.into_iter().map(|e| e.div_exact(&g).expect("row content divides")).collect()
}

/// Square matrix of complex balls.
#[derive(Clone, Debug)]
pub struct BallMatrix {
    dim: usize,
    entries: Vec<ComplexBall>,
}

impl BallMatrix {
    pub fn new(dim: usize, entries: Vec<ComplexBall>) -> Self {
        assert_eq!(entries.len(), dim * dim);
        BallMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &ComplexBall {
        &self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[ComplexBall] {
        &self.entries
    }

    pub fn mul(&self, other: &BallMatrix, prec: u32) -> BallMatrix {
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = ComplexBall::zero();
                for k in 0..n {
                    acc = acc.add(&self.get(i, k).mul(other.get(k, j), prec), prec);
                }
                entries.push(acc);
            }
        }
        BallMatrix { dim: n, entries }
    }

    pub fn add(&self, other: &BallMatrix, prec: u32) -> BallMatrix {
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b, prec)).collect();
        BallMatrix { dim: self.dim, entries }
    }

    pub fn conj_transpose(&self) -> BallMatrix {
        let n = self.dim;
        let entries = (0..n * n).map(|k| self.entries[(k % n) * n + k / n].conj()).collect();
        BallMatrix { dim: n, entries }
    }

    /// True when every entry overlaps the corresponding entry of `other`.
    pub fn overlaps(&self, other: &BallMatrix) -> bool {
        self.dim == other.dim && self.entries.iter().zip(&other.entries).all(|(a, b)| a.overlaps(b))
    }

    /// Largest entry radius.
    pub fn max_radius(&self) -> Dyadic {
        self.entries.iter().map(ComplexBall::radius).max().unwrap_or_else(Dyadic::zero)
    }

    /// Upper bound on the entrywise distance to the conjugate transpose.
    pub fn hermitian_defect(&self, prec: u32) -> Dyadic {
        let n = self.dim;
        let mut worst = Dyadic::zero();
        for i in 0..n {
            for j in i..n {
                let d = self.get(i, j).sub(&self.get(j, i).conj(), prec);
                let m = Dyadic::max(&d.re.mag(), &d.im.mag());
                worst = Dyadic::max(&worst, &m);
            }
        }
        worst
    }

    pub fn is_exact_identity_multiple(&self, c: i64) -> bool {
        let n = self.dim;
        (0..n).all(|i| {
            (0..n).all(|j| {
                let e = self.get(i, j);
                let want = if i == j { c } else { 0 };
                e.is_exact() && e.im.is_zero() && e.re.lo() == &Dyadic::from_int(want)
            })
        })
    }
}
