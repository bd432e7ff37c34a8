use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use super::StructureConstants;
use crate::error::{Error, Result};
use crate::field::{Elem, FieldId, FiniteField};
use crate::linalg::{self, Matrix};
use crate::rootsys::RootSystem;

/// Which Chevalley basis a vector is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Scope {
    /// All `x_a` followed by `h_1, ..., h_rank`.
    G,
    /// Positive `x_a` only.
    U,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LieVector {
    pub field: FieldId,
    pub scope: Scope,
    pub coeffs: Vec<Elem>,
}

impl LieVector {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, _)| i)
    }
}

/// The Lie algebra of the simply connected group over a finite field,
/// with the integer bracket table of the Chevalley basis.
#[derive(Debug, Clone)]
pub struct LieAlgebra {
    consts: Arc<StructureConstants>,
    field: FiniteField,
    dim: usize,
    // integer bracket of basis elements, row-major over (i, j)
    table: Vec<Vec<(u32, i64)>>,
    recovery_g: Arc<OnceLock<Recovery>>,
    recovery_u: Arc<OnceLock<Recovery>>,
}

/// Enough entries of the adjoint matrix to read a vector back off `ad(y)`.
#[derive(Debug)]
struct Recovery {
    entries: Vec<(usize, usize)>,
    inverse: Option<Matrix>,
}

impl LieAlgebra {
    pub fn new(sys: &RootSystem, field: &FiniteField) -> Self {
        Self::from_constants(Arc::new(StructureConstants::for_system(sys)), field)
    }

    pub fn from_constants(consts: Arc<StructureConstants>, field: &FiniteField) -> Self {
        let sys = consts.system();
        let m = sys.num_roots();
        let dim = m + sys.rank();
        let mut table = vec![Vec::new(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                table[i * dim + j] = int_bracket(&consts, i, j);
            }
        }
        LieAlgebra {
            consts,
            field: field.clone(),
            dim,
            table,
            recovery_g: Arc::new(OnceLock::new()),
            recovery_u: Arc::new(OnceLock::new()),
        }
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.consts
    }

    pub fn constants_arc(&self) -> Arc<StructureConstants> {
        self.consts.clone()
    }

    pub fn system(&self) -> &RootSystem {
        self.consts.system()
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn dim(&self, scope: Scope) -> usize {
        match scope {
            Scope::G => self.dim,
            Scope::U => self.system().num_positive(),
        }
    }

    /// Basis index of `h_i` in the `G` scope.
    pub fn h_index(&self, i: usize) -> usize {
        self.system().num_roots() + i
    }

    pub fn zero(&self, scope: Scope) -> LieVector {
        LieVector { field: self.field.id(), scope, coeffs: vec![0; self.dim(scope)] }
    }

    pub fn basis(&self, scope: Scope, k: usize) -> LieVector {
        let mut v = self.zero(scope);
        v.coeffs[k] = 1;
        v
    }

    /// `x_a` in the smallest scope containing it.
    pub fn x(&self, a: usize) -> LieVector {
        let scope = if self.system().is_positive(a) { Scope::U } else { Scope::G };
        self.basis(scope, a)
    }

    pub fn vector(&self, scope: Scope, coeffs: Vec<Elem>) -> Result<LieVector> {
        if coeffs.len() != self.dim(scope) {
            return Err(Error::ScopeMismatch);
        }
        Ok(LieVector { field: self.field.id(), scope, coeffs })
    }

    fn check(&self, v: &LieVector) -> Result<()> {
        if v.field != self.field.id() {
            return Err(Error::FieldMismatch(v.field.to_string(), self.field.id().to_string()));
        }
        if v.coeffs.len() != self.dim(v.scope) {
            return Err(Error::ScopeMismatch);
        }
        Ok(())
    }

    /// Embed a vector of `u` into `g`.
    pub fn to_g(&self, v: &LieVector) -> LieVector {
        let mut coeffs = v.coeffs.clone();
        coeffs.resize(self.dim, 0);
        LieVector { field: v.field, scope: Scope::G, coeffs }
    }

    /// Restrict a vector of `g` lying in `u`.
    pub fn to_u(&self, v: &LieVector) -> Result<LieVector> {
        let n = self.system().num_positive();
        if v.coeffs[n..].iter().any(|&c| c != 0) {
            return Err(Error::ScopeMismatch);
        }
        Ok(LieVector { field: v.field, scope: Scope::U, coeffs: v.coeffs[..n].to_vec() })
    }

    pub fn bracket(&self, x: &LieVector, y: &LieVector) -> Result<LieVector> {
        self.check(x)?;
        self.check(y)?;
        if x.field != y.field {
            return Err(Error::FieldMismatch(x.field.to_string(), y.field.to_string()));
        }
        if x.scope != y.scope {
            return Err(Error::ScopeMismatch);
        }
        let mut out = vec![0; self.dim];
        self.bracket_into(&x.coeffs, &y.coeffs, &mut out);
        out.truncate(self.dim(x.scope));
        Ok(LieVector { field: x.field, scope: x.scope, coeffs: out })
    }

    /// Raw bracket of coefficient slices (either scope), accumulated into `out` of length `dim(G)`.
    pub fn bracket_into(&self, x: &[Elem], y: &[Elem], out: &mut [Elem]) {
        let f = &self.field;
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let ab = f.mul(a, b);
                for &(k, c) in &self.table[i * self.dim + j] {
                    let k = k as usize;
                    out[k] = f.add(out[k], f.mul(ab, f.from_int(c)));
                }
            }
        }
    }

    /// Integer bracket of two basis elements of `g`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[(u32, i64)] {
        &self.table[i * self.dim + j]
    }

    /// `ad(x)` on `g`: column `j` holds `[x, b_j]`.
    pub fn ad(&self, x: &LieVector) -> Result<Matrix> {
        self.check(x)?;
        Ok(self.ad_coeffs(&x.coeffs))
    }

    fn ad_coeffs(&self, x: &[Elem]) -> Matrix {
        let f = &self.field;
        let mut m = vec![vec![0; self.dim]; self.dim];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for j in 0..self.dim {
                for &(k, c) in &self.table[i * self.dim + j] {
                    let k = k as usize;
                    m[k][j] = f.add(m[k][j], f.mul(a, f.from_int(c)));
                }
            }
        }
        m
    }

    /// `ad(b_i)` over the integers.
    pub fn ad_int(&self, i: usize) -> Vec<Vec<i128>> {
        let mut m = vec![vec![0i128; self.dim]; self.dim];
        for j in 0..self.dim {
            for &(k, c) in &self.table[i * self.dim + j] {
                m[k as usize][j] += c as i128;
            }
        }
        m
    }

    /// The `[p]`-operation: the unique `y` in the same scope with `ad(y) = ad(x)^p`.
    pub fn p_power(&self, x: &LieVector) -> Result<LieVector> {
        self.check(x)?;
        let coeffs = self.p_power_coeffs(&x.coeffs, x.scope)?;
        Ok(LieVector { field: x.field, scope: x.scope, coeffs })
    }

    /// `[p]`-operation on raw coefficients of the given scope.
    pub fn p_power_coeffs(&self, x: &[Elem], scope: Scope) -> Result<Vec<Elem>> {
        let f = &self.field;
        let ad = self.ad_coeffs(x);
        let mut pw = ad.clone();
        for _ in 1..f.p() {
            pw = linalg::mat_mul(f, &pw, &ad);
        }
        let rec = self.recovery(scope);
        let inv = rec.inverse.as_ref().ok_or_else(|| {
            Error::PPower(format!(
                "adjoint representation is not faithful on {scope:?} in characteristic {}",
                f.p()
            ))
        })?;
        let rhs: Vec<Elem> = rec.entries.iter().map(|&(r, c)| pw[r][c]).collect();
        let y = linalg::mat_vec(f, inv, &rhs);
        if self.ad_coeffs(&y) != pw {
            return Err(Error::PPower(format!(
                "ad(x)^{} is not inner on {scope:?}",
                f.p()
            )));
        }
        Ok(y)
    }

    fn recovery(&self, scope: Scope) -> &Recovery {
        let cell = match scope {
            Scope::G => &self.recovery_g,
            Scope::U => &self.recovery_u,
        };
        cell.get_or_init(|| {
            let f = &self.field;
            let d = self.dim(scope);
            let ads: Vec<Matrix> = (0..d)
                .map(|k| {
                    let mut e = vec![0; d];
                    e[k] = 1;
                    self.ad_coeffs(&e)
                })
                .collect();
            // greedily pick matrix entries until the coefficient map is injective
            let mut entries = Vec::new();
            let mut rows: Matrix = Vec::new();
            'outer: for r in 0..self.dim {
                for c in 0..self.dim {
                    let row: Vec<Elem> = ads.iter().map(|m| m[r][c]).collect();
                    if row.iter().all(|&v| v == 0) {
                        continue;
                    }
                    let mut trial = rows.clone();
                    trial.push(row.clone());
                    if linalg::rank(f, &trial) == trial.len() {
                        rows.push(row);
                        entries.push((r, c));
                        if rows.len() == d {
                            break 'outer;
                        }
                    }
                }
            }
            let inverse = (rows.len() == d).then(|| linalg::invert(f, &rows));
            Recovery { entries, inverse }
        })
    }

    /// Human-readable form, e.g. `x(a2) + 2 x(a1+a2)`.
    pub fn format(&self, v: &LieVector) -> String {
        let sys = self.system();
        let m = sys.num_roots();
        let mut out = String::new();
        for k in v.support() {
            if !out.is_empty() {
                out.push_str(" + ");
            }
            let c = v.coeffs[k];
            if c != 1 {
                let _ = write!(out, "{} ", self.field.format(c));
            }
            if k < m {
                let _ = write!(out, "x({})", sys.root_label(k));
            } else {
                let _ = write!(out, "h{}", k - m + 1);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn int_bracket(consts: &StructureConstants, i: usize, j: usize) -> Vec<(u32, i64)> {
    let sys = consts.system();
    let m = sys.num_roots();
    match (i < m, j < m) {
        (true, true) => {
            if sys.neg(i) == j {
                consts
                    .coroot(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(k, &c)| ((m + k) as u32, c))
                    .collect()
            } else if let Some(s) = sys.add(i, j) {
                vec![(s as u32, consts.n(i, j))]
            } else {
                Vec::new()
            }
        }
        (false, true) => {
            let c = sys.pairing(j, i - m);
            if c == 0 { Vec::new() } else { vec![(j as u32, c)] }
        }
        (true, false) => {
            let c = sys.pairing(i, j - m);
            if c == 0 { Vec::new() } else { vec![(i as u32, -c)] }
        }
        (false, false) => Vec::new(),
    }
}
