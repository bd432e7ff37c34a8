//! Elementary subalgebras of `u`: echelon forms, enumeration, the leading-term
//! solver, normalizers, orbit decomposition and conjugation recipes.

mod enumerate;
mod orbits;
mod reduce;
mod solver;

use std::sync::Arc;

use serde::Serialize;

use crate::chevalley::{LieAlgebra, LieVector, Scope, StructureConstants};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldId, FiniteField};
use crate::linalg::{self, Matrix};
use crate::order::RootOrder;
use crate::rootsys::{RootMask, RootSystem};

pub use enumerate::{brute_force_eu, brute_force_subspaces, candidate_count, candidate_count_capped, DEFAULT_BUDGET};
pub use orbits::{bruhat_classes, group_generators, orbit_decompose, GeneratorSet, OrbitEntry, OrbitReport};
pub use reduce::{conjugation_reduce, g2_normal_forms, Recipe, Reduction};
pub use solver::{leading_term_solve, LeadingTermSystem, SolutionKind, SolutionSet};

/// A Lie algebra together with the root order that fixes both its structure
/// constants and the echelon convention.
#[derive(Debug, Clone)]
pub struct Ambient {
    alg: LieAlgebra,
    order: RootOrder,
    priority_u: Vec<usize>,
    priority_g: Vec<usize>,
}

impl Ambient {
    /// The canonical order of the type, or graded reverse lex where none is fixed.
    pub fn new(sys: &RootSystem, field: &FiniteField) -> Self {
        Self::with_order(sys, field, RootOrder::for_system(sys)).expect("default orders are additive")
    }

    pub fn with_order(sys: &RootSystem, field: &FiniteField, order: RootOrder) -> Result<Self> {
        let consts = Arc::new(StructureConstants::new(sys, &order)?);
        let alg = LieAlgebra::from_constants(consts, field);
        let priority_u = order.descending().to_vec();
        let mut priority_g = priority_u.clone();
        priority_g.extend(sys.num_positive()..alg.dim(Scope::G));
        Ok(Ambient { alg, order, priority_u, priority_g })
    }

    pub fn alg(&self) -> &LieAlgebra {
        &self.alg
    }

    pub fn order(&self) -> &RootOrder {
        &self.order
    }

    pub fn field(&self) -> &FiniteField {
        self.alg.field()
    }

    pub fn system(&self) -> &RootSystem {
        self.alg.system()
    }

    /// Columns from most to least leading.
    pub fn priority(&self, scope: Scope) -> &[usize] {
        match scope {
            Scope::U => &self.priority_u,
            Scope::G => &self.priority_g,
        }
    }

    /// Reduced echelon form; zero rows are dropped.
    pub fn echelon(&self, scope: Scope, mut rows: Matrix) -> Subspace {
        let pivots = linalg::rref_with_order(self.field(), &mut rows, self.priority(scope));
        Subspace { field: self.field().id(), scope, rows, pivots }
    }

    /// `lie(R)`, the span of `x_b` for `b` in `R`.
    pub fn lie(&self, set: RootMask) -> Result<ElementarySubalgebra> {
        let sys = self.system();
        if let Some((a, b)) = first_non_commuting(&self.alg, set) {
            return Err(Error::NotCommuting(format!("{} and {}", sys.root_label(a), sys.root_label(b))));
        }
        let n = sys.num_positive();
        let rows = set
            .iter()
            .map(|a| {
                let mut r = vec![0; n];
                r[a] = 1;
                r
            })
            .collect();
        Ok(self.elementary_unchecked(rows))
    }

    /// Echelonize rows of `u` and check that the span is elementary.
    pub fn elementary(&self, rows: Matrix) -> Result<ElementarySubalgebra> {
        let e = self.elementary_unchecked(rows);
        if !self.is_elementary(&e.rows, Scope::U) {
            return Err(Error::NotCommuting("span is not an elementary subalgebra".into()));
        }
        Ok(e)
    }

    /// The same subalgebra over this ambient's field, for `e` defined over the prime field.
    pub fn lift(&self, e: &ElementarySubalgebra) -> Result<ElementarySubalgebra> {
        let f = self.field();
        if e.field.p != f.p() || e.field.degree != 1 {
            return Err(Error::FieldMismatch(e.field.to_string(), f.id().to_string()));
        }
        if e.rows.first().is_some_and(|r| r.len() != self.system().num_positive()) {
            return Err(Error::ScopeMismatch);
        }
        Ok(self.elementary_unchecked(e.rows.clone()))
    }

    pub(crate) fn elementary_unchecked(&self, rows: Matrix) -> ElementarySubalgebra {
        let s = self.echelon(Scope::U, rows);
        ElementarySubalgebra { field: s.field, rows: s.rows, leads: s.pivots }
    }

    /// Pairwise brackets vanish and every row is `p`-nilpotent of order one.
    /// On an abelian span `(x + y)^[p] = x^[p] + y^[p]` and `(cx)^[p] = c^p x^[p]`,
    /// so checking the rows is enough.
    pub fn is_elementary(&self, rows: &[Vec<Elem>], scope: Scope) -> bool {
        self.rows_commute(rows) && rows.iter().all(|r| self.p_nilpotent(r, scope))
    }

    pub(crate) fn rows_commute(&self, rows: &[Vec<Elem>]) -> bool {
        let mut buf = vec![0; self.alg.dim(Scope::G)];
        for (i, x) in rows.iter().enumerate() {
            for y in &rows[i + 1..] {
                buf.iter_mut().for_each(|v| *v = 0);
                self.alg.bracket_into(x, y, &mut buf);
                if buf.iter().any(|&v| v != 0) {
                    return false;
                }
            }
        }
        true
    }

    pub(crate) fn p_nilpotent(&self, row: &[Elem], scope: Scope) -> bool {
        self.alg.p_power_coeffs(row, scope).is_ok_and(|y| y.iter().all(|&c| c == 0))
    }

    /// Embed into `g`.
    pub fn to_g(&self, e: &ElementarySubalgebra) -> Subspace {
        let d = self.alg.dim(Scope::G);
        let rows = e
            .rows
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r.resize(d, 0);
                r
            })
            .collect();
        self.echelon(Scope::G, rows)
    }

    /// Restrict a subspace of `g` lying in `u`.
    pub fn to_u(&self, s: &Subspace) -> Option<ElementarySubalgebra> {
        let n = self.system().num_positive();
        if s.scope == Scope::U {
            return Some(ElementarySubalgebra { field: s.field, rows: s.rows.clone(), leads: s.pivots.clone() });
        }
        if s.rows.iter().any(|r| r[n..].iter().any(|&c| c != 0)) {
            return None;
        }
        Some(self.elementary_unchecked(s.rows.iter().map(|r| r[..n].to_vec()).collect()))
    }

    /// `N_g(S) = {y in g : [y, S] in S}`, as a basis of `g`-vectors.
    pub fn normalizer(&self, s: &Subspace) -> Matrix {
        let f = self.field();
        let d = self.alg.dim(Scope::G);
        let rows: Matrix = match s.scope {
            Scope::G => s.rows.clone(),
            Scope::U => s.rows.iter().map(|r| {
                let mut r = r.clone();
                r.resize(d, 0);
                r
            }).collect(),
        };
        let pivots = &s.pivots;
        let mut system: Matrix = Vec::new();
        for e in &rows {
            // column j: [b_j, e], reduced modulo S
            let mut cols: Matrix = Vec::with_capacity(d);
            for j in 0..d {
                let mut w = vec![0; d];
                let mut bj = vec![0; d];
                bj[j] = 1;
                self.alg.bracket_into(&bj, e, &mut w);
                for (row, &pc) in rows.iter().zip(pivots) {
                    let c = w[pc];
                    if c != 0 {
                        linalg::axpy(f, &mut w, f.neg(c), row);
                    }
                }
                cols.push(w);
            }
            for i in 0..d {
                let r: Vec<Elem> = cols.iter().map(|c| c[i]).collect();
                if r.iter().any(|&v| v != 0) {
                    system.push(r);
                }
            }
        }
        linalg::nullspace(f, &system, d)
    }

    pub fn normalizer_dim(&self, s: &Subspace) -> usize {
        self.normalizer(s).len()
    }

    pub fn format_rows(&self, rows: &[Vec<Elem>], scope: Scope) -> Vec<String> {
        rows.iter()
            .map(|r| {
                let v = LieVector { field: self.field().id(), scope, coeffs: r.clone() };
                self.alg.format(&v)
            })
            .collect()
    }
}

fn first_non_commuting(alg: &LieAlgebra, set: RootMask) -> Option<(usize, usize)> {
    let sys = alg.system();
    let p = alg.field().p() as i64;
    for a in set.iter() {
        for b in set.iter() {
            if a < b && sys.add(a, b).is_some() && alg.constants().n(a, b) % p != 0 {
                return Some((a, b));
            }
        }
    }
    None
}

/// A subspace of `g` or `u` in reduced echelon form with respect to the root order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    pub field: FieldId,
    pub scope: Scope,
    pub rows: Matrix,
    /// Pivot column of each row, most leading first.
    pub pivots: Vec<usize>,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Row-major flattening, used as a hash key.
    pub fn key(&self) -> Vec<Elem> {
        self.rows.concat()
    }
}

/// An elementary subalgebra of `u`, stored as its reduced echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ElementarySubalgebra {
    pub field: FieldId,
    pub rows: Matrix,
    /// Leading root of each row, most leading first.
    pub leads: Vec<usize>,
}

impl ElementarySubalgebra {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// The leading terms.
    pub fn lt(&self) -> RootMask {
        RootMask::from_indices(self.leads.iter().copied())
    }

    /// Row with the given leading root.
    pub fn row_with_lead(&self, a: usize) -> Option<&[Elem]> {
        self.leads.iter().position(|&l| l == a).map(|k| &self.rows[k][..])
    }

    pub fn is_lie_of_lt(&self) -> bool {
        self.rows.iter().all(|r| r.iter().filter(|&&c| c != 0).count() == 1)
    }
}

#[cfg(test)]
mod tests;
