use serde::Serialize;

use super::{Ambient, ElementarySubalgebra};
use crate::chevalley::Scope;
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::linalg;
use crate::rootsys::RootMask;

/// Unknown coefficients below prescribed leading terms, with the bracket
/// equations they must satisfy.
#[derive(Debug, Clone, Serialize)]
pub struct LeadingTermSystem {
    pub target: RootMask,
    /// Leading root of each row, most leading first.
    pub leads: Vec<usize>,
    /// `(row, root)` of each unknown.
    pub unknowns: Vec<(usize, usize)>,
    pub equations: Vec<Equation>,
}

/// Coefficient of `x_root` in `[row_i, row_j]`: a sum of `coef * u * v` with
/// `u, v` unknowns or the constant 1.
#[derive(Debug, Clone, Serialize)]
pub struct Equation {
    pub rows: (usize, usize),
    pub root: usize,
    pub terms: Vec<(Elem, Option<usize>, Option<usize>)>,
}

impl LeadingTermSystem {
    pub fn new(amb: &Ambient, target: RootMask) -> Result<Self> {
        amb.lie(target)?;
        let sys = amb.system();
        let f = amb.field();
        let order = amb.order();
        let mut leads: Vec<usize> = target.iter().collect();
        leads.sort_by_key(|&a| order.position(a));
        let mut unknowns = Vec::new();
        // terms of each row: (root, unknown or None for the leading 1)
        let mut terms: Vec<Vec<(usize, Option<usize>)>> = Vec::new();
        for (i, &a) in leads.iter().enumerate() {
            let mut t = vec![(a, None)];
            for &b in &order.descending()[order.position(a) + 1..] {
                if !target.contains(b) {
                    t.push((b, Some(unknowns.len())));
                    unknowns.push((i, b));
                }
            }
            terms.push(t);
        }
        let mut equations = Vec::new();
        for i in 0..leads.len() {
            for j in i + 1..leads.len() {
                let mut by_root: Vec<Vec<(Elem, Option<usize>, Option<usize>)>> = vec![Vec::new(); sys.num_positive()];
                for &(b, u) in &terms[i] {
                    for &(c, v) in &terms[j] {
                        if let Some(s) = sys.add(b, c) {
                            let n = f.from_int(amb.alg().constants().n(b, c));
                            if n != 0 {
                                by_root[s].push((n, u, v));
                            }
                        }
                    }
                }
                for (root, t) in by_root.into_iter().enumerate() {
                    if !t.is_empty() {
                        equations.push(Equation { rows: (i, j), root, terms: t });
                    }
                }
            }
        }
        Ok(LeadingTermSystem { target, leads, unknowns, equations })
    }

    /// The subalgebra spanned by the rows for an assignment of the unknowns.
    pub fn subalgebra(&self, amb: &Ambient, values: &[Elem]) -> ElementarySubalgebra {
        let n = amb.system().num_positive();
        let mut rows = vec![vec![0; n]; self.leads.len()];
        for (row, &a) in rows.iter_mut().zip(&self.leads) {
            row[a] = 1;
        }
        for (&(i, b), &v) in self.unknowns.iter().zip(values) {
            rows[i][b] = v;
        }
        amb.elementary_unchecked(rows)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SolutionKind {
    /// Only the zero assignment, i.e. `E = lie(target)`.
    ZeroOnly,
    /// An affine subspace of the given dimension.
    Affine { dim: usize },
    Other,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolutionSet {
    pub kind: SolutionKind,
    /// Assignments solving the bracket equations whose rows are also `p`-nilpotent, sorted.
    pub solutions: Vec<Vec<Elem>>,
    /// Bracket solutions dropped by the `[p]` check.
    pub rejected_by_p_power: usize,
    pub nodes: u128,
}

/// All assignments over the field: backtracking with propagation of equations
/// that are linear in their last unassigned unknown.
pub fn leading_term_solve(amb: &Ambient, sys: &LeadingTermSystem, budget: u128) -> Result<SolutionSet> {
    let nv = sys.unknowns.len();
    let mut occurs: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (k, eq) in sys.equations.iter().enumerate() {
        for &(_, u, v) in &eq.terms {
            for x in [u, v].into_iter().flatten() {
                if !occurs[x].contains(&k) {
                    occurs[x].push(k);
                }
            }
        }
    }
    let mut st = Search { amb, sys, occurs, nodes: 0, budget, found: Vec::new() };
    let mut vals: Vec<Option<Elem>> = vec![None; nv];
    st.branch(&mut vals)?;
    let nodes = st.nodes;
    let mut solutions = Vec::new();
    let mut rejected = 0;
    for s in st.found {
        let e = sys.subalgebra(amb, &s);
        if e.rows.iter().all(|r| amb.p_nilpotent(r, Scope::U)) {
            solutions.push(s);
        } else {
            rejected += 1;
        }
    }
    solutions.sort();
    let kind = classify(amb, &solutions);
    Ok(SolutionSet { kind, solutions, rejected_by_p_power: rejected, nodes })
}

fn classify(amb: &Ambient, sols: &[Vec<Elem>]) -> SolutionKind {
    let f = amb.field();
    if sols.len() == 1 && sols[0].iter().all(|&v| v == 0) {
        return SolutionKind::ZeroOnly;
    }
    let Some(s0) = sols.first() else { return SolutionKind::Other };
    let diffs: Vec<Vec<Elem>> = sols[1..]
        .iter()
        .map(|s| s.iter().zip(s0).map(|(&a, &b)| f.sub(a, b)).collect())
        .collect();
    let rank = if diffs.is_empty() { 0 } else { linalg::rank(f, &diffs) };
    // the solutions lie in s0 + span(diffs), which has exactly q^rank points
    match (f.order() as u128).checked_pow(rank as u32) {
        Some(size) if size == sols.len() as u128 => SolutionKind::Affine { dim: rank },
        _ => SolutionKind::Other,
    }
}

struct Search<'a> {
    amb: &'a Ambient,
    sys: &'a LeadingTermSystem,
    occurs: Vec<Vec<usize>>,
    nodes: u128,
    budget: u128,
    found: Vec<Vec<Elem>>,
}

enum Status {
    Satisfied,
    Violated,
    /// Linear in one unknown: `a * x + b`.
    Unit(usize, Elem, Elem),
    Open(usize),
}

impl Search<'_> {
    fn eval(&self, eq: &Equation, vals: &[Option<Elem>]) -> Status {
        let f = self.amb.field();
        let mut frees: Vec<usize> = Vec::new();
        for &(_, u, v) in &eq.terms {
            for x in [u, v].into_iter().flatten() {
                if vals[x].is_none() && !frees.contains(&x) {
                    frees.push(x);
                }
            }
        }
        if frees.len() >= 2 {
            return Status::Open(frees.len());
        }
        let free = frees.first().copied();
        let val = |x: Option<usize>| x.map_or(Some(1), |x| vals[x]);
        let (mut a, mut b) = (0, 0);
        for &(c, u, v) in &eq.terms {
            match (val(u), val(v)) {
                (Some(x), Some(y)) => b = f.add(b, f.mul(c, f.mul(x, y))),
                (None, Some(y)) | (Some(y), None) => a = f.add(a, f.mul(c, y)),
                (None, None) => unreachable!("unknowns of distinct rows are distinct"),
            }
        }
        match free {
            None if b == 0 => Status::Satisfied,
            None => Status::Violated,
            Some(x) if a != 0 => Status::Unit(x, a, b),
            Some(_) if b == 0 => Status::Satisfied,
            Some(_) => Status::Violated,
        }
    }

    /// Assign forced unknowns; returns the assigned ones, or `None` on conflict.
    fn propagate(&self, vals: &mut [Option<Elem>], seed: &[usize]) -> Option<Vec<usize>> {
        let f = self.amb.field();
        let mut assigned = Vec::new();
        let mut queue: Vec<usize> = seed.iter().flat_map(|&x| self.occurs[x].iter().copied()).collect();
        if seed.is_empty() {
            queue = (0..self.sys.equations.len()).collect();
        }
        while let Some(k) = queue.pop() {
            match self.eval(&self.sys.equations[k], vals) {
                Status::Violated => {
                    for &x in &assigned {
                        vals[x] = None;
                    }
                    return None;
                }
                Status::Unit(x, a, b) => {
                    vals[x] = Some(f.neg(f.div(b, a).unwrap()));
                    assigned.push(x);
                    queue.extend(self.occurs[x].iter().copied());
                }
                _ => {}
            }
        }
        Some(assigned)
    }

    fn branch(&mut self, vals: &mut Vec<Option<Elem>>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded { needed: self.nodes, budget: self.budget });
        }
        let Some(forced) = self.propagate(vals, &[]) else { return Ok(()) };
        let pick = self.pick(vals);
        match pick {
            None => self.found.push(vals.iter().map(|v| v.unwrap()).collect()),
            Some(x) => {
                let elems: Vec<Elem> = self.amb.field().elements().collect();
                for c in elems {
                    vals[x] = Some(c);
                    if let Some(more) = self.propagate(vals, &[x]) {
                        self.branch(vals)?;
                        for y in more {
                            vals[y] = None;
                        }
                    }
                }
                vals[x] = None;
            }
        }
        for y in forced {
            vals[y] = None;
        }
        Ok(())
    }

    /// An unknown of the open equation with the fewest free unknowns, else any free unknown.
    fn pick(&self, vals: &[Option<Elem>]) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for eq in &self.sys.equations {
            if let Status::Open(n) = self.eval(eq, vals) {
                if best.is_none_or(|(m, _)| n < m) {
                    let x = eq
                        .terms
                        .iter()
                        .flat_map(|&(_, u, v)| [u, v])
                        .flatten()
                        .find(|&x| vals[x].is_none())
                        .unwrap();
                    best = Some((n, x));
                }
            }
        }
        best.map(|(_, x)| x).or_else(|| vals.iter().position(|v| v.is_none()))
    }
}
