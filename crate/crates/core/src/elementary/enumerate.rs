use super::{Ambient, ElementarySubalgebra, Subspace};
use crate::chevalley::Scope;
use crate::error::{Error, Result};
use crate::field::Elem;

/// Default bound on the number of echelon candidates.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// A pivot pattern with the free columns of each row.
struct Cell {
    pivots: Vec<usize>,
    free: Vec<Vec<usize>>,
}

/// Calls `visit` on each admissible pivot pattern until it returns false.
fn for_each_cell(amb: &Ambient, scope: Scope, r: usize, visit: &mut dyn FnMut(Cell) -> bool) {
    let prio = amb.priority(scope);
    let d = prio.len();
    let sys = amb.system();
    let np = sys.num_positive();
    let p = amb.field().p() as i64;
    // two leading roots whose bracket survives mod p cannot both lead
    let compatible = |a: usize, b: usize| -> bool {
        scope == Scope::G
            || a >= np
            || b >= np
            || sys.add(a, b).is_none()
            || amb.alg().constants().n(a, b) % p == 0
    };
    struct Walk<'a> {
        r: usize,
        d: usize,
        prio: &'a [usize],
        compatible: &'a dyn Fn(usize, usize) -> bool,
        chosen: Vec<usize>,
    }
    fn rec(w: &mut Walk, start: usize, visit: &mut dyn FnMut(Cell) -> bool) -> bool {
        if w.chosen.len() == w.r {
            let is_pivot = |pos: usize| w.chosen.contains(&pos);
            let free = w
                .chosen
                .iter()
                .map(|&k| (k + 1..w.d).filter(|&pos| !is_pivot(pos)).map(|pos| w.prio[pos]).collect())
                .collect();
            return visit(Cell { pivots: w.chosen.iter().map(|&k| w.prio[k]).collect(), free });
        }
        let open: Vec<usize> = (start..w.d)
            .filter(|&k| w.chosen.iter().all(|&j| (w.compatible)(w.prio[j], w.prio[k])))
            .collect();
        let need = w.r - w.chosen.len();
        for (i, &k) in open.iter().enumerate() {
            if open.len() - i < need {
                break;
            }
            w.chosen.push(k);
            let go_on = rec(w, k + 1, visit);
            w.chosen.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
    let mut w = Walk { r, d, prio, compatible: &compatible, chosen: Vec::new() };
    rec(&mut w, 0, visit);
}

fn cell_size(amb: &Ambient, c: &Cell) -> u128 {
    let q = amb.field().order() as u128;
    let free: u32 = c.free.iter().map(|f| f.len() as u32).sum();
    q.checked_pow(free).unwrap_or(u128::MAX)
}

/// Number of echelon matrices the traversal would visit, over admissible pivot patterns.
pub fn candidate_count(amb: &Ambient, scope: Scope, r: usize) -> u128 {
    candidate_count_capped(amb, scope, r, u128::MAX)
}

/// As `candidate_count`, but stops as soon as the total passes `cap`; the result is then a lower bound above `cap`.
pub fn candidate_count_capped(amb: &Ambient, scope: Scope, r: usize, cap: u128) -> u128 {
    let mut total = 0u128;
    for_each_cell(amb, scope, r, &mut |c| {
        total = total.saturating_add(cell_size(amb, &c));
        total <= cap
    });
    total
}

/// Every `r`-dimensional elementary subalgebra of `u`, sorted.
pub fn brute_force_eu(amb: &Ambient, r: usize, budget: u128) -> Result<Vec<ElementarySubalgebra>> {
    Ok(brute_force_subspaces(amb, Scope::U, r, budget)?
        .into_iter()
        .map(|s| ElementarySubalgebra { field: s.field, rows: s.rows, leads: s.pivots })
        .collect())
}

/// Every `r`-dimensional elementary subalgebra of `u` or `g`, sorted.
pub fn brute_force_subspaces(amb: &Ambient, scope: Scope, r: usize, budget: u128) -> Result<Vec<Subspace>> {
    let needed = candidate_count_capped(amb, scope, r, budget);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let f = amb.field();
    let d = amb.alg().dim(scope);
    let elems: Vec<Elem> = f.elements().collect();
    let mut out = Vec::new();
    let mut scratch = vec![0; amb.alg().dim(Scope::G)];
    for_each_cell(amb, scope, r, &mut |cell| {
        // fill rows from the least leading one, which has the fewest free entries
        let mut rows: Vec<Vec<Elem>> = vec![vec![0; d]; r];
        fill(amb, &cell, &elems, r, &mut rows, &mut scratch, &mut |rows| {
            if rows.iter().all(|row| amb.p_nilpotent(row, scope)) {
                out.push(Subspace { field: f.id(), scope, rows: rows.to_vec(), pivots: cell.pivots.clone() });
            }
        });
        true
    });
    out.sort();
    Ok(out)
}

fn fill(
    amb: &Ambient,
    cell: &Cell,
    elems: &[Elem],
    i: usize,
    rows: &mut Vec<Vec<Elem>>,
    scratch: &mut [Elem],
    emit: &mut dyn FnMut(&[Vec<Elem>]),
) {
    if i == 0 {
        emit(rows);
        return;
    }
    let k = i - 1;
    let free = &cell.free[k];
    rows[k].iter_mut().for_each(|v| *v = 0);
    rows[k][cell.pivots[k]] = 1;
    let q = elems.len();
    let mut digits = vec![0usize; free.len()];
    loop {
        for (&col, &dgt) in free.iter().zip(&digits) {
            rows[k][col] = elems[dgt];
        }
        let ok = (k + 1..rows.len()).all(|j| {
            scratch.iter_mut().for_each(|v| *v = 0);
            amb.alg().bracket_into(&rows[k], &rows[j], scratch);
            scratch.iter().all(|&v| v == 0)
        });
        if ok {
            fill(amb, cell, elems, k, rows, scratch, emit);
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                return;
            }
            digits[pos] += 1;
            if digits[pos] < q {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}
