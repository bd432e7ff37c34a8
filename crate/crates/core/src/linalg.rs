//! Dense linear algebra over a [`FiniteField`].

use crate::field::{Elem, FiniteField};

pub type Matrix = Vec<Vec<Elem>>;

/// Reduced row echelon form. Columns are pivoted in the priority given by `order`
/// (first entry most leading). Zero rows are dropped; returns the pivot column of each row.
pub fn rref_with_order(f: &FiniteField, rows: &mut Matrix, order: &[usize]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in order {
        if r == rows.len() {
            break;
        }
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let inv = f.inv(rows[r][c]).unwrap();
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k == r || row[c] == 0 {
                continue;
            }
            let factor = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                if y != 0 {
                    *x = f.sub(*x, f.mul(factor, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rref(f: &FiniteField, rows: &mut Matrix) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let order: Vec<usize> = (0..ncols).collect();
    rref_with_order(f, rows, &order)
}

pub fn rank(f: &FiniteField, rows: &[Vec<Elem>]) -> usize {
    let mut m = rows.to_vec();
    rref(f, &mut m).len()
}

/// Basis of `{x : A x = 0}` where `A` has `ncols` columns.
pub fn nullspace(f: &FiniteField, a: &[Vec<Elem>], ncols: usize) -> Matrix {
    let mut m = a.to_vec();
    let pivots = rref(f, &mut m);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0; ncols];
        v[free] = 1;
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = f.neg(row[free]);
        }
        basis.push(v);
    }
    basis
}

/// One solution of `A x = b` and the nullspace of `A`, or `None` if inconsistent.
pub fn solve(f: &FiniteField, a: &[Vec<Elem>], b: &[Elem], ncols: usize) -> Option<(Vec<Elem>, Matrix)> {
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    let order: Vec<usize> = (0..=ncols).collect();
    let pivots = rref_with_order(f, &mut aug, &order);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![0; ncols];
    for (row, &pc) in aug.iter().zip(&pivots) {
        x[pc] = row[ncols];
    }
    Some((x, nullspace(f, a, ncols)))
}

pub fn mat_vec(f: &FiniteField, m: &[Vec<Elem>], v: &[Elem]) -> Vec<Elem> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0, |acc, (&a, &b)| if a == 0 || b == 0 { acc } else { f.add(acc, f.mul(a, b)) })
        })
        .collect()
}

pub fn mat_mul(f: &FiniteField, a: &[Vec<Elem>], b: &[Vec<Elem>]) -> Matrix {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            let mut out = vec![0; n];
            for (k, &x) in row.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (o, &y) in out.iter_mut().zip(&b[k]) {
                    if y != 0 {
                        *o = f.add(*o, f.mul(x, y));
                    }
                }
            }
            out
        })
        .collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            let mut r = vec![0; n];
            r[i] = 1;
            r
        })
        .collect()
}

/// `y += c x`.
pub fn axpy(f: &FiniteField, y: &mut [Elem], c: Elem, x: &[Elem]) {
    if c == 0 {
        return;
    }
    for (a, &b) in y.iter_mut().zip(x) {
        if b != 0 {
            *a = f.add(*a, f.mul(c, b));
        }
    }
}

pub fn scale(f: &FiniteField, x: &mut [Elem], c: Elem) {
    for a in x.iter_mut() {
        *a = f.mul(*a, c);
    }
}

/// Integer matrix product over `i128`.
pub fn int_mat_mul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            let mut out = vec![0i128; n];
            for (k, &x) in row.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (o, &y) in out.iter_mut().zip(&b[k]) {
                    *o += x * y;
                }
            }
            out
        })
        .collect()
}

/// Inverse of an invertible square matrix.
pub fn invert(f: &FiniteField, a: &[Vec<Elem>]) -> Matrix {
    let n = a.len();
    let mut aug: Matrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| (i == j) as Elem));
            r
        })
        .collect();
    let order: Vec<usize> = (0..n).collect();
    let piv = rref_with_order(f, &mut aug, &order);
    assert_eq!(piv.len(), n, "matrix is singular");
    aug.into_iter().map(|r| r[n..].to_vec()).collect()
}
