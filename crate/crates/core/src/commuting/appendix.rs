use crate::error::{Error, Result};
use crate::rootsys::{EpsilonView, Family, RootMask, RootSystem};

/// The maximal commuting sets built from closed-form recipes, without any search.
/// Supported: A_n (n <= 12), B_n (n >= 5), C_n (n <= 12), D_n (n >= 7), F4, G2.
pub fn appendix_oracle(sys: &RootSystem) -> Result<Vec<RootMask>> {
    let label = sys
        .label()
        .ok_or_else(|| Error::Unsupported("appendix recipes need an irreducible system".into()))?;
    let n = label.rank;
    let mut sets = match label.family {
        Family::A if n <= 12 => type_a(sys, n),
        Family::B if n >= 5 => type_b(sys, n).into_iter().map(|(_, s)| s).collect(),
        Family::C if n <= 12 => type_c(sys, n),
        Family::D if n >= 7 => type_d(sys, n),
        Family::F => type_f4(sys),
        Family::G => type_g2(sys),
        _ => return Err(Error::Unsupported(format!("no closed-form recipe for {label}"))),
    };
    sets.sort_by_key(|m| m.0);
    sets.dedup();
    Ok(sets)
}

fn keep_largest(cands: Vec<RootMask>) -> Vec<RootMask> {
    let best = cands.iter().map(|m| m.len()).max().unwrap_or(0);
    cands.into_iter().filter(|m| m.len() == best).collect()
}

/// Subsets J of {1..n+1} give {e_i - e_j : i in J, j not in J}; keep the positive ones of largest size.
fn type_a(sys: &RootSystem, n: usize) -> Vec<RootMask> {
    let e = EpsilonView::new(sys).unwrap();
    let mut cands = Vec::new();
    for j in 1u32..(1 << (n + 1)) - 1 {
        let inside = |i: usize| j >> (i - 1) & 1 == 1;
        let mut m = RootMask::EMPTY;
        let mut positive = true;
        for a in (1..=n + 1).filter(|&a| inside(a)) {
            for b in (1..=n + 1).filter(|&b| !inside(b)) {
                let r = e.find(&[(a, 1), (b, -1)]).unwrap();
                if sys.is_positive(r) {
                    m.insert(r);
                } else {
                    positive = false;
                }
            }
        }
        if positive {
            cands.push(m);
        }
    }
    keep_largest(cands)
}

/// Positive part of phi(J) = {e_i + e_i', e_i - e_j, -e_j - e_j'}, over all J.
fn type_c(sys: &RootSystem, n: usize) -> Vec<RootMask> {
    let e = EpsilonView::new(sys).unwrap();
    let mut cands = Vec::new();
    for j in 0u32..(1 << n) {
        let inside = |i: usize| j >> (i - 1) & 1 == 1;
        let mut m = RootMask::EMPTY;
        let mut push = |terms: &[(usize, i32)]| {
            let r = e.find(terms).unwrap();
            if sys.is_positive(r) {
                m.insert(r);
            }
        };
        for a in 1..=n {
            for b in a..=n {
                match (inside(a), inside(b)) {
                    (true, true) => push(&[(a, 1), (b, 1)]),
                    (false, false) => push(&[(a, -1), (b, -1)]),
                    (true, false) => push(&[(a, 1), (b, -1)]),
                    (false, true) => push(&[(b, 1), (a, -1)]),
                }
            }
        }
        cands.push(m);
    }
    keep_largest(cands)
}

/// `S_t` (t = 1..n) and `S*_t` (t = 1..n-1) of B_n in epsilon coordinates; the label is `(t, starred)`.
pub fn b_family_sets(sys: &RootSystem) -> Result<Vec<((usize, bool), RootMask)>> {
    match sys.label() {
        Some(l) if l.family == Family::B => Ok(type_b(sys, l.rank)),
        _ => Err(Error::Unsupported(format!("S_t sets are defined for B_n, not {}", sys.name()))),
    }
}

fn type_b(sys: &RootSystem, n: usize) -> Vec<((usize, bool), RootMask)> {
    let e = EpsilonView::new(sys).unwrap();
    let mut out = Vec::new();
    for t in 1..=n {
        let mut s = RootMask::singleton(e.e(t));
        for i in 1..=n {
            for j in i + 1..=n {
                s.insert(e.pm(i, 1, j));
            }
        }
        out.push(((t, false), s));
    }
    for t in 1..n {
        let mut s = RootMask::singleton(e.e(t));
        for i in 1..n {
            for j in i + 1..n {
                s.insert(e.pm(i, 1, j));
            }
            s.insert(e.pm(i, -1, n));
        }
        out.push(((t, true), s));
    }
    out
}

/// The two radicals, written out in epsilon coordinates.
fn type_d(sys: &RootSystem, n: usize) -> Vec<RootMask> {
    let e = EpsilonView::new(sys).unwrap();
    let mut last = RootMask::EMPTY;
    let mut second = RootMask::EMPTY;
    for i in 1..=n {
        for j in i + 1..=n {
            last.insert(e.pm(i, 1, j));
            if j < n {
                second.insert(e.pm(i, 1, j));
            }
        }
        if i < n {
            second.insert(e.pm(i, -1, n));
        }
    }
    vec![last, second]
}

/// B4 part plus two roots `(e1 +- e2 +- e3 +- e4)/2` by the three-case analysis.
fn type_f4(sys: &RootSystem) -> Vec<RootMask> {
    let e = EpsilonView::new(sys).unwrap();
    // signs (i, j, k) on e2, e3, e4
    let half = |s: [i32; 3]| e.find2(&[1, s[0], s[1], s[2]]).unwrap();
    let all_signs: Vec<[i32; 3]> = (0..8).map(|b| [1 - 2 * (b >> 2 & 1), 1 - 2 * (b >> 1 & 1), 1 - 2 * (b & 1)]).collect();
    let changes = |a: [i32; 3], b: [i32; 3]| (0..3).filter(|&k| a[k] != b[k]).count();
    let mut sets = Vec::new();

    // C = Phi<1> of B4
    let mut rad1 = RootMask::singleton(e.e(1));
    for i in 2..=4 {
        rad1.insert(e.pm(1, 1, i));
        rad1.insert(e.pm(1, -1, i));
    }
    for &a in &all_signs {
        for &b in &all_signs {
            if changes(a, b) == 1 {
                sets.push(rad1.union(RootMask::from_indices([half(a), half(b)])));
            }
        }
    }

    let plus = [1, 1, 1];
    // C = S_t: +++ and one negative sign, not on e_t
    for t in 1..=4 {
        let mut c = RootMask::singleton(e.e(t));
        for i in 1..=4 {
            for j in i + 1..=4 {
                c.insert(e.pm(i, 1, j));
            }
        }
        for pos in 0..3 {
            if pos + 2 == t {
                continue;
            }
            let mut s = plus;
            s[pos] = -1;
            sets.push(c.union(RootMask::from_indices([half(plus), half(s)])));
        }
    }

    // C = S*_t: ++- with +++, or with ij- having exactly one negative among i, j, not on e_t
    for t in 1..=3 {
        let mut c = RootMask::singleton(e.e(t));
        for i in 1..4 {
            for j in i + 1..4 {
                c.insert(e.pm(i, 1, j));
            }
            c.insert(e.pm(i, -1, 4));
        }
        let base = [1, 1, -1];
        sets.push(c.union(RootMask::from_indices([half(base), half(plus)])));
        for pos in 0..2 {
            if pos + 2 == t {
                continue;
            }
            let mut s = base;
            s[pos] = -1;
            sets.push(c.union(RootMask::from_indices([half(base), half(s)])));
        }
    }
    sets
}

fn type_g2(sys: &RootSystem) -> Vec<RootMask> {
    let r = |c: [i32; 2]| sys.index_of(&c).unwrap();
    [
        [[1, 0], [3, 1], [3, 2]],
        [[1, 1], [3, 1], [3, 2]],
        [[0, 1], [2, 1], [3, 2]],
        [[0, 1], [1, 1], [3, 2]],
        [[2, 1], [3, 1], [3, 2]],
    ]
    .iter()
    .map(|set| set.iter().map(|&c| r(c)).collect())
    .collect()
}

/// The five G2 sets in the order `C1, ..., C5`.
pub fn g2_sets(sys: &RootSystem) -> Result<Vec<RootMask>> {
    match sys.label() {
        Some(l) if l.family == Family::G => Ok(type_g2(sys)),
        _ => Err(Error::Unsupported(format!("{} is not G2", sys.name()))),
    }
}
