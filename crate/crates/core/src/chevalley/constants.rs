use std::cmp::Ordering;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::order::RootOrder;
use crate::rootsys::RootSystem;

/// Which root of a special pair counts as "smaller" in the extraspecial choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extraspecial {
    /// The less leading root under the order.
    LeastLeading,
    /// The more leading root under the order.
    MostLeading,
}

/// Integer structure constants `N_{a,b}` of a Chevalley basis, for all pairs of roots.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    sys: RootSystem,
    order: RootOrder,
    m: usize,
    n: Vec<i64>,
    coroot: Vec<Vec<i64>>,
}

impl StructureConstants {
    pub fn new(sys: &RootSystem, order: &RootOrder) -> Result<Self> {
        Self::with_convention(sys, order, Extraspecial::LeastLeading)
    }

    pub fn for_system(sys: &RootSystem) -> Self {
        Self::new(sys, &RootOrder::for_system(sys)).expect("canonical orders are additive")
    }

    pub fn with_convention(sys: &RootSystem, order: &RootOrder, conv: Extraspecial) -> Result<Self> {
        order.check_additive(sys)?;
        let np = sys.num_positive();
        let m = sys.num_roots();
        let mut table = StructureConstants {
            sys: sys.clone(),
            order: order.clone(),
            m,
            n: vec![0; m * m],
            coroot: Vec::new(),
        };
        // "smaller" in the special-pair sense
        let less = |a: usize, b: usize| -> bool {
            match conv {
                Extraspecial::LeastLeading => order.cmp(a, b) == Ordering::Less,
                Extraspecial::MostLeading => order.cmp(a, b) == Ordering::Greater,
            }
        };
        let mut by_height: Vec<usize> = (0..np).collect();
        by_height.sort_by_key(|&a| sys.height(a));
        for &xi in &by_height {
            let mut pairs: Vec<(usize, usize)> = (0..np)
                .filter_map(|a| {
                    let b = sys.add(xi, sys.neg(a))?;
                    (sys.is_positive(b) && less(a, b)).then_some((a, b))
                })
                .collect();
            if pairs.is_empty() {
                continue;
            }
            pairs.sort_by(|x, y| {
                if less(x.0, y.0) {
                    Ordering::Less
                } else if less(y.0, x.0) {
                    Ordering::Greater
                } else {
                    Ordering::Equal
                }
            });
            let (a, b) = pairs[0];
            let (r, _) = sys.root_string(a, b)?;
            table.set_pos(a, b, r as i64 + 1);
            for &(c, d) in &pairs[1..] {
                // four-root relation on (a, b, -c, -d)
                let nab = table.get_pos(a, b);
                let mut acc = Rational::zero();
                if let Some(bc) = sys.add(b, sys.neg(c)) {
                    let t = table.any(b, sys.neg(c)) * table.any(a, sys.neg(d));
                    acc = acc.add(t, sys.norm(bc));
                }
                if let Some(ac) = sys.add(a, sys.neg(c)) {
                    let t = table.any(sys.neg(c), a) * table.any(b, sys.neg(d));
                    acc = acc.add(t, sys.norm(ac));
                }
                // N_{-c,-d} = -N_{c,d}
                let ncd = acc.times(sys.norm(xi)).divide(nab)?;
                table.set_pos(c, d, ncd);
            }
        }
        for a in 0..m {
            for b in 0..m {
                if sys.add(a, b).is_some() && !(sys.is_positive(a) && sys.is_positive(b)) {
                    let v = table.any(a, b);
                    table.n[a * m + b] = v;
                }
            }
        }
        table.coroot = (0..m)
            .map(|a| {
                let na = sys.norm(a);
                sys.root(a)
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| {
                        let v = c as i64 * sys.gram()[i][i];
                        assert_eq!(v % na, 0);
                        v / na
                    })
                    .collect()
            })
            .collect();
        table.verify()?;
        Ok(table)
    }

    fn set_pos(&mut self, a: usize, b: usize, v: i64) {
        self.n[a * self.m + b] = v;
        self.n[b * self.m + a] = -v;
    }

    fn get_pos(&self, a: usize, b: usize) -> i64 {
        self.n[a * self.m + b]
    }

    /// `N_{a,b}` for arbitrary roots, derived from the positive part.
    fn any(&self, a: usize, b: usize) -> i64 {
        let s = &self.sys;
        let Some(c) = s.add(a, b) else { return 0 };
        match (s.is_positive(a), s.is_positive(b)) {
            (true, true) => self.get_pos(a, b),
            (false, false) => -self.get_pos(s.neg(a), s.neg(b)),
            (false, true) => -self.any(b, a),
            (true, false) => {
                if s.is_positive(c) {
                    // a + b - c = 0; N_{a,b}/|c|^2 = N_{b,-c}/|a|^2 and N_{b,-c} = -N_{-b,c}
                    let v = -self.get_pos(s.neg(b), c) * s.norm(c);
                    exact(v, s.norm(a))
                } else {
                    // N_{a,b}/|c|^2 = N_{-c,a}/|b|^2
                    let v = self.get_pos(s.neg(c), a) * s.norm(c);
                    exact(v, s.norm(b))
                }
            }
        }
    }

    fn verify(&self) -> Result<()> {
        let s = &self.sys;
        for a in 0..self.m {
            for b in 0..self.m {
                let v = self.n(a, b);
                if s.add(a, b).is_none() {
                    continue;
                }
                let (r, _) = s.root_string(a, b)?;
                if v.abs() != r as i64 + 1 || v != -self.n(b, a) || v != -self.n(s.neg(a), s.neg(b)) {
                    return Err(Error::Unsupported(format!(
                        "inconsistent structure constant N({}, {}) = {v}",
                        s.root_label(a),
                        s.root_label(b)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn system(&self) -> &RootSystem {
        &self.sys
    }

    pub fn order(&self) -> &RootOrder {
        &self.order
    }

    /// `N_{a,b}`; zero when `a + b` is not a root.
    #[inline]
    pub fn n(&self, a: usize, b: usize) -> i64 {
        self.n[a * self.m + b]
    }

    /// Coefficients of `h_a = [x_a, x_{-a}]` in `h_1, ..., h_rank`.
    pub fn coroot(&self, a: usize) -> &[i64] {
        &self.coroot[a]
    }

    /// Deterministic CSV of all nonzero constants in canonical root order.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("alpha,beta,N\n");
        let fmt = |a: usize| -> String {
            self.sys.root(a).coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
        };
        for a in 0..self.m {
            for b in 0..self.m {
                let v = self.n(a, b);
                if v != 0 {
                    let _ = writeln!(out, "{},{},{v}", fmt(a), fmt(b));
                }
            }
        }
        out
    }
}

fn exact(num: i64, den: i64) -> i64 {
    assert_eq!(num % den, 0, "non-integral structure constant {num}/{den}");
    num / den
}

/// Small exact rational for the four-root relation.
#[derive(Debug, Clone, Copy)]
struct Rational {
    num: i64,
    den: i64,
}

impl Rational {
    fn zero() -> Self {
        Rational { num: 0, den: 1 }
    }

    fn add(self, n: i64, d: i64) -> Self {
        Rational { num: self.num * d + n * self.den, den: self.den * d }
    }

    fn times(self, k: i64) -> Self {
        Rational { num: self.num * k, den: self.den }
    }

    fn divide(self, k: i64) -> Result<i64> {
        let den = self.den * k;
        if self.num % den != 0 {
            return Err(Error::Unsupported(format!("non-integral constant {}/{}", self.num, den)));
        }
        Ok(self.num / den)
    }
}
