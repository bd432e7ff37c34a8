//! Total orders on the positive roots that respect addition.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::{Family, RootSystem};

/// One refinement layer. Every layer is a linear functional on coefficient
/// vectors, so any lexicographic combination respects addition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Layer {
    /// Larger value is more leading.
    Functional(Vec<i64>),
    /// Reverse lexicographic: the root with the smaller coefficient of the first
    /// listed simple root is more leading, then the next, and so on.
    RevLex(Vec<usize>),
}

#[derive(Debug, Clone, Serialize)]
pub struct RootOrder {
    pub layers: Vec<Layer>,
    #[serde(skip)]
    keys: Vec<Vec<i64>>,
    /// Positive roots from most to least leading.
    #[serde(skip)]
    descending: Vec<usize>,
    #[serde(skip)]
    position: Vec<usize>,
}

impl RootOrder {
    pub fn new(sys: &RootSystem, layers: Vec<Layer>) -> Result<Self> {
        let n = sys.num_positive();
        let keys: Vec<Vec<i64>> = (0..n).map(|a| key(sys, &layers, a)).collect();
        let mut descending: Vec<usize> = (0..n).collect();
        descending.sort_by(|&a, &b| keys[b].cmp(&keys[a]));
        for w in descending.windows(2) {
            if keys[w[0]] == keys[w[1]] {
                return Err(Error::OrderNotAdditive(format!(
                    "layers do not separate {} and {}",
                    sys.root_label(w[0]),
                    sys.root_label(w[1])
                )));
            }
        }
        let mut position = vec![0; n];
        for (k, &a) in descending.iter().enumerate() {
            position[a] = k;
        }
        let order = RootOrder { layers, keys, descending, position };
        order.check_additive(sys)?;
        Ok(order)
    }

    /// `Greater` when `a` is more leading than `b`.
    pub fn cmp(&self, a: usize, b: usize) -> Ordering {
        self.keys[a].cmp(&self.keys[b])
    }

    /// 0 for the most leading root.
    pub fn position(&self, a: usize) -> usize {
        self.position[a]
    }

    pub fn descending(&self) -> &[usize] {
        &self.descending
    }

    /// Exhaustive check: `b <= c` implies `b + l <= c + l` whenever all are positive roots.
    pub fn check_additive(&self, sys: &RootSystem) -> Result<()> {
        let n = sys.num_positive();
        for l in 0..n {
            for b in 0..n {
                let Some(bl) = sys.add(b, l) else { continue };
                for c in 0..n {
                    let Some(cl) = sys.add(c, l) else { continue };
                    if self.cmp(b, c) != self.cmp(bl, cl) {
                        return Err(Error::OrderNotAdditive(format!(
                            "{} vs {} flips after adding {}",
                            sys.root_label(b),
                            sys.root_label(c),
                            sys.root_label(l)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The order used for the leading-term analysis of each type (1-based labels below).
    ///
    /// * A_{2n+1}, B2, B3, C_n, E7: reverse lex with a_i first, where Phi<i> is the maximal set.
    /// * A_{2n}: coefficient sum of a_n and a_{n+1}, then reverse lex a_{n+1}, a_n, a_1, a_2, ...
    /// * B_n (n >= 4): reverse lex a_n, a_{n-1}, ..., a_1.
    /// * D_n: reverse lex a_n, a_{n-1}, a_1, a_2, ..., a_{n-2}.
    /// * G2: height, then reverse lex a_2, a_1.
    pub fn canonical(sys: &RootSystem) -> Result<Self> {
        let label = sys
            .label()
            .ok_or_else(|| Error::Unsupported(format!("no canonical order for {}", sys.name())))?;
        let n = label.rank;
        let rest = |first: &[usize]| -> Vec<usize> {
            let mut seq = first.to_vec();
            seq.extend((0..n).filter(|i| !first.contains(i)));
            seq
        };
        let layers = match label.family {
            Family::A if n % 2 == 1 => vec![Layer::RevLex(rest(&[n / 2]))],
            Family::A => {
                let m = n / 2;
                let mut f = vec![0; n];
                f[m - 1] = -1;
                f[m] = -1;
                vec![Layer::Functional(f), Layer::RevLex(rest(&[m, m - 1]))]
            }
            Family::B if n <= 3 => vec![Layer::RevLex(rest(&[0]))],
            Family::B => vec![Layer::RevLex((0..n).rev().collect())],
            Family::C => vec![Layer::RevLex(rest(&[n - 1]))],
            Family::D => vec![Layer::RevLex(rest(&[n - 1, n - 2]))],
            Family::E if n == 7 => vec![Layer::RevLex(rest(&[6]))],
            Family::G => vec![Layer::Functional(vec![-1, -1]), Layer::RevLex(vec![1, 0])],
            _ => {
                return Err(Error::Unsupported(format!(
                    "no leading-term order is fixed for {label}"
                )))
            }
        };
        RootOrder::new(sys, layers)
    }

    /// Height, then reverse lex in label order. Used where no canonical order exists.
    pub fn graded_revlex(sys: &RootSystem) -> Self {
        let n = sys.rank();
        RootOrder::new(
            sys,
            vec![Layer::Functional(vec![-1; n]), Layer::RevLex((0..n).rev().collect())],
        )
        .expect("graded reverse lex is total and additive")
    }

    /// The canonical order when one exists, otherwise graded reverse lex.
    pub fn for_system(sys: &RootSystem) -> Self {
        Self::canonical(sys).unwrap_or_else(|_| Self::graded_revlex(sys))
    }
}

fn key(sys: &RootSystem, layers: &[Layer], a: usize) -> Vec<i64> {
    let c = &sys.root(a).coeffs;
    let mut k = Vec::new();
    for layer in layers {
        match layer {
            Layer::Functional(f) => k.push(f.iter().zip(c).map(|(&x, &y)| x * y as i64).sum()),
            Layer::RevLex(seq) => k.extend(seq.iter().map(|&i| -(c[i] as i64))),
        }
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(sys: &RootSystem, c: &[i32]) -> usize {
        sys.index_of(c).unwrap()
    }

    #[test]
    fn g2_chain() {
        let g2 = RootSystem::parse("G2").unwrap();
        let o = RootOrder::canonical(&g2).unwrap();
        let expect: Vec<usize> = [[1, 0], [0, 1], [1, 1], [2, 1], [3, 1], [3, 2]]
            .iter()
            .map(|c| idx(&g2, c))
            .collect();
        assert_eq!(o.descending(), &expect[..]);
    }

    #[test]
    fn radical_sits_below_for_unique_max_types() {
        for (s, i) in [("A3", 1), ("A5", 2), ("B2", 0), ("B3", 0), ("C4", 3), ("E7", 6)] {
            let sys = RootSystem::parse(s).unwrap();
            let o = RootOrder::canonical(&sys).unwrap();
            let rad = sys.phi_rad(&[i]);
            for a in rad.iter() {
                for b in sys.all_positive().difference(rad).iter() {
                    assert_eq!(o.cmp(b, a), Ordering::Greater, "{s}");
                }
            }
        }
    }

    #[test]
    fn a_even_four_block_chain() {
        for n in 1..4 {
            let sys = RootSystem::parse(&format!("A{}", 2 * n)).unwrap();
            let o = RootOrder::canonical(&sys).unwrap();
            let pn = sys.phi_rad(&[n - 1]);
            let pn1 = sys.phi_rad(&[n]);
            let blocks = [
                sys.all_positive().difference(pn.union(pn1)),
                pn.difference(pn1),
                pn1.difference(pn),
                pn.intersection(pn1),
            ];
            for w in 0..4 {
                for v in w + 1..4 {
                    for a in blocks[w].iter() {
                        for b in blocks[v].iter() {
                            assert_eq!(o.cmp(a, b), Ordering::Greater);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn b_chain() {
        use crate::rootsys::EpsilonView;
        let sys = RootSystem::parse("B5").unwrap();
        let e = EpsilonView::new(&sys).unwrap();
        let o = RootOrder::canonical(&sys).unwrap();
        let n = 5;
        let mut blocks: Vec<Vec<usize>> = vec![vec![], vec![], vec![], vec![], vec![]];
        for i in 1..=n {
            for j in i + 1..=n {
                if j < n {
                    blocks[0].push(e.pm(i, -1, j));
                    blocks[4].push(e.pm(i, 1, j));
                } else {
                    blocks[1].push(e.pm(i, -1, j));
                    blocks[3].push(e.pm(i, 1, j));
                }
            }
            blocks[2].push(e.e(i));
        }
        for w in 0..5 {
            for v in w + 1..5 {
                for &a in &blocks[w] {
                    for &b in &blocks[v] {
                        assert_eq!(o.cmp(a, b), Ordering::Greater);
                    }
                }
            }
        }
        // e_r above e_i for i < r
        for i in 1..=n {
            for r in i + 1..=n {
                assert_eq!(o.cmp(e.e(r), e.e(i)), Ordering::Greater);
            }
        }
    }

    #[test]
    fn d_chain() {
        use crate::rootsys::EpsilonView;
        for n in [4usize, 5, 6] {
            let sys = RootSystem::parse(&format!("D{n}")).unwrap();
            let e = EpsilonView::new(&sys).unwrap();
            let o = RootOrder::canonical(&sys).unwrap();
            let mut r = crate::rootsys::RootMask::EMPTY;
            for i in 1..n {
                for j in i + 1..n {
                    r.insert(e.pm(i, 1, j));
                }
            }
            let top = sys.all_positive().difference(sys.phi_rad(&[0, n - 2, n - 1]));
            let b1 = sys.phi_rad(&[0]).difference(sys.phi_rad(&[n - 2, n - 1]));
            let b2 = sys.phi_rad(&[n - 2]).difference(r);
            let b3 = sys.phi_rad(&[n - 1]).difference(r);
            let blocks = [top, b1, b2, b3, r];
            let total: usize = blocks.iter().map(|b| b.len()).sum();
            assert_eq!(total, sys.num_positive());
            for w in 0..5 {
                for v in w + 1..5 {
                    for a in blocks[w].iter() {
                        for b in blocks[v].iter() {
                            assert_eq!(o.cmp(a, b), Ordering::Greater, "D{n}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn unsupported_types() {
        for s in ["E6", "E8", "F4"] {
            let sys = RootSystem::parse(s).unwrap();
            assert!(matches!(RootOrder::canonical(&sys), Err(Error::Unsupported(_))));
            let o = RootOrder::for_system(&sys);
            assert!(o.check_additive(&sys).is_ok());
        }
    }

    #[test]
    fn rejects_non_total_layers() {
        let sys = RootSystem::parse("A3").unwrap();
        let err = RootOrder::new(&sys, vec![Layer::Functional(vec![-1, -1, -1])]).unwrap_err();
        assert!(matches!(err, Error::OrderNotAdditive(_)));
    }
}
