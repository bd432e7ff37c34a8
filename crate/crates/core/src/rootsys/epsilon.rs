use std::collections::HashMap;

use super::{Family, RootSystem};
use crate::error::{Error, Result};

/// Orthonormal-coordinate model of a classical or F4 root system.
/// Coordinates are stored doubled so that F4's half-integers stay integral.
#[derive(Debug, Clone)]
pub struct EpsilonView {
    pub dim: usize,
    coords: Vec<Vec<i32>>,
    lookup: HashMap<Vec<i32>, usize>,
}

impl EpsilonView {
    pub fn new(sys: &RootSystem) -> Result<Self> {
        let label = sys
            .label()
            .ok_or_else(|| Error::Unsupported("epsilon coordinates need an irreducible system".into()))?;
        let n = label.rank;
        let (dim, simple): (usize, Vec<Vec<i32>>) = match label.family {
            Family::A => (n + 1, (0..n).map(|i| unit2(n + 1, &[(i, 1), (i + 1, -1)])).collect()),
            Family::B | Family::C | Family::D => {
                let mut s: Vec<Vec<i32>> = (0..n - 1).map(|i| unit2(n, &[(i, 1), (i + 1, -1)])).collect();
                s.push(match label.family {
                    Family::B => unit2(n, &[(n - 1, 1)]),
                    Family::C => unit2(n, &[(n - 1, 2)]),
                    _ => unit2(n, &[(n - 2, 1), (n - 1, 1)]),
                });
                (n, s)
            }
            Family::F => (
                4,
                vec![
                    unit2(4, &[(1, 1), (2, -1)]),
                    unit2(4, &[(2, 1), (3, -1)]),
                    unit2(4, &[(3, 1)]),
                    vec![1, -1, -1, -1],
                ],
            ),
            _ => {
                return Err(Error::Unsupported(format!("no epsilon model for {label}")));
            }
        };
        let coords: Vec<Vec<i32>> = sys
            .roots()
            .iter()
            .map(|r| {
                let mut v = vec![0; dim];
                for (i, &c) in r.coeffs.iter().enumerate() {
                    for k in 0..dim {
                        v[k] += c * simple[i][k];
                    }
                }
                v
            })
            .collect();
        let lookup = coords.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        Ok(EpsilonView { dim, coords, lookup })
    }

    /// Doubled epsilon coordinates of a root.
    pub fn coords2(&self, a: usize) -> &[i32] {
        &self.coords[a]
    }

    /// Root with the given doubled coordinates.
    pub fn find2(&self, v: &[i32]) -> Option<usize> {
        self.lookup.get(v).copied()
    }

    /// Root `sum c e_i` with 1-based indices and integer coefficients.
    pub fn find(&self, terms: &[(usize, i32)]) -> Option<usize> {
        let mut v = vec![0; self.dim];
        for &(i, c) in terms {
            if i == 0 || i > self.dim {
                return None;
            }
            v[i - 1] += 2 * c;
        }
        self.find2(&v)
    }

    /// `e_i + sign * e_j` (1-based).
    pub fn pm(&self, i: usize, sign: i32, j: usize) -> usize {
        self.find(&[(i, 1), (j, sign)])
            .unwrap_or_else(|| panic!("e{i}{}e{j} is not a root", if sign > 0 { '+' } else { '-' }))
    }

    /// `e_i` (1-based).
    pub fn e(&self, i: usize) -> usize {
        self.find(&[(i, 1)]).unwrap_or_else(|| panic!("e{i} is not a root"))
    }
}

fn unit2(dim: usize, terms: &[(usize, i32)]) -> Vec<i32> {
    let mut v = vec![0; dim];
    for &(i, c) in terms {
        v[i] = 2 * c;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Counts of the classical epsilon models, independent of the closure.
    fn model_count(family: Family, n: usize) -> usize {
        let pairs = n * (n - 1) / 2;
        match family {
            Family::A => (n + 1) * n / 2,
            Family::B | Family::C => 2 * pairs + n,
            _ => 2 * pairs,
        }
    }

    #[test]
    fn closure_matches_models() {
        for (s, fam, n) in [
            ("A4", Family::A, 4),
            ("B5", Family::B, 5),
            ("C4", Family::C, 4),
            ("D6", Family::D, 6),
        ] {
            let sys = RootSystem::parse(s).unwrap();
            let v = EpsilonView::new(&sys).unwrap();
            assert_eq!(sys.num_positive(), model_count(fam, n), "{s}");
            let mut seen = std::collections::HashSet::new();
            for a in 0..sys.num_roots() {
                assert!(seen.insert(v.coords2(a).to_vec()));
            }
        }
    }

    #[test]
    fn inner_products_match() {
        for s in ["B4", "C3", "D5", "F4"] {
            let sys = RootSystem::parse(s).unwrap();
            let v = EpsilonView::new(&sys).unwrap();
            let dot = |a: usize, b: usize| -> i64 {
                v.coords2(a).iter().zip(v.coords2(b)).map(|(&x, &y)| (x * y) as i64).sum()
            };
            // constant rescaling between the two inner products
            let k = dot(0, 0) as f64 / sys.norm(0) as f64;
            for a in 0..sys.num_roots() {
                for b in 0..sys.num_roots() {
                    assert_eq!(dot(a, b) as f64, k * sys.inner(a, b) as f64, "{s}");
                }
            }
        }
    }

    #[test]
    fn f4_has_all_sign_vectors() {
        let sys = RootSystem::parse("F4").unwrap();
        let v = EpsilonView::new(&sys).unwrap();
        for signs in 0..16 {
            let w: Vec<i32> = (0..4).map(|k| if signs >> k & 1 == 1 { 1 } else { -1 }).collect();
            assert!(v.find2(&w).is_some());
        }
        assert!(v.find(&[(1, 1)]).is_some());
        assert!(v.find(&[(1, 1), (4, -1)]).is_some());
    }
}
