use std::collections::BTreeSet;

use serde::Serialize;

use super::RootSystem;
use crate::error::{Error, Result};
use crate::field::is_prime;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeProfile {
    pub bad_primes: BTreeSet<u32>,
    pub torsion_primes: BTreeSet<u32>,
    pub fundamental_group_order: u64,
    pub longest_root_string: u32,
}

impl PrimeProfile {
    pub fn is_good(&self, p: u32) -> bool {
        !self.bad_primes.contains(&p)
    }
}

impl RootSystem {
    /// Highest-root coefficients `m_i` and the dual coefficients `m_i |alpha_i|^2 / |theta|^2`.
    pub fn highest_root_coefficients(&self) -> Result<(Vec<i64>, Vec<i64>)> {
        if self.label().is_none() {
            return Err(Error::Unsupported(format!("{} is not irreducible", self.name())));
        }
        let theta = self.highest_root();
        let tn = self.norm(theta);
        let m: Vec<i64> = self.root(theta).coeffs.iter().map(|&c| c as i64).collect();
        let dual = m
            .iter()
            .enumerate()
            .map(|(i, &mi)| mi * self.gram()[i][i] / tn)
            .collect();
        Ok((m, dual))
    }

    pub fn prime_profile(&self) -> Result<PrimeProfile> {
        let (m, dual) = self.highest_root_coefficients()?;
        let primes = |v: &[i64]| -> BTreeSet<u32> {
            v.iter()
                .filter(|&&c| c > 1 && is_prime(c as u32))
                .map(|&c| c as u32)
                .collect()
        };
        Ok(PrimeProfile {
            bad_primes: primes(&m),
            torsion_primes: primes(&dual),
            fundamental_group_order: det(self.cartan()).unsigned_abs(),
            longest_root_string: self.longest_root_string(),
        })
    }
}

/// Integer determinant by fraction-free elimination.
pub(crate) fn det(a: &[Vec<i64>]) -> i64 {
    let n = a.len();
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    (sign * m[n - 1][n - 1]) as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile(s: &str) -> PrimeProfile {
        RootSystem::parse(s).unwrap().prime_profile().unwrap()
    }

    fn set(v: &[u32]) -> BTreeSet<u32> {
        v.iter().copied().collect()
    }

    #[test]
    fn exceptional_rows() {
        let g2 = profile("G2");
        assert_eq!(g2.bad_primes, set(&[2, 3]));
        assert_eq!(g2.torsion_primes, set(&[2]));
        assert_eq!(g2.fundamental_group_order, 1);
        assert_eq!(g2.longest_root_string, 4);
        let e8 = profile("E8");
        assert_eq!(e8.bad_primes, set(&[2, 3, 5]));
        assert_eq!(e8.torsion_primes, set(&[2, 3, 5]));
    }

    #[test]
    fn type_a() {
        for n in 1..7 {
            let p = profile(&format!("A{n}"));
            assert!(p.bad_primes.is_empty() && p.torsion_primes.is_empty());
            assert_eq!(p.fundamental_group_order, n as u64 + 1);
        }
    }

    #[test]
    fn determinant() {
        assert_eq!(det(&[vec![2, -1], vec![-1, 2]]), 3);
        assert_eq!(det(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(det(&[vec![1, 2], vec![2, 4]]), 0);
    }
}
