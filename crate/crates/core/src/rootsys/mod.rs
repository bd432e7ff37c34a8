//! Root systems in Bourbaki labeling.
//!
//! Roots are integer coefficient vectors over the simple roots. Every root has an
//! index: positive roots come first (`0..N`, sorted by height), then their negatives
//! in the same order (`N..2N`). The first `rank` indices are the simple roots.

mod epsilon;
mod label;
mod mask;
mod primes;
mod weyl;

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub use epsilon::EpsilonView;
pub use label::{Family, TypeLabel};
pub use mask::{MaskIter, RootMask};
pub use primes::PrimeProfile;
pub use weyl::{WeylElement, WeylWord};

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Root {
    pub coeffs: Vec<i32>,
}

impl Root {
    pub fn height(&self) -> i32 {
        self.coeffs.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let neg = !self.is_positive();
        if neg {
            write!(f, "-")?;
        }
        if neg {
            write!(f, "(")?;
        }
        for (i, &c) in self.coeffs.iter().enumerate() {
            let c = c.abs();
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            if c != 1 {
                write!(f, "{c}")?;
            }
            write!(f, "a{}", i + 1)?;
        }
        if neg {
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    components: Vec<TypeLabel>,
    offsets: Vec<usize>,
    rank: usize,
    gram: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
    roots: Vec<Root>,
    n_pos: usize,
    index: HashMap<Vec<i32>, usize>,
    sum: Vec<u32>,
    refl: Vec<Vec<u32>>,
}

impl RootSystem {
    pub fn new(label: TypeLabel) -> Self {
        Self::direct_sum(&[label])
    }

    pub fn parse(s: &str) -> Result<Self> {
        let labels = s
            .split('+')
            .map(|part| part.parse::<TypeLabel>())
            .collect::<Result<Vec<_>>>()?;
        if labels.iter().map(|l| l.num_positive_roots()).sum::<usize>() > 128 {
            return Err(Error::InvalidType(format!("{s} has more than 128 positive roots")));
        }
        Ok(Self::direct_sum(&labels))
    }

    /// Orthogonal direct sum of irreducible systems.
    pub fn direct_sum(labels: &[TypeLabel]) -> Self {
        assert!(!labels.is_empty());
        let rank: usize = labels.iter().map(|l| l.rank).sum();
        let mut gram = vec![vec![0i64; rank]; rank];
        let mut offsets = Vec::new();
        let mut off = 0;
        for l in labels {
            offsets.push(off);
            let g = label::gram_matrix(*l);
            for i in 0..l.rank {
                for j in 0..l.rank {
                    gram[off + i][off + j] = g[i][j];
                }
            }
            off += l.rank;
        }
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| 2 * gram[i][j] / gram[i][i]).collect())
            .collect();

        let positive = close_positive_roots(&cartan);
        let n_pos = positive.len();
        let mut roots = positive.clone();
        roots.extend(positive.iter().map(|r| Root {
            coeffs: r.coeffs.iter().map(|c| -c).collect(),
        }));
        let index: HashMap<Vec<i32>, usize> = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.coeffs.clone(), i))
            .collect();

        let m = roots.len();
        let mut sum = vec![NONE; m * m];
        let mut buf = vec![0i32; rank];
        for a in 0..m {
            for b in 0..m {
                for k in 0..rank {
                    buf[k] = roots[a].coeffs[k] + roots[b].coeffs[k];
                }
                if let Some(&c) = index.get(&buf) {
                    sum[a * m + b] = c as u32;
                }
            }
        }

        let mut sys = RootSystem {
            components: labels.to_vec(),
            offsets,
            rank,
            gram,
            cartan,
            roots,
            n_pos,
            index,
            sum,
            refl: Vec::new(),
        };
        sys.refl = (0..rank)
            .map(|i| {
                (0..m)
                    .map(|b| {
                        let k = sys.pairing(b, i) as i32;
                        let mut c = sys.roots[b].coeffs.clone();
                        c[i] -= k;
                        sys.index[&c] as u32
                    })
                    .collect()
            })
            .collect();
        sys
    }

    pub fn components(&self) -> &[TypeLabel] {
        &self.components
    }

    /// The type label of an irreducible system.
    pub fn label(&self) -> Option<TypeLabel> {
        (self.components.len() == 1).then(|| self.components[0])
    }

    pub fn name(&self) -> String {
        self.components
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join("+")
    }

    /// Index of the first simple root of each irreducible component.
    pub fn component_offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// `cartan[i][j] = <alpha_j, alpha_i^vee>`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn num_positive(&self) -> usize {
        self.n_pos
    }

    pub fn num_roots(&self) -> usize {
        2 * self.n_pos
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.roots[i]
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.n_pos]
    }

    pub fn simple_roots(&self) -> &[Root] {
        &self.roots[..self.rank]
    }

    pub fn index_of(&self, coeffs: &[i32]) -> Option<usize> {
        self.index.get(coeffs).copied()
    }

    pub fn index_of_root(&self, root: &Root) -> Result<usize> {
        self.index_of(&root.coeffs)
            .ok_or_else(|| Error::InvalidRoot(format!("{:?} is not a root", root.coeffs)))
    }

    #[inline]
    pub fn is_positive(&self, a: usize) -> bool {
        a < self.n_pos
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        if a < self.n_pos {
            a + self.n_pos
        } else {
            a - self.n_pos
        }
    }

    /// Index of `a + b` if it is a root.
    #[inline]
    pub fn add(&self, a: usize, b: usize) -> Option<usize> {
        let s = self.sum[a * 2 * self.n_pos + b];
        (s != NONE).then_some(s as usize)
    }

    pub fn height(&self, a: usize) -> i32 {
        self.roots[a].height()
    }

    /// `<beta, alpha_i^vee>`.
    pub fn pairing(&self, beta: usize, i: usize) -> i64 {
        self.roots[beta]
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, &c)| c as i64 * self.cartan[i][j])
            .sum()
    }

    pub fn inner(&self, a: usize, b: usize) -> i64 {
        let (ca, cb) = (&self.roots[a].coeffs, &self.roots[b].coeffs);
        let mut s = 0;
        for i in 0..self.rank {
            if ca[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                s += ca[i] as i64 * self.gram[i][j] * cb[j] as i64;
            }
        }
        s
    }

    pub fn norm(&self, a: usize) -> i64 {
        self.inner(a, a)
    }

    /// `<beta, alpha^vee>` for arbitrary roots.
    pub fn pairing_roots(&self, beta: usize, alpha: usize) -> i64 {
        2 * self.inner(beta, alpha) / self.norm(alpha)
    }

    /// Maximal `(r, s)` with `beta - r alpha, ..., beta + s alpha` all roots.
    pub fn root_string(&self, alpha: usize, beta: usize) -> Result<(u32, u32)> {
        if alpha == beta || alpha == self.neg(beta) {
            return Err(Error::InvalidRoot(format!(
                "{} and {} are proportional",
                self.roots[alpha], self.roots[beta]
            )));
        }
        let na = self.neg(alpha);
        let mut r = 0;
        let mut cur = beta;
        while let Some(next) = self.add(cur, na) {
            r += 1;
            cur = next;
        }
        let mut s = 0;
        let mut cur = beta;
        while let Some(next) = self.add(cur, alpha) {
            s += 1;
            cur = next;
        }
        Ok((r, s))
    }

    /// Whether two positive roots commute. With `p`, also true when the
    /// `alpha`-string through `beta` begins at `(1 - p) alpha + beta`.
    pub fn commute(&self, alpha: usize, beta: usize, p: Option<u32>) -> bool {
        if self.add(alpha, beta).is_none() {
            return true;
        }
        match p {
            Some(p) => match self.root_string(alpha, beta) {
                Ok((r, _)) => r + 1 == p,
                Err(_) => false,
            },
            None => false,
        }
    }

    /// Positive roots involving at least one simple root from `s` (0-based indices).
    pub fn phi_rad(&self, s: &[usize]) -> RootMask {
        (0..self.n_pos)
            .filter(|&a| s.iter().any(|&i| self.roots[a].coeffs[i] != 0))
            .collect()
    }

    pub fn all_positive(&self) -> RootMask {
        RootMask::full(self.n_pos)
    }

    /// Image of root `a` under the simple reflection `s_i`.
    #[inline]
    pub fn reflect(&self, i: usize, a: usize) -> usize {
        self.refl[i][a] as usize
    }

    pub fn apply_weyl(&self, w: &WeylWord, a: usize) -> usize {
        // rightmost letter acts first
        w.letters.iter().rev().fold(a, |x, &i| self.reflect(i, x))
    }

    /// Image of a set of positive roots under `s_i`, or `None` if it leaves the positive roots.
    pub fn reflect_mask(&self, i: usize, m: RootMask) -> Option<RootMask> {
        let mut out = RootMask::EMPTY;
        for a in m.iter() {
            let b = self.reflect(i, a);
            if !self.is_positive(b) {
                return None;
            }
            out.insert(b);
        }
        Some(out)
    }

    /// Highest root of each irreducible component.
    pub fn highest_roots(&self) -> Vec<usize> {
        self.offsets
            .iter()
            .map(|&off| {
                (0..self.n_pos)
                    .filter(|&a| self.roots[a].coeffs[off] != 0)
                    .max_by_key(|&a| self.height(a))
                    .expect("nonempty component")
            })
            .collect()
    }

    pub fn highest_root(&self) -> usize {
        self.highest_roots()[0]
    }

    pub fn root_label(&self, a: usize) -> String {
        self.roots[a].to_string()
    }

    /// Longest root string length `r + s + 1` over all non-proportional pairs.
    pub fn longest_root_string(&self) -> u32 {
        let m = self.num_roots();
        let mut best = 1;
        for a in 0..m {
            for b in 0..m {
                if let Ok((r, s)) = self.root_string(a, b) {
                    best = best.max(r + s + 1);
                }
            }
        }
        best
    }
}

/// Positive roots by closure: `beta + alpha_i` is a root iff `s > 0` where `s = r - <beta, alpha_i^vee>`.
fn close_positive_roots(cartan: &[Vec<i64>]) -> Vec<Root> {
    let n = cartan.len();
    let mut known: HashMap<Vec<i32>, ()> = HashMap::new();
    let mut out: Vec<Root> = Vec::new();
    let mut queue: VecDeque<Vec<i32>> = VecDeque::new();
    for i in 0..n {
        let mut c = vec![0; n];
        c[i] = 1;
        known.insert(c.clone(), ());
        queue.push_back(c);
    }
    while let Some(beta) = queue.pop_front() {
        out.push(Root { coeffs: beta.clone() });
        for i in 0..n {
            let is_simple_i = beta.iter().enumerate().all(|(j, &c)| c == (j == i) as i32);
            if is_simple_i {
                continue;
            }
            let mut r = 0;
            let mut down = beta.clone();
            loop {
                down[i] -= 1;
                if down[i] >= 0 && known.contains_key(&down) {
                    r += 1;
                } else {
                    break;
                }
            }
            let pair: i64 = (0..n).map(|j| beta[j] as i64 * cartan[i][j]).sum();
            if r as i64 - pair > 0 {
                let mut up = beta.clone();
                up[i] += 1;
                if known.insert(up.clone(), ()).is_none() {
                    queue.push_back(up);
                }
            }
        }
    }
    // height first, then simple roots first within a height
    out.sort_by(|a, b| a.height().cmp(&b.height()).then(b.coeffs.cmp(&a.coeffs)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(s: &str) -> RootSystem {
        RootSystem::parse(s).unwrap()
    }

    #[test]
    fn classical_counts() {
        for (s, n) in [
            ("A1", 1),
            ("A2", 3),
            ("A5", 15),
            ("B2", 4),
            ("B4", 16),
            ("C3", 9),
            ("D4", 12),
            ("D6", 30),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
            ("F4", 24),
            ("G2", 6),
        ] {
            let r = sys(s);
            assert_eq!(r.num_positive(), n, "{s}");
            assert_eq!(r.label().unwrap().num_positive_roots(), n);
        }
    }

    #[test]
    fn simple_roots_first() {
        let r = sys("D5");
        for i in 0..5 {
            let mut c = vec![0; 5];
            c[i] = 1;
            assert_eq!(r.root(i).coeffs, c);
        }
        for a in 1..r.num_positive() {
            assert!(r.height(a - 1) <= r.height(a));
        }
    }

    #[test]
    fn a2_roots() {
        let r = sys("A2");
        let coeffs: Vec<_> = r.positive_roots().iter().map(|x| x.coeffs.clone()).collect();
        assert_eq!(coeffs, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn root_strings() {
        let g2 = sys("G2");
        assert_eq!(g2.root_string(0, 1).unwrap(), (0, 3));
        let a2 = sys("A2");
        assert_eq!(a2.root_string(0, 1).unwrap(), (0, 1));
        let b2 = sys("B2");
        assert_eq!(b2.root_string(1, 0).unwrap(), (0, 2));
        assert!(g2.root_string(0, 0).is_err());
        assert!(g2.root_string(0, g2.neg(0)).is_err());
    }

    #[test]
    fn commuting_basics() {
        let a2 = sys("A2");
        assert!(!a2.commute(0, 1, None));
        for name in ["A3", "B3", "C3", "D4", "G2", "F4", "E6"] {
            let r = sys(name);
            let h = r.highest_root();
            for b in 0..r.num_positive() {
                if b != h {
                    assert!(r.commute(h, b, None), "{name}");
                }
            }
        }
        let g2 = sys("G2");
        let a = g2.index_of(&[1, 0]).unwrap();
        let b = g2.index_of(&[2, 1]).unwrap();
        assert!(!g2.commute(a, b, None));
        assert!(g2.commute(a, b, Some(3)));
    }

    #[test]
    fn commute_is_symmetric() {
        for name in ["B3", "G2", "F4"] {
            let r = sys(name);
            for p in [None, Some(2), Some(3)] {
                for a in 0..r.num_positive() {
                    for b in 0..r.num_positive() {
                        if a != b {
                            assert_eq!(r.commute(a, b, p), r.commute(b, a, p));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn phi_rad_examples() {
        assert_eq!(sys("A3").phi_rad(&[1]).len(), 4);
        assert_eq!(sys("B2").phi_rad(&[0]).len(), 3);
        let f4 = sys("F4");
        assert_eq!(f4.phi_rad(&[0, 1, 2, 3]), f4.all_positive());
    }

    #[test]
    fn phi_rad_lattice() {
        let r = sys("D5");
        let idx = |m: u32| (0..5).filter(|i| m >> i & 1 == 1).collect::<Vec<_>>();
        for s in 0u32..32 {
            for t in 0u32..32 {
                let (ps, pt) = (r.phi_rad(&idx(s)), r.phi_rad(&idx(t)));
                assert_eq!(r.phi_rad(&idx(s | t)), ps.union(pt));
                assert!(r.phi_rad(&idx(s & t)).is_subset(ps.intersection(pt)));
            }
        }
    }

    #[test]
    fn phi_rad_intersection_is_only_a_containment() {
        let r = sys("A2");
        let both = r.phi_rad(&[0]).intersection(r.phi_rad(&[1]));
        assert_eq!(both, RootMask::singleton(2));
        assert!(r.phi_rad(&[]).is_empty());
    }

    #[test]
    fn reflections() {
        let g2 = sys("G2");
        let s1a2 = g2.reflect(0, 1);
        assert_eq!(g2.root(s1a2).coeffs, vec![3, 1]);
        for i in 0..2 {
            assert_eq!(g2.reflect(i, i), g2.neg(i));
            for a in 0..g2.num_roots() {
                assert_eq!(g2.reflect(i, g2.reflect(i, a)), a);
            }
        }
        assert_eq!(g2.apply_weyl(&WeylWord::identity(), 3), 3);
    }

    #[test]
    fn direct_sum_is_orthogonal() {
        let r = sys("A1+A1");
        assert_eq!(r.num_positive(), 2);
        assert!(r.commute(0, 1, None));
        assert_eq!(r.name(), "A1+A1");
        assert_eq!(r.highest_roots(), vec![0, 1]);
    }

    #[test]
    fn b2_matches_c2() {
        let b2 = sys("B2");
        let c2 = sys("C2");
        assert_eq!(b2.num_positive(), c2.num_positive());
        assert_eq!(b2.longest_root_string(), c2.longest_root_string());
        // swapping the labels identifies the Cartan matrices
        let cb = b2.cartan();
        let cc = c2.cartan();
        assert_eq!(cb[0][1], cc[1][0]);
        assert_eq!(cb[1][0], cc[0][1]);
    }
}
