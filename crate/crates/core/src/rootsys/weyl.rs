use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use super::{RootMask, RootSystem};
use crate::error::{Error, Result};

/// A word in the simple reflections, 0-based letters. The rightmost letter acts first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct WeylWord {
    pub letters: Vec<usize>,
}

impl WeylWord {
    pub fn identity() -> Self {
        WeylWord { letters: Vec::new() }
    }

    pub fn new(letters: Vec<usize>) -> Self {
        WeylWord { letters }
    }

    /// Parse 1-based letters, e.g. `[2, 1]` for `s2 s1`.
    pub fn from_one_based(letters: &[usize], rank: usize) -> Result<Self> {
        letters
            .iter()
            .map(|&l| {
                if (1..=rank).contains(&l) {
                    Ok(l - 1)
                } else {
                    Err(Error::InvalidRoot(format!("simple reflection index {l} out of 1..={rank}")))
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(WeylWord::new)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        WeylWord { letters: self.letters.iter().rev().copied().collect() }
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        WeylWord { letters }
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.letters.iter().map(|l| format!("s{}", l + 1)).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A Weyl group element as a permutation of root indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub perm: Vec<u32>,
    pub word: WeylWord,
}

impl WeylElement {
    pub fn apply(&self, a: usize) -> usize {
        self.perm[a] as usize
    }

    pub fn apply_mask(&self, m: RootMask, n_pos: usize) -> Option<RootMask> {
        let mut out = RootMask::EMPTY;
        for a in m.iter() {
            let b = self.perm[a] as usize;
            if b >= n_pos {
                return None;
            }
            out.insert(b);
        }
        Some(out)
    }
}

impl RootSystem {
    pub fn weyl_element(&self, w: &WeylWord) -> WeylElement {
        let perm = (0..self.num_roots()).map(|a| self.apply_weyl(w, a) as u32).collect();
        WeylElement { perm, word: w.clone() }
    }

    /// Two words are equal in W iff they agree on the simple roots.
    pub fn weyl_equal(&self, u: &WeylWord, v: &WeylWord) -> bool {
        (0..self.rank()).all(|i| self.apply_weyl(u, i) == self.apply_weyl(v, i))
    }

    /// Number of positive roots sent to negative roots.
    pub fn weyl_length(&self, w: &WeylWord) -> usize {
        (0..self.num_positive())
            .filter(|&a| !self.is_positive(self.apply_weyl(w, a)))
            .count()
    }

    /// Every element of W, each with a reduced word, in breadth-first order.
    /// Refuses when the group has more than `limit` elements.
    pub fn weyl_group(&self, limit: usize) -> Result<Vec<WeylElement>> {
        let m = self.num_roots();
        let rank = self.rank();
        let id = WeylElement { perm: (0..m as u32).collect(), word: WeylWord::identity() };
        let key = |e: &WeylElement| -> Vec<u32> { e.perm[..rank].to_vec() };
        let mut seen: HashMap<Vec<u32>, ()> = HashMap::new();
        seen.insert(key(&id), ());
        let mut out = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(e) = queue.pop_front() {
            for i in 0..rank {
                // s_i w
                let perm: Vec<u32> = e.perm.iter().map(|&x| self.reflect(i, x as usize) as u32).collect();
                let mut letters = vec![i];
                letters.extend_from_slice(&e.word.letters);
                let next = WeylElement { perm, word: WeylWord::new(letters) };
                if seen.insert(key(&next), ()).is_none() {
                    if out.len() >= limit {
                        return Err(Error::Unsupported(format!(
                            "Weyl group of {} exceeds {limit} elements",
                            self.name()
                        )));
                    }
                    out.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_orders() {
        for (s, n) in [("A1", 2), ("A3", 24), ("B3", 48), ("G2", 12), ("D4", 192), ("B4", 384), ("F4", 1152)] {
            let r = RootSystem::parse(s).unwrap();
            assert_eq!(r.weyl_group(2000).unwrap().len(), n, "{s}");
        }
        let e6 = RootSystem::parse("E6").unwrap();
        assert!(e6.weyl_group(2000).is_err());
    }

    #[test]
    fn bfs_words_are_reduced() {
        let r = RootSystem::parse("B3").unwrap();
        for e in r.weyl_group(2000).unwrap() {
            assert_eq!(r.weyl_length(&e.word), e.word.len());
            assert_eq!(r.weyl_element(&e.word).perm, e.perm);
        }
    }

    #[test]
    fn braid_relations() {
        let g2 = RootSystem::parse("G2").unwrap();
        let u = WeylWord::new(vec![0, 1, 0, 1, 0, 1]);
        let v = WeylWord::new(vec![1, 0, 1, 0, 1, 0]);
        assert!(g2.weyl_equal(&u, &v));
        assert!(!g2.weyl_equal(&u, &WeylWord::identity()));
        assert_eq!(g2.weyl_length(&u), 6);
    }

    #[test]
    fn word_parsing() {
        let w = WeylWord::from_one_based(&[2, 1], 2).unwrap();
        assert_eq!(w.letters, vec![1, 0]);
        assert_eq!(w.to_string(), "s2 s1");
        assert!(WeylWord::from_one_based(&[3], 2).is_err());
    }
}
