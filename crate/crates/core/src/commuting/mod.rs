//! Maximal sets of commuting positive roots, ideals, Weyl stabilizers and partial orbits.

mod appendix;
mod clique;

use std::collections::HashMap;

use serde::Serialize;
use serde_json::json;

use crate::rootsys::{RootMask, RootSystem};

pub use appendix::{appendix_oracle, b_family_sets, g2_sets};
pub use clique::maximum_cliques;

/// Which pairs of positive roots count as commuting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Predicate {
    Plain,
    /// Also allow pairs whose root string is exactly `p` long from `beta`.
    PCommuting(u32),
}

impl Predicate {
    pub fn prime(self) -> Option<u32> {
        match self {
            Predicate::Plain => None,
            Predicate::PCommuting(p) => Some(p),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MaxSetCatalog {
    pub system: String,
    pub predicate: Predicate,
    pub m: usize,
    pub sets: Vec<RootMask>,
    pub ideals: Vec<bool>,
    /// Component of each set under the partial W-action; components are numbered by minimal member.
    pub orbit: Vec<usize>,
}

impl MaxSetCatalog {
    pub fn count(&self) -> usize {
        self.sets.len()
    }

    pub fn num_orbits(&self) -> usize {
        self.orbit.iter().copied().max().map_or(0, |k| k + 1)
    }

    pub fn ideal_sets(&self) -> Vec<RootMask> {
        self.sets.iter().zip(&self.ideals).filter(|(_, &i)| i).map(|(s, _)| *s).collect()
    }

    pub fn to_json(&self, sys: &RootSystem) -> serde_json::Value {
        let sets: Vec<_> = self
            .sets
            .iter()
            .enumerate()
            .map(|(k, &s)| {
                let roots: Vec<&[i32]> = s.iter().map(|a| &sys.root(a).coeffs[..]).collect();
                let stab: Vec<usize> = stabilizer_generators(sys, s).iter().map(|i| i + 1).collect();
                json!({
                    "roots": roots,
                    "ideal": self.ideals[k],
                    "orbit": self.orbit[k],
                    "stabilizer_generators": stab,
                })
            })
            .collect();
        json!({
            "system": self.system,
            "predicate": match self.predicate {
                Predicate::Plain => "plain".to_string(),
                Predicate::PCommuting(p) => format!("p-commuting (p = {p})"),
            },
            "m": self.m,
            "count": self.count(),
            "orbits": self.num_orbits(),
            "sets": sets,
        })
    }
}

/// Neighbour masks of the commutation graph on the positive roots.
pub fn commutation_graph(sys: &RootSystem, pred: Predicate) -> Vec<RootMask> {
    let n = sys.num_positive();
    (0..n)
        .map(|a| (0..n).filter(|&b| b != a && sys.commute(a, b, pred.prime())).collect())
        .collect()
}

pub fn is_commuting(sys: &RootSystem, set: RootMask, pred: Predicate) -> bool {
    set.iter().all(|a| set.iter().all(|b| a == b || sys.commute(a, b, pred.prime())))
}

/// No further positive root can be added.
pub fn is_inclusion_maximal(sys: &RootSystem, set: RootMask, pred: Predicate) -> bool {
    sys.all_positive()
        .difference(set)
        .iter()
        .all(|c| set.iter().any(|a| !sys.commute(a, c, pred.prime())))
}

pub fn enumerate_max_commuting(sys: &RootSystem, pred: Predicate) -> MaxSetCatalog {
    let adj = commutation_graph(sys, pred);
    let (m, sets) = maximum_cliques(&adj);
    let ideals = sets.iter().map(|&s| is_ideal(sys, s)).collect();
    let orbit = partial_weyl_orbits(sys, &sets);
    MaxSetCatalog { system: sys.name(), predicate: pred, m, sets, ideals, orbit }
}

/// `a + b` lies in `set` whenever `a` is positive, `b` is in `set` and the sum is a root.
pub fn is_ideal(sys: &RootSystem, set: RootMask) -> bool {
    (0..sys.num_positive()).all(|a| set.iter().all(|b| sys.add(a, b).is_none_or(|c| set.contains(c))))
}

/// Simple reflections mapping `set` onto itself (0-based).
pub fn stabilizer_generators(sys: &RootSystem, set: RootMask) -> Vec<usize> {
    (0..sys.rank()).filter(|&i| sys.reflect_mask(i, set) == Some(set)).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct StabilizerReport {
    pub generators: Vec<usize>,
    /// Whether all of W was enumerated.
    pub exhaustive: bool,
    /// With `exhaustive`, whether Stab_W(R) is exactly the parabolic subgroup on `generators`.
    pub equals_parabolic: bool,
    pub order: Option<usize>,
}

/// Largest Weyl group enumerated element by element.
pub const EXHAUSTIVE_WEYL_LIMIT: usize = 2000;

pub fn weyl_stabilizer(sys: &RootSystem, set: RootMask) -> StabilizerReport {
    let generators = stabilizer_generators(sys, set);
    let n = sys.num_positive();
    match sys.weyl_group(EXHAUSTIVE_WEYL_LIMIT) {
        Ok(group) => {
            let stab: Vec<_> = group.iter().filter(|w| w.apply_mask(set, n) == Some(set)).collect();
            // BFS words are reduced, and w lies in W_I iff a reduced word uses only letters of I
            let inside = stab.iter().all(|w| w.word.letters.iter().all(|l| generators.contains(l)));
            StabilizerReport { generators, exhaustive: true, equals_parabolic: inside, order: Some(stab.len()) }
        }
        Err(_) => StabilizerReport { generators, exhaustive: false, equals_parabolic: false, order: None },
    }
}

/// Components of `sets` under moves `R -> s_i(R)` that keep `R` positive.
/// Returns a component id per set, ids ordered by minimal member.
pub fn partial_weyl_orbits(sys: &RootSystem, sets: &[RootMask]) -> Vec<usize> {
    let index: HashMap<u128, usize> = sets.iter().enumerate().map(|(k, s)| (s.0, k)).collect();
    let mut parent: Vec<usize> = (0..sets.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    for (k, &s) in sets.iter().enumerate() {
        for i in 0..sys.rank() {
            let Some(t) = sys.reflect_mask(i, s) else { continue };
            if let Some(&j) = index.get(&t.0) {
                let (a, b) = (find(&mut parent, k), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut ids: HashMap<usize, usize> = HashMap::new();
    (0..sets.len())
        .map(|k| {
            let r = find(&mut parent, k);
            let next = ids.len();
            *ids.entry(r).or_insert(next)
        })
        .collect()
}
