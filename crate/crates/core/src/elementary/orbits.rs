use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;
use serde_json::json;

use super::{Ambient, ElementarySubalgebra, Subspace};
use crate::chevalley::{GeneratorKind, GroupGenerator, Scope};
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::linalg;

/// Which elements of `G(F_q)` drive the orbit search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GeneratorSet {
    /// `x_{+-a_i}(t)` for `t` in an additive basis and `a_i^v(z)` for a generator `z` of `F_q^x`.
    Minimal,
    /// `x_{+-a_i}(t)` for all `t != 0` and `a_i^v(l)` for all `l != 0, 1`.
    Full,
    /// The Borel subgroup: `x_a(t)` for every positive root, `t` in an additive basis, and the torus.
    Borel,
}

pub fn group_generators(amb: &Ambient, which: GeneratorSet) -> Vec<GroupGenerator> {
    let alg = amb.alg();
    let f = amb.field();
    let sys = amb.system();
    let (ts, lambdas): (Vec<Elem>, Vec<Elem>) = match which {
        GeneratorSet::Full => (f.nonzero().collect(), f.nonzero().filter(|&l| l != 1).collect()),
        _ => (f.additive_basis(), vec![f.generator()].into_iter().filter(|&l| l != 1).collect()),
    };
    let roots: Vec<usize> = match which {
        GeneratorSet::Borel => (0..sys.num_positive()).collect(),
        _ => (0..sys.rank()).flat_map(|i| [i, sys.neg(i)]).collect(),
    };
    let mut out = Vec::new();
    for &a in &roots {
        for &t in &ts {
            out.push(alg.root_group(a, t));
        }
    }
    for i in 0..sys.rank() {
        for &l in &lambdas {
            out.push(alg.cocharacter(i, l).expect("nonzero parameter"));
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitEntry {
    /// Minimal echelon matrix among the input points in the orbit.
    pub representative: ElementarySubalgebra,
    /// Number of subspaces of `g` in the orbit.
    pub size: usize,
    /// Number of input points in the orbit.
    pub u_points: usize,
    pub normalizer_dim: usize,
    /// Whether every input point in the orbit has the same normalizer dimension.
    pub normalizer_constant: bool,
    pub normal_form_tag: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitReport {
    pub points: usize,
    pub orbits: Vec<OrbitEntry>,
}

impl OrbitReport {
    pub fn to_json(&self, amb: &Ambient, r: usize) -> serde_json::Value {
        let sys = amb.system();
        let orbits: Vec<_> = self
            .orbits
            .iter()
            .map(|o| {
                json!({
                    "representative_rows": amb.format_rows(&o.representative.rows, Scope::U),
                    "size": o.size,
                    "u_points": o.u_points,
                    "normalizer_dim": o.normalizer_dim,
                    "normal_form_tag": o.normal_form_tag,
                })
            })
            .collect();
        json!({
            "type": sys.name(),
            "rank": sys.rank(),
            "p": amb.field().p(),
            "r": r,
            "point_count": self.points,
            "orbits": orbits,
        })
    }
}

fn act(amb: &Ambient, g: &GroupGenerator, s: &Subspace) -> Subspace {
    let rows = s.rows.iter().map(|r| g.apply_coeffs(amb.alg(), r)).collect();
    amb.echelon(Scope::G, rows)
}

/// Partition `points` into orbits of the group generated by `gens`, searching in `g`.
/// Every subspace of `u` met on the way must be one of the points.
pub fn orbit_decompose(
    amb: &Ambient,
    points: &[ElementarySubalgebra],
    gens: &[GroupGenerator],
    named: &[(String, ElementarySubalgebra)],
) -> Result<OrbitReport> {
    let index: HashMap<Vec<Elem>, usize> = points.iter().enumerate().map(|(k, e)| (amb.to_g(e).key(), k)).collect();
    let mut orbit_of: Vec<Option<usize>> = vec![None; points.len()];
    let mut orbits = Vec::new();
    let named_keys: Vec<(String, Vec<Elem>)> = named.iter().map(|(n, e)| (n.clone(), amb.to_g(e).key())).collect();
    let np = amb.system().num_positive();
    for start in 0..points.len() {
        if orbit_of[start].is_some() {
            continue;
        }
        let id = orbits.len();
        let first = amb.to_g(&points[start]);
        let mut seen: HashSet<Vec<Elem>> = HashSet::from([first.key()]);
        let mut queue = VecDeque::from([first]);
        let mut members = Vec::new();
        let mut tag = None;
        while let Some(s) = queue.pop_front() {
            let key = s.key();
            if let Some((name, _)) = named_keys.iter().find(|(_, k)| *k == key) {
                tag = Some(name.clone());
            }
            if s.pivots.iter().all(|&c| c < np) && s.rows.iter().all(|r| r[np..].iter().all(|&c| c == 0)) {
                match index.get(&key) {
                    Some(&k) => {
                        orbit_of[k] = Some(id);
                        members.push(k);
                    }
                    None => {
                        return Err(Error::NotClosed(format!(
                            "reached {:?}, which is not among the points",
                            amb.format_rows(&s.rows[..], Scope::G)
                        )))
                    }
                }
            }
            for g in gens {
                let t = act(amb, g, &s);
                if seen.insert(t.key()) {
                    queue.push_back(t);
                }
            }
        }
        members.sort();
        let dims: Vec<usize> = members.iter().map(|&k| amb.normalizer_dim(&amb.to_g(&points[k]))).collect();
        orbits.push(OrbitEntry {
            representative: points[members[0]].clone(),
            size: seen.len(),
            u_points: members.len(),
            normalizer_dim: dims[0],
            normalizer_constant: dims.iter().all(|&d| d == dims[0]),
            normal_form_tag: tag,
        });
    }
    Ok(OrbitReport { points: points.len(), orbits })
}

/// `G(F_q)`-classes of `points`, which must be all of `E(u)(F_q)` in one dimension.
/// Uses `G = B N B`: two points are conjugate iff a chain of Borel moves and
/// Weyl representatives that keep the point inside `u` joins them.
/// Returns a class id per point, ids ordered by first member.
pub fn bruhat_classes(amb: &Ambient, points: &[ElementarySubalgebra], weyl_limit: usize) -> Result<Vec<usize>> {
    let sys = amb.system();
    let alg = amb.alg();
    let f = amb.field();
    let index: HashMap<&[Vec<Elem>], usize> = points.iter().enumerate().map(|(k, e)| (&e.rows[..], k)).collect();
    let lookup = |e: &ElementarySubalgebra| -> Result<usize> {
        index.get(&e.rows[..]).copied().ok_or_else(|| {
            Error::NotClosed(format!("{:?} is not among the points", amb.format_rows(&e.rows, Scope::U)))
        })
    };
    let mut parent: Vec<usize> = (0..points.len()).collect();
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
    let union = |parent: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    };
    let image = |g: &GroupGenerator, e: &ElementarySubalgebra| -> Option<ElementarySubalgebra> {
        let s = amb.to_g(e);
        let rows = s.rows.iter().map(|r| g.apply_coeffs(alg, r)).collect();
        amb.to_u(&amb.echelon(Scope::G, rows))
    };
    for g in group_generators(amb, GeneratorSet::Borel) {
        for (k, e) in points.iter().enumerate() {
            let t = image(&g, e).expect("the Borel subgroup normalizes u");
            let j = lookup(&t)?;
            union(&mut parent, k, j);
        }
    }
    let d = alg.dim(Scope::G);
    let weyl = sys.weyl_group(weyl_limit)?;
    let reps: Vec<GroupGenerator> = (0..sys.rank()).map(|i| alg.weyl_rep(i)).collect();
    for w in weyl.iter().filter(|w| !w.word.is_empty()) {
        let mut m = linalg::identity(d);
        for &i in &w.word.letters {
            m = linalg::mat_mul(f, &m, &reps[i].matrix);
        }
        let kind = GeneratorKind::Product(w.word.letters.iter().map(|&i| GeneratorKind::WeylRep { i }).collect());
        let g = GroupGenerator { kind, matrix: m };
        for (k, e) in points.iter().enumerate() {
            if let Some(t) = image(&g, e) {
                let j = lookup(&t)?;
                union(&mut parent, k, j);
            }
        }
    }
    let mut ids: HashMap<usize, usize> = HashMap::new();
    Ok((0..points.len())
        .map(|k| {
            let r = find(&mut parent, k);
            let next = ids.len();
            *ids.entry(r).or_insert(next)
        })
        .collect())
}
