use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::{Ambient, ElementarySubalgebra};
use crate::chevalley::{GroupGenerator, Scope};
use crate::commuting::{b_family_sets, g2_sets};
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::rootsys::{EpsilonView, Family, RootMask};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Recipe {
    /// `B_n`, leading terms `S_t` or `S*_t`; target `lie(S_1)`.
    BFamily,
    /// `G2` in good characteristic; targets `lie(C3)`, `lie(C5)`, `L`.
    G2,
    /// `G2` with `p = 3`; target `lie(R1)`.
    G2Char3,
}

#[derive(Debug, Clone)]
pub struct Reduction {
    /// Applied first to last.
    pub word: Vec<GroupGenerator>,
    pub result: ElementarySubalgebra,
    pub target: String,
}

/// `lie(C3)`, `lie(C5)` and `L = <x(a2) + x(3a1+a2), x(2a1+a2), x(3a1+2a2)>`.
pub fn g2_normal_forms(amb: &Ambient) -> Result<Vec<(String, ElementarySubalgebra)>> {
    let sys = amb.system();
    let c = g2_sets(sys)?;
    let r = |v: [i32; 2]| sys.index_of(&v).unwrap();
    let n = sys.num_positive();
    let mut first = vec![0; n];
    first[r([0, 1])] = 1;
    first[r([3, 1])] = 1;
    let mut rows = vec![first];
    for v in [[2, 1], [3, 2]] {
        let mut row = vec![0; n];
        row[r(v)] = 1;
        rows.push(row);
    }
    Ok(vec![
        ("lie(C3)".into(), amb.lie(c[2])?),
        ("lie(C5)".into(), amb.lie(c[4])?),
        ("L".into(), amb.elementary(rows)?),
    ])
}

fn g2_char3_sets(amb: &Ambient) -> [RootMask; 3] {
    let sys = amb.system();
    let m = |vs: &[[i32; 2]]| vs.iter().map(|v| sys.index_of(v).unwrap()).collect::<RootMask>();
    [
        m(&[[1, 1], [2, 1], [3, 1], [3, 2]]),
        m(&[[1, 0], [2, 1], [3, 1], [3, 2]]),
        m(&[[0, 1], [1, 1], [2, 1], [3, 2]]),
    ]
}

/// Conjugate `e` to a normal form; the returned word is replayed and checked.
pub fn conjugation_reduce(amb: &Ambient, e: &ElementarySubalgebra, recipe: Recipe) -> Result<Reduction> {
    let sys = amb.system();
    let family = sys.label().map(|l| l.family);
    let targets: Vec<(String, ElementarySubalgebra)> = match (recipe, family) {
        (Recipe::BFamily, Some(Family::B)) => {
            let s1 = b_family_sets(sys)?[0].1;
            vec![("lie(S1)".into(), amb.lie(s1)?)]
        }
        (Recipe::G2, Some(Family::G)) => g2_normal_forms(amb)?,
        (Recipe::G2Char3, Some(Family::G)) if amb.field().p() == 3 => {
            vec![("lie(R1)".into(), amb.lie(g2_char3_sets(amb)[0])?)]
        }
        _ => return Err(Error::OutsideRecipe(format!("{recipe:?} does not apply to {} over F_{}", sys.name(), amb.field().order()))),
    };
    let mut tr = Tracker { amb, e: e.clone(), word: Vec::new() };
    if !targets.iter().any(|(_, t)| *t == tr.e) {
        match recipe {
            Recipe::BFamily => b_family(&mut tr)?,
            Recipe::G2 => g2(&mut tr, &targets, 0)?,
            Recipe::G2Char3 => g2_char3(&mut tr)?,
        }
    }
    let (name, _) = targets
        .iter()
        .find(|(_, t)| *t == tr.e)
        .ok_or_else(|| Error::OutsideRecipe("recipe ended away from the normal forms".into()))?;
    // replay
    let mut rows = amb.to_g(e).rows;
    for g in &tr.word {
        rows = rows.iter().map(|r| g.apply_coeffs(amb.alg(), r)).collect();
    }
    let replayed = amb.to_u(&amb.echelon(Scope::G, rows));
    assert_eq!(replayed.as_ref(), Some(&tr.e), "replayed word disagrees with the tracked subalgebra");
    Ok(Reduction { word: tr.word, result: tr.e, target: name.clone() })
}

struct Tracker<'a> {
    amb: &'a Ambient,
    e: ElementarySubalgebra,
    word: Vec<GroupGenerator>,
}

impl Tracker<'_> {
    fn image(&self, g: &GroupGenerator, e: &ElementarySubalgebra) -> Option<ElementarySubalgebra> {
        let rows = self.amb.to_g(e).rows.iter().map(|r| g.apply_coeffs(self.amb.alg(), r)).collect();
        self.amb.to_u(&self.amb.echelon(Scope::G, rows))
    }

    fn apply(&mut self, g: GroupGenerator) -> Result<()> {
        self.e = self
            .image(&g, &self.e)
            .ok_or_else(|| Error::OutsideRecipe("conjugate leaves u".into()))?;
        self.word.push(g);
        Ok(())
    }

    fn coef(&self, lead: usize, b: usize) -> Elem {
        self.e.row_with_lead(lead).map_or(0, |r| r[b])
    }

    fn root_diff(&self, b: usize, a: usize) -> Option<usize> {
        let sys = self.amb.system();
        let d: Vec<i32> = sys.root(b).coeffs.iter().zip(&sys.root(a).coeffs).map(|(x, y)| x - y).collect();
        sys.index_of(&d).filter(|&g| sys.is_positive(g))
    }

    /// Clear the `x_b` term of the row led by `lead` with a root element `x_{b - lead}(c)`.
    fn kill(&mut self, lead: usize, b: usize) -> Result<()> {
        if self.coef(lead, b) == 0 {
            return Ok(());
        }
        let sys = self.amb.system();
        let gamma = self.root_diff(b, lead).ok_or_else(|| {
            Error::OutsideRecipe(format!("{} - {} is not a positive root", sys.root_label(b), sys.root_label(lead)))
        })?;
        let lt = self.e.lt();
        for c in self.amb.field().nonzero() {
            let g = self.amb.alg().root_group(gamma, c);
            if let Some(t) = self.image(&g, &self.e) {
                if t.lt() == lt && t.row_with_lead(lead).is_some_and(|r| r[b] == 0) {
                    self.e = t;
                    self.word.push(g);
                    return Ok(());
                }
            }
        }
        Err(Error::OutsideRecipe(format!("cannot clear x({}) below x({})", sys.root_label(b), sys.root_label(lead))))
    }

    /// From `lie(R)` to `lie(target)` through Weyl representatives that stay in `u`.
    fn weyl_to(&mut self, target: RootMask) -> Result<()> {
        if !self.e.is_lie_of_lt() {
            return Err(Error::OutsideRecipe("not spanned by root vectors".into()));
        }
        let sys = self.amb.system();
        let start = self.e.lt();
        let mut prev: HashMap<RootMask, (RootMask, usize)> = HashMap::new();
        let mut queue = VecDeque::from([start]);
        prev.insert(start, (start, usize::MAX));
        while let Some(s) = queue.pop_front() {
            if s == target {
                break;
            }
            for i in 0..sys.rank() {
                if let Some(t) = sys.reflect_mask(i, s) {
                    if let std::collections::hash_map::Entry::Vacant(v) = prev.entry(t) {
                        v.insert((s, i));
                        queue.push_back(t);
                    }
                }
            }
        }
        if !prev.contains_key(&target) {
            return Err(Error::OutsideRecipe("target set is not reachable by simple reflections".into()));
        }
        let mut letters = Vec::new();
        let mut cur = target;
        while cur != start {
            let (p, i) = prev[&cur];
            letters.push(i);
            cur = p;
        }
        for &i in letters.iter().rev() {
            self.apply(self.amb.alg().weyl_rep(i))?;
        }
        Ok(())
    }

    fn pure_rows(&self, leads: RootMask) -> bool {
        self.e
            .leads
            .iter()
            .zip(&self.e.rows)
            .filter(|(l, _)| leads.contains(**l))
            .all(|(_, r)| r.iter().filter(|&&c| c != 0).count() == 1)
    }
}

/// `span{x_b : b in base} + <v>` with `v` supported on `allowed`.
fn has_shape(tr: &Tracker, base: RootMask, allowed: RootMask) -> bool {
    let lt = tr.e.lt();
    base.is_subset(lt)
        && lt.difference(base).len() == 1
        && tr.pure_rows(base)
        && tr.e.rows.iter().all(|r| {
            let support: RootMask = r.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, _)| i).collect();
            support.len() == 1 || support.is_subset(allowed)
        })
}

fn b_family(tr: &mut Tracker) -> Result<()> {
    let sys = tr.amb.system();
    let n = sys.rank();
    let eps = EpsilonView::new(sys)?;
    let lt = tr.e.lt();
    let family = b_family_sets(sys)?;
    let &((t, starred), _) = family
        .iter()
        .find(|(_, s)| *s == lt)
        .ok_or_else(|| Error::OutsideRecipe("leading terms are not S_t or S*_t".into()))?;
    let mut r1 = RootMask::EMPTY;
    let mut r2 = RootMask::EMPTY;
    let mut r3 = RootMask::EMPTY;
    for i in 1..n {
        for j in i + 1..n {
            r1.insert(eps.pm(i, 1, j));
        }
        r2.insert(eps.pm(i, 1, n));
        r3.insert(eps.pm(i, -1, n));
    }
    let shorts: RootMask = (1..=n).map(|i| eps.e(i)).collect();
    if starred {
        tr.kill(eps.e(t), eps.pm(t, 1, n))?;
        if !has_shape(tr, r1.union(r3), shorts.difference(RootMask::singleton(eps.e(n)))) {
            return Err(Error::OutsideRecipe("not of the form C(a)".into()));
        }
        tr.apply(tr.amb.alg().weyl_rep(n - 1))?;
    }
    if !has_shape(tr, r1.union(r2), shorts) {
        return Err(Error::OutsideRecipe("not of the form B(a)".into()));
    }
    // the short-root row is led by e_t with t its last nonzero index; move e_t to e_n
    let t = (1..=n).rev().find(|&i| tr.e.lt().contains(eps.e(i))).unwrap();
    for i in t..n {
        tr.apply(tr.amb.alg().weyl_rep(i - 1))?;
    }
    for i in 1..n {
        tr.kill(eps.e(n), eps.e(i))?;
    }
    tr.weyl_to(family[0].1)
}

fn g2(tr: &mut Tracker, targets: &[(String, ElementarySubalgebra)], depth: usize) -> Result<()> {
    if targets.iter().any(|(_, t)| *t == tr.e) {
        return Ok(());
    }
    if depth > 4 {
        return Err(Error::OutsideRecipe("G2 reduction did not terminate".into()));
    }
    let sys = tr.amb.system();
    let r = |v: [i32; 2]| sys.index_of(&v).unwrap();
    let (a1, a2, a12, a2112) = (r([1, 0]), r([0, 1]), r([1, 1]), r([2, 1]));
    let c = g2_sets(sys)?;
    let lt = tr.e.lt();
    let case = c
        .iter()
        .position(|&s| s == lt)
        .ok_or_else(|| Error::OutsideRecipe("leading terms are not a maximal commuting set".into()))?;
    match case {
        0 => {
            tr.kill(a1, a12)?;
            tr.kill(a1, a2112)?;
            tr.weyl_to(c[2])
        }
        1 => {
            tr.kill(a12, a2112)?;
            tr.weyl_to(c[2])
        }
        2 => {
            tr.kill(a2, a12)?;
            if tr.e.is_lie_of_lt() {
                return Ok(());
            }
            let l = &targets[2].1;
            for lambda in tr.amb.field().nonzero() {
                let g = tr.amb.alg().cocharacter(1, lambda)?;
                if tr.image(&g, &tr.e).as_ref() == Some(l) {
                    return tr.apply(g);
                }
            }
            Err(Error::OutsideRecipe("coefficient of x(3a1+a2) has no cube root".into()))
        }
        3 => {
            tr.kill(a12, a2112)?;
            if tr.coef(a2, a2112) == 0 {
                tr.apply(tr.amb.alg().weyl_rep(0))?;
                return g2(tr, targets, depth + 1);
            }
            // x_{a1}(u) s1 x_{a1}(v) moves a12 out of the leading terms
            let alg = tr.amb.alg();
            let s1 = alg.weyl_rep(0);
            let elems: Vec<Elem> = tr.amb.field().elements().collect();
            for &u in &elems {
                for &v in &elems {
                    let word = [alg.root_group(a1, v), s1.clone(), alg.root_group(a1, u)];
                    let mut cur = Some(tr.e.clone());
                    for g in &word {
                        cur = cur.and_then(|e| tr.image(g, &e));
                    }
                    if cur.is_some_and(|e| e.lt() != c[3]) {
                        for g in word {
                            tr.apply(g)?;
                        }
                        return g2(tr, targets, depth + 1);
                    }
                }
            }
            Err(Error::OutsideRecipe("no u, v in the field move the leading terms off C4".into()))
        }
        _ => Err(Error::OutsideRecipe("leading terms C5 but not lie(C5)".into())),
    }
}

fn g2_char3(tr: &mut Tracker) -> Result<()> {
    let sys = tr.amb.system();
    let r = |v: [i32; 2]| sys.index_of(&v).unwrap();
    let [r1, r2, r3] = g2_char3_sets(tr.amb);
    let lt = tr.e.lt();
    if lt == r2 {
        tr.kill(r([1, 0]), r([1, 1]))?;
    } else if lt == r3 && !tr.e.is_lie_of_lt() {
        // the x(3a1+a2) term moves by a cube under x_{a1}(s)
        let found = tr.amb.field().nonzero().find_map(|s| {
            let g = tr.amb.alg().root_group(r([1, 0]), s);
            tr.image(&g, &tr.e).filter(|t| t.lt() == r3 && t.is_lie_of_lt()).map(|_| g)
        });
        tr.apply(found.ok_or_else(|| Error::OutsideRecipe("no x(a1) element clears the R3 row".into()))?)?;
    } else if lt != r1 && lt != r3 {
        return Err(Error::OutsideRecipe("leading terms are not R1, R2 or R3".into()));
    }
    tr.weyl_to(r1)
}
