//! Conjugacy classes of maximal elementary abelian p-subgroups of G(F_q) and
//! the matching component data of Spec H*(G(F_q), k).

mod tables;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::commuting::{b_family_sets, enumerate_max_commuting, g2_sets, Predicate};
use crate::elementary::{brute_force_eu, bruhat_classes, Ambient, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::rootsys::{Family, RootMask, RootSystem, TypeLabel};

pub use tables::{
    group_table, maxsets_table, primes_table, spectrum_table, stabilizers_table, table_row, table_types, Table,
};

/// A class count, or a lower bound where only one is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassCount {
    Exact(usize),
    AtLeast(usize),
}

impl ClassCount {
    pub fn value(self) -> usize {
        match self {
            ClassCount::Exact(n) | ClassCount::AtLeast(n) => n,
        }
    }

    fn times(self, o: ClassCount) -> ClassCount {
        match (self, o) {
            (ClassCount::Exact(a), ClassCount::Exact(b)) => ClassCount::Exact(a * b),
            _ => ClassCount::AtLeast(self.value() * o.value()),
        }
    }
}

impl fmt::Display for ClassCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassCount::Exact(n) => write!(f, "{n}"),
            ClassCount::AtLeast(n) => write!(f, "≥{n}"),
        }
    }
}

impl Serialize for ClassCount {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ClassCount::Exact(n) => s.serialize_u64(*n as u64),
            ClassCount::AtLeast(_) => s.serialize_str(&self.to_string()),
        }
    }
}

/// One class representative: a maximal commuting set, or a family without a root-set description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Representative {
    pub name: String,
    /// Root coefficient vectors; empty for families such as the A2 mixed line.
    pub roots: Vec<Vec<i32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub type_label: String,
    pub rank: usize,
    pub p: u32,
    pub r: u32,
    pub class_count: ClassCount,
    /// Subgroups have order q^order_exponent.
    pub order_exponent: usize,
    pub representatives: Vec<Representative>,
}

impl ClassReport {
    pub fn order_expression(&self) -> String {
        format!("q^{}", self.order_exponent)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumReport {
    pub type_label: String,
    pub rank: usize,
    pub p: u32,
    pub r: u32,
    pub component_count: ClassCount,
    /// m(Φ); the printed dimension is p^{m r - 1}.
    pub exponent_coefficient: usize,
    pub dimension_expression: String,
    /// r m(Φ) - 1 at this r.
    pub dimension_exponent: usize,
    /// Maximal elementary abelian rank r m(Φ).
    pub elementary_rank: usize,
}

/// Name of a maximal commuting set: `Φ⟨i⟩` for a radical, `S_t` / `S*_t` in type B, `C_k` in G2.
pub fn set_name(sys: &RootSystem, set: RootMask) -> Option<String> {
    if let Some(i) = (0..sys.rank()).find(|&i| sys.phi_rad(&[i]) == set) {
        return Some(format!("Φ⟨{}⟩", i + 1));
    }
    if let Ok(c) = g2_sets(sys) {
        return c.iter().position(|&s| s == set).map(|k| format!("C{}", k + 1));
    }
    let ((t, starred), _) = b_family_sets(sys).ok()?.into_iter().find(|&(_, s)| s == set)?;
    Some(if starred { format!("S*{t}") } else { format!("S{t}") })
}

fn representative(sys: &RootSystem, set: RootMask) -> Representative {
    let name = set_name(sys, set).unwrap_or_else(|| "I".into());
    Representative { name, roots: set.iter().map(|a| sys.root(a).coeffs.clone()).collect() }
}

fn family(name: &str) -> Representative {
    Representative { name: name.into(), roots: Vec::new() }
}

struct Simple {
    count: ClassCount,
    m: usize,
    reps: Vec<Representative>,
}

/// Ideal-containing components of the partial W-action, plus the tabulated extra families.
fn simple_classes(label: TypeLabel) -> Simple {
    let sys = RootSystem::new(label);
    let cat = enumerate_max_commuting(&sys, Predicate::Plain);
    let mut seen = BTreeSet::new();
    let mut reps = Vec::new();
    for (k, &s) in cat.sets.iter().enumerate() {
        if cat.ideals[k] && seen.insert(cat.orbit[k]) {
            reps.push(representative(&sys, s));
        }
    }
    let mut count = ClassCount::Exact(reps.len());
    match (label.family, label.rank) {
        (Family::A, 2) => {
            reps.push(family("φ(F_q(x_α1 + x_α2)) U_α1+α2"));
            count = ClassCount::Exact(reps.len());
        }
        (Family::G, 2) => {
            // the C3 component and the non-Chevalley family L
            let c3 = g2_sets(&sys).expect("G2")[2];
            reps.push(representative(&sys, c3));
            reps.push(family("L"));
            count = ClassCount::AtLeast(reps.len());
        }
        _ => {}
    }
    Simple { count, m: cat.m, reps }
}

fn check_prime(sys: &RootSystem, p: u32, r: u32) -> Result<()> {
    FiniteField::new(p, 1)?;
    if r == 0 {
        return Err(Error::InvalidField("r must be positive".into()));
    }
    for &l in sys.components() {
        let prof = RootSystem::new(l).prime_profile()?;
        if !prof.is_good(p) {
            return Err(Error::BadPrime(format!("{p} is bad for {l}")));
        }
    }
    Ok(())
}

/// Table 4 data for `sys` over F_{p^r}. Products multiply counts and add exponents.
pub fn class_report(sys: &RootSystem, p: u32, r: u32) -> Result<ClassReport> {
    check_prime(sys, p, r)?;
    let mut count = ClassCount::Exact(1);
    let mut m = 0;
    let mut reps = vec![Vec::<Representative>::new()];
    let many = sys.components().len() > 1;
    for (&l, &off) in sys.components().iter().zip(sys.component_offsets()) {
        let s = simple_classes(l);
        count = count.times(s.count);
        m += s.m;
        reps = reps
            .iter()
            .flat_map(|prefix| {
                s.reps.iter().map(move |rep| {
                    let mut v = prefix.clone();
                    let mut rep = rep.clone();
                    if many {
                        rep.name = format!("{l}: {}", rep.name);
                    }
                    for root in &mut rep.roots {
                        let mut full = vec![0; sys.rank()];
                        full[off..off + root.len()].copy_from_slice(root);
                        *root = full;
                    }
                    v.push(rep);
                    v
                })
            })
            .collect();
    }
    let representatives = reps
        .into_iter()
        .map(|parts| Representative {
            name: parts.iter().map(|p| p.name.as_str()).collect::<Vec<_>>().join(" × "),
            roots: parts.into_iter().flat_map(|p| p.roots).collect(),
        })
        .collect();
    Ok(ClassReport {
        type_label: sys.name(),
        rank: sys.rank(),
        p,
        r,
        class_count: count,
        order_exponent: m,
        representatives,
    })
}

/// Table 5 data: as many components as classes, dimension printed as p^{m r - 1}.
pub fn spectrum_report(sys: &RootSystem, p: u32, r: u32) -> Result<SpectrumReport> {
    let c = class_report(sys, p, r)?;
    let m = c.order_exponent;
    Ok(SpectrumReport {
        type_label: c.type_label,
        rank: c.rank,
        p,
        r,
        component_count: c.class_count,
        exponent_coefficient: m,
        dimension_expression: dimension_expression(m),
        dimension_exponent: m * r as usize - 1,
        elementary_rank: m * r as usize,
    })
}

pub(crate) fn dimension_expression(m: usize) -> String {
    if m == 1 {
        "p^{r-1}".into()
    } else {
        format!("p^{{{m}r-1}}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct G2Witness {
    pub p: u32,
    pub r: u32,
    /// Points of E(u) in dimension 3.
    pub points: usize,
    pub classes: usize,
    /// Normalizer dimension of one member of each class, sorted.
    pub normalizer_dims: Vec<usize>,
}

/// G(F_q)-classes of 3-dimensional elementary subalgebras of u for G2, q = 5 or 25.
pub fn g2_witness(p: u32, r: u32) -> Result<G2Witness> {
    if p != 5 || !(1..=2).contains(&r) {
        return Err(Error::Unsupported(format!("G2 witness runs for p = 5, r in {{1, 2}}; got ({p}, {r})")));
    }
    let sys = RootSystem::parse("G2")?;
    let field = FiniteField::new(p, r)?;
    let amb = Ambient::new(&sys, &field);
    let points = brute_force_eu(&amb, 3, DEFAULT_BUDGET)?;
    let class = bruhat_classes(&amb, &points, 100)?;
    let classes = class.iter().copied().max().map_or(0, |k| k + 1);
    let mut normalizer_dims: Vec<usize> = (0..classes)
        .map(|c| {
            let k = class.iter().position(|&x| x == c).unwrap();
            amb.normalizer_dim(&amb.to_g(&points[k]))
        })
        .collect();
    normalizer_dims.sort_unstable();
    Ok(G2Witness { p, r, points: points.len(), classes, normalizer_dims })
}

pub fn g2_class_count_witness(p: u32, r: u32) -> Result<usize> {
    Ok(g2_witness(p, r)?.classes)
}

#[cfg(test)]
mod tests;
