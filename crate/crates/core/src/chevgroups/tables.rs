use serde_json::{json, Map, Value};

use super::{class_report, dimension_expression, set_name, spectrum_report};
use crate::commuting::{enumerate_max_commuting, weyl_stabilizer, Predicate};
use crate::error::Result;
use crate::rootsys::{Family, RootSystem, TypeLabel};

/// A rendered table: a header and string cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub name: &'static str,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| csv_cell(c)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> =
                    self.header.iter().zip(row).map(|(h, c)| (h.to_string(), Value::String(c.clone()))).collect();
                Value::Object(obj)
            })
            .collect();
        json!({ "table": self.name, "rows": rows })
    }

    pub fn to_text(&self) -> String {
        let widths: Vec<usize> = (0..self.header.len())
            .map(|j| {
                self.rows
                    .iter()
                    .map(|r| r[j].chars().count())
                    .chain([self.header[j].chars().count()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: Vec<&str>| -> String {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = line(self.header.clone());
        for row in &self.rows {
            out.push_str(&line(row.iter().map(String::as_str).collect()));
        }
        out
    }
}

fn csv_cell(c: &str) -> String {
    if c.contains([',', '"', '\n']) {
        format!("\"{}\"", c.replace('"', "\"\""))
    } else {
        c.to_string()
    }
}

fn labels(names: &[&str]) -> Vec<TypeLabel> {
    names.iter().map(|s| s.parse().expect("fixed type list")).collect()
}

/// The concrete types each table is emitted for.
pub fn table_types(which: &str) -> Vec<TypeLabel> {
    let names: &[&str] = match which {
        "primes" => &[
            "A1", "A2", "A3", "A4", "B2", "B3", "B4", "B5", "C2", "C3", "C4", "D4", "D5", "D6", "E6", "E7", "E8", "F4",
            "G2",
        ],
        "maxsets" => &[
            "A2", "A3", "A4", "A5", "B2", "B3", "B4", "B5", "B6", "C3", "C4", "D4", "D5", "D6", "E6", "E7", "E8", "F4",
            "G2",
        ],
        "stabilizers" => &["A3", "A4", "B4", "B5", "C3", "D4", "D5", "E6", "E7", "E8", "F4", "G2"],
        _ => &[
            "A1", "A2", "A3", "A4", "A5", "A6", "B2", "B3", "B4", "B5", "B6", "C2", "C3", "C4", "C5", "D4", "D5", "D6",
            "E6", "E7", "E8", "F4", "G2",
        ],
    };
    labels(names)
}

/// Family row and rank restriction under which a type appears in Tables 4 and 5.
pub fn table_row(l: TypeLabel) -> (String, String) {
    let n = l.rank;
    match l.family {
        Family::A if n.is_multiple_of(2) => ("A_{2n}".into(), if n == 2 { "n = 1" } else { "n ≥ 2" }.into()),
        Family::A => ("A_{2n+1}".into(), "n ≥ 0".into()),
        Family::B => (
            "B_n".into(),
            match n {
                2 | 3 => "n = 2, 3",
                4 => "n = 4",
                _ => "n ≥ 5",
            }
            .into(),
        ),
        Family::C => ("C_n".into(), "n ≥ 2".into()),
        Family::D => ("D_n".into(), if n == 4 { "n = 4" } else { "n ≥ 5" }.into()),
        _ => (l.to_string(), String::new()),
    }
}

fn set_list(s: impl IntoIterator<Item = u32>) -> String {
    let v: Vec<String> = s.into_iter().map(|p| p.to_string()).collect();
    if v.is_empty() {
        "none".into()
    } else {
        v.join(" ")
    }
}

/// Bad and torsion primes, |Λ/Λ_r| and the longest root string.
pub fn primes_table() -> Result<Table> {
    let mut rows = Vec::new();
    for l in table_types("primes") {
        let prof = RootSystem::new(l).prime_profile()?;
        rows.push(vec![
            l.to_string(),
            set_list(prof.bad_primes),
            set_list(prof.torsion_primes),
            prof.fundamental_group_order.to_string(),
            prof.longest_root_string.to_string(),
        ]);
    }
    Ok(Table {
        name: "primes",
        header: vec!["type", "bad_primes", "torsion_primes", "fundamental_group_order", "longest_root_string"],
        rows,
    })
}

/// m(Φ), #max(Φ), partial-W components and the named maximal sets.
pub fn maxsets_table() -> Table {
    let mut rows = Vec::new();
    for l in table_types("maxsets") {
        let sys = RootSystem::new(l);
        let cat = enumerate_max_commuting(&sys, Predicate::Plain);
        let names: Vec<Option<String>> = cat.sets.iter().map(|&s| set_name(&sys, s)).collect();
        let named = if names.iter().all(Option::is_none) {
            "none of the form Φ⟨i⟩".to_string()
        } else {
            let mut v: Vec<String> = names.iter().flatten().cloned().collect();
            v.sort_by_key(|n| name_key(n));
            let unnamed = names.iter().filter(|n| n.is_none()).count();
            if unnamed > 0 {
                v.push(format!("+{unnamed} unnamed"));
            }
            v.join(" ")
        };
        let ideals: Vec<String> =
            cat.sets.iter().zip(&cat.ideals).filter(|(_, &i)| i).map(|(&s, _)| set_name(&sys, s).unwrap_or("I".into())).collect();
        rows.push(vec![
            l.to_string(),
            cat.m.to_string(),
            cat.count().to_string(),
            cat.num_orbits().to_string(),
            ideals.join(" "),
            named,
        ]);
    }
    Table { name: "maxsets", header: vec!["type", "m", "count", "components", "ideals", "sets"], rows }
}

fn name_key(n: &str) -> (u8, usize) {
    let digits: String = n.chars().filter(char::is_ascii_digit).collect();
    let k = digits.parse().unwrap_or(0);
    let family = if n.starts_with('Φ') { 0 } else if n.starts_with("S*") { 2 } else { 1 };
    (family, k)
}

/// Simple reflections stabilizing each ideal in max(Φ), and whether Stab_W is exactly W_I.
pub fn stabilizers_table() -> Table {
    let mut rows = Vec::new();
    for l in table_types("stabilizers") {
        let sys = RootSystem::new(l);
        let cat = enumerate_max_commuting(&sys, Predicate::Plain);
        for s in cat.ideal_sets() {
            let rep = weyl_stabilizer(&sys, s);
            let gens: Vec<String> = rep.generators.iter().map(|i| format!("s{}", i + 1)).collect();
            let missing: Vec<String> =
                (0..sys.rank()).filter(|i| !rep.generators.contains(i)).map(|i| format!("α{}", i + 1)).collect();
            let check = match (rep.exhaustive, rep.equals_parabolic) {
                (true, true) => "Stab = W_I",
                (true, false) => "Stab ≠ W_I",
                (false, _) => "not enumerated",
            };
            rows.push(vec![
                l.to_string(),
                set_name(&sys, s).unwrap_or("I".into()),
                gens.join(" "),
                format!("W_{{Δ∖{{{}}}}}", missing.join(", ")),
                check.to_string(),
            ]);
        }
    }
    Table { name: "stabilizers", header: vec!["type", "ideal", "generators", "stabilizer", "check"], rows }
}

fn smallest_good_prime(l: TypeLabel) -> Result<u32> {
    let prof = RootSystem::new(l).prime_profile()?;
    Ok((2..).find(|&p| crate::field::is_prime(p) && prof.is_good(p)).unwrap())
}

/// Classes of maximal elementary abelian subgroups of G(F_q) and their orders.
pub fn group_table() -> Result<Table> {
    let mut rows = Vec::new();
    for l in table_types("groups") {
        let c = class_report(&RootSystem::new(l), smallest_good_prime(l)?, 1)?;
        let (row, restriction) = table_row(l);
        let reps: Vec<&str> = c.representatives.iter().map(|r| r.name.as_str()).collect();
        rows.push(vec![
            l.to_string(),
            row,
            restriction,
            c.class_count.to_string(),
            c.order_expression(),
            reps.join("; "),
        ]);
    }
    Ok(Table {
        name: "groups",
        header: vec!["type", "row", "restriction", "classes", "order", "representatives"],
        rows,
    })
}

/// Components and dimension of Spec H*(G(F_{p^r}), k).
pub fn spectrum_table() -> Result<Table> {
    let mut rows = Vec::new();
    for l in table_types("spectrum") {
        let s = spectrum_report(&RootSystem::new(l), smallest_good_prime(l)?, 1)?;
        let (row, restriction) = table_row(l);
        let m = s.exponent_coefficient;
        rows.push(vec![
            l.to_string(),
            row,
            restriction,
            s.component_count.to_string(),
            dimension_expression(m),
            if m == 1 { "r".into() } else { format!("{m}r") },
        ]);
    }
    Ok(Table {
        name: "spectrum",
        header: vec!["type", "row", "restriction", "components", "dimension", "rank"],
        rows,
    })
}
