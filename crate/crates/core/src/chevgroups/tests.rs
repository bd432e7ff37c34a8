use super::*;

fn sys(s: &str) -> RootSystem {
    RootSystem::parse(s).unwrap()
}

fn report(s: &str) -> ClassReport {
    let l = sys(s).label().unwrap();
    let p = if l.family == Family::E && l.rank == 8 { 7 } else { 5 };
    class_report(&sys(s), p, 1).unwrap()
}

/// Classes and order exponent as printed in the group table.
fn printed(l: TypeLabel) -> (ClassCount, usize) {
    use ClassCount::*;
    let n = l.rank;
    match (l.family, n) {
        (Family::A, 2) => (Exact(3), 2),
        (Family::A, n) if n % 2 == 0 => (Exact(2), n / 2 * (n / 2 + 1)),
        (Family::A, n) => (Exact(1), n.div_ceil(2).pow(2)),
        (Family::B, 2 | 3) => (Exact(1), 2 * n - 1),
        (Family::B, 4) => (Exact(2), 7),
        (Family::B, n) => (Exact(1), n * (n - 1) / 2 + 1),
        (Family::C, n) => (Exact(1), n * (n + 1) / 2),
        (Family::D, 4) => (Exact(3), 6),
        (Family::D, n) => (Exact(2), n * (n - 1) / 2),
        (Family::E, 6) => (Exact(2), 16),
        (Family::E, 7) => (Exact(1), 27),
        (Family::E, _) => (Exact(1), 36),
        (Family::F, _) => (Exact(1), 9),
        (Family::G, _) => (AtLeast(3), 3),
    }
}

#[test]
fn class_reports_match_the_printed_rows() {
    for l in table_types("groups") {
        let c = report(&l.to_string());
        assert_eq!((c.class_count, c.order_exponent), printed(l), "{l}");
        assert_eq!(c.representatives.len(), c.class_count.value(), "{l}");
    }
}

#[test]
fn named_representatives() {
    let names = |s: &str| -> Vec<String> { report(s).representatives.into_iter().map(|r| r.name).collect() };
    assert_eq!(names("B4"), ["Φ⟨1⟩", "S1"]);
    assert_eq!(names("D4"), ["Φ⟨1⟩", "Φ⟨3⟩", "Φ⟨4⟩"]);
    assert_eq!(names("E6"), ["Φ⟨1⟩", "Φ⟨6⟩"]);
    assert_eq!(names("E7"), ["Φ⟨7⟩"]);
    assert_eq!(names("C4"), ["Φ⟨4⟩"]);
    assert_eq!(names("G2"), ["C5", "C3", "L"]);
    assert_eq!(report("A2").representatives[2].roots, Vec::<Vec<i32>>::new());
    assert_eq!(report("B5").representatives[0].roots.len(), 11);
}

#[test]
fn spectrum_follows_the_class_report() {
    for l in table_types("spectrum") {
        for r in 1..=3 {
            let s = sys(&l.to_string());
            let p = if l.family == Family::E && l.rank == 8 { 7 } else { 5 };
            let c = class_report(&s, p, r).unwrap();
            let sp = spectrum_report(&s, p, r).unwrap();
            assert_eq!(sp.component_count, c.class_count);
            assert_eq!(sp.dimension_exponent, r as usize * c.order_exponent - 1);
            assert_eq!(sp.elementary_rank, r as usize * c.order_exponent);
        }
    }
    let a2 = spectrum_report(&sys("A2"), 7, 4).unwrap();
    assert_eq!((a2.component_count, a2.dimension_expression.as_str()), (ClassCount::Exact(3), "p^{2r-1}"));
    let e7 = spectrum_report(&sys("E7"), 5, 2).unwrap();
    assert_eq!((e7.component_count, e7.dimension_expression.as_str(), e7.dimension_exponent), (ClassCount::Exact(1), "p^{27r-1}", 53));
    let d4 = spectrum_report(&sys("D4"), 3, 1).unwrap();
    assert_eq!((d4.component_count, d4.dimension_expression.as_str()), (ClassCount::Exact(3), "p^{6r-1}"));
    assert_eq!(spectrum_report(&sys("A1"), 3, 1).unwrap().dimension_expression, "p^{r-1}");
}

#[test]
fn bad_primes_are_rejected() {
    assert!(matches!(class_report(&sys("E8"), 5, 1), Err(Error::BadPrime(_))));
    assert!(matches!(class_report(&sys("G2"), 3, 1), Err(Error::BadPrime(_))));
    assert!(matches!(spectrum_report(&sys("B3"), 2, 1), Err(Error::BadPrime(_))));
    assert!(matches!(class_report(&sys("A2"), 4, 1), Err(Error::InvalidField(_))));
    assert!(matches!(class_report(&sys("A2"), 5, 0), Err(Error::InvalidField(_))));
    assert!(class_report(&sys("A3"), 2, 1).is_ok());
}

#[test]
fn products_multiply_counts() {
    let c = class_report(&sys("A2+B4"), 5, 1).unwrap();
    assert_eq!((c.class_count, c.order_exponent), (ClassCount::Exact(6), 9));
    assert_eq!(c.representatives[0].name, "A2: Φ⟨1⟩ × B4: Φ⟨1⟩");
    assert!(c.representatives.iter().all(|r| r.roots.iter().all(|v| v.len() == 6)));
    let g = class_report(&sys("G2+A1"), 5, 1).unwrap();
    assert_eq!(g.class_count.to_string(), "≥3");
}

#[test]
fn class_count_serializes_with_the_marker() {
    let j = serde_json::to_value(report("G2")).unwrap();
    assert_eq!(j["class_count"], "≥3");
    assert_eq!(serde_json::to_value(report("D4")).unwrap()["class_count"], 3);
}

#[test]
fn g2_witness_rejects_other_fields() {
    for (p, r) in [(7, 1), (5, 3), (3, 1)] {
        assert!(matches!(g2_class_count_witness(p, r), Err(Error::Unsupported(_))));
    }
}

#[test]
fn g2_witness_over_f5() {
    let w = g2_witness(5, 1).unwrap();
    assert_eq!(w.classes, 4);
    assert_eq!(w.normalizer_dims, [6, 6, 7, 9]);
}

#[test]
fn g2_witness_over_f25() {
    let w = g2_witness(5, 2).unwrap();
    assert_eq!(w.classes, 6);
    let dims: BTreeSet<usize> = w.normalizer_dims.iter().copied().collect();
    assert_eq!(dims, BTreeSet::from([6, 7, 9]));
}

#[test]
fn tables_render() {
    let t = group_table().unwrap();
    assert_eq!(t.rows.len(), table_types("groups").len());
    let csv = t.to_csv();
    assert!(csv.starts_with("type,row,restriction,classes,order,representatives\n"));
    assert!(csv.contains("G2,G2,,≥3,q^3,C5; C3; L\n"));
    assert!(csv.contains("B4,B_n,n = 4,2,q^7,Φ⟨1⟩; S1\n"));
    assert!(csv.contains("B2,B_n,\"n = 2, 3\",1,q^3,Φ⟨1⟩\n"));
    let sp = spectrum_table().unwrap().to_csv();
    assert!(sp.contains("E7,E7,,1,p^{27r-1},27r\n"));
    let j = maxsets_table().to_json();
    assert_eq!(j["rows"].as_array().unwrap().len(), table_types("maxsets").len());
    assert!(primes_table().unwrap().to_text().lines().count() > 10);
    assert_eq!(table_row("B5".parse().unwrap()).1, "n ≥ 5");
}

#[test]
fn csv_quotes_commas() {
    let t = Table { name: "x", header: vec!["a", "b"], rows: vec![vec!["n = 2, 3".into(), "\"q\"".into()]] };
    assert_eq!(t.to_csv(), "a,b\n\"n = 2, 3\",\"\"\"q\"\"\"\n");
}
