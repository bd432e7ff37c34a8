use std::collections::BTreeMap;

use proptest::prelude::*;

use super::*;
use crate::commuting::{b_family_sets, enumerate_max_commuting, g2_sets, Predicate};
use crate::rootsys::EpsilonView;

fn amb(s: &str, p: u32) -> Ambient {
    Ambient::new(&RootSystem::parse(s).unwrap(), &FiniteField::prime(p).unwrap())
}

fn idx(a: &Ambient, c: &[i32]) -> usize {
    a.system().index_of(c).unwrap()
}

fn unit(a: &Ambient, root: usize) -> Vec<Elem> {
    let mut v = vec![0; a.system().num_positive()];
    v[root] = 1;
    v
}

#[test]
fn lie_of_radical_in_b2() {
    let a = amb("B2", 3);
    let rad = a.system().phi_rad(&[0]);
    let e = a.lie(rad).unwrap();
    assert_eq!(e.dim(), 3);
    assert_eq!(e.lt(), rad);
    assert!(a.is_elementary(&e.rows, Scope::U));
}

#[test]
fn lie_rejects_non_commuting() {
    let a = amb("A2", 5);
    let err = a.lie(RootMask::from_indices([0, 1])).unwrap_err();
    assert!(matches!(err, Error::NotCommuting(_)));
}

#[test]
fn simple_roots_of_a2_do_not_span_an_elementary_subalgebra() {
    let a = amb("A2", 5);
    assert!(!a.is_elementary(&[unit(&a, 0), unit(&a, 1)], Scope::U));
    assert!(a.elementary(vec![unit(&a, 0), unit(&a, 1)]).is_err());
}

#[test]
fn echelon_leads_are_most_leading_roots() {
    let a = amb("G2", 5);
    let (a2, a12, a3112) = (idx(&a, &[0, 1]), idx(&a, &[1, 1]), idx(&a, &[3, 1]));
    let mut r1 = unit(&a, a3112);
    r1[a2] = 2;
    let mut r2 = unit(&a, a12);
    r2[a2] = 1;
    let e = a.elementary_unchecked(vec![r1, r2]);
    // a2 is more leading than a1+a2, so one row is led by a2 and the other has no a2 term
    assert_eq!(e.leads[0], a2);
    assert_eq!(e.rows[0][a2], 1);
    assert_eq!(e.rows[1][a2], 0);
    for w in e.leads.windows(2) {
        assert!(a.order().position(w[0]) < a.order().position(w[1]));
    }
}

fn cached(s: &'static str, p: u32) -> &'static Ambient {
    use std::sync::{Mutex, OnceLock};
    static CACHE: OnceLock<Mutex<BTreeMap<(String, u32), &'static Ambient>>> = OnceLock::new();
    let mut m = CACHE.get_or_init(Default::default).lock().unwrap();
    m.entry((s.to_string(), p)).or_insert_with(|| Box::leak(Box::new(amb(s, p))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn lt_of_lie_is_identity(ty in prop::sample::select(vec!["A3", "B3", "C3", "D4", "G2", "F4", "E6"]), bits in any::<u128>()) {
        let a = cached(ty, 5);
        let sys = a.system();
        // greedy commuting subset driven by the random bits
        let mut set = RootMask::EMPTY;
        for r in 0..sys.num_positive() {
            if bits >> r & 1 == 1 && set.iter().all(|s| sys.commute(s, r, None)) {
                set.insert(r);
            }
        }
        let e = a.lie(set).unwrap();
        prop_assert_eq!(e.lt(), set);
        prop_assert_eq!(e.dim(), set.len());
    }
}

#[test]
fn a2_family_is_a_projective_line() {
    for p in [3, 5, 7] {
        let a = amb("A2", p);
        let pts = brute_force_eu(&a, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(pts.len(), p as usize + 1, "p = {p}");
        let top = idx(&a, &[1, 1]);
        for e in &pts {
            assert!(e.lt().contains(top));
            let v = &e.rows[0];
            assert_eq!(v[top], 0);
            assert!(v[0] != 0 || v[1] != 0);
        }
    }
}

#[test]
fn a2_in_characteristic_two_drops_the_mixed_line() {
    // (a x1 + b x2)^[2] = ab x(a1+a2) up to sign, so only [1:0] and [0:1] survive
    let a = amb("A2", 2);
    let pts = brute_force_eu(&a, 2, DEFAULT_BUDGET).unwrap();
    assert_eq!(pts.len(), 2);
    let mut mixed = unit(&a, 0);
    mixed[1] = 1;
    assert!(a.rows_commute(&[mixed.clone(), unit(&a, 2)]));
    assert!(!a.p_nilpotent(&mixed, Scope::U));
}

#[test]
fn b2_and_b3_have_only_the_radical() {
    for (ty, r) in [("B2", 3), ("B3", 5)] {
        let a = amb(ty, 3);
        let pts = brute_force_eu(&a, r, DEFAULT_BUDGET).unwrap();
        let rad = a.lie(a.system().phi_rad(&[0])).unwrap();
        assert_eq!(pts, vec![rad], "{ty}");
    }
}

#[test]
fn budget_reports_a_count_above_the_budget() {
    let a = amb("G2", 5);
    let needed = candidate_count(&a, Scope::U, 3);
    assert!(brute_force_eu(&a, 3, needed).is_ok());
    for budget in [needed - 1, needed / 2, 10] {
        match brute_force_eu(&a, 3, budget) {
            Err(Error::BudgetExceeded { needed: n, budget: b }) => {
                assert!(b == budget && n > budget && n <= needed);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }
}

#[test]
fn capped_count_stops_early_in_e8() {
    let a = amb("E8", 7);
    let n = candidate_count_capped(&a, Scope::U, 36, 1000);
    assert!(n > 1000);
}

#[test]
fn maximal_dimension_matches_clique_number() {
    for (ty, p) in [("A2", 5), ("A3", 3), ("B2", 5), ("B3", 3), ("C3", 3), ("G2", 5)] {
        let a = amb(ty, p);
        let m = enumerate_max_commuting(a.system(), Predicate::Plain).m;
        let at_m = brute_force_eu(&a, m, DEFAULT_BUDGET).unwrap();
        assert!(!at_m.is_empty(), "{ty}");
        let cat = enumerate_max_commuting(a.system(), Predicate::Plain);
        for e in &at_m {
            assert!(cat.sets.contains(&e.lt()), "{ty}: lt is not a maximal commuting set");
        }
        assert!(brute_force_eu(&a, m + 1, DEFAULT_BUDGET).unwrap().is_empty(), "{ty}");
    }
}

#[test]
fn radical_below_everything_forces_lie() {
    // whenever the complement of lt(E) lies strictly above it, E = lie(lt(E))
    for (ty, p, r) in [("A3", 3, 4), ("B3", 3, 5), ("C3", 3, 6), ("B2", 5, 3)] {
        let a = amb(ty, p);
        for e in brute_force_eu(&a, r, DEFAULT_BUDGET).unwrap() {
            let lt = e.lt();
            let rest = a.system().all_positive().difference(lt);
            let above = rest.iter().all(|b| lt.iter().all(|c| a.order().position(b) < a.order().position(c)));
            if above {
                assert!(e.is_lie_of_lt(), "{ty}");
            }
        }
    }
}

#[test]
fn product_of_two_sl2() {
    let a = amb("A1+A1", 3);
    let sum = brute_force_subspaces(&a, Scope::G, 2, DEFAULT_BUDGET).unwrap();
    let factor = brute_force_subspaces(&amb("A1", 3), Scope::G, 1, DEFAULT_BUDGET).unwrap();
    assert_eq!(factor.len(), 4);
    assert!(brute_force_subspaces(&amb("A1", 3), Scope::G, 2, DEFAULT_BUDGET).unwrap().is_empty());
    assert_eq!(sum.len(), factor.len() * factor.len());
}

#[test]
fn g2_normalizer_dimensions() {
    let a = amb("G2", 5);
    let dims: Vec<usize> = g2_normal_forms(&a).unwrap().iter().map(|(_, e)| a.normalizer_dim(&a.to_g(e))).collect();
    assert_eq!(dims, vec![7, 9, 6]);
}

#[test]
fn borel_normalizes_ideals() {
    for (ty, p) in [("A3", 5), ("B3", 5), ("D4", 5), ("G2", 7)] {
        let a = amb(ty, p);
        let cat = enumerate_max_commuting(a.system(), Predicate::Plain);
        for s in cat.ideal_sets() {
            let e = a.to_g(&a.lie(s).unwrap());
            let n = a.normalizer(&e);
            let np = a.system().num_positive();
            let borel: Vec<usize> = (0..np).chain(a.system().num_roots()..a.alg().dim(Scope::G)).collect();
            for &k in &borel {
                let mut v = vec![0; a.alg().dim(Scope::G)];
                v[k] = 1;
                let mut rows = n.clone();
                rows.push(v);
                assert_eq!(linalg::rank(a.field(), &rows), n.len(), "{ty}");
            }
        }
    }
}

#[test]
fn normalizer_matches_exhaustive_search_in_a2() {
    let a = amb("A2", 5);
    let f = a.field();
    let l3 = a.elementary(vec![{ let mut v = unit(&a, 0); v[1] = 1; v }, unit(&a, 2)]).unwrap();
    let s = a.to_g(&l3);
    let d = a.alg().dim(Scope::G);
    let mut count = 0usize;
    let mut y = vec![0; d];
    let mut buf = vec![0; d];
    'outer: loop {
        let inside = s.rows.iter().all(|e| {
            buf.iter_mut().for_each(|v| *v = 0);
            a.alg().bracket_into(&y, e, &mut buf);
            let mut rows = s.rows.clone();
            rows.push(buf.clone());
            linalg::rank(f, &rows) == s.rows.len()
        });
        count += inside as usize;
        for k in 0..d {
            y[k] += 1;
            if (y[k] as usize) < f.order() {
                continue 'outer;
            }
            y[k] = 0;
        }
        break;
    }
    let dim = a.normalizer_dim(&s);
    assert_eq!(count, 5usize.pow(dim as u32));
    assert_eq!(dim, 4);
}

#[test]
fn a2_has_three_orbits() {
    let a = amb("A2", 5);
    let pts = brute_force_eu(&a, 2, DEFAULT_BUDGET).unwrap();
    let gens = group_generators(&a, GeneratorSet::Minimal);
    let rep = orbit_decompose(&a, &pts, &gens, &[]).unwrap();
    assert_eq!(rep.orbits.len(), 3);
    assert_eq!(rep.orbits.iter().map(|o| o.u_points).sum::<usize>(), 6);
    assert!(rep.orbits.iter().all(|o| o.normalizer_constant));
    let classes = bruhat_classes(&a, &pts, 100).unwrap();
    assert_eq!(classes.iter().max().unwrap() + 1, 3);
}

#[test]
fn full_and_minimal_generators_agree() {
    let a = amb("A2", 5);
    let pts = brute_force_eu(&a, 2, DEFAULT_BUDGET).unwrap();
    let small = orbit_decompose(&a, &pts, &group_generators(&a, GeneratorSet::Minimal), &[]).unwrap();
    let full = orbit_decompose(&a, &pts, &group_generators(&a, GeneratorSet::Full), &[]).unwrap();
    let sizes = |r: &OrbitReport| r.orbits.iter().map(|o| (o.size, o.u_points)).collect::<Vec<_>>();
    assert_eq!(sizes(&small), sizes(&full));
}

#[test]
fn single_point_identity_generator() {
    let a = amb("A2", 5);
    let e = a.lie(RootMask::from_indices([0, 2])).unwrap();
    let rep = orbit_decompose(&a, std::slice::from_ref(&e), &[a.alg().identity_element()], &[]).unwrap();
    assert_eq!(rep.orbits.len(), 1);
    assert_eq!(rep.orbits[0].size, 1);
}

#[test]
fn orbit_search_rejects_incomplete_point_sets() {
    let a = amb("A2", 5);
    let pts = brute_force_eu(&a, 2, DEFAULT_BUDGET).unwrap();
    let gens = group_generators(&a, GeneratorSet::Minimal);
    let drop = pts.iter().position(|e| !e.is_lie_of_lt()).unwrap();
    let some: Vec<_> = pts.iter().enumerate().filter(|&(k, _)| k != drop).map(|(_, e)| e.clone()).collect();
    assert!(matches!(orbit_decompose(&a, &some, &gens, &[]), Err(Error::NotClosed(_))));
}

#[test]
fn b4_radical_system_has_only_the_zero_solution() {
    let a = amb("B4", 3);
    let sys = LeadingTermSystem::new(&a, a.system().phi_rad(&[0])).unwrap();
    let sol = leading_term_solve(&a, &sys, 1_000_000).unwrap();
    assert_eq!(sol.kind, SolutionKind::ZeroOnly);
}

#[test]
fn d4_radical_system_has_only_the_zero_solution() {
    let a = amb("D4", 5);
    let sys = LeadingTermSystem::new(&a, a.system().phi_rad(&[0])).unwrap();
    let sol = leading_term_solve(&a, &sys, 1_000_000).unwrap();
    assert_eq!(sol.kind, SolutionKind::ZeroOnly);
}

/// `B(a)` and `C(a)` twisted by `x_{a_n}(c)`.
fn b_member(a: &Ambient, coeffs: &[Elem]) -> ElementarySubalgebra {
    let sys = a.system();
    let n = sys.rank();
    let e = EpsilonView::new(sys).unwrap();
    let mut rows = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            rows.push(unit(a, e.pm(i, 1, j)));
        }
    }
    let mut v = vec![0; sys.num_positive()];
    for i in 1..=n {
        v[e.e(i)] = coeffs[i - 1];
    }
    rows.push(v);
    a.elementary(rows).unwrap()
}

fn c_member(a: &Ambient, coeffs: &[Elem], twist: Elem) -> ElementarySubalgebra {
    let sys = a.system();
    let n = sys.rank();
    let e = EpsilonView::new(sys).unwrap();
    let mut rows = Vec::new();
    for i in 1..n {
        for j in i + 1..n {
            rows.push(unit(a, e.pm(i, 1, j)));
        }
        rows.push(unit(a, e.pm(i, -1, n)));
    }
    let mut v = vec![0; sys.num_positive()];
    for i in 1..n {
        v[e.e(i)] = coeffs[i - 1];
    }
    rows.push(v);
    let g = a.alg().root_group(n - 1, twist);
    let d = a.alg().dim(Scope::G);
    let rows = rows
        .into_iter()
        .map(|mut r| {
            r.resize(d, 0);
            g.apply_coeffs(a.alg(), &r)
        })
        .collect();
    let s = a.to_u(&a.echelon(Scope::G, rows)).unwrap();
    assert!(a.is_elementary(&s.rows, Scope::U));
    s
}

#[test]
fn b4_targets_s_t_give_the_b_family() {
    let a = amb("B4", 3);
    let fam = b_family_sets(a.system()).unwrap();
    for &((t, starred), set) in &fam {
        if starred {
            continue;
        }
        let sys = LeadingTermSystem::new(&a, set).unwrap();
        let sol = leading_term_solve(&a, &sys, 1_000_000).unwrap();
        // lead e_t, so the free coefficients are those of e_1, ..., e_{t-1}
        let want = if t == 1 { SolutionKind::ZeroOnly } else { SolutionKind::Affine { dim: t - 1 } };
        assert_eq!(sol.kind, want, "S_{t}");
        for s in &sol.solutions {
            let e = sys.subalgebra(&a, s);
            let v = e.row_with_lead(EpsilonView::new(a.system()).unwrap().e(t)).unwrap();
            let coeffs: Vec<Elem> = (1..=4).map(|i| v[EpsilonView::new(a.system()).unwrap().e(i)]).collect();
            assert_eq!(e, b_member(&a, &coeffs));
        }
    }
}

#[test]
fn b_family_reduces_to_lie_s1() {
    let a = amb("B5", 5);
    let mut seed = 12345u64;
    let mut next = || {
        seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((seed >> 33) % 5) as Elem
    };
    for _ in 0..50 {
        let mut c: Vec<Elem> = (0..5).map(|_| next()).collect();
        if c.iter().all(|&x| x == 0) {
            c[0] = 1;
        }
        let e = b_member(&a, &c);
        let red = conjugation_reduce(&a, &e, Recipe::BFamily).unwrap();
        assert_eq!(red.target, "lie(S1)");
        let mut d: Vec<Elem> = (0..4).map(|_| next()).collect();
        if d.iter().all(|&x| x == 0) {
            d[3] = 2;
        }
        let e = c_member(&a, &d, next());
        let red = conjugation_reduce(&a, &e, Recipe::BFamily).unwrap();
        assert_eq!(red.target, "lie(S1)");
    }
}

#[test]
fn normal_form_needs_no_word() {
    let a = amb("B5", 5);
    let s1 = b_family_sets(a.system()).unwrap()[0].1;
    let red = conjugation_reduce(&a, &a.lie(s1).unwrap(), Recipe::BFamily).unwrap();
    assert!(red.word.is_empty());
}

fn g2_f5_report() -> (Ambient, Vec<ElementarySubalgebra>, OrbitReport) {
    let a = amb("G2", 5);
    let pts = brute_force_eu(&a, 3, DEFAULT_BUDGET).unwrap();
    let named = g2_normal_forms(&a).unwrap();
    let rep = orbit_decompose(&a, &pts, &group_generators(&a, GeneratorSet::Minimal), &named).unwrap();
    (a, pts, rep)
}

#[test]
fn g2_over_f5_splits_the_l_orbit() {
    let (a, pts, rep) = g2_f5_report();
    let mut rows: Vec<(Option<String>, usize, usize, usize)> =
        rep.orbits.iter().map(|o| (o.normal_form_tag.clone(), o.size, o.u_points, o.normalizer_dim)).collect();
    rows.sort();
    assert_eq!(
        rows,
        vec![
            (None, 234360, 60, 6),
            (Some("L".into()), 234360, 60, 6),
            (Some("lie(C3)".into()), 117180, 55, 7),
            (Some("lie(C5)".into()), 3906, 6, 9),
        ]
    );
    assert!(rep.orbits.iter().all(|o| o.normalizer_constant));
    // |G2(F_5)| = 5^6 (5^6 - 1)(5^2 - 1)
    let order: usize = 15625 * 15624 * 24;
    // stabilizers: P2, T U' (16 * 5^5) and twice the torus-part-times-U' group of L (4 * 5^5)
    let stabs: Vec<usize> = rows.iter().map(|r| order / r.1).collect();
    assert_eq!(stabs, vec![25000, 25000, 50000, 1500000]);
    assert!(rows.iter().all(|r| order.is_multiple_of(r.1)));
    let classes = bruhat_classes(&a, &pts, 100).unwrap();
    assert_eq!(classes.iter().max().unwrap() + 1, 4);
}

#[test]
fn l_has_a_stabilizer_outside_the_borel() {
    // B(F_5) meets Stab(L) in 4 * 5^5 elements; the orbit of 234360 needs twice that
    let a = amb("G2", 5);
    let alg = a.alg();
    let l = a.to_g(&g2_normal_forms(&a).unwrap()[2].1);
    let g = alg
        .root_group(0, 2)
        .compose(alg, &alg.weyl_rep(0))
        .compose(alg, &alg.cocharacter(0, 2).unwrap())
        .compose(alg, &alg.cocharacter(1, 2).unwrap())
        .compose(alg, &alg.root_group(0, 3));
    let rows = l.rows.iter().map(|r| g.apply_coeffs(alg, r)).collect();
    assert_eq!(a.echelon(Scope::G, rows), l);
}

#[test]
fn g2_points_reduce_over_f5_except_the_split_orbit() {
    let (a, pts, rep) = g2_f5_report();
    let mut hits = BTreeMap::new();
    let mut failed = Vec::new();
    for e in &pts {
        match conjugation_reduce(&a, e, Recipe::G2) {
            Ok(red) => *hits.entry(red.target).or_insert(0) += 1,
            Err(Error::OutsideRecipe(_)) => failed.push(e.clone()),
            Err(err) => panic!("{err}"),
        }
    }
    assert_eq!(hits.values().sum::<usize>() + failed.len(), pts.len());
    assert_eq!(hits.len(), 3);
    assert_eq!(failed.len(), 60);
    assert!(failed.iter().all(|e| e.lt() == g2_sets(a.system()).unwrap()[3]));
    let split = rep.orbits.iter().find(|o| o.normal_form_tag.is_none()).unwrap();
    assert_eq!(split.u_points, failed.len());
}

#[test]
fn split_orbit_reduces_to_l_over_f625() {
    let a = amb("G2", 5);
    let big = Ambient::new(a.system(), &FiniteField::new(5, 4).unwrap());
    let split: Vec<_> = brute_force_eu(&a, 3, DEFAULT_BUDGET)
        .unwrap()
        .into_iter()
        .filter(|e| conjugation_reduce(&a, e, Recipe::G2).is_err())
        .collect();
    for e in split.iter().step_by(6) {
        let red = conjugation_reduce(&big, &big.lift(e).unwrap(), Recipe::G2).unwrap();
        assert_eq!(red.target, "L");
    }
}

#[test]
fn g2_char3_points_reduce_to_r1() {
    let a = amb("G2", 3);
    let pts = brute_force_eu(&a, 4, DEFAULT_BUDGET).unwrap();
    assert!(!pts.is_empty());
    for e in &pts {
        let red = conjugation_reduce(&a, e, Recipe::G2Char3).unwrap();
        assert_eq!(red.target, "lie(R1)");
    }
}


#[test]
fn starred_targets_give_the_twisted_c_family() {
    for (ty, p) in [("B4", 3), ("B5", 3), ("B4", 5)] {
        let a = amb(ty, p);
        let n = a.system().rank();
        let q = p as usize;
        for &((t, starred), set) in &b_family_sets(a.system()).unwrap() {
            if !starred {
                continue;
            }
            let sys = LeadingTermSystem::new(&a, set).unwrap();
            let sol = leading_term_solve(&a, &sys, 1_000_000).unwrap();
            assert_eq!(sol.solutions.len(), q.pow(t as u32), "{ty} S*_{t}");
            let found: std::collections::BTreeSet<_> = sol.solutions.iter().map(|s| sys.subalgebra(&a, s)).collect();
            // C(a_1, ..., a_{t-1}, 1, 0, ..., 0) twisted by x_{a_n}(c)
            let mut expected = std::collections::BTreeSet::new();
            for code in 0..q.pow(t as u32) {
                let mut digits: Vec<Elem> = (0..t).map(|k| (code / q.pow(k as u32) % q) as Elem).collect();
                let twist = digits.pop().unwrap();
                let mut d = digits;
                d.push(1);
                d.resize(n - 1, 0);
                let e = c_member(&a, &d, twist);
                assert_eq!(e.lt(), set);
                expected.insert(e);
            }
            assert_eq!(found, expected, "{ty} S*_{t}");
        }
    }
}

#[test]
fn a2_mixed_line_splits_by_cubes_when_3_divides_q_minus_1() {
    let a = amb("A2", 7);
    let pts = brute_force_eu(&a, 2, DEFAULT_BUDGET).unwrap();
    let rep = orbit_decompose(&a, &pts, &group_generators(&a, GeneratorSet::Minimal), &[]).unwrap();
    let mut sizes: Vec<usize> = rep.orbits.iter().map(|o| o.u_points).collect();
    sizes.sort();
    assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
}
