mod common;

use bsradical::betachain::*;
use bsradical::chartable::CharacterTable;
use bsradical::numtheory::prime_divisors;
use bsradical::structconst::coefficient_cube;
use common::{fixture, table, TABLES};
use num_bigint::BigUint;
use num_traits::Zero;

fn cert(t: &CharacterTable, class: &str, r: u64) -> BetaCertificate {
    let c = beta_upper_bound(t, t.class_by_name(class).unwrap(), r, None).unwrap();
    assert!(verify_certificate(t, &c));
    c
}

fn chain(t: &CharacterTable, c: &BetaCertificate) -> Vec<(String, String, u64)> {
    c.steps
        .iter()
        .map(|s| (t.class(s.from).name.clone(), t.class(s.via).name.clone(), u64::try_from(&s.coefficient).unwrap()))
        .collect()
}

fn s(a: &str, b: &str, m: u64) -> (String, String, u64) {
    (a.into(), b.into(), m)
}

#[test]
fn j2_involution_one_step() {
    let t = table("J2");
    let c = cert(&t, "2a", 3);
    assert_eq!(chain(&t, &c), vec![s("2a", "3b", 3)]);
    assert_eq!(c.bound, BigUint::from(2u32));
    assert_eq!(c.render(&t), "step: 2a 3b 3\nbound: 2^1 = 2\n");
}

#[test]
fn m22_2_outer_two_steps() {
    let t = table("M22.2");
    let c = cert(&t, "2b", 5);
    assert_eq!(chain(&t, &c), vec![s("2b", "3a", 3), s("3a", "5a", 500)]);
    assert_eq!(c.bound, BigUint::from(4u32));
}

#[test]
fn hs_2_and_j2_2_outer_bound_four() {
    let t = table("HS.2");
    let c = cert(&t, "2c", 5);
    assert_eq!(chain(&t, &c), vec![s("2c", "3a", 3), s("3a", "5a", 50)]);
    let t = table("J2.2");
    assert_eq!(cert(&t, "2c", 5).bound, BigUint::from(4u32));
}

#[test]
fn mcl_2_outer_involution_reaches_5a() {
    // The printed row for this case names 2d, but McL.2 has a single outer involution class 2b.
    let t = table("McL.2");
    assert!(t.class_by_name("2d").is_err());
    assert_eq!(chain(&t, &cert(&t, "2b", 5)), vec![s("2b", "5a", 150)]);
    assert_eq!(chain(&t, &cert(&t, "2b", 3)), vec![s("2b", "3a", 810)]);
}

#[test]
fn order_divisible_by_r_gives_empty_certificate() {
    for name in ["A5", "J2", "HS.2"] {
        let t = table(name);
        let c = cert(&t, "3a", 3);
        assert!(c.steps.is_empty());
        assert_eq!(c.bound, BigUint::from(1u32));
    }
    let t = table("J2");
    let c = cert(&t, "6a", 3);
    assert!(c.steps.is_empty(), "6a has order divisible by 3");
}

#[test]
fn prime_must_divide_group_order() {
    let t = table("M11");
    assert!(matches!(beta_upper_bound(&t, 1, 7, None), Err(BetaError::PrimeDoesNotDivide { r: 7, .. })));
    assert!(matches!(beta_upper_bound(&t, 1, 9, None), Err(BetaError::NotPrime(9))));
}

/// Every certificate for every class and every prime divisor verifies.
#[test]
fn soundness_on_all_fixtures() {
    for name in TABLES {
        let t = table(name);
        let order = u128::try_from(t.group_order()).unwrap();
        for r in prime_divisors(order as u64) {
            for x in 0..t.num_classes() {
                if Some(x) == t.identity_class() {
                    continue;
                }
                match beta_upper_bound(&t, x, r, None) {
                    Ok(c) => assert!(verify_certificate(&t, &c), "{name} {} r={r}", t.class(x).name),
                    Err(BetaError::NoCertificate { .. }) => {}
                    Err(e) => panic!("{name}: {e}"),
                }
            }
        }
    }
}

/// Depth-first enumeration of chains in (even order, table index) order over
/// the full coefficient cube. The first terminal chain at the least depth is
/// the expected certificate.
fn oracle(t: &CharacterTable, cube: &[Vec<Vec<BigUint>>], x: usize, r: u64, max: usize) -> Option<Vec<usize>> {
    let n = t.num_classes();
    let id = t.identity_class().unwrap();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&c| (t.class(c).element_order.is_multiple_of(2), c));
    fn go(
        t: &CharacterTable,
        cube: &[Vec<Vec<BigUint>>],
        order: &[usize],
        id: usize,
        r: u64,
        path: &mut Vec<usize>,
        left: usize,
    ) -> bool {
        let a = *path.last().unwrap();
        if left == 0 {
            return t.class(a).element_order.is_multiple_of(r);
        }
        for &b in order {
            if b == id || path.contains(&b) || cube[a][a][b].is_zero() {
                continue;
            }
            path.push(b);
            if go(t, cube, order, id, r, path, left - 1) {
                return true;
            }
            path.pop();
        }
        false
    }
    for depth in 0..=max {
        let mut path = vec![x];
        if go(t, cube, &order, id, r, &mut path, depth) {
            return Some(path);
        }
    }
    None
}

#[test]
fn minimal_and_lexicographically_first() {
    for name in TABLES {
        let t = table(name);
        if t.num_classes() > 25 {
            continue;
        }
        let cube = coefficient_cube(&t).unwrap();
        let order = u64::try_from(t.group_order()).unwrap();
        for r in prime_divisors(order) {
            for x in 0..t.num_classes() {
                if Some(x) == t.identity_class() {
                    continue;
                }
                let got = beta_upper_bound(&t, x, r, None).ok();
                let depth = got.as_ref().map_or(3, |c| c.steps.len());
                let expected = oracle(&t, &cube, x, r, depth);
                let got_path = got.map(|c| {
                    std::iter::once(c.start).chain(c.steps.iter().map(|s| s.via)).collect::<Vec<_>>()
                });
                if got_path.is_some() {
                    assert_eq!(got_path, expected, "{name} {} r={r}", t.class(x).name);
                } else {
                    assert_eq!(expected, None, "{name} {} r={r}: oracle found a chain", t.class(x).name);
                }
            }
        }
    }
}

#[test]
fn injected_faults_are_rejected() {
    let t = table("M22.2");
    let good = cert(&t, "2b", 5);
    for i in 0..good.steps.len() {
        let mut bad = good.clone();
        bad.steps[i].coefficient = BigUint::zero();
        assert!(!verify_certificate(&t, &bad));
        let mut bad = good.clone();
        bad.steps[i].coefficient += 1u32;
        assert!(!verify_certificate(&t, &bad));
    }
    let mut bad = good.clone();
    bad.terminal = t.class_by_name("3a").unwrap();
    assert!(!verify_certificate(&t, &bad), "terminal order coprime to r");
    let mut bad = good.clone();
    bad.steps.swap(0, 1);
    assert!(!verify_certificate(&t, &bad), "broken chain");
    let mut bad = good.clone();
    bad.steps.pop();
    bad.terminal = bad.steps[0].via;
    assert!(!verify_certificate(&t, &bad));
    let mut bad = good;
    bad.start = t.class_by_name("2c").unwrap();
    assert!(!verify_certificate(&t, &bad));
}

#[test]
fn shipped_alpha_file_matches_builtin() {
    let shipped = AlphaBoundData::load(fixture("alpha_sporadic.json")).unwrap();
    assert_eq!(shipped, AlphaBoundData::sporadic());
    assert_eq!(shipped.groups.len(), 26);
    for g in SPORADIC_GROUPS {
        assert!(shipped.contains_group(g));
    }
}

#[test]
fn alpha_examples() {
    let d = AlphaBoundData::sporadic();
    assert_eq!(alpha_bound(&d, "Suz", "3a").unwrap(), AlphaInterval::new(3, 4));
    assert_eq!(alpha_bound(&d, "Fi22", "2a").unwrap(), AlphaInterval::new(5, 6));
    assert_eq!(alpha_bound(&d, "J2", "2a").unwrap(), AlphaInterval::new(4, 4));
    assert_eq!(alpha_bound(&d, "Fi22", "3b").unwrap(), AlphaInterval::new(2, 3));
    assert_eq!(alpha_bound(&d, "Fi24'", "3b").unwrap(), AlphaInterval::new(3, 3));
    assert_eq!(alpha_bound(&d, "M", "3a").unwrap(), AlphaInterval::new(2, 3));
}

fn verdict<'a>(rep: &'a TheoremReport, name: &str) -> &'a ClassVerdict {
    rep.verdicts.iter().find(|v| v.name == name).unwrap()
}

#[test]
fn theorem_examples() {
    let d = AlphaBoundData::sporadic();
    let t = table("J2");
    let rep = check_sporadic_theorem(&t, &d, 3, 7).unwrap();
    assert!(rep.passed());
    match &verdict(&rep, "2a").beta {
        BetaEvidence::Certificate { certificate } => assert_eq!(certificate.bound, BigUint::from(2u32)),
        other => panic!("{other:?}"),
    }
    for v in &rep.verdicts {
        match v.alpha {
            AlphaEvidence::Data { interval } => assert!(interval.hi <= 4),
            ref other => panic!("{other:?}"),
        }
    }

    let t = table("M12.2");
    let rep = check_sporadic_theorem(&t, &d, 5, 7).unwrap();
    assert!(rep.passed());
    let v = verdict(&rep, "2c");
    assert!(!v.in_socle);
    match &v.beta {
        BetaEvidence::Certificate { certificate } => assert_eq!(certificate.bound, BigUint::from(2u32)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn every_prime_order_class_once() {
    let d = AlphaBoundData::sporadic();
    for name in ["M11", "M12", "M12.2", "M22", "M22.2", "J2", "J2.2", "HS", "HS.2", "McL", "McL.2"] {
        let t = table(name);
        for r in [3, 5] {
            let rep = check_sporadic_theorem(&t, &d, r, 7).unwrap();
            assert!(rep.passed(), "{}", rep.render(&t));
            let mut seen: Vec<usize> = rep.verdicts.iter().map(|v| v.class).collect();
            seen.sort();
            let expected: Vec<usize> = (0..t.num_classes())
                .filter(|&c| bsradical::numtheory::is_prime(t.class(c).element_order))
                .collect();
            assert_eq!(seen, expected);
        }
    }
}

#[test]
fn small_s_fails_honestly() {
    // With s = 3 the alpha target is 2, which involutions cannot meet.
    let d = AlphaBoundData::sporadic();
    let t = table("M11");
    let rep = check_sporadic_theorem(&t, &d, 5, 3).unwrap();
    assert!(!rep.passed());
    assert!(!verdict(&rep, "2a").alpha_ok);
    assert!(rep.render(&t).contains("FAIL 2a"));
}

#[test]
fn theorem_preconditions() {
    let d = AlphaBoundData::sporadic();
    let t = table("M11");
    assert!(matches!(check_sporadic_theorem(&t, &d, 2, 7), Err(TheoremError::Precondition(_))));
    assert!(matches!(check_sporadic_theorem(&t, &d, 7, 11), Err(TheoremError::Precondition(_))));
    let t = table("A5");
    assert!(matches!(check_sporadic_theorem(&t, &d, 3, 7), Err(TheoremError::Alpha(_))));

    // An extension table whose outer flags were lost must be refused.
    let text = std::fs::read_to_string(fixture("M22.2.json")).unwrap().replace("\"in_socle\": false", "\"in_socle\": true");
    let flat = bsradical::chartable::parse_table(&text).unwrap();
    assert!(matches!(check_sporadic_theorem(&flat, &d, 3, 7), Err(TheoremError::MissingOuterFlags(_))));
}

/// Certificates on extension tables count G-conjugates; they bound β over
/// L-conjugates only if every inner class that gets squared is a single
/// L-class, which holds exactly when |C_G(x)| = 2|C_L(x)|. The terminal class
/// only has to contain an element of suitable order, so it may fuse.
#[test]
fn inner_links_on_extensions_are_single_socle_classes() {
    let d = AlphaBoundData::sporadic();
    for (ext, socle) in [("M12.2", "M12"), ("M22.2", "M22"), ("J2.2", "J2"), ("HS.2", "HS"), ("McL.2", "McL")] {
        let g = table(ext);
        let l = table(socle);
        let stable = |c: usize| {
            let info = g.class(c);
            !info.in_socle
                || l.class_by_name(&info.name).is_ok_and(|i| {
                    l.class(i).element_order == info.element_order
                        && &l.class(i).centralizer_order * 2u32 == info.centralizer_order
                })
        };
        for r in [3, 5] {
            let rep = check_sporadic_theorem(&g, &d, r, 7).unwrap();
            for v in &rep.verdicts {
                if let BetaEvidence::Certificate { certificate } = &v.beta {
                    for s in &certificate.steps {
                        assert!(stable(s.from), "{ext} {} r={r}: link {} fuses", v.name, g.class(s.from).name);
                    }
                }
            }
        }
    }
}
