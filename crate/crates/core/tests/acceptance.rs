//! Acceptance suite: one PASS/FAIL/SKIP line per criterion, each within its
//! time budget. Exits nonzero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bsradical::betachain::{beta_upper_bound, verify_certificate};
use bsradical::chartable::validate;
use bsradical::cli::{run, Status};
use bsradical::cyclo::Cyclotomic;
use bsradical::permgroup::*;
use bsradical::structconst::coefficient_cube;
use common::{fixture, table, TABLES};

const SPORADIC: [&str; 11] = ["M11", "M12", "M12.2", "M22", "M22.2", "J2", "J2.2", "HS", "HS.2", "McL", "McL.2"];

/// Name, time budget in seconds, check.
type Criterion = (&'static str, u64, fn() -> Outcome);

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

fn cli(argv: &[&str]) -> bsradical::cli::Outcome {
    run(std::iter::once("bsradical").chain(argv.iter().copied()))
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

fn group(name: &str) -> PermGroup {
    PermGroup::load(fixture("groups").join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// `cmc` through the command line; the value on success.
fn cmc(file: &str, a: &str, b: &str, c: &str) -> Result<String, String> {
    let out = cli(&["cmc", file, a, b, c]);
    match out.report.status {
        Status::Pass => Ok(out.stdout.trim().to_string()),
        _ => Err(out.stderr.trim().to_string()),
    }
}

fn check_values(rows: &[(&str, &str, &str, &str, &str)]) -> Result<usize, String> {
    let mut bad = Vec::new();
    for &(t, a, b, c, want) in rows {
        match cmc(&path(t), a, b, c) {
            Ok(got) if got == want => {}
            Ok(got) => bad.push(format!("{t} m({a},{b},{c}) = {got}, expected {want}")),
            Err(e) => bad.push(format!("{t} m({a},{b},{c}): {e}")),
        }
    }
    if bad.is_empty() { Ok(rows.len()) } else { Err(bad.join("; ")) }
}

fn c1_printed_values() -> Outcome {
    let rows = [
        ("J2", "2a", "2a", "3b", "3"),
        ("J2.2", "2c", "2c", "3b", "18"),
        ("J2.2", "3b", "3b", "5a", "825"),
        ("M12.2", "2c", "2c", "3b", "18"),
        ("M12.2", "2c", "2c", "5a", "10"),
        ("M22.2", "2b", "2b", "3a", "3"),
        ("M22.2", "3a", "3a", "5a", "500"),
        ("M22.2", "2c", "2c", "3a", "9"),
        ("M22.2", "2c", "2c", "5a", "5"),
        ("HS.2", "2c", "2c", "3a", "3"),
        ("HS.2", "3a", "3a", "5a", "50"),
        ("HS.2", "2d", "2d", "3a", "75"),
        ("HS.2", "2d", "2d", "5a", "100"),
        ("McL.2", "2b", "2b", "3a", "810"),
    ];
    match check_values(&rows) {
        Ok(n) => Outcome::Pass(format!("{n} printed coefficients reproduced exactly")),
        Err(e) => Outcome::Fail(e),
    }
}

/// Large tables are not shipped; rows run only for tables placed in
/// fixtures/user/.
fn c2_large_tables() -> Outcome {
    let rows: [(&str, &str, &str, &str, &str); 28] = [
        ("M", "2a", "2a", "3a", "920808"),
        ("M", "2b", "2b", "3a", "17060302448280"),
        ("B", "2a", "2a", "3a", "3"),
        ("Co2", "2a", "2a", "3b", "3"),
        ("Fi22", "2a", "2a", "3a", "3"),
        ("Fi22", "3a", "3a", "5a", "5"),
        ("J3.2", "2b", "2b", "3a", "90"),
        ("J3.2", "3a", "3a", "5a", "55"),
        ("He.2", "2c", "2c", "3a", "378"),
        ("He.2", "2c", "2c", "5a", "50"),
        ("ON.2", "2b", "2b", "3a", "108"),
        ("ON.2", "2b", "2b", "5a", "60"),
        ("HN.2", "2c", "2c", "3a", "3972"),
        ("HN.2", "2c", "2c", "5a", "5250"),
        ("Fi22.2", "2d", "2d", "3c", "3"),
        ("Fi22.2", "3c", "3c", "5a", "32100"),
        ("Fi22.2", "2e", "2e", "3a", "13608"),
        ("Fi22.2", "2e", "2e", "5a", "80"),
        ("F3+.2", "2c", "2c", "3a", "3"),
        ("F3+.2", "3a", "3a", "5a", "5"),
        ("F3+.2", "2d", "2d", "3a", "46484685"),
        ("F3+.2", "2d", "2d", "5a", "6480"),
        ("Suz.2", "2c", "2c", "3a", "1620"),
        ("Suz.2", "2c", "2c", "5b", "5"),
        ("Suz.2", "2c", "2c", "7a", "7"),
        ("Suz.2", "2d", "2d", "3a", "13608"),
        ("Suz.2", "2d", "2d", "5a", "180"),
        ("Suz.2", "2d", "2d", "7a", "21"),
    ];
    let present = |t: &str| {
        let p = fixture("user").join(t);
        p.exists() || p.with_file_name(format!("{t}.json")).exists()
    };
    let rows: Vec<(String, &str, &str, &str, &str)> =
        rows.iter().filter(|r| present(r.0)).map(|&(t, a, b, c, v)| (format!("user/{t}"), a, b, c, v)).collect();
    if rows.is_empty() {
        return Outcome::Skip("no user-supplied tables in fixtures/user/".into());
    }
    let borrowed: Vec<(&str, &str, &str, &str, &str)> =
        rows.iter().map(|(t, a, b, c, v)| (t.as_str(), *a, *b, *c, *v)).collect();
    match check_values(&borrowed) {
        Ok(n) => Outcome::Pass(format!("{n} rows checked on user tables")),
        Err(e) => Outcome::Fail(e),
    }
}

fn c3_certificates() -> Outcome {
    for (t, class, r, want) in [("J2", "2a", "3", "2"), ("M22.2", "2b", "5", "4"), ("HS.2", "2c", "5", "4"), ("J2.2", "2c", "5", "4")] {
        let out = cli(&["beta", &path(t), "--class", class, "--prime", r]);
        let got = out.report.results["bound"].to_string();
        if out.report.status != Status::Pass || got != want {
            return Outcome::Fail(format!("{t} {class} r={r}: bound {got}, expected {want}"));
        }
    }
    let (mut emitted, mut faults) = (0, 0);
    for name in TABLES {
        let t = table(name);
        for r in [2u64, 3, 5, 7, 11] {
            if t.group_order() % BigUint::from(r) != BigUint::ZERO {
                continue;
            }
            for x in 0..t.num_classes() {
                if Some(x) == t.identity_class() {
                    continue;
                }
                let Ok(cert) = beta_upper_bound(&t, x, r, None) else { continue };
                emitted += 1;
                if !verify_certificate(&t, &cert) {
                    return Outcome::Fail(format!("{name} {} r={r}: certificate rejected", t.class(x).name));
                }
                for i in 0..cert.steps.len() {
                    for delta in [-1i32, 1] {
                        let mut bad = cert.clone();
                        let c = &mut bad.steps[i].coefficient;
                        if delta < 0 {
                            *c -= 1u32;
                        } else {
                            *c += 1u32;
                        }
                        faults += 1;
                        if verify_certificate(&t, &bad) {
                            return Outcome::Fail(format!("{name}: fault in step {i} accepted"));
                        }
                    }
                }
            }
        }
    }
    Outcome::Pass(format!("4 bounds reproduced; {emitted} certificates verified; {faults} faults rejected"))
}

fn c4_theorem() -> Outcome {
    let alpha = path("alpha_sporadic.json");
    let mut runs = 0;
    for name in SPORADIC {
        for r in ["3", "5"] {
            let out = cli(&["check-theorem", &path(name), "--alpha", &alpha, "--r", r, "--s", "7"]);
            if out.report.status != Status::Pass {
                return Outcome::Fail(format!("{name} r={r}: {}{}", out.stdout, out.stderr));
            }
            runs += 1;
        }
    }
    Outcome::Pass(format!("{runs} runs over {} sporadic tables at r in {{3,5}}, s=7", SPORADIC.len()))
}

fn c5_validation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for name in TABLES {
        let t = table(name);
        let rep = validate(&t);
        if !rep.all_passed() {
            return Outcome::Fail(format!("{name}:\n{rep}"));
        }
        for _ in 0..50 {
            let row = rng.gen_range(0..t.num_classes());
            let col = rng.gen_range(0..t.num_classes());
            let delta = [-2i64, -1, 1, 2][rng.gen_range(0..4)];
            let v = t.value(row, col).checked_add(&Cyclotomic::from(delta)).expect("small conductor");
            if validate(&t.with_entry(row, col, v)).all_passed() {
                return Outcome::Fail(format!("{name}: perturbed entry ({row},{col}) by {delta} still validates"));
            }
        }
    }
    Outcome::Pass(format!("{} tables validate; {} perturbations all rejected", TABLES.len(), 50 * TABLES.len()))
}

fn c6_oracle_equivalence() -> Outcome {
    let mut triples = 0;
    for name in ["A5", "S5", "A6", "PSL2_7", "M11"] {
        let g = group(name);
        let e = g.elements().expect("small group");
        let t = table(name);
        let cl = conjugacy_classes(e);
        let map = match match_classes(e, &cl, &t) {
            Ok(m) => m,
            Err(err) => return Outcome::Fail(format!("{name}: {err}")),
        };
        let cube = coefficient_cube(&t).expect("valid table");
        for a in 0..cl.len() {
            for b in 0..cl.len() {
                for c in 0..cl.len() {
                    let brute = brute_force_cmc(e, &cl[a], &cl[b], cl[c].representative);
                    if cube[map[a]][map[b]][map[c]] != BigUint::from(brute) {
                        return Outcome::Fail(format!("{name} ({},{},{}): {brute}", cl[a].label, cl[b].label, cl[c].label));
                    }
                    triples += 1;
                }
            }
        }
    }
    Outcome::Pass(format!("{triples} class triples agree"))
}

fn c7_counting_identity() -> Outcome {
    let mut pairs = 0;
    for name in TABLES {
        let t = table(name);
        let cube = match coefficient_cube(&t) {
            Ok(c) => c,
            Err(e) => return Outcome::Fail(format!("{name}: {e}")),
        };
        let size = |c: usize| t.class_size(c).to_integer().to_biguint().expect("positive size");
        for a in 0..t.num_classes() {
            for b in 0..t.num_classes() {
                let lhs: BigUint = (0..t.num_classes()).map(|c| &cube[a][b][c] * size(c)).sum();
                if lhs != size(a) * size(b) {
                    return Outcome::Fail(format!("{name} ({a},{b})"));
                }
                pairs += 1;
            }
        }
    }
    Outcome::Pass(format!("{pairs} pairs over {} tables; all coefficients nonnegative integers", TABLES.len()))
}

fn c8_radicals() -> Outcome {
    let groups = ["S3", "D8", "D10", "D12", "A4", "S3xC3", "F20", "F21", "S4", "SL2_3", "A5", "S5", "PSL2_7", "A6"];
    let sets = ["2", "3", "5", "7", "2,3", "2,5", "3,5", "3,7", "~2"];
    for name in groups {
        let g = group(name);
        let e = g.elements().expect("small group");
        let normals = normal_subgroups(e);
        for set in sets {
            let pi: PrimeSet = set.parse().expect("prime set");
            let r = pi_radical(e, &pi);
            let biggest = normals.iter().filter(|n| n.is_pi_group(&pi)).max_by_key(|n| n.order()).expect("trivial");
            if *biggest != r || !normals.iter().filter(|n| n.is_pi_group(&pi)).all(|n| n.is_subset_of(&r)) {
                return Outcome::Fail(format!("{name} pi={set}: radical order {} vs {}", r.order(), biggest.order()));
            }
        }
    }
    for (name, pi) in [("S4", "2"), ("A5", "2,3")] {
        let out = cli(&["bs-check", &path(&format!("groups/{name}")), "--pi", pi, "--m", "2", "--mode", "exhaustive"]);
        if out.report.status != Status::Pass {
            return Outcome::Fail(format!("bs-check {name} pi={pi} m=2:\n{}{}", out.stdout, out.stderr));
        }
    }
    Outcome::Pass(format!("{} groups x {} prime sets; bs-check S4 {{2}} and A5 {{2,3}} at m=2", groups.len(), sets.len()))
}

fn c9_beta_oracle() -> Outcome {
    let g = group("S5");
    let e = g.elements().expect("S5");
    let three = e.index_of(&Permutation::from_cycles(5, &[&[0, 1, 2]]).unwrap()).unwrap();
    let a5 = normal_closure(e, three);
    let t = e.index_of(&Permutation::from_cycles(5, &[&[0, 1]]).unwrap()).unwrap();
    match beta_oracle(e, &a5, t, 3, 4, &BsOptions::default()) {
        Ok(res) if res.k == Some(2) && res.exact => Outcome::Pass("beta_3((0,1), A5) = 2 = r-1, exact".into()),
        Ok(res) => Outcome::Fail(format!("got {res:?}")),
        Err(err) => Outcome::Fail(err.to_string()),
    }
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("printed coefficients via cmc", 10, c1_printed_values),
        ("large-table coefficients (optional)", 600, c2_large_tables),
        ("beta certificates, verification, faults", 5, c3_certificates),
        ("check-theorem on sporadic fixtures", 10, c4_theorem),
        ("table validation and perturbations", 30, c5_validation),
        ("brute-force cmc equals character formula", 120, c6_oracle_equivalence),
        ("counting identity and integrality", 60, c7_counting_identity),
        ("pi-radicals and bs-check", 300, c8_radicals),
        ("beta oracle on S5 over A5", 10, c9_beta_oracle),
    ];
    let mut failed = 0;
    for (i, (name, budget, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let over = took > Duration::from_secs(*budget);
        let (word, detail) = match outcome {
            Outcome::Pass(d) if over => ("FAIL", format!("{d}; over the {budget} s budget")),
            Outcome::Pass(d) => ("PASS", d),
            Outcome::Fail(d) => ("FAIL", d),
            Outcome::Skip(d) => ("SKIP", d),
        };
        if word == "FAIL" {
            failed += 1;
        }
        println!("{word} criterion {}: {name} [{:.2} s, budget {budget} s] {detail}", i + 1, took.as_secs_f64());
    }
    println!("acceptance: {} criteria, {failed} failed", criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
