//! The `bsradical` command line. Every command produces a [`RunReport`]; the
//! text form is for people and `--format json` for scripts.
//!
//! Exit codes: 0 PASS, 1 FAIL, 2 ERROR, 3 INCONCLUSIVE.

use std::ffi::OsString;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};

use crate::betachain::{beta_upper_bound, check_sporadic_theorem, verify_certificate, AlphaBoundData, BetaError};
use crate::chartable::{load_table, validate, CharacterTable};
use crate::permgroup::{
    brute_force_cmc, bs_width_check, conjugacy_classes, pi_radical, BsMode, BsOptions, BsStatus, ElementTable,
    PermGroup, PrimeSet,
};
use crate::structconst::{class_mult_coeff, coeff_sweep, CoefficientQuery};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
            Status::Inconclusive => 3,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub status: Status,
}

/// What the process should print and return.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: RunReport,
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "bsradical", version, about = "Character-table certificates and permutation-group oracles")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Serialize)]
struct Global {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Seed for every sampled search.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Largest permutation group to enumerate.
    #[arg(long, default_value_t = crate::permgroup::DEFAULT_MAX_ELEMENTS, global = true)]
    max_elements: usize,
    /// Largest number of tuples a search may evaluate.
    #[arg(long, default_value_t = crate::permgroup::DEFAULT_MAX_TUPLES, global = true)]
    max_tuples: u64,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Check a character table against the orthogonality and counting identities.
    Validate { table: PathBuf },
    /// Class multiplication coefficient m(a,b,c); with --sweep, every nonzero m(a,b,·).
    Cmc {
        table: PathBuf,
        /// `a b c`, or `a b` with --sweep.
        #[arg(num_args = 2..=3, required = true)]
        classes: Vec<String>,
        #[arg(long)]
        sweep: bool,
    },
    /// Shortest certificate bounding β_r(x) by a chain of positive coefficients.
    Beta {
        table: PathBuf,
        #[arg(long)]
        class: String,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        max_depth: Option<usize>,
    },
    /// Check the β and α bounds for every prime-order class of a sporadic table.
    CheckTheorem {
        table: PathBuf,
        /// α data file; the built-in sporadic data when omitted.
        #[arg(long)]
        alpha: Option<PathBuf>,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        s: u64,
    },
    /// Order and generators of O_π(G).
    Radical {
        group: PathBuf,
        #[arg(long)]
        pi: String,
    },
    /// Compare class membership in O_π(G) with m-tuple generation.
    BsCheck {
        group: PathBuf,
        #[arg(long)]
        pi: String,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: ModeArg,
    },
    /// Brute-force count of pairs (u,v) in a×b with uv equal to the representative of c.
    OracleCmc {
        group: PathBuf,
        a: String,
        b: String,
        c: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum ModeArg {
    Exhaustive,
    Sampled,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Cmc { .. } => "cmc",
            Command::Beta { .. } => "beta",
            Command::CheckTheorem { .. } => "check-theorem",
            Command::Radical { .. } => "radical",
            Command::BsCheck { .. } => "bs-check",
            Command::OracleCmc { .. } => "oracle-cmc",
        }
    }
}

struct Done {
    results: Value,
    status: Status,
    text: String,
}

fn done(results: Value, status: Status, text: String) -> Result<Done> {
    Ok(Done { results, status, text })
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let informational =
                matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion);
            let status = if informational { Status::Pass } else { Status::Error };
            let report = RunReport {
                schema: 1,
                command: String::new(),
                inputs: json!({"argv": argv.iter().map(|a| a.to_string_lossy()).collect::<Vec<_>>()}),
                results: json!({"error": e.to_string()}),
                status,
            };
            let (stdout, stderr) = if informational { (e.to_string(), String::new()) } else { (String::new(), e.to_string()) };
            return Outcome { report, stdout, stderr, exit_code: if informational { 0 } else { 2 } };
        }
    };
    let inputs = json!({"global": &cli.global, "args": &cli.command});
    let command = cli.command.name().to_string();
    let format = cli.global.format;
    let (results, status, text, stderr) = match execute(&cli) {
        Ok(d) => (d.results, d.status, d.text, String::new()),
        Err(e) => {
            let msg = format!("{e:#}");
            (json!({"error": msg}), Status::Error, String::new(), format!("error: {msg}\n"))
        }
    };
    let report = RunReport { schema: 1, command, inputs, results, status };
    let stdout = match format {
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        Format::Text => text,
    };
    let stderr = if format == Format::Json { String::new() } else { stderr };
    Outcome { exit_code: status.exit_code(), report, stdout, stderr }
}

fn table(path: &PathBuf) -> Result<CharacterTable> {
    load_table(path).with_context(|| format!("loading table {}", path.display()))
}

fn class(t: &CharacterTable, name: &str) -> Result<usize> {
    t.class_by_name(name).with_context(|| format!("table {}", t.group_name()))
}

fn group(path: &PathBuf, global: &Global) -> Result<PermGroup> {
    let g = PermGroup::load(path).with_context(|| format!("loading group {}", path.display()))?;
    Ok(g.with_max_elements(global.max_elements))
}

fn num(n: &BigUint) -> Value {
    Value::Number(n.to_string().parse().expect("decimal digits"))
}

fn execute(cli: &Cli) -> Result<Done> {
    let g = &cli.global;
    match &cli.command {
        Command::Validate { table: path } => {
            let t = table(path)?;
            let rep = validate(&t);
            let status = if rep.all_passed() { Status::Pass } else { Status::Fail };
            done(serde_json::to_value(&rep)?, status, rep.to_string())
        }
        Command::Cmc { table: path, classes, sweep } => {
            let t = table(path)?;
            let idx = classes.iter().map(|c| class(&t, c)).collect::<Result<Vec<_>>>()?;
            match (*sweep, idx.as_slice()) {
                (false, &[a, b, c]) => {
                    let m = class_mult_coeff(&t, CoefficientQuery::new(a, b, c))?;
                    let results = json!({"a": classes[0], "b": classes[1], "c": classes[2], "value": num(&m)});
                    done(results, Status::Pass, format!("{m}\n"))
                }
                (true, &[a, b]) => {
                    let nonzero: Vec<(usize, BigUint)> =
                        coeff_sweep(&t, a, b)?.into_iter().filter(|(_, m)| *m != BigUint::ZERO).collect();
                    let text: String =
                        nonzero.iter().map(|(c, m)| format!("{} {}\n", t.class(*c).name, m)).collect();
                    let values: Vec<Value> =
                        nonzero.iter().map(|(c, m)| json!({"class": t.class(*c).name, "value": num(m)})).collect();
                    done(json!({"a": classes[0], "b": classes[1], "nonzero": values}), Status::Pass, text)
                }
                (false, _) => bail!("cmc takes three classes a b c (or two with --sweep)"),
                (true, _) => bail!("cmc --sweep takes two classes a b"),
            }
        }
        Command::Beta { table: path, class: name, prime, max_depth } => {
            let t = table(path)?;
            let x = class(&t, name)?;
            match beta_upper_bound(&t, x, *prime, *max_depth) {
                Ok(cert) => {
                    let verified = verify_certificate(&t, &cert);
                    let steps: Vec<Value> = cert
                        .steps
                        .iter()
                        .map(|s| {
                            json!({"from": t.class(s.from).name, "via": t.class(s.via).name, "coefficient": num(&s.coefficient)})
                        })
                        .collect();
                    let results = json!({
                        "prime": prime,
                        "start": t.class(cert.start).name,
                        "terminal": t.class(cert.terminal).name,
                        "steps": steps,
                        "bound": num(&cert.bound),
                        "verified": verified,
                    });
                    let status = if verified { Status::Pass } else { Status::Fail };
                    done(results, status, cert.render(&t))
                }
                Err(e @ BetaError::NoCertificate { .. }) => {
                    done(json!({"prime": prime, "start": name, "certificate": null, "reason": e.to_string()}), Status::Fail, format!("no certificate: {e}\n"))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::CheckTheorem { table: path, alpha, r, s } => {
            let t = table(path)?;
            let data = match alpha {
                Some(p) => AlphaBoundData::load(p).with_context(|| format!("loading alpha data {}", p.display()))?,
                None => AlphaBoundData::sporadic(),
            };
            let rep = check_sporadic_theorem(&t, &data, *r, *s)?;
            let status = if rep.passed() { Status::Pass } else { Status::Fail };
            done(serde_json::to_value(&rep)?, status, rep.render(&t))
        }
        Command::Radical { group: path, pi } => {
            let grp = group(path, g)?;
            let pi: PrimeSet = pi.parse()?;
            let e = grp.elements()?;
            let r = pi_radical(e, &pi);
            let gens: Vec<String> = generating_set(e, r.elements()).iter().map(|&x| e.perm(x).to_string()).collect();
            let text = format!(
                "group {} order {}\nO_pi for pi = {}: order {}\ngenerators: {}\n",
                grp.name(),
                e.order(),
                pi,
                r.order(),
                if gens.is_empty() { "none".to_string() } else { gens.join(" ") }
            );
            let results = json!({"group": grp.name(), "group_order": e.order(), "pi": pi.to_string(), "order": r.order(), "generators": gens});
            done(results, Status::Pass, text)
        }
        Command::BsCheck { group: path, pi, m, mode } => {
            let grp = group(path, g)?;
            let pi: PrimeSet = pi.parse()?;
            if *m == 0 {
                bail!("--m must be at least 1");
            }
            let mode = match mode {
                ModeArg::Exhaustive => BsMode::Exhaustive,
                ModeArg::Sampled => BsMode::Sampled,
            };
            let opts = BsOptions { max_tuples: g.max_tuples, seed: g.seed, ..BsOptions::default() };
            let rep = bs_width_check(grp.elements()?, &pi, *m, mode, &opts)?;
            let mut text = format!(
                "bs-check {} pi={} m={} mode={} seed={}: |G| = {}, |O_pi| = {}\n",
                grp.name(),
                rep.pi,
                rep.m,
                match rep.mode {
                    BsMode::Exhaustive => "exhaustive",
                    BsMode::Sampled => "sampled",
                },
                rep.seed,
                rep.group_order,
                rep.radical_order
            );
            for c in &rep.classes {
                let evidence = match &c.witness {
                    Some(w) => format!("witness {}", w.join(" ")),
                    None => format!(
                        "no witness in {} {} tuples",
                        c.tuples_evaluated,
                        if c.exhaustive { "exhaustive" } else { "sampled" }
                    ),
                };
                text.push_str(&format!(
                    "{} {} size {} {}: {evidence}\n",
                    bs_word(c.status),
                    c.label,
                    c.size,
                    if c.in_radical { "in O_pi" } else { "outside O_pi" },
                ));
            }
            text.push_str(&format!("overall: {}\n", bs_word(rep.status)));
            let status = match rep.status {
                BsStatus::Pass => Status::Pass,
                BsStatus::Fail => Status::Fail,
                BsStatus::Inconclusive => Status::Inconclusive,
            };
            done(serde_json::to_value(&rep)?, status, text)
        }
        Command::OracleCmc { group: path, a, b, c } => {
            let grp = group(path, g)?;
            let e = grp.elements()?;
            let classes = conjugacy_classes(e);
            let find = |label: &str| {
                classes
                    .iter()
                    .find(|k| k.label.eq_ignore_ascii_case(label))
                    .ok_or_else(|| anyhow!("group {} has no class {label:?}", grp.name()))
            };
            let (ka, kb, kc) = (find(a)?, find(b)?, find(c)?);
            let count = brute_force_cmc(e, ka, kb, kc.representative);
            let results = json!({
                "group": grp.name(), "a": ka.label, "b": kb.label, "c": kc.label,
                "c_representative": e.perm(kc.representative).to_string(), "value": count,
            });
            done(results, Status::Pass, format!("{count}\n"))
        }
    }
}

/// A small generating set for the subgroup with these elements, chosen greedily
/// in index order.
fn generating_set(e: &ElementTable, elements: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = e.closure(&gens);
    for &x in elements {
        if !span.contains(x) {
            gens.push(x);
            span = e.closure(&gens);
        }
    }
    gens
}

fn bs_word(s: BsStatus) -> &'static str {
    match s {
        BsStatus::Pass => "PASS",
        BsStatus::Fail => "FAIL",
        BsStatus::Inconclusive => "INCONCLUSIVE",
    }
}
