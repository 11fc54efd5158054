//! Tuple searches: β_r by brute force and the Baer–Suzuki width property.
//!
//! Both ask whether some tuple of conjugates generates a subgroup whose order
//! has a given prime divisor. By Cauchy's theorem that happens exactly when the
//! subgroup contains an element of order divisible by that prime, so each
//! closure stops at the first such element.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{conjugacy_classes, pi_radical, Closure, ElementTable, PermError, PrimeSet, Subgroup};
use crate::par::{self, Exec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BsMode {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, Debug)]
pub struct BsOptions {
    /// Largest number of tuples an exhaustive search may need.
    pub max_tuples: u64,
    /// Tuples drawn per class (or per k) when sampling.
    pub samples: u64,
    pub seed: u64,
}

impl Default for BsOptions {
    fn default() -> Self {
        BsOptions { max_tuples: super::DEFAULT_MAX_TUPLES, samples: 10_000, seed: 0 }
    }
}

struct SearchOutcome {
    witness: Option<Vec<usize>>,
    evaluated: u64,
    exhaustive: bool,
}

fn stream_seed(seed: u64, salt: u64) -> u64 {
    seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Looks for `(first, y_2, ..., y_len)` with every `y_i ∈ pool` whose closure
/// reaches an element satisfying `stop`. Exhaustive (in lexicographic order)
/// when the tuple count fits `samples`; sampled otherwise.
fn search_tuples(
    g: &ElementTable,
    first: usize,
    pool: &[usize],
    len: usize,
    stop: &(dyn Fn(usize) -> bool + Sync),
    samples: u64,
    seed: u64,
) -> SearchOutcome {
    let free = len - 1;
    let hits = |tuple: &[usize]| matches!(g.closure_until(tuple, stop), Closure::Found(_));
    let total = tuple_count(pool.len(), free);
    if total.is_some_and(|t| t <= samples) {
        let total = total.expect("checked");
        let mut tuple = vec![first; len];
        for code in 0..total {
            let mut rest = code;
            for slot in tuple[1..].iter_mut().rev() {
                *slot = pool[(rest % pool.len() as u64) as usize];
                rest /= pool.len() as u64;
            }
            if hits(&tuple) {
                return SearchOutcome { witness: Some(tuple), evaluated: code + 1, exhaustive: true };
            }
        }
        return SearchOutcome { witness: None, evaluated: total, exhaustive: true };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tuple = vec![first; len];
    for n in 0..samples {
        for slot in tuple[1..].iter_mut() {
            *slot = pool[rng.gen_range(0..pool.len())];
        }
        if hits(&tuple) {
            return SearchOutcome { witness: Some(tuple), evaluated: n + 1, exhaustive: false };
        }
    }
    SearchOutcome { witness: None, evaluated: samples, exhaustive: false }
}

/// `base^exp`, or `None` on overflow.
fn tuple_count(base: usize, exp: usize) -> Option<u64> {
    (base as u64).checked_pow(exp as u32)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BetaOracleResult {
    /// Least k found, if any k ≤ k_max works.
    pub k: Option<usize>,
    /// The generating tuple for `k`, first entry `x`.
    pub witness: Option<Vec<usize>>,
    /// True when every smaller k (all k ≤ k_max if none was found) was ruled
    /// out exhaustively, so `k` is exactly β_r(x, L).
    pub exact: bool,
    pub tuples_evaluated: u64,
}

/// β_r(x, L) by search: the least k such that some k conjugates of x under L
/// generate a subgroup of order divisible by r. The first conjugate is x itself,
/// which loses nothing since the tuple may be conjugated by L. For k ≥ 3 the
/// search is exhaustive when |x^L|^(k−1) ≤ `opts.max_tuples` and seeded sampling
/// of `opts.samples` tuples otherwise.
pub fn beta_oracle(
    g: &ElementTable,
    l: &Subgroup,
    x: usize,
    r: u64,
    k_max: usize,
    opts: &BsOptions,
) -> Result<BetaOracleResult, PermError> {
    beta_oracle_with(g, l, x, r, k_max, opts, Exec::default())
}

pub fn beta_oracle_with(
    g: &ElementTable,
    l: &Subgroup,
    x: usize,
    r: u64,
    k_max: usize,
    opts: &BsOptions,
    exec: Exec,
) -> Result<BetaOracleResult, PermError> {
    if r < 2 || !(l.order() as u64).is_multiple_of(r) {
        return Err(PermError::PrimeDoesNotDivide { r, order: l.order() });
    }
    let stop = |e: usize| g.element_order(e).is_multiple_of(r);
    let mut exact = true;
    let mut evaluated = 0;
    if k_max >= 1 && stop(x) {
        return Ok(BetaOracleResult { k: Some(1), witness: Some(vec![x]), exact, tuples_evaluated: 0 });
    }
    let mut conjugates: Vec<usize> = l.elements().iter().map(|&h| g.conj(x, h)).collect();
    conjugates.sort_unstable();
    conjugates.dedup();

    if k_max >= 2 {
        let found = par::map(exec, &conjugates, |&y| matches!(g.closure_until(&[x, y], stop), Closure::Found(_)));
        evaluated += conjugates.len() as u64;
        if let Some(i) = found.iter().position(|&f| f) {
            let witness = vec![x, conjugates[i]];
            return Ok(BetaOracleResult { k: Some(2), witness: Some(witness), exact, tuples_evaluated: evaluated });
        }
    }
    for k in 3..=k_max {
        let fits = tuple_count(conjugates.len(), k - 1).is_some_and(|t| t <= opts.max_tuples);
        let budget = if fits { opts.max_tuples } else { opts.samples };
        let out = search_tuples(g, x, &conjugates, k, &stop, budget, stream_seed(opts.seed, k as u64));
        evaluated += out.evaluated;
        if out.witness.is_some() {
            return Ok(BetaOracleResult { k: Some(k), witness: out.witness, exact, tuples_evaluated: evaluated });
        }
        exact &= out.exhaustive;
    }
    Ok(BetaOracleResult { k: None, witness: None, exact, tuples_evaluated: evaluated })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum BsStatus {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct BsClassResult {
    pub label: String,
    pub size: usize,
    pub element_order: u64,
    pub in_radical: bool,
    /// A tuple from the class generating a subgroup that is not a π-group.
    pub witness: Option<Vec<String>>,
    pub exhaustive: bool,
    pub tuples_evaluated: u64,
    pub status: BsStatus,
}

#[derive(Clone, Debug, Serialize)]
pub struct BsReport {
    pub pi: String,
    pub m: usize,
    pub mode: BsMode,
    pub seed: u64,
    pub group_order: usize,
    pub radical_order: usize,
    pub classes: Vec<BsClassResult>,
    pub status: BsStatus,
}

/// Checks, class by class, that a class D lies in O_π(G) exactly when no
/// m-tuple from D generates a group that is not a π-group.
///
/// A witness inside O_π is a contradiction and fails. A class outside O_π
/// without a witness fails after an exhaustive search and is inconclusive
/// after sampling.
pub fn bs_width_check(
    g: &ElementTable,
    pi: &PrimeSet,
    m: usize,
    mode: BsMode,
    opts: &BsOptions,
) -> Result<BsReport, PermError> {
    bs_width_check_with(g, pi, m, mode, opts, Exec::default())
}

pub fn bs_width_check_with(
    g: &ElementTable,
    pi: &PrimeSet,
    m: usize,
    mode: BsMode,
    opts: &BsOptions,
    exec: Exec,
) -> Result<BsReport, PermError> {
    let m = m.max(1);
    let classes = conjugacy_classes(g);
    if mode == BsMode::Exhaustive {
        for c in &classes {
            if tuple_count(c.size(), m - 1).is_none_or(|t| t > opts.max_tuples) {
                return Err(PermError::CombinatorialBlowup {
                    class: c.label.clone(),
                    needed: format!("{}^{}", c.size(), m - 1),
                    cap: opts.max_tuples,
                });
            }
        }
    }
    let radical = pi_radical(g, pi);
    let stop = |e: usize| !pi.is_pi_number(g.element_order(e));
    let budget = match mode {
        BsMode::Exhaustive => opts.max_tuples,
        BsMode::Sampled => opts.samples.min(opts.max_tuples),
    };
    let indexed: Vec<(usize, &super::ConjugacyClass)> = classes.iter().enumerate().collect();
    let results = par::map(exec, &indexed, |&(i, c)| {
        let in_radical = radical.contains(c.representative);
        let out = search_tuples(g, c.representative, &c.elements, m, &stop, budget, stream_seed(opts.seed, i as u64));
        let status = match (&out.witness, in_radical) {
            (Some(_), true) => BsStatus::Fail,
            (None, false) if out.exhaustive => BsStatus::Fail,
            (None, false) => BsStatus::Inconclusive,
            _ => BsStatus::Pass,
        };
        BsClassResult {
            label: c.label.clone(),
            size: c.size(),
            element_order: c.element_order,
            in_radical,
            witness: out.witness.map(|t| t.iter().map(|&e| g.perm(e).to_string()).collect()),
            exhaustive: out.exhaustive,
            tuples_evaluated: out.evaluated,
            status,
        }
    });
    let status = if results.iter().any(|r| r.status == BsStatus::Fail) {
        BsStatus::Fail
    } else if results.iter().any(|r| r.status == BsStatus::Inconclusive) {
        BsStatus::Inconclusive
    } else {
        BsStatus::Pass
    };
    Ok(BsReport {
        pi: pi.to_string(),
        m,
        mode,
        seed: opts.seed,
        group_order: g.order(),
        radical_order: radical.order(),
        classes: results,
        status,
    })
}
