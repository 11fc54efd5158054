//! Upper bounds on β_r(x, L) certified by chains of positive structure constants.
//!
//! If `m(a, a, b) > 0` then some element of `b` is a product of two conjugates
//! of `a`, so β_r(a) ≤ 2·β_r(b). Chaining `a → b → ... → t` with `r | |t|`
//! gives β_r(a) ≤ 2^(steps). The search is a breadth-first walk over classes
//! with edges `a → b` iff `m(a, a, b) > 0`.

mod alpha;
mod theorem;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::chartable::CharacterTable;
use crate::numtheory::is_prime;
use crate::structconst::{class_mult_coeff, coeff_sweep, CoefficientQuery, StructConstError};

pub use alpha::{alpha_bound, AlphaBoundData, AlphaError, AlphaInterval, SPORADIC_GROUPS};
pub use theorem::{
    check_sporadic_theorem, check_sporadic_theorem_with, AlphaEvidence, BetaEvidence, ClassVerdict, TheoremError, TheoremReport,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BetaError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{r} does not divide the group order {order}")]
    PrimeDoesNotDivide { r: u64, order: String },
    #[error("class index {0} out of range")]
    BadClass(usize),
    #[error("no certificate for class {class} and r = {r} ({explored} classes reachable)")]
    NoCertificate { class: String, r: u64, explored: usize },
    #[error(transparent)]
    StructConst(#[from] StructConstError),
}

/// One link `from → via`, asserting `m(from, from, via) = coefficient > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateStep {
    pub from: usize,
    pub via: usize,
    #[serde(serialize_with = "crate::serde_num::biguint")]
    pub coefficient: BigUint,
}

/// A chain proving β_r(start) ≤ bound = 2^(steps.len()).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BetaCertificate {
    pub prime: u64,
    pub start: usize,
    pub steps: Vec<CertificateStep>,
    pub terminal: usize,
    #[serde(serialize_with = "crate::serde_num::biguint")]
    pub bound: BigUint,
}

impl BetaCertificate {
    /// `bound` as a machine integer, when it fits.
    pub fn bound_u64(&self) -> Option<u64> {
        u64::try_from(&self.bound).ok()
    }

    /// Text form: one `step: from via coefficient` line per link, then `bound: 2^t`.
    pub fn render(&self, table: &CharacterTable) -> String {
        let mut out = String::new();
        for s in &self.steps {
            out.push_str(&format!(
                "step: {} {} {}\n",
                table.class(s.from).name,
                table.class(s.via).name,
                s.coefficient
            ));
        }
        out.push_str(&format!("bound: 2^{} = {}\n", self.steps.len(), self.bound));
        out
    }
}

fn divides(r: u64, order: u64) -> bool {
    order.is_multiple_of(r)
}

/// Finds a fewest-step certificate for β_r(x) by breadth-first search.
///
/// Among certificates of minimal length the one whose via-class sequence is
/// lexicographically smallest is returned, where classes of odd element order
/// precede classes of even order and ties follow table order. The identity
/// class is never used as a link. `max_depth` caps the number of steps.
pub fn beta_upper_bound(
    table: &CharacterTable,
    x: usize,
    r: u64,
    max_depth: Option<usize>,
) -> Result<BetaCertificate, BetaError> {
    if !is_prime(r) {
        return Err(BetaError::NotPrime(r));
    }
    if (table.group_order() % BigUint::from(r)) != BigUint::zero() {
        return Err(BetaError::PrimeDoesNotDivide { r, order: table.group_order().to_string() });
    }
    let n = table.num_classes();
    if x >= n {
        return Err(BetaError::BadClass(x));
    }
    let order_of = |c: usize| table.class(c).element_order;
    let via_key = |c: usize| (order_of(c) % 2 == 0, c);
    if divides(r, order_of(x)) {
        return Ok(BetaCertificate { prime: r, start: x, steps: vec![], terminal: x, bound: BigUint::one() });
    }
    let identity = table.identity_class();
    let mut visited = vec![false; n];
    let mut parent: Vec<Option<(usize, BigUint)>> = vec![None; n];
    visited[x] = true;
    if let Some(id) = identity {
        visited[id] = true;
    }
    let mut explored = 1;
    let mut level = vec![x];
    let max_depth = max_depth.unwrap_or(n);
    for _ in 0..max_depth {
        let mut next = Vec::new();
        for &a in &level {
            let mut sweep = coeff_sweep(table, a, a)?;
            sweep.sort_by_key(|(b, _)| via_key(*b));
            for (b, m) in sweep {
                if !visited[b] && !m.is_zero() {
                    visited[b] = true;
                    parent[b] = Some((a, m));
                    next.push(b);
                }
            }
        }
        explored += next.len();
        if let Some(&t) = next.iter().find(|&&b| divides(r, order_of(b))) {
            let mut steps = Vec::new();
            let mut cur = t;
            while let Some((from, m)) = parent[cur].clone() {
                steps.push(CertificateStep { from, via: cur, coefficient: m });
                cur = from;
            }
            steps.reverse();
            let bound = BigUint::one() << steps.len();
            return Ok(BetaCertificate { prime: r, start: x, steps, terminal: t, bound });
        }
        if next.is_empty() {
            break;
        }
        level = next;
    }
    Err(BetaError::NoCertificate { class: table.class(x).name.clone(), r, explored })
}

/// Re-checks every invariant of a certificate, recomputing each coefficient.
pub fn verify_certificate(table: &CharacterTable, cert: &BetaCertificate) -> bool {
    let n = table.num_classes();
    let r = cert.prime;
    if !is_prime(r) || cert.start >= n || cert.terminal >= n {
        return false;
    }
    if !divides(r, table.class(cert.terminal).element_order) {
        return false;
    }
    if cert.bound != BigUint::one() << cert.steps.len() {
        return false;
    }
    if cert.steps.is_empty() {
        return cert.terminal == cert.start;
    }
    let identity = table.identity_class();
    let mut expected_from = cert.start;
    for s in &cert.steps {
        if s.from != expected_from || s.via >= n || Some(s.via) == identity || s.coefficient.is_zero() {
            return false;
        }
        match class_mult_coeff(table, CoefficientQuery::new(s.from, s.from, s.via)) {
            Ok(m) if m == s.coefficient => {}
            _ => return false,
        }
        expected_from = s.via;
    }
    expected_from == cert.terminal
}
