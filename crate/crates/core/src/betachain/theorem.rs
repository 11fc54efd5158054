//! Class-by-class check of the β/α bounds for a sporadic socle L ≤ G ≤ Aut(L).
//!
//! For each class x of prime order two claims are checked:
//! β_r(x) ≤ 3 when r = 3 and β_r(x) ≤ r − 1 when r > 3, and α(x) ≤ s − 1.
//! Inner classes use the α data first (β ≤ α) and certificates second.
//! Outer involutions use certificates on the extension table, and bound α
//! through an inverted element y of odd prime order: α(x) ≤ 2·α(y).
//!
//! On an extension table the coefficients count G-conjugates. An outer
//! involution class is a single L-class, but an inner class squared along a
//! certificate must also be one (|C_G(x)| = 2|C_L(x)|) for the step to bound
//! β over L-conjugates. The table format carries no fusion data, so this is
//! the caller's responsibility; it holds for every shipped extension table.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use super::alpha::{alpha_bound, AlphaBoundData, AlphaError, AlphaInterval};
use super::{beta_upper_bound, BetaCertificate, BetaError};
use crate::chartable::CharacterTable;
use crate::numtheory::is_prime;
use crate::par::{self, Exec};
use crate::structconst::{coeff_sweep, StructConstError};

#[derive(Debug, Error)]
pub enum TheoremError {
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("table {0} looks like an extension but marks no class as outer")]
    MissingOuterFlags(String),
    #[error("missing alpha data: {0}")]
    Alpha(#[from] AlphaError),
    #[error(transparent)]
    Beta(BetaError),
    #[error(transparent)]
    StructConst(#[from] StructConstError),
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum BetaEvidence {
    /// β ≤ α ≤ hi.
    Alpha { hi: u32 },
    Certificate { certificate: BetaCertificate },
    Failed { reason: String, certificate: Option<BetaCertificate> },
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum AlphaEvidence {
    Data { interval: AlphaInterval },
    /// x inverts an element of class `via`, so α(x) ≤ 2·α(via).
    Inversion {
        via: usize,
        via_name: String,
        #[serde(serialize_with = "crate::serde_num::biguint")]
        coefficient: BigUint,
        via_interval: AlphaInterval,
        bound: u32,
    },
    Failed { reason: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassVerdict {
    pub class: usize,
    pub name: String,
    pub element_order: u64,
    pub in_socle: bool,
    pub beta: BetaEvidence,
    pub alpha: AlphaEvidence,
    pub beta_ok: bool,
    pub alpha_ok: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub group: String,
    pub socle: String,
    pub r: u64,
    pub s: u64,
    pub beta_target: u64,
    pub alpha_target: u64,
    pub verdicts: Vec<ClassVerdict>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }
}

/// Name of the simple socle: the table name itself, or with the `.2` suffix removed.
fn socle_name(table: &CharacterTable) -> Result<String, TheoremError> {
    let name = table.group_name();
    match (table.has_outer_classes(), name.strip_suffix(".2")) {
        (true, Some(base)) => Ok(base.to_string()),
        (true, None) => Err(TheoremError::Precondition(format!(
            "table {name} has outer classes but its name does not end in .2"
        ))),
        (false, Some(_)) => Err(TheoremError::MissingOuterFlags(name.to_string())),
        (false, None) => Ok(name.to_string()),
    }
}

pub fn check_sporadic_theorem(
    table: &CharacterTable,
    data: &AlphaBoundData,
    r: u64,
    s: u64,
) -> Result<TheoremReport, TheoremError> {
    check_sporadic_theorem_with(table, data, r, s, Exec::default())
}

pub fn check_sporadic_theorem_with(
    table: &CharacterTable,
    data: &AlphaBoundData,
    r: u64,
    s: u64,
    exec: Exec,
) -> Result<TheoremReport, TheoremError> {
    if r == 2 || !is_prime(r) {
        return Err(TheoremError::Precondition(format!("r = {r} must be an odd prime")));
    }
    if !is_prime(s) {
        return Err(TheoremError::Precondition(format!("s = {s} must be a prime")));
    }
    let socle = socle_name(table)?;
    let socle_order = table.socle_order();
    if !socle_order.is_integer() || !(socle_order.numer() % r as i64).is_zero() {
        return Err(TheoremError::Precondition(format!("{r} does not divide |{socle}| = {socle_order}")));
    }
    if !data.contains_group(&socle) {
        return Err(AlphaError::UnknownGroup(socle).into());
    }
    let beta_target = if r == 3 { 3 } else { r - 1 };
    let alpha_target = s - 1;
    let prime_classes: Vec<usize> =
        (0..table.num_classes()).filter(|&c| is_prime(table.class(c).element_order)).collect();

    let verdicts = par::map(exec, &prime_classes, |&x| {
        verdict(table, data, &socle, x, r, beta_target, alpha_target)
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;

    Ok(TheoremReport { group: table.group_name().to_string(), socle, r, s, beta_target, alpha_target, verdicts })
}

fn certificate_evidence(table: &CharacterTable, x: usize, r: u64, target: u64) -> Result<BetaEvidence, TheoremError> {
    match beta_upper_bound(table, x, r, None) {
        Ok(c) if c.bound_u64().is_some_and(|b| b <= target) => Ok(BetaEvidence::Certificate { certificate: c }),
        Ok(c) => Ok(BetaEvidence::Failed {
            reason: format!("shortest certificate bound {} exceeds {target}", c.bound),
            certificate: Some(c),
        }),
        Err(e @ BetaError::NoCertificate { .. }) => Ok(BetaEvidence::Failed { reason: e.to_string(), certificate: None }),
        Err(e) => Err(TheoremError::Beta(e)),
    }
}

fn verdict(
    table: &CharacterTable,
    data: &AlphaBoundData,
    socle: &str,
    x: usize,
    r: u64,
    beta_target: u64,
    alpha_target: u64,
) -> Result<ClassVerdict, TheoremError> {
    let info = table.class(x);
    let (beta, alpha) = if info.in_socle {
        let interval = alpha_bound(data, socle, &info.name)?;
        let beta = if u64::from(interval.hi) <= beta_target {
            BetaEvidence::Alpha { hi: interval.hi }
        } else {
            certificate_evidence(table, x, r, beta_target)?
        };
        (beta, AlphaEvidence::Data { interval })
    } else {
        let beta = certificate_evidence(table, x, r, beta_target)?;
        let alpha = if info.element_order != 2 {
            AlphaEvidence::Failed { reason: "outer class of odd prime order".into() }
        } else {
            inversion_evidence(table, data, socle, x)?
        };
        (beta, alpha)
    };
    let beta_ok = matches!(beta, BetaEvidence::Alpha { .. } | BetaEvidence::Certificate { .. });
    let alpha_ok = match &alpha {
        AlphaEvidence::Data { interval } => u64::from(interval.hi) <= alpha_target,
        AlphaEvidence::Inversion { bound, .. } => u64::from(*bound) <= alpha_target,
        AlphaEvidence::Failed { .. } => false,
    };
    Ok(ClassVerdict {
        class: x,
        name: info.name.clone(),
        element_order: info.element_order,
        in_socle: info.in_socle,
        beta,
        alpha,
        beta_ok,
        alpha_ok,
        pass: beta_ok && alpha_ok,
    })
}

/// The product of two conjugates of an involution x is inverted by x. Any socle
/// class y of odd prime order with m(x, x, y) > 0 therefore gives α(x) ≤ 2·α(y);
/// the smallest such bound is kept (first in table order on ties).
fn inversion_evidence(
    table: &CharacterTable,
    data: &AlphaBoundData,
    socle: &str,
    x: usize,
) -> Result<AlphaEvidence, TheoremError> {
    let mut best: Option<AlphaEvidence> = None;
    let mut best_bound = u32::MAX;
    for (y, m) in coeff_sweep(table, x, x)? {
        let c = table.class(y);
        if m.is_zero() || !c.in_socle || c.element_order == 2 || !is_prime(c.element_order) {
            continue;
        }
        let via_interval = alpha_bound(data, socle, &c.name)?;
        let bound = 2 * via_interval.hi;
        if bound < best_bound {
            best_bound = bound;
            best = Some(AlphaEvidence::Inversion {
                via: y,
                via_name: c.name.clone(),
                coefficient: m,
                via_interval,
                bound,
            });
        }
    }
    Ok(best.unwrap_or(AlphaEvidence::Failed { reason: "no inverted socle class of odd prime order".into() }))
}

impl BetaEvidence {
    fn describe(&self, table: &CharacterTable) -> String {
        let chain = |c: &BetaCertificate| {
            if c.steps.is_empty() {
                format!("{} has order divisible by r", table.class(c.start).name)
            } else {
                c.steps
                    .iter()
                    .map(|s| format!("m({0},{0},{1})={2}", table.class(s.from).name, table.class(s.via).name, s.coefficient))
                    .collect::<Vec<_>>()
                    .join(" ")
            }
        };
        match self {
            BetaEvidence::Alpha { hi } => format!("beta<={hi} via alpha data"),
            BetaEvidence::Certificate { certificate } => {
                format!("beta<={} via certificate {}", certificate.bound, chain(certificate))
            }
            BetaEvidence::Failed { reason, .. } => format!("beta unproven: {reason}"),
        }
    }
}

impl fmt::Display for AlphaEvidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaEvidence::Data { interval } => write!(f, "alpha in {interval}"),
            AlphaEvidence::Inversion { via_name, coefficient, via_interval, bound, .. } => write!(
                f,
                "alpha<={bound} via inverted {via_name} (m={coefficient}, alpha({via_name}) in {via_interval})"
            ),
            AlphaEvidence::Failed { reason } => write!(f, "alpha unproven: {reason}"),
        }
    }
}

impl TheoremReport {
    /// One line per class plus a header and a summary line.
    pub fn render(&self, table: &CharacterTable) -> String {
        let mut out = format!(
            "theorem check {} (socle {}) r={} s={}: beta target {}, alpha target {}\n",
            self.group, self.socle, self.r, self.s, self.beta_target, self.alpha_target
        );
        for v in &self.verdicts {
            out.push_str(&format!(
                "{} {}{}: {}; {}\n",
                if v.pass { "PASS" } else { "FAIL" },
                v.name,
                if v.in_socle { "" } else { " (outer)" },
                v.beta.describe(table),
                v.alpha
            ));
        }
        let failed = self.verdicts.iter().filter(|v| !v.pass).count();
        out.push_str(&format!(
            "overall: {} ({} classes, {} failed)\n",
            if failed == 0 { "PASS" } else { "FAIL" },
            self.verdicts.len(),
            failed
        ));
        out
    }
}
