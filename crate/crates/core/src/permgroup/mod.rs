//! Brute-force computations in small permutation groups, used as independent
//! oracles for the character-table side: conjugacy classes, normal closures,
//! π-radicals, class multiplication counts, β values and Baer–Suzuki width.
//!
//! Permutations act on `0..degree` and multiply left to right:
//! `(u·v)(i) = v(u(i))`. Conjugation is `x^g = g⁻¹ x g`.

mod classes;
mod elements;
mod oracle;
mod radical;

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::OnceLock;

use num_integer::Integer;
use serde::Deserialize;
use thiserror::Error;

use crate::numtheory::is_prime;

pub use classes::{brute_force_cmc, conjugacy_classes, match_classes, ConjugacyClass};
pub use elements::{generate_elements, Closure, ElementTable, Subgroup};
pub use oracle::{
    beta_oracle, beta_oracle_with, bs_width_check, bs_width_check_with, BetaOracleResult, BsClassResult, BsMode,
    BsOptions, BsReport, BsStatus,
};
pub use radical::{normal_closure, normal_closure_of, normal_subgroups, pi_radical};

/// Default closure cap.
pub const DEFAULT_MAX_ELEMENTS: usize = 1_000_000;
/// Default number of tuples a search may evaluate.
pub const DEFAULT_MAX_TUPLES: u64 = 1_000_000;

#[derive(Debug, Error)]
pub enum PermError {
    #[error("not a permutation of 0..{degree}: {images:?}")]
    NotBijection { degree: usize, images: Vec<u32> },
    #[error("generators of degrees {expected} and {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("group has more than {cap} elements")]
    CapExceeded { cap: usize },
    #[error("exhaustive search over class {class} needs {needed} tuples, above the cap {cap}")]
    CombinatorialBlowup { class: String, needed: String, cap: u64 },
    #[error("{r} does not divide |L| = {order}")]
    PrimeDoesNotDivide { r: u64, order: usize },
    #[error("bad prime set: {0}")]
    PrimeSet(String),
    #[error("unknown class {0:?}")]
    UnknownClass(String),
    #[error("cannot match group classes to the table: {0}")]
    ClassMatch(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("group file: {0}")]
    Parse(String),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            match seen.get_mut(i as usize) {
                Some(s) if !*s => *s = true,
                _ => return Err(PermError::NotBijection { degree: n, images }),
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    /// Builds a permutation from disjoint cycles on `0..degree`.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self, PermError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for c in cycles {
            for (k, &p) in c.iter().enumerate() {
                let slot = images
                    .get_mut(p as usize)
                    .ok_or_else(|| PermError::Parse(format!("point {p} outside 0..{degree}")))?;
                *slot = c[(k + 1) % c.len()];
            }
        }
        Permutation::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.images[i as usize]
    }

    /// `self` then `other`.
    pub fn mul(&self, other: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&i| other.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start as u32;
            while !seen[p as usize] {
                seen[p as usize] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(u32::to_string).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A set of primes, possibly co-finite ("every prime except ...").
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeSet {
    primes: BTreeSet<u64>,
    complement: bool,
}

impl PrimeSet {
    pub fn new(primes: impl IntoIterator<Item = u64>) -> Result<Self, PermError> {
        Self::build(primes.into_iter().collect(), false)
    }

    /// All primes except those listed.
    pub fn all_except(primes: impl IntoIterator<Item = u64>) -> Result<Self, PermError> {
        Self::build(primes.into_iter().collect(), true)
    }

    fn build(primes: BTreeSet<u64>, complement: bool) -> Result<Self, PermError> {
        if let Some(p) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(PermError::PrimeSet(format!("{p} is not prime")));
        }
        if primes.is_empty() && !complement {
            return Err(PermError::PrimeSet("empty prime set".into()));
        }
        Ok(PrimeSet { primes, complement })
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.contains(&p) != self.complement
    }

    /// Whether every prime factor of `n` lies in the set.
    pub fn is_pi_number(&self, n: u64) -> bool {
        crate::numtheory::prime_divisors(n).into_iter().all(|p| self.contains(p))
    }
}

/// `"2,3"` or, for a complement, `"~5"` (every prime but 5).
impl FromStr for PrimeSet {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, PermError> {
        let (body, complement) = match s.trim().strip_prefix('~') {
            Some(rest) => (rest, true),
            None => (s.trim(), false),
        };
        let primes = body
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u64>().map_err(|_| PermError::PrimeSet(format!("not an integer: {t:?}"))))
            .collect::<Result<BTreeSet<_>, _>>()?;
        Self::build(primes, complement)
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list: Vec<String> = self.primes.iter().map(u64::to_string).collect();
        write!(f, "{}{{{}}}", if self.complement { "~" } else { "" }, list.join(","))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupFile {
    name: String,
    degree: usize,
    generators: Vec<Vec<u32>>,
}

/// A permutation group given by generators; elements are enumerated on first use.
#[derive(Debug)]
pub struct PermGroup {
    name: String,
    degree: usize,
    generators: Vec<Permutation>,
    max_elements: usize,
    elements: OnceLock<ElementTable>,
}

impl PermGroup {
    pub fn new(name: impl Into<String>, degree: usize, generators: Vec<Permutation>) -> Result<Self, PermError> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch { expected: degree, found: g.degree() });
        }
        Ok(PermGroup {
            name: name.into(),
            degree,
            generators,
            max_elements: DEFAULT_MAX_ELEMENTS,
            elements: OnceLock::new(),
        })
    }

    pub fn with_max_elements(mut self, cap: usize) -> Self {
        self.max_elements = cap;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// The enumerated elements, generated on the first call.
    pub fn elements(&self) -> Result<&ElementTable, PermError> {
        if let Some(t) = self.elements.get() {
            return Ok(t);
        }
        let mut gens = self.generators.clone();
        if gens.is_empty() {
            gens.push(Permutation::identity(self.degree));
        }
        let table = generate_elements(&gens, self.max_elements)?;
        Ok(self.elements.get_or_init(|| table))
    }

    pub fn order(&self) -> Result<usize, PermError> {
        Ok(self.elements()?.order())
    }

    pub fn parse(text: &str) -> Result<Self, PermError> {
        let f: GroupFile = serde_json::from_str(text).map_err(|e| PermError::Parse(e.to_string()))?;
        let generators = f.generators.into_iter().map(Permutation::new).collect::<Result<Vec<_>, _>>()?;
        PermGroup::new(f.name, f.degree, generators)
    }

    /// Reads a group file, trying `path.json` when `path` does not exist.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, PermError> {
        let path = crate::chartable::resolve_path(path.as_ref());
        let text = std::fs::read_to_string(&path)
            .map_err(|source| PermError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }
}
