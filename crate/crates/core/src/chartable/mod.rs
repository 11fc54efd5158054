//! Character tables in ATLAS conventions: data model, file ingestion and
//! validation of the standard character-theoretic identities.

mod io;
mod validate;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::cyclo::{CycloError, Cyclotomic};
use crate::numtheory::lcm;

pub use io::{load_table, parse_table};
pub(crate) use io::resolve as resolve_path;
pub use validate::{validate, validate_with, Check, CheckKind, ValidationReport};

#[derive(Debug, Error)]
pub enum TableError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("duplicate class name {0:?}")]
    DuplicateClass(String),
    #[error("unknown class {0:?}")]
    UnknownClass(String),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

/// One conjugacy class column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    /// ATLAS-style label such as `"2a"`.
    pub name: String,
    pub element_order: u64,
    pub centralizer_order: BigUint,
    /// Whether the class lies in the simple socle `L` of `G ≤ Aut(L)`.
    pub in_socle: bool,
}

/// An ordinary character table. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    group_name: String,
    group_order: BigUint,
    classes: Vec<ClassInfo>,
    irreducibles: Vec<Vec<Cyclotomic>>,
    // derived
    conjugates: Vec<Vec<Cyclotomic>>,
    class_sizes: Vec<BigRational>,
}

impl CharacterTable {
    /// Builds a table after structural checks only (shape, names, nonzero orders).
    /// Mathematical consistency is the job of [`validate`].
    pub fn new(
        group_name: impl Into<String>,
        group_order: BigUint,
        classes: Vec<ClassInfo>,
        irreducibles: Vec<Vec<Cyclotomic>>,
    ) -> Result<Self, TableError> {
        if classes.is_empty() {
            return Err(TableError::DimensionMismatch("table has no classes".into()));
        }
        if group_order.is_zero() {
            return Err(TableError::Parse("group order must be positive".into()));
        }
        for (i, c) in classes.iter().enumerate() {
            if classes[..i].iter().any(|d| d.name == c.name) {
                return Err(TableError::DuplicateClass(c.name.clone()));
            }
            if c.element_order == 0 || c.centralizer_order.is_zero() {
                return Err(TableError::Parse(format!(
                    "class {}: element and centralizer orders must be positive",
                    c.name
                )));
            }
        }
        if irreducibles.len() != classes.len() {
            return Err(TableError::DimensionMismatch(format!(
                "{} irreducibles for {} classes",
                irreducibles.len(),
                classes.len()
            )));
        }
        for (i, row) in irreducibles.iter().enumerate() {
            if row.len() != classes.len() {
                return Err(TableError::DimensionMismatch(format!(
                    "irreducible {} has {} values, expected {}",
                    i,
                    row.len(),
                    classes.len()
                )));
            }
        }
        let conjugates = irreducibles
            .iter()
            .map(|row| row.iter().map(Cyclotomic::conj).collect())
            .collect();
        let order = BigInt::from(group_order.clone());
        let class_sizes = classes
            .iter()
            .map(|c| BigRational::new(order.clone(), BigInt::from(c.centralizer_order.clone())))
            .collect();
        Ok(CharacterTable {
            group_name: group_name.into(),
            group_order,
            classes,
            irreducibles,
            conjugates,
            class_sizes,
        })
    }

    pub fn group_name(&self) -> &str {
        &self.group_name
    }

    pub fn group_order(&self) -> &BigUint {
        &self.group_order
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &ClassInfo {
        &self.classes[i]
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn irreducibles(&self) -> &[Vec<Cyclotomic>] {
        &self.irreducibles
    }

    pub fn value(&self, row: usize, col: usize) -> &Cyclotomic {
        &self.irreducibles[row][col]
    }

    /// Complex conjugate of `value(row, col)`, precomputed.
    pub fn conj_value(&self, row: usize, col: usize) -> &Cyclotomic {
        &self.conjugates[row][col]
    }

    /// |G| / |C_G(x)|. Rational so that corrupt centralizer data stays representable.
    pub fn class_size(&self, col: usize) -> &BigRational {
        &self.class_sizes[col]
    }

    /// Index of the unique class with this label. Exact match wins; otherwise a
    /// unique ASCII-case-insensitive match is accepted.
    pub fn class_by_name(&self, name: &str) -> Result<usize, TableError> {
        if let Some(i) = self.classes.iter().position(|c| c.name == name) {
            return Ok(i);
        }
        let mut hits = self
            .classes
            .iter()
            .enumerate()
            .filter(|(_, c)| c.name.eq_ignore_ascii_case(name));
        match (hits.next(), hits.next()) {
            (Some((i, _)), None) => Ok(i),
            _ => Err(TableError::UnknownClass(name.to_string())),
        }
    }

    /// The identity class: element order 1 (normally labelled `1a`).
    pub fn identity_class(&self) -> Option<usize> {
        self.classes
            .iter()
            .position(|c| c.name == "1a" && c.element_order == 1)
            .or_else(|| self.classes.iter().position(|c| c.element_order == 1))
    }

    /// χ(1) for each irreducible, read off the identity column.
    pub fn degree(&self, row: usize) -> Option<&Cyclotomic> {
        self.identity_class().map(|c| &self.irreducibles[row][c])
    }

    /// Order of the socle, the sum of the sizes of all socle classes.
    pub fn socle_order(&self) -> BigRational {
        self.classes
            .iter()
            .zip(&self.class_sizes)
            .filter(|(c, _)| c.in_socle)
            .fold(BigRational::zero(), |acc, (_, s)| acc + s)
    }

    pub fn has_outer_classes(&self) -> bool {
        self.classes.iter().any(|c| !c.in_socle)
    }

    /// Smallest conductor containing every value in the column.
    pub fn column_conductor(&self, col: usize) -> u64 {
        self.irreducibles
            .iter()
            .fold(1, |acc, row| lcm(acc, row[col].conductor()))
    }

    /// A copy with one entry replaced; used for fault injection.
    pub fn with_entry(&self, row: usize, col: usize, value: Cyclotomic) -> CharacterTable {
        let mut t = self.clone();
        t.conjugates[row][col] = value.conj();
        t.irreducibles[row][col] = value;
        t
    }
}
