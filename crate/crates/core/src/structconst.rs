//! Class multiplication coefficients from a character table.
//!
//! For classes `a`, `b` and a fixed `z ∈ c`, the number of pairs
//! `(u, v) ∈ a^G × b^G` with `uv = z` is
//!
//! ```text
//! m(a,b,c) = |a^G| |b^G| / |G| · Σ_χ χ(a) χ(b) conj(χ(c)) / χ(1)
//! ```
//!
//! The character sum is accumulated exactly; the result must be a
//! nonnegative rational integer, and anything else means the table is corrupt.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::chartable::CharacterTable;
use crate::cyclo::{CycloError, Cyclotomic};
use crate::par::{self, Exec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructConstError {
    #[error("class index {index} out of range for a table with {classes} classes")]
    BadIndex { index: usize, classes: usize },
    #[error("table has no identity class, so degrees are unknown")]
    NoIdentityClass,
    #[error("table corruption: m({a},{b},{c}) evaluates to {value}, not a nonnegative integer")]
    TableCorruption { a: String, b: String, c: String, value: String },
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

/// A triple of class indices into one table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CoefficientQuery {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl CoefficientQuery {
    pub fn new(a: usize, b: usize, c: usize) -> Self {
        CoefficientQuery { a, b, c }
    }
}

fn check_index(table: &CharacterTable, i: usize) -> Result<(), StructConstError> {
    if i < table.num_classes() {
        Ok(())
    } else {
        Err(StructConstError::BadIndex { index: i, classes: table.num_classes() })
    }
}

/// Per-character weights χ(a)χ(b)/χ(1) for a fixed `(a, b)`, shared across a sweep.
struct PairWeights {
    a: usize,
    b: usize,
    weights: Vec<Cyclotomic>,
    prefactor: BigRational,
}

impl PairWeights {
    fn new(table: &CharacterTable, a: usize, b: usize) -> Result<Self, StructConstError> {
        check_index(table, a)?;
        check_index(table, b)?;
        let id = table.identity_class().ok_or(StructConstError::NoIdentityClass)?;
        let weights = (0..table.num_classes())
            .map(|row| {
                let deg = table.value(row, id).as_rational().filter(|d| !d.is_zero());
                let Some(deg) = deg else {
                    return Err(StructConstError::TableCorruption {
                        a: table.class(a).name.clone(),
                        b: table.class(b).name.clone(),
                        c: "*".into(),
                        value: format!("degree of irreducible {row} is {}", table.value(row, id)),
                    });
                };
                let prod = table.value(row, a).checked_mul(table.value(row, b))?;
                Ok(prod.scale(&deg.recip()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let order = BigRational::from_integer(BigInt::from(table.group_order().clone()));
        let prefactor = table.class_size(a) * table.class_size(b) / order;
        Ok(PairWeights { a, b, weights, prefactor })
    }

    fn coefficient(&self, table: &CharacterTable, c: usize) -> Result<BigUint, StructConstError> {
        check_index(table, c)?;
        let sum = Cyclotomic::sum_of_products(
            self.weights.iter().enumerate().map(|(row, w)| (w, table.conj_value(row, c))),
        )?;
        let value = sum.scale(&self.prefactor);
        value
            .as_integer()
            .filter(|m| !m.is_negative())
            .map(|m| m.to_biguint().expect("nonnegative"))
            .ok_or_else(|| StructConstError::TableCorruption {
                a: table.class(self.a).name.clone(),
                b: table.class(self.b).name.clone(),
                c: table.class(c).name.clone(),
                value: value.to_string(),
            })
    }
}

/// m(a, b, c) for one triple.
pub fn class_mult_coeff(table: &CharacterTable, q: CoefficientQuery) -> Result<BigUint, StructConstError> {
    PairWeights::new(table, q.a, q.b)?.coefficient(table, q.c)
}

/// m(a, b, c) for every class `c`, in table order (zeros included).
pub fn coeff_sweep(table: &CharacterTable, a: usize, b: usize) -> Result<Vec<(usize, BigUint)>, StructConstError> {
    let w = PairWeights::new(table, a, b)?;
    (0..table.num_classes())
        .map(|c| w.coefficient(table, c).map(|m| (c, m)))
        .collect()
}

/// Every coefficient of the table, indexed `[a][b][c]`.
pub fn coefficient_cube(table: &CharacterTable) -> Result<Vec<Vec<Vec<BigUint>>>, StructConstError> {
    coefficient_cube_with(table, Exec::default())
}

pub fn coefficient_cube_with(
    table: &CharacterTable,
    exec: Exec,
) -> Result<Vec<Vec<Vec<BigUint>>>, StructConstError> {
    let n = table.num_classes();
    let flat = par::try_map_range(exec, n * n, |ab| {
        coeff_sweep(table, ab / n, ab % n).map(|s| s.into_iter().map(|(_, m)| m).collect::<Vec<_>>())
    })?;
    let mut it = flat.into_iter();
    Ok((0..n).map(|_| it.by_ref().take(n).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartable::parse_table;

    const S3: &str = r#"{"group": "S3", "order": 6,
      "classes": [
        {"name": "1a", "order": 1, "centralizer": 6, "in_socle": true},
        {"name": "2a", "order": 2, "centralizer": 2, "in_socle": true},
        {"name": "3a", "order": 3, "centralizer": 3, "in_socle": true}],
      "irreducibles": [[1, 1, 1], [1, -1, 1], [2, 0, -1]]}"#;

    #[test]
    fn s3_by_hand() {
        // Transpositions (12),(13),(23): each 3-cycle is a product of exactly
        // three ordered pairs of transpositions; the identity of three.
        let t = parse_table(S3).unwrap();
        let m = |a, b, c| class_mult_coeff(&t, CoefficientQuery::new(a, b, c)).unwrap();
        assert_eq!(m(1, 1, 2), BigUint::from(3u32));
        assert_eq!(m(1, 1, 0), BigUint::from(3u32));
        assert_eq!(m(1, 1, 1), BigUint::from(0u32));
        assert_eq!(m(2, 2, 2), BigUint::from(1u32));
        assert_eq!(m(0, 0, 0), BigUint::from(1u32));
    }

    #[test]
    fn corruption_detected() {
        // χ_3(2a) = 1 instead of 0 gives m(2a,2a,3a) = 9/6 · (1 + 1 - 1/2) = 9/4.
        let t = parse_table(S3).unwrap().with_entry(2, 1, Cyclotomic::from_integer(1));
        let err = class_mult_coeff(&t, CoefficientQuery::new(1, 1, 2)).unwrap_err();
        assert!(matches!(err, StructConstError::TableCorruption { .. }), "{err}");
    }

    #[test]
    fn bad_index() {
        let t = parse_table(S3).unwrap();
        assert!(matches!(
            class_mult_coeff(&t, CoefficientQuery::new(0, 0, 3)),
            Err(StructConstError::BadIndex { index: 3, classes: 3 })
        ));
    }
}
