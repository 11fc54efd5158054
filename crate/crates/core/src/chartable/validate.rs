use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::CharacterTable;
use crate::cyclo::Cyclotomic;
use crate::par::{self, Exec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    IdentityClass,
    CentralizersDivideOrder,
    ElementOrdersDivideOrder,
    DegreesArePositiveIntegers,
    DegreeSquareSum,
    ClassSizeSum,
    RowOrthogonality,
    ColumnOrthogonality,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CheckKind::IdentityClass => "identity class",
            CheckKind::CentralizersDivideOrder => "centralizer orders divide |G|",
            CheckKind::ElementOrdersDivideOrder => "element orders divide |G|",
            CheckKind::DegreesArePositiveIntegers => "degrees are positive integers",
            CheckKind::DegreeSquareSum => "sum of squared degrees = |G|",
            CheckKind::ClassSizeSum => "sum of class sizes = |G|",
            CheckKind::RowOrthogonality => "row orthogonality",
            CheckKind::ColumnOrthogonality => "column orthogonality",
        };
        f.write_str(s)
    }
}

/// Outcome of one invariant. `offenders` holds the row or class indices
/// involved in each violation (pairs for the orthogonality checks).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub kind: CheckKind,
    pub passed: bool,
    pub offenders: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub group: String,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, kind: CheckKind) -> Option<&Check> {
        self.checks.iter().find(|c| c.kind == kind)
    }
}

fn check(kind: CheckKind, offenders: Vec<Vec<usize>>) -> Check {
    Check { kind, passed: offenders.is_empty(), offenders }
}

pub fn validate(table: &CharacterTable) -> ValidationReport {
    validate_with(table, Exec::default())
}

pub fn validate_with(table: &CharacterTable, exec: Exec) -> ValidationReport {
    let n = table.num_classes();
    let order = BigRational::from_integer(BigInt::from(table.group_order().clone()));
    let mut checks = Vec::new();

    let identity = table
        .classes()
        .iter()
        .position(|c| c.name == "1a")
        .filter(|&i| {
            table.class(i).element_order == 1 && &table.class(i).centralizer_order == table.group_order()
        });
    checks.push(check(
        CheckKind::IdentityClass,
        if identity.is_some() { vec![] } else { vec![vec![]] },
    ));

    let bad_cent = (0..n)
        .filter(|&i| !table.class_size(i).is_integer())
        .map(|i| vec![i])
        .collect();
    checks.push(check(CheckKind::CentralizersDivideOrder, bad_cent));

    let bad_orders = (0..n)
        .filter(|&i| {
            let o = BigInt::from(table.class(i).element_order);
            !(order.numer() % &o).is_zero()
        })
        .map(|i| vec![i])
        .collect();
    checks.push(check(CheckKind::ElementOrdersDivideOrder, bad_orders));

    let degrees: Vec<Option<BigInt>> = (0..n)
        .map(|row| {
            identity
                .and_then(|c| table.value(row, c).as_integer())
                .filter(|d| d.is_positive())
        })
        .collect();
    let bad_degrees = degrees
        .iter()
        .enumerate()
        .filter(|(_, d)| d.is_none())
        .map(|(i, _)| vec![i])
        .collect();
    checks.push(check(CheckKind::DegreesArePositiveIntegers, bad_degrees));

    let square_sum = degrees
        .iter()
        .try_fold(BigInt::zero(), |acc, d| d.as_ref().map(|d| acc + d * d));
    let square_ok = square_sum.is_some_and(|s| BigRational::from_integer(s) == order);
    checks.push(check(CheckKind::DegreeSquareSum, if square_ok { vec![] } else { vec![vec![]] }));

    let size_sum = (0..n).fold(BigRational::zero(), |acc, i| acc + table.class_size(i));
    checks.push(check(
        CheckKind::ClassSizeSum,
        if size_sum == order { vec![] } else { vec![vec![]] },
    ));

    // Row orthogonality: Σ_c |c| χ(c) conj(ψ(c)) = |G| δ.
    let scaled: Vec<Vec<Cyclotomic>> = par::map_range(exec, n, |row| {
        (0..n).map(|c| table.value(row, c).scale(table.class_size(c))).collect()
    });
    let row_bad: Vec<Vec<Vec<usize>>> = par::map_range(exec, n, |i| {
        (i..n)
            .filter(|&j| {
                let pairs = (0..n).map(|c| (&scaled[i][c], table.conj_value(j, c)));
                let expected = if i == j { order.clone() } else { BigRational::zero() };
                !matches!(Cyclotomic::sum_of_products(pairs), Ok(v) if v.as_rational() == Some(expected.clone()))
            })
            .map(|j| vec![i, j])
            .collect()
    });
    checks.push(check(CheckKind::RowOrthogonality, row_bad.into_iter().flatten().collect()));

    // Column orthogonality: Σ_χ χ(a) conj(χ(b)) = δ |C_G(a)|.
    let col_bad: Vec<Vec<Vec<usize>>> = par::map_range(exec, n, |a| {
        (a..n)
            .filter(|&b| {
                let pairs = (0..n).map(|row| (table.value(row, a), table.conj_value(row, b)));
                let expected = if a == b {
                    BigRational::from_integer(BigInt::from(table.class(a).centralizer_order.clone()))
                } else {
                    BigRational::zero()
                };
                !matches!(Cyclotomic::sum_of_products(pairs), Ok(v) if v.as_rational() == Some(expected.clone()))
            })
            .map(|b| vec![a, b])
            .collect()
    });
    checks.push(check(CheckKind::ColumnOrthogonality, col_bad.into_iter().flatten().collect()));

    ValidationReport { group: table.group_name().to_string(), checks }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "table {}", self.group)?;
        for c in &self.checks {
            write!(f, "{} {}", if c.passed { "PASS" } else { "FAIL" }, c.kind)?;
            let shown: Vec<String> = c
                .offenders
                .iter()
                .filter(|o| !o.is_empty())
                .take(10)
                .map(|o| format!("{o:?}"))
                .collect();
            if !shown.is_empty() {
                write!(f, " offenders: {}", shown.join(" "))?;
                if c.offenders.len() > shown.len() {
                    write!(f, " (+{} more)", c.offenders.len() - shown.len())?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
