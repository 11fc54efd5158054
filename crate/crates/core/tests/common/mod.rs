#![allow(dead_code)]

use std::path::PathBuf;

use bsradical::chartable::{load_table, CharacterTable};

pub const TABLES: [&str; 15] = [
    "A5", "S5", "A6", "PSL2_7", "M11", "M12", "M12.2", "M22", "M22.2", "J2", "J2.2", "HS", "HS.2", "McL", "McL.2",
];

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn table(name: &str) -> CharacterTable {
    load_table(fixture(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}
