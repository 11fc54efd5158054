//! Exact character-theoretic certificates for Baer–Suzuki width problems on
//! sporadic groups, with brute-force permutation-group oracles to check them.

pub mod cyclo;
mod serde_num;
pub mod numtheory;
pub mod par;
pub mod chartable;
pub mod structconst;
pub mod betachain;
pub mod permgroup;
pub mod cli;
