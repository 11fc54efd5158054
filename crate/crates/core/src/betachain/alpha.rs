//! Known values of α(x, L) for the sporadic simple groups.
//!
//! α(x, L) is the least number of L-conjugates of x generating ⟨L, x⟩. It is
//! 2 for non-involutions and 3 for involutions apart from a short list of
//! exceptions, and the Monster has its own ranges. The data file stores the
//! defaults and every exception explicitly:
//!
//! ```text
//! { "schema": 1,
//!   "groups": ["M11", ...],
//!   "defaults": {"involution": [3, 3], "non_involution": [2, 2]},
//!   "group_defaults": {"M": {"involution": [3, 4], "non_involution": [2, 3]}},
//!   "entries": {"J2/3a": [3, 3], ...} }
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const SPORADIC_GROUPS: [&str; 26] = [
    "M11", "M12", "J1", "M22", "J2", "M23", "HS", "J3", "M24", "McL", "He", "Ru", "Suz", "O'N", "Co3",
    "Co2", "Fi22", "HN", "Ly", "Th", "Fi23", "Co1", "J4", "Fi24'", "B", "M",
];

#[derive(Debug, Error)]
pub enum AlphaError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("alpha data: {0}")]
    Format(String),
    #[error("no alpha data for group {0:?}")]
    UnknownGroup(String),
    #[error("{group}: {class:?} is not a nonidentity class label")]
    UnknownClass { group: String, class: String },
}

/// A closed range `lo ≤ α ≤ hi`. Serialized as `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "[u32; 2]", into = "[u32; 2]")]
pub struct AlphaInterval {
    pub lo: u32,
    pub hi: u32,
}

impl AlphaInterval {
    pub fn new(lo: u32, hi: u32) -> Self {
        assert!(1 <= lo && lo <= hi, "bad interval [{lo},{hi}]");
        AlphaInterval { lo, hi }
    }
}

impl TryFrom<[u32; 2]> for AlphaInterval {
    type Error = String;
    fn try_from([lo, hi]: [u32; 2]) -> Result<Self, String> {
        if 1 <= lo && lo <= hi {
            Ok(AlphaInterval { lo, hi })
        } else {
            Err(format!("interval [{lo}, {hi}] needs 1 <= lo <= hi"))
        }
    }
}

impl From<AlphaInterval> for [u32; 2] {
    fn from(i: AlphaInterval) -> Self {
        [i.lo, i.hi]
    }
}

impl fmt::Display for AlphaInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DefaultRule {
    pub involution: AlphaInterval,
    pub non_involution: AlphaInterval,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlphaBoundData {
    pub schema: u32,
    pub groups: Vec<String>,
    pub defaults: DefaultRule,
    #[serde(default)]
    pub group_defaults: BTreeMap<String, DefaultRule>,
    /// Keyed `"Group/class"`.
    pub entries: BTreeMap<String, AlphaInterval>,
}

/// Element order encoded in an ATLAS label: the leading digits of `"12a"`.
fn label_order(label: &str) -> Option<u64> {
    let digits = label.len() - label.trim_start_matches(|c: char| c.is_ascii_digit()).len();
    let (num, suffix) = label.split_at(digits);
    if suffix.is_empty() || !suffix.chars().all(|c| c.is_ascii_alphabetic()) {
        return None;
    }
    num.parse().ok()
}

impl AlphaBoundData {
    /// The values for all 26 sporadic groups.
    pub fn sporadic() -> Self {
        let iv = AlphaInterval::new;
        let mut entries = BTreeMap::new();
        for key in [
            "J2/3a", "HS/4a", "McL/3a", "Ly/3a", "Co1/3a", "Fi22/3a", "Fi23/3a", "Fi23/3b", "Fi24'/3a",
            "Fi24'/3b",
        ] {
            entries.insert(key.to_string(), iv(3, 3));
        }
        entries.insert("Fi22/3b".into(), iv(2, 3));
        entries.insert("Suz/3a".into(), iv(3, 4));
        for key in ["J2/2a", "Co2/2a", "B/2a"] {
            entries.insert(key.to_string(), iv(4, 4));
        }
        for key in ["Fi22/2a", "Fi23/2a"] {
            entries.insert(key.to_string(), iv(5, 6));
        }
        let mut group_defaults = BTreeMap::new();
        group_defaults.insert("M".into(), DefaultRule { involution: iv(3, 4), non_involution: iv(2, 3) });
        AlphaBoundData {
            schema: 1,
            groups: SPORADIC_GROUPS.iter().map(|s| s.to_string()).collect(),
            defaults: DefaultRule { involution: iv(3, 3), non_involution: iv(2, 2) },
            group_defaults,
            entries,
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self, AlphaError> {
        let data: AlphaBoundData = serde_json::from_str(text).map_err(|e| AlphaError::Format(e.to_string()))?;
        if data.schema != 1 {
            return Err(AlphaError::Format(format!("unsupported schema {}", data.schema)));
        }
        for g in data.group_defaults.keys() {
            if !data.contains_group(g) {
                return Err(AlphaError::Format(format!("group_defaults names unlisted group {g:?}")));
            }
        }
        for key in data.entries.keys() {
            let Some((g, c)) = key.rsplit_once('/') else {
                return Err(AlphaError::Format(format!("entry key {key:?} is not Group/class")));
            };
            if !data.contains_group(g) {
                return Err(AlphaError::Format(format!("entry {key:?} names unlisted group")));
            }
            if !matches!(label_order(c), Some(o) if o > 1) {
                return Err(AlphaError::Format(format!("entry {key:?} has a bad class label")));
            }
        }
        Ok(data)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, AlphaError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|source| AlphaError::Io { path: path.display().to_string(), source })?;
        Self::from_json_str(&text)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn contains_group(&self, group: &str) -> bool {
        self.groups.iter().any(|g| g == group)
    }
}

/// The α interval for class `x` of the simple group `group`.
pub fn alpha_bound(data: &AlphaBoundData, group: &str, x: &str) -> Result<AlphaInterval, AlphaError> {
    if !data.contains_group(group) {
        return Err(AlphaError::UnknownGroup(group.to_string()));
    }
    let unknown = || AlphaError::UnknownClass { group: group.to_string(), class: x.to_string() };
    let order = label_order(x).filter(|&o| o > 1).ok_or_else(unknown)?;
    let key = format!("{group}/{}", x.to_ascii_lowercase());
    if let Some(iv) = data.entries.get(&key) {
        return Ok(*iv);
    }
    let rule = data.group_defaults.get(group).unwrap_or(&data.defaults);
    Ok(if order == 2 { rule.involution } else { rule.non_involution })
}
