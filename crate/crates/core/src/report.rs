//! Check records. A record passes exactly when its two sides render to the
//! same canonical string, so exact rationals compare by value.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Display;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckRecord {
    pub check: String,
    pub params: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl CheckRecord {
    pub fn new(check: &str, params: impl Into<String>, lhs: impl Display, rhs: impl Display) -> Self {
        let (lhs, rhs) = (lhs.to_string(), rhs.to_string());
        let pass = lhs == rhs;
        CheckRecord { check: check.into(), params: params.into(), lhs, rhs, pass }
    }

    /// Boolean property: passes when `holds` is true.
    pub fn property(check: &str, params: impl Into<String>, holds: bool) -> Self {
        Self::new(check, params, holds, true)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, r: CheckRecord) {
        self.records.push(r);
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    pub fn passed(&self) -> usize {
        self.records.iter().filter(|r| r.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.records.len() - self.passed()
    }

    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }
}

/// 0-based indices rendered 1-based, e.g. `{1,3}`.
pub fn index_set(idx: &[usize]) -> String {
    let parts: Vec<String> = idx.iter().map(|i| format!("{}", i + 1)).collect();
    format!("{{{}}}", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat;

    #[test]
    fn records_compare_canonical_values() {
        assert!(CheckRecord::new("x", "", rat(2, 4), rat(1, 2)).pass);
        assert!(!CheckRecord::new("x", "", rat(1, 3), rat(1, 2)).pass);
        let mut r = Report::new();
        r.push(CheckRecord::property("p", "", true));
        r.push(CheckRecord::property("q", "", false));
        assert_eq!((r.passed(), r.failed(), r.all_pass()), (1, 1, false));
        assert_eq!(index_set(&[0, 2]), "{1,3}");
        assert_eq!(index_set(&[]), "{}");
    }
}
