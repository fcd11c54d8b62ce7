//! Claim records and report serialization. A record captures one checked
//! identity with both sides rendered as exact scalars; reports serialize to
//! text, JSON, and CSV with byte-stable output.

use crate::ratmat::Q;
use num_traits::One;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Renders an exact rational: integers bare, everything else as "p/q".
pub fn q_str(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GroupKey {
    pub family: String,
    pub rank: usize,
    pub center: usize,
}

impl GroupKey {
    /// Stable short label: `-sc` for the identity element, `-adj` for the
    /// nontrivial element of a two-element center, `-c<i>` otherwise.
    pub fn label(&self, center_order_total: i64) -> String {
        let suffix = if self.center == 0 {
            "sc".to_string()
        } else if center_order_total == 2 {
            "adj".to_string()
        } else {
            format!("c{}", self.center)
        };
        format!("{}{}-{}", self.family, self.rank, suffix)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimRecord {
    pub id: String,
    pub anchor: String,
    pub group: GroupKey,
    pub params: BTreeMap<String, String>,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip)]
    pub statement: String,
}

impl ClaimRecord {
    pub fn text_line(&self) -> String {
        let mut s = format!(
            "{}: {} \u{2192} {} = {}",
            self.id, self.statement, self.lhs, self.rhs
        );
        if !self.pass {
            s.push_str("  FAIL");
            if let Some(w) = &self.witness {
                s.push_str(&format!("  ({w})"));
            }
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    /// Set when fail-fast truncated the sweep at a failing claim.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub halted_at: Option<String>,
    pub records: Vec<ClaimRecord>,
}

impl VerificationReport {
    pub fn new(records: Vec<ClaimRecord>, halted_at: Option<String>) -> Self {
        let total = records.len();
        let passed = records.iter().filter(|r| r.pass).count();
        VerificationReport {
            total,
            passed,
            failed: total - passed,
            halted_at,
            records,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.records {
            s.push_str(&r.text_line());
            s.push('\n');
        }
        if let Some(h) = &self.halted_at {
            let _ = writeln!(s, "halted after first failure: {h}");
        }
        let _ = writeln!(
            s,
            "claims: {} total, {} passed, {} failed",
            self.total, self.passed, self.failed
        );
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("id,anchor,family,rank,center,params,lhs,rhs,pass,witness\n");
        for r in &self.records {
            let params = r
                .params
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(";");
            let row = [
                r.id.clone(),
                r.anchor.clone(),
                r.group.family.clone(),
                r.group.rank.to_string(),
                r.group.center.to_string(),
                params,
                r.lhs.clone(),
                r.rhs.clone(),
                r.pass.to_string(),
                r.witness.clone().unwrap_or_default(),
            ];
            let escaped: Vec<String> = row.iter().map(|f| csv_escape(f)).collect();
            s.push_str(&escaped.join(","));
            s.push('\n');
        }
        s
    }
}

fn csv_escape(f: &str) -> String {
    if f.contains(',') || f.contains('"') || f.contains('\n') {
        format!("\"{}\"", f.replace('"', "\"\""))
    } else {
        f.to_string()
    }
}
