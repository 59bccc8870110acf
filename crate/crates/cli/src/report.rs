//! The theorem document emitted by `core-moments theorems`.

use std::fmt::Write as _;

use core_moments::FibExpr;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    VerifiedOnRange,
    ExactIdentity,
    Limit,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::VerifiedOnRange => "verified-on-range",
            Status::ExactIdentity => "exact-identity",
            Status::Limit => "limit",
        }
    }
}

/// Inclusive range of `s` or `k` an entry was checked on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckedRange {
    pub variable: String,
    pub start: usize,
    pub end: usize,
}

impl CheckedRange {
    pub fn s(start: usize, end: usize) -> Self {
        CheckedRange {
            variable: "s".into(),
            start,
            end,
        }
    }

    pub fn k(start: usize, end: usize) -> Self {
        CheckedRange {
            variable: "k".into(),
            start,
            end,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub claim: String,
    /// LaTeX rendering of the claim.
    pub latex: String,
    pub status: Status,
    pub range: CheckedRange,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expression: Option<FibExpr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool_version: String,
    pub entries: Vec<ReportEntry>,
}

const PREAMBLE: &str = "Moments of the size X_s of a uniformly random (s,s+1)-core partition with distinct parts.\n\
F[n] denotes the Fibonacci numbers with F[1] = F[2] = 1.\n\
Each identity below was checked exactly on the stated range only. The moment sequences are\n\
C-finite, so finitely many checks suffice in principle; the sufficiency bound is not computed here.\n";

impl ReportDocument {
    pub fn new(entries: Vec<ReportEntry>) -> Self {
        ReportDocument {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            entries,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("core-moments {}\n{PREAMBLE}\n", self.tool_version);
        for (i, e) in self.entries.iter().enumerate() {
            let _ = writeln!(
                out,
                "{}. [{}, {} in [{}, {}]]\n   {}",
                i + 1,
                e.status.as_str(),
                e.range.variable,
                e.range.start,
                e.range.end,
                e.claim
            );
        }
        out
    }

    pub fn to_latex(&self) -> String {
        let mut out = String::from("\\begin{enumerate}\n");
        for e in &self.entries {
            let _ = writeln!(
                out,
                "\\item $ {} $ \\quad ({}, ${} \\le {} \\le {}$)",
                e.latex,
                e.status.as_str(),
                e.range.start,
                e.range.variable,
                e.range.end
            );
        }
        out.push_str("\\end{enumerate}\n");
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_serializes_kebab_case() {
        let v = serde_json::to_value(Status::VerifiedOnRange).unwrap();
        assert_eq!(v, serde_json::json!("verified-on-range"));
    }

    #[test]
    fn json_round_trip() {
        let doc = ReportDocument::new(vec![ReportEntry {
            claim: "E[X_s] = 0".into(),
            latex: "0".into(),
            status: Status::VerifiedOnRange,
            range: CheckedRange::s(2, 32),
            expression: Some(FibExpr::one()),
            value: None,
        }]);
        let json = doc.to_json();
        let back = ReportDocument::from_json(&json).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_json(), json);
        assert!(doc.to_text().contains("[verified-on-range, s in [2, 32]]"));
    }
}
