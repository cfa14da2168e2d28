//! Growth tables and search outcomes with per-entry provenance.
//!
//! Every computed bound records whether it is exact or budget-limited;
//! budget exhaustion is always reported, never silently converted into
//! a value.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Result of a budgeted minimum search such as the complexity scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchOutcome {
    /// The exact value.
    Exact(u64),
    /// No witness within the budget: the value exceeds it, or none exists.
    BudgetExceeded { budget: u64 },
}

impl SearchOutcome {
    pub fn exact(&self) -> Option<u64> {
        match self {
            SearchOutcome::Exact(v) => Some(*v),
            SearchOutcome::BudgetExceeded { .. } => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, SearchOutcome::Exact(_))
    }
}

impl fmt::Display for SearchOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchOutcome::Exact(v) => write!(f, "{v}"),
            SearchOutcome::BudgetExceeded { budget } => write!(f, ">{budget}"),
        }
    }
}

/// Status of one growth-table entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryStatus {
    Exact,
    /// Some contributing search hit its budget; the value is a lower bound.
    LowerBound { budget: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthEntry {
    pub n: u64,
    pub value: u64,
    pub status: EntryStatus,
}

/// A table `n -> value` for one of the growth functions (lawlessness,
/// torsion, MIF). Values are nondecreasing in `n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthTable {
    pub name: String,
    pub entries: Vec<GrowthEntry>,
}

impl GrowthTable {
    pub fn new(name: impl Into<String>) -> Self {
        GrowthTable { name: name.into(), entries: Vec::new() }
    }

    pub fn push(&mut self, n: u64, value: u64, status: EntryStatus) {
        self.entries.push(GrowthEntry { n, value, status });
    }

    pub fn value_at(&self, n: u64) -> Option<u64> {
        self.entries.iter().find(|e| e.n == n).map(|e| e.value)
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.entries.windows(2).all(|w| w[0].value <= w[1].value)
    }

    pub fn all_exact(&self) -> bool {
        self.entries.iter().all(|e| e.status == EntryStatus::Exact)
    }

    /// `n,value,status` lines with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,value,status\n");
        for e in &self.entries {
            let status = match e.status {
                EntryStatus::Exact => "exact".to_string(),
                EntryStatus::LowerBound { budget } => format!("lower-bound(budget={budget})"),
            };
            out.push_str(&format!("{},{},{}\n", e.n, e.value, status));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("growth table serializes")
    }
}

impl fmt::Display for GrowthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.name)?;
        for e in &self.entries {
            match e.status {
                EntryStatus::Exact => writeln!(f, "  {:>4}  {}", e.n, e.value)?,
                EntryStatus::LowerBound { budget } => {
                    writeln!(f, "  {:>4}  >={} (budget {})", e.n, e.value, budget)?
                }
            }
        }
        Ok(())
    }
}
