//! Check results shared by every verification routine.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub citation: String,
    pub instance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Suite {
    pub name: String,
    pub entries: Vec<Entry>,
}

impl Suite {
    pub fn new(name: impl Into<String>) -> Self {
        Suite {
            name: name.into(),
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, citation: impl Into<String>, instance: impl Into<String>, pass: bool) {
        self.entries.push(Entry {
            citation: citation.into(),
            instance: instance.into(),
            residual: None,
            pass,
        });
    }

    /// Records a residual; passes iff the residual is zero (`None`).
    pub fn push_residual(
        &mut self,
        citation: impl Into<String>,
        instance: impl Into<String>,
        residual: Option<String>,
    ) {
        let pass = residual.is_none();
        self.entries.push(Entry {
            citation: citation.into(),
            instance: instance.into(),
            residual,
            pass,
        });
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    pub fn extend(&mut self, other: Suite) {
        self.entries.extend(other.entries);
    }

    /// Drops residual payloads from passing entries and, unless `verbose`, from all.
    pub fn strip_residuals(&mut self, verbose: bool) {
        for e in &mut self.entries {
            if e.pass && !verbose {
                e.residual = None;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub all_pass: bool,
}

pub fn summarize(suites: &[Suite]) -> Summary {
    let total: usize = suites.iter().map(|s| s.entries.len()).sum();
    let passed: usize = suites
        .iter()
        .map(|s| s.entries.iter().filter(|e| e.pass).count())
        .sum();
    Summary {
        total,
        passed,
        failed: total - passed,
        all_pass: passed == total,
    }
}
