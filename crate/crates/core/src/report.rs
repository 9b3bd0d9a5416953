use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A derived result disagrees with a displayed formula while the derivation
    /// itself is checked elsewhere.
    Discrepancy,
}

/// Outcome of one verification. A failing identity is a report, not an error.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub order: Option<usize>,
    pub status: Status,
    /// First nonzero discrepancy, rendered canonically.
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl CheckReport {
    pub fn pass(check: impl Into<String>, order: Option<usize>) -> Self {
        CheckReport { check: check.into(), order, status: Status::Pass, witness: None, detail: None }
    }

    pub fn fail(check: impl Into<String>, order: Option<usize>, witness: impl Into<String>) -> Self {
        CheckReport { check: check.into(), order, status: Status::Fail, witness: Some(witness.into()), detail: None }
    }

    /// `None` witness means the identity held.
    pub fn from_witness(check: impl Into<String>, order: Option<usize>, witness: Option<String>) -> Self {
        match witness {
            None => Self::pass(check, order),
            Some(w) => Self::fail(check, order, w),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    /// Downgrade a failure to a discrepancy.
    pub fn as_discrepancy(mut self) -> Self {
        if self.status == Status::Fail {
            self.status = Status::Discrepancy;
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}
