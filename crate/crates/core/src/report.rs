use serde::{Deserialize, Serialize};

use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Outcome recorded but not gated.
    Info,
    Inapplicable,
}

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Item {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<Permutation>,
    pub check: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Item {
    pub fn new(w: Option<&Permutation>, check: impl Into<String>, ok: bool) -> Self {
        Self {
            w: w.cloned(),
            check: check.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            witness: None,
        }
    }

    pub fn info(
        w: Option<&Permutation>,
        check: impl Into<String>,
        witness: Option<String>,
    ) -> Self {
        Self {
            w: w.cloned(),
            check: check.into(),
            status: Status::Info,
            witness,
        }
    }

    pub fn with_witness(mut self, witness: impl Into<String>) -> Self {
        if self.status == Status::Fail {
            self.witness = Some(witness.into());
        }
        self
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

pub fn all_pass(items: &[Item]) -> bool {
    !items.iter().any(Item::failed)
}
