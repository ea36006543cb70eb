//! Pass/fail reports for identity checks, serializable as
//! `[{identity, status, residual?}]`.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct CheckItem {
    pub identity: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport { name: name.into(), items: Vec::new() }
    }

    pub fn pass(&mut self, identity: impl Into<String>) {
        self.items.push(CheckItem {
            identity: identity.into(),
            status: Status::Pass,
            residual: None,
        });
    }

    pub fn fail(&mut self, identity: impl Into<String>, residual: impl Into<String>) {
        self.items.push(CheckItem {
            identity: identity.into(),
            status: Status::Fail,
            residual: Some(residual.into()),
        });
    }

    pub fn record(&mut self, identity: impl Into<String>, ok: bool, residual: impl Into<String>) {
        if ok {
            self.pass(identity);
        } else {
            self.fail(identity, residual);
        }
    }

    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.status == Status::Pass)
    }

    pub fn merged(mut self, other: CheckReport) -> CheckReport {
        self.items.extend(other.items);
        self
    }
}
