use serde::{Deserialize, Serialize};

/// One checked hypothesis or condition, with the residual that decided it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
    pub residual: f64,
}

impl Hypothesis {
    pub fn new(name: impl Into<String>, holds: bool, residual: f64) -> Self {
        Hypothesis {
            name: name.into(),
            holds,
            residual,
        }
    }

    /// A hypothesis that holds automatically at finite rank.
    pub fn by_construction(name: impl Into<String>) -> Self {
        Hypothesis::new(name, true, 0.0)
    }
}

pub fn all_hold(log: &[Hypothesis]) -> bool {
    log.iter().all(|h| h.holds)
}
