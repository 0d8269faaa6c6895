//! Case records shared by the lemma sweeps.

use alloc::string::String;
use core::fmt;

/// Outcome of one verification case.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum CaseStatus {
    Pass,
    Fail,
    /// Disagrees with the statement as printed but the discrepancy is understood
    /// (see the record's note).
    Deviation,
    Indeterminate,
    /// Holds only under a hypothesis the computation cannot check.
    Assumption,
}

impl CaseStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseStatus::Pass => "pass",
            CaseStatus::Fail => "fail",
            CaseStatus::Deviation => "deviation",
            CaseStatus::Indeterminate => "indeterminate",
            CaseStatus::Assumption => "assumption",
        }
    }

    /// Worst of two statuses: fail > indeterminate > deviation > assumption > pass.
    pub fn combine(self, other: CaseStatus) -> CaseStatus {
        fn rank(s: CaseStatus) -> u8 {
            match s {
                CaseStatus::Pass => 0,
                CaseStatus::Assumption => 1,
                CaseStatus::Deviation => 2,
                CaseStatus::Indeterminate => 3,
                CaseStatus::Fail => 4,
            }
        }
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }
}

impl fmt::Display for CaseStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One checked statement at one value of `n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CaseRecord {
    pub lemma: String,
    pub n: usize,
    pub case: String,
    pub status: CaseStatus,
    pub note: String,
}

impl CaseRecord {
    pub fn new(lemma: &str, n: usize, case: String, status: CaseStatus, note: String) -> Self {
        CaseRecord {
            lemma: String::from(lemma),
            n,
            case,
            status,
            note,
        }
    }
}
