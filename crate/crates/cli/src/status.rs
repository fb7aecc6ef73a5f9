//! Exit statuses and failures.

use std::fmt;

use eids::{AlgebraError, Error};

/// Process exit status. The numeric codes are stable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// An algebra computation failed for a reason not listed below.
    Failure,
    /// Unreadable input: usage, I/O, JSON or polynomial syntax.
    Usage,
    /// The input violates a precondition: not determinantal, not an EIDS,
    /// a non-admissible hyperplane.
    Hypothesis,
    /// A randomized test could not decide.
    Inconclusive,
    /// A Groebner-basis resource cap was hit.
    ResourceLimit,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Failure => 1,
            Status::Usage => 2,
            Status::Hypothesis => 3,
            Status::Inconclusive => 4,
            Status::ResourceLimit => 5,
        }
    }

    pub fn of(e: &Error) -> Status {
        match e.root() {
            Error::Algebra(AlgebraError::ResourceLimit(_)) => Status::ResourceLimit,
            Error::Algebra(AlgebraError::Parse(_) | AlgebraError::UnknownVariable(_) | AlgebraError::NotLinear(_)) => {
                Status::Usage
            }
            Error::Algebra(_) => Status::Failure,
            Error::InvalidType { .. } | Error::Shape(_) | Error::IndexOutOfRange { .. } => Status::Usage,
            Error::NotDeterminantal { .. }
            | Error::HypothesisViolation(_)
            | Error::NotIsolatedCriticalLocus(_)
            | Error::WrongDimension { .. } => Status::Hypothesis,
            Error::DegenerateAfterRetries { .. } | Error::Inconclusive(_) => Status::Inconclusive,
            Error::AtLevel { .. } => unreachable!("root strips levels"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub status: Status,
    pub message: String,
}

impl Failure {
    pub fn new(status: Status, message: String) -> Self {
        Failure { status, message }
    }

    /// `what` names the failing subcomputation.
    pub fn from_error(what: &str, e: &Error) -> Self {
        Failure { status: Status::of(e), message: format!("{what}: {e}") }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Failure {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_are_stable() {
        let codes: Vec<u8> = [Status::Ok, Status::Failure, Status::Usage, Status::Hypothesis, Status::Inconclusive, Status::ResourceLimit]
            .iter()
            .map(|s| s.code())
            .collect();
        assert_eq!(codes, [0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn errors_map_through_levels() {
        let inconclusive = Error::Inconclusive("unstable search".into()).at_level(3);
        assert_eq!(Status::of(&inconclusive), Status::Inconclusive);
        let degenerate = Error::DegenerateAfterRetries { what: "hyperplane".into(), attempts: 16 };
        assert_eq!(Status::of(&degenerate), Status::Inconclusive);
        let cap = Error::Algebra(AlgebraError::ResourceLimit("pairs".into())).at_level(2);
        assert_eq!(Status::of(&cap), Status::ResourceLimit);
        assert_eq!(Status::of(&Error::NotDeterminantal { expected: 2, actual: 0 }), Status::Hypothesis);
        assert_eq!(Status::of(&Error::Algebra(AlgebraError::NotZeroDimensional(1))), Status::Failure);
    }
}
