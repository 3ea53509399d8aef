use alloc::string::String;
use core::fmt;

use crate::algebra::Expression;
use crate::metric::RatMatrix;

/// What is left over when an identity is evaluated as `lhs − rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Residual {
    Expression(Expression),
    Matrix(RatMatrix),
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        match self {
            Residual::Expression(e) => e.is_zero(),
            Residual::Matrix(m) => m.is_zero(),
        }
    }
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residual::Expression(e) => fmt::Display::fmt(e, f),
            Residual::Matrix(m) => fmt::Display::fmt(m, f),
        }
    }
}

/// Outcome of one exact identity check. It passes iff the residual is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub name: String,
    pub residual: Residual,
}

impl VerificationReport {
    pub fn new(name: impl Into<String>, residual: Expression) -> Self {
        VerificationReport {
            name: name.into(),
            residual: Residual::Expression(residual),
        }
    }

    pub fn matrix(name: impl Into<String>, residual: RatMatrix) -> Self {
        VerificationReport {
            name: name.into(),
            residual: Residual::Matrix(residual),
        }
    }

    pub fn passed(&self) -> bool {
        self.residual.is_zero()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "CHECK {}: PASS", self.name)
        } else {
            write!(f, "CHECK {}: FAIL residual={}", self.name, self.residual)
        }
    }
}
