//! Report envelope, output helpers and the mapping from library errors to
//! exit codes.

use std::collections::BTreeMap;
use std::fmt::Debug;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use tatelab::{BoundsError, CmError, PolyError, TateError, WeilError};

pub const SCHEMA: u32 = 1;

pub const EXIT_INPUT: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;
pub const EXIT_INTERNAL: u8 = 4;
/// `tate --verify` found a report that does not match a fresh computation.
pub const EXIT_MISMATCH: u8 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub version: String,
    pub precision: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub rows: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summary: Option<Value>,
    pub meta: Meta,
}

impl Report {
    pub fn new(command: &str, precision: &str) -> Self {
        Self {
            schema: SCHEMA,
            command: command.to_string(),
            inputs: BTreeMap::new(),
            rows: Vec::new(),
            summary: None,
            meta: Meta {
                version: env!("CARGO_PKG_VERSION").to_string(),
                precision: precision.to_string(),
                timing_ms: None,
            },
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn row<T: Serialize>(&mut self, row: &T) -> Result<(), Failure> {
        self.rows.push(to_value(row)?);
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

pub fn to_value<T: Serialize>(v: &T) -> Result<Value, Failure> {
    serde_json::to_value(v).map_err(|e| Failure::internal(format!("serialization failed: {e}")))
}

/// A failed command: exit code, error name, message and a one-line hint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: u8,
    pub kind: String,
    pub message: String,
    pub hint: String,
}

impl Failure {
    pub fn input(kind: &str, message: impl Into<String>, hint: &str) -> Self {
        Self {
            code: EXIT_INPUT,
            kind: kind.to_string(),
            message: message.into(),
            hint: hint.to_string(),
        }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INTERNAL,
            kind: "Internal".to_string(),
            message: message.into(),
            hint: "please report this with the command line that triggered it".to_string(),
        }
    }

    fn from_error<E: std::error::Error + Debug>(family: &str, e: &E, code: u8, hint: &str) -> Self {
        Self {
            code,
            kind: format!("{family}::{}", variant_name(e)),
            message: e.to_string(),
            hint: hint.to_string(),
        }
    }

    pub fn render(&self) -> String {
        format!(
            "error[{}]: {}\nhint: {}",
            self.kind, self.message, self.hint
        )
    }
}

fn variant_name<E: Debug>(e: &E) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric() && c != '_')
        .next()
        .unwrap_or_default()
        .to_string()
}

impl From<PolyError> for Failure {
    fn from(e: PolyError) -> Self {
        let hint = "write coefficients from the constant term up, e.g. \"5,-3,1\" for T^2 - 3T + 5";
        Self::from_error("PolyError", &e, EXIT_INPUT, hint)
    }
}

impl From<WeilError> for Failure {
    fn from(e: WeilError) -> Self {
        let (code, hint) = match &e {
            WeilError::NotPrimePower { .. } => (EXIT_INPUT, "q must be a prime power p^e"),
            WeilError::NotMonic => (EXIT_INPUT, "the last (leading) coefficient must be 1"),
            WeilError::OddDegree { .. } => (EXIT_INPUT, "a Weil polynomial of a d-dimensional variety has degree 2d"),
            WeilError::ConstantTerm { .. } => (EXIT_INPUT, "the first (constant) coefficient must be q^d"),
            WeilError::FunctionalEquationFails => {
                (EXIT_INPUT, "coefficients must satisfy a_(2d-i) = q^(d-i) a_i")
            }
            WeilError::RootModulusFails { .. } => {
                (EXIT_INPUT, "every root must have absolute value sqrt(q); the middle coefficients are too large")
            }
            WeilError::FieldMismatch { .. } => (EXIT_INPUT, "both factors must be over the same field"),
            WeilError::DegreeOutOfRange { .. } => (EXIT_INPUT, "--r must lie between 0 and 2d"),
            WeilError::ZeroExtension => (EXIT_INPUT, "extension degrees start at 1"),
            WeilError::RootsDidNotConverge => (EXIT_INTERNAL, "retry with a different precision"),
        };
        Self::from_error("WeilError", &e, code, hint)
    }
}

impl From<TateError> for Failure {
    fn from(e: TateError) -> Self {
        match e {
            TateError::Weil(w) => w.into(),
            TateError::CodimensionOutOfRange { .. } => Self::from_error(
                "TateError",
                &e,
                EXIT_INPUT,
                "codimension k must lie between 0 and d",
            ),
            TateError::ZeroExtension => {
                Self::from_error("TateError", &e, EXIT_INPUT, "extension degrees start at 1")
            }
            TateError::TooLarge { .. } => Self::from_error(
                "TateError",
                &e,
                EXIT_BUDGET,
                "the numeric oracle handles d <= 8 only",
            ),
            TateError::PrecisionInsufficient { .. } => Self::from_error(
                "TateError",
                &e,
                EXIT_INTERNAL,
                "raise the numeric precision",
            ),
        }
    }
}

impl From<BoundsError> for Failure {
    fn from(e: BoundsError) -> Self {
        let hint = match &e {
            BoundsError::ZeroDegree => "field degrees start at 1",
            BoundsError::BadDiscriminant => "pass --log-dk >= 0, and 0 (the default) when --nk 1",
            BoundsError::DegreeNotDivisible { .. } => "n_K must divide n_L",
            BoundsError::TrivialExtension { .. } => "the relative degree --n must be at least 2",
            BoundsError::NonPositive { .. } => "pass a positive value",
            BoundsError::BelowOne { .. } => "the constants c and c1 must be at least 1",
            BoundsError::NotPrime { .. } => "list ramified primes only",
        };
        Self::from_error("BoundsError", &e, EXIT_INPUT, hint)
    }
}

impl From<CmError> for Failure {
    fn from(e: CmError) -> Self {
        let (code, hint) = match &e {
            CmError::Weil(w) => return w.clone().into(),
            CmError::Tate(t) => return t.clone().into(),
            CmError::Bounds(b) => return b.clone().into(),
            CmError::ZeroDiscriminant => (EXIT_INPUT, "pass a nonzero --disc"),
            CmError::NotFundamental { .. } => (
                EXIT_INPUT,
                "pass a fundamental discriminant such as -4, -3, 5 or -20",
            ),
            CmError::UnsupportedDiscriminant { .. } => (
                EXIT_INPUT,
                "supported: -3, -4, -7, -8, -11, -19, -43, -67, -163",
            ),
            CmError::NotPrime { .. } => (EXIT_INPUT, "pass a prime"),
            CmError::ExcludedPrime { .. } => (EXIT_INPUT, "p must not divide 2D"),
            CmError::BudgetExceeded { .. } => (EXIT_BUDGET, "lower the bound"),
            CmError::SingularCurve => (EXIT_INPUT, "the curve must have nonzero discriminant"),
            CmError::UnsupportedBase => {
                (EXIT_INPUT, "only the rationals are supported as base field")
            }
            CmError::Internal(_) => (
                EXIT_INTERNAL,
                "please report this with the command line that triggered it",
            ),
        };
        Self::from_error("CmError", &e, code, hint)
    }
}
