use std::fmt;

use crate::arith::{DomainPoint, GaussianRational};

/// Location of a pole together with its residue, as reported by an exactness failure.
#[derive(Clone, Debug, PartialEq)]
pub enum PoleResidue {
    Exact {
        pole: DomainPoint,
        residue: GaussianRational,
    },
    /// Pole at a point outside Q(i); values are double-precision approximations.
    Numeric { pole: (f64, f64), residue: (f64, f64) },
}

impl fmt::Display for PoleResidue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PoleResidue::Exact { pole, residue } => write!(f, "{{pole {pole}, residue {residue}}}"),
            PoleResidue::Numeric { pole, residue } => write!(
                f,
                "{{pole ~{:.12}{:+.12}i, residue ~{:.12}{:+.12}i}}",
                pole.0, pole.1, residue.0, residue.1
            ),
        }
    }
}

fn join(items: &[PoleResidue]) -> String {
    items.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("InvalidInput: {0}")]
    InvalidInput(String),
    #[error("DivisionByZero")]
    DivisionByZero,
    #[error("Undefined: {0}")]
    Undefined(String),
    #[error("ConstantG: the second Bryant datum must be nonconstant")]
    ConstantG,
    #[error("ExactnessViolation{}", join(.0))]
    ExactnessViolation(Vec<PoleResidue>),
    #[error("NotRepresentable: curve lies in a plane [z0:z2] = const")]
    NotRepresentable,
    #[error("DegenerateCurve: {0}")]
    DegenerateCurve(String),
    #[error("HypothesisViolation: {0}")]
    HypothesisViolation(String),
    #[error("EmptyDomain")]
    EmptyDomain,
    #[error("GridTooSmall")]
    GridTooSmall,
    #[error("PoleOnSurface: projection pole lies on the sampled surface")]
    PoleOnSurface,
    #[error("ParseError at {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("Io: {0}")]
    Io(#[from] std::io::Error),
    #[error("Json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Short machine-readable name, as surfaced by the command line.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "InvalidInput",
            Error::DivisionByZero => "DivisionByZero",
            Error::Undefined(_) => "Undefined",
            Error::ConstantG => "ConstantG",
            Error::ExactnessViolation(_) => "ExactnessViolation",
            Error::NotRepresentable => "NotRepresentable",
            Error::DegenerateCurve(_) => "DegenerateCurve",
            Error::HypothesisViolation(_) => "HypothesisViolation",
            Error::EmptyDomain => "EmptyDomain",
            Error::GridTooSmall => "GridTooSmall",
            Error::PoleOnSurface => "PoleOnSurface",
            Error::Parse { .. } => "ParseError",
            Error::Io(_) => "Io",
            Error::Json(_) => "Json",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
