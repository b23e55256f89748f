//! Brute-force graded module arithmetic over the rationals.
//!
//! Algebras and modules are stored degree by degree inside a finite window,
//! together with the action of the degree-one generators. Everything the
//! window cannot see is tracked explicitly, so that results touching the
//! window boundary are never reported as exact.

mod algebra;
mod friendly;
mod hom;
pub mod linalg;
mod module;

use thiserror::Error;

pub use algebra::TruncatedAlgebra;
pub use friendly::{friendliness_witness, suggested_truncation, FriendlinessReport, Verdict};
pub use hom::{hom_dims_dense, hom_window, DegreeStatus, HomDegree, HomWindowReport};
pub use module::TruncatedModule;

/// Default half-width of the degree window.
pub const DEFAULT_WINDOW: i64 = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("module has no nonzero component inside its window")]
    WindowTooSmall,
    #[error("windows {left:?} and {right:?} do not overlap")]
    EmptyWindow { left: (i64, i64), right: (i64, i64) },
    #[error("point enumeration exceeded the cap of {cap} points at degree {degree}")]
    ResourceCap { cap: usize, degree: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("algebra invariant violated: {0}")]
    Invariant(String),
    #[error("dense solve needs a module and ring fully enclosed in their windows")]
    NotEnclosed,
}

/// Parses a ring description such as `x:3` (one variable, relation `x^3`),
/// `x:3,y:2` or `x,y` (polynomial ring) into variables and monomial
/// relations.
pub fn parse_ring_spec(spec: &str) -> Result<(Vec<String>, Vec<Vec<u32>>), OracleError> {
    let mut vars = Vec::new();
    let mut powers = Vec::new();
    for token in spec.split(',').map(str::trim) {
        if token.is_empty() {
            return Err(OracleError::InvalidInput(format!(
                "empty variable in `{spec}`"
            )));
        }
        let (name, power) = match token.split_once(':') {
            Some((name, p)) => {
                let p: u32 = p.trim().parse().map_err(|_| {
                    OracleError::InvalidInput(format!("bad power `{p}` in `{token}`"))
                })?;
                if p == 0 {
                    return Err(OracleError::InvalidInput(format!(
                        "power 0 in `{token}` kills the ring"
                    )));
                }
                (name.trim(), Some(p))
            }
            None => (token, None),
        };
        if !name.chars().all(|c| c.is_alphanumeric() || c == '_') || name.is_empty() {
            return Err(OracleError::InvalidInput(format!(
                "bad variable name `{name}`"
            )));
        }
        if vars.iter().any(|v| v == name) {
            return Err(OracleError::InvalidInput(format!(
                "variable `{name}` repeated"
            )));
        }
        vars.push(name.to_string());
        powers.push(power);
    }
    let n = vars.len();
    let relations = powers
        .iter()
        .enumerate()
        .filter_map(|(i, p)| {
            p.map(|p| {
                let mut rel = vec![0; n];
                rel[i] = p;
                rel
            })
        })
        .collect();
    Ok((vars, relations))
}
