use std::sync::Arc;

use super::algebra::TruncatedAlgebra;
use super::hom::{hom_window, DegreeStatus, HomWindowReport};
use super::module::TruncatedModule;
use super::OracleError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The Hilbert functions differ in a degree where both sides are exact.
    NotFriendlyCertified,
    /// Every comparable degree matches. Evidence only, not a proof.
    Consistent,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::NotFriendlyCertified => "not_friendly_certified",
            Verdict::Consistent => "consistent",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FriendlinessReport {
    pub window: (i64, i64),
    pub shifts: (i64, i64),
    /// `(R(a) # S(b))^*` by solving for homomorphisms.
    pub left: HomWindowReport,
    /// `R(a)^* # S(b)^* = R(-a) # S(-b)`; `None` where the truncation does not
    /// determine the dimension.
    pub right: Vec<Option<usize>>,
    pub compared: Vec<i64>,
    pub mismatches: Vec<i64>,
    pub verdict: Verdict,
}

impl FriendlinessReport {
    pub fn right_exact(&self) -> bool {
        self.right.iter().all(Option::is_some)
    }

    pub fn right_nonzero(&self) -> Vec<(i64, usize)> {
        (self.window.0..=self.window.1)
            .zip(&self.right)
            .filter_map(|(i, d)| d.filter(|&d| d > 0).map(|d| (i, d)))
            .collect()
    }
}

/// Truncation degree for both algebras that leaves `depth` module degrees of
/// `R(a) # S(b)` with every Hom target inside the window `lo..=hi`.
pub fn suggested_truncation(a: i64, b: i64, hi: i64, depth: usize) -> usize {
    (depth as i64 + a.abs() + b.abs() + hi.max(0) + 1) as usize
}

/// Compares the Hilbert functions of `(R(a) # S(b))^*` and `R(a)^* # S(b)^*`
/// over the degree window `lo..=hi`.
pub fn friendliness_witness(
    r: &Arc<TruncatedAlgebra>,
    s: &Arc<TruncatedAlgebra>,
    a: i64,
    b: i64,
    lo: i64,
    hi: i64,
) -> Result<FriendlinessReport, OracleError> {
    let free_r = TruncatedModule::free(Arc::clone(r));
    let free_s = TruncatedModule::free(Arc::clone(s));
    let module = free_r.shift(a).segre(&free_s.shift(b))?;
    let left = hom_window(&module, lo, hi)?;
    let dual = free_r.shift(-a).segre(&free_s.shift(-b))?;
    let right: Vec<Option<usize>> = (lo..=hi).map(|i| dual.known_dim(i)).collect();

    let mut compared = Vec::new();
    let mut mismatches = Vec::new();
    let mut certified = false;
    for (deg, right_dim) in left.degrees.iter().zip(&right) {
        let Some(right_dim) = *right_dim else {
            continue;
        };
        if !deg.status.is_conclusive() {
            continue;
        }
        compared.push(deg.degree);
        if deg.dim != right_dim {
            mismatches.push(deg.degree);
            certified |= deg.status == DegreeStatus::Exact;
        }
    }
    let verdict = if certified {
        Verdict::NotFriendlyCertified
    } else if !compared.is_empty() && mismatches.is_empty() {
        Verdict::Consistent
    } else {
        Verdict::Inconclusive
    };
    Ok(FriendlinessReport {
        window: (lo, hi),
        shifts: (a, b),
        left,
        right,
        compared,
        mismatches,
        verdict,
    })
}
