//! Depth and Cohen-Macaulayness of twisted Segre products of Gorenstein
//! standard graded algebras.
//!
//! Factors are described by their dimension `d` and a-invariant `α`, so that
//! `ω_R ≅ R(α)`. The uniform-twist criteria are stated in terms of
//! `ρ = -α`; conversion happens only at those entry points.
//!
//! Two independent routes are provided for every verdict: a subset
//! enumeration over the Künneth summands of local cohomology
//! ([`cohomology_support`], [`cm_uniform_twist_raw`]) and the closed forms
//! ([`prop_depth_m2`], [`cm_uniform_twist`], [`cm_chain`],
//! [`cm_twist_interval`]).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use thiserror::Error;

/// Largest number of factors accepted by the subset enumerations.
pub const DEFAULT_SUBSET_BOUND: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomoError {
    #[error(
        "factor {index} has dimension {dim}; the Künneth computation needs every dimension >= 2"
    )]
    DimensionTooSmall { index: usize, dim: i64 },
    #[error("rho values must be non-increasing, but rho[{index}] = {next} exceeds rho[{prev_index}] = {prev}", prev_index = index - 1)]
    NotSorted { index: usize, prev: i64, next: i64 },
    #[error("twist a = {0} is excluded (must not be 0 or 1)")]
    BadTwist(i64),
    #[error("rho[{index}] = {value} is not positive")]
    NotPositive { index: usize, value: i64 },
    #[error("criterion needs max consecutive ratio rho > 1; all rho values are equal")]
    NotApplicable,
    #[error("{factors} factors exceed the subset enumeration bound {bound}")]
    ResourceCap { factors: usize, bound: usize },
    #[error("empty factor list")]
    Empty,
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GorensteinFactor {
    pub dim: i64,
    pub a_inv: i64,
}

/// `M = #_i R_i(a_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedFactorList {
    pub factors: Vec<(GorensteinFactor, i64)>,
}

impl TwistedFactorList {
    pub fn new(dims: &[i64], a_invs: &[i64], shifts: &[i64]) -> Result<Self, CohomoError> {
        if dims.len() != a_invs.len() || dims.len() != shifts.len() {
            return Err(CohomoError::LengthMismatch(format!(
                "{} dims, {} a-invariants, {} shifts",
                dims.len(),
                a_invs.len(),
                shifts.len()
            )));
        }
        if dims.is_empty() {
            return Err(CohomoError::Empty);
        }
        let factors = dims
            .iter()
            .zip(a_invs)
            .zip(shifts)
            .map(|((&dim, &a_inv), &shift)| (GorensteinFactor { dim, a_inv }, shift))
            .collect();
        Ok(TwistedFactorList { factors })
    }

    /// `#_i R_i(-a ρ_i)` where `R_i` has a-invariant `-ρ_i`.
    pub fn uniform_twist(dims: &[i64], rhos: &[i64], a: i64) -> Result<Self, CohomoError> {
        let a_invs: Vec<i64> = rhos.iter().map(|r| -r).collect();
        let shifts: Vec<i64> = rhos.iter().map(|r| -a * r).collect();
        Self::new(dims, &a_invs, &shifts)
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn shifts(&self) -> Vec<i64> {
        self.factors.iter().map(|(_, s)| *s).collect()
    }
}

/// Endpoint of a degree interval; the infinite ends stand for an empty max
/// or min.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Bound {
    NegInf,
    Finite(i64),
    PosInf,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => f.write_str("-inf"),
            Bound::Finite(v) => write!(f, "{v}"),
            Bound::PosInf => f.write_str("+inf"),
        }
    }
}

/// A nonvanishing Künneth summand: `H^q` receives a nonzero contribution
/// from the subset `subset` (1-based indices) in degrees `lo..=hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub q: i64,
    pub subset: Vec<usize>,
    pub lo: Bound,
    pub hi: Bound,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepthReport {
    pub dim: i64,
    pub depth: i64,
    pub is_cm: bool,
    pub witnesses: Vec<Witness>,
}

impl DepthReport {
    fn new(dim: i64, depth: i64, witnesses: Vec<Witness>) -> Self {
        DepthReport {
            dim,
            depth,
            is_cm: depth == dim,
            witnesses,
        }
    }
}

/// Nonvanishing local cohomology of `#_i R_i(a_i)` by subset enumeration.
///
/// For a nonempty subset `E`, the summand `H^{q(E)}` with
/// `q(E) = sum_{i in E} d_i - (|E| - 1)` is the Segre product of
/// `H^{d_i}(R_i(a_i)) = R_i^∨(a_i - α_i)` for `i ∈ E` with `R_j(a_j)` for
/// `j ∉ E`. The first kind lives in degrees `k <= α_i - a_i`, the second in
/// `k >= -a_j`, so the summand is nonzero iff
/// `max_{j∉E}(-a_j) <= min_{i∈E}(α_i - a_i)`.
pub fn cohomology_support(m: &TwistedFactorList) -> Result<DepthReport, CohomoError> {
    cohomology_support_bounded(m, DEFAULT_SUBSET_BOUND)
}

pub fn cohomology_support_bounded(
    m: &TwistedFactorList,
    bound: usize,
) -> Result<DepthReport, CohomoError> {
    let n = m.len();
    if n == 0 {
        return Err(CohomoError::Empty);
    }
    if n > bound {
        return Err(CohomoError::ResourceCap { factors: n, bound });
    }
    let min_dim = if n == 1 { 1 } else { 2 };
    for (index, (f, _)) in m.factors.iter().enumerate() {
        if f.dim < min_dim {
            return Err(CohomoError::DimensionTooSmall { index, dim: f.dim });
        }
    }
    let mut witnesses = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let mut lo = Bound::NegInf;
        let mut hi = Bound::PosInf;
        let mut q = 1i64;
        let mut subset = Vec::new();
        for (i, (f, shift)) in m.factors.iter().enumerate() {
            if mask & (1 << i) != 0 {
                subset.push(i + 1);
                q += f.dim - 1;
                hi = hi.min(Bound::Finite(f.a_inv - shift));
            } else {
                lo = lo.max(Bound::Finite(-shift));
            }
        }
        if lo <= hi {
            witnesses.push(Witness { q, subset, lo, hi });
        }
    }
    witnesses.sort_by(|a, b| a.q.cmp(&b.q).then_with(|| a.subset.cmp(&b.subset)));
    let dim: i64 = m.factors.iter().map(|(f, _)| f.dim).sum::<i64>() - (n as i64 - 1);
    // the full subset always survives, so depth <= dim
    let depth = witnesses.iter().map(|w| w.q).min().unwrap_or(dim);
    Ok(DepthReport::new(dim, depth, witnesses))
}

/// Closed-form depth of `R(a) # S(b)` for Gorenstein `R`, `S` of dimensions
/// `r`, `s` and a-invariants `rho`, `sigma`. Inputs with `r < s` are swapped.
pub fn prop_depth_m2(
    r: i64,
    s: i64,
    rho: i64,
    sigma: i64,
    a: i64,
    b: i64,
) -> Result<DepthReport, CohomoError> {
    if r < s {
        return prop_depth_m2(s, r, sigma, rho, b, a);
    }
    if s < 1 {
        return Err(CohomoError::DimensionTooSmall { index: 1, dim: s });
    }
    let dim = r + s - 1;
    // H(S) side lives in [-a, sigma - b], H(R) side in [-b, rho - a]
    let s_side = |q: i64| Witness {
        q,
        subset: vec![2],
        lo: Bound::Finite(-a),
        hi: Bound::Finite(sigma - b),
    };
    let r_side = |q: i64| Witness {
        q,
        subset: vec![1],
        lo: Bound::Finite(-b),
        hi: Bound::Finite(rho - a),
    };
    let s_nonzero = b - a <= sigma;
    let r_nonzero = a - b <= rho;
    let report = if r == s && r > 1 {
        let mut w = Vec::new();
        if r_nonzero {
            w.push(r_side(r));
        }
        if s_nonzero {
            w.push(s_side(r));
        }
        let depth = if w.is_empty() { dim } else { r };
        DepthReport::new(dim, depth, w)
    } else if s > 1 {
        if s_nonzero {
            DepthReport::new(dim, s, vec![s_side(s)])
        } else if r_nonzero {
            DepthReport::new(dim, r, vec![r_side(r)])
        } else {
            DepthReport::new(dim, dim, Vec::new())
        }
    } else if r > 1 {
        if s_nonzero {
            DepthReport::new(dim, 1, vec![s_side(1)])
        } else {
            DepthReport::new(dim, dim, Vec::new())
        }
    } else {
        DepthReport::new(dim, dim, Vec::new())
    };
    Ok(report)
}

fn check_sorted(rhos: &[i64]) -> Result<(), CohomoError> {
    if rhos.is_empty() {
        return Err(CohomoError::Empty);
    }
    for (index, w) in rhos.windows(2).enumerate() {
        if w[1] > w[0] {
            return Err(CohomoError::NotSorted {
                index: index + 1,
                prev: w[0],
                next: w[1],
            });
        }
    }
    Ok(())
}

fn check_positive(rhos: &[i64]) -> Result<(), CohomoError> {
    match rhos.iter().position(|&r| r <= 0) {
        Some(index) => Err(CohomoError::NotPositive {
            index,
            value: rhos[index],
        }),
        None => Ok(()),
    }
}

/// Chain criterion for `#_i R_i(-a ρ_i)` with `ρ_1 >= ... >= ρ_m`:
/// `(1-a) ρ_{l+1} > -a ρ_l` when `a <= 0`, `a ρ_{l+1} > (a-1) ρ_l` when `a > 0`.
pub fn cm_uniform_twist(rhos: &[i64], a: i64) -> Result<bool, CohomoError> {
    check_sorted(rhos)?;
    let a = i128::from(a);
    Ok(rhos.windows(2).all(|w| {
        let (hi, lo) = (i128::from(w[0]), i128::from(w[1]));
        if a <= 0 {
            (1 - a) * lo > -a * hi
        } else {
            a * lo > (a - 1) * hi
        }
    }))
}

/// Exhaustive form of [`cm_uniform_twist`]: for every proper nonempty subset
/// `E`, `max_{i∉E} a ρ_i > min_{i∈E} (a-1) ρ_i`. Order of `rhos` is irrelevant.
pub fn cm_uniform_twist_raw(rhos: &[i64], a: i64) -> Result<bool, CohomoError> {
    cm_uniform_twist_raw_bounded(rhos, a, DEFAULT_SUBSET_BOUND)
}

pub fn cm_uniform_twist_raw_bounded(
    rhos: &[i64],
    a: i64,
    bound: usize,
) -> Result<bool, CohomoError> {
    let m = rhos.len();
    if m == 0 {
        return Err(CohomoError::Empty);
    }
    if m > bound {
        return Err(CohomoError::ResourceCap { factors: m, bound });
    }
    let a = i128::from(a);
    let full = (1u32 << m) - 1;
    for mask in 1..full {
        let mut outside = i128::MIN;
        let mut inside = i128::MAX;
        for (i, &r) in rhos.iter().enumerate() {
            let r = i128::from(r);
            if mask & (1 << i) != 0 {
                inside = inside.min((a - 1) * r);
            } else {
                outside = outside.max(a * r);
            }
        }
        if outside <= inside {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `C^{m-1} ρ_m > ... > C ρ_2 > ρ_1` with `C = (a/(a-1))^{sgn a}`.
pub fn cm_chain(rhos: &[i64], a: i64) -> Result<bool, CohomoError> {
    if a == 0 || a == 1 {
        return Err(CohomoError::BadTwist(a));
    }
    check_sorted(rhos)?;
    let c = if a > 0 {
        BigRational::new(BigInt::from(a), BigInt::from(a - 1))
    } else {
        BigRational::new(BigInt::from(a - 1), BigInt::from(a))
    };
    let mut power = BigRational::one();
    let terms: Vec<BigRational> = rhos
        .iter()
        .map(|&r| {
            let t = &power * BigRational::from_integer(BigInt::from(r));
            power = &power * &c;
            t
        })
        .collect();
    Ok(terms.windows(2).all(|w| w[1] > w[0]))
}

/// Anticanonical module of `R # S` (a-invariants `rho`, `sigma`) is
/// Cohen-Macaulay iff `sigma > 2 rho` and `rho > 2 sigma`.
pub fn anticanonical_cm_m2(rho: i64, sigma: i64) -> bool {
    let (rho, sigma) = (i128::from(rho), i128::from(sigma));
    sigma > 2 * rho && rho > 2 * sigma
}

/// Set of twists `a` for which `#_i R_i(-a ρ_i)` is Cohen-Macaulay.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwistInterval {
    AllIntegers,
    /// Open interval `(lo, hi)`.
    Open {
        lo: BigRational,
        hi: BigRational,
    },
}

impl TwistInterval {
    pub fn contains(&self, a: i64) -> bool {
        match self {
            TwistInterval::AllIntegers => true,
            TwistInterval::Open { lo, hi } => {
                let a = BigRational::from_integer(BigInt::from(a));
                *lo < a && a < *hi
            }
        }
    }

    /// Integers strictly inside an open interval; `None` for all integers.
    pub fn integer_points(&self) -> Option<Vec<i64>> {
        match self {
            TwistInterval::AllIntegers => None,
            TwistInterval::Open { lo, hi } => {
                let first = lo.floor().to_integer() + BigInt::one();
                let last = hi.ceil().to_integer() - BigInt::one();
                let mut out = Vec::new();
                let mut k = first;
                while k <= last {
                    out.push(i64::try_from(&k).expect("interval endpoint fits in i64"));
                    k += 1;
                }
                Some(out)
            }
        }
    }
}

/// `max_l ρ_l / ρ_{l+1}`, or 1 for a single factor.
pub fn max_consecutive_ratio(rhos: &[i64]) -> Result<BigRational, CohomoError> {
    check_sorted(rhos)?;
    check_positive(rhos)?;
    Ok(rhos
        .windows(2)
        .map(|w| BigRational::new(BigInt::from(w[0]), BigInt::from(w[1])))
        .max()
        .unwrap_or_else(BigRational::one))
}

/// `(1/(1-ρ), ρ/(ρ-1))` for the maximal consecutive ratio `ρ`, or all
/// integers when `ρ = 1`.
pub fn cm_twist_interval(rhos: &[i64]) -> Result<TwistInterval, CohomoError> {
    let ratio = max_consecutive_ratio(rhos)?;
    if ratio.is_one() {
        return Ok(TwistInterval::AllIntegers);
    }
    let one = BigRational::one();
    let lo = &one / (&one - &ratio);
    let hi = &ratio / (&ratio - &one);
    Ok(TwistInterval::Open { lo, hi })
}

/// Whether the `a`-th power of a canonical ideal of the Segre product is
/// Cohen-Macaulay. Requires the maximal consecutive ratio to exceed 1.
pub fn canonical_power_cm(rhos: &[i64], a: i64) -> Result<bool, CohomoError> {
    match cm_twist_interval(rhos)? {
        TwistInterval::AllIntegers => Err(CohomoError::NotApplicable),
        interval => Ok(interval.contains(a)),
    }
}

/// Shift vector of the dual module: `(#_i R_i(a_i))^* = #_i R_i(-a_i)` for a
/// friendly family.
pub fn dual_shift(shifts: &[i64]) -> Vec<i64> {
    shifts.iter().map(|s| -s).collect()
}

/// Renders a rational as `p/q` in lowest terms, or `p` when integral.
pub fn render_rational(x: &BigRational) -> String {
    let (n, d) = (x.numer(), x.denom());
    let g = n.gcd(d);
    let (n, d) = (n / &g, d / &g);
    let (n, d) = if d.is_negative() { (-n, -d) } else { (n, d) };
    if d.is_one() {
        n.to_string()
    } else {
        format!("{n}/{d}")
    }
}
