//! Hilbert series of standard graded objects.
//!
//! A series is stored as `P(t) / (1 - t)^d` where `P` is a Laurent polynomial
//! with integer coefficients. Negative exponents in `P` encode twists, so
//! `M(a)` is represented by multiplying the numerator of `M` by `t^(-a)`.
//! Every constructor returns the reduced form: if `d > 0` then `P(1) != 0`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Extra coefficients checked after reconstructing a Hadamard product.
pub const DEFAULT_GUARD: usize = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("reconstruction failed: {0}")]
    ReconstructionFailed(String),
    #[error("empty window: lo = {lo} exceeds hi = {hi}")]
    EmptyWindow { lo: i64, hi: i64 },
    #[error("cannot parse series `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HilbertSeries {
    /// Exponent of `numer[0]`.
    low: i64,
    /// Dense numerator coefficients, no zeros at either end.
    numer: Vec<BigInt>,
    denom_power: u32,
}

/// Dimensions of consecutive graded components `lo..=hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientWindow {
    pub lo: i64,
    pub hi: i64,
    pub values: Vec<BigInt>,
}

impl CoefficientWindow {
    pub fn get(&self, n: i64) -> Option<&BigInt> {
        if n < self.lo || n > self.hi {
            return None;
        }
        self.values.get((n - self.lo) as usize)
    }
}

fn binomial(n: &BigInt, k: u32) -> BigInt {
    // n choose k for n >= 0; the caller guarantees n >= 0.
    let mut acc = BigInt::one();
    for j in 0..k {
        acc *= n - BigInt::from(j);
        acc /= BigInt::from(j + 1);
    }
    acc
}

impl HilbertSeries {
    /// Builds `sum c t^e / (1 - t)^d` from `(exponent, coefficient)` terms.
    /// Repeated exponents are added together.
    pub fn new<I>(terms: I, denom_power: u32) -> Self
    where
        I: IntoIterator<Item = (i64, BigInt)>,
    {
        let terms: Vec<(i64, BigInt)> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if terms.is_empty() {
            return HilbertSeries {
                low: 0,
                numer: Vec::new(),
                denom_power: 0,
            };
        }
        let low = terms.iter().map(|(e, _)| *e).min().unwrap();
        let high = terms.iter().map(|(e, _)| *e).max().unwrap();
        let mut numer = vec![BigInt::zero(); (high - low + 1) as usize];
        for (e, c) in terms {
            numer[(e - low) as usize] += c;
        }
        let mut series = HilbertSeries {
            low,
            numer,
            denom_power,
        };
        series.normalize();
        series
    }

    pub fn from_i64_terms(terms: &[(i64, i64)], denom_power: u32) -> Self {
        Self::new(
            terms.iter().map(|&(e, c)| (e, BigInt::from(c))),
            denom_power,
        )
    }

    /// `1 / (1 - t)^d`, the series of a polynomial ring in `d` variables.
    pub fn polynomial_ring(d: u32) -> Self {
        Self::from_i64_terms(&[(0, 1)], d)
    }

    /// A finite generating polynomial `sum values[k] t^(lo + k)`.
    pub fn from_window(window: &CoefficientWindow) -> Self {
        Self::new(
            window
                .values
                .iter()
                .enumerate()
                .map(|(k, c)| (window.lo + k as i64, c.clone())),
            0,
        )
    }

    fn normalize(&mut self) {
        self.trim();
        while self.denom_power > 0 && !self.numer.is_empty() {
            let at_one: BigInt = self.numer.iter().sum();
            if !at_one.is_zero() {
                break;
            }
            // P = (1 - t) Q  =>  Q has coefficients the prefix sums of P.
            let mut quotient = Vec::with_capacity(self.numer.len() - 1);
            let mut running = BigInt::zero();
            for c in &self.numer[..self.numer.len() - 1] {
                running += c;
                quotient.push(running.clone());
            }
            self.numer = quotient;
            self.denom_power -= 1;
            self.trim();
        }
        if self.numer.is_empty() {
            self.low = 0;
            self.denom_power = 0;
        }
    }

    fn trim(&mut self) {
        while self.numer.last().is_some_and(|c| c.is_zero()) {
            self.numer.pop();
        }
        let lead = self.numer.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.numer.drain(..lead);
            self.low += lead as i64;
        }
    }

    pub fn denom_power(&self) -> u32 {
        self.denom_power
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_empty()
    }

    /// Lowest exponent carrying a nonzero numerator coefficient.
    pub fn numerator_low(&self) -> Option<i64> {
        (!self.numer.is_empty()).then_some(self.low)
    }

    pub fn numerator_high(&self) -> Option<i64> {
        (!self.numer.is_empty()).then(|| self.low + self.numer.len() as i64 - 1)
    }

    /// Nonzero numerator terms as `(exponent, coefficient)`, increasing exponent.
    pub fn numerator_terms(&self) -> Vec<(i64, BigInt)> {
        self.numer
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (self.low + k as i64, c.clone()))
            .collect()
    }

    pub fn numerator_at_one(&self) -> BigInt {
        self.numer.iter().sum()
    }

    /// Coefficient of `t^n` in the power-series expansion.
    pub fn coeff(&self, n: i64) -> BigInt {
        let d = self.denom_power;
        let mut acc = BigInt::zero();
        for (k, c) in self.numer.iter().enumerate() {
            let e = self.low + k as i64;
            if e > n {
                break;
            }
            if d == 0 {
                if e == n {
                    acc += c;
                }
                continue;
            }
            // [t^m] (1 - t)^(-d) = C(m + d - 1, d - 1)
            let m = BigInt::from(n - e);
            acc += c * binomial(&(m + BigInt::from(d - 1)), d - 1);
        }
        acc
    }

    /// The twist `H(a)`: `coeff(H(a), n) = coeff(H, n + a)`.
    pub fn shift(&self, a: i64) -> Self {
        HilbertSeries {
            low: if self.numer.is_empty() {
                0
            } else {
                self.low - a
            },
            numer: self.numer.clone(),
            denom_power: self.denom_power,
        }
    }

    pub fn window(&self, lo: i64, hi: i64) -> Result<CoefficientWindow, SeriesError> {
        if lo > hi {
            return Err(SeriesError::EmptyWindow { lo, hi });
        }
        Ok(CoefficientWindow {
            lo,
            hi,
            values: (lo..=hi).map(|n| self.coeff(n)).collect(),
        })
    }

    /// Series of the Segre product: the coefficientwise product of `self` and
    /// `other`, reconstructed as a rational function with denominator
    /// `(1 - t)^(d1 + d2 - 1)`.
    ///
    /// The product stream is computed out to the numerator degree bound plus
    /// `guard` more terms; those extra terms must vanish after multiplying by
    /// the denominator, otherwise the inputs were not of the expected shape.
    pub fn hadamard(&self, other: &HilbertSeries, guard: usize) -> Result<Self, SeriesError> {
        let (d1, d2) = (self.denom_power, other.denom_power);
        if d1 == 0 || d2 == 0 {
            return Err(SeriesError::ReconstructionFailed(format!(
                "both factors need a pole at t = 1 (denominator powers {d1} and {d2})"
            )));
        }
        let (Some(lo1), Some(lo2)) = (self.numerator_low(), other.numerator_low()) else {
            return Ok(HilbertSeries::new(std::iter::empty(), 0));
        };
        let hi1 = self.numerator_high().unwrap();
        let hi2 = other.numerator_high().unwrap();
        let d = d1 + d2 - 1;
        let start = lo1.max(lo2);
        let top = hi1.max(hi2) + i64::from(d);
        let end = top + guard as i64;
        if end < start {
            return Ok(HilbertSeries::new(std::iter::empty(), 0));
        }
        let stream: Vec<BigInt> = (start..=end)
            .map(|n| self.coeff(n) * other.coeff(n))
            .collect();

        // multiply the truncated stream by (1 - t)^d
        let kernel: Vec<BigInt> = (0..=d)
            .map(|j| {
                let b = binomial(&BigInt::from(d), j);
                if j % 2 == 0 {
                    b
                } else {
                    -b
                }
            })
            .collect();
        let mut numer = Vec::with_capacity(stream.len());
        for idx in 0..stream.len() {
            let mut acc = BigInt::zero();
            for (j, kj) in kernel.iter().enumerate() {
                if j > idx {
                    break;
                }
                acc += kj * &stream[idx - j];
            }
            numer.push(acc);
        }
        let keep = (top - start + 1).max(0) as usize;
        if let Some((offset, c)) = numer[keep..].iter().enumerate().find(|(_, c)| !c.is_zero()) {
            return Err(SeriesError::ReconstructionFailed(format!(
                "guard coefficient at t^{} is {c}, expected 0",
                start + (keep + offset) as i64
            )));
        }
        numer.truncate(keep);
        Ok(HilbertSeries::new(
            numer
                .into_iter()
                .enumerate()
                .map(|(k, c)| (start + k as i64, c)),
            d,
        ))
    }
}

impl fmt::Display for HilbertSeries {
    /// `num: c0 e0 c1 e1 ... ; den: d`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "num:")?;
        for (e, c) in self.numerator_terms() {
            write!(f, " {c} {e}")?;
        }
        write!(f, " ; den: {}", self.denom_power)
    }
}

impl FromStr for HilbertSeries {
    type Err = SeriesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fail = |reason: &str| SeriesError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let (num_part, den_part) = s.split_once(';').ok_or_else(|| fail("missing `;`"))?;
        let num_body = num_part
            .trim()
            .strip_prefix("num:")
            .ok_or_else(|| fail("expected `num:` prefix"))?;
        let den_body = den_part
            .trim()
            .strip_prefix("den:")
            .ok_or_else(|| fail("expected `den:` prefix"))?;
        let tokens: Vec<&str> = num_body.split_whitespace().collect();
        if !tokens.len().is_multiple_of(2) {
            return Err(fail("numerator needs coefficient/exponent pairs"));
        }
        let mut terms = Vec::with_capacity(tokens.len() / 2);
        for pair in tokens.chunks(2) {
            let c: BigInt = pair[0]
                .parse()
                .map_err(|_| fail(&format!("bad coefficient `{}`", pair[0])))?;
            let e: i64 = pair[1]
                .parse()
                .map_err(|_| fail(&format!("bad exponent `{}`", pair[1])))?;
            terms.push((e, c));
        }
        let d: u32 = den_body
            .trim()
            .parse()
            .map_err(|_| fail(&format!("bad denominator power `{}`", den_body.trim())))?;
        Ok(HilbertSeries::new(terms, d))
    }
}

impl fmt::Display for CoefficientWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}..{}] {}", self.lo, self.hi, parts.join(" "))
    }
}

/// True when every value is nonnegative, as for a Hilbert function.
pub fn is_hilbert_function(window: &CoefficientWindow) -> bool {
    window.values.iter().all(|v| !v.is_negative())
}
