use std::collections::HashMap;

use num_rational::BigRational;

use super::linalg::{rational, LinearMap, SparseEchelon};
use super::OracleError;
use crate::toric::{ToricError, ToricPresentation};

/// A standard graded algebra truncated to degrees `0..=top`.
///
/// `action[k][g]` is multiplication by the `g`-th degree-one basis element,
/// mapping degree `k` to degree `k + 1`, for `k < top`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedAlgebra {
    basis: Vec<Vec<String>>,
    action: Vec<Vec<LinearMap>>,
}

impl TruncatedAlgebra {
    /// Assembles an algebra and checks it: one-dimensional degree 0,
    /// commuting degree-one actions, and generation in degree one.
    pub fn from_parts(
        basis: Vec<Vec<String>>,
        action: Vec<Vec<LinearMap>>,
    ) -> Result<Self, OracleError> {
        let algebra = TruncatedAlgebra { basis, action };
        algebra.check()?;
        Ok(algebra)
    }

    fn check(&self) -> Result<(), OracleError> {
        let fail = |msg: String| Err(OracleError::Invariant(msg));
        if self.basis.first().map(Vec::len) != Some(1) {
            return fail("degree 0 must be one-dimensional".into());
        }
        if self.action.len() != self.basis.len() - 1 {
            return fail(format!(
                "expected {} action layers, found {}",
                self.basis.len() - 1,
                self.action.len()
            ));
        }
        let gens = self.generators();
        for (k, layer) in self.action.iter().enumerate() {
            if layer.len() != gens {
                return fail(format!(
                    "degree {k}: {} action maps for {gens} generators",
                    layer.len()
                ));
            }
            for map in layer {
                if map.ncols() != self.basis[k].len() || map.nrows() != self.basis[k + 1].len() {
                    return fail(format!("degree {k}: action map has the wrong shape"));
                }
            }
        }
        for k in 0..self.action.len().saturating_sub(1) {
            for g in 0..gens {
                for h in (g + 1)..gens {
                    let gh = self.action[k + 1][g].compose(&self.action[k][h]);
                    let hg = self.action[k + 1][h].compose(&self.action[k][g]);
                    if gh != hg {
                        return fail(format!(
                            "generators {g} and {h} do not commute in degree {k}"
                        ));
                    }
                }
            }
        }
        for (k, layer) in self.action.iter().enumerate() {
            let mut span = SparseEchelon::new();
            for map in layer {
                for j in 0..map.ncols() {
                    span.insert(map.column(j).iter().copied());
                }
            }
            if span.rank() != self.basis[k + 1].len() {
                return fail(format!("degree {} is not generated by degree one", k + 1));
            }
        }
        Ok(())
    }

    /// `K[x_1..x_n] / (monomials)` truncated at `top`.
    pub fn from_monomial_quotient(
        vars: &[String],
        relations: &[Vec<u32>],
        top: usize,
    ) -> Result<Self, OracleError> {
        let n = vars.len();
        for rel in relations {
            if rel.len() != n {
                return Err(OracleError::InvalidInput(format!(
                    "relation {rel:?} has {} exponents for {n} variables",
                    rel.len()
                )));
            }
            if rel.iter().all(|&e| e == 0) {
                return Err(OracleError::InvalidInput(
                    "relation 1 kills the whole ring".into(),
                ));
            }
        }
        let survives = |m: &[u32]| {
            !relations
                .iter()
                .any(|r| r.iter().zip(m).all(|(re, me)| re <= me))
        };
        let mut monomials: Vec<Vec<Vec<u32>>> = Vec::with_capacity(top + 1);
        for k in 0..=top {
            let mut layer: Vec<Vec<u32>> = exponent_vectors(n, k as u32)
                .into_iter()
                .filter(|m| survives(m))
                .collect();
            layer.sort_unstable_by(|a, b| b.cmp(a));
            monomials.push(layer);
        }
        let generators = monomials.get(1).cloned().unwrap_or_default();
        let mut action = Vec::with_capacity(top);
        for k in 0..top {
            let index: HashMap<&Vec<u32>, usize> = monomials[k + 1]
                .iter()
                .enumerate()
                .map(|(i, m)| (m, i))
                .collect();
            let layer = generators
                .iter()
                .map(|g| {
                    let cols = monomials[k]
                        .iter()
                        .map(|m| {
                            let prod: Vec<u32> = m.iter().zip(g).map(|(a, b)| a + b).collect();
                            index.get(&prod).map(|&i| vec![(i, 1)]).unwrap_or_default()
                        })
                        .collect();
                    LinearMap::new(monomials[k + 1].len(), cols)
                })
                .collect();
            action.push(layer);
        }
        let basis = monomials
            .iter()
            .map(|layer| layer.iter().map(|m| monomial_label(vars, m)).collect())
            .collect();
        Self::from_parts(basis, action)
    }

    /// `K[A]` truncated at `top`; basis elements are semigroup points.
    pub fn from_toric(
        p: &ToricPresentation,
        top: usize,
        cap: Option<usize>,
    ) -> Result<Self, OracleError> {
        let census = p.census(top, cap).map_err(|e| match e {
            ToricError::ResourceCap { cap, degree } => OracleError::ResourceCap { cap, degree },
            other => OracleError::InvalidInput(other.to_string()),
        })?;
        let points = census.points;
        let generators = points.get(1).cloned().unwrap_or_default();
        let mut action = Vec::with_capacity(top);
        for k in 0..top {
            let index: HashMap<&Vec<i64>, usize> = points[k + 1]
                .iter()
                .enumerate()
                .map(|(i, v)| (v, i))
                .collect();
            let layer = generators
                .iter()
                .map(|g| {
                    let cols = points[k]
                        .iter()
                        .map(|v| {
                            let sum: Vec<i64> = v.iter().zip(g).map(|(a, b)| a + b).collect();
                            vec![(index[&sum], 1)]
                        })
                        .collect();
                    LinearMap::new(points[k + 1].len(), cols)
                })
                .collect();
            action.push(layer);
        }
        let basis = points
            .iter()
            .map(|layer| {
                layer
                    .iter()
                    .map(|v| {
                        format!(
                            "({})",
                            v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
                        )
                    })
                    .collect()
            })
            .collect();
        Self::from_parts(basis, action)
    }

    /// Segre product, truncated at the smaller of the two tops.
    pub fn segre(&self, other: &TruncatedAlgebra) -> TruncatedAlgebra {
        let top = self.top().min(other.top()) as usize;
        let basis = (0..=top)
            .map(|k| {
                let mut layer = Vec::with_capacity(self.basis[k].len() * other.basis[k].len());
                for a in &self.basis[k] {
                    for b in &other.basis[k] {
                        layer.push(format!("{a}⊗{b}"));
                    }
                }
                layer
            })
            .collect();
        let action = (0..top)
            .map(|k| {
                let mut layer = Vec::with_capacity(self.generators() * other.generators());
                for g in &self.action[k] {
                    for h in &other.action[k] {
                        layer.push(g.kron(h));
                    }
                }
                layer
            })
            .collect();
        TruncatedAlgebra { basis, action }
    }

    pub fn top(&self) -> i64 {
        self.basis.len() as i64 - 1
    }

    pub fn generators(&self) -> usize {
        self.basis.get(1).map_or(0, Vec::len)
    }

    pub fn basis(&self, k: i64) -> &[String] {
        if k < 0 || k > self.top() {
            return &[];
        }
        &self.basis[k as usize]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    /// Some in-window degree vanishes, hence so does every later degree.
    pub fn is_artinian(&self) -> bool {
        self.basis.iter().any(Vec::is_empty)
    }

    /// Dimension of degree `k`, or `None` when it lies beyond the window of
    /// a possibly infinite algebra.
    pub fn known_dim(&self, k: i64) -> Option<usize> {
        if k < 0 {
            Some(0)
        } else if k <= self.top() {
            Some(self.basis[k as usize].len())
        } else if self.is_artinian() {
            Some(0)
        } else {
            None
        }
    }

    /// Multiplication by generator `g` from degree `k` to `k + 1`.
    pub fn action(&self, k: i64, g: usize) -> Option<&LinearMap> {
        if k < 0 {
            return None;
        }
        self.action.get(k as usize).map(|layer| &layer[g])
    }

    pub(crate) fn action_layers(&self) -> &[Vec<LinearMap>] {
        &self.action
    }

    /// Reorders the basis of each degree `k >= 2` by `perms[k]`; degree-one
    /// generators keep their order.
    pub fn relabel(&self, perms: &[Vec<usize>]) -> TruncatedAlgebra {
        let perm = |k: usize| -> Vec<usize> {
            if k < 2 {
                (0..self.basis[k].len()).collect()
            } else {
                perms[k].clone()
            }
        };
        let basis = self
            .basis
            .iter()
            .enumerate()
            .map(|(k, layer)| {
                let p = perm(k);
                let mut out = vec![String::new(); layer.len()];
                for (j, label) in layer.iter().enumerate() {
                    out[p[j]] = label.clone();
                }
                out
            })
            .collect();
        let action = self
            .action
            .iter()
            .enumerate()
            .map(|(k, layer)| {
                layer
                    .iter()
                    .map(|m| m.permute(&perm(k), &perm(k + 1)))
                    .collect()
            })
            .collect();
        TruncatedAlgebra { basis, action }
    }
}

/// All exponent vectors of length `n` and total degree `d`.
fn exponent_vectors(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in exponent_vectors(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn monomial_label(vars: &[String], exps: &[u32]) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(exps)
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| {
            if e == 1 {
                v.clone()
            } else {
                format!("{v}^{e}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Rational matrix of a [`LinearMap`], for the dense solver.
pub(crate) fn dense_block(map: &LinearMap) -> Vec<Vec<BigRational>> {
    let mut m = vec![vec![rational(0); map.ncols()]; map.nrows()];
    for j in 0..map.ncols() {
        for &(i, c) in map.column(j) {
            m[i][j] = rational(c);
        }
    }
    m
}
