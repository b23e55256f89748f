use std::sync::Arc;

use super::algebra::TruncatedAlgebra;
use super::linalg::LinearMap;
use super::OracleError;

/// A graded module over a [`TruncatedAlgebra`], known in degrees `lo..=hi`.
///
/// `zero_below` / `zero_above` record whether the module is known to vanish
/// outside the window. `action[k - lo][g]` maps degree `k` to `k + 1`.
#[derive(Clone, Debug)]
pub struct TruncatedModule {
    parent: Arc<TruncatedAlgebra>,
    lo: i64,
    basis: Vec<Vec<String>>,
    action: Vec<Vec<LinearMap>>,
    zero_below: bool,
    zero_above: bool,
    shift: i64,
}

impl TruncatedModule {
    /// The algebra as a free module of rank one over itself.
    pub fn free(parent: Arc<TruncatedAlgebra>) -> Self {
        let basis = (0..=parent.top())
            .map(|k| parent.basis(k).to_vec())
            .collect();
        let action = parent.action_layers().to_vec();
        let zero_above = parent.is_artinian();
        TruncatedModule {
            parent,
            lo: 0,
            basis,
            action,
            zero_below: true,
            zero_above,
            shift: 0,
        }
    }

    pub fn parent(&self) -> &Arc<TruncatedAlgebra> {
        &self.parent
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.basis.len() as i64 - 1
    }

    /// Accumulated twist relative to the module this was built from.
    pub fn shift_tag(&self) -> i64 {
        self.shift
    }

    pub fn zero_below(&self) -> bool {
        self.zero_below
    }

    pub fn zero_above(&self) -> bool {
        self.zero_above
    }

    pub fn basis(&self, k: i64) -> &[String] {
        if k < self.lo || k > self.hi() {
            return &[];
        }
        &self.basis[(k - self.lo) as usize]
    }

    pub fn dim(&self, k: i64) -> usize {
        self.basis(k).len()
    }

    /// Dimension of degree `k` if it is determined by what is stored.
    pub fn known_dim(&self, k: i64) -> Option<usize> {
        if k < self.lo {
            self.zero_below.then_some(0)
        } else if k > self.hi() {
            self.zero_above.then_some(0)
        } else {
            Some(self.dim(k))
        }
    }

    /// Action of generator `g` from degree `k` to `k + 1`, for `lo <= k < hi`.
    pub fn action(&self, k: i64, g: usize) -> Option<&LinearMap> {
        if k < self.lo || k >= self.hi() {
            return None;
        }
        Some(&self.action[(k - self.lo) as usize][g])
    }

    /// `M(a)`, with `M(a)_k = M_{k + a}`.
    pub fn shift(&self, a: i64) -> Self {
        TruncatedModule {
            lo: self.lo - a,
            shift: self.shift + a,
            ..self.clone()
        }
    }

    /// `M # N` over the Segre product of the parents, on the intersection
    /// of the two windows.
    pub fn segre(&self, other: &TruncatedModule) -> Result<Self, OracleError> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi().min(other.hi());
        if lo > hi {
            return Err(OracleError::EmptyWindow {
                left: (self.lo, self.hi()),
                right: (other.lo, other.hi()),
            });
        }
        let parent = Arc::new(self.parent.segre(&other.parent));
        let basis = (lo..=hi)
            .map(|k| {
                let mut layer = Vec::with_capacity(self.dim(k) * other.dim(k));
                for a in self.basis(k) {
                    for b in other.basis(k) {
                        layer.push(format!("{a}⊗{b}"));
                    }
                }
                layer
            })
            .collect();
        let action = (lo..hi)
            .map(|k| {
                let mut layer = Vec::new();
                for g in 0..self.parent.generators() {
                    for h in 0..other.parent.generators() {
                        let left = self.action(k, g).expect("in-window action");
                        let right = other.action(k, h).expect("in-window action");
                        layer.push(left.kron(right));
                    }
                }
                layer
            })
            .collect();
        // the product vanishes wherever the factor with the tighter bound does
        let zero_below =
            (self.lo >= other.lo && self.zero_below) || (other.lo >= self.lo && other.zero_below);
        let zero_above = (self.hi() <= other.hi() && self.zero_above)
            || (other.hi() <= self.hi() && other.zero_above);
        Ok(TruncatedModule {
            parent,
            lo,
            basis,
            action,
            zero_below,
            zero_above,
            shift: 0,
        })
    }

    /// Reorders the basis of degree `k` by `perms[k - lo]`.
    pub fn relabel(&self, perms: &[Vec<usize>]) -> Self {
        let basis = self
            .basis
            .iter()
            .zip(perms)
            .map(|(layer, p)| {
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
            .map(|(idx, layer)| {
                layer
                    .iter()
                    .map(|m| m.permute(&perms[idx], &perms[idx + 1]))
                    .collect()
            })
            .collect();
        TruncatedModule {
            basis,
            action,
            ..self.clone()
        }
    }
}
