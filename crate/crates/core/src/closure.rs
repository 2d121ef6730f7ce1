//! Transitive closure and the two consistent closures.
//!
//! The `∗`-transitive closure `T(R)` is the supremum of `∗`-aggregated path
//! values. It is computed by repeated squaring `Q ← Q ∪ (Q ∘ Q)` of the
//! sup-`∗` composition. After `k` rounds every path of length `≤ 2ᵏ` is
//! accounted for, and the supremum over all paths is already attained on paths
//! of length `≤ n` (dropping a cycle removes factors `≤ 1`, and `a ∗ b ≤ a`),
//! so the fixpoint is reached after `⌈log₂ n⌉` rounds and confirmed one round
//! later.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::relation::FuzzyRelation;
use crate::tnorm::{Degree, TNorm, TNormId};

/// Result of a closure computation with its convergence diagnostics.
#[derive(Debug, Clone)]
pub struct ClosureOutcome {
    pub relation: FuzzyRelation,
    pub iterations: usize,
    /// False only if the iteration cap was hit before an exact fixpoint.
    pub converged: bool,
}

/// Sup-`∗` composition: `(R ∘ Q)(x, z) = ⋁_y R(x, y) ∗ Q(y, z)`.
pub fn compose(r: &FuzzyRelation, q: &FuzzyRelation, t: impl TNorm) -> Result<FuzzyRelation> {
    if r.universe() != q.universe() {
        return Err(Error::UniverseMismatch);
    }
    Ok(compose_unchecked(r, q, &t))
}

fn compose_unchecked(r: &FuzzyRelation, q: &FuzzyRelation, t: &impl TNorm) -> FuzzyRelation {
    let n = r.size();
    FuzzyRelation::from_fn(r.universe().clone(), |x, z| {
        (0..n)
            .map(|y| t.conjoin(r.get(x, y), q.get(y, z)))
            .fold(Degree::ZERO, Degree::max)
    })
}

/// `⌈log₂ n⌉ + 2`
pub fn iteration_cap(n: usize) -> usize {
    ceil_log2(n) + 2
}

fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// The least `∗`-transitive relation containing `r`.
pub fn transitive_closure(r: &FuzzyRelation, t: impl TNorm) -> FuzzyRelation {
    transitive_closure_detailed(r, t).relation
}

pub fn transitive_closure_detailed(r: &FuzzyRelation, t: impl TNorm) -> ClosureOutcome {
    let cap = iteration_cap(r.size());
    let mut current = r.clone();
    for iteration in 1..=cap {
        let square = compose_unchecked(&current, &current, &t);
        let mut changed = false;
        for (c, s) in current.entries_mut().iter_mut().zip(square.entries()) {
            if s.value() > c.value() {
                *c = *s;
                changed = true;
            }
        }
        if !changed {
            return ClosureOutcome {
                relation: current,
                iterations: iteration,
                converged: true,
            };
        }
    }
    ClosureOutcome {
        relation: current,
        iterations: cap,
        converged: false,
    }
}

/// Which consistent closure to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureVariant {
    /// `R(x, y) ∨ [T(R)(x, y) ∗ R(y, x)]`
    Delta,
    /// `T(R)(x, y) ∗ [R(x, y) ∨ R(y, x)]`
    Nabla,
    /// `T(R) ∩ (R ∪ R⁻¹)`, Gödel only.
    GodelStar,
}

impl ClosureVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            ClosureVariant::Delta => "delta",
            ClosureVariant::Nabla => "nabla",
            ClosureVariant::GodelStar => "godel_star",
        }
    }
}

impl fmt::Display for ClosureVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClosureVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "delta" => Ok(ClosureVariant::Delta),
            "nabla" => Ok(ClosureVariant::Nabla),
            "star" | "godel_star" => Ok(ClosureVariant::GodelStar),
            other => Err(Error::Parse(format!("unknown closure variant `{other}`"))),
        }
    }
}

pub fn consistent_closure(
    r: &FuzzyRelation,
    t: impl TNorm,
    variant: ClosureVariant,
) -> Result<FuzzyRelation> {
    if variant == ClosureVariant::GodelStar && t.builtin() != Some(TNormId::Godel) {
        return Err(Error::VariantRequiresGodel {
            variant: variant.as_str(),
        });
    }
    let tr = transitive_closure(r, &t);
    let out = FuzzyRelation::from_fn(r.universe().clone(), |x, y| {
        let (rxy, ryx, txy) = (r.get(x, y), r.get(y, x), tr.get(x, y));
        match variant {
            ClosureVariant::Delta => rxy.max(t.conjoin(txy, ryx)),
            ClosureVariant::Nabla => t.conjoin(txy, rxy.max(ryx)),
            ClosureVariant::GodelStar => txy.min(rxy.max(ryx)),
        }
    });
    Ok(out)
}
