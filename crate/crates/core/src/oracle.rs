//! Exhaustive ground truth on tiny universes.
//!
//! Every sweep enumerates a finite family (grid-valued relations, crisp
//! relations, or degree triples), checks one property per instance, and
//! returns an [`OracleReport`] with the instance count and the counterexample
//! with the smallest enumeration index. Sweeps run in parallel but reports do
//! not depend on the number of workers.

use rayon::prelude::*;
use serde::Serialize;

use crate::closure::{consistent_closure, transitive_closure, ClosureVariant};
use crate::error::{Error, Result};
use crate::extension::{is_consistent_path_condition, is_star_consistent, RelationClassId};
use crate::relation::{FuzzyRelation, Universe};
use crate::tnorm::{Degree, TNorm, TNormId};

pub const DEFAULT_CAP: u64 = 1 << 25;

/// Discretisation of `[0, 1]` used for exhaustive enumeration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSpec {
    pub universe_size: usize,
    pub values: Vec<f64>,
    #[serde(skip)]
    pub cap: u64,
}

impl GridSpec {
    pub fn new(universe_size: usize, values: &[f64]) -> Result<Self> {
        if !(2..=3).contains(&universe_size) {
            return Err(Error::InvalidGrid(format!(
                "universe size {universe_size} is outside 2..=3"
            )));
        }
        let mut values = values.to_vec();
        if values.is_empty() {
            return Err(Error::InvalidGrid("no values".into()));
        }
        if let Some(v) = values.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::InvalidGrid(format!("value {v} is outside [0, 1]")));
        }
        values.sort_by(f64::total_cmp);
        values.dedup();
        Ok(GridSpec {
            universe_size,
            values,
            cap: DEFAULT_CAP,
        })
    }

    /// `{0, 1/2, 1}`
    pub fn three_valued(universe_size: usize) -> Self {
        Self::new(universe_size, &[0.0, 0.5, 1.0]).expect("valid grid")
    }

    pub fn crisp(universe_size: usize) -> Self {
        Self::new(universe_size, &[0.0, 1.0]).expect("valid grid")
    }

    pub fn with_cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self
    }

    pub fn candidate_count(&self) -> u128 {
        let cells = (self.universe_size * self.universe_size) as u32;
        (self.values.len() as u128).saturating_pow(cells)
    }

    fn checked_count(&self) -> Result<u64> {
        let candidates = self.candidate_count();
        if candidates > self.cap as u128 {
            return Err(Error::EnumerationCapExceeded {
                candidates,
                cap: self.cap,
            });
        }
        Ok(candidates as u64)
    }

    /// The relation at position `index` of the odometer: entries in row-major
    /// order, the last entry turning fastest, values ascending.
    pub fn relation_at(&self, universe: &Universe, index: u64) -> FuzzyRelation {
        let n = self.universe_size;
        let base = self.values.len() as u64;
        let mut digits = vec![0usize; n * n];
        let mut rest = index;
        for d in digits.iter_mut().rev() {
            *d = (rest % base) as usize;
            rest /= base;
        }
        FuzzyRelation::from_fn(universe.clone(), |i, j| {
            Degree::new(self.values[digits[i * n + j]]).expect("grid value in range")
        })
    }

    fn summary(&self) -> GridSummary {
        GridSummary {
            universe_size: Some(self.universe_size),
            values: self.values.clone(),
        }
    }
}

/// Every grid relation exactly once, in odometer order.
pub fn enumerate_relations(grid: &GridSpec) -> Result<impl Iterator<Item = FuzzyRelation> + '_> {
    let total = grid.checked_count()?;
    let universe = Universe::alphabetic(grid.universe_size);
    Ok((0..total).map(move |k| grid.relation_at(&universe, k)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSummary {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub universe_size: Option<usize>,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub index: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relation: Option<FuzzyRelation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<FuzzyRelation>,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub property: String,
    pub grid: GridSummary,
    pub tnorm: Option<TNormId>,
    pub instances_checked: u64,
    pub violations: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_counterexample: Option<Counterexample>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Runs `check` on every index, keeping the lowest-indexed failure.
/// Returns (instances checked, violations, first counterexample).
fn sweep<F>(count: u64, check: F) -> (u64, u64, Option<Counterexample>)
where
    F: Fn(u64) -> Outcome + Sync,
{
    let tally = (0..count)
        .into_par_iter()
        .fold(Tally::default, |mut acc, k| {
            match check(k) {
                Outcome::Pass => {}
                Outcome::Skip => acc.skipped += 1,
                Outcome::Fail(c) => {
                    acc.violations += 1;
                    acc.keep_first(c);
                }
            }
            acc
        })
        .reduce(Tally::default, Tally::merge);
    (count - tally.skipped, tally.violations, tally.first)
}

#[derive(Default)]
struct Tally {
    skipped: u64,
    violations: u64,
    first: Option<Counterexample>,
}

impl Tally {
    fn keep_first(&mut self, c: Counterexample) {
        if self.first.as_ref().is_none_or(|f| c.index < f.index) {
            self.first = Some(c);
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.skipped += other.skipped;
        self.violations += other.violations;
        if let Some(c) = other.first {
            self.keep_first(c);
        }
        self
    }
}

enum Outcome {
    Pass,
    Skip,
    Fail(Counterexample),
}

fn fail(
    index: u64,
    relation: &FuzzyRelation,
    witness: Option<&FuzzyRelation>,
    detail: String,
) -> Outcome {
    Outcome::Fail(Counterexample {
        index,
        relation: Some(relation.clone()),
        witness: witness.cloned(),
        detail,
    })
}

/// The Gödel consistent closure contains `R`, is consistent, and lies below
/// every consistent grid relation containing `R`.
///
/// Consistency is decided by path enumeration, and minimality by comparing
/// against every consistent relation of the grid, so neither check relies on
/// the closure's own claims.
pub fn verify_least_consistent_closure(grid: &GridSpec) -> Result<OracleReport> {
    let total = grid.checked_count()?;
    let n = grid.universe_size;
    let universe = Universe::alphabetic(n);
    let all: Vec<FuzzyRelation> = (0..total).map(|k| grid.relation_at(&universe, k)).collect();
    let consistent: Vec<bool> = all
        .par_iter()
        .map(|r| is_consistent_path_condition(r, TNormId::Godel, n).expect("n within cap"))
        .collect();

    let (checked, violations, first) = sweep(total, |k| {
        let r = &all[k as usize];
        let c = match consistent_closure(r, TNormId::Godel, ClosureVariant::GodelStar) {
            Ok(c) => c,
            Err(e) => return fail(k, r, None, e.to_string()),
        };
        if !r.is_subset_of(&c).unwrap_or(false) {
            return fail(k, r, Some(&c), "closure does not contain R".into());
        }
        if !is_consistent_path_condition(&c, TNormId::Godel, n).expect("n within cap") {
            return fail(k, r, Some(&c), "closure is not consistent".into());
        }
        if consistent[k as usize] && !c.approx_eq(r) {
            return fail(
                k,
                r,
                Some(&c),
                "R is consistent but its closure differs from R".into(),
            );
        }
        for (q, &q_consistent) in all.iter().zip(&consistent) {
            if q_consistent
                && r.is_subset_of(q).unwrap_or(false)
                && !c.is_subset_of(q).unwrap_or(false)
            {
                return fail(
                    k,
                    r,
                    Some(q),
                    "witness is a consistent relation containing R but not the closure".into(),
                );
            }
        }
        Outcome::Pass
    });

    Ok(OracleReport {
        property: "least-closure".into(),
        grid: grid.summary(),
        tnorm: Some(TNormId::Godel),
        instances_checked: checked,
        violations,
        first_counterexample: first,
    })
}

/// Crisp relations on three alternatives as 9-bit masks, bit `3i + j` = `(i, j)`.
mod crisp3 {
    pub const N: usize = 3;
    pub const COUNT: u16 = 1 << (N * N);

    #[inline]
    pub fn has(r: u16, i: usize, j: usize) -> bool {
        r & (1 << (N * i + j)) != 0
    }

    pub fn closure(mut r: u16) -> u16 {
        for k in 0..N {
            for i in 0..N {
                for j in 0..N {
                    if has(r, i, k) && has(r, k, j) {
                        r |= 1 << (N * i + j);
                    }
                }
            }
        }
        r
    }

    pub fn is_transitive(r: u16) -> bool {
        closure(r) == r
    }

    pub fn is_total(r: u16) -> bool {
        (0..N).all(|i| (i + 1..N).all(|j| has(r, i, j) || has(r, j, i)))
    }

    pub fn is_reflexive(r: u16) -> bool {
        (0..N).all(|i| has(r, i, i))
    }

    pub fn is_irreflexive(r: u16) -> bool {
        (0..N).all(|i| !has(r, i, i))
    }

    pub fn asymmetric_part(r: u16) -> u16 {
        let mut p = 0;
        for i in 0..N {
            for j in 0..N {
                if has(r, i, j) && !has(r, j, i) {
                    p |= 1 << (N * i + j);
                }
            }
        }
        p
    }

    /// `R ⊆ Q` and `P_R ⊆ P_Q`.
    pub fn is_compatible_extension(r: u16, q: u16) -> bool {
        r & !q == 0 && asymmetric_part(r) & !asymmetric_part(q) == 0
    }

    pub fn is_consistent(r: u16) -> bool {
        is_compatible_extension(r, closure(r))
    }
}

fn crisp_class_member(r: u16, class: RelationClassId) -> bool {
    match class {
        RelationClassId::StrictPartialOrder => {
            crisp3::is_irreflexive(r) && crisp3::is_transitive(r)
        }
        RelationClassId::Preorder => crisp3::is_reflexive(r) && crisp3::is_transitive(r),
        RelationClassId::Transitive => crisp3::is_transitive(r),
        RelationClassId::Unrestricted => true,
    }
}

fn crisp_to_relation(r: u16, universe: &Universe) -> FuzzyRelation {
    FuzzyRelation::from_fn(universe.clone(), |i, j| {
        if crisp3::has(r, i, j) {
            Degree::ONE
        } else {
            Degree::ZERO
        }
    })
}

/// For every consistent crisp `R` on three alternatives whose transitive
/// closure lies in `class`, the closure equals the intersection of all total,
/// transitive, compatible extensions of `R` in `class`.
///
/// The intersection side is computed on bitmasks with its own closure and
/// compatibility code; the library's transitive closure supplies `T(R)`.
pub fn verify_crisp_duggan_intersection(class: RelationClassId) -> OracleReport {
    let universe = Universe::alphabetic(crisp3::N);
    let total_orders: Vec<u16> = (0..crisp3::COUNT)
        .filter(|&q| {
            crisp3::is_total(q) && crisp3::is_transitive(q) && crisp_class_member(q, class)
        })
        .collect();

    let (checked, violations, first) = sweep(crisp3::COUNT as u64, |k| {
        let r = k as u16;
        if !crisp3::is_consistent(r) || !crisp_class_member(crisp3::closure(r), class) {
            return Outcome::Skip;
        }
        let relation = crisp_to_relation(r, &universe);
        let closure = transitive_closure(&relation, TNormId::Godel);
        let mut extensions = total_orders
            .iter()
            .copied()
            .filter(|&q| crisp3::is_compatible_extension(r, q))
            .peekable();
        if extensions.peek().is_none() {
            return fail(
                k,
                &relation,
                Some(&closure),
                "no total transitive compatible extension".into(),
            );
        }
        let meet = extensions.fold(u16::MAX >> 7, |acc, q| acc & q);
        let meet = crisp_to_relation(meet, &universe);
        if meet != closure {
            return fail(
                k,
                &relation,
                Some(&meet),
                "intersection differs from T(R)".into(),
            );
        }
        Outcome::Pass
    });

    OracleReport {
        property: format!("duggan-crisp/{class}"),
        grid: GridSpec::crisp(crisp3::N).summary(),
        tnorm: None,
        instances_checked: checked,
        violations,
        first_counterexample: first,
    }
}

/// Closure-based and path-based consistency agree on every grid relation.
pub fn verify_consistency_equivalence(grid: &GridSpec, t: TNormId) -> Result<OracleReport> {
    let total = grid.checked_count()?;
    let n = grid.universe_size;
    let universe = Universe::alphabetic(n);
    let (checked, violations, first) = sweep(total, |k| {
        let r = grid.relation_at(&universe, k);
        let by_closure = is_star_consistent(&r, t);
        let by_paths = is_consistent_path_condition(&r, t, n).expect("n within cap");
        if by_closure == by_paths {
            Outcome::Pass
        } else {
            fail(
                k,
                &r,
                None,
                format!("closure says {by_closure}, path enumeration says {by_paths}"),
            )
        }
    });
    Ok(OracleReport {
        property: "consistency-equiv".into(),
        grid: grid.summary(),
        tnorm: Some(t),
        instances_checked: checked,
        violations,
        first_counterexample: first,
    })
}

/// Residuation laws on all triples of the grid `{0, step, 2·step, …, 1}`.
pub fn verify_adjunction_grid(t: impl TNorm + Sync, step: f64) -> Result<OracleReport> {
    let divisions = (1.0 / step).round();
    if !(step > 0.0 && step <= 1.0) || ((1.0 / step) - divisions).abs() > 1e-9 {
        return Err(Error::InvalidGrid(format!("step {step} does not divide 1")));
    }
    let m = divisions as u64;
    let values: Vec<Degree> = (0..=m)
        .map(|k| Degree::new(k as f64 / m as f64).expect("grid value in range"))
        .collect();
    let base = values.len() as u64;

    let (checked, violations, first) = sweep(base.pow(3), |k| {
        let a = values[(k / (base * base)) as usize];
        let b = values[((k / base) % base) as usize];
        let c = values[(k % base) as usize];
        match residuation_law_failure(&t, a, b, c) {
            None => Outcome::Pass,
            Some(law) => Outcome::Fail(Counterexample {
                index: k,
                relation: None,
                witness: None,
                detail: format!("{law} fails at a = {a}, b = {b}, c = {c}"),
            }),
        }
    });

    Ok(OracleReport {
        property: "adjunction".into(),
        grid: GridSummary {
            universe_size: None,
            values: values.iter().map(|d| d.value()).collect(),
        },
        tnorm: t.builtin(),
        instances_checked: checked,
        violations,
        first_counterexample: first,
    })
}

fn residuation_law_failure(
    t: &impl TNorm,
    a: Degree,
    b: Degree,
    c: Degree,
) -> Option<&'static str> {
    let le = |x: Degree, y: Degree| x.approx_le(y);
    let eq = |x: Degree, y: Degree| x.approx_eq(y);
    let laws: [(&'static str, bool); 10] = [
        (
            "a ∗ b ≤ c iff a ≤ b → c",
            le(t.conjoin(a, b), c) == le(a, t.residuum(b, c)),
        ),
        (
            "a ∗ (a → b) ≤ a ∧ b",
            le(t.conjoin(a, t.residuum(a, b)), a.min(b)),
        ),
        (
            "a ∗ b ≤ a and a ∗ b ≤ b",
            le(t.conjoin(a, b), a) && le(t.conjoin(a, b), b),
        ),
        ("b ≤ a → b", le(b, t.residuum(a, b))),
        (
            "a ≤ b iff a → b = 1",
            le(a, b) == eq(t.residuum(a, b), Degree::ONE),
        ),
        ("1 → a = a", eq(t.residuum(Degree::ONE, a), a)),
        ("a → a = 1", eq(t.residuum(a, a), Degree::ONE)),
        (
            "a ≤ ¬b iff a ∗ b = 0",
            le(a, t.negation(b)) == eq(t.conjoin(a, b), Degree::ZERO),
        ),
        ("a ∗ ¬a = 0", eq(t.conjoin(a, t.negation(a)), Degree::ZERO)),
        ("¬a = a → 0", eq(t.negation(a), t.residuum(a, Degree::ZERO))),
    ];
    laws.iter().find(|(_, ok)| !ok).map(|(name, _)| *name)
}
