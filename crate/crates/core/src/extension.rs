//! Compatible extensions, consistency, and constructive totalization.
//!
//! `Q` is a `∗`-compatible extension of `R` when `R ⊆ Q` and
//! `Q(y, x) ≤ R(x, y) → R(y, x)` for every pair; `R` is `∗`-consistent when its
//! transitive closure is such an extension. [`totalize`] grows a transitive
//! relation into a total one by repeatedly inserting an arc at a pair that is
//! zero in both directions and re-closing.

use std::fmt;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::closure::transitive_closure_detailed;
use crate::error::{Error, Result};
use crate::relation::FuzzyRelation;
use crate::tnorm::{Degree, TNorm, TNormId};

/// Default universe-size cap for [`is_consistent_path_condition`].
pub const DEFAULT_PATH_CAP: usize = 6;

fn same_universe(r: &FuzzyRelation, q: &FuzzyRelation) -> Result<()> {
    if r.universe() == q.universe() {
        Ok(())
    } else {
        Err(Error::UniverseMismatch)
    }
}

/// `R ⊆ Q`.
pub fn is_extension(r: &FuzzyRelation, q: &FuzzyRelation) -> Result<bool> {
    r.is_subset_of(q)
}

/// First constraint of a `∗`-compatible extension that fails.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CompatibilityViolation {
    /// `R(x, y) > Q(x, y)`.
    NotAnExtension {
        pair: (String, String),
        r_value: f64,
        q_value: f64,
    },
    /// `Q(pair) > R(pair⁻¹) → R(pair)`.
    ResiduumBound {
        pair: (String, String),
        q_value: f64,
        antecedent: f64,
        consequent: f64,
        bound: f64,
    },
}

impl fmt::Display for CompatibilityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompatibilityViolation::NotAnExtension {
                pair: (a, b),
                r_value,
                q_value,
            } => write!(f, "R({a}, {b}) = {r_value} > Q({a}, {b}) = {q_value}"),
            CompatibilityViolation::ResiduumBound {
                pair: (a, b),
                q_value,
                antecedent,
                consequent,
                bound,
            } => write!(
                f,
                "Q({a}, {b}) = {q_value} > R({b}, {a}) → R({a}, {b}) = {antecedent} → {consequent} = {bound}"
            ),
        }
    }
}

/// Scans pairs in row-major order and returns the first failing constraint.
pub fn star_compatibility_violation(
    r: &FuzzyRelation,
    q: &FuzzyRelation,
    t: impl TNorm,
) -> Result<Option<CompatibilityViolation>> {
    same_universe(r, q)?;
    let u = r.universe();
    let n = r.size();
    let pair = |a: usize, b: usize| (u.label(a).to_string(), u.label(b).to_string());
    for a in 0..n {
        for b in 0..n {
            if !r.get(a, b).approx_le(q.get(a, b)) {
                return Ok(Some(CompatibilityViolation::NotAnExtension {
                    pair: pair(a, b),
                    r_value: r.get(a, b).value(),
                    q_value: q.get(a, b).value(),
                }));
            }
        }
    }
    Ok(residuum_violation(r, q, &t))
}

/// `Q(a, b) ≤ R(b, a) → R(a, b)` for all `a, b`, without the inclusion check.
fn residuum_violation(
    r: &FuzzyRelation,
    q: &FuzzyRelation,
    t: &impl TNorm,
) -> Option<CompatibilityViolation> {
    let u = r.universe();
    let n = r.size();
    for a in 0..n {
        for b in 0..n {
            let (antecedent, consequent) = (r.get(b, a), r.get(a, b));
            let bound = t.residuum(antecedent, consequent);
            if !q.get(a, b).approx_le(bound) {
                return Some(CompatibilityViolation::ResiduumBound {
                    pair: (u.label(a).to_string(), u.label(b).to_string()),
                    q_value: q.get(a, b).value(),
                    antecedent: antecedent.value(),
                    consequent: consequent.value(),
                    bound: bound.value(),
                });
            }
        }
    }
    None
}

pub fn is_star_compatible_extension(
    r: &FuzzyRelation,
    q: &FuzzyRelation,
    t: impl TNorm,
) -> Result<bool> {
    Ok(star_compatibility_violation(r, q, t)?.is_none())
}

/// The negation-based notion: `R ⊆ Q` and `P_R ⊆ P_Q`.
pub fn is_compatible_extension_asym(
    r: &FuzzyRelation,
    q: &FuzzyRelation,
    t: impl TNorm,
) -> Result<bool> {
    if !r.is_subset_of(q)? {
        return Ok(false);
    }
    r.asymmetric_part(&t).is_subset_of(&q.asymmetric_part(&t))
}

/// The pair at which `T(R)` breaks the residuum bound, if any.
pub fn consistency_violation(r: &FuzzyRelation, t: impl TNorm) -> Option<CompatibilityViolation> {
    let closure = transitive_closure_detailed(r, &t).relation;
    residuum_violation(r, &closure, &t)
}

/// `T(R)(y, x) ≤ R(x, y) → R(y, x)` for all `x, y`.
pub fn is_star_consistent(r: &FuzzyRelation, t: impl TNorm) -> bool {
    consistency_violation(r, t).is_none()
}

/// Consistency decided by path enumeration instead of the closure: for every
/// `x, y` and every chain `y → t₁ → … → tₖ → x` with distinct intermediate
/// nodes, the chain value must not exceed `R(x, y) → R(y, x)`.
///
/// Walks with repeated nodes need no separate check since removing a cycle
/// never lowers a chain value.
pub fn is_consistent_path_condition(r: &FuzzyRelation, t: impl TNorm, cap: usize) -> Result<bool> {
    let n = r.size();
    if n > cap {
        return Err(Error::UniverseTooLarge { size: n, cap });
    }
    let mut used = vec![false; n];
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            let bound = t.residuum(r.get(x, y), r.get(y, x));
            if bound.is_one() {
                continue;
            }
            // first hop y → t₁
            for t1 in 0..n {
                used[t1] = true;
                let v = r.get(y, t1);
                let bad = path_exceeds(r, &t, x, t1, v, bound, &mut used);
                used[t1] = false;
                if bad {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Extends a chain currently ending at `last` with value `acc`; true if some
/// completion to `target` exceeds `bound`.
fn path_exceeds(
    r: &FuzzyRelation,
    t: &impl TNorm,
    target: usize,
    last: usize,
    acc: Degree,
    bound: Degree,
    used: &mut [bool],
) -> bool {
    // chain values only decrease as it grows
    if acc.approx_le(bound) {
        return false;
    }
    if !t.conjoin(acc, r.get(last, target)).approx_le(bound) {
        return true;
    }
    for next in 0..r.size() {
        if used[next] {
            continue;
        }
        used[next] = true;
        let v = t.conjoin(acc, r.get(last, next));
        let bad = path_exceeds(r, t, target, next, v, bound, used);
        used[next] = false;
        if bad {
            return true;
        }
    }
    false
}

/// Classes of relations the totalization is run within.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationClassId {
    /// Irreflexive and `∗`-transitive.
    StrictPartialOrder,
    /// Reflexive and `∗`-transitive.
    Preorder,
    Transitive,
    Unrestricted,
}

impl RelationClassId {
    pub const ALL: [RelationClassId; 4] = [
        RelationClassId::StrictPartialOrder,
        RelationClassId::Preorder,
        RelationClassId::Transitive,
        RelationClassId::Unrestricted,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RelationClassId::StrictPartialOrder => "strict_partial_order",
            RelationClassId::Preorder => "preorder",
            RelationClassId::Transitive => "transitive",
            RelationClassId::Unrestricted => "unrestricted",
        }
    }
}

impl fmt::Display for RelationClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RelationClassId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "r1" | "strict_partial_order" => Ok(RelationClassId::StrictPartialOrder),
            "r2" | "preorder" => Ok(RelationClassId::Preorder),
            "r3" | "transitive" => Ok(RelationClassId::Transitive),
            "any" | "unrestricted" => Ok(RelationClassId::Unrestricted),
            other => Err(Error::Parse(format!("unknown relation class `{other}`"))),
        }
    }
}

pub fn is_class_member(r: &FuzzyRelation, class: RelationClassId, t: impl TNorm) -> bool {
    match class {
        RelationClassId::StrictPartialOrder => r.is_irreflexive() && r.is_transitive(t),
        RelationClassId::Preorder => r.is_reflexive() && r.is_transitive(t),
        RelationClassId::Transitive => r.is_transitive(t),
        RelationClassId::Unrestricted => true,
    }
}

/// Order in which candidate pairs are scanned for arc insertion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ArcOrder {
    /// Row-major over the universe's label order.
    #[default]
    Lexicographic,
    /// A fixed permutation of all ordered pairs drawn from the seed.
    Shuffled(u64),
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtensionReport {
    pub result: FuzzyRelation,
    pub tnorm: Option<TNormId>,
    pub class: RelationClassId,
    pub inserted_arcs: Vec<(String, String)>,
    pub iterations: usize,
    pub verified_total: bool,
    pub verified_transitive: bool,
    pub verified_star_compatible: bool,
    pub verified_class_member: bool,
    pub converged: bool,
}

impl ExtensionReport {
    pub fn all_verified(&self) -> bool {
        self.verified_total
            && self.verified_transitive
            && self.verified_star_compatible
            && self.verified_class_member
            && self.converged
    }
}

/// Extends a `∗`-transitive member of `class` to a total `∗`-transitive one.
///
/// Under Gödel the result is guaranteed to be a `∧`-compatible extension of
/// `r`; for the other t-norms the flag records what the post-hoc check found.
pub fn totalize(
    r: &FuzzyRelation,
    t: impl TNorm,
    class: RelationClassId,
) -> Result<ExtensionReport> {
    totalize_with_order(r, t, class, ArcOrder::Lexicographic)
}

pub fn totalize_with_order(
    r: &FuzzyRelation,
    t: impl TNorm,
    class: RelationClassId,
    order: ArcOrder,
) -> Result<ExtensionReport> {
    if !r.is_transitive(&t) {
        return Err(Error::Precondition(
            "input relation is not transitive".into(),
        ));
    }
    if !is_class_member(r, class, &t) {
        return Err(Error::Precondition(format!(
            "input relation is not a member of class {class}"
        )));
    }

    let n = r.size();
    let mut candidates: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    if let ArcOrder::Shuffled(seed) = order {
        candidates.shuffle(&mut StdRng::seed_from_u64(seed));
    }

    let mut q = r.clone();
    let mut inserted_arcs = Vec::new();
    let mut iterations = 0;
    let mut converged = true;
    let max_iterations = n * n;
    loop {
        let next = candidates
            .iter()
            .copied()
            .find(|&(i, j)| q.get(i, j).is_zero() && q.get(j, i).is_zero());
        let Some((i, j)) = next else { break };
        if iterations == max_iterations {
            converged = false;
            break;
        }
        iterations += 1;
        let outcome = transitive_closure_detailed(&q.insert_arc_at(i, j), &t);
        converged &= outcome.converged;
        q = outcome.relation;
        let u = q.universe();
        inserted_arcs.push((u.label(i).to_string(), u.label(j).to_string()));
    }

    Ok(ExtensionReport {
        verified_total: q.is_total(),
        verified_transitive: q.is_transitive(&t),
        verified_star_compatible: is_star_compatible_extension(r, &q, &t)?,
        verified_class_member: is_class_member(&q, class, &t),
        tnorm: t.builtin(),
        class,
        inserted_arcs,
        iterations,
        converged,
        result: q,
    })
}

/// Total transitive compatible extension of a merely consistent relation:
/// check consistency, close, totalize, then re-verify compatibility against
/// the original relation. Returns `None` when `r` is not `∗`-consistent.
pub fn extend_consistent(r: &FuzzyRelation, t: impl TNorm) -> Result<Option<ExtensionReport>> {
    if !is_star_consistent(r, &t) {
        return Ok(None);
    }
    let closure = transitive_closure_detailed(r, &t);
    let mut report = totalize(&closure.relation, &t, RelationClassId::Transitive)?;
    report.verified_star_compatible = is_star_compatible_extension(r, &report.result, &t)?;
    report.converged &= closure.converged;
    Ok(Some(report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::Universe;
    use crate::tnorm::TNormId::*;

    fn xy() -> Universe {
        Universe::new(["x", "y"]).unwrap()
    }

    fn ex47() -> (FuzzyRelation, FuzzyRelation) {
        let r = FuzzyRelation::new(xy(), &[vec![1.0, 0.5], vec![1.0 / 3.0, 1.0]]).unwrap();
        let q = FuzzyRelation::new(xy(), &[vec![1.0, 2.0 / 3.0], vec![2.0 / 3.0, 1.0]]).unwrap();
        (r, q)
    }

    fn crisp(n: usize, pairs: &[(&str, &str)]) -> FuzzyRelation {
        FuzzyRelation::from_crisp(Universe::alphabetic(n), pairs.iter().copied()).unwrap()
    }

    #[test]
    fn extension_examples() {
        let (r, q) = ex47();
        assert!(is_extension(&r, &q).unwrap());
        assert!(is_extension(&r, &r).unwrap());
        assert!(!is_extension(&q, &r).unwrap());
    }

    #[test]
    fn star_compatibility_examples() {
        let (r, q) = ex47();
        assert!(!is_star_compatible_extension(&r, &q, Godel).unwrap());
        for t in TNormId::ALL {
            assert!(is_star_compatible_extension(&r, &r, t).unwrap());
        }
        let r = crisp(3, &[("a", "b")]);
        let q = crisp(3, &[("a", "b"), ("b", "c")]);
        assert!(is_star_compatible_extension(&r, &q, Godel).unwrap());
    }

    #[test]
    fn violation_names_the_offending_entry() {
        let (r, q) = ex47();
        let v = star_compatibility_violation(&r, &q, Godel)
            .unwrap()
            .unwrap();
        match v {
            CompatibilityViolation::ResiduumBound {
                pair,
                q_value,
                antecedent,
                consequent,
                bound,
            } => {
                assert_eq!(pair, ("y".to_string(), "x".to_string()));
                assert_eq!(q_value, 2.0 / 3.0);
                assert_eq!(antecedent, 0.5);
                assert_eq!(consequent, 1.0 / 3.0);
                assert_eq!(bound, 1.0 / 3.0);
            }
            other => panic!("unexpected {other:?}"),
        }
        let v = star_compatibility_violation(&q, &r, Godel)
            .unwrap()
            .unwrap();
        assert!(matches!(v, CompatibilityViolation::NotAnExtension { .. }));
    }

    #[test]
    fn asym_compatibility_examples() {
        let (r, q) = ex47();
        assert!(is_compatible_extension_asym(&r, &q, Godel).unwrap());
        assert!(is_compatible_extension_asym(&r, &r, Godel).unwrap());
        let r = crisp(2, &[("a", "b")]);
        let q = crisp(2, &[("a", "b"), ("b", "a")]);
        for t in TNormId::ALL {
            assert!(!is_compatible_extension_asym(&r, &q, t).unwrap());
        }
    }

    #[test]
    fn universe_mismatch_is_an_error() {
        let (r, _) = ex47();
        let other = FuzzyRelation::identity(Universe::alphabetic(2));
        assert!(is_extension(&r, &other).is_err());
        assert!(is_star_compatible_extension(&r, &other, Godel).is_err());
        assert!(is_compatible_extension_asym(&r, &other, Godel).is_err());
    }

    #[test]
    fn consistency_examples() {
        let (r, _) = ex47();
        assert!(is_star_consistent(&r, Godel));
        assert!(is_consistent_path_condition(&r, Godel, DEFAULT_PATH_CAP).unwrap());

        let cycle = crisp(3, &[("a", "b"), ("b", "c"), ("c", "a")]);
        for t in TNormId::ALL {
            assert!(!is_star_consistent(&cycle, t));
            assert!(!is_consistent_path_condition(&cycle, t, DEFAULT_PATH_CAP).unwrap());
        }
        // first failure in row-major order: T(R)(a, c) = 1 but R(c, a) → R(a, c) = 0
        let v = consistency_violation(&cycle, Godel).unwrap();
        match v {
            CompatibilityViolation::ResiduumBound { pair, bound, .. } => {
                assert_eq!(pair, ("a".to_string(), "c".to_string()));
                assert_eq!(bound, 0.0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn path_condition_respects_cap() {
        let r = FuzzyRelation::identity(Universe::alphabetic(7));
        assert!(matches!(
            is_consistent_path_condition(&r, Godel, DEFAULT_PATH_CAP),
            Err(Error::UniverseTooLarge { size: 7, cap: 6 })
        ));
        assert!(is_consistent_path_condition(&r, Godel, 7).unwrap());
    }

    #[test]
    fn class_membership_examples() {
        let r = crisp(2, &[("a", "b")]);
        assert!(is_class_member(
            &r,
            RelationClassId::StrictPartialOrder,
            Godel
        ));
        assert!(is_class_member(&r, RelationClassId::Transitive, Godel));
        assert!(!is_class_member(&r, RelationClassId::Preorder, Godel));

        let id = FuzzyRelation::identity(Universe::alphabetic(3));
        assert!(!is_class_member(
            &id,
            RelationClassId::StrictPartialOrder,
            Godel
        ));
        assert!(is_class_member(&id, RelationClassId::Preorder, Godel));
        assert!(is_class_member(&id, RelationClassId::Transitive, Godel));

        let ex66 = FuzzyRelation::new(
            Universe::alphabetic(3),
            &[
                vec![1.0, 1.0 / 3.0, 1.0],
                vec![0.25, 1.0, 0.5],
                vec![0.5, 1.0, 1.0],
            ],
        )
        .unwrap();
        assert!(ex66.is_reflexive());
        for c in [
            RelationClassId::StrictPartialOrder,
            RelationClassId::Preorder,
            RelationClassId::Transitive,
        ] {
            assert!(!is_class_member(&ex66, c, Godel));
        }
        assert!(is_class_member(&ex66, RelationClassId::Unrestricted, Godel));
    }

    #[test]
    fn totalize_crisp_strict_order() {
        let r = crisp(3, &[("a", "b")]);
        let report = totalize(&r, Godel, RelationClassId::StrictPartialOrder).unwrap();
        let arcs: Vec<(&str, &str)> = report
            .inserted_arcs
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect();
        assert_eq!(arcs, vec![("a", "c"), ("b", "c")]);
        assert_eq!(
            report.result,
            crisp(3, &[("a", "b"), ("a", "c"), ("b", "c")])
        );
        assert!(report.all_verified());
        assert_eq!(report.iterations, 2);
    }

    #[test]
    fn totalize_already_total_is_a_no_op() {
        let (r, _) = ex47();
        let report = totalize(&r, Godel, RelationClassId::Transitive).unwrap();
        assert_eq!(report.result, r);
        assert!(report.inserted_arcs.is_empty());
        assert_eq!(report.iterations, 0);
        assert!(report.all_verified());
    }

    #[test]
    fn totalize_identity_preorder() {
        let id = FuzzyRelation::identity(Universe::alphabetic(2));
        let report = totalize(&id, Godel, RelationClassId::Preorder).unwrap();
        assert_eq!(
            report.inserted_arcs,
            vec![("a".to_string(), "b".to_string())]
        );
        assert_eq!(report.result.rows(), vec![vec![1.0, 1.0], vec![0.0, 1.0]]);
        assert!(report.result.is_reflexive());
        assert!(report.all_verified());
    }

    #[test]
    fn totalize_rejects_bad_inputs() {
        let cycle_free_but_intransitive = crisp(3, &[("a", "b"), ("b", "c")]);
        assert!(matches!(
            totalize(
                &cycle_free_but_intransitive,
                Godel,
                RelationClassId::Unrestricted
            ),
            Err(Error::Precondition(_))
        ));
        let id = FuzzyRelation::identity(Universe::alphabetic(2));
        assert!(matches!(
            totalize(&id, Godel, RelationClassId::StrictPartialOrder),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn shuffled_orders_still_verify() {
        let r = crisp(4, &[("a", "b"), ("c", "d")]);
        for seed in 0..20 {
            let report = totalize_with_order(
                &r,
                Godel,
                RelationClassId::StrictPartialOrder,
                ArcOrder::Shuffled(seed),
            )
            .unwrap();
            assert!(report.all_verified(), "seed {seed}");
        }
    }

    #[test]
    fn extend_consistent_routes() {
        let cycle = crisp(3, &[("a", "b"), ("b", "c"), ("c", "a")]);
        assert!(extend_consistent(&cycle, Godel).unwrap().is_none());

        let chain = crisp(3, &[("a", "b"), ("b", "c")]);
        let report = extend_consistent(&chain, Godel).unwrap().unwrap();
        assert!(report.all_verified());
        assert!(is_star_compatible_extension(&chain, &report.result, Godel).unwrap());
    }

    #[test]
    fn class_names() {
        assert_eq!(
            "r1".parse::<RelationClassId>().unwrap(),
            RelationClassId::StrictPartialOrder
        );
        assert_eq!(
            "any".parse::<RelationClassId>().unwrap(),
            RelationClassId::Unrestricted
        );
        assert!("r4".parse::<RelationClassId>().is_err());
    }
}
