#![allow(dead_code)]

use fuzzrel::{transitive_closure, Degree, FuzzyRelation, TNorm, TNormId, Universe};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn d(v: f64) -> Degree {
    Degree::new(v).unwrap()
}

/// Degrees biased towards 0 and 1 so predicates hit both branches.
pub fn degree(rng: &mut impl Rng) -> Degree {
    match rng.gen_range(0..10) {
        0..=2 => Degree::ZERO,
        3 => Degree::ONE,
        4 => d([0.25, 0.5, 0.75][rng.gen_range(0..3)]),
        _ => d(rng.gen_range(0.05..=1.0)),
    }
}

pub fn random_relation(rng: &mut impl Rng, n: usize) -> FuzzyRelation {
    FuzzyRelation::from_fn(Universe::alphabetic(n), |_, _| degree(rng))
}

/// Entrywise `R(x, y) · u` with `u` uniform: a random relation below `r`.
pub fn random_subrelation(rng: &mut impl Rng, r: &FuzzyRelation) -> FuzzyRelation {
    FuzzyRelation::from_fn(r.universe().clone(), |i, j| {
        let scale = if rng.gen_bool(0.5) {
            1.0
        } else {
            rng.gen_range(0.0..=1.0)
        };
        d(r.get(i, j).value() * scale)
    })
}

pub fn random_superrelation(rng: &mut impl Rng, r: &FuzzyRelation) -> FuzzyRelation {
    let extra = random_relation(rng, r.size());
    FuzzyRelation::from_fn(r.universe().clone(), |i, j| {
        if rng.gen_bool(0.5) {
            r.get(i, j)
        } else {
            r.get(i, j).max(extra.get(i, j))
        }
    })
}

/// A `∗`-compatible extension of `r`: raise entries at random but never past
/// `R(b, a) → R(a, b)`.
pub fn random_compatible_extension(
    rng: &mut impl Rng,
    r: &FuzzyRelation,
    t: impl TNorm,
) -> FuzzyRelation {
    FuzzyRelation::from_fn(r.universe().clone(), |a, b| {
        let bound = t.residuum(r.get(b, a), r.get(a, b));
        let proposal = if rng.gen_bool(0.3) {
            Degree::ONE
        } else {
            degree(rng)
        };
        r.get(a, b).max(proposal.min(bound))
    })
}

/// Random `∗`-transitive relation; zero entries survive with probability
/// depending on `density`.
pub fn random_transitive(rng: &mut impl Rng, n: usize, t: TNormId, density: f64) -> FuzzyRelation {
    let base = FuzzyRelation::from_fn(Universe::alphabetic(n), |_, _| {
        if rng.gen_bool(density) {
            degree(rng)
        } else {
            Degree::ZERO
        }
    });
    transitive_closure(&base, t)
}

pub fn random_preorder(rng: &mut impl Rng, n: usize, t: TNormId, density: f64) -> FuzzyRelation {
    let base = FuzzyRelation::from_fn(Universe::alphabetic(n), |i, j| {
        if i == j {
            Degree::ONE
        } else if rng.gen_bool(density) {
            degree(rng)
        } else {
            Degree::ZERO
        }
    });
    transitive_closure(&base, t)
}

/// Arcs only go forward in a random permutation, so the closure stays acyclic
/// and therefore irreflexive.
pub fn random_strict_partial_order(
    rng: &mut impl Rng,
    n: usize,
    t: TNormId,
    density: f64,
) -> FuzzyRelation {
    let mut rank: Vec<usize> = (0..n).collect();
    rank.shuffle(rng);
    let base = FuzzyRelation::from_fn(Universe::alphabetic(n), |i, j| {
        if rank[i] < rank[j] && rng.gen_bool(density) {
            degree(rng)
        } else {
            Degree::ZERO
        }
    });
    transitive_closure(&base, t)
}

/// Path-supremum form of the transitive closure, evaluated directly over
/// every walk with at most `n - 1` intermediate nodes.
pub fn closure_by_walks(r: &FuzzyRelation, t: TNormId) -> FuzzyRelation {
    let n = r.size();
    FuzzyRelation::from_fn(r.universe().clone(), |x, y| {
        let mut best = r.get(x, y);
        for len in 1..n {
            let mut seq = vec![0usize; len];
            loop {
                let mut v = r.get(x, seq[0]);
                for w in seq.windows(2) {
                    v = t.conjoin(v, r.get(w[0], w[1]));
                }
                v = t.conjoin(v, r.get(seq[len - 1], y));
                best = best.max(v);
                if !advance(&mut seq, n) {
                    break;
                }
            }
        }
        best
    })
}

/// Odometer step over `0..n` digits; false once every sequence was visited.
fn advance(seq: &mut [usize], n: usize) -> bool {
    for k in (0..seq.len()).rev() {
        seq[k] += 1;
        if seq[k] < n {
            return true;
        }
        seq[k] = 0;
    }
    false
}
