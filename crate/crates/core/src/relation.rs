//! Fuzzy relations over a finite labeled universe.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::tnorm::{Degree, TNorm};

/// Ordered list of distinct alternative names. The order fixes matrix indexing.
#[derive(Debug, Clone)]
pub struct Universe {
    labels: Arc<[String]>,
}

impl Universe {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        let mut seen = HashSet::with_capacity(labels.len());
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(Universe {
            labels: labels.into(),
        })
    }

    /// Universe labeled `a`, `b`, `c`, ... (or `x0`, `x1`, ... past 26).
    pub fn alphabetic(n: usize) -> Self {
        assert!(n >= 1, "universe must be non-empty");
        let labels: Vec<String> = if n <= 26 {
            (0..n)
                .map(|i| ((b'a' + i as u8) as char).to_string())
                .collect()
        } else {
            (0..n).map(|i| format!("x{i}")).collect()
        };
        Universe {
            labels: labels.into(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }
}

impl PartialEq for Universe {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels
    }
}

impl Eq for Universe {}

/// A map `X² → [0, 1]` stored as a dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyRelation {
    universe: Universe,
    entries: Vec<Degree>,
}

impl FuzzyRelation {
    /// Builds a relation from raw rows, validating shape and range.
    pub fn new(universe: Universe, rows: &[Vec<f64>]) -> Result<Self> {
        let n = universe.len();
        if rows.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                detail: format!("matrix has {} rows", rows.len()),
            });
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    detail: format!("row `{}` has {} entries", universe.label(i), row.len()),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                let d = Degree::new(v).map_err(|_| Error::EntryOutOfRange {
                    row: universe.label(i).to_string(),
                    col: universe.label(j).to_string(),
                    value: v,
                })?;
                entries.push(d);
            }
        }
        Ok(FuzzyRelation { universe, entries })
    }

    pub fn from_fn(universe: Universe, mut f: impl FnMut(usize, usize) -> Degree) -> Self {
        let n = universe.len();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        FuzzyRelation { universe, entries }
    }

    pub fn zeros(universe: Universe) -> Self {
        Self::from_fn(universe, |_, _| Degree::ZERO)
    }

    pub fn identity(universe: Universe) -> Self {
        Self::from_fn(
            universe,
            |i, j| if i == j { Degree::ONE } else { Degree::ZERO },
        )
    }

    /// `{0,1}`-valued relation containing exactly the listed pairs.
    pub fn from_crisp<'a, I>(universe: Universe, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut r = Self::zeros(universe);
        for (x, y) in pairs {
            let i = r.universe.index_of(x)?;
            let j = r.universe.index_of(y)?;
            r.set(i, j, Degree::ONE);
        }
        Ok(r)
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn size(&self) -> usize {
        self.universe.len()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Degree {
        self.entries[i * self.size() + j]
    }

    pub fn get_by_label(&self, x: &str, y: &str) -> Result<Degree> {
        Ok(self.get(self.universe.index_of(x)?, self.universe.index_of(y)?))
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, d: Degree) {
        let n = self.size();
        self.entries[i * n + j] = d;
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries
            .chunks(self.size())
            .map(|row| row.iter().map(|d| d.value()).collect())
            .collect()
    }

    pub fn entries(&self) -> &[Degree] {
        &self.entries
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [Degree] {
        &mut self.entries
    }

    fn check_universe(&self, other: &FuzzyRelation) -> Result<()> {
        if self.universe == other.universe {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }

    fn zip_with(
        &self,
        other: &FuzzyRelation,
        f: impl Fn(Degree, Degree) -> Degree,
    ) -> Result<Self> {
        self.check_universe(other)?;
        Ok(FuzzyRelation {
            universe: self.universe.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    /// Pointwise maximum.
    pub fn union(&self, other: &FuzzyRelation) -> Result<Self> {
        self.zip_with(other, Degree::max)
    }

    /// Pointwise minimum.
    pub fn intersection(&self, other: &FuzzyRelation) -> Result<Self> {
        self.zip_with(other, Degree::min)
    }

    /// `self ⊆ other`, i.e. `self(x,y) ≤ other(x,y) + ε` everywhere.
    pub fn is_subset_of(&self, other: &FuzzyRelation) -> Result<bool> {
        self.check_universe(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .all(|(&a, &b)| a.approx_le(b)))
    }

    /// Entrywise equality up to ε.
    pub fn approx_eq(&self, other: &FuzzyRelation) -> bool {
        self.universe == other.universe
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(&a, &b)| a.approx_eq(b))
    }

    /// `R⁻¹(x, y) = R(y, x)`.
    pub fn converse(&self) -> Self {
        Self::from_fn(self.universe.clone(), |i, j| self.get(j, i))
    }

    /// `P_R(x, y) = R(x, y) ∗ ¬R(y, x)`.
    pub fn asymmetric_part(&self, t: impl TNorm) -> Self {
        Self::from_fn(self.universe.clone(), |i, j| {
            t.conjoin(self.get(i, j), t.negation(self.get(j, i)))
        })
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.size()).all(|i| self.get(i, i).is_one())
    }

    pub fn is_irreflexive(&self) -> bool {
        (0..self.size()).all(|i| self.get(i, i).is_zero())
    }

    /// `R(x, y) ∗ R(y, z) ≤ R(x, z)` for all `x, y, z`.
    pub fn is_transitive(&self, t: impl TNorm) -> bool {
        let n = self.size();
        for x in 0..n {
            for y in 0..n {
                let rxy = self.get(x, y);
                if rxy.value() == 0.0 {
                    continue;
                }
                for z in 0..n {
                    if !t.conjoin(rxy, self.get(y, z)).approx_le(self.get(x, z)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `R(x, y) > 0` or `R(y, x) > 0` for all distinct `x, y`.
    pub fn is_total(&self) -> bool {
        self.distinct_pairs()
            .all(|(i, j)| self.get(i, j).is_positive() || self.get(j, i).is_positive())
    }

    /// `R(x, y) = 1` or `R(y, x) = 1` for all distinct `x, y`.
    pub fn is_strongly_total(&self) -> bool {
        self.distinct_pairs()
            .all(|(i, j)| self.get(i, j).is_one() || self.get(j, i).is_one())
    }

    fn distinct_pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.size();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
    }

    pub fn is_crisp(&self) -> bool {
        self.entries.iter().all(|d| d.is_zero() || d.is_one())
    }

    /// `R[x, y]`: the entry at `(x, y)` raised to 1.
    pub fn insert_arc(&self, x: &str, y: &str) -> Result<Self> {
        let i = self.universe.index_of(x)?;
        let j = self.universe.index_of(y)?;
        Ok(self.insert_arc_at(i, j))
    }

    pub fn insert_arc_at(&self, i: usize, j: usize) -> Self {
        let mut r = self.clone();
        r.set(i, j, Degree::ONE);
        r
    }
}

impl fmt::Display for FuzzyRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.size();
        let cells: Vec<String> = self.entries.iter().map(|d| d.to_string()).collect();
        let label_w = self
            .universe
            .labels()
            .iter()
            .map(|l| l.len())
            .max()
            .unwrap_or(0);
        let col_w = cells
            .iter()
            .map(String::len)
            .chain(self.universe.labels().iter().map(String::len))
            .max()
            .unwrap_or(1);
        write!(f, "{:label_w$}", "")?;
        for l in self.universe.labels() {
            write!(f, "  {l:>col_w$}")?;
        }
        writeln!(f)?;
        for i in 0..n {
            write!(f, "{:label_w$}", self.universe.label(i))?;
            for c in &cells[i * n..(i + 1) * n] {
                write!(f, "  {c:>col_w$}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
