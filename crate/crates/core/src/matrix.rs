//! Graded free modules and homogeneous matrices between them.
//!
//! Convention: generator `g_i` of a free module has degree `twists[i]`, so
//! `S(-a)` is the free module with the single twist `a`. A matrix of shift
//! `δ` satisfies `target[i] + deg(entry[i][j]) = source[j] + δ` for every
//! nonzero entry.

use crate::degree::Multidegree;
use crate::error::{Error, Result};
use crate::poly::{PolyRing, Polynomial};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FreeModule {
    twists: Vec<Multidegree>,
}

impl FreeModule {
    pub fn new(twists: Vec<Multidegree>) -> Self {
        FreeModule { twists }
    }

    /// `S^n` with generators in degree zero.
    pub fn standard(ring: &PolyRing, n: usize) -> Self {
        FreeModule::new(vec![ring.zero_degree(); n])
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn is_zero(&self) -> bool {
        self.twists.is_empty()
    }

    pub fn twists(&self) -> &[Multidegree] {
        &self.twists
    }

    pub fn twist_of(&self, i: usize) -> &Multidegree {
        &self.twists[i]
    }

    /// `F(b)`: every generator degree shifts by `-b`.
    pub fn twist(&self, b: &Multidegree) -> FreeModule {
        FreeModule::new(self.twists.iter().map(|t| t - b).collect())
    }

    pub fn direct_sum(&self, other: &FreeModule) -> FreeModule {
        let mut t = self.twists.clone();
        t.extend(other.twists.iter().cloned());
        FreeModule::new(t)
    }

    pub fn select(&self, idx: &[usize]) -> FreeModule {
        FreeModule::new(idx.iter().map(|&i| self.twists[i].clone()).collect())
    }

    pub fn check_rank(&self, ring: &PolyRing) -> Result<()> {
        for t in &self.twists {
            if t.rank() != ring.rank() {
                return Err(Error::mismatch("twist", ring.rank(), t.rank()));
            }
        }
        Ok(())
    }

    /// Degree of a homogeneous vector; `Ok(None)` for zero.
    pub fn vector_degree(&self, ring: &PolyRing, v: &[Polynomial]) -> Result<Option<Multidegree>> {
        if v.len() != self.rank() {
            return Err(Error::mismatch("vector length", self.rank(), v.len()));
        }
        let mut deg: Option<Multidegree> = None;
        for (i, f) in v.iter().enumerate() {
            if let Some(d) = ring.homogeneous_degree(f)? {
                let d = &d + &self.twists[i];
                match &deg {
                    None => deg = Some(d),
                    Some(prev) if *prev != d => return Err(Error::inhomogeneous("vector")),
                    _ => {}
                }
            }
        }
        Ok(deg)
    }
}

/// A homogeneous map `source -> target` of the stated shift.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedMatrix {
    source: FreeModule,
    target: FreeModule,
    shift: Multidegree,
    entries: Vec<Vec<Polynomial>>,
}

impl GradedMatrix {
    pub fn new(
        ring: &PolyRing,
        source: FreeModule,
        target: FreeModule,
        shift: Multidegree,
        entries: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        source.check_rank(ring)?;
        target.check_rank(ring)?;
        if shift.rank() != ring.rank() {
            return Err(Error::mismatch("shift", ring.rank(), shift.rank()));
        }
        if entries.len() != target.rank() {
            return Err(Error::Shape(format!(
                "{} rows for a target of rank {}",
                entries.len(),
                target.rank()
            )));
        }
        for row in &entries {
            if row.len() != source.rank() {
                return Err(Error::Shape(format!(
                    "row of length {} for a source of rank {}",
                    row.len(),
                    source.rank()
                )));
            }
        }
        let m = GradedMatrix {
            source,
            target,
            shift,
            entries,
        };
        m.check_homogeneity(ring)?;
        Ok(m)
    }

    /// Builds a matrix from columns whose degrees (as elements of `target`)
    /// are given; the source twists are `degree - shift`.
    pub fn from_columns(
        ring: &PolyRing,
        target: FreeModule,
        shift: Multidegree,
        columns: Vec<(Vec<Polynomial>, Multidegree)>,
    ) -> Result<Self> {
        let source = FreeModule::new(columns.iter().map(|(_, d)| d - &shift).collect());
        let mut entries = vec![Vec::with_capacity(columns.len()); target.rank()];
        for (col, _) in &columns {
            if col.len() != target.rank() {
                return Err(Error::Shape(format!(
                    "column of length {} for a target of rank {}",
                    col.len(),
                    target.rank()
                )));
            }
            for (i, f) in col.iter().enumerate() {
                entries[i].push(f.clone());
            }
        }
        Self::new(ring, source, target, shift, entries)
    }

    /// Infers column degrees from the entries; zero columns are dropped.
    pub fn from_columns_inferred(
        ring: &PolyRing,
        target: FreeModule,
        shift: Multidegree,
        columns: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        let mut cols = Vec::new();
        for c in columns {
            if let Some(d) = target.vector_degree(ring, &c)? {
                cols.push((c, d));
            }
        }
        Self::from_columns(ring, target, shift, cols)
    }

    pub fn zero(source: FreeModule, target: FreeModule, shift: Multidegree) -> Self {
        let entries = vec![vec![Polynomial::zero(); source.rank()]; target.rank()];
        GradedMatrix {
            source,
            target,
            shift,
            entries,
        }
    }

    pub fn identity(ring: &PolyRing, f: &FreeModule) -> Self {
        let mut m = Self::zero(f.clone(), f.clone(), ring.zero_degree());
        for i in 0..f.rank() {
            m.entries[i][i] = ring.one();
        }
        m
    }

    pub fn source(&self) -> &FreeModule {
        &self.source
    }

    pub fn target(&self) -> &FreeModule {
        &self.target
    }

    pub fn shift(&self) -> &Multidegree {
        &self.shift
    }

    pub fn rows(&self) -> usize {
        self.target.rank()
    }

    pub fn cols(&self) -> usize {
        self.source.rank()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        self.entries.iter().map(|r| r[j].clone()).collect()
    }

    /// Image of source generator `j`, with its degree in the target.
    pub fn column_with_degree(&self, j: usize) -> (Vec<Polynomial>, Multidegree) {
        (self.column(j), &self.source.twists[j] + &self.shift)
    }

    pub fn columns_with_degrees(&self) -> Vec<(Vec<Polynomial>, Multidegree)> {
        (0..self.cols()).map(|j| self.column_with_degree(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Polynomial::is_zero)
    }

    pub fn check_homogeneity(&self, ring: &PolyRing) -> Result<()> {
        for (i, row) in self.entries.iter().enumerate() {
            for (j, f) in row.iter().enumerate() {
                if let Some(d) = ring.homogeneous_degree(f)? {
                    if &self.target.twists[i] + &d != &self.source.twists[j] + &self.shift {
                        return Err(Error::inhomogeneous(format!("matrix entry ({i}, {j})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Entry with a nonzero constant term, scanning rows then columns.
    pub fn first_unit_entry(&self) -> Option<(usize, usize)> {
        for (i, row) in self.entries.iter().enumerate() {
            for (j, f) in row.iter().enumerate() {
                if f.constant_term().is_some() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Whether every entry lies in the homogeneous maximal ideal.
    pub fn is_minimal(&self) -> bool {
        self.first_unit_entry().is_none()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        if other.target != self.source {
            return Err(Error::AmbientMismatch("composition".into()));
        }
        let rows = self.rows();
        let cols = other.cols();
        let mut entries = vec![vec![Polynomial::zero(); cols]; rows];
        for (i, out_row) in entries.iter_mut().enumerate() {
            for k in 0..self.cols() {
                let a = &self.entries[i][k];
                if a.is_zero() {
                    continue;
                }
                for (j, out) in out_row.iter_mut().enumerate() {
                    let b = &other.entries[k][j];
                    if !b.is_zero() {
                        *out = &*out + &(a * b);
                    }
                }
            }
        }
        Ok(GradedMatrix {
            source: other.source.clone(),
            target: self.target.clone(),
            shift: &self.shift + &other.shift,
            entries,
        })
    }

    pub fn apply(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        assert_eq!(v.len(), self.cols());
        self.entries
            .iter()
            .map(|row| {
                let mut acc = Polynomial::zero();
                for (a, b) in row.iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn neg(&self) -> GradedMatrix {
        GradedMatrix {
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|f| -f).collect())
                .collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        if self.source != other.source || self.target != other.target || self.shift != other.shift {
            return Err(Error::AmbientMismatch("difference".into()));
        }
        Ok(GradedMatrix {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(r, s)| r.iter().zip(s).map(|(a, b)| a - b).collect())
                .collect(),
            ..self.clone()
        })
    }

    /// The same entries viewed between `source(b)` and `target(b)`.
    pub fn twist(&self, b: &Multidegree) -> GradedMatrix {
        GradedMatrix {
            source: self.source.twist(b),
            target: self.target.twist(b),
            ..self.clone()
        }
    }

    pub fn transpose_raw(&self) -> Vec<Vec<Polynomial>> {
        (0..self.cols()).map(|j| self.column(j)).collect()
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> GradedMatrix {
        GradedMatrix {
            source: self.source.select(cols),
            target: self.target.select(rows),
            shift: self.shift.clone(),
            entries: rows
                .iter()
                .map(|&i| cols.iter().map(|&j| self.entries[i][j].clone()).collect())
                .collect(),
        }
    }

    /// `[self | other]` over a common target.
    pub fn hstack(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        if self.target != other.target || self.shift != other.shift {
            return Err(Error::AmbientMismatch("horizontal concatenation".into()));
        }
        Ok(GradedMatrix {
            source: self.source.direct_sum(&other.source),
            target: self.target.clone(),
            shift: self.shift.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.iter().chain(b).cloned().collect())
                .collect(),
        })
    }

    /// Block diagonal sum; shifts must agree.
    pub fn block_diag(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        if self.shift != other.shift {
            return Err(Error::AmbientMismatch("block sum".into()));
        }
        let mut entries = Vec::with_capacity(self.rows() + other.rows());
        for r in &self.entries {
            let mut row = r.clone();
            row.extend(std::iter::repeat(Polynomial::zero()).take(other.cols()));
            entries.push(row);
        }
        for r in &other.entries {
            let mut row = vec![Polynomial::zero(); self.cols()];
            row.extend(r.iter().cloned());
            entries.push(row);
        }
        Ok(GradedMatrix {
            source: self.source.direct_sum(&other.source),
            target: self.target.direct_sum(&other.target),
            shift: self.shift.clone(),
            entries,
        })
    }
}
