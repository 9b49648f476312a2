//! Finite complexes of graded free modules, minimal free resolutions and Ext.

use std::collections::BTreeMap;

use crate::degree::Multidegree;
use crate::error::{Error, Result};
use crate::groebner::syzygies;
use crate::matrix::{FreeModule, GradedMatrix};
use crate::module::{preimage, subquotient, PresentedModule, Subquotient};
use crate::poly::{PolyRing, Polynomial};

/// A bounded complex `... -> C_i -> C_{i-1} -> ...` with `d_i: C_i -> C_{i-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FComplex {
    terms: BTreeMap<i64, FreeModule>,
    maps: BTreeMap<i64, GradedMatrix>,
}

impl FComplex {
    /// Validates shapes, zero shifts, and `d_{i} d_{i+1} = 0`.
    pub fn new(terms: BTreeMap<i64, FreeModule>, maps: BTreeMap<i64, GradedMatrix>) -> Result<Self> {
        let terms: BTreeMap<i64, FreeModule> = terms.into_iter().filter(|(_, f)| !f.is_zero()).collect();
        let empty = FreeModule::default();
        let mut kept = BTreeMap::new();
        for (i, d) in maps {
            let src = terms.get(&i).unwrap_or(&empty);
            let tgt = terms.get(&(i - 1)).unwrap_or(&empty);
            if d.source() != src || d.target() != tgt {
                return Err(Error::AmbientMismatch(format!("differential d_{i}")));
            }
            if !d.shift().is_zero() {
                return Err(Error::Shape(format!("differential d_{i} must have shift 0")));
            }
            if d.rows() > 0 && d.cols() > 0 {
                kept.insert(i, d);
            }
        }
        let c = FComplex { terms, maps: kept };
        for (i, d) in &c.maps {
            if let Some(next) = c.maps.get(&(i + 1)) {
                if !d.compose(next)?.is_zero() {
                    return Err(Error::NotSquareZero);
                }
            }
        }
        Ok(c)
    }

    pub fn zero() -> Self {
        FComplex {
            terms: BTreeMap::new(),
            maps: BTreeMap::new(),
        }
    }

    pub fn range(&self) -> Option<(i64, i64)> {
        Some((*self.terms.keys().next()?, *self.terms.keys().next_back()?))
    }

    pub fn term(&self, i: i64) -> FreeModule {
        self.terms.get(&i).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> &BTreeMap<i64, FreeModule> {
        &self.terms
    }

    /// `d_i`, the zero matrix when not stored.
    pub fn map(&self, ring: &PolyRing, i: i64) -> GradedMatrix {
        self.maps
            .get(&i)
            .cloned()
            .unwrap_or_else(|| GradedMatrix::zero(self.term(i), self.term(i - 1), ring.zero_degree()))
    }

    pub fn ranks(&self) -> BTreeMap<i64, usize> {
        self.terms.iter().map(|(&i, f)| (i, f.rank())).collect()
    }

    /// `ker d_i / im d_{i+1}`, minimally presented.
    pub fn homology(&self, ring: &PolyRing, i: i64) -> Result<Subquotient> {
        let d = self.map(ring, i);
        let ker = preimage(ring, &d, &[])?;
        let im = self.map(ring, i + 1).columns_with_degrees();
        subquotient(ring, &self.term(i), &ker, &im)
    }

    pub fn is_minimal(&self) -> bool {
        self.maps.values().all(GradedMatrix::is_minimal)
    }
}

/// Iterated syzygies of a minimal presentation, stopping when a syzygy module
/// vanishes or after `length_limit` maps.
pub fn minimal_free_resolution(m: &PresentedModule, length_limit: usize) -> Result<FComplex> {
    let ring = m.ring();
    ring.theta()?;
    let min = m.minimal_presentation()?;
    let mut terms = BTreeMap::new();
    let mut maps = BTreeMap::new();
    terms.insert(0, min.generators().clone());
    let mut d = min.relations().clone();
    let mut i = 1i64;
    while d.cols() > 0 && (i as usize) <= length_limit {
        terms.insert(i, d.source().clone());
        maps.insert(i, d.clone());
        d = syzygies(ring, &d)?;
        i += 1;
    }
    FComplex::new(terms, maps)
}

fn dual_module(f: &FreeModule, c: &Multidegree) -> FreeModule {
    FreeModule::new(f.twists().iter().map(|t| &(-t) - c).collect())
}

/// `Hom(d, S(c))` for `d: A -> B`, a map `B* -> A*`.
fn dual_map(ring: &PolyRing, d: &GradedMatrix, c: &Multidegree) -> Result<GradedMatrix> {
    GradedMatrix::new(
        ring,
        dual_module(d.target(), c),
        dual_module(d.source(), c),
        ring.zero_degree(),
        d.transpose_raw(),
    )
}

/// `Ext^i(M, S(c))` from a minimal free resolution, minimally presented.
pub fn ext_module(m: &PresentedModule, i: usize, c: &Multidegree) -> Result<PresentedModule> {
    let ring = m.ring();
    let res = minimal_free_resolution(m, i + 1)?;
    let i = i as i64;
    let fi = dual_module(&res.term(i), c);
    let next = dual_map(ring, &res.map(ring, i + 1), c)?;
    let cycles = preimage(ring, &next, &[])?;
    let bounds = dual_map(ring, &res.map(ring, i), c)?.columns_with_degrees();
    Ok(subquotient(ring, &fi, &cycles, &bounds)?.module)
}

/// All `k x k` minors of a matrix of polynomials, rows and columns taken
/// in lexicographic order of their index sets.
pub fn minors(rows: &[Vec<Polynomial>], k: usize) -> Vec<Polynomial> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for rs in subsets(nrows, k) {
        for cs in subsets(ncols, k) {
            let sub: Vec<Vec<Polynomial>> = rs
                .iter()
                .map(|&r| cs.iter().map(|&c| rows[r][c].clone()).collect())
                .collect();
            let det = determinant(&sub);
            if !det.is_zero() {
                out.push(det);
            }
        }
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out.sort();
    out
}

/// Laplace expansion along the first row.
fn determinant(m: &[Vec<Polynomial>]) -> Polynomial {
    match m.len() {
        0 => unreachable!("empty determinant"),
        1 => m[0][0].clone(),
        n => {
            let mut acc = Polynomial::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, f)| f.clone()).collect())
                    .collect();
                let t = &m[0][j] * &determinant(&minor);
                acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            acc
        }
    }
}
