//! The BGG functors between graded `S`-modules and differential modules
//! over the dual exterior algebra `E`.
//!
//! `E`-modules are right modules. The functor `L` uses the left action
//! `e_i . y = (-1)^j y e_i` for `y` in a piece of degree `(a; j)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::complex::FComplex;
use crate::degree::Multidegree;
use crate::error::{Error, Result};
use crate::exterior::{monomial_product, ExtAlgebra, ExtElement, ExtMonomial};
use crate::field::Coeff;
use crate::linalg::{DenseMatrix, Echelon};
use crate::matrix::{FreeModule, GradedMatrix};
use crate::module::PresentedModule;
use crate::poly::{PolyRing, Polynomial};

/// A finite-dimensional graded `E`-module given by its pieces and the left
/// actions of the `e_i` between them.
#[derive(Clone, Debug)]
pub struct EModuleGraded {
    ext: ExtAlgebra,
    dims: BTreeMap<Multidegree, usize>,
    /// `(D, i)` maps the piece of degree `D` to degree `D + deg e_i`.
    actions: BTreeMap<(Multidegree, usize), DenseMatrix>,
}

impl EModuleGraded {
    /// Assembles a module from pieces and left actions, checking shapes
    /// and the exterior relations.
    pub fn new(
        ext: ExtAlgebra,
        dims: BTreeMap<Multidegree, usize>,
        actions: BTreeMap<(Multidegree, usize), DenseMatrix>,
    ) -> Result<Self> {
        let dims: BTreeMap<_, _> = dims.into_iter().filter(|(_, n)| *n > 0).collect();
        for ((d, i), m) in &actions {
            let src = dims.get(d).copied().unwrap_or(0);
            let tgt = dims.get(&(d + ext.var_degree(*i))).copied().unwrap_or(0);
            if m.cols() != src || m.rows() != tgt {
                return Err(Error::Shape(format!("action of e_{i} on degree {d}")));
            }
        }
        let n = EModuleGraded { ext, dims, actions };
        if !n.actions_anticommute() {
            return Err(Error::Shape("actions do not satisfy the exterior relations".into()));
        }
        Ok(n)
    }

    /// `⊕ E(-t)` for generator degrees `t`.
    pub fn free(ext: &ExtAlgebra, twists: &[Multidegree]) -> Result<Self> {
        Self::from_presentation(ext, twists, &[])
    }

    /// `N = F / R E` for a free right module `F` with generator degrees
    /// `twists` and homogeneous relation vectors `relations`.
    pub fn from_presentation(ext: &ExtAlgebra, twists: &[Multidegree], relations: &[Vec<ExtElement>]) -> Result<Self> {
        for t in twists {
            if t.rank() != ext.rank() {
                return Err(Error::mismatch("generator degree", ext.rank(), t.rank()));
            }
        }
        let field = ext.field().clone();
        let monos = ext.all_monomials();
        // coordinates per degree: (generator, monomial)
        let mut coords: BTreeMap<Multidegree, Vec<(usize, ExtMonomial)>> = BTreeMap::new();
        for (g, t) in twists.iter().enumerate() {
            for &m in &monos {
                coords.entry(t + &ext.monomial_degree(m)).or_default().push((g, m));
            }
        }
        let index: HashMap<(usize, ExtMonomial), (Multidegree, usize)> = coords
            .iter()
            .flat_map(|(d, cs)| cs.iter().enumerate().map(move |(k, c)| (*c, (d.clone(), k))))
            .collect();
        let mut echelons: BTreeMap<Multidegree, Echelon> = coords
            .iter()
            .map(|(d, cs)| (d.clone(), Echelon::new(field.clone(), cs.len())))
            .collect();
        for rel in relations {
            if rel.len() != twists.len() {
                return Err(Error::mismatch("relation length", twists.len(), rel.len()));
            }
            let mut deg: Option<Multidegree> = None;
            for (g, f) in rel.iter().enumerate() {
                if let Some(d) = ext.homogeneous_degree(f)? {
                    let d = &d + &twists[g];
                    if deg.as_ref().is_some_and(|p| *p != d) {
                        return Err(Error::inhomogeneous("exterior relation"));
                    }
                    deg = Some(d);
                }
            }
            let Some(deg) = deg else { continue };
            for &m in &monos {
                let target = &deg + &ext.monomial_degree(m);
                let Some(cs) = coords.get(&target) else { continue };
                let mut v = vec![field.zero(); cs.len()];
                let mut any = false;
                for (g, f) in rel.iter().enumerate() {
                    for (&a, c) in f.terms() {
                        if let Some((neg, prod)) = monomial_product(a, m) {
                            let k = index[&(g, prod)].1;
                            v[k] = if neg { &v[k] - c } else { &v[k] + c };
                            any = true;
                        }
                    }
                }
                if any {
                    echelons.get_mut(&target).unwrap().insert(v);
                }
            }
        }
        let basis: BTreeMap<Multidegree, Vec<usize>> =
            echelons.iter().map(|(d, e)| (d.clone(), e.free_columns())).collect();
        let dims = basis.iter().map(|(d, b)| (d.clone(), b.len())).collect();
        let mut actions = BTreeMap::new();
        for (d, b) in &basis {
            if b.is_empty() {
                continue;
            }
            let j = d.last();
            for i in 0..ext.nvars() {
                let td = d + ext.var_degree(i);
                let Some(tb) = basis.get(&td).filter(|tb| !tb.is_empty()) else { continue };
                let tcoords = &coords[&td];
                let cols: Vec<Vec<Coeff>> = b
                    .iter()
                    .map(|&k| {
                        let (g, m) = coords[d][k];
                        let mut v = vec![field.zero(); tcoords.len()];
                        if let Some((neg, prod)) = monomial_product(m, 1 << i) {
                            let sign = neg ^ (j.rem_euclid(2) == 1);
                            let t = index[&(g, prod)].1;
                            v[t] = if sign { -field.one() } else { field.one() };
                        }
                        echelons[&td].reduce(&mut v);
                        tb.iter().map(|&t| v[t].clone()).collect()
                    })
                    .collect();
                actions.insert((d.clone(), i), DenseMatrix::from_columns(&field, tb.len(), &cols));
            }
        }
        Self::new(ext.clone(), dims, actions)
    }

    pub fn ext(&self) -> &ExtAlgebra {
        &self.ext
    }

    pub fn support(&self) -> Vec<Multidegree> {
        self.dims.keys().cloned().collect()
    }

    pub fn dims(&self) -> &BTreeMap<Multidegree, usize> {
        &self.dims
    }

    pub fn dim(&self, d: &Multidegree) -> usize {
        self.dims.get(d).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// Left action of `e_i` on the piece of degree `d`.
    pub fn action(&self, d: &Multidegree, i: usize) -> DenseMatrix {
        self.actions.get(&(d.clone(), i)).cloned().unwrap_or_else(|| {
            DenseMatrix::zeros(self.ext.field(), self.dim(&(d + self.ext.var_degree(i))), self.dim(d))
        })
    }

    /// `e_i e_j = -e_j e_i` and `e_i^2 = 0` on every piece.
    pub fn actions_anticommute(&self) -> bool {
        let field = self.ext.field();
        for d in self.dims.keys() {
            for i in 0..self.ext.nvars() {
                let di = d + self.ext.var_degree(i);
                for j in i..self.ext.nvars() {
                    let a = self.action(&di, j).mul(&self.action(d, i), field);
                    let dj = d + self.ext.var_degree(j);
                    let b = self.action(&dj, i).mul(&self.action(d, j), field);
                    if !a.add(&b).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// `L(N)`: the term at `j` is `⊕_a S(-a)^{dim N_(a;j)}` and `s ⊗ y` maps to
/// `Σ x_i s ⊗ e_i y`.
pub fn toric_ll(ring: &PolyRing, n: &EModuleGraded) -> Result<FComplex> {
    let ext = n.ext();
    if ext.rank() != ring.rank() + 1 || ext.nvars() != ring.nvars() {
        return Err(Error::RingMismatch);
    }
    // per homological index: (degree, offset) of each piece
    let mut layout: BTreeMap<i64, Vec<(Multidegree, usize)>> = BTreeMap::new();
    let mut twists: BTreeMap<i64, Vec<Multidegree>> = BTreeMap::new();
    for (d, &dim) in n.dims() {
        let (a, j) = d.split_last();
        let t = twists.entry(j).or_default();
        layout.entry(j).or_default().push((d.clone(), t.len()));
        t.extend(std::iter::repeat(a).take(dim));
    }
    let terms: BTreeMap<i64, FreeModule> = twists.into_iter().map(|(j, t)| (j, FreeModule::new(t))).collect();
    let mut maps = BTreeMap::new();
    for (&j, pieces) in &layout {
        let Some(targets) = layout.get(&(j - 1)) else { continue };
        let offsets: HashMap<&Multidegree, usize> = targets.iter().map(|(d, o)| (d, *o)).collect();
        let (src, tgt) = (&terms[&j], &terms[&(j - 1)]);
        let mut entries = vec![vec![Polynomial::zero(); src.rank()]; tgt.rank()];
        for (d, off) in pieces {
            for i in 0..ext.nvars() {
                let td = d + ext.var_degree(i);
                let Some(&toff) = offsets.get(&td) else { continue };
                let act = n.action(d, i);
                for r in 0..act.rows() {
                    for c in 0..act.cols() {
                        let v = act.get(r, c);
                        if !v.is_zero() {
                            let e = &mut entries[toff + r][off + c];
                            *e = &*e + &ring.var(i).scale(v);
                        }
                    }
                }
            }
        }
        let d = GradedMatrix::new(ring, src.clone(), tgt.clone(), ring.zero_degree(), entries)?;
        maps.insert(j, d);
    }
    FComplex::new(terms, maps)
}

/// Degree of the generator of `M_a ⊗ ω_E(-a; 0)`: `(a + Σ deg x_i; n + 1)`.
pub fn omega_twist_degree(ring: &PolyRing, a: &Multidegree) -> Multidegree {
    let mut s = a.clone();
    for i in 0..ring.nvars() {
        s = &s + ring.var_degree(i);
    }
    let mut c = s.coords().to_vec();
    c.push(ring.nvars() as i64);
    Multidegree::new(c)
}

/// `e + ε deg x_i` for generating degrees `e` and `ε ∈ {0, 1}`,
/// deduplicated and sorted.
pub fn default_degree_window(m: &PresentedModule) -> Result<Vec<Multidegree>> {
    let ring = m.ring();
    let mut out = BTreeSet::new();
    for e in m.minimal_generator_degrees()? {
        out.insert(e.clone());
        for i in 0..ring.nvars() {
            out.insert(&e + ring.var_degree(i));
        }
    }
    Ok(out.into_iter().collect())
}

/// A free right `E`-module with a square-zero differential of degree `(0; -1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialEModule {
    ext: ExtAlgebra,
    twists: Vec<Multidegree>,
    del: Vec<Vec<ExtElement>>,
}

impl DifferentialEModule {
    pub fn new(ext: ExtAlgebra, twists: Vec<Multidegree>, del: Vec<Vec<ExtElement>>) -> Result<Self> {
        let n = twists.len();
        if del.len() != n || del.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("differential must be square".into()));
        }
        let shift = Multidegree::zero(ext.rank() - 1).with_last(-1);
        for (i, row) in del.iter().enumerate() {
            for (j, f) in row.iter().enumerate() {
                if let Some(d) = ext.homogeneous_degree(f)? {
                    if &twists[i] + &d != &twists[j] + &shift {
                        return Err(Error::inhomogeneous(format!("exterior entry ({i}, {j})")));
                    }
                }
            }
        }
        let m = DifferentialEModule { ext, twists, del };
        if !m.square().iter().flatten().all(ExtElement::is_zero) {
            return Err(Error::NotSquareZero);
        }
        Ok(m)
    }

    fn square(&self) -> Vec<Vec<ExtElement>> {
        let n = self.twists.len();
        let mut out = vec![vec![ExtElement::zero(); n]; n];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, o) in row.iter_mut().enumerate() {
                for k in 0..n {
                    *o = &*o + &self.del[i][k].mul(&self.del[k][j]);
                }
            }
        }
        out
    }

    pub fn ext(&self) -> &ExtAlgebra {
        &self.ext
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn twists(&self) -> &[Multidegree] {
        &self.twists
    }

    pub fn entry(&self, i: usize, j: usize) -> &ExtElement {
        &self.del[i][j]
    }

    pub fn entries(&self) -> &[Vec<ExtElement>] {
        &self.del
    }
}

/// `R(M)` restricted to a window, with the `(degree, basis index)` label of
/// each generator.
#[derive(Clone, Debug)]
pub struct RResult {
    pub dm: DifferentialEModule,
    pub window: Vec<Multidegree>,
    pub labels: Vec<(Multidegree, usize)>,
}

/// `R(M)` on `⊕_{d ∈ L} M_d ⊗ ω_E(-d; 0)`; components landing outside the
/// window are dropped. Without `window`, finite-dimensional modules use their
/// whole support and others the default window. Generators are ordered by
/// sorted degree, then graded-piece basis.
pub fn toric_rr(m: &PresentedModule, window: Option<&[Multidegree]>) -> Result<RResult> {
    let ring = m.ring();
    ring.theta()?;
    let window: Vec<Multidegree> = match window {
        Some(w) => {
            for d in w {
                if d.rank() != ring.rank() {
                    return Err(Error::mismatch("window degree", ring.rank(), d.rank()));
                }
            }
            w.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect()
        }
        None => match m.finite_support()? {
            Some(mut s) => {
                s.sort();
                s
            }
            None => default_degree_window(m)?,
        },
    };
    let ext = ExtAlgebra::dual_of(ring);
    let mut labels = Vec::new();
    let mut offset: HashMap<Multidegree, usize> = HashMap::new();
    let mut twists = Vec::new();
    for d in &window {
        let dim = m.graded_piece(d)?.dim();
        offset.insert(d.clone(), labels.len());
        for k in 0..dim {
            labels.push((d.clone(), k));
            twists.push(omega_twist_degree(ring, d));
        }
    }
    let n = labels.len();
    let mut del = vec![vec![ExtElement::zero(); n]; n];
    for d in offset.keys() {
        let off = offset[d];
        for i in 0..ring.nvars() {
            let td = d + ring.var_degree(i);
            let Some(&toff) = offset.get(&td) else { continue };
            let mult = m.multiplication_map(d, i)?;
            for r in 0..mult.rows() {
                for c in 0..mult.cols() {
                    let v = mult.get(r, c);
                    if !v.is_zero() {
                        let e = &mut del[toff + r][off + c];
                        *e = &*e + &ext.var(i).scale(v);
                    }
                }
            }
        }
    }
    let dm = DifferentialEModule::new(ext, twists, del)?;
    Ok(RResult { dm, window, labels })
}
