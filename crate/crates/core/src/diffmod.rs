//! Differential modules: a graded module `D` with a square-zero endomorphism
//! `∂: D -> D(a)`, free flag resolutions and minimization.

use std::collections::{BTreeMap, HashMap};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::complex::FComplex;
use crate::degree::Multidegree;
use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::linalg::{DenseMatrix, Echelon};
use crate::matrix::{FreeModule, GradedMatrix};
use crate::module::{check_map, preimage, subquotient, DegVector, PresentedModule, Subquotient};
use crate::poly::{Exponents, PolyRing, Polynomial};

#[derive(Clone, Debug)]
pub struct DifferentialModule {
    ring: PolyRing,
    module: PresentedModule,
    del: GradedMatrix,
}

impl DifferentialModule {
    /// Validates homogeneity, that `del` preserves the relations, and that
    /// `del^2` vanishes modulo the relations.
    pub fn new(module: PresentedModule, del: GradedMatrix) -> Result<Self> {
        let ring = module.ring().clone();
        if del.source() != module.generators() || del.target() != module.generators() {
            return Err(Error::AmbientMismatch("differential must be an endomorphism of the generators".into()));
        }
        del.check_homogeneity(&ring)?;
        let gb = module.relation_gb()?;
        for j in 0..module.relations().cols() {
            if !gb.contains(&del.apply(&module.relations().column(j)))? {
                return Err(Error::RelationsNotPreserved);
            }
        }
        for j in 0..del.cols() {
            if !gb.contains(&del.apply(&del.column(j)))? {
                return Err(Error::NotSquareZero);
            }
        }
        Ok(DifferentialModule { ring, module, del })
    }

    /// A differential on a free module.
    pub fn free(ring: &PolyRing, del: GradedMatrix) -> Result<Self> {
        Self::new(PresentedModule::free(ring, del.source().clone()), del)
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    /// The degree `a` of the differential.
    pub fn degree(&self) -> &Multidegree {
        self.del.shift()
    }

    pub fn module(&self) -> &PresentedModule {
        &self.module
    }

    pub fn del(&self) -> &GradedMatrix {
        &self.del
    }

    pub fn generators(&self) -> &FreeModule {
        self.module.generators()
    }

    pub fn rank(&self) -> usize {
        self.module.num_generators()
    }

    pub fn is_free(&self) -> bool {
        self.module.is_free()
    }

    /// Every entry of the differential lies in the maximal ideal.
    pub fn is_minimal(&self) -> bool {
        self.del.is_minimal()
    }

    /// `ker ∂ / im ∂`, minimally presented, with generator images that are
    /// cycles of `D` (modulo its relations).
    pub fn homology(&self) -> Result<Subquotient> {
        let rels = self.module.relations().columns_with_degrees();
        let cycles = preimage(&self.ring, &self.del, &rels)?;
        let mut bounds: Vec<DegVector> = self.del.columns_with_degrees();
        bounds.extend(rels);
        subquotient(&self.ring, self.generators(), &cycles, &bounds)
    }

    pub fn is_exact(&self) -> Result<bool> {
        self.homology()?.module.is_zero_module()
    }
}

/// A free differential module with a flag `F = F_0 ⊕ F_1 ⊕ ...` such that
/// `∂(F_i) ⊆ F_0 ⊕ ... ⊕ F_{i-1}`.
#[derive(Clone, Debug)]
pub struct FlagDM {
    dm: DifferentialModule,
    blocks: Vec<Vec<usize>>,
}

impl FlagDM {
    pub fn new(dm: DifferentialModule, blocks: Vec<Vec<usize>>) -> Result<Self> {
        if !dm.is_free() {
            return Err(Error::Shape("a flag needs a free underlying module".into()));
        }
        let mut block_of = vec![usize::MAX; dm.rank()];
        for (b, idx) in blocks.iter().enumerate() {
            for &g in idx {
                if g >= dm.rank() || block_of[g] != usize::MAX {
                    return Err(Error::Shape("flag blocks must partition the generators".into()));
                }
                block_of[g] = b;
            }
        }
        if block_of.contains(&usize::MAX) {
            return Err(Error::Shape("flag blocks must partition the generators".into()));
        }
        for i in 0..dm.rank() {
            for j in 0..dm.rank() {
                if !dm.del.entry(i, j).is_zero() && block_of[i] >= block_of[j] {
                    return Err(Error::Shape(format!(
                        "entry ({i}, {j}) does not map block {} into earlier blocks",
                        block_of[j]
                    )));
                }
            }
        }
        Ok(FlagDM { dm, blocks })
    }

    pub fn dm(&self) -> &DifferentialModule {
        &self.dm
    }

    pub fn into_dm(self) -> DifferentialModule {
        self.dm
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_ranks(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// Recovers the complex when `∂` only maps block `i` to block `i - 1`.
    pub fn unfold(&self) -> Result<FComplex> {
        let ring = self.dm.ring();
        let a = self.dm.degree();
        let mut terms = BTreeMap::new();
        let mut maps = BTreeMap::new();
        for (i, idx) in self.blocks.iter().enumerate() {
            let twist = a.scaled(i as i64);
            terms.insert(i as i64, self.dm.generators().select(idx).twist(&-&twist));
        }
        for i in 1..self.blocks.len() {
            for (k, tgt) in self.blocks.iter().enumerate() {
                if k + 1 != i && !self.dm.del.submatrix(tgt, &self.blocks[i]).is_zero() {
                    return Err(Error::Shape("flag is not a folded complex".into()));
                }
            }
            let sub = self.dm.del.submatrix(&self.blocks[i - 1], &self.blocks[i]);
            let d = GradedMatrix::new(
                ring,
                terms[&(i as i64)].clone(),
                terms[&(i as i64 - 1)].clone(),
                ring.zero_degree(),
                sub.entries().to_vec(),
            )?;
            maps.insert(i as i64, d);
        }
        FComplex::new(terms, maps)
    }
}

/// A degree-zero map of differential modules commuting with the differentials.
#[derive(Clone, Debug)]
pub struct DMorphism {
    source: DifferentialModule,
    target: DifferentialModule,
    matrix: GradedMatrix,
}

impl DMorphism {
    pub fn new(source: DifferentialModule, target: DifferentialModule, matrix: GradedMatrix) -> Result<Self> {
        if source.degree() != target.degree() || !matrix.shift().is_zero() {
            return Err(Error::NotAMorphism);
        }
        check_map(source.module(), target.module(), &matrix)?;
        let lhs = target.del.compose(&matrix)?;
        let rhs = matrix.compose(&source.del)?;
        let diff = lhs.sub(&rhs)?;
        let gb = target.module.relation_gb()?;
        for j in 0..diff.cols() {
            if !gb.contains(&diff.column(j))? {
                return Err(Error::NotAMorphism);
            }
        }
        Ok(DMorphism { source, target, matrix })
    }

    pub fn source(&self) -> &DifferentialModule {
        &self.source
    }

    pub fn target(&self) -> &DifferentialModule {
        &self.target
    }

    pub fn matrix(&self) -> &GradedMatrix {
        &self.matrix
    }
}

/// `⊕ C_i(i a)` with the differentials of `C` as one square-zero map, the
/// flag given by homological degree (lowest first).
pub fn fold_complex(ring: &PolyRing, c: &FComplex, a: &Multidegree) -> Result<FlagDM> {
    let Some((lo, hi)) = c.range() else {
        let dm = DifferentialModule::free(ring, GradedMatrix::zero(FreeModule::default(), FreeModule::default(), a.clone()))?;
        return FlagDM::new(dm, Vec::new());
    };
    let mut twists = Vec::new();
    let mut blocks = Vec::new();
    let mut offsets = BTreeMap::new();
    for i in lo..=hi {
        let t = c.term(i).twist(&a.scaled(i - lo));
        offsets.insert(i, twists.len());
        blocks.push((twists.len()..twists.len() + t.rank()).collect());
        twists.extend(t.twists().iter().cloned());
    }
    let f = FreeModule::new(twists);
    let n = f.rank();
    let mut entries = vec![vec![Polynomial::zero(); n]; n];
    for i in lo + 1..=hi {
        let d = c.map(ring, i);
        for r in 0..d.rows() {
            for s in 0..d.cols() {
                entries[offsets[&(i - 1)] + r][offsets[&i] + s] = d.entry(r, s).clone();
            }
        }
    }
    let del = GradedMatrix::new(ring, f.clone(), f, a.clone(), entries)?;
    FlagDM::new(DifferentialModule::free(ring, del)?, blocks)
}

/// `cone(f) = target ⊕ source(a)` with `∂ = [[∂', f], [0, -∂]]`.
pub fn cone(f: &DMorphism) -> Result<DifferentialModule> {
    let ring = f.source.ring().clone();
    let a = f.source.degree().clone();
    let src = f.source.generators().twist(&a);
    let gens = f.target.generators().direct_sum(&src);
    let (n1, n2) = (f.target.rank(), f.source.rank());
    let mut entries = vec![vec![Polynomial::zero(); n1 + n2]; n1 + n2];
    for i in 0..n1 {
        for j in 0..n1 {
            entries[i][j] = f.target.del.entry(i, j).clone();
        }
        for j in 0..n2 {
            entries[i][n1 + j] = f.matrix.entry(i, j).clone();
        }
    }
    for i in 0..n2 {
        for j in 0..n2 {
            entries[n1 + i][n1 + j] = -f.source.del.entry(i, j);
        }
    }
    let del = GradedMatrix::new(&ring, gens.clone(), gens.clone(), a.clone(), entries)?;
    let mut rels: Vec<DegVector> = Vec::new();
    for (v, d) in f.target.module.relations().columns_with_degrees() {
        let mut w = v;
        w.extend(std::iter::repeat(Polynomial::zero()).take(n2));
        rels.push((w, d));
    }
    for (v, d) in f.source.module.relations().columns_with_degrees() {
        let mut w = vec![Polynomial::zero(); n1];
        w.extend(v);
        rels.push((w, &d - &a));
    }
    let rel = GradedMatrix::from_columns(&ring, gens.clone(), ring.zero_degree(), rels)?;
    let module = PresentedModule::new(&ring, gens, rel)?;
    let dm = DifferentialModule { ring, module, del };
    Ok(dm)
}

/// Whether an iterative resolution reached exactness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convergence {
    Complete,
    Truncated,
}

/// A free flag `G` with a comparison map `ε: G -> D`.
///
/// The flag differential is reported in the sign of the last iterated cone,
/// so `∂_D ε = -ε ∂_G`: `ε` is a morphism `(G, -∂_G) -> D`, whose cone is
/// exact on convergence.
#[derive(Clone, Debug)]
pub struct FlagResolution {
    pub flag: FlagDM,
    /// Generator images of `G` in `D`, a shift-zero matrix.
    pub epsilon: GradedMatrix,
    pub convergence: Convergence,
    pub iterations: usize,
}

impl FlagResolution {
    /// `cone(ε: (G, -∂_G) -> D)`.
    pub fn comparison_cone(&self, d: &DifferentialModule) -> Result<DifferentialModule> {
        let g = DifferentialModule::free(d.ring(), self.flag.dm().del().neg())?;
        cone(&DMorphism::new(g, d.clone(), self.epsilon.clone())?)
    }
}

/// Accumulates `D_k = D ⊕ F_0(a) ⊕ ... ⊕ F_{k-1}(a)` through iterated cones.
struct ConeTower {
    base_rank: usize,
    current: DifferentialModule,
    blocks: Vec<Vec<usize>>,
}

impl ConeTower {
    fn new(d: &DifferentialModule) -> Self {
        ConeTower {
            base_rank: d.rank(),
            current: d.clone(),
            blocks: Vec::new(),
        }
    }

    /// Cones off the cycles `images`, free generators of degrees `twists`.
    fn attach(&mut self, twists: Vec<Multidegree>, images: Vec<Vec<Polynomial>>) -> Result<()> {
        let ring = self.current.ring().clone();
        let a = self.current.degree().clone();
        let fk = FreeModule::new(twists);
        let mut entries = vec![Vec::with_capacity(images.len()); self.current.rank()];
        for col in &images {
            for (i, f) in col.iter().enumerate() {
                entries[i].push(f.clone());
            }
        }
        let eps = GradedMatrix::new(&ring, fk.clone(), self.current.generators().clone(), ring.zero_degree(), entries)?;
        let zero = DifferentialModule::free(&ring, GradedMatrix::zero(fk.clone(), fk, a))?;
        let morph = DMorphism::new(zero, self.current.clone(), eps)?;
        let start = self.current.rank() - self.base_rank;
        self.blocks.push((start..start + images.len()).collect());
        self.current = cone(&morph)?;
        Ok(())
    }

    fn finish(self, convergence: Convergence, iterations: usize) -> Result<FlagResolution> {
        let ring = self.current.ring().clone();
        let a = self.current.degree().clone();
        let n = self.base_rank;
        let total = self.current.rank();
        let g_idx: Vec<usize> = (n..total).collect();
        let d_idx: Vec<usize> = (0..n).collect();
        let g = self.current.generators().select(&g_idx).twist(&-&a);
        let delta = self.current.del.submatrix(&g_idx, &g_idx);
        let del_g = GradedMatrix::new(&ring, g.clone(), g.clone(), a.clone(), delta.entries().to_vec())?;
        let e = self.current.del.submatrix(&d_idx, &g_idx);
        let epsilon = GradedMatrix::new(
            &ring,
            g,
            self.current.generators().select(&d_idx),
            ring.zero_degree(),
            e.entries().to_vec(),
        )?;
        let flag = FlagDM::new(DifferentialModule::free(&ring, del_g)?, self.blocks)?;
        Ok(FlagResolution {
            flag,
            epsilon,
            convergence,
            iterations,
        })
    }
}

/// Default iteration budget for `res_dm`.
pub fn default_max_iter(ring: &PolyRing) -> usize {
    ring.nvars() + 1
}

/// Free flag resolution by repeatedly coning off minimal generators of the
/// homology. At most `max_iter` cones are formed.
pub fn res_dm(d: &DifferentialModule, max_iter: usize) -> Result<FlagResolution> {
    d.ring().theta()?;
    let mut tower = ConeTower::new(d);
    let mut iterations = 0;
    loop {
        let h = tower.current.homology()?;
        if h.module.num_generators() == 0 {
            return tower.finish(Convergence::Complete, iterations);
        }
        if iterations == max_iter {
            return tower.finish(Convergence::Truncated, iterations);
        }
        let twists = h.module.generators().twists().to_vec();
        let images = h.images.transpose_raw();
        tower.attach(twists, images)?;
        iterations += 1;
    }
}

/// Cancels unit entries of a free differential module until every entry
/// lies in the maximal ideal. The pivot is the first off-diagonal entry with
/// a nonzero constant, scanning rows then columns.
pub fn minimize_dm(f: &DifferentialModule) -> Result<DifferentialModule> {
    if !f.is_free() {
        return Err(Error::Shape("minimization needs a free underlying module".into()));
    }
    let ring = f.ring().clone();
    let a = f.degree().clone();
    let mut twists = f.generators().twists().to_vec();
    let mut m: Vec<Vec<Polynomial>> = f.del.entries().to_vec();
    loop {
        let n = m.len();
        let pivot = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| i != j && m[i][j].constant_term().is_some());
        let Some((i, j)) = pivot else { break };
        let c_inv = m[i][j].as_constant().expect("unit entry").inv().expect("nonzero");
        let keep: Vec<usize> = (0..n).filter(|&k| k != i && k != j).collect();
        let mut next = vec![vec![Polynomial::zero(); keep.len()]; keep.len()];
        for (r, &l) in keep.iter().enumerate() {
            for (s, &k) in keep.iter().enumerate() {
                let mut v = m[l][k].clone();
                if !m[l][j].is_zero() && !m[i][k].is_zero() {
                    v = &v - &(&m[l][j] * &m[i][k]).scale(&c_inv);
                }
                next[r][s] = v;
            }
        }
        m = next;
        twists = keep.iter().map(|&k| twists[k].clone()).collect();
    }
    let g = FreeModule::new(twists);
    let del = GradedMatrix::new(&ring, g.clone(), g, a, m)?;
    let out = DifferentialModule::free(&ring, del)?;
    debug_assert!(out.is_minimal());
    Ok(out)
}

/// Minimal free flag resolution of a degree-zero differential module over a
/// `Z`-graded ring, with block `i` generated in degree `n + i` where `n` is
/// the lowest degree of the homology. At most `t` blocks are built.
pub fn res_min_flag(d: &DifferentialModule, t: usize) -> Result<FlagResolution> {
    let ring = d.ring().clone();
    if ring.rank() != 1 || (0..ring.nvars()).any(|i| ring.var_degree(i).coords()[0] <= 0) {
        return Err(Error::UnsupportedGrading);
    }
    if !d.degree().is_zero() {
        return Err(Error::NonzeroDegreeDifferential);
    }
    let mut tower = ConeTower::new(d);
    let h0 = d.homology()?;
    let Some(n) = h0.module.generators().twists().iter().map(|t| t.coords()[0]).min() else {
        return tower.finish(Convergence::Complete, 0);
    };
    for i in 0..t {
        let h = tower.current.homology()?;
        if h.module.num_generators() == 0 {
            return tower.finish(Convergence::Complete, i);
        }
        let deg = Multidegree::new(vec![n + i as i64]);
        let piece = h.module.graded_piece(&deg)?;
        let mut images = Vec::with_capacity(piece.dim());
        for k in 0..piece.dim() {
            images.push(h.images.apply(&piece.basis_vector(&ring, k)));
        }
        tower.attach(vec![deg; images.len()], images)?;
    }
    let done = tower.current.is_exact()?;
    let conv = if done { Convergence::Complete } else { Convergence::Truncated };
    tower.finish(conv, t)
}

/// A degree-zero isomorphism `P` with `P a = b P`, if one exists.
///
/// `labels` optionally restricts `P` to be block diagonal (used for chain
/// maps between folded complexes). The solution space of the linear system
/// is sampled at seeded random points; `P` is invertible iff its constant
/// part is.
pub fn find_isomorphism(
    ring: &PolyRing,
    a: &GradedMatrix,
    b: &GradedMatrix,
    labels: Option<(&[usize], &[usize])>,
) -> Result<Option<GradedMatrix>> {
    let n = a.rows();
    if a.cols() != n || b.rows() != b.cols() || b.rows() != n || a.shift() != b.shift() {
        return Ok(None);
    }
    let mut ta: Vec<_> = a.source().twists().to_vec();
    let mut tb: Vec<_> = b.source().twists().to_vec();
    ta.sort();
    tb.sort();
    if ta != tb {
        return Ok(None);
    }
    let field = ring.field();
    // unknowns: (row i of b, column j of a, monomial)
    let mut unknowns: Vec<(usize, usize, Exponents)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if let Some((la, lb)) = labels {
                if lb[i] != la[j] {
                    continue;
                }
            }
            let d = a.source().twist_of(j) - b.target().twist_of(i);
            for e in ring.monomials_of_degree(&d)? {
                unknowns.push((i, j, e));
            }
        }
    }
    let nu = unknowns.len();
    // equations: coefficient of x^m at entry (i, k) of P a - b P
    let mut eqs: HashMap<(usize, usize, Exponents), Vec<Coeff>> = HashMap::new();
    let mut add = |key: (usize, usize, Exponents), u: usize, c: &Coeff| {
        let row = eqs.entry(key).or_insert_with(|| vec![field.zero(); nu]);
        row[u] = &row[u] + c;
    };
    for (u, (i, j, e)) in unknowns.iter().enumerate() {
        // P_ij a_jk
        for k in 0..n {
            for (m, c) in a.entry(*j, k).terms() {
                let mono: Exponents = m.iter().zip(e).map(|(x, y)| x + y).collect();
                add((*i, k, mono), u, c);
            }
        }
        // - b_li P_ij
        for l in 0..n {
            for (m, c) in b.entry(l, *i).terms() {
                let mono: Exponents = m.iter().zip(e).map(|(x, y)| x + y).collect();
                add((l, *j, mono), u, &-c);
            }
        }
    }
    let mut ech = Echelon::new(field.clone(), nu);
    for row in eqs.into_values() {
        ech.insert(row);
    }
    let sols = ech.orthogonal_complement_basis();
    if sols.is_empty() {
        return Ok(None);
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..8 {
        let weights: Vec<Coeff> = sols.iter().map(|_| field.from_i64(rng.gen_range(-50..=50))).collect();
        let mut entries = vec![vec![Polynomial::zero(); n]; n];
        let mut constant = DenseMatrix::zeros(field, n, n);
        for (u, (i, j, e)) in unknowns.iter().enumerate() {
            let mut c = field.zero();
            for (w, s) in weights.iter().zip(&sols) {
                c = &c + &(w * &s[u]);
            }
            if c.is_zero() {
                continue;
            }
            if e.iter().all(|&x| x == 0) {
                constant.set(*i, *j, c.clone());
            }
            entries[*i][*j].add_term(e.clone(), c);
        }
        if constant.rank(field) == n {
            let p = GradedMatrix::new(ring, a.source().clone(), b.source().clone(), ring.zero_degree(), entries)?;
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// Whether two complexes are isomorphic by a degree-zero chain map.
pub fn complexes_isomorphic(ring: &PolyRing, c1: &FComplex, c2: &FComplex) -> Result<bool> {
    if c1.ranks() != c2.ranks() {
        return Ok(false);
    }
    let zero = ring.zero_degree();
    let (f1, f2) = (fold_complex(ring, c1, &zero)?, fold_complex(ring, c2, &zero)?);
    let label = |f: &FlagDM| {
        let mut l = vec![0; f.dm().rank()];
        for (b, idx) in f.blocks().iter().enumerate() {
            for &i in idx {
                l[i] = b;
            }
        }
        l
    };
    let (l1, l2) = (label(&f1), label(&f2));
    Ok(find_isomorphism(ring, f1.dm().del(), f2.dm().del(), Some((&l1, &l2)))?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn ring() -> PolyRing {
        PolyRing::new(
            FieldSpec::prime(101).unwrap(),
            vec!["x".into(), "y".into()],
            vec![Multidegree::from([1]); 2],
        )
        .unwrap()
    }

    fn mat(r: &PolyRing, twists: &[i64], shift: i64, rows: &[&[&str]]) -> GradedMatrix {
        let f = FreeModule::new(twists.iter().map(|&t| Multidegree::from([t])).collect());
        let entries = rows
            .iter()
            .map(|row| row.iter().map(|s| r.parse(s).unwrap()).collect())
            .collect();
        GradedMatrix::new(r, f.clone(), f, [shift].into(), entries).unwrap()
    }

    fn example_dm(r: &PolyRing) -> DifferentialModule {
        DifferentialModule::free(r, mat(r, &[0, 0], 2, &[&["x*y", "-x^2"], &["y^2", "-x*y"]])).unwrap()
    }

    fn residue_field(r: &PolyRing) -> DifferentialModule {
        let k = PresentedModule::quotient_ring(r, &[r.var(0), r.var(1)]).unwrap();
        let zero = GradedMatrix::zero(k.generators().clone(), k.generators().clone(), [0].into());
        DifferentialModule::new(k, zero).unwrap()
    }

    #[test]
    fn validation() {
        let r = ring();
        assert!(matches!(
            DifferentialModule::free(&r, mat(&r, &[0], 1, &[&["x"]])),
            Err(Error::NotSquareZero)
        ));
        let h = example_dm(&r).homology().unwrap();
        assert_eq!(h.module.generators().twists(), &[Multidegree::from([1])]);
        assert_eq!(h.module.relations().cols(), 2);
    }

    #[test]
    fn res_dm_and_minimize_on_the_degree_two_example() {
        let r = ring();
        let d = example_dm(&r);
        let res = res_dm(&d, default_max_iter(&r)).unwrap();
        assert_eq!(res.convergence, Convergence::Complete);
        assert!(res.comparison_cone(&d).unwrap().is_exact().unwrap());
        let expected = mat(
            &r,
            &[1, 0, 0, -1],
            2,
            &[&["0", "y", "x", "1"], &["0", "0", "0", "x"], &["0", "0", "0", "-y"], &["0", "0", "0", "0"]],
        );
        assert!(find_isomorphism(&r, res.flag.dm().del(), &expected, None).unwrap().is_some());
        let g = minimize_dm(res.flag.dm()).unwrap();
        let o13 = mat(&r, &[0, 0], 2, &[&["-x*y", "-x^2"], &["y^2", "x*y"]]);
        assert!(find_isomorphism(&r, g.del(), &o13, None).unwrap().is_some());
    }

    #[test]
    fn res_min_flag_of_residue_field_is_koszul() {
        let r = ring();
        let k = residue_field(&r);
        let res = res_min_flag(&k, 3).unwrap();
        assert_eq!(res.convergence, Convergence::Complete);
        assert!(res.comparison_cone(&k).unwrap().is_exact().unwrap());
        let expected = mat(
            &r,
            &[0, 1, 1, 2],
            0,
            &[&["0", "y", "x", "0"], &["0", "0", "0", "x"], &["0", "0", "0", "-y"], &["0", "0", "0", "0"]],
        );
        assert!(find_isomorphism(&r, res.flag.dm().del(), &expected, None).unwrap().is_some());
        assert_eq!(res.flag.block_ranks(), vec![1, 2, 1]);
    }

    #[test]
    fn cone_of_identity_minimizes_to_zero() {
        let r = ring();
        let d = example_dm(&r);
        let id = GradedMatrix::identity(&r, d.generators());
        let c = cone(&DMorphism::new(d.clone(), d, id).unwrap()).unwrap();
        assert!(c.is_exact().unwrap());
        assert_eq!(minimize_dm(&c).unwrap().rank(), 0);
    }
}
