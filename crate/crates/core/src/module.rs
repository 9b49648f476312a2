//! Finitely presented graded modules `coker(relations: R -> F)`.

use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

use crate::degree::Multidegree;
use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::groebner::{buchberger, minimal_generators, syzygies, GroebnerBasis};
use crate::linalg::{DenseMatrix, Echelon};
use crate::matrix::{FreeModule, GradedMatrix};
use crate::poly::{Exponents, PolyRing, Polynomial};

/// A vector of a free module together with its degree.
pub type DegVector = (Vec<Polynomial>, Multidegree);

#[derive(Clone, Debug)]
pub struct PresentedModule {
    ring: PolyRing,
    generators: FreeModule,
    relations: GradedMatrix,
    gb: OnceLock<GroebnerBasis>,
}

/// Result of pruning: the pruned module plus mutually inverse maps between
/// the old and new generators (modulo relations).
#[derive(Clone, Debug)]
pub struct Pruned {
    pub module: PresentedModule,
    /// Old generators written in the new ones.
    pub to_new: GradedMatrix,
    /// New generators written in the old ones.
    pub from_new: GradedMatrix,
}

/// `(<gens> + A) / A` for a submodule `A` of a free module, minimally
/// presented, together with images of its generators in the free module.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub module: PresentedModule,
    pub images: GradedMatrix,
}

impl PartialEq for PresentedModule {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators && self.relations == other.relations
    }
}

impl PresentedModule {
    pub fn new(ring: &PolyRing, generators: FreeModule, relations: GradedMatrix) -> Result<Self> {
        if relations.target() != &generators {
            return Err(Error::AmbientMismatch("relations must map into the generators".into()));
        }
        if !relations.shift().is_zero() {
            return Err(Error::Shape("relation matrix must have shift 0".into()));
        }
        generators.check_rank(ring)?;
        relations.check_homogeneity(ring)?;
        Ok(PresentedModule {
            ring: ring.clone(),
            generators,
            relations,
            gb: OnceLock::new(),
        })
    }

    pub fn free(ring: &PolyRing, f: FreeModule) -> Self {
        let relations = GradedMatrix::zero(FreeModule::default(), f.clone(), ring.zero_degree());
        PresentedModule {
            ring: ring.clone(),
            generators: f,
            relations,
            gb: OnceLock::new(),
        }
    }

    pub fn zero(ring: &PolyRing) -> Self {
        Self::free(ring, FreeModule::default())
    }

    /// `coker(phi)`; the shift of `phi` is absorbed into its source twists.
    pub fn cokernel(ring: &PolyRing, phi: &GradedMatrix) -> Result<Self> {
        let rel = GradedMatrix::from_columns(
            ring,
            phi.target().clone(),
            ring.zero_degree(),
            phi.columns_with_degrees(),
        )?;
        Self::new(ring, phi.target().clone(), rel)
    }

    /// `S / (gens)`.
    pub fn quotient_ring(ring: &PolyRing, gens: &[Polynomial]) -> Result<Self> {
        let f = FreeModule::standard(ring, 1);
        let cols = gens.iter().map(|g| vec![g.clone()]).collect();
        let rel = GradedMatrix::from_columns_inferred(ring, f.clone(), ring.zero_degree(), cols)?;
        Self::new(ring, f, rel)
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn generators(&self) -> &FreeModule {
        &self.generators
    }

    pub fn relations(&self) -> &GradedMatrix {
        &self.relations
    }

    pub fn num_generators(&self) -> usize {
        self.generators.rank()
    }

    pub fn is_free(&self) -> bool {
        self.relations.is_zero()
    }

    pub fn relation_gb(&self) -> Result<&GroebnerBasis> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let cols = self.relations.transpose_raw();
        let gb = buchberger(&self.ring, &self.generators, &cols)?;
        Ok(self.gb.get_or_init(|| gb))
    }

    /// Normal form of a generator-level vector modulo the relations.
    pub fn reduce(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>> {
        self.relation_gb()?.normal_form(v)
    }

    pub fn is_zero_element(&self, v: &[Polynomial]) -> Result<bool> {
        self.relation_gb()?.contains(v)
    }

    pub fn is_zero_module(&self) -> Result<bool> {
        let gb = self.relation_gb()?;
        Ok((0..self.num_generators()).all(|i| gb.contains_generator(i)))
    }

    /// Minimal presentation with the comparison maps.
    pub fn prune(&self) -> Result<Pruned> {
        let ring = &self.ring;
        let n0 = self.num_generators();
        let mut twists: Vec<Multidegree> = self.generators.twists().to_vec();
        let mut orig: Vec<usize> = (0..n0).collect();
        let mut cols: Vec<DegVector> = self
            .relations
            .columns_with_degrees()
            .into_iter()
            .filter(|(c, _)| c.iter().any(|f| !f.is_zero()))
            .collect();
        // to_new[r][k]: coefficient of current generator r in original generator k
        let mut to_new: Vec<Vec<Polynomial>> = (0..n0)
            .map(|r| (0..n0).map(|k| if r == k { ring.one() } else { Polynomial::zero() }).collect())
            .collect();
        loop {
            let hit = cols.iter().enumerate().find_map(|(c, (v, _))| {
                v.iter()
                    .position(|f| f.constant_term().is_some())
                    .map(|i| (c, i))
            });
            let Some((c, i)) = hit else { break };
            let (pivot_col, _) = cols.remove(c);
            let u_inv = pivot_col[i].as_constant().expect("unit entry").inv().expect("nonzero");
            for (v, _) in cols.iter_mut() {
                if v[i].is_zero() {
                    continue;
                }
                let f = v[i].scale(&u_inv);
                for (x, y) in v.iter_mut().zip(&pivot_col) {
                    *x = &*x - &(&f * y);
                }
            }
            for (v, _) in cols.iter_mut() {
                debug_assert!(v[i].is_zero());
                v.remove(i);
            }
            // g_i = -u^{-1} sum_{l != i} pivot_col[l] g_l
            let row_i = to_new.remove(i);
            let mut rest = pivot_col.clone();
            rest.remove(i);
            for (l, r) in rest.iter().enumerate() {
                if r.is_zero() {
                    continue;
                }
                let f = r.scale(&-&u_inv);
                for (k, t) in row_i.iter().enumerate() {
                    if !t.is_zero() {
                        to_new[l][k] = &to_new[l][k] + &(&f * t);
                    }
                }
            }
            twists.remove(i);
            orig.remove(i);
            cols.retain(|(v, _)| v.iter().any(|f| !f.is_zero()));
        }
        let gens = FreeModule::new(twists);
        let raw: Vec<Vec<Polynomial>> = cols.iter().map(|(v, _)| v.clone()).collect();
        let keep = minimal_generators(ring, &gens, &raw)?;
        let kept: Vec<DegVector> = keep.into_iter().map(|k| cols[k].clone()).collect();
        let rel = GradedMatrix::from_columns(ring, gens.clone(), ring.zero_degree(), kept)?;
        let module = PresentedModule::new(ring, gens.clone(), rel)?;
        let to_new = GradedMatrix::new(ring, self.generators.clone(), gens.clone(), ring.zero_degree(), to_new)?;
        let mut inc = vec![vec![Polynomial::zero(); orig.len()]; n0];
        for (j, &k) in orig.iter().enumerate() {
            inc[k][j] = ring.one();
        }
        let from_new = GradedMatrix::new(ring, gens, self.generators.clone(), ring.zero_degree(), inc)?;
        Ok(Pruned {
            module,
            to_new,
            from_new,
        })
    }

    pub fn minimal_presentation(&self) -> Result<PresentedModule> {
        Ok(self.prune()?.module)
    }

    /// Degrees of a minimal generating set, with multiplicity.
    pub fn minimal_generator_degrees(&self) -> Result<Vec<Multidegree>> {
        Ok(self.minimal_presentation()?.generators.twists().to_vec())
    }

    /// `M(b)`.
    pub fn twist(&self, b: &Multidegree) -> PresentedModule {
        PresentedModule {
            ring: self.ring.clone(),
            generators: self.generators.twist(b),
            relations: self.relations.twist(b),
            gb: OnceLock::new(),
        }
    }

    pub fn graded_piece(&self, d: &Multidegree) -> Result<GradedPiece> {
        GradedPiece::new(self, d)
    }

    /// Matrix of multiplication by `x_i` from `M_d` to `M_{d + deg x_i}`.
    pub fn multiplication_map(&self, d: &Multidegree, i: usize) -> Result<DenseMatrix> {
        let src = self.graded_piece(d)?;
        let tgt = self.graded_piece(&(d + self.ring.var_degree(i)))?;
        Ok(src.multiplication_into(&tgt, i))
    }

    /// Degrees `d` with `M_d != 0` when the module is finite dimensional.
    pub fn finite_support(&self) -> Result<Option<Vec<Multidegree>>> {
        let n = self.ring.nvars();
        let gb = self.relation_gb()?;
        let leads = gb.lead_terms();
        let mut caps: Vec<Option<Vec<u32>>> = Vec::new();
        for p in 0..self.num_generators() {
            let here: Vec<&Exponents> = leads.iter().filter(|(q, _)| *q == p).map(|(_, e)| e).collect();
            if here.iter().any(|e| e.iter().all(|&x| x == 0)) {
                caps.push(None);
                continue;
            }
            let mut cap = Vec::with_capacity(n);
            for v in 0..n {
                let pure = here
                    .iter()
                    .filter(|e| e.iter().enumerate().all(|(w, &x)| w == v || x == 0))
                    .map(|e| e[v])
                    .min();
                match pure {
                    Some(k) => cap.push(k),
                    None => return Ok(None),
                }
            }
            caps.push(Some(cap));
        }
        let mut support = BTreeSet::new();
        let theta = self.ring.theta()?;
        for (p, cap) in caps.iter().enumerate() {
            let Some(cap) = cap else { continue };
            let here: Vec<&Exponents> = leads.iter().filter(|(q, _)| *q == p).map(|(_, e)| e).collect();
            let mut e = vec![0u32; n];
            loop {
                if !here.iter().any(|l| l.iter().zip(&e).all(|(a, b)| a <= b)) {
                    let d = &self.generators.twists()[p] + &self.ring.monomial_degree(&e);
                    support.insert((d.dot(theta), d.coords().to_vec()));
                }
                // odometer below the caps
                let mut k = 0;
                while k < n {
                    e[k] += 1;
                    if e[k] < cap[k] {
                        break;
                    }
                    e[k] = 0;
                    k += 1;
                }
                if k == n {
                    break;
                }
            }
        }
        Ok(Some(support.into_iter().map(|(_, d)| Multidegree::new(d)).collect()))
    }

    /// Total dimension over `k`, when finite.
    pub fn total_dimension(&self) -> Result<Option<usize>> {
        let Some(support) = self.finite_support()? else {
            return Ok(None);
        };
        let mut total = 0;
        for d in &support {
            total += self.graded_piece(d)?.dim();
        }
        Ok(Some(total))
    }
}

/// A k-basis of `M_d`.
///
/// Coordinates are pairs (generator, monomial), generators in order and
/// monomials in descending lexicographic order. The relations in degree `d`
/// are put in reduced echelon form; the non-pivot coordinates form the basis.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    degree: Multidegree,
    rank: usize,
    coords: Vec<(usize, Exponents)>,
    index: HashMap<(usize, Exponents), usize>,
    echelon: Echelon,
    basis: Vec<usize>,
}

impl GradedPiece {
    fn new(m: &PresentedModule, d: &Multidegree) -> Result<Self> {
        let ring = &m.ring;
        if d.rank() != ring.rank() {
            return Err(Error::mismatch("degree", ring.rank(), d.rank()));
        }
        let mut coords = Vec::new();
        for (g, t) in m.generators.twists().iter().enumerate() {
            for e in ring.monomials_of_degree(&(d - t))? {
                coords.push((g, e));
            }
        }
        let index: HashMap<_, _> = coords.iter().cloned().enumerate().map(|(k, c)| (c, k)).collect();
        let mut echelon = Echelon::new(ring.field().clone(), coords.len());
        if !coords.is_empty() {
            for (col, cd) in m.relations.columns_with_degrees() {
                for mono in ring.monomials_of_degree(&(d - &cd))? {
                    let mut v = vec![ring.field().zero(); coords.len()];
                    for (g, f) in col.iter().enumerate() {
                        for (e, c) in f.terms() {
                            let key: Exponents = e.iter().zip(&mono).map(|(a, b)| a + b).collect();
                            let k = index[&(g, key)];
                            v[k] = &v[k] + c;
                        }
                    }
                    echelon.insert(v);
                }
            }
        }
        let basis = echelon.free_columns();
        Ok(GradedPiece {
            degree: d.clone(),
            rank: m.num_generators(),
            coords,
            index,
            echelon,
            basis,
        })
    }

    pub fn degree(&self) -> &Multidegree {
        &self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The (generator, monomial) pair representing basis vector `k`.
    pub fn basis_coordinate(&self, k: usize) -> &(usize, Exponents) {
        &self.coords[self.basis[k]]
    }

    pub fn basis_vector(&self, ring: &PolyRing, k: usize) -> Vec<Polynomial> {
        let (g, e) = self.basis_coordinate(k);
        let mut v = vec![Polynomial::zero(); self.rank];
        v[*g] = Polynomial::monomial(e.clone(), ring.field().one());
        v
    }

    fn reduce_dense(&self, mut v: Vec<Coeff>) -> Vec<Coeff> {
        self.echelon.reduce(&mut v);
        self.basis.iter().map(|&k| v[k].clone()).collect()
    }

    /// Coordinates of a homogeneous vector of degree `self.degree()`.
    pub fn coordinates(&self, ring: &PolyRing, v: &[Polynomial]) -> Result<Vec<Coeff>> {
        if v.len() != self.rank {
            return Err(Error::mismatch("vector length", self.rank, v.len()));
        }
        let mut dense = vec![ring.field().zero(); self.coords.len()];
        for (g, f) in v.iter().enumerate() {
            for (e, c) in f.terms() {
                let k = self
                    .index
                    .get(&(g, e.clone()))
                    .ok_or_else(|| Error::inhomogeneous(format!("vector outside degree {}", self.degree)))?;
                dense[*k] = &dense[*k] + c;
            }
        }
        Ok(self.reduce_dense(dense))
    }

    /// Vector with the given coordinates.
    pub fn vector(&self, coeffs: &[Coeff]) -> Vec<Polynomial> {
        let mut v = vec![Polynomial::zero(); self.rank];
        for (k, c) in coeffs.iter().enumerate() {
            let (g, e) = self.basis_coordinate(k);
            v[*g].add_term(e.clone(), c.clone());
        }
        v
    }

    fn multiplication_into(&self, target: &GradedPiece, i: usize) -> DenseMatrix {
        let field = self.echelon.field().clone();
        let cols: Vec<Vec<Coeff>> = (0..self.dim())
            .map(|k| {
                let (g, e) = self.basis_coordinate(k);
                let mut e = e.clone();
                e[i] += 1;
                let mut dense = vec![field.zero(); target.coords.len()];
                dense[target.index[&(*g, e)]] = field.one();
                target.reduce_dense(dense)
            })
            .collect();
        DenseMatrix::from_columns(&field, target.dim(), &cols)
    }
}

fn vectors_equal_len(ambient: &FreeModule, vs: &[DegVector]) -> Result<()> {
    for (v, _) in vs {
        if v.len() != ambient.rank() {
            return Err(Error::mismatch("vector length", ambient.rank(), v.len()));
        }
    }
    Ok(())
}

/// Vectors `v` of `phi.source()` with `phi(v)` in the span of `sub`,
/// generating that preimage; the degrees are those in `phi.source()`.
pub fn preimage(ring: &PolyRing, phi: &GradedMatrix, sub: &[DegVector]) -> Result<Vec<DegVector>> {
    vectors_equal_len(phi.target(), sub)?;
    let mut cols = phi.columns_with_degrees();
    cols.extend(sub.iter().cloned());
    let big = GradedMatrix::from_columns(ring, phi.target().clone(), phi.shift().clone(), cols)?;
    let syz = syzygies(ring, &big)?;
    let m = phi.cols();
    Ok((0..syz.cols())
        .map(|j| {
            let (v, d) = syz.column_with_degree(j);
            (v[..m].to_vec(), d)
        })
        .filter(|(v, _)| v.iter().any(|f| !f.is_zero()))
        .collect())
}

/// Minimal presentation of `(<gens> + <rels>) / <rels>` inside `ambient`.
pub fn subquotient(ring: &PolyRing, ambient: &FreeModule, gens: &[DegVector], rels: &[DegVector]) -> Result<Subquotient> {
    vectors_equal_len(ambient, gens)?;
    vectors_equal_len(ambient, rels)?;
    let g = GradedMatrix::from_columns(ring, ambient.clone(), ring.zero_degree(), gens.to_vec())?;
    let rel_vectors = preimage(ring, &g, rels)?;
    let rel = GradedMatrix::from_columns(ring, g.source().clone(), ring.zero_degree(), rel_vectors)?;
    let raw = PresentedModule::new(ring, g.source().clone(), rel)?;
    let pruned = raw.prune()?;
    let images = g.compose(&pruned.from_new)?;
    Ok(Subquotient {
        module: pruned.module,
        images,
    })
}

/// Checks that a generator-level matrix maps relations of `source` into
/// relations of `target`.
pub fn check_map(source: &PresentedModule, target: &PresentedModule, phi: &GradedMatrix) -> Result<()> {
    if phi.source() != source.generators() || phi.target() != target.generators() {
        return Err(Error::AmbientMismatch("map between presented modules".into()));
    }
    let gb = target.relation_gb()?;
    for j in 0..source.relations().cols() {
        let image = phi.apply(&source.relations().column(j));
        if !gb.contains(&image)? {
            return Err(Error::RelationsNotPreserved);
        }
    }
    Ok(())
}

/// Kernel of a map of presented modules, as a subquotient of the source
/// generators.
pub fn kernel_of_presented_map(source: &PresentedModule, target: &PresentedModule, phi: &GradedMatrix) -> Result<Subquotient> {
    check_map(source, target, phi)?;
    let ring = source.ring();
    let pre = preimage(ring, phi, &target.relations().columns_with_degrees())?;
    subquotient(ring, source.generators(), &pre, &source.relations().columns_with_degrees())
}
