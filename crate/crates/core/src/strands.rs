//! Strongly linear strands of modules generated in a single degree.

use std::collections::{BTreeMap, HashMap};

use crate::bgg::{omega_twist_degree, toric_ll, EModuleGraded};
use crate::complex::FComplex;
use crate::degree::Multidegree;
use crate::error::{Error, Result};
use crate::exterior::{monomial_product, ExtAlgebra, ExtMonomial};
use crate::field::Coeff;
use crate::linalg::{Coordinates, DenseMatrix};
use crate::matrix::GradedMatrix;
use crate::module::PresentedModule;

#[derive(Clone, Debug)]
pub struct StrandResult {
    pub strand: FComplex,
    /// The common generator degree.
    pub degree: Multidegree,
    /// Dimensions of the kernel `K` of `R(M)` leaving `M_d ⊗ ω_E`.
    pub kernel_dims: BTreeMap<Multidegree, usize>,
}

/// The strongly linear strand of the minimal free resolution of `M`,
/// computed as `L(K)` with `K = ker(M_d ⊗ ω_E → ⊕_i M_{d + deg x_i} ⊗ ω_E)`.
pub fn strongly_linear_strand(m: &PresentedModule) -> Result<StrandResult> {
    let ring = m.ring();
    ring.theta()?;
    let gens = m.minimal_generator_degrees()?;
    let Some(d) = gens.first().cloned() else {
        return Ok(StrandResult {
            strand: FComplex::zero(),
            degree: ring.zero_degree(),
            kernel_dims: BTreeMap::new(),
        });
    };
    if gens.iter().any(|g| *g != d) {
        let mut degrees = gens;
        degrees.dedup();
        return Err(Error::NotSingleDegree { degrees });
    }
    let ext = ExtAlgebra::dual_of(ring);
    let field = ring.field().clone();
    let beta = m.graded_piece(&d)?.dim();

    // target generators: one per basis vector of each M_{d + deg x_i}
    let mut target_offset: HashMap<Multidegree, usize> = HashMap::new();
    let mut target_rank = 0;
    let mut mults = Vec::new();
    for i in 0..ring.nvars() {
        let td = &d + ring.var_degree(i);
        if !target_offset.contains_key(&td) {
            target_offset.insert(td.clone(), target_rank);
            target_rank += m.graded_piece(&td)?.dim();
        }
        mults.push((target_offset[&td], m.multiplication_map(&d, i)?));
    }

    let mut by_degree: BTreeMap<Multidegree, Vec<ExtMonomial>> = BTreeMap::new();
    for mono in ext.all_monomials() {
        by_degree.entry(ext.monomial_degree(mono)).or_default().push(mono);
    }
    let omega = omega_twist_degree(ring, &d);

    // kernel basis per E-degree, in coordinates (k, mono) indexed k * len + position
    let mut kernels: BTreeMap<Multidegree, (Vec<ExtMonomial>, Vec<Vec<Coeff>>)> = BTreeMap::new();
    for (md, monos) in &by_degree {
        let src_len = beta * monos.len();
        let mut tindex: HashMap<(usize, ExtMonomial), usize> = HashMap::new();
        let mut cols = vec![Vec::<(usize, Coeff)>::new(); src_len];
        for (j, col) in cols.iter_mut().enumerate() {
            let (k, p) = (j / monos.len(), j % monos.len());
            for (i, (off, mult)) in mults.iter().enumerate() {
                let Some((neg, prod)) = monomial_product(1 << i, monos[p]) else { continue };
                for w in 0..mult.rows() {
                    let c = mult.get(w, k);
                    if c.is_zero() {
                        continue;
                    }
                    let n = tindex.len();
                    let t = *tindex.entry((off + w, prod)).or_insert(n);
                    col.push((t, if neg { -c } else { c.clone() }));
                }
            }
        }
        let mut mat = DenseMatrix::zeros(&field, tindex.len(), src_len);
        for (j, col) in cols.iter().enumerate() {
            for (t, c) in col {
                let v = mat.get(*t, j) + c;
                mat.set(*t, j, v);
            }
        }
        let kernel = mat.nullspace(&field);
        if !kernel.is_empty() {
            kernels.insert(&omega + md, (monos.clone(), kernel));
        }
    }

    let mut dims = BTreeMap::new();
    let mut actions = BTreeMap::new();
    let coords: HashMap<&Multidegree, Coordinates> = kernels
        .iter()
        .map(|(deg, (monos, basis))| (deg, Coordinates::new(&field, beta * monos.len(), basis)))
        .collect();
    for (deg, (monos, basis)) in &kernels {
        dims.insert(deg.clone(), basis.len());
        let odd = deg.last().rem_euclid(2) == 1;
        for i in 0..ext.nvars() {
            let td = deg + ext.var_degree(i);
            let Some((tmonos, tbasis)) = kernels.get(&td) else { continue };
            let tpos: HashMap<ExtMonomial, usize> = tmonos.iter().enumerate().map(|(p, &mo)| (mo, p)).collect();
            let cols: Vec<Vec<Coeff>> = basis
                .iter()
                .map(|y| {
                    let mut v = vec![field.zero(); beta * tmonos.len()];
                    for k in 0..beta {
                        for (p, &mo) in monos.iter().enumerate() {
                            let c = &y[k * monos.len() + p];
                            if c.is_zero() {
                                continue;
                            }
                            if let Some((neg, prod)) = monomial_product(mo, 1 << i) {
                                let t = k * tmonos.len() + tpos[&prod];
                                v[t] = if neg ^ odd { &v[t] - c } else { &v[t] + c };
                            }
                        }
                    }
                    coords[&td].solve(&v).expect("kernel is an E-submodule")
                })
                .collect();
            actions.insert((deg.clone(), i), DenseMatrix::from_columns(&field, tbasis.len(), &cols));
        }
    }
    let k = EModuleGraded::new(ext, dims.clone(), actions)?;
    let strand = toric_ll(ring, &k)?;
    Ok(StrandResult {
        strand,
        degree: d,
        kernel_dims: dims,
    })
}

/// Every nonzero entry is a linear form in the variables.
pub fn is_strongly_linear_matrix(phi: &GradedMatrix) -> bool {
    phi.entries()
        .iter()
        .flatten()
        .all(|f| f.terms().all(|(e, _)| e.iter().sum::<u32>() == 1))
}
