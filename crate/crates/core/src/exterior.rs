//! The Koszul dual exterior algebra of a multigraded polynomial ring.
//!
//! Exterior monomials are subsets of `{0..=n}` stored as bitmasks; the sign
//! of a product is the parity of the inversions of the merged index lists.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use crate::degree::Multidegree;
use crate::error::{Error, Result};
use crate::field::{Coeff, FieldSpec};
use crate::poly::PolyRing;

/// A subset of the exterior generators.
pub type ExtMonomial = u32;

/// `Λ_k(e_0, ..., e_n)` graded by `Z^{t+1}` with `deg e_i = (-deg x_i; -1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtAlgebra {
    field: FieldSpec,
    var_names: Vec<String>,
    degrees: Vec<Multidegree>,
    sym: PolyRing,
}

impl ExtAlgebra {
    /// The exterior algebra dual to `s`; variables are named `e_0..e_n`.
    pub fn dual_of(s: &PolyRing) -> Self {
        let degrees = (0..s.nvars())
            .map(|i| (-s.var_degree(i)).with_last(-1))
            .collect();
        ExtAlgebra {
            field: s.field().clone(),
            var_names: (0..s.nvars()).map(|i| format!("e_{i}")).collect(),
            degrees,
            sym: s.clone(),
        }
    }

    /// The polynomial ring this algebra was dualized from.
    pub fn symmetric_ring(&self) -> &PolyRing {
        &self.sym
    }

    /// Reconstructs a polynomial ring from the exterior degrees alone,
    /// with variables `x_0..x_n`.
    pub fn dual_ring(&self) -> Result<PolyRing> {
        let degs = self
            .degrees
            .iter()
            .map(|d| -&d.split_last().0)
            .collect();
        PolyRing::with_theta(
            self.field.clone(),
            (0..self.nvars()).map(|i| format!("x_{i}")).collect(),
            degs,
            self.sym.theta().ok().map(|t| t.to_vec()),
        )
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.var_names.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    /// Rank `t + 1` of the grading.
    pub fn rank(&self) -> usize {
        self.sym.rank() + 1
    }

    pub fn var_degree(&self, i: usize) -> &Multidegree {
        &self.degrees[i]
    }

    pub fn monomial_degree(&self, m: ExtMonomial) -> Multidegree {
        let mut d = vec![0i64; self.rank()];
        for i in indices(m) {
            for (acc, c) in d.iter_mut().zip(self.degrees[i].coords()) {
                *acc += c;
            }
        }
        Multidegree::new(d)
    }

    /// Every exterior monomial, ordered by length then bitmask.
    pub fn all_monomials(&self) -> Vec<ExtMonomial> {
        let mut all: Vec<ExtMonomial> = (0..(1u32 << self.nvars())).collect();
        all.sort_by_key(|m| (m.count_ones(), *m));
        all
    }

    pub fn var(&self, i: usize) -> ExtElement {
        ExtElement::monomial(1 << i, self.field.one())
    }

    pub fn one(&self) -> ExtElement {
        ExtElement::monomial(0, self.field.one())
    }

    pub fn homogeneous_degree(&self, f: &ExtElement) -> Result<Option<Multidegree>> {
        let mut deg = None;
        for &m in f.terms.keys() {
            let d = self.monomial_degree(m);
            match &deg {
                None => deg = Some(d),
                Some(prev) if *prev != d => return Err(Error::inhomogeneous("exterior element")),
                _ => {}
            }
        }
        Ok(deg)
    }

    /// Skew-commutative product; fails when the operands come from
    /// different fields.
    pub fn multiply(&self, f: &ExtElement, g: &ExtElement) -> Result<ExtElement> {
        let owned = |x: &ExtElement| x.terms.values().all(|c| self.field.owns(c));
        if !owned(f) || !owned(g) {
            return Err(Error::RingMismatch);
        }
        Ok(f.mul(g))
    }
}

pub fn indices(m: ExtMonomial) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| m & (1 << i) != 0)
}

/// Sign and support of `a * b`; `None` when the index sets overlap.
pub fn monomial_product(a: ExtMonomial, b: ExtMonomial) -> Option<(bool, ExtMonomial)> {
    if a & b != 0 {
        return None;
    }
    let mut inversions = 0u32;
    for j in indices(b) {
        // indices of `a` above j must move past e_j
        inversions += (a >> (j + 1)).count_ones();
    }
    Some((inversions % 2 == 1, a | b))
}

/// A sparse element of an exterior algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExtElement {
    terms: BTreeMap<ExtMonomial, Coeff>,
}

impl ExtElement {
    pub fn zero() -> Self {
        ExtElement::default()
    }

    pub fn monomial(m: ExtMonomial, c: Coeff) -> Self {
        let mut e = ExtElement::zero();
        e.add_term(m, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExtMonomial, &Coeff)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: ExtMonomial) -> Option<&Coeff> {
        self.terms.get(&m)
    }

    pub fn add_term(&mut self, m: ExtMonomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &Coeff) -> ExtElement {
        let mut out = ExtElement::zero();
        for (&m, a) in &self.terms {
            out.add_term(m, a * c);
        }
        out
    }

    pub fn mul(&self, other: &ExtElement) -> ExtElement {
        let mut out = ExtElement::zero();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                if let Some((neg, m)) = monomial_product(a, b) {
                    let c = ca * cb;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        out
    }
}

impl Add for &ExtElement {
    type Output = ExtElement;
    fn add(self, rhs: &ExtElement) -> ExtElement {
        let mut out = self.clone();
        for (&m, c) in &rhs.terms {
            out.add_term(m, c.clone());
        }
        out
    }
}

impl Sub for &ExtElement {
    type Output = ExtElement;
    fn sub(self, rhs: &ExtElement) -> ExtElement {
        let mut out = self.clone();
        for (&m, c) in &rhs.terms {
            out.add_term(m, -c);
        }
        out
    }
}

impl Neg for &ExtElement {
    type Output = ExtElement;
    fn neg(self) -> ExtElement {
        ExtElement {
            terms: self.terms.iter().map(|(&m, c)| (m, -c)).collect(),
        }
    }
}
