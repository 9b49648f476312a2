//! Multigraded polynomial rings and their sparse elements.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::degree::{GradingSpec, Multidegree};
use crate::error::{Error, Result};
use crate::field::{Coeff, FieldSpec};

pub type Exponents = Vec<u32>;

#[derive(Debug, PartialEq, Eq, Hash)]
struct RingData {
    field: FieldSpec,
    var_names: Vec<String>,
    grading: GradingSpec,
}

/// `k[x_0, ..., x_n]` graded by `Z^t`. Cheap to clone.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing(Arc<RingData>);

impl PolyRing {
    pub fn new(field: FieldSpec, names: Vec<String>, degrees: Vec<Multidegree>) -> Result<Self> {
        Self::with_theta(field, names, degrees, None)
    }

    pub fn with_theta(
        field: FieldSpec,
        names: Vec<String>,
        degrees: Vec<Multidegree>,
        theta: Option<Vec<i64>>,
    ) -> Result<Self> {
        field.validate()?;
        if names.is_empty() {
            return Err(Error::EmptyRing);
        }
        if names.len() != degrees.len() {
            return Err(Error::mismatch("variable degrees", names.len(), degrees.len()));
        }
        if names.len() > 32 {
            return Err(Error::mismatch("at most 32 variables", 32, names.len()));
        }
        let grading = GradingSpec::new(degrees, theta)?;
        Ok(PolyRing(Arc::new(RingData {
            field,
            var_names: names,
            grading,
        })))
    }

    /// Standard graded ring on variables `x_0..x_{n}`.
    pub fn standard(field: FieldSpec, nvars: usize) -> Result<Self> {
        let names = (0..nvars).map(|i| format!("x_{i}")).collect();
        Self::new(field, names, vec![Multidegree::from([1]); nvars])
    }

    pub fn field(&self) -> &FieldSpec {
        &self.0.field
    }

    pub fn var_names(&self) -> &[String] {
        &self.0.var_names
    }

    pub fn nvars(&self) -> usize {
        self.0.var_names.len()
    }

    pub fn grading(&self) -> &GradingSpec {
        &self.0.grading
    }

    /// Rank `t` of the grading group.
    pub fn rank(&self) -> usize {
        self.0.grading.rank()
    }

    pub fn var_degree(&self, i: usize) -> &Multidegree {
        &self.0.grading.var_degrees()[i]
    }

    pub fn theta(&self) -> Result<&[i64]> {
        self.0.grading.theta()
    }

    pub fn zero_degree(&self) -> Multidegree {
        Multidegree::zero(self.rank())
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.var_names.iter().position(|n| n == name)
    }

    pub fn monomial_degree(&self, exps: &[u32]) -> Multidegree {
        let mut d = vec![0i64; self.rank()];
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                for (acc, c) in d.iter_mut().zip(self.var_degree(i).coords()) {
                    *acc += e as i64 * c;
                }
            }
        }
        Multidegree::new(d)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        let mut e = vec![0; self.nvars()];
        e[i] = 1;
        Polynomial::monomial(e, self.field().one())
    }

    pub fn constant(&self, c: Coeff) -> Polynomial {
        Polynomial::monomial(vec![0; self.nvars()], c)
    }

    pub fn one(&self) -> Polynomial {
        self.constant(self.field().one())
    }

    pub fn from_i64(&self, n: i64) -> Polynomial {
        self.constant(self.field().from_i64(n))
    }

    /// Common multidegree of all terms; `Ok(None)` for zero.
    pub fn homogeneous_degree(&self, f: &Polynomial) -> Result<Option<Multidegree>> {
        let mut deg = None;
        for e in f.terms.keys() {
            let d = self.monomial_degree(e);
            match &deg {
                None => deg = Some(d),
                Some(prev) if *prev != d => return Err(Error::inhomogeneous("polynomial")),
                _ => {}
            }
        }
        Ok(deg)
    }

    /// All monomials of multidegree exactly `d`, in descending lexicographic
    /// order of exponent vectors.
    pub fn monomials_of_degree(&self, d: &Multidegree) -> Result<Vec<Exponents>> {
        let theta = self.theta()?;
        let weights = self.0.grading.weights()?;
        let budget = d.dot(theta);
        let mut out = Vec::new();
        if budget < 0 {
            return Ok(out);
        }
        let mut cur = vec![0u32; self.nvars()];
        self.enumerate(0, d.clone(), budget, &weights, &mut cur, &mut out);
        Ok(out)
    }

    fn enumerate(
        &self,
        var: usize,
        remaining: Multidegree,
        budget: i64,
        weights: &[i64],
        cur: &mut Exponents,
        out: &mut Vec<Exponents>,
    ) {
        if var == self.nvars() {
            if remaining.is_zero() {
                out.push(cur.clone());
            }
            return;
        }
        let w = weights[var];
        let max = budget / w;
        for e in (0..=max).rev() {
            cur[var] = e as u32;
            let rem = &remaining - &self.var_degree(var).scaled(e);
            self.enumerate(var + 1, rem, budget - e * w, weights, cur, out);
        }
        cur[var] = 0;
    }
}

/// A sparse polynomial: exponent vectors mapped to nonzero coefficients.
///
/// Elements do not point back to their ring; operations that need grading
/// data take the ring separately.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Exponents, Coeff>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn monomial(exps: Exponents, c: Coeff) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(exps, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Coeff)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Option<&Coeff> {
        self.terms.get(exps)
    }

    pub fn add_term(&mut self, exps: Exponents, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    /// Coefficient of the constant monomial, when nonzero.
    pub fn constant_term(&self) -> Option<&Coeff> {
        self.terms
            .iter()
            .find(|(e, _)| e.iter().all(|&x| x == 0))
            .map(|(_, c)| c)
    }

    /// The single coefficient of a nonzero constant polynomial.
    pub fn as_constant(&self) -> Option<&Coeff> {
        if self.terms.len() == 1 {
            self.constant_term()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, exps: &[u32], c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e.iter().zip(exps).map(|(x, y)| x + y).collect(), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32, one: &Polynomial) -> Polynomial {
        let mut acc = one.clone();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes field values for the variables.
    pub fn evaluate(&self, point: &[Coeff]) -> Option<Coeff> {
        let mut acc: Option<Coeff> = None;
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = &t * x;
                }
            }
            acc = Some(match acc {
                None => t,
                Some(a) => &a + &t,
            });
        }
        acc
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}
