//! Gröbner bases for homogeneous submodules of graded free modules.
//!
//! The monomial order is degree reverse lexicographic with the theta-weights
//! of the variables as the grading, extended to free modules position over
//! term (a smaller position index is larger). Pairs are processed in order
//! of theta-degree, so every computation can stop after any degree.

use std::cmp::Ordering;
use std::collections::HashSet;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::matrix::{FreeModule, GradedMatrix};
use crate::poly::{Exponents, PolyRing, Polynomial};

/// A monomial `x^exps * g_pos` of a free module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Mono {
    pos: usize,
    weight: i64,
    exps: Exponents,
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .pos
            .cmp(&self.pos)
            .then(self.weight.cmp(&other.weight))
            .then_with(|| {
                for (a, b) in self.exps.iter().zip(&other.exps).rev() {
                    if a != b {
                        return b.cmp(a);
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mono {
    fn divides(&self, other: &Mono) -> bool {
        self.pos == other.pos && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }
}

/// Sparse module element, terms in ascending order (lead term last).
pub(crate) type SVec = Vec<(Mono, Coeff)>;

/// Comparison data shared by every element of one ambient module.
#[derive(Clone, Debug)]
pub(crate) struct Order {
    weights: Vec<i64>,
    pos_weights: Vec<i64>,
}

impl Order {
    pub(crate) fn new(ring: &PolyRing, ambient: &FreeModule) -> Result<Self> {
        let theta = ring.theta()?;
        Ok(Order {
            weights: ring.grading().weights()?,
            pos_weights: ambient.twists().iter().map(|t| t.dot(theta)).collect(),
        })
    }

    fn mono(&self, pos: usize, exps: Exponents) -> Mono {
        let weight = exps.iter().zip(&self.weights).map(|(&e, w)| e as i64 * w).sum();
        Mono { pos, weight, exps }
    }

    pub(crate) fn to_sparse(&self, v: &[Polynomial]) -> SVec {
        let mut out: SVec = v
            .iter()
            .enumerate()
            .flat_map(|(pos, f)| f.terms().map(move |(e, c)| (pos, e.clone(), c.clone())))
            .map(|(pos, e, c)| (self.mono(pos, e), c))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    pub(crate) fn to_dense(&self, v: &SVec, rank: usize) -> Vec<Polynomial> {
        let mut out = vec![Polynomial::zero(); rank];
        for (m, c) in v {
            out[m.pos].add_term(m.exps.clone(), c.clone());
        }
        out
    }

    fn degree(&self, v: &SVec) -> Option<i64> {
        v.last().map(|(m, _)| m.weight + self.pos_weights[m.pos])
    }

    fn shifted(&self, m: &Mono, by: &[u32]) -> Mono {
        let exps: Exponents = m.exps.iter().zip(by).map(|(a, b)| a + b).collect();
        self.mono(m.pos, exps)
    }
}

/// `a - c * x^by * b`.
fn sub_mul(order: &Order, a: &SVec, c: &Coeff, by: &[u32], b: &SVec) -> SVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut ia = a.iter().peekable();
    let mut ib = b
        .iter()
        .map(|(m, x)| (order.shifted(m, by), -&(c * x)))
        .peekable();
    loop {
        match (ia.peek(), ib.peek()) {
            (None, None) => break,
            (Some(_), None) => out.push(ia.next().unwrap().clone()),
            (None, Some(_)) => out.push(ib.next().unwrap()),
            (Some((ma, _)), Some((mb, _))) => match ma.cmp(mb) {
                Ordering::Less => out.push(ia.next().unwrap().clone()),
                Ordering::Greater => out.push(ib.next().unwrap()),
                Ordering::Equal => {
                    let (m, x) = ia.next().unwrap();
                    let (_, y) = ib.next().unwrap();
                    let s = x + &y;
                    if !s.is_zero() {
                        out.push((m.clone(), s));
                    }
                }
            },
        }
    }
    out
}

fn make_monic(v: &mut SVec) {
    if let Some((_, lc)) = v.last() {
        let inv = lc.inv().expect("nonzero lead coefficient");
        for (_, c) in v.iter_mut() {
            *c = &*c * &inv;
        }
    }
}

fn quotient(num: &[u32], den: &[u32]) -> Exponents {
    num.iter().zip(den).map(|(a, b)| a - b).collect()
}

fn lcm(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

#[derive(Clone, Debug)]
struct Pair {
    degree: i64,
    i: usize,
    j: usize,
    lcm: Exponents,
}

/// Degree-by-degree Buchberger completion over one ambient module.
#[derive(Clone, Debug)]
pub(crate) struct Engine {
    order: Order,
    basis: Vec<SVec>,
    pending: Vec<Pair>,
    pending_set: HashSet<(usize, usize)>,
}

impl Engine {
    pub(crate) fn new(order: Order) -> Self {
        Engine {
            order,
            basis: Vec::new(),
            pending: Vec::new(),
            pending_set: HashSet::new(),
        }
    }

    /// Full reduction of `v` by the current basis.
    pub(crate) fn reduce(&self, mut v: SVec) -> SVec {
        let mut rem: SVec = Vec::new();
        while let Some((m, c)) = v.last() {
            let hit = self
                .basis
                .iter()
                .find(|g| g.last().map(|(lm, _)| lm.divides(m)).unwrap_or(false));
            match hit {
                Some(g) => {
                    let by = quotient(&m.exps, &g.last().unwrap().0.exps);
                    let c = c.clone();
                    v = sub_mul(&self.order, &v, &c, &by, g);
                }
                None => rem.push(v.pop().unwrap()),
            }
        }
        rem.reverse();
        rem
    }

    /// Adds an element without reducing it; the caller guarantees its lead
    /// term is not divisible by an existing lead term.
    fn push(&mut self, mut v: SVec) {
        make_monic(&mut v);
        let j = self.basis.len();
        let lead_j = v.last().unwrap().0.clone();
        for (i, g) in self.basis.iter().enumerate() {
            let lead_i = &g.last().unwrap().0;
            if lead_i.pos != lead_j.pos {
                continue;
            }
            let l = lcm(&lead_i.exps, &lead_j.exps);
            let m = self.order.mono(lead_i.pos, l);
            self.pending.push(Pair {
                degree: m.weight + self.order.pos_weights[m.pos],
                i,
                j,
                lcm: m.exps,
            });
            self.pending_set.insert((i, j));
        }
        self.basis.push(v);
    }

    /// Reduces `v` and adds the remainder when nonzero; returns whether the
    /// basis grew.
    pub(crate) fn insert(&mut self, v: SVec) -> bool {
        let r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        self.push(r);
        true
    }

    fn chain_criterion(&self, p: &Pair) -> bool {
        let pos = self.basis[p.i].last().unwrap().0.pos;
        self.basis.iter().enumerate().any(|(k, g)| {
            if k == p.i || k == p.j {
                return false;
            }
            let lk = &g.last().unwrap().0;
            lk.pos == pos
                && lk.exps.iter().zip(&p.lcm).all(|(a, b)| a <= b)
                && !self.pending_set.contains(&(p.i.min(k), p.i.max(k)))
                && !self.pending_set.contains(&(p.j.min(k), p.j.max(k)))
        })
    }

    /// Processes every pending pair of theta-degree at most `limit`.
    pub(crate) fn complete(&mut self, limit: Option<i64>) {
        loop {
            let best = self
                .pending
                .iter()
                .enumerate()
                .filter(|(_, p)| limit.map_or(true, |l| p.degree <= l))
                .min_by_key(|(_, p)| (p.degree, p.j, p.i))
                .map(|(k, _)| k);
            let Some(k) = best else { break };
            let p = self.pending.swap_remove(k);
            let skip = self.chain_criterion(&p);
            self.pending_set.remove(&(p.i, p.j));
            if skip {
                continue;
            }
            let s = self.s_vector(p.i, p.j);
            self.insert(s);
        }
    }

    fn s_vector(&self, i: usize, j: usize) -> SVec {
        let (gi, gj) = (&self.basis[i], &self.basis[j]);
        let (li, lj) = (&gi.last().unwrap().0, &gj.last().unwrap().0);
        let l = lcm(&li.exps, &lj.exps);
        let one = gi.last().unwrap().1.zero_like();
        let neg_one = &one - &gi.last().unwrap().1;
        // gi, gj are monic
        let a = sub_mul(&self.order, &Vec::new(), &neg_one, &quotient(&l, &li.exps), gi);
        sub_mul(&self.order, &a, &gj.last().unwrap().1, &quotient(&l, &lj.exps), gj)
    }

    /// Interreduced, monic basis.
    pub(crate) fn reduced_basis(&self) -> Vec<SVec> {
        let mut keep: Vec<SVec> = Vec::new();
        let mut sorted = self.basis.clone();
        sorted.sort_by(|a, b| a.last().unwrap().0.cmp(&b.last().unwrap().0));
        for (k, g) in sorted.iter().enumerate() {
            let lead = &g.last().unwrap().0;
            let redundant = sorted
                .iter()
                .enumerate()
                .any(|(l, h)| {
                    let lh = &h.last().unwrap().0;
                    lh.divides(lead) && (lh != lead || l < k)
                });
            if !redundant {
                keep.push(g.clone());
            }
        }
        let tmp = Engine {
            order: self.order.clone(),
            basis: keep.clone(),
            pending: Vec::new(),
            pending_set: HashSet::new(),
        };
        keep.iter()
            .enumerate()
            .map(|(k, g)| {
                let mut others = tmp.clone();
                others.basis.remove(k);
                let (lead, rest) = g.split_last().unwrap();
                let mut r = others.reduce(rest.to_vec());
                r.push(lead.clone());
                r
            })
            .collect()
    }
}

/// A reduced Gröbner basis of a submodule of `ambient`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: PolyRing,
    ambient: FreeModule,
    engine: Engine,
}

fn check_rank(ambient: &FreeModule, v: &[Polynomial]) -> Result<()> {
    if v.len() != ambient.rank() {
        return Err(Error::AmbientMismatch(format!(
            "vector of length {} in a module of rank {}",
            v.len(),
            ambient.rank()
        )));
    }
    Ok(())
}

/// Reduced Gröbner basis of the submodule generated by `gens`.
pub fn buchberger(ring: &PolyRing, ambient: &FreeModule, gens: &[Vec<Polynomial>]) -> Result<GroebnerBasis> {
    let order = Order::new(ring, ambient)?;
    let mut engine = Engine::new(order);
    let mut sorted: Vec<(i64, usize, SVec)> = Vec::new();
    for (k, g) in gens.iter().enumerate() {
        check_rank(ambient, g)?;
        ambient.vector_degree(ring, g)?;
        let s = engine.order.to_sparse(g);
        if let Some(d) = engine.order.degree(&s) {
            sorted.push((d, k, s));
        }
    }
    sorted.sort_by_key(|(d, k, _)| (*d, *k));
    for (d, _, s) in sorted {
        engine.complete(Some(d));
        engine.insert(s);
    }
    engine.complete(None);
    let basis = engine.reduced_basis();
    let mut out = Engine::new(engine.order.clone());
    out.basis = basis;
    Ok(GroebnerBasis {
        ring: ring.clone(),
        ambient: ambient.clone(),
        engine: out,
    })
}

impl GroebnerBasis {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn ambient(&self) -> &FreeModule {
        &self.ambient
    }

    pub fn len(&self) -> usize {
        self.engine.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.engine.basis.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        true
    }

    pub fn elements(&self) -> Vec<Vec<Polynomial>> {
        self.engine
            .basis
            .iter()
            .map(|g| self.engine.order.to_dense(g, self.ambient.rank()))
            .collect()
    }

    /// Lead terms as `(position, exponents)`.
    pub fn lead_terms(&self) -> Vec<(usize, Exponents)> {
        self.engine
            .basis
            .iter()
            .map(|g| {
                let m = &g.last().unwrap().0;
                (m.pos, m.exps.clone())
            })
            .collect()
    }

    pub fn normal_form(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>> {
        check_rank(&self.ambient, v)?;
        let r = self.engine.reduce(self.engine.order.to_sparse(v));
        Ok(self.engine.order.to_dense(&r, self.ambient.rank()))
    }

    pub fn contains(&self, v: &[Polynomial]) -> Result<bool> {
        Ok(self.normal_form(v)?.iter().all(Polynomial::is_zero))
    }

    /// Whether the free generator at `pos` lies in the submodule.
    pub fn contains_generator(&self, pos: usize) -> bool {
        self.lead_terms()
            .iter()
            .any(|(p, e)| *p == pos && e.iter().all(|&x| x == 0))
    }

    /// Checks the Buchberger criterion directly.
    pub fn s_pairs_reduce_to_zero(&self) -> bool {
        let b = &self.engine.basis;
        for j in 0..b.len() {
            for i in 0..j {
                if b[i].last().unwrap().0.pos != b[j].last().unwrap().0.pos {
                    continue;
                }
                if !self.engine.reduce(self.engine.s_vector(i, j)).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// Debug dump: each element as a list of `[position, exponents, coefficient]`.
    pub fn to_json(&self) -> Value {
        let elems: Vec<Value> = self
            .engine
            .basis
            .iter()
            .map(|g| {
                Value::Array(
                    g.iter()
                        .rev()
                        .map(|(m, c)| json!([m.pos, m.exps, c.to_string()]))
                        .collect(),
                )
            })
            .collect();
        json!({
            "schema": 1,
            "order": "theta-degrevlex-pot",
            "ambient": self.ambient.twists().iter().map(|t| t.coords().to_vec()).collect::<Vec<_>>(),
            "elements": elems,
        })
    }
}

/// Indices of a minimal generating subset of `gens`: scanning in order of
/// theta-degree then index, a generator is kept iff it is not in the
/// submodule generated by those kept before it.
pub fn minimal_generators(ring: &PolyRing, ambient: &FreeModule, gens: &[Vec<Polynomial>]) -> Result<Vec<usize>> {
    let order = Order::new(ring, ambient)?;
    let mut engine = Engine::new(order);
    let mut sorted: Vec<(i64, usize, SVec)> = Vec::new();
    for (k, g) in gens.iter().enumerate() {
        check_rank(ambient, g)?;
        ambient.vector_degree(ring, g)?;
        let s = engine.order.to_sparse(g);
        if let Some(d) = engine.order.degree(&s) {
            sorted.push((d, k, s));
        }
    }
    sorted.sort_by_key(|(d, k, _)| (*d, *k));
    let mut kept = Vec::new();
    for (d, k, s) in sorted {
        engine.complete(Some(d));
        if engine.insert(s) {
            kept.push(k);
        }
    }
    Ok(kept)
}

/// Columns generating the kernel of `phi`, as a map into `phi.source()`.
/// The columns form a minimal generating set.
pub fn syzygies(ring: &PolyRing, phi: &GradedMatrix) -> Result<GradedMatrix> {
    phi.check_homogeneity(ring)?;
    let r = phi.rows();
    let m = phi.cols();
    let col_degrees: Vec<_> = (0..m).map(|j| phi.column_with_degree(j).1).collect();
    let aug = phi.target().direct_sum(&FreeModule::new(col_degrees.clone()));
    let gens: Vec<Vec<Polynomial>> = (0..m)
        .map(|j| {
            let mut v = phi.column(j);
            v.extend((0..m).map(|k| if k == j { ring.one() } else { Polynomial::zero() }));
            v
        })
        .collect();
    let gb = buchberger(ring, &aug, &gens)?;
    let mut syz: Vec<Vec<Polynomial>> = Vec::new();
    for (g, (pos, _)) in gb.elements().into_iter().zip(gb.lead_terms()) {
        if pos >= r {
            syz.push(g[r..].to_vec());
        }
    }
    let syz_module = FreeModule::new(col_degrees);
    let keep = minimal_generators(ring, &syz_module, &syz)?;
    let mut cols = Vec::with_capacity(keep.len());
    for k in keep {
        let d = syz_module.vector_degree(ring, &syz[k])?.expect("nonzero syzygy");
        cols.push((syz[k].clone(), &d - phi.shift()));
    }
    GradedMatrix::from_columns(ring, phi.source().clone(), ring.zero_degree(), cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree::Multidegree;
    use crate::field::FieldSpec;

    fn ring() -> PolyRing {
        PolyRing::new(
            FieldSpec::prime(101).unwrap(),
            vec!["x".into(), "y".into()],
            vec![Multidegree::from([1]); 2],
        )
        .unwrap()
    }

    fn p(r: &PolyRing, s: &str) -> Polynomial {
        r.parse(s).unwrap()
    }

    #[test]
    fn ideal_examples() {
        let r = ring();
        let f = FreeModule::standard(&r, 1);
        let gb = buchberger(&r, &f, &[vec![p(&r, "x^2")], vec![p(&r, "x*y")]]).unwrap();
        assert_eq!(gb.len(), 2);
        assert!(gb.s_pairs_reduce_to_zero());
        assert!(gb.normal_form(&[p(&r, "x^2")]).unwrap()[0].is_zero());
        let gx = buchberger(&r, &f, &[vec![p(&r, "x")]]).unwrap();
        assert_eq!(gx.normal_form(&[p(&r, "x*y + y^2")]).unwrap()[0], p(&r, "y^2"));
        assert!(matches!(
            buchberger(&r, &f, &[vec![p(&r, "y^2 - x")]]),
            Err(Error::Inhomogeneous { .. })
        ));
    }

    #[test]
    fn module_membership() {
        let r = ring();
        let f = FreeModule::standard(&r, 2);
        let cols = vec![
            vec![p(&r, "x*y"), p(&r, "y^2")],
            vec![p(&r, "-x^2"), p(&r, "-x*y")],
        ];
        let gb = buchberger(&r, &f, &cols).unwrap();
        assert!(gb.s_pairs_reduce_to_zero());
        assert!(gb.contains(&[p(&r, "x^2*y"), p(&r, "x*y^2")]).unwrap());
        assert!(!gb.contains(&[p(&r, "x^2"), p(&r, "0")]).unwrap());
    }

    #[test]
    fn syzygy_examples() {
        let r = ring();
        let f1 = FreeModule::standard(&r, 1);
        let phi = GradedMatrix::new(
            &r,
            FreeModule::new(vec![[1].into(), [1].into()]),
            f1.clone(),
            [0].into(),
            vec![vec![p(&r, "x"), p(&r, "y")]],
        )
        .unwrap();
        let s = syzygies(&r, &phi).unwrap();
        assert_eq!(s.cols(), 1);
        assert_eq!(s.source().twists(), &[Multidegree::from([2])]);
        assert!(phi.compose(&s).unwrap().is_zero());
        let x = GradedMatrix::new(&r, FreeModule::new(vec![[1].into()]), f1, [0].into(), vec![vec![p(&r, "x")]])
            .unwrap();
        assert_eq!(syzygies(&r, &x).unwrap().cols(), 0);
        let id = GradedMatrix::identity(&r, &FreeModule::standard(&r, 3));
        assert_eq!(syzygies(&r, &id).unwrap().cols(), 0);
    }

    #[test]
    fn minimal_generators_drop_redundant() {
        let r = ring();
        let f = FreeModule::standard(&r, 1);
        let gens = vec![vec![p(&r, "x^2")], vec![p(&r, "x")], vec![p(&r, "x*y")], vec![p(&r, "y")]];
        assert_eq!(minimal_generators(&r, &f, &gens).unwrap(), vec![1, 3]);
    }
}
