//! Dense linear algebra over the coefficient field, used for graded pieces.

use crate::field::{Coeff, FieldSpec};

/// A dense matrix stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Coeff>,
}

impl DenseMatrix {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_columns(field: &FieldSpec, rows: usize, cols: &[Vec<Coeff>]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Coeff {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Coeff) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<Coeff> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Coeff::is_zero)
    }

    pub fn mul(&self, other: &DenseMatrix, field: &FieldSpec) -> DenseMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = DenseMatrix::zeros(field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn apply(&self, v: &[Coeff], field: &FieldSpec) -> Vec<Coeff> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = field.zero();
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc = &acc + &(self.get(i, j) * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn rank(&self, field: &FieldSpec) -> usize {
        let mut e = Echelon::new(field.clone(), self.cols);
        for i in 0..self.rows {
            e.insert((0..self.cols).map(|j| self.get(i, j).clone()).collect());
        }
        e.rank()
    }

    /// Basis of `{v : self * v = 0}`.
    pub fn nullspace(&self, field: &FieldSpec) -> Vec<Vec<Coeff>> {
        let mut e = Echelon::new(field.clone(), self.cols);
        for i in 0..self.rows {
            e.insert((0..self.cols).map(|j| self.get(i, j).clone()).collect());
        }
        e.orthogonal_complement_basis()
    }
}

/// Incrementally maintained reduced row echelon form of a subspace of k^n.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: FieldSpec,
    width: usize,
    /// Rows with leading 1 at `pivots[i]`, fully reduced against each other.
    rows: Vec<Vec<Coeff>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: FieldSpec, width: usize) -> Self {
        Echelon {
            field,
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, j: usize) -> bool {
        self.pivots.contains(&j)
    }

    /// Reduces `v` against the stored rows, clearing every pivot coordinate.
    pub fn reduce(&self, v: &mut [Coeff]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&c * r);
                }
            }
        }
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<Coeff>) -> bool {
        assert_eq!(v.len(), self.width);
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero");
        for x in v.iter_mut() {
            *x = &*x * &inv;
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    if !y.is_zero() {
                        *x = &*x - &(&c * y);
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, v);
        self.pivots.insert(at, p);
        true
    }

    pub fn contains(&self, v: &[Coeff]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Coeff::is_zero)
    }

    /// Coordinates outside the pivot set; they index a basis of the quotient
    /// `k^n / span`.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.width).filter(|j| !self.is_pivot(*j)).collect()
    }

    /// Basis of the solutions of `row . x = 0` for all stored rows.
    pub fn orthogonal_complement_basis(&self) -> Vec<Vec<Coeff>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut x = vec![self.field.zero(); self.width];
                x[f] = self.field.one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    x[p] = -&row[f];
                }
                x
            })
            .collect()
    }
}

/// Expresses vectors in a fixed linearly independent family.
#[derive(Clone, Debug)]
pub struct Coordinates {
    field: FieldSpec,
    /// Echelon rows augmented with the combination that produced them.
    rows: Vec<(usize, Vec<Coeff>, Vec<Coeff>)>,
    dim: usize,
}

impl Coordinates {
    /// `basis` must be linearly independent; panics otherwise.
    pub fn new(field: &FieldSpec, width: usize, basis: &[Vec<Coeff>]) -> Self {
        let k = basis.len();
        let mut rows: Vec<(usize, Vec<Coeff>, Vec<Coeff>)> = Vec::new();
        for (idx, b) in basis.iter().enumerate() {
            assert_eq!(b.len(), width);
            let mut v = b.clone();
            let mut comb = vec![field.zero(); k];
            comb[idx] = field.one();
            for (p, r, c) in &rows {
                if !v[*p].is_zero() {
                    let f = v[*p].clone();
                    for (x, y) in v.iter_mut().zip(r) {
                        *x = &*x - &(&f * y);
                    }
                    for (x, y) in comb.iter_mut().zip(c) {
                        *x = &*x - &(&f * y);
                    }
                }
            }
            let p = v
                .iter()
                .position(|x| !x.is_zero())
                .expect("basis vectors must be independent");
            let inv = v[p].inv().expect("nonzero");
            for x in v.iter_mut() {
                *x = &*x * &inv;
            }
            for x in comb.iter_mut() {
                *x = &*x * &inv;
            }
            rows.push((p, v, comb));
        }
        Coordinates {
            field: field.clone(),
            rows,
            dim: k,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coefficients of `v` in the basis, or `None` if `v` is outside the span.
    pub fn solve(&self, v: &[Coeff]) -> Option<Vec<Coeff>> {
        let mut w = v.to_vec();
        let mut out = vec![self.field.zero(); self.dim];
        for (p, r, c) in &self.rows {
            if !w[*p].is_zero() {
                let f = w[*p].clone();
                for (x, y) in w.iter_mut().zip(r) {
                    *x = &*x - &(&f * y);
                }
                for (x, y) in out.iter_mut().zip(c) {
                    *x = &*x + &(&f * y);
                }
            }
        }
        w.iter().all(Coeff::is_zero).then_some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> FieldSpec {
        FieldSpec::prime(101).unwrap()
    }

    fn vec_of(xs: &[i64]) -> Vec<Coeff> {
        xs.iter().map(|&x| f().from_i64(x)).collect()
    }

    #[test]
    fn nullspace_of_rank_one() {
        let m = DenseMatrix::from_columns(&f(), 1, &[vec_of(&[1]), vec_of(&[2]), vec_of(&[3])]);
        let ns = m.nullspace(&f());
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(m.apply(v, &f()).iter().all(Coeff::is_zero));
        }
        assert_eq!(m.rank(&f()), 1);
    }

    #[test]
    fn echelon_quotient_columns() {
        let mut e = Echelon::new(f(), 3);
        assert!(e.insert(vec_of(&[0, 1, 1])));
        assert!(!e.insert(vec_of(&[0, 2, 2])));
        assert_eq!(e.free_columns(), vec![0, 2]);
        assert!(e.contains(&vec_of(&[0, -1, -1])));
    }

    #[test]
    fn coordinates_roundtrip() {
        let basis = vec![vec_of(&[1, 1, 0]), vec_of(&[0, 1, 1])];
        let c = Coordinates::new(&f(), 3, &basis);
        assert_eq!(c.solve(&vec_of(&[2, 5, 3])), Some(vec_of(&[2, 3])));
        assert_eq!(c.solve(&vec_of(&[1, 0, 0])), None);
    }
}
