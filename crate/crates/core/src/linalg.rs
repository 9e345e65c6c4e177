//! Minimal exact linear algebra: column-major sparse matrices over a
//! commutative ring, plus dense Gaussian elimination over the rationals for
//! rank and kernel computations at a specialization point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// The ring operations sparse matrices need.
pub trait CoeffRing: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
}

impl CoeffRing for crate::ratfun::RatFun {
    fn zero() -> Self {
        crate::ratfun::RatFun::zero()
    }
    fn one() -> Self {
        crate::ratfun::RatFun::one()
    }
    fn is_zero(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

impl CoeffRing for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

/// Column-major sparse matrix: `cols[j]` lists `(row, value)` sorted by row.
#[derive(Clone, PartialEq, Debug)]
pub struct SpMat<T> {
    pub rows: usize,
    cols: Vec<Vec<(usize, T)>>,
}

impl<T: CoeffRing> SpMat<T> {
    pub fn zeros(rows: usize, cols: usize) -> SpMat<T> {
        SpMat {
            rows,
            cols: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> SpMat<T> {
        let mut m = SpMat::zeros(n, n);
        for j in 0..n {
            m.cols[j].push((j, T::one()));
        }
        m
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn from_triplets(rows: usize, cols: usize, entries: &[(usize, usize, T)]) -> SpMat<T> {
        let mut m = SpMat::zeros(rows, cols);
        for (i, j, v) in entries {
            m.set(*i, *j, v.clone());
        }
        m
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        assert!(i < self.rows && j < self.cols.len());
        let col = &mut self.cols[j];
        match col.binary_search_by_key(&i, |e| e.0) {
            Ok(pos) => {
                if v.is_zero() {
                    col.remove(pos);
                } else {
                    col[pos].1 = v;
                }
            }
            Err(pos) => {
                if !v.is_zero() {
                    col.insert(pos, (i, v));
                }
            }
        }
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        match self.cols[j].binary_search_by_key(&i, |e| e.0) {
            Ok(pos) => self.cols[j][pos].1.clone(),
            Err(_) => T::zero(),
        }
    }

    pub fn col(&self, j: usize) -> &[(usize, T)] {
        &self.cols[j]
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn add(&self, rhs: &SpMat<T>) -> SpMat<T> {
        assert_eq!(self.rows, rhs.rows);
        assert_eq!(self.cols.len(), rhs.cols.len());
        let mut out = SpMat::zeros(self.rows, self.cols.len());
        for j in 0..self.cols.len() {
            out.cols[j] = merge_cols(&self.cols[j], &rhs.cols[j]);
        }
        out
    }

    pub fn neg(&self) -> SpMat<T> {
        let mut out = self.clone();
        for col in &mut out.cols {
            for (_, v) in col.iter_mut() {
                *v = v.neg();
            }
        }
        out
    }

    pub fn scale(&self, c: &T) -> SpMat<T> {
        let mut out = SpMat::zeros(self.rows, self.cols.len());
        for j in 0..self.cols.len() {
            for (i, v) in &self.cols[j] {
                let w = v.mul(c);
                if !w.is_zero() {
                    out.cols[j].push((*i, w));
                }
            }
        }
        out
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &SpMat<T>) -> SpMat<T> {
        assert_eq!(self.cols.len(), rhs.rows, "dimension mismatch");
        let mut out = SpMat::zeros(self.rows, rhs.cols.len());
        for j in 0..rhs.cols.len() {
            // column j of the product = sum over k of rhs[k,j] * self.col(k)
            let mut acc: Vec<(usize, T)> = Vec::new();
            for (k, b) in &rhs.cols[j] {
                let scaled: Vec<(usize, T)> = self.cols[*k]
                    .iter()
                    .map(|(i, a)| (*i, a.mul(b)))
                    .collect();
                acc = merge_cols(&acc, &scaled);
            }
            out.cols[j] = acc;
        }
        out
    }

    /// Kronecker product in the row-major pair ordering:
    /// row `(i1, i2) = i1 * rhs.rows + i2`.
    pub fn kron(&self, rhs: &SpMat<T>) -> SpMat<T> {
        let mut out = SpMat::zeros(self.rows * rhs.rows, self.cols.len() * rhs.cols.len());
        for j1 in 0..self.cols.len() {
            for (i1, a) in &self.cols[j1] {
                for j2 in 0..rhs.cols.len() {
                    let col = &mut out.cols[j1 * rhs.cols.len() + j2];
                    for (i2, b) in &rhs.cols[j2] {
                        let v = a.mul(b);
                        if !v.is_zero() {
                            col.push((i1 * rhs.rows + i2, v));
                        }
                    }
                }
            }
        }
        for col in &mut out.cols {
            col.sort_by_key(|e| e.0);
        }
        out
    }

    pub fn map<U: CoeffRing>(&self, f: impl Fn(&T) -> U) -> SpMat<U> {
        let mut out = SpMat::zeros(self.rows, self.cols.len());
        for j in 0..self.cols.len() {
            for (i, v) in &self.cols[j] {
                let w = f(v);
                if !w.is_zero() {
                    out.cols[j].push((*i, w));
                }
            }
        }
        out
    }

    /// Stack vertically: `[self; other]`.
    pub fn vstack(&self, other: &SpMat<T>) -> SpMat<T> {
        assert_eq!(self.cols.len(), other.cols.len());
        let mut out = SpMat::zeros(self.rows + other.rows, self.cols.len());
        for j in 0..self.cols.len() {
            let mut col = self.cols[j].clone();
            col.extend(other.cols[j].iter().map(|(i, v)| (i + self.rows, v.clone())));
            out.cols[j] = col;
        }
        out
    }
}

fn merge_cols<T: CoeffRing>(a: &[(usize, T)], b: &[(usize, T)]) -> Vec<(usize, T)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut x, mut y) = (0, 0);
    while x < a.len() || y < b.len() {
        if y >= b.len() || (x < a.len() && a[x].0 < b[y].0) {
            out.push(a[x].clone());
            x += 1;
        } else if x >= a.len() || b[y].0 < a[x].0 {
            out.push(b[y].clone());
            y += 1;
        } else {
            let v = a[x].1.add(&b[y].1);
            if !v.is_zero() {
                out.push((a[x].0, v));
            }
            x += 1;
            y += 1;
        }
    }
    out
}

/// Dense matrix over the rationals for elimination.
#[derive(Clone, Debug)]
pub struct DenseRat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigRational>,
}

impl DenseRat {
    pub fn zeros(rows: usize, cols: usize) -> DenseRat {
        DenseRat {
            rows,
            cols,
            data: vec![<BigRational as Zero>::zero(); rows * cols],
        }
    }

    pub fn from_sparse(m: &SpMat<BigRational>) -> DenseRat {
        let mut d = DenseRat::zeros(m.rows, m.ncols());
        for j in 0..m.ncols() {
            for (i, v) in m.col(j) {
                d.data[i * d.cols + j] = v.clone();
            }
        }
        d
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    /// Row echelon reduction in place; returns the pivot columns.
    pub fn echelonize(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r >= self.rows {
                break;
            }
            // find a pivot in column c at or below row r
            let Some(p) = (r..self.rows).find(|&i| !num_traits::Zero::is_zero(self.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, c).recip();
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && !num_traits::Zero::is_zero(self.get(i, c)) {
                    let f = self.get(i, c).clone();
                    for j in c..self.cols {
                        let v = self.get(i, j) - &f * self.get(r, j);
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.echelonize().len()
    }

    /// A basis of the right kernel.
    pub fn kernel_basis(&self) -> Vec<Vec<BigRational>> {
        let mut m = self.clone();
        let pivots = m.echelonize();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![<BigRational as Zero>::zero(); self.cols];
            v[free] = <BigRational as One>::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.get(r, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = <BigRational as Zero>::zero();
                for j in 0..self.cols {
                    if !num_traits::Zero::is_zero(self.get(i, j)) && !num_traits::Zero::is_zero(&v[j]) {
                        acc += self.get(i, j) * &v[j];
                    }
                }
                acc
            })
            .collect()
    }
}

pub fn brat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfun::RatFun;

    #[test]
    fn sparse_mul_identity() {
        let id: SpMat<RatFun> = SpMat::identity(4);
        let mut a = SpMat::zeros(4, 4);
        a.set(0, 1, RatFun::s_pow(1, 2));
        a.set(3, 0, RatFun::from_int(-2));
        assert_eq!(id.mul(&a), a);
        assert_eq!(a.mul(&id), a);
    }

    #[test]
    fn sparse_kron_shapes() {
        let mut a: SpMat<RatFun> = SpMat::zeros(2, 2);
        a.set(0, 0, RatFun::from_int(1));
        a.set(1, 1, RatFun::from_int(2));
        let b: SpMat<RatFun> = SpMat::identity(3);
        let k = a.kron(&b);
        assert_eq!(k.rows, 6);
        assert_eq!(k.ncols(), 6);
        assert_eq!(k.get(4, 4), RatFun::from_int(2));
        assert_eq!(k.get(0, 0), RatFun::from_int(1));
        assert_eq!(k.get(0, 3), RatFun::zero());
    }

    #[test]
    fn dense_rank_kernel() {
        // [[1, 2, 3], [2, 4, 6]] has rank 1, kernel dim 2
        let mut m = DenseRat::zeros(2, 3);
        for (j, v) in [1, 2, 3].iter().enumerate() {
            m.set(0, j, brat(*v, 1));
            m.set(1, j, brat(2 * v, 1));
        }
        assert_eq!(m.rank(), 1);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            let w = m.mul_vec(v);
            assert!(w.iter().all(|x| num_traits::Zero::is_zero(x)));
        }
    }
}
