//! Dense square-or-rectangular matrices over [`Scalar`].

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{QtkError, Result};
use crate::scalars::{Bindings, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn diagonal(entries: Vec<Scalar>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    /// Matrix unit `E_ij` (0-based) of size `n`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m.set(i, j, Scalar::one());
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        self.data.chunks(self.cols.max(1)).map(|c| c.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rows)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    fn zip(&self, o: &Self, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect() }
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.add_ref(b))
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.sub_ref(b))
    }

    pub fn neg_ref(&self) -> Self {
        self.map(|x| x.neg_ref())
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.map(|x| x.mul_ref(c))
    }

    pub fn scale_rat(&self, k: &BigRational) -> Self {
        self.map(|x| x.scale_rat(k))
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let a_one = a.is_one();
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = if a_one { b.clone() } else { a.mul_ref(b) };
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].add_ref(&prod);
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Kronecker product `self ⊗ o`.
    pub fn kron(&self, o: &Self) -> Self {
        let mut out = Self::zeros(self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        let b = o.get(k, l);
                        if b.is_zero() {
                            continue;
                        }
                        out.set(i * o.rows + k, j * o.cols + l, a.mul_ref(b));
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Commutator `[self, o]`.
    pub fn commutator(&self, o: &Self) -> Self {
        self.mul_ref(o).sub_ref(&o.mul_ref(self))
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(Scalar::zero(), |acc, i| acc.add_ref(self.get(i, i)))
    }

    /// Smallest `k` with `self^k = 0`, if any `k ≤ rows`.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let mut p = Self::identity(self.rows);
        for k in 1..=self.rows {
            p = p.mul_ref(self);
            if p.is_zero() {
                return Some(k);
            }
        }
        None
    }

    /// `exp` of a nilpotent matrix as a finite sum.
    pub fn exp_nilpotent(&self) -> Result<Self> {
        let mut acc = Self::identity(self.rows);
        let mut p = Self::identity(self.rows);
        for k in 1..=self.rows {
            p = p.mul_ref(self).scale_rat(&BigRational::new(BigInt::one(), BigInt::from(k)));
            if p.is_zero() {
                return Ok(acc);
            }
            acc = acc.add_ref(&p);
        }
        Err(QtkError::Unsupported("exp of a non-nilpotent matrix".into()))
    }

    /// `ln` of a unipotent matrix as a finite sum.
    pub fn log_unipotent(&self) -> Result<Self> {
        let n = self.sub_ref(&Self::identity(self.rows));
        let mut acc = Self::zeros(self.rows, self.rows);
        let mut p = Self::identity(self.rows);
        for k in 1..=self.rows {
            p = p.mul_ref(&n);
            if p.is_zero() {
                return Ok(acc);
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = acc.add_ref(&p.scale_rat(&BigRational::new(BigInt::from(sign), BigInt::from(k))));
        }
        if p.mul_ref(&n).is_zero() {
            return Ok(acc);
        }
        Err(QtkError::Unsupported("log of a non-unipotent matrix".into()))
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(QtkError::NotInvertible("non-square matrix".into()));
        }
        let n = self.rows;
        if self.is_diagonal() {
            let d: Result<Vec<Scalar>> = (0..n).map(|i| self.get(i, i).inv()).collect();
            return d.map(Self::diagonal).map_err(|_| QtkError::NotInvertible("zero on the diagonal".into()));
        }
        // Unipotent shortcut keeps entries polynomial.
        let nil = self.sub_ref(&Self::identity(n));
        if nil.nilpotency_index().is_some() {
            let mut acc = Self::identity(n);
            let mut p = Self::identity(n);
            let neg = nil.neg_ref();
            loop {
                p = p.mul_ref(&neg);
                if p.is_zero() {
                    return Ok(acc);
                }
                acc = acc.add_ref(&p);
            }
        }
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !a.get(r, col).is_zero())
                .min_by_key(|&r| a.get(r, col).numer().len() + a.get(r, col).denom().len())
                .ok_or_else(|| QtkError::NotInvertible(format!("singular at column {col}")))?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p_inv = a.get(col, col).inv()?;
            a.scale_row(col, &p_inv);
            inv.scale_row(col, &p_inv);
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                a.axpy_row(r, col, &f);
                inv.axpy_row(r, col, &f);
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn scale_row(&mut self, i: usize, f: &Scalar) {
        for c in 0..self.cols {
            let idx = i * self.cols + c;
            self.data[idx] = self.data[idx].mul_ref(f);
        }
    }

    /// row_i -= f * row_j
    fn axpy_row(&mut self, i: usize, j: usize, f: &Scalar) {
        for c in 0..self.cols {
            let v = self.get(j, c);
            if v.is_zero() {
                continue;
            }
            let idx = i * self.cols + c;
            self.data[idx] = self.data[idx].sub_ref(&f.mul_ref(v));
        }
    }

    pub fn substitute(&self, b: &Bindings) -> Result<Self> {
        let data: Result<Vec<Scalar>> = self.data.iter().map(|x| x.substitute(b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data: data? })
    }

    pub fn conjugate(&self) -> Self {
        self.map(|x| x.conjugate())
    }

    /// First differing entry as `"[i,j]: lhs vs rhs"`, `None` if equal.
    pub fn diff_witness(&self, o: &Self) -> Option<String> {
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Some(format!("shape {}x{} vs {}x{}", self.rows, self.cols, o.rows, o.cols));
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) != o.get(i, j) {
                    return Some(format!("[{},{}]: {} vs {}", i, j, self.get(i, j), o.get(i, j)));
                }
            }
        }
        None
    }

    /// Permutation matrix sending basis vector `e_(i1,…,ik)` of `dims[0]⊗…` to the
    /// tensor with legs reordered so that new leg `p` is old leg `perm[p]`.
    pub fn leg_permutation(dims: &[usize], perm: &[usize]) -> Self {
        let total: usize = dims.iter().product();
        let new_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
        let mut m = Self::zeros(total, total);
        for old in 0..total {
            let idx = unflatten(old, dims);
            let new_idx: Vec<usize> = perm.iter().map(|&p| idx[p]).collect();
            m.set(flatten(&new_idx, &new_dims), old, Scalar::one());
        }
        m
    }

    /// Flip `τ` on `V ⊗ W`.
    pub fn flip(dv: usize, dw: usize) -> Self {
        Self::leg_permutation(&[dv, dw], &[1, 0])
    }

    /// Embed an operator on legs `slots` (in that order) of `dims[0]⊗…⊗dims[k-1]`.
    pub fn embed(&self, dims: &[usize], slots: &[usize]) -> Self {
        let rest: Vec<usize> = (0..dims.len()).filter(|i| !slots.contains(i)).collect();
        let id_rest = Self::identity(rest.iter().map(|&i| dims[i]).product());
        let big = self.kron(&id_rest);
        // Current leg order is slots ++ rest; move back to natural order.
        let order: Vec<usize> = slots.iter().chain(rest.iter()).copied().collect();
        let cur_dims: Vec<usize> = order.iter().map(|&i| dims[i]).collect();
        let mut perm = vec![0; dims.len()];
        for (pos, &leg) in order.iter().enumerate() {
            perm[leg] = pos;
        }
        let p = Self::leg_permutation(&cur_dims, &perm);
        p.mul_ref(&big).mul_ref(&p.transpose())
    }
}

fn unflatten(mut k: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for i in (0..dims.len()).rev() {
        out[i] = k % dims[i];
        k /= dims[i];
    }
    out
}

fn flatten(idx: &[usize], dims: &[usize]) -> usize {
    idx.iter().zip(dims).fold(0, |acc, (i, d)| acc * d + i)
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .to_rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, r, xi};

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_rows(vec![vec![r(), int(1)], vec![int(2), xi()]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul_ref(&inv).is_identity());
        assert!(inv.mul_ref(&m).is_identity());
    }

    #[test]
    fn exp_log_unipotent() {
        let n = Matrix::unit(3, 2, 0).scale(&xi()).add_ref(&Matrix::unit(3, 1, 0));
        let e = n.exp_nilpotent().unwrap();
        assert_eq!(e.log_unipotent().unwrap(), n);
        assert!(Matrix::identity(2).scale(&int(2)).log_unipotent().is_err());
    }

    #[test]
    fn embedding_matches_kron() {
        let a = Matrix::from_rows(vec![vec![int(1), int(2)], vec![int(3), int(4)]]);
        let b = Matrix::from_rows(vec![vec![int(0), int(5)], vec![int(6), int(7)]]);
        let ab = a.kron(&b);
        assert_eq!(ab.embed(&[2, 2, 2], &[0, 1]), ab.kron(&Matrix::identity(2)));
        assert_eq!(ab.embed(&[2, 2, 2], &[1, 2]), Matrix::identity(2).kron(&ab));
        // legs 0 and 2 = τ₂₃ (a⊗1⊗b) τ₂₃
        let p = Matrix::leg_permutation(&[2, 2, 2], &[0, 2, 1]);
        let expect = p.mul_ref(&ab.kron(&Matrix::identity(2))).mul_ref(&p);
        assert_eq!(ab.embed(&[2, 2, 2], &[0, 2]), expect);
        // reversed slot order is the flipped operator
        let ba = Matrix::flip(2, 2).mul_ref(&ab).mul_ref(&Matrix::flip(2, 2));
        assert_eq!(ab.embed(&[2, 2], &[1, 0]), ba);
        assert_eq!(ba, b.kron(&a));
    }
}
