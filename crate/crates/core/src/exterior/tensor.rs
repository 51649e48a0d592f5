//! Dense tensors without imposed symmetry.

use crate::exterior::form::KForm;
use crate::exterior::multi_index::{basis, sort_sign};
use crate::scalar::{Residual, Scalar};

/// Dense rank-`r` array over `ℝⁿ`, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseTensor<S> {
    dim: usize,
    rank: usize,
    data: Vec<S>,
}

impl<S: Scalar> DenseTensor<S> {
    pub fn zeros(dim: usize, rank: usize) -> Self {
        DenseTensor {
            dim,
            rank,
            data: vec![S::zero(); dim.pow(rank as u32)],
        }
    }

    /// Fills every entry from `f(index)`.
    pub fn from_fn(dim: usize, rank: usize, mut f: impl FnMut(&[usize]) -> S) -> Self {
        let len = dim.pow(rank as u32);
        let mut data = Vec::with_capacity(len);
        let mut idx = vec![0usize; rank];
        for _ in 0..len {
            data.push(f(&idx));
            increment(&mut idx, dim);
        }
        DenseTensor { dim, rank, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank);
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    pub fn get(&self, idx: &[usize]) -> &S {
        &self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: S) {
        let o = self.offset(idx);
        self.data[o] = value;
    }

    pub fn get_mut(&mut self, idx: &[usize]) -> &mut S {
        let o = self.offset(idx);
        &mut self.data[o]
    }

    /// Iterates `(index, value)` over all entries in row-major order.
    pub fn indexed(&self) -> impl Iterator<Item = (Vec<usize>, &S)> {
        let dim = self.dim;
        let rank = self.rank;
        self.data.iter().enumerate().map(move |(o, v)| {
            let mut idx = vec![0; rank];
            let mut rem = o;
            for slot in (0..rank).rev() {
                idx[slot] = rem % dim;
                rem /= dim;
            }
            (idx, v)
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn max_abs(&self) -> S {
        self.data
            .iter()
            .fold(S::zero(), |acc, v| acc.max_mag(v.abs()))
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
        DenseTensor {
            dim: self.dim,
            rank: self.rank,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|v| v.mul_ref(s))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_shape(other);
        DenseTensor {
            dim: self.dim,
            rank: self.rank,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.add_ref(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_shape(other);
        DenseTensor {
            dim: self.dim,
            rank: self.rank,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.sub_ref(b))
                .collect(),
        }
    }

    /// `out[i₀…] = self[i_{perm[0]}…]`: slot `s` of the result reads slot
    /// `perm[s]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.rank);
        let mut src = vec![0usize; self.rank];
        DenseTensor::from_fn(self.dim, self.rank, |idx| {
            for (s, &p) in perm.iter().enumerate() {
                src[p] = idx[s];
            }
            self.get(&src).clone()
        })
    }

    /// Transpose of a rank-2 tensor.
    pub fn transpose(&self) -> Self {
        assert_eq!(self.rank, 2);
        self.permuted(&[1, 0])
    }

    /// Full antisymmetrization `Alt(t)` with the `1/r!` normalization,
    /// returned as a form. `alternate(a.to_dense()) == a` for every form `a`.
    pub fn alternate(&self) -> KForm<S> {
        let n = self.dim;
        let r = self.rank;
        let mut out = KForm::zero(n, r);
        if r > n {
            return out;
        }
        let perms = permutations(r);
        let norm = S::from_ratio(1, factorial(r) as i64);
        let mut idx = vec![0usize; r];
        for mi in basis(n, r) {
            let sorted = mi.to_vec();
            let mut acc = S::zero();
            for (perm, sign) in &perms {
                for (s, &p) in perm.iter().enumerate() {
                    idx[s] = sorted[p];
                }
                let v = self.get(&idx);
                if !v.is_zero() {
                    if *sign > 0 {
                        acc.add_assign_ref(v);
                    } else {
                        acc = acc.sub_ref(v);
                    }
                }
            }
            out.set(*mi, acc.mul_ref(&norm));
        }
        out
    }

    /// Max-norm residual of `self - other`.
    pub fn residual(&self, other: &Self) -> Residual<S> {
        self.assert_same_shape(other);
        let mut r = Residual::zero();
        for (a, b) in self.data.iter().zip(&other.data) {
            r.observe(a, b);
        }
        r
    }

    /// Max-norm of `self`, as a residual against zero.
    pub fn norm_residual(&self) -> Residual<S> {
        let mut r = Residual::zero();
        let z = S::zero();
        for a in &self.data {
            r.observe(a, &z);
        }
        r
    }

    /// Full contraction `Σ self[I] other[I]`.
    pub fn dot(&self, other: &Self) -> S {
        self.assert_same_shape(other);
        let mut acc = S::zero();
        for (a, b) in self.data.iter().zip(&other.data) {
            acc.add_prod(a, b);
        }
        acc
    }

    /// Trace of a rank-2 tensor.
    pub fn trace(&self) -> S {
        assert_eq!(self.rank, 2);
        let mut acc = S::zero();
        for i in 0..self.dim {
            acc.add_assign_ref(self.get(&[i, i]));
        }
        acc
    }

    /// Whether every index permutation acts by its sign.
    pub fn is_antisymmetric(&self) -> bool {
        self.indexed().all(|(idx, v)| match sort_sign(&idx) {
            None => v.is_zero(),
            Some((sign, _)) => {
                let mut sorted = idx.clone();
                sorted.sort_unstable();
                let base = self.get(&sorted);
                if sign > 0 {
                    v == base
                } else {
                    *v == -base.clone()
                }
            }
        })
    }

    fn assert_same_shape(&self, other: &Self) {
        assert!(
            self.dim == other.dim && self.rank == other.rank,
            "tensor shape mismatch: ({}, {}) vs ({}, {})",
            self.dim,
            self.rank,
            other.dim,
            other.rank
        );
    }
}

fn increment(idx: &mut [usize], dim: usize) {
    for slot in (0..idx.len()).rev() {
        idx[slot] += 1;
        if idx[slot] < dim {
            return;
        }
        idx[slot] = 0;
    }
}

pub(crate) fn factorial(r: usize) -> usize {
    (1..=r).product()
}

/// All permutations of `0..r` with their signs.
pub(crate) fn permutations(r: usize) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::with_capacity(factorial(r));
    let mut current: Vec<usize> = (0..r).collect();
    permute(&mut current, 0, &mut out);
    out.into_iter()
        .map(|p| {
            let sign = sort_sign(&p).map(|(s, _)| s).unwrap_or(0);
            (p, sign)
        })
        .collect()
}

fn permute(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, out);
        v.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64) -> Rational {
        Rational::integer(n)
    }

    #[test]
    fn row_major_layout() {
        let t = DenseTensor::from_fn(3, 2, |i| q((i[0] * 10 + i[1]) as i64));
        assert_eq!(t.get(&[2, 1]), &q(21));
        assert_eq!(t.transpose().get(&[2, 1]), &q(12));
        let idx: Vec<Vec<usize>> = t.indexed().map(|(i, _)| i).take(4).collect();
        assert_eq!(idx, vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 0]]);
    }

    #[test]
    fn permuted_reads_source_slots() {
        let t = DenseTensor::from_fn(3, 3, |i| q((i[0] * 100 + i[1] * 10 + i[2]) as i64));
        let p = t.permuted(&[2, 0, 1]);
        assert_eq!(p.get(&[0, 1, 2]), &q(120));
    }

    #[test]
    fn permutation_count_and_signs() {
        let ps = permutations(3);
        assert_eq!(ps.len(), 6);
        assert_eq!(ps.iter().map(|(_, s)| s).sum::<i64>(), 0);
    }
}
