//! Left-invariant geometry on a Lie algebra with an orthonormal frame.
//!
//! Conventions: `[e_i, e_j] = c_{ij}^k e_k`, and the dual structure
//! equations are `de^k(e_i, e_j) = -c_{ij}^k`. The exterior derivative is
//! the Chevalley–Eilenberg differential, extended from 1-forms as a graded
//! derivation. Connections are stored as `Γ_{ijk} = g(∇_{e_i} e_j, e_k)`.

use crate::error::{Error, Result};
use crate::exterior::{DenseTensor, KForm, MultiIndex};
use crate::scalar::{Residual, Scalar, Tolerance};

/// Residual of the Jacobi identity, max-normed over all index tuples.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiCertificate<S> {
    pub residual: Residual<S>,
}

impl<S: Scalar> JacobiCertificate<S> {
    pub fn holds(&self, tol: Tolerance) -> bool {
        self.residual.passes(tol)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra<S> {
    dim: usize,
    c: DenseTensor<S>,
    differentials: Vec<KForm<S>>,
    name: Option<String>,
}

impl<S: Scalar> LieAlgebra<S> {
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            dim,
            c: DenseTensor::zeros(dim, 3),
            differentials: vec![KForm::zero(dim, 2); dim],
            name: None,
        }
    }

    /// From `c[i, j, k] = c_{ij}^k`. Rejects constants that are not
    /// antisymmetric in `i, j`.
    pub fn from_structure_constants(c: DenseTensor<S>) -> Result<Self> {
        if c.rank() != 3 {
            return Err(Error::Invalid(format!(
                "structure constants must have rank 3, got {}",
                c.rank()
            )));
        }
        let n = c.dim();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let a = c.get(&[i, j, k]);
                    let b = c.get(&[j, i, k]);
                    if *a != -b.clone() {
                        return Err(Error::NotAntisymmetric { i, j, k });
                    }
                }
            }
        }
        let differentials = (0..n)
            .map(|k| {
                let mut f = KForm::zero(n, 2);
                for i in 0..n {
                    for j in (i + 1)..n {
                        let v = c.get(&[i, j, k]);
                        if !v.is_zero() {
                            f.set(MultiIndex::from_mask((1 << i) | (1 << j)), -v.clone());
                        }
                    }
                }
                f
            })
            .collect();
        Ok(LieAlgebra {
            dim: n,
            c,
            differentials,
            name: None,
        })
    }

    /// From the dual structure equations: `des[k] = d e^k`.
    pub fn from_differentials(des: Vec<KForm<S>>) -> Result<Self> {
        let n = des.len();
        for (k, de) in des.iter().enumerate() {
            if de.dim() != n {
                return Err(Error::DimensionMismatch(de.dim(), n));
            }
            if de.degree() != 2 {
                return Err(Error::Invalid(format!(
                    "d e{} must be a 2-form, got degree {}",
                    k + 1,
                    de.degree()
                )));
            }
        }
        let c = DenseTensor::from_fn(n, 3, |x| -des[x[2]].component(&[x[0], x[1]]));
        Ok(LieAlgebra {
            dim: n,
            c,
            differentials: des,
            name: None,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `c_{ij}^k`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &S {
        self.c.get(&[i, j, k])
    }

    pub fn structure_constants(&self) -> &DenseTensor<S> {
        &self.c
    }

    /// `d e^k` as a 2-form.
    pub fn differential(&self, k: usize) -> &KForm<S> {
        &self.differentials[k]
    }

    pub fn is_abelian(&self) -> bool {
        self.c.is_zero()
    }

    /// Max-norm of the Jacobi sum `c_{ij}^m c_{mk}^l + c_{jk}^m c_{mi}^l + c_{ki}^m c_{mj}^l`.
    pub fn validate(&self) -> JacobiCertificate<S> {
        let n = self.dim;
        let mut residual = Residual::zero();
        let zero = S::zero();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    for l in 0..n {
                        let mut acc = S::zero();
                        for m in 0..n {
                            acc.add_prod(self.constant(i, j, m), self.constant(m, k, l));
                            acc.add_prod(self.constant(j, k, m), self.constant(m, i, l));
                            acc.add_prod(self.constant(k, i, m), self.constant(m, j, l));
                        }
                        residual.observe(&acc, &zero);
                    }
                }
            }
        }
        JacobiCertificate { residual }
    }

    /// Returns `self` if the Jacobi identity holds within `tol`.
    pub fn validated(self, tol: Tolerance) -> Result<Self> {
        let cert = self.validate();
        if cert.holds(tol) {
            Ok(self)
        } else {
            Err(Error::Jacobi(cert.residual.render()))
        }
    }

    /// `tr ad(e_i) = Σ_j c_{ij}^j`.
    pub fn ad_trace(&self, i: usize) -> S {
        let mut acc = S::zero();
        for j in 0..self.dim {
            acc.add_assign_ref(self.constant(i, j, j));
        }
        acc
    }

    pub fn is_unimodular(&self) -> bool {
        (0..self.dim).all(|i| self.ad_trace(i).is_zero())
    }

    /// Chevalley–Eilenberg differential. On 1-forms it reproduces the
    /// structure equations; `d ∘ d = 0` when the Jacobi identity holds.
    pub fn ce_d(&self, a: &KForm<S>) -> KForm<S> {
        assert_eq!(a.dim(), self.dim, "form dimension does not match algebra");
        let n = self.dim;
        let k = a.degree();
        if k >= n {
            return KForm::zero(n, n);
        }
        let mut acc = vec![S::zero(); crate::exterior::binomial(n, k + 1)];
        for (mi, coef) in a.terms() {
            for (s, idx) in mi.iter().enumerate() {
                let below = MultiIndex::from_mask(mi.mask() & ((1u16 << idx) - 1) as u8);
                let above = MultiIndex::from_mask(mi.mask() & !(((1u16 << (idx + 1)) - 1) as u8));
                let rest = below.union(above);
                for (pair, dc) in self.differentials[idx].terms() {
                    if !pair.is_disjoint(rest) {
                        continue;
                    }
                    let mut sign = crate::exterior::wedge_sign(below, pair)
                        * crate::exterior::wedge_sign(below.union(pair), above);
                    if s % 2 == 1 {
                        sign = -sign;
                    }
                    let p = crate::exterior::position(n, rest.union(pair));
                    let prod = coef.mul_ref(dc);
                    if sign > 0 {
                        acc[p].add_assign_ref(&prod);
                    } else {
                        acc[p] = acc[p].sub_ref(&prod);
                    }
                }
            }
        }
        KForm::from_coefficients(n, k + 1, acc)
    }

    /// Codifferential `δ = (-1)^{np+n+1} * d *` on `p`-forms. In dimension 7
    /// this is `(-1)^p * d *`; in dimension 8 it is `- * d *`.
    pub fn codifferential(&self, a: &KForm<S>) -> KForm<S> {
        let sign = codifferential_sign(self.dim, a.degree());
        let r = self.ce_d(&a.hodge()).hodge();
        if sign > 0 {
            r
        } else {
            r.neg()
        }
    }

    /// Koszul formula `Γᵍ_{ijk} = ½(c_{ij}^k − c_{jk}^i + c_{ki}^j)`.
    pub fn levi_civita(&self) -> ConnectionCoeffs<S> {
        let half = S::from_ratio(1, 2);
        let g = DenseTensor::from_fn(self.dim, 3, |x| {
            let (i, j, k) = (x[0], x[1], x[2]);
            let v = self
                .constant(i, j, k)
                .sub_ref(self.constant(j, k, i))
                .add_ref(self.constant(k, i, j));
            if v.is_zero() {
                v
            } else {
                v.mul_ref(&half)
            }
        });
        ConnectionCoeffs::new(g)
    }

    /// `ℝ ⊕ self` with the new closed basis vector placed first.
    pub fn prepend_abelian(&self) -> Self {
        let n = self.dim + 1;
        let des = std::iter::once(KForm::zero(n, 2))
            .chain(self.differentials.iter().map(|de| {
                KForm::from_terms(
                    n,
                    2,
                    de.terms()
                        .map(|(mi, c)| (MultiIndex::from_mask(mi.mask() << 1), c.clone())),
                )
            }))
            .collect();
        let mut out = LieAlgebra::from_differentials(des).expect("shifted equations are valid");
        out.name = self.name.as_ref().map(|s| format!("R+{s}"));
        out
    }

    /// Residual of `(dα, β) = (α, δβ)` for a `p`-form `α` and `(p+1)`-form `β`.
    pub fn adjointness_residual(&self, alpha: &KForm<S>, beta: &KForm<S>) -> Residual<S> {
        let lhs = self.ce_d(alpha).inner(beta);
        let rhs = alpha.inner(&self.codifferential(beta));
        let mut r = Residual::zero();
        r.observe(&lhs, &rhs);
        r
    }
}

/// `(-1)^{np+n+1}`.
pub fn codifferential_sign(n: usize, p: usize) -> i64 {
    if (n * p + n + 1).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Coefficients `Γ_{ijk} = g(∇_{e_i} e_j, e_k)` of a left-invariant connection.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectionCoeffs<S> {
    gamma: DenseTensor<S>,
    rows: Vec<Vec<(usize, S)>>,
}

impl<S: Scalar> ConnectionCoeffs<S> {
    pub fn new(gamma: DenseTensor<S>) -> Self {
        assert_eq!(gamma.rank(), 3, "connection coefficients have rank 3");
        let n = gamma.dim();
        let mut rows = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = gamma.get(&[i, j, k]);
                    if !v.is_zero() {
                        rows[i * n + j].push((k, v.clone()));
                    }
                }
            }
        }
        ConnectionCoeffs { gamma, rows }
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(DenseTensor::zeros(dim, 3))
    }

    pub fn dim(&self) -> usize {
        self.gamma.dim()
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &S {
        self.gamma.get(&[i, j, k])
    }

    pub fn tensor(&self) -> &DenseTensor<S> {
        &self.gamma
    }

    /// Non-zero `(k, Γ_{ijk})` for fixed `i, j`.
    pub fn row(&self, i: usize, j: usize) -> &[(usize, S)] {
        &self.rows[i * self.dim() + j]
    }

    /// Residual of `Γ_{ijk} = -Γ_{ikj}`.
    pub fn metric_residual(&self) -> Residual<S> {
        let n = self.dim();
        let mut r = Residual::zero();
        for i in 0..n {
            for j in 0..n {
                for k in j..n {
                    r.observe(self.get(i, j, k), &(-self.get(i, k, j).clone()));
                }
            }
        }
        r
    }

    /// `(∇_i t)_{j₁…j_r} = -Σ_s Γ_{i j_s m} t_{j₁…m…j_r}` with the direction
    /// as the new first slot.
    pub fn covariant_derivative(&self, t: &DenseTensor<S>) -> DenseTensor<S> {
        let n = self.dim();
        assert_eq!(t.dim(), n, "tensor dimension does not match connection");
        let mut tail = vec![0usize; t.rank()];
        DenseTensor::from_fn(n, t.rank() + 1, |idx| {
            tail.copy_from_slice(&idx[1..]);
            self.derivative_entry(t, idx[0], &mut tail)
        })
    }

    /// One entry `(∇_i t)_{idx}`; `idx` is restored before returning.
    pub fn derivative_entry(&self, t: &DenseTensor<S>, i: usize, idx: &mut [usize]) -> S {
        let mut acc = S::zero();
        for s in 0..idx.len() {
            let js = idx[s];
            for (m, g) in self.row(i, js) {
                idx[s] = *m;
                acc.add_prod(g, t.get(idx));
            }
            idx[s] = js;
        }
        -acc
    }

    /// Covariant derivative of a form, as a dense tensor.
    pub fn covariant_derivative_form(&self, a: &KForm<S>) -> DenseTensor<S> {
        self.covariant_derivative(&a.to_dense())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.gamma.add(&other.gamma))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Rational;

    fn su2_pair() -> LieAlgebra<Q> {
        let f = |t: &[(i64, &[usize])]| KForm::<Q>::from_labels(7, 2, t);
        LieAlgebra::from_differentials(vec![
            f(&[(1, &[2, 3])]),
            f(&[(-1, &[1, 3])]),
            f(&[(1, &[1, 2])]),
            f(&[(1, &[5, 6])]),
            f(&[(-1, &[4, 6])]),
            f(&[(1, &[4, 5])]),
            KForm::zero(7, 2),
        ])
        .unwrap()
    }

    #[test]
    fn structure_constants_from_equations() {
        let g = su2_pair();
        assert_eq!(g.constant(1, 2, 0), &Q::integer(-1));
        assert_eq!(g.constant(2, 1, 0), &Q::integer(1));
        assert!(g.validate().holds(Tolerance::Exact));
        assert!(g.is_unimodular());
    }

    #[test]
    fn ce_d_reproduces_structure_equations() {
        let g = su2_pair();
        for k in 0..7 {
            assert_eq!(&g.ce_d(&KForm::unit(7, k)), g.differential(k));
        }
    }

    #[test]
    fn abelian_is_flat_everywhere() {
        let g = LieAlgebra::<Q>::abelian(5);
        assert!(g.ce_d(&KForm::volume(5).hodge().hodge()).is_zero());
        assert!(g.levi_civita().tensor().is_zero());
    }

    #[test]
    fn antisymmetry_violation_is_rejected() {
        let mut c = DenseTensor::<Q>::zeros(3, 3);
        c.set(&[0, 1, 2], Q::integer(1));
        assert!(matches!(
            LieAlgebra::from_structure_constants(c),
            Err(Error::NotAntisymmetric { .. })
        ));
    }

    #[test]
    fn codifferential_sign_rule() {
        assert_eq!(codifferential_sign(7, 1), -1);
        assert_eq!(codifferential_sign(7, 2), 1);
        assert_eq!(codifferential_sign(8, 3), -1);
        assert_eq!(codifferential_sign(8, 4), -1);
    }

    #[test]
    fn prepend_shifts_indices() {
        let g = su2_pair().prepend_abelian();
        assert_eq!(g.dim(), 8);
        assert!(g.differential(0).is_zero());
        assert_eq!(g.differential(1).render(0), "e23");
        assert!(g.validate().holds(Tolerance::Exact));
    }
}
