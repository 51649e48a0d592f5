//! Alternating forms on `ℝⁿ` with an oriented orthonormal frame.

use std::fmt;

use crate::error::{Error, Result};
use crate::exterior::multi_index::{
    basis, binomial, position, sort_sign, wedge_sign, MultiIndex, MAX_DIM,
};
use crate::exterior::tensor::{factorial, DenseTensor};
use crate::scalar::{Residual, Scalar};

/// A degree-`k` form on `ℝⁿ`.
///
/// One coefficient is stored per strictly increasing multi-index, in
/// lexicographic order; every other component is derived by
/// [`KForm::component`].
#[derive(Clone, Debug, PartialEq)]
pub struct KForm<S> {
    dim: usize,
    degree: usize,
    coeffs: Vec<S>,
}

impl<S: Scalar> KForm<S> {
    /// The zero form. Panics if `dim > 8` or `degree > dim`.
    pub fn zero(dim: usize, degree: usize) -> Self {
        Self::try_zero(dim, degree).expect("invalid form shape")
    }

    pub fn try_zero(dim: usize, degree: usize) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::UnsupportedDimension(dim));
        }
        if degree > dim {
            return Err(Error::InvalidDegree { dim, degree });
        }
        Ok(KForm {
            dim,
            degree,
            coeffs: vec![S::zero(); binomial(dim, degree)],
        })
    }

    /// The constant 0-form `s`.
    pub fn scalar(dim: usize, s: S) -> Self {
        let mut f = Self::zero(dim, 0);
        f.coeffs[0] = s;
        f
    }

    /// `e_I` with unit coefficient.
    pub fn basis(dim: usize, mi: MultiIndex) -> Self {
        let mut f = Self::zero(dim, mi.len());
        f.set(mi, S::one());
        f
    }

    /// `e_i` for a 0-based index.
    pub fn unit(dim: usize, i: usize) -> Self {
        Self::basis(dim, MultiIndex::single(i))
    }

    /// The volume form `e_1 ∧ … ∧ e_n`.
    pub fn volume(dim: usize) -> Self {
        Self::basis(dim, MultiIndex::full(dim))
    }

    /// A 1-form with the given components.
    pub fn from_vector(v: &[S]) -> Self {
        let mut f = Self::zero(v.len(), 1);
        f.coeffs.clone_from_slice(v);
        f
    }

    /// Sum of monomials `c · e_I`; repeated multi-indices accumulate.
    pub fn from_terms(
        dim: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (MultiIndex, S)>,
    ) -> Self {
        let mut f = Self::zero(dim, degree);
        for (mi, c) in terms {
            assert_eq!(mi.len(), degree, "monomial degree mismatch");
            let p = position(dim, mi);
            f.coeffs[p].add_assign_ref(&c);
        }
        f
    }

    /// Monomials given by 1-based labels, e.g. `(1, &[1, 2, 7])` for `e127`.
    pub fn from_labels(dim: usize, degree: usize, terms: &[(i64, &[usize])]) -> Self {
        Self::from_terms(
            dim,
            degree,
            terms.iter().map(|(c, labels)| {
                (
                    MultiIndex::from_one_based(labels).expect("valid monomial"),
                    S::from_int(*c),
                )
            }),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Stored coefficient on an increasing multi-index.
    pub fn get(&self, mi: MultiIndex) -> &S {
        debug_assert_eq!(mi.len(), self.degree);
        &self.coeffs[position(self.dim, mi)]
    }

    pub fn set(&mut self, mi: MultiIndex, value: S) {
        assert_eq!(mi.len(), self.degree, "monomial degree mismatch");
        assert!(mi.max().is_none_or(|m| m < self.dim), "index out of range");
        let p = position(self.dim, mi);
        self.coeffs[p] = value;
    }

    /// Component with arbitrary index order (0-based): the stored value times
    /// the sign of the sorting permutation, or zero on a repeated index.
    pub fn component(&self, indices: &[usize]) -> S {
        debug_assert_eq!(indices.len(), self.degree);
        match sort_sign(indices) {
            None => S::zero(),
            Some((sign, mi)) => {
                let v = self.get(mi);
                if sign > 0 {
                    v.clone()
                } else {
                    -v.clone()
                }
            }
        }
    }

    /// Components of a 1-form.
    pub fn as_vector(&self) -> Vec<S> {
        assert_eq!(self.degree, 1);
        self.coeffs.clone()
    }

    /// Value of a 0-form.
    pub fn as_scalar(&self) -> S {
        assert_eq!(self.degree, 0);
        self.coeffs[0].clone()
    }

    /// Non-zero monomials in lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (MultiIndex, &S)> {
        basis(self.dim, self.degree)
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(mi, c)| (*mi, c))
    }

    /// All coefficients in basis order (including zeros).
    pub fn coefficients(&self) -> &[S] {
        &self.coeffs
    }

    pub fn from_coefficients(dim: usize, degree: usize, coeffs: Vec<S>) -> Self {
        assert_eq!(coeffs.len(), binomial(dim, degree), "coefficient count");
        KForm {
            dim,
            degree,
            coeffs,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, s: &S) -> Self {
        KForm {
            dim: self.dim,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c.mul_ref(s)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        KForm {
            dim: self.dim,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("form shape mismatch")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(KForm {
            dim: self.dim,
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add_ref(b))
                .collect(),
        })
    }

    /// Exterior product. Panics on dimension mismatch; see [`KForm::checked_wedge`].
    pub fn wedge(&self, other: &Self) -> Self {
        self.checked_wedge(other)
            .expect("wedge of forms of different dimension")
    }

    pub fn checked_wedge(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let degree = self.degree + other.degree;
        if degree > self.dim {
            // Identically zero; represented in top degree so the shape stays valid.
            return Ok(KForm::zero(self.dim, self.dim));
        }
        let mut out: KForm<S> = KForm::zero(self.dim, degree);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                let sign = wedge_sign(a, b);
                if sign == 0 {
                    continue;
                }
                let p = position(self.dim, a.union(b));
                let prod = ca.mul_ref(cb);
                if sign > 0 {
                    out.coeffs[p].add_assign_ref(&prod);
                } else {
                    out.coeffs[p] = out.coeffs[p].sub_ref(&prod);
                }
            }
        }
        Ok(out)
    }

    /// Hodge star for the identity metric and orientation `e_1 ∧ … ∧ e_n`:
    /// `*e_I = sign(I, Iᶜ) e_{Iᶜ}`.
    pub fn hodge(&self) -> Self {
        let mut out = KForm::zero(self.dim, self.dim - self.degree);
        for (mi, c) in self.terms() {
            let comp = mi.complement(self.dim);
            let sign = wedge_sign(mi, comp);
            let p = position(self.dim, comp);
            out.coeffs[p] = if sign > 0 { c.clone() } else { -c.clone() };
        }
        out
    }

    /// Interior product `v ⌟ self` for a 1-form `v`:
    /// `(e_a ⌟ β)(X, …) = β(e_a, X, …)`. Panics on bad shapes; see
    /// [`KForm::checked_interior`].
    pub fn interior(&self, v: &Self) -> Self {
        self.checked_interior(v).expect("invalid interior product")
    }

    pub fn checked_interior(&self, v: &Self) -> Result<Self> {
        if v.degree != 1 {
            return Err(Error::DegreeMismatch(v.degree, 1));
        }
        if v.dim != self.dim {
            return Err(Error::DimensionMismatch(v.dim, self.dim));
        }
        if self.degree == 0 {
            return Err(Error::InvalidDegree {
                dim: self.dim,
                degree: 0,
            });
        }
        let mut out: KForm<S> = KForm::zero(self.dim, self.degree - 1);
        for (mi, c) in self.terms() {
            for a in mi.iter() {
                let va = &v.coeffs[a];
                if va.is_zero() {
                    continue;
                }
                let prod = va.mul_ref(c);
                let p = position(self.dim, mi.without(a));
                if mi.rank_of(a) % 2 == 0 {
                    out.coeffs[p].add_assign_ref(&prod);
                } else {
                    out.coeffs[p] = out.coeffs[p].sub_ref(&prod);
                }
            }
        }
        Ok(out)
    }

    /// Interior product with the basis vector `e_a`.
    pub fn interior_basis(&self, a: usize) -> Self {
        self.interior(&KForm::unit(self.dim, a))
    }

    /// Interior product of a 2-form into a form:
    /// `(α ⌟ β)_{K} = Σ_{i<j} α_{ij} β_{ijK}`.
    pub fn interior2(&self, alpha: &Self) -> Self {
        assert_eq!(alpha.degree, 2, "interior2 expects a 2-form");
        assert!(self.degree >= 2, "interior2 needs degree at least 2");
        let mut out = KForm::zero(self.dim, self.degree - 2);
        for (pair, a) in alpha.terms() {
            let v: Vec<usize> = pair.to_vec();
            let inner = self.interior_basis(v[0]).interior_basis(v[1]);
            out = out.add(&inner.scale(a));
        }
        out
    }

    /// Form inner product `Σ_{I increasing} a_I b_I`; `a ∧ *b = (a, b) vol`.
    pub fn inner(&self, other: &Self) -> S {
        self.checked_inner(other)
            .expect("inner product of mismatched forms")
    }

    pub fn checked_inner(&self, other: &Self) -> Result<S> {
        self.same_shape(other)?;
        let mut acc = S::zero();
        for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
            acc.add_prod(a, b);
        }
        Ok(acc)
    }

    /// Tensor norm `Σ_{all i…} a_{i…}²`, i.e. `k! (a, a)`.
    pub fn tensor_norm_sq(&self) -> S {
        self.inner(self).scale_int(factorial(self.degree) as i64)
    }

    /// The full antisymmetric component array.
    pub fn to_dense(&self) -> DenseTensor<S> {
        DenseTensor::from_fn(self.dim, self.degree, |idx| self.component(idx))
    }

    /// Max-norm residual of `self - other` over stored coefficients.
    pub fn residual(&self, other: &Self) -> Residual<S> {
        assert!(self.same_shape(other).is_ok(), "form shape mismatch");
        let mut r = Residual::zero();
        for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
            r.observe(a, b);
        }
        r
    }

    /// Max-norm of the coefficients, as a residual against zero.
    pub fn norm_residual(&self) -> Residual<S> {
        self.residual(&KForm::zero(self.dim, self.degree))
    }

    /// Human-readable sum of monomials with labels shifted by `base`.
    pub fn render(&self, base: usize) -> String {
        let mut s = String::new();
        for (mi, c) in self.terms() {
            let label = mi.label(base);
            let (neg, mag) = if c.to_f64() < 0.0 {
                (true, -c.clone())
            } else {
                (false, c.clone())
            };
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if mag == S::one() {
                s.push_str(&label);
            } else if mi.is_empty() {
                s.push_str(&mag.render());
            } else {
                s.push_str(&format!("{}*{}", mag.render(), label));
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Display for KForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(1))
    }
}
