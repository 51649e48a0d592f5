#![allow(dead_code)]

use holonomy_core::{DenseTensor, KForm, LieAlgebra, MultiIndex, Rational};

pub type Q = Rational;

pub fn q(n: i64) -> Q {
    Q::integer(n)
}

/// su(2) ⊕ su(2) ⊕ ℝ in the frame `de1 = e23, de2 = e31, de3 = e12`,
/// `de4 = e56, de5 = e64, de6 = e45`, `de7 = 0`.
pub fn su2_pair() -> LieAlgebra<Q> {
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

/// Two-step nilpotent algebra: brackets of the first `split` vectors land in
/// the span of the rest. Jacobi holds for any coefficients.
pub fn nilpotent(n: usize, split: usize, coeffs: &[i64]) -> LieAlgebra<Q> {
    let mut c = DenseTensor::zeros(n, 3);
    let mut it = coeffs.iter().cycle();
    for i in 0..split {
        for j in (i + 1)..split {
            for k in split..n {
                let v = q(*it.next().unwrap());
                c.set(&[i, j, k], v.clone());
                c.set(&[j, i, k], -v);
            }
        }
    }
    LieAlgebra::from_structure_constants(c).unwrap()
}

/// `e1` acting diagonally on an abelian ideal; not unimodular unless the
/// weights sum to zero.
pub fn diagonal_solvable(weights: &[i64]) -> LieAlgebra<Q> {
    let n = weights.len() + 1;
    let mut c = DenseTensor::zeros(n, 3);
    for (j, w) in weights.iter().enumerate() {
        c.set(&[0, j + 1, j + 1], q(*w));
        c.set(&[j + 1, 0, j + 1], q(-*w));
    }
    LieAlgebra::from_structure_constants(c).unwrap()
}

/// A 3-form whose coefficients on the increasing basis cycle through `coeffs`.
pub fn three_form(n: usize, coeffs: &[i64]) -> KForm<Q> {
    let basis = holonomy_core::exterior::basis(n, 3);
    KForm::from_terms(
        n,
        3,
        basis
            .iter()
            .zip(coeffs.iter().cycle())
            .map(|(mi, c): (&MultiIndex, &i64)| (*mi, q(*c))),
    )
}

pub fn form(n: usize, k: usize, coeffs: &[i64]) -> KForm<Q> {
    let basis = holonomy_core::exterior::basis(n, k);
    KForm::from_terms(
        n,
        k,
        basis
            .iter()
            .zip(coeffs.iter().cycle())
            .map(|(mi, c)| (*mi, q(*c))),
    )
}

pub fn to_f64(t: &DenseTensor<Q>) -> Vec<f64> {
    use holonomy_core::Scalar;
    t.data().iter().map(|x| x.to_f64()).collect()
}
