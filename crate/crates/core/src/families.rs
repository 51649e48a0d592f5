//! Parametrized families of Lie algebras on which Jacobi holds for every
//! parameter value, so any linear combination of generators is a Lie algebra.

use crate::exterior::DenseTensor;
use crate::lie::LieAlgebra;
use crate::linalg::nullspace;
use crate::scalar::{Scalar, Tolerance};

/// A linear family `c(t) = Σ t_a C_a` of structure constants.
#[derive(Clone, Debug)]
pub struct Family<S> {
    dim: usize,
    generators: Vec<DenseTensor<S>>,
}

fn bracket_generator<S: Scalar>(n: usize, i: usize, j: usize, k: usize) -> DenseTensor<S> {
    let mut c = DenseTensor::zeros(n, 3);
    c.set(&[i, j, k], S::one());
    c.set(&[j, i, k], -S::one());
    c
}

impl<S: Scalar> Family<S> {
    /// Brackets `[e_i, e_j] ∈ span{e_split, …}` for `i < j < split`.
    pub fn two_step_nilpotent(n: usize, split: usize) -> Self {
        let mut generators = Vec::new();
        for i in 0..split {
            for j in (i + 1)..split {
                for k in split..n {
                    generators.push(bracket_generator(n, i, j, k));
                }
            }
        }
        Family { dim: n, generators }
    }

    /// `ℝ e_1 ⋉ ℝ^{n−1}` with `[e_1, e_j] = Σ_k A_{kj} e_k`.
    pub fn almost_abelian(n: usize) -> Self {
        let mut generators = Vec::new();
        for j in 1..n {
            for k in 1..n {
                generators.push(bracket_generator(n, 0, j, k));
            }
        }
        Family { dim: n, generators }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[DenseTensor<S>] {
        &self.generators
    }

    /// `Σ t_a C_a`.
    pub fn combine(&self, t: &[S]) -> DenseTensor<S> {
        assert_eq!(t.len(), self.generators.len(), "parameter count");
        let mut c = DenseTensor::zeros(self.dim, 3);
        for (ta, g) in t.iter().zip(&self.generators) {
            if !ta.is_zero() {
                c = c.add(&g.scale(ta));
            }
        }
        c
    }

    pub fn algebra(&self, t: &[S]) -> LieAlgebra<S> {
        LieAlgebra::from_structure_constants(self.combine(t))
            .expect("family generators are antisymmetric")
    }

    /// The subfamily on which the linear map `f` vanishes, given as a basis of
    /// parameter vectors. `f` must be linear in the structure constants.
    pub fn kernel_of<F>(&self, f: F, tol: Tolerance) -> Family<S>
    where
        F: Fn(&LieAlgebra<S>) -> Vec<S>,
    {
        let images: Vec<Vec<S>> = self
            .generators
            .iter()
            .map(|g| f(&LieAlgebra::from_structure_constants(g.clone()).unwrap()))
            .collect();
        let m = images.first().map_or(0, |v| v.len());
        let rows = (0..m)
            .map(|r| images.iter().map(|col| col[r].clone()).collect())
            .collect();
        let generators = nullspace(rows, self.generators.len(), tol)
            .into_iter()
            .map(|v| self.combine(&v))
            .collect();
        Family {
            dim: self.dim,
            generators,
        }
    }
}

/// `h_{2k+1} ⊕ ℝ^{n−2k−1}` with `[e_{2a−1}, e_{2a}] = e_{2k+1}`, `a = 1..k`.
pub fn heisenberg<S: Scalar>(n: usize, k: usize) -> LieAlgebra<S> {
    assert!(2 * k < n, "Heisenberg part does not fit");
    let mut c = DenseTensor::zeros(n, 3);
    for a in 0..k {
        c.set(&[2 * a, 2 * a + 1, 2 * k], S::one());
        c.set(&[2 * a + 1, 2 * a, 2 * k], -S::one());
    }
    LieAlgebra::from_structure_constants(c).unwrap()
}
