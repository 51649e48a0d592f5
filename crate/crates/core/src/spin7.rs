//! Spin(7) structures on 8-dimensional Lie algebras.
//!
//! Basis vectors are labelled `e_0 … e_7` and stored at the same internal
//! index. The structure is the canonical self-dual 4-form `Ψ`; its torsion
//! connection exists unconditionally.

use crate::error::{Error, Result};
use crate::exterior::{basis, DenseTensor, KForm};
use crate::g2::G2Structure;
use crate::lie::LieAlgebra;
use crate::report::{Check, Status};
use crate::scalar::{Residual, Scalar, Tolerance};
use crate::torsion::{residual_over, CurvatureTensor, TorsionGeometry};

const PSI_TERMS: [(i64, [usize; 4]); 14] = [
    (-1, [0, 1, 2, 7]),
    (1, [0, 2, 3, 6]),
    (-1, [0, 3, 4, 7]),
    (-1, [0, 5, 6, 7]),
    (1, [0, 1, 4, 6]),
    (1, [0, 2, 4, 5]),
    (-1, [0, 1, 3, 5]),
    (-1, [3, 4, 5, 6]),
    (-1, [1, 4, 5, 7]),
    (-1, [1, 2, 5, 6]),
    (-1, [1, 2, 3, 4]),
    (-1, [2, 3, 5, 7]),
    (-1, [1, 3, 6, 7]),
    (1, [2, 4, 6, 7]),
];

/// The canonical Spin(7) 4-form on `ℝ⁸`.
pub fn canonical_psi<S: Scalar>() -> KForm<S> {
    let shifted: Vec<(i64, [usize; 4])> = PSI_TERMS
        .iter()
        .map(|(c, idx)| (*c, idx.map(|i| i + 1)))
        .collect();
    let terms: Vec<(i64, &[usize])> = shifted.iter().map(|(c, idx)| (*c, &idx[..])).collect();
    KForm::from_labels(8, 4, &terms)
}

/// `(α₇, α₂₁)` with `α_{ij}Ψ_{ijkl} = −6α_{kl}` and `2α_{kl}` respectively.
pub fn project2<S: Scalar>(alpha: &KForm<S>) -> (KForm<S>, KForm<S>) {
    assert_eq!(
        (alpha.dim(), alpha.degree()),
        (8, 2),
        "expects a 2-form on ℝ⁸"
    );
    // α ⌟ Ψ = ½α_{ij}Ψ_{ijkl} has eigenvalues −3 and 1.
    let l = canonical_psi::<S>().interior2(alpha);
    let quarter = S::from_ratio(1, 4);
    let a7 = alpha.sub(&l).scale(&quarter);
    let a21 = alpha.sub(&a7);
    (a7, a21)
}

/// Residual of membership in `Λ²₂₁ ≅ spin(7)`.
pub fn lambda2_21_residual<S: Scalar>(alpha: &KForm<S>) -> Residual<S> {
    project2(alpha).0.norm_residual()
}

/// `(Ω_Ψ σ)_{ijkl} = σ_{ijpq}Ψ_{pqkl} + σ_{ikpq}Ψ_{pqlj} + σ_{ilpq}Ψ_{pqjk}
/// + σ_{jkpq}Ψ_{pqil} + σ_{jlpq}Ψ_{pqki} + σ_{klpq}Ψ_{pqij}`.
pub fn omega<S: Scalar>(sigma: &KForm<S>) -> KForm<S> {
    assert_eq!(
        (sigma.dim(), sigma.degree()),
        (8, 4),
        "expects a 4-form on ℝ⁸"
    );
    let s = sigma.to_dense();
    let p = canonical_psi::<S>().to_dense();
    let pair = |a: usize, b: usize, c: usize, d: usize| {
        let mut acc = S::zero();
        for x in 0..8 {
            for y in 0..8 {
                let v = s.get(&[a, b, x, y]);
                if !v.is_zero() {
                    acc.add_prod(v, p.get(&[x, y, c, d]));
                }
            }
        }
        acc
    };
    let terms = basis(8, 4).iter().map(|mi| {
        let v = mi.to_vec();
        let (i, j, k, l) = (v[0], v[1], v[2], v[3]);
        let val = pair(i, j, k, l)
            .add_ref(&pair(i, k, l, j))
            .add_ref(&pair(i, l, j, k))
            .add_ref(&pair(j, k, i, l))
            .add_ref(&pair(j, l, k, i))
            .add_ref(&pair(k, l, i, j));
        (*mi, val)
    });
    KForm::from_terms(8, 4, terms.collect::<Vec<_>>())
}

/// Eigenvalues of `Ω_Ψ` on `Λ⁴₁, Λ⁴₇, Λ⁴₂₇, Λ⁴₃₅`.
pub const OMEGA_EIGENVALUES: [i64; 4] = [-24, -12, 4, 0];

/// `[σ₁, σ₇, σ₂₇, σ₃₅]` by Lagrange interpolation in `Ω_Ψ`.
pub fn project4<S: Scalar>(sigma: &KForm<S>) -> [KForm<S>; 4] {
    let powers = {
        let o1 = omega(sigma);
        let o2 = omega(&o1);
        let o3 = omega(&o2);
        [sigma.clone(), o1, o2, o3]
    };
    let project = |target: usize| {
        // Coefficients of Π_{μ≠λ}(x − μ) as a cubic in x.
        let mut poly = vec![1i64];
        let mut denom = 1i64;
        let lam = OMEGA_EIGENVALUES[target];
        for (m, mu) in OMEGA_EIGENVALUES.iter().enumerate() {
            if m == target {
                continue;
            }
            let mut next = vec![0i64; poly.len() + 1];
            for (d, c) in poly.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * mu;
            }
            poly = next;
            denom *= lam - mu;
        }
        let mut out = KForm::zero(8, 4);
        for (d, c) in poly.iter().enumerate() {
            if *c != 0 {
                out = out.add(&powers[d].scale(&S::from_ratio(*c, denom)));
            }
        }
        out
    };
    [project(0), project(1), project(2), project(3)]
}

/// Residual of `σ_{ijkl}Ψ_{mjkl} = 0`, the `Λ⁴₂₇` contraction test.
pub fn lambda4_27_residual<S: Scalar>(sigma: &KForm<S>) -> Residual<S> {
    let s = sigma.to_dense();
    let p = canonical_psi::<S>().to_dense();
    residual_over(8, 2, |x| {
        let mut acc = S::zero();
        for j in 0..8 {
            for k in 0..8 {
                for l in 0..8 {
                    acc.add_prod(s.get(&[x[0], j, k, l]), p.get(&[x[1], j, k, l]));
                }
            }
        }
        (acc, S::zero())
    })
}

/// Curvature conditions relative to `spin(7)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Spin7InstantonResiduals<S> {
    /// `R_{abij}Ψ_{abkl} − 2R_{klij}`: the instanton condition.
    pub first_pair: Residual<S>,
    /// `R_{ijab}Ψ_{abkl} − 2R_{ijkl}`: holonomy in `spin(7)`.
    pub second_pair: Residual<S>,
}

impl<S: Scalar> Spin7InstantonResiduals<S> {
    pub fn is_instanton(&self, tol: Tolerance) -> bool {
        self.first_pair.passes(tol)
    }
}

pub fn spin7_instanton_check<S: Scalar>(r: &CurvatureTensor<S>) -> Spin7InstantonResiduals<S> {
    assert_eq!(r.dim(), 8, "Spin(7) instanton check needs dimension 8");
    let p = canonical_psi::<S>().to_dense();
    let first_pair = residual_over(8, 4, |x| {
        let mut acc = S::zero();
        for a in 0..8 {
            for b in 0..8 {
                acc.add_prod(r.get(a, b, x[0], x[1]), p.get(&[a, b, x[2], x[3]]));
            }
        }
        (acc, r.get(x[2], x[3], x[0], x[1]).scale_int(2))
    });
    let second_pair = residual_over(8, 4, |x| {
        let mut acc = S::zero();
        for a in 0..8 {
            for b in 0..8 {
                acc.add_prod(r.get(x[0], x[1], a, b), p.get(&[a, b, x[2], x[3]]));
            }
        }
        (acc, r.get(x[0], x[1], x[2], x[3]).scale_int(2))
    });
    Spin7InstantonResiduals {
        first_pair,
        second_pair,
    }
}

/// The canonical Spin(7) structure on an 8-dimensional Lie algebra.
#[derive(Clone, Debug)]
pub struct Spin7Structure<S> {
    algebra: LieAlgebra<S>,
    psi: KForm<S>,
}

impl<S: Scalar> Spin7Structure<S> {
    pub fn new(algebra: LieAlgebra<S>) -> Result<Self> {
        if algebra.dim() != 8 {
            return Err(Error::DimensionMismatch(algebra.dim(), 8));
        }
        Ok(Spin7Structure {
            algebra,
            psi: canonical_psi(),
        })
    }

    /// `ℝe_0 ⊕ g` with `de_0 = 0`, carrying `Ψ = −e_0∧φ − *φ`. Fails unless
    /// the G₂ structure is integrable.
    pub fn extend_g2(g2: &G2Structure<S>, tol: Tolerance) -> Result<Self> {
        let r = g2.integrability_residual();
        if !r.passes(tol) {
            return Err(Error::NotIntegrable(r.render()));
        }
        let algebra = g2.algebra().prepend_abelian();
        let e0 = KForm::unit(8, 0);
        let psi = e0.wedge(&lift(g2.phi())).add(&lift(g2.big_phi())).neg();
        if psi != canonical_psi() {
            return Err(Error::Invalid(
                "extended 4-form differs from the canonical Spin(7) form".into(),
            ));
        }
        Ok(Spin7Structure { algebra, psi })
    }

    pub fn algebra(&self) -> &LieAlgebra<S> {
        &self.algebra
    }

    pub fn psi(&self) -> &KForm<S> {
        &self.psi
    }

    pub fn d_psi(&self) -> KForm<S> {
        self.algebra.ce_d(&self.psi)
    }

    /// `θ = −(1/7) *(*dΨ ∧ Ψ)`.
    pub fn lee_form(&self) -> KForm<S> {
        self.d_psi()
            .hodge()
            .wedge(&self.psi)
            .hodge()
            .scale(&S::from_ratio(-1, 7))
    }

    pub fn is_balanced(&self) -> bool {
        self.lee_form().is_zero()
    }

    /// `T = −*dΨ + (7/6) *(θ∧Ψ)`.
    pub fn torsion(&self) -> KForm<S> {
        self.d_psi().hodge().neg().add(
            &self
                .lee_form()
                .wedge(&self.psi)
                .hodge()
                .scale(&S::from_ratio(7, 6)),
        )
    }

    pub fn characteristic(self) -> Result<Spin7Characteristic<S>> {
        let t = self.torsion();
        let geometry = TorsionGeometry::new(self.algebra.clone(), &t)?;
        let theta = self.lee_form();
        let nabla_theta = geometry.connection.covariant_derivative_form(&theta);
        Ok(Spin7Characteristic {
            structure: self,
            geometry,
            theta,
            nabla_theta,
        })
    }
}

/// Compares the torsion and Lee form of an extension with the G₂ data.
pub fn extension_checks<S: Scalar>(
    g2: &G2Structure<S>,
    ch8: &Spin7Characteristic<S>,
    tol: Tolerance,
) -> Result<Vec<Check>> {
    let t7 = g2.characteristic_torsion(tol)?;
    let theta7 = lift(&g2.lee_form());
    let c = g2.d_phi().inner(g2.big_phi());
    let e0 = KForm::unit(8, 0);
    let expected = theta7
        .scale(&S::from_ratio(6, 7))
        .sub(&e0.scale(&c.mul_ref(&S::from_ratio(1, 7))));
    let reciprocal = theta7
        .scale(&S::from_ratio(7, 6))
        .add(&e0.scale(&c.mul_ref(&S::from_ratio(1, 7))));
    Ok(vec![
        Check::identity(
            "spin7.extension.torsion_agrees",
            "T⁸ = T⁷",
            &ch8.torsion().residual(&lift(&t7)),
            tol,
        ),
        Check::identity(
            "spin7.extension.lee_form_relation",
            "θ⁸ = (6/7)θ⁷ − (1/7)(dφ,*φ)e₀",
            &ch8.theta.residual(&expected),
            tol,
        ),
        Check::flag(
            "spin7.extension.lee_form_reciprocal_coefficient",
            "θ⁸ = (7/6)θ⁷ + (1/7)(dφ,*φ)e₀",
            &ch8.theta.residual(&reciprocal),
            tol,
        ),
    ])
}

/// Reindexes a form on `ℝ⁷` (labels `e_1…e_7`) to `ℝ⁸` (labels `e_0…e_7`).
pub fn lift<S: Scalar>(a: &KForm<S>) -> KForm<S> {
    let terms: Vec<_> = a
        .terms()
        .map(|(mi, v)| {
            (
                crate::exterior::MultiIndex::from_mask(mi.mask() << 1),
                v.clone(),
            )
        })
        .collect();
    KForm::from_terms(8, a.degree(), terms)
}

/// A Spin(7) structure with its torsion connection.
#[derive(Clone, Debug)]
pub struct Spin7Characteristic<S> {
    pub structure: Spin7Structure<S>,
    pub geometry: TorsionGeometry<S>,
    pub theta: KForm<S>,
    /// `(∇θ)_{ij} = ∇_iθ_j`.
    pub nabla_theta: DenseTensor<S>,
}

impl<S: Scalar> Spin7Characteristic<S> {
    pub fn torsion(&self) -> &KForm<S> {
        &self.geometry.data.t
    }

    pub fn d_nabla_theta(&self) -> KForm<S> {
        self.nabla_theta.alternate().scale(&S::from_int(2))
    }

    /// `δT = (7/6)(dθ⌟Ψ − θ⌟T)`.
    pub fn delta_t_formula(&self) -> KForm<S> {
        let dth = self.geometry.algebra.ce_d(&self.theta);
        self.structure
            .psi
            .interior2(&dth)
            .sub(&self.torsion().interior(&self.theta))
            .scale(&S::from_ratio(7, 6))
    }

    /// `(7/6)(d^∇θ⌟Ψ + (θ⌟T)⌟Ψ − θ⌟T)`.
    pub fn delta_t_connection_formula(&self) -> KForm<S> {
        let tt = self.torsion().interior(&self.theta);
        let psi = &self.structure.psi;
        psi.interior2(&self.d_nabla_theta())
            .add(&psi.interior2(&tt))
            .sub(&tt)
            .scale(&S::from_ratio(7, 6))
    }

    /// `Ric_{ij} = −(1/12) dT_{iabc}Ψ_{jabc} − (7/6)∇_iθ_j`.
    pub fn ricci_formula(&self) -> DenseTensor<S> {
        let dt = self.geometry.data.dt.to_dense();
        let p = self.structure.psi.to_dense();
        let c = S::from_ratio(-1, 12);
        let c2 = S::from_ratio(7, 6);
        DenseTensor::from_fn(8, 2, |x| {
            let mut acc = S::zero();
            for a in 0..8 {
                for b in 0..8 {
                    for d in 0..8 {
                        acc.add_prod(dt.get(&[x[0], a, b, d]), p.get(&[x[1], a, b, d]));
                    }
                }
            }
            acc.mul_ref(&c)
                .sub_ref(&self.nabla_theta.get(x).mul_ref(&c2))
        })
    }

    /// `(7/2)δθ + (49/18)‖θ‖² − ⅓‖T‖²`.
    pub fn scalar_formula(&self) -> S {
        let delta_theta = self
            .geometry
            .algebra
            .codifferential(&self.theta)
            .as_scalar();
        delta_theta
            .mul_ref(&S::from_ratio(7, 2))
            .add_ref(
                &self
                    .theta
                    .inner(&self.theta)
                    .mul_ref(&S::from_ratio(49, 18)),
            )
            .sub_ref(&self.geometry.data.norm_sq().mul_ref(&S::from_ratio(1, 3)))
    }

    pub fn instanton(&self) -> Spin7InstantonResiduals<S> {
        spin7_instanton_check(&self.geometry.curvature)
    }

    pub fn hull_instanton(&self) -> Spin7InstantonResiduals<S> {
        spin7_instanton_check(&self.geometry.hull_curvature())
    }

    pub fn formula_checks(&self, tol: Tolerance) -> Vec<Check> {
        let g = &self.geometry;
        let d = &g.data;
        let psi = &self.structure.psi;
        let t = d.t.to_dense();
        let p = psi.to_dense();
        let th = self.theta.as_vector();
        let n = 8;
        let mut out = Vec::new();

        let mut inv = psi.hodge().residual(psi);
        inv = inv.merge(
            psi.wedge(psi)
                .residual(&KForm::volume(8).scale(&S::from_int(14))),
        );
        out.push(Check::identity(
            "spin7.form_invariants",
            "*Ψ = Ψ, Ψ∧Ψ = 14 vol",
            &inv,
            tol,
        ));
        out.push(Check::identity(
            "spin7.connection_preserves_structure",
            "∇Ψ = 0",
            &g.connection.covariant_derivative_form(psi).norm_residual(),
            tol,
        ));
        let tpsi = |k: usize, l: usize, m: usize| {
            let mut acc = S::zero();
            for j in 0..n {
                for s in 0..n {
                    acc.add_prod(t.get(&[j, s, k]), p.get(&[j, s, l, m]));
                }
            }
            acc
        };
        let half = S::from_ratio(1, 2);
        let seven_sixths = S::from_ratio(7, 6);
        let rewriting = residual_over(n, 3, |x| {
            let (k, l, m) = (x[0], x[1], x[2]);
            let mut rhs = tpsi(k, l, m)
                .add_ref(&tpsi(l, m, k))
                .add_ref(&tpsi(m, k, l))
                .mul_ref(&half);
            for (s, ts) in th.iter().enumerate() {
                rhs.add_prod(&ts.mul_ref(&seven_sixths), p.get(&[s, k, l, m]));
            }
            (t.get(x).clone(), rhs)
        });
        out.push(Check::identity(
            "spin7.torsion_rewriting",
            "T_klm = ½T_jskΨ_jslm + ½T_jslΨ_jsmk + ½T_jsmΨ_jskl + (7/6)θ_sΨ_sklm",
            &rewriting,
            tol,
        ));
        let via_delta = g
            .algebra
            .codifferential(psi)
            .add(&psi.interior(&self.theta).scale(&seven_sixths));
        out.push(Check::identity(
            "spin7.torsion_via_codifferential",
            "T = δΨ + (7/6)θ⌟Ψ",
            &d.t.residual(&via_delta),
            tol,
        ));
        let theta_t = residual_over(n, 1, |x| {
            let mut acc = S::zero();
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        acc.add_prod(t.get(&[j, k, l]), p.get(&[j, k, l, x[0]]));
                    }
                }
            }
            (th[x[0]].clone(), acc.mul_ref(&S::from_ratio(-1, 7)))
        });
        out.push(Check::identity(
            "spin7.lee_form_from_torsion",
            "θ_i = −(1/7)T_jklΨ_jkli",
            &theta_t,
            tol,
        ));
        let dpsi = g.algebra.codifferential(psi).to_dense();
        let theta_d = residual_over(n, 1, |x| {
            let mut acc = S::zero();
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        acc.add_prod(dpsi.get(&[i, j, k]), p.get(&[i, j, k, x[0]]));
                    }
                }
            }
            (th[x[0]].clone(), acc.mul_ref(&S::from_ratio(1, 42)))
        });
        out.push(Check::identity(
            "spin7.lee_form_from_codifferential",
            "θ_a = (1/42)(δΨ)_ijkΨ_ijka",
            &theta_d,
            tol,
        ));
        let dth = g.algebra.ce_d(&self.theta);
        let tt = d.t.interior(&self.theta);
        out.push(Check::identity(
            "spin7.lee_derivative_split",
            "dθ = d^∇θ + θ⌟T",
            &dth.residual(&self.d_nabla_theta().add(&tt)),
            tol,
        ));
        out.push(Check::identity(
            "spin7.codifferential_of_torsion",
            "δT = (7/6)(dθ⌟Ψ − θ⌟T)",
            &d.delta_t.residual(&self.delta_t_formula()),
            tol,
        ));
        out.push(Check::identity(
            "spin7.codifferential_of_torsion_connection_form",
            "δT = (7/6)(d^∇θ⌟Ψ + (θ⌟T)⌟Ψ − θ⌟T)",
            &d.delta_t.residual(&self.delta_t_connection_formula()),
            tol,
        ));
        out.push(Check::identity(
            "spin7.ricci_formula",
            "Ric_ij = −(1/12)dT_iabcΨ_jabc − (7/6)∇_iθ_j",
            &g.ricci().residual(&self.ricci_formula()),
            tol,
        ));
        let mut scal = Residual::zero();
        scal.observe(&g.scalar_curvature(), &self.scalar_formula());
        out.push(Check::identity(
            "spin7.scalar_formula",
            "Scal = (7/2)δθ + (49/18)‖θ‖² − ⅓‖T‖²",
            &scal,
            tol,
        ));
        out.push(Check::identity(
            "spin7.holonomy_in_spin7",
            "R_ijabΨ_abkl = 2R_ijkl",
            &self.instanton().second_pair,
            tol,
        ));
        out
    }

    pub fn theorem_checks(&self, tol: Tolerance) -> Vec<Check> {
        let g = &self.geometry;
        let d = &g.data;
        let psi = &self.structure.psi;
        let instanton = self.instanton().is_instanton(tol);
        let dth = g.algebra.ce_d(&self.theta);
        let tt = d.t.interior(&self.theta);
        let dnth = self.d_nabla_theta();
        let closed_lee = dth.norm_residual().passes(tol);
        let dnth_zero = dnth.norm_residual().passes(tol);
        let balanced = self.theta.is_zero();
        let dnt_zero = d.d_nabla_t.norm_residual().passes(tol);
        let delta_t_zero = d.delta_t.norm_residual().passes(tol);
        let nabla_t_zero = d.nabla_t.norm_residual().passes(tol);
        let nabla_theta_zero = self.nabla_theta.norm_residual().passes(tol);
        let delta_theta_zero = g
            .algebra
            .codifferential(&self.theta)
            .norm_residual()
            .passes(tol);
        let ric = g.ricci();
        let ric_sym = ric.residual(&ric.transpose()).passes(tol);
        let nabla_ric_zero = g
            .connection
            .covariant_derivative(&ric)
            .norm_residual()
            .passes(tol);
        let nabla_dt_zero = g
            .connection
            .covariant_derivative_form(&d.dt)
            .norm_residual()
            .passes(tol);
        let pair_sym = g.curvature.pair_symmetry_residual().passes(tol);
        let dnt_27 = lambda4_27_residual(&d.d_nabla_t).passes(tol);
        let dnt_sd = d.d_nabla_t.hodge().residual(&d.d_nabla_t).passes(tol);
        let d_scal_zero = true;
        let d_norm_t_zero = true;
        let seven_sixths = S::from_ratio(7, 6);
        // d^∇T_ijklΨ_ijkm symmetric in l, m.
        let dnt_psi_sym = {
            let a = d.d_nabla_t.to_dense();
            let p = psi.to_dense();
            residual_over(8, 2, |x| {
                let (mut u, mut v) = (S::zero(), S::zero());
                for i in 0..8 {
                    for j in 0..8 {
                        for k in 0..8 {
                            u.add_prod(a.get(&[i, j, k, x[0]]), p.get(&[i, j, k, x[1]]));
                            v.add_prod(a.get(&[i, j, k, x[1]]), p.get(&[i, j, k, x[0]]));
                        }
                    }
                }
                (u, v)
            })
            .passes(tol)
        };

        let mut out = Vec::new();
        let in21 = |a: &KForm<S>| lambda2_21_residual(a).passes(tol);
        out.push(Check::implication(
            "spin7.theorem.instanton_codifferential",
            "R ∈ spin(7) ⇒ δT ∈ Λ²₂₁ ∧ 3dθ + θ⌟T ∈ Λ²₂₁",
            &[("instanton", instanton)],
            &[
                ("delta_T_in_spin7", in21(&d.delta_t)),
                (
                    "3dtheta+theta_T_in_spin7",
                    in21(&dth.scale(&S::from_int(3)).add(&tt)),
                ),
            ],
            Status::Asserted,
        ));
        out.push(Check::implication(
            "spin7.theorem.instanton_closed_lee_form",
            "R ∈ spin(7) ∧ dθ = 0 ⇒ d^∇θ = −θ⌟T ∈ Λ²₂₁, d^∇T·Ψ symmetric, δT = (7/6)d^∇θ",
            &[("instanton", instanton), ("d_theta=0", closed_lee)],
            &[
                (
                    "d_nabla_theta=-theta_T",
                    dnth.residual(&tt.neg()).passes(tol),
                ),
                ("d_nabla_theta_in_spin7", in21(&dnth)),
                ("d_nabla_T_psi_symmetric", dnt_psi_sym),
                (
                    "delta_T=7/6*d_nabla_theta",
                    d.delta_t.residual(&dnth.scale(&seven_sixths)).passes(tol),
                ),
            ],
            Status::Asserted,
        ));
        out.push(Check::implication(
            "spin7.theorem.instanton_closed_lee_derivative",
            "R ∈ spin(7) ∧ d^∇θ = 0 ⇒ dθ = θ⌟T ∈ Λ²₂₁, d^∇T·Ψ symmetric, δT = 0",
            &[("instanton", instanton), ("d_nabla_theta=0", dnth_zero)],
            &[
                ("d_theta=theta_T", dth.residual(&tt).passes(tol)),
                ("d_theta_in_spin7", in21(&dth)),
                ("d_nabla_T_psi_symmetric", dnt_psi_sym),
                ("delta_T=0", delta_t_zero),
            ],
            Status::Asserted,
        ));
        let delta_t_nabla_theta = {
            let nt = &self.nabla_theta;
            let dt = d.delta_t.to_dense();
            let c = S::from_ratio(7, 3);
            residual_over(8, 2, |x| (dt.get(x).clone(), nt.get(x).mul_ref(&c))).passes(tol)
        };
        out.push(Check::implication(
            "spin7.theorem.instanton_dnablaT_codifferential",
            "R ∈ spin(7) ∧ d^∇T = 0 ⇒ δT = (7/3)∇θ ∈ Λ²₂₁, δθ = 0, d(Scal) = 0",
            &[("instanton", instanton), ("d_nabla_T=0", dnt_zero)],
            &[
                ("delta_T=7/3*nabla_theta", delta_t_nabla_theta),
                ("delta_T_in_spin7", in21(&d.delta_t)),
                ("delta_theta=0", delta_theta_zero),
                ("d_scal=0", d_scal_zero),
            ],
            Status::Asserted,
        ));

        let r = g.curvature.tensor();
        let th = self.theta.as_vector();
        let c76 = S::from_ratio(-7, 6);
        let div = residual_over(8, 3, |x| {
            let (pp, l, m) = (x[0], x[1], x[2]);
            let mut lhs = S::zero();
            for i in 0..8 {
                let mut idx = [i, pp, l, m];
                lhs.add_assign_ref(&g.connection.derivative_entry(r, i, &mut idx));
            }
            let mut rhs = S::zero();
            for (s, ts) in th.iter().enumerate() {
                rhs.add_prod(ts, r.get(&[s, pp, l, m]));
            }
            (lhs, rhs.mul_ref(&c76))
        });
        out.push(Check::conditional_identity(
            "spin7.theorem.instanton_curvature_divergence",
            "R ∈ spin(7) ⇒ ∇_iR_iplm = −(7/6)θ_rR_rplm",
            &[("instanton", instanton)],
            &div,
            tol,
        ));
        let t = d.t.to_dense();
        let p = psi.to_dense();
        let c73 = S::from_ratio(-7, 3);
        let contraction = residual_over(8, 3, |x| {
            let (pp, l, m) = (x[0], x[1], x[2]);
            let mut lhs = S::zero();
            for i in 0..8 {
                for j in 0..8 {
                    for k in 0..8 {
                        let b = p.get(&[i, j, k, pp]);
                        if b.is_zero() {
                            continue;
                        }
                        for s in 0..8 {
                            lhs.add_prod(&t.get(&[i, j, s]).mul_ref(b), r.get(&[s, k, l, m]));
                        }
                    }
                }
            }
            let mut rhs = S::zero();
            for (s, ts) in th.iter().enumerate() {
                rhs.add_prod(ts, r.get(&[s, pp, l, m]));
            }
            (lhs, rhs.mul_ref(&c73))
        });
        out.push(Check::conditional_identity(
            "spin7.theorem.instanton_torsion_curvature_contraction",
            "R ∈ spin(7) ⇒ T_ijsΨ_ijkpR_sklm = −(7/3)θ_rR_rplm",
            &[("instanton", instanton)],
            &contraction,
            tol,
        ));
        out.push(Check::implication(
            "spin7.theorem.parallel_torsion_consequences",
            "∇T = 0 ⇒ d^∇T = δT = 0, R ∈ spin(7), R pair-symmetric, Ric symmetric and parallel, ∇dT = 0, d(Scal) = 0",
            &[("nabla_T=0", nabla_t_zero)],
            &[
                ("d_nabla_T=0", dnt_zero),
                ("delta_T=0", delta_t_zero),
                ("instanton", instanton),
                ("pair_symmetric", pair_sym),
                ("ricci_symmetric", ric_sym),
                ("nabla_ricci=0", nabla_ric_zero),
                ("nabla_dT=0", nabla_dt_zero),
                ("d_scal=0", d_scal_zero),
            ],
            Status::Asserted,
        ));
        out.push(Check::equivalence(
            "spin7.theorem.parallel_torsion_criterion",
            "∇T = 0 ⟺ R ∈ spin(7) ∧ d‖T‖² = 0 ∧ d^∇T = 0",
            &[("nabla_T=0", nabla_t_zero)],
            &[
                ("instanton", instanton),
                ("d_norm_T=0", d_norm_t_zero),
                ("d_nabla_T=0", dnt_zero),
            ],
            Status::Asserted,
        ));
        out.push(Check::equivalence(
            "spin7.theorem.instanton_coclosed_torsion",
            "R ∈ spin(7) ∧ d^∇T = 0 ∧ δT = 0 ⟺ ∇T = 0",
            &[
                ("instanton", instanton),
                ("d_nabla_T=0", dnt_zero),
                ("delta_T=0", delta_t_zero),
            ],
            &[("nabla_T=0", nabla_t_zero)],
            Status::Asserted,
        ));
        out.push(Check::implication(
            "spin7.theorem.instanton_closed_lee_form_parallel",
            "dθ = 0 ∧ R ∈ spin(7) ∧ d^∇T = 0 ⇒ ∇T = 0, Ric symmetric and parallel, ∇dT = 0",
            &[
                ("d_theta=0", closed_lee),
                ("instanton", instanton),
                ("d_nabla_T=0", dnt_zero),
            ],
            &[
                ("nabla_T=0", nabla_t_zero),
                ("ricci_symmetric", ric_sym),
                ("nabla_ricci=0", nabla_ric_zero),
                ("nabla_dT=0", nabla_dt_zero),
            ],
            Status::Asserted,
        ));
        out.push(
            Check::equivalence(
                "spin7.theorem.balanced_criterion",
                "θ = 0: R ∈ spin(7) ∧ d^∇T = 0 ⟺ ∇T = 0",
                &[("instanton", instanton), ("d_nabla_T=0", dnt_zero)],
                &[("nabla_T=0", nabla_t_zero)],
                Status::Asserted,
            )
            .given("balanced", balanced),
        );
        out.push(Check::equivalence(
            "spin7.theorem.compact_criterion",
            "compact: R ∈ spin(7) ∧ d^∇T = 0 ⟺ ∇T = 0",
            &[("instanton", instanton), ("d_nabla_T=0", dnt_zero)],
            &[("nabla_T=0", nabla_t_zero)],
            Status::InstanceConsistentOnly,
        ));
        out.push(Check::implication(
            "spin7.theorem.compact_gauduchon",
            "compact, dθ = 0, δθ = 0, R ∈ spin(7) ⇒ ∇θ = 0 ∧ d^∇T ∈ Λ⁴₂₇ ∧ *d^∇T = d^∇T",
            &[
                ("d_theta=0", closed_lee),
                ("delta_theta=0", delta_theta_zero),
                ("instanton", instanton),
            ],
            &[
                ("nabla_theta=0", nabla_theta_zero),
                ("d_nabla_T_in_27", dnt_27),
                ("d_nabla_T_self_dual", dnt_sd),
            ],
            Status::InstanceConsistentOnly,
        ));
        out.extend(self.hull_checks(tol));
        out
    }

    /// The Hull connection `∇ − T` is an instanton exactly when `dT = 0`.
    pub fn hull_checks(&self, tol: Tolerance) -> Vec<Check> {
        let g = &self.geometry;
        let dt = &g.data.dt;
        let closed = dt.norm_residual().passes(tol);
        let hull = self.hull_instanton().is_instanton(tol);
        let unimodular = g.algebra.is_unimodular();
        let dt_27 = lambda4_27_residual(dt).passes(tol);
        let dt_sd = dt.hodge().residual(dt).passes(tol);
        let co_closed = g.algebra.codifferential(dt).norm_residual().passes(tol);
        vec![
            Check::implication(
                "hull.theorem.closed_torsion_gives_instanton",
                "dT = 0 ⇒ Rʰ ∈ spin(7)",
                &[("dT=0", closed)],
                &[("hull_instanton", hull)],
                Status::Asserted,
            ),
            Check::implication(
                "hull.theorem.instanton_algebraic_consequences",
                "Rʰ ∈ spin(7) ⇒ dT ∈ Λ⁴₂₇, *dT = dT, δdT = 0",
                &[("hull_instanton", hull)],
                &[
                    ("dT_in_27", dt_27),
                    ("dT_self_dual", dt_sd),
                    ("delta_dT=0", co_closed),
                ],
                Status::Asserted,
            ),
            Check::implication(
                "hull.theorem.instanton_gives_closed_torsion",
                "Rʰ ∈ spin(7) ⇒ dT = 0 (integration by parts; algebraic on unimodular algebras)",
                &[("hull_instanton", hull)],
                &[("dT=0", closed)],
                if unimodular {
                    Status::Asserted
                } else {
                    Status::InstanceConsistentOnly
                },
            ),
        ]
    }
}
