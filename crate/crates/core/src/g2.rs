//! G₂ structures on 7-dimensional Lie algebras.
//!
//! The structure is always the canonical 3-form
//! `φ = e127 + e135 − e146 − e236 − e245 + e347 + e567` in the declared
//! frame, with `Φ = *φ`. An integrable structure (`dΦ = θ ∧ Φ`) carries a
//! unique characteristic connection with skew torsion preserving `φ`.

use crate::error::{Error, Result};
use crate::exterior::{DenseTensor, KForm};
use crate::families::Family;
use crate::lie::LieAlgebra;
use crate::report::{Check, Status};
use crate::scalar::{Residual, Scalar, Tolerance};
use crate::torsion::{residual_over, CurvatureTensor, TorsionGeometry};

/// The canonical G₂ 3-form on `ℝ⁷`.
pub fn canonical_phi<S: Scalar>() -> KForm<S> {
    KForm::from_labels(
        7,
        3,
        &[
            (1, &[1, 2, 7]),
            (1, &[1, 3, 5]),
            (-1, &[1, 4, 6]),
            (-1, &[2, 3, 6]),
            (-1, &[2, 4, 5]),
            (1, &[3, 4, 7]),
            (1, &[5, 6, 7]),
        ],
    )
}

/// `Φ = *φ`.
pub fn canonical_big_phi<S: Scalar>() -> KForm<S> {
    canonical_phi::<S>().hodge()
}

/// `(α₇, α₁₄)` with `*(α₇∧φ) = 2α₇` and `*(α₁₄∧φ) = −α₁₄`.
pub fn project2<S: Scalar>(alpha: &KForm<S>) -> (KForm<S>, KForm<S>) {
    assert_eq!(
        (alpha.dim(), alpha.degree()),
        (7, 2),
        "expects a 2-form on ℝ⁷"
    );
    let l = alpha.wedge(&canonical_phi()).hodge();
    let third = S::from_ratio(1, 3);
    let a7 = alpha.add(&l).scale(&third);
    let a14 = alpha.sub(&a7);
    (a7, a14)
}

/// `(γ₁, γ₇, γ₂₇)` for a 3-form on `ℝ⁷`.
pub fn project3<S: Scalar>(gamma: &KForm<S>) -> (KForm<S>, KForm<S>, KForm<S>) {
    assert_eq!(
        (gamma.dim(), gamma.degree()),
        (7, 3),
        "expects a 3-form on ℝ⁷"
    );
    let phi = canonical_phi::<S>();
    let big = canonical_big_phi::<S>();
    let g1 = phi.scale(&gamma.inner(&phi).mul_ref(&S::from_ratio(1, 7)));
    let quarter = S::from_ratio(1, 4);
    let mut g7 = KForm::zero(7, 3);
    for i in 0..7 {
        let b = big.interior_basis(i);
        let c = gamma.inner(&b);
        if !c.is_zero() {
            g7 = g7.add(&b.scale(&c.mul_ref(&quarter)));
        }
    }
    let g27 = gamma.sub(&g1).sub(&g7);
    (g1, g7, g27)
}

/// Residual of membership in `Λ³₂₇`: `γ∧φ = 0` and `γ∧Φ = 0`.
pub fn lambda3_27_residual<S: Scalar>(gamma: &KForm<S>) -> Residual<S> {
    gamma
        .wedge(&canonical_phi())
        .norm_residual()
        .merge(gamma.wedge(&canonical_big_phi()).norm_residual())
}

/// Residual of membership in `Λ²₁₄ ≅ g₂`: the `Λ²₇` part vanishes.
pub fn lambda2_14_residual<S: Scalar>(alpha: &KForm<S>) -> Residual<S> {
    project2(alpha).0.norm_residual()
}

/// Whether every `e_i ⌟ A` lies in `Λ³₂₇`, together with the max-norm of
/// `A`. A true verdict forces `A = 0`.
pub fn four_form_27_kernel_test<S: Scalar>(a: &KForm<S>, tol: Tolerance) -> (bool, Residual<S>) {
    assert_eq!((a.dim(), a.degree()), (7, 4), "expects a 4-form on ℝ⁷");
    let all = (0..7).all(|i| lambda3_27_residual(&a.interior_basis(i)).passes(tol));
    (all, a.norm_residual())
}

/// The three curvature conditions relative to `g₂`.
#[derive(Clone, Debug, PartialEq)]
pub struct G2InstantonResiduals<S> {
    /// `R_{abij}φ_{abk}`.
    pub first_pair: Residual<S>,
    /// `R_{abij}Φ_{abkl} + 2R_{klij}`.
    pub first_pair_four_form: Residual<S>,
    /// `R_{ijab}φ_{abk}`.
    pub second_pair: Residual<S>,
}

impl<S: Scalar> G2InstantonResiduals<S> {
    pub fn is_instanton(&self, tol: Tolerance) -> bool {
        self.first_pair.passes(tol) && self.first_pair_four_form.passes(tol)
    }
}

pub fn g2_instanton_check<S: Scalar>(r: &CurvatureTensor<S>) -> G2InstantonResiduals<S> {
    assert_eq!(r.dim(), 7, "G₂ instanton check needs dimension 7");
    let ph = canonical_phi::<S>().to_dense();
    let bp = canonical_big_phi::<S>().to_dense();
    let zero = S::zero();
    let first_pair = residual_over(7, 3, |x| {
        let mut acc = S::zero();
        for a in 0..7 {
            for b in 0..7 {
                acc.add_prod(r.get(a, b, x[0], x[1]), ph.get(&[a, b, x[2]]));
            }
        }
        (acc, zero.clone())
    });
    let first_pair_four_form = residual_over(7, 4, |x| {
        let mut acc = S::zero();
        for a in 0..7 {
            for b in 0..7 {
                acc.add_prod(r.get(a, b, x[0], x[1]), bp.get(&[a, b, x[2], x[3]]));
            }
        }
        (acc, r.get(x[2], x[3], x[0], x[1]).scale_int(-2))
    });
    let second_pair = residual_over(7, 3, |x| {
        let mut acc = S::zero();
        for a in 0..7 {
            for b in 0..7 {
                acc.add_prod(r.get(x[0], x[1], a, b), ph.get(&[a, b, x[2]]));
            }
        }
        (acc, zero.clone())
    });
    G2InstantonResiduals {
        first_pair,
        first_pair_four_form,
        second_pair,
    }
}

/// Torsion classes read off `dφ` and `dΦ`.
#[derive(Clone, Debug, PartialEq)]
pub struct G2TorsionClasses<S> {
    pub lambda: S,
    pub theta: KForm<S>,
    pub integrable: bool,
    pub cocalibrated: bool,
    /// `(dφ, Φ)` is constant; always true for left-invariant structures.
    pub constant_type: bool,
    pub strictly_integrable: bool,
    pub parallel: bool,
    pub nearly_parallel: bool,
}

/// The canonical G₂ structure on a 7-dimensional Lie algebra.
#[derive(Clone, Debug)]
pub struct G2Structure<S> {
    algebra: LieAlgebra<S>,
    phi: KForm<S>,
    big_phi: KForm<S>,
}

impl<S: Scalar> G2Structure<S> {
    pub fn new(algebra: LieAlgebra<S>) -> Result<Self> {
        if algebra.dim() != 7 {
            return Err(Error::DimensionMismatch(algebra.dim(), 7));
        }
        Ok(G2Structure {
            algebra,
            phi: canonical_phi(),
            big_phi: canonical_big_phi(),
        })
    }

    pub fn algebra(&self) -> &LieAlgebra<S> {
        &self.algebra
    }

    pub fn phi(&self) -> &KForm<S> {
        &self.phi
    }

    pub fn big_phi(&self) -> &KForm<S> {
        &self.big_phi
    }

    pub fn d_phi(&self) -> KForm<S> {
        self.algebra.ce_d(&self.phi)
    }

    pub fn d_big_phi(&self) -> KForm<S> {
        self.algebra.ce_d(&self.big_phi)
    }

    /// `θ = −⅓ *(*dφ ∧ φ)`.
    pub fn lee_form(&self) -> KForm<S> {
        self.d_phi()
            .hodge()
            .wedge(&self.phi)
            .hodge()
            .scale(&S::from_ratio(-1, 3))
    }

    /// `λ = (1/6)(dφ, Φ)` with the form inner product.
    pub fn lambda(&self) -> S {
        self.d_phi()
            .inner(&self.big_phi)
            .mul_ref(&S::from_ratio(1, 6))
    }

    /// `dΦ − θ ∧ Φ`.
    pub fn integrability_residual(&self) -> Residual<S> {
        self.d_big_phi()
            .residual(&self.lee_form().wedge(&self.big_phi))
    }

    pub fn is_integrable(&self, tol: Tolerance) -> bool {
        self.integrability_residual().passes(tol)
    }

    pub fn classes(&self, tol: Tolerance) -> G2TorsionClasses<S> {
        let dphi = self.d_phi();
        let dbig = self.d_big_phi();
        let theta = self.lee_form();
        let lambda = self.lambda();
        let cocalibrated = dbig.norm_residual().passes(tol);
        // dφ = cΦ with c = (dφ, Φ)/7.
        let c = dphi.inner(&self.big_phi).mul_ref(&S::from_ratio(1, 7));
        let nearly =
            cocalibrated && !c.is_zero() && dphi.residual(&self.big_phi.scale(&c)).passes(tol);
        let integrable = self.is_integrable(tol);
        G2TorsionClasses {
            integrable,
            cocalibrated,
            constant_type: integrable,
            strictly_integrable: integrable && dphi.wedge(&self.phi).norm_residual().passes(tol),
            parallel: cocalibrated && dphi.norm_residual().passes(tol),
            nearly_parallel: nearly,
            theta,
            lambda,
        }
    }

    /// `T = −*dφ + *(θ∧φ) + λφ`; fails when the structure is not integrable.
    pub fn characteristic_torsion(&self, tol: Tolerance) -> Result<KForm<S>> {
        let r = self.integrability_residual();
        if !r.passes(tol) {
            return Err(Error::NotIntegrable(r.render()));
        }
        let theta = self.lee_form();
        Ok(self
            .d_phi()
            .hodge()
            .neg()
            .add(&theta.wedge(&self.phi).hodge())
            .add(&self.phi.scale(&self.lambda())))
    }

    pub fn characteristic(self, tol: Tolerance) -> Result<G2Characteristic<S>> {
        let t = self.characteristic_torsion(tol)?;
        let geometry = TorsionGeometry::new(self.algebra.clone(), &t)?;
        let theta = self.lee_form();
        let lambda = self.lambda();
        let nabla_theta = geometry.connection.covariant_derivative_form(&theta);
        Ok(G2Characteristic {
            structure: self,
            geometry,
            theta,
            lambda,
            nabla_theta,
        })
    }
}

/// An integrable G₂ structure with its characteristic connection.
#[derive(Clone, Debug)]
pub struct G2Characteristic<S> {
    pub structure: G2Structure<S>,
    pub geometry: TorsionGeometry<S>,
    pub theta: KForm<S>,
    pub lambda: S,
    /// `(∇θ)_{ij} = ∇_iθ_j`.
    pub nabla_theta: DenseTensor<S>,
}

impl<S: Scalar> G2Characteristic<S> {
    pub fn torsion(&self) -> &KForm<S> {
        &self.geometry.data.t
    }

    /// `d^∇θ_{ij} = ∇_iθ_j − ∇_jθ_i`.
    pub fn d_nabla_theta(&self) -> KForm<S> {
        self.nabla_theta.alternate().scale(&S::from_int(2))
    }

    /// `Ric_{ij} = (1/12) dT_{iabc}Φ_{jabc} − ∇_iθ_j`.
    pub fn ricci_formula(&self) -> DenseTensor<S> {
        let dt = self.geometry.data.dt.to_dense();
        let bp = self.structure.big_phi.to_dense();
        let c = S::from_ratio(1, 12);
        DenseTensor::from_fn(7, 2, |x| {
            let mut acc = S::zero();
            for a in 0..7 {
                for b in 0..7 {
                    for d in 0..7 {
                        acc.add_prod(dt.get(&[x[0], a, b, d]), bp.get(&[x[1], a, b, d]));
                    }
                }
            }
            acc.mul_ref(&c).sub_ref(self.nabla_theta.get(x))
        })
    }

    /// `3δθ + 2‖θ‖² − ⅓‖T‖² + 2λ²` with tensor norms.
    pub fn scalar_formula(&self) -> S {
        let delta_theta = self
            .geometry
            .algebra
            .codifferential(&self.theta)
            .as_scalar();
        delta_theta
            .scale_int(3)
            .add_ref(&self.theta.inner(&self.theta).scale_int(2))
            .sub_ref(&self.geometry.data.norm_sq().mul_ref(&S::from_ratio(1, 3)))
            .add_ref(&self.lambda.mul_ref(&self.lambda).scale_int(2))
    }

    pub fn instanton(&self) -> G2InstantonResiduals<S> {
        g2_instanton_check(&self.geometry.curvature)
    }

    /// Structure-specific formulas; all asserted on every integrable instance.
    pub fn formula_checks(&self, tol: Tolerance) -> Vec<Check> {
        let g = &self.geometry;
        let d = &g.data;
        let t = d.t.to_dense();
        let ph = self.structure.phi.to_dense();
        let bp = self.structure.big_phi.to_dense();
        let sg = d.sigma.to_dense();
        let dt = d.dt.to_dense();
        let nt = &d.nabla_t;
        let th = self.theta.as_vector();
        let lam = &self.lambda;
        let half = S::from_ratio(1, 2);
        let sixth = S::from_ratio(1, 6);
        let zero = S::zero();
        let n = 7;
        let mut out = Vec::new();

        out.push(Check::identity(
            "g2.integrability",
            "dΦ = θ ∧ Φ",
            &self.structure.integrability_residual(),
            tol,
        ));
        let conn = &g.connection;
        let pres = conn
            .covariant_derivative_form(&self.structure.phi)
            .norm_residual()
            .merge(
                conn.covariant_derivative_form(&self.structure.big_phi)
                    .norm_residual(),
            );
        out.push(Check::identity(
            "g2.connection_preserves_structure",
            "∇φ = ∇Φ = 0",
            &pres,
            tol,
        ));

        // T_jsk Φ_jslm
        let tphi = |k: usize, l: usize, m: usize| {
            let mut acc = S::zero();
            for j in 0..n {
                for s in 0..n {
                    acc.add_prod(t.get(&[j, s, k]), bp.get(&[j, s, l, m]));
                }
            }
            acc
        };
        let rewriting = residual_over(n, 3, |x| {
            let (k, l, m) = (x[0], x[1], x[2]);
            let mut rhs = tphi(k, l, m)
                .mul_ref(&half)
                .neg()
                .add_ref(&tphi(l, k, m).mul_ref(&half))
                .sub_ref(&tphi(m, k, l).mul_ref(&half));
            for (s, ts) in th.iter().enumerate() {
                let p = ts.mul_ref(bp.get(&[s, k, l, m]));
                rhs = rhs.sub_ref(&p);
            }
            rhs = rhs.add_ref(&lam.mul_ref(ph.get(x)));
            (t.get(x).clone(), rhs)
        });
        out.push(Check::identity(
            "g2.torsion_rewriting",
            "T_klm = −½T_jskΦ_jslm + ½T_jslΦ_jskm − ½T_jsmΦ_jskl − θ_sΦ_sklm + λφ_klm",
            &rewriting,
            tol,
        ));
        let delta_big = g.algebra.codifferential(&self.structure.big_phi);
        let dbd = delta_big.to_dense();
        let dphi_formula = residual_over(n, 3, |x| {
            let (k, l, m) = (x[0], x[1], x[2]);
            let rhs = tphi(k, l, m)
                .mul_ref(&half)
                .neg()
                .add_ref(&tphi(l, k, m).mul_ref(&half))
                .sub_ref(&tphi(m, k, l).mul_ref(&half));
            (-dbd.get(x).clone(), rhs)
        });
        out.push(Check::identity(
            "g2.codifferential_of_big_phi",
            "−δΦ_klm = −½T_jskΦ_jslm + ½T_jslΦ_jskm − ½T_jsmΦ_jskl",
            &dphi_formula,
            tol,
        ));
        let via_delta = delta_big
            .neg()
            .sub(&self.structure.big_phi.interior(&self.theta))
            .add(&self.structure.phi.scale(lam));
        out.push(Check::identity(
            "g2.torsion_via_codifferential",
            "T = −δΦ − θ⌟Φ + λφ",
            &d.t.residual(&via_delta),
            tol,
        ));
        let theta_t = residual_over(n, 1, |x| {
            let mut acc = S::zero();
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        acc.add_prod(t.get(&[j, k, l]), bp.get(&[j, k, l, x[0]]));
                    }
                }
            }
            (th[x[0]].clone(), acc.mul_ref(&sixth))
        });
        out.push(Check::identity(
            "g2.lee_form_from_torsion",
            "θ_i = (1/6)T_jklΦ_jkli",
            &theta_t,
            tol,
        ));
        let mut lam_t = Residual::zero();
        lam_t.observe(lam, &t.dot(&ph).mul_ref(&sixth));
        out.push(Check::identity(
            "g2.lambda_from_torsion",
            "λ = (1/6)T_klmφ_klm",
            &lam_t,
            tol,
        ));
        let mut lam_d = Residual::zero();
        lam_d.observe(lam, &dbd.dot(&ph).mul_ref(&S::from_ratio(1, 36)));
        lam_d.observe(
            lam,
            &d_phi_dense_dot(&self.structure, &bp).mul_ref(&S::from_ratio(1, 144)),
        );
        out.push(Check::identity(
            "g2.lambda_contractions",
            "λ = (1/36)δΦ_klmφ_klm = (1/144)dφ_ijklΦ_ijkl",
            &lam_d,
            tol,
        ));

        let lmt_a = residual_over(n, 2, |x| {
            let (i, j) = (x[0], x[1]);
            let mut lhs = S::zero();
            for k in 0..n {
                for l in 0..n {
                    lhs.add_prod(t.get(&[k, l, i]), ph.get(&[k, l, j]));
                    let p = t.get(&[k, l, j]).mul_ref(ph.get(&[k, l, i]));
                    lhs = lhs.sub_ref(&p);
                }
            }
            let mut rhs = S::zero();
            for (s, ts) in th.iter().enumerate() {
                rhs.add_prod(ts, ph.get(&[s, i, j]));
            }
            (lhs, rhs.scale_int(-2))
        });
        out.push(Check::identity(
            "g2.torsion_phi_antisymmetric_part",
            "T_kliφ_klj − T_kljφ_kli = −2θ_sφ_sij",
            &lmt_a,
            tol,
        ));
        // θ_s φ_skt T_kti
        let theta_phi_t = |i: usize| {
            let mut acc = S::zero();
            for (s, ts) in th.iter().enumerate() {
                if ts.is_zero() {
                    continue;
                }
                for k in 0..n {
                    for u in 0..n {
                        let p = ph.get(&[s, k, u]).mul_ref(t.get(&[k, u, i]));
                        acc.add_prod(ts, &p);
                    }
                }
            }
            acc
        };
        let sigma_phi = |i: usize| {
            let mut acc = S::zero();
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        acc.add_prod(sg.get(&[i, a, b, c]), ph.get(&[a, b, c]));
                    }
                }
            }
            acc
        };
        let lmt_b = residual_over(n, 1, |x| {
            let i = x[0];
            let mut mid = S::zero();
            for a in 0..n {
                for b in 0..n {
                    for s in 0..n {
                        for c in 0..n {
                            let p = t.get(&[a, b, s]).mul_ref(ph.get(&[a, b, c]));
                            mid.add_prod(&p, t.get(&[s, c, i]));
                        }
                    }
                }
            }
            let sp = sigma_phi(i);
            let mut r = Residual::zero();
            r.observe(&sp, &mid.scale_int(-3));
            r.observe(&sp, &theta_phi_t(i).scale_int(3));
            (r.value, zero.clone())
        });
        out.push(Check::identity(
            "g2.sigma_phi_contraction",
            "σ_iabcφ_abc = −3T_absφ_abcT_sci = 3θ_sφ_sktT_kti",
            &lmt_b,
            tol,
        ));

        let dth = g.algebra.ce_d(&self.theta);
        let dnt = self.d_nabla_theta();
        out.push(Check::identity(
            "g2.lee_derivative_split",
            "dθ = d^∇θ + θ⌟T",
            &dth.residual(&dnt.add(&d.t.interior(&self.theta))),
            tol,
        ));
        out.push(Check::identity(
            "g2.lee_derivative_in_g2",
            "dθ ∈ Λ²₁₄",
            &lambda2_14_residual(&dth),
            tol,
        ));
        out.push(Check::identity(
            "g2.codifferential_of_torsion",
            "δT = d^∇θ − dλ⌟φ, dλ = 0",
            &d.delta_t.residual(&dnt),
            tol,
        ));
        out.push(Check::identity(
            "g2.ricci_formula",
            "Ric_ij = (1/12)dT_iabcΦ_jabc − ∇_iθ_j",
            &g.ricci().residual(&self.ricci_formula()),
            tol,
        ));
        let mut scal = Residual::zero();
        scal.observe(&g.scalar_curvature(), &self.scalar_formula());
        out.push(Check::identity(
            "g2.scalar_formula",
            "Scal = 3δθ + 2‖θ‖² − ⅓‖T‖² + 2λ²",
            &scal,
            tol,
        ));
        let dtt_a = residual_over(n, 1, |x| {
            let i = x[0];
            let mut acc = S::zero();
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let p = dt
                            .get(&[i, a, b, c])
                            .add_ref(&nt.get(&[i, a, b, c]).scale_int(2));
                        acc.add_prod(&p, ph.get(&[a, b, c]));
                    }
                }
            }
            (acc, zero.clone())
        });
        out.push(Check::identity(
            "g2.dT_phi_contraction",
            "dT_iabcφ_abc + 2∇_iT_abcφ_abc = −12dλ_i = 0",
            &dtt_a,
            tol,
        ));
        let dtt_b = residual_over(n, 1, |x| {
            let i = x[0];
            let mut acc = S::zero();
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        acc.add_prod(nt.get(&[a, b, c, i]), ph.get(&[a, b, c]));
                    }
                }
            }
            let mut tp = S::zero();
            for (s, ts) in th.iter().enumerate() {
                for k in 0..n {
                    for u in 0..n {
                        let p = t.get(&[s, k, u]).mul_ref(ph.get(&[k, u, i]));
                        tp.add_prod(ts, &p);
                    }
                }
            }
            let lhs = acc.scale_int(3);
            let mut r = Residual::zero();
            r.observe(&lhs, &sigma_phi(i).scale_int(2));
            r.observe(&lhs, &tp.scale_int(6));
            (r.value, zero.clone())
        });
        out.push(Check::identity(
            "g2.nabla_T_phi_contraction",
            "3∇_aT_bciφ_abc = 2σ_iabcφ_abc = 6θ_sT_sktφ_kti",
            &dtt_b,
            tol,
        ));
        let theta_sq = self.theta.inner(&self.theta);
        let t_sq = d.norm_sq();
        let lam_sq = lam.mul_ref(lam);
        let mut ng4 = Residual::zero();
        ng4.observe(
            &sg.dot(&bp),
            &t_sq
                .scale_int(-2)
                .add_ref(&theta_sq.scale_int(12))
                .add_ref(&lam_sq.scale_int(12)),
        );
        out.push(Check::identity(
            "g2.sigma_big_phi_trace",
            "σ_jabcΦ_jabc = −2‖T‖² + 12‖θ‖² + 12λ²",
            &ng4,
            tol,
        ));
        let mut g221 = Residual::zero();
        g221.observe(
            &dt.dot(&bp),
            &self
                .nabla_theta
                .trace()
                .scale_int(-24)
                .sub_ref(&t_sq.scale_int(4))
                .add_ref(&theta_sq.scale_int(24))
                .add_ref(&lam_sq.scale_int(24)),
        );
        out.push(Check::identity(
            "g2.dT_big_phi_trace",
            "dT_jabcΦ_jabc = −24∇_jθ_j − 4‖T‖² + 24‖θ‖² + 24λ²",
            &g221,
            tol,
        ));
        let inst = self.instanton();
        out.push(Check::identity(
            "g2.holonomy_in_g2",
            "R_ijabφ_abk = 0",
            &inst.second_pair,
            tol,
        ));
        out.push(Check::equivalence(
            "g2.instanton_characterizations_agree",
            "R_abijφ_abk = 0 ⟺ R_abijΦ_abkl = −2R_klij",
            &[("R_abij*phi_abk=0", inst.first_pair.passes(tol))],
            &[(
                "R_abij*Phi_abkl=-2R_klij",
                inst.first_pair_four_form.passes(tol),
            )],
            Status::Asserted,
        ));
        out
    }

    /// Hypothesis and conclusion flags of the G₂ instanton theorems, each
    /// asserted as an implication on this instance.
    pub fn theorem_checks(&self, tol: Tolerance) -> Vec<Check> {
        let g = &self.geometry;
        let d = &g.data;
        let inst = self.instanton();
        let instanton = inst.is_instanton(tol);
        let classes = self.structure.classes(tol);
        let nabla_theta_zero = self.nabla_theta.norm_residual().passes(tol);
        let d_nabla_theta_zero = self.d_nabla_theta().norm_residual().passes(tol);
        let cocal = classes.cocalibrated;
        let delta_theta_zero = g
            .algebra
            .codifferential(&self.theta)
            .norm_residual()
            .passes(tol);
        let dnt_zero = d.d_nabla_t.norm_residual().passes(tol);
        let dt_2sigma = d.dt.residual(&d.sigma.scale(&S::from_int(2))).passes(tol);
        let nabla_t_zero = d.nabla_t.norm_residual().passes(tol);
        let delta_t_zero = d.delta_t.norm_residual().passes(tol);
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
        let delta_t_g2 = lambda2_14_residual(&d.delta_t).passes(tol);
        // Functions built from left-invariant data are constant.
        let d_norm_t_zero = true;
        let d_scal_zero = true;
        let constant_type = classes.constant_type;

        let mut out = Vec::new();
        out.push(Check::implication(
            "g2.theorem.instanton_codifferential_in_g2",
            "integrable ∧ R ∈ g₂ ⇒ δT ∈ Λ²₁₄",
            &[("instanton", instanton)],
            &[("delta_T_in_g2", delta_t_g2)],
            Status::Asserted,
        ));

        let r = g.curvature.tensor();
        let th = self.theta.as_vector();
        let bi24 = residual_over(7, 3, |x| {
            let (p, l, m) = (x[0], x[1], x[2]);
            let mut lhs = S::zero();
            for i in 0..7 {
                let mut idx = [i, p, l, m];
                lhs.add_assign_ref(&g.connection.derivative_entry(r, i, &mut idx));
            }
            let mut rhs = S::zero();
            for (s, ts) in th.iter().enumerate() {
                rhs.add_prod(ts, r.get(&[s, p, l, m]));
            }
            (lhs, rhs)
        });
        out.push(Check::conditional_identity(
            "g2.theorem.instanton_curvature_divergence",
            "R ∈ g₂ ⇒ ∇_iR_iplm = θ_rR_rplm",
            &[("instanton", instanton)],
            &bi24,
            tol,
        ));
        let t = d.t.to_dense();
        let bp = self.structure.big_phi.to_dense();
        let m2 = residual_over(7, 3, |x| {
            let (p, l, m) = (x[0], x[1], x[2]);
            let mut lhs = S::zero();
            for i in 0..7 {
                for j in 0..7 {
                    for k in 0..7 {
                        let b = bp.get(&[i, j, k, p]);
                        if b.is_zero() {
                            continue;
                        }
                        for s in 0..7 {
                            let q = t.get(&[i, j, s]).mul_ref(b);
                            lhs.add_prod(&q, r.get(&[s, k, l, m]));
                        }
                    }
                }
            }
            let mut rhs = S::zero();
            for (s, ts) in th.iter().enumerate() {
                rhs.add_prod(ts, r.get(&[s, p, l, m]));
            }
            (lhs, rhs.scale_int(2))
        });
        out.push(Check::conditional_identity(
            "g2.theorem.instanton_torsion_curvature_contraction",
            "R ∈ g₂ ⇒ T_ijsΦ_ijkpR_sklm = 2θ_rR_rplm",
            &[("instanton", instanton)],
            &m2,
            tol,
        ));
        out.push(Check::implication(
            "g2.theorem.instanton_with_closed_lee_derivative",
            "R ∈ g₂ ∧ d^∇θ = 0 ⇒ δT = 0 ∧ Ric symmetric ∧ constant type",
            &[
                ("instanton", instanton),
                ("d_nabla_theta=0", d_nabla_theta_zero),
            ],
            &[
                ("delta_T=0", delta_t_zero),
                ("ricci_symmetric", ric_sym),
                ("constant_type", constant_type),
            ],
            Status::Asserted,
        ));
        out.push(Check::implication(
            "g2.theorem.instanton_parallel_lee_form_dnablaT",
            "R ∈ g₂ ∧ ∇θ = 0 ⇒ d^∇T = 0",
            &[
                ("instanton", instanton),
                ("nabla_theta=0", nabla_theta_zero),
            ],
            &[("d_nabla_T=0", dnt_zero), ("dT=2sigma", dt_2sigma)],
            Status::Asserted,
        ));
        out.push(Check::implication(
            "g2.theorem.instanton_parallel_lee_form_norm",
            "R ∈ g₂ ∧ ∇θ = 0 ⇒ d‖T‖² = 0",
            &[
                ("instanton", instanton),
                ("nabla_theta=0", nabla_theta_zero),
            ],
            &[("d_norm_T=0", d_norm_t_zero)],
            Status::Asserted,
        ));
        out.push(Check::implication(
            "g2.theorem.instanton_parallel_lee_form",
            "integrable ∧ ∇θ = 0 ∧ R ∈ g₂ ⇒ ∇T = 0, constant type, Ric symmetric and parallel, ∇dT = 0",
            &[("instanton", instanton), ("nabla_theta=0", nabla_theta_zero)],
            &[
                ("nabla_T=0", nabla_t_zero),
                ("constant_type", constant_type),
                ("ricci_symmetric", ric_sym),
                ("nabla_ricci=0", nabla_ric_zero),
                ("nabla_dT=0", nabla_dt_zero),
            ],
            Status::Asserted,
        ));
        out.push(Check::implication(
            "g2.theorem.cocalibrated_instanton",
            "d*φ = 0 ∧ R ∈ g₂ ⇒ ∇T = 0 ∧ dT = 2σᵀ ∧ d‖T‖² = 0",
            &[("cocalibrated", cocal), ("instanton", instanton)],
            &[
                ("nabla_T=0", nabla_t_zero),
                ("dT=2sigma", dt_2sigma),
                ("d_norm_T=0", d_norm_t_zero),
            ],
            Status::Asserted,
        ));
        out.push(Check::implication(
            "g2.theorem.parallel_torsion_consequences",
            "∇T = 0 ⇒ d^∇T = δT = ∇θ = 0, R ∈ g₂, Ric symmetric and parallel, ∇dT = 0, d(Scal) = 0",
            &[("nabla_T=0", nabla_t_zero)],
            &[
                ("d_nabla_T=0", dnt_zero),
                ("delta_T=0", delta_t_zero),
                ("nabla_theta=0", nabla_theta_zero),
                ("instanton", instanton),
                ("ricci_symmetric", ric_sym),
                ("nabla_ricci=0", nabla_ric_zero),
                ("nabla_dT=0", nabla_dt_zero),
                ("d_scal=0", d_scal_zero),
            ],
            Status::Asserted,
        ));
        out.push(Check::equivalence(
            "g2.theorem.parallel_torsion_criterion",
            "∇T = 0 ⟺ R ∈ g₂ ∧ d^∇T = 0 ∧ d‖T‖² = 0",
            &[("nabla_T=0", nabla_t_zero)],
            &[
                ("instanton", instanton),
                ("d_nabla_T=0", dnt_zero),
                ("d_norm_T=0", d_norm_t_zero),
            ],
            Status::Asserted,
        ));
        out.push(Check::implication(
            "g2.theorem.nearly_parallel",
            "dφ = cΦ, d*φ = 0 ⇒ ∇T = 0",
            &[("nearly_parallel", classes.nearly_parallel)],
            &[("nabla_T=0", nabla_t_zero)],
            Status::Asserted,
        ));
        out.push(Check::equivalence(
            "g2.theorem.compact_instanton_criterion",
            "compact: ∇T = 0 ⟺ R ∈ g₂ ∧ d^∇T = 0",
            &[("nabla_T=0", nabla_t_zero)],
            &[("instanton", instanton), ("d_nabla_T=0", dnt_zero)],
            Status::InstanceConsistentOnly,
        ));
        out.push(Check::implication(
            "g2.theorem.compact_gauduchon_lee_form",
            "compact, constant type, δθ = 0, R ∈ g₂ ⇒ ∇θ = 0",
            &[
                ("constant_type", constant_type),
                ("delta_theta=0", delta_theta_zero),
                ("instanton", instanton),
            ],
            &[
                ("nabla_theta=0", nabla_theta_zero),
                ("delta_T=0", delta_t_zero),
            ],
            Status::InstanceConsistentOnly,
        ));
        out.push(Check::equivalence(
            "g2.theorem.compact_gauduchon_criterion",
            "compact, constant type, δθ = 0: R ∈ g₂ ⟺ ∇T = 0",
            &[("instanton", instanton && delta_theta_zero)],
            &[("nabla_T=0", nabla_t_zero && delta_theta_zero)],
            Status::InstanceConsistentOnly,
        ));
        out
    }
}

/// The members of `family` on which the canonical structure is integrable.
pub fn integrable_subfamily<S: Scalar>(family: &Family<S>, tol: Tolerance) -> Family<S> {
    family.kernel_of(
        |alg| {
            let s = G2Structure::new(alg.clone()).expect("family of dimension 7");
            s.d_big_phi()
                .sub(&s.lee_form().wedge(&s.big_phi))
                .coefficients()
                .to_vec()
        },
        tol,
    )
}

fn d_phi_dense_dot<S: Scalar>(s: &G2Structure<S>, bp: &DenseTensor<S>) -> S {
    s.d_phi().to_dense().dot(bp)
}
