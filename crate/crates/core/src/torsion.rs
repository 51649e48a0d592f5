//! Metric connections with totally skew-symmetric torsion.
//!
//! Curvature follows `R(X,Y)Z = [∇_X,∇_Y]Z − ∇_{[X,Y]}Z` with
//! `R_{ijkl} = g(R(e_i,e_j)e_k, e_l)`, Ricci is `Ric_{ij} = R_{kijk}`, and
//! `σᵀ = ½ Σ_j (e_j⌟T) ∧ (e_j⌟T)`.

use crate::error::{Error, Result};
use crate::exterior::{DenseTensor, KForm};
use crate::lie::{ConnectionCoeffs, LieAlgebra};
use crate::report::{Check, Status};
use crate::scalar::{Residual, Scalar, Tolerance};

/// `R_{ijkl}` as a dense rank-4 array.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureTensor<S> {
    r: DenseTensor<S>,
}

impl<S: Scalar> CurvatureTensor<S> {
    pub fn from_tensor(r: DenseTensor<S>) -> Self {
        assert_eq!(r.rank(), 4, "curvature has rank 4");
        CurvatureTensor { r }
    }

    pub fn dim(&self) -> usize {
        self.r.dim()
    }

    pub fn tensor(&self) -> &DenseTensor<S> {
        &self.r
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> &S {
        self.r.get(&[i, j, k, l])
    }

    pub fn is_flat(&self) -> bool {
        self.r.is_zero()
    }

    /// `Ric_{ij} = R_{kijk}`.
    pub fn ricci(&self) -> DenseTensor<S> {
        let n = self.dim();
        DenseTensor::from_fn(n, 2, |x| {
            let mut acc = S::zero();
            for k in 0..n {
                acc.add_assign_ref(self.get(k, x[0], x[1], k));
            }
            acc
        })
    }

    pub fn scalar(&self) -> S {
        self.ricci().trace()
    }

    /// Residual of `R_{ijkl} = −R_{jikl} = −R_{ijlk}`.
    pub fn antisymmetry_residual(&self) -> Residual<S> {
        residual_over(self.dim(), 4, |x| {
            let v = self.get(x[0], x[1], x[2], x[3]);
            let a = -self.get(x[1], x[0], x[2], x[3]).clone();
            let b = -self.get(x[0], x[1], x[3], x[2]).clone();
            (v.add_ref(v), a.add_ref(&b))
        })
    }

    /// Residual of `R_{ijkl} = R_{klij}`.
    pub fn pair_symmetry_residual(&self) -> Residual<S> {
        residual_over(self.dim(), 4, |x| {
            (
                self.get(x[0], x[1], x[2], x[3]).clone(),
                self.get(x[2], x[3], x[0], x[1]).clone(),
            )
        })
    }

    /// Adds `delta` to one entry without restoring any symmetry.
    pub fn bump(&mut self, idx: [usize; 4], delta: &S) {
        let v = self.r.get_mut(&idx);
        *v = v.add_ref(delta);
    }
}

/// Max-norm of `lhs − rhs` over every index tuple of the given rank.
pub(crate) fn residual_over<S: Scalar>(
    n: usize,
    rank: usize,
    mut f: impl FnMut(&[usize]) -> (S, S),
) -> Residual<S> {
    let mut r = Residual::zero();
    let mut idx = vec![0usize; rank];
    loop {
        let (a, b) = f(&idx);
        r.observe(&a, &b);
        let mut s = rank;
        loop {
            if s == 0 {
                return r;
            }
            s -= 1;
            idx[s] += 1;
            if idx[s] < n {
                break;
            }
            idx[s] = 0;
        }
    }
}

/// `Γ = Γᵍ + ½T`: the metric connection with torsion `T`.
pub fn with_torsion<S: Scalar>(
    lc: &ConnectionCoeffs<S>,
    t: &KForm<S>,
) -> Result<ConnectionCoeffs<S>> {
    if t.degree() != 3 {
        return Err(Error::DegreeMismatch(t.degree(), 3));
    }
    if t.dim() != lc.dim() {
        return Err(Error::DimensionMismatch(t.dim(), lc.dim()));
    }
    let half = S::from_ratio(1, 2);
    let td = t.to_dense().scale(&half);
    Ok(ConnectionCoeffs::new(lc.tensor().add(&td)))
}

/// Hull connection: the metric connection with torsion `−T`.
pub fn hull<S: Scalar>(lc: &ConnectionCoeffs<S>, t: &KForm<S>) -> Result<ConnectionCoeffs<S>> {
    with_torsion(lc, &t.neg())
}

/// `T_{ijk} = Γ_{ijk} − Γ_{jik} − c_{ij}^k`, returned when totally skew.
pub fn torsion_of<S: Scalar>(alg: &LieAlgebra<S>, c: &ConnectionCoeffs<S>) -> Result<KForm<S>> {
    let n = alg.dim();
    if c.dim() != n {
        return Err(Error::DimensionMismatch(c.dim(), n));
    }
    let t = DenseTensor::from_fn(n, 3, |x| {
        c.get(x[0], x[1], x[2])
            .sub_ref(c.get(x[1], x[0], x[2]))
            .sub_ref(alg.constant(x[0], x[1], x[2]))
    });
    if !t.is_antisymmetric() {
        return Err(Error::NonSkewTorsion(
            "connection has non-3-form torsion".to_string(),
        ));
    }
    Ok(t.alternate())
}

/// `R_{ijkl} = Γ_{jkm}Γ_{iml} − Γ_{ikm}Γ_{jml} − c_{ij}^m Γ_{mkl}`.
pub fn curvature<S: Scalar>(alg: &LieAlgebra<S>, c: &ConnectionCoeffs<S>) -> CurvatureTensor<S> {
    let n = alg.dim();
    let r = DenseTensor::from_fn(n, 4, |x| {
        let (i, j, k, l) = (x[0], x[1], x[2], x[3]);
        let mut acc = S::zero();
        for (m, g) in c.row(j, k) {
            acc.add_prod(g, c.get(i, *m, l));
        }
        for (m, g) in c.row(i, k) {
            let p = g.mul_ref(c.get(j, *m, l));
            if !p.is_zero() {
                acc = acc.sub_ref(&p);
            }
        }
        for m in 0..n {
            let cc = alg.constant(i, j, m);
            if !cc.is_zero() {
                let p = cc.mul_ref(c.get(m, k, l));
                if !p.is_zero() {
                    acc = acc.sub_ref(&p);
                }
            }
        }
        acc
    });
    CurvatureTensor::from_tensor(r)
}

/// `σᵀ = ½ Σ_j (e_j⌟T) ∧ (e_j⌟T)`.
pub fn sigma_t<S: Scalar>(t: &KForm<S>) -> KForm<S> {
    assert_eq!(t.degree(), 3, "sigma_t expects a 3-form");
    let n = t.dim();
    let mut acc = KForm::zero(n, 4.min(n));
    for j in 0..n {
        let a = t.interior_basis(j);
        acc = acc.add(&a.wedge(&a));
    }
    acc.scale(&S::from_ratio(1, 2))
}

/// `R_{ijkl} − Rʰ_{klij} − ½dT_{ijkl}`, max-normed.
pub fn hull_relation<S: Scalar>(
    r: &CurvatureTensor<S>,
    rh: &CurvatureTensor<S>,
    dt: &DenseTensor<S>,
) -> Residual<S> {
    let half = S::from_ratio(1, 2);
    residual_over(r.dim(), 4, |x| {
        (
            r.get(x[0], x[1], x[2], x[3]).clone(),
            rh.get(x[2], x[3], x[0], x[1])
                .add_ref(&dt.get(x).mul_ref(&half)),
        )
    })
}

/// Torsion-derived quantities of a connection with skew torsion.
#[derive(Clone, Debug, PartialEq)]
pub struct TorsionData<S> {
    pub t: KForm<S>,
    pub sigma: KForm<S>,
    /// `(∇T)_{ijkl} = (∇_{e_i}T)_{jkl}`.
    pub nabla_t: DenseTensor<S>,
    /// `d^∇T = 4·Alt(∇T)`.
    pub d_nabla_t: KForm<S>,
    pub dt: KForm<S>,
    /// `δT` as the codifferential of the 3-form.
    pub delta_t: KForm<S>,
}

impl<S: Scalar> TorsionData<S> {
    pub fn compute(alg: &LieAlgebra<S>, conn: &ConnectionCoeffs<S>, t: &KForm<S>) -> Self {
        let nabla_t = conn.covariant_derivative_form(t);
        let d_nabla_t = nabla_t.alternate().scale(&S::from_int(4));
        TorsionData {
            t: t.clone(),
            sigma: sigma_t(t),
            d_nabla_t,
            dt: alg.ce_d(t),
            delta_t: alg.codifferential(t),
            nabla_t,
        }
    }

    /// `δT_{ab} = −(∇T)_{iiab}`.
    pub fn delta_t_from_trace(&self) -> KForm<S> {
        let n = self.t.dim();
        let d = DenseTensor::from_fn(n, 2, |x| {
            let mut acc = S::zero();
            for i in 0..n {
                acc.add_assign_ref(self.nabla_t.get(&[i, i, x[0], x[1]]));
            }
            -acc
        });
        d.alternate()
    }

    /// `‖T‖² = T_{ijk}T_{ijk}`.
    pub fn norm_sq(&self) -> S {
        self.t.tensor_norm_sq()
    }

    pub fn is_parallel(&self) -> bool {
        self.nabla_t.is_zero()
    }
}

/// A Lie algebra with a metric connection of skew torsion and everything
/// derived from it.
#[derive(Clone, Debug)]
pub struct TorsionGeometry<S> {
    pub algebra: LieAlgebra<S>,
    pub levi_civita: ConnectionCoeffs<S>,
    pub connection: ConnectionCoeffs<S>,
    pub data: TorsionData<S>,
    pub curvature: CurvatureTensor<S>,
}

impl<S: Scalar> TorsionGeometry<S> {
    pub fn new(algebra: LieAlgebra<S>, t: &KForm<S>) -> Result<Self> {
        if t.dim() != algebra.dim() {
            return Err(Error::DimensionMismatch(t.dim(), algebra.dim()));
        }
        let levi_civita = algebra.levi_civita();
        let connection = with_torsion(&levi_civita, t)?;
        let data = TorsionData::compute(&algebra, &connection, t);
        let curvature = curvature(&algebra, &connection);
        Ok(TorsionGeometry {
            algebra,
            levi_civita,
            connection,
            data,
            curvature,
        })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn ricci(&self) -> DenseTensor<S> {
        self.curvature.ricci()
    }

    pub fn scalar_curvature(&self) -> S {
        self.curvature.scalar()
    }

    pub fn hull_connection(&self) -> ConnectionCoeffs<S> {
        hull(&self.levi_civita, &self.data.t).expect("torsion is a 3-form")
    }

    pub fn hull_curvature(&self) -> CurvatureTensor<S> {
        curvature(&self.algebra, &self.hull_connection())
    }

    pub fn riemannian_curvature(&self) -> CurvatureTensor<S> {
        curvature(&self.algebra, &self.levi_civita)
    }

    /// `∇ᵍT` with the direction in the first slot.
    pub fn levi_civita_nabla_t(&self) -> DenseTensor<S> {
        self.levi_civita.covariant_derivative_form(&self.data.t)
    }

    /// Max-norm of the second Bianchi identity
    /// `𝔖_{ijk} {∇_iR_{jklm} + T_{ijs}R_{sklm}} = 0`, evaluated entrywise.
    pub fn second_bianchi_residual(&self) -> Residual<S> {
        let n = self.dim();
        let r = self.curvature.tensor();
        let t = self.data.t.to_dense();
        let mut res = Residual::zero();
        let zero = S::zero();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    for l in 0..n {
                        for m in (l + 1)..n {
                            let mut acc = S::zero();
                            for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                                let mut idx = [b, c, l, m];
                                acc.add_assign_ref(
                                    &self.connection.derivative_entry(r, a, &mut idx),
                                );
                                for s in 0..n {
                                    acc.add_prod(t.get(&[a, b, s]), r.get(&[s, c, l, m]));
                                }
                            }
                            res.observe(&acc, &zero);
                        }
                    }
                }
            }
        }
        res
    }

    /// The three conditions of the pair-symmetry equivalence:
    /// `∇T` is a 4-form, `R_{ijkl} = R_{klij}`, `dT = 4∇ᵍT`.
    pub fn pair_symmetry_flags(&self, tol: Tolerance) -> [(Residual<S>, bool); 3] {
        let nt = &self.data.nabla_t;
        let f1 = residual_over(self.dim(), 4, |x| {
            (
                nt.get(x).clone(),
                -nt.get(&[x[1], x[0], x[2], x[3]]).clone(),
            )
        });
        let f2 = self.curvature.pair_symmetry_residual();
        let ngt = self.levi_civita_nabla_t().scale(&S::from_int(4));
        let f3 = self.data.dt.to_dense().residual(&ngt);
        [f1, f2, f3].map(|r| {
            let ok = r.passes(tol);
            (r, ok)
        })
    }

    /// Every universal identity for a metric connection with skew torsion,
    /// one check per identity.
    pub fn identity_suite(&self, tol: Tolerance) -> Vec<Check> {
        let n = self.dim();
        let half = S::from_ratio(1, 2);
        let quarter = S::from_ratio(1, 4);
        let three_halves = S::from_ratio(3, 2);
        let d = &self.data;
        let t = d.t.to_dense();
        let dt = d.dt.to_dense();
        let sg = d.sigma.to_dense();
        let nt = &d.nabla_t;
        let rr = &self.curvature;
        let mut out = Vec::new();

        out.push(Check::identity(
            "connection.metric",
            "Γ_ijk = −Γ_ikj",
            &self.connection.metric_residual(),
            tol,
        ));
        let round = match torsion_of(&self.algebra, &self.connection) {
            Ok(t2) => t2.residual(&d.t),
            Err(_) => Residual::of(S::one(), S::one()),
        };
        out.push(Check::identity(
            "connection.torsion_round_trip",
            "T_ijk = Γ_ijk − Γ_jik − c_ij^k",
            &round,
            tol,
        ));
        out.push(Check::identity(
            "curvature.antisymmetry",
            "R_ijkl = −R_jikl = −R_ijlk",
            &rr.antisymmetry_residual(),
            tol,
        ));
        let sig_comp = residual_over(n, 4, |x| {
            let (i, j, k, l) = (x[0], x[1], x[2], x[3]);
            let mut acc = S::zero();
            for a in 0..n {
                acc.add_prod(t.get(&[i, j, a]), t.get(&[k, l, a]));
                acc.add_prod(t.get(&[j, k, a]), t.get(&[i, l, a]));
                acc.add_prod(t.get(&[k, i, a]), t.get(&[j, l, a]));
            }
            (sg.get(x).clone(), acc)
        });
        out.push(Check::identity(
            "sigma.components",
            "σ_ijkl = T_ija T_kla + T_jka T_ila + T_kia T_jla",
            &sig_comp,
            tol,
        ));
        out.push(Check::identity(
            "torsion.dT_split",
            "dT = d^∇T + 2σᵀ",
            &d.dt
                .residual(&d.d_nabla_t.add(&d.sigma.scale(&S::from_int(2)))),
            tol,
        ));
        let ngt = self.levi_civita_nabla_t();
        out.push(Check::identity(
            "torsion.levi_civita_derivative",
            "∇ᵍT = ∇T + ½σᵀ",
            &ngt.residual(&nt.add(&sg.scale(&half))),
            tol,
        ));
        out.push(Check::identity(
            "torsion.dT_from_levi_civita",
            "dT = 4·Alt(∇ᵍT)",
            &d.dt.residual(&ngt.alternate().scale(&S::from_int(4))),
            tol,
        ));
        out.push(Check::identity(
            "torsion.codifferential_two_ways",
            "δT_ab = δ^∇T_ab = −∇_i T_iab",
            &d.delta_t.residual(&d.delta_t_from_trace()),
            tol,
        ));
        let g = |i, j, k, l| rr.get(i, j, k, l);
        let bianchi1 = residual_over(n, 4, |x| {
            let (i, j, k, l) = (x[0], x[1], x[2], x[3]);
            let lhs = g(i, j, k, l).add_ref(g(j, k, i, l)).add_ref(g(k, i, j, l));
            let rhs = dt.get(x).sub_ref(sg.get(x)).add_ref(nt.get(&[l, i, j, k]));
            (lhs, rhs)
        });
        out.push(Check::identity(
            "curvature.first_bianchi",
            "R_ijkl + R_jkil + R_kijl = dT_ijkl − σ_ijkl + ∇_l T_ijk",
            &bianchi1,
            tol,
        ));
        let cyclic = residual_over(n, 4, |x| {
            let (i, j, k, l) = (x[0], x[1], x[2], x[3]);
            let lhs = g(i, j, k, l)
                .add_ref(g(j, k, i, l))
                .add_ref(g(k, i, j, l))
                .sub_ref(g(l, i, j, k))
                .sub_ref(g(l, j, k, i))
                .sub_ref(g(l, k, i, j));
            let rhs = dt.get(x).mul_ref(&three_halves).sub_ref(sg.get(x));
            (lhs, rhs)
        });
        out.push(Check::identity(
            "curvature.cyclic_difference",
            "𝔖_ijk R_ijkl − 𝔖_ijk R_lijk = (3/2)dT − σᵀ",
            &cyclic,
            tol,
        ));
        let last = residual_over(n, 4, |x| {
            let (i, j, k, l) = (x[0], x[1], x[2], x[3]);
            let lhs = g(l, i, j, k).add_ref(g(l, j, k, i)).add_ref(g(l, k, i, j));
            let rhs = nt.get(&[l, i, j, k]).sub_ref(&dt.get(x).mul_ref(&half));
            (lhs, rhs)
        });
        out.push(Check::identity(
            "curvature.cyclic_last_slots",
            "R_lijk + R_ljki + R_lkij = −½dT_ijkl + ∇_l T_ijk",
            &last,
            tol,
        ));
        let two = S::from_int(2);
        let pair = residual_over(n, 4, |x| {
            let (i, j, k, l) = (x[0], x[1], x[2], x[3]);
            let lhs = g(i, j, k, l).sub_ref(g(k, l, i, j)).mul_ref(&two);
            let rhs = nt
                .get(&[i, j, k, l])
                .sub_ref(nt.get(&[j, i, k, l]))
                .sub_ref(nt.get(&[k, i, j, l]))
                .add_ref(nt.get(&[l, i, j, k]));
            (lhs, rhs)
        });
        out.push(Check::identity(
            "curvature.pair_difference",
            "2R_ijkl − 2R_klij = ∇_iT_jkl − ∇_jT_ikl − ∇_kT_ijl + ∇_lT_ijk",
            &pair,
            tol,
        ));

        let ric = rr.ricci();
        let dd = d.delta_t.to_dense();
        out.push(Check::identity(
            "ricci.antisymmetric_part",
            "Ric_ij − Ric_ji = −δT_ij",
            &ric.sub(&ric.transpose()).residual(&dd.scale(&-S::one())),
            tol,
        ));
        let rg = self.riemannian_curvature();
        let ricg = rg.ricci();
        let tt = DenseTensor::from_fn(n, 2, |x| {
            let mut acc = S::zero();
            for a in 0..n {
                for b in 0..n {
                    acc.add_prod(t.get(&[x[0], a, b]), t.get(&[x[1], a, b]));
                }
            }
            acc
        });
        let ricg_rhs = ric.add(&dd.scale(&half)).add(&tt.scale(&quarter));
        out.push(Check::identity(
            "ricci.riemannian_relation",
            "Ricᵍ_ij = Ric_ij + ½δT_ij + ¼T_iab T_jab",
            &ricg.residual(&ricg_rhs),
            tol,
        ));
        let mut scal = Residual::zero();
        scal.observe(
            &rg.scalar(),
            &rr.scalar().add_ref(&d.norm_sq().mul_ref(&quarter)),
        );
        out.push(Check::identity(
            "ricci.riemannian_scalar",
            "Scalᵍ = Scal + ¼‖T‖²",
            &scal,
            tol,
        ));
        out.push(Check::identity(
            "curvature.second_bianchi",
            "𝔖_ijk {∇_iR_jklm + T_ijs R_sklm} = 0",
            &self.second_bianchi_residual(),
            tol,
        ));

        let nric = self.connection.covariant_derivative(&ric);
        let sixth = S::from_ratio(1, 6);
        let zero = S::zero();
        let cb2 = residual_over(n, 1, |x| {
            let j = x[0];
            let mut acc = S::zero();
            for i in 0..n {
                acc.add_assign_ref(&nric.get(&[i, j, i]).scale_int(-2));
            }
            for a in 0..n {
                for b in 0..n {
                    acc.add_prod(dd.get(&[a, b]), t.get(&[a, b, j]));
                    for c in 0..n {
                        let p = t.get(&[a, b, c]).mul_ref(dt.get(&[j, a, b, c]));
                        acc.add_prod(&p, &sixth);
                    }
                }
            }
            (acc, zero.clone())
        });
        out.push(Check::identity(
            "curvature.contracted_second_bianchi",
            "−2∇_iRic_ji + δT_ab T_abj + (1/6)T_abc dT_jabc = 0",
            &cb2,
            tol,
        ));
        let nd = self.connection.covariant_derivative(&dd);
        let div = residual_over(n, 1, |x| {
            let j = x[0];
            let mut lhs = S::zero();
            let mut rhs = S::zero();
            for i in 0..n {
                lhs.add_assign_ref(nd.get(&[i, i, j]));
                for a in 0..n {
                    rhs.add_prod(dd.get(&[i, a]), t.get(&[i, a, j]));
                }
            }
            (lhs, rhs.mul_ref(&half))
        });
        out.push(Check::identity(
            "torsion.codifferential_divergence",
            "∇_i δT_ij = ½ δT_ia T_iaj",
            &div,
            tol,
        ));
        out.push(Check::identity(
            "hull.curvature_relation",
            "R_ijkl − Rʰ_klij = ½dT_ijkl",
            &hull_relation(rr, &self.hull_curvature(), &dt),
            tol,
        ));
        let st_first = residual_over(n, 1, |x| {
            let mut acc = S::zero();
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        acc.add_prod(sg.get(&[a, b, c, x[0]]), t.get(&[a, b, c]));
                    }
                }
            }
            (acc, zero.clone())
        });
        out.push(Check::identity(
            "sigma.torsion_contraction_leading",
            "σ_ijkl T_ijk = 0",
            &st_first,
            tol,
        ));
        let st_last = residual_over(n, 1, |x| {
            let mut acc = S::zero();
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        acc.add_prod(sg.get(&[x[0], a, b, c]), t.get(&[a, b, c]));
                    }
                }
            }
            (acc, zero.clone())
        });
        out.push(Check::identity(
            "sigma.torsion_contraction_trailing",
            "σ_jabc T_abc = 0",
            &st_last,
            tol,
        ));
        let dnt_zero = d.d_nabla_t.norm_residual().passes(tol);
        let dtt = residual_over(n, 1, |x| {
            let mut acc = S::zero();
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        acc.add_prod(dt.get(&[x[0], a, b, c]), t.get(&[a, b, c]));
                    }
                }
            }
            (acc, zero.clone())
        });
        out.push(Check::conditional_identity(
            "torsion.dT_contraction",
            "d^∇T = 0 ⇒ dT_jabc T_abc = 2σ_jabc T_abc = 0",
            &[("d^∇T=0", dnt_zero)],
            &dtt,
            tol,
        ));
        let [f1, f2, f3] = self.pair_symmetry_flags(tol);
        out.push(Check::equivalence(
            "curvature.pair_symmetry_equivalence",
            "∇T ∈ Λ⁴ ⟺ R_ijkl = R_klij ⟺ dT = 4∇ᵍT",
            &[("nabla_T_is_4form", f1.1), ("pair_symmetric", f2.1)],
            &[("pair_symmetric", f2.1), ("dT=4nabla_g_T", f3.1)],
            Status::Asserted,
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Rational;

    #[test]
    fn sigma_of_decomposable_vanishes() {
        let t = KForm::<Q>::from_labels(7, 3, &[(1, &[1, 2, 3])]);
        assert!(sigma_t(&t).is_zero());
        let t = KForm::<Q>::from_labels(7, 3, &[(1, &[1, 2, 3]), (1, &[4, 5, 6])]);
        assert!(sigma_t(&t).is_zero());
    }

    #[test]
    fn abelian_with_random_torsion_is_half_t() {
        let t = KForm::<Q>::from_labels(5, 3, &[(2, &[1, 2, 3]), (-1, &[2, 4, 5])]);
        let alg = LieAlgebra::<Q>::abelian(5);
        let c = with_torsion(&alg.levi_civita(), &t).unwrap();
        assert_eq!(c.get(0, 1, 2), &Q::integer(1));
        assert_eq!(torsion_of(&alg, &c).unwrap(), t);
    }

    #[test]
    fn non_skew_torsion_is_rejected() {
        let alg = LieAlgebra::<Q>::abelian(3);
        let mut g = DenseTensor::zeros(3, 3);
        g.set(&[0, 1, 2], Q::integer(1));
        g.set(&[0, 2, 1], Q::integer(-1));
        let c = ConnectionCoeffs::new(g);
        assert!(matches!(
            torsion_of(&alg, &c),
            Err(Error::NonSkewTorsion(_))
        ));
    }

    #[test]
    fn wrong_degree_is_rejected() {
        let lc = ConnectionCoeffs::<Q>::zero(4);
        assert!(with_torsion(&lc, &KForm::zero(4, 2)).is_err());
    }

    #[test]
    fn residual_over_visits_every_tuple() {
        let mut count = 0;
        let _ = residual_over::<Q>(3, 2, |_| {
            count += 1;
            (Q::integer(0), Q::integer(0))
        });
        assert_eq!(count, 9);
    }
}
