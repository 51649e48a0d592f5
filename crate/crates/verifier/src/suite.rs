//! Runs every check on one manifest, in a fixed order.

use holonomy_core::g2::{canonical_phi, g2_instanton_check};
use holonomy_core::scalar::DEFAULT_EPSILON;
use holonomy_core::spin7::extension_checks;
use holonomy_core::{
    Check, DenseTensor, G2Structure, KForm, Rational, Residual, Scalar, Spin7Structure, Tolerance,
    TorsionGeometry, VerificationReport,
};

use crate::manifest::{convert_form, Expected, Fault, Manifest, ScalarMode, StructureKind};

/// Runs the manifest in its own scalar mode with the default float tolerance.
pub fn run_suite(m: &Manifest) -> VerificationReport {
    run_with(m, m.scalar_mode, DEFAULT_EPSILON)
}

pub fn run_with(m: &Manifest, mode: ScalarMode, epsilon: f64) -> VerificationReport {
    match mode {
        ScalarMode::Exact => run::<Rational>(m, Tolerance::Exact),
        ScalarMode::Float => run::<f64>(m, Tolerance::Relative(epsilon)),
    }
}

/// Conventions shared by every report.
pub fn record_conventions(rep: &mut VerificationReport, dim: usize) {
    rep.convention("structure_constants", "c_ij^k = −de^k(e_i, e_j)");
    rep.convention("codifferential", "δ = (−1)^(n(p+1)+1) *d* on p-forms");
    rep.convention("curvature", "R_ijkl = g(R(e_i, e_j)e_k, e_l)");
    rep.convention("ricci", "Ric_ij = R_kijk");
    rep.convention("form_inner_product", "(α, β) = Σ_{I increasing} α_I β_I");
    rep.convention("labels", if dim == 8 { "e0..e7" } else { "e1..e7" });
    if dim == 7 {
        rep.convention("phi", canonical_phi::<Rational>().render(1));
    } else {
        rep.convention("psi_sign", "Ψ = −e0∧φ − *φ");
    }
}

/// Values compared against manifest expectations.
struct Observed<S> {
    torsion: KForm<S>,
    lee_form: KForm<S>,
    d_lee_form: KForm<S>,
    lambda: Option<S>,
    torsion_norm: S,
    scalar_curvature: S,
    flat: bool,
    zero_connection: bool,
    parallel_torsion: bool,
    closed_torsion: bool,
    coclosed_torsion: bool,
    closed_lee_form: bool,
    instanton: bool,
    hull_instanton: bool,
    unimodular: bool,
}

fn vanishes<S: Scalar>(t: &DenseTensor<S>, tol: Tolerance) -> bool {
    Residual::of(t.max_abs(), S::zero()).passes(tol)
}

impl<S: Scalar> Observed<S> {
    fn new(
        g: &TorsionGeometry<S>,
        theta: &KForm<S>,
        lambda: Option<S>,
        instanton: bool,
        hull_instanton: bool,
        tol: Tolerance,
    ) -> Self {
        let d = &g.data;
        let d_lee_form = g.algebra.ce_d(theta);
        Observed {
            torsion: d.t.clone(),
            lee_form: theta.clone(),
            closed_lee_form: d_lee_form.norm_residual().passes(tol),
            d_lee_form,
            lambda,
            torsion_norm: d.norm_sq(),
            scalar_curvature: g.scalar_curvature(),
            flat: vanishes(g.curvature.tensor(), tol),
            zero_connection: vanishes(g.connection.tensor(), tol),
            parallel_torsion: vanishes(&d.nabla_t, tol),
            closed_torsion: d.dt.norm_residual().passes(tol),
            coclosed_torsion: d.delta_t.norm_residual().passes(tol),
            instanton,
            hull_instanton,
            unimodular: g.algebra.is_unimodular(),
        }
    }

    fn info(&self, base: usize) -> Vec<Check> {
        let mut out = vec![
            Check::info("quantity.torsion", "T", self.torsion.render(base)),
            Check::info("quantity.lee_form", "θ", self.lee_form.render(base)),
            Check::info("quantity.d_lee_form", "dθ", self.d_lee_form.render(base)),
        ];
        if let Some(l) = &self.lambda {
            out.push(Check::info(
                "quantity.lambda",
                "λ = (1/6)(dφ, *φ)",
                l.render(),
            ));
        }
        out.push(Check::info(
            "quantity.torsion_norm",
            "‖T‖² = T_ijk T_ijk",
            self.torsion_norm.render(),
        ));
        out.push(Check::info(
            "quantity.scalar_curvature",
            "Scal = Ric_ii",
            self.scalar_curvature.render(),
        ));
        for (name, anchor, v) in self
            .flags()
            .into_iter()
            .filter(|f| !f.0.contains("instanton"))
        {
            out.push(Check::info(
                &format!("quantity.{name}"),
                anchor,
                v.to_string(),
            ));
        }
        out
    }

    fn flags(&self) -> [(&'static str, &'static str, bool); 9] {
        [
            ("flat", "R = 0", self.flat),
            ("zero_connection", "Γ = 0", self.zero_connection),
            ("parallel_torsion", "∇T = 0", self.parallel_torsion),
            ("closed_torsion", "dT = 0", self.closed_torsion),
            ("coclosed_torsion", "δT = 0", self.coclosed_torsion),
            ("closed_lee_form", "dθ = 0", self.closed_lee_form),
            ("instanton", "R(X, Y) ∈ holonomy algebra", self.instanton),
            (
                "hull_instanton",
                "R⁻(X, Y) ∈ holonomy algebra",
                self.hull_instanton,
            ),
            ("unimodular", "tr ad = 0", self.unimodular),
        ]
    }

    fn compare(&self, m: &Manifest, tol: Tolerance) -> Vec<Check> {
        let base = m.label_base();
        let mut out = Vec::new();
        for (name, expected) in &m.expectations {
            let cname = format!("expect.{name}");
            let anchor = format!("manifest expectation `{name}`");
            let (residual, observed, shown) = match expected {
                Expected::Form(f) => {
                    let obs = match name.as_str() {
                        "torsion" => &self.torsion,
                        "lee_form" => &self.lee_form,
                        _ => &self.d_lee_form,
                    };
                    let exp: KForm<S> = convert_form(f);
                    (obs.residual(&exp), obs.render(base), f.render(base))
                }
                Expected::Scalar(r) => {
                    let obs = match name.as_str() {
                        "lambda" => self.lambda.clone(),
                        "torsion_norm" => Some(self.torsion_norm.clone()),
                        _ => Some(self.scalar_curvature.clone()),
                    };
                    let Some(obs) = obs else {
                        out.push(missing(&cname, &anchor, "not defined for this structure"));
                        continue;
                    };
                    let mut res = Residual::zero();
                    res.observe(&obs, &S::from_rational(r));
                    (res, obs.render(), r.to_string())
                }
                Expected::Flag(b) => {
                    let obs = self
                        .flags()
                        .iter()
                        .find(|(n, _, _)| n == name)
                        .map(|(_, _, v)| *v)
                        .expect("flag names match the manifest schema");
                    let r = if obs == *b { S::zero() } else { S::one() };
                    (Residual::of(r, S::one()), obs.to_string(), b.to_string())
                }
            };
            let mut c = Check::identity(&cname, &anchor, &residual, tol);
            c.value = Some(format!("observed {observed}; expected {shown}"));
            out.push(c);
        }
        out
    }
}

fn missing(name: &str, anchor: &str, why: &str) -> Check {
    let mut c = Check::identity(name, anchor, &Residual::of(1.0, 1.0), Tolerance::Exact);
    c.value = Some(why.to_string());
    c
}

fn inject<S: Scalar>(
    g: &mut TorsionGeometry<S>,
    fault: Option<Fault>,
    rep: &mut VerificationReport,
) {
    if let Some(Fault::Curvature) = fault {
        g.curvature.bump([0, 1, 2, 3], &S::one());
        rep.convention("injected_fault", "R_0123 += 1 (internal indices)");
    }
}

fn run<S: Scalar>(m: &Manifest, tol: Tolerance) -> VerificationReport {
    let mut rep = VerificationReport::new(m.name.clone(), S::MODE);
    record_conventions(&mut rep, m.dim);
    let alg = m.algebra::<S>();

    rep.push(Check::identity(
        "algebra.jacobi",
        "c_ij^m c_mk^l + c_jk^m c_mi^l + c_ki^m c_mj^l = 0",
        &alg.validate().residual,
        tol,
    ));

    match &m.structure {
        StructureKind::G2 => run_g2(&mut rep, m, G2Structure::new(alg).expect("dim 7"), tol),
        StructureKind::Spin7 => {
            let s = Spin7Structure::new(alg).expect("dim 8");
            run_spin7(&mut rep, m, s, None, tol)
        }
        StructureKind::Spin7Extension(base) => {
            let g2 = G2Structure::new(base.algebra::<S>()).expect("dim 7");
            let res = g2.integrability_residual();
            rep.push(Check::identity(
                "spin7.extension.base_integrable",
                "d*φ = θ∧*φ on the base",
                &res,
                tol,
            ));
            if let Ok(s) = Spin7Structure::extend_g2(&g2, tol) {
                rep.convention("extension_of", base.name.clone());
                run_spin7(&mut rep, m, s, Some(&g2), tol);
            }
        }
    }
    rep
}

fn run_g2<S: Scalar>(
    rep: &mut VerificationReport,
    m: &Manifest,
    s: G2Structure<S>,
    tol: Tolerance,
) {
    let classes = s.classes(tol);
    rep.push(Check::info(
        "g2.class.integrable",
        "d*φ = θ∧*φ",
        classes.integrable.to_string(),
    ));
    rep.push(Check::info(
        "g2.class.cocalibrated",
        "d*φ = 0",
        classes.cocalibrated.to_string(),
    ));
    rep.push(Check::info(
        "g2.class.strictly_integrable",
        "d*φ = θ∧*φ, (dφ, *φ) = 0",
        classes.strictly_integrable.to_string(),
    ));
    rep.push(Check::info(
        "g2.class.parallel",
        "dφ = 0, d*φ = 0",
        classes.parallel.to_string(),
    ));
    let integrability = s.integrability_residual();
    let Ok(mut ch) = s.characteristic(tol) else {
        rep.push(Check::identity(
            "g2.characteristic_connection_exists",
            "d*φ = θ∧*φ",
            &integrability,
            tol,
        ));
        return;
    };
    inject(&mut ch.geometry, m.fault, rep);
    let hull = g2_instanton_check(&ch.geometry.hull_curvature()).is_instanton(tol);
    let obs = Observed::new(
        &ch.geometry,
        &ch.theta,
        Some(ch.lambda.clone()),
        ch.instanton().is_instanton(tol),
        hull,
        tol,
    );
    rep.extend(obs.info(m.label_base()));
    rep.extend(ch.geometry.identity_suite(tol));
    rep.extend(ch.formula_checks(tol));
    rep.extend(instanton_info(&obs));
    rep.extend(ch.theorem_checks(tol));
    rep.extend(obs.compare(m, tol));
}

fn run_spin7<S: Scalar>(
    rep: &mut VerificationReport,
    m: &Manifest,
    s: Spin7Structure<S>,
    base: Option<&G2Structure<S>>,
    tol: Tolerance,
) {
    rep.push(Check::info(
        "spin7.class.balanced",
        "θ = 0",
        s.is_balanced().to_string(),
    ));
    let mut ch = s
        .characteristic()
        .expect("the torsion connection exists in dimension 8");
    inject(&mut ch.geometry, m.fault, rep);
    let obs = Observed::new(
        &ch.geometry,
        &ch.theta,
        None,
        ch.instanton().is_instanton(tol),
        ch.hull_instanton().is_instanton(tol),
        tol,
    );
    rep.extend(obs.info(m.label_base()));
    rep.extend(ch.geometry.identity_suite(tol));
    rep.extend(ch.formula_checks(tol));
    if let Some(g2) = base {
        rep.extend(extension_checks(g2, &ch, tol).expect("base is integrable"));
    }
    rep.extend(instanton_info(&obs));
    rep.extend(ch.theorem_checks(tol));
    rep.extend(obs.compare(m, tol));
}

fn instanton_info<S: Scalar>(obs: &Observed<S>) -> Vec<Check> {
    vec![
        Check::info(
            "instanton.characteristic",
            "R(X, Y) ∈ holonomy algebra",
            obs.instanton.to_string(),
        ),
        Check::info(
            "instanton.hull",
            "R⁻(X, Y) ∈ holonomy algebra",
            obs.hull_instanton.to_string(),
        ),
    ]
}
