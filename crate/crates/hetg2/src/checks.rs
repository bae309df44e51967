//! The named check registry: every in-scope identity as an exact zero test,
//! either in the free algebra or after reduction modulo the relation ideal.

use crate::anomaly::{bianchi_cleared_residue, lambda0_observed_poly, trace_defect, trace_lemma_suite};
use crate::connections::{
    base_matrices, build_connection, curvature, curvature_of_matrix, extract_residual_coefficients,
    flux_form, g2_valued_test, instanton_residual, lambda0_poly, q_minus, q_plus, q_zero,
    residual_coefficients, skew_torsion_iff_certificate, skew_torsion_test, ConnectionSpec,
};
use crate::exterior::{omega, Form, Generator, E0, EVEN_COUNT, E_VEC, F_VEC, ODD_COUNT, U1, U2, U3, V1, V2, V3};
use crate::g2::{
    build_model, flux_fields, im_omega_identities, torsion_forms, type_checks, G2Model,
    LAMBDA_DISCREPANCY_NOTE,
};
use crate::matrix::{
    block7, boxop, coframe_column, cross, e_column, je_column, raise_index, FormMatrix,
};
use crate::report::{CheckResult, CheckStatus, EngineMeta, Report, Summary};
use crate::scalars::{int, rat, ParamPoly};
use crate::verifier::{
    build_ideal, build_ideal_excluding, relation_r, relation_s, MultiplierSupport, RelationIdeal,
};
use rayon::prelude::*;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

#[derive(Debug, Clone, thiserror::Error)]
#[error("unknown check name: {0}")]
pub struct UnknownCheck(pub String);

/// Shared immutable state for all checks.
pub struct CheckContext {
    pub model: G2Model,
    pub ideal: RelationIdeal,
    pub support: MultiplierSupport,
}

impl CheckContext {
    pub fn new(support: MultiplierSupport) -> Self {
        CheckContext {
            model: build_model().expect("model construction"),
            ideal: build_ideal(),
            support,
        }
    }
}

struct Outcome {
    pass: bool,
    detail: Option<String>,
}

impl Outcome {
    fn pass() -> Self {
        Outcome {
            pass: true,
            detail: None,
        }
    }

    fn fail(detail: String) -> Self {
        Outcome {
            pass: false,
            detail: Some(detail),
        }
    }

    fn from_zero(name: &str, residue: Form) -> Self {
        if residue.is_zero() {
            Outcome::pass()
        } else {
            Outcome::fail(format!("{name}: nonzero residue {}", residue.render()))
        }
    }
}

fn eps() -> ParamPoly {
    ParamPoly::eps()
}

fn matrices_equal(name: &str, lhs: &FormMatrix, rhs: &FormMatrix) -> Outcome {
    if lhs == rhs {
        Outcome::pass()
    } else {
        let diff = lhs.sub(rhs);
        for i in 0..diff.rows() {
            for j in 0..diff.cols() {
                if !diff.at(i, j).is_zero() {
                    return Outcome::fail(format!(
                        "{name}: first differing entry ({i},{j}): {}",
                        diff.at(i, j).render()
                    ));
                }
            }
        }
        Outcome::fail(format!("{name}: matrices differ"))
    }
}

fn reduce_matrix(
    name: &str,
    ctx: &CheckContext,
    m: &FormMatrix,
) -> Outcome {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let residue = ctx.ideal.reduce(m.at(i, j), ctx.support);
            if !residue.is_zero() {
                return Outcome::fail(format!(
                    "{name}: entry ({i},{j}) residue {}",
                    residue.render()
                ));
            }
        }
    }
    Outcome::pass()
}

fn c01(ctx: &CheckContext) -> Outcome {
    let w2 = ctx.model.omega.wedge(&ctx.model.omega);
    let dphi = ctx.model.phi.d();
    if dphi != w2.scale(&eps()) {
        return Outcome::fail(format!("d(phi) = {}", dphi.render()));
    }
    Outcome::from_zero("d(psi)", ctx.model.psi.d())
}

fn c02(ctx: &CheckContext) -> Outcome {
    let t = match torsion_forms(&ctx.model) {
        Ok(t) => t,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    let tau0_golden = &eps() * &rat(6, 7);
    if t.tau0 != tau0_golden {
        return Outcome::fail(format!("tau0 = {}", t.tau0));
    }
    if !t.tau1.is_zero() || !t.tau2.is_zero() {
        return Outcome::fail("tau1 or tau2 nonzero".into());
    }
    let tau3_golden = Form::gen(E0)
        .wedge(&ctx.model.omega)
        .scale(&(&eps() * &rat(8, 7)))
        .sub(&ctx.model.re_omega.scale(&(&eps() * &rat(6, 7))));
    if t.tau3 != tau3_golden {
        return Outcome::fail(format!("tau3 = {}", t.tau3.render()));
    }
    // reconstruction: tau0 psi + 3 tau1^phi + *tau3 = d(phi); 4 tau1^psi + tau2^phi = d(psi)
    let recon = ctx
        .model
        .psi
        .scale(&t.tau0)
        .add(&t.tau1.wedge(&ctx.model.phi).scale_rat(&int(3)))
        .add(&t.tau3.star().expect("coframe tau3"))
        .sub(&ctx.model.phi.d());
    if !recon.is_zero() {
        return Outcome::fail(format!("d(phi) reconstruction residue {}", recon.render()));
    }
    let recon2 = t
        .tau1
        .wedge(&ctx.model.psi)
        .scale_rat(&int(4))
        .add(&t.tau2.wedge(&ctx.model.phi))
        .sub(&ctx.model.psi.d());
    Outcome::from_zero("d(psi) reconstruction", recon2)
}

fn c03(ctx: &CheckContext) -> Outcome {
    let t = match torsion_forms(&ctx.model) {
        Ok(t) => t,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    let geo = match flux_fields(&ctx.model, &t) {
        Ok(g) => g,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    if geo.lambda != &eps() * &int(2) {
        return Outcome::fail(format!("lambda = {}", geo.lambda));
    }
    if !geo.mu.is_zero() {
        return Outcome::fail(format!("mu = {}", geo.mu));
    }
    if geo.flux != flux_form() {
        return Outcome::fail(format!("flux = {}", geo.flux.render()));
    }
    let e2 = &eps() * &eps();
    let w2 = ctx.model.omega.wedge(&ctx.model.omega);
    Outcome::from_zero("d(flux) + eps^2 omega^2", geo.flux.d().add(&w2.scale(&e2)))
}

fn c04(ctx: &CheckContext) -> Outcome {
    let expected = [
        (vec![E_VEC[0], F_VEC[0], E_VEC[1], F_VEC[1]], 1i64),
        (vec![E_VEC[0], F_VEC[0], E_VEC[2], F_VEC[2]], 1),
        (vec![E_VEC[1], F_VEC[1], E_VEC[2], F_VEC[2]], 1),
        (vec![E0, F_VEC[0], E_VEC[1], E_VEC[2]], -1),
        (vec![E0, E_VEC[0], F_VEC[1], E_VEC[2]], -1),
        (vec![E0, E_VEC[0], E_VEC[1], F_VEC[2]], -1),
        (vec![E0, F_VEC[0], F_VEC[1], F_VEC[2]], 1),
    ];
    let mut golden = Form::zero();
    for (gens, c) in expected {
        golden = golden.add(&Form::wedge_of(&gens).scale_rat(&int(c)));
    }
    if ctx.model.psi != golden {
        return Outcome::fail(format!("psi = {}", ctx.model.psi.render()));
    }
    match ctx.model.phi.star() {
        Ok(s) if s == ctx.model.psi => Outcome::pass(),
        Ok(s) => Outcome::fail(format!("star(phi) = {}", s.render())),
        Err(e) => Outcome::fail(e.to_string()),
    }
}

fn c05(ctx: &CheckContext) -> Outcome {
    let items = type_checks(&ctx.model);
    let failing: Vec<&str> = items
        .iter()
        .filter(|i| !i.pass)
        .map(|i| i.name.as_str())
        .collect();
    if failing.is_empty() {
        Outcome::pass()
    } else {
        Outcome::fail(format!("failing type claims: {}", failing.join("; ")))
    }
}

fn levi_civita_matrix() -> FormMatrix {
    let base = base_matrices();
    base.a.add(&base.b.scale(&(&eps() * &rat(1, 2))))
}

fn c06(_ctx: &CheckContext) -> Outcome {
    let theta = levi_civita_matrix();
    let col = coframe_column();
    matrices_equal(
        "d(coframe) + theta^coframe",
        &col.d().add(&theta.mwedge(&col)),
        &FormMatrix::zeros(7, 1),
    )
}

fn c07(_ctx: &CheckContext) -> Outcome {
    let a3 = FormMatrix::from_fn(3, 3, |i, j| crate::exterior::a_entry(i + 1, j + 1));
    let b3 = FormMatrix::from_fn(3, 3, |i, j| crate::exterior::b_entry(i + 1, j + 1));
    let be = boxop(&e_column());
    let bje = boxop(&je_column());
    let lhs_e = be.d();
    let rhs_e = a3
        .mwedge(&be)
        .neg()
        .sub(&be.mwedge(&a3))
        .add(&b3.mwedge(&bje))
        .sub(&bje.mwedge(&b3));
    let first = matrices_equal("d[e]", &lhs_e, &rhs_e);
    if !first.pass {
        return first;
    }
    let lhs_je = bje.d();
    let rhs_je = a3
        .mwedge(&bje)
        .neg()
        .sub(&bje.mwedge(&a3))
        .sub(&b3.mwedge(&be))
        .add(&be.mwedge(&b3));
    matrices_equal("d[Je]", &lhs_je, &rhs_je)
}

fn c08(_ctx: &CheckContext) -> Outcome {
    let theta = levi_civita_matrix();
    let e = e_column();
    let je = je_column();
    let half_eps = &eps() * &rat(1, 2);
    let he_e0 = FormMatrix::scalar_identity(3, Form::gen(E0).scale(&half_eps));
    let a3 = FormMatrix::from_fn(3, 3, |i, j| crate::exterior::a_entry(i + 1, j + 1));
    let b3 = FormMatrix::from_fn(3, 3, |i, j| crate::exterior::b_entry(i + 1, j + 1));
    let golden = block7(
        Form::zero(),
        (
            &je.transpose().scale(&half_eps),
            &e.transpose().scale(&half_eps).neg(),
        ),
        (&je.scale(&half_eps).neg(), &e.scale(&half_eps)),
        [&a3, &b3.sub(&he_e0), &b3.neg().add(&he_e0), &a3],
    );
    matrices_equal("A + (eps/2)B", &theta, &golden)
}

fn c09(_ctx: &CheckContext) -> Outcome {
    let spec = ConnectionSpec {
        delta: ParamPoly::zero(),
        k: ParamPoly::k(),
        m: ParamPoly::zero(),
        label: "squashed".into(),
    };
    let conn = match build_connection(&spec) {
        Ok(c) => c,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    let c1 = &(&ParamPoly::one() - &ParamPoly::k()) * &eps();
    let mut expected = FormMatrix::zeros(7, 1);
    expected.set(0, 0, omega().scale(&c1));
    matrices_equal("squashed torsion", &conn.torsion, &expected)
}

fn c10(_ctx: &CheckContext) -> Outcome {
    let spec = ConnectionSpec {
        delta: ParamPoly::zero(),
        k: ParamPoly::k(),
        m: ParamPoly::zero(),
        label: "squashed".into(),
    };
    let conn = match build_connection(&spec) {
        Ok(c) => c,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    let curv = match curvature(&conn) {
        Ok(c) => c,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    let base = base_matrices();
    let fa = curvature_of_matrix(&base.a);
    let eps2 = &eps() * &eps();
    let k = ParamPoly::k();
    let expected = fa
        .add(
            &base
                .imat
                .wedge_scalar(&omega())
                .scale(&(&(&k * &eps2) * &rat(1, 2))),
        )
        .add(
            &base
                .b
                .mwedge(&base.b)
                .scale(&(&(&(&k * &k) * &eps2) * &rat(1, 4))),
        );
    matrices_equal("squashed curvature", &curv.matrix, &expected)
}

fn c11(_ctx: &CheckContext) -> Outcome {
    let base = base_matrices();
    let lhs = base
        .b
        .d()
        .add(&base.a.mwedge(&base.b))
        .add(&base.b.mwedge(&base.a));
    matrices_equal(
        "dB + A^B + B^A",
        &lhs,
        &base.imat.wedge_scalar(&omega()).scale(&eps()),
    )
}

fn c12(_ctx: &CheckContext) -> Outcome {
    let base = base_matrices();
    let bb = base.b.mwedge(&base.b);
    let e = e_column();
    let je = je_column();
    let e0w = |v: &FormMatrix| v.map(|f| Form::gen(E0).wedge(f));
    let golden = block7(
        Form::zero(),
        (&e0w(&e.transpose()), &e0w(&je.transpose())),
        (&e0w(&e).neg(), &e0w(&je).neg()),
        [
            &je.mwedge(&je.transpose()).neg(),
            &je.mwedge(&e.transpose()),
            &e.mwedge(&je.transpose()),
            &e.mwedge(&e.transpose()).neg(),
        ],
    );
    matrices_equal("B^B", &bb, &golden)
}

fn c13(ctx: &CheckContext) -> Outcome {
    for i in 1..=3 {
        for (name, form) in [("r", relation_r(i)), ("s", relation_s(i))] {
            let residue = ctx.ideal.reduce(&form, ctx.support);
            if !residue.is_zero() {
                return Outcome::fail(format!("{name}_{i} residue {}", residue.render()));
            }
        }
    }
    Outcome::pass()
}

fn c14(ctx: &CheckContext) -> Outcome {
    let alpha = crate::connections::alpha_block();
    let beta = crate::connections::beta_block();
    let be = boxop(&e_column());
    let bje = boxop(&je_column());
    // Differentiating the box structure equations gives the two curvature
    // combinations as the boxes of the relation vectors (exact), which then
    // reduce to zero modulo the ideal.
    let first = alpha
        .mwedge(&be)
        .sub(&be.mwedge(&alpha))
        .sub(&beta.mwedge(&bje))
        .sub(&bje.mwedge(&beta));
    let r_vec = FormMatrix::column(vec![relation_r(1), relation_r(2), relation_r(3)]);
    let o = matrices_equal("first combination = [alpha^e + beta^Je]", &first, &boxop(&r_vec));
    if !o.pass {
        return o;
    }
    let second = alpha
        .mwedge(&bje)
        .sub(&bje.mwedge(&alpha))
        .add(&beta.mwedge(&be))
        .add(&be.mwedge(&beta));
    let s_vec = FormMatrix::column(vec![relation_s(1), relation_s(2), relation_s(3)]);
    let o = matrices_equal(
        "second combination = [alpha^Je - beta^e]",
        &second,
        &boxop(&s_vec),
    );
    if !o.pass {
        return o;
    }
    let o = reduce_matrix("alpha^[e]-[e]^alpha-beta^[Je]-[Je]^beta", ctx, &first);
    if !o.pass {
        return o;
    }
    reduce_matrix("alpha^[Je]-[Je]^alpha+beta^[e]+[e]^beta", ctx, &second)
}

fn c15(_ctx: &CheckContext) -> Outcome {
    let raised = match raise_index(&flux_form()) {
        Ok(r) => r,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    let base = base_matrices();
    let expected = base
        .c
        .mwedge(&coframe_column())
        .scale(&(&eps() * &rat(1, 2)));
    matrices_equal("raised flux vs (eps/2) C^coframe", &raised, &expected)
}

fn c16(_ctx: &CheckContext) -> Outcome {
    let spec = ConnectionSpec::symbolic_untwisted();
    let conn = match build_connection(&spec) {
        Ok(c) => c,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    let c1 = &(&ParamPoly::one() - &ParamPoly::k()) * &eps();
    let mut expected = FormMatrix::zeros(7, 1);
    expected.set(0, 0, omega().scale(&c1));
    let raised_flux = raise_index(&flux_form()).expect("coframe flux");
    let expected = expected.add(&raised_flux.scale(&(&ParamPoly::k() * &ParamPoly::delta())));
    matrices_equal("delta-family torsion", &conn.torsion, &expected)
}

fn c17(_ctx: &CheckContext) -> Outcome {
    // build_connection + curvature + q_parts verify the decomposition
    // R = F_A + (k eps^2 (1-delta)/2) omega imat + (k^2 eps^2/4) Q^delta
    // and (B + delta C)^2 = (1-delta)Qminus + (1+delta)Qplus + delta^2 Qzero
    let spec = ConnectionSpec::symbolic_untwisted();
    let conn = match build_connection(&spec) {
        Ok(c) => c,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    match curvature(&conn) {
        Ok(_) => Outcome::pass(),
        Err(e) => Outcome::fail(e.to_string()),
    }
}

fn c18(_ctx: &CheckContext) -> Outcome {
    let base = base_matrices();
    let fa = curvature_of_matrix(&base.a);
    let eps2 = &eps() * &eps();
    // Bismut: R = F_A + (eps^2/4)(B+C)^2 with (B+C)^2 = 2 Qplus(1) + Qzero
    let bc = base.b.add(&base.c);
    let sq = bc.mwedge(&bc);
    let golden_sq = q_plus(&ParamPoly::one()).scale_all(&int(2)).add(&q_zero());
    let o = matrices_equal("(B+C)^2", &sq, &golden_sq);
    if !o.pass {
        return o;
    }
    let bismut = match build_connection(&ConnectionSpec::bismut()) {
        Ok(c) => c,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    let rb = match curvature(&bismut) {
        Ok(c) => c,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    let o = matrices_equal(
        "R_bismut",
        &rb.matrix,
        &fa.add(&sq.scale(&(&eps2 * &rat(1, 4)))),
    );
    if !o.pass {
        return o;
    }
    // Hull: R = F_A + eps^2 omega imat + (eps^2/4)(B-C)^2,
    // (B-C)^2 = 2 Qminus(-1) + Qzero
    let bmc = base.b.sub(&base.c);
    let sqm = bmc.mwedge(&bmc);
    let golden_sqm = q_minus(&ParamPoly::int(-1))
        .scale_all(&int(2))
        .add(&q_zero());
    let o = matrices_equal("(B-C)^2", &sqm, &golden_sqm);
    if !o.pass {
        return o;
    }
    let hull = match build_connection(&ConnectionSpec::hull()) {
        Ok(c) => c,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    let rh = match curvature(&hull) {
        Ok(c) => c,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    matrices_equal(
        "R_hull",
        &rh.matrix,
        &fa.add(&base.imat.wedge_scalar(&omega()).scale(&eps2))
            .add(&sqm.scale(&(&eps2 * &rat(1, 4)))),
    )
}

fn c19(ctx: &CheckContext) -> Outcome {
    let base = base_matrices();
    if !g2_valued_test(&base.a, &ctx.model) {
        return Outcome::fail("pullback connection not algebra-valued".into());
    }
    let bk = match build_connection(&ConnectionSpec::bismut_k()) {
        Ok(c) => c,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    if !g2_valued_test(&bk.matrix, &ctx.model) {
        return Outcome::fail("Bismut family not algebra-valued".into());
    }
    let hk = match build_connection(&ConnectionSpec::hull_k()) {
        Ok(c) => c,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    if g2_valued_test(&hk.matrix, &ctx.model) {
        return Outcome::fail("Hull family unexpectedly algebra-valued".into());
    }
    Outcome::pass()
}

fn c20(_ctx: &CheckContext) -> Outcome {
    let base = base_matrices();
    let e0_imat = base.imat.wedge_scalar(&Form::gen(E0));
    let anti = |x: &FormMatrix| e0_imat.mwedge(x).add(&x.mwedge(&e0_imat));
    if !anti(&base.a).is_zero() {
        return Outcome::fail("A twist product nonzero".into());
    }
    let e = e_column();
    let je = je_column();
    let z33 = FormMatrix::zeros(3, 3);
    let b_twist = block7(
        Form::zero(),
        (&e.transpose(), &je.transpose()),
        (&e.neg(), &je.neg()),
        [&z33, &z33, &z33, &z33],
    )
    .map(|f| Form::gen(E0).wedge(f));
    let o = matrices_equal("B twist", &anti(&base.b), &b_twist);
    if !o.pass {
        return o;
    }
    let c_twist = block7(
        Form::zero(),
        (&e.transpose(), &je.transpose()),
        (&e.neg(), &je.neg()),
        [
            &boxop(&je).scale_all(&int(-2)),
            &boxop(&e).scale_all(&int(-2)),
            &boxop(&e).scale_all(&int(-2)),
            &boxop(&je).scale_all(&int(2)),
        ],
    )
    .map(|f| Form::gen(E0).wedge(f));
    matrices_equal("C twist", &anti(&base.c), &c_twist)
}

fn c21(_ctx: &CheckContext) -> Outcome {
    // full twisted family: torsion and curvature closed forms are verified
    // inside the constructors
    let conn = match build_connection(&ConnectionSpec::symbolic()) {
        Ok(c) => c,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    match curvature(&conn) {
        Ok(_) => Outcome::pass(),
        Err(e) => Outcome::fail(e.to_string()),
    }
}

fn c22(_ctx: &CheckContext) -> Outcome {
    let sym = match build_connection(&ConnectionSpec::symbolic()) {
        Ok(c) => c,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    if !skew_torsion_iff_certificate(&sym) {
        return Outcome::fail(
            "skewness defects are not rational multiples of eps(1 - k - km/2)".into(),
        );
    }
    // numeric spot checks of the criterion
    let cases = [
        ((int(1), int(1), int(0)), true),
        ((int(0), int(2), int(-1)), true),
        ((int(0), int(2), int(0)), false),
    ];
    for ((d, k, m), expected) in cases {
        let conn = build_connection(
            &ConnectionSpec::numeric(d.clone(), k.clone(), m.clone()).expect("nonzero k"),
        )
        .expect("family member");
        if skew_torsion_test(&conn) != expected {
            return Outcome::fail(format!(
                "skew test at (delta,k,m) = ({d},{k},{m}) expected {expected}"
            ));
        }
    }
    Outcome::pass()
}

fn c23(ctx: &CheckContext) -> Outcome {
    let items = im_omega_identities(&ctx.model);
    let failing: Vec<&str> = items
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(n, _)| n.as_str())
        .collect();
    if failing.is_empty() {
        Outcome::pass()
    } else {
        Outcome::fail(format!("failing identities: {}", failing.join("; ")))
    }
}

fn c24(ctx: &CheckContext) -> Outcome {
    let spec = ConnectionSpec::symbolic_untwisted();
    let conn = match build_connection(&spec) {
        Ok(c) => c,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    let curv = match curvature(&conn) {
        Ok(c) => c,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    match instanton_residual(&curv, &ctx.model, &ctx.ideal, ctx.support) {
        Ok(_) => Outcome::pass(),
        Err(e) => Outcome::fail(e.to_string()),
    }
}

fn c25(ctx: &CheckContext) -> Outcome {
    let spec = ConnectionSpec::symbolic();
    let conn = match build_connection(&spec) {
        Ok(c) => c,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    let curv = match curvature(&conn) {
        Ok(c) => c,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    let rpsi = match instanton_residual(&curv, &ctx.model, &ctx.ideal, ctx.support) {
        Ok(r) => r,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    // coefficient extraction agrees with the closed-form polynomials
    let extracted = extract_residual_coefficients(&rpsi);
    let closed = residual_coefficients(&spec);
    if extracted.lambda1 != closed.lambda1
        || extracted.lambda2 != closed.lambda2
        || extracted.lambda3 != closed.lambda3
    {
        return Outcome::fail("extracted residual coefficients disagree".into());
    }
    Outcome::pass()
}

fn suite_range(ctx: &CheckContext, range: std::ops::Range<usize>) -> Outcome {
    let suite = trace_lemma_suite(&ctx.ideal, ctx.support);
    let mut details = Vec::new();
    for lemma in &suite[range] {
        if !lemma.pass {
            details.push(format!(
                "{} refuted; computed: {}",
                lemma.name,
                lemma.computed.as_deref().unwrap_or("?")
            ));
        }
    }
    if details.is_empty() {
        Outcome::pass()
    } else {
        Outcome::fail(details.join("\n"))
    }
}

fn c26(ctx: &CheckContext) -> Outcome {
    suite_range(ctx, 0..2)
}

fn c27(ctx: &CheckContext) -> Outcome {
    suite_range(ctx, 2..6)
}

fn c28(ctx: &CheckContext) -> Outcome {
    suite_range(ctx, 13..17)
}

fn c29(ctx: &CheckContext) -> Outcome {
    suite_range(ctx, 6..9)
}

fn c30(ctx: &CheckContext) -> Outcome {
    suite_range(ctx, 9..12)
}

fn c31(ctx: &CheckContext) -> Outcome {
    suite_range(ctx, 12..13)
}

fn c32(ctx: &CheckContext) -> Outcome {
    let spec = ConnectionSpec::symbolic();
    let result = match trace_defect(&spec, &ctx.ideal, ctx.support) {
        Ok(r) => r,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    if result.matches_asserted {
        Outcome::pass()
    } else {
        Outcome::fail(format!(
            "recorded closed form refuted; computed defect (mod ideal) = \
             (eps^2/2) * lambda0_observed * omega^2 with lambda0_observed = {}; \
             the recorded head term k^2 delta^2 (1+delta)^2 and the constant -3 \
             correspond to the trace restricted to the lower 6x6 block",
            result.lambda0_observed
        ))
    }
}

fn c33(ctx: &CheckContext) -> Outcome {
    let spec = ConnectionSpec::symbolic();
    let recorded = lambda0_poly(&spec);
    let residue = match bianchi_cleared_residue(&spec, &recorded, &ctx.ideal, ctx.support) {
        Ok(r) => r,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    if residue.is_zero() {
        return Outcome::pass();
    }
    // diagnose: the computed normalizer clears the identity
    let observed = lambda0_observed_poly(&spec);
    let residue_observed =
        match bianchi_cleared_residue(&spec, &observed, &ctx.ideal, ctx.support) {
            Ok(r) => r,
            Err(e) => return Outcome::fail(e.to_string()),
        };
    let note = if residue_observed.is_zero() {
        format!(
            "cleared identity 2 tr(R^2 - F^2) = lambda0 eps^2 omega^2 fails with the \
             recorded lambda0 but holds exactly with lambda0_observed = {}",
            observed
        )
    } else {
        format!("cleared identity fails with both normalizers; residue {}", residue.render())
    };
    Outcome::fail(note)
}

fn c34(_ctx: &CheckContext) -> Outcome {
    let u = FormMatrix::column(vec![Form::gen(U1), Form::gen(U2), Form::gen(U3)]);
    let v = FormMatrix::column(vec![Form::gen(V1), Form::gen(V2), Form::gen(V3)]);
    if boxop(&u).mwedge(&v) != cross(&u, &v).neg() {
        return Outcome::fail("[u]^v = -(u x v) refuted".into());
    }
    if u.transpose().mwedge(&boxop(&v)) != cross(&u, &v).neg().transpose() {
        return Outcome::fail("u^T^[v] = -(u x v)^T refuted".into());
    }
    let anti = boxop(&u)
        .mwedge(&boxop(&v))
        .add(&boxop(&v).mwedge(&boxop(&u)));
    if anti != boxop(&cross(&u, &v)).neg() {
        return Outcome::fail("[u]^[v] + [v]^[u] = -[u x v] refuted".into());
    }
    let comm = boxop(&u)
        .mwedge(&boxop(&v))
        .sub(&boxop(&v).mwedge(&boxop(&u)));
    let dot = u.transpose().mwedge(&v).at(0, 0).clone();
    let rhs = u
        .mwedge(&v.transpose())
        .sub(&v.mwedge(&u.transpose()))
        .sub(&FormMatrix::scalar_identity(3, dot.scale_rat(&int(2))));
    if comm != rhs {
        return Outcome::fail("box commutator expansion refuted".into());
    }
    let sq = boxop(&u).mwedge(&boxop(&u));
    if sq != u.mwedge(&u.transpose()).neg()
        || sq != boxop(&cross(&u, &u)).scale(&ParamPoly::rat(-1, 2))
    {
        return Outcome::fail("[u]^[u] identities refuted".into());
    }
    Outcome::pass()
}

fn c35(ctx: &CheckContext) -> Outcome {
    let audit = &ctx.ideal.audit;
    if !audit.unexpected.is_empty() {
        return Outcome::fail(format!(
            "d^2 nonzero outside the base coframe: {}",
            audit.unexpected.join(", ")
        ));
    }
    if audit.relation_sources.len() != 6 || ctx.ideal.generators.len() != 6 {
        return Outcome::fail(format!(
            "expected 6 relation generators, found {}",
            ctx.ideal.generators.len()
        ));
    }
    // generators match the curvature-coframe relations up to sign
    for i in 1..=3 {
        for (name, form) in [("r", relation_r(i)), ("s", relation_s(i))] {
            let hit = ctx
                .ideal
                .generators
                .iter()
                .any(|g| *g == form || *g == form.neg());
            if !hit {
                return Outcome::fail(format!("missing relation {name}_{i}"));
            }
        }
    }
    // closed on every other generator, including the parameter direction e0
    for name in ["e0", "a12", "b11", "al12", "be11"] {
        if !audit.closed.contains(&name) {
            return Outcome::fail(format!("generator {name} not certified closed"));
        }
    }
    Outcome::pass()
}

type CheckFn = fn(&CheckContext) -> Outcome;

/// name, label, uses-the-ideal, implementation.
const REGISTRY: [(&str, &str, bool, CheckFn); 35] = [
    ("C01", "dphi-dpsi", false, c01),
    ("C02", "torsion-forms", false, c02),
    ("C03", "flux", false, c03),
    ("C04", "psi-frame", false, c04),
    ("C05", "basic-types", false, c05),
    ("C06", "structure-eqs-matrix", false, c06),
    ("C07", "d-box-eqs", false, c07),
    ("C08", "levi-civita", false, c08),
    ("C09", "squash-torsion", false, c09),
    ("C10", "curv-k", false, c10),
    ("C11", "dAB", false, c11),
    ("C12", "BwedgeB", false, c12),
    ("C13", "FA-relations", true, c13),
    ("C14", "FA-box-relations", true, c14),
    ("C15", "H-raised", false, c15),
    ("C16", "conn-delta-k-torsion", false, c16),
    ("C17", "curv-delta-k", false, c17),
    ("C18", "bismut-hull", false, c18),
    ("C19", "g2-valued-bismut", false, c19),
    ("C20", "twist-lemma", false, c20),
    ("C21", "twist-curvature", false, c21),
    ("C22", "skew-iff", false, c22),
    ("C23", "imomega-identities", false, c23),
    ("C24", "residual-delta-k", true, c24),
    ("C25", "residual-delta-m-k", true, c25),
    ("C26", "trace-I", false, c26),
    ("C27", "trace-QI", false, c27),
    ("C28", "FA-linear-traces", true, c28),
    ("C29", "Q-squares", false, c29),
    ("C30", "Q-cross", false, c30),
    ("C31", "tr-Qdm-squared", false, c31),
    ("C32", "trace-defect", true, c32),
    ("C33", "bianchi-cleared", true, c33),
    ("C34", "appendix-rules", false, c34),
    ("C35", "d-squared-audit", false, c35),
];

pub fn check_names() -> Vec<&'static str> {
    REGISTRY.iter().map(|(n, _, _, _)| *n).collect()
}

fn engine_meta(ctx: &CheckContext) -> EngineMeta {
    EngineMeta {
        generator_order: (0..ODD_COUNT)
            .map(Generator)
            .filter(|g| !g.is_test_generator())
            .map(|g| g.name().to_string())
            .collect(),
        curvature_generators: (0..EVEN_COUNT)
            .map(|i| Generator(ODD_COUNT + i).name().to_string())
            .collect(),
        form_degree_cap: crate::exterior::FORM_DEGREE_CAP,
        parameter_degree_cap: crate::scalars::PARAM_DEGREE_CAP,
        multiplier_support: ctx.support,
        ideal_generator_count: ctx.ideal.generators.len(),
    }
}

fn thread_pool() -> rayon::ThreadPool {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("HETG2_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n > 0 {
                builder = builder.num_threads(n);
            }
        }
    }
    builder.build().expect("thread pool")
}

/// Runs the selected checks (all when the filter is None) and assembles the
/// deterministic report. Individual engine faults become error status; the
/// run never aborts midway.
pub fn run_checks(
    selection: Option<&[String]>,
    support: MultiplierSupport,
) -> Result<Report, UnknownCheck> {
    let selected: Vec<&(&str, &str, bool, CheckFn)> = match selection {
        None => REGISTRY.iter().collect(),
        Some(names) => {
            let mut picked = Vec::new();
            for name in names {
                match REGISTRY.iter().find(|(n, _, _, _)| n == name) {
                    Some(entry) => picked.push(entry),
                    None => return Err(UnknownCheck(name.clone())),
                }
            }
            picked
        }
    };
    let ctx = CheckContext::new(support);
    let pool = thread_pool();
    let mut checks: Vec<CheckResult> = pool.install(|| {
        selected
            .par_iter()
            .map(|(name, label, needed_ideal, f)| {
                let start = Instant::now();
                let outcome = catch_unwind(AssertUnwindSafe(|| f(&ctx)));
                let elapsed = start.elapsed();
                let (status, detail) = match outcome {
                    Ok(o) => (
                        if o.pass {
                            CheckStatus::Pass
                        } else {
                            CheckStatus::Fail
                        },
                        o.detail,
                    ),
                    Err(panic) => {
                        let msg = panic
                            .downcast_ref::<String>()
                            .cloned()
                            .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                            .unwrap_or_else(|| "engine fault".to_string());
                        (CheckStatus::Error, Some(msg))
                    }
                };
                CheckResult {
                    name: name.to_string(),
                    label: label.to_string(),
                    status,
                    needed_ideal: *needed_ideal,
                    detail,
                    elapsed,
                }
            })
            .collect()
    });
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    let summary = Summary {
        pass: checks.iter().filter(|c| c.status == CheckStatus::Pass).count(),
        fail: checks.iter().filter(|c| c.status == CheckStatus::Fail).count(),
        error: checks.iter().filter(|c| c.status == CheckStatus::Error).count(),
    };
    Ok(Report {
        engine: engine_meta(&ctx),
        checks,
        summary,
        discrepancies: vec![LAMBDA_DISCREPANCY_NOTE.to_string()],
    })
}

/// Minimality audit: removing any single ideal generator must break at least
/// one of the curvature-coframe relation reductions.
pub fn ideal_minimality_audit(support: MultiplierSupport) -> Vec<(usize, bool)> {
    (0..6)
        .map(|skip| {
            let ideal = build_ideal_excluding(skip);
            let mut broke = false;
            for i in 1..=3 {
                if !ideal.reduce(&relation_r(i), support).is_zero()
                    || !ideal.reduce(&relation_s(i), support).is_zero()
                {
                    broke = true;
                }
            }
            (skip, broke)
        })
        .collect()
}

/// The expected outcome of the full run: names of checks whose recorded
/// target values the engine refutes.
pub const EXPECTED_FAILING_CHECKS: [&str; 4] = ["C29", "C31", "C32", "C33"];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_registry_run() {
        let report = run_checks(None, MultiplierSupport::Restricted).unwrap();
        assert_eq!(report.checks.len(), 35);
        let failing: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| c.status != CheckStatus::Pass)
            .map(|c| c.name.as_str())
            .collect();
        assert_eq!(failing, EXPECTED_FAILING_CHECKS.to_vec());
        assert_eq!(report.summary.pass, 31);
        assert_eq!(report.summary.fail, 4);
        assert_eq!(report.summary.error, 0);
        // every non-pass check carries its analysis
        for c in &report.checks {
            if c.status != CheckStatus::Pass {
                assert!(c.detail.as_deref().map(|d| !d.is_empty()).unwrap_or(false));
            }
        }
        assert_eq!(report.discrepancies.len(), 1);
    }

    #[test]
    fn selection_and_unknown_names() {
        let report =
            run_checks(Some(&["C26".to_string()]), MultiplierSupport::Restricted).unwrap();
        assert_eq!(report.checks.len(), 1);
        assert_eq!(report.checks[0].status, CheckStatus::Pass);
        assert!(!report.checks[0].needed_ideal);
        let report =
            run_checks(Some(&["C13".to_string()]), MultiplierSupport::Restricted).unwrap();
        assert!(report.checks[0].needed_ideal);
        assert_eq!(report.checks[0].status, CheckStatus::Pass);
        assert!(run_checks(Some(&["NOPE".to_string()]), MultiplierSupport::Restricted).is_err());
    }

    #[test]
    fn determinism_of_reports() {
        let sel = ["C01".to_string(), "C11".to_string(), "C13".to_string()];
        let a = run_checks(Some(&sel), MultiplierSupport::Restricted).unwrap();
        let b = run_checks(Some(&sel), MultiplierSupport::Restricted).unwrap();
        assert_eq!(a.to_text(false), b.to_text(false));
        assert_eq!(a.to_json_string(false), b.to_json_string(false));
    }

    #[test]
    fn json_round_trip() {
        let report =
            run_checks(Some(&["C26".to_string()]), MultiplierSupport::Restricted).unwrap();
        let text = report.to_json_string(false);
        let parsed: crate::report::ReportJson = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed.checks.len(), 1);
        assert_eq!(parsed.summary.pass, 1);
        assert!(parsed.checks[0].elapsed_ms.is_none());
        let with_timing = report.to_json_string(true);
        let parsed2: crate::report::ReportJson = serde_json::from_str(&with_timing).unwrap();
        assert!(parsed2.checks[0].elapsed_ms.is_some());
    }

    #[test]
    fn minimality_audit_breaks_every_exclusion() {
        for (skip, broke) in ideal_minimality_audit(MultiplierSupport::Restricted) {
            assert!(broke, "excluding generator {skip} left the relations reducible");
        }
    }

    #[test]
    fn full_support_mode_also_reduces() {
        let report = run_checks(Some(&["C13".to_string()]), MultiplierSupport::Full).unwrap();
        assert_eq!(report.checks[0].status, CheckStatus::Pass);
    }
}
