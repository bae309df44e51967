//! The instanton defect R ^ psi of the connection family: closed-form
//! coefficients, ideal reduction, and the no-instanton witness.

use hetg2::connections::{
    build_connection, curvature, extract_residual_coefficients, instanton_residual,
    residual_coefficients, ConnectionSpec,
};
use hetg2::g2::build_model;
use hetg2::scalars::int;
use hetg2::verifier::{build_ideal, MultiplierSupport};

fn main() {
    let model = build_model().expect("model");
    let ideal = build_ideal();

    // the pullback connection satisfies the instanton condition exactly
    // (its R ^ psi lies in the relation ideal)
    let a = build_connection(&ConnectionSpec::pullback_instanton()).unwrap();
    let fa = curvature(&a).unwrap();
    let rpsi = instanton_residual(&fa, &model, &ideal, MultiplierSupport::Restricted);
    println!(
        "pullback connection: R^psi reduces to zero mod ideal: {}",
        rpsi.is_ok()
    );

    // the twisted family never does: closed-form residual coefficients
    let sym = ConnectionSpec::symbolic();
    let coeffs = residual_coefficients(&sym);
    println!("lambda1 = {}", coeffs.lambda1);
    println!("lambda2 = {}", coeffs.lambda2);
    println!("lambda3 = {}", coeffs.lambda3);

    // cross-check: extract the same coefficients from the raw R ^ psi matrix
    let conn = build_connection(&sym).unwrap();
    let curv = curvature(&conn).unwrap();
    let raw = curv.matrix.map(|f| f.wedge(&model.psi));
    let extracted = extract_residual_coefficients(&raw);
    println!(
        "extraction from raw R^psi agrees: {}",
        extracted.lambda1 == coeffs.lambda1
            && extracted.lambda2 == coeffs.lambda2
            && extracted.lambda3 == coeffs.lambda3
    );

    // numeric specializations
    for (delta, k, m) in [(1i64, 2i64, 0i64), (0, 1, 0), (-1, 1, 0)] {
        let spec = ConnectionSpec::numeric(int(delta), int(k), int(m)).unwrap();
        let c = residual_coefficients(&spec);
        let at1 = [int(1), int(0), int(0), int(0)];
        println!(
            "(delta,k,m,eps) = ({delta},{k},{m},1): (lambda1, lambda2, lambda3) = ({}, {}, {})",
            c.lambda1.eval(&at1),
            c.lambda2.eval(&at1),
            c.lambda3.eval(&at1)
        );
    }
}
