//! Tour of the graded-commutative algebra: wedge products, the exterior
//! derivative, the Hodge star and the transverse complex structure.

use hetg2::exterior::{omega, Form, E0, E1, E2, E3, F1, F2, F3};
use hetg2::scalars::ParamPoly;

fn main() {
    let w = omega();
    println!("omega          = {}", w);
    println!("omega^3        = {}", w.pow_wedge(3));
    println!("d(e0)          = {}", Form::gen(E0).d());
    println!("d(omega)       = {}", w.d());

    // the canonical volume form and the Hodge star
    let vol = Form::gen(E0).wedge(&w.pow_wedge(3)).scale(&ParamPoly::rat(1, 6));
    println!("vol            = {}", vol);
    println!("star(1)        = {}", Form::one().star().unwrap());
    println!("star(e0^e1^f1) = {}", Form::wedge_of(&[E0, E1, F1]).star().unwrap());

    // transverse complex structure on basic forms
    let anti = Form::wedge_of(&[E2, F3]).sub(&Form::wedge_of(&[E3, F2]));
    println!("J(e1)          = {}", Form::gen(E1).jmap().unwrap());
    println!("J(omega)       = {}", w.jmap().unwrap());
    println!("J(e2^f3-e3^f2) = {}", anti.jmap().unwrap());

    // derivatives are only zero modulo the curvature relations on e_i, Je_i
    println!("d(d(e1))       = {}", Form::gen(E1).d().d());
    println!("d(d(a12))      = {}", Form::gen(hetg2::exterior::A12).d().d());

    // deterministic rendering with parameter coefficients
    let f = Form::wedge_of(&[E0, E1, F1]).scale(&(&ParamPoly::eps() * &ParamPoly::rat(6, 7)));
    println!("render example = {}", f);
}
