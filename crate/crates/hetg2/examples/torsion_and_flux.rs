//! The fundamental forms, their torsion, and the flux with its exterior
//! derivative.

use hetg2::g2::{build_model, flux_fields, torsion_forms};

fn main() {
    let model = build_model().expect("model");
    println!("phi  = {}", model.phi);
    println!("psi  = {}", model.psi);
    println!("vol  = {}", model.vol);
    println!("d(phi) = {}", model.phi.d());
    println!("d(psi) = {}", model.psi.d());

    let torsion = torsion_forms(&model).expect("torsion");
    println!("tau0 = {}", torsion.tau0);
    println!("tau1 = {}", torsion.tau1);
    println!("tau2 = {}", torsion.tau2);
    println!("tau3 = {}", torsion.tau3);

    let geo = flux_fields(&model, &torsion).expect("geometric fields");
    println!("lambda = {}   (solves tau0 = (3/7) lambda)", geo.lambda);
    println!("mu     = {}   (constant dilaton)", geo.mu);
    println!("H      = {}", geo.flux);
    println!("dH     = {}", geo.flux.d());
}
