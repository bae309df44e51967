//! The Chern-Simons defect tr(R^2 - F_A^2) and the cleared anomaly-free
//! condition, with both the recorded and the computed normalizers.

use hetg2::anomaly::{bianchi_cleared_residue, trace_defect, trace_lemma_suite};
use hetg2::connections::ConnectionSpec;
use hetg2::verifier::{build_ideal, MultiplierSupport};

fn main() {
    let ideal = build_ideal();
    let support = MultiplierSupport::Restricted;

    println!("trace lemma suite:");
    for lemma in trace_lemma_suite(&ideal, support) {
        println!(
            "  [{}] {}{}",
            if lemma.pass { "ok" } else { "REFUTED" },
            lemma.name,
            match &lemma.computed {
                Some(v) => format!("  -> computed {}", v),
                None => String::new(),
            }
        );
    }

    let result = trace_defect(&ConnectionSpec::symbolic(), &ideal, support).unwrap();
    println!("\ncomputed defect (mod ideal) = {}", result.defect);
    println!("matches recorded closed form: {}", result.matches_asserted);
    println!("lambda0 (recorded) = {}", result.lambda0);
    println!("lambda0 (observed) = {}", result.lambda0_observed);
    println!("dH = {}", result.dh);

    // the cleared identity 2 tr(R^2 - F^2) = lambda0 eps^2 omega^2 holds with
    // the observed normalizer and fails with the recorded one
    let spec = ConnectionSpec::symbolic();
    let with_observed =
        bianchi_cleared_residue(&spec, &result.lambda0_observed, &ideal, support).unwrap();
    let with_recorded = bianchi_cleared_residue(&spec, &result.lambda0, &ideal, support).unwrap();
    println!(
        "\ncleared identity residue with observed normalizer: {}",
        with_observed
    );
    println!(
        "cleared identity residue with recorded normalizer is zero: {}",
        with_recorded.is_zero()
    );
}
