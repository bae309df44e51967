//! Runs the full named-check registry and prints the text report.

use hetg2::checks::run_checks;
use hetg2::verifier::MultiplierSupport;

fn main() {
    let report = run_checks(None, MultiplierSupport::Restricted).expect("registry");
    print!("{}", report.to_text(true));
}
