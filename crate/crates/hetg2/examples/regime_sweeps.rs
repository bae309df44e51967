//! Regime points and alpha'-sweeps for the three parameter cases.

use hetg2::regimes::{case_point, order_fit, sweep, table_to_csv, CaseParams};
use hetg2::scalars::{int, rat, Rational};

fn main() {
    // one point of each case, exact closure alpha' * lambda0 = 8
    let specs = [
        ("case 1, delta = 1", CaseParams::Case1 { delta: int(1) }),
        ("case 2, m = -2", CaseParams::Case2 { m: int(-2) }),
        ("case 3, m = 0", CaseParams::Case3 { m: int(0) }),
    ];
    for (name, params) in &specs {
        let p = case_point(params, &rat(1, 100)).unwrap();
        println!(
            "{name}: alpha' = {}, eps^2 = {}, k = {}, lambda0 = {}, alpha'*lambda0 = {}",
            p.alpha_prime,
            p.eps_sq,
            p.k.render(),
            p.lambdas[0],
            &p.alpha_prime * &p.lambdas[0]
        );
    }

    // sweep with the residual-order fit appended as CSV comments
    let alphas: Vec<Rational> = (1..=4).map(|i| rat(1, 10i64.pow(i))).collect();
    let table = sweep(&CaseParams::Case1 { delta: int(1) }, &alphas).unwrap();
    let fits = order_fit(&table).unwrap();
    println!("\ncase 1 sweep:\n{}", table_to_csv(&table, Some(&fits)));

    let small: Vec<Rational> = (4..=7).map(|i| rat(1, 10i64.pow(i))).collect();
    let table3 = sweep(&CaseParams::Case3 { m: int(0) }, &small).unwrap();
    let fits3 = order_fit(&table3).unwrap();
    println!("case 3 sweep:\n{}", table_to_csv(&table3, Some(&fits3)));
}
