//! The connection family A + (k eps/2)B + (k eps delta/2)C + (k m eps/2) e0*imat:
//! matrices, torsions, the skew-torsion criterion and algebra-valuedness.

use hetg2::connections::{build_connection, g2_valued_test, skew_torsion_test, ConnectionSpec};
use hetg2::g2::build_model;
use hetg2::scalars::{int, rat};

fn main() {
    let model = build_model().expect("model");

    let lc = build_connection(&ConnectionSpec::levi_civita()).unwrap();
    println!("Levi-Civita member (delta=0, k=1): torsion = {}", lc.torsion.is_zero());

    let bismut = build_connection(&ConnectionSpec::bismut()).unwrap();
    println!("\nBismut member (delta=1, k=1), matrix:");
    print!("{}", bismut.matrix);
    println!("totally skew torsion: {}", skew_torsion_test(&bismut));
    println!("algebra-valued:       {}", g2_valued_test(&bismut.matrix, &model));

    let hull = build_connection(&ConnectionSpec::hull()).unwrap();
    println!("\nHull member (delta=-1, k=1):");
    println!("totally skew torsion: {}", skew_torsion_test(&hull));
    println!("algebra-valued:       {}", g2_valued_test(&hull.matrix, &model));

    // the criterion 1 - k(1 + m/2) = 0 picks out the skew-torsion members
    for (delta, k, m) in [(0, 2, -1), (0, 2, 0), (1, 1, 0)] {
        let conn = build_connection(
            &ConnectionSpec::numeric(int(delta), int(k), int(m)).unwrap(),
        )
        .unwrap();
        println!(
            "\n(delta,k,m) = ({delta},{k},{m}): skew = {} (criterion 1-k(1+m/2) = {})",
            skew_torsion_test(&conn),
            rat(2 - 2 * k - k * m, 2)
        );
    }

    // fully symbolic member: torsion in closed form
    let sym = build_connection(&ConnectionSpec::symbolic()).unwrap();
    println!("\nsymbolic member torsion (index raised, component order e0,e,Je):");
    print!("{}", sym.torsion);
}
