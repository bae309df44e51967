//! The connection families on the tangent bundle: base matrices A, B, C and
//! the block complex structure, the squashed/twisted family, torsions,
//! curvatures, and the instanton residual with its coefficient extraction.

use crate::exterior::{
    a_entry, alpha_entry, b_entry, beta_entry, omega, Form, Monomial, E0, E_VEC, F_VEC,
};
use crate::g2::{re_omega, G2Model};
use crate::matrix::{
    block7, boxop, coframe_column, cross, e_column, je_column, raise_index, FormMatrix,
    MATRIX_COFRAME,
};
use crate::scalars::{rat, ParamPoly, Rational};
use crate::verifier::{MultiplierSupport, RelationIdeal};
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConnectionError {
    #[error("k = 0 is not a valid numeric squashing parameter")]
    ZeroK,
    #[error("constructed object failed its defining relation: {0}")]
    Defect(String),
}

/// The four canonical 7x7 matrices of the family, in coframe block order
/// (e0, e, Je).
pub struct BaseMatrices {
    /// Pullback connection block matrix: zero border, blocks (a, b; -b, a).
    pub a: FormMatrix,
    /// First squashing direction.
    pub b: FormMatrix,
    /// Flux direction, C = C0 - e0 * imat.
    pub c: FormMatrix,
    /// Skew block matrix squaring to -diag(0, I, I).
    pub imat: FormMatrix,
}

fn a_block() -> FormMatrix {
    FormMatrix::from_fn(3, 3, |i, j| a_entry(i + 1, j + 1))
}

fn b_block() -> FormMatrix {
    FormMatrix::from_fn(3, 3, |i, j| b_entry(i + 1, j + 1))
}

pub fn alpha_block() -> FormMatrix {
    FormMatrix::from_fn(3, 3, |i, j| alpha_entry(i + 1, j + 1))
}

pub fn beta_block() -> FormMatrix {
    FormMatrix::from_fn(3, 3, |i, j| beta_entry(i + 1, j + 1))
}

pub fn base_matrices() -> BaseMatrices {
    let z13 = FormMatrix::zeros(1, 3);
    let z31 = FormMatrix::zeros(3, 1);
    let z33 = FormMatrix::zeros(3, 3);

    let ab = a_block();
    let bb = b_block();
    let a = block7(
        Form::zero(),
        (&z13, &z13),
        (&z31, &z31),
        [&ab, &bb, &bb.neg(), &ab],
    );

    let e = e_column();
    let je = je_column();
    let e0_i3 = FormMatrix::scalar_identity(3, Form::gen(E0));
    let b = block7(
        Form::zero(),
        (&je.transpose(), &e.transpose().neg()),
        (&je.neg(), &e),
        [&z33, &e0_i3.neg(), &e0_i3, &z33],
    );

    let be = boxop(&e);
    let bje = boxop(&je);
    let c = block7(
        Form::zero(),
        (&je.transpose(), &e.transpose().neg()),
        (&je.neg(), &e),
        [
            &be.neg(),
            &e0_i3.add(&bje),
            &e0_i3.neg().add(&bje),
            &be,
        ],
    );

    let i3 = FormMatrix::identity(3);
    let imat = block7(
        Form::zero(),
        (&z13, &z13),
        (&z31, &z31),
        [&z33, &i3.neg(), &i3, &z33],
    );

    let out = BaseMatrices { a, b, c, imat };
    debug_assert!(out.a.is_degree_homogeneous(1));
    debug_assert!(out.b.is_degree_homogeneous(1));
    debug_assert!(out.c.is_degree_homogeneous(1));
    debug_assert!(out.imat.is_degree_homogeneous(0));
    out
}

/// Parameters of one member of the connection family. The fibre scale eps
/// stays symbolic throughout the symbolic pipeline.
#[derive(Clone)]
pub struct ConnectionSpec {
    pub delta: ParamPoly,
    pub k: ParamPoly,
    pub m: ParamPoly,
    pub label: String,
}

impl ConnectionSpec {
    /// Fully symbolic (delta, k, m).
    pub fn symbolic() -> Self {
        ConnectionSpec {
            delta: ParamPoly::delta(),
            k: ParamPoly::k(),
            m: ParamPoly::m(),
            label: "symbolic".into(),
        }
    }

    /// Symbolic delta and k with m = 0 (the untwisted two-parameter family).
    pub fn symbolic_untwisted() -> Self {
        ConnectionSpec {
            delta: ParamPoly::delta(),
            k: ParamPoly::k(),
            m: ParamPoly::zero(),
            label: "symbolic-untwisted".into(),
        }
    }

    pub fn numeric(delta: Rational, k: Rational, m: Rational) -> Result<Self, ConnectionError> {
        if k.is_zero() {
            return Err(ConnectionError::ZeroK);
        }
        Ok(ConnectionSpec {
            delta: ParamPoly::constant(delta),
            k: ParamPoly::constant(k),
            m: ParamPoly::constant(m),
            label: "numeric".into(),
        })
    }

    /// delta = +1, k = 1: the skew-torsion member.
    pub fn bismut() -> Self {
        let mut s = Self::numeric(Rational::one(), Rational::one(), Rational::zero()).unwrap();
        s.label = "bismut".into();
        s
    }

    /// delta = +1, symbolic k.
    pub fn bismut_k() -> Self {
        ConnectionSpec {
            delta: ParamPoly::one(),
            k: ParamPoly::k(),
            m: ParamPoly::zero(),
            label: "bismut-k".into(),
        }
    }

    /// delta = -1, k = 1: opposite-torsion member.
    pub fn hull() -> Self {
        let mut s = Self::numeric(-Rational::one(), Rational::one(), Rational::zero()).unwrap();
        s.label = "hull".into();
        s
    }

    /// delta = -1, symbolic k.
    pub fn hull_k() -> Self {
        ConnectionSpec {
            delta: ParamPoly::int(-1),
            k: ParamPoly::k(),
            m: ParamPoly::zero(),
            label: "hull-k".into(),
        }
    }

    /// delta = 0, k = 1, m = 0: the Levi-Civita member.
    pub fn levi_civita() -> Self {
        let mut s = Self::numeric(Rational::zero(), Rational::one(), Rational::zero()).unwrap();
        s.label = "levi-civita".into();
        s
    }

    /// k = 0: the pullback instanton connection alone.
    pub fn pullback_instanton() -> Self {
        ConnectionSpec {
            delta: ParamPoly::zero(),
            k: ParamPoly::zero(),
            m: ParamPoly::zero(),
            label: "pullback-instanton".into(),
        }
    }

    /// eps * k / 2 and friends used all over the family.
    fn half_keps(&self) -> ParamPoly {
        &(&self.k * &ParamPoly::eps()) * &rat(1, 2)
    }
}

/// A metric connection of the family together with its torsion, stored as a
/// 7-vector of 2-forms with the index already raised.
pub struct Connection {
    pub spec: ConnectionSpec,
    pub matrix: FormMatrix,
    pub torsion: FormMatrix,
}

/// The flux 3-form -eps e0^omega + eps Re(Omega).
pub fn flux_form() -> Form {
    let eps = ParamPoly::eps();
    Form::gen(E0)
        .wedge(&omega())
        .scale(&eps)
        .neg()
        .add(&re_omega().scale(&eps))
}

/// Torsion closed form: (1-k-km/2) eps omega (x) e0 + (km eps/2) raised(e0^omega)
/// + k delta raised(H).
fn torsion_closed_form(spec: &ConnectionSpec) -> FormMatrix {
    let eps = ParamPoly::eps();
    let half = rat(1, 2);
    let c1 = &(&(&ParamPoly::one() - &spec.k) - &(&(&spec.k * &spec.m) * &half)) * &eps;
    let mut t = FormMatrix::zeros(7, 1);
    t.set(0, 0, omega().scale(&c1));

    let raised_e0_omega = raise_index(&Form::gen(E0).wedge(&omega())).expect("coframe 3-form");
    let km_half = &(&(&spec.k * &spec.m) * &eps) * &half;
    t = t.add(&raised_e0_omega.scale(&km_half));

    let raised_flux = raise_index(&flux_form()).expect("coframe 3-form");
    t = t.add(&raised_flux.scale(&(&spec.k * &spec.delta)));
    t
}

/// Builds the family member A + (k eps/2) B + (k eps delta/2) C + (k m eps/2) e0*imat,
/// computes its torsion from the defining relation, and verifies both the
/// antisymmetry of the matrix and the closed form of the torsion.
pub fn build_connection(spec: &ConnectionSpec) -> Result<Connection, ConnectionError> {
    let base = base_matrices();
    let ke2 = spec.half_keps();
    let mut matrix = base.a.add(&base.b.scale(&ke2));
    matrix = matrix.add(&base.c.scale(&(&ke2 * &spec.delta)));
    let e0_imat = base.imat.wedge_scalar(&Form::gen(E0));
    matrix = matrix.add(&e0_imat.scale(&(&ke2 * &spec.m)));

    if matrix.transpose() != matrix.neg() {
        return Err(ConnectionError::Defect("connection matrix is not antisymmetric".into()));
    }

    let col = coframe_column();
    let torsion = col.d().add(&matrix.mwedge(&col));
    let expected = torsion_closed_form(spec);
    if torsion != expected {
        return Err(ConnectionError::Defect(format!(
            "torsion closed form mismatch for {}",
            spec.label
        )));
    }
    Ok(Connection {
        spec: spec.clone(),
        matrix,
        torsion,
    })
}

/// d(theta) + theta ^ theta for an arbitrary matrix of 1-forms.
pub fn curvature_of_matrix(matrix: &FormMatrix) -> FormMatrix {
    matrix.d().add(&matrix.mwedge(matrix))
}

pub struct Curvature {
    pub spec: ConnectionSpec,
    pub matrix: FormMatrix,
}

/// The three quadratic building blocks of the curvature and their
/// combination Q^delta_m = (1-delta+m) Qminus + (1+delta) Qplus + delta^2 Qzero.
pub struct QParts {
    pub minus: FormMatrix,
    pub plus: FormMatrix,
    pub zero: FormMatrix,
    pub combined: FormMatrix,
}

pub fn q_minus(delta: &ParamPoly) -> FormMatrix {
    let e = e_column();
    let je = je_column();
    let one_plus = &ParamPoly::one() + delta;
    let minus_2d = &(-delta) * &crate::scalars::int(2);
    let inner = block7(
        Form::zero(),
        (&e.transpose().scale(&one_plus), &je.transpose().scale(&one_plus)),
        (&e.scale(&one_plus).neg(), &je.scale(&one_plus).neg()),
        [
            &boxop(&je).scale(&minus_2d),
            &boxop(&e).scale(&minus_2d),
            &boxop(&e).scale(&minus_2d),
            &boxop(&je).scale(&minus_2d).neg(),
        ],
    );
    inner.wedge_scalar(&Form::gen(E0))
}

pub fn q_plus(delta: &ParamPoly) -> FormMatrix {
    let e = e_column();
    let je = je_column();
    let one_plus = &ParamPoly::one() + delta;
    let exje = cross(&e, &je);
    let diff = cross(&e, &e).sub(&cross(&je, &je));
    let two_d = delta * &crate::scalars::int(2);
    block7(
        Form::zero(),
        (
            &exje.transpose().scale(&two_d),
            &diff.transpose().scale(delta),
        ),
        (&exje.scale(&two_d).neg(), &diff.scale(delta).neg()),
        [
            &je.mwedge(&je.transpose()).scale(&one_plus).neg(),
            &je.mwedge(&e.transpose()).scale(&one_plus),
            &e.mwedge(&je.transpose()).scale(&one_plus),
            &e.mwedge(&e.transpose()).scale(&one_plus).neg(),
        ],
    )
}

pub fn q_zero() -> FormMatrix {
    let e = e_column();
    let je = je_column();
    let sum_cross = boxop(&cross(&e, &e).add(&cross(&je, &je)));
    let comm = boxop(&e)
        .mwedge(&boxop(&je))
        .sub(&boxop(&je).mwedge(&boxop(&e)));
    let z13 = FormMatrix::zeros(1, 3);
    let z31 = FormMatrix::zeros(3, 1);
    block7(
        Form::zero(),
        (&z13, &z13),
        (&z31, &z31),
        [
            &sum_cross.neg(),
            &comm.scale_all(&crate::scalars::int(-2)),
            &comm.scale_all(&crate::scalars::int(2)),
            &sum_cross.neg(),
        ],
    )
    .scale(&ParamPoly::rat(1, 2))
}

/// Builds Qminus, Qplus, Qzero for the given delta, their m-combination, and
/// verifies (B + delta C)^2 = (1-delta) Qminus + (1+delta) Qplus + delta^2 Qzero.
pub fn q_parts(spec: &ConnectionSpec) -> Result<QParts, ConnectionError> {
    let minus = q_minus(&spec.delta);
    let plus = q_plus(&spec.delta);
    let zero = q_zero();
    let base = base_matrices();
    let bdc = base.b.add(&base.c.scale(&spec.delta));
    let square = bdc.mwedge(&bdc);
    let one = ParamPoly::one();
    let untwisted = minus
        .scale(&(&one - &spec.delta))
        .add(&plus.scale(&(&one + &spec.delta)))
        .add(&zero.scale(&(&spec.delta * &spec.delta)));
    if square != untwisted {
        return Err(ConnectionError::Defect(
            "(B + delta C)^2 decomposition failed".into(),
        ));
    }
    let combined = minus
        .scale(&(&(&one - &spec.delta) + &spec.m))
        .add(&plus.scale(&(&one + &spec.delta)))
        .add(&zero.scale(&(&spec.delta * &spec.delta)));
    debug_assert!(combined.is_degree_homogeneous(2));
    Ok(QParts {
        minus,
        plus,
        zero,
        combined,
    })
}

/// Curvature of a family member, verified against its closed form
/// F_A + (k eps^2 (1-delta+m)/2) omega*imat + (k^2 eps^2/4) Q^delta_m.
pub fn curvature(conn: &Connection) -> Result<Curvature, ConnectionError> {
    let raw = curvature_of_matrix(&conn.matrix);
    let spec = &conn.spec;
    let base = base_matrices();
    let fa = curvature_of_matrix(&base.a);
    let eps = ParamPoly::eps();
    let eps2 = &eps * &eps;
    let one = ParamPoly::one();
    let lin = &(&(&spec.k * &eps2) * &(&(&one - &spec.delta) + &spec.m)) * &rat(1, 2);
    let quad = &(&(&spec.k * &spec.k) * &eps2) * &rat(1, 4);
    let q = q_parts(spec)?;
    let expected = fa
        .add(&base.imat.wedge_scalar(&omega()).scale(&lin))
        .add(&q.combined.scale(&quad));
    if raw != expected {
        return Err(ConnectionError::Defect(format!(
            "curvature closed form mismatch for {}",
            spec.label
        )));
    }
    Ok(Curvature {
        spec: spec.clone(),
        matrix: raw,
    })
}

/// Closed-form residual coefficients of the instanton defect.
#[derive(Clone, Debug)]
pub struct ResidualCoefficients {
    pub lambda1: ParamPoly,
    pub lambda2: ParamPoly,
    pub lambda3: ParamPoly,
}

pub fn residual_coefficients(spec: &ConnectionSpec) -> ResidualCoefficients {
    let eps2 = &ParamPoly::eps() * &ParamPoly::eps();
    let one = ParamPoly::one();
    let keps2 = &spec.k * &eps2;
    let k2eps2 = &spec.k * &keps2;
    let six = ParamPoly::int(6);
    let three = ParamPoly::int(3);
    // lambda1 = k eps^2 (6(1-delta+m) + k(1-delta)(1+3delta)) / 4
    let lambda1 = &(&keps2
        * &(&(&six * &(&(&one - &spec.delta) + &spec.m))
            + &(&spec.k * &(&(&one - &spec.delta) * &(&one + &(&three * &spec.delta))))))
        * &rat(1, 4);
    // lambda2 = (k^2 eps^2 / 4) (1 + m - 5 delta)(1 + delta)
    let lambda2 = &(&k2eps2
        * &(&(&(&one + &spec.m) - &(&ParamPoly::int(5) * &spec.delta)) * &(&one + &spec.delta)))
        * &rat(1, 4);
    // lambda3 = (k^2 eps^2 / 4) (delta^2 - 2(2+m) delta - 1)
    let lambda3 = &(&k2eps2
        * &(&(&(&spec.delta * &spec.delta)
            - &(&(&ParamPoly::int(2) * &(&ParamPoly::int(2) + &spec.m)) * &spec.delta))
            - &one))
        * &rat(1, 4);
    ResidualCoefficients {
        lambda1,
        lambda2,
        lambda3,
    }
}

/// The closed form of R ^ psi: lambda1 (omega^3/6) imat plus
/// (k^2 eps^2/4) e0 ^ (omega^2/2) ^ (bordered box pattern).
pub fn residual_closed_form(spec: &ConnectionSpec, model: &G2Model) -> FormMatrix {
    let coeffs = residual_coefficients(spec);
    let base = base_matrices();
    let omega3_6 = model.omega.pow_wedge(3).scale(&ParamPoly::rat(1, 6));
    let first = base
        .imat
        .wedge_scalar(&omega3_6)
        .scale(&coeffs.lambda1);

    let one = ParamPoly::one();
    // border coefficient (1+m-5delta)(1+delta), interior delta^2-2(2+m)delta-1
    let border = &(&(&one + &spec.m) - &(&ParamPoly::int(5) * &spec.delta)) * &(&one + &spec.delta);
    let interior = &(&(&spec.delta * &spec.delta)
        - &(&(&ParamPoly::int(2) * &(&ParamPoly::int(2) + &spec.m)) * &spec.delta))
        - &one;
    let e = e_column();
    let je = je_column();
    let pattern = block7(
        Form::zero(),
        (
            &e.transpose().scale(&border),
            &je.transpose().scale(&border),
        ),
        (&e.scale(&border).neg(), &je.scale(&border).neg()),
        [
            &boxop(&je).scale(&interior),
            &boxop(&e).scale(&interior),
            &boxop(&e).scale(&interior),
            &boxop(&je).scale(&interior).neg(),
        ],
    );
    let half_omega2 = model.omega.wedge(&model.omega).scale(&ParamPoly::rat(1, 2));
    let prefix = Form::gen(E0).wedge(&half_omega2);
    let quad = &(&(&spec.k * &spec.k) * &(&ParamPoly::eps() * &ParamPoly::eps())) * &rat(1, 4);
    first.add(&pattern.wedge_scalar(&prefix).scale(&quad))
}

/// Entrywise R ^ psi, verified to equal the closed form modulo the relation
/// ideal. Returns the raw matrix of 6-forms.
pub fn instanton_residual(
    curv: &Curvature,
    model: &G2Model,
    ideal: &RelationIdeal,
    support: MultiplierSupport,
) -> Result<FormMatrix, ConnectionError> {
    let rpsi = curv.matrix.map(|f| f.wedge(&model.psi));
    let closed = residual_closed_form(&curv.spec, model);
    let diff = rpsi.sub(&closed);
    for i in 0..7 {
        for j in 0..7 {
            let residue = ideal.reduce(diff.at(i, j), support);
            if !residue.is_zero() {
                return Err(ConnectionError::Defect(format!(
                    "instanton residual entry ({i},{j}) not ideal-reducible: {}",
                    residue
                )));
            }
        }
    }
    Ok(rpsi)
}

/// Reads lambda1..lambda3 off the raw R ^ psi matrix from the coefficients of
/// three pure-coframe monomials (the formal curvature parts never touch them):
/// entry (e1,f1) at e1^f1^e2^f2^e3^f3 carries -lambda1; entry (e0,e1) at
/// e0^e1^e2^f2^e3^f3 carries lambda2; entry (e1,e2) at e0^e1^f1^e2^f2^f3
/// carries lambda3.
pub fn extract_residual_coefficients(rpsi: &FormMatrix) -> ResidualCoefficients {
    let vol6 = Monomial::from_odd(&[E_VEC[0], F_VEC[0], E_VEC[1], F_VEC[1], E_VEC[2], F_VEC[2]])
        .unwrap()
        .0;
    let m2 = Monomial::from_odd(&[E0, E_VEC[0], E_VEC[1], F_VEC[1], E_VEC[2], F_VEC[2]])
        .unwrap()
        .0;
    let m3 = Monomial::from_odd(&[E0, E_VEC[0], F_VEC[0], E_VEC[1], F_VEC[1], F_VEC[2]])
        .unwrap()
        .0;
    ResidualCoefficients {
        lambda1: -&rpsi.at(1, 4).coeff(&vol6),
        lambda2: rpsi.at(0, 1).coeff(&m2),
        lambda3: rpsi.at(1, 2).coeff(&m3),
    }
}

/// Torsion tensor coefficient t_{ijk} in matrix coframe order, lowered with
/// the identity.
fn torsion_coefficient(torsion: &FormMatrix, i: usize, j: usize, k: usize) -> ParamPoly {
    if j == k {
        return ParamPoly::zero();
    }
    let f = Form::wedge_of(&[MATRIX_COFRAME[j], MATRIX_COFRAME[k]]);
    let (monomial, poly) = f.terms().next().expect("distinct generators");
    let sign = poly.as_constant().expect("unit coefficient");
    &torsion.at(i, 0).coeff(monomial) * &sign
}

/// The non-vanishing components of t_{ijk} + t_{jik}; empty exactly when the
/// torsion is totally skew-symmetric.
pub fn skew_torsion_defects(conn: &Connection) -> Vec<ParamPoly> {
    let mut out = Vec::new();
    for i in 0..7 {
        for j in i..7 {
            for k in 0..7 {
                let d = &torsion_coefficient(&conn.torsion, i, j, k)
                    + &torsion_coefficient(&conn.torsion, j, i, k);
                if !d.is_zero() {
                    out.push(d);
                }
            }
        }
    }
    out
}

pub fn skew_torsion_test(conn: &Connection) -> bool {
    skew_torsion_defects(conn).is_empty()
}

/// For the symbolic family: every skewness defect is a rational multiple of
/// eps*(1 - k - km/2), with at least one nonzero multiple, which establishes
/// "totally skew iff 1 - k(1+m/2) = 0" for all numeric parameter choices.
pub fn skew_torsion_iff_certificate(conn: &Connection) -> bool {
    let eps = ParamPoly::eps();
    let predicate = &(&(&ParamPoly::one() - &ParamPoly::k())
        - &(&(&ParamPoly::k() * &ParamPoly::m()) * &rat(1, 2)))
        * &eps;
    let defects = skew_torsion_defects(conn);
    if defects.is_empty() {
        return false;
    }
    let mut some_nonzero = false;
    for d in defects {
        let ratio = d.coeff(&[1, 0, 0, 0]);
        if (&predicate * &ratio) != d {
            return false;
        }
        if !ratio.is_zero() {
            some_nonzero = true;
        }
    }
    some_nonzero
}

/// Tests whether an antisymmetric matrix of 1-forms takes values in the
/// 14-dimensional stabilizer algebra: each generator direction g yields a
/// constant-coefficient 2-form sigma(g) = sum_{i<j} M(g)_ij c_i ^ c_j which
/// must satisfy sigma ^ psi = 0.
pub fn g2_valued_test(matrix: &FormMatrix, model: &G2Model) -> bool {
    for g in (0..crate::exterior::ODD_COUNT).map(crate::exterior::Generator) {
        if g.is_test_generator() {
            continue;
        }
        let gm = Monomial::generator(g);
        let mut sigma = Form::zero();
        for i in 0..7 {
            for j in (i + 1)..7 {
                let coeff = matrix.at(i, j).coeff(&gm);
                if coeff.is_zero() {
                    continue;
                }
                sigma = sigma
                    .add(&Form::wedge_of(&[MATRIX_COFRAME[i], MATRIX_COFRAME[j]]).scale(&coeff));
            }
        }
        if !sigma.wedge(&model.psi).is_zero() {
            return false;
        }
    }
    true
}

impl FormMatrix {
    /// Entrywise scale by a rational constant.
    pub fn scale_all(&self, r: &Rational) -> FormMatrix {
        self.map(|f| f.scale_rat(r))
    }
}

/// lambda0 = k^2 eps^2 (k^2 delta^2 (1+delta)^2 + (1-delta+m)(k(4 delta^2 - (1+delta)^2) - 3)).
pub fn lambda0_poly(spec: &ConnectionSpec) -> ParamPoly {
    let one = ParamPoly::one();
    let eps2 = &ParamPoly::eps() * &ParamPoly::eps();
    let k2 = &spec.k * &spec.k;
    let d1 = &one + &spec.delta;
    let d1sq = &d1 * &d1;
    let head = &(&k2 * &(&spec.delta * &spec.delta)) * &d1sq;
    let quad = &(&ParamPoly::int(4) * &(&spec.delta * &spec.delta)) - &d1sq;
    let tail = &(&(&one - &spec.delta) + &spec.m) * &(&(&spec.k * &quad) - &ParamPoly::int(3));
    &(&k2 * &eps2) * &(&head + &tail)
}

pub use crate::exterior::GEN_COUNT as GENERATOR_COUNT;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::g2::build_model;
    use crate::scalars::int;
    use crate::verifier::build_ideal;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn eps() -> ParamPoly {
        ParamPoly::eps()
    }

    #[test]
    fn base_matrix_layouts() {
        let base = base_matrices();
        // A: a-block at rows/cols 1..3, b-block at rows 1..3 cols 4..6
        assert_eq!(*base.a.at(1, 2), Form::gen(crate::exterior::A12));
        assert_eq!(*base.a.at(1, 4), Form::gen(crate::exterior::B11));
        assert_eq!(*base.a.at(4, 1), Form::gen(crate::exterior::B11).neg());
        assert_eq!(*base.a.at(4, 5), Form::gen(crate::exterior::A12));
        assert!(base.a.at(0, 0).is_zero());
        // C - (C without e0) = -e0 * imat
        let e = e_column();
        let je = je_column();
        let z33 = FormMatrix::zeros(3, 3);
        let _ = z33;
        let c0 = block7(
            Form::zero(),
            (&je.transpose(), &e.transpose().neg()),
            (&je.neg(), &e),
            [
                &boxop(&e).neg(),
                &boxop(&je),
                &boxop(&je),
                &boxop(&e),
            ],
        );
        assert_eq!(
            base.c.sub(&c0),
            base.imat.wedge_scalar(&Form::gen(E0)).neg()
        );
        // imat squares to -diag(0, I, I)
        let sq = base.imat.mwedge(&base.imat);
        let mut expected = FormMatrix::zeros(7, 7);
        for i in 1..7 {
            expected.set(i, i, Form::one().neg());
        }
        assert_eq!(sq, expected);
    }

    #[test]
    fn imat_layout() {
        let base = base_matrices();
        for i in 0..7 {
            for j in 0..7 {
                let expected = if (1..4).contains(&i) && j == i + 3 {
                    Form::one().neg()
                } else if (4..7).contains(&i) && j == i - 3 {
                    Form::one()
                } else {
                    Form::zero()
                };
                assert_eq!(*base.imat.at(i, j), expected, "imat entry ({i},{j})");
            }
        }
    }

    #[test]
    fn q_zero_middle_block() {
        let q0 = q_zero();
        let e = e_column();
        let je = je_column();
        let sum = boxop(&cross(&e, &e).add(&cross(&je, &je)));
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(
                    *q0.at(1 + i, 1 + j),
                    sum.at(i, j).scale(&ParamPoly::rat(-1, 2)),
                    "Qzero middle block ({i},{j})"
                );
            }
        }
        assert!(q0.at(0, 0).is_zero());
    }

    #[test]
    fn levi_civita_matrix_golden() {
        // A + (eps/2)B against the explicit structure-equation matrix
        let base = base_matrices();
        let theta = base.a.add(&base.b.scale(&(&eps() * &rat(1, 2))));
        let e = e_column();
        let je = je_column();
        let half_eps = &eps() * &rat(1, 2);
        let he_e0 = FormMatrix::scalar_identity(3, Form::gen(E0).scale(&half_eps));
        let a3 = a_block();
        let b3 = b_block();
        let golden = block7(
            Form::zero(),
            (
                &je.transpose().scale(&half_eps),
                &e.transpose().scale(&half_eps).neg(),
            ),
            (&je.scale(&half_eps).neg(), &e.scale(&half_eps)),
            [&a3, &b3.sub(&he_e0), &b3.neg().add(&he_e0), &a3],
        );
        assert_eq!(theta, golden);
        // and the defining relation d(col) + theta ^ col = 0
        let col = coframe_column();
        assert!(col.d().add(&theta.mwedge(&col)).is_zero());
    }

    #[test]
    fn b_wedge_b_golden() {
        let base = base_matrices();
        let bb = base.b.mwedge(&base.b);
        let e = e_column();
        let je = je_column();
        let e0w = |v: &FormMatrix| v.map(|f| Form::gen(E0).wedge(f));
        let golden = block7(
            Form::zero(),
            (
                &e0w(&e.transpose()),
                &e0w(&je.transpose()),
            ),
            (&e0w(&e).neg(), &e0w(&je).neg()),
            [
                &je.mwedge(&je.transpose()).neg(),
                &je.mwedge(&e.transpose()),
                &e.mwedge(&je.transpose()),
                &e.mwedge(&e.transpose()).neg(),
            ],
        );
        assert_eq!(bb, golden);
    }

    #[test]
    fn db_and_dc_identities() {
        let base = base_matrices();
        let omega_imat = base.imat.wedge_scalar(&omega());
        let lhs_b = base
            .b
            .d()
            .add(&base.a.mwedge(&base.b))
            .add(&base.b.mwedge(&base.a));
        assert_eq!(lhs_b, omega_imat.scale(&eps()));
        let lhs_c = base
            .c
            .d()
            .add(&base.a.mwedge(&base.c))
            .add(&base.c.mwedge(&base.a));
        assert_eq!(lhs_c, omega_imat.scale(&eps()).neg());
    }

    #[test]
    fn connection_family_members() {
        // Levi-Civita: delta=0, k=1 -> torsion 0
        let lc = build_connection(&ConnectionSpec::levi_civita()).unwrap();
        assert!(lc.torsion.is_zero());
        // Bismut matrix golden at symbolic k
        let bk = build_connection(&ConnectionSpec::bismut_k()).unwrap();
        let base = base_matrices();
        let keps = &ParamPoly::k() * &eps();
        let golden = base
            .a
            .add(&base.b.add(&base.c).scale(&(&keps * &rat(1, 2))));
        assert_eq!(bk.matrix, golden);
        assert!(bk.matrix.at(0, 0).is_zero());
        // no e0 entries anywhere in the Bismut matrix
        for i in 0..7 {
            for j in 0..7 {
                let f = bk.matrix.at(i, j);
                for (m, _) in f.terms() {
                    assert!(!m.contains_odd(E0), "unexpected e0 entry at ({i},{j})");
                }
            }
        }
        // Bismut k=1 torsion equals the raised flux
        let b1 = build_connection(&ConnectionSpec::bismut()).unwrap();
        assert_eq!(b1.torsion, raise_index(&flux_form()).unwrap());
        // Hull matrix golden: A + (k eps/2)(B - C)
        let hk = build_connection(&ConnectionSpec::hull_k()).unwrap();
        let golden_h = base
            .a
            .add(&base.b.sub(&base.c).scale(&(&keps * &rat(1, 2))));
        assert_eq!(hk.matrix, golden_h);
        // squashed family: torsion (1-k) eps omega (x) e0
        let sq = build_connection(&ConnectionSpec {
            delta: ParamPoly::zero(),
            k: ParamPoly::k(),
            m: ParamPoly::zero(),
            label: "squashed".into(),
        })
        .unwrap();
        let c1 = &(&ParamPoly::one() - &ParamPoly::k()) * &eps();
        let mut expected = FormMatrix::zeros(7, 1);
        expected.set(0, 0, omega().scale(&c1));
        assert_eq!(sq.torsion, expected);
    }

    #[test]
    fn delta_family_matrix_golden() {
        // explicit layout: border (k eps(1+delta)/2)(Je^T, -e^T), middle
        // a -+ (k eps delta/2)[e], off-diagonal b -+ (k eps(1-delta)/2) e0 I
        // + (k eps delta/2)[Je]
        let spec = ConnectionSpec::symbolic_untwisted();
        let conn = build_connection(&spec).unwrap();
        let e = e_column();
        let je = je_column();
        let one = ParamPoly::one();
        let keps = &ParamPoly::k() * &eps();
        let border = &(&keps * &(&one + &ParamPoly::delta())) * &rat(1, 2);
        let half_kd = &(&keps * &ParamPoly::delta()) * &rat(1, 2);
        let half_k1d = &(&keps * &(&one - &ParamPoly::delta())) * &rat(1, 2);
        let a3 = a_block();
        let b3 = b_block();
        let e0_term = FormMatrix::scalar_identity(3, Form::gen(E0).scale(&half_k1d));
        let golden = block7(
            Form::zero(),
            (
                &je.transpose().scale(&border),
                &e.transpose().scale(&border).neg(),
            ),
            (&je.scale(&border).neg(), &e.scale(&border)),
            [
                &a3.sub(&boxop(&e).scale(&half_kd)),
                &b3.sub(&e0_term).add(&boxop(&je).scale(&half_kd)),
                &b3.neg().add(&e0_term).add(&boxop(&je).scale(&half_kd)),
                &a3.add(&boxop(&e).scale(&half_kd)),
            ],
        );
        assert_eq!(conn.matrix, golden);
    }

    #[test]
    fn raised_flux_component_golden() {
        // component display of the index-raised flux, in matrix order
        // (e0, e1, e2, e3, Je1, Je2, Je3)
        let raised = raise_index(&flux_form()).unwrap();
        assert_eq!(*raised.at(0, 0), omega().scale(&eps()).neg());
        for i in 0..3 {
            let (p, q) = ((i + 1) % 3, (i + 2) % 3);
            let e_slot = Form::wedge_of(&[E0, F_VEC[i]])
                .add(&Form::wedge_of(&[E_VEC[p], E_VEC[q]]))
                .sub(&Form::wedge_of(&[F_VEC[p], F_VEC[q]]))
                .scale(&eps());
            assert_eq!(*raised.at(1 + i, 0), e_slot, "e-slot {i}");
            let f_slot = Form::wedge_of(&[E0, E_VEC[i]])
                .add(&Form::wedge_of(&[E_VEC[p], F_VEC[q]]))
                .sub(&Form::wedge_of(&[E_VEC[q], F_VEC[p]]))
                .scale(&eps())
                .neg();
            assert_eq!(*raised.at(4 + i, 0), f_slot, "f-slot {i}");
        }
    }

    #[test]
    fn curvature_of_pullback_is_block_curvature() {
        let conn = build_connection(&ConnectionSpec::pullback_instanton()).unwrap();
        let curv = curvature(&conn).unwrap();
        let z13 = FormMatrix::zeros(1, 3);
        let z31 = FormMatrix::zeros(3, 1);
        let al = alpha_block();
        let be = beta_block();
        let golden = block7(
            Form::zero(),
            (&z13, &z13),
            (&z31, &z31),
            [&al, &be, &be.neg(), &al],
        );
        assert_eq!(curv.matrix, golden);
    }

    #[test]
    fn curvature_decomposition_symbolic() {
        let conn = build_connection(&ConnectionSpec::symbolic()).unwrap();
        let curv = curvature(&conn).unwrap();
        // squashing member: R = F_A + (k eps^2/2) omega imat + (k^2 eps^2/4) B^B
        let base = base_matrices();
        let sq = build_connection(&ConnectionSpec {
            delta: ParamPoly::zero(),
            k: ParamPoly::k(),
            m: ParamPoly::zero(),
            label: "squashed".into(),
        })
        .unwrap();
        let sq_curv = curvature(&sq).unwrap();
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
            .add(&base.b.mwedge(&base.b).scale(&(&(&(&k * &k) * &eps2) * &rat(1, 4))));
        assert_eq!(sq_curv.matrix, expected);
        let _ = curv;
    }

    #[test]
    fn bismut_hull_curvature_goldens() {
        let base = base_matrices();
        // (B+C)^2 = 2 Qplus(1) + Qzero and R_bismut = F_A + (eps^2/4)(B+C)^2
        let bc = base.b.add(&base.c);
        let sq = bc.mwedge(&bc);
        let one = ParamPoly::one();
        assert_eq!(sq, q_plus(&one).scale_all(&int(2)).add(&q_zero()));
        let bismut = build_connection(&ConnectionSpec::bismut()).unwrap();
        let rb = curvature(&bismut).unwrap();
        let fa = curvature_of_matrix(&base.a);
        let eps2 = &eps() * &eps();
        assert_eq!(rb.matrix, fa.add(&sq.scale(&(&eps2 * &rat(1, 4)))));
        // (B-C)^2 = 2 Qminus(-1) + Qzero and R_hull = F_A + eps^2 omega imat + (eps^2/4)(B-C)^2
        let bmc = base.b.sub(&base.c);
        let sqm = bmc.mwedge(&bmc);
        let minus_one = ParamPoly::int(-1);
        assert_eq!(sqm, q_minus(&minus_one).scale_all(&int(2)).add(&q_zero()));
        let hull = build_connection(&ConnectionSpec::hull()).unwrap();
        let rh = curvature(&hull).unwrap();
        let expected_h = fa
            .add(&base.imat.wedge_scalar(&omega()).scale(&eps2))
            .add(&sqm.scale(&(&eps2 * &rat(1, 4))));
        assert_eq!(rh.matrix, expected_h);
    }

    #[test]
    fn twist_products() {
        let base = base_matrices();
        let e0_imat = base.imat.wedge_scalar(&Form::gen(E0));
        let anti = |x: &FormMatrix| e0_imat.mwedge(x).add(&x.mwedge(&e0_imat));
        assert!(anti(&base.a).is_zero());
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
        assert_eq!(anti(&base.b), b_twist);
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
        assert_eq!(anti(&base.c), c_twist);
    }

    #[test]
    fn residual_coefficient_examples() {
        let model = build_model().unwrap();
        let _ = &model;
        let spec = ConnectionSpec::numeric(int(1), int(2), int(0)).unwrap();
        let c = residual_coefficients(&spec);
        let at1 = [int(1), int(0), int(0), int(0)];
        assert_eq!(c.lambda1.eval(&at1), int(0));
        assert_eq!(c.lambda2.eval(&at1), int(-8));
        assert_eq!(c.lambda3.eval(&at1), int(-4));
        let hull = residual_coefficients(&ConnectionSpec::hull_k());
        assert!(hull.lambda2.is_zero());
        let lc = residual_coefficients(&ConnectionSpec::levi_civita());
        assert_eq!(lc.lambda1.eval(&at1), rat(7, 4));
        assert_eq!(lc.lambda2.eval(&at1), rat(1, 4));
        assert_eq!(lc.lambda3.eval(&at1), rat(-1, 4));
    }

    #[test]
    fn residual_extraction_matches_closed_form() {
        let model = build_model().unwrap();
        let conn = build_connection(&ConnectionSpec::symbolic()).unwrap();
        let curv = curvature(&conn).unwrap();
        let rpsi = curv.matrix.map(|f| f.wedge(&model.psi));
        let extracted = extract_residual_coefficients(&rpsi);
        let closed = residual_coefficients(&conn.spec);
        assert_eq!(extracted.lambda1, closed.lambda1);
        assert_eq!(extracted.lambda2, closed.lambda2);
        assert_eq!(extracted.lambda3, closed.lambda3);
    }

    #[test]
    fn residual_of_pullback_curvature_reduces_to_zero() {
        let model = build_model().unwrap();
        let ideal = build_ideal();
        let conn = build_connection(&ConnectionSpec::pullback_instanton()).unwrap();
        let curv = curvature(&conn).unwrap();
        let rpsi =
            instanton_residual(&curv, &model, &ideal, MultiplierSupport::Restricted).unwrap();
        // closed form at k = 0 is identically zero, so R^psi itself is in the ideal
        let closed = residual_closed_form(&conn.spec, &model);
        assert!(closed.is_zero());
        let _ = rpsi;
    }

    #[test]
    fn skew_torsion_examples() {
        let bismut = build_connection(&ConnectionSpec::bismut()).unwrap();
        assert!(skew_torsion_test(&bismut));
        let t1 = build_connection(&ConnectionSpec::numeric(int(0), int(2), int(-1)).unwrap())
            .unwrap();
        assert!(skew_torsion_test(&t1));
        let t2 =
            build_connection(&ConnectionSpec::numeric(int(0), int(2), int(0)).unwrap()).unwrap();
        assert!(!skew_torsion_test(&t2));
        // symbolic certificate
        let sym = build_connection(&ConnectionSpec::symbolic()).unwrap();
        assert!(skew_torsion_iff_certificate(&sym));
    }

    #[test]
    fn g2_valuedness() {
        let model = build_model().unwrap();
        let base = base_matrices();
        assert!(g2_valued_test(&base.a, &model));
        let bk = build_connection(&ConnectionSpec::bismut_k()).unwrap();
        assert!(g2_valued_test(&bk.matrix, &model));
        let hk = build_connection(&ConnectionSpec::hull_k()).unwrap();
        assert!(!g2_valued_test(&hk.matrix, &model));
    }

    #[test]
    fn no_instanton_witness_on_pseudorandom_parameters() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x907e5);
        let at1 = [int(1), int(1), int(0), int(0)];
        for _ in 0..100 {
            let delta = rat(rng.gen_range(-20..=20), rng.gen_range(1..=9));
            let m = rat(rng.gen_range(-20..=20), rng.gen_range(1..=9));
            let spec = ConnectionSpec::numeric(delta.clone(), int(1), m.clone()).unwrap();
            let c = residual_coefficients(&spec);
            let all_zero = c.lambda1.eval(&at1).is_zero()
                && c.lambda2.eval(&at1).is_zero()
                && c.lambda3.eval(&at1).is_zero();
            assert!(
                !all_zero,
                "unexpected instanton at delta={delta}, m={m} with k=1, eps=1"
            );
        }
    }

}
