//! Matrices and vectors of forms: matrix wedge, trace, transpose, the 1+3+3
//! block assembly and the box/cross covariant operations.

use crate::exterior::{ExteriorError, Form, Generator, E0, E_VEC, F_VEC};
use crate::scalars::ParamPoly;
use std::fmt;

/// Row/column order of all 7x7 matrices and 7-vectors: (e0, e1, e2, e3, f1, f2, f3).
pub const MATRIX_COFRAME: [Generator; 7] = [E0, E_VEC[0], E_VEC[1], E_VEC[2], F_VEC[0], F_VEC[1], F_VEC[2]];

/// Rectangular matrix of forms, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct FormMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Form>,
}

/// A FormMatrix with a single column.
pub type VectorForm = FormMatrix;

impl FormMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Form>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        FormMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        FormMatrix {
            rows,
            cols,
            entries: vec![Form::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Form) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        FormMatrix { rows, cols, entries }
    }

    pub fn column(entries: Vec<Form>) -> Self {
        let rows = entries.len();
        FormMatrix { rows, cols: 1, entries }
    }

    pub fn row(entries: Vec<Form>) -> Self {
        let cols = entries.len();
        FormMatrix { rows: 1, cols, entries }
    }

    /// n x n identity with 0-form entries.
    pub fn identity(n: usize) -> Self {
        Self::scalar_identity(n, Form::one())
    }

    /// n x n diagonal matrix with the given form on the diagonal.
    pub fn scalar_identity(n: usize, f: Form) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { f.clone() } else { Form::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Form {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, f: Form) {
        self.entries[i * self.cols + j] = f;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Form::is_zero)
    }

    /// Every nonzero entry is homogeneous of the given degree.
    pub fn is_degree_homogeneous(&self, p: u8) -> bool {
        self.entries.iter().all(|f| f.is_homogeneous(p))
    }

    pub fn map(&self, f: impl Fn(&Form) -> Form) -> Self {
        FormMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn add(&self, rhs: &FormMatrix) -> FormMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        FormMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &FormMatrix) -> FormMatrix {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> FormMatrix {
        self.map(|f| f.neg())
    }

    pub fn scale(&self, p: &ParamPoly) -> FormMatrix {
        self.map(|f| f.scale(p))
    }

    /// Entrywise left wedge by a single form (s ^ entry).
    pub fn wedge_scalar(&self, s: &Form) -> FormMatrix {
        self.map(|f| s.wedge(f))
    }

    /// Matrix wedge product: entry (i,j) = sum_s self(i,s) ^ rhs(s,j).
    pub fn mwedge(&self, rhs: &FormMatrix) -> FormMatrix {
        assert_eq!(self.cols, rhs.rows, "mwedge dimension mismatch");
        FormMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = Form::zero();
            for s in 0..self.cols {
                acc = acc.add(&self.at(i, s).wedge(rhs.at(s, j)));
            }
            acc
        })
    }

    /// Sum of diagonal entries.
    pub fn mtrace(&self) -> Form {
        assert_eq!(self.rows, self.cols, "mtrace requires a square matrix");
        let mut acc = Form::zero();
        for i in 0..self.rows {
            acc = acc.add(self.at(i, i));
        }
        acc
    }

    /// Trace of self ^ rhs without materializing the full product.
    pub fn trace_mwedge(&self, rhs: &FormMatrix) -> Form {
        assert_eq!(self.cols, rhs.rows, "trace_mwedge dimension mismatch");
        assert_eq!(self.rows, rhs.cols, "trace_mwedge dimension mismatch");
        let mut acc = Form::zero();
        for i in 0..self.rows {
            for s in 0..self.cols {
                acc = acc.add(&self.at(i, s).wedge(rhs.at(s, i)));
            }
        }
        acc
    }

    /// Entrywise exterior derivative.
    pub fn d(&self) -> FormMatrix {
        self.map(|f| f.d())
    }

    /// Plain transpose; no sign is applied to the entries.
    pub fn transpose(&self) -> FormMatrix {
        FormMatrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            out.push_str("[ ");
            for j in 0..self.cols {
                if j > 0 {
                    out.push_str(" | ");
                }
                out.push_str(&self.at(i, j).render());
            }
            out.push_str(" ]\n");
        }
        out
    }
}

impl fmt::Display for FormMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Debug for FormMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} matrix\n{}", self.rows, self.cols, self.render())
    }
}

/// The skew 3x3 pattern of a 3-vector:
/// [[0, a3, -a2], [-a3, 0, a1], [a2, -a1, 0]].
pub fn boxop(v: &VectorForm) -> FormMatrix {
    assert_eq!((v.rows(), v.cols()), (3, 1), "boxop requires a 3x1 vector");
    let a = |i: usize| v.at(i, 0).clone();
    FormMatrix::new(
        3,
        3,
        vec![
            Form::zero(),
            a(2),
            a(1).neg(),
            a(2).neg(),
            Form::zero(),
            a(0),
            a(1),
            a(0).neg(),
            Form::zero(),
        ],
    )
}

/// Componentwise cross product of two 3-vectors of 1-forms; symmetric in its
/// arguments because the entries anticommute.
pub fn cross(a: &VectorForm, b: &VectorForm) -> VectorForm {
    assert_eq!((a.rows(), a.cols()), (3, 1), "cross requires 3x1 vectors");
    assert_eq!((b.rows(), b.cols()), (3, 1), "cross requires 3x1 vectors");
    for v in [a, b] {
        for i in 0..3 {
            assert!(
                v.at(i, 0).is_homogeneous(1),
                "cross requires 1-form entries"
            );
        }
    }
    let e = |v: &VectorForm, i: usize| v.at(i, 0).clone();
    VectorForm::column(vec![
        e(a, 1).wedge(&e(b, 2)).sub(&e(a, 2).wedge(&e(b, 1))),
        e(a, 2).wedge(&e(b, 0)).sub(&e(a, 0).wedge(&e(b, 2))),
        e(a, 0).wedge(&e(b, 1)).sub(&e(a, 1).wedge(&e(b, 0))),
    ])
}

/// Assembles the 1+3+3 block layout
/// [[corner, top0, top1], [left0, m00, m01], [left1, m10, m11]].
pub fn block7(
    corner: Form,
    top: (&FormMatrix, &FormMatrix),
    left: (&FormMatrix, &FormMatrix),
    blocks: [&FormMatrix; 4],
) -> FormMatrix {
    assert_eq!((top.0.rows(), top.0.cols()), (1, 3), "top blocks must be 1x3");
    assert_eq!((top.1.rows(), top.1.cols()), (1, 3), "top blocks must be 1x3");
    assert_eq!((left.0.rows(), left.0.cols()), (3, 1), "left blocks must be 3x1");
    assert_eq!((left.1.rows(), left.1.cols()), (3, 1), "left blocks must be 3x1");
    for b in &blocks {
        assert_eq!((b.rows(), b.cols()), (3, 3), "inner blocks must be 3x3");
    }
    FormMatrix::from_fn(7, 7, |i, j| match (i, j) {
        (0, 0) => corner.clone(),
        (0, _) if j < 4 => top.0.at(0, j - 1).clone(),
        (0, _) => top.1.at(0, j - 4).clone(),
        (_, 0) if i < 4 => left.0.at(i - 1, 0).clone(),
        (_, 0) => left.1.at(i - 4, 0).clone(),
        _ => {
            let (bi, ii) = if i < 4 { (0, i - 1) } else { (1, i - 4) };
            let (bj, jj) = if j < 4 { (0, j - 1) } else { (1, j - 4) };
            blocks[bi * 2 + bj].at(ii, jj).clone()
        }
    })
}

/// The column vector e = (e1, e2, e3)^T.
pub fn e_column() -> VectorForm {
    VectorForm::column(E_VEC.iter().map(|&g| Form::gen(g)).collect())
}

/// The column vector Je = (f1, f2, f3)^T.
pub fn je_column() -> VectorForm {
    VectorForm::column(F_VEC.iter().map(|&g| Form::gen(g)).collect())
}

/// The full coframe column (e0, e, Je)^T.
pub fn coframe_column() -> VectorForm {
    VectorForm::column(MATRIX_COFRAME.iter().map(|&g| Form::gen(g)).collect())
}

/// Raises an index on a pure-coframe 3-form: component i is the interior
/// product with the frame vector dual to coframe entry i.
pub fn raise_index(f: &Form) -> Result<VectorForm, ExteriorError> {
    if !f.is_homogeneous(3) {
        return Err(ExteriorError::NotHomogeneous(3));
    }
    let mut entries = Vec::with_capacity(7);
    for &g in &MATRIX_COFRAME {
        entries.push(f.contract_frame(g)?);
    }
    Ok(VectorForm::column(entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{omega, vol_monomial, Monomial, A12, U1, U2, U3, V1, V2, V3};
    use crate::scalars::{int, rat, ParamPoly};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn u_column() -> VectorForm {
        VectorForm::column(vec![Form::gen(U1), Form::gen(U2), Form::gen(U3)])
    }

    fn v_column() -> VectorForm {
        VectorForm::column(vec![Form::gen(V1), Form::gen(V2), Form::gen(V3)])
    }

    #[test]
    fn boxop_layout_and_zero() {
        let be = boxop(&e_column());
        assert_eq!(*be.at(0, 1), Form::gen(E_VEC[2]));
        assert_eq!(*be.at(0, 2), Form::gen(E_VEC[1]).neg());
        assert_eq!(*be.at(1, 2), Form::gen(E_VEC[0]));
        assert!(be.at(0, 0).is_zero());
        assert!(boxop(&VectorForm::zeros(3, 1)).is_zero());
    }

    #[test]
    fn cross_examples() {
        let c = cross(&e_column(), &je_column());
        let expected = Form::wedge_of(&[E_VEC[1], F_VEC[2]]).sub(&Form::wedge_of(&[E_VEC[2], F_VEC[1]]));
        assert_eq!(*c.at(0, 0), expected);
        let cee = cross(&e_column(), &e_column());
        assert_eq!(
            *cee.at(0, 0),
            Form::wedge_of(&[E_VEC[1], E_VEC[2]]).scale_rat(&int(2))
        );
        // symmetry of the cross on 1-forms
        let cuv = cross(&u_column(), &v_column());
        let cvu = cross(&v_column(), &u_column());
        assert_eq!(cuv, cvu);
    }

    #[test]
    fn box_wedge_vector_is_minus_cross() {
        let lhs = boxop(&e_column()).mwedge(&e_column());
        let rhs = cross(&e_column(), &e_column()).neg();
        assert_eq!(lhs, rhs);
    }

    /// The five generic identities for 3x1 vectors of 1-forms, checked with
    /// fully formal generators.
    #[test]
    fn computational_rules_on_formal_vectors() {
        let u = u_column();
        let v = v_column();
        // [u] ^ v = -(u x v)
        assert_eq!(boxop(&u).mwedge(&v), cross(&u, &v).neg());
        // u^T ^ [v] = -(u x v)^T
        assert_eq!(
            u.transpose().mwedge(&boxop(&v)),
            cross(&u, &v).neg().transpose()
        );
        // [u]^[v] + [v]^[u] = -[u x v]
        let anti = boxop(&u).mwedge(&boxop(&v)).add(&boxop(&v).mwedge(&boxop(&u)));
        assert_eq!(anti, boxop(&cross(&u, &v)).neg());
        // [u]^[v] - [v]^[u] = u v^T - v u^T - 2 I (sum_j u_j ^ v_j)
        let comm = boxop(&u).mwedge(&boxop(&v)).sub(&boxop(&v).mwedge(&boxop(&u)));
        let dot = u.transpose().mwedge(&v).at(0, 0).clone();
        let rhs = u
            .mwedge(&v.transpose())
            .sub(&v.mwedge(&u.transpose()))
            .sub(&FormMatrix::scalar_identity(3, dot.scale_rat(&int(2))));
        assert_eq!(comm, rhs);
        // [u]^[u] = -u u^T = -(1/2)[u x u]
        let sq = boxop(&u).mwedge(&boxop(&u));
        assert_eq!(sq, u.mwedge(&u.transpose()).neg());
        assert_eq!(sq, boxop(&cross(&u, &u)).scale(&ParamPoly::rat(-1, 2)));
    }

    #[test]
    fn mwedge_basics() {
        let et = e_column().transpose();
        let prod = et.mwedge(&e_column());
        assert!(prod.is_zero());
        assert_eq!((prod.rows(), prod.cols()), (1, 1));
    }

    #[test]
    fn trace_of_box_commutator() {
        let comm = boxop(&e_column())
            .mwedge(&boxop(&je_column()))
            .sub(&boxop(&je_column()).mwedge(&boxop(&e_column())));
        assert_eq!(comm.mtrace(), omega().scale_rat(&int(-4)));
        // diagonal golden: -2(e2^f2 + e3^f3), etc.
        let d0 = Form::wedge_of(&[E_VEC[1], F_VEC[1]])
            .add(&Form::wedge_of(&[E_VEC[2], F_VEC[2]]))
            .scale_rat(&int(-2));
        assert_eq!(*comm.at(0, 0), d0);
    }

    #[test]
    fn trace_errors_on_non_square() {
        let r = std::panic::catch_unwind(|| e_column().mtrace());
        assert!(r.is_err());
    }

    #[test]
    fn block7_assembly() {
        let z13 = FormMatrix::zeros(1, 3);
        let z31 = FormMatrix::zeros(3, 1);
        let z33 = FormMatrix::zeros(3, 3);
        let zero7 = block7(Form::zero(), (&z13, &z13), (&z31, &z31), [&z33, &z33, &z33, &z33]);
        assert!(zero7.is_zero());
        assert_eq!((zero7.rows(), zero7.cols()), (7, 7));
    }

    #[test]
    fn raise_index_of_e0_omega() {
        let f = Form::gen(E0).wedge(&omega());
        let raised = raise_index(&f).unwrap();
        assert_eq!(*raised.at(0, 0), omega());
        for i in 0..3 {
            assert_eq!(
                *raised.at(1 + i, 0),
                Form::wedge_of(&[E0, F_VEC[i]]).neg()
            );
            assert_eq!(*raised.at(4 + i, 0), Form::wedge_of(&[E0, E_VEC[i]]));
        }
    }

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, degree: u8) -> FormMatrix {
        FormMatrix::from_fn(rows, cols, |_, _| {
            let mut f = Form::zero();
            for _ in 0..rng.gen_range(0..3) {
                let mut gens = Vec::new();
                for _ in 0..degree {
                    gens.push(crate::exterior::Generator(rng.gen_range(0..15)));
                }
                f = f.add(
                    &Form::wedge_of(&gens)
                        .scale_rat(&rat(rng.gen_range(-3..=3), rng.gen_range(1..=2))),
                );
            }
            f
        })
    }

    #[test]
    fn mwedge_associativity_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xa550c);
        for _ in 0..40 {
            let x = random_matrix(&mut rng, 2, 3, 1);
            let y = random_matrix(&mut rng, 3, 2, 1);
            let z = random_matrix(&mut rng, 2, 2, 2);
            assert_eq!(x.mwedge(&y).mwedge(&z), x.mwedge(&y.mwedge(&z)));
        }
    }

    #[test]
    fn transpose_mwedge_sign_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x7ab5);
        for (p, q) in [(1u8, 1u8), (1, 2), (2, 1), (2, 2)] {
            for _ in 0..25 {
                let x = random_matrix(&mut rng, 3, 3, p);
                let y = random_matrix(&mut rng, 3, 3, q);
                let lhs = x.mwedge(&y).transpose();
                let mut rhs = y.transpose().mwedge(&x.transpose());
                if (p as u32 * q as u32) % 2 == 1 {
                    rhs = rhs.neg();
                }
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn trace_mwedge_matches_full_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x77ace);
        for _ in 0..20 {
            let x = random_matrix(&mut rng, 3, 3, 2);
            let y = random_matrix(&mut rng, 3, 3, 2);
            assert_eq!(x.trace_mwedge(&y), x.mwedge(&y).mtrace());
        }
    }

    #[test]
    fn raise_index_requires_coframe_3form() {
        let not3 = omega();
        assert!(raise_index(&not3).is_err());
        let formal = Form::gen(A12).wedge(&omega());
        assert!(matches!(raise_index(&formal.homogeneous_component(3)), Err(_)));
        let _ = vol_monomial();
        let _ = Monomial::one();
    }
}
