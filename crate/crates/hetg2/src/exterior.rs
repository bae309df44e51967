//! Free graded-commutative algebra on the local coframe, connection and
//! curvature generators, with wedge, exterior derivative, Hodge star and the
//! transverse complex structure.
//!
//! Odd (degree-1) generators, in canonical order:
//!   e0 e1 f1 e2 f2 e3 f3  (coframe; f_i is the J-image of e_i)
//!   a12 a13 a23            (skew connection block, a_ji = -a_ij)
//!   b11 b12 b13 b22 b23    (symmetric traceless block, b33 = -b11-b22)
//!   u1 u2 u3 v1 v2 v3      (reserved for generic identity tests only)
//! Even (degree-2) generators:
//!   al12 al13 al23         (skew curvature block)
//!   be11 be12 be13 be22 be23 (symmetric traceless curvature block)
//!
//! Only independent matrix entries are generators; dependent entries are
//! resolved by sign/trace relations at construction time. Any monomial of
//! total degree above 7 is the zero form.

use crate::scalars::{render_rational, ParamExp, ParamPoly, Rational};
use num_traits::One;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

pub const ODD_COUNT: u8 = 21;
pub const EVEN_COUNT: u8 = 8;
pub const GEN_COUNT: u8 = ODD_COUNT + EVEN_COUNT;
pub const FORM_DEGREE_CAP: u8 = 7;

const ODD_NAMES: [&str; ODD_COUNT as usize] = [
    "e0", "e1", "f1", "e2", "f2", "e3", "f3", "a12", "a13", "a23", "b11", "b12", "b13", "b22",
    "b23", "u1", "u2", "u3", "v1", "v2", "v3",
];
const EVEN_NAMES: [&str; EVEN_COUNT as usize] =
    ["al12", "al13", "al23", "be11", "be12", "be13", "be22", "be23"];

/// One algebra generator, identified by its index in the canonical order.
/// Indices 0..21 are the odd generators, 21..29 the even ones.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Generator(pub u8);

pub const E0: Generator = Generator(0);
pub const E1: Generator = Generator(1);
pub const F1: Generator = Generator(2);
pub const E2: Generator = Generator(3);
pub const F2: Generator = Generator(4);
pub const E3: Generator = Generator(5);
pub const F3: Generator = Generator(6);
pub const A12: Generator = Generator(7);
pub const A13: Generator = Generator(8);
pub const A23: Generator = Generator(9);
pub const B11: Generator = Generator(10);
pub const B12: Generator = Generator(11);
pub const B13: Generator = Generator(12);
pub const B22: Generator = Generator(13);
pub const B23: Generator = Generator(14);
pub const U1: Generator = Generator(15);
pub const U2: Generator = Generator(16);
pub const U3: Generator = Generator(17);
pub const V1: Generator = Generator(18);
pub const V2: Generator = Generator(19);
pub const V3: Generator = Generator(20);
pub const AL12: Generator = Generator(21);
pub const AL13: Generator = Generator(22);
pub const AL23: Generator = Generator(23);
pub const BE11: Generator = Generator(24);
pub const BE12: Generator = Generator(25);
pub const BE13: Generator = Generator(26);
pub const BE22: Generator = Generator(27);
pub const BE23: Generator = Generator(28);

/// e_i for i = 1..3 in coframe order.
pub const E_VEC: [Generator; 3] = [E1, E2, E3];
/// f_i = J e_i for i = 1..3.
pub const F_VEC: [Generator; 3] = [F1, F2, F3];
/// The seven coframe generators in canonical order.
pub const COFRAME: [Generator; 7] = [E0, E1, F1, E2, F2, E3, F3];

impl Generator {
    pub fn is_odd(self) -> bool {
        self.0 < ODD_COUNT
    }

    pub fn degree(self) -> u8 {
        if self.is_odd() {
            1
        } else {
            2
        }
    }

    pub fn name(self) -> &'static str {
        if self.is_odd() {
            ODD_NAMES[self.0 as usize]
        } else {
            EVEN_NAMES[(self.0 - ODD_COUNT) as usize]
        }
    }

    pub fn is_coframe(self) -> bool {
        self.0 < 7
    }

    /// Coframe generator other than e0.
    pub fn is_basic_coframe(self) -> bool {
        (1..7).contains(&self.0)
    }

    pub fn is_test_generator(self) -> bool {
        (15..21).contains(&self.0)
    }

    pub fn all() -> impl Iterator<Item = Generator> {
        (0..GEN_COUNT).map(Generator)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExteriorError {
    #[error("operation requires a pure coframe form, found generator {0}")]
    NotCoframe(&'static str),
    #[error("operation requires a basic form, found a factor e0")]
    NotBasic,
    #[error("form is not homogeneous of degree {0}")]
    NotHomogeneous(u8),
    #[error("{0}")]
    Inconsistent(String),
}

/// Canonical monomial: strictly ascending odd generators (as a bitmask) and a
/// multiset of even generators (count per generator).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial {
    odd_mask: u32,
    even_counts: [u8; EVEN_COUNT as usize],
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            odd_mask: 0,
            even_counts: [0; 8],
        }
    }

    pub fn generator(g: Generator) -> Self {
        let mut m = Self::one();
        if g.is_odd() {
            m.odd_mask = 1 << g.0;
        } else {
            m.even_counts[(g.0 - ODD_COUNT) as usize] = 1;
        }
        m
    }

    pub fn from_odd(gens: &[Generator]) -> Option<(Self, i8)> {
        let mut acc = Self::one();
        let mut sign = 1i8;
        for &g in gens {
            let (m, s) = acc.wedge(&Self::generator(g))?;
            acc = m;
            sign *= s;
        }
        Some((acc, sign))
    }

    pub fn degree(&self) -> u8 {
        (self.odd_mask.count_ones() as u8) + 2 * self.even_counts.iter().sum::<u8>()
    }

    pub fn odd_ids(&self) -> impl Iterator<Item = Generator> + '_ {
        (0..ODD_COUNT).filter(move |b| self.odd_mask & (1 << b) != 0).map(Generator)
    }

    pub fn even_ids(&self) -> impl Iterator<Item = (Generator, u8)> + '_ {
        (0..EVEN_COUNT)
            .filter(move |&i| self.even_counts[i as usize] > 0)
            .map(move |i| (Generator(ODD_COUNT + i), self.even_counts[i as usize]))
    }

    pub fn contains_odd(&self, g: Generator) -> bool {
        g.is_odd() && self.odd_mask & (1 << g.0) != 0
    }

    pub fn is_coframe(&self) -> bool {
        self.odd_mask & !0x7f == 0 && self.even_counts.iter().all(|&c| c == 0)
    }

    pub fn is_basic(&self) -> bool {
        self.odd_mask & 1 == 0
    }

    /// Generators occurring in this monomial.
    pub fn support(&self) -> Vec<Generator> {
        let mut v: Vec<Generator> = self.odd_ids().collect();
        v.extend(self.even_ids().map(|(g, _)| g));
        v
    }

    /// Product with sign from odd transposition parity; None when the product
    /// vanishes (repeated odd generator or degree above the cap).
    pub fn wedge(&self, other: &Monomial) -> Option<(Monomial, i8)> {
        if self.odd_mask & other.odd_mask != 0 {
            return None;
        }
        if self.degree() + other.degree() > FORM_DEGREE_CAP {
            return None;
        }
        let mut even_counts = self.even_counts;
        for i in 0..8 {
            even_counts[i] += other.even_counts[i];
        }
        // Inversions between the two ascending odd sequences: for each
        // generator of `other`, count the generators of `self` above it.
        let mut inversions = 0u32;
        let mut rest = other.odd_mask;
        while rest != 0 {
            let b = rest.trailing_zeros();
            inversions += (self.odd_mask >> (b + 1)).count_ones();
            rest &= rest - 1;
        }
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Some((
            Monomial {
                odd_mask: self.odd_mask | other.odd_mask,
                even_counts,
            },
            sign,
        ))
    }

    fn render(&self) -> String {
        if self.degree() == 0 {
            return "1".to_string();
        }
        let mut parts: Vec<&'static str> = self.odd_ids().map(|g| g.name()).collect();
        for (g, count) in self.even_ids() {
            for _ in 0..count {
                parts.push(g.name());
            }
        }
        parts.join("^")
    }
}

/// Element of the graded-commutative algebra with ParamPoly coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Form {
    terms: BTreeMap<Monomial, ParamPoly>,
}

impl Form {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(ParamPoly::one())
    }

    pub fn scalar(p: ParamPoly) -> Self {
        Self::monomial(Monomial::one(), p)
    }

    pub fn gen(g: Generator) -> Self {
        Self::monomial(Monomial::generator(g), ParamPoly::one())
    }

    pub fn monomial(m: Monomial, coeff: ParamPoly) -> Self {
        let mut f = Self::default();
        if !coeff.is_zero() {
            f.terms.insert(m, coeff);
        }
        f
    }

    /// Wedge of odd generators with unit coefficient; zero on repetition.
    pub fn wedge_of(gens: &[Generator]) -> Self {
        match Monomial::from_odd(gens) {
            Some((m, s)) => Self::monomial(m, &ParamPoly::one() * &crate::scalars::int(s as i64)),
            None => Self::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ParamPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> ParamPoly {
        self.terms.get(m).cloned().unwrap_or_else(ParamPoly::zero)
    }

    pub fn degrees(&self) -> BTreeSet<u8> {
        self.terms.keys().map(|m| m.degree()).collect()
    }

    pub fn is_homogeneous(&self, p: u8) -> bool {
        self.terms.keys().all(|m| m.degree() == p)
    }

    pub fn homogeneous_component(&self, p: u8) -> Form {
        let mut out = Form::zero();
        for (m, c) in &self.terms {
            if m.degree() == p {
                out.terms.insert(*m, c.clone());
            }
        }
        out
    }

    pub fn is_coframe(&self) -> bool {
        self.terms.keys().all(|m| m.is_coframe())
    }

    /// All generators occurring in any monomial.
    pub fn support(&self) -> BTreeSet<Generator> {
        let mut s = BTreeSet::new();
        for m in self.terms.keys() {
            s.extend(m.support());
        }
        s
    }

    fn add_term(&mut self, m: Monomial, coeff: ParamPoly) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = &*o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Form) -> Form {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Form) -> Form {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }

    pub fn neg(&self) -> Form {
        let mut out = Form::zero();
        for (m, c) in &self.terms {
            out.terms.insert(*m, -c);
        }
        out
    }

    pub fn scale(&self, p: &ParamPoly) -> Form {
        let mut out = Form::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c * p);
        }
        out
    }

    pub fn scale_rat(&self, r: &Rational) -> Form {
        self.scale(&ParamPoly::constant(r.clone()))
    }

    pub fn wedge(&self, rhs: &Form) -> Form {
        let mut out = Form::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                if let Some((m, sign)) = ma.wedge(mb) {
                    let mut c = ca * cb;
                    if sign < 0 {
                        c = -&c;
                    }
                    out.add_term(m, c);
                }
            }
        }
        out
    }

    pub fn pow_wedge(&self, n: u32) -> Form {
        let mut acc = Form::one();
        for _ in 0..n {
            acc = acc.wedge(self);
        }
        acc
    }

    /// Exterior derivative, extended from the generator table by the graded
    /// Leibniz rule.
    pub fn d(&self) -> Form {
        let table = d_table();
        let mut out = Form::zero();
        for (m, coeff) in &self.terms {
            let factors: Vec<Generator> = {
                let mut v: Vec<Generator> = m.odd_ids().collect();
                for (g, count) in m.even_ids() {
                    for _ in 0..count {
                        v.push(g);
                    }
                }
                v
            };
            let mut prefix_degree = 0u8;
            for (i, &g) in factors.iter().enumerate() {
                let dg = &table[g.0 as usize];
                if !dg.is_zero() {
                    let prefix = Form::product_of(&factors[..i]);
                    let suffix = Form::product_of(&factors[i + 1..]);
                    let mut term = prefix.wedge(dg).wedge(&suffix);
                    if prefix_degree % 2 == 1 {
                        term = term.neg();
                    }
                    out = out.add(&term.scale(coeff));
                }
                prefix_degree += g.degree();
            }
        }
        out
    }

    fn product_of(gens: &[Generator]) -> Form {
        let mut acc = Form::one();
        for &g in gens {
            acc = acc.wedge(&Form::gen(g));
        }
        acc
    }

    /// Hodge star for the orthonormal coframe with unit volume form
    /// e0^e1^f1^e2^f2^e3^f3. Defined on pure coframe forms only.
    pub fn star(&self) -> Result<Form, ExteriorError> {
        let mut out = Form::zero();
        for (m, coeff) in &self.terms {
            if !m.is_coframe() {
                let g = m.support().into_iter().find(|g| !g.is_coframe()).unwrap();
                return Err(ExteriorError::NotCoframe(g.name()));
            }
            let complement = Monomial {
                odd_mask: !m.odd_mask & 0x7f,
                even_counts: [0; 8],
            };
            // sign fixed by m ^ star(m) = vol
            let (_, sign) = m.wedge(&complement).expect("disjoint coframe masks");
            let mut c = coeff.clone();
            if sign < 0 {
                c = -&c;
            }
            out.add_term(complement, c);
        }
        Ok(out)
    }

    /// Algebra map induced by e_i -> f_i, f_i -> -e_i on basic coframe forms.
    pub fn jmap(&self) -> Result<Form, ExteriorError> {
        let mut out = Form::zero();
        for (m, coeff) in &self.terms {
            if !m.is_coframe() {
                let g = m.support().into_iter().find(|g| !g.is_coframe()).unwrap();
                return Err(ExteriorError::NotCoframe(g.name()));
            }
            if !m.is_basic() {
                return Err(ExteriorError::NotBasic);
            }
            let mut image = Form::scalar(coeff.clone());
            for g in m.odd_ids() {
                // e_i (odd index id) -> f_i; f_i (even index id) -> -e_i
                let factor = if g.0 % 2 == 1 {
                    Form::gen(Generator(g.0 + 1))
                } else {
                    Form::gen(Generator(g.0 - 1)).neg()
                };
                image = image.wedge(&factor);
            }
            out = out.add(&image);
        }
        Ok(out)
    }

    /// Interior product with the frame vector dual to the coframe generator g.
    pub fn contract_frame(&self, g: Generator) -> Result<Form, ExteriorError> {
        if !g.is_coframe() {
            return Err(ExteriorError::NotCoframe(g.name()));
        }
        let mut out = Form::zero();
        for (m, coeff) in &self.terms {
            if !m.is_coframe() {
                let bad = m.support().into_iter().find(|x| !x.is_coframe()).unwrap();
                return Err(ExteriorError::NotCoframe(bad.name()));
            }
            if !m.contains_odd(g) {
                continue;
            }
            let below = (m.odd_mask & ((1u32 << g.0) - 1)).count_ones();
            let reduced = Monomial {
                odd_mask: m.odd_mask & !(1 << g.0),
                even_counts: [0; 8],
            };
            let mut c = coeff.clone();
            if below % 2 == 1 {
                c = -&c;
            }
            out.add_term(reduced, c);
        }
        Ok(out)
    }

    /// Lossless decomposition into (parameter monomial, rational-coefficient form) pairs.
    pub fn coeff_split(&self) -> Vec<(ParamExp, Form)> {
        let mut split: BTreeMap<ParamExp, Form> = BTreeMap::new();
        for (m, poly) in &self.terms {
            for (exp, coeff) in poly.terms() {
                split
                    .entry(*exp)
                    .or_insert_with(Form::zero)
                    .add_term(*m, ParamPoly::constant(coeff.clone()));
            }
        }
        split.into_iter().collect()
    }

    /// True when every coefficient is a plain rational.
    pub fn is_parameter_free(&self) -> bool {
        self.terms.values().all(|p| p.as_constant().is_some())
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut keys: Vec<&Monomial> = self.terms.keys().collect();
        keys.sort_by_key(|m| (m.degree(), **m));
        let mut pieces = Vec::new();
        for m in keys {
            let coeff = &self.terms[m];
            let coeff_str = match coeff.as_constant() {
                Some(c) => {
                    if c.is_one() && m.degree() > 0 {
                        String::new()
                    } else if c == -Rational::one() && m.degree() > 0 {
                        "-".to_string()
                    } else {
                        render_rational(&c)
                    }
                }
                None => {
                    if coeff.num_terms() > 1 {
                        format!("({})", coeff)
                    } else {
                        coeff.to_string()
                    }
                }
            };
            let piece = if m.degree() == 0 {
                coeff_str
            } else if coeff_str.is_empty() {
                m.render()
            } else if coeff_str == "-" {
                format!("-{}", m.render())
            } else {
                format!("{} {}", coeff_str, m.render())
            };
            pieces.push(piece);
        }
        let mut out = String::new();
        for (i, piece) in pieces.iter().enumerate() {
            if i == 0 {
                out.push_str(piece);
            } else if let Some(rest) = piece.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(piece);
            }
        }
        out
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Entry (i,j) of the skew matrix a, 1-indexed.
pub fn a_entry(i: usize, j: usize) -> Form {
    let table = [[None, Some((A12, 1)), Some((A13, 1))],
        [Some((A12, -1)), None, Some((A23, 1))],
        [Some((A13, -1)), Some((A23, -1)), None]];
    match table[i - 1][j - 1] {
        None => Form::zero(),
        Some((g, 1)) => Form::gen(g),
        Some((g, _)) => Form::gen(g).neg(),
    }
}

/// Entry (i,j) of the symmetric traceless matrix b, 1-indexed; b33 = -b11-b22.
pub fn b_entry(i: usize, j: usize) -> Form {
    let (i, j) = (i.min(j), i.max(j));
    match (i, j) {
        (1, 1) => Form::gen(B11),
        (1, 2) => Form::gen(B12),
        (1, 3) => Form::gen(B13),
        (2, 2) => Form::gen(B22),
        (2, 3) => Form::gen(B23),
        (3, 3) => Form::gen(B11).neg().sub(&Form::gen(B22)),
        _ => unreachable!(),
    }
}

/// Entry (i,j) of the skew curvature block alpha, 1-indexed.
pub fn alpha_entry(i: usize, j: usize) -> Form {
    let table = [[None, Some((AL12, 1)), Some((AL13, 1))],
        [Some((AL12, -1)), None, Some((AL23, 1))],
        [Some((AL13, -1)), Some((AL23, -1)), None]];
    match table[i - 1][j - 1] {
        None => Form::zero(),
        Some((g, 1)) => Form::gen(g),
        Some((g, _)) => Form::gen(g).neg(),
    }
}

/// Entry (i,j) of the symmetric traceless curvature block beta, 1-indexed.
pub fn beta_entry(i: usize, j: usize) -> Form {
    let (i, j) = (i.min(j), i.max(j));
    match (i, j) {
        (1, 1) => Form::gen(BE11),
        (1, 2) => Form::gen(BE12),
        (1, 3) => Form::gen(BE13),
        (2, 2) => Form::gen(BE22),
        (2, 3) => Form::gen(BE23),
        (3, 3) => Form::gen(BE11).neg().sub(&Form::gen(BE22)),
        _ => unreachable!(),
    }
}

/// The transverse Kaehler 2-form e1^f1 + e2^f2 + e3^f3.
pub fn omega() -> Form {
    let mut out = Form::zero();
    for i in 0..3 {
        out = out.add(&Form::wedge_of(&[E_VEC[i], F_VEC[i]]));
    }
    out
}

/// The canonical unit-volume monomial e0^e1^f1^e2^f2^e3^f3.
pub fn vol_monomial() -> Monomial {
    Monomial::from_odd(&COFRAME).unwrap().0
}

fn d_table() -> &'static Vec<Form> {
    static TABLE: OnceLock<Vec<Form>> = OnceLock::new();
    TABLE.get_or_init(build_d_table)
}

/// Generator derivatives. The coframe rules are the first structure
/// equations; the a/b rules come from writing the curvature blocks as
/// alpha = (da + a^a - b^b), beta = (db + a^b + b^a); the alpha/beta rules
/// are forced by d of those two relations, i.e. the matrix identity
/// d(dA + A^A) = (dA + A^A)^A - A^(dA + A^A) expanded blockwise:
///   d(alpha) = alpha^a - a^alpha - beta^b + b^beta
///   d(beta)  = alpha^b - b^alpha + beta^a - a^beta
fn build_d_table() -> Vec<Form> {
    let mut table = vec![Form::zero(); GEN_COUNT as usize];

    table[E0.0 as usize] = omega().scale(&ParamPoly::eps());

    for i in 1..=3usize {
        // d e_i = -a_ij ^ e_j - b_ij ^ f_j
        let mut de = Form::zero();
        let mut df = Form::zero();
        for j in 1..=3usize {
            let ej = Form::gen(E_VEC[j - 1]);
            let fj = Form::gen(F_VEC[j - 1]);
            de = de.sub(&a_entry(i, j).wedge(&ej)).sub(&b_entry(i, j).wedge(&fj));
            // d f_i = b_ij ^ e_j - a_ij ^ f_j
            df = df.add(&b_entry(i, j).wedge(&ej)).sub(&a_entry(i, j).wedge(&fj));
        }
        table[E_VEC[i - 1].0 as usize] = de;
        table[F_VEC[i - 1].0 as usize] = df;
    }

    let mat_entry = |m: fn(usize, usize) -> Form, i: usize, j: usize| m(i, j);
    let quad = |x: fn(usize, usize) -> Form, y: fn(usize, usize) -> Form, i: usize, j: usize| {
        // (x ^ y)_(i,j)
        let mut acc = Form::zero();
        for s in 1..=3usize {
            acc = acc.add(&mat_entry(x, i, s).wedge(&mat_entry(y, s, j)));
        }
        acc
    };

    // d a_ij = alpha_ij - (a^a - b^b)_ij
    for (g, i, j) in [(A12, 1, 2), (A13, 1, 3), (A23, 2, 3)] {
        let da = alpha_entry(i, j)
            .sub(&quad(a_entry, a_entry, i, j))
            .add(&quad(b_entry, b_entry, i, j));
        table[g.0 as usize] = da;
    }

    // d b_ij = beta_ij - (a^b + b^a)_ij
    for (g, i, j) in [(B11, 1, 1), (B12, 1, 2), (B13, 1, 3), (B22, 2, 2), (B23, 2, 3)] {
        let db = beta_entry(i, j)
            .sub(&quad(a_entry, b_entry, i, j))
            .sub(&quad(b_entry, a_entry, i, j));
        table[g.0 as usize] = db;
    }

    // d alpha_ij = (alpha^a - a^alpha - beta^b + b^beta)_ij
    for (g, i, j) in [(AL12, 1, 2), (AL13, 1, 3), (AL23, 2, 3)] {
        let dal = quad(alpha_entry, a_entry, i, j)
            .sub(&quad(a_entry, alpha_entry, i, j))
            .sub(&quad(beta_entry, b_entry, i, j))
            .add(&quad(b_entry, beta_entry, i, j));
        table[g.0 as usize] = dal;
    }

    // d beta_ij = (alpha^b - b^alpha + beta^a - a^beta)_ij
    for (g, i, j) in [(BE11, 1, 1), (BE12, 1, 2), (BE13, 1, 3), (BE22, 2, 2), (BE23, 2, 3)] {
        let dbe = quad(alpha_entry, b_entry, i, j)
            .sub(&quad(b_entry, alpha_entry, i, j))
            .add(&quad(beta_entry, a_entry, i, j))
            .sub(&quad(a_entry, beta_entry, i, j));
        table[g.0 as usize] = dbe;
    }

    // u/v test generators are closed.
    table
}
