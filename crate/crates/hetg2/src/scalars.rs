//! Exact rational scalars and the parameter polynomial ring Q[eps, k, delta, m].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Shorthand for small rational constants.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for small integer constants.
pub fn int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Exponents of (eps, k, delta, m) in a single term.
pub type ParamExp = [u8; 4];

pub const PARAM_NAMES: [&str; 4] = ["eps", "k", "delta", "m"];

/// Per-parameter degree bound. The highest exponent any in-scope quantity
/// reaches is 4 (e.g. k^4 inside lambda0); exceeding the cap means the
/// engine produced something it never should, so it is a hard error.
pub const PARAM_DEGREE_CAP: u8 = 8;

/// Polynomial in the four real parameters eps, k, delta, m with exact
/// rational coefficients. Immutable value type; no zero terms are stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ParamPoly {
    terms: BTreeMap<ParamExp, Rational>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::default();
        if !c.is_zero() {
            p.terms.insert([0; 4], c);
        }
        p
    }

    pub fn int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn rat(num: i64, den: i64) -> Self {
        Self::constant(rat(num, den))
    }

    /// Single term c * eps^a k^b delta^c m^d.
    pub fn term(exp: ParamExp, coeff: Rational) -> Self {
        check_exp(&exp);
        let mut p = Self::default();
        if !coeff.is_zero() {
            p.terms.insert(exp, coeff);
        }
        p
    }

    pub fn eps() -> Self {
        Self::term([1, 0, 0, 0], Rational::one())
    }

    pub fn k() -> Self {
        Self::term([0, 1, 0, 0], Rational::one())
    }

    pub fn delta() -> Self {
        Self::term([0, 0, 1, 0], Rational::one())
    }

    pub fn m() -> Self {
        Self::term([0, 0, 0, 1], Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }

    /// Some(c) when the polynomial is the constant c (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&[0; 4]).cloned(),
            _ => None,
        }
    }

    pub fn coeff(&self, exp: &ParamExp) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ParamExp, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Highest exponent of each parameter across all terms.
    pub fn max_degrees(&self) -> ParamExp {
        let mut d = [0u8; 4];
        for exp in self.terms.keys() {
            for i in 0..4 {
                d[i] = d[i].max(exp[i]);
            }
        }
        d
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    fn add_term(&mut self, exp: ParamExp, coeff: Rational) {
        check_exp(&exp);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Exact substitution of all four parameters.
    pub fn eval(&self, point: &[Rational; 4]) -> Rational {
        let mut acc = Rational::zero();
        for (exp, coeff) in &self.terms {
            let mut t = coeff.clone();
            for i in 0..4 {
                for _ in 0..exp[i] {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Partial substitution: parameters with Some(value) are fixed, the rest stay symbolic.
    pub fn subst(&self, point: &[Option<Rational>; 4]) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (exp, coeff) in &self.terms {
            let mut c = coeff.clone();
            let mut rest = *exp;
            for i in 0..4 {
                if let Some(v) = &point[i] {
                    for _ in 0..exp[i] {
                        c *= v;
                    }
                    rest[i] = 0;
                }
            }
            out.add_term(rest, c);
        }
        out
    }

    /// Exact division by a monomial; None when some term is not divisible.
    pub fn div_exact_monomial(&self, exp: &ParamExp) -> Option<ParamPoly> {
        let mut out = ParamPoly::zero();
        for (e, c) in &self.terms {
            let mut q = *e;
            for i in 0..4 {
                if e[i] < exp[i] {
                    return None;
                }
                q[i] = e[i] - exp[i];
            }
            out.add_term(q, c.clone());
        }
        Some(out)
    }

    pub fn to_f64(&self) -> Option<f64> {
        self.as_constant().and_then(|c| c.to_f64())
    }
}

fn check_exp(exp: &ParamExp) {
    for (i, &e) in exp.iter().enumerate() {
        assert!(
            e <= PARAM_DEGREE_CAP,
            "parameter degree cap exceeded: {}^{} (cap {})",
            PARAM_NAMES[i],
            e,
            PARAM_DEGREE_CAP
        );
    }
}

impl Add for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (exp, coeff) in &rhs.terms {
            out.add_term(*exp, coeff.clone());
        }
        out
    }
}

impl Sub for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (exp, coeff) in &rhs.terms {
            out.add_term(*exp, -coeff.clone());
        }
        out
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exp = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]];
                out.add_term(exp, ca * cb);
            }
        }
        out
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (exp, coeff) in &self.terms {
            out.terms.insert(*exp, -coeff.clone());
        }
        out
    }
}

impl Mul<&Rational> for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &Rational) -> ParamPoly {
        if rhs.is_zero() {
            return ParamPoly::zero();
        }
        let mut out = ParamPoly::zero();
        for (exp, coeff) in &self.terms {
            out.terms.insert(*exp, coeff * rhs);
        }
        out
    }
}

/// Renders a rational for display: integers bare, fractions as "(p/q)".
pub fn render_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("({}/{})", r.numer(), r.denom())
    }
}

fn render_term(exp: &ParamExp, coeff: &Rational) -> String {
    let mut parts = Vec::new();
    let abs = coeff.abs();
    if !abs.is_one() || exp.iter().all(|&e| e == 0) {
        parts.push(render_rational(&abs));
    }
    for i in 0..4 {
        match exp[i] {
            0 => {}
            1 => parts.push(PARAM_NAMES[i].to_string()),
            e => parts.push(format!("{}^{}", PARAM_NAMES[i], e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (exp, coeff)) in self.terms.iter().enumerate() {
            if idx == 0 {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
            } else if coeff.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{}", render_term(exp, coeff))?;
        }
        Ok(())
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
