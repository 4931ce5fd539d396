//! Exact Laurent polynomials over the integers in one variable (`A` or `t`)
//! and two variables (`A`, `u`), plus coefficient extraction after the
//! substitution `A = e^x`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

/// Exact rational numbers (normalized, positive denominator).
pub type Rational = BigRational;

/// Name of the indeterminate, used only for rendering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    A,
    T,
}

impl Var {
    fn symbol(self) -> &'static str {
        match self {
            Var::A => "A",
            Var::T => "t",
        }
    }
}

/// Sparse Laurent polynomial in one variable. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly1 {
    var: Var,
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly1 {
    pub fn zero(var: Var) -> Self {
        LaurentPoly1 { var, terms: BTreeMap::new() }
    }

    pub fn one(var: Var) -> Self {
        Self::monomial(var, 0, 1)
    }

    pub fn monomial(var: Var, exp: i64, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(var);
        p.add_term(exp, coeff.into());
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<C: Into<BigInt>>(var: Var, terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = Self::zero(var);
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn var(&self) -> Var {
        self.var
    }

    /// Same coefficients, different variable name.
    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// Iterates `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Largest absolute exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn max_abs_degree(&self) -> i64 {
        self.terms.keys().map(|e| e.abs()).max().unwrap_or(0)
    }

    /// Substitution `x -> x^-1`.
    pub fn invert_variable(&self) -> Self {
        LaurentPoly1 { var: self.var, terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    /// Multiplies by `x^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        LaurentPoly1 { var: self.var, terms: self.terms.iter().map(|(e, c)| (e + shift, c.clone())).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.var);
        for (e, c) in &self.terms {
            out.add_term(*e, c * k);
        }
        out
    }

    /// `self^n` for `n >= 0`.
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.var);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Value at `x = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Coefficient of `x^n` in `p(e^x)`, i.e. `(1/n!) * sum_l c_l * l^n`.
    pub fn exp_coeff(&self, n: u32) -> Rational {
        let num: BigInt = self.terms.iter().map(|(e, c)| c * BigInt::from(*e).pow(n)).sum();
        Rational::new(num, factorial(n))
    }

    /// JSON envelope: `{"invariant": name, "terms": [[[e], c], ...]}`.
    pub fn to_json(&self, name: &str) -> Value {
        let terms: Vec<Value> = self.terms.iter().map(|(e, c)| json!([[e], bigint_json(c)])).collect();
        json!({ "invariant": name, "terms": terms })
    }
}

pub(crate) fn bigint_json(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(v) => json!(v),
        None => json!(c.to_string()),
    }
}

/// Integral values as JSON numbers, the rest as strings like "-3/2".
pub fn rational_json(r: &Rational) -> Value {
    if r.is_integer() {
        bigint_json(r.numer())
    } else {
        json!(r.to_string())
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

impl Add for &LaurentPoly1 {
    type Output = LaurentPoly1;
    fn add(self, rhs: &LaurentPoly1) -> LaurentPoly1 {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly1 {
    type Output = LaurentPoly1;
    fn add(mut self, rhs: LaurentPoly1) -> LaurentPoly1 {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly1> for LaurentPoly1 {
    fn add_assign(&mut self, rhs: &LaurentPoly1) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Neg for &LaurentPoly1 {
    type Output = LaurentPoly1;
    fn neg(self) -> LaurentPoly1 {
        LaurentPoly1 { var: self.var, terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Neg for LaurentPoly1 {
    type Output = LaurentPoly1;
    fn neg(self) -> LaurentPoly1 {
        -&self
    }
}

impl Sub for &LaurentPoly1 {
    type Output = LaurentPoly1;
    fn sub(self, rhs: &LaurentPoly1) -> LaurentPoly1 {
        self + &(-rhs)
    }
}

impl Sub for LaurentPoly1 {
    type Output = LaurentPoly1;
    fn sub(self, rhs: LaurentPoly1) -> LaurentPoly1 {
        &self - &rhs
    }
}

impl Mul for &LaurentPoly1 {
    type Output = LaurentPoly1;
    fn mul(self, rhs: &LaurentPoly1) -> LaurentPoly1 {
        let mut out = LaurentPoly1::zero(self.var);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly1 {
    type Output = LaurentPoly1;
    fn mul(self, rhs: LaurentPoly1) -> LaurentPoly1 {
        &self * &rhs
    }
}

fn write_coeff_sign(f: &mut fmt::Formatter<'_>, first: bool, c: &BigInt) -> fmt::Result {
    match (first, c.is_negative()) {
        (true, true) => write!(f, "-"),
        (true, false) => Ok(()),
        (false, true) => write!(f, " - "),
        (false, false) => write!(f, " + "),
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, sym: &str, e: i64) -> fmt::Result {
    match e {
        0 => Ok(()),
        1 => write!(f, "{sym}"),
        _ => write!(f, "{sym}^{e}"),
    }
}

/// Terms with nonzero exponent in decreasing exponent order, then the constant.
impl fmt::Display for LaurentPoly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let sym = self.var.symbol();
        let ordered = self.terms.iter().rev().filter(|(e, _)| **e != 0).chain(self.terms.get_key_value(&0));
        for (i, (e, c)) in ordered.enumerate() {
            write_coeff_sign(f, i == 0, c)?;
            let mag = c.abs();
            if *e == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, sym, *e)?;
            }
        }
        Ok(())
    }
}

/// Sparse Laurent polynomial in `A` and `u`, keyed by `(exp_A, exp_u)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly2 {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, 1)
    }

    pub fn monomial(exp_a: i64, exp_u: i64, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(exp_a, exp_u, coeff.into());
        p
    }

    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = ((i64, i64), C)>) -> Self {
        let mut p = Self::zero();
        for ((a, u), c) in terms {
            p.add_term(a, u, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &BigInt)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn add_term(&mut self, exp_a: i64, exp_u: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let key = (exp_a, exp_u);
        let slot = self.terms.entry(key).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// `p(A) * u^k` lifted into two variables.
    pub fn from_poly1(p: &LaurentPoly1, exp_u: i64) -> Self {
        let mut out = Self::zero();
        for (e, c) in p.terms() {
            out.add_term(e, exp_u, c.clone());
        }
        out
    }

    /// Specialization `u = 1`.
    pub fn specialize_u_one(&self) -> LaurentPoly1 {
        let mut out = LaurentPoly1::zero(Var::A);
        for ((a, _), c) in &self.terms {
            out.add_term(*a, c.clone());
        }
        out
    }

    /// Multiplies by `A^da u^du`.
    pub fn shift(&self, da: i64, du: i64) -> Self {
        LaurentPoly2 { terms: self.terms.iter().map(|((a, u), c)| ((a + da, u + du), c.clone())).collect() }
    }

    /// For each `u`-exponent `l`, the coefficient `t_{k,l}` of `x^k u^l` after `A = e^x`.
    /// Only nonzero entries are returned.
    pub fn exp_coeff2(&self, k: u32) -> BTreeMap<i64, Rational> {
        let mut sums: BTreeMap<i64, BigInt> = BTreeMap::new();
        for ((a, u), c) in &self.terms {
            *sums.entry(*u).or_default() += c * BigInt::from(*a).pow(k);
        }
        let fact = factorial(k);
        sums.into_iter().filter(|(_, s)| !s.is_zero()).map(|(u, s)| (u, Rational::new(s, fact.clone()))).collect()
    }

    pub fn to_json(&self, name: &str) -> Value {
        let terms: Vec<Value> = self.terms.iter().map(|((a, u), c)| json!([[a, u], bigint_json(c)])).collect();
        json!({ "invariant": name, "terms": terms })
    }
}

impl Add for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn add(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = self.clone();
        for ((a, u), c) in &rhs.terms {
            out.add_term(*a, *u, c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn neg(self) -> LaurentPoly2 {
        LaurentPoly2 { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl Sub for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn sub(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn mul(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = LaurentPoly2::zero();
        for ((a1, u1), c1) in &self.terms {
            for ((a2, u2), c2) in &rhs.terms {
                out.add_term(a1 + a2, u1 + u2, c1 * c2);
            }
        }
        out
    }
}

/// Terms ordered by increasing `u` exponent, then decreasing `A` exponent.
impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by_key(|((a, u), _)| (*u, -*a));
        for (i, ((a, u), c)) in ordered.into_iter().enumerate() {
            write_coeff_sign(f, i == 0, c)?;
            let mag = c.abs();
            let mut parts = Vec::new();
            if !mag.is_one() || (*a == 0 && *u == 0) {
                parts.push(mag.to_string());
            }
            match *a {
                0 => {}
                1 => parts.push("A".into()),
                _ => parts.push(format!("A^{a}")),
            }
            match *u {
                0 => {}
                1 => parts.push("u".into()),
                _ => parts.push(format!("u^{u}")),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a(terms: &[(i64, i64)]) -> LaurentPoly1 {
        LaurentPoly1::from_terms(Var::A, terms.iter().copied())
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn exp_coeff_of_normalized_bracket_example() {
        let f = a(&[(10, -1), (6, 1), (4, 1)]);
        assert_eq!(f.exp_coeff(1), r(0, 1));
        assert_eq!(f.exp_coeff(2), r(-24, 1));
        assert_eq!(f.exp_coeff(3), r(-120, 1));
        assert_eq!(f.invert_variable().exp_coeff(3), r(120, 1));
    }

    #[test]
    fn exp_coeff_trivial_cases() {
        let one = LaurentPoly1::one(Var::A);
        for n in 1..6 {
            assert!(one.exp_coeff(n).is_zero());
        }
        assert_eq!(LaurentPoly1::monomial(Var::A, 1, 1).exp_coeff(3), r(1, 6));
    }

    #[test]
    fn exp_coeff2_of_turaev_example() {
        let t = LaurentPoly2::from_terms([((4, 0), 1), ((6, 2), 1), ((10, 2), -1)]);
        let k1 = t.exp_coeff2(1);
        assert_eq!(k1.get(&0), Some(&r(4, 1)));
        assert_eq!(k1.get(&2), Some(&r(-4, 1)));
        let k2 = t.exp_coeff2(2);
        assert_eq!(k2.get(&0), Some(&r(8, 1)));
        assert_eq!(k2.get(&2), Some(&r(-32, 1)));
        assert!(LaurentPoly2::one().exp_coeff2(3).is_empty());
    }

    #[test]
    fn rendering() {
        assert_eq!(a(&[(10, -1), (6, 1), (4, 1)]).to_string(), "-A^10 + A^6 + A^4");
        let p = LaurentPoly1::from_terms(Var::T, [(3, 1), (-3, 1), (0, -2)]);
        assert_eq!(p.to_string(), "t^3 + t^-3 - 2");
        assert_eq!(LaurentPoly1::from_terms(Var::T, [(1, 2), (0, 3)]).to_string(), "2*t + 3");
        assert_eq!(LaurentPoly1::zero(Var::T).to_string(), "0");
        let t = LaurentPoly2::from_terms([((4, 0), 1), ((6, 2), 1), ((10, 2), -1)]);
        assert_eq!(t.to_string(), "A^4 - A^10*u^2 + A^6*u^2");
    }

    #[test]
    fn json_envelope() {
        let v = a(&[(4, 1), (-2, -3)]).to_json("bracket");
        assert_eq!(v["invariant"], "bracket");
        assert_eq!(v["terms"], json!([[[-2], -3], [[4], 1]]));
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly1> {
        prop::collection::vec((-6i64..6, -5i64..5), 0..6).prop_map(|t| LaurentPoly1::from_terms(Var::A, t))
    }

    proptest! {
        #[test]
        fn ring_laws(p in arb_poly(), q in arb_poly(), s in arb_poly()) {
            prop_assert_eq!(&(&p * &q) * &s, &p * &(&q * &s));
            prop_assert_eq!(&p * &(&q + &s), &(&p * &q) + &(&p * &s));
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert!((&p - &p).is_zero());
        }

        #[test]
        fn inversion_is_involution(p in arb_poly()) {
            prop_assert_eq!(p.invert_variable().invert_variable(), p);
        }

        #[test]
        fn exp_coeff_cauchy_product(p in arb_poly(), q in arb_poly(), n in 0u32..5) {
            let lhs = (&p * &q).exp_coeff(n);
            let rhs: Rational = (0..=n)
                .map(|i| p.exp_coeff(i) * q.exp_coeff(n - i))
                .fold(Rational::zero(), |a, b| a + b);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn exp_coeff_zero_is_value_at_one(p in arb_poly()) {
            prop_assert_eq!(p.exp_coeff(0), Rational::from_integer(p.eval_at_one()));
        }
    }
}
