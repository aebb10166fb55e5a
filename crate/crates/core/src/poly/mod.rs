//! Sparse multivariate polynomials in `q, s, v, w` with arbitrary-precision
//! integer coefficients.
//!
//! Exponent vectors have fixed arity four. The shorthand variables
//! `t = s(w-1)` and `q~ = q - s` are views produced by substitution (see
//! [`basis`]), never stored variables, so every polynomial has exactly one
//! canonical form.

pub mod basis;
mod ops;
mod parse;
mod rational;
mod render;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use basis::{rebase_t, TPoly};
pub use rational::RationalExpr;

/// Exponents of `(q, s, v, w)`.
pub type Exponents = [u32; 4];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    Q,
    S,
    V,
    W,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::Q, Var::S, Var::V, Var::W];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn symbol(self) -> char {
        ['q', 's', 'v', 'w'][self.index()]
    }

    pub fn from_symbol(c: char) -> Option<Var> {
        match c {
            'q' => Some(Var::Q),
            's' => Some(Var::S),
            'v' => Some(Var::V),
            'w' => Some(Var::W),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Value bound to a variable by [`MultiPoly::substitute`].
#[derive(Debug, Clone)]
pub enum Binding {
    Poly(MultiPoly),
    Rational(BigRational),
}

impl From<MultiPoly> for Binding {
    fn from(p: MultiPoly) -> Self {
        Binding::Poly(p)
    }
}

impl From<i64> for Binding {
    fn from(c: i64) -> Self {
        Binding::Poly(MultiPoly::constant(c))
    }
}

impl From<BigRational> for Binding {
    fn from(r: BigRational) -> Self {
        Binding::Rational(r)
    }
}

/// Canonical sparse polynomial: no zero coefficients are ever stored.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "render::PolyJson", try_from = "render::PolyJson")]
pub struct MultiPoly {
    terms: BTreeMap<Exponents, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial([0; 4], c)
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 4];
        e[v.index()] = 1;
        Self::monomial(e, 1)
    }

    pub fn q() -> Self {
        Self::var(Var::Q)
    }
    pub fn s() -> Self {
        Self::var(Var::S)
    }
    pub fn v() -> Self {
        Self::var(Var::V)
    }
    pub fn w() -> Self {
        Self::var(Var::W)
    }

    /// `t = s(w - 1)`.
    pub fn t() -> Self {
        Self::s() * (Self::w() - Self::one())
    }

    /// `q~ = q - s`.
    pub fn q_tilde() -> Self {
        Self::q() - Self::s()
    }

    pub fn monomial(e: Exponents, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exponents, BigInt)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| *e == [0; 4])
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exponents) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// Constant term.
    pub fn constant_term(&self) -> BigInt {
        self.coeff(&[0; 4])
    }

    pub(crate) fn add_term(&mut self, e: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn degree(&self, v: Var) -> u32 {
        self.terms.keys().map(|e| e[v.index()]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Whether `v` occurs in some stored term.
    pub fn involves(&self, v: Var) -> bool {
        self.terms.keys().any(|e| e[v.index()] > 0)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    /// Multiply by the monomial `x^shift`.
    pub fn shift(&self, shift: Exponents) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (add_exp(e, &shift), c.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Coefficients of successive powers of `v`: `self = sum_j out[j] v^j`.
    pub fn coefficients_in(&self, v: Var) -> Vec<MultiPoly> {
        let i = v.index();
        let mut out = vec![MultiPoly::zero(); self.degree(v) as usize + 1];
        if self.is_zero() {
            return out;
        }
        for (e, c) in &self.terms {
            let mut e2 = *e;
            let k = e2[i] as usize;
            e2[i] = 0;
            out[k].terms.insert(e2, c.clone());
        }
        out
    }

    /// Inverse of [`MultiPoly::coefficients_in`].
    pub fn from_coefficients(v: Var, coeffs: &[MultiPoly]) -> Self {
        let mut p = MultiPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            let mut shift = [0; 4];
            shift[v.index()] = k as u32;
            p += c.shift(shift);
        }
        p
    }

    pub fn derivative(&self, v: Var) -> Self {
        let i = v.index();
        let mut p = Self::zero();
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = *e;
                e2[i] -= 1;
                p.add_term(e2, c * BigInt::from(e[i]));
            }
        }
        p
    }

    /// Integer GCD of the coefficients, non-negative.
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Lex-largest term in `(q, s, v, w)` order.
    pub fn leading(&self) -> Option<(&Exponents, &BigInt)> {
        self.terms.last_key_value()
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`
    /// in `Z[q, s, v, w]`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        let (de, dc) = d.leading()?;
        let (de, dc) = (*de, dc.clone());
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while let Some((e, c)) = rem.leading() {
            if e.iter().zip(de.iter()).any(|(a, b)| a < b) {
                return None;
            }
            let (qc, r) = c.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            let qe = [e[0] - de[0], e[1] - de[1], e[2] - de[2], e[3] - de[3]];
            for (te, tc) in &d.terms {
                rem.add_term(add_exp(te, &qe), -(tc * &qc));
            }
            quot.add_term(qe, qc);
        }
        Some(quot)
    }

    pub fn is_divisible_by(&self, d: &MultiPoly) -> bool {
        self.div_exact(d).is_some()
    }

    /// Substitute variables by polynomials or rational constants. The result
    /// must have integer coefficients.
    pub fn substitute(&self, bindings: &[(Var, Binding)]) -> Result<MultiPoly> {
        let rat = self.substitute_rational(bindings);
        let mut out = MultiPoly::zero();
        for (e, c) in rat {
            if !c.is_integer() {
                return Err(Error::NonIntegerResult);
            }
            out.add_term(e, c.to_integer());
        }
        Ok(out)
    }

    fn substitute_rational(&self, bindings: &[(Var, Binding)]) -> BTreeMap<Exponents, BigRational> {
        let mut bound: [Option<&Binding>; 4] = [None; 4];
        for (v, b) in bindings {
            bound[v.index()] = Some(b);
        }
        let degrees: Vec<u32> = Var::ALL.iter().map(|&v| self.degree(v)).collect();
        // powers[i][k] = (binding_i)^k as a rational polynomial
        let powers: Vec<Option<Vec<RatPoly>>> = (0..4)
            .map(|i| {
                bound[i].map(|b| {
                    let base = RatPoly::from_binding(b);
                    let mut pw = vec![RatPoly::one()];
                    for _ in 0..degrees[i] {
                        let next = pw.last().unwrap().mul(&base);
                        pw.push(next);
                    }
                    pw
                })
            })
            .collect();

        let mut acc = RatPoly::default();
        for (e, c) in &self.terms {
            let mut free = [0u32; 4];
            let mut term = RatPoly::monomial([0; 4], BigRational::from_integer(c.clone()));
            for i in 0..4 {
                match &powers[i] {
                    Some(pw) => {
                        if e[i] > 0 {
                            term = term.mul(&pw[e[i] as usize]);
                        }
                    }
                    None => free[i] = e[i],
                }
            }
            for (te, tc) in term.0 {
                acc.add(add_exp(&te, &free), tc);
            }
        }
        acc.0
    }

    pub fn subs(&self, v: Var, value: impl Into<Binding>) -> Result<MultiPoly> {
        self.substitute(&[(v, value.into())])
    }

    /// Substitute an integer; always succeeds.
    pub fn subs_int(&self, v: Var, value: i64) -> MultiPoly {
        self.subs(v, value).expect("integer substitution is exact")
    }

    pub fn subs_poly(&self, v: Var, value: &MultiPoly) -> MultiPoly {
        self.subs(v, value.clone()).expect("polynomial substitution is exact")
    }

    /// Evaluate at a complex point `(q, s, v, w)`.
    pub fn eval(&self, point: [Complex64; 4]) -> Complex64 {
        let degrees: Vec<u32> = Var::ALL.iter().map(|&v| self.degree(v)).collect();
        let powers: Vec<Vec<Complex64>> = (0..4)
            .map(|i| {
                let mut pw = vec![Complex64::new(1.0, 0.0)];
                for _ in 0..degrees[i] {
                    let next = pw.last().unwrap() * point[i];
                    pw.push(next);
                }
                pw
            })
            .collect();
        let mut sum = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let mut term = Complex64::new(c, 0.0);
            for i in 0..4 {
                term *= powers[i][e[i] as usize];
            }
            sum += term;
        }
        sum
    }

    pub fn eval_real(&self, q: f64, s: f64, v: f64, w: f64) -> f64 {
        let c = |x: f64| Complex64::new(x, 0.0);
        self.eval([c(q), c(s), c(v), c(w)]).re
    }

    /// Exact evaluation at a rational point. Works over the common denominator
    /// `Π b_i^{deg_i}` so the inner loop is integer-only.
    pub fn eval_exact(&self, point: &[BigRational; 4]) -> BigRational {
        let degrees: Vec<usize> = Var::ALL.iter().map(|&v| self.degree(v) as usize).collect();
        let powers = |x: &BigInt, d: usize| -> Vec<BigInt> {
            let mut pw = vec![BigInt::one()];
            for _ in 0..d {
                let next = pw.last().unwrap() * x;
                pw.push(next);
            }
            pw
        };
        let nums: Vec<Vec<BigInt>> = (0..4).map(|i| powers(point[i].numer(), degrees[i])).collect();
        let dens: Vec<Vec<BigInt>> = (0..4).map(|i| powers(point[i].denom(), degrees[i])).collect();
        let mut sum = BigInt::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for i in 0..4 {
                let k = e[i] as usize;
                term *= &nums[i][k];
                term *= &dens[i][degrees[i] - k];
            }
            sum += term;
        }
        let denom: BigInt = (0..4).map(|i| dens[i][degrees[i]].clone()).product();
        BigRational::new(sum, denom)
    }

    /// Coefficients (ascending powers) of the univariate specialization in
    /// `var`, with the other three variables bound to complex values.
    pub fn univariate(&self, var: Var, fixed: [Complex64; 4]) -> Vec<Complex64> {
        let coeffs = self.coefficients_in(var);
        let mut point = fixed;
        point[var.index()] = Complex64::new(1.0, 0.0);
        coeffs.iter().map(|c| c.eval(point)).collect()
    }

    /// Largest coefficient magnitude, as `f64`.
    pub fn coefficient_scale(&self) -> f64 {
        self.terms.values().map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY)).fold(0.0, f64::max)
    }
}

pub(crate) fn add_exp(a: &Exponents, b: &Exponents) -> Exponents {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

/// Rational-coefficient scratch polynomial used during substitution.
#[derive(Default, Clone)]
struct RatPoly(BTreeMap<Exponents, BigRational>);

impl RatPoly {
    fn one() -> Self {
        Self::monomial([0; 4], BigRational::one())
    }

    fn monomial(e: Exponents, c: BigRational) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(e, c);
        }
        RatPoly(m)
    }

    fn from_binding(b: &Binding) -> Self {
        match b {
            Binding::Rational(r) => Self::monomial([0; 4], r.clone()),
            Binding::Poly(p) => {
                RatPoly(p.terms.iter().map(|(e, c)| (*e, BigRational::from_integer(c.clone()))).collect())
            }
        }
    }

    fn add(&mut self, e: Exponents, c: BigRational) {
        let slot = self.0.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&e);
        }
    }

    fn mul(&self, other: &RatPoly) -> RatPoly {
        let mut out = RatPoly::default();
        for (ea, ca) in &self.0 {
            for (eb, cb) in &other.0 {
                out.add(add_exp(ea, eb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

#[cfg(test)]
mod tests;
