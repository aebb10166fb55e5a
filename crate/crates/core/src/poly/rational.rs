use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::MultiPoly;
use crate::error::{Error, Result};

/// `numerator / denominator`, reduced only by the integer content. No
/// polynomial cancellation is attempted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalExpr {
    pub numerator: MultiPoly,
    pub denominator: MultiPoly,
}

impl RationalExpr {
    pub fn new(numerator: MultiPoly, denominator: MultiPoly) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let g = numerator.content().gcd(&denominator.content());
        let mut g = if g.is_zero() { denominator.content() } else { g };
        if denominator.leading().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            g = -g;
        }
        let numerator = numerator.div_exact(&MultiPoly::constant(g.clone())).expect("content divides");
        let denominator = denominator.div_exact(&MultiPoly::constant(g)).expect("content divides");
        Ok(Self { numerator, denominator })
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        Self { numerator: p, denominator: MultiPoly::one() }
    }

    /// Equality as rational functions (cross multiplication).
    pub fn same_function(&self, other: &RationalExpr) -> bool {
        &self.numerator * &other.denominator == &other.numerator * &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn sub(&self, other: &RationalExpr) -> RationalExpr {
        let num = &self.numerator * &other.denominator - &other.numerator * &self.denominator;
        let den = &self.denominator * &other.denominator;
        RationalExpr::new(num, den).expect("nonzero denominators")
    }
}

impl fmt::Display for RationalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator == MultiPoly::one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / ({})", self.numerator, self.denominator)
        }
    }
}
