//! The `(q, t, v, w)` view with `t = s(w - 1)`.

use std::fmt;

use super::render::{render, Style};
use super::{MultiPoly, Var};
use crate::error::{Error, Result};

const T_NAMES: [&str; 4] = ["q", "t", "v", "w"];

/// A polynomial whose second exponent slot counts powers of `t` instead of `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TPoly(MultiPoly);

impl TPoly {
    /// Storage with slot 1 read as `t`.
    pub fn raw(&self) -> &MultiPoly {
        &self.0
    }

    pub fn from_raw(p: MultiPoly) -> Self {
        TPoly(p)
    }

    /// Back to `(q, s, v, w)` by expanding `t = s(w - 1)`.
    pub fn expand(&self) -> MultiPoly {
        self.0.subs_poly(Var::S, &MultiPoly::t())
    }

    pub fn to_latex(&self) -> String {
        render(&self.0, &T_NAMES, Style::Latex)
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.0, &T_NAMES, Style::Text))
    }
}

/// Eliminate `s` via `s = t/(w-1)`. Each `s^b` block must be divisible by
/// `(w-1)^b`, which holds for every partition function in this crate.
pub fn rebase_t(p: &MultiPoly) -> Result<TPoly> {
    let wm1 = MultiPoly::w() - 1;
    let blocks = p.coefficients_in(Var::S);
    let mut out = MultiPoly::zero();
    let mut divisor = MultiPoly::one();
    for (b, block) in blocks.iter().enumerate() {
        if b > 0 {
            divisor = &divisor * &wm1;
        }
        if block.is_zero() {
            continue;
        }
        let quotient = block.div_exact(&divisor).ok_or(Error::NotExpressible)?;
        out += quotient.shift([0, b as u32, 0, 0]);
    }
    Ok(TPoly(out))
}
