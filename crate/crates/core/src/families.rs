//! Closed forms for the named families. They stay exact far past the edge cap
//! of the subgraph sum.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::engine;
use crate::error::{Error, Result};
use crate::graph::{make_family, FamilyKind};
use crate::poly::{MultiPoly, Var};

fn bad(kind: &str, n: usize) -> Error {
    Error::BadSize { kind: kind.to_string(), n }
}

/// `(q + t)^n`.
pub fn z_null(n: usize) -> MultiPoly {
    (MultiPoly::q() + MultiPoly::t()).pow(n as u32)
}

/// Zero-field value `q (q + v)^{n-1}` shared by every tree on `n` vertices.
pub fn z_tree(n: usize) -> Result<MultiPoly> {
    if n == 0 {
        return Err(bad("tree", n));
    }
    Ok(MultiPoly::q() * (MultiPoly::q() + MultiPoly::v()).pow(n as u32 - 1))
}

/// Open chain via a two-state transfer recurrence: `a_k` (`b_k`) is the
/// weight of the first `k` sites with site `k` fixed to one particular
/// favored (unfavored) color.
pub fn z_line(n: usize) -> Result<MultiPoly> {
    if n == 0 {
        return Err(bad("line", n));
    }
    let (s, v, w) = (MultiPoly::s(), MultiPoly::v(), MultiPoly::w());
    let qt = MultiPoly::q_tilde();
    let sv = &s + &v;
    let qtv = &qt + &v;
    let mut a = w.clone();
    let mut b = MultiPoly::one();
    for _ in 1..n {
        let na = &w * (&sv * &a + &qt * &b);
        let nb = &s * &a + &qtv * &b;
        a = na;
        b = nb;
    }
    Ok(&s * &a + &qt * &b)
}

/// `Σ_j C(n-1,j) v^j (q̃ + s w^{j+1}) (q̃ + s w)^{n-1-j}`.
pub fn z_star(n: usize) -> Result<MultiPoly> {
    if n == 0 {
        return Err(bad("star", n));
    }
    let qt = MultiPoly::q_tilde();
    let leaf = &qt + MultiPoly::monomial([0, 1, 0, 1], 1);
    let mut out = MultiPoly::zero();
    let mut binom = BigInt::one();
    for j in 0..n {
        let center = &qt + MultiPoly::monomial([0, 1, 0, j as u32 + 1], 1);
        let term = MultiPoly::monomial([0, 0, j as u32, 0], binom.clone()) * center * leaf.pow((n - 1 - j) as u32);
        out += term;
        binom = binom * (n - 1 - j) / (j + 1);
    }
    Ok(out)
}

fn falling(x: &MultiPoly, k: usize) -> MultiPoly {
    (0..k).fold(MultiPoly::one(), |acc, j| acc * (x.clone() - j as i64))
}

/// `Σ_ℓ C(n,ℓ) (s)_ℓ (q-s)_{n-ℓ} w^ℓ` with falling factorials; empty
/// products are 1.
pub fn ph_complete(n: usize) -> Result<MultiPoly> {
    if n == 0 {
        return Err(bad("complete", n));
    }
    let s = MultiPoly::s();
    let qt = MultiPoly::q_tilde();
    let mut out = MultiPoly::zero();
    let mut binom = BigInt::one();
    for l in 0..=n {
        out += falling(&s, l).scale(&binom) * falling(&qt, n - l) * MultiPoly::monomial([0, 0, 0, l as u32], 1);
        binom = binom * (n - l) / (l + 1);
    }
    Ok(out)
}

/// `λ_1 + λ_2` and `λ_1 λ_2` for a pair of transfer eigenvalues, with the
/// power sums `p_k = λ_1^k + λ_2^k` built by Newton's recurrence.
#[derive(Debug, Clone)]
pub struct PowerSumPair {
    pub e1: MultiPoly,
    pub e2: MultiPoly,
    cache: Vec<MultiPoly>,
}

impl PowerSumPair {
    pub fn new(e1: MultiPoly, e2: MultiPoly) -> Self {
        let cache = vec![MultiPoly::constant(2), e1.clone()];
        Self { e1, e2, cache }
    }

    /// The circuit pair: `e1 = q - s + v + w(s + v)`, `e2 = v w (q + v)`.
    pub fn circuit() -> Self {
        let (q, s, v, w) = (MultiPoly::q(), MultiPoly::s(), MultiPoly::v(), MultiPoly::w());
        let e1 = &q - &s + &v + &w * (&s + &v);
        let e2 = &v * &w * (&q + &v);
        Self::new(e1, e2)
    }

    pub fn power_sum(&mut self, k: usize) -> &MultiPoly {
        while self.cache.len() <= k {
            let m = self.cache.len();
            let next = &self.e1 * &self.cache[m - 1] - &self.e2 * &self.cache[m - 2];
            self.cache.push(next);
        }
        &self.cache[k]
    }
}

/// `p_n + (s-1)(vw)^n + (q-s-1)v^n`. At `n = 1` this is the looped vertex,
/// `(1+v)(q+t)`.
pub fn z_circuit(n: usize) -> Result<MultiPoly> {
    if n == 0 {
        return Err(bad("circuit", n));
    }
    let mut pair = PowerSumPair::circuit();
    let n32 = n as u32;
    let vw_n = MultiPoly::monomial([0, 0, n32, n32], 1);
    let v_n = MultiPoly::monomial([0, 0, n32, 0], 1);
    Ok(pair.power_sum(n).clone() + (MultiPoly::s() - 1) * vw_n + (MultiPoly::q_tilde() - 1) * v_n)
}

/// The circuit at `v = -1` directly, avoiding the much larger `v`-dependent
/// intermediate: `e1 = q - s - 1 + w(s - 1)`, `e2 = -w(q - 1)`.
pub fn ph_circuit(n: usize) -> Result<MultiPoly> {
    if n == 0 {
        return Err(bad("circuit", n));
    }
    let (q, s, w) = (MultiPoly::q(), MultiPoly::s(), MultiPoly::w());
    let e1 = &q - &s - 1 + &w * (&s - 1);
    let e2 = -(&w * (&q - 1));
    let mut pair = PowerSumPair::new(e1, e2);
    let n32 = n as u32;
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    let w_n = MultiPoly::monomial([0, 0, 0, n32], sign);
    Ok(pair.power_sum(n).clone() + (s - 1) * w_n + (MultiPoly::q_tilde() - 1) * sign)
}

/// Closed-form `Z` where one exists; `C_4d` goes through the subgraph sum.
pub fn family_z(kind: FamilyKind, n: usize) -> Result<MultiPoly> {
    match kind {
        FamilyKind::Null => {
            if n == 0 {
                return Err(bad("null", n));
            }
            Ok(z_null(n))
        }
        FamilyKind::Line => z_line(n),
        FamilyKind::Star => z_star(n),
        FamilyKind::Circuit => z_circuit(n),
        FamilyKind::Complete => {
            if n <= 2 {
                z_line(n)
            } else {
                Err(Error::Unsupported("no closed form for Z(K_n) at general v; use mode ph".into()))
            }
        }
        FamilyKind::C4d => engine::z_subgraph_sum(&make_family(kind, n)?),
    }
}

pub fn family_ph(kind: FamilyKind, n: usize) -> Result<MultiPoly> {
    match kind {
        FamilyKind::Complete => ph_complete(n),
        FamilyKind::Circuit => ph_circuit(n),
        FamilyKind::C4d => engine::ph(&make_family(kind, n)?),
        _ => Ok(family_z(kind, n)?.subs_int(Var::V, -1)),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TransmigrationReport {
    pub n: usize,
    pub holds: bool,
    pub residual: MultiPoly,
}

/// At `s = q` the circuit collapses to `w^n [(q+v)^n + (q-1) v^n]`.
pub fn transmigration_check(n: usize) -> Result<TransmigrationReport> {
    if n < 2 {
        return Err(bad("circuit", n));
    }
    let at_sq = z_circuit(n)?.subs_poly(Var::S, &MultiPoly::q());
    let n32 = n as u32;
    let expected = MultiPoly::monomial([0, 0, 0, n32], 1)
        * ((MultiPoly::q() + MultiPoly::v()).pow(n32) + (MultiPoly::q() - 1) * MultiPoly::monomial([0, 0, n32, 0], 1));
    let residual = at_sq - expected;
    Ok(TransmigrationReport { n, holds: residual.is_zero(), residual })
}
