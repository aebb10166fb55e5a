//! Eigenvalue-multiplicity counts for cyclic strips of width `L_y`: the
//! coefficients `c̃^(d)`, the tables `n_Zh(L_y,d,s)` and `n_Ph(L_y,d,s)` as
//! polynomials in `s`, their totals, and the identities tying them together.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{z_circuit, PowerSumPair};
use crate::poly::{MultiPoly, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Zh,
    Ph,
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `c^(d)(x) = Σ_j (-1)^j C(2d-j, j) x^{d-j}`.
pub fn c_tilde(d: usize, arg: &MultiPoly) -> MultiPoly {
    let d = d as u64;
    (0..=d)
        .map(|j| {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            arg.pow((d - j) as u32).scale(&(binomial(2 * d - j, j) * sign))
        })
        .sum()
}

/// Counts for one width; polynomials in `s`, zero for `d > L_y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StripCountTable {
    pub ly: usize,
    pub zh: Vec<MultiPoly>,
    pub ph: Vec<MultiPoly>,
}

impl StripCountTable {
    pub fn n(&self, role: Role, d: usize) -> MultiPoly {
        let row = match role {
            Role::Zh => &self.zh,
            Role::Ph => &self.ph,
        };
        row.get(d).cloned().unwrap_or_else(MultiPoly::zero)
    }

    pub fn total(&self, role: Role) -> MultiPoly {
        match role {
            Role::Zh => self.zh.iter().sum(),
            Role::Ph => self.ph.iter().sum(),
        }
    }

    /// Entries as ascending coefficient lists in `s`, decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        let coeffs = |p: &MultiPoly| -> Vec<String> {
            p.coefficients_in(Var::S).iter().map(|c| c.constant_term().to_string()).collect()
        };
        serde_json::json!({
            "ly": self.ly,
            "zh": self.zh.iter().map(coeffs).collect::<Vec<_>>(),
            "ph": self.ph.iter().map(coeffs).collect::<Vec<_>>(),
            "totals": { "zh": coeffs(&self.total(Role::Zh)), "ph": coeffs(&self.total(Role::Ph)) },
        })
    }
}

/// One recurrence step: `n(L+1,0) = a·n(L,0) + n(L,1)` and, for `d >= 1`,
/// `n(L+1,d) = n(L,d-1) + b·n(L,d) + n(L,d+1)`.
fn step(row: &[MultiPoly], a: &MultiPoly, b: &MultiPoly) -> Vec<MultiPoly> {
    let get = |d: usize| row.get(d).cloned().unwrap_or_else(MultiPoly::zero);
    let mut next = Vec::with_capacity(row.len() + 1);
    next.push(a * &get(0) + get(1));
    for d in 1..=row.len() {
        next.push(get(d - 1) + b * &get(d) + get(d + 1));
    }
    next
}

fn zh_rows(ly_max: usize) -> Vec<Vec<MultiPoly>> {
    let s = MultiPoly::s();
    let (a, b) = (&s + 1, &s + 2);
    let mut rows = vec![vec![MultiPoly::one()]];
    for l in 0..ly_max {
        let next = step(&rows[l], &a, &b);
        rows.push(next);
    }
    rows
}

/// Tables for `L_y = 1..=ly_max`. `n_Zh` starts from the empty strip
/// (`n_Zh(0,0) = 1`), `n_Ph` from `n_Ph(1,·) = (s+1, 1)`.
pub fn build_counts(ly_max: usize) -> Result<Vec<StripCountTable>> {
    if ly_max == 0 {
        return Err(Error::BadSize { kind: "strip width".into(), n: 0 });
    }
    let s = MultiPoly::s();
    let zh = zh_rows(ly_max);
    let (a, b) = (s.clone(), &s + 1);
    let mut ph = vec![&s + 1, MultiPoly::one()];
    let mut out = Vec::new();
    for (ly, zh_row) in zh.into_iter().enumerate().skip(1).take(ly_max) {
        if ly > 1 {
            ph = step(&ph, &a, &b);
        }
        out.push(StripCountTable { ly, zh: zh_row, ph: ph.clone() });
    }
    Ok(out)
}

fn expect_zero(name: String, residual: MultiPoly) -> Result<()> {
    if residual.is_zero() {
        Ok(())
    } else {
        Err(Error::IdentityFailed { name, residual: Box::new(residual) })
    }
}

/// `Σ_d c̃^(d)(q-s) n_Zh(L_y,d) = q^{L_y}` and
/// `Σ_d c̃^(d)(q-s) n_Ph(L_y,d) = q(q-1)^{L_y-1}`.
pub fn verify_sum_identities(table: &StripCountTable) -> Result<()> {
    let qt = MultiPoly::q_tilde();
    let ly = table.ly as u32;
    let weighted = |role| -> MultiPoly { (0..=table.ly).map(|d| c_tilde(d, &qt) * table.n(role, d)).sum() };
    expect_zero(format!("Zh sum identity at width {ly}"), weighted(Role::Zh) - MultiPoly::q().pow(ly))?;
    let p_line = MultiPoly::q() * (MultiPoly::q() - 1).pow(ly - 1);
    expect_zero(format!("Ph sum identity at width {ly}"), weighted(Role::Ph) - p_line)
}

/// `N_Zh(L_y,s) = Σ_j C(L_y,j) C(2j,j) s^{L_y-j}`, in terms of `x` for `s`.
pub fn zh_total_formula(ly: usize, x: &MultiPoly) -> MultiPoly {
    (0..=ly as u64).map(|j| x.pow((ly as u64 - j) as u32).scale(&(binomial(ly as u64, j) * binomial(2 * j, j)))).sum()
}

pub fn ph_total_formula(ly: usize) -> MultiPoly {
    let sm1 = MultiPoly::s() - 1;
    zh_total_formula(ly, &sm1) + zh_total_formula(ly - 1, &sm1)
}

/// Checks, for the table at `ly` (index `ly - 1` of `tables`):
/// `n_Ph(L,d,s) = n_Zh(L,d,s-1) + n_Zh(L-1,d,s-1)`, both closed-form totals,
/// the edge formulas for `d = L_y` and `d = L_y - 1`, and the reference totals.
pub fn verify_relation_and_totals(tables: &[StripCountTable], ly: usize) -> Result<()> {
    let table = tables.get(ly.wrapping_sub(1)).ok_or(Error::BadSize { kind: "strip width".into(), n: ly })?;
    let sm1 = MultiPoly::s() - 1;
    let zero_row = vec![MultiPoly::one()];
    let prev_zh = if ly == 1 { &zero_row } else { &tables[ly - 2].zh };
    for d in 0..=ly {
        let prev = prev_zh.get(d).cloned().unwrap_or_else(MultiPoly::zero);
        let rhs = (table.n(Role::Zh, d) + prev).subs_poly(Var::S, &sm1);
        expect_zero(format!("n_Ph/n_Zh relation at width {ly}, d={d}"), table.n(Role::Ph, d) - rhs)?;
    }
    let s = MultiPoly::s();
    let lyi = ly as i64;
    expect_zero(format!("n_Zh(L,L) at width {ly}"), table.n(Role::Zh, ly) - 1)?;
    expect_zero(format!("n_Ph(L,L) at width {ly}"), table.n(Role::Ph, ly) - 1)?;
    expect_zero(format!("n_Zh(L,L-1) at width {ly}"), table.n(Role::Zh, ly - 1) - ((&s + 1) * lyi + (lyi - 1)))?;
    expect_zero(format!("n_Ph(L,L-1) at width {ly}"), table.n(Role::Ph, ly - 1) - (&s + 1) * lyi)?;
    expect_zero(format!("N_Zh closed form at width {ly}"), table.total(Role::Zh) - zh_total_formula(ly, &s))?;
    expect_zero(format!("N_Ph closed form at width {ly}"), table.total(Role::Ph) - ph_total_formula(ly))?;
    if let Some((zh, ph)) = reference_totals().get(ly - 1) {
        let parse = |x: &str| x.parse::<MultiPoly>().expect("reference total");
        expect_zero(format!("reference N_Zh at width {ly}"), table.total(Role::Zh) - parse(zh))?;
        expect_zero(format!("reference N_Ph at width {ly}"), table.total(Role::Ph) - parse(ph))?;
    }
    Ok(())
}

/// Reference totals `(N_Zh, N_Ph)` for `L_y = 1..=6`, with the one known
/// misprint corrected (see [`MISPRINTED_TOTAL`]).
pub fn reference_totals() -> [(&'static str, &'static str); 6] {
    [
        ("s+2", "s+2"),
        ("s^2+4s+6", "s^2+3s+4"),
        ("(s+2)(s^2+4s+10)", "s^3+4s^2+11s+10"),
        ("s^4+8s^3+36s^2+80s+70", "s^4+5s^3+21s^2+37s+26"),
        ("(s+2)(s^4+8s^3+44s^2+112s+126)", "s^5+6s^4+34s^3+88s^2+123s+70"),
        ("s^6+12s^5+90s^4+400s^3+1050s^2+1512s+924", "s^6+7s^5+50s^4+170s^3+355s^2+401s+192"),
    ]
}

/// `(role, L_y, uncorrected)`. The uncorrected `s^2` coefficient 366 is
/// inconsistent with the closed form and with `N_Ph(6,1) = N_Zh(6,0) +
/// N_Zh(5,0) = 1176`; the value is 355.
pub const MISPRINTED_TOTAL: (Role, usize, &str) = (Role::Ph, 6, "s^6+7s^5+50s^4+170s^3+366s^2+401s+192");

/// Printed individual entries `(role, L_y, d, polynomial)`.
pub fn reference_entries() -> Vec<(Role, usize, usize, &'static str)> {
    vec![
        (Role::Zh, 2, 0, "s^2+2s+2"),
        (Role::Zh, 3, 0, "s^3+3s^2+6s+5"),
        (Role::Zh, 3, 1, "3(s^2+3s+3)"),
        (Role::Zh, 4, 0, "s^4+4s^3+12s^2+20s+14"),
        (Role::Zh, 4, 1, "4s^3+18s^2+36s+28"),
        (Role::Zh, 4, 2, "6s^2+20s+20"),
        (Role::Ph, 2, 0, "s^2+s+1"),
        (Role::Ph, 3, 0, "s^3+s^2+3s+2"),
        (Role::Ph, 3, 1, "3s^2+5s+4"),
        (Role::Ph, 4, 0, "s^4+s^3+6s^2+7s+4"),
        (Role::Ph, 4, 1, "4s^3+9s^2+15s+9"),
        (Role::Ph, 4, 2, "6s^2+11s+8"),
    ]
}

fn zh_total_at(ly: usize, x: &BigInt) -> BigInt {
    let ly = ly as u64;
    let mut choose_ly = BigInt::one();
    let mut central = BigInt::one();
    let mut acc = BigInt::from(0);
    for j in 0..=ly {
        acc += &choose_ly * &central * x.pow((ly - j) as u32);
        choose_ly = choose_ly * (ly - j) / (j + 1);
        central = central * (2 * j + 1) * (2 * j + 2) / ((j + 1) * (j + 1));
    }
    acc
}

/// Ratios `N(L_y+1,s)/N(L_y,s)` for `L_y = 1..ly_max`, from the closed-form
/// totals evaluated in exact integers.
pub fn growth_rate(role: Role, s: u32, ly_max: usize) -> Vec<f64> {
    let x = BigInt::from(s);
    let xm1 = &x - 1;
    let total = |ly: usize| match role {
        Role::Zh => zh_total_at(ly, &x),
        Role::Ph => zh_total_at(ly, &xm1) + zh_total_at(ly - 1, &xm1),
    };
    let totals: Vec<BigInt> = (1..=ly_max + 1).map(total).collect();
    totals
        .windows(2)
        .map(|w| {
            let r = num_rational::BigRational::new(w[1].clone(), w[0].clone());
            r.to_f64().unwrap_or(f64::NAN)
        })
        .collect()
}

/// The circuit is the width-one strip: its partition function splits as
/// `c̃^(0)·[λ_1^n + λ_2^n + (s-1)(vw)^n] + c̃^(1)·v^n`.
pub fn circuit_realizes_width_one(n: usize) -> Result<bool> {
    let mut pair = PowerSumPair::circuit();
    let n32 = n as u32;
    let d0 = pair.power_sum(n).clone() + (MultiPoly::s() - 1) * MultiPoly::monomial([0, 0, n32, n32], 1);
    let d1 = MultiPoly::monomial([0, 0, n32, 0], 1);
    let assembled = c_tilde(0, &MultiPoly::q_tilde()) * d0 + c_tilde(1, &MultiPoly::q_tilde()) * d1;
    Ok(assembled == z_circuit(n)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn c_tilde_examples() {
        let qt = MultiPoly::q_tilde();
        assert_eq!(c_tilde(0, &qt), MultiPoly::one());
        assert_eq!(c_tilde(1, &qt), p("q-s-1"));
        assert_eq!(c_tilde(2, &qt), p("(q-s)^2 - 3(q-s) + 1"));
        for d in 0..8 {
            let sign = if d % 2 == 0 { 1 } else { -1 };
            assert_eq!(c_tilde(d, &MultiPoly::zero()), MultiPoly::constant(sign));
            let at_one = [1, 0, -1][d % 3];
            assert_eq!(c_tilde(d, &MultiPoly::one()), MultiPoly::constant(at_one));
        }
    }

    #[test]
    fn reference_entries_match() {
        let tables = build_counts(4).unwrap();
        for (role, ly, d, expected) in reference_entries() {
            assert_eq!(tables[ly - 1].n(role, d), p(expected), "{role:?} {ly} {d}");
        }
    }

    #[test]
    fn identities_through_width_eight() {
        let tables = build_counts(8).unwrap();
        for ly in 1..=8 {
            verify_sum_identities(&tables[ly - 1]).unwrap();
            verify_relation_and_totals(&tables, ly).unwrap();
        }
    }

    #[test]
    fn misprinted_total_differs_only_in_s_squared() {
        let tables = build_counts(6).unwrap();
        let (role, ly, uncorrected) = MISPRINTED_TOTAL;
        assert_eq!(tables[ly - 1].total(role) - p(uncorrected), p("-11s^2"));
        assert_eq!(tables[5].total(Role::Ph).subs_int(Var::S, 1), MultiPoly::constant(1176));
    }

    #[test]
    fn growth() {
        let zh = growth_rate(Role::Zh, 1, 6);
        assert!((zh[4] - 5.0).abs() / 5.0 < 0.15);
        let ph = growth_rate(Role::Ph, 2, 200);
        assert!((ph.last().unwrap() - 5.0).abs() < 0.05);
        assert!(ph.windows(2).all(|w| w[1] >= w[0]));
    }

    #[test]
    fn width_one_is_the_circuit() {
        for n in 2..=6 {
            assert!(circuit_realizes_width_one(n).unwrap());
        }
    }

    #[test]
    fn failures_carry_the_residual() {
        let mut tables = build_counts(2).unwrap();
        tables[1].zh[0] = p("s^2+2s+3");
        match verify_sum_identities(&tables[1]) {
            Err(Error::IdentityFailed { residual, .. }) => assert!(!residual.is_zero()),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn table_json() {
        let t = &build_counts(2).unwrap()[1];
        let j = t.to_json();
        assert_eq!(j["zh"][0], serde_json::json!(["2", "2", "1"]));
        assert_eq!(j["totals"]["ph"], serde_json::json!(["4", "3", "1"]));
    }
}
