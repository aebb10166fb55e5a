//! Deviation functionals (deletion-contraction, complete-graph intersection,
//! cycle scaling, Tutte-class separation), their factor theorems, the
//! bipartite lower bounds, and a pass/fail ledger over fixture graphs.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::engine::{self, alpha_decompose, beta_decompose, chromatic_number, ph, tutte, z_subgraph_sum};
use crate::error::{Error, Result};
use crate::families::ph_complete;
use crate::graph::{make_family, FamilyKind, Graph};
use crate::poly::{MultiPoly, RationalExpr, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeviationKind {
    Dcr,
    DcrPh,
    Kit,
    Cycles,
    TutteSeparator,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum DeviationValue {
    Poly(MultiPoly),
    Rational(RationalExpr),
}

impl DeviationValue {
    pub fn numerator(&self) -> &MultiPoly {
        match self {
            DeviationValue::Poly(p) => p,
            DeviationValue::Rational(r) => &r.numerator,
        }
    }

    pub fn as_rational(&self) -> RationalExpr {
        match self {
            DeviationValue::Poly(p) => RationalExpr::from_poly(p.clone()),
            DeviationValue::Rational(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator().is_zero()
    }
}

impl fmt::Display for DeviationValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeviationValue::Poly(p) => write!(f, "{p}"),
            DeviationValue::Rational(r) => write!(f, "{r}"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DeviationReport {
    pub kind: DeviationKind,
    pub value: DeviationValue,
    /// Power of `s` multiplied through to clear denominators, if any.
    pub clearing_factor: Option<MultiPoly>,
    /// Factors confirmed by exact division of the numerator.
    pub verified_factors: Vec<MultiPoly>,
    /// Expected factors that did not divide.
    pub missing_factors: Vec<MultiPoly>,
}

impl DeviationReport {
    fn build(kind: DeviationKind, value: DeviationValue, factors: &[MultiPoly]) -> Self {
        let num = value.numerator();
        let (verified_factors, missing_factors) = if num.is_zero() {
            (factors.to_vec(), Vec::new())
        } else {
            factors.iter().cloned().partition(|f| num.is_divisible_by(f))
        };
        Self { kind, value, clearing_factor: None, verified_factors, missing_factors }
    }

    pub fn factors_ok(&self) -> bool {
        self.missing_factors.is_empty()
    }
}

fn p(s: &str) -> MultiPoly {
    s.parse().expect("static polynomial")
}

/// `Z` for graphs that may carry loops: each loop is always monochromatic and
/// contributes a factor `1 + v`.
pub fn z_allowing_loops(graph: &Graph) -> Result<MultiPoly> {
    let loops = graph.edges().iter().filter(|(u, v)| u == v).count();
    let rest = Graph::new(graph.n(), graph.edges().iter().copied().filter(|(u, v)| u != v).collect())?;
    Ok((MultiPoly::v() + 1).pow(loops as u32) * z_subgraph_sum(&rest)?)
}

/// `Z(G) - [Z(G-e) + v Z(G/e)]`; contraction keeps parallel edges.
pub fn dcr_deviation(graph: &Graph, edge: usize) -> Result<DeviationReport> {
    let del = graph.delete_edge(edge)?;
    let con = graph.contract_edge(edge)?;
    let value = z_allowing_loops(graph)? - z_allowing_loops(&del)? - MultiPoly::v() * z_allowing_loops(&con)?;
    Ok(DeviationReport::build(
        DeviationKind::Dcr,
        DeviationValue::Poly(value),
        &[MultiPoly::s(), MultiPoly::v(), MultiPoly::w(), p("w-1")],
    ))
}

/// `Ph(G) - [Ph(G-e) - Ph(G/e)]`, with multi-edges reduced.
pub fn dcr_deviation_ph(graph: &Graph, edge: usize) -> Result<DeviationReport> {
    let del = graph.delete_edge(edge)?;
    let con = graph.contract_edge(edge)?;
    let value = ph(graph)? - ph(&del)? + ph(&con)?;
    Ok(DeviationReport::build(
        DeviationKind::DcrPh,
        DeviationValue::Poly(value),
        &[MultiPoly::s(), MultiPoly::w(), p("w-1")],
    ))
}

fn label_index(g: &Graph, what: &str) -> Result<HashMap<String, usize>> {
    let mut map = HashMap::new();
    for i in 0..g.n() {
        if map.insert(g.label(i), i).is_some() {
            return Err(Error::BadDecomposition(format!("duplicate label `{}` in {what}", g.label(i))));
        }
    }
    Ok(map)
}

fn labelled_edges(g: &Graph) -> BTreeSet<(String, String)> {
    g.edges()
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (g.label(u), g.label(v));
            if a <= b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect()
}

/// `Ph(G) - Ph(G_1) Ph(G_2) / Ph(K_m)` for a caller-supplied decomposition
/// `G = G_1 ∪ G_2`, `G_1 ∩ G_2 = K_m`. Vertices are matched by label.
pub fn kit_deviation(g: &Graph, g1: &Graph, g2: &Graph, m: usize) -> Result<DeviationReport> {
    let all = label_index(g, "G")?;
    let l1 = label_index(g1, "G1")?;
    let l2 = label_index(g2, "G2")?;
    let union: BTreeSet<&String> = l1.keys().chain(l2.keys()).collect();
    let whole: BTreeSet<&String> = all.keys().collect();
    if union != whole {
        return Err(Error::BadDecomposition("vertex labels of G1 and G2 do not cover G exactly".into()));
    }
    let shared: Vec<&String> = l1.keys().filter(|k| l2.contains_key(*k)).collect();
    if shared.len() != m {
        return Err(Error::BadDecomposition(format!("G1 and G2 share {} vertices, expected {m}", shared.len())));
    }
    let (e1, e2) = (labelled_edges(g1), labelled_edges(g2));
    for (i, a) in shared.iter().enumerate() {
        for b in &shared[i + 1..] {
            let key = if a <= b { ((*a).clone(), (*b).clone()) } else { ((*b).clone(), (*a).clone()) };
            if !e1.contains(&key) || !e2.contains(&key) {
                return Err(Error::BadDecomposition(format!(
                    "shared vertices {a}, {b} are not adjacent in both parts"
                )));
            }
        }
    }
    let joined: BTreeSet<_> = e1.union(&e2).cloned().collect();
    if joined != labelled_edges(g) {
        return Err(Error::BadDecomposition("edges of G differ from the union of G1 and G2".into()));
    }
    let km = ph_complete(m.max(1))?;
    let km = if m == 0 { MultiPoly::one() } else { km };
    let numerator = ph(g)? * &km - ph(g1)? * ph(g2)?;
    let value = RationalExpr::new(numerator, km)?;
    Ok(DeviationReport::build(
        DeviationKind::Kit,
        DeviationValue::Rational(value),
        &[MultiPoly::s(), MultiPoly::q_tilde(), MultiPoly::w(), p("w-1")],
    ))
}

/// `Z(G,q,s,v,w) - s^n Z(G, q/s, 1, v/s, w)`, with `s^D` cleared and
/// recorded.
pub fn cycle_deviation(graph: &Graph) -> Result<DeviationReport> {
    let z = z_subgraph_sum(graph)?;
    let n = graph.n() as i64;
    let at_one = z.subs_int(Var::S, 1);
    let clear = at_one.terms().map(|(e, _)| e[0] as i64 + e[2] as i64 - n).max().unwrap_or(0).max(0) as u32;
    let mut scaled = MultiPoly::zero();
    for (e, c) in at_one.terms() {
        let s_exp = (n - e[0] as i64 - e[2] as i64 + clear as i64) as u32;
        scaled += MultiPoly::monomial([e[0], s_exp, e[2], e[3]], c.clone());
    }
    let factor = MultiPoly::monomial([0, clear, 0, 0], 1);
    let numerator = &factor * &z - scaled;
    let value = if clear == 0 {
        DeviationValue::Poly(numerator)
    } else {
        DeviationValue::Rational(RationalExpr::new(numerator, factor.clone())?)
    };
    let mut report = DeviationReport::build(DeviationKind::Cycles, value, &[]);
    report.clearing_factor = (clear > 0).then_some(factor);
    Ok(report)
}

/// `Z(G) - Z(H)`. Tutte-equivalent pairs must give a multiple of
/// `s(q-s)vw(w-1)`; pairs with the same reduced adjacency must give a
/// multiple of `v + 1`.
pub fn tutte_separator(g: &Graph, h: &Graph) -> Result<(DeviationReport, bool)> {
    let value = z_subgraph_sum(g)? - z_subgraph_sum(h)?;
    let equivalent = tutte(g)? == tutte(h)?;
    let mut factors = Vec::new();
    if equivalent {
        factors.extend([MultiPoly::s(), MultiPoly::q_tilde(), MultiPoly::v(), MultiPoly::w(), p("w-1")]);
    }
    if same_reduced_adjacency(g, h) {
        factors.push(p("v+1"));
    }
    Ok((DeviationReport::build(DeviationKind::TutteSeparator, DeviationValue::Poly(value), &factors), equivalent))
}

fn same_reduced_adjacency(g: &Graph, h: &Graph) -> bool {
    let adj =
        |x: &Graph| -> BTreeSet<(usize, usize)> { x.edges().iter().map(|&(u, v)| (u.min(v), u.max(v))).collect() };
    g.n() == h.n() && adj(g) == adj(h)
}

/// For chromatically equivalent graphs with an edge, `Ph(G) - Ph(H)` vanishes
/// at `q = 1` for `s = 0, 1`. Returns `None` when the pair is not
/// chromatically equivalent.
pub fn chromatic_equivalence_at_q1(g: &Graph, h: &Graph) -> Result<Option<bool>> {
    if engine::chromatic_polynomial(g)? != engine::chromatic_polynomial(h)? || g.e() == 0 {
        return Ok(None);
    }
    let diff = (ph(g)? - ph(h)?).subs_int(Var::Q, 1);
    Ok(Some((0..=1).all(|s| diff.subs_int(Var::S, s).is_zero())))
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundCheck {
    pub name: &'static str,
    pub applicable: bool,
    /// Which precondition failed, when skipped.
    pub note: Option<String>,
    pub bound: f64,
    pub value: f64,
    pub holds: Option<bool>,
}

/// Lower bounds on `Ph` of a bipartite graph with sides `n1 <= n2`.
pub fn bipartite_bounds(n1: usize, n2: usize, q: f64, s: f64, w: f64, ph_value: f64) -> Vec<BoundCheck> {
    let tol = 1e-9 * ph_value.abs().max(1.0);
    let n = (n1 + n2) as i32;
    let mut out = Vec::new();
    let mut push = |name, pre: Option<String>, bound: f64| {
        let applicable = pre.is_none();
        out.push(BoundCheck {
            name,
            applicable,
            note: pre,
            bound,
            value: ph_value,
            holds: applicable.then_some(ph_value + tol >= bound),
        });
    };
    let base = if n1 > n2 || q < 2.0 || w < 0.0 {
        Some(format!("requires n1 <= n2, q >= 2, w >= 0 (n1={n1}, n2={n2}, q={q}, w={w})"))
    } else {
        None
    };
    let large = base.clone().or_else(|| (s < 2.0).then(|| format!("large-w bound needs s >= 2, got {s}")));
    push("large_w", large, s * (s - 1.0).powi(n2 as i32) * w.powi(n));
    let small =
        base.clone().or_else(|| (q < s + 2.0).then(|| format!("small-w bound needs q >= s+2, got q={q}, s={s}")));
    push("small_w", small, (q - s) * (q - s - 1.0).powi(n2 as i32));
    let moderate =
        base.clone().or_else(|| (q < s + 1.0).then(|| format!("moderate-w bound needs q >= s+1, got q={q}, s={s}")));
    push("moderate_w", moderate, s * w.powi(n1 as i32) * (q - s).powi(n2 as i32));
    let unweighted =
        base.or_else(|| (w != 1.0 && s != 0.0).then(|| "unweighted bound needs w = 1 or s = 0".to_string()));
    push("unweighted", unweighted, q * (q - 1.0).powi(n2 as i32));
    out
}

/// Brute-force `Ph` on a bipartite graph, then [`bipartite_bounds`].
pub fn bipartite_bounds_for(graph: &Graph, q: u32, s: u32, w: f64) -> Result<Vec<BoundCheck>> {
    let (a, b) = graph.bipartition().ok_or_else(|| Error::BadDecomposition("graph is not bipartite".into()))?;
    let value = engine::oracle_ph(graph, q, s)?.eval_real(0.0, 0.0, 0.0, w);
    Ok(bipartite_bounds(a.len(), b.len(), q as f64, s as f64, w, value))
}

#[derive(Debug, Clone, Serialize)]
pub struct SignViolation {
    pub s: i64,
    pub w: f64,
    pub j: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct UnimodalityViolation {
    pub s: i64,
    pub w: f64,
    pub sequence: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SignReport {
    pub samples: usize,
    pub sign_violations: Vec<SignViolation>,
    /// Reported only; unimodality is a conjecture.
    pub unimodality_violations: Vec<UnimodalityViolation>,
}

/// Samples `w` uniformly in `[0, 1)` and checks `sgn α_{n-j}(s,w) = (-1)^j`
/// for `j < n` at each integer `s` in `s_values`.
pub fn sign_alternation(graph: &Graph, s_values: &[i64], w_samples: usize, seed: u64) -> Result<SignReport> {
    let n = graph.n();
    let alpha = alpha_decompose(&ph(graph)?, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ws: Vec<f64> = (0..w_samples).map(|_| rng.random::<f64>()).collect();
    let mut report = SignReport { samples: 0, sign_violations: Vec::new(), unimodality_violations: Vec::new() };
    for &s in s_values {
        let coeffs: Vec<MultiPoly> = alpha.coefficients.iter().map(|c| c.subs_int(Var::S, s)).collect();
        for &w in &ws {
            report.samples += 1;
            let wr = BigRational::from_float(w).expect("finite sample");
            let zero = BigRational::zero();
            let point = [zero.clone(), zero.clone(), zero, wr];
            let values: Vec<BigRational> = coeffs.iter().map(|c| c.eval_exact(&point)).collect();
            for (j, val) in values.iter().enumerate().take(n) {
                let ok = if j % 2 == 0 { val.is_positive() } else { val.is_negative() };
                if !ok {
                    report.sign_violations.push(SignViolation { s, w, j });
                }
            }
            let mags: Vec<BigRational> = values.iter().map(|x| x.abs()).collect();
            let rose_after_fall = (0..mags.len().saturating_sub(1))
                .any(|j| mags[j] > mags[j + 1] && (j + 1..mags.len() - 1).any(|k| mags[k] < mags[k + 1]));
            if rose_after_fall {
                report.unimodality_violations.push(UnimodalityViolation {
                    s,
                    w,
                    sequence: values.iter().map(to_f64).collect(),
                });
            }
        }
    }
    Ok(report)
}

fn to_f64(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

/// `Ph(G) >= Σ_{σ ∈ subset} w^{n_s(σ)}` for random subsets of proper
/// colorings at `w >= 0`.
pub fn subset_inequality(graph: &Graph, q: u32, s: u32, w: f64, seed: u64) -> Result<bool> {
    let total = engine::oracle_ph(graph, q, s)?.eval_real(0.0, 0.0, 0.0, w);
    let n = graph.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut partial = 0.0;
    let mut color = vec![0u32; n];
    let count = (q as u64).pow(n as u32);
    for _ in 0..count {
        if graph.edges().iter().all(|&(u, v)| color[u] != color[v]) && rng.random::<bool>() {
            let ns = color.iter().filter(|&&c| c < s).count();
            partial += w.powi(ns as i32);
        }
        for c in color.iter_mut() {
            *c += 1;
            if *c < q {
                break;
            }
            *c = 0;
        }
    }
    Ok(total + 1e-9 * total.abs().max(1.0) >= partial)
}

#[derive(Debug, Clone, Serialize)]
pub struct LedgerEntry {
    pub suite: &'static str,
    pub graph: String,
    pub identity: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Ledger {
    pub entries: Vec<LedgerEntry>,
}

impl Ledger {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LedgerEntry> {
        self.entries.iter().filter(|e| !e.passed)
    }

    fn record(
        &mut self,
        suite: &'static str,
        graph: &str,
        identity: impl Into<String>,
        passed: bool,
        detail: Option<String>,
    ) {
        self.entries.push(LedgerEntry { suite, graph: graph.to_string(), identity: identity.into(), passed, detail });
    }

    fn residual(&mut self, suite: &'static str, graph: &str, identity: impl Into<String>, residual: &MultiPoly) {
        let passed = residual.is_zero();
        self.record(suite, graph, identity, passed, (!passed).then(|| format!("residual {residual}")));
    }

    fn extend(&mut self, other: Ledger) {
        self.entries.extend(other.entries);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Core,
    Dcr,
    Kit,
    Cycles,
    Bounds,
    Signs,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "core" => Suite::Core,
            "dcr" => Suite::Dcr,
            "kit" => Suite::Kit,
            "cycles" => Suite::Cycles,
            "bounds" => Suite::Bounds,
            "signs" => Suite::Signs,
            "all" => Suite::All,
            other => return Err(Error::Parse(format!("unknown suite `{other}`"))),
        })
    }
}

/// Small graphs used by the suites when the caller supplies none.
pub fn default_fixtures() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    let mut add = |kind: FamilyKind, n: usize| {
        out.push((format!("{kind}{n}"), make_family(kind, n).expect("fixture")));
    };
    for n in 1..=4 {
        add(FamilyKind::Null, n);
    }
    for n in 2..=5 {
        add(FamilyKind::Line, n);
    }
    for n in 4..=5 {
        add(FamilyKind::Star, n);
    }
    for n in 2..=6 {
        add(FamilyKind::Circuit, n);
    }
    for n in 3..=4 {
        add(FamilyKind::Complete, n);
    }
    add(FamilyKind::C4d, 4);
    out
}

/// Symmetry, reductions, `β` and `α` theorems for one loopless graph.
pub fn core_identities(name: &str, graph: &Graph) -> Result<Ledger> {
    const S: &str = "core";
    let mut led = Ledger::default();
    let n = graph.n();
    let n32 = n as u32;
    let z = z_subgraph_sum(graph)?;
    let phg = ph(graph)?;
    let wn = MultiPoly::monomial([0, 0, 0, n32], 1);
    let q_minus_s = MultiPoly::q_tilde();
    // Zero-field reference from the Tutte polynomial, independent of `s`.
    let z0 = tutte(graph)?.to_zero_field(n, graph.component_count());
    let p0 = z0.subs_int(Var::V, -1);

    let mirror = |poly: &MultiPoly| -> Result<MultiPoly> {
        let flipped = poly.subs_poly(Var::S, &q_minus_s);
        let mut b = beta_decompose(&flipped, n)?.coefficients;
        b.reverse();
        Ok(MultiPoly::from_coefficients(Var::W, &b))
    };
    led.residual(S, name, "s<->q-s symmetry (Z)", &(mirror(&z)? - &z));
    led.residual(S, name, "s<->q-s symmetry (Ph)", &(mirror(&phg)? - &phg));
    led.residual(S, name, "w=1 gives zero field", &(z.subs_int(Var::W, 1) - &z0));
    led.residual(S, name, "s=0 gives zero field", &(z.subs_int(Var::S, 0) - &z0));
    led.residual(S, name, "w=0 shifts q to q-s", &(z.subs_int(Var::W, 0) - z0.subs_poly(Var::Q, &q_minus_s)));
    led.residual(S, name, "s=q gives w^n Z(G,q,v)", &(z.subs_poly(Var::S, &MultiPoly::q()) - &wn * &z0));
    led.residual(S, name, "Ph w=0 is P(G,q-s)", &(phg.subs_int(Var::W, 0) - p0.subs_poly(Var::Q, &q_minus_s)));
    led.residual(S, name, "Ph s=q is w^n P(G,q)", &(phg.subs_poly(Var::S, &MultiPoly::q()) - &wn * &p0));
    led.residual(S, name, "Ph w=1 is P(G,q)", &(phg.subs_int(Var::W, 1) - &p0));
    led.residual(S, name, "dZ/ds vanishes at w=1", &z.derivative(Var::S).subs_int(Var::W, 1));
    led.residual(S, name, "dZ/dw vanishes at s=0", &z.derivative(Var::W).subs_int(Var::S, 0));
    led.residual(S, name, "dPh/ds vanishes at w=1", &phg.derivative(Var::S).subs_int(Var::W, 1));
    led.residual(S, name, "dPh/dw vanishes at s=0", &phg.derivative(Var::W).subs_int(Var::S, 0));

    for (label, poly, zero_field) in [("Z", &z, &z0), ("Ph", &phg, &p0)] {
        let beta = beta_decompose(poly, n)?;
        led.residual(S, name, format!("beta reassembles ({label})"), &(beta.reassemble() - poly));
        led.residual(
            S,
            name,
            format!("beta_0 = Z(G,q-s) ({label})"),
            &(beta.beta(0) - zero_field.subs_poly(Var::Q, &q_minus_s)),
        );
        led.residual(
            S,
            name,
            format!("beta_n = Z(G,s) ({label})"),
            &(beta.beta(n) - zero_field.subs_poly(Var::Q, &MultiPoly::s())),
        );
        let bn_q_free = !beta.beta(n).involves(Var::Q);
        led.record(S, name, format!("beta_n free of q ({label})"), bn_q_free, None);
        let mut sym_ok = true;
        let mut low_ok = true;
        let mut high_ok = true;
        for j in 0..=n {
            let mirrored = beta.beta(n - j).subs_poly(Var::S, &q_minus_s);
            sym_ok &= beta.beta(j) == &mirrored;
            if j < n {
                low_ok &= beta.beta(j).is_divisible_by(&q_minus_s);
            }
            if j > 0 {
                high_ok &= beta.beta(j).is_divisible_by(&MultiPoly::s());
            }
        }
        led.record(S, name, format!("beta_j mirror symmetry ({label})"), sym_ok, None);
        led.record(S, name, format!("(q-s) divides beta_j, j<n ({label})"), low_ok, None);
        led.record(S, name, format!("s divides beta_j, j>0 ({label})"), high_ok, None);
    }

    let beta_ph = beta_decompose(&phg, n)?;
    if let Some(chi) = chromatic_number(graph)? {
        let s_prod = (0..chi).fold(MultiPoly::one(), |acc, j| acc * (MultiPoly::s() - j as i64));
        let qs_prod = (0..chi).fold(MultiPoly::one(), |acc, j| acc * (q_minus_s.clone() - j as i64));
        led.record(
            S,
            name,
            format!("prod_(j<{chi}) (s-j) divides beta_n"),
            beta_ph.beta(n).is_divisible_by(&s_prod),
            None,
        );
        led.record(
            S,
            name,
            format!("prod_(j<{chi}) (q-s-j) divides beta_0"),
            beta_ph.beta(0).is_divisible_by(&qs_prod),
            None,
        );
    }
    if graph.e() > 0 {
        led.record(S, name, "s(s-1) divides beta_n", beta_ph.beta(n).is_divisible_by(&p("s(s-1)")), None);
        led.record(S, name, "(q-s)(q-s-1) divides beta_0", beta_ph.beta(0).is_divisible_by(&p("(q-s)(q-s-1)")), None);
    }

    let alpha = alpha_decompose(&phg, n)?;
    led.record(S, name, "alpha_n = 1", alpha.alpha(n) == &MultiPoly::one(), None);
    if n >= 1 {
        let e_reduced = graph.reduce_multi_edges().e() as i64;
        let expected = MultiPoly::t().scale(&BigInt::from(n)) - e_reduced;
        led.residual(S, name, "alpha_(n-1) = n s(w-1) - e(R_E(G))", &(alpha.alpha(n - 1) - expected));
    }
    let t_ok = |a: &MultiPoly| a.is_divisible_by(&MultiPoly::s()) && a.is_divisible_by(&p("w-1"));
    led.record(S, name, "t divides alpha_0 (Ph)", t_ok(alpha.alpha(0)), None);
    led.record(S, name, "t divides alpha_0 (Z)", t_ok(&z.subs_int(Var::Q, 0)), None);

    let with_vertex = graph.disjoint_union(&make_family(FamilyKind::Null, 1)?);
    led.residual(
        S,
        name,
        "disjoint union factorizes",
        &(z_subgraph_sum(&with_vertex)? - &z * crate::families::z_null(1)),
    );
    Ok(led)
}

fn dcr_suite(name: &str, graph: &Graph) -> Result<Ledger> {
    const S: &str = "dcr";
    let mut led = Ledger::default();
    for edge in 0..graph.e() {
        if graph.edges()[edge].0 == graph.edges()[edge].1 {
            continue;
        }
        let rep = dcr_deviation(graph, edge)?;
        let d = rep.value.numerator();
        led.record(S, name, format!("edge {edge}: svw(w-1) divides"), rep.factors_ok(), None);
        let vanish = [(Var::W, 1), (Var::W, 0), (Var::S, 0), (Var::V, 0)]
            .iter()
            .all(|&(var, val)| d.subs_int(var, val).is_zero());
        led.record(S, name, format!("edge {edge}: vanishes at w=1, w=0, s=0, v=0"), vanish, None);
        let rep_ph = dcr_deviation_ph(graph, edge)?;
        led.record(S, name, format!("edge {edge}: sw(w-1) divides Ph deviation"), rep_ph.factors_ok(), None);
        led.residual(
            S,
            name,
            format!("edge {edge}: Ph deviation is v=-1 of Z deviation"),
            &(d.subs_int(Var::V, -1) - rep_ph.value.numerator()),
        );
    }
    Ok(led)
}

/// Reference values for the deletion-contraction deviations.
pub fn dcr_reference() -> Vec<(&'static str, Graph, MultiPoly)> {
    vec![
        ("line2", make_family(FamilyKind::Line, 2).expect("fixture"), p("svw(w-1)")),
        ("line3", make_family(FamilyKind::Line, 3).expect("fixture"), p("svw(w-1)(s(w-1)+wv+q)")),
        ("circuit3", make_family(FamilyKind::Circuit, 3).expect("fixture"), p("svw(w-1)(wv^2+2wv+s(w-1)+q)")),
    ]
}

fn labelled(n: usize, edges: &[(usize, usize)], labels: &[&str]) -> Graph {
    Graph::new(n, edges.to_vec())
        .and_then(|g| g.with_labels(labels.iter().map(|s| s.to_string()).collect()))
        .expect("fixture")
}

#[derive(Debug, Clone)]
pub struct KitFixture {
    pub name: &'static str,
    pub g: Graph,
    pub g1: Graph,
    pub g2: Graph,
    pub m: usize,
    pub expected: RationalExpr,
}

/// Curated complete-graph-intersection decompositions with their
/// deviation values.
pub fn kit_fixtures() -> Vec<KitFixture> {
    let k2 = ph_complete(2).expect("K2");
    let rat = |n: &str, d: MultiPoly| RationalExpr::new(p(n), d).expect("nonzero");
    vec![
        KitFixture {
            name: "line3 = line2 + line2 over K1",
            g: labelled(3, &[(0, 1), (1, 2)], &["a", "b", "c"]),
            g1: labelled(2, &[(0, 1)], &["a", "b"]),
            g2: labelled(2, &[(0, 1)], &["b", "c"]),
            m: 1,
            expected: rat("s(q-s)w(w-1)^2", p("q+s(w-1)")),
        },
        KitFixture {
            name: "line4 = line3 + line2 over K1",
            g: labelled(4, &[(0, 1), (1, 2), (2, 3)], &["a", "b", "c", "d"]),
            g1: labelled(3, &[(0, 1), (1, 2)], &["a", "b", "c"]),
            g2: labelled(2, &[(0, 1)], &["c", "d"]),
            m: 1,
            expected: rat("s(q-s)w(w-1)^2(q+s(w-1)-(w+1))", p("q+s(w-1)")),
        },
        KitFixture {
            name: "c4d = K3 + K3 over K2",
            g: labelled(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)], &["a", "b", "c", "d"]),
            g1: labelled(3, &[(0, 1), (1, 2), (0, 2)], &["a", "b", "c"]),
            g2: labelled(3, &[(0, 1), (1, 2), (0, 2)], &["a", "c", "d"]),
            m: 2,
            expected: RationalExpr::new(p("2s(q-s)w(w-1)^2") * (k2.clone() - p("2(q-1)w")), k2).expect("nonzero"),
        },
    ]
}

fn kit_suite() -> Result<Ledger> {
    const S: &str = "kit";
    let mut led = Ledger::default();
    for fx in kit_fixtures() {
        let rep = kit_deviation(&fx.g, &fx.g1, &fx.g2, fx.m)?;
        let value = rep.value.as_rational();
        led.record(S, fx.name, "matches reference value", value.same_function(&fx.expected), Some(value.to_string()));
        led.record(S, fx.name, "s(q-s)w(w-1) divides numerator", rep.factors_ok(), None);
        let num = &value.numerator;
        let vanish = num.subs_int(Var::W, 1).is_zero()
            && num.subs_int(Var::W, 0).is_zero()
            && num.subs_int(Var::S, 0).is_zero()
            && num.subs_poly(Var::S, &MultiPoly::q()).is_zero();
        led.record(S, fx.name, "vanishes at w=1, w=0, s=0, s=q", vanish, None);
    }
    Ok(led)
}

fn cycles_suite(name: &str, graph: &Graph) -> Result<Ledger> {
    const S: &str = "cycles";
    let mut led = Ledger::default();
    let rep = cycle_deviation(graph)?;
    if graph.cycle_rank() == 0 {
        led.record(S, name, "forest scaling deviation is zero", rep.value.is_zero(), Some(rep.value.to_string()));
    } else {
        led.record(S, name, "graph with cycles has nonzero scaling deviation", !rep.value.is_zero(), None);
    }
    Ok(led)
}

fn circuit_cycle_reference(led: &mut Ledger) -> Result<()> {
    for n in 2..=6usize {
        let g = make_family(FamilyKind::Circuit, n)?;
        let rep = cycle_deviation(&g)?;
        let expected = RationalExpr::new(p(&format!("(s-1)(q-s+s w^{n}) v^{n}")), MultiPoly::s())?;
        led.record(
            "cycles",
            &format!("circuit{n}"),
            "deviation is (s-1)(q-s+s w^n)v^n / s",
            rep.value.as_rational().same_function(&expected),
            None,
        );
    }
    Ok(())
}

fn separator_reference(led: &mut Ledger) -> Result<()> {
    const S: &str = "cycles";
    let f = |k, n| make_family(k, n).expect("fixture");
    let (rep, eq) = tutte_separator(&f(FamilyKind::Star, 4), &f(FamilyKind::Line, 4))?;
    led.record(S, "star4 vs line4", "Tutte-equivalent", eq, None);
    led.residual(
        S,
        "star4 vs line4",
        "difference is s(q-s)v^2 w(w-1)^2",
        &(rep.value.numerator() - p("s(q-s)v^2w(w-1)^2")),
    );
    led.record(S, "star4 vs line4", "s(q-s)vw(w-1) divides", rep.factors_ok(), None);
    let (rep, eq) = tutte_separator(&f(FamilyKind::Circuit, 2), &f(FamilyKind::Line, 2))?;
    led.record(S, "circuit2 vs line2", "not Tutte-equivalent", !eq, None);
    led.residual(
        S,
        "circuit2 vs line2",
        "difference is v(v+1)[q + s(w-1)(w+1)]",
        &(rep.value.numerator() - p("v(v+1)(q+s(w-1)(w+1))")),
    );
    led.record(S, "circuit2 vs line2", "v+1 divides", rep.factors_ok(), None);
    let (rep, _) = tutte_separator(&f(FamilyKind::Line, 4), &f(FamilyKind::Line, 4))?;
    led.record(S, "line4 vs line4", "difference is zero", rep.value.is_zero(), None);
    let ok = chromatic_equivalence_at_q1(&f(FamilyKind::Star, 5), &f(FamilyKind::Line, 5))?;
    led.record(S, "star5 vs line5", "chromatic equivalents agree at q=1, s=0,1", ok == Some(true), None);
    Ok(())
}

/// The bound grid: `C_4`, `C_6` and `S_5` over `q <= 5`, all `s`, and a
/// spread of `w`.
pub fn bounds_suite() -> Result<Ledger> {
    const S: &str = "bounds";
    let mut led = Ledger::default();
    for (name, kind, n) in
        [("circuit4", FamilyKind::Circuit, 4), ("circuit6", FamilyKind::Circuit, 6), ("star5", FamilyKind::Star, 5)]
    {
        let g = make_family(kind, n)?;
        let mut checked = 0;
        let mut failed = Vec::new();
        for q in 2..=5u32 {
            for s in 0..=q {
                for w in [0.0, 0.1, 0.5, 0.9, 1.0, 2.0, 5.0] {
                    for b in bipartite_bounds_for(&g, q, s, w)? {
                        if let Some(holds) = b.holds {
                            checked += 1;
                            if !holds {
                                failed.push(format!("{} q={q} s={s} w={w}: {} < {}", b.name, b.value, b.bound));
                            }
                        }
                    }
                }
            }
        }
        led.record(
            S,
            name,
            format!("{checked} applicable lower bounds hold"),
            failed.is_empty() && checked > 0,
            (!failed.is_empty()).then(|| failed.join("; ")),
        );
        let mut subset_ok = true;
        for (i, (q, s, w)) in [(3, 1, 0.5), (3, 2, 2.0), (4, 1, 0.0), (2, 1, 1.5)].into_iter().enumerate() {
            subset_ok &= subset_inequality(&g, q, s, w, i as u64)?;
        }
        led.record(S, name, "Ph dominates random coloring subsets", subset_ok, None);
    }
    Ok(led)
}

fn signs_suite(name: &str, graph: &Graph, seed: u64) -> Result<Ledger> {
    let mut led = Ledger::default();
    let rep = sign_alternation(graph, &[1, 2, 3], 20, seed)?;
    led.record(
        "signs",
        name,
        "sgn alpha_(n-j) = (-1)^j on [0,1)",
        rep.sign_violations.is_empty(),
        (!rep.sign_violations.is_empty()).then(|| format!("{} violations", rep.sign_violations.len())),
    );
    // Unimodality is a conjecture: recorded as passing, with any violations noted.
    let unimodal_note = (!rep.unimodality_violations.is_empty()).then(|| {
        format!("{} unimodality violations observed (conjecture, not failed)", rep.unimodality_violations.len())
    });
    led.record("signs", name, "unimodality observation", true, unimodal_note);
    Ok(led)
}

/// Runs `suite` over `graphs` (defaults to [`default_fixtures`] when empty).
pub fn run_suite(suite: Suite, graphs: &[(String, Graph)], seed: u64) -> Result<Ledger> {
    let fixtures;
    let graphs = if graphs.is_empty() {
        fixtures = default_fixtures();
        &fixtures[..]
    } else {
        graphs
    };
    let mut led = Ledger::default();
    let want = |s: Suite| suite == s || suite == Suite::All;
    for (name, g) in graphs {
        if want(Suite::Core) && !g.has_loop() {
            led.extend(core_identities(name, g)?);
        }
        if want(Suite::Dcr) {
            led.extend(dcr_suite(name, g)?);
        }
        if want(Suite::Cycles) && !g.has_loop() {
            led.extend(cycles_suite(name, g)?);
        }
        if want(Suite::Signs) && !g.has_loop() {
            led.extend(signs_suite(name, g, seed)?);
        }
    }
    if want(Suite::Dcr) {
        for (name, g, expected) in dcr_reference() {
            for edge in 0..g.e() {
                let rep = dcr_deviation(&g, edge)?;
                led.residual(
                    "dcr",
                    name,
                    format!("edge {edge}: matches reference value"),
                    &(rep.value.numerator() - &expected),
                );
            }
        }
    }
    if want(Suite::Kit) {
        led.extend(kit_suite()?);
    }
    if want(Suite::Cycles) {
        circuit_cycle_reference(&mut led)?;
        separator_reference(&mut led)?;
    }
    if want(Suite::Bounds) {
        led.extend(bounds_suite()?);
    }
    Ok(led)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(kind: FamilyKind, n: usize) -> Graph {
        make_family(kind, n).unwrap()
    }

    #[test]
    fn dcr_examples() {
        for (_, g, expected) in dcr_reference() {
            for e in 0..g.e() {
                let rep = dcr_deviation(&g, e).unwrap();
                assert_eq!(rep.value.numerator(), &expected);
                assert!(rep.factors_ok());
            }
        }
    }

    #[test]
    fn dcr_survives_loops_from_contraction() {
        let c2 = fam(FamilyKind::Circuit, 2);
        let rep = dcr_deviation(&c2, 0).unwrap();
        assert!(rep.factors_ok());
        assert!(dcr_deviation(&c2, 7).is_err());
    }

    #[test]
    fn kit_examples() {
        for fx in kit_fixtures() {
            let rep = kit_deviation(&fx.g, &fx.g1, &fx.g2, fx.m).unwrap();
            assert!(rep.value.as_rational().same_function(&fx.expected), "{}", fx.name);
            assert!(rep.factors_ok());
        }
    }

    #[test]
    fn kit_rejects_bad_decompositions() {
        let fx = &kit_fixtures()[0];
        assert!(matches!(kit_deviation(&fx.g, &fx.g1, &fx.g2, 2), Err(Error::BadDecomposition(_))));
        let stray = labelled(2, &[(0, 1)], &["b", "z"]);
        assert!(matches!(kit_deviation(&fx.g, &fx.g1, &stray, 1), Err(Error::BadDecomposition(_))));
    }

    #[test]
    fn cycle_examples() {
        assert!(cycle_deviation(&fam(FamilyKind::Star, 4)).unwrap().value.is_zero());
        assert!(cycle_deviation(&fam(FamilyKind::Line, 3)).unwrap().value.is_zero());
        let rep = cycle_deviation(&fam(FamilyKind::Circuit, 4)).unwrap();
        assert_eq!(rep.clearing_factor, Some(MultiPoly::s()));
        let expected = RationalExpr::new(p("(s-1)(q-s+s w^4) v^4"), MultiPoly::s()).unwrap();
        assert!(rep.value.as_rational().same_function(&expected));
    }

    #[test]
    fn separator_examples() {
        let mut led = Ledger::default();
        separator_reference(&mut led).unwrap();
        assert!(led.passed(), "{:?}", led.failures().collect::<Vec<_>>());
    }

    #[test]
    fn bound_examples() {
        let c4 = fam(FamilyKind::Circuit, 4);
        let find = |v: &[BoundCheck], name: &str| v.iter().find(|b| b.name == name).unwrap().clone();
        let b = bipartite_bounds_for(&c4, 3, 2, 2.0).unwrap();
        assert_eq!(find(&b, "large_w").bound, 32.0);
        assert_eq!(find(&b, "large_w").holds, Some(true));
        let b = bipartite_bounds_for(&c4, 4, 1, 0.1).unwrap();
        assert_eq!(find(&b, "small_w").bound, 12.0);
        assert_eq!(find(&b, "small_w").holds, Some(true));
        let b = bipartite_bounds_for(&c4, 3, 1, 0.9).unwrap();
        assert!((find(&b, "moderate_w").bound - 3.24).abs() < 1e-12);
        assert_eq!(find(&b, "moderate_w").holds, Some(true));
        assert!(!find(&b, "large_w").applicable);
    }

    #[test]
    fn core_identities_hold_on_fixtures() {
        for (name, g) in default_fixtures() {
            if g.has_loop() {
                continue;
            }
            let led = core_identities(&name, &g).unwrap();
            assert!(led.passed(), "{name}: {:?}", led.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn sign_alternation_on_small_graphs() {
        for (kind, n) in [(FamilyKind::Line, 4), (FamilyKind::Complete, 3), (FamilyKind::Null, 3)] {
            let rep = sign_alternation(&fam(kind, n), &[1, 2], 10, 7).unwrap();
            assert!(rep.sign_violations.is_empty(), "{kind}{n}");
        }
    }
}
