//! The spanning-subgraph sum for `Z`, its `v = -1` specialization `Ph`, the
//! brute-force coloring oracles, the Tutte polynomial and the `β`/`α`
//! coefficient decompositions.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{check_cap, mask_ranges, Graph, UnionFind, DEFAULT_EDGE_CAP};
use crate::poly::{MultiPoly, TPoly, Var};

/// Environment variable that overrides [`DEFAULT_EDGE_CAP`] in
/// [`EngineOptions::from_env`].
pub const EDGE_CAP_ENV: &str = "WSPOLY_EDGE_CAP";

/// Brute-force oracles refuse more than this many colorings by default.
pub const DEFAULT_COLORING_CAP: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineOptions {
    /// Worker threads for mask enumeration; 0 means all available cores.
    pub workers: usize,
    pub edge_cap: usize,
}

impl Default for EngineOptions {
    fn default() -> Self {
        Self { workers: 0, edge_cap: DEFAULT_EDGE_CAP }
    }
}

impl EngineOptions {
    pub fn from_env() -> Self {
        let edge_cap = std::env::var(EDGE_CAP_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_EDGE_CAP);
        Self { edge_cap, ..Self::default() }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_edge_cap(mut self, edge_cap: usize) -> Self {
        self.edge_cap = edge_cap;
        self
    }

    fn resolved_workers(&self) -> usize {
        if self.workers == 0 {
            std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
        } else {
            self.workers
        }
    }
}

/// Spanning subgraphs grouped by component-size multiset; `counts[e]` is the
/// number of subgraphs with that multiset and `e` edges.
#[derive(Debug, Default, Clone)]
pub(crate) struct Census {
    pub(crate) classes: HashMap<Vec<u8>, Vec<u64>>,
}

impl Census {
    fn merge(mut self, other: Census) -> Census {
        for (k, v) in other.classes {
            match self.classes.get_mut(&k) {
                Some(mine) => mine.iter_mut().zip(v).for_each(|(a, b)| *a += b),
                None => {
                    self.classes.insert(k, v);
                }
            }
        }
        self
    }
}

fn census_range(graph: &Graph, range: std::ops::Range<u64>) -> Census {
    let e = graph.e();
    let edges = graph.edges();
    let mut uf = UnionFind::new(graph.n());
    let mut sizes = Vec::with_capacity(graph.n());
    let mut census = Census::default();
    for mask in range {
        uf.reset();
        let mut bits = mask;
        while bits != 0 {
            let (u, v) = edges[bits.trailing_zeros() as usize];
            uf.union(u, v);
            bits &= bits - 1;
        }
        uf.sizes_into(&mut sizes);
        let ec = mask.count_ones() as usize;
        match census.classes.get_mut(sizes.as_slice()) {
            Some(counts) => counts[ec] += 1,
            None => {
                let mut counts = vec![0u64; e + 1];
                counts[ec] = 1;
                census.classes.insert(sizes.clone(), counts);
            }
        }
    }
    census
}

pub(crate) fn census(graph: &Graph, opts: &EngineOptions) -> Result<Census> {
    check_cap(graph, opts.edge_cap)?;
    if graph.n() > u8::MAX as usize {
        return Err(Error::BadSize { kind: "graph".into(), n: graph.n() });
    }
    let total = 1u64 << graph.e();
    let workers = opts.resolved_workers();
    if workers <= 1 || total < 4096 {
        return Ok(census_range(graph, 0..total));
    }
    let ranges = mask_ranges(0, total, workers * 8);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Parse(format!("thread pool: {e}")))?;
    Ok(pool.install(|| ranges.into_par_iter().map(|r| census_range(graph, r)).reduce(Census::default, Census::merge)))
}

/// `Π_i (q - s + s w^{m_i})`, memoizing the per-size factor.
struct FactorMemo {
    factors: Vec<Option<MultiPoly>>,
}

impl FactorMemo {
    fn new(n: usize) -> Self {
        Self { factors: vec![None; n + 1] }
    }

    fn factor(&mut self, m: usize) -> &MultiPoly {
        self.factors[m].get_or_insert_with(|| MultiPoly::q_tilde() + MultiPoly::monomial([0, 1, 0, m as u32], 1))
    }

    fn product(&mut self, sizes: &[u8]) -> MultiPoly {
        let mut acc = MultiPoly::one();
        let mut i = 0;
        while i < sizes.len() {
            let m = sizes[i];
            let run = sizes[i..].iter().take_while(|&&x| x == m).count();
            acc = &acc * &self.factor(m as usize).pow(run as u32);
            i += run;
        }
        acc
    }
}

fn assemble(graph: &Graph, census: &Census, v_value: Option<i64>) -> MultiPoly {
    let mut memo = FactorMemo::new(graph.n());
    let mut keys: Vec<&Vec<u8>> = census.classes.keys().collect();
    keys.sort();
    let mut total = MultiPoly::zero();
    for key in keys {
        let counts = &census.classes[key];
        let edge_part = match v_value {
            None => MultiPoly::from_terms(
                counts
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(e, &c)| ([0, 0, e as u32, 0], BigInt::from(c))),
            ),
            Some(v) => {
                let mut acc = BigInt::zero();
                let mut pw = BigInt::one();
                for &c in counts {
                    acc += &pw * c;
                    pw *= v;
                }
                MultiPoly::constant(acc)
            }
        };
        if edge_part.is_zero() {
            continue;
        }
        total += &memo.product(key) * &edge_part;
    }
    total
}

/// `Z(G,q,s,v,w) = Σ_{G'} v^{e(G')} Π_i (q - s + s w^{n(G'_i)})`.
pub fn z_subgraph_sum(graph: &Graph) -> Result<MultiPoly> {
    z_subgraph_sum_with(graph, &EngineOptions::default())
}

pub fn z_subgraph_sum_with(graph: &Graph, opts: &EngineOptions) -> Result<MultiPoly> {
    if graph.has_loop() {
        return Err(Error::LoopyGraph);
    }
    let c = census(graph, opts)?;
    Ok(assemble(graph, &c, None))
}

/// `Ph(G,q,s,w) = Z(G,q,s,-1,w)`; zero for graphs with a loop.
pub fn ph(graph: &Graph) -> Result<MultiPoly> {
    ph_with(graph, &EngineOptions::default())
}

pub fn ph_with(graph: &Graph, opts: &EngineOptions) -> Result<MultiPoly> {
    if graph.has_loop() {
        check_cap(graph, opts.edge_cap)?;
        return Ok(MultiPoly::zero());
    }
    // Multiple edges never change Ph, so drop them before enumerating.
    let simple = graph.reduce_multi_edges();
    let c = census(&simple, opts)?;
    Ok(assemble(&simple, &c, Some(-1)))
}

/// Zero-field `Z(G,q,v)`, the `s = 0` value of the subgraph sum.
pub fn z_zero_field(graph: &Graph) -> Result<MultiPoly> {
    Ok(z_subgraph_sum(graph)?.subs_int(Var::S, 0))
}

/// Chromatic polynomial `P(G,q)`.
pub fn chromatic_polynomial(graph: &Graph) -> Result<MultiPoly> {
    Ok(ph(graph)?.subs_int(Var::W, 1))
}

/// Smallest `k` with `P(G,k) != 0`; `None` for graphs with a loop.
pub fn chromatic_number(graph: &Graph) -> Result<Option<usize>> {
    if graph.has_loop() {
        return Ok(None);
    }
    let p = chromatic_polynomial(graph)?;
    Ok((0..=graph.n()).find(|&k| !p.subs_int(Var::Q, k as i64).is_zero()))
}

/// Per-coloring tallies: `table[m][n_s]` colorings with `m` monochromatic
/// edges and `n_s` vertices in the favored set `{1..s}`.
fn coloring_table(graph: &Graph, q: u32, s: u32, proper_only: bool, cap: u128) -> Result<Vec<Vec<u64>>> {
    if s > q {
        return Err(Error::Parse(format!("s = {s} exceeds q = {q}")));
    }
    let n = graph.n();
    let colorings = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if colorings > cap {
        return Err(Error::ColoringCapExceeded { colorings, cap });
    }
    let e = graph.e();
    let rows = if proper_only { 1 } else { e + 1 };
    let empty = vec![vec![0u64; n + 1]; rows];
    if n == 0 {
        let mut t = empty;
        t[0][0] = 1;
        return Ok(t);
    }
    if q == 0 {
        return Ok(empty);
    }
    let edges = graph.edges();
    let tally = |first: u32| {
        let mut table = empty.clone();
        let mut color = vec![0u32; n];
        color[0] = first;
        loop {
            let m = edges.iter().filter(|&&(u, v)| color[u] == color[v]).count();
            if !proper_only || m == 0 {
                let ns = color.iter().filter(|&&c| c < s).count();
                table[if proper_only { 0 } else { m }][ns] += 1;
            }
            // Mixed-radix increment over vertices 1..n.
            let mut i = 1;
            while i < n {
                color[i] += 1;
                if color[i] < q {
                    break;
                }
                color[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
        table
    };
    Ok((0..q).into_par_iter().map(tally).reduce(
        || empty.clone(),
        |mut a, b| {
            for (ra, rb) in a.iter_mut().zip(b) {
                ra.iter_mut().zip(rb).for_each(|(x, y)| *x += y);
            }
            a
        },
    ))
}

/// `Σ_σ y^{m(σ)} w^{n_s(σ)}` over all `q^n` colorings, with `y = 1 + v`.
pub fn oracle_z(graph: &Graph, q: u32, s: u32) -> Result<MultiPoly> {
    oracle_z_capped(graph, q, s, DEFAULT_COLORING_CAP)
}

pub fn oracle_z_capped(graph: &Graph, q: u32, s: u32, cap: u128) -> Result<MultiPoly> {
    let table = coloring_table(graph, q, s, false, cap)?;
    let y = MultiPoly::v() + 1;
    let mut out = MultiPoly::zero();
    let mut y_pow = MultiPoly::one();
    for row in table {
        let w_part = MultiPoly::from_terms(
            row.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| ([0, 0, 0, k as u32], BigInt::from(c))),
        );
        out += &y_pow * &w_part;
        y_pow = &y_pow * &y;
    }
    Ok(out)
}

/// `Σ w^{n_s(σ)}` over proper `q`-colorings.
pub fn oracle_ph(graph: &Graph, q: u32, s: u32) -> Result<MultiPoly> {
    oracle_ph_capped(graph, q, s, DEFAULT_COLORING_CAP)
}

pub fn oracle_ph_capped(graph: &Graph, q: u32, s: u32, cap: u128) -> Result<MultiPoly> {
    let table = coloring_table(graph, q, s, true, cap)?;
    Ok(MultiPoly::from_terms(
        table[0].iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| ([0, 0, 0, k as u32], BigInt::from(c))),
    ))
}

/// Coefficients of `w^j`, `j = 0..=n`; each is a polynomial in `q, s, v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BetaDecomposition {
    pub n: usize,
    pub coefficients: Vec<MultiPoly>,
}

impl BetaDecomposition {
    pub fn beta(&self, j: usize) -> &MultiPoly {
        &self.coefficients[j]
    }

    pub fn reassemble(&self) -> MultiPoly {
        MultiPoly::from_coefficients(Var::W, &self.coefficients)
    }
}

pub fn beta_decompose(p: &MultiPoly, n: usize) -> Result<BetaDecomposition> {
    let found = p.degree(Var::W);
    if found as usize > n {
        return Err(Error::DegreeTooHigh { var: 'w', found, n });
    }
    let mut coefficients = p.coefficients_in(Var::W);
    coefficients.resize(n + 1, MultiPoly::zero());
    Ok(BetaDecomposition { n, coefficients })
}

/// Coefficients of `q^{n-j}`, stored at index `j`; each is a polynomial in
/// `s, v, w`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlphaDecomposition {
    pub n: usize,
    pub coefficients: Vec<MultiPoly>,
}

impl AlphaDecomposition {
    /// `α_k`, the coefficient of `q^k`.
    pub fn alpha(&self, k: usize) -> &MultiPoly {
        &self.coefficients[self.n - k]
    }

    pub fn reassemble(&self) -> MultiPoly {
        let mut rev = self.coefficients.clone();
        rev.reverse();
        MultiPoly::from_coefficients(Var::Q, &rev)
    }

    /// The same coefficients in the `(t, v, w)` basis.
    pub fn rebased(&self) -> Result<Vec<TPoly>> {
        self.coefficients.iter().map(crate::poly::rebase_t).collect()
    }
}

pub fn alpha_decompose(p: &MultiPoly, n: usize) -> Result<AlphaDecomposition> {
    let found = p.degree(Var::Q);
    if found as usize != n || p.is_zero() {
        return Err(Error::DegreeMismatch { expected: n, found });
    }
    let mut coefficients = p.coefficients_in(Var::Q);
    coefficients.reverse();
    Ok(AlphaDecomposition { n, coefficients })
}

/// `T(G,x,y) = Σ c_{ab} x^a y^b`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TuttePoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl TuttePoly {
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: u32, b: u32) -> BigInt {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
    }

    fn add(&mut self, key: (u32, u32), c: BigInt) {
        let slot = self.terms.entry(key).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(a, b), c)| {
                let c: f64 = c.to_string().parse().unwrap_or(f64::NAN);
                c * x.powi(a as i32) * y.powi(b as i32)
            })
            .sum()
    }

    /// `Σ c_{ab} q^k v^{n-k-a} (q+v)^a (1+v)^b`, which is `Z(G,q,v)` with
    /// the substitution `x = 1 + q/v`, `y = 1 + v` carried out exactly.
    pub fn to_zero_field(&self, n: usize, k: usize) -> MultiPoly {
        let qv = MultiPoly::q() + MultiPoly::v();
        let y = MultiPoly::v() + 1;
        let mut out = MultiPoly::zero();
        for (&(a, b), c) in &self.terms {
            let v_exp = (n - k) as u32 - a;
            let mono = MultiPoly::monomial([k as u32, 0, v_exp, 0], c.clone());
            out += mono * qv.pow(a) * y.pow(b);
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<_> =
            self.terms.iter().rev().map(|(&(a, b), c)| serde_json::json!({"e": [a, b], "c": c.to_string()})).collect();
        serde_json::json!({ "terms": terms })
    }
}

impl fmt::Display for TuttePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut p = MultiPoly::zero();
        for (&(a, b), c) in &self.terms {
            p += MultiPoly::monomial([a, b, 0, 0], c.clone());
        }
        let s = p.to_string().replace('q', "x").replace('s', "y");
        f.write_str(&s)
    }
}

fn binomial_row(k: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for i in 0..k {
        let next = row[i as usize].clone() * (k - i) / (i + 1);
        row.push(next);
    }
    row
}

/// `T(G,x,y) = Σ_{G'} (x-1)^{k(G')-k(G)} (y-1)^{c(G')}`.
pub fn tutte(graph: &Graph) -> Result<TuttePoly> {
    tutte_with(graph, &EngineOptions::default())
}

pub fn tutte_with(graph: &Graph, opts: &EngineOptions) -> Result<TuttePoly> {
    let c = census(graph, opts)?;
    let n = graph.n();
    let k_g = graph.component_count();
    let mut tallies: BTreeMap<(u32, u32), u64> = BTreeMap::new();
    for (sizes, counts) in &c.classes {
        let k = sizes.len();
        for (e, &count) in counts.iter().enumerate() {
            if count > 0 {
                let key = ((k - k_g) as u32, (e + k - n) as u32);
                *tallies.entry(key).or_default() += count;
            }
        }
    }
    let mut t = TuttePoly::default();
    for ((a, b), count) in tallies {
        let (ra, rb) = (binomial_row(a), binomial_row(b));
        for i in 0..=a {
            for j in 0..=b {
                let sign = if (a - i + b - j) % 2 == 0 { 1 } else { -1 };
                let c = BigInt::from(count) * &ra[i as usize] * &rb[j as usize] * sign;
                t.add((i, j), c);
            }
        }
    }
    Ok(t)
}

/// Checks `Z(G,q,v) = (x-1)^{k(G)} (y-1)^{n} T(G,x,y)` with denominators
/// cleared.
pub fn tutte_relation_holds(graph: &Graph) -> Result<bool> {
    let t = tutte(graph)?;
    let z = z_zero_field(graph)?;
    Ok(t.to_zero_field(graph.n(), graph.component_count()) == z)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Z,
    Ph,
    Tutte,
}

/// JSON envelope emitted by the command-line front end.
#[derive(Debug, Clone, Serialize)]
pub struct ResultEnvelope {
    pub graph_hash: String,
    pub mode: Mode,
    pub poly: serde_json::Value,
    pub wall_ms: f64,
}

pub fn compute_envelope(graph: &Graph, mode: Mode, opts: &EngineOptions) -> Result<ResultEnvelope> {
    let start = Instant::now();
    let poly = match mode {
        Mode::Z => z_subgraph_sum_with(graph, opts)?.to_json(),
        Mode::Ph => ph_with(graph, opts)?.to_json(),
        Mode::Tutte => tutte_with(graph, opts)?.to_json(),
    };
    Ok(ResultEnvelope { graph_hash: graph.digest(), mode, poly, wall_ms: start.elapsed().as_secs_f64() * 1e3 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_family, FamilyKind};

    fn fam(kind: FamilyKind, n: usize) -> Graph {
        make_family(kind, n).unwrap()
    }

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn line_two() {
        let z = z_subgraph_sum(&fam(FamilyKind::Line, 2)).unwrap();
        assert_eq!(z, p("s(s+v)w^2 + 2s(q-s)w + (q-s)(q-s+v)"));
        assert_eq!(z, p("q^2 + (2t+v)q + t(t + v(w+1))"));
    }

    #[test]
    fn null_graph_is_power() {
        assert_eq!(ph(&fam(FamilyKind::Null, 3)).unwrap(), p("(q+t)^3"));
        assert_eq!(z_subgraph_sum(&Graph::empty(0)).unwrap(), MultiPoly::one());
    }

    #[test]
    fn triangle_at_two_colors() {
        let ph3 = ph(&fam(FamilyKind::Circuit, 3)).unwrap();
        assert_eq!(ph3.subs_int(Var::Q, 2), p("s(s-1)(s-2)(w-1)^3"));
    }

    #[test]
    fn multi_edges_do_not_change_ph() {
        assert_eq!(ph(&fam(FamilyKind::Circuit, 2)).unwrap(), ph(&fam(FamilyKind::Line, 2)).unwrap());
        assert_ne!(
            z_subgraph_sum(&fam(FamilyKind::Circuit, 2)).unwrap(),
            z_subgraph_sum(&fam(FamilyKind::Line, 2)).unwrap()
        );
    }

    #[test]
    fn loops() {
        let c1 = fam(FamilyKind::Circuit, 1);
        assert!(matches!(z_subgraph_sum(&c1), Err(Error::LoopyGraph)));
        assert!(ph(&c1).unwrap().is_zero());
        assert!(oracle_ph(&c1, 3, 1).unwrap().is_zero());
    }

    #[test]
    fn worker_counts_agree() {
        let g = fam(FamilyKind::Complete, 5);
        let one = z_subgraph_sum_with(&g, &EngineOptions::default().with_workers(1)).unwrap();
        let three = z_subgraph_sum_with(&g, &EngineOptions::default().with_workers(3)).unwrap();
        assert_eq!(one, three);
    }

    #[test]
    fn oracle_examples() {
        let k3 = fam(FamilyKind::Complete, 3);
        assert_eq!(oracle_ph(&k3, 3, 1).unwrap(), p("6w"));
        assert_eq!(oracle_ph(&fam(FamilyKind::Circuit, 4), 2, 2).unwrap(), p("2w^4"));
        for s in 0..=2 {
            assert!(oracle_ph(&fam(FamilyKind::Circuit, 3), 2, s).unwrap().is_zero());
        }
        let l2 = fam(FamilyKind::Line, 2);
        let z = z_subgraph_sum(&l2).unwrap();
        let special = z.subs_int(Var::Q, 2).subs_int(Var::S, 1);
        assert_eq!(oracle_z(&l2, 2, 1).unwrap(), special);
        // Fortuin-Kasteleyn at s = 0 and the q = 1 evaluations.
        let c4 = fam(FamilyKind::Circuit, 4);
        let fk = z_zero_field(&c4).unwrap().subs_int(Var::Q, 3);
        assert_eq!(oracle_z(&c4, 3, 0).unwrap(), fk);
        assert_eq!(oracle_z(&c4, 1, 0).unwrap(), p("(v+1)^4"));
        assert_eq!(oracle_z(&c4, 1, 1).unwrap(), p("(v+1)^4 w^4"));
    }

    #[test]
    fn oracle_caps() {
        let g = fam(FamilyKind::Null, 12);
        assert!(matches!(oracle_ph(&g, 4, 1), Err(Error::ColoringCapExceeded { .. })));
    }

    #[test]
    fn beta_examples() {
        let c3 = z_subgraph_sum(&fam(FamilyKind::Circuit, 3)).unwrap();
        let b = beta_decompose(&c3, 3).unwrap();
        assert_eq!(b.beta(2), &p("3s(q-s)(s+v)"));
        assert_eq!(b.reassemble(), c3);
        let c2 = z_subgraph_sum(&fam(FamilyKind::Circuit, 2)).unwrap();
        assert_eq!(beta_decompose(&c2, 2).unwrap().beta(1), &p("2s(q-s)"));
        assert!(matches!(beta_decompose(&c3, 2), Err(Error::DegreeTooHigh { var: 'w', found: 3, n: 2 })));
    }

    #[test]
    fn alpha_examples() {
        let l3 = ph(&fam(FamilyKind::Line, 3)).unwrap();
        let a = alpha_decompose(&l3, 3).unwrap();
        assert_eq!(a.alpha(3), &MultiPoly::one());
        assert_eq!(a.alpha(2), &p("3s(w-1) - 2"));
        let n2 = alpha_decompose(&ph(&fam(FamilyKind::Null, 2)).unwrap(), 2).unwrap();
        assert_eq!((n2.alpha(1), n2.alpha(0)), (&p("2t"), &p("t^2")));
        for n in 2..=5 {
            let z = z_subgraph_sum(&fam(FamilyKind::Line, n)).unwrap();
            let a = alpha_decompose(&z, n).unwrap();
            assert_eq!(a.alpha(n - 1), &(MultiPoly::t().scale(&n.into()) + MultiPoly::v() * (n as i64 - 1)));
            assert_eq!(a.reassemble(), z);
        }
        assert!(matches!(alpha_decompose(&l3, 4), Err(Error::DegreeMismatch { expected: 4, found: 3 })));
    }

    #[test]
    fn tutte_examples() {
        let t = tutte(&fam(FamilyKind::Circuit, 3)).unwrap();
        assert_eq!(t.to_string(), "x^2 + x + y");
        for n in 1..=5 {
            let t = tutte(&fam(FamilyKind::Star, n)).unwrap();
            assert_eq!(
                t.to_string(),
                if n == 1 {
                    "1".to_string()
                } else if n == 2 {
                    "x".into()
                } else {
                    format!("x^{}", n - 1)
                }
            );
        }
        for kind in [FamilyKind::Complete, FamilyKind::Circuit, FamilyKind::Line] {
            assert!(tutte_relation_holds(&fam(kind, 4)).unwrap());
        }
        assert!(tutte_relation_holds(&fam(FamilyKind::Null, 3).disjoint_union(&fam(FamilyKind::C4d, 4))).unwrap());
    }

    #[test]
    fn chromatic_numbers() {
        for (kind, n) in
            [(FamilyKind::Circuit, 5), (FamilyKind::Circuit, 6), (FamilyKind::Complete, 4), (FamilyKind::Star, 5)]
        {
            assert_eq!(chromatic_number(&fam(kind, n)).unwrap(), kind.chromatic_number(n));
        }
    }

    #[test]
    fn envelope_shape() {
        let env = compute_envelope(&fam(FamilyKind::Line, 2), Mode::Ph, &EngineOptions::default()).unwrap();
        let json = serde_json::to_value(&env).unwrap();
        assert_eq!(json["mode"], "ph");
        assert_eq!(json["graph_hash"].as_str().unwrap().len(), 16);
        assert!(json["poly"]["terms"].is_array());
    }
}
