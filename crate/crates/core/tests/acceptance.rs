//! Acceptance run: one PASS/FAIL line per criterion. Exits nonzero on any
//! FAIL; BLOCKED (the environment cannot measure the criterion) does not fail.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use wspoly::asymptotics::{coalescence_points, noncommutativity_demo, phi_series_checks, qc_circuit, QcKind};
use wspoly::engine::{oracle_ph, oracle_z, ph, z_subgraph_sum, z_subgraph_sum_with, EngineOptions};
use wspoly::families::{self, transmigration_check};
use wspoly::identities::{bounds_suite, default_fixtures, run_suite, sign_alternation, Suite};
use wspoly::strips::{self, Role};
use wspoly::zeros::{self, l1_zero, l2_zero_formulas, multiset_distance, Point, DEFAULT_TOLERANCE};
use wspoly::{make_family, Error, FamilyKind, Graph, MultiPoly, Var};

enum Status {
    Pass(String),
    Fail(String),
    Blocked(String),
}

fn p(s: &str) -> MultiPoly {
    s.parse().unwrap_or_else(|e| panic!("fixture `{s}`: {e}"))
}

fn fam(kind: FamilyKind, n: usize) -> Graph {
    make_family(kind, n).expect("family")
}

fn zero_field_tree(x: &str, n: u32) -> MultiPoly {
    p(&format!("({x})(({x})+v)^{}", n - 1))
}

fn zero_field_circuit(x: &str, n: u32) -> MultiPoly {
    p(&format!("(({x})+v)^{n} + (({x})-1)v^{n}"))
}

fn golden() -> Status {
    let mut failures = Vec::new();
    let mut slowest = Duration::ZERO;
    let mut check = |name: &str, computed: MultiPoly, closed: MultiPoly, expected: &MultiPoly, took: Duration| {
        slowest = slowest.max(took);
        if &computed != expected {
            failures.push(format!("{name}: subgraph sum differs by {}", computed - expected.clone()));
        } else if &closed != expected {
            failures.push(format!("{name}: closed form differs"));
        }
        if took > Duration::from_secs(1) {
            failures.push(format!("{name}: {took:?}"));
        }
    };
    let timed = |g: &Graph| {
        let t = Instant::now();
        let z = z_subgraph_sum(g).expect("sum");
        (z, t.elapsed())
    };

    let mut errata = Vec::new();
    let mut other: Vec<String> = Vec::new();
    let l2 = p("s(s+v)w^2 + 2s(q-s)w + (q-s)(q-s+v)");
    let l2t = p("q^2 + (2t+v)q + t(t+v(w+1))");
    let l3 = p("s(s+v)^2w^3 + s(q-s)(3s+2v)w^2 + s(q-s)(3(q-s)+2v)w + (q-s)(q-s+v)^2");
    let l3t = p("q^3+(3t+2v)q^2+(3t^2+2vtw+4vt+v^2)q + t(v^2w^2+2vtw+wv^2+t^2+2vt+v^2)");
    let l4 = p("s(s+v)^3w^4 + 2s(q-s)(s+v)(2s+v)w^3 + s(q-s)(-3(s^2+(q-s)^2)+3q(q+v)+2v^2)w^2 + 2s(q-s)(q-s+v)(2(q-s)+v)w + (q-s)(q-s+v)^3");
    let s4_inner = p("s(q-s)(4s^2+6sv+3v^2)w^3 + 3s(q-s)(2s(q-s)+qv)w^2 + s(q-s)(4(q-s)^2+6(q-s)v+3v^2)w")
        + zero_field_tree("q-s", 4);
    let s4_reference = zero_field_tree("q", 4) * p("w^4") + s4_inner.clone();
    let s4 = zero_field_tree("s", 4) * p("w^4") + s4_inner;
    let c2 = zero_field_circuit("s", 2) * p("w^2") + p("2s(q-s)w") + zero_field_circuit("q-s", 2);
    let c2t = p("q^2+(2t+v(v+2))q+t(t+v(v+2)(w+1))");
    let c3 =
        zero_field_circuit("s", 3) * p("w^3") + p("3s(q-s)(s+v)w^2 + 3s(q-s)(q-s+v)w") + zero_field_circuit("q-s", 3);
    let c4_outer = zero_field_circuit("s", 4) * p("w^4") + p("4s(q-s)(s+v)^2w^3") + zero_field_circuit("q-s", 4);
    let c4_reference = c4_outer.clone() + p("2s(q-s)(3(q^2-s^2-(q-s)^2)+4qv+4v^2)w^2 + 4q(q-s)(q-s+v)^2w");
    let c4 = c4_outer + p("s(q-s)(3(q^2-s^2-(q-s)^2)+4qv+4v^2)w^2 + 4s(q-s)(q-s+v)^2w");

    for (name, expected, alt) in [("L2", &l2, Some(&l2t)), ("L3", &l3, Some(&l3t)), ("L4", &l4, None)] {
        let n = name[1..].parse().unwrap();
        let (z, took) = timed(&fam(FamilyKind::Line, n));
        check(name, z, families::z_line(n).unwrap(), expected, took);
        if alt.is_some_and(|a| a != expected) {
            other.push(format!("{name}: q/t form disagrees with w form"));
        }
    }
    let (z, took) = timed(&fam(FamilyKind::Star, 4));
    check("S4", z, families::z_star(4).unwrap(), &s4, took);
    for (n, expected) in [(2, &c2), (3, &c3), (4, &c4)] {
        let (z, took) = timed(&fam(FamilyKind::Circuit, n));
        check(&format!("C{n}"), z, families::z_circuit(n).unwrap(), expected, took);
    }
    if c2 != c2t {
        other.push("C2: q/t form disagrees with w form".into());
    }
    if s4_reference - s4.clone() == (zero_field_tree("q", 4) - zero_field_tree("s", 4)) * p("w^4") {
        errata.push("S4 reference w^4 coefficient (Z(T4,q,v)→Z(T4,s,v))");
    } else {
        other.push("S4 reference form differs unexpectedly".into());
    }
    let c4_gap = c4_reference - c4;
    if c4_gap == p("s(q-s)(6s(q-s)+4qv+4v^2)w^2 + 4(q-s)^2(q-s+v)^2w") {
        errata.push("C4 reference w^2 and w^1 prefactors (2s(q-s)→s(q-s), 4q→4s)");
    } else {
        other.push(format!("C4 reference form differs unexpectedly: {c4_gap}"));
    }
    // Complete graphs: β_ℓ = C(n,ℓ)(s)_ℓ(q-s)_{n-ℓ} with empty falling
    // factorials equal to 1.
    for n in 1..=5usize {
        let t = Instant::now();
        let computed = ph(&fam(FamilyKind::Complete, n)).unwrap();
        let took = t.elapsed();
        let mut expected = MultiPoly::zero();
        for l in 0..=n {
            let mut term = p(&format!("{}w^{l}", binom(n, l)));
            for j in 0..l {
                term = term * p(&format!("s-{j}"));
            }
            for m in 0..n - l {
                term = term * p(&format!("q-s-{m}"));
            }
            expected += term;
        }
        check(&format!("K{n}"), computed, families::ph_complete(n).unwrap(), &expected, took);
    }
    failures.extend(other);
    if failures.is_empty() {
        Status::Pass(format!("L2-4, S4, C2-4 and K1-5 exact, slowest {slowest:.2?}; errata: {}", errata.join("; ")))
    } else {
        Status::Fail(failures.join("; "))
    }
}

fn binom(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

fn oracle_equivalence() -> Status {
    let start = Instant::now();
    let mut graphs: Vec<(String, Graph)> = Vec::new();
    for n in 1..=6 {
        for kind in [FamilyKind::Null, FamilyKind::Line, FamilyKind::Star, FamilyKind::Circuit] {
            graphs.push((format!("{kind}{n}"), fam(kind, n)));
        }
    }
    for (kind, n) in [(FamilyKind::Complete, 3), (FamilyKind::Complete, 4), (FamilyKind::C4d, 4)] {
        graphs.push((format!("{kind}{n}"), fam(kind, n)));
    }
    let mut checks = 0;
    let mut failures = Vec::new();
    for (name, g) in &graphs {
        let z = (!g.has_loop()).then(|| z_subgraph_sum(g).unwrap());
        let phg = ph(g).unwrap();
        for q in 0..=4u32 {
            for s in 0..=q {
                let spec = |poly: &MultiPoly| poly.subs_int(Var::Q, q as i64).subs_int(Var::S, s as i64);
                if let Some(z) = &z {
                    checks += 1;
                    if oracle_z(g, q, s).unwrap() != spec(z) {
                        failures.push(format!("Z {name} q={q} s={s}"));
                    }
                }
                checks += 1;
                if oracle_ph(g, q, s).unwrap() != spec(&phg) {
                    failures.push(format!("Ph {name} q={q} s={s}"));
                }
            }
        }
    }
    let took = start.elapsed();
    if failures.is_empty() && took < Duration::from_secs(60) {
        Status::Pass(format!("{checks} exact comparisons over {} graphs in {took:.2?}", graphs.len()))
    } else {
        Status::Fail(format!("{} mismatches, {took:.2?}: {}", failures.len(), failures.join(", ")))
    }
}

fn identity_suite() -> Status {
    let mut entries = 0;
    let mut failures = Vec::new();
    for suite in [Suite::Core, Suite::Dcr, Suite::Kit, Suite::Cycles] {
        match run_suite(suite, &[], 1) {
            Ok(led) => {
                entries += led.entries.len();
                failures.extend(
                    led.failures()
                        .map(|e| format!("{} {}: {}", e.graph, e.identity, e.detail.clone().unwrap_or_default())),
                );
            }
            Err(e) => failures.push(format!("{suite:?}: {e}")),
        }
    }
    if failures.is_empty() {
        Status::Pass(format!("{entries} ledger entries, all exact"))
    } else {
        Status::Fail(failures.join("; "))
    }
}

fn strip_structure() -> Status {
    let tables = strips::build_counts(6).unwrap();
    let mut failures = Vec::new();
    for (role, ly, d, expected) in strips::reference_entries() {
        if tables[ly - 1].n(role, d) != p(expected) {
            failures.push(format!("{role:?} entry ({ly},{d})"));
        }
    }
    for ly in 1..=6 {
        if let Err(e) = strips::verify_sum_identities(&tables[ly - 1]) {
            failures.push(e.to_string());
        }
        if let Err(e) = strips::verify_relation_and_totals(&tables, ly) {
            failures.push(e.to_string());
        }
    }
    let (role, ly, uncorrected) = strips::MISPRINTED_TOTAL;
    let gap = tables[ly - 1].total(role) - p(uncorrected);
    if gap != p("-11s^2") || role != Role::Ph {
        failures.push(format!("uncorrected N_Ph(6) differs unexpectedly: {gap}"));
    }
    if failures.is_empty() {
        Status::Pass(format!(
            "{} reference entries, sum identities, relation and totals for L_y<=6; errata: reference N_Ph(6) s^2 coefficient 366→355",
            strips::reference_entries().len()
        ))
    } else {
        Status::Fail(failures.join("; "))
    }
}

fn sign_alternation_check() -> Status {
    let mut samples = 0;
    let mut violations = 0;
    let mut unimodal = 0;
    for (name, g) in default_fixtures() {
        if g.has_loop() {
            continue;
        }
        // α vanishes identically beyond q^{k(G)} at s = 0; the statement is
        // for connected graphs there.
        let s_min = if g.is_connected() { 0 } else { 1 };
        let s_values: Vec<i64> = (s_min..=g.n() as i64).collect();
        let report = sign_alternation(&g, &s_values, 20, 7).unwrap();
        samples += report.samples;
        violations += report.sign_violations.len();
        unimodal += report.unimodality_violations.len();
        if !report.sign_violations.is_empty() {
            eprintln!("{name}: {:?}", report.sign_violations);
        }
    }
    let line = format!("{samples} (graph, s, w) samples, {violations} sign violations; unimodality violations observed: {unimodal} (reported only)");
    if violations == 0 {
        Status::Pass(line)
    } else {
        Status::Fail(line)
    }
}

fn zeros_check() -> Status {
    let mut failures = Vec::new();
    let qs = [0.7, 1.5, 2.0, 3.0, 4.5];
    let ss = [0.5, 1.0, 2.0, 3.0, 4.0];
    let vs = [-0.9, -0.6, 0.4, 1.3, 2.5];
    let ws = [0.0, 0.3, 0.7, 1.6, 2.5];
    let z1 = z_subgraph_sum(&fam(FamilyKind::Line, 1)).unwrap();
    let z2 = z_subgraph_sum(&fam(FamilyKind::Line, 2)).unwrap();
    let mut errors: Vec<String> = Vec::new();
    let mut worst: f64 = 0.0;
    let mut compared = 0;
    let mut compare = |label: String, formula: Vec<Complex64>, numeric: Vec<Complex64>| {
        let d = multiset_distance(&formula, &numeric);
        compared += 1;
        worst = worst.max(d);
        if d > 1e-9 {
            failures.push(format!("{label}: {formula:?} vs {numeric:?}"));
        }
    };
    let numeric = |z: &MultiPoly, var: Var, at: Point| zeros::zeros(z, var, &at.bindings(var), DEFAULT_TOLERANCE);
    // A closed form may only decline (degenerate denominator) where the
    // slice itself has no roots to compare: identically zero or constant.
    let mut vacuous = 0;
    let mut settle = |label: String, formula: Result<Vec<Complex64>, Error>, z: &MultiPoly, var: Var, at: Point| match (
        formula,
        numeric(z, var, at),
    ) {
        (Ok(f), Ok(n)) => compare(label, f, n.values()),
        (Err(Error::DegenerateDenominator), Err(Error::ZeroPolynomial)) => vacuous += 1,
        (Err(Error::DegenerateDenominator), Ok(n)) if n.roots.is_empty() => vacuous += 1,
        (f, n) => errors.push(format!("{label}: formula {f:?}, numeric {:?}", n.map(|n| n.values()))),
    };
    // One-vertex forms depend on two parameters; the third grid axis is v.
    for &a in &qs {
        for &b in &ss {
            for &c in &ws {
                for &v in &vs {
                    let at = Point::new(a, b, v, c);
                    for var in [Var::Q, Var::S, Var::W] {
                        let f = l1_zero(var, at).map(|r| vec![Complex64::new(r, 0.0)]);
                        settle(format!("L1 {var} at {at:?}"), f, &z1, var, at);
                    }
                    for var in Var::ALL {
                        settle(
                            format!("L2 {var} at {at:?}"),
                            l2_zero_formulas(var, at).map(|r| r.values()),
                            &z2,
                            var,
                            at,
                        );
                    }
                }
            }
        }
    }
    failures.extend(errors);
    let mut shifts = 0;
    for (name, g) in default_fixtures() {
        let phg = ph(&g).unwrap();
        if phg.is_zero() {
            continue;
        }
        for s in 0..=3 {
            let r = zeros::root_shift_check(&phg, s, 1e-9).unwrap();
            shifts += 1;
            if !r.holds {
                failures.push(format!("shift {name} s={s}: {}", r.max_mismatch));
            }
        }
    }
    let mut inversions = 0;
    for (kind, n) in [(FamilyKind::Line, 2), (FamilyKind::Circuit, 3)] {
        let phg = ph(&fam(kind, n)).unwrap();
        let lowest = (kind.chromatic_number(n).unwrap() as i64 + 1) / 2;
        for s in lowest..=4 {
            let r = zeros::inversion_check(&phg, s, 1e-9).unwrap();
            inversions += 1;
            if !r.holds {
                failures.push(format!("inversion {kind}{n} s={s}: {}", r.max_mismatch));
            }
        }
    }
    if failures.is_empty() {
        Status::Pass(format!(
            "{compared} closed-form slices (worst relative {worst:.1e}; {vacuous} slices without roots), {shifts} root shifts, {inversions} inversion sets"
        ))
    } else {
        Status::Fail(failures.into_iter().take(5).collect::<Vec<_>>().join("; "))
    }
}

fn asymptotics_check() -> Status {
    let mut failures = Vec::new();
    let mut series = 0;
    for (q, s, w) in [(5.0, 2.0, 0.5), (5.0, 3.0, 2.0), (7.0, 4.0, 0.8)] {
        for c in phi_series_checks(q, s, w) {
            series += 1;
            if !c.holds {
                failures.push(format!("series {} at ({q},{s},{w}): ratios {:?}", c.name, c.ratios));
            }
            if c.note.as_ref().is_some_and(|n| !n.ends_with("match")) {
                failures.push(format!("large-w constant at ({q},{s},{w}): {}", c.note.clone().unwrap()));
            }
        }
    }
    let mut qc = 0;
    let mut arcs = 0;
    for s in [1u32, 2, 4, 6] {
        for w in [0.2, 0.5, 0.9] {
            let r = qc_circuit(s, w);
            qc += 1;
            let in_wcond = s > 2 && w > 1.0 / (s as f64 - 1.0) && w < 1.0;
            if (s <= 2 || in_wcond) && r.kind == QcKind::Unspecified {
                failures.push(format!("q_c s={s} w={w}: closed form expected"));
            }
            if (r.qc - r.scan_qc).abs() > 1e-6 {
                failures.push(format!("q_c s={s} w={w}: {} vs scan {}", r.qc, r.scan_qc));
            }
            if let Some(ends) = r.arc_endpoints {
                arcs += 1;
                let expected: Vec<Complex64> = ends.iter().map(|&(re, im)| Complex64::new(re, im)).collect();
                let found = coalescence_points(s as f64, w).unwrap();
                if multiset_distance(&found, &expected) > 1e-6 {
                    failures.push(format!("arc ends s={s} w={w}: {found:?}"));
                }
            }
        }
    }
    for n in 2..=8 {
        if !transmigration_check(n).unwrap().holds {
            failures.push(format!("transmigration n={n}"));
        }
    }
    let n_list: Vec<usize> = (1..=30).collect();
    let demo = noncommutativity_demo(&n_list, 3.0, 1.0, -1.0, 2.0);
    if !(demo.candidate_sets_differ && demo.vw_term.s_first == 0.0 && demo.vw_term.n_first == 2.0) {
        failures.push("noncommutativity demo shows no difference".into());
    }
    if failures.is_empty() {
        Status::Pass(format!(
            "{series} series checks, {qc} q_c points ({arcs} arcs), transmigration n<=8, (s-1)(vw)^n limit {} vs {}",
            demo.vw_term.s_first, demo.vw_term.n_first
        ))
    } else {
        Status::Fail(failures.join("; "))
    }
}

fn bounds_check() -> Status {
    let led = bounds_suite().unwrap();
    let failures: Vec<String> = led.failures().map(|e| format!("{} {}: {:?}", e.graph, e.identity, e.detail)).collect();
    if failures.is_empty() {
        let details: Vec<String> = led.entries.iter().map(|e| format!("{} {}", e.graph, e.identity)).collect();
        Status::Pass(details.join("; "))
    } else {
        Status::Fail(failures.join("; "))
    }
}

/// A 12-vertex graph with exactly 20 edges: the 3×4 grid (17 edges) plus
/// three diagonals.
fn twenty_edge_graph() -> Graph {
    let id = |r: usize, c: usize| r * 4 + c;
    let mut edges = Vec::new();
    for r in 0..3 {
        for c in 0..4 {
            if c + 1 < 4 {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < 3 {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    edges.extend([(id(0, 0), id(1, 1)), (id(1, 2), id(2, 3)), (id(0, 3), id(1, 2))]);
    Graph::new(12, edges).unwrap()
}

fn performance() -> Status {
    let g = twenty_edge_graph();
    assert_eq!(g.e(), 20);
    let run = |workers: usize| {
        let t = Instant::now();
        let z = z_subgraph_sum_with(&g, &EngineOptions::default().with_workers(workers)).unwrap();
        (z, t.elapsed())
    };
    let (z1, t1) = run(1);
    let cores = std::thread::available_parallelism().map_or(1, |n| n.get());
    if t1 > Duration::from_secs(10) {
        return Status::Fail(format!("single-worker run took {t1:.2?}"));
    }
    if cores < 4 {
        return Status::Blocked(format!(
            "environment: {cores} cores; 20-edge sum in {t1:.2?} with 1 worker, speedup not measurable"
        ));
    }
    let (z4, t4) = run(4);
    let speedup = t1.as_secs_f64() / t4.as_secs_f64();
    if z1 != z4 {
        Status::Fail("worker counts disagree".into())
    } else if speedup >= 2.0 {
        Status::Pass(format!("{t1:.2?} at 1 worker, {t4:.2?} at 4 ({speedup:.2}×)"))
    } else {
        Status::Fail(format!("speedup {speedup:.2}× at 4 workers ({t1:.2?} vs {t4:.2?})"))
    }
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Status);
    let criteria: [Criterion; 9] = [
        ("golden fixtures", golden),
        ("oracle equivalence", oracle_equivalence),
        ("identity suite", identity_suite),
        ("strip combinatorics", strip_structure),
        ("sign alternation", sign_alternation_check),
        ("zeros", zeros_check),
        ("asymptotics", asymptotics_check),
        ("bipartite bounds", bounds_check),
        ("performance", performance),
    ];
    let mut failed = false;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Status::Pass(detail) => println!("criterion {} ({name}): PASS - {detail}", i + 1),
            Status::Fail(detail) => {
                failed = true;
                println!("criterion {} ({name}): FAIL - {detail}", i + 1);
            }
            Status::Blocked(detail) => println!("criterion {} ({name}): BLOCKED ({detail})", i + 1),
        }
    }
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
