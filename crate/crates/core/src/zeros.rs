//! Complex zeros of univariate slices of `Z` and `Ph`, plus the closed-form
//! zero loci of the one- and two-vertex graphs.
//!
//! Bindings are converted to exact rationals before specializing, so a
//! vanishing leading coefficient is detected exactly and reported as a degree
//! drop. The exact specialization is split into square-free factors (Yun);
//! Aberth iteration runs on each factor, which keeps repeated roots accurate.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{MultiPoly, Var};

pub const DEFAULT_TOLERANCE: f64 = 1e-12;
pub const MAX_ITERATIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Root {
    pub re: f64,
    pub im: f64,
    pub residual: f64,
}

impl Root {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ZeroSlice {
    pub variable: Var,
    pub fixed: Vec<(Var, f64)>,
    pub roots: Vec<Root>,
    pub leading_coeff_magnitude: f64,
    /// Degree of the unspecialized polynomial in `variable`.
    pub generic_degree: u32,
    pub degree: usize,
    /// Roots lost to infinity because leading coefficients vanish here.
    pub degree_drop: usize,
    pub iterations: usize,
}

impl ZeroSlice {
    pub fn values(&self) -> Vec<Complex64> {
        self.roots.iter().map(Root::value).collect()
    }

    pub fn max_residual(&self) -> f64 {
        self.roots.iter().map(|r| r.residual).fold(0.0, f64::max)
    }
}

fn to_rational(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::Parse(format!("non-finite binding {x}")))
}

/// Exact coefficients (ascending) of `p` in `var` with the other variables
/// bound. Variables that `p` does not involve need no binding.
pub fn specialize(p: &MultiPoly, var: Var, fixed: &[(Var, f64)]) -> Result<Vec<BigRational>> {
    let mut point: [BigRational; 4] = Default::default();
    for v in Var::ALL {
        if v == var {
            point[v.index()] = BigRational::one();
            continue;
        }
        match fixed.iter().find(|(b, _)| *b == v) {
            Some((_, x)) => point[v.index()] = to_rational(*x)?,
            None if p.involves(v) => return Err(Error::MissingBinding(v.symbol())),
            None => {}
        }
    }
    let mut coeffs: Vec<BigRational> = p.coefficients_in(var).iter().map(|c| c.eval_exact(&point)).collect();
    trim(&mut coeffs);
    Ok(coeffs)
}

pub fn zeros(p: &MultiPoly, var: Var, fixed: &[(Var, f64)], tolerance: f64) -> Result<ZeroSlice> {
    let exact = specialize(p, var, fixed)?;
    if exact.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let generic_degree = p.degree(var);
    let degree = exact.len() - 1;
    let f64_coeffs: Vec<f64> = exact.iter().map(rat_f64).collect();
    let mut values = Vec::with_capacity(degree);
    let mut iterations = 0;
    for (factor, multiplicity) in square_free(&exact) {
        let c: Vec<Complex64> = factor.iter().map(|x| Complex64::new(rat_f64(x), 0.0)).collect();
        let (found, its) = aberth(&c, tolerance)?;
        iterations = iterations.max(its);
        for z in found {
            values.extend(std::iter::repeat_n(z, multiplicity));
        }
    }
    values.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    // `+ 0.0` folds -0.0 into 0.0 so serialized roots are stable.
    let roots = values
        .iter()
        .map(|&z| Root { re: z.re + 0.0, im: z.im + 0.0, residual: horner(&to_complex(&f64_coeffs), z).norm() })
        .collect();
    let mut fixed: Vec<(Var, f64)> = fixed.iter().copied().filter(|(v, _)| *v != var).collect();
    fixed.sort_by_key(|(v, _)| v.index());
    Ok(ZeroSlice {
        variable: var,
        fixed,
        roots,
        leading_coeff_magnitude: f64_coeffs.last().map_or(0.0, |c| c.abs()),
        generic_degree,
        degree,
        degree_drop: generic_degree as usize - degree,
        iterations,
    })
}

/// Residual of `root` relative to `Σ |c_i| |root|^i`, the natural size of the
/// terms being cancelled.
pub fn relative_residual(p: &MultiPoly, var: Var, fixed: &[(Var, f64)], root: Complex64) -> Result<f64> {
    let c: Vec<f64> = specialize(p, var, fixed)?.iter().map(rat_f64).collect();
    let scale: f64 = c.iter().rev().fold(0.0, |acc, ci| acc * root.norm() + ci.abs());
    Ok(horner(&to_complex(&c), root).norm() / scale.max(f64::MIN_POSITIVE))
}

fn rat_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn to_complex(c: &[f64]) -> Vec<Complex64> {
    c.iter().map(|&x| Complex64::new(x, 0.0)).collect()
}

fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::zero(), |acc, &ci| acc * z + ci)
}

fn horner_with_derivative(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &ci in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + ci;
    }
    (p, dp)
}

/// Aberth–Ehrlich simultaneous iteration from a perturbed circle, followed by
/// a few Newton polishing steps per root.
fn aberth(c: &[Complex64], tol: f64) -> Result<(Vec<Complex64>, usize)> {
    let n = c.len() - 1;
    if n == 0 {
        return Ok((Vec::new(), 0));
    }
    let lead = c[n];
    let monic: Vec<Complex64> = c.iter().map(|x| x / lead).collect();
    if n == 1 {
        return Ok((vec![-monic[0]], 0));
    }
    // Fujiwara bound on root moduli.
    let radius = (0..n)
        .map(|i| {
            let k = (n - i) as f64;
            let a = monic[i].norm() / if i == 0 { 2.0 } else { 1.0 };
            a.powf(1.0 / k)
        })
        .fold(0.0, f64::max)
        * 2.0;
    let radius = if radius > 0.0 { radius } else { 1.0 };
    let mut z: Vec<Complex64> =
        (0..n).map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / n as f64 + 0.4)).collect();
    let mut done = vec![false; n];
    for it in 1..=MAX_ITERATIONS {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (p, dp) = horner_with_derivative(&monic, z[k]);
            if p.norm() == 0.0 {
                done[k] = true;
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (Complex64::one() - ratio * repulsion);
            z[k] -= step;
            let rel = step.norm() / z[k].norm().max(1.0);
            if rel <= tol {
                done[k] = true;
            }
            max_step = max_step.max(rel);
        }
        if done.iter().all(|&d| d) || max_step <= tol {
            for zk in z.iter_mut() {
                for _ in 0..3 {
                    let (p, dp) = horner_with_derivative(&monic, *zk);
                    if dp.norm() == 0.0 || p.norm() == 0.0 {
                        break;
                    }
                    let next = *zk - p / dp;
                    if !next.re.is_finite() || !next.im.is_finite() || horner(&monic, next).norm() >= p.norm() {
                        break;
                    }
                    *zk = next;
                }
            }
            return Ok((z, it));
        }
    }
    Err(Error::NoConvergence { iterations: MAX_ITERATIONS })
}

fn trim(c: &mut Vec<BigRational>) {
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
}

fn derivative(c: &[BigRational]) -> Vec<BigRational> {
    c.iter().enumerate().skip(1).map(|(i, x)| x * BigRational::from_integer(BigInt::from(i))).collect()
}

/// `(quotient, remainder)` of `a / b`, `b` nonzero.
fn divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    let lead = &b[db];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let f = r.last().unwrap() / lead;
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] -= &f * bi;
        }
        q[shift] = f;
        r.pop();
        trim(&mut r);
    }
    (q, r)
}

fn monic(mut c: Vec<BigRational>) -> Vec<BigRational> {
    if let Some(lead) = c.last().cloned() {
        for x in c.iter_mut() {
            *x /= &lead;
        }
    }
    c
}

fn gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = divmod(&x, &y);
        x = y;
        y = r;
    }
    monic(x)
}

/// Yun's algorithm: square-free factors with their multiplicities.
fn square_free(p: &[BigRational]) -> Vec<(Vec<BigRational>, usize)> {
    let mut out = Vec::new();
    let dp = derivative(p);
    if dp.is_empty() {
        return out;
    }
    let a0 = gcd(p, &dp);
    let mut b = divmod(p, &a0).0;
    let mut c = divmod(&dp, &a0).0;
    let mut d: Vec<BigRational> = sub(&c, &derivative(&b));
    let mut i = 1;
    while b.len() > 1 {
        let a = gcd(&b, &d);
        if a.len() > 1 {
            out.push((a.clone(), i));
        }
        b = divmod(&b, &a).0;
        c = divmod(&d, &a).0;
        d = sub(&c, &derivative(&b));
        i += 1;
    }
    out
}

fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out: Vec<BigRational> =
        (0..n).map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default()).collect();
    trim(&mut out);
    out
}

/// Greedy nearest-neighbor matching of two root multisets. Returns the worst
/// relative mismatch, or infinity when the sizes differ.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for &x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, &y)| (j, (x - y).norm() / x.norm().max(1.0)))
            .min_by(|l, r| l.1.total_cmp(&r.1))
            .expect("sizes match");
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}

/// Point at which closed-form roots are evaluated; the solved-for variable is
/// ignored.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Point {
    pub q: f64,
    pub s: f64,
    pub v: f64,
    pub w: f64,
}

impl Point {
    pub fn new(q: f64, s: f64, v: f64, w: f64) -> Self {
        Self { q, s, v, w }
    }

    pub fn bindings(&self, except: Var) -> Vec<(Var, f64)> {
        [(Var::Q, self.q), (Var::S, self.s), (Var::V, self.v), (Var::W, self.w)]
            .into_iter()
            .filter(|(v, _)| *v != except)
            .collect()
    }
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn nonzero(d: f64) -> Result<f64> {
    if d == 0.0 {
        Err(Error::DegenerateDenominator)
    } else {
        Ok(d)
    }
}

/// The single zero of `Z(L_1) = q + s(w-1)` in `var` (`v` does not occur).
pub fn l1_zero(var: Var, at: Point) -> Result<f64> {
    let Point { q, s, w, .. } = at;
    match var {
        Var::Q => Ok(s * (1.0 - w)),
        Var::S => Ok(q / nonzero(1.0 - w)?),
        Var::W => Ok(1.0 - q / nonzero(s)?),
        Var::V => Err(Error::Unsupported("Z(L_1) does not depend on v".into())),
    }
}

/// Which asymptotic mechanism the point is close to, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum L2Regime {
    /// `w → 1`: both `s`-roots diverge like `1/(w-1)`.
    SRootsDivergeAsWToOne,
    /// `s → 0`: both `w`-roots diverge like `1/√s`.
    WRootsDivergeAsSToZero,
    /// `s → -v`: one `w`-root stays bounded, the other diverges like `1/(s+v)`.
    WRootSplitsAsSToMinusV,
    /// `q + s(w²-1) → 0`: the `v`-root diverges.
    VRootDiverges,
}

#[derive(Debug, Clone, Serialize)]
pub struct L2Roots {
    pub variable: Var,
    pub roots: Vec<Complex64Ser>,
    pub regime: Option<L2Regime>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Complex64Ser {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Complex64Ser {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl L2Roots {
    pub fn values(&self) -> Vec<Complex64> {
        self.roots.iter().map(|r| Complex64::new(r.re, r.im)).collect()
    }
}

const REGIME_WINDOW: f64 = 1e-3;

/// Closed-form zeros of `Z(L_2) = (q+t)^2 + v[q + t(w+1)]` in `var`. Two roots
/// for `q`, `s`, `w` (ordered `+`, `-` in the square root, principal branch);
/// one root for `v`.
pub fn l2_zero_formulas(var: Var, at: Point) -> Result<L2Roots> {
    let Point { q, s, v, w } = at;
    let sqrt = |x: f64| c(x).sqrt();
    let (roots, regime) = match var {
        Var::Q => {
            let base = c(-v + 2.0 * s * (1.0 - w));
            let r = sqrt(v * (v - 4.0 * s * w * (w - 1.0)));
            (vec![(base + r) / 2.0, (base - r) / 2.0], None)
        }
        Var::S => {
            let den = nonzero(2.0 * (w - 1.0))?;
            let base = c(-(2.0 * q + v * (w + 1.0)));
            let r = sqrt(v * (v * (w + 1.0).powi(2) + 4.0 * q * w));
            let regime = ((w - 1.0).abs() < REGIME_WINDOW).then_some(L2Regime::SRootsDivergeAsWToOne);
            (vec![(base + r) / den, (base - r) / den], regime)
        }
        Var::W => {
            let den = nonzero(s * (s + v))?;
            let base = c(s * (s - q));
            let r = sqrt(s * (s - q) * v * (q + v));
            let regime = if s.abs() < REGIME_WINDOW {
                Some(L2Regime::WRootsDivergeAsSToZero)
            } else if (s + v).abs() < REGIME_WINDOW {
                Some(L2Regime::WRootSplitsAsSToMinusV)
            } else {
                None
            };
            (vec![(base + r) / den, (base - r) / den], regime)
        }
        Var::V => {
            let den = q + s * (w - 1.0) * (w + 1.0);
            let regime = (den.abs() < REGIME_WINDOW).then_some(L2Regime::VRootDiverges);
            let den = nonzero(den)?;
            (vec![c(-(q + s * (w - 1.0)).powi(2) / den)], regime)
        }
    };
    Ok(L2Roots { variable: var, roots: roots.into_iter().map(Into::into).collect(), regime })
}

/// Finite limits that the divergent `L_2` roots approach once the divergence
/// is scaled out.
#[derive(Debug, Clone, Serialize)]
pub struct L2DivergenceLimits {
    /// `lim (w-1) s_j = -(q+v) ± √(v(q+v))`.
    pub s_times_w_minus_one: [Complex64Ser; 2],
    /// `lim √s w_j = ± √(-q(q+v)/v)`.
    pub w_times_sqrt_s: [Complex64Ser; 2],
    /// Bounded `w`-root as `s → -v`: `(q+2v)/(2v)`.
    pub w_bounded_at_s_minus_v: f64,
    /// `lim (s+v) w = -2(q+v)` for the divergent one.
    pub w_times_s_plus_v: f64,
}

pub fn l2_divergence_limits(q: f64, v: f64) -> Result<L2DivergenceLimits> {
    let v = nonzero(v)?;
    let r = c(v * (q + v)).sqrt();
    let a = c(-(q + v));
    let ws = c(-q * (q + v) / v).sqrt();
    Ok(L2DivergenceLimits {
        s_times_w_minus_one: [(a + r).into(), (a - r).into()],
        w_times_sqrt_s: [ws.into(), (-ws).into()],
        w_bounded_at_s_minus_v: (q + 2.0 * v) / (2.0 * v),
        w_times_s_plus_v: -2.0 * (q + v),
    })
}

/// `s` at which the `v`-root of `Z(L_2)` diverges: `q / (1 - w²)`. `None` at
/// `w = ±1`.
pub fn l2_v_divergence_s(q: f64, w: f64) -> Option<f64> {
    let d = 1.0 - w * w;
    (d != 0.0).then(|| q / d)
}

#[derive(Debug, Clone, Serialize)]
pub struct ShiftReport {
    pub s: i64,
    pub roots_w0: Vec<Root>,
    pub roots_w1: Vec<Root>,
    pub max_mismatch: f64,
    pub holds: bool,
}

/// The `q`-roots of `Ph` at `w = 0` are those at `w = 1` moved right by `s`.
pub fn root_shift_check(ph: &MultiPoly, s: i64, tolerance: f64) -> Result<ShiftReport> {
    let at = |w: f64| zeros(ph, Var::Q, &[(Var::S, s as f64), (Var::W, w)], DEFAULT_TOLERANCE);
    let w0 = at(0.0)?;
    let w1 = at(1.0)?;
    let shifted: Vec<Complex64> = w1.values().iter().map(|z| z + s as f64).collect();
    let max_mismatch = multiset_distance(&w0.values(), &shifted);
    Ok(ShiftReport { s, roots_w0: w0.roots, roots_w1: w1.roots, max_mismatch, holds: max_mismatch <= tolerance })
}

#[derive(Debug, Clone, Serialize)]
pub struct InversionReport {
    pub s: i64,
    pub nonzero_roots: Vec<Root>,
    pub max_mismatch: f64,
    pub holds: bool,
}

/// At `q = 2s` the nonzero `w`-roots of `Ph` form a set closed under `w → 1/w`.
pub fn inversion_check(ph: &MultiPoly, s: i64, tolerance: f64) -> Result<InversionReport> {
    let slice = zeros(ph, Var::W, &[(Var::Q, 2.0 * s as f64), (Var::S, s as f64)], DEFAULT_TOLERANCE)?;
    let nonzero_roots: Vec<Root> = slice.roots.into_iter().filter(|r| r.value().norm() > 1e-9).collect();
    let values: Vec<Complex64> = nonzero_roots.iter().map(Root::value).collect();
    let inverted: Vec<Complex64> = values.iter().map(|z| z.inv()).collect();
    let max_mismatch = multiset_distance(&values, &inverted);
    Ok(InversionReport { s, nonzero_roots, max_mismatch, holds: max_mismatch <= tolerance })
}
