//! Polynomial zeros as ordered node sets.
//!
//! Two independent routes are provided: an Aberth–Ehrlich simultaneous
//! iteration for arbitrary polynomials (complex zeros allowed), and
//! eigenvalues of the symmetric tridiagonal Jacobi matrix for classical
//! Laguerre, Jacobi and Hermite polynomials in their classical parameter
//! ranges.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_complex::Complex64;
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Float, One, Zero};

use crate::check::{CaseOutcome, Residual, Status};
use crate::classical::{generalized_hermite, hermite, jacobi, laguerre, Partition};
use crate::poly::{int, rational_to_f64, CPoly, RatPoly, Rational};

/// Absolute ceiling on the degree handed to the root finder.
pub const HARD_DEGREE_CAP: usize = 30;

/// Relative gap below which a node set counts as numerically degenerate.
pub const SIMPLICITY_THRESHOLD: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RootError {
    #[error("root finding needs degree at least 1")]
    DegreeTooLow,
    #[error("degree {degree} exceeds the root-finding cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("no convergence after {iterations} iterations (worst scaled residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },
    #[error("points are not distinct: minimum gap {gap:e} is below {threshold:e}")]
    NotSimple { gap: f64, threshold: f64 },
    #[error("parameters outside the classical range: {0}")]
    NonClassical(String),
    #[error("tridiagonal eigenvalue iteration did not converge")]
    EigenNonConvergence,
    #[error("permutation does not match the node count")]
    BadPermutation,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub polish_steps: usize,
    pub max_degree: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        Self {
            tol: 1e-13,
            max_iter: 200,
            polish_steps: 3,
            max_degree: HARD_DEGREE_CAP,
        }
    }
}

impl RootOptions {
    pub fn degree_cap(&self) -> usize {
        self.max_degree.min(HARD_DEGREE_CAP)
    }
}

/// Ordered, pairwise-distinct complex points plus a note of where they came from.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSet {
    points: Vec<Complex64>,
    source: String,
    tol: f64,
}

fn canonical_sort(points: &mut [Complex64]) {
    points.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    // real parts that agree to rounding are ordered by imaginary part
    let mut start = 0;
    while start < points.len() {
        let anchor = points[start];
        let eps = 1e-10 * (1.0 + anchor.norm());
        let mut end = start + 1;
        while end < points.len() && points[end].re - anchor.re <= eps {
            end += 1;
        }
        points[start..end].sort_by(|a, b| a.im.total_cmp(&b.im));
        start = end;
    }
}

fn min_pairwise_gap(points: &[Complex64]) -> f64 {
    let mut gap = f64::INFINITY;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            gap = gap.min((points[i] - points[j]).norm());
        }
    }
    gap
}

impl NodeSet {
    /// Sorts into canonical order (ascending real part, then imaginary part)
    /// and checks the points are pairwise separated by more than `10 * tol`.
    pub fn new(
        mut points: Vec<Complex64>,
        source: impl Into<String>,
        tol: f64,
    ) -> Result<Self, RootError> {
        canonical_sort(&mut points);
        Self::from_ordered(points, source, tol)
    }

    /// Keeps the caller's order.
    pub fn from_ordered(
        points: Vec<Complex64>,
        source: impl Into<String>,
        tol: f64,
    ) -> Result<Self, RootError> {
        let gap = min_pairwise_gap(&points);
        if gap <= 10.0 * tol {
            return Err(RootError::NotSimple {
                gap,
                threshold: 10.0 * tol,
            });
        }
        Ok(Self {
            points,
            source: source.into(),
            tol,
        })
    }

    pub fn empty(source: impl Into<String>, tol: f64) -> Self {
        Self {
            points: Vec::new(),
            source: source.into(),
            tol,
        }
    }

    /// Canonically ordered union of several node sets.
    pub fn union(parts: &[NodeSet], source: impl Into<String>) -> Result<Self, RootError> {
        let tol = parts.iter().map(|p| p.tol).fold(0.0, f64::max);
        let points = parts.iter().flat_map(|p| p.points.iter().copied()).collect();
        Self::new(points, source, tol)
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    pub fn min_gap(&self) -> f64 {
        min_pairwise_gap(&self.points)
    }

    pub fn max_modulus(&self) -> f64 {
        self.points.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Refuses sets whose minimum gap is at most `rel * (1 + max|z|)`.
    pub fn require_simple(&self, rel: f64) -> Result<(), RootError> {
        let threshold = rel * (1.0 + self.max_modulus());
        let gap = self.min_gap();
        if gap > threshold {
            Ok(())
        } else {
            Err(RootError::NotSimple { gap, threshold })
        }
    }

    pub fn is_canonical(&self) -> bool {
        let mut sorted = self.points.clone();
        canonical_sort(&mut sorted);
        sorted == self.points
    }

    /// `-z` for every point, re-sorted.
    pub fn negated(&self, source: impl Into<String>) -> Self {
        let mut points: Vec<Complex64> = self.points.iter().map(|z| -z).collect();
        canonical_sort(&mut points);
        Self {
            points,
            source: source.into(),
            tol: self.tol,
        }
    }

    /// Node `perm[i]` moves to position `i`; the result is not re-sorted.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self, RootError> {
        let n = self.points.len();
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(RootError::BadPermutation);
        }
        for &p in perm {
            if p >= n || seen[p] {
                return Err(RootError::BadPermutation);
            }
            seen[p] = true;
        }
        Ok(Self {
            points: perm.iter().map(|&p| self.points[p]).collect(),
            source: self.source.clone(),
            tol: self.tol,
        })
    }

    /// Whether every point is real to within `eps * (1 + |z|)`.
    pub fn all_real(&self, eps: f64) -> bool {
        self.points.iter().all(|z| z.im.abs() <= eps * (1.0 + z.norm()))
    }
}

fn horner_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn scaled_residual(coeffs: &[Complex64], z: Complex64) -> f64 {
    let deg = coeffs.len() - 1;
    let max_c = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let scale = max_c * Float::powi(z.norm().max(1.0), deg as i32);
    horner_with_derivative(coeffs, z).0.norm() / scale
}

/// All zeros of `p`, repeated by multiplicity, in canonical order.
///
/// Zeros at the origin are split off exactly before iterating. The
/// remaining factor is solved by Aberth–Ehrlich iteration started on a
/// circle whose radius is the geometric mean of the root moduli, then each
/// root gets `polish_steps` Newton corrections. Every returned `z` satisfies
/// `|p(z)| <= tol * max|c_i| * max(1,|z|)^deg`.
pub fn all_roots(p: &CPoly, opts: &RootOptions) -> Result<Vec<Complex64>, RootError> {
    let degree = p.degree().ok_or(RootError::DegreeTooLow)?;
    if degree == 0 {
        return Err(RootError::DegreeTooLow);
    }
    if degree > opts.degree_cap() {
        return Err(RootError::DegreeCap {
            degree,
            cap: opts.degree_cap(),
        });
    }
    let full = p.coeffs();
    let zero_roots = full.iter().take_while(|c| c.is_zero()).count();
    let coeffs = &full[zero_roots..];
    let d = coeffs.len() - 1;
    let mut roots = vec![Complex64::zero(); zero_roots];
    let real_coeffs = p.has_real_coeffs();

    if d >= 1 {
        let mut z = initial_guesses(coeffs);
        let mut converged = vec![false; d];
        for _ in 0..opts.max_iter {
            for k in 0..d {
                if converged[k] {
                    continue;
                }
                let (pv, dpv) = horner_with_derivative(coeffs, z[k]);
                if pv.is_zero() {
                    converged[k] = true;
                    continue;
                }
                let ratio = pv / dpv;
                let repulsion: Complex64 = (0..d)
                    .filter(|&j| j != k)
                    .map(|j| (z[k] - z[j]).inv())
                    .sum();
                let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
                if !(step.re.is_finite() && step.im.is_finite()) {
                    // coincident iterates or a critical point; nudge and retry
                    let bump = Complex64::new(1e-3, 1e-3) * (1.0 + z[k].norm());
                    z[k] += bump;
                    continue;
                }
                z[k] -= step;
                if step.norm() <= opts.tol * (1.0 + z[k].norm()) {
                    converged[k] = true;
                }
            }
            if converged.iter().all(|&c| c) {
                break;
            }
        }
        for root in z.iter_mut() {
            *root = polish(coeffs, *root, opts.polish_steps);
        }
        let worst = z
            .iter()
            .map(|&r| scaled_residual(coeffs, r))
            .fold(0.0, f64::max);
        if worst.is_nan() || worst > opts.tol {
            return Err(RootError::NonConvergence {
                iterations: opts.max_iter,
                residual: worst,
            });
        }
        if real_coeffs {
            // simple roots of a real polynomial pair with their conjugates,
            // and of a real even or odd one also with their negated conjugates
            let parity = has_parity(coeffs);
            for r in z.iter_mut() {
                let eps = 10.0 * opts.tol * (1.0 + r.norm());
                if r.im.abs() <= eps {
                    r.im = 0.0;
                }
                if parity && r.re.abs() <= eps {
                    r.re = 0.0;
                }
            }
        }
        roots.extend(z);
    }
    canonical_sort(&mut roots);
    Ok(roots)
}

/// Guarded Newton: a step is kept only if it does not increase `|p|`.
fn polish(coeffs: &[Complex64], mut root: Complex64, steps: usize) -> Complex64 {
    for _ in 0..steps {
        let (pv, dpv) = horner_with_derivative(coeffs, root);
        if dpv.is_zero() || pv.is_zero() {
            break;
        }
        let candidate = root - pv / dpv;
        let (pc, _) = horner_with_derivative(coeffs, candidate);
        if pc.norm() <= pv.norm() {
            root = candidate;
        } else {
            break;
        }
    }
    root
}

/// `p` times the lcm of its denominators.
fn integer_coefficients(p: &RatPoly) -> Vec<BigInt> {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    p.coeffs()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect()
}

/// `x * 2^k` as an integer; `k` must make it exact.
fn fixed_point(x: f64, k: i64) -> BigInt {
    let (m, e, sign) = Float::integer_decode(x);
    let m = BigInt::from(m) * BigInt::from(sign);
    let shift = e as i64 + k;
    debug_assert!(shift >= 0 || m.is_zero());
    if m.is_zero() {
        m
    } else {
        m << (shift as usize)
    }
}

/// `sum c_j a^j q^{d-j}` with `q = 2^k`: the value at `a / 2^k` up to a
/// positive factor that depends only on `k`.
fn homogeneous_value(c: &[BigInt], a: &BigInt, k: usize) -> BigInt {
    let d = c.len() - 1;
    let mut acc = c[d].clone();
    for j in (0..d).rev() {
        acc = acc * a + (&c[j] << (k * (d - j)));
    }
    acc
}

/// Position of `x` in the total order of finite doubles, `-0` and `0` equal.
fn float_index(x: f64) -> i64 {
    let b = x.to_bits() as i64;
    if b < 0 {
        -(b & i64::MAX)
    } else {
        b
    }
}

fn float_at(i: i64) -> f64 {
    if i < 0 {
        -f64::from_bits(i.unsigned_abs())
    } else {
        f64::from_bits(i as u64)
    }
}

/// Smallest `k >= 0` making `v * 2^k` an integer for every `v`.
fn common_scale(values: &[f64]) -> i64 {
    values
        .iter()
        .filter(|v| **v != 0.0)
        .map(|v| -(Float::integer_decode(*v).1 as i64))
        .max()
        .unwrap_or(0)
        .max(0)
}

/// Exact sign of the integer polynomial `c` at a double.
fn sign_at(c: &[BigInt], x: f64) -> Sign {
    let k = common_scale(&[x]);
    homogeneous_value(c, &fixed_point(x, k), k as usize).sign()
}

/// Exact sign of `c` halfway between two doubles.
fn sign_at_midpoint(c: &[BigInt], a: f64, b: f64) -> Sign {
    let k = common_scale(&[a, b]);
    let sum = fixed_point(a, k) + fixed_point(b, k);
    homogeneous_value(c, &sum, k as usize + 1).sign()
}

/// The correctly rounded real zero of `p` nearest `x`.
///
/// Searches outward from `x` in steps that double from one ulp until the
/// exact sign of `p` changes, bisects down to adjacent doubles, then picks
/// the one on the zero's side of their midpoint. Returns `x` unchanged when
/// no sign change is found among finite doubles.
pub fn round_real_root(p: &RatPoly, x: f64) -> f64 {
    if !x.is_finite() || p.degree().unwrap_or(0) == 0 {
        return x;
    }
    let c = integer_coefficients(p);
    let s0 = sign_at(&c, x);
    if s0 == Sign::NoSign {
        return x;
    }
    // gallop in value, not in ulps: near the origin ulps span decades
    let mut delta = (x.next_up() - x).abs();
    let mut bracket = None;
    while delta.is_finite() && bracket.is_none() {
        for probe in [x - delta, x + delta] {
            let probe = probe.clamp(-f64::MAX, f64::MAX);
            let s = sign_at(&c, probe);
            if s == Sign::NoSign {
                return probe;
            }
            if s != s0 {
                bracket = Some((float_index(x), float_index(probe)));
                break;
            }
        }
        delta *= 2.0;
    }
    let Some((mut inside, mut outside)) = bracket else {
        return x;
    };
    while (outside - inside).abs() > 1 {
        let mid = inside + (outside - inside) / 2;
        let s = sign_at(&c, float_at(mid));
        if s == Sign::NoSign {
            return float_at(mid);
        }
        if s == s0 {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    let (a, b) = (float_at(inside), float_at(outside));
    let m = sign_at_midpoint(&c, a, b);
    if m == Sign::NoSign {
        // tie: the even significand
        if Float::integer_decode(a).0 % 2 == 0 {
            a
        } else {
            b
        }
    } else if m == s0 {
        b
    } else {
        a
    }
}

/// Whether only even or only odd powers appear.
fn has_parity(coeffs: &[Complex64]) -> bool {
    let even = coeffs.iter().skip(1).step_by(2).all(|c| c.is_zero());
    let odd = coeffs.iter().step_by(2).all(|c| c.is_zero());
    even || odd
}

fn initial_guesses(coeffs: &[Complex64]) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    let ratio = (coeffs[0] / coeffs[d]).norm();
    let radius = Float::powf(ratio, 1.0 / d as f64);
    let radius = if radius.is_finite() && radius > 0.0 {
        radius
    } else {
        1.0
    };
    (0..d)
        .map(|k| {
            let theta = 2.0 * core::f64::consts::PI * k as f64 / d as f64 + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect()
}

/// Zeros of `p` as a node set; fails when two zeros coincide.
pub fn zeros(p: &CPoly, opts: &RootOptions, source: impl Into<String>) -> Result<NodeSet, RootError> {
    let roots = all_roots(p, opts)?;
    NodeSet::from_ordered(roots, source, opts.tol)
}

/// Zeros of an exact polynomial after promotion to complex doubles.
pub fn zeros_exact(
    p: &RatPoly,
    opts: &RootOptions,
    source: impl Into<String>,
) -> Result<NodeSet, RootError> {
    let mut roots = all_roots(&p.to_complex(), opts)?;
    for z in roots.iter_mut().filter(|z| z.im == 0.0) {
        z.re = round_real_root(p, z.re);
    }
    NodeSet::new(roots, source, opts.tol)
}

/// Classical family whose Jacobi matrix is known in closed form.
#[derive(Debug, Clone, PartialEq)]
pub enum ClassicalFamily {
    Laguerre(Rational),
    Jacobi(Rational, Rational),
    Hermite,
}

impl ClassicalFamily {
    pub fn polynomial(&self, n: u32) -> RatPoly {
        match self {
            ClassicalFamily::Laguerre(a) => laguerre(n, a),
            ClassicalFamily::Jacobi(a, b) => jacobi(n, a, b),
            ClassicalFamily::Hermite => hermite(n),
        }
    }

    /// Whether the parameters lie in the classical range (`α > -1`, `β > -1`).
    pub fn is_classical(&self) -> bool {
        let minus_one = int(-1);
        match self {
            ClassicalFamily::Laguerre(a) => *a > minus_one,
            ClassicalFamily::Jacobi(a, b) => *a > minus_one && *b > minus_one,
            ClassicalFamily::Hermite => true,
        }
    }

    pub fn describe(&self, n: u32) -> String {
        match self {
            ClassicalFamily::Laguerre(a) => format!("L_{n}^({a})"),
            ClassicalFamily::Jacobi(a, b) => format!("P_{n}^({a},{b})"),
            ClassicalFamily::Hermite => format!("H_{n}"),
        }
    }

    /// Diagonal and off-diagonal of the orthonormal Jacobi matrix of order `n`.
    fn jacobi_matrix(&self, n: usize) -> (Vec<f64>, Vec<f64>) {
        match self {
            ClassicalFamily::Laguerre(a) => {
                let a = rational_to_f64(a);
                let diag = (0..n).map(|k| 2.0 * k as f64 + a + 1.0).collect();
                let off = (1..n)
                    .map(|k| Float::sqrt(k as f64 * (k as f64 + a)))
                    .collect();
                (diag, off)
            }
            ClassicalFamily::Hermite => {
                let off = (1..n).map(|k| Float::sqrt(k as f64 / 2.0)).collect();
                (vec![0.0; n], off)
            }
            ClassicalFamily::Jacobi(a, b) => {
                let (a, b) = (rational_to_f64(a), rational_to_f64(b));
                let s = a + b;
                let diag = (0..n)
                    .map(|k| {
                        if k == 0 {
                            (b - a) / (s + 2.0)
                        } else {
                            let t = 2.0 * k as f64 + s;
                            (b * b - a * a) / (t * (t + 2.0))
                        }
                    })
                    .collect();
                let off = (1..n)
                    .map(|k| {
                        let kf = k as f64;
                        let t = 2.0 * kf + s;
                        let sq = if k == 1 {
                            4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + s) * (2.0 + s) * (3.0 + s))
                        } else {
                            4.0 * kf * (kf + a) * (kf + b) * (kf + s)
                                / (t * t * (t + 1.0) * (t - 1.0))
                        };
                        Float::sqrt(sq)
                    })
                    .collect();
                (diag, off)
            }
        }
    }
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit QL with
/// Wilkinson-type shifts; `off[i]` couples rows `i` and `i + 1`.
pub fn tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Result<Vec<f64>, RootError> {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = vec![0.0; n];
    e[..off.len()].copy_from_slice(off);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = Float::abs(d[m]) + Float::abs(d[m + 1]);
                if Float::abs(e[m]) <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(RootError::EigenNonConvergence);
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = Float::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + Float::copysign(r, g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = Float::hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Real zeros of a classical-range polynomial via its Jacobi matrix.
pub fn classical_zeros(family: &ClassicalFamily, n: u32) -> Result<NodeSet, RootError> {
    if !family.is_classical() {
        return Err(RootError::NonClassical(family.describe(n)));
    }
    let source = family.describe(n);
    if n == 0 {
        return Ok(NodeSet::empty(source, RootOptions::default().tol));
    }
    let (diag, off) = family.jacobi_matrix(n as usize);
    let eig = tridiagonal_eigenvalues(&diag, &off)?;
    let p = family.polynomial(n);
    let points = eig
        .into_iter()
        .map(|x| Complex64::new(round_real_root(&p, x), 0.0))
        .collect();
    NodeSet::new(points, source, RootOptions::default().tol)
}

/// Zeros of one factor of a determinantal node set: the tridiagonal path
/// when the parameters are classical, the general solver otherwise.
pub fn family_zeros(
    family: &ClassicalFamily,
    n: u32,
    opts: &RootOptions,
) -> Result<NodeSet, RootError> {
    if n == 0 {
        return Ok(NodeSet::empty(family.describe(0), opts.tol));
    }
    if n as usize > opts.degree_cap() {
        return Err(RootError::DegreeCap {
            degree: n as usize,
            cap: opts.degree_cap(),
        });
    }
    if family.is_classical() {
        classical_zeros(family, n)
    } else {
        zeros_exact(&family.polynomial(n), opts, family.describe(n))
    }
}

fn real_in_interval(z: Complex64, lo: f64, hi: f64, eps: f64) -> bool {
    Float::abs(z.im) <= eps * (1.0 + z.norm()) && z.re > lo && z.re < hi
}

/// Relative tolerance for calling a computed zero real.
const REAL_EPS: f64 = 1e-8;

fn classical_zero_case(
    spec: &str,
    check: &str,
    family: &ClassicalFamily,
    n: u32,
    interval: (f64, f64),
    opts: &RootOptions,
) -> CaseOutcome {
    let run = || -> Result<f64, RootError> {
        let fast = classical_zeros(family, n)?;
        let general = zeros_exact(&family.polynomial(n), opts, family.describe(n))?;
        fast.require_simple(SIMPLICITY_THRESHOLD)?;
        let inside = fast
            .points()
            .iter()
            .chain(general.points())
            .all(|&z| real_in_interval(z, interval.0, interval.1, REAL_EPS));
        if !inside || fast.len() != general.len() {
            return Ok(f64::INFINITY);
        }
        Ok(fast
            .points()
            .iter()
            .zip(general.points())
            .map(|(a, b)| (a - b).norm() / (1.0 + a.norm()))
            .fold(0.0, f64::max))
    };
    match run() {
        Ok(diff) => CaseOutcome::within(spec, check, diff, 1e-10),
        Err(e) => CaseOutcome::new(spec, check)
            .with_status(Status::Fail)
            .with_detail(format!("{e}")),
    }
}

fn simple_case(spec: &str, check: &str, p: &RatPoly, opts: &RootOptions) -> CaseOutcome {
    match zeros_exact(p, opts, "") {
        Ok(nodes) => {
            let threshold = SIMPLICITY_THRESHOLD * (1.0 + nodes.max_modulus());
            let mut out = CaseOutcome::new(spec, check);
            out.residual = Residual::Float(nodes.min_gap());
            out.tolerance = Some(threshold);
            out.with_status(if nodes.min_gap() > threshold {
                Status::Pass
            } else {
                Status::Fail
            })
            .with_detail("value is the minimum pairwise gap; must exceed the tolerance")
        }
        Err(e) => CaseOutcome::new(spec, check)
            .with_status(Status::Fail)
            .with_detail(format!("{e}")),
    }
}

fn exclusion_case(
    spec: &str,
    check: &str,
    p: &RatPoly,
    interval: (f64, f64),
    opts: &RootOptions,
) -> CaseOutcome {
    match p.degree() {
        None => {
            return CaseOutcome::new(spec, check)
                .with_status(Status::Fail)
                .with_detail("zero polynomial")
        }
        Some(0) => return CaseOutcome::new(spec, check).with_detail("nonzero constant, no zeros"),
        Some(_) => {}
    }
    match all_roots(&p.to_complex(), opts) {
        Ok(roots) => {
            let hits = roots
                .iter()
                .filter(|&&z| real_in_interval(z, interval.0, interval.1, REAL_EPS))
                .count();
            let mut out = CaseOutcome::new(spec, check)
                .with_status(if hits == 0 { Status::Pass } else { Status::Fail })
                .with_detail(format!("{hits} zeros inside the excluded interval"));
            out.residual = Residual::Float(hits as f64);
            out
        }
        Err(e) => CaseOutcome::new(spec, check)
            .with_status(Status::Fail)
            .with_detail(format!("{e}")),
    }
}

fn skipped(spec: &str, check: &str, why: &str) -> CaseOutcome {
    CaseOutcome::new(spec, check)
        .with_status(Status::Skipped)
        .with_detail(String::from(why))
}

fn in_open(x: &Rational, lo: i64, hi: Option<i64>) -> bool {
    *x > int(lo) && hi.is_none_or(|h| *x < int(h))
}

fn hits_negative_integers(x: &Rational, from: i64, to: i64) -> bool {
    x.is_integer() && *x <= int(-from) && *x >= int(-to)
}

/// Zero-location claims for the classical Laguerre and Jacobi families at
/// one `(m, α, β)`; a claim whose hypothesis fails is reported as skipped.
pub fn check_zero_theorems(
    m: u32,
    alpha: &Rational,
    beta: &Rational,
    opts: &RootOptions,
) -> Vec<CaseOutcome> {
    let spec = format!("m={m},alpha={alpha},beta={beta}");
    let mut out = Vec::new();
    let mi = m as i64;
    let one = int(1);
    let neg_a1 = -(alpha + &one);

    // Laguerre, classical range
    out.push(if *alpha > int(-1) {
        classical_zero_case(
            &spec,
            "laguerre-zeros-real-positive-simple",
            &ClassicalFamily::Laguerre(alpha.clone()),
            m,
            (0.0, f64::INFINITY),
            opts,
        )
    } else {
        skipped(&spec, "laguerre-zeros-real-positive-simple", "needs alpha > -1")
    });
    let reflected = laguerre(m, &neg_a1);
    if *alpha > int(mi - 1) {
        out.push(simple_case(&spec, "laguerre-reflected-zeros-simple", &reflected, opts));
        out.push(exclusion_case(
            &spec,
            "laguerre-reflected-no-positive-zeros",
            &reflected,
            (0.0, f64::INFINITY),
            opts,
        ));
    } else {
        out.push(skipped(&spec, "laguerre-reflected-zeros-simple", "needs alpha > m-1"));
        out.push(skipped(
            &spec,
            "laguerre-reflected-no-positive-zeros",
            "needs alpha > m-1",
        ));
    }

    // Jacobi, classical range
    out.push(if *alpha > int(-1) && *beta > int(-1) {
        classical_zero_case(
            &spec,
            "jacobi-zeros-real-interior-simple",
            &ClassicalFamily::Jacobi(alpha.clone(), beta.clone()),
            m,
            (-1.0, 1.0),
            opts,
        )
    } else {
        skipped(&spec, "jacobi-zeros-real-interior-simple", "needs alpha, beta > -1")
    });

    // P_m^{(-α-1, β-1)}
    let a2 = neg_a1.clone();
    let b2 = beta - &one;
    let jp = jacobi(m, &a2, &b2);
    let simple_hyp = !hits_negative_integers(&a2, 1, mi)
        && !hits_negative_integers(&b2, 1, mi)
        && !hits_negative_integers(&(&a2 + &b2), 1 + mi, 2 * mi);
    out.push(if !simple_hyp {
        skipped(
            &spec,
            "jacobi-reflected-zeros-simple",
            "parameters hit the excluded negative integers",
        )
    } else if m == 0 || jp.degree() != Some(m as usize) {
        skipped(&spec, "jacobi-reflected-zeros-simple", "degree drops below m")
    } else {
        simple_case(&spec, "jacobi-reflected-zeros-simple", &jp, opts)
    });
    let shifted = alpha + &one - int(mi);
    let both_small = in_open(beta, -1, Some(0)) && in_open(&shifted, -1, Some(0));
    let both_positive = in_open(beta, 0, None) && in_open(&shifted, 0, None);
    out.push(if (both_small || both_positive) && m > 0 {
        exclusion_case(
            &spec,
            "jacobi-reflected-no-interior-zeros",
            &jp,
            (-1.0, 1.0),
            opts,
        )
    } else {
        skipped(
            &spec,
            "jacobi-reflected-no-interior-zeros",
            "needs beta and alpha+1-m both in (-1,0) or both positive",
        )
    });
    out
}

/// An even partition's generalized Hermite polynomial has no real zeros.
pub fn check_even_partition_no_real_zeros(lambda: &Partition, opts: &RootOptions) -> CaseOutcome {
    let spec = format!("lambda={lambda}");
    let check = "even-partition-no-real-zeros";
    if !lambda.is_even() {
        return skipped(&spec, check, "partition is not even");
    }
    match all_roots(&generalized_hermite(lambda).to_complex(), opts) {
        Ok(roots) => {
            let min_im = roots.iter().map(|z| Float::abs(z.im)).fold(f64::INFINITY, f64::min);
            let mut out = CaseOutcome::new(spec, check).with_status(if min_im > REAL_EPS {
                Status::Pass
            } else {
                Status::Fail
            });
            out.residual = Residual::Float(min_im);
            out.tolerance = Some(REAL_EPS);
            out.with_detail("value is the smallest |Im z|; must exceed the tolerance")
        }
        Err(e) => CaseOutcome::new(spec, check)
            .with_status(Status::Fail)
            .with_detail(format!("{e}")),
    }
}

/// Smallest gap between distinct nonzero zeros of `H_λ`.
///
/// Numeric probe only: simplicity of these zeros is conjectured, not known.
pub fn nonzero_zero_min_gap(lambda: &Partition, opts: &RootOptions) -> Result<f64, RootError> {
    let roots = all_roots(&generalized_hermite(lambda).to_complex(), opts)?;
    let nonzero: Vec<Complex64> = roots.into_iter().filter(|z| !z.is_zero()).collect();
    Ok(min_pairwise_gap(&nonzero))
}

/// Total order used for canonical node sets, exposed for tests.
pub fn canonical_cmp(a: &Complex64, b: &Complex64) -> Ordering {
    let eps = 1e-10 * (1.0 + a.norm().max(b.norm()));
    if Float::abs(a.re - b.re) <= eps {
        a.im.total_cmp(&b.im)
    } else {
        a.re.total_cmp(&b.re)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, Poly};
    use core::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ip(coeffs: &[i64]) -> RatPoly {
        Poly::new(coeffs.iter().map(|&v| int(v)).collect())
    }

    fn close(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol)
    }

    #[test]
    fn zeros_of_quadratic() {
        let nodes = zeros_exact(&ip(&[2, -4, 1]), &RootOptions::default(), "q").unwrap();
        assert!(close(nodes.points(), &[c(2.0 - SQRT_2, 0.0), c(2.0 + SQRT_2, 0.0)], 1e-12));
    }

    #[test]
    fn zeros_of_hermite_three() {
        let nodes = zeros_exact(&hermite(3), &RootOptions::default(), "H3").unwrap();
        let r = Float::sqrt(1.5);
        assert!(close(nodes.points(), &[c(-r, 0.0), c(0.0, 0.0), c(r, 0.0)], 1e-12));
    }

    #[test]
    fn zeros_of_hermite_one_one_are_imaginary() {
        let nodes = zeros_exact(&ip(&[4, 0, 8]), &RootOptions::default(), "H11").unwrap();
        assert!(close(
            nodes.points(),
            &[c(0.0, -FRAC_1_SQRT_2), c(0.0, FRAC_1_SQRT_2)],
            1e-13
        ));
    }

    #[test]
    fn degree_limits() {
        let opts = RootOptions::default();
        assert_eq!(all_roots(&ip(&[3]).to_complex(), &opts), Err(RootError::DegreeTooLow));
        let big = Poly::monomial(int(1), 31) - RatPoly::one();
        assert!(matches!(
            all_roots(&big.to_complex(), &opts),
            Err(RootError::DegreeCap { degree: 31, cap: 30 })
        ));
        let capped = RootOptions { max_degree: 99, ..opts };
        assert_eq!(capped.degree_cap(), HARD_DEGREE_CAP);
    }

    #[test]
    fn roots_at_origin_are_split_exactly() {
        // x^3 (x - 1)
        let roots = all_roots(&ip(&[0, 0, 0, -1, 1]).to_complex(), &RootOptions::default()).unwrap();
        assert_eq!(&roots[..3], &[c(0.0, 0.0); 3]);
        assert!((roots[3] - c(1.0, 0.0)).norm() < 1e-14);
        assert!(zeros_exact(&ip(&[0, 0, 1]), &RootOptions::default(), "").is_err());
    }

    #[test]
    fn classical_zero_examples() {
        let l = classical_zeros(&ClassicalFamily::Laguerre(int(0)), 1).unwrap();
        assert!(close(l.points(), &[c(1.0, 0.0)], 1e-14));
        let p = classical_zeros(&ClassicalFamily::Jacobi(int(0), int(0)), 2).unwrap();
        let r = 1.0 / Float::sqrt(3.0);
        assert!(close(p.points(), &[c(-r, 0.0), c(r, 0.0)], 1e-14));
        let h = classical_zeros(&ClassicalFamily::Hermite, 2).unwrap();
        assert!(close(h.points(), &[c(-FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)], 1e-15));
        assert!(matches!(
            classical_zeros(&ClassicalFamily::Laguerre(int(-2)), 3),
            Err(RootError::NonClassical(_))
        ));
    }

    #[test]
    fn jacobi_matrix_handles_alpha_plus_beta_minus_one() {
        // Chebyshev-like parameters (-1/2, -1/2): zeros cos((2k-1)π/2n)
        let fam = ClassicalFamily::Jacobi(rat(-1, 2), rat(-1, 2));
        let nodes = classical_zeros(&fam, 5).unwrap();
        for (k, z) in nodes.points().iter().rev().enumerate() {
            let expect = Float::cos((2 * k + 1) as f64 * core::f64::consts::PI / 10.0);
            assert!((z.re - expect).abs() < 1e-13);
        }
    }

    #[test]
    fn classical_and_general_solvers_agree() {
        let opts = RootOptions::default();
        for alpha in [int(0), rat(1, 2), int(1)] {
            let fam = ClassicalFamily::Laguerre(alpha.clone());
            for n in 1..=15 {
                let fast = classical_zeros(&fam, n).unwrap();
                let general = zeros_exact(&laguerre(n, &alpha), &opts, "").unwrap();
                for (a, b) in fast.points().iter().zip(general.points()) {
                    assert!((a - b).norm() <= 1e-10 * (1.0 + a.norm()), "n={n} {a} {b}");
                }
            }
        }
        for n in 1..=20 {
            let fast = classical_zeros(&ClassicalFamily::Hermite, n).unwrap();
            let general = zeros_exact(&hermite(n), &opts, "").unwrap();
            assert!(close(fast.points(), general.points(), 1e-10), "n={n}");
        }
    }

    #[test]
    fn newton_step_is_a_fixed_point_after_polishing() {
        let opts = RootOptions::default();
        let p = laguerre(10, &rat(1, 2)).to_complex();
        for z in all_roots(&p, &opts).unwrap() {
            let (pv, dpv) = horner_with_derivative(p.coeffs(), z);
            assert!((pv / dpv).norm() < opts.tol * (1.0 + z.norm()));
        }
    }

    #[test]
    fn node_set_ordering_and_validation() {
        let pts = vec![c(1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(-2.0, 0.0)];
        let set = NodeSet::new(pts, "t", 1e-13).unwrap();
        assert_eq!(set.points(), &[c(-2.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(1.0, 0.0)]);
        assert!(set.is_canonical());
        assert!(NodeSet::new(vec![c(1.0, 0.0), c(1.0, 0.0)], "dup", 1e-13).is_err());
        let perm = set.permuted(&[3, 2, 1, 0]).unwrap();
        assert!(!perm.is_canonical());
        assert!(set.permuted(&[0, 0, 1, 2]).is_err());
        assert!(set.permuted(&[0, 1]).is_err());
        let neg = set.negated("n");
        assert_eq!(neg.points()[0], c(-1.0, 0.0));
        let tight = NodeSet::new(vec![c(0.0, 0.0), c(1e-10, 0.0)], "t", 1e-13).unwrap();
        assert!(tight.require_simple(SIMPLICITY_THRESHOLD).is_err());
    }

    #[test]
    fn zero_theorem_examples() {
        let opts = RootOptions::default();
        // m=1, α=2: L_1^{(-3)} = -x - 2
        assert_eq!(laguerre(1, &int(-3)), ip(&[-2, -1]));
        let out = check_zero_theorems(1, &int(2), &rat(1, 2), &opts);
        assert!(out.iter().all(|o| o.status != Status::Fail), "{out:?}");
        let out = check_zero_theorems(2, &int(3), &int(1), &opts);
        assert!(out.iter().all(|o| o.status != Status::Fail), "{out:?}");
        let out = check_zero_theorems(1, &rat(3, 2), &rat(1, 2), &opts);
        let excl = out
            .iter()
            .find(|o| o.check == "jacobi-reflected-no-interior-zeros")
            .unwrap();
        assert_eq!(excl.status, Status::Pass);
        // hypothesis α > m-1 fails for m=3, α=1
        let out = check_zero_theorems(3, &int(1), &int(1), &opts);
        let skipped = out
            .iter()
            .find(|o| o.check == "laguerre-reflected-no-positive-zeros")
            .unwrap();
        assert_eq!(skipped.status, Status::Skipped);
    }

    #[test]
    fn degree_drop_makes_exclusion_vacuous() {
        // α = β = 1: P_1^{(-2,0)} is the constant -1
        let out = check_zero_theorems(1, &int(1), &int(1), &RootOptions::default());
        let find = |c: &str| out.iter().find(|o| o.check == c).unwrap().status;
        assert_eq!(find("jacobi-reflected-no-interior-zeros"), Status::Pass);
        assert_eq!(find("jacobi-reflected-zeros-simple"), Status::Skipped);
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn real_zeros_are_correctly_rounded() {
        let h2 = hermite(2);
        for start in [0.7071067811865475, 0.7071067811865476, 0.70710678118655] {
            assert_eq!(round_real_root(&h2, start), 0.7071067811865476);
        }
        // 2 - sqrt(2), 2 + sqrt(2)
        let l2 = laguerre(2, &int(0));
        assert_eq!(round_real_root(&l2, 0.5857864376269), 0.585786437626905);
        assert_eq!(round_real_root(&l2, 3.4142135623731), 3.414213562373095);
        let nodes = classical_zeros(&ClassicalFamily::Hermite, 2).unwrap();
        assert_eq!(nodes.points()[0].re, -0.7071067811865476);
        // far from an exact zero in ulps
        assert_eq!(round_real_root(&hermite(5), -1.7751842482455465e-17), 0.0);
        let h5 = classical_zeros(&ClassicalFamily::Hermite, 5).unwrap();
        assert_eq!(h5.points()[2].re, 0.0);
    }

    #[test]
    fn classical_zeros_respect_the_degree_cap() {
        let opts = RootOptions {
            max_degree: 3,
            ..RootOptions::default()
        };
        assert!(matches!(
            family_zeros(&ClassicalFamily::Hermite, 5, &opts),
            Err(RootError::DegreeCap { degree: 5, cap: 3 })
        ));
    }

    #[test]
    fn even_partitions_have_no_real_zeros() {
        let opts = RootOptions::default();
        for w in 1..=8 {
            for p in Partition::all_of_weight(w) {
                let out = check_even_partition_no_real_zeros(&p, &opts);
                if p.is_even() {
                    assert_eq!(out.status, Status::Pass, "{p}: {out:?}");
                } else {
                    assert_eq!(out.status, Status::Skipped);
                }
            }
        }
    }

    #[test]
    fn simplicity_probe_runs() {
        let opts = RootOptions::default();
        let p = Partition::new(vec![2, 1]).unwrap();
        assert!(nonzero_zero_min_gap(&p, &opts).unwrap() > 0.0);
    }
}
