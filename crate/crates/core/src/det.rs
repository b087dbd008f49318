//! Zero-based determinantal formulas for the exceptional families.
//!
//! Each formula is a `k x k` determinant whose first `k-1` rows are
//! `[1, z, z^2, …]` at the zeros of two classical polynomials and whose last
//! row holds polynomials in `x`. Expanding along the last row gives the
//! result as a polynomial directly; the numeric minors are either read off
//! the node polynomial `∏(t - z_i)` (minor with column `j` deleted equals
//! the Vandermonde product times an elementary symmetric function) or
//! computed by LU factorisation.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_traits::{Float, One, Zero};

use crate::check::{CaseOutcome, Status};
use crate::classical::{
    exp_partial_sum, factorial, gen_binomial, hermite, pochhammer, r_partial_sum,
};
use crate::poly::{int, rational_to_f64, CPoly, Poly, RatPoly, Rational};
use crate::rootfind::{family_zeros, ClassicalFamily, NodeSet, RootError, RootOptions};
use crate::xop::{evaluate as exact_xop, lag3_constant, Family, XopError, XopSpec};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DetError {
    #[error(transparent)]
    Spec(#[from] XopError),
    #[error("node computation failed: {0}")]
    Nodes(#[from] RootError),
    #[error("last row has {row} entries but {nodes} nodes need {expected}")]
    SizeMismatch {
        nodes: usize,
        row: usize,
        expected: usize,
    },
    #[error("no determinantal formula for {0}")]
    NotCovered(String),
    #[error("ill-conditioned node set: {0}")]
    Conditioning(String),
    #[error("non-finite value in the determinant")]
    NonFinite,
}

impl DetError {
    /// Guard refusals as opposed to genuine failures.
    pub fn is_refusal(&self) -> bool {
        matches!(
            self,
            DetError::Conditioning(_) | DetError::Nodes(RootError::NotSimple { .. })
        )
    }
}

/// How the numeric minors of the node rows are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MinorStrategy {
    /// Coefficients of `∏(t - z_i)`; each minor is `V` times one of them.
    #[default]
    NodePolynomial,
    /// LU with partial pivoting on every minor.
    Lu,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DetOptions {
    pub strategy: MinorStrategy,
    pub roots: RootOptions,
    /// Refuse when the minimum node gap is at most this times `1 + max|z|`.
    pub min_gap_rel: f64,
    /// Refuse when LU and the product formula disagree on the Vandermonde
    /// determinant by more than this relative amount.
    pub consistency_rel: f64,
    /// Multiplies the constant factor of one family; a negative control for
    /// the verification suites, never set in normal use.
    pub corrupt_factor: Option<(Family, Rational)>,
}

impl Default for DetOptions {
    fn default() -> Self {
        Self {
            strategy: MinorStrategy::NodePolynomial,
            roots: RootOptions::default(),
            min_gap_rel: crate::rootfind::SIMPLICITY_THRESHOLD,
            consistency_rel: 1e-6,
            corrupt_factor: None,
        }
    }
}

/// The ingredients of one determinantal formula:
/// `result = (factor / V) * [x *] det(M) + additive_constant`.
#[derive(Debug, Clone, PartialEq)]
pub struct DetAssembly {
    pub family: Family,
    pub nodes: NodeSet,
    pub last_row: Vec<RatPoly>,
    pub factor: Rational,
    pub times_x: bool,
    pub additive_constant: Rational,
}

impl DetAssembly {
    pub fn size(&self) -> usize {
        self.last_row.len()
    }

    /// `factor / V` with `V` taken over the stored node order.
    pub fn prefactor(&self) -> Result<Complex64, DetError> {
        let v = vandermonde_product(self.nodes.points());
        let p = Complex64::new(rational_to_f64(&self.factor), 0.0) / v;
        if p.is_finite() && !p.is_zero() {
            Ok(p)
        } else {
            Err(DetError::NonFinite)
        }
    }

    pub fn with_nodes(&self, nodes: NodeSet) -> Self {
        Self {
            nodes,
            ..self.clone()
        }
    }
}

/// `∏_{i<j} (z_j - z_i)` in the given order.
pub fn vandermonde_product(points: &[Complex64]) -> Complex64 {
    let mut v = Complex64::one();
    for j in 0..points.len() {
        for i in 0..j {
            v *= points[j] - points[i];
        }
    }
    v
}

/// Determinant by LU with partial pivoting; consumes the matrix.
pub fn lu_determinant(mut a: Vec<Vec<Complex64>>) -> Complex64 {
    let n = a.len();
    let mut det = Complex64::one();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
            .expect("nonempty range");
        if a[pivot][col].is_zero() {
            return Complex64::zero();
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col];
        det *= p;
        let (top, rest) = a.split_at_mut(col + 1);
        let pivot = &top[col];
        for r in rest.iter_mut() {
            let f = r[col] / p;
            if f.is_zero() {
                continue;
            }
            for (x, y) in r[col..n].iter_mut().zip(&pivot[col..n]) {
                *x -= f * y;
            }
        }
    }
    det
}

fn node_rows(points: &[Complex64], width: usize) -> Vec<Vec<Complex64>> {
    points
        .iter()
        .map(|&z| {
            let mut row = Vec::with_capacity(width);
            let mut p = Complex64::one();
            for _ in 0..width {
                row.push(p);
                p *= z;
            }
            row
        })
        .collect()
}

/// Coefficients of `∏(t - z_i)`, lowest degree first.
///
/// The product is formed exactly from the double-precision nodes and each
/// coefficient rounded once, so the result does not depend on node order.
pub fn node_polynomial(points: &[Complex64]) -> Vec<Complex64> {
    let (zs, s) = gaussian_nodes(points);
    // ∏(T - Z_i) with T = 2^s t, Z_i = 2^s z_i
    let mut c = vec![Complex::new(BigInt::one(), BigInt::zero())];
    for z in &zs {
        let mut next = vec![Complex::new(BigInt::zero(), BigInt::zero()); c.len() + 1];
        for (j, cj) in c.iter().enumerate() {
            next[j + 1] = &next[j + 1] + cj;
            next[j] = &next[j] - cj * z;
        }
        c = next;
    }
    let k = points.len();
    let round = |v: &BigInt, shift: usize| {
        rational_to_f64(&Rational::new(v.clone(), BigInt::one() << shift))
    };
    c.iter()
        .enumerate()
        .map(|(j, cj)| {
            let shift = s * (k - j);
            Complex64::new(round(&cj.re, shift), round(&cj.im, shift))
        })
        .collect()
}

/// The numeric cofactors along the last row: `det = Σ_j cof[j] · last_row[j](x)`.
pub fn last_row_cofactors(points: &[Complex64], strategy: MinorStrategy) -> Vec<Complex64> {
    let k = points.len() + 1;
    match strategy {
        MinorStrategy::NodePolynomial => {
            let v = vandermonde_product(points);
            node_polynomial(points).into_iter().map(|c| c * v).collect()
        }
        MinorStrategy::Lu => {
            let rows = node_rows(points, k);
            (0..k)
                .map(|j| {
                    let minor: Vec<Vec<Complex64>> = rows
                        .iter()
                        .map(|r| {
                            r.iter()
                                .enumerate()
                                .filter(|&(c, _)| c != j)
                                .map(|(_, v)| *v)
                                .collect()
                        })
                        .collect();
                    let d = lu_determinant(minor);
                    if (k - 1 + j).is_multiple_of(2) {
                        d
                    } else {
                        -d
                    }
                })
                .collect()
        }
    }
}

/// Determinant of the matrix with node rows `[1, z, …, z^{k-1}]` and the
/// given polynomial last row, expanded along the last row.
pub fn last_row_det_with(
    nodes: &NodeSet,
    last_row: &[CPoly],
    strategy: MinorStrategy,
) -> Result<CPoly, DetError> {
    if last_row.len() != nodes.len() + 1 {
        return Err(DetError::SizeMismatch {
            nodes: nodes.len(),
            row: last_row.len(),
            expected: nodes.len() + 1,
        });
    }
    let cof = last_row_cofactors(nodes.points(), strategy);
    let mut acc = CPoly::zero();
    for (c, p) in cof.iter().zip(last_row) {
        acc = &acc + &p.scale(c);
    }
    if acc.is_finite() {
        Ok(acc)
    } else {
        Err(DetError::NonFinite)
    }
}

pub fn last_row_det(nodes: &NodeSet, last_row: &[CPoly]) -> Result<CPoly, DetError> {
    last_row_det_with(nodes, last_row, MinorStrategy::default())
}

/// `det(M) / V` for the same matrix. With node-polynomial minors this is
/// `Σ_j c_j · last_row[j]` and `V` never enters the sum.
pub fn last_row_ratio_with(
    nodes: &NodeSet,
    last_row: &[CPoly],
    strategy: MinorStrategy,
) -> Result<CPoly, DetError> {
    let acc = match strategy {
        MinorStrategy::NodePolynomial => {
            if last_row.len() != nodes.len() + 1 {
                return Err(DetError::SizeMismatch {
                    nodes: nodes.len(),
                    row: last_row.len(),
                    expected: nodes.len() + 1,
                });
            }
            let mut acc = CPoly::zero();
            for (c, p) in node_polynomial(nodes.points()).iter().zip(last_row) {
                acc = &acc + &p.scale(c);
            }
            acc
        }
        MinorStrategy::Lu => {
            let v = vandermonde_product(nodes.points());
            last_row_det_with(nodes, last_row, strategy)?.scale(&v.inv())
        }
    };
    if acc.is_finite() {
        Ok(acc)
    } else {
        Err(DetError::NonFinite)
    }
}

fn sign(k: u32) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn pow2(k: u32) -> Rational {
    Rational::from_integer(num_bigint::BigInt::from(1u8) << k as usize)
}

fn power_row(count: u32, shift: i64, denom: impl Fn(u32) -> Rational) -> Vec<RatPoly> {
    (0..count)
        .map(|k| Poly::monomial(Rational::one() / denom(k), (k as i64 + shift) as usize))
        .collect()
}

/// Candidate closed forms for the constant of the type II formula.
///
/// The printed constant `(-1)^{n+1} - (m-α-1)/(n-m)` over `m!(n-m-1)!`
/// admits two groupings; `Unified` is the grouped reading rewritten so it
/// stays defined at `n = m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Type2Reading {
    /// `((-1)^{n+1} - (m-α-1)/(n-m)) / (m!(n-m-1)!)`.
    Literal,
    /// `(-1)^{n+1} (1 - (m-α-1)/(n-m)) / (m!(n-m-1)!)`.
    Grouped,
    /// `(-1)^{n+1} (α+n+1-2m) / (m!(n-m)!)`.
    Unified,
}

impl Type2Reading {
    pub const ALL: [Type2Reading; 3] = [Self::Literal, Self::Grouped, Self::Unified];

    pub fn expression(self) -> &'static str {
        match self {
            Self::Literal => "((-1)^(n+1) - (m-alpha-1)/(n-m)) / (m! (n-m-1)!)",
            Self::Grouped => "(-1)^(n+1) (1 - (m-alpha-1)/(n-m)) / (m! (n-m-1)!)",
            Self::Unified => "(-1)^(n+1) (alpha+n+1-2m) / (m! (n-m)!)",
        }
    }

    /// The constant, or `None` where the expression is undefined (`n = m`).
    pub fn value(self, m: u32, n: u32, alpha: &Rational) -> Option<Rational> {
        let s = sign(n + 1);
        let ratio = || (int(m as i64) - alpha - int(1)) / int(n as i64 - m as i64);
        match self {
            Self::Literal if n > m => {
                Some((s - ratio()) / (factorial(m) * factorial(n - m - 1)))
            }
            Self::Grouped if n > m => {
                Some(s * (int(1) - ratio()) / (factorial(m) * factorial(n - m - 1)))
            }
            Self::Unified => Some(
                s * (alpha + int(n as i64 + 1 - 2 * m as i64)) / (factorial(m) * factorial(n - m)),
            ),
            _ => None,
        }
    }
}

/// The reading used by [`assemble`]; [`resolve_type2_constant`] re-derives it.
pub const TYPE2_READING: Type2Reading = Type2Reading::Unified;

fn classical_part(
    family: ClassicalFamily,
    n: u32,
    opts: &RootOptions,
) -> Result<NodeSet, DetError> {
    Ok(family_zeros(&family, n, opts)?)
}

/// Builds the node set, last row and constants for a spec.
pub fn assemble(spec: &XopSpec, opts: &DetOptions) -> Result<DetAssembly, DetError> {
    spec.validate()?;
    let (m, n) = (spec.m, spec.n);
    let a = &spec.alpha;
    let one = int(1);
    let ro = &opts.roots;
    let lag = |alpha: Rational| ClassicalFamily::Laguerre(alpha);
    let mut asm = match &spec.family {
        Family::LagI => {
            let left = classical_part(lag(a - &one), m, ro)?.negated("-zeros L_m^(alpha-1)");
            let right = classical_part(lag(a - &one), n - m, ro)?;
            DetAssembly {
                family: Family::LagI,
                nodes: NodeSet::union(&[left, right], "X")?,
                last_row: power_row(n + 1, 0, |k| a + int(k as i64)),
                factor: sign(n - m) * (a + int(n as i64)) / (factorial(m) * factorial(n - m)),
                times_x: false,
                additive_constant: Rational::zero(),
            }
        }
        Family::LagII => {
            let left = classical_part(lag(-a - &one), m, ro)?;
            let right = classical_part(lag(a + &one), n - m, ro)?;
            DetAssembly {
                family: Family::LagII,
                nodes: NodeSet::union(&[left, right], "Y")?,
                last_row: (0..=n)
                    .map(|k| exp_partial_sum(k).scale(&factorial(k)))
                    .collect(),
                factor: TYPE2_READING.value(m, n, a).expect("unified reading is total"),
                times_x: false,
                additive_constant: Rational::zero(),
            }
        }
        Family::LagIII => {
            if n == 0 {
                return Err(DetError::NotCovered(spec.descriptor()));
            }
            let left = classical_part(lag(-a - &one), m, ro)?.negated("-zeros L_m^(-alpha-1)");
            let right = classical_part(lag(a + &one), n - m - 1, ro)?;
            DetAssembly {
                family: Family::LagIII,
                nodes: NodeSet::union(&[left, right], "Z")?,
                last_row: power_row(n, 0, |k| int(k as i64 + 1)),
                factor: sign(n - m - 1) * int(n as i64) / (factorial(m) * factorial(n - m - 1)),
                times_x: true,
                additive_constant: lag3_constant(spec),
            }
        }
        Family::Jacobi => {
            let b = &spec.beta;
            let left = classical_part(ClassicalFamily::Jacobi(-a - &one, b - &one), m, ro)?;
            let right = classical_part(ClassicalFamily::Jacobi(a + &one, b - &one), n - m, ro)?;
            let delta = a + &one;
            let (mi, ni) = (m as i64, n as i64);
            let factor = sign(m) * gen_binomial(&int(ni), m)
                * (int(ni - 2 * mi) + &delta)
                * pochhammer(&(b - &delta + int(mi)), m)
                * pochhammer(&(&delta + b + int(ni - mi)), n - m)
                * (b + int(ni))
                / (factorial(n) * (&delta + int(ni - mi)) * pow2(n));
            DetAssembly {
                family: Family::Jacobi,
                nodes: NodeSet::union(&[left, right], "W")?,
                last_row: (0..=n)
                    .map(|k| {
                        r_partial_sum(k, b).scale(&(sign(k) * factorial(k) / pochhammer(b, k + 1)))
                    })
                    .collect(),
                factor,
                times_x: false,
                additive_constant: Rational::zero(),
            }
        }
        Family::Hermite11 => {
            let imag = NodeSet::new(
                vec![
                    Complex64::new(0.0, -FRAC_1_SQRT_2),
                    Complex64::new(0.0, FRAC_1_SQRT_2),
                ],
                "zeros H_(1,1)",
                ro.tol,
            )?;
            let right = classical_part(ClassicalFamily::Hermite, n - 3, ro)?;
            let ni = n as i64;
            DetAssembly {
                family: Family::Hermite11,
                nodes: NodeSet::union(&[imag, right], "U")?,
                last_row: power_row(n, 0, |k| int(k as i64 + 1)),
                factor: pow2(n + 3) * int(ni * (ni - 1) * (ni - 2)),
                times_x: true,
                additive_constant: int(16 * (ni - 1) * (ni - 2)) * hermite(n - 2).coeff(0),
            }
        }
        Family::HermiteGeneral(_) => return Err(DetError::NotCovered(spec.descriptor())),
    };
    if let Some((family, scale)) = &opts.corrupt_factor {
        if *family == asm.family {
            asm.factor = &asm.factor * scale;
        }
    }
    Ok(asm)
}

/// Refuses node sets that are too close to degenerate for double precision.
///
/// The gap test always applies. With LU minors the LU determinant of the
/// node rows must also agree with the product formula.
pub fn conditioning_guard(nodes: &NodeSet, opts: &DetOptions) -> Result<(), DetError> {
    nodes
        .require_simple(opts.min_gap_rel)
        .map_err(|e| DetError::Conditioning(format!("{e}")))?;
    if opts.strategy == MinorStrategy::Lu && nodes.len() >= 2 {
        let product = vandermonde_product(nodes.points());
        let lu = lu_determinant(node_rows(nodes.points(), nodes.len()));
        let rel = (lu - product).norm() / product.norm();
        if rel.is_nan() || rel > opts.consistency_rel {
            return Err(DetError::Conditioning(format!(
                "Vandermonde determinant by LU and by product differ by {rel:e} relative"
            )));
        }
    }
    Ok(())
}

fn dyadic(x: f64) -> (BigInt, i32) {
    let (mantissa, exponent, sign) = Float::integer_decode(x);
    (BigInt::from(mantissa) * BigInt::from(sign), exponent as i32)
}

/// The nodes scaled by a common `2^s` into Gaussian integers, with `s`.
fn gaussian_nodes(points: &[Complex64]) -> (Vec<Complex<BigInt>>, usize) {
    let parts: Vec<((BigInt, i32), (BigInt, i32))> =
        points.iter().map(|z| (dyadic(z.re), dyadic(z.im))).collect();
    let shift = parts
        .iter()
        .flat_map(|(re, im)| [re, im])
        .filter(|(m, _)| !m.is_zero())
        .map(|(_, e)| -(*e as i64))
        .max()
        .unwrap_or(0)
        .max(0);
    let scaled = |(m, e): &(BigInt, i32)| -> BigInt {
        if m.is_zero() {
            BigInt::zero()
        } else {
            m << (*e as i64 + shift) as usize
        }
    };
    let zs = parts
        .iter()
        .map(|(re, im)| Complex::new(scaled(re), scaled(im)))
        .collect();
    (zs, shift as usize)
}

/// Exact determinant of the node rows `[z_i^j]`, `j < len`, for the given
/// double-precision nodes, as `(d, s)` with value `d * 2^{-s}`.
///
/// Each node is an exact dyadic rational; scaling column `j` by `2^{js}`
/// makes every entry a Gaussian integer, and fraction-free elimination
/// then gives the determinant without rounding.
pub fn exact_node_determinant(points: &[Complex64]) -> (Complex<BigInt>, u64) {
    let (zs, shift) = gaussian_nodes(points);
    let n = points.len();
    let mut a: Vec<Vec<Complex<BigInt>>> = zs
        .iter()
        .map(|z| {
            let mut row = Vec::with_capacity(n);
            let mut p = Complex::new(BigInt::one(), BigInt::zero());
            for _ in 0..n {
                row.push(p.clone());
                p = &p * z;
            }
            row
        })
        .collect();
    let total_shift = shift as u64 * (n as u64 * n.saturating_sub(1) as u64 / 2);
    if n == 0 {
        return (Complex::new(BigInt::one(), BigInt::zero()), 0);
    }
    let mut prev = Complex::new(BigInt::one(), BigInt::zero());
    let mut negate = false;
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return (Complex::new(BigInt::zero(), BigInt::zero()), total_shift),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                // exact division by the previous pivot
                a[i][j] = num / prev.clone();
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    (if negate { -det } else { det }, total_shift)
}

/// `exact det([z_i^j]) / v`, rounded once at the end.
pub fn exact_vandermonde_ratio(points: &[Complex64], v: Complex64) -> Complex64 {
    let (d, shift) = exact_node_determinant(points);
    let to_rat = |x: f64| Rational::from_float(x).unwrap_or_else(Rational::zero);
    let scale = Rational::from_integer(BigInt::one() << shift as usize);
    let (dr, di) = (
        Rational::from_integer(d.re) / &scale,
        Rational::from_integer(d.im) / &scale,
    );
    let (vr, vi) = (to_rat(v.re), to_rat(v.im));
    let denom = &vr * &vr + &vi * &vi;
    if denom.is_zero() {
        return Complex64::new(f64::NAN, f64::NAN);
    }
    let re = (&dr * &vr + &di * &vi) / &denom;
    let im = (&di * &vr - &dr * &vi) / &denom;
    Complex64::new(rational_to_f64(&re), rational_to_f64(&im))
}

/// Evaluates an assembly as a complex polynomial.
pub fn evaluate_assembly(asm: &DetAssembly, opts: &DetOptions) -> Result<CPoly, DetError> {
    conditioning_guard(&asm.nodes, opts)?;
    let row: Vec<CPoly> = asm.last_row.iter().map(RatPoly::to_complex).collect();
    let ratio = last_row_ratio_with(&asm.nodes, &row, opts.strategy)?;
    let mut out = ratio.scale(&Complex64::new(rational_to_f64(&asm.factor), 0.0));
    if asm.times_x {
        out = out.shift_up(1);
    }
    out = &out + &CPoly::constant(Complex64::new(rational_to_f64(&asm.additive_constant), 0.0));
    if out.is_finite() {
        Ok(out)
    } else {
        Err(DetError::NonFinite)
    }
}

/// The exceptional polynomial from its determinantal formula.
pub fn det_xop_with(spec: &XopSpec, opts: &DetOptions) -> Result<CPoly, DetError> {
    evaluate_assembly(&assemble(spec, opts)?, opts)
}

pub fn det_xop(spec: &XopSpec) -> Result<CPoly, DetError> {
    det_xop_with(spec, &DetOptions::default())
}

/// Coefficient-wise comparison of a float polynomial against an exact one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoeffComparison {
    /// Max over `j` of `|a_j - b_j| / |b_j|`, or `|a_j| / max|b|` where `b_j = 0`.
    pub max_rel_err: f64,
    /// `max|Im a_j| / max|b|`.
    pub max_imag: f64,
    pub leading_rel_err: f64,
    pub degree: Option<usize>,
}

pub fn compare_coefficients(approx: &CPoly, exact: &RatPoly) -> CoeffComparison {
    let b: Vec<f64> = exact.coeffs().iter().map(rational_to_f64).collect();
    let scale = b.iter().fold(0.0f64, |acc, v| acc.max(Float::abs(*v))).max(f64::MIN_POSITIVE);
    let len = b.len().max(approx.coeffs().len());
    let mut max_rel: f64 = 0.0;
    let mut max_imag: f64 = 0.0;
    for j in 0..len {
        let aj = approx.coeff(j);
        let bj = b.get(j).copied().unwrap_or(0.0);
        let err = if bj != 0.0 {
            (aj - Complex64::new(bj, 0.0)).norm() / Float::abs(bj)
        } else {
            aj.norm() / scale
        };
        max_rel = if err.is_nan() { f64::INFINITY } else { max_rel.max(err) };
        max_imag = max_imag.max(Float::abs(aj.im) / scale);
    }
    let leading_rel_err = match exact.degree() {
        Some(d) => {
            let bd = b[d];
            (approx.coeff(d) - Complex64::new(bd, 0.0)).norm() / Float::abs(bd)
        }
        None => approx.max_abs_coeff(),
    };
    CoeffComparison {
        max_rel_err: max_rel,
        max_imag,
        leading_rel_err,
        degree: approx.degree(),
    }
}

/// Agreement tolerance: `1e-10` up to degree 6, `1e-8` beyond.
pub fn agreement_tolerance(n: u32) -> f64 {
    if n <= 6 {
        1e-10
    } else {
        1e-8
    }
}

/// Imaginary parts allowed relative to the coefficient scale.
pub const IMAG_TOLERANCE: f64 = 1e-9;

fn error_case(spec: &str, check: &str, e: &DetError) -> CaseOutcome {
    let status = if e.is_refusal() {
        Status::Refused
    } else {
        Status::Fail
    };
    CaseOutcome::new(spec, check)
        .with_status(status)
        .with_detail(format!("{e}"))
}

/// Determinantal path against the exact product path.
pub fn det_agreement_case(spec: &XopSpec, opts: &DetOptions) -> CaseOutcome {
    det_agreement_case_at(spec, opts, agreement_tolerance(spec.n))
}

/// As [`det_agreement_case`] with an explicit coefficient tolerance.
pub fn det_agreement_case_at(spec: &XopSpec, opts: &DetOptions, tol: f64) -> CaseOutcome {
    let check = "det-vs-exact";
    let name = spec.descriptor();
    let exact = match exact_xop(spec, spec.family.default_method()) {
        Ok(p) => p,
        Err(e) => return error_case(&name, check, &DetError::Spec(e)),
    };
    let approx = match det_xop_with(spec, opts) {
        Ok(p) => p,
        Err(e) => return error_case(&name, check, &e),
    };
    let cmp = compare_coefficients(&approx, &exact);
    let mut out = CaseOutcome::within(&name, check, cmp.max_rel_err, tol);
    let mut notes = Vec::new();
    if cmp.leading_rel_err > tol {
        notes.push(format!(
            "leading-coefficient mismatch: relative error {:e}",
            cmp.leading_rel_err
        ));
    }
    if cmp.max_imag > IMAG_TOLERANCE {
        out.status = Status::Fail;
        notes.push(format!("imaginary parts up to {:e} of scale", cmp.max_imag));
    }
    if !notes.is_empty() {
        out = out.with_detail(notes.join("; "));
    }
    out
}

/// Relative deviation of the top coefficient of `det(M)` from
/// `lc(last entry) * ∏(z_j - z_i)`.
///
/// Only the last entry reaches the top degree, so that coefficient is
/// `lc(last entry)` times the node-row minor without the last column; the
/// minor is computed exactly by [`exact_node_determinant`] and the product
/// in floating point.
pub fn leading_coefficient_law(spec: &XopSpec, opts: &DetOptions) -> Result<f64, DetError> {
    let asm = assemble(spec, opts)?;
    conditioning_guard(&asm.nodes, opts)?;
    let v = vandermonde_product(asm.nodes.points());
    let ratio = exact_vandermonde_ratio(asm.nodes.points(), v);
    Ok((ratio - Complex64::one()).norm())
}

pub fn leading_coefficient_case(spec: &XopSpec, opts: &DetOptions) -> CaseOutcome {
    let check = "leading-coefficient-law";
    match leading_coefficient_law(spec, opts) {
        Ok(err) => CaseOutcome::within(spec.descriptor(), check, err, 1e-9),
        Err(e) => error_case(&spec.descriptor(), check, &e),
    }
}

/// First-order operator of the family applied to `x^j`, evaluated at `z`.
fn relation_row(family: &Family, spec: &XopSpec, z: Complex64, width: usize) -> Vec<Complex64> {
    let a = rational_to_f64(&spec.alpha);
    let b = rational_to_f64(&spec.beta);
    let pow = |k: usize| -> Complex64 {
        if k == 0 {
            Complex64::one()
        } else {
            z.powu(k as u32)
        }
    };
    (0..width)
        .map(|j| {
            let jf = j as f64;
            let d = if j == 0 { Complex64::zero() } else { pow(j - 1) * jf };
            match family {
                Family::LagI => pow(j) * (jf + a),
                Family::LagII => d - pow(j),
                Family::Jacobi => d * (Complex64::one() + z) + pow(j) * b,
                _ => d,
            }
        })
        .collect()
}

/// `‖M̃a‖ / (‖a‖ · max column norm)`, where `a` holds the exact coefficients
/// of the target and `M̃` has rows `D(x^j)(z_i)` for the family's first-order
/// operator `D` and each node `z_i`.
///
/// A small value certifies that the node rows annihilate the target, i.e.
/// the smallest singular value of `M̃` is small relative to its norm.
pub fn kernel_residual(spec: &XopSpec, opts: &DetOptions) -> Result<f64, DetError> {
    let asm = assemble(spec, opts)?;
    let exact = exact_xop(spec, spec.family.default_method())?;
    let a: Vec<Complex64> = exact
        .coeffs()
        .iter()
        .map(|c| Complex64::new(rational_to_f64(c), 0.0))
        .collect();
    let width = a.len();
    let rows: Vec<Vec<Complex64>> = asm
        .nodes
        .points()
        .iter()
        .map(|&z| relation_row(&asm.family, spec, z, width))
        .collect();
    let mut col_norm: f64 = 0.0;
    for j in 0..width {
        let s: f64 = rows.iter().map(|r| r[j].norm_sqr()).sum();
        col_norm = col_norm.max(Float::sqrt(s));
    }
    let mut res = 0.0;
    for r in &rows {
        let v: Complex64 = r.iter().zip(&a).map(|(x, y)| x * y).sum();
        res += v.norm_sqr();
    }
    let a_norm = Float::sqrt(a.iter().map(|c| c.norm_sqr()).sum::<f64>());
    Ok(Float::sqrt(res) / (a_norm * col_norm))
}

pub fn kernel_case(spec: &XopSpec, opts: &DetOptions) -> CaseOutcome {
    let check = "node-rows-annihilate-target";
    match kernel_residual(spec, opts) {
        Ok(r) => CaseOutcome::within(spec.descriptor(), check, r, 1e-6),
        Err(e) => error_case(&spec.descriptor(), check, &e),
    }
}

/// Max relative coefficient difference between the canonical-order result
/// and the result with nodes reordered by `perm` (`perm[i]` moves to `i`).
pub fn permutation_invariance(
    spec: &XopSpec,
    perm: &[usize],
    opts: &DetOptions,
) -> Result<f64, DetError> {
    Ok(permutation_errors(spec, &[perm.to_vec()], opts)?[0])
}

/// Relative coefficient deviation of the formula under each node reordering.
pub fn permutation_errors(
    spec: &XopSpec,
    perms: &[Vec<usize>],
    opts: &DetOptions,
) -> Result<Vec<f64>, DetError> {
    let asm = assemble(spec, opts)?;
    let base = evaluate_assembly(&asm, opts)?;
    let exact = exact_xop(spec, spec.family.default_method()).map_err(DetError::Spec)?;
    let scale = base.max_abs_coeff().max(f64::MIN_POSITIVE);
    perms
        .iter()
        .map(|perm| {
            let permuted = evaluate_assembly(&asm.with_nodes(asm.nodes.permuted(perm)?), opts)?;
            let len = base.coeffs().len().max(permuted.coeffs().len());
            Ok((0..len)
                .map(|j| {
                    let (x, y) = (base.coeff(j), permuted.coeff(j));
                    // coefficients that vanish exactly carry only rounding noise
                    let denom = if exact.coeff(j).is_zero() { scale } else { x.norm() };
                    (x - y).norm() / denom
                })
                .fold(0.0, f64::max))
        })
        .collect()
}

/// Worst deviation over `perms`, checked at `1e-10` relative.
pub fn permutation_case(spec: &XopSpec, perms: &[Vec<usize>], opts: &DetOptions) -> CaseOutcome {
    let check = "node-order-invariance";
    match permutation_errors(spec, perms, opts) {
        Ok(errs) => {
            let (worst, at) = errs
                .iter()
                .enumerate()
                .fold((0.0f64, 0), |acc, (i, &e)| if e > acc.0 || e.is_nan() { (e, i) } else { acc });
            CaseOutcome::within(spec.descriptor(), check, worst, 1e-10)
                .with_detail(format!("{} permutations, worst at #{at}", perms.len()))
        }
        Err(e) => error_case(&spec.descriptor(), check, &e),
    }
}

/// One candidate's fit on one spec.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantFit {
    pub spec: XopSpec,
    pub empirical: f64,
    /// Relative error per reading, `None` where the reading is undefined.
    pub errors: Vec<(Type2Reading, Option<f64>)>,
}

/// Empirical type II constant: the exact leading coefficient divided by
/// the top coefficient of `det(M) / V`, with the minor computed exactly.
pub fn empirical_type2_constant(spec: &XopSpec, opts: &DetOptions) -> Result<f64, DetError> {
    let asm = assemble(spec, opts)?;
    conditioning_guard(&asm.nodes, opts)?;
    let v = vandermonde_product(asm.nodes.points());
    let last = asm.last_row.last().expect("nonempty row");
    let unit = exact_vandermonde_ratio(asm.nodes.points(), v)
        * rational_to_f64(last.leading().expect("nonzero entry"));
    let exact = exact_xop(spec, crate::xop::Method::Product)?;
    let lead = rational_to_f64(exact.leading().expect("nonzero polynomial"));
    Ok((Complex64::new(lead, 0.0) / unit).re)
}

pub fn type2_constant_fit(spec: &XopSpec, opts: &DetOptions) -> Result<ConstantFit, DetError> {
    let empirical = empirical_type2_constant(spec, opts)?;
    let errors = Type2Reading::ALL
        .iter()
        .map(|&r| {
            let e = r
                .value(spec.m, spec.n, &spec.alpha)
                .map(|v| Float::abs(rational_to_f64(&v) - empirical) / Float::abs(empirical));
            (r, e)
        })
        .collect();
    Ok(ConstantFit {
        spec: spec.clone(),
        empirical,
        errors,
    })
}

/// Which readings fit every spec to `tol`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantResolution {
    pub fits: Vec<ConstantFit>,
    pub tol: f64,
}

impl ConstantResolution {
    /// Specs on which `reading` is defined and within tolerance.
    pub fn matches(&self, reading: Type2Reading) -> usize {
        self.fits
            .iter()
            .filter(|f| {
                f.errors
                    .iter()
                    .any(|(r, e)| *r == reading && e.is_some_and(|v| v <= self.tol))
            })
            .count()
    }

    pub fn fits_everywhere(&self, reading: Type2Reading) -> bool {
        !self.fits.is_empty() && self.matches(reading) == self.fits.len()
    }

    /// The first reading that fits every spec.
    pub fn resolved(&self) -> Option<Type2Reading> {
        Type2Reading::ALL.into_iter().find(|&r| self.fits_everywhere(r))
    }

    pub fn summary(&self) -> String {
        let parts: Vec<String> = Type2Reading::ALL
            .iter()
            .map(|&r| format!("{} fits {}/{}", r.expression(), self.matches(r), self.fits.len()))
            .collect();
        parts.join("; ")
    }
}

pub fn resolve_type2_constant(
    specs: &[XopSpec],
    opts: &DetOptions,
    tol: f64,
) -> Result<ConstantResolution, DetError> {
    let fits = specs
        .iter()
        .filter(|s| s.family == Family::LagII)
        .map(|s| type2_constant_fit(s, opts))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ConstantResolution { fits, tol })
}

/// Per-spec outcome of the type II constant check against [`TYPE2_READING`].
pub fn type2_constant_case(spec: &XopSpec, opts: &DetOptions) -> CaseOutcome {
    let check = "type2-constant-fit";
    match type2_constant_fit(spec, opts) {
        Ok(fit) => {
            let err = fit
                .errors
                .iter()
                .find(|(r, _)| *r == TYPE2_READING)
                .and_then(|(_, e)| *e)
                .unwrap_or(f64::INFINITY);
            let others: Vec<String> = fit
                .errors
                .iter()
                .filter(|(r, _)| *r != TYPE2_READING)
                .map(|(r, e)| match e {
                    Some(v) => format!("{:?} {v:.3e}", r),
                    None => format!("{:?} undefined", r),
                })
                .collect();
            CaseOutcome::within(spec.descriptor(), check, err, 1e-9).with_detail(format!(
                "empirical {:.17e}; {}; other readings: {}",
                fit.empirical,
                TYPE2_READING.expression(),
                others.join(", ")
            ))
        }
        Err(e) => error_case(&spec.descriptor(), check, &e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use core::f64::consts::SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rp(coeffs: &[Rational]) -> CPoly {
        Poly::new(coeffs.to_vec()).to_complex()
    }

    #[test]
    fn vandermonde_examples() {
        assert_eq!(vandermonde_product(&[c(1.0, 0.0)]), Complex64::one());
        let pts = [c(0.0, -FRAC_1_SQRT_2), c(0.0, FRAC_1_SQRT_2)];
        assert!((vandermonde_product(&pts) - c(0.0, SQRT_2)).norm() < 1e-15);
        let pts3 = [c(1.0, 0.0), c(2.0, 0.5), c(-1.0, 0.0)];
        let swapped = [pts3[1], pts3[0], pts3[2]];
        assert!((vandermonde_product(&pts3) + vandermonde_product(&swapped)).norm() < 1e-14);
    }

    #[test]
    fn last_row_det_examples() {
        for strategy in [MinorStrategy::NodePolynomial, MinorStrategy::Lu] {
            let cnode = NodeSet::new(vec![c(3.0, 0.0)], "c", 1e-13).unwrap();
            let det = last_row_det_with(&cnode, &[rp(&[int(1)]), rp(&[int(0), int(1)])], strategy)
                .unwrap();
            assert_eq!(det, Poly::new(vec![c(-3.0, 0.0), c(1.0, 0.0)]));

            let neg = NodeSet::new(vec![c(-1.0, 0.0)], "x", 1e-13).unwrap();
            let det =
                last_row_det_with(&neg, &[rp(&[int(1)]), rp(&[int(0), rat(1, 2)])], strategy)
                    .unwrap();
            assert_eq!(det, Poly::new(vec![c(1.0, 0.0), c(0.5, 0.0)]));

            // node order +i/√2, -i/√2
            let u = NodeSet::from_ordered(
                vec![c(0.0, FRAC_1_SQRT_2), c(0.0, -FRAC_1_SQRT_2)],
                "u",
                1e-13,
            )
            .unwrap();
            let row = [
                rp(&[int(1)]),
                rp(&[int(0), rat(1, 2)]),
                rp(&[int(0), int(0), rat(1, 3)]),
            ];
            let det = last_row_det_with(&u, &row, strategy).unwrap();
            let expect = [c(0.0, -SQRT_2 / 2.0), c(0.0, 0.0), c(0.0, -SQRT_2 / 3.0)];
            for (j, e) in expect.iter().enumerate() {
                assert!((det.coeff(j) - e).norm() < 1e-15, "{strategy:?} {det}");
            }
        }
        let one = NodeSet::new(vec![c(0.0, 0.0)], "", 1e-13).unwrap();
        assert!(matches!(
            last_row_det(&one, &[rp(&[int(1)])]),
            Err(DetError::SizeMismatch { .. })
        ));
    }

    #[test]
    fn small_cases_reproduce_exact_paths() {
        let y = det_xop(&XopSpec::lag1(1, 1, int(1))).unwrap();
        assert!((y.coeff(0) - c(2.0, 0.0)).norm() < 1e-14);
        assert!((y.coeff(1) - c(1.0, 0.0)).norm() < 1e-14);
        let asm = assemble(&XopSpec::lag1(1, 1, int(1)), &DetOptions::default()).unwrap();
        assert_eq!(asm.factor, int(2));
        assert!((asm.prefactor().unwrap() - c(2.0, 0.0)).norm() < 1e-15);

        let h = det_xop(&XopSpec::hermite11(3)).unwrap();
        let cmp = compare_coefficients(&h, &Poly::new(vec![int(0), int(192), int(0), int(128)]));
        assert!(cmp.max_rel_err < 1e-12, "{h}");
    }

    #[test]
    fn type_three_at_zero_degree_is_not_covered() {
        assert!(matches!(
            det_xop(&XopSpec::lag3(1, 0, rat(-1, 2))),
            Err(DetError::NotCovered(_))
        ));
    }

    #[test]
    fn type_two_readings() {
        let a = rat(5, 2);
        assert_eq!(Type2Reading::Grouped.value(2, 2, &a), None);
        assert_eq!(
            Type2Reading::Grouped.value(1, 3, &a),
            Type2Reading::Unified.value(1, 3, &a)
        );
        // the two readings differ only for even n
        assert_eq!(
            Type2Reading::Literal.value(1, 3, &a),
            Type2Reading::Unified.value(1, 3, &a)
        );
        assert_ne!(
            Type2Reading::Literal.value(1, 2, &a),
            Type2Reading::Unified.value(1, 2, &a)
        );
    }

    #[test]
    fn corrupted_factor_is_caught() {
        let spec = XopSpec::lag1(1, 3, rat(1, 2));
        let opts = DetOptions {
            corrupt_factor: Some((Family::LagI, rat(101, 100))),
            ..DetOptions::default()
        };
        let case = det_agreement_case(&spec, &opts);
        assert_eq!(case.status, Status::Fail);
        assert!(case.detail.unwrap().contains("leading-coefficient mismatch"));
        assert!(det_agreement_case(&spec, &DetOptions::default()).passed());
    }

    #[test]
    fn transposition_invariance() {
        let spec = XopSpec::lag1(1, 3, int(1));
        let err = permutation_invariance(&spec, &[1, 0, 2], &DetOptions::default()).unwrap();
        assert!(err < 1e-12);
    }
}
