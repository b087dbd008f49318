//! Classical building blocks: Laguerre, Jacobi, Hermite, generalized Hermite,
//! the truncated exponential and binomial series, and exact combinatorial
//! helpers. Everything here is exact rational arithmetic.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::check::CaseOutcome;
use crate::poly::{int, rat, wronskian, Poly, RatPoly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassicalError {
    #[error("partition parts must be non-increasing and at least 1, got {0:?}")]
    InvalidPartition(Vec<u32>),
}

/// Integer partition `λ₁ ≥ λ₂ ≥ … ≥ λ_m ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, ClassicalError> {
        let ordered = parts.windows(2).all(|w| w[0] >= w[1]);
        if parts.is_empty() || !ordered || parts.contains(&0) {
            return Err(ClassicalError::InvalidPartition(parts));
        }
        Ok(Self(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|λ|`.
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Even length with parts pairing up: `λ_{2j} = λ_{2j-1}`.
    pub fn is_even(&self) -> bool {
        self.0.len().is_multiple_of(2) && self.0.chunks(2).all(|c| c[0] == c[1])
    }

    /// Every partition of `weight`, in reverse lexicographic order.
    pub fn all_of_weight(weight: u32) -> Vec<Partition> {
        fn rec(rest: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for part in (1..=rest.min(cap)).rev() {
                cur.push(part);
                rec(rest - part, part, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if weight > 0 {
            rec(weight, weight, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Rising factorial `a (a+1) ⋯ (a+n-1)`, equal to 1 when `n = 0`.
pub fn pochhammer(a: &Rational, n: u32) -> Rational {
    (0..n).fold(Rational::one(), |acc, i| acc * (a + int(i as i64)))
}

/// Falling-factorial binomial `a (a-1) ⋯ (a-k+1) / k!` for any rational `a`.
pub fn gen_binomial(a: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * (a - int(i as i64)) / int(i as i64 + 1);
    }
    acc
}

pub fn factorial(n: u32) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, v| acc * int(v))
}

/// Laguerre polynomial `L_n^{(α)}` from its explicit sum; defined for every rational α.
pub fn laguerre(n: u32, alpha: &Rational) -> RatPoly {
    let top = alpha + int(n as i64);
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    let mut inv_fact = Rational::one();
    for k in 0..=n {
        if k > 0 {
            inv_fact /= int(k as i64);
        }
        let sign = if k % 2 == 0 { int(1) } else { int(-1) };
        coeffs.push(sign * inv_fact.clone() * gen_binomial(&top, n - k));
    }
    Poly::new(coeffs)
}

/// `L_n^{(α)}` with the convention that negative degree gives the zero polynomial.
pub fn laguerre_or_zero(n: i64, alpha: &Rational) -> RatPoly {
    if n < 0 {
        RatPoly::zero()
    } else {
        laguerre(n as u32, alpha)
    }
}

/// Jacobi polynomial `P_n^{(α,β)}`.
///
/// The gamma ratios of the hypergeometric form are rewritten as rising
/// factorials, `Γ(α+n+1)/Γ(α+k+1) = (α+k+1)^{(n-k)}` and
/// `Γ(α+β+n+k+1)/Γ(α+β+n+1) = (α+β+n+1)^{(k)}`, so the result is defined
/// for every rational pair and may lose degree for non-classical parameters.
pub fn jacobi(n: u32, alpha: &Rational, beta: &Rational) -> RatPoly {
    let half_shift = Poly::linear(rat(1, 2), rat(-1, 2));
    let ab = alpha + beta + int(n as i64 + 1);
    let mut acc = RatPoly::zero();
    let mut power = RatPoly::one();
    for k in 0..=n {
        let c = gen_binomial(&int(n as i64), k)
            * pochhammer(&(alpha + int(k as i64 + 1)), n - k)
            * pochhammer(&ab, k);
        acc = &acc + &power.scale(&c);
        power = &power * &half_shift;
    }
    acc.scale(&(Rational::one() / factorial(n)))
}

pub fn jacobi_or_zero(n: i64, alpha: &Rational, beta: &Rational) -> RatPoly {
    if n < 0 {
        RatPoly::zero()
    } else {
        jacobi(n as u32, alpha, beta)
    }
}

/// True when `α+β+n ∈ {-1, …, -n}`, the only way `P_n^{(α,β)}` can fall short of degree `n`.
pub fn jacobi_degree_may_drop(n: u32, alpha: &Rational, beta: &Rational) -> bool {
    let s = alpha + beta + int(n as i64);
    s.is_integer() && s <= int(-1) && s >= int(-(n as i64))
}

/// `H_0, …, H_n` from `H_k = 2x H_{k-1} - H_{k-1}'` with `H_0 = 1`.
pub fn hermite_sequence(n: u32) -> Vec<RatPoly> {
    let two_x = Poly::monomial(int(2), 1);
    let mut out = vec![RatPoly::one()];
    for _ in 0..n {
        let prev = out.last().expect("nonempty");
        let next = &(&two_x * prev) - &prev.differentiate(1);
        out.push(next);
    }
    out
}

pub fn hermite(n: u32) -> RatPoly {
    hermite_sequence(n).pop().expect("nonempty")
}

pub fn hermite_or_zero(n: i64) -> RatPoly {
    if n < 0 {
        RatPoly::zero()
    } else {
        hermite(n as u32)
    }
}

/// The Hermite indices fed to the Wronskian of a partition:
/// `λ_m, λ_{m-1}+1, …, λ_1+m-1`.
pub fn partition_hermite_indices(lambda: &Partition) -> Vec<u32> {
    let parts = lambda.parts();
    let m = parts.len();
    (0..m).map(|i| parts[m - 1 - i] + i as u32).collect()
}

/// Generalized Hermite polynomial `H_λ`, the Wronskian of the partition's Hermite list.
pub fn generalized_hermite(lambda: &Partition) -> RatPoly {
    let polys: Vec<RatPoly> = partition_hermite_indices(lambda)
        .into_iter()
        .map(hermite)
        .collect();
    wronskian(&polys).expect("partitions are nonempty")
}

/// `E_n(x) = Σ_{j≤n} x^j / j!`.
pub fn exp_partial_sum(n: u32) -> RatPoly {
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    let mut c = Rational::one();
    for j in 0..=n {
        if j > 0 {
            c /= int(j as i64);
        }
        coeffs.push(c.clone());
    }
    Poly::new(coeffs)
}

/// `R_n(x; β) = Σ_{j≤n} β^{(j)} (-x)^j / j!`.
pub fn r_partial_sum(n: u32, beta: &Rational) -> RatPoly {
    let coeffs = (0..=n)
        .map(|j| {
            let sign = if j % 2 == 0 { int(1) } else { int(-1) };
            sign * pochhammer(beta, j) / factorial(j)
        })
        .collect();
    Poly::new(coeffs)
}

/// Parameter grid for the exact identity suite.
#[derive(Debug, Clone)]
pub struct IdentityGrid {
    pub n_max: u32,
    pub alphas: Vec<Rational>,
    pub betas: Vec<Rational>,
}

impl Default for IdentityGrid {
    fn default() -> Self {
        Self {
            n_max: 10,
            alphas: vec![rat(1, 2), int(1), rat(3, 2), int(2), rat(7, 3)],
            betas: vec![rat(1, 2), int(1), rat(5, 2)],
        }
    }
}

fn sign_pow(n: u32) -> Rational {
    if n.is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}

/// Laguerre identities at one `(n, α)`; each entry is `(check name, exact residual)`.
pub fn laguerre_identity_residuals(n: u32, alpha: &Rational) -> Vec<(&'static str, RatPoly)> {
    let ni = n as i64;
    let a1 = alpha + int(1);
    let ln = laguerre(n, alpha);
    let x = RatPoly::x();
    let mut out = Vec::new();

    out.push((
        "laguerre-derivative",
        &ln.differentiate(1) + &laguerre_or_zero(ni - 1, &a1),
    ));
    out.push((
        "laguerre-contiguous",
        &(&ln - &laguerre(n, &a1)) + &laguerre_or_zero(ni - 1, &a1),
    ));
    let lhs = &x * &laguerre(n, &a1);
    let rhs = &ln.scale(&(alpha + int(ni + 1))) - &laguerre(n + 1, alpha).scale(&int(ni + 1));
    out.push(("laguerre-x-multiplication", &lhs - &rhs));

    // x y'' + (α+1-x) y' + n y = 0
    let ode = &(&(&x * &ln.differentiate(2))
        + &(&Poly::linear(int(-1), &a1 + int(0)) * &ln.differentiate(1)))
        + &ln.scale(&int(ni));
    out.push(("laguerre-ode", ode));

    let at_zero = ln.evaluate(&Rational::zero()) - gen_binomial(&(alpha + int(ni)), n);
    out.push(("laguerre-at-origin", Poly::constant(at_zero)));

    let lead = ln.leading().cloned().unwrap_or_else(Rational::zero) - sign_pow(n) / factorial(n);
    out.push(("laguerre-leading-coefficient", Poly::constant(lead)));

    if n >= 1 {
        // α L_n^{(α)} - x L_{n-1}^{(α+1)} = (n+α) L_n^{(α-1)}
        let lhs = &ln.scale(alpha) - &(&x * &laguerre(n - 1, &a1));
        let rhs = laguerre(n, &(alpha - int(1))).scale(&(alpha + int(ni)));
        out.push(("laguerre-lowering", &lhs - &rhs));
    }
    out
}

/// Hermite identities at one `n`.
pub fn hermite_identity_residuals(n: u32) -> Vec<(&'static str, RatPoly)> {
    let hs = hermite_sequence(2 * n + 1);
    let x = RatPoly::x();
    let x2 = Poly::monomial(int(1), 2);
    let scale = {
        let mut s = factorial(n);
        for _ in 0..n {
            s *= int(-4);
        }
        s
    };
    let mut out = Vec::new();
    let even = laguerre(n, &rat(-1, 2)).compose(&x2).scale(&scale);
    out.push(("hermite-from-laguerre-even", &hs[2 * n as usize] - &even));
    let odd = (&x * &laguerre(n, &rat(1, 2)).compose(&x2)).scale(&(scale * int(2)));
    out.push(("hermite-from-laguerre-odd", &hs[2 * n as usize + 1] - &odd));
    if n >= 1 {
        let k = n as usize;
        out.push((
            "hermite-derivative",
            &hs[k].differentiate(1) - &hs[k - 1].scale(&int(2 * n as i64)),
        ));
        let rec = &(&hs[k] - &(&Poly::monomial(int(2), 1) * &hs[k - 1])) + &hs[k - 1].differentiate(1);
        out.push(("hermite-recurrence", rec));
        let lead = hs[k].leading().cloned().unwrap_or_else(Rational::zero)
            - (0..n).fold(int(1), |acc, _| acc * int(2));
        out.push(("hermite-leading-coefficient", Poly::constant(lead)));
    }
    out
}

/// `E_n = (-1)^n L_n^{(-n-1)}`.
pub fn exp_partial_sum_residual(n: u32) -> RatPoly {
    let l = laguerre(n, &int(-(n as i64) - 1)).scale(&sign_pow(n));
    &exp_partial_sum(n) - &l
}

/// `R_n(x;β) = (-1)^n P_n^{(-n-1,β)}(1+2x)`.
pub fn r_partial_sum_residual(n: u32, beta: &Rational) -> RatPoly {
    let p = jacobi(n, &int(-(n as i64) - 1), beta)
        .compose(&Poly::linear(int(2), int(1)))
        .scale(&sign_pow(n));
    &r_partial_sum(n, beta) - &p
}

/// Runs every classical identity over the grid, one outcome per (identity, parameters).
pub fn check_classical_identities(grid: &IdentityGrid) -> Vec<CaseOutcome> {
    let mut out = Vec::new();
    for alpha in &grid.alphas {
        for n in 0..=grid.n_max {
            let spec = format!("n={n},alpha={alpha}");
            for (name, r) in laguerre_identity_residuals(n, alpha) {
                out.push(CaseOutcome::exact(spec.clone(), name, &r));
            }
        }
    }
    for n in 0..=grid.n_max {
        let spec = format!("n={n}");
        for (name, r) in hermite_identity_residuals(n) {
            out.push(CaseOutcome::exact(spec.clone(), name, &r));
        }
        out.push(CaseOutcome::exact(
            spec,
            "exp-partial-sum",
            &exp_partial_sum_residual(n),
        ));
    }
    for beta in &grid.betas {
        for n in 0..=grid.n_max {
            out.push(CaseOutcome::exact(
                format!("n={n},beta={beta}"),
                "r-partial-sum",
                &r_partial_sum_residual(n, beta),
            ));
        }
    }
    for alpha in &grid.alphas {
        for beta in &grid.betas {
            for n in 0..=grid.n_max {
                out.push(jacobi_degree_case(n, alpha, beta));
            }
        }
    }
    out
}

/// Degree of `P_n^{(α,β)}` equals `n` unless the degree-drop condition holds.
pub fn jacobi_degree_case(n: u32, alpha: &Rational, beta: &Rational) -> CaseOutcome {
    let spec = format!("n={n},alpha={alpha},beta={beta}");
    let deg = jacobi(n, alpha, beta).degree();
    let drops = jacobi_degree_may_drop(n, alpha, beta);
    let ok = drops || deg == Some(n as usize);
    let detail: String = match deg {
        Some(d) => format!("degree {d}"),
        None => String::from("zero polynomial"),
    };
    CaseOutcome::new(spec, "jacobi-degree")
        .with_status(if ok {
            crate::check::Status::Pass
        } else {
            crate::check::Status::Fail
        })
        .with_detail(detail)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp(c: &[(i64, i64)]) -> RatPoly {
        Poly::new(c.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn laguerre_examples() {
        assert_eq!(laguerre(0, &rat(7, 3)), RatPoly::one());
        assert_eq!(laguerre(1, &int(0)), rp(&[(1, 1), (-1, 1)]));
        assert_eq!(laguerre(2, &int(1)), rp(&[(3, 1), (-3, 1), (1, 2)]));
        assert_eq!(laguerre(2, &int(0)), rp(&[(1, 1), (-2, 1), (1, 2)]));
        assert_eq!(laguerre(1, &rat(-1, 2)), rp(&[(1, 2), (-1, 1)]));
        assert!(laguerre_or_zero(-1, &int(3)).is_zero());
    }

    #[test]
    fn laguerre_derivative_matches_shifted_family() {
        // d/dx L_2^{(0)} = -L_1^{(1)}
        assert_eq!(laguerre(2, &int(0)).differentiate(1), -laguerre(1, &int(1)));
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi(0, &rat(1, 3), &rat(5, 2)), RatPoly::one());
        assert_eq!(jacobi(1, &int(0), &int(0)), RatPoly::x());
        for (a, b) in [(rat(1, 2), rat(3, 2)), (int(2), rat(-1, 3)), (rat(-5, 2), rat(-1, 2))] {
            // (α+1) + (α+β+2)(x-1)/2
            let expect = &Poly::constant(&a + int(1))
                + &Poly::linear(rat(1, 2), rat(-1, 2)).scale(&(&a + &b + int(2)));
            assert_eq!(jacobi(1, &a, &b), expect);
        }
        // Legendre P_2 = (3x^2 - 1)/2
        assert_eq!(jacobi(2, &int(0), &int(0)), rp(&[(-1, 2), (0, 1), (3, 2)]));
    }

    #[test]
    fn jacobi_degree_drop_is_detected() {
        // α+β+n = -1 with n = 1: P_1 = (α+1) + (α+β+2)(x-1)/2 has degree 0
        let (a, b) = (rat(1, 2), rat(-5, 2));
        assert!(jacobi_degree_may_drop(1, &a, &b));
        assert_eq!(jacobi(1, &a, &b).degree(), Some(0));
        assert!(!jacobi_degree_may_drop(3, &rat(1, 2), &int(1)));
        assert_eq!(jacobi(3, &rat(1, 2), &int(1)).degree(), Some(3));
    }

    #[test]
    fn hermite_examples() {
        assert_eq!(hermite(0), RatPoly::one());
        assert_eq!(hermite(1), rp(&[(0, 1), (2, 1)]));
        assert_eq!(hermite(2), rp(&[(-2, 1), (0, 1), (4, 1)]));
        assert_eq!(hermite(3), rp(&[(0, 1), (-12, 1), (0, 1), (8, 1)]));
    }

    #[test]
    fn generalized_hermite_examples() {
        let p11 = Partition::new(vec![1, 1]).unwrap();
        assert_eq!(generalized_hermite(&p11), rp(&[(4, 1), (0, 1), (8, 1)]));
        let p1 = Partition::new(vec![1]).unwrap();
        assert_eq!(generalized_hermite(&p1), hermite(1));
        let p22 = Partition::new(vec![2, 2]).unwrap();
        assert_eq!(generalized_hermite(&p22).degree(), Some(4));
        for w in 1..=6 {
            for p in Partition::all_of_weight(w) {
                assert_eq!(generalized_hermite(&p).degree(), Some(w as usize), "{p}");
            }
        }
    }

    #[test]
    fn partitions_validate() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(Partition::new(vec![]).is_err());
        assert!(Partition::new(vec![2, 2, 1, 1]).unwrap().is_even());
        assert!(!Partition::new(vec![2, 1]).unwrap().is_even());
        assert!(!Partition::new(vec![2, 2, 1]).unwrap().is_even());
        assert_eq!(Partition::all_of_weight(4).len(), 5);
        assert_eq!(Partition::all_of_weight(8).len(), 22);
    }

    #[test]
    fn partial_sum_examples() {
        assert_eq!(exp_partial_sum(0), RatPoly::one());
        assert_eq!(exp_partial_sum(2), rp(&[(1, 1), (1, 1), (1, 2)]));
        assert_eq!(r_partial_sum(0, &rat(3, 2)), RatPoly::one());
        let b = rat(5, 2);
        assert_eq!(r_partial_sum(1, &b), Poly::linear(-b.clone(), int(1)));
        for n in 0..=10 {
            assert!(exp_partial_sum_residual(n).is_zero(), "n={n}");
        }
        for beta in [rat(1, 2), int(1), rat(5, 2), rat(-2, 3)] {
            for n in 0..=8 {
                assert!(r_partial_sum_residual(n, &beta).is_zero(), "n={n}");
            }
        }
    }

    #[test]
    fn combinatorial_examples() {
        assert_eq!(pochhammer(&rat(7, 3), 0), int(1));
        assert_eq!(pochhammer(&int(3), 3), int(60));
        assert_eq!(gen_binomial(&rat(-1, 2), 2), rat(3, 8));
        assert_eq!(gen_binomial(&int(5), 2), int(10));
        assert_eq!(gen_binomial(&int(2), 5), int(0));
        for n in 0..=8 {
            for alpha in [rat(1, 2), int(1), rat(7, 3), rat(-9, 4)] {
                let l = laguerre(n, &alpha);
                assert_eq!(l.coeff(0), gen_binomial(&(&alpha + int(n as i64)), n));
            }
        }
    }

    #[test]
    fn identity_examples_at_small_n() {
        // L_2^{(0)} - (L_2^{(1)} - L_1^{(1)}) = 0
        let r = &laguerre(2, &int(0)) - &(&laguerre(2, &int(1)) - &laguerre(1, &int(1)));
        assert!(r.is_zero());
        // H_1' - 2 H_0 = 0
        assert!((&hermite(1).differentiate(1) - &hermite(0).scale(&int(2))).is_zero());
        // H_2 = -4 L_1^{(-1/2)}(x^2)
        let l = laguerre(1, &rat(-1, 2)).compose(&Poly::monomial(int(1), 2));
        assert_eq!(hermite(2), l.scale(&int(-4)));
    }

    #[test]
    fn default_identity_grid_is_exact() {
        let outcomes = check_classical_identities(&IdentityGrid::default());
        assert!(outcomes.len() > 400);
        let failures: Vec<_> = outcomes.iter().filter(|o| !o.passed()).collect();
        assert!(failures.is_empty(), "{failures:?}");
    }

    #[test]
    fn constructors_are_deterministic() {
        assert_eq!(laguerre(7, &rat(7, 3)), laguerre(7, &rat(7, 3)));
        assert_eq!(jacobi(6, &rat(1, 2), &rat(5, 2)), jacobi(6, &rat(1, 2), &rat(5, 2)));
    }
}
