//! Exceptional Laguerre, Jacobi and Hermite polynomials.
//!
//! Each family is available through its product (or Wronskian) formula and
//! through a closed form of its integral representation; both are exact.
//! The first-order relations tying each family to classical polynomials are
//! exposed as residual computations.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::check::CaseOutcome;
use crate::classical::{
    gen_binomial, generalized_hermite, hermite, hermite_or_zero, jacobi, jacobi_or_zero, laguerre,
    laguerre_or_zero, partition_hermite_indices, Partition,
};
use crate::poly::{int, rat, wronskian, Poly, RatPoly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Family {
    LagI,
    LagII,
    LagIII,
    Jacobi,
    /// Exceptional Hermite for the partition `(1,1)`.
    Hermite11,
    HermiteGeneral(Partition),
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::LagI => "lag1",
            Family::LagII => "lag2",
            Family::LagIII => "lag3",
            Family::Jacobi => "jacobi",
            Family::Hermite11 => "hermite11",
            Family::HermiteGeneral(_) => "xhermite",
        }
    }

    pub fn methods(&self) -> &'static [Method] {
        match self {
            Family::LagI | Family::LagII | Family::LagIII | Family::Jacobi => {
                &[Method::Product, Method::Integral]
            }
            Family::Hermite11 => &[Method::Wronskian, Method::ClosedForm, Method::Integral],
            Family::HermiteGeneral(_) => &[Method::Wronskian],
        }
    }

    pub fn default_method(&self) -> Method {
        match self {
            Family::Hermite11 => Method::ClosedForm,
            Family::HermiteGeneral(_) => Method::Wronskian,
            _ => Method::Product,
        }
    }

    /// The partition behind a Hermite family.
    pub fn partition(&self) -> Option<Partition> {
        match self {
            Family::Hermite11 => Some(Partition::new(vec![1, 1]).expect("valid partition")),
            Family::HermiteGeneral(p) => Some(p.clone()),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Product,
    Integral,
    Wronskian,
    ClosedForm,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Product => "product",
            Method::Integral => "integral",
            Method::Wronskian => "wronskian",
            Method::ClosedForm => "closed_form",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "product" => Some(Method::Product),
            "integral" => Some(Method::Integral),
            "wronskian" => Some(Method::Wronskian),
            "closed_form" | "closed-form" => Some(Method::ClosedForm),
            _ => None,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum XopError {
    #[error("invalid parameters for {family}: requires {constraint}")]
    Constraint {
        family: &'static str,
        constraint: String,
    },
    #[error("degree n={n} is missing from the family (requires n >= m = {m})")]
    DegreeGap { n: u32, m: u32 },
    #[error("type III requires n = 0 or n >= m+1 (got n={n}, m={m})")]
    TypeThreeGap { n: u32, m: u32 },
    #[error("n={n} is not an admissible degree for partition {lambda}")]
    NotAdmissible { n: u32, lambda: String },
    #[error("method {method} is not available for {family}")]
    UnsupportedMethod {
        method: &'static str,
        family: &'static str,
    },
    #[error("relation {relation} leaves a nonzero residual: {residual}")]
    NonzeroResidual { relation: &'static str, residual: String },
}

/// One member of an exceptional family: family tag plus `m`, `n`, `α`, `β`.
///
/// `α` is ignored by the Hermite families and `β` by everything except
/// Jacobi. For Hermite families `m` is the length of the partition.
#[derive(Debug, Clone, PartialEq)]
pub struct XopSpec {
    pub family: Family,
    pub m: u32,
    pub n: u32,
    pub alpha: Rational,
    pub beta: Rational,
}

/// Whether `n` lies in the admissible degree set of `λ`:
/// `n >= |λ| - len` and `n != |λ| + λ_j - j` for every `j`.
pub fn admissible_degree(lambda: &Partition, n: u32) -> bool {
    let w = lambda.weight() as i64;
    let len = lambda.len() as i64;
    let n = n as i64;
    n >= w - len
        && lambda
            .parts()
            .iter()
            .enumerate()
            .all(|(j, &part)| n != w + part as i64 - (j as i64 + 1))
}

impl XopSpec {
    pub fn lag1(m: u32, n: u32, alpha: Rational) -> Self {
        Self::laguerre_like(Family::LagI, m, n, alpha)
    }

    pub fn lag2(m: u32, n: u32, alpha: Rational) -> Self {
        Self::laguerre_like(Family::LagII, m, n, alpha)
    }

    pub fn lag3(m: u32, n: u32, alpha: Rational) -> Self {
        Self::laguerre_like(Family::LagIII, m, n, alpha)
    }

    fn laguerre_like(family: Family, m: u32, n: u32, alpha: Rational) -> Self {
        Self {
            family,
            m,
            n,
            alpha,
            beta: Rational::zero(),
        }
    }

    pub fn jacobi(m: u32, n: u32, alpha: Rational, beta: Rational) -> Self {
        Self {
            family: Family::Jacobi,
            m,
            n,
            alpha,
            beta,
        }
    }

    pub fn hermite11(n: u32) -> Self {
        Self {
            family: Family::Hermite11,
            m: 2,
            n,
            alpha: Rational::zero(),
            beta: Rational::zero(),
        }
    }

    pub fn hermite(lambda: Partition, n: u32) -> Self {
        Self {
            m: lambda.len() as u32,
            family: Family::HermiteGeneral(lambda),
            n,
            alpha: Rational::zero(),
            beta: Rational::zero(),
        }
    }

    /// Short text naming the polynomial, used as a report key.
    pub fn descriptor(&self) -> String {
        let (m, n, a, b) = (self.m, self.n, &self.alpha, &self.beta);
        match &self.family {
            Family::LagI | Family::LagII | Family::LagIII => {
                format!("{} m={m} n={n} alpha={a}", self.family.name())
            }
            Family::Jacobi => format!("jacobi m={m} n={n} alpha={a} beta={b}"),
            Family::Hermite11 => format!("hermite11 n={n}"),
            Family::HermiteGeneral(p) => format!("xhermite lambda={p} n={n}"),
        }
    }

    fn constraint(&self, ok: bool, constraint: &str) -> Result<(), XopError> {
        if ok {
            Ok(())
        } else {
            Err(XopError::Constraint {
                family: self.family.name(),
                constraint: String::from(constraint),
            })
        }
    }

    /// Checks the family's parameter constraints, naming the first one violated.
    pub fn validate(&self) -> Result<(), XopError> {
        let (m, n) = (self.m, self.n);
        let a = &self.alpha;
        let degree_gap = || {
            if n < m {
                Err(XopError::DegreeGap { n, m })
            } else {
                Ok(())
            }
        };
        match &self.family {
            Family::LagI => {
                self.constraint(m >= 1, "m >= 1")?;
                self.constraint(*a > Rational::zero(), "alpha > 0")?;
                degree_gap()
            }
            Family::LagII => {
                self.constraint(m >= 1, "m >= 1")?;
                self.constraint(*a > int(m as i64 - 1), "alpha > m-1")?;
                degree_gap()
            }
            Family::LagIII => {
                self.constraint(m >= 1, "m >= 1")?;
                self.constraint(*a > int(-1) && *a < Rational::zero(), "-1 < alpha < 0")?;
                if n != 0 && n <= m {
                    return Err(XopError::TypeThreeGap { n, m });
                }
                Ok(())
            }
            Family::Jacobi => {
                self.constraint(m >= 1, "m >= 1")?;
                self.constraint(self.beta > Rational::zero(), "beta > 0")?;
                let s = a + int(1) - int(m as i64);
                self.constraint(s > Rational::zero(), "alpha+1-m > 0")?;
                let t = &s - &self.beta;
                let hits = t.is_integer() && t >= Rational::zero() && t < int(m as i64);
                self.constraint(!hits, "alpha+1-m-beta not in {0,...,m-1}")?;
                degree_gap()
            }
            Family::Hermite11 => {
                self.constraint(n >= 3, "n >= 3")?;
                self.check_admissible()
            }
            Family::HermiteGeneral(_) => self.check_admissible(),
        }
    }

    fn check_admissible(&self) -> Result<(), XopError> {
        let lambda = self.family.partition().expect("hermite family");
        if admissible_degree(&lambda, self.n) {
            Ok(())
        } else {
            Err(XopError::NotAdmissible {
                n: self.n,
                lambda: format!("{lambda}"),
            })
        }
    }

    fn mi(&self) -> i64 {
        self.m as i64
    }

    fn ni(&self) -> i64 {
        self.n as i64
    }
}

impl fmt::Display for XopSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

fn sign(k: u32) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn unsupported(spec: &XopSpec, method: Method) -> XopError {
    XopError::UnsupportedMethod {
        method: method.name(),
        family: spec.family.name(),
    }
}

/// Any family through any of its methods.
pub fn evaluate(spec: &XopSpec, method: Method) -> Result<RatPoly, XopError> {
    match spec.family {
        Family::LagI | Family::LagII | Family::LagIII => xlaguerre(spec, method),
        Family::Jacobi => xjacobi(spec, method),
        Family::Hermite11 | Family::HermiteGeneral(_) => xhermite(spec, method),
    }
}

/// Exceptional Laguerre polynomial of type I, II or III.
pub fn xlaguerre(spec: &XopSpec, method: Method) -> Result<RatPoly, XopError> {
    spec.validate()?;
    let (m, n) = (spec.mi(), spec.ni());
    let a = &spec.alpha;
    let one = int(1);
    let lag = |k: i64, alpha: Rational| laguerre_or_zero(k, &alpha);
    match (&spec.family, method) {
        (Family::LagI, Method::Product) => Ok(&(&lag(m, a.clone()).reflect()
            * &lag(n - m, a - &one))
            + &(&lag(m, a - &one).reflect() * &lag(n - m - 1, a.clone()))),
        (Family::LagI, Method::Integral) => {
            // x^{-α} ∫_0^x t^{α-1} c(t) dt taken monomial by monomial
            let c = &lag(m, a - &one).reflect() * &lag(n - m, a - &one);
            let coeffs = c
                .coeffs()
                .iter()
                .enumerate()
                .map(|(k, ck)| ck / (a + int(k as i64)))
                .collect();
            Ok(Poly::new(coeffs).scale(&(a + int(n))))
        }
        (Family::LagII, Method::Product) => {
            let first = (&lag(m, -a - &one) * &lag(n - m - 1, a + int(2))).shift_up(1);
            let second = (&lag(m, -a - int(2)) * &lag(n - m, a + &one))
                .scale(&(int(m) - a - &one));
            Ok(&first + &second)
        }
        (Family::LagII, Method::Integral) => {
            // e^x ∫_x^∞ e^{-t} p(t) dt = Σ_j p^{(j)}(x)
            let p = &lag(m, -a - &one) * &lag(n - m, a + &one);
            let mut sum = RatPoly::zero();
            let mut term = p;
            while !term.is_zero() {
                sum = &sum + &term;
                term = term.differentiate(1);
            }
            Ok(sum.scale(&-(a + int(n + 1 - 2 * m))))
        }
        (Family::LagIII, Method::Product) => {
            if n == 0 {
                return Ok(RatPoly::one());
            }
            let first = (&lag(n - m - 2, a + int(2)) * &lag(m, -a - &one).reflect()).shift_up(1);
            let second = (&lag(m + 1, -a - int(2)).reflect() * &lag(n - m - 1, a + &one))
                .scale(&int(m + 1));
            Ok(&first + &second)
        }
        (Family::LagIII, Method::Integral) => {
            if n == 0 {
                return Ok(RatPoly::one());
            }
            let integrand = &lag(n - m - 1, a + &one) * &lag(m, -a - &one).reflect();
            Ok(&integrand.antiderivative().scale(&int(n))
                + &RatPoly::constant(lag3_constant(spec)))
        }
        _ => Err(unsupported(spec, method)),
    }
}

/// Value at the origin of the type III polynomial:
/// `(m+1) C(n-m+α, n-m-1) C(m-α-1, m+1)`.
pub fn lag3_constant(spec: &XopSpec) -> Rational {
    let (m, n) = (spec.m, spec.n);
    let a = &spec.alpha;
    int(m as i64 + 1)
        * gen_binomial(&(int(n as i64 - m as i64) + a), n - m - 1)
        * gen_binomial(&(int(m as i64 - 1) - a), m + 1)
}

/// `(-1)^m (β+n)(α+n-2m+1)/(α+n-m+1)`, the constant of the Jacobi first-order relation.
pub fn jacobi_relation_constant(spec: &XopSpec) -> Rational {
    let (m, n) = (spec.mi(), spec.ni());
    let (a, b) = (&spec.alpha, &spec.beta);
    sign(spec.m) * (b + int(n)) * (a + int(n - 2 * m + 1)) / (a + int(n - m + 1))
}

/// Exceptional Jacobi polynomial.
pub fn xjacobi(spec: &XopSpec, method: Method) -> Result<RatPoly, XopError> {
    spec.validate()?;
    if spec.family != Family::Jacobi {
        return Err(unsupported(spec, method));
    }
    let (m, n) = (spec.mi(), spec.ni());
    let (a, b) = (&spec.alpha, &spec.beta);
    let one = int(1);
    match method {
        Method::Product => {
            let half_xm1 = Poly::linear(rat(1, 2), rat(-1, 2));
            let first = &(&jacobi(spec.m, &(-a - &one), &(b - &one))
                * &jacobi_or_zero(n - m - 1, &(a + int(2)), b))
                * &half_xm1.scale(&(a + b + int(1 + n - m)));
            let second = (&jacobi(spec.m, &(-a - int(2)), b)
                * &jacobi_or_zero(n - m, &(a + &one), &(b - &one)))
                .scale(&(a + &one - int(m)));
            let k = sign(spec.m) / (a + int(1 + n - m));
            Ok((&first + &second).scale(&k))
        }
        Method::Integral => {
            // (1+x)^{-β} ∫_{-1}^x (1+t)^{β-1} g(t) dt in powers of (1+t)
            let g = &jacobi(spec.m, &(-a - &one), &(b - &one))
                * &jacobi_or_zero(n - m, &(a + &one), &(b - &one));
            let minus_one = int(-1);
            let e: Vec<Rational> = g
                .shift_basis(&minus_one)
                .iter()
                .enumerate()
                .map(|(k, ek)| ek / (b + int(k as i64)))
                .collect();
            Ok(Poly::from_shifted_basis(&e, &minus_one).scale(&jacobi_relation_constant(spec)))
        }
        _ => Err(unsupported(spec, method)),
    }
}

/// Exceptional Hermite polynomial.
pub fn xhermite(spec: &XopSpec, method: Method) -> Result<RatPoly, XopError> {
    spec.validate()?;
    let lambda = spec.family.partition().ok_or_else(|| unsupported(spec, method))?;
    let n = spec.ni();
    match (method, &spec.family) {
        (Method::Wronskian, _) => {
            let mut polys: Vec<RatPoly> = partition_hermite_indices(&lambda)
                .into_iter()
                .map(hermite)
                .collect();
            let last = n - lambda.weight() as i64 + lambda.len() as i64;
            polys.push(hermite_or_zero(last));
            Ok(wronskian(&polys).expect("nonempty list"))
        }
        (Method::ClosedForm, Family::Hermite11) => {
            let two_x = Poly::monomial(int(-2), 1);
            let quad = Poly::new(vec![int(n - 2), Rational::zero(), int(2 * n)]);
            let inner = &(&two_x * &hermite_or_zero(n - 1)) + &(&quad * &hermite_or_zero(n - 2));
            Ok(inner.scale(&int(16 * (n - 1))))
        }
        (Method::Integral, Family::Hermite11) => {
            let h11 = generalized_hermite(&lambda);
            let integrand = &h11 * &hermite_or_zero(n - 3);
            let c0 = hermite_or_zero(n - 2).coeff(0) * int(16 * (n - 1) * (n - 2));
            Ok(&integrand.antiderivative().scale(&int(8 * n * (n - 1) * (n - 2)))
                + &RatPoly::constant(c0))
        }
        _ => Err(unsupported(spec, method)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationTag {
    /// `x y' + α y = Q^I · L_m^{(α-1)}(-x)`.
    Type1,
    /// `y' - y = (α+n+1-2m) L_m^{(-α-1)} L_{n-m}^{(α+1)}`.
    Type2,
    /// `y' = n L_{n-m-1}^{(α+1)} L_m^{(-α-1)}(-x)`.
    Type3,
    /// `(1+x) y' + β y = c · P_{n-m}^{(α+1,β-1)} P_m^{(-α-1,β-1)}`.
    JacobiRel,
    /// `2H_λ'(x y - y') + H_λ'' y` divided by `H_λ`.
    HermiteQ,
}

impl RelationTag {
    pub fn name(self) -> &'static str {
        match self {
            RelationTag::Type1 => "type1-relation",
            RelationTag::Type2 => "type2-relation",
            RelationTag::Type3 => "type3-relation",
            RelationTag::JacobiRel => "jacobi-relation",
            RelationTag::HermiteQ => "hermite-divisibility",
        }
    }
}

/// A first-order relation evaluated exactly: `residual` is zero when it holds.
///
/// `witness` is the classical-side factor (`Q^I_{n-m}`, the product on the
/// right-hand side, or the quotient `Q_{n,λ}` for Hermite).
#[derive(Debug, Clone, PartialEq)]
pub struct OdeRelation {
    pub tag: RelationTag,
    pub residual: RatPoly,
    pub witness: RatPoly,
}

impl OdeRelation {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }

    pub fn require_zero(self) -> Result<Self, XopError> {
        if self.holds() {
            Ok(self)
        } else {
            Err(XopError::NonzeroResidual {
                relation: self.tag.name(),
                residual: format!("{}", self.residual),
            })
        }
    }
}

/// The family's first-order relation evaluated on the product (or
/// Wronskian) path.
pub fn ode_residual(spec: &XopSpec) -> Result<OdeRelation, XopError> {
    let y = evaluate(spec, spec.family.default_method())?;
    let dy = y.differentiate(1);
    let (m, n) = (spec.mi(), spec.ni());
    let a = &spec.alpha;
    let one = int(1);
    let rel = match &spec.family {
        Family::LagI => {
            let witness = laguerre_or_zero(n - m, &(a - &one)).scale(&(a + int(n)));
            let rhs = &witness * &laguerre(spec.m, &(a - &one)).reflect();
            let lhs = &dy.shift_up(1) + &y.scale(a);
            OdeRelation {
                tag: RelationTag::Type1,
                residual: &lhs - &rhs,
                witness,
            }
        }
        Family::LagII => {
            let witness = (&laguerre(spec.m, &(-a - &one)) * &laguerre_or_zero(n - m, &(a + &one)))
                .scale(&(a + int(n + 1 - 2 * m)));
            OdeRelation {
                tag: RelationTag::Type2,
                residual: &(&dy - &y) - &witness,
                witness,
            }
        }
        Family::LagIII => {
            let witness = (&laguerre_or_zero(n - m - 1, &(a + &one))
                * &laguerre(spec.m, &(-a - &one)).reflect())
                .scale(&int(n));
            OdeRelation {
                tag: RelationTag::Type3,
                residual: &dy - &witness,
                witness,
            }
        }
        Family::Jacobi => {
            let b = &spec.beta;
            let witness = (&jacobi_or_zero(n - m, &(a + &one), &(b - &one))
                * &jacobi(spec.m, &(-a - &one), &(b - &one)))
                .scale(&jacobi_relation_constant(spec));
            let lhs = &(&dy * &Poly::linear(int(1), int(1))) + &y.scale(b);
            OdeRelation {
                tag: RelationTag::JacobiRel,
                residual: &lhs - &witness,
                witness,
            }
        }
        Family::Hermite11 | Family::HermiteGeneral(_) => {
            let h = generalized_hermite(&spec.family.partition().expect("hermite family"));
            let inner = &y.shift_up(1) - &dy;
            let numer = &(&h.differentiate(1).scale(&int(2)) * &inner) + &(&h.differentiate(2) * &y);
            let (q, r) = numer.div_rem(&h).expect("H_lambda is nonzero");
            OdeRelation {
                tag: RelationTag::HermiteQ,
                residual: r,
                witness: q,
            }
        }
    };
    Ok(rel)
}

/// `y' + L_m^{(α-1)}(-x) L_{n-m-1}^{(α+1)} - L_{m-1}^{(α+1)}(-x) L_{n-m}^{(α-1)}` for type I.
pub fn type1_derivative_residual(spec: &XopSpec) -> Result<RatPoly, XopError> {
    if spec.family != Family::LagI {
        return Err(unsupported(spec, Method::Product));
    }
    let y = xlaguerre(spec, Method::Product)?;
    let (m, n) = (spec.mi(), spec.ni());
    let a = &spec.alpha;
    let one = int(1);
    let expect = &(&laguerre_or_zero(m - 1, &(a + &one)).reflect()
        * &laguerre_or_zero(n - m, &(a - &one)))
        - &(&laguerre(spec.m, &(a - &one)).reflect() * &laguerre_or_zero(n - m - 1, &(a + &one)));
    Ok(&y.differentiate(1) - &expect)
}

/// `y' - 8n(n-1)(n-2) H_{(1,1)} H_{n-3}` for the closed-form `(1,1)` Hermite polynomial.
pub fn hermite11_derivative_residual(n: u32) -> Result<RatPoly, XopError> {
    let spec = XopSpec::hermite11(n);
    let y = xhermite(&spec, Method::ClosedForm)?;
    let ni = n as i64;
    let h11 = generalized_hermite(&spec.family.partition().expect("hermite family"));
    let expect = (&h11 * &hermite_or_zero(ni - 3)).scale(&int(8 * ni * (ni - 1) * (ni - 2)));
    Ok(&y.differentiate(1) - &expect)
}

/// Parameter grid for the exceptional families.
#[derive(Debug, Clone, PartialEq)]
pub struct XopGrid {
    pub m_values: Vec<u32>,
    pub n_max: u32,
    pub lag1_alphas: Vec<Rational>,
    pub lag2_alphas: Vec<Rational>,
    pub lag3_alphas: Vec<Rational>,
    pub jacobi_alphas: Vec<Rational>,
    pub jacobi_betas: Vec<Rational>,
    /// Extra partitions for the general Hermite relation checks.
    pub partitions: Vec<Partition>,
}

impl Default for XopGrid {
    fn default() -> Self {
        Self {
            m_values: vec![1, 2, 3],
            n_max: 12,
            lag1_alphas: vec![rat(1, 2), int(1), rat(3, 2), int(2), rat(7, 3)],
            lag2_alphas: vec![rat(1, 2), rat(3, 2), int(2), rat(5, 2), rat(7, 3), rat(7, 2)],
            lag3_alphas: vec![rat(-1, 2), rat(-1, 3), rat(-3, 4)],
            jacobi_alphas: vec![
                rat(1, 2),
                rat(3, 2),
                rat(5, 2),
                rat(7, 3),
                int(3),
                rat(7, 2),
                int(4),
                rat(9, 2),
            ],
            jacobi_betas: vec![rat(1, 2), int(1), rat(3, 2)],
            partitions: [vec![1], vec![2], vec![2, 1], vec![2, 2], vec![3, 1], vec![1, 1, 1]]
                .into_iter()
                .map(|p| Partition::new(p).expect("valid partition"))
                .collect(),
        }
    }
}

impl XopGrid {
    /// A grid with one `m` value and a small `n` bound.
    pub fn smoke(m: u32, n_max: u32) -> Self {
        Self {
            m_values: vec![m],
            n_max,
            ..Self::default()
        }
    }

    /// Every valid spec of the Laguerre and Jacobi families, in a fixed order.
    pub fn laguerre_jacobi_specs(&self) -> Vec<XopSpec> {
        let mut out = Vec::new();
        for &m in &self.m_values {
            for a in &self.lag1_alphas {
                out.extend((m..=self.n_max).map(|n| XopSpec::lag1(m, n, a.clone())));
            }
            for a in &self.lag2_alphas {
                out.extend((m..=self.n_max).map(|n| XopSpec::lag2(m, n, a.clone())));
            }
            for a in &self.lag3_alphas {
                out.extend((0..=self.n_max).map(|n| XopSpec::lag3(m, n, a.clone())));
            }
            for b in &self.jacobi_betas {
                for a in &self.jacobi_alphas {
                    out.extend(
                        (m..=self.n_max).map(|n| XopSpec::jacobi(m, n, a.clone(), b.clone())),
                    );
                }
            }
        }
        out.retain(|s| s.validate().is_ok());
        out
    }

    /// `(1,1)` Hermite specs `n = 3..=n_max`.
    pub fn hermite11_specs(&self) -> Vec<XopSpec> {
        (3..=self.n_max).map(XopSpec::hermite11).collect()
    }

    /// Admissible general-partition Hermite specs up to `n_max`.
    pub fn general_hermite_specs(&self) -> Vec<XopSpec> {
        let mut out = Vec::new();
        for p in &self.partitions {
            for n in 0..=self.n_max {
                let spec = XopSpec::hermite(p.clone(), n);
                if spec.validate().is_ok() {
                    out.push(spec);
                }
            }
        }
        out
    }

    /// All specs that have an exact first-order relation.
    pub fn all_specs(&self) -> Vec<XopSpec> {
        let mut out = self.laguerre_jacobi_specs();
        out.extend(self.hermite11_specs());
        out.extend(self.general_hermite_specs());
        out
    }
}

fn case_from(spec: &XopSpec, check: &str, r: Result<RatPoly, XopError>) -> CaseOutcome {
    match r {
        Ok(res) => CaseOutcome::exact(spec.descriptor(), check, &res),
        Err(e) => CaseOutcome::new(spec.descriptor(), check)
            .with_status(crate::check::Status::Fail)
            .with_detail(format!("{e}")),
    }
}

/// Product path against integral (and Wronskian) paths, exactly.
pub fn path_agreement_cases(spec: &XopSpec) -> Vec<CaseOutcome> {
    let methods = spec.family.methods();
    let base = methods[0];
    let reference = evaluate(spec, base);
    let mut out = Vec::new();
    for &other in &methods[1..] {
        let check = format!("{}-vs-{}", base.name(), other.name());
        let diff = match (&reference, evaluate(spec, other)) {
            (Ok(r), Ok(o)) => Ok(r - &o),
            (Err(e), _) => Err(e.clone()),
            (_, Err(e)) => Err(e),
        };
        out.push(case_from(spec, &check, diff));
    }
    let degree = reference.map(|y| {
        if y.degree() == Some(spec.n as usize) {
            RatPoly::zero()
        } else {
            // report the degree shortfall as a nonzero residual
            RatPoly::constant(int(spec.n as i64) - int(y.degree().map_or(-1, |d| d as i64)))
        }
    });
    out.push(case_from(spec, "degree-equals-n", degree));
    out
}

/// Exact first-order relation and derivative identity checks for one spec.
pub fn relation_cases(spec: &XopSpec) -> Vec<CaseOutcome> {
    let mut out = Vec::new();
    let rel = ode_residual(spec);
    let check = rel
        .as_ref()
        .map(|r| r.tag.name())
        .unwrap_or("relation");
    out.push(case_from(spec, check, rel.map(|r| r.residual)));
    match spec.family {
        Family::LagI => out.push(case_from(
            spec,
            "type1-derivative-identity",
            type1_derivative_residual(spec),
        )),
        Family::Hermite11 => out.push(case_from(
            spec,
            "hermite11-derivative-identity",
            hermite11_derivative_residual(spec.n),
        )),
        _ => {}
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(coeffs: &[i64]) -> RatPoly {
        Poly::new(coeffs.iter().map(|&v| int(v)).collect())
    }

    #[test]
    fn laguerre_type_one_examples() {
        let spec = XopSpec::lag1(1, 1, int(1));
        assert_eq!(xlaguerre(&spec, Method::Product).unwrap(), ip(&[2, 1]));
        assert_eq!(xlaguerre(&spec, Method::Integral).unwrap(), ip(&[2, 1]));
        let rel = ode_residual(&spec).unwrap();
        assert!(rel.holds());
        assert_eq!(rel.witness, ip(&[2]));
    }

    #[test]
    fn laguerre_type_two_example() {
        let spec = XopSpec::lag2(1, 1, int(2));
        assert_eq!(xlaguerre(&spec, Method::Product).unwrap(), ip(&[6, 2]));
        assert!(ode_residual(&XopSpec::lag2(1, 2, int(2))).unwrap().holds());
    }

    #[test]
    fn laguerre_type_three_base_case_and_gaps() {
        let spec = XopSpec::lag3(2, 0, rat(-1, 2));
        assert_eq!(xlaguerre(&spec, Method::Product).unwrap(), RatPoly::one());
        assert_eq!(xlaguerre(&spec, Method::Integral).unwrap(), RatPoly::one());
        for n in 1..=2 {
            assert_eq!(
                xlaguerre(&XopSpec::lag3(2, n, rat(-1, 2)), Method::Product),
                Err(XopError::TypeThreeGap { n, m: 2 })
            );
        }
    }

    #[test]
    fn degree_gaps_and_constraints() {
        assert_eq!(
            xlaguerre(&XopSpec::lag1(2, 1, int(1)), Method::Product),
            Err(XopError::DegreeGap { n: 1, m: 2 })
        );
        let err = XopSpec::lag1(1, 2, int(0)).validate().unwrap_err();
        assert!(format!("{err}").contains("alpha > 0"));
        let err = XopSpec::lag2(3, 4, int(2)).validate().unwrap_err();
        assert!(format!("{err}").contains("alpha > m-1"));
        let err = XopSpec::jacobi(1, 2, rat(3, 2), int(0)).validate().unwrap_err();
        assert!(format!("{err}").contains("beta > 0"));
        // α+1-m-β = 1 for m=2
        let err = XopSpec::jacobi(2, 3, rat(7, 2), rat(3, 2)).validate().unwrap_err();
        assert!(format!("{err}").contains("alpha+1-m-beta"));
    }

    #[test]
    fn jacobi_examples() {
        let (a, b) = (rat(3, 2), rat(1, 2));
        let spec = XopSpec::jacobi(1, 1, a.clone(), b.clone());
        let product = xjacobi(&spec, Method::Product).unwrap();
        let reduced = jacobi(1, &(-&a - int(2)), &b).scale(&(-&a / (&a + int(1))));
        assert_eq!(product, reduced);
        assert_eq!(xjacobi(&spec, Method::Integral).unwrap(), product);
        assert!(ode_residual(&spec).unwrap().holds());
    }

    #[test]
    fn hermite_examples() {
        let spec = XopSpec::hermite11(3);
        let expect = ip(&[0, 192, 0, 128]);
        for method in [Method::ClosedForm, Method::Wronskian, Method::Integral] {
            assert_eq!(xhermite(&spec, method).unwrap(), expect, "{method}");
        }
        let y4 = xhermite(&XopSpec::hermite11(4), Method::Integral).unwrap();
        assert_eq!(y4.coeff(0), int(-192));
        let rel = ode_residual(&spec).unwrap();
        assert!(rel.holds());
    }

    #[test]
    fn admissible_degrees() {
        let l11 = Partition::new(vec![1, 1]).unwrap();
        let admissible: Vec<u32> = (0..6).filter(|&n| admissible_degree(&l11, n)).collect();
        assert_eq!(admissible, vec![0, 3, 4, 5]);
        let err = xhermite(&XopSpec::hermite(l11, 2), Method::Wronskian).unwrap_err();
        assert!(matches!(err, XopError::NotAdmissible { n: 2, .. }));
        assert!(XopSpec::hermite11(2).validate().is_err());
    }

    #[test]
    fn general_partitions_have_degree_n() {
        let grid = XopGrid {
            n_max: 8,
            ..XopGrid::default()
        };
        for spec in grid.general_hermite_specs() {
            let y = xhermite(&spec, Method::Wronskian).unwrap();
            assert_eq!(y.degree(), Some(spec.n as usize), "{spec}");
        }
    }

    #[test]
    fn unsupported_methods() {
        let spec = XopSpec::lag1(1, 2, int(1));
        assert!(matches!(
            evaluate(&spec, Method::Wronskian),
            Err(XopError::UnsupportedMethod { .. })
        ));
        let h = XopSpec::hermite(Partition::new(vec![2]).unwrap(), 3);
        assert!(evaluate(&h, Method::ClosedForm).is_err());
    }

    #[test]
    fn smoke_grid_passes() {
        let grid = XopGrid::smoke(1, 4);
        for spec in grid.all_specs() {
            for case in path_agreement_cases(&spec).into_iter().chain(relation_cases(&spec)) {
                assert!(case.passed(), "{case:?}");
            }
        }
    }
}
