//! Exact operation-count model of both dynamics formulations.
//!
//! Costs are pairs (multiplications, additions) of real numbers. Per-link
//! costs are polynomials in the link index `i`; whole-chain costs are
//! polynomials in the number of links `n`, obtained with
//! `Σ 1 = n`, `Σ i = n(n+1)/2` and `Σ i² = (n²+n)(2n+1)/6`. All arithmetic is
//! over exact rationals.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::dqalg::OpTally;
use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

fn r(v: i64) -> Rational {
    Rational::from_integer(v)
}

/// Polynomial with rational coefficients in a single variable, lowest degree
/// first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly(Vec<Rational>);

impl Poly {
    pub fn zero() -> Self {
        Self(Vec::new())
    }

    pub fn constant(c: i64) -> Self {
        Self::from_coeffs(vec![r(c)])
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::from_coeffs(vec![r(0), r(1)])
    }

    /// `c₀ + c₁ x + c₂ x² + …`
    pub fn from_coeffs(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|v| v.is_zero()) {
            c.pop();
        }
        Self(c)
    }

    /// Integer coefficients, lowest degree first.
    pub fn from_ints(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&v| r(v)).collect())
    }

    /// Coefficient of `x^k`.
    pub fn coeff(&self, k: usize) -> Rational {
        self.0.get(k).copied().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn eval(&self, x: Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, &c| acc * x + c)
    }

    pub fn scale(&self, s: Rational) -> Self {
        Self::from_coeffs(self.0.iter().map(|&c| c * s).collect())
    }

    /// `Σ_{i=1}^{n} p(i)` as a polynomial in `n`. Supports degree ≤ 2.
    pub fn sum_to_n(&self) -> Result<Self> {
        if self.degree() > 2 {
            return Err(Error::Domain(
                "closed-form sums are available up to degree 2".into(),
            ));
        }
        let n = Poly::var();
        let ones = n.clone();
        let linear = (&n * &(&n + &Poly::constant(1))).scale(Ratio::new(1, 2));
        let square = (&(&(&n * &n) + &n) * &(&n.scale(r(2)) + &Poly::constant(1))).scale(Ratio::new(1, 6));
        Ok(&(&ones.scale(self.coeff(0)) + &linear.scale(self.coeff(1))) + &square.scale(self.coeff(2)))
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let len = self.0.len().max(rhs.0.len());
        Poly::from_coeffs((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self + &rhs.scale(r(-1))
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.0.is_empty() || rhs.0.is_empty() {
            return Poly::zero();
        }
        let mut c = vec![Rational::zero(); self.0.len() + rhs.0.len() - 1];
        for (a, &x) in self.0.iter().enumerate() {
            for (b, &y) in rhs.0.iter().enumerate() {
                c[a + b] += x * y;
            }
        }
        Poly::from_coeffs(c)
    }
}

fn fmt_coeff(c: Rational) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else if *c.denom() == 2 {
        format!("{}", c.to_f64().unwrap_or(f64::NAN))
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl Poly {
    /// Renders the polynomial with the variable name `x`, highest degree
    /// first, e.g. `118.5n^2 + 78.5n`.
    pub fn render(&self, x: &str) -> String {
        let mut out = String::new();
        for k in (0..self.0.len()).rev() {
            let c = self.0[k];
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let body = match k {
                0 => fmt_coeff(mag),
                _ => {
                    let coeff = if mag.is_one() {
                        String::new()
                    } else if mag.is_integer() || *mag.denom() == 2 {
                        fmt_coeff(mag)
                    } else {
                        format!("({})", fmt_coeff(mag))
                    };
                    let power = if k == 1 { String::new() } else { format!("^{k}") };
                    format!("{coeff}{x}{power}")
                }
            };
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("n"))
    }
}

/// A pair (multiplications, additions).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct OpCost {
    pub mults: Rational,
    pub adds: Rational,
}

impl OpCost {
    pub fn new(mults: i64, adds: i64) -> Self {
        Self {
            mults: r(mults),
            adds: r(adds),
        }
    }

    /// Both counts as integers, if they are.
    pub fn as_integers(&self) -> Option<(i64, i64)> {
        (self.mults.is_integer() && self.adds.is_integer())
            .then(|| (self.mults.to_integer(), self.adds.to_integer()))
    }
}

impl From<OpTally> for OpCost {
    fn from(t: OpTally) -> Self {
        Self::new(t.mults as i64, t.adds as i64)
    }
}

impl Add for OpCost {
    type Output = OpCost;

    fn add(self, rhs: OpCost) -> OpCost {
        OpCost {
            mults: self.mults + rhs.mults,
            adds: self.adds + rhs.adds,
        }
    }
}

impl fmt::Display for OpCost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", fmt_coeff(self.mults), fmt_coeff(self.adds))
    }
}

/// Multiplication and addition counts as polynomials in one variable.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CostPolynomial {
    pub mults: Poly,
    pub adds: Poly,
}

impl CostPolynomial {
    pub fn new(mults: Poly, adds: Poly) -> Self {
        Self { mults, adds }
    }

    /// Integer coefficients, lowest degree first.
    pub fn from_ints(mults: &[i64], adds: &[i64]) -> Self {
        Self::new(Poly::from_ints(mults), Poly::from_ints(adds))
    }

    pub fn constant(c: OpCost) -> Self {
        Self::new(Poly::from_coeffs(vec![c.mults]), Poly::from_coeffs(vec![c.adds]))
    }

    pub fn eval(&self, x: i64) -> OpCost {
        OpCost {
            mults: self.mults.eval(r(x)),
            adds: self.adds.eval(r(x)),
        }
    }

    /// Both counts multiplied by the polynomial `k`.
    pub fn times(&self, k: &Poly) -> Self {
        Self::new(&self.mults * k, &self.adds * k)
    }

    pub fn sum_to_n(&self) -> Result<Self> {
        Ok(Self::new(self.mults.sum_to_n()?, self.adds.sum_to_n()?))
    }
}

impl Add for &CostPolynomial {
    type Output = CostPolynomial;

    fn add(self, rhs: &CostPolynomial) -> CostPolynomial {
        CostPolynomial::new(&self.mults + &rhs.mults, &self.adds + &rhs.adds)
    }
}

impl Add for CostPolynomial {
    type Output = CostPolynomial;

    fn add(self, rhs: CostPolynomial) -> CostPolynomial {
        &self + &rhs
    }
}

impl Mul<i64> for CostPolynomial {
    type Output = CostPolynomial;

    fn mul(self, k: i64) -> CostPolynomial {
        self.times(&Poly::constant(k))
    }
}

impl From<OpCost> for CostPolynomial {
    fn from(c: OpCost) -> Self {
        Self::constant(c)
    }
}

/// Fixed-size elementary operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Primitive {
    /// `M₃(𝕀) a`
    QuatM3,
    QuatScale,
    QuatConj,
    QuatAdd,
    QuatMul,
    QuatCross,
    QuatAdjoint,
    DqScale,
    DqConj,
    DqAdd,
    DqMul,
    DqAdjoint,
    DqCross,
    /// `S(c)` for `c ∈ ℝ³`
    Skew3,
    /// `S̄(ω, Ψ)`
    SkewBar,
}

impl Primitive {
    pub const ALL: [Primitive; 15] = [
        Primitive::QuatM3,
        Primitive::QuatScale,
        Primitive::QuatConj,
        Primitive::QuatAdd,
        Primitive::QuatMul,
        Primitive::QuatCross,
        Primitive::QuatAdjoint,
        Primitive::DqScale,
        Primitive::DqConj,
        Primitive::DqAdd,
        Primitive::DqMul,
        Primitive::DqAdjoint,
        Primitive::DqCross,
        Primitive::Skew3,
        Primitive::SkewBar,
    ];

    pub fn cost(self) -> OpCost {
        use Primitive::*;
        match self {
            QuatM3 => OpCost::new(9, 6),
            QuatScale => OpCost::new(4, 0),
            QuatConj => OpCost::new(3, 0),
            QuatAdd => OpCost::new(0, 4),
            QuatMul => OpCost::new(16, 12),
            // 2 products + difference + halving
            QuatCross => compose(&[(2, QuatMul), (1, QuatAdd), (1, QuatScale)]),
            QuatAdjoint => compose(&[(2, QuatMul), (1, QuatConj)]),
            DqScale => OpCost::new(8, 0),
            DqConj => OpCost::new(6, 0),
            DqAdd => OpCost::new(0, 8),
            DqMul => OpCost::new(48, 40),
            DqAdjoint => compose(&[(2, DqMul), (1, DqConj)]),
            DqCross => compose(&[(2, DqMul), (1, DqAdd), (1, DqScale)]),
            Skew3 => OpCost::new(3, 0),
            SkewBar => OpCost::new(18, 6),
        }
    }

    pub fn label(self) -> &'static str {
        use Primitive::*;
        match self {
            QuatM3 => "M3(I)a",
            QuatScale => "lambda a",
            QuatConj => "a*",
            QuatAdd => "a + b",
            QuatMul => "a b",
            QuatCross => "a x b",
            QuatAdjoint => "Ad(a) b",
            DqScale => "lambda A",
            DqConj => "A*",
            DqAdd => "A + B",
            DqMul => "A B",
            DqAdjoint => "Ad(A) B",
            DqCross => "A x B",
            Skew3 => "S(c)",
            SkewBar => "S_bar(w, Psi)",
        }
    }
}

fn compose(parts: &[(i64, Primitive)]) -> OpCost {
    parts.iter().fold(OpCost::default(), |acc, &(k, p)| {
        let c = p.cost();
        OpCost {
            mults: acc.mults + c.mults * k,
            adds: acc.adds + c.adds * k,
        }
    })
}

/// Table of every fixed-size primitive.
pub fn primitive_costs() -> Vec<(Primitive, OpCost)> {
    Primitive::ALL.iter().map(|&p| (p, p.cost())).collect()
}

fn prim(p: Primitive) -> CostPolynomial {
    p.cost().into()
}

/// `λ A` for an `m × p` matrix: `{mp, 0}`.
pub fn mat_scale(m: &Poly, p: &Poly) -> CostPolynomial {
    CostPolynomial::new(m * p, Poly::zero())
}

/// `A + B` for `m × p` matrices: `{0, mp}`.
pub fn mat_add(m: &Poly, p: &Poly) -> CostPolynomial {
    CostPolynomial::new(Poly::zero(), m * p)
}

/// `A B` with `A` of size `m × p` and `B` of size `p × r`: `{mpr, mr(p-1)}`.
pub fn mat_mul(m: &Poly, p: &Poly, r: &Poly) -> CostPolynomial {
    let mr = m * r;
    CostPolynomial::new(&mr * p, &mr * &(p - &Poly::constant(1)))
}

fn check_n(n: i64) -> Result<()> {
    if n < 1 {
        return Err(Error::Domain(format!(
            "the number of links must be >= 1, got {n}"
        )));
    }
    Ok(())
}

/// Per-link costs of the center-of-mass wrench.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WrenchIntermediate {
    /// `f = m (D(ξ̇) + P(ξ) × D(ξ))`
    pub force: OpCost,
    /// `τ = M₃(𝕀) P(ξ̇) + P(ξ) × M₃(𝕀) P(ξ)`
    pub torque: OpCost,
    /// `ς = f + ε τ`
    pub inertial: OpCost,
    /// `ζ = ς` plus the gravity term
    pub wrench: OpCost,
}

pub fn wrench_intermediate() -> WrenchIntermediate {
    use Primitive::*;
    let force = compose(&[(1, QuatScale), (1, QuatCross), (1, QuatAdd)]);
    let torque = compose(&[(2, QuatM3), (1, QuatCross), (1, QuatAdd)]);
    let inertial = force + torque;
    let wrench = inertial + compose(&[(1, QuatAdd), (1, QuatScale)]);
    WrenchIntermediate {
        force,
        torque,
        inertial,
        wrench,
    }
}

/// Cost of the Newton-Euler formulation, polynomials in `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeCost {
    /// Forward kinematics, an input cost rather than a derived one.
    pub fkine: CostPolynomial,
    pub twists: CostPolynomial,
    pub twist_derivatives: CostPolynomial,
    pub wrenches: CostPolynomial,
    pub total: CostPolynomial,
}

pub fn ne_polynomials() -> NeCost {
    use Primitive::*;
    let n = Poly::var();
    let fkine = CostPolynomial::from_ints(&[-48, 60], &[-40, 44]);
    let twists = (prim(DqAdjoint) * 2 + prim(DqAdd)).times(&n);
    let twist_derivatives = (prim(DqAdjoint) * 2 + prim(DqCross) + prim(DqAdd) * 2 + prim(DqScale)).times(&n);
    let wrenches =
        (CostPolynomial::from(wrench_intermediate().wrench) + prim(DqAdjoint) * 2 + prim(DqAdd)).times(&n);
    let total = &(&(&fkine + &twists) + &twist_derivatives) + &wrenches;
    NeCost {
        fkine,
        twists,
        twist_derivatives,
        wrenches,
        total,
    }
}

/// Newton-Euler cost rows evaluated at `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NeBreakdown {
    pub fkine: OpCost,
    pub twists: OpCost,
    pub twist_derivatives: OpCost,
    pub wrenches: OpCost,
    pub total: OpCost,
}

pub fn cost_ne(n: i64) -> Result<NeBreakdown> {
    check_n(n)?;
    let p = ne_polynomials();
    Ok(NeBreakdown {
        fkine: p.fkine.eval(n),
        twists: p.twists.eval(n),
        twist_derivatives: p.twist_derivatives.eval(n),
        wrenches: p.wrenches.eval(n),
        total: p.total.eval(n),
    })
}

/// Per-link costs of the Gauss-principle model, polynomials in the link
/// index `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GpLinkCost {
    /// Pose Jacobian (input cost).
    pub pose_jacobian: CostPolynomial,
    /// Its time derivative (input cost).
    pub pose_jacobian_derivative: CostPolynomial,
    pub twist_jacobian: CostPolynomial,
    pub twist_jacobian_derivative: CostPolynomial,
    /// `M̄ᵢ = J̄ᵀ Ψ J̄`
    pub inertia: CostPolynomial,
    /// `C̄ᵢ = J̄ᵀ (S̄ J̄ + Ψ J̄̇)`
    pub coriolis: CostPolynomial,
    /// `ḡᵢ = J̄_Dᵀ vec₃(-Ad(r) f_g)`
    pub gravity: CostPolynomial,
}

pub fn gp_link_polynomials() -> GpLinkCost {
    use Primitive::*;
    let i = Poly::var();
    let c = Poly::constant;
    let pose_jacobian = CostPolynomial::from_ints(&[-48, 189], &[-40, 142]);
    let pose_jacobian_derivative = CostPolynomial::from_ints(&[0, 312], &[-8, 268]);
    let twist_jacobian = &(&pose_jacobian + &prim(DqScale)) + &mat_mul(&c(6), &c(8), &i);
    let twist_jacobian_derivative =
        pose_jacobian_derivative.clone() + mat_mul(&c(6), &c(8), &i) * 2 + mat_add(&c(6), &i) + prim(DqScale);
    let inertia = mat_mul(&i, &c(6), &c(6)) + mat_mul(&i, &c(6), &i);
    let coriolis =
        prim(SkewBar) + mat_mul(&c(6), &c(6), &i) * 2 + mat_add(&c(6), &i) + mat_mul(&i, &c(6), &i);
    let gravity = mat_mul(&i, &c(3), &c(1)) + prim(QuatAdjoint);
    GpLinkCost {
        pose_jacobian,
        pose_jacobian_derivative,
        twist_jacobian,
        twist_jacobian_derivative,
        inertia,
        coriolis,
        gravity,
    }
}

/// Cost of the Gauss-principle model, polynomials in `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GpCost {
    pub twist_jacobians: CostPolynomial,
    pub twist_jacobian_derivatives: CostPolynomial,
    pub inertia: CostPolynomial,
    pub coriolis: CostPolynomial,
    pub gravity: CostPolynomial,
    pub total: CostPolynomial,
}

pub fn gp_polynomials() -> GpCost {
    let link = gp_link_polynomials();
    let n = Poly::var();
    let c = Poly::constant;
    let n_minus_1 = &n - &c(1);
    let sum = |p: &CostPolynomial| p.sum_to_n().expect("per-link costs are at most quadratic");
    let twist_jacobians = sum(&link.twist_jacobian);
    let twist_jacobian_derivatives = sum(&link.twist_jacobian_derivative);
    let inertia = sum(&link.inertia) + mat_add(&n, &n).times(&n_minus_1);
    let coriolis = sum(&link.coriolis) + mat_add(&n, &n).times(&n_minus_1);
    let gravity = sum(&link.gravity) + mat_add(&n, &c(1)).times(&n_minus_1);
    let total = inertia.clone()
        + coriolis.clone()
        + gravity.clone()
        + twist_jacobians.clone()
        + twist_jacobian_derivatives.clone()
        + mat_mul(&n, &n, &c(1)) * 2
        + mat_add(&n, &c(1)) * 2;
    GpCost {
        twist_jacobians,
        twist_jacobian_derivatives,
        inertia,
        coriolis,
        gravity,
        total,
    }
}

/// Gauss-principle cost rows evaluated at `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GpBreakdown {
    pub twist_jacobians: OpCost,
    pub twist_jacobian_derivatives: OpCost,
    pub inertia: OpCost,
    pub coriolis: OpCost,
    pub gravity: OpCost,
    pub total: OpCost,
}

pub fn cost_gplc(n: i64) -> Result<GpBreakdown> {
    check_n(n)?;
    let p = gp_polynomials();
    Ok(GpBreakdown {
        twist_jacobians: p.twist_jacobians.eval(n),
        twist_jacobian_derivatives: p.twist_jacobian_derivatives.eval(n),
        inertia: p.inertia.eval(n),
        coriolis: p.coriolis.eval(n),
        gravity: p.gravity.eval(n),
        total: p.total.eval(n),
    })
}

/// Reference costs of the classic vector-based algorithms, for comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicCost {
    /// Newton-Euler with 3D vectors.
    pub newton_euler: CostPolynomial,
    /// Euler-Lagrange.
    pub euler_lagrange: CostPolynomial,
}

pub fn classic_polynomials() -> ClassicCost {
    ClassicCost {
        newton_euler: CostPolynomial::from_ints(&[-48, 150], &[-48, 131]),
        euler_lagrange: CostPolynomial::from_ints(&[-277, 412], &[-201, 320]),
    }
}

/// Classic Newton-Euler and Euler-Lagrange costs at `n`.
pub fn classic_baselines(n: i64) -> Result<(OpCost, OpCost)> {
    check_n(n)?;
    let c = classic_polynomials();
    Ok((c.newton_euler.eval(n), c.euler_lagrange.eval(n)))
}
