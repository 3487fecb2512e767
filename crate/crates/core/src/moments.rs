//! Rule parameters, case dispatch, and every coefficient and weighted moment
//! entering the bounds.
//!
//! Notation used throughout: with rule parameters `(α, λ)` the kernel of the
//! error representation has its zeros at
//!
//! * `c = αλ` (lower node, inside `[0, 1-α]` or to its right),
//! * `m = 1 - α` (split point),
//! * `k = 1 - λ(1-α)` (upper node, inside `[1-α, 1]` or to its left),
//!
//! and the left/right moments integrate `|t - c|` over `[0, m]` and `|t - k|`
//! over `[m, 1]` against optional weights.

use crate::classes::HModulus;
use crate::error::{Error, Result};
use crate::oracle::integrate_adaptive;

/// Absolute tolerance for numerically evaluated moments.
pub const MOMENT_TOLERANCE: f64 = 1e-12;

/// Tolerance on `1/p + 1/q = 1`.
pub const CONJUGATE_TOLERANCE: f64 = 1e-14;

// Roundoff allowance before a branch-active coefficient counts as negative.
const NEGATIVE_ROUNDOFF: f64 = 1e-14;

/// Quadrature rule parameters `(α, λ)` with the derivative exponent `q` and
/// optionally its Hölder conjugate `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RuleParams {
    alpha: f64,
    lambda: f64,
    q: f64,
    p: Option<f64>,
}

impl RuleParams {
    pub fn new(alpha: f64, lambda: f64, q: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) || !(0.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidParams(format!(
                "alpha and lambda must lie in [0, 1], got ({alpha}, {lambda})"
            )));
        }
        if !(q >= 1.0) || !q.is_finite() {
            return Err(Error::InvalidParams(format!(
                "q must be finite and >= 1, got {q}"
            )));
        }
        let rp = RuleParams {
            alpha,
            lambda,
            q,
            p: None,
        };
        debug_assert!(rp.lower_node() <= rp.upper_node() + f64::EPSILON);
        Ok(rp)
    }

    /// Parameters for the Hölder bounds: `q > 1` and `p = q/(q-1)`.
    pub fn holder(alpha: f64, lambda: f64, q: f64) -> Result<Self> {
        Self::new(alpha, lambda, q)?.with_conjugate()
    }

    /// Sets `p = q/(q-1)`; requires `q > 1`.
    pub fn with_conjugate(self) -> Result<Self> {
        if !(self.q > 1.0) {
            return Err(Error::InvalidParams(format!(
                "a conjugate exponent needs q > 1, got {}",
                self.q
            )));
        }
        Ok(RuleParams {
            p: Some(self.q / (self.q - 1.0)),
            ..self
        })
    }

    /// Sets an explicit `p`, checking `1/p + 1/q = 1`.
    pub fn with_p(self, p: f64) -> Result<Self> {
        if !(p > 1.0) || !p.is_finite() {
            return Err(Error::InvalidParams(format!("p must be finite and > 1, got {p}")));
        }
        if (1.0 / p + 1.0 / self.q - 1.0).abs() > CONJUGATE_TOLERANCE {
            return Err(Error::InvalidParams(format!(
                "p = {p} and q = {} are not conjugate",
                self.q
            )));
        }
        Ok(RuleParams { p: Some(p), ..self })
    }

    /// `(α, λ) = (1/2, 1/3)`
    pub fn simpson(q: f64) -> Result<Self> {
        Self::new(0.5, 1.0 / 3.0, q)
    }

    /// `(α, λ) = (1/2, 0)`
    pub fn midpoint(q: f64) -> Result<Self> {
        Self::new(0.5, 0.0, q)
    }

    /// `(α, λ) = (1/2, 1)`
    pub fn trapezoid(q: f64) -> Result<Self> {
        Self::new(0.5, 1.0, q)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn p(&self) -> Option<f64> {
        self.p
    }

    pub(crate) fn require_p(&self) -> Result<f64> {
        self.p.ok_or(Error::ConjugateMissing)
    }

    /// `αλ`
    pub fn lower_node(&self) -> f64 {
        self.alpha * self.lambda
    }

    /// `1 - α`
    pub fn split(&self) -> f64 {
        1.0 - self.alpha
    }

    /// `1 - λ(1-α)`
    pub fn upper_node(&self) -> f64 {
        1.0 - self.lambda * (1.0 - self.alpha)
    }
}

/// Ordering of `{αλ, 1-α, 1-λ(1-α)}` that selects the coefficient pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseBranch {
    /// `αλ <= 1-α <= 1-λ(1-α)`
    MidOrder,
    /// `αλ <= 1-λ(1-α) <= 1-α`
    RightOfUpper,
    /// `1-α <= αλ <= 1-λ(1-α)`
    LeftOfLower,
}

impl CaseBranch {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseBranch::MidOrder => "mid",
            CaseBranch::RightOfUpper => "right",
            CaseBranch::LeftOfLower => "left",
        }
    }
}

impl std::fmt::Display for CaseBranch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Classifies `1-α` against `[αλ, 1-λ(1-α)]`; ties go to the first listed
/// branch.
pub fn branch_select(rp: &RuleParams) -> CaseBranch {
    let (c, m, k) = (rp.lower_node(), rp.split(), rp.upper_node());
    if c <= m && m <= k {
        CaseBranch::MidOrder
    } else if m > k {
        CaseBranch::RightOfUpper
    } else {
        CaseBranch::LeftOfLower
    }
}

/// `(γ₁, γ₂)` with `γ₁ = (1-α)[αλ - (1-α)/2]` and `γ₂ = (αλ)² - γ₁`.
pub fn gamma_coeffs(rp: &RuleParams) -> (f64, f64) {
    let (c, m) = (rp.lower_node(), rp.split());
    let g1 = m * (c - m / 2.0);
    (g1, c * c - g1)
}

/// `(υ₁, υ₂)` with `υ₁ = (1-(1-α)²)/2 - α[1-λ(1-α)]` and
/// `υ₂ = (1+(1-α)²)/2 - (λ+1)(1-α)[1-λ(1-α)]`.
pub fn upsilon_coeffs(rp: &RuleParams) -> (f64, f64) {
    let (m, k) = (rp.split(), rp.upper_node());
    let u1 = (1.0 - m * m) / 2.0 - rp.alpha * k;
    let u2 = (1.0 + m * m) / 2.0 - (rp.lambda + 1.0) * m * k;
    (u1, u2)
}

/// `(∫_0^{1-α} |t-αλ| dt, ∫_{1-α}^1 |t-1+λ(1-α)| dt)`: the branch-active
/// γ and υ.
pub fn active_abs_moments(rp: &RuleParams) -> (f64, f64) {
    let (g1, g2) = gamma_coeffs(rp);
    let (u1, u2) = upsilon_coeffs(rp);
    let left = if rp.lower_node() <= rp.split() { g2 } else { g1 };
    let right = if rp.upper_node() >= rp.split() { u2 } else { u1 };
    (nonnegative(left), nonnegative(right))
}

/// Coefficient pair of the power-mean bound for the selected branch.
pub fn branch_abs_moments(rp: &RuleParams) -> (f64, f64) {
    let (g1, g2) = gamma_coeffs(rp);
    let (u1, u2) = upsilon_coeffs(rp);
    let (l, r) = match branch_select(rp) {
        CaseBranch::MidOrder => (g2, u2),
        CaseBranch::RightOfUpper => (g2, u1),
        CaseBranch::LeftOfLower => (g1, u2),
    };
    (nonnegative(l), nonnegative(r))
}

fn nonnegative(x: f64) -> f64 {
    debug_assert!(x >= -NEGATIVE_ROUNDOFF, "branch-active coefficient {x} < 0");
    x.max(0.0)
}

// `sign(x)|x|^e`; agrees with `powf` for odd integer `e`.
fn signed_pow(x: f64, e: f64) -> f64 {
    x.signum() * x.abs().powf(e)
}

/// `[ε₁, ε₂, ε₃, ε₄]`. Coefficients outside their branch may involve a
/// negative base; those are evaluated as `sign(x)|x|^{p+1}`.
pub fn epsilon_coeffs(rp: &RuleParams) -> Result<[f64; 4]> {
    let e = rp.require_p()? + 1.0;
    let c = rp.lower_node();
    let j = rp.lambda * (1.0 - rp.alpha);
    let a = rp.alpha;
    Ok([
        signed_pow(c, e) + signed_pow(1.0 - a - c, e),
        signed_pow(c, e) - signed_pow(c - 1.0 + a, e),
        signed_pow(j, e) + signed_pow(a - j, e),
        signed_pow(j, e) - signed_pow(j - a, e),
    ])
}

/// Branch-selected `(ε_left, ε_right)` of the Hölder bounds.
pub fn branch_epsilons(rp: &RuleParams) -> Result<(f64, f64)> {
    let [e1, e2, e3, e4] = epsilon_coeffs(rp)?;
    let (l, r) = match branch_select(rp) {
        CaseBranch::MidOrder => (e1, e3),
        CaseBranch::RightOfUpper => (e1, e4),
        CaseBranch::LeftOfLower => (e2, e3),
    };
    Ok((nonnegative(l), nonnegative(r)))
}

/// Branch-selected `(ε_left^{1/p}, ε_right^{1/p})`, evaluated in scaled form
/// so that large `p` does not underflow `x^{p+1}`.
pub fn branch_epsilon_roots(rp: &RuleParams) -> Result<(f64, f64)> {
    let p = rp.require_p()?;
    let c = rp.lower_node();
    let m = rp.split();
    let j = rp.lambda * (1.0 - rp.alpha);
    let a = rp.alpha;
    let (left, right) = match branch_select(rp) {
        CaseBranch::MidOrder => (sum_root(c, m - c, p), sum_root(j, a - j, p)),
        CaseBranch::RightOfUpper => (sum_root(c, m - c, p), diff_root(j, j - a, p)),
        CaseBranch::LeftOfLower => (diff_root(c, c - m, p), sum_root(j, a - j, p)),
    };
    Ok((left, right))
}

// (u^{p+1} + v^{p+1})^{1/p} for u, v >= 0
fn sum_root(u: f64, v: f64, p: f64) -> f64 {
    let (u, v) = (u.max(0.0), v.max(0.0));
    let big = u.max(v);
    if big == 0.0 {
        return 0.0;
    }
    let r = u.min(v) / big;
    big.powf((p + 1.0) / p) * (1.0 + r.powf(p + 1.0)).powf(1.0 / p)
}

// (u^{p+1} - v^{p+1})^{1/p} for 0 <= v <= u
fn diff_root(u: f64, v: f64, p: f64) -> f64 {
    if u <= 0.0 {
        return 0.0;
    }
    let r = (v.max(0.0) / u).min(1.0);
    let tail = if r == 0.0 {
        1.0
    } else {
        -((p + 1.0) * r.ln()).exp_m1()
    };
    u.powf((p + 1.0) / p) * tail.max(0.0).powf(1.0 / p)
}

/// Which half of `[0, 1]` a moment integrates over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `[0, 1-α]` with weight `|t - αλ|`
    Left,
    /// `[1-α, 1]` with weight `|t - 1 + λ(1-α)|`
    Right,
}

/// `∫ |t - node|^p dt` over the side, in closed form (`ε/(p+1)`).
pub fn abs_moment_p(rp: &RuleParams, side: Side) -> Result<f64> {
    let p = rp.require_p()?;
    let [e1, e2, e3, e4] = epsilon_coeffs(rp)?;
    let eps = match side {
        Side::Left if rp.alpha == 1.0 => return Ok(0.0),
        Side::Right if rp.alpha == 0.0 => return Ok(0.0),
        Side::Left if rp.lower_node() <= rp.split() => e1,
        Side::Left => e2,
        Side::Right if rp.upper_node() >= rp.split() => e3,
        Side::Right => e4,
    };
    Ok(nonnegative(eps / (p + 1.0)))
}

/// The weighted moments `μ₁..μ₄` (left side) and `η₁..η₄` (right side) for
/// `h(t) = t^s`.
///
/// `mu[0]`, `mu[1]`: `∫_0^{1-α} |t-αλ| t^s dt` and `... (1-t)^s dt` when
/// `αλ <= 1-α`; `mu[2]`, `mu[3]` the same integrals when `αλ >= 1-α`.
/// `eta[0]`, `eta[1]`: `∫_{1-α}^1 |t-k| t^s dt` and `... (1-t)^s dt` when
/// `k <= 1-α`; `eta[2]`, `eta[3]` when `k >= 1-α`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuEta {
    pub mu: [f64; 4],
    pub eta: [f64; 4],
}

impl MuEta {
    /// `(A-type, B-type)` moment pairs `((t^s, (1-t)^s), (t^s, (1-t)^s))`
    /// for the selected branch.
    pub fn branch_pairs(&self, branch: CaseBranch) -> ((f64, f64), (f64, f64)) {
        let [m1, m2, m3, m4] = self.mu;
        let [e1, e2, e3, e4] = self.eta;
        match branch {
            CaseBranch::MidOrder => ((m1, m2), (e3, e4)),
            CaseBranch::RightOfUpper => ((m1, m2), (e1, e2)),
            CaseBranch::LeftOfLower => ((m3, m4), (e3, e4)),
        }
    }
}

/// `μ*`, `η*` for `h(t) = t^s`, `s` in `(0, 1]`.
pub fn mu_eta_star(rp: &RuleParams, s: f64) -> Result<MuEta> {
    if !(s > 0.0 && s <= 1.0) {
        return Err(Error::InvalidParams(format!("s must lie in (0, 1], got {s}")));
    }
    Ok(power_moments(rp, s))
}

// Closed forms valid for any s >= 0 (s = 0 is the constant modulus).
pub(crate) fn power_moments(rp: &RuleParams, s: f64) -> MuEta {
    let a = rp.alpha;
    let c = rp.lower_node();
    let m = rp.split();
    let k = rp.upper_node();
    let j = rp.lambda * (1.0 - a);
    let s1 = s + 1.0;
    let s2 = s + 2.0;
    let two = 2.0 / (s1 * s2);
    let pw = |x: f64, e: f64| x.powf(e);

    let mu1 = pw(c, s2) * two - c * pw(m, s1) / s1 + pw(m, s2) / s2;
    let mu2 = pw(1.0 - c, s2) * two - (1.0 - c) * (1.0 + pw(a, s1)) / s1 + (1.0 + pw(a, s2)) / s2;
    let mu3 = c * pw(m, s1) / s1 - pw(m, s2) / s2;
    let mu4 = (c - 1.0) * (1.0 - pw(a, s1)) / s1 + (1.0 - pw(a, s2)) / s2;

    let eta1 = (1.0 - pw(m, s2)) / s2 - k * (1.0 - pw(m, s1)) / s1;
    let eta2 = j * pw(a, s1) / s1 - pw(a, s2) / s2;
    let eta3 = 2.0 * pw(k, s2) / (s1 * s2) - (1.0 + pw(m, s1)) * k / s1 + (1.0 + pw(m, s2)) / s2;
    let eta4 = pw(j, s2) * two - j * pw(a, s1) / s1 + pw(a, s2) / s2;

    MuEta {
        mu: [mu1, mu2, mu3, mu4],
        eta: [eta1, eta2, eta3, eta4],
    }
}

/// The `μ`, `η` table of the convex (`h(t) = t`) bound, written in its own
/// polynomial form.
pub fn mu_eta_convex(rp: &RuleParams) -> MuEta {
    let a = rp.alpha;
    let l = rp.lambda;
    let al = a * l;
    let om = 1.0 - a;
    let k = rp.upper_node();
    let lo = l * om;

    let mu1 = (al.powi(3) + om.powi(3)) / 3.0 - al * om * om / 2.0;
    let mu2 = (1.0 + a.powi(3) + (1.0 - al).powi(3)) / 3.0 - (1.0 - al) / 2.0 * (1.0 + a * a);
    let mu3 = al * om * om / 2.0 - om.powi(3) / 3.0;
    let mu4 = (al - 1.0) * (1.0 - a * a) / 2.0 + (1.0 - a.powi(3)) / 3.0;

    let eta1 = (1.0 - om.powi(3)) / 3.0 - k / 2.0 * a * (2.0 - a);
    let eta2 = lo * a * a / 2.0 - a.powi(3) / 3.0;
    let eta3 = k.powi(3) / 3.0 - k / 2.0 * (1.0 + om * om) + (1.0 + om.powi(3)) / 3.0;
    let eta4 = lo.powi(3) / 3.0 - lo * a * a / 2.0 + a.powi(3) / 3.0;

    MuEta {
        mu: [mu1, mu2, mu3, mu4],
        eta: [eta1, eta2, eta3, eta4],
    }
}

/// `∫_0^{1-α} |t-αλ| w(t) dt` (`Left`) or `∫_{1-α}^1 |t-1+λ(1-α)| w(t) dt`
/// (`Right`) with `w(t) = h(t)`, or `w(t) = h(1-t)` when `reflected`.
///
/// Closed form for `t`, `t^s` and `1`; otherwise adaptive quadrature split at
/// the kink of the weight.
pub fn weighted_moment(h: &HModulus, rp: &RuleParams, side: Side, reflected: bool) -> Result<f64> {
    if (side == Side::Left && rp.alpha == 1.0) || (side == Side::Right && rp.alpha == 0.0) {
        return Ok(0.0);
    }
    if matches!(h, HModulus::Constant) {
        let (l, r) = active_abs_moments(rp);
        return Ok(if side == Side::Left { l } else { r });
    }
    if let Some(s) = h.power_exponent() {
        let me = power_moments(rp, s);
        let v = match (side, reflected) {
            (Side::Left, false) if rp.lower_node() <= rp.split() => me.mu[0],
            (Side::Left, false) => me.mu[2],
            (Side::Left, true) if rp.lower_node() <= rp.split() => me.mu[1],
            (Side::Left, true) => me.mu[3],
            (Side::Right, false) if rp.upper_node() >= rp.split() => me.eta[2],
            (Side::Right, false) => me.eta[0],
            (Side::Right, true) if rp.upper_node() >= rp.split() => me.eta[3],
            (Side::Right, true) => me.eta[1],
        };
        return Ok(nonnegative(v));
    }
    if matches!(h, HModulus::Reciprocal) {
        check_reciprocal_moment(rp, side, reflected)?;
    }
    weighted_moment_numeric(h, rp, side, reflected)
}

// 1/t is singular at t = 0 and 1/(1-t) at t = 1; the moment is finite only
// when the kinked weight vanishes at a singular endpoint that is included.
fn check_reciprocal_moment(rp: &RuleParams, side: Side, reflected: bool) -> Result<()> {
    let (lo, hi, node) = side_bounds(rp, side);
    let (endpoint, included) = if reflected {
        (1.0, hi == 1.0)
    } else {
        (0.0, lo == 0.0)
    };
    if included && (endpoint - node).abs() > 0.0 {
        return Err(Error::NotIntegrable(format!(
            "moment of h(t) = 1/t diverges at t = {endpoint} (side {side:?}, reflected = {reflected})"
        )));
    }
    Ok(())
}

fn side_bounds(rp: &RuleParams, side: Side) -> (f64, f64, f64) {
    match side {
        Side::Left => (0.0, rp.split(), rp.lower_node()),
        Side::Right => (rp.split(), 1.0, rp.upper_node()),
    }
}

/// Numeric evaluation of [`weighted_moment`] for any modulus, regardless of
/// whether a closed form exists.
pub fn weighted_moment_numeric(h: &HModulus, rp: &RuleParams, side: Side, reflected: bool) -> Result<f64> {
    let (lo, hi, node) = side_bounds(rp, side);
    if hi <= lo {
        return Ok(0.0);
    }
    let integrand = |t: f64| {
        let w = if reflected {
            h.value_at(1.0 - t)
        } else {
            h.value_at(t)
        };
        (t - node).abs() * w
    };
    let mut total = 0.0;
    for (x0, x1) in split_at_kink(lo, hi, node) {
        total += integrate_adaptive(integrand, x0, x1, MOMENT_TOLERANCE / 2.0)?.value;
    }
    Ok(total)
}

pub(crate) fn split_at_kink(lo: f64, hi: f64, kink: f64) -> Vec<(f64, f64)> {
    if kink > lo && kink < hi {
        vec![(lo, kink), (kink, hi)]
    } else {
        vec![(lo, hi)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp(alpha: f64, lambda: f64) -> RuleParams {
        RuleParams::new(alpha, lambda, 1.0).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn params_validated() {
        assert!(RuleParams::new(-0.1, 0.5, 1.0).is_err());
        assert!(RuleParams::new(0.5, 1.1, 1.0).is_err());
        assert!(RuleParams::new(0.5, 0.5, 0.9).is_err());
        assert!(RuleParams::holder(0.5, 0.5, 1.0).is_err());
        let h = RuleParams::holder(0.5, 0.5, 3.0).unwrap();
        assert!(close(h.p().unwrap(), 1.5, 1e-15));
        assert!(RuleParams::new(0.5, 0.5, 2.0).unwrap().with_p(2.5).is_err());
        assert!(RuleParams::new(0.5, 0.5, 2.0).unwrap().with_p(2.0).is_ok());
    }

    #[test]
    fn branch_examples() {
        assert_eq!(branch_select(&rp(0.5, 1.0 / 3.0)), CaseBranch::MidOrder);
        assert_eq!(branch_select(&rp(0.5, 1.0)), CaseBranch::MidOrder);
        assert_eq!(branch_select(&rp(0.9, 0.9)), CaseBranch::LeftOfLower);
        // 1-α = 0.8 > k = 1 - 0.9*0.8 = 0.28
        assert_eq!(branch_select(&rp(0.2, 0.9)), CaseBranch::RightOfUpper);
    }

    #[test]
    fn gamma_examples() {
        let (g1, g2) = gamma_coeffs(&rp(0.5, 1.0 / 3.0));
        assert!(close(g1, -1.0 / 24.0, 1e-15));
        assert!(close(g2, 5.0 / 72.0, 1e-15));
        let (g1, g2) = gamma_coeffs(&rp(1.0, 0.4));
        assert_eq!(g1, 0.0);
        assert!(close(g2, 0.16, 1e-15));
        let (g1, g2) = gamma_coeffs(&rp(0.5, 0.0));
        assert!(close(g1, -0.125, 1e-15));
        assert!(close(g2, 0.125, 1e-15));
    }

    #[test]
    fn upsilon_examples() {
        let (_, u2) = upsilon_coeffs(&rp(0.5, 1.0 / 3.0));
        assert!(close(u2, 5.0 / 72.0, 1e-15));
        let (u1, u2) = upsilon_coeffs(&rp(0.5, 1.0));
        assert!(close(u1, 0.125, 1e-15));
        assert!(close(u2, 0.125, 1e-15));
        for lambda in [0.0, 0.3, 0.7, 1.0] {
            let (u1, u2) = upsilon_coeffs(&rp(0.0, lambda));
            assert!(close(u1, 0.0, 1e-15));
            assert!(close(u2, lambda * lambda, 1e-15));
        }
    }

    #[test]
    fn epsilon_examples() {
        let e = epsilon_coeffs(&RuleParams::holder(0.5, 1.0 / 3.0, 2.0).unwrap()).unwrap();
        assert!(close(e[0], 1.0 / 24.0, 1e-15));
        assert!(close(e[2], 1.0 / 24.0, 1e-15));
        let e = epsilon_coeffs(&RuleParams::holder(0.5, 1.0, 2.0).unwrap()).unwrap();
        assert!(close(e[0], 0.125, 1e-15));
        assert!(matches!(
            epsilon_coeffs(&rp(0.5, 0.5)),
            Err(Error::ConjugateMissing)
        ));
    }

    #[test]
    fn abs_moment_p_examples() {
        let r = RuleParams::holder(0.5, 1.0 / 3.0, 2.0).unwrap();
        assert!(close(abs_moment_p(&r, Side::Left).unwrap(), 1.0 / 72.0, 1e-15));
        for q in [1.5, 2.0, 4.0] {
            let r = RuleParams::holder(1.0, 0.0, q).unwrap();
            let p = r.p().unwrap();
            // α = 1 leaves the left side empty; the right side is ∫_0^1 t^p.
            assert_eq!(abs_moment_p(&r, Side::Left).unwrap(), 0.0);
            assert!(close(
                abs_moment_p(&r, Side::Right).unwrap(),
                1.0 / (p + 1.0),
                1e-15
            ));
            let r = RuleParams::holder(0.0, 1.0, q).unwrap();
            assert_eq!(abs_moment_p(&r, Side::Right).unwrap(), 0.0);
            assert!(close(
                abs_moment_p(&r, Side::Left).unwrap(),
                1.0 / (p + 1.0),
                1e-15
            ));
        }
    }

    #[test]
    fn mu_star_examples() {
        let r = rp(0.5, 1.0 / 3.0);
        let star = mu_eta_star(&r, 1.0).unwrap();
        let conv = mu_eta_convex(&r);
        assert!(close(star.mu[0], conv.mu[0], 1e-15));
        assert!(close(mu_eta_star(&rp(1.0, 1.0), 0.5).unwrap().mu[2], 0.0, 1e-15));
        let m = mu_eta_star(&rp(0.5, 0.0), 0.5).unwrap();
        assert!(close(m.mu[0], 0.5f64.powf(2.5) / 2.5, 1e-15));
        assert!(mu_eta_star(&r, 0.0).is_err());
    }

    #[test]
    fn weighted_moment_examples() {
        let r = rp(0.5, 1.0 / 3.0);
        let v = weighted_moment(&HModulus::Constant, &r, Side::Left, false).unwrap();
        assert!(close(v, 5.0 / 72.0, 1e-15));
        let v = weighted_moment(&HModulus::Identity, &r, Side::Left, false).unwrap();
        assert!(close(v, mu_eta_star(&r, 1.0).unwrap().mu[0], 1e-15));
        let v = weighted_moment(&HModulus::Power(0.5), &rp(0.5, 0.0), Side::Left, false).unwrap();
        assert!(close(v, 0.5f64.powf(2.5) / 2.5, 1e-15));
    }

    #[test]
    fn closed_and_numeric_moments_agree() {
        let moduli = [HModulus::Identity, HModulus::Power(0.3), HModulus::Constant];
        for &(a, l) in &[
            (0.5, 1.0 / 3.0),
            (0.9, 0.9),
            (0.2, 0.9),
            (0.7, 0.1),
            (0.0, 0.4),
            (1.0, 0.6),
        ] {
            let r = rp(a, l);
            for h in &moduli {
                for side in [Side::Left, Side::Right] {
                    for refl in [false, true] {
                        let closed = weighted_moment(h, &r, side, refl).unwrap();
                        let num = weighted_moment_numeric(h, &r, side, refl).unwrap();
                        assert!(
                            close(closed, num, 1e-12),
                            "{h:?} {a} {l} {side:?} {refl}: {closed} {num}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn reciprocal_moments() {
        // αλ > 0 puts a nonzero weight at the 1/t pole.
        assert!(matches!(
            weighted_moment(&HModulus::Reciprocal, &rp(0.5, 0.5), Side::Left, false),
            Err(Error::NotIntegrable(_))
        ));
        // λ = 0: weight |t| cancels the pole, ∫_0^{1/2} 1 dt.
        let v = weighted_moment(&HModulus::Reciprocal, &rp(0.5, 0.0), Side::Left, false).unwrap();
        assert!(close(v, 0.5, 1e-12));
        // Reflected left weight has its pole at t = 1, outside [0, 1/2].
        let v = weighted_moment(&HModulus::Reciprocal, &rp(0.5, 0.5), Side::Left, true).unwrap();
        // ∫_0^{1/2} |t - 1/4| / (1 - t) dt
        let exact = {
            let f = |t: f64| -(t) - 0.75 * (1.0 - t).ln(); // antiderivative of (t-1/4)/(1-t)
            (f(0.5) - f(0.25)) - (f(0.25) - f(0.0))
        };
        assert!(close(v, exact, 1e-12), "{v} vs {exact}");
        assert!(matches!(
            weighted_moment(&HModulus::Reciprocal, &rp(0.5, 0.5), Side::Right, true),
            Err(Error::NotIntegrable(_))
        ));
    }

    #[test]
    fn empty_sides_are_zero() {
        for h in [HModulus::Identity, HModulus::Reciprocal] {
            assert_eq!(
                weighted_moment(&h, &rp(1.0, 0.3), Side::Left, false).unwrap(),
                0.0
            );
            assert_eq!(
                weighted_moment(&h, &rp(0.0, 0.3), Side::Right, true).unwrap(),
                0.0
            );
        }
    }

    #[test]
    fn epsilon_roots_match_direct_powers() {
        for &(a, l) in &[
            (0.5, 1.0 / 3.0),
            (0.9, 0.9),
            (0.2, 0.9),
            (0.7, 0.1),
            (0.0, 0.4),
            (1.0, 0.6),
        ] {
            for q in [1.5, 2.0, 4.0] {
                let r = RuleParams::holder(a, l, q).unwrap();
                let p = r.p().unwrap();
                let (el, er) = branch_epsilons(&r).unwrap();
                let (rl, rr) = branch_epsilon_roots(&r).unwrap();
                assert!(close(el.powf(1.0 / p), rl, 1e-14), "{a} {l} {q}");
                assert!(close(er.powf(1.0 / p), rr, 1e-14), "{a} {l} {q}");
            }
        }
        // p near 1700: ε underflows but its p-th root does not
        let r = RuleParams::holder(0.3, 0.6, 1.0006).unwrap();
        let (rl, rr) = branch_epsilon_roots(&r).unwrap();
        assert!(rl > 0.1 && rr > 0.1);
    }

    #[test]
    fn ties_agree_across_branches() {
        // α = 1/2, λ = 1: all three nodes coincide at 1/2.
        let r = rp(0.5, 1.0);
        let (g1, g2) = gamma_coeffs(&r);
        let (u1, u2) = upsilon_coeffs(&r);
        assert!(close(g1, g2, 1e-15) && close(u1, u2, 1e-15));
        let me = mu_eta_star(&r, 0.6).unwrap();
        assert!(close(me.mu[0], me.mu[2], 1e-15));
        assert!(close(me.mu[1], me.mu[3], 1e-15));
        assert!(close(me.eta[0], me.eta[2], 1e-15));
        assert!(close(me.eta[1], me.eta[3], 1e-15));
        let h = RuleParams::holder(0.5, 1.0, 2.5).unwrap();
        let e = epsilon_coeffs(&h).unwrap();
        assert!(close(e[0], e[1], 1e-15) && close(e[2], e[3], 1e-15));
    }
}
