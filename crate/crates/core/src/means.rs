//! Special means and the two mean inequalities obtained by applying the
//! power-mean and Hölder bounds to `f(t) = t^{s+1}` on `[a, b]`, `0 < a < b`.
//!
//! `|f'|^q = (s+1)^q t^{qs}` is `qs`-convex for `qs` in `(0, 1)`, so both
//! right-hand sides use the modulus `t^{qs}`.

use crate::error::{Error, Result};
use crate::moments::{
    branch_abs_moments, branch_epsilon_roots, branch_select, mu_eta_star, RuleParams, CONJUGATE_TOLERANCE,
};

/// Slack on `lhs <= rhs`, scaled by `1 + rhs`.
pub const PROPOSITION_SLACK: f64 = 1e-9;

/// `αa + (1-α)b`
pub fn weighted_arith_mean(a: f64, b: f64, alpha: f64) -> f64 {
    alpha * a + (1.0 - alpha) * b
}

/// `(a + b)/2`
pub fn arith_mean(a: f64, b: f64) -> f64 {
    weighted_arith_mean(a, b, 0.5)
}

/// `(b - a)/(ln|b| - ln|a|)`
pub fn log_mean(a: f64, b: f64) -> Result<f64> {
    if a == 0.0 || b == 0.0 || a.abs() == b.abs() {
        return Err(Error::Domain(format!(
            "logarithmic mean needs |a| != |b| and ab != 0, got ({a}, {b})"
        )));
    }
    Ok((b - a) / (b.abs().ln() - a.abs().ln()))
}

/// `((b^{p+1} - a^{p+1})/((p+1)(b-a)))^{1/p}`
pub fn p_log_mean(a: f64, b: f64, p: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) || a == b {
        return Err(Error::Domain(format!(
            "p-logarithmic mean needs distinct a, b > 0, got ({a}, {b})"
        )));
    }
    if p == 0.0 || p == -1.0 || !p.is_finite() {
        return Err(Error::Domain(format!("p-logarithmic mean undefined for p = {p}")));
    }
    Ok(((b.powf(p + 1.0) - a.powf(p + 1.0)) / ((p + 1.0) * (b - a))).powf(1.0 / p))
}

/// Outcome of a mean inequality check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropositionReport {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl PropositionReport {
    fn new(lhs: f64, rhs: f64) -> Self {
        PropositionReport {
            lhs,
            rhs,
            holds: lhs <= rhs + PROPOSITION_SLACK * (1.0 + rhs),
        }
    }
}

fn check_common(a: f64, b: f64, q: f64, s: f64) -> Result<()> {
    if !(a > 0.0 && a < b && b.is_finite()) {
        return Err(Error::Domain(format!("need 0 < a < b, got ({a}, {b})")));
    }
    if !(q >= 1.0 && q.is_finite()) {
        return Err(Error::Domain(format!("need q >= 1, got {q}")));
    }
    if !(s > 0.0 && s * q < 1.0) {
        return Err(Error::Domain(format!(
            "need s in (0, 1/q), got s = {s} with q = {q}"
        )));
    }
    Ok(())
}

/// `|λA_α(a^{s+1}, b^{s+1}) + (1-λ)A_α^{s+1}(a, b) - L_{s+1}^{s+1}(a, b)|`
pub fn mean_gap(a: f64, b: f64, alpha: f64, lambda: f64, s: f64) -> Result<f64> {
    let e = s + 1.0;
    let ends = weighted_arith_mean(a.powf(e), b.powf(e), alpha);
    let node = weighted_arith_mean(a, b, alpha).powf(e);
    let l = p_log_mean(a, b, e)?.powf(e);
    Ok((lambda * ends + (1.0 - lambda) * node - l).abs())
}

/// Power-mean inequality for the means, right side
/// `(b-a)(s+1)[cL^{1-1/q}(μ_t b^{qs} + μ_r a^{qs})^{1/q} + cR^{1-1/q}(η_t b^{qs} + η_r a^{qs})^{1/q}]`
/// with μ*, η* at exponent `qs`.
pub fn proposition1_check(
    a: f64,
    b: f64,
    alpha: f64,
    lambda: f64,
    q: f64,
    s: f64,
) -> Result<PropositionReport> {
    check_common(a, b, q, s)?;
    let rp = RuleParams::new(alpha, lambda, q).map_err(as_domain)?;
    let lhs = mean_gap(a, b, alpha, lambda, s)?;

    let qs = q * s;
    let ((m_t, m_r), (e_t, e_r)) = mu_eta_star(&rp, qs)?.branch_pairs(branch_select(&rp));
    let (cl, cr) = branch_abs_moments(&rp);
    let (aq, bq) = (a.powf(qs), b.powf(qs));
    let left = cl.powf(1.0 - 1.0 / q) * (m_t * bq + m_r * aq).max(0.0).powf(1.0 / q);
    let right = cr.powf(1.0 - 1.0 / q) * (e_t * bq + e_r * aq).max(0.0).powf(1.0 / q);
    let rhs = (b - a) * (s + 1.0) * (left + right);
    Ok(PropositionReport::new(lhs, rhs))
}

/// `(θ₁, θ₂) = (A_α^{qs}(a, b) + a^{qs}, A_α^{qs}(a, b) + b^{qs})`
pub fn theta_values(a: f64, b: f64, alpha: f64, q: f64, s: f64) -> (f64, f64) {
    let m = weighted_arith_mean(a, b, alpha).powf(q * s);
    (m + a.powf(q * s), m + b.powf(q * s))
}

/// Hölder inequality for the means, right side
/// `(b-a)(1/(p+1))^{1/p}(1/(qs+1))^{1/q}(s+1)[(1-α)^{1/q}εL^{1/p}θ₁^{1/q} + α^{1/q}εR^{1/p}θ₂^{1/q}]`.
pub fn proposition2_check(
    a: f64,
    b: f64,
    alpha: f64,
    lambda: f64,
    p: f64,
    q: f64,
    s: f64,
) -> Result<PropositionReport> {
    check_common(a, b, q, s)?;
    if !(q > 1.0 && p > 1.0) || (1.0 / p + 1.0 / q - 1.0).abs() > CONJUGATE_TOLERANCE {
        return Err(Error::Domain(format!(
            "p = {p}, q = {q} are not conjugate exponents > 1"
        )));
    }
    let rp = RuleParams::new(alpha, lambda, q)
        .and_then(|r| r.with_p(p))
        .map_err(as_domain)?;
    let lhs = mean_gap(a, b, alpha, lambda, s)?;

    let (t1, t2) = theta_values(a, b, alpha, q, s);
    let (el, er) = branch_epsilon_roots(&rp)?;
    let bracket =
        (1.0 - alpha).powf(1.0 / q) * el * t1.powf(1.0 / q) + alpha.powf(1.0 / q) * er * t2.powf(1.0 / q);
    let rhs =
        (b - a) * (1.0 / (p + 1.0)).powf(1.0 / p) * (1.0 / (q * s + 1.0)).powf(1.0 / q) * (s + 1.0) * bracket;
    Ok(PropositionReport::new(lhs, rhs))
}

fn as_domain(e: Error) -> Error {
    match e {
        Error::InvalidParams(m) => Error::Domain(m),
        other => other,
    }
}
