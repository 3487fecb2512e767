//! Right-hand sides of the quadrature error bounds.
//!
//! The three general bounds take a [`TestFunction`] whose certificate
//! declares `|f'|^q` h-convex (power-mean and Hölder forms) or h-concave
//! (Hölder form with midpoint values). The prior bounds are fixed-rule
//! estimates for `s`-convex `|f'|^q` kept for comparison.

pub mod forms;

use std::fmt;
use std::str::FromStr;

use crate::classes::{ClassKind, HModulus, TestFunction};
use crate::error::{Error, Result};
use crate::moments::{
    branch_abs_moments, branch_epsilon_roots, branch_select, mu_eta_star, weighted_moment, CaseBranch,
    RuleParams, Side,
};

/// Tolerance used when matching fixed rule parameters and exponents.
pub const PARAM_TOLERANCE: f64 = 1e-12;

/// Label of every bound the library evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundKind {
    PowerMeanHConvex,
    HolderHConvex,
    HolderHConcave,
    PriorConvexPowerMean,
    PriorMidpointPowerMean,
    PriorMidpointHolder,
    PriorSimpsonHolder,
    PriorTrapezoidHolder,
    ClassicalSimpson,
}

impl BoundKind {
    pub const ALL: [BoundKind; 9] = [
        BoundKind::PowerMeanHConvex,
        BoundKind::HolderHConvex,
        BoundKind::HolderHConcave,
        BoundKind::PriorConvexPowerMean,
        BoundKind::PriorMidpointPowerMean,
        BoundKind::PriorMidpointHolder,
        BoundKind::PriorSimpsonHolder,
        BoundKind::PriorTrapezoidHolder,
        BoundKind::ClassicalSimpson,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            BoundKind::PowerMeanHConvex => "power-mean",
            BoundKind::HolderHConvex => "holder",
            BoundKind::HolderHConcave => "holder-concave",
            BoundKind::PriorConvexPowerMean => "prior-convex-power-mean",
            BoundKind::PriorMidpointPowerMean => "prior-midpoint-power-mean",
            BoundKind::PriorMidpointHolder => "prior-midpoint-holder",
            BoundKind::PriorSimpsonHolder => "prior-simpson-holder",
            BoundKind::PriorTrapezoidHolder => "prior-trapezoid-holder",
            BoundKind::ClassicalSimpson => "classical-simpson",
        }
    }

    /// True for the bounds that need a conjugate exponent `p`.
    pub fn needs_conjugate(&self) -> bool {
        matches!(
            self,
            BoundKind::HolderHConvex
                | BoundKind::HolderHConcave
                | BoundKind::PriorMidpointHolder
                | BoundKind::PriorSimpsonHolder
                | BoundKind::PriorTrapezoidHolder
        )
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown bound kind '{s}'")))
    }
}

/// A fixed-rule comparison bound with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PriorBound {
    /// Any `(α, λ)`; convex `|f'|^q`.
    ConvexPowerMean,
    /// Midpoint rule; `s`-convex `|f'|^q`.
    MidpointPowerMean { s: f64 },
    /// Midpoint rule, Hölder form; `s`-convex `|f'|^q`, `q > 1`.
    MidpointHolder { s: f64 },
    /// Simpson rule, Hölder form; `s`-convex `|f'|^q`, `q > 1`.
    SimpsonHolder { s: f64 },
    /// Trapezoid rule, Hölder form; `s`-convex `|f'|^q`, `q > 1`.
    TrapezoidHolder { s: f64 },
    /// Simpson rule with a bound on `|f⁽⁴⁾|`; no class requirement.
    ClassicalSimpson { sup_f4: f64 },
}

impl PriorBound {
    pub fn kind(&self) -> BoundKind {
        match self {
            PriorBound::ConvexPowerMean => BoundKind::PriorConvexPowerMean,
            PriorBound::MidpointPowerMean { .. } => BoundKind::PriorMidpointPowerMean,
            PriorBound::MidpointHolder { .. } => BoundKind::PriorMidpointHolder,
            PriorBound::SimpsonHolder { .. } => BoundKind::PriorSimpsonHolder,
            PriorBound::TrapezoidHolder { .. } => BoundKind::PriorTrapezoidHolder,
            PriorBound::ClassicalSimpson { .. } => BoundKind::ClassicalSimpson,
        }
    }

    /// `(α, λ)` the bound is stated for, if fixed.
    pub fn fixed_rule(&self) -> Option<(f64, f64)> {
        match self {
            PriorBound::ConvexPowerMean => None,
            PriorBound::MidpointPowerMean { .. } | PriorBound::MidpointHolder { .. } => Some((0.5, 0.0)),
            PriorBound::SimpsonHolder { .. } | PriorBound::ClassicalSimpson { .. } => Some((0.5, 1.0 / 3.0)),
            PriorBound::TrapezoidHolder { .. } => Some((0.5, 1.0)),
        }
    }

    fn s(&self) -> Option<f64> {
        match self {
            PriorBound::ConvexPowerMean => Some(1.0),
            PriorBound::MidpointPowerMean { s }
            | PriorBound::MidpointHolder { s }
            | PriorBound::SimpsonHolder { s }
            | PriorBound::TrapezoidHolder { s } => Some(*s),
            PriorBound::ClassicalSimpson { .. } => None,
        }
    }
}

/// A bound value with the branch it used and its named ingredients.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundResult {
    pub kind: BoundKind,
    pub value: f64,
    pub branch: CaseBranch,
    pub components: Vec<(&'static str, f64)>,
}

impl BoundResult {
    pub fn component(&self, name: &str) -> Option<f64> {
        self.components.iter().find(|(n, _)| *n == name).map(|&(_, v)| v)
    }

    fn finish(
        kind: BoundKind,
        value: f64,
        branch: CaseBranch,
        components: Vec<(&'static str, f64)>,
    ) -> Result<Self> {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::InvalidParams(format!(
                "{kind} evaluated to {value}; check the derivative values"
            )));
        }
        Ok(BoundResult {
            kind,
            value,
            branch,
            components,
        })
    }
}

fn check_q(tf: &TestFunction, rp: &RuleParams) -> Result<()> {
    let cq = tf.certificate().exponent_q();
    if (cq - rp.q()).abs() > PARAM_TOLERANCE * cq {
        return Err(Error::ParamMismatch(format!(
            "certificate exponent q = {cq} differs from rule exponent q = {}",
            rp.q()
        )));
    }
    Ok(())
}

fn convex_modulus(tf: &TestFunction) -> Result<&HModulus> {
    match tf.certificate().class() {
        ClassKind::HConvex(h) => Ok(h),
        ClassKind::HConcave(h) => Err(Error::ClassMismatch(format!(
            "an h-convex certificate is required, got h-concave with h = {}",
            h.label()
        ))),
    }
}

// `x^{1-1/q}` with `0^0 = 1`.
fn coef_power(x: f64, q: f64) -> f64 {
    x.powf(1.0 - 1.0 / q)
}

/// Power-mean bound for h-convex `|f'|^q`, `q >= 1`:
/// `(b-a)[cL^{1-1/q} A^{1/q} + cR^{1-1/q} B^{1/q}]` with `A`, `B` the
/// h-weighted kernel moments and `(cL, cR)` the branch's γ/υ pair.
pub fn bound_power_mean(tf: &TestFunction, rp: &RuleParams) -> Result<BoundResult> {
    check_q(tf, rp)?;
    let h = convex_modulus(tf)?;
    let q = rp.q();
    let ga = tf.derivative_power(tf.a());
    let gb = tf.derivative_power(tf.b());
    let ml = weighted_moment(h, rp, Side::Left, false)?;
    let mlr = weighted_moment(h, rp, Side::Left, true)?;
    let mr = weighted_moment(h, rp, Side::Right, false)?;
    let mrr = weighted_moment(h, rp, Side::Right, true)?;
    let a_mom = gb * ml + ga * mlr;
    let b_mom = gb * mr + ga * mrr;
    let (cl, cr) = branch_abs_moments(rp);
    let value =
        tf.width() * (coef_power(cl, q) * a_mom.powf(1.0 / q) + coef_power(cr, q) * b_mom.powf(1.0 / q));
    BoundResult::finish(
        BoundKind::PowerMeanHConvex,
        value,
        branch_select(rp),
        vec![
            ("A", a_mom),
            ("B", b_mom),
            ("coef_left", cl),
            ("coef_right", cr),
            ("moment_left", ml),
            ("moment_left_reflected", mlr),
            ("moment_right", mr),
            ("moment_right_reflected", mrr),
        ],
    )
}

/// Power-mean bound for a constant modulus in the collapsed form
/// `(b-a)(|f'(a)|^q + |f'(b)|^q)^{1/q}(cL + cR)`.
pub fn bound_power_mean_constant_h(tf: &TestFunction, rp: &RuleParams) -> Result<BoundResult> {
    check_q(tf, rp)?;
    if !matches!(convex_modulus(tf)?, HModulus::Constant) {
        return Err(Error::ClassMismatch("the collapsed form needs h(t) = 1".into()));
    }
    let sum = tf.derivative_power(tf.a()) + tf.derivative_power(tf.b());
    let (cl, cr) = branch_abs_moments(rp);
    let value = tf.width() * sum.powf(1.0 / rp.q()) * (cl + cr);
    BoundResult::finish(
        BoundKind::PowerMeanHConvex,
        value,
        branch_select(rp),
        vec![("derivative_sum", sum), ("coef_left", cl), ("coef_right", cr)],
    )
}

/// Power-mean bound for `h(t) = t^s` through the closed-form μ*, η* table.
pub fn bound_sconvex_powermean(tf: &TestFunction, rp: &RuleParams, s: f64) -> Result<BoundResult> {
    check_q(tf, rp)?;
    let h = convex_modulus(tf)?;
    let declared = match h {
        HModulus::Power(x) => Some(*x),
        HModulus::Identity => Some(1.0),
        _ => None,
    };
    if !declared.is_some_and(|x| (x - s).abs() <= PARAM_TOLERANCE) {
        return Err(Error::ClassMismatch(format!(
            "certificate modulus {} is not t^{s}",
            h.label()
        )));
    }
    let q = rp.q();
    let ga = tf.derivative_power(tf.a());
    let gb = tf.derivative_power(tf.b());
    let branch = branch_select(rp);
    let ((m_t, m_r), (e_t, e_r)) = mu_eta_star(rp, s)?.branch_pairs(branch);
    let a_mom = (m_t * gb + m_r * ga).max(0.0);
    let b_mom = (e_t * gb + e_r * ga).max(0.0);
    let (cl, cr) = branch_abs_moments(rp);
    let value =
        tf.width() * (coef_power(cl, q) * a_mom.powf(1.0 / q) + coef_power(cr, q) * b_mom.powf(1.0 / q));
    BoundResult::finish(
        BoundKind::PowerMeanHConvex,
        value,
        branch,
        vec![("A", a_mom), ("B", b_mom), ("coef_left", cl), ("coef_right", cr)],
    )
}

/// Hölder bound for h-convex `|f'|^q`, `q > 1`:
/// `(b-a)(1/(p+1))^{1/p}(∫h)^{1/q}[εL^{1/p} C^{1/q} + εR^{1/p} D^{1/q}]`.
pub fn bound_holder_hconvex(tf: &TestFunction, rp: &RuleParams) -> Result<BoundResult> {
    check_q(tf, rp)?;
    let h = convex_modulus(tf)?;
    let p = rp.require_p()?;
    let q = rp.q();
    let h_int = h.integral_01()?;
    let (a, b, al) = (tf.a(), tf.b(), rp.alpha());
    let gx = tf.derivative_power((1.0 - al) * b + al * a);
    let c_term = (1.0 - al) * (gx + tf.derivative_power(a));
    let d_term = al * (gx + tf.derivative_power(b));
    let (el, er) = branch_epsilon_roots(rp)?;
    let pre = (1.0 / (p + 1.0)).powf(1.0 / p) * h_int.powf(1.0 / q);
    let value = tf.width() * pre * (el * c_term.powf(1.0 / q) + er * d_term.powf(1.0 / q));
    BoundResult::finish(
        BoundKind::HolderHConvex,
        value,
        branch_select(rp),
        vec![
            ("C", c_term),
            ("D", d_term),
            ("eps_left_root", el),
            ("eps_right_root", er),
            ("h_integral", h_int),
            ("prefactor", pre),
        ],
    )
}

/// Hölder bound for h-concave `|f'|^q`, `q > 1`:
/// `(b-a)(1/(2h(1/2)))^{1/q}(1/(p+1))^{1/p}[εL^{1/p} E^{1/q} + εR^{1/p} F^{1/q}]`.
pub fn bound_holder_hconcave(tf: &TestFunction, rp: &RuleParams) -> Result<BoundResult> {
    check_q(tf, rp)?;
    let h = match tf.certificate().class() {
        ClassKind::HConcave(h) => h,
        ClassKind::HConvex(h) => {
            return Err(Error::ClassMismatch(format!(
                "an h-concave certificate is required, got h-convex with h = {}",
                h.label()
            )))
        }
    };
    let p = rp.require_p()?;
    let q = rp.q();
    let half = h.eval(0.5)?;
    if half <= 0.0 {
        return Err(Error::DegenerateModulus);
    }
    let (a, b, al) = (tf.a(), tf.b(), rp.alpha());
    let e_term = (1.0 - al) * tf.derivative_power(((1.0 - al) * b + (1.0 + al) * a) / 2.0);
    let f_term = al * tf.derivative_power(((2.0 - al) * b + al * a) / 2.0);
    let (el, er) = branch_epsilon_roots(rp)?;
    let pre = (1.0 / (2.0 * half)).powf(1.0 / q) * (1.0 / (p + 1.0)).powf(1.0 / p);
    let value = tf.width() * pre * (el * e_term.powf(1.0 / q) + er * f_term.powf(1.0 / q));
    BoundResult::finish(
        BoundKind::HolderHConcave,
        value,
        branch_select(rp),
        vec![
            ("E", e_term),
            ("F", f_term),
            ("eps_left_root", el),
            ("eps_right_root", er),
            ("h_half", half),
            ("prefactor", pre),
        ],
    )
}

/// Evaluates a fixed-rule comparison bound.
///
/// The rule parameters must match the bound's rule, and for the class-based
/// bounds the certificate must be h-convex with `h(t) = t^σ`, `σ >= s`
/// (which implies `s`-convexity of the nonnegative `|f'|^q`).
pub fn bound_prior(tf: &TestFunction, rp: &RuleParams, prior: PriorBound) -> Result<BoundResult> {
    let kind = prior.kind();
    if let Some((al, la)) = prior.fixed_rule() {
        if (rp.alpha() - al).abs() > PARAM_TOLERANCE || (rp.lambda() - la).abs() > PARAM_TOLERANCE {
            return Err(Error::ParamMismatch(format!(
                "{kind} is stated for (alpha, lambda) = ({al}, {la}), got ({}, {})",
                rp.alpha(),
                rp.lambda()
            )));
        }
    }
    if let Some(s) = prior.s() {
        if !(s > 0.0 && s <= 1.0) {
            return Err(Error::InvalidParams(format!("s must lie in (0, 1], got {s}")));
        }
        check_q(tf, rp)?;
        let sigma = match convex_modulus(tf)? {
            HModulus::Identity => 1.0,
            HModulus::Power(x) => *x,
            other => {
                return Err(Error::ClassMismatch(format!(
                    "{kind} needs an s-convex certificate, got h = {}",
                    other.label()
                )))
            }
        };
        if sigma + PARAM_TOLERANCE < s {
            return Err(Error::ClassMismatch(format!(
                "{kind} with s = {s} needs h(t) = t^sigma with sigma >= s, got sigma = {sigma}"
            )));
        }
    }

    let (a, b, w) = (tf.a(), tf.b(), tf.width());
    let da = tf.f_prime(a).abs();
    let db = tf.f_prime(b).abs();
    let dm = tf.f_prime(0.5 * (a + b)).abs();
    let q = rp.q();
    let value = match prior {
        PriorBound::ConvexPowerMean => forms::convex_power_mean(w, rp, da, db),
        PriorBound::MidpointPowerMean { s } => forms::prior_midpoint_power_mean(w, q, s, da, db),
        PriorBound::MidpointHolder { s } => forms::prior_midpoint_holder(w, rp.require_p()?, q, s, da, db),
        PriorBound::SimpsonHolder { s } => forms::simpson_holder(w, rp.require_p()?, q, s, da, dm, db),
        PriorBound::TrapezoidHolder { s } => {
            rp.require_p()?;
            forms::prior_trapezoid_holder(w, q, s, da, dm, db)
        }
        PriorBound::ClassicalSimpson { sup_f4 } => {
            if !(sup_f4 >= 0.0) || !sup_f4.is_finite() {
                return Err(Error::InvalidParams(format!(
                    "sup|f''''| must be finite and >= 0, got {sup_f4}"
                )));
            }
            forms::classical_simpson(w, sup_f4)
        }
    };
    BoundResult::finish(
        kind,
        value,
        branch_select(rp),
        vec![("deriv_a", da), ("deriv_mid", dm), ("deriv_b", db)],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::ClassCertificate;
    use crate::moments::{gamma_coeffs, mu_eta_star, upsilon_coeffs};
    use crate::oracle::{integrate_adaptive, lhs_error};

    fn square(h: HModulus, q: f64) -> TestFunction {
        TestFunction::new(
            |x| x * x,
            |x| 2.0 * x,
            0.0,
            1.0,
            ClassCertificate::convex(h, q).unwrap(),
        )
        .unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
    }

    #[test]
    fn power_mean_square_identity_simpson() {
        let tf = square(HModulus::Identity, 1.0);
        let rp = RuleParams::new(0.5, 1.0 / 3.0, 1.0).unwrap();
        let r = bound_power_mean(&tf, &rp).unwrap();
        // q = 1: value = A + B with |f'(0)| = 0, |f'(1)| = 2.
        let left = integrate_adaptive(|t: f64| (t - 1.0 / 6.0).abs() * t, 0.0, 0.5, 1e-13)
            .unwrap()
            .value;
        let right = integrate_adaptive(|t: f64| (t - 5.0 / 6.0).abs() * t, 0.5, 1.0, 1e-13)
            .unwrap()
            .value;
        assert!(rel(r.value, 2.0 * (left + right)) <= 1e-12);
        assert!(r.value >= lhs_error(&tf, &rp).unwrap());
        // s = 1 moments of the printed Simpson form: 29/648 and 61/648
        let me = mu_eta_star(&rp, 1.0).unwrap();
        assert!((me.mu[0] - 29.0 / 1296.0).abs() <= 1e-15);
        assert!((me.mu[1] - 61.0 / 1296.0).abs() <= 1e-15);
    }

    #[test]
    fn power_mean_constant_h_midpoint() {
        let tf = square(HModulus::Constant, 2.0);
        let rp = RuleParams::new(0.5, 0.0, 2.0).unwrap();
        let r = bound_power_mean(&tf, &rp).unwrap();
        let (_, g2) = gamma_coeffs(&rp);
        let (_, u2) = upsilon_coeffs(&rp);
        // A = 4·γ₂, B = 4·υ₂
        assert!(rel(r.component("A").unwrap(), 4.0 * g2) <= 1e-15);
        assert!(rel(r.component("B").unwrap(), 4.0 * u2) <= 1e-15);
        let collapsed = bound_power_mean_constant_h(&tf, &rp).unwrap();
        assert!(rel(r.value, collapsed.value) <= 1e-14);
        assert!(rel(r.value, 0.5) <= 1e-15);
    }

    #[test]
    fn linear_function_bounds_are_zero_and_sound() {
        let cert = ClassCertificate::convex(HModulus::Constant, 1.0).unwrap();
        let tf = TestFunction::new(|x| 2.0 * x + 1.0, |_| 2.0, -1.0, 3.0, cert).unwrap();
        let rp = RuleParams::new(0.5, 0.7, 1.0).unwrap();
        let r = bound_power_mean(&tf, &rp).unwrap();
        assert!(r.value >= 0.0);
        assert!(lhs_error(&tf, &rp).unwrap() <= 1e-13);
    }

    #[test]
    fn components_recombine() {
        let tf = square(HModulus::Power(0.6), 3.0);
        let rp = RuleParams::holder(0.3, 0.8, 3.0).unwrap();
        let q = 3.0;
        let r = bound_power_mean(&tf, &rp).unwrap();
        let c = |n| r.component(n).unwrap();
        let again = c("coef_left").powf(1.0 - 1.0 / q) * c("A").powf(1.0 / q)
            + c("coef_right").powf(1.0 - 1.0 / q) * c("B").powf(1.0 / q);
        assert!(rel(r.value, again) <= 1e-14);

        let r = bound_holder_hconvex(&tf, &rp).unwrap();
        let c = |n| r.component(n).unwrap();
        let again = c("prefactor")
            * (c("eps_left_root") * c("C").powf(1.0 / q) + c("eps_right_root") * c("D").powf(1.0 / q));
        assert!(rel(r.value, again) <= 1e-14);
    }

    #[test]
    fn sconvex_path_matches_general_path() {
        let tf = TestFunction::new(
            |x: f64| x.powf(1.5),
            |x: f64| 1.5 * x.sqrt(),
            0.2,
            1.7,
            ClassCertificate::convex(HModulus::Power(0.5), 1.0).unwrap(),
        )
        .unwrap();
        for &(al, la) in &[(0.5, 1.0 / 3.0), (0.9, 0.9), (0.2, 0.9), (0.0, 0.5), (1.0, 0.2)] {
            let rp = RuleParams::new(al, la, 1.0).unwrap();
            let g = bound_power_mean(&tf, &rp).unwrap().value;
            let s = bound_sconvex_powermean(&tf, &rp, 0.5).unwrap().value;
            assert!(rel(g, s) <= 1e-12, "{al} {la}: {g} {s}");
        }
        let rp = RuleParams::new(0.5, 0.5, 1.0).unwrap();
        assert!(bound_sconvex_powermean(&tf, &rp, 0.4).is_err());
    }

    #[test]
    fn holder_boundary_alpha_one() {
        let tf = square(HModulus::Identity, 2.0);
        let rp = RuleParams::holder(1.0, 0.0, 2.0).unwrap();
        let r = bound_holder_hconvex(&tf, &rp).unwrap();
        assert_eq!(r.component("C").unwrap(), 0.0);
        assert!(r.value >= lhs_error(&tf, &rp).unwrap());
    }

    #[test]
    fn holder_requires_integrable_modulus_and_conjugate() {
        let tf = square(HModulus::Reciprocal, 2.0);
        let rp = RuleParams::holder(0.5, 0.5, 2.0).unwrap();
        assert!(matches!(
            bound_holder_hconvex(&tf, &rp),
            Err(Error::NotIntegrable(_))
        ));
        let tf = square(HModulus::Identity, 2.0);
        let rp = RuleParams::new(0.5, 0.5, 2.0).unwrap();
        assert!(matches!(
            bound_holder_hconvex(&tf, &rp),
            Err(Error::ConjugateMissing)
        ));
    }

    #[test]
    fn concave_prefactors() {
        let g = |x: f64| x.powf(1.5);
        let gp = |x: f64| 1.5 * x.sqrt();
        let rp = RuleParams::holder(0.5, 1.0, 2.0).unwrap();
        let p = rp.p().unwrap();
        for (h, pre) in [
            (HModulus::Power(0.5), 2f64.powf(-0.5 / 2.0)),
            (HModulus::Reciprocal, 4f64.powf(-0.5)),
            (HModulus::Identity, 1.0),
        ] {
            let tf = TestFunction::new(g, gp, 1.0, 2.0, ClassCertificate::concave(h, 2.0).unwrap()).unwrap();
            let r = bound_holder_hconcave(&tf, &rp).unwrap();
            assert!(
                rel(
                    r.component("prefactor").unwrap(),
                    pre * (1.0 / (p + 1.0)).powf(1.0 / p)
                ) <= 1e-15
            );
        }
        // h = t at the trapezoid rule: quarter-point form.
        let tf = TestFunction::new(
            g,
            gp,
            1.0,
            2.0,
            ClassCertificate::concave(HModulus::Identity, 2.0).unwrap(),
        )
        .unwrap();
        let r = bound_holder_hconcave(&tf, &rp).unwrap();
        let printed = forms::concave_quarter_points(1.0, p, 2.0, 1.0, gp(1.25), gp(1.75));
        assert!(rel(r.value, printed) <= 1e-14);
    }

    #[test]
    fn concave_and_convex_certificates_are_not_interchangeable() {
        let tf = square(HModulus::Identity, 2.0);
        let rp = RuleParams::holder(0.5, 1.0, 2.0).unwrap();
        assert!(matches!(
            bound_holder_hconcave(&tf, &rp),
            Err(Error::ClassMismatch(_))
        ));
        let cc = tf.with_certificate(ClassCertificate::concave(HModulus::Identity, 2.0).unwrap());
        assert!(matches!(bound_power_mean(&cc, &rp), Err(Error::ClassMismatch(_))));
    }

    #[test]
    fn q_must_match_certificate() {
        let tf = square(HModulus::Identity, 2.0);
        let rp = RuleParams::new(0.5, 0.5, 3.0).unwrap();
        assert!(matches!(bound_power_mean(&tf, &rp), Err(Error::ParamMismatch(_))));
    }

    #[test]
    fn prior_rule_parameters_enforced() {
        let tf = square(HModulus::Identity, 2.0);
        let rp = RuleParams::holder(0.5, 0.3, 2.0).unwrap();
        for prior in [
            PriorBound::MidpointPowerMean { s: 1.0 },
            PriorBound::SimpsonHolder { s: 1.0 },
            PriorBound::TrapezoidHolder { s: 1.0 },
            PriorBound::ClassicalSimpson { sup_f4: 0.0 },
        ] {
            assert!(matches!(
                bound_prior(&tf, &rp, prior),
                Err(Error::ParamMismatch(_))
            ));
        }
        assert!(bound_prior(&tf, &rp, PriorBound::ConvexPowerMean).is_ok());
    }

    #[test]
    fn prior_s_requires_compatible_certificate() {
        let tf = square(HModulus::Power(0.3), 2.0);
        let rp = RuleParams::holder(0.5, 1.0, 2.0).unwrap();
        assert!(bound_prior(&tf, &rp, PriorBound::TrapezoidHolder { s: 0.3 }).is_ok());
        assert!(bound_prior(&tf, &rp, PriorBound::TrapezoidHolder { s: 0.2 }).is_ok());
        assert!(matches!(
            bound_prior(&tf, &rp, PriorBound::TrapezoidHolder { s: 0.5 }),
            Err(Error::ClassMismatch(_))
        ));
    }

    #[test]
    fn classical_simpson_quartic() {
        let cert = ClassCertificate::convex(HModulus::Identity, 1.0).unwrap();
        let tf = TestFunction::new(|x: f64| x.powi(4), |x: f64| 4.0 * x.powi(3), 0.0, 1.0, cert).unwrap();
        let rp = RuleParams::new(0.5, 1.0 / 3.0, 1.0).unwrap();
        let r = bound_prior(&tf, &rp, PriorBound::ClassicalSimpson { sup_f4: 24.0 }).unwrap();
        assert!(rel(r.value, 24.0 / 2880.0) <= 1e-15);
        assert!(r.value >= lhs_error(&tf, &rp).unwrap());
    }

    #[test]
    fn bound_kind_labels_round_trip() {
        for k in BoundKind::ALL {
            assert_eq!(k.as_str().parse::<BoundKind>().unwrap(), k);
        }
    }
}
