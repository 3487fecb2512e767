//! Ground truth: adaptive integration, the exact quadrature error, the
//! integral identity behind every bound, and the Hermite–Hadamard chains.

mod quadrature;

pub use quadrature::{
    integrate_adaptive, integrate_adaptive_capped, QuadratureResult, DEFAULT_MAX_INTERVALS,
};

use crate::classes::{ClassKind, ClassWitness, HModulus, TestFunction};
use crate::error::{Error, Result};
use crate::moments::{split_at_kink, RuleParams};

/// Absolute tolerance for every oracle integral.
pub const ORACLE_TOLERANCE: f64 = 1e-12;

/// Slack allowed in the Hermite–Hadamard chains.
pub const HADAMARD_SLACK: f64 = 1e-10;

/// `λ(αf(a) + (1-α)f(b)) + (1-λ)f(αa + (1-α)b)`
pub fn rule_value(tf: &TestFunction, rp: &RuleParams) -> f64 {
    let (a, b) = (tf.a(), tf.b());
    let (al, la) = (rp.alpha(), rp.lambda());
    let ends = al * tf.f(a) + (1.0 - al) * tf.f(b);
    la * ends + (1.0 - la) * tf.f(al * a + (1.0 - al) * b)
}

/// `(1/(b-a)) ∫_a^b f`
pub fn mean_value(tf: &TestFunction) -> Result<f64> {
    let r = integrate_adaptive(|x| tf.f(x), tf.a(), tf.b(), ORACLE_TOLERANCE)?;
    Ok(r.value / tf.width())
}

/// Signed quadrature error `rule - mean`.
pub fn signed_error(tf: &TestFunction, rp: &RuleParams) -> Result<f64> {
    Ok(rule_value(tf, rp) - mean_value(tf)?)
}

/// `|rule - mean|`, the quantity every bound controls.
pub fn lhs_error(tf: &TestFunction, rp: &RuleParams) -> Result<f64> {
    Ok(signed_error(tf, rp)?.abs())
}

/// Kernel form of the error:
/// `(b-a)[∫_0^{1-α} (t-αλ) f'(tb+(1-t)a) dt + ∫_{1-α}^1 (t-1+λ(1-α)) f'(tb+(1-t)a) dt]`.
pub fn kernel_error(tf: &TestFunction, rp: &RuleParams) -> Result<f64> {
    let (a, b) = (tf.a(), tf.b());
    let x = |t: f64| t * b + (1.0 - t) * a;
    let (c, m, k) = (rp.lower_node(), rp.split(), rp.upper_node());
    let left = integrate_adaptive(|t| (t - c) * tf.f_prime(x(t)), 0.0, m, ORACLE_TOLERANCE)?;
    let right = integrate_adaptive(|t| (t - k) * tf.f_prime(x(t)), m, 1.0, ORACLE_TOLERANCE)?;
    Ok(tf.width() * (left.value + right.value))
}

/// `|signed_error - kernel_error|`; zero up to quadrature error whenever
/// `f_prime` is the derivative of `f`.
pub fn lemma_identity_residual(tf: &TestFunction, rp: &RuleParams) -> Result<f64> {
    Ok((signed_error(tf, rp)? - kernel_error(tf, rp)?).abs())
}

/// `∫_0^1 |kernel(t)| g(tb + (1-t)a) dt`, split at both kinks; the sharpest
/// quantity the bounds can be compared against.
pub fn weighted_kernel_integral<G>(g: G, a: f64, b: f64, rp: &RuleParams) -> Result<f64>
where
    G: Fn(f64) -> f64,
{
    let x = |t: f64| t * b + (1.0 - t) * a;
    let (c, m, k) = (rp.lower_node(), rp.split(), rp.upper_node());
    let mut total = 0.0;
    for (lo, hi) in split_at_kink(0.0, m, c) {
        total += integrate_adaptive(|t| (t - c).abs() * g(x(t)), lo, hi, ORACLE_TOLERANCE)?.value;
    }
    for (lo, hi) in split_at_kink(m, 1.0, k) {
        total += integrate_adaptive(|t| (t - k).abs() * g(x(t)), lo, hi, ORACLE_TOLERANCE)?.value;
    }
    Ok(total)
}

/// Hermite–Hadamard chain to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HadamardVariant {
    /// `f(mid) <= mean <= (f(a)+f(b))/2`, convex `f`.
    Classical,
    /// `2^{s-1} f(mid) <= mean <= (f(a)+f(b))/(s+1)`, `s`-convex `f`, `s < 1`.
    SConvex,
    /// `f(mid) <= 4 mean`, modulus `1/t`.
    GodunovaLevin,
    /// `f(mid) <= 2 mean <= 2(f(a)+f(b))`, modulus `1`.
    PFunction,
    /// `f(mid)/(2h(1/2)) <= mean <= (f(a)+f(b)) ∫_0^1 h`, any modulus.
    HConvex,
}

impl HadamardVariant {
    pub const ALL: [HadamardVariant; 5] = [
        HadamardVariant::Classical,
        HadamardVariant::SConvex,
        HadamardVariant::GodunovaLevin,
        HadamardVariant::PFunction,
        HadamardVariant::HConvex,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            HadamardVariant::Classical => "classical",
            HadamardVariant::SConvex => "s-convex",
            HadamardVariant::GodunovaLevin => "godunova-levin",
            HadamardVariant::PFunction => "p-function",
            HadamardVariant::HConvex => "h-convex",
        }
    }
}

impl std::str::FromStr for HadamardVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        HadamardVariant::ALL
            .into_iter()
            .find(|v| v.as_str() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown Hadamard variant '{s}'")))
    }
}

/// Terms of a Hadamard chain, normalised so `middle` is always the mean
/// `(1/(b-a)) ∫_a^b f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HadamardReport {
    pub left: f64,
    pub middle: f64,
    pub right: Option<f64>,
    pub holds: bool,
}

/// Evaluates the chain of `variant` for `witness`, whose declared class must
/// be h-convex with the modulus the variant is stated for.
pub fn hadamard_check(witness: &ClassWitness, variant: HadamardVariant) -> Result<HadamardReport> {
    let h = match witness.class() {
        ClassKind::HConvex(h) => h,
        ClassKind::HConcave(_) => {
            return Err(Error::ClassMismatch(
                "Hadamard chains need an h-convex witness".into(),
            ))
        }
    };
    let matches = match variant {
        HadamardVariant::Classical => matches!(h, HModulus::Identity),
        HadamardVariant::SConvex => matches!(h, HModulus::Power(s) if *s < 1.0),
        HadamardVariant::GodunovaLevin => matches!(h, HModulus::Reciprocal),
        HadamardVariant::PFunction => matches!(h, HModulus::Constant),
        HadamardVariant::HConvex => true,
    };
    if !matches {
        return Err(Error::ClassMismatch(format!(
            "variant {} does not apply to modulus {}",
            variant.as_str(),
            h.label()
        )));
    }

    let (a, b) = (witness.a(), witness.b());
    let fa = witness.eval(a);
    let fb = witness.eval(b);
    let fmid = witness.eval(0.5 * (a + b));
    let mean = integrate_adaptive(|x| witness.eval(x), a, b, ORACLE_TOLERANCE)?.value / (b - a);

    let (left, right) = match variant {
        HadamardVariant::Classical => (fmid, Some(0.5 * (fa + fb))),
        HadamardVariant::SConvex => {
            let s = h.power_exponent().unwrap_or(1.0);
            (2f64.powf(s - 1.0) * fmid, Some((fa + fb) / (s + 1.0)))
        }
        HadamardVariant::GodunovaLevin => (0.25 * fmid, None),
        HadamardVariant::PFunction => (0.5 * fmid, Some(fa + fb)),
        HadamardVariant::HConvex => {
            let half = h.eval(0.5)?;
            if half <= 0.0 {
                return Err(Error::DegenerateModulus);
            }
            let right = if h.integrable_on_unit() {
                Some((fa + fb) * h.integral_01()?)
            } else {
                None
            };
            (fmid / (2.0 * half), right)
        }
    };

    let slack = HADAMARD_SLACK * (1.0 + mean.abs());
    let holds = left <= mean + slack && right.iter().all(|&r| mean <= r + slack);
    Ok(HadamardReport {
        left,
        middle: mean,
        right,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::ClassCertificate;

    fn square() -> TestFunction {
        let cert = ClassCertificate::convex(HModulus::Identity, 1.0).unwrap();
        TestFunction::new(|x| x * x, |x| 2.0 * x, 0.0, 1.0, cert).unwrap()
    }

    fn convex_cert() -> ClassCertificate {
        ClassCertificate::convex(HModulus::Identity, 1.0).unwrap()
    }

    #[test]
    fn simpson_exact_on_quadratics() {
        let rp = RuleParams::new(0.5, 1.0 / 3.0, 1.0).unwrap();
        assert!(lhs_error(&square(), &rp).unwrap() <= 1e-14);
    }

    #[test]
    fn linear_midpoint_blend_exact() {
        let tf = TestFunction::new(|x| 3.0 * x - 1.0, |_| 3.0, -2.0, 5.0, convex_cert()).unwrap();
        for la in [0.0, 0.4, 1.0] {
            let rp = RuleParams::new(0.5, la, 1.0).unwrap();
            assert!(lhs_error(&tf, &rp).unwrap() <= 1e-13);
        }
    }

    #[test]
    fn simpson_quartic_error() {
        let tf = TestFunction::new(
            |x: f64| x.powi(4),
            |x: f64| 4.0 * x.powi(3),
            0.0,
            1.0,
            convex_cert(),
        )
        .unwrap();
        let rp = RuleParams::new(0.5, 1.0 / 3.0, 1.0).unwrap();
        // (0 + 4/16 + 1)/6 - 1/5
        assert!((lhs_error(&tf, &rp).unwrap() - 1.0 / 120.0).abs() <= 1e-14);
    }

    #[test]
    fn identity_residuals_small() {
        let cube =
            TestFunction::new(|x: f64| x.powi(3), |x: f64| 3.0 * x * x, 0.0, 2.0, convex_cert()).unwrap();
        let rp = RuleParams::new(0.3, 0.7, 1.0).unwrap();
        assert!(lemma_identity_residual(&cube, &rp).unwrap() <= 1e-9);

        let exp = TestFunction::new(f64::exp, f64::exp, 0.0, 1.0, convex_cert()).unwrap();
        let rp = RuleParams::new(0.5, 1.0 / 3.0, 1.0).unwrap();
        assert!(lemma_identity_residual(&exp, &rp).unwrap() <= 1e-9);

        let constant = TestFunction::new(|_| 2.5, |_| 0.0, -1.0, 1.0, convex_cert()).unwrap();
        assert_eq!(kernel_error(&constant, &rp).unwrap(), 0.0);
        assert!(lhs_error(&constant, &rp).unwrap() <= 1e-14);
    }

    #[test]
    fn weighted_kernel_constant_weight() {
        let rp = RuleParams::new(0.5, 1.0 / 3.0, 1.0).unwrap();
        let v = weighted_kernel_integral(|_| 1.0, 0.0, 1.0, &rp).unwrap();
        assert!((v - 10.0 / 72.0).abs() <= 1e-13);
    }

    fn witness(g: fn(f64) -> f64, h: HModulus) -> ClassWitness {
        ClassWitness::new(g, 0.0, 1.0, ClassKind::HConvex(h)).unwrap()
    }

    #[test]
    fn classical_chain_on_square() {
        let r = hadamard_check(
            &witness(|x| x * x, HModulus::Identity),
            HadamardVariant::Classical,
        )
        .unwrap();
        assert!(r.holds);
        assert!((r.left - 0.25).abs() <= 1e-15);
        assert!((r.middle - 1.0 / 3.0).abs() <= 1e-13);
        assert!((r.right.unwrap() - 0.5).abs() <= 1e-15);
        let h = hadamard_check(&witness(|x| x * x, HModulus::Identity), HadamardVariant::HConvex).unwrap();
        assert!((h.left - r.left).abs() <= 1e-12);
        assert!((h.right.unwrap() - r.right.unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn s_convex_chain_on_root() {
        let w = witness(f64::sqrt, HModulus::Power(0.5));
        let r = hadamard_check(&w, HadamardVariant::SConvex).unwrap();
        assert!(r.holds);
        assert!((r.left - 0.5f64.sqrt() * 0.5f64.sqrt()).abs() <= 1e-15);
        assert!((r.right.unwrap() - 1.0 / 1.5).abs() <= 1e-15);
    }

    #[test]
    fn variants_require_matching_modulus() {
        let w = witness(|x| x * x, HModulus::Identity);
        for v in [
            HadamardVariant::SConvex,
            HadamardVariant::GodunovaLevin,
            HadamardVariant::PFunction,
        ] {
            assert!(matches!(hadamard_check(&w, v), Err(Error::ClassMismatch(_))));
        }
        let gl = hadamard_check(
            &witness(|x| 1.0 + x, HModulus::Reciprocal),
            HadamardVariant::GodunovaLevin,
        )
        .unwrap();
        assert!(gl.right.is_none() && gl.holds);
        let hc = hadamard_check(
            &witness(|x| 1.0 + x, HModulus::Reciprocal),
            HadamardVariant::HConvex,
        )
        .unwrap();
        assert!(hc.right.is_none());
        assert!((hc.left - gl.left).abs() <= 1e-15);
    }

    #[test]
    fn variant_names_round_trip() {
        for v in HadamardVariant::ALL {
            assert_eq!(v.as_str().parse::<HadamardVariant>().unwrap(), v);
        }
    }
}
