//! Modulus functions `h`, the h-convex / h-concave function classes built on
//! them, and sampled membership certificates.
//!
//! A nonnegative `g` is h-convex on `[a, b]` when
//! `g(αx + (1-α)y) <= h(α) g(x) + h(1-α) g(y)` for all `x, y` in `[a, b]` and
//! `α` in `(0, 1)`; h-concave when the inequality is reversed. The named
//! moduli recover the classical families: `t` (convex), `t^s` (s-convex in the
//! second sense), `1` (P-functions) and `1/t` (Godunova–Levin).

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::oracle::integrate_adaptive;

/// Shared real-valued evaluable.
pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Number of `(x, y, α)` triples drawn by [`certify_membership`].
pub const DEFAULT_CERTIFICATE_SAMPLES: usize = 10_000;

/// Seed used when the caller does not supply one.
pub const DEFAULT_CERTIFICATE_SEED: u64 = 0x5eed_0001;

/// Relative slack of the sampled membership check.
pub const CERTIFICATE_TOLERANCE: f64 = 1e-12;

/// Absolute tolerance for numerically integrated custom moduli.
pub const MODULUS_INTEGRAL_TOLERANCE: f64 = 1e-12;

/// User-supplied modulus with caller-declared integrability on `[0, 1]`.
#[derive(Clone)]
pub struct CustomModulus {
    name: String,
    func: RealFn,
    integrable: bool,
}

impl CustomModulus {
    pub fn name(&self) -> &str {
        &self.name
    }
}

impl fmt::Debug for CustomModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomModulus")
            .field("name", &self.name)
            .field("integrable", &self.integrable)
            .finish_non_exhaustive()
    }
}

/// The modulus `h` of an h-convex class.
#[derive(Debug, Clone)]
pub enum HModulus {
    /// `h(t) = t`
    Identity,
    /// `h(t) = t^s`, `s` in `(0, 1]`
    Power(f64),
    /// `h(t) = 1`
    Constant,
    /// `h(t) = 1/t`
    Reciprocal,
    Custom(CustomModulus),
}

impl HModulus {
    pub fn power(s: f64) -> Result<Self> {
        if s > 0.0 && s <= 1.0 {
            Ok(HModulus::Power(s))
        } else {
            Err(Error::InvalidParams(format!(
                "power modulus needs s in (0, 1], got {s}"
            )))
        }
    }

    /// Wraps a user modulus. It is spot-checked for nonnegativity and for not
    /// being identically zero on a grid in `(0, 1)`; integrability is taken
    /// from the caller.
    pub fn custom<F>(name: impl Into<String>, func: F, integrable: bool) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let mut nonzero = false;
        for i in 1..128 {
            let t = f64::from(i) / 128.0;
            let v = func(t);
            if !v.is_finite() || v < 0.0 {
                return Err(Error::Evaluation { t, value: v });
            }
            nonzero |= v > 0.0;
        }
        if !nonzero {
            return Err(Error::InvalidParams("modulus is identically zero".into()));
        }
        Ok(HModulus::Custom(CustomModulus {
            name: name.into(),
            func: Arc::new(func),
            integrable,
        }))
    }

    /// `h(t)` for `t` in `(0, 1)`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if !(t > 0.0 && t < 1.0) {
            return Err(Error::Domain(format!(
                "modulus argument must lie in (0, 1), got {t}"
            )));
        }
        let v = self.value_at(t);
        if v.is_finite() && v >= 0.0 {
            Ok(v)
        } else {
            Err(Error::Evaluation { t, value: v })
        }
    }

    /// Unchecked evaluation, used inside integrands where the endpoints of
    /// `[0, 1]` are measure-zero.
    pub(crate) fn value_at(&self, t: f64) -> f64 {
        match self {
            HModulus::Identity => t,
            HModulus::Power(s) => t.powf(*s),
            HModulus::Constant => 1.0,
            HModulus::Reciprocal => 1.0 / t,
            HModulus::Custom(c) => (c.func)(t),
        }
    }

    pub fn integrable_on_unit(&self) -> bool {
        match self {
            HModulus::Identity | HModulus::Power(_) | HModulus::Constant => true,
            HModulus::Reciprocal => false,
            HModulus::Custom(c) => c.integrable,
        }
    }

    /// `∫_0^1 h(t) dt`.
    pub fn integral_01(&self) -> Result<f64> {
        match self {
            HModulus::Identity => Ok(0.5),
            HModulus::Power(s) => Ok(1.0 / (s + 1.0)),
            HModulus::Constant => Ok(1.0),
            HModulus::Reciprocal => Err(Error::NotIntegrable("h(t) = 1/t on [0, 1]".into())),
            HModulus::Custom(c) if !c.integrable => Err(Error::NotIntegrable(format!(
                "custom modulus '{}' declared non-integrable",
                c.name
            ))),
            HModulus::Custom(c) => {
                let f = c.func.clone();
                Ok(integrate_adaptive(move |t| f(t), 0.0, 1.0, MODULUS_INTEGRAL_TOLERANCE)?.value)
            }
        }
    }

    /// The exponent `s` when `h(t) = t^s` in closed form (`Constant` is `s = 0`).
    pub fn power_exponent(&self) -> Option<f64> {
        match self {
            HModulus::Identity => Some(1.0),
            HModulus::Power(s) => Some(*s),
            HModulus::Constant => Some(0.0),
            _ => None,
        }
    }

    /// Short label used in reports: `t`, `t^s`, `1`, `1/t` or the custom name.
    pub fn label(&self) -> String {
        match self {
            HModulus::Identity => "t".into(),
            HModulus::Power(s) => format!("t^{s}"),
            HModulus::Constant => "1".into(),
            HModulus::Reciprocal => "1/t".into(),
            HModulus::Custom(c) => c.name.clone(),
        }
    }
}

/// Whether a function is h-convex or h-concave.
#[derive(Debug, Clone)]
pub enum ClassKind {
    HConvex(HModulus),
    HConcave(HModulus),
}

impl ClassKind {
    pub fn modulus(&self) -> &HModulus {
        match self {
            ClassKind::HConvex(h) | ClassKind::HConcave(h) => h,
        }
    }

    pub fn is_concave(&self) -> bool {
        matches!(self, ClassKind::HConcave(_))
    }
}

/// Declared class of `|f'|^q`.
#[derive(Debug, Clone)]
pub struct ClassCertificate {
    class: ClassKind,
    exponent_q: f64,
}

impl ClassCertificate {
    pub fn new(class: ClassKind, exponent_q: f64) -> Result<Self> {
        if !(exponent_q >= 1.0) || !exponent_q.is_finite() {
            return Err(Error::InvalidParams(format!(
                "certificate exponent q must be finite and >= 1, got {exponent_q}"
            )));
        }
        Ok(ClassCertificate { class, exponent_q })
    }

    pub fn convex(h: HModulus, exponent_q: f64) -> Result<Self> {
        Self::new(ClassKind::HConvex(h), exponent_q)
    }

    pub fn concave(h: HModulus, exponent_q: f64) -> Result<Self> {
        Self::new(ClassKind::HConcave(h), exponent_q)
    }

    pub fn class(&self) -> &ClassKind {
        &self.class
    }

    pub fn modulus(&self) -> &HModulus {
        self.class.modulus()
    }

    pub fn exponent_q(&self) -> f64 {
        self.exponent_q
    }
}

/// A pair `(f, f')` on `[a, b]` together with the declared class of `|f'|^q`.
#[derive(Clone)]
pub struct TestFunction {
    f: RealFn,
    f_prime: RealFn,
    a: f64,
    b: f64,
    certificate: ClassCertificate,
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TestFunction")
            .field("a", &self.a)
            .field("b", &self.b)
            .field("certificate", &self.certificate)
            .finish_non_exhaustive()
    }
}

impl TestFunction {
    pub fn new<F, D>(f: F, f_prime: D, a: f64, b: f64, certificate: ClassCertificate) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        D: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::from_shared(Arc::new(f), Arc::new(f_prime), a, b, certificate)
    }

    pub fn from_shared(
        f: RealFn,
        f_prime: RealFn,
        a: f64,
        b: f64,
        certificate: ClassCertificate,
    ) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::Domain(format!(
                "interval needs finite a < b, got [{a}, {b}]"
            )));
        }
        Ok(TestFunction {
            f,
            f_prime,
            a,
            b,
            certificate,
        })
    }

    pub fn f(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    pub fn f_prime(&self, x: f64) -> f64 {
        (self.f_prime)(x)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    pub fn certificate(&self) -> &ClassCertificate {
        &self.certificate
    }

    /// Same `(f, f')` on the same interval with another certificate.
    pub fn with_certificate(&self, certificate: ClassCertificate) -> Self {
        TestFunction {
            certificate,
            ..self.clone()
        }
    }

    /// `|f'(x)|^q` for the certificate's `q`.
    pub fn derivative_power(&self, x: f64) -> f64 {
        self.f_prime(x).abs().powf(self.certificate.exponent_q)
    }

    /// Checks `f'` against a central difference of `f` at 11 interior points
    /// (relative tolerance `1e-6`).
    pub fn check_derivative(&self) -> Result<()> {
        let w = self.width();
        let step = 1e-5 * w;
        for i in 1..=11 {
            let x = self.a + w * f64::from(i) / 12.0;
            let fd = (self.f(x + step) - self.f(x - step)) / (2.0 * step);
            let fp = self.f_prime(x);
            if !fd.is_finite() || !fp.is_finite() || (fd - fp).abs() > 1e-6 * fd.abs().max(fp.abs()).max(1.0)
            {
                return Err(Error::InvalidParams(format!(
                    "f' disagrees with finite difference at x = {x}: {fp} vs {fd}"
                )));
            }
        }
        Ok(())
    }

    /// The nonnegative function `|f'|^q` as a class member on `[a, b]`.
    pub fn derivative_power_witness(&self) -> ClassWitness {
        let fp = self.f_prime.clone();
        let q = self.certificate.exponent_q;
        ClassWitness {
            g: Arc::new(move |x| fp(x).abs().powf(q)),
            a: self.a,
            b: self.b,
            class: self.certificate.class.clone(),
        }
    }
}

/// A nonnegative function declared to belong to an h-convex or h-concave class.
#[derive(Clone)]
pub struct ClassWitness {
    g: RealFn,
    a: f64,
    b: f64,
    class: ClassKind,
}

impl fmt::Debug for ClassWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ClassWitness")
            .field("a", &self.a)
            .field("b", &self.b)
            .field("class", &self.class)
            .finish_non_exhaustive()
    }
}

impl ClassWitness {
    pub fn new<G>(g: G, a: f64, b: f64, class: ClassKind) -> Result<Self>
    where
        G: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::from_shared(Arc::new(g), a, b, class)
    }

    pub fn from_shared(g: RealFn, a: f64, b: f64, class: ClassKind) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::Domain(format!(
                "interval needs finite a < b, got [{a}, {b}]"
            )));
        }
        Ok(ClassWitness { g, a, b, class })
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.g)(x)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn class(&self) -> &ClassKind {
        &self.class
    }
}

/// Result of a sampled membership check.
#[derive(Debug, Clone, PartialEq)]
pub struct CertificateReport {
    pub holds: bool,
    /// Largest sampled excess of the class inequality (negative when every
    /// sample holds strictly).
    pub worst_violation: f64,
    /// `(x, y, α)` of the worst sample when the check fails.
    pub witness: Option<(f64, f64, f64)>,
    /// `1 + max |g|` over the samples; the tolerance is scaled by it.
    pub scale: f64,
}

/// Sampled check that `|f'|^q` satisfies the certificate's class inequality.
pub fn certify_membership(tf: &TestFunction, n_samples: usize) -> Result<CertificateReport> {
    certify(
        &tf.derivative_power_witness(),
        n_samples,
        DEFAULT_CERTIFICATE_SEED,
    )
}

/// Sampled check of the class inequality for `witness` with a seeded
/// generator. `α` is drawn from the open interval `(0, 1)`.
pub fn certify(witness: &ClassWitness, n_samples: usize, seed: u64) -> Result<CertificateReport> {
    if n_samples == 0 {
        return Err(Error::InvalidParams("n_samples must be >= 1".into()));
    }
    let h = witness.class.modulus();
    let sign = if witness.class.is_concave() { -1.0 } else { 1.0 };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut worst = f64::NEG_INFINITY;
    let mut worst_at = (0.0, 0.0, 0.0);
    let mut max_abs: f64 = 0.0;

    for _ in 0..n_samples {
        let x = rng.gen_range(witness.a..=witness.b);
        let y = rng.gen_range(witness.a..=witness.b);
        let alpha = loop {
            let t: f64 = rng.gen();
            if t > 0.0 {
                break t;
            }
        };
        let z = alpha * x + (1.0 - alpha) * y;
        let (gx, gy, gz) = (witness.eval(x), witness.eval(y), witness.eval(z));
        for (pt, v) in [(x, gx), (y, gy), (z, gz)] {
            if !v.is_finite() {
                return Err(Error::NonFiniteSample { x: pt });
            }
        }
        let rhs = h.eval(alpha)? * gx + h.eval(1.0 - alpha)? * gy;
        let excess = sign * (gz - rhs);
        max_abs = max_abs.max(gx.abs()).max(gy.abs()).max(gz.abs());
        if excess > worst {
            worst = excess;
            worst_at = (x, y, alpha);
        }
    }

    let scale = 1.0 + max_abs;
    let holds = worst <= CERTIFICATE_TOLERANCE * scale;
    Ok(CertificateReport {
        holds,
        worst_violation: worst,
        witness: (!holds).then_some(worst_at),
        scale,
    })
}
