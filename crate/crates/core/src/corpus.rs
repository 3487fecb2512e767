//! Inline function descriptions and the seeded random corpora used by the
//! verification suites and the CLI.
//!
//! Every generator takes an explicit seed; [`CORPUS_VERSION`] changes
//! whenever a generator's output for a given seed changes.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classes::{
    certify, certify_membership, ClassCertificate, ClassKind, ClassWitness, HModulus, TestFunction,
    DEFAULT_CERTIFICATE_SAMPLES, DEFAULT_CERTIFICATE_SEED,
};
use crate::error::{Error, Result};
use crate::oracle::HadamardVariant;

pub const CORPUS_VERSION: u32 = 1;

/// A closed-form `(f, f')` pair.
#[derive(Debug, Clone, PartialEq)]
pub enum FunctionSpec {
    /// `Σ c_i x^i`
    Poly(Vec<f64>),
    /// `β x^r` on `x >= 0`
    Power { beta: f64, r: f64 },
    /// `β e^{kx}`
    Exp { beta: f64, k: f64 },
    /// `β (c - x)^r` on `x <= c`
    Mirror { beta: f64, r: f64, c: f64 },
    /// `f' = base + tanh(k(x - x0))`
    Tanh { base: f64, k: f64, x0: f64 },
}

// ln cosh(y) without overflow.
fn ln_cosh(y: f64) -> f64 {
    let a = y.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

impl FunctionSpec {
    pub fn f(&self, x: f64) -> f64 {
        match self {
            FunctionSpec::Poly(c) => c.iter().rev().fold(0.0, |acc, &ci| acc * x + ci),
            FunctionSpec::Power { beta, r } => beta * x.powf(*r),
            FunctionSpec::Exp { beta, k } => beta * (k * x).exp(),
            FunctionSpec::Mirror { beta, r, c } => beta * (c - x).powf(*r),
            FunctionSpec::Tanh { base, k, x0 } => base * x + ln_cosh(k * (x - x0)) / k,
        }
    }

    pub fn f_prime(&self, x: f64) -> f64 {
        match self {
            FunctionSpec::Poly(c) => c
                .iter()
                .enumerate()
                .skip(1)
                .rev()
                .fold(0.0, |acc, (i, &ci)| acc * x + i as f64 * ci),
            FunctionSpec::Power { beta, r } => beta * r * x.powf(r - 1.0),
            FunctionSpec::Exp { beta, k } => beta * k * (k * x).exp(),
            FunctionSpec::Mirror { beta, r, c } => -beta * r * (c - x).powf(r - 1.0),
            FunctionSpec::Tanh { base, k, x0 } => base + (k * (x - x0)).tanh(),
        }
    }

    /// Checks that `[a, b]` lies in the natural domain of the spec.
    pub fn check_interval(&self, a: f64, b: f64) -> Result<()> {
        let ok = match self {
            FunctionSpec::Power { .. } => a >= 0.0,
            FunctionSpec::Mirror { c, .. } => b <= *c,
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "[{a}, {b}] is outside the domain of {self}"
            )))
        }
    }

    pub fn test_function(&self, a: f64, b: f64, certificate: ClassCertificate) -> Result<TestFunction> {
        self.check_interval(a, b)?;
        let (s1, s2) = (self.clone(), self.clone());
        TestFunction::new(move |x| s1.f(x), move |x| s2.f_prime(x), a, b, certificate)
    }
}

fn join(xs: &[f64]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionSpec::Poly(c) => write!(f, "poly:{}", join(c)),
            FunctionSpec::Power { beta, r } => write!(f, "power:{}", join(&[*beta, *r])),
            FunctionSpec::Exp { beta, k } => write!(f, "exp:{}", join(&[*beta, *k])),
            FunctionSpec::Mirror { beta, r, c } => write!(f, "mirror:{}", join(&[*beta, *r, *c])),
            FunctionSpec::Tanh { base, k, x0 } => write!(f, "tanh:{}", join(&[*base, *k, *x0])),
        }
    }
}

impl FromStr for FunctionSpec {
    type Err = Error;

    /// Parses `poly:c0,c1,...`, `power:beta,r`, `exp:beta,k`,
    /// `mirror:beta,r,c` or `tanh:base,k,x0`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidParams(format!("function spec '{s}': {msg}"));
        let (name, args) = s.split_once(':').ok_or_else(|| bad("expected NAME:ARGS"))?;
        let nums = args
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| bad("arguments must be numbers"))?;
        if nums.iter().any(|x| !x.is_finite()) {
            return Err(bad("arguments must be finite"));
        }
        let want = |n: usize| {
            if nums.len() == n {
                Ok(())
            } else {
                Err(bad(&format!("expected {n} arguments, got {}", nums.len())))
            }
        };
        match name {
            "poly" => Ok(FunctionSpec::Poly(nums)),
            "power" => {
                want(2)?;
                Ok(FunctionSpec::Power {
                    beta: nums[0],
                    r: nums[1],
                })
            }
            "exp" => {
                want(2)?;
                Ok(FunctionSpec::Exp {
                    beta: nums[0],
                    k: nums[1],
                })
            }
            "mirror" => {
                want(3)?;
                Ok(FunctionSpec::Mirror {
                    beta: nums[0],
                    r: nums[1],
                    c: nums[2],
                })
            }
            "tanh" => {
                want(3)?;
                if nums[1] == 0.0 {
                    return Err(bad("k must be nonzero"));
                }
                Ok(FunctionSpec::Tanh {
                    base: nums[0],
                    k: nums[1],
                    x0: nums[2],
                })
            }
            _ => Err(bad("unknown function family")),
        }
    }
}

/// A spec on an interval with its declared class.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub spec: FunctionSpec,
    pub a: f64,
    pub b: f64,
    pub certificate: ClassCertificate,
}

impl CorpusEntry {
    pub fn test_function(&self) -> Result<TestFunction> {
        self.spec.test_function(self.a, self.b, self.certificate.clone())
    }
}

/// Classes the witness pools are drawn from; the class is that of `|f'|^q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PoolClass {
    /// Convex, modulus `t`.
    Convex,
    /// `s`-convex, modulus `t^s`.
    SConvex { s: f64 },
    /// `s`-convex with `t^s` supplied as a custom modulus, so every moment is
    /// computed numerically.
    SConvexCustom { s: f64 },
    /// P-functions, modulus `1`.
    PFunction,
    /// Concave, modulus `t` (h-concave).
    Concave,
    /// h-concave with the custom modulus `t²`.
    ConcaveSquare,
}

impl PoolClass {
    pub fn certificate(&self, q: f64) -> Result<ClassCertificate> {
        match *self {
            PoolClass::Convex => ClassCertificate::convex(HModulus::Identity, q),
            PoolClass::SConvex { s } => ClassCertificate::convex(HModulus::power(s)?, q),
            PoolClass::SConvexCustom { s } => ClassCertificate::convex(
                HModulus::custom(format!("t^{s}"), move |t: f64| t.powf(s), true)?,
                q,
            ),
            PoolClass::PFunction => ClassCertificate::convex(HModulus::Constant, q),
            PoolClass::Concave => ClassCertificate::concave(HModulus::Identity, q),
            PoolClass::ConcaveSquare => {
                ClassCertificate::concave(HModulus::custom("t^2", |t: f64| t * t, true)?, q)
            }
        }
    }

    pub fn is_concave(&self) -> bool {
        matches!(self, PoolClass::Concave | PoolClass::ConcaveSquare)
    }
}

fn interval(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> (f64, f64) {
    let a = rng.gen_range(lo..=hi);
    (a, a + rng.gen_range(0.1..=3.0))
}

fn beta(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(0.2..=2.0)
}

// Specs whose |f'|^q is convex (hence s-convex and P as well) for any q >= 1.
fn convex_spec(rng: &mut ChaCha8Rng) -> (FunctionSpec, f64, f64) {
    match rng.gen_range(0..4) {
        0 => {
            let (a, b) = interval(rng, -2.0, 1.0);
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            (
                FunctionSpec::Exp {
                    beta: sign * beta(rng),
                    k: rng.gen_range(-2.0..=2.0),
                },
                a,
                b,
            )
        }
        1 => {
            let (a, b) = interval(rng, 0.0, 2.0);
            (
                FunctionSpec::Power {
                    beta: beta(rng),
                    r: rng.gen_range(2.0..=4.0),
                },
                a,
                b,
            )
        }
        2 => {
            // f = d x + c (x - x0)³, f' = d + 3c(x - x0)² >= 0
            let (a, b) = interval(rng, -2.0, 2.0);
            let c = rng.gen_range(0.1..=1.0);
            let d = rng.gen_range(0.0..=2.0);
            let x0 = rng.gen_range(a..=b);
            let coeffs = vec![-c * x0.powi(3), 3.0 * c * x0 * x0 + d, -3.0 * c * x0, c];
            (FunctionSpec::Poly(coeffs), a, b)
        }
        _ => {
            // f' affine, |f'| convex
            let (a, b) = interval(rng, -2.0, 2.0);
            let c = rng.gen_range(-2.0..=2.0);
            let e = rng.gen_range(-2.0..=2.0);
            (FunctionSpec::Poly(vec![0.0, e, c]), a, b)
        }
    }
}

fn pool_spec(rng: &mut ChaCha8Rng, class: PoolClass, q: f64) -> (FunctionSpec, f64, f64) {
    match class {
        PoolClass::Convex => convex_spec(rng),
        PoolClass::SConvex { s } | PoolClass::SConvexCustom { s } => {
            if rng.gen_bool(0.6) {
                // |f'|^q ∝ x^σ with σ in [s, 1]
                let sigma = rng.gen_range(s..=1.0);
                let (a, b) = interval(rng, 0.0, 2.0);
                (
                    FunctionSpec::Power {
                        beta: beta(rng),
                        r: sigma / q + 1.0,
                    },
                    a,
                    b,
                )
            } else {
                convex_spec(rng)
            }
        }
        PoolClass::PFunction => {
            if rng.gen_bool(0.6) {
                let (a, b) = interval(rng, -2.0, 2.0);
                let base = rng.gen_range(1.0..=2.0);
                let k = rng.gen_range(0.5..=5.0);
                (
                    FunctionSpec::Tanh {
                        base,
                        k,
                        x0: rng.gen_range(a..=b),
                    },
                    a,
                    b,
                )
            } else {
                convex_spec(rng)
            }
        }
        PoolClass::Concave | PoolClass::ConcaveSquare => {
            // |f'|^q ∝ x^{(r-1)q} or (c-x)^{(r-1)q} with (r-1)q in (0, 1]
            let r = 1.0 + rng.gen_range(0.05..=1.0) / q;
            if rng.gen_bool(0.5) {
                let (a, b) = interval(rng, 0.1, 2.0);
                (FunctionSpec::Power { beta: beta(rng), r }, a, b)
            } else {
                let (a, b) = interval(rng, -2.0, 2.0);
                let c = b + rng.gen_range(0.0..=1.0);
                (
                    FunctionSpec::Mirror {
                        beta: beta(rng),
                        r,
                        c,
                    },
                    a,
                    b,
                )
            }
        }
    }
}

/// `n` witnesses whose `|f'|^q` belongs to `class`, each certified by
/// sampling. Fails if any witness is rejected.
pub fn witness_pool(class: PoolClass, q: f64, n: usize, seed: u64) -> Result<Vec<CorpusEntry>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let certificate = class.certificate(q)?;
    (0..n)
        .map(|_| {
            let (spec, a, b) = pool_spec(&mut rng, class, q);
            let entry = CorpusEntry {
                spec,
                a,
                b,
                certificate: certificate.clone(),
            };
            let report = certify_membership(&entry.test_function()?, DEFAULT_CERTIFICATE_SAMPLES)?;
            if !report.holds {
                return Err(Error::ClassMismatch(format!(
                    "corpus witness {} on [{}, {}] failed certification (excess {:e})",
                    entry.spec, entry.a, entry.b, report.worst_violation
                )));
            }
            Ok(entry)
        })
        .collect()
}

/// Random smooth function on a random interval with rule parameters, for
/// identity checks. Class is not certified.
#[derive(Debug, Clone)]
pub struct IdentityCase {
    pub spec: FunctionSpec,
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
    pub lambda: f64,
}

pub fn identity_cases(n: usize, seed: u64) -> Vec<IdentityCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let (spec, a, b) = match rng.gen_range(0..3) {
                0 => {
                    let deg = rng.gen_range(0..=5);
                    let c = (0..=deg).map(|_| rng.gen_range(-2.0..=2.0)).collect();
                    let (a, b) = interval(&mut rng, -2.0, 2.0);
                    (FunctionSpec::Poly(c), a, b)
                }
                1 => {
                    let (a, b) = interval(&mut rng, 0.1, 2.0);
                    (
                        FunctionSpec::Power {
                            beta: beta(&mut rng),
                            r: rng.gen_range(0.5..=4.0),
                        },
                        a,
                        b,
                    )
                }
                _ => {
                    let (a, b) = interval(&mut rng, -2.0, 2.0);
                    (
                        FunctionSpec::Exp {
                            beta: rng.gen_range(-2.0..=2.0),
                            k: rng.gen_range(-2.0..=2.0),
                        },
                        a,
                        b,
                    )
                }
            };
            IdentityCase {
                spec,
                a,
                b,
                alpha: rng.gen(),
                lambda: rng.gen(),
            }
        })
        .collect()
}

/// A nonnegative function `f` (not its derivative) declared h-convex on
/// `[a, b]`, for the Hadamard chains.
#[derive(Debug, Clone)]
pub struct HadamardCase {
    pub spec: FunctionSpec,
    pub a: f64,
    pub b: f64,
    pub modulus: HModulus,
}

impl HadamardCase {
    pub fn witness(&self) -> Result<ClassWitness> {
        self.spec.check_interval(self.a, self.b)?;
        let spec = self.spec.clone();
        ClassWitness::new(
            move |x| spec.f(x),
            self.a,
            self.b,
            ClassKind::HConvex(self.modulus.clone()),
        )
    }
}

/// Modulus the chain of `variant` is stated for; `s` is used by the
/// `s`-convex chain and `h` by the general one.
pub fn hadamard_modulus(variant: HadamardVariant, s: f64, h: &HModulus) -> Result<HModulus> {
    match variant {
        HadamardVariant::Classical => Ok(HModulus::Identity),
        HadamardVariant::SConvex => {
            if !(s > 0.0 && s < 1.0) {
                return Err(Error::InvalidParams(format!(
                    "the s-convex chain needs s in (0, 1), got {s}"
                )));
            }
            HModulus::power(s)
        }
        HadamardVariant::GodunovaLevin => Ok(HModulus::Reciprocal),
        HadamardVariant::PFunction => Ok(HModulus::Constant),
        HadamardVariant::HConvex => Ok(h.clone()),
    }
}

// Nonnegative convex f; these are in every class with h(t) >= t.
fn nonneg_convex_spec(rng: &mut ChaCha8Rng) -> (FunctionSpec, f64, f64) {
    match rng.gen_range(0..3) {
        0 => {
            let (a, b) = interval(rng, -2.0, 1.0);
            (
                FunctionSpec::Exp {
                    beta: beta(rng),
                    k: rng.gen_range(-2.0..=2.0),
                },
                a,
                b,
            )
        }
        1 => {
            let (a, b) = interval(rng, 0.0, 2.0);
            (
                FunctionSpec::Power {
                    beta: beta(rng),
                    r: rng.gen_range(1.0..=4.0),
                },
                a,
                b,
            )
        }
        _ => {
            let (a, b) = interval(rng, -2.0, 2.0);
            let c = rng.gen_range(0.1..=2.0);
            let d = rng.gen_range(a..=b);
            let e = rng.gen_range(0.0..=1.0);
            (FunctionSpec::Poly(vec![c * d * d + e, -2.0 * c * d, c]), a, b)
        }
    }
}

// Nonnegative monotone f, which satisfy f(z) <= max(f(x), f(y)).
fn monotone_spec(rng: &mut ChaCha8Rng) -> (FunctionSpec, f64, f64) {
    let r = rng.gen_range(0.05..=1.0);
    if rng.gen_bool(0.5) {
        let (a, b) = interval(rng, 0.0, 2.0);
        (FunctionSpec::Power { beta: beta(rng), r }, a, b)
    } else {
        let (a, b) = interval(rng, -2.0, 2.0);
        let c = b + rng.gen_range(0.0..=1.0);
        (
            FunctionSpec::Mirror {
                beta: beta(rng),
                r,
                c,
            },
            a,
            b,
        )
    }
}

fn hadamard_spec(rng: &mut ChaCha8Rng, h: &HModulus) -> (FunctionSpec, f64, f64) {
    match h {
        HModulus::Identity => nonneg_convex_spec(rng),
        HModulus::Power(s) => {
            if rng.gen_bool(0.5) {
                // β x^σ with σ in [s, 1] on x >= 0
                let (a, b) = interval(rng, 0.0, 2.0);
                (
                    FunctionSpec::Power {
                        beta: beta(rng),
                        r: rng.gen_range(*s..=1.0),
                    },
                    a,
                    b,
                )
            } else {
                nonneg_convex_spec(rng)
            }
        }
        HModulus::Constant | HModulus::Reciprocal => {
            if rng.gen_bool(0.5) {
                monotone_spec(rng)
            } else {
                nonneg_convex_spec(rng)
            }
        }
        HModulus::Custom(_) => nonneg_convex_spec(rng),
    }
}

/// `n` certified witnesses for the chain of `variant`. Custom moduli draw
/// nonnegative convex functions, so they must dominate `t`.
pub fn hadamard_pool(
    variant: HadamardVariant,
    s: f64,
    h: &HModulus,
    n: usize,
    seed: u64,
) -> Result<Vec<HadamardCase>> {
    let modulus = hadamard_modulus(variant, s, h)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let (spec, a, b) = hadamard_spec(&mut rng, &modulus);
            let case = HadamardCase {
                spec,
                a,
                b,
                modulus: modulus.clone(),
            };
            let report = certify(
                &case.witness()?,
                DEFAULT_CERTIFICATE_SAMPLES,
                DEFAULT_CERTIFICATE_SEED,
            )?;
            if !report.holds {
                return Err(Error::ClassMismatch(format!(
                    "Hadamard witness {} on [{}, {}] failed certification (excess {:e})",
                    case.spec, case.a, case.b, report.worst_violation
                )));
            }
            Ok(case)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specs_round_trip_through_strings() {
        let specs = [
            FunctionSpec::Poly(vec![0.1, -2.0, 3.25]),
            FunctionSpec::Power {
                beta: 1.5,
                r: 2.0 / 3.0,
            },
            FunctionSpec::Exp { beta: -0.7, k: 1.1 },
            FunctionSpec::Mirror {
                beta: 1.0,
                r: 1.5,
                c: 4.0,
            },
            FunctionSpec::Tanh {
                base: 1.2,
                k: 3.0,
                x0: 0.4,
            },
        ];
        for s in specs {
            assert_eq!(s.to_string().parse::<FunctionSpec>().unwrap(), s);
        }
        assert!("poly".parse::<FunctionSpec>().is_err());
        assert!("exp:1".parse::<FunctionSpec>().is_err());
        assert!("sin:1,2".parse::<FunctionSpec>().is_err());
        assert!("tanh:1,0,0".parse::<FunctionSpec>().is_err());
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let cert = ClassCertificate::convex(HModulus::Identity, 1.0).unwrap();
        let cases = [
            (FunctionSpec::Poly(vec![1.0, -2.0, 0.5, 0.25]), -1.0, 2.0),
            (FunctionSpec::Power { beta: 2.0, r: 1.3 }, 0.0, 2.0),
            (FunctionSpec::Exp { beta: -1.0, k: 0.8 }, -1.0, 1.0),
            (
                FunctionSpec::Mirror {
                    beta: 1.0,
                    r: 1.4,
                    c: 3.0,
                },
                0.0,
                3.0,
            ),
            (
                FunctionSpec::Tanh {
                    base: 1.0,
                    k: 40.0,
                    x0: 0.5,
                },
                0.0,
                1.0,
            ),
        ];
        for (s, a, b) in cases {
            s.test_function(a, b, cert.clone())
                .unwrap()
                .check_derivative()
                .unwrap();
        }
    }

    #[test]
    fn tanh_spec_is_stable_for_large_arguments() {
        let s = FunctionSpec::Tanh {
            base: 1.0,
            k: 1e3,
            x0: 0.0,
        };
        assert!(s.f(1.0).is_finite() && s.f(-1.0).is_finite());
    }

    #[test]
    fn domain_checked() {
        let cert = ClassCertificate::convex(HModulus::Identity, 1.0).unwrap();
        assert!(FunctionSpec::Power { beta: 1.0, r: 2.0 }
            .test_function(-1.0, 1.0, cert.clone())
            .is_err());
        assert!(FunctionSpec::Mirror {
            beta: 1.0,
            r: 2.0,
            c: 0.5
        }
        .test_function(0.0, 1.0, cert)
        .is_err());
    }

    #[test]
    fn pools_certify_and_are_seeded() {
        for class in [
            PoolClass::Convex,
            PoolClass::SConvex { s: 0.4 },
            PoolClass::SConvexCustom { s: 0.7 },
            PoolClass::PFunction,
            PoolClass::Concave,
            PoolClass::ConcaveSquare,
        ] {
            for q in [1.0, 2.0, 4.0] {
                let pool = witness_pool(class, q, 8, 11).unwrap();
                let again = witness_pool(class, q, 8, 11).unwrap();
                for (x, y) in pool.iter().zip(&again) {
                    assert_eq!(x.spec, y.spec);
                    assert_eq!((x.a, x.b), (y.a, y.b));
                }
            }
        }
    }

    #[test]
    fn hadamard_pools_certify_and_hold() {
        for v in HadamardVariant::ALL {
            for h in [
                HModulus::Identity,
                HModulus::Power(0.5),
                HModulus::Constant,
                HModulus::Reciprocal,
            ] {
                for case in hadamard_pool(v, 0.3, &h, 20, 5).unwrap() {
                    let r = crate::oracle::hadamard_check(&case.witness().unwrap(), v).unwrap();
                    assert!(r.holds, "{v:?} {} {r:?}", case.spec);
                }
            }
        }
        assert!(hadamard_pool(HadamardVariant::SConvex, 1.0, &HModulus::Identity, 1, 0).is_err());
    }

    #[test]
    fn identity_cases_are_seeded() {
        let x = identity_cases(20, 3);
        let y = identity_cases(20, 3);
        for (p, q) in x.iter().zip(&y) {
            assert_eq!(p.spec, q.spec);
            assert_eq!(p.alpha, q.alpha);
        }
    }
}
