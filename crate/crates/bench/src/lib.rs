//! Shared fixtures for the benchmarks in `benches/`.

use hquad_core::{ClassCertificate, FunctionSpec, HModulus, TestFunction};

/// `e^x` on `[0, 1]` declared with modulus `h` at exponent `q`.
pub fn exp_fixture(h: HModulus, q: f64) -> TestFunction {
    let cert = ClassCertificate::convex(h, q).expect("valid certificate");
    FunctionSpec::Exp { beta: 1.0, k: 1.0 }
        .test_function(0.0, 1.0, cert)
        .expect("valid interval")
}

/// `t^s` as a custom modulus, so every moment goes through quadrature.
pub fn custom_power(s: f64) -> HModulus {
    HModulus::custom(format!("t^{s}"), move |t: f64| t.powf(s), true).expect("valid modulus")
}
