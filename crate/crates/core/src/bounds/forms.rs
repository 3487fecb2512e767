//! Closed-form bounds written directly in terms of derivative magnitudes.
//!
//! Each function takes the interval width and the values `|f'(x)|` at the
//! points the bound needs (`da = |f'(a)|`, `db = |f'(b)|`, `dm = |f'((a+b)/2)|`)
//! and evaluates the expression as a standalone formula, independent of the
//! moment machinery in the parent module.

use crate::moments::{branch_select, gamma_coeffs, mu_eta_convex, upsilon_coeffs, CaseBranch, RuleParams};

fn qroot(x: f64, q: f64) -> f64 {
    x.powf(1.0 / q)
}

/// Power-mean bound for convex `|f'|^q` with the polynomial μ/η table.
pub fn convex_power_mean(width: f64, rp: &RuleParams, da: f64, db: f64) -> f64 {
    let q = rp.q();
    let (ga, gb) = (da.powf(q), db.powf(q));
    let (g1, g2) = gamma_coeffs(rp);
    let (u1, u2) = upsilon_coeffs(rp);
    let [m1, m2, m3, m4] = mu_eta_convex(rp).mu;
    let [e1, e2, e3, e4] = mu_eta_convex(rp).eta;
    let e = 1.0 - 1.0 / q;
    let term = |coef: f64, x: f64, y: f64| coef.max(0.0).powf(e) * qroot((x * gb + y * ga).max(0.0), q);
    width
        * match branch_select(rp) {
            CaseBranch::MidOrder => term(g2, m1, m2) + term(u2, e3, e4),
            CaseBranch::RightOfUpper => term(g2, m1, m2) + term(u1, e1, e2),
            CaseBranch::LeftOfLower => term(g1, m3, m4) + term(u2, e3, e4),
        }
}

/// Midpoint power-mean bound for `s`-convex `|f'|^q`.
pub fn prior_midpoint_power_mean(width: f64, q: f64, s: f64, da: f64, db: f64) -> f64 {
    let (ga, gb) = (da.powf(q), db.powf(q));
    let k = 2f64.powf(1.0 - s);
    width / 8.0
        * qroot(2.0 / ((s + 1.0) * (s + 2.0)), q)
        * (qroot((k + 1.0) * gb + k * ga, q) + qroot((k + 1.0) * ga + k * gb, q))
}

/// Midpoint Hölder bound for `s`-convex `|f'|^q` using endpoint values only.
pub fn prior_midpoint_holder(width: f64, p: f64, q: f64, s: f64, da: f64, db: f64) -> f64 {
    let (ga, gb) = (da.powf(q), db.powf(q));
    let k = 2f64.powf(1.0 - s);
    width / 4.0
        * (1.0 / (p + 1.0)).powf(1.0 / p)
        * (1.0 / (s + 1.0)).powf(2.0 / q)
        * (qroot((k + s + 1.0) * ga + k * gb, q) + qroot((k + s + 1.0) * gb + k * ga, q))
}

/// Simpson Hölder bound for `s`-convex `|f'|^q`.
pub fn simpson_holder(width: f64, p: f64, q: f64, s: f64, da: f64, dm: f64, db: f64) -> f64 {
    let (ga, gm, gb) = (da.powf(q), dm.powf(q), db.powf(q));
    width / 12.0
        * ((1.0 + 2f64.powf(p + 1.0)) / (3.0 * (p + 1.0))).powf(1.0 / p)
        * (qroot((gm + ga) / (s + 1.0), q) + qroot((gm + gb) / (s + 1.0), q))
}

/// Trapezoid Hölder bound with the `((q-1)/(2(2q-1)))^{(q-1)/q}` constant.
pub fn prior_trapezoid_holder(width: f64, q: f64, s: f64, da: f64, dm: f64, db: f64) -> f64 {
    let (ga, gm, gb) = (da.powf(q), dm.powf(q), db.powf(q));
    width / 2.0
        * ((q - 1.0) / (2.0 * (2.0 * q - 1.0))).powf((q - 1.0) / q)
        * (1.0 / (s + 1.0)).powf(1.0 / q)
        * (qroot(gm + ga, q) + qroot(gm + gb, q))
}

/// Fourth-derivative Simpson bound `sup|f⁽⁴⁾| (b-a)⁴ / 2880`.
pub fn classical_simpson(width: f64, sup_f4: f64) -> f64 {
    sup_f4 * width.powi(4) / 2880.0
}

/// Simpson power-mean bound for `s`-convex `|f'|^q`, with the moment pair
/// written over the common denominator `3·6^{s+1}(s+1)(s+2)`.
pub fn simpson_power_mean(width: f64, q: f64, s: f64, da: f64, db: f64) -> f64 {
    let (ga, gb) = (da.powf(q), db.powf(q));
    let den = 3.0 * 6f64.powf(s + 1.0) * (s + 1.0) * (s + 2.0);
    let near = ((2.0 * s + 1.0) * 3f64.powf(s + 1.0) + 2.0) / den;
    let far = (2.0 * 5f64.powf(s + 2.0) + (s - 4.0) * 6f64.powf(s + 1.0)
        - (2.0 * s + 7.0) * 3f64.powf(s + 1.0))
        / den;
    width / 2.0
        * (5.0 / 36.0f64).powf(1.0 - 1.0 / q)
        * (qroot(near * gb + far * ga, q) + qroot(far * gb + near * ga, q))
}

/// Midpoint power-mean bound for `s`-convex `|f'|^q`.
pub fn midpoint_power_mean(width: f64, q: f64, s: f64, da: f64, db: f64) -> f64 {
    let (ga, gb) = (da.powf(q), db.powf(q));
    let k = 2f64.powf(1.0 - s);
    let near = k * (s + 1.0) / 2.0;
    let far = k * (2f64.powf(s + 2.0) - s - 3.0) / 2.0;
    width / 8.0
        * qroot(2.0 / ((s + 1.0) * (s + 2.0)), q)
        * (qroot(near * gb + far * ga, q) + qroot(near * ga + far * gb, q))
}

/// Trapezoid power-mean bound for `s`-convex `|f'|^q`. Matches the moment
/// path at `s = 1` and is larger for `s < 1`.
pub fn trapezoid_power_mean(width: f64, q: f64, s: f64, da: f64, db: f64) -> f64 {
    let (ga, gb) = (da.powf(q), db.powf(q));
    let k = 2f64.powf(s + 1.0) + 1.0;
    width / 8.0
        * qroot(2f64.powf(1.0 - s) / ((s + 1.0) * (s + 2.0)), q)
        * (qroot(gb + ga * k, q) + qroot(ga + gb * k, q))
}

/// Midpoint (and trapezoid) Hölder bound for `s`-convex `|f'|^q`.
pub fn midpoint_holder(width: f64, p: f64, q: f64, s: f64, da: f64, dm: f64, db: f64) -> f64 {
    let (ga, gm, gb) = (da.powf(q), dm.powf(q), db.powf(q));
    width / 4.0
        * (1.0 / (p + 1.0)).powf(1.0 / p)
        * (qroot((gm + ga) / (s + 1.0), q) + qroot((gm + gb) / (s + 1.0), q))
}

/// Hölder bound for `s`-concave `|f'|^q` at the midpoint and trapezoid rules,
/// in terms of `|f'|` at the quarter points.
pub fn concave_quarter_points(width: f64, p: f64, q: f64, s: f64, d_quarter_a: f64, d_quarter_b: f64) -> f64 {
    width / 4.0 * (1.0 / (p + 1.0)).powf(1.0 / p) * 0.5f64.powf((1.0 - s) / q) * (d_quarter_a + d_quarter_b)
}

/// [`concave_quarter_points`] at `s = 1` after replacing the quarter-point
/// sum by `2|f'((a+b)/2)|`.
pub fn concave_midpoint_only(width: f64, p: f64, dm: f64) -> f64 {
    width / 2.0 * (1.0 / (p + 1.0)).powf(1.0 / p) * dm
}
