//! The five subcommands. Each builds a [`Report`] without touching the
//! filesystem; configuration errors abort before any row is written.

use hquad_core::corpus::{hadamard_pool, identity_cases};
use hquad_core::{
    bound_holder_hconcave, bound_holder_hconvex, bound_power_mean, bound_prior, certify, hadamard_check,
    lemma_identity_residual, lhs_error, BoundKind, ClassCertificate, HModulus, HadamardVariant, PriorBound,
    RuleParams, TestFunction,
};
use rayon::prelude::*;

use crate::args::{Class, CompareArgs, GridArgs, HadamardArgs, IdentityArgs, RunArgs};
use crate::grid::parse_modulus;
use crate::table::{Cell, Table};
use crate::{CliError, Outcome, Report, SOUNDNESS_SLACK};

/// Largest accepted residual of the kernel identity.
pub const IDENTITY_TOLERANCE: f64 = 1e-9;

pub const SWEEP_COLUMNS: [&str; 10] = [
    "alpha",
    "lambda",
    "q",
    "s",
    "p",
    "bound_kind",
    "branch",
    "lhs",
    "rhs",
    "ratio",
];

const VERIFY_COLUMNS: [&str; 11] = [
    "alpha",
    "lambda",
    "q",
    "s",
    "p",
    "bound_kind",
    "branch",
    "lhs",
    "rhs",
    "margin",
    "status",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Sound,
    Violation,
    Rejected,
    Inconclusive,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Sound => "sound",
            Status::Violation => "violation",
            Status::Rejected => "rejected",
            Status::Inconclusive => "inconclusive",
        }
    }

    fn outcome(self) -> Outcome {
        match self {
            Status::Sound => Outcome::Sound,
            Status::Inconclusive => Outcome::Inconclusive,
            Status::Violation | Status::Rejected => Outcome::Violation,
        }
    }
}

fn holds(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs + SOUNDNESS_SLACK * (1.0 + rhs)
}

// Keeps oracle failures as `None` and turns every other error into a
// configuration error.
fn oracle<T>(r: hquad_core::Result<T>) -> Result<Option<T>, CliError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_oracle_failure() => Ok(None),
        Err(e) => Err(e.into()),
    }
}

/// The test function declared for one `(q, s)` pair, with the outcome of
/// its sampled class check.
struct Declared {
    tf: TestFunction,
    certified: bool,
}

struct Point<'a> {
    alpha: f64,
    lambda: f64,
    q: f64,
    s: f64,
    declared: &'a Declared,
}

struct Plan {
    declared: Vec<Declared>,
    // (alpha, lambda, q index, s index), alpha outermost
    points: Vec<(f64, f64, usize, usize)>,
    n_s: usize,
}

impl Plan {
    fn new(g: &GridArgs) -> Result<Plan, CliError> {
        let (a, b) = (g.interval[0], g.interval[1]);
        for (name, v) in [("alpha", &g.alpha_grid.0), ("lambda", &g.lambda_grid.0)] {
            if let Some(x) = v.iter().find(|x| !(0.0..=1.0).contains(*x)) {
                return Err(CliError::Config(format!(
                    "{name} grid value {x} is outside [0, 1]"
                )));
            }
        }
        let mut declared = Vec::new();
        for &q in &g.q_grid.0 {
            for &s in &g.s_grid.0 {
                let h = parse_modulus(&g.h, s).map_err(CliError::Config)?;
                let cert = match g.class {
                    Class::Convex => ClassCertificate::convex(h, q)?,
                    Class::Concave => ClassCertificate::concave(h, q)?,
                };
                declared.push(g.function.test_function(a, b, cert)?);
            }
        }
        let declared = declared
            .into_par_iter()
            .map(|tf| {
                let report = oracle(certify(&tf.derivative_power_witness(), g.samples, g.seed))?;
                Ok(Declared {
                    certified: report.is_some_and(|r| r.holds),
                    tf,
                })
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect::<Result<Vec<_>, CliError>>()?;
        let mut points = Vec::new();
        for &al in &g.alpha_grid.0 {
            for &la in &g.lambda_grid.0 {
                for qi in 0..g.q_grid.0.len() {
                    for si in 0..g.s_grid.0.len() {
                        points.push((al, la, qi, si));
                    }
                }
            }
        }
        Ok(Plan {
            declared,
            points,
            n_s: g.s_grid.0.len(),
        })
    }

    fn point<'a>(&'a self, g: &GridArgs, i: usize) -> Point<'a> {
        let (alpha, lambda, qi, si) = self.points[i];
        Point {
            alpha,
            lambda,
            q: g.q_grid.0[qi],
            s: g.s_grid.0[si],
            declared: &self.declared[qi * self.n_s + si],
        }
    }
}

fn rule(g: &GridArgs, pt: &Point, needs_p: bool) -> Result<RuleParams, CliError> {
    let rp = RuleParams::new(pt.alpha, pt.lambda, pt.q)?;
    if !needs_p {
        return Ok(rp);
    }
    Ok(match g.p {
        Some(p) => rp.with_p(p)?,
        None => rp.with_conjugate()?,
    })
}

fn evaluate(
    kind: BoundKind,
    g: &GridArgs,
    tf: &TestFunction,
    rp: &RuleParams,
    s: f64,
) -> Result<Option<hquad_core::BoundResult>, CliError> {
    let prior = |p: PriorBound| bound_prior(tf, rp, p);
    oracle(match kind {
        BoundKind::PowerMeanHConvex => bound_power_mean(tf, rp),
        BoundKind::HolderHConvex => bound_holder_hconvex(tf, rp),
        BoundKind::HolderHConcave => bound_holder_hconcave(tf, rp),
        BoundKind::PriorConvexPowerMean => prior(PriorBound::ConvexPowerMean),
        BoundKind::PriorMidpointPowerMean => prior(PriorBound::MidpointPowerMean { s }),
        BoundKind::PriorMidpointHolder => prior(PriorBound::MidpointHolder { s }),
        BoundKind::PriorSimpsonHolder => prior(PriorBound::SimpsonHolder { s }),
        BoundKind::PriorTrapezoidHolder => prior(PriorBound::TrapezoidHolder { s }),
        BoundKind::ClassicalSimpson => {
            let sup_f4 = g
                .sup_f4
                .ok_or_else(|| CliError::Config("classical-simpson needs --sup-f4".into()))?;
            prior(PriorBound::ClassicalSimpson { sup_f4 })
        }
    })
}

struct Evaluated {
    rp: RuleParams,
    branch: Option<&'static str>,
    lhs: Option<f64>,
    rhs: Vec<Option<f64>>,
    status: Status,
}

fn evaluate_point(kinds: &[BoundKind], g: &GridArgs, pt: &Point) -> Result<Evaluated, CliError> {
    let rp = rule(g, pt, kinds.iter().any(BoundKind::needs_conjugate))?;
    let tf = &pt.declared.tf;
    let mut branch = None;
    let mut rhs = Vec::with_capacity(kinds.len());
    for &kind in kinds {
        let r = evaluate(kind, g, tf, &rp, pt.s)?;
        branch = branch.or(r.as_ref().map(|r| r.branch.as_str()));
        rhs.push(r.map(|r| r.value));
    }
    let lhs = oracle(lhs_error(tf, &rp))?;
    let status = if !pt.declared.certified {
        Status::Rejected
    } else {
        match (lhs, rhs.iter().copied().collect::<Option<Vec<f64>>>()) {
            (Some(l), Some(rs)) if rs.iter().all(|&r| holds(l, r)) => Status::Sound,
            (Some(_), Some(_)) => Status::Violation,
            _ => Status::Inconclusive,
        }
    };
    Ok(Evaluated {
        rp,
        branch,
        lhs,
        rhs,
        status,
    })
}

// Parallel rows are gathered before the first error is picked, so the error
// reported does not depend on scheduling.
fn run_grid(kinds: &[BoundKind], g: &GridArgs) -> Result<(Plan, Vec<Evaluated>), CliError> {
    let plan = Plan::new(g)?;
    let rows = (0..plan.points.len())
        .into_par_iter()
        .map(|i| evaluate_point(kinds, g, &plan.point(g, i)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    Ok((plan, rows))
}

fn describe(pt: &Point, e: &Evaluated) -> String {
    format!(
        "first {} row: alpha={} lambda={} q={} s={} lhs={:?} rhs={:?}",
        e.status.as_str(),
        pt.alpha,
        pt.lambda,
        pt.q,
        pt.s,
        e.lhs,
        e.rhs
    )
}

fn finish(table: Table, plan: &Plan, g: &GridArgs, rows: &[Evaluated]) -> Report {
    let outcome = rows
        .iter()
        .map(|e| e.status.outcome())
        .max()
        .unwrap_or(Outcome::Sound);
    let first_failure = rows
        .iter()
        .enumerate()
        .find(|(_, e)| e.status.outcome() == outcome && outcome != Outcome::Sound)
        .map(|(i, e)| describe(&plan.point(g, i), e));
    Report {
        table,
        outcome,
        first_failure,
    }
}

fn leading_cells(pt: &Point, e: &Evaluated) -> Vec<Cell> {
    vec![
        pt.alpha.into(),
        pt.lambda.into(),
        pt.q.into(),
        pt.s.into(),
        e.rp.p().into(),
    ]
}

pub fn verify(args: &RunArgs) -> Result<Report, CliError> {
    let g = &args.grid;
    let (plan, rows) = run_grid(&[args.bound], g)?;
    let mut table = Table::new(VERIFY_COLUMNS);
    for (i, e) in rows.iter().enumerate() {
        let pt = plan.point(g, i);
        let rhs = e.rhs[0];
        let margin = rhs.zip(e.lhs).map(|(r, l)| r - l);
        let mut row = leading_cells(&pt, e);
        row.extend([
            args.bound.as_str().into(),
            e.branch.unwrap_or("").into(),
            e.lhs.into(),
            rhs.into(),
            margin.into(),
            e.status.as_str().into(),
        ]);
        table.push(row);
    }
    Ok(finish(table, &plan, g, &rows))
}

/// `lhs / rhs`, with `0/0 = 0`.
fn ratio(lhs: f64, rhs: f64) -> f64 {
    if lhs == 0.0 {
        0.0
    } else {
        lhs / rhs
    }
}

pub fn sweep(args: &RunArgs) -> Result<Report, CliError> {
    let g = &args.grid;
    let (plan, rows) = run_grid(&[args.bound], g)?;
    let mut table = Table::new(SWEEP_COLUMNS);
    for (i, e) in rows.iter().enumerate() {
        let pt = plan.point(g, i);
        let rhs = e.rhs[0];
        let mut row = leading_cells(&pt, e);
        row.extend([
            args.bound.as_str().into(),
            e.branch.unwrap_or("").into(),
            e.lhs.into(),
            rhs.into(),
            e.lhs.zip(rhs).map(|(l, r)| ratio(l, r)).into(),
        ]);
        table.push(row);
    }
    Ok(finish(table, &plan, g, &rows))
}

pub fn compare(args: &CompareArgs) -> Result<Report, CliError> {
    let g = &args.grid;
    let kinds = &args.kinds.0;
    let (plan, rows) = run_grid(kinds, g)?;
    let mut columns: Vec<String> = ["alpha", "lambda", "q", "s", "p", "lhs"]
        .map(String::from)
        .to_vec();
    columns.extend(kinds.iter().map(|k| k.as_str().to_string()));
    columns.extend(["argmin".to_string(), "status".to_string()]);
    let mut table = Table::new(columns);
    for (i, e) in rows.iter().enumerate() {
        let pt = plan.point(g, i);
        // first kind wins ties
        let argmin = kinds
            .iter()
            .zip(&e.rhs)
            .filter_map(|(k, r)| r.map(|r| (k, r)))
            .fold(None, |best: Option<(&BoundKind, f64)>, (k, r)| match best {
                Some((_, b)) if b <= r => best,
                _ => Some((k, r)),
            })
            .map_or("", |(k, _)| k.as_str());
        let mut row = leading_cells(&pt, e);
        row.push(e.lhs.into());
        row.extend(e.rhs.iter().map(|&r| Cell::from(r)));
        row.extend([argmin.into(), e.status.as_str().into()]);
        table.push(row);
    }
    Ok(finish(table, &plan, g, &rows))
}

pub fn identity(args: &IdentityArgs) -> Result<Report, CliError> {
    if args.n == 0 {
        return Err(CliError::Config("--n must be at least 1".into()));
    }
    // the identity needs no class; any certificate will do
    let cert = ClassCertificate::convex(HModulus::Identity, 1.0)?;
    let cases = identity_cases(args.n, args.seed);
    let results = cases
        .par_iter()
        .map(|c| {
            let tf = c.spec.test_function(c.a, c.b, cert.clone())?;
            let rp = RuleParams::new(c.alpha, c.lambda, 1.0)?;
            oracle(lemma_identity_residual(&tf, &rp))
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect::<Result<Vec<_>, CliError>>()?;

    let mut table = Table::new([
        "case", "function", "a", "b", "alpha", "lambda", "residual", "status",
    ]);
    let mut statuses = Vec::with_capacity(cases.len());
    for (i, (c, r)) in cases.iter().zip(&results).enumerate() {
        let status = match r {
            Some(r) if *r <= IDENTITY_TOLERANCE => Status::Sound,
            Some(_) => Status::Violation,
            None => Status::Inconclusive,
        };
        statuses.push(status);
        table.push(vec![
            i.into(),
            c.spec.to_string().into(),
            c.a.into(),
            c.b.into(),
            c.alpha.into(),
            c.lambda.into(),
            (*r).into(),
            status.as_str().into(),
        ]);
    }
    Ok(simple_report(table, &statuses, |i| {
        let c = &cases[i];
        format!(
            "case {i}: {} on [{}, {}], residual {:?}",
            c.spec, c.a, c.b, results[i]
        )
    }))
}

fn simple_report(table: Table, statuses: &[Status], describe: impl Fn(usize) -> String) -> Report {
    let outcome = statuses
        .iter()
        .map(|s| s.outcome())
        .max()
        .unwrap_or(Outcome::Sound);
    let first_failure = (outcome != Outcome::Sound)
        .then(|| {
            statuses
                .iter()
                .position(|s| s.outcome() == outcome)
                .map(&describe)
        })
        .flatten();
    Report {
        table,
        outcome,
        first_failure,
    }
}

pub fn hadamard(args: &HadamardArgs) -> Result<Report, CliError> {
    if args.n == 0 {
        return Err(CliError::Config("--n must be at least 1".into()));
    }
    let variants = args
        .variants
        .as_ref()
        .map_or(HadamardVariant::ALL.to_vec(), |v| v.0.clone());
    let h = parse_modulus(&args.h, args.s).map_err(CliError::Config)?;
    let mut cases = Vec::new();
    for &v in &variants {
        for c in hadamard_pool(v, args.s, &h, args.n, args.seed)? {
            cases.push((v, c));
        }
    }
    let results = cases
        .par_iter()
        .map(|(v, c)| oracle(hadamard_check(&c.witness()?, *v)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect::<Result<Vec<_>, CliError>>()?;

    let mut table = Table::new([
        "variant", "function", "a", "b", "left", "middle", "right", "status",
    ]);
    let mut statuses = Vec::with_capacity(cases.len());
    for ((v, c), r) in cases.iter().zip(&results) {
        let status = match r {
            Some(r) if r.holds => Status::Sound,
            Some(_) => Status::Violation,
            None => Status::Inconclusive,
        };
        statuses.push(status);
        table.push(vec![
            v.as_str().into(),
            c.spec.to_string().into(),
            c.a.into(),
            c.b.into(),
            r.map(|r| r.left).into(),
            r.map(|r| r.middle).into(),
            r.and_then(|r| r.right).into(),
            status.as_str().into(),
        ]);
    }
    Ok(simple_report(table, &statuses, |i| {
        let (v, c) = &cases[i];
        format!(
            "{} chain fails for {} on [{}, {}]: {:?}",
            v.as_str(),
            c.spec,
            c.a,
            c.b,
            results[i]
        )
    }))
}
