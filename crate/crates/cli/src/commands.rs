//! Subcommand bodies. Each builds a [`Table`] and a verdict; [`run`] handles
//! validation, the thread pool, output and exit codes.

use std::fs;

use num_complex::Complex64;
use num_traits::Zero;
use serde_json::json;

use cuspkernel::kernel::{KernelPoint, PsiEngine};
use cuspkernel::modforms::{dim_cusp, psi_normalization};
use cuspkernel::numerics::cohen::kernel_numeric;
use cuspkernel::numerics::{
    cohen_series_numeric, connect_prefactor, exact_vs_numeric, functional_equation_residual, lstar_numeric,
};
use cuspkernel::periods::{describe_field, manin_consistency_with, normalized_periods_with, Anchor, PeriodContext};
use cuspkernel::suite::{self, identity_rows, Check};
use cuspkernel::{Error, Rational};

use crate::table::{Cell, Format, Table};
use crate::RunConfig;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID: u8 = 1;
pub const EXIT_VERIFY: u8 = 2;
pub const EXIT_NUMERIC: u8 = 3;

/// A failure that maps to a nonzero exit code.
#[derive(Debug)]
pub enum Failure {
    Invalid(String, String),
    Library(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

fn invalid(kind: &str, msg: impl Into<String>) -> Failure {
    Failure::Invalid(kind.into(), msg.into())
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidArgument(_) => "invalid_argument",
        Error::InvalidPoint { .. } => "invalid_point",
        Error::InsufficientPrecision { .. } => "insufficient_precision",
        Error::SeriesMismatch(_) => "series_mismatch",
        Error::Unsupported(_) => "unsupported",
        Error::Singular(_) => "singular",
        Error::Domain(_) => "domain",
        Error::Accuracy(_) => "accuracy",
        Error::Parse(_) => "parse",
    }
}

pub fn run(name: &str, config: &RunConfig) -> u8 {
    if let Some(n) = config.threads {
        if n == 0 {
            report_failure(&invalid("invalid_argument", "--threads must be positive"));
            return EXIT_INVALID;
        }
        #[cfg(feature = "parallel")]
        if rayon::ThreadPoolBuilder::new().num_threads(n).build_global().is_err() {
            report_failure(&invalid("invalid_argument", "could not configure the thread pool"));
            return EXIT_INVALID;
        }
    }
    let result = match name {
        "psi" => cmd_psi(config),
        "identities" => cmd_identities(config),
        "verify" => cmd_verify(config),
        "periods" => cmd_periods(config),
        _ => cmd_numeric(config),
    };
    match result {
        Ok((table, code)) => {
            let body = table.render(config.format);
            if let Some(path) = &config.out {
                if let Err(e) = fs::write(path, &body) {
                    report_failure(&invalid("io", format!("cannot write {}: {e}", path.display())));
                    return EXIT_INVALID;
                }
            } else {
                print!("{body}");
            }
            if config.format == Format::Csv {
                eprint!("{}", table.summary_text());
            }
            code
        }
        Err(f) => {
            report_failure(&f);
            match f {
                Failure::Library(Error::Accuracy(_)) => EXIT_NUMERIC,
                _ => EXIT_INVALID,
            }
        }
    }
}

/// One JSON object on standard error, so scripts can read the reason.
fn report_failure(f: &Failure) {
    let v = match f {
        Failure::Invalid(kind, msg) => json!({"error": kind, "message": msg}),
        Failure::Library(e) => match e {
            Error::InvalidPoint { k, s, w, reason } => json!({
                "error": "invalid_point", "k": k, "s": s, "w": w,
                "reason": format!("{reason:?}"), "message": e.to_string()
            }),
            _ => json!({"error": error_kind(e), "message": e.to_string()}),
        },
    };
    eprintln!("{v}");
}

type Outcome = Result<(Table, u8), Failure>;

fn require_k(config: &RunConfig) -> Result<i64, Failure> {
    config.k.ok_or_else(|| invalid("missing_argument", "--k is required"))
}

fn l_range(config: &RunConfig) -> Result<(usize, usize), Failure> {
    match config.l {
        Some(0) => Err(invalid("invalid_argument", "--l must be at least 1")),
        Some(l) => Ok((l, l)),
        None if config.lmax == 0 => Err(invalid("invalid_argument", "--lmax must be at least 1")),
        None => Ok((1, config.lmax)),
    }
}

fn integer_s(config: &RunConfig) -> Result<Option<i64>, Failure> {
    match config.s {
        None => Ok(None),
        Some(s) if s.fract() == 0.0 && s.abs() < 1e15 => Ok(Some(s as i64)),
        Some(s) => Err(invalid("invalid_argument", format!("--s must be an integer here, got {s}"))),
    }
}

fn weights(config: &RunConfig) -> Result<Vec<i64>, Failure> {
    let ks = match (config.k, config.kmax) {
        (Some(k), None) => vec![k],
        (lo, Some(hi)) => {
            let lo = lo.unwrap_or(4);
            if lo % 2 != 0 || hi % 2 != 0 || lo < 4 || hi < lo {
                return Err(invalid("invalid_argument", format!("weight range {lo}..={hi} must be even, from 4 up")));
            }
            (lo..=hi).step_by(2).collect()
        }
        (None, None) => return Err(invalid("missing_argument", "--k or --kmax is required")),
    };
    for &k in &ks {
        if k < 4 || k % 2 != 0 {
            return Err(invalid("invalid_argument", format!("weight k must be even and at least 4, got {k}")));
        }
    }
    Ok(ks)
}

fn cmd_psi(config: &RunConfig) -> Outcome {
    let k = require_k(config)?;
    let points = if config.all_valid {
        KernelPoint::all(k)?
    } else {
        match (integer_s(config)?, config.w) {
            (Some(s), Some(w)) => vec![KernelPoint::new(k, s, w)?],
            _ => return Err(invalid("missing_argument", "give --s and --w, or --all-valid")),
        }
    };
    let (lo, hi) = l_range(config)?;
    let norm = psi_normalization(k);
    let exec = config.exec();
    let tables = exec.map(points, |p| -> cuspkernel::Result<(KernelPoint, Rational, Vec<Rational>)> {
        let engine = PsiEngine::new(p, hi);
        let first = engine.psi(1)?;
        let vals = (lo..=hi).map(|l| engine.psi(l as i64)).collect::<cuspkernel::Result<Vec<_>>>()?;
        Ok((p, first, vals))
    });
    let mut table = Table::new("psi", &["k", "s", "w", "l", "value", "inner", "ratio"]);
    let mut nonzero = 0;
    for t in tables {
        let (p, first, vals) = t?;
        for (i, v) in vals.into_iter().enumerate() {
            let ratio = if first.is_zero() { Cell::Null } else { Cell::Rat(&v / &first) };
            if !v.is_zero() {
                nonzero += 1;
            }
            table.push(vec![
                Cell::Int(k),
                Cell::Int(p.s()),
                Cell::Int(p.w()),
                Cell::Int((lo + i) as i64),
                Cell::Rat(v.clone()),
                Cell::Rat(&v / &norm),
                ratio,
            ]);
        }
    }
    table.note("rows", table.rows.len());
    table.note("nonzero values", nonzero);
    Ok((table, EXIT_OK))
}

fn cmd_identities(config: &RunConfig) -> Outcome {
    let (lo, hi) = l_range(config)?;
    let mut table = Table::new("identities", &["identity", "k", "l", "value", "expected", "holds"]);
    let mut failed = 0;
    for row in identity_rows(hi)? {
        if row.l < lo {
            continue;
        }
        let k = match row.name {
            "ramanujan" => Cell::Int(4),
            "niebur" => Cell::Null,
            other => Cell::Int(other[1..].parse().unwrap_or(0)),
        };
        let holds = row.holds();
        if !holds {
            failed += 1;
        }
        table.push(vec![
            Cell::Text(row.name.into()),
            k,
            Cell::Int(row.l as i64),
            Cell::Rat(row.lhs),
            Cell::Rat(row.rhs),
            Cell::Bool(holds),
        ]);
    }
    table.note("checked", table.rows.len());
    table.note("failed", failed);
    Ok((table, if failed == 0 { EXIT_OK } else { EXIT_VERIFY }))
}

fn check_row(table: &mut Table, k: Option<i64>, c: &Check) {
    table.push(vec![
        k.map_or(Cell::Null, Cell::Int),
        Cell::Text(c.name.clone()),
        Cell::Bool(c.passed),
        Cell::Int(c.cases as i64),
        Cell::Text(c.detail.clone()),
    ]);
}

fn cmd_verify(config: &RunConfig) -> Outcome {
    let ks = weights(config)?;
    let exec = config.exec();
    let (_, lmax) = l_range(config)?;
    let n = config.prec;
    let mut table = Table::new("verify", &["k", "suite", "status", "cases", "detail"]);
    let mut checks = Vec::new();
    for &k in &ks {
        let d = dim_cusp(k);
        let mut run = vec![if d == 0 {
            suite::vanishing(&[k], lmax, exec)?
        } else if k == 12 {
            suite::tau_recovery(lmax, exec)?
        } else {
            suite::cusp_membership(&[k], n, exec)?
        }];
        run.push(suite::kohnen_zagier(&[k], exec)?);
        run.push(suite::dihedral(&[k], lmax, exec)?);
        run.push(suite::z_symmetries(&[k])?);
        run.push(suite::rankin_cohen(&[k], n)?);
        if d > 0 {
            run.push(suite::manin_periods(k, d, exec)?);
        }
        for c in run {
            check_row(&mut table, Some(k), &c);
            checks.push((k, c));
        }
    }
    let b = suite::binomial_identity(20)?;
    check_row(&mut table, None, &b);
    checks.push((0, b));
    let failed: Vec<_> = checks.iter().filter(|(_, c)| !c.passed).collect();
    table.note("suites", checks.len());
    table.note("failed", failed.len());
    if let Some((k, c)) = failed.first() {
        table.note("first failure", format!("k={k} {}: {}", c.name, c.detail));
    }
    Ok((table, if failed.is_empty() { EXIT_OK } else { EXIT_VERIFY }))
}

fn cmd_periods(config: &RunConfig) -> Outcome {
    let ks = weights(config)?;
    let exec = config.exec();
    let mut table = Table::new("periods", &["k", "form", "field", "s", "w", "parity", "value"]);
    let mut violations = 0;
    for &k in &ks {
        let d = dim_cusp(k);
        if k < 12 || d == 0 {
            table.note(&format!("k={k}"), "no cusp forms");
            continue;
        }
        let ctx = PeriodContext::new(k, config.prec.max(2 * d))?;
        let anchor = Anchor::standard(k);
        let t = normalized_periods_with(&ctx, anchor, exec)?;
        for (f, form) in t.forms.iter().enumerate() {
            let field = if form.field().degree() == 1 { "Q".to_string() } else { describe_field(form) };
            let mut push = |s: i64, w: i64, parity: &str, x: &cuspkernel::modforms::NumberFieldElement| {
                table.push(vec![
                    Cell::Int(k),
                    Cell::Int(f as i64),
                    Cell::Text(field.clone()),
                    Cell::Int(s),
                    Cell::Int(w),
                    Cell::Text(parity.into()),
                    Cell::Field(x.to_string_var("a"), x.as_rational()),
                ]);
            };
            for (s, x) in &t.even[f] {
                push(*s, anchor.odd, "even", x);
            }
            for (w, x) in &t.odd[f] {
                push(anchor.even, *w, "odd", x);
            }
        }
        let report = manin_consistency_with(&ctx, exec)?;
        violations += report.violations().len();
        table.note(
            &format!("k={k} period ratios"),
            format!(
                "{} comparisons, {} violations, {} skipped (zero denominator), field degree {}",
                report.comparisons(),
                report.violations().len(),
                report.skipped(),
                t.max_field_degree()
            ),
        );
    }
    Ok((table, if violations == 0 { EXIT_OK } else { EXIT_VERIFY }))
}

fn cmd_numeric(config: &RunConfig) -> Outcome {
    let k = config.k.unwrap_or(12);
    if k < 12 || k % 2 != 0 || dim_cusp(k) == 0 {
        return Err(invalid("invalid_argument", format!("numeric checks need a weight with cusp forms, got k={k}")));
    }
    let n = config.prec.max(40);
    let fe_tol = config.tol.unwrap_or(1e-10);
    let bridge_tol = config.tol.unwrap_or(1e-8);
    let cohen_tol = config.tol.unwrap_or(1e-3);
    let ctx = PeriodContext::new(k, n)?;
    let mut table = Table::new("numeric", &["check", "k", "s", "w", "form", "value", "error", "tolerance", "status"]);
    let mut failed = 0;
    let mut verdict = |ok: bool| {
        if !ok {
            failed += 1;
        }
        Cell::Bool(ok)
    };
    let grid: Vec<f64> = match config.s {
        Some(s) => vec![s],
        None => vec![2.0, 3.7, 5.5, k as f64 / 2.0],
    };
    for (i, f) in ctx.forms().iter().enumerate() {
        let roots = f.field().real_embeddings();
        for (r, root) in roots.iter().enumerate() {
            let coeffs = f.embedded(*root);
            let label = if roots.len() == 1 { i.to_string() } else { format!("{i}.{r}") };
            for &s in &grid {
                let l = lstar_numeric(&coeffs, k, Complex64::from(s), n)?;
                table.push(vec![
                    Cell::Text("lstar".into()),
                    Cell::Int(k),
                    Cell::Float(s),
                    Cell::Null,
                    Cell::Text(label.clone()),
                    Cell::Float(l.value.re),
                    Cell::Float(l.error),
                    Cell::Null,
                    Cell::Null,
                ]);
                let res = functional_equation_residual(&coeffs, k, Complex64::from(s))?;
                table.push(vec![
                    Cell::Text("functional equation".into()),
                    Cell::Int(k),
                    Cell::Float(s),
                    Cell::Null,
                    Cell::Text(label.clone()),
                    Cell::Float(res),
                    Cell::Null,
                    Cell::Float(fe_tol),
                    verdict(res < fe_tol),
                ]);
            }
        }
    }
    let bridge = exact_vs_numeric(&ctx, n)?;
    let worst = bridge.iter().max_by(|a, b| a.deviation.total_cmp(&b.deviation));
    if let Some(b) = worst {
        table.push(vec![
            Cell::Text("exact-vs-numeric (worst)".into()),
            Cell::Int(k),
            Cell::Float(b.point.0 as f64),
            Cell::Int(b.point.1),
            Cell::Int(b.form as i64),
            Cell::Float(b.deviation),
            Cell::Null,
            Cell::Float(bridge_tol),
            verdict(b.deviation < bridge_tol),
        ]);
        table.note("exact-vs-numeric instances", bridge.len());
    }
    let s = Complex64::from(k as f64 / 2.0);
    let z = Complex64::new(0.0, 2.0);
    let target = connect_prefactor(k, s) * kernel_numeric(&ctx, s, z, n)?.value;
    let sum = cohen_series_numeric(k, s, z, 200)?;
    let rel = (sum.value.value - target).norm() / target.norm();
    table.push(vec![
        Cell::Text("cohen series vs kernel".into()),
        Cell::Int(k),
        Cell::Float(s.re),
        Cell::Null,
        Cell::Null,
        Cell::Float(rel),
        Cell::Float(sum.doubling_difference() / target.norm()),
        Cell::Float(cohen_tol),
        verdict(rel < cohen_tol),
    ]);
    table.note("cohen series at z=2i, C=200", format!("{}", sum.value));
    table.note("failed", failed);
    Ok((table, if failed == 0 { EXIT_OK } else { EXIT_NUMERIC }))
}
