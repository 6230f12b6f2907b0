//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cuspkernel::suite::{self, Check};
use cuspkernel::{Exec, Result};

struct Criterion {
    id: u32,
    title: &'static str,
    budget: Option<Duration>,
    run: fn() -> Result<Vec<Check>>,
}

fn even(lo: i64, hi: i64) -> Vec<i64> {
    (lo..=hi).step_by(2).collect()
}

fn vanishing() -> Result<Vec<Check>> {
    Ok(vec![suite::vanishing(&[4, 6, 8, 10, 14], 50, Exec::Sequential)?])
}

fn tau() -> Result<Vec<Check>> {
    Ok(vec![suite::tau_recovery(100, Exec::default())?])
}

fn identities() -> Result<Vec<Check>> {
    Ok(vec![suite::identities(200)?])
}

fn kohnen_zagier() -> Result<Vec<Check>> {
    Ok(vec![suite::kohnen_zagier(&even(4, 40), Exec::default())?])
}

fn symmetries() -> Result<Vec<Check>> {
    let ks = even(4, 30);
    Ok(vec![
        suite::dihedral(&ks, 20, Exec::default())?,
        suite::z_symmetries(&ks)?,
        suite::binomial_identity(20)?,
    ])
}

fn cusp() -> Result<Vec<Check>> {
    Ok(vec![suite::cusp_membership(&even(12, 26), 60, Exec::default())?])
}

fn rankin_cohen() -> Result<Vec<Check>> {
    Ok(vec![suite::rankin_cohen(&even(4, 26), 30)?])
}

fn manin() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for k in [12, 16, 18, 20, 22, 26] {
        out.push(suite::manin_periods(k, 1, Exec::default())?);
    }
    out.push(suite::manin_periods(24, 2, Exec::default())?);
    Ok(out)
}

fn functional_equation() -> Result<Vec<Check>> {
    Ok(vec![suite::functional_equation(&[2.0, 3.7, 5.5, 6.0], 1e-10)?])
}

fn bridge() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for k in [12, 16] {
        let mut c = suite::exact_vs_numeric_bridge(&[k], 1e-8)?;
        if c.cases < 10 {
            c.passed = false;
            c.detail = format!("only {} ratio instances at k={k}", c.cases);
        }
        out.push(c);
    }
    Ok(out)
}

fn cohen() -> Result<Vec<Check>> {
    Ok(vec![suite::cohen_end_to_end(200, 1e-3)?])
}

const CRITERIA: [Criterion; 11] = [
    Criterion { id: 1, title: "vanishing for k in {4,6,8,10,14}, l <= 50", budget: Some(Duration::from_secs(60)), run: vanishing },
    Criterion { id: 2, title: "tau recovery at k=12, l <= 100", budget: None, run: tau },
    Criterion { id: 3, title: "Ramanujan, weight 6..14 and Niebur identities, l <= 200", budget: None, run: identities },
    Criterion { id: 4, title: "Kohnen-Zagier cross-route, even k <= 40", budget: None, run: kohnen_zagier },
    Criterion { id: 5, title: "dihedral, Z reflection/Laurent, binomial identity", budget: None, run: symmetries },
    Criterion { id: 6, title: "cusp membership, k in [12,26], coefficients to 60", budget: None, run: cusp },
    Criterion { id: 7, title: "Rankin-Cohen oracle, k <= 26, l <= 30", budget: None, run: rankin_cohen },
    Criterion { id: 8, title: "Manin periods", budget: None, run: manin },
    Criterion { id: 9, title: "numeric functional equation for Delta", budget: Some(Duration::from_secs(5)), run: functional_equation },
    Criterion { id: 10, title: "exact-vs-numeric bridge, k in {12,16}", budget: None, run: bridge },
    Criterion { id: 11, title: "Cohen series end-to-end at k=12, s=6, z=2i", budget: Some(Duration::from_secs(120)), run: cohen },
];

fn main() -> ExitCode {
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failures = 0;
    for c in &CRITERIA {
        let tag = format!("criterion {:02}", c.id);
        if !filter.is_empty() && !filter.iter().any(|f| tag.contains(f.as_str()) || c.title.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (mut ok, mut detail) = match outcome {
            Ok(checks) => {
                let ok = checks.iter().all(|k| k.passed);
                let detail = checks
                    .iter()
                    .map(|k| format!("{} [{} cases]: {}", k.name, k.cases, k.detail))
                    .collect::<Vec<_>>()
                    .join("; ");
                (ok, detail)
            }
            Err(e) => (false, format!("error: {e}")),
        };
        if let Some(b) = c.budget {
            if elapsed > b {
                ok = false;
                detail.push_str(&format!("; over the {}s budget", b.as_secs()));
            }
        }
        println!(
            "{tag} {} ({:.2}s) {}: {detail}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            c.title
        );
        if !ok {
            failures += 1;
        }
    }
    if failures == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} criteria failed");
        ExitCode::FAILURE
    }
}
