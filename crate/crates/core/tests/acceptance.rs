//! The acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hecke::oracle::table_at_q;
use hecke::{product_counts, run_suite, BasisIndex, Report, Suite, SuiteParams, Table};

struct Verdict {
    ok: bool,
    detail: String,
}

fn from_report(r: &Report, min_cases: usize) -> Verdict {
    let mut detail = format!("{} cases, {} failures", r.cases, r.failures.len());
    if let Some(f) = r.failures.first() {
        detail.push_str(&format!("; first: {} expected {} got {}", f.input, f.expected, f.actual));
    }
    if r.cases < min_cases {
        detail.push_str(&format!("; needs at least {min_cases} cases"));
    }
    Verdict { ok: r.passed() && r.cases >= min_cases, detail }
}

fn suite(s: Suite, range: Option<i64>, min_cases: usize) -> Verdict {
    let params = SuiteParams { range, ..SuiteParams::default() };
    match run_suite(s, &params) {
        Ok(r) => from_report(&r, min_cases),
        Err(e) => Verdict { ok: false, detail: format!("error: {e}") },
    }
}

fn level_zero_counting() -> Verdict {
    let start = Instant::now();
    let mut cases = 0;
    let mut bad = Vec::new();
    for q in [2, 3] {
        for a in 1..=2 {
            for b in 1..=2 {
                for i in -2..=2 {
                    for k in -2..=2 {
                        let (x, y) = (BasisIndex::new(a, i, 0).unwrap(), BasisIndex::new(b, k, 0).unwrap());
                        cases += 1;
                        let agree = match (product_counts(x, y, q), table_at_q(Table::Standard, x, y, q)) {
                            (Ok(c), Ok(t)) => c == t,
                            _ => false,
                        };
                        if !agree {
                            bad.push(format!("chi{x}*chi{y} at q={q}"));
                        }
                    }
                }
            }
        }
    }
    let took = start.elapsed();
    let mut detail = format!("{cases} cases, {} failures, {:.1}s", bad.len(), took.as_secs_f64());
    if let Some(first) = bad.first() {
        detail.push_str(&format!("; first: {first}"));
    }
    Verdict { ok: bad.is_empty() && cases == 200 && took < Duration::from_secs(300), detail }
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, Box<dyn Fn() -> Verdict>)> = vec![
        ("1 oracle equivalence at level 0", Box::new(level_zero_counting)),
        ("2 two-path product agreement", Box::new(|| suite(Suite::TwoPath, None, 500))),
        ("3 identity and associativity", Box::new(|| suite(Suite::IdentityAssoc, None, 200))),
        ("4 product support shape", Box::new(|| suite(Suite::ShapeFuzz, Some(4), 2 * 9 * 7 * 2 * 9 * 7))),
        ("5 Bernstein expansions", Box::new(|| suite(Suite::Bernstein, Some(3), 1))),
        ("6 commutative subalgebra", Box::new(|| suite(Suite::Subalgebra, None, 1))),
        ("7 center", Box::new(|| suite(Suite::Center, Some(2), 1))),
        ("8 Iwahori-Matsumoto relations", Box::new(|| suite(Suite::ImRelations, None, 1))),
        ("9 Weyl group and Bruhat labels", Box::new(|| suite(Suite::Weyl, None, 200))),
        ("10 negative control", Box::new(|| suite(Suite::NegativeControl, None, 1))),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let v = run();
        println!("{} criterion {name}: {}", if v.ok { "PASS" } else { "FAIL" }, v.detail);
        if !v.ok {
            failed += 1;
        }
    }
    println!("{failed} of 10 criteria failed");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
