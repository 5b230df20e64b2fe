//! Prints one PASS/FAIL line per acceptance criterion and exits non-zero on any failure.

use std::process::ExitCode;
use std::time::Duration;

use lenskit::verify::{run_criterion, SweepConfig};

fn limit(id: u8) -> Option<Duration> {
    match id {
        1 => Some(Duration::from_secs(10)),
        2 => Some(Duration::from_secs(600)),
        4 => Some(Duration::from_secs(60)),
        _ => None,
    }
}

fn main() -> ExitCode {
    let cfg = SweepConfig::default();
    let mut ok = true;
    for id in 1..=7u8 {
        let r = run_criterion(id, &cfg).expect("known criterion");
        let over = limit(id).filter(|&l| r.elapsed() > l);
        let pass = r.pass && over.is_none();
        ok &= pass;
        let mut line = format!(
            "{} criterion {id}: {} ({} cases, {:.2}s)",
            if pass { "PASS" } else { "FAIL" },
            r.name,
            r.cases,
            r.elapsed().as_secs_f64()
        );
        if let Some(note) = &r.note {
            line.push_str(&format!(" [{note}]"));
        }
        if let Some(l) = over {
            line.push_str(&format!(" exceeded {}s", l.as_secs()));
        }
        println!("{line}");
        for f in r.failures.iter().take(5) {
            println!("    {}: {}  (repro: {})", f.subject, f.message, f.repro);
        }
        if r.failures.len() > 5 {
            println!("    ... {} more", r.failures.len() - 5);
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
