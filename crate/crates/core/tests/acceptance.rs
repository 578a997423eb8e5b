use std::time::{Duration, Instant};

use filtcat_core::generate::Caps;
use filtcat_core::verify::{run_suite, Suite, SuiteReport, VerifyConfig};

struct Criterion {
    id: usize,
    suite: Suite,
    trials: usize,
    caps: Caps,
    limit: Option<Duration>,
}

fn criteria() -> Vec<Criterion> {
    let full = Caps { max_poset: 8, max_dim: 4, max_bound: 3 };
    let c = |id, suite, trials, limit: Option<u64>| Criterion {
        id,
        suite,
        trials,
        caps: full,
        limit: limit.map(Duration::from_secs),
    };
    vec![
        c(1, Suite::Example, 1, Some(1)),
        c(2, Suite::Strictness, 200, Some(60)),
        c(3, Suite::QuasiAbelian, 200, None),
        c(4, Suite::Main1, 200, None),
        c(5, Suite::Heart, 100, None),
        c(6, Suite::Rees, 100, None),
        c(7, Suite::Adjunction, 100, None),
        c(8, Suite::KappaTensor, 100, None),
        c(9, Suite::TensorDims, 5, None),
        c(10, Suite::Main2, 100, None),
    ]
}

fn line(c: &Criterion, r: &SuiteReport, timed_ok: bool) -> String {
    let verdict = if r.ok() && timed_ok { "PASS" } else { "FAIL" };
    let limit = c.limit.map_or(String::new(), |l| format!(", limit {}s", l.as_secs()));
    format!(
        "criterion {:>2} [{verdict}] {} ({:.2}s{limit})",
        c.id,
        r.summary(),
        r.elapsed.as_secs_f64()
    )
}

fn main() {
    let mut failed = Vec::new();
    for c in criteria() {
        let start = Instant::now();
        let r = run_suite(&VerifyConfig { suite: c.suite, trials: c.trials, seed: 42, caps: c.caps });
        let timed_ok = c.limit.is_none_or(|l| start.elapsed() < l);
        println!("{}", line(&c, &r, timed_ok));
        for f in r.failures.iter().take(3) {
            println!("    trial {} (seed {}): {}", f.trial, f.seed, f.reason);
        }
        if !(r.ok() && timed_ok) {
            failed.push(c.id);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("acceptance: {} criteria passed", criteria().len());
}
