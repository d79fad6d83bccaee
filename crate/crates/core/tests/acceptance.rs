use schoenberg::library::DEFAULT_SEED;
use schoenberg::selftest::{checks, ACCEPTANCE_COUNT};

fn main() {
    let mut failed = Vec::new();
    for (i, check) in checks().iter().take(ACCEPTANCE_COUNT).enumerate() {
        let out = check.run(DEFAULT_SEED);
        let status = if out.passed { "PASS" } else { "FAIL" };
        let timing = check
            .budget
            .map(|b| format!(", {:.2}s of {}s", out.elapsed_secs, b.as_secs()))
            .unwrap_or_default();
        println!(
            "[{status}] {:>2}. {}: worst {:.3e} (tol {:.0e}{timing}) {}",
            i + 1,
            out.name,
            out.worst,
            out.tolerance,
            out.detail
        );
        if !out.passed {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: {ACCEPTANCE_COUNT} of {ACCEPTANCE_COUNT} criteria passed");
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
