//! Runs the acceptance battery and prints one pass/fail line per criterion.

use cotangent_core::suite::{self, SuiteConfig, CRITERIA};

fn main() {
    let reports = suite::run(&SuiteConfig::default());
    assert_eq!(reports.len(), CRITERIA.len());
    print!("{}", suite::render_text(&reports));
    let failed: Vec<u32> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
