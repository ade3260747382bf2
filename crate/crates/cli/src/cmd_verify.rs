use symkit::verify::{run_suite, SUITE_NAMES};

use crate::CliError;

#[derive(clap::Args)]
pub struct VerifyCmd {
    /// Suite name, or "all".
    suite: String,
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

impl VerifyCmd {
    /// Runs the suites, printing one line per property to stderr. Returns
    /// the JSON report and whether everything passed.
    pub fn run(self) -> Result<(serde_json::Value, bool), CliError> {
        let names: Vec<&str> = if self.suite == "all" {
            SUITE_NAMES.to_vec()
        } else {
            vec![self.suite.as_str()]
        };
        let mut reports = Vec::new();
        let mut all_pass = true;
        for name in names {
            let report = run_suite(name, self.seed).map_err(CliError::from)?;
            for check in &report.checks {
                eprintln!(
                    "[{}] {}: {} (max deviation {:.3e}, threshold {:.3e})",
                    if check.pass { "PASS" } else { "FAIL" },
                    report.suite,
                    check.property,
                    check.max_deviation,
                    check.threshold,
                );
            }
            all_pass &= report.pass;
            reports.push(report);
        }
        let value = serde_json::to_value(&reports)?;
        Ok((value, all_pass))
    }
}
