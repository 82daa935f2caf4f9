//! A small sweep written as JSON Lines, as the command-line driver does.

use fpolylog::etale_congruence::ZArg;
use fpolylog::sweep::{run_sweep, Check, Format, SweepConfig};

fn main() -> fpolylog::Result<()> {
    let mut cfg = SweepConfig::new(Check::LogFmp);
    cfg.prime_min = 5;
    cfg.prime_max = 13;
    cfg.m_min = 2;
    cfg.m_max = 3;
    cfg.z_list = vec![ZArg::MinusOne, ZArg::PthPower(2)];
    let outcome = run_sweep(&cfg)?;
    outcome.write(std::io::stdout().lock(), Format::Jsonl)?;
    eprintln!("{} passed, {} failed, {} skipped", outcome.passed(), outcome.failures(), outcome.skipped());
    Ok(())
}
