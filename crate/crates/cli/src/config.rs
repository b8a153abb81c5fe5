use std::path::PathBuf;

use clap::{Parser, Subcommand};
use cyclic_cubic::lfunc::LambdaMode;

use crate::CliError;

#[derive(Parser, Debug)]
#[command(name = "cyclic-cubic", version, about = "Cyclic cubic fields and the low-lying zeros of their L-functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Family parameter: fields with X <= discriminant <= 2X.
    #[arg(long = "x", global = true, default_value_t = 100_000_000)]
    pub x: u64,
    /// Support radius of the Fejer test function, in (0, 1).
    #[arg(long, global = true, default_value_t = 0.2)]
    pub beta: f64,
    /// Splitting rule: kummer or paper (literal character).
    #[arg(long, global = true, default_value = "kummer")]
    pub mode: String,
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Field catalog to reuse instead of enumerating.
    #[arg(long, global = true)]
    pub catalog: Option<PathBuf>,
    /// Euler-product cutoff for the generating-series comparison.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub p0: u64,
    /// Largest Y for character sums.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub ymax: u64,
    /// Real point s for the generating-series comparison.
    #[arg(long, global = true, default_value_t = 2.0)]
    pub s: f64,
    /// Comma-separated primes for charsum and genseries.
    #[arg(long, global = true, value_delimiter = ',')]
    pub primes: Option<Vec<u64>>,
    /// Replace the generator above 13 by a wrong one (harness self-test).
    #[arg(long, global = true, hide = true)]
    pub inject_fault: bool,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Write the catalog of F3(X), one key=value record per line.
    Enumerate,
    /// Per-field explicit-formula table (CSV) and family summary.
    Density,
    /// Run the probe suite; exit 2 if any asserted probe fails.
    Verify,
    /// Character sums S_p(Y) over a log grid (CSV).
    Charsum,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub x: u64,
    pub beta: f64,
    pub mode: LambdaMode,
    pub out: Option<PathBuf>,
    pub catalog: Option<PathBuf>,
    pub p0: u64,
    pub ymax: u64,
    pub s: f64,
    pub primes: Vec<u64>,
    pub inject_fault: bool,
}

impl TryFrom<Cli> for RunConfig {
    type Error = CliError;

    fn try_from(cli: Cli) -> Result<Self, CliError> {
        let usage = |m: String| Err(CliError::Usage(m));
        if !(cli.beta > 0.0 && cli.beta < 1.0) {
            return usage(format!("--beta {} must lie in (0, 1)", cli.beta));
        }
        if cli.x < 1000 {
            return usage(format!("--x {} must be at least 1000", cli.x));
        }
        if cli.p0 < 10 || cli.p0 > 1_000_000 {
            return usage(format!("--p0 {} must lie in [10, 1000000]", cli.p0));
        }
        if cli.ymax == 0 || cli.ymax > 1_000_000 {
            return usage(format!("--ymax {} must lie in [1, 1000000]", cli.ymax));
        }
        let mode: LambdaMode = cli.mode.parse().map_err(|e: cyclic_cubic::Error| CliError::Usage(e.to_string()))?;
        let primes = cli.primes.unwrap_or_else(|| match cli.command {
            Command::Verify => vec![5, 7, 13],
            _ => vec![7, 13, 31],
        });
        if let Some(p) = primes.iter().find(|&&p| p == 3) {
            return usage(format!("--primes: p = {p} is the prime above 3, where the cubic symbol is undefined"));
        }
        if let Some(p) = primes.iter().find(|&&p| !cyclic_cubic::arith::is_prime(p)) {
            return usage(format!("--primes: {p} is not prime"));
        }
        Ok(RunConfig {
            command: cli.command,
            x: cli.x,
            beta: cli.beta,
            mode,
            out: cli.out,
            catalog: cli.catalog,
            p0: cli.p0,
            ymax: cli.ymax,
            s: cli.s,
            primes,
            inject_fault: cli.inject_fault,
        })
    }
}
