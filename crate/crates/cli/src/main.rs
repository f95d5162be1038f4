use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser};

use levelforge_cli::{apply_budget, run, CliError, GbInput, Overrides, SUBCOMMANDS};

/// Exact verification of full level structures on Oort–Tate group schemes.
#[derive(Debug, Parser)]
#[command(name = "levelforge", version)]
struct Cli {
    /// One of: flatness, unit-factor, s-indep, gl2-invariance, teichmuller,
    /// constant-iso, truncated, stack-counterexample, partial-2x3, g3, km,
    /// kmd, gb.
    subcommand: String,
    #[command(flatten)]
    flags: Flags,
    /// Variables for `gb`, comma separated.
    #[arg(long, value_delimiter = ',')]
    vars: Vec<String>,
    /// A generator for `gb` (repeatable).
    #[arg(long = "gen")]
    gens: Vec<String>,
    /// `key = value` config file; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Flags {
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    q: Option<u64>,
    /// p-adic precision.
    #[arg(long)]
    n: Option<u32>,
    /// Truncation level.
    #[arg(long)]
    l: Option<u32>,
    /// `symbolic` or `s,t`.
    #[arg(long)]
    chart: Option<String>,
    /// degrevlex or lex.
    #[arg(long)]
    order: Option<String>,
    #[arg(long)]
    budget_pairs: Option<usize>,
    #[arg(long)]
    budget_degree: Option<u32>,
    /// Wall-clock limit; exceeding it exits with code 2.
    #[arg(long)]
    timeout_secs: Option<u64>,
    #[arg(long)]
    heavy: bool,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    jobs: Option<usize>,
}

impl Flags {
    fn overrides(self) -> Overrides {
        Overrides {
            p: self.p,
            q: self.q,
            n: self.n,
            l: self.l,
            chart: self.chart,
            order: self.order,
            budget_pairs: self.budget_pairs,
            budget_degree: self.budget_degree,
            timeout_secs: self.timeout_secs,
            heavy: self.heavy.then_some(true),
            json: self.json.then_some(true),
            seed: self.seed,
            jobs: self.jobs,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("levelforge: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(cli: Cli) -> Result<i32, CliError> {
    if !SUBCOMMANDS.contains(&cli.subcommand.as_str()) {
        return Err(CliError::Usage(format!("unknown subcommand '{}'; expected one of {}", cli.subcommand, SUBCOMMANDS.join(", "))));
    }
    let file = match &cli.config {
        Some(path) => Overrides::from_file(path)?,
        None => Overrides::default(),
    };
    let config = cli.flags.overrides().over(file).resolve()?;
    if let Some(j) = config.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global().map_err(|e| CliError::Usage(e.to_string()))?;
    }
    if let Some(secs) = config.timeout_secs {
        std::thread::spawn(move || {
            std::thread::sleep(std::time::Duration::from_secs(secs));
            eprintln!("levelforge: wall-clock budget of {secs} s exceeded");
            std::process::exit(2);
        });
    }
    apply_budget(&config);
    let report = run(&cli.subcommand, &config, &GbInput { vars: cli.vars, gens: cli.gens })?;
    if config.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    Ok(report.exit_code())
}
