//! `grasscode`: build codes from linear sections of Grassmannians, compute
//! their weights and check the closed forms.
//!
//! Exit codes: 0 success, 1 other failure, 2 bad input, 3 budget exceeded,
//! 4 a supported claim failed verification.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use grasscode_core::bounds::{closed_form_count, verify_suite, VerifyGrid};
use grasscode_core::code::{build_code, weight_profile, LinearCode, Method, Scan};
use grasscode_core::field::make_field;
use grasscode_core::{enumerate_variety, Budget, Error, Field, VarietySpec};
use serde_json::json;

#[derive(Parser)]
#[command(name = "grasscode", version, about = "Codes from linear sections of Grassmannians over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count rational points and compare with the closed form
    Count {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        json: bool,
    },
    /// Write the generator matrix of a variety's code
    Build {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the rational points in Plücker coordinates
    Points {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute n, k, d, d_1..d_{r_max} and the weight enumerator of a code file
    Weights {
        /// Generator matrix file written by `build`
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        r_max: usize,
        #[arg(long, default_value = "codewords")]
        method: Method,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Accepted for symmetry; the output is always JSON
        #[arg(long)]
        json: bool,
    },
    /// Run the bound checks over a parameter grid
    Verify {
        /// Field orders, e.g. `2,3`
        #[arg(long, value_delimiter = ',')]
        q: Vec<u32>,
        /// Lagrangian ranks n, e.g. `2,3`
        #[arg(long = "lagrangian-n", value_delimiter = ',')]
        lagrangian_n: Vec<usize>,
        /// Grassmannian shapes `l,m`; repeat the flag or separate with `;`
        #[arg(long, value_delimiter = ';')]
        grassmann: Vec<String>,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

/// A variety over a field.
#[derive(Args)]
struct Target {
    /// Variety, e.g. `lagrangian:2` or `schubert:2,4:2,4`
    spec_arg: Option<String>,
    #[arg(long = "spec", conflicts_with = "spec_arg")]
    spec_flag: Option<String>,
    /// Field order q
    #[arg(long, conflicts_with_all = ["p", "e"])]
    q: Option<u32>,
    /// Field characteristic (with --e)
    #[arg(long, requires = "e")]
    p: Option<u32>,
    /// Field degree (with --p)
    #[arg(long, requires = "p")]
    e: Option<u32>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args)]
struct RunArgs {
    /// Worker threads for the scans (default: available cores)
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    budget_points: Option<u64>,
    #[arg(long)]
    budget_scans: Option<u64>,
}

enum Fail {
    Input(String),
    Budget(String),
    Verify(String),
    Other(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        match e {
            Error::BudgetExceeded { .. } => Fail::Budget(e.to_string()),
            Error::Parse(_) => Fail::Input(e.to_string()),
            other => Fail::Other(other.to_string()),
        }
    }
}

fn input(e: Error) -> Fail {
    match e {
        Error::BudgetExceeded { .. } => Fail::from(e),
        other => Fail::Input(other.to_string()),
    }
}

impl RunArgs {
    fn scan(&self) -> Result<Scan, Fail> {
        let mut budget = Budget::from_env().map_err(input)?;
        if let Some(p) = self.budget_points {
            budget.max_points = p;
        }
        if let Some(s) = self.budget_scans {
            budget.max_scans = s;
        }
        if budget.max_points == 0 || budget.max_scans == 0 {
            return Err(Fail::Input("budgets must be positive".into()));
        }
        let workers = match self.workers {
            Some(0) => return Err(Fail::Input("--workers must be at least 1".into())),
            Some(w) => w,
            None => Scan::default().workers,
        };
        Ok(Scan::new(budget, workers))
    }
}

impl Target {
    fn field(&self) -> Result<Field, Fail> {
        match (self.q, self.p, self.e) {
            (Some(q), _, _) => Field::of_order(q).map_err(input),
            (None, Some(p), Some(e)) => make_field(p, e).map_err(input),
            _ => Err(Fail::Input("give the field as --q or --p/--e".into())),
        }
    }

    fn spec(&self) -> Result<VarietySpec, Fail> {
        let s = self
            .spec_arg
            .as_deref()
            .or(self.spec_flag.as_deref())
            .ok_or_else(|| Fail::Input("missing variety spec".into()))?;
        VarietySpec::parse(s, &self.field()?).map_err(input)
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Fail> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Fail::Other(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_shape(s: &str) -> Result<(usize, usize), Fail> {
    let bad = || Fail::Input(format!("bad Grassmannian shape {s:?}, expected l,m"));
    let (l, m) = s.split_once(',').ok_or_else(bad)?;
    let l: usize = l.trim().parse().map_err(|_| bad())?;
    let m: usize = m.trim().parse().map_err(|_| bad())?;
    if l < 1 || l > m {
        return Err(bad());
    }
    Ok((l, m))
}

fn run(cli: Cli) -> Result<(), Fail> {
    match cli.command {
        Command::Count { target, json } => {
            let spec = target.spec()?;
            let scan = target.run.scan()?;
            let sys = enumerate_variety(&spec, &scan.budget)?;
            let formula = closed_form_count(&spec.kind, spec.field.q() as u64)?.map(|f| f.to_string());
            let count = sys.len().to_string();
            // with no closed form there is nothing to disagree with
            let agree = formula.as_ref().map_or(true, |f| *f == count);
            if json {
                let f = formula.as_ref().map_or(json!(null), |f| json!(f.parse::<u128>().ok()));
                println!("{}", json!({"count": sys.len(), "formula": f, "agree": agree}));
            } else {
                println!("count={count} formula={} agree={agree}", formula.as_deref().unwrap_or("none"));
            }
            Ok(())
        }
        Command::Build { target, out } => {
            let spec = target.spec()?;
            let scan = target.run.scan()?;
            let sys = enumerate_variety(&spec, &scan.budget)?;
            let mut code = build_code(&sys)?;
            code.source = Some(spec.to_string());
            emit(&code.to_text(), out.as_ref())?;
            if out.is_some() {
                eprintln!("n={} k={}", code.n(), code.k());
            }
            Ok(())
        }
        Command::Points { target, out } => {
            let spec = target.spec()?;
            let scan = target.run.scan()?;
            let sys = enumerate_variety(&spec, &scan.budget)?;
            emit(&sys.to_text(), out.as_ref())
        }
        Command::Weights {
            file,
            r_max,
            method,
            run,
            out,
            json: _,
        } => {
            let scan = run.scan()?;
            let text = fs::read_to_string(&file).map_err(|e| Fail::Input(format!("{}: {e}", file.display())))?;
            let code = LinearCode::parse(&text).map_err(input)?;
            if r_max > code.k() {
                return Err(Fail::Input(format!("--r-max {r_max} exceeds k = {}", code.k())));
            }
            let profile = weight_profile(&code, r_max, method, &scan)?;
            let body = serde_json::to_string(&profile).map_err(|e| Fail::Other(e.to_string()))?;
            emit(&format!("{body}\n"), out.as_ref())
        }
        Command::Verify {
            q,
            lagrangian_n,
            grassmann,
            run,
            out,
            json: _,
        } => {
            let scan = run.scan()?;
            for &x in &q {
                Field::of_order(x).map_err(input)?;
            }
            let grid = VerifyGrid {
                qs: q,
                lagrangian_n,
                grassmann: grassmann
                    .iter()
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| parse_shape(s))
                    .collect::<Result<_, _>>()?,
            };
            let report = verify_suite(&grid, &scan)?;
            let body = serde_json::to_string_pretty(&report).map_err(|e| Fail::Other(e.to_string()))?;
            emit(&format!("{body}\n"), out.as_ref())?;
            if report.passed() {
                Ok(())
            } else {
                let failed: Vec<String> = report
                    .reports
                    .iter()
                    .filter(|r| r.is_failure())
                    .map(|r| r.claim.clone())
                    .collect();
                Err(Fail::Verify(format!("failed claims: {}", failed.join(", "))))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(fail) => {
            let (code, msg) = match fail {
                Fail::Input(m) => (2, m),
                Fail::Budget(m) => (3, m),
                Fail::Verify(m) => (4, m),
                Fail::Other(m) => (1, m),
            };
            eprintln!("grasscode: {msg}");
            ExitCode::from(code)
        }
    }
}
