use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qsym_core::combinatorics::{count_extended_peak_sets, Composition, IndexSet};
use qsym_core::linalg::{build_b_direct, ExactMatrix};
use qsym_core::ppartitions::{gamma_q, LabelledWeightedPoset};
use qsym_core::qsym::{eta, fundamental_l, realize, universal_u, QSymElement};
use qsym_core::scalars::{rho, Cyclotomic, QPoly, Rational, Scalar};
use qsym_core::theorems::{run_all, run_suite, Bounds, Suite};

#[derive(Parser)]
#[command(name = "qsym", version, about = "Exact q-deformed quasisymmetric functions")]
struct Cli {
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a basis element in the monomial basis.
    Expand {
        #[arg(long, value_enum)]
        basis: Basis,
        /// Degree; for U it defaults to the length of the composition.
        #[arg(long)]
        n: Option<usize>,
        /// Subset of [n-1], e.g. `1,3` (empty by default).
        #[arg(long, default_value = "")]
        set: String,
        /// Composition for U, e.g. `2,1,1`.
        #[arg(long)]
        composition: Option<String>,
        #[arg(long, default_value = "symbolic")]
        q: QSpec,
        /// Also realize on x_1..x_k.
        #[arg(long)]
        vars: Option<usize>,
    },
    /// Transition matrix B_n from q-fundamentals to enriched q-monomials.
    Matrix {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "symbolic")]
        q: QSpec,
        #[arg(long, value_enum, default_value_t = MatrixFormat::Csv)]
        format: MatrixFormat,
    },
    /// Rank of B_n at q = rho_p.
    Rank {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        p: u32,
    },
    /// Number of p-extended peak sets of [n-1].
    Count {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        p: u32,
        #[arg(long)]
        n: usize,
    },
    /// Brute-force oracles.
    Oracle {
        #[command(subcommand)]
        oracle: Oracle,
    },
    /// Run verification suites; exits 1 if any case fails.
    Verify {
        #[arg(long, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, default_value_t = 3)]
        max_p: usize,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
}

#[derive(Subcommand)]
enum Oracle {
    /// Generating function of enriched P-partitions on x_1..x_N.
    Gamma {
        /// JSON file `{"n": .., "covers": [[a, b], ..], "weights": [..]}`.
        #[arg(long)]
        poset: PathBuf,
        #[arg(long)]
        vars: usize,
        #[arg(long, default_value = "symbolic")]
        q: QSpec,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Basis {
    #[value(name = "L")]
    L,
    #[value(name = "eta")]
    Eta,
    #[value(name = "U")]
    U,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

/// `symbolic`, `rho:<p>` or `rational:<a>/<b>`.
#[derive(Clone, Debug)]
enum QSpec {
    Symbolic,
    Rho(u32),
    Rational(Rational),
}

impl FromStr for QSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s == "symbolic" {
            return Ok(QSpec::Symbolic);
        }
        if let Some(p) = s.strip_prefix("rho:") {
            return match p.parse::<u32>() {
                Ok(p) if p >= 1 => Ok(QSpec::Rho(p)),
                _ => Err(format!("rho needs a positive integer, got {p:?}")),
            };
        }
        if let Some(r) = s.strip_prefix("rational:") {
            return r.parse::<Rational>().map(QSpec::Rational).map_err(|e| e.to_string());
        }
        Err(format!("expected symbolic, rho:<p> or rational:<a>/<b>, got {s:?}"))
    }
}

#[derive(Clone, Debug)]
enum SuiteArg {
    All,
    One(Suite),
}

impl FromStr for SuiteArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s == "all" {
            return Ok(SuiteArg::All);
        }
        s.parse::<Suite>().map(SuiteArg::One).map_err(|_| {
            let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
            format!("unknown suite {s:?}; expected all or one of {}", names.join(", "))
        })
    }
}

/// A bad flag value found after parsing.
#[derive(Debug)]
struct Usage(String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage<T>(flag: &str, err: impl fmt::Display) -> Result<T> {
    Err(Usage(format!("invalid value for --{flag}: {err}")).into())
}

fn parse_list(flag: &str, text: &str) -> Result<Vec<u32>> {
    let trimmed = text.trim().trim_start_matches('{').trim_end_matches('}');
    trimmed
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<u32>().or_else(|e| usage(flag, format!("{s:?}: {e}"))))
        .collect()
}

fn parse_set(n: usize, text: &str) -> Result<IndexSet> {
    let members: Vec<usize> = parse_list("set", text)?.into_iter().map(|m| m as usize).collect();
    IndexSet::new(n, &members).or_else(|e| usage("set", e))
}

/// Values that can fill a matrix cell.
trait Cell: Scalar {
    fn cell_text(&self) -> String {
        self.to_string()
    }

    fn cell_json(&self) -> Value {
        self.to_json()
    }
}

impl Cell for QPoly {
    fn cell_text(&self) -> String {
        self.to_factored_string()
    }

    fn cell_json(&self) -> Value {
        Value::String(self.to_factored_string())
    }
}

impl Cell for Rational {}
impl Cell for Cyclotomic {}

fn expand_with<S: Scalar>(q: &S, basis: Basis, n: Option<usize>, set: &str, composition: Option<&str>, vars: Option<usize>) -> Result<Value> {
    let element: QSymElement<S> = match basis {
        Basis::L | Basis::Eta => {
            let Some(n) = n else {
                return usage("n", "required for the L and eta bases");
            };
            let set = parse_set(n, set)?;
            match basis {
                Basis::L => fundamental_l(n, &set, q),
                _ => eta(n, &set, q),
            }
            .or_else(|e| usage("set", e))?
        }
        Basis::U => {
            let Some(text) = composition else {
                return usage("composition", "required for the U basis");
            };
            let alpha = Composition::new(parse_list("composition", text)?).or_else(|e| usage("composition", e))?;
            if n.is_some_and(|n| n != alpha.len()) {
                return usage("n", format!("must equal the length of {alpha}"));
            }
            let set = parse_set(alpha.len(), set)?;
            universal_u(&set, &alpha, q).or_else(|e| usage("set", e))?
        }
    };
    let mut out = element.to_json();
    if let Some(k) = vars {
        out["realization"] = realize(&element, k).to_json();
    }
    Ok(out)
}

fn matrix_with<S: Cell>(n: usize, q: &S, format: MatrixFormat) -> Result<String> {
    let m: ExactMatrix<S> = build_b_direct(n, q).or_else(|e| usage("n", e))?;
    Ok(match format {
        MatrixFormat::Csv => m.to_csv(S::cell_text),
        MatrixFormat::Json => format!("{}\n", m.to_json(S::cell_json)),
    })
}

fn gamma_with<S: Scalar>(poset: &LabelledWeightedPoset, vars: usize, q: &S) -> Value {
    gamma_q(poset, vars, q).to_json()
}

/// Returns the text to emit and whether every verification passed.
fn run(cli: &Cli) -> Result<(String, bool)> {
    let json_line = |v: Value| format!("{v}\n");
    Ok(match &cli.command {
        Command::Expand { basis, n, set, composition, q, vars } => {
            let comp = composition.as_deref();
            let v = match q {
                QSpec::Symbolic => expand_with(&QPoly::q(), *basis, *n, set, comp, *vars)?,
                QSpec::Rho(p) => expand_with(&rho(*p), *basis, *n, set, comp, *vars)?,
                QSpec::Rational(r) => expand_with(r, *basis, *n, set, comp, *vars)?,
            };
            (json_line(v), true)
        }
        Command::Matrix { n, q, format } => {
            let text = match q {
                QSpec::Symbolic => matrix_with(*n, &QPoly::q(), *format)?,
                QSpec::Rho(p) => matrix_with(*n, &rho(*p), *format)?,
                QSpec::Rational(r) => matrix_with(*n, r, *format)?,
            };
            (text, true)
        }
        Command::Rank { n, p } => {
            let rank = build_b_direct(*n, &rho(*p)).or_else(|e| usage("n", e))?.rank();
            let size = if *n == 0 { 0 } else { 1usize << (n - 1) };
            let v = json!({
                "n": n,
                "p": p,
                "rank": rank,
                "dim_ker": size - rank,
                "extended_peak_sets": count_extended_peak_sets(*n, *p as usize).to_string(),
            });
            (json_line(v), true)
        }
        Command::Count { p, n } => (format!("{}\n", count_extended_peak_sets(*n, *p as usize)), true),
        Command::Oracle { oracle: Oracle::Gamma { poset, vars, q } } => {
            let text = fs::read_to_string(poset).with_context(|| format!("reading {}", poset.display()))?;
            let poset = LabelledWeightedPoset::from_json(&text).or_else(|e| usage("poset", e))?;
            let v = match q {
                QSpec::Symbolic => gamma_with(&poset, *vars, &QPoly::q()),
                QSpec::Rho(p) => gamma_with(&poset, *vars, &rho(*p)),
                QSpec::Rational(r) => gamma_with(&poset, *vars, r),
            };
            (json_line(v), true)
        }
        Command::Verify { suite, max_n, max_p, format } => {
            if *max_n == 0 || *max_p == 0 {
                return usage("max-n", "bounds must be positive");
            }
            let bounds = Bounds { max_n: *max_n, max_p: *max_p };
            let reports = match suite {
                SuiteArg::All => run_all(bounds),
                SuiteArg::One(s) => vec![run_suite(*s, bounds)],
            };
            let passed = reports.iter().all(|r| r.passed());
            let text = match format {
                ReportFormat::Text => reports.iter().map(|r| r.to_text()).collect(),
                ReportFormat::Json => {
                    let all: Vec<Value> = reports.iter().map(|r| r.to_json()).collect();
                    json_line(json!({"passed": passed, "reports": all}))
                }
            };
            (text, passed)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli).and_then(|(text, passed)| {
        match &cli.out {
            Some(path) => fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?,
            None => print!("{text}"),
        }
        Ok(passed)
    });
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.is::<Usage>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
