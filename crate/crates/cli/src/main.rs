use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::cmp::Ordering;
use std::error::Error;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;
use typec_core::bmw::relation_suite;
use typec_core::centralizer::{bimodule_dimension_check, duality_report};
use typec_core::combin::{brauer_rank_sum, double_factorial_odd};
use typec_core::coordalg::oehms_rank_check;
use typec_core::evaluation::EvalPlan;
use typec_core::qaction::projector_checks;
use typec_core::report::{Check, VerificationReport};
use typec_core::scalars::Mode;
use typec_core::truncation::{diagram_check, RankPair};

/// Largest tensor space the operator suites accept.
const OPERATOR_DIM_LIMIT: usize = 1024;
/// Largest degree for `counts`.
const COUNTS_N_LIMIT: usize = 12;

#[derive(Parser, Debug)]
#[command(name = "typec", version, about = "Verification suites for type C Schur-Weyl duality")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout (default: $REPORT_DIR/<suite>.<ext> if set).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Include wall-clock runtimes in the report.
    #[arg(long, global = true)]
    timing: bool,
    /// Seed for choosing prime-field evaluation points.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Fixed prime for prime-field mode.
    #[arg(long, global = true)]
    prime: Option<u64>,
    /// Coefficient field; defaults to exact when the tensor space has dimension <= 16.
    #[arg(long, global = true, value_enum)]
    mode: Option<ModeArg>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Defining relations of the BMW algebra on tensor space, and at q = 1.
    Relations {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Images of both algebras and their commutants.
    Duality {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// The rank identity sum_f |D_f|^2 (n-2f)! = (2n-1)!! for n = 1..n-max.
    Counts {
        #[arg(long, default_value_t = 8)]
        n_max: usize,
    },
    /// Rank of the bideterminant functionals on the Schur algebra.
    Oehms {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Lusztig projectors against weight projectors.
    Projectors {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Rank-change diagram on every Enyang basis label.
    Truncate {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        m0: usize,
        #[arg(long)]
        n: usize,
    },
    /// Dimension count of the bimodule decomposition.
    Bimodule {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Modp,
}

#[derive(Serialize)]
struct Envelope<'a> {
    suite: &'a str,
    version: &'a str,
    seed: u64,
    status: &'a str,
    reports: &'a [VerificationReport],
}

struct Outcome {
    suite: &'static str,
    reports: Vec<VerificationReport>,
    exhausted: bool,
}

impl Outcome {
    fn one(suite: &'static str, (r, exhausted): (VerificationReport, bool)) -> Self {
        Outcome { suite, reports: vec![r], exhausted }
    }

    fn status(&self) -> &'static str {
        if self.exhausted {
            "exhausted"
        } else if self.reports.iter().all(VerificationReport::passed) {
            "pass"
        } else {
            "fail"
        }
    }

    fn exit_code(&self) -> u8 {
        match self.status() {
            "pass" => 0,
            "fail" => 1,
            _ => 3,
        }
    }
}

type CliResult<T> = Result<T, Box<dyn Error>>;

fn usage(msg: String) -> Box<dyn Error> {
    msg.into()
}

fn need_rank(m: usize, n: usize, min_n: usize) -> CliResult<()> {
    if m == 0 {
        return Err(usage("--m must be at least 1".into()));
    }
    if n < min_n {
        return Err(usage(format!("--n must be at least {min_n}")));
    }
    Ok(())
}

fn need_dim(m: usize, n: usize) -> CliResult<()> {
    match (2 * m).checked_pow(n as u32) {
        Some(d) if d <= OPERATOR_DIM_LIMIT => Ok(()),
        _ => Err(usage(format!("(2m)^n for m={m} n={n} exceeds {OPERATOR_DIM_LIMIT}"))),
    }
}

fn plan(cli: &Cli, m: usize, n: usize) -> EvalPlan {
    let d = (2 * m).saturating_pow(n as u32);
    let mode = match cli.mode {
        Some(ModeArg::Exact) => Mode::Exact,
        Some(ModeArg::Modp) => Mode::Modp,
        None if d <= 16 => Mode::Exact,
        None => Mode::Modp,
    };
    EvalPlan::new(mode, cli.seed, cli.prime, m, n)
}

fn counts(n_max: usize) -> CliResult<VerificationReport> {
    if n_max == 0 || n_max > COUNTS_N_LIMIT {
        return Err(usage(format!("--n-max must be in 1..={COUNTS_N_LIMIT}")));
    }
    let mut r = VerificationReport::new(0, n_max, "integer");
    for n in 1..=n_max {
        r.push(Check::equal(format!("rank identity n={n}"), double_factorial_odd(n), brauer_rank_sum(n)));
    }
    Ok(r)
}

fn run(cli: &Cli) -> CliResult<Outcome> {
    Ok(match cli.cmd {
        Cmd::Relations { m, n } => {
            need_rank(m, n, 2)?;
            need_dim(m, n)?;
            Outcome::one("relations", (relation_suite(m, n)?, false))
        }
        Cmd::Duality { m, n } => {
            need_rank(m, n, 1)?;
            Outcome::one("duality", duality_report(m, n, &plan(cli, m, n))?)
        }
        Cmd::Counts { n_max } => Outcome::one("counts", (counts(n_max)?, false)),
        Cmd::Oehms { m, n } => {
            need_rank(m, n, 1)?;
            Outcome::one("oehms", oehms_rank_check(m, n, &plan(cli, m, n))?)
        }
        Cmd::Projectors { m, n } => {
            need_rank(m, n, 1)?;
            need_dim(m, n)?;
            let mut r = VerificationReport::new(m, n, Mode::Laurent.as_str());
            r.extend(projector_checks(m, n)?);
            Outcome::one("projectors", (r, false))
        }
        Cmd::Truncate { m, m0, n } => {
            let p = RankPair::new(m, m0, n)?;
            Outcome::one("truncate", diagram_check(&p, &plan(cli, m0, n))?)
        }
        Cmd::Bimodule { m, n } => {
            need_rank(m, n, 1)?;
            if n > COUNTS_N_LIMIT {
                return Err(usage(format!("--n must be at most {COUNTS_N_LIMIT}")));
            }
            let mut r = VerificationReport::new(m, n, "integer");
            r.push(bimodule_dimension_check(m, n)?);
            Outcome::one("bimodule", (r, false))
        }
    })
}

/// Compares names with embedded numbers by value, so `n=10` follows `n=9`.
fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, &str)> {
        let mut out = Vec::new();
        let mut start = 0;
        let b = s.as_bytes();
        for i in 1..=b.len() {
            if i == b.len() || b[i].is_ascii_digit() != b[start].is_ascii_digit() {
                out.push((b[start].is_ascii_digit(), &s[start..i]));
                start = i;
            }
        }
        out
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for (x, y) in ca.iter().zip(&cb) {
        let o = match (x, y) {
            ((true, p), (true, q)) => {
                let (p, q) = (p.trim_start_matches('0'), q.trim_start_matches('0'));
                p.len().cmp(&q.len()).then_with(|| p.cmp(q))
            }
            _ => x.1.cmp(y.1),
        };
        if o != Ordering::Equal {
            return o;
        }
    }
    ca.len().cmp(&cb.len()).then_with(|| a.cmp(b))
}

fn render(cli: &Cli, o: &Outcome) -> CliResult<String> {
    Ok(match cli.format {
        Format::Json => {
            let env = Envelope {
                suite: o.suite,
                version: env!("CARGO_PKG_VERSION"),
                seed: cli.seed,
                status: o.status(),
                reports: &o.reports,
            };
            serde_json::to_string_pretty(&env)? + "\n"
        }
        Format::Text => {
            let mut s = format!("suite {} version {} seed {}\n", o.suite, env!("CARGO_PKG_VERSION"), cli.seed);
            for r in &o.reports {
                s.push_str(&format!("m={} n={} mode={}", r.m, r.n, r.mode));
                if let Some(e) = &r.evaluation {
                    s.push_str(&format!(" p={} c={} attempt={}", e.p, e.c, e.attempt));
                }
                for (k, v) in &r.params {
                    s.push_str(&format!(" {k}={v}"));
                }
                if let Some(t) = r.runtime_ms {
                    s.push_str(&format!(" runtime_ms={t}"));
                }
                s.push('\n');
                s.push_str(&r.to_text());
            }
            s.push_str(&format!("overall {}\n", o.status().to_uppercase()));
            s
        }
    })
}

fn destination(cli: &Cli, suite: &str) -> Option<PathBuf> {
    if let Some(p) = &cli.out {
        return Some(p.clone());
    }
    let dir = std::env::var_os("REPORT_DIR")?;
    let ext = match cli.format {
        Format::Json => "json",
        Format::Text => "txt",
    };
    Some(PathBuf::from(dir).join(format!("{suite}.{ext}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    let mut outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let elapsed = start.elapsed().as_millis() as u64;
    for r in &mut outcome.reports {
        r.checks.sort_by(|a, b| natural_cmp(&a.name, &b.name));
        if cli.timing {
            r.runtime_ms = Some(elapsed);
        }
    }
    let text = match render(&cli, &outcome) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match destination(&cli, outcome.suite) {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
            eprintln!("{} {} -> {}", outcome.suite, outcome.status(), path.display());
        }
        None => print!("{text}"),
    }
    ExitCode::from(outcome.exit_code())
}
