use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qmoment::{boundary_csv, boundary_note, JsonReport, RayonExecutor};
use qmoment_core::verify::{forms_suite, roundtrip_suite, verify_suite, SampleConfig, SpaceKind, SuiteReport};

const MAX_DEFAULT_N: usize = 3;

#[derive(Parser)]
#[command(name = "qmoment", version, about = "Numeric checks of quasi-Hamiltonian Sp(n)-spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the axiom suite on one space.
    Verify {
        #[arg(long, value_enum)]
        space: Space,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Roundtrips and equivariance of the HP^n maps.
    Roundtrip {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Chart, homogeneous and FD agreement of the HP^n 2-form.
    Forms {
        #[command(flatten)]
        run: RunArgs,
    },
    /// CSV scan of the dx13^dx14 chart coefficient.
    Boundary {
        #[arg(long, value_delimiter = ',', required = true)]
        ts: Vec<f64>,
        /// Finite-difference step.
        #[arg(long, default_value_t = 1e-5)]
        h: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Space {
    Double,
    Conjclass,
    Fused,
    Stratum,
    Hpn,
}

impl From<Space> for SpaceKind {
    fn from(s: Space) -> Self {
        match s {
            Space::Double => SpaceKind::Double,
            Space::Conjclass => SpaceKind::ConjClass,
            Space::Fused => SpaceKind::Fused,
            Space::Stratum => SpaceKind::Stratum,
            Space::Hpn => SpaceKind::Hpn,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, default_value_t = 50)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Step for second-order exterior derivatives.
    #[arg(long, default_value_t = qmoment_core::tol::FD_STEP_EXTERIOR)]
    h: f64,
    /// Step for first derivatives.
    #[arg(long, default_value_t = qmoment_core::tol::FD_STEP_FIRST)]
    h_first: f64,
    #[arg(long)]
    tol_axiom_one: Option<f64>,
    #[arg(long)]
    tol_axiom_two: Option<f64>,
    #[arg(long)]
    tol_axiom_three: Option<f64>,
    #[arg(long)]
    tol_equivariance: Option<f64>,
    #[arg(long)]
    tol_roundtrip: Option<f64>,
    #[arg(long)]
    tol_closed_form: Option<f64>,
    #[arg(long)]
    tol_fd: Option<f64>,
    #[arg(long)]
    tol_moment: Option<f64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<std::path::PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Permit n > 3.
    #[arg(long)]
    allow_large_n: bool,
}

impl RunArgs {
    fn config(&self) -> Result<SampleConfig, String> {
        if self.n > MAX_DEFAULT_N {
            if !self.allow_large_n {
                return Err(format!("n = {} exceeds {MAX_DEFAULT_N}; pass --allow-large-n to run anyway", self.n));
            }
            eprintln!("warning: n = {} is above the tested range and may be slow", self.n);
        }
        let mut cfg = SampleConfig::new(self.n, self.samples, self.seed);
        cfg.h = self.h;
        cfg.h_first = self.h_first;
        let t = &mut cfg.tolerances;
        for (slot, value) in [
            (&mut t.axiom_one, self.tol_axiom_one),
            (&mut t.axiom_two, self.tol_axiom_two),
            (&mut t.axiom_three, self.tol_axiom_three),
            (&mut t.equivariance, self.tol_equivariance),
            (&mut t.roundtrip, self.tol_roundtrip),
            (&mut t.closed_form, self.tol_closed_form),
            (&mut t.fd_agreement, self.tol_fd),
            (&mut t.moment, self.tol_moment),
        ] {
            if let Some(v) = value {
                if v.is_nan() || v < 0.0 {
                    return Err("tolerances must be non-negative".into());
                }
                *slot = v;
            }
        }
        cfg.validate().map_err(|e| e.to_string())?;
        Ok(cfg)
    }
}

fn usage(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn run_suite(
    run: &RunArgs,
    suite: impl FnOnce(&SampleConfig, &RayonExecutor) -> qmoment_core::Result<SuiteReport>,
) -> ExitCode {
    let cfg = match run.config() {
        Ok(c) => c,
        Err(e) => return usage(&e),
    };
    let exec = match RayonExecutor::from_env() {
        Ok(e) => e,
        Err(e) => return usage(&e),
    };
    let report = match suite(&cfg, &exec) {
        Ok(r) => JsonReport::new(&r, &cfg),
        Err(e) => return usage(&e.to_string()),
    };
    let body = match run.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match &run.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &body) {
                return usage(&format!("cannot write {}: {e}", path.display()));
            }
        }
        None => print!("{body}"),
    }
    if report.pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { space, run } => run_suite(&run, |c, e| verify_suite(space.into(), c, e)),
        Command::Roundtrip { run } => run_suite(&run, |c, e| roundtrip_suite(c, e)),
        Command::Forms { run } => run_suite(&run, |c, e| forms_suite(c, e)),
        Command::Boundary { ts, h } => match boundary_csv(&ts, h) {
            Ok(csv) => {
                print!("{csv}");
                eprintln!("{}", boundary_note());
                ExitCode::SUCCESS
            }
            Err(e) => usage(&e),
        },
    }
}
