mod commands;
mod inputs;

use std::path::PathBuf;
use std::process::ExitCode;

use braidcert::ball::PrecisionPolicy;
use braidcert::certify::Status;
use clap::{Args, Parser, Subcommand};

/// Certified computations for sesquilinear braid group representations.
#[derive(Parser, Debug)]
#[command(name = "braidcert", version)]
pub struct Cli {
    /// Starting working precision in bits (a power of two).
    #[arg(long, global = true, env = "BRAIDCERT_PRECISION", value_name = "BITS")]
    precision: Option<u32>,
    /// Largest working precision in bits (a power of two).
    #[arg(long, global = true, env = "BRAIDCERT_PRECISION_CAP", value_name = "BITS")]
    precision_cap: Option<u32>,
    /// Also write a machine-readable key-value file.
    #[arg(long, global = true, value_name = "PATH")]
    emit: Option<PathBuf>,
    /// Print nothing on success or failure; rely on the exit code.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Salem polynomial certification and powers.
    #[command(subcommand)]
    Salem(SalemCmd),
    /// Representations in REPZ format.
    #[command(subcommand)]
    Rep(RepCmd),
    /// Invariant forms.
    #[command(subcommand)]
    Form(FormCmd),
    /// Discreteness and commensurability certificates.
    #[command(subcommand)]
    Certify(CertifyCmd),
    /// Young diagrams and Bratteli path counts.
    #[command(subcommand)]
    Young(YoungCmd),
    /// Re-run an emitted file and compare bit for bit.
    Check { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum SalemCmd {
    /// Certify a Salem polynomial (coefficients highest degree first, an
    /// expression in x, a file, or `lehmer`).
    Check {
        #[arg(required = true, num_args = 1.., allow_negative_numbers = true)]
        poly: Vec<String>,
    },
    /// Exponents m whose unit-circle conjugates of s^m lie in (-arc, arc).
    Powers {
        #[arg(required = true, num_args = 1.., allow_negative_numbers = true)]
        poly: Vec<String>,
        /// Half width of the arc about 1, e.g. `pi/2`, `2*pi/5` or `1.2`.
        #[arg(long, default_value = "pi/2")]
        arc: String,
        #[arg(long, default_value_t = 50)]
        max_m: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum RepCmd {
    /// Print the reduced Burau representation of B_{n+1} with its form.
    Burau {
        #[arg(short)]
        n: usize,
    },
    /// Parse a REPZ file and print it canonically.
    Show { file: String },
    /// Check braid relations and, if a form is given or present, invariance.
    Verify {
        file: String,
        #[arg(long)]
        form: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum FormCmd {
    /// Solve for invariant forms of a representation.
    Solve { rep: String },
    /// Positive definiteness at a point such as `a=i,L=1` or `x=exp(i*0.1)`.
    Posdef {
        form: String,
        #[arg(long)]
        at: String,
    },
    /// Signature at a point.
    Sig {
        form: String,
        #[arg(long)]
        at: String,
    },
    /// Equivalence of two forms specialized at s^n and s^m.
    Equiv {
        f1: String,
        f2: String,
        #[command(flatten)]
        s: SalemArgs,
        #[arg(long)]
        exps: String,
    },
}

#[derive(Args, Debug)]
pub struct SalemArgs {
    /// Salem polynomial (coefficients or expression), or `lehmer`.
    #[arg(long, default_value = "lehmer", allow_hyphen_values = true)]
    salem: String,
    /// Exponent multipliers, e.g. `x=1/2` (default) or `a=5,L=1`.
    #[arg(long)]
    param: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum CertifyCmd {
    /// Certify discreteness at one power of the Salem number.
    Discrete {
        #[arg(long, default_value = "burau:3")]
        rep: String,
        #[arg(long, default_value = "squier:3")]
        form: String,
        #[command(flatten)]
        s: SalemArgs,
        #[arg(long)]
        power: u32,
    },
    /// Certify commensurability of two specializations of one form.
    Commensurable {
        #[arg(long, default_value = "squier:3")]
        form: String,
        #[command(flatten)]
        s: SalemArgs,
        #[arg(long)]
        exps: String,
    },
    /// Discreteness certificates for every power up to --max-m.
    Search {
        #[arg(long, default_value = "burau:3")]
        rep: String,
        #[arg(long, default_value = "squier:3")]
        form: String,
        #[command(flatten)]
        s: SalemArgs,
        #[arg(long, default_value_t = 50)]
        max_m: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum YoungCmd {
    /// Subdiagrams with one corner removed.
    Subs { rows: String },
    /// Dimension of the Hecke algebra irreducible.
    Dim { rows: String },
    /// Path count in the BMW Bratteli diagram.
    Bmwdim {
        rows: String,
        #[arg(long)]
        row: usize,
    },
    /// The diagram whose subdiagrams are the two given: `reconstruct 2,2 / 3,1`.
    Reconstruct {
        #[arg(required = true, num_args = 1..)]
        parts: Vec<String>,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Fail(String),
    Unknown(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Fail(_) => 1,
            CliError::Unknown(_) => 2,
            CliError::Usage(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Fail(m) | CliError::Unknown(m) => m,
        }
    }
}

/// Human text, key-value lines and the status deciding the exit code.
pub struct Outcome {
    pub text: String,
    pub kv: Vec<(String, String)>,
    pub status: Status,
}

impl Outcome {
    pub fn new(status: Status) -> Self {
        Outcome { text: String::new(), kv: Vec::new(), status }
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn kv(&mut self, k: impl Into<String>, v: impl ToString) {
        self.kv.push((k.into(), v.to_string()));
    }
}

fn exit_code(s: Status) -> u8 {
    match s {
        Status::Pass => 0,
        Status::Fail => 1,
        Status::Unknown => 2,
    }
}

fn policy(cli: &Cli) -> Result<PrecisionPolicy, CliError> {
    let d = PrecisionPolicy::default();
    let start = cli.precision.unwrap_or(d.start_bits);
    let cap = cli.precision_cap.unwrap_or(d.cap_bits.max(start));
    if !start.is_power_of_two() || !cap.is_power_of_two() {
        return Err(CliError::Usage(format!("precision must be a power of two (got {start} and {cap})")));
    }
    if start > cap {
        return Err(CliError::Usage(format!("--precision {start} exceeds --precision-cap {cap}")));
    }
    if start < 16 || cap > 1 << 20 {
        return Err(CliError::Usage("precision must lie between 16 and 2^20 bits".into()));
    }
    Ok(PrecisionPolicy::new(start, cap))
}

/// Command-line words without the global flags, for recording in emitted files.
fn recorded_args(argv: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut it = argv.iter().skip(1);
    while let Some(a) = it.next() {
        match a.as_str() {
            "--emit" | "--precision" | "--precision-cap" => {
                it.next();
            }
            "--quiet" | "-q" => {}
            s if s.starts_with("--emit=") || s.starts_with("--precision=") || s.starts_with("--precision-cap=") => {}
            _ => out.push(a.clone()),
        }
    }
    out
}

/// The emitted file: inputs first, then the results.
pub fn emission(args: &[String], policy: &PrecisionPolicy, out: &Outcome) -> String {
    let mut s = String::new();
    for a in args {
        s.push_str(&format!("arg = {a}\n"));
    }
    s.push_str(&format!("config.precision = {}\n", policy.start_bits));
    s.push_str(&format!("config.precision_cap = {}\n", policy.cap_bits));
    for (k, v) in &out.kv {
        s.push_str(&format!("{k} = {v}\n"));
    }
    s.push_str(&format!("status = {}\n", out.status));
    s
}

fn run(argv: Vec<String>) -> u8 {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let policy = match policy(&cli) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {}", e.message());
            return e.code();
        }
    };
    match commands::dispatch(&cli.cmd, &policy) {
        Ok(out) => {
            if !cli.quiet {
                print!("{}", out.text);
            }
            if let Some(path) = &cli.emit {
                let text = emission(&recorded_args(&argv), &policy, &out);
                if let Err(e) = std::fs::write(path, text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return 3;
                }
            }
            exit_code(out.status)
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.code()
        }
    }
}

/// Parse recorded arguments again and run them at the recorded precision.
pub fn rerun(args: &[String], policy: &PrecisionPolicy) -> Result<Outcome, CliError> {
    let mut argv = vec!["braidcert".to_string()];
    argv.extend(args.iter().cloned());
    let cli = Cli::try_parse_from(&argv).map_err(|e| CliError::Usage(e.to_string()))?;
    if matches!(cli.cmd, Cmd::Check { .. }) {
        return Err(CliError::Usage("a check file cannot record another check".into()));
    }
    commands::dispatch(&cli.cmd, policy)
}

fn main() -> ExitCode {
    ExitCode::from(run(std::env::args().collect()))
}
