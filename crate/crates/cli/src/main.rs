use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use koszul_cli::spec::{parse_field, AlgebraSpec, Preset};
use koszul_cli::{emit, exit_code, parse_spec, run, CliError, Command, Format, ModuleChoice, Options};
use koszul_core::calculus::Direction;
use koszul_core::Field;

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
enum DirectionArg {
    Cohomology,
    Homology,
}

/// Exact Koszul calculus of quadratic quiver algebras.
#[derive(Parser, Debug)]
#[command(name = "koszul", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Algebra spec file (TOML).
    spec: Option<PathBuf>,
    /// symmetric:<n> | exterior:<n> | free:<n> | preprojective:<u-v,...>
    #[arg(long, conflicts_with = "spec")]
    preset: Option<String>,
    /// Q or Fp:<p>; overrides the spec file.
    #[arg(long)]
    field: Option<String>,
    /// Truncation weight T; overrides the spec file.
    #[arg(long)]
    max_weight: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Random trials per identity in verification commands.
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, value_enum, default_value_t = DirectionArg::Cohomology)]
    direction: DirectionArg,
    /// Coefficients for hk and hk-higher: A, Ae or quotient:<s>.
    #[arg(long, default_value = "A")]
    module: String,
    /// Include wall-clock time in the report (breaks byte-identical reruns).
    #[arg(long)]
    timing: bool,
    /// Deliberately corrupt the duality map, to exercise failure reporting.
    #[arg(long, hide = true)]
    inject_fault: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

const DEFAULT_MAX_WEIGHT: usize = 5;

fn load_spec(args: &Args) -> Result<Option<AlgebraSpec>, CliError> {
    let input = |e: String| CliError::Input(e);
    let field = args.field.as_deref().map(parse_field).transpose().map_err(input)?;
    let mut spec = match (&args.spec, &args.preset) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
            parse_spec(&text).map_err(|e| input(format!("{}: {e}", path.display())))?
        }
        (None, Some(p)) => AlgebraSpec::preset(
            field.unwrap_or(Field::Rational),
            args.max_weight.unwrap_or(DEFAULT_MAX_WEIGHT),
            Preset::parse(p).map_err(input)?,
        ),
        (None, None) => return Ok(None),
    };
    if let Some(f) = field {
        spec.field = f;
    }
    if let Some(t) = args.max_weight {
        spec.max_weight = t;
    }
    Ok(Some(spec))
}

fn execute(args: &Args) -> Result<i32, CliError> {
    let spec = load_spec(args)?;
    let opts = Options {
        seed: args.seed,
        trials: args.trials,
        direction: match args.direction {
            DirectionArg::Cohomology => Direction::Cohomology,
            DirectionArg::Homology => Direction::Homology,
        },
        module: ModuleChoice::parse(&args.module).map_err(CliError::Input)?,
        timing: args.timing,
        inject_fault: args.inject_fault,
    };
    let report = run(args.command, spec.as_ref(), &opts)?;
    let text = emit(&report, args.format);
    match &args.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(exit_code(&report))
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
