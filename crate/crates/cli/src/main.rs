use std::path::PathBuf;
use std::process::ExitCode;

use cenalg::commands::{run_command, CommandArgs, CommandError, Format};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "cenalg", version, about = "Centrification of finitely presented algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a presentation and print it back
    Parse(Opts),
    /// Presentation of the centrification
    Centrify(Opts),
    /// Presentation over the central polynomial ring
    Zpres(Opts),
    /// Check whether the relations form a Gröbner-Shirshov basis
    GsbCheck(Opts),
    /// Run completion up to a degree bound
    Complete(Opts),
    /// Obstacles of all compositions
    Obstacles(Opts),
    /// Flatness check of the Z-presentation
    PropCheck(Opts),
    /// Relations among the central variables
    CentralRelations(Opts),
    /// Substitute values for the central variables
    Specialize(Opts),
    /// Primitivity of relations and their commutators
    HopfCheck(Opts),
    /// Print a named preset
    Preset(Opts),
    /// Run the built-in reproduction checks
    VerifyPaper(Opts),
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Structured,
}

#[derive(clap::Args)]
struct Opts {
    /// Presentation file
    file: Option<PathBuf>,
    #[arg(long)]
    preset: Option<String>,
    /// Preset parameter, `name=value`
    #[arg(long = "param", value_parser = parse_pair)]
    params: Vec<(String, String)>,
    /// Coefficient field for presets: Q, GF(p) or Q(x)
    #[arg(long)]
    field: Option<String>,
    /// Central value, `z=value`
    #[arg(long = "omega", value_parser = parse_pair)]
    omega: Vec<(String, String)>,
    /// Central subset: all, none, or a comma list of relation names
    #[arg(long)]
    central: Option<String>,
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long)]
    search_budget: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    format: OutFormat,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include the completion log
    #[arg(long)]
    log: bool,
}

fn parse_pair(s: &str) -> Result<(String, String), String> {
    match s.split_once('=') {
        Some((k, v)) if !k.trim().is_empty() => Ok((k.trim().to_string(), v.trim().to_string())),
        _ => Err(format!("expected name=value, got `{}`", s)),
    }
}

fn split(cmd: Command) -> (&'static str, Opts) {
    match cmd {
        Command::Parse(o) => ("parse", o),
        Command::Centrify(o) => ("centrify", o),
        Command::Zpres(o) => ("zpres", o),
        Command::GsbCheck(o) => ("gsb-check", o),
        Command::Complete(o) => ("complete", o),
        Command::Obstacles(o) => ("obstacles", o),
        Command::PropCheck(o) => ("prop-check", o),
        Command::CentralRelations(o) => ("central-relations", o),
        Command::Specialize(o) => ("specialize", o),
        Command::HopfCheck(o) => ("hopf-check", o),
        Command::Preset(o) => ("preset", o),
        Command::VerifyPaper(o) => ("verify-paper", o),
    }
}

fn run(name: &str, o: Opts) -> Result<i32, CommandError> {
    let source = match &o.file {
        Some(path) => Some(
            std::fs::read_to_string(path)
                .map_err(|e| CommandError::Usage(format!("{}: {}", path.display(), e)))?,
        ),
        None => None,
    };
    let args = CommandArgs {
        source,
        preset: o.preset,
        params: o.params,
        field: o.field,
        omega: o.omega,
        central: o.central,
        max_degree: o.max_degree,
        search_budget: o.search_budget,
        log: o.log,
    };
    let report = run_command(name, &args)?;
    let format = match o.format {
        OutFormat::Text => Format::Text,
        OutFormat::Structured => Format::Structured,
    };
    let rendered = report.render(format);
    match &o.out {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| CommandError::Usage(format!("{}: {}", path.display(), e)))?,
        None => print!("{}", rendered),
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, opts) = split(cli.command);
    let code = match run(name, opts) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
