use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use kodlib::{batch, parse_payload, parse_request, run, run_payload, Command, Output, Report, RunError, Settings};

/// Kodaira dimensions of manifolds in dimensions 2 to 4, of symplectic
/// 4-manifolds relative to embedded surfaces, and of Lefschetz fibrations.
///
/// Each subcommand reads its JSON payload from FILE, or from standard input
/// when FILE is omitted. `run` reads a full request
/// `{"command": ..., "payload": ..., "options": ...}`.
#[derive(Debug, Parser)]
#[command(name = "kodlib", version)]
struct Cli {
    /// Coefficient bound for the -1 class enumeration on rational models.
    #[arg(long, global = true, env = "KODLIB_BOUND", default_value_t = kodlib::DEFAULT_BOUND)]
    bound: u32,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    /// Record the intermediate exact quantities.
    #[arg(long, global = true)]
    trace: bool,
    /// Evaluate a file of newline-delimited requests.
    #[arg(long, value_name = "FILE")]
    batch: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Cmd>,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Surface of genus g relative to a Q-divisor.
    Dim2 { file: Option<PathBuf> },
    /// 3-manifold from the geometries of its pieces.
    Dim3 { file: Option<PathBuf> },
    /// Symplectic 4-manifold model.
    Dim4 { file: Option<PathBuf> },
    /// 4-manifold relative to an embedded symplectic surface.
    Relative { file: Option<PathBuf> },
    /// Fiber sum of two relative triples.
    Fibersum { file: Option<PathBuf> },
    /// Total space of a Lefschetz fibration.
    Lefschetz { file: Option<PathBuf> },
    /// Seifert fibered 3-manifold.
    Seifert { file: Option<PathBuf> },
    /// Branched cover of a surface.
    Rhurwitz { file: Option<PathBuf> },
    /// Finite cover of a 4-manifold model.
    Cover { file: Option<PathBuf> },
    /// Fiber bundle from base and fiber.
    Bundle { file: Option<PathBuf> },
    /// A full request object.
    Run { file: Option<PathBuf> },
}

impl Cmd {
    fn split(&self) -> (Option<Command>, Option<&Path>) {
        let (c, f) = match self {
            Cmd::Dim2 { file } => (Some(Command::Dim2), file),
            Cmd::Dim3 { file } => (Some(Command::Dim3), file),
            Cmd::Dim4 { file } => (Some(Command::Dim4), file),
            Cmd::Relative { file } => (Some(Command::Relative), file),
            Cmd::Fibersum { file } => (Some(Command::Fibersum), file),
            Cmd::Lefschetz { file } => (Some(Command::Lefschetz), file),
            Cmd::Seifert { file } => (Some(Command::Seifert), file),
            Cmd::Rhurwitz { file } => (Some(Command::Rhurwitz), file),
            Cmd::Cover { file } => (Some(Command::Cover), file),
            Cmd::Bundle { file } => (Some(Command::Bundle), file),
            Cmd::Run { file } => (None, file),
        };
        (c, f.as_deref())
    }
}

fn read_input(path: Option<&Path>) -> Result<String, RunError> {
    match path {
        Some(p) if p != Path::new("-") => fs::read_to_string(p)
            .map_err(|e| RunError::Io { path: p.display().to_string(), message: e.to_string() }),
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| RunError::Io { path: "<stdin>".into(), message: e.to_string() })?;
            Ok(s)
        }
    }
}

/// Evaluates one input; also returns the rendering the request asked for.
fn single(cmd: &Cmd, settings: Settings) -> (Output, Result<Report, RunError>) {
    let (command, path) = cmd.split();
    let text = match read_input(path) {
        Ok(t) => t,
        Err(e) => return (settings.output, Err(e)),
    };
    match command {
        Some(c) => (settings.output, parse_payload(&text).and_then(|p| run_payload(c, &p, settings))),
        None => match parse_request(&text) {
            Ok(r) => (settings.resolve(&r.options).output, run(&r, settings)),
            Err(e) => (settings.output, Err(e)),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let settings = Settings { bound: cli.bound, trace: cli.trace, output: cli.output };
    let mut out = io::stdout().lock();
    if cli.batch.is_some() && cli.command.is_some() {
        eprintln!("kodlib: --batch cannot be combined with a subcommand");
        return ExitCode::from(2);
    }
    if let Some(path) = &cli.batch {
        let text = match read_input(Some(path)) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("kodlib: {e}");
                return ExitCode::from(2);
            }
        };
        for r in batch(&text, settings) {
            let _ = out.write_all(r.render().as_bytes());
        }
        return ExitCode::SUCCESS;
    }
    let Some(cmd) = &cli.command else {
        eprintln!("kodlib: a subcommand or --batch is required (see --help)");
        return ExitCode::from(2);
    };
    let (output, result) = single(cmd, settings);
    match result {
        Ok(r) => {
            let text = match output {
                Output::Json => r.to_json() + "\n",
                Output::Text => r.to_text(),
            };
            let _ = out.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            if output == Output::Json {
                let rec = serde_json::to_value(e.record()).expect("records serialize");
                let _ = writeln!(out, "{}", serde_json::json!({ "error": rec }));
            }
            eprintln!("kodlib: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
