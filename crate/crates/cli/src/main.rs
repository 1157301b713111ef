mod core_cmd;
mod planar_cmd;
mod report;
mod thermo_cmd;
mod tm_cmd;
mod tower_cmd;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use report::{Failure, Report};

/// Word towers, Turing machine tiles, planar occupancy and transfer-matrix thermodynamics.
#[derive(Parser, Debug)]
#[command(name = "zerotemp", version)]
struct Cli {
    /// Write the main output here instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for every randomized step
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    group: Group,
}

#[derive(Subcommand, Debug)]
enum Group {
    /// Hierarchical word towers
    #[command(subcommand)]
    Tower(tower_cmd::TowerCmd),
    /// Turing machines, diagrams and tiles
    #[command(subcommand)]
    Tm(tm_cmd::TmCmd),
    /// Subshift languages from forbidden-pattern files
    #[command(subcommand)]
    Core(core_cmd::CoreCmd),
    /// Two-dimensional mosaics and lifts
    #[command(subcommand)]
    Planar(planar_cmd::PlanarCmd),
    /// Pressure sweeps, torus Gibbs states and entropy
    #[command(subcommand)]
    Thermo(thermo_cmd::ThermoCmd),
}

fn dispatch(cli: &Cli) -> Result<Report, Failure> {
    match &cli.group {
        Group::Tower(c) => tower_cmd::run(c),
        Group::Tm(c) => tm_cmd::run(c),
        Group::Core(c) => core_cmd::run(c),
        Group::Planar(c) => planar_cmd::run(c, cli.seed),
        Group::Thermo(c) => thermo_cmd::run(c),
    }
}

fn emit(cli: &Cli, r: &Report) -> std::io::Result<()> {
    let mut stdout = std::io::stdout().lock();
    match &cli.out {
        Some(path) => {
            std::fs::write(path, &r.payload)?;
            writeln!(stdout, "wrote {}", path.display())?;
        }
        None => stdout.write_all(r.payload.as_bytes())?,
    }
    for n in &r.notes {
        writeln!(stdout, "{n}")?;
    }
    writeln!(stdout, "STATUS: {}", if r.ok { "OK" } else { "FAIL" })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match dispatch(&cli) {
        Ok(r) => match emit(&cli, &r) {
            Ok(()) => ExitCode::from(if r.ok { 0 } else { 2 }),
            // a closed pipe (`| head`) is the reader's choice, not an error
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {
                ExitCode::from(if r.ok { 0 } else { 2 })
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        Err(f) => {
            eprintln!("error: {}", f.message());
            if let Failure::Usage(_) = f {
                eprintln!("run with --help for usage");
            } else {
                println!("STATUS: FAIL");
            }
            ExitCode::from(f.code())
        }
    }
}
