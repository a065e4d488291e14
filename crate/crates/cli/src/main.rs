use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use finalg::laws::{run_battery, universe_battery};
use finalg_cli::exec::{execute, ExecOptions};
use finalg_cli::report::{
    battery_document, battery_text_report, script_document, script_text_report,
};
use finalg_cli::script::parse_script;

/// Decide properties of finite rings and modules from a small script, or
/// run the built-in law battery.
#[derive(Parser)]
#[command(name = "finalg", version, about)]
struct Args {
    /// Script file to execute (UTF-8).
    script: Option<PathBuf>,

    /// Run the built-in battery of universes instead of a script.
    #[arg(long, conflicts_with = "script")]
    battery: bool,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Re-validate every decision certificate through the engine.
    #[arg(long)]
    recheck: bool,

    /// Carrier size cap for declared rings and modules.
    #[arg(long, default_value_t = finalg::DEFAULT_CARRIER_CAP)]
    cap: usize,

    /// Write the report to a file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("{message}");
            ExitCode::from(2)
        }
    }
}

fn run(args: &Args) -> Result<u8, String> {
    let (exit_status, text, json) = if args.battery {
        let battery = universe_battery();
        let report = run_battery(&battery).map_err(|e| e.to_string())?;
        let exit_status: u8 = if report.failures().is_empty() { 0 } else { 1 };
        let text = battery_text_report(&battery, &report, exit_status as i32);
        let json = battery_document(&battery, &report, exit_status as i32);
        (exit_status, text, json)
    } else {
        let path = args
            .script
            .as_ref()
            .ok_or("either a script file or --battery is required")?;
        let source = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        let script = parse_script(&source).map_err(|e| e.to_string())?;
        let options = ExecOptions {
            cap: args.cap,
            recheck: args.recheck,
        };
        let execution = execute(&script, &options).map_err(|e| e.to_string())?;
        let exit_status: u8 = if execution.any_verify_failed() { 1 } else { 0 };
        let text = script_text_report(&execution, exit_status as i32);
        let json = script_document(&source, &execution, exit_status as i32);
        (exit_status, text, json)
    };

    let rendered = match args.format {
        Format::Text => text,
        Format::Structured => {
            let mut s = serde_json::to_string_pretty(&json).map_err(|e| e.to_string())?;
            s.push('\n');
            s
        }
    };
    match &args.out {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
        None => print!("{rendered}"),
    }
    Ok(exit_status)
}
