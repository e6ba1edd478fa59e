use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use lfpc_cli::{parse, print, run, Options, RunMode};

/// Runs a check script over GF(q)((t)). JSON lines go to stdout and a
/// readable summary to stderr. Exit status: 0 when every check passes, 1 when
/// a check fails, 2 on usage or parse errors.
#[derive(Parser, Debug)]
#[command(name = "lfpc", version)]
struct Cli {
    /// Script file; reads standard input when absent or `-`.
    script: Option<PathBuf>,
    /// Depth used by windowed checks and the spectral function.
    #[arg(long, default_value_t = 4)]
    window: i32,
    /// Stop at the first failing check, or run every command.
    #[arg(long, value_enum, default_value_t = RunMode::Strict)]
    mode: RunMode,
    /// Add decimal renderings of computed functions (not exact).
    #[arg(long)]
    approx: bool,
    /// Print the script in canonical form instead of running it.
    #[arg(long)]
    print: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let text = match read_script(&cli.script) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let script = match parse(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("parse error: {e}");
            return ExitCode::from(2);
        }
    };
    if cli.print {
        print!("{}", print(&script));
        return ExitCode::SUCCESS;
    }
    let report = run(&script, Options { window: cli.window, mode: cli.mode, approx: cli.approx });
    for line in &report.json_lines {
        println!("{line}");
    }
    eprint!("{}", report.text);
    ExitCode::from(report.exit_code() as u8)
}

fn read_script(path: &Option<PathBuf>) -> std::io::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p),
        _ => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            Ok(buf)
        }
    }
}
