mod cli;
mod commands;
mod genspec;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use cli::{Cli, Command};

/// Error carrying its exit status.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags or arguments: exit 1.
    Usage(String),
    /// Unreadable, malformed or unwritable files: exit 2.
    Input(String),
    /// The computation itself failed: exit 3.
    Compute(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Input(_) => 2,
            Failure::Compute(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Input(m) | Failure::Compute(m) => m,
        }
    }
}

impl From<netimbalance::Error> for Failure {
    fn from(e: netimbalance::Error) -> Self {
        match e {
            netimbalance::Error::Parse { .. } => Failure::Input(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

/// Writes `text` to `path` through a temporary file in the same directory, or
/// to stdout when no path is given.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    let Some(path) = path else {
        let mut stdout = std::io::stdout().lock();
        return stdout
            .write_all(text.as_bytes())
            .and_then(|_| stdout.flush())
            .map_err(|e| Failure::Input(format!("cannot write to stdout: {e}")));
    };
    let fail = |e: std::io::Error| Failure::Input(format!("cannot write {}: {e}", path.display()));
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(fail)?;
    tmp.write_all(text.as_bytes()).map_err(fail)?;
    tmp.persist(path).map_err(|e| fail(e.error))?;
    Ok(())
}

fn config_tokens(path: &Path) -> Result<Vec<OsString>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read config {}: {e}", path.display())))?;
    Ok(text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace)
        .map(OsString::from)
        .collect())
}

/// Replaces each `--config FILE` (or `--config=FILE`) with the file's tokens.
fn splice_config(args: Vec<OsString>) -> Result<Vec<OsString>, Failure> {
    let mut out = Vec::with_capacity(args.len());
    let mut iter = args.into_iter();
    while let Some(arg) = iter.next() {
        let text = arg.to_string_lossy();
        if text == "--config" {
            let path = iter
                .next()
                .ok_or_else(|| Failure::Usage("--config needs a file".into()))?;
            out.extend(config_tokens(Path::new(&path))?);
        } else if let Some(path) = text.strip_prefix("--config=") {
            out.extend(config_tokens(Path::new(path))?);
        } else {
            out.push(arg);
        }
    }
    Ok(out)
}

fn run() -> Result<(), Failure> {
    let args = splice_config(std::env::args_os().collect())?;
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return Ok(());
        }
        Err(e) => {
            let _ = e.print();
            std::process::exit(1);
        }
    };
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(Failure::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Failure::Usage(format!("cannot configure {threads} threads: {e}")))?;
    }
    match &cli.command {
        Command::Compute(a) => commands::compute(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::Optimize(a) => commands::optimize(a),
        Command::PhaseDiagram(a) => commands::phase(a),
        Command::Compare(a) => commands::compare(a),
        Command::Generate(a) => commands::generate(a),
        Command::Zoo(a) => commands::zoo(a),
        Command::Reversal(a) => commands::reversal(a),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("netimb: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_is_spliced_in_place() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("args");
        std::fs::write(&path, "# sweep setup\nsweep --model er  # inline\n--n 50\n").unwrap();
        let args: Vec<OsString> = ["netimb", "--config", path.to_str().unwrap(), "--runs", "3"]
            .iter()
            .map(OsString::from)
            .collect();
        let spliced = splice_config(args).unwrap();
        let want: Vec<OsString> = [
            "netimb", "sweep", "--model", "er", "--n", "50", "--runs", "3",
        ]
        .iter()
        .map(OsString::from)
        .collect();
        assert_eq!(spliced, want);
    }

    #[test]
    fn missing_config_is_an_input_error() {
        let args = vec![
            OsString::from("netimb"),
            OsString::from("--config=/nonexistent/x"),
        ];
        assert_eq!(splice_config(args).unwrap_err().code(), 2);
    }

    #[test]
    fn library_errors_map_to_exit_codes() {
        let parse = netimbalance::Error::Parse {
            line: 3,
            message: "x".into(),
        };
        assert_eq!(Failure::from(parse).code(), 2);
        assert_eq!(Failure::from(netimbalance::Error::NotConnected).code(), 3);
    }
}
