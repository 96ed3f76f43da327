use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use vmlab::{Error, Graph};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
    Io(PathBuf, std::io::Error),
}

impl CliError {
    /// A broken guarantee counts as a counterexample; everything else is a
    /// usage, precondition or capacity problem.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::InternalInvariant(_)) => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

pub fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

pub fn read_graph(path: &Path) -> CliResult<Graph> {
    Ok(Graph::from_text(&read(path)?)?)
}

/// Writes to `out` when given, stdout otherwise.
pub fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn parse_num<T: std::str::FromStr>(what: &str, s: &str) -> CliResult<T> {
    s.parse()
        .map_err(|_| usage(format!("{what}: expected a number, got {s:?}")))
}

/// `<out>.labels` next to a generated graph.
pub fn sidecar(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_os_string();
    name.push(".labels");
    PathBuf::from(name)
}
