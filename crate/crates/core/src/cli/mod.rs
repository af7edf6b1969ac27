//! The `convkit` command line: argument parsing, workspace selection and
//! reports.

mod commands;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::workspace::{builtin, Workspace};

#[derive(Parser, Debug)]
#[command(name = "convkit", version, about = "Exact convolution homotopy Lie algebras over the rationals")]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Axiom and invariant suites on every object of a workspace.
    Verify {
        #[command(flatten)]
        source: Source,
        /// Also run bijection, strictness and decomposition-identity suites.
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        limits: Limits,
    },
    /// Print the bracket tables of convolution algebras.
    Brackets {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        pick: Pick,
        #[command(flatten)]
        limits: Limits,
    },
    /// Maurer–Cartan residual of a map `C → A`.
    Mc {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        map: String,
        #[arg(long)]
        twisting: Option<String>,
    },
    /// Round trips through coalgebra and algebra morphisms for one map.
    Bijection {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        map: String,
        #[arg(long)]
        twisting: Option<String>,
        #[command(flatten)]
        limits: Limits,
    },
    /// Round trips for every Maurer–Cartan map of a workspace.
    McRoundtrip {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        limits: Limits,
    },
    /// Strictness of the right and left actions on convolution algebras.
    Strictness {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        pick: Pick,
        #[command(flatten)]
        limits: Limits,
    },
    /// Both composite orders of the actions of `Φ` and `Ψ`.
    Compose {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        actions: Actions,
    },
    /// Compare the composites after precomposition with the counit.
    Equalizer {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        actions: Actions,
        #[command(flatten)]
        limits: Limits,
    },
    /// The built-in planar counterexample.
    Counterexample,
    /// Decomposition identity battery on coalgebras.
    Decomposition {
        /// Workspace whose coalgebras are checked; seeded random cofree
        /// coalgebras when omitted.
        #[arg(value_name = "SOURCE")]
        source: Option<String>,
        #[command(flatten)]
        limits: Limits,
    },
    /// Print a workspace in canonical JSON.
    Export {
        #[command(flatten)]
        source: Source,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Source {
    /// A workspace file, or `builtin:NAME` (`counterexample`, `kappa`).
    #[arg(value_name = "SOURCE")]
    pub source: String,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Pick {
    #[arg(long)]
    pub twisting: Option<String>,
    #[arg(long)]
    pub coalgebra: Option<String>,
    #[arg(long)]
    pub algebra: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct Actions {
    #[arg(long, default_value = "phi")]
    pub phi: String,
    #[arg(long, default_value = "psi")]
    pub psi: String,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Limits {
    #[arg(long, default_value_t = 4)]
    pub max_arity: usize,
    /// Weight of auxiliary bar and cobar constructions.
    #[arg(long, default_value_t = 3)]
    pub max_weight: usize,
}

/// Outcome of one command.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub pass: bool,
    pub lines: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

impl Report {
    fn new(command: &str) -> Self {
        Report { command: command.into(), pass: true, ..Default::default() }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    /// Records a failure; the first one is kept as the headline.
    fn fail(&mut self, s: impl Into<String>) {
        let s = s.into();
        self.lines.push(format!("FAIL {s}"));
        if self.pass {
            self.pass = false;
            self.failure = Some(s);
        }
    }

    fn check(&mut self, ok: bool, s: impl Into<String>) {
        if ok {
            self.line(format!("ok {}", s.into()));
        } else {
            self.fail(s);
        }
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            return serde_json::to_string_pretty(self).expect("reports serialize") + "\n";
        }
        let mut out: String = self.lines.iter().map(|l| format!("{l}\n")).collect();
        if let Some(f) = &self.failure {
            out.push_str(&format!("first failure: {f}\n"));
        }
        out
    }
}

impl Cli {
    /// Parses an argument list whose first entry is the program name.
    pub fn try_parse_from_args<I, T>(args: I) -> std::result::Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        Cli::try_parse_from(args)
    }
}

pub fn open(source: &str) -> Result<Workspace> {
    match source.strip_prefix("builtin:") {
        Some(name) => builtin(name),
        None => Workspace::load(source),
    }
}

pub fn run(cli: &Cli) -> Result<Report> {
    commands::dispatch(&cli.command)
}

/// Parses arguments, runs, prints, and returns the exit code: 0 when every
/// check passes, 1 on a failed check, 2 on an error.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.json));
            if report.pass { 0 } else { 1 }
        }
        Err(e) => {
            if cli.json {
                let v = serde_json::json!({ "pass": false, "error": e.to_string() });
                println!("{}", serde_json::to_string_pretty(&v).expect("json"));
            } else {
                eprintln!("error: {e}");
            }
            2
        }
    }
}

pub(crate) fn pick<'a, T>(section: &'a std::collections::BTreeMap<String, T>, name: Option<&str>, what: &str) -> Result<Vec<(&'a String, &'a T)>> {
    match name {
        Some(n) => section
            .get_key_value(n)
            .map(|kv| vec![kv])
            .ok_or_else(|| Error::Reference(n.to_string())),
        None if section.is_empty() => Err(Error::Invalid(format!("the workspace has no {what}"))),
        None => Ok(section.iter().collect()),
    }
}
