use std::collections::BTreeSet;
use std::fmt::Display;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use serde_json::{json, Value};

use hypercut::{cost_vector, Cut, Error, Hypergraph};

use crate::args::Format;

/// Writes one line to stdout; a closed pipe ends the output quietly.
pub fn line(s: impl Display) {
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{s}").is_err() {
        std::process::exit(0);
    }
}

pub fn join<T: Display>(xs: &[T]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

pub fn ids(c: &Cut) -> String {
    join(c.edge_ids())
}

pub fn cut_json(g: &Hypergraph, c: &Cut) -> Value {
    json!({"edges": c.edge_ids(), "costs": cost_vector(g, c).expect("cut drawn from this instance")})
}

fn cut_line(g: &Hypergraph, c: &Cut) -> String {
    format!(
        "edges={} costs={}",
        ids(c),
        join(&cost_vector(g, c).expect("cut drawn from this instance"))
    )
}

pub struct Out {
    format: Format,
}

impl Out {
    pub fn new(format: Format) -> Self {
        Out { format }
    }

    /// Prints `value` in json mode and `text` otherwise.
    pub fn record(&self, value: &Value, text: &str) {
        match self.format {
            Format::Json => line(value),
            Format::Text => line(text),
        }
    }

    pub fn cut(&self, g: &Hypergraph, c: &Cut, side: Option<&[bool]>) {
        let side: Option<Vec<usize>> = side.map(|s| (0..s.len()).filter(|&v| s[v]).collect());
        let mut v = cut_json(g, c);
        let text = match &side {
            Some(s) => {
                let proper = !s.is_empty() && s.len() < g.n();
                v["side"] = json!(s);
                v["proper"] = json!(proper);
                format!("{} side={} proper={proper}", cut_line(g, c), join(s))
            }
            None => cut_line(g, c),
        };
        self.record(&v, &text);
    }

    pub fn cuts(&self, g: &Hypergraph, set: &BTreeSet<Cut>) {
        match self.format {
            Format::Json => {
                let cuts: Vec<Value> = set.iter().map(|c| cut_json(g, c)).collect();
                line(json!({"count": set.len(), "cuts": cuts}));
            }
            Format::Text => {
                line(format!("count={}", set.len()));
                for c in set {
                    line(cut_line(g, c));
                }
            }
        }
    }

    pub fn optimum(&self, g: &Hypergraph, value: u64, set: &BTreeSet<Cut>) {
        match self.format {
            Format::Json => {
                let cuts: Vec<Value> = set.iter().map(|c| cut_json(g, c)).collect();
                line(json!({"value": value, "count": set.len(), "cuts": cuts}));
            }
            Format::Text => {
                line(format!("value={value} count={}", set.len()));
                for c in set {
                    line(cut_line(g, c));
                }
            }
        }
    }
}

/// A failed command: printed to stderr as `{"error": {...}}`.
#[derive(Debug)]
pub struct Failure {
    kind: &'static str,
    message: String,
    code: u8,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            kind: "usage",
            message: message.into(),
            code: 2,
        }
    }

    pub fn io(path: &Path, e: std::io::Error) -> Self {
        Failure {
            kind: "io",
            message: format!("{}: {e}", path.display()),
            code: 2,
        }
    }

    pub fn emit(&self) -> ExitCode {
        eprintln!(
            "{}",
            json!({"error": {"kind": self.kind, "message": self.message}})
        );
        ExitCode::from(self.code)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Infeasible(_)) {
            3
        } else {
            2
        };
        Failure {
            kind: e.kind(),
            message: e.to_string(),
            code,
        }
    }
}

pub fn clap_failure(e: clap::Error) -> ExitCode {
    use clap::error::ErrorKind;
    match e.kind() {
        ErrorKind::DisplayHelp
        | ErrorKind::DisplayVersion
        | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
            let _ = e.print();
            if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        _ => Failure::usage(e.render().to_string().trim().to_string()).emit(),
    }
}
