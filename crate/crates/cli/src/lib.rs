//! Document-driven command line front end.
//!
//! A run reads one JSON document, executes one command against it and
//! prints one JSON value. Exit status: 0 on success, 1 for usage, syntax,
//! schema or reference errors, 2 when a mathematical precondition fails,
//! 3 when the request is unsupported (an infinite field, or beyond the
//! enumeration bound).

pub mod commands;
pub mod document;
pub mod error;
pub mod render;

use std::ffi::OsString;

use clap::Parser;
use serde_json::{Map, Value};

use canrel_core::Field;
pub use commands::{Command, Invocation};
pub use document::{parse_document, AnyDocument, Document};
pub use error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// `args` includes the program name, as with `std::env::args_os`.
pub fn run_command<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let inv = match Invocation::try_parse_from(args) {
        Ok(inv) => inv,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: 1,
                }
            } else {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code: 0,
                }
            };
        }
    };
    match run(&inv) {
        Ok(stdout) => Outcome {
            stdout,
            stderr: String::new(),
            code: 0,
        },
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("canrel: {e}\n"),
            code: e.exit_code(),
        },
    }
}

pub fn run(inv: &Invocation) -> Result<String, CliError> {
    commands::check_options(inv)?;
    let text = std::fs::read_to_string(&inv.doc).map_err(|e| CliError::Io(format!("{}: {e}", inv.doc.display())))?;
    match parse_document(&text)? {
        AnyDocument::Rational { mut doc, families } => {
            if inv.command == Command::ClosureLimit {
                if inv.name.is_some() {
                    return Err(not_storable(inv));
                }
                return Ok(render::to_text(&commands::closure_limit(&doc, &families, inv)?));
            }
            let snapshot = doc.clone();
            let check_family = |name: &str| {
                families
                    .get(name)
                    .map(|f| commands::check_family(&snapshot, name, f))
            };
            let extras = commands::Extras {
                family_count: families.len(),
                check_family: &check_family,
            };
            let out = commands::execute(&doc, inv, &extras)?;
            let taken = inv.name.as_ref().is_some_and(|n| families.contains_key(n));
            finish(&mut doc, out, inv, taken, |d| render::rational_document(d, &families))
        }
        AnyDocument::Prime { mut doc } => {
            let out = commands::execute(&doc, inv, &commands::Extras::none())?;
            finish(&mut doc, out, inv, false, render::document)
        }
    }
}

fn not_storable(inv: &Invocation) -> CliError {
    CliError::Usage(format!("{} has no result that --name can store", inv.command.name()))
}

fn finish<F: Field>(
    doc: &mut Document<F>,
    out: commands::Output<F>,
    inv: &Invocation,
    name_taken_elsewhere: bool,
    render_doc: impl Fn(&Document<F>) -> Map<String, Value>,
) -> Result<String, CliError> {
    let Some(name) = &inv.name else {
        return Ok(render::to_text(&out.value));
    };
    let stored = out.stored.ok_or_else(|| not_storable(inv))?;
    if name_taken_elsewhere || doc.has_name(name) {
        return Err(CliError::Usage(format!("the document already has an object named '{name}'")));
    }
    stored.insert(doc, name);
    Ok(render::to_text(&Value::Object(render_doc(doc))))
}

/// The normalized form of a document, as `--name` would print it.
pub fn normalize(text: &str) -> Result<String, CliError> {
    let top = match parse_document(text)? {
        AnyDocument::Rational { doc, families } => render::rational_document(&doc, &families),
        AnyDocument::Prime { doc } => render::document(&doc),
    };
    Ok(render::to_text(&Value::Object(top)))
}
