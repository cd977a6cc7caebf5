//! Output envelope and exit codes.

use anyhow::Error;
use serde::Serialize;
use serde_json::Value;

use metadual_core::arith::ArithError;
use metadual_core::cohomology::CohomologyError;
use metadual_core::cover::CoverError;
use metadual_core::lattice::LatticeError;
use metadual_core::rootdata::RootDataError;
use metadual_core::InputError;

pub const OK: u8 = 0;
pub const PARSE: u8 = 2;
pub const INVARIANT: u8 = 3;
pub const BOUND: u8 = 4;

/// Bumped when a payload changes shape.
pub const SCHEMA_VERSION: u32 = 1;

/// Bad command-line values that clap cannot catch.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> Error {
    UsageError(msg.into()).into()
}

/// What a subcommand produced. `failure` marks a well-formed result that
/// still violates an invariant (an unaligned map, an invalid datum).
pub struct Outcome {
    pub payload: Value,
    pub text: String,
    pub warnings: Vec<String>,
    pub failure: Option<(u8, String)>,
}

impl Outcome {
    pub fn new(payload: impl Serialize, text: impl Into<String>) -> Self {
        Outcome {
            payload: serde_json::to_value(payload).expect("payloads serialize"),
            text: text.into(),
            warnings: Vec::new(),
            failure: None,
        }
    }

    pub fn warn(mut self, w: impl Into<String>) -> Self {
        self.warnings.push(w.into());
        self
    }

    pub fn fail(mut self, code: u8, msg: impl Into<String>) -> Self {
        self.failure = Some((code, msg.into()));
        self
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    schema_version: u32,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    code: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    payload: Value,
    warnings: Vec<String>,
}

/// Prints the result and returns the exit code.
pub fn emit(command: &str, result: anyhow::Result<Outcome>, json: bool) -> u8 {
    let (outcome, code, error) = match result {
        Ok(o) => {
            let (code, error) = match &o.failure {
                Some((c, m)) => (*c, Some(m.clone())),
                None => (OK, None),
            };
            (Some(o), code, error)
        }
        Err(e) => (None, exit_code(&e), Some(format!("{e:#}"))),
    };
    if json {
        let env = Envelope {
            command,
            schema_version: SCHEMA_VERSION,
            status: if code == OK { "ok" } else { "error" },
            code: (code != OK).then_some(code),
            error: error.clone(),
            payload: outcome.as_ref().map_or(Value::Null, |o| o.payload.clone()),
            warnings: outcome.as_ref().map_or_else(Vec::new, |o| o.warnings.clone()),
        };
        println!("{}", serde_json::to_string_pretty(&env).expect("envelope serializes"));
    } else if let Some(o) = &outcome {
        print!("{}", o.text);
        if !o.text.ends_with('\n') && !o.text.is_empty() {
            println!();
        }
        for w in &o.warnings {
            eprintln!("warning: {w}");
        }
    }
    if let Some(e) = error {
        eprintln!("error: {e}");
    }
    code
}

fn lattice_code(_: &LatticeError) -> u8 {
    INVARIANT
}

fn rootdata_code(e: &RootDataError) -> u8 {
    match e {
        RootDataError::BoundExceeded(_) => BOUND,
        RootDataError::UnknownBuilder(_) => PARSE,
        RootDataError::Lattice(l) => lattice_code(l),
        _ => INVARIANT,
    }
}

fn cover_code(e: &CoverError) -> u8 {
    match e {
        CoverError::RootData(r) => rootdata_code(r),
        CoverError::Lattice(l) => lattice_code(l),
        _ => INVARIANT,
    }
}

fn arith_code(e: &ArithError) -> u8 {
    match e {
        ArithError::Precision(_) | ArithError::Overflow(_) => BOUND,
        ArithError::BadPlace(_) | ArithError::NotPrime(_) | ArithError::Zero => PARSE,
        _ => INVARIANT,
    }
}

fn cohomology_code(e: &CohomologyError) -> u8 {
    match e {
        CohomologyError::BoundExceeded(_) => BOUND,
        CohomologyError::Arith(a) => arith_code(a),
        CohomologyError::Cover(c) => cover_code(c),
        _ => INVARIANT,
    }
}

pub fn exit_code(e: &Error) -> u8 {
    for cause in e.chain() {
        if cause.is::<UsageError>() || cause.is::<serde_json::Error>() || cause.is::<std::io::Error>() {
            return PARSE;
        }
        if let Some(i) = cause.downcast_ref::<InputError>() {
            return match i {
                InputError::Malformed(_) | InputError::Json(_) => PARSE,
                InputError::RootData(r) => rootdata_code(r),
                InputError::Cover(c) => cover_code(c),
            };
        }
        if let Some(c) = cause.downcast_ref::<CohomologyError>() {
            return cohomology_code(c);
        }
        if let Some(c) = cause.downcast_ref::<CoverError>() {
            return cover_code(c);
        }
        if let Some(r) = cause.downcast_ref::<RootDataError>() {
            return rootdata_code(r);
        }
        if let Some(a) = cause.downcast_ref::<ArithError>() {
            return arith_code(a);
        }
        if let Some(l) = cause.downcast_ref::<LatticeError>() {
            return lattice_code(l);
        }
    }
    INVARIANT
}
