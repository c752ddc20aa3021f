//! Input resolution and the error type shared by all commands.

use std::fmt::{Debug, Display};
use std::path::Path;

use pocset::chain::ChainFamily;
use pocset::cubing::CubeComplex;
use pocset::euclid::WallGeometry;
use pocset::fixtures;
use pocset::io::{self, Input};
use pocset::poc::FinitePocSet;
use serde_json::{json, Value};

pub const SCHEMA: &str = "pocset-cli/1";

/// A failed run: usage errors exit 2, domain errors exit 1.
#[derive(Debug)]
pub enum Fail {
    Usage(String),
    Domain { code: String, message: String, witness: String },
}

impl Fail {
    pub fn exit_code(&self) -> i32 {
        match self {
            Fail::Usage(_) => 2,
            Fail::Domain { .. } => 1,
        }
    }

    /// The machine-readable diagnostic written to stderr.
    pub fn diagnostic(&self) -> Value {
        match self {
            Fail::Usage(message) => json!({
                "schema": SCHEMA,
                "error": { "kind": "usage", "code": "Usage", "message": message },
            }),
            Fail::Domain { code, message, witness } => json!({
                "schema": SCHEMA,
                "error": { "kind": "domain", "code": code, "message": message, "witness": witness },
            }),
        }
    }

    pub fn domain_code(code: &str, message: impl Into<String>) -> Fail {
        Fail::Domain {
            code: code.to_string(),
            message: message.into(),
            witness: String::new(),
        }
    }
}

/// Wrapper variants that only forward another module's error.
const WRAPPERS: [&str; 5] = ["Poc", "Euclid", "Cubing", "Chain", "Shadow"];

/// Splits an error's `Debug` form into the innermost variant name (the
/// code) and its payload (the witness).
fn code_and_witness(debug: &str) -> (String, String) {
    let mut s = debug.trim();
    loop {
        let unwrapped = WRAPPERS.iter().find_map(|w| {
            s.strip_prefix(w)
                .and_then(|r| r.strip_prefix('('))
                .and_then(|r| r.strip_suffix(')'))
        });
        match unwrapped {
            Some(inner) => s = inner.trim(),
            None => break,
        }
    }
    let end = s.find(|c: char| !(c.is_alphanumeric() || c == '_')).unwrap_or(s.len());
    let (code, rest) = s.split_at(end);
    let rest = rest.trim();
    let witness = rest
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| rest.strip_prefix('{').and_then(|r| r.strip_suffix('}')))
        .unwrap_or(rest)
        .trim();
    (code.to_string(), witness.to_string())
}

/// Converts any module error into a domain failure.
pub fn domain<E: Debug + Display>(e: E) -> Fail {
    let (code, witness) = code_and_witness(&format!("{e:?}"));
    Fail::Domain {
        code,
        message: e.to_string(),
        witness,
    }
}

/// The built-in copies of the shipped fixtures, used when no file exists.
fn builtin(name: &str) -> Option<String> {
    let json = match name {
        "FIX-LINE3" => io::pocset_to_json(&fixtures::line3()),
        "FIX-SQ" => io::pocset_to_json(&fixtures::square()),
        "FIX-TRIPOD" => io::pocset_to_json(&fixtures::tripod()),
        "FIX-Z2" => io::chain_family_to_json(&fixtures::z2()),
        "FIX-HEX" => io::chain_family_to_json(&fixtures::hex()),
        "FIX-LINE1" => io::chain_family_to_json(&fixtures::single_family()),
        _ => {
            let d: usize = name.strip_prefix("FIX-Z")?.parse().ok()?;
            if !(1..=4).contains(&d) {
                return None;
            }
            io::chain_family_to_json(&fixtures::zd(d))
        }
    };
    Some(json)
}

/// Reads `arg`, `arg.json`, or else the built-in fixture named by the
/// file name of `arg`.
pub fn read_input(arg: &str) -> Result<String, Fail> {
    for candidate in [arg.to_string(), format!("{arg}.json")] {
        let path = Path::new(&candidate);
        if path.is_file() {
            return std::fs::read_to_string(path).map_err(|e| Fail::Usage(format!("cannot read {candidate}: {e}")));
        }
    }
    let name = Path::new(arg)
        .file_name()
        .and_then(|n| n.to_str())
        .map(|n| n.trim_end_matches(".json"))
        .unwrap_or(arg);
    builtin(name).ok_or_else(|| Fail::Usage(format!("no such input file: {arg}")))
}

pub fn load(arg: &str) -> Result<Input, Fail> {
    io::load_any(&read_input(arg)?).map_err(domain)
}

pub fn load_pocset(arg: &str) -> Result<FinitePocSet, Fail> {
    match load(arg)? {
        Input::PocSet(p) => Ok(p),
        _ => Err(Fail::Usage(format!("{arg} is not a poc-set file"))),
    }
}

pub fn load_chains(arg: &str) -> Result<ChainFamily, Fail> {
    match load(arg)? {
        Input::Chains(c) => Ok(c),
        _ => Err(Fail::Usage(format!("{arg} is not a chain-family file"))),
    }
}

pub fn load_geometry(arg: &str) -> Result<(ChainFamily, WallGeometry), Fail> {
    let family = load_chains(arg)?;
    let geometry = family
        .geometry
        .clone()
        .ok_or_else(|| Fail::domain_code("NoGeometry", format!("{arg} has no wall geometry")))?;
    Ok((family, geometry))
}

pub fn load_pocset_or_cubing(arg: &str) -> Result<Result<FinitePocSet, CubeComplex>, Fail> {
    match load(arg)? {
        Input::PocSet(p) => Ok(Ok(p)),
        Input::Cubing(c) => Ok(Err(c)),
        Input::Chains(_) => Err(Fail::Usage(format!("{arg} is a chain family; expected a poc-set or cube complex"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_unwrap_forwarding_variants() {
        assert_eq!(
            code_and_witness("Poc(NotAFilterBase(H(0), H(1)))"),
            ("NotAFilterBase".into(), "H(0), H(1)".into())
        );
        assert_eq!(
            code_and_witness("WindowTooSmall { window: 3, witness: [1] }"),
            ("WindowTooSmall".into(), "window: 3, witness: [1]".into())
        );
        assert_eq!(code_and_witness("UnknownFormat"), ("UnknownFormat".into(), String::new()));
    }

    #[test]
    fn builtins_cover_the_fixtures() {
        for n in ["FIX-LINE3", "FIX-SQ", "FIX-TRIPOD", "FIX-Z1", "FIX-Z2", "FIX-Z4", "FIX-HEX", "FIX-LINE1"] {
            assert!(builtin(n).is_some(), "{n}");
        }
        assert!(builtin("FIX-Z5").is_none());
        assert!(read_input("no/such/dir/FIX-HEX").is_ok());
        assert!(matches!(read_input("no/such/file"), Err(Fail::Usage(_))));
    }
}
