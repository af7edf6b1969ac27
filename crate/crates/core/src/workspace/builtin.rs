use super::build::Workspace;
use crate::error::{Error, Result};

const BUILTINS: [(&str, &str); 2] = [
    ("counterexample", include_str!("builtin/counterexample.json")),
    ("kappa", include_str!("builtin/kappa.json")),
];

pub fn builtin_names() -> impl Iterator<Item = &'static str> {
    BUILTINS.iter().map(|(n, _)| *n)
}

/// A compiled-in workspace by name.
pub fn builtin(name: &str) -> Result<Workspace> {
    let (_, text) = BUILTINS
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Reference(format!("builtin:{name}")))?;
    Workspace::parse(text)
}
