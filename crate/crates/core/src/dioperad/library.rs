//! Presentations shipped with the engine.

use super::presentation::Presentation;
use crate::error::{Error, Result};

const FILES: [(&str, &str); 6] = [
    ("lie", include_str!("../../presentations/lie.pres")),
    ("lie1bi", include_str!("../../presentations/lie1bi.pres")),
    ("liebi", include_str!("../../presentations/liebi.pres")),
    ("tf", include_str!("../../presentations/tf.pres")),
    ("tf_wedge", include_str!("../../presentations/tf_wedge.pres")),
    ("tf_sym", include_str!("../../presentations/tf_sym.pres")),
];

/// Names of the shipped presentations.
pub fn builtin_names() -> Vec<&'static str> {
    FILES.iter().map(|f| f.0).collect()
}

/// Parses a shipped presentation by name.
pub fn builtin(name: &str) -> Result<Presentation> {
    let text = FILES
        .iter()
        .find(|f| f.0 == name)
        .map(|f| f.1)
        .ok_or_else(|| Error::invalid(format!("unknown presentation `{name}`; known: {}", builtin_names().join(", "))))?;
    Presentation::parse(text)
}
