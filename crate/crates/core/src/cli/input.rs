//! Parsing of --weight and --table arguments: a file path, inline JSON,
//! or the shorthand forms.

use std::path::Path;

use serde::de::DeserializeOwned;

use crate::combinatorics::{Table, WeightTuple};

use super::CliError;

fn load(arg: &str) -> Result<(String, String), CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        Ok((text, path.display().to_string()))
    } else {
        Ok((arg.to_string(), "inline argument".to_string()))
    }
}

fn from_json<T: DeserializeOwned>(text: &str, what: &str, source: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| {
        CliError::Usage(format!(
            "malformed {what} JSON in {source} at line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })
}

pub fn parse_weight(arg: &str) -> Result<WeightTuple, CliError> {
    let (text, source) = load(arg)?;
    let text = text.trim();
    if text.starts_with('{') {
        from_json(text, "weight", &source)
    } else {
        WeightTuple::parse_shorthand(text).map_err(|e| CliError::Usage(format!("bad weight {text:?}: {e}")))
    }
}

pub fn parse_table(arg: &str) -> Result<Table, CliError> {
    let (text, source) = load(arg)?;
    let text = text.trim();
    if text.starts_with('{') {
        from_json(text, "table", &source)
    } else {
        Table::parse_shorthand(text).map_err(|e| CliError::Usage(format!("bad table {text:?}: {e}")))
    }
}
