//! Item files: whitespace-separated positive integers, `#` comment lines.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

pub fn parse_items(text: &str, path: Option<&Path>) -> Result<Vec<u64>> {
    let mut items = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        if line.trim_start().starts_with('#') {
            continue;
        }
        for token in line.split_whitespace() {
            match token.parse::<u64>() {
                Ok(v) if v > 0 && v <= i64::MAX as u64 => items.push(v),
                _ => {
                    return Err(Error::Parse {
                        path: path.map(Path::to_path_buf),
                        line: line_no + 1,
                        token: token.to_string(),
                    })
                }
            }
        }
    }
    if items.is_empty() {
        return Err(Error::EmptyFile {
            path: path.map(Path::to_path_buf),
        });
    }
    Ok(items)
}

pub fn load_items_file(path: impl AsRef<Path>) -> Result<Vec<u64>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    parse_items(&text, Some(path))
}

/// One item per line, newline-terminated.
pub fn format_items(items: &[u64]) -> String {
    items.iter().map(|a| format!("{a}\n")).collect()
}
