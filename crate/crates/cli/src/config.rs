//! Flat `key = value` config files.
//!
//! Each entry becomes `--key value` on the command line, inserted before
//! the user's own flags so that those win (repeated flags keep the last
//! value). `command = <name>` picks the subcommand when none is given.

use std::ffi::OsString;
use std::fs;

use crate::report::{config_error, Failure};

pub const COMMANDS: [&str; 7] = [
    "coeffs",
    "cross-section",
    "sweep",
    "integrate",
    "errors",
    "bench",
    "verify",
];

/// Parsed entries in file order; keys normalized to flag spelling.
pub fn parse(text: &str) -> Result<Vec<(String, String)>, Failure> {
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| config_error(format!("config line {}: expected key = value", i + 1)))?;
        let key = k.trim().replace('_', "-");
        let value = v.trim().trim_matches('"').to_string();
        if key.is_empty() || value.is_empty() {
            return Err(config_error(format!("config line {}: empty key or value", i + 1)));
        }
        if key == "config" {
            return Err(config_error("config files cannot include other config files"));
        }
        entries.push((key, value));
    }
    Ok(entries)
}

fn config_path(argv: &[OsString]) -> Option<OsString> {
    let mut it = argv.iter().skip(1);
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = a.to_str().and_then(|s| s.strip_prefix("--config=")) {
            return Some(p.into());
        }
    }
    None
}

/// `argv` with the entries of its `--config` file spliced in.
pub fn expand_args(argv: Vec<OsString>) -> Result<Vec<OsString>, Failure> {
    let Some(path) = config_path(&argv) else {
        return Ok(argv);
    };
    let text = fs::read_to_string(&path).map_err(|e| {
        config_error(format!("cannot read config {}: {e}", path.to_string_lossy()))
    })?;

    let mut command = None;
    let mut flags: Vec<OsString> = Vec::new();
    for (key, value) in parse(&text)? {
        if key == "command" {
            command = Some(value);
        } else {
            flags.push(format!("--{key}").into());
            flags.push(value.into());
        }
    }

    let position = argv
        .iter()
        .position(|a| a.to_str().is_some_and(|s| COMMANDS.contains(&s)));
    let mut out = argv;
    match (position, command) {
        (Some(i), _) => {
            out.splice(i + 1..i + 1, flags);
        }
        (None, Some(cmd)) => {
            let mut head: Vec<OsString> = vec![cmd.into()];
            head.extend(flags);
            out.splice(1..1, head);
        }
        (None, None) => {
            out.splice(1..1, flags);
        }
    }
    Ok(out)
}
