//! `--config FILE`: a JSON object mirroring long flags, spliced into argv.

use std::ffi::OsString;

use anyhow::{bail, Context};
use serde_json::Value;

/// Removes `--config FILE` from `args` and appends one `--key value` group per
/// config entry whose flag is not already present. Keys may use `_` or `-`.
pub fn expand_args(mut args: Vec<OsString>) -> anyhow::Result<Vec<OsString>> {
    let Some(pos) = args.iter().position(|a| a == "--config" || a.to_string_lossy().starts_with("--config=")) else {
        return Ok(args);
    };
    let flag = args.remove(pos).to_string_lossy().into_owned();
    let path = match flag.strip_prefix("--config=") {
        Some(p) => p.to_string(),
        None if pos < args.len() => args.remove(pos).to_string_lossy().into_owned(),
        None => bail!("--config needs a file"),
    };
    let text = std::fs::read_to_string(&path).with_context(|| format!("reading config {path}"))?;
    let Value::Object(map) = serde_json::from_str(&text).with_context(|| format!("parsing config {path}"))? else {
        bail!("config {path} must be a JSON object");
    };
    let present: Vec<String> = args
        .iter()
        .filter_map(|a| a.to_str())
        .filter(|a| a.starts_with("--"))
        .map(|a| a.split('=').next().unwrap().to_string())
        .collect();
    for (key, value) in map {
        let flag = format!("--{}", key.replace('_', "-"));
        if present.contains(&flag) {
            continue;
        }
        match value {
            Value::Null | Value::Bool(false) => {}
            Value::Bool(true) => args.push(flag.into()),
            Value::Array(items) => {
                args.push(flag.into());
                for item in items {
                    args.push(scalar(&key, item)?.into());
                }
            }
            other => {
                args.push(flag.into());
                args.push(scalar(&key, other)?.into());
            }
        }
    }
    Ok(args)
}

fn scalar(key: &str, v: Value) -> anyhow::Result<String> {
    match v {
        Value::String(s) => Ok(s),
        Value::Number(n) => Ok(n.to_string()),
        Value::Bool(b) => Ok(b.to_string()),
        _ => bail!("config key {key}: expected a string, number, or boolean"),
    }
}
