//! Merge a flat TOML job file into argv. File entries are inserted right
//! after the subcommand, so flags given on the command line come later and
//! win.

use std::ffi::OsString;
use std::path::Path;

const VALUED_GLOBALS: [&str; 2] = ["--config", "--output"];

fn config_path(args: &[OsString]) -> Option<String> {
    let mut it = args.iter().skip(1);
    while let Some(a) = it.next() {
        let a = a.to_string_lossy();
        if a == "--config" {
            return it.next().map(|v| v.to_string_lossy().into_owned());
        }
        if let Some(v) = a.strip_prefix("--config=") {
            return Some(v.to_string());
        }
    }
    None
}

/// Index of the subcommand token in `args`.
fn subcommand_index(args: &[OsString]) -> Option<usize> {
    let mut i = 1;
    while i < args.len() {
        let a = args[i].to_string_lossy();
        if VALUED_GLOBALS.contains(&a.as_ref()) {
            i += 2;
            continue;
        }
        if !a.starts_with('-') {
            return Some(i);
        }
        i += 1;
    }
    None
}

fn value_to_arg(key: &str, v: &toml::Value) -> Result<String, String> {
    Ok(match v {
        toml::Value::String(s) => s.clone(),
        toml::Value::Integer(i) => i.to_string(),
        toml::Value::Float(f) => format!("{f:e}"),
        toml::Value::Boolean(b) => b.to_string(),
        toml::Value::Array(items) => items
            .iter()
            .map(|x| value_to_arg(key, x))
            .collect::<Result<Vec<_>, _>>()?
            .join(","),
        _ => return Err(format!("config field `{key}`: nested tables are not supported")),
    })
}

pub fn merge(args: Vec<OsString>) -> Result<Vec<OsString>, String> {
    let Some(path) = config_path(&args) else { return Ok(args) };
    let text = std::fs::read_to_string(Path::new(&path)).map_err(|e| format!("cannot read config `{path}`: {e}"))?;
    let table: toml::Table = text.parse().map_err(|e| format!("malformed config `{path}`: {e}"))?;
    let mut command = None;
    let mut extra = Vec::new();
    for (key, value) in &table {
        if key == "command" {
            command = Some(value_to_arg(key, value)?);
            continue;
        }
        extra.push(OsString::from(format!("--{}", key.replace('_', "-"))));
        extra.push(OsString::from(value_to_arg(key, value)?));
    }
    let mut out = args.clone();
    match subcommand_index(&args) {
        Some(i) => {
            if let Some(c) = &command {
                if args[i].to_string_lossy() != c.as_str() {
                    return Err(format!(
                        "config field `command`: file says `{c}` but the command line says `{}`",
                        args[i].to_string_lossy()
                    ));
                }
            }
            out.splice(i + 1..i + 1, extra);
        }
        None => {
            let c = command.ok_or("config field `command`: missing and no subcommand given")?;
            out.push(OsString::from(c));
            out.extend(extra);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn os(v: &[&str]) -> Vec<OsString> {
        v.iter().map(OsString::from).collect()
    }

    #[test]
    fn finds_subcommand_after_globals() {
        assert_eq!(subcommand_index(&os(&["wcs", "--config", "a.toml", "ypq", "--p", "7"])), Some(3));
        assert_eq!(subcommand_index(&os(&["wcs", "--output", "x", "--config", "a"])), None);
    }

    #[test]
    fn arrays_become_lists() {
        let v: toml::Value = toml::Value::Array(vec![toml::Value::Integer(2), toml::Value::Integer(4)]);
        assert_eq!(value_to_arg("coeffs", &v).unwrap(), "2,4");
    }
}
