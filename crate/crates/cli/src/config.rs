//! `key=value` config files, spliced in ahead of the command-line flags so flags win.

use std::collections::BTreeSet;
use std::fs;

use clap::CommandFactory;

use crate::cli::Cli;

/// Reads `path` into `(key, value)` pairs; `#` starts a comment.
pub fn read(path: &str) -> Result<Vec<(String, String)>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read config {path}: {e}"))?;
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("{path}:{}: expected key=value, got {line:?}", i + 1))?;
        out.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(out)
}

/// Long flags accepted by a subcommand.
fn flags_of(subcommand: &str) -> BTreeSet<String> {
    Cli::command()
        .find_subcommand(subcommand)
        .map(|c| c.get_arguments().filter_map(|a| a.get_long().map(str::to_string)).collect())
        .unwrap_or_default()
}

/// Rewrites `args` so config entries precede the user's own flags for the chosen subcommand.
/// Keys another subcommand understands are skipped; keys none understands are an error.
pub fn splice(args: Vec<String>) -> Result<Vec<String>, String> {
    let Some(pos) = args.iter().position(|a| a == "--config" || a.starts_with("--config=")) else {
        return Ok(args);
    };
    let mut args = args;
    let path = if let Some(p) = args[pos].strip_prefix("--config=") {
        let p = p.to_string();
        args.remove(pos);
        p
    } else {
        if pos + 1 >= args.len() {
            return Err("--config needs a file".into());
        }
        let p = args.remove(pos + 1);
        args.remove(pos);
        p
    };
    let entries = read(&path)?;
    let names: Vec<String> = Cli::command().get_subcommands().map(|c| c.get_name().to_string()).collect();
    let Some(sub_pos) = args.iter().position(|a| names.contains(a)) else {
        return Ok(args);
    };
    let accepted = flags_of(&args[sub_pos]);
    let known: BTreeSet<String> = names.iter().flat_map(|n| flags_of(n)).collect();
    let mut injected = Vec::new();
    for (k, v) in entries {
        if accepted.contains(&k) {
            injected.push(format!("--{k}={v}"));
        } else if !known.contains(&k) {
            return Err(format!("unknown config key {k:?}"));
        }
    }
    args.splice(sub_pos + 1..sub_pos + 1, injected);
    Ok(args)
}
