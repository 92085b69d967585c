use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;

/// Stdout, or a file when a path is given.
pub fn sink(path: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            Box::new(BufWriter::new(File::create(p)?))
        }
        None => Box::new(BufWriter::new(std::io::stdout().lock())),
    })
}

/// `# key = value` lines for every field of the command's arguments, keys sorted.
pub fn echo(out: &mut dyn Write, command: &str, args: &impl Serialize) -> anyhow::Result<()> {
    writeln!(out, "# gfsurgery {command} {}", env!("CARGO_PKG_VERSION"))?;
    if let serde_json::Value::Object(map) = serde_json::to_value(args)? {
        flatten(out, "", &map)?;
    }
    Ok(())
}

fn flatten(out: &mut dyn Write, prefix: &str, map: &serde_json::Map<String, serde_json::Value>) -> anyhow::Result<()> {
    for (k, v) in map {
        match v {
            serde_json::Value::Object(inner) => flatten(out, &format!("{prefix}{k}."), inner)?,
            other => writeln!(out, "# {prefix}{k} = {other}")?,
        }
    }
    Ok(())
}

/// A CSV writer over `out`.
pub fn csv_writer(out: Box<dyn Write>) -> csv::Writer<Box<dyn Write>> {
    csv::WriterBuilder::new().from_writer(out)
}
