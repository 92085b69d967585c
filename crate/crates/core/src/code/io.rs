//! Plain-text check-matrix format.
//!
//! ```text
//! # optional comment lines
//! 2 3
//! 0 1
//! 1 2
//! ```
//!
//! The header gives `rows cols`; each following line lists the set columns of
//! one row in increasing order. An all-zero row is an empty line. Lines whose
//! first non-blank character is `#` are ignored everywhere.

use std::fmt::Write as _;
use std::path::Path;

use crate::code::CssCode;
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

#[must_use]
pub fn format_matrix(m: &BitMatrix) -> String {
    let mut s = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row_support(i).iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "{}", row.join(" "));
    }
    s
}

pub fn parse_matrix(text: &str) -> Result<BitMatrix> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim_start().starts_with('#'));
    let (hline, header) = loop {
        match lines.next() {
            None => return Err(Error::Parse { line: 0, msg: "missing header".into() }),
            Some((_, l)) if l.trim().is_empty() => continue,
            Some((i, l)) => break (i + 1, l),
        }
    };
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(str::parse)
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Parse { line: hline, msg: format!("bad header: {e}") })?;
    let [rows, cols] = dims[..] else {
        return Err(Error::Parse { line: hline, msg: "header must be `rows cols`".into() });
    };
    let mut m = BitMatrix::zeros(rows, cols);
    let mut r = 0;
    for (i, l) in lines {
        if r == rows {
            if l.trim().is_empty() {
                continue;
            }
            return Err(Error::Parse { line: i + 1, msg: format!("more than {rows} rows") });
        }
        let mut last: Option<usize> = None;
        for tok in l.split_whitespace() {
            let c: usize = tok.parse().map_err(|e| Error::Parse { line: i + 1, msg: format!("bad column `{tok}`: {e}") })?;
            if c >= cols {
                return Err(Error::Parse { line: i + 1, msg: format!("column {c} out of range {cols}") });
            }
            if last.is_some_and(|p| p >= c) {
                return Err(Error::Parse { line: i + 1, msg: "columns must be strictly increasing".into() });
            }
            last = Some(c);
            m.set(r, c, true);
        }
        r += 1;
    }
    if r != rows {
        return Err(Error::Parse { line: 0, msg: format!("expected {rows} rows, found {r}") });
    }
    Ok(m)
}

pub fn save_matrix(m: &BitMatrix, path: &Path) -> Result<()> {
    std::fs::write(path, format_matrix(m))?;
    Ok(())
}

pub fn load_matrix(path: &Path) -> Result<BitMatrix> {
    parse_matrix(&std::fs::read_to_string(path)?)
}

/// Loads a code stored as the pair `<stem>.hx`, `<stem>.hz`.
pub fn load_code(path: &Path) -> Result<CssCode> {
    let hx_path = path.with_extension("hx");
    let hz_path = path.with_extension("hz");
    if hx_path.exists() && hz_path.exists() {
        let name = path.file_stem().map_or_else(|| "file".into(), |s| s.to_string_lossy().into_owned());
        return CssCode::new(load_matrix(&hx_path)?, load_matrix(&hz_path)?, name);
    }
    Err(Error::Invalid(format!("expected {} and {}", hx_path.display(), hz_path.display())))
}

pub fn save_code(code: &CssCode, stem: &Path) -> Result<()> {
    save_matrix(&code.hx, &stem.with_extension("hx"))?;
    save_matrix(&code.hz, &stem.with_extension("hz"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_byte_stable() {
        let text = "3 4\n0 1\n\n1 2 3\n";
        let m = parse_matrix(text).unwrap();
        assert_eq!(m.row_weight(1), 0);
        assert_eq!(format_matrix(&m), text);
    }

    #[test]
    fn comments_and_errors() {
        let m = parse_matrix("# hello\n2 2\n0\n# mid\n1\n").unwrap();
        assert_eq!(m, BitMatrix::identity(2));
        assert!(parse_matrix("2 2\n1 0\n0\n").is_err());
        assert!(parse_matrix("1 2\n5\n").is_err());
        assert!(parse_matrix("2 2\n0\n").is_err());
        assert!(parse_matrix("").is_err());
    }
}
