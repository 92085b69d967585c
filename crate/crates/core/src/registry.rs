//! Named code sources and operator ids.
//!
//! | source          | code                                   |
//! |-----------------|----------------------------------------|
//! | `gross`         | `[[144,12,12]]` bivariate bicycle code |
//! | `hgp:repN`      | HGP of the length-`N` repetition code  |
//! | `hgp:circN`     | HGP of the `N × N` circulant (toric)   |
//! | `file:<stem>`   | `<stem>.hx` / `<stem>.hz` matrices     |
//!
//! Operators are `x<i>` / `z<i>` from the source's logical basis, and for the
//! gross code also `Xbar`, `Zbar`, `Xbar'`, `Zbar'`.

use std::path::PathBuf;

use crate::code::{gross_code, gross_operators, hgp, hgp_logical_basis, io, logical_basis, circulant, repetition_parity, CssCode, LogicalBasis};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::pauli::PauliOperator;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeSource {
    Gross,
    HgpRepetition(usize),
    HgpCirculant(usize),
    File(PathBuf),
}

impl std::str::FromStr for CodeSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let size = |t: &str| t.parse::<usize>().ok().filter(|&n| n >= 2).ok_or_else(|| Error::UnknownCode(s.to_string()));
        if s == "gross" {
            Ok(Self::Gross)
        } else if let Some(rest) = s.strip_prefix("hgp:rep") {
            Ok(Self::HgpRepetition(size(rest)?))
        } else if let Some(rest) = s.strip_prefix("hgp:circ") {
            Ok(Self::HgpCirculant(size(rest)?))
        } else if let Some(rest) = s.strip_prefix("file:") {
            Ok(Self::File(PathBuf::from(rest)))
        } else {
            Err(Error::UnknownCode(s.to_string()))
        }
    }
}

impl std::fmt::Display for CodeSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Gross => write!(f, "gross"),
            Self::HgpRepetition(n) => write!(f, "hgp:rep{n}"),
            Self::HgpCirculant(n) => write!(f, "hgp:circ{n}"),
            Self::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

/// A loaded code with the basis its operator ids refer to.
#[derive(Clone, Debug)]
pub struct LoadedCode {
    pub source: CodeSource,
    pub code: CssCode,
    pub basis: LogicalBasis,
    /// Classical seed matrix of HGP sources.
    pub seed: Option<BitMatrix>,
}

impl CodeSource {
    pub fn load(&self) -> Result<LoadedCode> {
        let (code, seed) = match self {
            Self::Gross => (gross_code(), None),
            Self::HgpRepetition(n) => {
                let h = repetition_parity(*n);
                (hgp(&h), Some(h))
            }
            Self::HgpCirculant(n) => {
                let h = circulant(*n);
                (hgp(&h), Some(h))
            }
            Self::File(stem) => (io::load_code(stem)?, None),
        };
        let basis = match &seed {
            Some(h) => hgp_logical_basis(h),
            None => logical_basis(&code),
        };
        Ok(LoadedCode { source: self.clone(), code, basis, seed })
    }
}

impl LoadedCode {
    /// Resolves an operator id.
    pub fn operator(&self, id: &str) -> Result<PauliOperator> {
        if self.source == CodeSource::Gross {
            let ops = gross_operators();
            match id {
                "Xbar" => return Ok(ops.xbar),
                "Zbar" => return Ok(ops.zbar),
                "Xbar'" => return Ok(ops.xbar_dual),
                "Zbar'" => return Ok(ops.zbar_dual),
                _ => {}
            }
        }
        let bad = || Error::Invalid(format!("unknown operator id {id:?}; use x<i>, z<i> with i < {}", self.basis.len()));
        let (list, rest) = if let Some(r) = id.strip_prefix('x') {
            (&self.basis.xops, r)
        } else if let Some(r) = id.strip_prefix('z') {
            (&self.basis.zops, r)
        } else {
            return Err(bad());
        };
        let i: usize = rest.parse().map_err(|_| bad())?;
        list.get(i).cloned().ok_or_else(bad)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sources() {
        assert_eq!("hgp:rep3".parse::<CodeSource>().unwrap(), CodeSource::HgpRepetition(3));
        assert_eq!("hgp:circ5".parse::<CodeSource>().unwrap().to_string(), "hgp:circ5");
        assert!("hgp:rep1".parse::<CodeSource>().is_err());
        assert!("steane".parse::<CodeSource>().is_err());
    }

    #[test]
    fn resolves_operators() {
        let c = CodeSource::HgpRepetition(3).load().unwrap();
        assert_eq!(c.code.n(), 13);
        assert_eq!(c.operator("x0").unwrap().weight(), 3);
        assert!(c.operator("x1").is_err());
        assert!(c.operator("q0").is_err());
        let g = CodeSource::Gross.load().unwrap();
        assert_eq!(g.operator("Zbar").unwrap().weight(), 12);
    }
}
