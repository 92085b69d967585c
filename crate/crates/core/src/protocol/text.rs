//! Plain-text export of a schedule.
//!
//! ```text
//! # phenomenological schedule: every check is measured atomically
//! QUBITS 21
//! ROUNDS 5
//! ROUND 0
//! PREP 18 Z
//! MEASURE NOISY X0 X3 X9
//! MEASURE IDEAL Z18
//! DETECTOR 0 0:4 1:4
//! OBSERVABLE 1:9 1:10
//! LOGICAL 0 Z1 Z4 Z7
//! ```
//!
//! `MEASURE` lines are numbered in order within their round; detector terms
//! are `round:index`. `PREP` lines list qubits prepared before the round.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::pauli::PauliOperator;

use super::{DetectorGraph, OutcomeSource};

fn pauli_tokens(op: &PauliOperator) -> String {
    let mut parts = Vec::new();
    for q in op.support() {
        let c = match (op.xbits().get(q), op.zbits().get(q)) {
            (true, true) => 'Y',
            (true, false) => 'X',
            _ => 'Z',
        };
        parts.push(format!("{c}{q}"));
    }
    parts.join(" ")
}

fn terms(t: &[(usize, usize)]) -> String {
    t.iter().map(|(r, o)| format!("{r}:{o}")).collect::<Vec<_>>().join(" ")
}

/// Deterministic text listing of rounds, detectors, the observable and tracked logicals.
#[must_use]
pub fn emit_circuit_text(g: &DetectorGraph) -> String {
    let mut s = String::new();
    s.push_str("# phenomenological schedule: every check is measured atomically\n");
    let _ = writeln!(s, "# kind {:?}, init {:?}", g.kind, g.init);
    let _ = writeln!(s, "QUBITS {}", g.num_qubits);
    let _ = writeln!(s, "ROUNDS {}", g.rounds.len());
    for (r, round) in g.rounds.iter().enumerate() {
        let _ = writeln!(s, "ROUND {r}");
        if r == 0 {
            for o in &round.outcomes {
                if let OutcomeSource::Single { qubit, kind } = o.source {
                    let _ = writeln!(s, "PREP {qubit} {kind}");
                }
            }
        }
        for o in &round.outcomes {
            let _ = writeln!(s, "MEASURE {} {}", if o.noisy { "NOISY" } else { "IDEAL" }, pauli_tokens(&o.op));
        }
    }
    for d in &g.detectors {
        let _ = writeln!(s, "DETECTOR {} {}", d.step, terms(&d.terms));
    }
    let _ = writeln!(s, "OBSERVABLE {}", terms(&g.observable_terms));
    for (j, l) in g.logical_ops.iter().enumerate() {
        let _ = writeln!(s, "LOGICAL {j} {}", pauli_tokens(l));
    }
    s
}

/// Annotations read back from [`emit_circuit_text`] output.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CircuitAnnotations {
    pub qubits: usize,
    pub rounds: usize,
    pub measurements: Vec<usize>,
    pub detectors: Vec<(usize, Vec<(usize, usize)>)>,
    pub observable: Vec<(usize, usize)>,
    pub logicals: usize,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_term(line: usize, tok: &str) -> Result<(usize, usize)> {
    let (a, b) = tok.split_once(':').ok_or_else(|| perr(line, format!("bad term {tok}")))?;
    let p = |x: &str| x.parse::<usize>().map_err(|e| perr(line, format!("{tok}: {e}")));
    Ok((p(a)?, p(b)?))
}

pub fn parse_circuit_annotations(text: &str) -> Result<CircuitAnnotations> {
    let mut out = CircuitAnnotations::default();
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let num = |t: Option<&str>| -> Result<usize> { t.ok_or_else(|| perr(ln, "missing number"))?.parse().map_err(|e| perr(ln, format!("{e}"))) };
        let mut it = line.split_whitespace();
        match it.next() {
            None => {}
            Some(t) if t.starts_with('#') => {}
            Some("QUBITS") => out.qubits = num(it.next())?,
            Some("ROUNDS") => out.rounds = num(it.next())?,
            Some("ROUND") => out.measurements.push(0),
            Some("PREP") => {}
            Some("MEASURE") => *out.measurements.last_mut().ok_or_else(|| perr(ln, "MEASURE before ROUND"))? += 1,
            Some("DETECTOR") => {
                let step = num(it.next())?;
                out.detectors.push((step, it.map(|t| parse_term(ln, t)).collect::<Result<_>>()?));
            }
            Some("OBSERVABLE") => out.observable = it.map(|t| parse_term(ln, t)).collect::<Result<_>>()?,
            Some("LOGICAL") => out.logicals += 1,
            Some(other) => return Err(perr(ln, format!("unknown instruction {other}"))),
        }
    }
    if out.measurements.len() != out.rounds {
        return Err(perr(0, "round count mismatch"));
    }
    Ok(out)
}
