//! Breadth-first closure of words under conjugation by native rotations.
//!
//! Conjugating `e^{iπ/4 Q}` (or the measurement of `Q`) by the rotation
//! `e^{iπ/4 N}` gives the same gate on `NQ` when `N` and `Q` anticommute and
//! leaves it unchanged otherwise. Starting words cost 1 and every
//! conjugation adds 2, one native rotation on each side.

use std::io::Write;

use std::sync::atomic::{AtomicU32, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use super::LogicalPauli;

/// Packed `cost << 16 | parent`; unreached words hold `u32::MAX`.
const UNREACHED: u32 = u32::MAX;

/// Costs and parent pointers over every word on `num_qubits` qubits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynthesisTable {
    pub num_qubits: usize,
    /// Words the closure starts from, cost 1.
    pub anchors: Vec<u32>,
    /// Conjugating rotations.
    pub moves: Vec<u32>,
    /// Cost and parent (move id, or anchor id at cost 1) per word.
    entries: Vec<u32>,
    pub levels: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Conjugating rotations from the outside in.
    pub moves: Vec<usize>,
    pub anchor: usize,
}

fn anticommute(a: u32, b: u32, m: usize) -> bool {
    let mask = (1u32 << m) - 1;
    let (ax, az, bx, bz) = (a & mask, a >> m, b & mask, b >> m);
    ((ax & bz) ^ (az & bx)).count_ones() % 2 == 1
}

fn pack(cost: u32, parent: usize) -> u32 {
    cost << 16 | parent as u32
}

/// Level-synchronous search. Workers push from disjoint frontier chunks and
/// keep the smallest move id per new word, so the table does not depend on
/// scheduling.
fn run(num_qubits: usize, anchors: Vec<u32>, moves: Vec<u32>) -> SynthesisTable {
    assert!(num_qubits <= 12, "tables hold at most 12 qubits");
    assert!(anchors.len() < 1 << 16 && moves.len() < 1 << 16);
    let size = 1usize << (2 * num_qubits);
    let entries: Vec<AtomicU32> = (0..size).map(|_| AtomicU32::new(UNREACHED)).collect();
    let mut frontier: Vec<u32> = Vec::new();
    for (i, &a) in anchors.iter().enumerate() {
        if a != 0 && entries[a as usize].load(Ordering::Relaxed) == UNREACHED {
            entries[a as usize].store(pack(1, i), Ordering::Relaxed);
            frontier.push(a);
        }
    }
    let mut levels = 1;
    let mut cost = 1u32;
    loop {
        let next = cost + 2;
        let mut found: Vec<u32> = frontier
            .par_chunks(4096)
            .flat_map_iter(|chunk| {
                let mut local = Vec::new();
                for &w in chunk {
                    for (j, &n) in moves.iter().enumerate() {
                        if anticommute(w, n, num_qubits) {
                            let v = w ^ n;
                            let slot = &entries[v as usize];
                            let want = pack(next, j);
                            if slot.load(Ordering::Relaxed) > want && slot.fetch_min(want, Ordering::Relaxed) == UNREACHED {
                                local.push(v);
                            }
                        }
                    }
                }
                local
            })
            .collect();
        if found.is_empty() {
            break;
        }
        found.par_sort_unstable();
        frontier = found;
        levels += 1;
        cost = next;
    }
    let entries = entries.into_iter().map(AtomicU32::into_inner).collect();
    SynthesisTable { num_qubits, anchors, moves, entries, levels }
}

/// Closure of the native rotations under conjugation by themselves.
#[must_use]
pub fn rotation_closure(num_qubits: usize, natives: &[LogicalPauli]) -> SynthesisTable {
    let words: Vec<u32> = natives.iter().map(|p| p.word(num_qubits)).collect();
    run(num_qubits, words.clone(), words)
}

/// Closure of native measurements under conjugation by native rotations.
#[must_use]
pub fn measurement_closure(num_qubits: usize, measurements: &[LogicalPauli], rotations: &[LogicalPauli]) -> SynthesisTable {
    let anchors = measurements.iter().map(|p| p.word(num_qubits)).collect();
    let moves = rotations.iter().map(|p| p.word(num_qubits)).collect();
    run(num_qubits, anchors, moves)
}

impl SynthesisTable {
    /// Cost of a word, `None` if unreached or identity.
    #[must_use]
    pub fn cost(&self, word: u32) -> Option<u32> {
        let e = self.entries[word as usize];
        (e != UNREACHED).then_some(e >> 16)
    }

    fn parent(&self, word: u32) -> usize {
        (self.entries[word as usize] & 0xffff) as usize
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Nonidentity words reached.
    #[must_use]
    pub fn reached(&self) -> usize {
        self.entries.iter().filter(|&&e| e != UNREACHED).count()
    }

    /// Reached words among those selected by `filter`, and the number selected.
    pub fn coverage(&self, filter: impl Fn(u32) -> bool) -> (usize, usize) {
        let mut hit = 0;
        let mut total = 0;
        for w in 1..self.entries.len() as u32 {
            if filter(w) {
                total += 1;
                hit += usize::from(self.entries[w as usize] != UNREACHED);
            }
        }
        (hit, total)
    }

    /// Whether every nonidentity word is reached.
    #[must_use]
    pub fn is_complete(&self) -> bool {
        self.entries[1..].iter().all(|&e| e != UNREACHED)
    }

    #[must_use]
    pub fn witness(&self, word: u32) -> Option<Witness> {
        let mut c = self.cost(word)?;
        let mut w = word;
        let mut moves = Vec::new();
        while c > 1 {
            let j = self.parent(w);
            moves.push(j);
            w ^= self.moves[j];
            c -= 2;
        }
        Some(Witness { moves, anchor: self.parent(w) })
    }

    /// Replays a witness: conjugates the anchor by each move, innermost first.
    #[must_use]
    pub fn replay(&self, w: &Witness) -> u32 {
        let mut acc = self.anchors[w.anchor];
        for &j in w.moves.iter().rev() {
            let n = self.moves[j];
            if anticommute(acc, n, self.num_qubits) {
                acc ^= n;
            }
        }
        acc
    }

    /// `(cost, count)` over reached words, ascending.
    #[must_use]
    pub fn histogram(&self) -> Vec<(u32, usize)> {
        let mut counts: std::collections::BTreeMap<u32, usize> = std::collections::BTreeMap::new();
        for w in 1..self.entries.len() as u32 {
            if let Some(c) = self.cost(w) {
                *counts.entry(c).or_default() += 1;
            }
        }
        counts.into_iter().collect()
    }

    /// CSV rows `word_hex,letters,cost,witness` with the witness as
    /// space-separated move ids followed by `a<anchor>`.
    pub fn write_csv(&self, mut out: impl Write, limit: Option<usize>) -> std::io::Result<()> {
        writeln!(out, "word_hex,letters,cost,witness")?;
        let mut written = 0;
        for w in 1..self.entries.len() as u32 {
            if limit.is_some_and(|l| written >= l) {
                break;
            }
            let Some(wit) = self.witness(w) else { continue };
            let mut seq: Vec<String> = wit.moves.iter().map(ToString::to_string).collect();
            seq.push(format!("a{}", wit.anchor));
            let letters = LogicalPauli::from_word(w, self.num_qubits).to_letters(self.num_qubits);
            writeln!(out, "{w:06x},{letters},{},{}", wit.moves.len() * 2 + 1, seq.join(" "))?;
            written += 1;
        }
        Ok(())
    }

    pub fn write_histogram_csv(&self, mut out: impl Write, table: &str) -> std::io::Result<()> {
        writeln!(out, "table,cost,count")?;
        for (c, n) in self.histogram() {
            writeln!(out, "{table},{c},{n}")?;
        }
        Ok(())
    }
}
