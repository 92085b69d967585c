//! Monte Carlo estimates of measurement and logical failure rates.
//!
//! Shot `i` draws from the stream `(seed, i)`, so results do not depend on
//! how shots are split across threads.

use rayon::prelude::*;
use serde::Serialize;

use crate::decoder::{BpOsdConfig, DecodeOutcome, ModularDecoder, WholeGraphDecoder};
use crate::error::Result;
use crate::protocol::{sample, DetectorGraph, NoiseModel};
use crate::stats::Rate;
use crate::surgery::MergedCode;
use crate::BitVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DecoderChoice {
    Modular,
    WholeGraph,
}

impl DecoderChoice {
    #[must_use]
    pub fn id(self) -> &'static str {
        match self {
            Self::Modular => "modular",
            Self::WholeGraph => "bposd",
        }
    }
}

/// A decoder prepared for one detector graph.
#[derive(Clone, Debug)]
pub enum Prepared {
    Modular(Box<ModularDecoder>),
    WholeGraph(Box<WholeGraphDecoder>),
}

impl Prepared {
    pub fn new(choice: DecoderChoice, merged: &MergedCode, g: &DetectorGraph, noise: NoiseModel, config: BpOsdConfig) -> Result<Self> {
        Ok(match choice {
            DecoderChoice::Modular => Self::Modular(Box::new(ModularDecoder::new(merged, g, noise, config)?)),
            DecoderChoice::WholeGraph => Self::WholeGraph(Box::new(WholeGraphDecoder::new(g, noise, config))),
        })
    }

    #[must_use]
    pub fn decode(&self, g: &DetectorGraph, syndrome: &BitVector) -> DecodeOutcome {
        match self {
            Self::Modular(d) => d.decode(g, syndrome),
            Self::WholeGraph(d) => d.decode(g, syndrome),
        }
    }
}

/// Per-shot record for decoder benchmarks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ShotRecord {
    pub shot: u64,
    pub converged: bool,
    pub observable_error: bool,
    pub logical_error: bool,
    pub nanos: u128,
}

pub fn run_shots(decoder: &Prepared, g: &DetectorGraph, noise: NoiseModel, seed: u64, shots: u64) -> Vec<ShotRecord> {
    (0..shots)
        .into_par_iter()
        .map(|shot| {
            let s = sample(g, noise, seed, shot);
            let out = decoder.decode(g, &s.detectors);
            ShotRecord { shot, converged: out.converged, observable_error: out.observable != s.observable, logical_error: out.logicals != s.logicals, nanos: out.nanos }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub rounds: usize,
    pub shots: u64,
    pub measurement: Rate,
    pub logical: Rate,
    pub nonconverged: u64,
    pub mean_nanos: f64,
}

#[must_use]
pub fn summarize(records: &[ShotRecord], rounds: usize) -> Estimate {
    let shots = records.len() as u64;
    let count = |f: fn(&ShotRecord) -> bool| records.iter().filter(|r| f(r)).count() as u64;
    Estimate {
        rounds,
        shots,
        measurement: Rate::new(count(|r| r.observable_error), shots),
        logical: Rate::new(count(|r| r.logical_error), shots),
        nonconverged: count(|r| !r.converged),
        mean_nanos: if shots == 0 { 0.0 } else { records.iter().map(|r| r.nanos as f64).sum::<f64>() / shots as f64 },
    }
}

/// Runs `shots` shots and summarizes them.
pub fn estimate(decoder: &Prepared, g: &DetectorGraph, noise: NoiseModel, seed: u64, shots: u64) -> Estimate {
    summarize(&run_shots(decoder, g, noise, seed, shots), g.rounds_r)
}
