//! Fixtures shared by the benchmarks.

use gfsurgery::code::{hgp, hgp_logical_basis, repetition_parity};
use gfsurgery::decoder::BpOsdConfig;
use gfsurgery::montecarlo::{DecoderChoice, Prepared};
use gfsurgery::protocol::{build_schedule, sample, DetectorGraph, NoiseModel, ScheduleOptions};
use gfsurgery::surgery::{build_x_system, MergedCode};
use gfsurgery::BitVector;

/// Mono-layer X system of the `n × n` repetition product.
pub fn rep_system(n: usize) -> MergedCode {
    let h = repetition_parity(n);
    build_x_system(&hgp(&h), &hgp_logical_basis(&h).xops[0], 1, true).expect("valid system")
}

pub struct DecodeFixture {
    pub graph: DetectorGraph,
    pub decoder: Prepared,
    /// Nonzero syndromes drawn at the fixture's noise rate.
    pub syndromes: Vec<BitVector>,
}

pub fn decode_fixture(n: usize, rounds: usize, p: f64, choice: DecoderChoice) -> DecodeFixture {
    let m = rep_system(n);
    let graph = build_schedule(&m, ScheduleOptions::new(rounds)).expect("schedule");
    let noise = NoiseModel::uniform(p);
    let decoder = Prepared::new(choice, &m, &graph, noise, BpOsdConfig::default()).expect("decoder");
    let syndromes = (0..10_000).map(|s| sample(&graph, noise, 11, s).detectors).filter(|d| !d.is_zero()).take(64).collect();
    DecodeFixture { graph, decoder, syndromes }
}
