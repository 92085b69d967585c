use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::Args;
use serde::Serialize;

use gfsurgery::cliffords::{measurement_closure, native_set, rotation_closure, LogicalPauli, SynthesisTable, PIVOT};
use gfsurgery::code::{induced_graph, pure_kind};
use gfsurgery::decoder::BpOsdConfig;
use gfsurgery::distance::{default_isd_budget, fault_distance_exhaustive, probabilistic_distance_lower_bound, subsystem_fault_distances, DistanceResult, DistanceValue, IsdOutcome, IsdProblem};
use gfsurgery::montecarlo::{run_shots, summarize, DecoderChoice, Prepared};
use gfsurgery::protocol::{build_schedule, emit_circuit_text, DetectorGraph, InitMode, NoiseModel, ScheduleOptions};
use gfsurgery::registry::{CodeSource, LoadedCode};
use gfsurgery::surgery::expansion::CHEEGER_CAP;
use gfsurgery::surgery::{boundary_cheeger, build_xx_system, build_x_system, build_y_system, build_z_system, min_layers, prune_redundant_gauge_checks, save_bundle, summarize as summarize_code, JointOptions, MergedCode, Summary};
use gfsurgery::{PauliKind, PauliOperator};

use crate::output::{csv_writer, echo, sink};
use crate::{Kind, Target, Usage};

fn usage<T>(r: gfsurgery::Result<T>) -> anyhow::Result<T> {
    r.map_err(|e| Usage(e.to_string()).into())
}

fn load(t: &Target) -> anyhow::Result<(LoadedCode, PauliOperator, Option<PauliOperator>)> {
    let src: CodeSource = t.code.parse().map_err(|e: gfsurgery::Error| Usage(e.to_string()))?;
    let code = src.load()?;
    let op = usage(code.operator(&t.op))?;
    let op2 = t.op2.as_deref().map(|id| usage(code.operator(id))).transpose()?;
    Ok((code, op, op2))
}

fn auto_layers(code: &LoadedCode, op: &PauliOperator) -> anyhow::Result<usize> {
    let kind = pure_kind(op)?;
    let g = induced_graph(&code.code, op, kind)?;
    match boundary_cheeger(&g.f, CHEEGER_CAP) {
        Ok(c) => Ok(min_layers(c.beta)?),
        Err(_) => Ok(1),
    }
}

/// The merged code a [`Target`] describes.
pub fn merged(t: &Target) -> anyhow::Result<MergedCode> {
    let (code, op, op2) = load(t)?;
    let second = || op2.clone().ok_or_else(|| anyhow::Error::from(Usage(format!("--kind {:?} needs --op2", t.kind))));
    let m = match t.kind {
        Kind::X | Kind::Z => {
            let layers = match t.layers {
                Some(l) => l,
                None => auto_layers(&code, &op)?,
            };
            if t.kind == Kind::X {
                build_x_system(&code.code, &op, layers, !t.no_gauge_fix)?
            } else {
                build_z_system(&code.code, &op, layers, !t.no_gauge_fix)?
            }
        }
        Kind::Xx => {
            let l = t.layers.unwrap_or(1);
            build_xx_system(&code.code, &op, &second()?, JointOptions { layers: (l, l), attach: None })?
        }
        Kind::Y => {
            let l = t.layers.unwrap_or(1);
            build_y_system(&code.code, &op, &second()?, l, l)?
        }
    };
    Ok(if t.prune { prune_redundant_gauge_checks(&m).0 } else { m })
}

fn graph(m: &MergedCode, rounds: usize, all_zero: bool) -> anyhow::Result<DetectorGraph> {
    if rounds == 0 {
        bail!(Usage("rounds must be at least 1".into()));
    }
    let init = if all_zero { InitMode::AllZero } else { InitMode::Module };
    Ok(build_schedule(m, ScheduleOptions { rounds, init })?)
}

fn print_summary(out: &mut dyn Write, s: &Summary) -> anyhow::Result<()> {
    writeln!(out, "kind: {:?}", s.kind)?;
    writeln!(out, "base qubits: {}", s.base_qubits)?;
    writeln!(out, "qubits: {}", s.qubits)?;
    writeln!(out, "ancilla qubits: {}", s.ancilla_qubits)?;
    writeln!(out, "bridge qubits: {}", s.bridge_qubits)?;
    writeln!(out, "checks: {}", s.checks)?;
    writeln!(out, "gauge checks: {}", s.gauge_checks)?;
    writeln!(out, "logical qubits: {}", s.logicals)?;
    writeln!(out, "layers: {:?}", s.layers)?;
    writeln!(out, "max check weight: {}", s.max_check_weight)?;
    writeln!(out, "max qubit degree: {}", s.max_qubit_degree)?;
    for (role, n) in &s.check_roles {
        writeln!(out, "checks[{role}]: {n}")?;
    }
    for (d, n) in &s.qubit_degrees {
        writeln!(out, "qubits[degree {d}]: {n}")?;
    }
    Ok(())
}

#[derive(Args, Debug, Serialize)]
pub struct BuildArgs {
    #[command(flatten)]
    #[serde(flatten)]
    target: Target,
    /// Directory for the bundle.
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn build(a: &BuildArgs) -> anyhow::Result<()> {
    let m = merged(&a.target)?;
    let mut out = sink(None)?;
    echo(&mut *out, "build", a)?;
    if let Some(dir) = &a.out {
        save_bundle(&m, dir, &serde_json::to_value(a)?)?;
        writeln!(out, "bundle: {}", dir.display())?;
    }
    print_summary(&mut *out, &summarize_code(&m))?;
    Ok(())
}

#[derive(Args, Debug, Serialize)]
pub struct DistanceArgs {
    #[command(flatten)]
    #[serde(flatten)]
    target: Target,
    #[arg(long = "R", alias = "rounds", default_value_t = 3)]
    rounds: usize,
    /// Weight cap for the group searches.
    #[arg(long, default_value_t = 8)]
    wmax: usize,
    /// Also enumerate mechanism sets of the detector graph up to this size.
    #[arg(long)]
    exhaustive: Option<usize>,
    /// Random search for merged logicals lighter than this weight.
    #[arg(long)]
    isd_target: Option<usize>,
    /// Seconds per random search; defaults to `GFSURGERY_ISD_SECONDS` or 600.
    #[arg(long)]
    isd_seconds: Option<f64>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    all_zero_init: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct DistanceEntry {
    value: String,
    exact: bool,
    witness: Option<Vec<usize>>,
}

impl From<&DistanceResult> for DistanceEntry {
    fn from(d: &DistanceResult) -> Self {
        Self { value: d.value.to_string(), exact: d.exact, witness: d.witness.as_ref().map(PauliOperator::support) }
    }
}

fn value_entry(v: DistanceValue, witness: Option<Vec<usize>>) -> DistanceEntry {
    DistanceEntry { value: v.to_string(), exact: v.exact().is_some(), witness }
}

#[derive(Serialize)]
struct IsdEntry {
    kind: char,
    target: usize,
    found_weight: Option<usize>,
    witness: Option<Vec<usize>>,
    iterations: u64,
}

#[derive(Serialize)]
struct DistanceReport<'a> {
    config: &'a DistanceArgs,
    logical_qubits: usize,
    logical: DistanceEntry,
    measurement: DistanceEntry,
    exhaustive: Option<[DistanceEntry; 2]>,
    isd: Vec<IsdEntry>,
}

fn distance_report<'a>(a: &'a DistanceArgs, m: &MergedCode) -> anyhow::Result<DistanceReport<'a>> {
    let init = if a.all_zero_init { InitMode::AllZero } else { InitMode::Module };
    let f = subsystem_fault_distances(m, a.rounds, init, a.wmax)?;
    let exhaustive = match a.exhaustive {
        Some(w) => {
            let g = graph(m, a.rounds, a.all_zero_init)?;
            let e = fault_distance_exhaustive(&g, w);
            Some([value_entry(e.logical, e.logical_witness), value_entry(e.measurement, e.measurement_witness)])
        }
        None => None,
    };
    let mut isd = Vec::new();
    if let Some(target) = a.isd_target {
        if !m.is_css() {
            bail!(Usage("random search needs a CSS merged code".into()));
        }
        for (i, kind) in [PauliKind::X, PauliKind::Z].into_iter().enumerate() {
            let mut budget = default_isd_budget(a.seed + i as u64);
            if let Some(s) = a.isd_seconds {
                budget.seconds = s;
            }
            let problem = IsdProblem::merged(m, kind)?;
            let entry = match probabilistic_distance_lower_bound(&problem, target, budget) {
                IsdOutcome::Found { witness, weight, iterations } => IsdEntry { kind: kind.letter(), target, found_weight: Some(weight), witness: Some(witness.ones_indices()), iterations },
                IsdOutcome::NoneWithinBudget { iterations, .. } => IsdEntry { kind: kind.letter(), target, found_weight: None, witness: None, iterations },
            };
            isd.push(entry);
        }
    }
    Ok(DistanceReport { config: a, logical_qubits: m.num_logicals(), logical: (&f.logical).into(), measurement: (&f.measurement).into(), exhaustive, isd })
}

pub fn distance(a: &DistanceArgs) -> anyhow::Result<()> {
    let m = merged(&a.target)?;
    let report = distance_report(a, &m)?;
    let mut out = sink(a.out.as_deref())?;
    serde_json::to_writer_pretty(&mut out, &report)?;
    writeln!(out)?;
    Ok(())
}

#[derive(Args, Debug, Serialize)]
pub struct CheegerArgs {
    #[arg(long, default_value = "hgp:rep3")]
    code: String,
    #[arg(long, default_value = "x0")]
    op: String,
    /// Largest vertex count enumerated.
    #[arg(long, default_value_t = CHEEGER_CAP)]
    cap: usize,
}

pub fn cheeger(a: &CheegerArgs) -> anyhow::Result<()> {
    let t = Target { code: a.code.clone(), op: a.op.clone(), op2: None, kind: Kind::X, layers: None, no_gauge_fix: false, prune: false };
    let (code, op, _) = load(&t)?;
    let kind = usage(pure_kind(&op))?;
    let g = induced_graph(&code.code, &op, kind)?;
    let c = boundary_cheeger(&g.f, a.cap)?;
    let mut out = sink(None)?;
    echo(&mut *out, "cheeger", a)?;
    writeln!(out, "V0: {}", g.v0.len())?;
    writeln!(out, "C0: {}", g.c0.len())?;
    writeln!(out, "beta: {} ({:.6})", c.beta, c.beta.to_f64())?;
    let witness: Vec<usize> = c.witness.iter().map(|&j| g.v0[j]).collect();
    writeln!(out, "witness qubits: {witness:?}")?;
    writeln!(out, "min layers: {}", min_layers(c.beta)?)?;
    Ok(())
}

/// Noise, rounds and decoder shared by the stochastic commands.
#[derive(Args, Debug, Serialize)]
pub struct RunArgs {
    #[arg(long = "R", alias = "rounds", value_delimiter = ',', default_value = "3")]
    rounds: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "0.001")]
    p: Vec<f64>,
    #[arg(long, default_value_t = 10_000)]
    shots: u64,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    osd_order: usize,
    #[arg(long, default_value_t = gfsurgery::decoder::DEFAULT_BP_ITERS)]
    bp_iters: usize,
    #[arg(long)]
    all_zero_init: bool,
}

impl RunArgs {
    fn config(&self) -> BpOsdConfig {
        BpOsdConfig { max_iters: self.bp_iters, osd_order: self.osd_order }
    }

    fn check(&self) -> anyhow::Result<()> {
        if self.p.iter().any(|p| !(0.0..=1.0).contains(p)) {
            bail!(Usage("p must lie in [0, 1]".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
pub enum DecoderArg {
    Modular,
    Bposd,
}

impl From<DecoderArg> for DecoderChoice {
    fn from(d: DecoderArg) -> Self {
        match d {
            DecoderArg::Modular => Self::Modular,
            DecoderArg::Bposd => Self::WholeGraph,
        }
    }
}

#[derive(Args, Debug, Serialize)]
pub struct SimulateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    target: Target,
    #[command(flatten)]
    #[serde(flatten)]
    run: RunArgs,
    #[arg(long, value_enum, default_value_t = DecoderArg::Modular)]
    decoder: DecoderArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct SimRow {
    code: String,
    op: String,
    kind: Kind,
    decoder: &'static str,
    p: f64,
    rounds: usize,
    shots: u64,
    measurement_failures: u64,
    measurement_rate: f64,
    measurement_per_round: f64,
    measurement_lo: f64,
    measurement_hi: f64,
    logical_failures: u64,
    logical_rate: f64,
    logical_per_round: f64,
    logical_lo: f64,
    logical_hi: f64,
    nonconverged: u64,
    mean_decode_ns: f64,
}

pub fn simulate(a: &SimulateArgs) -> anyhow::Result<()> {
    a.run.check()?;
    let m = merged(&a.target)?;
    let mut out = sink(a.out.as_deref())?;
    echo(&mut *out, "simulate", a)?;
    let mut w = csv_writer(out);
    let choice: DecoderChoice = a.decoder.into();
    for &p in &a.run.p {
        for &r in &a.run.rounds {
            let g = graph(&m, r, a.run.all_zero_init)?;
            let noise = NoiseModel::uniform(p);
            let dec = Prepared::new(choice, &m, &g, noise, a.run.config()).map_err(|e| Usage(e.to_string()))?;
            let e = summarize(&run_shots(&dec, &g, noise, a.run.seed, a.run.shots), r);
            let (ml, lr) = (e.measurement.per_round(r), e.logical.per_round(r));
            w.serialize(SimRow {
                code: a.target.code.clone(),
                op: a.target.op.clone(),
                kind: a.target.kind,
                decoder: choice.id(),
                p,
                rounds: r,
                shots: e.shots,
                measurement_failures: e.measurement.failures,
                measurement_rate: e.measurement.rate,
                measurement_per_round: ml.rate,
                measurement_lo: ml.lo,
                measurement_hi: ml.hi,
                logical_failures: e.logical.failures,
                logical_rate: e.logical.rate,
                logical_per_round: lr.rate,
                logical_lo: lr.lo,
                logical_hi: lr.hi,
                nonconverged: e.nonconverged,
                mean_decode_ns: e.mean_nanos,
            })?;
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Args, Debug, Serialize)]
pub struct BenchArgs {
    #[command(flatten)]
    #[serde(flatten)]
    target: Target,
    #[command(flatten)]
    #[serde(flatten)]
    run: RunArgs,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "modular,bposd")]
    decoders: Vec<DecoderArg>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct BenchRow {
    p: f64,
    rounds: usize,
    shot: u64,
    decoder: &'static str,
    converged: u8,
    observable_error: u8,
    logical_error: u8,
    nanos: u128,
}

pub fn decode_bench(a: &BenchArgs) -> anyhow::Result<()> {
    a.run.check()?;
    let m = merged(&a.target)?;
    let mut out = sink(a.out.as_deref())?;
    echo(&mut *out, "decode-bench", a)?;
    let mut w = csv_writer(out);
    for &p in &a.run.p {
        for &r in &a.run.rounds {
            let g = graph(&m, r, a.run.all_zero_init)?;
            let noise = NoiseModel::uniform(p);
            for &d in &a.decoders {
                let choice: DecoderChoice = d.into();
                let dec = Prepared::new(choice, &m, &g, noise, a.run.config()).map_err(|e| Usage(e.to_string()))?;
                for s in run_shots(&dec, &g, noise, a.run.seed, a.run.shots) {
                    w.serialize(BenchRow {
                        p,
                        rounds: r,
                        shot: s.shot,
                        decoder: choice.id(),
                        converged: s.converged.into(),
                        observable_error: s.observable_error.into(),
                        logical_error: s.logical_error.into(),
                        nanos: s.nanos,
                    })?;
                }
            }
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Args, Debug, Serialize)]
pub struct SampleArgs {
    #[command(flatten)]
    #[serde(flatten)]
    target: Target,
    #[arg(long = "R", alias = "rounds", default_value_t = 3)]
    rounds: usize,
    #[arg(long, default_value_t = 0.001)]
    p: f64,
    #[arg(long, default_value_t = 100)]
    shots: u64,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    all_zero_init: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn sample(a: &SampleArgs) -> anyhow::Result<()> {
    let m = merged(&a.target)?;
    let g = graph(&m, a.rounds, a.all_zero_init)?;
    let noise = NoiseModel::uniform(a.p);
    let mut out = sink(a.out.as_deref())?;
    echo(&mut *out, "sample", a)?;
    writeln!(out, "# detectors {}, mechanisms {}", g.num_detectors(), g.num_mechanisms())?;
    let mut w = csv_writer(out);
    w.write_record(["shot", "detectors_hex", "observable", "logicals_hex"])?;
    for shot in 0..a.shots {
        let s = gfsurgery::protocol::sample(&g, noise, a.seed, shot);
        w.write_record([shot.to_string(), s.detectors.to_hex(), u8::from(s.observable).to_string(), format!("{:x}", s.logicals)])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Args, Debug, Serialize)]
pub struct CircuitArgs {
    #[command(flatten)]
    #[serde(flatten)]
    target: Target,
    #[arg(long = "R", alias = "rounds", default_value_t = 3)]
    rounds: usize,
    #[arg(long)]
    all_zero_init: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn circuit(a: &CircuitArgs) -> anyhow::Result<()> {
    let m = merged(&a.target)?;
    let g = graph(&m, a.rounds, a.all_zero_init)?;
    let mut out = sink(a.out.as_deref())?;
    echo(&mut *out, "circuit", a)?;
    out.write_all(emit_circuit_text(&g).as_bytes())?;
    Ok(())
}

#[derive(Args, Debug, Serialize)]
pub struct SynthArgs {
    /// Only `gross` has a native set.
    #[arg(long, default_value = "gross")]
    code: String,
    /// Directory for the CSV files.
    #[arg(long, default_value = "synth")]
    out_dir: PathBuf,
    /// Rows per table CSV, lowest words first; 0 writes every reached word.
    #[arg(long, default_value_t = 10_000)]
    rows: usize,
    /// Skip the 12-qubit measurement closure.
    #[arg(long)]
    rotations_only: bool,
}

fn lift(r: &LogicalPauli) -> LogicalPauli {
    let spread = |v: u32| (v & ((1 << PIVOT) - 1)) | (v >> PIVOT) << (PIVOT + 1);
    LogicalPauli::new(spread(r.x), spread(r.z))
}

fn write_table(a: &SynthArgs, name: &str, t: &SynthesisTable) -> anyhow::Result<()> {
    let limit = (a.rows > 0).then_some(a.rows);
    let mut f = sink(Some(&a.out_dir.join(format!("{name}_table.csv"))))?;
    t.write_csv(&mut f, limit)?;
    let mut h = sink(Some(&a.out_dir.join(format!("{name}_histogram.csv"))))?;
    t.write_histogram_csv(&mut h, name)?;
    Ok(())
}

pub fn synth(a: &SynthArgs) -> anyhow::Result<()> {
    if a.code != "gross" {
        bail!(Usage(format!("no native set for {}", a.code)));
    }
    let set = native_set()?;
    let mut out = sink(None)?;
    echo(&mut *out, "synth", a)?;
    writeln!(out, "native measurements: {}", set.measurements.len())?;
    writeln!(out, "useful measurements: {}", set.useful.len())?;
    writeln!(out, "pivot-supported measurements: {}", set.pivot_supported.len())?;
    writeln!(out, "distinct native rotations: {}", set.rotations.len())?;

    std::fs::create_dir_all(&a.out_dir).with_context(|| a.out_dir.display().to_string())?;
    let mut w = csv_writer(sink(Some(&a.out_dir.join("natives.csv")))?);
    w.write_record(["index", "kind", "shift_x", "shift_y", "word_hex", "letters", "useful", "rotation"])?;
    let m = set.num_qubits;
    for (i, n) in set.measurements.iter().enumerate() {
        let rot = set.pivot_supported.iter().position(|&j| j == i).map(|k| set.rotation_of[k].to_string()).unwrap_or_default();
        w.write_record([
            i.to_string(),
            n.kind.tag().to_string(),
            n.shift.0.to_string(),
            n.shift.1.to_string(),
            format!("{:06x}", n.word.word(m)),
            n.word.to_letters(m),
            u8::from(set.useful.contains(&i)).to_string(),
            rot,
        ])?;
    }
    w.flush()?;

    let rot = rotation_closure(m - 1, &set.rotations);
    writeln!(out, "rotation closure: {} of {} words, {} levels, complete: {}", rot.reached(), rot.len() - 1, rot.levels, rot.is_complete())?;
    write_table(a, "rotations", &rot)?;
    if !a.rotations_only {
        let meas: Vec<LogicalPauli> = set.useful.iter().map(|&i| set.measurements[i].word).collect();
        let moves: Vec<LogicalPauli> = set.rotations.iter().map(lift).collect();
        let t = measurement_closure(m, &meas, &moves);
        let pivot_free = t.coverage(|w| LogicalPauli::from_word(w, m).on_qubit(PIVOT) == (false, false));
        writeln!(out, "measurement closure: {} of {} words, {} levels, pivot-free {} of {}", t.reached(), t.len() - 1, t.levels, pivot_free.0, pivot_free.1)?;
        write_table(a, "measurements", &t)?;
    }
    writeln!(out, "tables: {}", a.out_dir.display())?;
    Ok(())
}

#[derive(Args, Debug, Serialize)]
pub struct ReportArgs {
    #[command(flatten)]
    #[serde(flatten)]
    target: Target,
    #[arg(long = "R", alias = "rounds", default_value_t = 3)]
    rounds: usize,
    #[arg(long, default_value_t = 8)]
    wmax: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct Report<'a> {
    config: &'a ReportArgs,
    summary: Summary,
    beta: Option<String>,
    min_layers: Option<usize>,
    detectors: usize,
    mechanisms: usize,
    logical: DistanceEntry,
    measurement: DistanceEntry,
}

pub fn report(a: &ReportArgs) -> anyhow::Result<()> {
    let (code, op, _) = load(&a.target)?;
    let m = merged(&a.target)?;
    let beta = match pure_kind(&op) {
        Ok(kind) => boundary_cheeger(&induced_graph(&code.code, &op, kind)?.f, CHEEGER_CAP).ok().map(|c| c.beta),
        Err(_) => None,
    };
    let g = graph(&m, a.rounds, false)?;
    let f = subsystem_fault_distances(&m, a.rounds, InitMode::Module, a.wmax)?;
    let report = Report {
        config: a,
        summary: summarize_code(&m),
        beta: beta.map(|b| b.to_string()),
        min_layers: beta.and_then(|b| min_layers(b).ok()),
        detectors: g.num_detectors(),
        mechanisms: g.num_mechanisms(),
        logical: (&f.logical).into(),
        measurement: (&f.measurement).into(),
    };
    let mut out = sink(a.out.as_deref())?;
    serde_json::to_writer_pretty(&mut out, &report)?;
    writeln!(out)?;
    Ok(())
}
