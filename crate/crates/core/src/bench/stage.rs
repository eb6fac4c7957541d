use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::data::load_atlas_csv;
use crate::circuits::{AnsatzSpec, FeatureMapSpec};
use crate::error::{Error, Result};
use crate::optimize::{InitialPoint, OptimizerConfig};
use crate::preprocess::{
    balanced_sample, impute_median, stratified_split, EventRecord, Label, PcaModel, Sample, ScalerModel, TestPartition,
    TrainPartition,
};
use crate::vqc::{Metrics, Readout, VqcModel};

pub const DEFAULT_DATA_SEED: u64 = 42;
pub const DEFAULT_MAXITER: usize = 100;
pub const EVENTS_PER_CLASS: usize = 400;
pub const TEST_FRACTION: f64 = 0.2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum StageId {
    A,
    B,
    C,
}

impl StageId {
    pub const ALL: [StageId; 3] = [StageId::A, StageId::B, StageId::C];

    /// `(latent dimension = qubits, ansatz depth)`.
    pub fn shape(self) -> (usize, usize) {
        match self {
            StageId::A => (4, 1),
            StageId::B => (4, 2),
            StageId::C => (8, 1),
        }
    }
}

impl fmt::Display for StageId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StageId::A => "A",
            StageId::B => "B",
            StageId::C => "C",
        })
    }
}

impl FromStr for StageId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(StageId::A),
            "B" => Ok(StageId::B),
            "C" => Ok(StageId::C),
            other => Err(Error::Config(format!("unknown stage {other:?} (expected A, B or C)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageConfig {
    pub stage: StageId,
    pub n_qubits: usize,
    pub depth: usize,
    pub feature_map_reps: usize,
    pub optimizer: OptimizerConfig,
    pub data_seed: u64,
    pub opt_seed: u64,
    #[serde(default)]
    pub readout: Readout,
}

impl StageConfig {
    /// COBYLA from a uniform `[0, 2π)` start drawn with `opt_seed`.
    pub fn new(stage: StageId, data_seed: u64, opt_seed: u64, maxiter: usize) -> Self {
        let (n_qubits, depth) = stage.shape();
        Self {
            stage,
            n_qubits,
            depth,
            feature_map_reps: 1,
            optimizer: OptimizerConfig::cobyla(maxiter, InitialPoint::UniformPeriod { seed: opt_seed }),
            data_seed,
            opt_seed,
            readout: Readout::Exact,
        }
    }

    pub fn n_params(&self) -> usize {
        self.n_qubits * (self.depth + 1)
    }

    pub fn model(&self) -> Result<VqcModel> {
        let fm = FeatureMapSpec::new(self.n_qubits).with_reps(self.feature_map_reps);
        let mut model = VqcModel::new(fm, AnsatzSpec::new(self.n_qubits, self.depth))?;
        model.readout = self.readout;
        Ok(model)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Seeds {
    pub data: u64,
    pub optimizer: u64,
}

/// Summary of one trained stage. Field names double as the JSON schema.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub stage: StageId,
    pub n_qubits: usize,
    pub reps: usize,
    pub n_params: usize,
    pub train_accuracy: f64,
    pub test_accuracy: f64,
    /// Test partition, `[[TN, FP], [FN, TP]]`.
    pub confusion_matrix: [[u64; 2]; 2],
    pub train_confusion_matrix: [[u64; 2]; 2],
    /// `(evaluation index, loss)` for every objective call.
    pub loss_history: Vec<(usize, f64)>,
    pub best_loss: f64,
    pub evaluations: usize,
    pub seeds: Seeds,
    pub wall_time_s: f64,
    pub config: StageConfig,
    pub params: Vec<f64>,
}

/// One test event in the first two principal components.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScatterRow {
    pub pc1: f64,
    pub pc2: f64,
    pub true_label: u8,
    pub predicted_label: u8,
}

#[derive(Clone, Debug)]
pub struct StageOutcome {
    pub report: BenchReport,
    pub scatter: Vec<ScatterRow>,
    pub model: VqcModel,
}

/// Latent-space partitions produced by the classical pipeline.
#[derive(Clone, Debug)]
pub struct PreparedData {
    pub train: TrainPartition<Sample>,
    pub test: TestPartition<Sample>,
    pub scaler: ScalerModel,
    pub pca: PcaModel,
}

/// Loads the CSV and imputes sentinels with per-feature medians over all rows.
pub fn load_imputed(path: &Path) -> Result<Vec<EventRecord>> {
    let mut events = load_atlas_csv(path)?;
    impute_median(&mut events)?;
    Ok(events)
}

/// Sample, split, scale and project. Fitting touches only the train rows.
pub fn prepare_data(events: &[EventRecord], k: usize, data_seed: u64) -> Result<PreparedData> {
    let sampled = balanced_sample(events, EVENTS_PER_CLASS, data_seed)?;
    let (train, test) = stratified_split(sampled, TEST_FRACTION, data_seed)?;
    let train_x = train.map(|e| e.features.to_vec());
    let scaler = ScalerModel::fit(&train_x)?;
    let train_scaled = TrainPartition::new(scaler.transform(train_x.rows())?);
    let pca = PcaModel::fit(&train_scaled, k)?;

    let to_samples = |rows: &[EventRecord]| -> Result<Vec<Sample>> {
        rows.iter()
            .map(|e| {
                let scaled = scaler.transform_row(&e.features)?;
                Ok(Sample { features: pca.project_row(&scaled)?, label: e.label })
            })
            .collect()
    };
    let train = TrainPartition::new(to_samples(train.rows())?);
    let test = TestPartition::new(to_samples(test.rows())?);
    Ok(PreparedData { train, test, scaler, pca })
}

/// Full stage from a CSV path.
pub fn run_stage(cfg: &StageConfig, data_path: &Path) -> Result<StageOutcome> {
    let events = load_imputed(data_path).map_err(|e| stage_error(cfg.stage, e))?;
    run_stage_on(cfg, &events)
}

/// Full stage on already imputed events.
pub fn run_stage_on(cfg: &StageConfig, events: &[EventRecord]) -> Result<StageOutcome> {
    let data = prepare_data(events, cfg.n_qubits, cfg.data_seed).map_err(|e| stage_error(cfg.stage, e))?;
    train_stage(cfg, &data).map_err(|e| stage_error(cfg.stage, e))
}

/// Trains and evaluates on prepared partitions.
pub fn train_stage(cfg: &StageConfig, data: &PreparedData) -> Result<StageOutcome> {
    if data.pca.n_components() != cfg.n_qubits {
        return Err(Error::Dimension { expected: cfg.n_qubits, actual: data.pca.n_components() });
    }
    let start = Instant::now();
    let (model, opt) = cfg.model()?.fit(data.train.rows(), &cfg.optimizer)?;
    let train_metrics = model.evaluate(data.train.rows())?;
    let test_predictions = model.predictions(data.test.rows())?;
    let truth: Vec<Label> = data.test.rows().iter().map(|s| s.label).collect();
    let test_metrics = Metrics::from_labels(&truth, &test_predictions);
    let wall_time_s = start.elapsed().as_secs_f64();

    let scatter = data
        .test
        .rows()
        .iter()
        .zip(&test_predictions)
        .map(|(s, p)| ScatterRow {
            pc1: s.features[0],
            pc2: s.features.get(1).copied().unwrap_or(0.0),
            true_label: s.label.as_u8(),
            predicted_label: p.as_u8(),
        })
        .collect();

    let report = BenchReport {
        stage: cfg.stage,
        n_qubits: cfg.n_qubits,
        reps: cfg.depth,
        n_params: model.n_params(),
        train_accuracy: train_metrics.accuracy,
        test_accuracy: test_metrics.accuracy,
        confusion_matrix: test_metrics.confusion_matrix,
        train_confusion_matrix: train_metrics.confusion_matrix,
        loss_history: opt.loss_history,
        best_loss: opt.best_loss,
        evaluations: opt.evaluations_used,
        seeds: Seeds { data: cfg.data_seed, optimizer: cfg.opt_seed },
        wall_time_s,
        config: cfg.clone(),
        params: model.params.to_vec(),
    };
    Ok(StageOutcome { report, scatter, model })
}

/// Median test accuracy per stage over several optimizer seeds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub stage: StageId,
    pub opt_seeds: Vec<u64>,
    pub test_accuracies: Vec<f64>,
    pub median_test_accuracy: f64,
}

/// Runs every `(stage, seed)` trial in parallel. The classical pipeline is
/// computed once per latent width since it does not depend on the circuit.
pub fn run_sweep(
    stages: &[StageId],
    opt_seeds: &[u64],
    events: &[EventRecord],
    data_seed: u64,
    maxiter: usize,
    readout: Readout,
) -> Result<(Vec<StageOutcome>, Vec<SweepSummary>)> {
    if opt_seeds.is_empty() {
        return Err(Error::Config("sweep needs at least one optimizer seed".into()));
    }
    let mut widths: Vec<usize> = stages.iter().map(|s| s.shape().0).collect();
    widths.sort_unstable();
    widths.dedup();
    let prepared: Vec<(usize, PreparedData)> =
        widths.into_iter().map(|k| prepare_data(events, k, data_seed).map(|d| (k, d))).collect::<Result<_>>()?;

    let trials: Vec<StageConfig> = stages
        .iter()
        .flat_map(|&stage| {
            opt_seeds.iter().map(move |&seed| {
                let mut cfg = StageConfig::new(stage, data_seed, seed, maxiter);
                cfg.readout = readout;
                cfg
            })
        })
        .collect();
    let outcomes: Vec<StageOutcome> = trials
        .par_iter()
        .map(|cfg| {
            let data = &prepared.iter().find(|(k, _)| *k == cfg.n_qubits).expect("width prepared").1;
            train_stage(cfg, data).map_err(|e| stage_error(cfg.stage, e))
        })
        .collect::<Result<_>>()?;

    let summaries = stages
        .iter()
        .map(|&stage| {
            let accs: Vec<f64> =
                outcomes.iter().filter(|o| o.report.stage == stage).map(|o| o.report.test_accuracy).collect();
            SweepSummary {
                stage,
                opt_seeds: opt_seeds.to_vec(),
                median_test_accuracy: median_of(&accs),
                test_accuracies: accs,
            }
        })
        .collect();
    Ok((outcomes, summaries))
}

fn median_of(values: &[f64]) -> f64 {
    crate::preprocess::median(values).unwrap_or(f64::NAN)
}

fn stage_error(stage: StageId, source: Error) -> Error {
    match source {
        Error::Stage { .. } => source,
        other => Error::Stage { stage: stage.to_string(), source: Box::new(other) },
    }
}
