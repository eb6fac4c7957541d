//! Shared test fixtures: a dense Kronecker-product simulator used as an
//! oracle, random circuit generation and synthetic datasets.
#![allow(dead_code)]

use std::f64::consts::{FRAC_1_SQRT_2, TAU};
use std::io::Write;
use std::path::Path;

use higgs_vqc::bench::FEATURE_COLUMNS;
use higgs_vqc::circuits::{AnsatzSpec, FeatureMapSpec};
use higgs_vqc::optimize::{InitialPoint, OptimizerConfig};
use higgs_vqc::preprocess::{Label, Sample};
use higgs_vqc::qsim::{Angle, GateOp};
use higgs_vqc::vqc::VqcModel;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type CMat = DMatrix<Complex64>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn mat2(a: [Complex64; 4]) -> CMat {
    DMatrix::from_row_slice(2, 2, &a)
}

pub fn identity2() -> CMat {
    CMat::identity(2, 2)
}

pub fn hadamard() -> CMat {
    let h = c(FRAC_1_SQRT_2, 0.0);
    mat2([h, h, h, -h])
}

pub fn ry(theta: f64) -> CMat {
    let (s, co) = (theta / 2.0).sin_cos();
    mat2([c(co, 0.0), c(-s, 0.0), c(s, 0.0), c(co, 0.0)])
}

pub fn phase(lambda: f64) -> CMat {
    mat2([c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), Complex64::from_polar(1.0, lambda)])
}

fn pauli_x() -> CMat {
    mat2([c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
}

fn projector(bit: usize) -> CMat {
    let mut m = CMat::zeros(2, 2);
    m[(bit, bit)] = c(1.0, 0.0);
    m
}

/// `⊗` over qubits with qubit `n-1` leftmost, so qubit 0 is the least
/// significant bit of the basis index.
pub fn embed(n: usize, factors: &[(usize, CMat)]) -> CMat {
    let mut out = CMat::identity(1, 1);
    for q in (0..n).rev() {
        let f = factors.iter().find(|(fq, _)| *fq == q).map_or_else(identity2, |(_, m)| m.clone());
        out = out.kronecker(&f);
    }
    out
}

fn bound(angle: Angle) -> f64 {
    match angle {
        Angle::Bound(v) => v,
        Angle::Symbol(_) => panic!("oracle needs bound angles"),
    }
}

pub fn gate_matrix(n: usize, op: &GateOp) -> CMat {
    match *op {
        GateOp::H { qubit } => embed(n, &[(qubit, hadamard())]),
        GateOp::Ry { qubit, theta } => embed(n, &[(qubit, ry(bound(theta)))]),
        GateOp::Phase { qubit, lambda } => embed(n, &[(qubit, phase(bound(lambda)))]),
        GateOp::Cnot { control, target } => {
            embed(n, &[(control, projector(0))]) + embed(n, &[(control, projector(1)), (target, pauli_x())])
        }
    }
}

pub fn circuit_unitary(n: usize, ops: &[GateOp]) -> CMat {
    ops.iter().fold(CMat::identity(1 << n, 1 << n), |u, op| gate_matrix(n, op) * u)
}

pub fn zero_state(n: usize) -> DVector<Complex64> {
    let mut v = DVector::zeros(1 << n);
    v[0] = c(1.0, 0.0);
    v
}

pub fn oracle_run(n: usize, ops: &[GateOp]) -> DVector<Complex64> {
    circuit_unitary(n, ops) * zero_state(n)
}

/// `Σ |a_b|² (−1)^{popcount b}` by explicit enumeration of basis states.
pub fn oracle_parity(amps: &[Complex64]) -> f64 {
    let mut total = 0.0;
    for (b, a) in amps.iter().enumerate() {
        let mut ones = 0;
        let mut rest = b;
        while rest > 0 {
            ones += rest & 1;
            rest >>= 1;
        }
        let sign = if ones % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * a.norm_sqr();
    }
    total
}

pub fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn random_gate(rng: &mut impl Rng, n: usize) -> GateOp {
    let q = rng.random_range(0..n);
    match rng.random_range(0..if n > 1 { 4 } else { 3 }) {
        0 => GateOp::H { qubit: q },
        1 => GateOp::ry(q, rng.random_range(-TAU..TAU)),
        2 => GateOp::phase(q, rng.random_range(-TAU..TAU)),
        _ => {
            let mut t = rng.random_range(0..n - 1);
            if t >= q {
                t += 1;
            }
            GateOp::Cnot { control: q, target: t }
        }
    }
}

pub fn random_state(rng: &mut impl Rng, n: usize) -> Vec<Complex64> {
    let mut v: Vec<Complex64> =
        (0..1 << n).map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
    let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|a| *a /= norm);
    v
}

/// Two isotropic Gaussian blobs in `[0,1]^4` whose centers are distance 1 apart.
pub fn gaussian_blobs(per_class: usize, sigma: f64, seed: u64) -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let center = |label: Label| -> [f64; 4] {
        match label {
            Label::Background => [0.25; 4],
            Label::Signal => [0.75; 4],
        }
    };
    let mut out = Vec::with_capacity(2 * per_class);
    for _ in 0..per_class {
        for label in [Label::Background, Label::Signal] {
            let features = center(label).iter().map(|m| m + sigma * standard_normal(&mut rng)).collect();
            out.push(Sample { features, label });
        }
    }
    out
}

pub fn standard_normal(rng: &mut impl Rng) -> f64 {
    let u1: f64 = rng.random_range(f64::EPSILON..1.0);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (TAU * u2).cos()
}

/// Writes an ATLAS-layout CSV with `rows` events. Signal rows have a small
/// shift in a few features; about a third of rows carry `-999.0` in the
/// jet columns, as in the real file.
pub fn write_synthetic_atlas(path: &Path, rows: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = std::io::BufWriter::new(std::fs::File::create(path).unwrap());
    let header: Vec<&str> = std::iter::once("EventId").chain(FEATURE_COLUMNS).chain(["Weight", "Label"]).collect();
    writeln!(f, "{}", header.join(",")).unwrap();
    for i in 0..rows {
        let signal = rng.random_bool(0.35);
        let no_jets = rng.random_bool(0.3);
        let mut cells = vec![(100_000 + i).to_string()];
        for (j, name) in FEATURE_COLUMNS.iter().enumerate() {
            let undefined = no_jets && (name.contains("jet") && *name != "PRI_jet_num" && *name != "PRI_jet_all_pt");
            if undefined || (j == 0 && rng.random_bool(0.15)) {
                cells.push("-999.0".into());
                continue;
            }
            let shift = if signal && j % 5 == 0 { 0.6 } else { 0.0 };
            let v = 50.0 + 20.0 * (standard_normal(&mut rng) + shift) + j as f64;
            cells.push(format!("{v:.4}"));
        }
        cells.push(format!("{:.6}", rng.random_range(0.001..5.0)));
        cells.push(if signal { "s" } else { "b" }.into());
        writeln!(f, "{}", cells.join(",")).unwrap();
    }
}

pub fn stage_b() -> VqcModel {
    VqcModel::new(FeatureMapSpec::new(4), AnsatzSpec::new(4, 2)).unwrap()
}

pub fn blob_split(seed: u64) -> (Vec<Sample>, Vec<Sample>) {
    (gaussian_blobs(50, 0.05, seed), gaussian_blobs(20, 0.05, seed + 1000))
}

/// Test accuracy of Stage-B models trained on the blobs, one per seed.
pub fn blob_accuracies(seeds: &[u64]) -> Vec<f64> {
    seeds
        .iter()
        .map(|&seed| {
            let (train, test) = blob_split(seed);
            let cfg = OptimizerConfig::cobyla(150, InitialPoint::UniformPeriod { seed });
            let (model, res) = stage_b().fit(&train, &cfg).unwrap();
            assert!(res.evaluations_used <= 150);
            model.evaluate(&test).unwrap().accuracy
        })
        .collect()
}
