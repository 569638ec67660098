use std::path::Path;

use serde::Serialize;

use qss_core::encoding::run_reconstruction;
use qss_core::{
    encode_secret, plan_reconstruction, random_secret, synthesize_reconstruction, Circuit, EncodingConvention, Error,
    ShareIndexSet, SimLimits, StabilizerCodeSpec,
};

use crate::io::{load_spec, share_set, write_atomically, CliError};

/// Fidelity and purity tolerance for a passing sweep.
pub const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub p: u32,
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    pub trials: usize,
    pub rows: Vec<SetRow>,
    pub summary: Summary,
}

#[derive(Debug, Serialize)]
pub struct SetRow {
    pub set: Vec<usize>,
    pub trials: usize,
    pub min_fidelity: f64,
    pub max_purity_deviation: f64,
    pub two_qudit_gates: usize,
    pub single_qudit_gates: usize,
    /// Secret seed of the trial with the lowest fidelity.
    pub worst_seed: u64,
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub sets: usize,
    pub min_fidelity: Option<f64>,
    pub max_purity_deviation: f64,
    pub max_two_qudit_gates: usize,
    pub passed: bool,
}

impl VerifyReport {
    /// The first failing row, if any.
    pub fn first_failure(&self) -> Option<&SetRow> {
        self.rows
            .iter()
            .find(|r| r.min_fidelity < 1.0 - TOLERANCE || r.max_purity_deviation > TOLERANCE)
    }
}

/// Seed of the secret used in trial `t`.
pub fn trial_seed(seed: u64, t: usize) -> u64 {
    seed.wrapping_add(t as u64)
}

/// Sweeps `sets` (or every qualified set) with `trials` random secrets each.
pub fn sweep(
    code: &StabilizerCodeSpec,
    sets: Option<Vec<ShareIndexSet>>,
    trials: usize,
    seed: u64,
    limits: &SimLimits,
) -> Result<VerifyReport, CliError> {
    let conv = EncodingConvention::standard(code)?;
    let sets = match sets {
        Some(s) => s,
        None if trials == 0 => vec![],
        None => code.all_qualified_sets()?,
    };
    let mut circuits: Vec<(ShareIndexSet, Circuit)> = Vec::with_capacity(sets.len());
    for j in sets {
        let plan = match plan_reconstruction(code, &conv, &j) {
            Err(Error::NotCorrectable { .. }) => return Err(CliError::NotCorrectable(j)),
            other => other?,
        };
        circuits.push((j, synthesize_reconstruction(&plan)?));
    }
    let mut rows: Vec<SetRow> = circuits
        .iter()
        .map(|(j, c)| SetRow {
            set: j.members().to_vec(),
            trials: 0,
            min_fidelity: f64::INFINITY,
            max_purity_deviation: 0.0,
            two_qudit_gates: c.two_qudit_count(),
            single_qudit_gates: c.single_qudit_count(),
            worst_seed: seed,
        })
        .collect();
    if !circuits.is_empty() {
        for t in 0..trials {
            let s = trial_seed(seed, t);
            let secret = random_secret(code.field(), code.k(), s, limits)?;
            let encoded = encode_secret(code, &conv, &secret, limits)?;
            for ((j, c), row) in circuits.iter().zip(rows.iter_mut()) {
                let r = run_reconstruction(c, j, &encoded, &secret, limits)?;
                log::debug!(
                    "J = {j}, seed {s}: fidelity {:.12}, purity {:.12}",
                    r.fidelity,
                    r.purity
                );
                row.trials += 1;
                if r.fidelity < row.min_fidelity {
                    row.min_fidelity = r.fidelity;
                    row.worst_seed = s;
                }
                row.max_purity_deviation = row.max_purity_deviation.max((1.0 - r.purity).abs());
            }
        }
    }
    // rows without trials carry no fidelity information
    rows.retain(|r| r.trials > 0);
    let min_fidelity = rows.iter().map(|r| r.min_fidelity).reduce(f64::min);
    let max_purity_deviation = rows.iter().map(|r| r.max_purity_deviation).fold(0.0, f64::max);
    let mut report = VerifyReport {
        p: code.p(),
        n: code.n(),
        k: code.k(),
        seed,
        trials,
        summary: Summary {
            sets: rows.len(),
            min_fidelity,
            max_purity_deviation,
            max_two_qudit_gates: rows.iter().map(|r| r.two_qudit_gates).max().unwrap_or(0),
            passed: true,
        },
        rows,
    };
    report.summary.passed = report.first_failure().is_none();
    Ok(report)
}

pub fn run(
    spec: &Path,
    trials: usize,
    seed: u64,
    set: Option<&[usize]>,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let code = load_spec(spec)?;
    let sets = set.map(|s| share_set(code.n(), s)).transpose()?.map(|j| vec![j]);
    let report = sweep(&code, sets, trials, seed, &SimLimits::from_env())?;
    if let Some(bad) = report.first_failure() {
        let msg = format!(
            "reconstruction failed for J = {:?}, seed {}: fidelity {:.12}, purity deviation {:.3e}",
            bad.set, bad.worst_seed, bad.min_fidelity, bad.max_purity_deviation
        );
        return Err(CliError::VerifyFailed(msg));
    }
    let json = serde_json::to_string_pretty(&report).map_err(|e| CliError::Other(e.to_string()))? + "\n";
    match output {
        Some(path) => write_atomically(path, &json)?,
        None => print!("{json}"),
    }
    Ok(())
}
