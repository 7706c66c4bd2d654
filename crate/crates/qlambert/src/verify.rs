//! Randomized exact verification of catalog identities.
//!
//! Each trial draws rational coefficients for the record's parameters from a
//! seeded generator (|c| < 1 always; the record's constraints by rejection),
//! evaluates both sides at the working degree, and compares them per the
//! record's mode. Comparison is exact, so any mismatch is a real bug or a
//! real counterexample, and everything is deterministic given
//! (record, degree, trials, seed).

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::catalog::{
    ComparisonMode, Constraint, IdentityRecord, SubseqTarget,
};
use crate::dsl::eval::{eval, eval_int, Bindings};
use crate::error::{Error, Result};
use crate::numtheory::{sigma, weighted_divisor_sum};
use crate::param::Param;
use crate::scalar::Rational;

/// Small deterministic generator (splitmix64); stable across platforms and
/// releases so reports are reproducible byte for byte.
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

const MAX_REJECTS: usize = 1000;

/// Draw coefficients for every sampled parameter of a record.
///
/// Deterministic per (seed, trial): identical inputs give identical
/// bindings. Rationals are p/r with 1 ≤ r ≤ 16 and |p| < r; draws violating
/// a constraint are rejected, and an unsatisfiable constraint set errors out
/// after a bounded number of rejects.
pub fn sample_params(
    record: &IdentityRecord,
    seed: u64,
    trial: u32,
) -> Result<BTreeMap<String, Param<Rational>>> {
    let mut rng = SplitMix64::new(
        seed.wrapping_add((trial as u64 + 1).wrapping_mul(0xA076_1D64_78BD_642F)),
    );
    let mut out: BTreeMap<String, Param<Rational>> = BTreeMap::new();
    for spec in &record.params {
        let pinned_zero = spec.constraints.contains(&Constraint::Zero);
        let mut accepted = None;
        for _ in 0..MAX_REJECTS {
            let c = if pinned_zero {
                Rational::zero()
            } else {
                let r = 1 + (rng.next_u64() % 16) as i64;
                let span = (2 * r - 1) as u64;
                let p = (rng.next_u64() % span) as i64 - (r - 1);
                Rational::ratio(p, r)
            };
            let ok = spec.constraints.iter().all(|con| match con {
                Constraint::NonZero => !c.is_zero(),
                Constraint::NotOne => !c.is_one(),
                Constraint::Zero => c.is_zero(),
                Constraint::NotEqual(other) => {
                    out.get(other).map(|p| p.coeff != c).unwrap_or(true)
                }
            });
            if ok {
                accepted = Some(c);
                break;
            }
        }
        match accepted {
            Some(c) => {
                out.insert(spec.name.clone(), Param::new(c, 0));
            }
            None => {
                return Err(Error::SamplingExhausted {
                    param: spec.name.clone(),
                    attempts: MAX_REJECTS,
                })
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One failed comparison: the sampled bindings and the first differing
/// coefficient, exactly.
#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub trial: u32,
    pub bindings: BTreeMap<String, String>,
    pub k: usize,
    pub lhs: String,
    pub rhs: String,
}

/// Verification outcome for one record.
#[derive(Clone, Debug, Serialize)]
pub struct RecordReport {
    pub identity: String,
    pub status: Status,
    pub degree: usize,
    pub trials: u32,
    pub seed: u64,
    pub failures: Vec<Failure>,
    /// Wall time; excluded from the determinism guarantee.
    pub millis: u64,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Working degree; defaults to each record's own.
    pub degree: Option<usize>,
    pub trials: u32,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            degree: None,
            trials: 5,
            seed: 0,
        }
    }
}

fn render_bindings(
    params: &BTreeMap<String, Param<Rational>>,
    ints: &BTreeMap<String, i64>,
) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    for (name, p) in params {
        out.insert(name.clone(), p.to_string());
    }
    for (name, v) in ints {
        out.insert(name.clone(), v.to_string());
    }
    out
}

/// First differing coefficient under the record's comparison mode, or the
/// evaluation error, if any.
fn compare(
    record: &IdentityRecord,
    degree: usize,
    bindings: &Bindings,
) -> Result<Option<(usize, String, String)>> {
    match &record.mode {
        ComparisonMode::Equal => {
            let lhs = eval(&record.lhs, degree, bindings)?;
            let rhs = eval(&record.rhs, degree, bindings)?;
            for k in 0..=degree {
                if lhs.coeff(k) != rhs.coeff(k) {
                    return Ok(Some((k, lhs.coeff(k).to_string(), rhs.coeff(k).to_string())));
                }
            }
            Ok(None)
        }
        ComparisonMode::OddFunction => {
            let lhs = eval(&record.lhs, degree, bindings)?;
            for k in (0..=degree).step_by(2) {
                if !lhs.coeff(k).is_zero() {
                    return Ok(Some((k, lhs.coeff(k).to_string(), "0".to_string())));
                }
            }
            Ok(None)
        }
        ComparisonMode::EvenCoeffEqual => {
            let lhs = eval(&record.lhs, degree, bindings)?;
            let rhs = eval(&record.rhs, degree, bindings)?;
            for k in (0..=degree).step_by(2) {
                if lhs.coeff(k) != rhs.coeff(k) {
                    return Ok(Some((k, lhs.coeff(k).to_string(), rhs.coeff(k).to_string())));
                }
            }
            Ok(None)
        }
        ComparisonMode::SubseqEquals { stride, target } => {
            let s = eval_int(stride, bindings)?;
            if s < 1 {
                return Err(Error::Config(format!(
                    "record `{}`: subseq stride must be >= 1, got {s}",
                    record.id
                )));
            }
            let s = s as usize;
            let lhs = eval(&record.lhs, degree, bindings)?;
            let rhs = eval(&record.rhs, degree, bindings)?;
            let mut n = 1usize;
            while n * s <= degree {
                let want = match target {
                    SubseqTarget::Sigma1 => Rational::from_bigint(sigma(1, n as u64)),
                    SubseqTarget::WeightedDivisorSum { param } => {
                        let p = bindings.params.get(param).ok_or_else(|| {
                            Error::UnboundParam(param.clone())
                        })?;
                        weighted_divisor_sum(n as u64, &p.coeff)
                    }
                };
                for side in [&lhs, &rhs] {
                    if side.coeff(n * s) != &want {
                        return Ok(Some((
                            n * s,
                            side.coeff(n * s).to_string(),
                            want.to_string(),
                        )));
                    }
                }
                n += 1;
            }
            Ok(None)
        }
    }
}

/// All integer-parameter assignments of a record (the full cartesian
/// product; in practice at most one index).
fn int_assignments(record: &IdentityRecord) -> Vec<BTreeMap<String, i64>> {
    let mut out = vec![BTreeMap::new()];
    for spec in &record.int_params {
        let mut next = Vec::new();
        for assignment in &out {
            for v in spec.lo..=spec.hi {
                let mut a = assignment.clone();
                a.insert(spec.name.clone(), v);
                next.push(a);
            }
        }
        out = next;
    }
    out
}

/// Run every trial of one record at the working degree.
pub fn verify_record(record: &IdentityRecord, opts: &VerifyOptions) -> RecordReport {
    let degree = opts.degree.unwrap_or(record.default_degree);
    let start = Instant::now();
    let mut failures = Vec::new();

    'trials: for trial in 0..opts.trials {
        let params = match sample_params(record, opts.seed, trial) {
            Ok(p) => p,
            Err(e) => {
                failures.push(Failure {
                    trial,
                    bindings: BTreeMap::new(),
                    k: 0,
                    lhs: format!("sampling error: {e}"),
                    rhs: String::new(),
                });
                break 'trials; // the same constraint set fails every trial
            }
        };
        for ints in int_assignments(record) {
            let bindings = Bindings {
                params: params.clone(),
                ints: ints.clone(),
            };
            match compare(record, degree, &bindings) {
                Ok(None) => {}
                Ok(Some((k, lhs, rhs))) => failures.push(Failure {
                    trial,
                    bindings: render_bindings(&params, &ints),
                    k,
                    lhs,
                    rhs,
                }),
                Err(e) => failures.push(Failure {
                    trial,
                    bindings: render_bindings(&params, &ints),
                    k: 0,
                    lhs: format!("evaluation error: {e}"),
                    rhs: String::new(),
                }),
            }
        }
    }

    RecordReport {
        identity: record.id.clone(),
        status: if failures.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        },
        degree,
        trials: opts.trials,
        seed: opts.seed,
        failures,
        millis: start.elapsed().as_millis() as u64,
    }
}

/// Verify a set of records; reports come back sorted by id.
pub fn verify_all(records: &[IdentityRecord], opts: &VerifyOptions) -> Vec<RecordReport> {
    let mut sorted: Vec<&IdentityRecord> = records.iter().collect();
    sorted.sort_by(|a, b| a.id.cmp(&b.id));
    sorted.into_iter().map(|r| verify_record(r, opts)).collect()
}
