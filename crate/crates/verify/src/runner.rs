use std::time::Instant;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalogue::{self, Env, Identity, Params, Sample};
use crate::sampling::{sample_points, Guards};
use crate::{HarnessError, SuiteConfig};

/// Resamples tried after an excluded point before giving up on it.
pub const MAX_RESAMPLES: usize = 5;
/// Exclusion fraction above which the run carries a configuration warning.
pub const EXCLUSION_WARNING: f64 = 0.10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Singular point: neither pass nor fail.
    Excluded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub identity: &'static str,
    pub point: usize,
    /// 0 for the original sample, `k` for the k-th resample after exclusions.
    pub attempt: usize,
    pub params: Params,
    /// `None` for excluded points.
    pub residual: Option<f64>,
    pub threshold: f64,
    pub status: Status,
    pub ms: f64,
}

impl IdentityReport {
    pub fn pass(&self) -> Option<bool> {
        match self.status {
            Status::Pass => Some(true),
            Status::Fail => Some(false),
            Status::Excluded => None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SuiteRun {
    pub reports: Vec<IdentityReport>,
    pub warnings: Vec<String>,
}

impl SuiteRun {
    pub fn all_pass(&self) -> bool {
        self.reports.iter().all(|r| r.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityReport> {
        self.reports.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn of<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a IdentityReport> + 'a {
        self.reports.iter().filter(move |r| r.identity == id)
    }
}

/// How the independent (identity, point) evaluations are scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Executor {
    Sequential,
    /// Rayon over evaluations; sequential when built without `parallel`.
    Parallel,
}

impl Default for Executor {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Executor::Parallel
        } else {
            Executor::Sequential
        }
    }
}

pub fn run_suite(config: &SuiteConfig) -> Result<SuiteRun, HarnessError> {
    run_suite_with(config, Executor::default())
}

pub fn run_suite_with(config: &SuiteConfig, executor: Executor) -> Result<SuiteRun, HarnessError> {
    config.validate()?;
    let env = Env::new(config)?;
    let guards = Guards::new(config.r, env.ctx.tau());
    let samples: Vec<Sample> =
        sample_points(config.seed, config.points, &guards)?.into_iter().map(|(u, v)| Sample { u, v }).collect();
    let identities = catalogue::select(&config.selected_suites());
    let tasks: Vec<(&Identity, usize)> =
        identities.iter().flat_map(|id| (0..id.evaluations(config.points)).map(move |i| (id, i))).collect();
    let job = |&(identity, index): &(&Identity, usize)| evaluate_point(&env, &guards, config, identity, index, &samples);
    let nested: Vec<Result<Vec<IdentityReport>, HarnessError>> = match executor {
        Executor::Sequential => tasks.iter().map(job).collect(),
        Executor::Parallel => parallel_map(&tasks, job),
    };
    let mut reports = Vec::new();
    for r in nested {
        reports.extend(r?);
    }
    reports.sort_by(|a, b| (a.identity, a.point, a.attempt).cmp(&(b.identity, b.point, b.attempt)));
    let warnings = exclusion_warnings(&reports);
    Ok(SuiteRun { reports, warnings })
}

#[cfg(feature = "parallel")]
fn parallel_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T, R>(items: &[T], f: impl Fn(&T) -> R) -> Vec<R> {
    items.iter().map(f).collect()
}

/// One evaluation, followed by deterministic resamples while it lands on a
/// singular point.
fn evaluate_point(
    env: &Env,
    guards: &Guards,
    config: &SuiteConfig,
    identity: &Identity,
    index: usize,
    samples: &[Sample],
) -> Result<Vec<IdentityReport>, HarnessError> {
    let threshold = identity.threshold(config.tol);
    let mut sample = samples[identity.sample_index(index)];
    let mut out = Vec::new();
    for attempt in 0..=MAX_RESAMPLES {
        let start = Instant::now();
        let outcome = identity.evaluate(env, index, sample);
        let ms = start.elapsed().as_secs_f64() * 1e3;
        match outcome {
            Ok(o) => {
                let status = if o.residual < threshold { Status::Pass } else { Status::Fail };
                out.push(IdentityReport {
                    identity: identity.id,
                    point: index,
                    attempt,
                    params: o.params,
                    residual: Some(o.residual),
                    threshold,
                    status,
                    ms,
                });
                return Ok(out);
            }
            Err(e) if catalogue::is_exclusion(&e) => {
                let params = Params::new().complex("u", sample.u).complex("v", sample.v);
                out.push(IdentityReport {
                    identity: identity.id,
                    point: index,
                    attempt,
                    params,
                    residual: None,
                    threshold,
                    status: Status::Excluded,
                    ms,
                });
                if !identity.is_sampled() {
                    return Ok(out);
                }
                let seed = resample_seed(config.seed, identity.id, index, attempt);
                let (u, v) = sample_points(seed, 1, guards)?[0];
                sample = Sample { u, v };
            }
            Err(_) => {
                // a structural error is a failure of the identity, not a singular point
                out.push(IdentityReport {
                    identity: identity.id,
                    point: index,
                    attempt,
                    params: Params::new().complex("u", sample.u).complex("v", sample.v),
                    residual: Some(f64::NAN),
                    threshold,
                    status: Status::Fail,
                    ms,
                });
                return Ok(out);
            }
        }
    }
    Ok(out)
}

/// Seed for a replacement point, a pure function of where it is needed so
/// the schedule cannot affect it.
fn resample_seed(seed: u64, id: &str, index: usize, attempt: usize) -> u64 {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&(index as u64).to_le_bytes());
    key[16..24].copy_from_slice(&(attempt as u64).to_le_bytes());
    // FNV-1a of the id
    let h = id.bytes().fold(0xcbf29ce484222325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3));
    key[24..].copy_from_slice(&h.to_le_bytes());
    ChaCha8Rng::from_seed(key).next_u64()
}

fn exclusion_warnings(reports: &[IdentityReport]) -> Vec<String> {
    let mut warnings = Vec::new();
    let mut i = 0;
    while i < reports.len() {
        let id = reports[i].identity;
        let group: Vec<&IdentityReport> = reports[i..].iter().take_while(|r| r.identity == id).collect();
        i += group.len();
        let excluded = group.iter().filter(|r| r.status == Status::Excluded).count();
        let fraction = excluded as f64 / group.len() as f64;
        if fraction > EXCLUSION_WARNING {
            warnings.push(format!(
                "{id}: {excluded} of {} evaluations excluded as singular ({:.0}%); check r, tau-im and the sampling window",
                group.len(),
                100.0 * fraction
            ));
        }
    }
    warnings
}
