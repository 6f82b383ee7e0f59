//! The default verification suite, run as independent parallel jobs.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use pel_core::constructions::TowerFamily;
use pel_core::verify::{
    sylow_bound_check, verify_an_proportions, verify_anchepsl, verify_l23_corx3,
    verify_local_statistics, verify_m10, verify_mc_coverage, verify_onlypsl_negatives, verify_podd,
    verify_samenumber, verify_towers, Outcome,
};
use pel_core::{Limits, Result};

use crate::corpus::Corpus;

pub const COVERAGE_RUNS: u32 = 200;
pub const COVERAGE_SAMPLES: u64 = 10_000;
pub const PROPORTION_MAX: u32 = 16;

type Check = Box<dyn Fn(&Limits) -> Result<Vec<Outcome>> + Send + Sync>;

pub struct Job {
    pub name: &'static str,
    /// Claims this job reports, for `--claim` selection.
    pub claims: &'static [&'static str],
    check: Check,
}

impl Job {
    fn new(
        name: &'static str,
        claims: &'static [&'static str],
        check: impl Fn(&Limits) -> Result<Vec<Outcome>> + Send + Sync + 'static,
    ) -> Self {
        Job {
            name,
            claims,
            check: Box::new(check),
        }
    }

    fn selected_by(&self, claim: &str) -> bool {
        self.name == claim || self.claims.contains(&claim)
    }
}

/// Every check at its default parameters.
pub fn default_jobs(corpus: Corpus, seed: u64) -> Vec<Job> {
    let Corpus { podd, local, sylow } = corpus;
    vec![
        Job::new("m10", &["m10"], |l| Ok(vec![verify_m10(l)?])),
        Job::new(
            "towers",
            &["towers:gt", "towers:yt", "towers:xu", "towers:meta"],
            |l| {
                let runs = [
                    (TowerFamily::Gt, 30),
                    (TowerFamily::Yt, 3),
                    (TowerFamily::Xu { u: 1 }, 40),
                    (TowerFamily::Metacyclic { q: 3, p: 2, n: 1 }, 6),
                    (TowerFamily::Metacyclic { q: 7, p: 3, n: 1 }, 3),
                ];
                runs.into_iter()
                    .map(|(f, d)| Ok(verify_towers(f, d, l)?.outcome()))
                    .collect()
            },
        ),
        Job::new("l23", &["l23"], |l| Ok(vec![verify_l23_corx3(l)?])),
        Job::new("anchepsl", &["anchepsl"], |l| Ok(vec![verify_anchepsl(2, l)?])),
        Job::new("anchepsl", &["anchepsl"], |l| Ok(vec![verify_anchepsl(4, l)?])),
        Job::new("samenumber", &["samenumber"], |l| Ok(vec![verify_samenumber(l)?])),
        Job::new("podd", &["podd", "non-ab-cf"], move |l| verify_podd(&podd, l)),
        Job::new(
            "local",
            &["bbb", "gxfinite", "thm_dh", "baer", "pair-prob"],
            move |l| verify_local_statistics(&local, l),
        ),
        Job::new("onlypsl", &["onlypsl"], verify_onlypsl_negatives),
        Job::new("anchealt", &["anchealt"], |l| {
            Ok(vec![verify_an_proportions(PROPORTION_MAX, l)?])
        }),
        Job::new("sylow-bound", &["sylow-bound"], move |l| {
            sylow
                .iter()
                .map(|c| sylow_bound_check(&c.group, &c.label, c.prime, l))
                .collect()
        }),
        Job::new("mc-coverage", &["mc-coverage"], move |l| {
            Ok(vec![verify_mc_coverage(COVERAGE_RUNS, COVERAGE_SAMPLES, seed, l)?])
        }),
    ]
}

/// Every claim name accepted by `--claim`.
pub fn claim_names(jobs: &[Job]) -> Vec<&'static str> {
    let mut names: Vec<&'static str> = jobs
        .iter()
        .flat_map(|j| std::iter::once(j.name).chain(j.claims.iter().copied()))
        .collect();
    names.sort_unstable();
    names.dedup();
    names
}

fn error_outcome(job: &Job, e: pel_core::Error) -> Outcome {
    Outcome::new(job.name)
        .param("error", e)
        .decide("check completed", false)
}

/// Runs the jobs selected by `claim` (all when `None`) on up to `threads`
/// workers. Outcomes keep job order regardless of scheduling. `ms` records
/// the runtime of the job that produced each outcome, or 0 when `timing`
/// is off.
pub fn run_suite(
    jobs: &[Job],
    claim: Option<&str>,
    limits: &Limits,
    threads: usize,
    timing: bool,
) -> Vec<Outcome> {
    let selected: Vec<&Job> = jobs
        .iter()
        .filter(|j| claim.is_none_or(|c| j.selected_by(c)))
        .collect();
    let slots: Vec<Mutex<Vec<Outcome>>> = selected.iter().map(|_| Mutex::new(Vec::new())).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..threads.clamp(1, selected.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(job) = selected.get(i) else {
                    break;
                };
                let start = Instant::now();
                let mut out = (job.check)(limits).unwrap_or_else(|e| vec![error_outcome(job, e)]);
                let ms = if timing { start.elapsed().as_millis() as u64 } else { 0 };
                for o in &mut out {
                    o.ms = ms;
                }
                *slots[i].lock().expect("unpoisoned") = out;
            });
        }
    });
    slots
        .into_iter()
        .flat_map(|m| m.into_inner().expect("unpoisoned"))
        .filter(|o| match claim {
            Some(c) if !selected.iter().any(|j| j.name == c) => o.claim == c,
            _ => true,
        })
        .collect()
}
