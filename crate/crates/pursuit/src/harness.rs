//! Batch verification suites.
//!
//! Each suite draws seeded instances, applies a transformation or test and
//! records one [`InstanceRecord`] per checked claim. A record is a
//! violation when the claimed property fails on that instance. Every
//! record is reproducible from its suite, seed and the suite config.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use pursuit_core::constructions::{
    clique_substitute_all, directed_path, lemma3_stars, projective_plane_incidence_doubled, random_digraph,
    subdivide_arcs,
};
use pursuit_core::patterns::{find_induced, find_pk_star};
use pursuit_core::solver::{cop_number, cop_number_from, solve, CopNumber, DEFAULT_STATE_BUDGET};
use pursuit_core::{Digraph, SolveError};
use serde::Serialize;
use thiserror::Error;

/// Rejection-sampling attempts per instance before giving up.
pub const RETRY_CAP: u64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Lemma1,
    Lemma2,
    Lemma3,
    Lemma4,
    Theorem1,
    Theorem3,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Lemma1, Suite::Lemma2, Suite::Lemma3, Suite::Lemma4, Suite::Theorem1, Suite::Theorem3];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma1 => "lemma1",
            Suite::Lemma2 => "lemma2",
            Suite::Lemma3 => "lemma3",
            Suite::Lemma4 => "lemma4",
            Suite::Theorem1 => "theorem1",
            Suite::Theorem3 => "theorem3",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| HarnessError::Config(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("no instance passed the {filter} filter after {RETRY_CAP} attempts (seed {seed})")]
    RetryCap { seed: u64, filter: &'static str },
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Graph(#[from] pursuit_core::GraphError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Csv(#[from] csv::Error),
}

/// Parameters of one suite run.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub trials: usize,
    pub n_max: usize,
    pub p: f64,
    /// Path orders tested by `theorem3`.
    pub k_values: Vec<usize>,
    /// Subdivision lengths used by `lemma2`.
    pub subdivision_lengths: Vec<usize>,
    /// Girth targets used by `lemma4`.
    pub girth_targets: Vec<usize>,
    /// `theorem3` also enumerates every digraph up to this order.
    pub exhaustive_n: usize,
    pub state_budget: u64,
    pub seed: u64,
    /// Fill the `micros` column; off by default so output is byte-stable.
    pub timing: bool,
    /// Named digraphs run through the suite after the seeded ones.
    pub extra_instances: Vec<(String, Digraph)>,
}

impl SuiteConfig {
    /// Defaults sized so that every suite finishes in well under a minute.
    pub fn for_suite(suite: Suite) -> Self {
        let (trials, n_max, p) = match suite {
            Suite::Lemma1 => (200, 6, 0.4),
            Suite::Lemma2 => (200, 5, 0.4),
            Suite::Lemma3 => (100, 6, 0.5),
            Suite::Lemma4 => (100, 6, 0.5),
            Suite::Theorem1 => (200, 6, 0.3),
            Suite::Theorem3 => (300, 7, 0.6),
        };
        Self {
            trials,
            n_max,
            p,
            k_values: vec![3, 4],
            subdivision_lengths: vec![2, 3],
            girth_targets: vec![2, 3, 4],
            exhaustive_n: 4,
            state_budget: DEFAULT_STATE_BUDGET,
            seed: 0,
            timing: false,
            extra_instances: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |msg: &str| Err(HarnessError::Config(msg.to_owned()));
        if self.trials == 0 {
            return bad("trials must be at least 1");
        }
        if self.n_max < 2 {
            return bad("n_max must be at least 2");
        }
        if !(0.0..=1.0).contains(&self.p) {
            return bad("p must lie in [0, 1]");
        }
        if self.k_values.iter().any(|&k| k < 3) {
            return bad("theorem3 k values must be at least 3");
        }
        if self.subdivision_lengths.contains(&0) {
            return bad("subdivision lengths must be positive");
        }
        if self.girth_targets.iter().any(|&l| l < 2) {
            return bad("girth targets must be at least 2");
        }
        Ok(())
    }
}

/// One checked claim on one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceRecord {
    pub suite: String,
    pub seed: u64,
    pub n: usize,
    pub arcs: usize,
    pub transform: String,
    pub c_before: Option<usize>,
    pub c_after: Option<usize>,
    pub verdicts: String,
    pub micros: u64,
    #[serde(skip)]
    pub violation: bool,
    #[serde(skip)]
    pub error: Option<String>,
}

#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub suite: Suite,
    pub records: Vec<InstanceRecord>,
}

impl ExperimentReport {
    pub fn instances_run(&self) -> usize {
        self.records
            .iter()
            .map(|r| (r.seed, r.transform.split_once('|').map_or("", |(label, _)| label)))
            .collect::<BTreeSet<_>>()
            .len()
    }

    pub fn violations(&self) -> impl Iterator<Item = &InstanceRecord> {
        self.records.iter().filter(|r| r.violation)
    }

    pub fn violating_seeds(&self) -> Vec<u64> {
        self.violations().map(|r| r.seed).collect::<BTreeSet<_>>().into_iter().collect()
    }

    pub fn errors(&self) -> impl Iterator<Item = &InstanceRecord> {
        self.records.iter().filter(|r| r.error.is_some())
    }

    pub fn passes(&self) -> bool {
        self.violations().next().is_none()
    }

    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<(), HarnessError> {
        let mut w = csv::Writer::from_writer(out);
        for r in &self.records {
            w.serialize(r)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv is utf-8")
    }
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Filter {
    Any,
    Weak,
    Strong,
}

impl Filter {
    fn name(self) -> &'static str {
        match self {
            Filter::Any => "any",
            Filter::Weak => "weakly connected",
            Filter::Strong => "strongly connected",
        }
    }

    fn accepts(self, d: &Digraph) -> bool {
        match self {
            Filter::Any => true,
            Filter::Weak => d.is_weakly_connected(),
            Filter::Strong => d.is_strongly_connected(),
        }
    }
}

/// The instance behind `seed`: order uniform in `2..=n_max`, then seeded
/// random digraphs until one passes `filter`.
pub fn random_instance(seed: u64, cfg: &SuiteConfig, filter: Filter) -> Result<Digraph, HarnessError> {
    let n = 2 + (splitmix(seed) % (cfg.n_max as u64 - 1)) as usize;
    for attempt in 0..RETRY_CAP {
        let d = random_digraph(n, cfg.p, splitmix(seed ^ splitmix(attempt + 1)))?;
        if filter.accepts(&d) {
            return Ok(d);
        }
    }
    Err(HarnessError::RetryCap { seed, filter: filter.name() })
}

struct Recorder<'a> {
    suite: Suite,
    cfg: &'a SuiteConfig,
    seed: u64,
    label: Option<String>,
    start: Instant,
}

impl Recorder<'_> {
    fn record(&self, d: &Digraph, transform: &str) -> InstanceRecord {
        let transform = match &self.label {
            Some(l) => format!("{l}|{transform}"),
            None => transform.to_owned(),
        };
        InstanceRecord {
            suite: self.suite.name().to_owned(),
            seed: self.seed,
            n: d.order(),
            arcs: d.arc_count(),
            transform,
            c_before: None,
            c_after: None,
            verdicts: String::new(),
            micros: if self.cfg.timing { self.start.elapsed().as_micros() as u64 } else { 0 },
            violation: false,
            error: None,
        }
    }

    fn failed(&self, d: Option<&Digraph>, transform: &str, err: HarnessError) -> InstanceRecord {
        let mut r = self.record(d.unwrap_or(&Digraph::empty(0)), transform);
        r.verdicts = format!("error: {err}");
        r.error = Some(err.to_string());
        r
    }
}

fn exact_cop_number(d: &Digraph, budget: u64) -> Result<usize, HarnessError> {
    match cop_number(d, d.order(), budget)? {
        CopNumber::Exact { cops, .. } => Ok(cops),
        CopNumber::Exceeds { .. } => unreachable!("n cops cover every vertex"),
    }
}

/// Cop number of a transformed digraph that should be at least `before`.
/// Probes `before - 1` first so the common case never solves smaller games.
fn cop_number_at_least(g: &Digraph, before: usize, budget: u64) -> Result<usize, HarnessError> {
    if before >= 2 && solve(g, before - 1, budget)?.winning_placement().is_some() {
        return exact_cop_number(g, budget);
    }
    match cop_number_from(g, before, g.order().max(before), budget)? {
        CopNumber::Exact { cops, .. } => Ok(cops),
        CopNumber::Exceeds { .. } => unreachable!("n cops cover every vertex"),
    }
}

type InstanceFn = fn(&Recorder<'_>, &Digraph) -> Result<Vec<InstanceRecord>, (String, HarnessError)>;

fn monotone_records(
    rec: &Recorder<'_>,
    d: &Digraph,
    transform: &str,
    after_graph: Result<Digraph, pursuit_core::GraphError>,
    before: usize,
) -> InstanceRecord {
    let g = match after_graph {
        Ok(g) => g,
        Err(e) => return rec.failed(Some(d), transform, e.into()),
    };
    match cop_number_at_least(&g, before, rec.cfg.state_budget) {
        Ok(after) => {
            let mut r = rec.record(d, transform);
            r.c_before = Some(before);
            r.c_after = Some(after);
            r.violation = after < before;
            r.verdicts = format!(
                "transformed_n={};{}",
                g.order(),
                if r.violation { "VIOLATION c_after<c_before" } else { "c_after>=c_before" }
            );
            r
        }
        Err(e) => rec.failed(Some(d), transform, e),
    }
}

fn lemma1_instance(rec: &Recorder<'_>, d: &Digraph) -> Result<Vec<InstanceRecord>, (String, HarnessError)> {
    let before = exact_cop_number(d, rec.cfg.state_budget).map_err(|e| ("clique".to_owned(), e))?;
    Ok(vec![monotone_records(rec, d, "clique", clique_substitute_all(d), before)])
}

fn lemma2_instance(rec: &Recorder<'_>, d: &Digraph) -> Result<Vec<InstanceRecord>, (String, HarnessError)> {
    let before = exact_cop_number(d, rec.cfg.state_budget).map_err(|e| ("subdivide".to_owned(), e))?;
    Ok(rec
        .cfg
        .subdivision_lengths
        .iter()
        .map(|&m| monotone_records(rec, d, &format!("subdivide:{m}"), subdivide_arcs(d, m), before))
        .collect())
}

fn lemma3_instance(rec: &Recorder<'_>, d: &Digraph) -> Result<Vec<InstanceRecord>, (String, HarnessError)> {
    let plus = clique_substitute_all(d).map_err(|e| ("clique".to_owned(), e.into()))?;
    let strong = plus.is_strongly_connected();
    let present: Vec<String> = lemma3_stars()
        .iter()
        .enumerate()
        .filter_map(|(i, s)| find_induced(&plus, s).map(|w| format!("star{i}@{}", join(&w.vertices))))
        .collect();
    let mut r = rec.record(d, "clique");
    r.violation = !strong || !present.is_empty();
    r.verdicts = format!(
        "transformed_n={};strong={strong};stars={}",
        plus.order(),
        if present.is_empty() { "none".to_owned() } else { present.join(" ") }
    );
    Ok(vec![r])
}

fn lemma4_instance(rec: &Recorder<'_>, d: &Digraph) -> Result<Vec<InstanceRecord>, (String, HarnessError)> {
    let mut out = Vec::new();
    for &l in &rec.cfg.girth_targets {
        let transform = format!("subdivide:{l}");
        let s = subdivide_arcs(d, l).map_err(|e| (transform.clone(), e.into()))?;
        let girth = s.underlying_girth();
        let strong = s.is_strongly_connected();
        let mut r = rec.record(d, &transform);
        r.violation = !strong || girth.is_some_and(|g| g < l);
        r.verdicts =
            format!("girth={};target={l};strong={strong}", girth.map_or("inf".to_owned(), |g| g.to_string()));
        out.push(r);
    }
    Ok(out)
}

fn theorem1_instance(rec: &Recorder<'_>, d: &Digraph) -> Result<Vec<InstanceRecord>, (String, HarnessError)> {
    let c = exact_cop_number(d, rec.cfg.state_budget).map_err(|e| ("none".to_owned(), e))?;
    let sources = d.count_sources();
    let mut r = rec.record(d, "none");
    r.c_before = Some(c);
    r.violation = c < sources;
    r.verdicts =
        format!("sources={sources};{}", if r.violation { "VIOLATION c<sources" } else { "c>=sources" });
    Ok(vec![r])
}

fn theorem3_instance(rec: &Recorder<'_>, d: &Digraph) -> Result<Vec<InstanceRecord>, (String, HarnessError)> {
    let mut verdicts = Vec::new();
    let mut free_ks = Vec::new();
    for &k in &rec.cfg.k_values {
        match find_pk_star(d, k).map_err(|e| ("none".to_owned(), e.into()))? {
            Some(w) => verdicts.push(format!("p{k}*=witness:{}", join(&w.vertices))),
            None => {
                verdicts.push(format!("p{k}*=free"));
                free_ks.push(k);
            }
        }
    }
    let mut r = rec.record(d, "none");
    if let Some(&k_min) = free_ks.iter().min() {
        let c = exact_cop_number(d, rec.cfg.state_budget).map_err(|e| ("none".to_owned(), e))?;
        r.c_before = Some(c);
        r.violation = c + 2 > k_min;
        verdicts.push(if r.violation {
            format!("VIOLATION c>{}", k_min - 2)
        } else {
            format!("c<={}", k_min - 2)
        });
    }
    r.verdicts = verdicts.join(";");
    Ok(vec![r])
}

fn join(vs: &[usize]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("-")
}

fn suite_parts(suite: Suite) -> (InstanceFn, Filter) {
    match suite {
        Suite::Lemma1 => (lemma1_instance, Filter::Weak),
        Suite::Lemma2 => (lemma2_instance, Filter::Weak),
        Suite::Lemma3 => (lemma3_instance, Filter::Strong),
        Suite::Lemma4 => (lemma4_instance, Filter::Strong),
        Suite::Theorem1 => (theorem1_instance, Filter::Any),
        Suite::Theorem3 => (theorem3_instance, Filter::Strong),
    }
}

fn run_one(
    suite: Suite,
    cfg: &SuiteConfig,
    seed: u64,
    given: Option<(&str, &Digraph)>,
) -> Vec<InstanceRecord> {
    let (check, filter) = suite_parts(suite);
    let rec =
        Recorder { suite, cfg, seed, label: given.map(|(name, _)| name.to_owned()), start: Instant::now() };
    let d = match given {
        Some((_, d)) => {
            if !filter.accepts(d) || (suite == Suite::Lemma1 && d.min_degree().unwrap_or(0) == 0) {
                let mut r = rec.record(d, "none");
                r.verdicts = format!("skipped: not {}", filter.name());
                return vec![r];
            }
            d.clone()
        }
        None => match random_instance(seed, cfg, filter) {
            Ok(d) => d,
            Err(e) => return vec![rec.failed(None, "none", e)],
        },
    };
    check(&rec, &d).unwrap_or_else(|(transform, e)| vec![rec.failed(Some(&d), &transform, e)])
}

/// Re-runs the single instance recorded under `seed`.
pub fn reproduce(suite: Suite, cfg: &SuiteConfig, seed: u64) -> Vec<InstanceRecord> {
    run_one(suite, cfg, seed, None)
}

/// Runs `jobs` on all available cores; results keep job order.
fn run_parallel<T: Send>(jobs: usize, f: impl Fn(usize) -> T + Sync) -> Vec<T> {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(jobs.max(1));
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<T>>> = Mutex::new((0..jobs).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= jobs {
                    break;
                }
                let out = f(i);
                slots.lock().expect("worker panicked")[i] = Some(out);
            });
        }
    });
    slots.into_inner().expect("worker panicked").into_iter().map(|s| s.expect("job ran")).collect()
}

fn exhaustive_digraphs(n: usize) -> impl Iterator<Item = (u64, Digraph)> {
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
    (0..1u64 << pairs.len()).map(move |code| {
        let arcs = pairs.iter().enumerate().filter(|(i, _)| code >> i & 1 == 1).map(|(_, &a)| a);
        (code, Digraph::new(n, arcs).expect("distinct ordered pairs"))
    })
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<ExperimentReport, HarnessError> {
    cfg.validate()?;
    let mut records: Vec<InstanceRecord> =
        run_parallel(cfg.trials, |i| run_one(suite, cfg, cfg.seed.wrapping_add(i as u64), None))
            .into_iter()
            .flatten()
            .collect();

    match suite {
        Suite::Theorem3 => {
            let all: Vec<(usize, u64, Digraph)> = (1..=cfg.exhaustive_n)
                .flat_map(|n| exhaustive_digraphs(n).map(move |(code, d)| (n, code, d)))
                .filter(|(_, _, d)| d.is_strongly_connected())
                .collect();
            let more = run_parallel(all.len(), |i| {
                let (n, code, d) = &all[i];
                run_one(suite, cfg, *code, Some((&format!("exhaustive:n={n}"), d)))
            });
            records.extend(more.into_iter().flatten());
        }
        Suite::Theorem1 => {
            let star = Digraph::new(4, [(1, 0), (2, 0), (3, 0)])?;
            records.extend(run_one(suite, cfg, 0, Some(("in-star", &star))));
            records.push(fano_record(cfg));
        }
        _ => {}
    }
    for (i, (name, d)) in cfg.extra_instances.iter().enumerate() {
        records.extend(run_one(suite, cfg, i as u64, Some((&format!("file:{name}"), d))));
    }
    Ok(ExperimentReport { suite, records })
}

/// Doubled Fano incidence digraph: no induced directed `P_2`, cop number 3.
fn fano_record(cfg: &SuiteConfig) -> InstanceRecord {
    let rec = Recorder { suite: Suite::Theorem1, cfg, seed: 0, label: None, start: Instant::now() };
    let fano = projective_plane_incidence_doubled(2).expect("2 is prime");
    let p2_free = find_induced(&fano, &directed_path(2).expect("k = 2")).is_none();
    match cop_number(&fano, 3, cfg.state_budget) {
        Ok(c) => {
            let mut r = rec.record(&fano, "fano");
            r.c_before = c.value();
            let c3 = c.value() == Some(3);
            r.violation = !p2_free || !c3;
            r.verdicts = format!(
                "p2_induced={};sources={};cop_number={}",
                if p2_free { "free" } else { "present" },
                fano.count_sources(),
                c.value().map_or(">3".to_owned(), |v| v.to_string())
            );
            r
        }
        Err(e) => rec.failed(
            Some(&fano),
            "fano",
            HarnessError::Config(format!("{e}; raise --state-budget to at least 15680")),
        ),
    }
}

/// Runs every listed suite with its config.
pub fn run_all(configs: &[(Suite, SuiteConfig)]) -> Result<Vec<ExperimentReport>, HarnessError> {
    configs.iter().map(|(suite, cfg)| run_suite(*suite, cfg)).collect()
}

#[derive(Serialize)]
struct SummaryRow<'a> {
    suite: &'a str,
    instances: usize,
    records: usize,
    violations: usize,
    errors: usize,
    violating_seeds: String,
}

/// Writes `<suite>.csv` per report plus `summary.csv` into `dir`.
pub fn write_reports(dir: &Path, reports: &[ExperimentReport]) -> Result<(), HarnessError> {
    std::fs::create_dir_all(dir)?;
    let mut summary = csv::Writer::from_path(dir.join("summary.csv"))?;
    for report in reports {
        let file = std::fs::File::create(dir.join(format!("{}.csv", report.suite)))?;
        report.write_csv(std::io::BufWriter::new(file))?;
        summary.serialize(SummaryRow {
            suite: report.suite.name(),
            instances: report.instances_run(),
            records: report.records.len(),
            violations: report.violations().count(),
            errors: report.errors().count(),
            violating_seeds: report
                .violating_seeds()
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(" "),
        })?;
    }
    summary.flush()?;
    Ok(())
}
