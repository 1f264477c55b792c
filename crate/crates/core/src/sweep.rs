//! Exhaustive and sampled sweeps over `S_n`, and the type `D` conjecture
//! run, on a fixed-size worker pool with a deterministic merge.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::admissible::{c23, c_t, find_wedges, is_smooth_length, is_smooth_pattern};
use crate::compat::{
    construct_for_set, enumerate_compatible_orders, graph_connectivity, is_compatible, move_graph,
    verify_theorem, DEFAULT_ENUMERATION_CAP,
};
use crate::error::{Error, Result};
use crate::perm::{factorial, Permutation, DEFAULT_MAX_DEGREE};
use crate::runs::{decreasing_run, pivot_crossings, shifted_run, tail};
use crate::typed::conjecture::{verify_conjecture_d, ConjectureOptions};
use crate::typed::group::DEFAULT_MAX_RANK;
use crate::typed::SimpleRootOrder;

pub const SWEEP_SCHEMA: &str = "bruhat-chains/sweep-report/v1";

/// Largest degree swept exhaustively.
pub const MAX_EXHAUSTIVE_DEGREE: usize = 9;

const CHUNK: u64 = 720;
const SAMPLE_ATTEMPTS_PER_ELEMENT: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepMode {
    SmoothCrosscheck,
    TheoremVerify,
    EnumerateOrders,
    GraphConnectivity,
    ConjectureD,
}

impl SweepMode {
    pub const ALL: [SweepMode; 5] = [
        SweepMode::SmoothCrosscheck,
        SweepMode::TheoremVerify,
        SweepMode::EnumerateOrders,
        SweepMode::GraphConnectivity,
        SweepMode::ConjectureD,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SweepMode::SmoothCrosscheck => "smooth-crosscheck",
            SweepMode::TheoremVerify => "theorem-verify",
            SweepMode::EnumerateOrders => "enumerate-orders",
            SweepMode::GraphConnectivity => "graph-connectivity",
            SweepMode::ConjectureD => "conjecture-d",
        }
    }

    fn smooth_only(&self) -> bool {
        !matches!(self, SweepMode::SmoothCrosscheck)
    }
}

impl fmt::Display for SweepMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|m| m.name() == s).ok_or_else(|| Error::Parse(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub mode: SweepMode,
    /// Degree `n` of `S_n`, or the rank for `conjecture-d`.
    pub size: usize,
    pub workers: usize,
    pub sample: Option<usize>,
    pub seed: Option<u64>,
    /// Cap on reflections per enumerated set.
    pub max_reflections: usize,
    pub simple_order: SimpleRootOrder,
}

impl SweepConfig {
    pub fn new(mode: SweepMode, size: usize) -> Self {
        let max_reflections = match mode {
            SweepMode::ConjectureD => crate::typed::conjecture::DEFAULT_CONJECTURE_CAP,
            _ => DEFAULT_ENUMERATION_CAP,
        };
        Self {
            mode,
            size,
            workers: 1,
            sample: None,
            seed: None,
            max_reflections,
            simple_order: SimpleRootOrder::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.workers == 0 {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        if self.sample.is_some() && self.seed.is_none() {
            return Err(Error::Config("--sample requires --seed".into()));
        }
        if self.sample == Some(0) {
            return Err(Error::Config("sample size must be positive".into()));
        }
        if self.mode == SweepMode::ConjectureD {
            if self.sample.is_some() {
                return Err(Error::Config("conjecture-d is always exhaustive".into()));
            }
            if !(2..=DEFAULT_MAX_RANK).contains(&self.size) {
                return Err(Error::RankOutOfRange { rank: self.size, min: 2, max: DEFAULT_MAX_RANK });
            }
            return Ok(());
        }
        let max = if self.sample.is_some() { DEFAULT_MAX_DEGREE } else { MAX_EXHAUSTIVE_DEGREE };
        if self.size == 0 {
            return Err(Error::Empty);
        }
        if self.size > max {
            return Err(Error::DegreeTooLarge { degree: self.size, max });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SweepViolation {
    pub element: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepCounts {
    pub elements: u64,
    pub smooth: u64,
    pub orders: u64,
    pub moves: u64,
    pub wedges: u64,
}

impl SweepCounts {
    fn merge(&mut self, other: &SweepCounts) {
        self.elements += other.elements;
        self.smooth += other.smooth;
        self.orders += other.orders;
        self.moves += other.moves;
        self.wedges += other.wedges;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub schema: &'static str,
    pub mode: SweepMode,
    pub size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sample: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub max_reflections: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simple_root_order: Option<SimpleRootOrder>,
    pub counts: SweepCounts,
    pub violations: Vec<SweepViolation>,
    pub passed: bool,
}

impl SweepReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Default)]
struct Partial {
    counts: SweepCounts,
    violations: Vec<SweepViolation>,
}

impl Partial {
    fn violation(&mut self, w: &Permutation, detail: impl Into<String>) {
        self.violations.push(SweepViolation { element: w.to_string(), detail: detail.into() });
    }
}

pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let partial = pool.install(|| match config.mode {
        SweepMode::ConjectureD => conjecture(config),
        _ => type_a(config),
    })?;
    let mut violations = partial.violations;
    violations.sort();
    Ok(SweepReport {
        schema: SWEEP_SCHEMA,
        mode: config.mode,
        size: config.size,
        sample: config.sample,
        seed: config.sample.and(config.seed),
        max_reflections: config.max_reflections,
        simple_root_order: (config.mode == SweepMode::ConjectureD).then(|| config.simple_order.clone()),
        counts: partial.counts,
        passed: violations.is_empty(),
        violations,
    })
}

fn conjecture(config: &SweepConfig) -> Result<Partial> {
    let options = ConjectureOptions { simple_order: config.simple_order.clone(), cap: config.max_reflections };
    let report = verify_conjecture_d(config.size, options)?;
    let mut partial = Partial::default();
    partial.counts.elements = report.group_order as u64;
    partial.counts.smooth = report.smooth_elements as u64;
    partial.counts.orders = report.orders_checked;
    for v in report.counterexample_elements() {
        let detail = format!(
            "admissible={} orders={} wrong_products={} search_mismatches={} incomparable={} (simple-root order {})",
            v.admissible,
            v.compatible_orders,
            v.wrong_products,
            v.search_mismatches,
            v.incomparable_comparisons,
            config.simple_order,
        );
        partial.violations.push(SweepViolation { element: v.element.to_string(), detail });
    }
    Ok(partial)
}

fn type_a(config: &SweepConfig) -> Result<Partial> {
    let n = config.size;
    let partials: Vec<Partial> = match (config.sample, config.seed) {
        (Some(k), Some(seed)) => {
            let sample = sample_elements(n, k, seed, config.mode.smooth_only())?;
            check_cap(config, sample.iter().map(Permutation::length).max().unwrap_or(0))?;
            sample
                .par_chunks(64)
                .map(|chunk| check_all(config, chunk.iter().cloned()))
                .collect::<Result<_>>()?
        }
        _ => {
            // the longest element is smooth and has n(n-1)/2 reflections
            check_cap(config, n * (n - 1) / 2)?;
            let total = factorial(n);
            let starts: Vec<u64> = (0..total).step_by(CHUNK as usize).collect();
            starts
                .par_iter()
                .map(|&start| {
                    let ranks = start..(start + CHUNK).min(total);
                    check_all(config, ranks.map(|r| Permutation::unrank(n, r)))
                })
                .collect::<Result<_>>()?
        }
    };
    let mut merged = Partial::default();
    for p in partials {
        merged.counts.merge(&p.counts);
        merged.violations.extend(p.violations);
    }
    Ok(merged)
}

fn check_cap(config: &SweepConfig, reflections: usize) -> Result<()> {
    let enumerates = matches!(config.mode, SweepMode::EnumerateOrders | SweepMode::GraphConnectivity);
    if enumerates && reflections > config.max_reflections {
        return Err(Error::CapExceeded {
            what: "reflections to order",
            size: reflections,
            cap: config.max_reflections,
        });
    }
    Ok(())
}

/// `k` distinct elements of `S_n` (smooth ones if `smooth_only`), drawn by
/// rejection from uniform ranks with a seeded ChaCha generator, in
/// lexicographic order.
pub fn sample_elements(n: usize, k: usize, seed: u64, smooth_only: bool) -> Result<Vec<Permutation>> {
    let total = factorial(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ranks = BTreeSet::new();
    let mut attempts = 0usize;
    while ranks.len() < k {
        if attempts >= SAMPLE_ATTEMPTS_PER_ELEMENT.saturating_mul(k) {
            return Err(Error::Config(format!(
                "found only {} of {k} distinct {}elements of S_{n}",
                ranks.len(),
                if smooth_only { "smooth " } else { "" },
            )));
        }
        attempts += 1;
        let r = rng.gen_range(0..total);
        if !smooth_only || is_smooth_pattern(&Permutation::unrank(n, r)) {
            ranks.insert(r);
        }
    }
    Ok(ranks.into_iter().map(|r| Permutation::unrank(n, r)).collect())
}

fn check_all(config: &SweepConfig, elements: impl Iterator<Item = Permutation>) -> Result<Partial> {
    let mut partial = Partial::default();
    for w in elements {
        partial.counts.elements += 1;
        let smooth = is_smooth_pattern(&w);
        if config.mode == SweepMode::SmoothCrosscheck {
            check_criteria(&w, smooth, &mut partial);
            continue;
        }
        if !smooth {
            continue;
        }
        partial.counts.smooth += 1;
        match config.mode {
            SweepMode::TheoremVerify => check_theorem(&w, &mut partial)?,
            SweepMode::EnumerateOrders => check_enumeration(&w, config.max_reflections, &mut partial)?,
            SweepMode::GraphConnectivity => check_graph(&w, config.max_reflections, &mut partial)?,
            SweepMode::SmoothCrosscheck | SweepMode::ConjectureD => unreachable!(),
        }
    }
    Ok(partial)
}

fn check_criteria(w: &Permutation, smooth: bool, partial: &mut Partial) {
    partial.counts.smooth += u64::from(smooth);
    if smooth != is_smooth_length(w) {
        partial.violation(w, "pattern and length criteria disagree");
    }
    let (reflections, length) = (c_t(w).len(), w.length());
    if !smooth && reflections <= length {
        partial.violation(w, format!("not smooth but |C_T| = {reflections} <= length {length}"));
    }
}

fn check_theorem(w: &Permutation, partial: &mut Partial) -> Result<()> {
    let a = c23(w);
    let construction = construct_for_set(&a)?;
    partial.counts.orders += 1;
    if !is_compatible(&construction.order, &a)? {
        partial.violation(w, format!("constructed order {} is not compatible", construction.order));
    }
    let report = verify_theorem(w, &construction.order)?;
    if !report.all_ok() {
        partial.violation(w, format!("constructed order {} fails verification", construction.order));
    }
    for level in &construction.levels {
        let crossings = pivot_crossings(level);
        if !crossings.is_empty() {
            partial.violation(w, format!("wedge {} crossed by {crossings:?}", level.wedge));
        }
    }
    for wedge in find_wedges(&a) {
        partial.counts.wedges += 1;
        if !decreasing_run(w, wedge) {
            partial.violation(w, format!("window not decreasing on wedge {wedge}"));
        }
        if !shifted_run(w, wedge) {
            partial.violation(w, format!("shifted window out of order for wedge {wedge}"));
        }
        for d in 1..=wedge.j - wedge.i {
            if tail(w.degree(), wedge.i, d).length() != d {
                partial.violation(w, format!("tail of wedge {wedge} at d = {d} has the wrong length"));
            }
        }
    }
    Ok(())
}

fn check_enumeration(w: &Permutation, cap: usize, partial: &mut Partial) -> Result<()> {
    let orders = enumerate_compatible_orders(&c23(w), cap)?;
    if orders.is_empty() {
        partial.violation(w, "no compatible order");
    }
    for order in &orders {
        partial.counts.orders += 1;
        if !verify_theorem(w, order)?.all_ok() {
            partial.violation(w, format!("compatible order {order} fails verification"));
        }
    }
    Ok(())
}

fn check_graph(w: &Permutation, cap: usize, partial: &mut Partial) -> Result<()> {
    let a = c23(w);
    let report = graph_connectivity(&a, cap)?;
    partial.counts.orders += report.component_size as u64;
    partial.counts.moves += report.edges as u64;
    match report.connected {
        Some(true) => {}
        Some(false) => partial.violation(
            w,
            format!(
                "move graph reaches {} of {} orders",
                report.component_size,
                report.total_orders.unwrap_or(0)
            ),
        ),
        None => partial.violation(w, "too many reflections to confirm connectivity"),
    }
    // every order reached by moves must keep the endpoint and both chain flags
    let (vertices, _) = move_graph(&a)?;
    let distinct: HashSet<_> = vertices.iter().collect();
    if distinct.len() != vertices.len() {
        partial.violation(w, "move graph repeats a vertex");
    }
    for order in &vertices {
        if !is_compatible(order, &a)? || !verify_theorem(w, order)?.all_ok() {
            partial.violation(w, format!("move produced {order}, which fails verification"));
        }
    }
    Ok(())
}
