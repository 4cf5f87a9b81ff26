//! Exhaustive and Monte-Carlo classification of connection sets.
//!
//! Each set `S` is classified by computing `Aut(Cay(R, S))`, checking that
//! the baseline group is contained in it (`B` for graphs, the regular
//! representation for digraphs), and comparing orders. A containment
//! failure is never a data point: it aborts the run.
//!
//! Sampled draw `i` of a run seeded with `seed` uses the `i`-th output of
//! SplitMix64(`seed`) as the seed of its own set sampler, so every record
//! can be replayed from `(seed, draw)` alone and draws can be computed in
//! any order.

use std::time::Instant;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::autgrp::{automorphism_group_capped, DEFAULT_DEGREE_CAP};
use crate::canonical::{build_canonical_b, regular_representation, BKind};
use crate::cayley::{
    build_cayley, inverse_closed_at, inverse_closed_log2, inverse_orbits,
    sample_inverse_closed_with_orbits, sample_subset, subset_from_mask, ConnectionSet,
    DEFAULT_ENUMERATION_CAP,
};
use crate::dicyclic::DicyclicGroup;
use crate::error::{Error, Result};
use crate::perm::{is_subgroup, PermGroup};

/// z for a two-sided 95% normal interval.
pub const Z_95: f64 = 1.959_963_984_540_054;
/// Slack on the log₂ bound comparison.
pub const BOUND_SLACK_LOG2: f64 = 1.0 / 1_048_576.0;

const PHI: u64 = 0x9e37_79b9_7f4a_7c15;
const CHUNK: usize = 512;

fn serialize_big<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v.to_u128() {
        Some(x) => s.serialize_u128(x),
        None => s.serialize_str(&v.to_string()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Equal,
    ProperSupergroup,
}

/// One classified connection set. Orders above `u128::MAX` serialize as
/// decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRecord {
    pub group: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub draw: Option<u64>,
    pub set: String,
    pub directed: bool,
    #[serde(serialize_with = "serialize_big")]
    pub aut_order: BigUint,
    #[serde(serialize_with = "serialize_big")]
    pub b_order: BigUint,
    pub verdict: Verdict,
    pub elapsed_us: u64,
}

impl CensusRecord {
    /// Equality ignoring the timing field.
    pub fn same_outcome(&self, other: &CensusRecord) -> bool {
        CensusRecord {
            elapsed_us: 0,
            ..self.clone()
        } == CensusRecord {
            elapsed_us: 0,
            ..other.clone()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

/// Where a classified set came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Adhoc,
    Index(u64),
    Draw { seed: u64, draw: u64 },
}

/// Group data shared by every classification in a run.
pub struct Classifier {
    group: DicyclicGroup,
    directed: bool,
    baseline: PermGroup,
    degree_cap: usize,
    timing: bool,
}

impl Classifier {
    pub fn new(group: &DicyclicGroup, directed: bool) -> Self {
        let baseline = if directed {
            regular_representation(group)
        } else {
            build_canonical_b(group).group
        };
        baseline.schreier_sims();
        Classifier {
            group: group.clone(),
            directed,
            baseline,
            degree_cap: DEFAULT_DEGREE_CAP,
            timing: true,
        }
    }

    pub fn with_degree_cap(mut self, cap: usize) -> Self {
        self.degree_cap = cap;
        self
    }

    pub fn with_timing(mut self, timing: bool) -> Self {
        self.timing = timing;
        self
    }

    pub fn baseline(&self) -> &PermGroup {
        &self.baseline
    }

    pub fn classify(&self, s: &ConnectionSet, provenance: Provenance) -> Result<CensusRecord> {
        let start = Instant::now();
        let graph = build_cayley(&self.group, s, self.directed)?;
        let aut = automorphism_group_capped(&graph, self.degree_cap)?;
        if !is_subgroup(&self.baseline, &aut)? {
            return Err(Error::ContainmentViolation {
                group: self.group.spec(),
                set: s.to_hex(),
            });
        }
        let aut_order = aut.order().clone();
        let b_order = self.baseline.order().clone();
        let verdict = if aut_order == b_order {
            Verdict::Equal
        } else {
            Verdict::ProperSupergroup
        };
        let (index, seed, draw) = match provenance {
            Provenance::Adhoc => (None, None, None),
            Provenance::Index(i) => (Some(i), None, None),
            Provenance::Draw { seed, draw } => (None, Some(seed), Some(draw)),
        };
        Ok(CensusRecord {
            group: self.group.spec(),
            index,
            seed,
            draw,
            set: s.to_hex(),
            directed: self.directed,
            aut_order,
            b_order,
            verdict,
            elapsed_us: if self.timing {
                start.elapsed().as_micros() as u64
            } else {
                0
            },
        })
    }
}

/// Classifies one set against `B` (undirected) or `R` (directed).
pub fn classify(g: &DicyclicGroup, s: &ConnectionSet, directed: bool) -> Result<CensusRecord> {
    Classifier::new(g, directed).classify(s, Provenance::Adhoc)
}

#[derive(Clone, Debug)]
pub struct CensusOptions {
    pub jobs: usize,
    pub set_cap: u64,
    pub degree_cap: usize,
    pub timing: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            jobs: 1,
            set_cap: DEFAULT_ENUMERATION_CAP,
            degree_cap: DEFAULT_DEGREE_CAP,
            timing: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CensusMode {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EpsilonBound {
    pub n: u64,
    pub kind: BKind,
    /// e(n), the base-2 logarithm of ε.
    pub exponent: f64,
    /// log₂ of the number of inverse-closed sets.
    pub total_log2: f64,
    /// `total_log2 + exponent`.
    pub bound_log2: f64,
    /// The bound is at least the total number of sets.
    pub vacuous: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundCheck {
    pub bound_log2: f64,
    pub vacuous: bool,
    pub satisfied: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusSummary {
    pub group: String,
    pub n: usize,
    pub m: usize,
    pub directed: bool,
    pub mode: CensusMode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub total: u64,
    pub exceptional: u64,
    pub proportion: f64,
    pub ci_halfwidth: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<EpsilonBound>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<BoundCheck>,
}

pub const SUMMARY_CSV_HEADER: [&str; 10] = [
    "group",
    "n",
    "m",
    "total",
    "exceptional",
    "proportion",
    "ci_halfwidth",
    "bound_log2",
    "vacuous",
    "satisfied",
];

impl CensusSummary {
    /// CSV fields in [`SUMMARY_CSV_HEADER`] order; bound columns are empty
    /// where they do not apply.
    pub fn csv_fields(&self) -> Vec<String> {
        let bound_log2 = self
            .epsilon
            .as_ref()
            .map(|e| format!("{:.6}", e.bound_log2))
            .unwrap_or_default();
        let vacuous = self
            .epsilon
            .as_ref()
            .map(|e| e.vacuous.to_string())
            .unwrap_or_default();
        let satisfied = self
            .bound
            .as_ref()
            .map(|b| b.satisfied.to_string())
            .unwrap_or_default();
        vec![
            self.group.clone(),
            self.n.to_string(),
            self.m.to_string(),
            self.total.to_string(),
            self.exceptional.to_string(),
            format!("{:.8}", self.proportion),
            format!("{:.8}", self.ci_halfwidth),
            bound_log2,
            vacuous,
            satisfied,
        ]
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("summary serializes")
    }
}

/// Renders summaries as CSV with a header row.
pub fn summaries_to_csv(summaries: &[CensusSummary]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(SUMMARY_CSV_HEADER).expect("in-memory write");
    for s in summaries {
        w.write_record(s.csv_fields()).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

/// Half-width of the 95% normal-approximation (Wald) interval for `k`
/// successes in `trials`.
pub fn binomial_ci_halfwidth(k: u64, trials: u64) -> f64 {
    if trials == 0 {
        return 0.0;
    }
    let p = k as f64 / trials as f64;
    Z_95 * (p * (1.0 - p) / trials as f64).sqrt()
}

/// ε exponents:
/// generic `e(n) = −n/48 + 2(log₂ n)² + 4` against `2^(m/2 + n/2)` sets,
/// `Q8 × C2^ℓ` `e(n) = −n/512 + (log₂ n)² + 2` against `2^(5n/8)` sets.
pub fn epsilon_bound_for(n: u64, m: u64, kind: BKind) -> EpsilonBound {
    let nf = n as f64;
    let lg = nf.log2();
    let (exponent, total_log2) = match kind {
        BKind::Generic => (-nf / 48.0 + 2.0 * lg * lg + 4.0, (m + n) as f64 / 2.0),
        BKind::Q8e => (-nf / 512.0 + lg * lg + 2.0, 5.0 * nf / 8.0),
    };
    EpsilonBound {
        n,
        kind,
        exponent,
        total_log2,
        bound_log2: total_log2 + exponent,
        vacuous: exponent >= 0.0,
    }
}

pub fn epsilon_bound(g: &DicyclicGroup) -> EpsilonBound {
    let kind = if g.is_q8_x_c2l() {
        BKind::Q8e
    } else {
        BKind::Generic
    };
    epsilon_bound_for(g.order() as u64, g.element_order_le2_count() as u64, kind)
}

/// Compares an exact exceptional count with a bound on the log₂ scale.
pub fn check_bound_against(exceptional: u64, bound: &EpsilonBound) -> BoundCheck {
    let satisfied =
        exceptional == 0 || (exceptional as f64).log2() <= bound.bound_log2 + BOUND_SLACK_LOG2;
    BoundCheck {
        bound_log2: bound.bound_log2,
        vacuous: bound.vacuous,
        satisfied,
    }
}

/// Checks an exhaustive undirected summary against the ε bound of its group.
pub fn check_bound(summary: &CensusSummary, g: &DicyclicGroup) -> Result<BoundCheck> {
    if summary.mode != CensusMode::Exhaustive {
        return Err(Error::domain(
            "the counting bound is about exact counts; sampled summaries cannot be checked",
        ));
    }
    if summary.directed {
        return Err(Error::domain("the counting bound concerns undirected Cayley graphs"));
    }
    Ok(check_bound_against(summary.exceptional, &epsilon_bound(g)))
}

/// Seed for draw `i`: the `i`-th output of SplitMix64(`seed`).
pub fn draw_seed(seed: u64, draw: u64) -> u64 {
    SplitMix64::seed_from_u64(seed.wrapping_add(draw.wrapping_mul(PHI))).next_u64()
}

fn thread_pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::domain(format!("cannot start worker pool: {e}")))
}

/// Classifies `count` items, produced by `make`, in parallel chunks and
/// feeds records to `sink` in item order.
fn drive<F>(
    classifier: &Classifier,
    count: u64,
    jobs: usize,
    make: F,
    sink: &mut dyn FnMut(&CensusRecord) -> Result<()>,
) -> Result<u64>
where
    F: Fn(u64) -> (ConnectionSet, Provenance) + Sync,
{
    let pool = thread_pool(jobs)?;
    let mut exceptional = 0u64;
    let mut start = 0u64;
    while start < count {
        let end = (start + CHUNK as u64).min(count);
        let records: Vec<CensusRecord> = pool.install(|| {
            (start..end)
                .into_par_iter()
                .map(|i| {
                    let (s, prov) = make(i);
                    classifier.classify(&s, prov)
                })
                .collect::<Result<Vec<_>>>()
        })?;
        for r in &records {
            if r.verdict == Verdict::ProperSupergroup {
                exceptional += 1;
            }
            sink(r)?;
        }
        start = end;
    }
    Ok(exceptional)
}

/// Every inverse-closed set (undirected) or every subset (directed).
pub fn run_exhaustive(
    g: &DicyclicGroup,
    directed: bool,
    opts: &CensusOptions,
    sink: &mut dyn FnMut(&CensusRecord) -> Result<()>,
) -> Result<CensusSummary> {
    let n = g.order();
    let log2 = if directed {
        n as u64
    } else {
        inverse_closed_log2(g)
    };
    if log2 >= 63 || (1u64 << log2) > opts.set_cap {
        return Err(Error::CapExceeded {
            what: "number of connection sets",
            value: format!("2^{log2}"),
            cap: opts.set_cap.to_string(),
            hint: "use --sample instead of --exhaustive",
        });
    }
    let total = 1u64 << log2;
    let classifier = Classifier::new(g, directed)
        .with_degree_cap(opts.degree_cap)
        .with_timing(opts.timing);
    let orbits = inverse_orbits(g);
    let exceptional = drive(
        &classifier,
        total,
        opts.jobs,
        |i| {
            let s = if directed {
                subset_from_mask(n, i)
            } else {
                inverse_closed_at(g, &orbits, i)
            };
            (s, Provenance::Index(i))
        },
        sink,
    )?;
    let mut summary = summarize(g, directed, CensusMode::Exhaustive, None, total, exceptional);
    if !directed {
        summary.bound = Some(check_bound(&summary, g)?);
    }
    Ok(summary)
}

/// `trials` uniform draws: inverse-closed sets for graphs, arbitrary
/// subsets for digraphs.
pub fn run_sampled(
    g: &DicyclicGroup,
    trials: u64,
    seed: u64,
    directed: bool,
    opts: &CensusOptions,
    sink: &mut dyn FnMut(&CensusRecord) -> Result<()>,
) -> Result<CensusSummary> {
    if trials == 0 {
        return Err(Error::domain("sampling needs at least one trial"));
    }
    let n = g.order();
    let classifier = Classifier::new(g, directed)
        .with_degree_cap(opts.degree_cap)
        .with_timing(opts.timing);
    let orbits = inverse_orbits(g);
    let exceptional = drive(
        &classifier,
        trials,
        opts.jobs,
        |i| {
            let ds = draw_seed(seed, i);
            let s = if directed {
                sample_subset(n, ds)
            } else {
                sample_inverse_closed_with_orbits(g, &orbits, ds)
            };
            (s, Provenance::Draw { seed, draw: i })
        },
        sink,
    )?;
    Ok(summarize(g, directed, CensusMode::Sampled, Some(seed), trials, exceptional))
}

fn summarize(
    g: &DicyclicGroup,
    directed: bool,
    mode: CensusMode,
    seed: Option<u64>,
    total: u64,
    exceptional: u64,
) -> CensusSummary {
    let ci_halfwidth = match mode {
        CensusMode::Exhaustive => 0.0,
        CensusMode::Sampled => binomial_ci_halfwidth(exceptional, total),
    };
    CensusSummary {
        group: g.spec(),
        n: g.order(),
        m: g.element_order_le2_count(),
        directed,
        mode,
        seed,
        total,
        exceptional,
        proportion: exceptional as f64 / total as f64,
        ci_halfwidth,
        epsilon: (!directed).then(|| epsilon_bound(g)),
        bound: None,
    }
}
