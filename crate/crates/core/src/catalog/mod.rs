//! The identity registry and the verification driver.
//!
//! Every record is checked by one of two engines. Engine A evaluates both
//! sides exactly at random rational points (`q`, parameters and termination
//! caps drawn from a seeded stream); engine B expands both sides as power
//! series and compares coefficients up to a truncation order.

mod points;
mod sampling;
mod terminating;
mod series;

pub use points::Outcome;
pub use sampling::Sampler;
pub use series::{catalog_theta_shapes, family_lhs, family_rhs, SeriesCase};

use crate::error::{Error, Result};
use crate::rational::format_rational;
use crate::theta::has_nonnegative_integer_coeffs;
use points::PointCheck;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use series::SeriesCheck;
use std::time::Instant;

/// Retries per trial before a point check gives up on finding a pole-free sample.
pub const MAX_RETRIES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Engine {
    /// Exact evaluation at rational points.
    A,
    /// Truncated power series.
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    SamplingExhausted,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::SamplingExhausted => "sampling-exhausted",
        }
    }
}

#[derive(Clone, Copy)]
enum Check {
    Point { trials: u32, cap: usize, run: PointCheck },
    Series { order: usize, run: SeriesCheck },
}

struct Entry {
    id: &'static str,
    summary: &'static str,
    params: &'static [&'static str],
    family: Option<&'static str>,
    k1_alias: Option<&'static str>,
    check: Check,
}

const fn point(trials: u32, cap: usize, run: PointCheck) -> Check {
    Check::Point { trials, cap, run }
}

const fn series(order: usize, run: SeriesCheck) -> Check {
    Check::Series { order, run }
}

const EQ12: &[&str] = &["a", "b", "c", "b'", "c'", "d", "M", "N", "q"];
const EQ2: &[&str] = &["a", "b", "c", "b'", "c'", "A", "B", "M", "N", "q"];
const EQ4: &[&str] = &["a", "b", "c", "b'", "c'", "A", "M", "N", "q"];
const EQ5: &[&str] = &["a", "b", "c", "b'", "c'", "b''", "c''", "M", "N", "L", "q"];
const STEP2: &[&str] = &["a", "b", "c", "b'", "c'", "q"];
const STEP3: &[&str] = &["a", "b", "c", "b'", "c'", "b''", "c''", "q"];
const AQ: &[&str] = &["a", "q"];
const NONE: &[&str] = &[];

macro_rules! entry {
    ($id:expr, $summary:expr, $params:expr, $check:expr) => {
        Entry { id: $id, summary: $summary, params: $params, family: None, k1_alias: None, check: $check }
    };
    ($id:expr, $summary:expr, $params:expr, $check:expr, family $f:expr, alias $alias:expr) => {
        Entry { id: $id, summary: $summary, params: $params, family: Some($f), k1_alias: $alias, check: $check }
    };
}

fn registry() -> &'static [Entry] {
    use points as p;
    use series as s;
    static ENTRIES: std::sync::OnceLock<Vec<Entry>> = std::sync::OnceLock::new();
    ENTRIES.get_or_init(|| {
        let mut v = vec![
            entry!("DERIV-3.1-beta", "closed beta of the first double sum choice", EQ12, point(50, 3, p::beta1)),
            entry!("DERIV-3.1-gamma", "closed gamma of the first double sum choice", EQ12, point(50, 3, p::gamma1)),
            entry!("DERIV-3.2-beta", "closed beta of the second double sum choice", EQ2, point(50, 3, p::beta2)),
            entry!("DERIV-3.2-gamma", "closed gamma of the second double sum choice", EQ2, point(50, 3, p::gamma2)),
            entry!("DERIV-3.3-beta", "closed beta of the third double sum choice", EQ12, point(50, 3, p::beta3)),
            entry!("DERIV-3.3-gamma", "closed gamma of the third double sum choice", EQ12, point(50, 3, p::gamma3)),
            entry!("DERIV-3.4-beta", "closed beta of the fourth double sum choice", EQ4, point(50, 3, p::beta4)),
            entry!("DERIV-3.4-gamma", "closed gamma of the fourth double sum choice", EQ4, point(50, 3, p::gamma4)),
            entry!("DERIV-3.5-beta", "closed beta of the triple sum choice", EQ5, point(50, 3, p::beta5)),
            entry!("DERIV-3.5-gamma", "closed gamma of the triple sum choice", EQ5, point(50, 3, p::gamma5)),
            entry!("EQ-3.1", "terminating double sum equal to a 10W9", EQ12, point(50, 3, p::eq1)),
            entry!("EQ-3.2", "terminating double sum with two very-well-poised deltas", EQ2, point(50, 3, p::eq2)),
            entry!("EQ-3.3", "terminating double sum with the 6W5 kernel", EQ12, point(50, 3, p::eq3)),
            entry!("EQ-3.4", "terminating double sum with the t weight", EQ4, point(50, 3, p::eq4)),
            entry!("EQ-3.5", "terminating triple sum equal to a 12W11", EQ5, point(50, 3, p::eq5)),
            entry!(
                "FAM-4.15",
                "k-fold first lemma chain as a nested terminating sum",
                STEP2,
                point(30, 3, p::chain_double),
                family "k",
                alias None
            ),
            entry!(
                "FAM-4.16",
                "k-fold limiting chain for general a",
                AQ,
                series(30, s::fam416),
                family "k",
                alias None
            ),
            entry!("FAM-4.17", "mod 4k+3 family, a = 1", NONE, series(40, s::fam417), family "k", alias Some("RR-4.11")),
            entry!("FAM-4.18", "mod 4k+3 family, a = q", NONE, series(40, s::fam418), family "k", alias Some("RR-4.12")),
            entry!("FAM-4.19", "mod 4k+1 family, a = 1", NONE, series(40, s::fam419), family "k", alias Some("RR-4.13")),
            entry!("FAM-4.20", "mod 4k+1 family, a = q", NONE, series(40, s::fam420), family "k", alias Some("RR-4.14")),
            entry!(
                "FAM-5.11",
                "s-fold second lemma chain as a nested terminating sum",
                STEP3,
                point(20, 2, p::chain_triple),
                family "s",
                alias None
            ),
            entry!(
                "FAM-5.12",
                "s-fold limiting triple chain for general a",
                AQ,
                series(25, s::fam512),
                family "s",
                alias None
            ),
            entry!("FAM-5.13", "mod 6s+3 family, a = 1", NONE, series(30, s::fam513), family "s", alias Some("RR-5.9")),
            entry!("FAM-5.14", "mod 6s+3 family, a = q", NONE, series(30, s::fam514), family "s", alias Some("RR-5.10")),
            entry!("JTP", "Jacobi triple product and its folded form", NONE, series(100, s::jtp)),
            entry!("KEY-4.5", "double key identity behind the first lemma", STEP2, point(50, 3, p::key_double)),
            entry!("KEY-5.5", "triple key identity behind the second lemma", STEP3, point(50, 3, p::key_triple)),
            entry!("LIM-4.9", "limiting first lemma on the first double pair", AQ, series(40, s::lim49)),
            entry!("LIM-4.10", "limiting first lemma on the second double pair", AQ, series(40, s::lim410)),
            entry!("LIM-5.8", "limiting second lemma on the triple pair", AQ, series(40, s::lim58)),
            entry!("PAIR-4.7", "first double Bailey pair", AQ, point(20, 6, p::pair47)),
            entry!("PAIR-4.8", "second double Bailey pair", AQ, point(20, 6, p::pair48)),
            entry!("PAIR-5.7", "triple Bailey pair", AQ, point(20, 4, p::pair57)),
            entry!("RR-4.11", "double sum, residues 0, 3, 4 mod 7", NONE, series(50, s::rr411)),
            entry!("RR-4.12", "double sum, residues 0, 1, 6 mod 7", NONE, series(50, s::rr412)),
            entry!("RR-4.13", "double sum, residues 0, 2, 3 mod 5", NONE, series(50, s::rr413)),
            entry!("RR-4.14", "double sum, residues 0, 1, 4 mod 5", NONE, series(50, s::rr414)),
            entry!("RR-5.9", "triple sum, residues 0, 4, 5 mod 9", NONE, series(40, s::rr59)),
            entry!("RR-5.10", "triple sum, residues 0, 1, 8 mod 9", NONE, series(40, s::rr510)),
            entry!("STEP-4.1", "first lemma step preserves the pair relation", STEP2, point(20, 4, p::step_double)),
            entry!("STEP-5.1", "second lemma step preserves the pair relation", STEP3, point(20, 4, p::step_triple)),
            entry!("SUM-6PHI5", "terminating 6W5 summation", &["a", "b", "c", "M", "q"], point(50, 8, p::sum_6phi5)),
            entry!(
                "SUM-8PHI7",
                "Jackson's terminating 8W7 summation",
                &["a", "b", "c", "d", "M", "q"],
                point(50, 8, p::sum_8phi7)
            ),
            entry!(
                "SUM-SAALSCHUTZ",
                "balanced terminating 3phi2 summation",
                &["a", "b", "c", "M", "q"],
                point(50, 8, p::sum_saalschutz)
            ),
            entry!("THM-2.1", "generic double transform with lemma-driving choices", STEP2, point(50, 3, p::thm_double)),
            entry!("THM-2.2", "generic triple transform with lemma-driving choices", STEP3, point(50, 3, p::thm_triple)),
        ];
        v.sort_by(|a, b| a.id.cmp(b.id));
        v
    })
}

/// A registered identity as seen from outside.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityRecord {
    pub id: String,
    pub engine: Engine,
    pub summary: String,
    pub free_params: Vec<String>,
    /// `"k"` or `"s"` for families indexed by a positive integer.
    pub family_param: Option<String>,
    /// The record the first family member coincides with term for term.
    pub first_member_equals: Option<String>,
    pub default_order: Option<usize>,
    pub default_trials: Option<u32>,
    pub default_cap: Option<usize>,
}

impl Entry {
    fn engine(&self) -> Engine {
        match self.check {
            Check::Point { .. } => Engine::A,
            Check::Series { .. } => Engine::B,
        }
    }

    fn record(&self) -> IdentityRecord {
        let (order, trials, cap) = match self.check {
            Check::Point { trials, cap, .. } => (None, Some(trials), Some(cap)),
            Check::Series { order, .. } => (Some(order), None, None),
        };
        IdentityRecord {
            id: self.id.to_string(),
            engine: self.engine(),
            summary: self.summary.to_string(),
            free_params: self.params.iter().map(|s| s.to_string()).collect(),
            family_param: self.family.map(str::to_string),
            first_member_equals: self.k1_alias.map(str::to_string),
            default_order: order,
            default_trials: trials,
            default_cap: cap,
        }
    }
}

/// Every registered identity, sorted by id.
pub fn list_identities() -> Vec<IdentityRecord> {
    registry().iter().map(Entry::record).collect()
}

fn find(id: &str) -> Result<&'static Entry> {
    registry()
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

/// Splits `"FAM-4.17[2]"` into the base id and the family parameter.
fn parse_target(target: &str) -> Result<(&'static Entry, Option<u32>)> {
    let Some(open) = target.find('[') else {
        return Ok((find(target)?, None));
    };
    let unknown = || Error::UnknownIdentity(target.to_string());
    let inner = target[open + 1..].strip_suffix(']').ok_or_else(unknown)?;
    let k: u32 = inner.parse().map_err(|_| unknown())?;
    let entry = find(&target[..open])?;
    if entry.family.is_none() {
        return Err(unknown());
    }
    if k == 0 {
        return Err(Error::FamilyParamOutOfRange { id: entry.id.to_string(), param: k });
    }
    Ok((entry, Some(k)))
}

/// The record behind an id, accepting `"BASE[k]"` for family members.
pub fn lookup(target: &str) -> Result<IdentityRecord> {
    parse_target(target).map(|(e, _)| e.record())
}

/// Knobs for one verification run; `None` means the record's default.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationConfig {
    pub order: Option<usize>,
    pub trials: Option<u32>,
    pub seed: u64,
    pub cap: Option<usize>,
    pub max_k: u32,
    pub max_s: u32,
    /// Record wall-clock time in reports (this makes them nondeterministic).
    pub timing: bool,
}

impl Default for VerificationConfig {
    fn default() -> Self {
        VerificationConfig { order: None, trials: None, seed: 42, cap: None, max_k: 2, max_s: 2, timing: false }
    }
}

impl VerificationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == Some(0) {
            return Err(Error::InvalidSpec("trials must be at least 1".into()));
        }
        if self.max_k == 0 || self.max_s == 0 {
            return Err(Error::InvalidSpec("family ranges must include at least one member".into()));
        }
        Ok(())
    }

    fn family_max(&self, param: &str) -> u32 {
        if param == "s" {
            self.max_s
        } else {
            self.max_k
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    /// Coefficient index (engine B) or trial number (engine A).
    pub index: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: String,
    pub engine: Engine,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub trials: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cap: Option<usize>,
    pub seed: u64,
    pub first_mismatch: Option<Mismatch>,
    /// Where the mismatch or error happened.
    pub detail: Option<String>,
    pub warnings: Vec<String>,
    pub elapsed_ms: Option<u64>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    fn new(id: &str, engine: Engine, seed: u64) -> Self {
        VerificationReport {
            id: id.to_string(),
            engine,
            status: Status::Pass,
            order: None,
            trials: None,
            cap: None,
            seed,
            first_mismatch: None,
            detail: None,
            warnings: Vec::new(),
            elapsed_ms: None,
        }
    }

    fn fail(&mut self, status: Status, mismatch: Option<Mismatch>, detail: String) {
        if self.status == Status::Pass {
            self.status = status;
            self.first_mismatch = mismatch;
            self.detail = Some(detail);
        }
    }
}

/// Verifies one id, `"BASE[k]"` for a single family member, or a bare family
/// id for every member up to the configured range.
pub fn verify(target: &str, config: &VerificationConfig) -> Result<VerificationReport> {
    config.validate()?;
    let (entry, k) = parse_target(target)?;
    let start = Instant::now();
    let mut report = match (entry.family, k) {
        (Some(param), None) => {
            let mut combined = VerificationReport::new(entry.id, entry.engine(), config.seed);
            for k in 1..=config.family_max(param) {
                let r = run_entry(entry, target, k, config);
                merge(&mut combined, r, &format!("{param}={k}"));
            }
            combined
        }
        (_, k) => run_entry(entry, target, k.unwrap_or(1), config),
    };
    if config.timing {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

/// Verifies member `param` of a family.
pub fn verify_family(base_id: &str, param: u32, config: &VerificationConfig) -> Result<VerificationReport> {
    let entry = find(base_id)?;
    if entry.family.is_none() {
        return Err(Error::UnknownIdentity(format!("{base_id}[{param}]")));
    }
    verify(&format!("{base_id}[{param}]"), config)
}

/// The ids a `verify` target stands for: `"all"` is every record, bare families
/// expand to one id per member.
pub fn expand_targets(target: &str, config: &VerificationConfig) -> Result<Vec<String>> {
    let entries: Vec<&Entry> = if target == "all" {
        registry().iter().collect()
    } else {
        let (entry, k) = parse_target(target)?;
        if k.is_some() {
            return Ok(vec![target.to_string()]);
        }
        vec![entry]
    };
    let mut out = Vec::new();
    for e in entries {
        match e.family {
            Some(param) => out.extend((1..=config.family_max(param)).map(|k| format!("{}[{k}]", e.id))),
            None => out.push(e.id.to_string()),
        }
    }
    Ok(out)
}

fn merge(into: &mut VerificationReport, from: VerificationReport, member: &str) {
    into.order = into.order.or(from.order);
    into.trials = into.trials.or(from.trials);
    into.cap = into.cap.or(from.cap);
    into.warnings.extend(from.warnings.into_iter().map(|w| format!("{member}: {w}")));
    if from.status != Status::Pass {
        let detail = format!("{member}: {}", from.detail.unwrap_or_default());
        into.fail(from.status, from.first_mismatch, detail);
    }
}

fn run_entry(entry: &Entry, id: &str, k: u32, config: &VerificationConfig) -> VerificationReport {
    let mut report = VerificationReport::new(id, entry.engine(), config.seed);
    match entry.check {
        Check::Point { trials, cap, run } => {
            let trials = config.trials.unwrap_or(trials);
            let cap = config.cap.unwrap_or(cap);
            report.trials = Some(trials);
            report.cap = Some(cap);
            run_points(&mut report, entry.id, run, trials, cap, k, config.seed);
        }
        Check::Series { order, run } => {
            let order = config.order.unwrap_or(order);
            report.order = Some(order);
            match run(order, k) {
                Ok(cases) => compare_series(&mut report, &cases),
                Err(e) => report.fail(Status::Fail, None, format!("error: {e}")),
            }
        }
    }
    report
}

enum TrialResult {
    Done(Outcome),
    Exhausted(String),
    Failed(String),
}

fn run_trial(id: &str, run: PointCheck, trial: u32, cap: usize, k: u32, seed: u64) -> TrialResult {
    let mut sampler = Sampler::new(seed, id, trial as u64, cap);
    let mut last = String::new();
    for _ in 0..MAX_RETRIES {
        match run(&mut sampler, k, trial as u64) {
            Ok(o) => return TrialResult::Done(o),
            Err(e @ (Error::PoleHit(_) | Error::KernelSingularity | Error::ZeroConstantTerm)) => last = e.to_string(),
            Err(e) => return TrialResult::Failed(e.to_string()),
        }
    }
    TrialResult::Exhausted(last)
}

fn run_points(report: &mut VerificationReport, id: &str, run: PointCheck, trials: u32, cap: usize, k: u32, seed: u64) {
    let results: Vec<TrialResult> =
        (0..trials).into_par_iter().map(|t| run_trial(id, run, t, cap, k, seed)).collect();
    for (t, r) in results.into_iter().enumerate() {
        match r {
            TrialResult::Done(o) => {
                if let Some((label, lhs, rhs)) = o.mismatch {
                    let m = Mismatch { index: t, lhs: format_rational(&lhs), rhs: format_rational(&rhs) };
                    report.fail(Status::Fail, Some(m), format!("trial {t}: {label} at {}", o.point));
                }
            }
            TrialResult::Exhausted(e) => report.fail(
                Status::SamplingExhausted,
                None,
                format!("trial {t}: {}; last: {e}", Error::SamplingExhausted(MAX_RETRIES)),
            ),
            TrialResult::Failed(e) => report.fail(Status::Fail, None, format!("trial {t}: error: {e}")),
        }
    }
}

fn compare_series(report: &mut VerificationReport, cases: &[SeriesCase]) {
    for c in cases {
        if let Some(i) = c.lhs.first_mismatch(&c.rhs) {
            let m = Mismatch { index: i, lhs: format_rational(c.lhs.coeff(i)), rhs: format_rational(c.rhs.coeff(i)) };
            report.fail(Status::Fail, Some(m), format!("{}: coefficient of q^{i}", c.label));
        }
        if c.positive && !has_nonnegative_integer_coeffs(&c.lhs) {
            report.warnings.push(format!("{}: a coefficient is not a nonnegative integer", c.label));
        }
    }
}

/// Both expanded sides of an engine B target, one entry per compared pair.
pub fn expand_sides(target: &str, order: Option<usize>) -> Result<Vec<SeriesCase>> {
    let (entry, k) = parse_target(target)?;
    match entry.check {
        Check::Series { order: default, run } => run(order.unwrap_or(default), k.unwrap_or(1)),
        Check::Point { .. } => Err(Error::InvalidSpec(format!("{} is checked at points, not as a series", entry.id))),
    }
}

/// Runs one target per entry of `targets`, in parallel, keeping the input order.
pub fn verify_many(targets: &[String], config: &VerificationConfig) -> Vec<Result<VerificationReport>> {
    targets.par_iter().map(|t| verify(t, config)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_sorted_and_complete() {
        let ids: Vec<String> = list_identities().into_iter().map(|r| r.id).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        assert_eq!(ids, sorted);
        assert!(ids.len() >= 35);
        for id in ["EQ-3.1", "RR-4.11", "FAM-4.17", "JTP", "SUM-8PHI7", "DERIV-3.5-gamma"] {
            assert!(ids.iter().any(|x| x == id), "{id}");
        }
        assert_eq!(lookup("RR-4.11").unwrap().engine, Engine::B);
        assert_eq!(lookup("FAM-4.17[1]").unwrap().first_member_equals.as_deref(), Some("RR-4.11"));
    }

    #[test]
    fn bad_targets() {
        assert!(matches!(lookup("EQ-9.9"), Err(Error::UnknownIdentity(_))));
        assert!(matches!(lookup("RR-4.11[2]"), Err(Error::UnknownIdentity(_))));
        assert!(matches!(lookup("FAM-4.17[0]"), Err(Error::FamilyParamOutOfRange { .. })));
        assert!(matches!(lookup("FAM-4.17[x]"), Err(Error::UnknownIdentity(_))));
    }

    #[test]
    fn expansion() {
        let c = VerificationConfig { max_k: 3, ..Default::default() };
        assert_eq!(expand_targets("FAM-4.17", &c).unwrap(), vec!["FAM-4.17[1]", "FAM-4.17[2]", "FAM-4.17[3]"]);
        assert_eq!(expand_targets("FAM-5.13[4]", &c).unwrap(), vec!["FAM-5.13[4]"]);
        let all = expand_targets("all", &c).unwrap();
        assert!(all.contains(&"FAM-5.14[2]".to_string()));
    }

    #[test]
    fn rr_small_order() {
        let c = VerificationConfig { order: Some(4), ..Default::default() };
        assert!(verify("RR-4.11", &c).unwrap().passed());
    }
}
