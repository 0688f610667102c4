//! Named verification suites producing one report per parameter tuple.
//!
//! A suite expands a [`SweepSpec`] into tasks, runs them on the rayon pool
//! and returns the reports in enumeration order, so reruns are identical.

mod check;
mod suites;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::config::Caps;
use crate::{Error, Result};

pub use check::Exact;
use check::Checker;

/// The available suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// `f_d` of intersections of `t` d-Leray complexes against `g_d`, with
    /// equality on the block-partition complexes.
    LerayIntersection,
    /// Statistics of the Eckhoff hypergraph and its slab realisation.
    Eckhoff,
    /// The product-of-slabs construction.
    Product,
    /// Minimum of `Σ C(x_i, k)` over compositions against the balanced form.
    Partition,
    /// Edge bounds for intersections of 1-Leray complexes.
    Turan,
    /// Observed `f_j` against the higher-face bound, never asserted.
    HigherFaces,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::LerayIntersection,
        Suite::Eckhoff,
        Suite::Product,
        Suite::Partition,
        Suite::Turan,
        Suite::HigherFaces,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::LerayIntersection => "leray-intersection",
            Suite::Eckhoff => "eckhoff",
            Suite::Product => "product",
            Suite::Partition => "partition",
            Suite::Turan => "turan",
            Suite::HigherFaces => "higher-faces",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
                Error::input(format!("unknown suite {s:?}, expected one of {}", names.join(", ")))
            })
    }
}

/// An inclusive integer range; empty when `lo > hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntRange {
    pub lo: usize,
    pub hi: usize,
}

impl IntRange {
    pub fn new(lo: usize, hi: usize) -> Self {
        IntRange { lo, hi }
    }

    pub fn single(v: usize) -> Self {
        IntRange { lo: v, hi: v }
    }

    pub fn iter(self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }

    pub fn is_empty(self) -> bool {
        self.lo > self.hi
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..={}", self.lo, self.hi)
        }
    }
}

/// Accepts `a`, `a..b` (exclusive) and `a..=b`.
impl FromStr for IntRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let num = |x: &str| -> Result<usize> {
            x.trim()
                .parse()
                .map_err(|_| Error::input(format!("bad range bound {x:?} in {s:?}")))
        };
        if let Some((a, b)) = s.split_once("..=") {
            Ok(IntRange::new(num(a)?, num(b)?))
        } else if let Some((a, b)) = s.split_once("..") {
            let (lo, hi) = (num(a)?, num(b)?);
            Ok(match hi.checked_sub(1) {
                Some(h) => IntRange::new(lo, h),
                None => IntRange::new(1, 0),
            })
        } else {
            Ok(IntRange::single(num(s)?))
        }
    }
}

/// Everything a suite run depends on. Unset ranges fall back to suite
/// defaults, which only ever produce tuples inside the hypotheses; explicit
/// ranges may produce tuples outside them, which are reported as skipped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub suite: Suite,
    pub n: Option<IntRange>,
    pub d: Option<IntRange>,
    pub t: Option<IntRange>,
    pub r: Option<IntRange>,
    pub m: Option<IntRange>,
    pub x: Option<IntRange>,
    pub k: Option<IntRange>,
    pub j: Option<IntRange>,
    pub seed: u64,
    /// Random instances per parameter tuple.
    pub samples: usize,
    pub caps: Caps,
    /// Run the geometric realisations where the caps allow.
    pub geometry: bool,
    /// Run the negative controls.
    pub controls: bool,
    /// Record wall-clock time; off by default since it breaks reproducibility.
    pub timing: bool,
    /// Free-form record of how the run was requested, copied into reports.
    pub echo: Value,
}

impl SweepSpec {
    pub fn new(suite: Suite) -> Self {
        SweepSpec {
            suite,
            n: None,
            d: None,
            t: None,
            r: None,
            m: None,
            x: None,
            k: None,
            j: None,
            seed: 0,
            samples: 6,
            caps: Caps::default(),
            geometry: true,
            controls: true,
            timing: false,
            echo: Value::Null,
        }
    }

    fn config(&self) -> Value {
        let mut ranges = Map::new();
        let axes = [
            ("n", self.n),
            ("d", self.d),
            ("t", self.t),
            ("r", self.r),
            ("m", self.m),
            ("x", self.x),
            ("k", self.k),
            ("j", self.j),
        ];
        for (name, range) in axes {
            if let Some(r) = range {
                ranges.insert(name.into(), Value::String(r.to_string()));
            }
        }
        serde_json::json!({
            "ranges": ranges,
            "samples": self.samples,
            "caps": self.caps,
            "geometry": self.geometry,
            "controls": self.controls,
            "flags": self.echo,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Check,
    /// Deliberately corrupted input; `ok` iff the verdict matches `expect`.
    NegativeControl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Outside the hypotheses or the caps; nothing was asserted.
    Skip,
    /// Observational output with no assertion.
    Info,
    /// The computation itself failed, e.g. a construction ran out of retries.
    Error,
}

/// One checked parameter tuple.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: Suite,
    pub case: String,
    pub role: Role,
    pub params: Map<String, Value>,
    pub measured: Map<String, Value>,
    pub predicted: Map<String, Value>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Verdict>,
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub messages: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Value>,
    pub seed: u64,
    pub config: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

impl VerificationReport {
    /// Whether this report asserted something, i.e. is neither skipped nor
    /// informational.
    pub fn is_assertion(&self) -> bool {
        !matches!(self.verdict, Verdict::Skip | Verdict::Info)
    }
}

/// The body of a task; a resource error turns into a skip.
type Job = Box<dyn Fn(&Ctx, &mut Checker) -> Result<()> + Send + Sync>;

struct Task {
    case: &'static str,
    role: Role,
    expect: Option<Verdict>,
    params: Map<String, Value>,
    job: Job,
}

impl Task {
    fn check(case: &'static str, params: Map<String, Value>, job: Job) -> Self {
        Task {
            case,
            role: Role::Check,
            expect: None,
            params,
            job,
        }
    }

    fn control(case: &'static str, params: Map<String, Value>, expect: Verdict, job: Job) -> Self {
        Task {
            case,
            role: Role::NegativeControl,
            expect: Some(expect),
            params,
            job,
        }
    }

    /// A tuple outside the hypotheses, reported without running anything.
    fn skipped(case: &'static str, params: Map<String, Value>, reason: String) -> Self {
        Task::check(
            case,
            params,
            Box::new(move |_, c| {
                c.skip(reason.clone());
                Ok(())
            }),
        )
    }
}

struct Ctx<'a> {
    spec: &'a SweepSpec,
    seed: u64,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Per-task seed mixed from the run seed and the task's identity, so a
/// tuple's randomness does not depend on which other tuples are swept.
fn task_seed(base: u64, suite: Suite, case: &str, params: &Map<String, Value>) -> u64 {
    let key = format!("{suite}/{case}/{}", Value::Object(params.clone()));
    key.bytes()
        .fold(splitmix64(base), |h, b| splitmix64(h ^ u64::from(b)))
}

/// Runs one suite. Reports come back in enumeration order.
pub fn run(spec: &SweepSpec) -> Result<Vec<VerificationReport>> {
    let tasks = suites::tasks(spec)?;
    let config = spec.config();
    Ok(tasks
        .par_iter()
        .map(|task| {
            let seed = task_seed(spec.seed, spec.suite, task.case, &task.params);
            let ctx = Ctx { spec, seed };
            let start = Instant::now();
            let mut c = Checker::default();
            if let Err(e) = (task.job)(&ctx, &mut c) {
                match e {
                    Error::Resource { .. } => c.skip(e.to_string()),
                    other => c.error(other.to_string()),
                }
            }
            let elapsed = start.elapsed();
            let verdict = c.verdict();
            let ok = match task.expect {
                Some(expected) => verdict == expected,
                None => verdict != Verdict::Fail && verdict != Verdict::Error,
            };
            VerificationReport {
                suite: spec.suite,
                case: task.case.to_string(),
                role: task.role,
                params: task.params.clone(),
                measured: c.measured,
                predicted: c.predicted,
                verdict,
                expect: task.expect,
                ok,
                messages: c.messages,
                witnesses: c.witnesses,
                seed,
                config: config.clone(),
                wall_time_ms: spec.timing.then_some(elapsed.as_secs_f64() * 1e3),
            }
        })
        .collect())
}

/// Counts over a batch of reports.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    pub info: usize,
    pub error: usize,
    pub controls: usize,
    pub not_ok: usize,
}

impl Summary {
    pub fn of(reports: &[VerificationReport]) -> Self {
        let mut s = Summary::default();
        for r in reports {
            s.total += 1;
            match r.verdict {
                Verdict::Pass => s.pass += 1,
                Verdict::Fail => s.fail += 1,
                Verdict::Skip => s.skip += 1,
                Verdict::Info => s.info += 1,
                Verdict::Error => s.error += 1,
            }
            if r.role == Role::NegativeControl {
                s.controls += 1;
            }
            if !r.ok {
                s.not_ok += 1;
            }
        }
        s
    }

    pub fn all_ok(&self) -> bool {
        self.not_ok == 0
    }
}

fn flatten_into(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Number(n) => out.push((prefix.to_string(), n.to_string())),
        Value::Bool(b) => out.push((prefix.to_string(), b.to_string())),
        // exact integers too large for a JSON number, and "p/q" rationals
        Value::String(s) if crate::serde_util::parse_rational(s).is_ok() => {
            out.push((prefix.to_string(), s.clone()))
        }
        Value::Object(m) => {
            for (k, v) in m {
                flatten_into(&format!("{prefix}.{k}"), v, out);
            }
        }
        _ => {}
    }
}

/// Flattens the scalar numeric fields of each report into one table with
/// a shared header; missing cells are empty.
pub fn to_table(reports: &[VerificationReport]) -> (Vec<String>, Vec<Vec<String>>) {
    let fixed = ["suite", "case", "role", "verdict", "ok", "seed"];
    let flat: Vec<Vec<(String, String)>> = reports
        .iter()
        .map(|r| {
            let mut out = vec![
                ("suite".to_string(), r.suite.to_string()),
                ("case".to_string(), r.case.clone()),
                ("role".to_string(), label(&r.role)),
                ("verdict".to_string(), label(&r.verdict)),
                ("ok".to_string(), r.ok.to_string()),
                ("seed".to_string(), r.seed.to_string()),
            ];
            for (section, map) in [
                ("params", &r.params),
                ("measured", &r.measured),
                ("predicted", &r.predicted),
            ] {
                for (k, v) in map {
                    flatten_into(&format!("{section}.{k}"), v, &mut out);
                }
            }
            if let Some(ms) = r.wall_time_ms {
                out.push(("wall_time_ms".to_string(), format!("{ms:.3}")));
            }
            out
        })
        .collect();
    let mut seen = BTreeSet::new();
    let mut header: Vec<String> = fixed.iter().map(|s| s.to_string()).collect();
    for row in &flat {
        for (k, _) in row {
            if !fixed.contains(&k.as_str()) && seen.insert(k.clone()) {
                header.push(k.clone());
            }
        }
    }
    let rows = flat
        .into_iter()
        .map(|row| {
            header
                .iter()
                .map(|h| {
                    row.iter()
                        .find(|(k, _)| k == h)
                        .map(|(_, v)| v.clone())
                        .unwrap_or_default()
                })
                .collect()
        })
        .collect();
    (header, rows)
}

fn label<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(Value::String(s)) => s,
        _ => String::new(),
    }
}
