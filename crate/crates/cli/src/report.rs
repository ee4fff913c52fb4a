//! Report rows, the batch runner and rendering.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use twistspin::{
    verify_lemma2, verify_theorem1_group_level, Knot, Limits, OrderOutcome, Triviality, Verdict,
    VerificationReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Lemma2,
    Theorem1,
}

impl CheckKind {
    pub fn label(self) -> &'static str {
        match self {
            CheckKind::Lemma2 => "lemma2",
            CheckKind::Theorem1 => "theorem1",
        }
    }
}

/// What a run was asked to do. Serialized at the top of every report.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub input: String,
    pub checks: Vec<CheckKind>,
    pub n: Vec<u32>,
    pub max_cosets: usize,
    pub jobs: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum OrderCell {
    Order(usize),
    Overflow(&'static str),
}

impl From<OrderOutcome> for OrderCell {
    fn from(o: OrderOutcome) -> Self {
        match o {
            OrderOutcome::Order(n) => OrderCell::Order(n),
            OrderOutcome::Overflow => OrderCell::Overflow("overflow"),
        }
    }
}

/// One (knot, check, n) result, or a knot that could not be read.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Row {
    pub name: String,
    pub check: Option<CheckKind>,
    pub n: Option<u32>,
    pub order: Option<OrderCell>,
    pub abelian: Option<String>,
    pub longitude_trivial: Option<bool>,
    pub double_coset: Option<bool>,
    pub verdict: Verdict,
    pub millis: Option<u64>,
    pub error: Option<String>,
}

impl Row {
    pub fn from_report(check: CheckKind, r: &VerificationReport, timings: bool) -> Self {
        Row {
            name: r.knot.clone(),
            check: Some(check),
            n: Some(r.n),
            order: Some(r.order.into()),
            abelian: Some(r.abelian.clone()),
            longitude_trivial: match r.longitude_trivial {
                Triviality::True => Some(true),
                Triviality::False => Some(false),
                Triviality::Unknown => None,
            },
            double_coset: r.double_coset,
            verdict: r.verdict,
            millis: timings.then_some(r.millis),
            error: None,
        }
    }

    pub fn failed(name: &str, check: Option<CheckKind>, n: Option<u32>, error: String) -> Self {
        Row {
            name: name.to_string(),
            check,
            n,
            order: None,
            abelian: None,
            longitude_trivial: None,
            double_coset: None,
            verdict: Verdict::Fail,
            millis: None,
            error: Some(error),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub tool_version: &'static str,
    pub config: RunConfig,
    pub rows: Vec<Row>,
}

/// A knot to check, or the reason it could not be read.
pub type Entry = (String, Result<Knot, String>);

/// Runs every check for every entry and `n`, in input order. Rows are
/// computed on a pool of `jobs` threads and collected in order, so the
/// result does not depend on `jobs`.
pub fn run(
    entries: &[Entry],
    checks: &[CheckKind],
    ns: &[u32],
    lim: Limits,
    jobs: usize,
    timings: bool,
) -> anyhow::Result<Vec<Row>> {
    enum Task<'a> {
        Bad(&'a str, &'a str),
        Check(&'a Knot, CheckKind, u32),
    }
    let mut tasks = Vec::new();
    for (name, knot) in entries {
        match knot {
            Err(e) => tasks.push(Task::Bad(name, e)),
            Ok(k) => {
                for &c in checks {
                    for &n in ns {
                        tasks.push(Task::Check(k, c, n));
                    }
                }
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build()?;
    let rows = pool.install(|| {
        tasks
            .par_iter()
            .map(|t| match *t {
                Task::Bad(name, e) => Row::failed(name, None, None, e.to_string()),
                Task::Check(k, c, n) => {
                    let res = match c {
                        CheckKind::Lemma2 => verify_lemma2(k, n, lim),
                        CheckKind::Theorem1 => verify_theorem1_group_level(k, n, lim),
                    };
                    match res {
                        Ok(r) => Row::from_report(c, &r, timings),
                        Err(e) => Row::failed(k.name(), Some(c), Some(n), e.to_string()),
                    }
                }
            })
            .collect()
    });
    Ok(rows)
}

/// 0 if every row passed, 3 if any failed, otherwise 2.
pub fn exit_code(rows: &[Row]) -> u8 {
    match rows.iter().map(|r| r.verdict).max() {
        Some(Verdict::Fail) => 3,
        Some(Verdict::Inconclusive) => 2,
        _ => 0,
    }
}

pub fn to_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or("unknown".into(), T::to_string)
}

pub fn to_text(report: &Report) -> String {
    let mut s = String::new();
    for r in &report.rows {
        if let Some(e) = &r.error {
            let _ = writeln!(s, "{} {} error: {e}", r.name, r.verdict);
            continue;
        }
        let order = match r.order {
            Some(OrderCell::Order(n)) => n.to_string(),
            _ => "overflow".into(),
        };
        let _ = write!(
            s,
            "{} {} n={} {} order={} abelian={} longitude_trivial={} double_coset={}",
            r.name,
            r.check.map_or("-", CheckKind::label),
            opt(&r.n),
            r.verdict,
            order,
            opt(&r.abelian),
            opt(&r.longitude_trivial),
            opt(&r.double_coset),
        );
        if let Some(ms) = r.millis {
            let _ = write!(s, " millis={ms}");
        }
        s.push('\n');
    }
    let count = |v: Verdict| report.rows.iter().filter(|r| r.verdict == v).count();
    let _ = writeln!(
        s,
        "{} rows: {} PASS, {} INCONCLUSIVE, {} FAIL",
        report.rows.len(),
        count(Verdict::Pass),
        count(Verdict::Inconclusive),
        count(Verdict::Fail)
    );
    s
}
