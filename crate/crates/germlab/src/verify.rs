//! Recomputes every checkable column of a set of table rows.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use germlab_core::table::{check, Env, Outcome, TableRow};
use germlab_core::TangentSettings;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColumnOutcome {
    pub column: String,
    pub check: String,
    #[serde(flatten)]
    pub outcome: OutcomeRecord,
}

/// Serializable mirror of [`Outcome`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum OutcomeRecord {
    Pass,
    Fail { expected: String, got: String },
    Skipped { reason: String },
}

impl From<Outcome> for OutcomeRecord {
    fn from(o: Outcome) -> Self {
        match o {
            Outcome::Pass => OutcomeRecord::Pass,
            Outcome::Fail { expected, got } => OutcomeRecord::Fail { expected, got },
            Outcome::Skipped { reason } => OutcomeRecord::Skipped { reason },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceReport {
    pub table: String,
    pub row: String,
    pub params: Env,
    pub outcomes: Vec<ColumnOutcome>,
    #[serde(serialize_with = "millis")]
    pub elapsed: Duration,
}

fn millis<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u64(d.as_millis() as u64)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub instances: Vec<InstanceReport>,
    pub counts: Counts,
    #[serde(serialize_with = "millis")]
    pub elapsed: Duration,
}

impl VerificationReport {
    /// Everything except the timings, for comparing runs.
    pub fn outcomes(&self) -> Vec<(String, String, Env, Vec<ColumnOutcome>)> {
        self.instances
            .iter()
            .map(|i| (i.table.clone(), i.row.clone(), i.params.clone(), i.outcomes.clone()))
            .collect()
    }

    pub fn failures(&self) -> impl Iterator<Item = (&InstanceReport, &ColumnOutcome)> {
        self.instances
            .iter()
            .flat_map(|i| i.outcomes.iter().filter(|o| matches!(o.outcome, OutcomeRecord::Fail { .. })).map(move |o| (i, o)))
    }

    /// One line per instance plus a summary line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for i in &self.instances {
            let params: Vec<String> = i.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let params = if params.is_empty() { String::new() } else { format!(" [{}]", params.join(", ")) };
            let cols: Vec<String> = i
                .outcomes
                .iter()
                .map(|o| match &o.outcome {
                    OutcomeRecord::Pass => format!("{} ok", o.column),
                    OutcomeRecord::Fail { expected, got } => format!("{} FAIL expected {expected} got {got}", o.column),
                    OutcomeRecord::Skipped { reason } => format!("{} skipped ({reason})", o.column),
                })
                .collect();
            out.push_str(&format!(
                "{} {}{}: {} ({} ms)\n",
                i.table,
                i.row,
                params,
                cols.join("; "),
                i.elapsed.as_millis()
            ));
        }
        out.push_str(&format!(
            "{} passed, {} failed, {} skipped in {} ms\n",
            self.counts.pass,
            self.counts.fail,
            self.counts.skipped,
            self.elapsed.as_millis()
        ));
        out
    }
}

fn run_instance(row: &TableRow, env: &Env, settings: &TangentSettings) -> Vec<ColumnOutcome> {
    let a = row.instantiate(env);
    row.columns
        .iter()
        .map(|c| {
            let outcome = match &a {
                Ok(a) => check(c, a, env, settings),
                Err(e) => Outcome::Fail { expected: c.text.clone(), got: format!("cannot instantiate: {e}") },
            };
            ColumnOutcome { column: c.name.clone(), check: c.kind.to_string(), outcome: outcome.into() }
        })
        .collect()
}

/// Instantiates every row with parameters up to `param_bound` and checks each
/// column. Work is spread over `jobs` threads; the report is ordered by row,
/// then by parameter tuple, whatever the scheduling.
pub fn verify(rows: &[TableRow], param_bound: i64, jobs: usize, settings: &TangentSettings) -> VerificationReport {
    let start = Instant::now();
    let mut work: Vec<(usize, Option<Env>)> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        match r.instances(param_bound) {
            Ok(v) if v.is_empty() => work.push((i, None)),
            Ok(v) => work.extend(v.into_iter().map(|e| (i, Some(e)))),
            Err(_) => work.push((i, None)),
        }
    }
    let slots: Vec<Mutex<Option<InstanceReport>>> = work.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let worker = || loop {
        let k = next.fetch_add(1, Ordering::Relaxed);
        if k >= work.len() {
            break;
        }
        let (ri, env) = &work[k];
        let row = &rows[*ri];
        let t0 = Instant::now();
        let (params, outcomes) = match env {
            Some(env) => (env.clone(), run_instance(row, env, settings)),
            None => {
                let reason = match row.instances(param_bound) {
                    Err(e) => format!("cannot enumerate parameters: {e}"),
                    Ok(_) => format!("no admissible parameters up to {param_bound}"),
                };
                let outs = row
                    .columns
                    .iter()
                    .map(|c| ColumnOutcome {
                        column: c.name.clone(),
                        check: c.kind.to_string(),
                        outcome: OutcomeRecord::Skipped { reason: reason.clone() },
                    })
                    .collect();
                (Env::new(), outs)
            }
        };
        *slots[k].lock().unwrap() = Some(InstanceReport {
            table: row.table.clone(),
            row: row.name.clone(),
            params,
            outcomes,
            elapsed: t0.elapsed(),
        });
    };
    let jobs = jobs.max(1).min(work.len().max(1));
    std::thread::scope(|s| {
        for _ in 0..jobs {
            s.spawn(worker);
        }
    });
    let instances: Vec<InstanceReport> = slots.into_iter().map(|m| m.into_inner().unwrap().unwrap()).collect();
    let mut counts = Counts::default();
    for i in &instances {
        for o in &i.outcomes {
            match o.outcome {
                OutcomeRecord::Pass => counts.pass += 1,
                OutcomeRecord::Fail { .. } => counts.fail += 1,
                OutcomeRecord::Skipped { .. } => counts.skipped += 1,
            }
        }
    }
    VerificationReport { instances, counts, elapsed: start.elapsed() }
}
