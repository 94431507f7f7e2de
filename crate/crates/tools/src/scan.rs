//! Parallel sweep over a rectangular `(s, c)` grid.
//!
//! Workers pull grid points from a shared cursor and evaluate them in any
//! order. A single sequencer re-orders the results and hands them to the
//! sink in `(s, c)` ascending order, so the output does not depend on the
//! worker count. Workers may run at most [`REORDER_WINDOW_PER_WORKER`] points
//! per worker ahead of the sequencer, which bounds the reorder buffer.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{mpsc, Condvar, Mutex};
use std::thread;

use cubesum_core::{completeness_bound, solve, BigInt, SolutionSet, Triple, TripleSystem};
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::json::{triple_from_wire, triple_to_wire, Int, Kind, WireTriple};

pub const REORDER_WINDOW_PER_WORKER: u64 = 16;

#[derive(Debug, thiserror::Error)]
pub enum ScanError {
    #[error("empty range {0}")]
    EmptyRange(GridRange),
    #[error("worker count must be at least 1")]
    NoWorkers,
    #[error("solving s = {s}, c = {c}: {source}")]
    Solve {
        s: BigInt,
        c: BigInt,
        source: cubesum_core::Error,
    },
    #[error("writing scan output: {0}")]
    Io(#[from] io::Error),
}

/// Inclusive integer range written `A:B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridRange {
    pub start: BigInt,
    pub end: BigInt,
}

impl GridRange {
    pub fn new(start: impl Into<BigInt>, end: impl Into<BigInt>) -> Self {
        GridRange {
            start: start.into(),
            end: end.into(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.start > self.end
    }

    pub fn len(&self) -> BigInt {
        if self.is_empty() {
            BigInt::default()
        } else {
            &self.end - &self.start + 1
        }
    }
}

impl fmt::Display for GridRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid range `{0}`, expected A:B with integers A <= B")]
pub struct ParseRangeError(String);

impl FromStr for GridRange {
    type Err = ParseRangeError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = || ParseRangeError(text.to_string());
        let (a, b) = text.split_once(':').ok_or_else(err)?;
        let range = GridRange {
            start: a.trim().parse().map_err(|_| err())?,
            end: b.trim().parse().map_err(|_| err())?,
        };
        if range.is_empty() {
            return Err(err());
        }
        Ok(range)
    }
}

/// One line of scan output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRecord {
    pub s: BigInt,
    pub c: BigInt,
    pub kind: Kind,
    /// Finite records only.
    pub solution_count: Option<usize>,
    /// Finite records only, and only when requested.
    pub solutions: Option<Vec<Triple>>,
    /// Finite records only.
    pub bound_used: Option<BigInt>,
}

impl ScanRecord {
    pub fn evaluate(system: &TripleSystem, include_solutions: bool) -> cubesum_core::Result<Self> {
        let record = match solve(system)? {
            SolutionSet::InfiniteFamily { .. } => ScanRecord {
                s: system.s.clone(),
                c: system.c.clone(),
                kind: Kind::InfiniteFamily,
                solution_count: None,
                solutions: None,
                bound_used: None,
            },
            SolutionSet::Finite(triples) => ScanRecord {
                s: system.s.clone(),
                c: system.c.clone(),
                kind: Kind::Finite,
                solution_count: Some(triples.len()),
                bound_used: Some(completeness_bound(system)?),
                solutions: include_solutions.then_some(triples),
            },
        };
        Ok(record)
    }

    pub fn system(&self) -> TripleSystem {
        TripleSystem::new(self.s.clone(), self.c.clone())
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(&WireRecord::from(self)).expect("wire types always serialize")
    }

    pub fn from_json_line(line: &str) -> serde_json::Result<Self> {
        serde_json::from_str::<WireRecord>(line).map(ScanRecord::from)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireRecord {
    s: Int,
    c: Int,
    kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    solution_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    solutions: Option<Vec<WireTriple>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bound_used: Option<Int>,
}

impl From<&ScanRecord> for WireRecord {
    fn from(r: &ScanRecord) -> Self {
        WireRecord {
            s: Int(r.s.clone()),
            c: Int(r.c.clone()),
            kind: r.kind,
            solution_count: r.solution_count,
            solutions: r
                .solutions
                .as_ref()
                .map(|t| t.iter().map(triple_to_wire).collect()),
            bound_used: r.bound_used.clone().map(Int),
        }
    }
}

impl From<WireRecord> for ScanRecord {
    fn from(w: WireRecord) -> Self {
        ScanRecord {
            s: w.s.0,
            c: w.c.0,
            kind: w.kind,
            solution_count: w.solution_count,
            solutions: w
                .solutions
                .map(|t| t.into_iter().map(triple_from_wire).collect()),
            bound_used: w.bound_used.map(|b| b.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanOptions {
    pub sums: GridRange,
    pub cubes: GridRange,
    pub workers: usize,
    pub include_solutions: bool,
}

/// Counts over the emitted records. `empty` counts finite records with no
/// solutions and is a subset of `finite`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScanSummary {
    pub points: u64,
    pub finite: u64,
    pub infinite_family: u64,
    pub empty: u64,
}

impl ScanSummary {
    fn count(&mut self, record: &ScanRecord) {
        self.points += 1;
        match record.kind {
            Kind::InfiniteFamily => self.infinite_family += 1,
            Kind::Finite => {
                self.finite += 1;
                if record.solution_count == Some(0) {
                    self.empty += 1;
                }
            }
        }
    }
}

impl fmt::Display for ScanSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} points: {} finite ({} empty), {} infinite_family",
            self.points, self.finite, self.empty, self.infinite_family
        )
    }
}

/// Row-major cursor over the grid: `s` outer, `c` inner.
struct Cursor {
    next_seq: u64,
    s: BigInt,
    c: BigInt,
    done: bool,
    /// Sequence number the sequencer will emit next.
    emitted: u64,
}

impl Cursor {
    fn claim(&mut self, options: &ScanOptions) -> Option<(u64, TripleSystem)> {
        if self.done {
            return None;
        }
        let point = (
            self.next_seq,
            TripleSystem::new(self.s.clone(), self.c.clone()),
        );
        self.next_seq += 1;
        if self.c < options.cubes.end {
            self.c += BigInt::one();
        } else if self.s < options.sums.end {
            self.s += BigInt::one();
            self.c = options.cubes.start.clone();
        } else {
            self.done = true;
        }
        Some(point)
    }
}

type Evaluated = (u64, Result<ScanRecord, ScanError>);

/// Evaluates every grid point and passes the records to `sink` in `(s, c)`
/// ascending order. Stops at the first sink or solver error.
pub fn scan_grid<F>(options: &ScanOptions, mut sink: F) -> Result<ScanSummary, ScanError>
where
    F: FnMut(&ScanRecord) -> io::Result<()>,
{
    for range in [&options.sums, &options.cubes] {
        if range.is_empty() {
            return Err(ScanError::EmptyRange(range.clone()));
        }
    }
    if options.workers == 0 {
        return Err(ScanError::NoWorkers);
    }

    let window = REORDER_WINDOW_PER_WORKER * options.workers as u64;
    let cursor = Mutex::new(Cursor {
        next_seq: 0,
        s: options.sums.start.clone(),
        c: options.cubes.start.clone(),
        done: false,
        emitted: 0,
    });
    let progressed = Condvar::new();
    let stop = AtomicBool::new(false);
    let (tx, rx) = mpsc::channel::<Evaluated>();

    thread::scope(|scope| {
        for _ in 0..options.workers {
            let tx = tx.clone();
            let (cursor, progressed, stop) = (&cursor, &progressed, &stop);
            scope.spawn(move || loop {
                let claimed = {
                    let mut state = cursor.lock().expect("cursor lock");
                    while !stop.load(Ordering::Relaxed)
                        && !state.done
                        && state.next_seq >= state.emitted + window
                    {
                        state = progressed.wait(state).expect("cursor lock");
                    }
                    if stop.load(Ordering::Relaxed) {
                        None
                    } else {
                        state.claim(options)
                    }
                };
                let Some((seq, system)) = claimed else { break };
                let record =
                    ScanRecord::evaluate(&system, options.include_solutions).map_err(|source| {
                        ScanError::Solve {
                            s: system.s.clone(),
                            c: system.c.clone(),
                            source,
                        }
                    });
                if tx.send((seq, record)).is_err() {
                    break;
                }
            });
        }
        drop(tx);

        let result = sequence(rx, &mut sink, |emitted| {
            cursor.lock().expect("cursor lock").emitted = emitted;
            progressed.notify_all();
        });
        if result.is_err() {
            stop.store(true, Ordering::Relaxed);
            // wake workers parked on the window
            let _guard = cursor.lock().expect("cursor lock");
            progressed.notify_all();
        }
        result
    })
}

/// Drains worker results in sequence order. The receiver is dropped on
/// return so blocked workers see a closed channel.
fn sequence<F>(
    rx: mpsc::Receiver<Evaluated>,
    sink: &mut F,
    mut on_emit: impl FnMut(u64),
) -> Result<ScanSummary, ScanError>
where
    F: FnMut(&ScanRecord) -> io::Result<()>,
{
    let mut pending = BTreeMap::new();
    let mut next = 0u64;
    let mut summary = ScanSummary::default();
    for (seq, record) in rx {
        pending.insert(seq, record);
        let before = next;
        while let Some(record) = pending.remove(&next) {
            let record = record?;
            sink(&record)?;
            summary.count(&record);
            next += 1;
        }
        if next != before {
            on_emit(next);
        }
    }
    debug_assert!(pending.is_empty());
    Ok(summary)
}

/// Sink that writes one JSON record per line.
pub fn jsonl_sink<W: Write>(out: &mut W) -> impl FnMut(&ScanRecord) -> io::Result<()> + '_ {
    move |record| {
        out.write_all(record.to_json_line().as_bytes())?;
        out.write_all(b"\n")
    }
}
