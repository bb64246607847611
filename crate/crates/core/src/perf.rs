//! Speedup, efficiency and Amdahl's law, plus the serial-vs-cluster
//! benchmark harness.

use std::io::Write;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::cluster::{run_cluster_sieve, run_serial_baseline};
use crate::error::{Error, Result};

/// `S = T_serial / T_parallel`.
pub fn speedup(t_serial: f64, t_parallel: f64) -> Result<f64> {
    if !(t_serial > 0.0 && t_parallel > 0.0) {
        return Err(Error::domain(format!(
            "times must be positive, got serial {t_serial} and parallel {t_parallel}"
        )));
    }
    Ok(t_serial / t_parallel)
}

/// `E = S / P`; equals 1 exactly at linear speedup.
pub fn efficiency(s: f64, p: u64) -> Result<f64> {
    if p == 0 {
        return Err(Error::domain("core count must be at least 1"));
    }
    Ok(s / p as f64)
}

/// Parallel fraction `f ∈ [0, 1]` accelerated by a factor `s >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AmdahlInput {
    f: f64,
    s: f64,
}

impl AmdahlInput {
    pub fn new(f: f64, s: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&f) {
            return Err(Error::domain(format!("parallel fraction must lie in [0, 1], got {f}")));
        }
        if s.is_nan() || s < 1.0 {
            return Err(Error::domain(format!("component speedup must be >= 1, got {s}")));
        }
        Ok(Self { f, s })
    }

    pub fn f(&self) -> f64 {
        self.f
    }

    pub fn s(&self) -> f64 {
        self.s
    }
}

/// `1 / ((1 − f) + f/s)`. An infinite `s` gives the `1/(1 − f)` bound.
pub fn amdahl_speedup(input: AmdahlInput) -> f64 {
    1.0 / ((1.0 - input.f) + input.f / input.s)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Aggregation {
    Median,
}

/// One benchmark row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub n: u64,
    pub k: u64,
    pub workers: usize,
    pub t_serial: f64,
    pub t_parallel: f64,
    pub speedup: f64,
    pub efficiency: f64,
    pub repetitions: usize,
    pub aggregation: Aggregation,
}

impl BenchRecord {
    pub fn from_times(
        n: u64,
        k: u64,
        workers: usize,
        t_serial: f64,
        t_parallel: f64,
        repetitions: usize,
    ) -> Result<Self> {
        let speedup = speedup(t_serial, t_parallel)?;
        let efficiency = efficiency(speedup, workers as u64)?;
        Ok(Self {
            n,
            k,
            workers,
            t_serial,
            t_parallel,
            speedup,
            efficiency,
            repetitions,
            aggregation: Aggregation::Median,
        })
    }
}

/// Where the cluster path stops losing to the serial sieve, for one worker count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Crossover {
    pub workers: usize,
    /// Every benchmarked `n` at which the cluster was slower.
    pub slower_at: Vec<u64>,
    /// Smallest benchmarked `n` from which the cluster is never slower;
    /// `None` when it is still slower at the largest `n`.
    pub crossover_n: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub records: Vec<BenchRecord>,
    pub crossovers: Vec<Crossover>,
    /// Hardware threads on the measuring host.
    pub host_threads: usize,
}

fn median(samples: &mut [f64]) -> f64 {
    samples.sort_by(f64::total_cmp);
    let m = samples.len() / 2;
    if samples.len() % 2 == 1 {
        samples[m]
    } else {
        (samples[m - 1] + samples[m]) / 2.0
    }
}

fn seconds(d: Duration) -> f64 {
    // a zero reading would make the ratios undefined
    d.as_secs_f64().max(1e-9)
}

/// Times the serial sieve against the cluster sieve for every
/// `(n, workers)` pair, interleaving the two within each repetition.
pub fn run_benchmark(
    n_list: &[u64],
    k: u64,
    worker_list: &[usize],
    repetitions: usize,
) -> Result<BenchReport> {
    if repetitions < 3 {
        return Err(Error::domain(format!("need at least 3 repetitions, got {repetitions}")));
    }
    let mut records = Vec::with_capacity(n_list.len() * worker_list.len());
    for &n in n_list {
        for &workers in worker_list {
            let mut serial = Vec::with_capacity(repetitions);
            let mut parallel = Vec::with_capacity(repetitions);
            for _ in 0..repetitions {
                let s = run_serial_baseline(n)?;
                serial.push(seconds(s.timing.measured()));
                let c = run_cluster_sieve(n, k, workers)?;
                if c.count != s.count {
                    return Err(Error::Cluster(format!(
                        "cluster found {} primes up to {n}, serial found {}",
                        c.count, s.count
                    )));
                }
                parallel.push(seconds(c.timing.measured()));
            }
            records.push(BenchRecord::from_times(
                n,
                k,
                workers,
                median(&mut serial),
                median(&mut parallel),
                repetitions,
            )?);
        }
    }
    let crossovers = crossovers(&records);
    Ok(BenchReport {
        records,
        crossovers,
        host_threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
    })
}

/// Summarises where the cluster is slower than serial, per worker count.
pub fn crossovers(records: &[BenchRecord]) -> Vec<Crossover> {
    let mut workers: Vec<usize> = records.iter().map(|r| r.workers).collect();
    workers.sort_unstable();
    workers.dedup();
    workers
        .into_iter()
        .map(|w| {
            let mut rows: Vec<&BenchRecord> = records.iter().filter(|r| r.workers == w).collect();
            rows.sort_by_key(|r| r.n);
            let slower_at: Vec<u64> = rows.iter().filter(|r| r.speedup < 1.0).map(|r| r.n).collect();
            let crossover_n = match slower_at.last() {
                None => rows.first().map(|r| r.n),
                Some(&last) => rows.iter().map(|r| r.n).find(|&n| n > last),
            };
            Crossover {
                workers: w,
                slower_at,
                crossover_n,
            }
        })
        .collect()
}

pub const CSV_HEADER: &str = "n,k,workers,t_serial_s,t_parallel_s,speedup,efficiency,reps";

#[derive(Serialize)]
struct CsvRow {
    n: u64,
    k: u64,
    workers: usize,
    t_serial_s: f64,
    t_parallel_s: f64,
    speedup: f64,
    efficiency: f64,
    reps: usize,
}

/// Writes records as CSV with a header row, one line per record.
pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> Result<()> {
    let io = |e: csv::Error| Error::Cluster(format!("csv output failed: {e}"));
    let mut w = csv::WriterBuilder::new()
        .has_headers(true)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    if records.is_empty() {
        w.write_record(CSV_HEADER.split(',')).map_err(io)?;
    }
    for r in records {
        w.serialize(CsvRow {
            n: r.n,
            k: r.k,
            workers: r.workers,
            t_serial_s: r.t_serial,
            t_parallel_s: r.t_parallel,
            speedup: r.speedup,
            efficiency: r.efficiency,
            reps: r.repetitions,
        })
        .map_err(io)?;
    }
    w.flush().map_err(|e| Error::Cluster(format!("csv output failed: {e}")))?;
    Ok(())
}
