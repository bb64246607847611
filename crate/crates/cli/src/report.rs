//! Serializable command results and their text/csv/json renderings.

use std::fmt::Write as _;

use bisieve::perf::write_csv;
use bisieve::{BenchReport, Error, Result, TopologyReport};
use serde::{Deserialize, Serialize};

use crate::OutputFormat;

pub trait Render {
    fn render(&self, format: OutputFormat) -> Result<String>;
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| Error::Domain(format!("json encoding failed: {e}")))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SieveReport {
    pub n: u64,
    pub k: Option<u64>,
    pub workers: Option<usize>,
    pub count: usize,
    pub primes: Option<Vec<u64>>,
}

impl Render for SieveReport {
    fn render(&self, format: OutputFormat) -> Result<String> {
        let mut out = String::new();
        match format {
            OutputFormat::Json => return json(self),
            OutputFormat::Csv => {
                out.push_str("prime\n");
                for p in self.primes.iter().flatten() {
                    let _ = writeln!(out, "{p}");
                }
            }
            OutputFormat::Text => {
                if let Some(primes) = &self.primes {
                    let line: Vec<String> = primes.iter().map(u64::to_string).collect();
                    let _ = writeln!(out, "{}", line.join(" "));
                }
                let _ = writeln!(out, "count: {}", self.count);
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsPrimeReport {
    pub n: u64,
    pub prime: bool,
}

impl Render for IsPrimeReport {
    fn render(&self, format: OutputFormat) -> Result<String> {
        Ok(match format {
            OutputFormat::Json => return json(self),
            OutputFormat::Csv => format!("n,prime\n{},{}\n", self.n, self.prime),
            OutputFormat::Text => {
                let verdict = if self.prime { "prime" } else { "not prime" };
                format!("{} is {verdict}\n", self.n)
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FermatReport {
    pub p: u64,
    pub iterations: u32,
    pub seed: u64,
    pub probably_prime: bool,
    /// `None` above the shipped Carmichael table's range.
    pub carmichael: Option<bool>,
    pub warning: Option<String>,
}

impl Render for FermatReport {
    fn render(&self, format: OutputFormat) -> Result<String> {
        Ok(match format {
            OutputFormat::Json => return json(self),
            OutputFormat::Csv => format!(
                "p,iterations,seed,probably_prime,carmichael\n{},{},{},{},{}\n",
                self.p,
                self.iterations,
                self.seed,
                self.probably_prime,
                self.carmichael.map_or(String::new(), |c| c.to_string())
            ),
            OutputFormat::Text => {
                let verdict = if self.probably_prime { "probably prime" } else { "composite" };
                let mut s = format!(
                    "{}: {verdict} ({} iterations, seed {})\n",
                    self.p, self.iterations, self.seed
                );
                if let Some(w) = &self.warning {
                    let _ = writeln!(s, "warning: {w}");
                }
                s
            }
        })
    }
}

impl Render for TopologyReport {
    fn render(&self, format: OutputFormat) -> Result<String> {
        let opt = |v: Option<u64>| v.map_or(String::new(), |v| v.to_string());
        Ok(match format {
            OutputFormat::Json => return json(self),
            OutputFormat::Csv => format!(
                "kind,p,dimension,bisection_width,switch_count,wires_per_switch,crossbar_units\n{:?},{},{},{},{},{},{}\n",
                self.kind,
                self.p,
                opt(self.dimension.map(u64::from)),
                self.bisection_width,
                self.switch_count,
                opt(self.wires_per_switch),
                opt(self.crossbar_units),
            )
            .to_lowercase(),
            OutputFormat::Text => {
                let mut s = format!("{:?}\n", self.kind).to_lowercase();
                let _ = writeln!(s, "p={}", self.p);
                if let Some(d) = self.dimension {
                    let _ = writeln!(s, "dimension={d}");
                }
                let _ = writeln!(s, "bisection={}", self.bisection_width);
                let _ = writeln!(s, "switches={}", self.switch_count);
                if let Some(w) = self.wires_per_switch {
                    let _ = writeln!(s, "wires={w}");
                }
                if let Some(u) = self.crossbar_units {
                    let _ = writeln!(s, "crossbar_units={u}");
                }
                s
            }
        })
    }
}

impl Render for BenchReport {
    fn render(&self, format: OutputFormat) -> Result<String> {
        match format {
            OutputFormat::Json => json(self),
            OutputFormat::Csv => {
                let mut buf = Vec::new();
                write_csv(&self.records, &mut buf)?;
                String::from_utf8(buf).map_err(|e| Error::Domain(e.to_string()))
            }
            OutputFormat::Text => {
                let mut s = format!(
                    "{:>12} {:>8} {:>8} {:>12} {:>12} {:>8} {:>10}\n",
                    "n", "k", "workers", "serial_s", "cluster_s", "speedup", "efficiency"
                );
                for r in &self.records {
                    let _ = writeln!(
                        s,
                        "{:>12} {:>8} {:>8} {:>12.6} {:>12.6} {:>8.3} {:>10.3}",
                        r.n, r.k, r.workers, r.t_serial, r.t_parallel, r.speedup, r.efficiency
                    );
                }
                for c in &self.crossovers {
                    let at = c.crossover_n.map_or("none".to_string(), |n| n.to_string());
                    let _ = writeln!(
                        s,
                        "workers={}: cluster slower at {:?}; crossover n = {at}",
                        c.workers, c.slower_at
                    );
                }
                let _ = writeln!(s, "host threads: {}", self.host_threads);
                Ok(s)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CarmichaelReport {
    pub limit: u64,
    pub numbers: Vec<u64>,
}

impl Render for CarmichaelReport {
    fn render(&self, format: OutputFormat) -> Result<String> {
        Ok(match format {
            OutputFormat::Json => return json(self),
            OutputFormat::Csv => {
                let mut s = String::from("carmichael\n");
                for n in &self.numbers {
                    let _ = writeln!(s, "{n}");
                }
                s
            }
            OutputFormat::Text => {
                let line: Vec<String> = self.numbers.iter().map(u64::to_string).collect();
                format!("{}\ncount: {}\n", line.join(" "), self.numbers.len())
            }
        })
    }
}
