//! Hybrid-parallel bidirectional sieve of Eratosthenes on a simulated SMP
//! cluster, with Fermat primality testing, interconnect cost formulas and a
//! serial-vs-cluster benchmark harness.
//!
//! ```
//! let result = bisieve::run_cluster_sieve(100, 10, 4).unwrap();
//! assert_eq!(result.count, 25);
//! ```

mod bitmap;
pub mod cluster;
pub mod error;
pub mod modarith;
pub mod partition;
pub mod perf;
pub mod primality;
pub mod sieve;
pub mod topology;

pub use bitmap::CompositeFlags;
pub use cluster::{
    run_cluster_sieve, run_cluster_sieve_with, run_serial_baseline, ClusterConfig, ClusterMessage,
    NodeBuffer, PhaseTimings, PrimeResult, DEFAULT_BUFFER_CAPACITY,
};
pub use error::{Error, Result};
pub use modarith::{mod_mul, mod_pow, trial_division_is_prime};
pub use partition::{
    core_deque_count, node_count_literal, plan_partition, ClusterPlan, NodePlan, SieveMode,
};
pub use perf::{amdahl_speedup, efficiency, run_benchmark, speedup, AmdahlInput, BenchRecord, BenchReport};
pub use primality::{
    carmichael_scan, fermat_test, fermat_test_with, fermat_witness_fraction, FermatOptions,
    RandomSource, WitnessFraction,
};
pub use sieve::{
    collect_primes, sieve_segment_bidirectional, sieve_segment_directional, sieve_sequential,
    BasePrimeSet, Direction, Segment, SieveRange,
};
pub use topology::{crossbar_metrics, hypercube_metrics, omega_metrics, TopologyKind, TopologyReport};
