//! In-process simulation of an SMP cluster running the bidirectional sieve.
//!
//! The coordinator (the calling thread) plans the partition, computes the
//! base primes up to `⌊√n⌋` and broadcasts them to every node worker through
//! that node's bounded FIFO [`NodeBuffer`]. A dispatcher thread then hands
//! out [`NodePlan`]s round-robin followed by a `Shutdown` to each worker,
//! while the coordinator drains `SegmentResult`s from its own buffer. Results
//! are concatenated by node id, so output never depends on arrival order.
//!
//! Each node worker is a group of two cores: the worker thread itself acts
//! as the head core and a long-lived companion thread acts as the tail core.
//! Nodes share nothing mutable; all cross-node traffic goes through buffers.

use std::sync::mpsc::{self, Receiver, SyncSender};
use std::sync::Arc;
use std::thread;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::partition::{plan_partition, NodePlan, SieveMode};
use crate::sieve::{
    collect_primes, sieve_half, sieve_sequential, BasePrimeSet, Direction, Segment,
};

pub const DEFAULT_BUFFER_CAPACITY: usize = 16;

/// Payloads exchanged between the coordinator and node workers.
#[derive(Debug, Clone, PartialEq)]
pub enum ClusterMessage {
    BasePrimes(Arc<BasePrimeSet>),
    Assign(NodePlan),
    SegmentResult { node_id: usize, primes: Vec<u64> },
    Shutdown,
}

/// Bounded FIFO buffer; senders block while it is full.
pub struct NodeBuffer;

impl NodeBuffer {
    pub fn bounded(capacity: usize) -> Result<(BufferSender, BufferReceiver)> {
        if capacity == 0 {
            return Err(Error::domain("buffer capacity must be at least 1"));
        }
        let (tx, rx) = mpsc::sync_channel(capacity);
        Ok((BufferSender { inner: tx, capacity }, BufferReceiver { inner: rx }))
    }
}

#[derive(Clone)]
pub struct BufferSender {
    inner: SyncSender<ClusterMessage>,
    capacity: usize,
}

impl BufferSender {
    pub fn send(&self, msg: ClusterMessage) -> Result<()> {
        self.inner
            .send(msg)
            .map_err(|_| Error::Cluster("receiving side of buffer hung up".into()))
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }
}

pub struct BufferReceiver {
    inner: Receiver<ClusterMessage>,
}

impl BufferReceiver {
    pub fn recv(&self) -> Result<ClusterMessage> {
        self.inner
            .recv()
            .map_err(|_| Error::Cluster("all senders of buffer hung up".into()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClusterConfig {
    pub buffer_capacity: usize,
}

impl Default for ClusterConfig {
    fn default() -> Self {
        Self {
            buffer_capacity: DEFAULT_BUFFER_CAPACITY,
        }
    }
}

/// Wall-clock time spent in each phase.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PhaseTimings {
    pub partition: Duration,
    pub broadcast: Duration,
    pub sieve: Duration,
    pub gather: Duration,
}

impl PhaseTimings {
    /// Time used for speedup comparisons. Gather (result-list assembly) is
    /// excluded on both the serial and the cluster path.
    pub fn measured(&self) -> Duration {
        self.partition + self.broadcast + self.sieve
    }

    pub fn total(&self) -> Duration {
        self.measured() + self.gather
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrimeResult {
    pub n: u64,
    pub primes: Vec<u64>,
    pub count: usize,
    pub timing: PhaseTimings,
}

/// Runs the cluster sieve with the default buffer capacity.
pub fn run_cluster_sieve(n: u64, k: u64, max_nodes: usize) -> Result<PrimeResult> {
    run_cluster_sieve_with(n, k, max_nodes, ClusterConfig::default())
}

pub fn run_cluster_sieve_with(
    n: u64,
    k: u64,
    max_nodes: usize,
    config: ClusterConfig,
) -> Result<PrimeResult> {
    if max_nodes == 0 {
        return Err(Error::domain("max_nodes must be at least 1"));
    }
    let t0 = Instant::now();
    let plan = plan_partition(n, k)?;
    let base = Arc::new(BasePrimeSet::for_upper_bound(n));
    let partition = t0.elapsed();

    let node_total = plan.node_count();
    let workers = max_nodes.min(node_total);
    let (result_tx, result_rx) = NodeBuffer::bounded(config.buffer_capacity)?;

    let mut slots: Vec<Option<Vec<u64>>> = vec![None; node_total];
    let mut broadcast = Duration::ZERO;
    let mut sieve = Duration::ZERO;

    thread::scope(|s| -> Result<()> {
        let t1 = Instant::now();
        let mut inboxes = Vec::with_capacity(workers);
        let mut handles = Vec::with_capacity(workers);
        for _ in 0..workers {
            let (tx, rx) = NodeBuffer::bounded(config.buffer_capacity)?;
            let out = result_tx.clone();
            handles.push(s.spawn(move || node_worker(rx, out)));
            inboxes.push(tx);
        }
        drop(result_tx);
        for inbox in &inboxes {
            inbox.send(ClusterMessage::BasePrimes(Arc::clone(&base)))?;
        }
        broadcast = t1.elapsed();

        let t2 = Instant::now();
        let plans = &plan.plans;
        let dispatcher = s.spawn(move || -> Result<()> {
            for node in plans {
                inboxes[node.node_id % workers].send(ClusterMessage::Assign(node.clone()))?;
            }
            for inbox in &inboxes {
                inbox.send(ClusterMessage::Shutdown)?;
            }
            Ok(())
        });

        let mut gathered = 0;
        while gathered < node_total {
            match result_rx.recv() {
                Ok(ClusterMessage::SegmentResult { node_id, primes }) => {
                    let slot = slots
                        .get_mut(node_id)
                        .ok_or_else(|| Error::Cluster(format!("unknown node id {node_id}")))?;
                    if slot.replace(primes).is_some() {
                        return Err(Error::Cluster(format!("duplicate result from node {node_id}")));
                    }
                    gathered += 1;
                }
                Ok(other) => {
                    return Err(Error::Cluster(format!("unexpected message at coordinator: {other:?}")))
                }
                // every worker exited; surface the worker's own error below
                Err(_) => break,
            }
        }
        sieve = t2.elapsed();

        dispatcher
            .join()
            .map_err(|_| Error::Cluster("dispatcher panicked".into()))??;
        for h in handles {
            h.join().map_err(|_| Error::Cluster("node worker panicked".into()))??;
        }
        if gathered < node_total {
            return Err(Error::Cluster(format!(
                "only {gathered} of {node_total} segment results arrived"
            )));
        }
        Ok(())
    })?;

    let t3 = Instant::now();
    let total_len = slots.iter().flatten().map(Vec::len).sum();
    let mut primes = Vec::with_capacity(total_len);
    for part in slots.into_iter().flatten() {
        primes.extend(part);
    }
    let gather = t3.elapsed();

    Ok(PrimeResult {
        n,
        count: primes.len(),
        primes,
        timing: PhaseTimings {
            partition,
            broadcast,
            sieve,
            gather,
        },
    })
}

struct TailCore {
    jobs: mpsc::Sender<Segment>,
    done: Receiver<Segment>,
}

fn node_worker(inbox: BufferReceiver, out: BufferSender) -> Result<()> {
    let base = match inbox.recv()? {
        ClusterMessage::BasePrimes(b) => b,
        other => {
            return Err(Error::Cluster(format!(
                "node expected base primes first, got {other:?}"
            )))
        }
    };

    thread::scope(|s| -> Result<()> {
        let mut tail: Option<TailCore> = None;
        loop {
            match inbox.recv()? {
                ClusterMessage::Assign(plan) => {
                    let segment = Segment::new(plan.node_id, plan.segment_range);
                    let sieved = match plan.mode {
                        SieveMode::SingleCore => {
                            let mut seg = segment;
                            sieve_half(&mut seg, &base, Direction::HeadToTail);
                            seg
                        }
                        SieveMode::DualBidirectional if segment.range().len() >= 2 => {
                            let core = tail.get_or_insert_with(|| spawn_tail_core(s, Arc::clone(&base)));
                            let (mut head, tail_half) = segment.split_halves();
                            core.jobs
                                .send(tail_half)
                                .map_err(|_| Error::Cluster("tail core exited".into()))?;
                            sieve_half(&mut head, &base, Direction::HeadToTail);
                            let tail_half = core
                                .done
                                .recv()
                                .map_err(|_| Error::Cluster("tail core exited".into()))?;
                            Segment::join_halves(head, tail_half)
                        }
                        SieveMode::DualBidirectional => {
                            let mut seg = segment;
                            sieve_half(&mut seg, &base, Direction::HeadToTail);
                            seg
                        }
                    };
                    let primes = collect_primes(&sieved);
                    debug_assert!(primes.iter().all(|&p| plan.segment_range.contains(p)));
                    out.send(ClusterMessage::SegmentResult {
                        node_id: plan.node_id,
                        primes,
                    })?;
                }
                ClusterMessage::Shutdown => return Ok(()),
                other => {
                    return Err(Error::Cluster(format!("unexpected message at node: {other:?}")))
                }
            }
        }
    })
}

fn spawn_tail_core<'scope>(
    s: &'scope thread::Scope<'scope, '_>,
    base: Arc<BasePrimeSet>,
) -> TailCore {
    let (job_tx, job_rx) = mpsc::channel::<Segment>();
    let (done_tx, done_rx) = mpsc::channel();
    s.spawn(move || {
        for mut half in job_rx {
            sieve_half(&mut half, &base, Direction::TailToHead);
            if done_tx.send(half).is_err() {
                break;
            }
        }
    });
    TailCore {
        jobs: job_tx,
        done: done_rx,
    }
}

/// The plain sieve with the same phase instrumentation as the cluster path.
pub fn run_serial_baseline(n: u64) -> Result<PrimeResult> {
    if n < 2 {
        return Err(Error::domain(format!("n must be at least 2, got {n}")));
    }
    let t = Instant::now();
    let primes = sieve_sequential(n).into_primes();
    let sieve = t.elapsed();
    Ok(PrimeResult {
        n,
        count: primes.len(),
        primes,
        timing: PhaseTimings {
            sieve,
            ..PhaseTimings::default()
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cluster_examples() {
        let r = run_cluster_sieve(100, 10, 4).unwrap();
        assert_eq!(r.count, 25);
        assert_eq!(r.primes, sieve_sequential(100).into_primes());
        let r = run_cluster_sieve(3, 2, 1).unwrap();
        assert_eq!(r.primes, vec![2, 3]);
    }

    #[test]
    fn serial_examples() {
        assert_eq!(run_serial_baseline(100).unwrap().count, 25);
        assert_eq!(run_serial_baseline(2).unwrap().primes, vec![2]);
        assert!(run_serial_baseline(1).is_err());
    }

    #[test]
    fn domain_errors() {
        assert!(run_cluster_sieve(1, 10, 4).is_err());
        assert!(run_cluster_sieve(100, 1, 4).is_err());
        assert!(run_cluster_sieve(100, 10, 0).is_err());
        assert!(NodeBuffer::bounded(0).is_err());
    }

    #[test]
    fn capacity_one_terminates() {
        let cfg = ClusterConfig { buffer_capacity: 1 };
        for w in [1, 2, 3, 8] {
            let r = run_cluster_sieve_with(10_000, 7, w, cfg).unwrap();
            assert_eq!(r.count, 1229);
        }
    }

    #[test]
    fn buffer_is_fifo() {
        let (tx, rx) = NodeBuffer::bounded(4).unwrap();
        assert_eq!(tx.capacity(), 4);
        for i in 0..4 {
            tx.send(ClusterMessage::SegmentResult { node_id: i, primes: vec![] }).unwrap();
        }
        for i in 0..4 {
            assert_eq!(
                rx.recv().unwrap(),
                ClusterMessage::SegmentResult { node_id: i, primes: vec![] }
            );
        }
        drop(tx);
        assert!(rx.recv().is_err());
    }
}
