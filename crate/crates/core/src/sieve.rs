//! Sequential sieve of Eratosthenes and the segment kernels used by nodes.
//!
//! A [`Segment`] holds one bit per integer of its [`SieveRange`]. Kernels
//! mark every multiple of every base prime `p` starting at
//! `max(p², ⌈lo/p⌉·p)`, so base primes that fall inside a segment are never
//! marked. The bidirectional kernel splits a segment at
//! `mid = lo + ⌈len/2⌉` and runs a head worker (ascending over `[lo, mid)`)
//! and a tail worker (descending over `[mid, hi]`) on separate threads. The
//! halves are disjoint so the output is independent of scheduling.

use std::thread;

use serde::{Deserialize, Serialize};

use crate::bitmap::CompositeFlags;
use crate::error::{Error, Result};
use crate::modarith::isqrt;

/// Inclusive integer interval `[lo, hi]` with `2 <= lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SieveRange {
    lo: u64,
    hi: u64,
}

impl SieveRange {
    pub fn new(lo: u64, hi: u64) -> Result<Self> {
        if lo < 2 {
            return Err(Error::domain(format!("range must start at 2 or above, got {lo}")));
        }
        if lo > hi {
            return Err(Error::domain(format!("empty range [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn len(&self) -> u64 {
        self.hi - self.lo + 1
    }

    // never empty by construction; present for clippy
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: u64) -> bool {
        self.lo <= v && v <= self.hi
    }
}

/// Order in which a single worker visits the multiples of each base prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    HeadToTail,
    TailToHead,
}

/// All primes up to `limit`, ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasePrimeSet {
    limit: u64,
    primes: Vec<u64>,
}

impl BasePrimeSet {
    /// Sieves the primes up to `limit`.
    pub fn up_to(limit: u64) -> Self {
        sieve_sequential(limit)
    }

    /// Base primes sufficient for sieving any range ending at `hi`.
    pub fn for_upper_bound(hi: u64) -> Self {
        Self::up_to(isqrt(hi))
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn into_primes(self) -> Vec<u64> {
        self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// True when these primes can fully sieve a range ending at `hi`.
    pub fn covers(&self, hi: u64) -> bool {
        self.limit >= isqrt(hi)
    }
}

/// A contiguous block of integers with its composite flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    index: usize,
    range: SieveRange,
    flags: CompositeFlags,
}

impl Segment {
    /// A fresh segment with every integer unmarked.
    pub fn new(index: usize, range: SieveRange) -> Self {
        let len = usize::try_from(range.len()).expect("segment length exceeds address space");
        Self {
            index,
            range,
            flags: CompositeFlags::new(len),
        }
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn range(&self) -> SieveRange {
        self.range
    }

    pub fn flags(&self) -> &CompositeFlags {
        &self.flags
    }

    /// Whether `v` is currently marked composite. `v` must lie in the range.
    pub fn is_marked(&self, v: u64) -> bool {
        assert!(self.range.contains(v), "{v} outside {:?}", self.range);
        self.flags.get((v - self.range.lo) as usize)
    }

    /// Splits at `mid = lo + ⌈len/2⌉` into head `[lo, mid)` and tail `[mid, hi]`.
    /// Requires `len >= 2`.
    pub fn split_halves(&self) -> (Segment, Segment) {
        let len = self.range.len();
        assert!(len >= 2, "cannot split a segment of length {len}");
        let head_len = len.div_ceil(2);
        let mid = self.range.lo + head_len;
        let (hf, tf) = self.flags.split_at(head_len as usize);
        (
            Segment {
                index: self.index,
                range: SieveRange { lo: self.range.lo, hi: mid - 1 },
                flags: hf,
            },
            Segment {
                index: self.index,
                range: SieveRange { lo: mid, hi: self.range.hi },
                flags: tf,
            },
        )
    }

    /// Reassembles the halves produced by [`Segment::split_halves`].
    pub fn join_halves(mut head: Segment, tail: Segment) -> Segment {
        assert_eq!(head.range.hi + 1, tail.range.lo, "halves are not adjacent");
        head.flags.append(&tail.flags);
        head.range.hi = tail.range.hi;
        head
    }

    fn mark_multiples(&mut self, base: &BasePrimeSet, direction: Direction) {
        let SieveRange { lo, hi } = self.range;
        for &p in base.primes() {
            let Some(sq) = p.checked_mul(p) else { break };
            if sq > hi {
                break;
            }
            let first = sq.max(lo.div_ceil(p) * p);
            if first > hi {
                continue;
            }
            match direction {
                Direction::HeadToTail => {
                    let mut m = first;
                    loop {
                        self.flags.set((m - lo) as usize);
                        match m.checked_add(p) {
                            Some(next) if next <= hi => m = next,
                            _ => break,
                        }
                    }
                }
                Direction::TailToHead => {
                    let mut m = hi / p * p;
                    loop {
                        self.flags.set((m - lo) as usize);
                        if m < first + p {
                            break;
                        }
                        m -= p;
                    }
                }
            }
        }
    }
}

/// Plain sieve of Eratosthenes over `[0, limit]`.
pub fn sieve_sequential(limit: u64) -> BasePrimeSet {
    if limit < 2 {
        return BasePrimeSet { limit, primes: Vec::new() };
    }
    let n = usize::try_from(limit).expect("limit exceeds address space");
    let mut composite = CompositeFlags::new(n + 1);
    composite.set(0);
    composite.set(1);
    let mut p = 2usize;
    while p <= n / p {
        if !composite.get(p) {
            let mut m = p * p;
            while m <= n {
                composite.set(m);
                m += p;
            }
        }
        p += 1;
    }
    BasePrimeSet {
        limit,
        primes: composite.iter_clear().map(|i| i as u64).collect(),
    }
}

fn check_base(segment: &Segment, base: &BasePrimeSet) -> Result<()> {
    if !base.covers(segment.range.hi) {
        return Err(Error::precondition(format!(
            "base primes up to {} cannot sieve a range ending at {} (need {})",
            base.limit,
            segment.range.hi,
            isqrt(segment.range.hi)
        )));
    }
    Ok(())
}

/// Single-worker kernel walking each prime's multiples in `direction`.
pub fn sieve_segment_directional(
    mut segment: Segment,
    base: &BasePrimeSet,
    direction: Direction,
) -> Result<Segment> {
    check_base(&segment, base)?;
    segment.mark_multiples(base, direction);
    Ok(segment)
}

/// Two-worker kernel: head ascends over the lower half while the tail
/// descends over the upper half, concurrently. Segments shorter than two
/// fall back to the single-worker kernel.
pub fn sieve_segment_bidirectional(segment: Segment, base: &BasePrimeSet) -> Result<Segment> {
    check_base(&segment, base)?;
    if segment.range.len() < 2 {
        return sieve_segment_directional(segment, base, Direction::HeadToTail);
    }
    let (mut head, mut tail) = segment.split_halves();
    thread::scope(|s| {
        let tail_worker = s.spawn(|| tail.mark_multiples(base, Direction::TailToHead));
        head.mark_multiples(base, Direction::HeadToTail);
        tail_worker.join().expect("tail worker panicked");
    });
    Ok(Segment::join_halves(head, tail))
}

/// Sieves each half of an already split segment; used by node worker groups
/// that keep a long-lived tail core.
pub(crate) fn sieve_half(segment: &mut Segment, base: &BasePrimeSet, direction: Direction) {
    segment.mark_multiples(base, direction);
}

/// Unmarked values of a sieved segment, ascending.
pub fn collect_primes(segment: &Segment) -> Vec<u64> {
    let lo = segment.range.lo;
    segment.flags.iter_clear().map(|i| lo + i as u64).collect()
}
