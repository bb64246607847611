//! Acceptance suite: one PASS/FAIL line per criterion. Criteria 1-8 are hard
//! gates; criterion 9 is a soft performance gate that is reported but never
//! fails the run.

use std::process::ExitCode;
use std::time::Instant;

use bisieve::modarith::isqrt;
use bisieve::*;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = std::result::Result<String, String>;
type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn check(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn trial_division_primes(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&v| trial_division_is_prime(v)).collect()
}

fn c1_oracle_equivalence(oracle: &[u64]) -> Outcome {
    let start = Instant::now();
    let mut runs = 0;
    for n in [1_000u64, 10_000, 100_000, 1_000_000] {
        let expected = &oracle[..oracle.partition_point(|&p| p <= n)];
        let serial = run_serial_baseline(n).map_err(|e| e.to_string())?;
        check(serial.primes == expected, format!("serial differs from trial division at n={n}"))?;
        for k in [10u64, 97, 1024, 100_000] {
            for w in [1usize, 2, 4, 8] {
                let r = run_cluster_sieve(n, k, w).map_err(|e| e.to_string())?;
                check(r.primes == serial.primes, format!("cluster differs at n={n} k={k} w={w}"))?;
                runs += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    check(secs < 120.0, format!("grid took {secs:.1}s (limit 120s)"))?;
    Ok(format!("{runs} cluster runs list-identical to serial and trial division in {secs:.1}s"))
}

fn c2_prime_count(oracle: &[u64]) -> Outcome {
    check(oracle.len() == 78_498, format!("trial-division oracle counted {}", oracle.len()))?;
    let seq = sieve_sequential(1_000_000).len();
    let cluster = run_cluster_sieve(1_000_000, 10_000, 8).map_err(|e| e.to_string())?.count;
    check(seq == 78_498 && cluster == 78_498, format!("sequential {seq}, cluster {cluster}"))?;
    Ok("pi(10^6) = 78498 from oracle, sequential and cluster".into())
}

fn c3_bidirectional_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xB1D1);
    for i in 0..1000 {
        let len = rng.gen_range(2..=10_000u64);
        let lo = rng.gen_range(2..=1_000_000_000u64);
        let hi = lo + len - 1;
        let range = SieveRange::new(lo, hi).map_err(|e| e.to_string())?;
        let base = BasePrimeSet::up_to(isqrt(hi));
        let dir = if i % 2 == 0 { Direction::HeadToTail } else { Direction::TailToHead };
        let uni = sieve_segment_directional(Segment::new(i, range), &base, dir)
            .map_err(|e| e.to_string())?;
        let bi = sieve_segment_bidirectional(Segment::new(i, range), &base)
            .map_err(|e| e.to_string())?;
        check(uni.flags() == bi.flags(), format!("bitmaps differ on [{lo}, {hi}]"))?;
    }
    Ok("1000 random segments bit-identical".into())
}

fn c4_partition_conformance() -> Outcome {
    let mut ns: Vec<u64> = (2..=300).collect();
    ns.extend([997, 1_000, 1_001, 1_041, 4_096, 65_537, 99_999, 100_000, 524_288, 999_983, 1_000_000]);
    let mut ks: Vec<u64> = (2..=120).collect();
    ks.extend([127, 128, 500, 997, 1_000, 1_024, 4_095, 4_096, 9_999, 10_000]);
    let mut pairs = 0;
    for &n in &ns {
        for &k in &ks {
            let plan = plan_partition(n, k).map_err(|e| e.to_string())?;
            let mut next = 2;
            for (i, node) in plan.plans.iter().enumerate() {
                check(node.node_id == i, format!("node ids out of order for n={n} k={k}"))?;
                check(node.segment_range.lo() == next, format!("gap or overlap for n={n} k={k}"))?;
                let len = node.segment_range.len();
                check(
                    (node.mode == SieveMode::SingleCore) == (2 * len <= k),
                    format!("mode rule violated for n={n} k={k} node {i}"),
                )?;
                next = node.segment_range.hi() + 1;
            }
            check(next == n + 1, format!("plans do not end at n for n={n} k={k}"))?;
            let nodes = plan.node_count() as u64;
            check(
                plan.cores_required == 2 * nodes && plan.deques_required == 2 * nodes,
                format!("cores/deques != 2N for n={n} k={k}"),
            )?;
            check(core_deque_count(nodes) == (2 * nodes, 2 * nodes), "core_deque_count")?;
            pairs += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xE93);
    for _ in 0..10_000 {
        let n = rng.gen_range(0..=1u64 << 40);
        let k = rng.gen_range(1..=1u64 << 20);
        let literal = node_count_literal(n, k).map_err(|e| e.to_string())?;
        let quotient = (n - n % k) / k;
        let parity = if (n % k) % 2 == 1 { 1 } else { 0 };
        check(literal == quotient + parity, format!("literal count wrong for n={n} k={k}"))?;
    }
    Ok(format!("{pairs} (n,k) plans tile [2,n]; 10^4 literal node counts match"))
}

fn c5_mod_pow() -> Outcome {
    let start = Instant::now();
    for c in 1u64..200 {
        for a in 0u64..200 {
            let mut naive = 1 % c;
            for b in 0u64..200 {
                let got = mod_pow(a, b, c).map_err(|e| e.to_string())?;
                check(got == naive, format!("mod_pow({a},{b},{c}) = {got}, naive {naive}"))?;
                naive = naive * a % c;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    for _ in 0..100_000 {
        let a = rng.gen_range(0..1u64 << 63);
        let b = rng.gen_range(0..1u64 << 63);
        let c = rng.gen_range(1..1u64 << 63);
        let want = BigUint::from(a).modpow(&BigUint::from(b), &BigUint::from(c));
        let got = mod_pow(a, b, c).map_err(|e| e.to_string())?;
        check(BigUint::from(got) == want, format!("mod_pow({a},{b},{c}) disagrees with big-integer oracle"))?;
    }
    let secs = start.elapsed().as_secs_f64();
    check(secs < 30.0, format!("took {secs:.1}s (limit 30s)"))?;
    Ok(format!("7.96M exhaustive + 10^5 random 63-bit cases exact in {secs:.1}s"))
}

fn c6_fermat(oracle: &[u64]) -> Outcome {
    let mut tested = 0;
    for &p in oracle.iter().take_while(|&&p| p <= 10_000) {
        for seed in 0..32u64 {
            let verdict = fermat_test(p, 20, &mut RandomSource::new(seed ^ p.rotate_left(17)))
                .map_err(|e| e.to_string())?;
            check(verdict, format!("prime {p} rejected"))?;
            tested += 1;
        }
    }
    let scan = carmichael_scan(2000).map_err(|e| e.to_string())?;
    check(scan == [561, 1105, 1729], format!("carmichael_scan(2000) = {scan:?}"))?;
    let f = fermat_witness_fraction(561).map_err(|e| e.to_string())?;
    check(f.is_one(), format!("witness fraction of 561 = {}/{}", f.fooling, f.coprime))?;
    Ok(format!("{tested} prime/seed runs accepted; Carmichael <= 2000 = {scan:?}; 561 fools {}/{}", f.fooling, f.coprime))
}

fn c7_topology() -> Outcome {
    for d in 1..=10u32 {
        let r = hypercube_metrics(d).map_err(|e| e.to_string())?;
        let p = 1u64 << d;
        check(
            r.p == p && r.bisection_width == p / 2 && r.wires_per_switch == Some(1 + d as u64),
            format!("hypercube d={d}: {r:?}"),
        )?;
    }
    let omega = omega_metrics(8).map_err(|e| e.to_string())?;
    check(omega.switch_count == 48 && omega.crossbar_units == Some(12), format!("omega p=8: {omega:?}"))?;
    let xbar = crossbar_metrics(8).map_err(|e| e.to_string())?;
    check(xbar.switch_count == 64, format!("crossbar p=8: {xbar:?}"))?;
    Ok("hypercube d=1..10, omega(8)=48/12, crossbar(8)=64".into())
}

fn c8_amdahl_efficiency() -> Outcome {
    let a = amdahl_speedup(AmdahlInput::new(0.9, 10.0).map_err(|e| e.to_string())?);
    check((a - 5.263158).abs() <= 1e-6, format!("amdahl(0.9, 10) = {a}"))?;
    let e = efficiency(4.0, 4).map_err(|e| e.to_string())?;
    check(e == 1.0, format!("efficiency(4,4) = {e}"))?;
    let fs: Vec<f64> = (0..100).map(|i| i as f64 / 99.0).collect();
    let ss: Vec<f64> = (0..100).map(|j| 1.0 + j as f64 * 0.5).collect();
    let grid: Vec<Vec<f64>> = fs
        .iter()
        .map(|&f| ss.iter().map(|&s| amdahl_speedup(AmdahlInput::new(f, s).unwrap())).collect())
        .collect();
    for i in 0..100 {
        for j in 0..100 {
            if i + 1 < 100 {
                check(grid[i][j] <= grid[i + 1][j], format!("not monotone in f at ({i},{j})"))?;
            }
            if j + 1 < 100 {
                check(grid[i][j] <= grid[i][j + 1], format!("not monotone in s at ({i},{j})"))?;
            }
        }
    }
    Ok(format!("amdahl(0.9,10) = {a:.6}; efficiency(4,4) = 1; 100x100 grid monotone"))
}

/// Soft gate: returns (passed, detail). Never fails the run.
fn c9_performance() -> (Option<bool>, String) {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let mut notes = Vec::new();

    let small = match run_benchmark(&[1_000, 10_000, 100_000, 1_000_000], 10_000, &[4], 5) {
        Ok(r) => r,
        Err(e) => return (Some(false), format!("benchmark failed: {e}")),
    };
    let slower_small: Vec<u64> = small.crossovers[0]
        .slower_at
        .iter()
        .copied()
        .filter(|&n| n < 100_000)
        .collect();
    let crossover_ok = !slower_small.is_empty();
    notes.push(format!(
        "cluster slower at n = {slower_small:?}, crossover at {:?}",
        small.crossovers[0].crossover_n
    ));

    let big = match run_benchmark(&[100_000_000], 1_000_000, &[4], 5) {
        Ok(r) => r,
        Err(e) => return (Some(false), format!("benchmark failed: {e}")),
    };
    let s = big.records[0].speedup;
    notes.push(format!("n=10^8 k=10^6 w=4 median-of-5 speedup {s:.2}"));
    notes.push(format!("host threads {threads}"));

    if threads < 4 {
        notes.push("speedup gate needs >= 4 hardware threads, not judged".into());
        return (if crossover_ok { None } else { Some(false) }, notes.join("; "));
    }
    (Some(crossover_ok && s > 1.5), notes.join("; "))
}

fn main() -> ExitCode {
    let oracle_start = Instant::now();
    let oracle = trial_division_primes(1_000_000);
    println!(
        "trial-division oracle: {} primes <= 10^6 in {:.1}s",
        oracle.len(),
        oracle_start.elapsed().as_secs_f64()
    );

    let hard: Vec<(&str, Criterion)> = vec![
        ("1 oracle equivalence", Box::new(|| c1_oracle_equivalence(&oracle))),
        ("2 prime count", Box::new(|| c2_prime_count(&oracle))),
        ("3 bidirectional == unidirectional", Box::new(c3_bidirectional_equivalence)),
        ("4 partition conformance", Box::new(c4_partition_conformance)),
        ("5 mod_pow", Box::new(c5_mod_pow)),
        ("6 Fermat behaviour", Box::new(|| c6_fermat(&oracle))),
        ("7 topology formulas", Box::new(c7_topology)),
        ("8 Amdahl / efficiency", Box::new(c8_amdahl_efficiency)),
    ];

    let mut failures = 0;
    for (name, run) in &hard {
        match run() {
            Ok(detail) => println!("[PASS] criterion {name}: {detail}"),
            Err(detail) => {
                failures += 1;
                println!("[FAIL] criterion {name}: {detail}");
            }
        }
    }

    let (verdict, detail) = c9_performance();
    let tag = match verdict {
        Some(true) => "PASS",
        Some(false) => "FAIL (soft)",
        None => "SKIP (soft)",
    };
    println!("[{tag}] criterion 9 performance gate: {detail}");

    if failures == 0 {
        println!("acceptance: all hard criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} hard criteria failed");
        ExitCode::FAILURE
    }
}
