//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and
//! fails if any criterion fails:
//!
//! ```text
//! cargo test -p cubesum --test acceptance -- --nocapture
//! ```

use std::process::Command;
use std::time::{Duration, Instant};

use cubesum::json::{solution_set_from_json, solution_set_to_json};
use cubesum_core::intmath::{isqrt, perfect_square_root, signed_divisors};
use cubesum_core::{
    brute_force, candidate_zs, completeness_bound, derive_trace, render, solve,
    solve_linear_diophantus, solve_quadratic_for_x, verify, BigInt, SolutionSet, TraceFormat,
    Triple, TripleSystem,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn t(x: i64, y: i64, z: i64) -> Triple {
    Triple::new(x, y, z)
}

fn median_duration(mut f: impl FnMut(), runs: usize) -> Duration {
    f();
    let mut samples: Vec<Duration> = (0..runs)
        .map(|_| {
            let start = Instant::now();
            f();
            start.elapsed()
        })
        .collect();
    samples.sort();
    samples[runs / 2]
}

fn ac1_paper_reproduction() -> Outcome {
    let system = TripleSystem::new(3, 3);
    let expected = SolutionSet::Finite(vec![t(-5, 4, 4), t(1, 1, 1), t(4, -5, 4), t(4, 4, -5)]);
    let got = solve(&system).map_err(|e| e.to_string())?;
    check(got == expected, format!("solve(3, 3) = {got:?}"))?;
    let elapsed = median_duration(
        || {
            solve(&system).unwrap();
        },
        11,
    );
    check(
        elapsed < Duration::from_millis(1),
        format!("median runtime {elapsed:?} >= 1 ms"),
    )?;
    Ok(format!("4 triples, median {elapsed:?}"))
}

fn ac2_candidate_reproduction() -> Outcome {
    let system = TripleSystem::new(3, 3);
    let candidates = candidate_zs(&system).map_err(|e| e.to_string())?;
    let negative: Vec<&BigInt> = candidates
        .iter()
        .map(|c| &c.z)
        .filter(|z| **z < BigInt::from(0))
        .collect();
    check(
        negative == [&BigInt::from(-5), &BigInt::from(-1)],
        format!("negative pivots {negative:?}"),
    )?;
    let rejected = candidates
        .iter()
        .find(|c| c.z == BigInt::from(-1))
        .ok_or("z = -1 missing")?;
    let disc = rejected.discriminant(&system);
    check(disc == BigInt::from(-4), format!("discriminant {disc}"))?;
    let roots = solve_quadratic_for_x(rejected, &system);
    check(roots.is_empty(), format!("z = -1 roots {roots:?}"))?;
    Ok("Z < 0 gives {-5, -1}; Z = -1 has discriminant -4 and no roots".into())
}

fn ac3_divisibility() -> Outcome {
    let candidates = candidate_zs(&TripleSystem::new(3, 3)).map_err(|e| e.to_string())?;
    for c in &candidates {
        check(
            (BigInt::from(8) % (&c.z - 3)) == BigInt::from(0),
            format!("z - 3 = {} does not divide 8", &c.z - 3),
        )?;
        check(
            (BigInt::from(8) % &c.k) == BigInt::from(0),
            format!("k = {} does not divide 8", c.k),
        )?;
    }
    check(
        candidates.len() == 8,
        format!("{} candidates", candidates.len()),
    )?;
    Ok("8 candidates, each with (Z - 3) | 8".into())
}

fn ac4_trace_fidelity() -> Outcome {
    let trace = derive_trace(&TripleSystem::new(3, 3)).map_err(|e| e.to_string())?;
    let text = render(&trace, TraceFormat::Plain);
    for needle in ["24/(Z - 3)", "8/(Z - 3)"] {
        check(
            text.contains(needle),
            format!("plain trace lacks {needle:?}"),
        )?;
    }
    Ok("plain trace contains 24/(Z - 3) and 8/(Z - 3)".into())
}

fn ac5_diophantus() -> Outcome {
    let got = solve_linear_diophantus(&BigInt::from(4), &BigInt::from(4), &BigInt::from(20))
        .map_err(|e| e.to_string())?;
    check(got == Some(BigInt::from(-4)), format!("got {got:?}"))?;
    Ok("4 = 4X + 20 gives X = -4".into())
}

fn ac6_oracle_sweep() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    for s in -20i64..=20 {
        for c in -20i64..=20 {
            let system = TripleSystem::new(s, c);
            if system.is_degenerate() {
                continue;
            }
            pairs += 1;
            let bound = completeness_bound(&system).map_err(|e| e.to_string())?;
            let oracle = brute_force(&system, &bound);
            let solved = solve(&system).map_err(|e| e.to_string())?;
            check(
                solved == SolutionSet::Finite(oracle),
                format!("mismatch at s = {s}, c = {c}"),
            )?;
        }
    }
    let elapsed = start.elapsed();
    // 41 * 41 grid points minus the five with c = s^3 in range
    check(pairs == 41 * 41 - 5, format!("{pairs} pairs swept"))?;
    check(
        elapsed < Duration::from_secs(60),
        format!("sweep took {elapsed:?}"),
    )?;
    Ok(format!("{pairs} pairs agree, {elapsed:.2?}"))
}

fn ac7_degenerate_family() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for s in -10i64..=10 {
        let system = TripleSystem::new(s, s.pow(3));
        let set = solve(&system).map_err(|e| e.to_string())?;
        check(
            set == SolutionSet::InfiniteFamily {
                anchor: BigInt::from(s),
            },
            format!("solve({s}, {}) = {set:?}", s.pow(3)),
        )?;
        for _ in 0..50 {
            let v: i64 = rng.gen_range(-100..=100);
            let member = t(s, v, -v);
            check(
                verify(&member, &system),
                format!("{member} fails for s = {s}"),
            )?;
            check(set.contains(&member), format!("{member} not in family"))?;
        }
    }
    Ok("21 anchors, 50 members each".into())
}

fn ac8_scan_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let start = Instant::now();
    let mut outputs = Vec::new();
    for jobs in ["1", "4"] {
        let path = dir.path().join(format!("grid-{jobs}.jsonl"));
        let status = Command::new(env!("CARGO_BIN_EXE_cubesum"))
            .args([
                "scan",
                "--sum-range",
                "-2:2",
                "--cubes-range",
                "-2:2",
                "--jobs",
                jobs,
                "--out",
            ])
            .arg(&path)
            .output()
            .map_err(|e| e.to_string())?;
        check(
            status.status.success(),
            format!("--jobs {jobs} exited {}", status.status),
        )?;
        outputs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
    }
    let elapsed = start.elapsed();
    let lines = outputs[0].iter().filter(|b| **b == b'\n').count();
    check(lines == 25, format!("{lines} records"))?;
    check(
        outputs[0] == outputs[1],
        "--jobs 1 and --jobs 4 outputs differ",
    )?;
    check(
        elapsed < Duration::from_secs(5),
        format!("took {elapsed:?}"),
    )?;
    Ok(format!("25 records, byte-identical, {elapsed:.2?}"))
}

fn run_property<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&strategy, test)
        .map_err(|e| format!("{name}: {e}"))
}

fn ac9_invariants() -> Outcome {
    let systems = (-60i64..=60, -2000i64..=2000);

    run_property("finite set shape", systems.clone(), |(s, c)| {
        let system = TripleSystem::new(s, c);
        let set = solve(&system).unwrap();
        let Some(triples) = set.triples() else {
            prop_assert!(system.is_degenerate());
            return Ok(());
        };
        for pair in triples.windows(2) {
            prop_assert!(pair[0] < pair[1], "not strictly sorted");
        }
        for triple in triples {
            prop_assert!(verify(triple, &system), "unsound {}", triple);
            for p in triple.permutations() {
                prop_assert!(
                    triples.binary_search(&p).is_ok(),
                    "not closed under permutation"
                );
            }
        }
        Ok(())
    })?;

    run_property("isqrt", any::<u128>(), |n| {
        let n = BigInt::from(n);
        let r = isqrt(&n).unwrap();
        prop_assert!(&r * &r <= n);
        prop_assert!((&r + 1) * (&r + 1) > n);
        Ok(())
    })?;

    run_property(
        "perfect square",
        (any::<u64>(), -2i64..=2, any::<bool>()),
        |(r, off, neg)| {
            let n = BigInt::from(r) * BigInt::from(r) + off;
            let n = if neg { -n } else { n };
            let brute = n >= BigInt::from(0) && {
                let s = isqrt(&n).unwrap();
                &s * &s == n
            };
            let got = perfect_square_root(&n);
            prop_assert_eq!(got.is_some(), brute);
            if let Some(root) = got {
                prop_assert_eq!(&root * &root, n);
            }
            Ok(())
        },
    )?;

    run_property(
        "signed divisors",
        (-100_000i64..=100_000).prop_filter("nonzero", |n| *n != 0),
        |n| {
            let got = signed_divisors(&BigInt::from(n)).unwrap();
            let m = n.abs();
            let pos: Vec<i64> = (1..=m).filter(|d| m % d == 0).collect();
            let expected: Vec<BigInt> = pos
                .iter()
                .rev()
                .map(|d| -d)
                .chain(pos.iter().copied())
                .map(BigInt::from)
                .collect();
            prop_assert_eq!(got, expected);
            Ok(())
        },
    )?;

    run_property("json round trip", systems, |(s, c)| {
        let set = solve(&TripleSystem::new(s, c)).unwrap();
        let text = solution_set_to_json(&set);
        prop_assert_eq!(solution_set_from_json(&text).unwrap(), set);
        Ok(())
    })?;

    Ok("5 properties x 1000 cases".into())
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 9] = [
        ("AC1 paper reproduction", ac1_paper_reproduction),
        ("AC2 candidate reproduction", ac2_candidate_reproduction),
        ("AC3 divisibility reproduction", ac3_divisibility),
        ("AC4 trace fidelity", ac4_trace_fidelity),
        ("AC5 diophantus example", ac5_diophantus),
        ("AC6 oracle equivalence sweep", ac6_oracle_sweep),
        ("AC7 degenerate family", ac7_degenerate_family),
        ("AC8 scan determinism", ac8_scan_determinism),
        ("AC9 invariant suite", ac9_invariants),
    ];
    let mut failed = Vec::new();
    for (name, criterion) in criteria {
        match criterion() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                println!("FAIL {name}: {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
