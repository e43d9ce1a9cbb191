//! The eight acceptance criteria, one line each. Runs without the libtest
//! harness so the lines are printed even when everything passes.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bianchi_cli::reproduce::TEMPLATES;
use bianchi_cli::{execute, Command, Failure, Fixtures, EXIT_INPUT, EXIT_MISMATCH, EXIT_OK};
use bianchi_core::linalg::{determinant, frac, int};
use bianchi_core::{
    abelian_plane, are_isomorphic, canonical_bianchi, classify3, complete, count_semigroups, derived_dim,
    enumerate_semigroups, find_resonances, raw_completions, resonant_subalgebra, s_expand, scan, solvable_plane,
    zero_reduce, BianchiTag, CayleyTable, CensusRequest, Convention, ExpandError, Grading, Perm, Rational, ScanOptions,
    StartSet,
};
use num_traits::One;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

type Outcome = Result<String, String>;
type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(started: Instant, limit: Duration, what: &str) -> Result<Duration, String> {
    let took = started.elapsed();
    ensure(took < limit, || format!("{what} took {took:?}, limit {limit:?}"))?;
    Ok(took)
}

fn census_totals() -> Outcome {
    let started = Instant::now();
    let counts: Vec<u64> = (1..=4)
        .map(|n| count_semigroups(&CensusRequest::new(n).convention(Convention::IsoAndAnti)).unwrap())
        .collect();
    ensure(counts == [1, 4, 18, 126], || format!("orders 1-4 gave {counts:?}"))?;
    let t4 = within(started, Duration::from_secs(300), "orders 1-4")?;

    // Order 5 is within the default cap; order 6 needs the explicit opt-in.
    let started = Instant::now();
    let five =
        count_semigroups(&CensusRequest::new(5).convention(Convention::IsoAndAnti)).map_err(|e| e.to_string())?;
    ensure(five == 1160, || format!("order 5 gave {five}"))?;
    let t5 = within(started, Duration::from_secs(1800), "order 5")?;
    ensure(count_semigroups(&CensusRequest::new(6)).is_err(), || {
        "order 6 ran without the flag".into()
    })?;
    Ok(format!("1, 4, 18, 126 in {t4:.2?}; order 5 gives 1160 in {t5:.2?}"))
}

fn abelian_census(fx: &Fixtures) -> Outcome {
    let reps = enumerate_semigroups(&CensusRequest::new(3).abelian(true)).map_err(|e| e.to_string())?;
    ensure(reps.len() == 12, || format!("{} classes", reps.len()))?;
    let mut seen = BTreeSet::new();
    for a in [1, 2, 3, 6, 7, 9, 10, 12, 15, 16, 17, 18] {
        let name = format!("S3_{a}");
        let t = fx.table(&name).map_err(|e| format!("{e:#}"))?.table;
        let hits: Vec<usize> = (0..reps.len())
            .filter(|&i| are_isomorphic(&reps[i], &t).is_some())
            .collect();
        ensure(hits.len() == 1, || {
            format!("{name} matches {} representatives", hits.len())
        })?;
        seen.insert(hits[0]);
    }
    ensure(seen.len() == 12, || "listed tables share a class".into())?;
    Ok("12 classes, each listed order-3 table matches exactly one".into())
}

fn template_counts(fx: &Fixtures) -> Outcome {
    let mut notes = Vec::new();
    let mut slowest = Duration::ZERO;
    for case in &TEMPLATES {
        let p = fx.problem(case.fixture).map_err(|e| format!("{e:#}"))?;
        let started = Instant::now();
        let classes = complete(&p).map_err(|e| e.to_string())?;
        let raw = raw_completions(&p).map_err(|e| e.to_string())?;
        slowest = slowest.max(within(started, Duration::from_secs(1), case.fixture)?);
        ensure(classes.len() == case.classes.len(), || {
            format!(
                "{}: {} classes, expected {}",
                case.fixture,
                classes.len(),
                case.classes.len()
            )
        })?;
        let mut matched = BTreeSet::new();
        for c in case.classes {
            let list = fx.table(c.list).map_err(|e| format!("{e:#}"))?.table;
            let w = Perm::from_labels(&c.witness).map_err(|e| e.to_string())?;
            let image = list.apply_perm(&w).map_err(|e| e.to_string())?;
            // Cell-for-cell: the witness image is itself a completion, and
            // it agrees with the printed table unless that table is a
            // recorded misprint.
            ensure(raw.contains(&image), || {
                format!("{}: image of {} is not a completion", c.name, c.list)
            })?;
            let printed = CayleyTable::from_label_rows(&c.rows).map_err(|e| e.to_string())?;
            ensure(image == printed || c.misprint, || {
                format!("{}: witness image differs", c.name)
            })?;
            if image != printed {
                notes.push(format!("{} printed table is a misprint", c.name));
            }
            let class = classes.iter().position(|t| are_isomorphic(t, &image).is_some());
            let class = class.ok_or_else(|| format!("{}: no class matches {}", c.name, c.list))?;
            matched.insert(class);
        }
        ensure(matched.len() == classes.len(), || {
            format!("{}: designated tables miss a class", case.fixture)
        })?;
    }
    let note = if notes.is_empty() {
        String::new()
    } else {
        format!("; {}", notes.join(", "))
    };
    Ok(format!(
        "2, 7, 1 classes, witnesses verified, slowest {slowest:.2?}{note}"
    ))
}

fn pipeline_reproduction(fx: &Fixtures) -> Outcome {
    let mut out = Vec::new();
    let code = match execute(Command::Reproduce, fx, &mut out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Mismatch(msg)) => return Err(format!("exit {EXIT_MISMATCH}: {msg}")),
        Err(Failure::Input(e)) => return Err(format!("exit {EXIT_INPUT}: {e:#}")),
    };
    let text = String::from_utf8_lossy(&out);
    for line in [
        "Type III: SE2 SK3 SN1",
        "Type II: SN2",
        "Type V: SN3",
        "SN1 ≅ S4_44 via (λ4 λ1 λ2 λ3)",
    ] {
        ensure(text.lines().any(|l| l == line), || format!("missing `{line}`"))?;
    }
    ensure(text.lines().any(|l| l.starts_with("Type I: abelian start")), || {
        "abelian rows missing".into()
    })?;
    let misprints = text.lines().filter(|l| l.contains("known misprint")).count();
    Ok(format!(
        "reproduce exits {code}; {misprints} printed witnesses or tables flagged as misprints"
    ))
}

fn non_reachability() -> Outcome {
    let started = Instant::now();
    let mut opts = ScanOptions::new(4);
    opts.start = StartSet::Both;
    let result = scan(&opts).map_err(|e| e.to_string())?;
    let took = within(started, Duration::from_secs(600), "scan")?;
    ensure(result.forbidden().is_empty(), || {
        format!(
            "forbidden: {}",
            result
                .forbidden()
                .iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
                .join("; ")
        )
    })?;
    ensure(result.invariant_failures().is_empty(), || {
        format!(
            "{} runs break the structural invariants",
            result.invariant_failures().len()
        )
    })?;
    result.check().map_err(|bad| bad.join("; "))?;
    let counts: Vec<String> = result.type_counts().iter().map(|(t, n)| format!("{t}:{n}")).collect();
    Ok(format!(
        "{} runs, {} three-dimensional, reached {} in {took:.2?}",
        result.records.len(),
        result.three_dimensional(),
        counts.join(" ")
    ))
}

fn lie_validity() -> Outcome {
    let mut checked = 0usize;
    for n in 1..=4 {
        for t in enumerate_semigroups(&CensusRequest::new(n).abelian(true)).map_err(|e| e.to_string())? {
            for g in [solvable_plane(), abelian_plane()] {
                let full = s_expand(&g, &t).map_err(|e| e.to_string())?;
                ensure(full.algebra().validate(), || format!("expansion of {t:?} fails"))?;
                checked += 1;
                for d in find_resonances(&t) {
                    let sub = resonant_subalgebra(&g, &Grading::planar(), &t, &d).map_err(|e| e.to_string())?;
                    ensure(sub.algebra().validate(), || format!("resonant {t:?} {d} fails"))?;
                    checked += 1;
                    let Some(z) = t.find_zero() else { continue };
                    match zero_reduce(&sub, z) {
                        Ok(red) => {
                            ensure(red.algebra().validate(), || format!("reduced {t:?} {d} fails"))?;
                            checked += 1;
                        }
                        Err(ExpandError::NoZeroSector(_)) => {}
                        Err(e) => return Err(format!("{t:?} {d}: {e}")),
                    }
                }
            }
        }
    }
    Ok(format!("{checked} algebras pass antisymmetry and Jacobi exactly"))
}

/// Products of elementary integer moves; determinant ±1 by construction.
fn unimodular() -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec((0usize..3, 0usize..3, 0u8..3, -3i64..=3), 1..10).prop_map(|moves| {
        let mut m: Vec<Vec<i64>> = (0..3).map(|i| (0..3).map(|j| i64::from(i == j)).collect()).collect();
        for (a, b, kind, k) in moves {
            match kind {
                0 if a != b => {
                    let src = m[b].clone();
                    for (x, y) in m[a].iter_mut().zip(src) {
                        *x += k * y;
                    }
                }
                1 => m.swap(a, b),
                _ => m[a].iter_mut().for_each(|x| *x = -*x),
            }
        }
        m.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    })
}

fn classifier_soundness() -> Outcome {
    let mut total = 0;
    for tag in BianchiTag::ALL {
        let h = match tag {
            BianchiTag::VI => Some(int(3)),
            BianchiTag::VII2 => Some(frac(1, 2)),
            _ => None,
        };
        let g = canonical_bianchi(tag, h.as_ref()).map_err(|e| e.to_string())?;
        let reference = classify3(&g).map_err(|e| e.to_string())?;
        ensure(reference.tag() == tag, || format!("{tag} classifies as {reference}"))?;
        let dd = derived_dim(&g).map_err(|e| e.to_string())?;
        let config = Config {
            cases: 200,
            failure_persistence: None,
            ..Config::default()
        };
        let seed = [tag as u8; 32];
        let mut runner = TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &seed));
        runner
            .run(&unimodular(), |m| {
                let det = determinant(&m);
                prop_assert!(det == Rational::one() || det == -Rational::one());
                let moved = g.change_basis(&m).unwrap();
                prop_assert_eq!(classify3(&moved).unwrap(), reference.clone());
                prop_assert_eq!(derived_dim(&moved).unwrap(), dd);
                Ok(())
            })
            .map_err(|e| format!("{tag}: {e}"))?;
        total += 200;
    }
    Ok(format!(
        "ten rows correct, {total} unimodular changes of basis with zero failures"
    ))
}

fn naive_classes(n: usize, abelian: bool, with_transpose: bool) -> BTreeSet<CayleyTable> {
    let cells = n * n;
    let perms: Vec<Perm> = Perm::all(n).collect();
    let mut out = BTreeSet::new();
    for code in 0..n.pow(cells as u32) {
        let mut c = code;
        let digits: Vec<u8> = (0..cells)
            .map(|_| {
                let d = (c % n) as u8;
                c /= n;
                d
            })
            .collect();
        let t = CayleyTable::new(n, digits).unwrap();
        if !t.is_associative() || (abelian && !t.is_commutative()) {
            continue;
        }
        let mut variants = vec![t.clone()];
        if with_transpose {
            variants.push(t.transpose());
        }
        let least = variants
            .iter()
            .flat_map(|v| perms.iter().map(move |p| v.apply_perm(p).unwrap()))
            .min()
            .unwrap();
        out.insert(least);
    }
    out
}

fn oracle_equivalence() -> Outcome {
    let mut sizes = Vec::new();
    for n in 1..=3 {
        for (conv, transpose) in [(Convention::Iso, false), (Convention::IsoAndAnti, true)] {
            for abelian in [false, true] {
                let req = CensusRequest::new(n).convention(conv).abelian(abelian);
                let orderly: BTreeSet<CayleyTable> = enumerate_semigroups(&req)
                    .map_err(|e| e.to_string())?
                    .into_iter()
                    .collect();
                let naive = naive_classes(n, abelian, transpose);
                ensure(orderly == naive, || {
                    format!(
                        "order {n} {conv} abelian={abelian}: {} vs {}",
                        orderly.len(),
                        naive.len()
                    )
                })?;
                if !abelian {
                    sizes.push(naive.len().to_string());
                }
            }
        }
    }
    Ok(format!(
        "class sets identical at orders 1-3 (general sizes {})",
        sizes.join(", ")
    ))
}

fn main() -> ExitCode {
    // `cargo test -- --list` and friends probe the binary; say nothing.
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let fx = Fixtures::from_env();
    let criteria: [(&str, Check); 8] = [
        ("census totals", Box::new(census_totals)),
        ("abelian census", Box::new(|| abelian_census(&fx))),
        ("template counts", Box::new(|| template_counts(&fx))),
        ("pipeline reproduction", Box::new(|| pipeline_reproduction(&fx))),
        ("non-reachability", Box::new(non_reachability)),
        ("Lie validity", Box::new(lie_validity)),
        ("classifier soundness", Box::new(classifier_soundness)),
        ("oracle equivalence", Box::new(oracle_equivalence)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
