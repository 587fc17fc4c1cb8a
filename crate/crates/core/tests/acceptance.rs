//! Acceptance criteria. Every criterion is checked exactly (integer
//! equality, exhaustive truth-table equivalence); one PASS/FAIL line is
//! printed per criterion and the test fails if any criterion fails.
//!
//! Run with `cargo test -p simplegame-core --test acceptance -- --nocapture`.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use simplegame_core::lp::{self, LinearProgram, Relation};
use simplegame_core::*;

struct Outcome {
    id: u32,
    name: &'static str,
    passed: bool,
    detail: String,
    elapsed: Duration,
}

fn run(id: u32, name: &'static str, budget: Duration, f: impl FnOnce() -> Result<String, String>) -> Outcome {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if passed && elapsed > budget {
        passed = false;
        detail = format!("{detail}; exceeded time budget {budget:?}");
    }
    let outcome = Outcome { id, name, passed, detail, elapsed };
    println!(
        "[{}] criterion {}: {} ({:.2?}) {}",
        if outcome.passed { "PASS" } else { "FAIL" },
        outcome.id,
        outcome.name,
        outcome.elapsed,
        outcome.detail
    );
    outcome
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn yes_instance(d: usize) -> SimpleGame {
    gen_ssp(&SspInstance::new(3, vec![1, 2, 3], d).unwrap()).unwrap()
}

fn no_instance(d: usize) -> SimpleGame {
    gen_ssp(&SspInstance::new(2, vec![5, 7], d).unwrap()).unwrap()
}

/// The pair game for n = 2..4, both d = 2 subset-sum games, and 50 seeded
/// random monotone games with 3..=8 players.
fn corpus() -> Vec<(String, SimpleGame)> {
    let mut games = Vec::new();
    for n in 2..=4 {
        games.push((format!("example1({n})"), gen_example1(n).unwrap()));
    }
    games.push(("ssp(3;1,2,3;d=2)".into(), yes_instance(2)));
    games.push(("ssp(2;5,7;d=2)".into(), no_instance(2)));
    for i in 0..50u64 {
        let n = 3 + (i % 6) as usize;
        let m = 1 + (i % 5) as usize;
        let seed = 1000 + i;
        games.push((format!("random(n={n},m={m},seed={seed})"), gen_random_monotone(n, m, seed).unwrap()));
    }
    games
}

fn check_witness(game: &SimpleGame, w: &DimensionWitness) -> Result<(), String> {
    ensure(w.parts.len() == w.value, || "witness size differs from value".into())?;
    ensure(equivalent(&w.to_game(), game), || "witness does not recombine to the game".into())
}

fn criterion1() -> Result<String, String> {
    let mut values = Vec::new();
    for n in 2..=5 {
        let g = gen_example1(n).unwrap();
        let w = dimension(&g).map_err(|e| e.to_string())?;
        check_witness(&g, &w)?;
        ensure(w.value == n, || format!("n={n}: dimension {} expected {n}", w.value))?;
        values.push(w.value);
    }
    Ok(format!("dimensions {values:?}"))
}

/// Codimension runs for n = 2, 3, 4, shared with criterion 6.
fn example1_codimensions() -> Vec<(usize, usize, Result<DimensionWitness, GameError>)> {
    (2..=4)
        .map(|n| {
            let g = gen_example1(n).unwrap();
            let parts = match g.form() {
                GameForm::Intersection(p) => p.len(),
                _ => unreachable!(),
            };
            (n, parts, codimension(&g))
        })
        .collect()
}

fn criterion2(runs: &[(usize, usize, Result<DimensionWitness, GameError>)]) -> Result<String, String> {
    let mut values = Vec::new();
    for (n, _, res) in runs {
        let w = res.as_ref().map_err(|e| e.to_string())?;
        check_witness(&gen_example1(*n).unwrap(), w)?;
        let expected = 1usize << (n - 1);
        ensure(w.value == expected, || format!("n={n}: codimension {} expected {expected}", w.value))?;
        values.push(w.value);
    }
    Ok(format!("codimensions {values:?}"))
}

fn criterion3() -> Result<String, String> {
    let mut report = Vec::new();
    let mut mismatches = Vec::new();
    for (d, dim, codim) in [(2, 2, 4), (3, 3, 8)] {
        let g = yes_instance(d);
        let a = dimension(&g).map_err(|e| e.to_string())?;
        let b = codimension(&g).map_err(|e| e.to_string())?;
        check_witness(&g, &a)?;
        check_witness(&g, &b)?;
        report.push(format!("yes d={d}: dim {} codim {}", a.value, b.value));
        if a.value != dim {
            mismatches.push(format!("yes d={d}: dim {} expected {dim}", a.value));
        }
        if b.value != codim {
            mismatches.push(format!("yes d={d}: codim {} expected {codim}", b.value));
        }
    }
    for d in [2, 3] {
        let g = no_instance(d);
        let a = dimension(&g).map_err(|e| e.to_string())?;
        let b = codimension(&g).map_err(|e| e.to_string())?;
        if a.value != 1 || b.value != 1 {
            mismatches.push(format!("no d={d}: dim {} codim {} expected 1 1", a.value, b.value));
        }
        let mut weights = vec![5, 7];
        weights.resize(2 + 2 * d, 0);
        let target = SimpleGame::weighted(WeightedGame::new(3, &weights).unwrap());
        match is_weighted(&g) {
            Some(rep) if equivalent(&SimpleGame::weighted(rep.clone()), &target) => {
                report.push(format!("no d={d}: dim 1 codim 1 as {rep}"));
            }
            Some(rep) => mismatches.push(format!("no d={d}: {rep} differs from [3; 5,7,0,...]")),
            None => mismatches.push(format!("no d={d}: not weighted")),
        }
    }
    let report = report.join(", ");
    if mismatches.is_empty() {
        Ok(report)
    } else {
        Err(format!("{}; computed {report}", mismatches.join("; ")))
    }
}

fn criterion4(corpus: &[(String, SimpleGame)]) -> Result<String, String> {
    for (name, g) in corpus {
        let ext = extremal_sets(g);
        let dim = dimension(g).map_err(|e| format!("{name}: {e}"))?;
        let codim = codimension(g).map_err(|e| format!("{name}: {e}"))?;
        check_witness(g, &dim).map_err(|e| format!("{name}: {e}"))?;
        check_witness(g, &codim).map_err(|e| format!("{name}: {e}"))?;
        ensure(dim.value <= ext.maximal_losing.len(), || format!("{name}: dim above |L^M|"))?;
        ensure(codim.value <= ext.minimal_winning.len(), || format!("{name}: codim above |W^m|"))?;
        let ci = canonical_intersection(g);
        let cu = canonical_union(g);
        ensure(ci.len() == ext.maximal_losing.len() && cu.len() == ext.minimal_winning.len(), || {
            format!("{name}: canonical sizes")
        })?;
        let ci = SimpleGame::combine(Combination::Intersection, ci).unwrap();
        let cu = SimpleGame::combine(Combination::Union, cu).unwrap();
        ensure(equivalent(&ci, g) && equivalent(&cu, g), || {
            format!("{name}: canonical representation not equivalent")
        })?;
    }
    Ok(format!("{} games", corpus.len()))
}

fn criterion5(corpus: &[(String, SimpleGame)]) -> Result<String, String> {
    for (name, g) in corpus {
        let d = dual(g);
        ensure(equivalent(&dual(&d), g), || format!("{name}: dual is not an involution"))?;
        let lhs = dimension(g).map_err(|e| format!("{name}: {e}"))?.value;
        let rhs = codimension(&d).map_err(|e| format!("{name}: {e}"))?.value;
        ensure(lhs == rhs, || format!("{name}: dim {lhs} != codim of dual {rhs}"))?;
    }

    // Intersection -> union of the dual is a single pass over the parts and
    // never touches the coalition lattice.
    let mut timings = Vec::new();
    for parts in [1000usize, 2000, 4000] {
        let weights: Vec<WeightedGame> = (0..parts)
            .map(|k| {
                let w: Vec<i64> = (0..24).map(|j| ((k * 7 + j * 13) % 11) as i64).collect();
                let total: i64 = w.iter().sum();
                WeightedGame::new(1 + (k as i64 % total), &w).unwrap()
            })
            .collect();
        let g = SimpleGame::combine(Combination::Intersection, weights.clone()).unwrap();
        let start = Instant::now();
        let d = dual(&g);
        timings.push((parts, start.elapsed()));
        ensure(!g.has_truth_table() && !d.has_truth_table(), || "dual enumerated coalitions".into())?;
        let GameForm::Union(out) = d.form() else {
            return Err("dual of an intersection is not a union".into());
        };
        ensure(out.len() == parts, || "part count changed".into())?;
        for (a, b) in weights.iter().zip(out) {
            ensure(b.weights() == a.weights() && b.quota() == a.total_weight() - a.quota() + 1, || {
                "part is not the dual of its source".into()
            })?;
        }
    }
    Ok(format!("{} games; dual conversion timings {timings:?}", corpus.len()))
}

fn criterion6(runs: &[(usize, usize, Result<DimensionWitness, GameError>)]) -> Result<String, String> {
    let mut inputs = Vec::new();
    let mut outputs = Vec::new();
    for (n, parts, res) in runs {
        let w = res.as_ref().map_err(|e| e.to_string())?;
        inputs.push(*parts);
        outputs.push(w.parts.len());
        ensure(*parts == *n, || format!("n={n}: input has {parts} parts"))?;
    }
    ensure(inputs == [2, 3, 4] && outputs == [2, 4, 8], || {
        format!("input sizes {inputs:?}, minimal union sizes {outputs:?}")
    })?;
    Ok(format!("intersection sizes {inputs:?} -> minimal union sizes {outputs:?}"))
}

/// Built directly from the definition, independent of the solver's LP builder.
fn block_is_separable(n: usize, winning: &[Coalition], block: &[Coalition]) -> bool {
    let mut lp = LinearProgram::new(n + 1);
    lp.set_all_nonneg();
    let coeffs = |c: &Coalition| -> Vec<BigRational> {
        let mut v: Vec<BigRational> = (1..=n)
            .map(|p| BigRational::from_integer(BigInt::from(c.contains(p) as i64)))
            .collect();
        v.push(-BigRational::one());
        v
    };
    for s in winning {
        lp.add(coeffs(s), Relation::Ge, BigRational::zero()).unwrap();
    }
    for t in block {
        lp.add(coeffs(t), Relation::Le, -BigRational::one()).unwrap();
    }
    let mut q = vec![BigRational::zero(); n + 1];
    q[n] = BigRational::one();
    lp.add(q, Relation::Ge, BigRational::one()).unwrap();
    lp::solve_feasibility(&lp).is_feasible()
}

/// Every set partition of `0..k`, as block-label vectors (restricted growth strings).
fn set_partitions(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, k: usize, max: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for label in 0..=max + 1 {
            prefix.push(label);
            rec(prefix, k, max.max(label), out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        out.push(Vec::new());
    } else {
        let mut prefix = vec![0];
        rec(&mut prefix, k, 0, &mut out);
    }
    out
}

fn criterion7(corpus: &[(String, SimpleGame)]) -> Result<String, String> {
    let mut checked = 0;
    for (name, g) in corpus {
        let ext = extremal_sets(g);
        let targets = &ext.maximal_losing;
        if targets.len() > 6 {
            continue;
        }
        let mut best = usize::MAX;
        for labels in set_partitions(targets.len()) {
            let blocks = labels.iter().max().map_or(0, |m| m + 1);
            if blocks >= best {
                continue;
            }
            let ok = (0..blocks).all(|b| {
                let block: Vec<Coalition> = labels
                    .iter()
                    .zip(targets)
                    .filter(|(l, _)| **l == b)
                    .map(|(_, t)| *t)
                    .collect();
                block_is_separable(g.n(), &ext.minimal_winning, &block)
            });
            if ok {
                best = blocks;
            }
        }
        let found = dimension(g).map_err(|e| format!("{name}: {e}"))?.value;
        ensure(found == best, || format!("{name}: search {found}, exhaustive {best}"))?;
        checked += 1;
    }
    ensure(checked >= 10, || format!("only {checked} games small enough"))?;
    Ok(format!("{checked} games agree with exhaustive partition enumeration"))
}

fn criterion8() -> Result<String, String> {
    let stats = lp::solve_stats();
    ensure(stats.solves > 0, || "no LP solves recorded".into())?;
    ensure(stats.certificates_verified == stats.solves, || {
        format!("{} of {} certificates verified", stats.certificates_verified, stats.solves)
    })?;
    Ok(format!("{} certificates re-verified exactly", stats.solves))
}

#[test]
fn acceptance_criteria() {
    let corpus = corpus();
    let secs = Duration::from_secs;
    let mut outcomes = vec![run(1, "pair game dimension n=2..5", secs(5), criterion1)];
    let mut codims = Vec::new();
    outcomes.push(run(2, "pair game codimension n=2..4", secs(60), || {
        codims = example1_codimensions();
        criterion2(&codims)
    }));
    outcomes.push(run(3, "subset-sum dichotomy", secs(60), criterion3));
    outcomes.push(run(4, "canonical bounds and constructions", secs(60), || criterion4(&corpus)));
    outcomes.push(run(5, "duality identities", secs(120), || criterion5(&corpus)));
    outcomes.push(run(6, "exponential union blow-up", secs(60), || criterion6(&codims)));
    outcomes.push(run(7, "search vs exhaustive partitions", secs(60), || criterion7(&corpus)));
    outcomes.push(run(8, "exact certificates", secs(1), criterion8));

    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    println!("{} of {} criteria passed", outcomes.len() - failed.len(), outcomes.len());
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
