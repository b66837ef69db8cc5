//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use updown::cocycle::{
    builtin_by_name, check_cocycle, check_shiftable_system, enumerate_shiftable, is_cocycle, is_shiftable, CocycleTable,
};
use updown::coloring::{count_colorings, is_colorable, maxord, solve_colorings, verify_coloring, ColoringSpec};
use updown::diagram::{Diagram, Sign};
use updown::fixtures::{self, delta, maxord_six, random_knot, t, KNOTS, TRIANGLE_KNOTS};
use updown::invariant::{
    phi_multiset, phi_shift, rii_bound_maxord, rii_necessity_colcount, rii_necessity_phi, WeightMultiset,
};
use updown::moves::{apply_move, enumerate_moves, random_walk, MoveKind};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn f() -> CocycleTable {
    builtin_by_name("example-f").unwrap()
}

fn g() -> CocycleTable {
    builtin_by_name("example-g").unwrap()
}

fn up_down(n: u32) -> ColoringSpec {
    ColoringSpec::up_down(n).unwrap()
}

fn knot_coloring_count() -> Outcome {
    for seed in 0..50u64 {
        let d = random_knot((seed % 13) as u32, seed);
        for n in 1..=10u32 {
            let count = count_colorings(&d, up_down(n)).map_err(|e| e.to_string())?;
            ensure(count == n as u128, || format!("{d}: count {count} for n={n}"))?;
            let all = solve_colorings(&d, up_down(n));
            ensure(all.len() == n as usize, || format!("{d}: solver gave {} colorings for n={n}", all.len()))?;
            for c in &all {
                ensure(verify_coloring(&d, c) == Ok(true), || format!("{d}: unverified coloring {c}"))?;
            }
        }
    }
    Ok("50 knots, n=1..10".into())
}

fn t_family() -> Outcome {
    for i in 0..=6u32 {
        let d = t(i);
        ensure(maxord(&d) == 2 * i as u64, || format!("maxord(T({i})) = {}", maxord(&d)))?;
        for n in 1..=20u32 {
            let expected = (2 * i) % n == 0;
            ensure(is_colorable(&d, up_down(n)) == expected, || format!("T({i}) colorable mod {n} != {expected}"))?;
        }
    }
    Ok("i=0..6, n=1..20".into())
}

fn maxord_bounds() -> Outcome {
    for i in 0..=6u32 {
        for j in 0..=6u32 {
            let b = rii_bound_maxord(&t(i), &t(j)).map_err(|e| e.to_string())?;
            ensure(b.bound == i.abs_diff(j) as u64, || format!("bound(T({i}),T({j})) = {}", b.bound))?;
        }
    }
    let ten = t(5);
    let six = maxord_six();
    ensure(maxord(&ten) == 10 && maxord(&six) == 6, || "fixture maxords are not 10 and 6".into())?;
    let b = rii_bound_maxord(&ten, &six).map_err(|e| e.to_string())?;
    ensure(b.bound == 2, || format!("bound(maxord 10, maxord 6) = {}", b.bound))?;
    Ok(format!("49 pairs; {b}"))
}

fn cocycle_checker() -> Outcome {
    for (name, table) in [("example-f", f()), ("example-g", g())] {
        ensure(check_cocycle(&table).is_ok(), || format!("{name} fails: {:?}", check_cocycle(&table)))?;
        ensure(is_shiftable(&table), || format!("{name} is not shiftable"))?;
    }
    let base = f();
    let mut perturbed = 0;
    for i in 0..base.values().len() {
        for v in 0..base.m() {
            if v == base.values()[i] {
                continue;
            }
            let mut t = base.clone();
            t.set_raw(i, v);
            let violation = check_cocycle(&t).err().ok_or_else(|| format!("entry {i} := {v} still passes"))?;
            let _witness = violation.witness.to_string();
            perturbed += 1;
        }
    }
    Ok(format!("{perturbed} single-entry perturbations all rejected"))
}

/// Walks every table in `Z_m^(2 n^2)`, returning (tables, agreeing positives).
fn sweep(n: u32, m: u32) -> Result<(u64, u64), String> {
    let mut t = CocycleTable::zero(n, m).unwrap();
    let size = t.values().len();
    let mut digits = vec![0u32; size];
    let (mut tables, mut positives) = (0u64, 0u64);
    loop {
        let system = check_shiftable_system(&t);
        let direct = is_cocycle(&t) && is_shiftable(&t);
        ensure(system == direct, || format!("mismatch at {:?}", t.values()))?;
        tables += 1;
        positives += u64::from(system);

        let mut i = 0;
        loop {
            if i == size {
                return Ok((tables, positives));
            }
            digits[i] += 1;
            if digits[i] == m {
                digits[i] = 0;
                t.set_raw(i, 0);
                i += 1;
            } else {
                t.set_raw(i, digits[i]);
                break;
            }
        }
    }
}

fn shiftable_system_equivalence() -> Outcome {
    // positives from an independent enumeration of shiftable cocycles
    let golden = [((2, 2), 4), ((3, 2), 1), ((3, 3), 9)];
    let mut summary = Vec::new();
    for ((n, m), expected) in golden {
        let (tables, positives) = sweep(n, m)?;
        ensure(positives == expected, || format!("({n},{m}): {positives} shiftable cocycles, expected {expected}"))?;
        summary.push(format!("({n},{m}) {tables} tables"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut positives = 0;
    for k in 0..10_000 {
        let t = if k % 2 == 0 {
            CocycleTable::from_values(4, 4, (0..32).map(|_| rng.gen_range(0..4)).collect()).unwrap()
        } else {
            // difference-shaped tables, so that both outcomes are exercised
            let mut row = || -> Vec<u32> {
                let mut h: Vec<u32> = (0..4).map(|_| rng.gen_range(0..4)).collect();
                if rng.gen_bool(0.9) {
                    h[0] = 0;
                }
                h
            };
            let (plus, minus) = (row(), row());
            CocycleTable::from_differences(4, 4, &plus, &minus).unwrap()
        };
        let system = check_shiftable_system(&t);
        ensure(system == (is_cocycle(&t) && is_shiftable(&t)), || format!("mismatch at {:?}", t.values()))?;
        positives += u32::from(system);
    }
    ensure(positives > 0, || "no (4,4) sample satisfied the system".into())?;
    summary.push(format!("(4,4) 10000 seeded tables, {positives} positive"));
    Ok(summary.join("; "))
}

fn phi_values() -> Outcome {
    let f = f();
    let on_delta = phi_shift(&delta(), &f).map_err(|e| e.to_string())?;
    ensure(on_delta == 1, || format!("phi_shift(delta) = {on_delta}"))?;
    let on_unknot = phi_shift(&Diagram::unknot(), &f).map_err(|e| e.to_string())?;
    ensure(on_unknot == 0, || format!("phi_shift(unknot) = {on_unknot}"))?;
    let multiset = phi_multiset(&delta(), &f).map_err(|e| e.to_string())?;
    ensure(multiset == WeightMultiset::new(vec![1; 4]), || format!("phi_multiset(delta) = {multiset}"))?;
    Ok(format!("phi_shift = 1, 0; phi_multiset = {multiset}"))
}

fn additivity() -> Outcome {
    let f = f();
    let knots = fixtures::knots();
    let phi: Vec<u32> = knots.iter().map(|k| phi_shift(k, &f).unwrap()).collect();
    let mut sums = 0;
    for (d1, p1) in knots.iter().zip(&phi) {
        for (d2, p2) in knots.iter().zip(&phi) {
            for s1 in d1.semi_arcs() {
                for s2 in d2.semi_arcs() {
                    let sum = d1.connected_sum(d2, s1, s2).map_err(|e| e.to_string())?;
                    let got = phi_shift(&sum, &f).map_err(|e| e.to_string())?;
                    ensure(got == (p1 + p2) % 4, || format!("{d1} # {d2} at {s1},{s2}: {got}"))?;
                    sums += 1;
                }
            }
        }
    }
    let delta = delta();
    for d in &knots {
        for s1 in delta.semi_arcs() {
            for s2 in d.semi_arcs() {
                let sum = delta.connected_sum(d, s1, s2).map_err(|e| e.to_string())?;
                let separated = rii_necessity_phi(d, &sum, &f).map_err(|e| e.to_string())?;
                ensure(separated, || format!("phi does not separate {d} from {sum}"))?;
            }
        }
    }
    Ok(format!("{sums} connected sums over {} knots", KNOTS.len()))
}

struct Snapshot {
    counts: Vec<u128>,
    maxord: u64,
    phis: Vec<WeightMultiset>,
}

fn snapshot(d: &Diagram, cocycles: &[CocycleTable]) -> Snapshot {
    Snapshot {
        counts: (1..=12).map(|n| count_colorings(d, up_down(n)).unwrap()).collect(),
        maxord: maxord(d),
        phis: cocycles.iter().map(|f| phi_multiset(d, f).unwrap()).collect(),
    }
}

fn move_invariance() -> Outcome {
    let nonshiftable = [
        CocycleTable::from_fn(2, 2, |a, b, _| u32::from(a == 1 && b == 0)).unwrap(),
        CocycleTable::from_fn(2, 3, |a, b, s| match (a, b, s) {
            (1, 0, Sign::Positive) => 1,
            (1, 0, Sign::Negative) => 2,
            _ => 0,
        })
        .unwrap(),
    ];
    let mut cocycles = vec![f(), g()];
    cocycles.extend(nonshiftable);
    for c in &cocycles {
        ensure(is_cocycle(c), || format!("{:?} is not a cocycle", c.values()))?;
    }

    let mut starts = vec![delta(), KNOTS[3].parse().unwrap()];
    starts.extend(TRIANGLE_KNOTS.iter().map(|s| s.parse::<Diagram>().unwrap()));
    let kinds = [MoveKind::RiAdd, MoveKind::RiRemove, MoveKind::Riii];
    let mut riii_applied = 0;
    for (i, start) in starts.iter().enumerate() {
        let base = snapshot(start, &cocycles);
        for w in 0..100u64 {
            for step in random_walk(start, 200, &kinds, 1000 * i as u64 + w) {
                let mv = step.applied.as_ref().map(ToString::to_string).unwrap_or_else(|| "stall".into());
                if step.applied.as_ref().is_some_and(|m| m.kind == MoveKind::Riii) {
                    riii_applied += 1;
                }
                let now = snapshot(&step.diagram, &cocycles);
                let at = || format!("walk {w} from {start}, step {} ({mv})", step.step);
                ensure(now.counts == base.counts, || format!("{}: coloring counts changed", at()))?;
                ensure(now.maxord == base.maxord, || format!("{}: maxord changed", at()))?;
                ensure(now.phis == base.phis, || format!("{}: phi_multiset changed", at()))?;
            }
        }
    }
    ensure(riii_applied > 0, || "no RIII move was applied".into())?;

    let mut links = vec![t(0), t(1), t(2), t(3), maxord_six(), fixtures::maxord_two_ten_crossings()];
    links.extend((0..20).map(|s| fixtures::random_link(2, (s % 6) as u32, s)));
    let mut rii_checked = 0;
    let check = |before: &Diagram, after: &Diagram| {
        let diff = maxord(after) as i64 - maxord(before) as i64;
        ensure([-2, 0, 2].contains(&diff), || format!("{before} -> {after}: maxord changed by {diff}"))
    };
    for d in &links {
        for mv in enumerate_moves(d, &[MoveKind::RiiAdd, MoveKind::RiiRemove]) {
            check(d, &apply_move(d, &mv).map_err(|e| e.to_string())?)?;
            rii_checked += 1;
        }
        for seed in 0..5 {
            let mut before = d.clone();
            for step in random_walk(d, 20, &[MoveKind::RiiAdd, MoveKind::RiiRemove], seed) {
                check(&before, &step.diagram)?;
                rii_checked += 1;
                before = step.diagram;
            }
        }
    }
    Ok(format!("500 walks x 200 steps ({riii_applied} RIII moves); {rii_checked} RII applications"))
}

fn necessity_witnesses() -> Outcome {
    let n = rii_necessity_colcount(&t(1), &t(2)).map_err(|e| e.to_string())?;
    ensure(n == Some(4), || format!("witness {n:?}"))?;
    let counts = (count_colorings(&t(1), up_down(4)).unwrap(), count_colorings(&t(2), up_down(4)).unwrap());
    ensure(counts == (0, 16), || format!("counts mod 4: {counts:?}"))?;
    let phi = rii_necessity_phi(&delta(), &Diagram::unknot(), &f()).map_err(|e| e.to_string())?;
    ensure(phi, || "phi does not separate delta from the unknot".into())?;
    Ok("n=4 (counts 0 vs 16); phi separates delta from the unknot".into())
}

fn enumeration_goldens() -> Outcome {
    for m in 1..=4 {
        let found = enumerate_shiftable(1, m).map_err(|e| e.to_string())?;
        ensure(found.len() == 1, || format!("(1,{m}): {} tables", found.len()))?;
    }
    // frozen from an independent brute-force enumeration
    let two = enumerate_shiftable(2, 2).map_err(|e| e.to_string())?;
    ensure(two.len() == 4, || format!("(2,2): {} tables", two.len()))?;
    let four = enumerate_shiftable(4, 4).map_err(|e| e.to_string())?;
    ensure(four.len() == 64, || format!("(4,4): {} tables", four.len()))?;
    ensure(four.contains(&f()) && four.contains(&g()), || "(4,4) misses example-f or example-g".into())?;
    Ok("(1,m)=1, (2,2)=4, (4,4)=64 incl. example-f and example-g".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("knot coloring count", knot_coloring_count),
        ("T(i) maxord and colorability", t_family),
        ("maxord RII bounds", maxord_bounds),
        ("cocycle checker", cocycle_checker),
        ("shiftable system equivalence", shiftable_system_equivalence),
        ("phi values", phi_values),
        ("phi_shift additivity", additivity),
        ("move invariance", move_invariance),
        ("necessity witnesses", necessity_witnesses),
        ("enumeration goldens", enumeration_goldens),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
