//! Acceptance criteria. Each prints one PASS/FAIL line with its runtime and
//! limit; the process exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;
use wonderstab::diagram::{diagram_from_line, diagram_from_point, intersect_diagrams};
use wonderstab::linalg::QVector;
use wonderstab::model::{build_chain, build_chain_reporting, ModelPoint};
use wonderstab::partition::{building_set, SetPartition};
use wonderstab::perm::Permutation;
use wonderstab::sample::{
    curated_n3, random_diagram, random_line, random_model_point, random_permutation, random_point, rng,
};
use wonderstab::stabilizer::{brute_stab_line, brute_stab_point, brute_stabilizer, stabilizer};
use wonderstab::strata::{check_distinguishing, Mode, Stratification};

type Check = Result<String, String>;

fn v(xs: &[i64]) -> QVector {
    QVector::from_ints(xs)
}

fn perm(n: usize, s: &str) -> Permutation {
    Permutation::parse_cycles(n, s).expect("valid cycle notation")
}

fn point(x: &[i64], lines: &[&[i64]]) -> ModelPoint {
    let lines: Vec<QVector> = lines.iter().map(|l| v(l)).collect();
    build_chain(&v(x), &lines).expect("valid model point")
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e(r: impl std::fmt::Display) -> String {
    r.to_string()
}

fn psi_points() -> Check {
    for (i, j) in [(1, 2), (1, 3), (2, 3)] {
        let mut l = [0i64; 3];
        l[i - 1] = 1;
        l[j - 1] = -1;
        let w = point(&[0, 0, 0], &[&l]);
        let g = stabilizer(&w).map_err(e)?;
        let t = perm(3, &format!("({i} {j})"));
        require(g.rank() == 1 && g.generators() == [t.clone()], || format!("psi_{i}{j}: got {g}"))?;
        let brute = brute_stabilizer(&w).map_err(e)?;
        require(&g.elements() == brute.elements(), || format!("psi_{i}{j}: oracle disagrees"))?;
    }
    Ok("three points, each <(i j)>".into())
}

fn divisor_points() -> Check {
    let t = perm(3, "(1 2)");
    for x in [[1, 1, -2], [-3, -3, 6], [5, 5, -10], [-1, -1, 2]] {
        let w = point(&x, &[]);
        let g = stabilizer(&w).map_err(e)?;
        require(g.rank() == 1 && g.generators() == [t.clone()], || format!("{x:?}: got {g}"))?;
    }
    let built = build_chain_reporting(&v(&[0, 0, 0]), &[v(&[1, 1, -2])]).map_err(e)?;
    let w = built.point;
    let expected: BTreeSet<SetPartition> = [
        SetPartition::from_blocks(3, &[&[1, 2, 3]]).map_err(e)?,
        SetPartition::from_blocks(3, &[&[1, 2], &[3]]).map_err(e)?,
    ]
    .into();
    let by_chain: BTreeSet<SetPartition> = building_set(3).into_iter().filter(|g| w.in_divisor(g)).collect();
    let by_coords: BTreeSet<SetPartition> = w.divisors_by_coordinates().map_err(e)?.into_iter().collect();
    require(by_chain == expected && by_coords == expected, || format!("divisors {by_chain:?} / {by_coords:?}"))?;
    require(built.auto_completed, || "forced line was not filled in".into())?;
    Ok("x1 = x2 gives <(1 2)>; (0, <(1,1,-2)>) on {(123), (12)(3)}".into())
}

fn motivating_n4() -> Check {
    let line = wonderstab::linalg::QLine::from_ints(&[0, 0, -1, 1]).map_err(e)?;
    let stab = brute_stab_line(&line).map_err(e)?;
    require(stab.contains(&perm(4, "(1 2)")) && stab.contains(&perm(4, "(3 4)")), || "line not fixed".into())?;
    let w = point(&[0, 0, 0, 0], &[&[0, 0, -1, 1]]);
    let g = stabilizer(&w).map_err(e)?;
    require(g.order() == 4, || format!("order {}", g.order()))?;
    require(&g.elements() == brute_stabilizer(&w).map_err(e)?.elements(), || "oracle disagrees".into())?;
    Ok(format!("stab = {g}"))
}

fn oracle_equivalence() -> Check {
    let mut total = 0;
    for n in 3..=6 {
        let mut r = rng(400 + n as u64);
        for _ in 0..200 {
            let w = random_model_point(n, &mut r);
            let g = stabilizer(&w).map_err(e)?;
            let brute = brute_stabilizer(&w).map_err(e)?;
            require(&g.elements() == brute.elements(), || {
                format!("mismatch at {}", serde_json::to_string(&w).unwrap())
            })?;
            total += 1;
        }
    }
    Ok(format!("{total} points"))
}

fn rank_bound() -> Check {
    let mut max_seen = 0;
    for n in 2..=7 {
        let mut r = rng(500 + n as u64);
        for _ in 0..100 {
            let g = stabilizer(&random_model_point(n, &mut r)).map_err(e)?;
            require(g.rank() <= n / 2, || format!("h = {} at n = {n}", g.rank()))?;
            max_seen = max_seen.max(g.rank());
        }
    }
    let flag = point(&[0, 0, 0, 0], &[&[1, 1, -1, -1], &[1, -1, 0, 0], &[0, 0, 1, -1]]);
    let g = stabilizer(&flag).map_err(e)?;
    require(g.rank() == 2, || format!("flag point has h = {}", g.rank()))?;
    Ok(format!("bound holds on 600 points, flag point h = 2 (largest sampled h = {max_seen})"))
}

/// Pairs of diagrams on a common ground set of size 2..=7.
fn diagram_corpus() -> Vec<(wonderstab::diagram::Diagram, wonderstab::diagram::Diagram)> {
    let mut r = rng(600);
    (0..300)
        .map(|_| {
            let n = r.gen_range(2..=7);
            (random_diagram(n, &mut r), random_diagram(n, &mut r))
        })
        .collect()
}

fn intersection_aut() -> Check {
    for (d1, d2) in diagram_corpus() {
        let a1 = d1.aut_brute().map_err(e)?;
        let a2 = d2.aut_brute().map_err(e)?;
        let both: BTreeSet<Permutation> = a1.intersection(&a2).cloned().collect();
        let meet = intersect_diagrams(&d1, &d2).map_err(e)?.aut_brute().map_err(e)?;
        require(both == meet, || format!("fails for {d1} and {d2}"))?;
    }
    Ok("300 pairs".into())
}

fn meet_and_reduction() -> Check {
    let mut reduced = 0;
    for (d1, d2) in diagram_corpus() {
        let d = intersect_diagrams(&d1, &d2).map_err(e)?;
        let meet = d1.fiber_partition().meet(&d2.fiber_partition()).map_err(e)?;
        require(d.fiber_partition() == meet, || format!("rho fails for {d1} and {d2}"))?;
        for x in [&d1, &d2, &d] {
            let red = x.reduce().map_err(e)?;
            require(red.is_reduced() && red.t() <= x.t(), || format!("reduce({x}) = {red}"))?;
            require(red.aut_brute().map_err(e)? == x.aut_brute().map_err(e)?, || format!("Aut changed for {x}"))?;
            reduced += 1;
        }
    }
    Ok(format!("300 pairs, {reduced} reductions"))
}

fn distinguishing() -> Check {
    let curated = check_distinguishing(3, &curated_n3(), Mode::BSignature).map_err(e)?;
    require(curated.pass, || "curated n = 3 set has a mixed class".into())?;
    let strat = Stratification::cached(3).map_err(e)?;
    let covered: BTreeSet<_> =
        curated_n3().iter().map(|w| strat.signature(w).map(|s| s.key())).collect::<Result<_, _>>().map_err(e)?;
    let mut r = rng(801);
    for _ in 0..2000 {
        let w = random_model_point(3, &mut r);
        let key = strat.signature(&w).map_err(e)?.key();
        require(covered.contains(&key), || {
            format!("curated set misses the stratum of {}", serde_json::to_string(&w).unwrap())
        })?;
    }

    let mut r = rng(800);
    let sample: Vec<ModelPoint> = (0..200).map(|_| random_model_point(4, &mut r)).collect();
    let n4 = check_distinguishing(4, &sample, Mode::BSignature).map_err(e)?;
    require(n4.pass, || "n = 4 sample has a mixed class".into())?;

    let psi = point(&[0, 0, 0], &[&[1, -1, 0]]);
    let generic = point(&[0, 0, 0], &[&[1, 2, -3]]);
    let control = check_distinguishing(3, &[psi.clone(), generic.clone()], Mode::NestedOnly).map_err(e)?;
    require(!control.pass, || "nested-only control unexpectedly passed".into())?;
    let expected = [(psi.clone(), generic.clone()), (generic.clone(), psi.clone())];
    require(control.witness.as_ref().is_some_and(|w| expected.contains(w)), || "unexpected witness".into())?;
    let refined = check_distinguishing(3, &[psi, generic], Mode::BSignature).map_err(e)?;
    require(refined.pass, || "refined signature does not separate the witness".into())?;
    let curated_control = check_distinguishing(3, &curated_n3(), Mode::NestedOnly).map_err(e)?;
    require(!curated_control.pass, || "nested-only passes on the curated set".into())?;
    Ok(format!(
        "n = 3: {} classes, n = 4: {} classes; nested-only fails on psi_12 vs generic D_0 point",
        curated.classes.len(),
        n4.classes.len()
    ))
}

fn point_line_agreement() -> Check {
    for n in 3..=7 {
        let mut r = rng(900 + n as u64);
        for _ in 0..100 {
            let x = random_point(n, &mut r);
            let aut = diagram_from_point(&x).aut_elements().map_err(e)?;
            require(&aut == brute_stab_point(&x).map_err(e)?.elements(), || format!("point {x}"))?;
            let l = random_line(n, &mut r);
            let aut = diagram_from_line(&l).aut_elements().map_err(e)?;
            require(&aut == brute_stab_line(&l).map_err(e)?.elements(), || format!("line {l}"))?;
        }
    }
    Ok("500 points, 500 lines".into())
}

fn equivariance() -> Check {
    let mut r = rng(1000);
    for i in 0..100 {
        let n = 3 + i % 3;
        let w = random_model_point(n, &mut r);
        let g = random_permutation(n, &mut r);
        let moved = w.act(&g);
        let show = || serde_json::to_string(&w).unwrap();
        let expected: Vec<SetPartition> = w.nested_stratum().iter().map(|p| g.act_partition(p)).collect();
        require(moved.nested_stratum() == expected, || format!("nested stratum, g = {g}, {}", show()))?;
        let conj = brute_stabilizer(&w).map_err(e)?.conjugate_by(&g);
        require(brute_stabilizer(&moved).map_err(e)? == conj, || format!("stabilizer, g = {g}, {}", show()))?;
        let strat = Stratification::cached(n).map_err(e)?;
        let key = strat.signature(&moved).map_err(e)?.key();
        require(key == strat.signature(&w).map_err(e)?.translated_key(&g), || {
            format!("signature, g = {g}, {}", show())
        })?;
    }
    Ok("100 pairs".into())
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Check, Duration);
    let criteria: [Criterion; 10] = [
        ("psi points stabilized by transpositions", psi_points, Duration::from_secs(1)),
        ("divisor points for n = 3", divisor_points, Duration::from_secs(1)),
        ("n = 4 line fixed by (1 2) and (3 4)", motivating_n4, Duration::from_secs(1)),
        ("pipeline equals oracle for n = 3..6", oracle_equivalence, Duration::from_secs(60)),
        ("h <= floor(n/2), attained at n = 4", rank_bound, Duration::from_secs(1)),
        ("Aut of an intersection", intersection_aut, Duration::from_secs(30)),
        ("fiber partition meet and reduction", meet_and_reduction, Duration::from_secs(30)),
        ("refined stratification distinguishes stabilizers", distinguishing, Duration::from_secs(30)),
        ("point and line diagrams", point_line_agreement, Duration::from_secs(30)),
        ("equivariance", equivariance, Duration::from_secs(10)),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let (status, detail) = match result {
            Ok(d) if elapsed > *limit => ("FAIL", format!("over the time limit: {d}")),
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{status} {:>2} {name} [{elapsed:.2?} / {limit:?}]: {detail}", i + 1);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
