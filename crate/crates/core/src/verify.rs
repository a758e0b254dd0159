//! Seeded verification suites, one per documented invariant.
//!
//! Each suite draws its own random stream from the configured seed, so a
//! suite's outcome does not depend on which other suites ran.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::diagram::{diagram_from_line, diagram_from_point, intersect_diagrams, Diagram, AUT_ENUM_BOUND};
use crate::error::Error;
use crate::linalg::{QSubspace, QVector};
use crate::model::{build_chain, ModelPoint};
use crate::partition::{all_partitions, building_set, partition_of_point, partition_of_subspace, SetPartition};
use crate::perm::{all_permutations, Permutation};
use crate::sample::{
    random_diagram, random_line, random_model_point, random_partition, random_permutation, random_point,
    random_subspace, random_vector_in, rng, SampleRng,
};
use crate::stabilizer::{
    brute_stab_line, brute_stab_point, brute_stabilizer, stabilizer, stabilizer_diagram, BRUTE_BOUND,
};
use crate::strata::{check_distinguishing, eigenspaces, Mode, Stratification};

/// Largest `n` for which suites that need the refined stratification run.
pub const VERIFY_STRATA_BOUND: usize = 6;

/// Suites scan all of `Sₙ` up to this size and sample permutations beyond it.
const EXHAUSTIVE_PERMS: usize = 6;

#[derive(Clone, Copy, Debug)]
pub struct Config {
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub module: &'static str,
    pub suite: &'static str,
    pub status: Status,
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub pass: bool,
    pub suites: Vec<SuiteResult>,
}

enum Stop {
    Fail(String),
    Skip(String),
}

impl From<Error> for Stop {
    fn from(e: Error) -> Self {
        Stop::Fail(format!("error: {e}"))
    }
}

type Outcome = std::result::Result<usize, Stop>;

fn ensure(cond: bool, detail: impl FnOnce() -> String) -> std::result::Result<(), Stop> {
    if cond {
        Ok(())
    } else {
        Err(Stop::Fail(detail()))
    }
}

fn bound(n: usize, max: usize, what: &str) -> std::result::Result<(), Stop> {
    if n > max {
        return Err(Stop::Skip(format!("{what} needs n <= {max}")));
    }
    Ok(())
}

pub struct Suite {
    pub module: &'static str,
    pub name: &'static str,
    run: fn(&Config, &mut SampleRng) -> Outcome,
}

/// All suites in a fixed order.
pub fn suites() -> &'static [Suite] {
    const SUITES: &[Suite] = &[
        Suite { module: "exact_linalg", name: "rref-canonicity", run: rref_canonicity },
        Suite { module: "exact_linalg", name: "complement-involution", run: complement_involution },
        Suite { module: "exact_linalg", name: "complement-dimension", run: complement_dimension },
        Suite { module: "exact_linalg", name: "intersect-laws", run: intersect_laws },
        Suite { module: "partition_lattice", name: "galois-correspondence", run: galois_correspondence },
        Suite { module: "partition_lattice", name: "order-reversal", run: order_reversal },
        Suite { module: "partition_lattice", name: "meet-is-greatest-lower-bound", run: meet_is_glb },
        Suite { module: "partition_lattice", name: "partition-equivariance", run: partition_equivariance },
        Suite { module: "model_points", name: "chain-round-trip", run: chain_round_trip },
        Suite { module: "model_points", name: "expansion-consistency", run: expansion_consistency },
        Suite { module: "model_points", name: "model-equivariance", run: model_equivariance },
        Suite { module: "model_points", name: "divisor-coherence", run: divisor_coherence },
        Suite { module: "model_points", name: "chain-stabilizer-absorption", run: chain_absorption },
        Suite { module: "cube_diagrams", name: "intersection-aut", run: intersection_aut },
        Suite { module: "cube_diagrams", name: "rho-meet", run: rho_meet },
        Suite { module: "cube_diagrams", name: "reduction-preserves-aut", run: reduction_preserves_aut },
        Suite { module: "cube_diagrams", name: "fiber-bijection", run: fiber_bijection },
        Suite { module: "cube_diagrams", name: "aut-structured-agreement", run: aut_structured_agreement },
        Suite { module: "cube_diagrams", name: "symmetry-group-soundness", run: symmetry_group_soundness },
        Suite { module: "stabilizers", name: "oracle-equivalence", run: oracle_equivalence },
        Suite { module: "stabilizers", name: "group-structure", run: group_structure },
        Suite { module: "stabilizers", name: "point-line-agreement", run: point_line_agreement },
        Suite { module: "stabilizers", name: "stabilizer-equivariance", run: stabilizer_equivariance },
        Suite { module: "stratification", name: "line-stabilizer-criterion", run: line_criterion },
        Suite { module: "stratification", name: "eigenspace-properties", run: eigenspace_properties },
        Suite { module: "stratification", name: "signature-determines-stabilizer", run: signature_determines },
        Suite { module: "stratification", name: "signature-equivariance", run: signature_equivariance },
    ];
    SUITES
}

/// Runs one suite with its own random stream.
pub fn run_suite(index: usize, cfg: &Config) -> SuiteResult {
    let suite = &suites()[index];
    let mut r = rng(cfg.seed);
    r.set_stream(index as u64);
    let (status, cases, detail) = match (suite.run)(cfg, &mut r) {
        Ok(cases) => (Status::Pass, cases, None),
        Err(Stop::Fail(d)) => (Status::Fail, 0, Some(d)),
        Err(Stop::Skip(d)) => (Status::Skip, 0, Some(d)),
    };
    SuiteResult { module: suite.module, suite: suite.name, status, cases, detail }
}

/// Runs every suite; the report passes iff no suite fails.
pub fn run(cfg: &Config) -> VerifyReport {
    let results: Vec<SuiteResult> = (0..suites().len()).map(|i| run_suite(i, cfg)).collect();
    VerifyReport {
        n: cfg.n,
        samples: cfg.samples,
        seed: cfg.seed,
        pass: results.iter().all(|r| r.status != Status::Fail),
        suites: results,
    }
}

fn permutations(n: usize, samples: usize, r: &mut SampleRng) -> Vec<Permutation> {
    if n <= EXHAUSTIVE_PERMS {
        all_permutations(n).collect()
    } else {
        (0..samples).map(|_| random_permutation(n, r)).collect()
    }
}

fn model_points(cfg: &Config, r: &mut SampleRng) -> Vec<ModelPoint> {
    (0..cfg.samples).map(|_| random_model_point(cfg.n, r)).collect()
}

fn show(ps: &BTreeSet<Permutation>) -> String {
    format!("{{{}}}", ps.iter().join(", "))
}

fn json(w: &ModelPoint) -> String {
    serde_json::to_string(w).unwrap_or_default()
}

fn vectors(cfg: &Config, r: &mut SampleRng) -> Vec<QVector> {
    (0..r.gen_range(0..=cfg.n)).map(|_| random_point(cfg.n, r)).collect()
}

fn rref_canonicity(cfg: &Config, r: &mut SampleRng) -> Outcome {
    for _ in 0..cfg.samples {
        let mut vs = vectors(cfg, r);
        let a = QSubspace::span(cfg.n, &vs)?;
        ensure(QSubspace::span(cfg.n, &a.basis())? == a, || format!("span(basis(A)) differs from A = {a}"))?;
        vs.shuffle(r);
        let b = QSubspace::span(cfg.n, &vs)?;
        ensure(a.basis() == b.basis(), || format!("reordering changed the basis: {a} vs {b}"))?;
    }
    Ok(cfg.samples)
}

fn complement_involution(cfg: &Config, r: &mut SampleRng) -> Outcome {
    for _ in 0..cfg.samples {
        let a = random_subspace(cfg.n, r);
        let back = a.orth_complement_in_v()?.orth_complement_in_v()?;
        ensure(back == a, || format!("double complement of {a} is {back}"))?;
    }
    Ok(cfg.samples)
}

fn complement_dimension(cfg: &Config, r: &mut SampleRng) -> Outcome {
    for _ in 0..cfg.samples {
        let a = random_subspace(cfg.n, r);
        let c = a.orth_complement_in_v()?;
        ensure(a.dim() + c.dim() + 1 == cfg.n, || format!("dim {a} + dim {c} != n - 1"))?;
    }
    Ok(cfg.samples)
}

fn intersect_laws(cfg: &Config, r: &mut SampleRng) -> Outcome {
    for _ in 0..cfg.samples {
        let (a, b, c) = (random_subspace(cfg.n, r), random_subspace(cfg.n, r), random_subspace(cfg.n, r));
        ensure(a.intersect(&b)? == b.intersect(&a)?, || format!("not commutative on {a}, {b}"))?;
        ensure(a.intersect(&b)?.intersect(&c)? == a.intersect(&b.intersect(&c)?)?, || {
            format!("not associative on {a}, {b}, {c}")
        })?;
        ensure(a.intersect(&a)? == a, || format!("not idempotent on {a}"))?;
    }
    Ok(cfg.samples)
}

fn galois_correspondence(cfg: &Config, r: &mut SampleRng) -> Outcome {
    let lattice: BTreeSet<QSubspace> = all_partitions(cfg.n).iter().map(SetPartition::subspace).collect();
    for p in all_partitions(cfg.n) {
        ensure(partition_of_subspace(&p.subspace())? == p, || format!("round trip fails for {p}"))?;
    }
    for _ in 0..cfg.samples {
        let s = if r.gen_bool(0.3) { random_partition(cfg.n, r).subspace() } else { random_subspace(cfg.n, r) };
        let closure = partition_of_subspace(&s)?.subspace();
        ensure(closure.contains_subspace(&s)?, || format!("closure of {s} does not contain it"))?;
        ensure((closure == s) == lattice.contains(&s), || format!("closure of {s} is {closure}"))?;
    }
    Ok(cfg.samples)
}

fn order_reversal(cfg: &Config, r: &mut SampleRng) -> Outcome {
    for _ in 0..cfg.samples {
        let p = random_partition(cfg.n, r);
        let q = if r.gen_bool(0.5) { random_partition(cfg.n, r) } else { p.meet(&random_partition(cfg.n, r))? };
        let (p, q) = if r.gen_bool(0.5) { (p, q) } else { (q, p) };
        ensure(p.leq(&q)? == p.subspace().contains_subspace(&q.subspace())?, || format!("{p} <= {q} disagrees"))?;
    }
    Ok(cfg.samples)
}

fn meet_is_glb(cfg: &Config, r: &mut SampleRng) -> Outcome {
    let all = all_partitions(cfg.n);
    let below: Vec<SetPartition> =
        if all.len() <= 1000 { all } else { (0..cfg.samples).map(|_| random_partition(cfg.n, r)).collect() };
    for _ in 0..cfg.samples {
        let (p, q) = (random_partition(cfg.n, r), random_partition(cfg.n, r));
        let m = p.meet(&q)?;
        ensure(m.leq(&p)? && m.leq(&q)?, || format!("{m} is not below {p} and {q}"))?;
        for x in &below {
            if x.leq(&p)? && x.leq(&q)? {
                ensure(x.leq(&m)?, || format!("{x} is a lower bound of {p}, {q} not below {m}"))?;
            }
        }
    }
    Ok(cfg.samples)
}

fn partition_equivariance(cfg: &Config, r: &mut SampleRng) -> Outcome {
    for _ in 0..cfg.samples {
        let (x, g) = (random_point(cfg.n, r), random_permutation(cfg.n, r));
        let moved = partition_of_point(&g.act_vector(&x));
        ensure(moved == g.act_partition(&partition_of_point(&x)), || format!("fails for {g} on {x}"))?;
    }
    Ok(cfg.samples)
}

fn chain_round_trip(cfg: &Config, r: &mut SampleRng) -> Outcome {
    for w in model_points(cfg, r) {
        let again = build_chain(w.x(), &w.line_vectors())?;
        ensure(again == w, || format!("rebuilding {} changed it", json(&w)))?;
    }
    Ok(cfg.samples)
}

fn expansion_consistency(cfg: &Config, r: &mut SampleRng) -> Outcome {
    let mut cases = 0;
    for w in model_points(cfg, r) {
        for (i, step) in w.chain().iter().enumerate() {
            let (j, line) = w.expand_coordinate(&step.partition)?;
            ensure(j == i + 1 && line == step.line, || {
                format!("step {} of {} expands to ({j}, {line})", i + 1, json(&w))
            })?;
            cases += 1;
        }
    }
    Ok(cases)
}

fn model_equivariance(cfg: &Config, r: &mut SampleRng) -> Outcome {
    let lattice = building_set(cfg.n);
    for w in model_points(cfg, r) {
        let g = random_permutation(cfg.n, r);
        let moved = w.act(&g);
        let expected: Vec<SetPartition> = w.nested_stratum().iter().map(|p| g.act_partition(p)).collect();
        ensure(moved.nested_stratum() == expected, || format!("nested stratum of {g}·{} is wrong", json(&w)))?;
        for h in &lattice {
            ensure(moved.in_divisor(&g.act_partition(h)) == w.in_divisor(h), || {
                format!("divisor {h} of {} not moved by {g}", json(&w))
            })?;
        }
    }
    Ok(cfg.samples)
}

fn divisor_coherence(cfg: &Config, r: &mut SampleRng) -> Outcome {
    let lattice = building_set(cfg.n);
    for w in model_points(cfg, r) {
        let by_coordinates: BTreeSet<SetPartition> = w.divisors_by_coordinates()?.into_iter().collect();
        for h in &lattice {
            ensure(by_coordinates.contains(h) == w.in_divisor(h), || {
                format!("criteria disagree on {h} for {}", json(&w))
            })?;
        }
    }
    Ok(cfg.samples)
}

fn chain_absorption(cfg: &Config, r: &mut SampleRng) -> Outcome {
    bound(cfg.n, BRUTE_BOUND, "brute-force stabilizers")?;
    let stab_h = |h: &SetPartition| -> BTreeSet<Permutation> {
        all_permutations(h.n()).filter(|g| g.act_partition(h) == *h).collect()
    };
    for w in model_points(cfg, r) {
        let mut current = brute_stab_point(w.x())?.elements().clone();
        for step in w.chain() {
            let sh = stab_h(&step.partition);
            ensure(current.is_subset(&sh), || {
                format!("stabilizer not absorbed at {} in {}", step.partition, json(&w))
            })?;
            current = sh.intersection(brute_stab_line(&step.line)?.elements()).cloned().collect();
        }
    }
    Ok(cfg.samples)
}

fn diagram_pairs(cfg: &Config, r: &mut SampleRng) -> Vec<(Diagram, Diagram)> {
    (0..cfg.samples).map(|_| (random_diagram(cfg.n, r), random_diagram(cfg.n, r))).collect()
}

fn intersection_aut(cfg: &Config, r: &mut SampleRng) -> Outcome {
    bound(cfg.n, AUT_ENUM_BOUND, "automorphism enumeration")?;
    for (d1, d2) in diagram_pairs(cfg, r) {
        let both: BTreeSet<Permutation> = d1.aut_elements()?.intersection(&d2.aut_elements()?).cloned().collect();
        let meet = intersect_diagrams(&d1, &d2)?.aut_elements()?;
        ensure(both == meet, || {
            format!("Aut(D1) ∩ Aut(D2) = {} but Aut(D1 ∩ D2) = {} for {d1} and {d2}", show(&both), show(&meet))
        })?;
    }
    Ok(cfg.samples)
}

fn rho_meet(cfg: &Config, r: &mut SampleRng) -> Outcome {
    for (d1, d2) in diagram_pairs(cfg, r) {
        let rho = intersect_diagrams(&d1, &d2)?.fiber_partition();
        ensure(rho == d1.fiber_partition().meet(&d2.fiber_partition())?, || format!("rho fails for {d1} and {d2}"))?;
    }
    Ok(cfg.samples)
}

/// Random diagrams plus the stabilizer diagrams of random model points.
fn diagrams(cfg: &Config, r: &mut SampleRng) -> std::result::Result<Vec<Diagram>, Stop> {
    let mut out = Vec::with_capacity(2 * cfg.samples);
    for _ in 0..cfg.samples {
        out.push(random_diagram(cfg.n, r));
        out.push(stabilizer_diagram(&random_model_point(cfg.n, r))?);
    }
    Ok(out)
}

fn reduction_preserves_aut(cfg: &Config, r: &mut SampleRng) -> Outcome {
    bound(cfg.n, AUT_ENUM_BOUND, "automorphism enumeration")?;
    let ds = diagrams(cfg, r)?;
    for d in &ds {
        let red = d.reduce()?;
        ensure(red.is_reduced(), || format!("reduce({d}) = {red} has unequal fibers"))?;
        ensure(red.t() <= d.t(), || format!("reduce({d}) gained directions"))?;
        ensure(red.aut_brute()? == d.aut_brute()?, || format!("reduce({d}) = {red} changed Aut"))?;
        let again = red.reduce()?;
        ensure(again == red, || format!("reduce is not idempotent on {red}: {again}"))?;
    }
    Ok(ds.len())
}

fn fiber_bijection(cfg: &Config, r: &mut SampleRng) -> Outcome {
    bound(cfg.n, AUT_ENUM_BOUND, "automorphism enumeration")?;
    let ds = diagrams(cfg, r)?;
    let mut cases = 0;
    for d in &ds {
        for pi in d.aut_brute()? {
            let sigma = d.realized_flip(&pi).ok_or_else(|| Stop::Fail(format!("{pi} has no flip on {d}")))?;
            for (c, cube) in d.cubes().iter().enumerate() {
                for v in cube.vertices() {
                    let src = d.fiber(c, v);
                    let image: BTreeSet<usize> = src.iter().map(|&k| pi.image(k)).collect();
                    let target: BTreeSet<usize> = d.fiber(c, v ^ (sigma & cube.index_set())).into_iter().collect();
                    ensure(image == target, || format!("{pi} does not map fiber ({c}, {v:b}) onto its flip in {d}"))?;
                }
            }
            cases += 1;
        }
    }
    Ok(cases)
}

fn aut_structured_agreement(cfg: &Config, r: &mut SampleRng) -> Outcome {
    bound(cfg.n, AUT_ENUM_BOUND, "automorphism enumeration")?;
    let mut cases = 0;
    for d in diagrams(cfg, r)? {
        let Ok(red) = d.reduce() else { continue };
        let Ok(group) = red.aut_structured() else { continue };
        ensure(group.validate().is_ok(), || {
            format!("generators of Aut({red}) are not independent commuting involutions")
        })?;
        let brute = red.aut_brute()?;
        ensure(group.elements() == brute, || format!("structured Aut({red}) = {group}, brute = {}", show(&brute)))?;
        cases += 1;
    }
    Ok(cases)
}

fn symmetry_group_soundness(cfg: &Config, r: &mut SampleRng) -> Outcome {
    bound(cfg.n, AUT_ENUM_BOUND, "automorphism enumeration")?;
    let ds = diagrams(cfg, r)?;
    for d in &ds {
        let d = d.canonicalize();
        let support = d.support();
        let predicted: BTreeSet<u64> = d.symmetry_group().elements().map(|s| s & support).collect();
        let realised: BTreeSet<u64> = d.aut_brute()?.iter().filter_map(|p| d.realized_flip(p)).collect();
        ensure(predicted == realised, || {
            format!("G of {d} predicts {predicted:?}, automorphisms realise {realised:?}")
        })?;
    }
    Ok(ds.len())
}

fn oracle_equivalence(cfg: &Config, r: &mut SampleRng) -> Outcome {
    bound(cfg.n, BRUTE_BOUND, "the brute-force oracle")?;
    for w in model_points(cfg, r) {
        let fast = stabilizer(&w)?.elements();
        let brute = brute_stabilizer(&w)?;
        ensure(&fast == brute.elements(), || {
            format!("pipeline {} vs oracle {} for {}", show(&fast), show(brute.elements()), json(&w))
        })?;
    }
    Ok(cfg.samples)
}

fn group_structure(cfg: &Config, r: &mut SampleRng) -> Outcome {
    for w in model_points(cfg, r) {
        let g = stabilizer(&w)?;
        ensure(g.validate().is_ok() && g.rank() <= cfg.n / 2, || format!("{g} is not a valid Z2^h for {}", json(&w)))?;
    }
    Ok(cfg.samples)
}

fn point_line_agreement(cfg: &Config, r: &mut SampleRng) -> Outcome {
    bound(cfg.n, AUT_ENUM_BOUND.min(BRUTE_BOUND), "automorphism enumeration")?;
    for _ in 0..cfg.samples {
        let x = random_point(cfg.n, r);
        let aut = diagram_from_point(&x).aut_elements()?;
        ensure(&aut == brute_stab_point(&x)?.elements(), || format!("point stabilizer mismatch for {x}"))?;
        if cfg.n >= 2 {
            let l = random_line(cfg.n, r);
            let aut = diagram_from_line(&l).aut_elements()?;
            ensure(&aut == brute_stab_line(&l)?.elements(), || format!("line stabilizer mismatch for {l}"))?;
        }
    }
    Ok(cfg.samples)
}

fn stabilizer_equivariance(cfg: &Config, r: &mut SampleRng) -> Outcome {
    bound(cfg.n, BRUTE_BOUND, "the brute-force oracle")?;
    for w in model_points(cfg, r) {
        let g = random_permutation(cfg.n, r);
        let moved = brute_stabilizer(&w.act(&g))?;
        let conj = brute_stabilizer(&w)?.conjugate_by(&g);
        ensure(moved == conj, || format!("stab({g}·{}) is not conjugate", json(&w)))?;
    }
    Ok(cfg.samples)
}

fn line_criterion(cfg: &Config, r: &mut SampleRng) -> Outcome {
    bound(cfg.n, BRUTE_BOUND, "the brute-force oracle")?;
    if cfg.n < 2 {
        return Err(Stop::Skip("V has no lines".into()));
    }
    let perms = permutations(cfg.n, cfg.samples, r);
    let mut lines = Vec::new();
    for _ in 0..cfg.samples {
        lines.push(random_line(cfg.n, r));
        // Lines inside an eigenspace, so both sides of the criterion occur.
        let (t1, tm1) = eigenspaces(perms.choose(r).expect("Sn is nonempty"));
        let t = if r.gen_bool(0.5) { t1 } else { tm1 };
        if let Ok(l) = crate::linalg::QLine::new(&random_vector_in(&t, r)) {
            lines.push(l);
        }
    }
    for l in &lines {
        let stab = brute_stab_line(l)?;
        for pi in &perms {
            let (t1, tm1) = eigenspaces(pi);
            let inside = t1.contains_line(l)? || tm1.contains_line(l)?;
            ensure(stab.contains(pi) == inside, || {
                format!("{pi} and {l}: stabilizes = {}, eigenline = {inside}", stab.contains(pi))
            })?;
        }
    }
    Ok(lines.len() * perms.len())
}

fn eigenspace_properties(cfg: &Config, r: &mut SampleRng) -> Outcome {
    let perms = permutations(cfg.n, cfg.samples, r);
    for pi in &perms {
        let (t1, tm1) = eigenspaces(pi);
        ensure(pi.act_subspace(&t1) == t1 && pi.act_subspace(&tm1) == tm1, || {
            format!("eigenspaces of {pi} not invariant")
        })?;
        let orthogonal = t1.basis().iter().all(|a| tm1.basis().iter().all(|b| num_traits::Zero::is_zero(&a.dot(b))));
        ensure(orthogonal, || format!("eigenspaces of {pi} not orthogonal"))?;
    }
    Ok(perms.len())
}

fn signature_determines(cfg: &Config, r: &mut SampleRng) -> Outcome {
    bound(cfg.n, VERIFY_STRATA_BOUND, "the refined stratification")?;
    let points = model_points(cfg, r);
    let report = check_distinguishing(cfg.n, &points, Mode::BSignature)?;
    ensure(report.pass, || match &report.witness {
        Some((a, b)) => format!("{} and {} share a signature but not a stabilizer", json(a), json(b)),
        None => "a class has two stabilizers".into(),
    })?;
    Ok(points.len())
}

fn signature_equivariance(cfg: &Config, r: &mut SampleRng) -> Outcome {
    bound(cfg.n, VERIFY_STRATA_BOUND, "the refined stratification")?;
    let strat = Stratification::cached(cfg.n)?;
    for w in model_points(cfg, r) {
        let g = random_permutation(cfg.n, r);
        let moved = strat.signature(&w.act(&g))?;
        let sig = strat.signature(&w)?;
        ensure(moved.key() == sig.translated_key(&g), || {
            format!("signature of {g}·{} is not the translate of {sig}", json(&w))
        })?;
    }
    Ok(cfg.samples)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_are_unique() {
        let names: BTreeSet<&str> = suites().iter().map(|s| s.name).collect();
        assert_eq!(names.len(), suites().len());
    }

    #[test]
    fn small_run_passes() {
        let report = run(&Config { n: 3, samples: 10, seed: 1 });
        for s in &report.suites {
            assert_eq!(s.status, Status::Pass, "{} {:?}", s.suite, s.detail);
        }
    }
}
