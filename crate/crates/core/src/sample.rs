//! Seeded generators of points, lines, model points and diagrams.
//!
//! Values are drawn from small integer ranges so that coincidences (equal
//! coordinates, opposite coordinates) happen often enough to produce
//! nontrivial stabilizers.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

use crate::diagram::{diagram_from_line, diagram_from_point, Cube, CubeFamily, Diagram};
use crate::linalg::{QLine, QSubspace, QVector, Q};
use crate::model::{build_chain, ModelPoint};
use crate::partition::SetPartition;
use crate::perm::Permutation;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A vector in `V`: zero, a random centred vector, or a vector built from
/// opposite pairs `±a` and zeros.
pub fn random_point(n: usize, rng: &mut impl Rng) -> QVector {
    match rng.gen_range(0..6) {
        0 => QVector::zeros(n),
        1 | 2 => symmetric_vector(n, rng),
        _ => centred_vector(n, rng),
    }
}

/// `x_k = n·v_k − Σ v` for `v` uniform in `[-3, 3]ⁿ`.
fn centred_vector(n: usize, rng: &mut impl Rng) -> QVector {
    let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
    let s: i64 = v.iter().sum();
    QVector::from_ints(&v.iter().map(|&a| n as i64 * a - s).collect::<Vec<_>>())
}

fn symmetric_vector(n: usize, rng: &mut impl Rng) -> QVector {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut x = vec![0i64; n];
    for pair in order.chunks(2) {
        if let [i, j] = *pair {
            let a = rng.gen_range(0..=2);
            x[i] = a;
            x[j] = -a;
        }
    }
    QVector::from_ints(&x)
}

/// A nonzero vector in `V`; requires `n ≥ 2`.
pub fn random_line(n: usize, rng: &mut impl Rng) -> QLine {
    assert!(n >= 2, "V has no lines for n < 2");
    loop {
        let v = if rng.gen_bool(0.5) { symmetric_vector(n, rng) } else { centred_vector(n, rng) };
        if let Ok(l) = QLine::new(&v) {
            return l;
        }
    }
}

/// A valid model point: a random `x`, then random lines projected off the
/// current lattice element until the chain terminates. The forced last line
/// is sometimes left to auto-completion.
pub fn random_model_point(n: usize, rng: &mut impl Rng) -> ModelPoint {
    let x = random_point(n, rng);
    let mut lines: Vec<QVector> = Vec::new();
    let mut current = crate::partition::partition_of_point(&x);
    while !current.is_bottom() {
        if current.num_blocks() + 1 == n && rng.gen_bool(0.5) {
            break;
        }
        let raw = random_line(n, rng);
        let mut l = current.project_off(raw.rep());
        if l.is_zero() {
            l = split_block(&current, rng);
        }
        current = current.meet(&crate::partition::partition_of_point(&l)).expect("same n");
        lines.push(l);
    }
    build_chain(&x, &lines).expect("sampled lines give a valid chain")
}

/// `e_i − e_j` for two elements of a random block with at least two elements.
fn split_block(p: &SetPartition, rng: &mut impl Rng) -> QVector {
    let blocks: Vec<Vec<usize>> = p.blocks().into_iter().filter(|b| b.len() > 1).collect();
    let block = blocks.choose(rng).expect("a non-bottom partition has a block of size two or more");
    let picked: Vec<&usize> = block.choose_multiple(rng, 2).collect();
    let mut e = vec![0i64; p.n()];
    e[*picked[0]] = 1;
    e[*picked[1]] = -1;
    QVector::from_ints(&e)
}

/// A uniformly random permutation of `{1..n}`.
pub fn random_permutation(n: usize, rng: &mut impl Rng) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Permutation::from_images(images).expect("a shuffle is a bijection")
}

/// A random set partition, with a bias towards few blocks.
pub fn random_partition(n: usize, rng: &mut impl Rng) -> SetPartition {
    let k = rng.gen_range(1..=n.max(1));
    let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
    SetPartition::from_labels(&labels)
}

/// The span of up to `n - 1` random vectors of `V`.
pub fn random_subspace(n: usize, rng: &mut impl Rng) -> QSubspace {
    let k = rng.gen_range(0..n.max(1));
    let vectors: Vec<QVector> = (0..k).map(|_| random_point(n, rng)).collect();
    QSubspace::span(n, &vectors).expect("dimensions agree")
}

/// A small integer combination of the basis of `s`; may be zero.
pub fn random_vector_in(s: &QSubspace, rng: &mut impl Rng) -> QVector {
    s.basis().iter().fold(QVector::zeros(s.ambient_dim()), |acc, b| {
        acc.add(&b.scaled(&Q::from_integer(rng.gen_range(-2..=2).into())))
    })
}

/// A random diagram: either the diagram of a random point or line, or an
/// arbitrary assignment over up to three directions and three cubes.
pub fn random_diagram(n: usize, rng: &mut impl Rng) -> Diagram {
    match rng.gen_range(0..4) {
        0 => diagram_from_point(&random_point(n, rng)),
        1 if n >= 2 => diagram_from_line(&random_line(n, rng)),
        1 => diagram_from_point(&QVector::zeros(n)),
        _ => {
            let t = rng.gen_range(0..=3usize);
            let p = rng.gen_range(1..=3usize);
            let cubes: Vec<Cube> = (0..p).map(|_| Cube::new(rng.gen_range(0..1u64 << t))).collect();
            let assign = (0..n)
                .map(|_| {
                    let c = rng.gen_range(0..p);
                    let i = cubes[c].index_set();
                    (c, rng.gen_range(0..=i) & i)
                })
                .collect();
            Diagram::new(n, CubeFamily { t, cubes }, assign).expect("vertices lie in their cubes")
        }
    }
}

/// Hand-picked points of `Y_{Π₃}`, at least one in every open stratum of the
/// refined stratification.
pub fn curated_n3() -> Vec<ModelPoint> {
    let v = |xs: [i64; 3]| QVector::from_ints(&xs);
    let mut out = Vec::new();
    let mut push = |x: QVector, lines: &[QVector]| out.push(build_chain(&x, lines).expect("curated point"));
    push(v([1, 2, -3]), &[]);
    push(v([-5, 1, 4]), &[]);
    push(v([2, -7, 5]), &[]);
    for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
        let e = |a: i64, b: i64, c: i64| {
            let mut x = [0; 3];
            x[i] = a;
            x[j] = b;
            x[k] = c;
            v(x)
        };
        // x on H_ij^-, x on H_ij with either sign.
        push(e(1, -1, 0), &[]);
        push(e(3, -3, 0), &[]);
        push(e(1, 1, -2), &[]);
        push(e(-1, -1, 2), &[]);
        // x = 0: ψ_ij, the line inside H_ij, and lines near them.
        push(v([0, 0, 0]), &[e(1, -1, 0)]);
        push(v([0, 0, 0]), &[e(1, 1, -2)]);
        push(v([0, 0, 0]), &[e(1, 1, -2), e(-1, 1, 0)]);
        push(v([0, 0, 0]), &[e(2, -1, -1)]);
    }
    push(v([0, 0, 0]), &[v([1, 2, -3])]);
    push(v([0, 0, 0]), &[v([4, -1, -3])]);
    out
}
