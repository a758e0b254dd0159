use proptest::prelude::*;
use rand::seq::SliceRandom;
use wonderstab::diagram::{diagram_from_line, diagram_from_point, intersect_diagrams};
use wonderstab::linalg::QVector;
use wonderstab::model::build_chain;
use wonderstab::perm::Permutation;
use wonderstab::sample::{random_model_point, random_permutation, rng};
use wonderstab::stabilizer::{brute_stabilizer, stabilizer, stabilizer_diagram};

#[test]
fn small_ground_sets() {
    // n = 1: only the origin; n = 2: the single line is flipped by (1 2).
    let w1 = build_chain(&QVector::zeros(1), &[]).unwrap();
    assert_eq!(stabilizer(&w1).unwrap().rank(), 0);
    let w2 = build_chain(&QVector::zeros(2), &[]).unwrap();
    assert_eq!(w2.t(), 1);
    let g = stabilizer(&w2).unwrap();
    assert_eq!(g.generators(), &[Permutation::parse_cycles(2, "(1 2)").unwrap()]);
    assert_eq!(g.elements(), *brute_stabilizer(&w2).unwrap().elements());
}

#[test]
fn generators_are_sorted() {
    let w = build_chain(
        &QVector::zeros(6),
        &[
            QVector::from_ints(&[1, 1, 1, -1, -1, -1]),
            QVector::from_ints(&[2, -1, -1, 0, 0, 0]),
            QVector::from_ints(&[0, 0, 0, 2, -1, -1]),
            QVector::from_ints(&[0, 1, -1, 0, 0, 0]),
        ],
    )
    .unwrap();
    let g = stabilizer(&w).unwrap();
    let mut sorted = g.generators().to_vec();
    sorted.sort();
    assert_eq!(g.generators(), sorted.as_slice());
    assert_eq!(g.elements(), *brute_stabilizer(&w).unwrap().elements());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn pipeline_matches_oracle(n in 1usize..8, seed: u64) {
        let w = random_model_point(n, &mut rng(seed));
        let g = stabilizer(&w).unwrap();
        prop_assert!(g.validate().is_ok());
        prop_assert!(g.rank() <= n / 2);
        prop_assert_eq!(g.elements(), brute_stabilizer(&w).unwrap().elements().clone());
    }

    #[test]
    fn intersection_order_does_not_matter(n in 2usize..7, seed: u64) {
        let mut r = rng(seed);
        let w = random_model_point(n, &mut r);
        let mut lines = w.lines();
        lines.shuffle(&mut r);
        let shuffled = lines
            .iter()
            .try_fold(diagram_from_point(w.x()), |d, l| intersect_diagrams(&diagram_from_line(l), &d))
            .unwrap();
        prop_assert_eq!(shuffled.aut_elements().unwrap(), stabilizer_diagram(&w).unwrap().aut_elements().unwrap());
    }

    #[test]
    fn stabilizers_conjugate(n in 1usize..7, seed: u64) {
        let mut r = rng(seed);
        let w = random_model_point(n, &mut r);
        let g = random_permutation(n, &mut r);
        prop_assert_eq!(brute_stabilizer(&w.act(&g)).unwrap(), brute_stabilizer(&w).unwrap().conjugate_by(&g));
        prop_assert!(brute_stabilizer(&w).unwrap().is_closed());
    }
}
