use std::collections::BTreeSet;

use proptest::prelude::*;
use wonderstab::linalg::QLine;
use wonderstab::model::{build_chain, ModelPoint};
use wonderstab::partition::SetPartition;
use wonderstab::perm::{all_permutations, Permutation};
use wonderstab::sample::{random_line, random_model_point, random_permutation, rng};
use wonderstab::stabilizer::brute_stab_line;
use wonderstab::strata::{check_distinguishing, eigenspaces, in_b_stratum, BStratumId, Mode, Stratification};

fn point(x: &[i64], lines: &[&[i64]]) -> ModelPoint {
    let lines: Vec<_> = lines.iter().map(|l| wonderstab::linalg::QVector::from_ints(l)).collect();
    build_chain(&wonderstab::linalg::QVector::from_ints(x), &lines).unwrap()
}

#[test]
fn three_points_have_the_transposition_strata() {
    let s = Stratification::new(3).unwrap();
    assert_eq!(s.len(), 3);
    let pis: BTreeSet<String> = s.strata().map(|id| id.pi.to_string()).collect();
    assert_eq!(pis, ["(1 2)", "(1 3)", "(2 3)"].map(String::from).into());
    assert!(s.strata().all(|id| id.g.is_top()));
}

#[test]
fn side_condition_and_uninformative_ids() {
    let top = SetPartition::top(3);
    let id = BStratumId::new(&Permutation::identity(3), &top).unwrap().unwrap();
    // T₋₁ of the identity is {0}, so its piece is G = {0}; T₁ is all of V.
    assert!(id.is_uninformative());
    let g = SetPartition::bottom(3);
    assert!(BStratumId::new(&Permutation::parse_cycles(3, "(1 2)").unwrap(), &g).unwrap().is_none());
}

#[test]
fn psi_and_generic_points_are_separated() {
    let psi = point(&[0, 0, 0], &[&[1, -1, 0]]);
    let generic = point(&[0, 0, 0], &[&[1, 2, -3]]);
    assert_eq!(psi.nested_stratum(), generic.nested_stratum());
    let s = Stratification::cached(3).unwrap();
    assert_ne!(s.signature(&psi).unwrap().key(), s.signature(&generic).unwrap().key());
    let report = check_distinguishing(3, &[psi, generic], Mode::NestedOnly).unwrap();
    assert!(!report.pass);
    assert!(report.witness.is_some());
}

#[test]
fn report_json_shape() {
    let report = check_distinguishing(3, &[point(&[1, 2, -3], &[])], Mode::BSignature).unwrap();
    let json: serde_json::Value = serde_json::to_value(&report).unwrap();
    assert_eq!(json["mode"], "b-signature");
    assert_eq!(json["classes"][0]["stab_order"], 1);
    assert!(json["witness"].is_null());
}

#[test]
fn eigenspaces_are_invariant_and_orthogonal() {
    for pi in all_permutations(5) {
        let (t1, tm1) = eigenspaces(&pi);
        assert_eq!(pi.act_subspace(&t1), t1);
        assert_eq!(pi.act_subspace(&tm1), tm1);
        assert!(t1.intersect(&tm1).unwrap().is_zero());
        assert_eq!(t1.orth_complement_in_v().unwrap().contains_subspace(&tm1), Ok(true));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cached_signature_matches_direct_evaluation(n in 2usize..5, seed: u64) {
        let w = random_model_point(n, &mut rng(seed));
        let s = Stratification::cached(n).unwrap();
        let fast: BTreeSet<BStratumId> = s.signature(&w).unwrap().bstrata.into_iter().collect();
        let direct: BTreeSet<BStratumId> = s.strata().filter(|id| in_b_stratum(&w, id).unwrap()).cloned().collect();
        prop_assert_eq!(fast, direct);
    }

    #[test]
    fn line_stabilizers_are_eigenlines(n in 2usize..6, seed: u64) {
        let mut r = rng(seed);
        let l: QLine = random_line(n, &mut r);
        let stab = brute_stab_line(&l).unwrap();
        for pi in all_permutations(n) {
            let (t1, tm1) = eigenspaces(&pi);
            let inside = t1.contains_line(&l).unwrap() || tm1.contains_line(&l).unwrap();
            prop_assert_eq!(stab.contains(&pi), inside);
        }
    }

    #[test]
    fn signatures_translate(n in 2usize..6, seed: u64) {
        let mut r = rng(seed);
        let w = random_model_point(n, &mut r);
        let g = random_permutation(n, &mut r);
        let s = Stratification::cached(n).unwrap();
        prop_assert_eq!(s.signature(&w.act(&g)).unwrap().key(), s.signature(&w).unwrap().translated_key(&g));
    }

    #[test]
    fn signatures_distinguish_stabilizers(n in 3usize..6, seed: u64) {
        let mut r = rng(seed);
        let points: Vec<ModelPoint> = (0..40).map(|_| random_model_point(n, &mut r)).collect();
        prop_assert!(check_distinguishing(n, &points, Mode::BSignature).unwrap().pass);
    }
}
