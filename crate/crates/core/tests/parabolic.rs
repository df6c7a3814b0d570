use fovec::cecomplex::ExplicitModule;
use fovec::combinat::{dot_action, partitions_bounded, shuffles, Partition, Weight};
use fovec::liealg::MatrixAlgebra;
use fovec::parabolic::*;

fn part(v: &[usize]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

fn trivial(n: usize) -> ExplicitModule {
    ExplicitModule::trivial(n, MatrixAlgebra::Gl(n).fields())
}

fn adjoint(n: usize) -> ExplicitModule {
    ExplicitModule::adjoint(n, MatrixAlgebra::Gl(n).fields()).unwrap()
}

#[test]
fn schur_module_examples() {
    assert_eq!(schur_module(&part(&[1]), 2).unwrap().dim(), 2);
    assert_eq!(schur_module(&part(&[2]), 2).unwrap().dim(), 3);
    assert_eq!(schur_module(&part(&[1, 1]), 2).unwrap().dim(), 1);
    assert_eq!(schur_module(&Partition::empty(), 3).unwrap().dim(), 1);
}

#[test]
fn vanishing_examples() {
    let s = ParabolicSetup::new(1, 1).unwrap();
    let r = verify_b_vanishing(&s, &Partition::empty(), &trivial(2)).unwrap();
    assert_eq!(r.cohomology, [(0, 1)].into_iter().collect());
    let r = verify_b_vanishing(&s, &part(&[1]), &ExplicitModule::tautological(2)).unwrap();
    assert_eq!(r.cohomology, [(0, 1)].into_iter().collect());
    let r = verify_b_vanishing(&s, &part(&[1]), &trivial(2)).unwrap();
    assert!(r.cohomology.is_empty());
    assert_eq!(r.expected_h0, 0);
}

#[test]
fn vanishing_grid() {
    for (m, n) in [(1, 1), (1, 2), (2, 1)] {
        let s = ParabolicSetup::new(m, n).unwrap();
        let nv = m + n;
        let t = ExplicitModule::tautological(nv);
        let modules = [trivial(nv), t.clone(), adjoint(nv), t.schur(&part(&[2])).unwrap()];
        for lam in [Partition::empty(), part(&[1]), part(&[2]), part(&[1, 1])] {
            if lam.len() > n {
                continue;
            }
            for l in &modules {
                let r = verify_b_vanishing(&s, &lam, l).unwrap_or_else(|e| panic!("{e}"));
                assert!(r.cohomology.keys().all(|&p| p == 0));
            }
        }
    }
}

#[test]
fn vanishing_rejects_long_partitions() {
    let s = ParabolicSetup::new(2, 1).unwrap();
    assert!(matches!(
        verify_b_vanishing(&s, &part(&[1, 1]), &trivial(3)),
        Err(ParabolicError::InvalidInput(_))
    ));
}

#[test]
fn predicted_ext_examples() {
    assert_eq!(predicted_ext(&Weight(vec![0, 0]), &Weight(vec![0, 0]), 1, 1), Some((0, 1)));
    assert_eq!(predicted_ext(&Weight(vec![0, 0, 0]), &Weight(vec![0, 0, 0]), 1, 2), Some((0, 1)));
    assert_eq!(predicted_ext(&Weight(vec![0, 0]), &Weight(vec![-1, 1]), 1, 1), Some((1, 1)));
    assert_eq!(predicted_ext(&Weight(vec![0, 0]), &Weight(vec![5, 5]), 1, 1), None);
}

fn small_weights(n: usize, lo: i64, hi: i64) -> Vec<Weight> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w: Vec<i64>| {
                (lo..=hi).map(move |x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Weight).collect()
}

// The finite computation of Ext against L_I(μ) agrees with the shuffle prediction.
#[test]
fn predicted_ext_matches_relative_cohomology() {
    for (m, n, lo, hi) in [(1, 1, -2, 2), (1, 2, -1, 1), (2, 1, -1, 1)] {
        let s = ParabolicSetup::new(m, n).unwrap();
        let all = small_weights(m + n, lo, hi);
        for lambda in all.iter().filter(|w| w.is_dominant()) {
            for mu in all.iter().filter(|w| w.is_dominant_for_blocks(m)) {
                let direct = relative_ext(&s, lambda, mu).unwrap();
                let expected: std::collections::BTreeMap<usize, usize> =
                    predicted_ext(lambda, mu, m, n).into_iter().collect();
                assert_eq!(direct, expected, "(m,n)=({m},{n}) λ={lambda} μ={mu}");
            }
        }
    }
}

#[test]
fn shuffle_images_are_levi_dominant() {
    for (m, n) in [(1, 1), (1, 2), (2, 2)] {
        for lam in partitions_bounded(3, 3) {
            let mut v: Vec<i64> = lam.parts().iter().map(|&x| x as i64).collect();
            if v.len() > m + n {
                continue;
            }
            v.resize(m + n, 0);
            let w = Weight(v);
            for (s, _) in shuffles(m, n) {
                assert!(dot_action(&s, &w).unwrap().is_dominant_for_blocks(m));
            }
        }
    }
}

#[test]
fn degeneration_examples() {
    let r = verify_grassmannian_degeneration(1, 1, &trivial(2)).unwrap();
    assert_eq!(r.diagonal(), vec![1, 1]);
    let r = verify_grassmannian_degeneration(1, 2, &trivial(3)).unwrap();
    assert_eq!(r.diagonal(), vec![1, 1, 1]);
    let r = verify_grassmannian_degeneration(1, 1, &adjoint(2)).unwrap();
    assert_eq!(r.diagonal(), vec![1, 1]);
    let end = adjoint(2).dual().tensor(&adjoint(2)).unwrap();
    let r = verify_grassmannian_degeneration(1, 1, &end).unwrap();
    assert_eq!(r.diagonal(), vec![2, 2]);
    let r = verify_grassmannian_degeneration(1, 2, &adjoint(3)).unwrap();
    assert_eq!(r.diagonal(), vec![1, 1, 1]);
    assert_eq!(r.e1.euler_characteristic(), r.euler_characteristic);
}

#[test]
fn degeneration_with_no_invariants() {
    let r = verify_grassmannian_degeneration(1, 1, &ExplicitModule::tautological(2)).unwrap();
    assert!(r.e1.entries.is_empty());
}
