use fovec::cecomplex::build_absolute_complex;
use fovec::cocycles::*;
use fovec::combinat::{partitions_bounded, Partition};
use fovec::exactlin::Rational;
use fovec::liealg::{AlgebraFamily, ModuleSpec};

#[test]
fn a_cocycles_closed_and_nontrivial() {
    for m in 1..=6 {
        let (a2, a3) = a_cocycles(m);
        assert!(w1_differential(&a2).is_zero());
        assert!(w1_differential(&a3).is_zero());
        assert!(!is_exact(&a2), "a_2{m} exact");
        assert!(!is_exact(&a3), "a_3{m} exact");
    }
}

#[test]
fn polynomial_model_intertwines_ce() {
    let w1 = AlgebraFamily::w(1).unwrap();
    for m in 0..=2 {
        let spec = if m == 0 { ModuleSpec::Trivial } else { ModuleSpec::sym(m).unwrap() };
        let block = build_absolute_complex(&w1, spec, 3).unwrap();
        let mut sign = None;
        for p in 0..=2 {
            for c in chain_space_basis(p, m) {
                let v = to_cochain(&c, &block).unwrap();
                let lhs = to_cochain(&w1_differential(&c), &block).unwrap();
                let rhs = block.differential(p).mul_vec(&v);
                if lhs.is_empty() && rhs.is_empty() {
                    continue;
                }
                let s = if lhs == rhs { 1 } else { -1 };
                let neg: Vec<_> = rhs.iter().map(|(i, x)| (*i, -x.clone())).collect();
                assert!(lhs == rhs || lhs == neg, "p={p} m={m} c={c}");
                assert_eq!(*sign.get_or_insert(s), s, "sign changes at p={p} m={m}");
            }
        }
        eprintln!("m={m}: polynomial differential = {:?} · CE differential", sign);
    }
}

#[test]
fn wheels() {
    let one = wheel_cocycle(1, 1).unwrap();
    assert!(!one.is_zero());
    assert!(wheel_cocycle(2, 1).unwrap().is_zero());
    let block = wheel_block(2, 5).unwrap();
    let c1 = wheel_product(&[1], &wheel_block(2, 3).unwrap()).unwrap();
    assert!(!c1.is_zero());
    let c2 = wheel_product(&[2], &block).unwrap();
    let c11 = wheel_product(&[1, 1], &block).unwrap();
    for c in [&c2, &c11] {
        assert!(!c.is_zero());
        assert!(block.is_cocycle(4, &c.vector));
    }
    assert_eq!(block.rank_modulo_coboundaries(4, &[c2.vector.clone(), c11.vector.clone()]), 2);
    assert!(wheel_product(&[1, 1], &wheel_block(1, 5).unwrap()).unwrap().is_zero());
}

#[test]
fn xi_n1_matches_a2m() {
    for m in 1..=3 {
        let block = xi_block(1, m).unwrap();
        let xi = xi_lambda(&Partition::new(vec![m + 1]).unwrap(), 1, m, &block).unwrap();
        assert!(xi.warning.is_none());
        assert!(block.is_cocycle(2, &xi.vector));
        let (a2, _) = a_cocycles(m);
        let slice = block.slice().unwrap();
        let deg = |g: u32| slice.field(g as usize).exponent()[0];
        let a = block
            .cochain_from_values(2, |k| {
                let ext: Vec<u32> = k.exterior.iter().map(|&g| deg(g)).collect();
                let sym: Vec<u32> = match &k.module {
                    fovec::cecomplex::ModuleSlots::Sym(s) => s.iter().map(|&g| deg(g)).collect(),
                    _ => vec![],
                };
                a2.value(&ext, &sym)
            })
            .unwrap();
        assert!(proportional(&xi.vector, &a), "m = {m}");
    }
}

#[test]
fn xi_n2_m1_spans_h4() {
    let block = xi_block(2, 1).unwrap();
    let h = block.cohomology().unwrap();
    assert_eq!(h[4], 2);
    let mut vs = Vec::new();
    for lambda in partitions_bounded(3, 3) {
        let xi = xi_lambda(&lambda, 2, 1, &block).unwrap();
        assert!(block.is_cocycle(4, &xi.vector), "{lambda}");
        if lambda.len() <= 2 {
            assert!(xi.warning.is_none());
            vs.push(xi.vector);
        } else {
            assert!(xi.warning.is_some());
        }
    }
    assert_eq!(vs.len(), 2);
    assert_eq!(block.rank_modulo_coboundaries(4, &vs), 2);
}

#[test]
fn xi_rejects_wrong_size() {
    let block = xi_block(1, 1).unwrap();
    assert!(xi_lambda(&Partition::new(vec![3]).unwrap(), 1, 1, &block).is_err());
    let _ = Rational::one();
}

#[test]
fn alternative_module_sign_breaks_d_squared() {
    let c = chain_space_basis(1, 1).into_iter().find(|c| !w1_differential_alt_sign(&w1_differential_alt_sign(c)).is_zero());
    assert!(c.is_some());
    for c in chain_space_basis(1, 1) {
        assert!(w1_differential(&w1_differential(&c)).is_zero());
    }
}
