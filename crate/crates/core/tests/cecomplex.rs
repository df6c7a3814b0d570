use std::collections::BTreeMap;

use fovec::cecomplex::*;
use fovec::liealg::{AlgebraFamily, MatrixAlgebra, ModuleSpec};

fn map(v: &[(usize, usize)]) -> BTreeMap<usize, usize> {
    v.iter().copied().collect()
}

fn w(n: usize) -> AlgebraFamily {
    AlgebraFamily::w(n).unwrap()
}

#[test]
fn w1_trivial() {
    let b = build_absolute_complex(&w(1), ModuleSpec::Trivial, 4).unwrap();
    b.check_d_squared().unwrap();
    assert_eq!(b.cohomology_map().unwrap(), map(&[(0, 1), (3, 1)]));
}

#[test]
fn w1_sym1() {
    let b = build_absolute_complex(&w(1), ModuleSpec::sym(1).unwrap(), 4).unwrap();
    assert_eq!(b.cohomology_map().unwrap(), map(&[(2, 1), (3, 1)]));
}

#[test]
fn flag_11_trivial() {
    let f = AlgebraFamily::flag(vec![1, 1]).unwrap();
    let b = build_absolute_complex(&f, ModuleSpec::Trivial, 7).unwrap();
    assert_eq!(b.cohomology_map().unwrap(), map(&[(0, 1), (3, 1), (5, 2), (6, 2)]));
}

#[test]
fn relative_w1_sym() {
    for m in 1..=4 {
        let b = build_relative_complex(&w(1), &ReductivePart::AllBlocks, ModuleSpec::sym(m).unwrap(), 4).unwrap();
        assert_eq!(b.cohomology_map().unwrap(), map(&[(2, 1)]), "m = {m}");
    }
}

#[test]
fn relative_w2_sym1() {
    let b = build_relative_complex(&w(2), &ReductivePart::AllBlocks, ModuleSpec::sym(1).unwrap(), 6).unwrap();
    assert_eq!(b.cohomology_map().unwrap(), map(&[(4, 2)]));
}

#[test]
fn relative_wl11() {
    let f = AlgebraFamily::wl(1, 1).unwrap();
    let b = build_relative_complex(&f, &ReductivePart::AllBlocks, ModuleSpec::Trivial, 6).unwrap();
    assert_eq!(b.cohomology_map().unwrap(), map(&[(0, 1), (2, 1), (4, 1)]));
}

#[test]
fn absolute_equals_relative_times_exterior_w1() {
    let abs = build_absolute_complex(&w(1), ModuleSpec::sym(1).unwrap(), 4).unwrap().cohomology().unwrap();
    let rel = build_relative_complex(&w(1), &ReductivePart::AllBlocks, ModuleSpec::sym(1).unwrap(), 4)
        .unwrap()
        .cohomology()
        .unwrap();
    // Λ(gl_1)^{gl_1} has dims 1, 1 in degrees 0, 1.
    for p in 0..=4 {
        let expected = rel[p] + if p >= 1 { rel[p - 1] } else { 0 };
        assert_eq!(abs[p], expected, "degree {p}");
    }
}

#[test]
fn relative_cochains_are_invariant() {
    let f = w(2);
    let b = build_relative_complex(&f, &ReductivePart::AllBlocks, ModuleSpec::sym(1).unwrap(), 5).unwrap();
    for p in 0..=5 {
        for i in 0..b.dims()[p].min(6) {
            assert!(is_relative_cochain(&b, &f, p, &vec![(i, fovec::exactlin::Rational::one())]));
        }
    }
}

#[test]
fn parallel_matches_sequential() {
    let f = AlgebraFamily::flag(vec![1, 1]).unwrap();
    let seq = BuildOptions { parallel: false, torus_prefilter: true };
    let a = build_relative_complex_with(&f, &ReductivePart::AllBlocks, ModuleSpec::Trivial, 5, &seq).unwrap();
    let b = build_relative_complex(&f, &ReductivePart::AllBlocks, ModuleSpec::Trivial, 5).unwrap();
    assert_eq!(a.dims(), b.dims());
    for p in 0..=5 {
        assert_eq!(a.differential(p), b.differential(p));
    }
}

#[test]
fn torus_prefilter_does_not_change_dims() {
    let f = w(2);
    let off = BuildOptions { parallel: true, torus_prefilter: false };
    let a = build_relative_complex_with(&f, &ReductivePart::AllBlocks, ModuleSpec::Trivial, 4, &off).unwrap();
    let b = build_relative_complex(&f, &ReductivePart::AllBlocks, ModuleSpec::Trivial, 4).unwrap();
    assert_eq!(a.dims(), b.dims());
    assert_eq!(a.cohomology().unwrap(), b.cohomology().unwrap());
}

#[test]
fn p_max_zero_gives_invariants() {
    let b = build_absolute_complex(&w(1), ModuleSpec::Trivial, 0).unwrap();
    assert_eq!(b.cohomology().unwrap(), vec![1]);
}

#[test]
fn unknown_block_is_rejected() {
    let r = build_relative_complex(&w(1), &ReductivePart::Blocks(vec![3]), ModuleSpec::Trivial, 2);
    assert!(matches!(r, Err(CeError::InvalidReductivePart(_))));
}

fn levi_trivial(m: usize, n: usize) -> ExplicitModule {
    ExplicitModule::trivial(m + n, MatrixAlgebra::Gl(m + n).fields())
}

#[test]
fn finite_pairs() {
    let (g, h, b) = (MatrixAlgebra::Gl(2), MatrixAlgebra::Levi { m: 1, n: 1 }, MatrixAlgebra::Parabolic { m: 1, n: 1 });
    let t = levi_trivial(1, 1);
    assert_eq!(finite_pair_relative_cohomology(g, h, &t).unwrap(), map(&[(0, 1), (2, 1)]));
    assert_eq!(finite_pair_relative_cohomology(b, h, &t).unwrap(), map(&[(0, 1)]));
    let ad = ExplicitModule::adjoint(2, g.fields()).unwrap();
    // The centralizer of b in gl_2 is the scalars.
    assert_eq!(finite_pair_relative_cohomology(b, h, &ad).unwrap(), map(&[(0, 1)]));
}

#[test]
fn broken_module_is_rejected() {
    let g = MatrixAlgebra::Gl(2);
    let bad = ExplicitModule::diagonal_character(2, g.fields(), &[1, 0]);
    let r = finite_pair_relative_cohomology(g, MatrixAlgebra::Levi { m: 1, n: 1 }, &bad);
    assert!(matches!(r, Err(CeError::ModuleActionInvalid(_))));
}

#[test]
fn hs_pages_gl2() {
    let t = levi_trivial(1, 1);
    let block = finite_pair_complex(
        MatrixAlgebra::Gl(2),
        MatrixAlgebra::Levi { m: 1, n: 1 },
        &t,
        Some(MatrixAlgebra::Parabolic { m: 1, n: 1 }),
    )
    .unwrap();
    let pages = hochschild_serre_pages(&block.filtered().unwrap(), 3);
    let e1 = &pages[0];
    assert_eq!(e1.entries, [((0, 0), 1), ((1, 1), 1)].into_iter().collect());
    assert!(e1.differential_ranks.is_empty());
    let chi = e1.euler_characteristic();
    assert!(pages.iter().all(|p| p.euler_characteristic() == chi));
}

#[test]
fn hs_pages_gl3() {
    let t = levi_trivial(1, 2);
    let block = finite_pair_complex(
        MatrixAlgebra::Gl(3),
        MatrixAlgebra::Levi { m: 1, n: 2 },
        &t,
        Some(MatrixAlgebra::Parabolic { m: 1, n: 2 }),
    )
    .unwrap();
    let pages = hochschild_serre_pages(&block.filtered().unwrap(), 3);
    let e1 = &pages[0];
    assert!(e1.is_diagonal());
    let g = fovec::combinat::grassmannian_poincare(1, 2);
    for (&(p, _), &d) in &e1.entries {
        assert_eq!(d as u64, g.coeff(2 * p));
    }
    assert_eq!(e1.totals().values().sum::<usize>() as u64, g.value_at_one());
}
