use std::collections::BTreeMap;

use proptest::prelude::*;

use fovec::cecomplex::{build_absolute_complex, hochschild_serre_pages, ExplicitModule};
use fovec::cocycles::{chain_space_basis, w1_differential, PolyChain};
use fovec::combinat::{dot_action, howe_exterior_check, partitions, Permutation, Weight};
use fovec::exactlin::{kernel_basis, rank, Rational, SparseRationalMatrix};
use fovec::liealg::{bracket, AlgebraFamily, MatrixAlgebra, ModuleSpec, MonomialVectorField};
use fovec::obstruction::{obstruction_bound, subflag_degrees};
use fovec::weyltrunc::TransgressionComplex;

fn field(n: usize) -> impl Strategy<Value = MonomialVectorField> {
    (prop::collection::vec(0u32..3, n), 0..n).prop_map(|(e, d)| MonomialVectorField::new(e, d))
}

fn add_bracket(acc: &mut BTreeMap<MonomialVectorField, i64>, terms: &[(MonomialVectorField, i64)], c: &MonomialVectorField) {
    for (f, x) in terms {
        for (g, y) in bracket(f, c) {
            *acc.entry(g).or_insert(0) += x * y;
        }
    }
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jacobi_on_random_triples(a in field(2), b in field(2), c in field(2)) {
        let mut acc = BTreeMap::new();
        add_bracket(&mut acc, &bracket(&a, &b), &c);
        add_bracket(&mut acc, &bracket(&b, &c), &a);
        add_bracket(&mut acc, &bracket(&c, &a), &b);
        prop_assert!(acc.values().all(|&v| v == 0));
    }

    #[test]
    fn bracket_is_antisymmetric(a in field(3), b in field(3)) {
        let ab: BTreeMap<_, _> = bracket(&a, &b).into_iter().collect();
        let ba: BTreeMap<_, _> = bracket(&b, &a).into_iter().map(|(f, x)| (f, -x)).collect();
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn dot_action_is_a_right_action(n in 3usize..=4, seed in prop::collection::vec(-3i64..4, 4),
                                    a in permutation(4), b in permutation(4)) {
        let (a, b) = if n == 4 { (a, b) } else {
            let restrict = |p: &Permutation| Permutation::new(p.images().iter().copied().filter(|&x| x <= 3).collect()).unwrap();
            (restrict(&a), restrict(&b))
        };
        let lam = Weight(seed[..n].to_vec());
        let lhs = dot_action(&a.compose(&b), &lam).unwrap();
        let rhs = dot_action(&b, &dot_action(&a, &lam).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(dot_action(&Permutation::identity(n), &lam).unwrap(), lam);
    }

    #[test]
    fn howe_identity(a in 1usize..=3, b in 1usize..=3, k in 0usize..=9) {
        prop_assume!(k <= a * b);
        prop_assert!(howe_exterior_check(k, a, b));
    }

    #[test]
    fn obstruction_enumeration(n in 2u64..=10) {
        let (top, bound) = obstruction_bound(n);
        let (max, at) = subflag_degrees(n);
        prop_assert_eq!(max, bound);
        prop_assert!(top > bound);
        prop_assert!(at.iter().all(|&d| d == 1 || d == n - 1));
    }

    #[test]
    fn rank_nullity(rows in prop::collection::vec(prop::collection::vec(-2i64..3, 5), 1..6)) {
        let m = SparseRationalMatrix::from_dense(&rows);
        let k = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + k.len(), 5);
        for v in &k {
            prop_assert!(m.mul_vec(v).is_empty());
        }
    }

    #[test]
    fn w1_differential_squares_to_zero(p in 0usize..=2, m in 0usize..=2,
                                       coeffs in prop::collection::vec(-3i64..4, 12)) {
        let basis = chain_space_basis(p, m);
        let c = basis.iter().zip(&coeffs).fold(PolyChain::zero(p, m), |acc, (b, &x)| acc.add(&b.scale(&Rational::from(x))));
        prop_assert!(w1_differential(&w1_differential(&c)).is_zero());
    }

    #[test]
    fn projection_has_the_right_symmetry(p in 1usize..=3, m in 0usize..=2,
                                         exps in prop::collection::vec(0u32..3, 5), x in 1i64..5) {
        let e: Vec<u32> = exps[..p + m].to_vec();
        let c = PolyChain::new(p, m, [(e, Rational::from(x))]).project();
        prop_assert!(c.is_skew_symmetric());
        prop_assert!(c.is_symmetric_in_z());
        // The projection is a sum, not an average.
        let order = fovec::combinat::factorial(p as u64) * fovec::combinat::factorial(m as u64);
        prop_assert_eq!(c.project(), c.scale(&Rational::from(order as i64)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn d_squared_on_random_complexes(n in 1usize..=2, m in 0usize..=2, p_max in 2usize..=4) {
        prop_assume!(n == 1 || m <= 1);
        let spec = if m == 0 { ModuleSpec::Trivial } else { ModuleSpec::sym(m).unwrap() };
        let b = build_absolute_complex(&AlgebraFamily::w(n).unwrap(), spec, p_max).unwrap();
        prop_assert!(b.check_d_squared().is_ok());
    }

    #[test]
    fn transgression_pages_keep_euler_characteristic(blocks in prop::collection::vec(1usize..=2, 1..=3)) {
        let t = TransgressionComplex::new(blocks).unwrap();
        t.block().unwrap().check_d_squared().unwrap();
        let pages = hochschild_serre_pages(&t.filtered_block().unwrap(), 4);
        let chi = t.block().unwrap().euler_characteristic();
        prop_assert!(pages.iter().all(|p| p.euler_characteristic() == chi));
    }

    #[test]
    fn schur_modules_respect_brackets(d in 1usize..=3, k in 0usize..=3, i in 0usize..5) {
        let ps = partitions(k);
        let lam = &ps[i % ps.len()];
        let s = ExplicitModule::tautological(d).schur(lam).unwrap();
        prop_assert!(s.validate().is_ok());
        prop_assert!(s.dual().validate().is_ok());
        let gl = MatrixAlgebra::Gl(d).fields();
        prop_assert!(s.restrict(&gl).is_ok());
    }
}
