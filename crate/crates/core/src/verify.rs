//! The acceptance suite: twelve criteria, each an exact finite computation.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use crate::cecomplex::{
    build_absolute_complex, build_relative_complex, finite_pair_complex, finite_pair_relative_cohomology,
    hochschild_serre_pages, ExplicitModule, ReductivePart,
};
use crate::cocycles::{a_cocycles, graph_cochain, is_exact, w1_differential, wheel_block, xi_block, xi_lambda, WheelGraph};
use crate::combinat::{
    dot_action, grassmannian_poincare, howe_exterior_check, partitions_bounded, Partition, Permutation, Polynomial,
    Weight,
};
use crate::liealg::{jacobi_check, AlgebraFamily, MatrixAlgebra, ModuleSpec};
use crate::obstruction::obstruction_enumeration_holds;
use crate::parabolic::{verify_b_vanishing, verify_grassmannian_degeneration, ParabolicSetup};
use crate::weyltrunc::{gl1_flag_cohomology, poincare_formula, transgression_cohomology, TransgressionComplex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Level {
    /// Exactly the stated ranges.
    Quick,
    /// Somewhat larger ranges where they stay cheap.
    Full,
}

impl std::str::FromStr for Level {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "quick" => Ok(Level::Quick),
            "full" => Ok(Level::Full),
            _ => Err(format!("unknown level {s:?}, expected quick or full")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] criterion {:>2} {} (tolerance: exact, {:.2}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

pub const CRITERIA: [&str; 12] = [
    "H(W_1; S^m W_1*) in degrees 2, 3",
    "relative H(W_1, gl_1; S^m W_1*) in degree 2",
    "relative H(W_2, gl_2; S^1 W_2*) = 2 in degree 4",
    "H(W(1,1)) three ways",
    "transgression model = CE complex",
    "gl_1 flag cohomology vs formula and monomial basis",
    "relative H(WL(1|1), gl_1+gl_1)",
    "Grassmannian Poincare polynomials",
    "parabolic vanishing",
    "Hochschild-Serre degeneration for b in gl_{m+n}",
    "explicit cocycles",
    "property suites",
];

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn map(v: &[(usize, usize)]) -> BTreeMap<usize, usize> {
    v.iter().copied().collect()
}

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

fn c1(level: Level) -> Check {
    let top = if level == Level::Full { 6 } else { 5 };
    let w1 = AlgebraFamily::w(1).map_err(err)?;
    for m in 1..=4 {
        let b = build_absolute_complex(&w1, ModuleSpec::sym(m).map_err(err)?, top).map_err(err)?;
        let h = b.cohomology_map().map_err(err)?;
        ensure(h == map(&[(2, 1), (3, 1)]), || format!("m={m}: {h:?}"))?;
    }
    Ok(format!("m=1..4 give {{2:1, 3:1}} through degree {top}"))
}

fn c2(level: Level) -> Check {
    let top = if level == Level::Full { 6 } else { 5 };
    let w1 = AlgebraFamily::w(1).map_err(err)?;
    for m in 1..=4 {
        let b = build_relative_complex(&w1, &ReductivePart::AllBlocks, ModuleSpec::sym(m).map_err(err)?, top)
            .map_err(err)?;
        let h = b.cohomology_map().map_err(err)?;
        ensure(h == map(&[(2, 1)]), || format!("m={m}: {h:?}"))?;
    }
    Ok(format!("m=1..4 give {{2:1}} through degree {top}"))
}

fn c3(_: Level) -> Check {
    let w2 = AlgebraFamily::w(2).map_err(err)?;
    let b = build_relative_complex(&w2, &ReductivePart::AllBlocks, ModuleSpec::sym(1).map_err(err)?, 6)
        .map_err(err)?;
    let h = b.cohomology_map().map_err(err)?;
    let count = partitions_bounded(3, 2).len();
    ensure(h == map(&[(4, count)]) && count == 2, || format!("{h:?}, partition count {count}"))?;
    Ok(format!("{h:?}, partition count {count}"))
}

fn c4(_: Level) -> Check {
    let f = AlgebraFamily::flag(vec![1, 1]).map_err(err)?;
    let b = build_absolute_complex(&f, ModuleSpec::Trivial, 7).map_err(err)?;
    let ce = b.cohomology_map().map_err(err)?;
    let (gl1, _) = gl1_flag_cohomology(2).map_err(err)?;
    let formula = poincare_formula(2).to_dims();
    let want = map(&[(0, 1), (3, 1), (5, 2), (6, 2)]);
    ensure(ce == want && gl1 == want && formula == want, || {
        format!("CE {ce:?}, transgression {gl1:?}, formula {formula:?}")
    })?;
    Ok(format!("{want:?} from CE, transgression model and formula"))
}

fn c5(_: Level) -> Check {
    let mut parts = Vec::new();
    for blocks in [vec![1], vec![1, 1], vec![2]] {
        let t = TransgressionComplex::new(blocks.clone()).map_err(err)?;
        let family = AlgebraFamily::flag(blocks.clone()).map_err(err)?;
        let ce = build_absolute_complex(&family, ModuleSpec::Trivial, t.top_degree() + 1).map_err(err)?;
        let ce = ce.cohomology_map().map_err(err)?;
        let tr = transgression_cohomology(&blocks).map_err(err)?;
        ensure(ce == tr, || format!("blocks {blocks:?}: CE {ce:?} vs transgression {tr:?}"))?;
        parts.push(format!("{blocks:?} -> {tr:?}"));
    }
    Ok(parts.join("; "))
}

fn c6(level: Level) -> Check {
    let top = if level == Level::Full { 6 } else { 5 };
    for n in 1..=top {
        let (dims, predicted) = gl1_flag_cohomology(n).map_err(err)?;
        let formula = poincare_formula(n);
        ensure(Polynomial::from_dims(&dims) == formula, || format!("N={n}: {dims:?} vs {formula:?}"))?;
        ensure(predicted.len() as u64 == formula.value_at_one(), || format!("N={n}: basis size {}", predicted.len()))?;
    }
    Ok(format!("N=1..{top}: cohomology, formula and monomial basis agree"))
}

fn c7(_: Level) -> Check {
    let f = AlgebraFamily::wl(1, 1).map_err(err)?;
    let b = build_relative_complex(&f, &ReductivePart::AllBlocks, ModuleSpec::Trivial, 6).map_err(err)?;
    let h = b.cohomology_map().map_err(err)?;
    ensure(h == map(&[(0, 1), (2, 1), (4, 1)]), || format!("{h:?}"))?;
    Ok(format!("{h:?} through degree 6"))
}

fn levi_trivial(m: usize, n: usize) -> ExplicitModule {
    ExplicitModule::trivial(m + n, MatrixAlgebra::Gl(m + n).fields())
}

fn c8(_: Level) -> Check {
    let mut parts = Vec::new();
    for (m, n) in [(1, 1), (1, 2), (2, 2)] {
        let h = finite_pair_relative_cohomology(MatrixAlgebra::Gl(m + n), MatrixAlgebra::Levi { m, n }, &levi_trivial(m, n))
            .map_err(err)?;
        let got = Polynomial::from_dims(&h);
        let want = grassmannian_poincare(m, n);
        ensure(got == want, || format!("({m},{n}): {got:?} vs {want:?}"))?;
        parts.push(format!("({m},{n}) {:?}", want.coeffs()));
    }
    Ok(parts.join("; "))
}

fn c9(level: Level) -> Check {
    let mut count = 0;
    let mut shapes = vec![(1, 1), (1, 2)];
    if level == Level::Full {
        shapes.push((2, 1));
    }
    for (m, n) in shapes {
        let s = ParabolicSetup::new(m, n).map_err(err)?;
        let nv = m + n;
        let modules = [
            levi_trivial(m, n),
            ExplicitModule::tautological(nv),
            ExplicitModule::adjoint(nv, MatrixAlgebra::Gl(nv).fields()).map_err(err)?,
        ];
        for lambda in [Partition::empty(), Partition::new(vec![1]).map_err(err)?, Partition::new(vec![2]).map_err(err)?] {
            for l in &modules {
                verify_b_vanishing(&s, &lambda, l).map_err(err)?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} instances: H^{{>0}} = 0 and H^0 = invariant count"))
}

fn c10(_: Level) -> Check {
    let mut parts = Vec::new();
    for (m, n) in [(1, 1), (1, 2)] {
        let nv = m + n;
        for l in [levi_trivial(m, n), ExplicitModule::adjoint(nv, MatrixAlgebra::Gl(nv).fields()).map_err(err)?] {
            let r = verify_grassmannian_degeneration(m, n, &l).map_err(err)?;
            parts.push(format!("({m},{n}) {} {:?}", l.name(), r.diagonal()));
        }
    }
    Ok(format!("E_1 diagonal: {}", parts.join("; ")))
}

fn c11(_: Level) -> Check {
    for m in 1..=6 {
        let (a2, a3) = a_cocycles(m);
        ensure(w1_differential(&a2).is_zero() && w1_differential(&a3).is_zero(), || format!("a_·{m} not closed"))?;
        ensure(!is_exact(&a2) && !is_exact(&a3), || format!("a_·{m} exact"))?;
    }
    for n in 1..=2 {
        for r in 1..=2 {
            let block = wheel_block(n, 2 * r).map_err(err)?;
            let c = graph_cochain(&WheelGraph::wheel(r), &block).map_err(err)?;
            ensure(block.is_cocycle(2 * r, &c.vector), || format!("wheel r={r} n={n} not closed"))?;
            ensure((r > n) == c.is_zero(), || format!("wheel r={r} n={n}: zero = {}", c.is_zero()))?;
        }
    }
    let block = xi_block(2, 1).map_err(err)?;
    let h4 = block.cohomology().map_err(err)?[4];
    let mut vs = Vec::new();
    for lambda in partitions_bounded(3, 3).into_iter().filter(|l| l.len() <= 2) {
        let xi = xi_lambda(&lambda, 2, 1, &block).map_err(err)?;
        ensure(block.is_cocycle(4, &xi.vector), || format!("ξ_{lambda} not closed"))?;
        vs.push(xi.vector);
    }
    let rank = block.rank_modulo_coboundaries(4, &vs);
    ensure(h4 == 2 && rank == 2, || format!("H^4 = {h4}, ξ rank {rank}"))?;
    Ok("a_2m, a_3m closed and nontrivial (m ≤ 6); wheels closed, zero iff r > n; ξ span H^4 = 2".into())
}

fn c12(level: Level) -> Check {
    let mut checked = 0usize;
    let w1 = AlgebraFamily::w(1).map_err(err)?;
    let w2 = AlgebraFamily::w(2).map_err(err)?;
    let complexes = [
        build_absolute_complex(&w1, ModuleSpec::Trivial, 5),
        build_absolute_complex(&w1, ModuleSpec::sym(2).map_err(err)?, 5),
        build_relative_complex(&w2, &ReductivePart::AllBlocks, ModuleSpec::sym(1).map_err(err)?, 5),
        build_absolute_complex(&AlgebraFamily::flag(vec![1, 1]).map_err(err)?, ModuleSpec::Trivial, 6),
        build_relative_complex(&AlgebraFamily::wl(1, 1).map_err(err)?, &ReductivePart::AllBlocks, ModuleSpec::Trivial, 5),
        finite_pair_complex(MatrixAlgebra::Gl(3), MatrixAlgebra::Levi { m: 1, n: 2 }, &levi_trivial(1, 2), None),
    ];
    for c in complexes {
        c.map_err(err)?.check_d_squared().map_err(err)?;
        checked += 1;
    }
    for blocks in [vec![1], vec![1, 1, 1], vec![2, 1]] {
        TransgressionComplex::new(blocks).map_err(err)?.block().map_err(err)?.check_d_squared().map_err(err)?;
        checked += 1;
    }
    let w_hi = if level == Level::Full { 2 } else { 1 };
    let mut triples = 0;
    for fam in [w1.clone(), w2.clone(), AlgebraFamily::flag(vec![1, 1]).map_err(err)?, AlgebraFamily::wl(1, 1).map_err(err)?] {
        triples += jacobi_check(&fam, -1, w_hi).map_err(err)?;
    }
    for (m, n) in [(1, 1), (1, 2)] {
        let block = finite_pair_complex(
            MatrixAlgebra::Gl(m + n),
            MatrixAlgebra::Levi { m, n },
            &levi_trivial(m, n),
            Some(MatrixAlgebra::Parabolic { m, n }),
        )
        .map_err(err)?;
        let chi = block.euler_characteristic();
        let pages = hochschild_serre_pages(&block.filtered().map_err(err)?, 3);
        ensure(pages.iter().all(|p| p.euler_characteristic() == chi), || format!("({m},{n}) Euler characteristic"))?;
    }
    let pages = hochschild_serre_pages(&TransgressionComplex::weyl_gl1(4).filtered_block().map_err(err)?, 3);
    let chi = pages[0].euler_characteristic();
    ensure(pages.iter().all(|p| p.euler_characteristic() == chi), || "Weyl algebra Euler characteristic".into())?;
    for a in 1..=3 {
        for b in 1..=3 {
            for k in 0..=a * b {
                ensure(howe_exterior_check(k, a, b), || format!("Howe fails at k={k} a={a} b={b}"))?;
            }
        }
    }
    for n in [3, 4] {
        let lam = Weight((0..n as i64).map(|i| 3 - 2 * i).collect());
        let perms = Permutation::all(n);
        ensure(dot_action(&Permutation::identity(n), &lam).map_err(err)? == lam, || "identity".into())?;
        for a in &perms {
            for b in &perms {
                let lhs = dot_action(&a.compose(b), &lam).map_err(err)?;
                let rhs = dot_action(b, &dot_action(a, &lam).map_err(err)?).map_err(err)?;
                ensure(lhs == rhs, || format!("dot action on S_{n} at {a}, {b}"))?;
            }
        }
    }
    ensure((2..=10).all(obstruction_enumeration_holds), || "obstruction enumeration".into())?;
    Ok(format!(
        "d² = 0 on {checked} complexes; Jacobi on {triples} triples; Euler characteristic stable; Howe a,b ≤ 3; dot action on S_3, S_4; obstruction n ≤ 10"
    ))
}

/// Runs criterion `id` (1-based).
pub fn run_criterion(id: usize, level: Level) -> CriterionResult {
    let checks: [fn(Level) -> Check; 12] = [c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12];
    assert!((1..=12).contains(&id), "criteria are numbered 1..=12");
    let start = Instant::now();
    let outcome = checks[id - 1](level);
    let elapsed = start.elapsed();
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionResult { id, name: CRITERIA[id - 1], passed, detail, elapsed }
}

pub fn run_all(level: Level) -> Vec<CriterionResult> {
    (1..=12).map(|id| run_criterion(id, level)).collect()
}
