//! Finite checks around the parabolic subalgebra `b ⊂ gl_{m+n}`.
//!
//! Coordinates `0..m` span `V`, coordinates `m..m+n` span `U`. On the
//! tautological module `T = span{∂_k}` the field `x_i ∂_j` sends `∂_i` to
//! `−∂_j`, so `b = {x_i ∂_j : j < m ⇒ i < m}` preserves `U` and acts on `T` as
//! `gl(V) ⊕ gl(U) ⊕ Hom(V, U)`.
//!
//! Weights are read on `T`: `h_k = −x_k ∂_k` and `∂_k` has weight `e_k`. The
//! irreducible `gl_N`-module of highest weight `λ` is
//! `S^{λ − λ_N}(T) ⊗ det^{λ_N}`.

use std::collections::BTreeMap;
use std::fmt;

use crate::cecomplex::{
    finite_pair_complex, finite_pair_relative_cohomology, hochschild_serre_pages, CeError, ExplicitModule,
    SpectralPage,
};
use crate::combinat::{dot_action, grassmannian_poincare, shuffles, Partition, Weight};
use crate::exactlin::{Rational, SparseRationalMatrix};
use crate::liealg::{MatrixAlgebra, MonomialVectorField};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParabolicError {
    #[error("VANISHING_VIOLATED: {0}")]
    VanishingViolated(String),
    #[error("DEGENERATION_VIOLATED: {0}")]
    DegenerationViolated(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Complex(#[from] CeError),
}

/// The decomposition `gl_{m+n} = n⁺ ⊕ b`, `b = gl_m ⊕ gl_n ⊕ n⁻`.
#[derive(Debug, Clone)]
pub struct ParabolicSetup {
    m: usize,
    n: usize,
    gl: Vec<MonomialVectorField>,
    levi: Vec<MonomialVectorField>,
    b: Vec<MonomialVectorField>,
    n_plus: Vec<MonomialVectorField>,
    n_minus: Vec<MonomialVectorField>,
}

impl ParabolicSetup {
    pub fn new(m: usize, n: usize) -> Result<Self, ParabolicError> {
        if m == 0 || n == 0 {
            return Err(ParabolicError::InvalidInput(format!("both blocks must be nonempty, got ({m},{n})")));
        }
        let s = ParabolicSetup {
            m,
            n,
            gl: MatrixAlgebra::Gl(m + n).fields(),
            levi: MatrixAlgebra::Levi { m, n }.fields(),
            b: MatrixAlgebra::Parabolic { m, n }.fields(),
            n_plus: MatrixAlgebra::NilPlus { m, n }.fields(),
            n_minus: MatrixAlgebra::NilMinus { m, n }.fields(),
        };
        debug_assert_eq!(s.b.len(), m * m + n * n + m * n);
        debug_assert_eq!(s.b.len() + s.n_plus.len(), s.gl.len());
        Ok(s)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n_vars(&self) -> usize {
        self.m + self.n
    }

    pub fn gl(&self) -> &[MonomialVectorField] {
        &self.gl
    }

    pub fn levi(&self) -> &[MonomialVectorField] {
        &self.levi
    }

    pub fn b(&self) -> &[MonomialVectorField] {
        &self.b
    }

    pub fn n_plus(&self) -> &[MonomialVectorField] {
        &self.n_plus
    }

    pub fn n_minus(&self) -> &[MonomialVectorField] {
        &self.n_minus
    }

    /// `U = span{∂_j : j ≥ m}` as a `b`-module.
    pub fn u_module(&self) -> Result<ExplicitModule, ParabolicError> {
        let t = ExplicitModule::tautological(self.n_vars()).restrict(&self.b)?;
        let span: Vec<_> = (self.m..self.n_vars()).map(|j| vec![(j, Rational::one())]).collect();
        Ok(t.submodule(&span, "U")?)
    }

    /// A `gl_{m+n}`-module restricted to `b`.
    pub fn restrict_to_b(&self, module: &ExplicitModule) -> Result<ExplicitModule, ParabolicError> {
        Ok(module.restrict(&self.b)?)
    }

    /// The irreducible `b`-module `L_I(μ)`: the `gl_m ⊕ gl_n`-irreducible with
    /// highest weight `μ`, with the nilradical acting by zero.
    pub fn levi_irreducible(&self, mu: &Weight) -> Result<ExplicitModule, ParabolicError> {
        let (m, n) = (self.m, self.n);
        if mu.len() != m + n || !mu.is_dominant_for_blocks(m) {
            return Err(ParabolicError::InvalidInput(format!("{mu} is not dominant for gl_{m} ⊕ gl_{n}")));
        }
        let nv = m + n;
        let t = ExplicitModule::tautological(nv).restrict(&self.levi)?;
        let block = |range: std::ops::Range<usize>, w: &[i64], name: &str| -> Result<ExplicitModule, ParabolicError> {
            let span: Vec<_> = range.clone().map(|k| vec![(k, Rational::one())]).collect();
            let tb = t.submodule(&span, name)?;
            let low = *w.last().expect("nonempty block");
            let lambda = partition_of(w.iter().map(|x| x - low))?;
            let mut values = vec![0; nv];
            for k in range {
                values[k] = -low;
            }
            let det = ExplicitModule::diagonal_character(nv, self.levi.clone(), &values);
            Ok(tb.schur(&lambda)?.tensor(&det)?)
        };
        let lv = block(0..m, &mu.0[..m], "T_V")?;
        let lu = block(m..nv, &mu.0[m..], "T_U")?;
        let levi_module = lv.tensor(&lu)?;
        let actions = self
            .b
            .iter()
            .map(|f| {
                levi_module
                    .action(f)
                    .cloned()
                    .unwrap_or_else(|| SparseRationalMatrix::zero(levi_module.dim(), levi_module.dim()))
            })
            .collect();
        Ok(ExplicitModule::new(format!("L_I{mu}"), nv, levi_module.dim(), self.b.clone(), actions)?)
    }
}

fn partition_of(parts: impl Iterator<Item = i64>) -> Result<Partition, ParabolicError> {
    let parts: Vec<usize> = parts.filter(|&x| x != 0).map(|x| x as usize).collect();
    Partition::new(parts).map_err(|e| ParabolicError::InvalidInput(e.to_string()))
}

/// `S^λ` of the tautological `gl_dim`-module; `λ = ∅` gives the trivial module.
pub fn schur_module(lambda: &Partition, dim: usize) -> Result<ExplicitModule, ParabolicError> {
    Ok(ExplicitModule::tautological(dim).schur(lambda)?)
}

/// The irreducible `gl_N`-module of dominant highest weight `λ`.
pub fn gl_irreducible(lambda: &Weight) -> Result<ExplicitModule, ParabolicError> {
    if lambda.is_empty() || !lambda.is_dominant() {
        return Err(ParabolicError::InvalidInput(format!("{lambda} is not dominant")));
    }
    let n = lambda.len();
    let low = *lambda.0.last().expect("nonempty");
    let shape = partition_of(lambda.0.iter().map(|x| x - low))?;
    let gl = MatrixAlgebra::Gl(n).fields();
    let det = ExplicitModule::diagonal_character(n, gl, &vec![-low; n]);
    Ok(schur_module(&shape, n)?.tensor(&det)?.with_name(format!("L{lambda}")))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VanishingReport {
    pub m: usize,
    pub n: usize,
    pub lambda: Partition,
    pub module: String,
    pub cohomology: BTreeMap<usize, usize>,
    /// `dim Hom_{gl}(S^λ(V ⊕ U), L)`.
    pub expected_h0: usize,
}

impl fmt::Display for VanishingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(m,n)=({},{}) λ={} L={}: H={:?}, expected H⁰={}",
            self.m, self.n, self.lambda, self.module, self.cohomology, self.expected_h0
        )
    }
}

/// Computes `H(b, gl_m ⊕ gl_n; Hom(S^λ U, L))` and compares it with
/// `Hom_{gl_{m+n}}(S^λ(V ⊕ U), L)` in degree 0 and zero above.
pub fn verify_b_vanishing(
    setup: &ParabolicSetup,
    lambda: &Partition,
    l: &ExplicitModule,
) -> Result<VanishingReport, ParabolicError> {
    let nv = setup.n_vars();
    if lambda.len() > setup.n() {
        return Err(ParabolicError::InvalidInput(format!("λ={lambda} has more than {} rows", setup.n())));
    }
    if l.n_vars() != nv {
        return Err(ParabolicError::InvalidInput(format!("module lives on {} coordinates, not {nv}", l.n_vars())));
    }
    let lb = setup.restrict_to_b(l)?;
    let su = setup.u_module()?.schur(lambda)?;
    let coeffs = su.dual().tensor(&lb)?;
    let cohomology = finite_pair_relative_cohomology(
        MatrixAlgebra::Parabolic { m: setup.m(), n: setup.n() },
        MatrixAlgebra::Levi { m: setup.m(), n: setup.n() },
        &coeffs,
    )?;
    let expected_h0 = schur_module(lambda, nv)?.dual().tensor(l)?.invariants_dim();
    let report = VanishingReport {
        m: setup.m(),
        n: setup.n(),
        lambda: lambda.clone(),
        module: l.name().to_string(),
        cohomology,
        expected_h0,
    };
    let h0 = report.cohomology.get(&0).copied().unwrap_or(0);
    if h0 != expected_h0 || report.cohomology.keys().any(|&p| p > 0) {
        return Err(ParabolicError::VanishingViolated(report.to_string()));
    }
    Ok(report)
}

/// `Some((l(ω), 1))` if a shuffle `ω` has `ω·λ = μ`, else `None`.
pub fn predicted_ext(lambda: &Weight, mu: &Weight, m: usize, n: usize) -> Option<(usize, usize)> {
    if lambda.len() != m + n || mu.len() != m + n {
        return None;
    }
    shuffles(m, n)
        .into_iter()
        .find(|(w, _)| dot_action(w, lambda).map(|x| &x == mu).unwrap_or(false))
        .map(|(_, l)| (l, 1))
}

/// Direct computation of `H(b, gl_m ⊕ gl_n; Hom(L(λ), L_I(μ)))`.
pub fn relative_ext(setup: &ParabolicSetup, lambda: &Weight, mu: &Weight) -> Result<BTreeMap<usize, usize>, ParabolicError> {
    let big = setup.restrict_to_b(&gl_irreducible(lambda)?)?;
    let small = setup.levi_irreducible(mu)?;
    let coeffs = big.dual().tensor(&small)?;
    Ok(finite_pair_relative_cohomology(
        MatrixAlgebra::Parabolic { m: setup.m(), n: setup.n() },
        MatrixAlgebra::Levi { m: setup.m(), n: setup.n() },
        &coeffs,
    )?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegenerationReport {
    pub m: usize,
    pub n: usize,
    pub module: String,
    pub e1: SpectralPage,
    /// Expected `dim E_1^{p,p}` for `p = 0, 1, …`.
    pub expected_diagonal: Vec<usize>,
    /// Euler characteristic of the relative complex.
    pub euler_characteristic: i64,
}

impl DegenerationReport {
    /// `dim E_1^{p,p}` for `p = 0..expected_diagonal.len()`.
    pub fn diagonal(&self) -> Vec<usize> {
        (0..self.expected_diagonal.len()).map(|p| self.e1.dim(p, p as i64)).collect()
    }
}

impl fmt::Display for DegenerationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(m,n)=({},{}) L={}: E1={:?}, expected diagonal {:?}",
            self.m, self.n, self.module, self.e1.entries, self.expected_diagonal
        )
    }
}

/// `E_1` of the spectral sequence of `b ⊂ gl_{m+n}` on the relative complex
/// `C(gl_{m+n}, gl_m ⊕ gl_n; L)`, checked against the Grassmannian.
pub fn verify_grassmannian_degeneration(
    m: usize,
    n: usize,
    l: &ExplicitModule,
) -> Result<DegenerationReport, ParabolicError> {
    if m == 0 || n == 0 || l.n_vars() != m + n {
        return Err(ParabolicError::InvalidInput(format!("bad shape ({m},{n}) for {}", l.name())));
    }
    let block = finite_pair_complex(
        MatrixAlgebra::Gl(m + n),
        MatrixAlgebra::Levi { m, n },
        l,
        Some(MatrixAlgebra::Parabolic { m, n }),
    )?;
    let euler_characteristic = block.euler_characteristic();
    let pages = hochschild_serre_pages(&block.filtered()?, 1);
    let e1 = pages.into_iter().next().expect("one page requested");
    let inv = l.invariants_dim();
    let g = grassmannian_poincare(m, n);
    let top = g.degree().unwrap_or(0) / 2;
    let expected_diagonal = (0..=top).map(|p| g.coeff(2 * p) as usize * inv).collect();
    let report = DegenerationReport { m, n, module: l.name().to_string(), e1, expected_diagonal, euler_characteristic };
    if !report.e1.is_diagonal()
        || report.diagonal() != report.expected_diagonal
        || report.e1.euler_characteristic() != euler_characteristic
    {
        return Err(ParabolicError::DegenerationViolated(report.to_string()));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn setup_dims() {
        for (m, n) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            let s = ParabolicSetup::new(m, n).unwrap();
            assert_eq!(s.b().len(), m * m + n * n + m * n);
            assert_eq!(s.b().len() + s.n_plus().len(), s.gl().len());
            assert_eq!(s.levi().len() + s.n_minus().len(), s.b().len());
            assert_eq!(s.u_module().unwrap().dim(), n);
        }
        assert!(ParabolicSetup::new(0, 2).is_err());
    }

    #[test]
    fn irreducible_dims() {
        assert_eq!(gl_irreducible(&Weight(vec![1, 0])).unwrap().dim(), 2);
        assert_eq!(gl_irreducible(&Weight(vec![0, -1])).unwrap().dim(), 2);
        assert_eq!(gl_irreducible(&Weight(vec![2, 0, -1])).unwrap().dim(), 15);
        let s = ParabolicSetup::new(1, 2).unwrap();
        let l = s.levi_irreducible(&Weight(vec![3, 1, 0])).unwrap();
        assert_eq!(l.dim(), 2);
        l.validate().unwrap();
    }
}
