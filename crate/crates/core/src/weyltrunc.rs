//! Transgression complexes: odd generators `c` mapping to even generators
//! `Ψ`, modulo a monomial ideal on the even part.
//!
//! Block `r` of size `n_r` contributes odd generators of degrees
//! `1, 3, …, 2n_r − 1` and even generators of degrees `2, 4, …, 2n_r`
//! (polynomial weights `1, …, n_r`), with `d(c_{r,2j−1}) = Ψ_{r,j}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::cecomplex::{build_relative_complex, CeError, CochainComplexBlock, FilteredComplexBlock, ReductivePart};
use crate::combinat::{catalan, Polynomial};
use crate::exactlin::{Rational, SparseRationalMatrix, SparseVector};
use crate::liealg::{AlgebraFamily, ModuleSpec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeylError {
    #[error("BASIS_MISMATCH: degree {degree} has cohomology {computed} but the predicted basis has {predicted}")]
    BasisMismatch { degree: usize, computed: usize, predicted: usize },
    #[error("block sizes must be at least 1")]
    InvalidBlocks,
    #[error(transparent)]
    Complex(#[from] CeError),
}

/// A monomial `c_S · Ψ^e`: odd exponents in `{0,1}`, even exponents arbitrary.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SuperMonomial {
    pub odd: Vec<u8>,
    pub even: Vec<u32>,
}

impl SuperMonomial {
    pub fn one(odd: usize, even: usize) -> Self {
        SuperMonomial { odd: vec![0; odd], even: vec![0; even] }
    }
}

/// `I_{n_1,…,n_k}`: a `Ψ`-monomial lies in the ideal when, for some `r`, its
/// weight on blocks `1..=r` exceeds `n_1 + … + n_r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FlagIdeal {
    blocks: Vec<usize>,
}

impl FlagIdeal {
    pub fn new(blocks: Vec<usize>) -> Self {
        FlagIdeal { blocks }
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    /// Even exponents are listed block by block, `Ψ_{r,1}, …, Ψ_{r,n_r}`.
    pub fn contains(&self, even: &[u32]) -> bool {
        let mut pos = 0;
        let (mut weight, mut bound) = (0u64, 0u64);
        for &n in &self.blocks {
            for j in 1..=n {
                weight += j as u64 * even.get(pos).copied().unwrap_or(0) as u64;
                pos += 1;
            }
            bound += n as u64;
            if weight > bound {
                return true;
            }
        }
        false
    }
}

/// See [`FlagIdeal::contains`].
pub fn ideal_member(even: &[u32], ideal: &FlagIdeal) -> bool {
    ideal.contains(even)
}

/// How the even part is cut down to a finite quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Truncation {
    Flag(FlagIdeal),
    /// Kill monomials of total weight above the bound.
    Weight(u32),
}

impl Truncation {
    fn kills(&self, even: &[u32], weights: &[u32]) -> bool {
        match self {
            Truncation::Flag(i) => i.contains(even),
            Truncation::Weight(k) => even.iter().zip(weights).map(|(e, w)| e * w).sum::<u32>() > *k,
        }
    }

    fn max_weight(&self) -> u32 {
        match self {
            Truncation::Flag(i) => i.blocks.iter().sum::<usize>() as u32,
            Truncation::Weight(k) => *k,
        }
    }
}

#[derive(Debug, Clone)]
pub struct TransgressionComplex {
    blocks: Vec<usize>,
    /// Polynomial weight `j` of generator pair `(c_{r,2j−1}, Ψ_{r,j})`.
    weights: Vec<u32>,
    truncation: Truncation,
    basis: Vec<Vec<SuperMonomial>>,
    index: HashMap<SuperMonomial, usize>,
}

impl TransgressionComplex {
    /// The complex for blocks `(n_1, …, n_k)` modulo the flag ideal.
    pub fn new(blocks: Vec<usize>) -> Result<Self, WeylError> {
        if blocks.is_empty() || blocks.contains(&0) {
            return Err(WeylError::InvalidBlocks);
        }
        let weights = blocks.iter().flat_map(|&n| 1..=n as u32).collect();
        let t = Truncation::Flag(FlagIdeal::new(blocks.clone()));
        Ok(Self::with_truncation(blocks, weights, t))
    }

    /// `Λ[c] ⊗ k[Ψ]` for one `gl_1` block, cut at polynomial weight `k`.
    pub fn weyl_gl1(k: u32) -> Self {
        Self::with_truncation(vec![1], vec![1], Truncation::Weight(k))
    }

    fn with_truncation(blocks: Vec<usize>, weights: Vec<u32>, truncation: Truncation) -> Self {
        let g = weights.len();
        let mut evens = Vec::new();
        fn go(
            t: &Truncation,
            w: &[u32],
            i: usize,
            left: u32,
            cur: &mut Vec<u32>,
            out: &mut Vec<Vec<u32>>,
        ) {
            if i == w.len() {
                if !t.kills(cur, w) {
                    out.push(cur.clone());
                }
                return;
            }
            for e in 0..=left / w[i] {
                cur[i] = e;
                // The ideal is closed under multiplication, so larger exponents stay inside.
                if t.kills(cur, w) {
                    break;
                }
                go(t, w, i + 1, left - e * w[i], cur, out);
            }
            cur[i] = 0;
        }
        go(&truncation, &weights, 0, truncation.max_weight(), &mut vec![0; g], &mut evens);
        let mut all: Vec<(usize, SuperMonomial)> = Vec::new();
        for mask in 0u64..(1u64 << g) {
            let odd: Vec<u8> = (0..g).map(|i| ((mask >> i) & 1) as u8).collect();
            let odd_deg: u32 = (0..g).filter(|&i| odd[i] == 1).map(|i| 2 * weights[i] - 1).sum();
            for e in &evens {
                let deg = odd_deg + e.iter().zip(&weights).map(|(a, w)| 2 * a * w).sum::<u32>();
                all.push((deg as usize, SuperMonomial { odd: odd.clone(), even: e.clone() }));
            }
        }
        let top = all.iter().map(|(d, _)| *d).max().unwrap_or(0);
        let mut basis = vec![Vec::new(); top + 1];
        for (d, m) in all {
            basis[d].push(m);
        }
        for b in &mut basis {
            b.sort_by(|a, b| b.cmp(a));
        }
        let index = basis.iter().flat_map(|b| b.iter().enumerate().map(|(i, m)| (m.clone(), i))).collect();
        TransgressionComplex { blocks, weights, truncation, basis, index }
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn n_generators(&self) -> usize {
        self.weights.len()
    }

    pub fn truncation(&self) -> &Truncation {
        &self.truncation
    }

    pub fn top_degree(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn basis(&self, degree: usize) -> &[SuperMonomial] {
        self.basis.get(degree).map_or(&[], Vec::as_slice)
    }

    pub fn degree_of(&self, m: &SuperMonomial) -> usize {
        let odd: u32 = m.odd.iter().zip(&self.weights).map(|(&o, w)| o as u32 * (2 * w - 1)).sum();
        let even: u32 = m.even.iter().zip(&self.weights).map(|(e, w)| 2 * e * w).sum();
        (odd + even) as usize
    }

    /// Polynomial weight of the even part.
    pub fn weight_of(&self, m: &SuperMonomial) -> usize {
        m.even.iter().zip(&self.weights).map(|(e, w)| (e * w) as usize).sum()
    }

    /// `d` applied to a monomial, with terms in the ideal dropped.
    pub fn apply_d(&self, m: &SuperMonomial) -> Vec<(SuperMonomial, i64)> {
        let mut out = Vec::new();
        let mut before = 0;
        for i in 0..m.odd.len() {
            if m.odd[i] == 0 {
                continue;
            }
            let mut t = m.clone();
            t.odd[i] = 0;
            t.even[i] += 1;
            if !self.truncation.kills(&t.even, &self.weights) {
                out.push((t, if before % 2 == 0 { 1 } else { -1 }));
            }
            before += 1;
        }
        out
    }

    /// `d` from degree `p` to `p + 1` in the monomial bases.
    pub fn differential(&self, p: usize) -> SparseRationalMatrix {
        let src = self.basis(p);
        let tgt_len = self.basis(p + 1).len();
        let trip: Vec<(usize, usize, Rational)> = src
            .iter()
            .enumerate()
            .flat_map(|(j, m)| {
                self.apply_d(m).into_iter().map(move |(t, c)| (self.index[&t], j, Rational::from(c)))
            })
            .collect();
        SparseRationalMatrix::from_triplets(tgt_len, src.len(), trip).expect("indices come from the basis")
    }

    /// The whole complex, degrees `0..=top_degree`.
    pub fn block(&self) -> Result<CochainComplexBlock, WeylError> {
        let top = self.top_degree();
        let dims = (0..=top + 1).map(|p| self.basis(p).len()).collect();
        let diffs = (0..=top).map(|p| self.differential(p)).collect();
        Ok(CochainComplexBlock::from_differentials(format!("T{:?}", self.blocks), dims, diffs)?)
    }

    /// The block filtered by polynomial weight.
    pub fn filtered_block(&self) -> Result<FilteredComplexBlock, WeylError> {
        let block = self.block()?;
        let levels = (0..=self.top_degree() + 1)
            .map(|p| self.basis(p).iter().map(|m| self.weight_of(m)).collect())
            .collect();
        Ok(FilteredComplexBlock::new(block, levels)?)
    }

    pub fn cohomology(&self) -> Result<BTreeMap<usize, usize>, WeylError> {
        Ok(self.block()?.cohomology_map()?)
    }

    /// Coordinates of a monomial in the basis of its degree.
    pub fn coordinates(&self, m: &SuperMonomial) -> Option<(usize, SparseVector)> {
        let d = self.degree_of(m);
        self.index.get(m).map(|&i| (d, vec![(i, Rational::one())]))
    }
}

impl fmt::Display for SuperMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &o) in self.odd.iter().enumerate() {
            if o == 1 {
                parts.push(format!("ζ{}", i + 1));
            }
        }
        for (i, &e) in self.even.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("ξ{}", i + 1)),
                _ => parts.push(format!("ξ{}^{}", i + 1, e)),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("·"))
        }
    }
}

/// `Σ q^{2·weight}` over the `Ψ`-monomials outside the flag ideal.
pub fn relative_flag_poincare(blocks: &[usize]) -> Polynomial {
    let Ok(t) = TransgressionComplex::new(blocks.to_vec()) else { return Polynomial::zero() };
    let zero_odd = vec![0u8; t.n_generators()];
    let mut dims = BTreeMap::new();
    for (d, b) in t.basis.iter().enumerate() {
        let c = b.iter().filter(|m| m.odd == zero_odd).count();
        if c > 0 {
            dims.insert(d, c);
        }
    }
    Polynomial::from_dims(&dims)
}

/// `k[ζ_1..ζ_N; ξ_1..ξ_N]/I` with `d = Σ ξ_i ∂/∂ζ_i`.
pub fn gl1_flag_complex(n: usize) -> Result<TransgressionComplex, WeylError> {
    TransgressionComplex::new(vec![1; n])
}

/// Monomials `ζ_{α_1}…ζ_{α_s} · ξ^i` with `α_1 < … < α_s = a`, `ξ^i` in
/// `ξ_1..ξ_a` of total degree `a` and prefix sums `i_1 + … + i_k ≤ k`, plus `1`.
pub fn predicted_basis(n: usize) -> Vec<SuperMonomial> {
    let mut out = vec![SuperMonomial::one(n, n)];
    for a in 1..=n {
        let mut xis = Vec::new();
        fn go(a: usize, k: usize, sum: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if k == a {
                if sum as usize == a {
                    out.push(cur.clone());
                }
                return;
            }
            for e in 0..=(k as u32 + 1 - sum) {
                cur[k] = e;
                go(a, k + 1, sum + e, cur, out);
            }
            cur[k] = 0;
        }
        go(a, 0, 0, &mut vec![0; n], &mut xis);
        for mask in 0u64..(1u64 << (a - 1)) {
            let mut odd = vec![0u8; n];
            for (i, o) in odd.iter_mut().enumerate().take(a - 1) {
                *o = ((mask >> i) & 1) as u8;
            }
            odd[a - 1] = 1;
            for x in &xis {
                out.push(SuperMonomial { odd: odd.clone(), even: x.clone() });
            }
        }
    }
    out
}

/// Cohomology of [`gl1_flag_complex`] together with the predicted basis,
/// after checking that the two agree degree by degree.
pub fn gl1_flag_cohomology(n: usize) -> Result<(BTreeMap<usize, usize>, Vec<SuperMonomial>), WeylError> {
    let t = gl1_flag_complex(n)?;
    let dims = t.cohomology()?;
    let predicted = predicted_basis(n);
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for m in &predicted {
        *counts.entry(t.degree_of(m)).or_insert(0) += 1;
    }
    for d in 0..=t.top_degree() {
        let (c, p) = (dims.get(&d).copied().unwrap_or(0), counts.get(&d).copied().unwrap_or(0));
        if c != p {
            return Err(WeylError::BasisMismatch { degree: d, computed: c, predicted: p });
        }
    }
    Ok((dims, predicted))
}

/// Whether the predicted monomials are cocycles whose classes are
/// independent, i.e. have full rank modulo coboundaries in each degree.
pub fn predicted_basis_independent(n: usize) -> Result<bool, WeylError> {
    let t = gl1_flag_complex(n)?;
    let block = t.block()?;
    let mut by_degree: BTreeMap<usize, Vec<SparseVector>> = BTreeMap::new();
    for m in predicted_basis(n) {
        match t.coordinates(&m) {
            Some((d, v)) => by_degree.entry(d).or_default().push(v),
            None => return Ok(false),
        }
    }
    Ok(by_degree.iter().all(|(&d, vs)| {
        vs.iter().all(|v| block.is_cocycle(d, v)) && block.rank_modulo_coboundaries(d, vs) == vs.len()
    }))
}

/// `1 + Σ_{n=1}^{N} q^{2n+1} (1+q)^{n−1} C(n)`.
pub fn poincare_formula(n: usize) -> Polynomial {
    let one_plus_q = Polynomial::from_coeffs(vec![1, 1]);
    let mut total = Polynomial::one();
    for k in 1..=n {
        let c: u64 = catalan(k as u64).try_into().expect("Catalan number fits in u64");
        let term = &Polynomial::monomial(2 * k + 1, c) * &one_plus_q.pow(k as u32 - 1);
        total = &total + &term;
    }
    total
}

pub fn transgression_cohomology(blocks: &[usize]) -> Result<BTreeMap<usize, usize>, WeylError> {
    TransgressionComplex::new(blocks.to_vec())?.cohomology()
}

/// Chain dimensions of the truncated relative Weyl algebra
/// `W(W_n, gl_n) / F^{2m+1}` in degrees `0..=max_degree`: the sum over
/// `a + 2b = p`, `b ≤ m`, of `dim C^a(W_n, gl_n; S^b W_n*)`.
pub fn truncated_weyl_chain_dims(n: usize, m: usize, max_degree: usize) -> Result<Vec<usize>, WeylError> {
    let family = AlgebraFamily::W { n };
    let mut dims = vec![0; max_degree + 1];
    for b in 0..=m.min(max_degree / 2) {
        let spec = if b == 0 { ModuleSpec::Trivial } else { ModuleSpec::SymCoadjoint(b) };
        let a_max = max_degree - 2 * b;
        let block = build_relative_complex(&family, &ReductivePart::AllBlocks, spec, a_max)?;
        for a in 0..=a_max {
            dims[a + 2 * b] += block.dims()[a];
        }
    }
    Ok(dims)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(v: &[(usize, usize)]) -> BTreeMap<usize, usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn ideal_examples() {
        let one = FlagIdeal::new(vec![1]);
        assert!(one.contains(&[2]));
        assert!(!one.contains(&[1]));
        let oo = FlagIdeal::new(vec![1, 1]);
        assert!(!oo.contains(&[1, 1]));
        assert!(oo.contains(&[2, 0]));
        let two = FlagIdeal::new(vec![2]);
        assert!(two.contains(&[1, 1]));
        assert!(!two.contains(&[0, 1]));
    }

    #[test]
    fn relative_poincare_examples() {
        assert_eq!(relative_flag_poincare(&[1]).coeffs(), &[1, 0, 1]);
        assert_eq!(relative_flag_poincare(&[2]).coeffs(), &[1, 0, 1, 0, 2]);
        assert_eq!(relative_flag_poincare(&[1, 1]).coeffs(), &[1, 0, 2, 0, 2]);
    }

    #[test]
    fn n1_complex() {
        let t = gl1_flag_complex(1).unwrap();
        let all: Vec<String> = (0..=t.top_degree()).flat_map(|d| t.basis(d).iter().map(|m| m.to_string())).collect();
        assert_eq!(all, ["1", "ζ1", "ξ1", "ζ1·ξ1"]);
        assert_eq!(t.cohomology().unwrap(), map(&[(0, 1), (3, 1)]));
    }

    #[test]
    fn derivation_drops_ideal_terms() {
        let t = gl1_flag_complex(2).unwrap();
        let m = SuperMonomial { odd: vec![1, 1], even: vec![0, 1] };
        // ξ2² survives: its prefix sums are 0 ≤ 1 and 2 ≤ 2.
        let d = t.apply_d(&m);
        assert_eq!(
            d,
            vec![
                (SuperMonomial { odd: vec![0, 1], even: vec![1, 1] }, 1),
                (SuperMonomial { odd: vec![1, 0], even: vec![0, 2] }, -1),
            ]
        );
        let m = SuperMonomial { odd: vec![1, 1], even: vec![1, 0] };
        assert_eq!(t.apply_d(&m), vec![(SuperMonomial { odd: vec![1, 0], even: vec![1, 1] }, -1)]);
        assert!(t.apply_d(&SuperMonomial::one(2, 2)).is_empty());
    }

    #[test]
    fn gl1_cohomology_examples() {
        assert_eq!(gl1_flag_cohomology(1).unwrap().0, map(&[(0, 1), (3, 1)]));
        assert_eq!(gl1_flag_cohomology(2).unwrap().0, map(&[(0, 1), (3, 1), (5, 2), (6, 2)]));
        assert_eq!(
            gl1_flag_cohomology(3).unwrap().0,
            map(&[(0, 1), (3, 1), (5, 2), (6, 2), (7, 5), (8, 10), (9, 5)])
        );
    }

    #[test]
    fn formula_examples() {
        assert_eq!(poincare_formula(1).coeffs(), &[1, 0, 0, 1]);
        assert_eq!(poincare_formula(2).coeffs(), &[1, 0, 0, 1, 0, 2, 2]);
        let diff: Vec<u64> =
            poincare_formula(4).coeffs().iter().zip(poincare_formula(3).coeffs().iter().chain(std::iter::repeat(&0))).map(|(a, b)| a - b).collect();
        assert_eq!(&diff[9..], &[14, 42, 42, 14]);
    }

    #[test]
    fn transgression_examples() {
        assert_eq!(transgression_cohomology(&[1]).unwrap(), map(&[(0, 1), (3, 1)]));
        assert_eq!(transgression_cohomology(&[1, 1]).unwrap(), map(&[(0, 1), (3, 1), (5, 2), (6, 2)]));
        assert!(TransgressionComplex::new(vec![1, 0]).is_err());
    }

    #[test]
    fn weyl_gl1_is_acyclic_below_the_cut() {
        let t = TransgressionComplex::weyl_gl1(4);
        let h = t.cohomology().unwrap();
        assert_eq!(h, map(&[(0, 1), (9, 1)]));
    }
}
