//! Explicit cocycles: the polynomial model of cochains on `W_1`, the wheel
//! graph cochains on `(W_n, gl_n)`, and the family `ξ_{λ,n}` with values in
//! `S^m W_n*`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::cecomplex::{build_relative_complex, CeError, CochainComplexBlock, ModuleSlots, ReductivePart};
use crate::combinat::{binomial, factorial, Partition, Permutation};
use crate::exactlin::{span_rank, Rational, SparseVector};
use crate::liealg::{bracket, AlgebraFamily, ModuleSpec, MonomialVectorField};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CocycleError {
    #[error("partition {lambda} has size {size}, expected m + n = {expected}")]
    SizeMismatch { lambda: String, size: usize, expected: usize },
    #[error("graph is not a wheel union: {0}")]
    InvalidGraph(String),
    #[error("the cochain does not lie in the block's cochain space")]
    NotInSpace,
    #[error("block must have module power {expected}")]
    WrongBlock { expected: usize },
    #[error(transparent)]
    Complex(#[from] CeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CocycleWarning {
    /// `l(λ) > n`: the cocycle is expected to vanish or be redundant.
    LengthExceeded { length: usize, n: usize },
}

impl fmt::Display for CocycleWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CocycleWarning::LengthExceeded { length, n } => {
                write!(f, "LENGTH_EXCEEDED: partition length {length} exceeds n = {n}")
            }
        }
    }
}

/// A cochain in `C^p(W_1; S^m W_1*)` as a polynomial in `y_1..y_p, z_1..z_m`.
///
/// The monomial `y^r z^s` stands for the functional sending
/// `(Σ a_{1k} x^k∂, …)` to `Π r_i! Π s_j! · a_{1 r_1} ⋯`.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyChain {
    p: usize,
    m: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl PolyChain {
    pub fn new(p: usize, m: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut out = PolyChain::zero(p, m);
        for (e, c) in terms {
            assert_eq!(e.len(), p + m, "exponent vector has the wrong length");
            out.add_term(e, c);
        }
        out
    }

    pub fn zero(p: usize, m: usize) -> Self {
        PolyChain { p, m, terms: BTreeMap::new() }
    }

    pub fn constant(p: usize, m: usize, c: Rational) -> Self {
        PolyChain::new(p, m, [(vec![0; p + m], c)])
    }

    /// The variable `y_{i+1}`.
    pub fn y(p: usize, m: usize, i: usize) -> Self {
        let mut e = vec![0; p + m];
        e[i] = 1;
        PolyChain::new(p, m, [(e, Rational::one())])
    }

    /// The variable `z_{j+1}`.
    pub fn z(p: usize, m: usize, j: usize) -> Self {
        let mut e = vec![0; p + m];
        e[p + j] = 1;
        PolyChain::new(p, m, [(e, Rational::one())])
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PolyChain::new(self.p, self.m, self.terms.iter().map(|(e, x)| (e.clone(), x * c)))
    }

    pub fn add(&self, other: &PolyChain) -> Self {
        assert_eq!((self.p, self.m), (other.p, other.m));
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &PolyChain) -> Self {
        self.add(&other.scale(&Rational::from(-1)))
    }

    pub fn mul(&self, other: &PolyChain) -> Self {
        assert_eq!((self.p, self.m), (other.p, other.m));
        let mut out = PolyChain::zero(self.p, self.m);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.iter().zip(b).map(|(u, v)| u + v).collect(), x * y);
            }
        }
        out
    }

    /// Total degree minus the number of variables, if homogeneous.
    pub fn weight(&self) -> Option<i64> {
        let mut w = self.terms.keys().map(|e| e.iter().sum::<u32>() as i64 - (self.p + self.m) as i64);
        let first = w.next()?;
        w.all(|x| x == first).then_some(first)
    }

    fn swap_vars(&self, a: usize, b: usize) -> Self {
        PolyChain::new(
            self.p,
            self.m,
            self.terms.iter().map(|(e, c)| {
                let mut e = e.clone();
                e.swap(a, b);
                (e, c.clone())
            }),
        )
    }

    pub fn is_skew_symmetric(&self) -> bool {
        (1..self.p).all(|i| self.swap_vars(i - 1, i) == self.scale(&Rational::from(-1)))
    }

    pub fn is_symmetric_in_z(&self) -> bool {
        (1..self.m).all(|j| self.swap_vars(self.p + j - 1, self.p + j) == *self)
    }

    /// Sum over `S_p × S_m` with the sign of the `y`-permutation.
    pub fn project(&self) -> Self {
        let (p, m) = (self.p, self.m);
        let mut out = PolyChain::zero(p, m);
        for s in Permutation::all(p) {
            let sign = Rational::from(s.sign());
            let s0 = zero_based(&s);
            for t in Permutation::all(m) {
                let t0 = zero_based(&t);
                for (e, c) in &self.terms {
                    let mut f = vec![0; p + m];
                    for i in 0..p {
                        f[s0[i]] = e[i];
                    }
                    for j in 0..m {
                        f[p + t0[j]] = e[p + j];
                    }
                    out.add_term(f, c * &sign);
                }
            }
        }
        out
    }

    /// Variable `k` becomes the sum of the variables in `images[k]` of a
    /// polynomial in `p'` skew and `m'` symmetric variables.
    fn substitute(&self, images: &[Vec<usize>], p: usize, m: usize) -> Self {
        let mut out = PolyChain::zero(p, m);
        for (e, c) in &self.terms {
            let mut partial: Vec<(Vec<u32>, Rational)> = vec![(vec![0; p + m], c.clone())];
            for (k, &ek) in e.iter().enumerate() {
                if ek == 0 {
                    continue;
                }
                let img = &images[k];
                let mut next = Vec::new();
                for (f, x) in &partial {
                    match img.as_slice() {
                        [a] => {
                            let mut f = f.clone();
                            f[*a] += ek;
                            next.push((f, x.clone()));
                        }
                        [a, b] => {
                            for i in 0..=ek {
                                let mut f = f.clone();
                                f[*a] += i;
                                f[*b] += ek - i;
                                next.push((f, x * &Rational::from(binomial(ek as u64, i as u64) as i64)));
                            }
                        }
                        _ => unreachable!("images are one or two variables"),
                    }
                }
                partial = next;
            }
            for (f, x) in partial {
                out.add_term(f, x);
            }
        }
        out
    }

    /// Value on fields `x^{r_i}∂` (exterior) and `x^{s_j}∂` (symmetric),
    /// given by their exponents.
    pub fn value(&self, ext: &[u32], sym: &[u32]) -> Rational {
        assert_eq!((ext.len(), sym.len()), (self.p, self.m));
        let e: Vec<u32> = ext.iter().chain(sym).copied().collect();
        let f: u64 = e.iter().map(|&k| factorial(k as u64)).product();
        self.coeff(&e) * Rational::from(f as i64)
    }
}

impl fmt::Debug for PolyChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyChain(p={}, m={}, {})", self.p, self.m, self)
    }
}

impl fmt::Display for PolyChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mut mono = String::new();
            for (k, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let name = if k < self.p { format!("y{}", k + 1) } else { format!("z{}", k - self.p + 1) };
                mono += &name;
                if x > 1 {
                    mono += &format!("^{x}");
                }
            }
            let (neg, abs) = (c.is_negative(), c.abs());
            let coef = if abs.is_one() && !mono.is_empty() { String::new() } else { abs.to_string() };
            let sep = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            write!(f, "{sep}{coef}{mono}")?;
            first = false;
        }
        Ok(())
    }
}

fn zero_based(p: &Permutation) -> Vec<usize> {
    p.images().iter().map(|i| i - 1).collect()
}

fn sign(k: usize) -> Rational {
    Rational::from(if k.is_multiple_of(2) { 1 } else { -1 })
}

/// The differential of the polynomial model:
///
/// ```text
/// dP(y_1..y_{p+1}; z) = Σ_{s<t} (−1)^{s+t−1} (y_s − y_t) P(y_s + y_t, y_1..ŷ_s..ŷ_t..; z)
///                     + Σ_{s,t} (−1)^{s+1} (y_s − z_t) P(y_1..ŷ_s..; y_s + z_t, z_1..ẑ_t..)
/// ```
///
/// This agrees with the CE differential of `C(W_1; S^m W_1*)` under the
/// pairing of [`PolyChain::value`].
pub fn w1_differential(c: &PolyChain) -> PolyChain {
    differential_with(c, 1)
}

/// The same two sums with the second one signed `(−1)^s`. It is not a
/// differential once `m ≥ 1`; kept for comparison.
pub fn w1_differential_alt_sign(c: &PolyChain) -> PolyChain {
    differential_with(c, 0)
}

fn differential_with(c: &PolyChain, module_shift: usize) -> PolyChain {
    let (p, m) = (c.p, c.m);
    let (np, nm) = (p + 1, m);
    let z = |j: usize| np + j;
    let mut out = PolyChain::zero(np, nm);
    for s in 1..=np {
        for t in s + 1..=np {
            let rest: Vec<usize> = (1..=np).filter(|&k| k != s && k != t).map(|k| k - 1).collect();
            let mut images = vec![vec![s - 1, t - 1]];
            images.extend(rest.iter().map(|&k| vec![k]));
            images.extend((0..m).map(|j| vec![z(j)]));
            let moved = c.substitute(&images, np, nm);
            let factor = PolyChain::y(np, nm, s - 1).sub(&PolyChain::y(np, nm, t - 1));
            out = out.add(&factor.mul(&moved).scale(&sign(s + t - 1)));
        }
    }
    for s in 1..=np {
        for t in 1..=m {
            let mut images: Vec<Vec<usize>> =
                (1..=np).filter(|&k| k != s).map(|k| vec![k - 1]).collect();
            images.push(vec![s - 1, z(t - 1)]);
            images.extend((1..=m).filter(|&j| j != t).map(|j| vec![z(j - 1)]));
            let moved = c.substitute(&images, np, nm);
            let factor = PolyChain::y(np, nm, s - 1).sub(&PolyChain::z(np, nm, t - 1));
            out = out.add(&factor.mul(&moved).scale(&sign(s + module_shift)));
        }
    }
    out
}

/// `a_{2m} = (y_1² − y_2²) z_1⋯z_m` and `a_{3m} = (y_1−y_2)(y_2−y_3)(y_3−y_1) z_1⋯z_m`.
pub fn a_cocycles(m: usize) -> (PolyChain, PolyChain) {
    let zs = |p: usize| (0..m).fold(PolyChain::constant(p, m, Rational::one()), |acc, j| acc.mul(&PolyChain::z(p, m, j)));
    let y2 = |i| PolyChain::y(2, m, i);
    let a2 = y2(0).mul(&y2(0)).sub(&y2(1).mul(&y2(1))).mul(&zs(2));
    let y3 = |i| PolyChain::y(3, m, i);
    let a3 = y3(0)
        .sub(&y3(1))
        .mul(&y3(1).sub(&y3(2)))
        .mul(&y3(2).sub(&y3(0)))
        .mul(&zs(3));
    (a2, a3)
}

/// A basis of the weight-zero chains with `p` skew and `m` symmetric
/// variables: projections of monomials of total degree `p + m` with strictly
/// decreasing `y`-exponents and weakly decreasing `z`-exponents.
pub fn chain_space_basis(p: usize, m: usize) -> Vec<PolyChain> {
    let total = (p + m) as u32;
    let mut out = Vec::new();
    for ytot in 0..=total {
        for y in decreasing(p, ytot, true) {
            for z in decreasing(m, total - ytot, false) {
                let e: Vec<u32> = y.iter().chain(&z).copied().collect();
                out.push(PolyChain::new(p, m, [(e, Rational::one())]).project());
            }
        }
    }
    out
}

/// Decreasing (strictly if `strict`) vectors of length `n` summing to `total`.
fn decreasing(n: usize, total: u32, strict: bool) -> Vec<Vec<u32>> {
    fn go(n: usize, left: u32, cap: Option<u32>, strict: bool, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let hi = cap.map_or(left, |c| c.min(left));
        for e in (0..=hi).rev() {
            cur.push(e);
            let next = if strict { e.checked_sub(1) } else { Some(e) };
            if let Some(c) = next {
                go(n, left - e, Some(c), strict, cur, out);
            } else if cur.len() == n && left == e {
                out.push(cur.clone());
            }
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, total, None, strict, &mut Vec::new(), &mut out);
    out
}

fn to_vectors(chains: &[&PolyChain]) -> Vec<SparseVector> {
    let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
    chains
        .iter()
        .map(|c| {
            let mut v: SparseVector = c
                .terms
                .iter()
                .map(|(e, x)| {
                    let n = index.len();
                    (*index.entry(e.clone()).or_insert(n), x.clone())
                })
                .collect();
            v.sort_by_key(|(i, _)| *i);
            v
        })
        .collect()
}

/// Whether a weight-zero chain is the differential of a weight-zero chain.
pub fn is_exact(c: &PolyChain) -> bool {
    if c.is_zero() {
        return true;
    }
    if c.p == 0 {
        return false;
    }
    let images: Vec<PolyChain> = chain_space_basis(c.p - 1, c.m).iter().map(w1_differential).collect();
    let mut refs: Vec<&PolyChain> = images.iter().collect();
    let base = span_rank(&to_vectors(&refs));
    refs.push(c);
    span_rank(&to_vectors(&refs)) == base
}

/// Coordinates of a polynomial chain in an absolute `W_1` block with
/// trivial or symmetric coefficients.
pub fn to_cochain(c: &PolyChain, block: &CochainComplexBlock) -> Option<SparseVector> {
    let slice = block.slice()?;
    let degree = |i: u32| slice.field(i as usize).exponent()[0];
    block.cochain_from_values(c.p, |key| {
        let ext: Vec<u32> = key.exterior.iter().map(|&g| degree(g)).collect();
        let sym: Vec<u32> = match &key.module {
            ModuleSlots::Sym(s) => s.iter().map(|&g| degree(g)).collect(),
            _ => Vec::new(),
        };
        if sym.len() != c.m {
            return Rational::zero();
        }
        c.value(&ext, &sym)
    })
}

/// A directed graph in which every vertex has exactly one outgoing edge.
/// Vertex `v` points to `targets[v]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WheelGraph {
    targets: Vec<usize>,
}

impl WheelGraph {
    /// `Γ_r`: sources `0, 2, …` each feeding the internal vertex after it;
    /// internal vertices `1, 3, …` form a ring of length `r`.
    pub fn wheel(r: usize) -> Self {
        assert!(r >= 1, "a wheel needs at least one spoke");
        let targets = (0..2 * r)
            .map(|v| if v % 2 == 0 { v + 1 } else { (v + 2) % (2 * r) })
            .collect();
        WheelGraph { targets }
    }

    pub fn from_targets(targets: Vec<usize>) -> Result<Self, CocycleError> {
        let g = WheelGraph { targets };
        g.validate()?;
        Ok(g)
    }

    pub fn disjoint_union(&self, other: &WheelGraph) -> Self {
        let k = self.targets.len();
        let mut targets = self.targets.clone();
        targets.extend(other.targets.iter().map(|t| t + k));
        WheelGraph { targets }
    }

    pub fn n_vertices(&self) -> usize {
        self.targets.len()
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.targets.len()];
        for &t in &self.targets {
            d[t] += 1;
        }
        d
    }

    pub fn n_sources(&self) -> usize {
        self.in_degrees().iter().filter(|&&d| d == 0).count()
    }

    /// One outgoing edge per vertex and in-degrees in `{0, 2}`.
    pub fn validate(&self) -> Result<(), CocycleError> {
        let n = self.targets.len();
        if let Some(&t) = self.targets.iter().find(|&&t| t >= n) {
            return Err(CocycleError::InvalidGraph(format!("edge to missing vertex {t}")));
        }
        if let Some(v) = self.in_degrees().iter().position(|&d| d != 0 && d != 2) {
            return Err(CocycleError::InvalidGraph(format!("vertex {v} has in-degree {}", self.in_degrees()[v])));
        }
        Ok(())
    }

    /// Contraction of the fields placed at the vertices: each edge `v → w`
    /// pairs the direction of `v` with one variable of the monomial at `w`.
    fn contract(&self, placed: &[&MonomialVectorField]) -> i64 {
        let mut incoming: Vec<Vec<usize>> = vec![Vec::new(); self.targets.len()];
        for (v, &t) in self.targets.iter().enumerate() {
            incoming[t].push(v);
        }
        let mut total = 1i64;
        for (w, ins) in incoming.iter().enumerate() {
            let f = placed[w];
            if f.degree() as usize != ins.len() {
                return 0;
            }
            let mut vars: Vec<usize> = Vec::new();
            for (k, &e) in f.exponent().iter().enumerate() {
                vars.extend(std::iter::repeat_n(k, e as usize));
            }
            // Bijections between incoming edges and the variable slots.
            let count = Permutation::all(ins.len())
                .iter()
                .filter(|s| {
                    let s0 = zero_based(s);
                    ins.iter().enumerate().all(|(a, &v)| placed[v].direction() == vars[s0[a]])
                })
                .count();
            total *= count as i64;
            if total == 0 {
                return 0;
            }
        }
        total
    }

    /// The alternated contraction on an ordered tuple of fields.
    pub fn evaluate(&self, args: &[&MonomialVectorField]) -> Rational {
        if args.len() != self.targets.len() {
            return Rational::zero();
        }
        let mut total = 0i64;
        for s in Permutation::all(args.len()) {
            let placed: Vec<&MonomialVectorField> = zero_based(&s).iter().map(|&i| args[i]).collect();
            let c = self.contract(&placed);
            if c != 0 {
                total += s.sign() * c;
            }
        }
        Rational::from(total)
    }
}

/// A graph cochain expressed in a relative block.
#[derive(Debug, Clone)]
pub struct GraphCochain {
    pub graph: WheelGraph,
    pub degree: usize,
    /// Coordinates in the block's degree-`degree` space.
    pub vector: SparseVector,
}

impl GraphCochain {
    pub fn is_zero(&self) -> bool {
        self.vector.is_empty()
    }
}

/// The relative block `C(W_n, gl_n; k)` up to degree `p_max`.
pub fn wheel_block(n: usize, p_max: usize) -> Result<CochainComplexBlock, CocycleError> {
    Ok(build_relative_complex(&AlgebraFamily::W { n }, &ReductivePart::AllBlocks, ModuleSpec::Trivial, p_max)?)
}

/// The cochain of a graph in `block`, which must be a relative `(W_n, gl_n)`
/// block with trivial coefficients reaching the graph's degree.
pub fn graph_cochain(graph: &WheelGraph, block: &CochainComplexBlock) -> Result<GraphCochain, CocycleError> {
    graph.validate()?;
    let slice = block.slice().ok_or(CocycleError::NotInSpace)?;
    let p = graph.n_vertices();
    let vector = block
        .cochain_from_values(p, |key| {
            let args: Vec<&MonomialVectorField> = key.exterior.iter().map(|&g| slice.field(g as usize)).collect();
            graph.evaluate(&args)
        })
        .ok_or(CocycleError::NotInSpace)?;
    Ok(GraphCochain { graph: graph.clone(), degree: p, vector })
}

/// `c_{Γ_r}` on `(W_n, gl_n)`.
pub fn wheel_cocycle(r: usize, n: usize) -> Result<GraphCochain, CocycleError> {
    let block = wheel_block(n, 2 * r)?;
    graph_cochain(&WheelGraph::wheel(r), &block)
}

/// `c_{Γ_{r_1} ⊔ … ⊔ Γ_{r_j}}` in `block`.
pub fn wheel_product(rs: &[usize], block: &CochainComplexBlock) -> Result<GraphCochain, CocycleError> {
    let mut it = rs.iter();
    let first = it.next().ok_or_else(|| CocycleError::InvalidGraph("empty product".into()))?;
    let g = it.fold(WheelGraph::wheel(*first), |acc, &r| acc.disjoint_union(&WheelGraph::wheel(r)));
    graph_cochain(&g, block)
}

type Mat = Vec<Vec<Rational>>;

fn zero_mat(n: usize) -> Mat {
    vec![vec![Rational::zero(); n]; n]
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut c = zero_mat(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    c[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    c
}

fn trace(a: &Mat) -> Rational {
    (0..a.len()).map(|i| a[i][i].clone()).sum()
}

/// Linear part of a field as a matrix: `x_i ∂_j ↦ E_{ij}`.
fn linear_part(n: usize, terms: &[(MonomialVectorField, i64)]) -> Mat {
    let mut m = zero_mat(n);
    for (f, c) in terms {
        if let Some((i, j)) = f.linear_indices() {
            m[i][j] += Rational::from(*c);
        }
    }
    m
}

/// `Ω(u, v) = −π([u, v])`.
fn curvature(n: usize, u: &MonomialVectorField, v: &MonomialVectorField) -> Mat {
    let mut m = linear_part(n, &bracket(u, v));
    for row in &mut m {
        for x in row.iter_mut() {
            *x = -x.clone();
        }
    }
    m
}

/// `Σ_ρ Π_i tr(X_{ρ(..)} ⋯)` over all assignments of the matrices to the
/// cycle positions of `λ`: the polarization of `Π_i tr(X^{λ_i})`.
fn polarized_power_sum(lambda: &Partition, xs: &[Mat]) -> Rational {
    let d = lambda.size();
    assert_eq!(xs.len(), d);
    let n = xs.first().map_or(0, Vec::len);
    let mut total = Rational::zero();
    for rho in Permutation::all(d) {
        let rho = zero_based(&rho);
        let mut prod = Rational::one();
        let mut pos = 0;
        for &len in lambda.parts() {
            let mut acc: Option<Mat> = None;
            for k in pos..pos + len {
                let x = &xs[rho[k]];
                acc = Some(match acc {
                    None => x.clone(),
                    Some(a) => mat_mul(&a, x),
                });
            }
            pos += len;
            prod *= trace(&acc.unwrap_or_else(|| zero_mat(n)));
            if prod.is_zero() {
                break;
            }
        }
        total += prod;
    }
    total
}

/// `ξ_{λ,n}` on ordered arguments: the alternation over exterior arguments of
/// the polarized invariant `Π tr(X^{λ_i})` applied to `n` curvatures and the
/// linear parts of the `m` symmetric arguments.
pub fn xi_value(lambda: &Partition, n: usize, ext: &[&MonomialVectorField], sym: &[&MonomialVectorField]) -> Rational {
    if ext.len() != 2 * n || lambda.size() != n + sym.len() {
        return Rational::zero();
    }
    if sym.iter().any(|f| !f.is_linear()) {
        return Rational::zero();
    }
    let consts = ext.iter().filter(|f| f.degree() == 0).count();
    let quads = ext.iter().filter(|f| f.degree() == 2).count();
    if consts != n || quads != n {
        return Rational::zero();
    }
    let pis: Vec<Mat> = sym.iter().map(|f| linear_part(n, &[((*f).clone(), 1)])).collect();
    let mut total = Rational::zero();
    for s in Permutation::all(2 * n) {
        let a = &zero_based(&s);
        // Only ordered pairs (constant, quadratic) bracket into linear fields.
        if (0..n).any(|k| ext[a[2 * k]].degree() + ext[a[2 * k + 1]].degree() != 2) {
            continue;
        }
        let mut xs: Vec<Mat> = (0..n).map(|k| curvature(n, ext[a[2 * k]], ext[a[2 * k + 1]])).collect();
        xs.extend(pis.iter().cloned());
        let v = polarized_power_sum(lambda, &xs);
        if !v.is_zero() {
            total += v * Rational::from(s.sign());
        }
    }
    total
}

/// `ξ_{λ,n}` expressed in a relative block.
#[derive(Debug, Clone)]
pub struct XiCocycle {
    pub lambda: Partition,
    pub n: usize,
    pub m: usize,
    /// Coordinates in degree `2n`, scaled so the first nonzero entry is 1.
    pub vector: SparseVector,
    pub warning: Option<CocycleWarning>,
}

/// The relative block `C(W_n, gl_n; S^m W_n*)` through degree `2n`.
pub fn xi_block(n: usize, m: usize) -> Result<CochainComplexBlock, CocycleError> {
    let spec = ModuleSpec::sym(m).map_err(|_| CocycleError::WrongBlock { expected: m })?;
    Ok(build_relative_complex(&AlgebraFamily::W { n }, &ReductivePart::AllBlocks, spec, 2 * n)?)
}

pub fn xi_lambda(lambda: &Partition, n: usize, m: usize, block: &CochainComplexBlock) -> Result<XiCocycle, CocycleError> {
    if lambda.size() != m + n {
        return Err(CocycleError::SizeMismatch { lambda: lambda.to_string(), size: lambda.size(), expected: m + n });
    }
    let warning = (lambda.len() > n).then_some(CocycleWarning::LengthExceeded { length: lambda.len(), n });
    let slice = block.slice().ok_or(CocycleError::NotInSpace)?;
    let mut vector = block
        .cochain_from_values(2 * n, |key| {
            let ext: Vec<&MonomialVectorField> = key.exterior.iter().map(|&g| slice.field(g as usize)).collect();
            let sym: Vec<&MonomialVectorField> = match &key.module {
                ModuleSlots::Sym(s) => s.iter().map(|&g| slice.field(g as usize)).collect(),
                _ => Vec::new(),
            };
            if sym.len() != m {
                return Rational::zero();
            }
            xi_value(lambda, n, &ext, &sym)
        })
        .ok_or(CocycleError::NotInSpace)?;
    normalize_leading(&mut vector);
    Ok(XiCocycle { lambda: lambda.clone(), n, m, vector, warning })
}

/// Scales `v` so its first nonzero entry is 1.
pub fn normalize_leading(v: &mut SparseVector) {
    if let Some((_, lead)) = v.first() {
        let inv = lead.recip();
        for (_, x) in v.iter_mut() {
            *x = &*x * &inv;
        }
    }
}

/// Whether two vectors are nonzero multiples of each other.
pub fn proportional(a: &SparseVector, b: &SparseVector) -> bool {
    if a.is_empty() || b.is_empty() || a.len() != b.len() {
        return false;
    }
    let ratio = &a[0].1 / &b[0].1;
    a.iter().zip(b).all(|((i, x), (j, y))| i == j && *x == y * &ratio)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn differential_examples() {
        assert!(w1_differential(&PolyChain::constant(0, 0, Rational::one())).is_zero());
        let d = w1_differential(&PolyChain::y(1, 0, 0));
        let y = |i| PolyChain::y(2, 0, i);
        assert_eq!(d, y(0).mul(&y(0)).sub(&y(1).mul(&y(1))));
    }

    #[test]
    fn a_cocycles_are_closed() {
        for m in 1..=3 {
            let (a2, a3) = a_cocycles(m);
            assert!(a2.is_skew_symmetric() && a2.is_symmetric_in_z());
            assert!(a3.is_skew_symmetric() && a3.is_symmetric_in_z());
            assert!(w1_differential(&a2).is_zero(), "d a_2{m} = {}", w1_differential(&a2));
            assert!(w1_differential(&a3).is_zero(), "d a_3{m} = {}", w1_differential(&a3));
        }
    }

    #[test]
    fn a20_is_exact() {
        let y = |i| PolyChain::y(2, 0, i);
        let a20 = y(0).mul(&y(0)).sub(&y(1).mul(&y(1)));
        assert!(is_exact(&a20));
    }

    #[test]
    fn wheel_shape() {
        let g = WheelGraph::wheel(3);
        assert_eq!(g.in_degrees(), vec![0, 2, 0, 2, 0, 2]);
        g.validate().unwrap();
        assert!(WheelGraph::from_targets(vec![1, 0]).is_err());
    }

    #[test]
    fn display() {
        let (a2, _) = a_cocycles(1);
        assert_eq!(a2.to_string(), "y1^2z1 - y2^2z1");
    }
}
