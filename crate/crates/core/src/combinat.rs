//! Partitions, permutations, weights and the integer polynomials used for
//! Poincaré series.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CombinatError {
    #[error("parts {0:?} are not a non-increasing list of positive integers")]
    InvalidPartition(Vec<usize>),
    #[error("images {0:?} are not a permutation of 1..=N")]
    InvalidPermutation(Vec<usize>),
    #[error("permutation of {perm} points applied to a weight of length {weight}")]
    LengthMismatch { perm: usize, weight: usize },
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// `binomial(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> BigUint {
    let mut c = BigUint::one();
    for i in 0..n {
        c *= 2 * n - i;
        c /= i + 1;
    }
    c / (n + 1)
}

/// A Young diagram, listed by row lengths.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, CombinatError> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        if ok {
            Ok(Partition { parts })
        } else {
            Err(CombinatError::InvalidPartition(parts))
        }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn transpose(&self) -> Partition {
        let w = self.parts.first().copied().unwrap_or(0);
        let parts = (0..w).map(|j| self.parts.iter().filter(|&&p| p > j).count()).collect();
        Partition { parts }
    }

    /// Cells as `(row, column)`, zero-based, row by row.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts.iter().enumerate().flat_map(|(i, &p)| (0..p).map(move |j| (i, j)))
    }

    pub fn hook(&self, row: usize, col: usize) -> usize {
        let t = self.transpose();
        (self.parts[row] - col - 1) + (t.parts[col] - row - 1) + 1
    }

    pub fn content(row: usize, col: usize) -> i64 {
        col as i64 - row as i64
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Partitions of `total` with parts at most `max_part`, in decreasing
/// lexicographic order.
pub fn partitions_bounded(total: usize, max_part: usize) -> Vec<Partition> {
    fn go(rest: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=cap.min(rest)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, max_part, &mut Vec::new(), &mut out);
    out
}

pub fn partitions(total: usize) -> Vec<Partition> {
    partitions_bounded(total, total)
}

/// `dim S^λ(k^n)` by the hook-content formula.
pub fn schur_dim(lambda: &Partition, n: usize) -> u64 {
    if lambda.len() > n {
        return 0;
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for (i, j) in lambda.cells() {
        let c = n as i64 + Partition::content(i, j);
        num *= c as u64;
        den *= lambda.hook(i, j) as u64;
    }
    (num / den).to_u64().expect("Schur dimension fits in u64")
}

/// Compares `dim Λ^k(k^a ⊗ k^b)` with `Σ_{|λ|=k} dim S^{λᵗ}(k^a) · dim S^λ(k^b)`.
pub fn howe_exterior_check(k: usize, a: usize, b: usize) -> bool {
    let lhs = binomial((a * b) as u64, k as u64);
    let rhs: u64 = partitions(k).iter().map(|l| schur_dim(&l.transpose(), a) * schur_dim(l, b)).sum();
    lhs == rhs
}

/// A permutation of `1..=N`, stored by its images.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, CombinatError> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &i in &images {
            if i == 0 || i > n || seen[i] {
                return Err(CombinatError::InvalidPermutation(images));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `ω(i)` for `i` in `1..=N`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.size(), other.size(), "composing permutations of different sizes");
        Permutation { images: other.images.iter().map(|&i| self.apply(i)).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.size()];
        for (i, &w) in self.images.iter().enumerate() {
            images[w - 1] = i + 1;
        }
        Permutation { images }
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let n = self.size();
        (0..n).map(|i| (i + 1..n).filter(|&j| self.images[i] > self.images[j]).count()).sum()
    }

    pub fn sign(&self) -> i64 {
        if self.length().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// All permutations of `1..=n` in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Permutation> {
        fn go(n: usize, used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Permutation>) {
            if cur.len() == n {
                out.push(Permutation { images: cur.clone() });
                return;
            }
            for i in 1..=n {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    go(n, used, cur, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(n, &mut vec![false; n + 1], &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.images.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", s.join(" "))
    }
}

/// Permutations of `1..=m+n` increasing on `1..=m` and on `m+1..=m+n`, with
/// their lengths.
pub fn shuffles(m: usize, n: usize) -> Vec<(Permutation, usize)> {
    fn subsets(start: usize, end: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=end {
            if end + 1 - i < k - cur.len() {
                break;
            }
            cur.push(i);
            subsets(i + 1, end, k, cur, out);
            cur.pop();
        }
    }
    let total = m + n;
    let mut heads = Vec::new();
    subsets(1, total, m, &mut Vec::new(), &mut heads);
    heads
        .into_iter()
        .map(|head| {
            let tail: Vec<usize> = (1..=total).filter(|i| !head.contains(i)).collect();
            let mut images = head;
            images.extend(tail);
            let p = Permutation { images };
            let l = p.length();
            (p, l)
        })
        .collect()
}

/// An integral weight of `gl_N`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// Dominant for the Levi `gl_m ⊕ gl_n`: non-increasing on both blocks.
    pub fn is_dominant_for_blocks(&self, m: usize) -> bool {
        let (a, b) = self.0.split_at(m);
        Weight(a.to_vec()).is_dominant() && Weight(b.to_vec()).is_dominant()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// `(ω·λ)_i = λ_{ω(i)} + i − ω(i)`.
///
/// This is a right action: `dot(ω₁∘ω₂, λ) = dot(ω₂, dot(ω₁, λ))`.
pub fn dot_action(w: &Permutation, lambda: &Weight) -> Result<Weight, CombinatError> {
    if w.size() != lambda.len() {
        return Err(CombinatError::LengthMismatch { perm: w.size(), weight: lambda.len() });
    }
    let out = (1..=w.size())
        .map(|i| lambda.0[w.apply(i) - 1] + i as i64 - w.apply(i) as i64)
        .collect();
    Ok(Weight(out))
}

/// Polynomial with nonnegative integer coefficients, indexed from degree 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<u64>,
}

impl Polynomial {
    pub fn from_coeffs(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial { coeffs: vec![1] }
    }

    pub fn monomial(degree: usize, c: u64) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = c;
        Polynomial::from_coeffs(coeffs)
    }

    pub fn from_dims(dims: &BTreeMap<usize, usize>) -> Self {
        let top = dims.keys().next_back().copied().unwrap_or(0);
        let mut coeffs = vec![0; top + 1];
        for (&d, &v) in dims {
            coeffs[d] = v as u64;
        }
        Polynomial::from_coeffs(coeffs)
    }

    /// Nonzero coefficients keyed by degree.
    pub fn to_dims(&self) -> BTreeMap<usize, usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(d, &c)| (d, c as usize))
            .collect()
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> u64 {
        self.coeffs.get(d).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn value_at_one(&self) -> u64 {
        self.coeffs.iter().sum()
    }

    /// Alternating sum of coefficients.
    pub fn value_at_minus_one(&self) -> i64 {
        self.coeffs.iter().enumerate().map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }

    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        (0..e).fold(Polynomial::one(), |acc, _| &acc * self)
    }

    /// `p(t) ↦ p(t^k)`.
    pub fn stretch(&self, k: usize) -> Polynomial {
        let mut coeffs = vec![0; (self.coeffs.len().max(1) - 1) * k + 1];
        for (d, &c) in self.coeffs.iter().enumerate() {
            coeffs[d * k] = c;
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl<'b> Add<&'b Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'b Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..n).map(|d| self.coeff(d) + rhs.coeff(d)).collect())
    }
}

impl<'b> Mul<&'b Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'b Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (d, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && d > 0 { String::new() } else { c.to_string() };
            terms.push(match d {
                0 => coef,
                1 => format!("{coef}q"),
                _ => format!("{coef}q^{d}"),
            });
        }
        write!(f, "{}", terms.join(" + "))
    }
}

/// `Σ_ω q^{2·length(ω)}` over the `(m, n)` shuffles.
pub fn grassmannian_poincare(m: usize, n: usize) -> Polynomial {
    shuffles(m, n)
        .iter()
        .fold(Polynomial::zero(), |acc, (_, l)| &acc + &Polynomial::monomial(2 * l, 1))
}

/// Gaussian binomial coefficient `[n choose k]_t` as a polynomial in `t`.
pub fn gaussian_binomial(n: usize, k: usize) -> Polynomial {
    if k > n {
        return Polynomial::zero();
    }
    // Pascal rule [n,k] = [n-1,k-1] + t^k [n-1,k].
    let mut table: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one()]];
    for i in 1..=n {
        let mut row = Vec::with_capacity(i + 1);
        for j in 0..=i {
            let left = if j >= 1 { table[i - 1][j - 1].clone() } else { Polynomial::zero() };
            let right = if j < i {
                &Polynomial::monomial(j, 1) * &table[i - 1][j]
            } else {
                Polynomial::zero()
            };
            row.push(&left + &right);
        }
        table.push(row);
    }
    table[n][k].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn partition_examples() {
        assert_eq!(partitions_bounded(0, 3), vec![Partition::empty()]);
        assert_eq!(partitions_bounded(3, 2), vec![p(&[2, 1]), p(&[1, 1, 1])]);
        assert_eq!(partitions_bounded(4, 2), vec![p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]);
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(p(&[3, 1]).transpose(), p(&[2, 1, 1]));
    }

    #[test]
    fn catalan_examples() {
        assert_eq!(catalan(0), BigUint::from(1u32));
        assert_eq!(catalan(3), BigUint::from(5u32));
        assert_eq!(catalan(5), BigUint::from(42u32));
    }

    #[test]
    fn shuffle_examples() {
        let lengths = |m, n| {
            let mut l: Vec<usize> = shuffles(m, n).into_iter().map(|x| x.1).collect();
            l.sort();
            l
        };
        assert_eq!(lengths(1, 1), vec![0, 1]);
        assert_eq!(lengths(1, 2), vec![0, 1, 2]);
        assert_eq!(lengths(2, 2), vec![0, 1, 2, 2, 3, 4]);
    }

    #[test]
    fn grassmannian_examples() {
        assert_eq!(grassmannian_poincare(1, 1).coeffs(), &[1, 0, 1]);
        assert_eq!(grassmannian_poincare(1, 2).coeffs(), &[1, 0, 1, 0, 1]);
        assert_eq!(grassmannian_poincare(2, 2).coeffs(), &[1, 0, 1, 0, 2, 0, 1, 0, 1]);
        assert_eq!(grassmannian_poincare(2, 2).to_string(), "1 + q^2 + 2q^4 + q^6 + q^8");
    }

    #[test]
    fn dot_action_examples() {
        let lam = Weight(vec![3, -1, 2]);
        assert_eq!(dot_action(&Permutation::identity(3), &lam).unwrap(), lam);
        let swap = Permutation::new(vec![2, 1]).unwrap();
        assert_eq!(dot_action(&swap, &Weight::zero(2)).unwrap(), Weight(vec![-1, 1]));
        assert!(dot_action(&swap, &Weight::zero(3)).is_err());
    }

    #[test]
    fn schur_examples() {
        assert_eq!(schur_dim(&p(&[1]), 5), 5);
        assert_eq!(schur_dim(&p(&[2]), 2), 3);
        assert_eq!(schur_dim(&p(&[1, 1, 1]), 2), 0);
        assert_eq!(schur_dim(&p(&[1, 1]), 2), 1);
        assert_eq!(schur_dim(&Partition::empty(), 2), 1);
    }

    #[test]
    fn howe_examples() {
        assert!(howe_exterior_check(1, 2, 3));
        assert!(howe_exterior_check(2, 2, 2));
        assert!(howe_exterior_check(4, 2, 2));
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert_eq!(Permutation::all(4).len(), 24);
        let c = Permutation::new(vec![2, 3, 1]).unwrap();
        assert_eq!(c.compose(&c.inverse()), Permutation::identity(3));
        assert_eq!(c.length(), 2);
    }

    #[test]
    fn polynomial_basics() {
        let a = Polynomial::from_coeffs(vec![1, 1]);
        assert_eq!(a.pow(3).coeffs(), &[1, 3, 3, 1]);
        assert_eq!(a.stretch(2).coeffs(), &[1, 0, 1]);
        assert_eq!(Polynomial::from_coeffs(vec![0, 0]), Polynomial::zero());
        assert_eq!(a.pow(2).value_at_minus_one(), 0);
    }
}
