use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use crate::exactlin::{kernel_basis, span_rank, SparseVector};

use super::{CeError, CochainComplexBlock};

/// A cochain complex whose basis vectors carry filtration levels; `F^p` is
/// spanned by basis vectors of level `≥ p`.
#[derive(Debug, Clone)]
pub struct FilteredComplexBlock {
    block: CochainComplexBlock,
    levels: Vec<Vec<usize>>,
}

impl FilteredComplexBlock {
    /// Checks that the levels match the dimensions and that the differential
    /// never lowers the level.
    pub fn new(block: CochainComplexBlock, levels: Vec<Vec<usize>>) -> Result<Self, CeError> {
        if levels.len() != block.dims().len() || levels.iter().zip(block.dims()).any(|(l, &d)| l.len() != d) {
            return Err(CeError::Shape("one level per basis vector is required".into()));
        }
        for p in 0..=block.p_max() {
            for (r, c, _) in block.differential(p).triplets() {
                if levels[p + 1][r] < levels[p][c] {
                    return Err(CeError::BadFiltration { degree: p });
                }
            }
        }
        Ok(FilteredComplexBlock { block, levels })
    }

    pub fn block(&self) -> &CochainComplexBlock {
        &self.block
    }

    pub fn levels(&self, degree: usize) -> &[usize] {
        &self.levels[degree]
    }

    pub fn max_level(&self) -> usize {
        self.levels.iter().flatten().copied().max().unwrap_or(0)
    }
}

/// One page `E_r` of the spectral sequence of a filtered complex, indexed by
/// `(p, q)` with total degree `p + q`. Only nonzero entries are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralPage {
    pub r: usize,
    pub entries: BTreeMap<(usize, i64), usize>,
    /// Rank of `d_r` leaving each entry.
    pub differential_ranks: BTreeMap<(usize, i64), usize>,
}

impl SpectralPage {
    pub fn dim(&self, p: usize, q: i64) -> usize {
        self.entries.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.entries
            .iter()
            .map(|(&(p, q), &d)| if (p as i64 + q).rem_euclid(2) == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    /// Total dimension in each total degree.
    pub fn totals(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for (&(p, q), &d) in &self.entries {
            *out.entry((p as i64 + q) as usize).or_insert(0) += d;
        }
        out
    }

    /// True if every nonzero entry sits at `p = q`.
    pub fn is_diagonal(&self) -> bool {
        self.entries.keys().all(|&(p, q)| p as i64 == q)
    }
}

struct Pages<'a> {
    f: &'a FilteredComplexBlock,
    cache: Mutex<HashMap<(i64, i64, usize), Vec<SparseVector>>>,
}

impl<'a> Pages<'a> {
    fn levels(&self, n: usize) -> &[usize] {
        &self.f.levels[n]
    }

    /// `F^p C^n` in basis coordinates.
    fn filtration(&self, p: i64, n: usize) -> Vec<SparseVector> {
        self.levels(n)
            .iter()
            .enumerate()
            .filter(|(_, &l)| l as i64 >= p)
            .map(|(i, _)| vec![(i, crate::exactlin::Rational::one())])
            .collect()
    }

    /// `Z_r^{p,n} = {x ∈ F^p C^n : d x ∈ F^{p+r} C^{n+1}}`; `F^p` for `r ≤ 0`.
    fn z(&self, r: i64, p: i64, n: usize) -> Vec<SparseVector> {
        if let Some(v) = self.cache.lock().expect("cache lock").get(&(r, p, n)) {
            return v.clone();
        }
        let out = if r <= 0 || n > self.f.block.p_max() {
            self.filtration(p, n)
        } else {
            let cols: Vec<usize> =
                self.levels(n).iter().enumerate().filter(|(_, &l)| l as i64 >= p).map(|(i, _)| i).collect();
            let rows: Vec<usize> = self.levels(n + 1)
                .iter()
                .enumerate()
                .filter(|(_, &l)| (l as i64) < p + r)
                .map(|(i, _)| i)
                .collect();
            let sub = self.f.block.differential(n).select_rows(&rows).select_cols(&cols);
            kernel_basis(&sub)
                .into_iter()
                .map(|v| v.into_iter().map(|(i, x)| (cols[i], x)).collect())
                .collect()
        };
        self.cache.lock().expect("cache lock").insert((r, p, n), out.clone());
        out
    }

    /// `d(Z_r^{p,n-1})` inside `C^n`.
    fn dz(&self, r: i64, p: i64, n: usize) -> Vec<SparseVector> {
        if n == 0 {
            return Vec::new();
        }
        let d = self.f.block.differential(n - 1);
        self.z(r, p, n - 1).iter().map(|v| d.mul_vec(v)).filter(|v| !v.is_empty()).collect()
    }

    fn dim_sum(&self, parts: &[Vec<SparseVector>]) -> usize {
        let all: Vec<SparseVector> = parts.iter().flatten().cloned().collect();
        span_rank(&all)
    }

    /// `(dim E_r^{p,n}, rank of d_r leaving it)`.
    fn entry(&self, r: i64, p: i64, n: usize) -> (usize, usize) {
        let z = span_rank(&self.z(r, p, n));
        let lower = self.z(r - 1, p + 1, n);
        let boundary = self.dz(r - 1, p - r + 1, n);
        let denom = self.dim_sum(&[lower.clone(), boundary]);
        let e = z - denom;
        let kernel = self.dim_sum(&[self.z(r + 1, p, n), lower]) - denom;
        (e, e - kernel)
    }
}

/// Pages `E_1, …, E_{r_max}` of the spectral sequence of `filtered`, covering
/// total degrees `0..=p_max`.
pub fn hochschild_serre_pages(filtered: &FilteredComplexBlock, r_max: usize) -> Vec<SpectralPage> {
    let pages = Pages { f: filtered, cache: Mutex::new(HashMap::new()) };
    let top = filtered.block.p_max();
    let max_level = filtered.max_level();
    (1..=r_max.max(1))
        .map(|r| {
            let mut entries = BTreeMap::new();
            let mut differential_ranks = BTreeMap::new();
            for n in 0..=top {
                for p in 0..=max_level {
                    let (e, rank) = pages.entry(r as i64, p as i64, n);
                    let q = n as i64 - p as i64;
                    if e > 0 {
                        entries.insert((p, q), e);
                    }
                    if rank > 0 {
                        differential_ranks.insert((p, q), rank);
                    }
                }
            }
            SpectralPage { r, entries, differential_ranks }
        })
        .collect()
}
