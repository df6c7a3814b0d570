use std::collections::{BTreeMap, BTreeSet};

use super::{Rational, SparseRationalMatrix, SparseVector};

/// Pivot selection used by [`rank_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotStrategy {
    /// Left-looking elimination: rows are inserted one at a time, shortest first,
    /// and reduced against earlier pivots by their leading entry.
    Incremental,
    /// Right-looking elimination that picks the pivot minimising the Markowitz
    /// count `(row_nnz - 1) * (col_nnz - 1)` among the entries of a shortest row.
    Markowitz,
}

/// `a - f * b` for sorted sparse vectors.
pub fn axpy(a: &[(usize, Rational)], f: &Rational, b: &[(usize, Rational)]) -> SparseVector {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|e| e.0);
        let cb = b.get(j).map(|e| e.0);
        match (ca, cb) {
            (Some(x), Some(y)) if x == y => {
                let v = &a[i].1 - &(f * &b[j].1);
                if !v.is_zero() {
                    out.push((x, v));
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push((x, a[i].1.clone()));
                i += 1;
            }
            (Some(x), None) => {
                out.push((x, a[i].1.clone()));
                i += 1;
            }
            (_, Some(y)) => {
                out.push((y, -(f * &b[j].1)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

pub fn scale(v: &[(usize, Rational)], f: &Rational) -> SparseVector {
    if f.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x * f)).collect()
}

/// Sorts by index, merges repeats and drops zeros.
pub fn normalize(mut v: Vec<(usize, Rational)>) -> SparseVector {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVector = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y += x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

pub fn coeff(v: &[(usize, Rational)], i: usize) -> Option<&Rational> {
    v.binary_search_by_key(&i, |e| e.0).ok().map(|k| &v[k].1)
}

/// An echelon basis of a growing subspace of `k^dim`.
///
/// Each stored row has leading coefficient 1 at a column no other row leads at.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseVector>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon { pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` by leading entries until its leading column carries no pivot.
    /// The result is empty iff `v` lies in the span.
    pub fn reduce(&self, mut v: SparseVector) -> SparseVector {
        loop {
            let Some((c, x)) = v.first().cloned() else { return v };
            match self.pivots.get(&c) {
                Some(p) => v = axpy(&v, &x, p),
                None => return v,
            }
        }
    }

    pub fn contains(&self, v: &[(usize, Rational)]) -> bool {
        self.reduce(v.to_vec()).is_empty()
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: SparseVector) -> bool {
        let r = self.reduce(v);
        match r.first() {
            None => false,
            Some((c, x)) => {
                let c = *c;
                let inv = x.recip();
                self.pivots.insert(c, scale(&r, &inv));
                true
            }
        }
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Back-substitutes so that every pivot column is zero in all other rows.
    /// Returns `(pivot column, row)` pairs sorted by column.
    pub fn into_reduced(self) -> Vec<(usize, SparseVector)> {
        let mut done: BTreeMap<usize, SparseVector> = BTreeMap::new();
        for (c, mut row) in self.pivots.into_iter().rev() {
            let targets: Vec<(usize, Rational)> =
                row.iter().filter(|(j, _)| *j != c && done.contains_key(j)).cloned().collect();
            for (j, x) in targets {
                if let Some(x) = coeff(&row, j).cloned() {
                    row = axpy(&row, &x, &done[&j]);
                } else {
                    debug_assert!(x.is_zero());
                }
            }
            done.insert(c, row);
        }
        done.into_iter().collect()
    }
}

fn rows_shortest_first(m: &SparseRationalMatrix) -> Vec<usize> {
    let mut order: Vec<usize> = (0..m.rows()).filter(|&r| !m.row(r).is_empty()).collect();
    order.sort_by_key(|&r| (m.row(r).len(), r));
    order
}

fn echelon_of(m: &SparseRationalMatrix) -> Echelon {
    let mut e = Echelon::new();
    for r in rows_shortest_first(m) {
        e.insert(m.row(r).to_vec());
    }
    e
}

fn rank_markowitz(m: &SparseRationalMatrix) -> usize {
    let mut rows: Vec<SparseVector> = m.row_vectors().to_vec();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols()];
    let mut active: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (r, row) in rows.iter().enumerate() {
        if !row.is_empty() {
            active.insert((row.len(), r));
        }
        for (c, _) in row {
            col_rows[*c].insert(r);
        }
    }
    let mut rank = 0;
    while let Some(&(len, r)) = active.iter().next() {
        active.remove(&(len, r));
        let pivot_row = std::mem::take(&mut rows[r]);
        for (c, _) in &pivot_row {
            col_rows[*c].remove(&r);
        }
        let (pc, pv) = pivot_row
            .iter()
            .min_by_key(|(c, _)| (col_rows[*c].len(), *c))
            .cloned()
            .expect("active rows are nonempty");
        rank += 1;
        let others: Vec<usize> = col_rows[pc].iter().copied().collect();
        for s in others {
            let old = std::mem::take(&mut rows[s]);
            active.remove(&(old.len(), s));
            for (c, _) in &old {
                col_rows[*c].remove(&s);
            }
            let f = coeff(&old, pc).expect("column index is exact") / &pv;
            let new = axpy(&old, &f, &pivot_row);
            for (c, _) in &new {
                col_rows[*c].insert(s);
            }
            if !new.is_empty() {
                active.insert((new.len(), s));
            }
            rows[s] = new;
        }
    }
    rank
}

/// Exact rank over the rationals, using Markowitz pivoting.
pub fn rank(m: &SparseRationalMatrix) -> usize {
    rank_with(m, PivotStrategy::Markowitz)
}

pub fn rank_with(m: &SparseRationalMatrix, strategy: PivotStrategy) -> usize {
    match strategy {
        PivotStrategy::Incremental => echelon_of(m).rank(),
        PivotStrategy::Markowitz => rank_markowitz(m),
    }
}

/// Reduced row echelon form: `(pivot column, row)` pairs sorted by column.
pub fn rref(m: &SparseRationalMatrix) -> Vec<(usize, SparseVector)> {
    echelon_of(m).into_reduced()
}

/// Kernel basis together with the free column attached to each vector.
///
/// Vector `k` has coordinate 1 at `free[k]` and 0 at every other free column,
/// so the coordinates of any kernel element in this basis are its values at
/// the free columns.
pub fn kernel_with_free_columns(m: &SparseRationalMatrix) -> (Vec<usize>, Vec<SparseVector>) {
    let reduced = rref(m);
    let mut is_pivot = vec![false; m.cols()];
    for (c, _) in &reduced {
        is_pivot[*c] = true;
    }
    let free: Vec<usize> = (0..m.cols()).filter(|&c| !is_pivot[c]).collect();
    let mut column_hits: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
    for (pc, row) in &reduced {
        for (j, x) in row {
            if *j != *pc {
                column_hits.entry(*j).or_default().push((*pc, -x));
            }
        }
    }
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = column_hits.remove(&f).unwrap_or_default();
            v.push((f, Rational::one()));
            normalize(v)
        })
        .collect();
    (free, basis)
}

pub fn kernel_basis(m: &SparseRationalMatrix) -> Vec<SparseVector> {
    kernel_with_free_columns(m).1
}

/// Dimension of the span of the given vectors.
pub fn span_rank(vectors: &[SparseVector]) -> usize {
    let mut e = Echelon::new();
    let mut order: Vec<&SparseVector> = vectors.iter().collect();
    order.sort_by_key(|v| v.len());
    for v in order {
        e.insert(v.clone());
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn axpy_cancels() {
        let a = vec![(0, q(2)), (3, q(1))];
        let b = vec![(0, q(1)), (1, q(5))];
        assert_eq!(axpy(&a, &q(2), &b), vec![(1, q(-10)), (3, q(1))]);
    }

    #[test]
    fn rref_is_reduced() {
        let m = SparseRationalMatrix::from_dense(&[vec![1, 2, 3], vec![2, 4, 7], vec![1, 2, 4]]);
        let r = rref(&m);
        assert_eq!(r.len(), 2);
        for (c, row) in &r {
            assert_eq!(coeff(row, *c), Some(&Rational::one()));
            for (c2, _) in &r {
                if c2 != c {
                    assert!(coeff(row, *c2).is_none());
                }
            }
        }
    }

    #[test]
    fn echelon_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(vec![(0, q(1)), (1, q(1))]));
        assert!(!e.insert(vec![(0, q(3)), (1, q(3))]));
        assert!(e.contains(&[(0, q(-2)), (1, q(-2))]));
        assert!(!e.contains(&[(1, q(1))]));
    }

    #[test]
    fn strategies_agree_small() {
        let m = SparseRationalMatrix::from_dense(&[
            vec![0, 1, 1, 0],
            vec![1, 0, 0, 1],
            vec![1, 1, 1, 1],
            vec![2, 0, 0, 2],
        ]);
        assert_eq!(rank_with(&m, PivotStrategy::Incremental), 2);
        assert_eq!(rank_with(&m, PivotStrategy::Markowitz), 2);
    }
}
