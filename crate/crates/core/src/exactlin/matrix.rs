use std::collections::BTreeMap;
use std::fmt;

use super::{ExactLinError, Rational, SparseVector};

/// Immutable sparse matrix over the rationals, stored by rows.
///
/// Every stored entry is nonzero and lies in range; each row is sorted by
/// column with no repeated column.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparseRationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVector>,
}

impl SparseRationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseRationalMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i, Rational::one())]).collect();
        SparseRationalMatrix { rows: n, cols: n, data }
    }

    /// Builds a matrix from `(row, col, value)` triplets. Repeated positions are
    /// summed and zero results dropped.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Result<Self, ExactLinError>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut acc: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(ExactLinError::IndexOutOfRange { row: r, col: c, rows, cols });
            }
            if v.is_zero() {
                continue;
            }
            *acc[r].entry(c).or_insert_with(Rational::zero) += v;
        }
        let data = acc
            .into_iter()
            .map(|row| row.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Ok(SparseRationalMatrix { rows, cols, data })
    }

    /// Builds a matrix from sparse rows. Entries are normalized the same way as
    /// [`from_triplets`](Self::from_triplets).
    pub fn from_rows(cols: usize, rows: Vec<SparseVector>) -> Result<Self, ExactLinError> {
        let n = rows.len();
        let trip = rows
            .into_iter()
            .enumerate()
            .flat_map(|(r, row)| row.into_iter().map(move |(c, v)| (r, c, v)));
        Self::from_triplets(n, cols, trip)
    }

    /// The matrix whose columns are the given sparse vectors.
    pub fn from_columns(rows: usize, columns: &[SparseVector]) -> Result<Self, ExactLinError> {
        let trip = columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v.clone())));
        Self::from_triplets(rows, columns.len(), trip)
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged dense matrix");
        let trip = rows.iter().enumerate().flat_map(|(r, row)| {
            row.iter().enumerate().map(move |(c, &v)| (r, c, Rational::from(v)))
        });
        Self::from_triplets(rows.len(), cols, trip).expect("indices are in range")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn row(&self, r: usize) -> &[(usize, Rational)] {
        &self.data[r]
    }

    pub fn row_vectors(&self) -> &[SparseVector] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        match self.data[r].binary_search_by_key(&c, |(j, _)| *j) {
            Ok(k) => self.data[r][k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut data: Vec<SparseVector> = vec![Vec::new(); self.cols];
        for (r, c, v) in self.triplets() {
            data[c].push((r, v.clone()));
        }
        SparseRationalMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, other: &SparseRationalMatrix) -> Result<Self, ExactLinError> {
        if self.cols != other.rows {
            return Err(ExactLinError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                for (k, a) in row {
                    for (j, b) in &other.data[*k] {
                        *acc.entry(*j).or_insert_with(Rational::zero) += a * b;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Ok(SparseRationalMatrix { rows: self.rows, cols: other.cols, data })
    }

    /// `self · v` for a sparse column vector `v`.
    pub fn mul_vec(&self, v: &[(usize, Rational)]) -> SparseVector {
        let dense: BTreeMap<usize, &Rational> = v.iter().map(|(i, x)| (*i, x)).collect();
        let mut out = Vec::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut s = Rational::zero();
            for (c, a) in row {
                if let Some(x) = dense.get(c) {
                    s += a * *x;
                }
            }
            if !s.is_zero() {
                out.push((r, s));
            }
        }
        out
    }

    /// Keeps the listed rows, in the listed order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let data = rows.iter().map(|&r| self.data[r].clone()).collect();
        SparseRationalMatrix { rows: rows.len(), cols: self.cols, data }
    }

    /// Keeps the listed columns, renumbered in the listed order.
    pub fn select_cols(&self, cols: &[usize]) -> Self {
        let mut map = vec![usize::MAX; self.cols];
        for (k, &c) in cols.iter().enumerate() {
            map[c] = k;
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut r: SparseVector = row
                    .iter()
                    .filter(|(c, _)| map[*c] != usize::MAX)
                    .map(|(c, v)| (map[*c], v.clone()))
                    .collect();
                r.sort_by_key(|(c, _)| *c);
                r
            })
            .collect();
        SparseRationalMatrix { rows: self.rows, cols: cols.len(), data }
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &SparseRationalMatrix) -> Result<Self, ExactLinError> {
        if self.cols != other.cols {
            return Err(ExactLinError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(SparseRationalMatrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (r, c, v) in self.triplets() {
            out[r][c] = v.clone();
        }
        out
    }
}

impl fmt::Debug for SparseRationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseRationalMatrix({}x{}, nnz={})", self.rows, self.cols, self.nnz())?;
        if self.rows * self.cols <= 64 {
            for row in self.to_dense() {
                let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                write!(f, "\n  [{}]", cells.join(", "))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triplets_merge_and_drop_zero() {
        let m = SparseRationalMatrix::from_triplets(
            2,
            2,
            vec![
                (0, 0, Rational::from(1)),
                (0, 0, Rational::from(-1)),
                (1, 1, Rational::from(2)),
                (1, 1, Rational::from(3)),
            ],
        )
        .unwrap();
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(1, 1), Rational::from(5));
        assert_eq!(m.get(0, 0), Rational::zero());
    }

    #[test]
    fn out_of_range_rejected() {
        let e = SparseRationalMatrix::from_triplets(1, 1, vec![(0, 1, Rational::one())]);
        assert!(matches!(e, Err(ExactLinError::IndexOutOfRange { .. })));
    }

    #[test]
    fn product_and_transpose() {
        let a = SparseRationalMatrix::from_dense(&[vec![1, 2], vec![0, 1]]);
        let b = SparseRationalMatrix::from_dense(&[vec![1, 0], vec![3, 1]]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, SparseRationalMatrix::from_dense(&[vec![7, 2], vec![3, 1]]));
        assert_eq!(a.transpose(), SparseRationalMatrix::from_dense(&[vec![1, 0], vec![2, 1]]));
        let v = a.mul_vec(&[(1, Rational::one())]);
        assert_eq!(v, vec![(0, Rational::from(2)), (1, Rational::one())]);
    }

    #[test]
    fn selections() {
        let a = SparseRationalMatrix::from_dense(&[vec![1, 2, 3], vec![4, 5, 6]]);
        assert_eq!(a.select_cols(&[2, 0]), SparseRationalMatrix::from_dense(&[vec![3, 1], vec![6, 4]]));
        assert_eq!(a.select_rows(&[1]), SparseRationalMatrix::from_dense(&[vec![4, 5, 6]]));
    }
}
