use std::collections::HashMap;

use super::{basis_at_weight, bracket, AlgebraFamily, MonomialVectorField};

/// A finite, indexed set of basis fields with a precomputed bracket table.
///
/// Bracket terms falling outside the slice are dropped; callers choose the
/// slice so that this only happens where the dropped terms cannot matter.
#[derive(Debug, Clone)]
pub struct AlgebraSlice {
    n_vars: usize,
    fields: Vec<MonomialVectorField>,
    index: HashMap<MonomialVectorField, usize>,
    table: Vec<Vec<Vec<(usize, i64)>>>,
}

impl AlgebraSlice {
    /// All basis fields of `family` with weight in `[-1, max_weight]`.
    pub fn of_family(family: &AlgebraFamily, max_weight: i32) -> Self {
        let fields = (-1..=max_weight).flat_map(|w| basis_at_weight(family, w)).collect();
        Self::from_fields(family.n_vars(), fields)
    }

    /// The span of `fields`, which should be closed under brackets for the
    /// result to be a Lie algebra.
    pub fn from_fields(n_vars: usize, mut fields: Vec<MonomialVectorField>) -> Self {
        fields.sort();
        fields.dedup();
        assert!(fields.iter().all(|f| f.n_vars() == n_vars), "fields on mixed coordinate counts");
        let index: HashMap<_, _> = fields.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        let table = fields
            .iter()
            .map(|a| {
                fields
                    .iter()
                    .map(|b| {
                        bracket(a, b)
                            .into_iter()
                            .filter_map(|(f, c)| index.get(&f).map(|&k| (k, c)))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        AlgebraSlice { n_vars, fields, index, table }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn len(&self) -> usize {
        self.fields.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fields.is_empty()
    }

    pub fn fields(&self) -> &[MonomialVectorField] {
        &self.fields
    }

    pub fn field(&self, i: usize) -> &MonomialVectorField {
        &self.fields[i]
    }

    pub fn weight(&self, i: usize) -> i32 {
        self.fields[i].weight()
    }

    pub fn index_of(&self, f: &MonomialVectorField) -> Option<usize> {
        self.index.get(f).copied()
    }

    /// Bracket of basis elements `i` and `j` in slice coordinates.
    pub fn bracket(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.table[i][j]
    }

    /// True if every bracket of two slice elements lies in the slice.
    pub fn is_closed(&self) -> bool {
        self.fields.iter().all(|a| {
            self.fields.iter().all(|b| bracket(a, b).iter().all(|(f, _)| self.index.contains_key(f)))
        })
    }
}
