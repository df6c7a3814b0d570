use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::combinat::{Partition, Permutation};
use crate::exactlin::{
    coeff, kernel_basis, normalize, rref, Rational, SparseRationalMatrix, SparseVector,
};
use crate::liealg::{bracket, AlgebraSlice, MonomialVectorField};

use super::CeError;

/// A finite-dimensional module over a Lie algebra of linear vector fields,
/// given by one action matrix per basis field.
#[derive(Clone)]
pub struct ExplicitModule {
    name: String,
    n_vars: usize,
    dim: usize,
    fields: Vec<MonomialVectorField>,
    index: HashMap<MonomialVectorField, usize>,
    actions: Vec<SparseRationalMatrix>,
}

impl fmt::Debug for ExplicitModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExplicitModule({}, dim={}, over {} fields)", self.name, self.dim, self.fields.len())
    }
}

fn invalid(msg: impl Into<String>) -> CeError {
    CeError::ModuleActionInvalid(msg.into())
}

impl ExplicitModule {
    /// Checks shapes only; use [`validate`](Self::validate) for the bracket identity.
    pub fn new(
        name: impl Into<String>,
        n_vars: usize,
        dim: usize,
        fields: Vec<MonomialVectorField>,
        actions: Vec<SparseRationalMatrix>,
    ) -> Result<Self, CeError> {
        if fields.len() != actions.len() {
            return Err(invalid("one action matrix per field is required"));
        }
        if actions.iter().any(|a| a.rows() != dim || a.cols() != dim) {
            return Err(invalid(format!("action matrices must be {dim}x{dim}")));
        }
        if fields.iter().any(|f| f.n_vars() != n_vars) {
            return Err(invalid("fields on the wrong number of coordinates"));
        }
        let index: HashMap<_, _> = fields.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        if index.len() != fields.len() {
            return Err(invalid("repeated field"));
        }
        Ok(ExplicitModule { name: name.into(), n_vars, dim, fields, index, actions })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn fields(&self) -> &[MonomialVectorField] {
        &self.fields
    }

    pub fn action(&self, f: &MonomialVectorField) -> Option<&SparseRationalMatrix> {
        self.index.get(f).map(|&i| &self.actions[i])
    }

    /// One-dimensional module with zero action.
    pub fn trivial(n_vars: usize, fields: Vec<MonomialVectorField>) -> Self {
        let actions = vec![SparseRationalMatrix::zero(1, 1); fields.len()];
        ExplicitModule::new("k", n_vars, 1, fields, actions).expect("shapes are consistent")
    }

    /// The adjoint module on the span of `fields`, which must be bracket-closed.
    pub fn adjoint(n_vars: usize, fields: Vec<MonomialVectorField>) -> Result<Self, CeError> {
        let slice = AlgebraSlice::from_fields(n_vars, fields);
        if !slice.is_closed() {
            return Err(invalid("adjoint module needs a bracket-closed set of fields"));
        }
        let d = slice.len();
        let actions = (0..d)
            .map(|i| {
                let trip = (0..d).flat_map(|j| {
                    slice.bracket(i, j).iter().map(move |&(k, c)| (k, j, Rational::from(c)))
                });
                SparseRationalMatrix::from_triplets(d, d, trip).expect("indices in range")
            })
            .collect();
        ExplicitModule::new("ad", n_vars, d, slice.fields().to_vec(), actions)
    }

    /// `span{∂_1, …, ∂_N}` with the bracket action `[x_i∂_j, ∂_k] = −δ_ik ∂_j`,
    /// over all linear fields.
    pub fn tautological(n: usize) -> Self {
        let fields = crate::liealg::MatrixAlgebra::Gl(n).fields();
        let actions = fields
            .iter()
            .map(|f| {
                let (i, j) = f.linear_indices().expect("linear field");
                SparseRationalMatrix::from_triplets(n, n, [(j, i, Rational::from(-1))]).expect("in range")
            })
            .collect();
        ExplicitModule::new("T", n, n, fields, actions).expect("shapes are consistent")
    }

    /// `span{x_1, …, x_N}` with `x_i∂_j` acting as the matrix unit `E_ij`.
    pub fn linear_functions(n: usize) -> Self {
        let fields = crate::liealg::MatrixAlgebra::Gl(n).fields();
        let actions = fields
            .iter()
            .map(|f| {
                let (i, j) = f.linear_indices().expect("linear field");
                SparseRationalMatrix::from_triplets(n, n, [(i, j, Rational::one())]).expect("in range")
            })
            .collect();
        ExplicitModule::new("V", n, n, fields, actions).expect("shapes are consistent")
    }

    /// One-dimensional module on which `x_i∂_i` acts by `values[i]` and
    /// off-diagonal fields act by zero.
    pub fn diagonal_character(n: usize, fields: Vec<MonomialVectorField>, values: &[i64]) -> Self {
        let actions = fields
            .iter()
            .map(|f| match f.linear_indices() {
                Some((i, j)) if i == j => {
                    SparseRationalMatrix::from_triplets(1, 1, [(0, 0, Rational::from(values[i]))])
                        .expect("in range")
                }
                _ => SparseRationalMatrix::zero(1, 1),
            })
            .collect();
        ExplicitModule::new("chi", n, 1, fields, actions).expect("shapes are consistent")
    }

    /// Contragredient module: `ρ*(x) = −ρ(x)ᵀ`.
    pub fn dual(&self) -> Self {
        let actions = self
            .actions
            .iter()
            .map(|a| {
                let t = a.transpose();
                let trip: Vec<_> = t.triplets().map(|(r, c, v)| (r, c, -v)).collect();
                SparseRationalMatrix::from_triplets(self.dim, self.dim, trip).expect("in range")
            })
            .collect();
        ExplicitModule::new(format!("{}*", self.name), self.n_vars, self.dim, self.fields.clone(), actions)
            .expect("shapes are consistent")
    }

    /// Tensor product; basis index `i * other.dim + j`.
    pub fn tensor(&self, other: &ExplicitModule) -> Result<Self, CeError> {
        if self.fields != other.fields {
            return Err(invalid("tensor factors over different algebras"));
        }
        let (p, q) = (self.dim, other.dim);
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(a, b)| {
                let mut trip = Vec::new();
                for (r, c, v) in a.triplets() {
                    for j in 0..q {
                        trip.push((r * q + j, c * q + j, v.clone()));
                    }
                }
                for (r, c, v) in b.triplets() {
                    for i in 0..p {
                        trip.push((i * q + r, i * q + c, v.clone()));
                    }
                }
                SparseRationalMatrix::from_triplets(p * q, p * q, trip).expect("in range")
            })
            .collect();
        ExplicitModule::new(
            format!("{}⊗{}", self.name, other.name),
            self.n_vars,
            p * q,
            self.fields.clone(),
            actions,
        )
    }

    /// Restriction to a subset of the acting fields.
    pub fn restrict(&self, fields: &[MonomialVectorField]) -> Result<Self, CeError> {
        let actions = fields
            .iter()
            .map(|f| self.action(f).cloned().ok_or_else(|| invalid(format!("{f} does not act"))))
            .collect::<Result<Vec<_>, _>>()?;
        ExplicitModule::new(self.name.clone(), self.n_vars, self.dim, fields.to_vec(), actions)
    }

    /// The submodule spanned by `span`; fails if the span is not stable.
    ///
    /// The basis is the reduced echelon basis of the span, so a vector's
    /// coordinates are its entries at the pivot columns.
    pub fn submodule(&self, span: &[SparseVector], name: impl Into<String>) -> Result<Self, CeError> {
        let gens = SparseRationalMatrix::from_rows(self.dim, span.to_vec())?;
        let basis = rref(&gens);
        let pivots: Vec<usize> = basis.iter().map(|(c, _)| *c).collect();
        let rows: Vec<&SparseVector> = basis.iter().map(|(_, r)| r).collect();
        let d = rows.len();
        let mut actions = Vec::with_capacity(self.fields.len());
        for a in &self.actions {
            let mut trip = Vec::new();
            for (k, row) in rows.iter().enumerate() {
                let w = a.mul_vec(row);
                let coords: Vec<Rational> =
                    pivots.iter().map(|&c| coeff(&w, c).cloned().unwrap_or_else(Rational::zero)).collect();
                let recon = normalize(
                    rows.iter()
                        .zip(&coords)
                        .flat_map(|(r, x)| r.iter().map(move |(i, y)| (*i, y * x)))
                        .collect(),
                );
                if recon != w {
                    return Err(invalid("span is not stable under the action"));
                }
                for (j, x) in coords.into_iter().enumerate() {
                    if !x.is_zero() {
                        trip.push((j, k, x));
                    }
                }
            }
            actions.push(SparseRationalMatrix::from_triplets(d, d, trip)?);
        }
        ExplicitModule::new(name, self.n_vars, d, self.fields.clone(), actions)
    }

    /// Image of the Young symmetrizer of `λ` on the `|λ|`-th tensor power.
    pub fn schur(&self, lambda: &Partition) -> Result<Self, CeError> {
        let k = lambda.size();
        let name = format!("S^{}({})", lambda, self.name);
        if k == 0 {
            return Ok(ExplicitModule::trivial(self.n_vars, self.fields.clone()).with_name(name));
        }
        let d = self.dim;
        let total = d.checked_pow(k as u32).filter(|&t| t <= 1 << 16).ok_or_else(|| {
            invalid(format!("tensor power {d}^{k} too large for the Young symmetrizer"))
        })?;
        // Cells numbered row by row.
        let mut cell_row = Vec::new();
        let mut cell_col = Vec::new();
        for (i, j) in lambda.cells() {
            cell_row.push(i);
            cell_col.push(j);
        }
        let group = |key: &Vec<usize>| -> Vec<(Permutation, i64)> {
            Permutation::all(k)
                .into_iter()
                .filter(|p| (1..=k).all(|t| key[p.apply(t) - 1] == key[t - 1]))
                .map(|p| {
                    let s = p.sign();
                    (p, s)
                })
                .collect()
        };
        let rows_group = group(&cell_row);
        let cols_group = group(&cell_col);
        let digits = |mut idx: usize| -> Vec<usize> {
            let mut v = vec![0; k];
            for t in (0..k).rev() {
                v[t] = idx % d;
                idx /= d;
            }
            v
        };
        let index = |v: &[usize]| v.iter().fold(0, |acc, &x| acc * d + x);
        let permute = |v: &[usize], p: &Permutation| -> Vec<usize> {
            let mut out = vec![0; k];
            for t in 1..=k {
                out[p.apply(t) - 1] = v[t - 1];
            }
            out
        };
        let images: Vec<SparseVector> = (0..total)
            .map(|i| {
                let base = digits(i);
                let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                for (b, sb) in &cols_group {
                    let t = permute(&base, b);
                    for (a, _) in &rows_group {
                        let u = permute(&t, a);
                        *acc.entry(index(&u)).or_insert_with(Rational::zero) += Rational::from(*sb);
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        let power = self.tensor_power(k)?;
        power.submodule(&images, name)
    }

    /// `k`-th tensor power, basis indexed by base-`dim` digit strings.
    pub fn tensor_power(&self, k: usize) -> Result<Self, CeError> {
        let mut acc = ExplicitModule::trivial(self.n_vars, self.fields.clone());
        for _ in 0..k {
            acc = acc.tensor(self)?;
        }
        Ok(acc.with_name(format!("{}^⊗{}", self.name, k)))
    }

    /// Checks `ρ([a,b]) = ρ(a)ρ(b) − ρ(b)ρ(a)` on all pairs of acting fields.
    pub fn validate(&self) -> Result<(), CeError> {
        for (i, a) in self.fields.iter().enumerate() {
            for (j, b) in self.fields.iter().enumerate().skip(i + 1) {
                let mut trip: Vec<(usize, usize, Rational)> = Vec::new();
                for (f, c) in bracket(a, b) {
                    let m = self
                        .action(&f)
                        .ok_or_else(|| invalid(format!("[{a}, {b}] leaves the acting algebra")))?;
                    trip.extend(m.triplets().map(|(r, s, v)| (r, s, v * &Rational::from(c))));
                }
                let ab = self.actions[i].mul(&self.actions[j])?;
                let ba = self.actions[j].mul(&self.actions[i])?;
                trip.extend(ab.triplets().map(|(r, s, v)| (r, s, -v)));
                trip.extend(ba.triplets().map(|(r, s, v)| (r, s, v.clone())));
                let diff = SparseRationalMatrix::from_triplets(self.dim, self.dim, trip)?;
                if !diff.is_zero() {
                    return Err(invalid(format!("bracket identity fails on ({a}, {b}) for {}", self.name)));
                }
            }
        }
        Ok(())
    }

    /// Dimension of the space of invariants.
    pub fn invariants_dim(&self) -> usize {
        if self.actions.is_empty() {
            return self.dim;
        }
        let mut stacked = SparseRationalMatrix::zero(0, self.dim);
        for a in &self.actions {
            stacked = stacked.vstack(a).expect("square actions of equal size");
        }
        kernel_basis(&stacked).len()
    }

    pub(crate) fn action_by_index(&self, i: usize) -> &SparseRationalMatrix {
        &self.actions[i]
    }

    pub(crate) fn field_index(&self, f: &MonomialVectorField) -> Option<usize> {
        self.index.get(f).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::schur_dim;
    use crate::liealg::MatrixAlgebra;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn basic_modules_are_valid() {
        for n in 1..=3 {
            ExplicitModule::tautological(n).validate().unwrap();
            ExplicitModule::linear_functions(n).validate().unwrap();
            ExplicitModule::tautological(n).dual().validate().unwrap();
            let gl = MatrixAlgebra::Gl(n).fields();
            ExplicitModule::adjoint(n, gl).unwrap().validate().unwrap();
        }
    }

    #[test]
    fn schur_dims_match_hook_content() {
        for d in 1..=3 {
            let t = ExplicitModule::tautological(d);
            for k in 0..=3 {
                for lam in crate::combinat::partitions(k) {
                    let s = t.schur(&lam).unwrap();
                    assert_eq!(s.dim() as u64, schur_dim(&lam, d), "λ={lam} d={d}");
                    s.validate().unwrap();
                }
            }
        }
    }

    #[test]
    fn schur_examples() {
        let t = ExplicitModule::tautological(2);
        assert_eq!(t.schur(&part(&[1])).unwrap().dim(), 2);
        assert_eq!(t.schur(&part(&[2])).unwrap().dim(), 3);
        let det = t.schur(&part(&[1, 1])).unwrap();
        assert_eq!(det.dim(), 1);
        // On Λ² the field x_i∂_j acts by −δ_ij, i.e. by minus the trace.
        let x_dx = MonomialVectorField::linear(2, 0, 0);
        assert_eq!(det.action(&x_dx).unwrap().get(0, 0), Rational::from(-1));
    }

    #[test]
    fn invariants_of_small_modules() {
        let gl2 = MatrixAlgebra::Gl(2).fields();
        let ad = ExplicitModule::adjoint(2, gl2.clone()).unwrap();
        assert_eq!(ad.invariants_dim(), 1);
        let end = ad.dual().tensor(&ad).unwrap();
        assert_eq!(end.invariants_dim(), 2);
        let t = ExplicitModule::tautological(2);
        assert_eq!(t.dual().tensor(&t).unwrap().invariants_dim(), 1);
        assert_eq!(t.invariants_dim(), 0);
    }

    #[test]
    fn unstable_span_rejected() {
        let t = ExplicitModule::tautological(2);
        let e = t.submodule(&[vec![(0, Rational::one())]], "bad");
        assert!(matches!(e, Err(CeError::ModuleActionInvalid(_))));
    }

    #[test]
    fn broken_action_detected() {
        let gl = MatrixAlgebra::Gl(2).fields();
        let mut actions = vec![SparseRationalMatrix::zero(1, 1); gl.len()];
        actions[0] = SparseRationalMatrix::identity(1);
        actions[1] = SparseRationalMatrix::identity(1);
        let m = ExplicitModule::new("bad", 2, 1, gl, actions).unwrap();
        assert!(m.validate().is_err());
    }
}
