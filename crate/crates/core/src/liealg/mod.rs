//! Formal vector fields: monomial bases, brackets, the algebra families
//! `W_n`, `W(n_0,…,n_k)`, `WL(m|n)`, and their linear (matrix) subalgebras.

mod family;
mod field;
mod slice;

use std::collections::HashMap;

use rayon::prelude::*;

pub use family::{AlgebraFamily, ModuleSpec};
pub use field::{bracket, MonomialVectorField};
pub use slice::AlgebraSlice;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieAlgError {
    #[error("invalid algebra family {0}: every block size must be at least 1")]
    InvalidFamily(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("Jacobi identity fails on ({0}, {1}, {2})")]
    JacobiFailure(String, String, String),
}

/// Exponent vectors of total degree `d` in `n` variables, in decreasing
/// lexicographic order.
pub fn exponents_of_degree(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn go(n: usize, rest: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == n {
            cur.push(rest);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in (0..=rest).rev() {
            cur.push(a);
            go(n, rest - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, d, &mut Vec::new(), &mut out);
    }
    out
}

/// Basis fields of `family` with Euler weight `w`, in basis order.
pub fn basis_at_weight(family: &AlgebraFamily, w: i32) -> Vec<MonomialVectorField> {
    if w < -1 {
        return Vec::new();
    }
    let n = family.n_vars();
    let exps = exponents_of_degree(n, (w + 1) as u32);
    let mut out: Vec<MonomialVectorField> = (0..n)
        .flat_map(|dir| exps.iter().map(move |e| MonomialVectorField::new(e.clone(), dir)))
        .filter(|f| family.contains(f))
        .collect();
    out.sort();
    out
}

/// Checks that brackets of basis fields of weight `≤ w_max` stay in the family.
pub fn closure_check(family: &AlgebraFamily, w_max: i32) -> bool {
    closure_check_with(family.n_vars(), w_max, |f| family.contains(f))
}

/// As [`closure_check`] for an arbitrary membership rule on `n` coordinates.
pub fn closure_check_with<F>(n: usize, w_max: i32, member: F) -> bool
where
    F: Fn(&MonomialVectorField) -> bool,
{
    let w = AlgebraFamily::W { n };
    let fields: Vec<MonomialVectorField> =
        (-1..=w_max).flat_map(|k| basis_at_weight(&w, k)).filter(|f| member(f)).collect();
    fields.iter().all(|a| fields.iter().all(|b| bracket(a, b).iter().all(|(f, _)| member(f))))
}

fn bracket_combination(
    a: &MonomialVectorField,
    comb: &HashMap<MonomialVectorField, i64>,
) -> HashMap<MonomialVectorField, i64> {
    let mut out: HashMap<MonomialVectorField, i64> = HashMap::new();
    for (f, c) in comb {
        for (g, d) in bracket(a, f) {
            *out.entry(g).or_insert(0) += c * d;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Verifies the Jacobi identity on every triple of basis fields of `family`
/// with weights in `[w_lo, w_hi]`. Returns the number of triples checked.
pub fn jacobi_check(family: &AlgebraFamily, w_lo: i32, w_hi: i32) -> Result<usize, LieAlgError> {
    let fields: Vec<MonomialVectorField> =
        (w_lo.max(-1)..=w_hi).flat_map(|k| basis_at_weight(family, k)).collect();
    let n = fields.len();
    let single = |f: &MonomialVectorField| -> HashMap<MonomialVectorField, i64> {
        std::iter::once((f.clone(), 1)).collect()
    };
    let failures: Vec<(usize, usize, usize)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let fields = &fields;
            (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k))).filter(move |&(i, j, k)| {
                let (a, b, c) = (&fields[i], &fields[j], &fields[k]);
                let mut total: HashMap<MonomialVectorField, i64> = HashMap::new();
                for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                    let inner = bracket_combination(y, &single(z));
                    for (f, v) in bracket_combination(x, &inner) {
                        *total.entry(f).or_insert(0) += v;
                    }
                }
                total.values().any(|&v| v != 0)
            })
        })
        .collect();
    if let Some(&(i, j, k)) = failures.iter().min() {
        return Err(LieAlgError::JacobiFailure(
            fields[i].to_string(),
            fields[j].to_string(),
            fields[k].to_string(),
        ));
    }
    Ok(n * n.saturating_sub(1) * n.saturating_sub(2) / 6)
}

/// Basis of the weight-`w` part of `S^m W_n`: sorted multisets of `m` fields
/// whose weights add to `w`.
pub fn sym_module_basis(n: usize, m: usize, w: i32) -> Vec<Vec<MonomialVectorField>> {
    if m == 0 {
        return if w == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let top = w + m as i32 - 1;
    if top < -1 {
        return Vec::new();
    }
    let family = AlgebraFamily::W { n };
    let fields: Vec<MonomialVectorField> = (-1..=top).flat_map(|k| basis_at_weight(&family, k)).collect();
    fn go(
        fields: &[MonomialVectorField],
        start: usize,
        left: usize,
        rest: i32,
        cur: &mut Vec<MonomialVectorField>,
        out: &mut Vec<Vec<MonomialVectorField>>,
    ) {
        if left == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for i in start..fields.len() {
            let wt = fields[i].weight();
            // Remaining slots weigh at least `wt` each since fields are sorted by weight.
            if wt * left as i32 > rest {
                break;
            }
            cur.push(fields[i].clone());
            go(fields, i, left - 1, rest - wt, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(&fields, 0, m, w, &mut Vec::new(), &mut out);
    out
}

/// Finite subalgebras of linear fields `x_i ∂_j` on `N` coordinates.
///
/// `x_i ∂_j` acts on linear functions as the matrix unit `E_{ij}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixAlgebra {
    /// `gl_N`.
    Gl(usize),
    /// `gl_m ⊕ gl_n` inside `gl_{m+n}`.
    Levi { m: usize, n: usize },
    /// `b = {x_i ∂_j : j < m ⇒ i < m}`: the Levi part plus the abelian
    /// nilradical `{x_i ∂_j : i < m ≤ j}`.
    Parabolic { m: usize, n: usize },
    /// Nilradical of the parabolic.
    NilMinus { m: usize, n: usize },
    /// Complement `{x_i ∂_j : j < m ≤ i}` of the parabolic in `gl_{m+n}`.
    NilPlus { m: usize, n: usize },
}

impl MatrixAlgebra {
    pub fn n_vars(&self) -> usize {
        match *self {
            MatrixAlgebra::Gl(n) => n,
            MatrixAlgebra::Levi { m, n }
            | MatrixAlgebra::Parabolic { m, n }
            | MatrixAlgebra::NilMinus { m, n }
            | MatrixAlgebra::NilPlus { m, n } => m + n,
        }
    }

    pub fn contains_pair(&self, i: usize, j: usize) -> bool {
        match *self {
            MatrixAlgebra::Gl(_) => true,
            MatrixAlgebra::Levi { m, .. } => (i < m) == (j < m),
            MatrixAlgebra::Parabolic { m, .. } => j >= m || i < m,
            MatrixAlgebra::NilMinus { m, .. } => i < m && j >= m,
            MatrixAlgebra::NilPlus { m, .. } => j < m && i >= m,
        }
    }

    pub fn fields(&self) -> Vec<MonomialVectorField> {
        let n = self.n_vars();
        let mut out: Vec<MonomialVectorField> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.contains_pair(i, j))
            .map(|(i, j)| MonomialVectorField::linear(n, i, j))
            .collect();
        out.sort();
        out
    }

    pub fn dim(&self) -> usize {
        self.fields().len()
    }

    pub fn slice(&self) -> AlgebraSlice {
        AlgebraSlice::from_fields(self.n_vars(), self.fields())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[MonomialVectorField]) -> Vec<String> {
        v.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn basis_examples() {
        assert_eq!(names(&basis_at_weight(&AlgebraFamily::W { n: 1 }, 2)), vec!["x^3∂"]);
        let flag = AlgebraFamily::flag(vec![1, 1]).unwrap();
        assert_eq!(names(&basis_at_weight(&flag, 0)), vec!["x∂_x", "x∂_y", "y∂_y"]);
        let wl = AlgebraFamily::wl(1, 1).unwrap();
        assert_eq!(names(&basis_at_weight(&wl, 1)), vec!["x^2∂_y", "xy∂_y", "y^2∂_y"]);
        assert!(basis_at_weight(&wl, -2).is_empty());
    }

    #[test]
    fn closure_examples() {
        assert!(closure_check(&AlgebraFamily::flag(vec![1, 1]).unwrap(), 3));
        assert!(closure_check(&AlgebraFamily::wl(1, 1).unwrap(), 3));
        let flag = AlgebraFamily::flag(vec![1, 1]).unwrap();
        let y_dx = MonomialVectorField::linear(2, 1, 0);
        assert!(!closure_check_with(2, 3, |f| flag.contains(f) || *f == y_dx));
    }

    #[test]
    fn sym_basis_examples() {
        assert_eq!(names(&sym_module_basis(1, 1, -1).concat()), vec!["∂"]);
        assert_eq!(sym_module_basis(1, 2, -2).len(), 1);
        let b = sym_module_basis(1, 2, 0);
        assert_eq!(b.len(), 2);
        assert!(b.iter().any(|m| names(m) == ["∂", "x^2∂"]));
        assert!(b.iter().any(|m| names(m) == ["x∂", "x∂"]));
    }

    #[test]
    fn invalid_families() {
        assert!(AlgebraFamily::w(0).is_err());
        assert!(AlgebraFamily::flag(vec![1, 0]).is_err());
        assert!(AlgebraFamily::flag(vec![]).is_err());
        assert!(ModuleSpec::sym(0).is_err());
    }

    #[test]
    fn matrix_algebra_dims() {
        for (m, n) in [(1, 1), (1, 2), (2, 2)] {
            let b = MatrixAlgebra::Parabolic { m, n };
            assert_eq!(b.dim(), m * m + n * n + m * n);
            assert!(b.slice().is_closed());
            assert!(MatrixAlgebra::Levi { m, n }.slice().is_closed());
            assert_eq!(b.dim() + MatrixAlgebra::NilPlus { m, n }.dim(), (m + n) * (m + n));
        }
    }
}
