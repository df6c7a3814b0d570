use std::fmt;

use super::{LieAlgError, MonomialVectorField};

/// The algebras of formal vector fields handled by the library.
///
/// * `W { n }`: all formal vector fields on `n` coordinates.
/// * `Flag { shape }`: fields preserving the flag given by coordinate blocks
///   `n_0, …, n_k`; the coefficient of a direction in block `r` depends only on
///   variables of blocks `≤ r`.
/// * `WL { m, n }`: on `m + n` coordinates, linear block first; the `n`
///   directions are unrestricted, the `m` directions have coefficients affine
///   in the first `m` variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AlgebraFamily {
    W { n: usize },
    Flag { shape: Vec<usize> },
    WL { m: usize, n: usize },
}

impl AlgebraFamily {
    pub fn w(n: usize) -> Result<Self, LieAlgError> {
        let f = AlgebraFamily::W { n };
        f.validate()?;
        Ok(f)
    }

    pub fn flag(shape: Vec<usize>) -> Result<Self, LieAlgError> {
        let f = AlgebraFamily::Flag { shape };
        f.validate()?;
        Ok(f)
    }

    pub fn wl(m: usize, n: usize) -> Result<Self, LieAlgError> {
        let f = AlgebraFamily::WL { m, n };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<(), LieAlgError> {
        let ok = !self.blocks().is_empty() && self.blocks().iter().all(|&b| b >= 1);
        if ok {
            Ok(())
        } else {
            Err(LieAlgError::InvalidFamily(self.to_string()))
        }
    }

    /// Coordinate block sizes in order.
    pub fn blocks(&self) -> Vec<usize> {
        match self {
            AlgebraFamily::W { n } => vec![*n],
            AlgebraFamily::Flag { shape } => shape.clone(),
            AlgebraFamily::WL { m, n } => vec![*m, *n],
        }
    }

    pub fn n_vars(&self) -> usize {
        self.blocks().iter().sum()
    }

    /// Block index of each coordinate.
    pub fn block_of_coordinates(&self) -> Vec<usize> {
        self.blocks().iter().enumerate().flat_map(|(r, &b)| std::iter::repeat_n(r, b)).collect()
    }

    pub fn contains(&self, f: &MonomialVectorField) -> bool {
        if f.n_vars() != self.n_vars() {
            return false;
        }
        let block = self.block_of_coordinates();
        let dir_block = block[f.direction()];
        let flag_ok = f.exponent().iter().enumerate().all(|(v, &a)| a == 0 || block[v] <= dir_block);
        match self {
            AlgebraFamily::W { .. } => true,
            AlgebraFamily::Flag { .. } => flag_ok,
            AlgebraFamily::WL { .. } => flag_ok && (dir_block == 1 || f.degree() <= 1),
        }
    }

    /// Linear fields `x_i ∂_j` with `i`, `j` in the same block: the canonical
    /// reductive part `⊕ gl_{n_r}`.
    pub fn reductive_part(&self) -> Vec<MonomialVectorField> {
        let n = self.n_vars();
        let block = self.block_of_coordinates();
        let mut out: Vec<MonomialVectorField> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| block[i] == block[j])
            .map(|(i, j)| MonomialVectorField::linear(n, i, j))
            .collect();
        out.sort();
        out
    }

    /// `Σ x_i ∂_i`, as its list of terms.
    pub fn euler_field(&self) -> Vec<MonomialVectorField> {
        let n = self.n_vars();
        (0..n).map(|i| MonomialVectorField::linear(n, i, i)).collect()
    }
}

impl fmt::Display for AlgebraFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraFamily::W { n } => write!(f, "W_{n}"),
            AlgebraFamily::Flag { shape } => {
                let s: Vec<String> = shape.iter().map(ToString::to_string).collect();
                write!(f, "W({})", s.join(","))
            }
            AlgebraFamily::WL { m, n } => write!(f, "WL({m}|{n})"),
        }
    }
}

/// Coefficients for the cochain complexes of vector-field algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModuleSpec {
    Trivial,
    /// `S^m` of the coadjoint module, `m ≥ 1`.
    SymCoadjoint(usize),
}

impl ModuleSpec {
    pub fn sym(m: usize) -> Result<Self, LieAlgError> {
        if m == 0 {
            return Err(LieAlgError::InvalidModule("symmetric power must be at least 1".into()));
        }
        Ok(ModuleSpec::SymCoadjoint(m))
    }

    /// Number of symmetric slots.
    pub fn power(&self) -> usize {
        match self {
            ModuleSpec::Trivial => 0,
            ModuleSpec::SymCoadjoint(m) => *m,
        }
    }
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleSpec::Trivial => write!(f, "k"),
            ModuleSpec::SymCoadjoint(m) => write!(f, "S^{m}(W*)"),
        }
    }
}
