//! Chevalley–Eilenberg complexes in the Euler-weight-zero sector: absolute,
//! relative and filtered, with cohomology and Hochschild–Serre pages.
//!
//! A `p`-cochain is a functional on `Λ^p g ⊗ M`; it is recorded by its values
//! on [`CochainBasisElement`]s. The differential is
//!
//! ```text
//! (dc)(g_0..g_p) = Σ_i (−1)^i g_i·c(..ĝ_i..) + Σ_{i<j} (−1)^{i+j} c([g_i,g_j], ..ĝ_i..ĝ_j..)
//! ```
//!
//! and differential matrices have rows indexed by target keys and columns by
//! source keys.

mod engine;
mod module;
mod spectral;

use std::collections::BTreeMap;
use std::fmt;

use crate::exactlin::{
    cohomology_dim, coeff, ExactLinError, Rational, SparseRationalMatrix, SparseVector,
};
use crate::liealg::{AlgebraFamily, AlgebraSlice, MatrixAlgebra, ModuleSpec, MonomialVectorField};

use engine::{par_map, Coeffs, Setup};
pub use module::ExplicitModule;
pub use spectral::{hochschild_serre_pages, FilteredComplexBlock, SpectralPage};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CeError {
    #[error("D_SQUARED_NONZERO: d_{} ∘ d_{degree} has {nonzero} nonzero entries", degree + 1)]
    DSquaredNonzero { degree: usize, nonzero: usize },
    #[error("WEIGHT_OVERFLOW: degree {degree} needs more than {keys} cochain keys")]
    WeightOverflow { degree: usize, keys: usize },
    #[error("MODULE_ACTION_INVALID: {0}")]
    ModuleActionInvalid(String),
    #[error("invalid reductive part: {0}")]
    InvalidReductivePart(String),
    #[error("differential of relative basis vector {column} leaves the relative subspace in degree {degree}")]
    NotInvariant { degree: usize, column: usize },
    #[error("filtration decreases along the differential in degree {degree}")]
    BadFiltration { degree: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Linear(#[from] ExactLinError),
    #[error("internal error: {0}")]
    Internal(String),
}

/// Coefficient part of a cochain key.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModuleSlots {
    None,
    /// Sorted multiset of slice indices (symmetric coefficients).
    Sym(Vec<u32>),
    /// A basis vector of an explicit module.
    Vector(u32),
}

/// One coordinate of a cochain space: a strictly increasing tuple of
/// exterior arguments plus the coefficient slots.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CochainBasisElement {
    pub exterior: Vec<u32>,
    pub module: ModuleSlots,
}

impl fmt::Debug for CochainBasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exterior)?;
        match &self.module {
            ModuleSlots::None => Ok(()),
            ModuleSlots::Sym(s) => write!(f, ";{s:?}"),
            ModuleSlots::Vector(a) => write!(f, ";v{a}"),
        }
    }
}

/// Cochains of one degree.
///
/// `keys` index the ambient coordinates. For relative spaces `basis` lists the
/// invariant cochains in ambient coordinates and `free` the coordinate at
/// which each basis vector is 1 while all others vanish.
#[derive(Debug, Clone)]
pub struct CochainSpace {
    degree: usize,
    keys: Vec<CochainBasisElement>,
    basis: Option<Vec<SparseVector>>,
    free: Option<Vec<usize>>,
    levels: Vec<usize>,
}

impl CochainSpace {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        match &self.basis {
            Some(b) => b.len(),
            None => self.keys.len(),
        }
    }

    pub fn keys(&self) -> &[CochainBasisElement] {
        &self.keys
    }

    pub fn is_relative(&self) -> bool {
        self.basis.is_some()
    }

    /// Filtration level of each basis vector.
    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    /// Basis vector `i` in ambient coordinates.
    pub fn basis_vector(&self, i: usize) -> SparseVector {
        match &self.basis {
            Some(b) => b[i].clone(),
            None => vec![(i, Rational::one())],
        }
    }

    /// Coordinates of an ambient vector that lies in the space.
    pub fn coordinates(&self, ambient: &[(usize, Rational)]) -> Option<SparseVector> {
        match (&self.basis, &self.free) {
            (Some(b), Some(free)) => {
                let coords: SparseVector = free
                    .iter()
                    .enumerate()
                    .filter_map(|(k, &f)| coeff(ambient, f).map(|x| (k, x.clone())))
                    .collect();
                let mut recon = Vec::new();
                for (k, x) in &coords {
                    recon.extend(b[*k].iter().map(|(i, y)| (*i, y * x)));
                }
                (crate::exactlin::normalize(recon) == ambient).then_some(coords)
            }
            _ => Some(ambient.to_vec()),
        }
    }
}

/// A finite cochain complex `C^0 → … → C^{p_max+1}` with exact differentials.
#[derive(Debug, Clone)]
pub struct CochainComplexBlock {
    label: String,
    dims: Vec<usize>,
    differentials: Vec<SparseRationalMatrix>,
    spaces: Option<Vec<CochainSpace>>,
    slice: Option<AlgebraSlice>,
}

impl CochainComplexBlock {
    /// A complex from explicit differentials `d_p : C^p → C^{p+1}`,
    /// `p = 0..dims.len()-1`. Checks shapes and `d² = 0`.
    pub fn from_differentials(
        label: impl Into<String>,
        dims: Vec<usize>,
        differentials: Vec<SparseRationalMatrix>,
    ) -> Result<Self, CeError> {
        let block = CochainComplexBlock { label: label.into(), dims, differentials, spaces: None, slice: None };
        block.check()?;
        Ok(block)
    }

    fn check(&self) -> Result<(), CeError> {
        if self.dims.len() != self.differentials.len() + 1 {
            return Err(CeError::Shape(format!(
                "{} spaces need {} differentials, got {}",
                self.dims.len(),
                self.dims.len() - 1,
                self.differentials.len()
            )));
        }
        for (p, d) in self.differentials.iter().enumerate() {
            if d.cols() != self.dims[p] || d.rows() != self.dims[p + 1] {
                return Err(CeError::Shape(format!(
                    "d_{p} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    self.dims[p + 1],
                    self.dims[p]
                )));
            }
        }
        for p in 0..self.differentials.len().saturating_sub(1) {
            let dd = self.differentials[p + 1].mul(&self.differentials[p])?;
            if !dd.is_zero() {
                return Err(CeError::DSquaredNonzero { degree: p, nonzero: dd.nnz() });
            }
        }
        Ok(())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Highest degree whose cohomology the block determines.
    pub fn p_max(&self) -> usize {
        self.differentials.len() - 1
    }

    /// Dimensions of `C^0, …, C^{p_max+1}`.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `d_p : C^p → C^{p+1}`.
    pub fn differential(&self, p: usize) -> &SparseRationalMatrix {
        &self.differentials[p]
    }

    pub fn spaces(&self) -> Option<&[CochainSpace]> {
        self.spaces.as_deref()
    }

    pub fn space(&self, p: usize) -> Option<&CochainSpace> {
        self.spaces.as_ref().map(|s| &s[p])
    }

    pub fn slice(&self) -> Option<&AlgebraSlice> {
        self.slice.as_ref()
    }

    /// Re-checks `d_{p+1} d_p = 0` for all `p`.
    pub fn check_d_squared(&self) -> Result<(), CeError> {
        self.check()
    }

    /// `dim H^p` for `p = 0..=p_max`.
    pub fn cohomology(&self) -> Result<Vec<usize>, CeError> {
        (0..=self.p_max())
            .map(|p| {
                let d_in = if p == 0 {
                    SparseRationalMatrix::zero(self.dims[0], 0)
                } else {
                    self.differentials[p - 1].clone()
                };
                Ok(cohomology_dim(&d_in, &self.differentials[p])?)
            })
            .collect()
    }

    /// Nonzero cohomology dimensions keyed by degree.
    pub fn cohomology_map(&self) -> Result<BTreeMap<usize, usize>, CeError> {
        Ok(self.cohomology()?.into_iter().enumerate().filter(|(_, d)| *d > 0).collect())
    }

    /// Euler characteristic of `C^0, …, C^{p_max}`.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims[..=self.p_max()]
            .iter()
            .enumerate()
            .map(|(p, &d)| if p % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    /// Whether the degree-`p` cochain `v` (block coordinates) is closed.
    pub fn is_cocycle(&self, p: usize, v: &[(usize, Rational)]) -> bool {
        self.differentials[p].mul_vec(v).is_empty()
    }

    /// Rank of the span of `vectors` (degree `p`, block coordinates) modulo
    /// the image of `d_{p-1}`.
    pub fn rank_modulo_coboundaries(&self, p: usize, vectors: &[SparseVector]) -> usize {
        let mut e = crate::exactlin::Echelon::new();
        if p > 0 {
            let t = self.differentials[p - 1].transpose();
            for row in t.row_vectors() {
                e.insert(row.clone());
            }
        }
        let base = e.rank();
        for v in vectors {
            e.insert(v.clone());
        }
        e.rank() - base
    }

    /// Block coordinates of a degree-`p` cochain given by a function of its
    /// ambient keys. `None` if the resulting ambient vector is not in the space.
    pub fn cochain_from_values<F>(&self, p: usize, value: F) -> Option<SparseVector>
    where
        F: Fn(&CochainBasisElement) -> Rational,
    {
        let space = self.space(p)?;
        let ambient: SparseVector = space
            .keys
            .iter()
            .enumerate()
            .map(|(i, k)| (i, value(k)))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        space.coordinates(&ambient)
    }

    /// Attaches the per-basis-vector filtration levels recorded at build time.
    pub fn filtered(self) -> Result<FilteredComplexBlock, CeError> {
        let levels = match &self.spaces {
            Some(s) => s.iter().map(|sp| sp.levels.clone()).collect(),
            None => return Err(CeError::Internal("block carries no filtration levels".into())),
        };
        FilteredComplexBlock::new(self, levels)
    }
}

/// Which reductive subalgebra a relative complex is taken over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductivePart {
    /// `⊕_r gl_{n_r}` over all coordinate blocks of the family.
    AllBlocks,
    /// `⊕ gl_{n_r}` over the listed blocks only.
    Blocks(Vec<usize>),
}

/// Knobs for [`build_relative_complex_with`] and [`build_absolute_complex_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    /// Spread degrees and rows over the rayon pool. Results are identical either way.
    pub parallel: bool,
    /// Discard keys of nonzero torus weight before solving the invariance system.
    pub torus_prefilter: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { parallel: true, torus_prefilter: true }
    }
}

fn assemble_block(setup: &Setup, p_max: usize, label: String) -> Result<CochainComplexBlock, CeError> {
    let spaces: Vec<Result<CochainSpace, CeError>> = par_map(setup.parallel, p_max + 2, |p| setup.space(p));
    let spaces: Vec<CochainSpace> = spaces.into_iter().collect::<Result<_, _>>()?;
    let diffs: Vec<Result<SparseRationalMatrix, CeError>> =
        par_map(setup.parallel, p_max + 1, |p| setup.differential(&spaces[p], &spaces[p + 1]));
    let differentials: Vec<SparseRationalMatrix> = diffs.into_iter().collect::<Result<_, _>>()?;
    let dims = spaces.iter().map(CochainSpace::dim).collect();
    let block = CochainComplexBlock {
        label,
        dims,
        differentials,
        spaces: Some(spaces),
        slice: Some(setup.slice.clone()),
    };
    block.check()?;
    Ok(block)
}

fn coeffs_of(spec: ModuleSpec) -> Coeffs<'static> {
    match spec {
        ModuleSpec::Trivial => Coeffs::Trivial,
        ModuleSpec::SymCoadjoint(m) => Coeffs::Sym(m),
    }
}

fn slice_for(family: &AlgebraFamily, coeffs: ModuleSpec, p_max: usize) -> AlgebraSlice {
    // Slot weights of a weight-zero key of degree ≤ p_max+1 lie in [-1, p_max + m].
    AlgebraSlice::of_family(family, (p_max + coeffs.power()) as i32)
}

/// The weight-zero CE complex of `family` with coefficients `coeffs`, degrees
/// `0..=p_max` (plus `C^{p_max+1}` as the target of the last differential).
pub fn build_absolute_complex(
    family: &AlgebraFamily,
    coeffs: ModuleSpec,
    p_max: usize,
) -> Result<CochainComplexBlock, CeError> {
    build_absolute_complex_with(family, coeffs, p_max, &BuildOptions::default())
}

pub fn build_absolute_complex_with(
    family: &AlgebraFamily,
    coeffs: ModuleSpec,
    p_max: usize,
    options: &BuildOptions,
) -> Result<CochainComplexBlock, CeError> {
    family.validate().map_err(|e| CeError::Internal(e.to_string()))?;
    let slice = slice_for(family, coeffs, p_max);
    let setup = Setup {
        slice: &slice,
        coeffs: coeffs_of(coeffs),
        ext_allowed: vec![true; slice.len()],
        invariance: Vec::new(),
        torus_coords: Vec::new(),
        level_sub: None,
        parallel: options.parallel,
    };
    assemble_block(&setup, p_max, format!("C({family}; {coeffs})"))
}

fn reductive_fields(
    family: &AlgebraFamily,
    part: &ReductivePart,
) -> Result<(Vec<MonomialVectorField>, Vec<usize>), CeError> {
    let blocks = family.blocks();
    let chosen: Vec<usize> = match part {
        ReductivePart::AllBlocks => (0..blocks.len()).collect(),
        ReductivePart::Blocks(b) => {
            if let Some(&bad) = b.iter().find(|&&r| r >= blocks.len()) {
                return Err(CeError::InvalidReductivePart(format!("{family} has no block {bad}")));
            }
            let mut b = b.clone();
            b.sort();
            b.dedup();
            b
        }
    };
    let of = family.block_of_coordinates();
    let coords: Vec<usize> = (0..family.n_vars()).filter(|&c| chosen.contains(&of[c])).collect();
    let fields = family
        .reductive_part()
        .into_iter()
        .filter(|f| {
            let (i, _) = f.linear_indices().expect("linear");
            coords.contains(&i)
        })
        .collect();
    Ok((fields, coords))
}

/// Weight-zero cochains vanishing on the reductive part `h` and invariant
/// under it, with the restricted differential.
pub fn build_relative_complex(
    family: &AlgebraFamily,
    reductive: &ReductivePart,
    coeffs: ModuleSpec,
    p_max: usize,
) -> Result<CochainComplexBlock, CeError> {
    build_relative_complex_with(family, reductive, coeffs, p_max, &BuildOptions::default())
}

pub fn build_relative_complex_with(
    family: &AlgebraFamily,
    reductive: &ReductivePart,
    coeffs: ModuleSpec,
    p_max: usize,
    options: &BuildOptions,
) -> Result<CochainComplexBlock, CeError> {
    family.validate().map_err(|e| CeError::Internal(e.to_string()))?;
    let (h, coords) = reductive_fields(family, reductive)?;
    let slice = slice_for(family, coeffs, p_max);
    let h_idx: Vec<usize> = h.iter().map(|f| slice.index_of(f).expect("linear fields are in the slice")).collect();
    let mut ext_allowed = vec![true; slice.len()];
    for &i in &h_idx {
        ext_allowed[i] = false;
    }
    let setup = Setup {
        slice: &slice,
        coeffs: coeffs_of(coeffs),
        ext_allowed,
        invariance: h_idx,
        torus_coords: if options.torus_prefilter { coords } else { Vec::new() },
        level_sub: None,
        parallel: options.parallel,
    };
    assemble_block(&setup, p_max, format!("C({family}, h; {coeffs})"))
}

fn explicit_setup<'a>(
    slice: &'a AlgebraSlice,
    h: &MatrixAlgebra,
    module: &'a ExplicitModule,
    filtration: Option<MatrixAlgebra>,
) -> Result<Setup<'a>, CeError> {
    let actions = slice
        .fields()
        .iter()
        .map(|f| {
            module
                .field_index(f)
                .map(|i| module.action_by_index(i))
                .ok_or_else(|| CeError::ModuleActionInvalid(format!("{f} does not act on {}", module.name())))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let h_fields = h.fields();
    let mut ext_allowed = vec![true; slice.len()];
    let mut invariance = Vec::new();
    for f in &h_fields {
        let i = slice
            .index_of(f)
            .ok_or_else(|| CeError::InvalidReductivePart(format!("{f} is not in the ambient algebra")))?;
        ext_allowed[i] = false;
        invariance.push(i);
    }
    let level_sub = filtration.map(|b| {
        let b = b.fields();
        slice.fields().iter().map(|f| b.contains(f)).collect()
    });
    Ok(Setup {
        slice,
        coeffs: Coeffs::Explicit { dim: module.dim(), actions },
        ext_allowed,
        invariance,
        torus_coords: Vec::new(),
        level_sub,
        parallel: true,
    })
}

/// Relative CE complex of a pair of matrix algebras `h ⊂ g` with explicit
/// coefficients, in degrees `0..=dim g − dim h`. With `filtration = Some(b)`
/// basis vectors carry the number of exterior slots outside `b`.
pub fn finite_pair_complex(
    g: MatrixAlgebra,
    h: MatrixAlgebra,
    module: &ExplicitModule,
    filtration: Option<MatrixAlgebra>,
) -> Result<CochainComplexBlock, CeError> {
    module.validate()?;
    let slice = g.slice();
    if !slice.is_closed() {
        return Err(CeError::Internal(format!("{g:?} is not bracket-closed")));
    }
    let setup = explicit_setup(&slice, &h, module, filtration)?;
    let p_max = g.dim() - h.dim();
    assemble_block(&setup, p_max, format!("C({g:?}, {h:?}; {})", module.name()))
}

/// `dim H^p(g, h; M)` for all `p` with nonzero cohomology.
pub fn finite_pair_relative_cohomology(
    g: MatrixAlgebra,
    h: MatrixAlgebra,
    module: &ExplicitModule,
) -> Result<BTreeMap<usize, usize>, CeError> {
    finite_pair_complex(g, h, module, None)?.cohomology_map()
}

/// Applies `L_x` for every reductive field `x` to the degree-`p` cochain `v`
/// of a relative block and reports whether all results vanish. Also checks
/// that `v` is supported on keys without reductive exterior arguments.
pub fn is_relative_cochain(block: &CochainComplexBlock, family: &AlgebraFamily, p: usize, v: &SparseVector) -> bool {
    let (Some(space), Some(slice)) = (block.space(p), block.slice()) else { return false };
    let h: Vec<usize> = family.reductive_part().iter().filter_map(|f| slice.index_of(f)).collect();
    let mut ambient: Vec<(usize, Rational)> = Vec::new();
    for (k, x) in v {
        ambient.extend(space.basis_vector(*k).into_iter().map(|(i, y)| (i, y * x)));
    }
    let ambient = crate::exactlin::normalize(ambient);
    let vanishes_on_h = ambient.iter().all(|(i, _)| space.keys[*i].exterior.iter().all(|g| !h.contains(&(*g as usize))));
    let torus: Vec<usize> = (0..family.n_vars()).collect();
    let setup = Setup {
        slice,
        coeffs: match space.keys.first().map(|k| &k.module) {
            Some(ModuleSlots::Sym(s)) => Coeffs::Sym(s.len()),
            _ => Coeffs::Trivial,
        },
        ext_allowed: (0..slice.len()).map(|i| !h.contains(&i)).collect(),
        invariance: h.clone(),
        torus_coords: torus,
        level_sub: None,
        parallel: false,
    };
    let Ok(buckets) = setup.keys_by_torus(p) else { return false };
    let values: std::collections::HashMap<&CochainBasisElement, &Rational> =
        ambient.iter().map(|(i, x)| (&space.keys[*i], x)).collect();
    let invariant = h.iter().all(|&x| {
        let tx = slice.field(x).torus_weight();
        let target: Vec<i32> = tx.iter().map(|t| -t).collect();
        buckets.get(&target).is_none_or(|rows| {
            rows.iter().all(|tau| {
                let total: Rational = setup
                    .invariance_row(x, tau)
                    .into_iter()
                    .map(|(k, c)| values.get(&k).map_or_else(Rational::zero, |y| c * *y))
                    .sum();
                total.is_zero()
            })
        })
    });
    vanishes_on_h && invariant
}
