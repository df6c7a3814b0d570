//! Cochain enumeration and matrix assembly shared by all CE complexes.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::exactlin::{
    kernel_with_free_columns, Rational, SparseRationalMatrix, SparseVector,
};
use crate::liealg::AlgebraSlice;

use super::{CeError, CochainBasisElement, CochainSpace, ModuleSlots};

type Triplets = Vec<(usize, usize, Rational)>;

/// Keys beyond this count are refused rather than assembled.
pub(crate) const MAX_KEYS: usize = 4_000_000;

pub(crate) enum Coeffs<'a> {
    Trivial,
    Sym(usize),
    /// Action matrices indexed by slice position.
    Explicit { dim: usize, actions: Vec<&'a SparseRationalMatrix> },
}

pub(crate) struct Setup<'a> {
    pub slice: &'a AlgebraSlice,
    pub coeffs: Coeffs<'a>,
    /// Which slice elements may occupy exterior slots.
    pub ext_allowed: Vec<bool>,
    /// Slice elements the cochains must be invariant under (relative case).
    pub invariance: Vec<usize>,
    /// Coordinates whose diagonal fields lie in the invariance algebra; keys of
    /// nonzero torus weight on them are discarded up front.
    pub torus_coords: Vec<usize>,
    /// Membership in the filtration subalgebra; the level of a key is the
    /// number of exterior slots outside it.
    pub level_sub: Option<Vec<bool>>,
    pub parallel: bool,
}

pub(crate) fn par_map<T, F>(parallel: bool, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    if parallel {
        (0..n).into_par_iter().map(f).collect()
    } else {
        (0..n).map(f).collect()
    }
}

/// Inserts `e` into the sorted list `rest`; returns the sign `(−1)^position`,
/// or `None` if `e` is already present.
fn insert_sorted(rest: &mut Vec<u32>, e: u32) -> Option<i64> {
    match rest.binary_search(&e) {
        Ok(_) => None,
        Err(pos) => {
            rest.insert(pos, e);
            Some(if pos % 2 == 0 { 1 } else { -1 })
        }
    }
}

fn insert_multiset(rest: &[u32], e: u32) -> Vec<u32> {
    let mut v = rest.to_vec();
    let pos = v.partition_point(|&x| x <= e);
    v.insert(pos, e);
    v
}

impl<'a> Setup<'a> {
    fn weight(&self, i: u32) -> i32 {
        self.slice.weight(i as usize)
    }

    fn module_parts(&self, max_sum: i32) -> Vec<(ModuleSlots, i32)> {
        match &self.coeffs {
            Coeffs::Trivial => vec![(ModuleSlots::None, 0)],
            Coeffs::Explicit { dim, .. } => (0..*dim as u32).map(|a| (ModuleSlots::Vector(a), 0)).collect(),
            Coeffs::Sym(m) => {
                let n = self.slice.len();
                let mut out = Vec::new();
                let mut cur = Vec::new();
                #[allow(clippy::too_many_arguments)]
                fn go(
                    s: &Setup,
                    n: usize,
                    start: usize,
                    left: usize,
                    sum: i32,
                    max_sum: i32,
                    cur: &mut Vec<u32>,
                    out: &mut Vec<(ModuleSlots, i32)>,
                ) {
                    if left == 0 {
                        out.push((ModuleSlots::Sym(cur.clone()), sum));
                        return;
                    }
                    for i in start..n {
                        let w = s.weight(i as u32);
                        if sum + w * left as i32 > max_sum {
                            break;
                        }
                        cur.push(i as u32);
                        go(s, n, i, left - 1, sum + w, max_sum, cur, out);
                        cur.pop();
                    }
                }
                go(self, n, 0, *m, 0, max_sum, &mut cur, &mut out);
                out
            }
        }
    }

    fn torus_of_key(&self, key: &CochainBasisElement) -> Vec<i32> {
        let mut t = vec![0; self.torus_coords.len()];
        let mut add = |i: u32| {
            let tw = self.slice.field(i as usize).torus_weight();
            for (k, &c) in self.torus_coords.iter().enumerate() {
                t[k] += tw[c];
            }
        };
        for &g in &key.exterior {
            add(g);
        }
        if let ModuleSlots::Sym(s) = &key.module {
            for &g in s {
                add(g);
            }
        }
        t
    }

    pub fn level(&self, key: &CochainBasisElement) -> usize {
        match &self.level_sub {
            None => 0,
            Some(sub) => key.exterior.iter().filter(|&&g| !sub[g as usize]).count(),
        }
    }

    /// All Euler-weight-zero keys of degree `p`, grouped by torus weight.
    pub fn keys_by_torus(&self, p: usize) -> Result<BTreeMap<Vec<i32>, Vec<CochainBasisElement>>, CeError> {
        let allowed: Vec<u32> =
            (0..self.slice.len() as u32).filter(|&i| self.ext_allowed[i as usize]).collect();
        let w: Vec<i32> = allowed.iter().map(|&i| self.weight(i)).collect();
        if p > allowed.len() {
            return Ok(BTreeMap::new());
        }
        let min_ext: i32 = w[..p].iter().sum();
        let top: Vec<i32> = (0..=p).map(|k| w[w.len() - k..].iter().sum()).collect();
        let parts = self.module_parts(-min_ext);
        let mut out: BTreeMap<Vec<i32>, Vec<CochainBasisElement>> = BTreeMap::new();
        let mut count = 0usize;
        for (module, s) in parts {
            let target = -s;
            let mut found: Vec<Vec<u32>> = Vec::new();
            let mut cur = Vec::new();
            #[allow(clippy::too_many_arguments)]
            fn go(
                allowed: &[u32],
                w: &[i32],
                top: &[i32],
                start: usize,
                left: usize,
                sum: i32,
                target: i32,
                cur: &mut Vec<u32>,
                found: &mut Vec<Vec<u32>>,
            ) {
                if left == 0 {
                    if sum == target {
                        found.push(cur.clone());
                    }
                    return;
                }
                if sum + top[left] < target {
                    return;
                }
                for i in start..allowed.len() {
                    if allowed.len() - i < left {
                        break;
                    }
                    if sum + w[i] * left as i32 > target {
                        break;
                    }
                    cur.push(allowed[i]);
                    go(allowed, w, top, i + 1, left - 1, sum + w[i], target, cur, found);
                    cur.pop();
                }
            }
            go(&allowed, &w, &top, 0, p, 0, target, &mut cur, &mut found);
            count += found.len();
            if count > MAX_KEYS {
                return Err(CeError::WeightOverflow { degree: p, keys: count });
            }
            for ext in found {
                let key = CochainBasisElement { exterior: ext, module: module.clone() };
                let t = self.torus_of_key(&key);
                out.entry(t).or_default().push(key);
            }
        }
        for v in out.values_mut() {
            v.sort();
        }
        Ok(out)
    }

    /// Row of the differential at target key `tau`, as `(source key, coefficient)`.
    fn differential_row(&self, tau: &CochainBasisElement) -> Vec<(CochainBasisElement, Rational)> {
        let g = &tau.exterior;
        let mut out: Vec<(CochainBasisElement, i64)> = Vec::new();
        let mut out_q: Vec<(CochainBasisElement, Rational)> = Vec::new();
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                let base: Vec<u32> =
                    g.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, &x)| x).collect();
                let sij = if (i + j) % 2 == 0 { 1 } else { -1 };
                for &(e, c) in self.slice.bracket(g[i] as usize, g[j] as usize) {
                    if !self.ext_allowed[e] {
                        continue;
                    }
                    let mut rest = base.clone();
                    if let Some(s) = insert_sorted(&mut rest, e as u32) {
                        out.push((
                            CochainBasisElement { exterior: rest, module: tau.module.clone() },
                            sij * s * c,
                        ));
                    }
                }
            }
        }
        for i in 0..g.len() {
            let rest: Vec<u32> = g.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &x)| x).collect();
            let si: i64 = if i % 2 == 0 { 1 } else { -1 };
            match (&self.coeffs, &tau.module) {
                (Coeffs::Trivial, _) => {}
                (Coeffs::Sym(_), ModuleSlots::Sym(mu)) => {
                    for t in 0..mu.len() {
                        let others: Vec<u32> =
                            mu.iter().enumerate().filter(|&(k, _)| k != t).map(|(_, &x)| x).collect();
                        for &(e, c) in self.slice.bracket(g[i] as usize, mu[t] as usize) {
                            out.push((
                                CochainBasisElement {
                                    exterior: rest.clone(),
                                    module: ModuleSlots::Sym(insert_multiset(&others, e as u32)),
                                },
                                -si * c,
                            ));
                        }
                    }
                }
                (Coeffs::Explicit { actions, .. }, ModuleSlots::Vector(a)) => {
                    for (b, v) in actions[g[i] as usize].row(*a as usize) {
                        out_q.push((
                            CochainBasisElement { exterior: rest.clone(), module: ModuleSlots::Vector(*b as u32) },
                            v * &Rational::from(si),
                        ));
                    }
                }
                _ => unreachable!("module slots match the coefficient kind"),
            }
        }
        out_q.extend(out.into_iter().map(|(k, c)| (k, Rational::from(c))));
        out_q
    }

    /// Row of `L_x` at key `tau`: `(x·c)(tau)` as a combination of values of `c`.
    pub(crate) fn invariance_row(&self, x: usize, tau: &CochainBasisElement) -> Vec<(CochainBasisElement, Rational)> {
        let mut out: Vec<(CochainBasisElement, Rational)> = Vec::new();
        let g = &tau.exterior;
        for i in 0..g.len() {
            for &(e, c) in self.slice.bracket(x, g[i] as usize) {
                if !self.ext_allowed[e] {
                    continue;
                }
                let mut rest: Vec<u32> =
                    g.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &y)| y).collect();
                // Slot i receives e; moving it into sorted position from the front
                // costs (−1)^i, then insertion adds (−1)^pos.
                if let Some(s) = insert_sorted(&mut rest, e as u32) {
                    let si = if i % 2 == 0 { 1 } else { -1 };
                    out.push((
                        CochainBasisElement { exterior: rest, module: tau.module.clone() },
                        Rational::from(-c * s * si),
                    ));
                }
            }
        }
        match (&self.coeffs, &tau.module) {
            (Coeffs::Trivial, _) => {}
            (Coeffs::Sym(_), ModuleSlots::Sym(mu)) => {
                for t in 0..mu.len() {
                    let others: Vec<u32> =
                        mu.iter().enumerate().filter(|&(k, _)| k != t).map(|(_, &y)| y).collect();
                    for &(e, c) in self.slice.bracket(x, mu[t] as usize) {
                        out.push((
                            CochainBasisElement {
                                exterior: g.clone(),
                                module: ModuleSlots::Sym(insert_multiset(&others, e as u32)),
                            },
                            Rational::from(-c),
                        ));
                    }
                }
            }
            (Coeffs::Explicit { actions, .. }, ModuleSlots::Vector(a)) => {
                for (b, v) in actions[x].row(*a as usize) {
                    out.push((
                        CochainBasisElement { exterior: g.clone(), module: ModuleSlots::Vector(*b as u32) },
                        v.clone(),
                    ));
                }
            }
            _ => unreachable!("module slots match the coefficient kind"),
        }
        out
    }

    fn assemble(
        &self,
        rows: &[CochainBasisElement],
        cols: &HashMap<CochainBasisElement, usize>,
        ncols: usize,
        row_fn: impl Fn(&CochainBasisElement) -> Vec<(CochainBasisElement, Rational)> + Sync,
    ) -> Result<SparseRationalMatrix, CeError> {
        let parts: Vec<Result<Triplets, CeError>> = par_map(self.parallel, rows.len(), |r| {
            row_fn(&rows[r])
                .into_iter()
                .map(|(k, v)| match cols.get(&k) {
                    Some(&c) => Ok((r, c, v)),
                    None => Err(CeError::Internal(format!("cochain key {k:?} missing from its space"))),
                })
                .collect()
        });
        let mut trip = Vec::new();
        for p in parts {
            trip.extend(p?);
        }
        Ok(SparseRationalMatrix::from_triplets(rows.len(), ncols, trip)?)
    }

    /// Builds the cochain space of degree `p`, solving the invariance system
    /// when the setup is relative.
    pub fn space(&self, p: usize) -> Result<CochainSpace, CeError> {
        let buckets = self.keys_by_torus(p)?;
        let zero = vec![0; self.torus_coords.len()];
        let keys: Vec<CochainBasisElement> = buckets.get(&zero).cloned().unwrap_or_default();
        let key_levels: Vec<usize> = keys.iter().map(|k| self.level(k)).collect();
        if self.invariance.is_empty() {
            return Ok(CochainSpace { degree: p, keys, basis: None, free: None, levels: key_levels });
        }
        let col_index: HashMap<CochainBasisElement, usize> =
            keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let mut blocks = Vec::new();
        for &x in &self.invariance {
            let tx = self.slice.field(x).torus_weight();
            let target: Vec<i32> = self.torus_coords.iter().map(|&c| -tx[c]).collect();
            if !self.torus_coords.is_empty() && target == zero {
                // Diagonal fields act by the torus weight, which is zero here.
                let d = self.slice.field(x).linear_indices();
                if matches!(d, Some((i, j)) if i == j && self.torus_coords.contains(&i)) {
                    continue;
                }
            }
            let rows = match buckets.get(&target) {
                Some(r) => r,
                None => continue,
            };
            blocks.push(self.assemble(rows, &col_index, keys.len(), |tau| self.invariance_row(x, tau))?);
        }
        let mut system = SparseRationalMatrix::zero(0, keys.len());
        for b in &blocks {
            system = system.vstack(b)?;
        }
        // Solve level by level so every basis vector is homogeneous.
        let mut by_level: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &l) in key_levels.iter().enumerate() {
            by_level.entry(l).or_default().push(i);
        }
        let per_level: Vec<(usize, Vec<usize>, Vec<SparseVector>)> = by_level
            .into_iter()
            .map(|(l, cols)| {
                let sub = system.select_cols(&cols);
                let (free, kernel) = kernel_with_free_columns(&sub);
                let free = free.into_iter().map(|f| cols[f]).collect();
                let kernel = kernel
                    .into_iter()
                    .map(|v| v.into_iter().map(|(i, x)| (cols[i], x)).collect())
                    .collect();
                (l, free, kernel)
            })
            .collect();
        let mut basis = Vec::new();
        let mut free = Vec::new();
        let mut levels = Vec::new();
        for (l, f, k) in per_level {
            levels.extend(std::iter::repeat_n(l, k.len()));
            free.extend(f);
            basis.extend(k);
        }
        Ok(CochainSpace { degree: p, keys, basis: Some(basis), free: Some(free), levels })
    }

    /// Differential from `src` (degree p) to `tgt` (degree p+1) in the
    /// coordinates of the two spaces.
    pub fn differential(&self, src: &CochainSpace, tgt: &CochainSpace) -> Result<SparseRationalMatrix, CeError> {
        let col_index: HashMap<CochainBasisElement, usize> =
            src.keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let ambient = self.assemble(&tgt.keys, &col_index, src.keys.len(), |tau| self.differential_row(tau))?;
        match (&src.basis, &tgt.basis, &tgt.free) {
            (None, None, _) => Ok(ambient),
            (Some(sb), Some(tb), Some(tf)) => {
                let free_pos: HashMap<usize, usize> = tf.iter().enumerate().map(|(k, &f)| (f, k)).collect();
                let cols: Vec<Result<Triplets, CeError>> =
                    par_map(self.parallel, sb.len(), |j| {
                        let w = ambient.mul_vec(&sb[j]);
                        let coords: Vec<(usize, Rational)> = w
                            .iter()
                            .filter_map(|(i, x)| free_pos.get(i).map(|&k| (k, x.clone())))
                            .collect();
                        let mut recon: Vec<(usize, Rational)> = Vec::new();
                        for (k, x) in &coords {
                            recon.extend(tb[*k].iter().map(|(i, y)| (*i, y * x)));
                        }
                        if crate::exactlin::normalize(recon) != w {
                            return Err(CeError::NotInvariant { degree: tgt.degree, column: j });
                        }
                        Ok(coords.into_iter().map(|(k, x)| (k, j, x)).collect())
                    });
                let mut trip = Vec::new();
                for c in cols {
                    trip.extend(c?);
                }
                Ok(SparseRationalMatrix::from_triplets(tb.len(), sb.len(), trip)?)
            }
            _ => Err(CeError::Internal("mixed relative and absolute spaces".into())),
        }
    }
}
