use std::cmp::Ordering;
use std::fmt;

/// The basis vector field `x^α ∂_i` on `N` coordinates.
///
/// Directions are zero-based. Fields compare by Euler weight, then direction,
/// then exponent with higher powers of earlier variables first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialVectorField {
    exponent: Vec<u32>,
    direction: usize,
}

impl MonomialVectorField {
    /// # Panics
    ///
    /// Panics if `direction` is not a coordinate index.
    pub fn new(exponent: Vec<u32>, direction: usize) -> Self {
        assert!(direction < exponent.len(), "direction {direction} out of range");
        MonomialVectorField { exponent, direction }
    }

    /// `∂_i` on `n` coordinates.
    pub fn constant(n: usize, direction: usize) -> Self {
        Self::new(vec![0; n], direction)
    }

    /// `x_i ∂_j` on `n` coordinates.
    pub fn linear(n: usize, i: usize, j: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self::new(e, j)
    }

    pub fn exponent(&self) -> &[u32] {
        &self.exponent
    }

    pub fn direction(&self) -> usize {
        self.direction
    }

    pub fn n_vars(&self) -> usize {
        self.exponent.len()
    }

    pub fn degree(&self) -> u32 {
        self.exponent.iter().sum()
    }

    /// Euler weight `|α| − 1`.
    pub fn weight(&self) -> i32 {
        self.degree() as i32 - 1
    }

    /// Weight under the diagonal torus: `α − e_i`.
    pub fn torus_weight(&self) -> Vec<i32> {
        let mut t: Vec<i32> = self.exponent.iter().map(|&a| a as i32).collect();
        t[self.direction] -= 1;
        t
    }

    pub fn is_linear(&self) -> bool {
        self.degree() == 1
    }

    /// For a linear field `x_i ∂_j`, the pair `(i, j)`.
    pub fn linear_indices(&self) -> Option<(usize, usize)> {
        if !self.is_linear() {
            return None;
        }
        let i = self.exponent.iter().position(|&a| a == 1)?;
        Some((i, self.direction))
    }
}

impl Ord for MonomialVectorField {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then(self.direction.cmp(&other.direction))
            .then_with(|| other.exponent.cmp(&self.exponent))
    }
}

impl PartialOrd for MonomialVectorField {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn variable_name(n: usize, i: usize) -> String {
    if n <= 3 {
        ["x", "y", "z"][i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

impl fmt::Display for MonomialVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n_vars();
        for (i, &a) in self.exponent.iter().enumerate() {
            match a {
                0 => {}
                1 => write!(f, "{}", variable_name(n, i))?,
                _ => write!(f, "{}^{}", variable_name(n, i), a)?,
            }
        }
        if n == 1 {
            write!(f, "∂")
        } else {
            write!(f, "∂_{}", variable_name(n, self.direction))
        }
    }
}

impl fmt::Debug for MonomialVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `[x^α∂_i, x^β∂_j] = β_i x^{α+β−e_i}∂_j − α_j x^{α+β−e_j}∂_i`, with like
/// terms combined and zeros dropped.
///
/// # Panics
///
/// Panics if the fields live on different numbers of coordinates.
pub fn bracket(a: &MonomialVectorField, b: &MonomialVectorField) -> Vec<(MonomialVectorField, i64)> {
    assert_eq!(a.n_vars(), b.n_vars(), "bracket of fields on different coordinate counts");
    let i = a.direction;
    let j = b.direction;
    let mut out: Vec<(MonomialVectorField, i64)> = Vec::with_capacity(2);
    let bi = b.exponent[i] as i64;
    if bi != 0 {
        let mut e: Vec<u32> = a.exponent.iter().zip(&b.exponent).map(|(x, y)| x + y).collect();
        e[i] -= 1;
        out.push((MonomialVectorField { exponent: e, direction: j }, bi));
    }
    let aj = a.exponent[j] as i64;
    if aj != 0 {
        let mut e: Vec<u32> = a.exponent.iter().zip(&b.exponent).map(|(x, y)| x + y).collect();
        e[j] -= 1;
        let f = MonomialVectorField { exponent: e, direction: i };
        match out.iter_mut().find(|(g, _)| *g == f) {
            Some((_, c)) => *c -= aj,
            None => out.push((f, -aj)),
        }
    }
    out.retain(|(_, c)| *c != 0);
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w1(k: u32) -> MonomialVectorField {
        MonomialVectorField::new(vec![k], 0)
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket(&w1(0), &w1(2)), vec![(w1(1), 2)]);
        assert!(bracket(&w1(1), &w1(1)).is_empty());
        assert_eq!(bracket(&w1(2), &w1(3)), vec![(w1(4), 1)]);
    }

    #[test]
    fn mixed_directions() {
        let x_dy = MonomialVectorField::linear(2, 0, 1);
        let y_dx = MonomialVectorField::linear(2, 1, 0);
        let r = bracket(&y_dx, &x_dy);
        let x_dx = MonomialVectorField::linear(2, 0, 0);
        let y_dy = MonomialVectorField::linear(2, 1, 1);
        assert_eq!(r, vec![(x_dx, -1), (y_dy, 1)]);
    }

    #[test]
    fn display() {
        assert_eq!(w1(2).to_string(), "x^2∂");
        let f = MonomialVectorField::new(vec![1, 2], 1);
        assert_eq!(f.to_string(), "xy^2∂_y");
        assert_eq!(f.torus_weight(), vec![1, 1]);
    }
}
