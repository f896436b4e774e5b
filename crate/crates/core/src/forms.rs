//! Irreducible bundles `S^s ℰ^{A'} ⊗ (Young module of ℰ_A)[w]`, exterior-form
//! decompositions and the tractor composition series with their eigenvalues.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::weights::{bundle_minus_lowest_weight, casimir_eigenvalue};
use crate::young::{dimension, YoungDiagram};
use crate::{Error, Result, Q};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IrreducibleBundle {
    pub s: usize,
    pub diagram: YoungDiagram,
    pub w: i32,
}

impl IrreducibleBundle {
    pub fn new(s: usize, diagram: YoungDiagram, w: i32) -> Self {
        IrreducibleBundle { s, diagram, w }
    }

    /// Bundle from raw column heights; zero heights are dropped.
    pub fn from_heights(s: usize, heights: &[usize], w: i32) -> Self {
        IrreducibleBundle { s, diagram: YoungDiagram::from_heights(heights), w }
    }

    /// Each height-`n` column becomes a factor `ℰ[−1]`.
    pub fn canonical(&self, n: usize) -> Self {
        let full = self.diagram.columns().iter().filter(|&&h| h == n).count();
        let rest: Vec<usize> = self.diagram.columns().iter().copied().filter(|&h| h != n).collect();
        IrreducibleBundle::from_heights(self.s, &rest, self.w - full as i32)
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.diagram.columns().len() > 2 {
            return Err(Error::InvalidBundle(format!("{} has more than two columns", self)));
        }
        if self.diagram.height() > n {
            return Err(Error::InvalidBundle(format!("{} has a column taller than n = {n}", self)));
        }
        Ok(())
    }

    /// Rank of the bundle: `(s+1) · dim(diagram, n)`.
    pub fn dimension(&self, n: usize) -> u128 {
        (self.s as u128 + 1) * dimension(&self.diagram, n)
    }

    /// Casimir eigenvalue for `m = n + 2`.
    pub fn eigenvalue(&self, n: usize) -> Result<Q> {
        self.validate(n)?;
        Ok(casimir_eigenvalue(&bundle_minus_lowest_weight(self, n + 2)?))
    }
}

impl fmt::Display for IrreducibleBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(s={}, columns={:?}, w={})", self.s, self.diagram.columns(), self.w)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionSeries {
    pub slots: Vec<Vec<IrreducibleBundle>>,
}

impl CompositionSeries {
    pub fn constituents(&self) -> impl Iterator<Item = &IrreducibleBundle> {
        self.slots.iter().flatten()
    }

    pub fn total_dimension(&self, n: usize) -> u128 {
        self.constituents().map(|b| b.dimension(n)).sum()
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .slots
            .iter()
            .map(|s| {
                let inner: Vec<String> = s.iter().map(|b| format!("{b}")).collect();
                format!("{{{}}}", inner.join(", "))
            })
            .collect();
        parts.join(" ⊣ ")
    }
}

/// Irreducible pieces of `Λ^j T*M` for `T*M = ℰ^{A'} ⊗ ℰ_A`, in order of increasing `s`.
pub fn decompose_forms(j: usize, n: usize) -> Result<Vec<IrreducibleBundle>> {
    if j > 2 * n {
        return Err(Error::Domain(format!("form degree {j} exceeds 2n = {}", 2 * n)));
    }
    let mut out = Vec::new();
    for s in (j % 2..=j).step_by(2) {
        let p = (j + s) / 2;
        let q = (j - s) / 2;
        if p > n {
            continue;
        }
        let b = IrreducibleBundle::from_heights(s, &[p, q], -(q as i32));
        out.push(b.canonical(n));
    }
    Ok(out)
}

fn push_valid(slots: &mut Vec<Vec<IrreducibleBundle>>, s: usize, h: i64, w: i32, n: usize) {
    if h < 0 || h as usize > n {
        return;
    }
    slots.push(vec![IrreducibleBundle::from_heights(s, &[h as usize], w).canonical(n)]);
}

/// `Λ^k ℰ_α = ℰ_{𝐀̈}[1] ⊣ ℰ^{A'}_{𝐀̇}[1] ⊣ ℰ_𝐀`; slots that cannot occur are omitted.
pub fn cotractor_form_series(k: usize, n: usize) -> Result<CompositionSeries> {
    if k < 1 || k > n + 2 {
        return Err(Error::Domain(format!("k = {k} outside 1..={}", n + 2)));
    }
    let k = k as i64;
    let mut slots = Vec::new();
    push_valid(&mut slots, 0, k - 2, 1, n);
    push_valid(&mut slots, 1, k - 1, 1, n);
    push_valid(&mut slots, 0, k, 0, n);
    Ok(CompositionSeries { slots })
}

/// The five-slot series of the tractor bundle `𝒯` with Young diagram `(k, k)`.
///
/// Entries are kept literal: a column of height `n` is not traded for a density.
#[allow(non_snake_case)]
pub fn tractor_T_series(k: usize, n: usize) -> Result<CompositionSeries> {
    if k < 2 || k > n {
        return Err(Error::Domain(format!("k = {k} outside 2..={n}")));
    }
    let w = k as i32;
    let b = IrreducibleBundle::from_heights;
    Ok(CompositionSeries {
        slots: vec![
            vec![b(0, &[k - 2, k - 2], 2 - w)],
            vec![b(1, &[k - 1, k - 2], 2 - w)],
            vec![b(2, &[k - 1, k - 1], 2 - w), b(0, &[k, k - 2], 1 - w)],
            vec![b(1, &[k, k - 1], 1 - w)],
            vec![b(0, &[k, k], -w)],
        ],
    })
}

/// `β` for every constituent, slot structure preserved.
pub fn eigenvalue_table(series: &CompositionSeries, m: usize) -> Result<Vec<Vec<Q>>> {
    if m < 4 {
        return Err(Error::Domain(format!("m = {m}, need m ≥ 4")));
    }
    series
        .slots
        .iter()
        .map(|s| s.iter().map(|b| b.eigenvalue(m - 2)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qi;

    fn bundle(s: usize, cols: &[usize], w: i32) -> IrreducibleBundle {
        IrreducibleBundle::from_heights(s, cols, w)
    }

    #[test]
    fn two_forms() {
        for n in 3..6 {
            assert_eq!(decompose_forms(2, n).unwrap(), vec![bundle(0, &[1, 1], -1), bundle(2, &[2], 0)]);
        }
        // at n = 2 the skew pair is a density
        assert_eq!(decompose_forms(2, 2).unwrap(), vec![bundle(0, &[1, 1], -1), bundle(2, &[], -1)]);
    }

    #[test]
    fn four_forms() {
        for n in 5..7 {
            assert_eq!(
                decompose_forms(4, n).unwrap(),
                vec![bundle(0, &[2, 2], -2), bundle(2, &[3, 1], -1), bundle(4, &[4], 0)]
            );
        }
        assert_eq!(decompose_forms(4, 4).unwrap()[2], bundle(4, &[], -1));
        assert!(decompose_forms(9, 4).is_err());
    }

    #[test]
    fn component_counts() {
        for n in 1..8 {
            for k in 0..=n {
                let c = decompose_forms(2 * k, n).unwrap().len();
                assert_eq!(c, if 2 * k <= n { k + 1 } else { n - k + 1 }, "n={n} k={k}");
            }
        }
    }

    fn binom(a: u128, b: u128) -> u128 {
        (0..b).fold(1, |acc, i| acc * (a - i) / (i + 1))
    }

    #[test]
    fn form_dimensions() {
        for n in 1..=4usize {
            for j in 0..=(2 * n).min(8) {
                let s: u128 = decompose_forms(j, n).unwrap().iter().map(|b| b.dimension(n)).sum();
                assert_eq!(s, binom(2 * n as u128, j as u128), "j={j} n={n}");
            }
        }
    }

    #[test]
    fn cotractor_series_shapes() {
        let s = cotractor_form_series(2, 2).unwrap();
        assert_eq!(s.slots[2], vec![bundle(0, &[], -1)]);
        for n in 2..6 {
            let s = cotractor_form_series(2, n).unwrap();
            let top = if n == 2 { bundle(0, &[], -1) } else { bundle(0, &[2], 0) };
            assert_eq!(s.slots, vec![vec![bundle(0, &[], 1)], vec![bundle(1, &[1], 1)], vec![top]]);
            let s = cotractor_form_series(1, n).unwrap();
            assert_eq!(s.slots, vec![vec![bundle(1, &[], 1)], vec![bundle(0, &[1], 0)]]);
            for k in 1..=n + 2 {
                let s = cotractor_form_series(k, n).unwrap();
                assert_eq!(s.total_dimension(n), binom(n as u128 + 2, k as u128));
            }
        }
        assert!(cotractor_form_series(0, 3).is_err());
    }

    #[test]
    fn t_series_shapes() {
        let s = tractor_T_series(2, 2).unwrap();
        assert_eq!(s.slots[0], vec![bundle(0, &[], 0)]);
        let s = tractor_T_series(3, 4).unwrap();
        assert_eq!(s.slots[2], vec![bundle(2, &[2, 2], -1), bundle(0, &[3, 1], -2)]);
        for n in 2..6 {
            for k in 2..=n {
                let s = tractor_T_series(k, n).unwrap();
                assert_eq!(s.slots.len(), 5);
                assert_eq!(s.constituents().count(), 6);
                let full = dimension(&YoungDiagram::new(vec![k, k]).unwrap(), n + 2);
                assert_eq!(s.total_dimension(n), full);
            }
        }
        assert!(tractor_T_series(1, 3).is_err());
        assert!(tractor_T_series(4, 3).is_err());
    }

    #[test]
    fn t_series_eigenvalues() {
        for n in 2..=5 {
            for k in 2..=n {
                let t = eigenvalue_table(&tractor_T_series(k, n).unwrap(), n + 2).unwrap();
                let z = qi(0);
                assert_eq!(t, vec![vec![z], vec![z], vec![qi(4), qi(-4)], vec![z], vec![z]]);
            }
        }
        let triv = CompositionSeries { slots: vec![vec![bundle(0, &[], 0)]] };
        assert_eq!(eigenvalue_table(&triv, 5).unwrap(), vec![vec![qi(0)]]);
    }

    #[test]
    fn canonical_preserves_eigenvalue() {
        for n in 2..6 {
            for k in 2..=n {
                for b in tractor_T_series(k, n).unwrap().constituents() {
                    assert_eq!(b.eigenvalue(n).unwrap(), b.canonical(n).eigenvalue(n).unwrap());
                    assert_eq!(b.dimension(n), b.canonical(n).dimension(n));
                }
            }
        }
    }
}
