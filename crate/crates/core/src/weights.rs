//! Weights of sl(m) in ε-coordinates and the Casimir eigenvalue `⟨λ, λ+2ρ⟩`.
//!
//! The pairing is the Euclidean dot product on ε-coordinates (trace form of
//! the standard representation). `ω_m` is taken to be zero.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::forms::IrreducibleBundle;
use crate::{qi, Error, Result, Q};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weight {
    coords: Vec<Q>,
}

impl Weight {
    pub fn zero(m: usize) -> Self {
        Weight { coords: vec![Q::zero(); m] }
    }

    /// Builds a weight from ε-coordinates; they must sum to zero.
    pub fn from_coords(coords: Vec<Q>) -> Result<Self> {
        let s: Q = coords.iter().sum();
        if !s.is_zero() {
            return Err(Error::Domain(format!("ε-coordinates sum to {s}, not 0")));
        }
        Ok(Weight { coords })
    }

    /// `Σ c_i ω_i` for the given `(i, c_i)` pairs.
    pub fn from_fundamental(terms: &[(usize, Q)], m: usize) -> Result<Self> {
        let mut w = Weight::zero(m);
        for &(i, c) in terms {
            w = w + fundamental_weight(i, m)? * c;
        }
        Ok(w)
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn m(&self) -> usize {
        self.coords.len()
    }

    /// Euclidean pairing of ε-coordinates.
    pub fn dot(&self, other: &Weight) -> Q {
        assert_eq!(self.m(), other.m(), "weights of different rank");
        self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum()
    }

    /// Coefficients in the basis `ω_1 … ω_{m−1}`.
    pub fn fundamental_coords(&self) -> Vec<Q> {
        (0..self.m().saturating_sub(1))
            .map(|i| self.coords[i] - self.coords[i + 1])
            .collect()
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        assert_eq!(self.m(), rhs.m(), "weights of different rank");
        Weight { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        self + (-rhs)
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight { coords: self.coords.into_iter().map(|a| -a).collect() }
    }
}

impl Mul<Q> for Weight {
    type Output = Weight;
    fn mul(self, c: Q) -> Weight {
        Weight { coords: self.coords.into_iter().map(|a| a * c).collect() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RankData {
    n: usize,
}

impl RankData {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("n = {n}, need n ≥ 2")));
        }
        Ok(RankData { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.n + 2
    }
}

/// `ω_i = ε₁+…+ε_i − (i/m)Σε`, with `ω_m = 0`.
pub fn fundamental_weight(i: usize, m: usize) -> Result<Weight> {
    if i < 1 || i > m {
        return Err(Error::IndexOutOfRange { index: i, max: m });
    }
    let shift = Q::new(i as i128, m as i128);
    let coords = (0..m)
        .map(|j| if j < i { qi(1) - shift } else { -shift })
        .collect();
    Ok(Weight { coords })
}

pub fn rho(m: usize) -> Weight {
    let mut w = Weight::zero(m);
    for i in 1..m {
        w = w + fundamental_weight(i, m).expect("index in range");
    }
    w
}

/// `⟨λ, λ + 2ρ⟩`.
pub fn casimir_eigenvalue(lambda: &Weight) -> Q {
    let two_rho = rho(lambda.m()) * qi(2);
    lambda.dot(&(lambda.clone() + two_rho))
}

/// `s(ω₁−ω₂) + Σ_c (ω_{h_c+2}−ω₂) + w·ω₂`.
pub fn bundle_minus_lowest_weight(b: &IrreducibleBundle, m: usize) -> Result<Weight> {
    if m < 4 {
        return Err(Error::Domain(format!("m = {m}, need m ≥ 4")));
    }
    let n = m - 2;
    let w1 = fundamental_weight(1, m)?;
    let w2 = fundamental_weight(2, m)?;
    let mut out = (w1 - w2.clone()) * qi(b.s as i128);
    for &h in b.diagram.columns() {
        if h > n {
            return Err(Error::InvalidBundle(format!("column height {h} exceeds n = {n}")));
        }
        out = out + fundamental_weight(h + 2, m)? - w2.clone();
    }
    Ok(out + w2 * qi(b.w as i128))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;
    use crate::young::YoungDiagram;

    fn w(c: &[(i128, i128)]) -> Vec<Q> {
        c.iter().map(|&(a, b)| q(a, b)).collect()
    }

    #[test]
    fn fundamental_examples() {
        assert_eq!(fundamental_weight(2, 4).unwrap().coords(), &w(&[(1, 2), (1, 2), (-1, 2), (-1, 2)])[..]);
        assert_eq!(fundamental_weight(4, 4).unwrap(), Weight::zero(4));
        assert_eq!(fundamental_weight(1, 4).unwrap().coords(), &w(&[(3, 4), (-1, 4), (-1, 4), (-1, 4)])[..]);
        assert!(matches!(fundamental_weight(0, 4), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(fundamental_weight(5, 4), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(4).coords(), &w(&[(3, 2), (1, 2), (-1, 2), (-3, 2)])[..]);
        assert_eq!(rho(3).coords(), &w(&[(1, 1), (0, 1), (-1, 1)])[..]);
        assert_eq!(rho(2).coords(), &w(&[(1, 2), (-1, 2)])[..]);
    }

    #[test]
    fn casimir_examples() {
        assert_eq!(casimir_eigenvalue(&Weight::zero(4)), qi(0));
        let l = Weight::from_fundamental(&[(3, qi(2)), (2, qi(-4)), (1, qi(2))], 4).unwrap();
        assert_eq!(casimir_eigenvalue(&l), qi(4));
        let l = Weight::from_fundamental(&[(4, qi(1)), (2, qi(1)), (2, qi(-3))], 4).unwrap();
        assert_eq!(casimir_eigenvalue(&l), qi(-4));
    }

    #[test]
    fn bundle_weight_examples() {
        for k in 2..=4usize {
            let m = k + 4;
            let b = IrreducibleBundle::new(0, YoungDiagram::from_heights(&[k - 2, k - 2]), 2 - k as i32);
            let expect = Weight::from_fundamental(&[(k, qi(2)), (2, -qi(k as i128))], m).unwrap();
            assert_eq!(bundle_minus_lowest_weight(&b, m).unwrap(), expect);
            let b = IrreducibleBundle::new(2, YoungDiagram::new(vec![k - 1, k - 1]).unwrap(), 2 - k as i32);
            let expect = Weight::from_fundamental(
                &[(k + 1, qi(2)), (2, -qi(k as i128 + 2)), (1, qi(2))],
                m,
            )
            .unwrap();
            assert_eq!(bundle_minus_lowest_weight(&b, m).unwrap(), expect);
        }
        let triv = IrreducibleBundle::new(0, YoungDiagram::empty(), 0);
        assert_eq!(bundle_minus_lowest_weight(&triv, 5).unwrap(), Weight::zero(5));
        let bad = IrreducibleBundle::new(0, YoungDiagram::new(vec![4]).unwrap(), 0);
        assert!(matches!(bundle_minus_lowest_weight(&bad, 5), Err(Error::InvalidBundle(_))));
    }

    #[test]
    fn fundamental_coords_roundtrip() {
        let l = Weight::from_fundamental(&[(1, q(1, 3)), (3, qi(-2))], 5).unwrap();
        assert_eq!(l.fundamental_coords(), vec![q(1, 3), qi(0), qi(-2), qi(0)]);
    }
}
