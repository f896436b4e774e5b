//! Sections of `𝒯` in a fixed splitting: six component tensors.
//!
//! Component layouts (slot order, density weight, Young shape on the
//! unprimed slots):
//!
//! | component | slots                         | weight  | diagram      |
//! |-----------|-------------------------------|---------|--------------|
//! | `sigma`   | `Ä B̈`                         | `2−k`   | `(k−2, k−2)` |
//! | `mu`      | `A' 𝐀̇ B̈`                     | `2−k`   | `(k−1, k−2)` |
//! | `a`       | `A' B' 𝐀̇ 𝐁̇` (primed symmetric) | `2−k`   | `(k−1, k−1)` |
//! | `alpha`   | `𝐀 B̈`                         | `1−k`   | `(k, k−2)`   |
//! | `nu`      | `A' 𝐀 𝐁̇`                     | `1−k`   | `(k, k−1)`   |
//! | `rho`     | `𝐀 𝐁`                         | `−k`    | `(k, k)`     |

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::Echelon;
use crate::rng::Lcg;
use crate::tensor::{IndexKind, Tensor, PRIMED_UP, UNPRIMED_DOWN};
use crate::young::{apply_normalized_projector, YoungDiagram};
use crate::{qi, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Component {
    Sigma,
    Mu,
    A,
    Alpha,
    Nu,
    Rho,
}

impl Component {
    pub const ALL: [Component; 6] =
        [Component::Sigma, Component::Mu, Component::A, Component::Alpha, Component::Nu, Component::Rho];

    pub fn name(self) -> &'static str {
        match self {
            Component::Sigma => "sigma",
            Component::Mu => "mu",
            Component::A => "A",
            Component::Alpha => "alpha",
            Component::Nu => "nu",
            Component::Rho => "rho",
        }
    }

    /// Number of leading primed-up slots.
    pub fn primed(self) -> usize {
        match self {
            Component::Mu | Component::Nu => 1,
            Component::A => 2,
            _ => 0,
        }
    }

    /// Column heights of the unprimed part.
    pub fn columns(self, k: usize) -> [usize; 2] {
        match self {
            Component::Sigma => [k - 2, k - 2],
            Component::Mu => [k - 1, k - 2],
            Component::A => [k - 1, k - 1],
            Component::Alpha => [k, k - 2],
            Component::Nu => [k, k - 1],
            Component::Rho => [k, k],
        }
    }

    pub fn weight(self, k: usize) -> i32 {
        let k = k as i32;
        match self {
            Component::Sigma | Component::Mu | Component::A => 2 - k,
            Component::Alpha | Component::Nu => 1 - k,
            Component::Rho => -k,
        }
    }

    pub fn slots(self, k: usize) -> Vec<IndexKind> {
        let [a, b] = self.columns(k);
        let mut s = vec![PRIMED_UP; self.primed()];
        s.extend(core::iter::repeat_n(UNPRIMED_DOWN, a + b));
        s
    }

    pub fn zero(self, n: usize, k: usize) -> Tensor {
        Tensor::zeros(n, &self.slots(k), self.weight(k))
    }

    /// Projects a tensor of this layout onto the irreducible component.
    pub fn project(self, t: &Tensor, k: usize) -> Result<Tensor> {
        let expected = self.slots(k);
        if t.slots() != expected.as_slice() {
            return Err(Error::Signature(format!(
                "{} expects {:?}, got {:?}",
                self.name(),
                expected,
                t.slots()
            )));
        }
        let p = self.primed();
        let [a, b] = self.columns(k);
        let d = YoungDiagram::from_heights(&[a, b]);
        let unprimed: Vec<usize> = (p..p + a + b).collect();
        let mut out = apply_normalized_projector(&d, t, &unprimed)?;
        if p == 2 {
            out = out.symmetrize(&[0, 1])?;
        }
        Ok(out.with_weight(self.weight(k)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TSection {
    pub n: usize,
    pub k: usize,
    pub sigma: Tensor,
    pub mu: Tensor,
    pub a: Tensor,
    pub alpha: Tensor,
    pub nu: Tensor,
    pub rho: Tensor,
}

pub(crate) fn check_nk(n: usize, k: usize) -> Result<()> {
    if k < 2 || k > n {
        return Err(Error::Domain(format!("need 2 ≤ k ≤ n, got n = {n}, k = {k}")));
    }
    Ok(())
}

impl TSection {
    pub fn zero(n: usize, k: usize) -> Result<Self> {
        check_nk(n, k)?;
        Ok(TSection {
            n,
            k,
            sigma: Component::Sigma.zero(n, k),
            mu: Component::Mu.zero(n, k),
            a: Component::A.zero(n, k),
            alpha: Component::Alpha.zero(n, k),
            nu: Component::Nu.zero(n, k),
            rho: Component::Rho.zero(n, k),
        })
    }

    pub fn get(&self, c: Component) -> &Tensor {
        match c {
            Component::Sigma => &self.sigma,
            Component::Mu => &self.mu,
            Component::A => &self.a,
            Component::Alpha => &self.alpha,
            Component::Nu => &self.nu,
            Component::Rho => &self.rho,
        }
    }

    pub fn get_mut(&mut self, c: Component) -> &mut Tensor {
        match c {
            Component::Sigma => &mut self.sigma,
            Component::Mu => &mut self.mu,
            Component::A => &mut self.a,
            Component::Alpha => &mut self.alpha,
            Component::Nu => &mut self.nu,
            Component::Rho => &mut self.rho,
        }
    }

    /// Section with a single nonzero component.
    pub fn only(n: usize, k: usize, c: Component, t: Tensor) -> Result<Self> {
        let mut s = TSection::zero(n, k)?;
        s.set(c, t)?;
        Ok(s)
    }

    pub fn set(&mut self, c: Component, t: Tensor) -> Result<()> {
        if t.slots() != c.slots(self.k).as_slice() || t.n() != self.n {
            return Err(Error::Signature(format!("{} got {:?}", c.name(), t.slots())));
        }
        *self.get_mut(c) = t.with_weight(c.weight(self.k));
        Ok(())
    }

    /// Keeps only the listed components.
    pub fn restrict(&self, keep: &[Component]) -> Self {
        let mut s = self.clone();
        for c in Component::ALL {
            if !keep.contains(&c) {
                *s.get_mut(c) = c.zero(self.n, self.k);
            }
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        Component::ALL.iter().all(|&c| self.get(c).is_zero())
    }

    pub fn project(&self) -> Result<Self> {
        let mut s = self.clone();
        for c in Component::ALL {
            *s.get_mut(c) = c.project(self.get(c), self.k)?;
        }
        Ok(s)
    }

    pub fn try_sub(&self, other: &TSection) -> Result<Self> {
        let mut s = self.clone();
        for c in Component::ALL {
            *s.get_mut(c) = self.get(c).try_sub(other.get(c))?;
        }
        Ok(s)
    }

    /// Pseudorandom section (entries in `[-3, 3]` before projection).
    pub fn random(n: usize, k: usize, rng: &mut Lcg) -> Result<Self> {
        let mut s = TSection::zero(n, k)?;
        for c in Component::ALL {
            let t = Tensor::from_fn(n, &c.slots(k), c.weight(k), |_| qi(rng.small_int(3)));
            *s.get_mut(c) = c.project(&t, k)?;
        }
        Ok(s)
    }

    /// A basis of the component's irreducible bundle, from projected unit tensors.
    pub fn component_basis(n: usize, k: usize, c: Component) -> Result<Vec<Tensor>> {
        let mut ech = Echelon::new();
        let mut out = Vec::new();
        for e in Tensor::basis(n, &c.slots(k), c.weight(k)) {
            let p = c.project(&e, k)?;
            if ech.insert(p.data()) {
                out.push(p);
            }
        }
        Ok(out)
    }

    /// Basis of the whole section space, component by component.
    pub fn basis(n: usize, k: usize) -> Result<Vec<TSection>> {
        let mut out = Vec::new();
        for c in Component::ALL {
            for t in TSection::component_basis(n, k, c)? {
                out.push(TSection::only(n, k, c, t)?);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::tractor_T_series;

    #[test]
    fn basis_size_matches_series_dimension() {
        for (n, k) in [(2, 2), (3, 2), (3, 3)] {
            let total = tractor_T_series(k, n).unwrap().total_dimension(n);
            assert_eq!(TSection::basis(n, k).unwrap().len() as u128, total);
        }
    }

    #[test]
    fn projection_is_idempotent() {
        let mut g = Lcg::new(3);
        let s = TSection::random(3, 3, &mut g).unwrap();
        assert_eq!(s.project().unwrap(), s);
    }
}
