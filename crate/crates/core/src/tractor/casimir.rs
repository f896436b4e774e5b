//! Formal curved Casimir on a composition series: `𝒞 = β + N₁ + N₂`, with
//! `N₁` standing for the one-step lowering `−2∇•` and `N₂` for the two-step
//! lowering `−2P••`, kept as noncommuting generators labelled by their edges.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::forms::{eigenvalue_table, tractor_T_series};
use crate::{Error, Result, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    N1,
    N2,
}

/// One lowering step `from → to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Step {
    pub gen: Generator,
    pub from: usize,
    pub to: usize,
}

/// Steps in application order.
pub type Word = Vec<Step>;

/// Block matrix over the free algebra: `(target, source) → Σ coeff · word`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FormalMatrix {
    pub size: usize,
    pub blocks: BTreeMap<(usize, usize), BTreeMap<Word, Q>>,
}

impl FormalMatrix {
    pub fn zero(size: usize) -> Self {
        FormalMatrix { size, blocks: BTreeMap::new() }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = FormalMatrix::zero(size);
        for i in 0..size {
            m.add_word(i, i, Vec::new(), Q::one());
        }
        m
    }

    pub fn add_word(&mut self, target: usize, source: usize, word: Word, c: Q) {
        if c.is_zero() {
            return;
        }
        let block = self.blocks.entry((target, source)).or_default();
        let e = block.entry(word).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            block.retain(|_, v| !v.is_zero());
            if block.is_empty() {
                self.blocks.remove(&(target, source));
            }
        }
    }

    /// The block `source → target`; empty when zero.
    pub fn block(&self, target: usize, source: usize) -> BTreeMap<Word, Q> {
        self.blocks.get(&(target, source)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `self ∘ other`: `other` is applied first.
    pub fn compose(&self, other: &FormalMatrix) -> FormalMatrix {
        let mut out = FormalMatrix::zero(self.size);
        for (&(m, s), right) in &other.blocks {
            for (&(t, m2), left) in &self.blocks {
                if m2 != m {
                    continue;
                }
                for (w1, c1) in right {
                    for (w2, c2) in left {
                        let mut w = w1.clone();
                        w.extend_from_slice(w2);
                        out.add_word(t, s, w, *c1 * *c2);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &FormalMatrix) -> FormalMatrix {
        let mut out = self.clone();
        for (&(t, s), b) in &other.blocks {
            for (w, c) in b {
                out.add_word(t, s, w.clone(), *c);
            }
        }
        out
    }

    pub fn scale(&self, c: Q) -> FormalMatrix {
        let mut out = FormalMatrix::zero(self.size);
        for (&(t, s), b) in &self.blocks {
            for (w, v) in b {
                out.add_word(t, s, w.clone(), *v * c);
            }
        }
        out
    }

    /// Keeps only words built from `N₁` alone.
    pub fn principal(&self) -> FormalMatrix {
        let mut out = FormalMatrix::zero(self.size);
        for (&(t, s), b) in &self.blocks {
            for (w, v) in b {
                if w.iter().all(|st| st.gen == Generator::N1) {
                    out.add_word(t, s, w.clone(), *v);
                }
            }
        }
        out
    }
}

/// Slot eigenvalues and the lowering edges of a composition series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalCasimir {
    pub labels: Vec<String>,
    pub beta: Vec<Q>,
    pub n1_edges: Vec<(usize, usize)>,
    pub n2_edges: Vec<(usize, usize)>,
}

/// Constituent indices of the six-constituent series of `𝒯`.
pub mod slot {
    pub const TOP: usize = 0;
    pub const S1: usize = 1;
    pub const S2A: usize = 2;
    pub const S2B: usize = 3;
    pub const S3: usize = 4;
    pub const BOTTOM: usize = 5;
}

impl FormalCasimir {
    /// The series of `𝒯` at `(n, k)` with its eigenvalues.
    pub fn tractor(n: usize, k: usize) -> Result<Self> {
        let table = eigenvalue_table(&tractor_T_series(k, n)?, n + 2)?;
        let beta: Vec<Q> = table.into_iter().flatten().collect();
        use slot::*;
        Ok(FormalCasimir {
            labels: ["0", "1", "2a", "2b", "3", "4"].iter().map(|s| String::from(*s)).collect(),
            beta,
            n1_edges: vec![(TOP, S1), (S1, S2A), (S1, S2B), (S2A, S3), (S2B, S3), (S3, BOTTOM)],
            n2_edges: vec![(TOP, S2A), (TOP, S2B), (S1, S3), (S2A, BOTTOM), (S2B, BOTTOM)],
        })
    }

    /// A series with a single constituent.
    pub fn single(beta: Q) -> Self {
        FormalCasimir { labels: vec![String::from("0")], beta: vec![beta], n1_edges: Vec::new(), n2_edges: Vec::new() }
    }

    pub fn size(&self) -> usize {
        self.beta.len()
    }

    /// `𝒞 − c`.
    pub fn shifted(&self, c: Q) -> Result<FormalMatrix> {
        let size = self.size();
        for &(a, b) in self.n1_edges.iter().chain(&self.n2_edges) {
            if a >= size || b >= size || a >= b {
                return Err(Error::Domain(format!("edge {a}→{b} does not lower within {size} slots")));
            }
        }
        let mut m = FormalMatrix::zero(size);
        for (i, b) in self.beta.iter().enumerate() {
            m.add_word(i, i, Vec::new(), *b - c);
        }
        for &(from, to) in &self.n1_edges {
            m.add_word(to, from, vec![Step { gen: Generator::N1, from, to }], Q::one());
        }
        for &(from, to) in &self.n2_edges {
            m.add_word(to, from, vec![Step { gen: Generator::N2, from, to }], Q::one());
        }
        Ok(m)
    }

    pub fn matrix(&self) -> Result<FormalMatrix> {
        self.shifted(Q::zero())
    }

    pub fn describe_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return String::from("id");
        }
        let parts: Vec<String> = w
            .iter()
            .map(|s| format!("{:?}({}→{})", s.gen, self.labels[s.from], self.labels[s.to]))
            .collect();
        parts.join("·")
    }
}

/// `Π (𝒞 − c)` over the given constants.
pub fn formal_casimir_compose(fc: &FormalCasimir, polynomial: &[Q]) -> Result<FormalMatrix> {
    let mut acc = FormalMatrix::identity(fc.size());
    for &c in polynomial {
        acc = fc.shifted(c)?.compose(&acc);
    }
    Ok(acc)
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Path words of four `N₁` steps `0 → 1 → 2x → 3 → 4`.
pub fn four_step_path(branch_slot: usize) -> Word {
    use slot::*;
    let hops = [TOP, S1, branch_slot, S3, BOTTOM];
    hops.windows(2).map(|w| Step { gen: Generator::N1, from: w[0], to: w[1] }).collect()
}

/// Factorization of the top-to-bottom block of `𝒞³(𝒞−4)(𝒞+4)` as
/// `Σ 𝒞_{4←a} · M̂_{a←b} · 𝒞_{b←0}` with `M̂ = 𝒞(𝒞−4)(𝒞+4)`; returns whether
/// the block equals that sum and whether its principal part is
/// `𝒞_{4←3} M̂_{3←1} 𝒞_{1←0}` alone.
pub fn factorization_check(fc: &FormalCasimir) -> Result<(bool, bool)> {
    use slot::*;
    let four = Q::from_integer(4);
    let big = formal_casimir_compose(fc, &[Q::zero(), Q::zero(), Q::zero(), four, -four])?;
    let m_hat = formal_casimir_compose(fc, &[Q::zero(), four, -four])?;
    let c = fc.matrix()?;
    let sum = c.compose(&m_hat).compose(&c);
    let whole = big.block(BOTTOM, TOP) == sum.block(BOTTOM, TOP);
    let restrict = |m: &FormalMatrix, t: usize, s: usize| -> FormalMatrix {
        let mut out = FormalMatrix::zero(m.size);
        for (w, v) in m.block(t, s) {
            out.add_word(t, s, w, v);
        }
        out
    };
    let through = restrict(&c, BOTTOM, S3).compose(&restrict(&m_hat, S3, S1)).compose(&restrict(&c, S1, TOP));
    let principal = big.principal().block(BOTTOM, TOP) == through.principal().block(BOTTOM, TOP);
    Ok((whole, principal))
}

/// Path coefficient `κ` of each four-step `N₁` path in the top-to-bottom
/// block of `𝒞²(𝒞−4)(𝒞+4)`, or `None` when the two paths differ.
pub fn path_coefficient(fc: &FormalCasimir) -> Result<Option<Q>> {
    use slot::*;
    let four = Q::from_integer(4);
    let m = formal_casimir_compose(fc, &[Q::zero(), Q::zero(), four, -four])?;
    let b = m.block(BOTTOM, TOP);
    let get = |w: &Word| b.get(w).copied().unwrap_or_else(Q::zero);
    let (a, c) = (get(&four_step_path(S2A)), get(&four_step_path(S2B)));
    Ok(if a == c { Some(a) } else { None })
}

/// The symbol constant under the `−2`-per-bullet bookkeeping, compared with
/// the values 3 per path and 6 in total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BookkeepingCheck {
    pub n: usize,
    pub k: usize,
    /// Constant per path with unit coefficients on the displayed action rows.
    pub per_path: Option<Q>,
    /// Sum over both paths.
    pub total: Option<Q>,
    /// `κ` from the formal Casimir product.
    pub kappa: Option<Q>,
    /// `(−2)⁴ κ`: the factor carried by each path in the Casimir product.
    pub casimir_factor: Option<Q>,
    pub claimed_per_path: Q,
    pub claimed_total: Q,
}

impl BookkeepingCheck {
    pub fn matches_claim(&self) -> bool {
        self.per_path == Some(self.claimed_per_path) && self.total == Some(self.claimed_total)
    }

    /// `claimed / computed` per path, when both exist.
    pub fn discrepancy(&self) -> Option<Q> {
        self.per_path.filter(|c| !c.is_zero()).map(|c| self.claimed_per_path / c)
    }
}

pub fn bookkeeping_check(n: usize, k: usize, samples: usize, seed: u64) -> Result<BookkeepingCheck> {
    let r = super::symbol::symbol_path_constants(super::symbol::ActionRows::Displayed, n, k, samples, seed)?;
    let per_path = if r.c1 == r.c2 { r.c1 } else { None };
    let kappa = path_coefficient(&FormalCasimir::tractor(n, k)?)?;
    Ok(BookkeepingCheck {
        n,
        k,
        per_path,
        total: per_path.map(|c| c + c),
        kappa,
        casimir_factor: kappa.map(|x| x * Q::from_integer(16)),
        claimed_per_path: Q::from_integer(3),
        claimed_total: Q::from_integer(6),
    })
}

#[cfg(test)]
mod tests {
    use super::slot::*;
    use super::*;
    use crate::qi;

    fn fc() -> FormalCasimir {
        FormalCasimir::tractor(3, 2).unwrap()
    }

    #[test]
    fn casimir_structure() {
        let f = fc();
        assert_eq!(f.beta, vec![qi(0), qi(0), qi(4), qi(-4), qi(0), qi(0)]);
        let m = f.matrix().unwrap();
        for &(t, s) in m.blocks.keys() {
            assert!(t >= s);
        }
        // nilpotent part: five steps exhaust the series
        let mut nil = f.shifted(qi(0)).unwrap();
        for i in 0..6 {
            nil.blocks.remove(&(i, i));
        }
        let mut p = FormalMatrix::identity(6);
        for _ in 0..6 {
            p = nil.compose(&p);
        }
        assert!(p.is_zero());
    }

    #[test]
    fn m_operator_block() {
        let f = fc();
        let m = formal_casimir_compose(&f, &[qi(0), qi(4), qi(-4)]).unwrap();
        let b = m.block(S3, S1);
        assert!(!b.is_empty());
        let via = |x: usize| vec![Step { gen: Generator::N1, from: S1, to: x }, Step { gen: Generator::N1, from: x, to: S3 }];
        let a = b[&via(S2A)];
        let c = b[&via(S2B)];
        assert!(!a.is_zero());
        assert_eq!(a, -c);
        // the eigenslots of the polynomial are annihilated on the diagonal
        for i in 0..6 {
            assert!(m.block(i, i).is_empty());
        }
    }

    #[test]
    fn two_paths_top_to_bottom() {
        let f = fc();
        let m = formal_casimir_compose(&f, &[qi(0), qi(0), qi(4), qi(-4)]).unwrap();
        let b = m.principal().block(BOTTOM, TOP);
        assert_eq!(b.len(), 2);
        assert_eq!(b[&four_step_path(S2A)], b[&four_step_path(S2B)]);
    }

    #[test]
    fn single_slot_is_annihilated() {
        let f = FormalCasimir::single(qi(7));
        assert!(formal_casimir_compose(&f, &[qi(7)]).unwrap().is_zero());
        assert!(!formal_casimir_compose(&f, &[qi(6)]).unwrap().is_zero());
    }

    #[test]
    fn bookkeeping_side_check() {
        // four factors, four steps: each factor contributes its unit N₁ edge
        let kappa = path_coefficient(&fc()).unwrap();
        assert_eq!(kappa, Some(qi(1)));
        let r = bookkeeping_check(2, 2, 2, 3).unwrap();
        assert_eq!(r.per_path, Some(qi(6)));
        assert_eq!(r.total, Some(qi(12)));
        assert!(!r.matches_claim());
        assert_eq!(r.discrepancy(), Some(crate::q(1, 2)));
        assert_eq!(r.casimir_factor, kappa.map(|x| x * qi(16)));
    }

    #[test]
    fn top_to_bottom_factorizes() {
        assert_eq!(factorization_check(&fc()).unwrap(), (true, true));
    }
}
