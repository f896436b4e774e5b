//! Dense exact tensors with typed index slots.
//!
//! Three index families occur: primed spinor indices (dimension 2), unprimed
//! spinor indices (dimension `n`) and cotractor indices (dimension `n + 2`,
//! the first two coordinates being the primed part of the fixed splitting).
//!
//! Primed indices are moved with ε, fixed by `ε^{1'2'} = +1`:
//!
//! * raising: `v^{B'} = v_{A'} ε^{A'B'}`, density weight `+1`;
//! * lowering: `v_{B'} = v^{A'} ε_{A'B'}`, density weight `−1`.
//!
//! Round-tripping forces `ε_{1'2'} = −1`, which in turn makes
//! `v^{[A'B']} = −½ v_{I'}{}^{I'} ε^{A'B'}` hold for skew `v`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::{qi, Error, Result, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variance {
    Up,
    Down,
}

impl Variance {
    pub fn flip(self) -> Self {
        match self {
            Variance::Up => Variance::Down,
            Variance::Down => Variance::Up,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IndexKind {
    Primed(Variance),
    Unprimed(Variance),
    Tractor(Variance),
}

pub const PRIMED_UP: IndexKind = IndexKind::Primed(Variance::Up);
pub const PRIMED_DOWN: IndexKind = IndexKind::Primed(Variance::Down);
pub const UNPRIMED_UP: IndexKind = IndexKind::Unprimed(Variance::Up);
pub const UNPRIMED_DOWN: IndexKind = IndexKind::Unprimed(Variance::Down);
pub const TRACTOR_DOWN: IndexKind = IndexKind::Tractor(Variance::Down);

impl IndexKind {
    pub fn dim(self, n: usize) -> usize {
        match self {
            IndexKind::Primed(_) => 2,
            IndexKind::Unprimed(_) => n,
            IndexKind::Tractor(_) => n + 2,
        }
    }

    pub fn variance(self) -> Variance {
        match self {
            IndexKind::Primed(v) | IndexKind::Unprimed(v) | IndexKind::Tractor(v) => v,
        }
    }

    /// Same family with the variance flipped.
    pub fn dual(self) -> Self {
        match self {
            IndexKind::Primed(v) => IndexKind::Primed(v.flip()),
            IndexKind::Unprimed(v) => IndexKind::Unprimed(v.flip()),
            IndexKind::Tractor(v) => IndexKind::Tractor(v.flip()),
        }
    }

    pub fn same_family(self, other: Self) -> bool {
        core::mem::discriminant(&self) == core::mem::discriminant(&other)
    }
}

/// All permutations of `0..m` with their signs, identity first.
pub fn permutations(m: usize) -> Vec<(Vec<usize>, i128)> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..m).collect();
    fn rec(k: usize, cur: &mut Vec<usize>, sign: i128, out: &mut Vec<(Vec<usize>, i128)>) {
        if k == cur.len() {
            out.push((cur.clone(), sign));
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(k + 1, cur, if i == k { sign } else { -sign }, out);
            cur.swap(k, i);
        }
    }
    rec(0, &mut cur, 1, &mut out);
    out
}

fn factorial(m: usize) -> i128 {
    (1..=m as i128).product()
}

/// Odometer over a box of multi-indices, last position fastest.
#[derive(Debug, Clone)]
pub struct MultiIndex {
    dims: Vec<usize>,
    cur: Vec<usize>,
    done: bool,
}

impl MultiIndex {
    pub fn new(dims: &[usize]) -> Self {
        MultiIndex {
            dims: dims.to_vec(),
            cur: vec![0; dims.len()],
            done: dims.contains(&0),
        }
    }
}

impl Iterator for MultiIndex {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        let mut i = self.dims.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.cur[i] += 1;
            if self.cur[i] < self.dims[i] {
                break;
            }
            self.cur[i] = 0;
        }
        Some(out)
    }
}

fn advance(idx: &mut [usize], dims: &[usize]) -> bool {
    let mut i = dims.len();
    while i > 0 {
        i -= 1;
        idx[i] += 1;
        if idx[i] < dims[i] {
            return true;
        }
        idx[i] = 0;
    }
    false
}

#[derive(Clone, PartialEq, Eq)]
pub struct Tensor {
    n: usize,
    slots: Vec<IndexKind>,
    data: Vec<Q>,
    weight: i32,
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tensor")
            .field("n", &self.n)
            .field("slots", &self.slots)
            .field("weight", &self.weight)
            .field("nonzero", &self.nonzero_entries())
            .finish()
    }
}

impl Tensor {
    pub fn zeros(n: usize, slots: &[IndexKind], weight: i32) -> Self {
        let len = slots.iter().map(|k| k.dim(n)).product();
        Tensor { n, slots: slots.to_vec(), data: vec![Q::zero(); len], weight }
    }

    pub fn scalar(n: usize, value: Q, weight: i32) -> Self {
        Tensor { n, slots: Vec::new(), data: vec![value], weight }
    }

    pub fn from_fn<F>(n: usize, slots: &[IndexKind], weight: i32, mut f: F) -> Self
    where
        F: FnMut(&[usize]) -> Q,
    {
        let mut t = Tensor::zeros(n, slots, weight);
        let dims = t.dims();
        for (off, idx) in MultiIndex::new(&dims).enumerate() {
            t.data[off] = f(&idx);
        }
        t
    }

    /// Tensor with a single unit entry at `idx`.
    pub fn unit(n: usize, slots: &[IndexKind], weight: i32, idx: &[usize]) -> Self {
        let mut t = Tensor::zeros(n, slots, weight);
        t.set(idx, Q::one());
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn slots(&self) -> &[IndexKind] {
        &self.slots
    }

    pub fn rank(&self) -> usize {
        self.slots.len()
    }

    pub fn weight(&self) -> i32 {
        self.weight
    }

    pub fn with_weight(mut self, weight: i32) -> Self {
        self.weight = weight;
        self
    }

    pub fn dims(&self) -> Vec<usize> {
        self.slots.iter().map(|k| k.dim(self.n)).collect()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[Q] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Q] {
        &mut self.data
    }

    pub fn strides(&self) -> Vec<usize> {
        let dims = self.dims();
        let mut s = vec![1; dims.len()];
        for i in (0..dims.len().saturating_sub(1)).rev() {
            s[i] = s[i + 1] * dims[i + 1];
        }
        s
    }

    pub fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.slots.len());
        let mut off = 0;
        for (i, k) in idx.iter().zip(&self.slots) {
            off = off * k.dim(self.n) + i;
        }
        off
    }

    pub fn get(&self, idx: &[usize]) -> Q {
        self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: Q) {
        let off = self.offset(idx);
        self.data[off] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn nonzero_entries(&self) -> Vec<(Vec<usize>, Q)> {
        MultiIndex::new(&self.dims())
            .zip(&self.data)
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, *v))
            .collect()
    }

    /// Same slot signature (n, kinds). Density weights are not compared.
    pub fn same_shape(&self, other: &Tensor) -> bool {
        self.n == other.n && self.slots == other.slots
    }

    fn check_shape(&self, other: &Tensor) -> Result<()> {
        if self.same_shape(other) {
            Ok(())
        } else {
            Err(Error::Signature(format!("{:?} vs {:?}", self.slots, other.slots)))
        }
    }

    pub fn try_add(&self, other: &Tensor) -> Result<Tensor> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Tensor) -> Result<Tensor> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        Ok(out)
    }

    /// `self += c · other`.
    pub fn axpy(&mut self, c: Q, other: &Tensor) -> Result<()> {
        self.check_shape(other)?;
        if c.is_zero() {
            return Ok(());
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += c * b;
            }
        }
        Ok(())
    }

    pub fn scale(&self, c: Q) -> Tensor {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= c;
        }
        out
    }

    pub fn outer(&self, other: &Tensor) -> Tensor {
        assert_eq!(self.n, other.n, "outer product of tensors over different n");
        let mut slots = self.slots.clone();
        slots.extend_from_slice(&other.slots);
        let mut data = Vec::with_capacity(self.data.len() * other.data.len());
        for a in &self.data {
            for b in &other.data {
                data.push(*a * b);
            }
        }
        Tensor { n: self.n, slots, data, weight: self.weight + other.weight }
    }

    /// Reorders slots: slot `i` of the result is slot `order[i]` of `self`.
    pub fn permute(&self, order: &[usize]) -> Result<Tensor> {
        let r = self.rank();
        if order.len() != r {
            return Err(Error::Arity { expected: r, got: order.len() });
        }
        let mut seen = vec![false; r];
        for &o in order {
            if o >= r || seen[o] {
                return Err(Error::Domain(format!("{order:?} is not a permutation")));
            }
            seen[o] = true;
        }
        let slots: Vec<IndexKind> = order.iter().map(|&o| self.slots[o]).collect();
        let strides = self.strides();
        let src_strides: Vec<usize> = order.iter().map(|&o| strides[o]).collect();
        let mut out = Tensor::zeros(self.n, &slots, self.weight);
        let dims = out.dims();
        let mut idx = vec![0; r];
        let mut off = 0;
        loop {
            let src: usize = idx.iter().zip(&src_strides).map(|(i, s)| i * s).sum();
            out.data[off] = self.data[src];
            off += 1;
            if !advance(&mut idx, &dims) {
                break;
            }
        }
        Ok(out)
    }

    fn check_common_kind(&self, slots: &[usize]) -> Result<()> {
        let mut seen = vec![false; self.rank()];
        for &s in slots {
            if s >= self.rank() || seen[s] {
                return Err(Error::Domain(format!("bad slot list {slots:?}")));
            }
            seen[s] = true;
        }
        if let Some(&first) = slots.first() {
            let k = self.slots[first];
            for &s in slots {
                if self.slots[s] != k {
                    return Err(Error::KindMismatch { expected: k, found: self.slots[s] });
                }
            }
        }
        Ok(())
    }

    /// `Σ_π coeff(π) · π·t` where π permutes the values sitting in `slots`.
    fn group_sum(&self, slots: &[usize], perms: &[(Vec<usize>, i128)], signed: bool) -> Tensor {
        let m = slots.len();
        if m <= 1 {
            return self.clone();
        }
        let strides = self.strides();
        let dims = self.dims();
        let norm = Q::new(1, factorial(m));
        let mut out = Tensor::zeros(self.n, &self.slots, self.weight);
        let r = self.rank();
        let mut idx = vec![0; r];
        let mut off = 0;
        // offsets without the permuted slots' contribution
        loop {
            let base: usize = (0..r)
                .filter(|i| !slots.contains(i))
                .map(|i| idx[i] * strides[i])
                .sum();
            let mut acc = Q::zero();
            for (p, sign) in perms {
                let mut src = base;
                for j in 0..m {
                    src += idx[slots[p[j]]] * strides[slots[j]];
                }
                let v = self.data[src];
                if v.is_zero() {
                    continue;
                }
                if signed && *sign < 0 {
                    acc -= v;
                } else {
                    acc += v;
                }
            }
            out.data[off] = acc * norm;
            off += 1;
            if !advance(&mut idx, &dims) {
                break;
            }
        }
        out
    }

    /// Average over all permutations of the values in `slots`.
    pub fn symmetrize(&self, slots: &[usize]) -> Result<Tensor> {
        self.check_common_kind(slots)?;
        Ok(self.group_sum(slots, &permutations(slots.len()), false))
    }

    /// Signed average over all permutations of the values in `slots`.
    pub fn alternate(&self, slots: &[usize]) -> Result<Tensor> {
        self.check_common_kind(slots)?;
        Ok(self.group_sum(slots, &permutations(slots.len()), true))
    }

    /// Convenience: `alternate` over the contiguous range `start..start+len`.
    pub fn alternate_range(&self, start: usize, len: usize) -> Result<Tensor> {
        let s: Vec<usize> = (start..start + len).collect();
        self.alternate(&s)
    }

    /// Trace over a pair of slots of the same family and opposite variance.
    pub fn contract(&self, up: usize, down: usize) -> Result<Tensor> {
        let r = self.rank();
        if up >= r || down >= r || up == down {
            return Err(Error::Domain(format!("cannot contract slots {up}, {down}")));
        }
        let (ku, kd) = (self.slots[up], self.slots[down]);
        if ku.variance() != Variance::Up || kd != ku.dual() {
            return Err(Error::KindMismatch { expected: ku.dual(), found: kd });
        }
        let keep: Vec<usize> = (0..r).filter(|&i| i != up && i != down).collect();
        let slots: Vec<IndexKind> = keep.iter().map(|&i| self.slots[i]).collect();
        let strides = self.strides();
        let d = ku.dim(self.n);
        let diag = strides[up] + strides[down];
        let mut out = Tensor::zeros(self.n, &slots, self.weight);
        let dims = out.dims();
        let mut idx = vec![0; keep.len()];
        let mut off = 0;
        loop {
            let base: usize = idx.iter().zip(&keep).map(|(i, &s)| i * strides[s]).sum();
            let mut acc = Q::zero();
            for t in 0..d {
                acc += self.data[base + t * diag];
            }
            out.data[off] = acc;
            off += 1;
            if !advance(&mut idx, &dims) {
                break;
            }
        }
        Ok(out)
    }

    /// Tensor-dot: contracts `self` slot `a` with `other` slot `b` for each
    /// `(a, b)` in `pairs`. Result slots: free slots of `self`, then of `other`.
    ///
    /// Paired slots must be of the same family with opposite variance.
    pub fn contract_with(&self, other: &Tensor, pairs: &[(usize, usize)]) -> Result<Tensor> {
        if self.n != other.n {
            return Err(Error::Signature(format!("n {} vs {}", self.n, other.n)));
        }
        for &(a, b) in pairs {
            let (ka, kb) = (self.slots[a], other.slots[b]);
            if kb != ka.dual() {
                return Err(Error::KindMismatch { expected: ka.dual(), found: kb });
            }
        }
        let free_a: Vec<usize> = (0..self.rank()).filter(|i| !pairs.iter().any(|p| p.0 == *i)).collect();
        let free_b: Vec<usize> = (0..other.rank()).filter(|i| !pairs.iter().any(|p| p.1 == *i)).collect();
        let mut slots: Vec<IndexKind> = free_a.iter().map(|&i| self.slots[i]).collect();
        slots.extend(free_b.iter().map(|&i| other.slots[i]));
        let sa = self.strides();
        let sb = other.strides();
        let sum_dims: Vec<usize> = pairs.iter().map(|&(a, _)| self.slots[a].dim(self.n)).collect();
        // offsets contributed by the summed indices
        let sum_offsets: Vec<(usize, usize)> = MultiIndex::new(&sum_dims)
            .map(|s| {
                let oa = s.iter().zip(pairs).map(|(v, p)| v * sa[p.0]).sum();
                let ob = s.iter().zip(pairs).map(|(v, p)| v * sb[p.1]).sum();
                (oa, ob)
            })
            .collect();
        let mut out = Tensor::zeros(self.n, &slots, self.weight + other.weight);
        let dims_a: Vec<usize> = free_a.iter().map(|&i| self.slots[i].dim(self.n)).collect();
        let dims_b: Vec<usize> = free_b.iter().map(|&i| other.slots[i].dim(self.n)).collect();
        let offs_a: Vec<usize> = MultiIndex::new(&dims_a)
            .map(|ix| ix.iter().zip(&free_a).map(|(v, &s)| v * sa[s]).sum())
            .collect();
        let offs_b: Vec<usize> = MultiIndex::new(&dims_b)
            .map(|ix| ix.iter().zip(&free_b).map(|(v, &s)| v * sb[s]).sum())
            .collect();
        let mut off = 0;
        for &ba in &offs_a {
            for &bb in &offs_b {
                let mut acc = Q::zero();
                for &(ca, cb) in &sum_offsets {
                    let x = self.data[ba + ca];
                    if x.is_zero() {
                        continue;
                    }
                    let y = other.data[bb + cb];
                    if !y.is_zero() {
                        acc += x * y;
                    }
                }
                out.data[off] = acc;
                off += 1;
            }
        }
        Ok(out)
    }

    /// `v^{B'} = v_{A'} ε^{A'B'}` on the given slot; density weight `+1`.
    pub fn raise_primed(&self, slot: usize) -> Result<Tensor> {
        self.move_primed(slot, Variance::Down)
    }

    /// `v_{B'} = v^{A'} ε_{A'B'}` on the given slot; density weight `−1`.
    pub fn lower_primed(&self, slot: usize) -> Result<Tensor> {
        self.move_primed(slot, Variance::Up)
    }

    fn move_primed(&self, slot: usize, from: Variance) -> Result<Tensor> {
        let expected = IndexKind::Primed(from);
        let found = *self.slots.get(slot).ok_or(Error::Domain(format!("slot {slot} out of range")))?;
        if found != expected {
            return Err(Error::KindMismatch { expected, found });
        }
        let eps = match from {
            Variance::Down => epsilon_up(self.n),
            Variance::Up => epsilon_down(self.n),
        };
        // contract the slot with ε's first index, then move the new index back in place
        let t = self.contract_with(&eps, &[(slot, 0)])?;
        let r = self.rank();
        let mut order: Vec<usize> = (0..r - 1).collect();
        order.insert(slot, r - 1);
        t.permute(&order)
    }

    /// Unit tensors spanning the full tensor space of the given signature.
    pub fn basis(n: usize, slots: &[IndexKind], weight: i32) -> impl Iterator<Item = Tensor> + '_ {
        let dims: Vec<usize> = slots.iter().map(|k| k.dim(n)).collect();
        MultiIndex::new(&dims).map(move |idx| Tensor::unit(n, slots, weight, &idx))
    }

    /// Sparse view, keyed by multi-index.
    pub fn to_sparse(&self) -> BTreeMap<Vec<usize>, Q> {
        self.nonzero_entries().into_iter().collect()
    }
}

/// `ε^{A'B'}` with `ε^{1'2'} = 1`, density weight `+1`.
pub fn epsilon_up(n: usize) -> Tensor {
    let mut e = Tensor::zeros(n, &[PRIMED_UP, PRIMED_UP], 1);
    e.set(&[0, 1], qi(1));
    e.set(&[1, 0], qi(-1));
    e
}

/// `ε_{A'B'}`, the inverse pairing: `ε^{A'B'} ε_{B'C'} = δ^{A'}_{C'}`, so `ε_{1'2'} = −1`.
pub fn epsilon_down(n: usize) -> Tensor {
    let mut e = Tensor::zeros(n, &[PRIMED_DOWN, PRIMED_DOWN], -1);
    e.set(&[0, 1], qi(-1));
    e.set(&[1, 0], qi(1));
    e
}

/// Identity `δ^a_b` on a family, as a (up, down) tensor.
pub fn identity(n: usize, up: IndexKind) -> Tensor {
    let down = up.dual();
    Tensor::from_fn(n, &[up, down], 0, |i| if i[0] == i[1] { qi(1) } else { Q::zero() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;

    fn sample(n: usize, slots: &[IndexKind], seed: i128) -> Tensor {
        let mut c = seed;
        Tensor::from_fn(n, slots, 0, |_| {
            c = (c * 37 + 11) % 17;
            qi(c - 8)
        })
    }

    #[test]
    fn eps_down_sign_is_frozen() {
        assert_eq!(epsilon_down(3).get(&[0, 1]), qi(-1));
        assert_eq!(epsilon_up(3).get(&[0, 1]), qi(1));
    }

    #[test]
    fn raise_unit_covector() {
        let v = Tensor::from_fn(2, &[PRIMED_DOWN], 0, |i| if i[0] == 0 { qi(1) } else { qi(0) });
        let up = v.raise_primed(0).unwrap();
        assert_eq!(up.data(), &[qi(0), qi(1)]);
        assert_eq!(up.weight(), 1);
    }

    #[test]
    fn raise_lower_roundtrip() {
        let t = sample(3, &[PRIMED_DOWN, UNPRIMED_DOWN, PRIMED_UP], 5);
        let r = t.raise_primed(0).unwrap().lower_primed(0).unwrap();
        assert_eq!(r.data(), t.data());
        assert_eq!(r.weight(), t.weight());
        let l = t.lower_primed(2).unwrap().raise_primed(2).unwrap();
        assert_eq!(l.data(), t.data());
        assert!(t.raise_primed(1).is_err());
        assert!(t.lower_primed(0).is_err());
    }

    #[test]
    fn skew_primed_reconstruction() {
        // v^{[A'B']} = −½ v_{I'}^{I'} ε^{A'B'}
        let c = q(7, 3);
        let v = epsilon_up(2).scale(c);
        let tr = v.lower_primed(0).unwrap().contract(1, 0).unwrap().data()[0];
        assert_eq!(tr, qi(-2) * c);
        assert_eq!(epsilon_up(2).scale(q(-1, 2) * tr).data(), v.data());
    }

    #[test]
    fn alternate_three_primed_vanishes() {
        let t = sample(2, &[PRIMED_UP, PRIMED_UP, PRIMED_UP], 3);
        assert!(t.alternate(&[0, 1, 2]).unwrap().is_zero());
    }

    #[test]
    fn symmetrize_is_idempotent_and_alternate_fixes_wedge() {
        let t = sample(3, &[UNPRIMED_DOWN, UNPRIMED_DOWN, UNPRIMED_DOWN], 9);
        let s = t.symmetrize(&[0, 1, 2]).unwrap();
        assert_eq!(s.symmetrize(&[0, 1, 2]).unwrap(), s);
        let mut w = Tensor::zeros(3, &[UNPRIMED_DOWN, UNPRIMED_DOWN], 0);
        w.set(&[0, 1], qi(1));
        w.set(&[1, 0], qi(-1));
        assert_eq!(w.alternate(&[0, 1]).unwrap(), w);
        assert!(t.alternate(&[0, 3]).is_err());
        let mixed = sample(3, &[UNPRIMED_DOWN, PRIMED_DOWN], 1);
        assert!(matches!(mixed.alternate(&[0, 1]), Err(Error::KindMismatch { .. })));
    }

    #[test]
    fn contraction_examples() {
        for n in 1..5 {
            assert_eq!(identity(n, UNPRIMED_UP).contract(0, 1).unwrap().data()[0], qi(n as i128));
        }
        // ε^{A'B'} ε_{B'C'} = δ^{A'}_{C'}
        let e = epsilon_up(2).contract_with(&epsilon_down(2), &[(1, 0)]).unwrap();
        assert_eq!(e.data(), identity(2, PRIMED_UP).data());
        let u = Tensor::from_fn(3, &[UNPRIMED_UP], 0, |i| qi(i[0] as i128 + 1));
        let v = Tensor::from_fn(3, &[UNPRIMED_DOWN], 0, |i| qi(2 - i[0] as i128));
        assert_eq!(u.outer(&v).contract(0, 1).unwrap().data()[0], qi(2 + 2));
        assert!(u.outer(&v).contract(1, 0).is_err());
    }

    #[test]
    fn permutation_signs() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p.iter().map(|x| x.1).sum::<i128>(), 0);
        assert_eq!(p[0], ((0..3).collect(), 1));
    }
}
