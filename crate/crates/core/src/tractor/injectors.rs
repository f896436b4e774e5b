//! Concrete injectors in the splitting `R^{(n+2)*} = R^{2*} ⊕ R^{n*}`, the
//! embedding of sections into `⊗^{2k}` cotractors, extraction back, and the
//! bullet action of one-forms on cotractor tensors.
//!
//! Cotractor index values: `0, 1` are the primed part (`Y^{A'}_α = δ_{α,A'}`),
//! `2 + a` the unprimed part (`X^A_α = δ_{α,2+A}`).

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::linalg::proportionality;
use crate::rng::Lcg;
use crate::tensor::{epsilon_down, IndexKind, Tensor, Variance, PRIMED_UP, TRACTOR_DOWN, UNPRIMED_UP};
use crate::young::{apply_projector, apply_projector_sparse, Sparse, YoungDiagram};
use crate::{q, qi, Error, Result, Q};

use super::section::{check_nk, Component, TSection};

#[derive(Debug, Clone)]
pub struct InjectorBasis {
    pub n: usize,
    pub k: usize,
    pub x: Tensor,
    pub y: Tensor,
    pub xx: Tensor,
    pub ww: Tensor,
    pub yy: Tensor,
}

fn rep(kind: IndexKind, m: usize) -> Vec<IndexKind> {
    vec![kind; m]
}

/// `Π_i F_i^{I_i}_{α_i}` alternated over the α's; result slots `[I_1..I_k, α_1..α_k]`.
fn alternated_product(factors: &[&Tensor]) -> Result<Tensor> {
    let k = factors.len();
    let mut t = factors[0].clone();
    for f in &factors[1..] {
        t = t.outer(f);
    }
    let order: Vec<usize> = (0..k).map(|i| 2 * i).chain((0..k).map(|i| 2 * i + 1)).collect();
    t.permute(&order)?.alternate_range(k, k)
}

impl InjectorBasis {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::Domain(format!("k = {k}, need k ≥ 2")));
        }
        let x = Tensor::from_fn(n, &[UNPRIMED_UP, TRACTOR_DOWN], 0, |i| {
            if i[1] == i[0] + 2 { qi(1) } else { Q::zero() }
        });
        let y = Tensor::from_fn(n, &[PRIMED_UP, TRACTOR_DOWN], 0, |i| {
            if i[1] == i[0] { qi(1) } else { Q::zero() }
        });
        let xs: Vec<&Tensor> = core::iter::repeat_n(&x, k).collect();
        let xx = alternated_product(&xs)?;
        let mut w: Vec<&Tensor> = vec![&y];
        w.extend(core::iter::repeat_n(&x, k - 1));
        let ww = alternated_product(&w)?;
        let mut yv: Vec<&Tensor> = vec![&y, &y];
        yv.extend(core::iter::repeat_n(&x, k - 2));
        let yy = alternated_product(&yv)?;
        Ok(InjectorBasis { n, k, x, y, xx, ww, yy })
    }

    /// `ε_{C'D'} YY^{C'D'Ä}_𝛂`, slots `[Ä, 𝛂]`.
    fn yy_low(&self) -> Result<Tensor> {
        epsilon_down(self.n).contract_with(&self.yy, &[(0, 0), (1, 1)])
    }

    /// `ε_{C'D'} WW^{C'U}_𝛂 WW^{D'V}_𝛃`, slots `[U, 𝛂, V, 𝛃]`.
    fn ww_pair(&self) -> Result<Tensor> {
        let left = epsilon_down(self.n).contract_with(&self.ww, &[(0, 0)])?;
        // left: [D', U, 𝛂]
        left.contract_with(&self.ww, &[(0, 0)])
    }

    /// Tractor tensor `v_{𝛂𝛃}` of the section, in `⊗^{2k} ℰ_α [−k]`.
    pub fn embed(&self, s: &TSection) -> Result<Tensor> {
        let (n, k) = (self.n, self.k);
        if s.n != n || s.k != k {
            return Err(Error::Signature(format!("section (n,k)=({},{}) vs injectors ({n},{k})", s.n, s.k)));
        }
        let r = |a: usize, b: usize| -> Vec<(usize, usize)> { (0..b).map(|i| (a + i, i)).collect() };
        let yl = self.yy_low()?;
        let mut f = Tensor::zeros(n, &rep(TRACTOR_DOWN, 2 * k), -(k as i32));
        let mut add = |t: Tensor| -> Result<()> {
            if t.weight() != -(k as i32) {
                return Err(Error::EngineDefect(format!("embedded term has weight {}", t.weight())));
            }
            f.axpy(qi(1), &t)
        };
        // σ ε ε YY YY
        let t = s.sigma.contract_with(&yl, &r(0, k - 2))?;
        add(t.contract_with(&yl, &r(0, k - 2))?.permute(&(0..2 * k).collect::<Vec<_>>())?)?;
        // μ ε WW ε YY
        let mu = s.mu.lower_primed(0)?;
        let t = mu.contract_with(&self.ww, &r(0, k))?;
        add(t.contract_with(&yl, &r(0, k - 2))?)?;
        // A ε ε WW WW
        let a = s.a.lower_primed(0)?.lower_primed(1)?;
        // [C', D', 𝐀̇, 𝐁̇] → [C', 𝐀̇, D', 𝐁̇]
        let mut order = vec![0];
        order.extend(2..k + 1);
        order.push(1);
        order.extend(k + 1..2 * k);
        let a = a.permute(&order)?;
        let t = a.contract_with(&self.ww, &r(0, k))?;
        add(t.contract_with(&self.ww, &r(0, k))?)?;
        // α ε (XX YY + (k/2) WW WW)
        let t = s.alpha.contract_with(&self.xx, &r(0, k))?;
        add(t.contract_with(&yl, &r(0, k - 2))?)?;
        // α_{A₁ 𝐀̇ B̈} against [U = (A₁, B̈), 𝛂, V = 𝐀̇, 𝛃]
        let mut order = vec![0];
        order.extend(k..2 * k - 2);
        order.extend(1..k);
        let al = s.alpha.permute(&order)?;
        let pair = self.ww_pair()?;
        let mut pairs: Vec<(usize, usize)> = (0..k - 1).map(|i| (i, i)).collect();
        pairs.extend((0..k - 1).map(|i| (k - 1 + i, k - 1 + k + i)));
        add(al.contract_with(&pair, &pairs)?.scale(q(k as i128, 2)))?;
        // ν ε XX WW
        let nu = s.nu.lower_primed(0)?;
        let nu = {
            let mut order: Vec<usize> = (1..k + 1).collect();
            order.push(0);
            order.extend(k + 1..2 * k);
            nu.permute(&order)?
        };
        let t = nu.contract_with(&self.xx, &r(0, k))?;
        add(t.contract_with(&self.ww, &r(0, k))?)?;
        // ρ XX XX
        let t = s.rho.contract_with(&self.xx, &r(0, k))?;
        add(t.contract_with(&self.xx, &r(0, k))?)?;
        // (𝛂 𝛃)
        let swap: Vec<usize> = (k..2 * k).chain(0..k).collect();
        let g = f.permute(&swap)?;
        let mut out = f.try_add(&g)?.scale(q(1, 2));
        out = out.with_weight(-(k as i32));
        Ok(out)
    }

    /// Reads the six components back from a tractor tensor in `𝒯`.
    pub fn extract(&self, v: &Tensor) -> Result<TSection> {
        let (n, k) = (self.n, self.k);
        if v.slots() != rep(TRACTOR_DOWN, 2 * k).as_slice() {
            return Err(Error::Signature(format!("expected {} cotractor slots", 2 * k)));
        }
        let at = |alpha: &[usize], beta: &[usize]| -> Q {
            let mut idx = alpha.to_vec();
            idx.extend_from_slice(beta);
            v.get(&idx)
        };
        extract_with(n, k, at)
    }

    /// Tractor tensors of `𝒯`: the Young `(k, k)` projector applied to `t`.
    pub fn project_to_t(&self, t: &Tensor) -> Result<Tensor> {
        let d = YoungDiagram::new(vec![self.k, self.k])?;
        let slots: Vec<usize> = (0..2 * self.k).collect();
        apply_projector(&d, t, &slots)
    }
}

fn up(a: &[usize]) -> Vec<usize> {
    a.iter().map(|x| x + 2).collect()
}

fn cat(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut v = a.to_vec();
    v.extend_from_slice(b);
    v
}

/// Component extraction from any evaluator `at(𝛂, 𝛃)` of a tractor tensor.
fn extract_with<F: Fn(&[usize], &[usize]) -> Q>(n: usize, k: usize, at: F) -> Result<TSection> {
    let kq = k as i128;
    let mut s = TSection::zero(n, k)?;
    let c_sigma = q(kq * kq * (kq - 1) * (kq - 1), 4);
    s.sigma = Tensor::from_fn(n, &Component::Sigma.slots(k), Component::Sigma.weight(k), |i| {
        let (aa, bb) = i.split_at(k - 2);
        c_sigma * at(&cat(&[0, 1], &up(aa)), &cat(&[0, 1], &up(bb)))
    });
    let c_mu = qi(-kq * kq * (kq - 1));
    let mut mu_slots = Component::Mu.slots(k);
    mu_slots[0] = IndexKind::Primed(Variance::Down);
    let mu_low = Tensor::from_fn(n, &mu_slots, Component::Mu.weight(k) - 1, |i| {
        let (aa, bb) = i[1..].split_at(k - 1);
        c_mu * at(&cat(&[i[0]], &up(aa)), &cat(&[0, 1], &up(bb)))
    });
    s.mu = mu_low.raise_primed(0)?;
    let c_a = qi(kq * kq);
    let mut a_slots = Component::A.slots(k);
    a_slots[0] = IndexKind::Primed(Variance::Down);
    a_slots[1] = IndexKind::Primed(Variance::Down);
    let a_low = Tensor::from_fn(n, &a_slots, Component::A.weight(k) - 2, |i| {
        let (aa, bb) = i[2..].split_at(k - 1);
        let (c, d) = (i[0], i[1]);
        c_a * q(1, 2) * (at(&cat(&[c], &up(aa)), &cat(&[d], &up(bb))) + at(&cat(&[d], &up(aa)), &cat(&[c], &up(bb))))
    });
    s.a = a_low.raise_primed(0)?.raise_primed(1)?;
    let c_alpha = qi(-kq * (kq - 1));
    s.alpha = Tensor::from_fn(n, &Component::Alpha.slots(k), Component::Alpha.weight(k), |i| {
        let (aa, bb) = i.split_at(k);
        c_alpha * at(&up(aa), &cat(&[0, 1], &up(bb)))
    });
    let c_nu = qi(2 * kq);
    let mut nu_slots = Component::Nu.slots(k);
    nu_slots[0] = IndexKind::Primed(Variance::Down);
    let nu_low = Tensor::from_fn(n, &nu_slots, Component::Nu.weight(k) - 1, |i| {
        let (aa, bb) = i[1..].split_at(k);
        c_nu * at(&up(aa), &cat(&[i[0]], &up(bb)))
    });
    s.nu = nu_low.raise_primed(0)?;
    s.rho = Tensor::from_fn(n, &Component::Rho.slots(k), Component::Rho.weight(k), |i| {
        let (aa, bb) = i.split_at(k);
        at(&up(aa), &up(bb))
    });
    Ok(s)
}

/// `φ•v`: one-form action on every cotractor slot of `v`, as a derivation.
///
/// On a single slot, `(φ•v)_{2+A} = −φ^{A'}_A v_{A'}` and the primed part is zero.
pub fn bullet(phi: &Tensor, v: &Tensor) -> Result<Tensor> {
    if phi.slots() != [PRIMED_UP, IndexKind::Unprimed(Variance::Down)] {
        return Err(Error::Signature(format!("one-form expected, got {:?}", phi.slots())));
    }
    if phi.n() != v.n() {
        return Err(Error::Signature(format!("n {} vs {}", phi.n(), v.n())));
    }
    if v.slots().contains(&IndexKind::Tractor(Variance::Up)) {
        return Err(Error::KindMismatch { expected: TRACTOR_DOWN, found: IndexKind::Tractor(Variance::Up) });
    }
    let n = v.n();
    let strides = v.strides();
    let mut out = Tensor::zeros(n, v.slots(), v.weight());
    let nz = v.nonzero_entries();
    for (s, kind) in v.slots().iter().enumerate() {
        if *kind != TRACTOR_DOWN {
            continue;
        }
        for (idx, val) in &nz {
            let p = idx[s];
            if p >= 2 {
                continue;
            }
            let base = v.offset(idx) - p * strides[s];
            for a in 0..n {
                let f = phi.get(&[p, a]);
                if f.is_zero() {
                    continue;
                }
                out.data_mut()[base + (2 + a) * strides[s]] -= f * val;
            }
        }
    }
    Ok(out)
}

/// Skew-primed part of the `WW·WW` block, normalized as the coefficient `B_{𝐀̇𝐁̇}`
/// of `ε_{C'D'} WW^{C'𝐀̇}_{(𝛂} WW^{D'𝐁̇}_{𝛃)}`.
fn read_b<F: Fn(&[usize], &[usize]) -> Q>(n: usize, k: usize, at: &F) -> Tensor {
    let kq = k as i128;
    let slots = vec![crate::tensor::UNPRIMED_DOWN; 2 * k - 2];
    Tensor::from_fn(n, &slots, 1 - k as i32, |i| {
        let (aa, bb) = i.split_at(k - 1);
        q(-kq * kq, 2) * (at(&cat(&[0], &up(aa)), &cat(&[1], &up(bb))) - at(&cat(&[1], &up(aa)), &cat(&[0], &up(bb))))
    })
}

/// Outcome of the `B`/`α` relation check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BAlphaReport {
    /// `B = x · α_{[A₂|𝐁̇|Ä]}`.
    pub x: Q,
    /// `α = y · B_{𝐀B̈}`.
    pub y: Q,
}

/// Reads `α` and `B` off genuine elements of `𝒯` (images of the Young `(k, k)`
/// projector on cotractor tensors) and solves for the two proportionality
/// constants relating them.
pub fn verify_b_alpha(n: usize, k: usize, seed: u64) -> Result<BAlphaReport> {
    check_nk(n, k)?;
    let d = YoungDiagram::new(vec![k, k])?;
    let slots: Vec<usize> = (0..2 * k).collect();
    let mut rng = Lcg::new(seed);
    let mut sp = Sparse::new();
    // cotractor tensors with an unprimed first block and a (0', 1', …) second block
    for shift in 0..3usize {
        let mut key: Vec<u8> = (0..k).map(|i| ((i + shift) % n + 2) as u8).collect();
        key.push(0);
        key.push(1);
        key.extend((0..k - 2).map(|i| ((i + 2 * shift) % n + 2) as u8));
        let c = qi(rng.small_int(3));
        if !c.is_zero() {
            *sp.entry(key).or_insert(Q::zero()) += c;
        }
        let mut key2: Vec<u8> = vec![0];
        key2.extend((0..k - 1).map(|i| ((i + shift) % n + 2) as u8));
        key2.push(1);
        key2.extend((0..k - 1).map(|i| ((i + 1 + shift) % n + 2) as u8));
        let c = qi(rng.small_int(3));
        if !c.is_zero() {
            *sp.entry(key2).or_insert(Q::zero()) += c;
        }
    }
    let v = apply_projector_sparse(&d, &sp, &slots)?;
    let at = |a: &[usize], b: &[usize]| -> Q {
        let key: Vec<u8> = a.iter().chain(b).map(|&x| x as u8).collect();
        v.get(&key).copied().unwrap_or_else(Q::zero)
    };
    b_alpha_constants(n, k, &at)
}

fn b_alpha_constants<F: Fn(&[usize], &[usize]) -> Q>(n: usize, k: usize, at: &F) -> Result<BAlphaReport> {
    let kq = k as i128;
    let alpha = Tensor::from_fn(n, &Component::Alpha.slots(k), Component::Alpha.weight(k), |i| {
        let (aa, bb) = i.split_at(k);
        qi(-kq * (kq - 1)) * at(&up(aa), &cat(&[0, 1], &up(bb)))
    });
    let b = read_b(n, k, at);
    if alpha.is_zero() || b.is_zero() {
        return Err(Error::EngineDefect("test tensor has vanishing α or B block".into()));
    }
    // α_{A₂ 𝐁̇ Ä} alternated over 𝐀̇, indexed by (𝐀̇, 𝐁̇)
    let shuffled = Tensor::from_fn(n, b.slots(), b.weight(), |i| {
        let (aa, bb) = i.split_at(k - 1);
        let mut idx = vec![aa[0]];
        idx.extend_from_slice(bb);
        idx.extend_from_slice(&aa[1..]);
        alpha.get(&idx)
    })
    .alternate_range(0, k - 1)?;
    let x = proportionality(b.data(), shuffled.data())
        .ok_or_else(|| Error::EngineDefect("B is not proportional to the shuffled α".into()))?;
    let b_alt = b.alternate_range(0, k)?;
    let y = proportionality(alpha.data(), b_alt.data())
        .ok_or_else(|| Error::EngineDefect("α is not proportional to the alternated B".into()))?;
    Ok(BAlphaReport { x, y })
}

/// Dense variant of [`verify_b_alpha`] reading a given tractor tensor.
pub fn b_alpha_from_tensor(v: &Tensor, k: usize) -> Result<BAlphaReport> {
    let at = |a: &[usize], b: &[usize]| -> Q {
        let mut idx = a.to_vec();
        idx.extend_from_slice(b);
        v.get(&idx)
    };
    b_alpha_constants(v.n(), k, &at)
}

/// Sparse map to dense tensor helper for small cases.
pub fn sparse_to_dense(n: usize, slots: &[IndexKind], weight: i32, sp: &BTreeMap<Vec<u8>, Q>) -> Tensor {
    let mut t = Tensor::zeros(n, slots, weight);
    for (key, v) in sp {
        let idx: Vec<usize> = key.iter().map(|&x| x as usize).collect();
        t.set(&idx, *v);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::UNPRIMED_DOWN;

    fn one_form(n: usize, seed: u64) -> Tensor {
        let mut g = Lcg::new(seed);
        Tensor::from_fn(n, &[PRIMED_UP, UNPRIMED_DOWN], 0, |_| qi(g.small_int(2)))
    }

    #[test]
    fn injector_shapes_and_alternation() {
        let ib = InjectorBasis::new(3, 3).unwrap();
        assert_eq!(ib.xx.rank(), 6);
        assert_eq!(ib.ww.rank(), 6);
        assert_eq!(ib.yy.rank(), 6);
        for t in [&ib.xx, &ib.ww, &ib.yy] {
            assert_eq!(&t.alternate_range(3, 3).unwrap(), t);
        }
    }

    #[test]
    fn bullet_on_injectors() {
        let n = 3;
        let ib = InjectorBasis::new(n, 3).unwrap();
        let phi = one_form(n, 5);
        assert!(bullet(&phi, &ib.x).unwrap().is_zero());
        assert!(bullet(&phi, &ib.xx).unwrap().is_zero());
        // (φ•Y)^{A'}_α = −φ^{A'}_A X^A_α
        let expect = phi.contract_with(&ib.x, &[(1, 0)]).unwrap().scale(qi(-1));
        assert_eq!(bullet(&phi, &ib.y).unwrap(), expect);
        // (φ•YY)^{A'B'Ä} = 2 φ^{[A'}_I WW^{B']IÄ}
        let t = phi.contract_with(&ib.ww, &[(1, 1)]).unwrap().alternate(&[0, 1]).unwrap().scale(qi(2));
        assert_eq!(bullet(&phi, &ib.yy).unwrap(), t);
        // (φ•WW)^{A'𝐀̇} = −φ^{A'}_I XX^{I𝐀̇}
        let t = phi.contract_with(&ib.xx, &[(1, 0)]).unwrap().scale(qi(-1));
        assert_eq!(bullet(&phi, &ib.ww).unwrap(), t);
        // three bullets kill anything with at most two Y factors
        let b3 = bullet(&phi, &bullet(&phi, &bullet(&phi, &ib.yy).unwrap()).unwrap()).unwrap();
        assert!(b3.is_zero());
    }

    #[test]
    fn bullet_rejects_bad_signatures() {
        let ib = InjectorBasis::new(2, 2).unwrap();
        let bad = Tensor::zeros(2, &[UNPRIMED_DOWN, UNPRIMED_DOWN], 0);
        assert!(bullet(&bad, &ib.x).is_err());
    }

    #[test]
    fn round_trips() {
        for (n, k) in [(2, 2), (3, 2), (3, 3), (4, 3)] {
            let ib = InjectorBasis::new(n, k).unwrap();
            let mut g = Lcg::new(11 + n as u64);
            let s = TSection::random(n, k, &mut g).unwrap();
            let v = ib.embed(&s).unwrap();
            assert_eq!(ib.project_to_t(&v).unwrap().scale(qi(1) / YoungDiagram::new(vec![k, k]).unwrap().quasi_idempotence()), v, "embed lands in T at ({n},{k})");
            assert_eq!(ib.extract(&v).unwrap(), s, "extract∘embed at ({n},{k})");
            let raw = Tensor::from_fn(n, &rep(TRACTOR_DOWN, 2 * k), -(k as i32), |_| qi(g.small_int(2)));
            let w = ib.project_to_t(&raw).unwrap();
            assert_eq!(ib.embed(&ib.extract(&w).unwrap()).unwrap(), w, "embed∘extract at ({n},{k})");
        }
    }

    #[test]
    fn b_alpha_dense_matches_sparse() {
        let ib = InjectorBasis::new(3, 3).unwrap();
        let mut g = Lcg::new(2);
        let raw = Tensor::from_fn(3, &rep(TRACTOR_DOWN, 6), -3, |_| qi(g.small_int(2)));
        let w = ib.project_to_t(&raw).unwrap();
        let dense = b_alpha_from_tensor(&w, 3).unwrap();
        let sparse = verify_b_alpha(3, 3, 1).unwrap();
        assert_eq!(dense, sparse);
    }
}
