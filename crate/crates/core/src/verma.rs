//! The `g₁`-action on the degree-four boundary of semi-holonomic jets and the
//! obstruction to lifting the nonstandard homomorphism `Φ: 𝒥⁴(𝕍_{k−2}) → 𝕍_k`.
//!
//! Layouts: an element of `⊗ʳg₋₁* ⊗ 𝕍_{k−2}` is a tensor with slots
//! `[P₁U₁ … P_rU_r, 𝐄, 𝐅]` (primed-up, unprimed-down pairs followed by the
//! `2(k−2)` unprimed indices of the `𝕍_{k−2}` factor). `𝕍_k` tensors use
//! `[𝐀, 𝐁]` with `k` indices per column.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::linalg::{proportionality, Echelon};
use crate::tensor::{IndexKind, MultiIndex, Tensor, PRIMED_UP, UNPRIMED_DOWN};
use crate::tractor::target_projection;
use crate::young::{apply_normalized_projector, YoungDiagram};
use crate::{q, qi, Error, Result, Q};

/// Slot signature of `⊗ʳg₋₁* ⊗ 𝕍_{k−2}`.
pub fn jet_slots(r: usize, k: usize) -> Vec<IndexKind> {
    let mut s = Vec::with_capacity(2 * r + 2 * k);
    for _ in 0..r {
        s.extend_from_slice(&[PRIMED_UP, UNPRIMED_DOWN]);
    }
    s.extend(core::iter::repeat_n(UNPRIMED_DOWN, 2 * k.saturating_sub(2)));
    s
}

/// Density weight of `𝕍_{k−2}` as carried by [`Tensor::weight`].
pub fn v_weight(k: usize) -> i32 {
    2 - k as i32
}

/// Weight `w` in `[Z, X]•σ = w Z^{I'}_I X^I_{I'} σ` on the density factor of
/// `𝕍_{k−2}`. Only `w = k − 2` makes every `Φ_{ij}` kill the first sum of the
/// action; the opposite sign does not.
pub fn density_weight(k: usize) -> i128 {
    k as i128 - 2
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetComponent {
    pub r: usize,
    pub k: usize,
    pub value: Tensor,
}

impl JetComponent {
    pub fn new(r: usize, k: usize, value: Tensor) -> Result<Self> {
        if !(r == 3 || r == 4) {
            return Err(Error::Domain(format!("jet degree {r} not in 3..=4")));
        }
        if k < 2 {
            return Err(Error::Domain(format!("k = {k} < 2")));
        }
        if value.slots() != jet_slots(r, k).as_slice() {
            return Err(Error::Signature(format!("degree-{r} jet component expects {:?}", jet_slots(r, k))));
        }
        Ok(JetComponent { r, k, value })
    }

    pub fn zero(r: usize, k: usize, n: usize) -> Result<Self> {
        JetComponent::new(r, k, Tensor::zeros(n, &jet_slots(r, k), v_weight(k)))
    }

    pub fn n(&self) -> usize {
        self.value.n()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LiftCoefficients {
    pub k: Q,
    pub l: Q,
    pub m: Q,
    pub n: Q,
}

impl LiftCoefficients {
    /// Coefficients of a lift; they must sum to one.
    pub fn new(k: Q, l: Q, m: Q, n: Q) -> Result<Self> {
        let c = LiftCoefficients { k, l, m, n };
        if c.sum() != Q::one() {
            return Err(Error::Contract(format!("K+L+M+N = {} ≠ 1", c.sum())));
        }
        Ok(c)
    }

    pub fn sum(&self) -> Q {
        self.k + self.l + self.m + self.n
    }

    /// `(i, j, coefficient)` for `Φ_{11}, Φ_{12}, Φ_{21}, Φ_{22}`.
    pub fn terms(&self) -> [(u8, u8, Q); 4] {
        [(1, 1, self.k), (1, 2, self.l), (2, 1, self.m), (2, 2, self.n)]
    }
}

fn check_pairs(t: &Tensor, r: usize) -> Result<()> {
    let s = t.slots();
    let ok = s.len() >= 2 * r
        && (0..r).all(|i| s[2 * i] == PRIMED_UP && s[2 * i + 1] == UNPRIMED_DOWN)
        && s[2 * r..].iter().all(|&x| x == UNPRIMED_DOWN);
    if !ok {
        return Err(Error::Signature(format!("expected {r} (primed-up, unprimed-down) pairs, got {s:?}")));
    }
    Ok(())
}

fn eps_low(a: usize, b: usize) -> Q {
    match (a, b) {
        (0, 1) => qi(-1),
        (1, 0) => qi(1),
        _ => Q::zero(),
    }
}

fn eps_up(a: usize, b: usize) -> Q {
    -eps_low(a, b)
}

/// Builds a tensor of the given signature from an index map into `t`.
fn reindex<F>(t: &Tensor, slots: &[IndexKind], weight: i32, f: F) -> Tensor
where
    F: Fn(&[usize]) -> Vec<usize>,
{
    Tensor::from_fn(t.n(), slots, weight, |idx| t.get(&f(idx)))
}

/// `c₁ = ω_{I'}{}^{I'}{}_{J'}{}^{J'}`, `c₂ = ω_{I'J'}{}^{J'I'}`, `c₃ = ω_{I'}{}^{J'I'}{}_{J'}`
/// on the four primed slots; the unprimed slots (and any trailing unprimed
/// slots) keep their order.
pub fn contraction_c(i: u8, omega: &Tensor) -> Result<Tensor> {
    check_pairs(omega, 4)?;
    // ω^{abcd} times the ε-pairing of the primed slots
    let pairing: fn(usize, usize, usize, usize) -> Q = match i {
        1 => |a, b, c, d| eps_low(a, b) * eps_low(c, d),
        2 => |a, b, c, d| eps_low(a, d) * eps_low(b, c),
        3 => |a, b, c, d| eps_low(a, c) * eps_low(d, b),
        _ => return Err(Error::Domain(format!("contraction index {i} not in 1..=3"))),
    };
    let rest = omega.rank() - 8;
    let slots = vec![UNPRIMED_DOWN; 4 + rest];
    let mut src = vec![0; omega.rank()];
    Ok(Tensor::from_fn(omega.n(), &slots, omega.weight() - 2, |idx| {
        for u in 0..4 {
            src[2 * u + 1] = idx[u];
        }
        src[8..].copy_from_slice(&idx[4..]);
        let mut acc = Q::zero();
        for p in MultiIndex::new(&[2, 2, 2, 2]) {
            let e = pairing(p[0], p[1], p[2], p[3]);
            if e.is_zero() {
                continue;
            }
            for u in 0..4 {
                src[2 * u] = p[u];
            }
            acc += e * omega.get(&src);
        }
        acc
    }))
}

/// The three maps `⊗⁴ℝⁿ* → Young(2,2)ℝⁿ*` on the first four slots:
/// `p_j(t)_{𝐀𝐁} = ½(t_π + t_π') − t_{[A₁A₂B₁B₂]}` with the pairings
/// `(A₁A₂B₁B₂)`, `(A₁B₁B₂A₂)`, `(A₁B₂A₂B₁)`, skew in `𝐀` and in `𝐁`.
pub fn projection_p(j: u8, t: &Tensor) -> Result<Tensor> {
    if t.rank() < 4 || t.slots().iter().any(|&s| s != UNPRIMED_DOWN) {
        return Err(Error::Signature(format!("four unprimed-down slots expected, got {:?}", t.slots())));
    }
    // positions in t of the output indices (A₁, A₂, B₁, B₂) for the two terms
    let (first, second): ([usize; 4], [usize; 4]) = match j {
        1 => ([0, 1, 2, 3], [2, 3, 0, 1]),
        2 => ([0, 3, 1, 2], [1, 2, 0, 3]),
        3 => ([0, 2, 3, 1], [3, 1, 0, 2]),
        _ => return Err(Error::Domain(format!("projection index {j} not in 1..=3"))),
    };
    // out[x] = t[y] with y[first[m]] = x[m]
    let pull = |pos: [usize; 4]| {
        move |x: &[usize]| {
            let mut y = x.to_vec();
            for m in 0..4 {
                y[pos[m]] = x[m];
            }
            y
        }
    };
    let slots = t.slots().to_vec();
    let a = reindex(t, &slots, t.weight(), pull(first));
    let b = reindex(t, &slots, t.weight(), pull(second));
    let mut out = a.try_add(&b)?.scale(q(1, 2)).alternate(&[0, 1])?.alternate(&[2, 3])?;
    out.axpy(qi(-1), &t.alternate_range(0, 4)?)?;
    Ok(out)
}

/// `[A₁, A₂, B₁, B₂, 𝐄, 𝐅] → [A₁, A₂, 𝐄, B₁, B₂, 𝐅]`.
fn to_columns(t: &Tensor, k: usize) -> Result<Tensor> {
    let mut order = vec![0, 1];
    order.extend(4..k + 2);
    order.extend([2, 3]);
    order.extend(k + 2..2 * k);
    t.permute(&order)
}

/// `Φ_{ii} = (cᵢ∘pᵢ)⊗id`, `Φ_{ij} = −2(cᵢ∘pⱼ)⊗id`, followed by the projection
/// `𝕍₂ ⊗ 𝕍_{k−2} → 𝕍_k`.
pub fn phi_map(i: u8, j: u8, psi: &JetComponent) -> Result<Tensor> {
    if psi.r != 4 {
        return Err(Error::Domain(format!("Φ acts on degree 4, got {}", psi.r)));
    }
    if !(1..=2).contains(&i) || !(1..=2).contains(&j) {
        return Err(Error::Domain(format!("Φ_{{{i}{j}}} is not one of the basis maps")));
    }
    let coef = if i == j { Q::one() } else { qi(-2) };
    let t = projection_p(j, &contraction_c(i, &psi.value)?)?.scale(coef);
    target_projection(&to_columns(&t, psi.k)?, psi.k)
}

/// `(KΦ₁₁ + LΦ₁₂ + MΦ₂₁ + NΦ₂₂)(ψ)`.
pub fn lift(coeffs: &LiftCoefficients, psi: &JetComponent) -> Result<Tensor> {
    let mut out: Option<Tensor> = None;
    for (i, j, c) in coeffs.terms() {
        let t = phi_map(i, j, psi)?.scale(c);
        out = Some(match out {
            None => t,
            Some(mut o) => {
                o.axpy(Q::one(), &t)?;
                o
            }
        });
    }
    Ok(out.expect("four terms"))
}

fn check_z(z: &Tensor, n: usize) -> Result<()> {
    if z.slots() != [PRIMED_UP, UNPRIMED_DOWN] || z.n() != n {
        return Err(Error::Signature(format!("Z expects [P↑, U↓] at n = {n}, got {:?}", z.slots())));
    }
    Ok(())
}

/// `Σᵢ [Z, Xᵢ]•ψ(X₁, …, X̂ᵢ, …, X₄)` with density weight `w`.
pub fn g1_first_sum_with(z: &Tensor, psi: &JetComponent, w: Q) -> Result<JetComponent> {
    let n = psi.n();
    check_z(z, n)?;
    if psi.r != 3 {
        return Err(Error::Domain(format!("g₁ acts on degree 3, got {}", psi.r)));
    }
    let k = psi.k;
    let m = 2 * (k - 2);
    let mut src = vec![0; psi.value.rank()];
    let value = Tensor::from_fn(n, &jet_slots(4, k), v_weight(k), |idx| {
        let mut acc = Q::zero();
        for i in 0..4 {
            let (ap, a) = (idx[2 * i], idx[2 * i + 1]);
            let mut pos = 0;
            for s in (0..4).filter(|&s| s != i) {
                src[2 * pos] = idx[2 * s];
                src[2 * pos + 1] = idx[2 * s + 1];
                pos += 1;
            }
            src[6..].copy_from_slice(&idx[8..]);
            acc += w * z.get(&[ap, a]) * psi.value.get(&src);
            for e in 0..m {
                let ze = z.get(&[ap, idx[8 + e]]);
                if ze.is_zero() {
                    continue;
                }
                let keep = src[6 + e];
                src[6 + e] = a;
                acc += ze * psi.value.get(&src);
                src[6 + e] = keep;
            }
        }
        acc
    });
    JetComponent::new(4, k, value)
}

/// `−Σ_{i<j} ψ(X₁, …, [[Z, Xᵢ], Xⱼ], …, X₄)` with `Xᵢ` omitted.
pub fn g1_second_sum(z: &Tensor, psi: &JetComponent) -> Result<JetComponent> {
    let n = psi.n();
    check_z(z, n)?;
    if psi.r != 3 {
        return Err(Error::Domain(format!("g₁ acts on degree 3, got {}", psi.r)));
    }
    let k = psi.k;
    let mut src = vec![0; psi.value.rank()];
    let value = Tensor::from_fn(n, &jet_slots(4, k), v_weight(k), |idx| {
        let mut acc = Q::zero();
        src[6..].copy_from_slice(&idx[8..]);
        for i in 0..4 {
            for j in i + 1..4 {
                let (api, ai, apj, aj) = (idx[2 * i], idx[2 * i + 1], idx[2 * j], idx[2 * j + 1]);
                let mut pos = 0;
                let mut jpos = 0;
                for s in (0..4).filter(|&s| s != i) {
                    if s == j {
                        jpos = pos;
                    }
                    src[2 * pos] = idx[2 * s];
                    src[2 * pos + 1] = idx[2 * s + 1];
                    pos += 1;
                }
                // Z^{A'ᵢ}_{Aⱼ} ψ(…, (A'ⱼ, Aᵢ), …) + Z^{A'ⱼ}_{Aᵢ} ψ(…, (A'ᵢ, Aⱼ), …)
                let z1 = z.get(&[api, aj]);
                if !z1.is_zero() {
                    src[2 * jpos] = apj;
                    src[2 * jpos + 1] = ai;
                    acc += z1 * psi.value.get(&src);
                }
                let z2 = z.get(&[apj, ai]);
                if !z2.is_zero() {
                    src[2 * jpos] = api;
                    src[2 * jpos + 1] = aj;
                    acc += z2 * psi.value.get(&src);
                }
            }
        }
        acc
    });
    JetComponent::new(4, k, value)
}

/// `Z·ψ`, both sums, with the density weight of [`density_weight`].
pub fn g1_action(z: &Tensor, psi: &JetComponent) -> Result<JetComponent> {
    let first = g1_first_sum_with(z, psi, qi(density_weight(psi.k)))?;
    let mut second = g1_second_sum(z, psi)?;
    second.value.axpy(Q::one(), &first.value)?;
    Ok(second)
}

/// Basis of `Ker(ℰ^{C'}_{[AB]C} → ℰ^{C'}_{[ABC]})` as `[P, U_A, U_B, U_C]` tensors.
pub fn witness_kernel_basis(n: usize) -> Vec<Tensor> {
    let slots = [PRIMED_UP, UNPRIMED_DOWN, UNPRIMED_DOWN, UNPRIMED_DOWN];
    let mut ech = Echelon::new();
    let mut out = Vec::new();
    for u in Tensor::basis(n, &slots, -1) {
        let s = u.alternate(&[1, 2]).expect("unprimed pair");
        let t = s.try_sub(&s.alternate(&[1, 2, 3]).expect("unprimed triple")).expect("same shape");
        if !t.is_zero() && ech.insert(t.data()) {
            out.push(t);
        }
    }
    out
}

/// `ω^{A'B'C'}_{ABC} = ε^{A'B'} ω̄^{C'}_{ABC}` in the pair layout.
pub fn witness_omega(omega_bar: &Tensor) -> Result<Tensor> {
    if omega_bar.slots() != [PRIMED_UP, UNPRIMED_DOWN, UNPRIMED_DOWN, UNPRIMED_DOWN] {
        return Err(Error::Signature(format!("ω̄ expects [P, U, U, U], got {:?}", omega_bar.slots())));
    }
    let n = omega_bar.n();
    Ok(Tensor::from_fn(n, &jet_slots(3, 2), 0, |i| {
        eps_up(i[0], i[2]) * omega_bar.get(&[i[4], i[1], i[3], i[5]])
    }))
}

/// A fixed nonzero element of `𝕍_{k−2}`; the constant `1` when `k = 2`.
pub fn default_v(n: usize, k: usize) -> Result<Tensor> {
    let m = k.checked_sub(2).ok_or(Error::Domain(format!("k = {k} < 2")))?;
    let slots = vec![UNPRIMED_DOWN; 2 * m];
    if m == 0 {
        return Ok(Tensor::scalar(n, Q::one(), v_weight(k)));
    }
    let d = YoungDiagram::new(vec![m, m])?;
    let all: Vec<usize> = (0..2 * m).collect();
    for u in Tensor::basis(n, &slots, v_weight(k)) {
        let p = apply_normalized_projector(&d, &u, &all)?;
        if !p.is_zero() {
            return Ok(p);
        }
    }
    Err(Error::Domain(format!("𝕍_{m} is zero at n = {n}")))
}

/// Spanning set of `𝕍_{k−2}`: normalized Young images of the unit tensors.
pub fn v_spanning_set(n: usize, k: usize) -> Result<Vec<Tensor>> {
    let m = k.checked_sub(2).ok_or(Error::Domain(format!("k = {k} < 2")))?;
    if m == 0 {
        return Ok(vec![Tensor::scalar(n, Q::one(), v_weight(k))]);
    }
    let d = YoungDiagram::new(vec![m, m])?;
    let all: Vec<usize> = (0..2 * m).collect();
    let mut ech = Echelon::new();
    let mut out = Vec::new();
    for u in Tensor::basis(n, &vec![UNPRIMED_DOWN; 2 * m], v_weight(k)) {
        let p = apply_normalized_projector(&d, &u, &all)?;
        if !p.is_zero() && ech.insert(p.data()) {
            out.push(p);
        }
    }
    Ok(out)
}

/// `ψ = ω ⊗ v`.
pub fn jet_from(omega: &Tensor, v: &Tensor, k: usize) -> Result<JetComponent> {
    let r = omega.rank() / 2;
    JetComponent::new(r, k, omega.outer(v).with_weight(v_weight(k)))
}

/// `(KΦ₁₁ + LΦ₁₂ + MΦ₂₁ + NΦ₂₂)(Z·ψ̄)` for `ψ̄ = ω̄ ⊗ v` with explicit ingredients.
pub fn obstruction_witness_with(
    coeffs: &LiftCoefficients,
    z: &Tensor,
    omega_bar: &Tensor,
    v: &Tensor,
    k: usize,
) -> Result<Tensor> {
    if coeffs.sum() != Q::one() {
        return Err(Error::Contract(format!("K+L+M+N = {} ≠ 1", coeffs.sum())));
    }
    let psi = jet_from(&witness_omega(omega_bar)?, v, k)?;
    lift(coeffs, &g1_action(z, &psi)?)
}

/// The witness with the first kernel element and [`default_v`].
pub fn obstruction_witness(coeffs: &LiftCoefficients, z: &Tensor, n: usize, k: usize) -> Result<Tensor> {
    check_nk(n, k)?;
    let basis = witness_kernel_basis(n);
    let omega_bar = basis.first().ok_or(Error::Domain(format!("empty witness kernel at n = {n}")))?;
    obstruction_witness_with(coeffs, z, omega_bar, &default_v(n, k)?, k)
}

/// `½(Z_{I'B₂} ψ̄^{I'}_{A₁A₂B₁𝐀̈𝐁̈} + Z_{I'A₂} ψ̄^{I'}_{B₁B₂A₁𝐀̈𝐁̈})`, projected to `𝕍_k`.
pub fn witness_closed_form(z: &Tensor, omega_bar: &Tensor, v: &Tensor, k: usize) -> Result<Tensor> {
    let n = z.n();
    check_z(z, n)?;
    let z_low = z.lower_primed(0)?;
    let m = k - 2;
    let slots = vec![UNPRIMED_DOWN; 2 * k];
    // raw index order [A₁, A₂, B₁, B₂, 𝐀̈, 𝐁̈]
    let raw = Tensor::from_fn(n, &slots, v_weight(k) - 2, |x| {
        let (a1, a2, b1, b2) = (x[0], x[1], x[2], x[3]);
        let vv = v.get(&x[4..4 + 2 * m]);
        if vv.is_zero() {
            return Q::zero();
        }
        let mut acc = Q::zero();
        for ip in 0..2 {
            acc += z_low.get(&[ip, b2]) * omega_bar.get(&[ip, a1, a2, b1]);
            acc += z_low.get(&[ip, a2]) * omega_bar.get(&[ip, b1, b2, a1]);
        }
        acc * vv * q(1, 2)
    });
    target_projection(&to_columns(&raw, k)?, k)
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if k < 2 || k > n {
        return Err(Error::Domain(format!("need 2 ≤ k ≤ n, got (n,k) = ({n},{k})")));
    }
    Ok(())
}

/// Sparse evaluation of the same maps for the spanning-set loops; keys follow
/// the dense slot layouts.
mod sparse {
    use super::*;
    use crate::young::{apply_projector_sparse, sparse_group_average, Sparse};

    pub fn from_tensor(t: &Tensor) -> Sparse {
        t.nonzero_entries().into_iter().map(|(i, v)| (i.into_iter().map(|x| x as u8).collect(), v)).collect()
    }

    pub fn to_tensor(s: &Sparse, n: usize, slots: &[IndexKind], weight: i32) -> Tensor {
        let mut t = Tensor::zeros(n, slots, weight);
        for (key, v) in s {
            let idx: Vec<usize> = key.iter().map(|&x| x as usize).collect();
            t.set(&idx, *v);
        }
        t
    }

    fn add(out: &mut Sparse, key: Vec<u8>, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = out.entry(key).or_insert_with(Q::zero);
        *e += c;
    }

    fn clean(mut s: Sparse) -> Sparse {
        s.retain(|_, v| !v.is_zero());
        s
    }

    pub fn g1_action(z: &Sparse, psi: &Sparse, k: usize, w: Q, second: bool) -> Sparse {
        let m = 2 * (k - 2);
        let mut out = Sparse::new();
        for (pk, pv) in psi {
            let pairs: [(u8, u8); 3] = [(pk[0], pk[1]), (pk[2], pk[3]), (pk[4], pk[5])];
            let tail = &pk[6..];
            for (zk, zv) in z {
                let (zp, zu) = (zk[0], zk[1]);
                let c = *pv * *zv;
                let build = |slots: [(u8, u8); 4], tail: &[u8]| {
                    let mut key = Vec::with_capacity(8 + m);
                    for (a, b) in slots {
                        key.extend([a, b]);
                    }
                    key.extend_from_slice(tail);
                    key
                };
                for i in 0..4 {
                    // ψ pairs fill the output positions other than i, in order
                    let mut slots = [(0u8, 0u8); 4];
                    let mut pos = 0;
                    for s in 0..4 {
                        if s != i {
                            slots[s] = pairs[pos];
                            pos += 1;
                        }
                    }
                    if !w.is_zero() {
                        slots[i] = (zp, zu);
                        add(&mut out, build(slots, tail), w * c);
                    }
                    for e in 0..m {
                        slots[i] = (zp, tail[e]);
                        let mut t = tail.to_vec();
                        t[e] = zu;
                        add(&mut out, build(slots, &t), c);
                    }
                    if !second {
                        continue;
                    }
                    for j in i + 1..4 {
                        let (sp, su) = slots[j];
                        let mut a = slots;
                        a[i] = (zp, su);
                        a[j] = (sp, zu);
                        add(&mut out, build(a, tail), c);
                        let mut b = slots;
                        b[i] = (sp, zu);
                        b[j] = (zp, su);
                        add(&mut out, build(b, tail), c);
                    }
                }
            }
        }
        clean(out)
    }

    pub fn contraction(i: u8, omega: &Sparse) -> Sparse {
        let mut out = Sparse::new();
        for (key, v) in omega {
            let p = [key[0] as usize, key[2] as usize, key[4] as usize, key[6] as usize];
            let e = match i {
                1 => eps_low(p[0], p[1]) * eps_low(p[2], p[3]),
                2 => eps_low(p[0], p[3]) * eps_low(p[1], p[2]),
                _ => eps_low(p[0], p[2]) * eps_low(p[3], p[1]),
            };
            let mut k2 = vec![key[1], key[3], key[5], key[7]];
            k2.extend_from_slice(&key[8..]);
            add(&mut out, k2, e * *v);
        }
        clean(out)
    }

    pub fn projection(j: u8, t: &Sparse) -> Sparse {
        let (first, second): ([usize; 4], [usize; 4]) = match j {
            1 => ([0, 1, 2, 3], [2, 3, 0, 1]),
            2 => ([0, 3, 1, 2], [1, 2, 0, 3]),
            _ => ([0, 2, 3, 1], [3, 1, 0, 2]),
        };
        let mut terms = Sparse::new();
        for (key, v) in t {
            // t[y] contributes to out[x] with y[pos[m]] = x[m]
            for pos in [first, second] {
                let mut x = key.clone();
                for m in 0..4 {
                    x[m] = key[pos[m]];
                }
                add(&mut terms, x, *v * q(1, 2));
            }
        }
        let terms = sparse_group_average(&sparse_group_average(&clean(terms), &[0, 1], true), &[2, 3], true);
        let alt = sparse_group_average(t, &[0, 1, 2, 3], true);
        let mut out = terms;
        for (key, v) in alt {
            add(&mut out, key, -v);
        }
        clean(out)
    }

    pub fn phi(i: u8, j: u8, psi: &Sparse, k: usize) -> Result<Sparse> {
        let coef = if i == j { Q::one() } else { qi(-2) };
        let t = projection(j, &contraction(i, psi));
        // [A₁, A₂, B₁, B₂, 𝐄, 𝐅] → [A₁, A₂, 𝐄, B₁, B₂, 𝐅]
        let mut order = vec![0, 1];
        order.extend(4..k + 2);
        order.extend([2, 3]);
        order.extend(k + 2..2 * k);
        let mut cols = Sparse::new();
        for (key, v) in t {
            add(&mut cols, order.iter().map(|&o| key[o]).collect(), v * coef);
        }
        let a: Vec<usize> = (0..k).collect();
        let b: Vec<usize> = (k..2 * k).collect();
        let alt = sparse_group_average(&sparse_group_average(&clean(cols), &a, true), &b, true);
        let mut sym = Sparse::new();
        for (key, v) in alt {
            let swapped: Vec<u8> = key[k..].iter().chain(&key[..k]).copied().collect();
            add(&mut sym, key, v * q(1, 2));
            add(&mut sym, swapped, v * q(1, 2));
        }
        let d = YoungDiagram::new(vec![k, k])?;
        let all: Vec<usize> = (0..2 * k).collect();
        let c = Q::one() / d.quasi_idempotence();
        let p = apply_projector_sparse(&d, &clean(sym), &all)?;
        Ok(p.into_iter().map(|(key, v)| (key, v * c)).collect())
    }
}

/// Outcome of the obstruction computation at one `(n, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionReport {
    pub n: usize,
    pub k: usize,
    /// `c₁ + c₂ + c₃ = 0` on a full basis of `⊗⁴g₋₁*`.
    pub contraction_identity: bool,
    /// `p₁ + p₂ + p₃ = 0` on a full basis of `⊗⁴ℝⁿ*`.
    pub projection_identity: bool,
    /// All `Φ_{ij}` agree on `S⁴g₋₁* ⊗ 𝕍_{k−2}`.
    pub symmetric_coincidence: bool,
    /// `φ = Φ₁₁` kills `g₁·(S³g₋₁* ⊗ 𝕍_{k−2})`.
    pub phi_is_homomorphism: bool,
    /// The first sum of the action is killed by every `Φ_{ij}`.
    pub first_sum_killed: bool,
    /// `p₁c₁ = −2p₂c₁ = −2p₁c₂ = p₂c₂` on `Z·ω̄` for every basis `Z` and kernel element.
    pub relation_chain: bool,
    /// `c₁(Z·ω̄) = −3Z_{I'D}ω̄^{I'}_{ABC}` and `c₂(Z·ω̄) = −3Z_{I'D}ω̄^{I'}_{BCA}`.
    pub contraction_values: bool,
    /// All `Φ_{ij}` agree on every `Z·ψ̄`, so any lift gives the same value.
    pub coefficient_independent: bool,
    /// First `(kernel element, 𝕍_{k−2} element, basis Z)` with a nonzero witness.
    pub witness: Option<(usize, usize, usize)>,
    /// `witness = factor · closed form`, the same factor for every input tried.
    pub closed_form_factor: Option<Q>,
    pub failure: Option<String>,
}

impl ObstructionReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    pub fn witness_nonzero(&self) -> bool {
        self.witness.is_some()
    }
}

fn one_form_basis(n: usize) -> Vec<Tensor> {
    Tensor::basis(n, &[PRIMED_UP, UNPRIMED_DOWN], 0).collect()
}

/// Symmetrized products of `r` basis one-forms, one per multiset.
pub fn symmetric_spanning_set(n: usize, r: usize) -> Vec<Tensor> {
    let basis = one_form_basis(n);
    let mut out = Vec::new();
    let mut pick = vec![0usize; r];
    loop {
        let mut t = basis[pick[0]].clone();
        for &p in &pick[1..] {
            t = t.outer(&basis[p]);
        }
        out.push(symmetrize_pairs(&t, r));
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if pick[i] + 1 < basis.len() {
                pick[i] += 1;
                for j in i + 1..r {
                    pick[j] = pick[i];
                }
                break;
            }
        }
    }
}

/// Average of `t` over permutations of its first `r` one-form pairs.
pub fn symmetrize_pairs(t: &Tensor, r: usize) -> Tensor {
    let perms = crate::tensor::permutations(r);
    let rank = t.rank();
    let mut acc = Tensor::zeros(t.n(), t.slots(), t.weight());
    for (p, _) in &perms {
        let mut order = Vec::with_capacity(rank);
        for &s in p {
            order.extend([2 * s, 2 * s + 1]);
        }
        order.extend(2 * r..rank);
        acc.axpy(Q::one(), &t.permute(&order).expect("valid permutation")).expect("same shape");
    }
    acc.scale(Q::new(1, perms.len() as i128))
}

fn c_values_hold(z: &Tensor, omega_bar: &Tensor, zw: &Tensor) -> Result<bool> {
    let n = z.n();
    let z_low = z.lower_primed(0)?;
    let expect = |rot: [usize; 3]| {
        Tensor::from_fn(n, &[UNPRIMED_DOWN; 4], zw.weight() - 2, |x| {
            let mut acc = Q::zero();
            for ip in 0..2 {
                acc += z_low.get(&[ip, x[3]]) * omega_bar.get(&[ip, x[rot[0]], x[rot[1]], x[rot[2]]]);
            }
            acc * qi(-3)
        })
    };
    Ok(contraction_c(1, zw)? == expect([0, 1, 2]) && contraction_c(2, zw)? == expect([1, 2, 0]))
}

const PAIRS: [(u8, u8); 4] = [(1, 1), (1, 2), (2, 1), (2, 2)];

/// Whether all four `Φ_{ij}` agree on every sparse input; also returns the
/// common value of the first one.
fn phis_agree(psi: &crate::young::Sparse, k: usize) -> Result<(bool, crate::young::Sparse)> {
    let base = sparse::phi(1, 1, psi, k)?;
    for &(i, j) in &PAIRS[1..] {
        if sparse::phi(i, j, psi, k)? != base {
            return Ok((false, base));
        }
    }
    Ok((true, base))
}

/// Runs every check of the obstruction argument at `(n, k)`.
pub fn verify_obstruction(n: usize, k: usize) -> Result<ObstructionReport> {
    check_nk(n, k)?;
    let mut rep = ObstructionReport {
        n,
        k,
        contraction_identity: true,
        projection_identity: true,
        symmetric_coincidence: true,
        phi_is_homomorphism: true,
        first_sum_killed: true,
        relation_chain: true,
        contraction_values: true,
        coefficient_independent: true,
        witness: None,
        closed_form_factor: None,
        failure: None,
    };
    fn fail(rep: &mut ObstructionReport, msg: String) {
        if rep.failure.is_none() {
            rep.failure = Some(msg);
        }
    }

    for u in Tensor::basis(n, &jet_slots(4, 2), 0) {
        let mut s = contraction_c(1, &u)?;
        s.axpy(Q::one(), &contraction_c(2, &u)?)?;
        s.axpy(Q::one(), &contraction_c(3, &u)?)?;
        if !s.is_zero() {
            rep.contraction_identity = false;
            fail(&mut rep, format!("c₁+c₂+c₃ ≠ 0 on {:?}", u.nonzero_entries()));
            break;
        }
    }
    for u in Tensor::basis(n, &[UNPRIMED_DOWN; 4], 0) {
        let mut s = projection_p(1, &u)?;
        s.axpy(Q::one(), &projection_p(2, &u)?)?;
        s.axpy(Q::one(), &projection_p(3, &u)?)?;
        if !s.is_zero() {
            rep.projection_identity = false;
            fail(&mut rep, format!("p₁+p₂+p₃ ≠ 0 on {:?}", u.nonzero_entries()));
            break;
        }
    }

    let vs: Vec<_> = v_spanning_set(n, k)?.iter().map(sparse::from_tensor).collect();
    let zs: Vec<_> = one_form_basis(n).iter().map(sparse::from_tensor).collect();
    let w = qi(density_weight(k));
    let with_v = |t: &Tensor, v: &crate::young::Sparse| -> crate::young::Sparse {
        let mut out = crate::young::Sparse::new();
        for (a, x) in sparse::from_tensor(t) {
            for (b, y) in v {
                let mut key = a.clone();
                key.extend_from_slice(b);
                out.insert(key, x * *y);
            }
        }
        out
    };

    'sym: for t in symmetric_spanning_set(n, 4) {
        for v in &vs {
            if !phis_agree(&with_v(&t, v), k)?.0 {
                rep.symmetric_coincidence = false;
                fail(&mut rep, String::from("Φ_{ij} differ on a symmetric input"));
                break 'sym;
            }
        }
    }

    'hom: for t in symmetric_spanning_set(n, 3) {
        for v in &vs {
            let psi = with_v(&t, v);
            for z in &zs {
                let zp = sparse::g1_action(z, &psi, k, w, true);
                if !sparse::phi(1, 1, &zp, k)?.is_empty() {
                    rep.phi_is_homomorphism = false;
                    fail(&mut rep, String::from("φ(Z·ψ) ≠ 0 for symmetric ψ"));
                    break 'hom;
                }
            }
        }
    }

    'first: for u in Tensor::basis(n, &jet_slots(3, 2), 0) {
        for v in &vs {
            let psi = with_v(&u, v);
            for z in &zs {
                let fs = sparse::g1_action(z, &psi, k, w, false);
                for &(i, j) in &PAIRS {
                    if !sparse::phi(i, j, &fs, k)?.is_empty() {
                        rep.first_sum_killed = false;
                        fail(&mut rep, format!("Φ_{i}{j} of the first sum ≠ 0"));
                        break 'first;
                    }
                }
            }
        }
    }

    let kernel = witness_kernel_basis(n);
    'chain: for ob in &kernel {
        let psi = JetComponent::new(3, 2, witness_omega(ob)?)?;
        for z in one_form_basis(n) {
            let zw = g1_action(&z, &psi)?.value;
            let c1 = contraction_c(1, &zw)?;
            let c2 = contraction_c(2, &zw)?;
            let p11 = projection_p(1, &c1)?;
            let chain = [
                projection_p(2, &c1)?.scale(qi(-2)),
                projection_p(1, &c2)?.scale(qi(-2)),
                projection_p(2, &c2)?,
            ];
            if chain.iter().any(|t| *t != p11) {
                rep.relation_chain = false;
                fail(&mut rep, String::from("relation chain broken on Z·ω̄"));
                break 'chain;
            }
            if !c_values_hold(&z, ob, &zw)? {
                rep.contraction_values = false;
                fail(&mut rep, String::from("c₁(Z·ω̄), c₂(Z·ω̄) differ from −3Z_{I'D}ω̄"));
                break 'chain;
            }
        }
    }

    // aggregate over the whole kernel basis, 𝕍_{k−2} spanning set and basis Z
    let dense_vs = v_spanning_set(n, k)?;
    let dense_zs = one_form_basis(n);
    let mut factor: Option<Option<Q>> = None;
    for (oi, ob) in kernel.iter().enumerate() {
        let omega = witness_omega(ob)?;
        for (vi, v) in vs.iter().enumerate() {
            let psi = with_v(&omega, v);
            for (zi, z) in zs.iter().enumerate() {
                let zp = sparse::g1_action(z, &psi, k, w, true);
                let (agree, base) = phis_agree(&zp, k)?;
                if !agree {
                    rep.coefficient_independent = false;
                    fail(&mut rep, format!("Φ_{{ij}} differ on Z·ψ̄ at ({oi}, {vi}, {zi})"));
                }
                let closed = sparse::from_tensor(&witness_closed_form(&dense_zs[zi], ob, &dense_vs[vi], k)?);
                if base.is_empty() && closed.is_empty() {
                    continue;
                }
                if rep.witness.is_none() && !base.is_empty() {
                    rep.witness = Some((oi, vi, zi));
                }
                let keys: Vec<&Vec<u8>> = base.keys().chain(closed.keys()).collect();
                let a: Vec<Q> = keys.iter().map(|key| base.get(*key).copied().unwrap_or_else(Q::zero)).collect();
                let b: Vec<Q> = keys.iter().map(|key| closed.get(*key).copied().unwrap_or_else(Q::zero)).collect();
                let r = proportionality(&a, &b);
                factor = match factor {
                    None => Some(r),
                    Some(prev) if prev == r => Some(prev),
                    Some(_) => Some(None),
                };
            }
        }
    }
    rep.closed_form_factor = factor.flatten();
    if rep.witness.is_none() {
        fail(&mut rep, String::from("witness vanishes on the whole kernel"));
    }
    if rep.closed_form_factor.is_none() {
        fail(&mut rep, String::from("witness is not a fixed multiple of the closed form"));
    }
    Ok(rep)
}

/// Whether all `Φ_{ij}` agree on `g₁·(⊗³g₋₁* ⊗ 𝕍_{k−2})`, checked on basis inputs.
pub fn phi_maps_coincide_on_image(n: usize, k: usize) -> Result<bool> {
    check_nk(n, k)?;
    let vs: Vec<_> = v_spanning_set(n, k)?.iter().map(sparse::from_tensor).collect();
    let zs: Vec<_> = one_form_basis(n).iter().map(sparse::from_tensor).collect();
    let w = qi(density_weight(k));
    for u in Tensor::basis(n, &jet_slots(3, 2), 0) {
        let u = sparse::from_tensor(&u);
        for v in &vs {
            let mut psi = crate::young::Sparse::new();
            for (a, x) in &u {
                for (b, y) in v {
                    let mut key = a.clone();
                    key.extend_from_slice(b);
                    psi.insert(key, *x * *y);
                }
            }
            for z in &zs {
                if !phis_agree(&sparse::g1_action(z, &psi, k, w, true), k)?.0 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Sparse-path evaluation of `Φ_{ij}`, exposed for cross-checking the dense path.
pub fn phi_map_sparse(i: u8, j: u8, psi: &JetComponent) -> Result<Tensor> {
    if psi.r != 4 || !(1..=2).contains(&i) || !(1..=2).contains(&j) {
        return Err(Error::Domain(format!("Φ_{{{i}{j}}} on degree {}", psi.r)));
    }
    let k = psi.k;
    let out = sparse::phi(i, j, &sparse::from_tensor(&psi.value), k)?;
    Ok(sparse::to_tensor(&out, psi.n(), &vec![UNPRIMED_DOWN; 2 * k], -(k as i32)))
}

/// Sparse-path evaluation of `Z·ψ`.
pub fn g1_action_sparse(z: &Tensor, psi: &JetComponent) -> Result<JetComponent> {
    check_z(z, psi.n())?;
    if psi.r != 3 {
        return Err(Error::Domain(format!("g₁ acts on degree 3, got {}", psi.r)));
    }
    let k = psi.k;
    let out = sparse::g1_action(&sparse::from_tensor(z), &sparse::from_tensor(&psi.value), k, qi(density_weight(k)), true);
    JetComponent::new(4, k, sparse::to_tensor(&out, psi.n(), &jet_slots(4, k), v_weight(k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Lcg;
    use crate::tractor::first_contraction;

    fn random(n: usize, slots: &[IndexKind], weight: i32, seed: u64) -> Tensor {
        let mut g = Lcg::new(seed);
        Tensor::from_fn(n, slots, weight, |_| qi(g.small_int(2)))
    }

    fn z_form(n: usize, seed: u64) -> Tensor {
        random(n, &[PRIMED_UP, UNPRIMED_DOWN], 0, seed)
    }

    /// Contractions through `lower_primed` and `contract`.
    fn contraction_by_lowering(i: u8, omega: &Tensor) -> Tensor {
        // (lowered slot, partner) pairs on P₁..P₄ = slots 0, 2, 4, 6
        let (l1, u1, l2, u2) = match i {
            1 => (0, 2, 4, 6),
            2 => (0, 6, 2, 4),
            _ => (0, 4, 6, 2),
        };
        let t = omega.lower_primed(l1).unwrap().lower_primed(l2).unwrap();
        let t = t.contract(u1, l1).unwrap();
        // removing two slots below l2 / u2 shifts them
        let shift = |x: usize| x - [l1, u1].iter().filter(|&&y| y < x).count();
        t.contract(shift(u2), shift(l2)).unwrap()
    }

    #[test]
    fn contractions_two_ways() {
        let n = 3;
        let omega = random(n, &jet_slots(4, 2), 0, 3);
        for i in 1..=3 {
            assert_eq!(contraction_c(i, &omega).unwrap(), contraction_by_lowering(i, &omega), "c{i}");
        }
        let mut s = contraction_c(1, &omega).unwrap();
        s.axpy(qi(1), &contraction_c(2, &omega).unwrap()).unwrap();
        s.axpy(qi(1), &contraction_c(3, &omega).unwrap()).unwrap();
        assert!(s.is_zero());
        // ε ⊗ ε on the primed slots: c₁ = ε^{ab}ε_{ab} ε^{cd}ε_{cd} = 4 per unprimed entry
        let u = random(n, &[UNPRIMED_DOWN; 4], 0, 4);
        let ee = Tensor::from_fn(n, &jet_slots(4, 2), 0, |x| {
            eps_up(x[0], x[2]) * eps_up(x[4], x[6]) * u.get(&[x[1], x[3], x[5], x[7]])
        });
        assert_eq!(contraction_c(1, &ee).unwrap(), u.scale(qi(4)).with_weight(-2));
        assert_eq!(contraction_c(1, &ee).unwrap(), contraction_by_lowering(1, &ee));
        assert!(contraction_c(4, &omega).is_err());
        assert!(contraction_c(1, &u).is_err());
    }

    #[test]
    fn contractions_of_symmetric_images_vanish() {
        let n = 3;
        for (idx, w) in symmetric_spanning_set(n, 3).iter().enumerate().step_by(5) {
            let psi = JetComponent::new(3, 2, w.clone()).unwrap();
            let zw = g1_action(&z_form(n, idx as u64), &psi).unwrap().value;
            assert!(contraction_c(1, &zw).unwrap().is_zero());
            assert!(contraction_c(2, &zw).unwrap().is_zero());
        }
    }

    fn p_by_loops(j: u8, t: &Tensor) -> Tensor {
        let n = t.n();
        let alt = t.alternate_range(0, 4).unwrap();
        let pre = Tensor::from_fn(n, &[UNPRIMED_DOWN; 4], t.weight(), |x| {
            let (a1, a2, b1, b2) = (x[0], x[1], x[2], x[3]);
            let (u, v) = match j {
                1 => ([a1, a2, b1, b2], [b1, b2, a1, a2]),
                2 => ([a1, b1, b2, a2], [b1, a1, a2, b2]),
                _ => ([a1, b2, a2, b1], [b1, a2, b2, a1]),
            };
            (t.get(&u) + t.get(&v)) * q(1, 2)
        });
        let mut out = pre.alternate(&[0, 1]).unwrap().alternate(&[2, 3]).unwrap();
        out.axpy(qi(-1), &alt).unwrap();
        out
    }

    #[test]
    fn projections() {
        let n = 2;
        let mut e = Tensor::zeros(n, &[UNPRIMED_DOWN; 4], 0);
        e.set(&[0, 1, 0, 1], qi(1));
        for j in 1..=3 {
            assert_eq!(projection_p(j, &e).unwrap(), p_by_loops(j, &e));
        }
        assert!(!projection_p(1, &e).unwrap().is_zero());
        let t = random(3, &[UNPRIMED_DOWN; 4], 0, 9);
        let mut s = projection_p(1, &t).unwrap();
        for j in 1..=3 {
            assert_eq!(projection_p(j, &t).unwrap(), p_by_loops(j, &t));
        }
        s.axpy(qi(1), &projection_p(2, &t).unwrap()).unwrap();
        s.axpy(qi(1), &projection_p(3, &t).unwrap()).unwrap();
        assert!(s.is_zero());
        let sym = t.symmetrize(&[0, 1, 2, 3]).unwrap();
        let p1 = projection_p(1, &sym).unwrap();
        assert_eq!(projection_p(2, &sym).unwrap(), p1);
        assert_eq!(projection_p(3, &sym).unwrap(), p1);
        // image is already a Young (2,2) tensor
        let d = YoungDiagram::new(vec![2, 2]).unwrap();
        let p1t = projection_p(1, &t).unwrap();
        assert_eq!(apply_normalized_projector(&d, &p1t, &[0, 1, 2, 3]).unwrap(), p1t);
        assert!(projection_p(4, &t).is_err());
    }

    #[test]
    fn target_projection_is_identity_on_v_k() {
        for (n, k) in [(2usize, 2usize), (3, 2), (3, 3)] {
            for v in v_spanning_set(n, k + 2).unwrap() {
                let v = v.with_weight(-(k as i32));
                assert_eq!(target_projection(&v, k).unwrap(), v);
            }
        }
    }

    #[test]
    fn phi_maps() {
        let (n, k) = (3, 2);
        let zero = JetComponent::zero(4, k, n).unwrap();
        for (i, j) in PAIRS {
            assert!(phi_map(i, j, &zero).unwrap().is_zero());
        }
        let psi = JetComponent::new(4, k, random(n, &jet_slots(4, k), 0, 17)).unwrap();
        // Φ₁₁ against the independent first contraction followed by p₁
        let oracle = p_by_loops(1, &first_contraction(&psi.value).unwrap());
        assert_eq!(phi_map(1, 1, &psi).unwrap(), oracle);
        let oracle22 = p_by_loops(2, &contraction_by_lowering(2, &psi.value));
        assert_eq!(phi_map(2, 2, &psi).unwrap(), oracle22);
        assert_ne!(phi_map(1, 1, &psi).unwrap(), phi_map(2, 2, &psi).unwrap());
        assert!(phi_map(3, 1, &psi).is_err());
        for (n, k) in [(3usize, 2usize), (3, 3)] {
            let v = default_v(n, k).unwrap();
            let psi = jet_from(&random(n, &jet_slots(4, 2), 0, 5), &v, k).unwrap();
            for (i, j) in PAIRS {
                assert_eq!(phi_map(i, j, &psi).unwrap(), phi_map_sparse(i, j, &psi).unwrap());
            }
            let sym = jet_from(&symmetrize_pairs(&random(n, &jet_slots(4, 2), 0, 6), 4), &v, k).unwrap();
            let base = phi_map(1, 1, &sym).unwrap();
            assert!(!base.is_zero());
            for (i, j) in PAIRS {
                assert_eq!(phi_map(i, j, &sym).unwrap(), base);
            }
        }
    }

    /// The twelve displayed terms of `Z·(ω ⊗ v)`.
    fn twelve_terms(z: &Tensor, omega: &Tensor) -> Tensor {
        let n = z.n();
        Tensor::from_fn(n, &jet_slots(4, 2), 0, |x| {
            let (ap, a, bp, b, cp, c, dp, d) = (x[0], x[1], x[2], x[3], x[4], x[5], x[6], x[7]);
            let zz = |p: usize, u: usize| z.get(&[p, u]);
            let om = |p: [usize; 3], u: [usize; 3]| omega.get(&[p[0], u[0], p[1], u[1], p[2], u[2]]);
            zz(ap, b) * om([bp, cp, dp], [a, c, d])
                + zz(bp, a) * om([ap, cp, dp], [b, c, d])
                + zz(ap, c) * om([bp, cp, dp], [b, a, d])
                + zz(cp, a) * om([bp, ap, dp], [b, c, d])
                + zz(ap, d) * om([bp, cp, dp], [b, c, a])
                + zz(dp, a) * om([bp, cp, ap], [b, c, d])
                + zz(bp, c) * om([ap, cp, dp], [a, b, d])
                + zz(cp, b) * om([ap, bp, dp], [a, c, d])
                + zz(bp, d) * om([ap, cp, dp], [a, c, b])
                + zz(dp, b) * om([ap, cp, bp], [a, c, d])
                + zz(cp, d) * om([ap, bp, dp], [a, b, c])
                + zz(dp, c) * om([ap, bp, cp], [a, b, d])
        })
    }

    #[test]
    fn g1_action_terms() {
        for n in [2usize, 3] {
            let z = z_form(n, 1);
            let omega = random(n, &jet_slots(3, 2), 0, 2);
            let psi = JetComponent::new(3, 2, omega.clone()).unwrap();
            assert_eq!(g1_second_sum(&z, &psi).unwrap().value, twelve_terms(&z, &omega));
            assert_eq!(g1_action(&z, &psi).unwrap(), g1_second_sum(&z, &psi).unwrap());
            let zero = Tensor::zeros(n, &[PRIMED_UP, UNPRIMED_DOWN], 0);
            assert!(g1_action(&zero, &psi).unwrap().value.is_zero());
        }
        let (n, k) = (3, 3);
        let psi = jet_from(&random(n, &jet_slots(3, 2), 0, 4), &default_v(n, k).unwrap(), k).unwrap();
        let z = z_form(n, 7);
        assert_eq!(g1_action(&z, &psi).unwrap(), g1_action_sparse(&z, &psi).unwrap());
        let fs = g1_first_sum_with(&z, &psi, qi(density_weight(k))).unwrap();
        assert!(!fs.value.is_zero());
        for (i, j) in PAIRS {
            assert!(phi_map(i, j, &fs).unwrap().is_zero());
        }
    }

    #[test]
    fn density_weight_is_frozen() {
        assert_eq!((2..=5).map(density_weight).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        // the opposite sign leaves a first-sum term that survives Φ₁₁
        let (n, k) = (3, 3);
        let v = default_v(n, k).unwrap();
        let survives = Tensor::basis(n, &jet_slots(3, 2), 0).any(|u| {
            let psi = jet_from(&u, &v, k).unwrap();
            one_form_basis(n).iter().any(|z| {
                let fs = g1_first_sum_with(z, &psi, qi(-density_weight(k))).unwrap();
                !phi_map(1, 1, &fs).unwrap().is_zero()
            })
        });
        assert!(survives);
    }

    #[test]
    fn witness_kernel() {
        for n in [2usize, 3, 4] {
            let b = witness_kernel_basis(n);
            let c2 = n * (n - 1) / 2;
            let c3 = n * (n - 1) * (n - 2) / 6;
            assert_eq!(b.len(), 2 * (n * c2 - c3));
            for t in &b {
                assert_eq!(t.alternate(&[1, 2]).unwrap(), *t);
                assert!(t.alternate(&[1, 2, 3]).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn witness_values() {
        for n in [2usize, 3] {
            let ob = &witness_kernel_basis(n)[0];
            let psi = JetComponent::new(3, 2, witness_omega(ob).unwrap()).unwrap();
            for z in one_form_basis(n) {
                let zw = g1_action(&z, &psi).unwrap().value;
                assert!(c_values_hold(&z, ob, &zw).unwrap());
            }
        }
        let (n, k) = (3, 2);
        let z = &one_form_basis(n)[4];
        let a = obstruction_witness(&LiftCoefficients::new(qi(1), qi(0), qi(0), qi(0)).unwrap(), z, n, k).unwrap();
        let b = obstruction_witness(&LiftCoefficients::new(qi(2), qi(-3), q(1, 2), q(3, 2)).unwrap(), z, n, k).unwrap();
        assert!(!a.is_zero());
        assert_eq!(a, b);
        let closed = witness_closed_form(z, &witness_kernel_basis(n)[0], &default_v(n, k).unwrap(), k).unwrap();
        assert_eq!(a, closed.scale(qi(-3)));
        assert!(matches!(LiftCoefficients::new(qi(1), qi(1), qi(0), qi(0)), Err(Error::Contract(_))));
        let bad = LiftCoefficients { k: qi(1), l: qi(1), m: qi(0), n: qi(0) };
        assert!(matches!(obstruction_witness(&bad, z, n, k), Err(Error::Contract(_))));
    }

    #[test]
    fn obstruction_small_instances() {
        for (n, k) in [(2usize, 2usize), (3, 2)] {
            let r = verify_obstruction(n, k).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.closed_form_factor, Some(qi(-3)));
            assert!(phi_maps_coincide_on_image(n, k).unwrap());
        }
        assert!(verify_obstruction(2, 3).is_err());
    }
}
