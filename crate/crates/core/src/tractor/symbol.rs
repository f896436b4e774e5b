//! Principal symbols along the composition series: the two four-step paths,
//! the nonstandard symbol, the `M∘d` / `d∘M` vanishing and the curvature
//! projection argument.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::forms::{tractor_T_series, IrreducibleBundle};
use crate::linalg::proportionality;
use crate::rng::Lcg;
use crate::tensor::{IndexKind, MultiIndex, Tensor, PRIMED_UP, UNPRIMED_DOWN};
use crate::young::{apply_normalized_projector, apply_projector_sparse, Sparse, YoungDiagram};
use crate::{q, qi, Error, Result, Q};

use super::action::{bullet_on_t, bullet_on_t_displayed, one_form_slots};
use super::section::{check_nk, Component, TSection};

/// Curvature-type symmetry classes entering the lower-order terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymmetryClass {
    /// `W^{A'B'D}_{ABC}`: skew primed pair, trace-free symmetric unprimed triple.
    Weyl,
    /// `(d^∇P)^{A'B'C'}_{ABC}`: skew primed pair, one more primed index, symmetric triple.
    CottonYork,
    /// No symmetry at all.
    Generic,
}

impl SymmetryClass {
    pub fn name(self) -> &'static str {
        match self {
            SymmetryClass::Weyl => "W",
            SymmetryClass::CottonYork => "CY",
            SymmetryClass::Generic => "generic",
        }
    }

    /// Index layout of a representative curvature tensor.
    pub fn slots(self) -> Vec<IndexKind> {
        match self {
            SymmetryClass::Weyl => vec![PRIMED_UP, PRIMED_UP, UNPRIMED_DOWN, UNPRIMED_DOWN, UNPRIMED_DOWN, crate::tensor::UNPRIMED_UP],
            SymmetryClass::CottonYork => {
                vec![PRIMED_UP, PRIMED_UP, PRIMED_UP, UNPRIMED_DOWN, UNPRIMED_DOWN, UNPRIMED_DOWN]
            }
            SymmetryClass::Generic => vec![UNPRIMED_DOWN; 3],
        }
    }

    /// Membership test through symmetrizer and trace identities.
    pub fn contains(self, t: &Tensor) -> Result<bool> {
        if t.slots() != self.slots().as_slice() {
            return Err(Error::Signature(format!("{} expects {:?}", self.name(), self.slots())));
        }
        Ok(match self {
            SymmetryClass::Weyl => {
                &t.alternate(&[0, 1])? == t
                    && &t.symmetrize(&[2, 3, 4])? == t
                    && t.contract(5, 2)?.is_zero()
            }
            SymmetryClass::CottonYork => &t.alternate(&[0, 1])? == t && &t.symmetrize(&[3, 4, 5])? == t,
            SymmetryClass::Generic => true,
        })
    }
}

fn sorted_multisets(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; m];
    loop {
        out.push(cur.clone());
        let mut i = m;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] + 1 < n {
                let v = cur[i] + 1;
                for c in cur[i..].iter_mut() {
                    *c = v;
                }
                break;
            }
        }
    }
}

fn combinations(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..m).collect();
    if m > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let mut i = m;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - m + i {
                cur[i] += 1;
                for j in i + 1..m {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Whether every tensor of class `c`, placed into the target's index slots
/// with arbitrary remaining factors, is annihilated by the target projector.
///
/// `target` must be one of the two bottom constituents of `𝒯` at `(n, k)`.
pub fn projection_kills_symmetric(c: SymmetryClass, target: &IrreducibleBundle, n: usize, k: usize) -> Result<bool> {
    check_nk(n, k)?;
    let series = tractor_T_series(k, n)?;
    let bottom: Vec<&IrreducibleBundle> = series.slots[3..].iter().flatten().collect();
    if !bottom.contains(&target) {
        return Err(Error::Domain(format!("{target} is not a bottom constituent at (n,k)=({n},{k})")));
    }
    let primed = target.s;
    let unprimed = target.diagram.boxes();
    let slots: Vec<usize> = (primed..primed + unprimed).collect();
    let d = target.diagram.clone();
    let primed_values: Vec<Vec<u8>> = MultiIndex::new(&vec![2; primed]).map(|v| v.into_iter().map(|x| x as u8).collect()).collect();
    let test = |t: Sparse| -> Result<bool> {
        for p in &primed_values {
            let shifted: Sparse = t
                .iter()
                .map(|(key, v)| {
                    let mut kk = p.clone();
                    kk.extend_from_slice(key);
                    (kk, *v)
                })
                .collect();
            if !apply_projector_sparse(&d, &shifted, &slots)?.is_empty() {
                return Ok(false);
            }
        }
        Ok(true)
    };
    match c {
        SymmetryClass::Generic => {
            for idx in MultiIndex::new(&vec![n; unprimed]) {
                let mut t = Sparse::new();
                t.insert(idx.iter().map(|&x| x as u8).collect(), qi(1));
                if !test(t)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        SymmetryClass::Weyl | SymmetryClass::CottonYork => {
            // symmetric triple ⊗ unit filler; the primed part of the class is
            // carried by the target's primed slots or contracted to a density
            let perms = crate::tensor::permutations(3);
            for place in combinations(unprimed, 3) {
                let rest: Vec<usize> = (0..unprimed).filter(|i| !place.contains(i)).collect();
                for vals in sorted_multisets(n, 3) {
                    for fill in MultiIndex::new(&vec![n; rest.len()]) {
                        let mut t = Sparse::new();
                        for (perm, _) in &perms {
                            let mut key = vec![0u8; unprimed];
                            for (j, &slot) in place.iter().enumerate() {
                                key[slot] = vals[perm[j]] as u8;
                            }
                            for (j, &slot) in rest.iter().enumerate() {
                                key[slot] = fill[j] as u8;
                            }
                            *t.entry(key).or_insert_with(Q::zero) += qi(1);
                        }
                        if !test(t)? {
                            return Ok(false);
                        }
                    }
                }
            }
            Ok(true)
        }
    }
}

fn check_one_form(xi: &Tensor, n: usize) -> Result<()> {
    if xi.slots() != one_form_slots() || xi.n() != n {
        return Err(Error::Signature(format!("one-form expected, got {:?}", xi.slots())));
    }
    Ok(())
}

/// Which action coefficients the symbol computations use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActionRows {
    /// Coefficients reproduced by the cotractor realization.
    Realized,
    /// Unit coefficients on the `μ` and `ρ` rows, as in the displayed action rows.
    Displayed,
}

fn act(rows: ActionRows, xi: &Tensor, s: &TSection) -> Result<TSection> {
    match rows {
        ActionRows::Realized => bullet_on_t(xi, s),
        ActionRows::Displayed => bullet_on_t_displayed(xi, s),
    }
}

fn branch_component(branch: u8) -> Result<Component> {
    match branch {
        1 => Ok(Component::A),
        2 => Ok(Component::Alpha),
        _ => Err(Error::Domain(format!("branch {branch}, expected 1 or 2"))),
    }
}

/// Four bullets `σ → μ → (A | α) → ν → ρ` with unit coefficients, keeping only
/// the chosen slot-2 constituent; returns the projected `ρ`.
pub fn symbol_path(xi: &Tensor, sigma: &Tensor, branch: u8, n: usize, k: usize) -> Result<Tensor> {
    symbol_path_with(ActionRows::Realized, xi, sigma, branch, n, k)
}

pub fn symbol_path_with(rows: ActionRows, xi: &Tensor, sigma: &Tensor, branch: u8, n: usize, k: usize) -> Result<Tensor> {
    let keep = branch_component(branch)?;
    check_nk(n, k)?;
    check_one_form(xi, n)?;
    let s0 = TSection::only(n, k, Component::Sigma, Component::Sigma.project(sigma, k)?)?;
    let s1 = act(rows, xi, &s0)?;
    let s2 = act(rows, xi, &s1)?.restrict(&[keep]);
    let s3 = act(rows, xi, &s2)?;
    let s4 = act(rows, xi, &s3)?;
    Ok(s4.rho)
}

fn omega_slots() -> Vec<IndexKind> {
    let mut v = Vec::new();
    for _ in 0..4 {
        v.extend_from_slice(&one_form_slots());
    }
    v
}

/// `ω_{I'A}{}^{I'}{}_{B J'C}{}^{J'}{}_D` for `ω` with slots `[P₁U₁P₂U₂P₃U₃P₄U₄]`.
pub fn first_contraction(omega: &Tensor) -> Result<Tensor> {
    if omega.slots() != omega_slots().as_slice() {
        return Err(Error::Signature(format!("ω expects {:?}", omega_slots())));
    }
    let t = omega.lower_primed(0)?.contract(2, 0)?;
    // [U₁, U₂, P₃, U₃, P₄, U₄]
    t.lower_primed(2)?.contract(4, 2)
}

/// Projection to the bottom bundle in the form `alternate 𝐀, alternate 𝐁,
/// symmetrize the blocks, keep the `(k, k)` constituent`.
pub fn target_projection(t: &Tensor, k: usize) -> Result<Tensor> {
    let a = t.alternate_range(0, k)?.alternate_range(k, k)?;
    let swap: Vec<usize> = (k..2 * k).chain(0..k).collect();
    let sym = a.try_add(&a.permute(&swap)?)?.scale(q(1, 2));
    let d = YoungDiagram::new(vec![k, k])?;
    let slots: Vec<usize> = (0..2 * k).collect();
    Ok(apply_normalized_projector(&d, &sym, &slots)?.with_weight(Component::Rho.weight(k)))
}

/// The nonstandard symbol: the `V₂`-valued map of `ω` tensored with `σ`,
/// projected to the bottom bundle.
pub fn nonstandard_symbol(omega: &Tensor, sigma: &Tensor, n: usize, k: usize) -> Result<Tensor> {
    check_nk(n, k)?;
    if sigma.slots() != Component::Sigma.slots(k).as_slice() || sigma.n() != n || omega.n() != n {
        return Err(Error::Signature(format!("σ expects {:?}", Component::Sigma.slots(k))));
    }
    let x = first_contraction(omega)?;
    let xa = x.alternate(&[0, 1])?.alternate(&[2, 3])?;
    let swapped = xa.permute(&[2, 3, 0, 1])?;
    let mut phi = xa.try_add(&swapped)?.scale(q(1, 2));
    phi.axpy(qi(-1), &x.alternate_range(0, 4)?)?;
    target_projection(&place_with_sigma(&phi, sigma, k)?, k)
}

/// `t_{ABCD} σ_{ÄB̈}` arranged as `[A, B, Ä, C, D, B̈]`.
pub fn place_with_sigma(t: &Tensor, sigma: &Tensor, k: usize) -> Result<Tensor> {
    let t = t.outer(sigma);
    let mut order = vec![0, 1];
    order.extend(4..k + 2);
    order.extend([2, 3]);
    order.extend(k + 2..2 * k);
    t.permute(&order)
}

/// `ξ ⊗ ξ ⊗ ξ ⊗ ξ` with the slot layout of [`nonstandard_symbol`].
pub fn fourth_power(xi: &Tensor) -> Tensor {
    xi.outer(xi).outer(xi).outer(xi)
}

/// Proportionality constants of the two symbol paths against the nonstandard symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolPathReport {
    pub n: usize,
    pub k: usize,
    /// Branch through the `A` constituent.
    pub c1: Option<Q>,
    /// Branch through the `α` constituent.
    pub c2: Option<Q>,
    pub samples: usize,
    /// First input where a constant failed to exist or changed.
    pub failure: Option<String>,
}

impl SymbolPathReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none() && self.c1.is_some() && self.c1 == self.c2 && self.c1 != Some(Q::zero())
    }
}

fn random_one_form(n: usize, rng: &mut Lcg) -> Tensor {
    Tensor::from_fn(n, &one_form_slots(), 0, |_| qi(rng.small_int(2)))
}

/// Runs both paths on `samples` seeded `(ξ, σ)` pairs and reads off one
/// constant per branch.
pub fn symbol_path_constants(rows: ActionRows, n: usize, k: usize, samples: usize, seed: u64) -> Result<SymbolPathReport> {
    check_nk(n, k)?;
    let mut rng = Lcg::new(seed);
    let mut c: [Option<Q>; 2] = [None, None];
    let mut failure = None;
    let mut used = 0;
    'outer: while used < samples {
        let xi = random_one_form(n, &mut rng);
        let sigma = Component::Sigma.project(
            &Tensor::from_fn(n, &Component::Sigma.slots(k), Component::Sigma.weight(k), |_| qi(rng.small_int(2))),
            k,
        )?;
        let reference = nonstandard_symbol(&fourth_power(&xi), &sigma, n, k)?;
        if reference.is_zero() {
            continue;
        }
        used += 1;
        for b in 0..2 {
            let path = symbol_path_with(rows, &xi, &sigma, b as u8 + 1, n, k)?;
            match proportionality(path.data(), reference.data()) {
                None => {
                    failure = Some(format!("branch {} is not a multiple of the nonstandard symbol at sample {used}", b + 1));
                    break 'outer;
                }
                Some(r) => match c[b] {
                    None => c[b] = Some(r),
                    Some(prev) if prev != r => {
                        failure = Some(format!("branch {} constant changed from {prev} to {r} at sample {used}", b + 1));
                        break 'outer;
                    }
                    _ => {}
                },
            }
        }
    }
    Ok(SymbolPathReport { n, k, c1: c[0], c2: c[1], samples: used, failure })
}

/// Sign in front of the second branch of the `M`-symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MSign {
    Minus,
    /// Mutated variant used to confirm the check can fail.
    Plus,
}

/// `M_{ξ_b, ξ_c}(μ) = ξ_c•(ξ_b•μ)₁ ∓ ξ_c•(ξ_b•μ)₂`.
pub fn m_symbol(xb: &Tensor, xc: &Tensor, s: &TSection, sign: MSign) -> Result<TSection> {
    let inner = bullet_on_t(xb, s)?;
    let first = bullet_on_t(xc, &inner.restrict(&[Component::A]))?;
    let second = bullet_on_t(xc, &inner.restrict(&[Component::Alpha]))?;
    let mut out = first.clone();
    let c = match sign {
        MSign::Minus => qi(-1),
        MSign::Plus => qi(1),
    };
    for comp in Component::ALL {
        out.get_mut(comp).axpy(c, second.get(comp))?;
    }
    Ok(out)
}

/// Outcome of the polarized `M∘d` and `d∘M` symbol checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MdReport {
    pub n: usize,
    pub k: usize,
    /// Number of (covector multiset, section) inputs evaluated.
    pub evaluations: usize,
    /// First nonvanishing input, if any.
    pub counterexample: Option<(String, Tensor)>,
}

impl MdReport {
    pub fn vanishes(&self) -> bool {
        self.counterexample.is_none()
    }
}

fn basis_one_forms(n: usize) -> Vec<Tensor> {
    Tensor::basis(n, &one_form_slots(), 0).collect()
}

const ORDERS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Polarized third-order symbols of `M∘d` (`σ → ν`) and `d∘M` (`μ → ρ`),
/// evaluated on every covector multiset from the one-form basis and every
/// basis section.
pub fn md_symbol_check(n: usize, k: usize, sign: MSign) -> Result<MdReport> {
    check_nk(n, k)?;
    let forms = basis_one_forms(n);
    let sigmas = TSection::component_basis(n, k, Component::Sigma)?;
    let mus = TSection::component_basis(n, k, Component::Mu)?;
    let mut evaluations = 0;
    for trip in sorted_multisets(forms.len(), 3) {
        let xs = [&forms[trip[0]], &forms[trip[1]], &forms[trip[2]]];
        for s in &sigmas {
            let s0 = TSection::only(n, k, Component::Sigma, s.clone())?;
            let mut acc = Component::Nu.zero(n, k);
            for o in ORDERS {
                let d = bullet_on_t(xs[o[0]], &s0)?;
                let m = m_symbol(xs[o[1]], xs[o[2]], &d, sign)?;
                acc.axpy(qi(1), &m.nu)?;
            }
            evaluations += 1;
            if !acc.is_zero() {
                return Ok(MdReport {
                    n,
                    k,
                    evaluations,
                    counterexample: Some((format!("M∘d, covectors {trip:?}"), acc)),
                });
            }
        }
        for s in &mus {
            let s0 = TSection::only(n, k, Component::Mu, s.clone())?;
            let mut acc = Component::Rho.zero(n, k);
            for o in ORDERS {
                let m = m_symbol(xs[o[0]], xs[o[1]], &s0, sign)?;
                let d = bullet_on_t(xs[o[2]], &m)?;
                acc.axpy(qi(1), &d.rho)?;
            }
            evaluations += 1;
            if !acc.is_zero() {
                return Ok(MdReport {
                    n,
                    k,
                    evaluations,
                    counterexample: Some((format!("d∘M, covectors {trip:?}"), acc)),
                });
            }
        }
    }
    Ok(MdReport { n, k, evaluations, counterexample: None })
}

pub fn verify_md_symbol_vanishes(n: usize, k: usize) -> Result<bool> {
    Ok(md_symbol_check(n, k, MSign::Minus)?.vanishes())
}
