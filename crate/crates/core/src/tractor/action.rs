//! Action of one-forms on sections of `𝒯`, componentwise.

use alloc::format;
use alloc::vec::Vec;

use crate::tensor::{IndexKind, Tensor, PRIMED_UP, UNPRIMED_DOWN};
use crate::{q, qi, Error, Result, Q};

use super::injectors::{bullet, InjectorBasis};
use super::section::{Component, TSection};

fn check_one_form(phi: &Tensor, n: usize) -> Result<()> {
    if phi.slots() != [PRIMED_UP, UNPRIMED_DOWN] || phi.n() != n {
        return Err(Error::Signature(format!("one-form expected, got {:?}", phi.slots())));
    }
    Ok(())
}

fn check_section(s: &TSection, n: usize, k: usize) -> Result<()> {
    if s.n != n || s.k != k {
        return Err(Error::Signature(format!("section (n,k)=({},{}) vs ({n},{k})", s.n, s.k)));
    }
    for c in Component::ALL {
        let t = s.get(c);
        if t.slots() != c.slots(k).as_slice() {
            return Err(Error::Signature(format!("{} has slots {:?}", c.name(), t.slots())));
        }
    }
    Ok(())
}

fn range(a: usize, b: usize) -> impl Iterator<Item = usize> {
    a..b
}

/// Componentwise formulas before projection to the irreducible constituents.
pub fn bullet_on_t_raw(phi: &Tensor, s: &TSection) -> Result<TSection> {
    raw_with(phi, s, qi(4), q(1, 2))
}

/// The action with unit coefficients on the `μ` and `ρ` rows, projected.
pub fn bullet_on_t_displayed(phi: &Tensor, s: &TSection) -> Result<TSection> {
    raw_with(phi, s, qi(1), qi(1))?.project()
}

pub(crate) fn raw_with(phi: &Tensor, s: &TSection, mu_coef: Q, rho_coef: Q) -> Result<TSection> {
    let (n, k) = (s.n, s.k);
    check_one_form(phi, n)?;
    check_section(s, n, k)?;
    let phi_low = phi.lower_primed(0)?;
    let sign: i128 = if k % 2 == 0 { 1 } else { -1 };
    let mut out = TSection::zero(n, k)?;

    // μ' = 4 φ^{A'}_{[A₂} σ_{Ä] B̈}
    let mu = phi.outer(&s.sigma).alternate_range(1, k - 1)?.scale(mu_coef);

    // A' = φ^{(A'}_{[A₂} μ^{B')}_{|𝐁̇| Ä]} + φ^{(A'}_{[B₂} μ^{B')}_{|𝐀̇| B̈]}
    let pm = phi.outer(&s.mu);
    let o1: Vec<usize> = [0, 2, 1].into_iter().chain(range(k + 2, 2 * k)).chain(range(3, k + 2)).collect();
    let t1 = pm.permute(&o1)?.alternate_range(2, k - 1)?;
    let o2: Vec<usize> = [0, 2].into_iter().chain(range(3, k + 2)).chain([1]).chain(range(k + 2, 2 * k)).collect();
    let t2 = pm.permute(&o2)?.alternate_range(k + 1, k - 1)?;
    let a = t1.try_add(&t2)?.symmetrize(&[0, 1])?;

    // α' = φ_{I'[A₁} μ^{I'}_{𝐀̇] B̈}
    let alpha = phi_low.contract_with(&s.mu, &[(0, 0)])?.alternate_range(0, k)?;

    // ν' = 2φ_{I'[A₁} A^{I'A'}_{𝐀̇]𝐁̇} + 2φ^{A'}_{[B₂} α_{|𝐀| B̈]} − k(−1)^k φ^{A'}_{[A₁} α_{𝐀̇]𝐁̇}
    let t = phi_low.contract_with(&s.a, &[(0, 0)])?;
    let o: Vec<usize> = [1, 0].into_iter().chain(range(2, 2 * k)).collect();
    let t1 = t.permute(&o)?.alternate_range(1, k)?;
    let pa = phi.outer(&s.alpha);
    let o: Vec<usize> = [0].into_iter().chain(range(2, k + 2)).chain([1]).chain(range(k + 2, 2 * k)).collect();
    let t2 = pa.permute(&o)?.alternate_range(k + 1, k - 1)?;
    let t3 = pa.alternate_range(1, k)?;
    let mut nu = t1.scale(qi(2));
    nu.axpy(qi(2), &t2)?;
    nu.axpy(qi(-(k as i128) * sign), &t3)?;

    // ρ' = ½ (φ_{I'[A₁} ν^{I'}_{|𝐁| 𝐀̇]} + φ_{I'[B₁} ν^{I'}_{|𝐀| 𝐁̇]})
    let t = phi_low.contract_with(&s.nu, &[(0, 0)])?;
    let o: Vec<usize> = [0].into_iter().chain(range(k + 1, 2 * k)).chain(range(1, k + 1)).collect();
    let t1 = t.permute(&o)?.alternate_range(0, k)?;
    let o: Vec<usize> = range(1, k + 1).chain([0]).chain(range(k + 1, 2 * k)).collect();
    let t2 = t.permute(&o)?.alternate_range(k, k)?;
    let rho = t1.try_add(&t2)?.scale(rho_coef);

    out.set(Component::Mu, mu)?;
    out.set(Component::A, a)?;
    out.set(Component::Alpha, alpha)?;
    out.set(Component::Nu, nu)?;
    out.set(Component::Rho, rho)?;
    Ok(out)
}

/// `φ • s`, each component projected to its irreducible bundle.
pub fn bullet_on_t(phi: &Tensor, s: &TSection) -> Result<TSection> {
    bullet_on_t_raw(phi, s)?.project()
}

/// Slotwise evaluation through the cotractor realization: embed, bullet, extract.
pub fn bullet_oracle(ib: &InjectorBasis, phi: &Tensor, s: &TSection) -> Result<TSection> {
    check_one_form(phi, s.n)?;
    let v = ib.embed(s)?;
    ib.extract(&bullet(phi, &v)?)
}

/// Index kinds of a one-form.
pub fn one_form_slots() -> [IndexKind; 2] {
    [PRIMED_UP, UNPRIMED_DOWN]
}
