//! Structured verification reports and the per-command check suites.
//!
//! A report is a flat list of assertions `{id, anchor, status, details}`; the
//! anchor names the statement being checked in words.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use num_traits::Zero;

use crate::forms::{decompose_forms, eigenvalue_table, tractor_T_series};
use crate::rng::Lcg;
use crate::tensor::Tensor;
use crate::tractor::{
    bookkeeping_check, bullet_on_t, bullet_oracle, factorization_check, formal_casimir_compose, four_step_path,
    md_symbol_check, projection_kills_symmetric, slot, symbol_path_constants, verify_b_alpha, ActionRows,
    Component, FormalCasimir, InjectorBasis, MSign, SymmetryClass, TSection,
};
use crate::verma::{phi_maps_coincide_on_image, verify_obstruction};
use crate::young::{dimension, YoungDiagram};
use crate::{qi, Error, Result, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub details: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub n: usize,
    pub k: Option<usize>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: &str, n: usize, k: Option<usize>) -> Self {
        Report { command: command.to_string(), n, k, checks: Vec::new() }
    }

    pub fn push(&mut self, id: &str, anchor: &str, ok: bool, details: String) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.checks.push(Check { id: id.to_string(), anchor: anchor.to_string(), status, details });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// One line per check: `PASS id [anchor] details`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let k = self.k.map(|k| format!(" k={k}")).unwrap_or_default();
        let _ = writeln!(s, "# {} n={}{}", self.command, self.n, k);
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            let _ = writeln!(s, "{tag} {} [{}] {}", c.id, c.anchor, c.details);
        }
        let _ = writeln!(s, "# {}", if self.passed() { "all checks passed" } else { "some checks failed" });
        s
    }
}

/// `p/q`, or `p` for integers.
pub fn format_q(x: &Q) -> String {
    if x.is_integer() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn format_opt_q(x: &Option<Q>) -> String {
    x.as_ref().map(format_q).unwrap_or_else(|| String::from("none"))
}

/// Index signature and nonzero entries, truncated after `limit` entries.
pub fn format_tensor(t: &Tensor, limit: usize) -> String {
    let mut s = format!("slots={:?} weight={} entries=[", t.slots(), t.weight());
    let entries = t.nonzero_entries();
    for (i, (idx, v)) in entries.iter().take(limit).enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "{idx:?}:{}", format_q(v));
    }
    if entries.len() > limit {
        let _ = write!(s, ", … {} more", entries.len() - limit);
    }
    s.push(']');
    s
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if k < 2 || k > n {
        return Err(Error::Domain(format!("need 2 ≤ k ≤ n, got (n,k) = ({n},{k})")));
    }
    Ok(())
}

const SLOT_LABELS: [&str; 6] = ["0", "1", "2a", "2b", "3", "4"];

/// Casimir eigenvalues on the composition series of `𝒯`.
pub fn eigenvalues(n: usize, k: usize) -> Result<Report> {
    check_nk(n, k)?;
    let mut r = Report::new("eigenvalues", n, Some(k));
    let series = tractor_T_series(k, n)?;
    let table: Vec<Q> = eigenvalue_table(&series, n + 2)?.into_iter().flatten().collect();
    let expected = [0, 0, 4, -4, 0, 0].map(qi);
    let bundles: Vec<_> = series.constituents().collect();
    for (i, (b, got)) in bundles.iter().zip(&table).enumerate() {
        r.push(
            &format!("eigenvalue.slot{}", SLOT_LABELS[i]),
            "Casimir eigenvalues on the series of the two-column tractor bundle",
            *got == expected[i],
            format!("bundle={b} beta={} expected={}", format_q(got), format_q(&expected[i])),
        );
    }
    Ok(r)
}

/// Irreducible pieces of `Λʲ T*M`.
pub fn forms(j: usize, n: usize) -> Result<Report> {
    let mut r = Report::new("decompose-forms", n, None);
    let parts = decompose_forms(j, n)?;
    for (i, b) in parts.iter().enumerate() {
        r.push(
            &format!("forms.piece{i}"),
            "decomposition of exterior forms",
            b.validate(n).is_ok(),
            format!("j={j} bundle={b} rank={}", b.dimension(n)),
        );
    }
    let total: u128 = parts.iter().map(|b| b.dimension(n)).sum();
    let expect = binomial(2 * n as u128, j as u128);
    r.push(
        "forms.dimension",
        "ranks of the pieces add up to the rank of the form bundle",
        total == expect,
        format!("sum={total} binomial(2n,j)={expect} pieces={}", parts.len()),
    );
    Ok(r)
}

pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// The composition series of `𝒯` and the formal Casimir products on it.
pub fn series(n: usize, k: usize) -> Result<Report> {
    check_nk(n, k)?;
    let mut r = Report::new("series", n, Some(k));
    let s = tractor_T_series(k, n)?;
    let total = s.total_dimension(n);
    let whole = dimension(&YoungDiagram::new(vec![k, k])?, n + 2);
    r.push(
        "series.rank",
        "composition series of the two-column tractor bundle",
        total == whole,
        format!("series={} ranks={total} rank(T)={whole}", s.describe()),
    );
    let fc = FormalCasimir::tractor(n, k)?;
    let four = qi(4);
    let m = formal_casimir_compose(&fc, &[qi(0), four, -four])?;
    let b = m.block(slot::S3, slot::S1);
    let via = |x: usize| {
        let w = four_step_path(x);
        vec![w[1], w[2]]
    };
    let (a, c) = (b.get(&via(slot::S2A)).copied(), b.get(&via(slot::S2B)).copied());
    let ok = matches!((a, c), (Some(a), Some(c)) if !a.is_zero() && a == -c);
    r.push(
        "casimir.m_operator",
        "the operator between slots 1 and 3 induced by C(C-4)(C+4)",
        ok,
        format!("words={} via2a={} via2b={}", b.len(), format_opt_q(&a), format_opt_q(&c)),
    );
    let m = formal_casimir_compose(&fc, &[qi(0), qi(0), four, -four])?;
    let p = m.principal().block(slot::BOTTOM, slot::TOP);
    let (a, c) = (p.get(&four_step_path(slot::S2A)).copied(), p.get(&four_step_path(slot::S2B)).copied());
    r.push(
        "casimir.two_paths",
        "top-to-bottom principal part is the sum of the two paths",
        p.len() == 2 && a.is_some() && a == c,
        format!("principal_words={} kappa={}", p.len(), format_opt_q(&a)),
    );
    let single = formal_casimir_compose(&FormalCasimir::single(qi(7)), &[qi(7)])?;
    r.push("casimir.single_slot", "(C - beta) annihilates its own eigenslot", single.is_zero(), String::from("beta=7"));
    let (whole_ok, principal_ok) = factorization_check(&fc)?;
    r.push(
        "casimir.factorization",
        "direct construction factors through M and the adjacent-slot blocks",
        whole_ok && principal_ok,
        format!("block_equals_sum={whole_ok} principal_through_M={principal_ok}"),
    );
    Ok(r)
}

/// Bullet action against the cotractor oracle, round trips and nilpotency.
///
/// Uses the full section basis when `n = 2` and `samples` seeded sections otherwise.
pub fn verify_action(n: usize, k: usize, seed: u64, samples: usize) -> Result<Report> {
    check_nk(n, k)?;
    let mut r = Report::new("verify-action", n, Some(k));
    let ib = InjectorBasis::new(n, k)?;
    let mut rng = Lcg::new(seed);
    let phis: Vec<Tensor> = (0..3)
        .map(|_| Tensor::from_fn(n, &crate::tractor::one_form_slots(), 0, |_| qi(rng.small_int(2))))
        .collect();
    let sections: Vec<TSection> = if n == 2 {
        TSection::basis(n, k)?
    } else {
        (0..samples).map(|_| TSection::random(n, k, &mut rng)).collect::<Result<_>>()?
    };
    let mut mismatch = None;
    let mut round_trip = true;
    let mut nilpotent = true;
    for (si, s) in sections.iter().enumerate() {
        let phi = &phis[si % phis.len()];
        let got = bullet_on_t(phi, s)?;
        let want = bullet_oracle(&ib, phi, s)?;
        if got != want && mismatch.is_none() {
            let diff = got.try_sub(&want)?;
            let c = Component::ALL.into_iter().find(|&c| !diff.get(c).is_zero()).unwrap_or(Component::Sigma);
            mismatch = Some(format!("section {si}, component {}: {}", c.name(), format_tensor(diff.get(c), 8)));
        }
        if ib.extract(&ib.embed(s)?)? != *s {
            round_trip = false;
        }
        if si < 4 {
            let mut t = s.clone();
            for _ in 0..5 {
                t = bullet_on_t(phi, &t)?;
            }
            nilpotent &= t.is_zero();
        }
    }
    let what = if n == 2 { "full basis" } else { "seeded sections" };
    r.push(
        "action.oracle",
        "componentwise action of one-forms on sections of T",
        mismatch.is_none(),
        mismatch.unwrap_or_else(|| format!("{} {what} agree with embed/bullet/extract", sections.len())),
    );
    r.push("action.round_trip", "injectors realize the composition series", round_trip, format!("{} sections", sections.len()));
    r.push("action.nilpotent", "five bullets annihilate every section", nilpotent, String::from("4 sections"));
    Ok(r)
}

/// The two constants relating `B` and `α`.
pub fn verify_balpha(n: usize, k: usize, seed: u64) -> Result<Report> {
    check_nk(n, k)?;
    let mut r = Report::new("verify-balpha", n, Some(k));
    let got = verify_b_alpha(n, k, seed)?;
    let x = Q::new(k as i128, 2);
    let y = qi(if k.is_multiple_of(2) { 1 } else { -1 } * (k as i128 - 1));
    r.push(
        "balpha.x",
        "B is a fixed multiple of alpha inside T",
        got.x == x,
        format!("x={} expected={}", format_q(&got.x), format_q(&x)),
    );
    r.push(
        "balpha.y",
        "alpha is a fixed multiple of B inside T",
        got.y == y,
        format!("y={} expected={}", format_q(&got.y), format_q(&y)),
    );
    Ok(r)
}

/// Vanishing of the `M∘d`, `d∘M` symbols, its mutation, and curvature projections.
pub fn verify_md_vanish(n: usize, k: usize) -> Result<Report> {
    check_nk(n, k)?;
    let mut r = Report::new("verify-md-vanish", n, Some(k));
    let m = md_symbol_check(n, k, MSign::Minus)?;
    let detail = |rep: &crate::tractor::MdReport| match &rep.counterexample {
        None => format!("{} evaluations vanish", rep.evaluations),
        Some((what, t)) => format!("{what}: {}", format_tensor(t, 8)),
    };
    r.push("md.vanishes", "M∘d and d∘M vanish at the symbol level", m.vanishes(), detail(&m));
    let p = md_symbol_check(n, k, MSign::Plus)?;
    r.push(
        "md.mutation_detected",
        "sign-flipped M symbol does not vanish",
        !p.vanishes(),
        detail(&p),
    );
    let s = tractor_T_series(k, n)?;
    let (nu, rho) = (&s.slots[3][0], &s.slots[4][0]);
    let w = projection_kills_symmetric(SymmetryClass::Weyl, rho, n, k)?;
    r.push("kills.weyl", "Weyl-type curvature is projected out of the bottom slot", w, format!("target={rho}"));
    let cy = projection_kills_symmetric(SymmetryClass::CottonYork, nu, n, k)?;
    r.push("kills.cotton_york", "Cotton-York-type terms are projected out of slot 3", cy, format!("target={nu}"));
    let g = projection_kills_symmetric(SymmetryClass::Generic, rho, n, k)?;
    r.push("kills.generic_survives", "a tensor without symmetry is not projected out", !g, format!("target={rho}"));
    Ok(r)
}

/// The two four-step symbol paths against the nonstandard symbol.
pub fn verify_symbol_paths(n: usize, k: usize, seed: u64, samples: usize) -> Result<Report> {
    check_nk(n, k)?;
    let mut r = Report::new("verify-symbol-paths", n, Some(k));
    let real = symbol_path_constants(ActionRows::Realized, n, k, samples, seed)?;
    r.push(
        "paths.realized",
        "both paths give the same nonzero multiple of the nonstandard symbol",
        real.passed(),
        format!(
            "c_branch1={} c_branch2={} samples={}{}",
            format_opt_q(&real.c1),
            format_opt_q(&real.c2),
            real.samples,
            real.failure.as_ref().map(|f| format!(" failure={f}")).unwrap_or_default()
        ),
    );
    let side = bookkeeping_check(n, k, samples, seed)?;
    let consistent = side.per_path.is_some_and(|c| !c.is_zero()) && side.kappa.is_some();
    r.push(
        "paths.bookkeeping",
        "constant per path (claimed 3) and in total (claimed 6) with unit-coefficient rows",
        consistent,
        format!(
            "per_path={} total={} claimed=3/6 matches_claim={} claimed_over_computed={} kappa={} casimir_factor={}",
            format_opt_q(&side.per_path),
            format_opt_q(&side.total),
            side.matches_claim(),
            format_opt_q(&side.discrepancy()),
            format_opt_q(&side.kappa),
            format_opt_q(&side.casimir_factor),
        ),
    );
    Ok(r)
}

/// The obstruction to strong invariance.
pub fn verify_obstruction_report(n: usize, k: usize) -> Result<Report> {
    check_nk(n, k)?;
    let mut r = Report::new("verify-obstruction", n, Some(k));
    let o = verify_obstruction(n, k)?;
    let anchor_lift = "lifts of the nonstandard homomorphism to semi-holonomic jets";
    r.push("verma.c_sum", "c1 + c2 + c3 = 0", o.contraction_identity, String::from("full basis"));
    r.push("verma.p_sum", "p1 + p2 + p3 = 0", o.projection_identity, String::from("full basis"));
    r.push("verma.symmetric", "all Phi_ij coincide on symmetric jets", o.symmetric_coincidence, String::from("spanning set"));
    r.push("verma.homomorphism", "phi kills the g1-image of symmetric jets", o.phi_is_homomorphism, String::from("spanning set"));
    r.push("verma.first_sum", "first sum of the g1-action is projected out", o.first_sum_killed, String::from("spanning set"));
    r.push("verma.chain", "p1c1 = -2p2c1 = -2p1c2 = p2c2 on Z·omega", o.relation_chain, String::from("kernel basis × basis Z"));
    r.push("verma.c_values", "c1, c2 of Z·omega are -3 Z omega", o.contraction_values, String::from("kernel basis × basis Z"));
    r.push("verma.independent", anchor_lift, o.coefficient_independent, String::from("K+L+M+N = 1"));
    r.push(
        "verma.nonzero",
        anchor_lift,
        o.witness_nonzero(),
        format!(
            "first nonzero (kernel, v, Z) = {:?}; witness/closed form = {}",
            o.witness,
            format_opt_q(&o.closed_form_factor)
        ),
    );
    if let Some(f) = &o.failure {
        if o.closed_form_factor.is_none() {
            r.push("verma.closed_form", anchor_lift, false, f.clone());
        }
    }
    Ok(r)
}

/// Whether every `Φ_{ij}` agrees on the whole `g₁`-image.
pub fn verify_image_coincidence(n: usize, k: usize) -> Result<Report> {
    let mut r = Report::new("verify-obstruction", n, Some(k));
    r.push(
        "verma.image",
        "the maps Phi_ij coincide on the whole g1-image",
        phi_maps_coincide_on_image(n, k)?,
        String::from("basis inputs"),
    );
    Ok(r)
}

/// Every suite at one `(n, k)`.
pub fn verify_all(n: usize, k: usize, seed: u64) -> Result<Report> {
    check_nk(n, k)?;
    let mut r = Report::new("verify-all", n, Some(k));
    r.extend(eigenvalues(n, k)?);
    r.extend(series(n, k)?);
    r.extend(forms(2 * k, n)?);
    r.extend(verify_action(n, k, seed, 20)?);
    r.extend(verify_balpha(n, k, seed)?);
    r.extend(verify_md_vanish(n, k)?);
    r.extend(verify_symbol_paths(n, k, seed, 2)?);
    r.extend(verify_obstruction_report(n, k)?);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_layout() {
        let mut r = Report::new("demo", 3, Some(2));
        r.push("a", "first", true, String::from("ok"));
        r.push("b", "second", false, String::from("bad"));
        assert!(!r.passed());
        assert_eq!(r.to_text(), "# demo n=3 k=2\nPASS a [first] ok\nFAIL b [second] bad\n# some checks failed\n");
        assert_eq!(format_q(&Q::new(-3, 6)), "-1/2");
        assert_eq!(format_q(&qi(4)), "4");
    }

    #[test]
    fn tensor_formatting() {
        let t = Tensor::unit(2, &[crate::tensor::UNPRIMED_DOWN], 0, &[1]);
        assert_eq!(format_tensor(&t, 4), "slots=[Unprimed(Down)] weight=0 entries=[[1]:1]");
    }

    #[test]
    fn small_suites_pass() {
        assert!(eigenvalues(3, 2).unwrap().passed());
        assert_eq!(forms(4, 4).unwrap().checks.len(), 4);
        assert!(series(3, 2).unwrap().passed());
        assert!(verify_balpha(2, 2, 1).unwrap().passed());
        assert!(eigenvalues(2, 3).is_err());
        assert_eq!(binomial(8, 4), 70);
    }
}
