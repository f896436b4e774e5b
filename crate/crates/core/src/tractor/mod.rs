//! Tractor-level calculus on the bundle `𝒯 = Young(k, k) ℰ_{𝛂𝛃}[−k]`.

mod action;
mod casimir;
mod injectors;
mod section;
mod symbol;

pub use injectors::{
    b_alpha_from_tensor, bullet, sparse_to_dense, verify_b_alpha, BAlphaReport, InjectorBasis,
};
pub use action::{bullet_on_t, bullet_on_t_displayed, bullet_on_t_raw, bullet_oracle, one_form_slots};
pub use section::{Component, TSection};
pub use symbol::{
    first_contraction, fourth_power, place_with_sigma, target_projection, m_symbol, md_symbol_check, nonstandard_symbol, projection_kills_symmetric,
    symbol_path, symbol_path_constants, symbol_path_with, verify_md_symbol_vanishes, ActionRows, MSign, MdReport,
    SymbolPathReport, SymmetryClass,
};
pub use casimir::{
    bookkeeping_check, factorization_check, formal_casimir_compose, four_step_path, path_coefficient, slot, BookkeepingCheck, FormalCasimir, FormalMatrix, Generator, Step, Word,
};
