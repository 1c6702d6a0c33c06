//! Rank sequences, compositions, the γ-basis, catenary data and the Tutte
//! specialisation.

mod closed_forms;
mod flags;
mod gamma;
mod invariant;
mod oracle;
mod sequence;
mod tutte;

pub use closed_forms::{basis_count, paving_catenary, pmd_catenary};
pub use flags::{catenary, catenary_by_copoint_recursion, for_each_flag, Flag};
pub use gamma::{catenary_from_g, g_from_catenary, gamma1, gamma_coefficient, gamma_diagonal, gamma_expand};
pub use invariant::{CatenaryData, GInvariant, TuttePolynomial};
pub use oracle::{
    g_brute_force, g_brute_force_with_limit, oracle_limit, tutte_brute_force, tutte_brute_force_with_limit,
    DEFAULT_ORACLE_LIMIT,
};
pub use sequence::{compositions, dominates, seq_comp_bijection, Composition, RankSequence, SeqOrComp};
pub use tutte::tutte_from_g;

use crate::error::Result;
use crate::matroid::Matroid;

/// 𝒢(M) through flag enumeration and the γ-basis.
pub fn g_invariant(m: &Matroid) -> GInvariant {
    g_from_catenary(&catenary(m))
}

pub fn tutte(m: &Matroid) -> Result<TuttePolynomial> {
    tutte_from_g(&g_invariant(m))
}
