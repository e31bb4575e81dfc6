//! Root intervals and chains, the chain alternative, dihedral pairs, the
//! constants ε̂, r_n and L, parabolic closures and the ladder check.

mod closure;
mod interval;
mod ladder;
mod surd;

use serde::Serialize;

pub use closure::{finite_subgroup, parabolic_closure_finite, parabolic_closure_of_roots, Parabolic};
pub use interval::{
    classify_chain, classify_dihedral_pair, estimate_epsilon, make_chain, maximally_convex_chain, root_interval,
    ChainContext, ChainVerdict, EpsilonEstimate, PairKind, RootChain,
};
pub use ladder::{check_ladder, LadderReport};
pub use surd::{constant_l, hyperbolic_distance, r_sequence, r_term, RTerm, Surd};

use crate::algebra::{CoxeterMatrix, Scalar};
use crate::error::Result;
use crate::roots::{constant_kappa, constant_lambda_fin, constant_lambda_max, Constant};
use crate::walls::WallSpace;

/// Every constant of the theory at one depth, with witnesses.
#[derive(Clone, Debug, Serialize)]
pub struct ConstantsReport {
    pub kappa: Constant,
    pub lambda_fin: Constant,
    pub lambda_max: Constant,
    pub epsilon_hat: EpsilonEstimate,
    /// `r_0 ..= r_32`, present when `ε̂` is defined.
    pub r_table: Option<Vec<RTerm>>,
    pub l: Option<Scalar>,
}

pub fn constants_report(matrix: &CoxeterMatrix, space: &WallSpace) -> Result<ConstantsReport> {
    let kappa = constant_kappa(matrix);
    let lambda_fin = constant_lambda_fin(matrix);
    let lambda_max = constant_lambda_max(matrix)?;
    let epsilon_hat = estimate_epsilon(space);
    let (r_table, l) = match &epsilon_hat.value {
        Some(e) => (Some(r_sequence(32, e, &kappa.value)?), Some(constant_l(&kappa.value, &lambda_fin.value, e)?)),
        None => (None, None),
    };
    Ok(ConstantsReport { kappa, lambda_fin, lambda_max, epsilon_hat, r_table, l })
}
