//! Root inventories by depth, small roots, the constants κ, λ_fin, λ_max and
//! canonical simple systems of reflection subgroups.

mod canonical;
mod constants;
mod inventory;

pub use canonical::{canonical_simple_system, matrix_of_roots, order_from_form, visible_closure, CanonicalSystem};
pub use constants::{
    constant_kappa, constant_lambda_fin, constant_lambda_max, parabolic_positive_roots, small_roots, small_roots_in,
    Constant,
};
pub use inventory::{enumerate_roots, root_depth, RootInventory, DEFAULT_ROOT_CAP};
