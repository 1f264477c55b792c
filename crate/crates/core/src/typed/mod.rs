//! Type `D_n`: roots, signed permutations, the Weyl group with its Bruhat
//! order, and the analogues of admissible sets and compatible orders.

pub mod admissible;
pub mod conjecture;
pub mod group;
pub mod root;
pub mod signed;

pub use admissible::{
    AdmissibilityViolationD, AdmissibleSetD, CompatibilityViolationD, ElementD, SimpleRootOrder, TypeD,
};
pub use conjecture::{verify_conjecture_d, ConjectureOptions, ConjectureReport, ElementVerdictD};
pub use group::{is_smooth_d, WeylGroupD};
pub use root::{f_map, RootD, RootSystem};
pub use signed::SignedPermutation;
