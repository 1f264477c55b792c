//! Smooth permutations and compatible reflection orders.
//!
//! For a smooth `w` in `S_n`, the reflections below `w` in Bruhat order can
//! be ordered so that their prefix products form a saturated chain from the
//! identity to `w`. This crate computes the reflection sets and admissible
//! sets involved, constructs and enumerates compatible orders, checks the
//! chains, and runs the analogous experiment in the Weyl group of type `D`.
//!
//! ```
//! use bruhat_chains::{construct_compatible_order, verify_theorem, Permutation};
//!
//! let w = Permutation::parse("321").unwrap();
//! let order = construct_compatible_order(&w).unwrap();
//! assert_eq!(order.to_string(), "(T(2,3), T(1,3), T(1,2))");
//! assert!(verify_theorem(&w, &order).unwrap().all_ok());
//! ```

pub mod admissible;
pub mod bruhat;
pub mod compat;
pub mod constraints;
pub mod error;
pub mod perm;
pub mod runs;
pub mod sweep;
pub mod typed;

pub use admissible::{
    admissibility_violation, c23, c_t, find_wedges, is_admissible, is_smooth_length, is_smooth_pattern,
    restrict, smooth_permutations, wedge_criterion, AdmissibilityViolation, AdmissibleSet, Element23, Wedge,
};
pub use bruhat::{cover_transposition, element23_leq, is_cover, leq, reflection_leq, BruhatChain, RankMatrix};
pub use compat::{
    compatibility_violation, construct_compatible_order, construct_for_set, elementary_neighbors,
    enumerate_compatible_orders, graph_connected, graph_connectivity, is_compatible, move_graph_dot,
    smoothness_characterization, verify_theorem, Construction, ConstructionLevel, ConnectivityReport,
    ReflectionOrder, SmoothnessCertificate, TripleViolation, VerificationReport,
};
pub use error::{Error, Result};
pub use perm::{MuTable, Permutation, Transposition};
pub use sweep::{run_sweep, SweepConfig, SweepMode, SweepReport};
