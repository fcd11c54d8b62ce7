//! Exact-arithmetic invariants of root systems, maximal-parabolic level
//! structure, circular symmetry of divisor-sum sequences, center orbits on
//! extended diagrams, and weighted-projective-space weight data for moduli of
//! semistable bundles over an elliptic curve.
//!
//! Everything is computed over the integers and rationals with no floating
//! point; identities with two independent derivations are checked along both
//! routes.

#![forbid(unsafe_code)]

pub mod center;
pub mod farey;
pub mod parabolic;
pub mod ratmat;
pub mod rootsys;

pub use center::{
    alcove_fixed_simplex, brute_weyl_order, c_special_roots, center_group, diagram_automorphism,
    lattice_profile, n_c_alpha, o_c_alpha, orbit_data, orbit_integers, pairing_degree,
    quotient_dot, AffineAutomorphism, AlcoveData, CSpecialCert, CenterElement, CenterGroup,
    LatticeProfile, Orbit, OrbitProfile,
};
pub use farey::{
    circular_complete, farey_sequence, is_circularly_symmetric, CircularCheck, Completion,
    FareySequence,
};
pub use parabolic::{
    dk_sequence, is_special_root, levi_special_structure, parabolic_profile, subsystem_r_alpha_k,
    verify_lambda_props, LevelData, ParabolicProfile,
};
pub use ratmat::{Q, Z};
pub use rootsys::{build_root_system, classify_components, Family, RootDatum, SimpleType};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
