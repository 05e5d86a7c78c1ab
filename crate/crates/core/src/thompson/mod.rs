//! Higman-Thompson groups `F_n`: subdivisions, pair diagrams, orbits and
//! the constructions built on them.

mod chain;
mod nary;
mod orbit;
mod pair;
mod presentation;
mod subdivision;

pub use chain::{chain_generators, check_chain, check_fast, ChainSet};
pub use nary::{
    complete_partial, cone_embed, conjugate_to_fnl, greedy_cones, interval_conj, is_cone, member_fn,
    member_fnr, move_point, nary_map, point_of_class,
};
pub use orbit::{
    class_of, fprime_necessary, orbit_class, orbit_map, point_commutator, tuple_transport, CertifiedMap,
};
pub use pair::PairDiagram;
pub use presentation::{presentation_generator, presentation_relation_holds};
pub use subdivision::Subdivision;
