//! Finite semigroup algorithms centered on Krohn-Rhodes complexity:
//! Green's relation structure, holonomy-free upper and lower bound
//! certificates, kernel and expansion constructions, and the lattice and
//! pointlike machinery that feeds them.

pub mod bounds;
pub mod budget;
pub mod builtins;
pub mod classify;
mod dsu;
pub mod error;
pub mod expansions;
pub mod green;
pub mod inverse;
pub mod iso;
pub mod lattices;
pub mod morphism;
pub mod pointlikes;
pub mod pool;
pub mod products;
pub mod semigroup;
pub mod structure;
pub mod theta;
pub mod transformation;

pub use budget::Budget;
pub use error::{Error, Result};
pub use green::{green, is_aperiodic, GreenData};
pub use semigroup::{parse_semigroup, render_semigroup, FiniteSemigroup};
pub use transformation::{
    generate_ts, parse_generators, render_generators, right_regular, Pmap,
    TransformationSemigroup, UNDEF,
};
