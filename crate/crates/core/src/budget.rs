//! Cooperative resource limits for closure computations and searches.
//!
//! Every potentially explosive loop checks one of these caps and bails out
//! with `Error::Budget` instead of running away. Callers that can produce a
//! partial answer catch the error and mark the result truncated.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    /// Cap on elements of any generated semigroup closure.
    pub max_elements: usize,
    /// Cap on states of any constructed transformation semigroup or graph.
    pub max_states: usize,
    /// Cap on subset families (pointlike closures, congruence sets).
    pub max_subsets: usize,
    /// Generator-subset size for subsemigroup enumeration in division and
    /// type-I searches.
    pub gen_cap: usize,
    /// Largest |T| for which `divides` may certify a "no" answer.
    pub exhaustive_division_cap: usize,
    /// Largest |S| for which the exact theta search runs.
    pub theta_cap: usize,
    /// Largest |S| for which full congruence lattices are enumerated.
    pub congruence_cap: usize,
    /// Cap on simple-path vertices in the McCammond expansion.
    pub simple_path_cap: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_elements: 100_000,
            max_states: 100_000,
            max_subsets: 100_000,
            gen_cap: 3,
            exhaustive_division_cap: 12,
            theta_cap: 34,
            congruence_cap: 40,
            simple_path_cap: 50_000,
        }
    }
}

impl Budget {
    pub fn check_elements(&self, n: usize) -> Result<()> {
        if n > self.max_elements {
            Err(Error::Budget { what: "elements", limit: self.max_elements })
        } else {
            Ok(())
        }
    }

    pub fn check_states(&self, n: usize) -> Result<()> {
        if n > self.max_states {
            Err(Error::Budget { what: "states", limit: self.max_states })
        } else {
            Ok(())
        }
    }

    pub fn check_subsets(&self, n: usize) -> Result<()> {
        if n > self.max_subsets {
            Err(Error::Budget { what: "subsets", limit: self.max_subsets })
        } else {
            Ok(())
        }
    }

    pub fn check_simple_paths(&self, n: usize) -> Result<()> {
        if n > self.simple_path_cap {
            Err(Error::Budget { what: "simple paths", limit: self.simple_path_cap })
        } else {
            Ok(())
        }
    }
}
