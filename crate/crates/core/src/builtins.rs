//! Named transformation semigroups: full transformation monoids, symmetric
//! inverse monoids, symmetric and cyclic groups, the flip-flop, right-zero
//! constant semigroups, and chain semilattices.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::transformation::{generate_ts, Pmap, TransformationSemigroup, UNDEF};

fn cycle(n: usize) -> Pmap {
    Pmap((0..n as u32).map(|i| (i + 1) % n as u32).collect())
}

fn swap01(n: usize) -> Pmap {
    let mut v: Vec<u32> = (0..n as u32).collect();
    v.swap(0, 1);
    Pmap(v)
}

fn collapse10(n: usize) -> Pmap {
    let mut v: Vec<u32> = (0..n as u32).collect();
    v[1] = 0;
    Pmap(v)
}

/// Identity on the first `k` states, undefined elsewhere.
fn partial_identity(n: usize, k: usize) -> Pmap {
    Pmap((0..n as u32).map(|i| if (i as usize) < k { i } else { UNDEF }).collect())
}

/// Full transformation monoid on n states.
pub fn full_transformations(n: usize, budget: &Budget) -> Result<TransformationSemigroup> {
    let gens = if n < 2 {
        vec![Pmap::identity(n)]
    } else {
        vec![cycle(n), swap01(n), collapse10(n)]
    };
    generate_ts(n, &gens, budget)
}

/// Symmetric inverse monoid on n states: all partial injections.
pub fn symmetric_inverse(n: usize, budget: &Budget) -> Result<TransformationSemigroup> {
    let gens = if n < 2 {
        vec![Pmap::identity(n), Pmap::empty(n)]
    } else {
        vec![cycle(n), swap01(n), partial_identity(n, n - 1)]
    };
    generate_ts(n, &gens, budget)
}

/// Symmetric group on n states.
pub fn symmetric_group(n: usize, budget: &Budget) -> Result<TransformationSemigroup> {
    let gens = match n {
        0 | 1 => vec![Pmap::identity(n)],
        2 => vec![swap01(2)],
        _ => vec![cycle(n), swap01(n)],
    };
    generate_ts(n, &gens, budget)
}

/// Cyclic group of order n, acting on n states.
pub fn cyclic_group(n: usize, budget: &Budget) -> Result<TransformationSemigroup> {
    generate_ts(n, &[cycle(n)], budget)
}

/// Identity plus both constants on two states.
pub fn flip_flop(budget: &Budget) -> Result<TransformationSemigroup> {
    generate_ts(2, &[Pmap::identity(2), Pmap::constant(2, 0), Pmap::constant(2, 1)], budget)
}

/// The n constant maps on n states: a right-zero semigroup.
pub fn constants(n: usize, budget: &Budget) -> Result<TransformationSemigroup> {
    let gens: Vec<Pmap> = (0..n).map(|i| Pmap::constant(n, i)).collect();
    generate_ts(n, &gens, budget)
}

/// Chain semilattice of n nested partial identities.
pub fn chain_semilattice(n: usize, budget: &Budget) -> Result<TransformationSemigroup> {
    assert!(n >= 1);
    let states = if n == 1 { 1 } else { n - 1 };
    let gens: Vec<Pmap> = (0..n).map(|k| partial_identity(states, n - 1 - k)).collect();
    generate_ts(states, &gens, budget)
}

/// Resolves names like `T3`, `SIS2`, `Sym4`, `Z6`, `constants3`, `chain4`,
/// `flipflop`.
pub fn standard_ts(name: &str, budget: &Budget) -> Result<TransformationSemigroup> {
    if name == "flipflop" {
        return flip_flop(budget);
    }
    let split = name.find(|c: char| c.is_ascii_digit()).unwrap_or(name.len());
    let (prefix, suffix) = name.split_at(split);
    let n: usize = suffix
        .parse()
        .map_err(|_| Error::UnknownBuiltin { name: name.to_string() })?;
    if n == 0 || n > 20 {
        return Err(Error::UnknownBuiltin { name: name.to_string() });
    }
    match prefix {
        "T" => full_transformations(n, budget),
        "SIS" => symmetric_inverse(n, budget),
        "Sym" => symmetric_group(n, budget),
        "Z" => cyclic_group(n, budget),
        "constants" => constants(n, budget),
        "chain" => chain_semilattice(n, budget),
        _ => Err(Error::UnknownBuiltin { name: name.to_string() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify;

    #[test]
    fn builtin_orders() {
        let b = Budget::default();
        assert_eq!(full_transformations(3, &b).unwrap().abstract_semigroup.n, 27);
        assert_eq!(symmetric_inverse(2, &b).unwrap().abstract_semigroup.n, 7);
        assert_eq!(symmetric_inverse(3, &b).unwrap().abstract_semigroup.n, 34);
        assert_eq!(symmetric_group(4, &b).unwrap().abstract_semigroup.n, 24);
        assert_eq!(cyclic_group(6, &b).unwrap().abstract_semigroup.n, 6);
        assert_eq!(flip_flop(&b).unwrap().abstract_semigroup.n, 3);
        assert_eq!(constants(4, &b).unwrap().abstract_semigroup.n, 4);
        assert_eq!(chain_semilattice(4, &b).unwrap().abstract_semigroup.n, 4);
    }

    #[test]
    fn builtin_classifications() {
        let b = Budget::default();
        assert!(classify(&symmetric_inverse(3, &b).unwrap().abstract_semigroup).is_inverse);
        assert!(classify(&flip_flop(&b).unwrap().abstract_semigroup).is_prime);
        let chain = classify(&chain_semilattice(3, &b).unwrap().abstract_semigroup);
        assert!(chain.is_semilattice && chain.is_aperiodic);
        let consts = classify(&constants(3, &b).unwrap().abstract_semigroup);
        assert!(consts.is_band && !consts.is_commutative && !consts.is_monoid);
    }

    #[test]
    fn name_resolution() {
        let b = Budget::default();
        assert_eq!(standard_ts("T2", &b).unwrap().abstract_semigroup.n, 4);
        assert_eq!(standard_ts("flipflop", &b).unwrap().abstract_semigroup.n, 3);
        assert!(standard_ts("Q5", &b).is_err());
        assert!(standard_ts("T", &b).is_err());
        assert!(standard_ts("T0", &b).is_err());
    }
}
