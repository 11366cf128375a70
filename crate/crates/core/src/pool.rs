//! Example semigroups for tests and benchmarks: a named gallery of small
//! fixtures, group-mapping Rees matrix semigroups, a pool with known
//! complexity, and seeded random transformation semigroups.

use crate::budget::Budget;
use crate::builtins;
use crate::error::Result;
use crate::semigroup::FiniteSemigroup;
use crate::structure::rees_matrix_semigroup;
use crate::transformation::{generate_ts, Pmap, TransformationSemigroup};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Cyclic group of the given order with a zero adjoined.
pub fn group_with_zero(order: usize, budget: &Budget) -> Result<FiniteSemigroup> {
    let g = builtins::cyclic_group(order, budget)?.abstract_semigroup;
    let n = g.n + 1;
    let z = 0u32;
    let mut table = vec![z; n * n];
    for x in 0..g.n {
        for y in 0..g.n {
            table[(x + 1) * n + (y + 1)] = (g.mul(x, y) + 1) as u32;
        }
    }
    FiniteSemigroup::from_table(n, table)
}

/// Clifford union of Z_4 over Z_2 along the parity morphism.
pub fn clifford_z4_over_z2() -> Result<FiniteSemigroup> {
    // ids 0..3: h^i in Z_4; ids 4..5: a^j in Z_2; mixed products drop to Z_2
    let n = 6;
    let mut table = vec![0u32; n * n];
    let z4 = |i: usize, j: usize| ((i + j) % 4) as u32;
    let z2 = |i: usize, j: usize| (4 + (i + j) % 2) as u32;
    for i in 0..4 {
        for j in 0..4 {
            table[i * n + j] = z4(i, j);
        }
    }
    for i in 0..2 {
        for j in 0..2 {
            table[(4 + i) * n + (4 + j)] = z2(i, j);
        }
    }
    for i in 0..4 {
        for j in 0..2 {
            table[i * n + (4 + j)] = z2(i % 2, j);
            table[(4 + j) * n + i] = z2(j, i % 2);
        }
    }
    FiniteSemigroup::from_table(n, table)
}

/// Small gallery keyed by name. Every entry is cheap to build.
pub fn named_pool(budget: &Budget) -> Result<Vec<(String, FiniteSemigroup)>> {
    let mut out: Vec<(String, FiniteSemigroup)> = Vec::new();
    for name in [
        "Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Sym3", "flipflop", "constants2", "constants3",
        "chain2", "chain3", "chain4", "T2", "T3", "SIS2", "SIS3",
    ] {
        out.push((name.to_string(), builtins::standard_ts(name, budget)?.abstract_semigroup));
    }
    let lz2 = builtins::standard_ts("constants2", budget)?.abstract_semigroup.opposite();
    out.push(("LZ2".into(), lz2));
    let trivial = builtins::cyclic_group(1, budget)?.abstract_semigroup;
    let rb = rees_matrix_semigroup(&trivial, 2, 3, &[vec![e(); 2], vec![e(); 2], vec![e(); 2]])?;
    out.push(("RB23".into(), rb));
    out.push(("Z2zero".into(), group_with_zero(2, budget)?));
    out.push(("CliffordZ4Z2".into(), clifford_z4_over_z2()?));
    Ok(out)
}

fn e() -> Option<usize> {
    Some(0)
}

/// Group-mapping fixtures built as Rees matrix semigroups, at least ten,
/// Brandt semigroups included. Each is verified group mapping in tests.
pub fn gm_pool(budget: &Budget) -> Result<Vec<(String, FiniteSemigroup)>> {
    let z2 = builtins::cyclic_group(2, budget)?.abstract_semigroup;
    let z3 = builtins::cyclic_group(3, budget)?.abstract_semigroup;
    let z4 = builtins::cyclic_group(4, budget)?.abstract_semigroup;
    let sym3 = builtins::symmetric_group(3, budget)?.abstract_semigroup;
    let mut out: Vec<(String, FiniteSemigroup)> = Vec::new();

    let brandt2 = |g: &FiniteSemigroup| -> Result<FiniteSemigroup> {
        rees_matrix_semigroup(g, 2, 2, &[vec![e(), None], vec![None, e()]])
    };
    out.push(("BrandtZ2_2".into(), brandt2(&z2)?));
    out.push(("BrandtZ3_2".into(), brandt2(&z3)?));
    out.push(("BrandtZ4_2".into(), brandt2(&z4)?));
    out.push(("BrandtSym3_2".into(), brandt2(&sym3)?));
    out.push((
        "BrandtZ2_3".into(),
        rees_matrix_semigroup(
            &z2,
            3,
            3,
            &[vec![e(), None, None], vec![None, e(), None], vec![None, None, e()]],
        )?,
    ));
    // triangular zero pattern, still row and column separated
    out.push((
        "TriangZ2".into(),
        rees_matrix_semigroup(&z2, 2, 2, &[vec![e(), e()], vec![None, e()]])?,
    ));
    out.push((
        "TriangZ3".into(),
        rees_matrix_semigroup(&z3, 2, 2, &[vec![e(), e()], vec![None, e()]])?,
    ));
    // completely simple, matrix entries separate rows and columns by group value
    out.push((
        "SimpleZ2".into(),
        rees_matrix_semigroup(&z2, 2, 2, &[vec![e(), e()], vec![e(), Some(1)]])?,
    ));
    out.push((
        "SimpleZ3".into(),
        rees_matrix_semigroup(&z3, 2, 2, &[vec![e(), e()], vec![e(), Some(1)]])?,
    ));
    out.push((
        "SimpleSym3".into(),
        rees_matrix_semigroup(&sym3, 2, 2, &[vec![e(), e()], vec![e(), Some(1)]])?,
    ));
    // wide and tall zero patterns
    out.push((
        "WideZ2".into(),
        rees_matrix_semigroup(
            &z2,
            3,
            2,
            &[vec![e(), None, e()], vec![None, e(), e()]],
        )?,
    ));
    out.push((
        "TallZ2".into(),
        rees_matrix_semigroup(
            &z2,
            2,
            3,
            &[vec![e(), None], vec![None, e()], vec![e(), e()]],
        )?,
    ));
    out.push(("Z2zero".into(), group_with_zero(2, budget)?));
    Ok(out)
}

/// Semigroups whose exact complexity is known independently of the engine.
pub fn known_complexity_pool(budget: &Budget) -> Result<Vec<(String, FiniteSemigroup, usize)>> {
    let mut out: Vec<(String, FiniteSemigroup, usize)> = Vec::new();
    let ts = |name: &str| -> Result<FiniteSemigroup> {
        Ok(builtins::standard_ts(name, budget)?.abstract_semigroup)
    };
    // aperiodic: complexity zero
    for name in ["Z1", "flipflop", "constants3", "chain3"] {
        out.push((name.into(), ts(name)?, 0));
    }
    // groups and inverse semigroups: complexity one
    for name in ["Z2", "Z3", "Z6", "Sym3", "SIS2", "SIS3"] {
        out.push((name.into(), ts(name)?, 1));
    }
    out.push(("Z2zero".into(), group_with_zero(2, budget)?, 1));
    out.push(("CliffordZ4Z2".into(), clifford_z4_over_z2()?, 1));
    let z2 = builtins::cyclic_group(2, budget)?.abstract_semigroup;
    let ff = ts("flipflop")?;
    out.push(("Z2xFF".into(), z2.direct_product(&ff), 1));
    // full transformation monoids: complexity n - 1
    out.push(("T2".into(), ts("T2")?, 1));
    out.push(("T3".into(), ts("T3")?, 2));
    Ok(out)
}

/// Deterministic pool of transformation semigroups generated by random
/// total maps. Entries exceeding the budget are skipped.
pub fn random_ts_pool(
    states: usize,
    gens: usize,
    count: usize,
    seed: u64,
    budget: &Budget,
) -> Vec<TransformationSemigroup> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count && attempts < count * 20 {
        attempts += 1;
        let maps: Vec<Pmap> = (0..gens)
            .map(|_| Pmap((0..states).map(|_| rng.gen_range(0..states) as u32).collect()))
            .collect();
        if let Ok(ts) = generate_ts(states, &maps, budget) {
            out.push(ts);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify;
    use crate::green::is_aperiodic;
    use crate::structure::classify_transitivity;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn named_pool_builds() {
        let pool = named_pool(&b()).unwrap();
        assert!(pool.len() >= 20);
        let get = |n: &str| pool.iter().find(|(name, _)| name == n).map(|(_, s)| s).unwrap();
        assert_eq!(get("T3").n, 27);
        assert_eq!(get("RB23").n, 6);
        assert!(classify(get("CliffordZ4Z2")).is_inverse);
        assert!(classify(get("Z2zero")).is_inverse);
        assert!(!classify(get("RB23")).is_inverse);
    }

    #[test]
    fn gm_pool_is_group_mapping() {
        let pool = gm_pool(&b()).unwrap();
        assert!(pool.len() >= 10);
        for (name, s) in &pool {
            let tr = classify_transitivity(s);
            assert!(tr.is_gm, "{name} must be group mapping");
            assert!(!is_aperiodic(s), "{name} must carry a nontrivial group");
        }
    }

    #[test]
    fn known_pool_aperiodicity_matches_zero_complexity() {
        for (name, s, c) in known_complexity_pool(&b()).unwrap() {
            assert_eq!(c == 0, is_aperiodic(&s), "{name}");
        }
    }

    #[test]
    fn random_pool_is_deterministic() {
        let a = random_ts_pool(4, 2, 6, 11, &b());
        let c = random_ts_pool(4, 2, 6, 11, &b());
        assert_eq!(a.len(), 6);
        for (x, y) in a.iter().zip(&c) {
            assert_eq!(x.elements, y.elements);
        }
        let d = random_ts_pool(4, 2, 6, 12, &b());
        assert!(a.iter().zip(&d).any(|(x, y)| x.elements != y.elements));
    }

    #[test]
    fn clifford_is_completely_regular_union_of_groups() {
        let s = clifford_z4_over_z2().unwrap();
        let c = classify(&s);
        assert!(c.is_completely_regular && c.is_inverse && !c.is_group);
        assert_eq!(s.idempotents().len(), 2);
    }
}
