//! Aperiodic pointlikes by Henckell's closure: grow the singletons under
//! set products and the eventual cycle operator, keep the result downward
//! closed, and report the maximal sets. A subset is pointlike exactly when
//! it lies inside some reported set.

use crate::budget::Budget;
use crate::error::Result;
use crate::green::GreenData;
use crate::semigroup::FiniteSemigroup;
use std::collections::BTreeSet;

fn set_product(s: &FiniteSemigroup, a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = a.iter().flat_map(|&x| b.iter().map(move |&y| s.mul(x, y))).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// The eventual cycle of a subset: with W the idempotent power of Z under
/// set product, returns W(Z u Z^2 u ... u W).
fn eventual_cycle(s: &FiniteSemigroup, z: &[usize]) -> Vec<usize> {
    // walk powers until they repeat, collecting the union along the way
    let mut powers: Vec<Vec<usize>> = vec![z.to_vec()];
    let mut union: Vec<usize> = z.to_vec();
    let idempotent = loop {
        let last = powers.last().expect("nonempty");
        if set_product(s, last, last) == *last {
            break last.clone();
        }
        let next = set_product(s, last, z);
        union.extend(next.iter().copied());
        union.sort_unstable();
        union.dedup();
        if let Some(pos) = powers.iter().position(|p| *p == next) {
            // entered a cycle without an idempotent member yet: the
            // idempotent power is the product of the whole cycle repeated
            let cycle = &powers[pos..];
            let mut w = cycle[0].clone();
            loop {
                let mut again = w.clone();
                for c in cycle.iter().skip(1) {
                    again = set_product(s, &again, c);
                }
                again = set_product(s, &again, &w);
                if again == w {
                    break;
                }
                w = set_product(s, &w, &again);
            }
            break w;
        }
        powers.push(next);
    };
    set_product(s, &idempotent, &union)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pointlikes {
    /// Maximal pointlike sets, each sorted, ordered lexicographically.
    pub maximal: Vec<Vec<usize>>,
}

impl Pointlikes {
    pub fn is_pointlike(&self, subset: &[usize]) -> bool {
        let mut q = subset.to_vec();
        q.sort_unstable();
        q.dedup();
        self.maximal.iter().any(|m| q.iter().all(|x| m.binary_search(x).is_ok()))
    }
}

/// Henckell closure of the singletons under products and eventual cycles.
/// The family is kept downward closed implicitly: operators are applied to
/// every subset of every member, via explicit subset enumeration.
pub fn aperiodic_pointlikes(s: &FiniteSemigroup, budget: &Budget) -> Result<Pointlikes> {
    let mut family: BTreeSet<Vec<usize>> = (0..s.n).map(|x| vec![x]).collect();
    let mut queue: Vec<Vec<usize>> = family.iter().cloned().collect();
    while let Some(z) = queue.pop() {
        budget.check_subsets(family.len())?;
        // subsets of members are pointlike; enumerate the fresh ones so
        // the operators see them too
        let mut derived: Vec<Vec<usize>> = Vec::new();
        if z.len() > 1 && z.len() <= 20 {
            for code in 1..(1u64 << z.len()) {
                let sub: Vec<usize> = z
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| code >> i & 1 == 1)
                    .map(|(_, &x)| x)
                    .collect();
                derived.push(sub);
            }
        }
        derived.push(eventual_cycle(s, &z));
        for other in family.clone() {
            derived.push(set_product(s, &z, &other));
            derived.push(set_product(s, &other, &z));
        }
        for d in derived {
            if !d.is_empty() && !family.contains(&d) {
                budget.check_subsets(family.len() + 1)?;
                family.insert(d.clone());
                queue.push(d);
            }
        }
    }
    let maximal: Vec<Vec<usize>> = family
        .iter()
        .filter(|z| !family.iter().any(|m| m.len() > z.len() && z.iter().all(|x| m.contains(x))))
        .cloned()
        .collect();
    Ok(Pointlikes { maximal })
}

/// Largest maximal subgroup that is pointlike, as a member list.
pub fn max_pointlike_subgroup(g: &GreenData, pl: &Pointlikes) -> Option<Vec<usize>> {
    let mut best: Option<Vec<usize>> = None;
    for sub in g.max_subgroup.iter().flatten() {
        let members = &sub.0;
        if pl.is_pointlike(members) && best.as_ref().map_or(true, |b| members.len() > b.len()) {
            best = Some(members.clone());
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::green::{green, is_aperiodic};
    use crate::pool;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn group_pointlikes_are_the_cosets_of_everything() {
        let z2 = builtins::cyclic_group(2, &b()).unwrap().abstract_semigroup;
        let pl = aperiodic_pointlikes(&z2, &b()).unwrap();
        assert_eq!(pl.maximal, vec![vec![0, 1]], "the whole group is pointlike");
        assert!(pl.is_pointlike(&[0, 1]));

        let z6 = builtins::cyclic_group(6, &b()).unwrap().abstract_semigroup;
        let pl = aperiodic_pointlikes(&z6, &b()).unwrap();
        assert_eq!(pl.maximal.len(), 1);
        assert_eq!(pl.maximal[0].len(), 6);
    }

    #[test]
    fn aperiodic_pointlikes_are_singletons() {
        for name in ["flipflop", "constants3", "chain3"] {
            let s = builtins::standard_ts(name, &b()).unwrap().abstract_semigroup;
            assert!(is_aperiodic(&s));
            let pl = aperiodic_pointlikes(&s, &b()).unwrap();
            assert!(pl.maximal.iter().all(|m| m.len() == 1), "{name}");
        }
    }

    #[test]
    fn random_aperiodic_semigroups_have_singleton_pointlikes() {
        let mut checked = 0;
        for ts in pool::random_ts_pool(3, 2, 40, 2026, &b()) {
            let s = ts.abstract_semigroup;
            if s.n > 8 || !is_aperiodic(&s) {
                continue;
            }
            let pl = aperiodic_pointlikes(&s, &b()).unwrap();
            assert!(pl.maximal.iter().all(|m| m.len() == 1), "order {}", s.n);
            checked += 1;
        }
        assert!(checked >= 10, "pool must supply enough aperiodic samples, got {checked}");
    }

    #[test]
    fn closure_is_a_fixed_point() {
        let sis2 = builtins::symmetric_inverse(2, &b()).unwrap().abstract_semigroup;
        let pl = aperiodic_pointlikes(&sis2, &b()).unwrap();
        // every product and cycle of maximal sets stays inside the family
        for a in &pl.maximal {
            for c in &pl.maximal {
                assert!(pl.is_pointlike(&set_product(&sis2, a, c)));
            }
            assert!(pl.is_pointlike(&eventual_cycle(&sis2, a)));
        }
    }

    #[test]
    fn subgroups_are_pointlike() {
        let sis2 = builtins::symmetric_inverse(2, &b()).unwrap().abstract_semigroup;
        let g = green(&sis2);
        let pl = aperiodic_pointlikes(&sis2, &b()).unwrap();
        let sub = max_pointlike_subgroup(&g, &pl).unwrap();
        assert_eq!(sub.len(), 2, "the rank two permutations form the largest subgroup");
    }
}
