//! Wreath and direct products of transformation semigroups, and a division
//! oracle with explicit witnesses.
//!
//! Partial actions are totalized with a sink state first; totalization
//! keeps the abstract semigroup and makes the full wreath action faithful
//! and closed.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::green::is_aperiodic;
use crate::iso::are_isomorphic;
use crate::semigroup::FiniteSemigroup;
use crate::transformation::{Pmap, TransformationSemigroup, UNDEF};
use std::collections::HashMap;

/// Adjoins a sink state when any element acts partially. The abstract
/// semigroup is unchanged.
pub fn totalize(ts: &TransformationSemigroup) -> TransformationSemigroup {
    if ts.elements.iter().all(|p| p.is_total()) {
        return ts.clone();
    }
    let q = ts.states;
    let sink = q as u32;
    let elements: Vec<Pmap> = ts
        .elements
        .iter()
        .map(|p| {
            let mut v: Vec<u32> = p.0.iter().map(|&x| if x == UNDEF { sink } else { x }).collect();
            v.push(sink);
            Pmap(v)
        })
        .collect();
    TransformationSemigroup {
        states: q + 1,
        elements,
        generator_indices: ts.generator_indices.clone(),
        abstract_semigroup: ts.abstract_semigroup.clone(),
    }
}

fn assemble(states: usize, elements: Vec<Pmap>) -> TransformationSemigroup {
    let n = elements.len();
    let index: HashMap<&Pmap, usize> = elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut table = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            let prod = elements[i].compose(&elements[j]);
            table[i * n + j] = *index.get(&prod).expect("element set is closed") as u32;
        }
    }
    TransformationSemigroup {
        states,
        elements,
        generator_indices: Vec::new(),
        abstract_semigroup: FiniteSemigroup::from_table_unchecked(n, table),
    }
}

/// Full wreath product X wr Y acting on Q_X x Q_Y: every pair of a state
/// function f: Q_Y -> S_X and an element t of S_Y. Budget error when the
/// element count would exceed the cap.
pub fn wreath(
    x: &TransformationSemigroup,
    y: &TransformationSemigroup,
    budget: &Budget,
) -> Result<TransformationSemigroup> {
    let x = totalize(x);
    let y = totalize(y);
    let (nx, ny) = (x.abstract_semigroup.n, y.abstract_semigroup.n);
    let size = (nx as u128)
        .checked_pow(y.states as u32)
        .and_then(|p| p.checked_mul(ny as u128))
        .ok_or(Error::Budget { what: "wreath element count", limit: budget.max_elements })?;
    if size > budget.max_elements as u128 {
        return Err(Error::Budget { what: "wreath element count", limit: budget.max_elements });
    }
    // the multiplication table is quadratic in the element count
    if size * size > 250_000_000 {
        return Err(Error::Budget { what: "wreath table size", limit: 15_000 });
    }
    let states = x.states * y.states;
    let pair_state = |p: usize, q: usize| (p * y.states + q) as u32;
    let mut elements: Vec<Pmap> = Vec::with_capacity(size as usize);
    let mut f = vec![0usize; y.states];
    loop {
        for t in 0..ny {
            let mut v = vec![UNDEF; states];
            for q in 0..y.states {
                let qt = y.elements[t].0[q];
                let xf = &x.elements[f[q]];
                for p in 0..x.states {
                    let pf = xf.0[p];
                    if pf != UNDEF && qt != UNDEF {
                        v[(pair_state(p, q)) as usize] = pair_state(pf as usize, qt as usize);
                    }
                }
            }
            elements.push(Pmap(v));
        }
        // odometer over f
        let mut k = 0;
        while k < y.states {
            f[k] += 1;
            if f[k] < nx {
                break;
            }
            f[k] = 0;
            k += 1;
        }
        if k == y.states {
            break;
        }
    }
    elements.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    elements.dedup();
    Ok(assemble(states, elements))
}

/// Direct product acting on the disjoint union of the state sets; the
/// abstract semigroup is the direct product of the abstract semigroups.
pub fn direct_product_ts(
    x: &TransformationSemigroup,
    y: &TransformationSemigroup,
    budget: &Budget,
) -> Result<TransformationSemigroup> {
    let (nx, ny) = (x.abstract_semigroup.n, y.abstract_semigroup.n);
    budget.check_elements(nx.saturating_mul(ny))?;
    let states = x.states + y.states;
    let mut elements = Vec::with_capacity(nx * ny);
    for a in 0..nx {
        for bb in 0..ny {
            let mut v = vec![UNDEF; states];
            for p in 0..x.states {
                let pa = x.elements[a].0[p];
                if pa != UNDEF {
                    v[p] = pa;
                }
            }
            for q in 0..y.states {
                let qb = y.elements[bb].0[q];
                if qb != UNDEF {
                    v[x.states + q] = qb + x.states as u32;
                }
            }
            elements.push(Pmap(v));
        }
    }
    Ok(assemble(states, elements))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Division {
    /// A closed subset of T (by element id) mapping onto S.
    Divides { sub: Vec<usize>, map: Vec<usize> },
    No { reason: String },
    Unknown { reason: String },
}

impl Division {
    pub fn holds(&self) -> Option<bool> {
        match self {
            Division::Divides { .. } => Some(true),
            Division::No { .. } => Some(false),
            Division::Unknown { .. } => None,
        }
    }
}

/// Checks a division witness: `sub` must be closed in T and `map` a
/// surjective morphism from the subsemigroup onto S.
pub fn verify_division(
    s: &FiniteSemigroup,
    t: &FiniteSemigroup,
    sub: &[usize],
    map: &[usize],
) -> Result<()> {
    if sub.len() != map.len() || sub.is_empty() {
        return Err(Error::Invalid("witness shape mismatch".into()));
    }
    let mut pos: HashMap<usize, usize> = HashMap::new();
    for (i, &u) in sub.iter().enumerate() {
        if u >= t.n || pos.insert(u, i).is_some() {
            return Err(Error::Invalid("witness subset is not a set of T-elements".into()));
        }
    }
    for i in 0..sub.len() {
        for j in 0..sub.len() {
            let prod = t.mul(sub[i], sub[j]);
            let Some(&k) = pos.get(&prod) else {
                return Err(Error::Invalid("witness subset is not closed".into()));
            };
            if map[k] != s.mul(map[i], map[j]) {
                return Err(Error::NotAMorphism { x: i, y: j });
            }
        }
    }
    let mut hit = vec![false; s.n];
    for &v in map {
        if v >= s.n {
            return Err(Error::Invalid("witness map leaves S".into()));
        }
        hit[v] = true;
    }
    if hit.iter().all(|&h| h) {
        Ok(())
    } else {
        Err(Error::Invalid("witness map is not surjective".into()))
    }
}

/// Searches for a surjective morphism from U onto S by assigning generator
/// images and propagating products.
fn surjection_onto(u: &FiniteSemigroup, s: &FiniteSemigroup) -> Option<Vec<usize>> {
    if u.n < s.n {
        return None;
    }
    let gens = greedy_generators(u);
    let mut phi = vec![usize::MAX; u.n];

    fn extend(u: &FiniteSemigroup, s: &FiniteSemigroup, phi: &mut [usize], x: usize, y: usize) -> Option<Vec<usize>> {
        let mut added = Vec::new();
        phi[x] = y;
        added.push(x);
        let mut head = 0;
        while head < added.len() {
            let a = added[head];
            head += 1;
            let mapped: Vec<usize> = (0..u.n).filter(|&z| phi[z] != usize::MAX).collect();
            for &bq in &mapped {
                for (p, q) in [
                    (u.mul(a, bq), s.mul(phi[a], phi[bq])),
                    (u.mul(bq, a), s.mul(phi[bq], phi[a])),
                ] {
                    if phi[p] == usize::MAX {
                        phi[p] = q;
                        added.push(p);
                    } else if phi[p] != q {
                        for &z in &added {
                            phi[z] = usize::MAX;
                        }
                        return None;
                    }
                }
            }
        }
        Some(added)
    }

    fn dfs(u: &FiniteSemigroup, s: &FiniteSemigroup, gens: &[usize], depth: usize, phi: &mut [usize]) -> bool {
        if depth == gens.len() {
            let mut hit = vec![false; s.n];
            for &v in phi.iter() {
                if v != usize::MAX {
                    hit[v] = true;
                }
            }
            return hit.iter().all(|&h| h);
        }
        let g = gens[depth];
        if phi[g] != usize::MAX {
            return dfs(u, s, gens, depth + 1, phi);
        }
        for cand in 0..s.n {
            if let Some(added) = extend(u, s, phi, g, cand) {
                if dfs(u, s, gens, depth + 1, phi) {
                    return true;
                }
                for &z in &added {
                    phi[z] = usize::MAX;
                }
            }
        }
        false
    }

    if dfs(u, s, &gens, 0, &mut phi) {
        Some(phi)
    } else {
        None
    }
}

fn greedy_generators(s: &FiniteSemigroup) -> Vec<usize> {
    let mut gens: Vec<usize> = Vec::new();
    let mut closed: Vec<usize> = Vec::new();
    loop {
        match (0..s.n).find(|x| !closed.contains(x)) {
            None => return gens,
            Some(x) => {
                gens.push(x);
                closed = s.closure(&gens);
            }
        }
    }
}

/// Decides whether S divides T where feasible. Exhaustive negative answers
/// only below the exhaustive cap; otherwise a bounded witness search that
/// may return Unknown.
pub fn divides(s: &FiniteSemigroup, t: &FiniteSemigroup, budget: &Budget) -> Division {
    if s.n == 1 {
        let e = (0..t.n).find(|&x| t.is_idempotent(x)).expect("finite semigroups have idempotents");
        return Division::Divides { sub: vec![e], map: vec![0] };
    }
    if s.n > t.n {
        return Division::No { reason: "the divisor is larger".into() };
    }
    if !is_aperiodic(s) && is_aperiodic(t) {
        return Division::No {
            reason: "a nontrivial group cannot divide an aperiodic semigroup".into(),
        };
    }
    if let Some(m) = are_isomorphic(s, t) {
        let mut inv = vec![0usize; t.n];
        for (x, &y) in m.iter().enumerate() {
            inv[y] = x;
        }
        return Division::Divides { sub: (0..t.n).collect(), map: inv };
    }
    if t.n <= budget.exhaustive_division_cap {
        // all subsemigroups, by subset closure
        let mut subs: Vec<Vec<usize>> = Vec::new();
        let mut seen: std::collections::HashSet<Vec<usize>> = std::collections::HashSet::new();
        for mask in 1u64..(1 << t.n) {
            let seed: Vec<usize> = (0..t.n).filter(|&i| mask >> i & 1 == 1).collect();
            let closed = t.closure(&seed);
            if seen.insert(closed.clone()) {
                subs.push(closed);
            }
        }
        subs.sort_by_key(|u| (u.len(), u.clone()));
        for members in &subs {
            if members.len() < s.n {
                continue;
            }
            let (u, _) = t.sub_semigroup(members);
            if let Some(phi) = surjection_onto(&u, s) {
                return Division::Divides { sub: members.clone(), map: phi };
            }
        }
        return Division::No { reason: "no subsemigroup maps onto S (exhaustive)".into() };
    }
    // bounded witness search: subsets of T no larger than a minimal
    // generating set of S
    let m = greedy_generators(s).len();
    let mut count_cap = budget.max_subsets as u128;
    let mut combos: u128 = 1;
    for i in 0..m {
        combos = combos.saturating_mul((t.n - i) as u128) / (i as u128 + 1);
    }
    if combos > count_cap {
        return Division::Unknown {
            reason: format!("witness search space {combos} exceeds the subset budget"),
        };
    }
    let mut idx: Vec<usize> = (0..m).collect();
    loop {
        let closed = t.closure(&idx);
        if closed.len() >= s.n && closed.len() <= budget.max_elements {
            let (u, _) = t.sub_semigroup(&closed);
            if let Some(phi) = surjection_onto(&u, s) {
                return Division::Divides { sub: closed, map: phi };
            }
        }
        count_cap = count_cap.saturating_sub(1);
        if count_cap == 0 {
            return Division::Unknown { reason: "subset budget exhausted".into() };
        }
        // next combination in lexicographic order
        let mut i = m;
        loop {
            if i == 0 {
                return Division::Unknown {
                    reason: "no witness among small generated subsemigroups".into(),
                };
            }
            i -= 1;
            if idx[i] + (m - i) < t.n {
                idx[i] += 1;
                for j in i + 1..m {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::classify::classify;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn totalize_preserves_abstract_semigroup() {
        let sis2 = builtins::symmetric_inverse(2, &b()).unwrap();
        let tot = totalize(&sis2);
        assert_eq!(tot.states, 3);
        assert!(tot.elements.iter().all(|p| p.is_total()));
        assert_eq!(tot.abstract_semigroup.table, sis2.abstract_semigroup.table);
    }

    #[test]
    fn direct_product_matches_abstract_product() {
        let z2 = builtins::cyclic_group(2, &b()).unwrap();
        let z3 = builtins::cyclic_group(3, &b()).unwrap();
        let prod = direct_product_ts(&z2, &z3, &b()).unwrap();
        assert_eq!(prod.abstract_semigroup.n, 6);
        let abs = z2.abstract_semigroup.direct_product(&z3.abstract_semigroup);
        assert!(are_isomorphic(&prod.abstract_semigroup, &abs).is_some());
        let c = classify(&prod.abstract_semigroup);
        assert!(c.is_group && c.is_commutative);
    }

    #[test]
    fn klein_four_from_generators() {
        let z2 = builtins::cyclic_group(2, &b()).unwrap();
        let prod = direct_product_ts(&z2, &z2, &b()).unwrap();
        assert_eq!(prod.abstract_semigroup.n, 4);
        assert!(classify(&prod.abstract_semigroup).is_group);
    }

    #[test]
    fn wreath_of_small_groups() {
        let z2 = builtins::cyclic_group(2, &b()).unwrap();
        let w = wreath(&z2, &z2, &b()).unwrap();
        // 2^2 * 2 pairs, faithful on 4 states
        assert_eq!(w.abstract_semigroup.n, 8);
        assert_eq!(w.states, 4);
        let c = classify(&w.abstract_semigroup);
        assert!(c.is_group && !c.is_commutative, "dihedral of order eight");
    }

    #[test]
    fn wreath_budget_cap() {
        let t3 = builtins::full_transformations(3, &b()).unwrap();
        let err = wreath(&t3, &t3, &b()).unwrap_err();
        assert!(err.is_budget());
    }

    #[test]
    fn flip_flop_divides_itself_and_not_smaller_groups() {
        let ff = builtins::flip_flop(&b()).unwrap().abstract_semigroup;
        match divides(&ff, &ff, &b()) {
            Division::Divides { sub, map } => verify_division(&ff, &ff, &sub, &map).unwrap(),
            other => panic!("expected reflexive division, got {other:?}"),
        }
        let z2 = builtins::cyclic_group(2, &b()).unwrap().abstract_semigroup;
        assert!(matches!(divides(&z2, &ff, &b()), Division::No { .. }));
    }

    #[test]
    fn two_element_semilattice_divides_flip_flop() {
        let ff = builtins::flip_flop(&b()).unwrap().abstract_semigroup;
        let sl2 = builtins::chain_semilattice(2, &b()).unwrap().abstract_semigroup;
        match divides(&sl2, &ff, &b()) {
            Division::Divides { sub, map } => verify_division(&sl2, &ff, &sub, &map).unwrap(),
            other => panic!("expected division, got {other:?}"),
        }
    }

    #[test]
    fn group_divides_wreath_coordinate() {
        let z2 = builtins::cyclic_group(2, &b()).unwrap();
        let w = wreath(&z2, &z2, &b()).unwrap();
        let z2a = z2.abstract_semigroup;
        match divides(&z2a, &w.abstract_semigroup, &b()) {
            Division::Divides { sub, map } => {
                verify_division(&z2a, &w.abstract_semigroup, &sub, &map).unwrap()
            }
            other => panic!("expected division, got {other:?}"),
        }
    }

    #[test]
    fn division_is_transitive_on_witnesses() {
        let b = b();
        let sl2 = builtins::chain_semilattice(2, &b).unwrap().abstract_semigroup;
        let ff = builtins::flip_flop(&b).unwrap().abstract_semigroup;
        let t2 = builtins::full_transformations(2, &b).unwrap().abstract_semigroup;
        assert_eq!(divides(&sl2, &ff, &b).holds(), Some(true));
        assert_eq!(divides(&ff, &t2, &b).holds(), Some(true));
        assert_eq!(divides(&sl2, &t2, &b).holds(), Some(true));
    }
}
