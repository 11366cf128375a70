//! The theta invariant: the least number of L'-steps in a factorization of
//! S onto the trivial semigroup where every step is an aperiodic or an
//! L'-morphism.
//!
//! Aperiodic surmorphisms preserve complexity and an L'-step costs at most
//! one group level, so theta is an upper bound certificate.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::green::green;
use crate::iso::IsoMemo;
use crate::morphism::{
    all_congruences, classify_morphism, lprime_image, principal_congruence, quotient, rees_quotient,
    Congruence, MorphismClass,
};
use crate::semigroup::FiniteSemigroup;
use serde::Serialize;
use std::collections::VecDeque;

#[derive(Debug, Clone, Serialize)]
pub struct ThetaStep {
    pub cost: u8,
    pub from_size: usize,
    pub to_size: usize,
    #[serde(skip)]
    pub congruence: Congruence,
    #[serde(skip)]
    pub morphism: MorphismClass,
}

/// Exact theta by 0-1 shortest path over quotients up to isomorphism.
/// Moves are quotients by arbitrary congruences; an aperiodic projection
/// costs 0, an L'-projection costs 1, anything else is not a move.
pub fn theta_exact(s: &FiniteSemigroup, budget: &Budget) -> Result<(usize, Vec<ThetaStep>)> {
    if s.n > budget.theta_cap {
        return Err(Error::Budget { what: "theta order cap", limit: budget.theta_cap });
    }

    struct Node {
        sg: FiniteSemigroup,
        dist: usize,
        parent: Option<(usize, ThetaStep)>,
    }
    let mut arena: Vec<Node> = vec![Node { sg: s.clone(), dist: 0, parent: None }];
    let mut memo: IsoMemo<usize> = IsoMemo::new();
    memo.insert(s.clone(), 0);
    let mut deque: VecDeque<(usize, usize)> = VecDeque::new();
    deque.push_back((0, 0));

    while let Some((idx, d)) = deque.pop_front() {
        if d > arena[idx].dist {
            continue;
        }
        if arena[idx].sg.is_trivial() {
            let mut steps = Vec::new();
            let mut cur = idx;
            while let Some((p, step)) = arena[cur].parent.clone() {
                steps.push(step);
                cur = p;
            }
            steps.reverse();
            return Ok((d, steps));
        }
        let sg = arena[idx].sg.clone();
        let congs = all_congruences(&sg, budget)?;
        for cong in congs {
            if cong.is_diagonal() {
                continue;
            }
            let (q, proj) = quotient(&sg, &cong);
            let mc = classify_morphism(&sg, &q, &proj, None);
            let cost = if mc.aperiodic {
                0
            } else if mc.l_prime {
                1
            } else {
                continue;
            };
            let nd = d + cost;
            let step = ThetaStep {
                cost: cost as u8,
                from_size: sg.n,
                to_size: q.n,
                congruence: cong,
                morphism: mc,
            };
            match memo.get(&q) {
                Some(&existing) => {
                    if nd < arena[existing].dist {
                        arena[existing].dist = nd;
                        arena[existing].parent = Some((idx, step));
                        if cost == 0 {
                            deque.push_front((existing, nd));
                        } else {
                            deque.push_back((existing, nd));
                        }
                    }
                }
                None => {
                    let new_idx = arena.len();
                    arena.push(Node { sg: q.clone(), dist: nd, parent: Some((idx, step)) });
                    memo.insert(q, new_idx);
                    if cost == 0 {
                        deque.push_front((new_idx, nd));
                    } else {
                        deque.push_back((new_idx, nd));
                    }
                }
            }
        }
    }
    Err(Error::Invalid("no factorization onto the trivial semigroup".into()))
}

/// Largest ideal that is a union of J-classes with aperiodic down-sets.
/// Collapsing it is an aperiodic morphism.
fn hereditarily_aperiodic_ideal(s: &FiniteSemigroup) -> Vec<usize> {
    let g = green(s);
    let k = g.j_classes.len();
    let her: Vec<bool> = (0..k)
        .map(|j| (0..k).all(|lower| !g.j_leq[lower][j] || g.j_is_aperiodic(lower)))
        .collect();
    (0..s.n).filter(|&x| her[g.j_class[x]]).collect()
}

/// Shrinks S along aperiodic surmorphisms: Rees quotient by the
/// hereditarily aperiodic ideal, then a principal-congruence scan on small
/// semigroups. Complexity is unchanged. Returns the image, the composite
/// projection, and whether anything shrank.
pub fn aperiodic_shrink(
    s: &FiniteSemigroup,
    budget: &Budget,
) -> Result<(FiniteSemigroup, Vec<usize>, bool)> {
    let mut cur = s.clone();
    let mut proj: Vec<usize> = (0..s.n).collect();
    let mut changed = false;
    loop {
        let ideal = hereditarily_aperiodic_ideal(&cur);
        if ideal.len() >= 2 && ideal.len() < cur.n {
            let (q, p) = rees_quotient(&cur, &ideal)?;
            debug_assert!(classify_morphism(&cur, &q, &p, None).aperiodic);
            proj = proj.iter().map(|&x| p[x]).collect();
            cur = q;
            changed = true;
            continue;
        }
        if ideal.len() == cur.n && cur.n > 1 {
            // the whole semigroup is aperiodic
            let p = vec![0usize; cur.n];
            proj = proj.iter().map(|&x| p[x]).collect();
            cur = quotient(&cur, &Congruence::full(cur.n)).0;
            changed = true;
            continue;
        }
        if cur.n <= budget.congruence_cap {
            let mut best: Option<(usize, Congruence)> = None;
            for a in 0..cur.n {
                for b in (a + 1)..cur.n {
                    let cong = principal_congruence(&cur, a, b);
                    let m = cong.num_classes();
                    if m == cur.n {
                        continue;
                    }
                    let (q, p) = quotient(&cur, &cong);
                    if classify_morphism(&cur, &q, &p, None).aperiodic
                        && best.as_ref().map_or(true, |(bm, _)| m < *bm)
                    {
                        best = Some((m, cong));
                    }
                }
            }
            if let Some((_, cong)) = best {
                let (q, p) = quotient(&cur, &cong);
                proj = proj.iter().map(|&x| p[x]).collect();
                cur = q;
                changed = true;
                continue;
            }
        }
        return Ok((cur, proj, changed));
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GreedyStepKind {
    AperiodicShrink,
    LPrimeAction,
}

#[derive(Debug, Clone, Serialize)]
pub struct GreedyStep {
    pub kind: GreedyStepKind,
    pub cost: u8,
    pub from_size: usize,
    pub to_size: usize,
}

/// Greedy theta upper bound: alternate aperiodic shrinking with the action
/// on regular L-classes. Returns (count, steps, complete); incomplete means
/// the alternation stalled before reaching the trivial semigroup and the
/// count is not a bound.
pub fn theta_upper_greedy(
    s: &FiniteSemigroup,
    budget: &Budget,
) -> Result<(usize, Vec<GreedyStep>, bool)> {
    let mut cur = s.clone();
    let mut steps: Vec<GreedyStep> = Vec::new();
    let mut count = 0usize;
    loop {
        if cur.is_trivial() {
            return Ok((count, steps, true));
        }
        let (shrunk, _, changed) = aperiodic_shrink(&cur, budget)?;
        if changed {
            steps.push(GreedyStep {
                kind: GreedyStepKind::AperiodicShrink,
                cost: 0,
                from_size: cur.n,
                to_size: shrunk.n,
            });
            cur = shrunk;
            continue;
        }
        let (img, proj) = lprime_image(&cur, budget)?;
        let img = img.abstract_semigroup;
        if img.n < cur.n {
            let mc = classify_morphism(&cur, &img, &proj, None);
            let cost = if mc.aperiodic { 0u8 } else { 1u8 };
            debug_assert!(mc.aperiodic || mc.l_prime);
            steps.push(GreedyStep {
                kind: GreedyStepKind::LPrimeAction,
                cost,
                from_size: cur.n,
                to_size: img.n,
            });
            count += cost as usize;
            cur = img;
            continue;
        }
        return Ok((count, steps, false));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::green::is_aperiodic;
    use crate::semigroup::parse_semigroup;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn theta_of_aperiodic_is_zero() {
        let ff = parse_semigroup("3\n1 2 3\n2 2 3\n3 2 3\n").unwrap();
        let (t, steps) = theta_exact(&ff, &b()).unwrap();
        assert_eq!(t, 0);
        assert!(steps.iter().all(|s| s.cost == 0));
        let chain = builtins::chain_semilattice(3, &b()).unwrap().abstract_semigroup;
        assert_eq!(theta_exact(&chain, &b()).unwrap().0, 0);
    }

    #[test]
    fn theta_of_groups_is_one() {
        for n in [2usize, 3, 6] {
            let g = builtins::cyclic_group(n, &b()).unwrap().abstract_semigroup;
            let (t, steps) = theta_exact(&g, &b()).unwrap();
            assert_eq!(t, 1, "cyclic group of order {n}");
            assert_eq!(steps.iter().map(|s| s.cost as usize).sum::<usize>(), 1);
        }
    }

    #[test]
    fn theta_of_symmetric_inverse_two_is_one() {
        let sis2 = builtins::symmetric_inverse(2, &b()).unwrap().abstract_semigroup;
        let (t, steps) = theta_exact(&sis2, &b()).unwrap();
        assert_eq!(t, 1);
        // replay the certificate
        let mut cur = sis2;
        for step in &steps {
            assert_eq!(step.from_size, cur.n);
            let (q, proj) = quotient(&cur, &step.congruence);
            assert_eq!(step.to_size, q.n);
            let mc = classify_morphism(&cur, &q, &proj, None);
            if step.cost == 0 {
                assert!(mc.aperiodic);
            } else {
                assert!(mc.l_prime && !mc.aperiodic);
            }
            cur = q;
        }
        assert!(cur.is_trivial());
    }

    #[test]
    fn theta_cap_is_enforced() {
        let tight = Budget { theta_cap: 2, ..Budget::default() };
        let z6 = builtins::cyclic_group(6, &b()).unwrap().abstract_semigroup;
        assert!(matches!(theta_exact(&z6, &tight), Err(Error::Budget { .. })));
    }

    #[test]
    fn shrink_fixes_symmetric_inverse_two_at_group_with_zero() {
        let sis2 = builtins::symmetric_inverse(2, &b()).unwrap().abstract_semigroup;
        let (shrunk, proj, changed) = aperiodic_shrink(&sis2, &b()).unwrap();
        assert!(changed);
        assert_eq!(shrunk.n, 3, "two element group with a zero adjoined");
        assert!(!is_aperiodic(&shrunk));
        assert_eq!(proj.len(), sis2.n);
    }

    #[test]
    fn greedy_matches_exact_on_small_pool() {
        let pool: Vec<FiniteSemigroup> = vec![
            builtins::cyclic_group(2, &b()).unwrap().abstract_semigroup,
            builtins::flip_flop(&b()).unwrap().abstract_semigroup,
            builtins::symmetric_inverse(2, &b()).unwrap().abstract_semigroup,
            builtins::chain_semilattice(3, &b()).unwrap().abstract_semigroup,
            builtins::cyclic_group(6, &b()).unwrap().abstract_semigroup,
        ];
        for s in &pool {
            let (exact, _) = theta_exact(s, &b()).unwrap();
            let (greedy, _, complete) = theta_upper_greedy(s, &b()).unwrap();
            assert!(complete, "greedy alternation reached the trivial semigroup");
            assert_eq!(greedy, exact);
        }
    }
}
