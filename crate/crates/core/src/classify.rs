//! Coarse structural classification of a finite semigroup, including the
//! Krohn-Rhodes primality test (simple group, or divisor of the flip-flop).

use crate::green::{green, is_aperiodic};
use crate::iso::are_isomorphic;
use crate::semigroup::{parse_semigroup, FiniteSemigroup};
use serde::Serialize;
use std::collections::HashSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub is_trivial: bool,
    pub is_monoid: bool,
    pub is_group: bool,
    pub is_commutative: bool,
    pub is_band: bool,
    pub is_semilattice: bool,
    pub is_regular: bool,
    pub is_inverse: bool,
    pub is_completely_regular: bool,
    pub is_aperiodic: bool,
    pub is_prime: bool,
    /// Maximal subgroup order per regular J-class, ascending.
    pub subgroup_orders: Vec<usize>,
}

pub fn is_group(s: &FiniteSemigroup) -> bool {
    let Some(e) = s.identity else { return false };
    let e = e as usize;
    (0..s.n).all(|x| (0..s.n).any(|y| s.mul(x, y) == e && s.mul(y, x) == e))
}

pub fn is_regular(s: &FiniteSemigroup) -> bool {
    (0..s.n).all(|x| (0..s.n).any(|y| s.mul(s.mul(x, y), x) == x))
}

pub fn is_inverse(s: &FiniteSemigroup) -> bool {
    if !is_regular(s) {
        return false;
    }
    let es = s.idempotents();
    es.iter().all(|&e| es.iter().all(|&f| s.mul(e, f) == s.mul(f, e)))
}

/// Every element lies in a subgroup, i.e. has power index 1.
pub fn is_completely_regular(s: &FiniteSemigroup) -> bool {
    (0..s.n).all(|x| s.index_period(x).0 == 1)
}

pub fn is_commutative(s: &FiniteSemigroup) -> bool {
    (0..s.n).all(|x| (x..s.n).all(|y| s.mul(x, y) == s.mul(y, x)))
}

pub fn is_band(s: &FiniteSemigroup) -> bool {
    (0..s.n).all(|x| s.is_idempotent(x))
}

/// All subgroups of a finite group, each as a sorted element list.
pub fn subgroups(g: &FiniteSemigroup) -> Vec<Vec<usize>> {
    debug_assert!(is_group(g));
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut queue: Vec<Vec<usize>> = Vec::new();
    for x in 0..g.n {
        let h = g.closure(&[x]);
        if seen.insert(h.clone()) {
            queue.push(h);
        }
    }
    let mut head = 0;
    while head < queue.len() {
        let h = queue[head].clone();
        head += 1;
        for x in 0..g.n {
            if h.binary_search(&x).is_err() {
                let mut gens = h.clone();
                gens.push(x);
                let bigger = g.closure(&gens);
                if seen.insert(bigger.clone()) {
                    queue.push(bigger);
                }
            }
        }
    }
    let mut out: Vec<Vec<usize>> = seen.into_iter().collect();
    out.sort();
    out
}

pub fn group_inverse(g: &FiniteSemigroup, x: usize) -> usize {
    let (_, p) = g.index_period(x);
    if p == 1 { x } else { g.pow(x, p - 1) }
}

pub fn is_simple_group(g: &FiniteSemigroup) -> bool {
    if !is_group(g) || g.n == 1 {
        return false;
    }
    for h in subgroups(g) {
        if h.len() == 1 || h.len() == g.n {
            continue;
        }
        let normal = (0..g.n).all(|x| {
            let xi = group_inverse(g, x);
            h.iter().all(|&v| h.binary_search(&g.mul(g.mul(x, v), xi)).is_ok())
        });
        if normal {
            return false;
        }
    }
    true
}

/// The flip-flop monoid: identity plus two right zeros.
fn flip_flop_table() -> FiniteSemigroup {
    parse_semigroup("3\n1 2 3\n2 2 3\n3 2 3\n").expect("fixed table")
}

/// The divisors of the flip-flop, up to isomorphism: trivial, two-element
/// semilattice, two right zeros, and the flip-flop itself.
fn divides_flip_flop(s: &FiniteSemigroup) -> bool {
    if s.n > 3 {
        return false;
    }
    let semilattice2 = parse_semigroup("2\n1 2\n2 2\n").expect("fixed table");
    let rz2 = parse_semigroup("2\n1 2\n1 2\n").expect("fixed table");
    let candidates: Vec<FiniteSemigroup> = match s.n {
        1 => return true,
        2 => vec![semilattice2, rz2],
        _ => vec![flip_flop_table()],
    };
    candidates.iter().any(|c| are_isomorphic(s, c).is_some())
}

/// Prime in the Krohn-Rhodes sense: a simple group, or a divisor of the
/// flip-flop.
pub fn is_prime(s: &FiniteSemigroup) -> bool {
    if is_group(s) && s.n > 1 {
        return is_simple_group(s);
    }
    divides_flip_flop(s)
}

pub fn classify(s: &FiniteSemigroup) -> Classification {
    let g = green(s);
    let band = is_band(s);
    let commutative = is_commutative(s);
    let mut subgroup_orders: Vec<usize> = g
        .max_subgroup
        .iter()
        .filter_map(|m| m.as_ref().map(|(members, _)| members.len()))
        .collect();
    subgroup_orders.sort_unstable();
    Classification {
        is_trivial: s.n == 1,
        is_monoid: s.identity.is_some(),
        is_group: is_group(s),
        is_commutative: commutative,
        is_band: band,
        is_semilattice: band && commutative,
        is_regular: is_regular(s),
        is_inverse: is_inverse(s),
        is_completely_regular: is_completely_regular(s),
        is_aperiodic: is_aperiodic(s),
        is_prime: is_prime(s),
        subgroup_orders,
    }
}
