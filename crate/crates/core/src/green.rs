//! Green's relations for a finite semigroup.
//!
//! R-classes are the strongly connected components of the right Cayley
//! graph (edges x -> x*g over a generating set), L-classes those of the
//! left Cayley graph, and J-classes those of the union; D = J in the
//! finite case. H is the meet of R and L. Class ids are renumbered by
//! least member so the output is canonical regardless of traversal order.

use crate::semigroup::FiniteSemigroup;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct GreenData {
    pub r_class: Vec<usize>,
    pub l_class: Vec<usize>,
    pub j_class: Vec<usize>,
    pub h_class: Vec<usize>,
    pub r_classes: Vec<Vec<usize>>,
    pub l_classes: Vec<Vec<usize>>,
    pub j_classes: Vec<Vec<usize>>,
    pub h_classes: Vec<Vec<usize>>,
    /// j_leq[a][b] is true when class a lies at or below class b in the
    /// J-order (every element of a is a two-sided product through b).
    pub j_leq: Vec<Vec<bool>>,
    pub regular_j: Vec<bool>,
    pub idempotents: Vec<usize>,
    /// For each regular J-class: members of one maximal subgroup (an
    /// H-class around a chosen idempotent) and its abstract group.
    pub max_subgroup: Vec<Option<(Vec<usize>, FiniteSemigroup)>>,
}

/// Iterative Tarjan; returns component id per vertex (reverse topological
/// discovery order, later renumbered).
fn tarjan_scc(n: usize, adj: &[Vec<u32>]) -> Vec<usize> {
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut comp = vec![usize::MAX; n];
    let mut counter = 0usize;
    let mut ncomp = 0usize;
    // explicit DFS frames: (vertex, next child position)
    let mut frames: Vec<(usize, usize)> = Vec::new();

    for start in 0..n {
        if index[start] != usize::MAX {
            continue;
        }
        frames.push((start, 0));
        index[start] = counter;
        low[start] = counter;
        counter += 1;
        stack.push(start);
        on_stack[start] = true;
        while let Some(&mut (v, ref mut pos)) = frames.last_mut() {
            if *pos < adj[v].len() {
                let w = adj[v][*pos] as usize;
                *pos += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                frames.pop();
                if let Some(&mut (parent, _)) = frames.last_mut() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp[w] = ncomp;
                        if w == v {
                            break;
                        }
                    }
                    ncomp += 1;
                }
            }
        }
    }
    comp
}

/// Renumber class ids so class 0 holds element 0's class, ordered by least
/// member; returns (class id per element, members per class).
fn canonical_classes(raw: &[usize]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let nclasses = raw.iter().max().map(|&m| m + 1).unwrap_or(0);
    let mut min_member = vec![usize::MAX; nclasses];
    for (x, &c) in raw.iter().enumerate() {
        if min_member[c] == usize::MAX {
            min_member[c] = x;
        }
    }
    let mut order: Vec<usize> = (0..nclasses).collect();
    order.sort_by_key(|&c| min_member[c]);
    let mut rank = vec![0usize; nclasses];
    for (r, &c) in order.iter().enumerate() {
        rank[c] = r;
    }
    let ids: Vec<usize> = raw.iter().map(|&c| rank[c]).collect();
    let mut members = vec![Vec::new(); nclasses];
    for (x, &c) in ids.iter().enumerate() {
        members[c].push(x);
    }
    (ids, members)
}

pub fn green(s: &FiniteSemigroup) -> GreenData {
    let n = s.n;
    let gens = s.generator_view();
    let mut right_adj = vec![Vec::with_capacity(gens.len()); n];
    let mut left_adj = vec![Vec::with_capacity(gens.len()); n];
    let mut both_adj = vec![Vec::with_capacity(2 * gens.len()); n];
    for x in 0..n {
        for &g in &gens {
            let xr = s.mul(x, g) as u32;
            let xl = s.mul(g, x) as u32;
            right_adj[x].push(xr);
            left_adj[x].push(xl);
            both_adj[x].push(xr);
            both_adj[x].push(xl);
        }
    }
    let (r_class, r_classes) = canonical_classes(&tarjan_scc(n, &right_adj));
    let (l_class, l_classes) = canonical_classes(&tarjan_scc(n, &left_adj));
    let (j_class, j_classes) = canonical_classes(&tarjan_scc(n, &both_adj));

    // H = R meet L
    let mut h_raw = vec![usize::MAX; n];
    let mut h_seen: std::collections::HashMap<(usize, usize), usize> = std::collections::HashMap::new();
    for x in 0..n {
        let key = (r_class[x], l_class[x]);
        let next = h_seen.len();
        let id = *h_seen.entry(key).or_insert(next);
        h_raw[x] = id;
    }
    let (h_class, h_classes) = canonical_classes(&h_raw);

    // J-order: reachability between J-classes along Cayley edges
    let nj = j_classes.len();
    let mut j_leq = vec![vec![false; nj]; nj];
    for a in 0..nj {
        j_leq[a][a] = true;
    }
    // DFS from each class over the condensed graph
    let mut cond_adj = vec![Vec::new(); nj];
    for x in 0..n {
        for &y in &both_adj[x] {
            let (a, b) = (j_class[x], j_class[y as usize]);
            if a != b {
                cond_adj[a].push(b);
            }
        }
    }
    for l in cond_adj.iter_mut() {
        l.sort_unstable();
        l.dedup();
    }
    for top in 0..nj {
        let mut stack = vec![top];
        let mut seen = vec![false; nj];
        seen[top] = true;
        while let Some(v) = stack.pop() {
            for &w in &cond_adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    j_leq[w][top] = true;
                    stack.push(w);
                }
            }
        }
    }

    let idempotents = s.idempotents();
    let mut regular_j = vec![false; nj];
    for &e in &idempotents {
        regular_j[j_class[e]] = true;
    }

    let mut max_subgroup: Vec<Option<(Vec<usize>, FiniteSemigroup)>> = vec![None; nj];
    for &e in &idempotents {
        let j = j_class[e];
        if max_subgroup[j].is_some() {
            continue;
        }
        let members = h_classes[h_class[e]].clone();
        let (sub, _) = s.sub_semigroup(&members);
        debug_assert!(sub.identity.is_some(), "maximal subgroup must have an identity");
        max_subgroup[j] = Some((members, sub));
    }

    GreenData {
        r_class,
        l_class,
        j_class,
        h_class,
        r_classes,
        l_classes,
        j_classes,
        h_classes,
        j_leq,
        regular_j,
        idempotents,
        max_subgroup,
    }
}

impl GreenData {
    /// a strictly below b in the J-order.
    pub fn j_lt(&self, a: usize, b: usize) -> bool {
        a != b && self.j_leq[a][b]
    }

    /// A J-class is aperiodic when it contains no nontrivial subgroup.
    pub fn j_is_aperiodic(&self, j: usize) -> bool {
        match &self.max_subgroup[j] {
            Some((members, _)) => members.len() == 1,
            None => true, // null classes carry no subgroup at all
        }
    }

    pub fn regular_l_classes(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (lid, members) in self.l_classes.iter().enumerate() {
            if members.iter().any(|&x| self.regular_j[self.j_class[x]]) {
                out.push(lid);
            }
        }
        out
    }
}

/// Aperiodicity by eventual power periods; used as the primary check and
/// cross-validated against Green's data in tests.
pub fn is_aperiodic(s: &FiniteSemigroup) -> bool {
    s.is_aperiodic_by_powers()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::semigroup::parse_semigroup;
    use crate::transformation::{generate_ts, Pmap};

    fn t3() -> FiniteSemigroup {
        let cycle = Pmap(vec![1, 2, 0]);
        let swap = Pmap(vec![1, 0, 2]);
        let collapse = Pmap(vec![0, 0, 2]);
        generate_ts(3, &[cycle, swap, collapse], &Budget::default()).unwrap().abstract_semigroup
    }

    fn sis2() -> FiniteSemigroup {
        let swap = Pmap(vec![1, 0]);
        let e1 = Pmap(vec![0, crate::transformation::UNDEF]);
        generate_ts(2, &[swap, e1], &Budget::default()).unwrap().abstract_semigroup
    }

    #[test]
    fn group_has_single_class() {
        let z2 = parse_semigroup("2\n1 2\n2 1\n").unwrap();
        let g = green(&z2);
        assert_eq!(g.j_classes.len(), 1);
        assert_eq!(g.r_classes.len(), 1);
        assert_eq!(g.h_classes.len(), 1);
        assert!(g.regular_j[0]);
        let (_, grp) = g.max_subgroup[0].as_ref().unwrap();
        assert_eq!(grp.n, 2);
    }

    #[test]
    fn t3_class_structure() {
        let s = t3();
        let g = green(&s);
        assert_eq!(g.j_classes.len(), 3);
        let mut sizes: Vec<usize> = g.j_classes.iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![3, 6, 18]);
        // the middle class splits 3x3 with H-classes of size 2
        let mid = (0..3).find(|&j| g.j_classes[j].len() == 18).unwrap();
        let r_count = g
            .r_classes
            .iter()
            .filter(|c| g.j_class[c[0]] == mid)
            .count();
        let l_count = g
            .l_classes
            .iter()
            .filter(|c| g.j_class[c[0]] == mid)
            .count();
        assert_eq!((r_count, l_count), (3, 3));
        let (members, grp) = g.max_subgroup[mid].as_ref().unwrap();
        assert_eq!(members.len(), 2);
        assert_eq!(grp.n, 2);
        // J-order is the rank chain
        let top = (0..3).find(|&j| g.j_classes[j].len() == 6).unwrap();
        let bottom = (0..3).find(|&j| g.j_classes[j].len() == 3).unwrap();
        assert!(g.j_lt(mid, top));
        assert!(g.j_lt(bottom, mid));
        assert!(g.j_lt(bottom, top));
        assert!(!g.j_lt(top, mid));
    }

    #[test]
    fn sis2_class_structure() {
        let s = sis2();
        let g = green(&s);
        assert_eq!(s.n, 7);
        assert_eq!(g.j_classes.len(), 3);
        assert_eq!(g.idempotents.len(), 4);
        let mut sizes: Vec<usize> = g.j_classes.iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 4]);
        assert!(g.j_classes.iter().enumerate().all(|(j, _)| g.regular_j[j]));
    }

    #[test]
    fn aperiodicity_checks_agree() {
        for s in [
            t3(),
            sis2(),
            parse_semigroup("2\n1 2\n2 1\n").unwrap(),
            parse_semigroup("2\n1 1\n2 2\n").unwrap(),
        ] {
            let g = green(&s);
            let by_groups = (0..g.j_classes.len()).all(|j| g.j_is_aperiodic(j));
            assert_eq!(is_aperiodic(&s), by_groups);
        }
    }

    #[test]
    fn flip_flop_is_aperiodic() {
        let ff = generate_ts(
            2,
            &[Pmap::identity(2), Pmap::constant(2, 0), Pmap::constant(2, 1)],
            &Budget::default(),
        )
        .unwrap()
        .abstract_semigroup;
        assert!(is_aperiodic(&ff));
        let g = green(&ff);
        // identity on top, the two constants form one regular J-class
        assert_eq!(g.j_classes.len(), 2);
    }

    #[test]
    fn j_order_antisymmetric_on_t3() {
        let s = t3();
        let g = green(&s);
        for a in 0..g.j_classes.len() {
            for b in 0..g.j_classes.len() {
                if a != b {
                    assert!(!(g.j_leq[a][b] && g.j_leq[b][a]), "J-order must be antisymmetric");
                }
            }
        }
    }
}
