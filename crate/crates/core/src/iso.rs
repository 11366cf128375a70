//! Semigroup isomorphism testing.
//!
//! Elements are colored by iterated refinement (index/period seeded, then
//! hashing each element's row of product colors) and a backtracking search
//! maps a generating sequence of one semigroup onto color-compatible
//! candidates in the other. Color mismatch is a sound reject; the search
//! itself is exact.

use crate::semigroup::FiniteSemigroup;
use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

fn hash_one<T: Hash>(v: &T) -> u64 {
    let mut h = DefaultHasher::new();
    v.hash(&mut h);
    h.finish()
}

/// Stable element colors, comparable across semigroups.
pub fn element_colors(s: &FiniteSemigroup) -> Vec<u64> {
    let n = s.n;
    let mut colors: Vec<u64> = (0..n)
        .map(|x| {
            let (i, p) = s.index_period(x);
            hash_one(&(i as u64, p as u64))
        })
        .collect();
    loop {
        let mut next = Vec::with_capacity(n);
        for x in 0..n {
            let mut row: Vec<(u64, u64, u64)> = (0..n)
                .map(|y| (colors[y], colors[s.mul(x, y)], colors[s.mul(y, x)]))
                .collect();
            row.sort_unstable();
            next.push(hash_one(&(colors[x], row)));
        }
        let classes = |v: &Vec<u64>| {
            let mut u = v.clone();
            u.sort_unstable();
            u.dedup();
            u.len()
        };
        if classes(&next) == classes(&colors) {
            return next;
        }
        colors = next;
    }
}

/// Order-independent structural fingerprint; equal for isomorphic
/// semigroups, used to bucket memo tables.
pub fn fingerprint(s: &FiniteSemigroup) -> u64 {
    let mut colors = element_colors(s);
    colors.sort_unstable();
    hash_one(&(s.n as u64, colors))
}

/// A generating sequence found greedily (smallest id outside the running
/// closure).
fn greedy_generators(s: &FiniteSemigroup) -> Vec<usize> {
    let mut gens: Vec<usize> = Vec::new();
    let mut closed: Vec<usize> = Vec::new();
    loop {
        let missing = (0..s.n).find(|x| !closed.contains(x));
        match missing {
            None => return gens,
            Some(x) => {
                gens.push(x);
                closed = s.closure(&gens);
            }
        }
    }
}

struct IsoSearch<'a> {
    s: &'a FiniteSemigroup,
    t: &'a FiniteSemigroup,
    phi: Vec<u32>,
    used: Vec<u32>,
}

const UNSET: u32 = u32::MAX;

impl<'a> IsoSearch<'a> {
    /// Extends phi by gen -> img and closes under products, checking
    /// consistency and injectivity. Returns the touched elements for
    /// rollback, or None on conflict.
    fn extend(&mut self, gen: usize, img: usize) -> Option<Vec<usize>> {
        let mut added = Vec::new();
        if !self.assign(gen, img, &mut added) {
            self.rollback(&added);
            return None;
        }
        let mut head = 0;
        while head < added.len() {
            let a = added[head];
            head += 1;
            let mapped: Vec<usize> = (0..self.s.n).filter(|&x| self.phi[x] != UNSET).collect();
            for &b in &mapped {
                for (p, q) in [
                    (self.s.mul(a, b), self.t.mul(self.phi[a] as usize, self.phi[b] as usize)),
                    (self.s.mul(b, a), self.t.mul(self.phi[b] as usize, self.phi[a] as usize)),
                ] {
                    if self.phi[p] == UNSET {
                        if !self.assign(p, q, &mut added) {
                            self.rollback(&added);
                            return None;
                        }
                    } else if self.phi[p] as usize != q {
                        self.rollback(&added);
                        return None;
                    }
                }
            }
        }
        Some(added)
    }

    fn assign(&mut self, x: usize, y: usize, added: &mut Vec<usize>) -> bool {
        if self.used[y] != UNSET {
            return false;
        }
        self.phi[x] = y as u32;
        self.used[y] = x as u32;
        added.push(x);
        true
    }

    fn rollback(&mut self, added: &[usize]) {
        for &x in added {
            let y = self.phi[x];
            if y != UNSET {
                self.used[y as usize] = UNSET;
            }
            self.phi[x] = UNSET;
        }
    }
}

/// Searches for an isomorphism; returns the element map when one exists.
pub fn are_isomorphic(s: &FiniteSemigroup, t: &FiniteSemigroup) -> Option<Vec<usize>> {
    if s.n != t.n {
        return None;
    }
    let cs = element_colors(s);
    let ct = element_colors(t);
    {
        let mut a = cs.clone();
        let mut b = ct.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return None;
        }
    }
    let gens = greedy_generators(s);
    let mut search = IsoSearch { s, t, phi: vec![UNSET; s.n], used: vec![UNSET; t.n] };

    fn dfs(search: &mut IsoSearch, gens: &[usize], depth: usize, cs: &[u64], ct: &[u64]) -> bool {
        if depth == gens.len() {
            return search.phi.iter().all(|&v| v != UNSET);
        }
        let g = gens[depth];
        if search.phi[g] != UNSET {
            // generator already forced by earlier closure
            return dfs(search, gens, depth + 1, cs, ct);
        }
        for cand in 0..search.t.n {
            if ct[cand] != cs[g] || search.used[cand] != UNSET {
                continue;
            }
            if let Some(added) = search.extend(g, cand) {
                if dfs(search, gens, depth + 1, cs, ct) {
                    return true;
                }
                search.rollback(&added);
            }
        }
        false
    }

    if dfs(&mut search, &gens, 0, &cs, &ct) {
        Some(search.phi.iter().map(|&v| v as usize).collect())
    } else {
        None
    }
}

/// Memo table keyed by isomorphism class: fingerprint buckets, exact iso
/// test on collisions.
pub struct IsoMemo<V> {
    entries: Vec<(u64, FiniteSemigroup, V)>,
}

impl<V: Clone> IsoMemo<V> {
    pub fn new() -> Self {
        IsoMemo { entries: Vec::new() }
    }

    pub fn get(&self, s: &FiniteSemigroup) -> Option<&V> {
        let fp = fingerprint(s);
        self.entries
            .iter()
            .find(|(f, rep, _)| *f == fp && are_isomorphic(rep, s).is_some())
            .map(|(_, _, v)| v)
    }

    pub fn insert(&mut self, s: FiniteSemigroup, v: V) {
        let fp = fingerprint(&s);
        self.entries.push((fp, s, v));
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl<V: Clone> Default for IsoMemo<V> {
    fn default() -> Self {
        Self::new()
    }
}
