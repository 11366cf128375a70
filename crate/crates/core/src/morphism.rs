//! Congruences, quotients, and surjective morphism classification.
//!
//! Congruence classes are always numbered by least member, so equal
//! partitions compare equal as `class_of` vectors.

use crate::budget::Budget;
use crate::dsu::Dsu;
use crate::error::{Error, Result};
use crate::green::{green, GreenData};
use crate::semigroup::FiniteSemigroup;
use crate::transformation::{generate_ts, Pmap, TransformationSemigroup, UNDEF};
use std::collections::HashSet;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    pub class_of: Vec<usize>,
}

impl Congruence {
    pub fn diagonal(n: usize) -> Self {
        Congruence { class_of: (0..n).collect() }
    }

    pub fn full(n: usize) -> Self {
        Congruence { class_of: vec![0; n] }
    }

    pub fn num_classes(&self) -> usize {
        self.class_of.iter().copied().max().map_or(0, |m| m + 1)
    }

    pub fn is_diagonal(&self) -> bool {
        self.class_of.iter().enumerate().all(|(i, &c)| i == c)
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_classes()];
        for (x, &c) in self.class_of.iter().enumerate() {
            out[c].push(x);
        }
        out
    }

    /// Refinement order: self <= other when every class of self lies inside
    /// a class of other.
    pub fn leq(&self, other: &Congruence) -> bool {
        let n = self.class_of.len();
        let mut image = vec![usize::MAX; self.num_classes()];
        for x in 0..n {
            let c = self.class_of[x];
            if image[c] == usize::MAX {
                image[c] = other.class_of[x];
            } else if image[c] != other.class_of[x] {
                return false;
            }
        }
        true
    }
}

/// Least congruence containing the given pairs: union-find plus one-step
/// generator translation, worklist driven.
pub fn congruence_from_pairs(s: &FiniteSemigroup, pairs: &[(usize, usize)]) -> Congruence {
    let gens = s.generator_view();
    let mut dsu = Dsu::new(s.n);
    let mut work: Vec<(usize, usize)> = Vec::new();
    for &(a, b) in pairs {
        if dsu.union(a, b) {
            work.push((a, b));
        }
    }
    while let Some((x, y)) = work.pop() {
        for &g in &gens {
            for (p, q) in [(s.mul(x, g), s.mul(y, g)), (s.mul(g, x), s.mul(g, y))] {
                if dsu.union(p, q) {
                    work.push((p, q));
                }
            }
        }
    }
    Congruence { class_of: dsu.canonical_classes() }
}

pub fn principal_congruence(s: &FiniteSemigroup, a: usize, b: usize) -> Congruence {
    congruence_from_pairs(s, &[(a, b)])
}

/// Join in the congruence lattice: the transitive closure of the union,
/// which is again a congruence.
pub fn join_congruences(s: &FiniteSemigroup, a: &Congruence, b: &Congruence) -> Congruence {
    let mut dsu = Dsu::new(s.n);
    for c in [a, b] {
        let mut rep = vec![usize::MAX; c.num_classes()];
        for x in 0..s.n {
            let cls = c.class_of[x];
            if rep[cls] == usize::MAX {
                rep[cls] = x;
            } else {
                dsu.union(rep[cls], x);
            }
        }
    }
    Congruence { class_of: dsu.canonical_classes() }
}

/// Every congruence of S: join-closure of the principal congruences.
pub fn all_congruences(s: &FiniteSemigroup, budget: &Budget) -> Result<Vec<Congruence>> {
    budget.check_elements(s.n)?;
    let mut seen: HashSet<Congruence> = HashSet::new();
    let mut list: Vec<Congruence> = Vec::new();
    let push = |c: Congruence, list: &mut Vec<Congruence>, seen: &mut HashSet<Congruence>| {
        if seen.insert(c.clone()) {
            list.push(c);
        }
    };
    push(Congruence::diagonal(s.n), &mut list, &mut seen);
    for a in 0..s.n {
        for b in (a + 1)..s.n {
            push(principal_congruence(s, a, b), &mut list, &mut seen);
        }
    }
    let mut frontier: Vec<Congruence> = list.clone();
    while !frontier.is_empty() {
        budget.check_subsets(list.len())?;
        let mut next = Vec::new();
        for f in &frontier {
            for c in list.clone() {
                let j = join_congruences(s, f, &c);
                if seen.insert(j.clone()) {
                    next.push(j.clone());
                    list.push(j);
                }
            }
        }
        frontier = next;
    }
    list.sort();
    Ok(list)
}

/// Checks that the partition is left and right compatible with the
/// multiplication.
pub fn verify_congruence(s: &FiniteSemigroup, cong: &Congruence) -> Result<()> {
    if cong.class_of.len() != s.n {
        return Err(Error::Invalid("partition size differs from semigroup order".into()));
    }
    let classes = cong.classes();
    for class in &classes {
        let (first, rest) = class.split_first().expect("classes are nonempty");
        for &y in rest {
            for t in 0..s.n {
                let q = cong.class_of[s.mul(*first, t)];
                let q2 = cong.class_of[s.mul(y, t)];
                if q != q2 {
                    return Err(Error::NotACongruence { q, q2, s: t });
                }
                let q = cong.class_of[s.mul(t, *first)];
                let q2 = cong.class_of[s.mul(t, y)];
                if q != q2 {
                    return Err(Error::NotACongruence { q, q2, s: t });
                }
            }
        }
    }
    Ok(())
}

/// Quotient semigroup and the projection map. The congruence must be valid;
/// use `verify_congruence` on untrusted partitions.
pub fn quotient(s: &FiniteSemigroup, cong: &Congruence) -> (FiniteSemigroup, Vec<usize>) {
    let m = cong.num_classes();
    let classes = cong.classes();
    let mut table = vec![0u32; m * m];
    for (ci, class) in classes.iter().enumerate() {
        for (cj, class2) in classes.iter().enumerate() {
            table[ci * m + cj] = cong.class_of[s.mul(class[0], class2[0])] as u32;
        }
    }
    let mut q = FiniteSemigroup::from_table_unchecked(m, table);
    if let Some(gens) = &s.generators {
        let mut qgens: Vec<u32> =
            gens.iter().map(|&g| cong.class_of[g as usize] as u32).collect();
        qgens.sort_unstable();
        qgens.dedup();
        q.generators = Some(qgens);
    }
    (q, cong.class_of.clone())
}

/// Rees quotient: collapse a two-sided ideal to a zero.
pub fn rees_quotient(s: &FiniteSemigroup, ideal: &[usize]) -> Result<(FiniteSemigroup, Vec<usize>)> {
    if ideal.is_empty() {
        return Err(Error::Invalid("Rees quotient needs a nonempty ideal".into()));
    }
    let mut in_ideal = vec![false; s.n];
    for &x in ideal {
        in_ideal[x] = true;
    }
    for &x in ideal {
        for t in 0..s.n {
            if !in_ideal[s.mul(x, t)] || !in_ideal[s.mul(t, x)] {
                return Err(Error::Invalid("set is not a two-sided ideal".into()));
            }
        }
    }
    let mut dsu = Dsu::new(s.n);
    let first = *ideal.iter().min().expect("nonempty");
    for &x in ideal {
        dsu.union(first, x);
    }
    let cong = Congruence { class_of: dsu.canonical_classes() };
    debug_assert!(verify_congruence(s, &cong).is_ok());
    Ok(quotient(s, &cong))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MorphismClass {
    pub injective: bool,
    pub surjective: bool,
    /// Preimages of idempotents are aperiodic.
    pub aperiodic: bool,
    /// Regular elements with equal images are L-equivalent.
    pub l_prime: bool,
    /// Preimages of idempotents consist of idempotents.
    pub idempotent_pure: bool,
    /// Injective on idempotents.
    pub idempotent_separating: bool,
}

pub fn check_morphism(s: &FiniteSemigroup, t: &FiniteSemigroup, map: &[usize]) -> Result<()> {
    if map.len() != s.n || map.iter().any(|&v| v >= t.n) {
        return Err(Error::Invalid("morphism map has wrong shape".into()));
    }
    for x in 0..s.n {
        for y in 0..s.n {
            if map[s.mul(x, y)] != t.mul(map[x], map[y]) {
                return Err(Error::NotAMorphism { x, y });
            }
        }
    }
    Ok(())
}

/// Classifies a (not necessarily surjective) morphism given by its element
/// map. Green data for the domain is computed if not supplied.
pub fn classify_morphism(
    s: &FiniteSemigroup,
    t: &FiniteSemigroup,
    map: &[usize],
    green_s: Option<&GreenData>,
) -> MorphismClass {
    debug_assert!(check_morphism(s, t, map).is_ok());
    let owned;
    let g = match green_s {
        Some(g) => g,
        None => {
            owned = green(s);
            &owned
        }
    };
    let injective = {
        let mut seen = vec![false; t.n];
        map.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    };
    let surjective = {
        let mut seen = vec![false; t.n];
        for &v in map {
            seen[v] = true;
        }
        seen.iter().all(|&b| b)
    };
    let aperiodic = (0..s.n).all(|x| !t.is_idempotent(map[x]) || s.index_period(x).1 == 1);
    let idempotent_pure = (0..s.n).all(|x| !t.is_idempotent(map[x]) || s.is_idempotent(x));
    let idempotent_separating = {
        let es = s.idempotents();
        let mut seen: HashSet<usize> = HashSet::new();
        es.iter().all(|&e| seen.insert(map[e]))
    };
    let regular: Vec<usize> =
        (0..s.n).filter(|&x| (0..s.n).any(|y| s.mul(s.mul(x, y), x) == x)).collect();
    let mut l_prime = true;
    'outer: for (i, &x) in regular.iter().enumerate() {
        for &y in &regular[i + 1..] {
            if map[x] == map[y] && g.l_class[x] != g.l_class[y] {
                l_prime = false;
                break 'outer;
            }
        }
    }
    MorphismClass { injective, surjective, aperiodic, l_prime, idempotent_pure, idempotent_separating }
}

/// The action of S on its regular L-classes by right multiplication,
/// partial where the J-class would drop. The induced quotient is the
/// L'-image of S; the projection is returned alongside.
pub fn lprime_image(
    s: &FiniteSemigroup,
    budget: &Budget,
) -> Result<(TransformationSemigroup, Vec<usize>)> {
    let g = green(s);
    let reg_l = g.regular_l_classes();
    let states = reg_l.len();
    let mut state_of_l = vec![usize::MAX; g.l_classes.len()];
    for (i, &l) in reg_l.iter().enumerate() {
        state_of_l[l] = i;
    }
    let act = |x: usize| -> Pmap {
        let mut v = vec![UNDEF; states];
        for (i, &l) in reg_l.iter().enumerate() {
            let u = g.l_classes[l][0];
            let ux = s.mul(u, x);
            if g.j_class[ux] == g.j_class[u] {
                let target = state_of_l[g.l_class[ux]];
                debug_assert_ne!(target, usize::MAX, "same J-class keeps L regular");
                v[i] = target as u32;
            }
        }
        Pmap(v)
    };
    let gens = s.generator_view();
    let gen_maps: Vec<Pmap> = gens.iter().map(|&x| act(x)).collect();
    let ts = generate_ts(states, &gen_maps, budget)?;
    let mut proj = Vec::with_capacity(s.n);
    for x in 0..s.n {
        let m = act(x);
        let idx = ts
            .elements
            .iter()
            .position(|e| *e == m)
            .expect("every element acts as a product of generator actions");
        proj.push(idx);
    }
    Ok((ts, proj))
}
