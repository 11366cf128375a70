//! Partial partition lattices, plain and group-weighted. A partial
//! partition groups part of a universe into disjoint blocks; join merges
//! overlapping blocks, meet keeps pairs grouped by both sides. The weighted
//! variant attaches relative group coordinates inside each block and
//! collapses to a formal contradiction when a join forces two different
//! ratios between the same pair.

use crate::classify::classify;
use crate::error::{Error, Result};
use crate::semigroup::FiniteSemigroup;
use serde::Serialize;

/// Disjoint blocks over 0..universe; elements outside every block carry
/// None. Blocks are numbered by least member, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialPartition {
    pub universe: usize,
    pub block_of: Vec<Option<usize>>,
}

impl PartialPartition {
    pub fn empty(universe: usize) -> Self {
        PartialPartition { universe, block_of: vec![None; universe] }
    }

    /// Single block holding the whole universe.
    pub fn top(universe: usize) -> Self {
        PartialPartition { universe, block_of: vec![Some(0); universe] }
    }

    pub fn from_blocks(universe: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut block_of = vec![None; universe];
        for block in blocks {
            if block.is_empty() {
                return Err(Error::Invalid("empty block".into()));
            }
            for &x in block {
                if x >= universe {
                    return Err(Error::Invalid(format!("element {x} outside universe")));
                }
                if block_of[x].is_some() {
                    return Err(Error::Invalid(format!("element {x} in two blocks")));
                }
                block_of[x] = Some(usize::MAX);
            }
        }
        let mut p = PartialPartition { universe, block_of };
        // rebuild ids from the original blocks, then canonicalize
        for (id, block) in blocks.iter().enumerate() {
            for &x in block {
                p.block_of[x] = Some(id);
            }
        }
        p.canonicalize();
        Ok(p)
    }

    fn canonicalize(&mut self) {
        let mut seen: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
        for x in 0..self.universe {
            if let Some(b) = self.block_of[x] {
                let next = seen.len();
                self.block_of[x] = Some(*seen.entry(b).or_insert(next));
            }
        }
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let count = self.block_of.iter().flatten().copied().max().map_or(0, |m| m + 1);
        let mut out = vec![Vec::new(); count];
        for x in 0..self.universe {
            if let Some(b) = self.block_of[x] {
                out[b].push(x);
            }
        }
        out
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.universe).filter(|&x| self.block_of[x].is_some()).collect()
    }

    /// Common refinement on the common support.
    pub fn meet(&self, other: &Self) -> Result<Self> {
        if self.universe != other.universe {
            return Err(Error::AmbientMismatch { why: "universes differ".into() });
        }
        let mut key_to_id: std::collections::HashMap<(usize, usize), usize> =
            std::collections::HashMap::new();
        let mut block_of = vec![None; self.universe];
        for x in 0..self.universe {
            if let (Some(a), Some(b)) = (self.block_of[x], other.block_of[x]) {
                let next = key_to_id.len();
                block_of[x] = Some(*key_to_id.entry((a, b)).or_insert(next));
            }
        }
        let mut p = PartialPartition { universe: self.universe, block_of };
        p.canonicalize();
        Ok(p)
    }

    /// Transitive merge of overlapping blocks over the union support.
    pub fn join(&self, other: &Self) -> Result<Self> {
        if self.universe != other.universe {
            return Err(Error::AmbientMismatch { why: "universes differ".into() });
        }
        let mut dsu = crate::dsu::Dsu::new(self.universe);
        for p in [self, other] {
            for block in p.blocks() {
                for w in block.windows(2) {
                    dsu.union(w[0], w[1]);
                }
            }
        }
        let mut block_of = vec![None; self.universe];
        let mut id_of_root: std::collections::HashMap<usize, usize> =
            std::collections::HashMap::new();
        for x in 0..self.universe {
            if self.block_of[x].is_some() || other.block_of[x].is_some() {
                let r = dsu.find(x);
                let next = id_of_root.len();
                block_of[x] = Some(*id_of_root.entry(r).or_insert(next));
            }
        }
        let mut p = PartialPartition { universe: self.universe, block_of };
        p.canonicalize();
        Ok(p)
    }

    pub fn leq(&self, other: &Self) -> Result<bool> {
        Ok(self.meet(other)? == *self)
    }
}

/// Every partial partition of the universe, in a deterministic order.
pub fn all_partial_partitions(universe: usize) -> Vec<PartialPartition> {
    let mut out = Vec::new();
    let mut block_of: Vec<Option<usize>> = vec![None; universe];
    fn rec(x: usize, used: usize, block_of: &mut Vec<Option<usize>>, out: &mut Vec<PartialPartition>) {
        if x == block_of.len() {
            let mut p = PartialPartition { universe: block_of.len(), block_of: block_of.clone() };
            p.canonicalize();
            out.push(p);
            return;
        }
        block_of[x] = None;
        rec(x + 1, used, block_of, out);
        for b in 0..=used.min(block_of.len() - 1) {
            block_of[x] = Some(b);
            rec(x + 1, used.max(b + 1), block_of, out);
            block_of[x] = None;
        }
    }
    rec(0, 0, &mut block_of, &mut out);
    out.sort_by(|a, b| a.block_of.cmp(&b.block_of));
    out.dedup();
    out
}

/// Blocks with relative group coordinates: inside a block only ratios
/// matter, so the least member is pinned to the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupWeightedPartition {
    pub universe: usize,
    pub group: FiniteSemigroup,
    pub block_of: Vec<Option<usize>>,
    pub weight: Vec<Option<usize>>,
}

/// An element of the weighted lattice: a consistent weighted partition or
/// the formal top produced by conflicting joins.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum RhodesElement {
    Weighted(GroupWeightedPartition),
    Contradiction,
}

fn group_inv(g: &FiniteSemigroup, x: usize) -> usize {
    let e = g.identity.expect("weights live in a group") as usize;
    (0..g.n).find(|&y| g.mul(x, y) == e && g.mul(y, x) == e).expect("group element has an inverse")
}

impl GroupWeightedPartition {
    pub fn empty(group: FiniteSemigroup, universe: usize) -> Result<Self> {
        if !classify(&group).is_group {
            return Err(Error::Invalid("weights need a group".into()));
        }
        Ok(GroupWeightedPartition {
            universe,
            group,
            block_of: vec![None; universe],
            weight: vec![None; universe],
        })
    }

    /// Builds from blocks of (member, weight) pairs and canonicalizes.
    pub fn from_blocks(
        group: FiniteSemigroup,
        universe: usize,
        blocks: &[Vec<(usize, usize)>],
    ) -> Result<Self> {
        let mut p = Self::empty(group, universe)?;
        for (id, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::Invalid("empty block".into()));
            }
            for &(x, w) in block {
                if x >= universe {
                    return Err(Error::Invalid(format!("element {x} outside universe")));
                }
                if w >= p.group.n {
                    return Err(Error::Invalid(format!("weight {w} outside group")));
                }
                if p.block_of[x].is_some() {
                    return Err(Error::Invalid(format!("element {x} in two blocks")));
                }
                p.block_of[x] = Some(id);
                p.weight[x] = Some(w);
            }
        }
        p.canonicalize();
        Ok(p)
    }

    /// Ratio carried from x to y when both sit in one block.
    pub fn relative(&self, x: usize, y: usize) -> Option<usize> {
        match (self.block_of[x], self.block_of[y]) {
            (Some(a), Some(b)) if a == b => {
                let wx = self.weight[x].expect("support carries weights");
                let wy = self.weight[y].expect("support carries weights");
                Some(self.group.mul(group_inv(&self.group, wx), wy))
            }
            _ => None,
        }
    }

    fn canonicalize(&mut self) {
        // renumber blocks by least member and shift weights so the least
        // member carries the identity
        let mut first_of: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
        let mut rename: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
        for x in 0..self.universe {
            if let Some(b) = self.block_of[x] {
                first_of.entry(b).or_insert(x);
                let next = rename.len();
                rename.entry(b).or_insert(next);
            }
        }
        let old_weight = self.weight.clone();
        for x in 0..self.universe {
            if let Some(b) = self.block_of[x] {
                let lead = old_weight[first_of[&b]].expect("lead weight");
                let wx = old_weight[x].expect("member weight");
                self.weight[x] = Some(self.group.mul(group_inv(&self.group, lead), wx));
                self.block_of[x] = Some(rename[&b]);
            }
        }
    }

    pub fn blocks(&self) -> Vec<Vec<(usize, usize)>> {
        let count = self.block_of.iter().flatten().copied().max().map_or(0, |m| m + 1);
        let mut out = vec![Vec::new(); count];
        for x in 0..self.universe {
            if let Some(b) = self.block_of[x] {
                out[b].push((x, self.weight[x].expect("support carries weights")));
            }
        }
        out
    }
}

fn check_compatible(a: &GroupWeightedPartition, b: &GroupWeightedPartition) -> Result<()> {
    if a.universe != b.universe {
        return Err(Error::AmbientMismatch { why: "universes differ".into() });
    }
    if a.group.n != b.group.n || a.group.table != b.group.table {
        return Err(Error::AmbientMismatch { why: "weight groups differ".into() });
    }
    Ok(())
}

/// Join of weighted partitions: merge blocks through shared members while
/// accumulating ratios; a forced disagreement yields the contradiction.
pub fn rhodes_join(x: &RhodesElement, y: &RhodesElement) -> Result<RhodesElement> {
    let (a, b) = match (x, y) {
        (RhodesElement::Contradiction, _) | (_, RhodesElement::Contradiction) => {
            return Ok(RhodesElement::Contradiction)
        }
        (RhodesElement::Weighted(a), RhodesElement::Weighted(b)) => (a, b),
    };
    check_compatible(a, b)?;
    let g = &a.group;
    let e = g.identity.expect("weights live in a group") as usize;
    // weighted union-find: ratio[x] carries the ratio from the root to x
    let mut parent: Vec<usize> = (0..a.universe).collect();
    let mut ratio: Vec<usize> = vec![e; a.universe];
    fn find(parent: &mut Vec<usize>, ratio: &mut Vec<usize>, g: &FiniteSemigroup, x: usize) -> (usize, usize) {
        if parent[x] == x {
            return (x, ratio[x]);
        }
        let (root, above) = find(parent, ratio, g, parent[x]);
        parent[x] = root;
        ratio[x] = g.mul(above, ratio[x]);
        (root, ratio[x])
    }
    for p in [a, b] {
        for block in p.blocks() {
            let (m0, _) = block[0];
            for &(m, _) in &block[1..] {
                let want = p.relative(m0, m).expect("same block");
                let (r0, q0) = find(&mut parent, &mut ratio, g, m0);
                let (r1, q1) = find(&mut parent, &mut ratio, g, m);
                if r0 == r1 {
                    if g.mul(group_inv(g, q0), q1) != want {
                        return Ok(RhodesElement::Contradiction);
                    }
                } else {
                    // attach r1 under r0: ratio(r0 -> r1) = q0 want q1^-1
                    parent[r1] = r0;
                    ratio[r1] = g.mul(g.mul(q0, want), group_inv(g, q1));
                }
            }
        }
    }
    let mut out = GroupWeightedPartition::empty(g.clone(), a.universe)?;
    let mut id_of_root: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    for x in 0..a.universe {
        if a.block_of[x].is_some() || b.block_of[x].is_some() {
            let (r, q) = find(&mut parent, &mut ratio, g, x);
            let next = id_of_root.len();
            out.block_of[x] = Some(*id_of_root.entry(r).or_insert(next));
            out.weight[x] = Some(q);
        }
    }
    out.canonicalize();
    Ok(RhodesElement::Weighted(out))
}

/// Meet: keep pairs together exactly when both sides group them with the
/// same ratio.
pub fn rhodes_meet(x: &RhodesElement, y: &RhodesElement) -> Result<RhodesElement> {
    let (a, b) = match (x, y) {
        (RhodesElement::Contradiction, other) | (other, RhodesElement::Contradiction) => {
            return Ok(other.clone())
        }
        (RhodesElement::Weighted(a), RhodesElement::Weighted(b)) => (a, b),
    };
    check_compatible(a, b)?;
    // "grouped with equal ratio on both sides" is an equivalence relation:
    // ratios compose along chains, so agreement propagates
    let e = a.group.identity.expect("weights live in a group") as usize;
    let mut out = GroupWeightedPartition::empty(a.group.clone(), a.universe)?;
    let mut next = 0;
    for x in 0..a.universe {
        if a.block_of[x].is_none() || b.block_of[x].is_none() {
            continue;
        }
        // the scan finds the least member of x's class, so weights are
        // already canonical
        let lead =
            (0..x).find(|&y| a.relative(y, x).is_some() && a.relative(y, x) == b.relative(y, x));
        match lead {
            Some(y) => {
                out.block_of[x] = out.block_of[y];
                out.weight[x] = a.relative(y, x);
            }
            None => {
                out.block_of[x] = Some(next);
                out.weight[x] = Some(e);
                next += 1;
            }
        }
    }
    Ok(RhodesElement::Weighted(out))
}

pub fn rhodes_leq(x: &RhodesElement, y: &RhodesElement) -> Result<bool> {
    match (x, y) {
        (_, RhodesElement::Contradiction) => Ok(true),
        (RhodesElement::Contradiction, _) => Ok(false),
        _ => Ok(rhodes_meet(x, y)? == *x),
    }
}

/// Expansion into the plain lattice over pairs (g, b) indexed as
/// g * universe + b: each weighted block spreads to one plain block per
/// group element; the contradiction becomes the full one-block partition.
pub fn to_partition(
    x: &RhodesElement,
    group: &FiniteSemigroup,
    universe: usize,
) -> Result<PartialPartition> {
    match x {
        RhodesElement::Contradiction => Ok(PartialPartition::top(group.n * universe)),
        RhodesElement::Weighted(w) => {
            if w.universe != universe || w.group.table != group.table {
                return Err(Error::AmbientMismatch { why: "group or universe differ".into() });
            }
            let mut blocks: Vec<Vec<usize>> = Vec::new();
            for block in w.blocks() {
                for g in 0..group.n {
                    blocks.push(
                        block.iter().map(|&(m, wt)| group.mul(g, wt) * universe + m).collect(),
                    );
                }
            }
            PartialPartition::from_blocks(group.n * universe, &blocks)
        }
    }
}

/// Inverse of the expansion. The partition must be invariant under the
/// group translation of pair indices; a block meeting some column twice
/// reads back as the contradiction.
pub fn from_partition(
    p: &PartialPartition,
    group: &FiniteSemigroup,
    universe: usize,
) -> Result<RhodesElement> {
    if p.universe != group.n * universe {
        return Err(Error::AmbientMismatch { why: "universe is not group x base".into() });
    }
    let idx = |g: usize, b: usize| g * universe + b;
    // translation invariance
    for g in 0..group.n {
        for x in 0..p.universe {
            let (gx, bx) = (x / universe, x % universe);
            let tx = idx(group.mul(g, gx), bx);
            for y in 0..p.universe {
                let (gy, by) = (y / universe, y % universe);
                let ty = idx(group.mul(g, gy), by);
                let together = p.block_of[x].is_some() && p.block_of[x] == p.block_of[y];
                let translated = p.block_of[tx].is_some() && p.block_of[tx] == p.block_of[ty];
                if together != translated {
                    return Err(Error::Invalid("partition is not translation invariant".into()));
                }
            }
        }
    }
    for block in p.blocks() {
        let mut cols: Vec<usize> = block.iter().map(|&x| x % universe).collect();
        let before = cols.len();
        cols.sort_unstable();
        cols.dedup();
        if cols.len() != before {
            return Ok(RhodesElement::Contradiction);
        }
    }
    // support columns must be fully covered across the group coordinate
    let mut out_blocks: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut consumed = vec![false; p.universe];
    for x in 0..p.universe {
        if consumed[x] || p.block_of[x].is_none() {
            continue;
        }
        let id = p.block_of[x];
        let members: Vec<usize> = (0..p.universe).filter(|&y| p.block_of[y] == id).collect();
        for &m in &members {
            consumed[m] = true;
        }
        out_blocks.push(members.iter().map(|&m| (m % universe, m / universe)).collect());
        // skip the translated copies of this block
        let e = group.identity.ok_or_else(|| Error::Invalid("weights need a group".into()))?;
        for g in (0..group.n).filter(|&g| g != e as usize) {
            let copy: Vec<usize> =
                members.iter().map(|&m| idx(group.mul(g, m / universe), m % universe)).collect();
            let cid = p.block_of[copy[0]];
            if copy.iter().any(|&c| p.block_of[c] != cid) {
                return Err(Error::Invalid("translated block is torn".into()));
            }
            for &c in &copy {
                consumed[c] = true;
            }
        }
    }
    GroupWeightedPartition::from_blocks(group.clone(), universe, &out_blocks)
        .map(RhodesElement::Weighted)
}

/// Every consistent weighted partition, in a deterministic order. The
/// contradiction is not included.
pub fn all_weighted(group: &FiniteSemigroup, universe: usize) -> Result<Vec<RhodesElement>> {
    if !classify(group).is_group {
        return Err(Error::Invalid("weights need a group".into()));
    }
    let e = group.identity.expect("group") as usize;
    let mut out = Vec::new();
    for p in all_partial_partitions(universe) {
        let blocks = p.blocks();
        // one free weight per non-least block member; odometer over them
        let free: Vec<usize> = blocks.iter().flat_map(|b| b[1..].iter().copied()).collect();
        let total = group.n.pow(free.len() as u32);
        for code in 0..total {
            let mut weight = vec![e; universe];
            let mut c = code;
            for &m in &free {
                weight[m] = c % group.n;
                c /= group.n;
            }
            let wb: Vec<Vec<(usize, usize)>> = blocks
                .iter()
                .map(|b| b.iter().map(|&m| (m, weight[m])).collect())
                .collect();
            let gw = GroupWeightedPartition::from_blocks(group.clone(), universe, &wb)?;
            out.push(RhodesElement::Weighted(gw));
        }
    }
    Ok(out)
}

/// Compact one-line form: blocks split by '|', members "element:weight"
/// with 1-based ids, "-" for the empty partition, "!" for the
/// contradiction.
pub fn render_weighted(x: &RhodesElement) -> String {
    match x {
        RhodesElement::Contradiction => "!".into(),
        RhodesElement::Weighted(w) => {
            let blocks = w.blocks();
            if blocks.is_empty() {
                return "-".into();
            }
            blocks
                .iter()
                .map(|b| {
                    b.iter()
                        .map(|&(m, wt)| format!("{}:{}", m + 1, wt + 1))
                        .collect::<Vec<_>>()
                        .join(",")
                })
                .collect::<Vec<_>>()
                .join("|")
        }
    }
}

pub fn parse_weighted(
    text: &str,
    group: &FiniteSemigroup,
    universe: usize,
) -> Result<RhodesElement> {
    let text = text.trim();
    if text == "!" {
        return Ok(RhodesElement::Contradiction);
    }
    let mut blocks: Vec<Vec<(usize, usize)>> = Vec::new();
    if !(text.is_empty() || text == "-") {
        for part in text.split('|') {
            let mut block = Vec::new();
            for item in part.split(',') {
                let bad = |msg: String| Error::Parse { line: 1, msg };
                let (m, w) = item
                    .split_once(':')
                    .ok_or_else(|| bad(format!("expected element:weight, got {item}")))?;
                let m: usize =
                    m.trim().parse().map_err(|_| bad(format!("bad element id {m}")))?;
                let w: usize = w.trim().parse().map_err(|_| bad(format!("bad weight id {w}")))?;
                if m == 0 || w == 0 {
                    return Err(bad("ids are 1-based".into()));
                }
                block.push((m - 1, w - 1));
            }
            blocks.push(block);
        }
    }
    GroupWeightedPartition::from_blocks(group.clone(), universe, &blocks)
        .map(RhodesElement::Weighted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::builtins;

    fn z2() -> FiniteSemigroup {
        builtins::cyclic_group(2, &Budget::default()).unwrap().abstract_semigroup
    }

    #[test]
    fn partial_partition_counts_and_laws() {
        let all = all_partial_partitions(3);
        assert_eq!(all.len(), 15);
        for a in &all {
            for b in &all {
                let m = a.meet(b).unwrap();
                let j = a.join(b).unwrap();
                assert!(m.leq(a).unwrap() && m.leq(b).unwrap());
                assert!(a.leq(&j).unwrap() && b.leq(&j).unwrap());
                for c in &all {
                    if c.leq(a).unwrap() && c.leq(b).unwrap() {
                        assert!(c.leq(&m).unwrap(), "meet is the glb");
                    }
                    if a.leq(c).unwrap() && b.leq(c).unwrap() {
                        assert!(j.leq(c).unwrap(), "join is the lub");
                    }
                }
            }
        }
    }

    #[test]
    fn weighted_count_over_z2() {
        assert_eq!(all_weighted(&z2(), 2).unwrap().len(), 6);
        assert_eq!(all_weighted(&z2(), 3).unwrap().len(), 24);
    }

    #[test]
    fn conflicting_ratios_join_to_the_contradiction() {
        let g = z2();
        let same = GroupWeightedPartition::from_blocks(g.clone(), 2, &[vec![(0, 0), (1, 0)]])
            .map(RhodesElement::Weighted)
            .unwrap();
        let flip = GroupWeightedPartition::from_blocks(g.clone(), 2, &[vec![(0, 0), (1, 1)]])
            .map(RhodesElement::Weighted)
            .unwrap();
        assert_eq!(rhodes_join(&same, &flip).unwrap(), RhodesElement::Contradiction);
        assert_ne!(rhodes_join(&same, &same).unwrap(), RhodesElement::Contradiction);
        // meet keeps only the agreeing singletons apart
        let m = rhodes_meet(&same, &flip).unwrap();
        match m {
            RhodesElement::Weighted(w) => assert_eq!(w.blocks().len(), 2),
            RhodesElement::Contradiction => panic!("meet of consistent elements is consistent"),
        }
    }

    #[test]
    fn weighted_lattice_laws_exhaustive_over_z2_pairs() {
        let mut all = all_weighted(&z2(), 2).unwrap();
        all.push(RhodesElement::Contradiction);
        assert_eq!(all.len(), 7);
        for a in &all {
            for b in &all {
                let m = rhodes_meet(a, b).unwrap();
                let j = rhodes_join(a, b).unwrap();
                assert!(rhodes_leq(&m, a).unwrap() && rhodes_leq(&m, b).unwrap());
                assert!(rhodes_leq(a, &j).unwrap() && rhodes_leq(b, &j).unwrap());
                for c in &all {
                    if rhodes_leq(c, a).unwrap() && rhodes_leq(c, b).unwrap() {
                        assert!(rhodes_leq(c, &m).unwrap(), "meet is the glb");
                    }
                    if rhodes_leq(a, c).unwrap() && rhodes_leq(b, c).unwrap() {
                        assert!(rhodes_leq(&j, c).unwrap(), "join is the lub");
                    }
                }
            }
        }
    }

    #[test]
    fn expansion_round_trips_and_preserves_meets() {
        let g = z2();
        let mut all = all_weighted(&g, 3).unwrap();
        for a in &all {
            let p = to_partition(a, &g, 3).unwrap();
            let back = from_partition(&p, &g, 3).unwrap();
            assert_eq!(&back, a, "round trip");
        }
        assert_eq!(
            from_partition(&PartialPartition::top(6), &g, 3).unwrap(),
            RhodesElement::Contradiction
        );
        all.push(RhodesElement::Contradiction);
        for a in &all {
            for b in &all {
                let lhs = to_partition(&rhodes_meet(a, b).unwrap(), &g, 3).unwrap();
                let rhs = to_partition(a, &g, 3)
                    .unwrap()
                    .meet(&to_partition(b, &g, 3).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs, "expansion preserves meets");
            }
        }
    }

    #[test]
    fn text_format_round_trips() {
        let g = z2();
        for x in all_weighted(&g, 3).unwrap() {
            let text = render_weighted(&x);
            let back = parse_weighted(&text, &g, 3).unwrap();
            assert_eq!(back, x, "{text}");
        }
        assert_eq!(parse_weighted("!", &g, 3).unwrap(), RhodesElement::Contradiction);
        assert!(parse_weighted("1:1,1:1", &g, 3).is_err());
        assert!(parse_weighted("1:3", &g, 3).is_err());
        assert!(parse_weighted("0:1", &g, 3).is_err());
    }
}
