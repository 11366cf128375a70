//! Transformation semigroups: sets of partial functions on a finite state
//! set, acting on the right. Composition is strict: if `q*s` is undefined
//! then so is `(q*s)*t`.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::semigroup::FiniteSemigroup;
use serde::Serialize;
use std::collections::HashMap;

pub const UNDEF: u32 = u32::MAX;

/// A partial function on `0..q`, stored as an image vector with `UNDEF`
/// marking holes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Pmap(pub Vec<u32>);

impl Pmap {
    pub fn identity(q: usize) -> Pmap {
        Pmap((0..q as u32).collect())
    }

    pub fn constant(q: usize, v: usize) -> Pmap {
        Pmap(vec![v as u32; q])
    }

    pub fn empty(q: usize) -> Pmap {
        Pmap(vec![UNDEF; q])
    }

    pub fn degree_states(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, q: usize) -> Option<usize> {
        match self.0[q] {
            UNDEF => None,
            v => Some(v as usize),
        }
    }

    /// Apply self first, then `g`.
    pub fn compose(&self, g: &Pmap) -> Pmap {
        Pmap(
            self.0
                .iter()
                .map(|&v| if v == UNDEF { UNDEF } else { g.0[v as usize] })
                .collect(),
        )
    }

    pub fn domain(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&q| self.0[q] != UNDEF).collect()
    }

    pub fn image(&self) -> Vec<usize> {
        let mut img: Vec<usize> = self.0.iter().filter(|&&v| v != UNDEF).map(|&v| v as usize).collect();
        img.sort_unstable();
        img.dedup();
        img
    }

    pub fn rank(&self) -> usize {
        self.image().len()
    }

    pub fn is_total(&self) -> bool {
        self.0.iter().all(|&v| v != UNDEF)
    }

    pub fn is_injective_on_domain(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        for &v in &self.0 {
            if v != UNDEF {
                if seen[v as usize] {
                    return false;
                }
                seen[v as usize] = true;
            }
        }
        true
    }

    /// Largest kernel class: states of the domain identified by the map.
    pub fn max_kernel_class(&self) -> usize {
        let mut count = vec![0usize; self.0.len()];
        let mut best = 0;
        for &v in &self.0 {
            if v != UNDEF {
                count[v as usize] += 1;
                best = best.max(count[v as usize]);
            }
        }
        best
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TransformationSemigroup {
    pub states: usize,
    /// Faithful: no two elements act identically.
    pub elements: Vec<Pmap>,
    /// Indices into `elements` for the generators the closure started from.
    pub generator_indices: Vec<usize>,
    /// The abstract semigroup of the action, table-indexed like `elements`.
    pub abstract_semigroup: FiniteSemigroup,
}

impl TransformationSemigroup {
    pub fn size(&self) -> usize {
        self.elements.len()
    }
}

/// Closes a generator list of partial maps under composition. Duplicate
/// actions collapse, so the result is faithful by construction.
pub fn generate_ts(states: usize, generators: &[Pmap], budget: &Budget) -> Result<TransformationSemigroup> {
    if states == 0 {
        return Err(Error::Invalid("transformation semigroup needs at least one state".into()));
    }
    if generators.is_empty() {
        return Err(Error::Invalid("at least one generator map required".into()));
    }
    for g in generators {
        if g.0.len() != states {
            return Err(Error::AmbientMismatch {
                why: format!("generator has {} states, expected {}", g.0.len(), states),
            });
        }
        if let Some(&v) = g.0.iter().find(|&&v| v != UNDEF && v as usize >= states) {
            return Err(Error::Invalid(format!("map image {} out of range", v + 1)));
        }
    }
    budget.check_states(states)?;

    let mut index: HashMap<Pmap, usize> = HashMap::new();
    let mut elements: Vec<Pmap> = Vec::new();
    let mut generator_indices = Vec::new();
    for g in generators {
        let next = elements.len();
        let id = *index.entry(g.clone()).or_insert_with(|| {
            elements.push(g.clone());
            next
        });
        generator_indices.push(id);
    }
    // BFS closure: right-multiply queue elements by the distinct generators
    let gen_ids: Vec<usize> = {
        let mut g = generator_indices.clone();
        g.sort_unstable();
        g.dedup();
        g
    };
    let mut head = 0;
    while head < elements.len() {
        for &g in &gen_ids {
            let prod = elements[head].compose(&elements[g]);
            if !index.contains_key(&prod) {
                budget.check_elements(elements.len() + 1)?;
                index.insert(prod.clone(), elements.len());
                elements.push(prod);
            }
        }
        head += 1;
    }

    let n = elements.len();
    let mut table = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            let prod = elements[i].compose(&elements[j]);
            let k = *index.get(&prod).expect("closure is closed under composition");
            table[i * n + j] = k as u32;
        }
    }
    let gens_u32: Vec<u32> = {
        let mut g: Vec<u32> = generator_indices.iter().map(|&i| i as u32).collect();
        g.sort_unstable();
        g.dedup();
        g
    };
    let abstract_semigroup = FiniteSemigroup::from_table_unchecked(n, table).with_generators(gens_u32);
    Ok(TransformationSemigroup { states, elements, generator_indices, abstract_semigroup })
}

/// The right regular representation (S^1, S): states are S with an identity
/// adjoined only when S lacks one; elements act by right multiplication.
pub fn right_regular(s: &FiniteSemigroup, budget: &Budget) -> Result<TransformationSemigroup> {
    let has_id = s.identity.is_some();
    let q = if has_id { s.n } else { s.n + 1 };
    budget.check_states(q)?;
    let mut maps = Vec::with_capacity(s.n);
    for x in 0..s.n {
        let mut m = vec![UNDEF; q];
        for st in 0..s.n {
            m[st] = s.mul(st, x) as u32;
        }
        if !has_id {
            m[s.n] = x as u32; // adjoined identity state moves to x
        }
        maps.push(Pmap(m));
    }
    // Right translations are pairwise distinct on S^1, so the closure is a
    // relabeling of S itself.
    let gens: Vec<Pmap> = match &s.generators {
        Some(g) => g.iter().map(|&i| maps[i as usize].clone()).collect(),
        None => maps.clone(),
    };
    let ts = generate_ts(q, &gens, budget)?;
    debug_assert_eq!(ts.size(), s.n, "right regular representation must be faithful");
    Ok(ts)
}

/// Maximal kernel-class size over all elements: the degree of the action.
pub fn degree(ts: &TransformationSemigroup) -> usize {
    ts.elements.iter().map(|m| m.max_kernel_class()).max().unwrap_or(0)
}

/// Quotient action on blocks of a state partition. Each element must map
/// blocks into blocks; elements that become equal are merged, so the result
/// is a morphic image acting faithfully on the blocks. Returns the image
/// and the element projection.
pub fn quotient_ts(
    ts: &TransformationSemigroup,
    block_of: &[usize],
) -> Result<(TransformationSemigroup, Vec<usize>)> {
    if block_of.len() != ts.states {
        return Err(Error::Invalid("state partition has wrong size".into()));
    }
    let blocks = block_of.iter().copied().max().map_or(0, |m| m + 1);
    let mut induced: Vec<Pmap> = Vec::with_capacity(ts.elements.len());
    for m in &ts.elements {
        let mut v = vec![u32::MAX - 1; blocks];
        for q in 0..ts.states {
            let target = match m.apply(q) {
                None => UNDEF,
                Some(t) => block_of[t] as u32,
            };
            let b = block_of[q];
            if v[b] == u32::MAX - 1 {
                v[b] = target;
            } else if v[b] != target {
                return Err(Error::Invalid(
                    "partition is not compatible with the action".into(),
                ));
            }
        }
        for slot in v.iter_mut() {
            if *slot == u32::MAX - 1 {
                *slot = UNDEF;
            }
        }
        induced.push(Pmap(v));
    }
    let mut uniq: Vec<Pmap> = Vec::new();
    let mut index: HashMap<Pmap, usize> = HashMap::new();
    let mut proj = Vec::with_capacity(induced.len());
    for p in induced {
        let id = *index.entry(p.clone()).or_insert_with(|| {
            uniq.push(p.clone());
            uniq.len() - 1
        });
        proj.push(id);
    }
    let n = uniq.len();
    let mut table = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            let prod = uniq[i].compose(&uniq[j]);
            table[i * n + j] = *index
                .get(&prod)
                .expect("induced maps are closed under composition") as u32;
        }
    }
    let image = TransformationSemigroup {
        states: blocks,
        elements: uniq,
        generator_indices: Vec::new(),
        abstract_semigroup: FiniteSemigroup::from_table_unchecked(n, table),
    };
    Ok((image, proj))
}

/// Parses the `.tgen` generator format: first line `q m`, then `m` rows of
/// `q` integers in `0..=q` where 0 means undefined and states are 1-based.
pub fn parse_generators(input: &str) -> Result<(usize, Vec<Pmap>)> {
    let mut rows: Vec<(usize, Vec<i64>)> = Vec::new();
    for (lineno, raw) in input.lines().enumerate() {
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let nums: Result<Vec<i64>> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<i64>().map_err(|_| Error::Parse {
                    line: lineno + 1,
                    msg: format!("expected integer, found '{tok}'"),
                })
            })
            .collect();
        rows.push((lineno + 1, nums?));
    }
    if rows.is_empty() {
        return Err(Error::Parse { line: 1, msg: "empty input".into() });
    }
    let (first_line, header) = rows.remove(0);
    if header.len() != 2 || header[0] < 1 || header[1] < 1 {
        return Err(Error::Parse { line: first_line, msg: "first line must be 'q m' with both positive".into() });
    }
    let q = header[0] as usize;
    let m = header[1] as usize;
    if rows.len() != m {
        let line = rows.last().map(|r| r.0).unwrap_or(first_line);
        return Err(Error::Parse { line, msg: format!("expected {} generator rows, found {}", m, rows.len()) });
    }
    let mut gens = Vec::with_capacity(m);
    for (lineno, row) in rows {
        if row.len() != q {
            return Err(Error::Parse { line: lineno, msg: format!("row has {} entries, expected {}", row.len(), q) });
        }
        let mut map = Vec::with_capacity(q);
        for v in row {
            if v < 0 || v as usize > q {
                return Err(Error::Parse { line: lineno, msg: format!("entry {v} out of range 0..{q}") });
            }
            map.push(if v == 0 { UNDEF } else { (v - 1) as u32 });
        }
        gens.push(Pmap(map));
    }
    Ok((q, gens))
}

pub fn render_generators(q: usize, gens: &[Pmap]) -> String {
    let mut out = format!("{} {}\n", q, gens.len());
    for g in gens {
        let row: Vec<String> = g
            .0
            .iter()
            .map(|&v| if v == UNDEF { "0".to_string() } else { (v + 1).to_string() })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
