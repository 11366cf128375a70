//! Finite semigroups as explicit multiplication tables.
//!
//! Elements are `0..n` internally; every parser and renderer speaks 1-based
//! indices so table files stay human-readable. The table is row-major:
//! `table[i*n + j]` is the product `i * j`.

use crate::error::{Error, Result};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FiniteSemigroup {
    pub n: usize,
    pub table: Vec<u32>,
    /// Two-sided identity, if one exists. Always detected, never trusted.
    pub identity: Option<u32>,
    /// A known generating set, when the semigroup was built from one.
    pub generators: Option<Vec<u32>>,
}

impl FiniteSemigroup {
    /// Builds from a table and verifies associativity (cubic; fine for the
    /// sizes that arrive via files). The offending triple is reported
    /// 1-based.
    pub fn from_table(n: usize, table: Vec<u32>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("semigroup must be nonempty".into()));
        }
        if table.len() != n * n {
            return Err(Error::Invalid(format!(
                "table has {} entries, expected {}",
                table.len(),
                n * n
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v as usize >= n) {
            return Err(Error::Invalid(format!("table entry {} out of range 1..{}", bad + 1, n)));
        }
        let s = FiniteSemigroup { n, table, identity: None, generators: None };
        for i in 0..n {
            for j in 0..n {
                let ij = s.mul(i, j);
                for k in 0..n {
                    if s.mul(ij, k) != s.mul(i, s.mul(j, k)) {
                        return Err(Error::NotAssociative { i: i + 1, j: j + 1, k: k + 1 });
                    }
                }
            }
        }
        Ok(s.with_detected_identity())
    }

    /// Builds from a table known to be associative by construction
    /// (function composition closures, quotients, sub-tables).
    pub fn from_table_unchecked(n: usize, table: Vec<u32>) -> Self {
        debug_assert_eq!(table.len(), n * n);
        let s = FiniteSemigroup { n, table, identity: None, generators: None };
        s.with_detected_identity()
    }

    fn with_detected_identity(mut self) -> Self {
        self.identity = (0..self.n)
            .find(|&e| (0..self.n).all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
            .map(|e| e as u32);
        self
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.n + j] as usize
    }

    pub fn with_generators(mut self, gens: Vec<u32>) -> Self {
        self.generators = Some(gens);
        self
    }

    /// Generator set to drive Cayley-graph walks: the recorded one if
    /// present, otherwise every element.
    pub fn generator_view(&self) -> Vec<usize> {
        match &self.generators {
            Some(g) => g.iter().map(|&x| x as usize).collect(),
            None => (0..self.n).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.n == 1
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.n).filter(|&e| self.mul(e, e) == e).collect()
    }

    pub fn is_idempotent(&self, e: usize) -> bool {
        self.mul(e, e) == e
    }

    /// The two-sided zero, if present.
    pub fn zero(&self) -> Option<usize> {
        (0..self.n).find(|&z| (0..self.n).all(|x| self.mul(z, x) == z && self.mul(x, z) == z))
    }

    /// Smallest (index, period) with s^(index+period) = s^index.
    /// Index starts at 1 (s^1 = s).
    pub fn index_period(&self, s: usize) -> (usize, usize) {
        let mut seen = vec![usize::MAX; self.n];
        let mut x = s;
        let mut k = 1usize;
        loop {
            if seen[x] != usize::MAX {
                let index = seen[x];
                return (index, k - index);
            }
            seen[x] = k;
            x = self.mul(x, s);
            k += 1;
        }
    }

    /// The idempotent power of s.
    /// x^k for k >= 1.
    pub fn pow(&self, x: usize, k: usize) -> usize {
        assert!(k >= 1, "pow needs a positive exponent");
        let mut acc = x;
        for _ in 1..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    pub fn omega(&self, s: usize) -> usize {
        let (index, period) = self.index_period(s);
        // the unique idempotent power is s^m for the least multiple m of
        // the period with m >= index
        let m = period * index.div_ceil(period);
        let mut x = s;
        for _ in 1..m {
            x = self.mul(x, s);
        }
        x
    }

    /// True when every element has period 1 (no nontrivial subgroup).
    pub fn is_aperiodic_by_powers(&self) -> bool {
        (0..self.n).all(|s| self.index_period(s).1 == 1)
    }

    pub fn opposite(&self) -> FiniteSemigroup {
        let n = self.n;
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = self.table[j * n + i];
            }
        }
        let mut s = FiniteSemigroup { n, table, identity: self.identity, generators: None };
        s = s.with_detected_identity();
        s
    }

    /// Closure of `seed` under multiplication; returns sorted element ids.
    pub fn closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut in_set = vec![false; self.n];
        let mut stack: Vec<usize> = Vec::new();
        for &s in seed {
            if !in_set[s] {
                in_set[s] = true;
                stack.push(s);
            }
        }
        let mut members: Vec<usize> = stack.clone();
        while let Some(x) = stack.pop() {
            // multiply against every current member on both sides
            let snapshot: Vec<usize> = members.clone();
            for &y in &snapshot {
                for p in [self.mul(x, y), self.mul(y, x)] {
                    if !in_set[p] {
                        in_set[p] = true;
                        members.push(p);
                        stack.push(p);
                    }
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// Restricts to a multiplicatively closed subset. Returns the sub-table
    /// semigroup together with the map from new ids to ambient ids.
    pub fn sub_semigroup(&self, members: &[usize]) -> (FiniteSemigroup, Vec<usize>) {
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut back = vec![usize::MAX; self.n];
        for (new, &old) in sorted.iter().enumerate() {
            back[old] = new;
        }
        let m = sorted.len();
        let mut table = vec![0u32; m * m];
        for (i, &x) in sorted.iter().enumerate() {
            for (j, &y) in sorted.iter().enumerate() {
                let p = self.mul(x, y);
                debug_assert!(back[p] != usize::MAX, "subset not closed");
                table[i * m + j] = back[p] as u32;
            }
        }
        (FiniteSemigroup::from_table_unchecked(m, table), sorted)
    }

    /// Direct product as an abstract semigroup; element (i, j) gets id
    /// `i * t.n + j`.
    pub fn direct_product(&self, t: &FiniteSemigroup) -> FiniteSemigroup {
        let n = self.n * t.n;
        let mut table = vec![0u32; n * n];
        for a in 0..self.n {
            for b in 0..t.n {
                let x = a * t.n + b;
                for c in 0..self.n {
                    for d in 0..t.n {
                        let y = c * t.n + d;
                        table[x * n + y] = (self.mul(a, c) * t.n + t.mul(b, d)) as u32;
                    }
                }
            }
        }
        FiniteSemigroup::from_table_unchecked(n, table)
    }

    /// Adjoins a fresh two-sided identity unconditionally (the new element
    /// gets the last id).
    pub fn adjoin_identity(&self) -> FiniteSemigroup {
        let n = self.n + 1;
        let id = self.n;
        let mut table = vec![0u32; n * n];
        for i in 0..self.n {
            for j in 0..self.n {
                table[i * n + j] = self.table[i * self.n + j];
            }
        }
        for i in 0..n {
            table[i * n + id] = i as u32;
            table[id * n + i] = i as u32;
        }
        FiniteSemigroup::from_table_unchecked(n, table)
    }

    /// S^1: the semigroup itself when it has an identity, otherwise with
    /// one adjoined.
    pub fn monoid_completion(&self) -> FiniteSemigroup {
        if self.identity.is_some() {
            self.clone()
        } else {
            self.adjoin_identity()
        }
    }
}

/// Parses the `.smt` table format: first significant line is `n`, an
/// optional `identity k` line may follow, then `n` rows of `n` 1-based
/// entries. `#` starts a comment.
pub fn parse_semigroup(input: &str) -> Result<FiniteSemigroup> {
    let mut rows: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut declared_identity: Option<(usize, usize)> = None;
    for (lineno, raw) in input.lines().enumerate() {
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("identity") {
            let k: usize = rest.trim().parse().map_err(|_| Error::Parse {
                line: lineno + 1,
                msg: format!("bad identity declaration '{line}'"),
            })?;
            declared_identity = Some((lineno + 1, k));
            continue;
        }
        let nums: Result<Vec<usize>> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| Error::Parse {
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
    let (first_line, first) = rows.remove(0);
    if first.len() != 1 {
        return Err(Error::Parse { line: first_line, msg: "first line must be the order n".into() });
    }
    let n = first[0];
    if n == 0 {
        return Err(Error::Parse { line: first_line, msg: "order must be positive".into() });
    }
    if rows.len() != n {
        let line = rows.last().map(|r| r.0).unwrap_or(first_line);
        return Err(Error::Parse { line, msg: format!("expected {} table rows, found {}", n, rows.len()) });
    }
    let mut table = Vec::with_capacity(n * n);
    for (lineno, row) in rows {
        if row.len() != n {
            return Err(Error::Parse { line: lineno, msg: format!("row has {} entries, expected {}", row.len(), n) });
        }
        for v in row {
            if v == 0 || v > n {
                return Err(Error::Parse { line: lineno, msg: format!("entry {v} out of range 1..{n}") });
            }
            table.push((v - 1) as u32);
        }
    }
    let s = FiniteSemigroup::from_table(n, table)?;
    if let Some((line, k)) = declared_identity {
        if k == 0 || k > n {
            return Err(Error::Parse { line, msg: format!("identity {k} out of range 1..{n}") });
        }
        if s.identity != Some((k - 1) as u32) {
            return Err(Error::BadIdentity { declared: k });
        }
    }
    Ok(s)
}

/// Renders the `.smt` format, 1-based, with an identity header when known.
pub fn render_semigroup(s: &FiniteSemigroup) -> String {
    let mut out = String::new();
    out.push_str(&format!("{}\n", s.n));
    if let Some(e) = s.identity {
        out.push_str(&format!("identity {}\n", e + 1));
    }
    for i in 0..s.n {
        let row: Vec<String> = (0..s.n).map(|j| (s.mul(i, j) + 1).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_singleton() {
        let s = parse_semigroup("1\n1\n").unwrap();
        assert_eq!(s.n, 1);
        assert_eq!(s.identity, Some(0));
    }

    #[test]
    fn parse_z2_detects_identity() {
        let s = parse_semigroup("# the two element group\n2\nidentity 1\n1 2\n2 1\n").unwrap();
        assert_eq!(s.n, 2);
        assert_eq!(s.identity, Some(0));
        assert_eq!(s.index_period(1), (1, 2));
    }

    #[test]
    fn omega_lands_on_idempotent_powers() {
        // Z_3: every omega power is the identity, reached through an odd
        // period
        let z3 = parse_semigroup("3\n1 2 3\n2 3 1\n3 1 2\n").unwrap();
        for x in 0..3 {
            assert_eq!(z3.omega(x), 0);
        }
        // nilpotent-plus-zero: x^2 = 0
        let nil = parse_semigroup("2\n1 1\n1 1\n").unwrap();
        assert_eq!(nil.omega(1), 0);
        for s in [&z3, &nil] {
            for x in 0..s.n {
                let w = s.omega(x);
                assert_eq!(s.mul(w, w), w);
            }
        }
    }

    #[test]
    fn non_associative_table_names_the_triple() {
        let err = parse_semigroup("2\n2 1\n1 1\n").unwrap_err();
        match err {
            Error::NotAssociative { i, j, k } => assert_eq!((i, j, k), (1, 1, 2)),
            other => panic!("expected NotAssociative, got {other:?}"),
        }
    }

    #[test]
    fn wrong_identity_header_rejected() {
        let err = parse_semigroup("2\nidentity 2\n1 2\n2 1\n").unwrap_err();
        assert_eq!(err, Error::BadIdentity { declared: 2 });
    }

    #[test]
    fn render_round_trips() {
        let s = parse_semigroup("2\n1 2\n2 1\n").unwrap();
        let text = render_semigroup(&s);
        let t = parse_semigroup(&text).unwrap();
        assert_eq!(s.table, t.table);
    }

    #[test]
    fn closure_and_sub_semigroup() {
        // Z6 as a table
        let mut table = vec![0u32; 36];
        for i in 0..6 {
            for j in 0..6 {
                table[i * 6 + j] = ((i + j) % 6) as u32;
            }
        }
        let z6 = FiniteSemigroup::from_table(6, table).unwrap();
        let sub = z6.closure(&[2]);
        assert_eq!(sub, vec![0, 2, 4]);
        let (s3, back) = z6.sub_semigroup(&sub);
        assert_eq!(s3.n, 3);
        assert_eq!(back, vec![0, 2, 4]);
        assert_eq!(s3.identity, Some(0));
    }

    #[test]
    fn opposite_swaps_zero_sides() {
        // left-zero semigroup: x*y = x
        let s = parse_semigroup("2\n1 1\n2 2\n").unwrap();
        let o = s.opposite();
        // opposite is right-zero: x*y = y
        assert_eq!(o.mul(0, 1), 1);
        assert_eq!(o.mul(1, 0), 0);
        assert_eq!(o.opposite().table, s.table);
    }

    #[test]
    fn direct_product_orders_multiply() {
        let z2 = parse_semigroup("2\n1 2\n2 1\n").unwrap();
        let p = z2.direct_product(&z2);
        assert_eq!(p.n, 4);
        assert_eq!(p.identity, Some(0));
        // Klein four group: every element squares to identity
        for x in 0..4 {
            assert_eq!(p.mul(x, x), 0);
        }
    }

    #[test]
    fn adjoin_identity_always_adds() {
        let z2 = parse_semigroup("2\n1 2\n2 1\n").unwrap();
        let m = z2.adjoin_identity();
        assert_eq!(m.n, 3);
        // detected identity is the freshly adjoined one
        assert_eq!(m.identity, Some(2));
        assert_eq!(m.monoid_completion().n, 3);
        assert_eq!(z2.monoid_completion().n, 2);
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn random_tables_round_trip_and_reverse(
            states in 1usize..=4,
            a in proptest::collection::vec(0u32..4, 4),
            c in proptest::collection::vec(0u32..4, 4),
        ) {
            use crate::budget::Budget;
            use crate::transformation::{generate_ts, Pmap};
            let maps = vec![
                Pmap(a[..states].iter().map(|&x| x % states as u32).collect()),
                Pmap(c[..states].iter().map(|&x| x % states as u32).collect()),
            ];
            let ts = generate_ts(states, &maps, &Budget::default()).unwrap();
            let s = ts.abstract_semigroup;
            let back = parse_semigroup(&render_semigroup(&s)).unwrap();
            prop_assert_eq!(&back.table, &s.table);
            prop_assert_eq!(back.identity, s.identity);
            prop_assert_eq!(&s.opposite().opposite().table, &s.table);
        }
    }
}
