//! Cayley-graph expansions. The right Cayley graph is taken over the
//! semigroup with a fresh identity adjoined as root, generators as letters.
//! Edges that strictly drop the R order are the transition edges; cutting
//! a word's history down to the transitions it crossed gives the right
//! Karnofsky-Rhodes expansion, remembering the whole simple path gives the
//! McCammond automaton. The expansions come with an audited surmorphism
//! back onto the base semigroup.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::green::green;
use crate::morphism::check_morphism;
use crate::semigroup::FiniteSemigroup;
use crate::transformation::{generate_ts, right_regular, Pmap, TransformationSemigroup};
use std::collections::HashMap;

#[derive(Debug, Clone)]
pub struct CayleyEdge {
    pub from: usize,
    pub letter: usize,
    pub to: usize,
    /// The R class strictly drops along this edge.
    pub transition: bool,
}

/// A rooted deterministic labeled graph, doubling as a complete automaton:
/// every node reads every letter.
#[derive(Debug, Clone)]
pub struct CayleyGraph {
    /// Element ids of the base semigroup, plus the fresh root at index
    /// `nodes - 1`.
    pub nodes: usize,
    pub root: usize,
    /// Element ids of the letters in the base semigroup.
    pub letters: Vec<usize>,
    /// Indexed by `node * letters.len() + letter`.
    pub edges: Vec<CayleyEdge>,
}

pub fn right_cayley(s: &FiniteSemigroup, budget: &Budget) -> Result<CayleyGraph> {
    let s1 = s.adjoin_identity();
    budget.check_states(s1.n)?;
    let g1 = green(&s1);
    let letters = s.generator_view();
    let mut edges = Vec::with_capacity(s1.n * letters.len());
    for v in 0..s1.n {
        for (li, &gl) in letters.iter().enumerate() {
            let to = s1.mul(v, gl);
            edges.push(CayleyEdge {
                from: v,
                letter: li,
                to,
                transition: g1.r_class[to] != g1.r_class[v],
            });
        }
    }
    Ok(CayleyGraph { nodes: s1.n, root: s.n, letters, edges })
}

/// An expanded semigroup together with its projection onto the base, a
/// verified surmorphism.
#[derive(Debug, Clone)]
pub struct Expansion {
    pub ts: TransformationSemigroup,
    /// Element map expansion -> base.
    pub onto: Vec<usize>,
}

fn audit(exp: &TransformationSemigroup, base: &FiniteSemigroup, onto: &[usize]) -> Result<()> {
    if onto.iter().any(|&x| x >= base.n) {
        return Err(Error::Invalid("expansion endpoint escaped the base".into()));
    }
    check_morphism(&exp.abstract_semigroup, base, onto)?;
    let mut hit = vec![false; base.n];
    for &x in onto {
        hit[x] = true;
    }
    if hit.iter().any(|h| !h) {
        return Err(Error::Invalid("expansion projection must cover the base".into()));
    }
    if exp.size() <= 256 {
        FiniteSemigroup::from_table(exp.size(), exp.abstract_semigroup.table.clone())?;
    }
    Ok(())
}

/// Right Karnofsky-Rhodes expansion: states are pairs of a Cayley node and
/// the set of transition edges crossed to reach it, explored breadth-first
/// from the root with an empty set.
pub fn rkr(s: &FiniteSemigroup, budget: &Budget) -> Result<Expansion> {
    let graph = right_cayley(s, budget)?;
    let nl = graph.letters.len();
    let seed = (graph.root, Vec::<u32>::new());
    let mut states = vec![seed.clone()];
    let mut index: HashMap<(usize, Vec<u32>), usize> = HashMap::from([(seed, 0)]);
    let mut act: Vec<Vec<u32>> = vec![Vec::new(); nl];
    let mut at = 0;
    while at < states.len() {
        for li in 0..nl {
            let (node, tset) = &states[at];
            let eid = node * nl + li;
            let e = &graph.edges[eid];
            let mut t = tset.clone();
            if e.transition {
                if let Err(pos) = t.binary_search(&(eid as u32)) {
                    t.insert(pos, eid as u32);
                }
            }
            let next = (e.to, t);
            let target = match index.get(&next) {
                Some(&t) => t,
                None => {
                    budget.check_states(states.len() + 1)?;
                    states.push(next.clone());
                    index.insert(next, states.len() - 1);
                    states.len() - 1
                }
            };
            act[li].push(target as u32);
        }
        at += 1;
    }
    let gens: Vec<Pmap> = act.into_iter().map(Pmap).collect();
    let ts = generate_ts(states.len(), &gens, budget)?;
    let onto: Vec<usize> = ts
        .elements
        .iter()
        .map(|m| states[m.apply(0).expect("letter actions are total")].0)
        .collect();
    audit(&ts, s, &onto)?;
    Ok(Expansion { ts, onto })
}

/// The McCammond automaton of a rooted graph: states are the simple paths
/// from the root, recorded as edge sequences.
#[derive(Debug, Clone)]
pub struct McAutomaton {
    /// Edge ids of the input graph along each path; state 0 is the empty
    /// path at the root.
    pub paths: Vec<Vec<u32>>,
    /// Input-graph node each path ends at.
    pub endpoints: Vec<usize>,
    /// State graph: a letter extends the path when its target node is
    /// fresh, and otherwise cuts back to the prefix ending at the revisited
    /// node. Edge flags are inherited from the traversed input edges.
    pub graph: CayleyGraph,
}

pub fn mccammond(graph: &CayleyGraph, budget: &Budget) -> Result<McAutomaton> {
    let nl = graph.letters.len();
    let mut paths: Vec<Vec<u32>> = vec![Vec::new()];
    let mut endpoints = vec![graph.root];
    let mut index: HashMap<Vec<u32>, usize> = HashMap::from([(Vec::new(), 0)]);
    let mut edges: Vec<CayleyEdge> = Vec::new();
    let mut at = 0;
    while at < paths.len() {
        for li in 0..nl {
            let eid = endpoints[at] * nl + li;
            let to = graph.edges[eid].to;
            let next = if to == graph.root {
                Vec::new()
            } else {
                match paths[at].iter().position(|&e| graph.edges[e as usize].to == to) {
                    Some(pos) => paths[at][..=pos].to_vec(),
                    None => {
                        let mut p = paths[at].clone();
                        p.push(eid as u32);
                        p
                    }
                }
            };
            let target = match index.get(&next) {
                Some(&t) => t,
                None => {
                    budget.check_states(paths.len() + 1)?;
                    if paths.len() + 1 > budget.simple_path_cap {
                        return Err(Error::Budget {
                            what: "simple paths",
                            limit: budget.simple_path_cap,
                        });
                    }
                    paths.push(next.clone());
                    endpoints.push(to);
                    index.insert(next, paths.len() - 1);
                    paths.len() - 1
                }
            };
            edges.push(CayleyEdge {
                from: at,
                letter: li,
                to: target,
                transition: graph.edges[eid].transition,
            });
        }
        at += 1;
    }
    let nodes = paths.len();
    let graph = CayleyGraph { nodes, root: 0, letters: graph.letters.clone(), edges };
    Ok(McAutomaton { paths, endpoints, graph })
}

/// Transition semigroup of a complete deterministic automaton: the letter
/// actions, closed under composition.
pub fn transition_semigroup(graph: &CayleyGraph, budget: &Budget) -> Result<TransformationSemigroup> {
    let nl = graph.letters.len();
    if graph.edges.len() != graph.nodes * nl {
        return Err(Error::Invalid("automaton must read every letter at every node".into()));
    }
    for (i, e) in graph.edges.iter().enumerate() {
        if e.from != i / nl || e.letter != i % nl || e.to >= graph.nodes {
            return Err(Error::Invalid("automaton edges must be deterministic".into()));
        }
    }
    let gens: Vec<Pmap> = (0..nl)
        .map(|li| Pmap((0..graph.nodes).map(|v| graph.edges[v * nl + li].to as u32).collect()))
        .collect();
    generate_ts(graph.nodes, &gens, budget)
}

/// McCammond expansion of a semigroup: the transition semigroup of the
/// McCammond automaton of its right Cayley graph, projected back by path
/// endpoints.
pub fn mccammond_expansion(s: &FiniteSemigroup, budget: &Budget) -> Result<Expansion> {
    let graph = right_cayley(s, budget)?;
    let a = mccammond(&graph, budget)?;
    let ts = transition_semigroup(&a.graph, budget)?;
    let onto: Vec<usize> = ts
        .elements
        .iter()
        .map(|m| a.endpoints[m.apply(0).expect("letter actions are total")])
        .collect();
    audit(&ts, s, &onto)?;
    Ok(Expansion { ts, onto })
}

/// Left Karnofsky-Rhodes expansion, mirrored through the opposite
/// semigroup. The returned action is the right regular one of the expanded
/// semigroup.
pub fn lkr(s: &FiniteSemigroup, budget: &Budget) -> Result<Expansion> {
    let gens: Vec<u32> = s.generator_view().iter().map(|&g| g as u32).collect();
    let op = s.opposite().with_generators(gens);
    let e = rkr(&op, budget)?;
    let gens: Vec<u32> =
        e.ts.abstract_semigroup.generator_view().iter().map(|&g| g as u32).collect();
    let flipped = e.ts.abstract_semigroup.opposite().with_generators(gens);
    let ts = right_regular(&flipped, budget)?;
    // realign: right regular renumbers, the identity state names each element
    let id_state = flipped.identity.map(|i| i as usize).unwrap_or(flipped.n);
    let onto: Vec<usize> = ts
        .elements
        .iter()
        .map(|m| e.onto[m.apply(id_state).expect("right translations are total")])
        .collect();
    audit(&ts, s, &onto)?;
    Ok(Expansion { ts, onto })
}

#[derive(Debug, Clone)]
pub struct GstChain {
    pub expansion: Expansion,
    /// Element counts after the left Karnofsky-Rhodes, McCammond, and right
    /// Karnofsky-Rhodes stages.
    pub stage_sizes: [usize; 3],
}

/// Composite expansion: right Karnofsky-Rhodes of the McCammond expansion
/// of the left Karnofsky-Rhodes expansion, with the surjections composed
/// and re-audited against the original semigroup.
pub fn gst(s: &FiniteSemigroup, budget: &Budget) -> Result<GstChain> {
    let l = lkr(s, budget)?;
    let m = mccammond_expansion(&l.ts.abstract_semigroup, budget)?;
    let r = rkr(&m.ts.abstract_semigroup, budget)?;
    let onto: Vec<usize> = r.onto.iter().map(|&x| l.onto[m.onto[x]]).collect();
    audit(&r.ts, s, &onto)?;
    let sizes = [l.ts.size(), m.ts.size(), r.ts.size()];
    Ok(GstChain { expansion: Expansion { ts: r.ts, onto }, stage_sizes: sizes })
}

/// True when every node reachable from the root is the endpoint of exactly
/// one simple path. Paths are edge sequences, so parallel edges count as
/// distinct routes; self loops never occur on a simple path and are
/// skipped.
pub fn has_unique_simple_path(graph: &CayleyGraph, budget: &Budget) -> Result<bool> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); graph.nodes];
    for e in &graph.edges {
        if e.from != e.to {
            adj[e.from].push(e.to);
        }
    }
    let mut count = vec![0usize; graph.nodes];
    let mut on_path = vec![false; graph.nodes];
    let mut explored = 0usize;
    fn dfs(
        v: usize,
        adj: &[Vec<usize>],
        count: &mut [usize],
        on_path: &mut [bool],
        explored: &mut usize,
        budget: &Budget,
    ) -> Result<()> {
        count[v] += 1;
        *explored += 1;
        budget.check_simple_paths(*explored)?;
        on_path[v] = true;
        for &w in &adj[v] {
            if !on_path[w] {
                dfs(w, adj, count, on_path, explored, budget)?;
            }
        }
        on_path[v] = false;
        Ok(())
    }
    dfs(graph.root, &adj, &mut count, &mut on_path, &mut explored, budget)?;
    Ok(count.iter().all(|&c| c <= 1))
}

/// Graphviz rendering: nodes carry 1-based element ids, the root is `I`,
/// transition edges are drawn bold.
pub fn cayley_dot(graph: &CayleyGraph) -> String {
    let mut out = String::from("digraph cayley {\n  rankdir=LR;\n");
    for v in 0..graph.nodes {
        let label = if v == graph.root { "I".to_string() } else { format!("{}", v + 1) };
        out.push_str(&format!("  n{v} [label=\"{label}\"];\n"));
    }
    for e in &graph.edges {
        let style = if e.transition { " style=bold" } else { "" };
        out.push_str(&format!(
            "  n{} -> n{} [label=\"{}\"{}];\n",
            e.from,
            e.to,
            e.letter + 1,
            style
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::green::is_aperiodic;
    use crate::iso::are_isomorphic;

    fn b() -> Budget {
        Budget::default()
    }

    fn base(name: &str) -> FiniteSemigroup {
        builtins::standard_ts(name, &b()).unwrap().abstract_semigroup
    }

    /// Total deterministic graph from an edge-target table, rows by node.
    fn graph_from_rows(root: usize, rows: &[&[usize]]) -> CayleyGraph {
        let nl = rows[0].len();
        let edges = rows
            .iter()
            .enumerate()
            .flat_map(|(v, row)| {
                row.iter().enumerate().map(move |(li, &to)| CayleyEdge {
                    from: v,
                    letter: li,
                    to,
                    transition: false,
                })
            })
            .collect();
        CayleyGraph { nodes: rows.len(), root, letters: (0..nl).collect(), edges }
    }

    /// Simple paths from the root, counted as edge sequences by brute
    /// force.
    fn count_simple_paths(graph: &CayleyGraph, end: usize, on_path: &mut Vec<bool>) -> usize {
        let mut total = 1;
        for e in graph.edges.iter().filter(|e| e.from == end) {
            if !on_path[e.to] {
                on_path[e.to] = true;
                total += count_simple_paths(graph, e.to, on_path);
                on_path[e.to] = false;
            }
        }
        total
    }

    #[test]
    fn expanding_a_group_changes_nothing() {
        for n in [2usize, 3] {
            let g = builtins::cyclic_group(n, &b()).unwrap().abstract_semigroup;
            let e = rkr(&g, &b()).unwrap();
            assert!(are_isomorphic(&e.ts.abstract_semigroup, &g).is_some());
            let e = lkr(&g, &b()).unwrap();
            assert!(are_isomorphic(&e.ts.abstract_semigroup, &g).is_some());
        }
    }

    #[test]
    fn karnofsky_rhodes_states_of_the_two_element_group() {
        let z2 = builtins::cyclic_group(2, &b()).unwrap().abstract_semigroup;
        let e = rkr(&z2, &b()).unwrap();
        // root, plus each group element tagged with the unique entry edge
        assert_eq!(e.ts.states, 3);
    }

    #[test]
    fn expansions_preserve_aperiodicity_and_cover_the_base() {
        for name in ["flipflop", "constants2", "chain3"] {
            let s = base(name);
            for exp in
                [rkr(&s, &b()).unwrap(), mccammond_expansion(&s, &b()).unwrap(), lkr(&s, &b()).unwrap()]
            {
                assert!(is_aperiodic(&exp.ts.abstract_semigroup), "{name}");
                assert!(exp.ts.size() >= s.n, "{name}");
            }
        }
    }

    #[test]
    fn the_two_element_group_cycle_cuts_back_one_step() {
        let z2 = builtins::cyclic_group(2, &b()).unwrap().abstract_semigroup;
        let g = right_cayley(&z2, &b()).unwrap();
        let a = mccammond(&g, &b()).unwrap();
        // simple paths: empty, "a", "aa"
        let mut lens: Vec<usize> = a.paths.iter().map(Vec::len).collect();
        lens.sort_unstable();
        assert_eq!(lens, vec![0, 1, 2]);
        let aa = a.paths.iter().position(|p| p.len() == 2).unwrap();
        let one = a.paths.iter().position(|p| p.len() == 1).unwrap();
        assert_eq!(a.graph.edges[aa].to, one, "reading a from \"aa\" cuts back to \"a\"");
        let ts = transition_semigroup(&a.graph, &b()).unwrap();
        assert!(are_isomorphic(&ts.abstract_semigroup, &z2).is_some());
    }

    #[test]
    fn an_idempotent_letter_loops_its_own_path_state() {
        let one = builtins::cyclic_group(1, &b()).unwrap().abstract_semigroup;
        let g = right_cayley(&one, &b()).unwrap();
        let a = mccammond(&g, &b()).unwrap();
        assert_eq!(a.paths.len(), 2);
        let x = a.paths.iter().position(|p| p.len() == 1).unwrap();
        assert_eq!(a.graph.edges[x].to, x, "the prefix rule keeps the path at \"x\"");
        assert_eq!(transition_semigroup(&a.graph, &b()).unwrap().size(), 1);
    }

    #[test]
    fn automaton_states_enumerate_the_simple_paths() {
        for (name, s) in crate::pool::named_pool(&b()).unwrap() {
            let g = right_cayley(&s, &b()).unwrap();
            if g.nodes > 8 {
                continue;
            }
            let a = mccammond(&g, &b()).unwrap();
            let mut on_path = vec![false; g.nodes];
            on_path[g.root] = true;
            assert_eq!(
                a.paths.len(),
                count_simple_paths(&g, g.root, &mut on_path),
                "{name}"
            );
        }
    }

    #[test]
    fn unique_simple_paths_separate_trees_from_diamonds() {
        // two branches with idempotent tips
        let tree = graph_from_rows(0, &[&[1, 2], &[1, 1], &[2, 2]]);
        assert!(has_unique_simple_path(&tree, &b()).unwrap());
        // both branches rejoin at node 3
        let diamond = graph_from_rows(0, &[&[1, 2], &[3, 1], &[3, 2], &[3, 3]]);
        assert!(!has_unique_simple_path(&diamond, &b()).unwrap());
        // parallel edges are distinct routes
        let parallel = graph_from_rows(0, &[&[1, 1], &[1, 1]]);
        assert!(!has_unique_simple_path(&parallel, &b()).unwrap());
    }

    #[test]
    fn mccammond_automata_have_unique_simple_paths() {
        let s = base("constants2");
        let raw = right_cayley(&s, &b()).unwrap();
        assert!(!has_unique_simple_path(&raw, &b()).unwrap(), "two routes reach each right zero");
        let a = mccammond(&raw, &b()).unwrap();
        assert!(has_unique_simple_path(&a.graph, &b()).unwrap());

        let pool = crate::pool::named_pool(&b()).unwrap();
        for name in ["constants3", "flipflop", "T2", "Sym3"] {
            let s = &pool.iter().find(|(n, _)| n == name).unwrap().1;
            let kr = rkr(s, &b()).unwrap();
            let g = right_cayley(&kr.ts.abstract_semigroup, &b()).unwrap();
            let a = mccammond(&g, &b()).unwrap();
            assert!(has_unique_simple_path(&a.graph, &b()).unwrap(), "{name}");
        }
    }

    #[test]
    fn transition_semigroup_of_a_one_state_loop_is_trivial() {
        let loop1 = graph_from_rows(0, &[&[0]]);
        assert_eq!(transition_semigroup(&loop1, &b()).unwrap().size(), 1);
        let broken = CayleyGraph {
            nodes: 2,
            root: 0,
            letters: vec![0],
            edges: vec![CayleyEdge { from: 0, letter: 0, to: 1, transition: false }],
        };
        assert!(transition_semigroup(&broken, &b()).is_err());
    }

    #[test]
    fn left_expansion_mirrors_the_right_one() {
        let s = base("constants2");
        let gens: Vec<u32> = s.generator_view().iter().map(|&g| g as u32).collect();
        let op = s.opposite().with_generators(gens);
        let left = lkr(&s, &b()).unwrap();
        let right_of_op = rkr(&op, &b()).unwrap();
        assert!(are_isomorphic(
            &left.ts.abstract_semigroup,
            &right_of_op.ts.abstract_semigroup.opposite()
        )
        .is_some());
    }

    #[test]
    fn composite_expansion_chains_surjections() {
        for name in ["flipflop", "T2"] {
            let s = base(name);
            let chain = gst(&s, &b()).unwrap();
            assert!(chain.stage_sizes.iter().all(|&z| z >= s.n), "{name}");
            if is_aperiodic(&s) {
                assert!(is_aperiodic(&chain.expansion.ts.abstract_semigroup), "{name}");
            }
        }
    }

    #[test]
    fn dot_rendering_is_complete() {
        let s = base("flipflop");
        let g = right_cayley(&s, &b()).unwrap();
        let dot = cayley_dot(&g);
        assert!(dot.starts_with("digraph"));
        assert_eq!(dot.matches(" -> ").count(), g.edges.len());
        assert!(dot.contains("style=bold"), "the reset letters drop the R order");
    }

    use proptest::prelude::*;

    proptest! {
        // extend edges form a tree and cutbacks only reach ancestors, so
        // the automaton of any rooted graph keeps simple paths unique
        #[test]
        fn random_rooted_graphs_expand_to_tree_shaped_automata(
            nodes in 1usize..=6,
            letters in 1usize..=3,
            targets in proptest::collection::vec(0usize..6, 18),
        ) {
            let rows: Vec<Vec<usize>> = (0..nodes)
                .map(|v| (0..letters).map(|li| targets[v * 3 + li] % nodes).collect())
                .collect();
            let refs: Vec<&[usize]> = rows.iter().map(Vec::as_slice).collect();
            let g = graph_from_rows(0, &refs);
            let a = mccammond(&g, &b()).unwrap();
            prop_assert!(has_unique_simple_path(&a.graph, &b()).unwrap());
            let mut on_path = vec![false; g.nodes];
            on_path[g.root] = true;
            prop_assert_eq!(a.paths.len(), count_simple_paths(&g, g.root, &mut on_path));
        }
    }
}
