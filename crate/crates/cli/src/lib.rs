//! Command line front end. `run` is pure: it takes the argument vector and
//! returns the exit code and the full output, so the binary and the tests
//! share one code path. Exit codes: 0 success, 2 usage or input errors,
//! 3 budget exhaustion.

use clap::{Parser, Subcommand, ValueEnum};
use krc_core::bounds::{complexity_interval, complexity_interval_ts, depth, lower_bound_l};
use krc_core::budget::Budget;
use krc_core::classify::classify;
use krc_core::error::{Error, Result};
use krc_core::expansions::{
    cayley_dot, gst, has_unique_simple_path, lkr, mccammond, mccammond_expansion, right_cayley,
    rkr, Expansion,
};
use krc_core::green::{green, is_aperiodic};
use krc_core::inverse::{inverse_wreath_division, mcalister_reilly_components};
use krc_core::lattices::{
    from_partition, parse_weighted, render_weighted, rhodes_join, rhodes_meet, to_partition,
    PartialPartition, RhodesElement,
};
use krc_core::morphism::lprime_image;
use krc_core::pointlikes::{aperiodic_pointlikes, max_pointlike_subgroup};
use krc_core::pool::named_pool;
use krc_core::products::{divides, Division};
use krc_core::semigroup::{parse_semigroup, FiniteSemigroup};
use krc_core::structure::{classify_transitivity, gm_images, rlm, type_ii};
use krc_core::theta::{theta_exact, theta_upper_greedy, GreedyStepKind};
use krc_core::transformation::{generate_ts, parse_generators, TransformationSemigroup};
use krc_core::builtins;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "krc", version, about = "Finite semigroup structure and complexity engine")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Recorded in the report for reproducibility.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    max_elements: Option<usize>,
    #[arg(long, global = true)]
    max_states: Option<usize>,
    #[arg(long, global = true)]
    max_subsets: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExpandOp {
    Rkr,
    Lkr,
    Mc,
    Gst,
}

#[derive(Clone, Copy, ValueEnum)]
enum LatticeOp {
    Join,
    Meet,
    Leq,
    Crosssection,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify the input and bound its complexity.
    Analyze { input: String },
    /// Certified complexity interval with the bound trail.
    Bounds { input: String },
    /// Green's relations summary; `--dot` draws the J-order.
    Green {
        input: String,
        #[arg(long)]
        dot: bool,
    },
    /// The type II (weakly conjugation-closed) subsemigroup.
    Typeii { input: String },
    /// Image of the finest congruence separating the regular L-order.
    Lprime { input: String },
    /// Transitivity classification and group-mapping images.
    Gm { input: String },
    /// Action on the L-classes of the distinguished ideal.
    Rlm { input: String },
    /// Group-complexity count over aperiodic and L'-collapses.
    Theta {
        input: String,
        /// Exact search over the quotient lattice instead of the greedy
        /// alternation; only feasible for small inputs.
        #[arg(long)]
        exact: bool,
    },
    /// Maximal aperiodic-pointlike sets.
    Pointlikes { input: String },
    /// Cayley-graph expansions; `--dot` draws the expanded graph.
    Expand {
        input: String,
        #[arg(long, value_enum)]
        op: ExpandOp,
        #[arg(long)]
        dot: bool,
    },
    /// Group-weighted partition lattice operations. Elements use the
    /// compact form `1:1,2:1|3:2` (member:weight, 1-based), `-` empty,
    /// `!` contradiction.
    Lattice {
        #[arg(long, value_enum)]
        op: LatticeOp,
        /// Group the weights live in, e.g. `builtin:Z2`.
        #[arg(long)]
        group: String,
        /// Size of the weighted universe.
        #[arg(long)]
        universe: usize,
        elements: Vec<String>,
    },
    /// Inverse semigroup components and the wreath division witness.
    Inverse { input: String },
    /// Does the first semigroup divide the second?
    Divide { s: String, t: String },
}

pub fn run(args: &[String]) -> (i32, String) {
    let mut argv = vec!["krc".to_string()];
    argv.extend(args.iter().cloned());
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.to_string());
        }
    };
    let budget = Budget {
        max_elements: cli.max_elements.unwrap_or(Budget::default().max_elements),
        max_states: cli.max_states.unwrap_or(Budget::default().max_states),
        max_subsets: cli.max_subsets.unwrap_or(Budget::default().max_subsets),
        ..Budget::default()
    };
    match dispatch(&cli, &budget) {
        Ok(report) => {
            let out = match cli.format {
                Format::Json => {
                    let mut v = report;
                    attach(&mut v, "schema", json!(1));
                    attach(&mut v, "seed", json!(cli.seed));
                    serde_json::to_string_pretty(&v).expect("reports serialize") + "\n"
                }
                Format::Text => render_text(&report),
            };
            (0, out)
        }
        Err(e) => {
            let code = if e.is_budget() { 3 } else { 2 };
            (code, format!("error: {e}\n"))
        }
    }
}

fn attach(v: &mut Value, key: &str, val: Value) {
    if let Value::Object(map) = v {
        map.insert(key.to_string(), val);
    }
}

/// Text rendering: top-level keys in map (sorted) order, `dot` passed
/// through verbatim, arrays of objects as dashed lines.
fn render_text(v: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = v {
        if let Some(Value::String(dot)) = map.get("dot") {
            return dot.clone();
        }
        for (k, val) in map {
            match val {
                Value::Array(items) if items.iter().any(Value::is_object) => {
                    out.push_str(&format!("{k}:\n"));
                    for item in items {
                        out.push_str(&format!("  - {}\n", inline(item)));
                    }
                }
                Value::Object(_) => {
                    out.push_str(&format!("{k}: {}\n", inline(val)));
                }
                _ => out.push_str(&format!("{k}: {}\n", inline(val))),
            }
        }
    }
    out
}

fn inline(v: &Value) -> String {
    match v {
        Value::Object(map) => {
            let parts: Vec<String> = map.iter().map(|(k, v)| format!("{k} {}", inline(v))).collect();
            parts.join(", ")
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(inline).collect();
            format!("[{}]", parts.join(", "))
        }
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

struct Loaded {
    s: FiniteSemigroup,
    ts: Option<TransformationSemigroup>,
}

fn load(input: &str, budget: &Budget) -> Result<Loaded> {
    if let Some(name) = input.strip_prefix("builtin:") {
        match builtins::standard_ts(name, budget) {
            Ok(ts) => return Ok(Loaded { s: ts.abstract_semigroup.clone(), ts: Some(ts) }),
            Err(Error::UnknownBuiltin { .. }) => {}
            Err(e) => return Err(e),
        }
        if let Some((_, s)) = named_pool(budget)?.into_iter().find(|(n, _)| n == name) {
            return Ok(Loaded { s, ts: None });
        }
        let mut names: Vec<String> = named_pool(budget)?.into_iter().map(|(n, _)| n).collect();
        names.sort();
        return Err(Error::Invalid(format!(
            "unknown builtin '{name}'; families Zn/Symn/Tn/SISn/constantsn/chainn/flipflop, or one of {}",
            names.join(", ")
        )));
    }
    let text = std::fs::read_to_string(input)
        .map_err(|e| Error::Invalid(format!("cannot read '{input}': {e}")))?;
    match parse_semigroup(&text) {
        Ok(s) => Ok(Loaded { s, ts: None }),
        Err(table_err) => match parse_generators(&text) {
            Ok((q, gens)) => {
                let ts = generate_ts(q, &gens, budget)?;
                Ok(Loaded { s: ts.abstract_semigroup.clone(), ts: Some(ts) })
            }
            Err(_) => Err(table_err),
        },
    }
}

fn ids(v: &[usize]) -> Vec<usize> {
    v.iter().map(|&x| x + 1).collect()
}

fn dispatch(cli: &Cli, budget: &Budget) -> Result<Value> {
    match &cli.cmd {
        Cmd::Analyze { input } => analyze(input, budget),
        Cmd::Bounds { input } => bounds(input, budget),
        Cmd::Green { input, dot } => green_cmd(input, *dot, budget),
        Cmd::Typeii { input } => typeii_cmd(input, budget),
        Cmd::Lprime { input } => lprime_cmd(input, budget),
        Cmd::Gm { input } => gm_cmd(input, budget),
        Cmd::Rlm { input } => rlm_cmd(input, budget),
        Cmd::Theta { input, exact } => theta_cmd(input, *exact, budget),
        Cmd::Pointlikes { input } => pointlikes_cmd(input, budget),
        Cmd::Expand { input, op, dot } => expand_cmd(input, *op, *dot, budget),
        Cmd::Lattice { op, group, universe, elements } => {
            lattice_cmd(*op, group, *universe, elements, budget)
        }
        Cmd::Inverse { input } => inverse_cmd(input, budget),
        Cmd::Divide { s, t } => divide_cmd(s, t, budget),
    }
}

fn interval_value(loaded: &Loaded, budget: &Budget) -> Result<Value> {
    let iv = match &loaded.ts {
        Some(ts) => complexity_interval_ts(ts, budget)?,
        None => complexity_interval(&loaded.s, budget)?,
    };
    Ok(json!({
        "lower": iv.lower,
        "upper": iv.upper,
        "truncated": iv.truncated,
        "notes": iv.notes,
    }))
}

fn analyze(input: &str, budget: &Budget) -> Result<Value> {
    let loaded = load(input, budget)?;
    let s = &loaded.s;
    let c = classify(s);
    let g = green(s);
    Ok(json!({
        "command": "analyze",
        "input": input,
        "order": s.n,
        "classification": {
            "aperiodic": c.is_aperiodic,
            "band": c.is_band,
            "commutative": c.is_commutative,
            "completely_regular": c.is_completely_regular,
            "group": c.is_group,
            "inverse": c.is_inverse,
            "monoid": c.is_monoid,
            "regular": c.is_regular,
            "semilattice": c.is_semilattice,
            "subgroup_orders": c.subgroup_orders,
            "trivial": c.is_trivial,
        },
        "green": {
            "h_classes": g.h_classes.len(),
            "idempotents": g.idempotents.len(),
            "j_classes": g.j_classes.len(),
            "l_classes": g.l_classes.len(),
            "r_classes": g.r_classes.len(),
            "regular_j_classes": g.regular_j.iter().filter(|&&r| r).count(),
        },
        "complexity": interval_value(&loaded, budget)?,
    }))
}

fn bounds(input: &str, budget: &Budget) -> Result<Value> {
    let loaded = load(input, budget)?;
    let s = &loaded.s;
    let g = green(s);
    let d = depth(&g);
    let lb = lower_bound_l(s, budget)?;
    Ok(json!({
        "command": "bounds",
        "input": input,
        "order": s.n,
        "complexity": interval_value(&loaded, budget)?,
        "depth": d.depth,
        "depth_chain": ids(&d.chain),
        "lower_bound": lb.bound,
        "lower_steps": lb.steps.iter().map(|st| json!({
            "type_i_size": st.type_i_size,
            "type_ii_size": st.type_ii_size,
            "type_ii_non_aperiodic": st.type_ii_non_aperiodic,
        })).collect::<Vec<_>>(),
    }))
}

fn j_order_dot(s: &FiniteSemigroup) -> String {
    let g = green(s);
    let mut out = String::from("digraph jorder {\n  rankdir=TB;\n");
    for (j, members) in g.j_classes.iter().enumerate() {
        let reg = if g.regular_j[j] { ", regular" } else { "" };
        out.push_str(&format!(
            "  j{j} [label=\"J{} (size {}{reg})\"];\n",
            j + 1,
            members.len()
        ));
    }
    for a in 0..g.j_classes.len() {
        for b in 0..g.j_classes.len() {
            let covers = g.j_lt(a, b)
                && !(0..g.j_classes.len()).any(|c| g.j_lt(a, c) && g.j_lt(c, b));
            if covers {
                out.push_str(&format!("  j{b} -> j{a};\n"));
            }
        }
    }
    out.push_str("}\n");
    out
}

fn green_cmd(input: &str, dot: bool, budget: &Budget) -> Result<Value> {
    let loaded = load(input, budget)?;
    let s = &loaded.s;
    let g = green(s);
    let classes: Vec<Value> = g
        .j_classes
        .iter()
        .enumerate()
        .map(|(j, members)| {
            let group_order =
                g.max_subgroup.iter().enumerate().find_map(|(e, sub)| match sub {
                    Some((m, grp)) if g.j_class[g.idempotents[e]] == j && !m.is_empty() => {
                        Some(grp.n)
                    }
                    _ => None,
                });
            json!({
                "aperiodic": g.j_is_aperiodic(j),
                "group_order": group_order.unwrap_or(0),
                "j": j + 1,
                "regular": g.regular_j[j],
                "size": members.len(),
            })
        })
        .collect();
    let mut v = json!({
        "command": "green",
        "input": input,
        "order": s.n,
        "r_classes": g.r_classes.len(),
        "l_classes": g.l_classes.len(),
        "j_classes": g.j_classes.len(),
        "h_classes": g.h_classes.len(),
        "idempotents": g.idempotents.len(),
        "classes": classes,
    });
    if dot {
        attach(&mut v, "dot", json!(j_order_dot(s)));
    }
    Ok(v)
}

fn typeii_cmd(input: &str, budget: &Budget) -> Result<Value> {
    let loaded = load(input, budget)?;
    let s = &loaded.s;
    let members = type_ii(s);
    let (sub, _) = s.sub_semigroup(&members);
    Ok(json!({
        "command": "typeii",
        "input": input,
        "order": s.n,
        "size": members.len(),
        "members": ids(&members),
        "aperiodic": is_aperiodic(&sub),
    }))
}

fn lprime_cmd(input: &str, budget: &Budget) -> Result<Value> {
    let loaded = load(input, budget)?;
    let s = &loaded.s;
    let (img, map) = lprime_image(s, budget)?;
    Ok(json!({
        "command": "lprime",
        "input": input,
        "order": s.n,
        "image_order": img.abstract_semigroup.n,
        "image_aperiodic": is_aperiodic(&img.abstract_semigroup),
        "map": ids(&map),
    }))
}

fn gm_cmd(input: &str, budget: &Budget) -> Result<Value> {
    let loaded = load(input, budget)?;
    let s = &loaded.s;
    let t = classify_transitivity(s);
    let images = gm_images(s)?;
    Ok(json!({
        "command": "gm",
        "input": input,
        "order": s.n,
        "distinguished_j": t.distinguished_j.map(|j| j + 1),
        "right_faithful": t.right_faithful,
        "left_faithful": t.left_faithful,
        "group_order": t.group_order,
        "is_ggm": t.is_ggm,
        "is_gm": t.is_gm,
        "images": images.iter().map(|im| json!({
            "j": im.j + 1,
            "order": im.image.n,
        })).collect::<Vec<_>>(),
    }))
}

fn rlm_cmd(input: &str, budget: &Budget) -> Result<Value> {
    let loaded = load(input, budget)?;
    let s = &loaded.s;
    let (img, map) = rlm(s, budget)?;
    Ok(json!({
        "command": "rlm",
        "input": input,
        "order": s.n,
        "image_order": img.abstract_semigroup.n,
        "image_states": img.states,
        "image_aperiodic": is_aperiodic(&img.abstract_semigroup),
        "map": ids(&map),
    }))
}

fn theta_cmd(input: &str, exact: bool, budget: &Budget) -> Result<Value> {
    let loaded = load(input, budget)?;
    let s = &loaded.s;
    if exact {
        let (value, steps) = theta_exact(s, budget)?;
        Ok(json!({
            "command": "theta",
            "input": input,
            "order": s.n,
            "kind": "exact",
            "value": value,
            "steps": steps.iter().map(|st| json!({
                "cost": st.cost,
                "from_size": st.from_size,
                "to_size": st.to_size,
            })).collect::<Vec<_>>(),
        }))
    } else {
        let (value, steps, complete) = theta_upper_greedy(s, budget)?;
        Ok(json!({
            "command": "theta",
            "input": input,
            "order": s.n,
            "kind": "greedy",
            "value": value,
            "complete": complete,
            "steps": steps.iter().map(|st| json!({
                "kind": match st.kind {
                    GreedyStepKind::AperiodicShrink => "aperiodic-shrink",
                    GreedyStepKind::LPrimeAction => "lprime-action",
                },
                "cost": st.cost,
                "from_size": st.from_size,
                "to_size": st.to_size,
            })).collect::<Vec<_>>(),
        }))
    }
}

fn pointlikes_cmd(input: &str, budget: &Budget) -> Result<Value> {
    let loaded = load(input, budget)?;
    let s = &loaded.s;
    let pl = aperiodic_pointlikes(s, budget)?;
    let g = green(s);
    let sub = max_pointlike_subgroup(&g, &pl);
    Ok(json!({
        "command": "pointlikes",
        "input": input,
        "order": s.n,
        "count": pl.maximal.len(),
        "maximal": pl.maximal.iter().map(|m| ids(m)).collect::<Vec<_>>(),
        "largest": pl.maximal.iter().map(|m| m.len()).max().unwrap_or(0),
        "pointlike_subgroup": sub.map(|m| m.len()).unwrap_or(0),
        "all_singletons": pl.maximal.iter().all(|m| m.len() == 1),
    }))
}

fn expansion_report(input: &str, op: &str, base: &FiniteSemigroup, e: &Expansion) -> Value {
    json!({
        "command": "expand",
        "input": input,
        "op": op,
        "base_order": base.n,
        "base_aperiodic": is_aperiodic(base),
        "order": e.ts.size(),
        "states": e.ts.states,
        "aperiodic": is_aperiodic(&e.ts.abstract_semigroup),
        "surjection_audited": true,
    })
}

fn expand_cmd(input: &str, op: ExpandOp, dot: bool, budget: &Budget) -> Result<Value> {
    let loaded = load(input, budget)?;
    let s = &loaded.s;
    let (mut v, expansion) = match op {
        ExpandOp::Rkr => {
            let e = rkr(s, budget)?;
            (expansion_report(input, "rkr", s, &e), e)
        }
        ExpandOp::Lkr => {
            let e = lkr(s, budget)?;
            (expansion_report(input, "lkr", s, &e), e)
        }
        ExpandOp::Mc => {
            let e = mccammond_expansion(s, budget)?;
            let mut v = expansion_report(input, "mc", s, &e);
            let a = mccammond(&right_cayley(s, budget)?, budget)?;
            attach(&mut v, "simple_paths", json!(a.paths.len()));
            attach(
                &mut v,
                "unique_simple_path",
                json!(has_unique_simple_path(&a.graph, budget)?),
            );
            if dot {
                // the automaton state graph, not the expansion's own graph
                attach(&mut v, "dot", json!(cayley_dot(&a.graph)));
            }
            (v, e)
        }
        ExpandOp::Gst => {
            let chain = gst(s, budget)?;
            let mut v = expansion_report(input, "gst", s, &chain.expansion);
            attach(&mut v, "stage_sizes", json!(chain.stage_sizes));
            (v, chain.expansion)
        }
    };
    if dot && v.get("dot").is_none() {
        let g = right_cayley(&expansion.ts.abstract_semigroup, budget)?;
        attach(&mut v, "dot", json!(cayley_dot(&g)));
    }
    Ok(v)
}

fn render_partition(p: &PartialPartition) -> String {
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut seen: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    for (m, b) in p.block_of.iter().enumerate() {
        if let Some(b) = b {
            let next = blocks.len();
            let slot = *seen.entry(*b).or_insert(next);
            if slot == blocks.len() {
                blocks.push(Vec::new());
            }
            blocks[slot].push(m + 1);
        }
    }
    if blocks.is_empty() {
        return "-".into();
    }
    blocks
        .iter()
        .map(|b| b.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join("|")
}

fn lattice_cmd(
    op: LatticeOp,
    group: &str,
    universe: usize,
    elements: &[String],
    budget: &Budget,
) -> Result<Value> {
    let g = load(group, budget)?.s;
    if !classify(&g).is_group {
        return Err(Error::Invalid(format!("'{group}' is not a group")));
    }
    let want = match op {
        LatticeOp::Crosssection => 1,
        _ => 2,
    };
    if elements.len() != want {
        return Err(Error::Invalid(format!(
            "operation needs {want} element(s), got {}",
            elements.len()
        )));
    }
    let parsed: Vec<RhodesElement> = elements
        .iter()
        .map(|e| parse_weighted(e, &g, universe))
        .collect::<Result<_>>()?;
    let base = json!({
        "command": "lattice",
        "group": group,
        "universe": universe,
        "elements": elements,
    });
    let mut v = base;
    match op {
        LatticeOp::Join => {
            let r = rhodes_join(&parsed[0], &parsed[1])?;
            attach(&mut v, "op", json!("join"));
            attach(&mut v, "result", json!(render_weighted(&r)));
        }
        LatticeOp::Meet => {
            let r = rhodes_meet(&parsed[0], &parsed[1])?;
            attach(&mut v, "op", json!("meet"));
            attach(&mut v, "result", json!(render_weighted(&r)));
        }
        LatticeOp::Leq => {
            let m = rhodes_meet(&parsed[0], &parsed[1])?;
            attach(&mut v, "op", json!("leq"));
            attach(&mut v, "result", json!(m == parsed[0]));
        }
        LatticeOp::Crosssection => {
            let p = to_partition(&parsed[0], &g, universe)?;
            let back = from_partition(&p, &g, universe)?;
            attach(&mut v, "op", json!("crosssection"));
            attach(&mut v, "result", json!(render_partition(&p)));
            attach(&mut v, "round_trip", json!(back == parsed[0]));
        }
    }
    Ok(v)
}

fn inverse_cmd(input: &str, budget: &Budget) -> Result<Value> {
    let loaded = load(input, budget)?;
    let s = &loaded.s;
    let c = mcalister_reilly_components(s)?;
    let (w, d) = inverse_wreath_division(s, budget)?;
    let (division, reason) = match &d {
        Division::Divides { sub, .. } => ("verified".to_string(), format!("witness of order {}", sub.len())),
        Division::No { reason } => ("does-not-divide".into(), reason.clone()),
        Division::Unknown { reason } => ("unverified".into(), reason.clone()),
    };
    Ok(json!({
        "command": "inverse",
        "input": input,
        "order": s.n,
        "largest_subgroup_order": c.largest_subgroup.n,
        "idempotent_count": c.idempotent_count,
        "e_unitary": c.e_unitary,
        "fundamental_order": c.fundamental.n,
        "fundamental_already": c.fundamental_already,
        "sigma_group_order": c.sigma_group.n,
        "wreath_order": w.map(|w| w.abstract_semigroup.n),
        "division": division,
        "division_detail": reason,
    }))
}

fn divide_cmd(s_in: &str, t_in: &str, budget: &Budget) -> Result<Value> {
    let s = load(s_in, budget)?.s;
    let t = load(t_in, budget)?.s;
    let d = divides(&s, &t, budget);
    let (holds, detail) = match &d {
        Division::Divides { sub, .. } => (json!(true), format!("witness of order {}", sub.len())),
        Division::No { reason } => (json!(false), reason.clone()),
        Division::Unknown { reason } => (json!(null), reason.clone()),
    };
    Ok(json!({
        "command": "divide",
        "s": s_in,
        "t": t_in,
        "s_order": s.n,
        "t_order": t.n,
        "divides": holds,
        "detail": detail,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String) {
        let v: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        run(&v)
    }

    #[test]
    fn analyze_is_deterministic_and_exact_on_t3() {
        let (code, out) = call(&["analyze", "builtin:T3", "--format", "json"]);
        assert_eq!(code, 0, "{out}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["complexity"]["lower"], 2);
        assert_eq!(v["complexity"]["upper"], 2);
        let (code2, out2) = call(&["analyze", "builtin:T3", "--format", "json"]);
        assert_eq!(code2, 0);
        assert_eq!(out, out2, "byte-identical reruns");
    }

    #[test]
    fn exit_codes_separate_usage_and_budget() {
        let (code, _) = call(&["analyze", "builtin:NoSuchThing"]);
        assert_eq!(code, 2);
        let (code, _) = call(&["nonsense-subcommand"]);
        assert_eq!(code, 2);
        let (code, out) = call(&["theta", "builtin:T4", "--exact"]);
        assert_eq!(code, 3, "{out}");
        assert!(out.contains("budget"));
        // budget failures while constructing a builtin are not "unknown builtin"
        let (code, out) = call(&["bounds", "builtin:T4", "--max-elements", "50"]);
        assert_eq!(code, 3, "{out}");
        assert!(out.contains("budget"));
        let (code, _) = call(&["--help"]);
        assert_eq!(code, 0);
    }

    #[test]
    fn lattice_round_trips_through_the_compact_format() {
        let (code, out) = call(&[
            "lattice", "--op", "meet", "--group", "builtin:Z2", "--universe", "2",
            "1:1,2:1", "1:1,2:2", "--format", "json",
        ]);
        assert_eq!(code, 0, "{out}");
        let v: Value = serde_json::from_str(&out).unwrap();
        // singleton blocks carry the group identity, which Z2 numbers last
        assert_eq!(v["result"], "1:2|2:2");

        let (code, out) = call(&[
            "lattice", "--op", "join", "--group", "builtin:Z2", "--universe", "2",
            "1:1,2:1", "1:1,2:2",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("result: !"), "conflicting weights join to the contradiction: {out}");
    }

    #[test]
    fn expansion_dot_output_renders() {
        let (code, out) = call(&["expand", "builtin:flipflop", "--op", "rkr", "--dot"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("digraph"));
    }

    #[test]
    fn mc_expansion_reports_its_simple_paths() {
        let (code, out) = call(&["expand", "builtin:constants2", "--op", "mc", "--format", "json"]);
        assert_eq!(code, 0, "{out}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["simple_paths"], 5);
        assert_eq!(v["unique_simple_path"], true);
        let (code, out) = call(&["expand", "builtin:constants2", "--op", "mc", "--dot"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("digraph"));
    }

    #[test]
    fn inverse_report_includes_the_division_status() {
        let (code, out) = call(&["inverse", "builtin:SIS2", "--format", "json"]);
        assert_eq!(code, 0, "{out}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["division"], "verified");
        assert_eq!(v["idempotent_count"], 4);
        assert_eq!(v["largest_subgroup_order"], 2);
    }

    #[test]
    fn divide_answers_both_ways() {
        let (code, out) = call(&["divide", "builtin:flipflop", "builtin:T2", "--format", "json"]);
        assert_eq!(code, 0, "{out}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["divides"], true);
        let (_, out) = call(&["divide", "builtin:Z2", "builtin:flipflop", "--format", "json"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["divides"], false);
    }

    #[test]
    fn seed_is_recorded_in_json_reports() {
        let (_, out) = call(&["green", "builtin:Z2", "--format", "json", "--seed", "7"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["seed"], 7);
        assert_eq!(v["schema"], 1);
    }
}
