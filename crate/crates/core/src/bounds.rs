//! Complexity bounds. Upper bounds come from the depth of the non-aperiodic
//! J-class order, the kernel size of a faithful action, and chains of
//! aperiodic and L-class collapses. Lower bounds come from descending chains
//! of absolute type I subsemigroups alternating with their type II kernels.

use crate::budget::Budget;
use crate::classify::classify;
use crate::error::{Error, Result};
use crate::green::{green, is_aperiodic, GreenData};
use crate::iso::IsoMemo;
use crate::morphism::{classify_morphism, lprime_image};
use crate::semigroup::FiniteSemigroup;
use crate::structure::{gm_images, rlm, type_ii};
use crate::theta::{aperiodic_shrink, theta_exact, theta_upper_greedy};
use crate::transformation::{degree, TransformationSemigroup};
use serde::Serialize;
use std::collections::HashSet;

/// Longest J-chain weighted by non-aperiodic classes, with a witness chain
/// listing the non-aperiodic class ids from top to bottom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DepthInfo {
    pub depth: usize,
    pub chain: Vec<usize>,
}

pub fn depth(g: &GreenData) -> DepthInfo {
    let nj = g.j_classes.len();
    let weight = |j: usize| usize::from(!g.j_is_aperiodic(j));
    let mut dp = vec![usize::MAX; nj];
    let mut down = vec![usize::MAX; nj];

    fn solve(
        j: usize,
        g: &GreenData,
        weight: &dyn Fn(usize) -> usize,
        dp: &mut Vec<usize>,
        down: &mut Vec<usize>,
    ) -> usize {
        if dp[j] != usize::MAX {
            return dp[j];
        }
        dp[j] = weight(j); // settles self-recursion; the order is acyclic
        let mut best = 0;
        for k in 0..g.j_classes.len() {
            if k != j && g.j_leq[k][j] {
                let v = solve(k, g, weight, dp, down);
                if v > best {
                    best = v;
                    down[j] = k;
                }
            }
        }
        dp[j] = weight(j) + best;
        dp[j]
    }

    let mut top = 0;
    let mut depth = 0;
    for j in 0..nj {
        let v = solve(j, g, &weight, &mut dp, &mut down);
        if v > depth {
            depth = v;
            top = j;
        }
    }
    let mut chain = Vec::new();
    if depth > 0 {
        let mut j = top;
        loop {
            if weight(j) == 1 {
                chain.push(j);
            }
            if down[j] == usize::MAX {
                break;
            }
            j = down[j];
        }
    }
    DepthInfo { depth, chain }
}

/// The order on L-classes: a <= b when the members of a lie in S^1 b.
fn l_class_order(s: &FiniteSemigroup, g: &GreenData) -> Vec<Vec<bool>> {
    let nl = g.l_classes.len();
    let mut leq = vec![vec![false; nl]; nl];
    for (b, class) in g.l_classes.iter().enumerate() {
        let y = class[0];
        leq[g.l_class[y]][b] = true;
        for x in 0..s.n {
            leq[g.l_class[s.mul(x, y)]][b] = true;
        }
    }
    leq
}

/// Unions of maximal chains in the L-class order, one member set per chain.
/// Enumeration stops against the subset budget.
fn maximal_l_chain_unions(s: &FiniteSemigroup, g: &GreenData, budget: &Budget) -> Result<Vec<Vec<usize>>> {
    let leq = l_class_order(s, g);
    let nl = g.l_classes.len();
    let lt = |a: usize, b: usize| a != b && leq[a][b];
    let covers: Vec<Vec<usize>> = (0..nl)
        .map(|b| {
            (0..nl)
                .filter(|&a| lt(a, b) && !(0..nl).any(|c| lt(a, c) && lt(c, b)))
                .collect()
        })
        .collect();
    let maximal: Vec<usize> = (0..nl).filter(|&b| !(0..nl).any(|c| lt(b, c))).collect();

    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<(usize, Vec<usize>)> = maximal.into_iter().map(|m| (m, vec![m])).collect();
    while let Some((at, chain)) = stack.pop() {
        if covers[at].is_empty() {
            let mut members: Vec<usize> =
                chain.iter().flat_map(|&c| g.l_classes[c].iter().copied()).collect();
            members.sort_unstable();
            out.push(members);
            budget.check_subsets(out.len())?;
            continue;
        }
        for &a in &covers[at] {
            let mut next = chain.clone();
            next.push(a);
            stack.push((a, next));
        }
    }
    Ok(out)
}

/// Whether some maximal chain of L-classes generates the whole semigroup.
pub fn is_absolute_type_i(s: &FiniteSemigroup, budget: &Budget) -> Result<bool> {
    let g = green(s);
    for members in maximal_l_chain_unions(s, &g, budget)? {
        if s.closure(&members).len() == s.n {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowerStep {
    pub type_i_size: usize,
    pub type_ii_size: usize,
    pub type_ii_non_aperiodic: bool,
}

/// Lower bound from an alternating chain: pick a non-aperiodic absolute
/// type I subsemigroup, descend to its type II kernel, repeat.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowerBoundL {
    pub bound: usize,
    /// One entry per chain step. May be shorter than the bound when a
    /// memoized subresult supplied the tail.
    pub steps: Vec<LowerStep>,
    /// Members of the first chosen subsemigroup, in ambient element ids.
    pub witness: Vec<usize>,
}

/// Candidate subsemigroups: the whole semigroup, maximal L-chain closures,
/// and closures of generator sets up to the budget's generator cap.
fn type_i_candidates(s: &FiniteSemigroup, budget: &Budget) -> Result<Vec<Vec<usize>>> {
    let g = green(s);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut push = |members: Vec<usize>, out: &mut Vec<Vec<usize>>| {
        if seen.insert(members.clone()) {
            out.push(members);
        }
    };
    push((0..s.n).collect(), &mut out);
    for members in maximal_l_chain_unions(s, &g, budget)? {
        push(s.closure(&members), &mut out);
    }
    let cap = budget.gen_cap.min(s.n);
    let mut subset: Vec<usize> = Vec::new();
    let mut count = 0usize;
    fn enumerate(
        start: usize,
        s: &FiniteSemigroup,
        cap: usize,
        subset: &mut Vec<usize>,
        count: &mut usize,
        budget: &Budget,
        push: &mut dyn FnMut(Vec<usize>),
    ) -> Result<()> {
        if !subset.is_empty() {
            *count += 1;
            budget.check_subsets(*count)?;
            push(s.closure(subset));
        }
        if subset.len() == cap {
            return Ok(());
        }
        for x in start..s.n {
            subset.push(x);
            enumerate(x + 1, s, cap, subset, count, budget, push)?;
            subset.pop();
        }
        Ok(())
    }
    enumerate(0, s, cap, &mut subset, &mut count, budget, &mut |m| push(m, &mut out))?;
    Ok(out)
}

pub fn lower_bound_l(s: &FiniteSemigroup, budget: &Budget) -> Result<LowerBoundL> {
    let mut memo: IsoMemo<usize> = IsoMemo::default();
    lower_rec(s, budget, &mut memo)
}

fn lower_rec(s: &FiniteSemigroup, budget: &Budget, memo: &mut IsoMemo<usize>) -> Result<LowerBoundL> {
    if is_aperiodic(s) {
        return Ok(LowerBoundL { bound: 0, steps: Vec::new(), witness: Vec::new() });
    }
    if let Some(&bound) = memo.get(s) {
        return Ok(LowerBoundL { bound, steps: Vec::new(), witness: Vec::new() });
    }
    let mut best = LowerBoundL { bound: 0, steps: Vec::new(), witness: Vec::new() };
    for members in type_i_candidates(s, budget)? {
        let (t, ambient) = s.sub_semigroup(&members);
        if is_aperiodic(&t) || !is_absolute_type_i(&t, budget)? {
            continue;
        }
        let w_members = type_ii(&t);
        let (w, _) = t.sub_semigroup(&w_members);
        let w_non_aperiodic = !is_aperiodic(&w);
        // the kernel of a whole non-aperiodic chain stage must descend;
        // without progress the step still witnesses one group
        let sub = if w.n < t.n {
            lower_rec(&w, budget, memo)?
        } else {
            LowerBoundL { bound: 0, steps: Vec::new(), witness: Vec::new() }
        };
        if 1 + sub.bound > best.bound {
            let mut steps = vec![LowerStep {
                type_i_size: t.n,
                type_ii_size: w.n,
                type_ii_non_aperiodic: w_non_aperiodic,
            }];
            steps.extend(sub.steps);
            best = LowerBoundL { bound: 1 + sub.bound, steps, witness: ambient };
        }
    }
    memo.insert(s.clone(), best.bound);
    Ok(best)
}

/// Certified complexity interval.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexityInterval {
    pub lower: usize,
    pub upper: usize,
    /// Some probe hit a budget cap; the interval is still sound but may be
    /// looser than the engine could otherwise prove.
    pub truncated: bool,
    /// Human-readable trail of the rules that produced the bounds.
    pub notes: Vec<String>,
}

fn soften<T>(r: Result<T>, truncated: &mut bool) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_budget() => {
            *truncated = true;
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

pub fn complexity_interval(s: &FiniteSemigroup, budget: &Budget) -> Result<ComplexityInterval> {
    let mut memo: IsoMemo<(usize, usize, bool)> = IsoMemo::default();
    interval_rec(s, None, budget, &mut memo)
}

/// Interval for a transformation semigroup; the kernel-class degree of the
/// given faithful action joins the upper bound candidates.
pub fn complexity_interval_ts(
    ts: &TransformationSemigroup,
    budget: &Budget,
) -> Result<ComplexityInterval> {
    let mut memo: IsoMemo<(usize, usize, bool)> = IsoMemo::default();
    interval_rec(&ts.abstract_semigroup, Some(degree(ts)), budget, &mut memo)
}

fn interval_rec(
    s: &FiniteSemigroup,
    action_degree: Option<usize>,
    budget: &Budget,
    memo: &mut IsoMemo<(usize, usize, bool)>,
) -> Result<ComplexityInterval> {
    let mut notes: Vec<String> = Vec::new();
    if is_aperiodic(s) {
        return Ok(ComplexityInterval {
            lower: 0,
            upper: 0,
            truncated: false,
            notes: vec!["aperiodic".into()],
        });
    }
    if let Some(&(lower, upper, truncated)) = memo.get(s) {
        return Ok(ComplexityInterval {
            lower,
            upper,
            truncated,
            notes: vec!["memoized isomorphic result".into()],
        });
    }
    let mut truncated = false;

    // aperiodic collapses preserve complexity exactly
    let (shrunk, _, changed) = aperiodic_shrink(s, budget)?;
    let cur = if changed {
        notes.push(format!("aperiodic collapse {} -> {} elements", s.n, shrunk.n));
        shrunk
    } else {
        s.clone()
    };
    debug_assert!(!is_aperiodic(&cur));

    let finish = |lower: usize,
                  upper: usize,
                  truncated: bool,
                  notes: Vec<String>,
                  memo: &mut IsoMemo<(usize, usize, bool)>|
     -> Result<ComplexityInterval> {
        if lower > upper {
            return Err(Error::Invalid(format!(
                "bound inversion: lower {lower} exceeds upper {upper}"
            )));
        }
        memo.insert(s.clone(), (lower, upper, truncated));
        Ok(ComplexityInterval { lower, upper, truncated, notes })
    };

    // exact rules
    let cls = classify(&cur);
    if cls.is_inverse {
        notes.push("inverse and not aperiodic: exactly one group layer".into());
        return finish(1, 1, truncated, notes, memo);
    }
    {
        let w = type_ii(&cur);
        let (wsub, _) = cur.sub_semigroup(&w);
        if is_aperiodic(&wsub) {
            notes.push(format!("type II subsemigroup ({} elements) is aperiodic", wsub.n));
            return finish(1, 1, truncated, notes, memo);
        }
    }
    if let Some((lp, proj)) = soften(lprime_image(&cur, budget), &mut truncated)? {
        let lp = lp.abstract_semigroup;
        if is_aperiodic(&lp) {
            let mc = classify_morphism(&cur, &lp, &proj, None);
            debug_assert!(!mc.aperiodic, "aperiodic collapse already ran");
            notes.push(format!("action on regular L-classes ({} elements) is aperiodic", lp.n));
            return finish(1, 1, truncated, notes, memo);
        }
    }
    if cls.is_completely_regular && cur.n <= budget.theta_cap {
        if let Some((t, steps)) = soften(theta_exact(&cur, budget), &mut truncated)? {
            notes.push(format!(
                "completely regular: L-chain length {t} is exact ({} steps)",
                steps.len()
            ));
            return finish(t, t, truncated, notes, memo);
        }
    }

    // general bounds; every probe may be skipped by the budget
    let mut lower = 1;
    let mut upper = usize::MAX;

    let g = green(&cur);
    let d = depth(&g);
    upper = upper.min(d.depth);
    notes.push(format!("depth bound {} via J-chain {:?}", d.depth, d.chain));
    if let Some(deg) = action_degree {
        if deg < upper {
            upper = deg;
            notes.push(format!("action kernel degree bound {deg}"));
        }
    }

    if let Some(lb) = soften(lower_bound_l(&cur, budget), &mut truncated)? {
        if lb.bound > lower {
            lower = lb.bound;
            notes.push(format!(
                "type I chain of length {} (first stage {} elements)",
                lb.bound,
                lb.witness.len()
            ));
        }
    }
    if lower == upper {
        return finish(lower, upper, truncated, notes, memo);
    }

    // proper quotient recursions: quotients never raise complexity, and a
    // collapse that only merges equal-image L-classes costs at most one
    if let Some((lp, proj)) = soften(lprime_image(&cur, budget), &mut truncated)? {
        let lp = lp.abstract_semigroup;
        if lp.n < cur.n {
            let mc = classify_morphism(&cur, &lp, &proj, None);
            let cost = usize::from(!mc.aperiodic);
            let sub = interval_rec(&lp, None, budget, memo)?;
            truncated |= sub.truncated;
            lower = lower.max(sub.lower);
            upper = upper.min(sub.upper + cost);
            notes.push(format!(
                "regular L-class action quotient ({} elements): [{}, {}] at cost {}",
                lp.n, sub.lower, sub.upper, cost
            ));
        }
    }
    if lower < upper {
        if let Some(images) = soften(gm_images(&cur), &mut truncated)? {
            for img in images {
                if img.image.n < cur.n && !is_aperiodic(&img.image) {
                    let sub = interval_rec(&img.image, None, budget, memo)?;
                    truncated |= sub.truncated;
                    if sub.lower > lower {
                        lower = sub.lower;
                        notes.push(format!(
                            "group-mapping image at class {} ({} elements) forces lower {}",
                            img.j, img.image.n, sub.lower
                        ));
                    }
                    if lower == upper {
                        break;
                    }
                }
            }
        }
    }
    if lower < upper {
        match rlm(&cur, budget) {
            Ok((image, proj)) => {
                let image = image.abstract_semigroup;
                if image.n < cur.n {
                    let mc = classify_morphism(&cur, &image, &proj, None);
                    let sub = interval_rec(&image, None, budget, memo)?;
                    truncated |= sub.truncated;
                    lower = lower.max(sub.lower);
                    if mc.aperiodic || mc.l_prime {
                        let cost = usize::from(!mc.aperiodic);
                        upper = upper.min(sub.upper + cost);
                    }
                    notes.push(format!(
                        "letter action on the 0-minimal ideal ({} elements): [{}, {}]",
                        image.n, sub.lower, sub.upper
                    ));
                }
            }
            Err(e) if e.is_budget() => truncated = true,
            Err(Error::AmbientMismatch { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    if lower < upper {
        if let Some((t, _, complete)) = soften(theta_upper_greedy(&cur, budget), &mut truncated)? {
            if complete && t < upper {
                upper = t;
                notes.push(format!("greedy collapse chain bound {t}"));
            }
        }
    }
    if lower < upper && cur.n <= budget.theta_cap {
        if let Some((t, _)) = soften(theta_exact(&cur, budget), &mut truncated)? {
            if t < upper {
                upper = t;
                notes.push(format!("exact collapse chain bound {t}"));
            }
        }
    }
    if upper == usize::MAX {
        return Err(Error::Invalid("no upper bound rule applied".into()));
    }
    finish(lower, upper, truncated, notes, memo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::iso::are_isomorphic;
    use crate::pool;
    use crate::transformation::Pmap;

    fn b() -> Budget {
        Budget::default()
    }

    fn abs(name: &str) -> FiniteSemigroup {
        builtins::standard_ts(name, &b()).unwrap().abstract_semigroup
    }

    #[test]
    fn depth_counts_non_aperiodic_j_levels() {
        for (name, want) in [("T3", 2), ("SIS3", 2), ("Z6", 1), ("flipflop", 0), ("T2", 1)] {
            let s = abs(name);
            let g = green(&s);
            let d = depth(&g);
            assert_eq!(d.depth, want, "{name}");
            assert_eq!(d.chain.len(), want, "{name} witness length");
        }
    }

    #[test]
    fn groups_are_absolute_type_i_and_right_zeros_are_not() {
        assert!(is_absolute_type_i(&abs("Z2"), &b()).unwrap());
        assert!(is_absolute_type_i(&abs("Sym3"), &b()).unwrap());
        assert!(is_absolute_type_i(&abs("T2"), &b()).unwrap());
        assert!(!is_absolute_type_i(&abs("flipflop"), &b()).unwrap());
        assert!(!is_absolute_type_i(&abs("constants2"), &b()).unwrap());
    }

    #[test]
    fn lower_bound_of_cyclic_group_is_one() {
        let lb = lower_bound_l(&abs("Z2"), &b()).unwrap();
        assert_eq!(lb.bound, 1);
        assert_eq!(lb.steps.len(), 1);
        assert!(!lb.steps[0].type_ii_non_aperiodic);
    }

    #[test]
    fn lower_bound_of_symmetric_inverse_three_is_one() {
        let lb = lower_bound_l(&abs("SIS3"), &b()).unwrap();
        assert_eq!(lb.bound, 1);
    }

    #[test]
    fn lower_bound_of_full_transformations_three_is_two() {
        let t3 = builtins::full_transformations(3, &b()).unwrap();
        let s = &t3.abstract_semigroup;
        // the witness chain exists concretely: the type II kernel holds a
        // copy of the full transformation monoid on two states
        let w_members = type_ii(s);
        assert_eq!(w_members.len(), 22);
        let (w, ambient) = s.sub_semigroup(&w_members);
        let swapish = t3.elements.iter().position(|m| m == &Pmap(vec![1, 0, 1])).unwrap();
        let constant = t3.elements.iter().position(|m| m == &Pmap(vec![0, 0, 0])).unwrap();
        let inside: Vec<usize> = [swapish, constant]
            .iter()
            .map(|x| ambient.iter().position(|&a| a == *x).unwrap())
            .collect();
        let (t2copy, _) = w.sub_semigroup(&w.closure(&inside));
        assert!(are_isomorphic(&t2copy, &abs("T2")).is_some());
        assert!(!is_aperiodic(&t2copy));
        assert!(is_absolute_type_i(&t2copy, &b()).unwrap());

        let lb = lower_bound_l(s, &b()).unwrap();
        assert_eq!(lb.bound, 2);
        assert_eq!(lb.steps[0].type_i_size, 27, "the whole monoid opens the chain");
        assert!(lb.steps[0].type_ii_non_aperiodic);
    }

    #[test]
    fn interval_is_exact_on_the_known_pool() {
        for (name, s, want) in pool::known_complexity_pool(&b()).unwrap() {
            let iv = complexity_interval(&s, &b()).unwrap();
            assert_eq!((iv.lower, iv.upper), (want, want), "{name}: {:?}", iv.notes);
            assert!(!iv.truncated, "{name}");
        }
    }

    #[test]
    fn interval_uses_action_degree() {
        let sis2 = builtins::symmetric_inverse(2, &b()).unwrap();
        let iv = complexity_interval_ts(&sis2, &b()).unwrap();
        assert_eq!((iv.lower, iv.upper), (1, 1));
    }

    #[test]
    fn gm_pool_intervals_are_exact_at_one() {
        for (name, s) in pool::gm_pool(&b()).unwrap() {
            let iv = complexity_interval(&s, &b()).unwrap();
            assert_eq!((iv.lower, iv.upper), (1, 1), "{name}: {:?}", iv.notes);
        }
    }
}
