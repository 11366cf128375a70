//! Ideal structure: distinguished 0-minimal ideals, Schutzenberger action
//! faithfulness, Rees matrix coordinates, group-mapping images, the right
//! letter mapping, the type II subsemigroup, and the Tilson congruence on
//! the distinguished R-class computed two independent ways.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::green::{green, GreenData};
use crate::morphism::{quotient, rees_quotient, verify_congruence, Congruence};
use crate::semigroup::FiniteSemigroup;
use crate::transformation::{quotient_ts, Pmap, TransformationSemigroup, UNDEF};
use std::collections::HashMap;

/// The J-class whose union with zero is the unique 0-minimal regular
/// ideal: the kernel when S has no zero, otherwise the unique regular
/// J-class sitting directly above the zero.
pub fn distinguished_class(s: &FiniteSemigroup, g: &GreenData) -> Option<usize> {
    let nj = g.j_classes.len();
    match s.zero() {
        None => {
            let minimal: Vec<usize> = (0..nj)
                .filter(|&j| (0..nj).all(|k| !g.j_leq[k][j] || k == j))
                .collect();
            debug_assert_eq!(minimal.len(), 1, "the kernel is the unique minimal ideal");
            minimal.first().copied().filter(|&j| g.regular_j[j])
        }
        Some(z) => {
            let zj = g.j_class[z];
            let candidates: Vec<usize> = (0..nj)
                .filter(|&j| j != zj)
                .filter(|&j| (0..nj).all(|k| !g.j_leq[k][j] || k == j || k == zj))
                .collect();
            match candidates.as_slice() {
                [j] if g.regular_j[*j] => Some(*j),
                _ => None,
            }
        }
    }
}

/// Right action signature of x on a member set: position of m*x inside the
/// set, UNDEF where the product leaves it.
fn right_signature(s: &FiniteSemigroup, members: &[usize], pos: &HashMap<usize, usize>, x: usize) -> Vec<u32> {
    members
        .iter()
        .map(|&m| pos.get(&s.mul(m, x)).map_or(UNDEF, |&p| p as u32))
        .collect()
}

fn left_signature(s: &FiniteSemigroup, members: &[usize], pos: &HashMap<usize, usize>, x: usize) -> Vec<u32> {
    members
        .iter()
        .map(|&m| pos.get(&s.mul(x, m)).map_or(UNDEF, |&p| p as u32))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transitivity {
    pub distinguished_j: Option<usize>,
    pub right_faithful: bool,
    pub left_faithful: bool,
    pub group_order: usize,
    /// Faithful on both sides of the distinguished ideal.
    pub is_ggm: bool,
    /// GGM with a nontrivial maximal subgroup.
    pub is_gm: bool,
}

pub fn classify_transitivity(s: &FiniteSemigroup) -> Transitivity {
    let g = green(s);
    let dj = distinguished_class(s, &g);
    let mut out = Transitivity {
        distinguished_j: dj,
        right_faithful: false,
        left_faithful: false,
        group_order: 0,
        is_ggm: false,
        is_gm: false,
    };
    let Some(j) = dj else { return out };
    let members = &g.j_classes[j];
    let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let distinct = |sigs: Vec<Vec<u32>>| {
        let mut sorted = sigs;
        sorted.sort_unstable();
        sorted.windows(2).all(|w| w[0] != w[1])
    };
    out.right_faithful =
        distinct((0..s.n).map(|x| right_signature(s, members, &pos, x)).collect());
    out.left_faithful =
        distinct((0..s.n).map(|x| left_signature(s, members, &pos, x)).collect());
    out.group_order = g.max_subgroup[j].as_ref().map_or(0, |(m, _)| m.len());
    out.is_ggm = out.right_faithful && out.left_faithful;
    out.is_gm = out.is_ggm && out.group_order > 1;
    out
}

/// Rees matrix coordinates of a completely simple or 0-simple semigroup:
/// S \ {0} = A x G x B with structure matrix C: B x A -> G u {0}.
#[derive(Debug, Clone)]
pub struct ReesStructure {
    pub group: FiniteSemigroup,
    /// Elements of S forming the coordinate group H(e); index = group id.
    pub group_members: Vec<usize>,
    pub r_count: usize,
    pub l_count: usize,
    /// matrix[b][a]: group id of v_b * u_a, or None when the product is 0.
    pub matrix: Vec<Vec<Option<usize>>>,
    /// Per S-element: (a, g, b) for nonzero J-members, None for the zero.
    pub coords: Vec<Option<(usize, usize, usize)>>,
    pub has_zero: bool,
}

/// Extracts validated Rees coordinates. The input must be completely
/// simple (single J-class) or 0-simple (single nonzero J-class, regular).
pub fn rees_coordinates(s: &FiniteSemigroup) -> Result<ReesStructure> {
    let g = green(s);
    let zero = s.zero();
    let nj = g.j_classes.len();
    let expected = if zero.is_some() { 2 } else { 1 };
    if nj != expected {
        return Err(Error::NotCoordinatizable {
            why: format!("{nj} J-classes where {expected} allowed"),
        });
    }
    let j = match zero {
        Some(z) => (0..nj).find(|&c| c != g.j_class[z]).expect("two classes"),
        None => 0,
    };
    if !g.regular_j[j] {
        return Err(Error::NotCoordinatizable { why: "the nonzero class is null".into() });
    }
    let (group_members, group) = g.max_subgroup[j].clone().expect("regular class has a subgroup");
    let e = {
        let gid = group.identity.expect("maximal subgroups are groups") as usize;
        group_members[gid]
    };
    let gpos: HashMap<usize, usize> =
        group_members.iter().enumerate().map(|(i, &m)| (m, i)).collect();

    // R- and L-classes inside J, the classes of e first so that u_1 = v_1 = e
    let mut r_ids: Vec<usize> = g.j_classes[j].iter().map(|&x| g.r_class[x]).collect();
    let mut l_ids: Vec<usize> = g.j_classes[j].iter().map(|&x| g.l_class[x]).collect();
    r_ids.sort_unstable();
    r_ids.dedup();
    l_ids.sort_unstable();
    l_ids.dedup();
    let re = g.r_class[e];
    let le = g.l_class[e];
    r_ids.retain(|&r| r != re);
    r_ids.insert(0, re);
    l_ids.retain(|&l| l != le);
    l_ids.insert(0, le);
    let r_index: HashMap<usize, usize> = r_ids.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let l_index: HashMap<usize, usize> = l_ids.iter().enumerate().map(|(i, &l)| (l, i)).collect();

    // u_a in R_a meeting L(e); v_b in R(e) meeting L_b
    let pick = |rc: usize, lc: usize| -> Result<usize> {
        g.j_classes[j]
            .iter()
            .copied()
            .find(|&x| g.r_class[x] == rc && g.l_class[x] == lc)
            .ok_or_else(|| Error::NotCoordinatizable { why: "an eggbox cell is empty".into() })
    };
    let u: Vec<usize> = r_ids.iter().map(|&r| pick(r, le)).collect::<Result<_>>()?;
    let v: Vec<usize> = l_ids.iter().map(|&l| pick(re, l)).collect::<Result<_>>()?;

    let mut matrix = vec![vec![None; r_ids.len()]; l_ids.len()];
    for (b, &vb) in v.iter().enumerate() {
        for (a, &ua) in u.iter().enumerate() {
            let p = s.mul(vb, ua);
            if g.j_class[p] == j {
                let gid = gpos.get(&p).copied().ok_or_else(|| Error::NotCoordinatizable {
                    why: "a structure product lands outside the coordinate group".into(),
                })?;
                matrix[b][a] = Some(gid);
            }
        }
    }

    // coordinates: x in R_a cap L_b equals u_a * g * v_b for a unique g
    let mut coords: Vec<Option<(usize, usize, usize)>> = vec![None; s.n];
    for &x in &g.j_classes[j] {
        let a = r_index[&g.r_class[x]];
        let b = l_index[&g.l_class[x]];
        let mut found = None;
        for (gid, &gm) in group_members.iter().enumerate() {
            if s.mul(s.mul(u[a], gm), v[b]) == x {
                if found.is_some() {
                    return Err(Error::NotCoordinatizable {
                        why: "coordinates are not unique".into(),
                    });
                }
                found = Some(gid);
            }
        }
        let gid = found.ok_or_else(|| Error::NotCoordinatizable {
            why: "an element has no coordinate form".into(),
        })?;
        coords[x] = Some((a, gid, b));
    }

    let st = ReesStructure {
        group,
        group_members,
        r_count: r_ids.len(),
        l_count: l_ids.len(),
        matrix,
        coords,
        has_zero: zero.is_some(),
    };
    verify_rees(s, &st)?;
    Ok(st)
}

/// Checks the Rees multiplication rule against the actual table.
pub fn verify_rees(s: &FiniteSemigroup, st: &ReesStructure) -> Result<()> {
    let zero = s.zero();
    for x in 0..s.n {
        for y in 0..s.n {
            let p = s.mul(x, y);
            match (st.coords[x], st.coords[y]) {
                (Some((a, gx, b)), Some((a2, gy, b2))) => {
                    let expect = match st.matrix[b][a2] {
                        None => None,
                        Some(c) => {
                            Some((a, st.group.mul(st.group.mul(gx, c), gy), b2))
                        }
                    };
                    if st.coords[p] != expect {
                        return Err(Error::NotCoordinatizable {
                            why: format!("Rees product rule fails at ({x}, {y})"),
                        });
                    }
                }
                _ => {
                    if Some(p) != zero {
                        return Err(Error::NotCoordinatizable {
                            why: "a zero product left the zero".into(),
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Builds the Rees matrix semigroup M(G; A, B; C), with a zero adjoined
/// exactly when the matrix has a None entry. Every row and column must hit
/// the group so the result is regular.
pub fn rees_matrix_semigroup(
    group: &FiniteSemigroup,
    r_count: usize,
    l_count: usize,
    matrix: &[Vec<Option<usize>>],
) -> Result<FiniteSemigroup> {
    if matrix.len() != l_count || matrix.iter().any(|row| row.len() != r_count) {
        return Err(Error::Invalid("structure matrix shape mismatch".into()));
    }
    if r_count == 0 || l_count == 0 || group.identity.is_none() {
        return Err(Error::Invalid("need a group and nonempty index sets".into()));
    }
    for row in matrix {
        if row.iter().all(|c| c.is_none()) {
            return Err(Error::Invalid("a structure matrix row is all zero".into()));
        }
    }
    for a in 0..r_count {
        if matrix.iter().all(|row| row[a].is_none()) {
            return Err(Error::Invalid("a structure matrix column is all zero".into()));
        }
    }
    let ng = group.n;
    let has_zero = matrix.iter().any(|row| row.iter().any(|c| c.is_none()));
    let triple = |a: usize, gid: usize, b: usize| (a * ng + gid) * l_count + b;
    let n = r_count * ng * l_count + usize::from(has_zero);
    let zero = n - 1;
    let mut table = vec![0u32; n * n];
    let idx = |x: usize, y: usize| x * n + y;
    if has_zero {
        for x in 0..n {
            table[idx(x, zero)] = zero as u32;
            table[idx(zero, x)] = zero as u32;
        }
    }
    for a in 0..r_count {
        for gx in 0..ng {
            for b in 0..l_count {
                let x = triple(a, gx, b);
                for a2 in 0..r_count {
                    for gy in 0..ng {
                        for b2 in 0..l_count {
                            let y = triple(a2, gy, b2);
                            table[idx(x, y)] = match matrix[b][a2] {
                                None => zero as u32,
                                Some(c) => {
                                    triple(a, group.mul(group.mul(gx, c), gy), b2) as u32
                                }
                            };
                        }
                    }
                }
            }
        }
    }
    FiniteSemigroup::from_table(n, table)
}

/// Group-mapping image of S at a regular J-class: Rees-quotient away
/// everything not above the class, then identify elements with equal
/// two-sided action on the image of the class (plus zero).
#[derive(Debug, Clone)]
pub struct GmImage {
    pub j: usize,
    pub image: FiniteSemigroup,
    pub projection: Vec<usize>,
}

pub fn gm_image_at(s: &FiniteSemigroup, g: &GreenData, j: usize) -> Result<GmImage> {
    if !g.regular_j[j] {
        return Err(Error::Invalid("group-mapping images live at regular classes".into()));
    }
    let below: Vec<usize> = (0..s.n).filter(|&x| !g.j_leq[j][g.j_class[x]]).collect();
    let (cur, proj) = if below.is_empty() {
        (s.clone(), (0..s.n).collect::<Vec<usize>>())
    } else {
        rees_quotient(s, &below)?
    };
    // members of the distinguished class in the quotient, plus its zero
    let mut members: Vec<usize> = g.j_classes[j].iter().map(|&x| proj[x]).collect();
    members.sort_unstable();
    members.dedup();
    if let Some(z) = cur.zero() {
        if !members.contains(&z) {
            members.push(z);
        }
    }
    let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut sig_index: HashMap<(Vec<u32>, Vec<u32>), usize> = HashMap::new();
    let mut class_of = vec![0usize; cur.n];
    let mut reps: Vec<usize> = Vec::new();
    for x in 0..cur.n {
        let sig = (
            right_signature(&cur, &members, &pos, x),
            left_signature(&cur, &members, &pos, x),
        );
        let next = sig_index.len();
        let id = *sig_index.entry(sig).or_insert_with(|| {
            reps.push(x);
            next
        });
        class_of[x] = id;
    }
    // renumber classes by least member
    let cong = {
        let mut dsu_like = vec![usize::MAX; sig_index.len()];
        let mut next = 0;
        let mut out = vec![0usize; cur.n];
        for x in 0..cur.n {
            if dsu_like[class_of[x]] == usize::MAX {
                dsu_like[class_of[x]] = next;
                next += 1;
            }
            out[x] = dsu_like[class_of[x]];
        }
        Congruence { class_of: out }
    };
    verify_congruence(&cur, &cong)?;
    let (image, qproj) = quotient(&cur, &cong);
    let projection: Vec<usize> = (0..s.n).map(|x| qproj[proj[x]]).collect();
    Ok(GmImage { j, image, projection })
}

/// Group-mapping images at every regular J-class, ordered by class id.
pub fn gm_images(s: &FiniteSemigroup) -> Result<Vec<GmImage>> {
    let g = green(s);
    (0..g.j_classes.len())
        .filter(|&j| g.regular_j[j])
        .map(|j| gm_image_at(s, &g, j))
        .collect()
}

/// Right letter mapping: the action of S on the L-classes of the
/// distinguished 0-minimal ideal, as a quotient of the action on its
/// members. Faithful image plus projection.
pub fn rlm(s: &FiniteSemigroup, budget: &Budget) -> Result<(TransformationSemigroup, Vec<usize>)> {
    let g = green(s);
    let j = distinguished_class(s, &g).ok_or_else(|| Error::AmbientMismatch {
        why: "no distinguished regular 0-minimal ideal".into(),
    })?;
    let members = g.j_classes[j].clone();
    let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    // action of S on the members, zero products undefined
    let maps: Vec<Pmap> = (0..s.n).map(|x| Pmap(right_signature(s, &members, &pos, x))).collect();
    let l_of_member: Vec<usize> = {
        let mut l_ids: Vec<usize> = members.iter().map(|&m| g.l_class[m]).collect();
        let mut sorted = l_ids.clone();
        sorted.sort_unstable();
        sorted.dedup();
        let idx: HashMap<usize, usize> = sorted.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        l_ids.iter_mut().for_each(|l| *l = idx[l]);
        l_ids
    };
    budget.check_states(members.len())?;
    let (uniq, elem_proj) = dedup_maps(&maps);
    let n = uniq.len();
    let mut table = vec![0u32; n * n];
    let index: HashMap<&Pmap, usize> = uniq.iter().enumerate().map(|(i, p)| (p, i)).collect();
    for i in 0..n {
        for k in 0..n {
            let prod = uniq[i].compose(&uniq[k]);
            table[i * n + k] = *index.get(&prod).expect("right action is closed") as u32;
        }
    }
    let member_action = TransformationSemigroup {
        states: members.len(),
        elements: uniq,
        generator_indices: Vec::new(),
        abstract_semigroup: FiniteSemigroup::from_table_unchecked(n, table),
    };
    let (image, qproj) = quotient_ts(&member_action, &l_of_member)?;
    let projection: Vec<usize> = (0..s.n).map(|x| qproj[elem_proj[x]]).collect();
    Ok((image, projection))
}

fn dedup_maps(maps: &[Pmap]) -> (Vec<Pmap>, Vec<usize>) {
    let mut uniq: Vec<Pmap> = Vec::new();
    let mut index: HashMap<Pmap, usize> = HashMap::new();
    let mut proj = Vec::with_capacity(maps.len());
    for p in maps {
        let id = *index.entry(p.clone()).or_insert_with(|| {
            uniq.push(p.clone());
            uniq.len() - 1
        });
        proj.push(id);
    }
    (uniq, proj)
}

/// The type II subsemigroup: close the idempotents under products and weak
/// conjugation (x y x = x allows w -> x w y and w -> y w x).
pub fn type_ii(s: &FiniteSemigroup) -> Vec<usize> {
    let mut in_w = vec![false; s.n];
    let mut members: Vec<usize> = Vec::new();
    for e in s.idempotents() {
        if !in_w[e] {
            in_w[e] = true;
            members.push(e);
        }
    }
    let conj_pairs: Vec<(usize, usize)> = (0..s.n)
        .flat_map(|x| (0..s.n).map(move |y| (x, y)))
        .filter(|&(x, y)| s.mul(s.mul(x, y), x) == x)
        .collect();
    let mut head = 0;
    loop {
        // close under products with everything already in W
        while head < members.len() {
            let w = members[head];
            head += 1;
            for i in 0..members.len() {
                let m = members[i];
                for p in [s.mul(w, m), s.mul(m, w)] {
                    if !in_w[p] {
                        in_w[p] = true;
                        members.push(p);
                    }
                }
            }
        }
        let before = members.len();
        for &(x, y) in &conj_pairs {
            for i in 0..members.len() {
                let w = members[i];
                for p in [s.mul(s.mul(x, w), y), s.mul(s.mul(y, w), x)] {
                    if !in_w[p] {
                        in_w[p] = true;
                        members.push(p);
                    }
                }
            }
        }
        if members.len() == before {
            break;
        }
    }
    members.sort_unstable();
    members
}

/// Partition of the distinguished R-class used by the kernel computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TilsonPartition {
    /// Element ids of the R-class members, ascending.
    pub states: Vec<usize>,
    pub class_of: Vec<usize>,
}

fn distinguished_r_class(s: &FiniteSemigroup) -> Result<(Vec<usize>, GreenData)> {
    let g = green(s);
    let j = distinguished_class(s, &g).ok_or_else(|| Error::AmbientMismatch {
        why: "no distinguished regular 0-minimal ideal".into(),
    })?;
    let e = *g.j_classes[j]
        .iter()
        .find(|&&x| s.is_idempotent(x))
        .expect("regular class contains an idempotent");
    let mut states: Vec<usize> =
        g.j_classes[j].iter().copied().filter(|&x| g.r_class[x] == g.r_class[e]).collect();
    states.sort_unstable();
    Ok((states, g))
}

/// Least partition of the distinguished R-class that is closed under the
/// right action of S and under un-merging by injectivity: equal images of
/// equivalent states force the sources together.
pub fn tilson_congruence(s: &FiniteSemigroup) -> Result<TilsonPartition> {
    let (states, _g) = distinguished_r_class(s)?;
    let pos: HashMap<usize, usize> = states.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let k = states.len();
    let mut dsu = crate::dsu::Dsu::new(k);
    loop {
        let mut changed = false;
        for x in 0..s.n {
            // image classes under x: merge sources whose images collide
            // (injectivity), merge images of merged sources (congruence)
            let mut image_rep: HashMap<usize, usize> = HashMap::new();
            for i in 0..k {
                let t = s.mul(states[i], x);
                let Some(&ti) = pos.get(&t) else { continue };
                let root = dsu.find(i);
                let target_root = dsu.find(ti);
                match image_rep.get(&root) {
                    None => {
                        image_rep.insert(root, target_root);
                    }
                    Some(&prev) => {
                        if dsu.find(prev) != target_root {
                            changed |= dsu.union(prev, target_root);
                        }
                    }
                }
            }
            // injectivity: two roots mapping into the same class merge
            let mut by_target: HashMap<usize, usize> = HashMap::new();
            for i in 0..k {
                let t = s.mul(states[i], x);
                let Some(&ti) = pos.get(&t) else { continue };
                let source_root = dsu.find(i);
                let target_root = dsu.find(ti);
                match by_target.get(&target_root) {
                    None => {
                        by_target.insert(target_root, source_root);
                    }
                    Some(&prev) => {
                        if dsu.find(prev) != source_root {
                            changed |= dsu.union(prev, source_root);
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(TilsonPartition { states, class_of: dsu.canonical_classes() })
}

/// The same partition by the reachability characterization: states are
/// equivalent when each reaches the other under the type II subsemigroup.
pub fn tilson_via_type_ii(s: &FiniteSemigroup) -> Result<TilsonPartition> {
    let (states, _g) = distinguished_r_class(s)?;
    let pos: HashMap<usize, usize> = states.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let k = states.len();
    let w = type_ii(s);
    let mut reach = vec![vec![false; k]; k];
    for i in 0..k {
        reach[i][i] = true;
        for &t in &w {
            if let Some(&j) = pos.get(&s.mul(states[i], t)) {
                reach[i][j] = true;
            }
        }
    }
    // transitive closure
    loop {
        let mut changed = false;
        for i in 0..k {
            for j in 0..k {
                if reach[i][j] {
                    for l in 0..k {
                        if reach[j][l] && !reach[i][l] {
                            reach[i][l] = true;
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut dsu = crate::dsu::Dsu::new(k);
    for i in 0..k {
        for j in (i + 1)..k {
            if reach[i][j] && reach[j][i] {
                dsu.union(i, j);
            }
        }
    }
    Ok(TilsonPartition { states, class_of: dsu.canonical_classes() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::classify::classify;
    use crate::green::is_aperiodic;
    use crate::iso::are_isomorphic;

    fn b() -> Budget {
        Budget::default()
    }

    fn z2() -> FiniteSemigroup {
        builtins::cyclic_group(2, &b()).unwrap().abstract_semigroup
    }

    #[test]
    fn kernel_is_distinguished_without_zero() {
        let t3 = builtins::full_transformations(3, &b()).unwrap().abstract_semigroup;
        let g = green(&t3);
        let j = distinguished_class(&t3, &g).unwrap();
        assert_eq!(g.j_classes[j].len(), 3, "the constants form the kernel");
    }

    #[test]
    fn full_transformations_are_not_ggm_but_group_with_zero_is() {
        // T_3 acts unfaithfully on the left of its kernel
        let t3 = builtins::full_transformations(3, &b()).unwrap().abstract_semigroup;
        let tr = classify_transitivity(&t3);
        assert!(tr.right_faithful && !tr.left_faithful && !tr.is_gm);

        // Z_2 with a zero: both actions faithful, group nontrivial
        let z2z = {
            let sis2 = builtins::symmetric_inverse(2, &b()).unwrap().abstract_semigroup;
            let (shrunk, _, _) = crate::theta::aperiodic_shrink(&sis2, &b()).unwrap();
            shrunk
        };
        assert_eq!(z2z.n, 3);
        let tr = classify_transitivity(&z2z);
        assert!(tr.is_gm, "the two element group with zero is group mapping");
        assert_eq!(tr.group_order, 2);
    }

    #[test]
    fn adjoined_identity_breaks_group_mapping() {
        // the new identity acts on the ideal exactly like the group identity
        let sis2 = builtins::symmetric_inverse(2, &b()).unwrap().abstract_semigroup;
        let (z2z, _, _) = crate::theta::aperiodic_shrink(&sis2, &b()).unwrap();
        assert!(classify_transitivity(&z2z).is_gm);
        let tr = classify_transitivity(&z2z.adjoin_identity());
        assert!(!tr.right_faithful && !tr.is_gm);
    }

    #[test]
    fn brandt_semigroup_coordinates() {
        // B(Z_2, 2): 2x2 identity-pattern matrix over Z_2
        let e = Some(0usize);
        let matrix = vec![vec![e, None], vec![None, e]];
        let brandt = rees_matrix_semigroup(&z2(), 2, 2, &matrix).unwrap();
        assert_eq!(brandt.n, 9);
        let st = rees_coordinates(&brandt).unwrap();
        assert!(st.has_zero);
        assert_eq!((st.r_count, st.l_count), (2, 2));
        assert_eq!(st.group.n, 2);
        let c = classify(&brandt);
        assert!(c.is_inverse && !c.is_aperiodic);
    }

    #[test]
    fn rectangular_band_coordinates() {
        let trivial = builtins::cyclic_group(1, &b()).unwrap().abstract_semigroup;
        let matrix = vec![vec![Some(0), Some(0)], vec![Some(0), Some(0)], vec![Some(0), Some(0)]];
        let band = rees_matrix_semigroup(&trivial, 2, 3, &matrix).unwrap();
        assert_eq!(band.n, 6);
        let st = rees_coordinates(&band).unwrap();
        assert!(!st.has_zero);
        assert_eq!((st.r_count, st.l_count), (2, 3));
        assert!(classify(&band).is_band);
    }

    #[test]
    fn rees_rejects_zero_rows() {
        let matrix = vec![vec![None, None], vec![Some(0), Some(0)]];
        assert!(rees_matrix_semigroup(&z2(), 2, 2, &matrix).is_err());
    }

    #[test]
    fn gm_image_of_full_transformations_at_top_is_symmetric_group_with_zero() {
        let t3 = builtins::full_transformations(3, &b()).unwrap().abstract_semigroup;
        let g = green(&t3);
        // the permutation class is the one whose maximal subgroup has order 6
        let top = (0..g.j_classes.len())
            .find(|&j| g.max_subgroup[j].as_ref().map_or(0, |(m, _)| m.len()) == 6)
            .unwrap();
        let img = gm_image_at(&t3, &g, top).unwrap();
        assert_eq!(img.image.n, 7, "symmetric group plus zero");
        assert!(!is_aperiodic(&img.image));
        assert_eq!(gm_images(&t3).unwrap().len(), 3);
    }

    #[test]
    fn rlm_of_brandt_kills_the_group() {
        let e = Some(0usize);
        let matrix = vec![vec![e, None], vec![None, e]];
        let brandt = rees_matrix_semigroup(&z2(), 2, 2, &matrix).unwrap();
        let (img, proj) = rlm(&brandt, &b()).unwrap();
        assert!(img.abstract_semigroup.n < brandt.n);
        assert_eq!(proj.len(), brandt.n);
        assert!(is_aperiodic(&img.abstract_semigroup), "the letter action forgets the group");
    }

    #[test]
    fn type_ii_of_full_transformations() {
        let t3 = builtins::full_transformations(3, &b()).unwrap();
        let w = type_ii(&t3.abstract_semigroup);
        assert_eq!(w.len(), 22, "non-permutations plus the identity");
        let id = t3.abstract_semigroup.identity.unwrap() as usize;
        assert!(w.contains(&id));
        for &x in &w {
            let m = &t3.elements[x];
            assert!(m.rank() < 3 || x == id);
        }
    }

    #[test]
    fn type_ii_of_symmetric_inverse_is_idempotents() {
        let sis3 = builtins::symmetric_inverse(3, &b()).unwrap().abstract_semigroup;
        let w = type_ii(&sis3);
        let mut e = sis3.idempotents();
        e.sort_unstable();
        assert_eq!(w, e);
        assert_eq!(w.len(), 8);
    }

    #[test]
    fn type_ii_of_group_is_trivial() {
        let sym3 = builtins::symmetric_group(3, &b()).unwrap().abstract_semigroup;
        let w = type_ii(&sym3);
        assert_eq!(w, vec![sym3.identity.unwrap() as usize]);
    }

    #[test]
    fn tilson_partitions_agree_on_brandt() {
        let e = Some(0usize);
        let matrix = vec![vec![e, None], vec![None, e]];
        let brandt = rees_matrix_semigroup(&z2(), 2, 2, &matrix).unwrap();
        let a = tilson_congruence(&brandt).unwrap();
        let bpart = tilson_via_type_ii(&brandt).unwrap();
        assert_eq!(a.states, bpart.states);
        assert_eq!(a.class_of, bpart.class_of);
    }

    #[test]
    fn isomorphic_rees_reconstruction() {
        let e = Some(0usize);
        let matrix = vec![vec![e, None], vec![None, e]];
        let brandt = rees_matrix_semigroup(&z2(), 2, 2, &matrix).unwrap();
        let st = rees_coordinates(&brandt).unwrap();
        let matrix2: Vec<Vec<Option<usize>>> = st.matrix.clone();
        let rebuilt = rees_matrix_semigroup(&st.group, st.r_count, st.l_count, &matrix2).unwrap();
        assert!(are_isomorphic(&brandt, &rebuilt).is_some());
    }
}
