//! Inverse semigroup theory: the least group congruence, E-unitarity, the
//! Munn kernel, and a divison witness into a semilattice-by-group wreath
//! product in the McAlister-Reilly style.

use crate::budget::Budget;
use crate::classify::{is_group, is_inverse};
use crate::error::{Error, Result};
use crate::green::green;
use crate::morphism::{congruence_from_pairs, quotient, verify_congruence, Congruence};
use crate::products::{divides, verify_division, wreath, Division};
use crate::semigroup::FiniteSemigroup;
use crate::transformation::{generate_ts, right_regular, Pmap, TransformationSemigroup};
use std::collections::HashMap;

fn require_inverse(s: &FiniteSemigroup) -> Result<()> {
    if is_inverse(s) {
        Ok(())
    } else {
        Err(Error::Invalid("not an inverse semigroup".into()))
    }
}

/// The inverse of each element: the unique y with xyx = x and yxy = y.
pub fn inverses(s: &FiniteSemigroup) -> Result<Vec<usize>> {
    require_inverse(s)?;
    (0..s.n)
        .map(|x| {
            let mut found = (0..s.n)
                .filter(|&y| s.mul(s.mul(x, y), x) == x && s.mul(s.mul(y, x), y) == y);
            match (found.next(), found.next()) {
                (Some(y), None) => Ok(y),
                _ => Err(Error::Invalid(format!("element {} lacks a unique inverse", x + 1))),
            }
        })
        .collect()
}

/// Least group congruence: the smallest congruence collapsing the
/// idempotents. The quotient is checked to be a group.
pub fn sigma_congruence(s: &FiniteSemigroup) -> Result<Congruence> {
    require_inverse(s)?;
    let e = s.idempotents();
    let pairs: Vec<(usize, usize)> = e.windows(2).map(|w| (w[0], w[1])).collect();
    Ok(congruence_from_pairs(s, &pairs))
}

/// Maximum group image, with the projection map.
pub fn max_group_image(s: &FiniteSemigroup) -> Result<(FiniteSemigroup, Vec<usize>)> {
    let sigma = sigma_congruence(s)?;
    let (img, map) = quotient(s, &sigma);
    if !is_group(&img) {
        return Err(Error::Invalid("collapsing the idempotents must yield a group".into()));
    }
    Ok((img, map))
}

/// E-unitarity, computed two ways and cross-checked: directly (ex idempotent
/// forces x idempotent) and as the idempotents forming a full class of the
/// least group congruence.
pub fn is_e_unitary(s: &FiniteSemigroup) -> Result<bool> {
    require_inverse(s)?;
    let e = s.idempotents();
    let is_e = |x: usize| s.is_idempotent(x);
    let direct = e
        .iter()
        .all(|&f| (0..s.n).all(|x| !is_e(s.mul(f, x)) || is_e(x)));

    let sigma = sigma_congruence(s)?;
    let kernel_class = sigma.class_of[e[0]];
    let via_sigma =
        (0..s.n).all(|x| (sigma.class_of[x] == kernel_class) == is_e(x));

    if direct != via_sigma {
        return Err(Error::Invalid("E-unitarity checks disagree".into()));
    }
    Ok(direct)
}

/// Munn kernel: the maximum idempotent-separating congruence, elements
/// identified when conjugation by them agrees on every idempotent.
pub fn munn_congruence(s: &FiniteSemigroup) -> Result<Congruence> {
    let inv = inverses(s)?;
    let e = s.idempotents();
    let mut sig_class: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut class_of = vec![0usize; s.n];
    for x in 0..s.n {
        let sig: Vec<usize> = e.iter().map(|&f| s.mul(s.mul(inv[x], f), x)).collect();
        let next = sig_class.len();
        class_of[x] = *sig_class.entry(sig).or_insert(next);
    }
    let cong = Congruence { class_of };
    verify_congruence(s, &cong)?;
    for (i, &a) in e.iter().enumerate() {
        for &b in &e[i + 1..] {
            if cong.class_of[a] == cong.class_of[b] {
                return Err(Error::Invalid("Munn kernel must separate idempotents".into()));
            }
        }
    }
    Ok(cong)
}

/// Fundamental image: the quotient by the Munn kernel.
pub fn fundamental_image(s: &FiniteSemigroup) -> Result<(FiniteSemigroup, Vec<usize>)> {
    let mu = munn_congruence(s)?;
    Ok(quotient(s, &mu))
}

pub fn is_fundamental(s: &FiniteSemigroup) -> Result<bool> {
    Ok(munn_congruence(s)?.is_diagonal())
}

#[derive(Debug, Clone)]
pub struct InverseComponents {
    /// Largest maximal subgroup, the group coordinate of the wreath witness.
    pub largest_subgroup: FiniteSemigroup,
    pub largest_subgroup_members: Vec<usize>,
    pub idempotent_count: usize,
    pub fundamental: FiniteSemigroup,
    pub fundamental_map: Vec<usize>,
    pub sigma_group: FiniteSemigroup,
    pub sigma_map: Vec<usize>,
    pub e_unitary: bool,
    pub fundamental_already: bool,
}

/// The McAlister-Reilly style components of an inverse semigroup: its
/// largest subgroup, idempotent semilattice size, fundamental image, and
/// maximum group image.
pub fn mcalister_reilly_components(s: &FiniteSemigroup) -> Result<InverseComponents> {
    require_inverse(s)?;
    let g = green(s);
    let (members, grp) = g
        .max_subgroup
        .iter()
        .flatten()
        .max_by_key(|(m, _)| m.len())
        .map(|(m, h)| (m.clone(), h.clone()))
        .ok_or_else(|| Error::Invalid("no subgroup found".into()))?;
    let (fundamental, fundamental_map) = fundamental_image(s)?;
    let (sigma_group, sigma_map) = max_group_image(s)?;
    Ok(InverseComponents {
        largest_subgroup: grp,
        largest_subgroup_members: members,
        idempotent_count: s.idempotents().len(),
        fundamental_already: fundamental.n == s.n,
        fundamental,
        fundamental_map,
        sigma_group,
        sigma_map,
        e_unitary: is_e_unitary(s)?,
    })
}

/// Attempts to verify the classical division of an inverse semigroup into
/// a wreath product of its idempotent semilattice under its largest
/// subgroup. The witness, when found, is re-checked; `Unknown` means the
/// wreath or the bounded search ran out of budget, not that the division
/// fails. The wreath order accompanies the verdict when the product fit.
pub fn inverse_wreath_division(
    s: &FiniteSemigroup,
    budget: &Budget,
) -> Result<(Option<TransformationSemigroup>, Division)> {
    require_inverse(s)?;
    let comps = mcalister_reilly_components(s)?;
    let (grp, _) = s.sub_semigroup(&comps.largest_subgroup_members);
    let rr = right_regular(&grp, budget)?;

    let e = s.idempotents();
    let pos: HashMap<usize, u32> =
        e.iter().enumerate().map(|(i, &f)| (f, i as u32)).collect();
    let gens: Vec<Pmap> = e
        .iter()
        .map(|&f| Pmap(e.iter().map(|&st| pos[&s.mul(st, f)]).collect()))
        .collect();
    let semilattice = generate_ts(e.len(), &gens, budget)?;

    let w = match wreath(&semilattice, &rr, budget) {
        Ok(w) => w,
        Err(e) if e.is_budget() => {
            let reason = format!("wreath product does not fit the budget: {e}");
            return Ok((None, Division::Unknown { reason }));
        }
        Err(e) => return Err(e),
    };
    let d = divides(s, &w.abstract_semigroup, budget);
    if let Division::Divides { sub, map } = &d {
        verify_division(s, &w.abstract_semigroup, sub, map)?;
    }
    Ok((Some(w), d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::iso::are_isomorphic;
    use crate::morphism::lprime_image;
    use crate::pool;

    fn b() -> Budget {
        Budget::default()
    }

    fn sis2() -> FiniteSemigroup {
        builtins::symmetric_inverse(2, &b()).unwrap().abstract_semigroup
    }

    #[test]
    fn group_image_collapses_to_the_expected_groups() {
        let (img, _) = max_group_image(&sis2()).unwrap();
        assert_eq!(img.n, 1, "a zero forces the group image to be trivial");

        let cliff = pool::clifford_z4_over_z2().unwrap();
        let (img, map) = max_group_image(&cliff).unwrap();
        assert_eq!(img.n, 2, "the parity survives");
        assert!(img.identity.is_some());
        assert_eq!(map.len(), cliff.n);

        let z6 = builtins::cyclic_group(6, &b()).unwrap().abstract_semigroup;
        let (img, _) = max_group_image(&z6).unwrap();
        assert_eq!(img.n, 6, "a group is its own group image");
    }

    #[test]
    fn e_unitarity_matches_the_classical_examples() {
        assert!(is_e_unitary(&builtins::cyclic_group(2, &b()).unwrap().abstract_semigroup).unwrap());
        let chain = builtins::standard_ts("chain2", &b()).unwrap().abstract_semigroup;
        assert!(is_e_unitary(&chain).unwrap(), "semilattices are E-unitary");
        assert!(!is_e_unitary(&sis2()).unwrap(), "the zero absorbs non-idempotents");
        assert!(!is_e_unitary(&pool::clifford_z4_over_z2().unwrap()).unwrap());
    }

    #[test]
    fn fundamental_image_matches_the_lprime_quotient() {
        for s in [
            sis2(),
            pool::clifford_z4_over_z2().unwrap(),
            builtins::cyclic_group(4, &b()).unwrap().abstract_semigroup,
            builtins::standard_ts("chain3", &b()).unwrap().abstract_semigroup,
        ] {
            let (fund, _) = fundamental_image(&s).unwrap();
            let (lpr, _) = lprime_image(&s, &b()).unwrap();
            assert!(
                are_isomorphic(&fund, &lpr.abstract_semigroup).is_some(),
                "Munn quotient and the regular-L collapse must agree, sizes {} vs {}",
                fund.n,
                lpr.abstract_semigroup.n
            );
        }
    }

    #[test]
    fn symmetric_inverse_components() {
        let c = mcalister_reilly_components(&sis2()).unwrap();
        assert_eq!(c.largest_subgroup.n, 2, "the unit group is the symmetric group");
        assert_eq!(c.idempotent_count, 4);
        assert!(are_isomorphic(&c.fundamental, &sis2()).is_some(), "already fundamental");
        assert!(c.fundamental_already);
        assert!(!c.e_unitary);
        assert_eq!(c.sigma_group.n, 1);

        let c = mcalister_reilly_components(&pool::clifford_z4_over_z2().unwrap()).unwrap();
        assert_eq!(c.largest_subgroup.n, 4);
        assert_eq!(c.idempotent_count, 2);
        assert!(!c.fundamental_already, "the chain of groups collapses to its semilattice");
        assert_eq!(c.fundamental.n, 2);
    }

    #[test]
    fn wreath_witness_covers_the_symmetric_inverse_monoid() {
        let s = sis2();
        let (w, d) = inverse_wreath_division(&s, &b()).unwrap();
        let w = w.expect("the wreath fits for a seven element monoid");
        match &d {
            Division::Divides { sub, map } => {
                verify_division(&s, &w.abstract_semigroup, sub, map).unwrap();
            }
            other => panic!("expected a verified witness, got {other:?}"),
        }
        let sis3 = builtins::symmetric_inverse(3, &b()).unwrap().abstract_semigroup;
        let (w, d) = inverse_wreath_division(&sis3, &b()).unwrap();
        assert!(w.is_none() && matches!(d, Division::Unknown { .. }), "too big, not an error");
    }

    #[test]
    fn non_inverse_input_is_rejected() {
        let t2 = builtins::standard_ts("T2", &b()).unwrap().abstract_semigroup;
        assert!(max_group_image(&t2).is_err());
        assert!(munn_congruence(&t2).is_err());
        assert!(inverse_wreath_division(&t2, &b()).is_err());
    }
}
