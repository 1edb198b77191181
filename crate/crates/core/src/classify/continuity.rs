//! Continuity conditions C1, C2, C3 for a ring as a left module over itself.
//!
//! Left ideals are enumerated exhaustively; the direct summands of `R` as a
//! left module are exactly the ideals `Re` for idempotent `e`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::Result;
use crate::ring::{additive_sum, Element, ElementSet, FiniteRing, IdealSet, Side};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CConditions {
    pub left_ideal_count: usize,
    pub summand_count: usize,
    /// Every left ideal is essential in some direct summand.
    pub c1: bool,
    /// A left ideal essential in no direct summand.
    pub c1_counterexample: Option<Vec<Element>>,
    /// Every left ideal isomorphic to a direct summand is itself a summand.
    pub c2: bool,
    /// `(ideal, summand)` that are isomorphic although the ideal is no summand.
    pub c2_counterexample: Option<(Vec<Element>, Vec<Element>)>,
    /// Disjoint summands sum to a summand.
    pub c3: bool,
    /// Two summands meeting in zero whose sum is no summand.
    pub c3_counterexample: Option<(Vec<Element>, Vec<Element>)>,
}

impl CConditions {
    pub fn continuous(&self) -> bool {
        self.c1 && self.c2
    }
}

/// Direct summands `Re` of the left regular module, sorted and deduplicated.
pub fn left_summands(ring: &FiniteRing) -> Vec<ElementSet> {
    let set: BTreeSet<ElementSet> = ring
        .idempotents()
        .iter()
        .map(|e| ring.left_multiples(e))
        .collect();
    set.into_iter().collect()
}

/// Evaluates C1, C2 and C3 on the left module `R`, enumerating at most
/// `ideal_cap` left ideals.
pub fn check_c_conditions(ring: &FiniteRing, ideal_cap: usize) -> Result<CConditions> {
    let ideals = ring.all_ideals(Side::Left, ideal_cap)?;
    let summands = left_summands(ring);
    debug_assert!(summands.iter().all(|s| ideals.binary_search(s).is_ok()));
    let is_summand = |set: &ElementSet| summands.binary_search(set).is_ok();

    let c1_counterexample = ideals
        .iter()
        .find(|ideal| {
            !summands
                .iter()
                .any(|s| ideal.is_subset(s) && is_essential_in(ring, ideal, s))
        })
        .map(ElementSet::to_vec);

    let c2_counterexample = ideals
        .iter()
        .filter(|ideal| !is_summand(ideal))
        .find_map(|ideal| {
            summands
                .iter()
                .find(|s| s.len() == ideal.len() && isomorphic_left_ideals(ring, ideal, s))
                .map(|s| (ideal.to_vec(), s.to_vec()))
        });

    let mut c3_counterexample = None;
    'outer: for (i, k) in summands.iter().enumerate() {
        for l in &summands[i + 1..] {
            if k.meets_only_in_zero(l) {
                let sum = additive_sum(ring, k, l);
                if !is_summand(&sum) {
                    c3_counterexample = Some((k.to_vec(), l.to_vec()));
                    break 'outer;
                }
            }
        }
    }

    Ok(CConditions {
        left_ideal_count: ideals.len(),
        summand_count: summands.len(),
        c1: c1_counterexample.is_none(),
        c1_counterexample,
        c2: c2_counterexample.is_none(),
        c2_counterexample,
        c3: c3_counterexample.is_none(),
        c3_counterexample,
    })
}

/// `ideal` meets every nonzero left submodule of `whole` nontrivially.
///
/// Every nonzero submodule contains a nonzero cyclic one, so testing `Rx`
/// for each nonzero `x` in `whole` suffices.
pub fn is_essential_in(ring: &FiniteRing, ideal: &ElementSet, whole: &ElementSet) -> bool {
    whole
        .iter()
        .filter(|&x| x != 0)
        .all(|x| !ring.left_multiples(x).meets_only_in_zero(ideal))
}

/// Searches for a left-module isomorphism between two left ideals of equal size.
///
/// A map out of `source` is fixed by the images of a generating set; images
/// are tried in ascending order and each choice is extended to the span of
/// the generators seen so far, rejecting choices that are not well defined.
pub fn isomorphic_left_ideals(ring: &FiniteRing, source: &ElementSet, target: &ElementSet) -> bool {
    if source.len() != target.len() {
        return false;
    }
    let generators = IdealSet::from_closed_set(ring, Side::Left, source.clone())
        .generators()
        .to_vec();
    let mut map = vec![usize::MAX; ring.size()];
    map[0] = 0;
    let domain = vec![0];
    extend(ring, &generators, target, &mut map, domain)
}

fn extend(
    ring: &FiniteRing,
    generators: &[Element],
    target: &ElementSet,
    map: &mut Vec<Element>,
    domain: Vec<Element>,
) -> bool {
    let Some((&g, rest)) = generators.split_first() else {
        // domain is all of the source; equal sizes make injective = bijective
        let mut image = ElementSet::empty(ring.size());
        return domain.iter().all(|&x| image.insert(map[x]));
    };
    let killers = ring.left_annihilator_set(g);
    for y in target.iter() {
        // rg = 0 must force ry = 0
        if !killers.iter().all(|r| ring.mul(r, y) == 0) {
            continue;
        }
        let saved = map.clone();
        if let Some(next) = assign_generator(ring, g, y, map, &domain) {
            if extend(ring, rest, target, map, next) {
                return true;
            }
        }
        *map = saved;
    }
    false
}

/// Extends `map` from `domain` to `domain + Rg` with `g -> y`; `None` if the
/// extension is not well defined.
fn assign_generator(
    ring: &FiniteRing,
    g: Element,
    y: Element,
    map: &mut [Element],
    domain: &[Element],
) -> Option<Vec<Element>> {
    let mut next = Vec::new();
    for &u in domain {
        let fu = map[u];
        for r in ring.elements() {
            let v = ring.add(u, ring.mul(r, g));
            let value = ring.add(fu, ring.mul(r, y));
            match map[v] {
                usize::MAX => {
                    map[v] = value;
                    next.push(v);
                }
                existing if existing != value => return None,
                _ => {}
            }
        }
    }
    // newly assigned elements were unmapped before, so no duplicates arise
    next.extend_from_slice(domain);
    Some(next)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    #[test]
    fn z4_is_continuous() {
        let ring = RingSpec::zmod(4).build().unwrap();
        let c = check_c_conditions(&ring, 100).unwrap();
        assert_eq!(c.left_ideal_count, 3);
        assert!(c.c1 && c.c2 && c.c3);
    }

    #[test]
    fn semisimple_rings_satisfy_all_three() {
        for spec in [
            RingSpec::zmod(6),
            RingSpec::matrix(2, RingSpec::zmod(2)),
            RingSpec::product(vec![RingSpec::zmod(2), RingSpec::zmod(3)]),
        ] {
            let c = check_c_conditions(&spec.build().unwrap(), 1000).unwrap();
            assert!(c.c1 && c.c2 && c.c3, "{spec}: {c:?}");
        }
    }

    #[test]
    fn z8_ideals_and_isomorphism() {
        let ring = RingSpec::zmod(8).build().unwrap();
        let two = ring.left_multiples(2);
        let four = ring.left_multiples(4);
        assert!(!isomorphic_left_ideals(&ring, &two, &four));
        // 2Z/8 ≅ Z/4 is not isomorphic to the summand Z/8 (different sizes)
        assert!(!isomorphic_left_ideals(&ring, &two, &ElementSet::full(8)));
        assert!(isomorphic_left_ideals(&ring, &two, &ring.left_multiples(6)));
    }

    #[test]
    fn essential_extension_in_z4() {
        let ring = RingSpec::zmod(4).build().unwrap();
        assert!(is_essential_in(&ring, &ring.left_multiples(2), &ElementSet::full(4)));
        let z6 = RingSpec::zmod(6).build().unwrap();
        assert!(!is_essential_in(&z6, &z6.left_multiples(2), &ElementSet::full(6)));
    }
}
