use serde_json::json;

use super::continuity::check_c_conditions;
use super::{PredicateRecord, Route};
use crate::analysis::Analysis;
use crate::chains::is_strongly_exchange_finite;
use crate::error::Result;
use crate::ring::{additive_sum, Element, ElementSet, FiniteRing, Side};

fn check(an: &Analysis) -> Result<()> {
    an.caps().check_full(an.size())
}

/// First pair `(x, y)` in lexicographic order satisfying `f`.
fn find_pair(n: usize, mut f: impl FnMut(Element, Element) -> bool) -> Option<(Element, Element)> {
    (0..n).find_map(|x| (0..n).find(|&y| f(x, y)).map(|y| (x, y)))
}

pub fn is_local(an: &Analysis) -> Result<PredicateRecord> {
    check(an)?;
    let ring = an.ring();
    let n = ring.size();
    let nonzero = n > 1;

    let nonunits = ElementSet::full(n).difference(an.units());
    let sum_failure = find_pair(n, |x, y| {
        nonunits.contains(x) && nonunits.contains(y) && an.is_unit(ring.add(x, y))
    });
    let product_failure = find_pair(n, |x, r| {
        nonunits.contains(x) && (an.is_unit(ring.mul(r, x)) || an.is_unit(ring.mul(x, r)))
    });
    let route_a = nonzero && sum_failure.is_none() && product_failure.is_none();

    let nontrivial_pair =
        find_pair(n, |a, b| !an.is_unit(a) && !an.is_unit(b) && an.right_coprime(a, b));
    let route_b = nonzero && nontrivial_pair.is_none();

    let poset = an.poset();
    let every_class_has_minimal = (0..poset.len()).all(|i| poset.minimal_below_index(i).is_some());
    let route_c = nonzero && poset.minimal().len() == 2 && every_class_has_minimal;

    Ok(PredicateRecord::from_routes(
        vec![
            Route::new("nonunits_form_ideal", route_a),
            Route::new("coprime_pairs_trivial", route_b),
            Route::new("two_minimal_classes", route_c),
        ],
        json!({
            "nonunits": nonunits.to_vec(),
            "nonunit_sum_is_unit": sum_failure,
            "nonunit_multiple_is_unit": product_failure,
            "nontrivial_coprime_pair": nontrivial_pair,
            "minimal_class_count": poset.minimal().len(),
        }),
    ))
}

pub fn is_indecomposable(an: &Analysis) -> Result<PredicateRecord> {
    check(an)?;
    let idempotents = an.idempotents().to_vec();
    let minimal = an.poset().minimal().len();
    let nonzero = an.size() > 1;
    Ok(PredicateRecord::from_routes(
        vec![
            Route::new("trivial_idempotents", nonzero && idempotents.len() == 2),
            Route::new("two_minimal_classes", nonzero && minimal == 2),
        ],
        json!({ "idempotents": idempotents, "minimal_class_count": minimal }),
    ))
}

pub fn is_vn_regular(an: &Analysis) -> Result<PredicateRecord> {
    check(an)?;
    let ring = an.ring();
    let irregular = ring.elements().find(|&a| ring.regular_witness(a).is_none());
    let poset = an.poset();
    let irregular_class = poset.classes().iter().map(|c| c.generators()).find(|&(a, b)| {
        ring.regular_witness(a).is_none() || ring.regular_witness(b).is_none()
    });
    Ok(PredicateRecord::from_routes(
        vec![
            Route::new("inner_inverses", irregular.is_none()),
            Route::new("regular_coprime_pairs", irregular_class.is_none()),
        ],
        json!({
            "irregular_element": irregular,
            "irregular_class": irregular_class,
        }),
    ))
}

/// Idempotent `e ∈ rR` with `1 - e ∈ (1 - r)R`, smallest first.
fn exchange_idempotent(an: &Analysis, r: Element) -> Option<Element> {
    let ring = an.ring();
    let complement = an.right_ideal(ring.complement(r));
    an.idempotents()
        .iter()
        .find(|&e| an.right_ideal(r).contains(e) && complement.contains(ring.complement(e)))
}

pub fn is_exchange(an: &Analysis) -> Result<PredicateRecord> {
    check(an)?;
    let ring = an.ring();
    let witnesses: Vec<(Element, Option<Element>)> =
        ring.elements().map(|r| (r, exchange_idempotent(an, r))).collect();
    let failure = witnesses.iter().find(|(_, e)| e.is_none()).map(|&(r, _)| r);
    let poset = an.poset();
    let bare_class = (0..poset.len()).find(|&i| poset.minimal_below_index(i).is_none());
    Ok(PredicateRecord::from_routes(
        vec![
            Route::new("exchange_idempotents", failure.is_none()),
            Route::new("minimal_below_every_class", bare_class.is_none()),
        ],
        json!({
            "exchange_idempotent": witnesses
                .iter()
                .filter_map(|&(r, e)| e.map(|e| (r, e)))
                .collect::<Vec<_>>(),
            "no_exchange_idempotent": failure,
            "class_without_minimal": bare_class.map(|i| poset.class(i).generators()),
        }),
    ))
}

pub fn is_strongly_exchange(an: &Analysis) -> Result<PredicateRecord> {
    let report = is_strongly_exchange_finite(an)?;
    let poset = an.poset();
    Ok(PredicateRecord::from_routes(
        vec![
            Route::new("minimal_below_last_member", report.value),
            Route::new("sampled_chains", report.sampled_chains_stabilized),
        ],
        json!({
            "classes_without_minimal": report
                .classes_without_minimal
                .iter()
                .map(|&i| poset.class(i).generators())
                .collect::<Vec<_>>(),
            "height": report.height,
            "chains_sampled": report.chains_sampled,
        }),
    ))
}

/// For every idempotent of `R/J`, its coset representative and the smallest
/// idempotent of `R` projecting onto it, if any.
pub fn idempotent_lifts(an: &Analysis) -> Vec<(Element, Option<Element>)> {
    let quotient = an.quotient_by_radical();
    quotient
        .ring
        .idempotents()
        .iter()
        .map(|q| {
            let lift = an.idempotents().iter().find(|&e| quotient.project(e) == q);
            (quotient.representatives[q], lift)
        })
        .collect()
}

fn lifts_json(lifts: &[(Element, Option<Element>)]) -> serde_json::Value {
    json!(lifts
        .iter()
        .map(|&(coset, lift)| json!({ "coset": coset, "lift": lift }))
        .collect::<Vec<_>>())
}

pub fn is_semiregular(an: &Analysis) -> Result<PredicateRecord> {
    check(an)?;
    let ring = an.ring();
    let quotient = &an.quotient_by_radical().ring;
    let irregular_coset = quotient.elements().find(|&q| quotient.regular_witness(q).is_none());
    let lifts = idempotent_lifts(an);
    let lifting = lifts.iter().all(|(_, l)| l.is_some());

    // a is regular modulo J: some b with bab = b and a - aba ∈ J
    let j = an.radical();
    let failure = ring.elements().find(|&a| {
        !ring
            .elements()
            .any(|b| ring.mul3(b, a, b) == b && j.contains(ring.sub(a, ring.mul3(a, b, a))))
    });
    Ok(PredicateRecord::from_routes(
        vec![
            Route::new("regular_quotient_with_lifting", irregular_coset.is_none() && lifting),
            Route::new("elements_regular_mod_radical", failure.is_none()),
        ],
        json!({
            "irregular_coset": irregular_coset.map(|q| an.quotient_by_radical().representatives[q]),
            "lifts": lifts_json(&lifts),
            "element_not_regular_mod_radical": failure,
        }),
    ))
}

/// `eRe` is a local ring: nonzero, and its non-units are closed under addition.
fn corner_is_local(ring: &FiniteRing, e: Element) -> bool {
    if e == 0 {
        return false;
    }
    let corner = ElementSet::from_elements(ring.size(), ring.elements().map(|x| ring.mul3(e, x, e)));
    let is_corner_unit = |x: Element| {
        corner
            .iter()
            .any(|y| ring.mul(x, y) == e && ring.mul(y, x) == e)
    };
    let nonunits: Vec<Element> = corner.iter().filter(|&x| !is_corner_unit(x)).collect();
    nonunits
        .iter()
        .all(|&x| nonunits.iter().all(|&y| !is_corner_unit(ring.add(x, y))))
}

/// Splits `1` into orthogonal idempotents with local corner rings, always
/// splitting off the smallest nontrivial idempotent of a non-local corner.
/// `None` if some corner has no such idempotent yet is not local.
pub fn local_decomposition(an: &Analysis) -> Option<Vec<Element>> {
    let ring = an.ring();
    if ring.size() == 1 {
        // 1 = 0 is the empty sum
        return Some(Vec::new());
    }
    let mut parts = vec![ring.one()];
    while let Some(i) = parts.iter().position(|&e| !corner_is_local(ring, e)) {
        let e = parts[i];
        let f = an
            .idempotents()
            .iter()
            .find(|&f| f != 0 && f != e && ring.mul3(e, f, e) == f)?;
        parts[i] = f;
        parts.push(ring.sub(e, f));
    }
    parts.sort_unstable();
    Some(parts)
}

pub fn is_semiperfect(an: &Analysis) -> Result<PredicateRecord> {
    check(an)?;
    let quotient = &an.quotient_by_radical().ring;
    let quotient_semisimple = quotient.jacobson_radical().len() == 1;
    let lifts = idempotent_lifts(an);
    let lifting = lifts.iter().all(|(_, l)| l.is_some());
    let decomposition = local_decomposition(an);
    Ok(PredicateRecord::from_routes(
        vec![
            Route::new("semisimple_quotient_with_lifting", quotient_semisimple && lifting),
            Route::new("local_idempotent_decomposition", decomposition.is_some()),
        ],
        json!({
            "lifts": lifts_json(&lifts),
            "local_idempotents": decomposition,
        }),
    ))
}

pub fn is_semisimple(an: &Analysis) -> Result<PredicateRecord> {
    check(an)?;
    let radical = an.radical().to_vec();
    let without_idempotent = an
        .principal_right_ideals()
        .iter()
        .enumerate()
        .find(|(_, ideal)| !an.idempotents().iter().any(|e| an.right_ideal(e) == *ideal))
        .map(|(i, _)| an.canonical_generator(i));
    Ok(PredicateRecord::from_routes(
        vec![
            Route::new("zero_radical", radical.len() == 1),
            Route::new("principal_ideals_idempotent_generated", without_idempotent.is_none()),
        ],
        json!({
            "radical": radical,
            "principal_ideal_without_idempotent_generator": without_idempotent,
        }),
    ))
}

pub fn is_clean(an: &Analysis) -> Result<PredicateRecord> {
    check(an)?;
    let ring = an.ring();
    let decompositions: Vec<(Element, Option<(Element, Element)>)> = ring
        .elements()
        .map(|x| {
            let split = an.idempotents().iter().find_map(|e| {
                let u = ring.sub(x, e);
                an.is_unit(u).then_some((e, u))
            });
            (x, split)
        })
        .collect();
    let failure = decompositions.iter().find(|(_, s)| s.is_none()).map(|&(x, _)| x);
    Ok(PredicateRecord::from_routes(
        vec![Route::new("idempotent_plus_unit", failure.is_none())],
        json!({
            "decompositions": decompositions
                .iter()
                .filter_map(|&(x, s)| s.map(|(e, u)| json!({ "x": x, "e": e, "u": u })))
                .collect::<Vec<_>>(),
            "not_clean": failure,
        }),
    ))
}

pub fn is_quasi_duo(an: &Analysis) -> Result<PredicateRecord> {
    check(an)?;
    let ring = an.ring();
    let n = ring.size();

    let route_a = match ring.all_ideals(Side::Right, an.caps().ideals) {
        Ok(ideals) => {
            let proper: Vec<&ElementSet> = ideals.iter().filter(|i| !i.is_full()).collect();
            let maximal: Vec<&ElementSet> = proper
                .iter()
                .copied()
                .filter(|m| !proper.iter().any(|o| m.is_strict_subset(o)))
                .collect();
            let one_sided = maximal
                .iter()
                .find(|m| !m.iter().all(|x| ring.elements().all(|r| m.contains(ring.mul(r, x)))));
            let value = one_sided.is_none();
            let mut route = Route::new("maximal_right_ideals_two_sided", value);
            route.note = Some(format!(
                "{} maximal right ideals{}",
                maximal.len(),
                one_sided
                    .map(|m| format!("; {:?} is not a left ideal", m.to_vec()))
                    .unwrap_or_default()
            ));
            route
        }
        Err(e) if e.is_cap() => Route::skipped("maximal_right_ideals_two_sided", e.to_string()),
        Err(e) => return Err(e),
    };

    let witness = find_pair(n, |a, b| an.left_coprime(a, b) && !an.right_coprime(a, b));
    Ok(PredicateRecord::from_routes(
        vec![
            Route::new("left_coprime_pairs_right_coprime", witness.is_none()),
            route_a,
        ],
        json!({ "left_not_right_coprime": witness }),
    ))
}

/// `J^k = 0` for some `k`; returns the least such `k`.
fn radical_nilpotency(an: &Analysis) -> Option<usize> {
    let ring = an.ring();
    let j = an.radical();
    let mut power = j.clone();
    let mut k = 1;
    while power.len() > 1 {
        let products = ElementSet::from_elements(
            ring.size(),
            power.iter().flat_map(|x| j.iter().map(move |y| ring.mul(x, y))),
        );
        let mut next = ElementSet::from_elements(ring.size(), [0]);
        for p in products.iter() {
            if !next.contains(p) {
                next = additive_sum(ring, &next, &ElementSet::from_elements(ring.size(), multiples(ring, p)));
            }
        }
        if next == power {
            return None;
        }
        power = next;
        k += 1;
    }
    Some(k)
}

/// The additive subgroup generated by `p`.
fn multiples(ring: &FiniteRing, p: Element) -> Vec<Element> {
    let mut out = vec![0];
    let mut x = p;
    while x != 0 {
        out.push(x);
        x = ring.add(x, p);
    }
    out
}

pub fn is_perfect_dcc(an: &Analysis) -> Result<PredicateRecord> {
    check(an)?;
    let poset = an.poset();
    let height = poset.height();
    let nilpotency = radical_nilpotency(an);
    let quotient_semisimple = an.quotient_by_radical().ring.jacobson_radical().len() == 1;
    Ok(PredicateRecord::from_routes(
        vec![
            Route::new("bounded_descending_chains", height <= poset.len()),
            Route::new("nilpotent_radical_semisimple_quotient", nilpotency.is_some() && quotient_semisimple),
        ],
        json!({ "height": height, "class_count": poset.len(), "radical_nilpotency": nilpotency }),
    ))
}

fn c_condition(an: &Analysis, pick: fn(&super::continuity::CConditions) -> (bool, serde_json::Value)) -> Result<PredicateRecord> {
    check(an)?;
    let c = an.c_conditions().as_ref().map_err(Clone::clone)?;
    let (value, counterexample) = pick(c);
    Ok(PredicateRecord::from_routes(
        vec![Route::new("left_ideal_enumeration", value)],
        json!({
            "left_ideals": c.left_ideal_count,
            "direct_summands": c.summand_count,
            "counterexample": counterexample,
        }),
    ))
}

pub(super) fn continuous_c1(an: &Analysis) -> Result<PredicateRecord> {
    c_condition(an, |c| (c.c1, json!(c.c1_counterexample)))
}

pub(super) fn continuous_c2(an: &Analysis) -> Result<PredicateRecord> {
    c_condition(an, |c| (c.c2, json!(c.c2_counterexample)))
}

pub(super) fn continuous_c3(an: &Analysis) -> Result<PredicateRecord> {
    c_condition(an, |c| (c.c3, json!(c.c3_counterexample)))
}

pub(super) fn continuous_mod_radical(an: &Analysis) -> Result<PredicateRecord> {
    check(an)?;
    let quotient = &an.quotient_by_radical().ring;
    let c = check_c_conditions(quotient, an.caps().ideals)?;
    let semisimple = quotient.jacobson_radical().len() == 1;
    Ok(PredicateRecord::from_routes(
        vec![
            Route::new("quotient_c1_c2", c.continuous()),
            Route::new("semisimple_quotient", semisimple),
        ],
        json!({
            "quotient_size": quotient.size(),
            "c1_counterexample": c.c1_counterexample,
            "c2_counterexample": c.c2_counterexample,
        }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    fn analysis(spec: RingSpec) -> Analysis {
        Analysis::new(spec.build().unwrap()).unwrap()
    }

    fn value(record: Result<PredicateRecord>) -> bool {
        let record = record.unwrap();
        assert!(record.agree, "{record:?}");
        record.value
    }

    #[test]
    fn locality() {
        assert!(value(is_local(&analysis(RingSpec::zmod(4)))));
        assert!(!value(is_local(&analysis(RingSpec::zmod(6)))));
        assert!(value(is_local(&analysis(RingSpec::zmod(2)))));
        assert!(value(is_local(&analysis(RingSpec::upper_triangular(2, RingSpec::zmod(2))))) == false);
    }

    #[test]
    fn indecomposability() {
        assert!(value(is_indecomposable(&analysis(RingSpec::zmod(4)))));
        assert!(!value(is_indecomposable(&analysis(RingSpec::zmod(6)))));
        let z2 = RingSpec::zmod(2);
        assert!(!value(is_indecomposable(&analysis(RingSpec::product(vec![z2.clone(), z2])))));
    }

    #[test]
    fn regularity() {
        assert!(value(is_vn_regular(&analysis(RingSpec::zmod(6)))));
        let z4 = is_vn_regular(&analysis(RingSpec::zmod(4))).unwrap();
        assert!(!z4.value);
        assert_eq!(z4.witnesses["irregular_element"], 2);
        assert!(value(is_vn_regular(&analysis(RingSpec::matrix(2, RingSpec::zmod(2))))));
    }

    #[test]
    fn exchange_witnesses() {
        let an = analysis(RingSpec::zmod(6));
        assert!(value(is_exchange(&an)));
        // 4 ∈ 2R and 1 - 4 = 3 ∈ (1 - 2)R, so 4 also works for r = 2
        let ring = an.ring();
        assert!(an.right_ideal(2).contains(4));
        assert!(an.right_ideal(ring.complement(2)).contains(ring.complement(4)));
        assert!(exchange_idempotent(&an, 2).is_some());
        assert!(value(is_exchange(&analysis(RingSpec::zmod(4)))));
        assert!(value(is_exchange(&analysis(RingSpec::upper_triangular(2, RingSpec::zmod(2))))));
    }

    #[test]
    fn semiregular_and_lifting() {
        let an = analysis(RingSpec::zmod(4));
        assert!(value(is_semiregular(&an)));
        assert_eq!(idempotent_lifts(&an), vec![(0, Some(0)), (1, Some(1))]);
        assert!(value(is_semiregular(&analysis(RingSpec::upper_triangular(2, RingSpec::zmod(2))))));
    }

    #[test]
    fn semisimple_and_semiperfect() {
        let z6 = analysis(RingSpec::zmod(6));
        assert!(value(is_semisimple(&z6)) && value(is_semiperfect(&z6)));
        let z4 = analysis(RingSpec::zmod(4));
        assert!(!value(is_semisimple(&z4)) && value(is_semiperfect(&z4)));
        assert_eq!(local_decomposition(&z6), Some(vec![3, 4]));
    }

    #[test]
    fn matrices_over_z4() {
        let an = analysis(RingSpec::matrix(2, RingSpec::zmod(4)));
        assert_eq!(an.radical().len(), 16);
        assert!(an.radical().iter().all(|x| (0..4).all(|k| (x >> (2 * k)) & 1 == 0)));
        assert!(!value(is_semisimple(&an)));
        assert!(value(is_semiperfect(&an)));
    }

    #[test]
    fn cleanness() {
        let an = analysis(RingSpec::zmod(6));
        let record = is_clean(&an).unwrap();
        assert!(record.value);
        // 3 = 4 + 5
        let ring = an.ring();
        assert!(an.idempotents().contains(4) && an.is_unit(5) && ring.add(4, 5) == 3);
        assert!(value(is_clean(&analysis(RingSpec::zmod(4)))));
        assert!(value(is_clean(&analysis(RingSpec::zmod(2)))));
    }

    #[test]
    fn quasi_duo() {
        assert!(value(is_quasi_duo(&analysis(RingSpec::zmod(12)))));
        let m2 = analysis(RingSpec::matrix(2, RingSpec::zmod(2)));
        let record = is_quasi_duo(&m2).unwrap();
        assert!(!record.value && record.agree);
        let pair: (usize, usize) = serde_json::from_value(record.witnesses["left_not_right_coprime"].clone()).unwrap();
        assert!(m2.left_coprime(pair.0, pair.1) && !m2.right_coprime(pair.0, pair.1));
        let ut = is_quasi_duo(&analysis(RingSpec::upper_triangular(2, RingSpec::zmod(2)))).unwrap();
        assert!(ut.agree);
    }

    #[test]
    fn quasi_duo_route_a_skipped_on_cap() {
        let caps = crate::ring::SizeCaps {
            ideals: 2,
            ..Default::default()
        };
        let an = Analysis::with_caps(RingSpec::zmod(12).build().unwrap(), caps).unwrap();
        let record = is_quasi_duo(&an).unwrap();
        assert!(record.value);
        assert_eq!(record.route("maximal_right_ideals_two_sided").unwrap().value, None);
    }

    #[test]
    fn perfect_and_continuity() {
        for n in [4, 6, 8, 12] {
            let an = analysis(RingSpec::zmod(n));
            assert!(value(is_perfect_dcc(&an)));
            assert!(value(continuous_mod_radical(&an)));
        }
        assert_eq!(radical_nilpotency(&analysis(RingSpec::zmod(8))), Some(3));
        assert_eq!(radical_nilpotency(&analysis(RingSpec::zmod(6))), Some(1));
    }
}
