//! Finite descending chains of coprime-pair classes with explicit witnesses.
//!
//! A chain `p0 >= p1 >= ... >= pk` is carried together with generators
//! `(a_i, b_i)` of each class and scalars with `a_j = a_i r_ij`,
//! `b_j = b_i s_ij`. Over a finite ring every descending chain admits such a
//! family, and every chain stabilizes, so the last class is a lower bound.
//!
//! Downward-directed systems of classes are not modelled separately: a finite
//! directed system has a least member, so it reduces to a chain.

use serde::Serialize;

use crate::analysis::Analysis;
use crate::error::{Error, Result};
use crate::rcp::{minimal_below, CoprimePairClass, RcpPoset};
use crate::ring::{additive_sum, Element, ElementSet, FiniteRing};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StepWitness {
    pub r: Element,
    pub s: Element,
}

/// `a_j = a_i r`, `b_j = b_i s` for `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CompositeWitness {
    pub i: usize,
    pub j: usize,
    pub r: Element,
    pub s: Element,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessedChain {
    /// Poset indices of the classes, top first.
    pub classes: Vec<usize>,
    /// Canonical generators of each class.
    pub pairs: Vec<(Element, Element)>,
    /// Generators the witnesses refer to.
    pub generators: Vec<(Element, Element)>,
    /// `step_witnesses[i]` carries class `i` to class `i + 1`.
    pub step_witnesses: Vec<StepWitness>,
    pub composite_witnesses: Vec<CompositeWitness>,
    /// Witness and cocycle identities were checked on every index triple.
    pub compatible: bool,
}

impl WitnessedChain {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn last(&self) -> Option<usize> {
        self.classes.last().copied()
    }

    /// Composite witness for `i < j`.
    pub fn composite(&self, i: usize, j: usize) -> Option<&CompositeWitness> {
        if i >= j || j >= self.len() {
            return None;
        }
        // stored row by row: (0,1), (0,2), ..., (1,2), ...
        let k = self.len();
        let offset = i * (2 * k - i - 1) / 2 + (j - i - 1);
        self.composite_witnesses.get(offset)
    }
}

/// Index of the first class that is not below its predecessor.
fn check_descending(poset: &RcpPoset, classes: &[usize]) -> Result<()> {
    for (i, &c) in classes.iter().enumerate() {
        if c >= poset.len() {
            return Err(Error::NotDescending { index: i });
        }
    }
    match classes.windows(2).position(|w| !poset.leq(w[1], w[0])) {
        Some(i) => Err(Error::NotDescending { index: i + 1 }),
        None => Ok(()),
    }
}

/// Poset indices of a list of classes of this ring.
pub fn class_indices(an: &Analysis, pairs: &[CoprimePairClass]) -> Result<Vec<usize>> {
    let poset = an.poset();
    pairs
        .iter()
        .enumerate()
        .map(|(i, p)| poset.index_of(p).ok_or(Error::NotDescending { index: i }))
        .collect()
}

/// Witnesses a chain given as classes.
pub fn witness_chain(an: &Analysis, pairs: &[CoprimePairClass]) -> Result<WitnessedChain> {
    witness_chain_indices(an, &class_indices(an, pairs)?)
}

/// Witnesses a chain given by poset indices, using the canonical generators
/// and the first `r` (resp. `s`) found by an ascending scan at each step.
pub fn witness_chain_indices(an: &Analysis, classes: &[usize]) -> Result<WitnessedChain> {
    let poset = an.poset();
    check_descending(poset, classes)?;
    let generators: Vec<(Element, Element)> =
        classes.iter().map(|&c| poset.class(c).generators()).collect();
    build_chain(an.ring(), poset, classes, generators, |ring, from, to| {
        // to ∈ toR ⊆ fromR, so the scan always succeeds
        ring.elements().find(|&r| ring.mul(from, r) == to)
    })
}

/// Witnesses a chain with idempotent generators `e_i R = a_i R`,
/// `f_i R = b_i R` and `r_ij = e_j`, `s_ij = f_j`.
///
/// Every principal right ideal of a von Neumann regular ring has an
/// idempotent generator, and `e_i e_j = e_j` whenever `e_j R ⊆ e_i R`.
pub fn idempotent_witness_chain(an: &Analysis, classes: &[usize]) -> Result<WitnessedChain> {
    let poset = an.poset();
    check_descending(poset, classes)?;
    let idempotent_generator = |ideal: &ElementSet| -> Result<Element> {
        an.idempotents()
            .iter()
            .find(|&e| an.right_ideal(e) == ideal)
            .ok_or_else(|| Error::NotVonNeumannRegular {
                witness: ideal.iter().find(|&x| an.right_ideal(x) == ideal).unwrap_or(0),
            })
    };
    let mut generators = Vec::with_capacity(classes.len());
    for &c in classes {
        let class = poset.class(c);
        generators.push((
            idempotent_generator(class.first_ideal())?,
            idempotent_generator(class.second_ideal())?,
        ));
    }
    build_chain(an.ring(), poset, classes, generators, |_, _, to| Some(to))
}

fn build_chain(
    ring: &FiniteRing,
    poset: &RcpPoset,
    classes: &[usize],
    generators: Vec<(Element, Element)>,
    step: impl Fn(&FiniteRing, Element, Element) -> Option<Element>,
) -> Result<WitnessedChain> {
    let k = classes.len();
    let step_witnesses: Vec<StepWitness> = generators
        .windows(2)
        .map(|w| {
            let ((a0, b0), (a1, b1)) = (w[0], w[1]);
            StepWitness {
                r: step(ring, a0, a1).expect("consecutive generators are related"),
                s: step(ring, b0, b1).expect("consecutive generators are related"),
            }
        })
        .collect();

    let mut composite_witnesses = Vec::with_capacity(k * k.saturating_sub(1) / 2);
    for i in 0..k {
        let (mut r, mut s) = (ring.one(), ring.one());
        for (j, w) in step_witnesses.iter().enumerate().skip(i) {
            r = ring.mul(r, w.r);
            s = ring.mul(s, w.s);
            composite_witnesses.push(CompositeWitness { i, j: j + 1, r, s });
        }
    }

    let mut chain = WitnessedChain {
        classes: classes.to_vec(),
        pairs: classes.iter().map(|&c| poset.class(c).generators()).collect(),
        generators,
        step_witnesses,
        composite_witnesses,
        compatible: false,
    };
    chain.compatible = verify_witnesses(ring, &chain);
    Ok(chain)
}

/// Checks `a_j = a_i r_ij`, `b_j = b_i s_ij` and `r_ik = r_ij r_jk`,
/// `s_ik = s_ij s_jk` on every index triple.
pub fn verify_witnesses(ring: &FiniteRing, chain: &WitnessedChain) -> bool {
    let k = chain.len();
    for i in 0..k {
        for j in i + 1..k {
            let Some(w) = chain.composite(i, j) else {
                return false;
            };
            let ((ai, bi), (aj, bj)) = (chain.generators[i], chain.generators[j]);
            if (w.i, w.j) != (i, j) || ring.mul(ai, w.r) != aj || ring.mul(bi, w.s) != bj {
                return false;
            }
            for m in j + 1..k {
                let (Some(jm), Some(im)) = (chain.composite(j, m), chain.composite(i, m)) else {
                    return false;
                };
                if ring.mul(w.r, jm.r) != im.r || ring.mul(w.s, jm.s) != im.s {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowerBounds {
    /// Every class below all members of the chain, ascending.
    pub classes: Vec<usize>,
    /// `∩ a_i R + ∩ b_i R = R`.
    pub intersection_criterion: bool,
    pub agree: bool,
}

pub fn lower_bounds(an: &Analysis, chain: &WitnessedChain) -> LowerBounds {
    let poset = an.poset();
    let ring = an.ring();
    let n = ring.size();
    let mut below = ElementSet::full(poset.len());
    let mut first = ElementSet::full(n);
    let mut second = ElementSet::full(n);
    for &c in &chain.classes {
        below = below.intersection(poset.below(c));
        let class = poset.class(c);
        first = first.intersection(class.first_ideal());
        second = second.intersection(class.second_ideal());
    }
    let intersection_criterion = additive_sum(ring, &first, &second).contains(ring.one());
    let classes = below.to_vec();
    let agree = classes.is_empty() != intersection_criterion
        && chain.last().map_or(true, |last| below.contains(last));
    LowerBounds {
        classes,
        intersection_criterion,
        agree,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalLowerBound {
    pub class: Option<usize>,
    pub generators: Option<(Element, Element)>,
    /// Same answer as the smallest minimal class below the last member.
    pub matches_minimal_below: bool,
}

/// Smallest minimal class among the lower bounds of the chain.
pub fn minimal_lower_bound(an: &Analysis, chain: &WitnessedChain) -> MinimalLowerBound {
    let poset = an.poset();
    let bounds = lower_bounds(an, chain);
    let class = bounds
        .classes
        .iter()
        .copied()
        .find(|&q| poset.is_minimal_index(q));
    let via_last = chain
        .last()
        .and_then(|last| minimal_below(an, poset.class(last)))
        .and_then(|c| poset.index_of(&c));
    let via_last = if chain.is_empty() {
        poset.minimal().first().copied()
    } else {
        via_last
    };
    MinimalLowerBound {
        class,
        generators: class.map(|q| poset.class(q).generators()),
        matches_minimal_below: class == via_last,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnnihilatorCriterion {
    /// Some `(a, b)` with `l(a) ∩ l(b) = 0`, `Σ l(a_i) ⊆ l(a)` and `Σ l(b_i) ⊆ l(b)`.
    pub holds: bool,
    pub witness: Option<(Element, Element)>,
    /// Matches whether the chain has a lower bound.
    pub agrees_with_lower_bounds: bool,
}

/// Lower-bound test through left annihilators, valid over von Neumann
/// regular rings.
pub fn annihilator_lower_bound_criterion(
    an: &Analysis,
    chain: &WitnessedChain,
) -> Result<AnnihilatorCriterion> {
    let ring = an.ring();
    if !an.is_von_neumann_regular() {
        let witness = ring
            .elements()
            .find(|&a| ring.regular_witness(a).is_none())
            .unwrap_or(0);
        return Err(Error::NotVonNeumannRegular { witness });
    }
    let n = ring.size();
    let mut sum_a = ElementSet::from_elements(n, [0]);
    let mut sum_b = ElementSet::from_elements(n, [0]);
    for &(a, b) in &chain.generators {
        sum_a = additive_sum(ring, &sum_a, an.left_annihilator(a));
        sum_b = additive_sum(ring, &sum_b, an.left_annihilator(b));
    }
    let candidates_a: Vec<Element> = ring
        .elements()
        .filter(|&a| sum_a.is_subset(an.left_annihilator(a)))
        .collect();
    let candidates_b: Vec<Element> = ring
        .elements()
        .filter(|&b| sum_b.is_subset(an.left_annihilator(b)))
        .collect();
    let witness = candidates_a.iter().find_map(|&a| {
        candidates_b
            .iter()
            .find(|&&b| an.left_annihilator(a).meets_only_in_zero(an.left_annihilator(b)))
            .map(|&b| (a, b))
    });
    let holds = witness.is_some();
    let has_lower_bound = !lower_bounds(an, chain).classes.is_empty();
    Ok(AnnihilatorCriterion {
        holds,
        witness,
        agrees_with_lower_bounds: holds == has_lower_bound,
    })
}

/// Chain report for one witnessed chain.
#[derive(Debug, Clone, Serialize)]
pub struct ChainReport {
    pub chain: WitnessedChain,
    pub lower_bounds: Vec<(Element, Element)>,
    pub intersection_criterion: bool,
    pub minimal_lower_bound: Option<(Element, Element)>,
    pub consistent: bool,
}

pub fn chain_report(an: &Analysis, chain: WitnessedChain) -> ChainReport {
    let poset = an.poset();
    let bounds = lower_bounds(an, &chain);
    let minimal = minimal_lower_bound(an, &chain);
    ChainReport {
        lower_bounds: bounds
            .classes
            .iter()
            .map(|&q| poset.class(q).generators())
            .collect(),
        intersection_criterion: bounds.intersection_criterion,
        minimal_lower_bound: minimal.generators,
        consistent: chain.compatible && bounds.agree && minimal.matches_minimal_below,
        chain,
    }
}

/// Deterministic sample of descending chains (as poset indices).
///
/// All non-strict descending chains of length 1 to 3 come first, then one
/// greedy maximal strict chain from each class (always stepping to the
/// smallest covered class), then longer non-strict chains in lexicographic
/// order until `target` chains are collected or `max_length` is reached.
pub fn sample_chains(poset: &RcpPoset, target: usize, max_length: usize) -> Vec<Vec<usize>> {
    let c = poset.len();
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut layer: Vec<Vec<usize>> = (0..c).map(|i| vec![i]).collect();
    let mut length = 1;
    while length <= 3 && !layer.is_empty() {
        out.extend(layer.iter().cloned());
        layer = extend_layer(poset, &layer);
        length += 1;
    }
    out.extend(greedy_maximal_chains(poset));
    while out.len() < target && length <= max_length && !layer.is_empty() {
        let room = target - out.len();
        out.extend(layer.iter().take(room).cloned());
        if layer.len() >= room {
            break;
        }
        layer = extend_layer(poset, &layer);
        length += 1;
    }
    out
}

fn extend_layer(poset: &RcpPoset, layer: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut next = Vec::new();
    for chain in layer {
        let last = *chain.last().expect("chains are nonempty");
        for lower in poset.below(last).iter() {
            let mut longer = chain.clone();
            longer.push(lower);
            next.push(longer);
        }
    }
    next
}

/// One unrefinable strictly descending chain per starting class.
pub fn greedy_maximal_chains(poset: &RcpPoset) -> Vec<Vec<usize>> {
    let covers = poset.covers();
    (0..poset.len())
        .map(|start| {
            let mut chain = vec![start];
            let mut current = start;
            while let Some(&(_, lower)) = covers.iter().find(|&&(upper, _)| upper == current) {
                chain.push(lower);
                current = lower;
            }
            chain
        })
        .collect()
}

/// Strictly descending chains of length 1 to `max_length`.
pub fn strict_chains(poset: &RcpPoset, max_length: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<usize>> = (0..poset.len()).map(|i| vec![i]).collect();
    for _ in 0..max_length {
        if layer.is_empty() {
            break;
        }
        out.extend(layer.iter().cloned());
        layer = layer
            .iter()
            .flat_map(|chain| {
                let last = *chain.last().unwrap();
                poset
                    .below(last)
                    .iter()
                    .filter(move |&l| l != last)
                    .map(move |l| {
                        let mut longer = chain.clone();
                        longer.push(l);
                        longer
                    })
            })
            .collect();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StronglyExchangeReport {
    pub value: bool,
    /// Classes with no minimal class below them.
    pub classes_without_minimal: Vec<usize>,
    pub class_count: usize,
    /// Longest strictly descending chain in the poset.
    pub height: usize,
    pub chains_sampled: usize,
    /// Every sampled strict chain was no longer than the number of classes,
    /// stopped at a class, and received a minimal lower bound.
    pub sampled_chains_stabilized: bool,
}

/// Strong exchange for a finite ring: every chain stabilizes at its last
/// member, so the property reduces to every class having a minimal class
/// below it. Strict chains up to length 4 and greedy maximal chains are
/// sampled as corroboration.
pub fn is_strongly_exchange_finite(an: &Analysis) -> Result<StronglyExchangeReport> {
    an.caps().check_full(an.size())?;
    let poset = an.poset();
    let classes_without_minimal: Vec<usize> = (0..poset.len())
        .filter(|&i| poset.minimal_below_index(i).is_none())
        .collect();
    let mut samples = strict_chains(poset, 4);
    samples.extend(greedy_maximal_chains(poset));
    let sampled_chains_stabilized = samples.iter().all(|chain| {
        chain.len() <= poset.len()
            && witness_chain_indices(an, chain).is_ok_and(|w| {
                w.compatible && minimal_lower_bound(an, &w).class.is_some()
            })
    });
    Ok(StronglyExchangeReport {
        value: classes_without_minimal.is_empty(),
        classes_without_minimal,
        class_count: poset.len(),
        height: poset.height(),
        chains_sampled: samples.len(),
        sampled_chains_stabilized,
    })
}

/// Per-ring outcome of the chain audit.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ChainAudit {
    pub chains: usize,
    pub longest_chain: usize,
    pub witness_failures: usize,
    pub lower_bound_criterion_failures: usize,
    pub minimal_lower_bound_failures: usize,
    /// Chains checked against the annihilator criterion (vN regular rings only).
    pub annihilator_checked: usize,
    pub annihilator_failures: usize,
    pub idempotent_recipe_failures: usize,
    pub strict_chain_length_violations: usize,
    pub passed: bool,
}

/// Runs every chain check on a deterministic sample of at least `target`
/// chains (when the poset admits that many up to `max_length`).
pub fn audit_chains(an: &Analysis, target: usize, max_length: usize) -> ChainAudit {
    let poset = an.poset();
    let regular = an.is_von_neumann_regular();
    let mut audit = ChainAudit::default();
    for classes in sample_chains(poset, target, max_length) {
        audit.chains += 1;
        audit.longest_chain = audit.longest_chain.max(classes.len());
        let strict = classes.windows(2).all(|w| w[0] != w[1]);
        if strict && classes.len() > poset.len() {
            audit.strict_chain_length_violations += 1;
        }
        let chain = match witness_chain_indices(an, &classes) {
            Ok(chain) if chain.compatible => chain,
            _ => {
                audit.witness_failures += 1;
                continue;
            }
        };
        if !lower_bounds(an, &chain).agree {
            audit.lower_bound_criterion_failures += 1;
        }
        if !minimal_lower_bound(an, &chain).matches_minimal_below {
            audit.minimal_lower_bound_failures += 1;
        }
        if regular {
            audit.annihilator_checked += 1;
            match annihilator_lower_bound_criterion(an, &chain) {
                Ok(c) if c.agrees_with_lower_bounds => {}
                _ => audit.annihilator_failures += 1,
            }
            if !idempotent_witness_chain(an, &classes).is_ok_and(|c| c.compatible) {
                audit.idempotent_recipe_failures += 1;
            }
        }
    }
    audit.passed = audit.witness_failures == 0
        && audit.lower_bound_criterion_failures == 0
        && audit.minimal_lower_bound_failures == 0
        && audit.annihilator_failures == 0
        && audit.idempotent_recipe_failures == 0
        && audit.strict_chain_length_violations == 0;
    audit
}
