//! Right coprime pairs and the poset of their classes.
//!
//! A right coprime pair is `(a, b)` with `aR + bR = R`. Two pairs are
//! identified when they generate the same principal right ideals, and classes
//! are ordered by componentwise inclusion of those ideals.

mod export;
mod prop22;

pub use export::{poset_dot, PosetExport};
pub use prop22::{prop22_suite, MatrixWitness, Prop22Report};

use std::cmp::Ordering;

use serde::Serialize;

use crate::analysis::Analysis;
use crate::error::{Error, Result};
use crate::ring::{Element, ElementSet, FiniteRing, IdealSet, Side};

/// Result of a coprimality test with a Bezout-style witness `ar + bs = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CoprimeCheck {
    pub coprime: bool,
    pub witness: Option<(Element, Element)>,
}

/// Decides `aR + bR = R` by forming the ideal sum, and reports the first
/// `(r, s)` in lexicographic order with `ar + bs = 1`.
pub fn is_right_coprime(ring: &FiniteRing, a: Element, b: Element) -> CoprimeCheck {
    let sum = ring
        .principal_right_ideal(a)
        .sum(&ring.principal_right_ideal(b), ring)
        .expect("both ideals are right ideals of the same ring");
    let coprime = sum.is_whole_ring();
    let witness = coprime.then(|| bezout_witness(ring, a, b)).flatten();
    debug_assert_eq!(coprime, witness.is_some());
    CoprimeCheck { coprime, witness }
}

/// First `(r, s)` with `ar + bs = 1`, scanning `r` then `s` ascending.
pub fn bezout_witness(ring: &FiniteRing, a: Element, b: Element) -> Option<(Element, Element)> {
    // smallest s for each value of bs
    let mut solve_b = vec![usize::MAX; ring.size()];
    for s in ring.elements().rev() {
        solve_b[ring.mul(b, s)] = s;
    }
    ring.elements().find_map(|r| {
        let s = solve_b[ring.sub(ring.one(), ring.mul(a, r))];
        (s != usize::MAX).then_some((r, s))
    })
}

/// An equivalence class `⟨a, b⟩` of right coprime pairs, keyed by `(aR, bR)`.
///
/// The stored generators are the smallest elements generating each ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoprimePairClass {
    canonical_generators: (Element, Element),
    first_ideal: IdealSet,
    second_ideal: IdealSet,
}

impl CoprimePairClass {
    fn from_parts(first: ElementSet, first_gen: Element, second: ElementSet, second_gen: Element) -> Self {
        Self {
            canonical_generators: (first_gen, second_gen),
            first_ideal: IdealSet::from_parts(first, Side::Right, vec![first_gen]),
            second_ideal: IdealSet::from_parts(second, Side::Right, vec![second_gen]),
        }
    }

    pub fn generators(&self) -> (Element, Element) {
        self.canonical_generators
    }

    pub fn first_ideal(&self) -> &ElementSet {
        self.first_ideal.elements()
    }

    pub fn second_ideal(&self) -> &ElementSet {
        self.second_ideal.elements()
    }

    /// Componentwise ideal inclusion.
    pub fn leq(&self, other: &Self) -> bool {
        self.first_ideal().is_subset(other.first_ideal())
            && self.second_ideal().is_subset(other.second_ideal())
    }

    pub fn lt(&self, other: &Self) -> bool {
        self.leq(other) && self != other
    }

    pub fn label(&self) -> String {
        let (a, b) = self.canonical_generators;
        format!("⟨{a},{b}⟩")
    }
}

impl Ord for CoprimePairClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.first_ideal()
            .cmp(other.first_ideal())
            .then_with(|| self.second_ideal().cmp(other.second_ideal()))
    }
}

impl PartialOrd for CoprimePairClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Class of `(a, b)`, computed from the ring tables alone.
pub fn pair_class_in(ring: &FiniteRing, a: Element, b: Element) -> Result<CoprimePairClass> {
    ring.check_element(a)?;
    ring.check_element(b)?;
    if !is_right_coprime(ring, a, b).coprime {
        return Err(Error::NotCoprime(a, b));
    }
    let first = ring.right_multiples(a);
    let second = ring.right_multiples(b);
    let canonical = |ideal: &ElementSet| {
        ring.elements()
            .find(|&x| ring.right_multiples(x) == *ideal)
            .expect("the ideal has a generator")
    };
    let (ga, gb) = (canonical(&first), canonical(&second));
    Ok(CoprimePairClass::from_parts(first, ga, second, gb))
}

/// Class of `(a, b)` using the precomputed principal ideals.
pub fn pair_class(an: &Analysis, a: Element, b: Element) -> Result<CoprimePairClass> {
    an.ring().check_element(a)?;
    an.ring().check_element(b)?;
    if !an.right_coprime(a, b) {
        return Err(Error::NotCoprime(a, b));
    }
    let (i, j) = (an.principal_index(a), an.principal_index(b));
    Ok(class_from_indices(an, i, j))
}

fn class_from_indices(an: &Analysis, i: usize, j: usize) -> CoprimePairClass {
    let ideals = an.principal_right_ideals();
    CoprimePairClass::from_parts(
        ideals[i].clone(),
        an.canonical_generator(i),
        ideals[j].clone(),
        an.canonical_generator(j),
    )
}

/// All coprime-pair classes of a ring with their order relation.
#[derive(Debug, Clone)]
pub struct RcpPoset {
    classes: Vec<CoprimePairClass>,
    /// `(index of aR, index of bR)` among the principal right ideals.
    keys: Vec<(usize, usize)>,
    /// `below[i]` holds every `j` with `classes[j] <= classes[i]`.
    below: Vec<ElementSet>,
    minimal: Vec<usize>,
}

impl RcpPoset {
    /// Enumerates every pair of principal right ideals summing to `R`.
    ///
    /// Classes come out sorted by `(aR, bR)` in lexicographic set order.
    pub fn enumerate(an: &Analysis) -> Self {
        let ring = an.ring();
        let ideals = an.principal_right_ideals();
        let m = ideals.len();
        let mut keys = Vec::new();
        for i in 0..m {
            for j in 0..m {
                if crate::analysis::sum_contains(ring, &ideals[i], &ideals[j], ring.one()) {
                    keys.push((i, j));
                }
            }
        }
        let inclusion: Vec<Vec<bool>> = ideals
            .iter()
            .map(|x| ideals.iter().map(|y| x.is_subset(y)).collect())
            .collect();
        let c = keys.len();
        let below: Vec<ElementSet> = keys
            .iter()
            .map(|&(i, j)| {
                ElementSet::from_elements(
                    c,
                    keys.iter()
                        .enumerate()
                        .filter(|&(_, &(k, l))| inclusion[k][i] && inclusion[l][j])
                        .map(|(q, _)| q),
                )
            })
            .collect();
        let minimal = (0..c).filter(|&q| below[q].len() == 1).collect();
        let classes = keys.iter().map(|&(i, j)| class_from_indices(an, i, j)).collect();
        Self {
            classes,
            keys,
            below,
            minimal,
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[CoprimePairClass] {
        &self.classes
    }

    pub fn class(&self, index: usize) -> &CoprimePairClass {
        &self.classes[index]
    }

    pub fn keys(&self) -> &[(usize, usize)] {
        &self.keys
    }

    /// Indices of the minimal classes, ascending.
    pub fn minimal(&self) -> &[usize] {
        &self.minimal
    }

    pub fn index_of(&self, class: &CoprimePairClass) -> Option<usize> {
        self.classes.binary_search(class).ok()
    }

    pub fn index_of_key(&self, key: (usize, usize)) -> Option<usize> {
        self.keys.binary_search(&key).ok()
    }

    /// `classes[lower] <= classes[upper]`
    pub fn leq(&self, lower: usize, upper: usize) -> bool {
        self.below[upper].contains(lower)
    }

    /// Classes below `index`, including itself.
    pub fn below(&self, index: usize) -> &ElementSet {
        &self.below[index]
    }

    pub fn is_minimal_index(&self, index: usize) -> bool {
        self.below[index].len() == 1
    }

    /// Smallest minimal class below `index` in `(aR, bR)` order.
    pub fn minimal_below_index(&self, index: usize) -> Option<usize> {
        self.minimal.iter().copied().find(|&q| self.leq(q, index))
    }

    /// Covering pairs `(upper, lower)`: `lower < upper` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for upper in 0..self.len() {
            for lower in self.below[upper].iter().filter(|&l| l != upper) {
                let between = self.below[upper]
                    .iter()
                    .any(|m| m != upper && m != lower && self.leq(lower, m));
                if !between {
                    out.push((upper, lower));
                }
            }
        }
        out
    }

    /// Reflexivity, antisymmetry and transitivity of the stored relation.
    pub fn is_partial_order(&self) -> bool {
        let c = self.len();
        (0..c).all(|i| self.leq(i, i))
            && (0..c).all(|i| {
                self.below[i]
                    .iter()
                    .all(|j| j == i || !self.leq(i, j))
            })
            && (0..c).all(|i| {
                self.below[i]
                    .iter()
                    .all(|j| self.below[j].is_subset(&self.below[i]))
            })
    }

    /// Length of the longest strictly descending chain.
    pub fn height(&self) -> usize {
        // classes sorted by key: a strictly smaller class has a smaller key
        // in at least one coordinate, so memoise by recursion order
        let c = self.len();
        let mut depth = vec![0usize; c];
        let mut order: Vec<usize> = (0..c).collect();
        order.sort_by_key(|&i| self.below[i].len());
        for &i in &order {
            depth[i] = 1 + self.below[i]
                .iter()
                .filter(|&j| j != i)
                .map(|j| depth[j])
                .max()
                .unwrap_or(0);
        }
        depth.into_iter().max().unwrap_or(0)
    }
}

/// `classes` of the whole poset, enumerated for an analysed ring.
pub fn enumerate_rcp(an: &Analysis) -> &RcpPoset {
    an.poset()
}

/// Outcome of the three minimality tests for one class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalityReport {
    /// No strictly smaller class exists in the poset.
    pub poset_route: bool,
    /// An idempotent `e` with `eR = aR` and `(1-e)R = bR`.
    pub idempotent_route: Option<Element>,
    /// `(r, s)` with `a = ara`, `b = bsb` and `arbs = bsar = 0`.
    pub orthogonality_route: Option<(Element, Element)>,
    pub agree: bool,
}

impl MinimalityReport {
    pub fn is_minimal(&self) -> bool {
        self.poset_route
    }
}

pub fn is_minimal(an: &Analysis, class: &CoprimePairClass) -> MinimalityReport {
    let ring = an.ring();
    let poset = an.poset();
    let index = poset.index_of(class).expect("class belongs to this ring");
    let poset_route = poset.is_minimal_index(index);

    let idempotent_route = an.idempotents().iter().find(|&e| {
        an.right_ideal(e) == class.first_ideal()
            && an.right_ideal(ring.complement(e)) == class.second_ideal()
    });

    let (a, b) = class.generators();
    let inner_a: Vec<Element> = ring.elements().filter(|&r| ring.mul3(a, r, a) == a).collect();
    let inner_b: Vec<Element> = ring.elements().filter(|&s| ring.mul3(b, s, b) == b).collect();
    let orthogonality_route = inner_a.iter().find_map(|&r| {
        let ar = ring.mul(a, r);
        inner_b.iter().find_map(|&s| {
            let bs = ring.mul(b, s);
            (ring.mul(ar, bs) == 0 && ring.mul(bs, ar) == 0).then_some((r, s))
        })
    });

    let agree = poset_route == idempotent_route.is_some()
        && poset_route == orthogonality_route.is_some();
    MinimalityReport {
        poset_route,
        idempotent_route,
        orthogonality_route,
        agree,
    }
}

/// The lexicographically smallest minimal class below `class`, if any.
pub fn minimal_below(an: &Analysis, class: &CoprimePairClass) -> Option<CoprimePairClass> {
    let poset = an.poset();
    let index = poset.index_of(class)?;
    poset
        .minimal_below_index(index)
        .map(|q| poset.class(q).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    fn analysis(spec: RingSpec) -> Analysis {
        Analysis::new(spec.build().unwrap()).unwrap()
    }

    fn keys(poset: &RcpPoset, indices: &[usize]) -> Vec<(Element, Element)> {
        indices.iter().map(|&i| poset.class(i).generators()).collect()
    }

    #[test]
    fn coprimality_in_z6() {
        let ring = RingSpec::zmod(6).build().unwrap();
        assert_eq!(
            is_right_coprime(&ring, 2, 3),
            CoprimeCheck {
                coprime: true,
                witness: Some((2, 1))
            }
        );
        assert!(!is_right_coprime(&ring, 2, 4).coprime);
        for a in ring.elements() {
            let (r, s) = is_right_coprime(&ring, a, ring.complement(a)).witness.unwrap();
            let one = ring.add(ring.mul(a, r), ring.mul(ring.complement(a), s));
            assert_eq!(one, ring.one());
        }
    }

    #[test]
    fn classes_ignore_generator_choice() {
        let an = analysis(RingSpec::zmod(6));
        let p = pair_class(&an, 2, 3).unwrap();
        assert_eq!(p, pair_class(&an, 4, 3).unwrap());
        assert_eq!(p, pair_class_in(an.ring(), 4, 3).unwrap());
        assert_eq!(p.generators(), (2, 3));
        let top = pair_class(&an, 1, 0).unwrap();
        assert!(top.first_ideal().is_full() && top.second_ideal().len() == 1);
        assert!(matches!(pair_class(&an, 2, 4), Err(Error::NotCoprime(2, 4))));
    }

    #[test]
    fn trivial_pairs_sit_above_zero_one() {
        let an = analysis(RingSpec::zmod(4));
        let zero_one = pair_class(&an, 0, 1).unwrap();
        for a in an.ring().elements() {
            for u in an.units().iter() {
                let p = pair_class(&an, a, u).unwrap();
                assert!(p.second_ideal().is_full());
                assert!(zero_one.leq(&p));
            }
        }
    }

    #[test]
    fn z6_poset() {
        let an = analysis(RingSpec::zmod(6));
        let poset = enumerate_rcp(&an);
        assert_eq!(poset.len(), 9);
        // (0,1), (1,0), (2,3) = ⟨4,3⟩, (3,2) = ⟨3,4⟩
        assert_eq!(keys(poset, poset.minimal()), vec![(0, 1), (1, 0), (2, 3), (3, 2)]);
        assert!(poset.is_partial_order());
    }

    #[test]
    fn z4_and_z2_posets() {
        let an = analysis(RingSpec::zmod(4));
        let poset = enumerate_rcp(&an);
        assert_eq!(keys(poset, poset.minimal()), vec![(0, 1), (1, 0)]);
        let an = analysis(RingSpec::zmod(2));
        let poset = enumerate_rcp(&an);
        let all: Vec<usize> = (0..poset.len()).collect();
        assert_eq!(keys(poset, &all), vec![(0, 1), (1, 0), (1, 1)]);
    }

    #[test]
    fn minimality_routes() {
        let an = analysis(RingSpec::zmod(6));
        let p = pair_class(&an, 3, 4).unwrap();
        let report = is_minimal(&an, &p);
        assert!(report.poset_route && report.agree);
        assert_eq!(report.idempotent_route, Some(3));
        let report = is_minimal(&an, &pair_class(&an, 1, 1).unwrap());
        assert!(!report.poset_route && report.agree);
        for e in an.idempotents().iter() {
            let p = pair_class(&an, e, an.ring().complement(e)).unwrap();
            assert!(is_minimal(&an, &p).is_minimal());
        }
    }

    #[test]
    fn minimal_below_tie_break() {
        let an = analysis(RingSpec::zmod(6));
        let p = pair_class(&an, 2, 3).unwrap();
        assert_eq!(minimal_below(&an, &p), Some(p.clone()));
        let top = pair_class(&an, 1, 1).unwrap();
        assert_eq!(
            minimal_below(&an, &top).unwrap(),
            pair_class(&an, 0, 1).unwrap()
        );
    }

    #[test]
    fn height_and_covers_of_z6() {
        let an = analysis(RingSpec::zmod(6));
        let poset = an.poset();
        // R ⊃ 2R ⊃ 0 in each coordinate: ⟨1,1⟩ > ⟨1,2⟩ > ⟨1,0⟩ > ... longest is 3
        assert_eq!(poset.height(), 3);
        for (upper, lower) in poset.covers() {
            assert!(poset.class(lower).lt(poset.class(upper)));
        }
    }
}
