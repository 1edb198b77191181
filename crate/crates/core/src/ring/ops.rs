use std::collections::BTreeSet;

use super::ideal::{additive_sum, closure};
use super::{Element, ElementSet, FiniteRing, IdealSet, Side};
use crate::error::{Error, Result};

/// A quotient `R/I` with its canonical projection.
#[derive(Debug, Clone)]
pub struct QuotientRing {
    pub ring: FiniteRing,
    /// `projection[x]` is the index of the coset `x + I`.
    pub projection: Vec<Element>,
    /// Smallest element of each coset, in coset order.
    pub representatives: Vec<Element>,
}

impl QuotientRing {
    pub fn project(&self, x: Element) -> Element {
        self.projection[x]
    }

    /// Checks that the projection is a surjective unital ring map.
    pub fn projection_is_ring_map(&self, base: &FiniteRing) -> bool {
        let q = &self.ring;
        let p = &self.projection;
        let surjective = (0..q.size()).all(|c| p[self.representatives[c]] == c);
        surjective
            && p[base.one()] == q.one()
            && base.elements().all(|x| {
                base.elements().all(|y| {
                    p[base.add(x, y)] == q.add(p[x], p[y]) && p[base.mul(x, y)] == q.mul(p[x], p[y])
                })
            })
    }
}

impl FiniteRing {
    pub fn is_unit(&self, x: Element) -> bool {
        self.elements().any(|v| self.mul(x, v) == self.one)
    }

    /// Elements with a two-sided inverse.
    ///
    /// In a finite ring a one-sided inverse is automatically two-sided; this
    /// is asserted on every call.
    pub fn units(&self) -> ElementSet {
        let mut units = ElementSet::empty(self.size);
        let mut left_invertible = ElementSet::empty(self.size);
        for u in self.elements() {
            for v in self.elements() {
                if self.mul(u, v) == self.one {
                    assert_eq!(
                        self.mul(v, u),
                        self.one,
                        "one-sided inverse {v} of {u} is not two-sided"
                    );
                    units.insert(u);
                    left_invertible.insert(v);
                    break;
                }
            }
        }
        assert_eq!(units, left_invertible, "unit group is not closed under inverses");
        units
    }

    pub fn inverse(&self, u: Element) -> Option<Element> {
        self.elements().find(|&v| self.mul(u, v) == self.one)
    }

    pub fn is_idempotent(&self, e: Element) -> bool {
        self.mul(e, e) == e
    }

    pub fn idempotents(&self) -> ElementSet {
        ElementSet::from_elements(self.size, self.elements().filter(|&e| self.is_idempotent(e)))
    }

    /// `aR` as a raw element set.
    pub fn right_multiples(&self, a: Element) -> ElementSet {
        ElementSet::from_elements(self.size, self.elements().map(|r| self.mul(a, r)))
    }

    /// `Ra` as a raw element set.
    pub fn left_multiples(&self, a: Element) -> ElementSet {
        ElementSet::from_elements(self.size, self.elements().map(|r| self.mul(r, a)))
    }

    /// `aR`, with `a` recorded as its generator.
    pub fn principal_right_ideal(&self, a: Element) -> IdealSet {
        IdealSet::from_parts(self.right_multiples(a), Side::Right, vec![a])
    }

    /// `Ra`, with `a` recorded as its generator.
    pub fn principal_left_ideal(&self, a: Element) -> IdealSet {
        IdealSet::from_parts(self.left_multiples(a), Side::Left, vec![a])
    }

    /// `l(a) = {x : xa = 0}`, a left ideal.
    pub fn left_annihilator(&self, a: Element) -> IdealSet {
        let set = ElementSet::from_elements(
            self.size,
            self.elements().filter(|&x| self.mul(x, a) == 0),
        );
        IdealSet::from_closed_set(self, Side::Left, set)
    }

    /// `r(a) = {x : ax = 0}`, a right ideal.
    pub fn right_annihilator(&self, a: Element) -> IdealSet {
        let set = ElementSet::from_elements(
            self.size,
            self.elements().filter(|&x| self.mul(a, x) == 0),
        );
        IdealSet::from_closed_set(self, Side::Right, set)
    }

    /// Raw left annihilator `l(a)`.
    pub fn left_annihilator_set(&self, a: Element) -> ElementSet {
        ElementSet::from_elements(self.size, self.elements().filter(|&x| self.mul(x, a) == 0))
    }

    /// Raw right annihilator `r(a)`.
    pub fn right_annihilator_set(&self, a: Element) -> ElementSet {
        ElementSet::from_elements(self.size, self.elements().filter(|&x| self.mul(a, x) == 0))
    }

    /// `J(R) = {x : 1 - rx is a unit for every r}`.
    ///
    /// The mirror scan over `1 - xr` is run as well and must agree.
    pub fn jacobson_radical(&self) -> IdealSet {
        let units = self.units();
        let left = self.radical_scan(&units, |r, x| self.mul(r, x));
        let right = self.radical_scan(&units, |r, x| self.mul(x, r));
        assert_eq!(left, right, "left and right quasi-regularity scans disagree");
        IdealSet::from_closed_set(self, Side::TwoSided, left)
    }

    fn radical_scan(
        &self,
        units: &ElementSet,
        product: impl Fn(Element, Element) -> Element,
    ) -> ElementSet {
        ElementSet::from_elements(
            self.size,
            self.elements().filter(|&x| {
                self.elements()
                    .all(|r| units.contains(self.complement(product(r, x))))
            }),
        )
    }

    /// Some `x` with `axa = a`, scanning `x` in ascending order.
    pub fn regular_witness(&self, a: Element) -> Option<Element> {
        let x = self.elements().find(|&x| self.mul3(a, x, a) == a)?;
        let e = self.mul(a, x);
        assert!(self.is_idempotent(e), "ax is not idempotent for a={a}, x={x}");
        debug_assert_eq!(self.right_multiples(e), self.right_multiples(a));
        Some(x)
    }

    /// `R/I` for a two-sided ideal `I`, cosets ordered by smallest member.
    pub fn quotient_ring(&self, ideal: &IdealSet) -> Result<QuotientRing> {
        if ideal.side() != Side::TwoSided {
            return Err(Error::NotTwoSided(ideal.side()));
        }
        Ok(self.quotient_by_set(ideal.elements()))
    }

    pub(crate) fn quotient_by_set(&self, ideal: &ElementSet) -> QuotientRing {
        let n = self.size;
        let members: Vec<Element> = ideal.iter().collect();
        let mut projection = vec![usize::MAX; n];
        let mut representatives = Vec::new();
        for x in self.elements() {
            if projection[x] != usize::MAX {
                continue;
            }
            let coset = representatives.len();
            representatives.push(x);
            for &i in &members {
                projection[self.add(x, i)] = coset;
            }
        }
        let m = representatives.len();
        let mut add = Vec::with_capacity(m * m);
        let mut mul = Vec::with_capacity(m * m);
        for &x in &representatives {
            for &y in &representatives {
                add.push(projection[self.add(x, y)] as u32);
                mul.push(projection[self.mul(x, y)] as u32);
            }
        }
        let label = format!("{} / <{} elements>", self.label, ideal.len());
        let ring = FiniteRing::from_trusted(m, add, mul, projection[self.one], label);
        QuotientRing {
            ring,
            projection,
            representatives,
        }
    }

    /// The two-sided ideal generated by `generators`.
    pub fn two_sided_ideal(&self, generators: &[Element]) -> Result<IdealSet> {
        IdealSet::generated_by(self, Side::TwoSided, generators)
    }

    /// All `side` ideals, found as sums of principal ideals.
    ///
    /// Every ideal of a finite ring is a finite sum of principal ones, so the
    /// search is complete. Fails once more than `cap` ideals have been found.
    pub fn all_ideals(&self, side: Side, cap: usize) -> Result<Vec<ElementSet>> {
        let principal: BTreeSet<ElementSet> = self
            .elements()
            .map(|a| closure(self, side, &[a]))
            .collect();
        let principal: Vec<ElementSet> = principal.into_iter().collect();
        let zero = ElementSet::from_elements(self.size, [0]);
        let mut seen: BTreeSet<ElementSet> = BTreeSet::new();
        seen.insert(zero.clone());
        let mut frontier = vec![zero];
        while let Some(ideal) = frontier.pop() {
            for p in &principal {
                if p.is_subset(&ideal) {
                    continue;
                }
                let sum = additive_sum(self, &ideal, p);
                if !seen.contains(&sum) {
                    if seen.len() >= cap {
                        return Err(Error::IdealEnumerationCapExceeded { cap });
                    }
                    seen.insert(sum.clone());
                    frontier.push(sum);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }
}
