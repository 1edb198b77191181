use serde::Serialize;

use super::{Element, ElementSet, FiniteRing};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Right,
    Left,
    TwoSided,
}

/// An ideal of a finite ring together with a generating set.
///
/// The element set always equals the closure of `generators` under addition
/// and multiplication on `side`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealSet {
    elements: ElementSet,
    side: Side,
    generators: Vec<Element>,
}

impl IdealSet {
    /// The smallest `side` ideal containing `generators`.
    pub fn generated_by(ring: &FiniteRing, side: Side, generators: &[Element]) -> Result<Self> {
        for &g in generators {
            ring.check_element(g)?;
        }
        let mut gens = generators.to_vec();
        gens.dedup();
        Ok(Self {
            elements: closure(ring, side, generators),
            side,
            generators: gens,
        })
    }

    /// Wraps a set the caller knows to be a `side` ideal; a generating set is
    /// chosen greedily in ascending element order.
    pub fn from_closed_set(ring: &FiniteRing, side: Side, elements: ElementSet) -> Self {
        debug_assert!(is_closed(ring, side, &elements));
        let mut generators = Vec::new();
        let mut span = ElementSet::from_elements(ring.size(), [0]);
        for x in elements.iter() {
            if !span.contains(x) {
                generators.push(x);
                span = additive_sum(ring, &span, &closure(ring, side, &[x]));
            }
        }
        debug_assert_eq!(span, elements);
        Self {
            elements,
            side,
            generators,
        }
    }

    pub(crate) fn from_parts(elements: ElementSet, side: Side, generators: Vec<Element>) -> Self {
        Self {
            elements,
            side,
            generators,
        }
    }

    pub fn elements(&self) -> &ElementSet {
        &self.elements
    }

    pub fn into_elements(self) -> ElementSet {
        self.elements
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: Element) -> bool {
        self.elements.contains(x)
    }

    pub fn is_zero(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_whole_ring(&self) -> bool {
        self.elements.is_full()
    }

    /// Re-checks the closure invariants against the ring tables.
    pub fn is_valid_in(&self, ring: &FiniteRing) -> bool {
        self.elements.universe() == ring.size()
            && is_closed(ring, self.side, &self.elements)
            && self.generators.iter().all(|&g| self.elements.contains(g))
            && closure(ring, self.side, &self.generators) == self.elements
    }

    /// `I + K`.
    pub fn sum(&self, other: &Self, ring: &FiniteRing) -> Result<Self> {
        self.compatible(other)?;
        let mut generators = self.generators.clone();
        for &g in &other.generators {
            if !generators.contains(&g) {
                generators.push(g);
            }
        }
        Ok(Self {
            elements: additive_sum(ring, &self.elements, &other.elements),
            side: self.side,
            generators,
        })
    }

    /// `I ∩ K`.
    pub fn intersection(&self, other: &Self, ring: &FiniteRing) -> Result<Self> {
        self.compatible(other)?;
        Ok(Self::from_closed_set(
            ring,
            self.side,
            self.elements.intersection(&other.elements),
        ))
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.side != other.side {
            return Err(Error::SideMismatch(self.side, other.side));
        }
        if self.elements.universe() != other.elements.universe() {
            return Err(Error::RingMismatch(
                self.elements.universe(),
                other.elements.universe(),
            ));
        }
        Ok(())
    }
}

/// `{x + y : x ∈ a, y ∈ b}`
pub(crate) fn additive_sum(ring: &FiniteRing, a: &ElementSet, b: &ElementSet) -> ElementSet {
    let mut out = ElementSet::empty(ring.size());
    let bs: Vec<Element> = b.iter().collect();
    for x in a.iter() {
        for &y in &bs {
            out.insert(ring.add(x, y));
        }
    }
    out
}

/// Smallest `side` ideal containing `generators`.
pub(crate) fn closure(ring: &FiniteRing, side: Side, generators: &[Element]) -> ElementSet {
    let n = ring.size();
    // products already absorb multiplication on the relevant side
    let mut products = ElementSet::empty(n);
    for &g in generators {
        for r in ring.elements() {
            match side {
                Side::Right => {
                    products.insert(ring.mul(g, r));
                }
                Side::Left => {
                    products.insert(ring.mul(r, g));
                }
                Side::TwoSided => {
                    let rg = ring.mul(r, g);
                    for s in ring.elements() {
                        products.insert(ring.mul(rg, s));
                    }
                }
            }
        }
    }
    additive_closure(ring, &products)
}

/// Additive subgroup generated by `seed`.
pub(crate) fn additive_closure(ring: &FiniteRing, seed: &ElementSet) -> ElementSet {
    let steps: Vec<Element> = seed.iter().filter(|&x| x != 0).collect();
    let mut out = ElementSet::from_elements(ring.size(), [0]);
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for &s in &steps {
            let y = ring.add(x, s);
            if out.insert(y) {
                stack.push(y);
            }
        }
    }
    out
}

pub(crate) fn is_closed(ring: &FiniteRing, side: Side, set: &ElementSet) -> bool {
    if !set.contains(0) {
        return false;
    }
    let members: Vec<Element> = set.iter().collect();
    for &x in &members {
        for &y in &members {
            if !set.contains(ring.add(x, y)) {
                return false;
            }
        }
        for r in ring.elements() {
            let right_ok = set.contains(ring.mul(x, r));
            let left_ok = set.contains(ring.mul(r, x));
            let ok = match side {
                Side::Right => right_ok,
                Side::Left => left_ok,
                Side::TwoSided => right_ok && left_ok,
            };
            if !ok {
                return false;
            }
        }
    }
    true
}
