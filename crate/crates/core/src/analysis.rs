//! Per-ring cache of the tables every analysis keeps asking for.

use std::sync::OnceLock;

use crate::classify::continuity::{check_c_conditions, CConditions};
use crate::error::Result;
use crate::rcp::RcpPoset;
use crate::ring::{Element, ElementSet, FiniteRing, QuotientRing, SizeCaps};

/// A ring prepared for full analysis.
///
/// Construction precomputes the per-element principal ideals and annihilators
/// (quadratic in the ring size); the coprime-pair poset and the quotient by the
/// radical are built on first use. The ring is immutable and the struct is
/// `Sync`, so one instance can be shared by concurrent workers.
#[derive(Debug)]
pub struct Analysis {
    ring: FiniteRing,
    caps: SizeCaps,
    units: ElementSet,
    idempotents: ElementSet,
    right_multiples: Vec<ElementSet>,
    left_multiples: Vec<ElementSet>,
    left_annihilators: Vec<ElementSet>,
    right_annihilators: Vec<ElementSet>,
    /// Distinct principal right ideals in ascending set order.
    principal: Vec<ElementSet>,
    /// Smallest generator of each entry of `principal`.
    principal_generator: Vec<Element>,
    /// `principal_index[a]` locates `aR` in `principal`.
    principal_index: Vec<usize>,
    radical: ElementSet,
    quotient: OnceLock<QuotientRing>,
    poset: OnceLock<RcpPoset>,
    vn_regular: OnceLock<bool>,
    c_conditions: OnceLock<Result<CConditions>>,
}

impl Analysis {
    pub fn new(ring: FiniteRing) -> Result<Self> {
        Self::with_caps(ring, SizeCaps::default())
    }

    pub fn with_caps(ring: FiniteRing, caps: SizeCaps) -> Result<Self> {
        caps.check_full(ring.size())?;
        let units = ring.units();
        let idempotents = ring.idempotents();
        let right_multiples: Vec<_> = ring.elements().map(|a| ring.right_multiples(a)).collect();
        let left_multiples = ring.elements().map(|a| ring.left_multiples(a)).collect();
        let left_annihilators = ring.elements().map(|a| ring.left_annihilator_set(a)).collect();
        let right_annihilators = ring.elements().map(|a| ring.right_annihilator_set(a)).collect();

        let mut principal: Vec<ElementSet> = right_multiples.clone();
        principal.sort();
        principal.dedup();
        let principal_index: Vec<usize> = right_multiples
            .iter()
            .map(|s| principal.binary_search(s).expect("principal ideal listed"))
            .collect();
        let mut principal_generator = vec![usize::MAX; principal.len()];
        for a in ring.elements().rev() {
            principal_generator[principal_index[a]] = a;
        }
        let radical = ring.jacobson_radical().into_elements();

        Ok(Self {
            ring,
            caps,
            units,
            idempotents,
            right_multiples,
            left_multiples,
            left_annihilators,
            right_annihilators,
            principal,
            principal_generator,
            principal_index,
            radical,
            quotient: OnceLock::new(),
            poset: OnceLock::new(),
            vn_regular: OnceLock::new(),
            c_conditions: OnceLock::new(),
        })
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn caps(&self) -> &SizeCaps {
        &self.caps
    }

    pub fn size(&self) -> usize {
        self.ring.size()
    }

    pub fn units(&self) -> &ElementSet {
        &self.units
    }

    pub fn is_unit(&self, x: Element) -> bool {
        self.units.contains(x)
    }

    pub fn idempotents(&self) -> &ElementSet {
        &self.idempotents
    }

    /// `aR`
    pub fn right_ideal(&self, a: Element) -> &ElementSet {
        &self.right_multiples[a]
    }

    /// `Ra`
    pub fn left_ideal(&self, a: Element) -> &ElementSet {
        &self.left_multiples[a]
    }

    /// `l(a)`
    pub fn left_annihilator(&self, a: Element) -> &ElementSet {
        &self.left_annihilators[a]
    }

    /// `r(a)`
    pub fn right_annihilator(&self, a: Element) -> &ElementSet {
        &self.right_annihilators[a]
    }

    pub fn principal_right_ideals(&self) -> &[ElementSet] {
        &self.principal
    }

    /// Index of `aR` among [`Analysis::principal_right_ideals`].
    pub fn principal_index(&self, a: Element) -> usize {
        self.principal_index[a]
    }

    /// Smallest element generating the `index`-th principal right ideal.
    pub fn canonical_generator(&self, index: usize) -> Element {
        self.principal_generator[index]
    }

    /// Index of `set` among the principal right ideals, if it is one.
    pub fn find_principal(&self, set: &ElementSet) -> Option<usize> {
        self.principal.binary_search(set).ok()
    }

    pub fn radical(&self) -> &ElementSet {
        &self.radical
    }

    /// `R/J(R)` with its projection.
    pub fn quotient_by_radical(&self) -> &QuotientRing {
        self.quotient
            .get_or_init(|| self.ring.quotient_by_set(&self.radical))
    }

    /// The coprime-pair poset, enumerated on first use.
    pub fn poset(&self) -> &RcpPoset {
        self.poset.get_or_init(|| RcpPoset::enumerate(self))
    }

    /// Every element has an inner inverse `axa = a`.
    pub fn is_von_neumann_regular(&self) -> bool {
        *self
            .vn_regular
            .get_or_init(|| self.ring.elements().all(|a| self.ring.regular_witness(a).is_some()))
    }

    /// C1, C2 and C3 for the left regular module, computed once.
    pub fn c_conditions(&self) -> &Result<CConditions> {
        self.c_conditions
            .get_or_init(|| check_c_conditions(&self.ring, self.caps.ideals))
    }

    /// Left C3, or `None` when the left ideals could not be enumerated.
    pub fn left_c3(&self) -> Option<bool> {
        self.c_conditions().as_ref().ok().map(|c| c.c3)
    }

    /// `1 ∈ xR + yR`, the fast coprimality test used inside searches.
    pub fn right_coprime(&self, x: Element, y: Element) -> bool {
        sum_contains(&self.ring, &self.right_multiples[x], &self.right_multiples[y], self.ring.one())
    }

    /// `1 ∈ Rx + Ry`.
    pub fn left_coprime(&self, x: Element, y: Element) -> bool {
        sum_contains(&self.ring, &self.left_multiples[x], &self.left_multiples[y], self.ring.one())
    }
}

/// `target ∈ a + b` for additive subsets `a`, `b`.
pub(crate) fn sum_contains(ring: &FiniteRing, a: &ElementSet, b: &ElementSet, target: Element) -> bool {
    b.iter().any(|y| a.contains(ring.sub(target, y)))
}
