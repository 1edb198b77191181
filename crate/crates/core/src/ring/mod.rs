//! Finite rings as explicit operation tables.
//!
//! Every ring is stored as a pair of `n x n` tables over the element indices
//! `0..n`. The zero element is always index 0; the identity sits wherever the
//! constructor puts it. All predicates downstream are plain table scans.

mod ideal;
mod ops;
mod set;
mod spec;

pub(crate) use ideal::additive_sum;
pub use ideal::{IdealSet, Side};
pub use ops::QuotientRing;
pub use set::ElementSet;
pub use spec::{RingSpec, SizeCaps};

use crate::error::{Error, Result};

/// Element of a finite ring, addressed by its table index.
pub type Element = usize;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteRing {
    size: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    one: Element,
    label: String,
}

impl std::fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteRing")
            .field("label", &self.label)
            .field("size", &self.size)
            .field("one", &self.one)
            .finish()
    }
}

/// A triple of elements on which a ring axiom fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: &'static str,
    pub witness: (Element, Element, Element),
}

impl std::fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (x, y, z) = self.witness;
        write!(f, "{} fails at (x, y, z) = ({x}, {y}, {z})", self.axiom)
    }
}

impl FiniteRing {
    /// Builds a ring from raw tables and checks every ring axiom on all triples.
    pub fn from_tables(
        add: Vec<Vec<Element>>,
        mul: Vec<Vec<Element>>,
        one: Element,
        label: impl Into<String>,
    ) -> Result<Self> {
        let size = add.len();
        if size == 0 {
            return Err(Error::InvalidTable {
                reason: "a ring needs at least one element".into(),
            });
        }
        if mul.len() != size {
            return Err(Error::InvalidTable {
                reason: format!("add has {size} rows but mul has {}", mul.len()),
            });
        }
        for (name, table) in [("add", &add), ("mul", &mul)] {
            for (i, row) in table.iter().enumerate() {
                if row.len() != size {
                    return Err(Error::InvalidTable {
                        reason: format!("{name} row {i} has {} entries, expected {size}", row.len()),
                    });
                }
                if let Some(&bad) = row.iter().find(|&&v| v >= size) {
                    return Err(Error::InvalidTable {
                        reason: format!("{name} row {i} contains out-of-range entry {bad}"),
                    });
                }
            }
        }
        if one >= size {
            return Err(Error::InvalidTable {
                reason: format!("identity {one} out of range"),
            });
        }
        if let Some(x) = (0..size).find(|&x| add[0][x] != x || add[x][0] != x) {
            return Err(Error::InvalidTable {
                reason: format!("element 0 must be the additive identity (0 + {x} != {x})"),
            });
        }
        let mut neg = vec![u32::MAX; size];
        for x in 0..size {
            match (0..size).find(|&y| add[x][y] == 0) {
                Some(y) => neg[x] = y as u32,
                None => {
                    return Err(Error::InvalidTable {
                        reason: format!("element {x} has no additive inverse"),
                    })
                }
            }
        }
        let flat = |t: Vec<Vec<Element>>| t.into_iter().flatten().map(|v| v as u32).collect();
        let ring = Self {
            size,
            add: flat(add),
            mul: flat(mul),
            neg,
            one,
            label: label.into(),
        };
        if let Some(v) = ring.check_axioms() {
            return Err(Error::InvalidTable {
                reason: v.to_string(),
            });
        }
        Ok(ring)
    }

    /// Assembles a ring from flat tables produced by a constructor that is
    /// correct by construction. The axioms are checked in debug builds only
    /// for small rings; callers may run [`FiniteRing::check_axioms`] themselves.
    pub(crate) fn from_trusted(
        size: usize,
        add: Vec<u32>,
        mul: Vec<u32>,
        one: Element,
        label: String,
    ) -> Self {
        debug_assert_eq!(add.len(), size * size);
        debug_assert_eq!(mul.len(), size * size);
        let neg = (0..size)
            .map(|x| {
                (0..size)
                    .find(|&y| add[x * size + y] == 0)
                    .expect("additive inverse") as u32
            })
            .collect();
        let ring = Self {
            size,
            add,
            mul,
            neg,
            one,
            label,
        };
        debug_assert!(size > 64 || ring.check_axioms().is_none(), "{:?}", ring.check_axioms());
        ring
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> Element {
        0
    }

    pub fn one(&self) -> Element {
        self.one
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub(crate) fn set_label(&mut self, label: String) {
        self.label = label;
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.size
    }

    #[inline]
    pub fn add(&self, x: Element, y: Element) -> Element {
        self.add[x * self.size + y] as Element
    }

    #[inline]
    pub fn mul(&self, x: Element, y: Element) -> Element {
        self.mul[x * self.size + y] as Element
    }

    #[inline]
    pub fn neg(&self, x: Element) -> Element {
        self.neg[x] as Element
    }

    #[inline]
    pub fn sub(&self, x: Element, y: Element) -> Element {
        self.add(x, self.neg(y))
    }

    /// `1 - x`
    #[inline]
    pub fn complement(&self, x: Element) -> Element {
        self.sub(self.one, x)
    }

    pub fn mul3(&self, x: Element, y: Element, z: Element) -> Element {
        self.mul(self.mul(x, y), z)
    }

    pub fn check_element(&self, x: Element) -> Result<Element> {
        if x < self.size {
            Ok(x)
        } else {
            Err(Error::ElementOutOfRange {
                index: x,
                size: self.size,
            })
        }
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|x| (x + 1..self.size).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn add_table(&self) -> Vec<Vec<Element>> {
        self.add
            .chunks(self.size)
            .map(|row| row.iter().map(|&v| v as Element).collect())
            .collect()
    }

    pub fn mul_table(&self) -> Vec<Vec<Element>> {
        self.mul
            .chunks(self.size)
            .map(|row| row.iter().map(|&v| v as Element).collect())
            .collect()
    }

    /// Checks every ring axiom on the tables and returns the first violation.
    ///
    /// Cost is cubic in the ring size.
    pub fn check_axioms(&self) -> Option<AxiomViolation> {
        let n = self.size;
        let fail = |axiom, x, y, z| {
            Some(AxiomViolation {
                axiom,
                witness: (x, y, z),
            })
        };
        if n > 1 && self.one == 0 {
            return fail("identity distinct from zero", 0, 0, 0);
        }
        for x in 0..n {
            if self.mul(self.one, x) != x || self.mul(x, self.one) != x {
                return fail("multiplicative identity", self.one, x, self.one);
            }
            for y in 0..n {
                if self.add(x, y) != self.add(y, x) {
                    return fail("additive commutativity", x, y, 0);
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy_add = self.add(x, y);
                let xy_mul = self.mul(x, y);
                for z in 0..n {
                    if self.add(xy_add, z) != self.add(x, self.add(y, z)) {
                        return fail("additive associativity", x, y, z);
                    }
                    if self.mul(xy_mul, z) != self.mul(x, self.mul(y, z)) {
                        return fail("multiplicative associativity", x, y, z);
                    }
                    if self.mul(x, self.add(y, z)) != self.add(xy_mul, self.mul(x, z)) {
                        return fail("left distributivity", x, y, z);
                    }
                    if self.mul(self.add(y, z), x) != self.add(self.mul(y, x), self.mul(z, x)) {
                        return fail("right distributivity", x, y, z);
                    }
                }
            }
        }
        None
    }
}
