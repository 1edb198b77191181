use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Element, FiniteRing, Side};
use crate::error::{Error, Result};

/// Size limits applied while building and analysing rings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeCaps {
    /// Largest ring accepted by the coprime-pair and classification analyses.
    pub full_analysis: usize,
    /// Largest ring that may be materialized as tables at all.
    pub arithmetic: usize,
    /// Largest number of one-sided ideals an ideal enumeration may produce.
    pub ideals: usize,
}

impl Default for SizeCaps {
    fn default() -> Self {
        Self {
            full_analysis: 512,
            arithmetic: 4096,
            ideals: 4096,
        }
    }
}

impl SizeCaps {
    pub fn check_full(&self, size: usize) -> Result<()> {
        if size > self.full_analysis {
            return Err(Error::SizeCapExceeded {
                size,
                cap: self.full_analysis,
                mode: "full-analysis",
            });
        }
        Ok(())
    }
}

/// Recursive description of a finite ring.
///
/// Element orders produced by [`RingSpec::build`]:
/// - `zmod`: residues ascending;
/// - `matrix`: row-major entries, lexicographic over base indices with the
///   first entry most significant;
/// - `upper_triangular`: same, over the on-or-above-diagonal entries only;
/// - `product`: lexicographic over factors, first factor most significant;
/// - `quotient`: cosets sorted by their smallest representative;
/// - `table`: exactly as given (element 0 must be the additive identity).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum RingSpec {
    Zmod {
        n: usize,
    },
    Matrix {
        k: usize,
        base: Box<RingSpec>,
    },
    UpperTriangular {
        k: usize,
        base: Box<RingSpec>,
    },
    Product {
        factors: Vec<RingSpec>,
    },
    Quotient {
        base: Box<RingSpec>,
        ideal_generators: Vec<Element>,
    },
    Table {
        add: Vec<Vec<Element>>,
        mul: Vec<Vec<Element>>,
        one: Element,
    },
}

impl RingSpec {
    pub fn zmod(n: usize) -> Self {
        RingSpec::Zmod { n }
    }

    pub fn matrix(k: usize, base: RingSpec) -> Self {
        RingSpec::Matrix {
            k,
            base: Box::new(base),
        }
    }

    pub fn upper_triangular(k: usize, base: RingSpec) -> Self {
        RingSpec::UpperTriangular {
            k,
            base: Box::new(base),
        }
    }

    pub fn product(factors: Vec<RingSpec>) -> Self {
        RingSpec::Product { factors }
    }

    pub fn quotient(base: RingSpec, ideal_generators: Vec<Element>) -> Self {
        RingSpec::Quotient {
            base: Box::new(base),
            ideal_generators,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ring specs always serialize")
    }

    /// Number of elements the spec describes, or `None` on overflow.
    ///
    /// Quotients report the size of their base, an upper bound.
    pub fn size_bound(&self) -> Option<usize> {
        match self {
            RingSpec::Zmod { n } => Some(*n),
            RingSpec::Matrix { k, base } => base.size_bound()?.checked_pow((k * k) as u32),
            RingSpec::UpperTriangular { k, base } => {
                base.size_bound()?.checked_pow((k * (k + 1) / 2) as u32)
            }
            RingSpec::Product { factors } => factors
                .iter()
                .try_fold(1usize, |acc, f| acc.checked_mul(f.size_bound()?)),
            RingSpec::Quotient { base, .. } => base.size_bound(),
            RingSpec::Table { add, .. } => Some(add.len()),
        }
    }

    pub fn build(&self) -> Result<FiniteRing> {
        self.build_with(&SizeCaps::default())
    }

    pub fn build_with(&self, caps: &SizeCaps) -> Result<FiniteRing> {
        let size = self.size_bound().unwrap_or(usize::MAX);
        if size > caps.arithmetic {
            return Err(Error::SizeCapExceeded {
                size,
                cap: caps.arithmetic,
                mode: "arithmetic",
            });
        }
        let mut ring = match self {
            RingSpec::Zmod { n } => zmod(*n)?,
            RingSpec::Matrix { k, base } => {
                let base = base.build_with(caps)?;
                matrix_ring(*k, &base, false)?
            }
            RingSpec::UpperTriangular { k, base } => {
                let base = base.build_with(caps)?;
                matrix_ring(*k, &base, true)?
            }
            RingSpec::Product { factors } => {
                let built = factors
                    .iter()
                    .map(|f| f.build_with(caps))
                    .collect::<Result<Vec<_>>>()?;
                product_ring(&built)?
            }
            RingSpec::Quotient {
                base,
                ideal_generators,
            } => {
                let base = base.build_with(caps)?;
                let ideal = super::IdealSet::generated_by(&base, Side::TwoSided, ideal_generators)?;
                base.quotient_ring(&ideal)?.ring
            }
            RingSpec::Table { add, mul, one } => {
                FiniteRing::from_tables(add.clone(), mul.clone(), *one, "")?
            }
        };
        ring.set_label(self.to_string());
        Ok(ring)
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Zmod { n } => write!(f, "zmod({n})"),
            RingSpec::Matrix { k, base } => write!(f, "matrix({k}, {base})"),
            RingSpec::UpperTriangular { k, base } => write!(f, "upper_triangular({k}, {base})"),
            RingSpec::Product { factors } => {
                write!(f, "product(")?;
                for (i, factor) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{factor}")?;
                }
                write!(f, ")")
            }
            RingSpec::Quotient {
                base,
                ideal_generators,
            } => {
                write!(f, "quotient({base}, {{")?;
                for (i, g) in ideal_generators.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{g}")?;
                }
                write!(f, "}})")
            }
            RingSpec::Table { add, .. } => write!(f, "table({})", add.len()),
        }
    }
}

fn zmod(n: usize) -> Result<FiniteRing> {
    if n == 0 {
        return Err(Error::InvalidSpec("zmod needs n >= 1".into()));
    }
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            add.push(((x + y) % n) as u32);
            mul.push(((x * y) % n) as u32);
        }
    }
    Ok(FiniteRing::from_trusted(n, add, mul, 1 % n, String::new()))
}

/// Positions `(row, col)` of the stored entries, row-major.
fn matrix_positions(k: usize, upper: bool) -> Vec<(usize, usize)> {
    (0..k)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .filter(|&(i, j)| !upper || i <= j)
        .collect()
}

fn matrix_ring(k: usize, base: &FiniteRing, upper: bool) -> Result<FiniteRing> {
    if k == 0 {
        return Err(Error::InvalidSpec("matrix size k must be >= 1".into()));
    }
    let m = base.size();
    let positions = matrix_positions(k, upper);
    let slots = positions.len();
    let n = m
        .checked_pow(slots as u32)
        .ok_or_else(|| Error::InvalidSpec("matrix ring too large".into()))?;
    let mut slot_of = vec![usize::MAX; k * k];
    for (s, &(i, j)) in positions.iter().enumerate() {
        slot_of[i * k + j] = s;
    }
    // entries[x] = digits of x, first slot most significant
    let entries: Vec<Vec<Element>> = (0..n)
        .map(|mut x| {
            let mut digits = vec![0; slots];
            for d in digits.iter_mut().rev() {
                *d = x % m;
                x /= m;
            }
            digits
        })
        .collect();
    let encode = |digits: &[Element]| digits.iter().fold(0, |acc, &d| acc * m + d);
    let entry = |x: &[Element], i: usize, j: usize| match slot_of[i * k + j] {
        usize::MAX => 0,
        s => x[s],
    };

    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    let mut buf = vec![0; slots];
    for a in &entries {
        for b in &entries {
            for s in 0..slots {
                buf[s] = base.add(a[s], b[s]);
            }
            add.push(encode(&buf) as u32);
            for (s, &(i, j)) in positions.iter().enumerate() {
                let mut acc = 0;
                for l in 0..k {
                    acc = base.add(acc, base.mul(entry(a, i, l), entry(b, l, j)));
                }
                buf[s] = acc;
            }
            mul.push(encode(&buf) as u32);
        }
    }
    let identity: Vec<Element> = positions
        .iter()
        .map(|&(i, j)| if i == j { base.one() } else { 0 })
        .collect();
    Ok(FiniteRing::from_trusted(n, add, mul, encode(&identity), String::new()))
}

fn product_ring(factors: &[FiniteRing]) -> Result<FiniteRing> {
    if factors.is_empty() {
        return Err(Error::InvalidSpec("product needs at least one factor".into()));
    }
    let n: usize = factors.iter().map(FiniteRing::size).product();
    let coords: Vec<Vec<Element>> = (0..n)
        .map(|mut x| {
            let mut c = vec![0; factors.len()];
            for (slot, f) in c.iter_mut().zip(factors).rev() {
                *slot = x % f.size();
                x /= f.size();
            }
            c
        })
        .collect();
    let encode = |c: &[Element]| {
        c.iter()
            .zip(factors)
            .fold(0, |acc, (&d, f)| acc * f.size() + d)
    };
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    let mut buf = vec![0; factors.len()];
    for a in &coords {
        for b in &coords {
            for (i, f) in factors.iter().enumerate() {
                buf[i] = f.add(a[i], b[i]);
            }
            add.push(encode(&buf) as u32);
            for (i, f) in factors.iter().enumerate() {
                buf[i] = f.mul(a[i], b[i]);
            }
            mul.push(encode(&buf) as u32);
        }
    }
    let one: Vec<Element> = factors.iter().map(FiniteRing::one).collect();
    Ok(FiniteRing::from_trusted(n, add, mul, encode(&one), String::new()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_sizes() {
        let z6 = RingSpec::zmod(6).build().unwrap();
        assert_eq!((z6.size(), z6.one()), (6, 1));
        assert!(z6.is_commutative());
        let m2 = RingSpec::matrix(2, RingSpec::zmod(2)).build().unwrap();
        assert_eq!(m2.size(), 16);
        assert!(!m2.is_commutative());
        let ut = RingSpec::upper_triangular(2, RingSpec::zmod(3)).build().unwrap();
        assert_eq!(ut.size(), 27);
        let p = RingSpec::product(vec![RingSpec::zmod(2), RingSpec::zmod(4)])
            .build()
            .unwrap();
        assert_eq!((p.size(), p.one()), (8, 5));
    }

    #[test]
    fn matrix_identity_index() {
        // entries (1,0,0,1) in base 2 with the first entry most significant
        let m2 = RingSpec::matrix(2, RingSpec::zmod(2)).build().unwrap();
        assert_eq!(m2.one(), 0b1001);
        // upper triangular slots (0,0),(0,1),(1,1): identity digits (1,0,1)
        let ut = RingSpec::upper_triangular(2, RingSpec::zmod(2)).build().unwrap();
        assert_eq!(ut.one(), 0b101);
    }

    #[test]
    fn labels_record_construction() {
        let spec = RingSpec::quotient(RingSpec::zmod(8), vec![4]);
        assert_eq!(spec.build().unwrap().label(), "quotient(zmod(8), {4})");
        let spec = RingSpec::product(vec![RingSpec::zmod(2), RingSpec::matrix(2, RingSpec::zmod(2))]);
        assert_eq!(spec.to_string(), "product(zmod(2), matrix(2, zmod(2)))");
    }

    #[test]
    fn json_field_names() {
        let spec = RingSpec::from_json(
            r#"{"type":"quotient","base":{"type":"zmod","n":8},"ideal_generators":[4]}"#,
        )
        .unwrap();
        assert_eq!(spec, RingSpec::quotient(RingSpec::zmod(8), vec![4]));
        let spec = RingSpec::from_json(
            r#"{"type":"product","factors":[{"type":"zmod","n":2},{"type":"matrix","k":2,"base":{"type":"zmod","n":3}}]}"#,
        )
        .unwrap();
        assert_eq!(spec.size_bound(), Some(162));
        let table = RingSpec::from_json(
            r#"{"type":"table","add":[[0,1],[1,0]],"mul":[[0,0],[0,1]],"one":1}"#,
        )
        .unwrap();
        assert_eq!(table.build().unwrap().size(), 2);
        assert!(RingSpec::from_json(r#"{"type":"zmod","n":3,"bogus":1}"#).is_err());
        assert!(RingSpec::from_json(r#"{"type":"polynomial","n":3}"#).is_err());
    }

    #[test]
    fn caps_are_enforced() {
        let caps = SizeCaps {
            arithmetic: 100,
            ..SizeCaps::default()
        };
        let err = RingSpec::matrix(2, RingSpec::zmod(4)).build_with(&caps).unwrap_err();
        assert!(matches!(err, Error::SizeCapExceeded { size: 256, cap: 100, .. }));
        assert!(RingSpec::matrix(40, RingSpec::zmod(40)).build().unwrap_err().is_cap());
        assert!(matches!(RingSpec::zmod(0).build(), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn constructed_rings_satisfy_axioms() {
        for spec in [
            RingSpec::zmod(1),
            RingSpec::zmod(12),
            RingSpec::matrix(2, RingSpec::zmod(2)),
            RingSpec::upper_triangular(2, RingSpec::zmod(3)),
            RingSpec::upper_triangular(3, RingSpec::zmod(2)),
            RingSpec::product(vec![RingSpec::zmod(2), RingSpec::zmod(4)]),
            RingSpec::quotient(RingSpec::matrix(2, RingSpec::zmod(4)), vec![2]),
        ] {
            let ring = spec.build().unwrap();
            assert_eq!(ring.check_axioms(), None, "{spec}");
        }
    }
}
