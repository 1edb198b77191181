use super::predicates;
use super::PredicateRecord;
use crate::analysis::Analysis;
use crate::error::{Error, Result};

/// A ring-class predicate decided on an analysed ring.
pub trait Predicate: Send + Sync {
    fn name(&self) -> &'static str;
    /// One line saying what is decided and by which routes.
    fn description(&self) -> &'static str;
    fn evaluate(&self, an: &Analysis) -> Result<PredicateRecord>;
}

struct FnPredicate {
    name: &'static str,
    description: &'static str,
    eval: fn(&Analysis) -> Result<PredicateRecord>,
}

impl Predicate for FnPredicate {
    fn name(&self) -> &'static str {
        self.name
    }

    fn description(&self) -> &'static str {
        self.description
    }

    fn evaluate(&self, an: &Analysis) -> Result<PredicateRecord> {
        (self.eval)(an)
    }
}

/// Predicates by name, kept in registration order.
pub struct PredicateRegistry {
    entries: Vec<Box<dyn Predicate>>,
}

impl Default for PredicateRegistry {
    fn default() -> Self {
        Self::standard()
    }
}

impl PredicateRegistry {
    pub fn empty() -> Self {
        Self {
            entries: Vec::new(),
        }
    }

    pub fn standard() -> Self {
        let mut registry = Self::empty();
        let table: [(&'static str, &'static str, fn(&Analysis) -> Result<PredicateRecord>); 15] = [
            (
                "local",
                "non-units form an ideal; every coprime pair has a unit member; exactly two minimal classes with a minimal class below every class",
                predicates::is_local,
            ),
            (
                "indecomposable",
                "only the idempotents 0 and 1; exactly two minimal classes",
                predicates::is_indecomposable,
            ),
            (
                "vn_regular",
                "every element has an inner inverse; every coprime class has regular generators",
                predicates::is_vn_regular,
            ),
            (
                "exchange",
                "idempotent e in rR with 1-e in (1-r)R for every r; a minimal class below every class",
                predicates::is_exchange,
            ),
            (
                "strongly_exchange",
                "every descending chain of coprime classes has a minimal lower bound",
                predicates::is_strongly_exchange,
            ),
            (
                "semiregular",
                "R/J regular with idempotents lifting; every element regular modulo J",
                predicates::is_semiregular,
            ),
            (
                "semiperfect",
                "R/J semisimple with idempotents lifting; a complete set of orthogonal local idempotents",
                predicates::is_semiperfect,
            ),
            (
                "semisimple",
                "zero Jacobson radical; every principal right ideal generated by an idempotent",
                predicates::is_semisimple,
            ),
            (
                "clean",
                "every element is an idempotent plus a unit",
                predicates::is_clean,
            ),
            (
                "quasi_duo",
                "maximal right ideals are two-sided; left coprime pairs are right coprime",
                predicates::is_quasi_duo,
            ),
            (
                "perfect_dcc",
                "descending chains of coprime classes are finite; J nilpotent with R/J semisimple",
                predicates::is_perfect_dcc,
            ),
            (
                "continuous_c1",
                "every left ideal is essential in a direct summand of R as a left module",
                predicates::continuous_c1,
            ),
            (
                "continuous_c2",
                "a left ideal isomorphic to a direct summand is a direct summand",
                predicates::continuous_c2,
            ),
            (
                "continuous_c3",
                "two direct summands meeting in zero sum to a direct summand",
                predicates::continuous_c3,
            ),
            (
                "continuous_mod_radical",
                "R/J satisfies C1 and C2 as a left module; R/J semisimple",
                predicates::continuous_mod_radical,
            ),
        ];
        for (name, description, eval) in table {
            registry.register(Box::new(FnPredicate {
                name,
                description,
                eval,
            }));
        }
        registry
    }

    /// Adds a predicate, replacing any previous one with the same name.
    pub fn register(&mut self, predicate: Box<dyn Predicate>) {
        match self.entries.iter().position(|p| p.name() == predicate.name()) {
            Some(i) => self.entries[i] = predicate,
            None => self.entries.push(predicate),
        }
    }

    pub fn get(&self, name: &str) -> Option<&dyn Predicate> {
        self.entries.iter().find(|p| p.name() == name).map(|p| p.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|p| p.name()).collect()
    }

    pub fn all(&self) -> Vec<&dyn Predicate> {
        self.entries.iter().map(|p| p.as_ref()).collect()
    }

    /// Looks up `names` in the given order.
    pub fn select<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<&dyn Predicate>> {
        names
            .iter()
            .map(|n| {
                self.get(n.as_ref())
                    .ok_or_else(|| Error::UnknownPredicate(n.as_ref().to_owned()))
            })
            .collect()
    }
}
