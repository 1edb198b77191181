use std::fmt::Write;

use serde::Serialize;

use super::{CoprimePairClass, RcpPoset};
use crate::ring::Element;

#[derive(Debug, Clone, Serialize)]
pub struct ClassExport {
    pub index: usize,
    pub generators: (Element, Element),
    pub first_ideal: Vec<Element>,
    pub second_ideal: Vec<Element>,
    pub minimal: bool,
}

/// JSON view of an [`RcpPoset`].
#[derive(Debug, Clone, Serialize)]
pub struct PosetExport {
    pub ring: String,
    pub size: usize,
    pub class_count: usize,
    pub classes: Vec<ClassExport>,
    /// `leq[i]` lists every class index `j` with `classes[j] <= classes[i]`.
    pub leq: Vec<Vec<usize>>,
    pub minimal: Vec<usize>,
    /// Covering pairs `(upper, lower)`.
    pub covers: Vec<(usize, usize)>,
}

impl PosetExport {
    pub fn new(label: &str, size: usize, poset: &RcpPoset) -> Self {
        let classes = poset
            .classes()
            .iter()
            .enumerate()
            .map(|(index, class)| ClassExport {
                index,
                generators: class.generators(),
                first_ideal: class.first_ideal().to_vec(),
                second_ideal: class.second_ideal().to_vec(),
                minimal: poset.is_minimal_index(index),
            })
            .collect();
        Self {
            ring: label.to_owned(),
            size,
            class_count: poset.len(),
            classes,
            leq: (0..poset.len()).map(|i| poset.below(i).to_vec()).collect(),
            minimal: poset.minimal().to_vec(),
            covers: poset.covers(),
        }
    }
}

fn node_label(class: &CoprimePairClass) -> String {
    format!(
        "{} |aR|={} |bR|={}",
        class.label(),
        class.first_ideal().len(),
        class.second_ideal().len()
    )
}

/// Hasse diagram of the poset in Graphviz DOT.
///
/// Nodes appear in class order and edges in `(upper, lower)` order, so the
/// output is a pure function of the poset. Edges point downwards.
pub fn poset_dot(label: &str, poset: &RcpPoset) -> String {
    let mut out = String::new();
    writeln!(out, "digraph rcp {{").unwrap();
    writeln!(out, "  label=\"{}\";", escape(label)).unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    for (i, class) in poset.classes().iter().enumerate() {
        let shape = if poset.is_minimal_index(i) {
            ", shape=doublecircle"
        } else {
            ""
        };
        writeln!(out, "  c{i} [label=\"{}\"{shape}];", escape(&node_label(class))).unwrap();
    }
    for (upper, lower) in poset.covers() {
        writeln!(out, "  c{upper} -> c{lower};").unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}

fn escape(text: &str) -> String {
    text.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::Analysis;
    use crate::ring::RingSpec;

    #[test]
    fn z6_dot_shape() {
        let an = Analysis::new(RingSpec::zmod(6).build().unwrap()).unwrap();
        let dot = poset_dot("zmod(6)", an.poset());
        assert_eq!(dot.matches("[label=").count(), 9);
        assert_eq!(dot.matches("doublecircle").count(), 4);
        assert!(dot.contains("c0 [label=\"⟨0,1⟩ |aR|=1 |bR|=6\", shape=doublecircle];"));
        assert_eq!(dot.matches(" -> ").count(), an.poset().covers().len());
        assert_eq!(dot, poset_dot("zmod(6)", an.poset()));
    }

    #[test]
    fn export_mirrors_poset() {
        let an = Analysis::new(RingSpec::zmod(2).build().unwrap()).unwrap();
        let export = PosetExport::new("zmod(2)", 2, an.poset());
        assert_eq!(export.class_count, 3);
        assert_eq!(export.minimal, vec![0, 1]);
        assert_eq!(export.leq[2], vec![0, 1, 2]);
        assert_eq!(export.covers, vec![(2, 0), (2, 1)]);
    }
}
