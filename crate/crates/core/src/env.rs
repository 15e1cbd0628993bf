//! The compile-time environment: declared subclasses, declared
//! subproperties and the properties used inside each class definition.
//!
//! The maps hold direct declarations only; transitive inheritance happens
//! in the compiler's recursive rules.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::iri::{vocab, Iri};
use crate::syntax::{ConstraintAtom, PropConstraint, RddDocument};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Environment {
    subclasses: BTreeMap<Iri, Vec<Iri>>,
    subproperties: BTreeMap<Iri, Vec<Iri>>,
    class_properties: BTreeMap<Iri, Vec<Iri>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hierarchy {
    Subclass,
    Subproperty,
}

/// A directed cycle in the SUBCLASS or SUBPROPERTY declarations. The first
/// element is repeated at the end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleError {
    pub hierarchy: Hierarchy,
    pub cycle: Vec<Iri>,
}

impl fmt::Display for CycleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.hierarchy {
            Hierarchy::Subclass => "SUBCLASS",
            Hierarchy::Subproperty => "SUBPROPERTY",
        };
        write!(f, "{what} cycle: ")?;
        for (i, iri) in self.cycle.iter().enumerate() {
            if i > 0 {
                f.write_str(" -> ")?;
            }
            write!(f, "{iri}")?;
        }
        Ok(())
    }
}

impl core::error::Error for CycleError {}

fn push_unique(list: &mut Vec<Iri>, iri: &Iri) {
    if !list.contains(iri) {
        list.push(iri.clone());
    }
}

fn collect_subproperties(map: &mut BTreeMap<Iri, Vec<Iri>>, pcs: &[PropConstraint]) {
    for pc in pcs {
        for atom in &pc.constraints {
            if let ConstraintAtom::SubProperty(subs) = &atom.value {
                let entry = map.entry(pc.prop.clone()).or_default();
                for sub in subs {
                    push_unique(entry, sub);
                }
            }
        }
    }
}

/// Extracts the environment from `doc`, rejecting cyclic hierarchies.
pub fn build_environment(doc: &RddDocument) -> Result<Environment, CycleError> {
    let mut env = Environment::default();
    let rdf_type = Iri::new_unchecked(vocab::RDF_TYPE);

    collect_subproperties(&mut env.subproperties, &doc.prop_section.upcs);
    for cc in &doc.class_section.classes {
        if !cc.sub_classes.is_empty() {
            env.subclasses.insert(cc.class.clone(), cc.sub_classes.clone());
        }
        collect_subproperties(&mut env.subproperties, &cc.qpcs);

        let mut props = Vec::new();
        for key in &cc.keys {
            for k in &key.props {
                push_unique(&mut props, &k.prop);
            }
        }
        for pc in &cc.qpcs {
            push_unique(&mut props, &pc.prop);
            for atom in &pc.constraints {
                match &atom.value {
                    ConstraintAtom::Path(seq) => seq.iter().for_each(|p| push_unique(&mut props, p)),
                    ConstraintAtom::SubProperty(subs) => subs.iter().for_each(|p| push_unique(&mut props, p)),
                    _ => {}
                }
            }
        }
        push_unique(&mut props, &rdf_type);
        env.class_properties.insert(cc.class.clone(), props);
    }

    find_cycle(&env.subclasses).map_or(Ok(()), |cycle| Err(CycleError { hierarchy: Hierarchy::Subclass, cycle }))?;
    find_cycle(&env.subproperties)
        .map_or(Ok(()), |cycle| Err(CycleError { hierarchy: Hierarchy::Subproperty, cycle }))?;
    Ok(env)
}

fn find_cycle(graph: &BTreeMap<Iri, Vec<Iri>>) -> Option<Vec<Iri>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Active,
        Done,
    }
    fn visit<'a>(
        node: &'a Iri,
        graph: &'a BTreeMap<Iri, Vec<Iri>>,
        marks: &mut BTreeMap<&'a Iri, Mark>,
        stack: &mut Vec<&'a Iri>,
    ) -> Option<Vec<Iri>> {
        match marks.get(node) {
            Some(Mark::Done) => return None,
            Some(Mark::Active) => {
                let start = stack.iter().position(|n| *n == node).expect("active node is on the stack");
                let mut cycle: Vec<Iri> = stack[start..].iter().map(|n| (*n).clone()).collect();
                cycle.push(node.clone());
                return Some(cycle);
            }
            None => {}
        }
        marks.insert(node, Mark::Active);
        stack.push(node);
        for next in graph.get(node).into_iter().flatten() {
            if let Some(cycle) = visit(next, graph, marks, stack) {
                return Some(cycle);
            }
        }
        stack.pop();
        marks.insert(node, Mark::Done);
        None
    }

    let mut marks = BTreeMap::new();
    for node in graph.keys() {
        if let Some(cycle) = visit(node, graph, &mut marks, &mut Vec::new()) {
            return Some(cycle);
        }
    }
    None
}

impl Environment {
    /// E.C: declared direct subclasses; empty for undeclared classes.
    pub fn subclasses(&self, class: &Iri) -> &[Iri] {
        self.subclasses.get(class).map_or(&[], Vec::as_slice)
    }

    /// E.P: declared direct subproperties.
    pub fn subproperties(&self, prop: &Iri) -> &[Iri] {
        self.subproperties.get(prop).map_or(&[], Vec::as_slice)
    }

    /// E.A: properties mentioned inside the class definition, plus
    /// `rdf:type`.
    pub fn class_properties(&self, class: &Iri) -> &[Iri] {
        self.class_properties.get(class).map_or(&[], Vec::as_slice)
    }

    pub fn subclass_map(&self) -> &BTreeMap<Iri, Vec<Iri>> {
        &self.subclasses
    }

    pub fn subproperty_map(&self) -> &BTreeMap<Iri, Vec<Iri>> {
        &self.subproperties
    }

    pub fn class_property_map(&self) -> &BTreeMap<Iri, Vec<Iri>> {
        &self.class_properties
    }

    /// Transitive closure of E.C from `class`, excluding `class`.
    pub fn all_subclasses(&self, class: &Iri) -> BTreeSet<Iri> {
        let mut seen = BTreeSet::new();
        let mut todo: Vec<&Iri> = self.subclasses(class).iter().collect();
        while let Some(next) = todo.pop() {
            if seen.insert(next.clone()) {
                todo.extend(self.subclasses(next));
            }
        }
        seen
    }
}
