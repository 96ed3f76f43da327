//! Structures with binary relations and unary predicates, their local
//! complementations, and the encoding of such structures as colored graphs.

mod encode;
mod text;

pub use encode::*;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationKind {
    /// Symmetric and irreflexive; pairs are stored with `u < v`.
    Symmetric,
    Arbitrary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub name: String,
    pub kind: RelationKind,
    pairs: BTreeSet<(VertexId, VertexId)>,
}

impl Relation {
    fn key(&self, u: VertexId, v: VertexId) -> (VertexId, VertexId) {
        match self.kind {
            RelationKind::Symmetric => (u.min(v), u.max(v)),
            RelationKind::Arbitrary => (u, v),
        }
    }

    pub fn holds(&self, u: VertexId, v: VertexId) -> bool {
        self.pairs.contains(&self.key(u, v))
    }

    /// Stored pairs; symmetric relations list each pair once with `u < v`.
    pub fn pairs(&self) -> &BTreeSet<(VertexId, VertexId)> {
        &self.pairs
    }

    fn toggle(&mut self, u: VertexId, v: VertexId) {
        let key = self.key(u, v);
        if !self.pairs.remove(&key) {
            self.pairs.insert(key);
        }
    }
}

/// Names and kinds of the relations, and names of the predicates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub relations: Vec<(String, RelationKind)>,
    pub predicates: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryStructure {
    domain: VertexSet,
    relations: Vec<Relation>,
    predicates: BTreeMap<String, VertexSet>,
}

impl BinaryStructure {
    pub fn new(domain: impl IntoIterator<Item = VertexId>) -> Self {
        BinaryStructure {
            domain: domain.into_iter().collect(),
            relations: Vec::new(),
            predicates: BTreeMap::new(),
        }
    }

    /// A structure with one symmetric relation `E`.
    pub fn from_graph(g: &Graph) -> Self {
        let mut s = BinaryStructure::new(g.vertices().iter().copied());
        s.add_relation("E", RelationKind::Symmetric, g.edges())
            .expect("graph edges are valid");
        s
    }

    fn check_name(&self, name: &str) -> Result<()> {
        let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(Error::Domain(format!(
                "{name:?} is not a valid symbol name"
            )));
        }
        if self.relation_index(name).is_some() || self.predicates.contains_key(name) {
            return Err(Error::Domain(format!("symbol {name} is declared twice")));
        }
        Ok(())
    }

    /// Adds a relation and returns its index.
    pub fn add_relation(
        &mut self,
        name: &str,
        kind: RelationKind,
        pairs: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<usize> {
        self.check_name(name)?;
        let mut rel = Relation {
            name: name.to_string(),
            kind,
            pairs: BTreeSet::new(),
        };
        for (u, v) in pairs {
            for x in [u, v] {
                if !self.domain.contains(&x) {
                    return Err(Error::UnknownVertex(x));
                }
            }
            if kind == RelationKind::Symmetric && u == v {
                return Err(Error::Domain(format!(
                    "symmetric relation {name} has a loop at {u}"
                )));
            }
            rel.pairs.insert(rel.key(u, v));
        }
        self.relations.push(rel);
        Ok(self.relations.len() - 1)
    }

    pub fn add_predicate(
        &mut self,
        name: &str,
        members: impl IntoIterator<Item = VertexId>,
    ) -> Result<()> {
        self.check_name(name)?;
        let members: VertexSet = members.into_iter().collect();
        if let Some(&x) = members.iter().find(|x| !self.domain.contains(x)) {
            return Err(Error::UnknownVertex(x));
        }
        self.predicates.insert(name.to_string(), members);
        Ok(())
    }

    pub fn domain(&self) -> &VertexSet {
        &self.domain
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relation(&self, index: usize) -> Result<&Relation> {
        self.relations
            .get(index)
            .ok_or_else(|| Error::Domain(format!("no relation with index {index}")))
    }

    pub fn relation_index(&self, name: &str) -> Option<usize> {
        self.relations.iter().position(|r| r.name == name)
    }

    pub fn predicates(&self) -> &BTreeMap<String, VertexSet> {
        &self.predicates
    }

    pub fn predicate(&self, name: &str) -> Option<&VertexSet> {
        self.predicates.get(name)
    }

    pub fn signature(&self) -> Signature {
        Signature {
            relations: self
                .relations
                .iter()
                .map(|r| (r.name.clone(), r.kind))
                .collect(),
            predicates: self.predicates.keys().cloned().collect(),
        }
    }

    /// The relation as a graph; it must be symmetric.
    pub fn relation_graph(&self, index: usize) -> Result<Graph> {
        let rel = self.symmetric(index)?;
        Graph::new(self.domain.iter().copied(), rel.pairs.iter().copied())
    }

    fn symmetric(&self, index: usize) -> Result<&Relation> {
        let rel = self.relation(index)?;
        if rel.kind != RelationKind::Symmetric {
            return Err(Error::Precondition(format!(
                "relation {} is not symmetric",
                rel.name
            )));
        }
        Ok(rel)
    }

    pub fn neighbors(&self, index: usize, v: VertexId) -> Result<VertexSet> {
        let rel = self.relation(index)?;
        Ok(self
            .domain
            .iter()
            .copied()
            .filter(|&u| u != v && rel.holds(v, u))
            .collect())
    }

    /// The substructure on the domain minus `d`.
    pub fn delete(&self, d: &VertexSet) -> BinaryStructure {
        let keep = |x: &VertexId| !d.contains(x);
        BinaryStructure {
            domain: self.domain.iter().copied().filter(keep).collect(),
            relations: self
                .relations
                .iter()
                .map(|r| Relation {
                    pairs: r
                        .pairs
                        .iter()
                        .copied()
                        .filter(|(u, v)| keep(u) && keep(v))
                        .collect(),
                    ..r.clone()
                })
                .collect(),
            predicates: self
                .predicates
                .iter()
                .map(|(n, s)| (n.clone(), s.iter().copied().filter(keep).collect()))
                .collect(),
        }
    }
}

/// Complements relation `rel` on the pairs of distinct `rel`-neighbors of
/// `v`. The relation must be symmetric.
pub fn lc_structure(m: &BinaryStructure, rel: usize, v: VertexId) -> Result<BinaryStructure> {
    m.symmetric(rel)?;
    if !m.domain.contains(&v) {
        return Err(Error::UnknownVertex(v));
    }
    let nb: Vec<VertexId> = m.neighbors(rel, v)?.into_iter().collect();
    let mut out = m.clone();
    for (x, &a) in nb.iter().enumerate() {
        for &b in &nb[x + 1..] {
            out.relations[rel].toggle(a, b);
        }
    }
    Ok(out)
}

/// `m ∗^{R_rel} i` for a set independent in relation `rel`.
pub fn lc_structure_set(m: &BinaryStructure, rel: usize, i: &VertexSet) -> Result<BinaryStructure> {
    let r = m.symmetric(rel)?;
    for (x, &u) in i.iter().enumerate() {
        if !m.domain.contains(&u) {
            return Err(Error::UnknownVertex(u));
        }
        if let Some(&v) = i.iter().skip(x + 1).find(|&&v| r.holds(u, v)) {
            return Err(Error::FaultyComplementation {
                step: None,
                relation: Some(rel),
                u,
                v,
            });
        }
    }
    i.iter()
        .try_fold(m.clone(), |acc, &v| lc_structure(&acc, rel, v))
}

/// `m ∗^{R_a} I_a ∗ … − D`, applying the sets in ascending relation index.
pub fn depth1_vm_structure(
    m: &BinaryStructure,
    sets: &BTreeMap<usize, VertexSet>,
    deletions: &VertexSet,
) -> Result<BinaryStructure> {
    let mut cur = m.clone();
    for (&rel, i) in sets {
        cur = lc_structure_set(&cur, rel, i)?;
    }
    Ok(cur.delete(deletions))
}
