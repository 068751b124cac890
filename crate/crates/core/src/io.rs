//! JSON documents for instances and solutions. Vertices are referred to by name.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::digraph::{Digraph, VertexId, VertexSet};
use crate::error::{input, Error, Result};
use crate::multicut::{DmcInstance, WdmcInstance};
use crate::permcsp::{Constraint, ConstraintKind, DownclosedRelation, OrderedDomain, PermCspInstance, Value};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub vertices: Vec<String>,
    pub arcs: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub undeletable: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub weights: BTreeMap<String, u64>,
}

impl GraphDoc {
    pub fn to_digraph(&self) -> Result<Digraph> {
        let mut g = Digraph::new();
        for v in &self.vertices {
            g.add_vertex(v.clone(), true)?;
        }
        for v in &self.undeletable {
            let id = g.require(v)?;
            g.set_deletable(id, false);
        }
        for (v, &w) in &self.weights {
            let id = g.require(v)?;
            g.set_weight(id, w);
        }
        for (u, v) in &self.arcs {
            let (u, v) = (g.require(u)?, g.require(v)?);
            g.add_arc(u, v)?;
        }
        Ok(g)
    }

    /// Live vertices in id order; weights other than 1 are listed.
    pub fn from_digraph(g: &Digraph) -> GraphDoc {
        GraphDoc {
            vertices: g.vertices().map(|v| g.name(v).to_string()).collect(),
            arcs: g
                .arcs()
                .into_iter()
                .map(|(u, v)| (g.name(u).to_string(), g.name(v).to_string()))
                .collect(),
            undeletable: g
                .vertices()
                .filter(|&v| !g.is_deletable(v))
                .map(|v| g.name(v).to_string())
                .collect(),
            weights: g
                .vertices()
                .filter(|&v| g.weight(v) != 1)
                .map(|v| (g.name(v).to_string(), g.weight(v)))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DmcDoc {
    #[serde(flatten)]
    pub graph: GraphDoc,
    pub pairs: Vec<(String, String)>,
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WdmcDoc {
    #[serde(flatten)]
    pub graph: GraphDoc,
    pub pairs: Vec<(String, String)>,
    pub k: usize,
    pub budget: u64,
}

fn pairs_of<const N: usize>(g: &Digraph, pairs: &[(String, String)]) -> Result<[(VertexId, VertexId); N]> {
    if pairs.len() != N {
        return input(format!("expected {N} terminal pairs, found {}", pairs.len()));
    }
    let mut out = [(VertexId(0), VertexId(0)); N];
    for (slot, (s, t)) in out.iter_mut().zip(pairs) {
        *slot = (g.require(s)?, g.require(t)?);
    }
    Ok(out)
}

fn pair_names(g: &Digraph, pairs: &[(VertexId, VertexId)]) -> Vec<(String, String)> {
    pairs
        .iter()
        .map(|&(s, t)| (g.name(s).to_string(), g.name(t).to_string()))
        .collect()
}

pub fn parse_dmc(text: &str) -> Result<DmcInstance> {
    dmc_from_doc(&serde_json::from_str(text)?)
}

pub fn dmc_from_doc(doc: &DmcDoc) -> Result<DmcInstance> {
    let g = doc.graph.to_digraph()?;
    let pairs = pairs_of::<3>(&g, &doc.pairs)?;
    DmcInstance::new(g, pairs, doc.k, VertexSet::new())
}

pub fn dmc_doc(inst: &DmcInstance) -> DmcDoc {
    let mut graph = GraphDoc::from_digraph(&inst.g);
    graph.weights.clear();
    DmcDoc {
        graph,
        pairs: pair_names(&inst.g, &inst.pairs),
        k: inst.k,
    }
}

pub fn parse_wdmc(text: &str) -> Result<WdmcInstance> {
    wdmc_from_doc(&serde_json::from_str(text)?)
}

pub fn wdmc_from_doc(doc: &WdmcDoc) -> Result<WdmcInstance> {
    let g = doc.graph.to_digraph()?;
    let pairs = pairs_of::<2>(&g, &doc.pairs)?;
    WdmcInstance::new(g, pairs, doc.k, doc.budget)
}

pub fn wdmc_doc(inst: &WdmcInstance) -> WdmcDoc {
    WdmcDoc {
        graph: GraphDoc::from_digraph(&inst.g),
        pairs: pair_names(&inst.g, &inst.pairs),
        k: inst.k,
        budget: inst.budget,
    }
}

pub fn names(g: &Digraph, s: &VertexSet) -> Vec<String> {
    s.iter().map(|&v| g.name(v).to_string()).collect()
}

pub fn vertex_set(g: &Digraph, names: &[String]) -> Result<VertexSet> {
    names.iter().map(|n| g.require(n)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableDoc {
    pub name: String,
    pub domain: Vec<Value>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ConstraintDoc {
    /// Either `pairs` (closed downwards on ingestion) or `frontier` (value -> largest
    /// partner or null).
    Downclosed {
        scope: (String, String),
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pairs: Option<Vec<(Value, Value)>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        frontier: Option<Vec<(Value, Option<Value>)>>,
    },
    Permutation {
        scope: (String, String),
        pairs: Vec<(Value, Value)>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CspDoc {
    pub variables: Vec<VariableDoc>,
    #[serde(default)]
    pub constraints: Vec<ConstraintDoc>,
}

pub fn parse_csp(text: &str) -> Result<PermCspInstance> {
    let doc: CspDoc = serde_json::from_str(text)?;
    csp_from_doc(&doc)
}

pub fn csp_from_doc(doc: &CspDoc) -> Result<PermCspInstance> {
    let domains = doc
        .variables
        .iter()
        .map(|v| OrderedDomain::new(v.domain.clone()))
        .collect::<Result<Vec<_>>>()?;
    let mut inst = PermCspInstance::new(domains);
    inst.names = doc.variables.iter().map(|v| v.name.clone()).collect();
    let index: BTreeMap<&str, usize> = doc
        .variables
        .iter()
        .enumerate()
        .map(|(i, v)| (v.name.as_str(), i))
        .collect();
    if index.len() != doc.variables.len() {
        return input("variable names repeat");
    }
    let var = |n: &str| {
        index
            .get(n)
            .copied()
            .ok_or_else(|| Error::Input(format!("unknown variable `{n}`")))
    };
    for c in &doc.constraints {
        match c {
            ConstraintDoc::Downclosed { scope, pairs, frontier } => {
                let (i, j) = (var(&scope.0)?, var(&scope.1)?);
                match (pairs, frontier) {
                    (Some(p), None) => inst.add_downclosed(i, j, p)?,
                    (None, Some(f)) => {
                        let (di, dj) = (&inst.domains[i], &inst.domains[j]);
                        let mut g = vec![None; di.len()];
                        for &(a, b) in f {
                            let a = di
                                .position(a)
                                .ok_or_else(|| Error::Input(format!("value {a} not in domain")))?;
                            g[a] = match b {
                                None => None,
                                Some(b) => Some(
                                    dj.position(b)
                                        .ok_or_else(|| Error::Input(format!("value {b} not in domain")))?,
                                ),
                            };
                        }
                        let rel = DownclosedRelation::from_frontier(g, dj.len())?;
                        inst.push(Constraint {
                            i,
                            j,
                            kind: ConstraintKind::Downclosed(rel),
                        })?;
                    }
                    _ => return input("downclosed constraint needs exactly one of `pairs` or `frontier`"),
                }
            }
            ConstraintDoc::Permutation { scope, pairs } => {
                let (i, j) = (var(&scope.0)?, var(&scope.1)?);
                inst.add_permutation(i, j, pairs)?;
            }
        }
    }
    Ok(inst)
}

/// Downclosed constraints are written by frontier.
pub fn csp_doc(inst: &PermCspInstance) -> CspDoc {
    let variables = inst
        .names
        .iter()
        .zip(&inst.domains)
        .map(|(n, d)| VariableDoc {
            name: n.clone(),
            domain: d.values().to_vec(),
        })
        .collect();
    let constraints = inst
        .constraints
        .iter()
        .map(|c| {
            let scope = (inst.names[c.i].clone(), inst.names[c.j].clone());
            let (di, dj) = (inst.domains[c.i].values(), inst.domains[c.j].values());
            match &c.kind {
                ConstraintKind::Downclosed(r) => ConstraintDoc::Downclosed {
                    scope,
                    pairs: None,
                    frontier: Some(
                        r.frontier()
                            .iter()
                            .enumerate()
                            .map(|(a, g)| (di[a], g.map(|b| dj[b])))
                            .collect(),
                    ),
                },
                ConstraintKind::Permutation(p) => ConstraintDoc::Permutation {
                    scope,
                    pairs: p.pairs().into_iter().map(|(a, b)| (di[a], dj[b])).collect(),
                },
            }
        })
        .collect();
    CspDoc { variables, constraints }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    #[test]
    fn dmc_round_trip() {
        let inst = gen::random_dmc(3, gen::DmcParams::default());
        let text = serde_json::to_string(&dmc_doc(&inst)).unwrap();
        let back = parse_dmc(&text).unwrap();
        assert_eq!(back.g.arcs(), inst.g.arcs());
        assert_eq!(back.pairs, inst.pairs);
        assert_eq!(back.undeletable, inst.undeletable);
    }

    #[test]
    fn csp_round_trip() {
        for seed in 0..20 {
            let inst = gen::random_csp(seed, 4, 5, 4);
            let text = serde_json::to_string(&csp_doc(&inst)).unwrap();
            assert_eq!(parse_csp(&text).unwrap(), inst);
        }
    }

    #[test]
    fn csp_pairs_are_closed() {
        let text = r#"{"variables":[{"name":"a","domain":[1,2]},{"name":"b","domain":[5,6]}],
            "constraints":[{"type":"downclosed","scope":["a","b"],"pairs":[[2,6]]}]}"#;
        let inst = parse_csp(text).unwrap();
        assert_eq!(crate::permcsp::solve(&inst), Some(vec![1, 5]));
        assert!(parse_csp(r#"{"variables":[],"constraints":[{"type":"downclosed","scope":["a","b"]}]}"#).is_err());
    }
}
