//! JSON instance documents.
//!
//! ```json
//! { "n": 3, "t_costs": 1, "t_weights": 1,
//!   "edges": [[0, 1], [1, 2]],
//!   "edge_costs": [[1], [1]],
//!   "vertex_weights": [[1], [1], [1]] }
//! ```
//!
//! Hyperedges with a single vertex cross no cut and are dropped on load
//! (with a warning); the remaining hyperedges are renumbered in order.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub n: usize,
    pub t_costs: usize,
    pub t_weights: usize,
    pub edges: Vec<Vec<usize>>,
    pub edge_costs: Vec<Vec<u64>>,
    pub vertex_weights: Vec<Vec<u64>>,
}

/// Result of loading a document: the hypergraph plus the positions (in the
/// document) of singleton hyperedges that were dropped.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub graph: Hypergraph,
    pub dropped: Vec<usize>,
}

pub fn load_instance(bytes: &[u8]) -> Result<Hypergraph> {
    load_instance_report(bytes).map(|l| l.graph)
}

pub fn load_instance_report(bytes: &[u8]) -> Result<Loaded> {
    let doc: InstanceDoc =
        serde_json::from_slice(bytes).map_err(|e| Error::parse(e.to_string()))?;
    from_doc(doc)
}

pub fn from_doc(doc: InstanceDoc) -> Result<Loaded> {
    if doc.edges.len() != doc.edge_costs.len() {
        return Err(Error::parse(format!(
            "{} edges but {} edge_costs rows",
            doc.edges.len(),
            doc.edge_costs.len()
        )));
    }
    let mut edges = Vec::with_capacity(doc.edges.len());
    let mut costs = Vec::with_capacity(doc.edges.len());
    let mut dropped = Vec::new();
    for (i, (e, c)) in doc.edges.into_iter().zip(doc.edge_costs).enumerate() {
        match e.len() {
            0 => return Err(Error::parse(format!("edge {i} is empty"))),
            1 => {
                if e[0] >= doc.n {
                    return Err(Error::parse(format!(
                        "edge {i} references unknown vertex {}",
                        e[0]
                    )));
                }
                log::warn!("dropping singleton hyperedge {i}: it crosses no cut");
                dropped.push(i);
            }
            _ => {
                edges.push(e);
                costs.push(c);
            }
        }
    }
    let graph = Hypergraph::with_dims(
        doc.n,
        doc.t_costs,
        doc.t_weights,
        edges,
        costs,
        doc.vertex_weights,
    )
    .map_err(|e| Error::parse(e.to_string()))?;
    Ok(Loaded { graph, dropped })
}

pub fn to_doc(g: &Hypergraph) -> InstanceDoc {
    InstanceDoc {
        n: g.n(),
        t_costs: g.t_costs(),
        t_weights: g.t_weights(),
        edges: g.edges().to_vec(),
        edge_costs: g.edge_costs().to_vec(),
        vertex_weights: g.vertex_weights().to_vec(),
    }
}

/// Canonical document bytes (compact JSON, sorted member lists).
pub fn save_instance(g: &Hypergraph) -> Vec<u8> {
    serde_json::to_vec(&to_doc(g)).expect("instance documents always serialize")
}

/// Hex SHA-256 of the canonical document.
pub fn instance_digest(g: &Hypergraph) -> String {
    hex::encode(Sha256::digest(save_instance(g)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn minimal_document() {
        let doc = br#"{"n":2,"t_costs":1,"t_weights":0,"edges":[[0,1]],"edge_costs":[[1]],"vertex_weights":[[],[]]}"#;
        let g = load_instance(doc).unwrap();
        assert_eq!(g.m(), 1);
        assert_eq!(g.rank(), 2);
        assert_eq!(save_instance(&g), doc.to_vec());
    }

    #[test]
    fn singleton_dropped() {
        let doc = br#"{"n":3,"t_costs":1,"t_weights":0,"edges":[[0],[1,2]],"edge_costs":[[4],[1]],"vertex_weights":[[],[],[]]}"#;
        let l = load_instance_report(doc).unwrap();
        assert_eq!(l.dropped, vec![0]);
        assert_eq!(l.graph.m(), 1);
        assert_eq!(l.graph.edge(0), &[1, 2]);
    }

    #[test]
    fn malformed_rejected() {
        let cases: [&[u8]; 5] = [
            b"{",
            br#"{"n":2,"t_costs":1,"t_weights":0,"edges":[[0,1]],"edge_costs":[[-1]],"vertex_weights":[[],[]]}"#,
            br#"{"n":2,"t_costs":1,"t_weights":0,"edges":[[]],"edge_costs":[[1]],"vertex_weights":[[],[]]}"#,
            br#"{"n":2,"t_costs":1,"t_weights":0,"edges":[[0,5]],"edge_costs":[[1]],"vertex_weights":[[],[]]}"#,
            br#"{"n":2,"t_costs":1,"t_weights":1,"edges":[[0,1]],"edge_costs":[[1]],"vertex_weights":[[-2],[1]]}"#,
        ];
        for c in cases {
            assert!(
                matches!(load_instance(c), Err(Error::Parse(_))),
                "{}",
                String::from_utf8_lossy(c)
            );
        }
    }

    proptest! {
        #[test]
        fn save_load_round_trip(n in 2usize..7, raw in proptest::collection::vec((0usize..7, 0usize..7, 0u64..9, 0u64..9), 0..8)) {
            let mut edges = Vec::new();
            let mut costs = Vec::new();
            for (a, b, c1, c2) in raw {
                let (a, b) = (a % n, b % n);
                if a != b {
                    edges.push(vec![a, b]);
                    costs.push(vec![c1, c2]);
                }
            }
            let g = Hypergraph::with_dims(n, 2, 1, edges, costs, (0..n as u64).map(|w| vec![w]).collect()).unwrap();
            let bytes = save_instance(&g);
            let back = load_instance(&bytes).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(save_instance(&back), bytes);
        }
    }
}
