//! JSON files for graphs and certificates.
//!
//! A co-chain graph is `{"l_size": 4, "m_size": 8, "thresholds": [8, 5, 4, 2]}`.
//! A general graph is `{"n": 4, "edges": [[0, 1], [1, 2]]}` and is run through
//! recognition before certification.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certify::Certificate;
use crate::graph::{CoChainGraph, Edge, GeneralGraph, GraphError};
use crate::recognize::{recognize_cochain, Rejection};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("not a co-chain graph: {0:?}")]
    NotCoChain(Rejection),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum GraphFile {
    CoChain { l_size: usize, m_size: usize, thresholds: Vec<usize> },
    General { n: usize, edges: Vec<Edge> },
}

impl GraphFile {
    pub fn from_cochain(g: &CoChainGraph) -> Self {
        GraphFile::CoChain { l_size: g.l_size(), m_size: g.m_size(), thresholds: g.thresholds().to_vec() }
    }

    /// The co-chain graph, plus the map from its vertex ids to input ids when
    /// recognition had to reorder a general graph.
    pub fn to_cochain(&self) -> Result<(CoChainGraph, Option<Vec<usize>>), IoError> {
        match self {
            GraphFile::CoChain { l_size, m_size, thresholds } => {
                Ok((CoChainGraph::new(*l_size, *m_size, thresholds.clone())?, None))
            }
            GraphFile::General { n, edges } => {
                let g = GeneralGraph::new(*n, edges.iter().map(|e| (e.0, e.1)))?;
                let r = recognize_cochain(&g).map_err(IoError::NotCoChain)?;
                Ok((r.graph, Some(r.relabel)))
            }
        }
    }
}

pub fn parse_graph(text: &str) -> Result<GraphFile, IoError> {
    Ok(serde_json::from_str(text)?)
}

pub fn graph_to_json(g: &GraphFile) -> String {
    let mut s = serde_json::to_string_pretty(g).expect("graph files serialize");
    s.push('\n');
    s
}

pub fn certificate_to_json(c: &Certificate) -> String {
    let mut s = serde_json::to_string_pretty(c).expect("certificates serialize");
    s.push('\n');
    s
}

pub fn parse_certificate(text: &str) -> Result<Certificate, IoError> {
    Ok(serde_json::from_str(text)?)
}

pub fn read_text(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|source| IoError::Io { path: path.to_path_buf(), source })
}

pub fn write_text(path: &Path, text: &str) -> Result<(), IoError> {
    fs::write(path, text).map_err(|source| IoError::Io { path: path.to_path_buf(), source })
}

/// Express a certificate of the recognised graph in the input vertex ids.
pub fn relabel_certificate(c: &Certificate, map: &[usize]) -> Certificate {
    let mut out = c.clone();
    out.hitting = c.hitting.relabel(map);
    out.packing = c.packing.relabel(map);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::{certify, CertifyConfig, Mode};
    use crate::graph::{build_cochain, Adjacency};

    #[test]
    fn cochain_round_trip() {
        let g = build_cochain(4, 8, &[8, 5, 4, 2]).unwrap();
        let text = graph_to_json(&GraphFile::from_cochain(&g));
        let (back, map) = parse_graph(&text).unwrap().to_cochain().unwrap();
        assert_eq!(back, g);
        assert!(map.is_none());
    }

    #[test]
    fn general_graphs_are_recognised() {
        let f = parse_graph(r#"{"n": 4, "edges": [[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]}"#).unwrap();
        let (g, map) = f.to_cochain().unwrap();
        assert_eq!(g.order(), 4);
        let c = certify(&g, Mode::Exact, &CertifyConfig::default()).unwrap();
        let general = GeneralGraph::complete(4);
        assert!(relabel_certificate(&c, &map.unwrap()).verify(&general));
    }

    #[test]
    fn rejects_malformed_files() {
        assert!(matches!(parse_graph("{\"l_size\": 2}"), Err(IoError::Parse(_))));
        assert!(matches!(
            parse_graph(r#"{"l_size": 2, "m_size": 2, "thresholds": [1, 2]}"#).unwrap().to_cochain(),
            Err(IoError::Graph(GraphError::NotMonotone { .. }))
        ));
        let c5c = r#"{"n": 5, "edges": [[0,2],[0,3],[1,3],[1,4],[2,4]]}"#;
        assert!(matches!(parse_graph(c5c).unwrap().to_cochain(), Err(IoError::NotCoChain(_))));
    }
}
