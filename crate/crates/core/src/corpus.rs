//! Built-in complexes and graphs, embedded from `data/`.

use serde::Serialize;

use crate::complex::{ComplexFile, SimplicialComplex};
use crate::graphs::{Graph, GraphFile};

const COMPLEXES: &[(&str, &str)] = &[
    ("tetra_boundary", include_str!("../data/tetra_boundary.json")),
    ("octahedron", include_str!("../data/octahedron.json")),
    ("rp2_min", include_str!("../data/rp2_min.json")),
    ("torus_7", include_str!("../data/torus_7.json")),
    ("mobius", include_str!("../data/mobius.json")),
    ("sphere_3", include_str!("../data/sphere_3.json")),
];

const GRAPHS: &[(&str, &str)] = &[
    ("petersen", include_str!("../data/petersen.json")),
    ("heawood", include_str!("../data/heawood.json")),
    ("k4", include_str!("../data/k4.json")),
];

#[derive(Debug, Clone)]
pub struct CorpusComplex {
    pub name: &'static str,
    pub provenance: String,
    pub complex: SimplicialComplex,
}

#[derive(Debug, Clone)]
pub struct CorpusGraph {
    pub name: &'static str,
    pub provenance: String,
    pub graph: Graph,
}

/// One line of `corpus` output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub kind: &'static str,
    pub provenance: String,
}

pub fn complexes() -> Vec<CorpusComplex> {
    COMPLEXES
        .iter()
        .map(|&(name, text)| {
            let file: ComplexFile = serde_json::from_str(text).expect("embedded complex parses");
            CorpusComplex {
                name,
                provenance: file.provenance.clone().unwrap_or_default(),
                complex: SimplicialComplex::from_file(&file).expect("embedded complex is valid"),
            }
        })
        .collect()
}

pub fn graphs() -> Vec<CorpusGraph> {
    GRAPHS
        .iter()
        .map(|&(name, text)| {
            let file: GraphFile = serde_json::from_str(text).expect("embedded graph parses");
            CorpusGraph {
                name,
                provenance: file.provenance.clone().unwrap_or_default(),
                graph: Graph::from_file(&file).expect("embedded graph is valid"),
            }
        })
        .collect()
}

pub fn complex(name: &str) -> Option<SimplicialComplex> {
    complexes().into_iter().find(|c| c.name == name).map(|c| c.complex)
}

pub fn graph(name: &str) -> Option<Graph> {
    graphs().into_iter().find(|g| g.name == name).map(|g| g.graph)
}

pub fn list() -> Vec<CorpusEntry> {
    let mut out: Vec<CorpusEntry> = complexes()
        .into_iter()
        .map(|c| CorpusEntry { name: c.name, kind: "complex", provenance: c.provenance })
        .collect();
    out.extend(graphs().into_iter().map(|g| CorpusEntry { name: g.name, kind: "graph", provenance: g.provenance }));
    out
}
