//! Shared fixtures and independent oracles for the integration suites.
//!
//! Everything here recomputes expected answers from first principles —
//! chain-level homology, exhaustive search, brute-force enumeration — so
//! the library under test is never used to check itself.

#![allow(dead_code)]

pub mod contexts;
pub mod graphs;
pub mod kunneth;
pub mod movegen;

use std::path::PathBuf;

use integrability::LinkDiagram;

/// Corpus diagram names, in the order they are usually exercised.
pub const CORPUS: [&str; 7] = [
    "unknot",
    "trefoil",
    "figure-eight",
    "hopf",
    "whitehead",
    "borromean",
    "split-union",
];

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// Loads one bundled Gauss-code file by stem name.
pub fn corpus_diagram(name: &str) -> LinkDiagram {
    let path = corpus_dir().join(format!("{name}.gauss"));
    let text = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("cannot read {}: {e}", path.display()));
    LinkDiagram::parse_gauss(text.trim())
        .unwrap_or_else(|e| panic!("corpus file {name} does not parse: {e}"))
}

pub fn all_corpus_diagrams() -> Vec<(&'static str, LinkDiagram)> {
    CORPUS.iter().map(|&n| (n, corpus_diagram(n))).collect()
}
