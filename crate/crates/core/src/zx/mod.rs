//! ZX-diagrams: conversion from circuits, the basic rewrite laws, graph-like
//! normalization, and local complementation / pivot matching.

mod convert;
mod diagram;
mod dot;
mod rules;

pub use convert::to_graph;
pub use diagram::{EdgeType, VertexData, VertexType, ZxDiagram};
pub use dot::to_dot;
pub use rules::{
    apply_rule, apply_rule_mut, clean_identities_and_fusions, count_hadamard_edges, is_applicable,
    is_lc_candidate, is_pivot_candidate, match_kind, match_rules, preprocess, RuleKind, RuleMatch,
};
