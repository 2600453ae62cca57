//! Exact computations with chord diagrams: canonical forms and enumeration,
//! intersection graphs, the quotient by the 1-term and 4-term relations, the
//! coproduct, and the weight system derived from the Kauffman polynomial.

pub mod algebra;
pub mod cache;
pub mod diagram;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod poly;
pub mod verify;
pub mod weight;

pub use algebra::{
    build_primitive, coproduct, four_term_relations, generalized_four_term, graph_kernel_check,
    one_term_relations, primitive_defect, DiagramCombo, KernelReport, PrimitiveSpec, RelationBasis,
    TensorCombo, GENERATOR_TAG,
};
pub use cache::{BasisCache, Workspace, CACHE_ENV};
pub use diagram::{
    apply_elementary, boughs, enumerate_diagrams, enumerate_diagrams_with_limit, ChordDiagram,
    ChordSubset, ElementaryMove, Label, DEFAULT_DEGREE_LIMIT,
};
pub use error::{Error, Result};
pub use graph::{
    cycle_rank_classify, graph_class_key, intersection_graph, realizations_of, realize_graph,
    CycleClass, CycleRank, Graph, GraphClass, GraphClassKey,
};
pub use poly::LaurentPoly;
pub use verify::{emit_report, run_suite, CheckReport, Format, Status, SuiteConfig, SuiteReport};
pub use weight::{
    eval_many, eval_weight, eval_weight_combo, Convention, SkeinState, WeightEvaluator,
};
