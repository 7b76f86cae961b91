//! Triangle-rooted forcing for 3-colorability.
//!
//! This crate decides whether a graph's vertices can be split into three
//! independent sets — and when the answer is *no*, it says why. Rooting at
//! a triangle pins one vertex into each set; two forcing rules then
//! propagate memberships along edges until either every vertex is placed
//! (a coloring), a vertex is forced into a set it conflicts with (a
//! contradiction), or nothing more can be forced (undetermined). Each
//! contradiction is distilled into a [`Certificate`](proof::Certificate):
//! a short, replayable chain of forced memberships that an independent
//! [verifier](verify::verify) checks edge by edge, with no search.
//!
//! Everything is deterministic: ties break toward smaller vertex ids, so
//! the same graph always yields the same answer, the same certificate, and
//! the same witness coloring.
//!
//! ```
//! use tricolor::{gen_wheel, is_3_colorable, verify, Verdict, VerifyResult};
//!
//! // The 5-wheel: an odd cycle plus a hub. Not 3-colorable.
//! let wheel = gen_wheel(5).unwrap();
//! let Verdict::No { certificate, .. } = is_3_colorable(&wheel) else {
//!     panic!("odd wheels are not 3-colorable");
//! };
//! assert_eq!(verify(&wheel, &certificate.render_machine()), VerifyResult::Valid);
//! ```
//!
//! The [`oracle`] module holds an exhaustive checker the solver shares no
//! code with, the [`gen`] module builds deterministic instance families,
//! and [`graph`] speaks DIMACS for interchange with other tools.

pub mod gen;
pub mod graph;
pub mod oracle;
pub mod proof;
pub mod solver;
pub mod verify;

pub use gen::{gen_edge_subgraph, gen_stacked_triangulation, gen_wheel, GenError, Seed, SplitMix64};
pub use graph::{
    parse_dimacs, DimacsError, DimacsErrorKind, DimacsWarning, Graph, GraphError, Triangle,
    VertexId,
};
pub use oracle::{oracle_3color, oracle_3color_capped, OracleAnswer, OracleError, DEFAULT_VERTEX_CAP};
pub use proof::{Certificate, ProofLog, ProofLogError, ProofStatement};
pub use solver::{
    is_3_colorable, is_3_colorable_jobs, test_triangle, test_triangle_with_rules, RuleCall, SetId,
    SolveStats, TriangleResult, Verdict, DEFAULT_RULE_ORDER,
};
pub use verify::{parse_certificate, verify, CertParseError, Reason, VerifyResult};

/// Runs every Rust snippet in the guide (`book/`) as a doc-test, so the
/// prose can never drift from the API it documents.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/forcing-rules.md")]
    mod forcing_rules {}
    #[doc = include_str!("../../../book/src/solving.md")]
    mod solving {}
    #[doc = include_str!("../../../book/src/certificates.md")]
    mod certificates {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/instances.md")]
    mod instances {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
