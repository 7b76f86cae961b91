//! Proof logs and non-colorability certificates.
//!
//! While the solver runs it records every forced assignment as a structured
//! [`ProofStatement`]; text is rendered only afterwards. When a contradiction
//! ends the run, [`ProofLog::depurate`] walks predecessor links backwards
//! from the contradiction and keeps just the statements the contradiction
//! actually depends on. The result is a [`Certificate`]: a short chain of
//! forced inclusions ending in a contradiction, renderable as human prose or
//! as a line-based machine format that a verifier can replay.

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::{Triangle, VertexId};
use crate::solver::SetId;

/// One step of a derivation rooted at a triangle.
///
/// `Rho1Inclusion` and `Rho2Inclusion` force a vertex into a set;
/// the two contradiction variants end the derivation. Within a
/// `Rho2Inclusion`, witness `a` lies in the alphabetically first of the two
/// sets other than `target` and `b` in the second, so the witnesses' sets
/// never need to be stored.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProofStatement {
    /// The initial placement: `t.a` into A, `t.b` into B, `t.c` into C.
    RootTriangle(Triangle),
    /// Triangle `{a, b, c}`: `a` is joined to `x` and `b` to `y`, both in
    /// `target`, so `c` is forced into `target`.
    Rho1Inclusion { c: VertexId, target: SetId, a: VertexId, b: VertexId, x: VertexId, y: VertexId },
    /// `x` is joined to members of both sets other than `target` (witnesses
    /// `a` then `b`, in alphabetical order of their sets), so `x` is forced
    /// into `target`.
    Rho2Inclusion { x: VertexId, target: SetId, a: VertexId, b: VertexId },
    /// Triangle `{a, b, c}` with every corner joined to `target` (via `x`,
    /// `y`, `z`): no corner may take `target`'s color, yet one must.
    Rho1Contradiction { target: SetId, a: VertexId, b: VertexId, c: VertexId, x: VertexId, y: VertexId, z: VertexId },
    /// `x` is joined to `a` in A, `b` in B and `c` in C: no color remains.
    Rho2Contradiction { x: VertexId, a: VertexId, b: VertexId, c: VertexId },
}

/// In-order record of every statement produced while testing one root
/// triangle, keyed by included vertex for predecessor lookups.
#[derive(Clone, Debug)]
pub struct ProofLog {
    n: u32,
    m: usize,
    order: Vec<ProofStatement>,
    keyed: BTreeMap<VertexId, usize>,
    final_stmt: Option<ProofStatement>,
}

/// A depurated derivation: the root assignment, the inclusion steps the
/// contradiction depends on (in chronological order), and the contradiction.
///
/// The step count is at most `n − 3`: only non-root vertices are included,
/// each at most once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    /// `(n, m)` of the graph the derivation was made on.
    pub graph_binding: (u32, usize),
    pub root: Triangle,
    pub steps: Vec<ProofStatement>,
    pub contradiction: ProofStatement,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ProofLogError {
    #[error("vertex {0} included twice")]
    DuplicateSubject(VertexId),
    #[error("statement references vertex {0} before it is placed")]
    ForwardReference(VertexId),
    #[error("the root triangle must be recorded first")]
    RootNotFirst,
    #[error("expected an inclusion statement")]
    NotAnInclusion,
    #[error("expected a contradiction statement")]
    NotAContradiction,
    #[error("a contradiction was already recorded")]
    FinalAlreadySet,
    #[error("log has no contradiction to depurate from")]
    MissingContradiction,
}

impl ProofStatement {
    /// The vertex this statement forces (inclusions only).
    pub fn included_vertex(&self) -> Option<VertexId> {
        match *self {
            ProofStatement::Rho1Inclusion { c, .. } => Some(c),
            ProofStatement::Rho2Inclusion { x, .. } => Some(x),
            _ => None,
        }
    }

    /// The target set of an inclusion.
    pub fn target_set(&self) -> Option<SetId> {
        match *self {
            ProofStatement::Rho1Inclusion { target, .. } => Some(target),
            ProofStatement::Rho2Inclusion { target, .. } => Some(target),
            _ => None,
        }
    }

    /// Witness vertices whose placement this statement relies on.
    pub fn predecessors(&self) -> Vec<VertexId> {
        match *self {
            ProofStatement::RootTriangle(_) => Vec::new(),
            ProofStatement::Rho1Inclusion { x, y, .. } => dedup([x, y].to_vec()),
            ProofStatement::Rho2Inclusion { a, b, .. } => dedup([a, b].to_vec()),
            ProofStatement::Rho1Contradiction { x, y, z, .. } => dedup([x, y, z].to_vec()),
            ProofStatement::Rho2Contradiction { a, b, c, .. } => dedup([a, b, c].to_vec()),
        }
    }

    /// Whether this is one of the two contradiction variants.
    pub fn is_contradiction(&self) -> bool {
        matches!(
            self,
            ProofStatement::Rho1Contradiction { .. } | ProofStatement::Rho2Contradiction { .. }
        )
    }

    /// One line of the machine certificate format.
    pub fn machine_line(&self) -> String {
        match *self {
            ProofStatement::RootTriangle(t) => format!("t {} {} {}", t.a, t.b, t.c),
            ProofStatement::Rho1Inclusion { c, target, a, b, x, y } => {
                format!("i1 {c} {target} {a} {b} {x} {y}")
            }
            ProofStatement::Rho2Inclusion { x, target, a, b } => format!("i2 {x} {target} {a} {b}"),
            ProofStatement::Rho1Contradiction { target, a, b, c, x, y, z } => {
                format!("n1 {target} {a} {b} {c} {x} {y} {z}")
            }
            ProofStatement::Rho2Contradiction { x, a, b, c } => format!("n2 {x} {a} {b} {c}"),
        }
    }

    /// One line of certificate prose.
    pub fn human_line(&self) -> String {
        match *self {
            ProofStatement::RootTriangle(t) => format!("Select triangle T={t}"),
            ProofStatement::Rho1Inclusion { c, target, a, b, x, y } => format!(
                "Triangle {} has edges: {} and {} with set {target} hence vertex {c} must be assigned to set {target}.",
                sorted_triangle(a, b, c),
                edge(a, x),
                edge(b, y),
            ),
            ProofStatement::Rho2Inclusion { x, target, a, b } => {
                let (first, second) = target.others();
                format!(
                    "Vertex {x} has an edge with one vertex of set {first} ({}) and one of {second} ({}) hence vertex {x} must be assigned to set {target}.",
                    edge(x, a),
                    edge(x, b),
                )
            }
            ProofStatement::Rho1Contradiction { target, a, b, c, x, y, z } => format!(
                "Every vertex of triangle {} is joined by an edge to an element in the set {target} ({}, {} and {}).",
                sorted_triangle(a, b, c),
                edge(a, x),
                edge(b, y),
                edge(c, z),
            ),
            ProofStatement::Rho2Contradiction { x, a, b, c } => format!(
                "Vertex {x} has an edge with at least, one vertex of set A ({}) one of B ({}) and one of C ({}).",
                edge(x, a),
                edge(x, b),
                edge(x, c),
            ),
        }
    }
}

fn dedup(mut v: Vec<VertexId>) -> Vec<VertexId> {
    v.sort_unstable();
    v.dedup();
    v
}

fn sorted_triangle(a: VertexId, b: VertexId, c: VertexId) -> String {
    let mut v = [a, b, c];
    v.sort_unstable();
    format!("[{}, {}, {}]", v[0], v[1], v[2])
}

fn edge(u: VertexId, v: VertexId) -> String {
    format!("e[{}, {}]", u.min(v), u.max(v))
}

impl ProofLog {
    /// An empty log bound to a graph with `n` vertices and `m` edges.
    pub fn new(n: u32, m: usize) -> ProofLog {
        ProofLog { n, m, order: Vec::new(), keyed: BTreeMap::new(), final_stmt: None }
    }

    /// `(n, m)` of the bound graph.
    pub fn graph_binding(&self) -> (u32, usize) {
        (self.n, self.m)
    }

    /// Records the root triangle. Must be the first record; keys all three
    /// root vertices.
    pub fn record_root(&mut self, t: Triangle) -> Result<(), ProofLogError> {
        if !self.order.is_empty() {
            return Err(ProofLogError::RootNotFirst);
        }
        self.order.push(ProofStatement::RootTriangle(t));
        for v in t.vertices() {
            if self.keyed.insert(v, 0).is_some() {
                return Err(ProofLogError::DuplicateSubject(v));
            }
        }
        Ok(())
    }

    /// Records an inclusion. Every predecessor must already be keyed (an
    /// earlier inclusion or a root vertex); the included vertex must be new.
    ///
    /// # Errors
    /// `DuplicateSubject` and `ForwardReference` signal solver bugs: a vertex
    /// cannot be forced twice, and a witness must have been placed earlier.
    pub fn record(&mut self, stmt: ProofStatement) -> Result<(), ProofLogError> {
        if self.order.is_empty() {
            return Err(ProofLogError::RootNotFirst);
        }
        let v = stmt.included_vertex().ok_or(ProofLogError::NotAnInclusion)?;
        for p in stmt.predecessors() {
            if !self.keyed.contains_key(&p) {
                return Err(ProofLogError::ForwardReference(p));
            }
        }
        if self.keyed.contains_key(&v) {
            return Err(ProofLogError::DuplicateSubject(v));
        }
        self.keyed.insert(v, self.order.len());
        self.order.push(stmt);
        Ok(())
    }

    /// Records the terminating contradiction.
    pub fn set_final(&mut self, stmt: ProofStatement) -> Result<(), ProofLogError> {
        if !stmt.is_contradiction() {
            return Err(ProofLogError::NotAContradiction);
        }
        if self.final_stmt.is_some() {
            return Err(ProofLogError::FinalAlreadySet);
        }
        for p in stmt.predecessors() {
            if !self.keyed.contains_key(&p) {
                return Err(ProofLogError::ForwardReference(p));
            }
        }
        self.final_stmt = Some(stmt);
        Ok(())
    }

    /// All statements in the order they were recorded (without the final
    /// contradiction).
    pub fn statements(&self) -> &[ProofStatement] {
        &self.order
    }

    /// The terminating contradiction, if one was recorded.
    pub fn contradiction(&self) -> Option<&ProofStatement> {
        self.final_stmt.as_ref()
    }

    /// Extracts the minimal certificate: only statements reachable backward
    /// from the contradiction through predecessor links survive, emitted in
    /// chronological order so every step still only cites earlier placements.
    pub fn depurate(&self) -> Result<Certificate, ProofLogError> {
        let contradiction = self.final_stmt.ok_or(ProofLogError::MissingContradiction)?;
        let root = match self.order.first() {
            Some(ProofStatement::RootTriangle(t)) => *t,
            _ => return Err(ProofLogError::RootNotFirst),
        };
        let mut needed: BTreeSet<VertexId> = BTreeSet::new();
        let mut stack = contradiction.predecessors();
        while let Some(v) = stack.pop() {
            if !needed.insert(v) {
                continue;
            }
            let idx = *self.keyed.get(&v).ok_or(ProofLogError::ForwardReference(v))?;
            stack.extend(self.order[idx].predecessors());
        }
        let steps = self
            .order
            .iter()
            .filter(|s| s.included_vertex().is_some_and(|v| needed.contains(&v)))
            .copied()
            .collect();
        Ok(Certificate { graph_binding: (self.n, self.m), root, steps, contradiction })
    }

    /// Rebuilds a log holding exactly a certificate's statements. Feeding the
    /// result back through [`ProofLog::depurate`] returns the same
    /// certificate.
    pub fn from_certificate(cert: &Certificate) -> Result<ProofLog, ProofLogError> {
        let (n, m) = cert.graph_binding;
        let mut log = ProofLog::new(n, m);
        log.record_root(cert.root)?;
        for step in &cert.steps {
            log.record(*step)?;
        }
        log.set_final(cert.contradiction)?;
        Ok(log)
    }
}

impl Certificate {
    /// Renders the line-based machine format: a `g` binding line, a `t` root
    /// line, one `i1`/`i2` line per step and a final `n1`/`n2` line. No
    /// trailing newline.
    pub fn render_machine(&self) -> String {
        let mut lines = vec![format!("g {} {}", self.graph_binding.0, self.graph_binding.1)];
        lines.push(ProofStatement::RootTriangle(self.root).machine_line());
        for step in &self.steps {
            lines.push(step.machine_line());
        }
        lines.push(self.contradiction.machine_line());
        lines.join("\n")
    }

    /// Renders the proof as prose: a fixed preamble naming the root triangle,
    /// one line per step, the contradiction line, and a closing argument.
    pub fn render_human(&self) -> String {
        let t = self.root;
        let mut out = String::new();
        out.push_str("The graph G is not 3-colorable.\n");
        out.push_str("Proof: (by contradiction)\n");
        out.push_str(
            "Assume G is 3-colorable, hence it should exist the possibility of partitioning the vertices of G in three independent sets: A, B and C\n",
        );
        out.push_str("Thus:\n");
        out.push_str(&format!("Select triangle T={t}\n"));
        out.push_str("Let A, B, C be three independent sets, each one containing a different vertex of triangle T:\n");
        out.push_str(&format!("A=[{}], B=[{}], C=[{}]\n", t.a, t.b, t.c));
        for step in &self.steps {
            out.push_str(&format!("- {}\n", step.human_line()));
        }
        out.push_str(&format!("- {}\n", self.contradiction.human_line()));
        out.push_str(
            "Thus, does not exist the possibility of partitioning the vertices of G in three independent sets: A, B and C (contradiction).\n",
        );
        out.push_str("Therefore G is not 3-colorable.\n");
        out.push_str("Q.E.D.\n");
        out
    }
}
