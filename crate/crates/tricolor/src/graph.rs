//! Undirected simple graphs with 1-based vertex labels, plus the DIMACS
//! `.col` text format and triangle enumeration.
//!
//! Vertices are the integers `1..=n`. Edges are stored canonically as
//! `(u, v)` with `u < v`, sorted lexicographically, with duplicates
//! collapsed. Self-loops are rejected at construction time.

use std::fmt;

/// 1-based vertex label. Valid labels for a graph with `n` vertices are `1..=n`.
pub type VertexId = u32;

/// An immutable simple graph.
///
/// Construction canonicalizes the edge list (sorted, deduplicated, `u < v`)
/// and precomputes sorted adjacency lists, so iteration order is the same on
/// every run.
#[derive(Clone, Debug)]
pub struct Graph {
    n: u32,
    edges: Vec<(VertexId, VertexId)>,
    adj: Vec<Vec<VertexId>>,
}

/// A triangle `{a, b, c}` with `a < b < c`; all three edges exist in the
/// graph the triangle was taken from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triangle {
    pub a: VertexId,
    pub b: VertexId,
    pub c: VertexId,
}

/// Error building a [`Graph`] from an edge list.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex label {label} outside 1..={n}")]
    LabelOutOfRange { label: VertexId, n: u32 },
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
}

/// Error parsing DIMACS text; `line` is 1-based.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {kind}")]
pub struct DimacsError {
    pub line: usize,
    pub kind: DimacsErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DimacsErrorKind {
    #[error("expected `p edge <n> <m>` before any edge line")]
    MissingProblemLine,
    #[error("second `p` line")]
    DuplicateProblemLine,
    #[error("malformed record: {0}")]
    Malformed(String),
    #[error("vertex label {label} outside 1..={n}")]
    LabelOutOfRange { label: VertexId, n: u32 },
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
}

/// Non-fatal irregularity noticed while parsing DIMACS text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DimacsWarning {
    /// The `p` line declared `declared` edges but `actual` remained after
    /// collapsing duplicates.
    EdgeCountMismatch { declared: usize, actual: usize },
}

impl fmt::Display for DimacsWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimacsWarning::EdgeCountMismatch { declared, actual } => {
                write!(f, "p line declares {declared} edges, found {actual} after deduplication")
            }
        }
    }
}

impl Graph {
    /// Builds a graph on vertices `1..=n` from an arbitrary edge list.
    ///
    /// Edges may appear in either orientation and more than once; the stored
    /// form is canonical. Labels outside `1..=n` and self-loops are errors.
    pub fn new(n: u32, edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> Result<Graph, GraphError> {
        let mut canon: Vec<(VertexId, VertexId)> = Vec::new();
        for (u, v) in edges {
            for label in [u, v] {
                if label < 1 || label > n {
                    return Err(GraphError::LabelOutOfRange { label, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        canon.dedup();
        let mut adj = vec![Vec::new(); n as usize];
        for &(u, v) in &canon {
            adj[(u - 1) as usize].push(v);
            adj[(v - 1) as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges: canon, adj })
    }

    /// Number of vertices `n`.
    pub fn vertex_count(&self) -> u32 {
        self.n
    }

    /// Number of (deduplicated) edges.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// All vertices in ascending order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        1..=self.n
    }

    /// The canonical edge list: `u < v`, ascending lexicographic.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    /// Neighbors of `v` in ascending order.
    ///
    /// # Panics
    /// Panics if `v` is not a vertex of this graph.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[(v - 1) as usize]
    }

    /// Whether the edge `{u, v}` exists. Out-of-range labels simply return false.
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        if u < 1 || u > self.n || v < 1 || v > self.n || u == v {
            return false;
        }
        self.adj[(u - 1) as usize].binary_search(&v).is_ok()
    }

    /// All triangles, ascending lexicographic by `(a, b, c)`.
    ///
    /// Runs in O(Σ_{(u,v)∈E} min(deg u, deg v)) ⊆ O(n³).
    pub fn triangles(&self) -> Vec<Triangle> {
        let mut out = Vec::new();
        for &(a, b) in &self.edges {
            // Common neighbors above b complete a triangle exactly once.
            for &c in common_neighbors(self, a, b).iter().filter(|&&c| c > b) {
                out.push(Triangle { a, b, c });
            }
        }
        out.sort_unstable();
        out
    }

    /// Serializes to DIMACS: one `p edge n m` line, then `e u v` lines with
    /// `u < v` in ascending lexicographic order. No trailing newline.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p edge {} {}", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            out.push_str(&format!("\ne {u} {v}"));
        }
        out
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Graph) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Triangle {
    /// Returns the triangle on `{a, b, c}` if the three vertices are distinct
    /// and pairwise adjacent in `g`.
    pub fn in_graph(g: &Graph, a: VertexId, b: VertexId, c: VertexId) -> Option<Triangle> {
        let mut v = [a, b, c];
        v.sort_unstable();
        let [a, b, c] = v;
        if a == b || b == c {
            return None;
        }
        if g.has_edge(a, b) && g.has_edge(a, c) && g.has_edge(b, c) {
            Some(Triangle { a, b, c })
        } else {
            None
        }
    }

    /// The vertices as an ascending array.
    pub fn vertices(&self) -> [VertexId; 3] {
        [self.a, self.b, self.c]
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.a, self.b, self.c)
    }
}

/// Sorted common neighbors of `a` and `b`.
pub(crate) fn common_neighbors(g: &Graph, a: VertexId, b: VertexId) -> Vec<VertexId> {
    let (mut i, mut j) = (0, 0);
    let (na, nb) = (g.neighbors(a), g.neighbors(b));
    let mut out = Vec::new();
    while i < na.len() && j < nb.len() {
        match na[i].cmp(&nb[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(na[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Parses DIMACS `.col` text.
///
/// Recognized records: `c <comment>`, one `p edge <n> <m>` line (required,
/// before any edge), and `e <u> <v>` lines. Duplicate edges collapse
/// silently; a self-loop is a hard error; an edge-count mismatch after
/// deduplication is reported as a warning, not an error. Blank lines are
/// ignored.
///
/// # Errors
/// Returns a [`DimacsError`] naming the 1-based offending line.
pub fn parse_dimacs(input: &str) -> Result<(Graph, Vec<DimacsWarning>), DimacsError> {
    let mut header: Option<(u32, usize)> = None;
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        let err = |kind| DimacsError { line, kind };
        let mut tokens = raw.split_whitespace();
        match tokens.next() {
            None => continue,
            Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(err(DimacsErrorKind::DuplicateProblemLine));
                }
                let format = tokens.next();
                if format != Some("edge") {
                    return Err(err(DimacsErrorKind::Malformed(format!(
                        "expected `p edge <n> <m>`, got format {:?}",
                        format.unwrap_or("")
                    ))));
                }
                let n = parse_int(tokens.next(), line, "vertex count")?;
                let m = parse_int(tokens.next(), line, "edge count")? as usize;
                if tokens.next().is_some() {
                    return Err(err(DimacsErrorKind::Malformed("extra tokens on p line".into())));
                }
                header = Some((n, m));
            }
            Some("e") => {
                let (n, _) = header.ok_or_else(|| err(DimacsErrorKind::MissingProblemLine))?;
                let u = parse_int(tokens.next(), line, "endpoint")?;
                let v = parse_int(tokens.next(), line, "endpoint")?;
                if tokens.next().is_some() {
                    return Err(err(DimacsErrorKind::Malformed("extra tokens on e line".into())));
                }
                for label in [u, v] {
                    if label < 1 || label > n {
                        return Err(err(DimacsErrorKind::LabelOutOfRange { label, n }));
                    }
                }
                if u == v {
                    return Err(err(DimacsErrorKind::SelfLoop(u)));
                }
                edges.push((u, v));
            }
            Some(other) => {
                return Err(err(DimacsErrorKind::Malformed(format!("unknown record `{other}`"))));
            }
        }
    }
    let (n, declared) = header.ok_or(DimacsError { line: input.lines().count().max(1), kind: DimacsErrorKind::MissingProblemLine })?;
    // Range and loop checks already ran per line, so construction cannot fail.
    let graph = Graph::new(n, edges).expect("edges validated during parse");
    let mut warnings = Vec::new();
    if graph.edge_count() != declared {
        warnings.push(DimacsWarning::EdgeCountMismatch { declared, actual: graph.edge_count() });
    }
    Ok((graph, warnings))
}

fn parse_int(token: Option<&str>, line: usize, what: &str) -> Result<u32, DimacsError> {
    let token = token.ok_or_else(|| DimacsError {
        line,
        kind: DimacsErrorKind::Malformed(format!("missing {what}")),
    })?;
    token.parse().map_err(|_| DimacsError {
        line,
        kind: DimacsErrorKind::Malformed(format!("bad {what} `{token}`")),
    })
}
