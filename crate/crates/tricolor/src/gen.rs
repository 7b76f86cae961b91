//! Deterministic instance generators.
//!
//! Three families exercise the solver from different angles:
//!
//! * **wheels** — a cycle plus a hub. Odd cycles make the wheel
//!   non-3-colorable with certificates of predictable length; even cycles
//!   make it colorable. No randomness.
//! * **stacked triangulations** — planar triangulations grown by repeatedly
//!   subdividing a face, each containing `K4`, so never 3-colorable.
//! * **edge subgraphs** — random edge-keeps of a base graph, thinning
//!   dense instances into colorable or undetermined ones.
//!
//! Randomized families take an explicit [`Seed`]; the same seed always
//! yields the same graph, on every platform, because the generator is a
//! self-contained [`SplitMix64`] rather than a library RNG whose stream
//! could change between releases.

use crate::graph::{Graph, VertexId};

/// Seed for the deterministic generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Seed(pub u64);

/// The fixed-increment SplitMix64 generator.
///
/// The constants are the standard ones: the state steps by the golden-ratio
/// increment `0x9E3779B97F4A7C15`, and each output is the state scrambled
/// by two xor-shift-multiply rounds with `0xBF58476D1CE4E5B9` and
/// `0x94D049BB133111EB`. Small, full-period over `u64`, and portable —
/// exactly what reproducible test instances need.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: Seed) -> Self {
        SplitMix64 { state: seed.0 }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform index into `0..len`. `len` must be nonzero.
    pub fn next_index(&mut self, len: usize) -> usize {
        (self.next_u64() % len as u64) as usize
    }

    /// Uniform double in `[0, 1)`, from the top 53 bits.
    pub fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
pub enum GenError {
    #[error("wheel needs a cycle of at least 3 vertices, got {k}")]
    WheelTooSmall { k: u32 },
    #[error("stacked triangulation needs at least 3 vertices, got {n}")]
    StackTooSmall { n: u32 },
    #[error("keep probability must lie in [0, 1], got {p}")]
    BadProbability { p: f64 },
}

/// The wheel `W_k`: cycle `1..=k` plus hub `k+1` joined to every cycle
/// vertex. `n = k + 1`, `m = 2k`. Odd `k` gives a non-3-colorable graph
/// (the hub forces one color, leaving an odd cycle to 2-color); even `k`
/// gives a 3-colorable one. `k = 3` is `K4`.
pub fn gen_wheel(k: u32) -> Result<Graph, GenError> {
    if k < 3 {
        return Err(GenError::WheelTooSmall { k });
    }
    let hub = k + 1;
    let mut edges: Vec<(VertexId, VertexId)> = Vec::with_capacity(2 * k as usize);
    for v in 1..=k {
        let next = if v == k { 1 } else { v + 1 };
        edges.push((v, next));
        edges.push((v, hub));
    }
    Ok(Graph::new(k + 1, edges).expect("wheel edges are well-formed"))
}

/// A random planar triangulation on `n` vertices grown by face splitting.
///
/// Starts from the triangle `{1, 2, 3}` with its two sides as faces, then
/// places each new vertex inside a face chosen by the seed, joining it to
/// the three face corners and replacing the face with three smaller ones.
/// Always yields `m = 3(n - 2)` edges, and always contains `K4` (vertex 4
/// lands in a face of the root triangle), so these graphs are never
/// 3-colorable — the solver should refute every one of them.
pub fn gen_stacked_triangulation(n: u32, seed: Seed) -> Result<Graph, GenError> {
    if n < 3 {
        return Err(GenError::StackTooSmall { n });
    }
    let mut rng = SplitMix64::new(seed);
    let mut faces: Vec<(VertexId, VertexId, VertexId)> = vec![(1, 2, 3), (1, 2, 3)];
    let mut edges: Vec<(VertexId, VertexId)> = vec![(1, 2), (1, 3), (2, 3)];
    for v in 4..=n {
        let idx = rng.next_index(faces.len());
        let (a, b, c) = faces[idx];
        edges.push((a, v));
        edges.push((b, v));
        edges.push((c, v));
        faces[idx] = (a, b, v);
        faces.push((a, c, v));
        faces.push((b, c, v));
    }
    Ok(Graph::new(n, edges).expect("triangulation edges are well-formed"))
}

/// Keeps each edge of `g` independently with probability `keep`, walking
/// edges in canonical order with one draw per edge. The vertex set is
/// unchanged, so dropped edges leave isolated vertices behind.
pub fn gen_edge_subgraph(g: &Graph, keep: f64, seed: Seed) -> Result<Graph, GenError> {
    if !(0.0..=1.0).contains(&keep) {
        return Err(GenError::BadProbability { p: keep });
    }
    let mut rng = SplitMix64::new(seed);
    let edges: Vec<(VertexId, VertexId)> =
        g.edges().iter().copied().filter(|_| rng.next_unit() < keep).collect();
    Ok(Graph::new(g.vertex_count(), edges).expect("subgraph edges are well-formed"))
}
