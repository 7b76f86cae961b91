//! The triangle-rooted forcing solver.
//!
//! Rooting at a triangle puts its three vertices into the independent sets
//! A, B and C (a harmless relabeling of any hypothetical 3-coloring). Two
//! rules then grow the sets with assignments that are logically forced:
//!
//! * [`rho1`]: if two corners of a triangle inside the unassigned pool are
//!   each joined to the target set, the third corner must take the remaining
//!   color — the target's.
//! * [`rho2`]: a vertex joined to two of the sets must join the third.
//!
//! Whenever a forced vertex is *also* joined to its destination set, no
//! proper 3-coloring can extend the root assignment, and the recorded
//! statements form a non-colorability certificate. If instead the pool
//! drains, the sets are a proper 3-coloring. Neither may happen: a round
//! that forces nothing ends the test as undetermined (the method is sound
//! but not complete).
//!
//! All iteration is in ascending order and all witnesses are
//! smallest-first, so a run is a pure function of the input graph.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::graph::{common_neighbors, Graph, Triangle, VertexId};
use crate::proof::{Certificate, ProofLog, ProofStatement};

/// One of the three independent sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SetId {
    A,
    B,
    C,
}

impl SetId {
    /// All three sets in order.
    pub const ALL: [SetId; 3] = [SetId::A, SetId::B, SetId::C];

    /// Position in `ALL`.
    pub fn index(self) -> usize {
        match self {
            SetId::A => 0,
            SetId::B => 1,
            SetId::C => 2,
        }
    }

    /// The other two sets, in order.
    pub fn others(self) -> (SetId, SetId) {
        match self {
            SetId::A => (SetId::B, SetId::C),
            SetId::B => (SetId::A, SetId::C),
            SetId::C => (SetId::A, SetId::B),
        }
    }
}

impl std::fmt::Display for SetId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SetId::A => "A",
            SetId::B => "B",
            SetId::C => "C",
        })
    }
}

impl std::str::FromStr for SetId {
    type Err = ();

    fn from_str(s: &str) -> Result<SetId, ()> {
        match s {
            "A" => Ok(SetId::A),
            "B" => Ok(SetId::B),
            "C" => Ok(SetId::C),
            _ => Err(()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    /// Not tracked by this state at all.
    Outside,
    /// In the unassigned pool S.
    Pending,
    In(SetId),
}

/// Tracks the three growing independent sets and the unassigned pool S.
///
/// The sets and the pool are pairwise disjoint; their union may be a strict
/// subset of the vertices. Every insertion into a set is checked against the
/// set's *entire* current membership, so each set stays independent.
#[derive(Clone, Debug)]
pub struct PartitionState {
    slots: Vec<Slot>,
    sets: [BTreeSet<VertexId>; 3],
    pending: BTreeSet<VertexId>,
}

/// Error manipulating a [`PartitionState`].
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum StateError {
    #[error("vertex {0} outside this state's range")]
    OutOfRange(VertexId),
    #[error("vertex {0} is already assigned to a set")]
    AlreadyAssigned(VertexId),
    #[error("vertex {0} is already in the unassigned pool")]
    AlreadyPending(VertexId),
    #[error("vertex {vertex} is joined to {neighbor}, already in the target set")]
    WouldConflict { vertex: VertexId, neighbor: VertexId },
}

impl PartitionState {
    /// A state over vertices `1..=n` with every vertex untracked.
    pub fn new(n: u32) -> PartitionState {
        PartitionState {
            slots: vec![Slot::Outside; n as usize],
            sets: [BTreeSet::new(), BTreeSet::new(), BTreeSet::new()],
            pending: BTreeSet::new(),
        }
    }

    fn slot(&self, v: VertexId) -> Result<Slot, StateError> {
        self.slots
            .get((v as usize).wrapping_sub(1))
            .copied()
            .ok_or(StateError::OutOfRange(v))
    }

    /// Puts an untracked vertex into the unassigned pool.
    pub fn mark_pending(&mut self, v: VertexId) -> Result<(), StateError> {
        match self.slot(v)? {
            Slot::Outside => {
                self.slots[(v - 1) as usize] = Slot::Pending;
                self.pending.insert(v);
                Ok(())
            }
            Slot::Pending => Err(StateError::AlreadyPending(v)),
            Slot::In(_) => Err(StateError::AlreadyAssigned(v)),
        }
    }

    /// Places `v` into `set`, refusing if `v` is already assigned or joined
    /// to any current member of `set`.
    pub fn assign(&mut self, g: &Graph, v: VertexId, set: SetId) -> Result<(), StateError> {
        match self.slot(v)? {
            Slot::In(_) => return Err(StateError::AlreadyAssigned(v)),
            Slot::Outside | Slot::Pending => {}
        }
        if let Some(neighbor) = self.smallest_neighbor_in_set(g, v, set) {
            return Err(StateError::WouldConflict { vertex: v, neighbor });
        }
        self.place(v, set);
        Ok(())
    }

    /// Moves `v` into `set` after the caller has ruled out a conflict.
    fn place(&mut self, v: VertexId, set: SetId) {
        self.pending.remove(&v);
        self.slots[(v - 1) as usize] = Slot::In(set);
        self.sets[set.index()].insert(v);
    }

    /// Whether `v` sits in the unassigned pool.
    pub fn is_pending(&self, v: VertexId) -> bool {
        self.slot(v) == Ok(Slot::Pending)
    }

    /// The set `v` belongs to, if any.
    pub fn membership(&self, v: VertexId) -> Option<SetId> {
        match self.slot(v) {
            Ok(Slot::In(set)) => Some(set),
            _ => None,
        }
    }

    /// Current members of `set`, ascending.
    pub fn set_members(&self, set: SetId) -> &BTreeSet<VertexId> {
        &self.sets[set.index()]
    }

    /// The unassigned pool S, ascending.
    pub fn pending(&self) -> &BTreeSet<VertexId> {
        &self.pending
    }

    /// Smallest neighbor of `v` currently in `set`, if any.
    pub fn smallest_neighbor_in_set(&self, g: &Graph, v: VertexId, set: SetId) -> Option<VertexId> {
        g.neighbors(v).iter().copied().find(|&w| self.membership(w) == Some(set))
    }

    /// The assignment as a map. Total over V(G) exactly when every vertex
    /// was tracked and the pool has drained.
    pub fn coloring(&self) -> BTreeMap<VertexId, SetId> {
        let mut map = BTreeMap::new();
        for set in SetId::ALL {
            for &v in self.set_members(set) {
                map.insert(v, set);
            }
        }
        map
    }
}

/// What a single rule pass produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleOutcome {
    /// The pass ran to completion; any forced vertices were moved and logged.
    Continue,
    /// A forced vertex was also joined to its destination: the root
    /// assignment is unsatisfiable. The contradiction is returned unrecorded.
    No(ProofStatement),
}

/// One entry of a rule schedule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleCall {
    Rho1(SetId),
    Rho2 { src_a: SetId, src_b: SetId, target: SetId },
}

/// The reference schedule: the triangle rule toward each set, then the
/// two-neighbor rule toward each set.
pub const DEFAULT_RULE_ORDER: [RuleCall; 6] = [
    RuleCall::Rho1(SetId::A),
    RuleCall::Rho1(SetId::B),
    RuleCall::Rho1(SetId::C),
    RuleCall::Rho2 { src_a: SetId::A, src_b: SetId::B, target: SetId::C },
    RuleCall::Rho2 { src_a: SetId::A, src_b: SetId::C, target: SetId::B },
    RuleCall::Rho2 { src_a: SetId::B, src_b: SetId::C, target: SetId::A },
];

/// Triangle rule, one pass.
///
/// Scans edges `{a, b}` with both endpoints in the pool in ascending
/// lexicographic order. When `a` and `b` each have a neighbor in `target`
/// (witnesses are the smallest such, drawn from the membership as it stood
/// when the pass began — vertices forced during the pass join the witness
/// pool in the next pass), every pool vertex `c` completing a triangle
/// `{a, b, c}` is forced into `target`. The conflict check on `c` always
/// sees the current membership, so sets stay independent and a joined `c`
/// ends the run instead.
pub fn rho1(g: &Graph, state: &mut PartitionState, target: SetId, log: &mut ProofLog) -> RuleOutcome {
    let witness_pool: BTreeSet<VertexId> = state.set_members(target).clone();
    let witness_for = |v: VertexId| g.neighbors(v).iter().copied().find(|w| witness_pool.contains(w));
    for &(a, b) in g.edges() {
        if !state.is_pending(a) || !state.is_pending(b) {
            continue;
        }
        let Some(x) = witness_for(a) else { continue };
        let Some(y) = witness_for(b) else { continue };
        for c in common_neighbors(g, a, b) {
            if !state.is_pending(c) {
                continue;
            }
            if let Some(z) = state.smallest_neighbor_in_set(g, c, target) {
                return RuleOutcome::No(ProofStatement::Rho1Contradiction { target, a, b, c, x, y, z });
            }
            state.place(c, target);
            log.record(ProofStatement::Rho1Inclusion { c, target, a, b, x, y })
                .expect("rho1 witnesses were placed before this pass");
        }
    }
    RuleOutcome::Continue
}

/// Two-neighbor rule, one pass.
///
/// Scans the pool ascending. A vertex `x` joined to both source sets is
/// forced into `target`; the witnesses are the smallest qualified neighbor
/// in each source, stored in alphabetical order of their sets. The conflict
/// check against `target` sees insertions made earlier in the same pass.
///
/// # Panics
/// The three sets must be distinct.
pub fn rho2(
    g: &Graph,
    state: &mut PartitionState,
    src_a: SetId,
    src_b: SetId,
    target: SetId,
    log: &mut ProofLog,
) -> RuleOutcome {
    assert!(src_a != src_b && src_a != target && src_b != target, "rho2 needs three distinct sets");
    let pool: Vec<VertexId> = state.pending().iter().copied().collect();
    for x in pool {
        if !state.is_pending(x) {
            continue;
        }
        let Some(wa) = state.smallest_neighbor_in_set(g, x, src_a) else { continue };
        let Some(wb) = state.smallest_neighbor_in_set(g, x, src_b) else { continue };
        if let Some(wt) = state.smallest_neighbor_in_set(g, x, target) {
            let mut wit = [(src_a, wa), (src_b, wb), (target, wt)];
            wit.sort_by_key(|&(set, _)| set.index());
            return RuleOutcome::No(ProofStatement::Rho2Contradiction {
                x,
                a: wit[0].1,
                b: wit[1].1,
                c: wit[2].1,
            });
        }
        // Store witnesses by alphabetical source set.
        let (a, b) = if src_a.index() <= src_b.index() { (wa, wb) } else { (wb, wa) };
        state.place(x, target);
        log.record(ProofStatement::Rho2Inclusion { x, target, a, b })
            .expect("rho2 witnesses were placed before this pass");
    }
    RuleOutcome::Continue
}

/// Result of testing one root triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TriangleResult {
    /// The root assignment is unsatisfiable; since it was a relabeling of
    /// any hypothetical coloring, the graph is not 3-colorable.
    No(Certificate),
    /// The pool drained: a proper 3-coloring, total over the vertices.
    Yes(BTreeMap<VertexId, SetId>),
    /// Forcing stalled without an answer.
    Undetermined,
}

/// Runs the forcing fixpoint rooted at `t` with the reference rule schedule.
///
/// Returns the result together with the full undepurated log.
///
/// # Panics
/// `t` must be a triangle of `g`.
pub fn test_triangle(g: &Graph, t: Triangle) -> (TriangleResult, ProofLog) {
    test_triangle_with_rules(g, t, &DEFAULT_RULE_ORDER)
}

/// [`test_triangle`] with a caller-chosen rule schedule. The schedule is
/// repeated until a contradiction, a drained pool, or a round that forces
/// nothing. Definite answers are sound for any schedule; which answer — and
/// which certificate — is found may differ.
///
/// # Panics
/// `t` must be a triangle of `g`.
pub fn test_triangle_with_rules(g: &Graph, t: Triangle, rules: &[RuleCall]) -> (TriangleResult, ProofLog) {
    assert_eq!(
        Triangle::in_graph(g, t.a, t.b, t.c),
        Some(t),
        "root must be a triangle of the graph"
    );
    let mut state = PartitionState::new(g.vertex_count());
    let mut log = ProofLog::new(g.vertex_count(), g.edge_count());
    log.record_root(t).expect("fresh log");
    for v in g.vertices() {
        if v != t.a && v != t.b && v != t.c {
            state.mark_pending(v).expect("fresh state");
        }
    }
    for (v, set) in [(t.a, SetId::A), (t.b, SetId::B), (t.c, SetId::C)] {
        state.assign(g, v, set).expect("root vertices enter empty sets");
    }
    let mut rounds: u32 = 0;
    loop {
        rounds += 1;
        // Every round except the last removes a vertex from the pool.
        debug_assert!(rounds <= g.vertex_count(), "fixpoint must shrink the pool");
        let before = state.pending().len();
        for rule in rules {
            let outcome = match *rule {
                RuleCall::Rho1(set) => rho1(g, &mut state, set, &mut log),
                RuleCall::Rho2 { src_a, src_b, target } => {
                    rho2(g, &mut state, src_a, src_b, target, &mut log)
                }
            };
            if let RuleOutcome::No(stmt) = outcome {
                log.set_final(stmt).expect("contradiction cites placed vertices");
                let cert = log.depurate().expect("log ends in a contradiction");
                return (TriangleResult::No(cert), log);
            }
        }
        if state.pending().is_empty() {
            return (TriangleResult::Yes(state.coloring()), log);
        }
        if state.pending().len() == before {
            return (TriangleResult::Undetermined, log);
        }
    }
}

/// Counters accumulated over a whole solve.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Root triangles actually tested.
    pub triangles_tested: usize,
    /// Inclusions plus contradictions recorded across those tests.
    pub rule_applications: usize,
}

/// The solver's three-valued answer.
///
/// `No` is backed by a replayable certificate; `Yes` carries a proper
/// coloring; `Undetermined` means every root triangle stalled (or the graph
/// has no triangle at all — in particular any graph on fewer than three
/// vertices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    No { certificate: Certificate, root: Triangle, stats: SolveStats },
    Yes { coloring: BTreeMap<VertexId, SetId>, stats: SolveStats },
    Undetermined { stats: SolveStats },
}

impl Verdict {
    /// The accumulated counters, whatever the answer.
    pub fn stats(&self) -> SolveStats {
        match self {
            Verdict::No { stats, .. } | Verdict::Yes { stats, .. } | Verdict::Undetermined { stats } => {
                *stats
            }
        }
    }
}

fn applications(log: &ProofLog) -> usize {
    log.statements().len() - 1 + usize::from(log.contradiction().is_some())
}

/// Tests every triangle in ascending lexicographic order and adopts the
/// first definite answer; returns `Undetermined` if none produced one.
pub fn is_3_colorable(g: &Graph) -> Verdict {
    let mut stats = SolveStats::default();
    for t in g.triangles() {
        stats.triangles_tested += 1;
        let (result, log) = test_triangle(g, t);
        stats.rule_applications += applications(&log);
        match result {
            TriangleResult::No(certificate) => return Verdict::No { certificate, root: t, stats },
            TriangleResult::Yes(coloring) => return Verdict::Yes { coloring, stats },
            TriangleResult::Undetermined => {}
        }
    }
    Verdict::Undetermined { stats }
}

/// Like [`is_3_colorable`], testing triangles on `jobs` threads.
///
/// The verdict and certificate equal the sequential ones: whatever the
/// completion order, the adopted answer is the one from the
/// lexicographically first triangle that produced a definite result. The
/// counters in `stats` may include extra triangles a worker had already
/// started.
pub fn is_3_colorable_jobs(g: &Graph, jobs: usize) -> Verdict {
    if jobs <= 1 {
        return is_3_colorable(g);
    }
    let triangles = g.triangles();
    let next = AtomicUsize::new(0);
    let best = AtomicUsize::new(usize::MAX);
    let tested = AtomicUsize::new(0);
    let applied = AtomicUsize::new(0);
    let winners: Mutex<BTreeMap<usize, TriangleResult>> = Mutex::new(BTreeMap::new());
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= triangles.len() {
                    break;
                }
                // A definite answer at an earlier index makes this one moot.
                if i > best.load(Ordering::Relaxed) {
                    continue;
                }
                let (result, log) = test_triangle(g, triangles[i]);
                tested.fetch_add(1, Ordering::Relaxed);
                applied.fetch_add(applications(&log), Ordering::Relaxed);
                if !matches!(result, TriangleResult::Undetermined) {
                    best.fetch_min(i, Ordering::Relaxed);
                    winners.lock().unwrap().insert(i, result);
                }
            });
        }
    });
    let stats = SolveStats {
        triangles_tested: tested.load(Ordering::Relaxed),
        rule_applications: applied.load(Ordering::Relaxed),
    };
    let winner = best.load(Ordering::Relaxed);
    if winner == usize::MAX {
        return Verdict::Undetermined { stats };
    }
    let result = winners.lock().unwrap().remove(&winner).expect("winner stored");
    match result {
        TriangleResult::No(certificate) => {
            Verdict::No { certificate, root: triangles[winner], stats }
        }
        TriangleResult::Yes(coloring) => Verdict::Yes { coloring, stats },
        TriangleResult::Undetermined => unreachable!("only definite results are stored"),
    }
}
