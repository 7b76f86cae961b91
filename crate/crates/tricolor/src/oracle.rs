//! Exact 3-colorability by exhaustive search.
//!
//! The oracle shares no code with the forcing solver: it decides
//! 3-colorability by backtracking over explicit color assignments, so the
//! two can check each other. Whenever the solver answers YES or NO, the
//! oracle must agree; when the solver is undetermined, the oracle still
//! gives the ground truth.
//!
//! The search is exponential in the worst case, so it refuses graphs above
//! a vertex cap ([`DEFAULT_VERTEX_CAP`] unless overridden) instead of
//! silently hanging.

use crate::graph::{Graph, VertexId};
use std::collections::BTreeMap;

/// Largest vertex count [`oracle_3color`] accepts.
pub const DEFAULT_VERTEX_CAP: u32 = 32;

/// Ground truth for one graph, with a witness coloring when one exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleAnswer {
    /// Colors are `1..=3`; every vertex is keyed, isolated ones included.
    Colorable(BTreeMap<VertexId, u8>),
    NotColorable,
}

impl OracleAnswer {
    pub fn is_colorable(&self) -> bool {
        matches!(self, OracleAnswer::Colorable(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("graph has {n} vertices, above the oracle cap of {cap}")]
    CapExceeded { n: u32, cap: u32 },
}

/// Decides 3-colorability under [`DEFAULT_VERTEX_CAP`].
pub fn oracle_3color(g: &Graph) -> Result<OracleAnswer, OracleError> {
    oracle_3color_capped(g, DEFAULT_VERTEX_CAP)
}

/// Decides 3-colorability, refusing graphs with more than `cap` vertices.
///
/// Backtracking assigns vertices in ascending id order and tries colors in
/// ascending order, with two symmetry breaks (vertex 1 is always color 1,
/// vertex 2 at most color 2) and forward checking: assigning a vertex
/// strikes that color from the domains of its higher-numbered neighbors,
/// and an emptied domain prunes the branch. The witness returned is the
/// first coloring this enumeration reaches, so it is deterministic.
pub fn oracle_3color_capped(g: &Graph, cap: u32) -> Result<OracleAnswer, OracleError> {
    let n = g.vertex_count();
    if n > cap {
        return Err(OracleError::CapExceeded { n, cap });
    }
    // domains[v] is a 3-bit mask of colors still open for v.
    let mut domains: Vec<u8> = vec![0b111; n as usize + 1];
    let mut colors: Vec<u8> = vec![0; n as usize + 1];
    if search(g, 1, &mut domains, &mut colors) {
        let witness = (1..=n).map(|v| (v, colors[v as usize])).collect();
        Ok(OracleAnswer::Colorable(witness))
    } else {
        Ok(OracleAnswer::NotColorable)
    }
}

fn search(g: &Graph, v: VertexId, domains: &mut [u8], colors: &mut [u8]) -> bool {
    if v > g.vertex_count() {
        return true;
    }
    let highest = match v {
        1 => 1,
        2 => 2,
        _ => 3,
    };
    for color in 1..=highest {
        let bit = 1 << (color - 1);
        if domains[v as usize] & bit == 0 {
            continue;
        }
        colors[v as usize] = color;
        let mut pruned: Vec<VertexId> = Vec::new();
        let mut open = true;
        for &w in g.neighbors(v) {
            if w <= v || domains[w as usize] & bit == 0 {
                continue;
            }
            domains[w as usize] &= !bit;
            pruned.push(w);
            if domains[w as usize] == 0 {
                open = false;
                break;
            }
        }
        if open && search(g, v + 1, domains, colors) {
            return true;
        }
        for w in pruned {
            domains[w as usize] |= bit;
        }
        colors[v as usize] = 0;
    }
    false
}
