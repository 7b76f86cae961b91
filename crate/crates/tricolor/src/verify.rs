//! Independent replay of machine certificates.
//!
//! The verifier trusts nothing about a certificate's origin. It re-derives
//! every claim against the graph with its own membership table: cited edges
//! must exist, cited witnesses must sit in the claimed sets *at that point
//! of the replay*, and no vertex may be placed twice. It never searches and
//! never backtracks — one pass over the lines, constant work per cited
//! edge — so checking stays polynomial and a valid certificate is a
//! machine-checkable non-colorability proof.
//!
//! # Certificate format
//!
//! One record per line, fields separated by whitespace:
//!
//! ```text
//! c <free text>                     comment, ignored anywhere
//! g <n> <m>                         graph binding; first record
//! t <a> <b> <c>                     root triangle, a < b < c,
//!                                   placed into A, B, C; second record
//! i1 <c> <SET> <a> <b> <x> <y>      triangle {a,b,c}; a-x and b-y joined
//!                                   to SET; conclusion: c in SET
//! i2 <x> <SET> <a> <b>              x joined to a and b, lying one in
//!                                   each set other than SET;
//!                                   conclusion: x in SET
//! n1 <SET> <a> <b> <c> <x> <y> <z>  triangle {a,b,c} fully joined to SET
//!                                   via a-x, b-y, c-z: contradiction
//! n2 <x> <a> <b> <c>                x joined to a in A, b in B, c in C:
//!                                   contradiction
//! ```
//!
//! Exactly one `n1`/`n2` record ends a certificate; records after it are
//! rejected. All vertex ids must lie in `1..=n` of the `g` line.

use crate::graph::{Graph, Triangle, VertexId};
use crate::proof::{Certificate, ProofStatement};
use crate::solver::SetId;

/// Why a certificate was rejected.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reason {
    /// Unparsable or structurally misplaced record.
    BadSyntax,
    /// The `g` line does not match the graph being verified.
    GraphMismatch,
    /// A cited edge is absent from the graph.
    MissingEdge,
    /// A cited witness is not currently in the claimed set.
    BadMembership,
    /// A vertex was placed twice.
    VertexReassigned,
    /// The records ended without a contradiction.
    NoContradiction,
    /// A record followed the contradiction.
    TrailingRecords,
}

impl std::fmt::Display for Reason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Reason::BadSyntax => "BAD_SYNTAX",
            Reason::GraphMismatch => "GRAPH_MISMATCH",
            Reason::MissingEdge => "MISSING_EDGE",
            Reason::BadMembership => "BAD_MEMBERSHIP",
            Reason::VertexReassigned => "VERTEX_REASSIGNED",
            Reason::NoContradiction => "NO_CONTRADICTION",
            Reason::TrailingRecords => "TRAILING_RECORDS",
        })
    }
}

/// Outcome of [`verify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyResult {
    Valid,
    /// Rejected at the 1-based `line` for `reason`.
    Invalid { line: usize, reason: Reason },
}

impl VerifyResult {
    pub fn is_valid(&self) -> bool {
        matches!(self, VerifyResult::Valid)
    }
}

/// Structural parse failure; same codes as verification, graph-free.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {reason}")]
pub struct CertParseError {
    pub line: usize,
    pub reason: Reason,
}

/// One parsed certificate record.
enum Record {
    Binding { n: u32, m: usize },
    Statement(ProofStatement),
}

/// Parses a single line. `Ok(None)` for blanks and comments.
fn parse_record(line: &str) -> Result<Option<Record>, ()> {
    let mut tokens = line.split_whitespace();
    let Some(tag) = tokens.next() else { return Ok(None) };
    if tag == "c" {
        return Ok(None);
    }
    let t = &mut tokens;
    let record = match tag {
        "g" => {
            let n = num(t)?;
            let m = num(t)? as usize;
            Record::Binding { n, m }
        }
        "t" => {
            let (a, b, c) = (num(t)?, num(t)?, num(t)?);
            if !(a < b && b < c) {
                return Err(());
            }
            Record::Statement(ProofStatement::RootTriangle(Triangle { a, b, c }))
        }
        "i1" => {
            let c = num(t)?;
            let target = set(t)?;
            let (a, b, x, y) = (num(t)?, num(t)?, num(t)?, num(t)?);
            Record::Statement(ProofStatement::Rho1Inclusion { c, target, a, b, x, y })
        }
        "i2" => {
            let x = num(t)?;
            let target = set(t)?;
            let (a, b) = (num(t)?, num(t)?);
            Record::Statement(ProofStatement::Rho2Inclusion { x, target, a, b })
        }
        "n1" => {
            let target = set(t)?;
            let (a, b, c, x, y, z) = (num(t)?, num(t)?, num(t)?, num(t)?, num(t)?, num(t)?);
            Record::Statement(ProofStatement::Rho1Contradiction { target, a, b, c, x, y, z })
        }
        "n2" => {
            let (x, a, b, c) = (num(t)?, num(t)?, num(t)?, num(t)?);
            Record::Statement(ProofStatement::Rho2Contradiction { x, a, b, c })
        }
        _ => return Err(()),
    };
    if tokens.next().is_some() {
        return Err(());
    }
    Ok(Some(record))
}

fn num(tokens: &mut std::str::SplitWhitespace<'_>) -> Result<u32, ()> {
    tokens.next().ok_or(())?.parse().map_err(|_| ())
}

fn set(tokens: &mut std::str::SplitWhitespace<'_>) -> Result<SetId, ()> {
    tokens.next().ok_or(())?.parse().map_err(|_| ())
}

/// Vertices a statement mentions, for range checks.
fn cited_vertices(stmt: &ProofStatement) -> Vec<VertexId> {
    match *stmt {
        ProofStatement::RootTriangle(t) => t.vertices().to_vec(),
        ProofStatement::Rho1Inclusion { c, a, b, x, y, .. } => vec![c, a, b, x, y],
        ProofStatement::Rho2Inclusion { x, a, b, .. } => vec![x, a, b],
        ProofStatement::Rho1Contradiction { a, b, c, x, y, z, .. } => vec![a, b, c, x, y, z],
        ProofStatement::Rho2Contradiction { x, a, b, c } => vec![x, a, b, c],
    }
}

/// Parses certificate text into its structured form without consulting a
/// graph. Inverse of [`Certificate::render_machine`].
///
/// # Errors
/// Reports the first offending line: misordered or malformed records as
/// [`Reason::BadSyntax`], records after the contradiction as
/// [`Reason::TrailingRecords`], and a missing contradiction as
/// [`Reason::NoContradiction`].
pub fn parse_certificate(text: &str) -> Result<Certificate, CertParseError> {
    let mut binding: Option<(u32, usize)> = None;
    let mut root: Option<Triangle> = None;
    let mut steps: Vec<ProofStatement> = Vec::new();
    let mut contradiction: Option<ProofStatement> = None;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let fail = |reason| CertParseError { line, reason };
        let record = match parse_record(raw) {
            Ok(None) => continue,
            Ok(Some(r)) => r,
            Err(()) => return Err(fail(Reason::BadSyntax)),
        };
        if contradiction.is_some() {
            return Err(fail(Reason::TrailingRecords));
        }
        match record {
            Record::Binding { n, m } => {
                if binding.is_some() {
                    return Err(fail(Reason::BadSyntax));
                }
                binding = Some((n, m));
            }
            Record::Statement(stmt) => {
                let Some((n, _)) = binding else { return Err(fail(Reason::BadSyntax)) };
                if cited_vertices(&stmt).iter().any(|&v| v < 1 || v > n) {
                    return Err(fail(Reason::BadSyntax));
                }
                match stmt {
                    ProofStatement::RootTriangle(t) => {
                        if root.is_some() {
                            return Err(fail(Reason::BadSyntax));
                        }
                        root = Some(t);
                    }
                    _ if root.is_none() => return Err(fail(Reason::BadSyntax)),
                    s if s.is_contradiction() => contradiction = Some(s),
                    s => steps.push(s),
                }
            }
        }
    }
    let end = CertParseError { line: last_line.max(1), reason: Reason::BadSyntax };
    let graph_binding = binding.ok_or(end)?;
    let root = root.ok_or(end)?;
    let contradiction = contradiction.ok_or(CertParseError {
        line: last_line.max(1),
        reason: Reason::NoContradiction,
    })?;
    Ok(Certificate { graph_binding, root, steps, contradiction })
}

/// Replays certificate text against `g`.
///
/// Accepts exactly when every record parses, the binding matches, every
/// cited edge exists, every membership claim holds at its point in the
/// replay, no vertex is placed twice, and a single contradiction ends the
/// text. The first failure is reported with its line and [`Reason`].
pub fn verify(g: &Graph, text: &str) -> VerifyResult {
    let n = g.vertex_count();
    let mut membership: Vec<Option<SetId>> = vec![None; n as usize + 1];
    let mut seen_binding = false;
    let mut seen_root = false;
    let mut done = false;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let fail = |reason| VerifyResult::Invalid { line, reason };
        let record = match parse_record(raw) {
            Ok(None) => continue,
            Ok(Some(r)) => r,
            Err(()) => return fail(Reason::BadSyntax),
        };
        if done {
            return fail(Reason::TrailingRecords);
        }
        let stmt = match record {
            Record::Binding { n: bn, m } => {
                if seen_binding {
                    return fail(Reason::BadSyntax);
                }
                if bn != n || m != g.edge_count() {
                    return fail(Reason::GraphMismatch);
                }
                seen_binding = true;
                continue;
            }
            Record::Statement(stmt) => stmt,
        };
        if !seen_binding {
            return fail(Reason::BadSyntax);
        }
        if cited_vertices(&stmt).iter().any(|&v| v < 1 || v > n) {
            return fail(Reason::BadSyntax);
        }
        match stmt {
            ProofStatement::RootTriangle(t) => {
                if seen_root {
                    return fail(Reason::BadSyntax);
                }
                if !(g.has_edge(t.a, t.b) && g.has_edge(t.a, t.c) && g.has_edge(t.b, t.c)) {
                    return fail(Reason::MissingEdge);
                }
                membership[t.a as usize] = Some(SetId::A);
                membership[t.b as usize] = Some(SetId::B);
                membership[t.c as usize] = Some(SetId::C);
                seen_root = true;
            }
            _ if !seen_root => return fail(Reason::BadSyntax),
            ProofStatement::Rho1Inclusion { c, target, a, b, x, y } => {
                let edges = [(a, b), (a, c), (b, c), (a, x), (b, y)];
                if edges.iter().any(|&(u, v)| !g.has_edge(u, v)) {
                    return fail(Reason::MissingEdge);
                }
                if membership[x as usize] != Some(target) || membership[y as usize] != Some(target) {
                    return fail(Reason::BadMembership);
                }
                if membership[c as usize].is_some() {
                    return fail(Reason::VertexReassigned);
                }
                membership[c as usize] = Some(target);
            }
            ProofStatement::Rho2Inclusion { x, target, a, b } => {
                if !g.has_edge(x, a) || !g.has_edge(x, b) {
                    return fail(Reason::MissingEdge);
                }
                let (first, second) = target.others();
                let (sa, sb) = (membership[a as usize], membership[b as usize]);
                let one_each = (sa == Some(first) && sb == Some(second))
                    || (sa == Some(second) && sb == Some(first));
                if !one_each {
                    return fail(Reason::BadMembership);
                }
                if membership[x as usize].is_some() {
                    return fail(Reason::VertexReassigned);
                }
                membership[x as usize] = Some(target);
            }
            ProofStatement::Rho1Contradiction { target, a, b, c, x, y, z } => {
                let edges = [(a, b), (a, c), (b, c), (a, x), (b, y), (c, z)];
                if edges.iter().any(|&(u, v)| !g.has_edge(u, v)) {
                    return fail(Reason::MissingEdge);
                }
                let witnesses = [x, y, z];
                if witnesses.iter().any(|&w| membership[w as usize] != Some(target)) {
                    return fail(Reason::BadMembership);
                }
                done = true;
            }
            ProofStatement::Rho2Contradiction { x, a, b, c } => {
                let edges = [(x, a), (x, b), (x, c)];
                if edges.iter().any(|&(u, v)| !g.has_edge(u, v)) {
                    return fail(Reason::MissingEdge);
                }
                let claims = [(a, SetId::A), (b, SetId::B), (c, SetId::C)];
                if claims.iter().any(|&(w, s)| membership[w as usize] != Some(s)) {
                    return fail(Reason::BadMembership);
                }
                done = true;
            }
        }
    }
    let end = last_line.max(1);
    if !seen_binding || !seen_root {
        return VerifyResult::Invalid { line: end, reason: Reason::BadSyntax };
    }
    if !done {
        return VerifyResult::Invalid { line: end, reason: Reason::NoContradiction };
    }
    VerifyResult::Valid
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fig3;
    use crate::solver::{is_3_colorable, Verdict};

    fn k4() -> Graph {
        Graph::new(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap()
    }

    const K4_CERT: &str = "g 4 6\nt 1 2 3\nn2 4 1 2 3";

    // ====== acceptance ======

    #[test]
    fn accepts_root_only_k4_certificate() {
        assert_eq!(verify(&k4(), K4_CERT), VerifyResult::Valid);
    }

    #[test]
    fn accepts_solver_output_end_to_end() {
        let g = fig3();
        let Verdict::No { certificate, .. } = is_3_colorable(&g) else { panic!("expected NO") };
        assert_eq!(verify(&g, &certificate.render_machine()), VerifyResult::Valid);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "c proved by machine\n\ng 4 6\nc any text\nt 1 2 3\nn2 4 1 2 3\nc after the end\n";
        assert_eq!(verify(&k4(), text), VerifyResult::Valid);
    }

    // ====== rejection: structure ======

    #[test]
    fn wrong_binding_is_a_graph_mismatch() {
        let r = verify(&k4(), "g 5 6\nt 1 2 3\nn2 4 1 2 3");
        assert_eq!(r, VerifyResult::Invalid { line: 1, reason: Reason::GraphMismatch });
        let r = verify(&k4(), "g 4 7\nt 1 2 3\nn2 4 1 2 3");
        assert_eq!(r, VerifyResult::Invalid { line: 1, reason: Reason::GraphMismatch });
    }

    #[test]
    fn missing_root_line_is_bad_syntax() {
        let r = verify(&k4(), "g 4 6\nn2 4 1 2 3");
        assert_eq!(r, VerifyResult::Invalid { line: 2, reason: Reason::BadSyntax });
    }

    #[test]
    fn second_contradiction_is_a_trailing_record() {
        let r = verify(&k4(), "g 4 6\nt 1 2 3\nn2 4 1 2 3\nn2 4 1 2 3");
        assert_eq!(r, VerifyResult::Invalid { line: 4, reason: Reason::TrailingRecords });
    }

    #[test]
    fn missing_contradiction_is_reported() {
        let r = verify(&k4(), "g 4 6\nt 1 2 3");
        assert_eq!(r, VerifyResult::Invalid { line: 2, reason: Reason::NoContradiction });
    }

    #[test]
    fn garbage_tokens_name_the_line() {
        let r = verify(&k4(), "g 4 6\nt 1 2 3\nn2 4 one 2 3");
        assert_eq!(r, VerifyResult::Invalid { line: 3, reason: Reason::BadSyntax });
        let r = verify(&k4(), "g 4 6\nt 1 2 3\nq 4 1 2 3");
        assert_eq!(r, VerifyResult::Invalid { line: 3, reason: Reason::BadSyntax });
    }

    #[test]
    fn out_of_range_vertex_is_bad_syntax() {
        let r = verify(&k4(), "g 4 6\nt 1 2 3\nn2 9 1 2 3");
        assert_eq!(r, VerifyResult::Invalid { line: 3, reason: Reason::BadSyntax });
    }

    // ====== rejection: replay ======

    #[test]
    fn root_citing_a_non_edge_is_rejected() {
        // 2 and 4 are not adjacent in the worked-example graph.
        let r = verify(&fig3(), "g 19 16\nt 1 2 4\nn2 5 1 2 4");
        assert_eq!(r, VerifyResult::Invalid { line: 2, reason: Reason::MissingEdge });
    }

    #[test]
    fn inclusion_with_witness_outside_the_set_is_rejected() {
        // The edge 5-3 exists, but witness 3 sits in C, not A.
        let g = fig3();
        let text = "g 19 16\nt 1 2 3\ni1 6 A 4 5 1 3\nn2 19 6 2 3";
        assert_eq!(verify(&g, text), VerifyResult::Invalid { line: 3, reason: Reason::BadMembership });
    }

    #[test]
    fn two_neighbor_inclusion_needs_one_witness_in_each_other_set() {
        let g = fig3();
        // Both witnesses in A: rejected even though the edges exist.
        let text = "g 19 16\nt 1 2 3\ni1 6 A 4 5 1 1\ni2 5 B 1 6\nn2 19 6 5 3";
        assert_eq!(verify(&g, text), VerifyResult::Invalid { line: 4, reason: Reason::BadMembership });
    }

    #[test]
    fn reassigning_a_vertex_is_rejected() {
        let g = fig3();
        let text = "g 19 16\nt 1 2 3\ni1 6 A 4 5 1 1\ni1 6 A 4 5 1 1\nn2 19 6 2 3";
        assert_eq!(
            verify(&g, text),
            VerifyResult::Invalid { line: 4, reason: Reason::VertexReassigned }
        );
    }

    #[test]
    fn contradiction_must_cite_real_memberships() {
        let g = fig3();
        // 18 was never placed in A.
        let text = "g 19 16\nt 1 2 3\nn2 19 18 2 4";
        assert_eq!(verify(&g, text), VerifyResult::Invalid { line: 3, reason: Reason::BadMembership });
    }

    #[test]
    fn contradiction_citing_missing_edge_is_rejected() {
        // 1-19 is not an edge.
        let g = fig3();
        let text = "g 19 16\nt 1 2 3\nn2 19 1 2 4";
        assert_eq!(verify(&g, text), VerifyResult::Invalid { line: 3, reason: Reason::MissingEdge });
    }

    // ====== parsing ======

    #[test]
    fn parse_inverts_machine_rendering() {
        let g = fig3();
        let Verdict::No { certificate, .. } = is_3_colorable(&g) else { panic!("expected NO") };
        let parsed = parse_certificate(&certificate.render_machine()).unwrap();
        assert_eq!(parsed, certificate);
    }

    #[test]
    fn parse_rejects_trailing_and_unsorted_records() {
        let err = parse_certificate("g 4 6\nt 1 2 3\nn2 4 1 2 3\nn2 4 1 2 3").unwrap_err();
        assert_eq!(err, CertParseError { line: 4, reason: Reason::TrailingRecords });
        let err = parse_certificate("g 4 6\nt 2 1 3\nn2 4 1 2 3").unwrap_err();
        assert_eq!(err, CertParseError { line: 2, reason: Reason::BadSyntax });
    }

    #[test]
    fn parse_reports_missing_contradiction() {
        let err = parse_certificate("g 4 6\nt 1 2 3").unwrap_err();
        assert_eq!(err, CertParseError { line: 2, reason: Reason::NoContradiction });
    }
}
