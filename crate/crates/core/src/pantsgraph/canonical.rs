//! Canonical codes for pants graph types.
//!
//! Two pants graphs have the same *type* when some renumbering of the pants
//! carries one to the other (boundary leg labels stay fixed). The canonical
//! code is the lexicographically least integer sequence obtainable over all
//! renumberings, so type equality is code equality, and the code decodes
//! back to a distinguished representative.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{PantsGraph, PantsGraphError};
use crate::surface::{SurfaceError, SurfaceType};

/// Errors from decoding a canonical code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("code too short: expected at least {expected} entries, got {got}")]
    Truncated { expected: usize, got: usize },
    #[error("code header does not describe a decomposable surface")]
    BadSurface(#[from] SurfaceError),
    #[error("leg positions in the code disagree with the per-pants leg counts")]
    LegMismatch,
    #[error("decoded graph is invalid: {0}")]
    BadGraph(#[from] PantsGraphError),
}

/// The canonical code of a pants graph type.
///
/// Layout: `[g, n, m, E]`, then for each pants position `p` a row
/// `[leg count, loop count, multiplicities to positions 0..p]`, then for
/// each boundary leg `1..=n` the position of the pants carrying it. The
/// code is minimized lexicographically over all assignments of pants to
/// positions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalCode(pub Vec<u32>);

impl CanonicalCode {
    /// Reconstructs the distinguished representative this code describes.
    pub fn decode(&self) -> Result<PantsGraph, CodeError> {
        let data = &self.0;
        let need = |n: usize| -> Result<(), CodeError> {
            if data.len() < n {
                Err(CodeError::Truncated {
                    expected: n,
                    got: data.len(),
                })
            } else {
                Ok(())
            }
        };
        need(4)?;
        let (g, n) = (data[0], data[1]);
        let surface = SurfaceType::new(g, n)?;
        let m = data[2] as usize;
        let mut edges = Vec::new();
        let mut leg_counts = vec![0u32; m];
        let mut at = 4;
        for p in 0..m {
            need(at + 2 + p)?;
            leg_counts[p] = data[at];
            for _ in 0..data[at + 1] {
                edges.push((p, p));
            }
            for w in 0..p {
                for _ in 0..data[at + 2 + w] {
                    edges.push((w, p));
                }
            }
            at += 2 + p;
        }
        need(at + n as usize)?;
        let mut legs = Vec::with_capacity(n as usize);
        let mut seen_counts = vec![0u32; m];
        for i in 0..n as usize {
            let pos = data[at + i] as usize;
            if pos >= m {
                return Err(CodeError::LegMismatch);
            }
            seen_counts[pos] += 1;
            legs.push(pos);
        }
        if seen_counts != leg_counts {
            return Err(CodeError::LegMismatch);
        }
        Ok(PantsGraph::new(surface, legs, edges)?)
    }
}

impl std::fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join("."))
    }
}

/// Computes the canonical code of `graph` by branch-and-bound over pants
/// renumberings with lexicographic prefix pruning.
pub(super) fn canonicalize(graph: &PantsGraph) -> CanonicalCode {
    let m = graph.pants_count();
    let n = graph.surface().boundary_count() as usize;

    let mut leg_count = vec![0u32; m];
    let mut legs_at: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (i, &v) in graph.legs().iter().enumerate() {
        leg_count[v] += 1;
        legs_at[v].push(i);
    }
    let mut loops = vec![0u32; m];
    let mut mult = vec![vec![0u32; m]; m];
    for &(a, b) in graph.edges() {
        if a == b {
            loops[a] += 1;
        } else {
            mult[a][b] += 1;
            mult[b][a] += 1;
        }
    }

    let header = [
        graph.surface().genus(),
        n as u32,
        m as u32,
        graph.edges().len() as u32,
    ];

    let finish = |assign: &[usize], rows: &[u32]| -> Vec<u32> {
        // assign[d] = vertex at position d; legs suffix needs vertex → position.
        let mut pos_of = vec![0usize; m];
        for (pos, &v) in assign.iter().enumerate() {
            pos_of[v] = pos;
        }
        let mut code = Vec::with_capacity(4 + rows.len() + n);
        code.extend_from_slice(&header);
        code.extend_from_slice(rows);
        code.extend(graph.legs().iter().map(|&v| pos_of[v] as u32));
        code
    };

    let mut best: Option<Vec<u32>> = None;
    let mut assign: Vec<usize> = Vec::with_capacity(m);
    let mut used = vec![false; m];
    let mut rows: Vec<u32> = Vec::new();

    // Depth-first: place each unused vertex at the next position, carrying
    // the row sequence; prune whenever the partial row sequence already
    // exceeds the best code at the same offset (codes all share the fixed
    // header and positional layout, so offsets align).
    fn dfs(
        depth: usize,
        m: usize,
        leg_count: &[u32],
        loops: &[u32],
        mult: &[Vec<u32>],
        assign: &mut Vec<usize>,
        used: &mut [bool],
        rows: &mut Vec<u32>,
        best: &mut Option<Vec<u32>>,
        finish: &dyn Fn(&[usize], &[u32]) -> Vec<u32>,
    ) {
        if depth == m {
            let code = finish(assign, rows);
            if best.as_ref().is_none_or(|b| code < *b) {
                *best = Some(code);
            }
            return;
        }
        for v in 0..m {
            if used[v] {
                continue;
            }
            let row_start = rows.len();
            rows.push(leg_count[v]);
            rows.push(loops[v]);
            for &w in assign.iter() {
                rows.push(mult[v][w]);
            }
            // Compare the whole row prefix, not just the newest row: an
            // earlier strictly-smaller row wins outright no matter what
            // follows, so only a strictly-greater full prefix may prune.
            let prune = best
                .as_ref()
                .is_some_and(|b| rows.as_slice() > &b[4..4 + rows.len()]);
            if !prune {
                used[v] = true;
                assign.push(v);
                dfs(
                    depth + 1,
                    m,
                    leg_count,
                    loops,
                    mult,
                    assign,
                    used,
                    rows,
                    best,
                    finish,
                );
                assign.pop();
                used[v] = false;
            }
            rows.truncate(row_start);
        }
    }

    dfs(
        0, m, &leg_count, &loops, &mult, &mut assign, &mut used, &mut rows, &mut best, &finish,
    );
    CanonicalCode(best.expect("at least one renumbering exists"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surface(g: u32, n: u32) -> SurfaceType {
        SurfaceType::new(g, n).unwrap()
    }

    #[test]
    fn four_holed_sphere_types_have_distinct_codes() {
        let codes: Vec<CanonicalCode> = [vec![0, 0, 1, 1], vec![0, 1, 0, 1], vec![0, 1, 1, 0]]
            .into_iter()
            .map(|legs| {
                PantsGraph::new(surface(0, 4), legs, vec![(0, 1)])
                    .unwrap()
                    .canonical_code()
            })
            .collect();
        assert_ne!(codes[0], codes[1]);
        assert_ne!(codes[0], codes[2]);
        assert_ne!(codes[1], codes[2]);
    }

    #[test]
    fn codes_are_invariant_under_renumbering() {
        let g = PantsGraph::new(
            surface(2, 3),
            vec![3, 4, 4],
            vec![(0, 0), (0, 1), (1, 2), (2, 2), (1, 3), (3, 4)],
        )
        .unwrap();
        let code = g.canonical_code();
        for perm in [vec![4, 3, 2, 1, 0], vec![1, 2, 3, 4, 0], vec![2, 0, 4, 1, 3]] {
            assert_eq!(g.relabeled(&perm).unwrap().canonical_code(), code);
        }
    }

    #[test]
    fn swapping_legs_changes_the_type_when_it_should() {
        // Legs {1,2}|{3,4} versus {1,3}|{2,4}: genuinely different types.
        let a = PantsGraph::new(surface(0, 4), vec![0, 0, 1, 1], vec![(0, 1)]).unwrap();
        let b = PantsGraph::new(surface(0, 4), vec![0, 1, 0, 1], vec![(0, 1)]).unwrap();
        assert_ne!(a.canonical_code(), b.canonical_code());
        // ...while renumbering pants within one of them does nothing.
        assert_eq!(
            b.relabeled(&[1, 0]).unwrap().canonical_code(),
            b.canonical_code()
        );
    }

    #[test]
    fn decode_returns_a_fixed_point() {
        let graphs = [
            PantsGraph::new(surface(2, 0), vec![], vec![(0, 1), (0, 1), (0, 1)]).unwrap(),
            PantsGraph::new(surface(2, 0), vec![], vec![(0, 0), (1, 1), (0, 1)]).unwrap(),
            PantsGraph::new(surface(1, 2), vec![1, 1], vec![(0, 0), (0, 1)]).unwrap(),
            PantsGraph::new(surface(0, 5), vec![0, 0, 1, 2, 2], vec![(0, 1), (1, 2)]).unwrap(),
        ];
        for g in graphs {
            let code = g.canonical_code();
            let rep = code.decode().unwrap();
            assert_eq!(rep.canonical_code(), code);
            assert_eq!(rep.surface(), g.surface());
        }
    }

    #[test]
    fn decode_rejects_corrupted_codes() {
        let g = PantsGraph::new(surface(1, 2), vec![1, 1], vec![(0, 0), (0, 1)]).unwrap();
        let mut data = g.canonical_code().0;
        let legs_suffix = data.len() - 2;
        data[legs_suffix] = 9;
        assert!(matches!(
            CanonicalCode(data).decode(),
            Err(CodeError::LegMismatch)
        ));
        assert!(matches!(
            CanonicalCode(vec![0, 4]).decode(),
            Err(CodeError::Truncated { .. })
        ));
        assert!(matches!(
            CanonicalCode(vec![0, 2, 0, 0]).decode(),
            Err(CodeError::BadSurface(_))
        ));
    }
}
