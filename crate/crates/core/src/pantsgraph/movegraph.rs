//! The move graph on pants graph types: one vertex per type, one edge per
//! pair of types connected by a single re-plumbing move.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use super::enumerate::{enumerate_types, EnumerateError};
use super::{CanonicalCode, MoveSite, PantsGraph};
use crate::surface::SurfaceType;

/// A concrete move realizing a type-graph edge: apply `site` to type `from`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveSiteRecord {
    pub from: usize,
    pub site: MoveSite,
}

/// An undirected edge between two distinct types, with every move site
/// realizing it (from either side).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeEdge {
    pub a: usize,
    pub b: usize,
    pub sites: Vec<MoveSiteRecord>,
}

/// The finite move graph of a surface's pants graph types.
///
/// Vertices are canonical type representatives in code order, so the graph
/// is reproducible. Moves whose outcome has the source's own type (every
/// one-holed-torus move, and some re-plumbings) are kept out of the edge
/// list and recorded separately in `self_sites`; edges connect distinct
/// types only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeMoveGraph {
    pub surface: SurfaceType,
    pub codes: Vec<CanonicalCode>,
    pub types: Vec<PantsGraph>,
    pub edges: Vec<TypeEdge>,
    pub self_sites: Vec<MoveSiteRecord>,
}

/// Builds the move graph by enumerating types and applying every legal
/// move of every type.
pub fn build_move_graph(surface: SurfaceType) -> Result<TypeMoveGraph, EnumerateError> {
    let types = enumerate_types(surface)?;
    let codes: Vec<CanonicalCode> = types.iter().map(|t| t.canonical_code()).collect();
    let index: BTreeMap<&CanonicalCode, usize> =
        codes.iter().enumerate().map(|(i, c)| (c, i)).collect();

    let mut edge_sites: BTreeMap<(usize, usize), Vec<MoveSiteRecord>> = BTreeMap::new();
    let mut self_sites = Vec::new();
    for (i, graph) in types.iter().enumerate() {
        for site in graph.legal_moves() {
            let outcome = graph
                .apply(site)
                .expect("legal_moves only lists applicable sites");
            let j = index[&outcome.canonical_code()];
            let record = MoveSiteRecord { from: i, site };
            if i == j {
                self_sites.push(record);
            } else {
                edge_sites
                    .entry((i.min(j), i.max(j)))
                    .or_default()
                    .push(record);
            }
        }
    }

    let edges = edge_sites
        .into_iter()
        .map(|((a, b), sites)| TypeEdge { a, b, sites })
        .collect();
    Ok(TypeMoveGraph {
        surface,
        codes,
        types,
        edges,
        self_sites,
    })
}

impl TypeMoveGraph {
    pub fn vertex_count(&self) -> usize {
        self.types.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        let key = (i.min(j), i.max(j));
        self.edges.iter().any(|e| (e.a, e.b) == key)
    }

    /// Neighbouring type indices of `i`, ascending.
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|e| match (e.a == i, e.b == i) {
                (true, _) => Some(e.b),
                (_, true) => Some(e.a),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors(i).len()
    }

    /// Whether every type is reachable from every other by moves.
    pub fn is_connected(&self) -> bool {
        let v = self.vertex_count();
        if v == 0 {
            return true;
        }
        let mut seen = vec![false; v];
        let mut queue = std::collections::VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(i) = queue.pop_front() {
            for j in self.neighbors(i) {
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// A basis of loops for the graph's cycle space, all based at type 0:
    /// one loop per non-tree edge of a breadth-first spanning tree, of the
    /// form root → u → v → root along tree paths. For a connected graph
    /// there are `E − V + 1` of them and every loop is a product of basis
    /// loops up to backtracking.
    pub fn cycle_basis(&self) -> Vec<Vec<usize>> {
        let v = self.vertex_count();
        if v == 0 {
            return Vec::new();
        }
        let mut parent: Vec<Option<usize>> = vec![None; v];
        let mut seen = vec![false; v];
        let mut queue = std::collections::VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(i) = queue.pop_front() {
            for j in self.neighbors(i) {
                if !seen[j] {
                    seen[j] = true;
                    parent[j] = Some(i);
                    queue.push_back(j);
                }
            }
        }
        let path_from_root = |mut u: usize| {
            let mut path = vec![u];
            while let Some(p) = parent[u] {
                path.push(p);
                u = p;
            }
            path.reverse();
            path
        };
        let mut basis = Vec::new();
        for e in &self.edges {
            if parent[e.a] == Some(e.b) || parent[e.b] == Some(e.a) {
                continue; // tree edge
            }
            let mut cycle = path_from_root(e.a);
            let mut back = path_from_root(e.b);
            back.reverse();
            cycle.extend(back);
            basis.push(cycle);
        }
        basis
    }
}
