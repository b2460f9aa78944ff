//! Pants graphs: the combinatorial type of a pants decomposition.
//!
//! Cutting a surface of type `(g, n)` along a pants decomposition leaves
//! `2g − 2 + n` pairs of pants; regluing records a trivalent multigraph
//! whose vertices are the pants, whose edges are the decomposition curves
//! (self-loops allowed — both sides of the curve on the same pair of
//! pants), and whose remaining valence is filled by the `n` labelled
//! boundary legs. Genus is not stored per-vertex: connectivity plus the
//! edge/vertex counts force the graph's first Betti number to equal `g`.
//!
//! An elementary move on a decomposition projects to this level as a
//! re-plumbing of one edge: the four strand-ends next to a non-loop edge
//! can be re-paired in two new ways ([`PantsGraph::apply_a_move`]), while a
//! move at a self-loop never changes the type.

mod canonical;
mod enumerate;
mod movegraph;

pub use canonical::CanonicalCode;
pub use enumerate::{enumerate_types, EnumerateError};
pub use movegraph::{build_move_graph, MoveSiteRecord, TypeMoveGraph};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::surface::SurfaceType;
use crate::MoveKind;

/// Errors from building or transforming pants graphs. Each names the
/// violated structural invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PantsGraphError {
    #[error("surface {surface} needs {expected} curves, got {got}")]
    WrongCurveCount {
        surface: SurfaceType,
        expected: usize,
        got: usize,
    },
    #[error("surface {surface} needs {expected} boundary legs, got {got}")]
    WrongLegCount {
        surface: SurfaceType,
        expected: usize,
        got: usize,
    },
    #[error("pants index {index} out of range (surface {surface} has {count} pants)")]
    PantsOutOfRange {
        surface: SurfaceType,
        index: usize,
        count: usize,
    },
    #[error("pants {index} has {valence} boundary circles; every pair of pants has exactly 3")]
    WrongValence { index: usize, valence: usize },
    #[error("pants graph must be connected")]
    Disconnected,
    #[error("curve index {index} out of range ({count} curves)")]
    CurveOutOfRange { index: usize, count: usize },
    #[error("curve {index} bounds a one-holed torus; it admits an S-move, not an A-move")]
    AMoveOnLoop { index: usize },
    #[error("curve {index} bounds a four-holed sphere; it admits A-moves, not an S-move")]
    SMoveOnNonLoop { index: usize },
    #[error("A-move branch must be 0 or 1, got {got}")]
    BranchOutOfRange { got: u8 },
    #[error("relabeling must be a permutation of 0..{count}")]
    BadPermutation { count: usize },
}

/// One of the three strand-ends at a pair of pants, other than the ones an
/// operation is currently holding fixed. Ordering is the canonical port
/// order at a vertex: legs by label, then edge-halves by (curve, side).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Port {
    /// Boundary leg with its 1-based label.
    Leg(usize),
    /// Side `side` (0 = lower endpoint slot, 1 = upper) of curve `edge`.
    Half { edge: usize, side: u8 },
}

/// A move site on a pants graph: which curve moves, and along which branch
/// for the two-branch four-holed-sphere moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MoveSite {
    pub edge: usize,
    pub kind: MoveKind,
    /// `Some(0)` or `Some(1)` for A-moves; `None` for S-moves.
    pub branch: Option<u8>,
}

/// Serialization shape of [`PantsGraph`]; conversion into the real type
/// re-runs full validation.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawPantsGraph {
    surface: SurfaceType,
    legs: Vec<usize>,
    edges: Vec<(usize, usize)>,
}

/// A validated pants graph: connected, trivalent (legs and loop-halves
/// included), with the curve/leg counts forced by its surface type.
///
/// Curves are indexed by position in the edge list and the indices are
/// *stable across moves*: applying a move never reorders or renumbers the
/// edge list, it only changes endpoints.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPantsGraph", into = "RawPantsGraph")]
pub struct PantsGraph {
    surface: SurfaceType,
    /// `legs[i]` is the pants carrying boundary leg `i + 1`.
    legs: Vec<usize>,
    /// Curve endpoints, each normalized to `lo ≤ hi`; `lo == hi` is a curve
    /// with a one-holed-torus complement.
    edges: Vec<(usize, usize)>,
}

impl PantsGraph {
    /// Builds and validates a pants graph. Edge endpoint order is
    /// normalized; everything else must already satisfy the invariants.
    pub fn new(
        surface: SurfaceType,
        legs: Vec<usize>,
        edges: Vec<(usize, usize)>,
    ) -> Result<Self, PantsGraphError> {
        let m = surface.pants_count();
        if edges.len() != surface.curve_count() {
            return Err(PantsGraphError::WrongCurveCount {
                surface,
                expected: surface.curve_count(),
                got: edges.len(),
            });
        }
        if legs.len() != surface.boundary_count() as usize {
            return Err(PantsGraphError::WrongLegCount {
                surface,
                expected: surface.boundary_count() as usize,
                got: legs.len(),
            });
        }
        let edges: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
            .collect();
        for &v in legs.iter().chain(edges.iter().flat_map(|(a, b)| [a, b])) {
            if v >= m {
                return Err(PantsGraphError::PantsOutOfRange {
                    surface,
                    index: v,
                    count: m,
                });
            }
        }

        let mut valence = vec![0usize; m];
        for &v in &legs {
            valence[v] += 1;
        }
        for &(a, b) in &edges {
            valence[a] += 1;
            valence[b] += 1;
        }
        for (index, &val) in valence.iter().enumerate() {
            if val != 3 {
                return Err(PantsGraphError::WrongValence {
                    index,
                    valence: val,
                });
            }
        }

        // Depth-first reachability from pants 0; with the counts above this
        // also pins the graph's first Betti number to g.
        let mut seen = vec![false; m];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &edges {
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(PantsGraphError::Disconnected);
        }

        Ok(PantsGraph {
            surface,
            legs,
            edges,
        })
    }

    pub fn surface(&self) -> SurfaceType {
        self.surface
    }

    /// Number of pants (vertices).
    pub fn pants_count(&self) -> usize {
        self.surface.pants_count()
    }

    /// `legs()[i]` is the pants carrying boundary leg `i + 1`.
    pub fn legs(&self) -> &[usize] {
        &self.legs
    }

    /// Curve endpoints, normalized `lo ≤ hi`. The index in this slice is
    /// the curve id used by moves.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Whether curve `e` has both sides on the same pants.
    pub fn is_loop(&self, e: usize) -> bool {
        self.edges[e].0 == self.edges[e].1
    }

    /// The surface obtained by gluing the pants adjacent to curve `e`: a
    /// one-holed torus for loops, a four-holed sphere otherwise. This is
    /// the surface the curve moves inside.
    pub fn complement_type(&self, e: usize) -> Result<SurfaceType, PantsGraphError> {
        if e >= self.edges.len() {
            return Err(PantsGraphError::CurveOutOfRange {
                index: e,
                count: self.edges.len(),
            });
        }
        let surface = if self.is_loop(e) {
            SurfaceType::new(1, 1)
        } else {
            SurfaceType::new(0, 4)
        };
        Ok(surface.expect("complements of decomposition curves are decomposable"))
    }

    /// The three ports of pants `v` in canonical order.
    fn ports(&self, v: usize) -> Vec<Port> {
        let mut ports = Vec::with_capacity(3);
        for (i, &w) in self.legs.iter().enumerate() {
            if w == v {
                ports.push(Port::Leg(i + 1));
            }
        }
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if a == v {
                ports.push(Port::Half { edge: e, side: 0 });
            }
            if b == v {
                ports.push(Port::Half { edge: e, side: 1 });
            }
        }
        debug_assert_eq!(ports.len(), 3);
        ports.sort();
        ports
    }

    /// Applies a four-holed-sphere move at the non-loop curve `e`.
    ///
    /// Gluing the two pants along `e` leaves a four-holed sphere whose
    /// boundary circles are the four ports other than `e` itself: `a0, a1`
    /// at the lower pants and `b0, b1` at the upper one (canonical port
    /// order). The new curve re-pairs them:
    ///
    /// * branch 0: `{a0, b0} | {a1, b1}`
    /// * branch 1: `{a0, b1} | {a1, b0}`
    ///
    /// with the `a0` pair staying on the lower pants. Curve indices are
    /// preserved; only endpoints change. The two branches may produce
    /// graphs equal to each other or to the original — those are genuine
    /// move outcomes, not errors.
    pub fn apply_a_move(&self, e: usize, branch: u8) -> Result<PantsGraph, PantsGraphError> {
        if e >= self.edges.len() {
            return Err(PantsGraphError::CurveOutOfRange {
                index: e,
                count: self.edges.len(),
            });
        }
        if branch > 1 {
            return Err(PantsGraphError::BranchOutOfRange { got: branch });
        }
        let (p, q) = self.edges[e];
        if p == q {
            return Err(PantsGraphError::AMoveOnLoop { index: e });
        }

        let others = |v: usize, skip_side: u8| -> Vec<Port> {
            self.ports(v)
                .into_iter()
                .filter(|port| {
                    !matches!(port, Port::Half { edge, side } if *edge == e && *side == skip_side)
                })
                .collect()
        };
        let a = others(p, 0);
        let b = others(q, 1);
        debug_assert_eq!((a.len(), b.len()), (2, 2));

        // (port, new pants) assignments for the four free strand-ends.
        let assignments = match branch {
            0 => [(a[0], p), (b[0], p), (a[1], q), (b[1], q)],
            _ => [(a[0], p), (b[1], p), (a[1], q), (b[0], q)],
        };

        let mut legs = self.legs.clone();
        let mut edges = self.edges.clone();
        for (port, target) in assignments {
            match port {
                Port::Leg(label) => legs[label - 1] = target,
                Port::Half { edge, side: 0 } => edges[edge].0 = target,
                Port::Half { edge, .. } => edges[edge].1 = target,
            }
        }
        PantsGraph::new(self.surface, legs, edges)
    }

    /// All move sites: one S-site per loop curve, two A-branches per
    /// non-loop curve.
    pub fn legal_moves(&self) -> Vec<MoveSite> {
        let mut sites = Vec::new();
        for e in 0..self.edges.len() {
            if self.is_loop(e) {
                sites.push(MoveSite {
                    edge: e,
                    kind: MoveKind::S,
                    branch: None,
                });
            } else {
                for branch in 0..2 {
                    sites.push(MoveSite {
                        edge: e,
                        kind: MoveKind::A,
                        branch: Some(branch),
                    });
                }
            }
        }
        sites
    }

    /// Applies a move site. One-holed-torus moves replace the curve inside
    /// its complement but always leave the graph type unchanged, so an
    /// S-site returns a clone.
    pub fn apply(&self, site: MoveSite) -> Result<PantsGraph, PantsGraphError> {
        match site.kind {
            MoveKind::S => {
                if site.edge >= self.edges.len() {
                    return Err(PantsGraphError::CurveOutOfRange {
                        index: site.edge,
                        count: self.edges.len(),
                    });
                }
                if !self.is_loop(site.edge) {
                    return Err(PantsGraphError::SMoveOnNonLoop { index: site.edge });
                }
                Ok(self.clone())
            }
            MoveKind::A => {
                let branch = site.branch.ok_or(PantsGraphError::BranchOutOfRange {
                    got: u8::MAX,
                })?;
                self.apply_a_move(site.edge, branch)
            }
        }
    }

    /// The same graph with pants renumbered by `perm` (pants `v` becomes
    /// `perm[v]`). Boundary leg labels are part of the surface and never
    /// permute.
    pub fn relabeled(&self, perm: &[usize]) -> Result<PantsGraph, PantsGraphError> {
        let m = self.pants_count();
        let mut seen = vec![false; m];
        if perm.len() != m || perm.iter().any(|&v| v >= m || std::mem::replace(&mut seen[v], true))
        {
            return Err(PantsGraphError::BadPermutation { count: m });
        }
        let legs = self.legs.iter().map(|&v| perm[v]).collect();
        let edges = self
            .edges
            .iter()
            .map(|&(a, b)| (perm[a], perm[b]))
            .collect();
        PantsGraph::new(self.surface, legs, edges)
    }

    /// Canonical form of this graph's type: the lexicographically least
    /// code over all renumberings of the pants.
    pub fn canonical_code(&self) -> CanonicalCode {
        canonical::canonicalize(self)
    }
}

impl TryFrom<RawPantsGraph> for PantsGraph {
    type Error = PantsGraphError;

    fn try_from(raw: RawPantsGraph) -> Result<Self, Self::Error> {
        PantsGraph::new(raw.surface, raw.legs, raw.edges)
    }
}

impl From<PantsGraph> for RawPantsGraph {
    fn from(g: PantsGraph) -> Self {
        RawPantsGraph {
            surface: g.surface,
            legs: g.legs,
            edges: g.edges,
        }
    }
}

impl std::fmt::Display for PantsGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} pants graph: edges {:?}, legs {:?}",
            self.surface, self.edges, self.legs
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surface(g: u32, n: u32) -> SurfaceType {
        SurfaceType::new(g, n).unwrap()
    }

    fn four_holed(legs: Vec<usize>) -> PantsGraph {
        PantsGraph::new(surface(0, 4), legs, vec![(0, 1)]).unwrap()
    }

    #[test]
    fn builds_the_three_four_holed_sphere_types() {
        for legs in [vec![0, 0, 1, 1], vec![0, 1, 0, 1], vec![0, 1, 1, 0]] {
            four_holed(legs);
        }
    }

    #[test]
    fn rejects_wrong_valence() {
        let err = PantsGraph::new(surface(0, 4), vec![0, 0, 0, 1], vec![(0, 1)]).unwrap_err();
        assert_eq!(
            err,
            PantsGraphError::WrongValence {
                index: 0,
                valence: 4
            }
        );
    }

    #[test]
    fn rejects_wrong_counts_and_ranges() {
        assert!(matches!(
            PantsGraph::new(surface(0, 4), vec![0, 0, 1, 1], vec![]),
            Err(PantsGraphError::WrongCurveCount { .. })
        ));
        assert!(matches!(
            PantsGraph::new(surface(0, 4), vec![0, 0, 1], vec![(0, 1)]),
            Err(PantsGraphError::WrongLegCount { .. })
        ));
        assert!(matches!(
            PantsGraph::new(surface(0, 4), vec![0, 0, 1, 2], vec![(0, 1)]),
            Err(PantsGraphError::PantsOutOfRange { index: 2, .. })
        ));
    }

    #[test]
    fn rejects_disconnected_graphs() {
        // Two one-holed tori joined by nothing: counts match (1,2) but the
        // graph falls apart (and would have the wrong Betti number).
        let err =
            PantsGraph::new(surface(1, 2), vec![0, 1], vec![(0, 0), (1, 1)]).unwrap_err();
        assert_eq!(err, PantsGraphError::Disconnected);
    }

    #[test]
    fn loop_and_complement_detection() {
        let g = PantsGraph::new(surface(1, 2), vec![1, 1], vec![(0, 0), (0, 1)]).unwrap();
        assert!(g.is_loop(0));
        assert!(!g.is_loop(1));
        assert_eq!(g.complement_type(0).unwrap(), surface(1, 1));
        assert_eq!(g.complement_type(1).unwrap(), surface(0, 4));
        assert!(matches!(
            g.complement_type(7),
            Err(PantsGraphError::CurveOutOfRange { index: 7, .. })
        ));
    }

    #[test]
    fn a_move_re_pairs_the_four_holed_sphere_legs() {
        let start = four_holed(vec![0, 0, 1, 1]);
        let b0 = start.apply_a_move(0, 0).unwrap();
        let b1 = start.apply_a_move(0, 1).unwrap();
        assert_eq!(b0.legs(), &[0, 1, 0, 1]);
        assert_eq!(b1.legs(), &[0, 1, 1, 0]);
        assert_eq!(b0.edges(), &[(0, 1)]);
    }

    #[test]
    fn a_move_can_open_a_handle_loop() {
        // One-holed torus plus a two-legged pants: moving the joining curve
        // turns the handle loop into a pair of parallel curves.
        let g = PantsGraph::new(surface(1, 2), vec![1, 1], vec![(0, 0), (0, 1)]).unwrap();
        let moved = g.apply_a_move(1, 0).unwrap();
        assert_eq!(moved.edges(), &[(0, 1), (0, 1)]);
        assert_eq!(
            moved.canonical_code(),
            PantsGraph::new(surface(1, 2), vec![0, 1], vec![(0, 1), (0, 1)])
                .unwrap()
                .canonical_code()
        );
        // The opposite branch lands on the same type with legs swapped.
        let other = g.apply_a_move(1, 1).unwrap();
        assert_eq!(other.canonical_code(), moved.canonical_code());
    }

    #[test]
    fn move_errors() {
        let g = PantsGraph::new(surface(1, 2), vec![1, 1], vec![(0, 0), (0, 1)]).unwrap();
        assert_eq!(
            g.apply_a_move(0, 0).unwrap_err(),
            PantsGraphError::AMoveOnLoop { index: 0 }
        );
        assert_eq!(
            g.apply_a_move(1, 2).unwrap_err(),
            PantsGraphError::BranchOutOfRange { got: 2 }
        );
        assert_eq!(
            g.apply(MoveSite {
                edge: 1,
                kind: MoveKind::S,
                branch: None
            })
            .unwrap_err(),
            PantsGraphError::SMoveOnNonLoop { index: 1 }
        );
    }

    #[test]
    fn legal_moves_lists_loops_and_branches() {
        let g = PantsGraph::new(surface(1, 2), vec![1, 1], vec![(0, 0), (0, 1)]).unwrap();
        let sites = g.legal_moves();
        assert_eq!(sites.len(), 3);
        assert_eq!(sites[0].kind, MoveKind::S);
        assert_eq!(sites[1], MoveSite { edge: 1, kind: MoveKind::A, branch: Some(0) });
        assert!(g.apply(sites[0]).unwrap() == g);
    }

    #[test]
    fn relabeling_is_validated() {
        let g = four_holed(vec![0, 0, 1, 1]);
        let swapped = g.relabeled(&[1, 0]).unwrap();
        assert_eq!(swapped.legs(), &[1, 1, 0, 0]);
        assert_eq!(swapped.edges(), &[(0, 1)]);
        assert!(matches!(
            g.relabeled(&[0, 0]),
            Err(PantsGraphError::BadPermutation { .. })
        ));
    }

    #[test]
    fn serde_round_trip_revalidates() {
        let g = PantsGraph::new(surface(2, 0), vec![], vec![(0, 1), (0, 1), (0, 1)]).unwrap();
        let json = serde_json::to_string(&g).unwrap();
        let back: PantsGraph = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
        let bad = r#"{"surface":{"g":2,"n":0},"legs":[],"edges":[[0,0],[1,1],[0,1]]}"#;
        // Dumbbell is fine; a disconnected variant is not.
        assert!(serde_json::from_str::<PantsGraph>(bad).is_ok());
        let worse = r#"{"surface":{"g":2,"n":0},"legs":[],"edges":[[0,0],[0,0],[1,1]]}"#;
        assert!(serde_json::from_str::<PantsGraph>(worse).is_err());
    }
}
