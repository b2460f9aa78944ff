//! Relation cells: the closed move cycles that bound 2-cells of the pants
//! complex.
//!
//! Five families exist. Triangles of four-holed-sphere moves (`3A`) and of
//! one-holed-torus moves (`3S`) appear whenever one curve's complement is a
//! `(0,4)` or `(1,1)`; pentagons of four-holed-sphere moves (`5A`) appear in
//! `(0,5)` complements; mixed hexagons (`6AS`, four A-moves and two S-moves)
//! appear in `(1,2)` complements; and any two moves supported in disjoint
//! subsurfaces commute, giving squares (`C`). Filling all five families
//! makes the complex simply connected, which is what certificate replay
//! relies on.
//!
//! A [`RelationInstance`] is a concrete cell: its kind plus the boundary
//! cycle of vertices (with no closing duplicate). Validation recomputes the
//! defining condition inside the hosting structure, so a stored instance is
//! never trusted.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

use crate::farey::{FareySubcomplex, ModelKind, Slope};
use crate::pantsgraph::{MoveSite, PantsGraph, PantsGraphError, TypeMoveGraph};
use crate::surface::SurfaceType;
use crate::MoveKind;

/// The five relation families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RelationKind {
    #[serde(rename = "3A")]
    R3A,
    #[serde(rename = "5A")]
    R5A,
    #[serde(rename = "3S")]
    R3S,
    #[serde(rename = "6AS")]
    R6AS,
    #[serde(rename = "C")]
    RC,
}

impl RelationKind {
    /// Number of boundary edges (= boundary vertices) of a cell of this
    /// kind.
    pub fn boundary_len(&self) -> usize {
        match self {
            RelationKind::R3A | RelationKind::R3S => 3,
            RelationKind::R5A => 5,
            RelationKind::R6AS => 6,
            RelationKind::RC => 4,
        }
    }
}

impl std::fmt::Display for RelationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            RelationKind::R3A => "3A",
            RelationKind::R5A => "5A",
            RelationKind::R3S => "3S",
            RelationKind::R6AS => "6AS",
            RelationKind::RC => "C",
        };
        write!(f, "{name}")
    }
}

/// Errors from validating a relation cell in a host structure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CellError {
    #[error("a {kind} cell has {got} boundary vertices, expected {expected}")]
    WrongLength {
        kind: RelationKind,
        expected: usize,
        got: usize,
    },
    #[error("boundary vertices must be pairwise distinct ({vertex} repeats)")]
    RepeatedVertex { vertex: String },
    #[error("vertex {vertex} is not in the host")]
    MissingVertex { vertex: String },
    #[error("boundary entries {a} and {b} are not joined by a move")]
    MissingEdge { a: String, b: String },
    #[error("cell kind {kind} does not occur in this host: {reason}")]
    UnsupportedKind { kind: RelationKind, reason: String },
    #[error("{kind} cells carry {expected}-moves, but this slope model carries {got}-moves")]
    WrongMoveKind {
        kind: RelationKind,
        expected: MoveKind,
        got: MoveKind,
    },
    #[error("no corner of the triangle re-plumbs onto the other two corners")]
    NoTriangleCorner,
    #[error("pentagon boundary breaks the curve-sharing pattern: {reason}")]
    BadPentagon { reason: String },
    #[error("square is not a commuting pair of disjoint moves: {reason}")]
    BadSquare { reason: String },
    #[error("a {kind} cell lists {got} step moves, expected {expected}")]
    WrongSiteCount {
        kind: RelationKind,
        expected: usize,
        got: usize,
    },
    #[error("step moves do not realize a {kind} cell: {reason}")]
    SiteKindMismatch { kind: RelationKind, reason: String },
    #[error("move supports overlap: {reason}")]
    OverlappingSupports { reason: String },
    #[error("move cannot be applied: {reason}")]
    BadMove { reason: String },
}

/// A concrete relation cell: the kind, the boundary cycle (listed once
/// around with no repeated closing vertex), and optionally the move kind
/// performed along each boundary step. An empty `sites` list leaves the
/// per-step moves unspecified.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RelationInstance<V> {
    pub kind: RelationKind,
    pub boundary: Vec<V>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sites: Vec<MoveKind>,
}

impl<V> RelationInstance<V> {
    pub fn new(kind: RelationKind, boundary: Vec<V>) -> Self {
        RelationInstance {
            kind,
            boundary,
            sites: Vec::new(),
        }
    }

    pub fn with_sites(kind: RelationKind, boundary: Vec<V>, sites: Vec<MoveKind>) -> Self {
        RelationInstance {
            kind,
            boundary,
            sites,
        }
    }
}

fn check_shape<V: Ord + std::fmt::Display>(
    cell: &RelationInstance<V>,
) -> Result<(), CellError> {
    let expected = cell.kind.boundary_len();
    if cell.boundary.len() != expected {
        return Err(CellError::WrongLength {
            kind: cell.kind,
            expected,
            got: cell.boundary.len(),
        });
    }
    let mut seen = BTreeSet::new();
    for v in &cell.boundary {
        if !seen.insert(v) {
            return Err(CellError::RepeatedVertex {
                vertex: v.to_string(),
            });
        }
    }
    check_sites(cell.kind, &cell.sites)
}

/// Checks that the listed per-step move kinds can realize the cell kind:
/// triangles use three moves of the matching kind, pentagons five A-moves,
/// hexagons four A-moves and two S-moves, and squares alternate two moves so
/// opposite steps repeat the same kind. An empty list is always accepted.
fn check_sites(kind: RelationKind, sites: &[MoveKind]) -> Result<(), CellError> {
    if sites.is_empty() {
        return Ok(());
    }
    let expected = kind.boundary_len();
    if sites.len() != expected {
        return Err(CellError::WrongSiteCount {
            kind,
            expected,
            got: sites.len(),
        });
    }
    let a_count = sites.iter().filter(|k| **k == MoveKind::A).count();
    let s_count = sites.len() - a_count;
    let counts_ok = match kind {
        RelationKind::R3A => (a_count, s_count) == (3, 0),
        RelationKind::R3S => (a_count, s_count) == (0, 3),
        RelationKind::R5A => (a_count, s_count) == (5, 0),
        RelationKind::R6AS => (a_count, s_count) == (4, 2),
        RelationKind::RC => sites[0] == sites[2] && sites[1] == sites[3],
    };
    if !counts_ok {
        let reason = match kind {
            RelationKind::RC => "opposite sides of the square must repeat the same move kind"
                .to_string(),
            _ => format!("found {a_count} A-moves and {s_count} S-moves"),
        };
        return Err(CellError::SiteKindMismatch { kind, reason });
    }
    Ok(())
}

/// Validates a cell in a slope model. Slope models carry one move kind and
/// their only cells are the corresponding triangles: three pairwise
/// adjacent slopes.
pub fn validate_slope_cell(
    model: ModelKind,
    cell: &RelationInstance<Slope>,
) -> Result<(), CellError> {
    match (cell.kind, model.move_kind()) {
        (RelationKind::R3A, MoveKind::A) | (RelationKind::R3S, MoveKind::S) => {}
        (RelationKind::R3A, got) => {
            return Err(CellError::WrongMoveKind {
                kind: cell.kind,
                expected: MoveKind::A,
                got,
            })
        }
        (RelationKind::R3S, got) => {
            return Err(CellError::WrongMoveKind {
                kind: cell.kind,
                expected: MoveKind::S,
                got,
            })
        }
        (kind, _) => {
            return Err(CellError::UnsupportedKind {
                kind,
                reason: "slope models have one curve per decomposition, so only move \
                         triangles bound cells"
                    .into(),
            })
        }
    }
    check_shape(cell)?;
    for i in 0..3 {
        for j in (i + 1)..3 {
            let (a, b) = (&cell.boundary[i], &cell.boundary[j]);
            if !a.is_adjacent(b) {
                return Err(CellError::MissingEdge {
                    a: a.to_string(),
                    b: b.to_string(),
                });
            }
        }
    }
    Ok(())
}

/// The two leg pairs cut off by the curves of a five-holed-sphere type.
///
/// A `(0,5)` pants graph is always a three-pants path whose end pants each
/// carry two legs; the type is exactly that unordered pair of disjoint leg
/// pairs.
fn cherry_pairs(graph: &PantsGraph) -> Option<[(usize, usize); 2]> {
    if graph.surface() != SurfaceType::new(0, 5).ok()? {
        return None;
    }
    let mut pairs = Vec::new();
    for v in 0..graph.pants_count() {
        let legs: Vec<usize> = graph
            .legs()
            .iter()
            .enumerate()
            .filter(|&(_, &w)| w == v)
            .map(|(i, _)| i + 1)
            .collect();
        if legs.len() == 2 {
            pairs.push((legs[0], legs[1]));
        }
    }
    match pairs.len() {
        2 => {
            pairs.sort();
            Some([pairs[0], pairs[1]])
        }
        _ => None,
    }
}

fn type_label(mg: &TypeMoveGraph, i: usize) -> String {
    match mg.types.get(i) {
        Some(t) => format!("{i} ({t})"),
        None => i.to_string(),
    }
}

/// Validates a cell in a type move graph by recomputation.
pub fn validate_type_cell(
    mg: &TypeMoveGraph,
    cell: &RelationInstance<usize>,
) -> Result<(), CellError> {
    check_shape(cell)?;
    for &v in &cell.boundary {
        if v >= mg.vertex_count() {
            return Err(CellError::MissingVertex {
                vertex: v.to_string(),
            });
        }
    }
    let len = cell.boundary.len();
    let edge_ok = |i: usize, j: usize| -> Result<(), CellError> {
        let (a, b) = (cell.boundary[i], cell.boundary[j]);
        if mg.has_edge(a, b) {
            Ok(())
        } else {
            Err(CellError::MissingEdge {
                a: type_label(mg, a),
                b: type_label(mg, b),
            })
        }
    };
    for i in 0..len {
        edge_ok(i, (i + 1) % len)?;
    }

    match cell.kind {
        RelationKind::R3A => {
            // Some corner must re-plumb one of its curves onto exactly the
            // other two corners.
            edge_ok(0, 2)?; // triangles are complete, not just cyclic
            for corner in 0..3 {
                let graph = &mg.types[cell.boundary[corner]];
                let others: BTreeSet<usize> = (0..3)
                    .filter(|&i| i != corner)
                    .map(|i| cell.boundary[i])
                    .collect();
                for (e, _) in graph.edges().iter().enumerate() {
                    if graph.is_loop(e) {
                        continue;
                    }
                    let outcomes: BTreeSet<usize> = (0..2)
                        .map(|branch| {
                            let moved = graph
                                .apply_a_move(e, branch)
                                .expect("non-loop curves admit both branches");
                            mg.codes
                                .binary_search(&moved.canonical_code())
                                .expect("moves stay within the enumerated types")
                        })
                        .collect();
                    if outcomes == others {
                        return Ok(());
                    }
                }
            }
            Err(CellError::NoTriangleCorner)
        }
        RelationKind::R5A => {
            let five = SurfaceType::new(0, 5).expect("five-holed sphere");
            if mg.surface != five {
                return Err(CellError::UnsupportedKind {
                    kind: cell.kind,
                    reason: format!(
                        "pentagon cells live in five-holed-sphere complements; this move \
                         graph is for {} and does not classify them",
                        mg.surface
                    ),
                });
            }
            let pairs: Vec<[(usize, usize); 2]> = cell
                .boundary
                .iter()
                .map(|&i| cherry_pairs(&mg.types[i]).expect("(0,5) types have two leg pairs"))
                .collect();
            let mut shared = Vec::with_capacity(5);
            for i in 0..5 {
                let a: BTreeSet<(usize, usize)> = pairs[i].into_iter().collect();
                let b: BTreeSet<(usize, usize)> = pairs[(i + 1) % 5].into_iter().collect();
                let common: Vec<(usize, usize)> = a.intersection(&b).cloned().collect();
                if common.len() != 1 {
                    return Err(CellError::BadPentagon {
                        reason: format!(
                            "consecutive types {} and {} share {} leg pairs, expected 1",
                            type_label(mg, cell.boundary[i]),
                            type_label(mg, cell.boundary[(i + 1) % 5]),
                            common.len()
                        ),
                    });
                }
                shared.push(common[0]);
            }
            let distinct: BTreeSet<(usize, usize)> = shared.iter().cloned().collect();
            if distinct.len() != 5 {
                return Err(CellError::BadPentagon {
                    reason: format!(
                        "expected five distinct shared leg pairs around the cycle, got {}",
                        distinct.len()
                    ),
                });
            }
            Ok(())
        }
        RelationKind::RC => {
            // Realize the square: two moves with disjoint supports from
            // corner 0, composing to corner 2 in either order.
            let [t0, t1, t2, t3] = [
                cell.boundary[0],
                cell.boundary[1],
                cell.boundary[2],
                cell.boundary[3],
            ];
            let graph = &mg.types[t0];
            let code_index = |g: &PantsGraph| {
                mg.codes
                    .binary_search(&g.canonical_code())
                    .expect("moves stay within the enumerated types")
            };
            for (e1, e2) in disjoint_support_pairs(graph) {
                for b1 in 0..2u8 {
                    for b2 in 0..2u8 {
                        let m1 = graph.apply_a_move(e1, b1).expect("non-loop");
                        let m2 = graph.apply_a_move(e2, b2).expect("non-loop");
                        let (c1, c2) = (code_index(&m1), code_index(&m2));
                        // The boundary orientation is immaterial: either
                        // move may head for either neighbouring corner.
                        if !((c1 == t1 && c2 == t3) || (c1 == t3 && c2 == t1)) {
                            continue;
                        }
                        let m12 = m1.apply_a_move(e2, b2).expect("edge indices are stable");
                        let m21 = m2.apply_a_move(e1, b1).expect("edge indices are stable");
                        if code_index(&m12) == t2 && code_index(&m21) == t2 {
                            return Ok(());
                        }
                    }
                }
            }
            Err(CellError::BadSquare {
                reason: format!(
                    "no pair of disjointly supported moves on {} realizes corners {} and {} \
                     meeting at {}",
                    type_label(mg, t0),
                    type_label(mg, t1),
                    type_label(mg, t3),
                    type_label(mg, t2)
                ),
            })
        }
        RelationKind::R3S => Err(CellError::UnsupportedKind {
            kind: cell.kind,
            reason: "one-holed-torus moves never change the graph type, so their \
                     triangles are invisible in a type move graph"
                .into(),
        }),
        RelationKind::R6AS => Err(CellError::UnsupportedKind {
            kind: cell.kind,
            reason: "mixed hexagons distinguish curves inside a (1,2) complement, which \
                     the type level forgets; see the symbolic hexagon template"
                .into(),
        }),
    }
}

/// All triangle cells inside a finite window of a slope model, in order.
pub fn triangles_in_window(model: ModelKind, limit: u32) -> Vec<RelationInstance<Slope>> {
    let kind = match model.move_kind() {
        MoveKind::A => RelationKind::R3A,
        MoveKind::S => RelationKind::R3S,
    };
    find_slope_instances(&FareySubcomplex::window(model, limit), kind)
}

/// All instances of `kind` visible in a finite slope window, deterministically
/// ordered. Kinds that cannot occur in a slope model yield an empty list.
pub fn find_slope_instances(
    window: &FareySubcomplex,
    kind: RelationKind,
) -> Vec<RelationInstance<Slope>> {
    let native = match window.kind.move_kind() {
        MoveKind::A => RelationKind::R3A,
        MoveKind::S => RelationKind::R3S,
    };
    if kind != native {
        return Vec::new();
    }
    let sites = vec![window.kind.move_kind(); 3];
    window
        .triangles
        .iter()
        .map(|tri| RelationInstance::with_sites(kind, tri.to_vec(), sites.clone()))
        .collect()
}

/// All triangle cells of a type move graph: 3-cliques passing the corner
/// re-plumbing test.
pub fn type_triangles(mg: &TypeMoveGraph) -> Vec<RelationInstance<usize>> {
    let n = mg.vertex_count();
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if !mg.has_edge(i, j) {
                continue;
            }
            for k in (j + 1)..n {
                if !mg.has_edge(i, k) || !mg.has_edge(j, k) {
                    continue;
                }
                let cell = RelationInstance::with_sites(
                    RelationKind::R3A,
                    vec![i, j, k],
                    vec![MoveKind::A; 3],
                );
                if validate_type_cell(mg, &cell).is_ok() {
                    out.push(cell);
                }
            }
        }
    }
    out
}

/// All pentagon cells of the five-holed sphere's move graph, as boundary
/// cycles canonicalized over rotation and reflection, in order.
pub fn type_pentagons(mg: &TypeMoveGraph) -> Vec<RelationInstance<usize>> {
    let n = mg.vertex_count();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    // Walk simple 5-cycles anchored at their least vertex, one direction
    // per cycle.
    let mut stack = Vec::new();
    for start in 0..n {
        stack.push(vec![start]);
        while let Some(path) = stack.pop() {
            let last = *path.last().expect("paths are nonempty");
            if path.len() == 5 {
                if mg.has_edge(last, start) && path[1] < path[4] {
                    let cell = RelationInstance::new(RelationKind::R5A, path.clone());
                    if validate_type_cell(mg, &cell).is_ok() {
                        found.insert(path);
                    }
                }
                continue;
            }
            for next in mg.neighbors(last) {
                if next > start && !path.contains(&next) {
                    let mut longer = path.clone();
                    longer.push(next);
                    stack.push(longer);
                }
            }
        }
    }
    found
        .into_iter()
        .map(|boundary| {
            RelationInstance::with_sites(RelationKind::R5A, boundary, vec![MoveKind::A; 5])
        })
        .collect()
}

/// The standard pentagon of the five-holed sphere with boundary legs
/// labeled `1..=5`: writing `β_i` for the type whose cherry pairs are
/// `{i, i+1}` (indices mod 5), the cycle visits
///
/// ```text
/// {β1,β3} → {β1,β4} → {β2,β4} → {β2,β5} → {β3,β5} → (closes)
/// ```
///
/// and each step is a single four-holed-sphere move. `start_index` rotates
/// the cycle so that any corner can serve as the basepoint.
pub fn pentagon_instance_0_5(
    mg: &TypeMoveGraph,
    start_index: usize,
) -> Result<RelationInstance<usize>, CellError> {
    let five = SurfaceType::new(0, 5).expect("five-holed sphere");
    if mg.surface != five {
        return Err(CellError::UnsupportedKind {
            kind: RelationKind::R5A,
            reason: format!(
                "the standard pentagon lives in the five-holed sphere, not {}",
                mg.surface
            ),
        });
    }
    let beta = |i: usize| -> (usize, usize) {
        let a = i;
        let b = i % 5 + 1;
        (a.min(b), a.max(b))
    };
    let cycle: [(usize, usize); 5] = [(1, 3), (1, 4), (2, 4), (2, 5), (3, 5)];
    let boundary = (0..5)
        .map(|j| {
            let (bi, bj) = cycle[(j + start_index) % 5];
            let mut pairs = [beta(bi), beta(bj)];
            pairs.sort();
            (0..mg.vertex_count())
                .find(|&t| cherry_pairs(&mg.types[t]) == Some(pairs))
                .expect("every unordered pair of disjoint leg pairs is an enumerated type")
        })
        .collect();
    let cell = RelationInstance::with_sites(RelationKind::R5A, boundary, vec![MoveKind::A; 5]);
    validate_type_cell(mg, &cell)?;
    Ok(cell)
}

/// Unordered pairs of non-loop curves whose supports are disjoint: the four
/// pants adjacent to the two curves are pairwise distinct, so the moves
/// act on disjoint four-holed spheres.
pub fn disjoint_support_pairs(graph: &PantsGraph) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let edges = graph.edges();
    for e1 in 0..edges.len() {
        if graph.is_loop(e1) {
            continue;
        }
        for e2 in (e1 + 1)..edges.len() {
            if graph.is_loop(e2) {
                continue;
            }
            let (a, b) = edges[e1];
            let (c, d) = edges[e2];
            if a != c && a != d && b != c && b != d {
                out.push((e1, e2));
            }
        }
    }
    out
}

/// Summary of an exhaustive commutation check over a move graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutationReport {
    pub types_scanned: usize,
    pub pairs_checked: usize,
}

/// Checks that every pair of disjointly supported moves on every type of
/// `mg` commutes: all four branch combinations give the same outcome in
/// either order. Returns how many pairs were exercised.
pub fn verify_disjoint_commutations(mg: &TypeMoveGraph) -> Result<CommutationReport, CellError> {
    let mut pairs_checked = 0;
    for graph in &mg.types {
        for (e1, e2) in disjoint_support_pairs(graph) {
            for b1 in 0..2u8 {
                for b2 in 0..2u8 {
                    let first = graph.apply_a_move(e1, b1).expect("non-loop");
                    let second = graph.apply_a_move(e2, b2).expect("non-loop");
                    let m12 = first.apply_a_move(e2, b2).expect("edge indices are stable");
                    let m21 = second.apply_a_move(e1, b1).expect("edge indices are stable");
                    if m12.canonical_code() != m21.canonical_code() {
                        return Err(CellError::BadSquare {
                            reason: format!(
                                "curves {e1},{e2} branches {b1},{b2} disagree on {graph}"
                            ),
                        });
                    }
                }
            }
            pairs_checked += 1;
        }
    }
    Ok(CommutationReport {
        types_scanned: mg.vertex_count(),
        pairs_checked,
    })
}

/// Whether two legal moves at type `v` commute. The supports must be
/// disjoint — the two curves and the four pants they touch pairwise
/// distinct — otherwise this is a precondition error, not a commute
/// failure.
pub fn commute_check(
    mg: &TypeMoveGraph,
    v: usize,
    m1: MoveSite,
    m2: MoveSite,
) -> Result<bool, CellError> {
    let graph = mg.types.get(v).ok_or(CellError::MissingVertex {
        vertex: v.to_string(),
    })?;
    let edges = graph.edges();
    for site in [m1, m2] {
        if site.edge >= edges.len() {
            return Err(CellError::BadMove {
                reason: format!(
                    "curve {} is out of range for {} ({} curves)",
                    site.edge,
                    type_label(mg, v),
                    edges.len()
                ),
            });
        }
    }
    if m1.edge == m2.edge {
        return Err(CellError::OverlappingSupports {
            reason: format!("both moves act on curve {}", m1.edge),
        });
    }
    let (a, b) = edges[m1.edge];
    let (c, d) = edges[m2.edge];
    if a == c || a == d || b == c || b == d {
        return Err(CellError::OverlappingSupports {
            reason: format!(
                "curves {} and {} share a pants, so their complements meet",
                m1.edge, m2.edge
            ),
        });
    }
    let bad = |e: PantsGraphError| CellError::BadMove {
        reason: e.to_string(),
    };
    let first = graph.apply(m1).map_err(bad)?;
    let second = graph.apply(m2).map_err(bad)?;
    let forward = first.apply(m2).map_err(bad)?;
    let backward = second.apply(m1).map_err(bad)?;
    Ok(forward.canonical_code() == backward.canonical_code())
}

/// The least rotation-or-reflection representative of a square's boundary.
fn canonical_square(square: [usize; 4]) -> [usize; 4] {
    let mut best = square;
    for r in 0..4 {
        let rot = [
            square[r],
            square[(r + 1) % 4],
            square[(r + 2) % 4],
            square[(r + 3) % 4],
        ];
        let refl = [rot[0], rot[3], rot[2], rot[1]];
        best = best.min(rot).min(refl);
    }
    best
}

/// All commuting squares of a type move graph: orbits of two moves with
/// disjoint supports whose four outcomes are distinct types, canonicalized
/// over rotation and reflection, in order.
pub fn type_squares(mg: &TypeMoveGraph) -> Vec<RelationInstance<usize>> {
    let code_index = |g: &PantsGraph| {
        mg.codes
            .binary_search(&g.canonical_code())
            .expect("moves stay within the enumerated types")
    };
    let mut found: BTreeSet<[usize; 4]> = BTreeSet::new();
    for (t0, graph) in mg.types.iter().enumerate() {
        for (e1, e2) in disjoint_support_pairs(graph) {
            for b1 in 0..2u8 {
                for b2 in 0..2u8 {
                    let first = graph.apply_a_move(e1, b1).expect("non-loop");
                    let second = graph.apply_a_move(e2, b2).expect("non-loop");
                    let both = first.apply_a_move(e2, b2).expect("edge indices are stable");
                    let corners = [t0, code_index(&first), code_index(&both), code_index(&second)];
                    let distinct: BTreeSet<usize> = corners.iter().copied().collect();
                    if distinct.len() == 4 {
                        found.insert(canonical_square(corners));
                    }
                }
            }
        }
    }
    found
        .into_iter()
        .map(|corners| {
            let cell = RelationInstance::with_sites(
                RelationKind::RC,
                corners.to_vec(),
                vec![MoveKind::A; 4],
            );
            debug_assert!(validate_type_cell(mg, &cell).is_ok());
            cell
        })
        .collect()
}

/// All instances of `kind` in a type move graph, canonicalized over rotation
/// and reflection and deterministically ordered. Kinds invisible at the type
/// level (`3S`, `6AS`) yield an empty list, as does a kind whose hosting
/// surface does not match (pentagons outside the five-holed sphere).
pub fn find_type_instances(mg: &TypeMoveGraph, kind: RelationKind) -> Vec<RelationInstance<usize>> {
    match kind {
        RelationKind::R3A => type_triangles(mg),
        RelationKind::R5A => type_pentagons(mg),
        RelationKind::RC => type_squares(mg),
        RelationKind::R3S | RelationKind::R6AS => Vec::new(),
    }
}

/// A hexagonal loop of six four-holed-sphere moves in the five-holed
/// sphere's move graph, symmetric under cyclically permuting legs `1,2,3`
/// (advancing the cycle by two steps). Returned closed: the last entry
/// repeats the first. With boundary legs labeled `1..=5` the corners pair
/// one of legs `1,2,3` with leg `4` and another with leg `5`:
///
/// ```text
/// {14,25} → {14,35} → {24,35} → {24,15} → {34,15} → {34,25} → (closes)
/// ```
pub fn symmetric_hexagon_0_5(mg: &TypeMoveGraph) -> Result<Vec<usize>, CellError> {
    let five = SurfaceType::new(0, 5).expect("five-holed sphere");
    if mg.surface != five {
        return Err(CellError::UnsupportedKind {
            kind: RelationKind::RC,
            reason: format!(
                "the symmetric hexagon lives in the five-holed sphere, not {}",
                mg.surface
            ),
        });
    }
    let corners = [
        [(1, 4), (2, 5)],
        [(1, 4), (3, 5)],
        [(2, 4), (3, 5)],
        [(2, 4), (1, 5)],
        [(3, 4), (1, 5)],
        [(3, 4), (2, 5)],
    ];
    let mut cycle: Vec<usize> = corners
        .iter()
        .map(|pair| {
            let mut pairs = *pair;
            pairs.sort();
            (0..mg.vertex_count())
                .find(|&t| cherry_pairs(&mg.types[t]) == Some(pairs))
                .expect("every unordered pair of disjoint leg pairs is an enumerated type")
        })
        .collect();
    cycle.push(cycle[0]);
    for window in cycle.windows(2) {
        if !mg.has_edge(window[0], window[1]) {
            return Err(CellError::MissingEdge {
                a: type_label(mg, window[0]),
                b: type_label(mg, window[1]),
            });
        }
    }
    Ok(cycle)
}

/// The symbolic mixed hexagon in a twice-holed torus.
///
/// `alpha` curves are handle slopes, `epsilon` curves run around the
/// boundary legs; the cycle is four four-holed-sphere moves and two
/// one-holed-torus moves (the two steps that change the handle slope).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HexagonTemplate {
    pub surface: SurfaceType,
    /// Six decompositions, each a pair of named curves.
    pub vertices: [[String; 2]; 6],
    /// Kind of the move from vertex `i` to vertex `i + 1 mod 6`.
    pub step_kinds: [MoveKind; 6],
}

/// The mixed-hexagon boundary cycle for the twice-holed torus.
pub fn hexagon_template_1_2() -> HexagonTemplate {
    let pair = |a: &str, b: &str| [a.to_owned(), b.to_owned()];
    HexagonTemplate {
        surface: SurfaceType::new(1, 2).expect("twice-holed torus"),
        vertices: [
            pair("alpha1", "alpha3"),
            pair("alpha1", "epsilon3"),
            pair("alpha2", "epsilon3"),
            pair("alpha2", "epsilon2"),
            pair("alpha2", "epsilon1"),
            pair("alpha3", "epsilon1"),
        ],
        step_kinds: [
            MoveKind::A,
            MoveKind::S,
            MoveKind::A,
            MoveKind::A,
            MoveKind::S,
            MoveKind::A,
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pantsgraph::build_move_graph;

    fn s(text: &str) -> Slope {
        text.parse().unwrap()
    }

    fn mg(g: u32, n: u32) -> TypeMoveGraph {
        build_move_graph(SurfaceType::new(g, n).unwrap()).unwrap()
    }

    #[test]
    fn kind_serialization() {
        let kinds = [
            (RelationKind::R3A, r#""3A""#),
            (RelationKind::R5A, r#""5A""#),
            (RelationKind::R3S, r#""3S""#),
            (RelationKind::R6AS, r#""6AS""#),
            (RelationKind::RC, r#""C""#),
        ];
        for (kind, json) in kinds {
            assert_eq!(serde_json::to_string(&kind).unwrap(), json);
            assert_eq!(serde_json::from_str::<RelationKind>(json).unwrap(), kind);
        }
    }

    #[test]
    fn slope_triangles_validate() {
        let tri = RelationInstance::new(
            RelationKind::R3A,
            vec![s("0/1"), s("1/1"), s("1/0")],
        );
        assert_eq!(validate_slope_cell(ModelKind::A, &tri), Ok(()));
        assert!(matches!(
            validate_slope_cell(ModelKind::S, &tri),
            Err(CellError::WrongMoveKind { .. })
        ));
        let bad = RelationInstance::new(
            RelationKind::R3A,
            vec![s("0/1"), s("1/1"), s("-1/1")],
        );
        assert!(matches!(
            validate_slope_cell(ModelKind::A, &bad),
            Err(CellError::MissingEdge { .. })
        ));
        let pentagon = RelationInstance::new(RelationKind::R5A, vec![s("0/1"); 5]);
        assert!(matches!(
            validate_slope_cell(ModelKind::A, &pentagon),
            Err(CellError::UnsupportedKind { .. })
        ));
    }

    #[test]
    fn window_triangle_listing_matches_the_window() {
        let tris = triangles_in_window(ModelKind::A, 1);
        assert_eq!(tris.len(), 2);
        for t in &tris {
            assert_eq!(validate_slope_cell(ModelKind::A, t), Ok(()));
        }
        let s_tris = triangles_in_window(ModelKind::S, 1);
        assert_eq!(s_tris[0].kind, RelationKind::R3S);
    }

    #[test]
    fn four_holed_sphere_has_one_type_triangle() {
        let mg = mg(0, 4);
        let tris = type_triangles(&mg);
        assert_eq!(tris.len(), 1);
        assert_eq!(tris[0].boundary, vec![0, 1, 2]);
    }

    #[test]
    fn five_holed_sphere_has_ten_triangles_and_twelve_pentagons() {
        let mg = mg(0, 5);
        assert_eq!(type_triangles(&mg).len(), 10);
        let pentagons = type_pentagons(&mg);
        assert_eq!(pentagons.len(), 12);
        for p in &pentagons {
            assert_eq!(validate_type_cell(&mg, p), Ok(()));
        }
    }

    #[test]
    fn standard_pentagon_follows_the_paired_curve_pattern() {
        // Boundary types carry the leg pairs {i, i+1} in the classic cycle
        // {12,34} {12,45} {23,45} {23,51} {34,51}.
        let mg = mg(0, 5);
        let want = [
            [(1, 2), (3, 4)],
            [(1, 2), (4, 5)],
            [(2, 3), (4, 5)],
            [(2, 3), (1, 5)],
            [(3, 4), (1, 5)],
        ];
        let boundary: Vec<usize> = want
            .iter()
            .map(|pairs| {
                let mut sorted = *pairs;
                sorted.sort();
                (0..mg.vertex_count())
                    .find(|&i| cherry_pairs(&mg.types[i]).unwrap() == sorted)
                    .expect("every pair of disjoint leg pairs is a type")
            })
            .collect();
        let cell = RelationInstance::new(RelationKind::R5A, boundary);
        assert_eq!(validate_type_cell(&mg, &cell), Ok(()));
        // Breaking the cyclic order must break the pattern.
        let mut twisted = cell.clone();
        twisted.boundary.swap(1, 3);
        assert!(validate_type_cell(&mg, &twisted).is_err());
    }

    #[test]
    fn commuting_square_validates_on_the_six_holed_sphere() {
        let mg = mg(0, 6);
        // Find a realized square by applying a disjoint pair somewhere.
        let (t0, (e1, e2)) = (0..mg.vertex_count())
            .find_map(|i| {
                let pairs = disjoint_support_pairs(&mg.types[i]);
                pairs.first().map(|&p| (i, p))
            })
            .expect("a path-shaped type has disjoint curves");
        let g0 = &mg.types[t0];
        let idx = |g: &PantsGraph| mg.codes.binary_search(&g.canonical_code()).unwrap();
        let m1 = g0.apply_a_move(e1, 0).unwrap();
        let m2 = g0.apply_a_move(e2, 0).unwrap();
        let m12 = m1.apply_a_move(e2, 0).unwrap();
        let corners = [t0, idx(&m1), idx(&m12), idx(&m2)];
        if corners.iter().collect::<BTreeSet<_>>().len() == 4 {
            let cell = RelationInstance::new(RelationKind::RC, corners.to_vec());
            assert_eq!(validate_type_cell(&mg, &cell), Ok(()));
        }
        let report = verify_disjoint_commutations(&mg).unwrap();
        assert!(report.pairs_checked > 0);
    }

    #[test]
    fn torus_with_three_holes_has_no_disjoint_pairs() {
        let report = verify_disjoint_commutations(&mg(1, 3)).unwrap();
        assert_eq!(report.pairs_checked, 0);
        assert_eq!(report.types_scanned, mg(1, 3).vertex_count());
    }

    #[test]
    fn unsupported_kinds_are_diagnosed() {
        let mg5 = mg(0, 5);
        let r3s = RelationInstance::new(RelationKind::R3S, vec![0, 1, 2]);
        assert!(matches!(
            validate_type_cell(&mg5, &r3s),
            Err(CellError::UnsupportedKind { .. }) | Err(CellError::MissingEdge { .. })
        ));
        let mg6 = mg(0, 6);
        let r5a = RelationInstance::new(RelationKind::R5A, vec![0, 1, 2, 3, 4]);
        // Whatever the adjacency situation, a pentagon claim on (0,6) must
        // not validate.
        assert!(validate_type_cell(&mg6, &r5a).is_err());
    }

    #[test]
    fn hexagon_template_shape() {
        let hex = hexagon_template_1_2();
        assert_eq!(hex.surface, SurfaceType::new(1, 2).unwrap());
        let a_count = hex
            .step_kinds
            .iter()
            .filter(|k| **k == MoveKind::A)
            .count();
        assert_eq!((a_count, hex.step_kinds.len() - a_count), (4, 2));
        // Consecutive decompositions differ in exactly one curve.
        for i in 0..6 {
            let cur: BTreeSet<&String> = hex.vertices[i].iter().collect();
            let next: BTreeSet<&String> = hex.vertices[(i + 1) % 6].iter().collect();
            assert_eq!(cur.intersection(&next).count(), 1, "step {i}");
        }
    }

    #[test]
    fn step_move_lists_are_validated() {
        let tri = |sites: Vec<MoveKind>| {
            RelationInstance::with_sites(
                RelationKind::R3A,
                vec![s("0/1"), s("1/1"), s("1/0")],
                sites,
            )
        };
        assert_eq!(
            validate_slope_cell(ModelKind::A, &tri(vec![MoveKind::A; 3])),
            Ok(())
        );
        assert!(matches!(
            validate_slope_cell(ModelKind::A, &tri(vec![MoveKind::A; 2])),
            Err(CellError::WrongSiteCount { expected: 3, got: 2, .. })
        ));
        assert!(matches!(
            validate_slope_cell(
                ModelKind::A,
                &tri(vec![MoveKind::A, MoveKind::S, MoveKind::A])
            ),
            Err(CellError::SiteKindMismatch { .. })
        ));
        // Squares need opposite sides to repeat, not a fixed A/S census.
        assert_eq!(
            check_sites(
                RelationKind::RC,
                &[MoveKind::A, MoveKind::S, MoveKind::A, MoveKind::S]
            ),
            Ok(())
        );
        assert!(check_sites(
            RelationKind::RC,
            &[MoveKind::A, MoveKind::S, MoveKind::S, MoveKind::A]
        )
        .is_err());
        // Hexagons take exactly four A-moves and two S-moves.
        assert_eq!(
            check_sites(RelationKind::R6AS, &[MoveKind::A; 6]),
            Err(CellError::SiteKindMismatch {
                kind: RelationKind::R6AS,
                reason: "found 6 A-moves and 0 S-moves".into(),
            })
        );
    }

    #[test]
    fn sites_serialize_only_when_present() {
        let bare = RelationInstance::new(RelationKind::R3A, vec![0usize, 1, 2]);
        assert_eq!(
            serde_json::to_string(&bare).unwrap(),
            r#"{"kind":"3A","boundary":[0,1,2]}"#
        );
        let with = RelationInstance::with_sites(
            RelationKind::R3A,
            vec![0usize, 1, 2],
            vec![MoveKind::A; 3],
        );
        let json = serde_json::to_string(&with).unwrap();
        assert_eq!(
            json,
            r#"{"kind":"3A","boundary":[0,1,2],"sites":["A","A","A"]}"#
        );
        let back: RelationInstance<usize> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, with);
        let legacy: RelationInstance<usize> =
            serde_json::from_str(r#"{"kind":"3A","boundary":[0,1,2]}"#).unwrap();
        assert_eq!(legacy, bare);
    }

    #[test]
    fn standard_pentagon_instances_rotate() {
        let mg5 = mg(0, 5);
        let base = pentagon_instance_0_5(&mg5, 0).unwrap();
        assert_eq!(validate_type_cell(&mg5, &base), Ok(()));
        assert_eq!(base.sites, vec![MoveKind::A; 5]);
        for start in 1..5 {
            let rotated = pentagon_instance_0_5(&mg5, start).unwrap();
            let mut expected = base.boundary.clone();
            expected.rotate_left(start);
            assert_eq!(rotated.boundary, expected, "rotation by {start}");
            assert_eq!(validate_type_cell(&mg5, &rotated), Ok(()));
        }
        // Rotation indices wrap.
        assert_eq!(pentagon_instance_0_5(&mg5, 7).unwrap().boundary, {
            let mut b = base.boundary.clone();
            b.rotate_left(2);
            b
        });
        assert!(matches!(
            pentagon_instance_0_5(&mg(0, 4), 0),
            Err(CellError::UnsupportedKind { .. })
        ));
    }

    #[test]
    fn instance_search_is_deduplicated_and_validated() {
        let mg5 = mg(0, 5);
        assert_eq!(find_type_instances(&mg5, RelationKind::R3A).len(), 10);
        assert_eq!(find_type_instances(&mg5, RelationKind::R5A).len(), 12);
        assert!(find_type_instances(&mg5, RelationKind::R3S).is_empty());
        assert!(find_type_instances(&mg5, RelationKind::R6AS).is_empty());
        // Pentagons only live in (0,5): elsewhere the search is empty, not
        // an error.
        assert!(find_type_instances(&mg(0, 4), RelationKind::R5A).is_empty());
        assert!(find_type_instances(&mg(0, 4), RelationKind::RC).is_empty());

        let squares = type_squares(&mg(0, 6));
        assert!(!squares.is_empty());
        let mg6 = mg(0, 6);
        for sq in &squares {
            assert_eq!(validate_type_cell(&mg6, sq), Ok(()));
            // Canonical form: least corner first, lesser neighbour second.
            let b = &sq.boundary;
            assert!(b[0] < b[1] && b[0] < b[2] && b[0] < b[3]);
            assert!(b[1] < b[3]);
        }
        let window = FareySubcomplex::window(ModelKind::A, 1);
        assert_eq!(find_slope_instances(&window, RelationKind::R3A).len(), 2);
        assert!(find_slope_instances(&window, RelationKind::R3S).is_empty());
        assert!(find_slope_instances(&window, RelationKind::RC).is_empty());
    }

    #[test]
    fn commute_check_requires_disjoint_supports() {
        let mg6 = mg(0, 6);
        let (v, (e1, e2)) = (0..mg6.vertex_count())
            .find_map(|i| {
                let pairs = disjoint_support_pairs(&mg6.types[i]);
                pairs.first().map(|&p| (i, p))
            })
            .expect("a path-shaped type has disjoint curves");
        let site = |edge: usize| MoveSite {
            edge,
            kind: MoveKind::A,
            branch: Some(0),
        };
        assert_eq!(commute_check(&mg6, v, site(e1), site(e2)), Ok(true));
        assert!(matches!(
            commute_check(&mg6, v, site(e1), site(e1)),
            Err(CellError::OverlappingSupports { .. })
        ));
        // Two curves sharing a pants overlap even though they differ.
        let g = &mg6.types[v];
        let shared = (0..g.edges().len())
            .flat_map(|a| (a + 1..g.edges().len()).map(move |b| (a, b)))
            .find(|&(a, b)| {
                let (p, q) = g.edges()[a];
                let (r, t) = g.edges()[b];
                !g.is_loop(a) && !g.is_loop(b) && (p == r || p == t || q == r || q == t)
            });
        if let Some((a, b)) = shared {
            assert!(matches!(
                commute_check(&mg6, v, site(a), site(b)),
                Err(CellError::OverlappingSupports { .. })
            ));
        }
        assert!(matches!(
            commute_check(&mg6, mg6.vertex_count(), site(e1), site(e2)),
            Err(CellError::MissingVertex { .. })
        ));
    }

    #[test]
    fn symmetric_hexagon_is_a_closed_six_cycle() {
        let mg5 = mg(0, 5);
        let hex = symmetric_hexagon_0_5(&mg5).unwrap();
        assert_eq!(hex.len(), 7);
        assert_eq!(hex.first(), hex.last());
        let distinct: BTreeSet<usize> = hex.iter().copied().collect();
        assert_eq!(distinct.len(), 6);
        // Three-fold symmetry: advancing the cycle by two steps matches
        // cyclically relabelling legs 1 → 2 → 3 → 1 on the cherry pairs.
        let sigma = |l: usize| match l {
            1 => 2,
            2 => 3,
            3 => 1,
            other => other,
        };
        for i in 0..6 {
            let pairs = cherry_pairs(&mg5.types[hex[i]]).unwrap();
            let mut mapped = pairs.map(|(a, b)| {
                let (x, y) = (sigma(a), sigma(b));
                (x.min(y), x.max(y))
            });
            mapped.sort();
            let next = cherry_pairs(&mg5.types[hex[(i + 2) % 6]]).unwrap();
            assert_eq!(mapped, next, "corner {i}");
        }
        assert!(symmetric_hexagon_0_5(&mg(0, 4)).is_err());
    }
}
