//! Contracting edge loops across relation cells, with machine-checkable
//! certificates.
//!
//! A loop of elementary moves is recorded as a based vertex path whose
//! first and last entries agree. Three primitive operations deform it:
//! cancelling a backtrack, inserting one, and swapping a run of boundary
//! edges of a relation cell for the complementary run. A [`Certificate`]
//! is an initial loop plus a step list ending at the constant basepoint
//! path; [`verify_certificate`] replays it from scratch, revalidating the
//! loop, every step, and every cell against the host, so a certificate is
//! exactly a checked proof that the loop bounds.
//!
//! Producers come in two shapes. [`reduce_farey_loop`] contracts any loop
//! of slopes by pushing its complexity maximum down through triangle fans —
//! this terminates because fan interiors are strictly simpler than the
//! apex they replace. [`fill_finite_loop`] searches a finite type move
//! graph's loops breadth-first using a supplied cell inventory, and can be
//! constrained to use an exact number of cells of each kind.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::farey::{FareyError, FareyModel, ModelKind, Slope};
use crate::host::Host;
use crate::pantsgraph::{build_move_graph, EnumerateError, TypeMoveGraph};
use crate::relations::{CellError, RelationInstance, RelationKind};
use crate::surface::SurfaceType;
use crate::MoveKind;

/// One deformation of a based loop.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum Step<V> {
    /// Remove entries `position` and `position + 1` when the entries on
    /// either side of `position` agree (the path walks an edge and
    /// immediately walks back).
    CancelBacktrack { position: usize },
    /// Insert `vertex` and a return to the current entry right after
    /// `position`; inverse of a cancel.
    InsertBacktrack { position: usize, vertex: V },
    /// Replace the `replaced_len`-edge run starting at `position`, which
    /// must follow an arc of `cell`'s boundary cycle, by the complementary
    /// arc. Endpoints stay fixed.
    CellSwap {
        position: usize,
        cell: RelationInstance<V>,
        replaced_len: usize,
    },
}

/// A replayable contraction of a based loop to its basepoint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate<V> {
    pub initial: Vec<V>,
    pub steps: Vec<Step<V>>,
    #[serde(rename = "final")]
    pub final_path: Vec<V>,
}

/// Why a single step does not apply to a path.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StepError {
    #[error("position {position} out of range for a path of {len} entries")]
    OutOfRange { position: usize, len: usize },
    #[error("entries beside position {position} differ; nothing to cancel")]
    NotABacktrack { position: usize },
    #[error("the basepoint entry cannot be removed")]
    AtBasepoint,
    #[error("no move joins {a} and {b}")]
    NotAnEdge { a: String, b: String },
    #[error("cell rejected by the host: {0}")]
    BadCell(#[from] CellError),
    #[error("replaced_len {replaced_len} must be between 1 and {max} for this cell")]
    BadReplacedLen { replaced_len: usize, max: usize },
    #[error("path segment at position {position} does not follow an arc of the cell boundary")]
    SegmentOffCell { position: usize },
}

/// Why a whole certificate (or its starting loop) is rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("paths must contain at least a basepoint entry")]
    Empty,
    #[error("path is not a based loop: first entry {first}, last entry {last}")]
    NotALoop { first: String, last: String },
    #[error("path entry {vertex} is not in the host")]
    MissingVertex { vertex: String },
    #[error("consecutive entries {a} and {b} at position {position} are not joined by a move")]
    NotAnEdge {
        a: String,
        b: String,
        position: usize,
    },
    #[error("step {index} does not apply: {source}")]
    BadStep { index: usize, source: StepError },
    #[error("replaying the steps does not produce the recorded final path")]
    FinalMismatch,
    #[error("certificate does not end at the constant basepoint path")]
    NotContracted,
}

/// Checks that `path` is a nonempty based loop of host edges.
pub fn validate_loop<H: Host>(host: &H, path: &[H::Vertex]) -> Result<(), CertificateError> {
    if path.is_empty() {
        return Err(CertificateError::Empty);
    }
    let (first, last) = (&path[0], &path[path.len() - 1]);
    if first != last {
        return Err(CertificateError::NotALoop {
            first: first.to_string(),
            last: last.to_string(),
        });
    }
    for v in path {
        if !host.has_vertex(v) {
            return Err(CertificateError::MissingVertex {
                vertex: v.to_string(),
            });
        }
    }
    for (position, pair) in path.windows(2).enumerate() {
        if !host.has_edge(&pair[0], &pair[1]) {
            return Err(CertificateError::NotAnEdge {
                a: pair[0].to_string(),
                b: pair[1].to_string(),
                position,
            });
        }
    }
    Ok(())
}

/// Computes the replacement segment for a cell swap, without touching the
/// path: the complementary boundary arc from `path[i]` to `path[i + k]`.
/// Returns `None` when the path segment does not follow the cell.
///
/// Both the verifier and the search producers go through this single
/// matcher, so they cannot drift apart on swap semantics.
fn swap_replacement<V: Clone + PartialEq>(
    cell: &RelationInstance<V>,
    path: &[V],
    i: usize,
    k: usize,
) -> Option<Vec<V>> {
    let r = cell.boundary.len();
    let at = |idx: isize| -> &V {
        &cell.boundary[idx.rem_euclid(r as isize) as usize]
    };
    let s = cell.boundary.iter().position(|v| *v == path[i])? as isize;
    let dir = [1isize, -1]
        .into_iter()
        .find(|d| (0..=k).all(|j| at(s + d * j as isize) == &path[i + j]))?;
    let mut replacement = Vec::with_capacity(r - k + 1);
    for j in 0..=(r - k) as isize {
        replacement.push(at(s - dir * j).clone());
    }
    Some(replacement)
}

/// Applies one step in place, validating it fully against the host.
pub fn apply_step<H: Host>(
    host: &H,
    path: &mut Vec<H::Vertex>,
    step: &Step<H::Vertex>,
) -> Result<(), StepError> {
    let len = path.len();
    match step {
        Step::CancelBacktrack { position } => {
            let i = *position;
            if i == 0 {
                return Err(StepError::AtBasepoint);
            }
            if i + 1 >= len {
                return Err(StepError::OutOfRange { position: i, len });
            }
            if path[i - 1] != path[i + 1] {
                return Err(StepError::NotABacktrack { position: i });
            }
            path.drain(i..=i + 1);
            Ok(())
        }
        Step::InsertBacktrack { position, vertex } => {
            let i = *position;
            if i >= len {
                return Err(StepError::OutOfRange { position: i, len });
            }
            if !host.has_edge(&path[i], vertex) {
                return Err(StepError::NotAnEdge {
                    a: path[i].to_string(),
                    b: vertex.to_string(),
                });
            }
            let anchor = path[i].clone();
            path.splice(i + 1..i + 1, [vertex.clone(), anchor]);
            Ok(())
        }
        Step::CellSwap {
            position,
            cell,
            replaced_len,
        } => {
            host.validate_cell(cell)?;
            let (i, k) = (*position, *replaced_len);
            let r = cell.boundary.len();
            if k < 1 || k > r - 1 {
                return Err(StepError::BadReplacedLen {
                    replaced_len: k,
                    max: r - 1,
                });
            }
            if i + k >= len {
                return Err(StepError::OutOfRange {
                    position: i + k,
                    len,
                });
            }
            let replacement = swap_replacement(cell, path, i, k)
                .ok_or(StepError::SegmentOffCell { position: i })?;
            path.splice(i..=i + k, replacement);
            Ok(())
        }
    }
}

/// Replays a certificate from scratch: validates the initial loop, applies
/// and validates every step, and demands the result be the recorded final
/// path and equal to the constant basepoint path.
pub fn verify_certificate<H: Host>(
    host: &H,
    cert: &Certificate<H::Vertex>,
) -> Result<(), CertificateError> {
    validate_loop(host, &cert.initial)?;
    let mut path = cert.initial.clone();
    for (index, step) in cert.steps.iter().enumerate() {
        apply_step(host, &mut path, step)
            .map_err(|source| CertificateError::BadStep { index, source })?;
        // Steps are local edits; revalidating the whole loop after each one
        // keeps the verifier independent of any producer invariant.
        validate_loop(host, &path)?;
    }
    if path != cert.final_path {
        return Err(CertificateError::FinalMismatch);
    }
    if path.len() != 1 || path[0] != cert.initial[0] {
        return Err(CertificateError::NotContracted);
    }
    Ok(())
}

/// Errors from the slope-loop reducer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("input loop is invalid: {0}")]
    BadLoop(#[from] CertificateError),
    #[error("fan construction failed: {0}")]
    BadFan(#[from] FareyError),
    #[error("reduction step was rejected, which indicates a reducer bug: {0}")]
    Internal(#[from] StepError),
    #[error("reduction exceeded its safety budget of {budget} steps")]
    FuelExhausted { budget: usize },
}

/// A region of the working loop delimited by two equal entries; reduction
/// always works on the innermost window.
#[derive(Debug, Clone, Copy)]
struct Window {
    s: usize,
    e: usize,
}

struct Reducer<'a> {
    model: &'a FareyModel,
    verts: Vec<Slope>,
    steps: Vec<Step<Slope>>,
    stack: Vec<Window>,
    emitted: usize,
    budget: usize,
}

impl<'a> Reducer<'a> {
    fn triangle(&self, v: &Slope, a: &Slope, b: &Slope) -> RelationInstance<Slope> {
        let kind = match self.model.kind.move_kind() {
            MoveKind::A => RelationKind::R3A,
            MoveKind::S => RelationKind::R3S,
        };
        RelationInstance::with_sites(
            kind,
            vec![v.clone(), a.clone(), b.clone()],
            vec![self.model.kind.move_kind(); 3],
        )
    }

    /// Applies `step` through the same code path the verifier uses, records
    /// it, and shifts every stacked window end by the length change.
    fn emit(&mut self, step: Step<Slope>) -> Result<(), ReduceError> {
        if self.emitted >= self.budget {
            return Err(ReduceError::FuelExhausted {
                budget: self.budget,
            });
        }
        self.emitted += 1;
        let before = self.verts.len() as isize;
        apply_step(self.model, &mut self.verts, &step)?;
        let delta = self.verts.len() as isize - before;
        self.steps.push(step);
        for w in &mut self.stack {
            w.e = (w.e as isize + delta) as usize;
        }
        Ok(())
    }

    /// Cancels backtracks inside the innermost window until none remain.
    fn cancel_pass(&mut self) -> Result<(), ReduceError> {
        'rescan: loop {
            let w = *self.stack.last().expect("a window is active");
            for i in (w.s + 1)..w.e {
                if self.verts[i - 1] == self.verts[i + 1] {
                    self.emit(Step::CancelBacktrack { position: i })?;
                    continue 'rescan;
                }
            }
            return Ok(());
        }
    }

    /// Replaces the passage `x → v → y` at position `i` by the fan of
    /// triangles around `v` from `x` to `y`, leaving only slopes strictly
    /// simpler than `v` in between. A trivial fan (`x == y`) degenerates to
    /// a backtrack cancellation.
    fn replace_passage(&mut self, i: usize) -> Result<(), ReduceError> {
        let v = self.verts[i].clone();
        let x = self.verts[i - 1].clone();
        let y = self.verts[i + 1].clone();
        let fan = Slope::fan_path(&v, &x, &y)?;
        let t = fan.len() - 1;
        if t == 0 {
            return self.emit(Step::CancelBacktrack { position: i });
        }
        for k in 0..t - 1 {
            let cell = self.triangle(&v, &fan[k], &fan[k + 1]);
            self.emit(Step::CellSwap {
                position: i - 1 + k,
                cell,
                replaced_len: 1,
            })?;
        }
        let cell = self.triangle(&v, &fan[t - 1], &fan[t]);
        self.emit(Step::CellSwap {
            position: i + t - 2,
            cell,
            replaced_len: 2,
        })
    }

    /// Handles the case where the window's own basepoint is the unique
    /// complexity maximum: morphs the window's final edge through the fan
    /// around the basepoint until it ends at the window's second entry,
    /// then opens an inner window that excludes the basepoint entirely.
    fn wrap(&mut self) -> Result<(), ReduceError> {
        let w = *self.stack.last().expect("a window is active");
        let base = self.verts[w.s].clone();
        let x = self.verts[w.e - 1].clone();
        let y = self.verts[w.s + 1].clone();
        let fan = Slope::fan_path(&base, &x, &y)?;
        let t = fan.len() - 1;
        for k in 0..t {
            let cell = self.triangle(&base, &fan[k], &fan[k + 1]);
            self.emit(Step::CellSwap {
                position: w.e - 1 + k,
                cell,
                replaced_len: 1,
            })?;
        }
        let inner = Window {
            s: w.s + 1,
            e: self.stack.last().expect("window persists").e - 1,
        };
        debug_assert_eq!(self.verts[inner.s], self.verts[inner.e]);
        self.stack.push(inner);
        Ok(())
    }

    fn run(mut self) -> Result<Certificate<Slope>, ReduceError> {
        // Termination measure: when the same window is visited twice in a
        // row, its (max complexity, positions attaining it) pair must drop
        // lexicographically. Windows are identified by depth and start,
        // both of which are fixed for a window's whole lifetime.
        let mut last_measure: Option<((usize, usize), (BigInt, usize))> = None;
        while !self.stack.is_empty() {
            self.cancel_pass()?;
            let w = *self.stack.last().expect("a window is active");
            if w.e == w.s {
                self.stack.pop();
                continue;
            }
            let max = (w.s..=w.e)
                .map(|i| self.verts[i].complexity())
                .max()
                .expect("window is nonempty");
            if cfg!(debug_assertions) {
                let count = (w.s..=w.e)
                    .filter(|&i| self.verts[i].complexity() == max)
                    .count();
                let id = (self.stack.len(), w.s);
                let measure = (max.clone(), count);
                if let Some((last_id, last)) = &last_measure {
                    debug_assert!(
                        *last_id != id || measure < *last,
                        "revisiting a window must lower its complexity measure"
                    );
                }
                last_measure = Some((id, measure));
            }
            let base = self.verts[w.s].clone();
            // Prefer an interior slope value attaining the maximum; the
            // least such value keeps runs reproducible.
            let apex = ((w.s + 1)..w.e)
                .map(|i| &self.verts[i])
                .filter(|v| v.complexity() == max && **v != base)
                .min()
                .cloned();
            let target = apex.or_else(|| {
                ((w.s + 1)..w.e)
                    .map(|i| &self.verts[i])
                    .find(|v| **v == base)
                    .cloned()
            });
            match target {
                Some(value) => {
                    // Right-to-left so earlier positions stay valid while
                    // later ones are rewritten.
                    let positions: Vec<usize> = ((w.s + 1)..w.e)
                        .filter(|&i| self.verts[i] == value)
                        .rev()
                        .collect();
                    for i in positions {
                        self.replace_passage(i)?;
                    }
                }
                None => {
                    // Only the window basepoint attains the maximum.
                    self.wrap()?;
                    let inner = *self.stack.last().expect("wrap pushed a window");
                    debug_assert!(
                        (inner.s..=inner.e)
                            .map(|i| self.verts[i].complexity())
                            .max()
                            .expect("inner window is nonempty")
                            < max,
                        "inner window must be strictly simpler"
                    );
                }
            }
        }
        debug_assert_eq!(self.verts.len(), 1);
        Ok(Certificate {
            initial: Vec::new(), // filled by caller
            steps: self.steps,
            final_path: self.verts,
        })
    }
}

/// Contracts a based loop of slopes to its basepoint and returns the
/// certificate, already self-verified.
///
/// Strategy: repeatedly rewrite passages through maximal-complexity slopes
/// across their triangle fans (fan interiors are strictly simpler); when
/// the loop's own basepoint is the unique maximum, morph the closing edge
/// around it and recurse on the inner loop, which no longer contains the
/// old basepoint. Window maxima strictly decrease with nesting, so this
/// terminates.
pub fn reduce_farey_loop(
    model: &FareyModel,
    initial: &[Slope],
) -> Result<Certificate<Slope>, ReduceError> {
    validate_loop(model, initial)?;
    let reducer = Reducer {
        model,
        verts: initial.to_vec(),
        steps: Vec::new(),
        stack: vec![Window {
            s: 0,
            e: initial.len() - 1,
        }],
        emitted: 0,
        budget: 1_000_000,
    };
    let mut cert = reducer.run()?;
    cert.initial = initial.to_vec();
    debug_assert_eq!(verify_certificate(model, &cert), Ok(()));
    Ok(cert)
}

/// Resource limits for the breadth-first loop filler.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FillBudget {
    /// Maximum number of distinct states to explore.
    pub max_states: usize,
    /// Longest loop (entry count) the search may pass through.
    pub max_len: usize,
    /// Whether backtrack insertions are allowed as search moves. Cancels
    /// and cell swaps alone keep the space small and often suffice.
    pub allow_inserts: bool,
}

impl FillBudget {
    /// A budget suited to `start`: some slack above the initial length,
    /// generous state cap, no insertions.
    pub fn for_loop(start: &[usize]) -> FillBudget {
        FillBudget {
            max_states: 250_000,
            max_len: start.len() + 6,
            allow_inserts: false,
        }
    }

    pub fn with_inserts(mut self) -> FillBudget {
        self.allow_inserts = true;
        self
    }
}

/// Result of a fill search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FillOutcome {
    /// The loop contracts; here is the replayable proof.
    Filled(Certificate<usize>),
    /// No contraction was found. `complete` is true when the whole
    /// reachable space within the budget was exhausted, so no filling
    /// exists under these limits at all.
    Unfilled { explored: usize, complete: bool },
}

impl FillOutcome {
    pub fn is_filled(&self) -> bool {
        matches!(self, FillOutcome::Filled(_))
    }
}

/// Compact transition record for search parent pointers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Desc {
    Cancel { position: usize },
    Insert { position: usize, vertex: u16 },
    Swap { position: usize, cell: u16, k: u8 },
}

type FillState = (Vec<u16>, Vec<u8>);

/// Contracts a based loop in a type move graph by breadth-first search over
/// loop states, using exactly the given cell inventory. See
/// [`fill_with_kind_counts`] for the count-constrained variant.
pub fn fill_finite_loop(
    mg: &TypeMoveGraph,
    cells: &[RelationInstance<usize>],
    start: &[usize],
    budget: &FillBudget,
) -> Result<FillOutcome, CertificateError> {
    fill_search(mg, cells, None, start, budget)
}

/// Like [`fill_finite_loop`], but a filling must use *exactly*
/// `targets[kind]` swaps of each listed kind (kinds absent from `targets`
/// are barred).
pub fn fill_with_kind_counts(
    mg: &TypeMoveGraph,
    cells: &[RelationInstance<usize>],
    targets: &BTreeMap<RelationKind, usize>,
    start: &[usize],
    budget: &FillBudget,
) -> Result<FillOutcome, CertificateError> {
    fill_search(mg, cells, Some(targets), start, budget)
}

fn fill_search(
    mg: &TypeMoveGraph,
    cells: &[RelationInstance<usize>],
    targets: Option<&BTreeMap<RelationKind, usize>>,
    start: &[usize],
    budget: &FillBudget,
) -> Result<FillOutcome, CertificateError> {
    validate_loop(mg, start)?;
    for cell in cells {
        mg.validate_cell(cell)
            .map_err(|source| CertificateError::BadStep {
                index: 0,
                source: StepError::BadCell(source),
            })?;
    }

    // Count-tracked kinds, in a fixed order; empty when unconstrained.
    let kinds: Vec<RelationKind> = targets
        .map(|t| t.keys().cloned().collect())
        .unwrap_or_default();
    let goal_counts: Vec<u8> = targets
        .map(|t| t.values().map(|&c| c as u8).collect())
        .unwrap_or_default();
    let kind_slot = |kind: RelationKind| kinds.iter().position(|k| *k == kind);

    let compress = |path: &[usize]| -> Vec<u16> { path.iter().map(|&v| v as u16).collect() };
    let expand = |path: &[u16]| -> Vec<usize> { path.iter().map(|&v| v as usize).collect() };

    let start_state: FillState = (compress(start), vec![0; kinds.len()]);
    let goal_met = |state: &FillState| state.0.len() == 1 && state.1 == goal_counts;

    let mut parent: HashMap<FillState, (FillState, Desc)> = HashMap::new();
    let mut queue: VecDeque<FillState> = VecDeque::new();
    queue.push_back(start_state.clone());
    let mut explored = 0usize;
    let mut truncated = false;
    let mut goal: Option<FillState> = if goal_met(&start_state) {
        Some(start_state.clone())
    } else {
        None
    };

    while goal.is_none() {
        let Some(state) = queue.pop_front() else {
            break;
        };
        explored += 1;
        let (path, counts) = &state;
        let len = path.len();

        let mut successors: Vec<(FillState, Desc)> = Vec::new();
        for i in 1..len.saturating_sub(1) {
            if path[i - 1] == path[i + 1] {
                let mut next = path.clone();
                next.drain(i..=i + 1);
                successors.push((
                    (next, counts.clone()),
                    Desc::Cancel { position: i },
                ));
            }
        }
        for (c, cell) in cells.iter().enumerate() {
            let slot = kind_slot(cell.kind);
            if targets.is_some() && slot.is_none() {
                continue; // kind not budgeted: barred
            }
            if let Some(s) = slot {
                if counts[s] >= goal_counts[s] {
                    continue;
                }
            }
            let r = cell.boundary.len();
            let wide = expand(path);
            for k in 1..r {
                if len + r < 2 * k + 2 || len + r - 2 * k > budget.max_len {
                    continue; // resulting length len + r − 2k over budget
                }
                for i in 0..len.saturating_sub(k) {
                    if let Some(replacement) = swap_replacement(cell, &wide, i, k) {
                        let mut next = wide.clone();
                        next.splice(i..=i + k, replacement);
                        let mut next_counts = counts.clone();
                        if let Some(s) = slot {
                            next_counts[s] += 1;
                        }
                        successors.push((
                            (compress(&next), next_counts),
                            Desc::Swap {
                                position: i,
                                cell: c as u16,
                                k: k as u8,
                            },
                        ));
                    }
                }
            }
        }
        if budget.allow_inserts && len + 2 <= budget.max_len {
            for i in 0..len {
                for w in mg.neighbors(path[i] as usize) {
                    let mut next = path.clone();
                    let anchor = next[i];
                    next.splice(i + 1..i + 1, [w as u16, anchor]);
                    successors.push((
                        (next, counts.clone()),
                        Desc::Insert {
                            position: i,
                            vertex: w as u16,
                        },
                    ));
                }
            }
        }

        for (next, desc) in successors {
            if next == start_state || parent.contains_key(&next) {
                continue;
            }
            if parent.len() >= budget.max_states {
                truncated = true;
                break;
            }
            parent.insert(next.clone(), (state.clone(), desc));
            if goal_met(&next) {
                goal = Some(next);
                break;
            }
            queue.push_back(next);
        }
        if truncated {
            break;
        }
    }

    let Some(goal_state) = goal else {
        return Ok(FillOutcome::Unfilled {
            explored,
            complete: !truncated,
        });
    };

    // Walk parents back to the start, then replay forward into a verified
    // certificate.
    let mut descs = Vec::new();
    let mut cursor = goal_state;
    while cursor != start_state {
        let (prev, desc) = parent[&cursor].clone();
        descs.push(desc);
        cursor = prev;
    }
    descs.reverse();

    let mut steps = Vec::with_capacity(descs.len());
    for desc in descs {
        steps.push(match desc {
            Desc::Cancel { position } => Step::CancelBacktrack { position },
            Desc::Insert { position, vertex } => Step::InsertBacktrack {
                position,
                vertex: vertex as usize,
            },
            Desc::Swap { position, cell, k } => Step::CellSwap {
                position,
                cell: cells[cell as usize].clone(),
                replaced_len: k as usize,
            },
        });
    }
    let cert = Certificate {
        initial: start.to_vec(),
        steps,
        final_path: vec![start[0]],
    };
    verify_certificate(mg, &cert).expect("search-produced certificates replay");
    Ok(FillOutcome::Filled(cert))
}

/// Fill results for a whole cycle basis of a type move graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplyConnectedReport {
    pub basis_count: usize,
    pub filled_count: usize,
    pub failed_count: usize,
    pub all_filled: bool,
    pub outcomes: Vec<FillOutcome>,
}

/// Attempts to contract every basis loop of `mg` using the given cell
/// inventory. Since every loop is a product of basis loops up to
/// backtracking, an all-green report certifies that the inventory kills the
/// whole fundamental group of the move graph. Each loop is first searched
/// without insertion moves (which keeps the space small and usually
/// suffices) and retried with them before being declared failed.
pub fn simply_connected_report(
    mg: &TypeMoveGraph,
    cells: &[RelationInstance<usize>],
    budget: Option<FillBudget>,
) -> SimplyConnectedReport {
    let mut outcomes = Vec::new();
    for basis_loop in mg.cycle_basis() {
        let b = budget.unwrap_or_else(|| FillBudget::for_loop(&basis_loop));
        let outcome =
            fill_finite_loop(mg, cells, &basis_loop, &b).expect("basis loops are valid loops");
        let outcome = match outcome {
            FillOutcome::Unfilled { .. } if !b.allow_inserts => {
                // Retry with insertions before giving up.
                fill_finite_loop(mg, cells, &basis_loop, &b.with_inserts())
                    .expect("basis loops are valid loops")
            }
            other => other,
        };
        outcomes.push(outcome);
    }
    let filled_count = outcomes.iter().filter(|o| o.is_filled()).count();
    SimplyConnectedReport {
        basis_count: outcomes.len(),
        filled_count,
        failed_count: outcomes.len() - filled_count,
        all_filled: filled_count == outcomes.len(),
        outcomes,
    }
}

/// Which structure a serialized certificate contracts its loop in: a slope
/// model (identified by its move kind) or a finite type move graph
/// (identified by the surface, whose move graph is rebuilt for replay).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum HostSpec {
    Model { model: ModelKind },
    Surface { surface: SurfaceType },
}

/// A certificate together with the host it replays in: the self-contained
/// JSON interchange form. Verification rebuilds the named host from
/// scratch, so the file carries everything needed to check it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CertificateFile {
    Slopes {
        host: HostSpec,
        #[serde(flatten)]
        certificate: Certificate<Slope>,
    },
    Types {
        host: HostSpec,
        #[serde(flatten)]
        certificate: Certificate<usize>,
    },
}

/// Failure modes of checking a serialized certificate against its named
/// host.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyFileError {
    #[error("certificate does not replay: {0}")]
    Certificate(#[from] CertificateError),
    #[error("cannot rebuild the host: {0}")]
    Host(#[from] EnumerateError),
    #[error("slope entries need a slope-model host and type entries a surface host")]
    HostMismatch,
}

impl CertificateFile {
    pub fn for_slopes(kind: ModelKind, certificate: Certificate<Slope>) -> CertificateFile {
        CertificateFile::Slopes {
            host: HostSpec::Model { model: kind },
            certificate,
        }
    }

    pub fn for_types(surface: SurfaceType, certificate: Certificate<usize>) -> CertificateFile {
        CertificateFile::Types {
            host: HostSpec::Surface { surface },
            certificate,
        }
    }

    /// Rebuilds the named host and replays the certificate in it.
    pub fn verify(&self) -> Result<(), VerifyFileError> {
        match self {
            CertificateFile::Slopes { host, certificate } => {
                let HostSpec::Model { model } = host else {
                    return Err(VerifyFileError::HostMismatch);
                };
                let model = FareyModel::new(*model);
                verify_certificate(&model, certificate)?;
                Ok(())
            }
            CertificateFile::Types { host, certificate } => {
                let HostSpec::Surface { surface } = host else {
                    return Err(VerifyFileError::HostMismatch);
                };
                let mg = build_move_graph(*surface)?;
                verify_certificate(&mg, certificate)?;
                Ok(())
            }
        }
    }
}
