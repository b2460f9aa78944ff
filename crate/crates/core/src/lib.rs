//! Combinatorics of pants decompositions of compact orientable surfaces.
//!
//! A pants decomposition of a surface of genus `g` with `n` boundary
//! components cuts it into three-holed spheres along `3g - 3 + n` disjoint
//! curves. This crate models the two standard ways of looking at the set of
//! all such decompositions:
//!
//! * **Slopes on small surfaces** ([`farey`]): on the four-holed sphere and
//!   the one-holed torus the isotopy classes of decomposition curves are
//!   rational slopes, and elementary moves connect slopes that are
//!   Farey-adjacent. The full complex is an infinite triangulated disk; we
//!   expose finite windows of it.
//! * **Graph types on arbitrary surfaces** ([`pantsgraph`]): forgetting the
//!   curves and remembering only which pairs of pants share which boundary
//!   circles leaves a trivalent multigraph with labelled legs. Elementary
//!   moves project to re-plumbings of a single edge, giving a finite move
//!   graph per surface type.
//!
//! On top of both sit the relation cells ([`relations`]) — triangles,
//! pentagons, squares and mixed hexagons whose boundaries are the known
//! relators among elementary moves — and a small rewriting calculus
//! ([`homotopy`]) that contracts edge loops to a point and emits
//! machine-checkable certificates of each contraction.

pub mod corpus;
pub mod dot;
pub mod farey;
pub mod homotopy;
pub mod host;
pub mod pantsgraph;
pub mod relations;
pub mod surface;

pub use farey::{FareyModel, FareySubcomplex, ModelKind, Slope};
pub use homotopy::{Certificate, CertificateFile, FillOutcome, Step};
pub use pantsgraph::{CanonicalCode, PantsGraph, TypeMoveGraph};
pub use relations::{RelationInstance, RelationKind};
pub use surface::SurfaceType;

use serde::{Deserialize, Serialize};

/// The two kinds of elementary move on a pants decomposition, named by the
/// surface the moved curve lives in once its neighbouring pants are glued:
/// an [`MoveKind::A`] move replaces a curve inside a four-holed sphere, an
/// [`MoveKind::S`] move a curve inside a one-holed torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum MoveKind {
    /// Four-holed-sphere move: the old and new curve meet in two points.
    A,
    /// One-holed-torus move: the old and new curve meet in one point.
    S,
}

impl std::fmt::Display for MoveKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MoveKind::A => write!(f, "A"),
            MoveKind::S => write!(f, "S"),
        }
    }
}
