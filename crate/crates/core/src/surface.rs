//! Surface types `(g, n)` and the arithmetic of their pants decompositions.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors arising when a surface type does not support the requested
/// structure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    /// The surface has no pants decomposition: `2g - 2 + n < 1`.
    ///
    /// Spheres with fewer than three holes and the closed torus either carry
    /// no essential curves at all or cannot be cut into three-holed spheres.
    #[error("surface (g={g}, n={n}) admits no pants decomposition (2g-2+n = {})", 2 * *g as i64 - 2 + *n as i64)]
    NotDecomposable { g: u32, n: u32 },
}

/// A compact orientable surface, up to homeomorphism: genus `g` with `n`
/// boundary circles.
///
/// Only surfaces admitting a pants decomposition can be constructed, i.e.
/// those with `2g - 2 + n >= 1`. The three-holed sphere `(0, 3)` is allowed
/// and carries exactly one (empty) decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSurfaceType")]
pub struct SurfaceType {
    g: u32,
    n: u32,
}

/// Serialization shape of [`SurfaceType`]; conversion re-runs the
/// decomposability check so deserialized values satisfy the same invariant
/// as constructed ones.
#[derive(Debug, Clone, Copy, Deserialize)]
struct RawSurfaceType {
    g: u32,
    n: u32,
}

impl TryFrom<RawSurfaceType> for SurfaceType {
    type Error = SurfaceError;

    fn try_from(raw: RawSurfaceType) -> Result<Self, SurfaceError> {
        SurfaceType::new(raw.g, raw.n)
    }
}

impl SurfaceType {
    /// Builds a surface type, rejecting surfaces without pants
    /// decompositions.
    pub fn new(g: u32, n: u32) -> Result<Self, SurfaceError> {
        if 2 * i64::from(g) - 2 + i64::from(n) < 1 {
            return Err(SurfaceError::NotDecomposable { g, n });
        }
        Ok(SurfaceType { g, n })
    }

    /// Genus.
    pub fn genus(&self) -> u32 {
        self.g
    }

    /// Number of boundary circles.
    pub fn boundary_count(&self) -> u32 {
        self.n
    }

    /// Number of curves in any pants decomposition: `3g - 3 + n`.
    pub fn curve_count(&self) -> usize {
        (3 * i64::from(self.g) - 3 + i64::from(self.n)) as usize
    }

    /// Number of pairs of pants in any pants decomposition: `2g - 2 + n`.
    ///
    /// This is also `-χ`, the negative Euler characteristic, and the natural
    /// size measure for enumeration.
    pub fn pants_count(&self) -> usize {
        (2 * i64::from(self.g) - 2 + i64::from(self.n)) as usize
    }
}

impl std::fmt::Display for SurfaceType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.g, self.n)
    }
}
