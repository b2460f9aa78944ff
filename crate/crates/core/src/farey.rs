//! Slopes and the Farey model of the pants complex on the four-holed sphere
//! and the one-holed torus.
//!
//! On either surface an isotopy class of decomposition curves is determined
//! by a *slope*: a reduced fraction `p/q` together with `∞ = 1/0`. Two
//! slopes are connected by an elementary move exactly when they are
//! *Farey-adjacent*, i.e. `|p·s − q·r| = 1`. The move graph is therefore the
//! Farey graph, and its triangles `{a, b, mediant}` are the triangular
//! relation cells. The whole complex is an infinite triangulated disk; this
//! module exposes exact arithmetic on slopes plus finite windows of the
//! complex.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::surface::SurfaceType;
use crate::MoveKind;

/// Errors from slope arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FareyError {
    /// `0/0` does not determine a slope.
    #[error("0/0 is not a slope")]
    Indeterminate,
    /// An operation requiring Farey adjacency was given a non-adjacent pair.
    #[error("slopes {a} and {b} are not adjacent")]
    NotAdjacent { a: Slope, b: Slope },
    /// A fan endpoint is not a neighbour of the fan's centre.
    #[error("slope {x} is not adjacent to the fan centre {v}")]
    NotInFan { v: Slope, x: Slope },
    /// Unparseable slope literal.
    #[error("cannot parse {input:?} as a slope (expected `p/q` or an integer)")]
    Parse { input: String },
}

/// A slope: a reduced fraction `p/q` with `q > 0`, or `∞` stored as `1/0`.
///
/// Construction always normalizes, so equal slopes are structurally equal.
/// The ordering is by rational value with `∞` greatest; this is the order
/// used everywhere slopes are listed or serialized.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Slope {
    num: BigInt,
    den: BigInt,
}

impl Slope {
    /// Builds the slope `num/den`, reducing to lowest terms and normalizing
    /// signs. `den == 0` yields `∞`; `0/0` is rejected.
    pub fn new(num: BigInt, den: BigInt) -> Result<Self, FareyError> {
        if num.is_zero() && den.is_zero() {
            return Err(FareyError::Indeterminate);
        }
        let g = num.gcd(&den);
        let mut num = num / &g;
        let mut den = den / &g;
        if den.is_negative() || (den.is_zero() && num.is_negative()) {
            num = -num;
            den = -den;
        }
        Ok(Slope { num, den })
    }

    /// Convenience constructor from machine integers.
    pub fn from_ints(num: i64, den: i64) -> Result<Self, FareyError> {
        Slope::new(BigInt::from(num), BigInt::from(den))
    }

    /// The slope `∞ = 1/0`.
    pub fn infinity() -> Self {
        Slope {
            num: BigInt::from(1),
            den: BigInt::from(0),
        }
    }

    /// The slope `0 = 0/1`.
    pub fn zero() -> Self {
        Slope {
            num: BigInt::from(0),
            den: BigInt::from(1),
        }
    }

    /// Numerator of the reduced form (sign-carrying).
    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    /// Denominator of the reduced form (`0` exactly for `∞`).
    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    /// Whether this is `∞`.
    pub fn is_infinity(&self) -> bool {
        self.den.is_zero()
    }

    /// The determinant `p·s − q·r` of the pair `(p/q, r/s)`.
    ///
    /// Antisymmetric; `±1` exactly for Farey-adjacent pairs; `0` exactly for
    /// equal slopes.
    pub fn det(&self, other: &Slope) -> BigInt {
        &self.num * &other.den - &self.den * &other.num
    }

    /// Farey adjacency: `|det| = 1`. This is exactly "connected by one
    /// elementary move" in both slope models.
    pub fn is_adjacent(&self, other: &Slope) -> bool {
        self.det(other).abs() == BigInt::from(1)
    }

    /// The complexity `|p| + q`, the measure that drives loop reduction:
    /// fans around a slope are strictly convex in it, so any loop's maximum
    /// can be pushed down. `∞` and `0` both have complexity 1, the minimum.
    pub fn complexity(&self) -> BigInt {
        self.num.abs() + &self.den
    }

    /// `max(|p|, q)`, the coefficient bound used to clip finite windows.
    pub fn max_coeff(&self) -> BigInt {
        self.num.abs().max(self.den.clone())
    }

    /// The two slopes completing a Farey edge to a triangle: the mediant
    /// `(p+r)/(q+s)` and the anti-mediant `(p−r)/(q−s)`, in increasing
    /// order. Every adjacent pair has exactly these two common neighbours.
    pub fn triangle_completions(&self, other: &Slope) -> Result<[Slope; 2], FareyError> {
        if !self.is_adjacent(other) {
            return Err(FareyError::NotAdjacent {
                a: self.clone(),
                b: other.clone(),
            });
        }
        // Neither combination can be 0/0: that would force other = ±self,
        // which is never adjacent.
        let mediant = Slope::new(&self.num + &other.num, &self.den + &other.den)
            .expect("mediant of adjacent slopes is well-defined");
        let anti = Slope::new(&self.num - &other.num, &self.den - &other.den)
            .expect("anti-mediant of adjacent slopes is well-defined");
        let mut pair = [mediant, anti];
        pair.sort();
        Ok(pair)
    }

    /// Some Farey neighbour of this slope, via a Bézout pair. Deterministic
    /// but otherwise arbitrary; useful as a seed when walking the graph.
    pub fn some_neighbor(&self) -> Slope {
        let ext = self.num.extended_gcd(&self.den);
        debug_assert!(ext.gcd == BigInt::from(1));
        // x·p + y·q = 1, so (−y)/x satisfies p·x − q·(−y) = 1.
        Slope::new(-ext.y, ext.x).expect("Bézout coefficients are not both zero")
    }

    /// The fan around `v` from its neighbour `x` to its neighbour `y`: the
    /// unique minimal chain `x = z_0, z_1, …, z_T = y` of neighbours of `v`
    /// in which consecutive entries are adjacent to each other.
    ///
    /// The neighbours of `v` form a line `{x̂ + t·v : t ∈ ℤ}` once `x` is
    /// lifted to the representative `x̂ = ±x` with `det(v, x̂) = +1`; the fan
    /// walks that line one step at a time. Returns just `[x]` when `x = y`.
    pub fn fan_path(v: &Slope, x: &Slope, y: &Slope) -> Result<Vec<Slope>, FareyError> {
        for end in [x, y] {
            if !v.is_adjacent(end) {
                return Err(FareyError::NotInFan {
                    v: v.clone(),
                    x: end.clone(),
                });
            }
        }
        let lift = |s: &Slope| -> (BigInt, BigInt) {
            let d = &v.num * &s.den - &v.den * &s.num;
            debug_assert!(d.abs() == BigInt::from(1));
            if d == BigInt::from(1) {
                (s.num.clone(), s.den.clone())
            } else {
                (-&s.num, -&s.den)
            }
        };
        let (xn, xd) = lift(x);
        let (yn, yd) = lift(y);
        // ŷ − x̂ lies in the kernel of det(v, ·), which the primitive vector
        // v spans, so the step count t is exact in whichever coordinate of v
        // is nonzero.
        let t = if !v.num.is_zero() {
            let t = (&yn - &xn) / &v.num;
            debug_assert!(&xd + &t * &v.den == yd);
            t
        } else {
            (&yd - &xd) / &v.den
        };
        let step = if t.is_negative() { -1 } else { 1 };
        let count = t.abs();
        let mut path = Vec::new();
        let mut i = BigInt::from(0);
        loop {
            let offset = &i * BigInt::from(step);
            let z = Slope::new(&xn + &offset * &v.num, &xd + &offset * &v.den)
                .expect("fan entries are primitive vectors");
            path.push(z);
            if i == count {
                break;
            }
            i += 1;
        }
        Ok(path)
    }
}

impl Ord for Slope {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinity(), other.is_infinity()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            // Denominators are positive, so cross-multiplication preserves
            // the rational order.
            (false, false) => (&self.num * &other.den).cmp(&(&other.num * &self.den)),
        }
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Slope {
    type Err = FareyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse_err = || FareyError::Parse {
            input: s.to_owned(),
        };
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (
                n.trim().parse::<BigInt>().map_err(|_| parse_err())?,
                d.trim().parse::<BigInt>().map_err(|_| parse_err())?,
            ),
            None => (
                s.trim().parse::<BigInt>().map_err(|_| parse_err())?,
                BigInt::from(1),
            ),
        };
        Slope::new(num, den).map_err(|_| parse_err())
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Which small surface a slope model describes: the four-holed sphere
/// (`A`-moves, curves meeting twice) or the one-holed torus (`S`-moves,
/// curves meeting once). Both share the Farey graph; the kind determines
/// which move and relation labels apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ModelKind {
    /// Four-holed sphere model.
    #[serde(rename = "a")]
    A,
    /// One-holed torus model.
    #[serde(rename = "s")]
    S,
}

impl ModelKind {
    /// The surface whose decomposition curves the slopes parametrize.
    pub fn surface(&self) -> SurfaceType {
        match self {
            ModelKind::A => SurfaceType::new(0, 4).expect("four-holed sphere is decomposable"),
            ModelKind::S => SurfaceType::new(1, 1).expect("one-holed torus is decomposable"),
        }
    }

    /// The kind of elementary move an edge of the model represents.
    pub fn move_kind(&self) -> MoveKind {
        match self {
            ModelKind::A => MoveKind::A,
            ModelKind::S => MoveKind::S,
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelKind::A => write!(f, "a"),
            ModelKind::S => write!(f, "s"),
        }
    }
}

/// The infinite slope model: all slopes, with Farey adjacency as edges and
/// mediant triangles as 2-cells. Carries no storage — membership and
/// adjacency are arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FareyModel {
    pub kind: ModelKind,
}

impl FareyModel {
    pub fn new(kind: ModelKind) -> Self {
        FareyModel { kind }
    }

    /// Whether two slopes are joined by an elementary move.
    pub fn has_edge(&self, a: &Slope, b: &Slope) -> bool {
        a.is_adjacent(b)
    }

    /// The finite window of the complex with all coefficients bounded by
    /// `limit`.
    pub fn window(&self, limit: u32) -> FareySubcomplex {
        FareySubcomplex::window(self.kind, limit)
    }
}

/// A finite window of the slope model: every slope `p/q` with
/// `max(|p|, q) ≤ limit`, together with all edges and triangles among them.
///
/// Vertices, edge endpoints and triangle corners are sorted, so equal
/// windows serialize identically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FareySubcomplex {
    pub kind: ModelKind,
    pub limit: u32,
    pub vertices: Vec<Slope>,
    pub edges: Vec<(Slope, Slope)>,
    pub triangles: Vec<[Slope; 3]>,
}

impl FareySubcomplex {
    /// Builds the window by scanning reduced fractions up to the bound and
    /// testing adjacency pairwise; triangles come from edge completions that
    /// stay inside the window.
    pub fn window(kind: ModelKind, limit: u32) -> FareySubcomplex {
        let limit_i = i64::from(limit);
        let mut vertices = vec![Slope::infinity()];
        for q in 1..=limit_i {
            for p in -limit_i..=limit_i {
                if p.unsigned_abs().gcd(&(q as u64)) == 1 {
                    vertices.push(Slope::from_ints(p, q).expect("nonzero denominator"));
                }
            }
        }
        vertices.sort();

        let inside: std::collections::BTreeSet<&Slope> = vertices.iter().collect();
        let mut edges = Vec::new();
        for (i, a) in vertices.iter().enumerate() {
            for b in &vertices[i + 1..] {
                if a.is_adjacent(b) {
                    edges.push((a.clone(), b.clone()));
                }
            }
        }

        let mut triangles = std::collections::BTreeSet::new();
        for (a, b) in &edges {
            for c in a
                .triangle_completions(b)
                .expect("window edges are adjacent pairs")
            {
                if inside.contains(&c) {
                    let mut tri = [a.clone(), b.clone(), c];
                    tri.sort();
                    triangles.insert(tri);
                }
            }
        }

        FareySubcomplex {
            kind,
            limit,
            vertices,
            edges,
            triangles: triangles.into_iter().collect(),
        }
    }

    pub fn contains(&self, s: &Slope) -> bool {
        self.vertices.binary_search(s).is_ok()
    }

    pub fn has_edge(&self, a: &Slope, b: &Slope) -> bool {
        a.is_adjacent(b) && self.contains(a) && self.contains(b)
    }
}
