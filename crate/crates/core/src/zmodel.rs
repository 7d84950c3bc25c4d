//! Cyclically ordered vertex sets, their closures, and arcs.
//!
//! Two families of models are supported: a finite polygon with `n` vertices,
//! and `k` copies of the integers glued cyclically with one limit point in
//! each gap. The cyclic order is computed from a fixed linearisation of the
//! closure that starts at vertex `(0, 0)`:
//!
//! ```text
//! (0,0) (0,1) ... L(0) ... (1,-1) (1,0) ... L(1) ... L(k-1) ... (0,-2) (0,-1)
//! ```

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub block: u32,
    pub idx: i64,
}

impl Vertex {
    pub const fn new(block: u32, idx: i64) -> Self {
        Vertex { block, idx }
    }

    /// Vertex of block 0; the only block of a finite model.
    pub const fn at(idx: i64) -> Self {
        Vertex { block: 0, idx }
    }

    pub fn key(self) -> (u32, i64) {
        ClosurePoint::V(self).key()
    }
}

impl Ord for Vertex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Vertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.block == 0 {
            write!(f, "{}", self.idx)
        } else {
            write!(f, "{}:{}", self.block, self.idx)
        }
    }
}

/// A point of the closure: a vertex, or the limit point `L(gap)` sitting
/// between block `gap` and block `gap + 1 mod k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClosurePoint {
    V(Vertex),
    L(u32),
}

impl ClosurePoint {
    /// Position in the canonical linearisation. Independent of the model:
    /// negative indices of block 0 sort after every other point.
    pub fn key(self) -> (u32, i64) {
        match self {
            ClosurePoint::V(v) if v.block == 0 && v.idx < 0 => (u32::MAX, v.idx),
            ClosurePoint::V(v) => (2 * v.block, v.idx),
            ClosurePoint::L(g) => (2 * g + 1, 0),
        }
    }

    pub fn vertex(self) -> Option<Vertex> {
        match self {
            ClosurePoint::V(v) => Some(v),
            ClosurePoint::L(_) => None,
        }
    }
}

impl From<Vertex> for ClosurePoint {
    fn from(v: Vertex) -> Self {
        ClosurePoint::V(v)
    }
}

impl Ord for ClosurePoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for ClosurePoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ClosurePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosurePoint::V(v) => v.fmt(f),
            ClosurePoint::L(g) => write!(f, "L{g}"),
        }
    }
}

/// Unordered pair of distinct closure points, stored with `p < q` in the
/// linearisation so that equality is structural.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    p: ClosurePoint,
    q: ClosurePoint,
}

impl Arc {
    pub fn new(a: ClosurePoint, b: ClosurePoint) -> Result<Self> {
        match a.cmp(&b) {
            Ordering::Less => Ok(Arc { p: a, q: b }),
            Ordering::Greater => Ok(Arc { p: b, q: a }),
            Ordering::Equal => Err(Error::DegenerateArc(a.to_string())),
        }
    }

    pub fn verts(a: Vertex, b: Vertex) -> Result<Self> {
        Arc::new(a.into(), b.into())
    }

    /// Arc between two vertices of block 0. Panics on equal indices.
    pub fn of(a: i64, b: i64) -> Self {
        Arc::verts(Vertex::at(a), Vertex::at(b)).expect("distinct endpoints")
    }

    pub fn p(&self) -> ClosurePoint {
        self.p
    }

    pub fn q(&self) -> ClosurePoint {
        self.q
    }

    pub fn vertices(&self) -> Option<(Vertex, Vertex)> {
        Some((self.p.vertex()?, self.q.vertex()?))
    }

    pub fn has_endpoint(&self, x: ClosurePoint) -> bool {
        self.p == x || self.q == x
    }

    pub fn shares_endpoint(&self, other: &Arc) -> bool {
        self.has_endpoint(other.p) || self.has_endpoint(other.q)
    }

    /// The endpoint other than `x`.
    pub fn other(&self, x: ClosurePoint) -> Option<ClosurePoint> {
        if self.p == x {
            Some(self.q)
        } else if self.q == x {
            Some(self.p)
        } else {
            None
        }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.p, self.q)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArcKind {
    Diagonal,
    Edge,
    Virtual,
}

/// Maximal run of consecutive vertices inside one block; `None` bounds are
/// unbounded towards the adjacent limit point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Segment {
    pub block: u32,
    pub lo: Option<i64>,
    pub hi: Option<i64>,
}

impl Segment {
    pub fn contains(&self, idx: i64) -> bool {
        self.lo.is_none_or(|l| l <= idx) && self.hi.is_none_or(|h| idx <= h)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ZModel {
    Finite { n: u32 },
    Blocks { k: u32 },
}

impl ZModel {
    pub fn finite(n: u32) -> Result<Self> {
        if n < 4 {
            return Err(Error::Precondition(format!(
                "polygon needs n >= 4, got {n}"
            )));
        }
        Ok(ZModel::Finite { n })
    }

    pub fn blocks(k: u32) -> Result<Self> {
        if k < 1 {
            return Err(Error::Precondition("blocks model needs k >= 1".into()));
        }
        Ok(ZModel::Blocks { k })
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ZModel::Finite { .. })
    }

    /// Number of blocks: 1 for a polygon.
    pub fn block_count(&self) -> u32 {
        match *self {
            ZModel::Finite { .. } => 1,
            ZModel::Blocks { k } => k,
        }
    }

    pub fn limit_points(&self) -> Vec<ClosurePoint> {
        match *self {
            ZModel::Finite { .. } => Vec::new(),
            ZModel::Blocks { k } => (0..k).map(ClosurePoint::L).collect(),
        }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        match *self {
            ZModel::Finite { n } => v.block == 0 && v.idx >= 0 && v.idx < n as i64,
            ZModel::Blocks { k } => v.block < k,
        }
    }

    pub fn contains_point(&self, c: ClosurePoint) -> bool {
        match (c, *self) {
            (ClosurePoint::V(v), _) => self.contains(v),
            (ClosurePoint::L(_), ZModel::Finite { .. }) => false,
            (ClosurePoint::L(g), ZModel::Blocks { k }) => g < k,
        }
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::InvalidVertex(v.to_string()))
        }
    }

    pub fn check_point(&self, c: ClosurePoint) -> Result<()> {
        if self.contains_point(c) {
            Ok(())
        } else {
            Err(Error::InvalidVertex(c.to_string()))
        }
    }

    /// All vertices of a polygon, in order. Empty for block models.
    pub fn vertices(&self) -> Vec<Vertex> {
        match *self {
            ZModel::Finite { n } => (0..n as i64).map(Vertex::at).collect(),
            ZModel::Blocks { .. } => Vec::new(),
        }
    }

    /// Vertices with `|idx| <= w` in every block (all vertices of a polygon).
    pub fn window_vertices(&self, w: i64) -> Vec<Vertex> {
        match *self {
            ZModel::Finite { .. } => self.vertices(),
            ZModel::Blocks { k } => {
                let mut out = Vec::new();
                for b in 0..k {
                    out.extend((-w..=w).map(|i| Vertex::new(b, i)));
                }
                out.sort();
                out
            }
        }
    }

    pub fn succ(&self, v: Vertex) -> Vertex {
        match *self {
            ZModel::Finite { n } => Vertex::at((v.idx + 1).rem_euclid(n as i64)),
            ZModel::Blocks { .. } => Vertex::new(v.block, v.idx + 1),
        }
    }

    pub fn pred(&self, v: Vertex) -> Vertex {
        match *self {
            ZModel::Finite { n } => Vertex::at((v.idx - 1).rem_euclid(n as i64)),
            ZModel::Blocks { .. } => Vertex::new(v.block, v.idx - 1),
        }
    }

    /// Membership of `x` in the closed counterclockwise interval from `a`
    /// to `b`; rejects `a == b`.
    pub fn cyclically_between(
        &self,
        a: ClosurePoint,
        x: ClosurePoint,
        b: ClosurePoint,
    ) -> Result<bool> {
        self.check_point(a)?;
        self.check_point(x)?;
        self.check_point(b)?;
        if a == b {
            return Err(Error::Precondition(format!("degenerate interval at {a}")));
        }
        Ok(between(a, x, b))
    }

    pub fn are_neighbours(&self, a: Vertex, b: Vertex) -> bool {
        a != b && (self.succ(a) == b || self.pred(a) == b)
    }

    pub fn classify(&self, arc: &Arc) -> ArcKind {
        match arc.vertices() {
            Some((a, b)) if self.contains(a) && self.contains(b) => {
                if self.are_neighbours(a, b) {
                    ArcKind::Edge
                } else {
                    ArcKind::Diagonal
                }
            }
            _ => ArcKind::Virtual,
        }
    }

    pub fn is_diagonal(&self, arc: &Arc) -> bool {
        self.classify(arc) == ArcKind::Diagonal
    }

    pub fn is_edge(&self, arc: &Arc) -> bool {
        self.classify(arc) == ArcKind::Edge
    }

    /// Whether the arc `a` crosses the diagonal `t`: no shared endpoint and
    /// exactly one endpoint of `t` strictly inside the counterclockwise
    /// interval from `a.p` to `a.q`.
    pub fn crosses(&self, a: &Arc, t: &Arc) -> Result<bool> {
        self.check_point(a.p)?;
        self.check_point(a.q)?;
        if !self.is_diagonal(t) {
            return Err(Error::NotADiagonal(t.to_string()));
        }
        Ok(crosses_unchecked(a, t))
    }

    /// Decomposition of the closed interval `[lo, hi]` of vertices into
    /// per-block segments, in counterclockwise order from `lo`.
    pub fn segments(&self, lo: Vertex, hi: Vertex) -> Vec<Segment> {
        match *self {
            ZModel::Finite { n } => {
                if lo.idx <= hi.idx {
                    vec![Segment {
                        block: 0,
                        lo: Some(lo.idx),
                        hi: Some(hi.idx),
                    }]
                } else {
                    vec![
                        Segment {
                            block: 0,
                            lo: Some(lo.idx),
                            hi: Some(n as i64 - 1),
                        },
                        Segment {
                            block: 0,
                            lo: Some(0),
                            hi: Some(hi.idx),
                        },
                    ]
                }
            }
            ZModel::Blocks { k } => {
                if lo.block == hi.block && lo.idx <= hi.idx {
                    return vec![Segment {
                        block: lo.block,
                        lo: Some(lo.idx),
                        hi: Some(hi.idx),
                    }];
                }
                let mut out = vec![Segment {
                    block: lo.block,
                    lo: Some(lo.idx),
                    hi: None,
                }];
                let mut b = (lo.block + 1) % k;
                while b != hi.block {
                    out.push(Segment {
                        block: b,
                        lo: None,
                        hi: None,
                    });
                    b = (b + 1) % k;
                }
                out.push(Segment {
                    block: hi.block,
                    lo: None,
                    hi: Some(hi.idx),
                });
                out
            }
        }
    }

    /// Limit point immediately clockwise of block `b`.
    pub fn limit_before(&self, b: u32) -> ClosurePoint {
        let k = self.block_count();
        ClosurePoint::L((b + k - 1) % k)
    }
}

/// Closed counterclockwise interval membership; `a == b` means `{a}`.
pub fn between(a: ClosurePoint, x: ClosurePoint, b: ClosurePoint) -> bool {
    let (ka, kx, kb) = (a.key(), x.key(), b.key());
    if ka <= kb {
        ka <= kx && kx <= kb
    } else {
        kx >= ka || kx <= kb
    }
}

/// Open counterclockwise interval membership.
pub fn strictly_between(a: ClosurePoint, x: ClosurePoint, b: ClosurePoint) -> bool {
    x != a && x != b && between(a, x, b)
}

pub fn crosses_unchecked(a: &Arc, t: &Arc) -> bool {
    if a.shares_endpoint(t) {
        return false;
    }
    strictly_between(a.p, t.p, a.q) != strictly_between(a.p, t.q, a.q)
}

/// Sort key for the counterclockwise order starting at `origin`.
pub fn rel_key(origin: ClosurePoint, x: ClosurePoint) -> (u8, (u32, i64)) {
    let k = x.key();
    (u8::from(k < origin.key()), k)
}

/// Whether `(x0, x1, x2, x3)` are pairwise distinct and appear in this
/// counterclockwise order.
pub fn cyclic_chain(pts: [ClosurePoint; 4]) -> bool {
    for i in 0..4 {
        for j in i + 1..4 {
            if pts[i] == pts[j] {
                return false;
            }
        }
    }
    strictly_between(pts[0], pts[1], pts[2]) && strictly_between(pts[2], pts[3], pts[0])
}
