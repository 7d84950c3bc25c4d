//! Triangulations: a finite core of diagonals plus one tail schema at each
//! limit point.
//!
//! Queries over intervals that run into a limit point are answered
//! symbolically. Every predicate used here (adjacency to a fixed vertex, or
//! to a fixed interval) is eventually constant along a block once the index
//! leaves a window that contains the core, the tail offsets and the query
//! vertices. Searches probe one point beyond that window instead of
//! enumerating towards the limit.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::zmodel::{self, cyclic_chain, Arc, ClosurePoint, Vertex, ZModel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tail {
    /// Diagonals `{base, (b, i)}` for `i >= right_from` and
    /// `{base, (b+1, j)}` for `j <= left_to`.
    Fountain {
        base: Vertex,
        right_from: i64,
        left_to: i64,
    },
    /// Diagonals `{(b, right_from+m), (b+1, left_to-m)}` and
    /// `{(b+1, left_to-m), (b, right_from+m+1)}` for `m >= 0`.
    Leapfrog { right_from: i64, left_to: i64 },
}

impl Tail {
    pub fn is_leapfrog(&self) -> bool {
        matches!(self, Tail::Leapfrog { .. })
    }
}

/// One of the two infinite sequences of diagonals making up a tail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Family {
    pub gap: u32,
    pub side: u8,
}

/// Set of vertices adjacent to a given vertex: a single point, or a ray
/// `[from, +inf)` / `(-inf, from]` inside one block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VSet {
    Point(Vertex),
    Ray {
        block: u32,
        from: i64,
        ascending: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// The vertices strictly counterclockwise from `p` before `q`.
    PQ,
    /// The vertices strictly counterclockwise from `q` before `p`.
    QP,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidationFailure {
    NotADiagonal {
        arc: Arc,
    },
    Duplicate {
        arc: Arc,
    },
    Crossing {
        first: Arc,
        second: Arc,
    },
    NonTriangularFace {
        side_of: Arc,
        region: Vec<Vertex>,
        truncated: bool,
    },
    MissingTail {
        gap: u32,
    },
    Unattained {
        detail: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub failure: Option<ValidationFailure>,
    /// Tail members checked per family, when the model has limit points.
    pub tail_window: Option<u64>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failure.is_none()
    }
}

/// The six vertices produced by the bridge construction: triangles
/// `{i0, h1, s1}` and `{i1, h0, s0}` of the triangulation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bridge {
    pub i0: Vertex,
    pub s0: Vertex,
    pub h0: Vertex,
    pub i1: Vertex,
    pub s1: Vertex,
    pub h1: Vertex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualQuiver {
    pub nodes: Vec<Arc>,
    pub arrows: Vec<(usize, usize)>,
    /// Tail members included per family, for block models.
    pub window: Option<u64>,
}

impl DualQuiver {
    pub fn is_acyclic(&self) -> bool {
        is_acyclic(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    z: ZModel,
    core: BTreeSet<Arc>,
    tails: BTreeMap<u32, Tail>,
    adj: BTreeMap<Vertex, Vec<Vertex>>,
}

impl Triangulation {
    /// Structural construction; semantic checks live in [`validate`].
    ///
    /// [`validate`]: Triangulation::validate
    pub fn new(
        z: ZModel,
        core: impl IntoIterator<Item = Arc>,
        tails: BTreeMap<u32, Tail>,
    ) -> Result<Self> {
        let core: BTreeSet<Arc> = core.into_iter().collect();
        let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
        for a in &core {
            let (p, q) = a
                .vertices()
                .ok_or_else(|| Error::LimitEndpoint(a.to_string()))?;
            z.check_vertex(p)?;
            z.check_vertex(q)?;
            adj.entry(p).or_default().push(q);
            adj.entry(q).or_default().push(p);
        }
        for (&gap, tail) in &tails {
            let k = match z {
                ZModel::Finite { .. } => {
                    return Err(Error::Precondition(
                        "a polygon has no limit points to carry tails".into(),
                    ))
                }
                ZModel::Blocks { k } => k,
            };
            if gap >= k {
                return Err(Error::InvalidVertex(ClosurePoint::L(gap).to_string()));
            }
            let next = (gap + 1) % k;
            match *tail {
                Tail::Fountain {
                    base,
                    right_from,
                    left_to,
                } => {
                    z.check_vertex(base)?;
                    if (base.block == gap && base.idx >= right_from)
                        || (base.block == next && base.idx <= left_to)
                    {
                        return Err(Error::Precondition(format!(
                            "fountain base {base} lies inside its own tail"
                        )));
                    }
                    if k == 1 && left_to >= right_from {
                        return Err(Error::Precondition("fountain rays overlap".into()));
                    }
                }
                Tail::Leapfrog {
                    right_from,
                    left_to,
                } => {
                    if k == 1 && left_to >= right_from {
                        return Err(Error::Precondition("leapfrog rays overlap".into()));
                    }
                }
            }
        }
        for list in adj.values_mut() {
            list.sort();
        }
        Ok(Triangulation {
            z,
            core,
            tails,
            adj,
        })
    }

    /// Triangulation of a polygon from index pairs.
    pub fn polygon(n: u32, diagonals: &[(i64, i64)]) -> Result<Self> {
        let z = ZModel::finite(n)?;
        let core = diagonals
            .iter()
            .map(|&(a, b)| Arc::verts(Vertex::at(a), Vertex::at(b)))
            .collect::<Result<Vec<_>>>()?;
        Triangulation::new(z, core, BTreeMap::new())
    }

    pub fn z(&self) -> ZModel {
        self.z
    }

    pub fn core(&self) -> &BTreeSet<Arc> {
        &self.core
    }

    pub fn tails(&self) -> &BTreeMap<u32, Tail> {
        &self.tails
    }

    pub fn families(&self) -> Vec<Family> {
        self.tails
            .keys()
            .flat_map(|&gap| [Family { gap, side: 0 }, Family { gap, side: 1 }])
            .collect()
    }

    fn next_block(&self, b: u32) -> u32 {
        (b + 1) % self.z.block_count()
    }

    /// Member `m` of a tail family.
    pub fn family_member(&self, fam: Family, m: u64) -> Arc {
        let m = m as i64;
        let b = fam.gap;
        let nb = self.next_block(b);
        let (x, y) = match self.tails[&fam.gap] {
            Tail::Fountain {
                base,
                right_from,
                left_to,
            } => {
                if fam.side == 0 {
                    (base, Vertex::new(b, right_from + m))
                } else {
                    (base, Vertex::new(nb, left_to - m))
                }
            }
            Tail::Leapfrog {
                right_from,
                left_to,
            } => {
                if fam.side == 0 {
                    (Vertex::new(b, right_from + m), Vertex::new(nb, left_to - m))
                } else {
                    (
                        Vertex::new(nb, left_to - m),
                        Vertex::new(b, right_from + m + 1),
                    )
                }
            }
        };
        Arc::verts(x, y).expect("tail endpoints are distinct by construction")
    }

    /// Family and offset of a tail diagonal, if `a` is one.
    pub fn family_index(&self, a: &Arc) -> Option<(Family, u64)> {
        let (x, y) = a.vertices()?;
        for (&gap, tail) in &self.tails {
            let nb = self.next_block(gap);
            for (u, w) in [(x, y), (y, x)] {
                match *tail {
                    Tail::Fountain {
                        base,
                        right_from,
                        left_to,
                    } => {
                        if u != base {
                            continue;
                        }
                        if w.block == gap && w.idx >= right_from {
                            return Some((Family { gap, side: 0 }, (w.idx - right_from) as u64));
                        }
                        if w.block == nb && w.idx <= left_to {
                            return Some((Family { gap, side: 1 }, (left_to - w.idx) as u64));
                        }
                    }
                    Tail::Leapfrog {
                        right_from,
                        left_to,
                    } => {
                        if u.block != gap || w.block != nb {
                            continue;
                        }
                        let d = u.idx - right_from;
                        let e = left_to - w.idx;
                        if d >= 0 && d == e {
                            return Some((Family { gap, side: 0 }, d as u64));
                        }
                        if d >= 1 && d - 1 == e {
                            return Some((Family { gap, side: 1 }, e as u64));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn contains(&self, a: &Arc) -> bool {
        self.core.contains(a) || self.family_index(a).is_some()
    }

    /// Largest absolute index among the core, the tail offsets and bases.
    pub fn radius(&self) -> i64 {
        let mut r = 0i64;
        for a in &self.core {
            if let Some((p, q)) = a.vertices() {
                r = r.max(p.idx.abs()).max(q.idx.abs());
            }
        }
        for tail in self.tails.values() {
            match *tail {
                Tail::Fountain {
                    base,
                    right_from,
                    left_to,
                } => {
                    r = r
                        .max(base.idx.abs())
                        .max(right_from.abs())
                        .max(left_to.abs());
                }
                Tail::Leapfrog {
                    right_from,
                    left_to,
                } => {
                    r = r.max(right_from.abs()).max(left_to.abs());
                }
            }
        }
        r
    }

    /// Window beyond which every adjacency predicate involving the given
    /// points is constant along each block.
    pub fn depth_for(&self, pts: &[ClosurePoint]) -> i64 {
        let extra = pts
            .iter()
            .filter_map(|c| c.vertex())
            .map(|v| v.idx.abs())
            .max()
            .unwrap_or(0);
        2 * (self.radius() + extra) + 8
    }

    /// Tail members enumerated per family by window-based checks.
    pub fn tail_window(&self) -> u64 {
        (2 * self.radius() + 8) as u64
    }

    /// Core diagonals together with tail members up to the window.
    pub fn window_diagonals(&self, members: u64) -> Vec<Arc> {
        let mut out: Vec<Arc> = self.core.iter().copied().collect();
        for fam in self.families() {
            for m in 0..=members {
                out.push(self.family_member(fam, m));
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Neighbours of `x` through diagonals of the triangulation.
    pub fn neighbors(&self, x: Vertex) -> Vec<VSet> {
        let mut out: Vec<VSet> = self
            .adj
            .get(&x)
            .map(|l| l.iter().map(|&y| VSet::Point(y)).collect())
            .unwrap_or_default();
        for (&gap, tail) in &self.tails {
            let nb = self.next_block(gap);
            match *tail {
                Tail::Fountain {
                    base,
                    right_from,
                    left_to,
                } => {
                    if x == base {
                        out.push(VSet::Ray {
                            block: gap,
                            from: right_from,
                            ascending: true,
                        });
                        out.push(VSet::Ray {
                            block: nb,
                            from: left_to,
                            ascending: false,
                        });
                        continue;
                    }
                    if (x.block == gap && x.idx >= right_from)
                        || (x.block == nb && x.idx <= left_to)
                    {
                        out.push(VSet::Point(base));
                    }
                }
                Tail::Leapfrog {
                    right_from,
                    left_to,
                } => {
                    if x.block == gap && x.idx >= right_from {
                        let m = x.idx - right_from;
                        out.push(VSet::Point(Vertex::new(nb, left_to - m)));
                        if m >= 1 {
                            out.push(VSet::Point(Vertex::new(nb, left_to - m + 1)));
                        }
                    }
                    if x.block == nb && x.idx <= left_to {
                        let m = left_to - x.idx;
                        out.push(VSet::Point(Vertex::new(gap, right_from + m)));
                        out.push(VSet::Point(Vertex::new(gap, right_from + m + 1)));
                    }
                }
            }
        }
        out
    }

    /// Whether `x` and `y` are joined by a diagonal of the triangulation, or
    /// by an edge of the model when `diagonals_only` is false.
    pub fn is_connected(&self, x: Vertex, y: Vertex, diagonals_only: bool) -> bool {
        if x == y {
            return false;
        }
        if self.z.are_neighbours(x, y) {
            return !diagonals_only;
        }
        match Arc::verts(x, y) {
            Ok(a) => self.contains(&a),
            Err(_) => false,
        }
    }

    /// Whether some diagonal of the triangulation joins `x` to `[lo, hi]`.
    pub fn connected_to_interval(&self, x: Vertex, lo: Vertex, hi: Vertex) -> bool {
        let segs = self.z.segments(lo, hi);
        self.neighbors(x).iter().any(|s| match *s {
            VSet::Point(y) => zmodel::between(lo.into(), y.into(), hi.into()),
            VSet::Ray {
                block,
                from,
                ascending,
            } => segs.iter().any(|g| {
                if g.block != block {
                    return false;
                }
                if ascending {
                    g.hi.is_none_or(|h| h >= from)
                } else {
                    g.lo.is_none_or(|l| l <= from)
                }
            }),
        })
    }

    /// First vertex of `[lo, hi]` (counterclockwise) satisfying `pred`.
    pub fn first_in(
        &self,
        lo: Vertex,
        hi: Vertex,
        w: i64,
        pred: impl Fn(Vertex) -> bool,
    ) -> Result<Option<Vertex>> {
        for seg in self.z.segments(lo, hi) {
            let b = seg.block;
            let start = match seg.lo {
                Some(l) => l,
                None => {
                    if pred(Vertex::new(b, -w - 1)) {
                        return Err(unattained(self.z.limit_before(b)));
                    }
                    -w
                }
            };
            let end = match seg.hi {
                Some(h) => h,
                None => (w + 1).max(start),
            };
            for i in start..=end {
                let v = Vertex::new(b, i);
                if pred(v) {
                    return Ok(Some(v));
                }
            }
        }
        Ok(None)
    }

    /// Last vertex of `[lo, hi]` (counterclockwise) satisfying `pred`.
    pub fn last_in(
        &self,
        lo: Vertex,
        hi: Vertex,
        w: i64,
        pred: impl Fn(Vertex) -> bool,
    ) -> Result<Option<Vertex>> {
        for seg in self.z.segments(lo, hi).into_iter().rev() {
            let b = seg.block;
            let end = match seg.hi {
                Some(h) => h,
                None => {
                    if pred(Vertex::new(b, w + 1)) {
                        return Err(unattained(ClosurePoint::L(b)));
                    }
                    w
                }
            };
            let start = match seg.lo {
                Some(l) => l,
                None => (-w - 1).min(end),
            };
            for i in (start..=end).rev() {
                let v = Vertex::new(b, i);
                if pred(v) {
                    return Ok(Some(v));
                }
            }
        }
        Ok(None)
    }

    fn check_query(&self, x: Vertex, lo: Vertex, hi: Vertex) -> Result<()> {
        self.z.check_vertex(x)?;
        self.z.check_vertex(lo)?;
        self.z.check_vertex(hi)?;
        if zmodel::between(lo.into(), x.into(), hi.into()) {
            return Err(Error::Precondition(format!("[{lo}, {hi}] contains {x}")));
        }
        Ok(())
    }

    /// Last vertex of `[lo, hi]` connected to `x`.
    pub fn sup_connected(
        &self,
        x: Vertex,
        lo: Vertex,
        hi: Vertex,
        diagonals_only: bool,
    ) -> Result<Option<Vertex>> {
        self.check_query(x, lo, hi)?;
        let w = self.depth_for(&[x.into(), lo.into(), hi.into()]);
        self.last_in(lo, hi, w, |y| self.is_connected(x, y, diagonals_only))
    }

    /// First vertex of `[lo, hi]` connected to `x`.
    pub fn inf_connected(
        &self,
        x: Vertex,
        lo: Vertex,
        hi: Vertex,
        diagonals_only: bool,
    ) -> Result<Option<Vertex>> {
        self.check_query(x, lo, hi)?;
        let w = self.depth_for(&[x.into(), lo.into(), hi.into()]);
        self.first_in(lo, hi, w, |y| self.is_connected(x, y, diagonals_only))
    }

    /// Endpoints of `d` as `(from, to)` so that `side` is the open interval
    /// counterclockwise from `from` to `to`.
    pub fn side_endpoints(d: &Arc, side: Side) -> Result<(Vertex, Vertex)> {
        let (p, q) = d
            .vertices()
            .ok_or_else(|| Error::LimitEndpoint(d.to_string()))?;
        Ok(match side {
            Side::PQ => (p, q),
            Side::QP => (q, p),
        })
    }

    /// The side of `d` containing `v`.
    pub fn side_containing(d: &Arc, v: Vertex) -> Result<Side> {
        if d.has_endpoint(v.into()) {
            return Err(Error::Precondition(format!("{v} is an endpoint of {d}")));
        }
        Ok(if zmodel::strictly_between(d.p(), v.into(), d.q()) {
            Side::PQ
        } else {
            Side::QP
        })
    }

    /// Third vertex of the triangle on `side` of `d`.
    pub fn third_vertex(&self, d: &Arc, side: Side) -> Result<Vertex> {
        let (from, to) = Self::side_endpoints(d, side)?;
        self.z.check_vertex(from)?;
        self.z.check_vertex(to)?;
        if !self.z.is_edge(d) && !self.contains(d) {
            return Err(Error::NotInTriangulation(d.to_string()));
        }
        self.face_vertex(from, to).map_err(|f| match f {
            FaceError::Empty => Error::Precondition(format!("no vertices on that side of {d}")),
            FaceError::Fail(e) => e,
            FaceError::NotTriangle(h) => Error::InvalidTriangulation(format!(
                "face on the side of {d} through {h} is not a triangle"
            )),
        })
    }

    fn face_vertex(&self, from: Vertex, to: Vertex) -> std::result::Result<Vertex, FaceError> {
        let lo = self.z.succ(from);
        if lo == to {
            return Err(FaceError::Empty);
        }
        let hi = self.z.pred(to);
        let w = self.depth_for(&[from.into(), to.into()]);
        let h = self
            .first_in(lo, hi, w, |y| self.is_connected(to, y, false))
            .map_err(FaceError::Fail)?
            .ok_or_else(|| {
                FaceError::Fail(Error::Internal("pred(to) is always connected to to".into()))
            })?;
        if self.is_connected(h, from, false) {
            Ok(h)
        } else {
            Err(FaceError::NotTriangle(h))
        }
    }

    fn region(&self, from: Vertex, to: Vertex, cap: usize) -> (Vec<Vertex>, bool) {
        let mut out = vec![from];
        let mut v = from;
        while v != to {
            if out.len() > cap {
                return (out, true);
            }
            v = self.z.succ(v);
            if v.block != from.block && v != to {
                return (out, true);
            }
            out.push(v);
        }
        (out, false)
    }

    /// Checks diagonality, non-crossing, triangular faces and tail coverage.
    pub fn validate(&self) -> ValidationReport {
        let window = if self.tails.is_empty() && self.z.is_finite() {
            None
        } else {
            Some(self.tail_window())
        };
        let failure = self.find_failure(window.unwrap_or(0));
        ValidationReport {
            failure,
            tail_window: window,
        }
    }

    fn find_failure(&self, members: u64) -> Option<ValidationFailure> {
        if let ZModel::Blocks { k } = self.z {
            for gap in 0..k {
                if !self.tails.contains_key(&gap) {
                    return Some(ValidationFailure::MissingTail { gap });
                }
            }
        }
        let mut arcs: Vec<Arc> = self.core.iter().copied().collect();
        for fam in self.families() {
            for m in 0..=members {
                arcs.push(self.family_member(fam, m));
            }
        }
        for a in &arcs {
            if !self.z.is_diagonal(a) {
                return Some(ValidationFailure::NotADiagonal { arc: *a });
            }
        }
        for a in &self.core {
            if self.family_index(a).is_some() {
                return Some(ValidationFailure::Duplicate { arc: *a });
            }
        }
        for (i, a) in arcs.iter().enumerate() {
            for b in &arcs[i + 1..] {
                if zmodel::crosses_unchecked(a, b) {
                    return Some(ValidationFailure::Crossing {
                        first: *a,
                        second: *b,
                    });
                }
            }
        }
        let mut sides: Vec<Arc> = arcs.clone();
        let edge_window = self.depth_for(&[]);
        for v in self.z.window_vertices(edge_window) {
            sides.push(Arc::verts(v, self.z.succ(v)).expect("edge"));
        }
        for d in &sides {
            for side in [Side::PQ, Side::QP] {
                let (from, to) = Self::side_endpoints(d, side).expect("vertex endpoints");
                match self.face_vertex(from, to) {
                    Ok(_) | Err(FaceError::Empty) => {}
                    Err(FaceError::NotTriangle(_)) => {
                        let (region, truncated) = self.region(from, to, 64);
                        return Some(ValidationFailure::NonTriangularFace {
                            side_of: *d,
                            region,
                            truncated,
                        });
                    }
                    Err(FaceError::Fail(e)) => {
                        return Some(ValidationFailure::Unattained {
                            detail: e.to_string(),
                        });
                    }
                }
            }
        }
        None
    }

    /// Validation as a `Result`, for callers that need a valid input.
    pub fn ensure_valid(&self) -> Result<()> {
        match self.validate().failure {
            None => Ok(()),
            Some(f) => Err(Error::InvalidTriangulation(format!("{f:?}"))),
        }
    }

    /// The six vertices of the bridge between `[a0, b0]` and `[a1, b1]`, or
    /// `None` when no diagonal joins the two intervals.
    pub fn bridge_quadruple(
        &self,
        a0: Vertex,
        b0: Vertex,
        a1: Vertex,
        b1: Vertex,
    ) -> Result<Option<Bridge>> {
        for v in [a0, b0, a1, b1] {
            self.z.check_vertex(v)?;
        }
        let chain = [self.z.pred(a0), b0, self.z.pred(a1), b1].map(ClosurePoint::from);
        if !cyclic_chain(chain) {
            return Err(Error::Precondition(format!(
                "intervals [{a0},{b0}] and [{a1},{b1}] are not separated"
            )));
        }
        let w = self.depth_for(&[a0.into(), b0.into(), a1.into(), b1.into()]);
        let i0 = match self.first_in(a0, b0, w, |x| self.connected_to_interval(x, a1, b1))? {
            Some(v) => v,
            None => return Ok(None),
        };
        let s1 = self
            .last_in(a1, b1, w, |y| self.is_connected(i0, y, true))?
            .ok_or_else(|| Error::Internal("bridge endpoint without partner".into()))?;
        let i1 = self
            .first_in(a1, b1, w, |x| self.connected_to_interval(x, a0, b0))?
            .ok_or_else(|| Error::Internal("asymmetric bridge".into()))?;
        let s0 = self
            .last_in(a0, b0, w, |y| self.is_connected(i1, y, true))?
            .ok_or_else(|| Error::Internal("bridge endpoint without partner".into()))?;
        let h0 = self.third_vertex(&Arc::verts(s0, i1)?, side_from(s0, i1))?;
        let h1 = self.third_vertex(&Arc::verts(s1, i0)?, side_from(s1, i0))?;
        Ok(Some(Bridge {
            i0,
            s0,
            h0,
            i1,
            s1,
            h1,
        }))
    }

    /// Bridge for the intervals on either side of the diagonal `v`; the
    /// third vertices coincide with the endpoints of `v`.
    pub fn crossing_quadruple(&self, v: &Arc) -> Result<Option<Bridge>> {
        if !self.z.is_diagonal(v) {
            return Err(Error::NotADiagonal(v.to_string()));
        }
        let (v0, v1) = v.vertices().expect("diagonal");
        let z = &self.z;
        self.bridge_quadruple(z.succ(v1), z.pred(v0), z.succ(v0), z.pred(v1))
    }

    /// Vertices `e` with `{e-, e+}` in the triangulation.
    pub fn ears(&self) -> Vec<Vertex> {
        let w = self.depth_for(&[]);
        self.z
            .window_vertices(w)
            .into_iter()
            .filter(|&e| self.is_connected(self.z.pred(e), self.z.succ(e), true))
            .collect()
    }

    /// The other diagonal of the quadrilateral formed by the two triangles
    /// adjacent to `d`; defined for tail diagonals too.
    pub fn flip_partner(&self, d: &Arc) -> Result<Arc> {
        if !self.contains(d) {
            return Err(Error::NotInTriangulation(d.to_string()));
        }
        let h1 = self.third_vertex(d, Side::PQ)?;
        let h2 = self.third_vertex(d, Side::QP)?;
        Arc::verts(h1, h2)
    }

    /// Replaces the core diagonal `d` by the other diagonal of the
    /// quadrilateral formed by its two adjacent triangles.
    pub fn flip(&self, d: &Arc) -> Result<(Triangulation, Arc)> {
        if !self.core.contains(d) {
            if self.family_index(d).is_some() {
                return Err(Error::TailDiagonal(d.to_string()));
            }
            return Err(Error::NotInTriangulation(d.to_string()));
        }
        let star = self.flip_partner(d)?;
        let mut core = self.core.clone();
        core.remove(d);
        core.insert(star);
        Ok((Triangulation::new(self.z, core, self.tails.clone())?, star))
    }

    /// Image under the suspension, which moves every vertex to its
    /// predecessor.
    pub fn suspend(&self) -> Triangulation {
        self.shift(-1)
    }

    pub fn unsuspend(&self) -> Triangulation {
        self.shift(1)
    }

    fn shift(&self, by: i64) -> Triangulation {
        let mv = |v: Vertex| {
            let mut w = v;
            for _ in 0..by.abs() {
                w = if by < 0 {
                    self.z.pred(w)
                } else {
                    self.z.succ(w)
                };
            }
            w
        };
        let core = self
            .core
            .iter()
            .map(|a| {
                let (p, q) = a.vertices().expect("core diagonals have vertex endpoints");
                Arc::verts(mv(p), mv(q)).expect("shift is a bijection")
            })
            .collect::<Vec<_>>();
        let tails = self
            .tails
            .iter()
            .map(|(&g, t)| {
                let t = match *t {
                    Tail::Fountain {
                        base,
                        right_from,
                        left_to,
                    } => Tail::Fountain {
                        base: mv(base),
                        right_from: right_from + by,
                        left_to: left_to + by,
                    },
                    Tail::Leapfrog {
                        right_from,
                        left_to,
                    } => Tail::Leapfrog {
                        right_from: right_from + by,
                        left_to: left_to + by,
                    },
                };
                (g, t)
            })
            .collect();
        Triangulation::new(self.z, core, tails).expect("shift preserves structure")
    }

    /// Triangles adjacent to the given diagonals, as sorted vertex triples.
    pub fn triangles_of(&self, diagonals: &[Arc]) -> Result<BTreeSet<[Vertex; 3]>> {
        let mut out = BTreeSet::new();
        for d in diagonals {
            let (p, q) = d
                .vertices()
                .ok_or_else(|| Error::LimitEndpoint(d.to_string()))?;
            for side in [Side::PQ, Side::QP] {
                let h = self.third_vertex(d, side)?;
                let mut tri = [p, q, h];
                tri.sort();
                out.insert(tri);
            }
        }
        Ok(out)
    }

    /// Dual quiver: within each triangle with vertices `x < y < z` in
    /// counterclockwise order, arrows `xy -> xz -> yz -> xy`, i.e. a side
    /// points to the side obtained by rotating it counterclockwise about
    /// their common vertex. Edge sides carry no node.
    pub fn dual_quiver(&self) -> Result<DualQuiver> {
        let window = if self.tails.is_empty() {
            None
        } else {
            Some(self.tail_window())
        };
        let nodes = self.window_diagonals(window.unwrap_or(0));
        let index: BTreeMap<Arc, usize> = nodes.iter().enumerate().map(|(i, a)| (*a, i)).collect();
        let mut arrows = BTreeSet::new();
        for [x, y, z] in self.triangles_of(&nodes)? {
            let xy = Arc::verts(x, y)?;
            let xz = Arc::verts(x, z)?;
            let yz = Arc::verts(y, z)?;
            for (s, t) in [(xy, xz), (xz, yz), (yz, xy)] {
                if let (Some(&i), Some(&j)) = (index.get(&s), index.get(&t)) {
                    arrows.insert((i, j));
                }
            }
        }
        Ok(DualQuiver {
            nodes,
            arrows: arrows.into_iter().collect(),
            window,
        })
    }
}

enum FaceError {
    Empty,
    NotTriangle(Vertex),
    Fail(Error),
}

fn unattained(limit: ClosurePoint) -> Error {
    Error::InvalidTriangulation(format!("extremum accumulates at {limit}"))
}

fn side_from(from: Vertex, to: Vertex) -> Side {
    if from < to {
        Side::PQ
    } else {
        Side::QP
    }
}

/// Cycle detection by repeatedly removing sources.
pub fn is_acyclic(q: &DualQuiver) -> bool {
    let n = q.nodes.len();
    let mut indeg = vec![0usize; n];
    let mut out = vec![Vec::new(); n];
    for &(s, t) in &q.arrows {
        indeg[t] += 1;
        out[s].push(t);
    }
    let mut stack: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut seen = 0;
    while let Some(i) = stack.pop() {
        seen += 1;
        for &j in &out[i] {
            indeg[j] -= 1;
            if indeg[j] == 0 {
                stack.push(j);
            }
        }
    }
    seen == n
}

/// Every triangulation of a polygon, sorted by core.
pub fn enumerate_polygon(n: u32) -> Result<Vec<Triangulation>> {
    let z = ZModel::finite(n)?;
    let verts: Vec<i64> = (0..n as i64).collect();
    let mut out: Vec<Triangulation> = triangulate_polygon(&verts)
        .into_iter()
        .map(|core| Triangulation::new(z, core, BTreeMap::new()))
        .collect::<Result<_>>()?;
    out.sort_by(|a, b| a.core.cmp(&b.core));
    Ok(out)
}

fn triangulate_polygon(vs: &[i64]) -> Vec<Vec<Arc>> {
    if vs.len() < 4 {
        return vec![Vec::new()];
    }
    // The side vs[0]-vs[last] lies in exactly one triangle, with apex vs[j].
    let last = vs.len() - 1;
    let mut out = Vec::new();
    for j in 1..last {
        let left = &vs[..=j];
        let right = &vs[j..];
        for l in triangulate_polygon(left) {
            for r in triangulate_polygon(right) {
                let mut core = l.clone();
                core.extend(r.iter().copied());
                if j > 1 {
                    core.push(Arc::of(vs[0], vs[j]));
                }
                if j < last - 1 {
                    core.push(Arc::of(vs[j], vs[last]));
                }
                out.push(core);
            }
        }
    }
    out
}
