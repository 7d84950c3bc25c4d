//! Supports, the sets X_{e,f}, ordered crossing sets and their root
//! systems, and the classification of maximal pairs.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::cvector::{dimension_vector, CoVector};
use crate::error::{Error, Result};
use crate::triangulation::{Family, Triangulation};
use crate::zmodel::{self, rel_key, Arc, ClosurePoint, Vertex};

/// Exact support of a covector.
pub use crate::cvector::SupportDescriptor;

pub fn support(c: &CoVector) -> SupportDescriptor {
    c.support()
}

/// Whether the nonzero dimension vector `c` lies in X_{e,f}.
pub fn in_x(t: &Triangulation, e: ClosurePoint, f: ClosurePoint, c: &CoVector) -> Result<bool> {
    if c.is_zero() {
        return Err(Error::Precondition("zero covector".into()));
    }
    let ef = dimension_vector(t, &Arc::new(e, f)?)?;
    Ok(c.support().is_subset_of(&ef.support(), t))
}

/// Ears together with limit points of leapfrog tails.
pub fn special_points(t: &Triangulation) -> Vec<ClosurePoint> {
    let mut out: Vec<ClosurePoint> = t.ears().into_iter().map(ClosurePoint::V).collect();
    for (&g, tail) in t.tails() {
        if tail.is_leapfrog() {
            out.push(ClosurePoint::L(g));
        }
    }
    out.sort();
    out
}

/// Pairs of special points whose arc crosses at least one diagonal.
pub fn maximal_pairs(t: &Triangulation) -> Result<Vec<Arc>> {
    let pts = special_points(t);
    let mut out = Vec::new();
    for (i, &x) in pts.iter().enumerate() {
        for &y in &pts[i + 1..] {
            let a = Arc::new(x, y)?;
            if !dimension_vector(t, &a)?.is_zero() {
                out.push(a);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Piece {
    Single(Arc),
    /// Tail members accumulating at a limit point; several families are
    /// interleaved when they approach from the same side.
    Ray {
        ascending: bool,
        families: Vec<(Family, u64)>,
    },
}

/// Address of an element of Y: a piece and the offset inside it. For a
/// descending ray, offset 0 is its largest element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct YPos {
    pub piece: usize,
    pub n: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum YElem {
    NegInf,
    At(YPos),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderDescriptor {
    Finite(usize),
    Infinite {
        head: bool,
        middle: usize,
        tail: bool,
    },
}

impl fmt::Display for OrderDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            OrderDescriptor::Finite(n) => write!(f, "finite({n})"),
            OrderDescriptor::Infinite { head, middle, tail } => {
                let mut parts = Vec::new();
                if head {
                    parts.push("ω".to_string());
                }
                parts.extend(std::iter::repeat_n("ℤ".to_string(), middle));
                if tail {
                    parts.push("ω*".to_string());
                }
                write!(f, "{}", parts.join(" + "))
            }
        }
    }
}

/// `eps_pos - eps_neg` with `pos > neg` in Y_ext.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Root {
    pub pos: YElem,
    pub neg: YElem,
}

/// Diagonals of a triangulation crossing `{e, f}`, ordered along the chord
/// from `e` to `f`.
#[derive(Clone, Debug)]
pub struct OrderedCrossingSet {
    t: Triangulation,
    e: ClosurePoint,
    f: ClosurePoint,
    pieces: Vec<Piece>,
}

impl OrderedCrossingSet {
    pub fn e(&self) -> ClosurePoint {
        self.e
    }

    pub fn f(&self) -> ClosurePoint {
        self.f
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Whether `a` lies before `b` along the chord. Both must cross it.
    fn chord_cmp(&self, a: &Arc, b: &Arc) -> Ordering {
        chord_cmp(self.e, self.f, a, b)
    }

    fn ray_prefix(&self, ascending: bool, families: &[(Family, u64)], count: u64) -> Vec<Arc> {
        if let [(fam, from)] = families {
            return (0..count)
                .map(|j| self.t.family_member(*fam, from + j))
                .collect();
        }
        let mut all: Vec<Arc> = families
            .iter()
            .flat_map(|&(fam, from)| (0..count).map(move |j| (fam, from + j)))
            .map(|(fam, m)| self.t.family_member(fam, m))
            .collect();
        all.sort_by(|a, b| {
            let o = self.chord_cmp(a, b);
            if ascending {
                o
            } else {
                o.reverse()
            }
        });
        all.truncate(count as usize);
        all
    }

    pub fn element(&self, p: YPos) -> Arc {
        match &self.pieces[p.piece] {
            Piece::Single(a) => *a,
            Piece::Ray {
                ascending,
                families,
            } => self.ray_prefix(*ascending, families, p.n + 1)[p.n as usize],
        }
    }

    pub fn cmp_pos(&self, a: YPos, b: YPos) -> Ordering {
        a.piece
            .cmp(&b.piece)
            .then_with(|| match &self.pieces[a.piece] {
                Piece::Ray {
                    ascending: false, ..
                } => b.n.cmp(&a.n),
                _ => a.n.cmp(&b.n),
            })
    }

    pub fn cmp_elem(&self, a: YElem, b: YElem) -> Ordering {
        match (a, b) {
            (YElem::NegInf, YElem::NegInf) => Ordering::Equal,
            (YElem::NegInf, _) => Ordering::Less,
            (_, YElem::NegInf) => Ordering::Greater,
            (YElem::At(x), YElem::At(y)) => self.cmp_pos(x, y),
        }
    }

    pub fn position_of(&self, a: &Arc) -> Option<YPos> {
        let fi = self.t.family_index(a);
        for (i, piece) in self.pieces.iter().enumerate() {
            match piece {
                Piece::Single(s) if s == a => return Some(YPos { piece: i, n: 0 }),
                Piece::Single(_) => {}
                Piece::Ray {
                    ascending,
                    families,
                } => {
                    let (fam, m) = match fi {
                        Some(x) => x,
                        None => continue,
                    };
                    let from = match families.iter().find(|(f, _)| *f == fam) {
                        Some(&(_, from)) => from,
                        None => continue,
                    };
                    if m < from {
                        continue;
                    }
                    if families.len() == 1 {
                        return Some(YPos {
                            piece: i,
                            n: m - from,
                        });
                    }
                    let bound = (m - from + 1) * families.len() as u64;
                    let pre = self.ray_prefix(*ascending, families, bound);
                    return pre.iter().position(|x| x == a).map(|n| YPos {
                        piece: i,
                        n: n as u64,
                    });
                }
            }
        }
        None
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn first(&self) -> Option<YPos> {
        match self.pieces.first()? {
            Piece::Ray {
                ascending: false, ..
            } => None,
            _ => Some(YPos { piece: 0, n: 0 }),
        }
    }

    pub fn last(&self) -> Option<YPos> {
        let i = self.pieces.len().checked_sub(1)?;
        match &self.pieces[i] {
            Piece::Ray {
                ascending: true, ..
            } => None,
            _ => Some(YPos { piece: i, n: 0 }),
        }
    }

    pub fn has_least(&self) -> bool {
        self.first().is_some()
    }

    pub fn pred(&self, p: YPos) -> Option<YPos> {
        match &self.pieces[p.piece] {
            Piece::Ray {
                ascending: false, ..
            } => Some(YPos { n: p.n + 1, ..p }),
            Piece::Ray {
                ascending: true, ..
            } if p.n > 0 => Some(YPos { n: p.n - 1, ..p }),
            _ => {
                let i = p.piece.checked_sub(1)?;
                match &self.pieces[i] {
                    Piece::Ray {
                        ascending: true, ..
                    } => None,
                    _ => Some(YPos { piece: i, n: 0 }),
                }
            }
        }
    }

    pub fn succ(&self, p: YPos) -> Option<YPos> {
        match &self.pieces[p.piece] {
            Piece::Ray {
                ascending: true, ..
            } => Some(YPos { n: p.n + 1, ..p }),
            Piece::Ray {
                ascending: false, ..
            } if p.n > 0 => Some(YPos { n: p.n - 1, ..p }),
            _ => {
                let i = p.piece + 1;
                match self.pieces.get(i)? {
                    Piece::Ray {
                        ascending: false, ..
                    } => None,
                    _ => Some(YPos { piece: i, n: 0 }),
                }
            }
        }
    }

    /// Every element has an immediate predecessor and successor, except a
    /// least and a greatest element.
    pub fn is_sequential(&self) -> bool {
        for (i, piece) in self.pieces.iter().enumerate() {
            match piece {
                Piece::Ray {
                    ascending: true, ..
                } => {
                    if let Some(next) = self.pieces.get(i + 1) {
                        if !matches!(
                            next,
                            Piece::Ray {
                                ascending: false,
                                ..
                            }
                        ) {
                            return false;
                        }
                    }
                }
                Piece::Ray {
                    ascending: false, ..
                } => {
                    if i > 0
                        && !matches!(
                            self.pieces[i - 1],
                            Piece::Ray {
                                ascending: true,
                                ..
                            }
                        )
                    {
                        return false;
                    }
                }
                Piece::Single(_) => {}
            }
        }
        true
    }

    pub fn descriptor(&self) -> OrderDescriptor {
        if self.pieces.iter().all(|p| matches!(p, Piece::Single(_))) {
            return OrderDescriptor::Finite(self.pieces.len());
        }
        let mut segments: Vec<(bool, bool)> = Vec::new();
        let mut open = true;
        for p in &self.pieces {
            let desc = matches!(
                p,
                Piece::Ray {
                    ascending: false,
                    ..
                }
            );
            let asc = matches!(
                p,
                Piece::Ray {
                    ascending: true,
                    ..
                }
            );
            if open {
                segments.push((desc, false));
                open = false;
            }
            if asc {
                segments.last_mut().expect("segment").1 = true;
                open = true;
            }
        }
        let head = matches!(segments.first(), Some((false, true)));
        let tail = matches!(segments.last(), Some((true, false)));
        let middle = segments.iter().filter(|s| s.0 && s.1).count();
        OrderDescriptor::Infinite { head, middle, tail }
    }

    /// Length of Y when finite.
    pub fn len(&self) -> Option<usize> {
        match self.descriptor() {
            OrderDescriptor::Finite(n) => Some(n),
            _ => None,
        }
    }

    /// All elements of a finite Y, or the singles plus `per_ray` elements
    /// of each ray, in increasing order.
    pub fn window(&self, per_ray: u64) -> Vec<YPos> {
        let mut out = Vec::new();
        for (i, p) in self.pieces.iter().enumerate() {
            match p {
                Piece::Single(_) => out.push(YPos { piece: i, n: 0 }),
                Piece::Ray { ascending, .. } => {
                    let mut block: Vec<YPos> = (0..per_ray).map(|n| YPos { piece: i, n }).collect();
                    if !ascending {
                        block.reverse();
                    }
                    out.extend(block);
                }
            }
        }
        out
    }

    /// Y_ext: Y with a least element `NegInf` adjoined when Y has a least
    /// element.
    pub fn ext_window(&self, per_ray: u64) -> Vec<YElem> {
        let mut out = Vec::new();
        if self.has_least() {
            out.push(YElem::NegInf);
        }
        out.extend(self.window(per_ray).into_iter().map(YElem::At));
        out
    }

    /// The first `first` and the last `last` elements of Y_ext, where they
    /// exist, in increasing order.
    pub fn ext_head_tail(&self, first: usize, last: usize) -> Vec<YElem> {
        let mut head = Vec::new();
        if self.has_least() && first > 0 {
            head.push(YElem::NegInf);
            let mut cur = self.first();
            while head.len() < first {
                match cur {
                    Some(p) => {
                        head.push(YElem::At(p));
                        cur = self.succ(p);
                    }
                    None => break,
                }
            }
        }
        let mut tail = Vec::new();
        let mut cur = if last > 0 { self.last() } else { None };
        while tail.len() < last {
            match cur {
                Some(p) => {
                    tail.push(YElem::At(p));
                    cur = self.pred(p);
                }
                None => break,
            }
        }
        if cur.is_none() && tail.len() < last && self.has_least() {
            tail.push(YElem::NegInf);
        }
        tail.reverse();
        for x in tail {
            if !head.contains(&x) {
                head.push(x);
            }
        }
        head
    }

    /// Isomorphism Y_ext -> Y for infinite Y with a least element: shift the
    /// initial omega-part by one and send `NegInf` to the least element.
    pub fn ext_to_y(&self, x: YElem) -> Result<YPos> {
        if self.len().is_some() {
            return Err(Error::Precondition("Y is finite".into()));
        }
        let least = match self.first() {
            Some(p) => p,
            None => {
                return match x {
                    YElem::At(p) => Ok(p),
                    YElem::NegInf => Err(Error::Precondition("Y has no least element".into())),
                }
            }
        };
        let head_end = self
            .pieces
            .iter()
            .position(|p| {
                matches!(
                    p,
                    Piece::Ray {
                        ascending: true,
                        ..
                    }
                )
            })
            .ok_or_else(|| {
                Error::Internal("infinite Y with a least element needs an ascending ray".into())
            })?;
        match x {
            YElem::NegInf => Ok(least),
            YElem::At(p) if p.piece <= head_end => self
                .succ(p)
                .ok_or_else(|| Error::Internal("initial part has successors".into())),
            YElem::At(p) => Ok(p),
        }
    }

    pub fn label(&self, x: YElem) -> String {
        match x {
            YElem::NegInf => "-inf".to_string(),
            YElem::At(p) => self.element(p).to_string(),
        }
    }
}

fn chord_cmp(e: ClosurePoint, f: ClosurePoint, a: &Arc, b: &Arc) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    let split = |t: &Arc| {
        if zmodel::strictly_between(e, t.p(), f) {
            (t.p(), t.q())
        } else {
            (t.q(), t.p())
        }
    };
    let (pa, qa) = split(a);
    let (pb, qb) = split(b);
    if rel_key(e, pa) <= rel_key(e, pb) && rel_key(f, qa) >= rel_key(f, qb) {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// The diagonals of `t` crossing `{e, f}`, ordered from `e` to `f`.
pub fn crossing_order(
    t: &Triangulation,
    e: ClosurePoint,
    f: ClosurePoint,
) -> Result<OrderedCrossingSet> {
    let dim = dimension_vector(t, &Arc::new(e, f)?)?;
    if dim.is_zero() {
        return Err(Error::Precondition(format!(
            "{{{e},{f}}} crosses no diagonal"
        )));
    }
    let mut pieces: Vec<Piece> = dim.explicit().keys().map(|a| Piece::Single(*a)).collect();
    let deep = t.depth_for(&[e, f]) as u64;
    let mut rays: BTreeMap<(u32, bool), Vec<(Family, u64)>> = BTreeMap::new();
    for ind in dim.tails() {
        let m = ind.from + deep;
        let a = t.family_member(ind.family, m);
        let b = t.family_member(ind.family, m + 1);
        let ascending = chord_cmp(e, f, &a, &b) == Ordering::Less;
        rays.entry((ind.family.gap, ascending))
            .or_default()
            .push((ind.family, ind.from));
    }
    for ((_, ascending), families) in rays {
        pieces.push(Piece::Ray {
            ascending,
            families,
        });
    }
    let mut y = OrderedCrossingSet {
        t: t.clone(),
        e,
        f,
        pieces: Vec::new(),
    };
    let mut keyed: Vec<(Arc, Piece)> = pieces
        .into_iter()
        .map(|p| {
            let first = match &p {
                Piece::Single(a) => *a,
                Piece::Ray {
                    ascending,
                    families,
                } => y.ray_prefix(*ascending, families, 1)[0],
            };
            (first, p)
        })
        .collect();
    keyed.sort_by(|a, b| chord_cmp(e, f, &a.0, &b.0));
    y.pieces = keyed.into_iter().map(|(_, p)| p).collect();
    if !y.is_sequential() {
        return Err(Error::Internal(format!(
            "crossing set of {{{e},{f}}} is not sequential"
        )));
    }
    Ok(y)
}

/// `psi([a, b]) = eps_b - eps_{pred(a)}`, with `NegInf` when `a` is least.
pub fn psi(y: &OrderedCrossingSet, a: YPos, b: YPos) -> Result<Root> {
    if y.cmp_pos(a, b) == Ordering::Greater {
        return Err(Error::Precondition(
            "interval endpoints out of order".into(),
        ));
    }
    let neg = match y.pred(a) {
        Some(p) => YElem::At(p),
        None if y.first() == Some(a) => YElem::NegInf,
        None => return Err(Error::Internal("element without predecessor".into())),
    };
    Ok(Root {
        pos: YElem::At(b),
        neg,
    })
}

/// Root as a vector of the lattice spanned by Y_ext.
pub fn root_vector(r: &Root) -> BTreeMap<YElemKey, i64> {
    let mut m = BTreeMap::new();
    m.insert(YElemKey::from(r.pos), 1);
    *m.entry(YElemKey::from(r.neg)).or_insert(0) -= 1;
    m.retain(|_, c| *c != 0);
    m
}

/// Hashable, totally ordered stand-in for a [`YElem`] in lattice vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum YElemKey {
    NegInf,
    At(usize, u64),
}

impl From<YElem> for YElemKey {
    fn from(x: YElem) -> Self {
        match x {
            YElem::NegInf => YElemKey::NegInf,
            YElem::At(p) => YElemKey::At(p.piece, p.n),
        }
    }
}

/// Root attached to an arc `v` with `dim(v)` in X_{e,f}.
pub fn root_of_arc(t: &Triangulation, y: &OrderedCrossingSet, v: &Arc) -> Result<Root> {
    let c = dimension_vector(t, v)?;
    if !in_x(t, y.e, y.f, &c)? {
        return Err(Error::Precondition(format!(
            "dim {v} is not in X_{{{},{}}}",
            y.e, y.f
        )));
    }
    let mut cands: Vec<Arc> = c.explicit().keys().copied().collect();
    for ind in c.tails() {
        cands.push(t.family_member(ind.family, ind.from));
    }
    let pos: Vec<YPos> = cands
        .iter()
        .map(|a| {
            y.position_of(a)
                .ok_or_else(|| Error::Internal(format!("{a} missing from Y")))
        })
        .collect::<Result<_>>()?;
    let lo = *pos
        .iter()
        .min_by(|a, b| y.cmp_pos(**a, **b))
        .expect("nonzero");
    let hi = *pos
        .iter()
        .max_by(|a, b| y.cmp_pos(**a, **b))
        .expect("nonzero");
    psi(y, lo, hi)
}

/// All roots `eps_x - eps_w` with `x > w` among the given elements.
pub fn delta_plus(y: &OrderedCrossingSet, elems: &[YElem]) -> Vec<Root> {
    let mut sorted = elems.to_vec();
    sorted.sort_by(|a, b| y.cmp_elem(*a, *b));
    sorted.dedup();
    let mut out = Vec::new();
    for (i, &lo) in sorted.iter().enumerate() {
        for &hi in &sorted[i + 1..] {
            out.push(Root { pos: hi, neg: lo });
        }
    }
    out
}

pub fn root_system_label(d: &OrderDescriptor) -> String {
    match *d {
        OrderDescriptor::Finite(n) => format!("Δ⁺(sl{})", subscript(n + 1)),
        other => format!("Borel of sl_∞ for Y = {other}"),
    }
}

fn subscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).expect("digit") as usize])
        .collect()
}

/// Three diagonals cutting off three special points, and the triangle of
/// the triangulation they force.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Football {
    pub black: [Arc; 3],
    pub internal_triangle: [Vertex; 3],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalityReport {
    pub acyclic: bool,
    pub maximal_pairs: Vec<Arc>,
    pub football: Option<Football>,
    pub quiver_window: Option<u64>,
}

impl MaximalityReport {
    /// Acyclic quivers have exactly one maximal pair.
    pub fn consistent(&self) -> bool {
        !self.acyclic || self.maximal_pairs.len() == 1
    }
}

/// Vertices just before and just after a special point, joined by a
/// diagonal of the triangulation.
fn flanks(t: &Triangulation, x: ClosurePoint) -> (Vertex, Vertex) {
    let z = t.z();
    match x {
        ClosurePoint::V(v) => (z.pred(v), z.succ(v)),
        ClosurePoint::L(g) => {
            let m = t.depth_for(&[]) as u64 + 1;
            let a = t.family_member(Family { gap: g, side: 0 }, m);
            let (p, q) = a.vertices().expect("tail diagonal");
            if p.block == g && !(g == 0 && p.idx < 0) {
                (p, q)
            } else {
                (q, p)
            }
        }
    }
}

pub fn football(t: &Triangulation) -> Result<Option<Football>> {
    let pts = special_points(t);
    if pts.len() < 3 {
        return Ok(None);
    }
    let (b0, a2) = flanks(t, pts[0]);
    let (b2, a1) = flanks(t, pts[1]);
    let (b1, a0) = flanks(t, pts[2]);
    let black = [
        Arc::verts(b1, a0)?,
        Arc::verts(b0, a2)?,
        Arc::verts(b2, a1)?,
    ];
    let br = match t.bridge_quadruple(a0, b0, a1, b1)? {
        Some(br) => br,
        None => return Ok(None),
    };
    let mut tri = [br.i1, br.h0, br.s0];
    tri.sort();
    Ok(Some(Football {
        black,
        internal_triangle: tri,
    }))
}

pub fn unique_maximal_iff_acyclic_report(t: &Triangulation) -> Result<MaximalityReport> {
    let q = t.dual_quiver()?;
    let pairs = maximal_pairs(t)?;
    let fb = if pairs.len() >= 2 { football(t)? } else { None };
    Ok(MaximalityReport {
        acyclic: q.is_acyclic(),
        maximal_pairs: pairs,
        football: fb,
        quiver_window: q.window,
    })
}

/// Per-pair entry of a decomposition report.
#[derive(Clone, Debug)]
pub struct PairReport {
    pub pair: Arc,
    pub descriptor: OrderDescriptor,
    pub label: String,
    /// Arcs `v` with `dim(v)` in X_{e,f} and their roots, one per distinct
    /// dimension vector, within the window.
    pub table: Vec<(Arc, Root)>,
    pub crossing: OrderedCrossingSet,
}

/// Maximal pairs with order descriptors, labels and the arc-to-root table
/// over vertices with `|idx| <= window` (all arcs of a polygon).
pub fn decompose(t: &Triangulation, window: i64) -> Result<Vec<PairReport>> {
    let verts = t.z().window_vertices(window);
    let mut arcs = Vec::new();
    for (i, &a) in verts.iter().enumerate() {
        for &b in &verts[i + 1..] {
            let arc = Arc::verts(a, b)?;
            if t.z().is_diagonal(&arc) {
                arcs.push((arc, dimension_vector(t, &arc)?));
            }
        }
    }
    let mut out = Vec::new();
    for pair in maximal_pairs(t)? {
        let y = crossing_order(t, pair.p(), pair.q())?;
        let descriptor = y.descriptor();
        let mut seen: Vec<&CoVector> = Vec::new();
        let mut table = Vec::new();
        for (arc, c) in &arcs {
            if c.is_zero() || seen.contains(&c) || !in_x(t, pair.p(), pair.q(), c)? {
                continue;
            }
            seen.push(c);
            table.push((*arc, root_of_arc(t, &y, arc)?));
        }
        out.push(PairReport {
            pair,
            descriptor,
            label: root_system_label(&descriptor),
            table,
            crossing: y,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::Tail;
    use crate::zmodel::ZModel;

    fn fan5() -> Triangulation {
        Triangulation::polygon(5, &[(0, 2), (0, 3)]).unwrap()
    }

    fn hex() -> Triangulation {
        Triangulation::polygon(6, &[(0, 2), (2, 4), (4, 0)]).unwrap()
    }

    fn fountain() -> Triangulation {
        let mut tails = BTreeMap::new();
        tails.insert(
            0,
            Tail::Fountain {
                base: Vertex::at(0),
                right_from: 2,
                left_to: -2,
            },
        );
        Triangulation::new(ZModel::blocks(1).unwrap(), [], tails).unwrap()
    }

    fn leapfrog() -> Triangulation {
        let mut tails = BTreeMap::new();
        tails.insert(
            0,
            Tail::Leapfrog {
                right_from: 3,
                left_to: 0,
            },
        );
        Triangulation::new(ZModel::blocks(1).unwrap(), [Arc::of(0, 2)], tails).unwrap()
    }

    fn pt(i: i64) -> ClosurePoint {
        ClosurePoint::V(Vertex::at(i))
    }

    #[test]
    fn support_examples() {
        let t = fan5();
        let s13 = dimension_vector(&t, &Arc::of(1, 3)).unwrap().support();
        let s14 = dimension_vector(&t, &Arc::of(1, 4)).unwrap().support();
        assert_eq!(s13.explicit.len(), 1);
        assert_eq!(s14.explicit.len(), 2);
        assert!(s13.is_subset_of(&s14, &t));
        assert!(!s14.is_subset_of(&s13, &t));
        assert!(CoVector::zero().support().is_empty());
        let f = fountain();
        let s = dimension_vector(&f, &Arc::of(2, -2)).unwrap().support();
        assert_eq!(s.tails.len(), 2);
        assert!(s.explicit.is_empty());
    }

    #[test]
    fn in_x_examples() {
        let t = hex();
        let c = dimension_vector(&t, &Arc::of(1, 4)).unwrap();
        assert!(in_x(&t, pt(1), pt(5), &c).unwrap());
        let c = dimension_vector(&t, &Arc::of(3, 0)).unwrap();
        assert_eq!(c.support().explicit.len(), 1);
        assert!(!in_x(&t, pt(1), pt(5), &c).unwrap());
        let full = dimension_vector(&t, &Arc::of(1, 5)).unwrap();
        assert!(in_x(&t, pt(1), pt(5), &full).unwrap());
        assert!(in_x(&t, pt(1), pt(5), &CoVector::zero()).is_err());
    }

    #[test]
    fn maximal_pair_examples() {
        assert_eq!(maximal_pairs(&fan5()).unwrap(), vec![Arc::of(1, 4)]);
        assert_eq!(
            maximal_pairs(&hex()).unwrap(),
            vec![Arc::of(1, 3), Arc::of(1, 5), Arc::of(3, 5)]
        );
        assert_eq!(maximal_pairs(&fountain()).unwrap(), vec![Arc::of(1, -1)]);
        let lf = maximal_pairs(&leapfrog()).unwrap();
        assert_eq!(lf, vec![Arc::new(pt(1), ClosurePoint::L(0)).unwrap()]);
    }

    #[test]
    fn crossing_order_examples() {
        let y = crossing_order(&fan5(), pt(1), pt(4)).unwrap();
        assert_eq!(y.descriptor(), OrderDescriptor::Finite(2));
        assert_eq!(y.element(YPos { piece: 0, n: 0 }), Arc::of(0, 2));
        let y = crossing_order(&fountain(), pt(1), pt(-1)).unwrap();
        assert_eq!(
            y.descriptor(),
            OrderDescriptor::Infinite {
                head: true,
                middle: 0,
                tail: true
            }
        );
        assert_eq!(y.descriptor().to_string(), "ω + ω*");
        let w: Vec<Arc> = y.window(3).into_iter().map(|p| y.element(p)).collect();
        let expect: Vec<Arc> = [2, 3, 4, -4, -3, -2]
            .iter()
            .map(|&n| Arc::of(0, n))
            .collect();
        assert_eq!(w, expect);
        assert!(y.has_least());
        let y = crossing_order(&fan5(), pt(1), pt(3)).unwrap();
        assert_eq!(y.descriptor(), OrderDescriptor::Finite(1));
        assert!(crossing_order(&fan5(), pt(1), pt(2)).is_err());
    }

    #[test]
    fn leapfrog_rays_interleave() {
        let t = leapfrog();
        let y = crossing_order(&t, pt(1), ClosurePoint::L(0)).unwrap();
        let w: Vec<Arc> = y.window(4).into_iter().map(|p| y.element(p)).collect();
        assert_eq!(w[0], Arc::of(0, 2));
        assert_eq!(
            &w[1..],
            &[Arc::of(0, 3), Arc::of(0, 4), Arc::of(-1, 4), Arc::of(-1, 5)]
        );
        assert_eq!(
            y.descriptor(),
            OrderDescriptor::Infinite {
                head: true,
                middle: 0,
                tail: false
            }
        );
    }

    #[test]
    fn psi_examples() {
        let t = fan5();
        let y = crossing_order(&t, pt(1), pt(4)).unwrap();
        let (a, b) = (YPos { piece: 0, n: 0 }, YPos { piece: 1, n: 0 });
        assert_eq!(
            psi(&y, a, a).unwrap(),
            Root {
                pos: YElem::At(a),
                neg: YElem::NegInf
            }
        );
        assert_eq!(
            psi(&y, a, b).unwrap(),
            Root {
                pos: YElem::At(b),
                neg: YElem::NegInf
            }
        );
        assert_eq!(
            psi(&y, b, b).unwrap(),
            Root {
                pos: YElem::At(b),
                neg: YElem::At(a)
            }
        );
        assert!(psi(&y, b, a).is_err());
        let f = fountain();
        let y = crossing_order(&f, pt(1), pt(-1)).unwrap();
        let r = root_of_arc(&f, &y, &Arc::of(2, -2)).unwrap();
        assert_eq!(y.label(r.pos), "{0,-3}");
        assert_eq!(y.label(r.neg), "{0,2}");
    }

    #[test]
    fn root_of_arc_examples() {
        let t = fan5();
        let y = crossing_order(&t, pt(1), pt(4)).unwrap();
        let r = root_of_arc(&t, &y, &Arc::of(1, 3)).unwrap();
        assert_eq!(
            (y.label(r.pos), r.neg),
            ("{0,2}".to_string(), YElem::NegInf)
        );
        let r = root_of_arc(&t, &y, &Arc::of(1, 4)).unwrap();
        assert_eq!(
            (y.label(r.pos), r.neg),
            ("{0,3}".to_string(), YElem::NegInf)
        );
        let h = hex();
        let y = crossing_order(&h, pt(1), pt(5)).unwrap();
        let r = root_of_arc(&h, &y, &Arc::of(1, 4)).unwrap();
        assert_eq!(
            (y.label(r.pos), r.neg),
            ("{0,2}".to_string(), YElem::NegInf)
        );
        assert!(root_of_arc(&h, &y, &Arc::of(3, 0)).is_err());
    }

    #[test]
    fn delta_plus_counts() {
        let y = crossing_order(&fan5(), pt(1), pt(4)).unwrap();
        assert_eq!(delta_plus(&y, &y.ext_window(0)).len(), 3);
        let f = fountain();
        let y = crossing_order(&f, pt(1), pt(-1)).unwrap();
        let w = y.ext_head_tail(3, 3);
        assert_eq!(w.len(), 6);
        assert_eq!(w[0], YElem::NegInf);
        assert_eq!(delta_plus(&y, &w).len(), 15);
    }

    #[test]
    fn ext_isomorphism_is_order_preserving() {
        let f = fountain();
        let y = crossing_order(&f, pt(1), pt(-1)).unwrap();
        let w = y.ext_window(5);
        let img: Vec<YPos> = w.iter().map(|&x| y.ext_to_y(x).unwrap()).collect();
        for p in img.windows(2) {
            assert_eq!(y.cmp_pos(p[0], p[1]), Ordering::Less);
        }
    }

    #[test]
    fn maximality_reports() {
        let r = unique_maximal_iff_acyclic_report(&fan5()).unwrap();
        assert!(r.acyclic && r.maximal_pairs.len() == 1 && r.consistent());
        let r = unique_maximal_iff_acyclic_report(&hex()).unwrap();
        assert!(!r.acyclic);
        assert_eq!(r.maximal_pairs.len(), 3);
        let fb = r.football.unwrap();
        assert_eq!(
            fb.internal_triangle,
            [Vertex::at(0), Vertex::at(2), Vertex::at(4)]
        );
        let r = unique_maximal_iff_acyclic_report(&fountain()).unwrap();
        assert!(r.acyclic && r.maximal_pairs.len() == 1);
    }

    #[test]
    fn decompose_labels() {
        let rep = decompose(&hex(), 0).unwrap();
        assert_eq!(rep.len(), 3);
        for p in &rep {
            assert_eq!(p.label, "Δ⁺(sl₃)");
            assert_eq!(p.table.len(), 3);
        }
        let rep = decompose(&fountain(), 6).unwrap();
        assert_eq!(rep[0].label, "Borel of sl_∞ for Y = ω + ω*");
    }
}
