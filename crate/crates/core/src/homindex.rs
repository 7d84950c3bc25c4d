//! Suspension, Hom/Ext predicates, zig-zag paths and the index map.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::triangulation::Triangulation;
use crate::zmodel::{self, rel_key, Arc, ClosurePoint, Vertex, ZModel};

pub const DEFAULT_STEP_CAP: usize = 1_000_000;

/// Finitely supported integer combination of diagonals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct KVector(BTreeMap<Arc, i64>);

impl KVector {
    pub fn zero() -> Self {
        KVector(BTreeMap::new())
    }

    pub fn basis(a: Arc) -> Self {
        let mut m = BTreeMap::new();
        m.insert(a, 1);
        KVector(m)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Arc, i64)>) -> Self {
        let mut k = KVector::zero();
        for (a, c) in terms {
            k.add_term(a, c);
        }
        k
    }

    pub fn add_term(&mut self, a: Arc, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.0.entry(a).or_insert(0);
        *e += c;
        if *e == 0 {
            self.0.remove(&a);
        }
    }

    pub fn coeff(&self, a: &Arc) -> i64 {
        self.0.get(a).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Arc, &i64)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scaled(&self, s: i64) -> KVector {
        KVector::from_terms(self.0.iter().map(|(a, c)| (*a, c * s)))
    }

    /// Coordinates against an ordered basis.
    pub fn dense(&self, basis: &[Arc]) -> Vec<i64> {
        basis.iter().map(|a| self.coeff(a)).collect()
    }
}

impl Add for &KVector {
    type Output = KVector;
    fn add(self, rhs: &KVector) -> KVector {
        let mut out = self.clone();
        for (a, c) in rhs.iter() {
            out.add_term(*a, *c);
        }
        out
    }
}

impl Sub for &KVector {
    type Output = KVector;
    fn sub(self, rhs: &KVector) -> KVector {
        self + &(-rhs)
    }
}

impl Neg for &KVector {
    type Output = KVector;
    fn neg(self) -> KVector {
        self.scaled(-1)
    }
}

impl fmt::Display for KVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, (a, c)) in self.0.iter().enumerate() {
            match (i, *c) {
                (0, 1) => write!(f, "[{a}]")?,
                (0, -1) => write!(f, "-[{a}]")?,
                (0, c) => write!(f, "{c}[{a}]")?,
                (_, 1) => write!(f, " + [{a}]")?,
                (_, -1) => write!(f, " - [{a}]")?,
                (_, c) if c < 0 => write!(f, " - {}[{a}]", -c)?,
                (_, c) => write!(f, " + {c}[{a}]")?,
            }
        }
        Ok(())
    }
}

fn arc_vertices(a: &Arc) -> Result<(Vertex, Vertex)> {
    a.vertices()
        .ok_or_else(|| Error::LimitEndpoint(a.to_string()))
}

/// `{z1, z2} -> {z1-, z2-}`.
pub fn suspend(z: &ZModel, a: &Arc) -> Result<Arc> {
    let (p, q) = arc_vertices(a)?;
    z.check_vertex(p)?;
    z.check_vertex(q)?;
    Arc::verts(z.pred(p), z.pred(q))
}

/// `{z1, z2} -> {z1+, z2+}`.
pub fn unsuspend(z: &ZModel, a: &Arc) -> Result<Arc> {
    let (p, q) = arc_vertices(a)?;
    z.check_vertex(p)?;
    z.check_vertex(q)?;
    Arc::verts(z.succ(p), z.succ(q))
}

fn require_diagonal(z: &ZModel, a: &Arc) -> Result<()> {
    if z.is_diagonal(a) {
        Ok(())
    } else {
        Err(Error::NotADiagonal(a.to_string()))
    }
}

pub fn ext_nonzero(z: &ZModel, x: &Arc, y: &Arc) -> Result<bool> {
    require_diagonal(z, x)?;
    z.crosses(x, y)
}

/// Nonzero morphisms `x -> y` exist iff, for some labelling,
/// `x0 <= y0 <= x1-- < x1 <= y1 <= x0--` cyclically.
pub fn hom_nonzero(z: &ZModel, x: &Arc, y: &Arc) -> Result<bool> {
    require_diagonal(z, x)?;
    require_diagonal(z, y)?;
    let (xa, xb) = arc_vertices(x)?;
    let (ya, yb) = arc_vertices(y)?;
    let pp = |v: Vertex| z.pred(z.pred(v));
    let within =
        |lo: Vertex, v: Vertex, hi: Vertex| zmodel::between(lo.into(), v.into(), hi.into());
    for (x0, x1) in [(xa, xb), (xb, xa)] {
        for (y0, y1) in [(ya, yb), (yb, ya)] {
            if within(x0, y0, pp(x1)) && within(x1, y1, pp(x0)) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZigZagPath {
    pub e: Vertex,
    pub f: Vertex,
    pub vertices: Vec<Vertex>,
}

impl ZigZagPath {
    /// Consecutive pairs `{e_m, e_{m+1}}` with their sign `(-1)^m`.
    pub fn steps(&self) -> impl Iterator<Item = (Vertex, Vertex, i64)> + '_ {
        self.vertices
            .windows(2)
            .enumerate()
            .map(|(m, w)| (w[0], w[1], if m % 2 == 0 { 1 } else { -1 }))
    }
}

pub fn zigzag(t: &Triangulation, e: Vertex, f: Vertex) -> Result<ZigZagPath> {
    zigzag_with_cap(t, e, f, DEFAULT_STEP_CAP)
}

/// Zig-zag path from `e` to `f`: odd vertices are the last neighbours
/// (edges allowed) of the previous even vertex between the previous odd
/// vertex and `f`; even vertices are the first diagonal neighbours of the
/// previous odd vertex between `f` and the previous even vertex.
pub fn zigzag_with_cap(t: &Triangulation, e: Vertex, f: Vertex, cap: usize) -> Result<ZigZagPath> {
    let z = t.z();
    z.check_vertex(e)?;
    z.check_vertex(f)?;
    if e == f {
        return Err(Error::DegenerateArc(e.to_string()));
    }
    let e1 = t
        .sup_connected(e, z.succ(e), f, false)?
        .ok_or_else(|| Error::Internal("successor is always an edge neighbour".into()))?;
    let mut path = vec![e, e1];
    let mut steps = 0usize;
    while *path.last().expect("nonempty") != f {
        steps += 1;
        if steps > cap {
            return Err(Error::StepCap {
                cap,
                context: format!("zig-zag from {e} to {f}"),
            });
        }
        let n = path.len();
        let odd = path[n - 1];
        let prev_even = path[n - 2];
        if z.succ(f) == prev_even {
            return Err(Error::InvalidTriangulation(format!(
                "zig-zag from {e} to {f} stalled at {odd}"
            )));
        }
        let even = t
            .inf_connected(odd, z.succ(f), z.pred(prev_even), true)?
            .ok_or_else(|| {
                Error::InvalidTriangulation(format!("zig-zag from {e} to {f} stalled at {odd}"))
            })?;
        let next = t
            .sup_connected(even, z.succ(odd), f, false)?
            .ok_or_else(|| {
                Error::InvalidTriangulation(format!("zig-zag from {e} to {f} stalled at {even}"))
            })?;
        path.push(even);
        path.push(next);
    }
    Ok(ZigZagPath {
        e,
        f,
        vertices: path,
    })
}

/// Index of the arc `a` with respect to `t`: the alternating sum of the
/// diagonal steps of the zig-zag path between its endpoints.
pub fn index(t: &Triangulation, a: &Arc) -> Result<KVector> {
    let (e, f) = arc_vertices(a)?;
    let z = t.z();
    let path = zigzag(t, e, f)?;
    let mut out = KVector::zero();
    for (x, y, sign) in path.steps() {
        let step = Arc::verts(x, y)?;
        if z.is_edge(&step) {
            continue;
        }
        if !t.contains(&step) {
            return Err(Error::Internal(format!(
                "zig-zag step {step} is not in the triangulation"
            )));
        }
        out.add_term(step, sign);
    }
    Ok(out)
}

/// Index for the opposite category: `-index(t, suspend(a))`.
pub fn index_bar(t: &Triangulation, a: &Arc) -> Result<KVector> {
    let s = suspend(&t.z(), a)?;
    Ok(-&index(t, &s)?)
}

/// Linear extension of [`index`] to combinations of arcs.
pub fn index_of(t: &Triangulation, k: &KVector) -> Result<KVector> {
    let mut out = KVector::zero();
    for (a, c) in k.iter() {
        out = &out + &index(t, a)?.scaled(*c);
    }
    Ok(out)
}

/// Linear extension of [`index_bar`].
pub fn index_bar_of(t: &Triangulation, k: &KVector) -> Result<KVector> {
    let mut out = KVector::zero();
    for (a, c) in k.iter() {
        out = &out + &index_bar(t, a)?.scaled(*c);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DualityDirection {
    /// `ind_T(ind_bar_U([t])) = [t]`
    IndexAfterIndexBar,
    /// `ind_bar_U(ind_T([u])) = [u]`
    IndexBarAfterIndex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityFailure {
    pub direction: DualityDirection,
    pub arc: Arc,
    pub intermediate: KVector,
    pub result: KVector,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DualityReport {
    pub checked: usize,
    pub failures: Vec<DualityFailure>,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that `ind_T` and `ind_bar_U` are mutually inverse on the given
/// basis windows of `T` and `U`.
pub fn check_duality(
    tt: &Triangulation,
    tu: &Triangulation,
    window_t: &[Arc],
    window_u: &[Arc],
) -> Result<DualityReport> {
    if tt.z() != tu.z() {
        return Err(Error::Precondition(
            "triangulations live on different models".into(),
        ));
    }
    let mut rep = DualityReport::default();
    for t in window_t {
        if !tt.contains(t) {
            return Err(Error::NotInTriangulation(t.to_string()));
        }
        let mid = index_bar_of(tu, &KVector::basis(*t))?;
        let back = index_of(tt, &mid)?;
        rep.checked += 1;
        if back != KVector::basis(*t) {
            rep.failures.push(DualityFailure {
                direction: DualityDirection::IndexAfterIndexBar,
                arc: *t,
                intermediate: mid,
                result: back,
            });
        }
    }
    for u in window_u {
        if !tu.contains(u) {
            return Err(Error::NotInTriangulation(u.to_string()));
        }
        let mid = index_of(tt, &KVector::basis(*u))?;
        let back = index_bar_of(tu, &mid)?;
        rep.checked += 1;
        if back != KVector::basis(*u) {
            rep.failures.push(DualityFailure {
                direction: DualityDirection::IndexBarAfterIndex,
                arc: *u,
                intermediate: mid,
                result: back,
            });
        }
    }
    Ok(rep)
}

/// Duality on the full core of two polygon triangulations, or on the
/// default windows of block models.
pub fn check_duality_default(tt: &Triangulation, tu: &Triangulation) -> Result<DualityReport> {
    let wt = tt.window_diagonals(tt.tail_window());
    let wu = tu.window_diagonals(tu.tail_window());
    if tt.tails().is_empty() {
        check_duality(
            tt,
            tu,
            &tt.core().iter().copied().collect::<Vec<_>>(),
            &tu.core().iter().copied().collect::<Vec<_>>(),
        )
    } else {
        check_duality(tt, tu, &wt, &wu)
    }
}

/// Violations of the structural properties of a zig-zag path; empty when
/// the path is sound. Extremality is re-checked by brute force over the
/// window `|idx| <= w` (all vertices of a polygon).
pub fn audit_zigzag(t: &Triangulation, path: &ZigZagPath, w: i64) -> Vec<String> {
    let z = t.z();
    let v = &path.vertices;
    let mut bad = Vec::new();
    if v.first() != Some(&path.e) || v.last() != Some(&path.f) || !v.len().is_multiple_of(2) {
        bad.push("endpoints or parity".to_string());
        return bad;
    }
    let e: ClosurePoint = path.e.into();
    let key = |x: Vertex| rel_key(e, x.into());
    let odd: Vec<Vertex> = v.iter().skip(1).step_by(2).copied().collect();
    let even: Vec<Vertex> = v.iter().step_by(2).copied().collect();
    for w2 in odd.windows(2) {
        if key(w2[0]) >= key(w2[1]) {
            bad.push(format!("odd vertices not increasing at {}", w2[0]));
        }
    }
    for w2 in even[1..].windows(2) {
        if key(w2[0]) <= key(w2[1]) {
            bad.push(format!("even vertices not decreasing at {}", w2[0]));
        }
    }
    if let Some(&last_even) = even[1..].last() {
        if key(last_even) <= key(path.f) {
            bad.push("even vertices must lie beyond f".into());
        }
    }
    for (x, y, _) in path.steps() {
        let a = Arc::verts(x, y).expect("distinct");
        if !z.is_edge(&a) && !t.contains(&a) {
            bad.push(format!("step {a} is neither an edge nor in T"));
        }
    }
    let pool = z.window_vertices(w);
    let in_closed =
        |lo: Vertex, x: Vertex, hi: Vertex| zmodel::between(lo.into(), x.into(), hi.into());
    for m in 1..v.len() {
        let prev = v[m - 1];
        let expect = if m % 2 == 1 {
            let lo = if m == 1 {
                z.succ(path.e)
            } else {
                z.succ(v[m - 2])
            };
            pool.iter()
                .copied()
                .filter(|&x| in_closed(lo, x, path.f) && t.is_connected(prev, x, false))
                .max_by_key(|&x| rel_key(lo.into(), x.into()))
        } else {
            let lo = z.succ(path.f);
            let hi = z.pred(v[m - 2]);
            pool.iter()
                .copied()
                .filter(|&x| in_closed(lo, x, hi) && t.is_connected(prev, x, true))
                .min_by_key(|&x| rel_key(lo.into(), x.into()))
        };
        if expect != Some(v[m]) {
            bad.push(format!(
                "e_{m} = {} but brute force gives {:?}",
                v[m], expect
            ));
        }
    }
    bad
}

/// Exact determinant of a square integer matrix (fraction-free
/// elimination).
pub fn determinant(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}
