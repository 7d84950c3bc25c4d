//! c-vectors, dimension vectors of virtual arcs, exchange partners and the
//! realization of dimension vectors as c-vectors.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::homindex::{index, index_bar};
use crate::triangulation::{Family, Triangulation};
use crate::zmodel::{self, Arc, Vertex};

/// Tail indicator: every member of `family` from offset `from` on carries
/// `coeff`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TailIndicator {
    pub family: Family,
    pub from: u64,
    pub coeff: i64,
}

/// Integer functional on the diagonals of a fixed triangulation: finitely
/// many explicit values plus tail indicators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CoVector {
    explicit: BTreeMap<Arc, i64>,
    tails: Vec<TailIndicator>,
}

impl CoVector {
    pub fn zero() -> Self {
        CoVector::default()
    }

    pub fn new(
        explicit: impl IntoIterator<Item = (Arc, i64)>,
        tails: impl IntoIterator<Item = TailIndicator>,
    ) -> Self {
        let explicit = explicit.into_iter().filter(|(_, c)| *c != 0).collect();
        let mut tails: Vec<TailIndicator> = tails.into_iter().filter(|t| t.coeff != 0).collect();
        tails.sort();
        CoVector { explicit, tails }
    }

    /// `[a]*`.
    pub fn dual(a: Arc) -> Self {
        CoVector::new([(a, 1)], [])
    }

    pub fn explicit(&self) -> &BTreeMap<Arc, i64> {
        &self.explicit
    }

    pub fn tails(&self) -> &[TailIndicator] {
        &self.tails
    }

    pub fn eval(&self, t: &Triangulation, d: &Arc) -> i64 {
        let mut v = self.explicit.get(d).copied().unwrap_or(0);
        if !self.tails.is_empty() {
            if let Some((fam, m)) = t.family_index(d) {
                for ind in &self.tails {
                    if ind.family == fam && m >= ind.from {
                        v += ind.coeff;
                    }
                }
            }
        }
        v
    }

    pub fn scaled(&self, s: i64) -> CoVector {
        CoVector::new(
            self.explicit.iter().map(|(a, c)| (*a, c * s)),
            self.tails.iter().map(|t| TailIndicator {
                coeff: t.coeff * s,
                ..*t
            }),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.explicit.is_empty() && self.tails.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.explicit.values().all(|&c| c >= 0) && self.tails.iter().all(|t| t.coeff >= 0)
    }

    pub fn is_negative(&self) -> bool {
        self.scaled(-1).is_positive()
    }

    pub fn is_sign_coherent(&self) -> bool {
        self.is_positive() || self.is_negative()
    }

    /// Values on an ordered list of diagonals.
    pub fn dense(&self, t: &Triangulation, basis: &[Arc]) -> Vec<i64> {
        basis.iter().map(|d| self.eval(t, d)).collect()
    }

    pub fn support(&self) -> SupportDescriptor {
        SupportDescriptor {
            explicit: self.explicit.keys().copied().collect(),
            tails: self.tails.iter().map(|t| (t.family, t.from)).collect(),
        }
    }
}

/// Exact support of a [`CoVector`]: explicit diagonals plus tail families
/// from an offset on.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SupportDescriptor {
    pub explicit: BTreeSet<Arc>,
    pub tails: BTreeMap<Family, u64>,
}

impl SupportDescriptor {
    pub fn is_empty(&self) -> bool {
        self.explicit.is_empty() && self.tails.is_empty()
    }

    pub fn contains(&self, t: &Triangulation, d: &Arc) -> bool {
        if self.explicit.contains(d) {
            return true;
        }
        match t.family_index(d) {
            Some((fam, m)) => self.tails.get(&fam).is_some_and(|&from| m >= from),
            None => false,
        }
    }

    pub fn is_subset_of(&self, other: &SupportDescriptor, t: &Triangulation) -> bool {
        if !self.explicit.iter().all(|d| other.contains(t, d)) {
            return false;
        }
        self.tails
            .iter()
            .all(|(fam, &from)| match other.tails.get(fam) {
                Some(&of) => (from..of).all(|m| other.explicit.contains(&t.family_member(*fam, m))),
                None => false,
            })
    }
}

/// Crossing indicator of the virtual arc `a` on the diagonals of `t`.
pub fn dimension_vector(t: &Triangulation, a: &Arc) -> Result<CoVector> {
    let z = t.z();
    z.check_point(a.p())?;
    z.check_point(a.q())?;
    let mut explicit = Vec::new();
    for d in t.core() {
        if zmodel::crosses_unchecked(a, d) {
            explicit.push((*d, 1));
        }
    }
    let mut tails = Vec::new();
    let deep = t.depth_for(&[a.p(), a.q()]) as u64;
    for fam in t.families() {
        let hits: Vec<bool> = (0..=deep)
            .map(|m| zmodel::crosses_unchecked(a, &t.family_member(fam, m)))
            .collect();
        let mut from = hits.len();
        if hits[deep as usize] {
            while from > 0 && hits[from - 1] {
                from -= 1;
            }
            tails.push(TailIndicator {
                family: fam,
                from: from as u64,
                coeff: 1,
            });
        }
        for (m, &hit) in hits.iter().enumerate().take(from) {
            if hit {
                explicit.push((t.family_member(fam, m as u64), 1));
            }
        }
    }
    Ok(CoVector::new(explicit, tails))
}

fn require_member(t: &Triangulation, d: &Arc) -> Result<()> {
    if t.contains(d) {
        Ok(())
    } else {
        Err(Error::NotInTriangulation(d.to_string()))
    }
}

/// `c_T(u, U)` at `t`: the coefficient of `[u]` in `index_bar(U, t)`.
pub fn cvector_eval(tt: &Triangulation, tu: &Triangulation, u: &Arc, t: &Arc) -> Result<i64> {
    require_member(tu, u)?;
    require_member(tt, t)?;
    Ok(index_bar(tu, t)?.coeff(u))
}

/// `c_bar_T(u, U)` at `t`: the coefficient of `[u]` in `index(U, t)`.
pub fn cvector_bar_eval(tu: &Triangulation, u: &Arc, t: &Arc) -> Result<i64> {
    require_member(tu, u)?;
    Ok(index(tu, t)?.coeff(u))
}

/// The flip partner of a core diagonal together with the exchange
/// quadrilateral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exchange {
    pub partner: Arc,
    /// Middle terms of the two exchange triangles, each a pair of opposite
    /// sides of the quadrilateral (edges denote zero objects).
    pub middle: [[Arc; 2]; 2],
}

pub fn exchange_partner(tu: &Triangulation, d: &Arc) -> Result<Exchange> {
    let (_, star) = tu.flip(d)?;
    let (p, q) = d.vertices().expect("core diagonal");
    let (h1, h2) = star.vertices().expect("core diagonal");
    let s = |a: Vertex, b: Vertex| Arc::verts(a, b).expect("quadrilateral side");
    Ok(Exchange {
        partner: star,
        middle: [[s(p, h1), s(q, h2)], [s(p, h2), s(q, h1)]],
    })
}

/// The arc `{h0, h1}` whose dimension vector is the c-vector of `u` when
/// that c-vector is positive; `u*` is the exchange partner of `u`.
pub fn image_arc(t: &Triangulation, u: &Arc, ustar: &Arc) -> Result<Option<Arc>> {
    let z = t.z();
    if !z.is_diagonal(u) || !z.is_diagonal(ustar) {
        return Err(Error::Precondition(format!(
            "{u} and {ustar} must be diagonals"
        )));
    }
    if !zmodel::crosses_unchecked(u, ustar) {
        return Err(Error::Precondition(format!("{u} and {ustar} do not cross")));
    }
    let (b0, b1) = u.vertices().expect("diagonal");
    let (x, y) = ustar.vertices().expect("diagonal");
    let (a1m, a0m) = if zmodel::strictly_between(b0.into(), x.into(), b1.into()) {
        (x, y)
    } else {
        (y, x)
    };
    let (a0, a1) = (z.succ(a0m), z.succ(a1m));
    Ok(t.bridge_quadruple(a0, b0, a1, b1)?
        .map(|br| Arc::verts(br.h0, br.h1).expect("distinct")))
}

/// A c-vector with its sign and representing arc: the covector equals
/// `sign * dim(arc)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedCVector {
    pub sign: i8,
    pub arc: Arc,
    pub covector: CoVector,
}

fn sample_points(t: &Triangulation, c: &CoVector) -> Vec<Arc> {
    let mut out: Vec<Arc> = c.explicit().keys().copied().collect();
    for ind in c.tails() {
        out.extend((0..3).map(|j| t.family_member(ind.family, ind.from + j)));
    }
    out
}

/// `c_T(u, U)` as `(sign, arc)`.
pub fn cvector_full(tt: &Triangulation, tu: &Triangulation, u: &Arc) -> Result<SignedCVector> {
    if tt.z() != tu.z() {
        return Err(Error::Precondition(
            "triangulations live on different models".into(),
        ));
    }
    let ustar = tu.flip_partner(u)?;
    let mut samples = sample_points(tt, &dimension_vector(tt, u)?);
    samples.extend(sample_points(tt, &dimension_vector(tt, &ustar)?));
    samples.sort();
    samples.dedup();
    let mut sign = 0i64;
    for s in &samples {
        sign = cvector_eval(tt, tu, u, s)?.signum();
        if sign != 0 {
            break;
        }
    }
    if sign == 0 {
        for s in tt.window_diagonals(tt.tail_window()) {
            sign = cvector_eval(tt, tu, u, &s)?.signum();
            if sign != 0 {
                break;
            }
        }
    }
    let arc = match sign {
        1 => image_arc(tt, u, &ustar)?,
        -1 => image_arc(tt, &ustar, u)?,
        _ => {
            return Err(Error::Internal(format!(
                "c-vector of {u} vanishes on every sample"
            )))
        }
    }
    .ok_or_else(|| Error::Internal(format!("no image arc for {u}")))?;
    let covector = dimension_vector(tt, &arc)?.scaled(sign);
    Ok(SignedCVector {
        sign: sign as i8,
        arc,
        covector,
    })
}

/// A triangulation `U` and `u` in `U` with `c_T(u, U) = dim_T(v)`.
///
/// The quadrilateral construction yields `U0, u0` with
/// `c_bar_T(u0, U0) = dim_T(v)`; flipping `u0` negates that, and the
/// suspension turns `c_bar` into `-c`.
pub fn realize_dimension_vector(t: &Triangulation, v: &Arc) -> Result<(Triangulation, Arc)> {
    let z = t.z();
    if !z.is_diagonal(v) {
        return Err(Error::NotADiagonal(v.to_string()));
    }
    let dim = dimension_vector(t, v)?;
    if dim.is_zero() {
        return Err(Error::Precondition(format!("{v} crosses no diagonal")));
    }
    if !dim.tails().is_empty() {
        return Err(Error::Unsupported(format!(
            "{v} crosses infinitely many diagonals"
        )));
    }
    let (u0, tu0) = realize_bar(t, v, &dim)?;
    let (tu1, u1) = tu0.flip(&u0)?;
    let tu = tu1.suspend();
    let u = crate::homindex::suspend(&z, &u1)?;
    for d in t.window_diagonals(t.tail_window()) {
        let got = cvector_eval(t, &tu, &u, &d)?;
        if got != dim.eval(t, &d) {
            return Err(Error::Internal(format!(
                "realization of {v} disagrees at {d}"
            )));
        }
    }
    Ok((tu, u))
}

fn realize_bar(t: &Triangulation, v: &Arc, dim: &CoVector) -> Result<(Arc, Triangulation)> {
    let (v0, v1) = v.vertices().expect("diagonal");
    let br = t
        .crossing_quadruple(v)?
        .ok_or_else(|| Error::Precondition(format!("{v} crosses no diagonal")))?;
    let deleted: Vec<Arc> = dim.explicit().keys().copied().collect();
    let mut poly: BTreeSet<Vertex> = BTreeSet::new();
    for tri in t.triangles_of(&deleted)? {
        poly.extend(tri);
    }
    let z = t.z();
    let u = Arc::verts(br.i0, br.i1)?;
    let chords: Vec<Arc> = [u, Arc::verts(br.i0, v0)?, Arc::verts(br.i1, v1)?]
        .into_iter()
        .filter(|a| z.is_diagonal(a))
        .collect();
    let mut core: BTreeSet<Arc> = t
        .core()
        .iter()
        .filter(|a| !deleted.contains(a))
        .copied()
        .collect();
    let poly: Vec<Vertex> = poly.into_iter().collect();
    complete_polygon(&poly, &chords, &mut core);
    let tu = Triangulation::new(z, core, t.tails().clone())?;
    tu.ensure_valid()?;
    Ok((u, tu))
}

/// Triangulates the convex polygon `poly` (vertices in counterclockwise
/// order) using the given chords first, then fans each remaining face from
/// its least vertex.
fn complete_polygon(poly: &[Vertex], chords: &[Arc], out: &mut BTreeSet<Arc>) {
    if poly.len() < 4 {
        return;
    }
    let pos = |x: Vertex| poly.iter().position(|&y| y == x);
    for c in chords {
        let (a, b) = c.vertices().expect("chord");
        if let (Some(i), Some(j)) = (pos(a), pos(b)) {
            let (i, j) = (i.min(j), i.max(j));
            if j - i >= 2 && !(i == 0 && j == poly.len() - 1) {
                out.insert(*c);
                complete_polygon(&poly[i..=j], chords, out);
                let mut rest: Vec<Vertex> = poly[j..].to_vec();
                rest.extend_from_slice(&poly[..=i]);
                complete_polygon(&rest, chords, out);
                return;
            }
        }
    }
    let least = *poly.iter().min().expect("nonempty");
    let at = pos(least).expect("member");
    let n = poly.len();
    for off in 2..n - 1 {
        out.insert(Arc::verts(least, poly[(at + off) % n]).expect("distinct"));
    }
}
