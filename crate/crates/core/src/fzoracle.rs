//! Matrix mutation with principal coefficients, tracking c- and g-vectors
//! along flip sequences of a polygon triangulation.
//!
//! Rows of `c` and `g` are indexed by nodes; row `k` holds the c-vector
//! (resp. g-vector) of the diagonal currently labelling node `k`, in the
//! basis of the initial triangulation.

use crate::error::{Error, Result};
use crate::triangulation::Triangulation;
use crate::zmodel::Arc;

pub type Matrix = Vec<Vec<i64>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedMatrix {
    pub b: Matrix,
    pub c: Matrix,
    pub g: Matrix,
    pub labels: Vec<Arc>,
}

fn identity(m: usize) -> Matrix {
    (0..m)
        .map(|i| (0..m).map(|j| i64::from(i == j)).collect())
        .collect()
}

fn pos(x: i64) -> i64 {
    x.max(0)
}

fn row_sign(r: &[i64]) -> Option<i64> {
    let has_pos = r.iter().any(|&x| x > 0);
    let has_neg = r.iter().any(|&x| x < 0);
    match (has_pos, has_neg) {
        (true, false) => Some(1),
        (false, true) => Some(-1),
        _ => None,
    }
}

impl SeedMatrix {
    /// Exchange matrix from the dual quiver, `b[s][t] = #(s -> t) - #(t -> s)`.
    pub fn from_triangulation(t: &Triangulation) -> Result<SeedMatrix> {
        if !t.z().is_finite() {
            return Err(Error::Unsupported("mutation oracle needs a polygon".into()));
        }
        let q = t.dual_quiver()?;
        let m = q.nodes.len();
        let mut b = vec![vec![0i64; m]; m];
        for &(s, u) in &q.arrows {
            b[s][u] += 1;
            b[u][s] -= 1;
        }
        Ok(SeedMatrix {
            b,
            c: identity(m),
            g: identity(m),
            labels: q.nodes,
        })
    }

    pub fn rank(&self) -> usize {
        self.b.len()
    }

    pub fn is_skew_symmetric(&self) -> bool {
        let m = self.rank();
        (0..m).all(|i| (0..m).all(|j| self.b[i][j] == -self.b[j][i]))
    }

    pub fn c_rows_sign_coherent(&self) -> bool {
        self.c.iter().all(|r| row_sign(r).is_some())
    }

    /// `sum_i g[u][i] * c[v][i]`; the identity matrix for every seed.
    pub fn pairing(&self) -> Matrix {
        let m = self.rank();
        (0..m)
            .map(|u| {
                (0..m)
                    .map(|v| (0..m).map(|i| self.g[u][i] * self.c[v][i]).sum())
                    .collect()
            })
            .collect()
    }

    /// Mutation at node `k`. The diagonal label is left unchanged; see
    /// [`flip_path_to_mutation_path`] for relabelling.
    #[allow(clippy::needless_range_loop)]
    pub fn mutate(&self, k: usize) -> Result<SeedMatrix> {
        let m = self.rank();
        if k >= m {
            return Err(Error::Precondition(format!("node {k} out of range 0..{m}")));
        }
        let eps = row_sign(&self.c[k])
            .ok_or_else(|| Error::Internal(format!("c-vector of node {k} is not sign coherent")))?;
        let b = &self.b;
        let mut nb = b.clone();
        for i in 0..m {
            for j in 0..m {
                nb[i][j] = if i == k || j == k {
                    -b[i][j]
                } else {
                    b[i][j] + b[i][k].signum() * pos(b[i][k] * b[k][j])
                };
            }
        }
        let mut nc = self.c.clone();
        for j in 0..m {
            if j == k {
                nc[j] = self.c[k].iter().map(|x| -x).collect();
            } else {
                let f = pos(eps * b[k][j]);
                for i in 0..m {
                    nc[j][i] += f * self.c[k][i];
                }
            }
        }
        let mut ng = self.g.clone();
        for i in 0..m {
            let mut x = -self.g[k][i];
            for j in 0..m {
                x += pos(-eps * b[j][k]) * self.g[j][i];
            }
            ng[k][i] = x;
        }
        let out = SeedMatrix {
            b: nb,
            c: nc,
            g: ng,
            labels: self.labels.clone(),
        };
        if !out.c_rows_sign_coherent() {
            return Err(Error::Internal(
                "mutation produced a c-vector that is not sign coherent".into(),
            ));
        }
        Ok(out)
    }
}

/// Nodes mutated along a flip sequence, and the state reached.
#[derive(Clone, Debug)]
pub struct MutationPath {
    pub nodes: Vec<usize>,
    /// Diagonal at each node after all flips.
    pub labels: Vec<Arc>,
    pub end: Triangulation,
}

pub fn flip_path_to_mutation_path(t: &Triangulation, flips: &[Arc]) -> Result<MutationPath> {
    let mut labels = t.dual_quiver()?.nodes;
    let mut cur = t.clone();
    let mut nodes = Vec::with_capacity(flips.len());
    for d in flips {
        let k = labels
            .iter()
            .position(|a| a == d)
            .ok_or_else(|| Error::NotInTriangulation(d.to_string()))?;
        let (next, star) = cur.flip(d)?;
        labels[k] = star;
        nodes.push(k);
        cur = next;
    }
    Ok(MutationPath {
        nodes,
        labels,
        end: cur,
    })
}

/// Seed reached from `t` by the given flips, rows labelled by the diagonals
/// of the final triangulation.
pub fn run_flips(t: &Triangulation, flips: &[Arc]) -> Result<(SeedMatrix, MutationPath)> {
    let path = flip_path_to_mutation_path(t, flips)?;
    let mut s = SeedMatrix::from_triangulation(t)?;
    for &k in &path.nodes {
        s = s.mutate(k)?;
    }
    s.labels = path.labels.clone();
    Ok((s, path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cvector::cvector_full;
    use crate::homindex::index;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fan5() -> Triangulation {
        Triangulation::polygon(5, &[(0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn exchange_matrices() {
        let s = SeedMatrix::from_triangulation(&fan5()).unwrap();
        assert_eq!(s.b.iter().flatten().map(|x| x.abs()).sum::<i64>(), 2);
        assert!(s.is_skew_symmetric());
        let sq = Triangulation::polygon(4, &[(0, 2)]).unwrap();
        assert_eq!(
            SeedMatrix::from_triangulation(&sq).unwrap().b,
            vec![vec![0]]
        );
        let hex = Triangulation::polygon(6, &[(0, 2), (2, 4), (4, 0)]).unwrap();
        let b = SeedMatrix::from_triangulation(&hex).unwrap().b;
        let cyc = (b[0][1] == b[1][2]) && (b[1][2] == b[2][0]) && b[0][1].abs() == 1;
        assert!(cyc, "{b:?}");
    }

    #[test]
    fn first_step_negates_row() {
        let s = SeedMatrix::from_triangulation(&fan5()).unwrap();
        for k in 0..2 {
            let t = s.mutate(k).unwrap();
            assert_eq!(t.c[k], s.c[k].iter().map(|x| -x).collect::<Vec<_>>());
        }
        assert!(s.mutate(2).is_err());
    }

    #[test]
    fn mutation_is_involutive() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let n = rng.gen_range(4..=8);
            let all = crate::triangulation::enumerate_polygon(n).unwrap();
            let t = &all[rng.gen_range(0..all.len())];
            let mut s = SeedMatrix::from_triangulation(t).unwrap();
            for _ in 0..rng.gen_range(0..5) {
                s = s.mutate(rng.gen_range(0..s.rank())).unwrap();
            }
            let k = rng.gen_range(0..s.rank());
            assert_eq!(s.mutate(k).unwrap().mutate(k).unwrap(), s);
        }
    }

    fn check_agreement(t: &Triangulation, flips: &[Arc]) {
        let (s, path) = run_flips(t, flips).unwrap();
        let basis = s.clone();
        let init = SeedMatrix::from_triangulation(t).unwrap().labels;
        for (k, u) in path.labels.iter().enumerate() {
            let cv = cvector_full(t, &path.end, u).unwrap();
            assert_eq!(cv.covector.dense(t, &init), basis.c[k], "c-vector of {u}");
            assert_eq!(
                index(t, u).unwrap().dense(&init),
                basis.g[k],
                "g-vector of {u}"
            );
        }
        assert_eq!(s.pairing(), identity(s.rank()));
    }

    #[test]
    fn pentagon_length_two() {
        let t = fan5();
        let (_, path) = run_flips(&t, &[Arc::of(0, 2), Arc::of(0, 3)]).unwrap();
        let mut end: Vec<Arc> = path.end.core().iter().copied().collect();
        end.sort();
        assert_eq!(end, vec![Arc::of(1, 3), Arc::of(1, 4)]);
        check_agreement(&t, &[Arc::of(0, 2), Arc::of(0, 3)]);
    }

    #[test]
    fn label_bookkeeping() {
        let t = fan5();
        let p = flip_path_to_mutation_path(&t, &[Arc::of(0, 3), Arc::of(0, 2)]).unwrap();
        assert_eq!(p.nodes, vec![1, 0]);
        assert_eq!(p.labels, vec![Arc::of(1, 4), Arc::of(2, 4)]);
        let hex = Triangulation::polygon(6, &[(0, 2), (2, 4), (4, 0)]).unwrap();
        let p = flip_path_to_mutation_path(&hex, &[Arc::of(0, 2), Arc::of(2, 4), Arc::of(0, 4)])
            .unwrap();
        assert_eq!(p.nodes, vec![0, 2, 1]);
        assert_eq!(p.labels, vec![Arc::of(1, 4), Arc::of(1, 5), Arc::of(1, 3)]);
        let mut lab = p.labels.clone();
        lab.sort();
        let core: Vec<Arc> = p.end.core().iter().copied().collect();
        assert_eq!(lab, core);
        assert!(flip_path_to_mutation_path(&hex, &[Arc::of(1, 3)]).is_err());
    }

    #[test]
    fn random_agreement_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 4..=7u32 {
            let all = crate::triangulation::enumerate_polygon(n).unwrap();
            for _ in 0..20 {
                let t = &all[rng.gen_range(0..all.len())];
                let mut cur = t.clone();
                let mut flips = Vec::new();
                for _ in 0..rng.gen_range(0..=10) {
                    let core: Vec<Arc> = cur.core().iter().copied().collect();
                    let d = core[rng.gen_range(0..core.len())];
                    cur = cur.flip(&d).unwrap().0;
                    flips.push(d);
                }
                check_agreement(t, &flips);
            }
        }
    }
}
