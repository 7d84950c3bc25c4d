//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p ainf --test acceptance`. Set `UPDATE_GOLDEN=1`
//! to rewrite the SVG golden files instead of comparing against them.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use ainf::cvector::{cvector_full, dimension_vector, realize_dimension_vector, CoVector};
use ainf::decomposition::{
    crossing_order, delta_plus, in_x, maximal_pairs, psi, root_of_arc, root_vector,
    unique_maximal_iff_acyclic_report, YElem, YPos,
};
use ainf::fzoracle::run_flips;
use ainf::homindex::{
    audit_zigzag, check_duality, check_duality_default, determinant, index, suspend, zigzag,
};
use ainf::render::{render, RenderSpec, Style};
use ainf::triangulation::{enumerate_polygon, Tail};
use ainf::{Arc, ClosurePoint, KVector, Triangulation, Vertex, ZModel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Time budgets, measured in the build profile the suite runs under.
const BUDGET_PENTAGON: Duration = Duration::from_secs(1);
const BUDGET_HEX_HEPT: Duration = Duration::from_secs(60);
const ORACLE_PATHS_PER_N: usize = 100;
const ORACLE_MAX_LEN: usize = 10;
const ZIGZAG_INSTANCES: usize = 10_000;
const PSI_TRIPLES: usize = 50;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pt(i: i64) -> ClosurePoint {
    ClosurePoint::V(Vertex::at(i))
}

fn blocks1(core: &[(i64, i64)], tail: Tail) -> Triangulation {
    let mut tails = BTreeMap::new();
    tails.insert(0, tail);
    Triangulation::new(
        ZModel::blocks(1).unwrap(),
        core.iter().map(|&(a, b)| Arc::of(a, b)),
        tails,
    )
    .unwrap()
}

fn fountain(base: i64, right_from: i64, left_to: i64) -> Triangulation {
    blocks1(
        &[],
        Tail::Fountain {
            base: Vertex::at(base),
            right_from,
            left_to,
        },
    )
}

fn leapfrog() -> Triangulation {
    blocks1(
        &[(0, 2)],
        Tail::Leapfrog {
            right_from: 3,
            left_to: 0,
        },
    )
}

fn leapfrog_flipped() -> Triangulation {
    blocks1(
        &[(1, 3)],
        Tail::Leapfrog {
            right_from: 3,
            left_to: 0,
        },
    )
}

fn diagonals(n: u32) -> Vec<Arc> {
    let z = ZModel::finite(n).unwrap();
    let mut out = Vec::new();
    for a in 0..n as i64 {
        for b in a + 1..n as i64 {
            let arc = Arc::of(a, b);
            if z.is_diagonal(&arc) {
                out.push(arc);
            }
        }
    }
    out
}

/// All c-vectors of `t` over every triangulation of the polygon, with
/// their signs checked against the covector.
fn all_cvectors(t: &Triangulation, all: &[Triangulation]) -> Result<Vec<CoVector>, String> {
    let mut out = Vec::new();
    for u in all {
        for d in u.core() {
            let c = cvector_full(t, u, d).map_err(|e| format!("cvector_full({d}): {e}"))?;
            let ok = match c.sign {
                1 => c.covector.is_positive(),
                -1 => c.covector.is_negative(),
                _ => false,
            };
            check(ok && c.covector.is_sign_coherent(), || {
                format!("{d} in {:?}: not sign coherent", u.core())
            })?;
            out.push(c.covector);
        }
    }
    Ok(out)
}

fn nonzero_dims(t: &Triangulation, n: u32) -> Result<HashSet<CoVector>, String> {
    let mut out = HashSet::new();
    for v in diagonals(n) {
        let d = dimension_vector(t, &v).map_err(|e| e.to_string())?;
        if !d.is_zero() {
            out.insert(d);
        }
    }
    Ok(out)
}

fn positive_set(cs: &[CoVector]) -> HashSet<CoVector> {
    cs.iter().filter(|c| c.is_positive()).cloned().collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let all = enumerate_polygon(5).map_err(|e| e.to_string())?;
    check(all.len() == 5, || format!("{} triangulations", all.len()))?;
    for t in &all {
        let cs = all_cvectors(t, &all)?;
        let plus = positive_set(&cs);
        check(plus == nonzero_dims(t, 5)?, || {
            format!("C+ != D for {:?}", t.core())
        })?;
        check(plus.len() == 3, || format!("|C+| = {}", plus.len()))?;
    }
    let el = start.elapsed();
    check(el < BUDGET_PENTAGON, || format!("took {el:?}"))?;
    Ok(format!("25 ordered pairs, |C+| = 3 each, {el:.2?}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0usize;
    for n in [6u32, 7] {
        let all = enumerate_polygon(n).map_err(|e| e.to_string())?;
        let expect = if n == 6 { 14 } else { 42 };
        check(all.len() == expect, || {
            format!("{} triangulations of the {n}-gon", all.len())
        })?;
        for t in &all {
            let cs = all_cvectors(t, &all)?;
            let plus = positive_set(&cs);
            check(plus == nonzero_dims(t, n)?, || {
                format!("C+ != D for {:?}", t.core())
            })?;
            let minus: HashSet<CoVector> = plus.iter().map(|c| c.scaled(-1)).collect();
            let every: HashSet<CoVector> = cs.iter().cloned().collect();
            let union: HashSet<CoVector> = plus.union(&minus).cloned().collect();
            check(every == union && plus.is_disjoint(&minus), || {
                format!("C != C+ ⊔ -C+ for {:?}", t.core())
            })?;
            let basis: Vec<Arc> = t.core().iter().copied().collect();
            for u in &all {
                pairs += 1;
                let rep = check_duality_default(t, u).map_err(|e| e.to_string())?;
                check(rep.passed(), || {
                    format!("duality fails for {:?} / {:?}", t.core(), u.core())
                })?;
                let g: Vec<Vec<i64>> = u
                    .core()
                    .iter()
                    .map(|d| index(t, d).map(|k| k.dense(&basis)))
                    .collect::<Result<_, _>>()
                    .map_err(|e| e.to_string())?;
                let det = determinant(&g);
                check(det.abs() == 1, || {
                    format!("det G = {det} for {:?} / {:?}", t.core(), u.core())
                })?;
            }
        }
    }
    let el = start.elapsed();
    check(el < BUDGET_HEX_HEPT, || format!("took {el:?}"))?;
    Ok(format!("{pairs} ordered pairs, {el:.2?}"))
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut rows = 0usize;
    for n in 4u32..=8 {
        let all = enumerate_polygon(n).map_err(|e| e.to_string())?;
        for _ in 0..ORACLE_PATHS_PER_N {
            let t = &all[rng.gen_range(0..all.len())];
            let mut cur = t.clone();
            let mut flips = Vec::new();
            for _ in 0..rng.gen_range(0..=ORACLE_MAX_LEN) {
                let core: Vec<Arc> = cur.core().iter().copied().collect();
                let d = core[rng.gen_range(0..core.len())];
                cur = cur.flip(&d).map_err(|e| e.to_string())?.0;
                flips.push(d);
            }
            let (s, path) = run_flips(t, &flips).map_err(|e| e.to_string())?;
            let basis: Vec<Arc> = t.core().iter().copied().collect();
            for (k, u) in path.labels.iter().enumerate() {
                rows += 1;
                let c = cvector_full(t, &path.end, u)
                    .map_err(|e| e.to_string())?
                    .covector
                    .dense(t, &basis);
                let g = index(t, u).map_err(|e| e.to_string())?.dense(&basis);
                check(c == s.c[k], || {
                    format!("c-vector of {u} after {flips:?}: {c:?} vs {:?}", s.c[k])
                })?;
                check(g == s.g[k], || {
                    format!("g-vector of {u} after {flips:?}: {g:?} vs {:?}", s.g[k])
                })?;
            }
            let id: Vec<Vec<i64>> = (0..s.rank())
                .map(|i| (0..s.rank()).map(|j| i64::from(i == j)).collect())
                .collect();
            check(s.pairing() == id, || {
                format!("<g, c> is not the identity after {flips:?}")
            })?;
        }
    }
    Ok(format!(
        "n = 4..8, {ORACLE_PATHS_PER_N} paths each, {rows} rows, 0 mismatches"
    ))
}

fn criterion_4() -> Outcome {
    let hex = Triangulation::polygon(6, &[(0, 2), (2, 4), (4, 0)]).unwrap();
    let pairs = maximal_pairs(&hex).map_err(|e| e.to_string())?;
    check(
        pairs == vec![Arc::of(1, 3), Arc::of(1, 5), Arc::of(3, 5)],
        || format!("maximal pairs {pairs:?}"),
    )?;
    let all = enumerate_polygon(6).map_err(|e| e.to_string())?;
    let plus = positive_set(&all_cvectors(&hex, &all)?);
    check(plus.len() == 6, || format!("|C+| = {}", plus.len()))?;
    for pair in &pairs {
        let (e, f) = (pair.p(), pair.q());
        let y = crossing_order(&hex, e, f).map_err(|e| e.to_string())?;
        let mut xs: Vec<(CoVector, Arc)> = Vec::new();
        for v in diagonals(6) {
            let d = dimension_vector(&hex, &v).map_err(|e| e.to_string())?;
            if !d.is_zero()
                && in_x(&hex, e, f, &d).map_err(|e| e.to_string())?
                && !xs.iter().any(|x| x.0 == d)
            {
                xs.push((d, v));
            }
        }
        check(xs.len() == 3, || format!("|X_{pair}| = {}", xs.len()))?;
        let roots: HashSet<_> = xs
            .iter()
            .map(|(_, v)| root_of_arc(&hex, &y, v))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        let want: HashSet<_> = delta_plus(&y, &y.ext_window(0)).into_iter().collect();
        check(roots.len() == 3 && roots == want, || {
            format!("root_of_arc is not onto Δ+ for {pair}")
        })?;
    }
    let fan = Triangulation::polygon(5, &[(0, 2), (0, 3)]).unwrap();
    let fp = maximal_pairs(&fan).map_err(|e| e.to_string())?;
    check(fp.len() == 1, || {
        format!("pentagon fan has {} maximal pairs", fp.len())
    })?;
    let mut checked = 0;
    for n in 5u32..=8 {
        for t in enumerate_polygon(n).map_err(|e| e.to_string())? {
            let r = unique_maximal_iff_acyclic_report(&t).map_err(|e| e.to_string())?;
            check(r.acyclic == (r.maximal_pairs.len() == 1), || {
                format!("acyclicity vs maximal pairs for {:?}", t.core())
            })?;
            check(r.acyclic || r.football.is_some(), || {
                format!("no football for {:?}", t.core())
            })?;
            checked += 1;
        }
    }
    Ok(format!(
        "hexagon: 3 pairs, |C+| = 6, |X| = 3 each; fan: 1 pair; iff-check on {checked} polygons"
    ))
}

fn window_members(t: &Triangulation, lo: i64, hi: i64) -> Vec<Arc> {
    t.window_diagonals(t.tail_window() + 2 * (lo.unsigned_abs() + hi.unsigned_abs()))
        .into_iter()
        .filter(|a| {
            a.vertices()
                .is_some_and(|(p, q)| [p, q].iter().all(|v| (lo..=hi).contains(&v.idx)))
        })
        .collect()
}

fn index_bar_specialisation(t: &Triangulation, ts: &[Arc]) -> Result<(), String> {
    for d in ts {
        let s = suspend(&t.z(), d).map_err(|e| e.to_string())?;
        let k = index(t, &s).map_err(|e| e.to_string())?;
        check(k == KVector::basis(*d).scaled(-1), || {
            format!("index(Σ{d}) = {k}")
        })?;
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let t = fountain(0, 2, -2);
    let u = fountain(1, 3, -1);
    check(t.validate().is_valid() && u.validate().is_valid(), || {
        "fountain fixtures do not validate".into()
    })?;
    let k = index(&t, &Arc::of(1, -1)).map_err(|e| e.to_string())?;
    check(k == KVector::basis(Arc::of(0, 2)).scaled(-1), || {
        format!("index({{1,-1}}) = {k}")
    })?;
    let wt: Vec<Arc> = (2..=6)
        .flat_map(|n| [Arc::of(0, n), Arc::of(0, -n)])
        .collect();
    check(wt.iter().all(|a| t.contains(a)), || {
        "window {0,n} not in T".into()
    })?;
    let wu = window_members(&u, -6, 6);
    let rep = check_duality(&t, &u, &wt, &wu).map_err(|e| e.to_string())?;
    check(rep.passed(), || {
        format!("duality: {} failures", rep.failures.len())
    })?;
    let rep = check_duality(&u, &t, &wu, &wt).map_err(|e| e.to_string())?;
    check(rep.passed(), || {
        format!("reverse duality: {} failures", rep.failures.len())
    })?;
    let pairs = maximal_pairs(&t).map_err(|e| e.to_string())?;
    check(pairs == vec![Arc::of(1, -1)], || {
        format!("maximal pairs {pairs:?}")
    })?;
    let y = crossing_order(&t, pt(1), pt(-1)).map_err(|e| e.to_string())?;
    let d = y.descriptor().to_string();
    check(d == "ω + ω*", || format!("order type {d}"))?;
    let ext = y.ext_window(6);
    check(ext.first() == Some(&YElem::NegInf), || {
        "−∞ not adjoined".into()
    })?;
    let w: Vec<YPos> = y.window(6);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut done = 0;
    while done < PSI_TRIPLES {
        let mut idx = [
            rng.gen_range(0..w.len()),
            rng.gen_range(0..w.len()),
            rng.gen_range(0..w.len()),
        ];
        idx.sort();
        if idx[1] == idx[2] {
            continue;
        }
        let (a, b, c) = (w[idx[0]], w[idx[1]], w[idx[2]]);
        let b1 = y.succ(b).ok_or("no successor")?;
        let lhs = {
            let mut m = root_vector(&psi(&y, a, b).map_err(|e| e.to_string())?);
            for (k, v) in root_vector(&psi(&y, b1, c).map_err(|e| e.to_string())?) {
                *m.entry(k).or_insert(0) += v;
            }
            m.retain(|_, v| *v != 0);
            m
        };
        let rhs = root_vector(&psi(&y, a, c).map_err(|e| e.to_string())?);
        check(lhs == rhs, || {
            format!("ψ not additive on {a:?} {b:?} {c:?}")
        })?;
        done += 1;
    }
    let ts = window_members(&t, -6, 6);
    index_bar_specialisation(&t, &ts)?;
    Ok(format!(
        "index, duality on {} + {} arcs, ω + ω*, ψ additive on {PSI_TRIPLES} triples",
        wt.len(),
        wu.len()
    ))
}

fn criterion_6() -> Outcome {
    let t = leapfrog();
    let u = leapfrog_flipped();
    check(t.validate().is_valid(), || {
        format!("leapfrog fixture invalid: {:?}", t.validate().failure)
    })?;
    check(u.validate().is_valid(), || {
        "second leapfrog fixture invalid".into()
    })?;
    let pairs = maximal_pairs(&t).map_err(|e| e.to_string())?;
    let ears: BTreeSet<ClosurePoint> = t.ears().into_iter().map(ClosurePoint::V).collect();
    let hit = pairs.iter().any(|p| {
        (p.p() == ClosurePoint::L(0) && ears.contains(&p.q()))
            || (p.q() == ClosurePoint::L(0) && ears.contains(&p.p()))
    });
    check(hit, || format!("no ear paired with L0 in {pairs:?}"))?;
    let ts = window_members(&t, -6, 6);
    for d in &ts {
        let k = index(&t, d).map_err(|e| e.to_string())?;
        check(k == KVector::basis(*d), || format!("index({d}) = {k}"))?;
    }
    index_bar_specialisation(&t, &ts)?;
    let us = window_members(&u, -6, 6);
    let rep = check_duality(&t, &u, &ts, &us).map_err(|e| e.to_string())?;
    check(rep.passed(), || {
        format!("duality: {} failures", rep.failures.len())
    })?;
    Ok(format!(
        "maximal pairs {}, duality on {} + {} arcs",
        pairs.len(),
        ts.len(),
        us.len()
    ))
}

fn criterion_7() -> Outcome {
    let mut count = 0usize;
    for n in 4u32..=9 {
        let arcs = diagonals(n);
        for t in enumerate_polygon(n).map_err(|e| e.to_string())? {
            for v in &arcs {
                let d = dimension_vector(&t, v).map_err(|e| e.to_string())?;
                if d.is_zero() {
                    continue;
                }
                let (u, a) = realize_dimension_vector(&t, v)
                    .map_err(|e| format!("realize {v} in {:?}: {e}", t.core()))?;
                check(u.validate().is_valid() && u.core().contains(&a), || {
                    format!("bad realisation of {v}")
                })?;
                let c = cvector_full(&t, &u, &a).map_err(|e| e.to_string())?;
                check(c.sign == 1 && c.covector == d, || {
                    format!("realisation of {v} in {:?} gives {c:?}", t.core())
                })?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} realisations, 0 failures"))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let polys: Vec<Vec<Triangulation>> = (4u32..=9)
        .map(enumerate_polygon)
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let infinite = [
        fountain(0, 2, -2),
        fountain(1, 3, -1),
        leapfrog(),
        leapfrog_flipped(),
    ];
    for t in polys.iter().flatten() {
        let ts: Vec<Arc> = t.core().iter().copied().collect();
        index_bar_specialisation(t, &ts)?;
    }
    for t in &infinite {
        index_bar_specialisation(t, &window_members(t, -6, 6))?;
    }
    let mut done = 0usize;
    while done < ZIGZAG_INSTANCES {
        let finite = rng.gen_bool(0.5);
        let t = if finite {
            let pool = &polys[rng.gen_range(0..polys.len())];
            &pool[rng.gen_range(0..pool.len())]
        } else {
            &infinite[rng.gen_range(0..infinite.len())]
        };
        let z = t.z();
        let (e, f) = match z {
            ZModel::Finite { n } => (rng.gen_range(0..n as i64), rng.gen_range(0..n as i64)),
            ZModel::Blocks { .. } => (rng.gen_range(-9..=9), rng.gen_range(-9..=9)),
        };
        let (e, f) = (Vertex::at(e), Vertex::at(f));
        if e == f || !z.is_diagonal(&Arc::verts(e, f).unwrap()) {
            continue;
        }
        let path = zigzag(t, e, f).map_err(|err| format!("zigzag {e} {f}: {err}"))?;
        let w = 3 * t.depth_for(&[e.into(), f.into()]);
        let bad = audit_zigzag(t, &path, w);
        check(bad.is_empty(), || {
            format!("zig-zag {e} -> {f} in {:?}: {bad:?}", t.core())
        })?;
        done += 1;
    }
    Ok(format!(
        "{ZIGZAG_INSTANCES} paths audited; index(Σt) = -[t] on every fixture"
    ))
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

fn golden_cases() -> Vec<(&'static str, String)> {
    let fan = Triangulation::polygon(5, &[(0, 2), (0, 3)]).unwrap();
    let zz = zigzag(&fan, Vertex::at(1), Vertex::at(4)).unwrap();
    let pentagon = RenderSpec {
        arcs: vec![(Arc::of(1, 4), Style::Query)],
        paths: vec![zz.vertices],
        ..RenderSpec::default()
    };
    let hex = Triangulation::polygon(6, &[(0, 2), (2, 4), (4, 0)]).unwrap();
    let fb = unique_maximal_iff_acyclic_report(&hex)
        .unwrap()
        .football
        .unwrap();
    let football = RenderSpec {
        arcs: fb
            .black
            .iter()
            .map(|a| (*a, Style::ZigZag))
            .chain(
                maximal_pairs(&hex)
                    .unwrap()
                    .into_iter()
                    .map(|a| (a, Style::Query)),
            )
            .collect(),
        ..RenderSpec::default()
    };
    let fountain_spec = RenderSpec {
        arcs: vec![(Arc::of(1, -1), Style::Query)],
        ..RenderSpec::default()
    };
    let lf = leapfrog();
    let lf_spec = RenderSpec {
        arcs: vec![(Arc::new(pt(1), ClosurePoint::L(0)).unwrap(), Style::Query)],
        ..RenderSpec::default()
    };
    vec![
        ("pentagon_zigzag.svg", render(&fan, &pentagon)),
        ("hexagon_football.svg", render(&hex, &football)),
        ("fountain.svg", render(&fountain(0, 2, -2), &fountain_spec)),
        ("leapfrog.svg", render(&lf, &lf_spec)),
    ]
}

fn criterion_9() -> Outcome {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let dir = golden_dir();
    let first = golden_cases();
    let second = golden_cases();
    for ((name, a), (_, b)) in first.iter().zip(&second) {
        check(a == b, || format!("{name}: two renders differ"))?;
        let path = dir.join(name);
        if update {
            std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
            std::fs::write(&path, a).map_err(|e| e.to_string())?;
        }
        let want =
            std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        check(&want == a, || format!("{name} differs from golden file"))?;
    }
    Ok(format!("{} golden files match", first.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("pentagon exhaustive", criterion_1),
        ("hexagon and heptagon exhaustive", criterion_2),
        ("mutation oracle agreement", criterion_3),
        ("hexagon cyclic decomposition", criterion_4),
        ("fountain fixture", criterion_5),
        ("leapfrog fixture", criterion_6),
        ("realisation round trip", criterion_7),
        ("zig-zag structural suite", criterion_8),
        ("rendering determinism", criterion_9),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let tag = format!("criterion {}", i + 1);
        if !filter.is_empty()
            && !filter
                .iter()
                .any(|p| tag.contains(p.as_str()) || name.contains(p.as_str()))
        {
            continue;
        }
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let el = start.elapsed();
        match outcome {
            Ok(msg) => println!("{tag} PASS [{name}] {msg} ({el:.2?})"),
            Err(msg) => {
                failed += 1;
                println!("{tag} FAIL [{name}] {msg} ({el:.2?})");
            }
        }
    }
    if failed > 0 {
        println!("acceptance: {failed} criteria failed");
        std::process::exit(1);
    }
    println!("acceptance: all criteria passed");
}
