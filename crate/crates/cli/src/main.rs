use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use ainf::cvector::{cvector_full, dimension_vector, image_arc, realize_dimension_vector};
use ainf::decomposition::{
    crossing_order, decompose, delta_plus, unique_maximal_iff_acyclic_report, YElem,
};
use ainf::fzoracle::run_flips;
use ainf::homindex::{check_duality, index, index_bar, zigzag};
use ainf::json::{
    covector_to_json, kvector_to_json, parse_point, triangulation_from_json, triangulation_to_json,
    validation_to_json,
};
use ainf::render::{render, RenderSpec, Style};
use ainf::triangulation::{enumerate_polygon, Triangulation};
use ainf::{Arc, Error, Result, Vertex};

#[derive(Parser)]
#[command(
    name = "ainf",
    version,
    about = "Cluster categories of type A_n and A_infinity"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Svg,
}

#[derive(Args, Clone)]
struct Common {
    /// Triangulation JSON (model plus diagonals). `--model` is an alias.
    #[arg(long, alias = "model", value_name = "FILE")]
    triangulation: Option<PathBuf>,
    /// Second triangulation U, for c-vectors and duality.
    #[arg(long, value_name = "FILE")]
    second_triangulation: Option<PathBuf>,
    /// Arc endpoints: `i`, `b:i` or `Lg`. May be repeated.
    #[arg(long, num_args = 2, value_names = ["P", "Q"], action = ArgAction::Append, allow_hyphen_values = true)]
    arc: Vec<String>,
    /// Vertex window per block.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_hyphen_values = true, default_values_t = [-6, 6])]
    window: Vec<i64>,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check that a triangulation is valid; exit 1 otherwise.
    Validate {
        file: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Index of an arc with respect to T (`--bar` for the bar index).
    Index {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        bar: bool,
    },
    /// c-vector of `u` in U with respect to T.
    Cvector(Common),
    /// Dimension vector of an arc with respect to T.
    Dimvec(Common),
    /// Image arc of `u` and its flip partner in U.
    Image(Common),
    /// A triangulation U and `u` in U whose c-vector is `dim_T(v)`.
    Realize(Common),
    /// Maximal pairs, order types and root-system labels.
    Decompose(Common),
    /// Ordered crossing set of `{e, f}` and its positive roots.
    Roots(Common),
    /// Duality of the index maps of T and U on the window.
    Duality(Common),
    /// Compare c- and g-vectors with matrix mutation on random flip paths.
    Oracle {
        #[command(flatten)]
        common: Common,
        /// Polygon sizes to sample when no triangulation is given.
        #[arg(long, default_values_t = [4u32, 5, 6, 7, 8], num_args = 1..)]
        n: Vec<u32>,
        #[arg(long, default_value_t = 100)]
        paths: usize,
        #[arg(long, default_value_t = 10)]
        max_len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// SVG drawing of T with the given arcs.
    Render {
        #[command(flatten)]
        common: Common,
        /// Also draw the zig-zag path of each arc.
        #[arg(long)]
        zigzag: bool,
    },
}

/// Exit code 1: a suite or validation reported a violation.
struct Violation(Value);

enum Output {
    Json(Value),
    Text(String),
}

fn load(path: &Path) -> Result<Triangulation> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse {
        pointer: "/".into(),
        message: format!("{}: {e}", path.display()),
    })?;
    triangulation_from_json(&v)
}

impl Common {
    fn t(&self) -> Result<Triangulation> {
        let p = self
            .triangulation
            .as_ref()
            .ok_or_else(|| Error::Precondition("--triangulation is required".into()))?;
        load(p)
    }

    fn u(&self) -> Result<Triangulation> {
        let p = self
            .second_triangulation
            .as_ref()
            .ok_or_else(|| Error::Precondition("--second-triangulation is required".into()))?;
        load(p)
    }

    fn arcs(&self, t: &Triangulation) -> Result<Vec<Arc>> {
        self.arc
            .chunks(2)
            .map(|c| Arc::new(parse_point(t.z(), &c[0])?, parse_point(t.z(), &c[1])?))
            .collect()
    }

    fn arc(&self, t: &Triangulation) -> Result<Arc> {
        match self.arcs(t)?.as_slice() {
            [a] => Ok(*a),
            _ => Err(Error::Precondition("exactly one --arc is required".into())),
        }
    }

    fn window(&self) -> (i64, i64) {
        (self.window[0], self.window[1])
    }

    fn radius(&self) -> i64 {
        let (lo, hi) = self.window();
        lo.abs().max(hi.abs())
    }
}

fn vertices(a: &Arc) -> Result<(Vertex, Vertex)> {
    a.vertices()
        .ok_or_else(|| Error::LimitEndpoint(a.to_string()))
}

/// Diagonals of `t` with both endpoints in the window.
fn window_basis(t: &Triangulation, lo: i64, hi: i64) -> Vec<Arc> {
    let members = t.tail_window() + 2 * (lo.unsigned_abs() + hi.unsigned_abs());
    t.window_diagonals(members)
        .into_iter()
        .filter(|a| match a.vertices() {
            Some((p, q)) => t.z().is_finite() || [p, q].iter().all(|v| v.idx >= lo && v.idx <= hi),
            None => false,
        })
        .collect()
}

fn strs(arcs: &[Arc]) -> Value {
    json!(arcs.iter().map(|a| a.to_string()).collect::<Vec<_>>())
}

fn run(cmd: &Cmd) -> Result<std::result::Result<Output, Violation>> {
    let ok = |v: Value| Ok(Ok(Output::Json(v)));
    match cmd {
        Cmd::Validate { file, common } => {
            let path = file
                .as_ref()
                .or(common.triangulation.as_ref())
                .ok_or_else(|| Error::Precondition("a triangulation file is required".into()))?;
            let t = load(path)?;
            let rep = t.validate();
            let v = validation_to_json(&rep);
            if rep.is_valid() {
                ok(v)
            } else {
                Ok(Err(Violation(v)))
            }
        }
        Cmd::Index { common, bar } => {
            let t = common.t()?;
            let a = common.arc(&t)?;
            let k = if *bar {
                index_bar(&t, &a)?
            } else {
                index(&t, &a)?
            };
            ok(kvector_to_json(&k))
        }
        Cmd::Cvector(common) => {
            let (t, u) = (common.t()?, common.u()?);
            let a = common.arc(&u)?;
            let c = cvector_full(&t, &u, &a)?;
            ok(json!({
                "sign": c.sign,
                "arc": c.arc.to_string(),
                "covector": covector_to_json(&c.covector),
            }))
        }
        Cmd::Dimvec(common) => {
            let t = common.t()?;
            let a = common.arc(&t)?;
            ok(covector_to_json(&dimension_vector(&t, &a)?))
        }
        Cmd::Image(common) => {
            let (t, u) = (common.t()?, common.u()?);
            let a = common.arc(&u)?;
            let star = u.flip_partner(&a)?;
            let img = image_arc(&t, &a, &star)?;
            ok(json!({
                "u": a.to_string(),
                "u_star": star.to_string(),
                "image": img.map(|v| v.to_string()),
            }))
        }
        Cmd::Realize(common) => {
            let t = common.t()?;
            let v = common.arc(&t)?;
            let (tu, u) = realize_dimension_vector(&t, &v)?;
            ok(json!({ "u": u.to_string(), "triangulation": triangulation_to_json(&tu) }))
        }
        Cmd::Decompose(common) => {
            let t = common.t()?;
            t.ensure_valid()?;
            let report = unique_maximal_iff_acyclic_report(&t)?;
            let pairs = decompose(&t, common.radius())?;
            let pairs: Vec<Value> = pairs
                .iter()
                .map(|p| {
                    let y = &p.crossing;
                    let table: Vec<Value> = p
                        .table
                        .iter()
                        .map(|(v, r)| json!({ "arc": v.to_string(), "pos": y.label(r.pos), "neg": y.label(r.neg) }))
                        .collect();
                    json!({
                        "pair": p.pair.to_string(),
                        "order_type": p.descriptor.to_string(),
                        "label": p.label,
                        "roots": table,
                    })
                })
                .collect();
            ok(json!({
                "acyclic": report.acyclic,
                "maximal_pairs": pairs,
                "football": report.football.map(|f| json!({
                    "black": strs(&f.black),
                    "internal_triangle": f.internal_triangle.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                })),
            }))
        }
        Cmd::Roots(common) => {
            let t = common.t()?;
            let a = common.arc(&t)?;
            let y = crossing_order(&t, a.p(), a.q())?;
            let per_ray = common.radius().max(1) as u64;
            let elems = y.ext_window(per_ray);
            let labels: Vec<String> = elems.iter().map(|&x| y.label(x)).collect();
            let roots: Vec<Value> = delta_plus(&y, &elems)
                .iter()
                .map(|r| json!([y.label(r.pos), y.label(r.neg)]))
                .collect();
            ok(json!({
                "arc": a.to_string(),
                "order_type": y.descriptor().to_string(),
                "has_least": y.has_least(),
                "y_ext": labels,
                "window_per_ray": if y.len().is_some() { Value::Null } else { json!(per_ray) },
                "positive_roots": roots,
                "minus_infinity_adjoined": elems.first() == Some(&YElem::NegInf),
            }))
        }
        Cmd::Duality(common) => {
            let (t, u) = (common.t()?, common.u()?);
            let (lo, hi) = common.window();
            let rep = check_duality(&t, &u, &window_basis(&t, lo, hi), &window_basis(&u, lo, hi))?;
            let v = json!({
                "checked": rep.checked,
                "failures": rep.failures.iter().map(|f| json!({
                    "direction": format!("{:?}", f.direction),
                    "arc": f.arc.to_string(),
                    "result": kvector_to_json(&f.result),
                })).collect::<Vec<_>>(),
            });
            if rep.passed() {
                ok(v)
            } else {
                Ok(Err(Violation(v)))
            }
        }
        Cmd::Oracle {
            common,
            n,
            paths,
            max_len,
            seed,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let starts: Vec<Vec<Triangulation>> = match &common.triangulation {
                Some(_) => vec![vec![common.t()?]],
                None => n
                    .iter()
                    .map(|&n| enumerate_polygon(n))
                    .collect::<Result<_>>()?,
            };
            let mut checked = 0usize;
            let mut mismatches = Vec::new();
            for pool in &starts {
                for _ in 0..*paths {
                    let t = &pool[rng.gen_range(0..pool.len())];
                    let mut cur = t.clone();
                    let mut flips = Vec::new();
                    for _ in 0..rng.gen_range(0..=*max_len) {
                        let core: Vec<Arc> = cur.core().iter().copied().collect();
                        let d = core[rng.gen_range(0..core.len())];
                        cur = cur.flip(&d)?.0;
                        flips.push(d);
                    }
                    let (seed_m, path) = run_flips(t, &flips)?;
                    let basis: Vec<Arc> = t.core().iter().copied().collect();
                    for (k, u) in path.labels.iter().enumerate() {
                        checked += 1;
                        let c = cvector_full(t, &path.end, u)?.covector.dense(t, &basis);
                        let g = index(t, u)?.dense(&basis);
                        if c != seed_m.c[k] || g != seed_m.g[k] {
                            mismatches.push(json!({
                                "start": strs(&basis),
                                "flips": strs(&flips),
                                "arc": u.to_string(),
                                "c": c, "c_oracle": seed_m.c[k],
                                "g": g, "g_oracle": seed_m.g[k],
                            }));
                        }
                    }
                }
            }
            let v = json!({ "checked": checked, "mismatches": mismatches });
            if mismatches.is_empty() {
                ok(v)
            } else {
                Ok(Err(Violation(v)))
            }
        }
        Cmd::Render { common, zigzag: zz } => {
            if common.format == Some(Format::Json) {
                return Err(Error::Precondition("render emits SVG only".into()));
            }
            let t = common.t()?;
            let arcs = common.arcs(&t)?;
            let mut spec = RenderSpec {
                window: common.radius(),
                ..RenderSpec::default()
            };
            for a in &arcs {
                spec.arcs.push((*a, Style::Query));
                if *zz {
                    let (e, f) = vertices(a)?;
                    spec.paths.push(zigzag(&t, e, f)?.vertices);
                }
            }
            Ok(Ok(Output::Text(render(&t, &spec))))
        }
    }
}

fn common(cmd: &Cmd) -> &Common {
    match cmd {
        Cmd::Validate { common, .. }
        | Cmd::Index { common, .. }
        | Cmd::Oracle { common, .. }
        | Cmd::Render { common, .. } => common,
        Cmd::Cvector(c)
        | Cmd::Dimvec(c)
        | Cmd::Image(c)
        | Cmd::Realize(c)
        | Cmd::Decompose(c)
        | Cmd::Roots(c)
        | Cmd::Duality(c) => c,
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> std::io::Result<()> {
    match out {
        Some(p) => fs::write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let c = common(&cli.cmd);
    if c.format == Some(Format::Svg) && !matches!(cli.cmd, Cmd::Render { .. }) {
        eprintln!("error: only render emits SVG");
        return ExitCode::from(2);
    }
    let (text, code) = match run(&cli.cmd) {
        Ok(Ok(Output::Json(v))) => (pretty(&v), 0),
        Ok(Ok(Output::Text(s))) => (s, 0),
        Ok(Err(Violation(v))) => (pretty(&v), 1),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    if let Err(e) = emit(&text, c.out.as_ref()) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
