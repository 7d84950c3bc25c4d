//! Deterministic SVG drawings of a model, a triangulation, zig-zag paths
//! and highlighted arcs.
//!
//! Polygon vertex `i` sits at angle `-pi/2 + 2*pi*i/n`. In a block model,
//! block `b` owns the sector centred at `-pi/2 + 2*pi*b/k` of half-width
//! `pi/k`; vertex `(b, i)` is placed at `sign(i) * (1 - 2^-|i|)` of the
//! half-width from the centre, so indices accumulate at the limit points
//! on the sector boundaries. All coordinates are printed with four
//! decimals.

use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::triangulation::Triangulation;
use crate::zmodel::{Arc, ClosurePoint, Vertex, ZModel};

const SIZE: f64 = 400.0;
const CENTER: f64 = 200.0;
const RADIUS: f64 = 170.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Triangulation,
    ZigZag,
    Query,
}

impl Style {
    fn class(self) -> &'static str {
        match self {
            Style::Triangulation => "tri",
            Style::ZigZag => "zigzag",
            Style::Query => "query",
        }
    }
}

#[derive(Clone, Debug)]
pub struct RenderSpec {
    /// Vertices drawn per block of a block model: `|idx| <= window`.
    pub window: i64,
    /// Tail members drawn per family.
    pub tail_members: u64,
    pub arcs: Vec<(Arc, Style)>,
    pub paths: Vec<Vec<Vertex>>,
    pub title: Option<String>,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            window: 6,
            tail_members: 6,
            arcs: Vec::new(),
            paths: Vec::new(),
            title: None,
        }
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.4}");
    if s == "-0.0000" {
        "0.0000".to_string()
    } else {
        s
    }
}

pub fn angle(z: ZModel, p: ClosurePoint) -> f64 {
    match (z, p) {
        (ZModel::Finite { n }, ClosurePoint::V(v)) => {
            -PI / 2.0 + 2.0 * PI * v.idx as f64 / n as f64
        }
        (ZModel::Blocks { k }, ClosurePoint::V(v)) => {
            let half = PI / k as f64;
            let centre = -PI / 2.0 + 2.0 * PI * v.block as f64 / k as f64;
            let frac = 1.0 - 0.5f64.powi(v.idx.unsigned_abs().min(1000) as i32);
            centre + v.idx.signum() as f64 * frac * half
        }
        (ZModel::Blocks { k }, ClosurePoint::L(g)) => {
            -PI / 2.0 + 2.0 * PI * g as f64 / k as f64 + PI / k as f64
        }
        (ZModel::Finite { .. }, ClosurePoint::L(_)) => 0.0,
    }
}

/// Counterclockwise in the picture: y grows upwards.
fn position(z: ZModel, p: ClosurePoint, r: f64) -> (f64, f64) {
    let a = angle(z, p);
    (CENTER + r * a.cos(), CENTER - r * a.sin())
}

fn line(out: &mut String, z: ZModel, a: &Arc, class: &str) {
    let (x1, y1) = position(z, a.p(), RADIUS);
    let (x2, y2) = position(z, a.q(), RADIUS);
    let _ = writeln!(
        out,
        r#"  <line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
        num(x1),
        num(y1),
        num(x2),
        num(y2)
    );
}

pub fn render(t: &Triangulation, spec: &RenderSpec) -> String {
    let z = t.z();
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#,
        s = SIZE
    );
    out.push_str(concat!(
        "  <style>\n",
        "    .rim { fill: none; stroke: #888; stroke-width: 1; }\n",
        "    .tri { stroke: #222; stroke-width: 1.2; }\n",
        "    .zigzag { fill: none; stroke: #c22; stroke-width: 2.4; }\n",
        "    .query { stroke: #25c; stroke-width: 2; stroke-dasharray: 6 4; }\n",
        "    .vertex { fill: #000; }\n",
        "    .limit { fill: #fff; stroke: #000; stroke-width: 1.2; }\n",
        "    text { font-family: sans-serif; font-size: 10px; }\n",
        "  </style>\n",
    ));
    if let Some(title) = &spec.title {
        let esc = title
            .replace('&', "&amp;")
            .replace('<', "&lt;")
            .replace('>', "&gt;");
        let _ = writeln!(out, "  <title>{esc}</title>");
    }
    let _ = writeln!(
        out,
        r#"  <circle class="rim" cx="{c}" cy="{c}" r="{r}"/>"#,
        c = num(CENTER),
        r = num(RADIUS)
    );
    let mut diagonals: Vec<Arc> = t.core().iter().copied().collect();
    diagonals.extend(
        t.window_diagonals(spec.tail_members)
            .into_iter()
            .filter(|a| !t.core().contains(a)),
    );
    diagonals.sort();
    diagonals.dedup();
    for a in &diagonals {
        line(&mut out, z, a, Style::Triangulation.class());
    }
    for path in &spec.paths {
        let pts: Vec<String> = path
            .iter()
            .map(|&v| {
                let (x, y) = position(z, ClosurePoint::V(v), RADIUS);
                format!("{},{}", num(x), num(y))
            })
            .collect();
        let _ = writeln!(
            out,
            r#"  <polyline class="zigzag" points="{}"/>"#,
            pts.join(" ")
        );
    }
    for (a, style) in &spec.arcs {
        line(&mut out, z, a, style.class());
    }
    for v in z.window_vertices(spec.window) {
        let p = ClosurePoint::V(v);
        let (x, y) = position(z, p, RADIUS);
        let _ = writeln!(
            out,
            r#"  <circle class="vertex" cx="{}" cy="{}" r="2.5"/>"#,
            num(x),
            num(y)
        );
        if z.is_finite() || v.idx.abs() <= 3 {
            let (lx, ly) = position(z, p, RADIUS + 14.0);
            let _ = writeln!(
                out,
                r#"  <text x="{}" y="{}" text-anchor="middle" dominant-baseline="middle">{v}</text>"#,
                num(lx),
                num(ly)
            );
        }
    }
    for p in z.limit_points() {
        let (x, y) = position(z, p, RADIUS);
        let _ = writeln!(
            out,
            r#"  <circle class="limit" cx="{}" cy="{}" r="4"/>"#,
            num(x),
            num(y)
        );
        let (lx, ly) = position(z, p, RADIUS + 16.0);
        let _ = writeln!(
            out,
            r#"  <text x="{}" y="{}" text-anchor="middle" dominant-baseline="middle">{p}</text>"#,
            num(lx),
            num(ly)
        );
    }
    out.push_str("</svg>\n");
    out
}
