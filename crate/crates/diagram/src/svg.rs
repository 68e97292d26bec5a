//! SVG rendering of disc diagrams.
//!
//! Layout: boundary vertices go on a circle in boundary order; every other
//! vertex is placed at the average of its neighbours (a fixed number of
//! Jacobi sweeps, so output is deterministic). Squares are grey, cone-cells
//! blue. With curvature, nonzero vertex curvatures are written next to
//! their vertex and cell curvatures at the cell centre, in units of pi.

use std::collections::HashSet;
use std::fmt::Write;

use crate::diagram::DiscDiagram;
use crate::rectify::Curvature;
use crate::rectify::RectifiedDiagram;

const SIZE: f64 = 480.0;
const SWEEPS: usize = 400;

/// Vertex coordinates in `[0, SIZE]^2`.
pub fn layout(d: &DiscDiagram) -> Vec<(f64, f64)> {
    let n = d.vertices.len();
    let c = SIZE / 2.0;
    let rad = SIZE * 0.42;
    let mut pos = vec![(c, c); n];
    let mut fixed = vec![false; n];
    let mut ring = Vec::new();
    let mut cur = d.base;
    let mut seen = HashSet::new();
    for &x in &d.boundary {
        if seen.insert(cur) {
            ring.push(cur);
        }
        cur = d.head(x);
    }
    if seen.insert(cur) {
        ring.push(cur);
    }
    let k = ring.len().max(1) as f64;
    for (i, &v) in ring.iter().enumerate() {
        let t = std::f64::consts::TAU * i as f64 / k - std::f64::consts::FRAC_PI_2;
        pos[v] = (c + rad * t.cos(), c + rad * t.sin());
        fixed[v] = true;
    }
    let mut adj = vec![Vec::new(); n];
    for e in &d.edges {
        if e.src != e.dst {
            adj[e.src].push(e.dst);
            adj[e.dst].push(e.src);
        }
    }
    for _ in 0..SWEEPS {
        let prev = pos.clone();
        for v in 0..n {
            if fixed[v] || adj[v].is_empty() {
                continue;
            }
            let (sx, sy) = adj[v].iter().fold((0.0, 0.0), |a, &w| (a.0 + prev[w].0, a.1 + prev[w].1));
            let m = adj[v].len() as f64;
            pos[v] = (sx / m, sy / m);
        }
    }
    pos
}

fn centroid(pos: &[(f64, f64)], vs: &[usize]) -> (f64, f64) {
    let m = vs.len().max(1) as f64;
    let (x, y) = vs.iter().fold((0.0, 0.0), |a, &v| (a.0 + pos[v].0, a.1 + pos[v].1));
    (x / m, y / m)
}

/// Renders `d`. `curv` pairs a rectification of `d` with its curvature.
pub fn to_svg(d: &DiscDiagram, curv: Option<(&RectifiedDiagram, &Curvature)>) -> String {
    let pos = layout(d);
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    for (i, f) in d.faces.iter().enumerate() {
        let pts: Vec<String> = f
            .darts
            .iter()
            .map(|&x| {
                let p = pos[d.tail(x)];
                format!("{:.2},{:.2}", p.0, p.1)
            })
            .collect();
        let fill = if f.cell.is_cone() { "#b8d4f0" } else { "#e4e4e4" };
        let _ = writeln!(
            s,
            "  <polygon id=\"f{i}\" points=\"{}\" fill=\"{fill}\" stroke=\"none\"/>",
            pts.join(" ")
        );
    }
    let on_boundary: HashSet<usize> = d.boundary.iter().map(|x| x.edge).collect();
    for (i, e) in d.edges.iter().enumerate() {
        let (a, b) = (pos[e.src], pos[e.dst]);
        let w = if on_boundary.contains(&i) { 2.0 } else { 1.0 };
        let _ = writeln!(
            s,
            "  <line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#333\" stroke-width=\"{w}\"/>",
            a.0, a.1, b.0, b.1
        );
    }
    for (v, p) in pos.iter().enumerate() {
        let r = if v == d.base { 4.0 } else { 2.5 };
        let _ = writeln!(s, "  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"{r}\" fill=\"#000\"/>", p.0, p.1);
    }
    if let Some((rect, k)) = curv {
        for (v, a) in &k.vertices {
            if *a.numer() != 0 {
                let p = pos[*v];
                let _ = writeln!(
                    s,
                    "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"10\" fill=\"#a00\">{a}</text>",
                    p.0 + 5.0,
                    p.1 - 5.0
                );
            }
        }
        for (c, a) in rect.cells.iter().zip(&k.faces) {
            let vs: Vec<usize> = c.darts.iter().map(|&x| d.tail(x)).collect();
            let p = centroid(&pos, &vs);
            let _ = writeln!(
                s,
                "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"10\" text-anchor=\"middle\" fill=\"#036\">{a}</text>",
                p.0, p.1
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rectify::{curvature, rectify};
    use crate::samples;

    #[test]
    fn grid_svg_has_every_face_and_edge() {
        let (_, d) = samples::grid(2, 3);
        let r = rectify(&d);
        let k = curvature(&r);
        let s = to_svg(&d, Some((&r, &k)));
        assert_eq!(s.matches("<polygon").count(), 6);
        assert_eq!(s.matches("<line").count(), d.edges.len());
        assert!(s.ends_with("</svg>\n"));
        assert_eq!(s, to_svg(&d, Some((&r, &k))));
    }

    #[test]
    fn interior_vertex_sits_inside() {
        let (_, d) = samples::grid(2, 2);
        let pos = layout(&d);
        let inner: Vec<usize> = (0..d.vertices.len()).filter(|v| !d.boundary_vertices().contains(v)).collect();
        assert_eq!(inner.len(), 1);
        let p = pos[inner[0]];
        assert!((p.0 - SIZE / 2.0).abs() < 1.0 && (p.1 - SIZE / 2.0).abs() < 1.0);
    }
}
