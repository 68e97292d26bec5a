//! Graphviz output for 1-skeleta and hyperplane carriers.

use std::fmt::Write;

use crate::ball::Hyperplanes;
use crate::complex::CubeComplex;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// The 1-skeleton with vertex names as node ids and edge labels.
pub fn skeleton(x: &CubeComplex) -> String {
    let mut s = String::from("digraph skeleton {\n");
    for v in 0..x.vertex_count() {
        let _ = writeln!(s, "  {};", quote(x.vertex_name(v)));
    }
    for e in 0..x.edge_count() {
        let _ = writeln!(
            s,
            "  {} -> {} [label={}];",
            quote(x.vertex_name(x.source(e))),
            quote(x.vertex_name(x.target(e))),
            quote(x.edge_label(e))
        );
    }
    s.push_str("}\n");
    s
}

/// One cluster per hyperplane: its carrier vertices and dual edges.
pub fn carriers(x: &CubeComplex, hyper: &Hyperplanes) -> String {
    let mut s = String::from("graph carriers {\n");
    for h in 0..hyper.len() {
        let _ = writeln!(s, "  subgraph cluster_h{h} {{\n    label=\"H{h}\";");
        for v in hyper.carrier(x, h) {
            let _ = writeln!(s, "    {};", quote(&format!("H{h}:{}", x.vertex_name(v))));
        }
        for &e in hyper.edges(h) {
            let _ = writeln!(
                s,
                "    {} -- {};",
                quote(&format!("H{h}:{}", x.vertex_name(x.source(e)))),
                quote(&format!("H{h}:{}", x.vertex_name(x.target(e))))
            );
        }
        s.push_str("  }\n");
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::develop_ball;
    use crate::families::{salvetti, SimpleGraph};
    use std::sync::Arc;

    #[test]
    fn torus_ball_dot() {
        let t = Arc::new(salvetti(&SimpleGraph::new(2, &[(0, 1)])));
        let ball = develop_ball(t, 0, 1).unwrap();
        let d = skeleton(ball.complex());
        assert_eq!(d.matches(" -> ").count(), 4);
        assert!(d.contains("\"1\""));
        let c = carriers(ball.complex(), &ball.hyperplanes());
        assert_eq!(c.matches("subgraph").count(), 4);
    }
}
