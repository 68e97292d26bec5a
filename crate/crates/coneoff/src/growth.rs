//! Displacement growth of an element acting on a ball.

use std::fmt::Write;

use cubsc_core::util::bfs;
use cubsc_core::Dart;
use cubsc_diagram::cayley::CayleyBall;
use serde::Serialize;

use crate::contact::ContactGraph;
use crate::graph::build_cone_off;
use crate::ConeOffError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Space {
    /// The 1-skeleton of the ball.
    Cover,
    Contact,
    /// The contact graph with a vertex per relator copy.
    Augmented,
    /// The cone-off over carriers and relator copies.
    ConeOff,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    LoxodromicCandidate,
    Bounded,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthReport {
    /// The element as a word in base edge labels.
    pub element: String,
    pub space: Space,
    /// Distance from the base object to its `n`-th translate, `n = 0..=N`.
    pub distances: Vec<u32>,
    /// Least-squares slope of `distances` against `n`, clamped at zero.
    pub slope: f64,
    pub verdict: Verdict,
    /// `distances[N] / N`.
    pub translation: f64,
}

impl GrowthReport {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,distance\n");
        for (n, d) in self.distances.iter().enumerate() {
            let _ = writeln!(s, "{n},{d}");
        }
        s
    }
}

/// Translates the basepoint of the ball by powers of the closed base path
/// `g` and records displacements in the selected space. In the contact
/// spaces the base object is the hyperplane dual to the first edge of `g`.
pub fn growth_probe(ball: &CayleyBall, g: &[Dart], space: Space, n_max: usize) -> Result<GrowthReport, ConeOffError> {
    let contact = matches!(space, Space::Contact | Space::Augmented);
    let needed = n_max * g.len() + usize::from(contact);
    let too_small = ConeOffError::BallTooSmall {
        needed,
        radius: ball.radius(),
    };
    if g.is_empty() {
        return Err(too_small);
    }
    let mut points = vec![ball.root()];
    for _ in 0..n_max {
        let Some(v) = ball.walk(*points.last().unwrap(), g) else { return Err(too_small) };
        points.push(v);
    }
    let distances: Vec<u32> = match space {
        Space::Cover => {
            let row = bfs(&ball.graph(), points[0]);
            points.iter().map(|&v| row[v]).collect()
        }
        Space::ConeOff => {
            let h = build_cone_off(ball, true);
            points.iter().map(|&v| h.distance(points[0], v)).collect()
        }
        Space::Contact | Space::Augmented => {
            let c = ContactGraph::build(ball, space == Space::Augmented);
            let x = ball.complex();
            let mut hs = Vec::with_capacity(points.len());
            for &v in &points {
                let e = x
                    .out_darts(v)
                    .iter()
                    .find(|&&d| ball.project_dart(d) == g[0])
                    .ok_or(ConeOffError::BallTooSmall {
                        needed,
                        radius: ball.radius(),
                    })?;
                hs.push(c.hyperplane_of_edge(e.edge));
            }
            hs.iter().map(|&h| c.distance(hs[0], h)).collect()
        }
    };
    let base = &ball.presentation().base;
    let element: String = g.iter().map(|&d| base.dart_label(d)).collect();
    Ok(summarize(element, space, distances))
}

fn summarize(element: String, space: Space, distances: Vec<u32>) -> GrowthReport {
    let n = distances.len();
    let slope = least_squares_slope(&distances).max(0.0);
    let tail = &distances[n / 2..];
    let increasing = tail.len() >= 2 && tail.windows(2).all(|w| w[0] < w[1]);
    let spread = tail.iter().max().unwrap_or(&0) - tail.iter().min().unwrap_or(&0);
    let verdict = if increasing && slope > 0.0 {
        Verdict::LoxodromicCandidate
    } else if spread <= 1 {
        Verdict::Bounded
    } else {
        Verdict::Inconclusive
    };
    let translation = if n > 1 { f64::from(distances[n - 1]) / (n - 1) as f64 } else { 0.0 };
    GrowthReport {
        element,
        space,
        distances,
        slope,
        verdict,
        translation,
    }
}

pub fn least_squares_slope(ys: &[u32]) -> f64 {
    let n = ys.len() as f64;
    if ys.len() < 2 {
        return 0.0;
    }
    let mx = (n - 1.0) / 2.0;
    let my = ys.iter().map(|&y| f64::from(y)).sum::<f64>() / n;
    let (mut num, mut den) = (0.0, 0.0);
    for (i, &y) in ys.iter().enumerate() {
        let dx = i as f64 - mx;
        num += dx * (f64::from(y) - my);
        den += dx * dx;
    }
    num / den
}
