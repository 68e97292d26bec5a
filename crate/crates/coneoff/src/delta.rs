//! Four-point hyperbolicity constant.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::graph::ConeOffGraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaReport {
    /// Vertices the quadruples were drawn from.
    pub vertices: usize,
    pub exhaustive: bool,
    pub quadruples: u64,
    /// Twice the largest four-point defect, so that it stays an integer.
    pub twice_delta: u32,
    pub witness: Option<[usize; 4]>,
    pub seed: u64,
}

impl DeltaReport {
    pub fn delta(&self) -> f64 {
        f64::from(self.twice_delta) / 2.0
    }

    pub fn to_csv(&self) -> String {
        format!(
            "vertices,exhaustive,quadruples,delta,seed\n{},{},{},{},{}\n",
            self.vertices,
            self.exhaustive,
            self.quadruples,
            self.delta(),
            self.seed
        )
    }
}

/// Defect of a quadruple: the largest of the three pair sums minus the
/// middle one.
pub fn four_point_defect(d: impl Fn(usize, usize) -> u32, q: [usize; 4]) -> u32 {
    let [w, x, y, z] = q;
    let mut s = [d(w, x) + d(y, z), d(w, y) + d(x, z), d(w, z) + d(x, y)];
    s.sort_unstable();
    s[2] - s[1]
}

/// Largest defect over all quadruples of vertices when there are at most
/// `sample` of them, otherwise over all quadruples of `sample` vertices
/// drawn with `seed`.
pub fn four_point_delta(g: &ConeOffGraph, sample_size: usize, seed: u64) -> DeltaReport {
    let n = g.vertex_count();
    let exhaustive = n <= sample_size;
    let pts: Vec<usize> = if exhaustive {
        (0..n).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut v = sample(&mut rng, n, sample_size).into_vec();
        v.sort_unstable();
        v
    };
    g.precompute(&pts);
    let m = pts.len();
    // distances among the chosen points only
    let table: Vec<Vec<u32>> = pts
        .iter()
        .map(|&a| {
            let row = g.distances(a);
            pts.iter().map(|&b| row[b]).collect()
        })
        .collect();
    let best = (0..m)
        .into_par_iter()
        .map(|i| {
            let mut best: (u32, Option<[usize; 4]>) = (0, None);
            let ti = &table[i];
            for j in i + 1..m {
                let tj = &table[j];
                let dij = ti[j];
                for k in j + 1..m {
                    let tk = &table[k];
                    let (dik, djk) = (ti[k], tj[k]);
                    for l in k + 1..m {
                        let mut s = [dij + tk[l], dik + tj[l], ti[l] + djk];
                        s.sort_unstable();
                        let e = s[2] - s[1];
                        if e > best.0 {
                            best = (e, Some([pts[i], pts[j], pts[k], pts[l]]));
                        }
                    }
                }
            }
            best
        })
        .reduce(|| (0, None), |a, b| if b.0 > a.0 || (b.0 == a.0 && a.1.is_none()) { b } else { a });
    let mm = m as u64;
    let quadruples = if m < 4 { 0 } else { mm * (mm - 1) * (mm - 2) * (mm - 3) / 24 };
    DeltaReport {
        vertices: m,
        exhaustive,
        quadruples,
        twice_delta: best.0,
        witness: best.1,
        seed,
    }
}
