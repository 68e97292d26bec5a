//! The subcommands. Each returns its exit code; reports go to the output
//! directory and a short summary to stdout.

use std::fmt::Write as _;
use std::path::Path as FsPath;

use anyhow::{bail, Context, Result};
use cubsc_coneoff::audit::{bigon_candidates, BIGON_BOUND};
use cubsc_coneoff::{
    audit_bigon, audit_projection, build_cone_off, four_point_delta, quasiconvexity_audit, ConeOffError, ContactGraph,
};
use cubsc_core::complex::ComplexError;
use cubsc_core::json::{to_canonical_string, DocError};
use cubsc_core::pieces::{certify as certify_pieces, Budgets, CertifyError, Verdict};
use cubsc_core::presentation::PresentationError;
use cubsc_core::{BallError, CubicalPresentation, Path};
use cubsc_diagram::cayley::{cayley_ball, CayleyError};
use cubsc_diagram::classify::{classify_sides, classify_triangle, ClassifyError, TriangleClassification};
use cubsc_diagram::rectify::{curvature, rectify};
use cubsc_diagram::svg::to_svg;
use cubsc_diagram::{DiscDiagram, SearchBudget, SearchError};
use serde::Serialize;

use crate::{exit, load, load_with_alpha, parse_word, read, word_of, write_out, ClassifyArgs, ConeoffArgs};

/// Name of the check a presentation failed.
pub fn certificate(e: &PresentationError) -> &'static str {
    match e {
        PresentationError::BaseNotNpc(_) => "BaseNotNpc",
        PresentationError::RelatorNotNpc { .. } => "RelatorNotNpc",
        PresentationError::NotLocalIsometry { .. } => "NotLocalIsometry",
        PresentationError::Disconnected(_) => "Disconnected",
        PresentationError::Contractible(_) => "Contractible",
        PresentationError::WrongTarget(_) => "WrongTarget",
        PresentationError::Doc(d) => match d {
            DocError::Parse(_) => "Parse",
            DocError::Map { .. } => "BadMap",
            DocError::Alpha(_) => "BadAlpha",
            DocError::Complex(c) => match c {
                ComplexError::InconsistentFaces { .. } => "InconsistentFaces",
                ComplexError::DanglingReference { .. } => "DanglingReference",
                ComplexError::DuplicateCube { .. } => "DuplicateCube",
                ComplexError::DuplicateId(_) => "DuplicateId",
                ComplexError::Malformed(_) => "Malformed",
            },
        },
    }
}

#[derive(Serialize)]
struct ComplexSummary {
    name: String,
    dim: usize,
    vertices: usize,
    edges: usize,
    squares: usize,
}

#[derive(Serialize)]
struct ValidateReport {
    valid: bool,
    certificate: Option<&'static str>,
    detail: Option<String>,
    complexes: Vec<ComplexSummary>,
}

pub fn validate(path: &FsPath) -> Result<i32> {
    let text = read(path)?;
    let report = match CubicalPresentation::parse(&text) {
        Ok(p) => {
            let mut complexes = vec![summary("base", &p.base)];
            complexes.extend(p.relators.iter().map(|r| summary(&r.name, r.complex())));
            ValidateReport {
                valid: true,
                certificate: None,
                detail: None,
                complexes,
            }
        }
        Err(e) => {
            eprintln!("invalid: {}: {e}", certificate(&e));
            ValidateReport {
                valid: false,
                certificate: Some(certificate(&e)),
                detail: Some(e.to_string()),
                complexes: Vec::new(),
            }
        }
    };
    print!("{}", to_canonical_string(&report));
    Ok(if report.valid { exit::OK } else { exit::INVALID })
}

fn summary(name: &str, x: &cubsc_core::CubeComplex) -> ComplexSummary {
    ComplexSummary {
        name: name.to_string(),
        dim: x.dim(),
        vertices: x.vertex_count(),
        edges: x.edge_count(),
        squares: x.square_count(),
    }
}

pub fn certify(path: &FsPath, alpha: Option<&str>, radius: usize, budgets: &Budgets, out: &FsPath) -> Result<i32> {
    let p = load_with_alpha(path, alpha)?;
    match certify_pieces(&p, radius, budgets) {
        Ok(rep) => {
            write_out(out, "pieces.json", &rep.to_json())?;
            write_out(out, "pieces.csv", &rep.to_csv())?;
            println!("verdict {}", serde_json::to_value(&rep.verdict)?.as_str().unwrap_or("?"));
            print!("{}", rep.to_csv());
            if let Some(w) = &rep.witness {
                println!("witness {}", serde_json::to_string(w)?);
            }
            Ok(match rep.verdict {
                Verdict::CertifiedAtRadius => exit::OK,
                Verdict::Refuted => exit::REFUTED,
                Verdict::Inconclusive => exit::INCONCLUSIVE,
            })
        }
        Err(CertifyError::BudgetExceeded { reason, partial }) => {
            write_out(out, "pieces.json", &partial.to_json())?;
            write_out(out, "pieces.csv", &partial.to_csv())?;
            eprintln!("budget exceeded: {reason}; partial report written");
            Ok(exit::BUDGET)
        }
        Err(CertifyError::Ball(BallError::TooLarge { limit })) => {
            eprintln!("budget exceeded: ball exceeds {limit} vertices");
            Ok(exit::BUDGET)
        }
        Err(e) => Err(e.into()),
    }
}

fn diagram_svg(d: &DiscDiagram) -> String {
    let r = rectify(d);
    let k = curvature(&r);
    to_svg(d, Some((&r, &k)))
}

pub fn classify(args: &ClassifyArgs, out: &FsPath) -> Result<i32> {
    let p = load(&args.path)?;
    let budget = SearchBudget {
        steps: args.steps,
        nodes: args.area,
    };
    let x = &p.base;
    let (result, tripod_word) = if let Some(sides) = &args.sides {
        let mut paths = Vec::new();
        for w in sides {
            paths.push(Path::new(0, parse_word(x, w).with_context(|| format!("side `{w}`"))?));
        }
        let paths: [Path; 3] = paths.try_into().expect("three sides");
        let r = classify_sides(&p, &paths, &budget);
        let tw = |t: &TriangleClassification| t.tripod_point.as_ref().map(|tp| word_of(x, &tp.path));
        let w = r.as_ref().ok().and_then(tw);
        (r, w)
    } else if let Some(points) = &args.points {
        let words: Vec<_> = points
            .iter()
            .map(|w| parse_word(x, w).with_context(|| format!("point `{w}`")))
            .collect::<Result<_>>()?;
        let longest = words.iter().map(Vec::len).max().unwrap_or(0);
        let radius = args.radius.unwrap_or(2 * longest + 1);
        if longest + 1 > radius {
            bail!("points must lie at least 1 inside the ball of radius {radius}");
        }
        let ball = match cayley_ball(&p, radius, &budget) {
            Ok(b) => b,
            Err(CayleyError::BudgetExceeded { pairs }) => {
                eprintln!("budget exceeded: {} vertex pairs undecided", pairs.len());
                return Ok(exit::BUDGET);
            }
            Err(e) => return Err(e.into()),
        };
        let mut vs = Vec::new();
        for (w, darts) in points.iter().zip(&words) {
            vs.push(ball.walk(ball.root(), darts).with_context(|| format!("point `{w}` leaves the ball"))?);
        }
        let r = classify_triangle(&p, &ball, vs[0], vs[1], vs[2], &budget);
        let w = r
            .as_ref()
            .ok()
            .and_then(|t| t.tripod_point.as_ref())
            .and_then(|tp| tp.ball_vertex)
            .map(|v| word_of(x, &ball.name_path(v)));
        (r, w)
    } else {
        bail!("give --points or --sides");
    };
    match result {
        Ok(t) => {
            write_out(out, "triangle.json", &to_canonical_string(&t))?;
            println!("label {}", t.label);
            if let Some(w) = tripod_word {
                println!("tripod-point {w}");
                if p.relators.is_empty() {
                    println!("median {w}");
                }
            }
            println!("internal-cone-cells {}", t.internal_cone_cells);
            if let Some(d) = &t.diagram {
                write_out(out, "triangle.svg", &diagram_svg(d))?;
                let (c, s) = d.complexity();
                println!("diagram cone-cells {c} squares {s}");
            }
            Ok(exit::OK)
        }
        Err(ClassifyError::StructureViolation { reason, diagram }) => {
            write_out(out, "violation.json", &to_canonical_string(&*diagram))?;
            write_out(out, "violation.svg", &diagram_svg(&diagram))?;
            eprintln!("structure violation: {reason}");
            Ok(exit::STRUCTURE_VIOLATION)
        }
        Err(ClassifyError::Search(SearchError::BudgetExceeded { steps })) => {
            eprintln!("budget exceeded after {steps} steps");
            Ok(exit::BUDGET)
        }
        Err(e) => Err(e.into()),
    }
}

#[derive(Serialize)]
struct ConeoffSummary {
    radius: usize,
    seed: u64,
    ball_vertices: usize,
    coneoff_vertices: usize,
    cones: usize,
    projection_passed: bool,
    relator_max: Option<u32>,
    product_max: Option<u32>,
    products: usize,
    bigons: usize,
    bigons_skipped: usize,
    bigon_max: Option<u32>,
    delta: f64,
    delta_exhaustive: bool,
    elevations: usize,
    quasiconvexity_max: Option<u32>,
    overlap_max: Vec<Option<u32>>,
}

pub fn coneoff(args: &ConeoffArgs, seed: u64, out: &FsPath) -> Result<i32> {
    let p = load(&args.path)?;
    let budget = SearchBudget {
        steps: args.steps,
        ..SearchBudget::default()
    };
    let ball = match cayley_ball(&p, args.radius, &budget) {
        Ok(b) => b,
        Err(CayleyError::BudgetExceeded { pairs }) => {
            eprintln!("budget exceeded: {} vertex pairs undecided", pairs.len());
            return Ok(exit::BUDGET);
        }
        Err(e) => return Err(e.into()),
    };
    let g = build_cone_off(&ball, true);
    let proj = audit_projection(&g, &ball);

    let mut bigons = String::from("end,length,squares,hausdorff\n");
    let (mut audited, mut skipped, mut bigon_max) = (0, 0, None::<u32>);
    for (start, a, b) in bigon_candidates(&ball, args.bigon_len.unwrap_or(args.radius / 2)) {
        match audit_bigon(&g, &ball, start, &a, &b, &budget) {
            Ok(r) => {
                audited += 1;
                bigon_max = Some(bigon_max.unwrap_or(0).max(r.hausdorff));
                let end = word_of(&p.base, &a);
                let _ = writeln!(bigons, "{end},{},{},{}", r.length, r.squares, r.hausdorff);
            }
            Err(ConeOffError::NoSquareBigon(_)) => skipped += 1,
            Err(e) => return Err(e.into()),
        }
    }

    let delta = four_point_delta(&g, args.delta_sample, seed);

    // one-vertex bases act transitively, so elevations through the root
    // represent every orbit
    let contact = ContactGraph::build(&ball, false);
    let root = ball.root();
    let elevations: Vec<Vec<usize>> = ball
        .relator_copies()
        .iter()
        .filter(|c| c.vertices.iter().any(|v| v.1 == root))
        .map(|c| contact.copy_hyperplanes(&ball, c))
        .collect();
    let qc = quasiconvexity_audit(&contact, &elevations, args.overlap_radius);

    write_out(out, "coneoff.dot", &g.to_dot())?;
    write_out(out, "coneoff.csv", &g.to_csv())?;
    write_out(out, "contact.dot", &contact.to_dot())?;
    write_out(out, "contact.csv", &contact.to_csv())?;
    write_out(out, "projection.json", &to_canonical_string(&proj))?;
    write_out(out, "products.csv", &proj.products_csv())?;
    write_out(out, "bigons.csv", &bigons)?;
    write_out(out, "delta.csv", &delta.to_csv())?;
    write_out(out, "overlaps.csv", &qc.to_csv())?;

    let summary = ConeoffSummary {
        radius: args.radius,
        seed,
        ball_vertices: ball.vertex_count(),
        coneoff_vertices: g.vertex_count(),
        cones: g.cones().len(),
        projection_passed: proj.passed(),
        relator_max: proj.relator_max,
        product_max: proj.product_max,
        products: proj.products.len(),
        bigons: audited,
        bigons_skipped: skipped,
        bigon_max,
        delta: delta.delta(),
        delta_exhaustive: delta.exhaustive,
        elevations: elevations.len(),
        quasiconvexity_max: qc.constants.iter().copied().max(),
        overlap_max: (0..=args.overlap_radius).map(|r| qc.max_overlap(r)).collect(),
    };
    let text = to_canonical_string(&summary);
    write_out(out, "summary.json", &text)?;
    print!("{text}");
    let bigons_ok = bigon_max.map_or(true, |m| m <= BIGON_BOUND);
    if !proj.passed() || !bigons_ok {
        eprintln!("cone-off audit failed");
        return Ok(exit::STRUCTURE_VIOLATION);
    }
    Ok(exit::OK)
}
