//! The bundled fixture presentations.

use std::path::Path as FsPath;
use std::sync::Arc;

use anyhow::{Context, Result};
use cubsc_core::families::{
    artin_presentation, classical_presentation, salvetti, ArtinSpec, AxisBudget, SimpleGraph, CLASSICAL_300,
    CLASSICAL_300_SIX, DEFAULT_ALPHA,
};
use cubsc_core::json::to_canonical_string;
use cubsc_core::CubicalPresentation;
use num_rational::Ratio;

use crate::{exit, read, write_out};

/// Fixture names, in the order they are written.
pub const NAMES: [&str; 8] = [
    "torus",
    "tree",
    "raag-path-3",
    "artin-73",
    "artin-50",
    "classical-300",
    "classical-300-c6",
    "broken-faces",
];

/// A square listing three of its four faces.
const BROKEN_FACES: &str = r#"{
  "cubes": [
    [{"id": "v"}],
    [
      {"faces": [{"axis": 0, "cube": "v", "side": 0}, {"axis": 0, "cube": "v", "side": 1}], "id": "a"},
      {"faces": [{"axis": 0, "cube": "v", "side": 0}, {"axis": 0, "cube": "v", "side": 1}], "id": "b"}
    ],
    [
      {"faces": [
        {"axis": 0, "cube": "a", "side": 0},
        {"axis": 0, "cube": "a", "side": 1},
        {"axis": 1, "cube": "b", "side": 0}
      ], "id": "s"}
    ]
  ],
  "dim": 2,
  "labels": {"a": "a", "b": "b"}
}
"#;

fn cube_complex(g: &SimpleGraph) -> Result<CubicalPresentation> {
    Ok(CubicalPresentation::new(
        Arc::new(salvetti(g)),
        Vec::new(),
        Ratio::new(DEFAULT_ALPHA.0, DEFAULT_ALPHA.1),
        true,
    )?)
}

pub fn artin_spec(m: u32) -> ArtinSpec {
    ArtinSpec::two_generator(Some(m))
}

/// The presentation of a fixture.
pub fn presentation(name: &str) -> Result<CubicalPresentation> {
    Ok(match name {
        "torus" => cube_complex(&SimpleGraph::path(2))?,
        "tree" => classical_presentation(2, &[])?,
        "raag-path-3" => cube_complex(&SimpleGraph::path(3))?,
        "artin-73" => artin_presentation(&artin_spec(73), AxisBudget::default())?.0,
        "artin-50" => artin_presentation(&artin_spec(50), AxisBudget::default())?.0,
        "classical-300" => classical_presentation(2, &[CLASSICAL_300])?,
        "classical-300-c6" => classical_presentation(6, &[CLASSICAL_300_SIX])?,
        _ => anyhow::bail!("no fixture named `{name}`"),
    })
}

/// The file contents of a fixture.
pub fn document(name: &str) -> Result<String> {
    if name == "broken-faces" {
        return Ok(BROKEN_FACES.to_string());
    }
    Ok(presentation(name)?.to_document())
}

/// Writes every fixture and the Artin matrices, or only the presentation
/// built from `artin`.
pub fn write_fixtures(out: &FsPath, artin: Option<&FsPath>) -> Result<i32> {
    if let Some(path) = artin {
        let spec: ArtinSpec = serde_json::from_str(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
        let (p, adm) = artin_presentation(&spec, AxisBudget::default())?;
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("artin");
        let stem = stem.strip_suffix(".spec").unwrap_or(stem);
        let f = write_out(out, &format!("{stem}.json"), &p.to_document())?;
        println!("wrote {}", f.display());
        println!("admissibility {}", serde_json::to_string(&adm)?);
        return Ok(exit::OK);
    }
    for name in NAMES {
        let f = write_out(out, &format!("{name}.json"), &document(name)?)?;
        println!("wrote {}", f.display());
    }
    for m in [73, 50] {
        let f = write_out(out, &format!("artin-{m}.spec.json"), &to_canonical_string(&artin_spec(m)))?;
        println!("wrote {}", f.display());
    }
    Ok(exit::OK)
}
