//! Cubical presentations and relator systoles.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::Ratio;
use serde::Serialize;

use crate::ball::{develop_unchecked, BallError};
use crate::complex::{CubeComplex, CubeRef, NpcViolation};
use crate::json::{to_canonical_string, DocError, ParsedPresentation, RawComplex, RawPresentation, RawRelator};
use crate::map::CubicalMap;

#[derive(thiserror::Error, Debug)]
pub enum PresentationError {
    #[error("base complex is not nonpositively curved: {0:?}")]
    BaseNotNpc(NpcViolation),
    #[error("relator `{relator}` is not nonpositively curved: {violation:?}")]
    RelatorNotNpc { relator: String, violation: NpcViolation },
    #[error("relator `{relator}` is not a local isometry at `{vertex}`: {reason}")]
    NotLocalIsometry {
        relator: String,
        vertex: String,
        reason: &'static str,
    },
    #[error("relator `{0}` is disconnected")]
    Disconnected(String),
    #[error("relator `{0}` is contractible but the presentation is marked normalized")]
    Contractible(String),
    #[error("relator `{0}` does not map into the base complex")]
    WrongTarget(String),
    #[error(transparent)]
    Doc(#[from] DocError),
}

#[derive(Clone, Debug)]
pub struct Relator {
    pub name: String,
    pub map: CubicalMap,
}

impl Relator {
    pub fn complex(&self) -> &Arc<CubeComplex> {
        self.map.source()
    }
}

/// `<X | Y_1, ..., Y_k>` with the small-cancellation parameter.
#[derive(Clone, Debug)]
pub struct CubicalPresentation {
    pub base: Arc<CubeComplex>,
    pub relators: Vec<Relator>,
    pub alpha: Ratio<i64>,
    pub normalized: bool,
}

impl CubicalPresentation {
    pub fn new(
        base: Arc<CubeComplex>,
        relators: Vec<Relator>,
        alpha: Ratio<i64>,
        normalized: bool,
    ) -> Result<CubicalPresentation, PresentationError> {
        if let Some(v) = base.check_npc().violation {
            return Err(PresentationError::BaseNotNpc(v));
        }
        for r in &relators {
            if !Arc::ptr_eq(r.map.target(), &base) && r.map.target().names(1) != base.names(1) {
                return Err(PresentationError::WrongTarget(r.name.clone()));
            }
            let y = r.complex();
            if let Some(violation) = y.check_npc().violation {
                return Err(PresentationError::RelatorNotNpc {
                    relator: r.name.clone(),
                    violation,
                });
            }
            if !y.is_connected() {
                return Err(PresentationError::Disconnected(r.name.clone()));
            }
            if let Some((v, reason)) = r.map.local_isometry_failure() {
                return Err(PresentationError::NotLocalIsometry {
                    relator: r.name.clone(),
                    vertex: y.vertex_name(v).to_string(),
                    reason,
                });
            }
            if normalized && is_contractible(y) {
                return Err(PresentationError::Contractible(r.name.clone()));
            }
        }
        Ok(CubicalPresentation {
            base,
            relators,
            alpha,
            normalized,
        })
    }

    pub fn from_parsed(p: ParsedPresentation) -> Result<CubicalPresentation, PresentationError> {
        let relators = p
            .relators
            .into_iter()
            .map(|(name, map)| Relator { name, map })
            .collect();
        CubicalPresentation::new(p.base, relators, p.alpha, p.normalized)
    }

    pub fn parse(text: &str) -> Result<CubicalPresentation, PresentationError> {
        CubicalPresentation::from_parsed(crate::json::parse_document(text)?)
    }

    pub fn with_alpha(mut self, alpha: Ratio<i64>) -> CubicalPresentation {
        self.alpha = alpha;
        self
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    pub fn to_raw(&self) -> RawPresentation {
        let relators = self
            .relators
            .iter()
            .map(|r| {
                let y = r.complex();
                let mut map = BTreeMap::new();
                for d in 0..=y.dim() {
                    for i in 0..y.count(d) {
                        let c = CubeRef { dim: d, index: i };
                        map.insert(y.name(c).to_string(), self.base.name(r.map.image(c)).to_string());
                    }
                }
                RawRelator {
                    complex: RawComplex::from_complex(y),
                    map,
                    name: Some(r.name.clone()),
                }
            })
            .collect();
        RawPresentation {
            alpha: self.alpha.to_string(),
            base: RawComplex::from_complex(&self.base),
            normalized: self.normalized,
            relators,
        }
    }

    /// The presentation as a JSON document that `parse` reads back.
    pub fn to_document(&self) -> String {
        to_canonical_string(&self.to_raw())
    }
}

/// Least length of an essential closed path, or a lower bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum Systole {
    Exact(usize),
    /// No essential loop of length below this value was found.
    AtLeast(usize),
}

impl Systole {
    pub fn exact(self) -> Option<usize> {
        match self {
            Systole::Exact(n) => Some(n),
            Systole::AtLeast(_) => None,
        }
    }

    pub fn bound(self) -> usize {
        match self {
            Systole::Exact(n) | Systole::AtLeast(n) => n,
        }
    }
}

impl std::fmt::Display for Systole {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Systole::Exact(n) => write!(f, "{n}"),
            Systole::AtLeast(n) => write!(f, ">={n}"),
        }
    }
}

const SYSTOLE_VERTEX_LIMIT: usize = 400_000;

/// Systole of an NPC complex: the least distance between two lifts of one
/// vertex in the universal cover, searched up to `maxlen`.
pub fn systole(y: &Arc<CubeComplex>, maxlen: usize) -> Systole {
    let mut best: Option<usize> = None;
    let mut truncated = false;
    for v in 0..y.vertex_count() {
        let cap = best.map_or(maxlen, |b| b.saturating_sub(1).min(maxlen));
        let mut r = cap.min(8);
        loop {
            match develop_unchecked(y.clone(), v, r, SYSTOLE_VERTEX_LIMIT) {
                Ok(ball) => {
                    let found = (1..ball.vertex_count())
                        .filter(|&u| ball.project_vertex(u) == v)
                        .map(|u| ball.depth(u))
                        .min();
                    if let Some(d) = found {
                        best = Some(best.map_or(d, |b| b.min(d)));
                        break;
                    }
                }
                Err(BallError::TooLarge { .. }) => {
                    truncated = true;
                    break;
                }
                Err(_) => {
                    truncated = true;
                    break;
                }
            }
            if r >= cap {
                break;
            }
            r = (2 * r).min(cap);
        }
    }
    match best {
        Some(b) if !truncated => Systole::Exact(b),
        Some(b) => Systole::AtLeast(b.min(maxlen)),
        None if truncated => Systole::AtLeast(1),
        None => Systole::AtLeast(maxlen + 1),
    }
}

/// Contractibility of a connected NPC complex: its universal cover is
/// finite exactly when the fundamental group is trivial, and an infinite cover
/// already has more than `|V|` vertices within radius `|V|`.
pub fn is_contractible(y: &Arc<CubeComplex>) -> bool {
    let n = y.vertex_count();
    if n == 0 {
        return true;
    }
    match develop_unchecked(y.clone(), 0, n, n.max(16) * 64) {
        Ok(ball) => ball.vertex_count() == n,
        Err(_) => false,
    }
}
