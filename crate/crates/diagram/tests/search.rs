use std::sync::Arc;

use cubsc_core::families::{classical_presentation, salvetti, word_darts, SimpleGraph, CLASSICAL_300, CLASSICAL_300_SIX};
use cubsc_core::{CubicalPresentation, Path};
use cubsc_diagram::{dehn_reduce, find_diagram, is_null_homotopic, NullHomotopy, SearchBudget};
use num_rational::Ratio;

fn torus() -> CubicalPresentation {
    let x = Arc::new(salvetti(&SimpleGraph::path(2)));
    CubicalPresentation::new(x, vec![], Ratio::new(1, 144), true).unwrap()
}

fn path(p: &CubicalPresentation, w: &str) -> Path {
    Path::new(0, word_darts(&p.base, w).unwrap())
}

#[test]
fn square_boundary() {
    let p = torus();
    let d = find_diagram(&p, &path(&p, "abAB"), &SearchBudget::default()).unwrap().unwrap();
    d.validate(&p).unwrap();
    assert_eq!(d.complexity(), (0, 1));
}

#[test]
fn commutator_of_squares() {
    let p = torus();
    let d = find_diagram(&p, &path(&p, "aabbAABB"), &SearchBudget::default()).unwrap().unwrap();
    d.validate(&p).unwrap();
    assert_eq!(d.complexity(), (0, 4));
    // essential loops are refuted outright when there are no relators
    assert_eq!(find_diagram(&p, &path(&p, "ab"), &SearchBudget::default()), Ok(None));
    assert!(is_null_homotopic(&p, &path(&p, "abAAB"), &SearchBudget::default()).is_no());
}

#[test]
fn relator_boundary() {
    let p = classical_presentation(2, &["aabbAB"]).unwrap();
    let d = find_diagram(&p, &path(&p, "aabbAB"), &SearchBudget::default()).unwrap().unwrap();
    d.validate(&p).unwrap();
    assert_eq!(d.complexity(), (1, 0));
}

#[test]
fn long_relator_halves() {
    for (k, w) in [(2usize, CLASSICAL_300), (6, CLASSICAL_300_SIX)] {
        let p = classical_presentation(k, &[w]).unwrap();
        let first = path(&p, &w[..151]);
        let out = dehn_reduce(&p, &first, &SearchBudget::default()).unwrap();
        let last = path(&p, &w[151..]);
        assert_eq!(out.darts, last.inverse(&p.base).darts);
        let again = dehn_reduce(&p, &out, &SearchBudget::default()).unwrap();
        assert_eq!(again, out);
        match is_null_homotopic(&p, &path(&p, w), &SearchBudget::default()) {
            NullHomotopy::Yes(d) => assert_eq!(d.complexity(), (1, 0)),
            other => panic!("{other:?}"),
        }
    }
}
