use cubsc_core::families::{classical_presentation, word_darts, CLASSICAL_300};
use cubsc_core::json::complex_to_string;
use cubsc_core::{develop_ball, Path};
use cubsc_diagram::cayley::{cayley_ball, cayley_ball_with, CayleyOptions};
use cubsc_diagram::samples::torus;
use cubsc_diagram::{dehn_reduce, SearchBudget};

#[test]
fn torus_ball_is_the_developed_ball() {
    let p = torus();
    for r in 0..=4 {
        let c = cayley_ball(&p, r, &SearchBudget::default()).unwrap();
        let d = develop_ball(p.base.clone(), 0, r).unwrap();
        assert_eq!(complex_to_string(c.complex()), complex_to_string(d.complex()));
        assert!(c.folds().is_empty());
        // the l1 ball in the square grid
        assert_eq!(c.vertex_count(), 2 * r * r + 2 * r + 1);
    }
    let c = cayley_ball(&p, 2, &SearchBudget::default()).unwrap();
    assert_eq!(c.vertex_count(), 13);
    assert_eq!(c.complex().square_count(), 4);
}

#[test]
fn cyclic_quotient() {
    for n in [3usize, 5, 6] {
        let p = classical_presentation(1, &["a".repeat(n).as_str()]).unwrap();
        let c = cayley_ball(&p, n, &SearchBudget::default()).unwrap();
        assert_eq!(c.vertex_count(), n, "Z/{n}");
        assert_eq!(c.complex().edge_count(), n);
        for v in 0..n {
            assert_eq!(c.neighbors(v).len(), 2);
        }
        assert!(!c.folds().is_empty());
        let copies = c.relator_copies();
        assert_eq!(copies.len(), 1);
        assert!(copies[0].consistent);
        assert_eq!(copies[0].vertices.len(), n);
        assert!(c.isometry_defects(&copies[0]).is_empty());
    }
}

#[test]
fn long_relator_leaves_small_balls_free() {
    let p = classical_presentation(2, &[CLASSICAL_300]).unwrap();
    let exhaustive = CayleyOptions {
        skip_short: false,
        ..CayleyOptions::default()
    };
    let c = cayley_ball_with(&p, 0, 3, &exhaustive).unwrap();
    assert!(c.folds().is_empty());
    // free group ball: 1 + 4 + 12 + 36
    assert_eq!(c.vertex_count(), 53);
    let fast = cayley_ball(&p, 5, &SearchBudget::default()).unwrap();
    assert_eq!(fast.vertex_count(), 1 + 4 + 12 + 36 + 108 + 324);
    for copy in fast.relator_copies() {
        assert!(copy.consistent);
        assert!(fast.isometry_defects(&copy).is_empty());
    }
}

#[test]
fn json_and_dot() {
    let p = classical_presentation(1, &["aaaa"]).unwrap();
    let c = cayley_ball(&p, 3, &SearchBudget::default()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&c.to_json()).unwrap();
    assert_eq!(v["radius"], 3);
    assert!(v["folds"].as_array().unwrap().len() >= 1);
    assert!(c.to_dot().starts_with("digraph"));
}

#[test]
fn half_relator_reduces_to_the_other_half() {
    let p = classical_presentation(2, &[CLASSICAL_300]).unwrap();
    let w = &CLASSICAL_300[..151];
    let rest = &CLASSICAL_300[151..];
    let darts = word_darts(&p.base, w).unwrap();
    let out = dehn_reduce(&p, &Path::new(0, darts), &SearchBudget::default()).unwrap();
    let expect: Vec<_> = word_darts(&p.base, rest).unwrap().iter().rev().map(|d| d.inverse()).collect();
    assert_eq!(out.darts, expect);
}
