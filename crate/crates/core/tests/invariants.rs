//! Property tests against brute-force oracles.

use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use coxwalls::algebra::{catalog, CoxeterMatrix, CoxeterSystem, GroupElement, Root};
use coxwalls::cubes::VertexSpace;
use coxwalls::roots::{constant_kappa, RootInventory};
use coxwalls::walls::{chamber_side, strictly_inside, ChamberBall};
use coxwalls::Error;

const DEPTH: usize = 6;

fn groups() -> &'static [(CoxeterMatrix, RootInventory)] {
    static G: OnceLock<Vec<(CoxeterMatrix, RootInventory)>> = OnceLock::new();
    G.get_or_init(|| {
        [catalog::affine_a(1), catalog::affine_a(2), catalog::triangle(2, 3, 7), catalog::b(3), catalog::h3()]
            .into_iter()
            .map(|m| {
                let sys = Arc::new(CoxeterSystem::new(m.clone()));
                let inv = RootInventory::build(sys, DEPTH, 100_000).unwrap();
                (m, inv)
            })
            .collect()
    })
}

fn pick(inv: &RootInventory, k: usize) -> &Root {
    inv.root(k % inv.len())
}

fn element(sys: &CoxeterSystem, word: &[usize]) -> GroupElement {
    let w: Vec<usize> = word.iter().map(|s| s % sys.rank()).collect();
    sys.element_from_word(&w).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn form_is_invariant(g in 0..5usize, i in any::<usize>(), j in any::<usize>(), word in prop::collection::vec(0..4usize, 0..8)) {
        let (_, inv) = &groups()[g];
        let sys = inv.system();
        let (a, b) = (pick(inv, i), pick(inv, j));
        let w = element(sys, &word);
        prop_assert_eq!(sys.form(&w.act(a), &w.act(b)), sys.form(a, b));
    }

    #[test]
    fn reflections_are_involutions(g in 0..5usize, i in any::<usize>(), j in any::<usize>()) {
        let (_, inv) = &groups()[g];
        let sys = inv.system();
        let (a, x) = (pick(inv, i), pick(inv, j));
        prop_assert_eq!(sys.reflect(a, &sys.reflect(a, x)), x.clone());
        prop_assert_eq!(sys.reflect(a, a), -a);
    }

    #[test]
    fn reflections_conjugate(g in 0..5usize, i in any::<usize>(), j in any::<usize>(), word in prop::collection::vec(0..4usize, 0..8)) {
        let (_, inv) = &groups()[g];
        let sys = inv.system();
        let (a, x) = (pick(inv, i), pick(inv, j));
        let w = element(sys, &word);
        // r_{wa} = w r_a w^{-1}
        prop_assert_eq!(sys.reflect(&w.act(a), x), w.act(&sys.reflect(a, &w.act_inverse(x))));
    }

    #[test]
    fn depth_steps_by_one(g in 0..5usize, i in any::<usize>(), s in 0..4usize) {
        let (_, inv) = &groups()[g];
        let sys = inv.system();
        let k = i % inv.len();
        let a = inv.root(k);
        let d = inv.depth_of(k);
        prop_assert_eq!(sys.depth(a), d);
        let s = s % sys.rank();
        if sys.simple_index(a) == Some(s) {
            return Ok(());
        }
        let b = sys.reflect_simple(s, a);
        prop_assert!(b.is_positive());
        let v = sys.form_simple(a, s);
        let expected = if v.is_positive() { d - 1 } else if v.is_negative() { d + 1 } else { d };
        prop_assert_eq!(sys.depth(&b), expected);
    }
}

/// Containment of half-spaces as sets of chambers in a ball much larger
/// than the walls involved.
#[test]
fn nesting_agrees_with_chambers() {
    for (m, depth, radius) in [
        (catalog::affine_a(1), 6, 14),
        (catalog::affine_a(2), 4, 10),
        (catalog::triangle(2, 3, 7), 4, 16),
        (catalog::b(3), 9, 9),
    ] {
        let sys = Arc::new(CoxeterSystem::new(m));
        let inv = RootInventory::build(sys.clone(), radius, 1_000_000).unwrap();
        let ball = ChamberBall::new(&inv, radius).unwrap();
        let n = inv.up_to_depth(depth).end;
        let signed: Vec<Root> = (0..n).flat_map(|i| [inv.root(i).clone(), -inv.root(i)]).collect();
        let sides: Vec<Vec<bool>> =
            signed.iter().map(|h| ball.elements().iter().map(|w| chamber_side(w, h)).collect()).collect();
        for (x, a) in signed.iter().enumerate() {
            for (y, b) in signed.iter().enumerate() {
                if a.positive() == b.positive() {
                    continue;
                }
                let subset = sides[x].iter().zip(&sides[y]).all(|(&p, &q)| !p || q);
                assert_eq!(strictly_inside(&inv, a, b), subset, "{a} ⊊ {b}");
            }
        }
    }
}

/// κ against the largest value below 1 over every pair of roots.
#[test]
fn kappa_by_exhaustion() {
    for (m, depth) in [(catalog::a(3), 10), (catalog::b(3), 10), (catalog::h3(), 20), (catalog::affine_a(2), 8)] {
        let sys = Arc::new(CoxeterSystem::new(m.clone()));
        let inv = RootInventory::build(sys.clone(), depth, 100_000).unwrap();
        let one = sys.field().one();
        let mut best = sys.field().zero();
        for i in 0..inv.len() {
            for j in i + 1..inv.len() {
                let v = inv.form(i, j).abs();
                if v < one && v > best {
                    best = v;
                }
            }
        }
        assert_eq!(constant_kappa(&m).value, best);
    }
}

/// A root descends to a root with no more roots inside it.
#[test]
fn descent_keeps_inner_count() {
    for m in [catalog::affine_a(2), catalog::triangle(2, 3, 7)] {
        let sys = Arc::new(CoxeterSystem::new(m));
        let inv = RootInventory::build(sys.clone(), 10, 100_000).unwrap();
        let inner = |k: usize| (0..inv.len()).filter(|&j| strictly_inside(&inv, inv.root(j), inv.root(k))).count();
        for k in 0..inv.len() {
            let a = inv.root(k);
            for s in 0..sys.rank() {
                if sys.simple_index(a).is_none() && sys.form_simple(a, s).is_positive() {
                    let b = inv.index_of(&sys.reflect_simple(s, a)).unwrap();
                    assert!(inner(b) <= inner(k));
                }
            }
        }
    }
}

#[test]
fn pairwise_crossing_walls_span_a_cube() {
    let vs = VertexSpace::new(&catalog::a(2), 3).unwrap();
    let inv = vs.space().inventory();
    let idx = |c: &[i64]| inv.index_of(&inv.system().vector_from_ints(c)).unwrap();
    let (cell, dist) = vs.cube_from_pairwise(&[idx(&[1, 0]), idx(&[0, 1])], &vs.empty(), 0).unwrap();
    assert_eq!(dist, 0);
    assert_eq!(vs.cube_vertices(&cell).len(), 4);
    assert!(vs.cube_vertices(&cell).iter().all(|d| vs.is_valid(d)));

    let vs = VertexSpace::new(&catalog::affine_a(1), 3).unwrap();
    let inv = vs.space().inventory();
    let idx = |c: &[i64]| inv.index_of(&inv.system().vector_from_ints(c)).unwrap();
    assert_eq!(
        vs.cube_from_pairwise(&[idx(&[1, 0]), idx(&[0, 1])], &vs.empty(), 3).unwrap_err(),
        Error::NotPairwiseCrossing
    );
}
