use std::collections::{BTreeSet, HashSet};

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::algebra::{max_finite_order, CoxeterSystem, GroupElement, Root};
use crate::error::{Error, Result};
use crate::walls::ChamberBall;

/// A parabolic subgroup `x W_J x⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Parabolic {
    pub conjugator: GroupElement,
    pub subset: Vec<usize>,
}

/// All elements of the subgroup generated by `gens`, failing with
/// `NotFinite` beyond the largest finite subgroup order.
pub fn finite_subgroup(sys: &CoxeterSystem, gens: &[GroupElement]) -> Result<Vec<GroupElement>> {
    let bound = max_finite_order(sys.matrix()).to_usize().unwrap_or(usize::MAX);
    let mut seen: HashSet<GroupElement> = HashSet::new();
    let mut out = vec![sys.identity()];
    seen.insert(sys.identity());
    let mut k = 0;
    while k < out.len() {
        for g in gens {
            let h = sys.multiply(&out[k], g);
            if seen.insert(h.clone()) {
                out.push(h);
                if out.len() > bound {
                    return Err(Error::NotFinite);
                }
            }
        }
        k += 1;
    }
    out.sort_by(|a, b| a.shortlex_cmp(b));
    Ok(out)
}

fn conjugate(sys: &CoxeterSystem, x: &GroupElement, g: &GroupElement) -> GroupElement {
    // x⁻¹ g x
    let mut word: Vec<usize> = x.word().iter().rev().copied().collect();
    word.extend_from_slice(g.word());
    word.extend_from_slice(x.word());
    sys.element_from_word(&word).expect("indices in range")
}

fn letters(elements: impl IntoIterator<Item = GroupElement>) -> Vec<usize> {
    let set: BTreeSet<usize> = elements.into_iter().flat_map(|g| g.word().to_vec()).collect();
    set.into_iter().collect()
}

/// Parabolic closure of a finite subgroup.
///
/// Descends from `C` along chambers lowering `Σ_g d(xC, gxC)`; a local
/// minimum lies in the residue of the closure, where the letters of the
/// conjugated elements give its type.
pub fn parabolic_closure_finite(sys: &CoxeterSystem, gens: &[GroupElement]) -> Result<Parabolic> {
    let group = finite_subgroup(sys, gens)?;
    let cost = |x: &GroupElement| -> usize { group.iter().map(|g| conjugate(sys, x, g).length()).sum() };
    let mut x = sys.identity();
    let mut current = cost(&x);
    loop {
        let mut best: Option<(usize, GroupElement)> = None;
        for s in 0..sys.rank() {
            let y = sys.element_from_word(&[x.word(), &[s]].concat())?;
            let c = cost(&y);
            if c < current && best.as_ref().is_none_or(|(bc, by)| c < *bc || (c == *bc && y.shortlex_cmp(by).is_lt())) {
                best = Some((c, y));
            }
        }
        match best {
            Some((c, y)) => {
                current = c;
                x = y;
            }
            None => break,
        }
        if x.length() > 4 * group.len() + 64 {
            return Err(Error::SearchExhausted("descent did not settle".into()));
        }
    }
    let subset = letters(gens.iter().map(|g| conjugate(sys, &x, g)));
    Ok(Parabolic { conjugator: x, subset })
}

/// Smallest `x W_J x⁻¹` containing the reflections in `roots`, over
/// conjugators `x` in the ball. The first chamber (ShortLex) of least `|J|`
/// is returned.
pub fn parabolic_closure_of_roots(ball: &ChamberBall, roots: &[Root]) -> Parabolic {
    let mut best: Option<(usize, usize, Vec<usize>)> = None;
    for (i, x) in ball.elements().iter().enumerate() {
        let mut set = BTreeSet::new();
        for r in roots {
            set.extend(x.act_inverse(r).support());
        }
        if best.as_ref().is_none_or(|(n, _, _)| set.len() < *n) {
            best = Some((set.len(), i, set.into_iter().collect()));
        }
    }
    let (_, i, subset) = best.expect("the ball contains the identity");
    Parabolic { conjugator: ball.element(i).clone(), subset }
}
