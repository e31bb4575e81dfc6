use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::complex::{CayleyDistance, Cube, VertexSpace};
use crate::algebra::GroupElement;
use crate::chains::{finite_subgroup, parabolic_closure_finite};
use crate::error::{Error, Result};
use crate::roots::parabolic_positive_roots;

#[derive(Clone, Debug, Serialize)]
pub struct SigmaReport {
    pub cube: Cube,
    pub distance: CayleyDistance,
}

/// `σ(T)`: a cube whose walls are the reflections of the parabolic closures
/// of the elements of `T`, as near the Cayley graph as the ball allows.
pub fn sigma_of_tuple(vs: &VertexSpace, tuple: &[GroupElement]) -> Result<SigmaReport> {
    let inv = vs.space().inventory();
    let sys = inv.system();
    if tuple.is_empty() || tuple.iter().any(|t| t.is_identity()) {
        return Err(Error::PreconditionFailed("a tuple consists of nontrivial elements".into()));
    }
    for (i, a) in tuple.iter().enumerate() {
        for b in &tuple[i + 1..] {
            finite_subgroup(sys, &[a.clone(), b.clone()])
                .map_err(|_| Error::PreconditionFailed("a pair of the tuple generates an infinite group".into()))?;
        }
    }
    let mut walls = BTreeSet::new();
    for t in tuple {
        let p = parabolic_closure_finite(sys, std::slice::from_ref(t)).map_err(|e| match e {
            Error::NotFinite => Error::ClosureNotFinite,
            e => e,
        })?;
        for r in parabolic_positive_roots(sys, &p.subset) {
            let image = p.conjugator.act(&r).positive();
            walls.insert(inv.index_of(&image).ok_or(Error::OutOfInventory)?);
        }
    }
    let walls: Vec<usize> = walls.into_iter().collect();
    let (distance, cell) = vs.wall_set_distance(&walls)?;
    Ok(SigmaReport { cube: vs.cube(&cell), distance })
}

#[derive(Clone, Debug, Serialize)]
pub struct TuplesReport {
    /// Covers of the wall set by distinct nonempty subsets.
    pub covers: usize,
    /// Covers whose parts pairwise generate finite groups.
    pub admissible: usize,
    /// Distinct tuples, each as ShortLex words in ShortLex order.
    pub tuples: Vec<Vec<Vec<usize>>>,
}

const MAX_COVER_WALLS: usize = 4;

/// `𝒯(c)`: for every cover `M = M_1 ∪ ... ∪ M_k` with `W(M_i ∪ M_j)` finite,
/// the tuple of ShortLex-least nontrivial elements of the `W(M_i)`.
pub fn tuples_of_cube(vs: &VertexSpace, walls: &[usize]) -> Result<TuplesReport> {
    let k = walls.len();
    if k == 0 {
        return Err(Error::PreconditionFailed("a cube of dimension 0 has no walls".into()));
    }
    if k > MAX_COVER_WALLS {
        return Err(Error::ResourceLimit(format!("covers of more than {MAX_COVER_WALLS} walls")));
    }
    let inv = vs.space().inventory();
    let sys = inv.system();
    let full = (1usize << k) - 1;
    // least nontrivial element of W(M_mask), when that group is finite
    let mut least: HashMap<usize, Option<GroupElement>> = HashMap::new();
    for mask in 1..=full {
        let gens: Vec<GroupElement> =
            (0..k).filter(|b| mask >> b & 1 == 1).map(|b| sys.reflection_element(inv.root(walls[b]))).collect();
        least.insert(mask, finite_subgroup(sys, &gens).ok().map(|g| g[1].clone()));
    }
    let mut covers = 0;
    let mut admissible = 0;
    let mut tuples = BTreeSet::new();
    for family in 1usize..1 << full {
        let parts: Vec<usize> = (1..=full).filter(|m| family >> (m - 1) & 1 == 1).collect();
        if parts.iter().fold(0, |acc, m| acc | m) != full {
            continue;
        }
        covers += 1;
        let ok = parts.iter().all(|&a| least[&a].is_some())
            && parts.iter().enumerate().all(|(i, &a)| parts[i + 1..].iter().all(|&b| least[&(a | b)].is_some()));
        if !ok {
            continue;
        }
        admissible += 1;
        let mut elems: Vec<GroupElement> = parts.iter().map(|m| least[m].clone().unwrap()).collect();
        elems.sort_by(|a, b| a.shortlex_cmp(b));
        elems.dedup();
        tuples.insert(elems.iter().map(|g| g.word().to_vec()).collect::<Vec<_>>());
    }
    let mut tuples: Vec<Vec<Vec<usize>>> = tuples.into_iter().collect();
    tuples.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(TuplesReport { covers, admissible, tuples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;

    /// Covers of an n-set by distinct nonempty subsets, by inclusion-exclusion.
    fn cover_count(n: u32) -> i64 {
        (0..=n)
            .map(|j| {
                let sign = if (n - j).is_multiple_of(2) { 1 } else { -1 };
                let binom = (0..j).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64);
                sign * binom * (1i64 << ((1u32 << j) - 1))
            })
            .sum::<i64>()
    }

    #[test]
    fn covers_by_inclusion_exclusion() {
        assert_eq!(cover_count(2), 5);
        assert_eq!(cover_count(3), 109);
    }

    #[test]
    fn right_angled_square() {
        let vs = VertexSpace::new(&catalog::dihedral(2), 2).unwrap();
        let sys = vs.space().system().clone();
        let s1 = sys.element_from_word(&[0]).unwrap();
        let s2 = sys.element_from_word(&[1]).unwrap();
        let sigma = sigma_of_tuple(&vs, &[s1.clone(), s2]).unwrap();
        assert_eq!(sigma.distance.distance, 0);
        assert_eq!(sigma.cube.walls.len(), 2);
        let edge = sigma_of_tuple(&vs, &[s1]).unwrap();
        assert_eq!(edge.cube.walls, vec![sys.vector_from_ints(&[1, 0])]);
        let t = tuples_of_cube(&vs, &[0, 1]).unwrap();
        assert_eq!(t.covers, 5);
        assert_eq!(t.tuples, vec![vec![vec![0]], vec![vec![0], vec![1]]]);
        assert_eq!(tuples_of_cube(&vs, &[0]).unwrap().tuples, vec![vec![vec![0]]]);
    }

    #[test]
    fn a2_sigma_and_three_cube() {
        let vs = VertexSpace::new(&catalog::a(2), 3).unwrap();
        let sys = vs.space().system().clone();
        let s = |i| sys.element_from_word(&[i]).unwrap();
        let sigma = sigma_of_tuple(&vs, &[s(0), s(1)]).unwrap();
        assert_eq!(sigma.cube.walls, vec![sys.vector_from_ints(&[1, 0]), sys.vector_from_ints(&[0, 1])]);
        let t = tuples_of_cube(&vs, &[0, 1, 2]).unwrap();
        assert_eq!(t.covers as i64, cover_count(3));
        assert_eq!(t.admissible, t.covers);
    }
}
