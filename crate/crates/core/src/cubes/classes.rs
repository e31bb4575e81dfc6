use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{components, diagram_type, ComponentType, CoxeterMatrix, CoxeterSystem, DiagramType, Root};
use crate::error::{Error, Result};
use crate::roots::{matrix_of_roots, order_from_form, RootInventory, DEFAULT_ROOT_CAP};
use crate::walls::ChamberBall;

const MAX_SUBGROUPS: usize = 200_000;

#[derive(Clone, Debug, Serialize)]
pub struct SphericalClass {
    /// Canonical simple system of the first subgroup found in the class.
    pub representative: Vec<Root>,
    pub components: Vec<DiagramType>,
    /// Subgroups at this depth placed in the class.
    pub members: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub depth: usize,
    pub subgroups: usize,
    pub excluded_affine: usize,
    /// Conjugators were searched up to this length; classes are distinct
    /// only up to it.
    pub conjugator_length_bound: usize,
    /// Some comparison needed a root beyond the inventory.
    pub truncated: bool,
    pub classes: Vec<SphericalClass>,
}

fn admissible(sys: &CoxeterSystem, a: &Root, b: &Root) -> bool {
    let v = sys.form(a, b);
    !v.is_positive() && v > -sys.field().one() && matches!(order_from_form(sys, &v), Ok(Some(_)))
}

/// Permutation-invariant fingerprint of a Coxeter matrix.
fn fingerprint(m: &CoxeterMatrix) -> Vec<Vec<u32>> {
    let mut rows: Vec<Vec<u32>> = m
        .rows()
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r.sort_unstable();
            r
        })
        .collect();
    rows.sort();
    rows
}

/// 2-spherical reflection subgroups generated by reflections of depth at
/// most `depth` and without affine components, up to conjugacy.
///
/// A set of positive roots with pairwise form values `-cos(π/m)` is the
/// canonical simple system of the group it generates, so subgroups are
/// enumerated as such sets. Two subgroups are conjugate when some `w` maps
/// one canonical system onto the other as walls; `w` is searched in the ball
/// of radius `2·depth`.
pub fn enumerate_2spherical_classes(matrix: &CoxeterMatrix, depth: usize) -> Result<ClassReport> {
    let sys = Arc::new(CoxeterSystem::new(matrix.clone()));
    let radius = 2 * depth;
    let inv = RootInventory::build(sys.clone(), 3 * depth, DEFAULT_ROOT_CAP)?;
    let ball = ChamberBall::new(&inv, radius.min(inv.depth_limit()))?;
    let gens: Vec<usize> = inv.up_to_depth(depth).collect();
    let mut sets: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<Vec<usize>> = gens.iter().map(|&g| vec![g]).collect();
    while let Some(s) = stack.pop() {
        let last = *s.last().unwrap();
        for &g in gens.iter().filter(|&&g| g > last) {
            if s.iter().all(|&a| admissible(&sys, inv.root(a), inv.root(g))) {
                let mut t = s.clone();
                t.push(g);
                stack.push(t);
            }
        }
        sets.push(s);
        if sets.len() > MAX_SUBGROUPS {
            return Err(Error::ResourceLimit(format!("more than {MAX_SUBGROUPS} subgroups")));
        }
    }
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut excluded = 0;
    let mut truncated = false;
    // (indices, fingerprint, class)
    let mut reps: Vec<(BTreeSet<usize>, Vec<Vec<u32>>, SphericalClass)> = Vec::new();
    for s in sets {
        let roots: Vec<Root> = s.iter().map(|&i| inv.root(i).clone()).collect();
        let m = matrix_of_roots(&sys, &roots)?;
        let all: Vec<usize> = (0..roots.len()).collect();
        let types: Vec<DiagramType> =
            components(&m, &all).iter().map(|c| diagram_type(&m, c)).collect::<Result<_>>()?;
        if types.iter().any(|t| t.kind == ComponentType::Affine) {
            excluded += 1;
            continue;
        }
        let fp = fingerprint(&m);
        let set: BTreeSet<usize> = s.iter().copied().collect();
        let mut found = None;
        'reps: for (k, (rep, rfp, _)) in reps.iter().enumerate() {
            if *rfp != fp {
                continue;
            }
            for w in ball.elements() {
                let mut image = BTreeSet::new();
                for &i in rep {
                    match inv.index_of(&w.act(inv.root(i)).positive()) {
                        Some(j) => {
                            image.insert(j);
                        }
                        None => {
                            truncated = true;
                            break;
                        }
                    }
                }
                if image == set {
                    found = Some(k);
                    break 'reps;
                }
            }
        }
        match found {
            Some(k) => reps[k].2.members += 1,
            None => reps.push((set, fp, SphericalClass { representative: roots, components: types, members: 1 })),
        }
    }
    let subgroups = excluded + reps.iter().map(|r| r.2.members).sum::<usize>();
    Ok(ClassReport {
        depth,
        subgroups,
        excluded_affine: excluded,
        conjugator_length_bound: ball.radius(),
        truncated,
        classes: reps.into_iter().map(|r| r.2).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoHopf {
    pub co_hopfian: bool,
    pub affine_components: Vec<Vec<usize>>,
}

/// A 2-spherical Coxeter group is co-Hopfian iff its diagram has no
/// component of affine type.
pub fn co_hopf(matrix: &CoxeterMatrix) -> Result<CoHopf> {
    if matrix.has_infinity() {
        return Err(Error::Not2Spherical);
    }
    let all: Vec<usize> = (0..matrix.rank()).collect();
    let mut affine = Vec::new();
    for c in components(matrix, &all) {
        if diagram_type(matrix, &c)?.kind == ComponentType::Affine {
            affine.push(c);
        }
    }
    Ok(CoHopf { co_hopfian: affine.is_empty(), affine_components: affine })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;

    #[test]
    fn small_class_counts() {
        let r = enumerate_2spherical_classes(&catalog::a(2), 3).unwrap();
        assert_eq!(r.classes.len(), 2);
        assert_eq!(r.subgroups, 4);
        let r = enumerate_2spherical_classes(&catalog::dihedral(2), 3).unwrap();
        assert_eq!(r.classes.len(), 3);
    }

    #[test]
    fn co_hopf_examples() {
        let r = co_hopf(&catalog::affine_a(2)).unwrap();
        assert_eq!(r, CoHopf { co_hopfian: false, affine_components: vec![vec![0, 1, 2]] });
        assert!(co_hopf(&catalog::triangle(2, 3, 7)).unwrap().co_hopfian);
        assert!(co_hopf(&catalog::a(2)).unwrap().co_hopfian);
        assert_eq!(co_hopf(&catalog::affine_a(1)), Err(Error::Not2Spherical));
    }
}
