use std::collections::HashSet;

use serde::Serialize;

use super::inventory::{RootInventory, DEFAULT_ROOT_CAP};
use crate::algebra::{spherical_subsets, CoxeterMatrix, CoxeterSystem, Root, Scalar};
use crate::error::{Error, Result};
use std::sync::Arc;

/// A constant together with the roots realizing it. `defined` is false when
/// no qualifying configuration exists and a conventional value was used.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Constant {
    pub value: Scalar,
    pub defined: bool,
    pub witness: Vec<Root>,
}

/// Positive roots of the standard parabolic `W_J` (finite `J` only).
pub fn parabolic_positive_roots(system: &CoxeterSystem, subset: &[usize]) -> Vec<Root> {
    let mut seen: HashSet<Root> = HashSet::new();
    let mut out = Vec::new();
    let mut queue: Vec<Root> = subset.iter().map(|&s| system.simple_root(s)).collect();
    while let Some(r) = queue.pop() {
        if !seen.insert(r.clone()) {
            continue;
        }
        for &s in subset {
            let img = system.reflect_simple(s, &r);
            if img.is_positive() && !seen.contains(&img) {
                queue.push(img);
            }
        }
        out.push(r);
    }
    out.sort_by(|a, b| system.depth(a).cmp(&system.depth(b)).then_with(|| a.cmp(b)));
    out
}

/// Spherical subsets not contained in a larger spherical subset.
fn maximal_spherical(m: &CoxeterMatrix) -> Vec<Vec<usize>> {
    let all = spherical_subsets(m);
    all.iter().filter(|j| !all.iter().any(|k| k.len() > j.len() && j.iter().all(|x| k.contains(x)))).cloned().collect()
}

/// κ: the largest `|(a, b)| < 1` over pairs of roots.
///
/// A pair with `|(a, b)| < 1` generates a finite dihedral group, which is
/// conjugate into a spherical standard parabolic, so only those are scanned.
pub fn constant_kappa(matrix: &CoxeterMatrix) -> Constant {
    let system = CoxeterSystem::new(matrix.clone());
    let one = system.field().one();
    let mut best: Option<(Scalar, Vec<Root>)> = None;
    for j in maximal_spherical(matrix) {
        let roots = parabolic_positive_roots(&system, &j);
        for (i, a) in roots.iter().enumerate() {
            for b in &roots[i + 1..] {
                let v = system.form(a, b).abs();
                if v < one && best.as_ref().is_none_or(|(x, _)| &v > x) {
                    best = Some((v, vec![a.clone(), b.clone()]));
                }
            }
        }
    }
    match best {
        Some((value, witness)) => Constant { value, defined: true, witness },
        None => Constant { value: system.field().zero(), defined: false, witness: Vec::new() },
    }
}

/// Coefficients `(x, y)` with `a = x p + y q`, when `a` lies in the span.
pub(crate) fn plane_coefficients(system: &CoxeterSystem, a: &Root, p: &Root, q: &Root) -> Option<(Scalar, Scalar)> {
    let c = system.form(p, q);
    let det = system.field().one() - &c * &c;
    if det.is_zero() {
        return None;
    }
    let ap = system.form(a, p);
    let aq = system.form(a, q);
    let inv = det.inverse();
    let x = (&ap - &c * &aq) * &inv;
    let y = (&aq - &c * &ap) * &inv;
    if p.scale(&x).add(&q.scale(&y)) == *a {
        Some((x, y))
    } else {
        None
    }
}

/// λ_fin: the largest coefficient `x` in `a = x p + y q` over roots with
/// `|(p, q)| < 1`. Conventionally 1 when no such triple exists.
pub fn constant_lambda_fin(matrix: &CoxeterMatrix) -> Constant {
    let system = CoxeterSystem::new(matrix.clone());
    let one = system.field().one();
    let mut best: Option<(Scalar, Vec<Root>)> = None;
    for j in maximal_spherical(matrix) {
        let roots = parabolic_positive_roots(&system, &j);
        for (i, p) in roots.iter().enumerate() {
            for (k, q) in roots.iter().enumerate() {
                if i == k {
                    continue;
                }
                if system.form(p, q).abs() >= one {
                    continue;
                }
                for a in &roots {
                    if let Some((x, _)) = plane_coefficients(&system, a, p, q) {
                        // a sign change on p flips x
                        let (x, p) = if x.is_negative() { (-x, -p) } else { (x, p.clone()) };
                        if best.as_ref().is_none_or(|(b, _)| &x > b) {
                            best = Some((x, vec![a.clone(), p, q.clone()]));
                        }
                    }
                }
            }
        }
    }
    match best {
        Some((value, witness)) => Constant { value, defined: true, witness },
        None => Constant { value: one, defined: false, witness: Vec::new() },
    }
}

/// Small roots of a built inventory: positive roots with no other positive
/// root strictly inside them. Returns indices.
pub fn small_roots_in(inv: &RootInventory) -> Vec<usize> {
    let one = inv.system().field().one();
    (0..inv.len())
        .filter(|&i| {
            let d = inv.depth_of(i);
            !(0..inv.len()).any(|j| inv.depth_of(j) < d && inv.form(i, j) >= one)
        })
        .collect()
}

/// The finite set of small roots. Every small root descends to a small root
/// one level up, so the search stops at the first depth with none.
pub fn small_roots(matrix: &CoxeterMatrix) -> Result<Vec<Root>> {
    let system = Arc::new(CoxeterSystem::new(matrix.clone()));
    let mut limit = 4;
    loop {
        let inv = RootInventory::build(system.clone(), limit, DEFAULT_ROOT_CAP)?;
        let small = small_roots_in(&inv);
        let deepest = small.iter().map(|&i| inv.depth_of(i)).max().unwrap_or(0);
        if deepest < limit || inv.is_complete() {
            return Ok(small.into_iter().map(|i| inv.root(i).clone()).collect());
        }
        limit *= 2;
        if limit > 1 << 12 {
            return Err(Error::ResourceLimit("small roots did not terminate".into()));
        }
    }
}

/// λ_max: the largest coordinate of a small root.
pub fn constant_lambda_max(matrix: &CoxeterMatrix) -> Result<Constant> {
    let small = small_roots(matrix)?;
    let mut best: Option<(Scalar, Root)> = None;
    for r in &small {
        for c in r.coords() {
            if best.as_ref().is_none_or(|(b, _)| c > b) {
                best = Some((c.clone(), r.clone()));
            }
        }
    }
    let (value, root) = best.expect("the simple roots are small");
    Ok(Constant { value, defined: true, witness: vec![root] })
}
