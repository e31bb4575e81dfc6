use std::collections::HashSet;

use serde::Serialize;

use super::closure::parabolic_closure_of_roots;
use crate::algebra::{diagram_type, ComponentType, CoxeterSystem, Root, Scalar};
use crate::error::{Error, Result};
use crate::roots::{canonical_simple_system, CanonicalSystem};
use crate::walls::{strictly_inside, WallSpace};

#[derive(Clone, Debug, Serialize)]
pub struct LadderReport {
    pub n: usize,
    pub l: Option<Scalar>,
    /// `Some(true)` when `n > L`; `None` when `L` is undefined.
    pub exceeds_l: Option<bool>,
    pub conclusion_checked: bool,
    pub euclidean_triangle: Option<bool>,
    pub closure_affine: Option<bool>,
    pub canonical: Option<CanonicalSystem>,
}

/// Roots of the finite group generated by the reflections in `a` and `b`.
fn dihedral_roots(sys: &CoxeterSystem, a: &Root, b: &Root) -> HashSet<Root> {
    let mut seen: HashSet<Root> = HashSet::new();
    let mut queue = vec![a.positive(), b.positive()];
    while let Some(r) = queue.pop() {
        if seen.len() > 1000 || !seen.insert(r.clone()) {
            continue;
        }
        for g in [a, b] {
            queue.push(sys.reflect(g, &r).positive());
        }
    }
    seen
}

/// Whether the wall of `m` lies inside the half-space `h`.
fn wall_inside(space: &WallSpace, m: &Root, h: &Root) -> bool {
    let inv = space.inventory();
    let p = m.positive();
    strictly_inside(inv, &p, h) || strictly_inside(inv, &-&p, h)
}

/// Checks the hypotheses of the ladder configuration and, when `n` exceeds
/// `L`, that the walls generate a Euclidean triangle group with affine
/// parabolic closure.
pub fn check_ladder(
    space: &WallSpace,
    l: Option<&Scalar>,
    mu: &Root,
    mu_prime: &Root,
    walls: &[Root],
) -> Result<LadderReport> {
    let sys = space.system();
    let one = sys.field().one();
    if walls.is_empty() {
        return Err(Error::HypothesisViolated(2));
    }
    // (1) μ and μ' meet and m_0 passes through their intersection
    if mu.positive() == mu_prime.positive() || sys.form(mu, mu_prime).abs() >= one {
        return Err(Error::HypothesisViolated(1));
    }
    if !dihedral_roots(sys, mu, mu_prime).contains(&walls[0].positive()) {
        return Err(Error::HypothesisViolated(1));
    }
    // (2) m_j separates m_i from m_k
    for j in 0..walls.len() {
        for i in 0..j {
            let h = if wall_inside(space, &walls[i], &walls[j]) {
                walls[j].clone()
            } else if wall_inside(space, &walls[i], &-&walls[j]) {
                -&walls[j]
            } else {
                return Err(Error::HypothesisViolated(2));
            };
            for k in j + 1..walls.len() {
                if !wall_inside(space, &walls[k], &-&h) {
                    return Err(Error::HypothesisViolated(2));
                }
            }
        }
    }
    // (3) the later walls cross μ and μ'
    for m in &walls[1..] {
        if sys.form(m, mu).abs() >= one || sys.form(m, mu_prime).abs() >= one {
            return Err(Error::HypothesisViolated(3));
        }
    }
    let n = walls.len() - 1;
    let exceeds_l = l.map(|l| sys.field().int(n as i64) > *l);
    // L ≥ 2, so short ladders never carry a claim
    let check = exceeds_l.unwrap_or(n > 2);
    let mut report = LadderReport {
        n,
        l: l.cloned(),
        exceeds_l,
        conclusion_checked: check,
        euclidean_triangle: None,
        closure_affine: None,
        canonical: None,
    };
    if check {
        let mut gens = vec![mu.positive(), mu_prime.positive()];
        gens.extend(walls.iter().map(|m| m.positive()));
        let cs = canonical_simple_system(space.inventory(), &gens)?;
        let comps = cs.components();
        report.euclidean_triangle =
            Some(comps.len() == 1 && comps[0].1.kind == ComponentType::Affine && comps[0].1.rank == 3);
        let p = parabolic_closure_of_roots(space.ball(), &cs.roots);
        report.closure_affine =
            Some(matches!(diagram_type(sys.matrix(), &p.subset), Ok(t) if t.kind == ComponentType::Affine));
        report.canonical = Some(cs);
    }
    Ok(report)
}
