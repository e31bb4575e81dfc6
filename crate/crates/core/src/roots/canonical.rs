use std::collections::BTreeSet;

use serde::Serialize;

use super::inventory::RootInventory;
use crate::algebra::{components, diagram_type, validate_matrix, CoxeterMatrix, CoxeterSystem, DiagramType, Root};
use crate::error::{Error, Result};

/// Canonical simple system of a reflection subgroup.
#[derive(Clone, Debug, Serialize)]
pub struct CanonicalSystem {
    /// Inventory indices, ascending.
    pub indices: Vec<usize>,
    pub roots: Vec<Root>,
    /// Coxeter matrix of the subgroup on `roots`.
    #[serde(serialize_with = "ser_matrix")]
    pub matrix: CoxeterMatrix,
    /// The result is certified (pairwise form values admissible and the
    /// generating roots recovered from it).
    pub exact: bool,
    /// The visible closure hit the inventory depth limit.
    pub truncated: bool,
}

fn ser_matrix<S: serde::Serializer>(m: &CoxeterMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    m.rows().serialize(s)
}

impl CanonicalSystem {
    pub fn rank(&self) -> usize {
        self.roots.len()
    }

    /// Connected components (as positions in `roots`) with their types.
    pub fn components(&self) -> Vec<(Vec<usize>, DiagramType)> {
        let all: Vec<usize> = (0..self.rank()).collect();
        components(&self.matrix, &all)
            .into_iter()
            .map(|c| {
                let t = diagram_type(&self.matrix, &c).expect("component is connected");
                (c, t)
            })
            .collect()
    }
}

/// Positive roots of the reflection subgroup generated by `gens` that lie in
/// the inventory, and whether some image fell outside it.
pub fn visible_closure(inv: &RootInventory, gens: &[usize]) -> (BTreeSet<usize>, bool) {
    let sys = inv.system();
    let mut set: BTreeSet<usize> = gens.iter().copied().collect();
    let mut order: Vec<usize> = set.iter().copied().collect();
    let mut truncated = false;
    let mut k = 0;
    while k < order.len() {
        let new = order[k];
        let mut j = 0;
        while j <= k {
            let old = order[j];
            for (a, b) in [(new, old), (old, new)] {
                if a == b {
                    continue;
                }
                let img = sys.reflect(inv.root(a), inv.root(b));
                match inv.index_of(&img.positive()) {
                    Some(i) => {
                        if set.insert(i) {
                            order.push(i);
                        }
                    }
                    None => truncated = true,
                }
            }
            j += 1;
        }
        k += 1;
    }
    (set, truncated)
}

/// Recover `m` from a form value `(a, b) = -cos(π/m)`, `None` meaning ∞.
pub fn order_from_form(sys: &CoxeterSystem, v: &crate::algebra::Scalar) -> Result<Option<u32>> {
    let minus_one = -sys.field().one();
    if *v <= minus_one {
        return Ok(None);
    }
    let x = -v.to_f64();
    if !(x > -1.0 && x < 1.0) || v.is_positive() {
        return Err(Error::InvariantViolation(format!("form value {v} is not -cos(pi/m)")));
    }
    let m = (std::f64::consts::PI / x.acos()).round() as u32;
    for cand in [m, m.saturating_sub(1), m + 1] {
        if cand >= 2 && sys.field().cos_pi_over(cand).as_ref() == Some(&-v) {
            return Ok(Some(cand));
        }
    }
    Err(Error::InvariantViolation(format!("form value {v} is not -cos(pi/m)")))
}

/// Coxeter matrix of a set of positive roots with admissible pairwise values.
pub fn matrix_of_roots(sys: &CoxeterSystem, roots: &[Root]) -> Result<CoxeterMatrix> {
    let n = roots.len();
    let mut raw = vec![vec![1i64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let m = order_from_form(sys, &sys.form(&roots[i], &roots[j]))?;
            let m = m.map_or(0, |m| m as i64);
            raw[i][j] = m;
            raw[j][i] = m;
        }
    }
    validate_matrix(&raw)
}

/// Canonical simple system `Π'` of the subgroup generated by the reflections
/// in `generating` (positive roots in the inventory).
pub fn canonical_simple_system(inv: &RootInventory, generating: &[Root]) -> Result<CanonicalSystem> {
    let mut gens = Vec::new();
    for r in generating {
        if !r.is_positive() {
            return Err(Error::PreconditionFailed("generating roots must be positive".into()));
        }
        gens.push(inv.index_of(r).ok_or(Error::OutOfInventory)?);
    }
    gens.sort_unstable();
    gens.dedup();
    if gens.is_empty() {
        return Err(Error::PreconditionFailed("no generating roots".into()));
    }
    let sys = inv.system();
    let (closure, truncated) = visible_closure(inv, &gens);
    // a non-canonical reflection sends some canonical root negative, so the
    // test is exact once the canonical roots are visible
    let indices: Vec<usize> = closure
        .iter()
        .copied()
        .filter(|&b| closure.iter().all(|&g| g == b || sys.reflect(inv.root(b), inv.root(g)).is_positive()))
        .collect();
    let roots: Vec<Root> = indices.iter().map(|&i| inv.root(i).clone()).collect();
    let (matrix, exact) = match matrix_of_roots(sys, &roots) {
        Ok(m) => {
            let (back, _) = visible_closure(inv, &indices);
            let certified = roots.len() <= gens.len() && gens.iter().all(|g| back.contains(g));
            (m, certified)
        }
        Err(_) => (validate_matrix(&[vec![1]]).unwrap(), false),
    };
    if !exact && !truncated {
        return Err(Error::InvariantViolation("canonical simple system failed certification".into()));
    }
    Ok(CanonicalSystem { indices, roots, matrix, exact, truncated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;
    use crate::roots::enumerate_roots;

    fn ints(inv: &RootInventory, v: &[&[i64]]) -> Vec<Root> {
        v.iter().map(|c| inv.system().vector_from_ints(c)).collect()
    }

    #[test]
    fn a2_full_group() {
        let inv = enumerate_roots(&catalog::a(2), 5).unwrap();
        let cs = canonical_simple_system(&inv, &ints(&inv, &[&[1, 0], &[1, 1]])).unwrap();
        assert_eq!(cs.roots, ints(&inv, &[&[1, 0], &[0, 1]]));
        assert!(cs.exact && !cs.truncated);
        assert_eq!(cs.matrix.m(0, 1), Some(3));
    }

    #[test]
    fn affine_a1_subgroup() {
        let inv = enumerate_roots(&catalog::affine_a(1), 8).unwrap();
        let gens = ints(&inv, &[&[1, 0], &[1, 2]]);
        let cs = canonical_simple_system(&inv, &gens).unwrap();
        assert_eq!(cs.roots, gens);
        assert!(cs.exact && cs.truncated);
        assert_eq!(cs.matrix.m(0, 1), None);
        let one = canonical_simple_system(&inv, &ints(&inv, &[&[2, 3]])).unwrap();
        assert_eq!(one.roots, ints(&inv, &[&[2, 3]]));
    }

    #[test]
    fn b3_parabolic_types() {
        let inv = enumerate_roots(&catalog::b(3), 20).unwrap();
        let all: Vec<Root> = inv.roots().to_vec();
        let cs = canonical_simple_system(&inv, &all).unwrap();
        assert_eq!(cs.rank(), 3);
        assert_eq!(cs.components()[0].1.name.as_deref(), Some("B3"));
    }
}
