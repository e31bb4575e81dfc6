//! Coxeter diagram components and their classification by table lookup.

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use super::matrix::CoxeterMatrix;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentType {
    Spherical,
    Affine,
    Indefinite,
}

/// Type of one connected component, with its conventional name
/// (`"A3"`, `"~A2"`, `"I2(7)"`, ...) when it is spherical or affine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramType {
    pub kind: ComponentType,
    pub name: Option<String>,
    pub rank: usize,
}

fn edge(m: &CoxeterMatrix, i: usize, j: usize) -> bool {
    i != j && m.raw(i, j) != 2
}

/// Connected components of the diagram restricted to `subset`
/// (edges are entries other than 2), each sorted, in order of least element.
pub fn components(m: &CoxeterMatrix, subset: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; subset.len()];
    let mut out = Vec::new();
    for start in 0..subset.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![subset[start]];
        let mut stack = vec![start];
        while let Some(a) = stack.pop() {
            for b in 0..subset.len() {
                if !seen[b] && edge(m, subset[a], subset[b]) {
                    seen[b] = true;
                    comp.push(subset[b]);
                    stack.push(b);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out.sort();
    out
}

pub fn classify_component_type(m: &CoxeterMatrix, subset: &[usize]) -> Result<ComponentType> {
    Ok(diagram_type(m, subset)?.kind)
}

pub fn diagram_type(m: &CoxeterMatrix, subset: &[usize]) -> Result<DiagramType> {
    if subset.is_empty() || components(m, subset).len() != 1 {
        return Err(Error::NotConnected);
    }
    let sub = m.restrict(subset);
    let (kind, name) = classify_connected(&sub);
    Ok(DiagramType { kind, name, rank: subset.len() })
}

fn classify_connected(m: &CoxeterMatrix) -> (ComponentType, Option<String>) {
    use ComponentType::*;
    let r = m.rank();
    let indefinite = (Indefinite, None);
    if r == 1 {
        return (Spherical, Some("A1".into()));
    }
    if r == 2 {
        return match m.m(0, 1) {
            None => (Affine, Some("~A1".into())),
            Some(3) => (Spherical, Some("A2".into())),
            Some(4) => (Spherical, Some("B2".into())),
            Some(6) => (Spherical, Some("G2".into())),
            Some(k) => (Spherical, Some(format!("I2({k})"))),
        };
    }
    let mut edges = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            if edge(m, i, j) {
                edges.push((i, j, m.raw(i, j)));
            }
        }
    }
    if edges.iter().any(|&(_, _, l)| l == 0 || l >= 7) {
        return indefinite;
    }
    let adj: Vec<Vec<usize>> = (0..r).map(|i| (0..r).filter(|&j| edge(m, i, j)).collect()).collect();
    let deg: Vec<usize> = adj.iter().map(|a| a.len()).collect();
    let all_three = edges.iter().all(|&(_, _, l)| l == 3);
    if edges.len() >= r {
        if edges.len() == r && deg.iter().all(|&d| d == 2) && all_three {
            return (Affine, Some(format!("~A{}", r - 1)));
        }
        return indefinite;
    }
    let branches: Vec<usize> = (0..r).filter(|&i| deg[i] >= 3).collect();
    if branches.is_empty() {
        // a path; read labels from one end
        let start = (0..r).find(|&i| deg[i] == 1).unwrap();
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while order.len() < r {
            let next = *adj[cur].iter().find(|&&x| x != prev).unwrap();
            prev = cur;
            cur = next;
            order.push(cur);
        }
        let labels: Vec<u32> = order.windows(2).map(|w| m.raw(w[0], w[1])).collect();
        let odd: Vec<(usize, u32)> = labels.iter().copied().enumerate().filter(|&(_, l)| l != 3).collect();
        let last = r - 2;
        return match odd.as_slice() {
            [] => (Spherical, Some(format!("A{r}"))),
            [(p, l)] => {
                let at_end = *p == 0 || *p == last;
                match l {
                    4 if at_end => (Spherical, Some(format!("B{r}"))),
                    4 if r == 4 => (Spherical, Some("F4".into())),
                    4 if r == 5 && (*p == 1 || *p == 2) => (Affine, Some("~F4".into())),
                    5 if at_end && r == 3 => (Spherical, Some("H3".into())),
                    5 if at_end && r == 4 => (Spherical, Some("H4".into())),
                    6 if at_end && r == 3 => (Affine, Some("~G2".into())),
                    _ => indefinite,
                }
            }
            [(p, 4), (q, 4)] if *p == 0 && *q == last => (Affine, Some(format!("~C{}", r - 1))),
            _ => indefinite,
        };
    }
    // legs hanging off a branch node: (length, labels along the leg)
    let leg = |center: usize, first: usize| -> (usize, Vec<u32>) {
        let mut labels = vec![m.raw(center, first)];
        let mut prev = center;
        let mut cur = first;
        let mut len = 1;
        while deg[cur] == 2 {
            let next = *adj[cur].iter().find(|&&x| x != prev).unwrap();
            labels.push(m.raw(cur, next));
            prev = cur;
            cur = next;
            len += 1;
        }
        if deg[cur] >= 3 {
            // ran into another branch node
            return (usize::MAX, labels);
        }
        (len, labels)
    };
    if branches.len() == 1 {
        let c = branches[0];
        if deg[c] == 4 {
            return if r == 5 && all_three { (Affine, Some("~D4".into())) } else { indefinite };
        }
        if deg[c] > 4 {
            return indefinite;
        }
        let legs: Vec<(usize, Vec<u32>)> = adj[c].iter().map(|&f| leg(c, f)).collect();
        if all_three {
            let mut lens: Vec<usize> = legs.iter().map(|l| l.0).collect();
            lens.sort_unstable();
            return match (lens[0], lens[1], lens[2]) {
                (1, 1, _) => (Spherical, Some(format!("D{r}"))),
                (1, 2, 2) => (Spherical, Some("E6".into())),
                (1, 2, 3) => (Spherical, Some("E7".into())),
                (1, 2, 4) => (Spherical, Some("E8".into())),
                (2, 2, 2) => (Affine, Some("~E6".into())),
                (1, 3, 3) => (Affine, Some("~E7".into())),
                (1, 2, 5) => (Affine, Some("~E8".into())),
                _ => indefinite,
            };
        }
        let odd: Vec<u32> = edges.iter().map(|e| e.2).filter(|&l| l != 3).collect();
        if odd == [4] {
            let four: Vec<usize> = (0..3).filter(|&i| legs[i].1.contains(&4)).collect();
            let i = four[0];
            let ends_with_four = legs[i].1.last() == Some(&4);
            let others_short = (0..3).filter(|&j| j != i).all(|j| legs[j].0 == 1);
            if ends_with_four && others_short {
                return (Affine, Some(format!("~B{}", r - 1)));
            }
        }
        return indefinite;
    }
    if branches.len() == 2 && all_three && branches.iter().all(|&b| deg[b] == 3) {
        let ok = branches.iter().all(|&b| adj[b].iter().filter(|&&x| deg[x] == 1).count() == 2);
        if ok {
            return (Affine, Some(format!("~D{}", r - 1)));
        }
    }
    indefinite
}

/// Order of a spherical component by name.
fn spherical_order(name: &str) -> Option<BigUint> {
    let fact = |n: u64| (1..=n).fold(BigUint::one(), |a, k| a * k);
    let (head, rest) = name.split_at(1);
    let n: Option<u64> = rest.parse().ok();
    Some(match (head, n) {
        ("A", Some(n)) => fact(n + 1),
        ("B", Some(n)) => (BigUint::one() << n as usize) * fact(n),
        ("D", Some(n)) => (BigUint::one() << (n - 1) as usize) * fact(n),
        ("E", Some(6)) => BigUint::from(51840u64),
        ("E", Some(7)) => BigUint::from(2903040u64),
        ("E", Some(8)) => BigUint::from(696729600u64),
        ("F", Some(4)) => BigUint::from(1152u64),
        ("G", Some(2)) => BigUint::from(12u64),
        ("H", Some(3)) => BigUint::from(120u64),
        ("H", Some(4)) => BigUint::from(14400u64),
        ("I", None) => {
            let k: u64 = name.trim_start_matches("I2(").trim_end_matches(')').parse().ok()?;
            BigUint::from(2 * k)
        }
        _ => return None,
    })
}

/// `|W_J|` when `W_J` is finite.
pub fn parabolic_order(m: &CoxeterMatrix, subset: &[usize]) -> Option<BigUint> {
    let mut total = BigUint::one();
    for comp in components(m, subset) {
        let t = diagram_type(m, &comp).ok()?;
        if t.kind != ComponentType::Spherical {
            return None;
        }
        total *= spherical_order(t.name.as_deref()?)?;
    }
    Some(total)
}

/// All spherical generator subsets, smallest first.
pub fn spherical_subsets(m: &CoxeterMatrix) -> Vec<Vec<usize>> {
    let n = m.rank();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << n) {
        let subset: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if parabolic_order(m, &subset).is_some() {
            out.push(subset);
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Largest order of a finite standard parabolic subgroup; every finite
/// subgroup of W has at most this order.
pub fn max_finite_order(m: &CoxeterMatrix) -> BigUint {
    spherical_subsets(m).iter().filter_map(|s| parabolic_order(m, s)).max().unwrap_or_else(BigUint::one)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::catalog;

    fn kind(m: &CoxeterMatrix) -> ComponentType {
        let all: Vec<usize> = (0..m.rank()).collect();
        classify_component_type(m, &all).unwrap()
    }

    #[test]
    fn table_examples() {
        assert_eq!(kind(&catalog::a(2)), ComponentType::Spherical);
        assert_eq!(kind(&catalog::affine_a(2)), ComponentType::Affine);
        assert_eq!(kind(&catalog::triangle(2, 3, 7)), ComponentType::Indefinite);
        assert_eq!(kind(&catalog::triangle(2, 3, 6)), ComponentType::Affine);
        assert_eq!(kind(&catalog::triangle(2, 4, 4)), ComponentType::Affine);
        assert_eq!(kind(&catalog::e(8)), ComponentType::Spherical);
        assert_eq!(kind(&catalog::h4()), ComponentType::Spherical);
        let split = catalog::with_edges(2, &[]);
        assert_eq!(classify_component_type(&split, &[0, 1]), Err(Error::NotConnected));
    }

    #[test]
    fn orders() {
        assert_eq!(parabolic_order(&catalog::h3(), &[0, 1, 2]), Some(BigUint::from(120u32)));
        assert_eq!(parabolic_order(&catalog::b(3), &[0, 1, 2]), Some(BigUint::from(48u32)));
        assert_eq!(max_finite_order(&catalog::triangle(2, 3, 7)), BigUint::from(14u32));
        assert_eq!(parabolic_order(&catalog::affine_a(2), &[0, 1, 2]), None);
    }
}
