use num_bigint::BigUint;
use serde::Serialize;

use crate::algebra::Scalar;
use crate::chains::{r_term, Surd};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct KReport {
    pub value: usize,
    /// `rank · κ · λ_max`.
    pub threshold: Scalar,
    pub r_value: Surd,
}

/// `K = min{n : r_n > rank·κ·λ_max}`, with `r_n` built from `ε̂`.
pub fn constant_k(rank: usize, kappa: &Scalar, lambda_max: &Scalar, epsilon: Option<&Scalar>) -> Result<KReport> {
    let eps = epsilon.ok_or(Error::EpsilonUndefined)?;
    let f = [kappa, lambda_max, eps].iter().map(|x| x.field()).find(|f| !f.is_rational()).unwrap_or(kappa.field());
    let threshold = f.int(rank as i64) * kappa * lambda_max;
    let above = |n: usize| -> Result<bool> { Ok(r_term(n, eps, kappa)?.cmp_scalar(&threshold).is_gt()) };
    // r_n is increasing, so search by doubling then bisection
    let mut hi = 1usize;
    while !above(hi)? {
        hi = hi.checked_mul(2).filter(|&h| h <= 1 << 40).ok_or_else(|| Error::ResourceLimit("K too large".into()))?;
    }
    let mut lo = 0usize;
    if above(0)? {
        hi = 0;
    }
    while lo + 1 < hi {
        let mid = (lo + hi) / 2;
        if above(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(KReport { value: hi, r_value: r_term(hi, eps, kappa)?, threshold })
}

/// Upper bounds for the deep-cube threshold: `K' = C(a+b-2, a-1)` with
/// `a = K+9`, `b = N̂+1`, and `A = K' + 1`.
#[derive(Clone, Debug, Serialize)]
pub struct DepthBound {
    pub k: usize,
    pub n_hat: usize,
    #[serde(serialize_with = "ser_big")]
    pub k_prime: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub a: BigUint,
    pub note: &'static str,
}

fn ser_big<S: serde::Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn binomial(n: u64, k: u64) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

pub fn bound_a(k: usize, n_hat: usize) -> DepthBound {
    let a = (k + 9) as u64;
    let b = (n_hat + 1) as u64;
    let k_prime = binomial(a + b - 2, a - 1);
    let big_a = &k_prime + 1u32;
    DepthBound { k, n_hat, k_prime, a: big_a, note: "upper bound, not exact" }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    #[test]
    fn k_by_direct_evaluation() {
        let q = Field::rationals();
        let half = q.rational(1, 2);
        let k = constant_k(3, &half, &q.one(), Some(&half)).unwrap();
        // first n with r_n > 3/2, by evaluating the closed form one term at a time
        let first = (0..).find(|&n| r_term(n, &half, &half).unwrap().to_f64() > 1.5 + 1e-12).unwrap();
        assert_eq!(k.value, first);
        assert!(matches!(constant_k(3, &half, &q.one(), None), Err(Error::EpsilonUndefined)));
    }

    #[test]
    fn ramsey_bound() {
        let b = bound_a(0, 1);
        // R(a, 2) = a
        assert_eq!(b.k_prime, BigUint::from(9u32));
        let b = bound_a(1, 3);
        // C(10 + 4 - 2, 9) = C(12, 9) = 220
        assert_eq!(b.k_prime, BigUint::from(220u32));
        assert_eq!(b.a, BigUint::from(221u32));
    }
}
