use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::algebra::Scalar;
use crate::error::{Error, Result};

/// `a + b √d` with `a, b, d` in a common field and `d ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    pub a: Scalar,
    pub b: Scalar,
    pub d: Scalar,
}

impl Surd {
    pub fn from_scalar(x: Scalar) -> Surd {
        let f = x.field();
        Surd { a: x, b: f.zero(), d: f.zero() }
    }

    pub fn signum(&self) -> Ordering {
        let (sa, sb) = (self.a.signum(), if self.d.is_zero() { Ordering::Equal } else { self.b.signum() });
        match (sa, sb) {
            (x, Ordering::Equal) => x,
            (Ordering::Equal, y) => y,
            (x, y) if x == y => x,
            // opposite signs: compare a² with b² d
            (x, _) => match (&self.a * &self.a).cmp(&(&self.b * &self.b * &self.d)) {
                Ordering::Greater => x,
                Ordering::Less => x.reverse(),
                Ordering::Equal => Ordering::Equal,
            },
        }
    }

    pub fn cmp_scalar(&self, x: &Scalar) -> Ordering {
        Surd { a: &self.a - x, b: self.b.clone(), d: self.d.clone() }.signum()
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * self.d.to_f64().sqrt()
    }

    /// Decimal with `digits` places after the point (double precision).
    pub fn to_decimal(&self, digits: usize) -> String {
        format!("{:.*}", digits, self.to_f64())
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() || self.d.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + ({})*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl Serialize for Surd {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Surd", 2)?;
        st.serialize_field("approx", &format!("{:.15}", self.to_f64()))?;
        st.serialize_field("exact", &self.to_string())?;
        st.end()
    }
}

/// One term of the lower-bound sequence, with a flag when it fails to
/// exceed 1.
#[derive(Clone, Debug, Serialize)]
pub struct RTerm {
    pub k: usize,
    pub value: Surd,
    pub at_most_one: bool,
}

fn field_of(a: &Scalar, b: &Scalar) -> &'static crate::algebra::Field {
    if a.field().is_rational() {
        b.field()
    } else {
        a.field()
    }
}

fn check_params(epsilon: &Scalar, kappa: &Scalar) -> Result<()> {
    let f = kappa.field();
    if !epsilon.is_positive() || kappa.is_negative() || *kappa >= f.one() {
        return Err(Error::BadParameters("need ε > 0 and 0 ≤ κ < 1".into()));
    }
    Ok(())
}

/// `r_k = min{ -1 + √X, 1 + ε(1-κ)k / (-2 + 2√X) }` with `X = 1 + 2ε(1-κ)k`,
/// and `r_0 = 1`.
///
/// The second branch simplifies to `5/4 + √X/4`, so the minimum is the first
/// branch exactly when `X ≤ 9`.
pub fn r_term(k: usize, epsilon: &Scalar, kappa: &Scalar) -> Result<Surd> {
    check_params(epsilon, kappa)?;
    let f = field_of(epsilon, kappa);
    if k == 0 {
        return Ok(Surd::from_scalar(f.one()));
    }
    let t = epsilon * (f.one() - kappa) * f.int(k as i64);
    let x = f.one() + f.int(2) * &t;
    if x <= f.int(9) {
        Ok(Surd { a: -f.one(), b: f.one(), d: x })
    } else {
        Ok(Surd { a: f.rational(5, 4), b: f.rational(1, 4), d: x })
    }
}

pub fn r_sequence(n: usize, epsilon: &Scalar, kappa: &Scalar) -> Result<Vec<RTerm>> {
    (0..=n)
        .map(|k| {
            let value = r_term(k, epsilon, kappa)?;
            let at_most_one = k > 0 && value.cmp_scalar(&field_of(epsilon, kappa).one()) != Ordering::Greater;
            Ok(RTerm { k, value, at_most_one })
        })
        .collect()
}

/// `L = max{2, 2κλ/(1-κ), (8κ²λ² - 4κλ)/(ε(1-κ))}`.
pub fn constant_l(kappa: &Scalar, lambda_fin: &Scalar, epsilon: &Scalar) -> Result<Scalar> {
    check_params(epsilon, kappa)?;
    let f = [kappa, lambda_fin, epsilon].iter().map(|x| x.field()).find(|f| !f.is_rational()).unwrap_or(kappa.field());
    if *lambda_fin < f.one() {
        return Err(Error::BadParameters("need λ_fin ≥ 1".into()));
    }
    let kl = kappa * lambda_fin;
    let c = f.one() - kappa;
    let second = f.int(2) * &kl / &c;
    let third = (f.int(8) * &kl * &kl - f.int(4) * &kl) / (epsilon * &c);
    Ok(f.int(2).max(second).max(third))
}

/// For `v ≥ 1`, the `log x` with `v = (x + 1/x)/2` and `x ≥ 1`: the distance
/// between the two parallel lines whose roots pair to `v`.
pub fn hyperbolic_distance(v: &Scalar) -> Result<f64> {
    if *v < v.field().one() {
        return Err(Error::BadParameters("value below 1".into()));
    }
    let x = v.to_f64();
    Ok((x + (x * x - 1.0).max(0.0).sqrt()).ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{catalog, CoxeterSystem, Field};

    #[test]
    fn r_examples() {
        let q = Field::rationals();
        let half = q.rational(1, 2);
        assert!(r_term(0, &half, &half).unwrap().cmp_scalar(&q.one()).is_eq());
        let r4 = r_term(4, &half, &half).unwrap();
        assert_eq!(r4, Surd { a: q.int(-1), b: q.one(), d: q.int(3) });
        assert!((r4.to_f64() - 0.732).abs() < 1e-3);
        let r100 = r_term(100, &half, &half).unwrap();
        let direct = 1.0 + 25.0 / (-2.0 + 2.0 * 51f64.sqrt());
        assert!((r100.to_f64() - direct).abs() < 1e-12);
        let seq = r_sequence(4, &half, &half).unwrap();
        assert!(seq[1].at_most_one && seq[4].at_most_one);
        assert!(r_term(1, &q.zero(), &half).is_err());
    }

    #[test]
    fn l_examples() {
        let q = Field::rationals();
        let half = q.rational(1, 2);
        assert_eq!(constant_l(&half, &q.one(), &half).unwrap(), q.int(2));
        let b2 = CoxeterSystem::new(catalog::b(2));
        let f = b2.field();
        let sqrt2 = f.cos_pi_over(4).unwrap() * f.int(2);
        let l = constant_l(&f.rational(1, 2), &sqrt2, &f.rational(1, 4)).unwrap();
        assert_eq!(l, f.int(32) - f.int(16) * &sqrt2);
        assert!(constant_l(&half, &q.one(), &q.zero()).is_err());
    }

    #[test]
    fn hyperbolic() {
        let q = Field::rationals();
        assert_eq!(hyperbolic_distance(&q.one()).unwrap(), 0.0);
        assert!((hyperbolic_distance(&q.rational(5, 4)).unwrap() - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn surd_signs() {
        let q = Field::rationals();
        let s = Surd { a: q.int(3), b: q.int(-1), d: q.int(9) };
        assert_eq!(s.signum(), Ordering::Equal);
        let s = Surd { a: q.int(-3), b: q.int(1), d: q.int(10) };
        assert_eq!(s.signum(), Ordering::Greater);
    }
}
