//! Exact arithmetic in real cyclotomic fields.
//!
//! A field is `Q(θ)` with `θ = 2cos(2π/N)`. Elements are stored as integer
//! coordinates over the power basis `1, θ, …, θ^(d-1)` together with one
//! positive common denominator. The representation is canonical, so equality
//! is coordinate equality and zero-testing is exact. Signs are decided by
//! interval evaluation at increasing dyadic precision; since a nonzero
//! element has a nonzero value, refinement always terminates.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A real cyclotomic field, interned for the lifetime of the process.
pub struct Field {
    conductor: u32,
    degree: usize,
    /// Monic minimal polynomial of θ, low degree first.
    minpoly: Vec<BigInt>,
    /// `θ^k mod minpoly` for `k = degree .. 2*degree-1`.
    reductions: Vec<Vec<BigInt>>,
    theta: f64,
    bounds: Mutex<Vec<Arc<PowerBounds>>>,
}

/// Integer bounds `lo[k] <= θ^k 2^prec <= hi[k]`.
struct PowerBounds {
    prec: u32,
    lo: Vec<BigInt>,
    hi: Vec<BigInt>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field(N={}, d={})", self.conductor, self.degree)
    }
}

fn registry() -> &'static Mutex<HashMap<u32, &'static Field>> {
    static REG: OnceLock<Mutex<HashMap<u32, &'static Field>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Field {
    /// The rational numbers.
    pub fn rationals() -> &'static Field {
        Field::with_conductor(1)
    }

    /// `Q(2cos(2π/n))`. Conductors whose field is `Q` all map to the same
    /// interned instance.
    pub fn with_conductor(n: u32) -> &'static Field {
        let n = if matches!(n, 0..=4 | 6) { 1 } else { n };
        let mut reg = registry().lock().unwrap();
        if let Some(f) = reg.get(&n) {
            return f;
        }
        let field: &'static Field = Box::leak(Box::new(Field::build(n)));
        reg.insert(n, field);
        field
    }

    /// Smallest interned field containing every `cos(π/m)` for the given
    /// orders. Orders 2 and 3 have rational cosines and are skipped.
    pub fn for_orders<I: IntoIterator<Item = u32>>(orders: I) -> &'static Field {
        let mut l: u64 = 1;
        for m in orders {
            if m >= 4 {
                l = l.lcm(&(m as u64));
            }
        }
        assert!(l < 1 << 20, "Coxeter orders too large");
        if l == 1 {
            Field::rationals()
        } else {
            Field::with_conductor(2 * l as u32)
        }
    }

    fn build(n: u32) -> Field {
        if n == 1 {
            return Field {
                conductor: 1,
                degree: 1,
                minpoly: vec![BigInt::zero(), BigInt::one()],
                reductions: vec![vec![BigInt::zero()]],
                theta: 0.0,
                bounds: Mutex::new(Vec::new()),
            };
        }
        let phi = cyclotomic(n as usize);
        let d = (phi.len() - 1) / 2;
        // x^{-d} Φ(x) = a_d + Σ a_{d+k} (x^k + x^{-k}) and x^k + x^{-k} = C_k(y).
        let mut g = vec![BigInt::zero(); d + 1];
        g[0] = phi[d].clone();
        let mut c_prev = vec![BigInt::from(2)];
        let mut c_cur = vec![BigInt::zero(), BigInt::one()];
        for k in 1..=d {
            for (i, c) in c_cur.iter().enumerate() {
                g[i] += &phi[d + k] * c;
            }
            let next = poly_sub(&poly_shift(&c_cur), &c_prev);
            c_prev = std::mem::replace(&mut c_cur, next);
        }
        debug_assert!(g[d].is_one());
        let mut reductions = Vec::with_capacity(d);
        // x^d = -(g_0 + ... + g_{d-1} x^{d-1})
        let mut cur: Vec<BigInt> = g[..d].iter().map(|c| -c).collect();
        for _ in 0..d {
            reductions.push(cur.clone());
            let top = cur[d - 1].clone();
            let mut next = vec![BigInt::zero(); d];
            for i in 1..d {
                next[i] = cur[i - 1].clone();
            }
            for i in 0..d {
                next[i] -= &top * &g[i];
            }
            cur = next;
        }
        Field {
            conductor: n,
            degree: d,
            minpoly: g,
            reductions,
            theta: 2.0 * (2.0 * std::f64::consts::PI / n as f64).cos(),
            bounds: Mutex::new(Vec::new()),
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_rational(&self) -> bool {
        self.degree == 1
    }

    pub fn minimal_polynomial(&self) -> &[BigInt] {
        &self.minpoly
    }

    pub fn zero(&'static self) -> Scalar {
        Scalar { field: self, num: Vec::new(), den: BigInt::one() }
    }

    pub fn one(&'static self) -> Scalar {
        self.int(1)
    }

    pub fn int(&'static self, n: i64) -> Scalar {
        Scalar::from_parts(self, vec![BigInt::from(n)], BigInt::one())
    }

    pub fn rational(&'static self, p: i64, q: i64) -> Scalar {
        assert!(q != 0, "zero denominator");
        Scalar::from_parts(self, vec![BigInt::from(p)], BigInt::from(q))
    }

    pub fn from_ratio(&'static self, r: &BigRational) -> Scalar {
        Scalar::from_parts(self, vec![r.numer().clone()], r.denom().clone())
    }

    /// The generator θ = 2cos(2π/N).
    pub fn theta(&'static self) -> Scalar {
        assert!(!self.is_rational(), "rational field has no generator");
        Scalar::from_parts(self, vec![BigInt::zero(), BigInt::one()], BigInt::one())
    }

    /// `2cos(2πj/N)` as a field element.
    pub fn two_cos_2pi(&'static self, j: u32) -> Scalar {
        if self.is_rational() {
            panic!("two_cos_2pi needs a non-rational field");
        }
        // C_0 = 2, C_1 = y, C_{k+1} = y C_k - C_{k-1}
        let mut prev = vec![BigInt::from(2)];
        let mut cur = vec![BigInt::zero(), BigInt::one()];
        if j == 0 {
            return Scalar::from_parts(self, prev, BigInt::one());
        }
        for _ in 1..j {
            let next = poly_sub(&poly_shift(&cur), &prev);
            prev = std::mem::replace(&mut cur, next);
        }
        let reduced = self.reduce(cur);
        Scalar::from_parts(self, reduced, BigInt::one())
    }

    /// `cos(π/m)` exactly, if it lies in this field.
    pub fn cos_pi_over(&'static self, m: u32) -> Option<Scalar> {
        match m {
            1 => Some(self.int(-1)),
            2 => Some(self.zero()),
            3 => Some(self.rational(1, 2)),
            _ => {
                if self.is_rational() || !self.conductor.is_multiple_of(2 * m) {
                    return None;
                }
                let two_cos = self.two_cos_2pi(self.conductor / (2 * m));
                Some(&two_cos / &self.int(2))
            }
        }
    }

    fn reduce(&self, mut poly: Vec<BigInt>) -> Vec<BigInt> {
        let d = self.degree;
        if poly.len() <= d {
            return poly;
        }
        if d == 1 {
            // θ is rational here only for the trivial field, where no powers
            // above zero are ever formed.
            let mut acc = BigInt::zero();
            for c in poly.iter().skip(1) {
                debug_assert!(c.is_zero());
                acc += c;
            }
            poly.truncate(1);
            poly[0] += acc;
            return poly;
        }
        // Fold powers >= 2d-1 down first by repeated division steps.
        while poly.len() > 2 * d {
            let top = poly.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = poly.len() - d;
            for i in 0..d {
                let c = &top * &self.minpoly[i];
                poly[shift + i] -= c;
            }
        }
        let mut out: Vec<BigInt> = poly[..d].to_vec();
        for (k, c) in poly.iter().enumerate().skip(d) {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(&self.reductions[k - d]) {
                *o += c * r;
            }
        }
        out
    }

    fn power_bounds(&self, prec: u32) -> Arc<PowerBounds> {
        {
            let cache = self.bounds.lock().unwrap();
            if let Some(b) = cache.iter().find(|b| b.prec >= prec) {
                return b.clone();
            }
        }
        let b = Arc::new(self.compute_bounds(prec));
        let mut cache = self.bounds.lock().unwrap();
        if !cache.iter().any(|c| c.prec >= prec) {
            cache.push(b.clone());
            cache.sort_by_key(|c| c.prec);
        }
        b
    }

    fn compute_bounds(&self, prec: u32) -> PowerBounds {
        let d = self.degree;
        let q = prec + 4 * d as u32 + 16;
        let (a, b) = self.bracket_theta(q);
        let mut lo = Vec::with_capacity(d);
        let mut hi = Vec::with_capacity(d);
        let mut ap = BigInt::one();
        let mut bp = BigInt::one();
        for k in 0..d {
            let shift = (q as usize) * k;
            if shift >= prec as usize {
                let s = shift - prec as usize;
                lo.push(&ap >> s);
                let mask = (BigInt::one() << s) - 1;
                hi.push((&bp + mask) >> s);
            } else {
                let s = prec as usize - shift;
                lo.push(&ap << s);
                hi.push(&bp << s);
            }
            ap *= &a;
            bp *= &b;
        }
        PowerBounds { prec, lo, hi }
    }

    /// Integers `a < b` with `a/2^q <= θ <= b/2^q`, `b - a = 1`.
    fn bracket_theta(&self, q: u32) -> (BigInt, BigInt) {
        let start = 40u32;
        let scale = (1u64 << start) as f64;
        let mut a = BigInt::from(((self.theta - 1e-9) * scale).floor() as i64);
        let mut b = BigInt::from(((self.theta + 1e-9) * scale).ceil() as i64);
        let sa = self.minpoly_sign_at(&a, start);
        let sb = self.minpoly_sign_at(&b, start);
        assert!(
            sa != Ordering::Equal && sb != Ordering::Equal && sa != sb,
            "failed to isolate 2cos(2pi/{})",
            self.conductor
        );
        let mut bits = start;
        while bits < q {
            a <<= 1;
            b <<= 1;
            bits += 1;
            let mid = (&a + &b) >> 1;
            let sm = self.minpoly_sign_at(&mid, bits);
            if sm == Ordering::Equal {
                return (mid.clone() << (q - bits), mid << (q - bits));
            }
            if sm == sa {
                a = mid;
            } else {
                b = mid;
            }
        }
        (a, b)
    }

    /// Sign of `g(x / 2^bits)`.
    fn minpoly_sign_at(&self, x: &BigInt, bits: u32) -> Ordering {
        let d = self.degree;
        let mut acc = BigInt::zero();
        let mut xp = BigInt::one();
        for i in 0..=d {
            acc += (&self.minpoly[i] * &xp) << (bits as usize * (d - i));
            xp *= x;
        }
        acc.sign_ordering()
    }
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        match self.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

fn poly_shift(p: &[BigInt]) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(p.len() + 1);
    out.push(BigInt::zero());
    out.extend(p.iter().cloned());
    out
}

fn poly_sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            let y = b.get(i).cloned().unwrap_or_default();
            x - y
        })
        .collect()
}

/// Exact division of integer polynomials (divisor monic).
fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = rem[i + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    q
}

/// The cyclotomic polynomial Φ_n, low degree first.
fn cyclotomic(n: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); n + 1];
    p[0] = BigInt::from(-1);
    p[n] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_div_exact(&p, &cyclotomic(d));
        }
    }
    p
}

/// An element of a [`Field`].
#[derive(Clone)]
pub struct Scalar {
    field: &'static Field,
    /// Trimmed: no trailing zeros.
    num: Vec<BigInt>,
    den: BigInt,
}

impl Scalar {
    fn from_parts(field: &'static Field, mut num: Vec<BigInt>, mut den: BigInt) -> Scalar {
        while num.last().is_some_and(|c| c.is_zero()) {
            num.pop();
        }
        if num.is_empty() {
            return Scalar { field, num, den: BigInt::one() };
        }
        if den.is_negative() {
            den = -den;
            for c in &mut num {
                *c = -&*c;
            }
        }
        if !den.is_one() {
            let mut g = den.clone();
            for c in &num {
                g = g.gcd(c);
                if g.is_one() {
                    break;
                }
            }
            if !g.is_one() {
                den /= &g;
                for c in &mut num {
                    *c /= &g;
                }
            }
        }
        Scalar { field, num, den }
    }

    pub fn field(&self) -> &'static Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.num.len() == 1 && self.num[0].is_one() && self.den.is_one()
    }

    /// True when the element is rational.
    pub fn is_rational(&self) -> bool {
        self.num.len() <= 1
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        match self.num.len() {
            0 => Some(BigRational::zero()),
            1 => Some(BigRational::new(self.num[0].clone(), self.den.clone())),
            _ => None,
        }
    }

    /// Coordinates over the power basis of the field's generator,
    /// padded to the field degree.
    pub fn coordinates(&self) -> Vec<BigRational> {
        (0..self.field.degree)
            .map(|k| match self.num.get(k) {
                Some(c) => BigRational::new(c.clone(), self.den.clone()),
                None => BigRational::zero(),
            })
            .collect()
    }

    fn common_field(&self, other: &Scalar) -> &'static Field {
        if std::ptr::eq(self.field, other.field) {
            self.field
        } else if self.field.is_rational() && self.is_rational() {
            other.field
        } else if other.is_rational() && (other.field.is_rational() || self.is_rational()) {
            self.field
        } else {
            panic!("mixing scalars from {:?} and {:?}", self.field, other.field)
        }
    }

    /// Move a rational element into `field`.
    pub fn lift(&self, field: &'static Field) -> Scalar {
        if std::ptr::eq(self.field, field) {
            return self.clone();
        }
        assert!(self.is_rational(), "only rational scalars can change field");
        Scalar { field, num: self.num.clone(), den: self.den.clone() }
    }

    pub fn abs(&self) -> Scalar {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    /// Certified sign.
    pub fn signum(&self) -> Ordering {
        match self.num.len() {
            0 => Ordering::Equal,
            1 => self.num[0].sign_ordering(),
            _ => {
                let mut prec = 64;
                loop {
                    let (lo, hi) = self.bracket(prec);
                    if lo.is_positive() {
                        return Ordering::Greater;
                    }
                    if hi.is_negative() {
                        return Ordering::Less;
                    }
                    prec *= 2;
                    assert!(prec <= 1 << 16, "sign refinement did not terminate");
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    /// `[lo, hi]` containing `value * den * 2^prec`.
    fn bracket(&self, prec: u32) -> (BigInt, BigInt) {
        let b = self.field.power_bounds(prec);
        let shift = b.prec - prec;
        let mut lo = BigInt::zero();
        let mut hi = BigInt::zero();
        for (k, c) in self.num.iter().enumerate() {
            if c.is_negative() {
                lo += c * &b.hi[k];
                hi += c * &b.lo[k];
            } else {
                lo += c * &b.lo[k];
                hi += c * &b.hi[k];
            }
        }
        if shift > 0 {
            lo >>= shift as usize;
            let mask = (BigInt::one() << shift as usize) - 1;
            hi = (hi + mask) >> shift as usize;
        }
        (lo, hi)
    }

    /// Rational enclosure `[lo, hi]` of the value at the given precision.
    pub fn enclosure(&self, prec: u32) -> (BigRational, BigRational) {
        if let Some(r) = self.to_rational() {
            return (r.clone(), r);
        }
        let (lo, hi) = self.bracket(prec);
        let scale = &self.den << prec as usize;
        (BigRational::new(lo, scale.clone()), BigRational::new(hi, scale))
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        if let Some(r) = self.to_rational() {
            return format_significant(&r, digits);
        }
        let mut prec = 64 + 4 * digits as u32;
        loop {
            let (lo, hi) = self.enclosure(prec);
            let a = format_significant(&lo, digits + 2);
            let b = format_significant(&hi, digits + 2);
            let ra = format_significant(&lo, digits);
            let rb = format_significant(&hi, digits);
            if ra == rb && a.len() == b.len() {
                return ra;
            }
            prec *= 2;
            if prec > 1 << 14 {
                let mid = (lo + hi) / BigRational::from_integer(BigInt::from(2));
                return format_significant(&mid, digits);
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_decimal(19).parse().unwrap()
    }

    pub fn inverse(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        if self.is_rational() {
            return Scalar::from_parts(self.field, vec![self.den.clone()], self.num[0].clone());
        }
        // Solve (self * x) = 1 via the multiplication matrix.
        let d = self.field.degree;
        let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(d);
        for k in 0..d {
            let mut basis = vec![BigInt::zero(); k + 1];
            basis[k] = BigInt::one();
            let prod = self * &Scalar::from_parts(self.field, basis, BigInt::one());
            cols.push(prod.coordinates());
        }
        // Augmented system rows: sum_k x_k * cols[k][i] = delta_{i0}
        let mut rows: Vec<Vec<BigRational>> = (0..d)
            .map(|i| {
                let mut row: Vec<BigRational> = (0..d).map(|k| cols[k][i].clone()).collect();
                row.push(if i == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        for col in 0..d {
            let piv = (col..d).find(|&r| !rows[r][col].is_zero()).expect("singular multiplication matrix");
            rows.swap(col, piv);
            let p = rows[col][col].clone();
            for v in rows[col].iter_mut() {
                *v = &*v / &p;
            }
            for r in 0..d {
                if r != col && !rows[r][col].is_zero() {
                    let f = rows[r][col].clone();
                    for c in col..=d {
                        let sub = &f * &rows[col][c];
                        rows[r][c] -= sub;
                    }
                }
            }
        }
        let den = rows.iter().fold(BigInt::one(), |acc, r| acc.lcm(r[d].denom()));
        let num = rows.iter().map(|r| r[d].numer() * (&den / r[d].denom())).collect();
        Scalar::from_parts(self.field, num, den)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = self.field.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn max(self, other: Scalar) -> Scalar {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Scalar) -> Scalar {
        if other < self {
            other
        } else {
            self
        }
    }

    fn add_impl(&self, other: &Scalar, negate: bool) -> Scalar {
        let field = self.common_field(other);
        let n = self.num.len().max(other.num.len());
        let mut num = Vec::with_capacity(n);
        let same_den = self.den == other.den;
        for k in 0..n {
            let a = self.num.get(k);
            let b = other.num.get(k);
            let (a, b) = if same_den {
                (a.cloned().unwrap_or_default(), b.cloned().unwrap_or_default())
            } else {
                (a.map(|x| x * &other.den).unwrap_or_default(), b.map(|x| x * &self.den).unwrap_or_default())
            };
            num.push(if negate { a - b } else { a + b });
        }
        let den = if same_den { self.den.clone() } else { &self.den * &other.den };
        Scalar::from_parts(field, num, den)
    }

    fn mul_impl(&self, other: &Scalar) -> Scalar {
        let field = self.common_field(other);
        if self.is_zero() || other.is_zero() {
            return field.zero();
        }
        let mut prod = vec![BigInt::zero(); self.num.len() + other.num.len() - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        let num = field.reduce(prod);
        Scalar::from_parts(field, num, &self.den * &other.den)
    }
}

fn format_significant(r: &BigRational, digits: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let a = r.abs();
    let ten = BigInt::from(10);
    // exponent e with 10^e <= a < 10^(e+1)
    let mut e: i64 = (a.numer().bits() as i64 - a.denom().bits() as i64) * 30103 / 100000;
    let pow10 = |k: i64| -> BigRational {
        if k >= 0 {
            BigRational::from_integer(num_traits::pow(ten.clone(), k as usize))
        } else {
            BigRational::new(BigInt::one(), num_traits::pow(ten.clone(), (-k) as usize))
        }
    };
    while pow10(e) > a {
        e -= 1;
    }
    while pow10(e + 1) <= a {
        e += 1;
    }
    let shift = digits as i64 - 1 - e;
    let scaled = &a * pow10(shift);
    // round half up
    let mut int: BigInt = (scaled.numer() * 2 + scaled.denom()) / (scaled.denom() * 2);
    if int.to_string().len() > digits {
        int /= &ten;
        e += 1;
    }
    let s = int.to_string();
    let shift = digits as i64 - 1 - e;
    let body = if e.abs() > 24 {
        let (h, t) = s.split_at(1);
        let t = t.trim_end_matches('0');
        if t.is_empty() {
            format!("{h}e{e}")
        } else {
            format!("{h}.{t}e{e}")
        }
    } else if shift <= 0 {
        let mut out = s.clone();
        out.extend(std::iter::repeat_n('0', (-shift) as usize));
        out
    } else {
        let shift = shift as usize;
        let padded = if s.len() <= shift { format!("{}{}", "0".repeat(shift - s.len() + 1), s) } else { s };
        let (ip, fp) = padded.split_at(padded.len() - shift);
        format!("{ip}.{fp}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Scalar) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Scalar) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        (self - other).signum()
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{}", r);
        }
        let mut terms = Vec::new();
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = match k {
                0 => format!("{c}"),
                1 => format!("{c}θ"),
                _ => format!("{c}θ^{k}"),
            };
            terms.push(t);
        }
        let body = terms.join(" + ").replace("+ -", "- ");
        if self.den.is_one() {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{}", self.den)
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Scalar = $body;
                f(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_impl(b, false));
binop!(Sub, sub, |a, b| a.add_impl(b, true));
binop!(Mul, mul, |a, b| a.mul_impl(b));
binop!(Div, div, |a, b| a.mul_impl(&b.inverse()));

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { field: self.field, num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Scalar", 2)?;
        st.serialize_field("approx", &self.to_decimal(17))?;
        let exact: Vec<String> = self.coordinates().iter().map(|c| c.to_string()).collect();
        st.serialize_field("exact", &exact)?;
        st.end()
    }
}

impl ToPrimitive for Scalar {
    fn to_i64(&self) -> Option<i64> {
        self.to_rational().filter(|r| r.is_integer()).and_then(|r| r.to_integer().to_i64())
    }
    fn to_u64(&self) -> Option<u64> {
        self.to_rational().filter(|r| r.is_integer()).and_then(|r| r.to_integer().to_u64())
    }
    fn to_f64(&self) -> Option<f64> {
        Some(Scalar::to_f64(self))
    }
}
