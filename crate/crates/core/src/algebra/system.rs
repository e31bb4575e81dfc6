use std::fmt;
use std::hash::{Hash, Hasher};

use num_rational::BigRational;
use serde::Serialize;

use super::field::{Field, Scalar};
use super::matrix::CoxeterMatrix;
use crate::error::{Error, Result};

/// A vector in the span of the simple roots. Values produced by the engine
/// are roots, and a root doubles as the half-space `ζ(root)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(Vec<Scalar>);

impl Root {
    pub fn new(coords: Vec<Scalar>) -> Root {
        Root(coords)
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sign of a root: all coordinates share it, so the first nonzero one
    /// decides.
    pub fn is_positive(&self) -> bool {
        self.0.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_positive())
    }

    /// The positive representative of `±self`.
    pub fn positive(&self) -> Root {
        if self.is_positive() {
            self.clone()
        } else {
            -self
        }
    }

    /// Support: generators with a nonzero coordinate.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| !self.0[i].is_zero()).collect()
    }

    pub fn scale(&self, c: &Scalar) -> Root {
        Root(self.0.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl std::ops::Neg for &Root {
    type Output = Root;
    fn neg(self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }
}

impl std::ops::Neg for Root {
    type Output = Root;
    fn neg(self) -> Root {
        -&self
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "]")
    }
}

impl Serialize for Root {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// Square matrix over a field, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    n: usize,
    data: Vec<Scalar>,
}

impl Hash for Mat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.data.hash(state);
    }
}

impl Mat {
    pub fn identity(field: &'static Field, n: usize) -> Mat {
        let mut data = vec![field.zero(); n * n];
        for i in 0..n {
            data[i * n + i] = field.one();
        }
        Mat { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.n + j]
    }

    pub fn column(&self, j: usize) -> Root {
        Root((0..self.n).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn apply(&self, x: &Root) -> Root {
        let n = self.n;
        Root(
            (0..n)
                .map(|i| {
                    let mut acc = x.0[0].field().zero();
                    for j in 0..n {
                        let a = &self.data[i * n + j];
                        if !a.is_zero() && !x.0[j].is_zero() {
                            acc = acc + a * &x.0[j];
                        }
                    }
                    acc
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        let n = self.n;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = self.data[0].field().zero();
                for k in 0..n {
                    let a = &self.data[i * n + k];
                    let b = &other.data[k * n + j];
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + a * b;
                    }
                }
                data.push(acc);
            }
        }
        Mat { n, data }
    }

    /// `self · R_s` where `R_s e_j = e_j - c[j][s] e_s`.
    fn mul_right_gen(&mut self, s: usize, cartan: &[Vec<Scalar>]) {
        let n = self.n;
        for i in 0..n {
            let mis = self.data[i * n + s].clone();
            if mis.is_zero() {
                continue;
            }
            for j in 0..n {
                let c = &cartan[j][s];
                if !c.is_zero() {
                    let v = &self.data[i * n + j] - &(c * &mis);
                    self.data[i * n + j] = v;
                }
            }
        }
    }

    /// `R_s · self`: only row `s` changes.
    fn mul_left_gen(&mut self, s: usize, cartan: &[Vec<Scalar>]) {
        let n = self.n;
        for j in 0..n {
            let mut acc = self.data[s * n + j].clone();
            for k in 0..n {
                let c = &cartan[k][s];
                let v = &self.data[k * n + j];
                if !c.is_zero() && !v.is_zero() {
                    acc = acc - c * v;
                }
            }
            self.data[s * n + j] = acc;
        }
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            writeln!(f, "{:?}", &self.data[i * self.n..(i + 1) * self.n])?;
        }
        Ok(())
    }
}

/// A group element: ShortLex-normal reduced word plus the exact action
/// matrix and its inverse.
#[derive(Clone)]
pub struct GroupElement {
    word: Vec<usize>,
    matrix: Mat,
    inverse: Mat,
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for GroupElement {}

impl Hash for GroupElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.matrix.hash(state);
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w{:?}", self.word)
    }
}

impl Serialize for GroupElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.word.serialize(s)
    }
}

impl GroupElement {
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &Mat {
        &self.inverse
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Action on V.
    pub fn act(&self, x: &Root) -> Root {
        self.matrix.apply(x)
    }

    pub fn act_inverse(&self, x: &Root) -> Root {
        self.inverse.apply(x)
    }

    /// ShortLex comparison of normal forms.
    pub fn shortlex_cmp(&self, other: &GroupElement) -> std::cmp::Ordering {
        self.word.len().cmp(&other.word.len()).then_with(|| self.word.cmp(&other.word))
    }
}

/// A Coxeter system with its standard root basis and bilinear form.
#[derive(Clone, Debug)]
pub struct CoxeterSystem {
    matrix: CoxeterMatrix,
    field: &'static Field,
    gram: Vec<Vec<Scalar>>,
    /// `2 (e_i, e_j)`.
    cartan: Vec<Vec<Scalar>>,
}

impl CoxeterSystem {
    pub fn new(matrix: CoxeterMatrix) -> CoxeterSystem {
        let field = Field::for_orders(matrix.finite_orders());
        let n = matrix.rank();
        let gram: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match matrix.m(i, j) {
                        None => field.int(-1),
                        Some(m) => -field.cos_pi_over(m).expect("cosine outside the field"),
                    })
                    .collect()
            })
            .collect();
        let two = field.int(2);
        let cartan = gram.iter().map(|r| r.iter().map(|c| c * &two).collect()).collect();
        CoxeterSystem { matrix, field, gram, cartan }
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn field(&self) -> &'static Field {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn gram(&self, i: usize, j: usize) -> &Scalar {
        &self.gram[i][j]
    }

    pub fn simple_root(&self, i: usize) -> Root {
        let mut v = vec![self.field.zero(); self.rank()];
        v[i] = self.field.one();
        Root(v)
    }

    pub fn simple_roots(&self) -> Vec<Root> {
        (0..self.rank()).map(|i| self.simple_root(i)).collect()
    }

    pub fn vector(&self, coords: &[Scalar]) -> Root {
        assert_eq!(coords.len(), self.rank());
        Root(coords.iter().map(|c| c.lift(self.field)).collect())
    }

    pub fn vector_from_ints(&self, coords: &[i64]) -> Root {
        assert_eq!(coords.len(), self.rank());
        Root(coords.iter().map(|&c| self.field.int(c)).collect())
    }

    pub fn vector_from_rationals(&self, coords: &[BigRational]) -> Root {
        assert_eq!(coords.len(), self.rank());
        Root(coords.iter().map(|c| self.field.from_ratio(c)).collect())
    }

    /// `(x, e_s)`.
    pub fn form_simple(&self, x: &Root, s: usize) -> Scalar {
        let mut acc = self.field.zero();
        for (i, xi) in x.0.iter().enumerate() {
            if !xi.is_zero() && !self.gram[i][s].is_zero() {
                acc = acc + xi * &self.gram[i][s];
            }
        }
        acc
    }

    /// The bilinear form `(a, b)`.
    pub fn form(&self, a: &Root, b: &Root) -> Scalar {
        let mut acc = self.field.zero();
        for (j, bj) in b.0.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            let t = self.form_simple(a, j);
            if !t.is_zero() {
                acc = acc + t * bj;
            }
        }
        acc
    }

    /// `r_a(x) = x - 2 (x, a) a`.
    pub fn reflect(&self, a: &Root, x: &Root) -> Root {
        let c = self.form(x, a) * self.field.int(2);
        if c.is_zero() {
            return x.clone();
        }
        x.sub(&a.scale(&c))
    }

    /// `r_{e_s}(x)`: only coordinate `s` changes.
    pub fn reflect_simple(&self, s: usize, x: &Root) -> Root {
        let mut delta = self.field.zero();
        for (i, xi) in x.0.iter().enumerate() {
            if !xi.is_zero() && !self.cartan[i][s].is_zero() {
                delta = delta + xi * &self.cartan[i][s];
            }
        }
        let mut out = x.clone();
        out.0[s] = &out.0[s] - &delta;
        out
    }

    /// Depth of a positive root: the least `ℓ(w)` with `w·a` negative,
    /// computed by descending along generators with `(a, e_s) > 0`.
    pub fn depth(&self, a: &Root) -> usize {
        assert!(a.is_positive(), "depth of a negative root");
        let mut cur = a.clone();
        let mut d = 1;
        loop {
            if self.simple_index(&cur).is_some() {
                return d;
            }
            let s = (0..self.rank())
                .find(|&s| self.form_simple(&cur, s).is_positive())
                .expect("positive non-simple root without a descent");
            cur = self.reflect_simple(s, &cur);
            d += 1;
        }
    }

    /// Index `s` when `a = e_s`.
    pub fn simple_index(&self, a: &Root) -> Option<usize> {
        let support = a.support();
        if support.len() == 1 && a.0[support[0]].is_one() {
            Some(support[0])
        } else {
            None
        }
    }

    /// Whether `x` is a root. Descends to a simple root while the vector
    /// stays sign-coherent; `max_steps` bounds the walk.
    pub fn is_root(&self, x: &Root, max_steps: usize) -> bool {
        let mut cur = if x.is_positive() { x.clone() } else { -x };
        for _ in 0..=max_steps {
            if cur.0.iter().any(|c| c.is_negative()) {
                return false;
            }
            if self.simple_index(&cur).is_some() {
                return true;
            }
            match (0..self.rank()).find(|&s| self.form_simple(&cur, s).is_positive()) {
                Some(s) => cur = self.reflect_simple(s, &cur),
                None => return false,
            }
        }
        false
    }

    pub fn identity(&self) -> GroupElement {
        let id = Mat::identity(self.field, self.rank());
        GroupElement { word: Vec::new(), matrix: id.clone(), inverse: id }
    }

    /// `w · s` with `word` set by the caller; used by BFS, which produces
    /// ShortLex words directly.
    pub fn extend_unchecked(&self, w: &GroupElement, s: usize) -> GroupElement {
        let mut matrix = w.matrix.clone();
        matrix.mul_right_gen(s, &self.cartan);
        let mut inverse = w.inverse.clone();
        inverse.mul_left_gen(s, &self.cartan);
        let mut word = w.word.clone();
        word.push(s);
        GroupElement { word, matrix, inverse }
    }

    /// True iff `ℓ(w s) > ℓ(w)`, i.e. `w · e_s` is positive.
    pub fn is_right_ascent(&self, w: &GroupElement, s: usize) -> bool {
        w.matrix.column(s).is_positive()
    }

    /// True iff `ℓ(s w) > ℓ(w)`.
    pub fn is_left_ascent(&self, w: &GroupElement, s: usize) -> bool {
        w.inverse.column(s).is_positive()
    }

    fn matrices_of_word(&self, word: &[usize]) -> (Mat, Mat) {
        let mut m = Mat::identity(self.field, self.rank());
        let mut inv = m.clone();
        for &s in word {
            m.mul_right_gen(s, &self.cartan);
            inv.mul_left_gen(s, &self.cartan);
        }
        (m, inv)
    }

    /// Element from an arbitrary word. The word is reduced with the sign
    /// test and the exchange condition, then put in ShortLex normal form.
    pub fn element_from_word(&self, word: &[usize]) -> Result<GroupElement> {
        if let Some(&bad) = word.iter().find(|&&s| s >= self.rank()) {
            return Err(Error::Invalid(format!("generator index {bad} out of range")));
        }
        let mut reduced: Vec<usize> = Vec::new();
        let mut m = Mat::identity(self.field, self.rank());
        for &s in word {
            if m.column(s).is_positive() {
                reduced.push(s);
            } else {
                // exchange: delete the letter whose root matches
                let mut gamma = self.simple_root(s);
                let mut hit = None;
                for j in (0..reduced.len()).rev() {
                    if self.simple_index(&gamma) == Some(reduced[j]) {
                        hit = Some(j);
                        break;
                    }
                    gamma = self.reflect_simple(reduced[j], &gamma);
                }
                let j = hit.ok_or_else(|| Error::InvariantViolation("exchange condition failed".into()))?;
                reduced.remove(j);
            }
            m.mul_right_gen(s, &self.cartan);
        }
        let (matrix, inverse) = self.matrices_of_word(&reduced);
        debug_assert!(matrix == m);
        Ok(self.normalize(GroupElement { word: reduced, matrix, inverse }))
    }

    /// Recompute the ShortLex normal form of `w`'s word.
    pub fn normalize(&self, w: GroupElement) -> GroupElement {
        let mut inv = w.inverse.clone();
        let mut word = Vec::with_capacity(w.word.len());
        loop {
            let s = (0..self.rank()).find(|&s| !inv.column(s).is_positive());
            match s {
                Some(s) => {
                    word.push(s);
                    inv.mul_right_gen(s, &self.cartan);
                }
                None => break,
            }
        }
        GroupElement { word, matrix: w.matrix, inverse: w.inverse }
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let mut word = a.word.clone();
        word.extend_from_slice(&b.word);
        self.element_from_word(&word).unwrap()
    }

    pub fn invert(&self, a: &GroupElement) -> GroupElement {
        let word: Vec<usize> = a.word.iter().rev().copied().collect();
        let w = GroupElement { word, matrix: a.inverse.clone(), inverse: a.matrix.clone() };
        self.normalize(w)
    }

    /// Matrix of the reflection `r_a`.
    pub fn reflection_matrix(&self, a: &Root) -> Mat {
        let n = self.rank();
        let cols: Vec<Root> = (0..n).map(|j| self.reflect(a, &self.simple_root(j))).collect();
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for c in &cols {
                data.push(c.0[i].clone());
            }
        }
        Mat { n, data }
    }

    /// Group element of the reflection through the wall of `a`.
    pub fn reflection_element(&self, a: &Root) -> GroupElement {
        // descend a to a simple root: a = w e_s, r_a = w s w^{-1}
        let mut cur = a.positive();
        let mut path = Vec::new();
        while self.simple_index(&cur).is_none() {
            let s = (0..self.rank()).find(|&s| self.form_simple(&cur, s).is_positive()).expect("not a root");
            cur = self.reflect_simple(s, &cur);
            path.push(s);
        }
        let s = self.simple_index(&cur).unwrap();
        let mut word: Vec<usize> = path.iter().rev().copied().collect();
        word.push(s);
        word.extend(path.iter().copied());
        self.element_from_word(&word).unwrap()
    }

    /// A word `w` and generator `s` with `a = ± w e_s`.
    pub fn root_as_word(&self, a: &Root) -> (Vec<usize>, usize) {
        let mut cur = a.positive();
        let mut path = Vec::new();
        while self.simple_index(&cur).is_none() {
            let s = (0..self.rank()).find(|&s| self.form_simple(&cur, s).is_positive()).expect("not a root");
            cur = self.reflect_simple(s, &cur);
            path.push(s);
        }
        (path.into_iter().rev().collect(), self.simple_index(&cur).unwrap())
    }

    /// Order of `g` if it is at most `bound`.
    pub fn element_order(&self, g: &GroupElement, bound: usize) -> Option<usize> {
        let id = Mat::identity(self.field, self.rank());
        let mut acc = g.matrix.clone();
        for k in 1..=bound {
            if acc == id {
                return Some(k);
            }
            acc = acc.mul(&g.matrix);
        }
        None
    }
}
