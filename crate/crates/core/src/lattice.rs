//! Integral lattices with symmetric bilinear forms and exact rational classes.

// Matrix code indexes rows and columns together.
#![allow(clippy::needless_range_loop)]

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d`, reduced. Panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn to_i64(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

/// A degree-two class, written in the coordinates of some lattice basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassVector(Vec<Rational>);

impl ClassVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        ClassVector(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        ClassVector(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn zeros(len: usize) -> Self {
        ClassVector(vec![Rational::zero(); len])
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.0[index] = Rational::one();
        v
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(Rational::is_integer)
    }

    /// Integer coordinates, if every coordinate is an integer that fits `i64`.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0.iter().map(to_i64).collect()
    }

    pub fn scaled(&self, s: &Rational) -> ClassVector {
        ClassVector(self.0.iter().map(|c| c * s).collect())
    }

    pub fn into_inner(self) -> Vec<Rational> {
        self.0
    }
}

impl From<Vec<Rational>> for ClassVector {
    fn from(v: Vec<Rational>) -> Self {
        ClassVector(v)
    }
}

impl Add for &ClassVector {
    type Output = ClassVector;

    fn add(self, rhs: &ClassVector) -> ClassVector {
        assert_eq!(self.len(), rhs.len(), "class length mismatch");
        ClassVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &ClassVector {
    type Output = ClassVector;

    fn sub(self, rhs: &ClassVector) -> ClassVector {
        assert_eq!(self.len(), rhs.len(), "class length mismatch");
        ClassVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &ClassVector {
    type Output = ClassVector;

    fn neg(self) -> ClassVector {
        ClassVector(self.0.iter().map(|a| -a).collect())
    }
}

/// Numbers of positive and negative squares in a diagonalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
}

/// A labeled basis together with an integral symmetric bilinear form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntersectionLattice {
    labels: Vec<String>,
    form: Vec<Vec<i64>>,
}

impl IntersectionLattice {
    pub fn new(labels: Vec<String>, form: Vec<Vec<i64>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyLattice);
        }
        if form.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: form.len() });
        }
        for row in &form {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if form[i][j] != form[j][i] {
                    return Err(Error::AsymmetricForm { row: i, col: j });
                }
            }
        }
        Ok(IntersectionLattice { labels, form })
    }

    /// Diagonal form with the given labels and entries.
    pub fn diagonal(labels: &[&str], entries: &[i64]) -> Result<Self> {
        if labels.len() != entries.len() {
            return Err(Error::DimensionMismatch { expected: labels.len(), found: entries.len() });
        }
        let n = entries.len();
        let mut form = vec![vec![0; n]; n];
        for (i, &e) in entries.iter().enumerate() {
            form[i][i] = e;
        }
        Self::new(labels.iter().map(|s| String::from(*s)).collect(), form)
    }

    pub fn hyperbolic(first: &str, second: &str) -> Self {
        IntersectionLattice {
            labels: vec![String::from(first), String::from(second)],
            form: vec![vec![0, 1], vec![1, 0]],
        }
    }

    /// Orthogonal direct sum, labels concatenated.
    pub fn direct_sum(&self, other: &IntersectionLattice) -> IntersectionLattice {
        let n = self.rank();
        let m = other.rank();
        let mut form = vec![vec![0; n + m]; n + m];
        for i in 0..n {
            form[i][..n].copy_from_slice(&self.form[i]);
        }
        for i in 0..m {
            form[n + i][n..].copy_from_slice(&other.form[i]);
        }
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        IntersectionLattice { labels, form }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn form(&self) -> &[Vec<i64>] {
        &self.form
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.form[i][j]
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.form[i][i] % 2 == 0)
    }

    fn check(&self, v: &ClassVector) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: v.len() });
        }
        Ok(())
    }

    /// The pairing `aᵀ · form · b`.
    pub fn pair(&self, a: &ClassVector, b: &ClassVector) -> Result<Rational> {
        self.check(a)?;
        self.check(b)?;
        let mut acc = Rational::zero();
        for (i, ai) in a.coords().iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            let mut row = Rational::zero();
            for (j, bj) in b.coords().iter().enumerate() {
                let q = self.form[i][j];
                if q != 0 && !bj.is_zero() {
                    row += bj * int(q);
                }
            }
            acc += ai * row;
        }
        Ok(acc)
    }

    pub fn square(&self, a: &ClassVector) -> Result<Rational> {
        self.pair(a, a)
    }

    /// Integer pairing for integral classes. Panics on a length mismatch.
    pub fn pair_int(&self, a: &[i64], b: &[i64]) -> i64 {
        assert_eq!(a.len(), self.rank(), "class length mismatch");
        assert_eq!(b.len(), self.rank(), "class length mismatch");
        let mut acc = 0i64;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            let row = &self.form[i];
            let mut s = 0i64;
            for (j, &bj) in b.iter().enumerate() {
                s += row[j] * bj;
            }
            acc += ai * s;
        }
        acc
    }

    /// `form · v` as rationals, so that `a · v = Σ aᵢ (form·v)ᵢ`.
    pub fn dual(&self, v: &ClassVector) -> Result<ClassVector> {
        self.check(v)?;
        let n = self.rank();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut s = Rational::zero();
            for (j, vj) in v.coords().iter().enumerate() {
                let q = self.form[i][j];
                if q != 0 && !vj.is_zero() {
                    s += vj * int(q);
                }
            }
            out.push(s);
        }
        Ok(ClassVector(out))
    }

    /// Sylvester inertia by exact symmetric elimination over the rationals.
    pub fn inertia(&self) -> Result<Inertia> {
        let n = self.rank();
        let mut a: Vec<Vec<Rational>> = self
            .form
            .iter()
            .map(|row| row.iter().map(|&x| int(x)).collect())
            .collect();
        let mut positive = 0;
        let mut negative = 0;
        for k in 0..n {
            if a[k][k].is_zero() {
                if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                    a.swap(k, j);
                    for row in a.iter_mut() {
                        row.swap(k, j);
                    }
                } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                    // row/column k += row/column j; the new diagonal entry is 2·a[k][j]
                    for c in 0..n {
                        let v = a[j][c].clone();
                        a[k][c] += v;
                    }
                    for r in 0..n {
                        let v = a[r][j].clone();
                        a[r][k] += v;
                    }
                } else {
                    return Err(Error::DegenerateForm);
                }
            }
            let pivot = a[k][k].clone();
            debug_assert!(!pivot.is_zero());
            if pivot.is_positive() {
                positive += 1;
            } else {
                negative += 1;
            }
            for i in (k + 1)..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = &a[i][k] / &pivot;
                for j in (k + 1)..n {
                    let d = &f * &a[k][j];
                    a[i][j] -= d;
                }
            }
            for i in (k + 1)..n {
                a[i][k] = Rational::zero();
                a[k][i] = Rational::zero();
            }
        }
        Ok(Inertia { positive, negative })
    }

    pub fn b_plus(&self) -> Result<usize> {
        Ok(self.inertia()?.positive)
    }

    /// Light-cone check: with `b⁺ = 1`, `a² ≥ 0`, `b² ≥ 0`, `w² > 0`,
    /// `a·w > 0` and `b·w > 0`, returns whether `a·b ≥ 0`.
    ///
    /// Under the preconditions the answer is always `true`; the function is
    /// an assertable oracle for proofs that lean on that fact.
    pub fn light_cone_pairs_nonneg(
        &self,
        a: &ClassVector,
        b: &ClassVector,
        w: &ClassVector,
    ) -> Result<bool> {
        if self.b_plus()? != 1 {
            return Err(Error::Precondition("b+ must equal 1".into()));
        }
        let nonneg = |v: &ClassVector| -> Result<bool> { Ok(!self.square(v)?.is_negative()) };
        let positive = |x: Rational| x.is_positive();
        if !nonneg(a)? || !nonneg(b)? {
            return Err(Error::Precondition("classes must have non-negative square".into()));
        }
        if !positive(self.square(w)?) {
            return Err(Error::Precondition("w must have positive square".into()));
        }
        if !positive(self.pair(a, w)?) || !positive(self.pair(b, w)?) {
            return Err(Error::Precondition("classes must pair positively with w".into()));
        }
        Ok(!self.pair(a, b)?.is_negative())
    }

    /// Gram matrix of integer vectors written in this lattice's coordinates.
    pub fn gram(&self, basis: &[Vec<i64>]) -> Vec<Vec<i64>> {
        basis
            .iter()
            .map(|u| basis.iter().map(|v| self.pair_int(u, v)).collect())
            .collect()
    }
}

/// Light-cone oracle bound to a lattice whose `b⁺ = 1` was checked once.
///
/// The integer entry point evaluates every pairing in `i128`, so a caller
/// sweeping many triples does not repeat the inertia computation.
#[derive(Clone, Debug)]
pub struct LightCone<'a> {
    lattice: &'a IntersectionLattice,
}

impl<'a> LightCone<'a> {
    pub fn new(lattice: &'a IntersectionLattice) -> Result<Self> {
        if lattice.b_plus()? != 1 {
            return Err(Error::Precondition("b+ must equal 1".into()));
        }
        Ok(LightCone { lattice })
    }

    fn pair(&self, a: &[i64], b: &[i64]) -> Result<i128> {
        let n = self.lattice.rank();
        for v in [a, b] {
            if v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: v.len() });
            }
        }
        let mut acc = 0i128;
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                acc += i128::from(ai) * i128::from(self.lattice.form[i][j]) * i128::from(bj);
            }
        }
        Ok(acc)
    }

    /// Same contract as [`IntersectionLattice::light_cone_pairs_nonneg`].
    pub fn pairs_nonneg_int(&self, a: &[i64], b: &[i64], w: &[i64]) -> Result<bool> {
        if self.pair(a, a)? < 0 || self.pair(b, b)? < 0 {
            return Err(Error::Precondition("classes must have non-negative square".into()));
        }
        if self.pair(w, w)? <= 0 {
            return Err(Error::Precondition("w must have positive square".into()));
        }
        if self.pair(a, w)? <= 0 || self.pair(b, w)? <= 0 {
            return Err(Error::Precondition("classes must pair positively with w".into()));
        }
        Ok(self.pair(a, b)? >= 0)
    }
}

/// Row-echelon Z-basis of the subgroup of `Zⁿ` spanned by `generators`.
///
/// Uses unimodular row operations (extended gcd), so the output spans exactly
/// the same subgroup; zero rows are dropped.
pub(crate) fn echelon_basis(mut rows: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    let Some(n) = rows.first().map(Vec::len) else {
        return rows;
    };
    let mut out: Vec<Vec<i64>> = Vec::new();
    for col in 0..n {
        rows.retain(|r| r.iter().any(|&x| x != 0));
        // combine every row with a nonzero entry in `col` into one pivot row
        let mut pivot: Option<Vec<i64>> = None;
        let mut rest = Vec::with_capacity(rows.len());
        for r in rows.drain(..) {
            if r[col] == 0 {
                rest.push(r);
                continue;
            }
            match pivot.take() {
                None => pivot = Some(r),
                Some(p) => {
                    let (g, x, y) = ext_gcd(p[col], r[col]);
                    let (pa, ra) = (p[col] / g, r[col] / g);
                    let new_p: Vec<i64> = p.iter().zip(&r).map(|(a, b)| x * a + y * b).collect();
                    let new_r: Vec<i64> = p.iter().zip(&r).map(|(a, b)| ra * a - pa * b).collect();
                    debug_assert_eq!(new_r[col], 0);
                    rest.push(new_r);
                    pivot = Some(new_p);
                }
            }
        }
        rows = rest;
        if let Some(mut p) = pivot {
            if p[col] < 0 {
                p.iter_mut().for_each(|x| *x = -*x);
            }
            out.push(p);
        }
    }
    out
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Coordinates of `v` in an echelon basis produced by [`echelon_basis`],
/// or `None` when `v` is not in the span.
pub(crate) fn echelon_coordinates(basis: &[Vec<i64>], v: &[i64]) -> Option<Vec<i64>> {
    let mut rem = v.to_vec();
    let mut coords = Vec::with_capacity(basis.len());
    for b in basis {
        let col = b.iter().position(|&x| x != 0)?;
        if rem[col] % b[col] != 0 {
            return None;
        }
        let c = rem[col] / b[col];
        for (r, bi) in rem.iter_mut().zip(b) {
            *r -= c * bi;
        }
        coords.push(c);
    }
    if rem.iter().all(|&x| x == 0) {
        Some(coords)
    } else {
        None
    }
}

/// Determinant of a small integer matrix by fraction-free elimination.
pub(crate) fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .map(|row| row.iter().map(|&x| int(x)).collect())
        .collect();
    let mut det = Rational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        let pivot = a[k][k].clone();
        det *= &pivot;
        for i in (k + 1)..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for j in k..n {
                let d = &f * &a[k][j];
                a[i][j] -= d;
            }
        }
    }
    det.to_integer()
}
