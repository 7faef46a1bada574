//! Prime-field arithmetic over `F_q` and the vector spaces `F_q^d`.
//!
//! [`PrimeField`] carries the modulus; [`FieldElem`] and [`FVector`] carry
//! their field so that mixing elements of different fields is reported as an
//! error instead of silently reducing modulo the wrong prime. Coordinates of
//! vectors are addressed 1-indexed through [`FVector::get`]; the raw digit
//! slice returned by [`FVector::digits`] is 0-indexed (position `i` lives at
//! `digits()[i - 1]`).
//!
//! The hot paths of the reduction work on raw `u32` digits through the
//! `PrimeField` methods (`add`, `sub`, `mul`, ...), which assume their inputs
//! are already reduced.

use std::fmt;

use thiserror::Error;

/// Largest supported modulus.
pub const MAX_MODULUS: u32 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("modulus {0} is not a prime")]
    NotPrime(u32),
    #[error("modulus {0} exceeds the supported maximum {MAX_MODULUS}")]
    ModulusTooLarge(u32),
    #[error("value {value} is not reduced modulo {q}")]
    Unreduced { value: u32, q: u32 },
    #[error("operands belong to different fields (F_{left} and F_{right})")]
    FieldMismatch { left: u32, right: u32 },
    #[error("division by zero in F_{0}")]
    DivisionByZero(u32),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("invalid digit string {0:?}")]
    BadDigits(String),
}

/// The prime field `F_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    q: u32,
}

fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let mut p = 2u32;
    while p * p <= q {
        if q % p == 0 {
            return false;
        }
        p += 1;
    }
    true
}

impl PrimeField {
    pub fn new(q: u32) -> Result<Self, GfError> {
        if q > MAX_MODULUS {
            return Err(GfError::ModulusTooLarge(q));
        }
        if !is_prime(q) {
            return Err(GfError::NotPrime(q));
        }
        Ok(Self { q })
    }

    #[inline]
    pub fn q(self) -> u32 {
        self.q
    }

    pub fn elem(self, value: u32) -> Result<FieldElem, GfError> {
        if value >= self.q {
            return Err(GfError::Unreduced { value, q: self.q });
        }
        Ok(FieldElem { value, q: self.q })
    }

    pub fn zero(self) -> FieldElem {
        FieldElem { value: 0, q: self.q }
    }

    pub fn one(self) -> FieldElem {
        FieldElem { value: 1, q: self.q }
    }

    /// All field elements in increasing order.
    pub fn elements(self) -> impl Iterator<Item = FieldElem> {
        let q = self.q;
        (0..q).map(move |value| FieldElem { value, q })
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.q as u64) as u32
    }

    /// Multiplicative inverse via Fermat; `None` for zero.
    pub fn inv(self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let mut base = a as u64;
        let mut exp = self.q - 2;
        let mut acc = 1u64;
        let m = self.q as u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        Some(acc as u32)
    }

    /// `q^e`, or `None` on `u64` overflow.
    pub fn checked_pow(self, e: usize) -> Option<u64> {
        let mut acc: u64 = 1;
        for _ in 0..e {
            acc = acc.checked_mul(self.q as u64)?;
        }
        Some(acc)
    }

    fn check(self, other: u32) -> Result<(), GfError> {
        if self.q != other {
            return Err(GfError::FieldMismatch {
                left: self.q,
                right: other,
            });
        }
        Ok(())
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

/// An element of `F_q` tagged with its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElem {
    value: u32,
    q: u32,
}

impl FieldElem {
    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn field(self) -> PrimeField {
        PrimeField { q: self.q }
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn add(self, other: Self) -> Result<Self, GfError> {
        self.field().check(other.q)?;
        Ok(self.with(self.field().add(self.value, other.value)))
    }

    pub fn sub(self, other: Self) -> Result<Self, GfError> {
        self.field().check(other.q)?;
        Ok(self.with(self.field().sub(self.value, other.value)))
    }

    pub fn mul(self, other: Self) -> Result<Self, GfError> {
        self.field().check(other.q)?;
        Ok(self.with(self.field().mul(self.value, other.value)))
    }

    pub fn neg(self) -> Self {
        self.with(self.field().neg(self.value))
    }

    pub fn inv(self) -> Result<Self, GfError> {
        self.field()
            .inv(self.value)
            .map(|v| self.with(v))
            .ok_or(GfError::DivisionByZero(self.q))
    }

    fn with(self, value: u32) -> Self {
        Self { value, q: self.q }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// A vector in `F_q^d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FVector {
    field: PrimeField,
    coords: Vec<u32>,
}

impl FVector {
    /// Builds a vector from raw coordinates, rejecting unreduced digits.
    pub fn new(field: PrimeField, coords: Vec<u32>) -> Result<Self, GfError> {
        if let Some(&value) = coords.iter().find(|&&c| c >= field.q) {
            return Err(GfError::Unreduced { value, q: field.q });
        }
        Ok(Self { field, coords })
    }

    pub fn zero(field: PrimeField, dim: usize) -> Self {
        Self {
            field,
            coords: vec![0; dim],
        }
    }

    /// The standard unit vector `e_i` of `F_q^dim`, `1 <= i <= dim`.
    pub fn unit(field: PrimeField, i: usize, dim: usize) -> Result<Self, GfError> {
        if i == 0 || i > dim {
            return Err(GfError::IndexOutOfRange { index: i, dim });
        }
        let mut v = Self::zero(field, dim);
        v.coords[i - 1] = 1;
        Ok(v)
    }

    /// The vector whose base-q expansion (most significant coordinate first)
    /// is `index`.
    pub fn from_index(field: PrimeField, dim: usize, mut index: u64) -> Self {
        let q = field.q as u64;
        let mut coords = vec![0; dim];
        for c in coords.iter_mut().rev() {
            *c = (index % q) as u32;
            index /= q;
        }
        Self { field, coords }
    }

    /// Inverse of [`FVector::from_index`]; `None` if `q^dim` overflows.
    pub fn to_index(&self) -> Option<u64> {
        let q = self.field.q as u64;
        self.coords.iter().try_fold(0u64, |acc, &c| {
            acc.checked_mul(q)?.checked_add(c as u64)
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn digits(&self) -> &[u32] {
        &self.coords
    }

    pub fn into_digits(self) -> Vec<u32> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Coordinate `r[i]`, 1-indexed.
    pub fn get(&self, i: usize) -> Result<FieldElem, GfError> {
        if i == 0 || i > self.coords.len() {
            return Err(GfError::IndexOutOfRange {
                index: i,
                dim: self.coords.len(),
            });
        }
        Ok(FieldElem {
            value: self.coords[i - 1],
            q: self.field.q,
        })
    }

    fn compatible(&self, other: &Self) -> Result<(), GfError> {
        self.field.check(other.field.q)?;
        if self.dim() != other.dim() {
            return Err(GfError::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u32, u32) -> u32) -> Result<Self, GfError> {
        self.compatible(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(Self {
            field: self.field,
            coords,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, GfError> {
        let f = self.field;
        self.zip_with(other, |a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GfError> {
        let f = self.field;
        self.zip_with(other, |a, b| f.sub(a, b))
    }

    pub fn scale(&self, a: FieldElem) -> Result<Self, GfError> {
        self.field.check(a.q)?;
        let f = self.field;
        Ok(Self {
            field: f,
            coords: self.coords.iter().map(|&c| f.mul(a.value, c)).collect(),
        })
    }

    /// 1-indexed positions on which the two vectors differ, ascending.
    pub fn diff(&self, other: &Self) -> Result<Vec<usize>, GfError> {
        self.compatible(other)?;
        Ok(diff_digits(&self.coords, &other.coords))
    }

    pub fn hamming(&self, other: &Self) -> Result<usize, GfError> {
        self.compatible(other)?;
        Ok(self
            .coords
            .iter()
            .zip(&other.coords)
            .filter(|(a, b)| a != b)
            .count())
    }

    /// Base-q digit string, most significant coordinate first.
    ///
    /// For `q <= 36` each coordinate is one character from `0-9a-z`; larger
    /// moduli use dot-separated decimal coordinates.
    pub fn to_digit_string(&self) -> String {
        encode_digits(self.field, &self.coords)
    }

    /// Parses the output of [`FVector::to_digit_string`].
    pub fn from_digit_string(field: PrimeField, s: &str) -> Result<Self, GfError> {
        let bad = || GfError::BadDigits(s.to_string());
        let coords: Vec<u32> = if field.q <= 36 {
            s.chars()
                .map(|c| c.to_digit(36).filter(|&v| v < field.q).ok_or_else(bad))
                .collect::<Result<_, _>>()?
        } else if s.is_empty() {
            Vec::new()
        } else {
            s.split('.')
                .map(|part| {
                    if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
                        return Err(bad());
                    }
                    part.parse::<u32>()
                        .ok()
                        .filter(|&v| v < field.q)
                        .ok_or_else(bad)
                })
                .collect::<Result<_, _>>()?
        };
        Ok(Self { field, coords })
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_digit_string())
    }
}

pub(crate) fn encode_digits(field: PrimeField, coords: &[u32]) -> String {
    if field.q <= 36 {
        coords
            .iter()
            .map(|&c| char::from_digit(c, 36).expect("reduced digit"))
            .collect()
    } else {
        coords
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(".")
    }
}

pub(crate) fn diff_digits(a: &[u32], b: &[u32]) -> Vec<usize> {
    a.iter()
        .zip(b)
        .enumerate()
        .filter(|(_, (x, y))| x != y)
        .map(|(i, _)| i + 1)
        .collect()
}

/// Row-echelon basis of a subspace of `F_q^d`, used for span membership
/// and rank computations.
#[derive(Debug, Clone)]
pub struct Echelon {
    field: PrimeField,
    dim: usize,
    // Each row is normalised so that its pivot coordinate is 1.
    rows: Vec<(usize, Vec<u32>)>,
}

impl Echelon {
    pub fn new(field: PrimeField, dim: usize) -> Self {
        Self {
            field,
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [u32]) {
        let f = self.field;
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
        }
    }

    /// Whether `v` lies in the span of the rows inserted so far.
    pub fn contains(&self, v: &[u32]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&c| c == 0)
    }

    /// Adds `v`; returns `false` (and leaves the basis unchanged) if `v` was
    /// already in the span.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(pivot) = w.iter().position(|&c| c != 0) else {
            return false;
        };
        let f = self.field;
        let scale = f.inv(w[pivot]).expect("nonzero pivot");
        for x in w.iter_mut() {
            *x = f.mul(*x, scale);
        }
        // Keep existing rows reduced against the new pivot so that `reduce`
        // stays a single pass regardless of insertion order.
        for (_, row) in self.rows.iter_mut() {
            let c = row[pivot];
            if c != 0 {
                for (x, &r) in row.iter_mut().zip(&w) {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
        }
        self.rows.push((pivot, w));
        true
    }
}

/// Rank of a family of vectors of dimension `dim` by Gaussian elimination.
pub fn rank<'a>(field: PrimeField, dim: usize, vectors: impl IntoIterator<Item = &'a [u32]>) -> usize {
    let mut e = Echelon::new(field, dim);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}
