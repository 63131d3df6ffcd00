//! Sparse polynomials over the integers in the variables `x_1, x_2, ...`, `y`
//! and `z`, with monomials keyed by integer partitions.
//!
//! Terms are kept sorted ascending under [`Monomial`]'s order, so the leading
//! term is the last one. Coefficients are `i128`; every coefficient operation
//! is checked and panics on overflow instead of wrapping.

mod codec;
mod partition;

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use thiserror::Error;

pub use codec::{ParseError, PolyJson, TermJson};
pub use partition::Partition;

pub type Coeff = i128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("invalid partition part {0} (parts must lie in 1..=65535)")]
    InvalidPart(u32),
    #[error("polynomial contains y or z; expected an unrooted tree polynomial")]
    UnexpectedVariable,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DivisionError {
    #[error("polynomial is not divisible")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
}

pub(crate) fn checked_add(a: Coeff, b: Coeff) -> Coeff {
    a.checked_add(b).expect("coefficient overflow")
}

pub(crate) fn checked_mul(a: Coeff, b: Coeff) -> Coeff {
    a.checked_mul(b).expect("coefficient overflow")
}

/// `x_parts * y^y * z^z`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    z: u32,
    y: u32,
    parts: Partition,
}

impl Monomial {
    pub fn new(parts: Partition, y: u32, z: u32) -> Self {
        Self { z, y, parts }
    }

    pub fn one() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &Partition {
        &self.parts
    }

    pub fn y_exp(&self) -> u32 {
        self.y
    }

    pub fn z_exp(&self) -> u32 {
        self.z
    }

    pub fn is_one(&self) -> bool {
        self.z == 0 && self.y == 0 && self.parts.is_empty()
    }

    /// Total degree counting every `x_i`, `y` and `z` factor once.
    pub fn degree(&self) -> usize {
        self.parts.len() + self.y as usize + self.z as usize
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            z: self.z.checked_add(other.z).expect("z exponent overflow"),
            y: self.y.checked_add(other.y).expect("y exponent overflow"),
            parts: self.parts.union(&other.parts),
        }
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        Some(Self {
            z: self.z.checked_sub(other.z)?,
            y: self.y.checked_sub(other.y)?,
            parts: self.parts.difference(&other.parts)?,
        })
    }
}

impl Ord for Monomial {
    /// z-exponent first, then y-exponent, then the partition (length, then lex).
    fn cmp(&self, other: &Self) -> Ordering {
        self.z
            .cmp(&other.z)
            .then(self.y.cmp(&other.y))
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "x{:?}·y^{}·z^{}", self.parts, self.y, self.z)
    }
}

/// Exact sparse polynomial; the zero polynomial has no terms.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct UPolynomial {
    terms: Vec<(Monomial, Coeff)>,
}

const PAR_MUL_THRESHOLD: usize = 1 << 16;

impl UPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: Coeff) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: Coeff) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self { terms: vec![(m, c)] }
    }

    /// The variable `x_i`.
    pub fn x(i: u32) -> Self {
        Self::term(
            Monomial::new(Partition::singleton(i).expect("invalid x index"), 0, 0),
            1,
        )
    }

    pub fn y() -> Self {
        Self::term(Monomial::new(Partition::empty(), 1, 0), 1)
    }

    pub fn z() -> Self {
        Self::z_pow(1)
    }

    pub fn z_pow(e: u32) -> Self {
        Self::term(Monomial::new(Partition::empty(), 0, e), 1)
    }

    /// Collects terms in any order, merging duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Coeff)>>(terms: I) -> Self {
        let mut map: FxHashMap<Monomial, Coeff> = FxHashMap::default();
        for (m, c) in terms {
            let e = map.entry(m).or_insert(0);
            *e = checked_add(*e, c);
        }
        Self::from_map(map)
    }

    fn from_map(map: FxHashMap<Monomial, Coeff>) -> Self {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| *c != 0).collect();
        if terms.len() > PAR_MUL_THRESHOLD {
            terms.par_sort_unstable_by(|a, b| a.0.cmp(&b.0));
        } else {
            terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, Coeff)> + ExactSizeIterator {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    pub fn leading_term(&self) -> Option<(&Monomial, Coeff)> {
        self.terms.last().map(|(m, c)| (m, *c))
    }

    pub fn coeff(&self, m: &Monomial) -> Coeff {
        self.terms
            .binary_search_by(|(t, _)| t.cmp(m))
            .map_or(0, |i| self.terms[i].1)
    }

    pub fn scale(&self, c: Coeff) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), checked_mul(*k, c)))
                .collect(),
        }
    }

    /// Multiplies every term by the monomial `m`. Order is preserved since
    /// the monomial order is multiplicative.
    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self {
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), *c)).collect(),
        }
    }

    pub fn filter<F: FnMut(&Monomial) -> bool>(&self, mut keep: F) -> Self {
        Self {
            terms: self.terms.iter().filter(|(m, _)| keep(m)).cloned().collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn merge(&self, other: &Self, sign: Coeff) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut terms = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    terms.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    terms.push((b[j].0.clone(), checked_mul(sign, b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = checked_add(a[i].1, checked_mul(sign, b[j].1));
                    if c != 0 {
                        terms.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&a[i..]);
        terms.extend(b[j..].iter().map(|(m, c)| (m.clone(), checked_mul(sign, *c))));
        Self { terms }
    }

    fn product(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (outer, inner) = if self.len() >= other.len() {
            (&self.terms, &other.terms)
        } else {
            (&other.terms, &self.terms)
        };
        let accumulate = |map: &mut FxHashMap<Monomial, Coeff>, chunk: &[(Monomial, Coeff)]| {
            for (m1, c1) in chunk {
                for (m2, c2) in inner {
                    let e = map.entry(m1.mul(m2)).or_insert(0);
                    *e = checked_add(*e, checked_mul(*c1, *c2));
                }
            }
        };
        if outer.len() * inner.len() < PAR_MUL_THRESHOLD {
            let mut map = FxHashMap::default();
            accumulate(&mut map, outer);
            return Self::from_map(map);
        }
        let chunk = outer.len().div_ceil(rayon::current_num_threads() * 4).max(1);
        let map = outer
            .par_chunks(chunk)
            .map(|c| {
                let mut map = FxHashMap::default();
                accumulate(&mut map, c);
                map
            })
            .reduce(FxHashMap::default, |mut a, mut b| {
                if a.len() < b.len() {
                    std::mem::swap(&mut a, &mut b);
                }
                for (m, c) in b {
                    let e = a.entry(m).or_insert(0);
                    *e = checked_add(*e, c);
                }
                a
            });
        Self::from_map(map)
    }

    /// Replaces `z^n` by `x_n` in every term with `n > 0`.
    pub fn star_specialize(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| {
            let mut m = m.clone();
            if m.z > 0 {
                m.parts.insert(m.z).expect("z exponent exceeds partition range");
                m.z = 0;
            }
            (m, *c)
        }))
    }

    /// Returns `r` with `self = divisor * r`, found by repeated leading-term
    /// cancellation.
    pub fn exact_divide(&self, divisor: &Self) -> Result<Self, DivisionError> {
        let (lead_m, lead_c) = divisor.leading_term().ok_or(DivisionError::DivisionByZero)?;
        let mut rem: BTreeMap<Monomial, Coeff> = self.terms.iter().cloned().collect();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let t = m.div(lead_m).ok_or(DivisionError::NotDivisible)?;
            if c % lead_c != 0 {
                return Err(DivisionError::NotDivisible);
            }
            let q = c / lead_c;
            for (dm, dc) in divisor.terms.iter().rev().skip(1) {
                let delta = -checked_mul(q, *dc);
                match rem.entry(dm.mul(&t)) {
                    Entry::Occupied(mut o) => {
                        let v = checked_add(*o.get(), delta);
                        if v == 0 {
                            o.remove();
                        } else {
                            *o.get_mut() = v;
                        }
                    }
                    Entry::Vacant(v) => {
                        v.insert(delta);
                    }
                }
            }
            quotient.push((t, q));
        }
        quotient.reverse();
        Ok(Self { terms: quotient })
    }

    /// Divides every term by `z`; `None` if some term has no `z`.
    pub fn div_z(&self) -> Option<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut m = m.clone();
            m.z = m.z.checked_sub(1)?;
            terms.push((m, *c));
        }
        Some(Self { terms })
    }

    fn ensure_unrooted(&self) -> Result<(), PolyError> {
        if self.terms.iter().any(|(m, _)| m.z != 0 || m.y != 0) {
            return Err(PolyError::UnexpectedVariable);
        }
        Ok(())
    }

    /// Restricted polynomial `U_k`: keeps terms whose partition has at most
    /// `k + 1` parts.
    pub fn truncate_length(&self, k: usize) -> Result<Self, PolyError> {
        self.ensure_unrooted()?;
        Ok(self.filter(|m| m.parts.len() <= k + 1))
    }

    /// Keeps terms with at most `k` parts, i.e. subsets with `|A| >= n - k`
    /// edges of an `n`-vertex tree.
    pub fn truncate_edge_count(&self, k: usize) -> Result<Self, PolyError> {
        self.ensure_unrooted()?;
        Ok(self.filter(|m| m.parts.len() <= k))
    }

    /// Keeps terms whose parts are all at most `k`.
    pub fn restrict_part_size(&self, k: u32) -> Result<Self, PolyError> {
        self.ensure_unrooted()?;
        Ok(self.filter(|m| m.parts.max_part().is_none_or(|p| p <= k)))
    }

    /// Smallest partition length among the terms.
    pub fn min_length(&self) -> Option<usize> {
        self.terms.iter().map(|(m, _)| m.parts.len()).min()
    }

    pub fn max_z(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.z).max()
    }
}

impl Neg for &UPolynomial {
    type Output = UPolynomial;
    fn neg(self) -> UPolynomial {
        self.scale(-1)
    }
}

impl Neg for UPolynomial {
    type Output = UPolynomial;
    fn neg(self) -> UPolynomial {
        self.scale(-1)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl $trait<&UPolynomial> for &UPolynomial {
            type Output = UPolynomial;
            fn $method(self, rhs: &UPolynomial) -> UPolynomial {
                let ($a, $b) = (self, rhs);
                $body
            }
        }
        impl $trait<UPolynomial> for UPolynomial {
            type Output = UPolynomial;
            fn $method(self, rhs: UPolynomial) -> UPolynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&UPolynomial> for UPolynomial {
            type Output = UPolynomial;
            fn $method(self, rhs: &UPolynomial) -> UPolynomial {
                (&self).$method(rhs)
            }
        }
        impl $trait<UPolynomial> for &UPolynomial {
            type Output = UPolynomial;
            fn $method(self, rhs: UPolynomial) -> UPolynomial {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.merge(b, 1));
forward_binop!(Sub, sub, |a, b| a.merge(b, -1));
forward_binop!(Mul, mul, |a, b| a.product(b));

impl std::iter::Sum for UPolynomial {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for UPolynomial {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |a, b| a * b)
    }
}

impl std::fmt::Debug for UPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "UPolynomial({self})")
    }
}
