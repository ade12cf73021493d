//! The field K = ℚ(√2, √3, √5).
//!
//! An element is stored sparsely as a list of `(mask, q)` pairs meaning `q·√r(mask)`,
//! where bit 0 of the mask stands for the prime 2, bit 1 for 3 and bit 2 for 5.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

const PRIMES: [u64; 3] = [2, 3, 5];

/// Radicand of a basis mask: 1, 2, 3, 6, 5, 10, 15, 30.
pub const fn radicand(mask: u8) -> u64 {
    let mut r = 1;
    if mask & 1 != 0 {
        r *= 2;
    }
    if mask & 2 != 0 {
        r *= 3;
    }
    if mask & 4 != 0 {
        r *= 5;
    }
    r
}

/// Mask of a squarefree radicand, if it is one of the eight basis radicands.
pub fn mask_of(radicand: u64) -> Option<u8> {
    (0u8..8).find(|&m| self::radicand(m) == radicand)
}

/// Basis order used by [`ScalarK::coords`]: 1, √2, √3, √5, √6, √10, √15, √30.
const COORD_MASKS: [u8; 8] = [0, 1, 2, 4, 3, 5, 6, 7];

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ScalarK {
    terms: Vec<(u8, BigRational)>,
}

impl ScalarK {
    pub fn zero() -> Self {
        ScalarK { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::radical(q, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// `q·√r(mask)`.
    pub fn radical(q: BigRational, mask: u8) -> Self {
        assert!(mask < 8);
        if q.is_zero() {
            Self::zero()
        } else {
            ScalarK { terms: vec![(mask, q)] }
        }
    }

    /// `(n/d)·√m` for a radicand m in {1,2,3,5,6,10,15,30}.
    pub fn sqrt_term(n: i64, d: i64, m: u64) -> Result<Self> {
        let mask = mask_of(m).ok_or(Error::BadRadicand(m))?;
        if d == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::radical(BigRational::new(n.into(), d.into()), mask))
    }

    fn from_dense(dense: [BigRational; 8]) -> Self {
        let terms = dense
            .into_iter()
            .enumerate()
            .filter(|(_, q)| !q.is_zero())
            .map(|(m, q)| (m as u8, q))
            .collect();
        ScalarK { terms }
    }

    fn dense(&self) -> [BigRational; 8] {
        let mut d: [BigRational; 8] = Default::default();
        for (m, q) in &self.terms {
            d[*m as usize] = q.clone();
        }
        d
    }

    /// Coordinates over the basis 1, √2, √3, √5, √6, √10, √15, √30.
    pub fn coords(&self) -> [BigRational; 8] {
        let d = self.dense();
        let mut out: [BigRational; 8] = Default::default();
        for (i, m) in COORD_MASKS.iter().enumerate() {
            out[i] = d[*m as usize].clone();
        }
        out
    }

    pub fn terms(&self) -> &[(u8, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// The value as a rational, when the irrational coordinates vanish.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(0, q)] => Some(q.clone()),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    fn combine(&self, other: &Self, sign: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let take_left = j >= other.terms.len()
                || (i < self.terms.len() && self.terms[i].0 < other.terms[j].0);
            let take_right = i >= self.terms.len()
                || (j < other.terms.len() && other.terms[j].0 < self.terms[i].0);
            if take_left {
                out.push(self.terms[i].clone());
                i += 1;
            } else if take_right {
                let (m, q) = &other.terms[j];
                out.push((*m, if sign { q.clone() } else { -q.clone() }));
                j += 1;
            } else {
                let q = if sign {
                    &self.terms[i].1 + &other.terms[j].1
                } else {
                    &self.terms[i].1 - &other.terms[j].1
                };
                if !q.is_zero() {
                    out.push((self.terms[i].0, q));
                }
                i += 1;
                j += 1;
            }
        }
        ScalarK { terms: out }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.terms.len() == 1 && other.terms.len() == 1 {
            let (m1, q1) = &self.terms[0];
            let (m2, q2) = &other.terms[0];
            let f = radicand(m1 & m2);
            let q = q1 * q2 * BigRational::from_integer(BigInt::from(f));
            return Self::radical(q, m1 ^ m2);
        }
        let mut acc: [BigRational; 8] = Default::default();
        for (m1, q1) in &self.terms {
            for (m2, q2) in &other.terms {
                let f = radicand(m1 & m2);
                let prod = q1 * q2;
                let prod = if f == 1 { prod } else { prod * BigRational::from_integer(BigInt::from(f)) };
                let slot = &mut acc[(m1 ^ m2) as usize];
                *slot = &*slot + prod;
            }
        }
        Self::from_dense(acc)
    }

    pub fn neg_ref(&self) -> Self {
        ScalarK { terms: self.terms.iter().map(|(m, q)| (*m, -q.clone())).collect() }
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        ScalarK { terms: self.terms.iter().map(|(m, q)| (*m, q * r)).collect() }
    }

    /// Galois conjugate flipping the sign of √p for the prime with index `bit`.
    fn conjugate(&self, bit: u8) -> Self {
        ScalarK {
            terms: self
                .terms
                .iter()
                .map(|(m, q)| (*m, if m & (1 << bit) != 0 { -q.clone() } else { q.clone() }))
                .collect(),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(q.recip()));
        }
        // Multiply through by conjugates until the product is rational.
        let mut numer = Self::one();
        let mut cur = self.clone();
        for bit in 0..3 {
            let c = cur.conjugate(bit);
            numer = numer.mul_ref(&c);
            cur = cur.mul_ref(&c);
        }
        let n = cur.as_rational().expect("norm of an element of K is rational");
        Ok(numer.scale_rational(&n.recip()))
    }

    pub fn div_ref(&self, other: &Self) -> Result<Self> {
        Ok(self.mul_ref(&other.inverse()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Exact sign, decided by refining rational enclosures of the radicals.
    pub fn signum(&self) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        if let Some(q) = self.as_rational() {
            return q.cmp(&BigRational::zero());
        }
        let mut bits = 32u32;
        loop {
            let (lo, hi) = self.enclosure(bits);
            if lo.is_positive() {
                return Ordering::Greater;
            }
            if hi.is_negative() {
                return Ordering::Less;
            }
            bits *= 2;
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    fn enclosure(&self, bits: u32) -> (BigRational, BigRational) {
        let scale = BigInt::one() << bits;
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        for (m, q) in &self.terms {
            let r = radicand(*m);
            let (rlo, rhi) = if r == 1 {
                (BigRational::one(), BigRational::one())
            } else {
                let s = (BigInt::from(r) * &scale * &scale).sqrt();
                (
                    BigRational::new(s.clone(), scale.clone()),
                    BigRational::new(s + 1, scale.clone()),
                )
            };
            if q.is_positive() {
                lo += q * &rlo;
                hi += q * &rhi;
            } else {
                lo += q * &rhi;
                hi += q * &rlo;
            }
        }
        (lo, hi)
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        self.sub_ref(other).signum()
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            self.neg_ref()
        } else {
            self.clone()
        }
    }

    /// Square root inside K, available when the value is `q²·m` for a basis radicand m.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let q = self.as_rational()?;
        if q.is_negative() {
            return None;
        }
        // √(n/d) = √(n·d)/d
        let nd = (q.numer() * q.denom()).to_biguint()?;
        let (root, m) = squarefree_split(&nd)?;
        let mask = mask_of(m)?;
        let coeff = BigRational::new(BigInt::from(root), q.denom().clone());
        Some(Self::radical(coeff, mask))
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(m, q)| q.to_f64().unwrap_or(f64::NAN) * (radicand(*m) as f64).sqrt())
            .sum()
    }
}

/// Writes `n = s²·m` with m squarefree over {2,3,5}; fails if another prime remains to an odd power.
fn squarefree_split(n: &BigUint) -> Option<(BigUint, u64)> {
    let mut rest = n.clone();
    let mut m = 1u64;
    let mut s = BigUint::one();
    for p in PRIMES {
        let bp = BigUint::from(p);
        let mut e = 0u32;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        if e % 2 == 1 {
            m *= p;
        }
        s *= bp.pow(e / 2);
    }
    let r = rest.sqrt();
    if &r * &r != rest {
        return None;
    }
    Some((s * r, m))
}

/// Exact rational n-th root, if it exists.
pub fn rational_nth_root(q: &BigRational, n: u32) -> Option<BigRational> {
    let neg = q.is_negative();
    if neg && n % 2 == 0 {
        return None;
    }
    let num = q.numer().abs();
    let den = q.denom().clone();
    let rn = num.nth_root(n);
    let rd = den.nth_root(n);
    if rn.pow(n) != num || rd.pow(n) != den {
        return None;
    }
    let r = BigRational::new(rn, rd);
    Some(if neg { -r } else { r })
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Renders one term `q·√m` in literal syntax without its sign.
fn fmt_term_abs(mask: u8, q: &BigRational) -> String {
    let q = q.abs();
    if mask == 0 {
        return fmt_rational(&q);
    }
    let r = radicand(mask);
    if q.denom().is_one() {
        format!("{}r{}", q.numer(), r)
    } else {
        format!("{}r{}/{}", q.numer(), r, q.denom())
    }
}

impl fmt::Display for ScalarK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, q)) in self.terms.iter().enumerate() {
            let body = fmt_term_abs(*m, q);
            match (i, q.is_negative()) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ScalarK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K({self})")
    }
}

impl ScalarK {
    /// Number of basis terms (a single-term scalar prints without parentheses).
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:ident) => {
        impl $tr<&ScalarK> for &ScalarK {
            type Output = ScalarK;
            fn $m(self, rhs: &ScalarK) -> ScalarK {
                self.$body(rhs)
            }
        }
        impl $tr<ScalarK> for ScalarK {
            type Output = ScalarK;
            fn $m(self, rhs: ScalarK) -> ScalarK {
                self.$body(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Div<&ScalarK> for &ScalarK {
    type Output = ScalarK;
    fn div(self, rhs: &ScalarK) -> ScalarK {
        self.div_ref(rhs).expect("division by zero in K")
    }
}

impl Neg for ScalarK {
    type Output = ScalarK;
    fn neg(self) -> ScalarK {
        self.neg_ref()
    }
}

impl Neg for &ScalarK {
    type Output = ScalarK;
    fn neg(self) -> ScalarK {
        self.neg_ref()
    }
}

impl From<i64> for ScalarK {
    fn from(n: i64) -> Self {
        ScalarK::from_int(n)
    }
}

impl From<BigRational> for ScalarK {
    fn from(q: BigRational) -> Self {
        ScalarK::from_rational(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(m: u64) -> ScalarK {
        ScalarK::sqrt_term(1, 1, m).unwrap()
    }

    #[test]
    fn radical_table() {
        assert_eq!(&s(2) * &s(3), s(6));
        assert_eq!(&s(2) * &s(5), s(10));
        assert_eq!(&s(3) * &s(5), s(15));
        assert_eq!(&s(2) * &s(15), s(30));
        assert_eq!(&s(6) * &s(10), ScalarK::from_int(2) * s(15));
        assert_eq!(&s(2) * &s(2), ScalarK::from_int(2));
        let r6 = ScalarK::sqrt_term(1, 6, 6).unwrap();
        assert_eq!(&r6 * &r6, ScalarK::frac(1, 6));
    }

    #[test]
    fn difference_of_squares() {
        let a = ScalarK::one() + s(2);
        let b = ScalarK::one() - s(2);
        assert_eq!(a * b, ScalarK::from_int(-1));
    }

    #[test]
    fn inverses() {
        assert_eq!(ScalarK::from_int(2).inverse().unwrap(), ScalarK::frac(1, 2));
        assert_eq!(s(2).inverse().unwrap(), ScalarK::sqrt_term(1, 2, 2).unwrap());
        let x = ScalarK::one() + s(2);
        assert_eq!(x.inverse().unwrap(), s(2) - ScalarK::one());
        assert_eq!(ScalarK::zero().inverse(), Err(Error::DivisionByZero));
        let y = ScalarK::from_int(3) + s(2) - s(15) + ScalarK::frac(1, 7) * s(30);
        assert_eq!(&y * &y.inverse().unwrap(), ScalarK::one());
    }

    #[test]
    fn signs() {
        let x = s(2) + s(3) - s(10);
        assert_eq!(x.signum(), Ordering::Less);
        let close = ScalarK::frac(141421357, 100000000) - s(2);
        assert_eq!(close.signum(), Ordering::Greater);
        assert_eq!(ScalarK::zero().signum(), Ordering::Equal);
    }

    #[test]
    fn square_roots() {
        assert_eq!(ScalarK::frac(1, 6).sqrt(), Some(ScalarK::sqrt_term(1, 6, 6).unwrap()));
        assert_eq!(ScalarK::from_int(12).sqrt(), Some(ScalarK::from_int(2) * s(3)));
        assert_eq!(ScalarK::from_int(7).sqrt(), None);
        assert_eq!(ScalarK::from_int(-4).sqrt(), None);
    }

    #[test]
    fn display() {
        assert_eq!(ScalarK::sqrt_term(1, 5, 5).unwrap().to_string(), "1r5/5");
        assert_eq!(ScalarK::sqrt_term(-1, 1, 2).unwrap().to_string(), "-1r2");
        assert_eq!((ScalarK::one() - s(2)).to_string(), "1 - 1r2");
    }

    #[test]
    fn coords_order() {
        let c = s(10).coords();
        assert!(c[5].is_one());
        assert!(c.iter().enumerate().all(|(i, q)| i == 5 || q.is_zero()));
    }

    #[test]
    fn ninth_roots() {
        let q = BigRational::new(BigInt::from(-512), BigInt::from(1));
        assert_eq!(rational_nth_root(&q, 9), Some(BigRational::from_integer(BigInt::from(-2))));
        assert_eq!(rational_nth_root(&BigRational::from_integer(3.into()), 9), None);
    }
}
