//! Coefficient domains shared by forms, vectors and matrices.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{PolyK, RatFunK};
use crate::scalar::ScalarK;

/// A commutative ring containing K.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn from_scalar(s: &ScalarK) -> Self;

    fn scaled(&self, s: &ScalarK) -> Self {
        self.times(&Self::from_scalar(s))
    }

    /// Whether a printed rendering needs parentheses when used as a factor.
    fn is_compound(&self) -> bool;

    /// Drops a leading minus sign when the value is a single negative term.
    fn split_sign(&self) -> (bool, Self);
}

/// A coefficient domain with exact division.
pub trait Field: Coeff {
    fn inverse(&self) -> Result<Self>;

    fn divided(&self, other: &Self) -> Result<Self> {
        Ok(self.times(&other.inverse()?))
    }
}

impl Coeff for ScalarK {
    fn zero() -> Self {
        ScalarK::zero()
    }
    fn one() -> Self {
        ScalarK::one()
    }
    fn is_zero(&self) -> bool {
        ScalarK::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self.add_ref(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub_ref(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul_ref(other)
    }
    fn negated(&self) -> Self {
        self.neg_ref()
    }
    fn from_scalar(s: &ScalarK) -> Self {
        s.clone()
    }
    fn scaled(&self, s: &ScalarK) -> Self {
        self.mul_ref(s)
    }
    fn is_compound(&self) -> bool {
        self.term_count() > 1
    }
    fn split_sign(&self) -> (bool, Self) {
        if self.term_count() == 1 && self.is_negative() {
            (true, self.neg_ref())
        } else {
            (false, self.clone())
        }
    }
}

impl Field for ScalarK {
    fn inverse(&self) -> Result<Self> {
        ScalarK::inverse(self)
    }
}

impl Coeff for PolyK {
    fn zero() -> Self {
        PolyK::zero()
    }
    fn one() -> Self {
        PolyK::one()
    }
    fn is_zero(&self) -> bool {
        PolyK::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self.add_ref(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub_ref(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul_ref(other)
    }
    fn negated(&self) -> Self {
        self.neg_ref()
    }
    fn from_scalar(s: &ScalarK) -> Self {
        PolyK::constant(s.clone())
    }
    fn scaled(&self, s: &ScalarK) -> Self {
        self.scale(s)
    }
    fn is_compound(&self) -> bool {
        self.len() > 1 || self.as_constant().is_some_and(|c| c.term_count() > 1)
    }
    fn split_sign(&self) -> (bool, Self) {
        if self.len() == 1 {
            let (_, c) = self.terms().next().unwrap();
            if c.term_count() == 1 && c.is_negative() {
                return (true, self.neg_ref());
            }
        }
        (false, self.clone())
    }
}

impl Coeff for RatFunK {
    fn zero() -> Self {
        RatFunK::zero()
    }
    fn one() -> Self {
        RatFunK::one()
    }
    fn is_zero(&self) -> bool {
        RatFunK::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self.add_ref(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub_ref(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul_ref(other)
    }
    fn negated(&self) -> Self {
        self.neg_ref()
    }
    fn from_scalar(s: &ScalarK) -> Self {
        RatFunK::from_poly(PolyK::constant(s.clone()))
    }
    fn scaled(&self, s: &ScalarK) -> Self {
        self.scale(s)
    }
    fn is_compound(&self) -> bool {
        !self.denom().is_constant() || self.numer().is_compound()
    }
    fn split_sign(&self) -> (bool, Self) {
        if self.denom().is_constant() {
            let (neg, p) = self.numer().split_sign();
            return (neg, RatFunK::from_poly(p));
        }
        (false, self.clone())
    }
}

impl Field for RatFunK {
    fn inverse(&self) -> Result<Self> {
        RatFunK::inverse(self)
    }
}

/// Conversion of a parsed polynomial coefficient into a concrete domain.
pub trait FromPoly: Coeff {
    fn from_poly(p: &PolyK) -> Result<Self>;
}

impl FromPoly for ScalarK {
    fn from_poly(p: &PolyK) -> Result<Self> {
        p.as_constant().ok_or_else(|| Error::NotConstant(p.to_string()))
    }
}

impl FromPoly for PolyK {
    fn from_poly(p: &PolyK) -> Result<Self> {
        Ok(p.clone())
    }
}

impl FromPoly for RatFunK {
    fn from_poly(p: &PolyK) -> Result<Self> {
        Ok(RatFunK::from_poly(p.clone()))
    }
}
