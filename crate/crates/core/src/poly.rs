//! Sparse multivariate polynomials and rational functions over K.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::ScalarK;

/// A named polynomial variable such as `c1234`, `al3` or `a`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Self {
        Var(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    fn split(&self) -> (&str, Option<u64>) {
        let s: &str = &self.0;
        let cut = s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
        let (head, tail) = s.split_at(cut);
        (head, tail.parse().ok())
    }
}

// Natural order: prefix alphabetically, then numeric suffix, so al2 < al10.
impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        let (h1, n1) = self.split();
        let (h2, n2) = other.split();
        h1.cmp(h2).then(n1.cmp(&n2)).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A power product, kept sorted by variable with positive exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs(mut pairs: Vec<(Var, u32)>) -> Self {
        pairs.retain(|(_, e)| *e > 0);
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match out.last_mut() {
                Some((w, f)) if *w == v => *f += e,
                _ => out.push((v, e)),
            }
        }
        Monomial(out)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: &Var) -> u32 {
        self.0.iter().find(|(w, _)| w == v).map_or(0, |(_, e)| *e)
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for (v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 == *v {
                let f = other.0[j].1;
                if f > *e {
                    return None;
                }
                if e - f > 0 {
                    out.push((v.clone(), e - f));
                }
                j += 1;
            } else if j < other.0.len() && other.0[j].0 < *v {
                return None;
            } else {
                out.push((v.clone(), *e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let pairs = self
            .0
            .iter()
            .filter_map(|(v, e)| {
                let f = other.exponent(v);
                (f > 0).then(|| (v.clone(), (*e).min(f)))
            })
            .collect();
        Monomial(pairs)
    }

    fn without(&self, v: &Var) -> Monomial {
        Monomial(self.0.iter().filter(|(w, _)| w != v).cloned().collect())
    }
}

// Graded lexicographic order; earlier variables are heavier.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let d = self.degree().cmp(&other.degree());
        if d != Ordering::Equal {
            return d;
        }
        for (x, y) in self.0.iter().zip(other.0.iter()) {
            if x.0 != y.0 {
                return if x.0 < y.0 { Ordering::Greater } else { Ordering::Less };
            }
            if x.1 != y.1 {
                return x.1.cmp(&y.1);
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct PolyK {
    terms: BTreeMap<Monomial, ScalarK>,
}

impl PolyK {
    pub fn zero() -> Self {
        PolyK { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(ScalarK::one())
    }

    pub fn constant(c: ScalarK) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(name: &str) -> Self {
        Self::term(ScalarK::one(), Monomial::var(Var::new(name)))
    }

    pub fn from_var(v: &Var) -> Self {
        Self::term(ScalarK::one(), Monomial::var(v.clone()))
    }

    pub fn term(c: ScalarK, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        PolyK { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &ScalarK)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<ScalarK> {
        match self.terms.len() {
            0 => Some(ScalarK::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn leading(&self) -> Option<(&Monomial, &ScalarK)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.0.iter().map(|(v, _)| v.clone())).collect()
    }

    pub fn degree_in(&self, v: &Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    /// Coefficient of `v^k`, as a polynomial in the remaining variables.
    pub fn coeff_of_power(&self, v: &Var, k: u32) -> PolyK {
        let mut out = PolyK::zero();
        for (m, c) in &self.terms {
            if m.exponent(v) == k {
                out.add_term(m.without(v), c.clone());
            }
        }
        out
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn add_term(&mut self, m: Monomial, c: ScalarK) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = old.add_ref(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_ref(&self, other: &PolyK) -> PolyK {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub_ref(&self, other: &PolyK) -> PolyK {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg_ref());
        }
        out
    }

    pub fn neg_ref(&self) -> PolyK {
        PolyK { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg_ref())).collect() }
    }

    pub fn mul_ref(&self, other: &PolyK) -> PolyK {
        let mut out = PolyK::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.mul_ref(c2));
            }
        }
        out
    }

    pub fn scale(&self, s: &ScalarK) -> PolyK {
        if s.is_zero() {
            return PolyK::zero();
        }
        PolyK { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.mul_ref(s))).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> PolyK {
        PolyK { terms: self.terms.iter().map(|(n, c)| (n.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> PolyK {
        let mut acc = PolyK::one();
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &PolyK) -> Option<PolyK> {
        let (lm, lc) = d.leading()?;
        let lc_inv = lc.inverse().ok()?;
        let mut rem = self.clone();
        let mut quot = PolyK::zero();
        while let Some((m, c)) = rem.leading() {
            let qm = m.div(lm)?;
            let qc = c.mul_ref(&lc_inv);
            let t = PolyK::term(qc.clone(), qm.clone());
            rem = rem.sub_ref(&d.mul_monomial(&qm).scale(&qc));
            quot.add_term(qm, qc);
            let _ = t;
        }
        Some(quot)
    }

    /// Common monomial factor of all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(m) => m.clone(),
            None => return Monomial::one(),
        };
        it.fold(first, |acc, m| acc.gcd(m))
    }

    pub fn div_monomial(&self, m: &Monomial) -> Option<PolyK> {
        let mut out = BTreeMap::new();
        for (n, c) in &self.terms {
            out.insert(n.div(m)?, c.clone());
        }
        Some(PolyK { terms: out })
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> PolyK {
        match self.leading() {
            Some((_, c)) => self.scale(&c.inverse().expect("nonzero leading coefficient")),
            None => PolyK::zero(),
        }
    }

    pub fn eval(&self, point: &BTreeMap<Var, ScalarK>) -> Result<ScalarK> {
        let mut acc = ScalarK::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in &m.0 {
                let x = point
                    .get(v)
                    .ok_or_else(|| Error::NotConstant(format!("unbound variable {v}")))?;
                t = t.mul_ref(&x.pow(*e));
            }
            acc = acc.add_ref(&t);
        }
        Ok(acc)
    }

    /// Substitutes polynomials for variables; unbound variables pass through.
    pub fn substitute_poly(&self, bindings: &BTreeMap<Var, PolyK>) -> PolyK {
        let mut out = PolyK::zero();
        for (m, c) in &self.terms {
            let mut t = PolyK::constant(c.clone());
            let mut rest = Vec::new();
            for (v, e) in &m.0 {
                match bindings.get(v) {
                    Some(p) => t = t.mul_ref(&p.pow(*e)),
                    None => rest.push((v.clone(), *e)),
                }
            }
            out = out.add_ref(&t.mul_monomial(&Monomial(rest)));
        }
        out
    }

    /// Substitutes rational functions for variables.
    pub fn substitute(&self, bindings: &BTreeMap<Var, RatFunK>) -> Result<RatFunK> {
        for r in bindings.values() {
            if r.den.is_zero() {
                return Err(Error::DenominatorVanishes);
            }
        }
        let mut acc = RatFunK::zero();
        for (m, c) in &self.terms {
            let mut t = RatFunK::from_poly(PolyK::constant(c.clone()));
            let mut rest = Vec::new();
            for (v, e) in &m.0 {
                match bindings.get(v) {
                    Some(r) => t = t.mul_ref(&r.pow(*e)),
                    None => rest.push((v.clone(), *e)),
                }
            }
            t = t.mul_ref(&RatFunK::from_poly(PolyK::term(ScalarK::one(), Monomial(rest))));
            acc = acc.add_ref(&t);
        }
        Ok(acc)
    }

    /// True when every exponent is even and all coefficients share one strict sign,
    /// including a nonzero constant term; such a polynomial has no real zero.
    pub fn is_sum_of_even_powers_plus_constant(&self) -> bool {
        if !self.terms.contains_key(&Monomial::one()) {
            return false;
        }
        let mut sign = None;
        for (m, c) in &self.terms {
            if m.0.iter().any(|(_, e)| e % 2 == 1) {
                return false;
            }
            let s = c.signum();
            match sign {
                None => sign = Some(s),
                Some(t) if t != s => return false,
                _ => {}
            }
        }
        true
    }
}

impl fmt::Display for PolyK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = if c.term_count() == 1 && c.is_negative() {
                (true, c.neg_ref())
            } else {
                (false, c.clone())
            };
            let body = if m.is_one() {
                if mag.term_count() > 1 && i > 0 {
                    format!("({mag})")
                } else {
                    mag.to_string()
                }
            } else if mag.is_one() {
                m.to_string()
            } else if mag.term_count() > 1 {
                format!("({mag})*{m}")
            } else {
                format!("{mag}*{m}")
            };
            match (i, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P({self})")
    }
}

/// A quotient of polynomials with monic denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunK {
    num: PolyK,
    den: PolyK,
}

impl RatFunK {
    pub fn zero() -> Self {
        RatFunK { num: PolyK::zero(), den: PolyK::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(PolyK::one())
    }

    pub fn from_poly(p: PolyK) -> Self {
        RatFunK { num: p, den: PolyK::one() }
    }

    pub fn new(num: PolyK, den: PolyK) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunK { num, den }.normalize())
    }

    pub fn numer(&self) -> &PolyK {
        &self.num
    }

    pub fn denom(&self) -> &PolyK {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_poly(&self) -> Option<PolyK> {
        self.den.is_constant().then(|| {
            let c = self.den.as_constant().unwrap();
            self.num.scale(&c.inverse().unwrap())
        })
    }

    /// Removes monomial content and exact polynomial factors, then makes the denominator monic.
    pub fn normalize(&self) -> RatFunK {
        if self.num.is_zero() {
            return RatFunK::zero();
        }
        let g = self.num.monomial_content().gcd(&self.den.monomial_content());
        let mut num = self.num.div_monomial(&g).unwrap();
        let mut den = self.den.div_monomial(&g).unwrap();
        if !den.is_constant() {
            if let Some(q) = num.div_exact(&den) {
                num = q;
                den = PolyK::one();
            } else if let Some(q) = den.div_exact(&num) {
                num = PolyK::one();
                den = q;
            }
        }
        let lc = den.leading().map(|(_, c)| c.clone()).unwrap();
        let inv = lc.inverse().unwrap();
        RatFunK { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn add_ref(&self, other: &RatFunK) -> RatFunK {
        if self.den == other.den {
            return RatFunK { num: self.num.add_ref(&other.num), den: self.den.clone() }.normalize();
        }
        if let Some(k) = other.den.div_exact(&self.den) {
            return RatFunK { num: self.num.mul_ref(&k).add_ref(&other.num), den: other.den.clone() }
                .normalize();
        }
        if let Some(k) = self.den.div_exact(&other.den) {
            return RatFunK { num: self.num.add_ref(&other.num.mul_ref(&k)), den: self.den.clone() }
                .normalize();
        }
        RatFunK {
            num: self.num.mul_ref(&other.den).add_ref(&other.num.mul_ref(&self.den)),
            den: self.den.mul_ref(&other.den),
        }
        .normalize()
    }

    pub fn neg_ref(&self) -> RatFunK {
        RatFunK { num: self.num.neg_ref(), den: self.den.clone() }
    }

    pub fn sub_ref(&self, other: &RatFunK) -> RatFunK {
        self.add_ref(&other.neg_ref())
    }

    pub fn mul_ref(&self, other: &RatFunK) -> RatFunK {
        if self.is_zero() || other.is_zero() {
            return RatFunK::zero();
        }
        // Cancel cross factors first to keep sizes down.
        let (mut a, mut b) = (self.num.clone(), other.den.clone());
        if let Some(q) = a.div_exact(&b) {
            a = q;
            b = PolyK::one();
        }
        let (mut c, mut d) = (other.num.clone(), self.den.clone());
        if let Some(q) = c.div_exact(&d) {
            c = q;
            d = PolyK::one();
        }
        RatFunK { num: a.mul_ref(&c), den: d.mul_ref(&b) }.normalize()
    }

    pub fn inverse(&self) -> Result<RatFunK> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunK { num: self.den.clone(), den: self.num.clone() }.normalize())
    }

    pub fn pow(&self, e: u32) -> RatFunK {
        RatFunK { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn scale(&self, s: &ScalarK) -> RatFunK {
        RatFunK { num: self.num.scale(s), den: self.den.clone() }.normalize()
    }
}

impl fmt::Display for RatFunK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.as_poly().unwrap())
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> PolyK {
        PolyK::var(n)
    }

    #[test]
    fn graded_lex_display() {
        let p = v("c2357").sub_ref(&v("c1247"));
        assert_eq!(p.neg_ref().to_string(), "c1247 - c2357");
        let a = v("a").pow(2).sub_ref(&v("al1").pow(2)).sub_ref(&v("al10"));
        assert_eq!(a.to_string(), "a^2 - al1^2 - al10");
    }

    #[test]
    fn var_order_is_natural() {
        assert!(Var::new("al2") < Var::new("al10"));
        assert!(Var::new("a") < Var::new("al1"));
    }

    #[test]
    fn exact_division() {
        let x = v("x");
        let y = v("y");
        let p = x.add_ref(&y).mul_ref(&x.sub_ref(&y));
        assert_eq!(p.div_exact(&x.add_ref(&y)), Some(x.sub_ref(&y)));
        assert_eq!(p.div_exact(&x), None);
    }

    #[test]
    fn substitution_examples() {
        let x = v("x");
        let p = v("al4").sub_ref(&x);
        let mut b = BTreeMap::new();
        b.insert(Var::new("al4"), RatFunK::from_poly(x.clone()));
        assert!(p.substitute(&b).unwrap().is_zero());

        let q = v("al6").add_ref(&v("al5").mul_ref(&v("al7")));
        let mut b = BTreeMap::new();
        b.insert(Var::new("al6"), RatFunK::from_poly(v("al5").mul_ref(&v("al7")).neg_ref()));
        assert!(q.substitute(&b).unwrap().is_zero());

        let r = v("a").pow(2).sub_ref(&PolyK::constant(ScalarK::frac(1, 4)));
        let mut b = BTreeMap::new();
        b.insert(Var::new("a"), RatFunK::from_poly(PolyK::constant(ScalarK::frac(1, 2))));
        assert!(r.substitute(&b).unwrap().is_zero());

        let mut bad = BTreeMap::new();
        bad.insert(Var::new("a"), RatFunK { num: PolyK::one(), den: PolyK::zero() });
        assert_eq!(r.substitute(&bad), Err(Error::DenominatorVanishes));
    }

    #[test]
    fn rational_function_cancellation() {
        let x = v("x");
        let y = v("y");
        let r = RatFunK::new(x.pow(2).sub_ref(&y.pow(2)), x.sub_ref(&y)).unwrap();
        assert_eq!(r.as_poly(), Some(x.add_ref(&y)));
        let s = RatFunK::new(x.clone(), x.mul_ref(&y).scale(&ScalarK::from_int(3))).unwrap();
        assert_eq!(s.to_string(), "(1/3)/(y)");
    }

    #[test]
    fn positivity_pattern() {
        let p = v("al5").pow(2).add_ref(&PolyK::one());
        assert!(p.is_sum_of_even_powers_plus_constant());
        let q = v("x").pow(2).add_ref(&v("y").pow(2));
        assert!(!q.is_sum_of_even_powers_plus_constant());
    }
}
