//! Exterior algebra on an oriented space of dimension at most 7.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fmt;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalar::ScalarK;

pub const MAX_DIM: usize = 9;

/// A basis blade e^{i1…ik}, bit i set for the covector e^{i+1}.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Blade(pub u16);

impl Blade {
    pub fn from_indices(idx: &[usize]) -> Blade {
        Blade(idx.iter().fold(0u16, |m, i| m | (1 << (i - 1))))
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    /// One-based indices in increasing order.
    pub fn indices(self) -> Vec<usize> {
        (0..16).filter(|b| self.0 & (1 << b) != 0).map(|b| b + 1).collect()
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << (i - 1)) != 0
    }

    pub fn word(self) -> String {
        self.indices().iter().map(|i| i.to_string()).collect()
    }

    fn key(self) -> (u32, u64) {
        let packed = self.indices().iter().fold(0u64, |acc, i| acc * 16 + *i as u64);
        (self.0.count_ones(), packed)
    }

    pub fn complement(self, dim: usize) -> Blade {
        Blade(!self.0 & ((1u16 << dim) - 1))
    }
}

// Degree first, then lexicographic on the increasing index word.
impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.word())
    }
}

/// Sign of e^a ∧ e^b for disjoint blades.
pub fn wedge_sign(a: Blade, b: Blade) -> i32 {
    let mut swaps = 0;
    let mut bits = b.0;
    while bits != 0 {
        let j = bits.trailing_zeros();
        swaps += (a.0 >> (j + 1)).count_ones();
        bits &= bits - 1;
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All blades of degree k in dimension n, in canonical order.
pub fn blades(dim: usize, k: usize) -> Vec<Blade> {
    let mut v: Vec<Blade> =
        (0u16..(1 << dim)).filter(|m| m.count_ones() as usize == k).map(Blade).collect();
    v.sort();
    v
}

#[derive(Clone, PartialEq)]
pub struct Form<C: Coeff> {
    dim: usize,
    coeffs: BTreeMap<Blade, C>,
}

impl<C: Coeff> Form<C> {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= MAX_DIM);
        Form { dim, coeffs: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: C) -> Self {
        Self::monomial(dim, Blade(0), c)
    }

    pub fn monomial(dim: usize, b: Blade, c: C) -> Self {
        let mut f = Self::zero(dim);
        f.add_term(b, c);
        f
    }

    /// e^{i1…ik} for an arbitrary word, sign-resolved to the increasing order.
    pub fn basis(dim: usize, word: &[usize]) -> Self {
        let mut f = Self::constant(dim, C::one());
        for &i in word {
            f = f.wedge(&Self::monomial(dim, Blade::from_indices(&[i]), C::one()));
        }
        f
    }

    pub fn volume(dim: usize) -> Self {
        Self::monomial(dim, Blade((1u16 << dim) - 1), C::one())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &C)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, b: Blade) -> C {
        self.coeffs.get(&b).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeff_of(&self, word: &[usize]) -> C {
        self.coeff(Blade::from_indices(word))
    }

    /// Degree when homogeneous (the zero form reports `None`).
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.coeffs.keys().map(|b| b.degree());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn add_term(&mut self, b: Blade, c: C) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&b) {
            Some(old) => {
                let s = old.plus(&c);
                if s.is_zero() {
                    self.coeffs.remove(&b);
                } else {
                    *old = s;
                }
            }
            None => {
                self.coeffs.insert(b, c);
            }
        }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch { expected: self.dim, found: other.dim });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("dimension mismatch")
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (b, c) in &other.coeffs {
            out.add_term(*b, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.negated())
    }

    pub fn scale(&self, s: &C) -> Self {
        self.map(|c| c.times(s))
    }

    pub fn scale_k(&self, s: &ScalarK) -> Self {
        self.map(|c| c.scaled(s))
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Form<D> {
        let mut out = Form::zero(self.dim);
        for (b, c) in &self.coeffs {
            out.add_term(*b, f(c));
        }
        out
    }

    pub fn try_map<D: Coeff>(&self, f: impl Fn(&C) -> Result<D>) -> Result<Form<D>> {
        let mut out = Form::zero(self.dim);
        for (b, c) in &self.coeffs {
            out.add_term(*b, f(c)?);
        }
        Ok(out)
    }

    /// Keeps only the terms of degree k.
    pub fn part(&self, k: usize) -> Self {
        let mut out = Self::zero(self.dim);
        for (b, c) in &self.coeffs {
            if b.degree() == k {
                out.add_term(*b, c.clone());
            }
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Self {
        self.try_wedge(other).expect("dimension mismatch")
    }

    pub fn try_wedge(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.dim);
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                if a.0 & b.0 != 0 {
                    continue;
                }
                let p = x.times(y);
                let p = if wedge_sign(*a, *b) < 0 { p.negated() } else { p };
                out.add_term(Blade(a.0 | b.0), p);
            }
        }
        Ok(out)
    }

    pub fn wedge_pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.dim, C::one());
        for _ in 0..k {
            acc = acc.wedge(self);
        }
        acc
    }

    /// ι_{e_i}, one-based index.
    pub fn contract_basis(&self, i: usize) -> Self {
        let mut out = Self::zero(self.dim);
        let bit = 1u16 << (i - 1);
        for (b, c) in &self.coeffs {
            if b.0 & bit == 0 {
                continue;
            }
            let before = (b.0 & (bit - 1)).count_ones();
            let c = if before % 2 == 1 { c.negated() } else { c.clone() };
            out.add_term(Blade(b.0 & !bit), c);
        }
        out
    }

    pub fn contract(&self, x: &Vector<C>) -> Result<Self> {
        if x.dim() != self.dim {
            return Err(Error::DimMismatch { expected: self.dim, found: x.dim() });
        }
        let mut out = Self::zero(self.dim);
        for (i, xi) in x.coords().iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            out = out.add(&self.contract_basis(i + 1).scale(xi));
        }
        Ok(out)
    }

    /// Embeds into a larger ambient space, keeping index positions.
    pub fn extend_dim(&self, dim: usize) -> Self {
        assert!(dim >= self.dim);
        Form { dim, coeffs: self.coeffs.clone() }
    }

    /// Drops every term involving an index above `dim` and shrinks the ambient space.
    pub fn restrict_dim(&self, dim: usize) -> Self {
        let mask = (1u16 << dim) - 1;
        let mut out = Self::zero(dim);
        for (b, c) in &self.coeffs {
            if b.0 & !mask == 0 {
                out.add_term(*b, c.clone());
            }
        }
        out
    }

    /// The unique coefficient when the form is a multiple of the volume form.
    pub fn top_coeff(&self) -> C {
        self.coeff(Blade((1u16 << self.dim) - 1))
    }

    pub fn hodge_star(&self, g: &Metric) -> Result<Self> {
        if g.dim() != self.dim {
            return Err(Error::DimMismatch { expected: self.dim, found: g.dim() });
        }
        let n = self.dim;
        let full = Blade((1u16 << n) - 1);
        if g.is_identity() {
            let mut out = Self::zero(n);
            for (b, c) in &self.coeffs {
                let comp = b.complement(n);
                let s = wedge_sign(*b, comp) * (g.orientation() as i32);
                out.add_term(comp, if s < 0 { c.negated() } else { c.clone() });
            }
            return Ok(out);
        }
        let root = g.sqrt_abs_det()?;
        let ginv = g.inverse()?;
        let mut out = Self::zero(n);
        for (j, beta) in &self.coeffs {
            let jj = j.indices();
            for i in blades(n, j.degree()) {
                let ii = i.indices();
                let minor: Matrix<ScalarK> =
                    ii.iter().map(|r| jj.iter().map(|c| ginv[r - 1][c - 1].clone()).collect()).collect();
                let m = linalg::determinant(&minor);
                if m.is_zero() {
                    continue;
                }
                let comp = Blade(full.0 & !i.0);
                let mut s = root.mul_ref(&m);
                if (wedge_sign(i, comp) * g.orientation() as i32) < 0 {
                    s = s.neg_ref();
                }
                out.add_term(comp, beta.scaled(&s));
            }
        }
        Ok(out)
    }

    /// Pullback along `map`, whose rows express this space's covectors in the source basis.
    pub fn pullback(&self, map: &LinearMap) -> Result<Self> {
        if map.rows() != self.dim {
            return Err(Error::DimMismatch { expected: self.dim, found: map.rows() });
        }
        let src = map.cols();
        let mut cache: HashMap<Blade, Form<ScalarK>> = HashMap::new();
        let mut out = Self::zero(src);
        for (b, c) in &self.coeffs {
            let image = cache.entry(*b).or_insert_with(|| {
                b.indices()
                    .iter()
                    .fold(Form::constant(src, ScalarK::one()), |acc, i| acc.wedge(&map.row_form(*i)))
            });
            for (bb, s) in image.terms() {
                out.add_term(*bb, c.scaled(s));
            }
        }
        Ok(out)
    }
}

impl Form<ScalarK> {
    pub fn lift<C: Coeff>(&self) -> Form<C> {
        self.map(C::from_scalar)
    }
}

impl<C: Coeff> fmt::Display for Form<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (b, c)) in self.coeffs.iter().enumerate() {
            let (neg, mag) = c.split_sign();
            let word = if b.0 == 0 { String::new() } else { b.word() };
            let body = if word.is_empty() {
                if mag.is_compound() { format!("({mag})") } else { mag.to_string() }
            } else if mag == C::one() {
                word
            } else if mag.is_compound() {
                format!("({mag})*{word}")
            } else {
                format!("{mag}*{word}")
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

impl<C: Coeff> fmt::Debug for Form<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form[{}]({})", self.dim, self)
    }
}

#[derive(Clone, PartialEq)]
pub struct Vector<C: Coeff> {
    coords: Vec<C>,
}

impl<C: Coeff> Vector<C> {
    pub fn new(coords: Vec<C>) -> Self {
        Vector { coords }
    }

    pub fn zero(dim: usize) -> Self {
        Vector { coords: vec![C::zero(); dim] }
    }

    /// e_i, one-based.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.coords[i - 1] = C::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[C] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(C::is_zero)
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Vector<D> {
        Vector { coords: self.coords.iter().map(f).collect() }
    }

    /// The 1-form with the same coordinates.
    pub fn as_form(&self) -> Form<C> {
        let mut out = Form::zero(self.dim());
        for (i, c) in self.coords.iter().enumerate() {
            out.add_term(Blade(1 << i), c.clone());
        }
        out
    }
}

impl<C: Coeff> fmt::Display for Vector<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_form())
    }
}

impl<C: Coeff> fmt::Debug for Vector<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vector({self})")
    }
}

/// A symmetric nondegenerate bilinear form with an orientation.
#[derive(Clone, PartialEq, Debug)]
pub struct Metric {
    entries: Matrix<ScalarK>,
    orientation: i8,
}

impl Metric {
    pub fn new(entries: Matrix<ScalarK>, orientation: i8) -> Result<Self> {
        let n = entries.len();
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimMismatch { expected: n, found: row.len() });
            }
            for j in 0..i {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::InvariantViolation {
                        entry: "metric".into(),
                        message: format!("not symmetric at ({}, {})", i + 1, j + 1),
                    });
                }
            }
        }
        if linalg::determinant(&entries).is_zero() {
            return Err(Error::DegenerateMetric);
        }
        Ok(Metric { entries, orientation: if orientation < 0 { -1 } else { 1 } })
    }

    pub fn identity(n: usize) -> Self {
        Metric { entries: linalg::identity(n), orientation: 1 }
    }

    pub fn diagonal(d: &[ScalarK]) -> Result<Self> {
        let n = d.len();
        let mut m = linalg::zeros(n, n);
        for (i, x) in d.iter().enumerate() {
            m[i][i] = x.clone();
        }
        Self::new(m, 1)
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &Matrix<ScalarK> {
        &self.entries
    }

    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    pub fn with_orientation(&self, o: i8) -> Self {
        Metric { entries: self.entries.clone(), orientation: if o < 0 { -1 } else { 1 } }
    }

    pub fn is_identity(&self) -> bool {
        self.entries == linalg::identity::<ScalarK>(self.dim())
    }

    pub fn det(&self) -> ScalarK {
        linalg::determinant(&self.entries)
    }

    pub fn inverse(&self) -> Result<Matrix<ScalarK>> {
        linalg::inverse(&self.entries)
    }

    pub fn sqrt_abs_det(&self) -> Result<ScalarK> {
        let d = self.det().abs();
        d.sqrt().ok_or_else(|| Error::IrrationalVolume(d.to_string()))
    }

    pub fn inner(&self, x: &Vector<ScalarK>, y: &Vector<ScalarK>) -> ScalarK {
        let gy = linalg::mat_vec(&self.entries, y.coords());
        x.coords().iter().zip(&gy).fold(ScalarK::zero(), |acc, (a, b)| acc.add_ref(&a.mul_ref(b)))
    }

    /// The covector g(x, ·).
    pub fn flat(&self, x: &Vector<ScalarK>) -> Form<ScalarK> {
        Vector::new(linalg::mat_vec(&self.entries, x.coords())).as_form()
    }

    pub fn is_positive_definite(&self) -> bool {
        linalg::leading_minors(&self.entries).iter().all(ScalarK::is_positive)
    }
}

/// A linear map given by its matrix: row i holds the source covector A*e^i.
#[derive(Clone, PartialEq, Debug)]
pub struct LinearMap {
    entries: Matrix<ScalarK>,
    cols: usize,
}

impl LinearMap {
    pub fn new(entries: Matrix<ScalarK>) -> Result<Self> {
        let cols = entries.first().map_or(0, Vec::len);
        if let Some(row) = entries.iter().find(|r| r.len() != cols) {
            return Err(Error::DimMismatch { expected: cols, found: row.len() });
        }
        Ok(LinearMap { entries, cols })
    }

    pub fn identity(n: usize) -> Self {
        LinearMap { entries: linalg::identity(n), cols: n }
    }

    /// Rows given by 1-forms, e.g. a coframe f^i = Σ_j A_ij e^j.
    pub fn from_coframe(rows: &[Form<ScalarK>]) -> Result<Self> {
        let n = rows.first().map_or(0, Form::dim);
        let mut entries = Vec::with_capacity(rows.len());
        for r in rows {
            if r.dim() != n {
                return Err(Error::DimMismatch { expected: n, found: r.dim() });
            }
            if r.terms().any(|(b, _)| b.degree() != 1) {
                return Err(Error::WrongDegree { expected: 1, found: r.degree().unwrap_or(0) });
            }
            entries.push((1..=n).map(|j| r.coeff_of(&[j])).collect());
        }
        Ok(LinearMap { entries, cols: n })
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &Matrix<ScalarK> {
        &self.entries
    }

    pub fn row_form(&self, i: usize) -> Form<ScalarK> {
        Vector::new(self.entries[i - 1].clone()).as_form()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(dim: usize, w: &[usize]) -> Form<ScalarK> {
        Form::basis(dim, w)
    }

    fn std_phi() -> Form<ScalarK> {
        let mut f = Form::zero(7);
        for (w, s) in [
            (&[1, 2, 7][..], 1),
            (&[3, 4, 7], 1),
            (&[5, 6, 7], 1),
            (&[1, 3, 5], 1),
            (&[1, 4, 6], -1),
            (&[2, 3, 6], -1),
            (&[2, 4, 5], -1),
        ] {
            f = f.add(&e(7, w).scale_k(&ScalarK::from_int(s)));
        }
        f
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(e(7, &[1]).wedge(&e(7, &[2])), e(7, &[1, 2]));
        assert!(e(7, &[1, 2]).wedge(&e(7, &[1, 3])).is_zero());
        let w = e(6, &[1, 2]).add(&e(6, &[3, 4])).add(&e(6, &[5, 6]));
        assert_eq!(w.wedge_pow(3), Form::volume(6).scale_k(&ScalarK::from_int(6)));
        assert_eq!(e(7, &[2, 1]), e(7, &[1, 2]).neg());
    }

    #[test]
    fn blade_order() {
        let v = blades(4, 2);
        let words: Vec<String> = v.iter().map(|b| b.word()).collect();
        assert_eq!(words, ["12", "13", "14", "23", "24", "34"]);
    }

    #[test]
    fn contraction_examples() {
        assert_eq!(e(7, &[1, 2, 7]).contract_basis(1), e(7, &[2, 7]));
        assert!(e(7, &[1, 2, 7]).contract_basis(3).is_zero());
        assert_eq!(e(7, &[1, 2, 7]).contract_basis(7), e(7, &[1, 2]));
        assert_eq!(e(7, &[1, 2, 7]).contract_basis(2), e(7, &[1, 7]).neg());
    }

    #[test]
    fn star_of_standard_phi() {
        let g = Metric::identity(7);
        assert_eq!(e(7, &[1, 2, 7]).hodge_star(&g).unwrap(), e(7, &[3, 4, 5, 6]));
        let mut expected = Form::zero(7);
        for (w, s) in [
            (&[1, 2, 3, 4][..], 1),
            (&[1, 2, 5, 6], 1),
            (&[1, 3, 6, 7], 1),
            (&[1, 4, 5, 7], 1),
            (&[2, 3, 5, 7], 1),
            (&[2, 4, 6, 7], -1),
            (&[3, 4, 5, 6], 1),
        ] {
            expected = expected.add(&e(7, w).scale_k(&ScalarK::from_int(s)));
        }
        assert_eq!(std_phi().hodge_star(&g).unwrap(), expected);
    }

    #[test]
    fn general_metric_star_matches_rescaled_identity() {
        // g = diag(4,1,…,1): e^1 has length 2, so ★e^1 = ½·2·… with √det = 2.
        let mut d = vec![ScalarK::one(); 7];
        d[0] = ScalarK::from_int(4);
        let g = Metric::diagonal(&d).unwrap();
        let star = e(7, &[1]).hodge_star(&g).unwrap();
        assert_eq!(star, e(7, &[2, 3, 4, 5, 6, 7]).scale_k(&ScalarK::frac(1, 2)));
        let star2 = e(7, &[2]).hodge_star(&g).unwrap();
        assert_eq!(star2, e(7, &[1, 3, 4, 5, 6, 7]).scale_k(&ScalarK::from_int(-2)));
    }

    #[test]
    fn pullback_examples() {
        let phi = std_phi();
        assert_eq!(phi.pullback(&LinearMap::identity(7)).unwrap(), phi);
        let mut rows = linalg::identity::<ScalarK>(7);
        rows[6] = rows[5].clone();
        let rank_deficient = LinearMap::new(rows).unwrap();
        assert!(Form::<ScalarK>::volume(7).pullback(&rank_deficient).unwrap().is_zero());
    }

    #[test]
    fn irrational_volume_is_an_error() {
        let mut d = vec![ScalarK::one(); 7];
        d[0] = ScalarK::from_int(7);
        let g = Metric::diagonal(&d).unwrap();
        assert!(matches!(e(7, &[1]).hodge_star(&g), Err(Error::IrrationalVolume(_))));
    }
}
