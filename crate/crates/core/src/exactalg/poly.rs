//! Sparse multivariate polynomials over [`Scalar`].
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose `Ord` is graded
//! lexicographic with `x_0 > x_1 > ... > x_{n-1}`. Iteration is therefore
//! ascending; [`Poly::leading_term`] is the last entry and rendering walks
//! the map in reverse so the leading term prints first.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::Scalar;
use crate::error::{ensure_dim, Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(dim: usize) -> Self {
        Monomial { exps: vec![0; dim] }
    }

    pub fn var(dim: usize, i: usize) -> Self {
        let mut exps = vec![0; dim];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn dim(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.dim(), other.dim());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
        }
    }

    /// All monomials of total degree `degree` in `dim` variables, in
    /// descending graded-lex order (`x_0^d` first).
    pub fn all_of_degree(dim: usize, degree: u32) -> Vec<Monomial> {
        fn rec(dim: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if prefix.len() + 1 == dim {
                prefix.push(left);
                out.push(Monomial::new(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=left).rev() {
                prefix.push(e);
                rec(dim, left - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if dim == 0 {
            if degree == 0 {
                out.push(Monomial::new(Vec::new()));
            }
            return out;
        }
        rec(dim, degree, &mut Vec::with_capacity(dim), &mut out);
        out
    }

    pub fn render(&self, names: &[String]) -> String {
        let mut s = String::new();
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('*');
            }
            s.push_str(&names[i]);
            if e > 1 {
                let _ = write!(s, "^{e}");
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Result of [`Poly::homogeneous_degree`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero polynomial, homogeneous of every degree.
    Zero,
    Degree(u32),
    Mixed,
}

impl Homogeneity {
    pub fn degree(self) -> Option<u32> {
        match self {
            Homogeneity::Degree(d) => Some(d),
            _ => None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    dim: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

#[derive(Clone, Debug)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    Scale(Scalar),
}

/// Binary ring operation with an explicit dimension check. `Scale` ignores `b`.
pub fn poly_arith(a: &Poly, b: &Poly, op: PolyOp) -> Result<Poly> {
    if !matches!(op, PolyOp::Scale(_)) {
        ensure_dim(a.dim, b.dim)?;
    }
    Ok(match op {
        PolyOp::Add => a + b,
        PolyOp::Sub => a - b,
        PolyOp::Mul => a * b,
        PolyOp::Scale(c) => a.scale(&c),
    })
}

impl Poly {
    pub fn zero(dim: usize) -> Self {
        Poly {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: Scalar) -> Self {
        Poly::term(dim, Monomial::one(dim), c)
    }

    pub fn one(dim: usize) -> Self {
        Poly::constant(dim, Scalar::one())
    }

    pub fn var(dim: usize, i: usize) -> Self {
        Poly::term(dim, Monomial::var(dim, i), Scalar::one())
    }

    pub fn term(dim: usize, m: Monomial, c: Scalar) -> Self {
        assert_eq!(m.dim(), dim, "monomial length must equal ambient dimension");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { dim, terms }
    }

    /// Builds a polynomial from possibly repeated, possibly zero terms.
    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Poly::zero(dim);
        for (m, c) in terms {
            assert_eq!(m.dim(), dim, "monomial length must equal ambient dimension");
            p.add_term(m, &c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// The value of a constant polynomial, `None` otherwise.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn homogeneous_degree(&self) -> Homogeneity {
        let mut degrees = self.terms.keys().map(Monomial::total_degree);
        let Some(first) = degrees.next() else {
            return Homogeneity::Zero;
        };
        if degrees.all(|d| d == first) {
            Homogeneity::Degree(first)
        } else {
            Homogeneity::Mixed
        }
    }

    /// True for the zero polynomial and for homogeneous polynomials of `degree`.
    pub fn is_homogeneous_of(&self, degree: u32) -> bool {
        self.terms.keys().all(|m| m.total_degree() == degree)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.dim);
        }
        Poly {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.dim);
        }
        Poly {
            dim: self.dim,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut acc = Poly::one(self.dim);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// `∂/∂x_i` with a zero-based variable index.
    pub fn partial_derivative(&self, i: usize) -> Result<Poly> {
        if i >= self.dim {
            return Err(Error::IndexOutOfRange { index: i, dim: self.dim });
        }
        let mut out = Poly::zero(self.dim);
        for (m, c) in &self.terms {
            let e = m.exps[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[i] -= 1;
            out.terms
                .insert(Monomial::new(exps), c * &Scalar::from_int(e as i64));
        }
        Ok(out)
    }

    /// Quotient `q` with `self = q * den`, or `None` when `den` does not divide.
    pub fn exact_divide(&self, den: &Poly) -> Result<Option<Poly>> {
        ensure_dim(self.dim, den.dim)?;
        let Some((lm, lc)) = den.leading_term() else {
            return Err(Error::DivisionByZero);
        };
        let lc_inv = lc.inv().expect("leading coefficient is nonzero");
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.dim);
        while let Some((rm, rc)) = rem.leading_term() {
            if !lm.divides(rm) {
                return Ok(None);
            }
            let qm = lm.quotient_of(rm);
            let qc = rc * &lc_inv;
            rem = &rem - &den.mul_monomial(&qm, &qc);
            quot.add_term(qm, &qc);
        }
        Ok(Some(quot))
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        ensure_dim(self.dim, point.len())?;
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.exps) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Substitutes `x_i ↦ images[i]`; all images share the target dimension.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        ensure_dim(self.dim, images.len())?;
        let target = images.first().map_or(0, Poly::dim);
        for img in images {
            ensure_dim(target, img.dim)?;
        }
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(p.dim)]).collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Same polynomial viewed in `new_dim >= dim` variables.
    pub fn extend_dim(&self, new_dim: usize) -> Poly {
        assert!(new_dim >= self.dim);
        Poly {
            dim: new_dim,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut exps = m.exps.clone();
                    exps.resize(new_dim, 0);
                    (Monomial::new(exps), c.clone())
                })
                .collect(),
        }
    }

    /// Sets the last variable to `value` and drops it from the ambient space.
    pub fn specialize_last(&self, value: &Scalar) -> Poly {
        assert!(self.dim > 0);
        let mut out = Poly::zero(self.dim - 1);
        for (m, c) in &self.terms {
            let (&e, rest) = m.exps.split_last().unwrap();
            out.add_term(Monomial::new(rest.to_vec()), &(c * &value.pow(e)));
        }
        out
    }

    /// Canonical text form, leading term first, e.g. `3/2*x*y - z^2`.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let (negative, body) = render_coeff(c, m.is_one());
            match (k == 0, negative) {
                (true, true) => s.push('-'),
                (true, false) => {}
                (false, true) => s.push_str(" - "),
                (false, false) => s.push_str(" + "),
            }
            s.push_str(&body);
            if !m.is_one() {
                if !body.is_empty() {
                    s.push('*');
                }
                s.push_str(&m.render(names));
            }
        }
        s
    }
}

/// Splits a coefficient into a sign and a printable magnitude. The magnitude
/// is empty for a unit coefficient in front of a non-constant monomial.
pub(crate) fn render_coeff(c: &Scalar, constant_term: bool) -> (bool, String) {
    use num_traits::Signed;
    let (negative, mag) = if c.is_rational() {
        (c.re().is_negative(), Scalar::rational(c.re().abs()))
    } else if c.re().is_zero() {
        (c.im().is_negative(), Scalar::gaussian(Zero::zero(), c.im().abs()))
    } else {
        return (false, format!("({c})"));
    };
    if mag.is_one() && !constant_term {
        (negative, String::new())
    } else {
        (negative, mag.to_string())
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.dim, rhs.dim, "polynomial dimension mismatch");
        let (mut big, small) = if self.len() >= rhs.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c);
        }
        big
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.dim, rhs.dim, "polynomial dimension mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.dim, rhs.dim, "polynomial dimension mismatch");
        let mut out = Poly::zero(self.dim);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);
