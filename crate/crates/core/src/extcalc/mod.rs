//! Polynomial differential forms on `C^n`: wedge, exterior derivative,
//! interior product and the radial vector field.
//!
//! A k-form of total degree `e` stores coefficient polynomials of degree
//! `e - k`. With this convention `d`, `i_R` and `∧` all act additively on
//! total degree (`d` and `i_R` preserve it, `∧` adds).

mod basis;

pub use basis::{index_tuples, FormBasis};

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use crate::error::{ensure_dim, Error, Result};
use crate::exactalg::{render_coeff, Homogeneity, Poly, Scalar};

/// An alternating polynomial k-form. Keys are strictly increasing index
/// tuples; zero components are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Form {
    dim: usize,
    arity: usize,
    comps: BTreeMap<Vec<usize>, Poly>,
}

impl Form {
    pub fn zero(dim: usize, arity: usize) -> Self {
        Form {
            dim,
            arity,
            comps: BTreeMap::new(),
        }
    }

    /// The 0-form `p`.
    pub fn function(p: Poly) -> Self {
        let mut f = Form::zero(p.dim(), 0);
        f.insert(Vec::new(), p);
        f
    }

    /// `Σ coeffs[i] dx_i`.
    pub fn one_form(coeffs: Vec<Poly>) -> Result<Self> {
        let dim = coeffs.len();
        let mut f = Form::zero(dim, 1);
        for (i, p) in coeffs.into_iter().enumerate() {
            ensure_dim(dim, p.dim())?;
            f.insert(vec![i], p);
        }
        Ok(f)
    }

    /// `dx_i` in `dim` variables.
    pub fn dx(dim: usize, i: usize) -> Self {
        let mut f = Form::zero(dim, 1);
        f.insert(vec![i], Poly::one(dim));
        f
    }

    /// `p dx_i`.
    pub fn coeff_dx(p: Poly, i: usize) -> Self {
        let mut f = Form::zero(p.dim(), 1);
        f.insert(vec![i], p);
        f
    }

    /// Builds a form from `(indices, poly)` pairs whose indices may be in any
    /// order; each pair is sorted with the matching permutation sign.
    pub fn from_components(
        dim: usize,
        arity: usize,
        parts: impl IntoIterator<Item = (Vec<usize>, Poly)>,
    ) -> Result<Self> {
        let mut f = Form::zero(dim, arity);
        for (idx, p) in parts {
            if idx.len() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    found: idx.len(),
                });
            }
            ensure_dim(dim, p.dim())?;
            if let Some(&bad) = idx.iter().find(|&&i| i >= dim) {
                return Err(Error::IndexOutOfRange { index: bad, dim });
            }
            if let Some((key, negative)) = sort_with_sign(idx) {
                f.accumulate(key, if negative { -&p } else { p });
            }
        }
        Ok(f)
    }

    fn insert(&mut self, key: Vec<usize>, p: Poly) {
        if !p.is_zero() {
            self.comps.insert(key, p);
        }
    }

    fn accumulate(&mut self, key: Vec<usize>, p: Poly) {
        if p.is_zero() {
            return;
        }
        match self.comps.remove(&key) {
            Some(old) => self.insert(key, &old + &p),
            None => self.insert(key, p),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&Vec<usize>, &Poly)> {
        self.comps.iter()
    }

    pub fn component(&self, idx: &[usize]) -> Poly {
        self.comps.get(idx).cloned().unwrap_or_else(|| Poly::zero(self.dim))
    }

    /// Coefficient of `dx_i` in a one-form.
    pub fn coeff(&self, i: usize) -> Poly {
        self.component(&[i])
    }

    /// Coefficients `(A_0, …, A_{n-1})` of a one-form `Σ A_i dx_i`.
    pub fn one_form_coeffs(&self) -> Result<Vec<Poly>> {
        self.expect_arity(1)?;
        Ok((0..self.dim).map(|i| self.coeff(i)).collect())
    }

    /// The polynomial of a 0-form.
    pub fn as_function(&self) -> Result<Poly> {
        self.expect_arity(0)?;
        Ok(self.component(&[]))
    }

    pub fn expect_arity(&self, arity: usize) -> Result<()> {
        if self.arity == arity {
            Ok(())
        } else {
            Err(Error::ArityMismatch {
                expected: arity,
                found: self.arity,
            })
        }
    }

    /// Total degree: coefficient degree plus arity.
    pub fn homogeneous_degree(&self) -> Homogeneity {
        let mut degree = None;
        for p in self.comps.values() {
            match p.homogeneous_degree() {
                Homogeneity::Degree(d) => match degree {
                    None => degree = Some(d),
                    Some(prev) if prev == d => {}
                    Some(_) => return Homogeneity::Mixed,
                },
                Homogeneity::Mixed => return Homogeneity::Mixed,
                Homogeneity::Zero => {}
            }
        }
        match degree {
            None => Homogeneity::Zero,
            Some(d) => Homogeneity::Degree(d + self.arity as u32),
        }
    }

    /// True for the zero form and for forms homogeneous of total degree `e`.
    pub fn is_homogeneous_of(&self, e: u32) -> bool {
        match self.homogeneous_degree() {
            Homogeneity::Zero => true,
            Homogeneity::Degree(d) => d == e,
            Homogeneity::Mixed => false,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Form {
        self.map(|p| p.scale(c))
    }

    pub fn mul_poly(&self, q: &Poly) -> Form {
        assert_eq!(self.dim, q.dim(), "form/polynomial dimension mismatch");
        self.map(|p| p * q)
    }

    fn map(&self, f: impl Fn(&Poly) -> Poly) -> Form {
        let mut out = Form::zero(self.dim, self.arity);
        for (k, p) in &self.comps {
            out.insert(k.clone(), f(p));
        }
        out
    }

    /// Applies `f` to every coefficient, possibly changing the ambient dimension.
    pub fn map_coefficients(&self, new_dim: usize, f: impl Fn(&Poly) -> Poly) -> Form {
        let mut out = Form::zero(new_dim, self.arity);
        for (k, p) in &self.comps {
            let q = f(p);
            assert_eq!(q.dim(), new_dim);
            out.insert(k.clone(), q);
        }
        out
    }

    /// The same form in `new_dim >= dim` variables.
    pub fn extend_dim(&self, new_dim: usize) -> Form {
        self.map_coefficients(new_dim, |p| p.extend_dim(new_dim))
    }

    pub fn try_add(&self, other: &Form) -> Result<Form> {
        self.check_compatible(other)?;
        Ok(self + other)
    }

    fn check_compatible(&self, other: &Form) -> Result<()> {
        ensure_dim(self.dim, other.dim)?;
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: other.arity,
            });
        }
        Ok(())
    }

    /// Exterior product. Arity overflow (`p + q > n`) yields the zero form.
    pub fn wedge(&self, other: &Form) -> Result<Form> {
        ensure_dim(self.dim, other.dim)?;
        let arity = self.arity + other.arity;
        let mut out = Form::zero(self.dim, arity);
        if arity > self.dim {
            return Ok(out);
        }
        for (i, p) in &self.comps {
            for (j, q) in &other.comps {
                let Some((key, negative)) = merge_indices(i, j) else {
                    continue;
                };
                let prod = p * q;
                out.accumulate(key, if negative { -&prod } else { prod });
            }
        }
        Ok(out)
    }

    /// Exterior derivative.
    pub fn d(&self) -> Form {
        let mut out = Form::zero(self.dim, self.arity + 1);
        if self.arity >= self.dim {
            return out;
        }
        for (idx, p) in &self.comps {
            for j in 0..self.dim {
                if idx.contains(&j) {
                    continue;
                }
                let dp = p.partial_derivative(j).expect("index in range");
                if dp.is_zero() {
                    continue;
                }
                let before = idx.iter().filter(|&&i| i < j).count();
                let mut key = idx.clone();
                key.insert(before, j);
                out.accumulate(key, if before % 2 == 1 { -&dp } else { dp });
            }
        }
        out
    }

    /// Interior product `i_X(self)`.
    pub fn contract(&self, field: &VectorField) -> Result<Form> {
        ensure_dim(self.dim, field.dim())?;
        if self.arity == 0 {
            return Err(Error::Precondition(
                "interior product of a 0-form".to_string(),
            ));
        }
        let mut out = Form::zero(self.dim, self.arity - 1);
        for (idx, p) in &self.comps {
            for (pos, &i) in idx.iter().enumerate() {
                let xi = &field.comps[i];
                if xi.is_zero() {
                    continue;
                }
                let mut key = idx.clone();
                key.remove(pos);
                let term = p * xi;
                out.accumulate(key, if pos % 2 == 1 { -&term } else { term });
            }
        }
        Ok(out)
    }

    /// `i_R(self)` for the radial field of the ambient space.
    pub fn contract_radial(&self) -> Result<Form> {
        self.contract(&radial_field(self.dim))
    }

    /// Canonical rendering: components in index order, terms leading first.
    /// One-forms print as `-2*y*dx + x*dy`; higher forms join differentials
    /// with `^`.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, p) in &self.comps {
            let diff: Vec<String> = idx.iter().map(|&i| format!("d{}", names[i])).collect();
            let diff = diff.join("^");
            for (m, c) in p.terms().rev() {
                let (negative, body) = render_coeff(c, false);
                match (s.is_empty(), negative) {
                    (true, true) => s.push('-'),
                    (true, false) => {}
                    (false, true) => s.push_str(" - "),
                    (false, false) => s.push_str(" + "),
                }
                let mut factors = Vec::new();
                if !body.is_empty() {
                    factors.push(body);
                }
                if !m.is_one() {
                    factors.push(m.render(names));
                }
                if !diff.is_empty() {
                    factors.push(diff.clone());
                }
                if factors.is_empty() {
                    factors.push("1".to_string());
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }
}

/// Sorts an index tuple, returning the permutation parity, or `None` on a
/// repeated index.
fn sort_with_sign(mut idx: Vec<usize>) -> Option<(Vec<usize>, bool)> {
    let mut negative = false;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((idx, negative))
}

/// Merges two increasing tuples; the sign counts pairs `a ∈ i, b ∈ j, a > b`.
fn merge_indices(i: &[usize], j: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut out = Vec::with_capacity(i.len() + j.len());
    let (mut a, mut b) = (0, 0);
    let mut inversions = 0usize;
    while a < i.len() || b < j.len() {
        if b == j.len() || (a < i.len() && i[a] < j[b]) {
            out.push(i[a]);
            a += 1;
        } else if a == i.len() || j[b] < i[a] {
            inversions += i.len() - a;
            out.push(j[b]);
            b += 1;
        } else {
            return None;
        }
    }
    Some((out, inversions % 2 == 1))
}

impl<'a> Add<&'a Form> for &'a Form {
    type Output = Form;
    fn add(self, rhs: &Form) -> Form {
        assert_eq!((self.dim, self.arity), (rhs.dim, rhs.arity), "form shape mismatch");
        let mut out = self.clone();
        for (k, p) in &rhs.comps {
            out.accumulate(k.clone(), p.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Form> for &'a Form {
    type Output = Form;
    fn sub(self, rhs: &Form) -> Form {
        self + &(-rhs)
    }
}

impl Neg for &Form {
    type Output = Form;
    fn neg(self) -> Form {
        self.map(|p| -p)
    }
}

impl Add for Form {
    type Output = Form;
    fn add(self, rhs: Form) -> Form {
        &self + &rhs
    }
}

impl Sub for Form {
    type Output = Form;
    fn sub(self, rhs: Form) -> Form {
        &self - &rhs
    }
}

/// A polynomial vector field `Σ X_i ∂/∂x_i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectorField {
    comps: Vec<Poly>,
}

impl VectorField {
    pub fn new(comps: Vec<Poly>) -> Result<Self> {
        let dim = comps.len();
        for p in &comps {
            ensure_dim(dim, p.dim())?;
        }
        Ok(VectorField { comps })
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.comps
    }
}

/// `R = Σ x_i ∂/∂x_i`.
pub fn radial_field(n: usize) -> VectorField {
    VectorField {
        comps: (0..n).map(|i| Poly::var(n, i)).collect(),
    }
}

/// Polynomial `d p` as a one-form.
pub fn differential(p: &Poly) -> Form {
    Form::function(p.clone()).d()
}

/// `i_R(ω)` of a one-form, as a polynomial.
pub fn radial_contraction(omega: &Form) -> Result<Poly> {
    omega.expect_arity(1)?;
    omega.contract_radial()?.as_function()
}

/// Checks the homogeneous Cartan identity `d(i_R a) + i_R(d a) = e·a`.
pub fn cartan_check(a: &Form, e: u32) -> Result<bool> {
    if !a.is_homogeneous_of(e) {
        return Err(Error::NotHomogeneous {
            what: format!("form of total degree {e}"),
        });
    }
    let radial = radial_field(a.dim());
    let lie = if a.arity() == 0 {
        a.d().contract(&radial)?
    } else {
        let first = a.contract(&radial)?.d();
        let second = a.d().contract(&radial)?;
        &first + &second
    };
    Ok(lie == a.scale(&Scalar::from_int(e as i64)))
}

/// `ω ∧ dω`, the Frobenius obstruction of a one-form.
pub fn frobenius(omega: &Form) -> Result<Form> {
    omega.wedge(&omega.d())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Monomial;

    fn names() -> Vec<String> {
        ["x", "y", "z"].iter().map(|s| s.to_string()).collect()
    }
    fn v(i: usize) -> Poly {
        Poly::var(3, i)
    }
    fn k(c: i64) -> Poly {
        Poly::constant(3, Scalar::from_int(c))
    }

    #[test]
    fn wedge_examples() {
        let dx = Form::dx(3, 0);
        let dy = Form::dx(3, 1);
        assert!(dx.wedge(&dx).unwrap().is_zero());
        assert_eq!(dx.wedge(&dy).unwrap(), -&dy.wedge(&dx).unwrap());
        let a = Form::coeff_dx(v(0), 1);
        let b = Form::coeff_dx(v(1), 0);
        let expected = Form::from_components(3, 2, [(vec![0, 1], -&(&v(0) * &v(1)))]).unwrap();
        assert_eq!(a.wedge(&b).unwrap(), expected);
        assert!(dx.wedge(&Form::dx(2, 0)).is_err());
    }

    #[test]
    fn wedge_overflow_is_zero() {
        let three = Form::dx(3, 0).wedge(&Form::dx(3, 1)).unwrap().wedge(&Form::dx(3, 2)).unwrap();
        let four = three.wedge(&Form::dx(3, 0)).unwrap();
        assert!(four.is_zero());
        assert_eq!(four.arity(), 4);
    }

    #[test]
    fn d_examples() {
        let x2 = v(0).pow(2);
        assert_eq!(differential(&x2), Form::coeff_dx(&k(2) * &v(0), 0));
        assert!(differential(&(&v(0) * &v(1))).d().is_zero());
        let a = &Form::coeff_dx(v(0), 1) - &Form::coeff_dx(&k(2) * &v(1), 0);
        let expected = Form::from_components(3, 2, [(vec![0, 1], k(3))]).unwrap();
        assert_eq!(a.d(), expected);
    }

    #[test]
    fn contraction_examples() {
        let r = radial_field(3);
        let dicritical = &Form::coeff_dx(v(0), 1) - &Form::coeff_dx(v(1), 0);
        assert!(dicritical.contract(&r).unwrap().is_zero());
        let dicritical2 = Form::one_form(vec![-&Poly::var(2, 1), Poly::var(2, 0)]).unwrap();
        assert!(dicritical2.contract_radial().unwrap().is_zero());
        let h = v(0).pow(3);
        assert_eq!(radial_contraction(&differential(&h)).unwrap(), &k(3) * &h);
        let dxdy = Form::dx(3, 0).wedge(&Form::dx(3, 1)).unwrap();
        assert_eq!(dxdy.contract(&r).unwrap(), dicritical);
        assert!(Form::function(v(0)).contract(&r).is_err());
    }

    #[test]
    fn radial_field_examples() {
        assert_eq!(radial_field(2).components(), &[Poly::var(2, 0), Poly::var(2, 1)]);
        assert_eq!(radial_field(3).components(), &[v(0), v(1), v(2)]);
        let p = &(&v(0).pow(3) + &v(1).pow(3)) + &v(2).pow(3);
        let euler = differential(&p).contract(&radial_field(3)).unwrap().as_function().unwrap();
        assert_eq!(euler, &k(3) * &p);
    }

    #[test]
    fn cartan_examples() {
        let a = &Form::coeff_dx(v(0), 1) - &Form::coeff_dx(&k(2) * &v(1), 0);
        assert!(cartan_check(&a, 2).unwrap());
        let p = &(&v(0).pow(3) + &v(1).pow(3)) + &v(2).pow(3);
        assert!(cartan_check(&differential(&p), 3).unwrap());
        let log = Form::one_form(vec![
            &v(1) * &v(2),
            &k(2) * &(&v(0) * &v(2)),
            &k(5) * &(&v(0) * &v(1)),
        ])
        .unwrap();
        assert!(cartan_check(&log, 3).unwrap());
        assert!(cartan_check(&Form::function(p.clone()), 3).unwrap());
        let mixed = &Form::coeff_dx(v(0), 1) + &Form::dx(3, 0);
        assert!(cartan_check(&mixed, 2).is_err());
    }

    #[test]
    fn rendering() {
        let a = &Form::coeff_dx(v(0), 1) - &Form::coeff_dx(&k(2) * &v(1), 0);
        assert_eq!(a.render(&names()), "-2*y*dx + x*dy");
        assert_eq!(Form::dx(3, 2).render(&names()), "dz");
        let two = Form::from_components(3, 2, [(vec![1, 0], Poly::term(3, Monomial::one(3), Scalar::frac(1, 2)))]).unwrap();
        assert_eq!(two.render(&names()), "-1/2*dx^dy");
    }
}
