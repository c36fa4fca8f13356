//! Coordinates of homogeneous forms with respect to the monomial basis.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::Form;
use crate::error::{Error, Result};
use crate::exactalg::{Monomial, Poly, Scalar};

/// The monomial basis `x^m dx_I` of k-forms of total degree `e` on `C^n`,
/// ordered by index tuple, then by descending monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormBasis {
    dim: usize,
    arity: usize,
    degree: u32,
    entries: Vec<(Vec<usize>, Monomial)>,
    position: BTreeMap<(Vec<usize>, Monomial), usize>,
}

impl FormBasis {
    /// Empty when `degree < arity`.
    pub fn new(dim: usize, arity: usize, degree: u32) -> Self {
        let mut entries = Vec::new();
        if degree as usize >= arity {
            let monomials = Monomial::all_of_degree(dim, degree - arity as u32);
            for idx in index_tuples(dim, arity) {
                for m in &monomials {
                    entries.push((idx.clone(), m.clone()));
                }
            }
        }
        let position = entries.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        FormBasis {
            dim,
            arity,
            degree,
            entries,
            position,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(Vec<usize>, Monomial)] {
        &self.entries
    }

    /// The basis element with the given position.
    pub fn element(&self, pos: usize) -> Form {
        let (idx, m) = &self.entries[pos];
        let mut f = Form::zero(self.dim, self.arity);
        f.insert(idx.clone(), Poly::term(self.dim, m.clone(), Scalar::from_int(1)));
        f
    }

    pub fn coordinates(&self, form: &Form) -> Result<Vec<Scalar>> {
        if form.dim() != self.dim || form.arity() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: form.arity(),
            });
        }
        let mut out = vec![Scalar::zero(); self.len()];
        for (idx, p) in form.components() {
            for (m, c) in p.terms() {
                let pos = self.position.get(&(idx.clone(), m.clone())).ok_or_else(|| {
                    Error::NotHomogeneous {
                        what: format!("form of total degree {}", self.degree),
                    }
                })?;
                out[*pos] = c.clone();
            }
        }
        Ok(out)
    }

    pub fn form(&self, coords: &[Scalar]) -> Form {
        assert_eq!(coords.len(), self.len());
        let mut parts: BTreeMap<&Vec<usize>, Vec<(Monomial, Scalar)>> = BTreeMap::new();
        for ((idx, m), c) in self.entries.iter().zip(coords) {
            if !c.is_zero() {
                parts.entry(idx).or_default().push((m.clone(), c.clone()));
            }
        }
        let mut f = Form::zero(self.dim, self.arity);
        for (idx, terms) in parts {
            f.insert(idx.clone(), Poly::from_terms(self.dim, terms));
        }
        f
    }
}

/// Strictly increasing index tuples of length `k` in `0..n`, lexicographic.
pub fn index_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        // n * C(n+e-2, n-1) one-forms of total degree e
        assert_eq!(FormBasis::new(3, 1, 2).len(), 9);
        assert_eq!(FormBasis::new(3, 1, 3).len(), 18);
        assert_eq!(FormBasis::new(3, 3, 4).len(), 3);
        assert_eq!(FormBasis::new(4, 2, 2).len(), 6);
        assert!(FormBasis::new(3, 2, 1).is_empty());
    }

    #[test]
    fn coordinates_round_trip() {
        let b = FormBasis::new(3, 1, 2);
        let x = Poly::var(3, 0);
        let y = Poly::var(3, 1);
        let omega = &Form::coeff_dx(x.scale(&Scalar::frac(1, 3)), 1) - &Form::coeff_dx(y, 0);
        let c = b.coordinates(&omega).unwrap();
        assert_eq!(c.iter().filter(|s| !s.is_zero()).count(), 2);
        assert_eq!(b.form(&c), omega);
        assert!(b.coordinates(&Form::dx(3, 0)).is_err());
    }
}
