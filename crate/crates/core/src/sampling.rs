//! Random homogeneous instances for property checks and benchmarks.
//! Coefficients are small integers so exact arithmetic stays cheap.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::exactalg::{Monomial, Poly, Scalar};
use crate::extcalc::{index_tuples, Form};
use crate::foliations::FoliationSpec;

const COEFF_RANGE: i64 = 5;

fn coefficient<R: Rng>(rng: &mut R, gaussian: bool) -> Scalar {
    loop {
        let re = rng.gen_range(-COEFF_RANGE..=COEFF_RANGE);
        let im = if gaussian { rng.gen_range(-1..=1) } else { 0 };
        let c = &Scalar::from_int(re) + &(&Scalar::i() * &Scalar::from_int(im));
        if !c.is_zero() {
            return c;
        }
    }
}

/// A nonzero homogeneous polynomial with at most `terms` terms.
pub fn homogeneous_poly<R: Rng>(rng: &mut R, dim: usize, degree: u32, terms: usize) -> Poly {
    let monomials = Monomial::all_of_degree(dim, degree);
    let count = rng.gen_range(1..=terms.max(1)).min(monomials.len());
    let chosen = monomials.choose_multiple(rng, count).cloned().collect::<Vec<_>>();
    Poly::from_terms(dim, chosen.into_iter().map(|m| (m, coefficient(rng, false))))
}

/// Like [`homogeneous_poly`] but with Gaussian-rational coefficients.
pub fn gaussian_poly<R: Rng>(rng: &mut R, dim: usize, degree: u32, terms: usize) -> Poly {
    let monomials = Monomial::all_of_degree(dim, degree);
    let count = rng.gen_range(1..=terms.max(1)).min(monomials.len());
    let chosen = monomials.choose_multiple(rng, count).cloned().collect::<Vec<_>>();
    Poly::from_terms(dim, chosen.into_iter().map(|m| (m, coefficient(rng, true))))
}

/// A homogeneous k-form of total degree `degree` (coefficients of degree
/// `degree - arity`), with a few nonzero components.
pub fn homogeneous_form<R: Rng>(rng: &mut R, dim: usize, arity: usize, degree: u32, terms: usize) -> Form {
    assert!(degree as usize >= arity);
    let tuples = index_tuples(dim, arity);
    let count = rng.gen_range(1..=tuples.len().min(3));
    let chosen: Vec<Vec<usize>> = tuples.choose_multiple(rng, count).cloned().collect();
    let parts: Vec<(Vec<usize>, Poly)> = chosen
        .into_iter()
        .map(|idx| (idx, homogeneous_poly(rng, dim, degree - arity as u32, terms)))
        .collect();
    Form::from_components(dim, arity, parts).expect("indices are valid")
}

/// A random rational spec with parameter degrees in `1..=max_degree`.
pub fn rational_spec<R: Rng>(rng: &mut R, dim: usize, max_degree: u32) -> FoliationSpec {
    let (d1, d2) = (rng.gen_range(1..=max_degree), rng.gen_range(1..=max_degree));
    let f1 = homogeneous_poly(rng, dim, d1, 3);
    let f2 = homogeneous_poly(rng, dim, d2, 3);
    let r = coefficient(rng, false);
    let s = coefficient(rng, false);
    FoliationSpec::rational(f1, f2, r, s).expect("parameters are homogeneous and non-constant")
}

/// A random logarithmic spec with `factors` parameters.
pub fn logarithmic_spec<R: Rng>(rng: &mut R, dim: usize, factors: usize, max_degree: u32) -> FoliationSpec {
    let fs = (0..factors)
        .map(|_| {
            let d = rng.gen_range(1..=max_degree);
            homogeneous_poly(rng, dim, d, 3)
        })
        .collect();
    let lambda = (0..factors).map(|_| coefficient(rng, false)).collect();
    FoliationSpec::logarithmic(fs, lambda).expect("parameters are homogeneous and non-constant")
}
