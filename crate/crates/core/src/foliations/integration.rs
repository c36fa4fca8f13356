//! Integration-lemma normal form of a one-form with a known integrating
//! factor `F = c Π f_i^{n_i}`:
//!
//! `ω = F [Σ λ_i df_i/f_i + d(g / Π f_i^{n_i-1})]`.
//!
//! Clearing denominators with `G = Π f_i^{n_i-1}` and `F₀ = Π f_i` gives the
//! polynomial identity
//!
//! `ω/c = G Σ λ_i (F₀/f_i) df_i + F₀ dg − g Σ (n_i − 1)(F₀/f_i) df_i`,
//!
//! which is linear in `λ` and the coefficients of `g`.

use num_traits::{One, Zero};

use super::is_integrating_factor;
use crate::error::{ensure_dim, Error, Result};
use crate::exactalg::{Monomial, Poly, Scalar};
use crate::extcalc::{differential, Form, FormBasis};
use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub lambda: Vec<Scalar>,
    pub g: Poly,
    pub residual_ok: bool,
}

/// Decomposition with `F = Π f_i^{n_i}`.
pub fn integration_lemma_decompose(omega: &Form, factors: &[Poly], mult: &[u32]) -> Result<Decomposition> {
    let f = power_product(factors, mult)?;
    decompose_with_factor(omega, &f, factors, mult)
}

/// Decomposition for an integrating factor `F` that equals `Π f_i^{n_i}` up
/// to a nonzero constant.
pub fn decompose_with_factor(omega: &Form, f: &Poly, factors: &[Poly], mult: &[u32]) -> Result<Decomposition> {
    omega.expect_arity(1)?;
    ensure_dim(omega.dim(), f.dim())?;
    let n = omega.dim();
    let e = omega
        .homogeneous_degree()
        .degree()
        .ok_or_else(|| Error::NotHomogeneous { what: "one-form".into() })?;
    let power = power_product(factors, mult)?;
    let unit = f
        .exact_divide(&power)?
        .and_then(|q| q.as_constant())
        .filter(|c| !c.is_zero())
        .ok_or_else(|| Error::Precondition("F is not a constant multiple of Π f_i^n_i".into()))?;
    if !is_integrating_factor(f, omega)? {
        return Err(Error::Precondition("F is not an integrating factor of ω".into()));
    }

    let degrees: Vec<u32> = factors
        .iter()
        .map(|p| p.homogeneous_degree().degree().filter(|&d| d > 0))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::InvalidSpec("factors must be homogeneous and non-constant".into()))?;
    let deg_f: u32 = degrees.iter().zip(mult).map(|(d, m)| d * m).sum();
    let deg_reduced: u32 = degrees.iter().sum();

    let reduced = super::product(factors, n);
    let g_factor = power_product(factors, &mult.iter().map(|m| m - 1).collect::<Vec<_>>())?;
    let cofactor_forms: Vec<Form> = (0..factors.len())
        .map(|i| differential(&factors[i]).mul_poly(&super::product_except(factors, i)))
        .collect();

    let mut generators: Vec<Form> = Vec::new();
    let lambda_active = deg_f == e;
    if lambda_active {
        generators.extend(cofactor_forms.iter().map(|c| c.mul_poly(&g_factor)));
    }
    let correction = cofactor_forms
        .iter()
        .zip(mult)
        .fold(Form::zero(n, 1), |acc, (c, &m)| &acc + &c.scale(&Scalar::from_int(m as i64 - 1)));
    let g_degree = e.checked_sub(deg_reduced);
    let all_simple = mult.iter().all(|&m| m == 1);
    let g_monomials = match g_degree {
        Some(0) if all_simple => Vec::new(),
        Some(k) => Monomial::all_of_degree(n, k),
        None => Vec::new(),
    };
    for m in &g_monomials {
        let mono = Poly::term(n, m.clone(), Scalar::one());
        let gen = &differential(&mono).mul_poly(&reduced) - &correction.mul_poly(&mono);
        generators.push(gen);
    }

    let target = omega.scale(&unit.inv().unwrap());
    let basis = FormBasis::new(n, 1, e);
    let mut columns = generators
        .iter()
        .map(|g| basis.coordinates(g))
        .collect::<Result<Vec<_>>>()?;
    columns.push(basis.coordinates(&target)?);
    let solution = solve_columns(basis.len(), &columns);

    let failed = Decomposition {
        lambda: vec![Scalar::zero(); factors.len()],
        g: Poly::zero(n),
        residual_ok: false,
    };
    let Some(x) = solution else {
        return Ok(failed);
    };
    let split = if lambda_active { factors.len() } else { 0 };
    let lambda = if lambda_active {
        x[..split].to_vec()
    } else {
        vec![Scalar::zero(); factors.len()]
    };
    let g = Poly::from_terms(n, g_monomials.iter().cloned().zip(x[split..].iter().cloned()));
    let rebuilt = generators
        .iter()
        .zip(&x)
        .fold(Form::zero(n, 1), |acc, (gen, c)| &acc + &gen.scale(c));
    Ok(Decomposition {
        residual_ok: rebuilt == target,
        lambda,
        g,
    })
}

fn power_product(factors: &[Poly], mult: &[u32]) -> Result<Poly> {
    if factors.is_empty() || factors.len() != mult.len() {
        return Err(Error::InvalidSpec(format!(
            "{} factors but {} multiplicities",
            factors.len(),
            mult.len()
        )));
    }
    let n = factors[0].dim();
    let mut out = Poly::one(n);
    for (f, &m) in factors.iter().zip(mult) {
        ensure_dim(n, f.dim())?;
        out = &out * &f.pow(m);
    }
    Ok(out)
}

/// Solves `Σ x_j A_j = b` where the last column is `b`; the solution has zero
/// in every free coordinate.
fn solve_columns(rows: usize, columns: &[Vec<Scalar>]) -> Option<Vec<Scalar>> {
    let cols = columns.len();
    let mut m = Matrix::zeros(rows, cols);
    for (j, col) in columns.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            if !v.is_zero() {
                m.set(i, j, v.clone());
            }
        }
    }
    let rref = m.rref();
    if rref.pivots.last() == Some(&(cols - 1)) {
        return None;
    }
    let mut x = vec![Scalar::zero(); cols - 1];
    for (r, &p) in rref.pivots.iter().enumerate() {
        x[p] = rref.matrix.get(r, cols - 1).clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foliations::{logarithmic_form, FoliationSpec};

    fn v(i: usize) -> Poly {
        Poly::var(3, i)
    }
    fn k(c: i64) -> Scalar {
        Scalar::from_int(c)
    }

    #[test]
    fn radial_rotation() {
        let omega = &Form::coeff_dx(v(0), 1) - &Form::coeff_dx(v(1), 0);
        let d = integration_lemma_decompose(&omega, &[v(0), v(1)], &[1, 1]).unwrap();
        assert_eq!(d.lambda, vec![k(-1), k(1)]);
        assert!(d.g.is_zero());
        assert!(d.residual_ok);
    }

    #[test]
    fn exact_product() {
        let omega = differential(&(&v(0) * &v(1)));
        let d = integration_lemma_decompose(&omega, &[v(0), v(1)], &[1, 1]).unwrap();
        assert_eq!(d.lambda, vec![k(1), k(1)]);
        assert!(d.g.is_zero() && d.residual_ok);
    }

    #[test]
    fn logarithmic_recovered() {
        let spec = FoliationSpec::logarithmic(vec![v(0), v(1), v(2)], vec![k(1), k(2), k(5)]).unwrap();
        let d = integration_lemma_decompose(&spec.realize().unwrap(), &[v(0), v(1), v(2)], &[1, 1, 1]).unwrap();
        assert_eq!(d.lambda, vec![k(1), k(2), k(5)]);
        assert!(d.g.is_zero() && d.residual_ok);
    }

    #[test]
    fn scaled_factor() {
        let f = (&v(0) * &v(1)).scale(&k(2));
        let omega = &Form::coeff_dx(v(0), 1) - &Form::coeff_dx(v(1), 0);
        let d = decompose_with_factor(&omega, &f, &[v(0), v(1)], &[1, 1]).unwrap();
        assert_eq!(d.lambda, vec![Scalar::frac(-1, 2), Scalar::frac(1, 2)]);
        let eta = differential(&(&v(0) * &v(1)));
        let d = decompose_with_factor(&eta, &f, &[v(0), v(1)], &[1, 1]).unwrap();
        assert_eq!(d.lambda, vec![Scalar::frac(1, 2), Scalar::frac(1, 2)]);
    }

    #[test]
    fn exact_part_with_multiplicity() {
        // F = x²y, g = y²: F d(g/x) = y (x dg − g dx)
        let (x, y) = (v(0), v(1));
        let g = y.pow(2);
        let omega = (&differential(&g).mul_poly(&x) - &differential(&x).mul_poly(&g)).mul_poly(&y);
        let d = integration_lemma_decompose(&omega, &[x, y.clone()], &[2, 1]).unwrap();
        assert!(d.residual_ok);
        assert_eq!(d.lambda, vec![k(0), k(0)]);
        assert_eq!(d.g, g);
    }

    #[test]
    fn exact_part_reduced() {
        // deg ω = 3 > deg F = 2, so only F dg with deg g = 1 can contribute
        let f = &v(0) * &v(1);
        let omega = differential(&v(2)).mul_poly(&f);
        let d = integration_lemma_decompose(&omega, &[v(0), v(1)], &[1, 1]).unwrap();
        assert!(d.residual_ok);
        assert_eq!(d.g, v(2));
        let mixed = &logarithmic_form(&[v(0), v(1)], &[k(1), k(2)]).mul_poly(&v(2)) + &omega;
        assert!(integration_lemma_decompose(&mixed, &[v(0), v(1)], &[1, 1]).is_err());
    }

    #[test]
    fn not_an_integrating_factor() {
        let twisted = Form::one_form(vec![v(2), v(0), v(1)]).unwrap();
        assert!(integration_lemma_decompose(&twisted, &[v(0), v(1)], &[1, 1]).is_err());
    }
}
