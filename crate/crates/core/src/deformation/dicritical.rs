use crate::error::{Error, Result};
use crate::exactalg::Poly;
use crate::extcalc::{differential, radial_contraction, Form};
use crate::foliations::{
    decompose_with_factor, integrating_factor, is_integrating_factor, product_except, Decomposition, FoliationSpec,
};

use super::{deform_operator, form_degree, relcohom_operator};

/// The known solutions of the relative cohomology equation in a degree
/// below that of `ω`: `Σ_{j∈J} λ_j F̄_j df_j` with `F̄_j = Π_{i∈J, i≠j} f_i`
/// for `|J| = s − 1` (0-based indices). For a rational spec this is `df_j`
/// for `J = {j}`.
pub fn different_degree_solutions(spec: &FoliationSpec, subset: &[usize]) -> Result<Form> {
    let (factors, lambda) = spec.logarithmic_data()?;
    let s = factors.len();
    let mut j: Vec<usize> = subset.to_vec();
    j.sort_unstable();
    j.dedup();
    if j.len() != s - 1 || j.len() != subset.len() || j.iter().any(|&i| i >= s) {
        return Err(Error::Precondition(format!(
            "index set must consist of {} distinct indices below {s}",
            s - 1
        )));
    }
    let eta = if matches!(spec, FoliationSpec::AffineRational { .. }) {
        differential(&factors[j[0]])
    } else {
        let chosen: Vec<Poly> = j.iter().map(|&i| factors[i].clone()).collect();
        let mut eta = Form::zero(spec.dim(), 1);
        for (pos, &i) in j.iter().enumerate() {
            let cofactor = product_except(&chosen, pos);
            eta = &eta + &differential(&factors[i]).mul_poly(&cofactor).scale(&lambda[i]);
        }
        eta
    };
    let (f, _) = integrating_factor(spec)?;
    if !relcohom_operator(&spec.realize()?, &f, &eta)?.is_zero() {
        return Err(Error::Internal(
            "constructed different-degree form does not solve the relative cohomology equation".into(),
        ));
    }
    Ok(eta)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DicriticalClass {
    Descends,
    IntegratingFactor {
        f: Poly,
        omega_over_f_closed: bool,
        eta_over_f_closed: bool,
    },
}

/// For dicritical `ω` (`i_R(ω) = 0`) and a first-order deformation `η` of
/// the same degree: either `η` descends too, or `F = i_R(η)` is an
/// integrating factor of both.
pub fn dicritical_classify(omega: &Form, eta: &Form) -> Result<DicriticalClass> {
    if !radial_contraction(omega)?.is_zero() {
        return Err(Error::Precondition("ω is not dicritical (i_R(ω) ≠ 0)".into()));
    }
    if form_degree(omega)? != form_degree(eta)? {
        return Err(Error::Precondition("ω and η must have the same degree".into()));
    }
    if !deform_operator(omega, eta)?.is_zero() {
        return Err(Error::Precondition("η is not a first-order deformation of ω".into()));
    }
    let f = radial_contraction(eta)?;
    if f.is_zero() {
        return Ok(DicriticalClass::Descends);
    }
    Ok(DicriticalClass::IntegratingFactor {
        omega_over_f_closed: is_integrating_factor(&f, omega)?,
        eta_over_f_closed: is_integrating_factor(&f, eta)?,
        f,
    })
}

/// Integration-lemma normal forms of `ω/F` and `η/F` for `F = i_R(η)`,
/// given a factorization `F = c Π f_i^{n_i}`.
pub fn dicritical_decompose(
    omega: &Form,
    eta: &Form,
    factors: &[Poly],
    mult: &[u32],
) -> Result<(Decomposition, Decomposition)> {
    match dicritical_classify(omega, eta)? {
        DicriticalClass::Descends => Err(Error::Precondition("η descends; there is no integrating factor".into())),
        DicriticalClass::IntegratingFactor { f, .. } => Ok((
            decompose_with_factor(omega, &f, factors, mult)?,
            decompose_with_factor(eta, &f, factors, mult)?,
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Scalar;

    fn v(i: usize) -> Poly {
        Poly::var(3, i)
    }
    fn k(c: i64) -> Scalar {
        Scalar::from_int(c)
    }

    #[test]
    fn logarithmic_subsets() {
        let spec = FoliationSpec::logarithmic(vec![v(0), v(1), v(2)], vec![k(1), k(2), k(5)]).unwrap();
        let eta = different_degree_solutions(&spec, &[0, 1]).unwrap();
        assert_eq!(eta, &Form::coeff_dx(v(1), 0) + &Form::coeff_dx(v(0).scale(&k(2)), 1));
        let eta = different_degree_solutions(&spec, &[1, 2]).unwrap();
        assert_eq!(eta, &Form::coeff_dx(v(2).scale(&k(2)), 1) + &Form::coeff_dx(v(1).scale(&k(5)), 2));
        assert!(different_degree_solutions(&spec, &[0, 2]).is_ok());
        assert!(different_degree_solutions(&spec, &[0]).is_err());
        assert!(different_degree_solutions(&spec, &[0, 0]).is_err());
    }

    #[test]
    fn rational_differentials() {
        let spec = FoliationSpec::rational(v(0), v(1), k(1), k(2)).unwrap();
        assert_eq!(different_degree_solutions(&spec, &[0]).unwrap(), Form::dx(3, 0));
        assert_eq!(different_degree_solutions(&spec, &[1]).unwrap(), Form::dx(3, 1));
    }

    #[test]
    fn dicritical_example() {
        let omega = &Form::coeff_dx(v(0), 1) - &Form::coeff_dx(v(1), 0);
        let eta = differential(&(&v(0) * &v(1)));
        let class = dicritical_classify(&omega, &eta).unwrap();
        assert_eq!(
            class,
            DicriticalClass::IntegratingFactor {
                f: (&v(0) * &v(1)).scale(&k(2)),
                omega_over_f_closed: true,
                eta_over_f_closed: true,
            }
        );
        assert_eq!(dicritical_classify(&omega, &omega).unwrap(), DicriticalClass::Descends);
        let (a, b) = dicritical_decompose(&omega, &eta, &[v(0), v(1)], &[1, 1]).unwrap();
        assert_eq!(a.lambda, vec![Scalar::frac(-1, 2), Scalar::frac(1, 2)]);
        assert_eq!(b.lambda, vec![Scalar::frac(1, 2), Scalar::frac(1, 2)]);
        assert!(a.g.is_zero() && b.g.is_zero() && a.residual_ok && b.residual_ok);
    }

    #[test]
    fn preconditions() {
        let omega = &Form::coeff_dx(v(0), 1) - &Form::coeff_dx(v(1).scale(&k(2)), 0);
        assert!(dicritical_classify(&omega, &omega).is_err());
        let dicritical = &Form::coeff_dx(v(0), 1) - &Form::coeff_dx(v(1), 0);
        assert!(dicritical_classify(&dicritical, &Form::dx(3, 2)).is_err());
    }
}
