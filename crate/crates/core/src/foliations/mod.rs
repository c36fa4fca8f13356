//! Rational, logarithmic and exact homogeneous one-forms.
//!
//! * affine rational: `ω = r f₁ df₂ − s f₂ df₁`
//! * affine logarithmic: `ω = Σ λ_k F_k df_k` with `F_k = Π_{j≠k} f_j`
//! * exact: `ω = dP`
//!
//! For the first two, `F = Π f_k` is an integrating factor and
//! `i_R(ω) = μ F` for a scalar `μ`.

mod genericity;
mod integration;

pub use genericity::{genericity_check, GenericityReport, Verdict};
pub use integration::{decompose_with_factor, integration_lemma_decompose, Decomposition};

use num_traits::Zero;

use crate::error::{ensure_dim, Error, Result};
use crate::exactalg::{Homogeneity, Poly, Scalar};
use crate::extcalc::{differential, frobenius, radial_contraction, Form};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FoliationSpec {
    AffineRational {
        f1: Poly,
        f2: Poly,
        r: Scalar,
        s: Scalar,
    },
    AffineLogarithmic {
        factors: Vec<Poly>,
        lambda: Vec<Scalar>,
    },
    Exact {
        p: Poly,
    },
    Raw {
        omega: Form,
    },
}

impl FoliationSpec {
    pub fn rational(f1: Poly, f2: Poly, r: Scalar, s: Scalar) -> Result<Self> {
        let spec = FoliationSpec::AffineRational { f1, f2, r, s };
        spec.validate()?;
        Ok(spec)
    }

    pub fn logarithmic(factors: Vec<Poly>, lambda: Vec<Scalar>) -> Result<Self> {
        let spec = FoliationSpec::AffineLogarithmic { factors, lambda };
        spec.validate()?;
        Ok(spec)
    }

    pub fn exact(p: Poly) -> Result<Self> {
        let spec = FoliationSpec::Exact { p };
        spec.validate()?;
        Ok(spec)
    }

    pub fn raw(omega: Form) -> Result<Self> {
        let spec = FoliationSpec::Raw { omega };
        spec.validate()?;
        Ok(spec)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            FoliationSpec::AffineRational { .. } => "rational",
            FoliationSpec::AffineLogarithmic { .. } => "logarithmic",
            FoliationSpec::Exact { .. } => "exact",
            FoliationSpec::Raw { .. } => "raw",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            FoliationSpec::AffineRational { f1, .. } => f1.dim(),
            FoliationSpec::AffineLogarithmic { factors, .. } => factors.first().map_or(0, Poly::dim),
            FoliationSpec::Exact { p } => p.dim(),
            FoliationSpec::Raw { omega } => omega.dim(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FoliationSpec::AffineRational { f1, f2, .. } => {
                ensure_dim(f1.dim(), f2.dim())?;
                parameter_degree(f1)?;
                parameter_degree(f2)?;
            }
            FoliationSpec::AffineLogarithmic { factors, lambda } => {
                if factors.len() < 2 {
                    return Err(Error::InvalidSpec(
                        "a logarithmic form needs at least two polynomial parameters".into(),
                    ));
                }
                if factors.len() != lambda.len() {
                    return Err(Error::InvalidSpec(format!(
                        "{} polynomial parameters but {} eigenvalues",
                        factors.len(),
                        lambda.len()
                    )));
                }
                for f in factors {
                    ensure_dim(factors[0].dim(), f.dim())?;
                    parameter_degree(f)?;
                }
            }
            FoliationSpec::Exact { p } => {
                parameter_degree(p)?;
            }
            FoliationSpec::Raw { omega } => omega.expect_arity(1)?,
        }
        Ok(())
    }

    /// The polynomial parameters `f_i` (empty for exact and raw specs).
    pub fn factors(&self) -> Vec<Poly> {
        match self {
            FoliationSpec::AffineRational { f1, f2, .. } => vec![f1.clone(), f2.clone()],
            FoliationSpec::AffineLogarithmic { factors, .. } => factors.clone(),
            _ => Vec::new(),
        }
    }

    /// Rational and logarithmic data as `(f_i, λ_i)` with `ω = Σ λ_i F_i df_i`.
    /// A rational spec maps to `((f₁, f₂), (−s, r))`.
    pub fn logarithmic_data(&self) -> Result<(Vec<Poly>, Vec<Scalar>)> {
        match self {
            FoliationSpec::AffineRational { f1, f2, r, s } => {
                Ok((vec![f1.clone(), f2.clone()], vec![-s, r.clone()]))
            }
            FoliationSpec::AffineLogarithmic { factors, lambda } => Ok((factors.clone(), lambda.clone())),
            _ => Err(Error::InvalidSpec(format!(
                "{} spec has no polynomial parameters / eigenvalues",
                self.kind()
            ))),
        }
    }

    /// Degrees `d_i` of the polynomial parameters.
    pub fn parameter_degrees(&self) -> Result<Vec<u32>> {
        self.factors().iter().map(parameter_degree).collect()
    }

    /// A two-factor logarithmic spec is a rational one in disguise.
    pub fn is_rational_case(&self) -> bool {
        matches!(self, FoliationSpec::AffineRational { .. })
            || matches!(self, FoliationSpec::AffineLogarithmic { factors, .. } if factors.len() == 2)
    }

    /// Total degree of the realized one-form.
    pub fn degree(&self) -> Result<u32> {
        match self {
            FoliationSpec::Raw { omega } => omega
                .homogeneous_degree()
                .degree()
                .ok_or_else(|| Error::NotHomogeneous { what: "nonzero one-form".into() }),
            FoliationSpec::Exact { p } => parameter_degree(p),
            _ => Ok(self.parameter_degrees()?.iter().sum()),
        }
    }

    pub fn realize(&self) -> Result<Form> {
        self.validate()?;
        Ok(match self {
            FoliationSpec::AffineRational { f1, f2, r, s } => {
                let a = differential(f2).mul_poly(f1).scale(r);
                let b = differential(f1).mul_poly(f2).scale(s);
                &a - &b
            }
            FoliationSpec::AffineLogarithmic { factors, lambda } => logarithmic_form(factors, lambda),
            FoliationSpec::Exact { p } => differential(p),
            FoliationSpec::Raw { omega } => omega.clone(),
        })
    }
}

fn parameter_degree(p: &Poly) -> Result<u32> {
    match p.homogeneous_degree() {
        Homogeneity::Degree(0) => Err(Error::InvalidSpec(
            "constant polynomial parameter".into(),
        )),
        Homogeneity::Degree(d) => Ok(d),
        Homogeneity::Zero => Err(Error::InvalidSpec("zero polynomial parameter".into())),
        Homogeneity::Mixed => Err(Error::NotHomogeneous {
            what: "polynomial parameter".into(),
        }),
    }
}

/// `Σ λ_k F_k df_k` with `F_k = Π_{j≠k} f_j`. No degree checks, so callers
/// may pass constant factors.
pub fn logarithmic_form(factors: &[Poly], lambda: &[Scalar]) -> Form {
    let dim = factors[0].dim();
    let mut omega = Form::zero(dim, 1);
    for (k, (fk, lk)) in factors.iter().zip(lambda).enumerate() {
        if lk.is_zero() {
            continue;
        }
        let cofactor = product_except(factors, k);
        omega = &omega + &differential(fk).mul_poly(&cofactor).scale(lk);
    }
    omega
}

pub(crate) fn product(polys: &[Poly], dim: usize) -> Poly {
    polys.iter().fold(Poly::one(dim), |acc, f| &acc * f)
}

pub(crate) fn product_except(polys: &[Poly], skip: usize) -> Poly {
    let dim = polys[0].dim();
    polys
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != skip)
        .fold(Poly::one(dim), |acc, (_, f)| &acc * f)
}

/// Whether `ω ∧ dω` vanishes identically.
pub fn is_integrable(omega: &Form) -> Result<bool> {
    omega.expect_arity(1)?;
    Ok(frobenius(omega)?.is_zero())
}

/// Whether `F dω = dF ∧ ω`, i.e. `ω/F` is closed.
pub fn is_integrating_factor(f: &Poly, omega: &Form) -> Result<bool> {
    ensure_dim(omega.dim(), f.dim())?;
    let lhs = omega.d().mul_poly(f);
    let rhs = differential(f).wedge(omega)?;
    Ok(lhs == rhs)
}

/// `F = Π f_i` together with the exact check `F dω = dF ∧ ω`.
pub fn integrating_factor(spec: &FoliationSpec) -> Result<(Poly, bool)> {
    let (factors, _) = spec.logarithmic_data()?;
    let f = product(&factors, spec.dim());
    let omega = spec.realize()?;
    let ok = is_integrating_factor(&f, &omega)?;
    Ok((f, ok))
}

/// `μ` with `i_R(ω) = μ F`, computed by exact division.
pub fn mu_of(spec: &FoliationSpec) -> Result<Scalar> {
    let (f, _) = integrating_factor(spec)?;
    let contraction = radial_contraction(&spec.realize()?)?;
    let quotient = contraction
        .exact_divide(&f)?
        .ok_or_else(|| Error::Internal("i_R(ω) is not a multiple of F".into()))?;
    quotient
        .as_constant()
        .ok_or_else(|| Error::Internal("i_R(ω)/F is not constant".into()))
}

/// `Σ λ_i d_i`, the closed form of `μ` for logarithmic data.
pub fn mu_closed_form(spec: &FoliationSpec) -> Result<Scalar> {
    let (_, lambda) = spec.logarithmic_data()?;
    let degrees = spec.parameter_degrees()?;
    Ok(lambda
        .iter()
        .zip(&degrees)
        .fold(Scalar::zero(), |acc, (l, &d)| &acc + &(l * &Scalar::from_int(d as i64))))
}

/// The eigenvalue condition: all nonzero and pairwise distinct (for a
/// rational spec: `r, s ≠ 0` and `r ≠ −s`).
pub fn eigenvalues_ok(spec: &FoliationSpec) -> Result<bool> {
    let (_, lambda) = spec.logarithmic_data()?;
    if lambda.iter().any(Zero::is_zero) {
        return Ok(false);
    }
    for i in 0..lambda.len() {
        for j in i + 1..lambda.len() {
            if lambda[i] == lambda[j] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> Poly {
        Poly::var(3, i)
    }
    fn k(c: i64) -> Scalar {
        Scalar::from_int(c)
    }
    fn kp(c: i64) -> Poly {
        Poly::constant(3, k(c))
    }

    fn rational_12() -> FoliationSpec {
        FoliationSpec::rational(v(0), v(1), k(1), k(2)).unwrap()
    }

    fn log_125() -> FoliationSpec {
        FoliationSpec::logarithmic(vec![v(0), v(1), v(2)], vec![k(1), k(2), k(5)]).unwrap()
    }

    #[test]
    fn realize_examples() {
        let omega = rational_12().realize().unwrap();
        let expected = Form::one_form(vec![&kp(-2) * &v(1), v(0), Poly::zero(3)]).unwrap();
        assert_eq!(omega, expected);

        let log = log_125().realize().unwrap();
        let expected = Form::one_form(vec![
            &v(1) * &v(2),
            &kp(2) * &(&v(0) * &v(2)),
            &kp(5) * &(&v(0) * &v(1)),
        ])
        .unwrap();
        assert_eq!(log, expected);

        let p = &(&v(0).pow(3) + &v(1).pow(3)) + &v(2).pow(3);
        let exact = FoliationSpec::exact(p).unwrap().realize().unwrap();
        let expected = Form::one_form((0..3).map(|i| &kp(3) * &v(i).pow(2)).collect()).unwrap();
        assert_eq!(exact, expected);
    }

    #[test]
    fn invalid_specs() {
        assert!(FoliationSpec::rational(kp(1), v(1), k(1), k(2)).is_err());
        assert!(FoliationSpec::rational(&v(0) + &v(1).pow(2), v(1), k(1), k(2)).is_err());
        assert!(FoliationSpec::logarithmic(vec![v(0)], vec![k(1)]).is_err());
        assert!(FoliationSpec::logarithmic(vec![v(0), v(1)], vec![k(1)]).is_err());
        assert!(FoliationSpec::exact(Poly::zero(3)).is_err());
        let two = FoliationSpec::logarithmic(vec![v(0), v(1)], vec![k(-2), k(1)]).unwrap();
        assert!(two.is_rational_case());
    }

    #[test]
    fn integrability_examples() {
        assert!(is_integrable(&rational_12().realize().unwrap()).unwrap());
        assert!(is_integrable(&log_125().realize().unwrap()).unwrap());
        // x dy + y dz + z dx
        let twisted = Form::one_form(vec![v(2), v(0), v(1)]).unwrap();
        assert!(!is_integrable(&twisted).unwrap());
    }

    #[test]
    fn integrating_factor_examples() {
        assert_eq!(integrating_factor(&rational_12()).unwrap(), (&v(0) * &v(1), true));
        let xyz = &(&v(0) * &v(1)) * &v(2);
        assert_eq!(integrating_factor(&log_125()).unwrap(), (xyz, true));
        let dicritical = FoliationSpec::rational(v(0), v(1), k(1), k(1)).unwrap();
        assert_eq!(integrating_factor(&dicritical).unwrap(), (&v(0) * &v(1), true));
        let exact = FoliationSpec::exact(v(0).pow(2)).unwrap();
        assert!(integrating_factor(&exact).is_err());
    }

    #[test]
    fn mu_examples() {
        assert_eq!(mu_of(&log_125()).unwrap(), k(8));
        assert_eq!(mu_closed_form(&log_125()).unwrap(), k(8));
        let dicritical = FoliationSpec::rational(v(0), v(1), k(1), k(1)).unwrap();
        assert_eq!(mu_of(&dicritical).unwrap(), k(0));
        assert_eq!(mu_of(&rational_12()).unwrap(), k(-1));
        // r d₂ − s d₁ with d = (1, 2), (r, s) = (2, 1)
        let conic = FoliationSpec::rational(v(0), &v(1).pow(2) + &(&v(0) * &v(2)), k(2), k(1)).unwrap();
        assert_eq!(mu_of(&conic).unwrap(), k(3));
    }

    #[test]
    fn rational_equals_two_factor_logarithmic() {
        let f1 = &v(0) + &v(2);
        let f2 = &v(1).pow(2) - &(&v(0) * &v(2));
        let (r, s) = (k(3), Scalar::frac(-1, 2));
        let rat = FoliationSpec::rational(f1.clone(), f2.clone(), r.clone(), s.clone()).unwrap();
        let log = FoliationSpec::logarithmic(vec![f1, f2], vec![-&s, r]).unwrap();
        assert_eq!(rat.realize().unwrap(), log.realize().unwrap());
    }

    #[test]
    fn eigenvalue_condition() {
        assert!(eigenvalues_ok(&log_125()).unwrap());
        let repeated = FoliationSpec::logarithmic(vec![v(0), v(1), v(2)], vec![k(1), k(1), k(5)]).unwrap();
        assert!(!eigenvalues_ok(&repeated).unwrap());
        let opposite = FoliationSpec::rational(v(0), v(1), k(1), k(-1)).unwrap();
        assert!(!eigenvalues_ok(&opposite).unwrap());
    }
}
