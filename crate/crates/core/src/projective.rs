//! Passing between affine forms on `C^n` and forms on `C^{n+1}` that descend
//! to projective space. The extra coordinate is always the last one.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::deformation::{deform_operator, linear_kernel, SubspaceBasis};
use crate::error::{Error, Result};
use crate::exactalg::{Poly, Scalar};
use crate::extcalc::{radial_contraction, Form, FormBasis};
use crate::foliations::{integrating_factor, is_integrable, logarithmic_form, mu_of, FoliationSpec};

/// `η̃ = z η − i_R(η) dz` for `η` of total degree `e`.
pub fn projectivize(eta: &Form, e: u32) -> Result<Form> {
    eta.expect_arity(1)?;
    if !eta.is_zero() && !eta.is_homogeneous_of(e) {
        return Err(Error::NotHomogeneous {
            what: format!("one-form of total degree {e}"),
        });
    }
    let n = eta.dim();
    let z = Poly::var(n + 1, n);
    let contraction = radial_contraction(eta)?.extend_dim(n + 1);
    Ok(&eta.extend_dim(n + 1).mul_poly(&z) - &Form::coeff_dx(contraction, n))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dehomogenized {
    pub form: Form,
    /// Total degrees of the surviving terms.
    pub degrees: BTreeSet<u32>,
}

impl Dehomogenized {
    /// The common total degree, if there is exactly one.
    pub fn degree(&self) -> Option<u32> {
        (self.degrees.len() == 1).then(|| *self.degrees.iter().next().unwrap())
    }

    /// Whether some term has a degree other than `e`.
    pub fn off_degree(&self, e: u32) -> bool {
        self.degrees.iter().any(|&d| d != e)
    }
}

/// Sets the last variable to 1 and drops the `dz` component.
pub fn dehomogenize(eta_tilde: &Form) -> Result<Dehomogenized> {
    eta_tilde.expect_arity(1)?;
    let big = eta_tilde.dim();
    if big == 0 {
        return Err(Error::Precondition("no variable to dehomogenize".into()));
    }
    let n = big - 1;
    let one = Scalar::one();
    let parts: Vec<(Vec<usize>, Poly)> = eta_tilde
        .components()
        .filter(|(idx, _)| idx[0] != n)
        .map(|(idx, p)| (idx.clone(), p.specialize_last(&one)))
        .collect();
    let form = Form::from_components(n, 1, parts)?;
    let degrees = form
        .components()
        .flat_map(|(_, p)| p.terms().map(|(m, _)| m.total_degree() + 1).collect::<Vec<_>>())
        .collect();
    Ok(Dehomogenized { form, degrees })
}

/// `i_R(η) = 0`.
pub fn descends(eta: &Form) -> Result<bool> {
    Ok(radial_contraction(eta)?.is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineDefCheck {
    /// `ω̃∧dη̃ + dω̃∧η̃ = 0`.
    pub forward: bool,
    /// Dehomogenizing recovers `(ω, η)`, which again solve the affine equation.
    pub converse: bool,
}

impl AffineDefCheck {
    pub fn holds(&self) -> bool {
        self.forward && self.converse
    }
}

/// A first-order deformation `η` of `ω` projectivizes to one of `ω̃`, and back.
pub fn verify_affine_def_lemma(omega: &Form, eta: &Form) -> Result<AffineDefCheck> {
    if !is_integrable(omega)? {
        return Err(Error::Precondition("ω is not integrable".into()));
    }
    let e = degree_of(omega)?;
    if !eta.is_zero() && degree_of(eta)? != e {
        return Err(Error::Precondition("ω and η must have the same degree".into()));
    }
    if !deform_operator(omega, eta)?.is_zero() {
        return Err(Error::Precondition("η is not a first-order deformation of ω".into()));
    }
    let omega_t = projectivize(omega, e)?;
    let eta_t = projectivize(eta, e)?;
    let forward = deform_operator(&omega_t, &eta_t)?.is_zero();
    Ok(AffineDefCheck {
        forward,
        converse: affine_def_converse(&omega_t, &eta_t, omega, eta)?,
    })
}

fn affine_def_converse(omega_t: &Form, eta_t: &Form, omega: &Form, eta: &Form) -> Result<bool> {
    if !deform_operator(omega_t, eta_t)?.is_zero() {
        return Ok(false);
    }
    let w = dehomogenize(omega_t)?.form;
    let h = dehomogenize(eta_t)?.form;
    Ok(&w == omega && &h == eta && deform_operator(&w, &h)?.is_zero())
}

fn degree_of(form: &Form) -> Result<u32> {
    form.homogeneous_degree()
        .degree()
        .ok_or_else(|| Error::NotHomogeneous { what: "nonzero one-form".into() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivizedParameters {
    pub factors: Vec<Poly>,
    pub lambda: Vec<Scalar>,
    /// `Σ λ_i F_i df_i` of the returned data equals `projectivize(ω)`.
    pub verified: bool,
    /// `μ = 0`, so the last eigenvalue vanishes.
    pub mu_zero: bool,
    /// All eigenvalues (including `−μ`) nonzero and pairwise distinct.
    pub eigenvalues_generic: bool,
}

/// Logarithmic data of `z ω − μ F dz`: the parameters with `z` appended and
/// the eigenvalues with `−μ` appended.
pub fn projectivized_log_parameters(spec: &FoliationSpec) -> Result<ProjectivizedParameters> {
    let (factors, mut lambda) = spec.logarithmic_data()?;
    let n = spec.dim();
    let mu = mu_of(spec)?;
    let mut lifted: Vec<Poly> = factors.iter().map(|f| f.extend_dim(n + 1)).collect();
    lifted.push(Poly::var(n + 1, n));
    lambda.push(-&mu);
    let omega = spec.realize()?;
    let (f, _) = integrating_factor(spec)?;
    let rebuilt = logarithmic_form(&lifted, &lambda);
    let expected = &omega.extend_dim(n + 1).mul_poly(&Poly::var(n + 1, n))
        - &Form::coeff_dx(f.extend_dim(n + 1).scale(&mu), n);
    let verified = rebuilt == expected && rebuilt == projectivize(&omega, spec.degree()?)?;
    let distinct = (0..lambda.len()).all(|i| (i + 1..lambda.len()).all(|j| lambda[i] != lambda[j]));
    Ok(ProjectivizedParameters {
        eigenvalues_generic: distinct && lambda.iter().all(|l| !l.is_zero()),
        mu_zero: mu.is_zero(),
        factors: lifted,
        lambda,
        verified,
    })
}

/// First-order deformations `η̃` of degree `e` of a descending `ω̃` that
/// descend themselves, modulo `C·ω̃` when `e = deg ω̃`.
pub fn projective_deformation_space(omega_tilde: &Form, e: u32) -> Result<SubspaceBasis> {
    let dim = omega_tilde.dim();
    if dim < 3 {
        return Err(Error::Precondition(format!(
            "projective deformations need at least 3 homogeneous coordinates, got {dim}"
        )));
    }
    if !descends(omega_tilde)? {
        return Err(Error::Precondition("ω̃ does not descend (i_R(ω̃) ≠ 0)".into()));
    }
    if !is_integrable(omega_tilde)? {
        return Err(Error::Precondition("ω̃ is not integrable".into()));
    }
    if e < 1 {
        return Err(Error::Precondition("degree must be at least 1".into()));
    }
    let w = degree_of(omega_tilde)?;
    let domain = FormBasis::new(dim, 1, e);
    let deform_codomain = FormBasis::new(dim, 3, w + e);
    let radial_codomain = FormBasis::new(dim, 0, e);
    let columns = (0..domain.len())
        .map(|j| {
            let eta = domain.element(j);
            let mut col = deform_codomain.coordinates(&deform_operator(omega_tilde, &eta)?)?;
            col.extend(radial_codomain.coordinates(&Form::function(radial_contraction(&eta)?))?);
            Ok(col)
        })
        .collect::<Result<Vec<_>>>()?;
    let kernel = linear_kernel(&domain, deform_codomain.len() + radial_codomain.len(), &columns);
    if w == e {
        kernel.quotient_by(omega_tilde)
    } else {
        Ok(kernel)
    }
}
