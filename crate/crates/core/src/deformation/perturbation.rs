//! Subspaces spanned by perturbing the parameters of a rational,
//! logarithmic or exact form.

use crate::error::{Error, Result};
use crate::exactalg::{Monomial, Poly, Scalar};
use crate::extcalc::{differential, Form};
use crate::foliations::{logarithmic_form, FoliationSpec};

use super::SubspaceBasis;

/// Forms obtained by replacing the polynomial parameter in `slot` by each
/// monomial of the given degree. For an exact spec `dP` the only slot is `P`.
fn slot_generators(spec: &FoliationSpec, slot: usize, degree: u32) -> Result<Vec<Form>> {
    if degree == 0 {
        return Err(Error::Precondition(
            "constant replacement of a parameter; use the different-degree solutions".into(),
        ));
    }
    let n = spec.dim();
    let monomials = Monomial::all_of_degree(n, degree);
    if let FoliationSpec::Exact { .. } = spec {
        if slot != 0 {
            return Err(Error::IndexOutOfRange { index: slot, dim: 1 });
        }
        return Ok(monomials
            .into_iter()
            .map(|m| differential(&Poly::term(n, m, Scalar::from_int(1))))
            .collect());
    }
    let (factors, lambda) = spec.logarithmic_data()?;
    if slot >= factors.len() {
        return Err(Error::IndexOutOfRange {
            index: slot,
            dim: factors.len(),
        });
    }
    Ok(monomials
        .into_iter()
        .map(|m| {
            let mut replaced = factors.clone();
            replaced[slot] = Poly::term(n, m, Scalar::from_int(1));
            logarithmic_form(&replaced, &lambda)
        })
        .collect())
}

fn slot_count(spec: &FoliationSpec) -> Result<usize> {
    match spec {
        FoliationSpec::Exact { .. } => Ok(1),
        FoliationSpec::Raw { .. } => Err(Error::InvalidSpec("a raw form has no parameters".into())),
        _ => Ok(spec.factors().len()),
    }
}

fn original_degrees(spec: &FoliationSpec) -> Result<Vec<u32>> {
    match spec {
        FoliationSpec::Exact { .. } => Ok(vec![spec.degree()?]),
        _ => spec.parameter_degrees(),
    }
}

/// Perturbations of a single parameter, replaced by polynomials of `degree`.
pub fn slot_perturbation_space(spec: &FoliationSpec, slot: usize, degree: u32) -> Result<SubspaceBasis> {
    let original = *original_degrees(spec)?
        .get(slot)
        .ok_or(Error::IndexOutOfRange { index: slot, dim: slot_count(spec)? })?;
    let e = spec.degree()? - original + degree;
    SubspaceBasis::span(spec.dim(), e, slot_generators(spec, slot, degree)?)
}

/// Span of all parameter perturbations. `target_degrees` replaces the
/// original parameter degrees; every slot must then produce forms of one
/// common total degree (otherwise use [`slot_perturbation_space`] per slot).
/// The quotient by `C·ω` needs the original degrees.
pub fn param_perturbation_space(
    spec: &FoliationSpec,
    target_degrees: Option<&[u32]>,
    quotient_by_omega: bool,
) -> Result<SubspaceBasis> {
    let slots = slot_count(spec)?;
    let original = original_degrees(spec)?;
    let targets = target_degrees.map_or_else(|| original.clone(), <[u32]>::to_vec);
    if targets.len() != slots {
        return Err(Error::InvalidSpec(format!(
            "{} target degrees for {slots} parameters",
            targets.len()
        )));
    }
    let e = spec.degree()?;
    let totals: Vec<u32> = (0..slots).map(|i| e + targets[i] - original[i]).collect();
    if totals.iter().any(|&t| t != totals[0]) {
        return Err(Error::InvalidSpec(
            "target degrees give perturbations of different total degrees".into(),
        ));
    }
    let mut generators = Vec::new();
    for (slot, &d) in targets.iter().enumerate() {
        generators.extend(slot_generators(spec, slot, d)?);
    }
    let space = SubspaceBasis::span(spec.dim(), totals[0], generators)?;
    if quotient_by_omega {
        if targets != original {
            return Err(Error::Precondition("quotient by ω needs the original degrees".into()));
        }
        space.quotient_by(&spec.realize()?)
    } else {
        Ok(space)
    }
}

/// Span of `F_i df_i` (`f₁df₂, f₂df₁` in the rational case).
pub fn eigen_perturbation_space(spec: &FoliationSpec, quotient_by_omega: bool) -> Result<SubspaceBasis> {
    let (factors, _) = match spec {
        FoliationSpec::AffineRational { .. } | FoliationSpec::AffineLogarithmic { .. } => spec.logarithmic_data()?,
        _ => {
            return Err(Error::InvalidSpec(format!(
                "{} spec has no eigenvalues",
                spec.kind()
            )))
        }
    };
    let generators = (0..factors.len())
        .map(|i| {
            let mut unit = vec![Scalar::from_int(0); factors.len()];
            unit[i] = Scalar::from_int(1);
            logarithmic_form(&factors, &unit)
        })
        .collect();
    let space = SubspaceBasis::span(spec.dim(), spec.degree()?, generators)?;
    if quotient_by_omega {
        space.quotient_by(&spec.realize()?)
    } else {
        Ok(space)
    }
}
